//! Controllability analysis for networks of identical linear systems.
//!
//! A network couples `N` copies of one node system `(A, B, C, H)` over a
//! weighted digraph. Node `i` evolves as
//!
//! ```text
//! dx_i/dt = A x_i + sum_j beta_ij H C x_j + delta_i B u_i
//! ```
//!
//! so the whole network is the pair `(Phi, Psi)` with `Phi = I (x) A + L (x) HC`
//! and `Psi = Delta (x) B`, where `L` holds the coupling weights and `Delta`
//! selects the driven nodes. This crate decides state controllability of that
//! pair in exact rational arithmetic and cross-checks the verdict against a
//! battery of structural and algebraic conditions.
//!
//! Module map:
//!
//! * [`exactalg`]: rational matrices, ranks, nullspaces, polynomials.
//! * [`numalg`]: floating-point fallbacks with explicit tolerances.
//! * [`model`]: node systems, topologies, validation, assembly.
//! * [`classic`]: Kalman and PBH tests, witness extraction.
//! * [`structural`]: digraph matching, structural controllability, shape class.
//! * [`theorems`]: the condition battery and the certification cross-check.
//! * [`netspec`], [`report`], [`corpus`]: the CLI surface.

pub mod classic;
pub mod corpus;
pub mod exactalg;
pub mod model;
pub mod netspec;
pub mod numalg;
pub mod report;
pub mod structural;
pub mod theorems;
