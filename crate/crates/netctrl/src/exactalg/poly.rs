//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending order with no trailing zeros; the
//! zero polynomial is the empty coefficient list. Root extraction is exact
//! for rational roots (divisor candidates of the scaled trailing and leading
//! coefficients, each verified by exact evaluation); whatever remains after
//! deflation is handed back as the quotient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{rat_str, Rat};
use super::ExactError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `s`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// `s - r`.
    pub fn x_minus(r: &Rat) -> Self {
        Self::from_coeffs(vec![-r.clone(), Rat::one()])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::rint(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Ascending coefficients (empty for zero).
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `s^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, s: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k + 1)))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), ExactError> {
        if divisor.is_zero() {
            return Err(ExactError::ZeroDivisor);
        }
        let dd = divisor.degree().expect("nonzero");
        let lead_inv = divisor.leading().expect("nonzero").recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut q = vec![Rat::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let v = rem[k + j].clone() - &c * dc;
                    rem[k + j] = v;
                }
            }
            q[k] = c;
        }
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(rem)))
    }

    /// Exact division; panics if the division leaves a remainder. Used where
    /// divisibility is guaranteed (Bareiss steps, gcd deflation).
    pub(crate) fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divmod(divisor).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Primitive integer form: coefficients scaled by the common denominator
    /// and divided by their content, with a positive leading coefficient.
    pub fn primitive_ints(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().map(Signed::is_negative).unwrap_or(false) {
            content = -content;
        }
        for v in &mut ints {
            *v = &*v / &content;
        }
        ints
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let v = out[i + j].clone() + a * b;
                    out[i + j] = v;
                }
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", rat_str(&mag))?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "s")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

/// Monic greatest common divisor by the Euclidean algorithm.
/// `poly_gcd(p, 0)` is the monic scaling of `p`; `poly_gcd(0, 0)` is zero.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut p = a.clone();
    let mut q = b.clone();
    while !q.is_zero() {
        let (_, r) = p.divmod(&q).expect("nonzero divisor");
        p = q;
        q = r;
    }
    p.monic()
}

/// Yun's squarefree decomposition: returns pairwise-coprime squarefree
/// monic factors with their multiplicities, so `p = lead * prod f_i^{m_i}`.
pub fn squarefree_decomposition(p: &Poly) -> Result<Vec<(Poly, usize)>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let f = p.monic();
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df);
    let mut b = f.div_exact(&a0);
    let mut c = df.div_exact(&a0);
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut mult = 1usize;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), mult));
        }
        b = b.div_exact(&a);
        c = d.div_exact(&a);
        d = &c - &b.derivative();
        mult += 1;
    }
    Ok(out)
}

/// Exact rational roots with multiplicities, plus the deflated quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRoots {
    /// `(root, multiplicity)` pairs in ascending root order.
    pub roots: Vec<(Rat, usize)>,
    /// What remains of the polynomial after dividing all rational roots out.
    /// Constant when the polynomial splits over the rationals.
    pub quotient: Poly,
}

impl RationalRoots {
    /// True when the quotient is constant, i.e. all roots were rational.
    pub fn complete(&self) -> bool {
        self.quotient.is_constant()
    }
}

/// Finds every rational root by the rational-root theorem: candidates are
/// `±p/q` with `p` dividing the trailing and `q` the leading coefficient of
/// the primitive integer form. Every reported root is verified by exact
/// evaluation and divided out exactly, so the result is sound even if the
/// candidate factorization were to be cut short on astronomically large
/// coefficients (a missed root then simply stays inside the quotient).
pub fn rational_roots(p: &Poly) -> Result<RationalRoots, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    let mut work = p.clone();

    // Zero roots: strip leading zero coefficients.
    let zero_mult = work.coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Rat::zero(), zero_mult));
        work = Poly::from_coeffs(work.coeffs[zero_mult..].to_vec());
    }

    if !work.is_constant() {
        let ints = work.primitive_ints();
        let trailing = ints.first().expect("nonzero").abs();
        let leading = ints.last().expect("nonzero").abs();
        let mut candidates: Vec<Rat> = Vec::new();
        for num in divisors(&trailing) {
            for den in divisors(&leading) {
                let c = Rat::new(num.clone(), den.clone());
                candidates.push(c.clone());
                candidates.push(-c);
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            let mut mult = 0usize;
            while !work.is_constant() && work.eval(&cand).is_zero() {
                work = work.div_exact(&Poly::x_minus(&cand));
                mult += 1;
            }
            if mult > 0 {
                roots.push((cand, mult));
            }
        }
    }

    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RationalRoots {
        roots,
        quotient: work,
    })
}

/// Removes from `d` every irreducible factor it shares with `chi` by
/// repeated gcd division, until the two are coprime. The result divides `d`
/// and shares no root with `chi`.
pub fn strip_factors(d: &Poly, chi: &Poly) -> Result<Poly, ExactError> {
    if d.is_zero() || chi.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut out = d.clone();
    loop {
        let g = poly_gcd(&out, chi);
        if g.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        out = out.div_exact(&g);
    }
}

/// Positive divisors of `|n|` (with `1` always included), via trial
/// division. Complete for any value whose second-largest prime factor is
/// below 10^6, which covers everything this crate produces in practice;
/// beyond that the remaining cofactor is treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let n = n.abs();
    if let Some(mut v) = n.to_u128() {
        let mut push = |p: u128, e: u32| factors.push((BigInt::from(p), e));
        let mut e2 = 0;
        while v % 2 == 0 {
            v /= 2;
            e2 += 1;
        }
        if e2 > 0 {
            push(2, e2);
        }
        let mut d = 3u128;
        while d * d <= v && d < 1_000_000 {
            let mut e = 0;
            while v % d == 0 {
                v /= d;
                e += 1;
            }
            if e > 0 {
                push(d, e);
            }
            d += 2;
        }
        if v > 1 {
            push(v, 1);
        }
    } else {
        // Far beyond anything the desk-scale inputs produce; fall back to
        // treating the whole magnitude as prime.
        factors.push((n.clone(), 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let base = divs.clone();
        let mut pe = BigInt::one();
        for _ in 0..e {
            pe = &pe * &p;
            divs.extend(base.iter().map(|d| d * &pe));
        }
    }
    divs.sort();
    divs.dedup();
    divs
}
