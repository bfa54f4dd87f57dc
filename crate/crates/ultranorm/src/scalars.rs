//! Exact arithmetic over complete valued fields with computable valuations.
//!
//! Three concrete fields are supported, all trivially or discretely valued:
//!
//! - `TrivialQ`: the rationals with the trivial absolute value, v(x) = 0 for
//!   every nonzero x;
//! - `PAdicQ(p)`: the rationals viewed inside Q_p, with the p-adic valuation
//!   v_p (a/b) = v_p(a) - v_p(b);
//! - `LaurentQt`: rational functions in one variable t over Q, viewed inside
//!   the Laurent series field Q((t)), with the t-adic order at 0.
//!
//! Valuations are additive: v(xy) = v(x) + v(y) exactly, and the ultrametric
//! inequality v(x + y) >= min(v(x), v(y)) holds, with equality whenever the
//! two valuations differ. Elements are stored in canonical reduced form, so
//! valuations are exact and no precision management is ever needed.
//!
//! All downstream "log"-valued quantities (norm weights, distances, volumes)
//! live in these valuation units, i.e. in Q. The field's `log_scale` converts
//! them to natural-log reals only at the reporting layer.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Exact rational number used for all weight and valuation arithmetic.
pub type Rat = BigRational;

/// Build a rational from a pair of machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational from `"a"` or `"a/b"` decimal notation.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() || s.len() > 10_000 {
        return Err(Error::BadData(format!("unparseable rational {s:?}")));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::BadData(format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::BadData(format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::BadData(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Render a rational as `"a"` or `"a/b"`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convert to f64 for reporting. Exact values stay authoritative everywhere.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

// ── Valuations ──────────────────────────────────────────────────

/// A valuation value: a rational, or +infinity (the valuation of 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    Finite(Rat),
    Infinity,
}

impl Valuation {
    pub fn finite(v: impl Into<Rat>) -> Self {
        Valuation::Finite(v.into())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Valuation::Finite(r) => Some(r),
            Valuation::Infinity => None,
        }
    }

    /// v(x) + v(y), with infinity absorbing.
    pub fn plus(&self, other: &Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }

    /// Add a finite rational offset (a norm weight).
    pub fn plus_rat(&self, w: &Rat) -> Valuation {
        match self {
            Valuation::Finite(a) => Valuation::Finite(a + w),
            Valuation::Infinity => Valuation::Infinity,
        }
    }

    pub fn min(self, other: Valuation) -> Valuation {
        match (&self, &other) {
            (Valuation::Infinity, _) => other,
            (_, Valuation::Infinity) => self,
            (Valuation::Finite(a), Valuation::Finite(b)) => {
                if a <= b {
                    self
                } else {
                    other
                }
            }
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        Some(match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Equal,
            (Valuation::Infinity, _) => Greater,
            (_, Valuation::Infinity) => Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        })
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(r) => write!(f, "{}", format_rat(r)),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

// ── Polynomials and rational functions over Q ───────────────────

/// Dense polynomial over Q, coefficients ascending in degree, high-degree
/// zeros trimmed. The zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![Rat::one()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Order of vanishing at t = 0; None for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            out.push(a + b);
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            quot[i - dd] = q.clone();
            for j in 0..=dd {
                let sub = &q * &divisor.coeffs[j];
                rem[i - dd + j] -= sub;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic();
        a
    }

    fn make_monic(&mut self) {
        if let Some(d) = self.degree() {
            let lead = self.coeffs[d].clone();
            if !lead.is_one() {
                for c in &mut self.coeffs {
                    *c /= lead.clone();
                }
            }
        }
    }
}

/// Rational function num/den in canonical form: gcd(num, den) = 1 and den
/// monic. Zero is stored as 0/1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = RatFn { num, den };
        f.reduce();
        Ok(f)
    }

    pub fn zero() -> Self {
        RatFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFn {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() != Some(0) {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        // normalize to a monic denominator
        let lead = self.den.coeffs[self.den.degree().unwrap()].clone();
        if !lead.is_one() {
            for c in &mut self.den.coeffs {
                *c /= lead.clone();
            }
            for c in &mut self.num.coeffs {
                *c /= lead.clone();
            }
        }
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFn::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    /// t-adic order at 0: ord(num) - ord(den). None iff zero.
    pub fn order(&self) -> Option<i64> {
        let n = self.num.order()? as i64;
        let d = self.den.order().expect("canonical denominator is nonzero") as i64;
        Some(n - d)
    }
}

// ── Valued fields ───────────────────────────────────────────────

/// The kind of complete valued field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// Q with the trivial absolute value.
    TrivialQ,
    /// Q with the p-adic valuation, p prime.
    PAdicQ(u64),
    /// Q(t) with the t-adic valuation at 0.
    LaurentQt,
}

/// A complete valued field with value group Γ ⊆ Q.
///
/// Only trivially and discretely valued fields are supported: over these,
/// every ultrametric norm is diagonalizable, so the diagonal representation
/// used throughout the crate is lossless.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ValuedField {
    pub kind: FieldKind,
}

impl ValuedField {
    pub fn trivial() -> Self {
        ValuedField {
            kind: FieldKind::TrivialQ,
        }
    }

    pub fn padic(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ValuedField {
            kind: FieldKind::PAdicQ(p),
        })
    }

    pub fn laurent() -> Self {
        ValuedField {
            kind: FieldKind::LaurentQt,
        }
    }

    /// Generator of the value group: 0 for the trivial valuation, 1 otherwise.
    pub fn value_group_generator(&self) -> Rat {
        match self.kind {
            FieldKind::TrivialQ => Rat::zero(),
            _ => Rat::one(),
        }
    }

    /// Conversion factor from valuation units to natural logs: log p for
    /// PAdicQ, 1 for LaurentQt, 1 (by convention) for TrivialQ.
    pub fn log_scale(&self) -> f64 {
        match self.kind {
            FieldKind::PAdicQ(p) => (p as f64).ln(),
            _ => 1.0,
        }
    }

    pub fn is_trivially_valued(&self) -> bool {
        self.kind == FieldKind::TrivialQ
    }

    pub fn zero(&self) -> ValuedScalar {
        ValuedScalar {
            field: *self,
            repr: self.zero_repr(),
        }
    }

    pub fn one(&self) -> ValuedScalar {
        match self.kind {
            FieldKind::LaurentQt => ValuedScalar {
                field: *self,
                repr: Repr::Fun(RatFn::one()),
            },
            _ => ValuedScalar {
                field: *self,
                repr: Repr::Rat(Rat::one()),
            },
        }
    }

    fn zero_repr(&self) -> Repr {
        match self.kind {
            FieldKind::LaurentQt => Repr::Fun(RatFn::zero()),
            _ => Repr::Rat(Rat::zero()),
        }
    }

    /// Lift a rational constant into the field.
    pub fn from_rat(&self, r: Rat) -> ValuedScalar {
        match self.kind {
            FieldKind::LaurentQt => ValuedScalar {
                field: *self,
                repr: Repr::Fun(RatFn::new(Poly::constant(r), Poly::one()).expect("den = 1")),
            },
            _ => ValuedScalar {
                field: *self,
                repr: Repr::Rat(r),
            },
        }
    }

    pub fn from_int(&self, n: i64) -> ValuedScalar {
        self.from_rat(rat(n, 1))
    }

    /// A uniformizer: p, or t; an error over the trivially valued field.
    pub fn uniformizer(&self) -> Result<ValuedScalar> {
        match self.kind {
            FieldKind::TrivialQ => Err(Error::TrivialValuationLattice),
            FieldKind::PAdicQ(p) => Ok(self.from_rat(Rat::from(BigInt::from(p)))),
            FieldKind::LaurentQt => Ok(ValuedScalar {
                field: *self,
                repr: Repr::Fun(
                    RatFn::new(Poly::new(vec![Rat::zero(), Rat::one()]), Poly::one())
                        .expect("den = 1"),
                ),
            }),
        }
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

// ── Scalars ─────────────────────────────────────────────────────

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Repr {
    /// Canonical reduced rational (TrivialQ, PAdicQ).
    Rat(Rat),
    /// Canonical reduced rational function in t (LaurentQt).
    Fun(RatFn),
}

/// An exact element of a valued field.
///
/// Immutable after construction; all arithmetic is exact and canonicalizing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedScalar {
    pub field: ValuedField,
    pub repr: Repr,
}

impl ValuedScalar {
    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Fun(f) => f.is_zero(),
        }
    }

    /// The additive valuation. +infinity iff the element is zero.
    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinity;
        }
        match (self.field.kind, &self.repr) {
            (FieldKind::TrivialQ, _) => Valuation::Finite(Rat::zero()),
            (FieldKind::PAdicQ(p), Repr::Rat(r)) => {
                let p = BigInt::from(p);
                let vn = int_padic_val(r.numer(), &p);
                let vd = int_padic_val(r.denom(), &p);
                Valuation::Finite(Rat::from(BigInt::from(vn - vd)))
            }
            (FieldKind::LaurentQt, Repr::Fun(f)) => {
                Valuation::Finite(Rat::from(BigInt::from(f.order().expect("nonzero"))))
            }
            // a repr of the wrong shape cannot be constructed through the API
            _ => unreachable!("scalar repr inconsistent with field kind"),
        }
    }

    fn check_same_field(&self, other: &ValuedScalar) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ValuedScalar) -> Result<ValuedScalar> {
        self.check_same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Fun(a), Repr::Fun(b)) => Repr::Fun(a.add(b)),
            _ => return Err(Error::FieldMismatch),
        };
        Ok(ValuedScalar {
            field: self.field,
            repr,
        })
    }

    pub fn sub(&self, other: &ValuedScalar) -> Result<ValuedScalar> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ValuedScalar {
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(-a.clone()),
            Repr::Fun(a) => Repr::Fun(a.neg()),
        };
        ValuedScalar {
            field: self.field,
            repr,
        }
    }

    pub fn mul(&self, other: &ValuedScalar) -> Result<ValuedScalar> {
        self.check_same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Fun(a), Repr::Fun(b)) => Repr::Fun(a.mul(b)),
            _ => return Err(Error::FieldMismatch),
        };
        Ok(ValuedScalar {
            field: self.field,
            repr,
        })
    }

    pub fn inv(&self) -> Result<ValuedScalar> {
        let repr = match &self.repr {
            Repr::Rat(a) => {
                if a.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Repr::Rat(a.recip())
            }
            Repr::Fun(a) => Repr::Fun(a.inv()?),
        };
        Ok(ValuedScalar {
            field: self.field,
            repr,
        })
    }

    pub fn div(&self, other: &ValuedScalar) -> Result<ValuedScalar> {
        self.mul(&other.inv()?)
    }
}

fn int_padic_val(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&n, p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> ValuedField {
        ValuedField::padic(2).unwrap()
    }

    #[test]
    fn valuation_examples() {
        // 12 = 4 * 3, v_2 = 2
        assert_eq!(q2().from_int(12).valuation(), Valuation::Finite(rat(2, 1)));
        // t^2 / (1 + t) has order 2 at t = 0
        let f = ValuedField::laurent();
        let t = f.uniformizer().unwrap();
        let t2 = t.mul(&t).unwrap();
        let one_plus_t = f.one().add(&t).unwrap();
        let x = t2.div(&one_plus_t).unwrap();
        assert_eq!(x.valuation(), Valuation::Finite(rat(2, 1)));
        // trivial absolute value
        assert_eq!(
            ValuedField::trivial().from_rat(rat(7, 5)).valuation(),
            Valuation::Finite(rat(0, 1))
        );
        assert_eq!(q2().zero().valuation(), Valuation::Infinity);
    }

    #[test]
    fn arithmetic_examples() {
        let f = q2();
        let half = f.from_rat(rat(1, 2));
        assert_eq!(half.add(&half).unwrap(), f.one());

        let l = ValuedField::laurent();
        let t = l.uniformizer().unwrap();
        assert_eq!(t.mul(&t.inv().unwrap()).unwrap(), l.one());

        let tq = ValuedField::trivial();
        assert_eq!(tq.from_int(3).inv().unwrap(), tq.from_rat(rat(1, 3)));
    }

    #[test]
    fn arithmetic_errors() {
        assert!(q2().zero().inv().is_err());
        assert!(q2().one().add(&ValuedField::trivial().one()).is_err());
    }

    #[test]
    fn valuation_is_multiplicative() {
        let f = q2();
        let x = f.from_rat(rat(12, 5));
        let y = f.from_rat(rat(10, 3));
        let vx = x.valuation();
        let vy = y.valuation();
        assert_eq!(x.mul(&y).unwrap().valuation(), vx.plus(&vy));
    }

    #[test]
    fn ultrametric_inequality() {
        // equality whenever the valuations differ
        let f = q2();
        let x = f.from_int(4);
        let y = f.from_int(3);
        let v = x.add(&y).unwrap().valuation();
        assert_eq!(v, Valuation::Finite(rat(0, 1)));
        assert!(v >= x.valuation().min(y.valuation()));
    }

    #[test]
    fn laurent_canonical_form() {
        // (t^2 - t) / (t - 1) reduces to t with monic denominator
        let num = Poly::new(vec![rat(0, 1), rat(-1, 1), rat(1, 1)]);
        let den = Poly::new(vec![rat(-1, 1), rat(1, 1)]);
        let f = RatFn::new(num, den).unwrap();
        assert_eq!(f.num, Poly::new(vec![rat(0, 1), rat(1, 1)]));
        assert_eq!(f.den, Poly::one());
    }

    #[test]
    fn primality_check() {
        assert!(ValuedField::padic(2).is_ok());
        assert!(ValuedField::padic(97).is_ok());
        assert!(ValuedField::padic(1).is_err());
        assert!(ValuedField::padic(91).is_err()); // 7 * 13
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-5").unwrap(), rat(-5, 1));
        assert_eq!(parse_rat(" 7 / 2 ").unwrap(), rat(7, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(format_rat(&rat(-3, 7)), "-3/7");
        assert_eq!(format_rat(&rat(4, 2)), "2");
    }
}
