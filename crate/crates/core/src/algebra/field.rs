//! Exact scalar fields.
//!
//! Everything above this module is generic over [`Field`]. Two fields are
//! provided: the rationals (backed by [`BigRational`]) and prime fields
//! `F_p` whose modulus is a runtime value carried by each element.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::AlgebraError;

/// An exact field whose elements may carry runtime parameters.
///
/// `Ctx` identifies one concrete field (e.g. the modulus of `F_p`) so that
/// zero, one and parsed constants can be produced without a witness element.
pub trait Field: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    type Ctx: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Factor `c` such that `c * distinguished` is the canonical unit
    /// representative and `c * coeffs` carries no removable scalar content.
    /// `distinguished` must be nonzero and one of `coeffs`.
    fn normalizer(distinguished: &Self, coeffs: &[&Self]) -> Self;

    /// Random element. Over ℚ an integer uniform in `[-bound, bound]`;
    /// over `F_p` a uniform residue (`bound` ignored).
    fn draw<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R, bound: u32) -> Self;

    /// Lenient parser for user-supplied constants (points, CLI values).
    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self, AlgebraError>;
}

/// The field of rational numbers.
pub type Q = BigRational;

/// Context marker for ℚ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Display for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Q")
    }
}

impl Field for BigRational {
    type Ctx = Rationals;

    fn ctx(&self) -> Rationals {
        Rationals
    }
    fn zero(_: &Rationals) -> Self {
        Zero::zero()
    }
    fn one(_: &Rationals) -> Self {
        One::one()
    }
    fn from_i64(_: &Rationals, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        // integer coefficients are the common case; skip the gcd reductions
        if a.is_integer() && b.is_integer() && self.is_integer() {
            let v = self.numer() + a.numer() * b.numer();
            *self = BigRational::from_integer(v);
        } else {
            *self += a * b;
        }
    }

    fn normalizer(distinguished: &Self, coeffs: &[&Self]) -> Self {
        // content = gcd(numerators) / lcm(denominators), signed so that the
        // distinguished coefficient ends up positive
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return One::one();
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if distinguished.is_negative() {
            content = -content;
        }
        content.recip()
    }

    fn draw<R: Rng + ?Sized>(_: &Rationals, rng: &mut R, bound: u32) -> Self {
        let b = bound as i64;
        BigRational::from_integer(BigInt::from(rng.gen_range(-b..=b)))
    }

    fn parse(_: &Rationals, s: &str) -> Result<Self, AlgebraError> {
        parse_rational(s)
    }
}

/// Parses `n` or `n/d` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Q, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::ScalarParse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(AlgebraError::ScalarParse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Odd prime modulus below 2^63.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if !(3..1 << 63).contains(&p) || p.is_multiple_of(2) || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(Modulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn elem(self, v: u64) -> Fp {
        Fp { value: v % self.0, modulus: self }
    }
}

impl Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fp:{}", self.0)
    }
}

/// Element of `F_p`, stored as a residue in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: Modulus,
}

impl Fp {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    fn check(self, rhs: Fp) {
        assert_eq!(self.modulus, rhs.modulus, "mixed prime fields");
    }

    /// Square root with the smaller canonical representative, or `None`
    /// for a non-residue.
    pub fn sqrt(self) -> Option<Fp> {
        sqrt_mod_p(self.value, self.modulus.0).map(|r| self.modulus.elem(r))
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

impl Field for Fp {
    type Ctx = Modulus;

    fn ctx(&self) -> Modulus {
        self.modulus
    }
    fn zero(ctx: &Modulus) -> Self {
        ctx.elem(0)
    }
    fn one(ctx: &Modulus) -> Self {
        ctx.elem(1)
    }
    fn from_i64(ctx: &Modulus, v: i64) -> Self {
        let p = ctx.0 as i128;
        ctx.elem((v as i128).rem_euclid(p) as u64)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        let p = self.modulus.0;
        // p < 2^63, so the sum cannot overflow
        let s = self.value + rhs.value;
        Fp { value: if s >= p { s - p } else { s }, modulus: self.modulus }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        let p = self.modulus.0;
        let v = if self.value >= rhs.value { self.value - rhs.value } else { self.value + p - rhs.value };
        Fp { value: v, modulus: self.modulus }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        Fp { value: mul_mod(self.value, rhs.value, self.modulus.0), modulus: self.modulus }
    }
    fn neg(&self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus.0 - self.value };
        Fp { value: v, modulus: self.modulus }
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        let p = self.modulus.0;
        Some(Fp { value: pow_mod(self.value, p - 2, p), modulus: self.modulus })
    }

    fn normalizer(distinguished: &Self, _coeffs: &[&Self]) -> Self {
        distinguished.inv().expect("distinguished coefficient is nonzero")
    }

    fn draw<R: Rng + ?Sized>(ctx: &Modulus, rng: &mut R, _bound: u32) -> Self {
        ctx.elem(rng.gen_range(0..ctx.0))
    }

    fn parse(ctx: &Modulus, s: &str) -> Result<Self, AlgebraError> {
        let s = s.trim();
        // a/b is accepted and interpreted as a * b^-1
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let parse_int = |t: &str| -> Result<Fp, AlgebraError> {
            let v: BigInt = t.parse().map_err(|_| AlgebraError::ScalarParse(format!("not an integer: {t:?}")))?;
            let r = v.mod_floor(&BigInt::from(ctx.0));
            Ok(ctx.elem(u64::try_from(r).expect("residue fits in u64")))
        };
        let num = parse_int(n)?;
        match d {
            None => Ok(num),
            Some(d) => {
                let den = parse_int(d)?
                    .inv()
                    .ok_or_else(|| AlgebraError::ScalarParse(format!("zero denominator in {s:?}")))?;
                Ok(num.mul(&den))
            }
        }
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Square root of `a` modulo the odd prime `p` by Tonelli–Shanks.
///
/// Returns the root whose representative in `[0, p)` is smaller, or `None`
/// when `a` is a quadratic non-residue.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        // p - 1 = q * 2^s with q odd
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while pow_mod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Some(root.min(p - root))
}
