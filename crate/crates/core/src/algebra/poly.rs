use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, Field, ProjCoord};

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// Powers `(u^0..u^d, v^0..v^d)` of one projective coordinate.
type PowerTable<F> = (Vec<F>, Vec<F>);

/// Which homogeneous coordinate of a factor a partial derivative is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homog {
    U,
    V,
}

/// Sparse multivariate polynomial with a declared per-variable degree.
///
/// The declared degree fixes the multihomogenization used by
/// [`MPoly::eval_projective`]; it never takes part in equality.
#[derive(Clone, Debug)]
pub struct MPoly<F: Field> {
    ctx: F::Ctx,
    terms: BTreeMap<Exponent, F>,
    declared: Vec<u32>,
}

impl<F: Field> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.nvars() == other.nvars() && self.terms == other.terms
    }
}

impl<F: Field> Eq for MPoly<F> {}

impl<F: Field> MPoly<F> {
    pub fn zero(ctx: &F::Ctx, declared: Vec<u32>) -> Self {
        MPoly { ctx: ctx.clone(), terms: BTreeMap::new(), declared }
    }

    pub fn constant(c: F, declared: Vec<u32>) -> Self {
        let mut p = Self::zero(&c.ctx(), declared);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.declared.len()], c);
        }
        p
    }

    /// The variable `x_j` with the given declared degree.
    pub fn var(ctx: &F::Ctx, j: usize, declared: Vec<u32>) -> Self {
        let mut e = vec![0; declared.len()];
        e[j] = 1;
        let declared = declared.iter().enumerate().map(|(k, &d)| if k == j { d.max(1) } else { d }).collect();
        Self::from_terms_declared(ctx, declared, [(e, F::one(ctx))]).expect("degree fits")
    }

    /// Builds a polynomial from terms, summing duplicates and dropping zeros.
    /// The declared degree is the componentwise maximum exponent.
    pub fn from_terms<I>(ctx: &F::Ctx, nvars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Exponent, F)>,
    {
        let mut p = Self::zero(ctx, vec![0; nvars]);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(AlgebraError::VarCountMismatch { left: nvars, right: e.len() });
            }
            if c.ctx() != *ctx {
                return Err(AlgebraError::FieldMismatch { left: ctx.to_string(), right: c.ctx().to_string() });
            }
            for (d, &x) in p.declared.iter_mut().zip(&e) {
                *d = (*d).max(x);
            }
            p.accumulate(e, c);
        }
        Ok(p)
    }

    /// As [`MPoly::from_terms`] with an explicit declared degree.
    pub fn from_terms_declared<I>(ctx: &F::Ctx, declared: Vec<u32>, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Exponent, F)>,
    {
        Self::from_terms(ctx, declared.len(), terms)?.with_declared(declared)
    }

    fn accumulate(&mut self, e: Exponent, c: F) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Replaces the declared degree; fails if some exponent exceeds it.
    pub fn with_declared(mut self, declared: Vec<u32>) -> Result<Self, AlgebraError> {
        if declared.len() != self.nvars() {
            return Err(AlgebraError::VarCountMismatch { left: self.nvars(), right: declared.len() });
        }
        if let Some(e) = self.terms.keys().find(|e| e.iter().zip(&declared).any(|(x, d)| x > d)) {
            return Err(AlgebraError::ExceedsDeclared { exponent: e.clone(), declared });
        }
        self.declared = declared;
        Ok(self)
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.declared.len()
    }

    pub fn declared_degree(&self) -> &[u32] {
        &self.declared
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &F)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&F> {
        self.terms.get(e)
    }

    /// Largest exponent of `x_j`, `None` for the zero polynomial.
    pub fn degree_in(&self, j: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[j]).max()
    }

    /// Componentwise minimum exponent over all terms (the largest monomial
    /// dividing the polynomial); `None` for zero.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let mut m = it.next()?.clone();
        for e in it {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
        }
        Some(m)
    }

    /// Constant value of a polynomial without nonconstant terms.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero(&self.ctx)),
            1 => self.terms.get(&vec![0; self.nvars()][..]).cloned(),
            _ => None,
        }
    }

    fn check_compat(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx != other.ctx {
            return Err(AlgebraError::FieldMismatch { left: self.ctx.to_string(), right: other.ctx.to_string() });
        }
        if self.nvars() != other.nvars() {
            return Err(AlgebraError::VarCountMismatch { left: self.nvars(), right: other.nvars() });
        }
        Ok(())
    }

    fn max_declared(&self, other: &Self) -> Vec<u32> {
        self.declared.iter().zip(&other.declared).map(|(a, b)| *a.max(b)).collect()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        out.declared = self.max_declared(other);
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        out.declared = self.max_declared(other);
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_compat(other)?;
        let declared: Vec<u32> = self.declared.iter().zip(&other.declared).map(|(a, b)| a + b).collect();
        // Mixed-radix packing with digit j < declared_j + 1: packed keys add
        // exactly like exponent vectors, with no carries.
        let radices: Vec<u64> = declared.iter().map(|&d| d as u64 + 1).collect();
        if radices.iter().try_fold(1u64, |acc, &r| acc.checked_mul(r)).is_some() {
            let pack = |e: &[u32]| e.iter().zip(&radices).rev().fold(0u64, |k, (&x, &r)| k * r + x as u64);
            let bs: Vec<(u64, &F)> = other.terms.iter().map(|(e, c)| (pack(e), c)).collect();
            let mut acc: HashMap<u64, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
            for (ea, ca) in &self.terms {
                let ka = pack(ea);
                for (kb, cb) in &bs {
                    acc.entry(ka + kb).or_insert_with(|| F::zero(&self.ctx)).add_mul_assign(ca, cb);
                }
            }
            let terms = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(mut k, c)| {
                    let e = radices
                        .iter()
                        .map(|&r| {
                            let d = (k % r) as u32;
                            k /= r;
                            d
                        })
                        .collect();
                    (e, c)
                })
                .collect();
            return Ok(MPoly { ctx: self.ctx.clone(), terms, declared });
        }
        let mut acc: HashMap<Exponent, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                acc.entry(e).or_insert_with(|| F::zero(&self.ctx)).add_mul_assign(ca, cb);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MPoly { ctx: self.ctx.clone(), terms, declared })
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.declared.clone());
        }
        MPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect(),
            declared: self.declared.clone(),
        }
    }

    /// Divides by the monomial `x^m`, lowering the declared degree by `m`.
    /// Every term must be divisible by `x^m`.
    pub fn div_monomial(&self, m: &[u32]) -> Self {
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone())).collect();
        let declared = self.declared.iter().zip(m).map(|(a, b)| a - b).collect();
        MPoly { ctx: self.ctx.clone(), terms, declared }
    }

    /// Substitutes affine values for all variables.
    pub fn eval_affine(&self, pt: &[F]) -> Result<F, AlgebraError> {
        if pt.len() != self.nvars() {
            return Err(AlgebraError::PointLength { expected: self.nvars(), got: pt.len() });
        }
        let mut acc = F::zero(&self.ctx);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in pt.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&x.pow(k));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn power_tables(&self, pt: &[ProjCoord<F>]) -> Result<Vec<PowerTable<F>>, AlgebraError> {
        if pt.len() != self.nvars() {
            return Err(AlgebraError::PointLength { expected: self.nvars(), got: pt.len() });
        }
        pt.iter()
            .zip(&self.declared)
            .enumerate()
            .map(|(j, (c, &d))| {
                if !c.is_valid() {
                    return Err(AlgebraError::InvalidPoint(format!("coordinate {} is [0:0]", j + 1)));
                }
                let table = |x: &F| {
                    let mut t = Vec::with_capacity(d as usize + 1);
                    t.push(F::one(&self.ctx));
                    for k in 0..d as usize {
                        let next = t[k].mul(x);
                        t.push(next);
                    }
                    t
                };
                Ok((table(&c.u), table(&c.v)))
            })
            .collect()
    }

    /// Evaluates the multihomogenization to the declared degree: `x_j^e`
    /// becomes `u_j^(d_j - e) v_j^e`.
    pub fn eval_projective(&self, pt: &[ProjCoord<F>]) -> Result<F, AlgebraError> {
        let tables = self.power_tables(pt)?;
        let mut acc = F::zero(&self.ctx);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (j, &k) in e.iter().enumerate() {
                let d = self.declared[j];
                let (us, vs) = &tables[j];
                t = t.mul(&us[(d - k) as usize]).mul(&vs[k as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Partial derivative of the multihomogenization with respect to `u_j` or
    /// `v_j`, evaluated at `pt`.
    pub fn eval_projective_partial(&self, pt: &[ProjCoord<F>], j: usize, wrt: Homog) -> Result<F, AlgebraError> {
        let tables = self.power_tables(pt)?;
        let mut acc = F::zero(&self.ctx);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e.iter().enumerate() {
                let d = self.declared[k];
                let (us, vs) = &tables[k];
                let (pu, pv) = (d - ek, ek);
                if k != j {
                    t = t.mul(&us[pu as usize]).mul(&vs[pv as usize]);
                    continue;
                }
                let (factor, pu, pv) = match wrt {
                    Homog::U if pu > 0 => (pu, pu - 1, pv),
                    Homog::V if pv > 0 => (pv, pu, pv - 1),
                    _ => (0, 0, 0),
                };
                if factor == 0 {
                    t = F::zero(&self.ctx);
                    break;
                }
                t = t.mul(&F::from_i64(&self.ctx, factor as i64)).mul(&us[pu as usize]).mul(&vs[pv as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&x, _)| x > 0)
                .map(|(&x, n)| if x == 1 { n.clone() } else { format!("{n}^{x}") })
                .collect();
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|j| format!("x{j}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

// Operator forms panic on incompatible operands; use the `try_` methods
// where operands come from outside the crate.
impl<F: Field> Add for &MPoly<F> {
    type Output = MPoly<F>;
    fn add(self, rhs: Self) -> MPoly<F> {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Sub for &MPoly<F> {
    type Output = MPoly<F>;
    fn sub(self, rhs: Self) -> MPoly<F> {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Mul for &MPoly<F> {
    type Output = MPoly<F>;
    fn mul(self, rhs: Self) -> MPoly<F> {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Neg for &MPoly<F> {
    type Output = MPoly<F>;
    fn neg(self) -> MPoly<F> {
        MPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            declared: self.declared.clone(),
        }
    }
}
