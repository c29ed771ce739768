use std::fmt;

use super::{AlgebraError, Field};

/// A point `[u : v]` of the projective line, affine coordinate `x = v / u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjCoord<F> {
    pub u: F,
    pub v: F,
}

impl<F: Field> ProjCoord<F> {
    pub fn new(u: F, v: F) -> Result<Self, AlgebraError> {
        if u.is_zero() && v.is_zero() {
            return Err(AlgebraError::InvalidPoint("coordinate [0:0]".into()));
        }
        Ok(ProjCoord { u, v })
    }

    pub fn affine(x: F) -> Self {
        ProjCoord { u: F::one(&x.ctx()), v: x }
    }

    pub fn infinity(ctx: &F::Ctx) -> Self {
        ProjCoord { u: F::zero(ctx), v: F::one(ctx) }
    }

    pub fn is_valid(&self) -> bool {
        !(self.u.is_zero() && self.v.is_zero())
    }

    pub fn is_infinity(&self) -> bool {
        self.u.is_zero()
    }

    /// Equality on the projective line: `u1 v2 = u2 v1`.
    pub fn proj_eq(&self, other: &Self) -> bool {
        self.u.mul(&other.v) == other.u.mul(&self.v)
    }

    pub fn affine_value(&self) -> Option<F> {
        self.u.inv().map(|ui| self.v.mul(&ui))
    }

    /// Representative with `u = 1`, or `[0:1]` at infinity.
    pub fn normalized(&self) -> Self {
        match self.affine_value() {
            Some(x) => ProjCoord::affine(x),
            None => ProjCoord::infinity(&self.v.ctx()),
        }
    }

    /// Parses an affine value `x` or a pair `[u:v]`.
    pub fn parse(ctx: &F::Ctx, s: &str) -> Result<Self, AlgebraError> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (u, v) = inner
                .split_once(':')
                .ok_or_else(|| AlgebraError::InvalidPoint(format!("expected [u:v], got {s:?}")))?;
            Self::new(F::parse(ctx, u)?, F::parse(ctx, v)?)
        } else {
            Ok(Self::affine(F::parse(ctx, s)?))
        }
    }
}

impl<F: Field> fmt::Display for ProjCoord<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine_value() {
            Some(x) => write!(f, "{x}"),
            None => f.write_str("[0:1]"),
        }
    }
}

/// A point of `(P^1)^N`: one projective pair per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point<F> {
    coords: Vec<ProjCoord<F>>,
}

impl<F: Field> Point<F> {
    pub fn new(coords: Vec<ProjCoord<F>>) -> Result<Self, AlgebraError> {
        if let Some(j) = coords.iter().position(|c| !c.is_valid()) {
            return Err(AlgebraError::InvalidPoint(format!("coordinate {} is [0:0]", j + 1)));
        }
        Ok(Point { coords })
    }

    pub fn affine(values: Vec<F>) -> Self {
        Point { coords: values.into_iter().map(ProjCoord::affine).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[ProjCoord<F>] {
        &self.coords
    }

    pub fn coord(&self, j: usize) -> &ProjCoord<F> {
        &self.coords[j]
    }

    /// Copy of this point with coordinate `j` replaced.
    pub fn with_coord(&self, j: usize, c: ProjCoord<F>) -> Self {
        let mut coords = self.coords.clone();
        coords[j] = c;
        Point { coords }
    }

    /// All coordinates except `j`, in order.
    pub fn others(&self, j: usize) -> Vec<ProjCoord<F>> {
        self.coords.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, c)| c.clone()).collect()
    }

    pub fn proj_eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len() && self.coords.iter().zip(&other.coords).all(|(a, b)| a.proj_eq(b))
    }

    pub fn normalized(&self) -> Self {
        Point { coords: self.coords.iter().map(ProjCoord::normalized).collect() }
    }

    /// Parses comma-separated coordinates, each an affine value or `[u:v]`.
    pub fn parse(ctx: &F::Ctx, s: &str, n_factors: usize) -> Result<Self, AlgebraError> {
        let coords = s.split(',').map(|tok| ProjCoord::parse(ctx, tok)).collect::<Result<Vec<_>, _>>()?;
        if coords.len() != n_factors {
            return Err(AlgebraError::PointLength { expected: n_factors, got: coords.len() });
        }
        Ok(Point { coords })
    }
}

impl<F: Field> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
