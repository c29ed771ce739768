//! Fiberwise Möbius maps of `(P^1)^{n+1}`.
//!
//! A [`FiberMap`] on axis `i` acts by `x_i -> (A x_i + B) / (C x_i + D)` with
//! `A, B, C, D` polynomials in the other coordinates, leaving those
//! coordinates untouched. Composition on a common axis is the matrix product
//! `(m1 ∘ m2) -> M1 · M2`.

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Field, MPoly, Point, ProjCoord};
use crate::hypersurface::{Axis, HypersurfaceError, MultiQuadric};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberMapError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hypersurface(#[from] HypersurfaceError),
    #[error("axis {axis} is degenerate: {reason}")]
    DegenerateAxis { axis: Axis, reason: String },
    #[error("cannot compose maps on axes {left} and {right}")]
    AxisMismatch { left: Axis, right: Axis },
    #[error("matrix determinant vanishes identically")]
    Singular,
    #[error("matrix power must be at least 1")]
    ZeroPower,
    #[error("point has {got} coordinates, map acts on {expected}")]
    PointLength { expected: usize, got: usize },
}

/// Result of applying a map to a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapOutcome<F> {
    Point(Point<F>),
    /// Both components of the image pair vanished.
    Indeterminate,
}

impl<F> MapOutcome<F> {
    pub fn point(self) -> Option<Point<F>> {
        match self {
            MapOutcome::Point(p) => Some(p),
            MapOutcome::Indeterminate => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberMap<F: Field> {
    axis: Axis,
    /// `[A, B, C, D]`, all with declared degree `declared`.
    entries: [MPoly<F>; 4],
    declared: Vec<u32>,
}

impl<F: Field> FiberMap<F> {
    /// Builds a map from `[A, B, C, D]`, padding all entries to their common
    /// componentwise-maximal declared degree.
    pub fn new(axis: Axis, entries: [MPoly<F>; 4]) -> Result<Self, FiberMapError> {
        let nvars = entries[0].nvars();
        let mut declared = vec![0; nvars];
        for e in &entries {
            if e.ctx() != entries[0].ctx() {
                return Err(AlgebraError::FieldMismatch {
                    left: entries[0].ctx().to_string(),
                    right: e.ctx().to_string(),
                }
                .into());
            }
            if e.nvars() != nvars {
                return Err(AlgebraError::VarCountMismatch { left: nvars, right: e.nvars() }.into());
            }
            for (d, &x) in declared.iter_mut().zip(e.declared_degree()) {
                *d = (*d).max(x);
            }
        }
        let entries = entries.map(|e| e.with_declared(declared.clone()).expect("padding only grows"));
        let det = &(&entries[0] * &entries[3]) - &(&entries[1] * &entries[2]);
        if det.is_zero() {
            return Err(FiberMapError::Singular);
        }
        Ok(FiberMap { axis, entries, declared })
    }

    /// `τ_i : x_i -> -x_i - F1/F0`, matrix `(-F0, -F1, 0, F0)`.
    pub fn tau(x: &MultiQuadric<F>, axis: Axis) -> Result<Self, FiberMapError> {
        let d = x.decompose(axis)?;
        require_nonzero(axis, &d.f, &[0])?;
        let zero = MPoly::zero(x.ctx(), d.f0().declared_degree().to_vec());
        Self::new(axis, [-d.f0(), -d.f1(), zero, d.f0().clone()])
    }

    /// `σ_i : x_i -> F2 / (x_i F0)`, matrix `(0, F2, F0, 0)`.
    pub fn sigma(x: &MultiQuadric<F>, axis: Axis) -> Result<Self, FiberMapError> {
        let d = x.decompose(axis)?;
        require_nonzero(axis, &d.f, &[0, 2])?;
        let zero = MPoly::zero(x.ctx(), d.f0().declared_degree().to_vec());
        Self::new(axis, [zero.clone(), d.f2().clone(), d.f0().clone(), zero])
    }

    /// `ρ_i = σ_i ∘ τ_i`, matrix `(0, F2, -F0, -F1)`.
    pub fn rho(x: &MultiQuadric<F>, axis: Axis) -> Result<Self, FiberMapError> {
        let d = x.decompose(axis)?;
        require_nonzero(axis, &d.f, &[0, 2])?;
        let zero = MPoly::zero(x.ctx(), d.f0().declared_degree().to_vec());
        Self::new(axis, [zero, d.f2().clone(), -d.f0(), -d.f1()])
    }

    /// `ρ_i^{-1} = τ_i ∘ σ_i`, matrix `(-F1, -F2, F0, 0)`.
    pub fn rho_inv(x: &MultiQuadric<F>, axis: Axis) -> Result<Self, FiberMapError> {
        let d = x.decompose(axis)?;
        require_nonzero(axis, &d.f, &[0, 2])?;
        let zero = MPoly::zero(x.ctx(), d.f0().declared_degree().to_vec());
        Self::new(axis, [-d.f1(), -d.f2(), d.f0().clone(), zero])
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn entries(&self) -> &[MPoly<F>; 4] {
        &self.entries
    }

    pub fn declared_degree(&self) -> &[u32] {
        &self.declared
    }

    /// Number of factors of the ambient product.
    pub fn n_factors(&self) -> usize {
        self.declared.len() + 1
    }

    /// Image of `p`: with axis coordinate `[u:v]` and entries evaluated at the
    /// other coordinates, the new axis coordinate is `[C v + D u : A v + B u]`.
    pub fn apply(&self, p: &Point<F>) -> Result<MapOutcome<F>, FiberMapError> {
        if p.len() != self.n_factors() {
            return Err(FiberMapError::PointLength { expected: self.n_factors(), got: p.len() });
        }
        let i = self.axis.index();
        let others = p.others(i);
        let [a, b, c, d] = [0, 1, 2, 3].map(|k| self.entries[k].eval_projective(&others));
        let (a, b, c, d) = (a?, b?, c?, d?);
        let ProjCoord { u, v } = p.coord(i);
        let nu = c.mul(v).add(&d.mul(u));
        let nv = a.mul(v).add(&b.mul(u));
        if nu.is_zero() && nv.is_zero() {
            return Ok(MapOutcome::Indeterminate);
        }
        Ok(MapOutcome::Point(p.with_coord(i, ProjCoord { u: nu, v: nv })))
    }

    /// Raw matrix product `self · other` (`self` applied after `other`),
    /// without normalization.
    pub fn product(&self, other: &Self) -> Result<Self, FiberMapError> {
        if self.axis != other.axis {
            return Err(FiberMapError::AxisMismatch { left: self.axis, right: other.axis });
        }
        let [a1, b1, c1, d1] = &self.entries;
        let [a2, b2, c2, d2] = &other.entries;
        let sum = |x: MPoly<F>, y: MPoly<F>| x.try_add(&y);
        let entries = [
            sum(a1.try_mul(a2)?, b1.try_mul(c2)?)?,
            sum(a1.try_mul(b2)?, b1.try_mul(d2)?)?,
            sum(c1.try_mul(a2)?, d1.try_mul(c2)?)?,
            sum(c1.try_mul(b2)?, d1.try_mul(d2)?)?,
        ];
        let declared: Vec<u32> = self.declared.iter().zip(&other.declared).map(|(x, y)| x + y).collect();
        let entries = entries.map(|e| e.with_declared(declared.clone()).expect("degrees add"));
        Ok(FiberMap { axis: self.axis, entries, declared })
    }

    /// `self ∘ other`, normalized (see [`FiberMap::normalized`]).
    pub fn compose(&self, other: &Self) -> Result<Self, FiberMapError> {
        Ok(self.product(other)?.normalized())
    }

    /// Removes the common monomial factor (in both homogeneous coordinates)
    /// and the scalar content of the four entries.
    ///
    /// The scalar unit is fixed by the lowest term of the first nonzero entry
    /// in the order `D, C, B, A`: positive over ℚ, one over `F_p`.
    pub fn normalized(&self) -> Self {
        let nonzero: Vec<&MPoly<F>> = self.entries.iter().filter(|e| !e.is_zero()).collect();
        // common factor v^m
        let mut m = nonzero[0].min_exponents().expect("nonzero");
        for e in &nonzero[1..] {
            let em = e.min_exponents().expect("nonzero");
            for (a, b) in m.iter_mut().zip(em) {
                *a = (*a).min(b);
            }
        }
        let mut entries = self.entries.clone().map(|e| e.div_monomial(&m));
        // common factor u^(d - max degree)
        let declared: Vec<u32> = (0..self.declared.len())
            .map(|j| entries.iter().filter_map(|e| e.degree_in(j)).max().unwrap_or(0))
            .collect();
        entries = entries.map(|e| e.with_declared(declared.clone()).expect("trimmed to max degree"));

        let distinguished =
            entries.iter().rev().find_map(|e| e.terms().next().map(|(_, c)| c.clone())).expect("nonzero");
        let coeffs: Vec<&F> = entries.iter().flat_map(|e| e.terms().map(|(_, c)| c)).collect();
        let k = F::normalizer(&distinguished, &coeffs);
        let entries = if k.is_one() { entries } else { entries.map(|e| e.scale(&k)) };
        FiberMap { axis: self.axis, entries, declared }
    }

    /// `self^k` for `k ≥ 1`, by repeated normalized composition.
    pub fn power(&self, k: u32) -> Result<Self, FiberMapError> {
        if k == 0 {
            return Err(FiberMapError::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Powers `self^1, self^2, ...` (each normalized after the first).
    pub fn powers(&self) -> impl Iterator<Item = Self> + '_ {
        std::iter::successors(Some(self.clone()), move |acc| acc.compose(self).ok())
    }

    /// `Some(s)` when the matrix is `s · I` for a polynomial `s`, i.e. the map
    /// is the identity on every fiber where `s` does not vanish.
    pub fn scalar_identity(&self) -> Option<MPoly<F>> {
        let [a, b, c, d] = &self.entries;
        (b.is_zero() && c.is_zero() && a == d).then(|| a.clone())
    }

    /// Same map with one entry replaced (the declared degree is re-padded).
    pub fn with_entry(&self, index: usize, entry: MPoly<F>) -> Result<Self, FiberMapError> {
        let mut entries = self.entries.clone();
        entries[index] = entry;
        Self::new(self.axis, entries)
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let [a, b, c, d] = self.entries.each_ref().map(|e| e.display_with(names));
        format!("x{i} -> (({a})*x{i} + ({b})) / (({c})*x{i} + ({d}))", i = self.axis)
    }
}

impl<F: Field> fmt::Display for FiberMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> =
            (1..=self.n_factors()).filter(|&j| j != self.axis.number()).map(|j| format!("x{j}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

fn require_nonzero<F: Field>(axis: Axis, f: &[MPoly<F>; 3], which: &[usize]) -> Result<(), FiberMapError> {
    for &j in which {
        if f[j].is_zero() {
            return Err(FiberMapError::DegenerateAxis { axis, reason: format!("F{j} vanishes identically") });
        }
    }
    Ok(())
}
