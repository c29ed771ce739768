//! Hypersurfaces of multidegree (2,...,2) in a product of projective lines.
//!
//! Singling out one factor `x_i` writes the defining polynomial as
//! `F0 x_i^2 + F1 x_i + F2` with `F0, F1, F2` in the remaining coordinates.
//! Almost every computation in the crate goes through that decomposition.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Fp, Homog, MPoly, Point, ProjCoord};
use crate::seed;

/// Index of one projective-line factor. Stored zero-based, displayed
/// one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Axis(usize);

impl Axis {
    pub const fn new(index: usize) -> Self {
        Axis(index)
    }

    pub fn from_number(number: usize) -> Option<Self> {
        number.checked_sub(1).map(Axis)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn number(self) -> usize {
        self.0 + 1
    }

    pub fn all(n_factors: usize) -> impl Iterator<Item = Axis> {
        (0..n_factors).map(Axis)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypersurfaceError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("axis {axis} out of range 1..={n}")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("defining polynomial is identically zero")]
    ZeroPolynomial,
    #[error("need at least {min} factors, got {got}")]
    TooFewFactors { min: usize, got: usize },
    #[error("point {0} is not on the hypersurface")]
    NotOnHypersurface(String),
    #[error("sampling exhausted after {0} attempts")]
    SamplingExhausted(usize),
    #[error("no hypersurface passed the genericity check after {0} attempts")]
    GenerationExhausted(usize),
}

/// `X = {G = 0}` with `G` of degree at most 2 in each of `n+1` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiQuadric<F: Field> {
    poly: MPoly<F>,
}

/// `G = F0 x_i^2 + F1 x_i + F2` for one axis `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisDecomposition<F: Field> {
    pub axis: Axis,
    pub f: [MPoly<F>; 3],
}

impl<F: Field> MultiQuadric<F> {
    pub fn new(poly: MPoly<F>) -> Result<Self, HypersurfaceError> {
        if poly.nvars() == 0 {
            return Err(HypersurfaceError::TooFewFactors { min: 1, got: 0 });
        }
        if poly.is_zero() {
            return Err(HypersurfaceError::ZeroPolynomial);
        }
        let n = poly.nvars();
        Ok(MultiQuadric { poly: poly.with_declared(vec![2; n])? })
    }

    pub fn from_terms<I>(ctx: &F::Ctx, n_factors: usize, terms: I) -> Result<Self, HypersurfaceError>
    where
        I: IntoIterator<Item = (Vec<u32>, F)>,
    {
        Self::new(MPoly::from_terms(ctx, n_factors, terms)?)
    }

    pub fn n_factors(&self) -> usize {
        self.poly.nvars()
    }

    pub fn poly(&self) -> &MPoly<F> {
        &self.poly
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.poly.ctx()
    }

    pub fn axis(&self, number: usize) -> Result<Axis, HypersurfaceError> {
        Axis::from_number(number)
            .filter(|a| a.index() < self.n_factors())
            .ok_or(HypersurfaceError::AxisOutOfRange { axis: number, n: self.n_factors() })
    }

    fn check_axis(&self, axis: Axis) -> Result<(), HypersurfaceError> {
        if axis.index() >= self.n_factors() {
            return Err(HypersurfaceError::AxisOutOfRange { axis: axis.number(), n: self.n_factors() });
        }
        Ok(())
    }

    /// Variable names `x1, ..., x{n+1}`.
    pub fn var_names(&self) -> Vec<String> {
        (1..=self.n_factors()).map(|j| format!("x{j}")).collect()
    }

    pub fn decompose(&self, axis: Axis) -> Result<AxisDecomposition<F>, HypersurfaceError> {
        self.check_axis(axis)?;
        let i = axis.index();
        let rest = self.n_factors() - 1;
        let mut parts: [Vec<(Vec<u32>, F)>; 3] = Default::default();
        for (e, c) in self.poly.terms() {
            let mut stripped = e.clone();
            let k = stripped.remove(i);
            parts[2 - k as usize].push((stripped, c.clone()));
        }
        let f = parts
            .map(|terms| MPoly::from_terms_declared(self.ctx(), vec![2; rest], terms).expect("exponents bounded by 2"));
        Ok(AxisDecomposition { axis, f })
    }

    pub fn discriminant(&self, axis: Axis) -> Result<MPoly<F>, HypersurfaceError> {
        Ok(self.decompose(axis)?.discriminant())
    }

    pub fn genericity(&self) -> GenericityReport {
        let axes = Axis::all(self.n_factors())
            .map(|axis| {
                let d = self.decompose(axis).expect("axis in range");
                AxisGenericity {
                    axis,
                    discriminant_zero: d.discriminant().is_zero(),
                    f_zero: [d.f[0].is_zero(), d.f[1].is_zero(), d.f[2].is_zero()],
                }
            })
            .collect();
        GenericityReport { axes }
    }

    fn check_point(&self, p: &Point<F>) -> Result<(), HypersurfaceError> {
        if p.len() != self.n_factors() {
            return Err(AlgebraError::PointLength { expected: self.n_factors(), got: p.len() }.into());
        }
        Ok(())
    }

    pub fn value_at(&self, p: &Point<F>) -> Result<F, HypersurfaceError> {
        self.check_point(p)?;
        Ok(self.poly.eval_projective(p.coords())?)
    }

    pub fn contains(&self, p: &Point<F>) -> Result<bool, HypersurfaceError> {
        Ok(self.value_at(p)?.is_zero())
    }

    /// True iff every partial derivative of the multihomogenized equation,
    /// in all `u_j` and `v_j`, vanishes at `p`. `p` must lie on `X`.
    pub fn singular_at(&self, p: &Point<F>) -> Result<bool, HypersurfaceError> {
        if !self.contains(p)? {
            return Err(HypersurfaceError::NotOnHypersurface(p.to_string()));
        }
        for j in 0..self.n_factors() {
            for wrt in [Homog::U, Homog::V] {
                if !self.poly.eval_projective_partial(p.coords(), j, wrt)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl<F: Field> fmt::Display for MultiQuadric<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.display_with(&self.var_names()))
    }
}

impl<F: Field> AxisDecomposition<F> {
    pub fn f0(&self) -> &MPoly<F> {
        &self.f[0]
    }
    pub fn f1(&self) -> &MPoly<F> {
        &self.f[1]
    }
    pub fn f2(&self) -> &MPoly<F> {
        &self.f[2]
    }

    /// `F1^2 - 4 F0 F2`
    pub fn discriminant(&self) -> MPoly<F> {
        let ctx = self.f[0].ctx();
        let four = F::from_i64(ctx, 4);
        &(&self.f[1] * &self.f[1]) - &(&self.f[0] * &self.f[2]).scale(&four)
    }

    /// Rebuilds `F0 x_i^2 + F1 x_i + F2` in all `n+1` variables.
    pub fn assemble(&self) -> MPoly<F> {
        let i = self.axis.index();
        let n = self.f[0].nvars() + 1;
        let terms = self.f.iter().enumerate().flat_map(|(k, part)| {
            part.terms().map(move |(e, c)| {
                let mut full = e.clone();
                full.insert(i, 2 - k as u32);
                (full, c.clone())
            })
        });
        MPoly::from_terms_declared(self.f[0].ctx(), vec![2; n], terms).expect("exponents bounded by 2")
    }

    /// Names of the remaining coordinates, for display.
    pub fn var_names(&self) -> Vec<String> {
        let n = self.f[0].nvars() + 1;
        (1..=n).filter(|&j| j != self.axis.number()).map(|j| format!("x{j}")).collect()
    }

    /// `(F0, F1, F2)` evaluated projectively at the coordinates other than
    /// the axis.
    pub fn eval_fiber(&self, others: &[ProjCoord<F>]) -> Result<[F; 3], AlgebraError> {
        Ok([self.f[0].eval_projective(others)?, self.f[1].eval_projective(others)?, self.f[2].eval_projective(others)?])
    }
}

impl AxisDecomposition<Fp> {
    /// Roots of `a x^2 + b x + c` for the fiber over the given coordinates,
    /// `None` when `a = 0` or the discriminant is a non-residue. A double root
    /// is returned twice.
    pub fn fiber_roots(&self, others: &[ProjCoord<Fp>]) -> Result<Option<[Fp; 2]>, AlgebraError> {
        let [a, b, c] = self.eval_fiber(others)?;
        Ok(quadratic_roots(a, b, c))
    }
}

fn quadratic_roots(a: Fp, b: Fp, c: Fp) -> Option<[Fp; 2]> {
    let two_a_inv = a.add(&a).inv()?;
    let four = Fp::from_i64(&a.ctx(), 4);
    let disc = b.mul(&b).sub(&four.mul(&a).mul(&c));
    let r = disc.sqrt()?;
    let nb = b.neg();
    Some([nb.sub(&r).mul(&two_a_inv), nb.add(&r).mul(&two_a_inv)])
}

/// Budget for rejection loops in sampling and generation.
pub const DEFAULT_ATTEMPTS: usize = 1000;

impl MultiQuadric<Fp> {
    /// Random point of `X` whose axis-`i` coordinate solves the fiber
    /// quadratic over random affine values of the other coordinates.
    pub fn sample_with<R: Rng + ?Sized>(
        &self,
        axis: Axis,
        rng: &mut R,
        attempts: usize,
    ) -> Result<Point<Fp>, HypersurfaceError> {
        let d = self.decompose(axis)?;
        let m = *self.ctx();
        for _ in 0..attempts {
            let others: Vec<ProjCoord<Fp>> =
                (1..self.n_factors()).map(|_| ProjCoord::affine(Fp::draw(&m, rng, 0))).collect();
            let Some(roots) = d.fiber_roots(&others)? else { continue };
            let x = roots[rng.gen_range(0..2)];
            let mut coords = others;
            coords.insert(axis.index(), ProjCoord::affine(x));
            return Ok(Point::new(coords)?);
        }
        Err(HypersurfaceError::SamplingExhausted(attempts))
    }

    pub fn sample(&self, axis: Axis, seed: u64) -> Result<Point<Fp>, HypersurfaceError> {
        self.sample_with(axis, &mut seed::rng(seed), DEFAULT_ATTEMPTS)
    }
}

/// Coefficient box and retry budget for [`random_hypersurface`].
#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    /// Over ℚ, coefficients are integers in `[-q_bound, q_bound]`.
    pub q_bound: u32,
    pub attempts: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { q_bound: 20, attempts: DEFAULT_ATTEMPTS }
    }
}

/// Draws all `3^(n+1)` coefficients until the genericity proxy passes.
pub fn random_hypersurface<F: Field>(
    n_factors: usize,
    ctx: &F::Ctx,
    seed: u64,
    config: GenConfig,
) -> Result<MultiQuadric<F>, HypersurfaceError> {
    if n_factors < 2 {
        return Err(HypersurfaceError::TooFewFactors { min: 2, got: n_factors });
    }
    let mut rng = seed::rng(seed);
    let exps = all_exponents(n_factors);
    for _ in 0..config.attempts {
        let terms: Vec<(Vec<u32>, F)> =
            exps.iter().map(|e| (e.clone(), F::draw(ctx, &mut rng, config.q_bound))).collect();
        let Ok(x) = MultiQuadric::from_terms(ctx, n_factors, terms) else { continue };
        if x.genericity().pass() {
            return Ok(x);
        }
    }
    Err(HypersurfaceError::GenerationExhausted(config.attempts))
}

/// `{0,1,2}^n` in lexicographic order.
fn all_exponents(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..=2).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisGenericity {
    pub axis: Axis,
    pub discriminant_zero: bool,
    pub f_zero: [bool; 3],
}

impl AxisGenericity {
    pub fn pass(&self) -> bool {
        !self.discriminant_zero && !self.f_zero[0] && !self.f_zero[2]
    }
}

/// Outcome of the genericity proxy: per axis, `Δ_i ≢ 0` and `F_{i,0}, F_{i,2} ≢ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub axes: Vec<AxisGenericity>,
}

impl GenericityReport {
    pub fn pass(&self) -> bool {
        self.axes.iter().all(AxisGenericity::pass)
    }

    pub fn axis_passes(&self, axis: Axis) -> bool {
        self.axes.get(axis.index()).is_some_and(AxisGenericity::pass)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for a in &self.axes {
            if a.discriminant_zero {
                out.push(format!("axis {}: discriminant vanishes identically", a.axis));
            }
            for (j, &z) in a.f_zero.iter().enumerate() {
                if z {
                    out.push(format!("axis {}: F{j} vanishes identically", a.axis));
                }
            }
        }
        out
    }
}

impl fmt::Display for GenericityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genericity: {}", if self.pass() { "PASS" } else { "FAIL" })?;
        for line in self.failures() {
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}
