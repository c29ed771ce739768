//! Executable certificates: inertia, agreement of the two lifts of each
//! covering involution, infinite order of `ρ_i`, nontriviality of reduced
//! `ρ`-words, and the universal Coxeter prediction for `ι`-words.
//!
//! Pointwise checks draw one sub-seed per trial (see [`crate::seed::derive`]),
//! so any witness can be replayed from the run seed and its trial index.

use std::fmt::{self, Write as _};

use rand::Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Fp, Point, ProjCoord};
use crate::fibermap::{FiberMap, FiberMapError, MapOutcome};
use crate::hypersurface::{Axis, HypersurfaceError, MultiQuadric, DEFAULT_ATTEMPTS};
use crate::seed;
use crate::words::{Alphabet, GenKind, Generator, Word, WordError};

/// Bound on random affine coordinates over ℚ.
const Q_POINT_BOUND: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    FiberMap(#[from] FiberMapError),
    #[error(transparent)]
    Hypersurface(#[from] HypersurfaceError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("axis {axis} is degenerate: {reason}")]
    Degenerate { axis: Axis, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "VERIFIED",
            Status::Refuted => "REFUTED",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<F> {
    /// `after` is `None` when the image was indeterminate.
    Point { trial: u64, before: Point<F>, after: Option<Point<F>> },
    /// Smallest power at which a matrix became scalar.
    Power(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<F> {
    pub status: Status,
    /// `None` for deterministic checks.
    pub seed: Option<u64>,
    pub trials_used: u64,
    pub indeterminate_hits: u64,
    pub witness: Option<Witness<F>>,
    pub detail: String,
}

impl<F: Field> Verdict<F> {
    fn new(status: Status, seed: Option<u64>, detail: impl Into<String>) -> Self {
        Verdict { status, seed, trials_used: 0, indeterminate_hits: 0, witness: None, detail: detail.into() }
    }

    /// Text record sufficient to replay the run.
    pub fn to_record(&self, check: &str, word: Option<&Word>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "check: {check}");
        let _ = writeln!(s, "status: {}", self.status);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        let _ = writeln!(s, "trials_used: {}", self.trials_used);
        let _ = writeln!(s, "indeterminate_hits: {}", self.indeterminate_hits);
        if let Some(w) = word {
            let _ = writeln!(s, "word: {w}");
        }
        match &self.witness {
            Some(Witness::Point { trial, before, after }) => {
                let _ = writeln!(s, "witness_trial: {trial}");
                let _ = writeln!(s, "witness_before: {}", coords_exact(before));
                match after {
                    Some(a) => {
                        let _ = writeln!(s, "witness_after: {}", coords_exact(a));
                    }
                    None => {
                        let _ = writeln!(s, "witness_after: indeterminate");
                    }
                }
            }
            Some(Witness::Power(k)) => {
                let _ = writeln!(s, "witness_power: {k}");
            }
            None => {}
        }
        let _ = writeln!(s, "detail: {}", self.detail);
        s
    }
}

/// `[u:v]` pairs, normalized, comma-separated.
fn coords_exact<F: Field>(p: &Point<F>) -> String {
    p.normalized().coords().iter().map(|c| format!("[{}:{}]", c.u, c.v)).collect::<Vec<_>>().join(",")
}

/// Which ambient map stands in for `ι_i` when a restricted word is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Lift {
    #[default]
    Tau,
    Sigma,
}

struct AxisMaps<F: Field> {
    tau: Result<FiberMap<F>, FiberMapError>,
    sigma: Result<FiberMap<F>, FiberMapError>,
    rho: Result<FiberMap<F>, FiberMapError>,
    rho_inv: Result<FiberMap<F>, FiberMapError>,
}

/// The maps `τ_i, σ_i, ρ_i, ρ_i^{-1}` of a hypersurface for every axis.
/// Axes where a map is undefined keep the construction error.
pub struct GeneratorMaps<F: Field> {
    axes: Vec<AxisMaps<F>>,
}

impl<F: Field> GeneratorMaps<F> {
    pub fn new(x: &MultiQuadric<F>) -> Self {
        let axes = Axis::all(x.n_factors())
            .map(|a| AxisMaps {
                tau: FiberMap::tau(x, a),
                sigma: FiberMap::sigma(x, a),
                rho: FiberMap::rho(x, a),
                rho_inv: FiberMap::rho_inv(x, a),
            })
            .collect();
        GeneratorMaps { axes }
    }

    pub fn n_factors(&self) -> usize {
        self.axes.len()
    }

    pub fn get(&self, g: Generator, lift: Lift) -> Result<&FiberMap<F>, CertifyError> {
        let maps = self
            .axes
            .get(g.axis.index())
            .ok_or_else(|| CertifyError::Precondition(format!("letter {g} outside the {} factors", self.axes.len())))?;
        let m = match (g.kind, lift) {
            (GenKind::Tau, _) | (GenKind::Iota, Lift::Tau) => &maps.tau,
            (GenKind::Sigma, _) | (GenKind::Iota, Lift::Sigma) => &maps.sigma,
            (GenKind::Rho, _) => &maps.rho,
            (GenKind::RhoInv, _) => &maps.rho_inv,
        };
        m.as_ref().map_err(|e| e.clone().into())
    }

    /// Replaces `ρ_i` (for instance by a deliberately corrupted matrix).
    pub fn set_rho(&mut self, axis: Axis, m: FiberMap<F>) {
        self.axes[axis.index()].rho = Ok(m);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordOutcome<F> {
    Point(Point<F>),
    /// Letter at this position (0 = leftmost) hit its indeterminacy locus.
    Indeterminate {
        letter: usize,
    },
}

/// Applies the letters of `w` right to left.
pub fn evaluate_word<F: Field>(
    maps: &GeneratorMaps<F>,
    w: &Word,
    p: &Point<F>,
    lift: Lift,
) -> Result<WordOutcome<F>, CertifyError> {
    if p.len() != maps.n_factors() {
        return Err(CertifyError::Precondition(format!(
            "point has {} coordinates, hypersurface has {} factors",
            p.len(),
            maps.n_factors()
        )));
    }
    let mut cur = p.clone();
    for (idx, &g) in w.letters().iter().enumerate().rev() {
        match maps.get(g, lift)?.apply(&cur)? {
            MapOutcome::Point(q) => cur = q,
            MapOutcome::Indeterminate => return Ok(WordOutcome::Indeterminate { letter: idx }),
        }
    }
    Ok(WordOutcome::Point(cur))
}

fn require_generic<F: Field>(x: &MultiQuadric<F>) -> Result<(), CertifyError> {
    let report = x.genericity();
    if !report.pass() {
        return Err(CertifyError::Precondition(format!(
            "hypersurface fails the genericity check: {}",
            report.failures().join("; ")
        )));
    }
    Ok(())
}

fn random_axis<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Axis {
    Axis::new(rng.gen_range(0..n))
}

/// `ρ_i` and `ρ_i^{-1}` fix sampled points of `X`.
pub fn certify_inertia(x: &MultiQuadric<Fp>, axis: Axis, trials: u64, seed: u64) -> Result<Verdict<Fp>, CertifyError> {
    certify_inertia_with(x, &GeneratorMaps::new(x), axis, trials, seed)
}

/// As [`certify_inertia`] with caller-supplied maps.
pub fn certify_inertia_with(
    x: &MultiQuadric<Fp>,
    maps: &GeneratorMaps<Fp>,
    axis: Axis,
    trials: u64,
    seed: u64,
) -> Result<Verdict<Fp>, CertifyError> {
    let letters = [Generator::new(GenKind::Rho, axis), Generator::new(GenKind::RhoInv, axis)];
    let ms = [maps.get(letters[0], Lift::Tau)?, maps.get(letters[1], Lift::Tau)?];
    let mut v = Verdict::new(Status::Verified, Some(seed), "");
    let mut checked = 0;
    let mut t = 0;
    while checked < trials {
        if v.indeterminate_hits > trials {
            v.status = Status::Inconclusive;
            v.detail = "indeterminacy budget exhausted".into();
            return Ok(v);
        }
        let mut rng = seed::rng(seed::derive(seed, t));
        v.trials_used = t + 1;
        let sample_axis = random_axis(x.n_factors(), &mut rng);
        let p = match x.sample_with(sample_axis, &mut rng, DEFAULT_ATTEMPTS) {
            Ok(p) => p,
            Err(HypersurfaceError::SamplingExhausted(n)) => {
                v.status = Status::Inconclusive;
                v.detail = format!("sampling exhausted after {n} attempts on axis {sample_axis}");
                return Ok(v);
            }
            Err(e) => return Err(e.into()),
        };
        let images = [ms[0].apply(&p)?, ms[1].apply(&p)?];
        t += 1;
        if images.contains(&MapOutcome::Indeterminate) {
            v.indeterminate_hits += 1;
            continue;
        }
        for (img, g) in images.into_iter().zip(letters) {
            let q = img.point().expect("checked above");
            if !q.proj_eq(&p) {
                v.status = Status::Refuted;
                v.detail = format!("{g} moves a point of X");
                v.witness = Some(Witness::Point { trial: t - 1, before: p, after: Some(q) });
                return Ok(v);
            }
        }
        checked += 1;
    }
    v.detail = format!("rho_{axis} and its inverse fix {checked} sampled points of X");
    Ok(v)
}

/// `τ_i` and `σ_i` agree on sampled points of `X`, preserve `X`, fix the
/// other coordinates, and swap the two points of split fibers.
pub fn certify_tau_sigma_agree(
    x: &MultiQuadric<Fp>,
    axis: Axis,
    trials: u64,
    seed: u64,
) -> Result<Verdict<Fp>, CertifyError> {
    let tau = FiberMap::tau(x, axis)?;
    let sigma = FiberMap::sigma(x, axis)?;
    let disc = x.discriminant(axis)?;
    let i = axis.index();
    let mut v = Verdict::new(Status::Verified, Some(seed), "");
    let mut checked = 0;
    let mut t = 0;
    while checked < trials {
        if v.indeterminate_hits > trials {
            v.status = Status::Inconclusive;
            v.detail = "indeterminacy budget exhausted".into();
            return Ok(v);
        }
        let mut rng = seed::rng(seed::derive(seed, t));
        v.trials_used = t + 1;
        let p = match x.sample_with(axis, &mut rng, DEFAULT_ATTEMPTS) {
            Ok(p) => p,
            Err(HypersurfaceError::SamplingExhausted(n)) => {
                v.status = Status::Inconclusive;
                v.detail = format!("sampling exhausted after {n} attempts");
                return Ok(v);
            }
            Err(e) => return Err(e.into()),
        };
        let trial = t;
        t += 1;
        let (MapOutcome::Point(a), MapOutcome::Point(b)) = (tau.apply(&p)?, sigma.apply(&p)?) else {
            v.indeterminate_hits += 1;
            continue;
        };
        let refute = |v: &mut Verdict<Fp>, why: String, after: Point<Fp>| {
            v.status = Status::Refuted;
            v.detail = why;
            v.witness = Some(Witness::Point { trial, before: p.clone(), after: Some(after) });
        };
        if !a.proj_eq(&b) {
            refute(&mut v, format!("tau_{axis} and sigma_{axis} disagree (sigma image {b})"), a);
            return Ok(v);
        }
        if !x.contains(&a)? {
            refute(&mut v, "image leaves X".into(), a);
            return Ok(v);
        }
        if (0..p.len()).any(|j| j != i && !a.coord(j).proj_eq(p.coord(j))) {
            refute(&mut v, "a coordinate off the axis changed".into(), a);
            return Ok(v);
        }
        let double_root = disc.eval_projective(&p.others(i))?.is_zero();
        if a.proj_eq(&p) && !double_root {
            refute(&mut v, "split fiber point is fixed".into(), a);
            return Ok(v);
        }
        checked += 1;
    }
    v.detail = format!("tau_{axis} = sigma_{axis} on {checked} sampled points of X");
    Ok(v)
}

/// No power `ρ_i^k`, `1 ≤ k ≤ k_max`, is a scalar matrix.
pub fn order_check<F: Field>(x: &MultiQuadric<F>, axis: Axis, k_max: u32) -> Result<Verdict<F>, CertifyError> {
    let d = x.decompose(axis)?;
    if d.discriminant().is_zero() {
        return Err(CertifyError::Degenerate {
            axis,
            reason: "discriminant F1^2 - 4 F0 F2 vanishes identically".into(),
        });
    }
    for (j, f) in [(0, d.f0()), (2, d.f2())] {
        if f.is_zero() {
            return Err(CertifyError::Degenerate { axis, reason: format!("F{j} vanishes identically") });
        }
    }
    let rho = FiberMap::rho(x, axis)?;
    let mut v = Verdict::new(Status::Verified, None, "");
    for (k, m) in (1..=k_max).zip(rho.powers()) {
        v.trials_used = k as u64;
        if m.scalar_identity().is_some() {
            v.status = Status::Refuted;
            v.witness = Some(Witness::Power(k));
            v.detail = format!("rho_{axis}^{k} is a scalar matrix");
            return Ok(v);
        }
    }
    v.detail = format!("rho_{axis}^k is not scalar for 1 <= k <= {k_max}");
    Ok(v)
}

/// Searches for a point moved by the ambient word `w`.
///
/// Candidates cycle through: the leading letter's axis coordinate set to
/// `0`, then to `∞`, then a fully random point; other coordinates are
/// random affine values. Candidates on `X` are skipped. `VERIFIED` means a
/// witness of `w ≠ id` was found.
pub fn certify_nontrivial<F: Field>(
    x: &MultiQuadric<F>,
    w: &Word,
    trials: u64,
    seed: u64,
) -> Result<Verdict<F>, CertifyError> {
    if w.alphabet() == Some(Alphabet::Restricted) {
        return Err(CertifyError::Precondition("word must use ambient letters".into()));
    }
    let reduced_empty = match w.reduce_rho_free() {
        Ok(r) => r.is_empty(),
        Err(_) => w.is_empty(),
    };
    if reduced_empty {
        return Err(CertifyError::Precondition("word reduces to the empty word".into()));
    }
    require_generic(x)?;
    let maps = GeneratorMaps::new(x);
    let lead = w.leading_axis().expect("nonempty");
    let ctx = x.ctx().clone();
    let mut v = Verdict::new(Status::Inconclusive, Some(seed), "");
    let mut on_x = 0;
    for t in 0..trials {
        v.trials_used = t + 1;
        let mut rng = seed::rng(seed::derive(seed, t));
        let coords: Vec<ProjCoord<F>> =
            (0..x.n_factors()).map(|_| ProjCoord::affine(F::draw(&ctx, &mut rng, Q_POINT_BOUND))).collect();
        let mut p = Point::new(coords).expect("affine coordinates");
        match t % 3 {
            0 => p = p.with_coord(lead.index(), ProjCoord::affine(F::zero(&ctx))),
            1 => p = p.with_coord(lead.index(), ProjCoord::infinity(&ctx)),
            _ => {}
        }
        if x.contains(&p)? {
            on_x += 1;
            continue;
        }
        match evaluate_word(&maps, w, &p, Lift::Tau)? {
            WordOutcome::Indeterminate { .. } => v.indeterminate_hits += 1,
            WordOutcome::Point(q) => {
                if !q.proj_eq(&p) {
                    v.status = Status::Verified;
                    v.detail = "word moves a point off X: nontrivial".into();
                    v.witness = Some(Witness::Point { trial: t, before: p, after: Some(q) });
                    return Ok(v);
                }
            }
        }
    }
    v.detail = format!("no moved point found ({on_x} candidates on X skipped)");
    Ok(v)
}

/// Checks the universal Coxeter prediction for a restricted word: it fixes
/// sampled points of `X` iff it reduces to the empty word.
pub fn uc_oracle_check(
    x: &MultiQuadric<Fp>,
    w: &Word,
    trials: u64,
    seed: u64,
    lift: Lift,
) -> Result<Verdict<Fp>, CertifyError> {
    if w.alphabet() == Some(Alphabet::Ambient) {
        return Err(CertifyError::Precondition("word must use restricted (I) letters".into()));
    }
    require_generic(x)?;
    let trivial = w.uc_reduce()?.is_empty();
    let maps = GeneratorMaps::new(x);
    let mut v = Verdict::new(Status::Verified, Some(seed), "");
    let mut checked = 0;
    let mut t = 0;
    let mut first_moved = None;
    while checked < trials {
        if v.indeterminate_hits > trials {
            v.status = Status::Inconclusive;
            v.detail = "indeterminacy budget exhausted".into();
            return Ok(v);
        }
        let mut rng = seed::rng(seed::derive(seed, t));
        v.trials_used = t + 1;
        let sample_axis = random_axis(x.n_factors(), &mut rng);
        let p = match x.sample_with(sample_axis, &mut rng, DEFAULT_ATTEMPTS) {
            Ok(p) => p,
            Err(HypersurfaceError::SamplingExhausted(n)) => {
                v.status = Status::Inconclusive;
                v.detail = format!("sampling exhausted after {n} attempts");
                return Ok(v);
            }
            Err(e) => return Err(e.into()),
        };
        let trial = t;
        t += 1;
        let q = match evaluate_word(&maps, w, &p, lift)? {
            WordOutcome::Indeterminate { .. } => {
                v.indeterminate_hits += 1;
                continue;
            }
            WordOutcome::Point(q) => q,
        };
        checked += 1;
        if !q.proj_eq(&p) {
            if trivial {
                v.status = Status::Refuted;
                v.detail = "reduced-empty word moves a point of X".into();
                v.witness = Some(Witness::Point { trial, before: p, after: Some(q) });
                return Ok(v);
            }
            first_moved.get_or_insert(Witness::Point { trial, before: p, after: Some(q) });
        }
    }
    if trivial {
        v.detail = format!("reduced word is empty; {checked} sampled points fixed");
    } else if let Some(wit) = first_moved {
        v.witness = Some(wit);
        v.detail = "reduced word is nonempty; a sampled point moves".into();
    } else {
        v.status = Status::Refuted;
        v.detail = format!("reduced word is nonempty but fixes all {checked} sampled points");
    }
    Ok(v)
}
