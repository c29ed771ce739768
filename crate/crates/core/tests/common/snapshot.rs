//! The library's answers to the hand-checkable questions, in the same
//! shape as [`super::fixture::compute`].

use inertia::algebra::{sqrt_mod_p, Fp, Homog, MPoly, Modulus, Point, ProjCoord, Rationals, Q};
use inertia::fibermap::{FiberMap, MapOutcome};
use inertia::hypersurface::{Axis, MultiQuadric};
use serde_json::{json, Value};

use super::{bi_fp, bi_q, dense_q, oracle, q};

const AX1: Axis = Axis::new(0);
const AX2: Axis = Axis::new(1);

fn int(c: &Q) -> i64 {
    assert!(c.is_integer());
    i64::try_from(c.to_integer()).unwrap()
}

fn mat(m: &FiberMap<Q>) -> Vec<Vec<i64>> {
    m.entries().iter().map(dense_q).collect()
}

fn slices(x: &MultiQuadric<Q>, a: Axis) -> Vec<Vec<i64>> {
    x.decompose(a).unwrap().f.iter().map(dense_q).collect()
}

fn partials(x: &MultiQuadric<Q>, pt: &[ProjCoord<Q>]) -> Vec<i64> {
    (0..2)
        .flat_map(|j| [Homog::U, Homog::V].map(|h| int(&x.poly().eval_projective_partial(pt, j, h).unwrap())))
        .collect()
}

fn axis1_image_f7(m: &FiberMap<Fp>, p: &Point<Fp>) -> i64 {
    m.apply(p).unwrap().point().unwrap().coord(0).affine_value().unwrap().value() as i64
}

fn axis1_image_q(m: &FiberMap<Q>, p: &Point<Q>) -> (i64, i64) {
    let v = m.apply(p).unwrap().point().unwrap().coord(0).affine_value().unwrap();
    (int(&Q::from_integer(v.numer().clone())), int(&Q::from_integer(v.denom().clone())))
}

fn roots_f7(x: &MultiQuadric<Fp>, y: u64) -> Vec<i64> {
    let m = *x.ctx();
    let r = x.decompose(AX1).unwrap().fiber_roots(&[ProjCoord::affine(m.elem(y))]).unwrap().unwrap();
    let mut v: Vec<i64> = r.iter().map(|c| c.value() as i64).collect();
    v.sort();
    v.dedup();
    v
}

pub fn compute() -> Value {
    let f7 = Modulus::new(7).unwrap();
    let run = bi_q(&oracle::running());
    let run7 = bi_fp(&oracle::running(), &f7);
    let sq = bi_q(&oracle::square());
    let m1 = bi_q(&oracle::x2y2_minus_1());

    let x = MPoly::var(&f7, 0, vec![1]);
    let prod = &x.scale(&f7.elem(3)) * &x.scale(&f7.elem(5));
    let y2 = MPoly::from_terms_declared(&Rationals, vec![2], [(vec![2], q(1))]).unwrap();

    let tau = FiberMap::tau(&run, AX1).unwrap();
    let sigma = FiberMap::sigma(&run, AX1).unwrap();
    let rho = FiberMap::rho(&run, AX1).unwrap();
    let rho_p = FiberMap::rho_inv(&run, AX1).unwrap();
    let d = run.decompose(AX1).unwrap();

    let p41 = Point::affine(vec![f7.elem(4), f7.elem(1)]);
    let p11 = Point::affine(vec![q(1), q(1)]);
    let origin = Point::affine(vec![q(0), q(0)]);
    let sigma_origin = match sigma.apply(&origin).unwrap() {
        // indeterminate means both image components vanished
        MapOutcome::Indeterminate => vec![0, 0],
        MapOutcome::Point(_) => vec![],
    };

    json!({
        "fp7_3x_times_5x_coeff": prod.coeff(&[2]).map(|c| c.value()),
        "running_at_1_1_q": int(&run.value_at(&p11).unwrap()),
        "running_at_4_1_f7": run7.value_at(&p41).unwrap().value(),
        "y2_at_infinity": int(&y2.eval_projective(&[ProjCoord::infinity(&Rationals)]).unwrap()),
        "squares_mod_7": (0..7u64).filter(|&a| sqrt_mod_p(a, 7).is_some()).collect::<Vec<_>>(),
        "sqrt_2_mod_7": sqrt_mod_p(2, 7),
        "sqrt_3_mod_7": sqrt_mod_p(3, 7),
        "decomp_running_axis1": slices(&run, AX1),
        "decomp_running_axis2": slices(&run, AX2),
        "decomp_x2y2m1_axis1": slices(&m1, AX1),
        "disc_running_axis1": dense_q(&run.discriminant(AX1).unwrap()),
        "disc_square_axis1": dense_q(&sq.discriminant(AX1).unwrap()),
        "disc_x2y2m1_axis1": dense_q(&m1.discriminant(AX1).unwrap()),
        "fiber_roots_f7_y1": roots_f7(&run7, 1),
        "double_root_square_f7_y3": roots_f7(&bi_fp(&oracle::square(), &f7), 3),
        "partials_x2y2m1_at_inf_zero": partials(&m1, &[ProjCoord::new(q(0), q(1)).unwrap(), ProjCoord::new(q(1), q(0)).unwrap()]),
        "partials_running_at_origin": partials(&run, origin.coords()),
        "tau_running_axis1": mat(&tau),
        "sigma_running_axis1": mat(&sigma),
        "rho_running_axis1": mat(&rho),
        "rho_prime_running_axis1": mat(&rho_p),
        "tau_at_1_1_q": axis1_image_q(&tau, &p11),
        "tau_at_4_1_f7": axis1_image_f7(&FiberMap::tau(&run7, AX1).unwrap(), &p41),
        "sigma_at_4_1_f7": axis1_image_f7(&FiberMap::sigma(&run7, AX1).unwrap(), &p41),
        "sigma_at_1_1_q": axis1_image_q(&sigma, &p11),
        "rho_at_4_1_f7": axis1_image_f7(&FiberMap::rho(&run7, AX1).unwrap(), &p41),
        "sigma_at_origin_pair": sigma_origin,
        "tau_squared": mat(&tau.product(&tau).unwrap()),
        "sigma_squared": mat(&sigma.product(&sigma).unwrap()),
        "rho_rho_prime": mat(&rho.product(&rho_p).unwrap()),
        "rho_squared": mat(&rho.product(&rho).unwrap()),
        "f0_squared": dense_q(&(d.f0() * d.f0())),
        "f0_f2": dense_q(&(d.f0() * d.f2())),
    })
}
