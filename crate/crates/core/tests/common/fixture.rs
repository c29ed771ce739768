//! Hand-checkable values recomputed by the oracle, frozen in
//! `tests/fixtures/derived.json`.

use serde_json::{json, Value};

use super::oracle::*;

pub const PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/derived.json");

pub fn load() -> Value {
    let text = std::fs::read_to_string(PATH).expect("fixture file");
    serde_json::from_str(&text).expect("fixture json")
}

pub fn compute() -> Value {
    let g = running();
    let f1 = slices_axis1(&g);
    let f2 = slices_axis2(&g);
    let sq = slices_axis1(&square());
    let m1 = slices_axis1(&x2y2_minus_1());

    let tau1 = tau(&f1);
    let sigma1 = sigma(&f1);
    let rho1 = rho(&f1);
    let rho1p = rho_prime(&f1);

    // the F_7 fiber over y = 1: F0(1) x^2 + F1(1) x + F2(1)
    let fiber = [eval(&f1[0], 1), eval(&f1[1], 1), eval(&f1[2], 1)];
    // the double-root fiber of (xy+1)^2 over y = 3 in F_7
    let dbl = [eval(&sq[0], 3), eval(&sq[1], 3), eval(&sq[2], 3)];

    let affine = |x: i64| (1, x);
    let at = |m: &Mat, x: i64, y: i64| mobius_projective(eval_mat(m, y), affine(x));
    let mod7 = |(u, v): (i64, i64)| md(v * inv_mod(u, 7).expect("finite image"), 7);

    json!({
        "fp7_3x_times_5x_coeff": md(3 * 5, 7),
        "running_at_1_1_q": eval_bi(&g, 1, 1),
        "running_at_4_1_f7": md(eval_bi(&g, 4, 1), 7),
        // y^2 with declared degree 2 at [u:v] = [0:1]: u^0 v^2
        "y2_at_infinity": 0i64.pow(0) * 1i64.pow(2),
        "squares_mod_7": squares_mod(7),
        "sqrt_2_mod_7": sqrt_mod(2, 7),
        "sqrt_3_mod_7": sqrt_mod(3, 7),
        "decomp_running_axis1": f1,
        "decomp_running_axis2": f2,
        "decomp_x2y2m1_axis1": m1,
        "disc_running_axis1": discriminant(&f1),
        "disc_square_axis1": discriminant(&sq),
        "disc_x2y2m1_axis1": discriminant(&m1),
        "fiber_roots_f7_y1": quadratic_roots_mod(fiber[0], fiber[1], fiber[2], 7),
        "double_root_square_f7_y3": quadratic_roots_mod(dbl[0], dbl[1], dbl[2], 7),
        "partials_x2y2m1_at_inf_zero": bihom_partials(&x2y2_minus_1(), (0, 1), (1, 0)),
        "partials_running_at_origin": bihom_partials(&g, (1, 0), (1, 0)),
        "tau_running_axis1": tau1,
        "sigma_running_axis1": sigma1,
        "rho_running_axis1": rho1,
        "rho_prime_running_axis1": rho1p,
        "tau_at_1_1_q": as_fraction(at(&tau1, 1, 1)),
        "tau_at_4_1_f7": mod7(at(&tau1, 4, 1)),
        "sigma_at_4_1_f7": mod7(at(&sigma1, 4, 1)),
        "sigma_at_1_1_q": as_fraction(at(&sigma1, 1, 1)),
        "rho_at_4_1_f7": mod7(at(&rho1, 4, 1)),
        "sigma_at_origin_pair": at(&sigma1, 0, 0),
        "tau_squared": mat_mul(&tau1, &tau1),
        "sigma_squared": mat_mul(&sigma1, &sigma1),
        "rho_rho_prime": mat_mul(&rho1, &rho1p),
        "rho_squared": mat_mul(&rho1, &rho1),
        "f0_squared": mul(&f1[0], &f1[0]),
        "f0_f2": mul(&f1[0], &f1[2]),
    })
}
