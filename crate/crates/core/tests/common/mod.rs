#![allow(dead_code)]

pub mod fixture;
pub mod oracle;
pub mod snapshot;

use inertia::algebra::{Field, Fp, MPoly, Modulus, Rationals, Q};
use inertia::hypersurface::{random_hypersurface, GenConfig, MultiQuadric};

pub fn q(v: i64) -> Q {
    Q::from_i64(&Rationals, v)
}

/// Builds a two-factor hypersurface from `c[a][b]` (coefficient of `x^a y^b`).
pub fn bi_q(c: &oracle::Bi) -> MultiQuadric<Q> {
    MultiQuadric::from_terms(&Rationals, 2, bi_terms(c).map(|(e, v)| (e, q(v)))).unwrap()
}

pub fn bi_fp(c: &oracle::Bi, m: &Modulus) -> MultiQuadric<Fp> {
    MultiQuadric::from_terms(m, 2, bi_terms(c).map(|(e, v)| (e, Fp::from_i64(m, v)))).unwrap()
}

fn bi_terms(c: &oracle::Bi) -> impl Iterator<Item = (Vec<u32>, i64)> + '_ {
    (0..3).flat_map(move |a| (0..3).map(move |b| (vec![a as u32, b as u32], c[a][b]))).filter(|(_, v)| *v != 0)
}

/// Dense ascending coefficients of a one-variable polynomial over ℚ with
/// integer coefficients.
pub fn dense_q(p: &MPoly<Q>) -> Vec<i64> {
    assert_eq!(p.nvars(), 1);
    let deg = p.degree_in(0).map_or(0, |d| d as usize + 1);
    (0..deg)
        .map(|k| {
            p.coeff(&[k as u32]).map_or(0, |c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
        })
        .collect()
}

pub fn generic_fp(n: usize, seed: u64, p: u64) -> MultiQuadric<Fp> {
    random_hypersurface(n, &Modulus::new(p).unwrap(), seed, GenConfig::default()).unwrap()
}

pub fn generic_q(n: usize, seed: u64) -> MultiQuadric<Q> {
    random_hypersurface(n, &Rationals, seed, GenConfig::default()).unwrap()
}
