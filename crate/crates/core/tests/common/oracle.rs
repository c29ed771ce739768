//! Brute-force reference arithmetic for hand-checkable values. Dense `i64`
//! polynomials, explicit 2×2 products, enumeration mod small primes. Nothing
//! here calls into the library.

/// Ascending coefficients of a univariate polynomial; `[]` is zero.
pub type Dense = Vec<i64>;

/// `c[a][b]` is the coefficient of `x^a y^b`.
pub type Bi = [[i64; 3]; 3];

/// `[A, B, C, D]`.
pub type Mat = [Dense; 4];

pub fn trim(mut p: Dense) -> Dense {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn add(a: &[i64], b: &[i64]) -> Dense {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| a.get(k).unwrap_or(&0) + b.get(k).unwrap_or(&0)).collect())
}

pub fn neg(a: &[i64]) -> Dense {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Dense {
    add(a, &neg(b))
}

pub fn mul(a: &[i64], b: &[i64]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &[i64], c: i64) -> Dense {
    trim(a.iter().map(|x| x * c).collect())
}

/// `x^2 y^2 + x + y`.
pub fn running() -> Bi {
    let mut c = [[0; 3]; 3];
    c[2][2] = 1;
    c[1][0] = 1;
    c[0][1] = 1;
    c
}

/// `(xy + 1)^2 = x^2 y^2 + 2xy + 1`.
pub fn square() -> Bi {
    let mut c = [[0; 3]; 3];
    c[2][2] = 1;
    c[1][1] = 2;
    c[0][0] = 1;
    c
}

/// `x^2 y^2 - 1`.
pub fn x2y2_minus_1() -> Bi {
    let mut c = [[0; 3]; 3];
    c[2][2] = 1;
    c[0][0] = -1;
    c
}

/// `[F0, F1, F2]` for axis 1 (coefficients of `x^2, x, 1`, as polys in `y`).
pub fn slices_axis1(g: &Bi) -> [Dense; 3] {
    [2, 1, 0].map(|a| trim(g[a].to_vec()))
}

/// Same for axis 2, as polys in `x`.
pub fn slices_axis2(g: &Bi) -> [Dense; 3] {
    [2, 1, 0].map(|b| trim((0..3).map(|a| g[a][b]).collect()))
}

pub fn discriminant(f: &[Dense; 3]) -> Dense {
    sub(&mul(&f[1], &f[1]), &scale(&mul(&f[0], &f[2]), 4))
}

pub fn tau(f: &[Dense; 3]) -> Mat {
    [neg(&f[0]), neg(&f[1]), vec![], f[0].clone()]
}

pub fn sigma(f: &[Dense; 3]) -> Mat {
    [vec![], f[2].clone(), f[0].clone(), vec![]]
}

pub fn rho(f: &[Dense; 3]) -> Mat {
    [vec![], f[2].clone(), neg(&f[0]), neg(&f[1])]
}

pub fn rho_prime(f: &[Dense; 3]) -> Mat {
    [neg(&f[1]), neg(&f[2]), f[0].clone(), vec![]]
}

pub fn mat_mul(m: &Mat, n: &Mat) -> Mat {
    let [a, b, c, d] = m;
    let [e, f, g, h] = n;
    [add(&mul(a, e), &mul(b, g)), add(&mul(a, f), &mul(b, h)), add(&mul(c, e), &mul(d, g)), add(&mul(c, f), &mul(d, h))]
}

pub fn eval(p: &[i64], y: i64) -> i64 {
    p.iter().rev().fold(0, |acc, c| acc * y + c)
}

pub fn md(a: i64, p: i64) -> i64 {
    a.rem_euclid(p)
}

pub fn eval_bi(g: &Bi, x: i64, y: i64) -> i64 {
    let mut s = 0;
    for (a, row) in g.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            s += c * x.pow(a as u32) * y.pow(b as u32);
        }
    }
    s
}

pub fn inv_mod(a: i64, p: i64) -> Option<i64> {
    (1..p).find(|&b| md(a * b, p) == 1)
}

pub fn squares_mod(p: i64) -> Vec<i64> {
    let mut s: Vec<i64> = (0..p).map(|x| x * x % p).collect();
    s.sort();
    s.dedup();
    s
}

/// Smallest square root by enumeration.
pub fn sqrt_mod(a: i64, p: i64) -> Option<i64> {
    (0..p).find(|x| md(x * x - a, p) == 0)
}

/// Roots of `a x^2 + b x + c` in `F_p`, by enumeration.
pub fn quadratic_roots_mod(a: i64, b: i64, c: i64, p: i64) -> Vec<i64> {
    (0..p).filter(|&x| md(a * x * x + b * x + c, p) == 0).collect()
}

/// Image of an axis coordinate under `[A,B,C,D]` evaluated at scalars:
/// `[u:v] -> [C v + D u : A v + B u]`.
pub fn mobius_projective(m: [i64; 4], (u, v): (i64, i64)) -> (i64, i64) {
    let [a, b, c, d] = m;
    (c * v + d * u, a * v + b * u)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Reduced fraction `v/u` with positive denominator.
pub fn as_fraction((u, v): (i64, i64)) -> (i64, i64) {
    let g = gcd(u, v).max(1) * u.signum();
    (v / g, u / g)
}

pub fn eval_mat(m: &Mat, y: i64) -> [i64; 4] {
    [eval(&m[0], y), eval(&m[1], y), eval(&m[2], y), eval(&m[3], y)]
}

/// Partials of the bihomogenization
/// `G = Σ c[a][b] xu^(2-a) xv^a yu^(2-b) yv^b`
/// in the order `(∂xu, ∂xv, ∂yu, ∂yv)`.
pub fn bihom_partials(g: &Bi, (xu, xv): (i64, i64), (yu, yv): (i64, i64)) -> [i64; 4] {
    let pw = |b: i64, e: i64| if e < 0 { 0 } else { b.pow(e as u32) };
    let mut out = [0; 4];
    for (a, row) in g.iter().enumerate() {
        for (b, &c) in row.iter().enumerate() {
            let (a, b) = (a as i64, b as i64);
            let (ea, eb) = (2 - a, 2 - b);
            let xs = pw(xu, ea) * pw(xv, a);
            let ys = pw(yu, eb) * pw(yv, b);
            out[0] += c * ea * pw(xu, ea - 1) * pw(xv, a) * ys;
            out[1] += c * a * pw(xu, ea) * pw(xv, a - 1) * ys;
            out[2] += c * eb * pw(yu, eb - 1) * pw(yv, b) * xs;
            out[3] += c * b * pw(yu, eb) * pw(yv, b - 1) * xs;
        }
    }
    out
}
