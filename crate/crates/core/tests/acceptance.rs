//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Seeds, trial counts, sizes and time budgets are pinned
//! below.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::{bi_fp, fixture, oracle, snapshot};
use inertia::algebra::{Field, Fp, Modulus, Point, Rationals, Q};
use inertia::certify::{self, Lift, Status};
use inertia::fibermap::FiberMap;
use inertia::hypersurface::{random_hypersurface, Axis, GenConfig, MultiQuadric};
use inertia::seed;
use inertia::words::{GenKind, Generator, Word};
use rand::Rng;

const P: u64 = 1_000_003;

// criterion 1
const C1_SEEDS: u64 = 20;
const C1_BUDGET: Duration = Duration::from_secs(10);
// criteria 2 and 3
const C23_INSTANCES: u64 = 5;
const C23_TRIALS: u64 = 100;
// criterion 4
const C4_SEEDS: u64 = 10;
const C4_KMAX: u32 = 8;
const C4_BUDGET: Duration = Duration::from_secs(60);
// criterion 5
const C5_WORDS: u64 = 50;
const C5_MAX_LEN: usize = 12;
const C5_TRIALS: u64 = 200;
// criterion 6
const C6_WORDS: u64 = 100;
const C6_MAX_LEN: usize = 10;
const C6_SAMPLES: u64 = 20;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fp() -> Modulus {
    Modulus::new(P).unwrap()
}

fn n_for(seed: u64) -> usize {
    2 + (seed % 3) as usize
}

/// τ², σ² and ρ∘ρ′ are exactly F0²·I, (F0F2)·I and (F0F2)·I.
fn involution_identities<F: Field>(x: &MultiQuadric<F>) -> Result<(), String> {
    for a in Axis::all(x.n_factors()) {
        let d = x.decompose(a).map_err(|e| e.to_string())?;
        let f0_sq = d.f0() * d.f0();
        let f0_f2 = d.f0() * d.f2();
        let m = |r: Result<FiberMap<F>, _>| r.map_err(|e: inertia::fibermap::FiberMapError| e.to_string());
        let (t, s) = (m(FiberMap::tau(x, a))?, m(FiberMap::sigma(x, a))?);
        let (r, rp) = (m(FiberMap::rho(x, a))?, m(FiberMap::rho_inv(x, a))?);
        let checks = [
            ("tau^2", m(t.product(&t))?, &f0_sq),
            ("sigma^2", m(s.product(&s))?, &f0_f2),
            ("rho rho'", m(r.product(&rp))?, &f0_f2),
        ];
        for (name, prod, want) in checks {
            if prod.scalar_identity().as_ref() != Some(want) {
                return Err(format!("{name} on axis {a} is not the expected scalar"));
            }
        }
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for s in 0..C1_SEEDS {
        let n = n_for(s);
        let cfg = GenConfig::default();
        let xq = random_hypersurface::<Q>(n, &Rationals, s, cfg).map_err(|e| e.to_string())?;
        involution_identities(&xq).map_err(|e| format!("Q seed {s}: {e}"))?;
        let xp = random_hypersurface::<Fp>(n, &fp(), s, cfg).map_err(|e| e.to_string())?;
        involution_identities(&xp).map_err(|e| format!("Fp seed {s}: {e}"))?;
        count += 2;
    }
    let t = start.elapsed();
    if t > C1_BUDGET {
        return Err(format!("took {t:.2?}, budget {C1_BUDGET:?}"));
    }
    Ok(format!("{count} hypersurfaces, every axis, exact scalars, {t:.2?}"))
}

fn c23_instances() -> Vec<MultiQuadric<Fp>> {
    (0..C23_INSTANCES).map(|s| random_hypersurface::<Fp>(4, &fp(), 100 + s, GenConfig::default()).unwrap()).collect()
}

fn criterion_2() -> Outcome {
    let mut runs = 0;
    for (k, x) in c23_instances().iter().enumerate() {
        for a in Axis::all(4) {
            let v = certify::certify_inertia(x, a, C23_TRIALS, 2000 + k as u64).map_err(|e| e.to_string())?;
            if v.status != Status::Verified {
                return Err(format!("instance {k} axis {a}: {} ({})", v.status, v.detail));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} axis runs x {C23_TRIALS} points VERIFIED, 0 REFUTED"))
}

fn criterion_3() -> Outcome {
    let mut runs = 0;
    for (k, x) in c23_instances().iter().enumerate() {
        for a in Axis::all(4) {
            let v = certify::certify_tau_sigma_agree(x, a, C23_TRIALS, 3000 + k as u64).map_err(|e| e.to_string())?;
            if v.status != Status::Verified {
                return Err(format!("instance {k} axis {a}: {} ({})", v.status, v.detail));
            }
            runs += 1;
        }
    }
    // the hand-checkable fiber over y = 1 of x^2 y^2 + x + y mod 7
    let f7 = Modulus::new(7).unwrap();
    let x7 = bi_fp(&oracle::running(), &f7);
    let p = Point::affine(vec![f7.elem(4), f7.elem(1)]);
    let want = Point::affine(vec![f7.elem(2), f7.elem(1)]);
    for m in [FiberMap::tau(&x7, Axis::new(0)), FiberMap::sigma(&x7, Axis::new(0))] {
        let img = m.unwrap().apply(&p).unwrap().point().ok_or("indeterminate at (4,1)")?;
        if !img.proj_eq(&want) {
            return Err(format!("image of (4,1) is {img}, expected (2, 1)"));
        }
    }
    Ok(format!("{runs} axis runs x {C23_TRIALS} points VERIFIED; tau1(4,1) = sigma1(4,1) = (2,1) mod 7"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for s in 0..C4_SEEDS {
        let n = n_for(s);
        let cfg = GenConfig::default();
        for a in Axis::all(n) {
            let status = if s % 2 == 0 {
                let x = random_hypersurface::<Q>(n, &Rationals, 400 + s, cfg).unwrap();
                certify::order_check(&x, a, C4_KMAX).map_err(|e| e.to_string())?.status
            } else {
                let x = random_hypersurface::<Fp>(n, &fp(), 400 + s, cfg).unwrap();
                certify::order_check(&x, a, C4_KMAX).map_err(|e| e.to_string())?.status
            };
            if status != Status::Verified {
                return Err(format!("seed {s} axis {a}: {status}"));
            }
        }
    }
    let sq = common::bi_q(&oracle::square());
    match certify::order_check(&sq, Axis::new(0), C4_KMAX) {
        Err(certify::CertifyError::Degenerate { .. }) => {}
        other => return Err(format!("(xy+1)^2 not flagged degenerate: {other:?}")),
    }
    let t = start.elapsed();
    if t > C4_BUDGET {
        return Err(format!("took {t:.2?}, budget {C4_BUDGET:?}"));
    }
    Ok(format!("{C4_SEEDS} hypersurfaces, k <= {C4_KMAX}, every axis; (xy+1)^2 flagged; {t:.2?}"))
}

/// Random freely reduced nonempty ρ-word.
fn random_rho_word<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    let mut letters: Vec<Generator> = Vec::with_capacity(len);
    while letters.len() < len {
        let kind = if rng.gen_bool(0.5) { GenKind::Rho } else { GenKind::RhoInv };
        let g = Generator::new(kind, Axis::new(rng.gen_range(0..n)));
        if letters.last() != Some(&g.inverse()) {
            letters.push(g);
        }
    }
    Word::new(letters).unwrap()
}

fn criterion_5() -> Outcome {
    let xs: Vec<MultiQuadric<Fp>> =
        (0..5).map(|s| random_hypersurface::<Fp>(4, &fp(), 500 + s, GenConfig::default()).unwrap()).collect();
    let mut rng = seed::rng(5);
    let mut max_trials = 0;
    for k in 0..C5_WORDS {
        let w = random_rho_word(&mut rng, 4, C5_MAX_LEN);
        if w.reduce_rho_free().unwrap() != w {
            return Err(format!("generated word {w} is not reduced"));
        }
        let x = &xs[(k % 5) as usize];
        let v = certify::certify_nontrivial(x, &w, C5_TRIALS, 5000 + k).map_err(|e| e.to_string())?;
        if v.status != Status::Verified {
            return Err(format!("word {w}: {} after {} trials", v.status, v.trials_used));
        }
        max_trials = max_trials.max(v.trials_used);
    }
    Ok(format!("{C5_WORDS} reduced words VERIFIED nontrivial, 0 INCONCLUSIVE (max {max_trials} trials used)"))
}

fn random_iota_word<R: Rng>(rng: &mut R, n: usize, max_len: usize, palindrome: bool) -> Word {
    let iota = |a| Generator::new(GenKind::Iota, Axis::new(a));
    let letters: Vec<Generator> = if palindrome {
        let half: Vec<Generator> = (0..rng.gen_range(1..=max_len / 2)).map(|_| iota(rng.gen_range(0..n))).collect();
        half.iter().chain(half.iter().rev()).copied().collect()
    } else {
        (0..rng.gen_range(1..=max_len)).map(|_| iota(rng.gen_range(0..n))).collect()
    };
    Word::new(letters).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = seed::rng(6);
    let (mut trivial, mut nontrivial, mut hits) = (0, 0, 0);
    let mut small = [0; 2];
    for k in 0..C6_WORDS {
        let n = n_for(k);
        let x = random_hypersurface::<Fp>(n, &fp(), 600 + k, GenConfig::default()).unwrap();
        let w = random_iota_word(&mut rng, n, C6_MAX_LEN, k % 2 == 1);
        let v = certify::uc_oracle_check(&x, &w, C6_SAMPLES, 6000 + k, Lift::Tau).map_err(|e| e.to_string())?;
        if v.status != Status::Verified {
            return Err(format!("n+1 = {n}, word {w}: {} ({})", v.status, v.detail));
        }
        if w.uc_reduce().unwrap().is_empty() {
            trivial += 1;
        } else {
            nontrivial += 1;
        }
        if n <= 3 {
            small[n - 2] += 1;
        }
        hits += v.indeterminate_hits;
    }
    Ok(format!(
        "{C6_WORDS} words VERIFIED ({trivial} reduce to empty, {nontrivial} do not; {} with n+1 = 2, {} with n+1 = 3; {hits} indeterminate hits resampled)",
        small[0], small[1]
    ))
}

fn criterion_7() -> Outcome {
    let frozen = fixture::load();
    if fixture::compute() != frozen {
        return Err("oracle disagrees with the frozen fixture".into());
    }
    let lib = snapshot::compute();
    let keys = frozen.as_object().unwrap();
    let bad: Vec<&String> = keys.keys().filter(|k| lib.get(k.as_str()) != frozen.get(k.as_str())).collect();
    if !bad.is_empty() {
        return Err(format!("library differs on {bad:?}"));
    }
    Ok(format!("{} hand-derived values: oracle = fixture = library", keys.len()))
}

fn bin(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_inertia")).args(args).output().expect("binary runs");
    (o.status.code(), o.stdout)
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let (x1, x2) = (path("x1.hyp"), path("x2.hyp"));
    for x in [&x1, &x2] {
        let (code, _) = bin(&["gen", "--n", "4", "--field", "Fp:1000003", "--seed", "7", "--out", x]);
        if code != Some(0) {
            return Err(format!("gen exited {code:?}"));
        }
    }
    if std::fs::read(&x1).unwrap() != std::fs::read(&x2).unwrap() {
        return Err("gen output differs between runs".into());
    }
    let running = path("running.hyp");
    std::fs::write(&running, "{\"n_plus_1\": 2, \"field\": \"Q\", \"terms\": [{\"exps\": [2, 2], \"coeff\": \"1\"}, {\"exps\": [1, 0], \"coeff\": \"1\"}, {\"exps\": [0, 1], \"coeff\": \"1\"}]}").unwrap();
    let runs: [(&[&str], i32); 5] = [
        (&["apply", "--in", &running, "--word", "T1", "--point", "1,1"], 0),
        (&["certify-free", "--in", &x1, "--word", "R1 R2", "--trials", "50", "--seed", "1"], 0),
        (&["certify-inertia", "--in", &x1, "--trials", "50", "--seed", "2"], 0),
        (&["uc-check", "--in", &x1, "--word", "I1 I3 I3 I1", "--seed", "3"], 0),
        (&["certify-inertia", "--in", &x1, "--axis", "1", "--trials", "50", "--seed", "2", "--corrupt-rho"], 1),
    ];
    for (args, want) in runs {
        let (c1, o1) = bin(args);
        let (c2, o2) = bin(args);
        if o1 != o2 || c1 != c2 {
            return Err(format!("{} not reproducible", args[0]));
        }
        if c1 != Some(want) {
            return Err(format!("{args:?} exited {c1:?}, expected {want}"));
        }
    }
    let (_, apply) = bin(runs[0].0);
    if String::from_utf8_lossy(&apply).trim() != "(-2, 1)" {
        return Err("apply T1 at (1,1) did not print (-2, 1)".into());
    }
    Ok("gen/apply/certify byte-identical across runs; exit codes 0 and 1 (corrupted rho) as contracted".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("involution identities", criterion_1),
        ("inertia", criterion_2),
        ("covering involution", criterion_3),
        ("infinite order", criterion_4),
        ("freeness", criterion_5),
        ("universal Coxeter oracle", criterion_6),
        ("hand-derived fixtures", criterion_7),
        ("CLI reproducibility", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg} [{t:.2?}]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg} [{t:.2?}]", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
