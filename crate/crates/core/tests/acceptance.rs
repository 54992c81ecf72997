//! Acceptance battery: one line per criterion, nonzero exit if any fails.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ferromem::bounds::{self, CodeSetting, ContourGrid, Sizing};
use ferromem::divdiff::{self, divided_difference, divided_difference_bound};
use ferromem::linalg::{self, DenseState};
use ferromem::sim::{self, CorrectableSpace, LocalField, Recovery};
use ferromem::spectrum::SpectralModel;
use ferromem::verify::{self, Suite, VerifyConfig};

const SEED: u64 = 0x5eed_2019;

struct Outcome {
    id: &'static str,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn spectrum_exactness() -> Outcome {
    let start = Instant::now();
    let mut bad_sums = 0;
    for n in 1..=14u64 {
        let m = SpectralModel::new(n, 1.0).unwrap();
        let total: BigUint = (0..m.n_levels()).map(|j| m.multiplicity(j).unwrap()).sum();
        if total != BigUint::from(1u32) << n {
            bad_sums += 1;
        }
    }
    let exchange = 1.3;
    let mut worst = 0.0f64;
    let mut bad_mult = 0;
    for n in 1..=10usize {
        let h = sim::build_heisenberg(n, exchange).unwrap();
        let imag = h.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert_eq!(imag, 0.0, "Heisenberg matrix is real");
        let ev = linalg::symmetric_eigenvalues(&h.map(|z| z.re));
        let model = SpectralModel::new(n as u64, exchange).unwrap();
        let levels = model.eigenvalues();
        let mut counts = vec![0u64; levels.len()];
        for e in ev {
            let (k, d) = levels
                .iter()
                .enumerate()
                .map(|(k, l)| (k, (e - l).abs()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            worst = worst.max(d / (exchange * (n * n) as f64));
            counts[k] += 1;
        }
        for (j, c) in counts.iter().enumerate() {
            if BigUint::from(*c) != model.multiplicity(j).unwrap() {
                bad_mult += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: "1",
        name: "spectrum exactness",
        pass: bad_sums == 0 && bad_mult == 0 && worst <= 1e-9 && elapsed < Duration::from_secs(30),
        detail: format!(
            "sum mismatches {bad_sums}, multiplicity mismatches {bad_mult}, max |dev|/(J n^2) {worst:.2e} <= 1e-9, {:.1} s < 30 s",
            elapsed.as_secs_f64()
        ),
    }
}

fn random_multiset(r: &mut ChaCha8Rng) -> Vec<f64> {
    let len = r.random_range(1..=8usize);
    let mut pool: Vec<f64> = Vec::new();
    (0..len)
        .map(|_| {
            if !pool.is_empty() && r.random_bool(0.35) {
                pool[r.random_range(0..pool.len())]
            } else {
                let v = r.random_range(0.0..10.0);
                pool.push(v);
                v
            }
        })
        .collect()
}

fn divided_differences() -> Outcome {
    let mut r = rng(2);
    let mut worst_rel = 0.0f64;
    let mut worst_perm = 0.0f64;
    for _ in 0..500 {
        let mut values = random_multiset(&mut r);
        let tau = r.random_range(0.05..2.0);
        let got = divided_difference(&values, tau).unwrap();
        let (re, im) = common::divided_difference_oracle(&values, tau);
        let want = Complex64::new(re, im);
        worst_rel = worst_rel.max((got - want).norm() / want.norm());
        for i in (1..values.len()).rev() {
            let j = r.random_range(0..=i);
            values.swap(i, j);
        }
        let permuted = divided_difference(&values, tau).unwrap();
        worst_perm = worst_perm.max((permuted - got).norm() / got.norm());
    }
    let mut worst_conf = 0.0f64;
    for k in 1..=8 {
        for &y in &[0.0, 3.5, 90.0] {
            let tau = 1.7;
            let v = divided_difference(&vec![y; k], tau).unwrap();
            let m = divdiff::confluent_magnitude(k, tau);
            let factorial: f64 = (1..k).map(|x| x as f64).product();
            worst_conf = worst_conf.max((v.norm() - tau.powi(k as i32 - 1) / factorial).abs() / m);
        }
    }
    Outcome {
        id: "2",
        name: "divided differences",
        pass: worst_rel <= 1e-8 && worst_perm <= 1e-12 && worst_conf <= 1e-12,
        detail: format!(
            "vs 120-digit oracle {worst_rel:.2e} <= 1e-8, permutation {worst_perm:.2e} <= 1e-12, identical-argument {worst_conf:.2e}"
        ),
    }
}

fn bound_dominance() -> Outcome {
    let mut r = rng(3);
    let mut violations = 0;
    let mut tightest = 0.0f64;
    for _ in 0..1000 {
        let args = verify::random_level_multiset(&mut r, 6).unwrap();
        let exact = args.exact().norm();
        let bound = divided_difference_bound(&args);
        tightest = tightest.max(exact / bound);
        if exact > bound * (1.0 + 1e-12) {
            violations += 1;
        }
    }
    Outcome {
        id: "3",
        name: "bound dominance",
        pass: violations == 0,
        detail: format!("1000 multisets (n <= 20, order <= 6), {violations} violations, max |g|/bound {tightest:.6}"),
    }
}

fn frechet_davis() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    let exchange = 1.0;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut fd1 = 0.0f64;
    let mut fd2 = 0.0f64;
    for i in 0..20 {
        let n = 2 + i % 2;
        let strength = r.random_range(0.005..0.1) * exchange;
        let field = verify::random_field(&mut r, n, strength);
        let tau = r.random_range(0.1..2.0);
        worst_excess = worst_excess.max(verify::remainder_ratio(n, exchange, &field, tau).unwrap());
        let (a, b) = verify::davis_vs_finite_difference(n, exchange, &field, tau).unwrap();
        fd1 = fd1.max(a);
        fd2 = fd2.max(b);
    }
    let elapsed = start.elapsed();
    Outcome {
        id: "4",
        name: "Frechet/Davis",
        pass: worst_excess <= 1e-13 && fd1 <= 1e-6 && fd2 <= 1e-4 && elapsed < Duration::from_secs(120),
        detail: format!(
            "max(||R_t|| - DR bound) {worst_excess:.2e} (roundoff floor 1e-13), FD order 1 {fd1:.2e} <= 1e-6, order 2 {fd2:.2e} <= 1e-4, {:.1} s",
            elapsed.as_secs_f64()
        ),
    }
}

fn repetition_baseline() -> Outcome {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for n in [3usize, 5] {
        for _ in 0..50 {
            let z: Vec<f64> = (0..n).map(|_| r.random_range(-0.2..0.2)).collect();
            let tau = r.random_range(0.1..10.0);
            let e = sim::repetition_storage_error(&LocalField::dephasing(&z).unwrap(), tau, 1.0).unwrap();
            let theta: f64 = z.iter().sum::<f64>() * tau;
            worst = worst.max((e - theta.sin().abs()).abs());
        }
    }
    Outcome {
        id: "5",
        name: "repetition baseline",
        pass: worst <= 1e-8,
        detail: format!("n = 3, 5 x 50 draws, max |eps - |sin theta|| {worst:.2e} <= 1e-8"),
    }
}

/// Dense `||M_j||_1` and the dense entangled storage error for one evolution.
fn dense_block_check(code: &[sim::Codeword], t: usize, evolved: &[DenseState]) -> (Vec<f64>, Vec<f64>, f64) {
    let recovery = Recovery::projective(code, t).unwrap();
    let space = CorrectableSpace::new(code, t).unwrap();
    let b: Vec<f64> = evolved.iter().map(|v| space.residual_norm(v)).collect();
    let images: Vec<Vec<DenseState>> = evolved.iter().map(|v| recovery.images(v)).collect();
    let m: Vec<f64> = code
        .iter()
        .zip(&images)
        .map(|(c, imgs)| {
            let mut op = linalg::outer(&c.state, &c.state);
            for v in imgs {
                op -= linalg::outer(v, v);
            }
            linalg::trace_norm(&op)
        })
        .collect();
    let reference: Vec<DenseState> = code.iter().map(|c| c.state.clone()).collect();
    let psi = sim::entangle(&reference);
    let mut diff = linalg::outer(&psi, &psi);
    for k in 0..images[0].len() {
        let parts: Vec<DenseState> = images.iter().map(|imgs| imgs[k].clone()).collect();
        let w = sim::entangle(&parts);
        diff -= linalg::outer(&w, &w);
    }
    (b, m, 0.5 * linalg::trace_norm(&diff))
}

fn gersgorin() -> Outcome {
    let codes = verify::small_codes().unwrap();
    let mut r = rng(6);
    let mut violations = 0;
    let mut channel_violations = 0;
    let mut small = 0;
    let mut boundary_b = 0.0;
    for i in 0..100 {
        let (_, code, t) = &codes[i % codes.len()];
        let n = sim::code_qubits(code).unwrap();
        let exchange = r.random_range(0.5..2.0);
        let tau = r.random_range(0.2..2.0);
        let strength = 10f64.powf(r.random_range(-4.0..-1.5));
        let mut field = verify::random_field(&mut r, n, strength);
        if i == 0 {
            field = verify::field_for_target_b(code, *t, exchange, &field, tau, 0.01).unwrap();
        }
        let evolved = verify::evolve_code(code, exchange, &field, tau).unwrap();
        let (b, m, eps) = dense_block_check(code, *t, &evolved);
        if i == 0 {
            boundary_b = b.iter().copied().fold(0.0, f64::max);
        }
        for (bj, mj) in b.iter().zip(&m) {
            if *mj > bj * bj + bj + 1e-12 {
                violations += 1;
            }
        }
        if b.iter().all(|&x| x <= 0.01) {
            small += 1;
            let mean = b.iter().sum::<f64>() / b.len() as f64;
            if eps > 1.01 * mean + 1e-14 {
                channel_violations += 1;
            }
        }
    }
    Outcome {
        id: "6",
        name: "Gersgorin inequality",
        pass: violations == 0 && channel_violations == 0 && (boundary_b - 0.01f64).abs() < 1e-9,
        detail: format!(
            "100 instances (n = 4, 6), {violations} block violations, {channel_violations}/{small} channel-bound violations, boundary max b = {boundary_b:.12}"
        ),
    }
}

fn case_studies() -> Outcome {
    let eps = 5e-4;
    let a = 4e-5;
    let small = CodeSetting::family(a, 12, 10.0).unwrap();
    let large = CodeSetting::family(a, 23, 1000.0).unwrap();
    let t1 = bounds::tau_lower_bound(&small, eps).unwrap();
    let t2 = bounds::tau_lower_bound(&large, eps).unwrap();
    let pass = small.n == 625
        && large.n == 2209
        && (t1 - 30.0).abs() <= 0.5 * 30.0
        && (t2 - 50.0).abs() <= 0.5 * 50.0;
    Outcome {
        id: "7",
        name: "case studies",
        pass,
        detail: format!(
            "J=10, t=12, n={}: tau >= {t1:.3} ns (30 +- 50%); J=1000, t=23, n={}: tau >= {t2:.3} ns (50 +- 50%)",
            small.n, large.n
        ),
    }
}

fn parse_opt(s: &str) -> Option<f64> {
    if s.is_empty() {
        None
    } else {
        Some(s.parse().unwrap())
    }
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
}

fn lifetime_rows() -> Vec<bounds::LifetimeRow> {
    let a_values = bounds::log_space(1e-6, 1e-2, 41).unwrap();
    bounds::lifetime_curve(10.0, 1e-4, &a_values, bounds::DEFAULT_T_RANGE).unwrap()
}

fn lifetime_enhancement() -> Outcome {
    let rows = lifetime_rows();
    let (peak_idx, peak) = rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.enhancement.map(|e| (i, e)))
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap();
    let first = rows.iter().position(|r| r.feasible()).unwrap();
    let last = rows.iter().rposition(|r| r.feasible()).unwrap();
    let interior = peak_idx > first && peak_idx < last;

    let mut golden_ok = true;
    let mut reader = csv::Reader::from_path(golden("lifetime_J10_eps1e-4.csv")).unwrap();
    let frozen: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    golden_ok &= frozen.len() == rows.len();
    for (rec, row) in frozen.iter().zip(&rows) {
        golden_ok &= rel_close(rec[0].parse().unwrap(), row.a);
        golden_ok &= rec[2].parse::<usize>().ok() == row.best_t;
        golden_ok &= match (parse_opt(&rec[6]), row.enhancement) {
            (Some(x), Some(y)) => rel_close(x, y),
            (None, None) => true,
            _ => false,
        };
    }
    Outcome {
        id: "8",
        name: "lifetime enhancement curve",
        pass: interior && (10.0..=40.0).contains(&peak) && golden_ok,
        detail: format!(
            "peak enhancement {peak:.3} at a = {:.3e} (t = {}, n = {}), interior {interior}, in [10, 40], golden match {golden_ok}",
            rows[peak_idx].a,
            rows[peak_idx].best_t.unwrap(),
            rows[peak_idx].n.unwrap()
        ),
    }
}

fn error_grid(sizing: Sizing) -> ContourGrid {
    let taus = bounds::lin_space(1.0, 100.0, 100).unwrap();
    let ts: Vec<usize> = (1..=25).collect();
    bounds::contour_grid(10.0, 4e-5, &taus, &ts, sizing).unwrap()
}

/// Number of adjacent valid pairs where the error bound decreases along `tau`,
/// and where it increases along `t`, with the first offending `t` step.
fn monotonicity(grid: &ContourGrid) -> (usize, usize, Option<(f64, usize)>) {
    let mut tau_bad = 0;
    let mut t_bad = 0;
    let mut first_t = None;
    for i in 0..grid.taus.len() {
        for k in 0..grid.ts.len() {
            let Some(v) = grid.cells[i][k] else { continue };
            // cells hold -log10(eps): eps nondecreasing in tau means cells nonincreasing.
            if i + 1 < grid.taus.len() {
                if let Some(up) = grid.cells[i + 1][k] {
                    if up > v {
                        tau_bad += 1;
                    }
                }
            }
            if k + 1 < grid.ts.len() {
                if let Some(right) = grid.cells[i][k + 1] {
                    if right < v {
                        t_bad += 1;
                        first_t.get_or_insert((grid.taus[i], grid.ts[k]));
                    }
                }
            }
        }
    }
    (tau_bad, t_bad, first_t)
}

fn contour_monotonicity() -> Vec<Outcome> {
    let grid = error_grid(Sizing::Family);
    let (tau_bad, t_bad, first_t) = monotonicity(&grid);

    let mut golden_ok = true;
    let mut reader = csv::Reader::from_path(golden("contour_J10_a4e-5.csv")).unwrap();
    let frozen: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    golden_ok &= frozen.len() == grid.taus.len() * grid.ts.len();
    for (idx, rec) in frozen.iter().enumerate() {
        let (i, k) = (idx / grid.ts.len(), idx % grid.ts.len());
        golden_ok &= rel_close(rec[0].parse().unwrap(), grid.taus[i]);
        golden_ok &= rec[1].parse::<usize>().unwrap() == grid.ts[k];
        golden_ok &= match (parse_opt(&rec[3]), grid.cells[i][k]) {
            (Some(x), Some(y)) => rel_close(x, y),
            (None, None) => true,
            _ => false,
        };
    }
    let valid = grid.cells.iter().flatten().filter(|c| c.is_some()).count();

    let fixed = error_grid(Sizing::Fixed(625));
    let (fixed_tau_bad, fixed_t_bad, _) = monotonicity(&fixed);

    let turning = first_t
        .map(|(tau, t)| format!("first increase at tau = {tau} ns, t = {t} -> {}", t + 1))
        .unwrap_or_default();
    vec![
        Outcome {
            id: "9a",
            name: "contour: eps nondecreasing in tau",
            pass: tau_bad == 0,
            detail: format!("n = (2t+1)^2, {valid} valid cells, {tau_bad} violations"),
        },
        Outcome {
            id: "9b",
            name: "contour: eps nonincreasing in t",
            pass: t_bad == 0,
            detail: format!(
                "n = (2t+1)^2: {t_bad} violations ({turning}); with n fixed at 625: {fixed_t_bad} t-violations, {fixed_tau_bad} tau-violations"
            ),
        },
        Outcome {
            id: "9c",
            name: "contour: golden grid",
            pass: golden_ok,
            detail: "J=10, a=4e-5, tau in [1,100] x 100, t in [1,25], relative 1e-9".into(),
        },
    ]
}

fn verify_battery() -> Outcome {
    let start = Instant::now();
    let config = VerifyConfig {
        seed: verify::DEFAULT_SEED,
        tolerance_scale: 1.0,
    };
    let first = verify::run(Suite::All, &config).unwrap();
    let elapsed = start.elapsed();
    let second = verify::run(Suite::All, &config).unwrap();
    let deterministic = first.checks == second.checks;
    Outcome {
        id: "10",
        name: "verify all",
        pass: first.passed() && deterministic && elapsed < Duration::from_secs(300),
        detail: format!(
            "{} checks, {} failed, {:.1} s < 300 s, identical rerun {deterministic}",
            first.checks.len(),
            first.failures().len(),
            elapsed.as_secs_f64()
        ),
    }
}

fn main() {
    let mut outcomes = vec![
        spectrum_exactness(),
        divided_differences(),
        bound_dominance(),
        frechet_davis(),
        repetition_baseline(),
        gersgorin(),
        case_studies(),
        lifetime_enhancement(),
    ];
    outcomes.extend(contour_monotonicity());
    outcomes.push(verify_battery());

    for o in &outcomes {
        println!(
            "criterion {:<3} {:<36} {}  {}",
            o.id,
            o.name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} passed, {} failed", outcomes.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
