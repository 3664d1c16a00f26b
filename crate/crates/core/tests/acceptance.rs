//! Acceptance suite. Runs every criterion once, prints one line per criterion
//! and exits non-zero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rwhopf::bar_tor::{analytic_tor, bar_size_for_tor, build_bar, edge_hom, tor_dims, PresentedAlgebra};
use rwhopf::divided_power::{a1_verschiebung_report, make_a1, make_an};
use rwhopf::hopf::{check_axioms, check_axioms_with, CheckOptions, StructuredHopf};
use rwhopf::rw_model::{
    eq46_check, hmu_prime_series, induction_grid, induction_region, k_series, prop39_4_check, r_prime_series,
    TorRoute, DEFAULT_BAR_CAP,
};
use rwhopf::series::{partition_generating_series, partitions};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// ---------------------------------------------------------------------------
// independent oracles

/// Every partition of `n`, listed explicitly as non-increasing part sequences.
fn enumerate_partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Truncated polynomial product on `i128` coefficients.
fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(1 − α^d)^{−1}` as a geometric series.
fn geometric(n: usize, d: usize) -> Vec<i128> {
    (0..=n).map(|i| (i % d == 0) as i128).collect()
}

/// `1 + α^d`.
fn exterior(n: usize, d: usize) -> Vec<i128> {
    let mut v = vec![0i128; n + 1];
    v[0] = 1;
    if d <= n {
        v[d] += 1;
    }
    v
}

fn oracle_partition(m: i64) -> usize {
    if m < 0 {
        0
    } else {
        enumerate_partitions(m as u32).len()
    }
}

/// `∏_{k+m>0, k+m ≤ N/scale} f(scale·(k+m))^{p(m)}` by repeated multiplication.
fn oracle_product(k: i64, n: usize, scale: usize, f: fn(usize, usize) -> Vec<i128>) -> Vec<i128> {
    let mut acc = vec![0i128; n + 1];
    acc[0] = 1;
    for d in 1..=n / scale {
        for _ in 0..oracle_partition(d as i64 - k) {
            acc = poly_mul(&acc, &f(n, scale * d));
        }
    }
    acc
}

fn series_coeffs(s: &rwhopf::series::TruncSeries) -> Vec<i128> {
    s.coeffs().iter().map(|c| i128::try_from(c).expect("fits i128")).collect()
}

// ---------------------------------------------------------------------------
// criteria

fn partition_oracle() -> Outcome {
    let gen = partition_generating_series(30);
    let mut product = vec![0i128; 31];
    product[0] = 1;
    for m in 1..=30 {
        product = poly_mul(&product, &geometric(30, m));
    }
    for n in 0..=30u32 {
        let brute = enumerate_partitions(n).len();
        let p = partitions(n as usize);
        if p != BigInt::from(brute) || gen.coeff(n as usize) != p || product[n as usize] != brute as i128 {
            return outcome(false, format!("mismatch at n={n}: p={p}, enumeration={brute}"));
        }
    }
    outcome(true, "p(0..=30) equals enumeration and the product expansion")
}

fn eq46_identity() -> Outcome {
    for k in -4..=8 {
        let n = 20;
        let r = oracle_product(k, n, 1, geometric);
        let h = oracle_product(k, n, 2, geometric);
        let kk = oracle_product(k, n, 1, exterior);
        if series_coeffs(&r_prime_series(k, n)) != r
            || series_coeffs(&hmu_prime_series(k, n)) != h
            || series_coeffs(&k_series(k, n)) != kk
        {
            return outcome(false, format!("k={k}: library series differ from expansion"));
        }
        if poly_mul(&kk, &h) != r || !eq46_check(k, n) {
            return outcome(false, format!("k={k}: K·H ≠ R"));
        }
    }
    outcome(true, "13 values of k at N=20")
}

fn tor_equals_k_series() -> Outcome {
    let n = 16;
    for k in -3..=6i64 {
        // Tor of a free algebra is exterior on one class of total degree |g|+1
        // per generator g; each torus rank adds a class of total degree 1
        let mut tor = vec![0i128; n + 1];
        tor[0] = 1;
        for d in 1..n {
            for _ in 0..oracle_partition(d as i64 - k) {
                tor = poly_mul(&tor, &exterior(n, d + 1));
            }
        }
        for _ in 0..oracle_partition(-k) {
            tor = poly_mul(&tor, &exterior(n, 1));
        }
        let next = oracle_product(k + 1, n, 1, exterior);
        if tor != next || !prop39_4_check(k, n) {
            return outcome(false, format!("k={k}: total Tor series ≠ K^(2(k+1))"));
        }
    }
    outcome(true, "10 values of k at N=16")
}

/// Largest bar complex, in words, built for one randomized instance.
const RANDOM_BAR_CAP: u128 = 1_500_000;

fn bar_oracle() -> Outcome {
    let mut cases: Vec<(Vec<usize>, usize, usize, usize)> = Vec::new();
    for a in 1..=5 {
        cases.push((vec![a], 0, 4, 12));
        for b in a..=5 {
            cases.push((vec![a, b], 0, 4, 12));
        }
    }
    let exhaustive = cases.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut shrunk = 0;
    for _ in 0..60 {
        let count = rng.gen_range(1..=4);
        let gens: Vec<usize> = (0..count).map(|_| rng.gen_range(1..=5)).collect();
        let torus = rng.gen_range(0..=2);
        let s = rng.gen_range(1..=4);
        let mut n = 12;
        loop {
            let a = PresentedAlgebra::new(gens.iter().copied().filter(|&g| g <= n).collect(), torus, n).unwrap();
            if bar_size_for_tor(&a, s, n) <= RANDOM_BAR_CAP {
                break;
            }
            n -= 1;
        }
        shrunk += (n < 12) as usize;
        cases.push((gens, torus, s, n));
    }
    for (gens, torus, s, n) in &cases {
        let a = PresentedAlgebra::new(gens.iter().copied().filter(|g| g <= n).collect(), *torus, *n).unwrap();
        let computed = tor_dims(&a, *s, *n).unwrap();
        let expected = analytic_tor(&a, *s, *n);
        for ss in 0..=*s {
            for t in 0..=*n {
                if computed.get(ss, t) != expected.get(ss, t) {
                    return outcome(
                        false,
                        format!("generators {gens:?} torus {torus} S={s} N={n}: Tor_({ss},{t}) bar {} vs formula {}",
                            computed.get(ss, t), expected.get(ss, t)),
                    );
                }
            }
        }
    }
    let bar = build_bar(&PresentedAlgebra::new(vec![1, 2, 3], 0, 7).unwrap(), 4, 7).unwrap();
    if bar.check_d_squared().is_err() {
        return outcome(false, "d∘d ≠ 0");
    }
    outcome(
        true,
        format!("{exhaustive} single/two-generator cases at S=4 N=12, 60 random ({shrunk} with N lowered to fit {RANDOM_BAR_CAP} words)"),
    )
}

fn induction_grid_consistent() -> Outcome {
    let cells = induction_region(1, 6);
    let reports = match induction_grid(&cells, 16, Some(DEFAULT_BAR_CAP)) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let confirmed = reports.iter().filter(|r| r.route == TorRoute::AnalyticAndBar).count();
    for r in &reports {
        let exact = r.k_next_dim as i128 - r.higher_tor_sum as i128 - r.tor0_dim as i128 == r.tor1_dim as i128;
        if !r.consistent || !exact {
            return outcome(false, format!("m={} k={} ell={}: {:?}", r.m, r.k, r.ell, r));
        }
    }
    outcome(
        true,
        format!("{} cells at N=16, {confirmed} confirmed by bar homology", reports.len()),
    )
}

fn verschiebung_a1() -> Outcome {
    for k in 1..=3 {
        let n = 24;
        let r = match a1_verschiebung_report(k, n) {
            Ok(r) => r,
            Err(e) => return outcome(false, e.to_string()),
        };
        if !r.holds() {
            return outcome(false, format!("k={k}: {r:?}"));
        }
        // the diagonal of Δβ_n is β_{n/2}⊗β_{n/2} for even n and empty for odd n
        let h = make_a1(k, n).into_hopf();
        for i in 0..=n / k {
            let diag: Vec<usize> = h.coproduct_basis(i).iter().filter(|(a, b)| a == b).map(|p| p.0).collect();
            let want: Vec<usize> = if i % 2 == 0 { vec![i / 2] } else { vec![] };
            if diag != want {
                return outcome(false, format!("k={k}: diagonal of Δβ_{i} is {diag:?}"));
            }
        }
    }
    outcome(true, "k ∈ {1,2,3}, N=24: halving, odd vanishing, surjective, bialgebra map")
}

/// Flips every structure constant position of `h` once and reports the first
/// mutation that passes the axiom check.
fn undetected_mutation(h: &StructuredHopf) -> Option<String> {
    let n = h.trunc_degree();
    let len = h.basis_len();
    let detected = |m: &StructuredHopf, touched: &[usize]| {
        let scoped = CheckOptions {
            stop_at_first: true,
            involving: Some(touched.iter().copied().collect::<BTreeSet<_>>()),
        };
        !check_axioms_with(m, &scoped).is_ok()
            || !check_axioms_with(
                m,
                &CheckOptions {
                    stop_at_first: true,
                    involving: None,
                },
            )
            .is_ok()
    };
    let mut m = h.clone();
    for i in 0..len {
        for j in 0..len {
            let d = h.degree(i) + h.degree(j);
            if d > n {
                continue;
            }
            for k in h.basis_in_degree(d) {
                m.toggle_product_term(i, j, k);
                let caught = detected(&m, &[i, j, k]);
                m.toggle_product_term(i, j, k);
                if !caught {
                    return Some(format!("product {}·{} ∋ {}", h.label(i), h.label(j), h.label(k)));
                }
                m.toggle_coproduct_term(k, i, j);
                let caught = detected(&m, &[i, j, k]);
                m.toggle_coproduct_term(k, i, j);
                if !caught {
                    return Some(format!("coproduct {} ∋ {}⊗{}", h.label(k), h.label(i), h.label(j)));
                }
            }
        }
        m.toggle_counit(i);
        let caught = detected(&m, &[i]);
        m.toggle_counit(i);
        if !caught {
            return Some(format!("counit at {}", h.label(i)));
        }
    }
    None
}

fn axiom_suite() -> Outcome {
    let mut structures = Vec::new();
    for k in 1..=3 {
        structures.push((format!("A^1({k})"), make_a1(k, 16).into_hopf()));
        structures.push((format!("A^2({k})"), make_an(k, 2, 16)));
    }
    let mut mutations = 0usize;
    for (name, h) in &structures {
        let report = check_axioms(h);
        if !report.is_ok() {
            return outcome(false, format!("{name} fails {:?}", report.failed_axioms()));
        }
        if let Some(m) = undetected_mutation(h) {
            return outcome(false, format!("{name}: undetected mutation {m}"));
        }
        let len = h.basis_len();
        mutations += len;
        for i in 0..len {
            for j in 0..len {
                let d = h.degree(i) + h.degree(j);
                if d <= h.trunc_degree() {
                    mutations += 2 * h.basis_in_degree(d).len();
                }
            }
        }
    }
    outcome(true, format!("6 structures at N=16 pass, all {mutations} single-term mutations detected"))
}

fn edge_monomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for trial in 0..20 {
        let count = rng.gen_range(1..=4);
        let gens: Vec<usize> = (0..count).map(|_| rng.gen_range(1..=5)).collect();
        let ell = gens[rng.gen_range(0..count)];
        let n = 10;
        let a = PresentedAlgebra::new(gens.clone(), 0, n).unwrap();
        let e = match edge_hom(&a, ell) {
            Ok(e) => e,
            Err(err) => return outcome(false, format!("trial {trial}: {err}")),
        };
        let q_expected = gens.iter().filter(|&&g| g == ell).count();
        if e.q_dim != q_expected || !e.is_injective() {
            return outcome(
                false,
                format!("trial {trial} generators {gens:?} ℓ={ell}: dim Q={} rank={}", e.q_dim, e.rank()),
            );
        }
    }
    for d in 1..=5 {
        let a = PresentedAlgebra::new(vec![d], 0, 2 * d).unwrap();
        let bar = build_bar(&a, 2, 2 * d).unwrap();
        let square = edge_hom(&a, 2 * d).unwrap();
        let single = edge_hom(&a, d).unwrap();
        let sq_image = square.image_of_monomial(bar.monomials(), &[2]).unwrap();
        let x_image = single.image_of_monomial(bar.monomials(), &[1]).unwrap();
        if !sq_image.is_zero() || x_image.is_zero() {
            return outcome(false, format!("|x|={d}: x² or x maps incorrectly"));
        }
    }
    outcome(true, "20 random algebras injective; x² ↦ 0 for |x| = 1..5")
}

fn cli_determinism() -> Outcome {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_rwhopf"))
            .args(["report-all", "--output", "json", "--jobs", jobs])
            .output()
            .expect("binary runs")
    };
    let one = run("1");
    let eight = run("8");
    if !one.status.success() || !eight.status.success() {
        return outcome(false, format!("exit codes {:?} / {:?}", one.status.code(), eight.status.code()));
    }
    if one.stdout != eight.stdout {
        return outcome(false, "JSON differs between --jobs 1 and --jobs 8");
    }
    outcome(true, format!("{} identical bytes", one.stdout.len()))
}

/// Number, name, time limit and check.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "partition oracle", Duration::from_secs(1), partition_oracle),
        (2, "K·H_*(MU)′ = R′", Duration::from_secs(1), eq46_identity),
        (3, "total Tor = K^(2(k+1))", Duration::from_secs(1), tor_equals_k_series),
        (4, "bar homology = exterior formula", Duration::from_secs(60), bar_oracle),
        (5, "induction grid", Duration::from_secs(120), induction_grid_consistent),
        (6, "Verschiebung on A^1(k)", Duration::from_secs(5), verschiebung_a1),
        (7, "Hopf axioms and mutations", Duration::from_secs(30), axiom_suite),
        (8, "edge monomorphism", Duration::from_secs(30), edge_monomorphism),
        (9, "report-all determinism", Duration::from_secs(180), cli_determinism),
    ];
    let mut failures = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let o = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = o.pass && in_time;
        failures += (!pass) as usize;
        println!(
            "criterion {id} [{}] {name}: {} ({:.2}s, limit {}s{})",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", over time" }
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
