use std::process::{Command, Output};
use std::time::{Duration, Instant};

use heisenspec::butterfly::{bands, gcd};
use heisenspec::charpoly::{brute_force_charpoly, charpoly_coeffs};
use heisenspec::eigen::{check_lemma_2_2, check_lemma_2_3, dense_spectrum, path_matrix, path_spectrum, symmetric_eigenvalues, SymMatrix};
use heisenspec::group::{moment_to_f64, return_moments, verify_moment_transfer, Moment};
use heisenspec::measure::{cheb_filter, edge_bound_report, finite_measure, DESK_GUARD};
use heisenspec::reps::{harper_matrix, is_prime};
use heisenspec::Result;

const BIN: &str = env!("CARGO_BIN_EXE_heisenspec");

type Verdict = Result<(bool, String)>;

fn primes(lo: usize, hi: usize) -> impl Iterator<Item = usize> {
    (lo..=hi).filter(|&n| is_prime(n as u64))
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("HEISENSPEC_N0")
        .env_remove("HEISENSPEC_DESK_GUARD")
        .output()
        .expect("spawn heisenspec")
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn edge_slope() -> Verdict {
    let start = Instant::now();
    let out = run_cli(&["maxeig", "--n", "1000"]);
    let elapsed = start.elapsed();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_default();
    let Some(slope) = doc["gap_times_n"].as_f64() else {
        return Ok((false, format!("exit {:?}, no gap_times_n", out.status.code())));
    };
    let ok = out.status.success() && (6.2..=6.4).contains(&slope) && elapsed < Duration::from_secs(30);
    Ok((ok, format!("(4 - lambda) n = {slope:.6} in {}", secs(elapsed))))
}

fn lemma_2_2_sweep() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in primes(53, 499) {
        if !check_lemma_2_2(n, 53)?.passed() {
            bad.push(n);
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(300);
    Ok((ok, format!("primes 53..499, failing {bad:?}, {}", secs(elapsed))))
}

fn lemma_2_3_sweep() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in primes(53, 199) {
        if !check_lemma_2_3(n, 53)?.ok {
            bad.push(n);
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(600);
    Ok((ok, format!("primes 53..199, failing {bad:?}, {}", secs(elapsed))))
}

fn matching_oracle() -> Verdict {
    let mut worst = 0.0f64;
    for n in 3..=12 {
        for q in 1..n {
            let a = charpoly_coeffs(n, q)?;
            let b = brute_force_charpoly(n, q)?;
            if a.len() != b.len() {
                return Ok((false, format!("degree mismatch at n={n} q={q}")));
            }
            for (x, y) in a.iter().zip(&b) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    let p31 = charpoly_coeffs(3, 1)?;
    let exact31 = p31.len() == 4 && p31.iter().zip([-4.0, -6.0, 0.0, 1.0]).all(|(a, b)| (a - b).abs() <= 1e-9);
    let r3 = 3f64.sqrt();
    let roots = [-2.0, 1.0 - r3, 1.0 + r3];
    let eig = symmetric_eigenvalues(&SymMatrix::from(&harper_matrix(3, 1)?))?;
    let root_err = eig.iter().zip(roots).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let ok = worst <= 1e-9 && exact31 && root_err <= 1e-10;
    Ok((ok, format!("worst coefficient diff {worst:.3e}, P_3,1 = x^3 - 6x - 4 {exact31}, root diff {root_err:.3e}")))
}

fn moment_exactness() -> Verdict {
    let mut exact = true;
    for n in 3..=8 {
        exact &= verify_moment_transfer(n)?;
    }
    let mut worst = 0.0f64;
    for p in [17u64, 101] {
        let m = finite_measure(p)?;
        let dp = return_moments(12, Some(p as u32))?;
        for (k, e) in dp.iter().enumerate() {
            worst = worst.max((m.moment(k) - moment_to_f64(e)).abs());
        }
    }
    let inf = return_moments(9, None)?;
    let anchors = inf[2] == Moment::new(1, 4)
        && inf[4] == Moment::new(7, 64)
        && inf.iter().skip(1).step_by(2).all(|m| *m == Moment::from_integer(0));
    let ok = exact && worst <= 1e-10 && anchors;
    Ok((ok, format!("rational transfer {exact}, spectral diff {worst:.3e}, anchors {anchors}")))
}

fn path_oracle() -> Verdict {
    let mut worst = 0.0f64;
    for m in 1..=60 {
        let spec = dense_spectrum(&path_matrix(m))?;
        for (a, b) in spec.eigenvalues.iter().zip(path_spectrum(m)) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok((worst <= 1e-10, format!("m <= 60, worst {worst:.3e}")))
}

fn butterfly_closed_form() -> Verdict {
    let (s3, s6) = (3f64.sqrt(), 6f64.sqrt());
    let expected = [(-s6, -2.0), (1.0 - s3, 0.0), (s6, 1.0 + s3)];
    let got = bands(3, 1)?;
    let worst = got
        .iter()
        .zip(expected)
        .map(|(b, (lo, hi))| (b.lower - lo).abs().max((b.upper - hi).abs()))
        .fold(0.0, f64::max);
    let mut missing = Vec::new();
    for n in (4..=20).step_by(2) {
        for q in (1..n).filter(|&q| gcd(n, q) == 1) {
            let b = bands(n, q)?;
            if b[n / 2 - 1].upper.abs() > 1e-9 || b[n / 2].lower.abs() > 1e-9 {
                missing.push(format!("{q}/{n}"));
            }
        }
    }
    let ok = worst <= 1e-9 && missing.is_empty();
    Ok((ok, format!("n=3 worst {worst:.3e}, no common vertex 0 at [{}]", missing.join(","))))
}

fn edge_chain() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [8, 10, 12] {
        for alpha in [0.3, 0.5] {
            let start = Instant::now();
            let r = edge_bound_report(n, alpha, DESK_GUARD)?;
            let elapsed = start.elapsed();
            ok &= r.chain_ok && r.counting_ok && elapsed < Duration::from_secs(300);
            parts.push(format!(
                "n={n} a={alpha}: upper {} lower {} transfer {} counting {} ({:.3e} vs {:.3e}) {}",
                r.upper_ok,
                r.lower_ok,
                r.transfer_ok,
                r.counting_ok,
                r.mu_edge,
                r.counting_bound,
                secs(elapsed)
            ));
        }
    }
    Ok((ok, parts.join("; ")))
}

fn filter_conditions() -> Verdict {
    let mut endpoints = true;
    let mut sup = 0.0f64;
    for n in [16, 32, 64] {
        let f = cheb_filter(n, 0.5)?;
        endpoints &= f.eval(1.0) == 1.0 && f.eval(-1.0) == 1.0;
        sup = sup.max(f.sup_abs(1.0, 10_000));
    }
    let interior = cheb_filter(64, 0.5)?.interior_sup(10_000);
    let ok = endpoints && sup <= 1.0 + 1e-12 && interior <= 1e-6;
    Ok((ok, format!("P(+-1) = 1 {endpoints}, sup {sup:.15}, n=64 interior sup {interior:.4e} vs 1e-6")))
}

const DETERMINISM_RUNS: &[&[&str]] = &[
    &["irreps", "--n", "7"],
    &["maxeig", "--n", "101", "--all-q"],
    &["bounds", "--lemma", "2.2", "--nmin", "53", "--nmax", "149"],
    &["bounds", "--lemma", "2.3", "--nmin", "53", "--nmax", "89"],
    &["charpoly", "--n", "7", "--q", "2", "--expand"],
    &["charpoly", "--n", "500", "--q", "3", "--eval", "0.25"],
    &["butterfly", "--max-denominator", "12"],
    &["moments", "--k", "10", "--modulus", "17", "--format", "csv"],
    &["moments", "--k", "10"],
    &["measure", "--modulus", "101", "--edges", "0.01,0.1,0.5"],
    &["chebfilter", "--n", "16", "--alpha", "0.5"],
    &["theorem43", "--n", "8", "--alpha", "0.3"],
    &["verify", "--level", "quick"],
];

fn determinism() -> Verdict {
    let mut differing = Vec::new();
    for args in DETERMINISM_RUNS {
        let a = run_cli(args);
        let b = run_cli(args);
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() || a.stdout.is_empty() {
            differing.push(args[0]);
        }
    }
    let dir = std::env::temp_dir().join(format!("heisenspec-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let svgs: Vec<Vec<u8>> = ["a.svg", "b.svg"]
        .iter()
        .map(|name| {
            let path = dir.join(name);
            run_cli(&["butterfly", "--max-denominator", "8", "--svg", path.to_str().unwrap()]);
            std::fs::read(&path).unwrap_or_default()
        })
        .collect();
    let _ = std::fs::remove_dir_all(&dir);
    if svgs[0] != svgs[1] || svgs[0].is_empty() {
        differing.push("butterfly --svg");
    }
    let ok = differing.is_empty();
    Ok((ok, format!("{} runs compared, differing {differing:?}", DETERMINISM_RUNS.len() + 1)))
}

const CRITERIA: &[(&str, fn() -> Verdict)] = &[
    ("edge slope at n=1000", edge_slope),
    ("top eigenvalue envelope", lemma_2_2_sweep),
    ("maximum over q envelope", lemma_2_3_sweep),
    ("matching polynomial oracle", matching_oracle),
    ("return moment exactness", moment_exactness),
    ("path matrix oracle", path_oracle),
    ("butterfly closed form and common vertex", butterfly_closed_form),
    ("edge bound chain and counting", edge_chain),
    ("filter conditions", filter_conditions),
    ("cli determinism", determinism),
];

fn main() {
    let mut failed = Vec::new();
    for (i, (name, check)) in CRITERIA.iter().enumerate() {
        let (ok, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        println!("{} criterion {} {name}: {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
        if !ok {
            failed.push(i + 1);
        }
    }
    println!("{} criteria, {} passed, {} failed", CRITERIA.len(), CRITERIA.len() - failed.len(), failed.len());
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
