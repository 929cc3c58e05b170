//! Acceptance suite. Runs without the libtest harness so that one PASS/FAIL
//! line per criterion is always printed; exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qmds_core::code::{k_subsets, CodeParams, QuantumMdsCode};
use qmds_core::entropy::checks::{
    check_decoding_condition, check_entropy_inequalities, product_state_checks,
};
use qmds_core::entropy::full_profile;
use qmds_core::gf::is_prime;
use qmds_core::sim::{
    decode, decode_target, encode_state, entropy_of_spectrum, fidelity, reduced_spectrum,
};
use qmds_core::SubsystemSpec;

const BIN: &str = env!("CARGO_BIN_EXE_qmds");

type Outcome = Result<String, String>;

/// Name, time limit and check.
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn reference_codes() -> Vec<QuantumMdsCode> {
    [(3, 1, 2, 3), (4, 2, 2, 5), (5, 1, 3, 5)]
        .into_iter()
        .map(|(n, k, d, q)| {
            QuantumMdsCode::construct(CodeParams::new(n, k, d, q).unwrap(), None).unwrap()
        })
        .collect()
}

fn subsystems(n: usize) -> impl Iterator<Item = SubsystemSpec> {
    (0..(1u64 << (n + 1))).map(move |e| SubsystemSpec::from_encoding(n, e).unwrap())
}

/// The size-only entropy formula, written out independently of the library.
fn formula(size: usize, k: usize, d: usize) -> usize {
    let total = 2 * (k + d - 1);
    if size <= total - size {
        size
    } else {
        total - size
    }
}

fn qmds(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn in_process(args: &[String]) -> i32 {
    let mut argv = vec!["qmds".to_string()];
    argv.extend(args.iter().cloned());
    qmds_cli::run(argv, &mut Vec::new(), &mut Vec::new())
}

fn figure_reproduction() -> Outcome {
    let (code, out) = qmds(&["figure", "--k", "1", "--d", "2"]);
    if code != 0 {
        return Err(format!("exit code {code}"));
    }
    let rows: Vec<(usize, usize)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let (s, h) = l.split_once(',').expect("two columns");
            (s.parse().unwrap(), h.parse().unwrap())
        })
        .collect();
    let want = vec![(0, 0), (1, 1), (2, 2), (3, 1), (4, 0)];
    if out.lines().next() != Some("size,entropy") || rows != want {
        return Err(format!("got {rows:?}"));
    }
    Ok(format!("{rows:?}"))
}

fn formula_exhaustive() -> Outcome {
    let mut counts = Vec::new();
    for code in reference_codes() {
        let p = code.params();
        let profile = full_profile(&code).map_err(|e| e.to_string())?;
        for e in profile.entries() {
            let want = formula(e.subsystem.size(p.k), p.k, p.d);
            if e.entropy != want {
                return Err(format!(
                    "{p} H{} = {}, formula {want}",
                    e.subsystem, e.entropy
                ));
            }
        }
        counts.push(format!("{p}: {}", profile.entries().len()));
    }
    if counts
        .iter()
        .zip([16, 32, 64])
        .any(|(c, n)| !c.ends_with(&format!(": {n}")))
    {
        return Err(format!("unexpected subsystem counts {counts:?}"));
    }
    Ok(counts.join(", "))
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    for code in reference_codes() {
        let p = code.params();
        let profile = full_profile(&code).map_err(|e| e.to_string())?;
        let psi = encode_state(&code).map_err(|e| e.to_string())?;
        for s in subsystems(p.n) {
            let regs = s.registers(p.k, p.n).unwrap();
            let spectrum = reduced_spectrum(&psi, &regs).map_err(|e| e.to_string())?;
            let numeric = entropy_of_spectrum(&spectrum, p.q as usize);
            let exact = profile.entropy(s.encoding()) as f64;
            let delta = (numeric - exact).abs();
            worst = worst.max(delta);
            checked += 1;
            if delta >= 1e-9 {
                return Err(format!("{p} H{s}: statevec {numeric}, lemma {exact}"));
            }
        }
    }
    Ok(format!("{checked} subsystems, max delta {worst:.3e}"))
}

fn decoding() -> Outcome {
    let mut patterns = 0;
    let mut lowest = 1.0f64;
    for code in reference_codes() {
        let p = code.params();
        let psi = encode_state(&code).map_err(|e| e.to_string())?;
        for erased in k_subsets(p.n, p.d - 1) {
            let surviving: Vec<usize> = (0..p.n)
                .filter(|i| !erased.contains(i))
                .map(|i| i + 1)
                .collect();
            let out = decode(&psi, &code, &surviving).map_err(|e| e.to_string())?;
            let target = decode_target(&code, &surviving).map_err(|e| e.to_string())?;
            let f = fidelity(&out, &target).map_err(|e| e.to_string())?;
            lowest = lowest.min(f);
            patterns += 1;
            if f < 1.0 - 1e-12 {
                return Err(format!("{p} surviving {surviving:?}: fidelity {f}"));
            }
        }
        let args = [
            "decode-test".to_string(),
            format!("--n={}", p.n),
            format!("--k={}", p.k),
            format!("--d={}", p.d),
            format!("--q={}", p.q),
            "--all".to_string(),
        ];
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (exit, _) = qmds(&args);
        if exit != 0 {
            return Err(format!("decode-test on {p} exited with {exit}"));
        }
    }
    Ok(format!("{patterns} patterns, lowest fidelity {lowest:.12}"))
}

fn proof_machinery() -> Outcome {
    let mut notes = Vec::new();
    for code in reference_codes() {
        let p = code.params();
        let start = Instant::now();
        let profile = full_profile(&code).map_err(|e| e.to_string())?;
        let mut summaries = check_decoding_condition(&profile);
        summaries.extend(product_state_checks(&profile));
        let inequalities = check_entropy_inequalities(&profile);
        let assignments = 4usize.pow(p.n as u32 + 1);
        if inequalities.iter().any(|s| s.checked != assignments) {
            return Err(format!(
                "{p}: inequality suite did not cover {assignments} assignments"
            ));
        }
        summaries.extend(inequalities);
        if let Some(s) = summaries.iter().find(|s| !s.passed() || s.checked == 0) {
            return Err(format!("{p}: {} {:?}", s.name, s.failures));
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(10) {
            return Err(format!("{p}: took {elapsed:?}"));
        }
        let total: usize = summaries.iter().map(|s| s.checked).sum();
        notes.push(format!("{p}: {total} checks"));
    }
    Ok(notes.join(", "))
}

fn ame() -> Outcome {
    let mut notes = Vec::new();
    for code in reference_codes().into_iter().filter(|c| c.params().k == 1) {
        let p = code.params();
        let profile = full_profile(&code).map_err(|e| e.to_string())?;
        let mut checked = 0;
        for s in subsystems(p.n) {
            let size = s.size(p.k);
            if size > p.n.div_ceil(2) {
                continue;
            }
            let h = profile.entropy(s.encoding());
            if h != size {
                return Err(format!("{p} H{s} = {h}, size {size}"));
            }
            checked += 1;
        }
        notes.push(format!("{p}: {checked} subsystems"));
    }
    if notes.len() != 2 {
        return Err("expected two k = 1 reference codes".into());
    }
    Ok(notes.join(", "))
}

fn flat_spectra() -> Outcome {
    let mut checked = 0;
    for code in reference_codes() {
        let p = code.params();
        let profile = full_profile(&code).map_err(|e| e.to_string())?;
        let psi = encode_state(&code).map_err(|e| e.to_string())?;
        for s in subsystems(p.n) {
            let h = profile.entropy(s.encoding());
            let level = (p.q as f64).powi(-(h as i32));
            let regs = s.registers(p.k, p.n).unwrap();
            let spectrum = reduced_spectrum(&psi, &regs).map_err(|e| e.to_string())?;
            let nonzero: Vec<f64> = spectrum.into_iter().filter(|&l| l > 1e-9).collect();
            if nonzero.len() != (p.q as usize).pow(h as u32) {
                return Err(format!(
                    "{p} {s}: {} nonzero eigenvalues, H = {h}",
                    nonzero.len()
                ));
            }
            if let Some(l) = nonzero.iter().find(|&&l| (l - level).abs() >= 1e-9) {
                return Err(format!("{p} {s}: eigenvalue {l}, expected {level}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} reduced states"))
}

fn constructor_rejects() -> Outcome {
    let mut rejected = 0;
    let mut accepted = 0;
    for n in 0..=9usize {
        for k in 0..=6usize {
            for d in 0..=6usize {
                let consistent = k >= 1 && d >= 2 && n == k + 2 * (d - 1);
                for q in 0..=13u64 {
                    let args = vec![
                        "construct".to_string(),
                        format!("--n={n}"),
                        format!("--k={k}"),
                        format!("--d={d}"),
                        format!("--q={q}"),
                    ];
                    let valid = consistent && is_prime(q) && q >= n as u64;
                    let exit = in_process(&args);
                    match (valid, exit) {
                        (true, 0) => accepted += 1,
                        (false, 2) => rejected += 1,
                        _ => return Err(format!("n={n} k={k} d={d} q={q}: exit {exit}")),
                    }
                }
            }
        }
    }
    for (args, want) in [
        (["construct", "--n", "3", "--k", "2", "--d", "2"], 2),
        (["construct", "--n", "4", "--k", "2", "--d", "2"], 0),
        (["construct", "--n", "5", "--k", "1", "--d", "3"], 0),
    ] {
        let (exit, _) = qmds(&args);
        if exit != want {
            return Err(format!("{args:?}: exit {exit}, want {want}"));
        }
    }
    for q in ["4", "6", "9", "2"] {
        let (exit, _) = qmds(&["construct", "--n", "4", "--k", "2", "--d", "2", "--q", q]);
        if exit != 2 {
            return Err(format!("q = {q} accepted for n = 4"));
        }
    }
    Ok(format!(
        "{rejected} rejected with exit 2, {accepted} valid accepted"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "figure for k=1, d=2",
            Duration::from_secs(1),
            figure_reproduction,
        ),
        (
            "entropy formula on every subsystem",
            Duration::from_secs(1),
            formula_exhaustive,
        ),
        (
            "state-vector and rank oracles agree",
            Duration::from_secs(60),
            oracle_equivalence,
        ),
        (
            "erasure decoding fidelity",
            Duration::from_secs(30),
            decoding,
        ),
        (
            "decoding, leakage, product and inequality suites",
            Duration::from_secs(30),
            proof_machinery,
        ),
        ("AME for k = 1", Duration::from_secs(10), ame),
        (
            "flat reduced spectra",
            Duration::from_secs(60),
            flat_spectra,
        ),
        (
            "constructor rejects invalid parameters",
            Duration::from_secs(60),
            constructor_rejects,
        ),
    ];

    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > *limit => {
                Err(format!("{detail}; took {elapsed:?}, limit {limit:?}"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS criterion {} {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} {name}: {detail} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
