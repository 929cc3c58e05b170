use std::fmt::Write as _;

use qmds_core::code::{k_subsets, CodeDescriptor, CodeParams, QuantumMdsCode};
use qmds_core::entropy::checks::{
    check_ame, check_decoding_condition, check_entropy_formula, check_entropy_inequalities,
    check_structure, product_state_checks, CheckSummary,
};
use qmds_core::entropy::{
    expected_entropy, extended_profile, figure_rows, full_profile, size_entropy_csv,
};
use qmds_core::gf::smallest_prime_at_least;
use qmds_core::sim::{
    decode, decode_target, encode_state, entropy_of_spectrum, fidelity, reduced_spectrum,
};
use qmds_core::SubsystemSpec;

use crate::{CliError, CodeArgs, Format, Oracle, Outcome, ParamArgs};

/// Numeric agreement tolerance between the two oracles.
pub const ORACLE_TOLERANCE: f64 = 1e-9;
/// Minimum acceptable decoding fidelity is `1 - FIDELITY_TOLERANCE`.
pub const FIDELITY_TOLERANCE: f64 = 1e-12;

const MAX_LISTED_FAILURES: usize = 10;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn require(value: Option<usize>, flag: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| {
        invalid(format!(
            "missing --{flag} (or pass --code <descriptor.json>)"
        ))
    })
}

fn build_from_params(args: &ParamArgs) -> Result<QuantumMdsCode, CliError> {
    let n = require(args.n, "n")?;
    let k = require(args.k, "k")?;
    let d = require(args.d, "d")?;
    let q = match args.q {
        Some(q) => q,
        None => smallest_prime_at_least(n as u64),
    };
    let params = CodeParams::new(n, k, d, q)?;
    Ok(QuantumMdsCode::construct(params, args.alphas.as_deref())?)
}

/// Builds the code named by `--code` or the inline flags.
pub fn load_code(args: &CodeArgs) -> Result<QuantumMdsCode, CliError> {
    match &args.code {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
            let desc: CodeDescriptor = serde_json::from_str(&text)
                .map_err(|e| invalid(format!("bad descriptor {}: {e}", path.display())))?;
            Ok(QuantumMdsCode::from_descriptor(&desc)?)
        }
        None => build_from_params(&args.params),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn construct(args: &ParamArgs) -> Result<Outcome, CliError> {
    let code = build_from_params(args)?;
    Ok(Outcome::ok(to_json(&code.descriptor())))
}

pub fn profile(code: &QuantumMdsCode, format: Format, extended: bool) -> Result<Outcome, CliError> {
    let profile = if extended {
        extended_profile(code)?
    } else {
        full_profile(code)?
    };
    let output = match format {
        Format::Json => to_json(&profile.document()),
        Format::Csv => profile.to_csv(),
    };
    Ok(Outcome::ok(output))
}

pub fn figure(k: usize, d: usize) -> Result<Outcome, CliError> {
    if k < 1 {
        return Err(invalid(format!("k must be at least 1 (got k = {k})")));
    }
    if d < 2 {
        return Err(invalid(format!("d must be at least 2 (got d = {d})")));
    }
    Ok(Outcome::ok(size_entropy_csv(&figure_rows(k, d)?)))
}

/// Collects report lines and tracks whether everything passed.
struct Report {
    text: String,
    passed: bool,
    lines: usize,
}

impl Report {
    fn new(code: &QuantumMdsCode) -> Self {
        let mut text = String::new();
        let _ = writeln!(text, "code {} alphas {:?}", code.params(), code.alphas());
        Self {
            text,
            passed: true,
            lines: 0,
        }
    }

    fn line(&mut self, ok: bool, message: &str, failures: &[String]) {
        self.passed &= ok;
        self.lines += 1;
        let _ = writeln!(self.text, "{} {message}", if ok { "PASS" } else { "FAIL" });
        for f in failures.iter().take(MAX_LISTED_FAILURES) {
            let _ = writeln!(self.text, "       {f}");
        }
        if failures.len() > MAX_LISTED_FAILURES {
            let _ = writeln!(
                self.text,
                "       ... {} more",
                failures.len() - MAX_LISTED_FAILURES
            );
        }
    }

    fn summary(&mut self, prefix: &str, s: &CheckSummary) {
        let message = format!("{prefix}{} ({} checked)", s.name, s.checked);
        self.line(s.passed(), &message, &s.failures);
    }

    fn finish(mut self) -> Outcome {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(self.text, "result: {verdict} ({} checks)", self.lines);
        Outcome::checked(self.text, self.passed)
    }
}

/// Numeric entropy and flatness of the spectrum for one subsystem.
struct NumericEntry {
    subsystem: SubsystemSpec,
    size: usize,
    entropy: f64,
    flat_error: Option<String>,
}

fn numeric_profile(code: &QuantumMdsCode) -> Result<Vec<NumericEntry>, CliError> {
    let p = code.params();
    let psi = encode_state(code)?;
    let mut out = Vec::with_capacity(1 << (p.n + 1));
    for encoding in 0..(1u64 << (p.n + 1)) {
        let subsystem = SubsystemSpec::from_encoding(p.n, encoding)?;
        let spectrum = reduced_spectrum(&psi, &subsystem.registers(p.k, p.n)?)?;
        let entropy = entropy_of_spectrum(&spectrum, p.q as usize);
        let flat_error = flat_spectrum_error(&spectrum, entropy, p.q);
        out.push(NumericEntry {
            size: subsystem.size(p.k),
            subsystem,
            entropy,
            flat_error,
        });
    }
    Ok(out)
}

/// `None` when the nonzero eigenvalues number `q^H` and each equals `q^-H`.
fn flat_spectrum_error(spectrum: &[f64], entropy: f64, q: u64) -> Option<String> {
    let h = entropy.round() as i32;
    let level = (q as f64).powi(-h);
    let nonzero: Vec<f64> = spectrum
        .iter()
        .copied()
        .filter(|&l| l > ORACLE_TOLERANCE)
        .collect();
    let expected_count = (q as f64).powi(h).round() as usize;
    if nonzero.len() != expected_count {
        return Some(format!(
            "{} nonzero eigenvalues, expected {expected_count}",
            nonzero.len()
        ));
    }
    let worst = nonzero
        .iter()
        .map(|l| (l - level).abs())
        .fold(0.0, f64::max);
    (worst >= ORACLE_TOLERANCE).then(|| format!("eigenvalue off q^-{h} by {worst:.3e}"))
}

fn numeric_mutual_information(table: &[NumericEntry], a: u64, b: u64) -> f64 {
    let h = |m: u64| table[m as usize].entropy;
    h(a) + h(b) - h(a | b)
}

fn coded_masks(n: usize, size: usize) -> Vec<u64> {
    k_subsets(n, size)
        .into_iter()
        .map(|s| s.iter().fold(0u64, |m, &i| m | (1 << (i + 1))))
        .collect()
}

fn label(n: usize, encoding: u64) -> String {
    SubsystemSpec::from_encoding(n, encoding)
        .map(|s| s.to_string())
        .unwrap_or_default()
}

pub fn verify(
    code: &QuantumMdsCode,
    oracle: Oracle,
    inequalities: bool,
) -> Result<Outcome, CliError> {
    let p = code.params();
    let mut report = Report::new(code);

    let validation = code.validate();
    let failures: Vec<String> = validation
        .failures()
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    report.line(
        validation.all_passed(),
        &format!("code construction ({} checks)", validation.checks.len()),
        &failures,
    );

    let exact = if oracle.lemma() || inequalities {
        Some(full_profile(code)?)
    } else {
        None
    };
    let numeric = if oracle.statevec() {
        Some(numeric_profile(code)?)
    } else {
        None
    };

    if oracle.lemma() {
        let profile = exact.as_ref().expect("computed above");
        report.summary("lemma: ", &check_entropy_formula(profile));
        for s in check_structure(profile) {
            report.summary("lemma: ", &s);
        }
        for s in check_decoding_condition(profile) {
            report.summary("lemma: ", &s);
        }
        if let Some(s) = check_ame(profile) {
            report.summary("lemma: ", &s);
        }
    }

    if let Some(table) = &numeric {
        let mut worst = 0.0f64;
        let mut failures = Vec::new();
        for e in table {
            let expected = expected_entropy(e.size, p.k, p.d)? as f64;
            let delta = (e.entropy - expected).abs();
            worst = worst.max(delta);
            if delta >= ORACLE_TOLERANCE {
                failures.push(format!(
                    "H{} = {:.12}, expected {expected}",
                    e.subsystem, e.entropy
                ));
            }
        }
        report.line(
            failures.is_empty(),
            &format!(
                "statevec: entropy equals min(|S|, 2(k+d-1)-|S|) within {ORACLE_TOLERANCE:e} ({} checked, max delta {worst:.3e})",
                table.len()
            ),
            &failures,
        );

        let flat: Vec<String> = table
            .iter()
            .filter_map(|e| {
                e.flat_error
                    .as_ref()
                    .map(|m| format!("{}: {m}", e.subsystem))
            })
            .collect();
        report.line(
            flat.is_empty(),
            &format!(
                "statevec: nonzero eigenvalues all equal q^-H ({} checked)",
                table.len()
            ),
            &flat,
        );

        let r = 1u64;
        let mut dec = Vec::new();
        let surviving = coded_masks(p.n, p.surviving_size());
        for &m in &surviving {
            let mi = numeric_mutual_information(table, r, m);
            if (mi - 2.0 * p.k as f64).abs() >= ORACLE_TOLERANCE {
                dec.push(format!("I(R;Q{}) = {mi:.12}", label(p.n, m)));
            }
        }
        report.line(
            dec.is_empty(),
            &format!(
                "statevec: decoding condition I(R;Q_I) = 2k ({} checked)",
                surviving.len()
            ),
            &dec,
        );
        let mut leak = Vec::new();
        let erased = coded_masks(p.n, p.d - 1);
        for &m in &erased {
            let mi = numeric_mutual_information(table, r, m);
            if mi.abs() >= ORACLE_TOLERANCE {
                leak.push(format!("I(R;Q{}) = {mi:.12}", label(p.n, m)));
            }
        }
        report.line(
            leak.is_empty(),
            &format!(
                "statevec: no leakage I(R;Q_J) = 0 for |J| = d-1 ({} checked)",
                erased.len()
            ),
            &leak,
        );
    }

    if let (Some(profile), Some(table)) = (&exact, &numeric) {
        if oracle == Oracle::Both {
            let mut worst = 0.0f64;
            let mut failures = Vec::new();
            for (e, x) in table.iter().zip(profile.entries()) {
                let delta = (e.entropy - x.entropy as f64).abs();
                worst = worst.max(delta);
                if delta >= ORACLE_TOLERANCE {
                    failures.push(format!(
                        "H{}: lemma {}, statevec {:.12}",
                        x.subsystem, x.entropy, e.entropy
                    ));
                }
            }
            report.line(
                failures.is_empty(),
                &format!(
                    "oracle agreement within {ORACLE_TOLERANCE:e} ({} subsystems, max delta {worst:.3e})",
                    table.len()
                ),
                &failures,
            );
        }
    }

    if inequalities {
        let profile = exact.as_ref().expect("computed above");
        for s in product_state_checks(profile) {
            report.summary("", &s);
        }
        for s in check_entropy_inequalities(profile) {
            report.summary("", &s);
        }
    }

    Ok(report.finish())
}

/// Simulates decoding after erasing the given 1-based coded qudits, or after
/// every pattern of `d-1` erasures when `erasures` is `None`.
pub fn decode_test(code: &QuantumMdsCode, erasures: Option<&[usize]>) -> Result<Outcome, CliError> {
    let p = code.params();
    let patterns: Vec<Vec<usize>> = match erasures {
        Some(list) => {
            let mut sorted = list.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != list.len() {
                return Err(invalid("erased qudits must be distinct"));
            }
            if let Some(&bad) = sorted.iter().find(|&&i| i == 0 || i > p.n) {
                return Err(invalid(format!(
                    "erased qudit {bad} is outside 1..={}",
                    p.n
                )));
            }
            if sorted.len() != p.d - 1 {
                return Err(invalid(format!(
                    "need exactly d-1 = {} erasures, got {}",
                    p.d - 1,
                    sorted.len()
                )));
            }
            vec![sorted]
        }
        None => k_subsets(p.n, p.d - 1)
            .into_iter()
            .map(|s| s.into_iter().map(|i| i + 1).collect())
            .collect(),
    };

    let psi = encode_state(code)?;
    let mut text = String::new();
    let _ = writeln!(text, "code {} alphas {:?}", p, code.alphas());
    let mut passed = 0;
    for erased in &patterns {
        let surviving: Vec<usize> = (1..=p.n).filter(|i| !erased.contains(i)).collect();
        let out = decode(&psi, code, &surviving)?;
        let target = decode_target(code, &surviving)?;
        let f = fidelity(&out, &target)?;
        let ok = f >= 1.0 - FIDELITY_TOLERANCE;
        passed += ok as usize;
        let _ = writeln!(
            text,
            "erased {} surviving {} fidelity {f:.12} {}",
            SubsystemSpec::new(false, erased)?,
            SubsystemSpec::new(false, &surviving)?,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    let all = passed == patterns.len();
    let _ = writeln!(
        text,
        "result: {} ({passed}/{} patterns)",
        if all { "PASS" } else { "FAIL" },
        patterns.len()
    );
    Ok(Outcome::checked(text, all))
}
