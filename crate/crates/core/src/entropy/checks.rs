//! Audits of an [`EntropyProfile`] against the entropy identities and
//! inequalities an MDS code state satisfies. All comparisons are exact
//! integer checks on the atomic parts `R, Q_1, ..., Q_n`.

use serde::Serialize;

use super::EntropyProfile;
use crate::subsystem::SubsystemSpec;

/// Outcome of one family of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckSummary {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const R_BIT: u64 = 1;

fn q_bit(i: usize) -> u64 {
    1 << i
}

fn label(n: usize, encoding: u64) -> String {
    SubsystemSpec::from_encoding(n, encoding)
        .map(|s| s.to_string())
        .unwrap_or_else(|_| format!("{encoding:#b}"))
}

/// Masks of all coded-qudit subsets of the given size (bit `i` is `Q_i`).
fn coded_subsets(n: usize, size: usize) -> impl Iterator<Item = u64> {
    (0..(1u64 << n))
        .filter(move |m| m.count_ones() as usize == size)
        .map(|m| m << 1)
}

fn mutual_information(p: &EntropyProfile, a: u64, b: u64) -> i64 {
    p.entropy(a) as i64 + p.entropy(b) as i64 - p.entropy(a | b) as i64
}

/// Every atomic subsystem matches `min(|S|, 2(k+d-1) - |S|)`.
pub fn check_entropy_formula(profile: &EntropyProfile) -> CheckSummary {
    let n = profile.params().n;
    let mut s = CheckSummary::new("entropy equals min(|S|, 2(k+d-1)-|S|)");
    for e in profile.entries() {
        s.record(e.matches, || {
            format!(
                "H{} = {}, expected {}",
                label(n, e.subsystem.encoding()),
                e.entropy,
                e.expected
            )
        });
    }
    s
}

/// Recovery from any `n-(d-1)` coded qudits: `I(R; Q_I) = 2H(R) = 2k`; and
/// nothing leaks to any `d-1` coded qudits: `I(R; Q_J) = 0`.
pub fn check_decoding_condition(profile: &EntropyProfile) -> Vec<CheckSummary> {
    let params = profile.params();
    let n = params.n;
    let k = params.k as i64;
    let h_r = profile.entropy(R_BIT) as i64;

    let mut decoding = CheckSummary::new("decoding condition I(R;Q_I) = 2H(R) = 2k");
    for qi in coded_subsets(n, params.surviving_size()) {
        let mi = mutual_information(profile, R_BIT, qi);
        decoding.record(mi == 2 * h_r && mi == 2 * k, || {
            format!(
                "I(R;Q{}) = {mi}, 2H(R) = {}, 2k = {}",
                label(n, qi),
                2 * h_r,
                2 * k
            )
        });
    }

    let mut leakage = CheckSummary::new("no leakage I(R;Q_J) = 0 for |J| = d-1");
    for qj in coded_subsets(n, params.d - 1) {
        let mi = mutual_information(profile, R_BIT, qj);
        leakage.record(mi == 0, || format!("I(R;Q{}) = {mi}", label(n, qj)));
    }
    vec![decoding, leakage]
}

/// Subadditivity, Araki-Lieb, strong subadditivity and weak monotonicity over
/// every assignment of the atomic parts to `A`, `B`, `C` or none of them
/// (`4^(n+1)` assignments, which include the `3^(n+1)` full partitions).
pub fn check_entropy_inequalities(profile: &EntropyProfile) -> Vec<CheckSummary> {
    let n = profile.params().n;
    let parts = n + 1;
    let h = |m: u64| profile.entropy(m) as i64;

    let mut sa = CheckSummary::new("subadditivity H(AB) <= H(A)+H(B)");
    let mut al = CheckSummary::new("Araki-Lieb |H(A)-H(B)| <= H(AB)");
    let mut ssa = CheckSummary::new("strong subadditivity H(AB)+H(BC) >= H(ABC)+H(B)");
    let mut wm = CheckSummary::new("weak monotonicity H(AB)+H(BC) >= H(A)+H(C)");

    let assignments = 4u64.pow(parts as u32);
    for code in 0..assignments {
        let (mut a, mut b, mut c) = (0u64, 0u64, 0u64);
        let mut rest = code;
        for part in 0..parts {
            match rest % 4 {
                1 => a |= 1 << part,
                2 => b |= 1 << part,
                3 => c |= 1 << part,
                _ => {}
            }
            rest /= 4;
        }
        let describe = || format!("A={} B={} C={}", label(n, a), label(n, b), label(n, c));
        sa.record(h(a | b) <= h(a) + h(b), describe);
        al.record((h(a) - h(b)).abs() <= h(a | b), describe);
        ssa.record(h(a | b) + h(b | c) >= h(a | b | c) + h(b), describe);
        wm.record(h(a | b) + h(b | c) >= h(a) + h(c), describe);
    }
    vec![sa, al, ssa, wm]
}

/// Product-state identities among coded qudits: any `<= k` qudits are
/// independent of any disjoint `<= d-1` qudits, and any `<= k` qudits are
/// a product of single-qudit marginals.
pub fn product_state_checks(profile: &EntropyProfile) -> Vec<CheckSummary> {
    let params = profile.params();
    let n = params.n;
    let h = |m: u64| profile.entropy(m) as i64;

    let mut pair = CheckSummary::new("H(K1 u K2) = H(K1)+H(K2) for |K1|<=k, |K2|<=d-1");
    for code in 0..3u64.pow(n as u32) {
        let (mut k1, mut k2) = (0u64, 0u64);
        let mut rest = code;
        for i in 1..=n {
            match rest % 3 {
                1 => k1 |= q_bit(i),
                2 => k2 |= q_bit(i),
                _ => {}
            }
            rest /= 3;
        }
        if k1.count_ones() as usize > params.k || k2.count_ones() as usize > params.d - 1 {
            continue;
        }
        pair.record(h(k1 | k2) == h(k1) + h(k2), || {
            format!(
                "H{} = {}, H{} + H{} = {}",
                label(n, k1 | k2),
                h(k1 | k2),
                label(n, k1),
                label(n, k2),
                h(k1) + h(k2)
            )
        });
    }

    let mut marginals = CheckSummary::new("H(K) = sum of H(Q_i) for |K|<=k");
    for size in 0..=params.k.min(n) {
        for kk in coded_subsets(n, size) {
            let sum: i64 = (1..=n)
                .filter(|&i| kk & q_bit(i) != 0)
                .map(|i| h(q_bit(i)))
                .sum();
            marginals.record(h(kk) == sum, || {
                format!("H{} = {}, sum of marginals = {sum}", label(n, kk), h(kk))
            });
        }
    }
    vec![pair, marginals]
}

/// Purity-related structure: complement symmetry of every subsystem,
/// `H(R) = k`, and `H(Q_i) = 1` for each coded qudit.
pub fn check_structure(profile: &EntropyProfile) -> Vec<CheckSummary> {
    let params = profile.params();
    let n = params.n;
    let full = (1u64 << (n + 1)) - 1;

    let mut symmetry = CheckSummary::new("complement symmetry H(S) = H(S^c)");
    for e in 0..=full {
        symmetry.record(profile.entropy(e) == profile.entropy(full ^ e), || {
            format!(
                "H{} = {}, H{} = {}",
                label(n, e),
                profile.entropy(e),
                label(n, full ^ e),
                profile.entropy(full ^ e)
            )
        });
    }

    let mut reference = CheckSummary::new("H(R) = k");
    reference.record(profile.entropy(R_BIT) == params.k, || {
        format!("H(R) = {}, k = {}", profile.entropy(R_BIT), params.k)
    });

    let mut single = CheckSummary::new("H(Q_i) = 1");
    for i in 1..=n {
        single.record(profile.entropy(q_bit(i)) == 1, || {
            format!("H(Q{i}) = {}", profile.entropy(q_bit(i)))
        });
    }
    vec![symmetry, reference, single]
}

/// For `k = 1` the state is absolutely maximally entangled: every subsystem
/// of at most `(n+1)/2` qudits has entropy equal to its size. `None` when
/// `k > 1`.
pub fn check_ame(profile: &EntropyProfile) -> Option<CheckSummary> {
    let params = profile.params();
    if params.k != 1 {
        return None;
    }
    let n = params.n;
    let half = n.div_ceil(2);
    let mut s = CheckSummary::new("AME: H(S) = |S| for |S| <= (n+1)/2");
    for e in profile.entries().iter().filter(|e| e.size <= half) {
        s.record(e.entropy == e.size, || {
            format!("H{} = {}, size {}", e.subsystem, e.entropy, e.size)
        });
    }
    Some(s)
}

/// Every profile audit in a fixed order.
pub fn all_checks(profile: &EntropyProfile, inequalities: bool) -> Vec<CheckSummary> {
    let mut out = vec![check_entropy_formula(profile)];
    out.extend(check_structure(profile));
    out.extend(check_decoding_condition(profile));
    out.extend(check_ame(profile));
    if inequalities {
        out.extend(product_state_checks(profile));
        out.extend(check_entropy_inequalities(profile));
    }
    out
}
