use proptest::prelude::*;
use qmds_core::code::{k_subsets, CodeParams, QuantumMdsCode};
use qmds_core::entropy::checks::{all_checks, check_ame, CheckSummary};
use qmds_core::entropy::{expected_entropy, full_profile, subsystem_entropy};
use qmds_core::SubsystemSpec;

/// Every MDS parameter set with `k+n <= 8` and prime `n <= q <= 7`.
fn small_parameter_sets() -> Vec<CodeParams> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for d in 2..=5 {
            let n = k + 2 * (d - 1);
            if k + n > 8 {
                continue;
            }
            for q in [2u64, 3, 5, 7] {
                if q >= n as u64 {
                    out.push(CodeParams::new(n, k, d, q).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn parameter_sweep_size() {
    let sets = small_parameter_sets();
    // [[3,1,2]] x3, [[4,2,2]] x2, [[5,1,3]] x2, [[5,3,2]] x2, [[6,2,3]]_7, [[7,1,4]]_7
    assert_eq!(sets.len(), 11);
}

#[test]
fn formula_for_all_small_codes() {
    for params in small_parameter_sets() {
        let code = QuantumMdsCode::construct(params, None).unwrap();
        let profile = full_profile(&code).unwrap();
        for e in profile.entries() {
            assert_eq!(
                e.entropy,
                expected_entropy(e.size, params.k, params.d).unwrap(),
                "{params} {}",
                e.subsystem
            );
        }
    }
}

#[test]
fn every_audit_passes_for_small_codes() {
    for params in small_parameter_sets() {
        let code = QuantumMdsCode::construct(params, None).unwrap();
        let profile = full_profile(&code).unwrap();
        for summary in all_checks(&profile, true) {
            assert!(
                summary.passed(),
                "{params}: {} {:?}",
                summary.name,
                summary.failures
            );
            assert!(summary.checked > 0, "{params}: {}", summary.name);
        }
    }
}

#[test]
fn reference_and_single_qudit_marginals() {
    for params in small_parameter_sets() {
        let code = QuantumMdsCode::construct(params, None).unwrap();
        let r = SubsystemSpec::new(true, &[]).unwrap();
        assert_eq!(subsystem_entropy(&code, &r).unwrap(), params.k);
        for i in 1..=params.n {
            let qi = SubsystemSpec::new(false, &[i]).unwrap();
            assert_eq!(subsystem_entropy(&code, &qi).unwrap(), 1);
        }
    }
}

#[test]
fn ame_for_k_equal_one() {
    for params in small_parameter_sets().into_iter().filter(|p| p.k == 1) {
        let code = QuantumMdsCode::construct(params, None).unwrap();
        let profile = full_profile(&code).unwrap();
        let summary: CheckSummary = check_ame(&profile).unwrap();
        assert!(summary.passed(), "{params}");
    }
}

fn code_with_random_alphas() -> impl Strategy<Value = QuantumMdsCode> {
    let sets = small_parameter_sets();
    (0..sets.len()).prop_flat_map(move |i| {
        let params = sets[i];
        let points: Vec<u64> = (0..params.q).collect();
        prop::sample::subsequence(points, params.n)
            .prop_shuffle()
            .prop_map(move |alphas| QuantumMdsCode::construct(params, Some(&alphas)).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formula_for_any_distinct_points(code in code_with_random_alphas()) {
        let profile = full_profile(&code).unwrap();
        prop_assert!(profile.all_match(), "{}", code);
    }

    #[test]
    fn complement_symmetry(code in code_with_random_alphas(), encoding in any::<u64>()) {
        let n = code.params().n;
        let s = SubsystemSpec::from_encoding(n, encoding & ((1 << (n + 1)) - 1)).unwrap();
        let c = s.complement(n).unwrap();
        prop_assert_eq!(
            subsystem_entropy(&code, &s).unwrap(),
            subsystem_entropy(&code, &c).unwrap()
        );
    }

    #[test]
    fn vandermonde_columns_mds(code in code_with_random_alphas()) {
        let p = code.params();
        let rows = p.generator_rows();
        for cols in k_subsets(p.n, rows) {
            prop_assert_eq!(code.ab().select_columns(&cols).unwrap().rank(), rows);
        }
        prop_assert!(code.validate().all_passed());
        prop_assert_eq!(code.generator().rank(), rows);
    }

    #[test]
    fn construction_is_deterministic(code in code_with_random_alphas()) {
        let again = QuantumMdsCode::construct(code.params(), Some(code.alphas())).unwrap();
        prop_assert_eq!(&again, &code);
        prop_assert_eq!(QuantumMdsCode::from_descriptor(&code.descriptor()).unwrap(), code);
    }
}
