//! Randomized round trips and classical identities with known answers.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semistar::harness::{run_scenario, RunOptions, Scenario};
use semistar::models::sample::{sample, IdealClass};
use semistar::models::{DomainModel, ModelSpec};
use semistar::nagata::{Coeff, ContentPolynomial};

fn pid() -> DomainModel {
    DomainModel::from_name("pid").unwrap()
}

fn pid_poly(coeffs: &[i64]) -> Option<ContentPolynomial> {
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(k, c)| (k as u32, Coeff::Rational(BigRational::from_integer(BigInt::from(*c)))));
    ContentPolynomial::new(&pid(), terms).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_text_round_trip(coeffs in prop::collection::vec(-60i64..60, 1..5)) {
        if let Some(h) = pid_poly(&coeffs) {
            let back = ContentPolynomial::parse(&pid(), &h.to_string()).unwrap();
            prop_assert_eq!(back, h);
        }
    }

    /// Gauss: over a PID the content is multiplicative.
    #[test]
    fn content_is_multiplicative_over_the_pid(
        a in prop::collection::vec(-40i64..40, 1..4),
        b in prop::collection::vec(-40i64..40, 1..4),
    ) {
        if let (Some(g), Some(h)) = (pid_poly(&a), pid_poly(&b)) {
            let gh = g.mul(&h).unwrap();
            prop_assert_eq!(gh.content().unwrap(), g.content().unwrap().mul(&h.content().unwrap()).unwrap());
        }
    }

    #[test]
    fn ideal_literals_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for spec in ModelSpec::catalogue() {
            let model = DomainModel::new(spec).unwrap();
            let i = sample(&model, IdealClass::General, &mut rng);
            prop_assert_eq!(model.parse_ideal(&i.to_string()).unwrap(), i);
        }
    }

    #[test]
    fn scenario_reports_are_reproducible(seed in any::<u64>()) {
        let src = r#"{"schemaVersion": 1, "name": "p", "model": {"kind": "semigroup", "generators": [3,5,7]},
            "checks": [{"name": "laws", "check": "suite", "op": "t", "n": 3},
                       {"name": "w", "check": "agree", "op": "tilde(v)", "other": "w", "n": 5}]}"#;
        let opts = RunOptions { seed: Some(seed), ..RunOptions::default() };
        let a = run_scenario(Scenario::from_json(src).unwrap(), opts).unwrap();
        let b = run_scenario(Scenario::from_json(src).unwrap(), opts).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert!(a.passed(), "{}", a.to_json());
    }
}
