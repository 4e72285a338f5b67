//! Tate's algorithm against frozen PARI/GP `elllocalred` output.
//! Fixtures are regenerated by `tests/fixtures/gen_tate_fixtures.py`.

use serde::Deserialize;
use wildrep::serde_rat::parse_rat;
use wildrep::weierstrass::{tate_algorithm, Kodaira, WeierstrassModel};

#[derive(Deserialize)]
struct Fixture {
    id: Option<String>,
    a_invariants: Vec<String>,
    kodaira: String,
    v_delta_min: u32,
}

fn load(text: &str) -> Vec<Fixture> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn check(fixtures: &[Fixture]) {
    for (i, f) in fixtures.iter().enumerate() {
        let coeffs: Vec<_> = f.a_invariants.iter().map(|s| parse_rat(s).unwrap()).collect();
        let model = WeierstrassModel::new(coeffs.try_into().unwrap(), 1).unwrap();
        let ld = tate_algorithm(&model).unwrap();
        let expected: Kodaira = f.kodaira.parse().unwrap();
        assert_eq!(
            (ld.kodaira, ld.v_delta_min),
            (expected, f.v_delta_min),
            "fixture {} ({:?}) {:?}",
            i,
            f.id,
            f.a_invariants
        );
    }
}

#[test]
fn regression_list_matches_pari() {
    let fixtures = load(include_str!("fixtures/tate_regression.jsonl"));
    assert!(fixtures.len() >= 10);
    check(&fixtures);
}

#[test]
fn random_corpus_matches_pari() {
    let fixtures = load(include_str!("fixtures/tate_corpus.jsonl"));
    assert_eq!(fixtures.len(), 3000);
    check(&fixtures);
}
