use statman_core::classify::corpus;
use statman_core::decide::{decide, Relation};
use statman_core::synth::witness;
use statman_core::verify::{check_injective, validate_certificate, VerifyConfig};

fn check_all(rel: Relation, cfg: &VerifyConfig) -> usize {
    let types = corpus();
    let mut checked = 0;
    for a in &types {
        for b in &types {
            if !decide(rel, a, b) {
                assert!(witness(rel, a, b).is_err(), "{a} <={rel} {b} should have no witness");
                continue;
            }
            let cert = witness(rel, a, b).unwrap_or_else(|e| panic!("{a} <={rel} {b}: {e}"));
            let v = validate_certificate(&cert);
            assert!(v.passed(), "{v}");
            let r = check_injective(&cert, cfg);
            assert!(r.passed(), "{r}");
            checked += 1;
        }
    }
    checked
}

#[test]
fn head_witnesses_are_sound() {
    let n = check_all(Relation::Head, &VerifyConfig::default());
    assert!(n >= 60, "only {n} pairs");
}

#[test]
fn beta_eta_witnesses_are_sound() {
    let cfg = VerifyConfig { sample_limit: 80, size_bound: 12, ..Default::default() };
    check_all(Relation::BetaEta, &cfg);
}

#[test]
fn family_witnesses_are_sound() {
    let cfg = VerifyConfig { sample_limit: 80, size_bound: 12, ..Default::default() };
    check_all(Relation::HeadFamily, &cfg);
}
