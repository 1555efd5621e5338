//! Closed-form coefficients against the stratification recursion, over a grid of germs.

use eqzeta::arccoef::{coefficient, validity_bound, CoeffChannel};
use eqzeta::oracle::oracle_coefficient;
use eqzeta::{Family, GermNormalForm, Sign};

fn grid() -> Vec<GermNormalForm> {
    let mut out = Vec::new();
    let fams = [
        (Family::A, 0..9),
        (Family::B, 2..6),
        (Family::C, 3..9),
        (Family::D, 4..10),
        (Family::E6, 6..7),
        (Family::E7, 7..8),
        (Family::E8, 8..9),
        (Family::F4, 4..5),
    ];
    for (f, ks) in fams {
        for k in ks {
            for p in 0..4 {
                for q in 0..4 {
                    for eps in Sign::ALL {
                        let etas: Vec<Option<Sign>> = if f.has_acted_square() {
                            Sign::ALL.map(Some).to_vec()
                        } else {
                            vec![None]
                        };
                        for eta in etas {
                            if let Ok(g) = GermNormalForm::new(f, k, eps, eta, p, q) {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn closed_forms_match_the_recursion_on_every_channel() {
    let channels = [
        CoeffChannel::Zero,
        CoeffChannel::Sign(Sign::Plus),
        CoeffChannel::Sign(Sign::Minus),
        CoeffChannel::Lift,
        CoeffChannel::Net,
    ];
    let mut checked = 0;
    for g in grid() {
        let top = validity_bound(&g).unwrap_or(6);
        for m in 1..=top {
            for ch in channels {
                let closed = coefficient(&g, m, ch).unwrap_or_else(|e| panic!("{g} m={m} {ch}: {e}"));
                let oracle = oracle_coefficient(&g, m, ch).unwrap_or_else(|e| panic!("{g} m={m} {ch}: {e}"));
                assert_eq!(
                    closed, oracle.total,
                    "{g} (family {}) m={m} channel {ch}\n{oracle}",
                    g.family
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 3000, "only {checked} cases");
}

#[test]
fn both_paths_reject_the_same_degrees() {
    for g in grid() {
        if let Some(b) = validity_bound(&g) {
            assert!(coefficient(&g, b + 1, CoeffChannel::Zero).is_err());
            assert!(oracle_coefficient(&g, b + 1, CoeffChannel::Zero).is_err());
        }
    }
}
