//! Every pair of germs sharing an underlying class, over a parameter grid, gets a verdict on
//! which the computing path and the rule table agree.

use std::collections::BTreeMap;

use eqzeta::classify::{compare, Evidence, Verdict};
use eqzeta::germs::{pair_route, PairRoute};
use eqzeta::qring::SeriesValue;
use eqzeta::{Family, GermNormalForm, Sign};

fn grid(max_sq: u32) -> Vec<GermNormalForm> {
    let mut out = Vec::new();
    let fams = [
        (Family::A, 0..8),
        (Family::B, 2..5),
        (Family::C, 3..8),
        (Family::D, 4..9),
        (Family::E6, 6..7),
        (Family::E7, 7..8),
        (Family::F4, 4..5),
    ];
    for (f, ks) in fams {
        for k in ks {
            for p in 0..=max_sq {
                for q in 0..=max_sq {
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
fn both_paths_agree_on_every_same_class_pair() {
    let mut classes: BTreeMap<_, Vec<GermNormalForm>> = BTreeMap::new();
    for g in grid(4) {
        classes.entry(g.underlying_class()).or_default().push(g);
    }
    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    for members in classes.values() {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i..] {
                let d = compare(a, b).unwrap_or_else(|e| panic!("{a} vs {b}: {e}"));
                *counts.entry(d.verdict.kind()).or_default() += 1;
                if let Verdict::Distinct(Evidence::Witness(w)) = &d.verdict {
                    let diff = &w.lhs - &w.rhs;
                    assert!(diff.is_atom_free() && diff != SeriesValue::zero(), "{a} vs {b}");
                }
                if let Verdict::Conditional { conditions, .. } = &d.verdict {
                    assert!(!conditions.is_empty());
                }
                // swapping the pair mirrors the verdict
                let r = compare(b, a).unwrap();
                assert_eq!(r.verdict.kind(), d.verdict.kind(), "{a} vs {b}");
            }
        }
    }
    for kind in [
        "same-normal-form",
        "equivalent",
        "distinct",
        "zeta-equal",
        "conditional",
        "out-of-scope",
    ] {
        assert!(
            counts.get(kind).copied().unwrap_or(0) > 0,
            "no {kind} verdicts: {counts:?}"
        );
    }
}

#[test]
fn cross_class_pairs_are_distinct_by_invariant() {
    let g = grid(2);
    for a in g.iter().step_by(7) {
        for b in g.iter().step_by(11) {
            if a.underlying_class() != b.underlying_class() {
                assert!(matches!(pair_route(a, b), PairRoute::CrossDistinct(_)));
                let d = compare(a, b).unwrap();
                assert!(matches!(d.verdict, Verdict::Distinct(Evidence::Invariant(_))));
            }
        }
    }
}
