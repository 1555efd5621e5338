//! Shared fixtures for the benchmarks.

use eqzeta::germs::parse_germ;
use eqzeta::GermNormalForm;

/// One germ of each family with a few extra squares.
pub fn sample_germs() -> Vec<GermNormalForm> {
    [
        "x1^2 + x2^6 + x3^2 + x4^2 - x5^2",
        "x1^6 + x2^2 + x3^2 - x4^2",
        "x1^2 + x2^2*x3 + x3^5 + x4^2 - x5^2",
        "x1^2*x2 - x2^5 + x3^2 + x4^2",
        "x1^2 + x2^3 - x3^4 + x4^2 + x5^2",
        "-x1^4 + x2^3 + x3^2 + x4^2 + x5^2",
    ]
    .iter()
    .map(|s| parse_germ(s).expect("fixture parses"))
    .collect()
}

/// Cross pairs covering a witness, a rule-backed equality and a conditional verdict.
pub fn sample_pairs() -> Vec<(GermNormalForm, GermNormalForm)> {
    [
        ("x2^4 + x1^2 - x3^2", "x1^4 + x2^2 - x3^2"),
        ("x2^4 + x1^2 + x3^2", "x1^4 + x2^2 + x3^2"),
        ("x1^2 + x2^3 - x3^4 + x4^2 + x5^2", "-x1^4 + x2^3 + x3^2 + x4^2 + x5^2"),
    ]
    .iter()
    .map(|(a, b)| (parse_germ(a).unwrap(), parse_germ(b).unwrap()))
    .collect()
}
