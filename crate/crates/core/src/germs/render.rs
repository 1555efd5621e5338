//! Normal form to canonical polynomial text.

use super::{Family, GermNormalForm};
use crate::sign::Sign;

struct Terms(String);

impl Terms {
    fn push(&mut self, s: Sign, body: &str) {
        match (self.0.is_empty(), s) {
            (true, Sign::Plus) => {}
            (true, Sign::Minus) => self.0.push('-'),
            (false, Sign::Plus) => self.0.push_str(" + "),
            (false, Sign::Minus) => self.0.push_str(" - "),
        }
        self.0.push_str(body);
    }
}

fn power(v: u32, e: u32) -> String {
    if e == 1 {
        format!("x{v}")
    } else {
        format!("x{v}^{e}")
    }
}

/// Canonical text: template terms first, then positive squares, then negative squares.
pub fn render_germ(g: &GermNormalForm) -> String {
    let mut t = Terms(String::new());
    let next = match g.family {
        Family::A => {
            t.push(g.acted_sign.unwrap(), "x1^2");
            t.push(g.eps, &power(2, g.k + 1));
            3
        }
        Family::B => {
            t.push(g.eps, &power(1, 2 * g.k));
            2
        }
        Family::C => {
            t.push(Sign::Plus, "x1^2*x2");
            t.push(g.eps, &power(2, g.k));
            3
        }
        Family::D => {
            t.push(g.acted_sign.unwrap(), "x1^2");
            t.push(Sign::Plus, "x2^2*x3");
            t.push(g.eps, &power(3, g.k - 1));
            4
        }
        Family::E6 | Family::E7 | Family::E8 => {
            t.push(g.acted_sign.unwrap(), "x1^2");
            t.push(Sign::Plus, "x2^3");
            match g.family {
                Family::E6 => t.push(g.eps, "x3^4"),
                Family::E7 => t.push(Sign::Plus, "x2*x3^3"),
                _ => t.push(Sign::Plus, "x3^5"),
            }
            4
        }
        Family::F4 => {
            t.push(g.eps, "x1^4");
            t.push(Sign::Plus, "x2^3");
            3
        }
    };
    let (mut plus, mut minus) = (g.p, g.q);
    match g.acted_sign {
        Some(Sign::Plus) => plus -= 1,
        Some(Sign::Minus) => minus -= 1,
        None => {}
    }
    let mut v = next;
    for _ in 0..plus {
        t.push(Sign::Plus, &power(v, 2));
        v += 1;
    }
    for _ in 0..minus {
        t.push(Sign::Minus, &power(v, 2));
        v += 1;
    }
    t.0
}

#[cfg(test)]
mod tests {
    use super::super::parse_germ;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_text() {
        let a = GermNormalForm::new(Family::A, 2, Sign::Plus, Some(Sign::Plus), 2, 0).unwrap();
        assert_eq!(render_germ(&a), "x1^2 + x2^3 + x3^2");
        let b = GermNormalForm::new(Family::B, 2, Sign::Minus, None, 1, 1).unwrap();
        assert_eq!(render_germ(&b), "-x1^4 + x2^2 - x3^2");
        let a0 = GermNormalForm::new(Family::A, 0, Sign::Minus, Some(Sign::Minus), 0, 1).unwrap();
        assert_eq!(render_germ(&a0), "-x1^2 - x2");
    }

    fn any_germ() -> impl Strategy<Value = GermNormalForm> {
        let fam = prop_oneof![
            Just(Family::A),
            Just(Family::B),
            Just(Family::C),
            Just(Family::D),
            Just(Family::E6),
            Just(Family::E7),
            Just(Family::E8),
            Just(Family::F4)
        ];
        (fam, 0u32..9, any::<bool>(), any::<bool>(), 0u32..4, 0u32..4).prop_filter_map(
            "valid parameters",
            |(f, k, e, h, p, q)| {
                let s = |b| if b { Sign::Plus } else { Sign::Minus };
                let eta = f.has_acted_square().then(|| s(h));
                GermNormalForm::new(f, k, s(e), eta, p, q).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(g in any_germ()) {
            prop_assert_eq!(parse_germ(&render_germ(&g)).unwrap(), g);
            prop_assert_eq!(parse_germ(&g.structured()).unwrap(), g);
        }

        #[test]
        fn parse_ignores_term_order_and_relabelling(g in any_germ(), seed in any::<u64>()) {
            // shuffle the terms and relabel x2..xn by a rotation
            let text = render_germ(&g);
            let mut terms: Vec<String> = Vec::new();
            let mut cur = String::new();
            for tok in text.split(' ') {
                if tok == "+" || tok == "-" {
                    terms.push(std::mem::take(&mut cur));
                    cur.push_str(tok);
                } else {
                    cur.push_str(tok);
                }
            }
            terms.push(cur);
            let len = terms.len();
            terms.rotate_left((seed as usize) % len);
            let n = g.n;
            let relabel = |s: &str| -> String {
                let mut out = String::new();
                let b = s.as_bytes();
                let mut i = 0;
                while i < b.len() {
                    if b[i] == b'x' {
                        let mut j = i + 1;
                        while j < b.len() && b[j].is_ascii_digit() { j += 1; }
                        let v: u32 = s[i + 1..j].parse().unwrap();
                        let w = if v == 1 || n < 3 { v } else { 2 + (v - 2 + (seed % 7) as u32) % (n - 1) };
                        out.push_str(&format!("x{w}"));
                        i = j;
                    } else {
                        out.push(b[i] as char);
                        i += 1;
                    }
                }
                out
            };
            let joined: String = terms
                .iter()
                .map(|t| if t.starts_with('+') || t.starts_with('-') { t.clone() } else { format!("+{t}") })
                .collect::<Vec<_>>()
                .join(" ");
            prop_assert_eq!(parse_germ(&relabel(&joined)).unwrap(), g);
        }
    }
}
