//! `eqzeta`: catalogue values, truncated zeta series and pair verdicts from the command line.
//!
//! Invariants:
//! - output is deterministic; `--json` prints one object per line
//! - exit codes: 0 success, 1 usage or parse error, 2 degree out of range, 3 the two evaluation
//!   paths disagree (or another internal consistency failure)

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eqzeta::arccoef::tails::PairKind;
use eqzeta::arccoef::{default_order, zeta_truncated};
use eqzeta::classify::{compare, pair_grid, Decision, Evidence, Verdict};
use eqzeta::germs::{parse_germ, render_germ};
use eqzeta::grim::{
    beta_curve_zero, beta_cusp_fiber, beta_diagonal_zero, beta_sphere, beta_y, beta_y_fiber, Action, QuadSig,
};
use eqzeta::qring::Tail;
use eqzeta::{Channel, Error, GermNormalForm, RatFunc, Sign};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "eqzeta",
    version,
    about = "Equivariant zeta functions of simple invariant germs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class of a catalogue set.
    Beta {
        #[command(subcommand)]
        set: BetaSet,
        /// Print a JSON object instead of text.
        #[arg(long, global = true)]
        json: bool,
    },
    /// Truncated zeta series of a germ in one channel.
    Zeta {
        #[arg(allow_hyphen_values = true)]
        germ: String,
        #[arg(long, value_enum, default_value_t = ChannelArg::Naive)]
        channel: ChannelArg,
        /// Last degree to compute; defaults to the family's validity bound.
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Verdict on a pair of germs.
    Compare {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
        #[arg(long)]
        json: bool,
    },
    /// Verdicts on every same-class pair of a family grid, one pair per line.
    Table {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "ab")]
        families: Vec<PairArg>,
        /// Largest pair index.
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        /// Largest `p + q`.
        #[arg(long, default_value_t = 4)]
        pqmax: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum BetaSet {
    /// Quadric cone `{Q_{p,q} = 0}`.
    #[command(name = "Y")]
    Y {
        p: u32,
        q: u32,
        #[arg(long, default_value = "trivial")]
        action: Action,
    },
    /// Quadric level set `{Q_{p,q} = xi}`.
    #[command(name = "Yfiber")]
    YFiber {
        p: u32,
        q: u32,
        #[arg(allow_hyphen_values = true)]
        xi: Sign,
        #[arg(long, default_value = "trivial")]
        action: Action,
    },
    /// Sphere of dimension `d` under the central symmetry, or a reflection with `--fixed`.
    Sphere {
        d: u32,
        #[arg(long)]
        fixed: bool,
    },
    /// Zero set of `x^2 y + eps y^{2l+1}`.
    CurveZero {
        l: u32,
        #[arg(allow_hyphen_values = true)]
        eps: Sign,
        /// Let the involution act on `x`.
        #[arg(long)]
        flip_x: bool,
    },
    /// Level set `{x^2 y + eps y^{2l+1} = xi}`.
    CuspFiber {
        l: u32,
        #[arg(allow_hyphen_values = true)]
        xi: Sign,
    },
    /// Zero set `{eps x^e + Q_{p,q} = 0}`.
    DiagZero {
        e: u32,
        p: u32,
        q: u32,
        #[arg(allow_hyphen_values = true)]
        eps: Sign,
        #[arg(long, default_value = "trivial")]
        action: Action,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Naive,
    Plus,
    Minus,
}

impl From<ChannelArg> for Channel {
    fn from(c: ChannelArg) -> Channel {
        match c {
            ChannelArg::Naive => Channel::Naive,
            ChannelArg::Plus => Channel::Plus,
            ChannelArg::Minus => Channel::Minus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    #[value(name = "AB", alias = "ab")]
    Ab,
    #[value(name = "CD", alias = "cd")]
    Cd,
    #[value(name = "EF", alias = "ef")]
    Ef,
}

impl From<PairArg> for PairKind {
    fn from(p: PairArg) -> PairKind {
        match p {
            PairArg::Ab => PairKind::AB,
            PairArg::Cd => PairKind::CD,
            PairArg::Ef => PairKind::EF,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OutOfRange { .. } => 2,
        Error::DualPathMismatch { .. } | Error::NotExpandable | Error::IncomparableTails | Error::NoClause(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Beta { set, json } => run_beta(&mut out, set, json),
        Command::Zeta {
            germ,
            channel,
            order,
            json,
        } => run_zeta(&mut out, &germ, channel.into(), order, json),
        Command::Compare { first, second, json } => run_compare(&mut out, &first, &second, json),
        Command::Table {
            families,
            kmax,
            pqmax,
            json,
        } => run_table(&mut out, &families, kmax, pqmax, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

type CliResult = Result<u8, Error>;

fn emit(out: &mut impl Write, v: &Value) {
    let _ = writeln!(out, "{v}");
}

fn run_beta(out: &mut impl Write, set: BetaSet, json: bool) -> CliResult {
    let (set_text, value, clause): (String, RatFunc, &str) = match set {
        BetaSet::Y { p, q, action } => (
            format!("Y {p} {q} --action {action}"),
            beta_y(QuadSig::new(p, q), action)?,
            "quadric-cone-class",
        ),
        BetaSet::YFiber { p, q, xi, action } => (
            format!("Yfiber {p} {q} {xi} --action {action}"),
            beta_y_fiber(QuadSig::new(p, q), xi, action)?,
            "quadric-level-set-class",
        ),
        BetaSet::Sphere { d, fixed } => (
            format!("sphere {d}{}", if fixed { " --fixed" } else { "" }),
            beta_sphere(d, fixed),
            if fixed {
                "sphere-with-fixed-points"
            } else {
                "sphere-central-symmetry"
            },
        ),
        BetaSet::CurveZero { l, eps, flip_x } => (
            format!("curve-zero {l} {eps}{}", if flip_x { " --flip-x" } else { "" }),
            beta_curve_zero(l, eps, flip_x)?,
            "plane-curve-zero-set",
        ),
        BetaSet::CuspFiber { l, xi } => (format!("cusp-fiber {l} {xi}"), beta_cusp_fiber(l), "cusp-level-set"),
        BetaSet::DiagZero { e, p, q, eps, action } => (
            format!("diag-zero {e} {p} {q} {eps} --action {action}"),
            beta_diagonal_zero(e, QuadSig::new(p, q), eps, action)?,
            "power-plus-quadric-zero-set",
        ),
    };
    if json {
        emit(
            out,
            &json!({"command": "beta", "inputs": [set_text], "value": value.to_string(), "provenance": [clause]}),
        );
    } else {
        let _ = writeln!(out, "{value}\t[{clause}]");
    }
    Ok(0)
}

fn tail_json(t: &Tail) -> Value {
    match t {
        Tail::Unknown => json!({"kind": "unknown"}),
        Tail::EqualByRule(r) => json!({"kind": "equal", "rule": r}),
        Tail::ConditionalByRule(r, cs) => json!({
            "kind": "conditional",
            "rule": r,
            "conditions": cs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }),
    }
}

fn run_zeta(out: &mut impl Write, text: &str, ch: Channel, order: Option<u32>, json: bool) -> CliResult {
    let g = parse_germ(text)?;
    let order = order.unwrap_or_else(|| default_order(&g));
    let z = zeta_truncated(&g, ch, order)?;
    let germ = render_germ(&g);
    if json {
        let coeffs: Vec<Value> = z
            .coeffs
            .iter()
            .map(|(m, v)| json!({"m": m, "value": v.to_string()}))
            .collect();
        emit(
            out,
            &json!({
                "command": "zeta",
                "inputs": [germ],
                "channel": ch.to_string(),
                "order": order,
                "n": z.n,
                "coefficients": coeffs,
                "tail": tail_json(&z.tail),
                "provenance": ["arc-space-coefficients"],
            }),
        );
    } else {
        let _ = writeln!(out, "{germ}  ({ch}, n = {})", z.n);
        for (m, v) in &z.coeffs {
            let _ = writeln!(out, "T^{m}: {v}");
        }
        match &z.tail {
            Tail::Unknown => {}
            Tail::EqualByRule(r) => {
                let _ = writeln!(out, "tail: equal to the partner's by {r}");
            }
            Tail::ConditionalByRule(r, cs) => {
                let _ = writeln!(out, "tail: equal to the partner's by {r} if");
                for c in cs {
                    let _ = writeln!(out, "  {c}");
                }
            }
        }
    }
    Ok(0)
}

fn decision_json(command: &str, g1: &GermNormalForm, g2: &GermNormalForm, d: &Decision) -> Value {
    let mut v = json!({
        "command": command,
        "inputs": [render_germ(g1), render_germ(g2)],
        "verdict": d.verdict.kind(),
        "witness": Value::Null,
        "conditions": [],
        "provenance": d.provenance,
    });
    match &d.verdict {
        Verdict::Distinct(Evidence::Witness(w)) => {
            v["witness"] = json!({
                "channel": w.channel.to_string(),
                "m": w.m,
                "lhs": w.lhs.to_string(),
                "rhs": w.rhs.to_string(),
            });
        }
        Verdict::Distinct(Evidence::Predicted { channel, m }) => {
            v["witness"] = json!({"channel": channel.to_string(), "m": m, "lhs": null, "rhs": null});
        }
        Verdict::Distinct(Evidence::Invariant(why)) | Verdict::OutOfPaperScope(why) | Verdict::Equivalent(why) => {
            v["reason"] = json!(why);
        }
        Verdict::Conditional { rules, conditions } => {
            v["conditions"] = json!(conditions.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            v["rules"] = json!(rules);
        }
        Verdict::ZetaEqual { rules } => {
            v["rules"] = json!(rules);
        }
        Verdict::SameNormalForm => {}
    }
    v
}

fn decision_text(g1: &GermNormalForm, g2: &GermNormalForm, d: &Decision) -> String {
    let mut s = format!("{}  vs  {}\n{}", render_germ(g1), render_germ(g2), d.verdict);
    if let Verdict::Conditional { conditions, .. } = &d.verdict {
        s = format!("{}  vs  {}\nzeta functions equal if", render_germ(g1), render_germ(g2));
        for c in conditions {
            s.push_str(&format!("\n  {c}"));
        }
    }
    s.push_str(&format!("\n[{}]", d.provenance.join(", ")));
    s
}

fn run_compare(out: &mut impl Write, a: &str, b: &str, json: bool) -> CliResult {
    let (g1, g2) = (parse_germ(a)?, parse_germ(b)?);
    let d = compare(&g1, &g2)?;
    if json {
        emit(out, &decision_json("compare", &g1, &g2, &d));
    } else {
        let _ = writeln!(out, "{}", decision_text(&g1, &g2, &d));
    }
    Ok(0)
}

fn run_table(out: &mut impl Write, families: &[PairArg], kmax: u32, pqmax: u32, json: bool) -> CliResult {
    let mut failed = false;
    for &f in families {
        for class in pair_grid(f.into(), kmax, pqmax) {
            for (i, g1) in class.iter().enumerate() {
                for g2 in &class[i + 1..] {
                    match compare(g1, g2) {
                        Ok(d) if json => emit(out, &decision_json("table", g1, g2, &d)),
                        Ok(d) => {
                            let _ = writeln!(
                                out,
                                "{}\t{}\t{}\t{}",
                                render_germ(g1),
                                render_germ(g2),
                                d.verdict,
                                d.provenance.join(",")
                            );
                        }
                        Err(e @ Error::DualPathMismatch { .. }) => {
                            failed = true;
                            if json {
                                emit(
                                    out,
                                    &json!({
                                        "command": "table",
                                        "inputs": [render_germ(g1), render_germ(g2)],
                                        "error": e.to_string(),
                                    }),
                                );
                            } else {
                                let _ = writeln!(out, "{}\t{}\terror: {e}", render_germ(g1), render_germ(g2));
                            }
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    Ok(if failed { 3 } else { 0 })
}
