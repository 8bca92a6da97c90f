use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use singmon::coxeter::{CoxeterMatrix, CoxeterType, Family};
use singmon::hecke::HeckeAlgebra;
use singmon::sl2cat;
use singmon::verify::{self, MapKind, Target};
use singmon::words::{Letter, SingularWord};
use singmon::Error;

#[derive(Parser)]
#[command(name = "singmon", version, about = "Singular Artin monoids and their finite quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Group {
    /// Coxeter family: A, B or I2
    #[arg(long = "type", default_value = "A")]
    family: String,
    /// Rank parameter for A and B (A(n) is the symmetric group on n letters)
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Dihedral parameter for I2
    #[arg(long)]
    m: Option<usize>,
}

impl Group {
    fn kind(&self) -> Result<CoxeterType, Error> {
        let family: Family = self.family.parse()?;
        match family {
            Family::I2 => {
                let m = self.m.ok_or_else(|| Error::Parameter("--m is required for type I2".into()))?;
                CoxeterType::new(family, m)
            }
            _ => CoxeterType::new(family, self.n),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the singular relations (and the image presentation) under a map
    Relations {
        #[command(flatten)]
        group: Group,
        /// Map or image monoid: eta, lambda/fstar, phi/rook/sis, chi/brauer, delta-bar, bool-delta, upsilon
        #[arg(long)]
        target: String,
        #[arg(long)]
        phi: Option<String>,
        /// Skip the presentation relations of the image monoid
        #[arg(long)]
        singular_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate a generated monoid and compare with its counting formula
    Enumerate {
        /// is, is-tilde, sis, br, fstar, fbstar, brb, apb, pb
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = verify::DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        emit_elements: bool,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a parametrized desingularization map on a word
    Desingularize {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        word: String,
        /// Parameter: a polynomial in x and v, or an integer set `{..}` for the Boolean map
        #[arg(long)]
        phi: Option<String>,
        /// groupalg, bool-delta or hecke
        #[arg(long, default_value = "groupalg")]
        target: String,
        #[arg(long)]
        json: bool,
    },
    /// Kazhdan-Lusztig basis element
    Kl {
        #[command(flatten)]
        group: Group,
        /// Word in s-letters, e.g. "s1 s2"; every element when omitted
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check that the type-B Brauer monoid is isomorphic to the almost colored partial Brauer monoid
    IsoCheck {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Random pairs instead of all pairs (default 10000 when n > 2)
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Dual-numbers bimodule checks
    Sl2Check {
        #[arg(long)]
        json: bool,
    },
    /// Connected components of the odd part of the Coxeter graph
    OddSkeleton {
        #[command(flatten)]
        group: Group,
        /// Explicit matrix (rows separated by `;`, `inf` allowed) or `type=A n=4`
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a map on a word
    Eval {
        #[command(flatten)]
        group: Group,
        /// eta, lambda, phi, chi, delta-bar, bool-delta, upsilon
        #[arg(long)]
        map: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parameter(_)
            | Error::Parse(_)
            | Error::SizeMismatch { .. }
            | Error::GroupMismatch
            | Error::MissingGenerator(_)
            | Error::UnknownFamily(_)
            | Error::Unsupported(_)
            | Error::InvalidElement(_)
    )
}

fn emit(json_out: bool, value: &Value, text: &str) {
    if json_out {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
}

fn parse_word(text: &str) -> Result<SingularWord, Error> {
    text.parse()
}

fn relations(group: &Group, target: &str, phi: Option<&str>, singular_only: bool, json_out: bool) -> Result<bool, Error> {
    let map: MapKind = target.parse()?;
    let kind = group.kind()?;
    let report = verify::check_map_relations(map, kind, phi, !singular_only)?;
    let mut v = report.to_json();
    v["map"] = json!(map.name());
    v["group"] = json!(kind.to_string());
    emit(json_out, &v, &format!("{map} on {kind}\n{report}"));
    Ok(report.passed())
}

fn enumerate(target: &str, n: usize, cap: usize, emit_elements: bool, json_out: bool) -> Result<bool, Error> {
    let target: Target = target.parse()?;
    let closure = verify::enumerate_target(target, n, cap)?;
    let oracle = verify::count_oracle(target, n)?;
    let matches = !closure.result.cap_hit && oracle == closure.result.size.into();
    let mut v = closure.to_json(emit_elements);
    v["oracle"] = json!(oracle.to_string());
    v["matches_oracle"] = json!(matches);
    let mut text = format!(
        "{target} n={n}: closure {}{} ({}), formula {oracle}: {}\n",
        closure.result.size,
        if closure.result.cap_hit { " (cap hit)" } else { "" },
        closure.result.generators,
        if matches { "match" } else { "MISMATCH" }
    );
    if emit_elements {
        for e in &closure.result.elements {
            text.push_str(e);
            text.push('\n');
        }
    }
    emit(json_out, &v, &text);
    Ok(matches)
}

fn desingularize(group: &Group, word: &str, phi: Option<&str>, target: &str, json_out: bool) -> Result<bool, Error> {
    let map = match target.parse::<MapKind>()? {
        m @ (MapKind::DeltaBar | MapKind::BoolDelta | MapKind::Upsilon) => m,
        other => return Err(Error::Parameter(format!("{other} is not a desingularization target"))),
    };
    eval(group, map, word, phi, json_out)
}

fn eval(group: &Group, map: MapKind, word: &str, phi: Option<&str>, json_out: bool) -> Result<bool, Error> {
    let kind = group.kind()?;
    let w = parse_word(word)?;
    let (text, value) = verify::eval_map(map, kind, phi, &w)?;
    let v = json!({"map": map.name(), "group": kind.to_string(), "word": w.to_string(), "value": value});
    emit(json_out, &v, &format!("{map}({w}) =\n{text}"));
    Ok(true)
}

fn kl(group: &Group, element: Option<&str>, json_out: bool) -> Result<bool, Error> {
    let kind = group.kind()?;
    let hecke = HeckeAlgebra::new(kind);
    let targets = match element {
        Some(text) => {
            let w = parse_word(text)?;
            let labels = w
                .letters()
                .iter()
                .map(|l| match l {
                    Letter::Sigma(s) => Ok(*s),
                    _ => Err(Error::Parse(format!("element words use s-letters only, got `{l}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            vec![kind.element_from_word(&labels)?]
        }
        None => hecke.elements().to_vec(),
    };
    let mut values = Vec::new();
    let mut text = String::new();
    for w in &targets {
        let h = hecke.kl_elt(w)?;
        let mut v = h.to_json();
        v["element"] = json!(w.to_string());
        v["reduced_word"] = json!(w.reduced_word());
        values.push(v);
        text.push_str(&format!("KL[{w}] = {h}\n"));
    }
    let v = if values.len() == 1 { values.remove(0) } else { json!(values) };
    emit(json_out, &v, &text);
    Ok(true)
}

fn iso_check(n: usize, samples: Option<usize>, seed: u64, json_out: bool) -> Result<bool, Error> {
    let samples = samples.or(if n > 2 { Some(10_000) } else { None });
    let report = verify::apb_iso_check(n, samples, seed)?;
    let mut v = report.to_json();
    v["seed"] = json!(seed);
    let text = format!(
        "Br^B_{n} vs APB_{n}: {} diagrams, {} pairs ({}, seed {seed}); round-trip failures {}, product failures {}: {}\n",
        report.diagrams,
        report.pairs,
        if report.exhaustive { "exhaustive" } else { "sampled" },
        report.round_trip_failures,
        report.hom_failures,
        if report.passed() { "PASS" } else { "FAIL" }
    );
    emit(json_out, &v, &text);
    Ok(report.passed())
}

fn sl2_check(json_out: bool) -> Result<bool, Error> {
    let checks = sl2cat::headline_checks()?;
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!("{:<28} {}  {}\n", c.name, if c.passed { "PASS" } else { "FAIL" }, c.detail));
    }
    let v = json!(checks.iter().map(sl2cat::Sl2Check::to_json).collect::<Vec<_>>());
    emit(json_out, &v, &text);
    Ok(checks.iter().all(|c| c.passed))
}

fn odd_skeleton(group: &Group, matrix: Option<&str>, json_out: bool) -> Result<bool, Error> {
    let m: CoxeterMatrix = match matrix {
        Some(text) => text.parse()?,
        None => group.kind()?.matrix(),
    };
    let comps = m.odd_components();
    let v = json!({"labels": m.labels(), "components": comps.components()});
    let mut text = format!("{} odd component(s)\n", comps.len());
    for c in comps.components() {
        let parts: Vec<String> = c.iter().map(usize::to_string).collect();
        text.push_str(&format!("{{{}}}\n", parts.join(", ")));
    }
    emit(json_out, &v, &text);
    Ok(true)
}

fn dispatch(cli: &Cli) -> Result<bool, Error> {
    match &cli.command {
        Command::Relations { group, target, phi, singular_only, json } => {
            relations(group, target, phi.as_deref(), *singular_only, *json)
        }
        Command::Enumerate { target, n, cap, emit_elements, json } => enumerate(target, *n, *cap, *emit_elements, *json),
        Command::Desingularize { group, word, phi, target, json } => desingularize(group, word, phi.as_deref(), target, *json),
        Command::Kl { group, element, json } => kl(group, element.as_deref(), *json),
        Command::IsoCheck { n, samples, seed, json } => iso_check(*n, *samples, *seed, *json),
        Command::Sl2Check { json } => sl2_check(*json),
        Command::OddSkeleton { group, matrix, json } => odd_skeleton(group, matrix.as_deref(), *json),
        Command::Eval { group, map, word, phi, json } => eval(group, map.parse()?, word, phi.as_deref(), *json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("singmon: {e}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
