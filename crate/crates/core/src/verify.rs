//! Relation checking, closure enumeration, commuting-square checks and counting oracles.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::binrel::{eta_assignment, eta_b_assignment};
use crate::brauer::{self, BrauerDiagram, ColoredPartialBrauer, PartialBrauerDiagram};
use crate::combinat::involutions;
use crate::coxeter::{CoxeterType, Family};
use crate::dualsym::{self, BlockBijection, BlockBijectionB};
use crate::error::{Error, Result};
use crate::rook::{self, PartialPerm};
use crate::groupalg::{bool_delta_assignment, bool_delta_eval, delta_bar_assignment, delta_bar_eval};
use crate::hecke::HeckeAlgebra;
use crate::laurent::{PhiAssignment, PhiSet};
use crate::words::{extra_relations, singular_relations, Assignment, MulFn, RelationFamily, RelationSet, SingularWord};

pub const DEFAULT_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub index: usize,
    pub label: String,
    pub lhs: SingularWord,
    pub rhs: SingularWord,
    pub lhs_value: String,
    pub rhs_value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub name: String,
    pub total: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "relations": self.name,
            "total": self.total,
            "failures": self.failures.iter().map(|f| json!({
                "index": f.index,
                "label": f.label,
                "lhs": f.lhs.to_string(),
                "rhs": f.rhs.to_string(),
                "lhs_value": f.lhs_value,
                "rhs_value": f.rhs_value,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} relations, {} failures", self.name, self.total, self.failures.len())?;
        for x in &self.failures {
            writeln!(f, "  [{}] {}: {} = {}", x.index, x.label, x.lhs, x.rhs)?;
            writeln!(f, "      {} != {}", x.lhs_value, x.rhs_value)?;
        }
        Ok(())
    }
}

/// Evaluates both sides of every relation under `a`.
pub fn check_relations<E: Clone + PartialEq + fmt::Debug>(
    rel: &RelationSet,
    a: &Assignment<E>,
) -> Result<RelationReport> {
    let mut failures = Vec::new();
    for (index, r) in rel.pairs.iter().enumerate() {
        let (l, rr) = (a.evaluate(&r.lhs)?, a.evaluate(&r.rhs)?);
        if l != rr {
            failures.push(RelationFailure {
                index,
                label: r.label.clone(),
                lhs: r.lhs.clone(),
                rhs: r.rhs.clone(),
                lhs_value: format!("{l:?}"),
                rhs_value: format!("{rr:?}"),
            });
        }
    }
    Ok(RelationReport {
        name: format!("{} under {}", rel.name, a.name()),
        total: rel.pairs.len(),
        failures,
    })
}

#[derive(Clone, Debug)]
pub struct ClosureResult<E> {
    pub size: usize,
    pub elements: Vec<E>,
    pub cap_hit: bool,
    pub generators: String,
}

/// Breadth-first closure of `identity` under left multiplication by `generators`.
///
/// Frontier products are computed in parallel; the result is sorted.
pub fn enumerate_closure<E>(generators: &[E], mul: &MulFn<E>, identity: E, cap: usize) -> Result<ClosureResult<E>>
where
    E: Clone + Ord + Hash + Send + Sync + fmt::Debug,
{
    if cap == 0 {
        return Err(Error::Parameter("cap must be positive".into()));
    }
    let mut seen: HashSet<E> = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    let mut cap_hit = false;
    while !frontier.is_empty() && !cap_hit {
        let products: Vec<E> = frontier
            .par_iter()
            .flat_map_iter(|x| generators.iter().map(move |g| mul(g, x)))
            .collect();
        let mut next = Vec::new();
        for p in products {
            if seen.contains(&p) {
                continue;
            }
            if seen.len() >= cap {
                cap_hit = true;
                break;
            }
            seen.insert(p.clone());
            next.push(p);
        }
        frontier = next;
    }
    let mut elements: Vec<E> = seen.into_iter().collect();
    elements.sort();
    Ok(ClosureResult {
        size: elements.len(),
        elements,
        cap_hit,
        generators: format!("{} generators", generators.len()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteReport {
    pub name: String,
    pub total: usize,
    pub mismatches: Vec<(SingularWord, String, String)>,
}

impl CommuteReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares two routes word by word.
pub fn check_commutes<T: PartialEq + fmt::Debug>(
    name: &str,
    words: &[SingularWord],
    left: impl Fn(&SingularWord) -> Result<T>,
    right: impl Fn(&SingularWord) -> Result<T>,
) -> Result<CommuteReport> {
    let mut mismatches = Vec::new();
    for w in words {
        let (a, b) = (left(w)?, right(w)?);
        if a != b {
            mismatches.push((w.clone(), format!("{a:?}"), format!("{b:?}")));
        }
    }
    Ok(CommuteReport {
        name: name.to_string(),
        total: words.len(),
        mismatches,
    })
}

/// The factorizations of desingularization maps through one another.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Square {
    /// `λ = π ∘ η`
    LambdaPiEta,
    /// `φ = υ ∘ λ`
    PhiUpsilonLambda,
    /// type B `λ = π ∘ η`
    LambdaBPiEtaB,
    /// type B `φ = υ ∘ λ`
    PhiBUpsilonBLambdaB,
}

impl Square {
    pub const ALL: [Square; 4] = [
        Square::LambdaPiEta,
        Square::PhiUpsilonLambda,
        Square::LambdaBPiEtaB,
        Square::PhiBUpsilonBLambdaB,
    ];

    pub fn family(self) -> Family {
        match self {
            Square::LambdaPiEta | Square::PhiUpsilonLambda => Family::A,
            _ => Family::B,
        }
    }

    pub fn run(self, n: usize, words: &[SingularWord]) -> Result<CommuteReport> {
        match self {
            Square::LambdaPiEta => {
                let (l, e) = (dualsym::lambda_assignment(n)?, eta_assignment(n)?);
                check_commutes("lambda = pi . eta", words, |w| l.evaluate(w), |w| {
                    BlockBijection::pi_project(&e.evaluate(w)?)
                })
            }
            Square::PhiUpsilonLambda => {
                let (p, l) = (rook::phi_assignment(n)?, dualsym::lambda_assignment(n)?);
                check_commutes("phi = upsilon . lambda", words, |w| p.evaluate(w), |w| {
                    rook::upsilon_restrict(&l.evaluate(w)?)
                })
            }
            Square::LambdaBPiEtaB => {
                let (l, e) = (dualsym::lambda_b_assignment(n)?, eta_b_assignment(n)?);
                check_commutes("lambda_b = pi . eta_b", words, |w| l.evaluate(w), |w| {
                    BlockBijectionB::pi_project(&e.evaluate(w)?)
                })
            }
            Square::PhiBUpsilonBLambdaB => {
                let (p, l) = (rook::phi_b_assignment(n)?, dualsym::lambda_b_assignment(n)?);
                check_commutes("phi_b = upsilon_b . lambda_b", words, |w| p.evaluate(w), |w| {
                    rook::upsilon_b_restrict(&l.evaluate(w)?)
                })
            }
        }
    }
}

/// Monoids with both a closure construction and a counting oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Is,
    IsTilde,
    Sis,
    Br,
    Istar,
    Fstar,
    FBstar,
    BrB,
    Apb,
    Pb,
}

impl Target {
    pub const ALL: [Target; 10] = [
        Target::Is,
        Target::IsTilde,
        Target::Sis,
        Target::Br,
        Target::Istar,
        Target::Fstar,
        Target::FBstar,
        Target::BrB,
        Target::Apb,
        Target::Pb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Is => "is",
            Target::IsTilde => "is-tilde",
            Target::Sis => "sis",
            Target::Br => "br",
            Target::Istar => "istar",
            Target::Fstar => "fstar",
            Target::FBstar => "fbstar",
            Target::BrB => "brb",
            Target::Apb => "apb",
            Target::Pb => "pb",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Target::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .or(match key.as_str() {
                "istilde" => Some(Target::IsTilde),
                "brauer" => Some(Target::Br),
                "brauer-b" => Some(Target::BrB),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

fn binom(n: usize, k: usize) -> BigUint {
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, i| a * BigUint::from(i))
}

/// Stirling numbers of the second kind `S(n, k)` for `k = 0..=n`.
fn stirling2_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for i in 1..=n {
        let mut next = vec![BigUint::zero(); i + 1];
        for k in 1..=i {
            let keep = if k < i { &row[k] * BigUint::from(k) } else { BigUint::zero() };
            next[k] = keep + &row[k - 1];
        }
        row = next;
    }
    row
}

/// Integer partitions of `n` as multiplicity vectors `m[k]` for part size `k`.
fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(m.clone());
            return;
        }
        for k in (1..=max.min(rest)).rev() {
            m[k] += 1;
            rec(rest - k, k, m, out);
            m[k] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut vec![0; n + 1], &mut out);
    out
}

/// Cardinality by formula or direct construction, independent of any generating set.
pub fn count_oracle(target: Target, n: usize) -> Result<BigUint> {
    Ok(match target {
        Target::Is => (0..=n).map(|k| binom(n, k).pow(2) * factorial(k)).sum(),
        Target::IsTilde => {
            let is = count_oracle(Target::Is, n)?;
            if n == 0 {
                is
            } else {
                is - BigUint::from(n * n) * factorial(n - 1)
            }
        }
        Target::Sis => (0..=n)
            .map(|k| binom(n, k).pow(2) * factorial(k) * (BigUint::one() << k))
            .sum(),
        Target::Br => (1..=n).fold(BigUint::one(), |a, i| a * BigUint::from(2 * i - 1)),
        Target::Istar => {
            let s = stirling2_row(n);
            (0..=n).map(|k| s[k].pow(2) * factorial(k)).sum()
        }
        Target::Fstar => integer_partitions(n)
            .into_iter()
            .map(|m| {
                let mut denom = BigUint::one();
                let mut perms = BigUint::one();
                for (k, &mk) in m.iter().enumerate().skip(1) {
                    denom *= factorial(k).pow(mk as u32) * factorial(mk);
                    perms *= factorial(mk);
                }
                let blocks = factorial(n) / denom;
                &blocks * &blocks * perms
            })
            .sum(),
        Target::FBstar => BigUint::from(dualsym::all_uniform_b(n)?.len()),
        Target::BrB => BigUint::from(brauer::all_brauer_b(n).len()),
        Target::Pb => BigUint::from(involutions(2 * n).len()),
        Target::Apb => involutions(2 * n)
            .into_iter()
            .map(|m| BigUint::one() << m.iter().enumerate().filter(|&(i, &j)| j > i).count())
            .sum(),
    })
}

/// Closure summary with elements rendered as text.
#[derive(Clone, Debug)]
pub struct TargetClosure {
    pub target: Target,
    pub n: usize,
    pub result: ClosureResult<String>,
}

impl TargetClosure {
    pub fn to_json(&self, with_elements: bool) -> Value {
        let mut v = json!({
            "target": self.target.name(),
            "n": self.n,
            "size": self.result.size,
            "cap_hit": self.result.cap_hit,
            "generators": self.result.generators,
        });
        if with_elements {
            v["elements"] = json!(self.result.elements);
        }
        v
    }
}

fn closure_of<E>(gens: Vec<E>, mul: MulFn<E>, id: E, cap: usize) -> Result<ClosureResult<String>>
where
    E: Clone + Ord + Hash + Send + Sync + fmt::Debug,
{
    let r = enumerate_closure(&gens, &mul, id, cap)?;
    Ok(ClosureResult {
        size: r.size,
        elements: r.elements.iter().map(|e| format!("{e:?}")).collect(),
        cap_hit: r.cap_hit,
        generators: r.generators,
    })
}

fn from_assignment<E>(a: Assignment<E>, cap: usize) -> Result<ClosureResult<String>>
where
    E: Clone + Ord + Hash + Send + Sync + fmt::Debug,
{
    let id = a.identity().clone();
    closure_of(a.generator_images(), a.mul_fn(), id, cap)
}

/// Closure of the generators that realize `target` (mostly images of the desingularization maps).
pub fn enumerate_target(target: Target, n: usize, cap: usize) -> Result<TargetClosure> {
    let result = match target {
        Target::IsTilde => from_assignment(rook::phi_assignment(n)?, cap)?,
        Target::Sis => from_assignment(rook::phi_b_assignment(n)?, cap)?,
        Target::Br => from_assignment(brauer::chi_assignment(n)?, cap)?,
        Target::BrB => from_assignment(brauer::chi_b_assignment(n)?, cap)?,
        Target::Fstar => from_assignment(dualsym::lambda_assignment(n)?, cap)?,
        Target::FBstar => from_assignment(dualsym::lambda_b_assignment(n)?, cap)?,
        Target::Is => {
            let t = CoxeterType::new(Family::A, n)?;
            let mut gens: Vec<PartialPerm> = t
                .labels()
                .iter()
                .map(|&i| PartialPerm::permutation(&t.generator(i)?))
                .collect::<Result<_>>()?;
            gens.push(PartialPerm::epsilon(&[1], n));
            closure_of(
                gens,
                std::sync::Arc::new(|a: &PartialPerm, b: &PartialPerm| a.mul(b).expect("equal sizes")),
                PartialPerm::identity(n),
                cap,
            )?
        }
        Target::Pb => {
            let chi = brauer::chi_assignment(n)?;
            let mut gens: Vec<PartialBrauerDiagram> =
                chi.generator_images().iter().map(BrauerDiagram::to_partial).collect();
            let mut mate: Vec<usize> = (0..2 * n).map(|p| (p + n) % (2 * n)).collect();
            if n > 0 {
                mate[0] = 0;
                mate[n] = n;
            }
            gens.push(PartialBrauerDiagram::new(n, mate)?);
            closure_of(
                gens,
                std::sync::Arc::new(|a: &PartialBrauerDiagram, b: &PartialBrauerDiagram| {
                    a.mul(b).expect("equal sizes").0
                }),
                PartialBrauerDiagram::identity(n),
                cap,
            )?
        }
        Target::Apb => {
            let chi = brauer::chi_b_assignment(n)?;
            let gens: Vec<ColoredPartialBrauer> = chi.generator_images().iter().map(brauer::to_apb).collect();
            closure_of(
                gens,
                std::sync::Arc::new(|a: &ColoredPartialBrauer, b: &ColoredPartialBrauer| {
                    a.mul(b).expect("equal sizes").0
                }),
                ColoredPartialBrauer::identity(n),
                cap,
            )?
        }
        Target::Istar => {
            return Err(Error::Unsupported(
                "no generating set is fixed for the full dual symmetric inverse monoid".into(),
            ))
        }
    };
    Ok(TargetClosure { target, n, result })
}

/// Type of the group whose singular Artin monoid maps onto `target`, if any.
pub fn target_family(target: Target) -> Option<Family> {
    match target {
        Target::IsTilde | Target::Br | Target::Fstar => Some(Family::A),
        Target::Sis | Target::BrB | Target::FBstar => Some(Family::B),
        _ => None,
    }
}

/// Homomorphisms out of the singular Artin monoid that the library can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Eta,
    Lambda,
    Phi,
    Chi,
    DeltaBar,
    BoolDelta,
    Upsilon,
}

impl MapKind {
    pub const ALL: [MapKind; 7] = [
        MapKind::Eta,
        MapKind::Lambda,
        MapKind::Phi,
        MapKind::Chi,
        MapKind::DeltaBar,
        MapKind::BoolDelta,
        MapKind::Upsilon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Eta => "eta",
            MapKind::Lambda => "lambda",
            MapKind::Phi => "phi",
            MapKind::Chi => "chi",
            MapKind::DeltaBar => "delta-bar",
            MapKind::BoolDelta => "bool-delta",
            MapKind::Upsilon => "upsilon",
        }
    }

    /// Maps defined only for the symmetric and hyperoctahedral families.
    pub fn is_diagrammatic(self) -> bool {
        matches!(self, MapKind::Eta | MapKind::Lambda | MapKind::Phi | MapKind::Chi)
    }

    /// Presentation relations of the image monoid, where known.
    pub fn image_family(self, family: Family) -> Option<RelationFamily> {
        match (self, family) {
            (MapKind::Lambda, Family::A) => Some(RelationFamily::Fstar),
            (MapKind::Phi, Family::A) => Some(RelationFamily::Rook),
            (MapKind::Chi, Family::A) => Some(RelationFamily::Brauer),
            (MapKind::Lambda, Family::B) => Some(RelationFamily::FBstar),
            (MapKind::Phi, Family::B) => Some(RelationFamily::Sis),
            (MapKind::Chi, Family::B) => Some(RelationFamily::BrauerB),
            _ => None,
        }
    }

    /// Parameter used when none is supplied.
    pub fn default_phi(self) -> Option<&'static str> {
        match self {
            MapKind::DeltaBar => Some("x-x^-1"),
            MapKind::BoolDelta => Some("{1,-1}"),
            MapKind::Upsilon => Some("v+x"),
            _ => None,
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "eta" | "bin" => MapKind::Eta,
            "lambda" | "fstar" | "fbstar" | "dualsym" => MapKind::Lambda,
            "phi" | "rook" | "is-tilde" | "istilde" | "sis" => MapKind::Phi,
            "chi" | "brauer" | "br" | "brb" | "brauer-b" => MapKind::Chi,
            "delta-bar" | "deltabar" | "groupalg" => MapKind::DeltaBar,
            "bool-delta" | "booldelta" | "boolean" => MapKind::BoolDelta,
            "upsilon" | "hecke" => MapKind::Upsilon,
            _ => return Err(Error::Parse(format!("unknown map `{s}`"))),
        })
    }
}

fn rank_of(map: MapKind, kind: CoxeterType) -> Result<usize> {
    match kind {
        CoxeterType::A(n) | CoxeterType::B(n) => Ok(n),
        CoxeterType::I2(_) => Err(Error::Unsupported(format!("{map} is defined for types A and B only"))),
    }
}

fn phi_text(map: MapKind, phi: Option<&str>) -> &str {
    phi.or(map.default_phi()).unwrap_or("")
}

/// Singular relations (plus the image presentation relations if `with_extra`) under `map`.
pub fn check_map_relations(map: MapKind, kind: CoxeterType, phi: Option<&str>, with_extra: bool) -> Result<RelationReport> {
    let matrix = kind.matrix();
    let mut set = singular_relations(&matrix);
    if with_extra {
        if let Some(fam) = map.image_family(kind.family()) {
            set = set.extend(extra_relations(fam, &matrix)?);
        }
    }
    let b = kind.family() == Family::B;
    let comps = matrix.odd_components();
    match map {
        MapKind::Eta if b => check_relations(&set, &eta_b_assignment(rank_of(map, kind)?)?),
        MapKind::Eta => check_relations(&set, &eta_assignment(rank_of(map, kind)?)?),
        MapKind::Lambda if b => check_relations(&set, &dualsym::lambda_b_assignment(rank_of(map, kind)?)?),
        MapKind::Lambda => check_relations(&set, &dualsym::lambda_assignment(rank_of(map, kind)?)?),
        MapKind::Phi if b => check_relations(&set, &rook::phi_b_assignment(rank_of(map, kind)?)?),
        MapKind::Phi => check_relations(&set, &rook::phi_assignment(rank_of(map, kind)?)?),
        MapKind::Chi if b => check_relations(&set, &brauer::chi_b_assignment(rank_of(map, kind)?)?),
        MapKind::Chi => check_relations(&set, &brauer::chi_assignment(rank_of(map, kind)?)?),
        MapKind::DeltaBar => {
            let p = PhiAssignment::parse(&comps, phi_text(map, phi))?;
            check_relations(&set, &delta_bar_assignment(kind, &p)?)
        }
        MapKind::BoolDelta => {
            let p = PhiSet::parse(&comps, phi_text(map, phi))?;
            check_relations(&set, &bool_delta_assignment(kind, &p)?)
        }
        MapKind::Upsilon => {
            let p = PhiAssignment::parse(&comps, phi_text(map, phi))?;
            check_relations(&set, &HeckeAlgebra::new(kind).upsilon_assignment(&p)?)
        }
    }
}

/// Image of `word` under `map`, as display text and JSON.
pub fn eval_map(map: MapKind, kind: CoxeterType, phi: Option<&str>, word: &SingularWord) -> Result<(String, Value)> {
    let matrix = kind.matrix();
    word.check_alphabet(&matrix)?;
    let b = kind.family() == Family::B;
    let comps = matrix.odd_components();
    Ok(match map {
        MapKind::Eta if b => {
            let e = eta_b_assignment(rank_of(map, kind)?)?.evaluate(word)?;
            (e.to_string(), e.to_json())
        }
        MapKind::Eta => {
            let e = eta_assignment(rank_of(map, kind)?)?.evaluate(word)?;
            (e.to_string(), e.to_json())
        }
        MapKind::Lambda if b => {
            let e = dualsym::lambda_b_eval(word, rank_of(map, kind)?)?;
            (e.to_string(), e.to_json())
        }
        MapKind::Lambda => {
            let e = dualsym::lambda_eval(word, rank_of(map, kind)?)?;
            (e.to_string(), e.to_json())
        }
        MapKind::Phi if b => {
            let e = rook::phi_b_eval(word, rank_of(map, kind)?)?;
            (e.to_string(), e.to_json())
        }
        MapKind::Phi => {
            let e = rook::phi_eval(word, rank_of(map, kind)?)?;
            (e.to_string(), e.to_json())
        }
        MapKind::Chi if b => {
            let (d, x) = brauer::chi_b_eval(word, rank_of(map, kind)?)?;
            (format!("{d}  k={} kp={}", x.k_closed, x.k_open), brauer::json_with_exponents(d.to_json(), &x))
        }
        MapKind::Chi => {
            let (d, x) = brauer::chi_eval(word, rank_of(map, kind)?)?;
            (format!("{d}  k={} kp={}", x.k_closed, x.k_open), brauer::json_with_exponents(d.to_json(), &x))
        }
        MapKind::DeltaBar => {
            let p = PhiAssignment::parse(&comps, phi_text(map, phi))?;
            let e = delta_bar_eval(word, kind, &p)?;
            (e.to_string(), e.to_json())
        }
        MapKind::BoolDelta => {
            let p = PhiSet::parse(&comps, phi_text(map, phi))?;
            let e = bool_delta_eval(word, kind, &p)?;
            (e.to_string(), e.to_json())
        }
        MapKind::Upsilon => {
            let p = PhiAssignment::parse(&comps, phi_text(map, phi))?;
            let e = HeckeAlgebra::new(kind).upsilon_eval(word, &p)?;
            (e.to_string(), e.to_json())
        }
    })
}

/// Outcome of the `Br^B_n ≅ APB_n` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApbReport {
    pub n: usize,
    pub exhaustive: bool,
    pub diagrams: usize,
    pub pairs: usize,
    pub round_trip_failures: usize,
    pub hom_failures: usize,
}

impl ApbReport {
    pub fn passed(&self) -> bool {
        self.round_trip_failures == 0 && self.hom_failures == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "exhaustive": self.exhaustive,
            "diagrams": self.diagrams,
            "pairs": self.pairs,
            "round_trip_failures": self.round_trip_failures,
            "hom_failures": self.hom_failures,
            "passed": self.passed(),
        })
    }
}

/// Round trip on every type-B Brauer diagram, homomorphy on all pairs or on `samples` seeded random pairs.
pub fn apb_iso_check(n: usize, samples: Option<usize>, seed: u64) -> Result<ApbReport> {
    let all = brauer::all_brauer_b(n);
    let round_trip_failures = all.par_iter().filter(|d| brauer::from_apb(&brauer::to_apb(d)) != **d).count();
    let hom = |a: &brauer::BrauerBDiagram, b: &brauer::BrauerBDiagram| -> Result<bool> {
        let ab = a.mul(b)?.0;
        Ok(brauer::to_apb(&ab) == brauer::to_apb(a).mul(&brauer::to_apb(b))?.0)
    };
    let pairs: Vec<(usize, usize)> = match samples {
        None => (0..all.len()).flat_map(|i| (0..all.len()).map(move |j| (i, j))).collect(),
        Some(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..k).map(|_| (rng.gen_range(0..all.len()), rng.gen_range(0..all.len()))).collect()
        }
    };
    let outcomes: Vec<Result<bool>> = pairs.par_iter().map(|&(i, j)| hom(&all[i], &all[j])).collect();
    let mut hom_failures = 0;
    for o in outcomes {
        if !o? {
            hom_failures += 1;
        }
    }
    Ok(ApbReport {
        n,
        exhaustive: samples.is_none(),
        diagrams: all.len(),
        pairs: pairs.len(),
        round_trip_failures,
        hom_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binrel::BoolMat;
    use crate::coxeter::GroupElement;
    use crate::words::{alphabet, random_words, singular_relations, Letter};
    use std::sync::Arc;

    #[test]
    fn oracle_examples() {
        let c = |t, n| count_oracle(t, n).unwrap();
        assert_eq!(c(Target::Is, 2), BigUint::from(7u32));
        assert_eq!(c(Target::Sis, 1), BigUint::from(3u32));
        assert_eq!(c(Target::Br, 3), BigUint::from(15u32));
        assert_eq!(c(Target::IsTilde, 3), BigUint::from(16u32));
        assert_eq!(c(Target::Sis, 3), BigUint::from(139u32));
        assert_eq!(c(Target::Br, 5), BigUint::from(945u32));
        assert_eq!(c(Target::Fstar, 4), BigUint::from(131u32));
        assert_eq!(c(Target::Fstar, 2), BigUint::from(3u32));
        assert_eq!(c(Target::Istar, 2), BigUint::from(3u32));
        assert_eq!(c(Target::Istar, 3), BigUint::from(25u32));
        assert_eq!(c(Target::Pb, 1), BigUint::from(2u32));
        assert_eq!(c(Target::Apb, 1), BigUint::from(3u32));
    }

    #[test]
    fn fstar_formula_matches_direct_construction() {
        for n in 2..=4 {
            assert_eq!(
                count_oracle(Target::Fstar, n).unwrap(),
                BigUint::from(dualsym::all_uniform(n).unwrap().len())
            );
        }
    }

    #[test]
    fn closure_examples() {
        let s1 = CoxeterType::A(2).generator(1).unwrap();
        let mul: MulFn<GroupElement> = Arc::new(|a, b| a.multiply(b).unwrap());
        let r = enumerate_closure(&[s1], &mul, CoxeterType::A(2).identity(), 10).unwrap();
        assert_eq!((r.size, r.cap_hit), (2, false));
        assert_eq!(enumerate_target(Target::Br, 3, DEFAULT_CAP).unwrap().result.size, 15);
        assert_eq!(enumerate_target(Target::Fstar, 2, DEFAULT_CAP).unwrap().result.size, 3);
        let capped = enumerate_target(Target::Br, 4, 10).unwrap();
        assert!(capped.result.cap_hit);
        assert_eq!(capped.result.size, 10);
        assert!(enumerate_closure(&[1u8], &(Arc::new(|a: &u8, b: &u8| a ^ b) as MulFn<u8>), 0, 0).is_err());
    }

    #[test]
    fn closure_matches_oracles() {
        for (t, max) in [
            (Target::Is, 3),
            (Target::IsTilde, 4),
            (Target::Sis, 3),
            (Target::Br, 4),
            (Target::Fstar, 4),
            (Target::FBstar, 2),
            (Target::BrB, 2),
            (Target::Apb, 2),
            (Target::Pb, 3),
        ] {
            for n in 2..=max {
                let got = enumerate_target(t, n, DEFAULT_CAP).unwrap().result.size;
                assert_eq!(BigUint::from(got), count_oracle(t, n).unwrap(), "{t} n={n}");
            }
        }
    }

    #[test]
    fn closure_is_order_independent() {
        let chi = brauer::chi_assignment(3).unwrap();
        let mut gens = chi.generator_images();
        let a = enumerate_closure(&gens, &chi.mul_fn(), chi.identity().clone(), 100).unwrap();
        gens.reverse();
        let b = enumerate_closure(&gens, &chi.mul_fn(), chi.identity().clone(), 100).unwrap();
        assert_eq!(a.elements, b.elements);
    }

    #[test]
    fn relation_reports() {
        let m = CoxeterType::A(3).matrix();
        let rels = singular_relations(&m);
        let eta = eta_assignment(3).unwrap();
        assert!(check_relations(&rels, &eta).unwrap().passed());
        // negative control: τ sent to the zero matrix breaks the mixed relations
        let broken = Assignment::involutive(
            "broken",
            vec![1, 2],
            vec![BoolMat::gen_s(1, 3).unwrap(), BoolMat::gen_s(2, 3).unwrap()],
            vec![BoolMat::zero(3), BoolMat::gen_bold_s(2, 3).unwrap()],
            BoolMat::identity(3),
            eta.mul_fn(),
        )
        .unwrap();
        let report = check_relations(&rels, &broken).unwrap();
        assert!(!report.failures.is_empty());
        assert!(report.failures.len() <= report.total);
        assert!(report.to_string().contains("failures"));
        let wrong_alphabet = RelationSet {
            name: "x".into(),
            pairs: vec![crate::words::Relation {
                label: "x".into(),
                lhs: SingularWord(vec![Letter::Tau(7)]),
                rhs: SingularWord::empty(),
            }],
        };
        assert!(check_relations(&wrong_alphabet, &eta).is_err());
    }

    #[test]
    fn commuting_squares() {
        for sq in Square::ALL {
            let n = 3;
            let t = CoxeterType::new(sq.family(), n).unwrap();
            let words = random_words(&alphabet(&t.matrix()), 10, 200, 17);
            let r = sq.run(n, &words).unwrap();
            assert!(r.passed(), "{}", r.name);
            assert_eq!(r.total, 200);
        }
        let words = random_words(&alphabet(&CoxeterType::A(3).matrix()), 5, 10, 1);
        let same = check_commutes("id", &words, |w| Ok(w.clone()), |w| Ok(w.clone())).unwrap();
        assert!(same.passed());
    }

    #[test]
    fn target_names_parse() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("nope".parse::<Target>().is_err());
    }

    #[test]
    fn map_dispatch_relations() {
        for map in MapKind::ALL {
            let r = check_map_relations(map, CoxeterType::A(3), None, true).unwrap();
            assert!(r.passed(), "{map}: {r}");
        }
        let r = check_map_relations(MapKind::Chi, CoxeterType::B(2), None, true).unwrap();
        assert!(r.passed(), "{r}");
        assert!(check_map_relations(MapKind::Eta, CoxeterType::I2(5), None, false).is_err());
        assert!(check_map_relations(MapKind::Upsilon, CoxeterType::I2(5), None, false).unwrap().passed());
        assert_eq!("brauer".parse::<MapKind>().unwrap(), MapKind::Chi);
    }

    #[test]
    fn map_dispatch_eval() {
        let w: SingularWord = "t1 s2".parse().unwrap();
        let (text, _) = eval_map(MapKind::Eta, CoxeterType::A(3), None, &w).unwrap();
        let direct = eta_assignment(3).unwrap().evaluate(&w).unwrap();
        assert_eq!(text, direct.to_string());
        let bad: SingularWord = "t5".parse().unwrap();
        assert!(eval_map(MapKind::Eta, CoxeterType::A(3), None, &bad).is_err());
    }

    #[test]
    fn apb_check_small() {
        let r = apb_iso_check(2, None, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs, r.diagrams * r.diagrams);
        assert!(apb_iso_check(3, Some(200), 7).unwrap().passed());
    }
}
