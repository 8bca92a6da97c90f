//! Words over the singular Artin generators, relation families, and evaluation into target monoids.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coxeter::CoxeterMatrix;
use crate::error::{Error, Result};

/// One letter: `σ_s`, `σ_s^-1` or `τ_s`, written `s<i>`, `S<i>`, `t<i>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Sigma(usize),
    SigmaInv(usize),
    Tau(usize),
}

impl Letter {
    pub fn node(&self) -> usize {
        match *self {
            Letter::Sigma(s) | Letter::SigmaInv(s) | Letter::Tau(s) => s,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Sigma(s) => write!(f, "s{s}"),
            Letter::SigmaInv(s) => write!(f, "S{s}"),
            Letter::Tau(s) => write!(f, "t{s}"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(tok: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad letter `{tok}` (expected s<i>, S<i> or t<i>)"));
        let mut chars = tok.chars();
        let head = chars.next().ok_or_else(bad)?;
        let idx: usize = chars.as_str().parse().map_err(|_| bad())?;
        match head {
            's' => Ok(Letter::Sigma(idx)),
            'S' => Ok(Letter::SigmaInv(idx)),
            't' => Ok(Letter::Tau(idx)),
            _ => Err(bad()),
        }
    }
}

/// A word in the free monoid on the singular Artin letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SingularWord(pub Vec<Letter>);

impl SingularWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SingularWord) -> SingularWord {
        SingularWord(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn tau_count(&self) -> usize {
        self.0.iter().filter(|l| matches!(l, Letter::Tau(_))).count()
    }

    /// Fails if a letter uses a node outside the matrix.
    pub fn check_alphabet(&self, m: &CoxeterMatrix) -> Result<()> {
        match self.0.iter().find(|l| !m.contains(l.node())) {
            Some(l) => Err(Error::Parameter(format!("letter {l} uses a node outside the matrix"))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for SingularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for SingularWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Self::empty());
        }
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(SingularWord)
    }
}

impl From<Vec<Letter>> for SingularWord {
    fn from(v: Vec<Letter>) -> Self {
        SingularWord(v)
    }
}

/// A named pair of words asserted equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub lhs: SingularWord,
    pub rhs: SingularWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub name: String,
    pub pairs: Vec<Relation>,
}

impl RelationSet {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pairs: Vec::new(),
        }
    }

    fn push(&mut self, label: String, lhs: Vec<Letter>, rhs: Vec<Letter>) {
        self.pairs.push(Relation {
            label,
            lhs: SingularWord(lhs),
            rhs: SingularWord(rhs),
        });
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Union of two sets, keeping this name.
    pub fn extend(mut self, other: RelationSet) -> Self {
        self.name = format!("{}+{}", self.name, other.name);
        self.pairs.extend(other.pairs);
        self
    }

    pub fn contains(&self, lhs: &SingularWord, rhs: &SingularWord) -> bool {
        self.pairs.iter().any(|r| &r.lhs == lhs && &r.rhs == rhs)
    }
}

use Letter::{Sigma as S, Tau as T};

/// `count` letters alternating between `a` and `b`, starting with `a`.
fn alternating(a: usize, b: usize, count: usize, letter: fn(usize) -> Letter) -> Vec<Letter> {
    (0..count)
        .map(|k| letter(if k % 2 == 0 { a } else { b }))
        .collect()
}

/// The defining relations of the singular Artin monoid.
pub fn singular_relations(m: &CoxeterMatrix) -> RelationSet {
    let mut rs = RelationSet::new("singular");
    let labels = m.labels();
    for (i, &s) in labels.iter().enumerate() {
        for &t in &labels[i + 1..] {
            let Some(mst) = m.m(s, t) else { continue };
            let k = mst as usize;
            rs.push(
                format!("braid({s},{t})"),
                alternating(s, t, k, S),
                alternating(t, s, k, S),
            );
            if k == 2 {
                rs.push(format!("commute-tau({s},{t})"), vec![T(s), T(t)], vec![T(t), T(s)]);
            }
        }
    }
    for &s in labels {
        for &t in labels {
            if s == t {
                continue;
            }
            let Some(mst) = m.m(s, t) else { continue };
            let k = mst as usize;
            let mid = alternating(t, s, k - 1, S);
            let mut lhs = vec![T(s)];
            lhs.extend(&mid);
            let mut rhs = mid;
            rhs.push(if k % 2 == 1 { T(t) } else { T(s) });
            rs.push(format!("mixed({s},{t})"), lhs, rhs);
        }
    }
    for &s in labels {
        rs.push(format!("tau-sigma({s})"), vec![T(s), S(s)], vec![S(s), T(s)]);
    }
    rs
}

/// Families of extra relations holding in the finite quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationFamily {
    Fstar,
    Rook,
    Sis,
    FBstar,
    Brauer,
    BrauerB,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 6] = [
        RelationFamily::Fstar,
        RelationFamily::Rook,
        RelationFamily::Sis,
        RelationFamily::FBstar,
        RelationFamily::Brauer,
        RelationFamily::BrauerB,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RelationFamily::Fstar => "FSTAR",
            RelationFamily::Rook => "ROOK",
            RelationFamily::Sis => "SIS",
            RelationFamily::FBstar => "FBSTAR",
            RelationFamily::Brauer => "BRAUER",
            RelationFamily::BrauerB => "BRAUER_B",
        }
    }

    /// Whether the family lives on type-B labels `0..n-1`.
    pub fn is_type_b(&self) -> bool {
        matches!(self, RelationFamily::Sis | RelationFamily::FBstar | RelationFamily::BrauerB)
    }
}

impl FromStr for RelationFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_uppercase().replace('-', "_");
        RelationFamily::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Checks that labels are `first..first+k` and returns `k`.
fn contiguous_from(m: &CoxeterMatrix, first: usize, family: &str) -> Result<usize> {
    let labels = m.labels();
    let ok = labels.iter().enumerate().all(|(i, &l)| l == first + i);
    if !ok || labels.is_empty() {
        return Err(Error::Parameter(format!(
            "{family} relations need node labels {first}, {}, ...",
            first + 1
        )));
    }
    Ok(labels.len())
}

/// Relations `s_i^2 = e`, `t_i^2 = t_i`, `t_i t_{i+1} = t_{i+1} t_i`, `t_i s_i = t_i` on `nodes`.
fn idempotent_relations(rs: &mut RelationSet, nodes: &[usize]) {
    for &i in nodes {
        rs.push(format!("s^2=e({i})"), vec![S(i), S(i)], vec![]);
        rs.push(format!("t^2=t({i})"), vec![T(i), T(i)], vec![T(i)]);
    }
    for w in nodes.windows(2) {
        let (i, j) = (w[0], w[1]);
        rs.push(format!("t-commute({i},{j})"), vec![T(i), T(j)], vec![T(j), T(i)]);
    }
    for &i in nodes {
        rs.push(format!("ts=t({i})"), vec![T(i), S(i)], vec![T(i)]);
    }
}

/// `t_i t_{i+2} = t_i t_{i+1} t_{i+2}` for all translates with `i >= first`.
fn rook_relations(rs: &mut RelationSet, nodes: &[usize]) {
    for w in nodes.windows(3) {
        let (a, b, c) = (w[0], w[1], w[2]);
        rs.push(format!("rook({a})"), vec![T(a), T(c)], vec![T(a), T(b), T(c)]);
    }
}

/// Brauer relations br.0, br.1, br.3, (br.2), br.4, br.5 on `nodes`.
fn brauer_relations(rs: &mut RelationSet, nodes: &[usize], with_br2: bool) {
    for &i in nodes {
        rs.push(format!("br0({i})"), vec![S(i), S(i)], vec![]);
        rs.push(format!("br1({i})"), vec![T(i), T(i)], vec![T(i)]);
        rs.push(format!("br3a({i})"), vec![T(i), S(i)], vec![T(i)]);
        rs.push(format!("br3b({i})"), vec![S(i), T(i)], vec![T(i)]);
    }
    for &i in nodes {
        for &j in nodes {
            if i.abs_diff(j) != 1 {
                continue;
            }
            if with_br2 {
                rs.push(format!("br2({i},{j})"), vec![T(i), T(j), T(i)], vec![T(i)]);
            }
            rs.push(format!("br4({i},{j})"), vec![T(i), T(j), S(i)], vec![T(i), S(j)]);
            rs.push(format!("br5({i},{j})"), vec![S(i), T(j), T(i)], vec![S(j), T(i)]);
        }
    }
}

/// Extra relations of a family, instantiated at every index translate of `m`.
pub fn extra_relations(family: RelationFamily, m: &CoxeterMatrix) -> Result<RelationSet> {
    let mut rs = RelationSet::new(family.name());
    match family {
        RelationFamily::Fstar | RelationFamily::Rook | RelationFamily::Brauer => {
            let k = contiguous_from(m, 1, family.name())?;
            let nodes: Vec<usize> = (1..=k).collect();
            match family {
                RelationFamily::Fstar => idempotent_relations(&mut rs, &nodes),
                RelationFamily::Rook => {
                    idempotent_relations(&mut rs, &nodes);
                    rook_relations(&mut rs, &nodes);
                }
                _ => brauer_relations(&mut rs, &nodes, true),
            }
        }
        RelationFamily::Sis | RelationFamily::FBstar | RelationFamily::BrauerB => {
            let k = contiguous_from(m, 0, family.name())?;
            if k < 2 {
                return Err(Error::Parameter(format!("{} needs at least two nodes", family.name())));
            }
            let nodes: Vec<usize> = (0..k).collect();
            match family {
                RelationFamily::Sis => {
                    idempotent_relations(&mut rs, &nodes);
                    rook_relations(&mut rs, &nodes[1..]);
                    rs.push("t0 s1 t0 = t1".into(), vec![T(0), S(1), T(0)], vec![T(1)]);
                }
                RelationFamily::FBstar => {
                    idempotent_relations(&mut rs, &nodes);
                    rs.push(
                        "fb-rel1".into(),
                        vec![S(1), T(0), S(1), T(0)],
                        vec![T(0), S(1), T(0), S(1)],
                    );
                    rs.push(
                        "fb-rel2".into(),
                        vec![S(0), T(1), S(0), T(1)],
                        vec![T(1), S(0), T(1), S(0)],
                    );
                    rs.push("fb-rel3".into(), vec![T(0), T(1)], vec![S(0), T(1), S(0), T(1)]);
                }
                _ => {
                    brauer_relations(&mut rs, &nodes[1..], false);
                    rs.push("Bbr0".into(), vec![T(0), T(0)], vec![T(0)]);
                    rs.push("Bbr1".into(), vec![T(1), T(0), T(1)], vec![T(1)]);
                    rs.push("Bbr15".into(), vec![T(1), S(0), T(1)], vec![T(1)]);
                    rs.push("Bbr2".into(), vec![T(0), T(1), T(0)], vec![T(0), S(1), T(0)]);
                    rs.push(
                        "Bbr3a".into(),
                        vec![S(1), T(0), S(1), T(0)],
                        vec![T(0), S(1), T(0)],
                    );
                    rs.push(
                        "Bbr3b".into(),
                        vec![T(0), S(1), T(0), S(1)],
                        vec![T(0), S(1), T(0)],
                    );
                    rs.push("Bbr4".into(), vec![T(1), T(0)], vec![T(1), S(1), T(0), S(1)]);
                    rs.push("Bbr5".into(), vec![T(0), T(1)], vec![S(1), T(0), S(1), T(1)]);
                    rs.push("Bbr6a".into(), vec![T(0), S(0)], vec![T(0)]);
                    rs.push("Bbr6b".into(), vec![S(0), T(0)], vec![T(0)]);
                }
            }
        }
    }
    Ok(rs)
}

/// Multiplication of a target monoid.
pub type MulFn<E> = Arc<dyn Fn(&E, &E) -> E + Send + Sync>;

/// Images of the generators in a target monoid together with its multiplication.
#[derive(Clone)]
pub struct Assignment<E> {
    name: String,
    labels: Vec<usize>,
    sigma: Vec<E>,
    sigma_inv: Vec<E>,
    tau: Vec<E>,
    identity: E,
    mul: MulFn<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> Assignment<E> {
    /// Builds an assignment; checks `σ_s σ_s^-1 = σ_s^-1 σ_s = e` for every node.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        labels: Vec<usize>,
        sigma: Vec<E>,
        sigma_inv: Vec<E>,
        tau: Vec<E>,
        identity: E,
        mul: MulFn<E>,
    ) -> Result<Self> {
        let k = labels.len();
        for (what, v) in [("sigma", &sigma), ("sigma_inv", &sigma_inv), ("tau", &tau)] {
            if v.len() != k {
                return Err(Error::Parameter(format!(
                    "{} {what} images for {k} generators",
                    v.len()
                )));
            }
        }
        for i in 0..k {
            if mul(&sigma[i], &sigma_inv[i]) != identity || mul(&sigma_inv[i], &sigma[i]) != identity
            {
                return Err(Error::Parameter(format!(
                    "image of sigma_{} is not inverted by the image of its inverse",
                    labels[i]
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            labels,
            sigma,
            sigma_inv,
            tau,
            identity,
            mul,
        })
    }

    /// Builds an assignment whose generator images are involutions (`σ^-1 ↦ σ`).
    pub fn involutive(
        name: impl Into<String>,
        labels: Vec<usize>,
        sigma: Vec<E>,
        tau: Vec<E>,
        identity: E,
        mul: MulFn<E>,
    ) -> Result<Self> {
        let inv = sigma.clone();
        Self::new(name, labels, sigma, inv, tau, identity, mul)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    pub fn mul(&self, a: &E, b: &E) -> E {
        (self.mul)(a, b)
    }

    pub fn mul_fn(&self) -> MulFn<E> {
        self.mul.clone()
    }

    pub fn image(&self, letter: Letter) -> Result<&E> {
        let idx = self
            .labels
            .iter()
            .position(|&l| l == letter.node())
            .ok_or_else(|| Error::MissingGenerator(letter.to_string()))?;
        Ok(match letter {
            Letter::Sigma(_) => &self.sigma[idx],
            Letter::SigmaInv(_) => &self.sigma_inv[idx],
            Letter::Tau(_) => &self.tau[idx],
        })
    }

    /// Left-to-right product of the letter images.
    pub fn evaluate(&self, w: &SingularWord) -> Result<E> {
        let mut acc = self.identity.clone();
        for &l in w.letters() {
            acc = (self.mul)(&acc, self.image(l)?);
        }
        Ok(acc)
    }

    /// Images of `σ_s` and `τ_s` for every node, in label order.
    pub fn generator_images(&self) -> Vec<E> {
        self.sigma.iter().chain(&self.tau).cloned().collect()
    }

    /// Same assignment with the images transformed elementwise.
    pub fn map<F: Clone + PartialEq + fmt::Debug>(
        &self,
        name: impl Into<String>,
        f: impl Fn(&E) -> F,
        identity: F,
        mul: MulFn<F>,
    ) -> Result<Assignment<F>> {
        Assignment::new(
            name,
            self.labels.clone(),
            self.sigma.iter().map(&f).collect(),
            self.sigma_inv.iter().map(&f).collect(),
            self.tau.iter().map(&f).collect(),
            identity,
            mul,
        )
    }
}

impl<E> fmt::Debug for Assignment<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Assignment")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .finish()
    }
}

/// All letters over the nodes of `m`.
pub fn alphabet(m: &CoxeterMatrix) -> Vec<Letter> {
    m.labels()
        .iter()
        .flat_map(|&s| [Letter::Sigma(s), Letter::SigmaInv(s), Letter::Tau(s)])
        .collect()
}

/// `count` words with uniform lengths in `0..=max_len` and uniform letters; deterministic in `seed`.
pub fn random_words(alphabet: &[Letter], max_len: usize, count: usize, seed: u64) -> Vec<SingularWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            if alphabet.is_empty() {
                return SingularWord::empty();
            }
            let len = rng.gen_range(0..=max_len);
            SingularWord(
                (0..len)
                    .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{standard_matrix, Family};
    use proptest::prelude::*;

    fn w(s: &str) -> SingularWord {
        s.parse().unwrap()
    }

    fn dihedral(m: usize) -> CoxeterMatrix {
        standard_matrix(Family::I2, m).unwrap()
    }

    #[test]
    fn word_text_round_trip() {
        let x = w("s1 S2 t0");
        assert_eq!(x.0, vec![Letter::Sigma(1), Letter::SigmaInv(2), Letter::Tau(0)]);
        assert_eq!(x.to_string(), "s1 S2 t0");
        assert_eq!(w(""), SingularWord::empty());
        assert_eq!(w("e"), SingularWord::empty());
        assert!("x1".parse::<SingularWord>().is_err());
        assert!("s".parse::<SingularWord>().is_err());
    }

    #[test]
    fn mixed_relation_shapes_are_pinned() {
        let r2 = singular_relations(&dihedral(2));
        assert!(r2.contains(&w("t1 s2"), &w("s2 t1")));
        assert!(r2.contains(&w("t1 t2"), &w("t2 t1")));
        assert!(r2.contains(&w("s1 s2"), &w("s2 s1")));

        let r3 = singular_relations(&dihedral(3));
        assert!(r3.contains(&w("t1 s2 s1"), &w("s2 s1 t2")));
        assert!(r3.contains(&w("t2 s1 s2"), &w("s1 s2 t1")));
        assert!(!r3.pairs.iter().any(|r| r.label.starts_with("commute-tau")));

        let r4 = singular_relations(&dihedral(4));
        assert!(r4.contains(&w("t1 s2 s1 s2"), &w("s2 s1 s2 t1")));
        assert!(r4.contains(&w("s1 s2 s1 s2"), &w("s2 s1 s2 s1")));

        let r5 = singular_relations(&dihedral(5));
        assert!(r5.contains(&w("t1 s2 s1 s2 s1"), &w("s2 s1 s2 s1 t2")));
        assert!(r5.contains(&w("t1 s1"), &w("s1 t1")));
    }

    #[test]
    fn relation_counts() {
        // one braid, two mixed, two tau-sigma; plus one commutation when m = 2.
        assert_eq!(singular_relations(&dihedral(3)).len(), 5);
        assert_eq!(singular_relations(&dihedral(2)).len(), 6);
    }

    #[test]
    fn infinite_labels_are_skipped() {
        let m: CoxeterMatrix = "1 inf; inf 1".parse().unwrap();
        let rs = singular_relations(&m);
        assert_eq!(rs.len(), 2);
        assert!(rs.pairs.iter().all(|r| r.label.starts_with("tau-sigma")));
    }

    #[test]
    fn family_examples() {
        let a2 = standard_matrix(Family::A, 3).unwrap();
        let f = extra_relations(RelationFamily::Fstar, &a2).unwrap();
        assert!(f.contains(&w("t1 s1"), &w("t1")));
        let b = extra_relations(RelationFamily::Brauer, &a2).unwrap();
        assert!(b.contains(&w("t1 t2 t1"), &w("t1")));
        let b2 = standard_matrix(Family::B, 2).unwrap();
        let bb = extra_relations(RelationFamily::BrauerB, &b2).unwrap();
        assert!(bb.contains(&w("t1 t0 t1"), &w("t1")));
        let rook = extra_relations(RelationFamily::Rook, &standard_matrix(Family::A, 4).unwrap()).unwrap();
        assert!(rook.contains(&w("t1 t3"), &w("t1 t2 t3")));
        let sis = extra_relations(RelationFamily::Sis, &b2).unwrap();
        assert!(sis.contains(&w("t0 s1 t0"), &w("t1")));
        assert!(extra_relations(RelationFamily::Sis, &a2).is_err());
        assert!(extra_relations(RelationFamily::Fstar, &b2).is_err());
        assert!("NOPE".parse::<RelationFamily>().is_err());
        assert_eq!("brauer-b".parse::<RelationFamily>().unwrap(), RelationFamily::BrauerB);
    }

    fn free_assignment() -> Assignment<Vec<Letter>> {
        // Free monoid on letters; sigma and its inverse cancel only formally,
        // so use the trivial group for sigma.
        let labels = vec![1, 2];
        let mul: MulFn<Vec<Letter>> = Arc::new(|a: &Vec<Letter>, b: &Vec<Letter>| {
            a.iter().chain(b).copied().collect()
        });
        Assignment::new(
            "free",
            labels,
            vec![vec![], vec![]],
            vec![vec![], vec![]],
            vec![vec![Letter::Tau(1)], vec![Letter::Tau(2)]],
            vec![],
            mul,
        )
        .unwrap()
    }

    #[test]
    fn evaluation_basics() {
        let a = free_assignment();
        assert_eq!(a.evaluate(&SingularWord::empty()).unwrap(), Vec::<Letter>::new());
        assert_eq!(a.evaluate(&w("s1 S1")).unwrap(), Vec::<Letter>::new());
        assert_eq!(a.evaluate(&w("t2 s1 t1")).unwrap(), vec![Letter::Tau(2), Letter::Tau(1)]);
        assert!(matches!(a.evaluate(&w("t3")), Err(Error::MissingGenerator(_))));
    }

    #[test]
    fn assignment_rejects_non_inverse() {
        let mul: MulFn<i64> = Arc::new(|a: &i64, b: &i64| a * b);
        assert!(Assignment::new("bad", vec![1], vec![2], vec![2], vec![0], 1, mul).is_err());
    }

    #[test]
    fn random_words_are_reproducible() {
        let a2 = standard_matrix(Family::A, 3).unwrap();
        let alpha = alphabet(&a2);
        assert!(random_words(&alpha, 0, 5, 3).iter().all(SingularWord::is_empty));
        assert_eq!(random_words(&alpha, 4, 2, 1), random_words(&alpha, 4, 2, 1));
        let b2 = standard_matrix(Family::B, 2).unwrap();
        let ws = random_words(&alphabet(&b2), 6, 100, 7);
        assert_eq!(ws.len(), 100);
        assert!(ws.iter().all(|x| x.len() <= 6));
        assert!(ws.iter().all(|x| x.check_alphabet(&b2).is_ok()));
    }

    proptest! {
        #[test]
        fn evaluation_is_multiplicative(seed in 0u64..1000) {
            let a = free_assignment();
            let m = standard_matrix(Family::A, 3).unwrap();
            let ws = random_words(&alphabet(&m), 8, 2, seed);
            let uv = ws[0].concat(&ws[1]);
            let lhs = a.evaluate(&uv).unwrap();
            let rhs = a.mul(&a.evaluate(&ws[0]).unwrap(), &a.evaluate(&ws[1]).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parse_display_round_trip(seed in 0u64..1000) {
            let m = standard_matrix(Family::B, 3).unwrap();
            for word in random_words(&alphabet(&m), 10, 3, seed) {
                prop_assert_eq!(word.to_string().parse::<SingularWord>().unwrap(), word);
            }
        }
    }
}
