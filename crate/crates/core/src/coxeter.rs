//! Coxeter matrices, odd skeletons, and element arithmetic in types A, B and I2(m).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};

/// Coxeter family with concrete group arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    I2,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "I2" | "I" => Ok(Family::I2),
            _ => Err(Error::Parse(format!("unknown Coxeter family `{s}`"))),
        }
    }
}

/// A finite Coxeter group with a concrete realization.
///
/// `A(n)` is the symmetric group on `n` letters (generators `1..n-1`),
/// `B(n)` the signed permutations of `n` letters (generators `0..n-1`, `0` special),
/// `I2(m)` the dihedral group of order `2m` (generators `1`, `2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    I2(u32),
}

impl CoxeterType {
    pub fn new(family: Family, k: usize) -> Result<Self> {
        let t = match family {
            Family::A => CoxeterType::A(k),
            Family::B => CoxeterType::B(k),
            Family::I2 => CoxeterType::I2(
                u32::try_from(k).map_err(|_| Error::Parameter(format!("m = {k} too large")))?,
            ),
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            CoxeterType::A(n) | CoxeterType::B(n) if n < 2 => Err(Error::Parameter(format!(
                "rank parameter n = {n} must be at least 2"
            ))),
            CoxeterType::I2(m) if m < 2 => {
                Err(Error::Parameter(format!("m = {m} must be at least 2")))
            }
            _ => Ok(()),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            CoxeterType::A(_) => Family::A,
            CoxeterType::B(_) => Family::B,
            CoxeterType::I2(_) => Family::I2,
        }
    }

    /// Generator labels in increasing order.
    pub fn labels(&self) -> Vec<usize> {
        match *self {
            CoxeterType::A(n) => (1..n).collect(),
            CoxeterType::B(n) => (0..n).collect(),
            CoxeterType::I2(_) => vec![1, 2],
        }
    }

    pub fn matrix(&self) -> CoxeterMatrix {
        let labels = self.labels();
        let k = labels.len();
        let mut entries = vec![vec![Some(2u32); k]; k];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Some(1);
        }
        let mut set = |i: usize, j: usize, v: u32| {
            entries[i][j] = Some(v);
            entries[j][i] = Some(v);
        };
        match *self {
            CoxeterType::A(_) => (0..k.saturating_sub(1)).for_each(|i| set(i, i + 1, 3)),
            CoxeterType::B(_) => {
                set(0, 1, 4);
                (1..k - 1).for_each(|i| set(i, i + 1, 3));
            }
            CoxeterType::I2(m) => set(0, 1, m),
        }
        CoxeterMatrix {
            labels,
            entries,
            kind: Some(*self),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match *self {
            CoxeterType::A(n) => GroupElement::Perm((1..=n as u32).collect()),
            CoxeterType::B(n) => GroupElement::SignedPerm((1..=n as i32).collect()),
            CoxeterType::I2(m) => GroupElement::Dihedral { m, len: 0, lead: 0 },
        }
    }

    pub fn generator(&self, label: usize) -> Result<GroupElement> {
        if !self.labels().contains(&label) {
            return Err(Error::Parameter(format!(
                "generator {label} does not exist in {self}"
            )));
        }
        self.identity().mul_gen(label)
    }

    /// Element given by a word in generator labels.
    pub fn element_from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut w = self.identity();
        for &s in word {
            if !self.labels().contains(&s) {
                return Err(Error::Parameter(format!("generator {s} does not exist in {self}")));
            }
            w = w.mul_gen(s)?;
        }
        Ok(w)
    }

    /// All group elements, sorted by length and then by representation.
    pub fn elements(&self) -> Vec<GroupElement> {
        let labels = self.labels();
        let mut seen = BTreeSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for &s in &labels {
                let ws = w.mul_gen(s).expect("valid generator");
                if seen.insert(ws.clone()) {
                    queue.push_back(ws);
                }
            }
        }
        let mut all: Vec<_> = seen.into_iter().collect();
        all.sort_by_cached_key(|w| (w.length(), w.clone()));
        all
    }

    /// Group order by formula.
    pub fn order(&self) -> u64 {
        match *self {
            CoxeterType::A(n) => (1..=n as u64).product(),
            CoxeterType::B(n) => (1..=n as u64).product::<u64>() << n,
            CoxeterType::I2(m) => 2 * m as u64,
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "S{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Symmetric matrix `m_{s,t}` with entries in `{1, 2, ...} ∪ {∞}`; `None` encodes `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    labels: Vec<usize>,
    entries: Vec<Vec<Option<u32>>>,
    kind: Option<CoxeterType>,
}

/// Matrix of type `A_{n-1}`, `B_n` or `I2(m)`.
pub fn standard_matrix(family: Family, n_or_m: usize) -> Result<CoxeterMatrix> {
    Ok(CoxeterType::new(family, n_or_m)?.matrix())
}

impl CoxeterMatrix {
    pub fn new(labels: Vec<usize>, entries: Vec<Vec<Option<u32>>>) -> Result<Self> {
        let k = labels.len();
        if labels.iter().collect::<BTreeSet<_>>().len() != k {
            return Err(Error::Parameter("duplicate node labels".into()));
        }
        if entries.len() != k || entries.iter().any(|r| r.len() != k) {
            return Err(Error::Parameter("matrix is not square of the label count".into()));
        }
        for i in 0..k {
            if entries[i][i] != Some(1) {
                return Err(Error::Parameter(format!("diagonal entry {i} is not 1")));
            }
            for j in 0..k {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Parameter(format!("entries ({i},{j}) not symmetric")));
                }
                if i != j && matches!(entries[i][j], Some(v) if v < 2) {
                    return Err(Error::Parameter(format!("off-diagonal entry ({i},{j}) below 2")));
                }
            }
        }
        Ok(Self {
            labels,
            entries,
            kind: None,
        })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// The concrete group type, if the matrix came from a standard family.
    pub fn kind(&self) -> Option<CoxeterType> {
        self.kind
    }

    pub fn require_kind(&self) -> Result<CoxeterType> {
        self.kind.ok_or_else(|| {
            Error::Unsupported("group arithmetic needs a matrix of type A, B or I2".into())
        })
    }

    pub fn index_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn contains(&self, label: usize) -> bool {
        self.index_of(label).is_some()
    }

    /// `m_{s,t}` by labels; `None` is `∞`.
    pub fn m(&self, s: usize, t: usize) -> Option<u32> {
        let i = self.index_of(s).expect("label in matrix");
        let j = self.index_of(t).expect("label in matrix");
        self.entries[i][j]
    }

    pub fn odd_components(&self) -> OddComponents {
        odd_components(self)
    }
}

impl FromStr for CoxeterMatrix {
    type Err = Error;

    /// Either `type=A n=4`, `type=I2 m=5`, or rows of integers (`inf` for `∞`)
    /// separated by newlines or `;`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.starts_with("type=") {
            let mut family = None;
            let mut size = None;
            for tok in trimmed.split_whitespace() {
                let (k, v) = tok
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=value, got `{tok}`")))?;
                match k {
                    "type" => family = Some(v.parse::<Family>()?),
                    "n" | "m" => {
                        size = Some(v.parse::<usize>().map_err(|_| {
                            Error::Parse(format!("bad size `{v}`"))
                        })?)
                    }
                    _ => return Err(Error::Parse(format!("unknown key `{k}`"))),
                }
            }
            let family = family.ok_or_else(|| Error::Parse("missing type".into()))?;
            let size = size.ok_or_else(|| Error::Parse("missing n or m".into()))?;
            return standard_matrix(family, size);
        }
        let rows: Vec<Vec<Option<u32>>> = trimmed
            .split(['\n', ';'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.split_whitespace()
                    .map(|t| match t {
                        "inf" | "∞" => Ok(None),
                        _ => t
                            .parse::<u32>()
                            .map(Some)
                            .map_err(|_| Error::Parse(format!("bad matrix entry `{t}`"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let labels = (1..=rows.len()).collect();
        CoxeterMatrix::new(labels, rows)
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row
                .iter()
                .map(|e| e.map_or_else(|| "inf".to_string(), |v| v.to_string()))
                .collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Connected components of the odd skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddComponents {
    components: Vec<Vec<usize>>,
    component_of: BTreeMap<usize, usize>,
}

impl OddComponents {
    /// Components as sorted label lists, ordered by smallest label.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Component id `K_s` of a node.
    pub fn component_of(&self, s: usize) -> Option<usize> {
        self.component_of.get(&s).copied()
    }
}

/// Components of the graph with an edge `s - t` whenever `m_{s,t}` is odd and finite and `> 1`.
pub fn odd_components(m: &CoxeterMatrix) -> OddComponents {
    let k = m.labels.len();
    let mut uf = UnionFind::<usize>::new(k);
    for i in 0..k {
        for j in (i + 1)..k {
            if let Some(v) = m.entries[i][j] {
                if v > 1 && v % 2 == 1 {
                    uf.union(i, j);
                }
            }
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..k {
        by_root.entry(uf.find(i)).or_default().push(m.labels[i]);
    }
    let mut components: Vec<Vec<usize>> = by_root
        .into_values()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    components.sort();
    let component_of = components
        .iter()
        .enumerate()
        .flat_map(|(id, c)| c.iter().map(move |&s| (s, id)))
        .collect();
    OddComponents {
        components,
        component_of,
    }
}

/// Concrete element of a finite Coxeter group.
///
/// `Perm` and `SignedPerm` store one-line notation (values `1..n`, signed for type B).
/// `Dihedral` stores the length of an alternating reduced word and its first letter
/// (`0` for the identity; the longest element always uses `1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Perm(Vec<u32>),
    SignedPerm(Vec<i32>),
    Dihedral { m: u32, len: u32, lead: u8 },
}

fn other(lead: u8) -> u8 {
    3 - lead
}

fn dihedral_word(len: u32, lead: u8) -> Vec<usize> {
    let mut cur = lead;
    (0..len)
        .map(|_| {
            let c = cur;
            cur = other(cur);
            c as usize
        })
        .collect()
}

impl GroupElement {
    pub fn coxeter_type(&self) -> CoxeterType {
        match self {
            GroupElement::Perm(p) => CoxeterType::A(p.len()),
            GroupElement::SignedPerm(p) => CoxeterType::B(p.len()),
            GroupElement::Dihedral { m, .. } => CoxeterType::I2(*m),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(p) => p.iter().enumerate().all(|(i, &v)| v as usize == i + 1),
            GroupElement::SignedPerm(p) => {
                p.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
            }
            GroupElement::Dihedral { len, .. } => *len == 0,
        }
    }

    /// Right multiplication by the generator with the given label.
    pub fn mul_gen(&self, s: usize) -> Result<GroupElement> {
        let bad = || Error::Parameter(format!("generator {s} out of range for {}", self.coxeter_type()));
        match self {
            GroupElement::Perm(p) => {
                if s == 0 || s >= p.len() {
                    return Err(bad());
                }
                let mut q = p.clone();
                q.swap(s - 1, s);
                Ok(GroupElement::Perm(q))
            }
            GroupElement::SignedPerm(p) => {
                if s >= p.len() {
                    return Err(bad());
                }
                let mut q = p.clone();
                if s == 0 {
                    q[0] = -q[0];
                } else {
                    q.swap(s - 1, s);
                }
                Ok(GroupElement::SignedPerm(q))
            }
            &GroupElement::Dihedral { m, len, lead } => {
                if s != 1 && s != 2 {
                    return Err(bad());
                }
                let s = s as u8;
                let (nlen, nlead) = if len == 0 {
                    (1, s)
                } else if len == m {
                    (m - 1, if m % 2 == 0 { other(s) } else { s })
                } else {
                    let last = if len % 2 == 1 { lead } else { other(lead) };
                    if last == s {
                        (len - 1, if len == 1 { 0 } else { lead })
                    } else {
                        (len + 1, lead)
                    }
                };
                Ok(GroupElement::dihedral(m, nlen, nlead))
            }
        }
    }

    fn dihedral(m: u32, len: u32, lead: u8) -> GroupElement {
        let lead = match len {
            0 => 0,
            l if l == m => 1,
            _ => lead,
        };
        GroupElement::Dihedral { m, len, lead }
    }

    pub fn multiply(&self, other_el: &GroupElement) -> Result<GroupElement> {
        match (self, other_el) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) if a.len() == b.len() => Ok(
                GroupElement::Perm(b.iter().map(|&j| a[j as usize - 1]).collect()),
            ),
            (GroupElement::SignedPerm(a), GroupElement::SignedPerm(b)) if a.len() == b.len() => {
                Ok(GroupElement::SignedPerm(
                    b.iter()
                        .map(|&j| j.signum() * a[j.unsigned_abs() as usize - 1])
                        .collect(),
                ))
            }
            (GroupElement::Dihedral { m: m1, .. }, GroupElement::Dihedral { m: m2, .. })
                if m1 == m2 =>
            {
                let mut w = self.clone();
                for s in other_el.reduced_word() {
                    w = w.mul_gen(s)?;
                }
                Ok(w)
            }
            _ => Err(Error::GroupMismatch),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => {
                let mut q = vec![0; p.len()];
                for (i, &v) in p.iter().enumerate() {
                    q[v as usize - 1] = i as u32 + 1;
                }
                GroupElement::Perm(q)
            }
            GroupElement::SignedPerm(p) => {
                let mut q = vec![0; p.len()];
                for (i, &v) in p.iter().enumerate() {
                    q[v.unsigned_abs() as usize - 1] = v.signum() * (i as i32 + 1);
                }
                GroupElement::SignedPerm(q)
            }
            &GroupElement::Dihedral { m, len, lead } => {
                let last = if len % 2 == 1 { lead } else { other(lead) };
                GroupElement::dihedral(m, len, last)
            }
        }
    }

    pub fn is_right_descent(&self, s: usize) -> bool {
        match self {
            GroupElement::Perm(p) => s >= 1 && s < p.len() && p[s - 1] > p[s],
            GroupElement::SignedPerm(p) => {
                if s == 0 {
                    p[0] < 0
                } else {
                    s < p.len() && p[s - 1] > p[s]
                }
            }
            &GroupElement::Dihedral { m, len, lead } => {
                let last = if len % 2 == 1 { lead } else { other(lead) };
                (s == 1 || s == 2) && len > 0 && (len == m || last as usize == s)
            }
        }
    }

    fn smallest_descent(&self) -> Option<usize> {
        self.coxeter_type()
            .labels()
            .into_iter()
            .find(|&s| self.is_right_descent(s))
    }

    /// Reduced expression obtained by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        if let &GroupElement::Dihedral { m, len, lead } = self {
            if len < m {
                return dihedral_word(len, lead);
            }
        }
        let mut word = Vec::new();
        let mut w = self.clone();
        while let Some(s) = w.smallest_descent() {
            word.push(s);
            w = w.mul_gen(s).expect("descent is a generator");
        }
        word.reverse();
        word
    }

    pub fn length(&self) -> usize {
        match self {
            GroupElement::Dihedral { len, .. } => *len as usize,
            _ => self.reduced_word().len(),
        }
    }

    /// Permutation matrix convention: `w` maps `j` to `w(j)`.
    pub fn apply(&self, j: i32) -> i32 {
        match self {
            GroupElement::Perm(p) => p[j as usize - 1] as i32,
            GroupElement::SignedPerm(p) => j.signum() * p[j.unsigned_abs() as usize - 1],
            GroupElement::Dihedral { .. } => panic!("dihedral elements have no point action"),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => {
                let v: Vec<String> = p.iter().map(u32::to_string).collect();
                write!(f, "[{}]", v.join(","))
            }
            GroupElement::SignedPerm(p) => {
                let v: Vec<String> = p.iter().map(i32::to_string).collect();
                write!(f, "[{}]", v.join(","))
            }
            GroupElement::Dihedral { .. } => {
                let w = self.reduced_word();
                if w.is_empty() {
                    write!(f, "e")
                } else {
                    let v: Vec<String> = w.iter().map(|s| format!("s{s}")).collect();
                    write!(f, "{}", v.join(""))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    /// Lengths by breadth-first search over the Cayley graph.
    fn bfs_lengths(t: CoxeterType) -> HashMap<GroupElement, usize> {
        let mut dist = HashMap::new();
        dist.insert(t.identity(), 0);
        let mut queue = VecDeque::from([t.identity()]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for s in t.labels() {
                let ws = w.mul_gen(s).unwrap();
                if !dist.contains_key(&ws) {
                    dist.insert(ws.clone(), d + 1);
                    queue.push_back(ws);
                }
            }
        }
        dist
    }

    fn small_types() -> Vec<CoxeterType> {
        let mut v = vec![];
        for n in 2..=4 {
            v.push(CoxeterType::A(n));
            v.push(CoxeterType::B(n));
        }
        for m in 2..=7 {
            v.push(CoxeterType::I2(m));
        }
        v
    }

    #[test]
    fn standard_matrices() {
        let a = standard_matrix(Family::A, 3).unwrap();
        assert_eq!(a.labels(), &[1, 2]);
        assert_eq!(a.m(1, 2), Some(3));
        let b = standard_matrix(Family::B, 2).unwrap();
        assert_eq!(b.m(0, 1), Some(4));
        let i = standard_matrix(Family::I2, 2).unwrap();
        assert_eq!(i.m(1, 2), Some(2));
        let b4 = standard_matrix(Family::B, 4).unwrap();
        assert_eq!(b4.m(1, 2), Some(3));
        assert_eq!(b4.m(0, 2), Some(2));
        assert!(standard_matrix(Family::A, 1).is_err());
        assert!(standard_matrix(Family::I2, 1).is_err());
    }

    #[test]
    fn odd_skeletons() {
        let a = standard_matrix(Family::A, 5).unwrap().odd_components();
        assert_eq!(a.components(), &[vec![1, 2, 3, 4]]);
        let b = standard_matrix(Family::B, 4).unwrap().odd_components();
        assert_eq!(b.components(), &[vec![0], vec![1, 2, 3]]);
        assert_eq!(b.component_of(0), Some(0));
        assert_eq!(b.component_of(3), Some(1));
        let i4 = standard_matrix(Family::I2, 4).unwrap().odd_components();
        assert_eq!(i4.len(), 2);
        let i5 = standard_matrix(Family::I2, 5).unwrap().odd_components();
        assert_eq!(i5.len(), 1);
    }

    #[test]
    fn odd_skeleton_with_infinity() {
        let m: CoxeterMatrix = "1 3 inf; 3 1 2; inf 2 1".parse().unwrap();
        let c = m.odd_components();
        assert_eq!(c.components(), &[vec![1, 2], vec![3]]);
    }

    #[test]
    fn matrix_parsing() {
        let m: CoxeterMatrix = "type=A n=4".parse().unwrap();
        assert_eq!(m.kind(), Some(CoxeterType::A(4)));
        let m: CoxeterMatrix = "type=I2 m=5".parse().unwrap();
        assert_eq!(m.m(1, 2), Some(5));
        assert!("1 3; 2 1".parse::<CoxeterMatrix>().is_err());
        assert!("1 1; 1 1".parse::<CoxeterMatrix>().is_err());
        assert!("type=C n=3".parse::<CoxeterMatrix>().is_err());
        let m: CoxeterMatrix = "1 4\n4 1".parse().unwrap();
        assert_eq!(m.to_string(), "1 4\n4 1");
        assert_eq!(m.kind(), None);
    }

    #[test]
    fn group_laws_examples() {
        let a3 = CoxeterType::A(3);
        let s1 = a3.generator(1).unwrap();
        let s2 = a3.generator(2).unwrap();
        assert!(s1.multiply(&s1).unwrap().is_identity());
        let l = s1.multiply(&s2).unwrap().multiply(&s1).unwrap();
        let r = s2.multiply(&s1).unwrap().multiply(&s2).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.length(), 3);

        let b2 = CoxeterType::B(2);
        let x = b2.element_from_word(&[0, 1, 0, 1]).unwrap();
        let y = b2.element_from_word(&[1, 0, 1, 0]).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.length(), 4);
        assert_eq!(x, GroupElement::SignedPerm(vec![-1, -2]));
        assert!(s1.multiply(&b2.identity()).is_err());
    }

    #[test]
    fn generators_in_one_line() {
        assert_eq!(CoxeterType::A(3).generator(1).unwrap(), GroupElement::Perm(vec![2, 1, 3]));
        assert_eq!(CoxeterType::B(2).generator(0).unwrap(), GroupElement::SignedPerm(vec![-1, 2]));
        assert_eq!(CoxeterType::B(3).generator(2).unwrap(), GroupElement::SignedPerm(vec![1, 3, 2]));
        assert!(CoxeterType::A(3).generator(3).is_err());
        assert!(CoxeterType::A(3).generator(0).is_err());
    }

    #[test]
    fn identity_has_empty_word() {
        for t in small_types() {
            assert_eq!(t.identity().length(), 0);
            assert!(t.identity().reduced_word().is_empty());
        }
    }

    #[test]
    fn lengths_match_bfs() {
        for t in small_types() {
            let dist = bfs_lengths(t);
            assert_eq!(dist.len() as u64, t.order(), "{t}");
            for (w, d) in &dist {
                assert_eq!(w.length(), *d, "{t} {w}");
                let word = w.reduced_word();
                assert_eq!(word.len(), *d);
                assert_eq!(&t.element_from_word(&word).unwrap(), w);
                for s in t.labels() {
                    let ws = w.mul_gen(s).unwrap();
                    let dd = dist[&ws];
                    assert!(dd + 1 == *d || dd == *d + 1);
                    assert_eq!(w.is_right_descent(s), dd < *d, "{t} {w} s{s}");
                }
            }
            assert_eq!(t.elements().len(), dist.len());
        }
    }

    #[test]
    fn longest_elements() {
        assert_eq!(CoxeterType::B(2).elements().last().unwrap().length(), 4);
        assert_eq!(CoxeterType::B(3).elements().last().unwrap().length(), 9);
        assert_eq!(CoxeterType::A(4).elements().last().unwrap().length(), 6);
        assert_eq!(CoxeterType::I2(5).elements().last().unwrap().length(), 5);
    }

    #[test]
    fn signed_length_formula() {
        // inversions plus the sum of |negative values| (negatives: -w(j)).
        for w in CoxeterType::B(4).elements() {
            let GroupElement::SignedPerm(p) = &w else { unreachable!() };
            let n = p.len();
            let mut inv = 0i32;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                    if p[i] + p[j] < 0 {
                        inv += 1;
                    }
                }
            }
            let neg = p.iter().filter(|&&v| v < 0).count() as i32;
            assert_eq!(w.length() as i32, inv + neg);
        }
    }

    #[test]
    fn dihedral_display() {
        let t = CoxeterType::I2(4);
        assert_eq!(t.identity().to_string(), "e");
        assert_eq!(t.element_from_word(&[2, 1]).unwrap().to_string(), "s2s1");
        assert_eq!(t.element_from_word(&[2, 1, 2, 1]).unwrap().to_string(), "s2s1s2s1");
    }

    fn arb_element() -> impl Strategy<Value = GroupElement> {
        (0usize..small_types().len(), prop::collection::vec(0usize..8, 0..15)).prop_map(|(ti, w)| {
            let t = small_types()[ti];
            let labels = t.labels();
            let word: Vec<usize> = w.iter().map(|i| labels[i % labels.len()]).collect();
            t.element_from_word(&word).unwrap()
        })
    }

    proptest! {
        #[test]
        fn associativity_and_inverses(a in arb_element(), w1 in prop::collection::vec(0usize..8, 0..15), w2 in prop::collection::vec(0usize..8, 0..15)) {
            let t = a.coxeter_type();
            let labels = t.labels();
            let b = t.element_from_word(&w1.iter().map(|i| labels[i % labels.len()]).collect::<Vec<_>>()).unwrap();
            let c = t.element_from_word(&w2.iter().map(|i| labels[i % labels.len()]).collect::<Vec<_>>()).unwrap();
            let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert!(a.inverse().multiply(&a).unwrap().is_identity());
            prop_assert!(a.multiply(&a.inverse()).unwrap().is_identity());
            prop_assert_eq!(a.inverse().length(), a.length());
        }

        #[test]
        fn reduced_word_evaluates_back(a in arb_element()) {
            let t = a.coxeter_type();
            let word = a.reduced_word();
            prop_assert_eq!(word.len(), a.length());
            prop_assert_eq!(t.element_from_word(&word).unwrap(), a);
        }
    }
}
