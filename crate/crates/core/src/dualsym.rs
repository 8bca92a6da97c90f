//! Dual symmetric inverse monoids as completed essential relations, and the maps λ.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::binrel::{BoolMat, BoolMatB};
use crate::combinat::set_partitions;
use crate::coxeter::{CoxeterType, Family, GroupElement};
use crate::error::{Error, Result};
use crate::words::{Assignment, SingularWord};

/// Block bijection of `{1..n}`: columns are the domain, rows the codomain.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockBijection {
    mat: BoolMat,
}

/// A pair (domain block, codomain block).
pub type Block = (Vec<i32>, Vec<i32>);

/// Components of a completed matrix with signed or unsigned labels.
fn components_of(mat: &BoolMat, label: impl Fn(usize) -> i32) -> Vec<Block> {
    let n = mat.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for j in 0..n {
        if seen[j] {
            continue;
        }
        let rows: Vec<usize> = (0..n).filter(|&i| mat.get(i, j)).collect();
        let Some(&r) = rows.first() else { continue };
        let cols: Vec<usize> = (0..n).filter(|&c| mat.get(r, c)).collect();
        for &c in &cols {
            seen[c] = true;
        }
        let mut dom: Vec<i32> = cols.iter().map(|&c| label(c)).collect();
        let mut cod: Vec<i32> = rows.iter().map(|&i| label(i)).collect();
        dom.sort_unstable();
        cod.sort_unstable();
        out.push((dom, cod));
    }
    out.sort();
    out
}

impl BlockBijection {
    /// `π`: completion of an essential relation.
    pub fn pi_project(a: &BoolMat) -> Result<Self> {
        if !a.is_essential() {
            return Err(Error::InvalidElement("relation is not essential".into()));
        }
        Ok(Self {
            mat: a.complete_components(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mat: BoolMat::identity(n),
        }
    }

    /// From explicit (domain, codomain) block pairs with points in `1..=n`.
    pub fn from_blocks(n: usize, blocks: &[(Vec<usize>, Vec<usize>)]) -> Result<Self> {
        let mut mat = BoolMat::zero(n);
        for (dom, cod) in blocks {
            for &d in dom {
                for &c in cod {
                    if d == 0 || c == 0 || d > n || c > n {
                        return Err(Error::InvalidElement(format!("point out of range 1..{n}")));
                    }
                    mat.set(c - 1, d - 1, true);
                }
            }
        }
        let b = Self::pi_project(&mat)?;
        if b.components().len() != blocks.len() {
            return Err(Error::InvalidElement("blocks overlap".into()));
        }
        Ok(b)
    }

    pub fn permutation(w: &GroupElement) -> Result<Self> {
        Ok(Self {
            mat: BoolMat::permutation(w)?,
        })
    }

    /// `ξ_i = π(𝐬_i)`.
    pub fn xi(i: usize, n: usize) -> Result<Self> {
        Self::pi_project(&BoolMat::gen_bold_s(i, n)?)
    }

    /// Idempotent `ξ_ρ` of a partition of `{1..n}`.
    pub fn idempotent_from_partition(rho: &[Vec<usize>], n: usize) -> Result<Self> {
        let blocks: Vec<_> = rho.iter().map(|c| (c.clone(), c.clone())).collect();
        Self::from_blocks(n, &blocks)
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn matrix(&self) -> &BoolMat {
        &self.mat
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            mat: self.mat.mul(&other.mat)?.complete_components(),
        })
    }

    /// Blocks `(A_i, B_σ(i))` sorted by domain block.
    pub fn components(&self) -> Vec<Block> {
        components_of(&self.mat, |p| p as i32 + 1)
    }

    pub fn is_uniform(&self) -> bool {
        self.components().iter().all(|(d, c)| d.len() == c.len())
    }

    pub fn is_idempotent(&self) -> bool {
        self.components().iter().all(|(d, c)| d == c)
    }

    pub fn domain_partition(&self) -> Vec<Vec<usize>> {
        self.components()
            .into_iter()
            .map(|(d, _)| d.into_iter().map(|x| x as usize).collect())
            .collect()
    }

    /// `a = σ ξ` with `ξ` the idempotent of the domain partition and `σ` matching each
    /// domain block to its codomain block order-preservingly.
    pub fn factorize(&self) -> Result<(GroupElement, BlockBijection)> {
        if !self.is_uniform() {
            return Err(Error::InvalidElement("block bijection is not uniform".into()));
        }
        let n = self.n();
        let mut w = vec![0u32; n];
        for (dom, cod) in self.components() {
            for (d, c) in dom.iter().zip(&cod) {
                w[*d as usize - 1] = *c as u32;
            }
        }
        let xi = Self::idempotent_from_partition(&self.domain_partition(), n)?;
        Ok((GroupElement::Perm(w), xi))
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self.components().into_iter().map(|(d, c)| json!([d, c])).collect();
        json!({"n": self.n(), "blocks": blocks})
    }
}

fn fmt_blocks(f: &mut fmt::Formatter<'_>, blocks: &[Block]) -> fmt::Result {
    let parts: Vec<String> = blocks
        .iter()
        .map(|(d, c)| {
            let ds: Vec<String> = d.iter().map(i32::to_string).collect();
            let cs: Vec<String> = c.iter().map(i32::to_string).collect();
            format!("{{{}}}->{{{}}}", ds.join(","), cs.join(","))
        })
        .collect();
    write!(f, "{}", parts.join(" "))
}

impl fmt::Display for BlockBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_blocks(f, &self.components())
    }
}

impl fmt::Debug for BlockBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Bar-invariant block bijection of `±{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockBijectionB {
    mat: BoolMatB,
}

impl BlockBijectionB {
    /// Completion of an essential rotation-invariant relation.
    pub fn pi_project(a: &BoolMatB) -> Result<Self> {
        if !a.is_essential() {
            return Err(Error::InvalidElement("relation is not essential".into()));
        }
        Ok(Self {
            mat: a.complete_components(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mat: BoolMatB::identity(n),
        }
    }

    /// From (domain, codomain) block pairs over signed points; the set must be bar-invariant.
    pub fn from_blocks(n: usize, blocks: &[(Vec<i32>, Vec<i32>)]) -> Result<Self> {
        let mut mat = BoolMat::zero(2 * n);
        for (dom, cod) in blocks {
            for &d in dom {
                for &c in cod {
                    if d == 0 || c == 0 || d.unsigned_abs() as usize > n || c.unsigned_abs() as usize > n {
                        return Err(Error::InvalidElement(format!("point out of range ±1..{n}")));
                    }
                    mat.set(BoolMatB::index(n, c), BoolMatB::index(n, d), true);
                }
            }
        }
        let b = Self::pi_project(&BoolMatB::new(n, mat)?)?;
        if b.components().len() != blocks.len() {
            return Err(Error::InvalidElement("blocks overlap".into()));
        }
        Ok(b)
    }

    pub fn permutation(w: &GroupElement) -> Result<Self> {
        Ok(Self {
            mat: BoolMatB::signed_permutation(w)?,
        })
    }

    /// `ξ̃_i`, the completion of `𝐬̃_i`.
    pub fn xi(i: usize, n: usize) -> Result<Self> {
        Self::pi_project(&BoolMatB::gen_bold_b(i, n)?)
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn matrix(&self) -> &BoolMatB {
        &self.mat
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            mat: self.mat.mul(&other.mat)?.complete_components(),
        })
    }

    pub fn components(&self) -> Vec<Block> {
        let n = self.n();
        components_of(self.mat.matrix(), |p| BoolMatB::point(n, p))
    }

    pub fn is_uniform(&self) -> bool {
        self.components().iter().all(|(d, c)| d.len() == c.len())
    }

    pub fn is_idempotent(&self) -> bool {
        self.components().iter().all(|(d, c)| d == c)
    }

    /// Idempotent of a bar-invariant partition of `±{1..n}`.
    pub fn idempotent_from_partition(rho: &[Vec<i32>], n: usize) -> Result<Self> {
        let blocks: Vec<_> = rho.iter().map(|c| (c.clone(), c.clone())).collect();
        Self::from_blocks(n, &blocks)
    }

    /// `a = σ ξ` with `σ` a signed permutation; domain blocks are visited by minimum and
    /// matched order-preservingly, barred partners by the bar of that matching.
    pub fn factorize(&self) -> Result<(GroupElement, BlockBijectionB)> {
        if !self.is_uniform() {
            return Err(Error::InvalidElement("block bijection is not uniform".into()));
        }
        let n = self.n();
        let mut image: BTreeMap<i32, i32> = BTreeMap::new();
        for (dom, cod) in self.components() {
            if image.contains_key(&dom[0]) {
                continue;
            }
            for (d, c) in dom.iter().zip(&cod) {
                image.insert(*d, *c);
                image.insert(-*d, -*c);
            }
        }
        let w: Vec<i32> = (1..=n as i32).map(|x| image[&x]).collect();
        let partition: Vec<Vec<i32>> = self.components().into_iter().map(|(d, _)| d).collect();
        let xi = Self::idempotent_from_partition(&partition, n)?;
        Ok((GroupElement::SignedPerm(w), xi))
    }

    /// Encodes an idempotent as `(ρ, Y, f)`.
    pub fn to_tuple(&self) -> Result<SymPartitionTuple> {
        if !self.is_idempotent() {
            return Err(Error::InvalidElement("not an idempotent".into()));
        }
        let mut classes = Vec::new();
        for (block, _) in self.components() {
            let self_barred = block.contains(&-block[0]);
            if self_barred {
                if block[0] < 0 {
                    let elements: Vec<usize> = block.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect();
                    classes.push(TupleClass::unsigned(elements));
                }
                continue;
            }
            // Each barred pair appears twice; keep the copy containing the class minimum positively.
            let mut elements: Vec<(usize, i32)> = block.iter().map(|&x| (x.unsigned_abs() as usize, x.signum())).collect();
            elements.sort_unstable();
            if elements[0].1 < 0 {
                continue;
            }
            classes.push(TupleClass {
                elements: elements.iter().map(|e| e.0).collect(),
                in_y: true,
                signs: elements.iter().map(|e| e.1 as i8).collect(),
            });
        }
        classes.sort_by(|a, b| a.elements.cmp(&b.elements));
        Ok(SymPartitionTuple { classes })
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self.components().into_iter().map(|(d, c)| json!([d, c])).collect();
        json!({"n": self.n(), "blocks": blocks})
    }
}

impl fmt::Display for BlockBijectionB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_blocks(f, &self.components())
    }
}

impl fmt::Debug for BlockBijectionB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One class of `ρ`: its elements, whether it lies in `Y`, and the signs `f` on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleClass {
    pub elements: Vec<usize>,
    pub in_y: bool,
    pub signs: Vec<i8>,
}

impl TupleClass {
    fn unsigned(elements: Vec<usize>) -> Self {
        let k = elements.len();
        Self {
            elements,
            in_y: false,
            signs: vec![1; k],
        }
    }
}

/// Idempotent of the type-B dual symmetric inverse monoid as `(ρ, Y, f)`, with `f = +`
/// on the minimum of every class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPartitionTuple {
    classes: Vec<TupleClass>,
}

impl SymPartitionTuple {
    /// `rho` a partition of `{1..n}`, `y` a union of classes, `f` signs on `y`.
    pub fn new(rho: &[Vec<usize>], y: &BTreeSet<usize>, f: &BTreeMap<usize, i8>) -> Result<Self> {
        let mut classes = Vec::new();
        for class in rho {
            let mut elements = class.clone();
            elements.sort_unstable();
            let inside = elements.iter().filter(|e| y.contains(e)).count();
            if inside != 0 && inside != elements.len() {
                return Err(Error::InvalidElement("Y is not a union of classes".into()));
            }
            if inside == 0 {
                classes.push(TupleClass::unsigned(elements));
                continue;
            }
            let mut signs: Vec<i8> = elements
                .iter()
                .map(|e| f.get(e).copied().unwrap_or(1).signum())
                .collect();
            if signs.contains(&0) {
                return Err(Error::InvalidElement("sign must be + or -".into()));
            }
            if signs[0] < 0 {
                signs.iter_mut().for_each(|s| *s = -*s);
            }
            classes.push(TupleClass {
                elements,
                in_y: true,
                signs,
            });
        }
        classes.sort_by(|a, b| a.elements.cmp(&b.elements));
        Ok(Self { classes })
    }

    pub fn classes(&self) -> &[TupleClass] {
        &self.classes
    }

    pub fn to_idempotent(&self, n: usize) -> Result<BlockBijectionB> {
        let mut rho: Vec<Vec<i32>> = Vec::new();
        for c in &self.classes {
            if c.in_y {
                let x: Vec<i32> = c.elements.iter().zip(&c.signs).map(|(&e, &s)| e as i32 * s as i32).collect();
                rho.push(x.iter().map(|v| -v).collect());
                rho.push(x);
            } else {
                rho.push(c.elements.iter().flat_map(|&e| [e as i32, -(e as i32)]).collect());
            }
        }
        BlockBijectionB::idempotent_from_partition(&rho, n)
    }
}

/// `(ρ, Y, f) ↦` idempotent of `IB*_n`.
pub fn tuple_to_idempotent(t: &SymPartitionTuple, n: usize) -> Result<BlockBijectionB> {
    t.to_idempotent(n)
}

/// Idempotent of `IB*_n` `↦ (ρ, Y, f)`.
pub fn idempotent_to_tuple(b: &BlockBijectionB) -> Result<SymPartitionTuple> {
    b.to_tuple()
}

/// λ: `σ_i ↦ s_i`, `τ_i ↦ ξ_i` into `F*_n`.
pub fn lambda_assignment(n: usize) -> Result<Assignment<BlockBijection>> {
    let t = CoxeterType::new(Family::A, n)?;
    let labels = t.labels();
    let sigma = labels
        .iter()
        .map(|&i| BlockBijection::permutation(&t.generator(i)?))
        .collect::<Result<_>>()?;
    let tau = labels.iter().map(|&i| BlockBijection::xi(i, n)).collect::<Result<_>>()?;
    Assignment::involutive(
        "lambda",
        labels,
        sigma,
        tau,
        BlockBijection::identity(n),
        Arc::new(|a: &BlockBijection, b: &BlockBijection| a.mul(b).expect("equal sizes")),
    )
}

/// Type-B λ: `σ_i ↦ s̃_i`, `τ_i ↦ ξ̃_i` into `FB*_n`.
pub fn lambda_b_assignment(n: usize) -> Result<Assignment<BlockBijectionB>> {
    let t = CoxeterType::new(Family::B, n)?;
    let labels = t.labels();
    let sigma = labels
        .iter()
        .map(|&i| BlockBijectionB::permutation(&t.generator(i)?))
        .collect::<Result<_>>()?;
    let tau = labels.iter().map(|&i| BlockBijectionB::xi(i, n)).collect::<Result<_>>()?;
    Assignment::involutive(
        "lambda_b",
        labels,
        sigma,
        tau,
        BlockBijectionB::identity(n),
        Arc::new(|a: &BlockBijectionB, b: &BlockBijectionB| a.mul(b).expect("equal sizes")),
    )
}

pub fn lambda_eval(word: &SingularWord, n: usize) -> Result<BlockBijection> {
    lambda_assignment(n)?.evaluate(word)
}

pub fn lambda_b_eval(word: &SingularWord, n: usize) -> Result<BlockBijectionB> {
    lambda_b_assignment(n)?.evaluate(word)
}

/// All set partitions of `{1..n}`.
pub fn partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    set_partitions(&(1..=n).collect::<Vec<_>>())
}

/// All bar-invariant partitions of `±{1..n}`.
pub fn bar_invariant_partitions(n: usize) -> Vec<Vec<Vec<i32>>> {
    let points: Vec<i32> = (1..=n as i32).flat_map(|x| [-x, x]).collect();
    set_partitions(&points)
        .into_iter()
        .filter(|p| {
            let blocks: BTreeSet<Vec<i32>> = p
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.sort_unstable();
                    b
                })
                .collect();
            blocks.iter().all(|b| {
                let mut bar: Vec<i32> = b.iter().map(|x| -x).collect();
                bar.sort_unstable();
                blocks.contains(&bar)
            })
        })
        .collect()
}

/// `F*_n` built directly as all products `σ ξ_ρ`.
pub fn all_uniform(n: usize) -> Result<BTreeSet<BlockBijection>> {
    let group = CoxeterType::new(Family::A, n)?.elements();
    let mut out = BTreeSet::new();
    for rho in partitions(n) {
        let xi = BlockBijection::idempotent_from_partition(&rho, n)?;
        for w in &group {
            out.insert(BlockBijection::permutation(w)?.mul(&xi)?);
        }
    }
    Ok(out)
}

/// `FB*_n` built directly as all products `σ ξ` over signed permutations and bar-invariant partitions.
pub fn all_uniform_b(n: usize) -> Result<BTreeSet<BlockBijectionB>> {
    let group = CoxeterType::new(Family::B, n)?.elements();
    let mut out = BTreeSet::new();
    for rho in bar_invariant_partitions(n) {
        let xi = BlockBijectionB::idempotent_from_partition(&rho, n)?;
        for w in &group {
            out.insert(BlockBijectionB::permutation(w)?.mul(&xi)?);
        }
    }
    Ok(out)
}
