//! The group ring ℤ(W) and the Boolean semiring of subsets of W as desingularization targets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::binrel::BoolMat;
use crate::coxeter::{CoxeterType, GroupElement};
use crate::error::{Error, Result};
use crate::laurent::{PhiAssignment, PhiSet};
use crate::words::{Assignment, SingularWord};

/// Element of ℤ(W) with zero-free storage.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntGroupAlgElt {
    terms: BTreeMap<GroupElement, BigInt>,
}

impl IntGroupAlgElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: GroupElement) -> Self {
        Self::from_terms([(w, BigInt::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GroupElement, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: GroupElement, c: BigInt) {
        let e = self.terms.entry(w.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn coeff(&self, w: &GroupElement) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.multiply(b)?, c * d);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter()
                .map(|(w, c)| json!({"w": w.to_string(), "coeff": c.to_string()}))
                .collect::<Vec<_>>()
        })
    }
}

impl fmt::Display for IntGroupAlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for IntGroupAlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Finite subset of W; the product is `{ab}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BoolGroupAlgElt {
    elements: BTreeSet<GroupElement>,
}

impl BoolGroupAlgElt {
    pub fn new(elements: impl IntoIterator<Item = GroupElement>) -> Self {
        Self {
            elements: elements.into_iter().collect(),
        }
    }

    pub fn elements(&self) -> &BTreeSet<GroupElement> {
        &self.elements
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = BTreeSet::new();
        for a in &self.elements {
            for b in &other.elements {
                out.insert(a.multiply(b)?);
            }
        }
        Ok(Self { elements: out })
    }

    /// Union of the permutation matrices of the elements (type A only).
    pub fn to_boolmat(&self, n: usize) -> Result<BoolMat> {
        let mut m = BoolMat::zero(n);
        for w in &self.elements {
            m = m.union(&BoolMat::permutation(w)?);
        }
        Ok(m)
    }

    pub fn to_json(&self) -> Value {
        json!({"elements": self.elements.iter().map(|w| w.to_string()).collect::<Vec<_>>()})
    }
}

impl fmt::Display for BoolGroupAlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for BoolGroupAlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn s_power(s: &GroupElement, e: i64, id: &GroupElement) -> GroupElement {
    if e.rem_euclid(2) == 1 {
        s.clone()
    } else {
        id.clone()
    }
}

/// Δ̄_Φ: `σ_s^{±1} ↦ s`, `τ_s ↦ Φ(K_s)` with `x^i ↦ s^i`. Φ must not involve `v`.
pub fn delta_bar_assignment(kind: CoxeterType, phi: &PhiAssignment) -> Result<Assignment<IntGroupAlgElt>> {
    let m = kind.matrix();
    let comps = m.odd_components();
    let labels = m.labels().to_vec();
    let id = kind.identity();
    let mut sigma = Vec::new();
    let mut tau = Vec::new();
    for &s in &labels {
        let g = kind.generator(s)?;
        let k = comps
            .component_of(s)
            .ok_or_else(|| Error::Internal("node without component".into()))?;
        let coeffs = phi.value(k).integer_coeffs()?;
        tau.push(IntGroupAlgElt::from_terms(
            coeffs.into_iter().map(|(e, c)| (s_power(&g, e as i64, &id), c)),
        ));
        sigma.push(IntGroupAlgElt::basis(g));
    }
    Assignment::involutive(
        "delta_bar",
        labels,
        sigma,
        tau,
        IntGroupAlgElt::basis(id),
        Arc::new(|a: &IntGroupAlgElt, b: &IntGroupAlgElt| a.mul(b).expect("same group")),
    )
}

/// Boolean Δ_Φ after projection to W: `τ_s ↦ {s^i : i ∈ Φ(K_s)}`.
pub fn bool_delta_assignment(kind: CoxeterType, phi: &PhiSet) -> Result<Assignment<BoolGroupAlgElt>> {
    let m = kind.matrix();
    let comps = m.odd_components();
    let labels = m.labels().to_vec();
    let id = kind.identity();
    let mut sigma = Vec::new();
    let mut tau = Vec::new();
    for &s in &labels {
        let g = kind.generator(s)?;
        let k = comps
            .component_of(s)
            .ok_or_else(|| Error::Internal("node without component".into()))?;
        tau.push(BoolGroupAlgElt::new(phi.value(k).iter().map(|&e| s_power(&g, e, &id))));
        sigma.push(BoolGroupAlgElt::new([g]));
    }
    Assignment::involutive(
        "bool_delta",
        labels,
        sigma,
        tau,
        BoolGroupAlgElt::new([id]),
        Arc::new(|a: &BoolGroupAlgElt, b: &BoolGroupAlgElt| a.mul(b).expect("same group")),
    )
}

pub fn delta_bar_eval(word: &SingularWord, kind: CoxeterType, phi: &PhiAssignment) -> Result<IntGroupAlgElt> {
    delta_bar_assignment(kind, phi)?.evaluate(word)
}

pub fn bool_delta_eval(word: &SingularWord, kind: CoxeterType, phi: &PhiSet) -> Result<BoolGroupAlgElt> {
    bool_delta_assignment(kind, phi)?.evaluate(word)
}

/// Pairs of distinct words with equal images; exploratory only.
pub fn collision_scan<E: Clone + Ord + fmt::Debug>(
    asg: &Assignment<E>,
    words: &[SingularWord],
) -> Result<Vec<(SingularWord, SingularWord)>> {
    let mut seen: BTreeMap<E, SingularWord> = BTreeMap::new();
    let mut out = Vec::new();
    for w in words {
        let img = asg.evaluate(w)?;
        match seen.get(&img) {
            Some(prev) if prev != w => out.push((prev.clone(), w.clone())),
            Some(_) => {}
            None => {
                seen.insert(img, w.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binrel::eta_assignment;
    use crate::words::{alphabet, random_words, singular_relations};
    use proptest::prelude::*;

    fn word(s: &str) -> SingularWord {
        s.parse().unwrap()
    }

    #[test]
    fn delta_bar_examples() {
        let t = CoxeterType::A(3);
        let comps = t.matrix().odd_components();
        let s = t.generator(1).unwrap();
        let phi = PhiAssignment::uniform(&comps, "3 - 2*x".parse().unwrap());
        let img = delta_bar_eval(&word("t1"), t, &phi).unwrap();
        assert_eq!(img.coeff(&t.identity()), BigInt::from(3));
        assert_eq!(img.coeff(&s), BigInt::from(-2));
        let classical = PhiAssignment::uniform(&comps, "x - x^-1".parse().unwrap());
        assert!(delta_bar_eval(&word("t1"), t, &classical).unwrap().is_zero());
        assert_eq!(
            delta_bar_eval(&word("s1 s1"), t, &phi).unwrap(),
            IntGroupAlgElt::basis(t.identity())
        );
        let with_v = PhiAssignment::uniform(&comps, "v + x".parse().unwrap());
        assert!(delta_bar_assignment(t, &with_v).is_err());
    }

    #[test]
    fn bool_delta_examples() {
        let t = CoxeterType::A(3);
        let comps = t.matrix().odd_components();
        let s = t.generator(1).unwrap();
        let phi = PhiSet::uniform(&comps, [0, 1].into());
        let es = BoolGroupAlgElt::new([t.identity(), s.clone()]);
        assert_eq!(bool_delta_eval(&word("t1"), t, &phi).unwrap(), es);
        assert_eq!(bool_delta_eval(&word("t1 t1"), t, &phi).unwrap(), es);
        let one = PhiSet::uniform(&comps, [1].into());
        assert_eq!(bool_delta_eval(&word("t1"), t, &one).unwrap(), BoolGroupAlgElt::new([s]));
    }

    #[test]
    fn relations_hold_for_several_parameters() {
        let phis = ["x - x^-1", "1 + x", "2 - 3*x^2", "x^3", "5"];
        let sets = ["{0,1}", "{1}", "{0}", "{-1,2}", "{0,3,4}"];
        for t in [CoxeterType::A(4), CoxeterType::B(3), CoxeterType::I2(5), CoxeterType::I2(6)] {
            let m = t.matrix();
            let comps = m.odd_components();
            let rels = singular_relations(&m);
            for p in phis {
                let asg = delta_bar_assignment(t, &PhiAssignment::uniform(&comps, p.parse().unwrap())).unwrap();
                for r in &rels.pairs {
                    assert_eq!(asg.evaluate(&r.lhs).unwrap(), asg.evaluate(&r.rhs).unwrap(), "{t} {p}");
                }
            }
            for p in sets {
                let asg = bool_delta_assignment(t, &PhiSet::parse(&comps, p).unwrap()).unwrap();
                for r in &rels.pairs {
                    assert_eq!(asg.evaluate(&r.lhs).unwrap(), asg.evaluate(&r.rhs).unwrap(), "{t} {p}");
                }
            }
        }
    }

    #[test]
    fn collision_scan_finds_equal_images() {
        let t = CoxeterType::A(2);
        let phi = PhiSet::uniform(&t.matrix().odd_components(), [0, 1].into());
        let asg = bool_delta_assignment(t, &phi).unwrap();
        let hits = collision_scan(&asg, &[word("t1"), word("t1 t1"), word("s1")]).unwrap();
        assert_eq!(hits, vec![(word("t1"), word("t1 t1"))]);
    }

    proptest! {
        #[test]
        fn subset_action_matches_eta(seed in 0u64..500) {
            let n = 4;
            let t = CoxeterType::A(n);
            let phi = PhiSet::uniform(&t.matrix().odd_components(), [0, 1].into());
            let bd = bool_delta_assignment(t, &phi).unwrap();
            let eta = eta_assignment(n).unwrap();
            for w in random_words(&alphabet(&t.matrix()), 10, 3, seed) {
                prop_assert_eq!(bd.evaluate(&w).unwrap().to_boolmat(n).unwrap(), eta.evaluate(&w).unwrap());
            }
        }
    }
}
