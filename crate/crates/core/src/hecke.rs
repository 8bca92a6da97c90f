//! Hecke algebra over `Z[v, v^-1]`: standard basis, bar involution, Kazhdan–Lusztig basis.
//!
//! Conventions: `H_s^2 = H_e + (v^-1 - v) H_s`, so `H_s^-1 = H_s + (v - v^-1) H_e`
//! and `H̲_s = H_s + v H_e`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use crate::coxeter::{CoxeterMatrix, CoxeterType, GroupElement};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, PhiAssignment};
use crate::words::{Assignment, SingularWord};

/// Finite combination `Σ c_w H_w`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HeckeElt {
    terms: BTreeMap<GroupElement, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(w: GroupElement, c: LaurentPoly) -> Self {
        let mut h = Self::zero();
        h.add_term(w, c);
        h
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &GroupElement) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: GroupElement, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::from(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d * c);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut terms: Vec<(&GroupElement, &LaurentPoly)> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| (w.length(), (*w).clone()));
        json!({
            "basis": "standard",
            "terms": terms
                .iter()
                .map(|(w, c)| json!({"w": w.to_string(), "coeff": c.to_string()}))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| (w.length(), (*w).clone()));
        let parts: Vec<String> = terms.iter().map(|(w, c)| format!("({c})H[{w}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Inner {
    kind: CoxeterType,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    bar_cache: Vec<OnceLock<HeckeElt>>,
    kl_cache: Vec<OnceLock<HeckeElt>>,
}

/// `H(W)` for a finite group of type A, B or I2; cheap to clone.
#[derive(Clone)]
pub struct HeckeAlgebra {
    inner: Arc<Inner>,
}

impl fmt::Debug for HeckeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeAlgebra({})", self.inner.kind)
    }
}

impl HeckeAlgebra {
    pub fn new(kind: CoxeterType) -> Self {
        let elements = kind.elements();
        let index = elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let k = elements.len();
        Self {
            inner: Arc::new(Inner {
                kind,
                elements,
                index,
                bar_cache: (0..k).map(|_| OnceLock::new()).collect(),
                kl_cache: (0..k).map(|_| OnceLock::new()).collect(),
            }),
        }
    }

    pub fn from_matrix(m: &CoxeterMatrix) -> Result<Self> {
        Ok(Self::new(m.require_kind()?))
    }

    pub fn kind(&self) -> CoxeterType {
        self.inner.kind
    }

    /// Group elements sorted by length.
    pub fn elements(&self) -> &[GroupElement] {
        &self.inner.elements
    }

    fn check(&self, w: &GroupElement) -> Result<usize> {
        self.inner.index.get(w).copied().ok_or(Error::GroupMismatch)
    }

    fn check_elt(&self, h: &HeckeElt) -> Result<()> {
        h.terms.keys().try_for_each(|w| self.check(w).map(|_| ()))
    }

    pub fn one(&self) -> HeckeElt {
        HeckeElt::term(self.inner.kind.identity(), LaurentPoly::one())
    }

    pub fn standard_elt(&self, w: &GroupElement) -> Result<HeckeElt> {
        self.check(w)?;
        Ok(HeckeElt::term(w.clone(), LaurentPoly::one()))
    }

    pub fn generator(&self, s: usize) -> Result<HeckeElt> {
        Ok(HeckeElt::term(self.inner.kind.generator(s)?, LaurentPoly::one()))
    }

    /// `H_s^-1 = H_s + (v - v^-1) H_e`.
    pub fn generator_inverse(&self, s: usize) -> Result<HeckeElt> {
        let mut h = self.generator(s)?;
        h.add_term(self.inner.kind.identity(), LaurentPoly::v_minus_vinv());
        Ok(h)
    }

    /// `h · H_s`.
    pub fn mul_by_gen(&self, h: &HeckeElt, s: usize) -> Result<HeckeElt> {
        let q = -LaurentPoly::v_minus_vinv();
        let mut out = HeckeElt::zero();
        for (w, c) in &h.terms {
            let ws = w.mul_gen(s)?;
            if w.is_right_descent(s) {
                out.add_term(w.clone(), c * &q);
            }
            out.add_term(ws, c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        self.check_elt(a)?;
        self.check_elt(b)?;
        let mut out = HeckeElt::zero();
        for (w, c) in &b.terms {
            let mut part = a.scale(c);
            for s in w.reduced_word() {
                part = self.mul_by_gen(&part, s)?;
            }
            out = out.add(&part);
        }
        Ok(out)
    }

    fn bar_standard(&self, i: usize) -> &HeckeElt {
        self.inner.bar_cache[i].get_or_init(|| {
            let w = &self.inner.elements[i];
            let mut acc = self.one();
            for s in w.reduced_word() {
                let inv = self.generator_inverse(s).expect("valid generator");
                acc = self.mul(&acc, &inv).expect("same group");
            }
            acc
        })
    }

    /// Ring involution with `v ↦ v^-1` and `H_s ↦ H_s^-1`.
    pub fn bar(&self, h: &HeckeElt) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero();
        for (w, c) in &h.terms {
            let i = self.check(w)?;
            out = out.add(&self.bar_standard(i).scale(&c.bar()));
        }
        Ok(out)
    }

    /// `H̲_w`.
    pub fn kl_elt(&self, w: &GroupElement) -> Result<HeckeElt> {
        let i = self.check(w)?;
        Ok(self.kl_by_index(i).clone())
    }

    fn kl_by_index(&self, i: usize) -> &HeckeElt {
        self.inner.kl_cache[i].get_or_init(|| self.compute_kl(i))
    }

    fn compute_kl(&self, i: usize) -> HeckeElt {
        let w = &self.inner.elements[i];
        if w.is_identity() {
            return self.one();
        }
        let word = w.reduced_word();
        let s = *word.last().expect("nonempty");
        let prefix = w.mul_gen(s).expect("valid generator");
        let base = self.kl_by_index(self.inner.index[&prefix]);
        let mut h_s = self.generator(s).expect("valid generator");
        h_s.add_term(self.inner.kind.identity(), LaurentPoly::v());
        let mut cand = self.mul(base, &h_s).expect("same group");
        loop {
            let bad = cand
                .terms
                .iter()
                .filter(|(x, c)| *x != w && !c.in_positive_part())
                .max_by_key(|(x, _)| (x.length(), (*x).clone()))
                .map(|(x, c)| (x.clone(), c.clone()));
            let Some((x, c)) = bad else { break };
            let p = c.nonpositive_part();
            let m = &(&p + &p.bar()) - &LaurentPoly::constant(c.coeff(0));
            let kx = self.kl_by_index(self.inner.index[&x]);
            cand = cand.sub(&kx.scale(&m));
        }
        cand
    }

    /// Substitutes `H_s` for `x` in a Laurent polynomial in `x`.
    fn substitute(&self, s: usize, phi: &crate::laurent::XPoly) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero();
        let pos = self.generator(s)?;
        let neg = self.generator_inverse(s)?;
        for (e, c) in phi.terms() {
            let (g, k) = if e >= 0 { (&pos, e) } else { (&neg, -e) };
            let mut p = self.one();
            for _ in 0..k {
                p = self.mul(&p, g)?;
            }
            out = out.add(&p.scale(c));
        }
        Ok(out)
    }

    /// `Υ_Φ`: `σ_s ↦ H_s`, `σ_s^-1 ↦ H_s^-1`, `τ_s ↦ Φ(K_s)[H_s]`.
    pub fn upsilon_assignment(&self, phi: &PhiAssignment) -> Result<Assignment<HeckeElt>> {
        let m = self.inner.kind.matrix();
        let comps = m.odd_components();
        let labels = m.labels().to_vec();
        let mut sigma = Vec::new();
        let mut sigma_inv = Vec::new();
        let mut tau = Vec::new();
        for &s in &labels {
            sigma.push(self.generator(s)?);
            sigma_inv.push(self.generator_inverse(s)?);
            let k = comps.component_of(s).ok_or(Error::Internal("node without component".into()))?;
            tau.push(self.substitute(s, phi.value(k))?);
        }
        let alg = self.clone();
        Assignment::new(
            "upsilon",
            labels,
            sigma,
            sigma_inv,
            tau,
            self.one(),
            Arc::new(move |a: &HeckeElt, b: &HeckeElt| alg.mul(a, b).expect("same group")),
        )
    }

    pub fn upsilon_eval(&self, word: &SingularWord, phi: &PhiAssignment) -> Result<HeckeElt> {
        self.upsilon_assignment(phi)?.evaluate(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Family;
    use crate::laurent::XPoly;
    use crate::words::{alphabet, random_words, singular_relations};
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn random_elt(alg: &HeckeAlgebra, seed: u64) -> HeckeElt {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = HeckeElt::zero();
        for w in alg.elements() {
            if rng.gen_bool(0.4) {
                let c = LaurentPoly::from_terms(
                    (0..3).map(|_| (rng.gen_range(-3..=3), BigInt::from(rng.gen_range(-4..=4)))),
                );
                h.add_term(w.clone(), c);
            }
        }
        h
    }

    /// Left regular action `H_s · H_w`, used as an independent multiplication oracle.
    fn left_table_mul(alg: &HeckeAlgebra, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let q = -LaurentPoly::v_minus_vinv();
        let mut out = HeckeElt::zero();
        for (x, c) in a.terms() {
            let mut part = b.scale(c);
            for &s in x.reduced_word().iter().rev() {
                let g = alg.kind().generator(s).unwrap();
                let mut next = HeckeElt::zero();
                for (w, d) in part.terms() {
                    let sw = g.multiply(w).unwrap();
                    if sw.length() < w.length() {
                        next.add_term(w.clone(), d * &q);
                    }
                    next.add_term(sw, d.clone());
                }
                part = next;
            }
            out = out.add(&part);
        }
        out
    }

    #[test]
    fn quadratic_relation() {
        let alg = HeckeAlgebra::new(CoxeterType::A(2));
        let hs = alg.generator(1).unwrap();
        assert_eq!(alg.mul(&alg.one(), &hs).unwrap(), hs);
        let sq = alg.mul(&hs, &hs).unwrap();
        let mut expected = alg.one();
        expected.add_term(CoxeterType::A(2).generator(1).unwrap(), lp("v^-1 - v"));
        assert_eq!(sq, expected);
        let inv = alg.generator_inverse(1).unwrap();
        assert_eq!(alg.mul(&hs, &inv).unwrap(), alg.one());
        // H̲_s H_s = v^-1 H̲_s + (H_e - v^-1 H_e): both sides by hand
        let kl = alg.kl_elt(&CoxeterType::A(2).generator(1).unwrap()).unwrap();
        let prod = alg.mul(&kl, &hs).unwrap();
        assert_eq!(prod, kl.scale(&lp("v^-1")));
    }

    #[test]
    fn standard_products() {
        let t = CoxeterType::A(3);
        let alg = HeckeAlgebra::new(t);
        let h = alg.mul(&alg.generator(1).unwrap(), &alg.generator(2).unwrap()).unwrap();
        assert_eq!(h, alg.standard_elt(&t.element_from_word(&[1, 2]).unwrap()).unwrap());
        assert_eq!(alg.standard_elt(&t.identity()).unwrap(), alg.one());
        let other = CoxeterType::A(2).identity();
        assert!(matches!(alg.standard_elt(&other), Err(Error::GroupMismatch)));
    }

    #[test]
    fn bar_examples() {
        let alg = HeckeAlgebra::new(CoxeterType::I2(4));
        assert_eq!(alg.bar(&alg.one()).unwrap(), alg.one());
        assert_eq!(alg.bar(&alg.generator(1).unwrap()).unwrap(), alg.generator_inverse(1).unwrap());
    }

    #[test]
    fn kl_small_cases() {
        let t = CoxeterType::A(2);
        let alg = HeckeAlgebra::new(t);
        let s = t.generator(1).unwrap();
        let mut expected = alg.generator(1).unwrap();
        expected.add_term(t.identity(), LaurentPoly::v());
        assert_eq!(alg.kl_elt(&s).unwrap(), expected);
        assert_eq!(alg.kl_elt(&t.identity()).unwrap(), alg.one());
        // dihedral longest element: Σ v^{ℓ(w0)-ℓ(x)} H_x
        for m in 3..=6 {
            let t = CoxeterType::I2(m);
            let alg = HeckeAlgebra::new(t);
            let w0 = alg.elements().last().unwrap().clone();
            let kl = alg.kl_elt(&w0).unwrap();
            for x in alg.elements() {
                assert_eq!(kl.coeff(x), LaurentPoly::monomial(1, (w0.length() - x.length()) as i32));
            }
        }
    }

    fn check_kl_conditions(t: CoxeterType) {
        let alg = HeckeAlgebra::new(t);
        for w in alg.elements() {
            let kl = alg.kl_elt(w).unwrap();
            assert_eq!(alg.bar(&kl).unwrap(), kl, "{w}");
            assert_eq!(kl.coeff(w), LaurentPoly::one());
            for (x, c) in kl.terms() {
                assert!(x == w || c.in_positive_part(), "{w} {x} {c}");
            }
        }
    }

    #[test]
    fn kl_defining_conditions() {
        check_kl_conditions(CoxeterType::A(3));
        check_kl_conditions(CoxeterType::B(3));
        check_kl_conditions(CoxeterType::A(4));
    }

    #[test]
    fn kl_a3_nontrivial_polynomial() {
        // s2 s1 s3 s2 has P_{e,w} = 1 + q, i.e. coefficient v^4 + v^2 at H_e
        let t = CoxeterType::A(4);
        let alg = HeckeAlgebra::new(t);
        let w = t.element_from_word(&[2, 1, 3, 2]).unwrap();
        assert_eq!(alg.kl_elt(&w).unwrap().coeff(&t.identity()), lp("v^4 + v^2"));
    }

    #[test]
    fn dihedral_table_oracle() {
        for m in 2..=6 {
            let alg = HeckeAlgebra::new(CoxeterType::I2(m));
            let els = alg.elements().to_vec();
            for x in &els {
                for y in &els {
                    let a = alg.standard_elt(x).unwrap();
                    let b = alg.standard_elt(y).unwrap();
                    assert_eq!(alg.mul(&a, &b).unwrap(), left_table_mul(&alg, &a, &b));
                }
            }
        }
    }

    #[test]
    fn upsilon_examples() {
        let t = CoxeterType::new(Family::A, 3).unwrap();
        let alg = HeckeAlgebra::new(t);
        let comps = t.matrix().odd_components();
        let w: SingularWord = "t1".parse().unwrap();
        let phi = PhiAssignment::uniform(&comps, "v + x".parse().unwrap());
        assert_eq!(alg.upsilon_eval(&w, &phi).unwrap(), alg.kl_elt(&t.generator(1).unwrap()).unwrap());
        let phi = PhiAssignment::uniform(&comps, XPoly::x());
        assert_eq!(alg.upsilon_eval(&w, &phi).unwrap(), alg.generator(1).unwrap());
        let phi = PhiAssignment::uniform(&comps, "x - x^-1".parse().unwrap());
        assert_eq!(alg.upsilon_eval(&w, &phi).unwrap(), alg.one().scale(&lp("v^-1 - v")));
    }

    #[test]
    fn upsilon_respects_relations() {
        let phis = ["v + x", "x - x^-1", "2 + x^2", "v^2*x^-1 + 3", "x^3 - v"];
        for t in [CoxeterType::A(3), CoxeterType::B(2), CoxeterType::I2(5), CoxeterType::I2(6)] {
            let alg = HeckeAlgebra::new(t);
            let m = t.matrix();
            let rels = singular_relations(&m);
            for p in phis {
                let phi = PhiAssignment::uniform(&m.odd_components(), p.parse().unwrap());
                let asg = alg.upsilon_assignment(&phi).unwrap();
                for r in &rels.pairs {
                    assert_eq!(asg.evaluate(&r.lhs).unwrap(), asg.evaluate(&r.rhs).unwrap(), "{t} {p} {}", r.label);
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let alg = HeckeAlgebra::new(CoxeterType::A(2));
        let kl = alg.kl_elt(&CoxeterType::A(2).generator(1).unwrap()).unwrap();
        let v = kl.to_json();
        assert_eq!(v["basis"], "standard");
        assert_eq!(v["terms"][0]["coeff"], "v");
        assert_eq!(v["terms"][1]["coeff"], "1");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn bar_is_an_involutive_ring_map(seed in any::<u64>()) {
            let alg = HeckeAlgebra::new(CoxeterType::A(3));
            let a = random_elt(&alg, seed);
            let b = random_elt(&alg, seed.wrapping_add(1));
            prop_assert_eq!(alg.bar(&alg.bar(&a).unwrap()).unwrap(), a.clone());
            let ab = alg.mul(&a, &b).unwrap();
            prop_assert_eq!(alg.bar(&ab).unwrap(), alg.mul(&alg.bar(&a).unwrap(), &alg.bar(&b).unwrap()).unwrap());
        }

        #[test]
        fn associativity_b2(seed in any::<u64>()) {
            let alg = HeckeAlgebra::new(CoxeterType::B(2));
            let (a, b, c) = (random_elt(&alg, seed), random_elt(&alg, seed ^ 1), random_elt(&alg, seed ^ 2));
            let l = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
            let r = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn word_evaluation_is_multiplicative(seed in 0u64..200) {
            let t = CoxeterType::B(2);
            let alg = HeckeAlgebra::new(t);
            let phi = PhiAssignment::uniform(&t.matrix().odd_components(), "v + x".parse().unwrap());
            let asg = alg.upsilon_assignment(&phi).unwrap();
            let ws = random_words(&alphabet(&t.matrix()), 6, 2, seed);
            let lhs = asg.evaluate(&ws[0].concat(&ws[1])).unwrap();
            let rhs = alg.mul(&asg.evaluate(&ws[0]).unwrap(), &asg.evaluate(&ws[1]).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
