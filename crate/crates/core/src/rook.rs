//! Rook monoids: partial permutations, signed partial permutations, and the maps φ.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::coxeter::{CoxeterType, Family, GroupElement};
use crate::dualsym::{BlockBijection, BlockBijectionB};
use crate::error::{Error, Result};
use crate::words::{Assignment, SingularWord};

/// Partial injection of `{1..n}`; `targets[x-1]` is the image of `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialPerm {
    targets: Vec<Option<u32>>,
}

impl PartialPerm {
    pub fn new(targets: Vec<Option<u32>>) -> Result<Self> {
        let n = targets.len() as u32;
        let mut seen = vec![false; targets.len()];
        for &t in targets.iter().flatten() {
            if t == 0 || t > n || std::mem::replace(&mut seen[t as usize - 1], true) {
                return Err(Error::InvalidElement("not a partial injection".into()));
            }
        }
        Ok(Self { targets })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            targets: (1..=n as u32).map(Some).collect(),
        }
    }

    /// Identity undefined exactly on `x`.
    pub fn epsilon(x: &[usize], n: usize) -> Self {
        Self {
            targets: (1..=n as u32)
                .map(|i| (!x.contains(&(i as usize))).then_some(i))
                .collect(),
        }
    }

    pub fn permutation(w: &GroupElement) -> Result<Self> {
        match w {
            GroupElement::Perm(p) => Ok(Self {
                targets: p.iter().map(|&v| Some(v)).collect(),
            }),
            _ => Err(Error::Unsupported("partial permutation of a non-permutation".into())),
        }
    }

    pub fn n(&self) -> usize {
        self.targets.len()
    }

    pub fn get(&self, x: usize) -> Option<u32> {
        self.targets[x - 1]
    }

    /// `x ↦ a(b(x))`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Self {
            targets: other
                .targets
                .iter()
                .map(|t| t.and_then(|y| self.targets[y as usize - 1]))
                .collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.targets.iter().flatten().count()
    }

    /// Membership in the submonoid of elements whose rank is not `n - 1`.
    pub fn in_tilde(&self) -> bool {
        self.rank() + 1 != self.n()
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n(), "map": self.to_string()})
    }
}

impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .targets
            .iter()
            .map(|t| t.map_or_else(|| "-".to_string(), |v| v.to_string()))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_entries(s: &str) -> Result<Vec<Option<i32>>> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|t| match t.trim() {
            "-" => Ok(None),
            v => v
                .trim_start_matches('+')
                .parse::<i32>()
                .map(Some)
                .map_err(|_| Error::Parse(format!("bad entry `{v}`"))),
        })
        .collect()
}

impl FromStr for PartialPerm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_entries(s)?;
        if entries.iter().flatten().any(|&v| v <= 0) {
            return Err(Error::Parse("entries must be positive".into()));
        }
        Self::new(entries.into_iter().map(|e| e.map(|v| v as u32)).collect())
    }
}

/// Partial signed injection of `±{1..n}` commuting with negation; `targets[x-1]` is the image of `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPartialPerm {
    targets: Vec<Option<i32>>,
}

impl SignedPartialPerm {
    pub fn new(targets: Vec<Option<i32>>) -> Result<Self> {
        let n = targets.len() as u32;
        let mut seen = vec![false; targets.len()];
        for &t in targets.iter().flatten() {
            let a = t.unsigned_abs();
            if a == 0 || a > n || std::mem::replace(&mut seen[a as usize - 1], true) {
                return Err(Error::InvalidElement("not a signed partial injection".into()));
            }
        }
        Ok(Self { targets })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            targets: (1..=n as i32).map(Some).collect(),
        }
    }

    /// Identity undefined exactly on `x` (and on `-x`).
    pub fn epsilon(x: &[usize], n: usize) -> Self {
        Self {
            targets: (1..=n as i32)
                .map(|i| (!x.contains(&(i as usize))).then_some(i))
                .collect(),
        }
    }

    /// Sign change at `i`.
    pub fn sign_flip(i: usize, n: usize) -> Self {
        let mut s = Self::identity(n);
        s.targets[i - 1] = Some(-(i as i32));
        s
    }

    pub fn permutation(w: &GroupElement) -> Result<Self> {
        match w {
            GroupElement::SignedPerm(p) => Ok(Self {
                targets: p.iter().map(|&v| Some(v)).collect(),
            }),
            _ => Err(Error::Unsupported("signed partial permutation of another element".into())),
        }
    }

    pub fn n(&self) -> usize {
        self.targets.len()
    }

    /// Image of a signed point.
    pub fn apply(&self, x: i32) -> Option<i32> {
        self.targets[x.unsigned_abs() as usize - 1].map(|y| x.signum() * y)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Self {
            targets: other.targets.iter().map(|t| t.and_then(|y| self.apply(y))).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.targets.iter().flatten().count()
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n(), "map": self.to_string()})
    }
}

impl fmt::Display for SignedPartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .targets
            .iter()
            .map(|t| t.map_or_else(|| "-".to_string(), |v| format!("{v:+}")))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for SignedPartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SignedPartialPerm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_entries(s)?)
    }
}

/// `υ`: restriction of a uniform block bijection to its singleton blocks.
pub fn upsilon_restrict(a: &BlockBijection) -> Result<PartialPerm> {
    if !a.is_uniform() {
        return Err(Error::InvalidElement("block bijection is not uniform".into()));
    }
    let mut targets = vec![None; a.n()];
    for (dom, cod) in a.components() {
        if dom.len() == 1 {
            targets[dom[0] as usize - 1] = Some(cod[0] as u32);
        }
    }
    PartialPerm::new(targets)
}

/// Type-B `υ`: restriction to pure singletons, `i ↦ ±j`.
pub fn upsilon_b_restrict(a: &BlockBijectionB) -> Result<SignedPartialPerm> {
    if !a.is_uniform() {
        return Err(Error::InvalidElement("block bijection is not factorizable".into()));
    }
    let mut targets = vec![None; a.n()];
    for (dom, cod) in a.components() {
        if dom.len() == 1 && dom[0] > 0 {
            targets[dom[0] as usize - 1] = Some(cod[0]);
        }
    }
    SignedPartialPerm::new(targets)
}

/// φ: `σ_i ↦ s_i`, `τ_i ↦ ε_{i,i+1}` into `IS_n`.
pub fn phi_assignment(n: usize) -> Result<Assignment<PartialPerm>> {
    let t = CoxeterType::new(Family::A, n)?;
    let labels = t.labels();
    let sigma = labels
        .iter()
        .map(|&i| PartialPerm::permutation(&t.generator(i)?))
        .collect::<Result<_>>()?;
    let tau = labels.iter().map(|&i| PartialPerm::epsilon(&[i, i + 1], n)).collect();
    Assignment::involutive(
        "phi",
        labels,
        sigma,
        tau,
        PartialPerm::identity(n),
        Arc::new(|a: &PartialPerm, b: &PartialPerm| a.mul(b).expect("equal sizes")),
    )
}

/// φ with the scalar `a` attached to every `τ`: values are `(α, a^{#τ})`.
pub fn phi_weighted_assignment(n: usize, a: i64) -> Result<Assignment<(PartialPerm, BigInt)>> {
    let base = phi_assignment(n)?;
    let labels = base.labels().to_vec();
    let one = BigInt::from(1);
    let sigma: Vec<_> = labels
        .iter()
        .map(|&i| Ok((base.image(crate::Letter::Sigma(i))?.clone(), one.clone())))
        .collect::<Result<_>>()?;
    let tau: Vec<_> = labels
        .iter()
        .map(|&i| Ok((base.image(crate::Letter::Tau(i))?.clone(), BigInt::from(a))))
        .collect::<Result<_>>()?;
    Assignment::involutive(
        "phi_weighted",
        labels,
        sigma,
        tau,
        (PartialPerm::identity(n), one),
        Arc::new(|x: &(PartialPerm, BigInt), y: &(PartialPerm, BigInt)| {
            (x.0.mul(&y.0).expect("equal sizes"), &x.1 * &y.1)
        }),
    )
}

/// Type-B φ: `σ_0 ↦ ϵ_1`, `τ_0 ↦ ε_{1}`, `σ_i ↦ s̃_i`, `τ_i ↦ ε_{i,i+1}` into `SIS_n`.
pub fn phi_b_assignment(n: usize) -> Result<Assignment<SignedPartialPerm>> {
    let t = CoxeterType::new(Family::B, n)?;
    let labels = t.labels();
    let sigma = labels
        .iter()
        .map(|&i| SignedPartialPerm::permutation(&t.generator(i)?))
        .collect::<Result<_>>()?;
    let tau = labels
        .iter()
        .map(|&i| {
            if i == 0 {
                SignedPartialPerm::epsilon(&[1], n)
            } else {
                SignedPartialPerm::epsilon(&[i, i + 1], n)
            }
        })
        .collect();
    Assignment::involutive(
        "phi_b",
        labels,
        sigma,
        tau,
        SignedPartialPerm::identity(n),
        Arc::new(|a: &SignedPartialPerm, b: &SignedPartialPerm| a.mul(b).expect("equal sizes")),
    )
}

pub fn phi_eval(word: &SingularWord, n: usize) -> Result<PartialPerm> {
    phi_assignment(n)?.evaluate(word)
}

pub fn phi_b_eval(word: &SingularWord, n: usize) -> Result<SignedPartialPerm> {
    phi_b_assignment(n)?.evaluate(word)
}

/// Every partial injection of `{1..n}`.
pub fn all_partial_perms(n: usize) -> Vec<PartialPerm> {
    let mut out = Vec::new();
    let mut cur = vec![None; n];
    fn rec(k: usize, n: usize, used: &mut Vec<bool>, cur: &mut Vec<Option<u32>>, out: &mut Vec<PartialPerm>) {
        if k == n {
            out.push(PartialPerm { targets: cur.clone() });
            return;
        }
        cur[k] = None;
        rec(k + 1, n, used, cur, out);
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur[k] = Some(v as u32 + 1);
                rec(k + 1, n, used, cur, out);
                used[v] = false;
            }
        }
        cur[k] = None;
    }
    rec(0, n, &mut vec![false; n], &mut cur, &mut out);
    out.sort();
    out
}

/// Every signed partial injection of `±{1..n}`.
pub fn all_signed_partial_perms(n: usize) -> Vec<SignedPartialPerm> {
    let mut out = Vec::new();
    for p in all_partial_perms(n) {
        let defined: Vec<usize> = (0..n).filter(|&i| p.targets[i].is_some()).collect();
        for mask in 0u32..(1 << defined.len()) {
            let mut t: Vec<Option<i32>> = p.targets.iter().map(|v| v.map(|x| x as i32)).collect();
            for (b, &i) in defined.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    t[i] = t[i].map(|x| -x);
                }
            }
            out.push(SignedPartialPerm { targets: t });
        }
    }
    out.sort();
    out
}
