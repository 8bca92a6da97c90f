//! Boolean matrices, essential relations, and the maps η and its type-B analogue.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde_json::{json, Value};

use crate::coxeter::{CoxeterType, GroupElement};
use crate::error::{Error, Result};
use crate::words::{Assignment, SingularWord};

/// Square matrix over the Boolean semiring, rows stored as bitsets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolMat {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMat {
    pub fn zero(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry in row `i`, column `j` (0-based).
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.bits[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Boolean product `(ab)[i][k] = OR_j a[i][j] AND b[j][k]`.
    pub fn mul(&self, other: &BoolMat) -> Result<BoolMat> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = BoolMat::zero(self.n);
        for i in 0..self.n {
            let dst = i * self.words;
            for j in 0..self.n {
                if self.get(i, j) {
                    for (d, s) in out.bits[dst..dst + self.words].iter_mut().zip(other.row(j)) {
                        *d |= s;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn union(&self, other: &BoolMat) -> BoolMat {
        let mut out = self.clone();
        for (d, s) in out.bits.iter_mut().zip(&other.bits) {
            *d |= s;
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Every row and every column is nonzero.
    pub fn is_essential(&self) -> bool {
        let rows_ok = (0..self.n).all(|i| self.row(i).iter().any(|&w| w != 0));
        let cols_ok = (0..self.n).all(|j| (0..self.n).any(|i| self.get(i, j)));
        rows_ok && cols_ok
    }

    /// Permutation matrix with a one at `(w(j), j)`.
    pub fn permutation(w: &GroupElement) -> Result<BoolMat> {
        match w {
            GroupElement::Perm(p) => {
                let mut m = BoolMat::zero(p.len());
                for (j, &v) in p.iter().enumerate() {
                    m.set(v as usize - 1, j, true);
                }
                Ok(m)
            }
            _ => Err(Error::Unsupported("permutation matrix of a non-permutation".into())),
        }
    }

    /// `s_i` in `Bin_n`, `1 <= i < n`.
    pub fn gen_s(i: usize, n: usize) -> Result<BoolMat> {
        check_index(i, 1, n)?;
        BoolMat::permutation(&CoxeterType::A(n).generator(i)?)
    }

    /// Equality relation plus `(i, i+1)` and `(i+1, i)`.
    pub fn gen_bold_s(i: usize, n: usize) -> Result<BoolMat> {
        check_index(i, 1, n)?;
        let mut m = BoolMat::identity(n);
        m.set(i - 1, i, true);
        m.set(i, i - 1, true);
        Ok(m)
    }

    /// Completes every connected component of the bipartite graph (row `i` to column `j`).
    pub fn complete_components(&self) -> BoolMat {
        let n = self.n;
        let mut uf = UnionFind::<usize>::new(2 * n);
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    uf.union(i, n + j);
                }
            }
        }
        let labels = uf.into_labeling();
        BoolMat::from_fn(n, |i, j| labels[i] == labels[n + j])
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "rows": self.row_strings()})
    }
}

fn check_index(i: usize, lo: usize, n: usize) -> Result<()> {
    if i < lo || i >= n {
        return Err(Error::Parameter(format!("generator index {i} out of range for n = {n}")));
    }
    Ok(())
}

impl fmt::Display for BoolMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.row_strings().join("\n"))
    }
}

impl fmt::Debug for BoolMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.row_strings().join(" "))
    }
}

impl FromStr for BoolMat {
    type Err = Error;

    /// Rows of `0`/`1` characters separated by whitespace, `/` or `;`.
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == '/' || c == ';')
            .filter(|r| !r.is_empty())
            .collect();
        let n = rows.len();
        let mut m = BoolMat::zero(n);
        for (i, r) in rows.iter().enumerate() {
            if r.chars().count() != n {
                return Err(Error::Parse(format!("row `{r}` does not have {n} entries")));
            }
            for (j, c) in r.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => return Err(Error::Parse(format!("bad matrix entry `{c}`"))),
                }
            }
        }
        Ok(m)
    }
}

/// Rotation-invariant Boolean matrix on the signed points `-n..-1, 1..n` (display order).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolMatB {
    n: usize,
    mat: BoolMat,
}

impl BoolMatB {
    /// Position of a signed point in display order.
    pub fn index(n: usize, x: i32) -> usize {
        debug_assert!(x != 0 && x.unsigned_abs() as usize <= n);
        if x < 0 {
            (n as i32 + x) as usize
        } else {
            n + x as usize - 1
        }
    }

    /// Signed point at a display position.
    pub fn point(n: usize, p: usize) -> i32 {
        if p < n {
            p as i32 - n as i32
        } else {
            (p - n) as i32 + 1
        }
    }

    pub fn bar_index(n: usize, p: usize) -> usize {
        2 * n - 1 - p
    }

    pub fn new(n: usize, mat: BoolMat) -> Result<Self> {
        if mat.n() != 2 * n {
            return Err(Error::SizeMismatch {
                expected: 2 * n,
                found: mat.n(),
            });
        }
        let b = |p| Self::bar_index(n, p);
        for p in 0..2 * n {
            for q in 0..2 * n {
                if mat.get(p, q) != mat.get(b(p), b(q)) {
                    return Err(Error::InvalidElement(
                        "matrix is not invariant under the 180 degree rotation".into(),
                    ));
                }
            }
        }
        Ok(Self { n, mat })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            mat: BoolMat::identity(2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &BoolMat {
        &self.mat
    }

    /// Entry for signed points: row `x`, column `y`.
    pub fn get(&self, x: i32, y: i32) -> bool {
        self.mat.get(Self::index(self.n, x), Self::index(self.n, y))
    }

    pub fn mul(&self, other: &BoolMatB) -> Result<BoolMatB> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            mat: self.mat.mul(&other.mat)?,
        })
    }

    pub fn is_essential(&self) -> bool {
        self.mat.is_essential()
    }

    pub fn complete_components(&self) -> BoolMatB {
        Self {
            n: self.n,
            mat: self.mat.complete_components(),
        }
    }

    /// Matrix of a signed permutation: one at `(w(x), x)`.
    pub fn signed_permutation(w: &GroupElement) -> Result<BoolMatB> {
        let GroupElement::SignedPerm(p) = w else {
            return Err(Error::Unsupported("signed permutation matrix of another element".into()));
        };
        let n = p.len();
        let mut m = BoolMat::zero(2 * n);
        for x in 1..=n as i32 {
            for sx in [x, -x] {
                m.set(Self::index(n, w.apply(sx)), Self::index(n, sx), true);
            }
        }
        Ok(Self { n, mat: m })
    }

    /// `s̃_i` in `Bin^B_n`, `0 <= i < n`.
    pub fn gen_b(i: usize, n: usize) -> Result<BoolMatB> {
        check_index(i, 0, n)?;
        Self::signed_permutation(&CoxeterType::B(n).generator(i)?)
    }

    /// Bold generator: for `i = 0` adds `(1,-1)` and `(-1,1)`; otherwise adds the
    /// pairs `(i,i+1)`, `(i+1,i)` and their barred copies.
    pub fn gen_bold_b(i: usize, n: usize) -> Result<BoolMatB> {
        check_index(i, 0, n)?;
        let mut m = BoolMat::identity(2 * n);
        let mut link = |x: i32, y: i32| {
            m.set(Self::index(n, x), Self::index(n, y), true);
            m.set(Self::index(n, y), Self::index(n, x), true);
        };
        if i == 0 {
            link(1, -1);
        } else {
            let i = i as i32;
            link(i, i + 1);
            link(-i, -i - 1);
        }
        Self::new(n, m)
    }

    pub fn to_json(&self) -> Value {
        let order: Vec<i32> = (0..2 * self.n).map(|p| Self::point(self.n, p)).collect();
        json!({"n": self.n, "order": order, "rows": self.mat.row_strings()})
    }
}

impl fmt::Display for BoolMatB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

impl fmt::Debug for BoolMatB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.mat)
    }
}

/// η: `σ_i ↦ s_i`, `τ_i ↦ 𝐬_i` into `Bin_n`.
pub fn eta_assignment(n: usize) -> Result<Assignment<BoolMat>> {
    let labels: Vec<usize> = CoxeterType::new(crate::Family::A, n)?.labels();
    let sigma = labels.iter().map(|&i| BoolMat::gen_s(i, n)).collect::<Result<_>>()?;
    let tau = labels.iter().map(|&i| BoolMat::gen_bold_s(i, n)).collect::<Result<_>>()?;
    Assignment::involutive(
        "eta",
        labels,
        sigma,
        tau,
        BoolMat::identity(n),
        Arc::new(|a: &BoolMat, b: &BoolMat| a.mul(b).expect("equal sizes")),
    )
}

/// Type-B η: `σ_i ↦ s̃_i`, `τ_i ↦ 𝐬̃_i` into `Bin^B_n`.
pub fn eta_b_assignment(n: usize) -> Result<Assignment<BoolMatB>> {
    let labels: Vec<usize> = CoxeterType::new(crate::Family::B, n)?.labels();
    let sigma = labels.iter().map(|&i| BoolMatB::gen_b(i, n)).collect::<Result<_>>()?;
    let tau = labels.iter().map(|&i| BoolMatB::gen_bold_b(i, n)).collect::<Result<_>>()?;
    Assignment::involutive(
        "eta_b",
        labels,
        sigma,
        tau,
        BoolMatB::identity(n),
        Arc::new(|a: &BoolMatB, b: &BoolMatB| a.mul(b).expect("equal sizes")),
    )
}

pub fn eta_eval(word: &SingularWord, n: usize) -> Result<BoolMat> {
    let m = eta_assignment(n)?.evaluate(word)?;
    if !m.is_essential() {
        return Err(Error::Internal("image of eta is not essential".into()));
    }
    Ok(m)
}

pub fn eta_b_eval(word: &SingularWord, n: usize) -> Result<BoolMatB> {
    let m = eta_b_assignment(n)?.evaluate(word)?;
    if !m.is_essential() {
        return Err(Error::Internal("image of eta_b is not essential".into()));
    }
    Ok(m)
}
