//! Graded bimodules over the dual numbers `D = Q[x]/(x²)` and two-term complexes of them.
//!
//! `θ_e = D` and `θ_s = D ⊗ D` carry pinned monomial bases. All modules built here keep
//! monomial bases (the actions send basis vectors to basis vectors or zero), so their
//! indecomposable summands are the connected components of the action graph.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Dense matrix over exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::SizeMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Mat { rows, cols, data: entries.iter().map(|&v| q(v)).collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    fn add_at(&mut self, i: usize, j: usize, v: &Q) {
        let k = i * self.cols + j;
        self.data[k] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// `[a; b]`
    pub fn vstack(a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.cols);
        let mut data = a.data.clone();
        data.extend(b.data.iter().cloned());
        Mat { rows: a.rows + b.rows, cols: a.cols, data }
    }

    /// `[a b]`
    pub fn hstack(a: &Mat, b: &Mat) -> Mat {
        Mat::vstack(&a.transpose(), &b.transpose()).transpose()
    }

    pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
        let mut out = Mat::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(a.rows + i, a.cols + j, b.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            out.push(v);
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = Mat::hstack(self, &Mat::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let idx: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Some(r.submatrix(&idx, &right))
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Q::zero() };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                let f = m.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn to_json(&self) -> Value {
        json!((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Finite-dimensional graded `D`-bimodule with a basis of homogeneous vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedBimodule {
    labels: Vec<String>,
    degrees: Vec<i32>,
    left: Mat,
    right: Mat,
}

impl GradedBimodule {
    pub fn new(labels: Vec<String>, degrees: Vec<i32>, left: Mat, right: Mat) -> Result<Self> {
        let n = degrees.len();
        if labels.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: labels.len() });
        }
        for m in [&left, &right] {
            if m.rows != n || m.cols != n {
                return Err(Error::SizeMismatch { expected: n, found: m.rows.max(m.cols) });
            }
            if !m.mul(m).is_zero() {
                return Err(Error::InvalidElement("x² does not act as zero".into()));
            }
            for i in 0..n {
                for j in 0..n {
                    if !m.get(i, j).is_zero() && degrees[i] != degrees[j] + 2 {
                        return Err(Error::InvalidElement("action of x is not of degree 2".into()));
                    }
                }
            }
        }
        if left.mul(&right) != right.mul(&left) {
            return Err(Error::InvalidElement("left and right actions do not commute".into()));
        }
        Ok(GradedBimodule { labels, degrees, left, right })
    }

    pub fn zero() -> Self {
        GradedBimodule { labels: vec![], degrees: vec![], left: Mat::zeros(0, 0), right: Mat::zeros(0, 0) }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn left_action(&self) -> &Mat {
        &self.left
    }

    pub fn right_action(&self) -> &Mat {
        &self.right
    }

    /// `M⟨k⟩`: every degree drops by `k`.
    pub fn shift(&self, k: i32) -> Self {
        let mut out = self.clone();
        for d in &mut out.degrees {
            *d -= k;
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut degrees = self.degrees.clone();
        degrees.extend(other.degrees.iter().cloned());
        GradedBimodule {
            labels,
            degrees,
            left: Mat::block_diag(&self.left, &other.left),
            right: Mat::block_diag(&self.right, &other.right),
        }
    }

    /// Same degrees and actions, labels ignored.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.degrees == other.degrees && self.left == other.left && self.right == other.right
    }

    pub fn restrict(&self, idx: &[usize]) -> Self {
        GradedBimodule {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            degrees: idx.iter().map(|&i| self.degrees[i]).collect(),
            left: self.left.submatrix(idx, idx),
            right: self.right.submatrix(idx, idx),
        }
    }

    /// Connected components of the action graph, each sorted, ordered by smallest index.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut uf = UnionFind::<usize>::new(n.max(1));
        for m in [&self.left, &self.right] {
            for i in 0..n {
                for j in 0..n {
                    if !m.get(i, j).is_zero() {
                        uf.union(i, j);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut first: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let root = uf.find(i);
            let key = *first.entry(root).or_insert(i);
            groups.entry(key).or_default().push(i);
        }
        groups.into_values().collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .labels
            .iter()
            .zip(&self.degrees)
            .map(|(l, d)| json!({"label": l, "degree": d}))
            .collect::<Vec<_>>())
    }
}

impl fmt::Display for GradedBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().zip(&self.degrees).map(|(l, d)| format!("{l}@{d}")).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

const LETTER: [&str; 2] = ["1", "x"];

/// `D` with basis `{1, x}` in degrees `{0, 2}`.
pub fn make_theta_e() -> GradedBimodule {
    let x = Mat::from_i64(2, 2, &[0, 0, 1, 0]).unwrap();
    GradedBimodule::new(vec!["1".into(), "x".into()], vec![0, 2], x.clone(), x).unwrap()
}

/// `D ⊗ D` with basis `1⊗1, x⊗1, 1⊗x, x⊗x`; `1⊗1` sits in degree −1.
pub fn make_theta_s() -> GradedBimodule {
    left_whisker(&make_theta_e())
}

/// `θ_s ⊗_D M = D ⊗ M`, basis `a⊗m` at index `a + 2·m`.
pub fn left_whisker(m: &GradedBimodule) -> GradedBimodule {
    let n = m.dim();
    let mut labels = Vec::with_capacity(2 * n);
    let mut degrees = Vec::with_capacity(2 * n);
    for j in 0..n {
        for a in 0..2 {
            labels.push(format!("{}⊗{}", LETTER[a], m.labels[j]));
            degrees.push(2 * a as i32 - 1 + m.degrees[j]);
        }
    }
    let mut left = Mat::zeros(2 * n, 2 * n);
    for j in 0..n {
        left.set(1 + 2 * j, 2 * j, Q::one());
    }
    let right = left_whisker_mat(&m.right);
    GradedBimodule { labels, degrees, left, right }
}

/// `M ⊗_D θ_s = M ⊗ D`, basis `m⊗c` at index `m + dim·c`.
pub fn right_whisker(m: &GradedBimodule) -> GradedBimodule {
    let n = m.dim();
    let mut labels = Vec::with_capacity(2 * n);
    let mut degrees = Vec::with_capacity(2 * n);
    for c in 0..2 {
        for j in 0..n {
            labels.push(format!("{}⊗{}", m.labels[j], LETTER[c]));
            degrees.push(m.degrees[j] + 2 * c as i32 - 1);
        }
    }
    let mut right = Mat::zeros(2 * n, 2 * n);
    for j in 0..n {
        right.set(n + j, j, Q::one());
    }
    let left = right_whisker_mat(&m.left);
    GradedBimodule { labels, degrees, left, right }
}

fn left_whisker_mat(f: &Mat) -> Mat {
    let mut out = Mat::zeros(2 * f.rows, 2 * f.cols);
    for i in 0..f.rows {
        for j in 0..f.cols {
            for a in 0..2 {
                out.set(a + 2 * i, a + 2 * j, f.get(i, j).clone());
            }
        }
    }
    out
}

fn right_whisker_mat(f: &Mat) -> Mat {
    let mut out = Mat::zeros(2 * f.rows, 2 * f.cols);
    for i in 0..f.rows {
        for j in 0..f.cols {
            for c in 0..2 {
                out.set(i + f.rows * c, j + f.cols * c, f.get(i, j).clone());
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Elementary {
    /// `θ_e⟨k⟩`
    E(i32),
    /// `θ_s⟨k⟩`
    S(i32),
}

/// Recognizes `θ_e⟨k⟩` and `θ_s⟨k⟩` in their pinned bases.
pub fn elementary(m: &GradedBimodule) -> Option<Elementary> {
    match m.dim() {
        2 => {
            let k = -m.degrees[0];
            make_theta_e().shift(k).same_shape(m).then_some(Elementary::E(k))
        }
        4 => {
            let k = -1 - m.degrees[0];
            make_theta_s().shift(k).same_shape(m).then_some(Elementary::S(k))
        }
        _ => None,
    }
}

/// `P ⊗_D N` for elementary `P`.
pub fn tensor_object(p: &GradedBimodule, n: &GradedBimodule) -> Result<GradedBimodule> {
    match elementary(p) {
        Some(Elementary::E(k)) => Ok(n.shift(k)),
        Some(Elementary::S(k)) => Ok(left_whisker(n).shift(k)),
        None => Err(Error::Unsupported("left tensor factor must be θ_e⟨k⟩ or θ_s⟨k⟩".into())),
    }
}

/// Homogeneous bimodule homomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BimoduleMap {
    source: GradedBimodule,
    target: GradedBimodule,
    matrix: Mat,
    degree: i32,
}

impl BimoduleMap {
    pub fn new(source: GradedBimodule, target: GradedBimodule, matrix: Mat, degree: i32) -> Result<Self> {
        if matrix.rows != target.dim() || matrix.cols != source.dim() {
            return Err(Error::SizeMismatch { expected: target.dim() * source.dim(), found: matrix.rows * matrix.cols });
        }
        for i in 0..matrix.rows {
            for j in 0..matrix.cols {
                if !matrix.get(i, j).is_zero() && target.degrees[i] != source.degrees[j] + degree {
                    return Err(Error::InvalidElement(format!("map is not homogeneous of degree {degree}")));
                }
            }
        }
        if target.left.mul(&matrix) != matrix.mul(&source.left) || target.right.mul(&matrix) != matrix.mul(&source.right) {
            return Err(Error::InvalidElement("map does not commute with the action of x".into()));
        }
        Ok(BimoduleMap { source, target, matrix, degree })
    }

    /// Degree-0 map.
    pub fn of(source: &GradedBimodule, target: &GradedBimodule, matrix: Mat) -> Result<Self> {
        BimoduleMap::new(source.clone(), target.clone(), matrix, 0)
    }

    pub fn identity(m: &GradedBimodule) -> Self {
        BimoduleMap { source: m.clone(), target: m.clone(), matrix: Mat::identity(m.dim()), degree: 0 }
    }

    pub fn zero(source: &GradedBimodule, target: &GradedBimodule) -> Self {
        BimoduleMap { source: source.clone(), target: target.clone(), matrix: Mat::zeros(target.dim(), source.dim()), degree: 0 }
    }

    pub fn source(&self) -> &GradedBimodule {
        &self.source
    }

    pub fn target(&self) -> &GradedBimodule {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &BimoduleMap) -> Result<BimoduleMap> {
        if !other.target.same_shape(&self.source) {
            return Err(Error::InvalidElement("composition of incompatible maps".into()));
        }
        Ok(BimoduleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
            degree: self.degree + other.degree,
        })
    }

    pub fn scale(&self, c: &Q) -> BimoduleMap {
        BimoduleMap { matrix: self.matrix.scale(c), ..self.clone() }
    }

    pub fn neg(&self) -> BimoduleMap {
        self.scale(&-Q::one())
    }

    pub fn add(&self, other: &BimoduleMap) -> Result<BimoduleMap> {
        if !self.source.same_shape(&other.source) || !self.target.same_shape(&other.target) || self.degree != other.degree {
            return Err(Error::InvalidElement("sum of incompatible maps".into()));
        }
        Ok(BimoduleMap { matrix: self.matrix.add(&other.matrix), ..self.clone() })
    }

    /// Same matrix between `M⟨k⟩` and `N⟨k⟩`.
    pub fn shift(&self, k: i32) -> BimoduleMap {
        BimoduleMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            matrix: self.matrix.clone(),
            degree: self.degree,
        }
    }

    pub fn left_whisker(&self) -> BimoduleMap {
        BimoduleMap {
            source: left_whisker(&self.source),
            target: left_whisker(&self.target),
            matrix: left_whisker_mat(&self.matrix),
            degree: self.degree,
        }
    }

    pub fn right_whisker(&self) -> BimoduleMap {
        BimoduleMap {
            source: right_whisker(&self.source),
            target: right_whisker(&self.target),
            matrix: right_whisker_mat(&self.matrix),
            degree: self.degree,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "degree": self.degree,
            "matrix": self.matrix.to_json(),
        })
    }
}

/// `f ⊗ id_N : P ⊗ N → P' ⊗ N` for elementary `P`, `P'`, read off the image of the generator.
fn tensor_id(f: &BimoduleMap, n: &GradedBimodule) -> Result<Mat> {
    let (Some(ps), Some(pt)) = (elementary(&f.source), elementary(&f.target)) else {
        return Err(Error::Unsupported("left tensor factor must be θ_e⟨k⟩ or θ_s⟨k⟩".into()));
    };
    let d = n.dim();
    let u: Vec<Q> = (0..f.matrix.rows).map(|i| f.matrix.get(i, 0).clone()).collect();
    let powers = [Mat::identity(d), n.left.clone()];
    let mut out;
    match (ps, pt) {
        (Elementary::E(_), Elementary::E(_)) => {
            out = powers[0].scale(&u[0]).add(&powers[1].scale(&u[1]));
        }
        (Elementary::E(_), Elementary::S(_)) => {
            out = Mat::zeros(2 * d, d);
            for a in 0..2 {
                for b in 0..2 {
                    let c = &u[a + 2 * b];
                    if c.is_zero() {
                        continue;
                    }
                    for i in 0..d {
                        for j in 0..d {
                            out.add_at(a + 2 * i, j, &(c * powers[b].get(i, j)));
                        }
                    }
                }
            }
        }
        (Elementary::S(_), Elementary::E(_)) => {
            let base = powers[0].scale(&u[0]).add(&powers[1].scale(&u[1]));
            out = Mat::zeros(d, 2 * d);
            for a in 0..2 {
                let m = powers[a].mul(&base);
                for i in 0..d {
                    for j in 0..d {
                        out.set(i, a + 2 * j, m.get(i, j).clone());
                    }
                }
            }
        }
        (Elementary::S(_), Elementary::S(_)) => {
            out = Mat::zeros(2 * d, 2 * d);
            for a2 in 0..2 {
                for a in 0..2 {
                    if a2 + a > 1 {
                        continue;
                    }
                    for b in 0..2 {
                        let c = &u[a + 2 * b];
                        if c.is_zero() {
                            continue;
                        }
                        for i in 0..d {
                            for j in 0..d {
                                out.add_at(a2 + a + 2 * i, a2 + 2 * j, &(c * powers[b].get(i, j)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Horizontal composite `f ∘_h g : P ⊗ N → P' ⊗ N'` for `f` between elementary bimodules.
pub fn tensor_map(f: &BimoduleMap, g: &BimoduleMap) -> Result<BimoduleMap> {
    if f.degree != 0 || g.degree != 0 {
        return Err(Error::Unsupported("horizontal composition of non-zero degree maps".into()));
    }
    let id_g = match elementary(&f.source) {
        Some(Elementary::E(_)) => g.matrix.clone(),
        Some(Elementary::S(_)) => left_whisker_mat(&g.matrix),
        None => return Err(Error::Unsupported("left tensor factor must be θ_e⟨k⟩ or θ_s⟨k⟩".into())),
    };
    let f_id = tensor_id(f, &g.target)?;
    BimoduleMap::of(
        &tensor_object(&f.source, &g.source)?,
        &tensor_object(&f.target, &g.target)?,
        f_id.mul(&id_g),
    )
}

/// `adj_s : θ_e⟨−1⟩ → θ_s`, `1 ↦ 1⊗x + x⊗1`.
pub fn adj_lower() -> BimoduleMap {
    let m = Mat::from_i64(4, 2, &[0, 0, 1, 0, 1, 0, 0, 1]).unwrap();
    BimoduleMap::of(&make_theta_e().shift(-1), &make_theta_s(), m).unwrap()
}

/// `adj^s : θ_s → θ_e⟨1⟩`, multiplication.
pub fn adj_upper() -> BimoduleMap {
    let m = Mat::from_i64(2, 4, &[1, 0, 0, 0, 0, 1, 1, 0]).unwrap();
    BimoduleMap::of(&make_theta_s(), &make_theta_e().shift(1), m).unwrap()
}

/// `α_s : θ_s → θ_s⟨2⟩`, `1⊗1 ↦ 1⊗x + x⊗1`.
pub fn alpha_s() -> BimoduleMap {
    adj_lower().shift(2).compose(&adj_upper()).unwrap()
}

/// `adj^s ∘ adj_s : θ_e⟨−1⟩ → θ_e⟨1⟩`, `1 ↦ 2x`.
pub fn beta_counit() -> BimoduleMap {
    adj_upper().compose(&adj_lower()).unwrap()
}

/// `θ_s → θ_s⟨2⟩`, `1⊗1 ↦ x⊗1 − 1⊗x`.
pub fn beta_shuffle() -> BimoduleMap {
    let m = Mat::from_i64(4, 4, &[0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0, -1, 1, 0]).unwrap();
    BimoduleMap::of(&make_theta_s(), &make_theta_s().shift(2), m).unwrap()
}

/// Bounded complex of graded bimodules with degree-0 differentials; `objects[i]` sits in position `start + i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BimoduleComplex {
    start: i32,
    objects: Vec<GradedBimodule>,
    diffs: Vec<Mat>,
}

impl BimoduleComplex {
    pub fn new(start: i32, objects: Vec<GradedBimodule>, diffs: Vec<Mat>) -> Result<Self> {
        if objects.len() != diffs.len() + 1 && !(objects.is_empty() && diffs.is_empty()) {
            return Err(Error::SizeMismatch { expected: objects.len().saturating_sub(1), found: diffs.len() });
        }
        for (k, d) in diffs.iter().enumerate() {
            BimoduleMap::of(&objects[k], &objects[k + 1], d.clone())?;
            if k > 0 && !d.mul(&diffs[k - 1]).is_zero() {
                return Err(Error::InvalidElement(format!("d² ≠ 0 at position {}", start + k as i32 - 1)));
            }
        }
        Ok(BimoduleComplex { start, objects, diffs })
    }

    pub fn from_maps(start: i32, maps: &[BimoduleMap]) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Parameter("at least one differential required".into()));
        }
        let mut objects = vec![maps[0].source.clone()];
        for m in maps {
            if m.degree != 0 {
                return Err(Error::InvalidElement("differentials must have degree 0".into()));
            }
            objects.push(m.target.clone());
        }
        BimoduleComplex::new(start, objects, maps.iter().map(|m| m.matrix.clone()).collect())
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    /// One past the last position.
    pub fn end(&self) -> i32 {
        self.start + self.objects.len() as i32
    }

    pub fn objects(&self) -> &[GradedBimodule] {
        &self.objects
    }

    pub fn differentials(&self) -> &[Mat] {
        &self.diffs
    }

    pub fn object_at(&self, pos: i32) -> GradedBimodule {
        let i = pos - self.start;
        if i < 0 || i as usize >= self.objects.len() {
            GradedBimodule::zero()
        } else {
            self.objects[i as usize].clone()
        }
    }

    /// Differential leaving position `pos`.
    pub fn diff_at(&self, pos: i32) -> Mat {
        let i = pos - self.start;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            Mat::zeros(self.object_at(pos + 1).dim(), self.object_at(pos).dim())
        }
    }

    /// Drops zero objects at both ends.
    pub fn trimmed(&self) -> Self {
        let mut lo = 0;
        let mut hi = self.objects.len();
        while lo < hi && self.objects[lo].is_zero() {
            lo += 1;
        }
        while hi > lo && self.objects[hi - 1].is_zero() {
            hi -= 1;
        }
        if lo == hi {
            return BimoduleComplex { start: 0, objects: vec![], diffs: vec![] };
        }
        BimoduleComplex {
            start: self.start + lo as i32,
            objects: self.objects[lo..hi].to_vec(),
            diffs: self.diffs[lo..hi - 1].to_vec(),
        }
    }

    /// Position of an invertible block-to-block component of some differential.
    fn invertible_component(&self) -> Option<(usize, Vec<usize>, Vec<usize>)> {
        for (k, d) in self.diffs.iter().enumerate() {
            let src = self.objects[k].blocks();
            let tgt = self.objects[k + 1].blocks();
            for a in &src {
                for c in &tgt {
                    if a.len() == c.len() && d.submatrix(c, a).is_invertible() {
                        return Some((k, a.clone(), c.clone()));
                    }
                }
            }
        }
        None
    }

    pub fn is_minimal(&self) -> bool {
        self.invertible_component().is_none()
    }

    fn eliminate(&mut self, k: usize, a: &[usize], c: &[usize]) {
        let b: Vec<usize> = (0..self.objects[k].dim()).filter(|i| !a.contains(i)).collect();
        let dd: Vec<usize> = (0..self.objects[k + 1].dim()).filter(|i| !c.contains(i)).collect();
        let d = &self.diffs[k];
        let alpha_inv = d.submatrix(c, a).inverse().expect("component is invertible");
        let beta = d.submatrix(c, &b);
        let gamma = d.submatrix(&dd, a);
        let delta = d.submatrix(&dd, &b);
        let new_d = delta.sub(&gamma.mul(&alpha_inv).mul(&beta));
        if k > 0 {
            let prev = &self.diffs[k - 1];
            let all: Vec<usize> = (0..prev.cols).collect();
            self.diffs[k - 1] = prev.submatrix(&b, &all);
        }
        if k + 1 < self.diffs.len() {
            let next = &self.diffs[k + 1];
            let all: Vec<usize> = (0..next.rows).collect();
            self.diffs[k + 1] = next.submatrix(&all, &dd);
        }
        self.diffs[k] = new_d;
        self.objects[k] = self.objects[k].restrict(&b);
        self.objects[k + 1] = self.objects[k + 1].restrict(&dd);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "start": self.start,
            "objects": self.objects.iter().enumerate().map(|(i, o)| json!({
                "position": self.start + i as i32,
                "basis": o.to_json(),
            })).collect::<Vec<_>>(),
            "differentials": self.diffs.iter().enumerate().map(|(i, d)| json!({
                "from": self.start + i as i32,
                "matrix": d.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for BimoduleComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, o) in self.objects.iter().enumerate() {
            writeln!(f, "[{}] {}", self.start + i as i32, o)?;
            if i < self.diffs.len() {
                for line in self.diffs[i].to_string().lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        Ok(())
    }
}

/// Cancels invertible components until none remain, then trims zero ends.
pub fn minimize(c: &BimoduleComplex) -> BimoduleComplex {
    let mut c = c.clone();
    while let Some((k, a, t)) = c.invertible_component() {
        c.eliminate(k, &a, &t);
    }
    c.trimmed()
}

/// Commuting square
/// ```text
/// tl --top--> tr
///  |          |
/// left      right
///  v          v
/// bl -bottom-> br
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    top: BimoduleMap,
    left: BimoduleMap,
    right: BimoduleMap,
    bottom: BimoduleMap,
}

impl Square {
    pub fn new(top: BimoduleMap, left: BimoduleMap, right: BimoduleMap, bottom: BimoduleMap) -> Result<Self> {
        let shapes_ok = top.source.same_shape(&left.source)
            && top.target.same_shape(&right.source)
            && left.target.same_shape(&bottom.source)
            && right.target.same_shape(&bottom.target);
        if !shapes_ok {
            return Err(Error::InvalidElement("square corners do not match".into()));
        }
        if [&top, &left, &right, &bottom].iter().any(|m| m.degree != 0) {
            return Err(Error::InvalidElement("square maps must have degree 0".into()));
        }
        if right.matrix.mul(&top.matrix) != bottom.matrix.mul(&left.matrix) {
            return Err(Error::NonCommutingSquare);
        }
        Ok(Square { top, left, right, bottom })
    }

    pub fn top(&self) -> &BimoduleMap {
        &self.top
    }

    pub fn left(&self) -> &BimoduleMap {
        &self.left
    }

    pub fn right(&self) -> &BimoduleMap {
        &self.right
    }

    pub fn bottom(&self) -> &BimoduleMap {
        &self.bottom
    }

    pub fn transpose(&self) -> Square {
        Square { top: self.left.clone(), left: self.top.clone(), right: self.bottom.clone(), bottom: self.right.clone() }
    }

    /// `tl → tr ⊕ bl → br` with `d0 = (top; left)`, `d1 = (−right, bottom)`.
    pub fn total_complex(&self, start: i32) -> BimoduleComplex {
        let mid = self.top.target.direct_sum(&self.left.target);
        let d0 = Mat::vstack(&self.top.matrix, &self.left.matrix);
        let d1 = Mat::hstack(&self.right.matrix.neg(), &self.bottom.matrix);
        BimoduleComplex::new(start, vec![self.top.source.clone(), mid, self.bottom.target.clone()], vec![d0, d1])
            .expect("commuting square totalizes")
    }
}

/// Square of `A ⊗ B` for two-term complexes; `A` (left factor, elementary objects) runs vertically.
pub fn tensor_square(a: &BimoduleComplex, b: &BimoduleComplex) -> Result<Square> {
    if a.objects.len() != 2 || b.objects.len() != 2 {
        return Err(Error::Unsupported("tensor square needs two-term complexes".into()));
    }
    let da = BimoduleMap::of(&a.objects[0], &a.objects[1], a.diffs[0].clone())?;
    let db = BimoduleMap::of(&b.objects[0], &b.objects[1], b.diffs[0].clone())?;
    let id = |m: &GradedBimodule| BimoduleMap::identity(m);
    Square::new(
        tensor_map(&id(&a.objects[0]), &db)?,
        tensor_map(&da, &id(&b.objects[0]))?,
        tensor_map(&da, &id(&b.objects[1]))?,
        tensor_map(&id(&a.objects[1]), &db)?,
    )
}

/// Total complex of `A ⊗ B`.
pub fn compose(a: &BimoduleComplex, b: &BimoduleComplex) -> Result<BimoduleComplex> {
    Ok(tensor_square(a, b)?.total_complex(a.start + b.start))
}

/// `θ_s → θ_s⟨2⟩` via `α_s`, in positions 0, 1.
pub fn theta_hat() -> BimoduleComplex {
    BimoduleComplex::from_maps(0, &[alpha_s()]).unwrap()
}

/// `θ_e⟨−1⟩ → θ_e⟨1⟩` via `beta_counit`, in positions 0, 1.
pub fn theta_check() -> BimoduleComplex {
    BimoduleComplex::from_maps(0, &[beta_counit()]).unwrap()
}

/// `θ_e⟨−1⟩ → θ_s` via `adj_s`, in positions −1, 0.
pub fn shuffle_complex() -> BimoduleComplex {
    BimoduleComplex::from_maps(-1, &[adj_lower()]).unwrap()
}

/// Chain map given by matrices at positions `start..start + mats.len()`, zero elsewhere.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap {
    pub start: i32,
    pub mats: Vec<Mat>,
}

impl ChainMap {
    pub fn at(&self, pos: i32, rows: usize, cols: usize) -> Mat {
        let i = pos - self.start;
        if i >= 0 && (i as usize) < self.mats.len() {
            self.mats[i as usize].clone()
        } else {
            Mat::zeros(rows, cols)
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "start": self.start,
            "components": self.mats.iter().enumerate().map(|(i, m)| json!({
                "position": self.start + i as i32,
                "matrix": m.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn span(c1: &BimoduleComplex, c2: &BimoduleComplex) -> (i32, i32) {
    let lo = c1.start.min(c2.start);
    let hi = c1.end().max(c2.end());
    (lo, hi)
}

/// Componentwise bimodule maps commuting with the differentials.
pub fn is_chain_map(c1: &BimoduleComplex, c2: &BimoduleComplex, f: &ChainMap) -> bool {
    let (lo, hi) = span(c1, c2);
    let lo = lo.min(f.start);
    let hi = hi.max(f.start + f.mats.len() as i32);
    for p in lo..hi {
        let (s, t) = (c1.object_at(p), c2.object_at(p));
        let fp = f.at(p, t.dim(), s.dim());
        if fp.rows != t.dim() || fp.cols != s.dim() || BimoduleMap::of(&s, &t, fp.clone()).is_err() {
            return false;
        }
        let next = f.at(p + 1, c2.object_at(p + 1).dim(), c1.object_at(p + 1).dim());
        if c2.diff_at(p).mul(&fp) != next.mul(&c1.diff_at(p)) {
            return false;
        }
    }
    true
}

pub fn is_chain_isomorphism(c1: &BimoduleComplex, c2: &BimoduleComplex, f: &ChainMap) -> bool {
    if !is_chain_map(c1, c2, f) {
        return false;
    }
    let (lo, hi) = span(c1, c2);
    (lo..hi).all(|p| {
        let (s, t) = (c1.object_at(p), c2.object_at(p));
        s.dim() == t.dim() && (s.dim() == 0 || f.at(p, t.dim(), s.dim()).is_invertible())
    })
}

/// Cone of `f : X → Y`: `X^{n+1} ⊕ Y^n` with `d = [[−d_X, 0], [f, d_Y]]`.
pub fn cone(x: &BimoduleComplex, y: &BimoduleComplex, f: &ChainMap) -> Result<BimoduleComplex> {
    if !is_chain_map(x, y, f) {
        return Err(Error::InvalidElement("cone of a map that is not a chain map".into()));
    }
    let lo = (x.start - 1).min(y.start);
    let hi = (x.end() - 1).max(y.end());
    let objects: Vec<GradedBimodule> = (lo..hi).map(|n| x.object_at(n + 1).direct_sum(&y.object_at(n))).collect();
    let mut diffs = Vec::new();
    for n in lo..hi - 1 {
        let top = Mat::hstack(&x.diff_at(n + 1).neg(), &Mat::zeros(x.object_at(n + 2).dim(), y.object_at(n).dim()));
        let fmat = f.at(n + 1, y.object_at(n + 1).dim(), x.object_at(n + 1).dim());
        let bottom = Mat::hstack(&fmat, &y.diff_at(n));
        diffs.push(Mat::vstack(&top, &bottom));
    }
    BimoduleComplex::new(lo, objects, diffs)
}

/// The morphism ξ from `θ_e⟨1⟩ → θ_s⟨2⟩` (positions 1, 2) to `θ_s → θ_e⟨1⟩` (positions 0, 1),
/// identity in position 1.
pub fn xi() -> (BimoduleComplex, BimoduleComplex, ChainMap) {
    let x = BimoduleComplex::from_maps(1, &[adj_lower().shift(2)]).unwrap();
    let y = BimoduleComplex::from_maps(0, &[adj_upper()]).unwrap();
    (x, y, ChainMap { start: 1, mats: vec![Mat::identity(2)] })
}

pub fn cone_of_xi() -> BimoduleComplex {
    let (x, y, f) = xi();
    cone(&x, &y, &f).unwrap()
}

/// The reduced pair `θ_s → θ_s⟨2⟩` with `1⊗1 ↦ x⊗1 − 1⊗x` and with its negative.
pub fn shuffle_pair() -> (BimoduleComplex, BimoduleComplex) {
    let b = beta_shuffle();
    (
        BimoduleComplex::from_maps(0, std::slice::from_ref(&b)).unwrap(),
        BimoduleComplex::from_maps(0, &[b.neg()]).unwrap(),
    )
}

/// The two squares for the counit variant composed with the shuffling complex, drawn with the
/// shuffling direction horizontal on both sides.
pub fn counit_squares() -> (Square, Square) {
    let lhs = tensor_square(&theta_check(), &shuffle_complex()).unwrap();
    let rhs = tensor_square(&shuffle_complex(), &theta_check()).unwrap().transpose();
    (lhs, rhs)
}

/// Why no isomorphism exists.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Obstruction {
    /// Different dimensions in this position.
    Dimension(i32),
    /// Different graded dimensions in this position.
    GradedDimension(i32),
    /// Every degree-0 chain map has identically vanishing determinant in this position.
    Determinant(i32),
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Dimension(p) => write!(f, "dimensions differ in position {p}"),
            Obstruction::GradedDimension(p) => write!(f, "graded dimensions differ in position {p}"),
            Obstruction::Determinant(p) => write!(f, "determinant vanishes identically on chain maps in position {p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsoOutcome {
    pub witness: Option<ChainMap>,
    pub obstruction: Option<Obstruction>,
    /// Dimension of the space of degree-0 chain maps.
    pub space_dim: usize,
}

impl IsoOutcome {
    pub fn isomorphic(&self) -> bool {
        self.witness.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "isomorphic": self.isomorphic(),
            "chain_map_space_dim": self.space_dim,
            "witness": self.witness.as_ref().map(ChainMap::to_json),
            "obstruction": self.obstruction.map(|o| o.to_string()),
        })
    }
}

type SparseRow = BTreeMap<usize, Q>;

/// Incremental reduced row echelon form over sparse rows.
struct Echelon {
    cols: usize,
    rows: Vec<(usize, SparseRow)>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new() }
    }

    fn axpy(row: &mut SparseRow, c: &Q, other: &SparseRow) {
        for (k, v) in other {
            let e = row.entry(*k).or_insert_with(Q::zero);
            *e += c * v;
            if e.is_zero() {
                row.remove(k);
            }
        }
    }

    fn insert(&mut self, mut row: SparseRow) {
        row.retain(|_, v| !v.is_zero());
        for (pc, prow) in &self.rows {
            if let Some(c) = row.get(pc).cloned() {
                Echelon::axpy(&mut row, &-c, prow);
            }
        }
        let Some((&pivot, pv)) = row.iter().next() else { return };
        let inv = pv.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        for (_, other) in self.rows.iter_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                Echelon::axpy(other, &-c, &row);
            }
        }
        self.rows.push((pivot, row));
    }

    fn nullspace(&self) -> Vec<Vec<Q>> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (pc, r) in &self.rows {
                if let Some(c) = r.get(&f) {
                    v[*pc] = -c.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Variable layout: one unknown per degree-compatible matrix entry.
struct Layout {
    vars: Vec<HashMap<(usize, usize), usize>>,
    count: usize,
}

fn layout(sources: &[GradedBimodule], targets: &[GradedBimodule]) -> Layout {
    let mut vars = Vec::new();
    let mut count = 0;
    for (s, t) in sources.iter().zip(targets) {
        let mut m = HashMap::new();
        for i in 0..t.dim() {
            for j in 0..s.dim() {
                if t.degrees[i] == s.degrees[j] {
                    m.insert((i, j), count);
                    count += 1;
                }
            }
        }
        vars.push(m);
    }
    Layout { vars, count }
}

/// Rows expressing `A·F − F·B = 0` for the unknown `F` in slot `slot`.
fn intertwine_rows(ech: &mut Echelon, lay: &Layout, slot: usize, a: &Mat, b: &Mat, rows: usize, cols: usize) {
    for i in 0..rows {
        for j in 0..cols {
            let mut row = SparseRow::new();
            for k in 0..rows {
                if let Some(&v) = lay.vars[slot].get(&(k, j)) {
                    *row.entry(v).or_insert_with(Q::zero) += a.get(i, k);
                }
            }
            for k in 0..cols {
                if let Some(&v) = lay.vars[slot].get(&(i, k)) {
                    *row.entry(v).or_insert_with(Q::zero) -= b.get(k, j);
                }
            }
            ech.insert(row);
        }
    }
}

fn bimodule_rows(ech: &mut Echelon, lay: &Layout, slot: usize, s: &GradedBimodule, t: &GradedBimodule) {
    intertwine_rows(ech, lay, slot, &t.left, &s.left, t.dim(), s.dim());
    intertwine_rows(ech, lay, slot, &t.right, &s.right, t.dim(), s.dim());
}

fn unpack(lay: &Layout, slot: usize, v: &[Q], rows: usize, cols: usize) -> Mat {
    let mut m = Mat::zeros(rows, cols);
    for (&(i, j), &k) in &lay.vars[slot] {
        m.set(i, j, v[k].clone());
    }
    m
}

/// Basis of degree-0 bimodule maps `M → N`.
pub fn hom_space(m: &GradedBimodule, n: &GradedBimodule) -> Vec<Mat> {
    let lay = layout(std::slice::from_ref(m), std::slice::from_ref(n));
    let mut ech = Echelon::new(lay.count);
    bimodule_rows(&mut ech, &lay, 0, m, n);
    ech.nullspace().iter().map(|v| unpack(&lay, 0, v, n.dim(), m.dim())).collect()
}

/// Basis of degree-0 chain maps `c1 → c2`, as chain maps on the common span.
pub fn chain_map_space(c1: &BimoduleComplex, c2: &BimoduleComplex) -> Vec<ChainMap> {
    let (lo, hi) = span(c1, c2);
    let sources: Vec<GradedBimodule> = (lo..hi).map(|p| c1.object_at(p)).collect();
    let targets: Vec<GradedBimodule> = (lo..hi).map(|p| c2.object_at(p)).collect();
    let lay = layout(&sources, &targets);
    let mut ech = Echelon::new(lay.count);
    for slot in 0..sources.len() {
        bimodule_rows(&mut ech, &lay, slot, &sources[slot], &targets[slot]);
    }
    // d2·F_p − F_{p+1}·d1 = 0
    for slot in 0..sources.len().saturating_sub(1) {
        let p = lo + slot as i32;
        let d1 = c1.diff_at(p);
        let d2 = c2.diff_at(p);
        let (rows, cols) = (targets[slot + 1].dim(), sources[slot].dim());
        for i in 0..rows {
            for j in 0..cols {
                let mut row = SparseRow::new();
                for k in 0..targets[slot].dim() {
                    if let Some(&v) = lay.vars[slot].get(&(k, j)) {
                        *row.entry(v).or_insert_with(Q::zero) += d2.get(i, k);
                    }
                }
                for k in 0..sources[slot + 1].dim() {
                    if let Some(&v) = lay.vars[slot + 1].get(&(i, k)) {
                        *row.entry(v).or_insert_with(Q::zero) -= d1.get(k, j);
                    }
                }
                ech.insert(row);
            }
        }
    }
    ech.nullspace()
        .iter()
        .map(|v| ChainMap {
            start: lo,
            mats: (0..sources.len()).map(|s| unpack(&lay, s, v, targets[s].dim(), sources[s].dim())).collect(),
        })
        .collect()
}

fn combine(basis: &[ChainMap], coeffs: &[Q]) -> ChainMap {
    let mut mats: Vec<Mat> = basis[0].mats.iter().map(|m| Mat::zeros(m.rows, m.cols)).collect();
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (acc, m) in mats.iter_mut().zip(&b.mats) {
            *acc = acc.add(&m.scale(c));
        }
    }
    ChainMap { start: basis[0].start, mats }
}

fn all_invertible(f: &ChainMap) -> bool {
    f.mats.iter().all(|m| m.rows == 0 || m.is_invertible())
}

type Poly = BTreeMap<Vec<u16>, Q>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e).or_insert_with(Q::zero);
            *v += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn poly_add_assign(a: &mut Poly, b: &Poly, sign: bool) {
    for (e, c) in b {
        let v = a.entry(e.clone()).or_insert_with(Q::zero);
        if sign {
            *v += c;
        } else {
            *v -= c;
        }
    }
    a.retain(|_, v| !v.is_zero());
}

const POLY_TERM_LIMIT: usize = 200_000;

/// Determinant of `Σ c_i M_i` as a polynomial in the `c_i`, by expansion over column subsets.
fn det_poly(mats: &[&Mat]) -> Result<Poly> {
    let n = mats[0].rows;
    let r = mats.len();
    if n > 24 {
        return Err(Error::Unsupported("symbolic determinant above size 24".into()));
    }
    let entry = |i: usize, j: usize| -> Poly {
        let mut p = Poly::new();
        for (v, m) in mats.iter().enumerate() {
            let c = m.get(i, j);
            if !c.is_zero() {
                let mut e = vec![0u16; r];
                e[v] = 1;
                p.insert(e, c.clone());
            }
        }
        p
    };
    let mut layer: HashMap<u32, Poly> = HashMap::new();
    layer.insert(0, [(vec![0u16; r], Q::one())].into_iter().collect());
    for row in 0..n {
        let mut next: HashMap<u32, Poly> = HashMap::new();
        for (mask, p) in &layer {
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let e = entry(row, j);
                if e.is_empty() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let term = poly_mul(p, &e);
                let slot = next.entry(mask | (1 << j)).or_default();
                poly_add_assign(slot, &term, above % 2 == 0);
                if slot.len() > POLY_TERM_LIMIT {
                    return Err(Error::Unsupported("symbolic determinant too large".into()));
                }
            }
        }
        next.retain(|_, p| !p.is_empty());
        layer = next;
    }
    Ok(layer.remove(&((1u32 << n) - 1)).unwrap_or_default())
}

const ISO_SEED: u64 = 0x51_2c_a7;

/// Exact search for a degree-0 chain isomorphism `c1 → c2`.
///
/// Tries basis elements and seeded random combinations of the chain-map space; if none is
/// invertible, proves non-existence through an identically vanishing determinant, falling
/// back to a grid search that is guaranteed to hit a non-root otherwise.
pub fn complexes_isomorphic(c1: &BimoduleComplex, c2: &BimoduleComplex) -> Result<IsoOutcome> {
    let (lo, hi) = span(c1, c2);
    for p in lo..hi {
        let (a, b) = (c1.object_at(p), c2.object_at(p));
        if a.dim() != b.dim() {
            return Ok(IsoOutcome { witness: None, obstruction: Some(Obstruction::Dimension(p)), space_dim: 0 });
        }
        let (mut da, mut db) = (a.degrees.clone(), b.degrees.clone());
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return Ok(IsoOutcome { witness: None, obstruction: Some(Obstruction::GradedDimension(p)), space_dim: 0 });
        }
    }
    let basis = chain_map_space(c1, c2);
    let space_dim = basis.len();
    let found = |w: ChainMap| Ok(IsoOutcome { witness: Some(w), obstruction: None, space_dim });
    if lo >= hi {
        return found(ChainMap { start: lo, mats: vec![] });
    }
    if basis.is_empty() {
        let p = (lo..hi).find(|&p| c1.object_at(p).dim() > 0).unwrap_or(lo);
        return Ok(IsoOutcome { witness: None, obstruction: Some(Obstruction::Determinant(p)), space_dim });
    }
    for b in &basis {
        if all_invertible(b) {
            return found(b.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for attempt in 0..48 {
        let range = if attempt < 16 { 3 } else { 1000 };
        let coeffs: Vec<Q> = (0..space_dim).map(|_| q(rng.gen_range(-range..=range))).collect();
        let f = combine(&basis, &coeffs);
        if all_invertible(&f) {
            return found(f);
        }
    }
    for (slot, p) in (lo..hi).enumerate() {
        if c1.object_at(p).dim() == 0 {
            continue;
        }
        let mats: Vec<&Mat> = basis.iter().map(|b| &b.mats[slot]).collect();
        if det_poly(&mats)?.is_empty() {
            return Ok(IsoOutcome { witness: None, obstruction: Some(Obstruction::Determinant(p)), space_dim });
        }
    }
    // The product of determinants is a nonzero polynomial of total degree `total`, so it has a
    // non-root on the grid {0..=total}^r.
    let total: usize = (lo..hi).map(|p| c1.object_at(p).dim()).sum();
    let mut point = vec![0i64; space_dim];
    loop {
        let coeffs: Vec<Q> = point.iter().map(|&v| q(v)).collect();
        let f = combine(&basis, &coeffs);
        if all_invertible(&f) {
            return found(f);
        }
        let mut i = 0;
        loop {
            if i == space_dim {
                return Err(Error::Internal("grid search exhausted with nonzero determinant".into()));
            }
            point[i] += 1;
            if point[i] as usize <= total {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

/// Componentwise `(id, −id, id, …)` starting from the first position of `c`.
pub fn alternating_identity(c: &BimoduleComplex) -> ChainMap {
    ChainMap {
        start: c.start,
        mats: c
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| if i % 2 == 0 { Mat::identity(o.dim()) } else { Mat::identity(o.dim()).neg() })
            .collect(),
    }
}

#[derive(Clone, Debug)]
pub struct Sl2Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Sl2Check {
    pub fn to_json(&self) -> Value {
        json!({"check": self.name, "passed": self.passed, "detail": self.detail})
    }
}

/// `α_s ≠ 0`.
pub fn check_alpha_nonzero() -> Sl2Check {
    let a = alpha_s();
    Sl2Check {
        name: "alpha_s nonzero",
        passed: !a.is_zero(),
        detail: "alpha_s(1⊗1) = 1⊗x + x⊗1".into(),
    }
}

/// Cone of ξ reduces to `θ_s → θ_s⟨2⟩` with differential `α_s`.
pub fn check_cone_of_xi() -> Sl2Check {
    let m = minimize(&cone_of_xi());
    let a = alpha_s();
    let passed = m.objects.len() == 2
        && m.objects[0].same_shape(a.source())
        && m.objects[1].same_shape(a.target())
        && m.diffs[0] == *a.matrix();
    Sl2Check {
        name: "minimal cone of xi",
        passed,
        detail: format!("{} terms from position {}", m.objects.len(), m.start),
    }
}

/// The reduced shuffle pair is isomorphic via `(id, −id)`, and so are the minimized compositions.
pub fn check_shuffle_iso() -> Result<Sl2Check> {
    let (b, g) = shuffle_pair();
    let pinned = is_chain_isomorphism(&b, &g, &alternating_identity(&b));
    let searched = complexes_isomorphic(&b, &g)?.isomorphic();
    let lhs = minimize(&compose(&theta_hat(), &shuffle_complex())?);
    let rhs = minimize(&compose(&shuffle_complex(), &theta_hat())?);
    let composed = complexes_isomorphic(&lhs, &rhs)?.isomorphic();
    Ok(Sl2Check {
        name: "shuffle pair isomorphic",
        passed: pinned && searched && composed,
        detail: format!("(id, -id) is a chain isomorphism: {pinned}; search: {searched}; minimized compositions: {composed}"),
    })
}

/// The counit-variant totalizations should not be isomorphic.
pub fn check_counit_non_iso() -> Result<Sl2Check> {
    let (l, r) = counit_squares();
    let out = complexes_isomorphic(&l.total_complex(-1), &r.total_complex(-1))?;
    let detail = match (&out.witness, out.obstruction) {
        (Some(w), _) => format!(
            "chain isomorphism found ({}-dimensional chain-map space): {}",
            out.space_dim,
            w.mats.iter().map(|m| m.to_string().replace('\n', " ")).collect::<Vec<_>>().join(" | ")
        ),
        (None, Some(o)) => o.to_string(),
        (None, None) => String::new(),
    };
    Ok(Sl2Check { name: "counit pair not isomorphic", passed: !out.isomorphic(), detail })
}

pub fn headline_checks() -> Result<Vec<Sl2Check>> {
    Ok(vec![check_alpha_nonzero(), check_cone_of_xi(), check_shuffle_iso()?, check_counit_non_iso()?])
}
