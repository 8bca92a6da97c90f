//! Brauer, partial Brauer, colored partial Brauer and type-B Brauer diagrams.
//!
//! A diagram on `r` points per row is stored as a mate vector over `2r` positions:
//! top row first, bottom (primed) row second. A position that is its own mate is a singleton.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::binrel::BoolMatB;
use crate::combinat::{involutions, perfect_matchings};
use crate::coxeter::{CoxeterType, Family, GroupElement};
use crate::error::{Error, Result};
use crate::words::{Assignment, Letter, SingularWord};

/// Exponents of the loop parameters picked up by a product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarExponents {
    /// Closed components (`δ`).
    pub k_closed: usize,
    /// Open components (`δ'`).
    pub k_open: usize,
    /// Closed components split by their total ℤ₂ value.
    pub k_by_color: [usize; 2],
}

impl ScalarExponents {
    pub fn is_zero(&self) -> bool {
        *self == Self::default()
    }

    pub fn to_json(&self) -> Value {
        json!({"k": self.k_closed, "kp": self.k_open, "k_by_color": self.k_by_color})
    }
}

impl Add for ScalarExponents {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            k_closed: self.k_closed + o.k_closed,
            k_open: self.k_open + o.k_open,
            k_by_color: [self.k_by_color[0] + o.k_by_color[0], self.k_by_color[1] + o.k_by_color[1]],
        }
    }
}

/// Glues `a` (top) to `b` (bottom); both have `r` points per row.
fn glue(r: usize, a: &[usize], ca: &[u8], b: &[usize], cb: &[u8]) -> (Vec<usize>, Vec<u8>, ScalarExponents) {
    // ids: a-top 0..r, middle r..2r, b-bottom 2r..3r
    let edge = |id: usize, upper: bool| -> Option<(usize, u8)> {
        if upper {
            (id < 2 * r && a[id] != id).then(|| (a[id], ca[id]))
        } else {
            (id >= r && b[id - r] != id - r).then(|| (b[id - r] + r, cb[id - r]))
        }
    };
    let outer = |id: usize| id < r || id >= 2 * r;
    let out = |id: usize| if id < r { id } else { id - r };

    let mut visited = vec![false; 3 * r];
    let mut mate: Vec<usize> = (0..2 * r).collect();
    let mut color = vec![0u8; 2 * r];
    let mut exps = ScalarExponents::default();

    for start in (0..r).chain(2 * r..3 * r) {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let (mut v, mut upper, mut col) = (start, start < r, 0u8);
        while let Some((u, c)) = edge(v, upper) {
            col ^= c;
            visited[u] = true;
            if outer(u) {
                mate[out(start)] = out(u);
                mate[out(u)] = out(start);
                color[out(start)] = col;
                color[out(u)] = col;
                break;
            }
            v = u;
            upper = !upper;
        }
    }

    for v in r..2 * r {
        if visited[v] {
            continue;
        }
        let (mut u, mut upper, mut col, mut closed) = (v, true, 0u8, false);
        loop {
            visited[u] = true;
            match edge(u, upper) {
                None => break,
                Some((w, c)) => {
                    col ^= c;
                    if w == v {
                        closed = true;
                        break;
                    }
                    u = w;
                    upper = !upper;
                }
            }
        }
        if closed {
            exps.k_closed += 1;
            exps.k_by_color[col as usize] += 1;
        } else {
            let (mut u, mut upper) = (v, false);
            while let Some((w, _)) = edge(u, upper) {
                visited[w] = true;
                u = w;
                upper = !upper;
            }
            exps.k_open += 1;
        }
    }
    (mate, color, exps)
}

fn check_involution(mate: &[usize], fixed_points: bool) -> Result<()> {
    for (i, &j) in mate.iter().enumerate() {
        if j >= mate.len() || mate[j] != i {
            return Err(Error::InvalidElement("matching is not an involution".into()));
        }
        if !fixed_points && i == j {
            return Err(Error::InvalidElement("matching has a singleton".into()));
        }
    }
    Ok(())
}

/// Blocks as index lists, ordered by their smallest position.
fn blocks_of(mate: &[usize]) -> Vec<Vec<usize>> {
    (0..mate.len())
        .filter(|&i| mate[i] >= i)
        .map(|i| if mate[i] == i { vec![i] } else { vec![i, mate[i]] })
        .collect()
}

fn plain_label(n: usize, p: usize) -> (i32, bool) {
    if p < n {
        (p as i32 + 1, false)
    } else {
        ((p - n) as i32 + 1, true)
    }
}

fn plain_index(n: usize, (v, primed): (i32, bool)) -> Result<usize> {
    if v < 1 || v as usize > n {
        return Err(Error::Parse(format!("point {v} out of range 1..{n}")));
    }
    Ok(v as usize - 1 + if primed { n } else { 0 })
}

fn signed_label(n: usize, p: usize) -> (i32, bool) {
    if p < 2 * n {
        (BoolMatB::point(n, p), false)
    } else {
        (BoolMatB::point(n, p - 2 * n), true)
    }
}

fn signed_index(n: usize, (v, primed): (i32, bool)) -> Result<usize> {
    if v == 0 || v.unsigned_abs() as usize > n {
        return Err(Error::Parse(format!("point {v} out of range ±1..{n}")));
    }
    Ok(BoolMatB::index(n, v) + if primed { 2 * n } else { 0 })
}

fn label_text((v, primed): (i32, bool)) -> String {
    format!("{v}{}", if primed { "'" } else { "" })
}

fn blocks_text(mate: &[usize], label: impl Fn(usize) -> (i32, bool), color: Option<&[u8]>) -> String {
    let parts: Vec<String> = blocks_of(mate)
        .iter()
        .map(|b| {
            let pts: Vec<String> = b.iter().map(|&p| label_text(label(p))).collect();
            match color {
                Some(c) if b.len() == 2 => format!("{{{}}}:{}", pts.join(","), c[b[0]]),
                _ => format!("{{{}}}", pts.join(",")),
            }
        })
        .collect();
    parts.join(",")
}

fn blocks_json(mate: &[usize], label: impl Fn(usize) -> (i32, bool)) -> Vec<Value> {
    blocks_of(mate)
        .iter()
        .map(|b| {
            let pts: Vec<(i32, bool)> = b.iter().map(|&p| label(p)).collect();
            if pts.iter().any(|p| p.1) {
                json!(pts.iter().map(|&p| label_text(p)).collect::<Vec<_>>())
            } else {
                json!(pts.iter().map(|p| p.0).collect::<Vec<_>>())
            }
        })
        .collect()
}

type ParsedBlock = (Vec<(i32, bool)>, Option<u8>);

/// Parses `{1,2},{3,1'}:1,{2'}`; the `:c` suffix is a block color.
fn parse_blocks(s: &str) -> Result<Vec<ParsedBlock>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches([',', ' ']);
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('{') {
            return Err(Error::Parse(format!("expected `{{` at `{rest}`")));
        }
        let close = rest.find('}').ok_or_else(|| Error::Parse("unclosed block".into()))?;
        let pts = rest[1..close]
            .split(',')
            .map(|t| {
                let t = t.trim();
                let (body, primed) = match t.strip_suffix('\'') {
                    Some(b) => (b, true),
                    None => (t, false),
                };
                body.parse::<i32>()
                    .map(|v| (v, primed))
                    .map_err(|_| Error::Parse(format!("bad point `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rest = &rest[close + 1..];
        let mut color = None;
        if let Some(r) = rest.strip_prefix(':') {
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            color = Some(r[..end].parse::<u8>().map_err(|_| Error::Parse("bad color".into()))?);
            rest = &r[end..];
        }
        if pts.is_empty() || pts.len() > 2 {
            return Err(Error::Parse("blocks have one or two points".into()));
        }
        out.push((pts, color));
    }
    Ok(out)
}

fn mate_from_blocks(
    size: usize,
    blocks: &[ParsedBlock],
    index: impl Fn((i32, bool)) -> Result<usize>,
) -> Result<Vec<usize>> {
    let mut mate = vec![usize::MAX; size];
    for (pts, _) in blocks {
        let idx = pts.iter().map(|&p| index(p)).collect::<Result<Vec<_>>>()?;
        let (a, b) = (idx[0], *idx.last().unwrap());
        if mate[a] != usize::MAX || mate[b] != usize::MAX || (idx.len() == 2 && a == b) {
            return Err(Error::Parse("point used twice".into()));
        }
        mate[a] = b;
        mate[b] = a;
    }
    if mate.contains(&usize::MAX) {
        return Err(Error::Parse("not every point is covered".into()));
    }
    Ok(mate)
}

/// Count of points per row implied by the largest label.
fn parsed_rank(blocks: &[ParsedBlock]) -> usize {
    blocks
        .iter()
        .flat_map(|(p, _)| p.iter().map(|x| x.0.unsigned_abs() as usize))
        .max()
        .unwrap_or(0)
}

/// A Brauer diagram on `{1..n} ∪ {1'..n'}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerDiagram {
    n: usize,
    mate: Vec<usize>,
}

impl BrauerDiagram {
    pub fn new(n: usize, mate: Vec<usize>) -> Result<Self> {
        if mate.len() != 2 * n {
            return Err(Error::SizeMismatch {
                expected: 2 * n,
                found: mate.len(),
            });
        }
        check_involution(&mate, false)?;
        Ok(Self { n, mate })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            mate: (0..2 * n).map(|p| (p + n) % (2 * n)).collect(),
        }
    }

    /// Connects top `w(j)` with bottom `j'`.
    pub fn permutation(w: &GroupElement) -> Result<Self> {
        let GroupElement::Perm(p) = w else {
            return Err(Error::Unsupported("Brauer diagram of a non-permutation".into()));
        };
        let n = p.len();
        let mut mate = vec![0; 2 * n];
        for j in 0..n {
            let t = p[j] as usize - 1;
            mate[t] = n + j;
            mate[n + j] = t;
        }
        Ok(Self { n, mate })
    }

    /// The hook generator `𝚜_i`.
    pub fn hook(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::MissingGenerator(format!("hook {i} for n = {n}")));
        }
        let mut d = Self::identity(n);
        let (a, b) = (i - 1, i);
        d.mate[a] = b;
        d.mate[b] = a;
        d.mate[n + a] = n + b;
        d.mate[n + b] = n + a;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mate(&self) -> &[usize] {
        &self.mate
    }

    pub fn mul(&self, other: &Self) -> Result<(Self, ScalarExponents)> {
        same_n(self.n, other.n)?;
        let zero = vec![0u8; 2 * self.n];
        let (mate, _, exps) = glue(self.n, &self.mate, &zero, &other.mate, &zero);
        Ok((Self { n: self.n, mate }, exps))
    }

    pub fn to_partial(&self) -> PartialBrauerDiagram {
        PartialBrauerDiagram {
            n: self.n,
            mate: self.mate.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "blocks": blocks_json(&self.mate, |p| plain_label(self.n, p))})
    }
}

fn same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::SizeMismatch { expected: a, found: b });
    }
    Ok(())
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", blocks_text(&self.mate, |p| plain_label(self.n, p), None))
    }
}

impl fmt::Debug for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for BrauerDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let blocks = parse_blocks(s)?;
        let n = parsed_rank(&blocks);
        Self::new(n, mate_from_blocks(2 * n, &blocks, |p| plain_index(n, p))?)
    }
}

/// A partial Brauer diagram: blocks of size one or two.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBrauerDiagram {
    n: usize,
    mate: Vec<usize>,
}

impl PartialBrauerDiagram {
    pub fn new(n: usize, mate: Vec<usize>) -> Result<Self> {
        if mate.len() != 2 * n {
            return Err(Error::SizeMismatch {
                expected: 2 * n,
                found: mate.len(),
            });
        }
        check_involution(&mate, true)?;
        Ok(Self { n, mate })
    }

    pub fn identity(n: usize) -> Self {
        BrauerDiagram::identity(n).to_partial()
    }

    /// Every point a singleton.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            mate: (0..2 * n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mate(&self) -> &[usize] {
        &self.mate
    }

    pub fn mul(&self, other: &Self) -> Result<(Self, ScalarExponents)> {
        same_n(self.n, other.n)?;
        let zero = vec![0u8; 2 * self.n];
        let (mate, _, exps) = glue(self.n, &self.mate, &zero, &other.mate, &zero);
        Ok((Self { n: self.n, mate }, exps))
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "blocks": blocks_json(&self.mate, |p| plain_label(self.n, p))})
    }
}

impl fmt::Display for PartialBrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", blocks_text(&self.mate, |p| plain_label(self.n, p), None))
    }
}

impl fmt::Debug for PartialBrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PartialBrauerDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let blocks = parse_blocks(s)?;
        let n = parsed_rank(&blocks);
        Self::new(n, mate_from_blocks(2 * n, &blocks, |p| plain_index(n, p))?)
    }
}

/// A partial Brauer diagram with a ℤ₂ label on every two-point block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPartialBrauer {
    diagram: PartialBrauerDiagram,
    color: Vec<u8>,
}

impl ColoredPartialBrauer {
    /// `color[p]` is the label of the block containing `p`; it must be 0 on singletons.
    pub fn new(diagram: PartialBrauerDiagram, color: Vec<u8>) -> Result<Self> {
        if color.len() != diagram.mate.len() {
            return Err(Error::SizeMismatch {
                expected: diagram.mate.len(),
                found: color.len(),
            });
        }
        for (p, &q) in diagram.mate.iter().enumerate() {
            if color[p] > 1 || color[p] != color[q] || (p == q && color[p] != 0) {
                return Err(Error::InvalidElement("inconsistent block colors".into()));
            }
        }
        Ok(Self { diagram, color })
    }

    pub fn uncolored(diagram: PartialBrauerDiagram) -> Self {
        let color = vec![0; diagram.mate.len()];
        Self { diagram, color }
    }

    pub fn identity(n: usize) -> Self {
        Self::uncolored(PartialBrauerDiagram::identity(n))
    }

    pub fn diagram(&self) -> &PartialBrauerDiagram {
        &self.diagram
    }

    pub fn color_at(&self, p: usize) -> u8 {
        self.color[p]
    }

    pub fn n(&self) -> usize {
        self.diagram.n
    }

    pub fn mul(&self, other: &Self) -> Result<(Self, ScalarExponents)> {
        same_n(self.n(), other.n())?;
        let (mate, color, exps) = glue(
            self.n(),
            &self.diagram.mate,
            &self.color,
            &other.diagram.mate,
            &other.color,
        );
        Ok((
            Self {
                diagram: PartialBrauerDiagram { n: self.n(), mate },
                color,
            },
            exps,
        ))
    }

    pub fn to_json(&self) -> Value {
        let n = self.n();
        let mut colors = Map::new();
        for b in blocks_of(&self.diagram.mate).iter().filter(|b| b.len() == 2) {
            let key: Vec<String> = b.iter().map(|&p| label_text(plain_label(n, p))).collect();
            colors.insert(format!("{{{}}}", key.join(",")), json!(self.color[b[0]]));
        }
        json!({
            "n": n,
            "blocks": blocks_json(&self.diagram.mate, |p| plain_label(n, p)),
            "colors": colors,
        })
    }
}

impl fmt::Display for ColoredPartialBrauer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        write!(f, "{}", blocks_text(&self.diagram.mate, |p| plain_label(n, p), Some(&self.color)))
    }
}

impl fmt::Debug for ColoredPartialBrauer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ColoredPartialBrauer {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let blocks = parse_blocks(s)?;
        let n = parsed_rank(&blocks);
        let mate = mate_from_blocks(2 * n, &blocks, |p| plain_index(n, p))?;
        let mut color = vec![0u8; 2 * n];
        for (pts, c) in &blocks {
            if let Some(c) = c {
                for &p in pts {
                    color[plain_index(n, p)?] = *c;
                }
            }
        }
        Self::new(PartialBrauerDiagram::new(n, mate)?, color)
    }
}

/// A bar-invariant Brauer diagram on `{±1..±n} ∪ {±1'..±n'}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerBDiagram {
    n: usize,
    mate: Vec<usize>,
}

impl BrauerBDiagram {
    fn bar(n: usize, p: usize) -> usize {
        if p < 2 * n {
            BoolMatB::bar_index(n, p)
        } else {
            2 * n + BoolMatB::bar_index(n, p - 2 * n)
        }
    }

    pub fn new(n: usize, mate: Vec<usize>) -> Result<Self> {
        if mate.len() != 4 * n {
            return Err(Error::SizeMismatch {
                expected: 4 * n,
                found: mate.len(),
            });
        }
        check_involution(&mate, false)?;
        for p in 0..4 * n {
            if mate[Self::bar(n, p)] != Self::bar(n, mate[p]) {
                return Err(Error::InvalidElement("diagram is not bar-invariant".into()));
            }
        }
        Ok(Self { n, mate })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            mate: (0..4 * n).map(|p| (p + 2 * n) % (4 * n)).collect(),
        }
    }

    /// Connects top `w(j)` with bottom `j'` for every signed `j`.
    pub fn signed_permutation(w: &GroupElement) -> Result<Self> {
        let GroupElement::SignedPerm(p) = w else {
            return Err(Error::Unsupported("type-B diagram of an unsigned element".into()));
        };
        let n = p.len();
        let mut mate = vec![0; 4 * n];
        for j in (-(n as i32)..=n as i32).filter(|&j| j != 0) {
            let t = BoolMatB::index(n, w.apply(j));
            let b = 2 * n + BoolMatB::index(n, j);
            mate[t] = b;
            mate[b] = t;
        }
        Ok(Self { n, mate })
    }

    /// `𝚜̃_i`: `{-1,1}` hooks for `i = 0`, the bar-symmetric pair of `𝚜_i` hooks otherwise.
    pub fn hook(i: usize, n: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::MissingGenerator(format!("hook {i} for n = {n}")));
        }
        let mut d = Self::identity(n);
        let mut link = |x: i32, y: i32| {
            for off in [0, 2 * n] {
                let (a, b) = (BoolMatB::index(n, x) + off, BoolMatB::index(n, y) + off);
                d.mate[a] = b;
                d.mate[b] = a;
            }
        };
        if i == 0 {
            link(-1, 1);
        } else {
            let (a, b) = (i as i32, i as i32 + 1);
            link(a, b);
            link(-a, -b);
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mate(&self) -> &[usize] {
        &self.mate
    }

    /// Mate of a signed point; `primed` selects the bottom row.
    pub fn partner(&self, x: i32, primed: bool) -> (i32, bool) {
        let p = signed_index(self.n, (x, primed)).expect("point in range");
        signed_label(self.n, self.mate[p])
    }

    pub fn mul(&self, other: &Self) -> Result<(Self, ScalarExponents)> {
        same_n(self.n, other.n)?;
        let zero = vec![0u8; 4 * self.n];
        let (mate, _, exps) = glue(2 * self.n, &self.mate, &zero, &other.mate, &zero);
        let n = self.n;
        if (0..4 * n).any(|p| mate[Self::bar(n, p)] != Self::bar(n, mate[p])) {
            return Err(Error::Internal("product lost bar-invariance".into()));
        }
        Ok((Self { n, mate }, exps))
    }

    /// Absolute values of top points joined to another top point.
    pub fn left_defect(&self) -> BTreeSet<usize> {
        let n = self.n;
        (n..2 * n)
            .filter(|&p| self.mate[p] < 2 * n)
            .map(|p| p - n + 1)
            .collect()
    }

    pub fn right_defect(&self) -> BTreeSet<usize> {
        let n = self.n;
        (3 * n..4 * n)
            .filter(|&p| self.mate[p] >= 2 * n)
            .map(|p| p - 3 * n + 1)
            .collect()
    }

    /// `(e_L, σ, e_R)` with `self = e_L σ e_R`; `σ` sends the sorted right defect to the sorted left defect.
    pub fn normal_form(&self) -> Result<(BrauerBDiagram, GroupElement, BrauerBDiagram)> {
        let n = self.n;
        let h = 2 * n;
        let mut left: Vec<usize> = (0..4 * n).map(|p| (p + h) % (2 * h)).collect();
        let mut right = left.clone();
        for p in 0..h {
            let q = self.mate[p];
            if q < h {
                left[p] = q;
                left[p + h] = q + h;
            }
            let q = self.mate[p + h];
            if q >= h {
                right[p + h] = q;
                right[p] = q - h;
            }
        }
        let mut sigma = vec![0i32; n];
        for y in 1..=n as i32 {
            let (x, primed) = self.partner(y, true);
            if !primed {
                sigma[y as usize - 1] = x;
            }
        }
        for (r, l) in self.right_defect().into_iter().zip(self.left_defect()) {
            sigma[r - 1] = l as i32;
        }
        Ok((
            Self::new(n, left)?,
            GroupElement::SignedPerm(sigma),
            Self::new(n, right)?,
        ))
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "blocks": blocks_json(&self.mate, |p| signed_label(self.n, p))})
    }
}

impl fmt::Display for BrauerBDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", blocks_text(&self.mate, |p| signed_label(self.n, p), None))
    }
}

impl fmt::Debug for BrauerBDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for BrauerBDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let blocks = parse_blocks(s)?;
        let n = parsed_rank(&blocks);
        Self::new(n, mate_from_blocks(4 * n, &blocks, |p| signed_index(n, p))?)
    }
}

/// Adds exponent fields to a diagram's JSON.
pub fn json_with_exponents(mut diagram: Value, exps: &ScalarExponents) -> Value {
    if let (Value::Object(m), Value::Object(e)) = (&mut diagram, exps.to_json()) {
        m.extend(e);
    }
    diagram
}

fn apb_to_b(n: usize, p: usize) -> usize {
    let (v, primed) = plain_label(n, p);
    signed_index(n, (v, primed)).expect("in range")
}

/// Type-B diagram to the colored partial Brauer diagram on the positive points.
pub fn to_apb(d: &BrauerBDiagram) -> ColoredPartialBrauer {
    let n = d.n;
    let mut mate: Vec<usize> = (0..2 * n).collect();
    let mut color = vec![0u8; 2 * n];
    for p in 0..2 * n {
        let bp = apb_to_b(n, p);
        let q = d.mate[bp];
        if q == BrauerBDiagram::bar(n, bp) {
            continue;
        }
        let (v, primed) = signed_label(n, q);
        mate[p] = plain_index(n, (v.abs(), primed)).expect("in range");
        color[p] = u8::from(v < 0);
    }
    ColoredPartialBrauer {
        diagram: PartialBrauerDiagram { n, mate },
        color,
    }
}

pub fn from_apb(c: &ColoredPartialBrauer) -> BrauerBDiagram {
    let n = c.n();
    let bar = |p| BrauerBDiagram::bar(n, p);
    let mut mate = vec![0; 4 * n];
    for p in 0..2 * n {
        let bp = apb_to_b(n, p);
        let q = c.diagram.mate[p];
        if q == p {
            mate[bp] = bar(bp);
            mate[bar(bp)] = bp;
        } else {
            let bq = apb_to_b(n, q);
            let target = if c.color[p] == 1 { bar(bq) } else { bq };
            mate[bp] = target;
            mate[bar(bp)] = bar(target);
        }
    }
    BrauerBDiagram { n, mate }
}

fn brauer_mul(a: &BrauerDiagram, b: &BrauerDiagram) -> BrauerDiagram {
    a.mul(b).expect("equal sizes").0
}

fn brauer_b_mul(a: &BrauerBDiagram, b: &BrauerBDiagram) -> BrauerBDiagram {
    a.mul(b).expect("equal sizes").0
}

/// χ at `δ = 1`: `σ_i ↦ s_i`, `τ_i ↦ 𝚜_i`.
pub fn chi_assignment(n: usize) -> Result<Assignment<BrauerDiagram>> {
    let t = CoxeterType::new(Family::A, n)?;
    let labels = t.labels();
    let sigma = labels
        .iter()
        .map(|&i| BrauerDiagram::permutation(&t.generator(i)?))
        .collect::<Result<_>>()?;
    let tau = labels.iter().map(|&i| BrauerDiagram::hook(i, n)).collect::<Result<_>>()?;
    Assignment::involutive("chi", labels, sigma, tau, BrauerDiagram::identity(n), Arc::new(brauer_mul))
}

/// χ keeping the loop exponents.
pub fn chi_weighted_assignment(n: usize) -> Result<Assignment<(BrauerDiagram, ScalarExponents)>> {
    chi_assignment(n)?.map(
        "chi_weighted",
        |d| (d.clone(), ScalarExponents::default()),
        (BrauerDiagram::identity(n), ScalarExponents::default()),
        Arc::new(|a: &(BrauerDiagram, ScalarExponents), b: &(BrauerDiagram, ScalarExponents)| {
            let (d, e) = a.0.mul(&b.0).expect("equal sizes");
            (d, a.1 + b.1 + e)
        }),
    )
}

/// Type-B χ at `δ = 1`: `σ_i ↦ s̃_i`, `τ_i ↦ 𝚜̃_i`.
pub fn chi_b_assignment(n: usize) -> Result<Assignment<BrauerBDiagram>> {
    let t = CoxeterType::new(Family::B, n)?;
    let labels = t.labels();
    let sigma = labels
        .iter()
        .map(|&i| BrauerBDiagram::signed_permutation(&t.generator(i)?))
        .collect::<Result<_>>()?;
    let tau = labels.iter().map(|&i| BrauerBDiagram::hook(i, n)).collect::<Result<_>>()?;
    Assignment::involutive("chi_b", labels, sigma, tau, BrauerBDiagram::identity(n), Arc::new(brauer_b_mul))
}

pub fn chi_b_weighted_assignment(n: usize) -> Result<Assignment<(BrauerBDiagram, ScalarExponents)>> {
    chi_b_assignment(n)?.map(
        "chi_b_weighted",
        |d| (d.clone(), ScalarExponents::default()),
        (BrauerBDiagram::identity(n), ScalarExponents::default()),
        Arc::new(|a: &(BrauerBDiagram, ScalarExponents), b: &(BrauerBDiagram, ScalarExponents)| {
            let (d, e) = a.0.mul(&b.0).expect("equal sizes");
            (d, a.1 + b.1 + e)
        }),
    )
}

pub fn chi_eval(word: &SingularWord, n: usize) -> Result<(BrauerDiagram, ScalarExponents)> {
    chi_weighted_assignment(n)?.evaluate(word)
}

pub fn chi_b_eval(word: &SingularWord, n: usize) -> Result<(BrauerBDiagram, ScalarExponents)> {
    chi_b_weighted_assignment(n)?.evaluate(word)
}

/// The nine words of the rewrite showing `𝚜_i 𝚜_{i+1} 𝚜_i = 𝚜_i` follows from the other relations.
pub fn br2_chain(i: usize) -> Vec<SingularWord> {
    let (s, t) = (Letter::Sigma, Letter::Tau);
    let j = i + 1;
    [
        vec![t(i), t(j), t(i)],
        vec![t(i), t(j), s(i), s(i), t(i)],
        vec![t(i), t(j), s(i), t(i)],
        vec![t(i), s(j), t(i)],
        vec![s(j), s(j), t(i), s(j), s(i), s(i), t(i)],
        vec![s(j), s(i), s(i), s(j), t(i), s(j), s(i), t(i)],
        vec![s(j), s(i), t(j), t(i)],
        vec![s(j), s(j), t(i)],
        vec![t(i)],
    ]
    .into_iter()
    .map(SingularWord)
    .collect()
}

/// The relation `s̃_0 s̃_1 𝚜̃_0 = s̃_1 𝚜̃_0` of the other type-B candidate.
pub fn cl_relation() -> (SingularWord, SingularWord) {
    let (s, t) = (Letter::Sigma, Letter::Tau);
    (SingularWord(vec![s(0), s(1), t(0)]), SingularWord(vec![s(1), t(0)]))
}

pub fn all_brauer(n: usize) -> Vec<BrauerDiagram> {
    let pts: Vec<usize> = (0..2 * n).collect();
    let mut out: Vec<BrauerDiagram> = perfect_matchings(&pts)
        .into_iter()
        .map(|m| {
            let mut mate = vec![0; 2 * n];
            for (a, b) in m {
                mate[a] = b;
                mate[b] = a;
            }
            BrauerDiagram { n, mate }
        })
        .collect();
    out.sort();
    out
}

pub fn all_partial_brauer(n: usize) -> Vec<PartialBrauerDiagram> {
    let mut out: Vec<_> = involutions(2 * n)
        .into_iter()
        .map(|mate| PartialBrauerDiagram { n, mate })
        .collect();
    out.sort();
    out
}

pub fn all_colored_partial(n: usize) -> Vec<ColoredPartialBrauer> {
    let mut out = Vec::new();
    for d in all_partial_brauer(n) {
        let pairs: Vec<usize> = (0..2 * n).filter(|&p| d.mate[p] > p).collect();
        for mask in 0u32..1 << pairs.len() {
            let mut color = vec![0u8; 2 * n];
            for (k, &p) in pairs.iter().enumerate() {
                let c = (mask >> k & 1) as u8;
                color[p] = c;
                color[d.mate[p]] = c;
            }
            out.push(ColoredPartialBrauer {
                diagram: d.clone(),
                color,
            });
        }
    }
    out.sort();
    out
}

/// Every bar-invariant fixed-point-free matching on `4n` points.
pub fn all_brauer_b(n: usize) -> Vec<BrauerBDiagram> {
    fn rec(n: usize, mate: &mut Vec<usize>, out: &mut Vec<BrauerBDiagram>) {
        let Some(p) = mate.iter().position(|&m| m == usize::MAX) else {
            out.push(BrauerBDiagram { n, mate: mate.clone() });
            return;
        };
        let bar = |x| BrauerBDiagram::bar(n, x);
        for q in p + 1..mate.len() {
            if mate[q] != usize::MAX {
                continue;
            }
            if q == bar(p) {
                mate[p] = q;
                mate[q] = p;
                rec(n, mate, out);
                mate[p] = usize::MAX;
                mate[q] = usize::MAX;
            } else if mate[bar(q)] == usize::MAX {
                let (bp, bq) = (bar(p), bar(q));
                for (x, y) in [(p, q), (bp, bq)] {
                    mate[x] = y;
                    mate[y] = x;
                }
                rec(n, mate, out);
                for x in [p, q, bp, bq] {
                    mate[x] = usize::MAX;
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut vec![usize::MAX; 4 * n], &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{alphabet, random_words};
    use proptest::prelude::*;

    fn word(s: &str) -> SingularWord {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example_fixes_gluing_order() {
        let a: BrauerDiagram = "{1,2},{3,3'},{1',2'}".parse().unwrap();
        let b: BrauerDiagram = "{1,2},{3,1'},{2',3'}".parse().unwrap();
        let (p, e) = a.mul(&b).unwrap();
        assert_eq!(p, b);
        assert_eq!(e.k_closed, 1);
        let (q, _) = b.mul(&a).unwrap();
        assert_ne!(q, b);
    }

    #[test]
    fn identity_and_hook_square() {
        let h = BrauerDiagram::hook(1, 3).unwrap();
        assert_eq!(BrauerDiagram::identity(3).mul(&h).unwrap(), (h.clone(), ScalarExponents::default()));
        let (sq, e) = h.mul(&h).unwrap();
        assert_eq!(sq, h);
        assert_eq!(e.k_closed, 1);
        assert_eq!(h.to_string(), "{1,2},{3,3'},{1',2'}");
    }

    #[test]
    fn partial_open_components() {
        let single = PartialBrauerDiagram::empty(1);
        let (p, e) = single.mul(&single).unwrap();
        assert_eq!(p, single);
        assert_eq!((e.k_closed, e.k_open), (0, 1));
        let id = PartialBrauerDiagram::identity(2);
        let d: PartialBrauerDiagram = "{1,2'},{2},{1'}".parse().unwrap();
        assert_eq!(id.mul(&d).unwrap(), (d.clone(), ScalarExponents::default()));
        // dead ends attached to outer points are not removed components
        let (p, e) = d.mul(&d).unwrap();
        assert_eq!(p.to_string(), "{1},{2},{1'},{2'}");
        assert!(e.is_zero());
    }

    #[test]
    fn colored_examples() {
        let c: ColoredPartialBrauer = "{1,1'}:1".parse().unwrap();
        let (sq, e) = c.mul(&c).unwrap();
        assert_eq!(sq, ColoredPartialBrauer::identity(1));
        assert!(e.is_zero());
        // a loop through one color-1 block
        let top: ColoredPartialBrauer = "{1,2},{1',2'}:1".parse().unwrap();
        let bottom: ColoredPartialBrauer = "{1,2},{1',2'}".parse().unwrap();
        let (_, e) = top.mul(&bottom).unwrap();
        assert_eq!((e.k_closed, e.k_by_color), (1, [0, 1]));
        let (_, e) = bottom.mul(&bottom).unwrap();
        assert_eq!(e.k_by_color, [1, 0]);
        assert!("{1,1'}:2".parse::<ColoredPartialBrauer>().is_err());
    }

    #[test]
    fn type_b_generators() {
        let h0 = BrauerBDiagram::hook(0, 1).unwrap();
        let (sq, e) = h0.mul(&h0).unwrap();
        assert_eq!(sq, h0);
        assert_eq!(e.k_closed, 1);
        assert_eq!(h0.left_defect(), BTreeSet::from([1]));
        assert_eq!(h0.right_defect(), BTreeSet::from([1]));
        let s1 = word("s1 t0 s1");
        let (d, _) = chi_b_eval(&word("t1 s0 t1"), 2).unwrap();
        assert_eq!(d, chi_b_eval(&word("t1"), 2).unwrap().0);
        assert!(chi_b_eval(&s1, 2).is_ok());
        assert_eq!(chi_b_eval(&word("t0"), 3).unwrap().0, BrauerBDiagram::hook(0, 3).unwrap());
        let id = BrauerBDiagram::identity(2);
        assert!(id.left_defect().is_empty());
    }

    #[test]
    fn chi_examples() {
        let s1 = CoxeterType::A(3).generator(1).unwrap();
        assert_eq!(chi_eval(&word("s1"), 3).unwrap().0, BrauerDiagram::permutation(&s1).unwrap());
        assert_eq!(chi_eval(&word("S1"), 3).unwrap().0, BrauerDiagram::permutation(&s1).unwrap());
        let (a, e) = chi_eval(&word("t1 t2 t1"), 3).unwrap();
        assert_eq!(a, chi_eval(&word("t1"), 3).unwrap().0);
        assert_eq!(e.k_closed, 0);
    }

    #[test]
    fn br2_chain_steps_are_equalities() {
        for n in 3..=5 {
            for i in 1..n - 1 {
                let values: Vec<BrauerDiagram> = br2_chain(i)
                    .iter()
                    .map(|w| chi_eval(w, n).unwrap().0)
                    .collect();
                assert_eq!(values.len(), 9);
                assert!(values.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }

    #[test]
    fn other_candidate_relation_fails() {
        let (l, r) = cl_relation();
        assert_ne!(chi_b_eval(&l, 2).unwrap().0, chi_b_eval(&r, 2).unwrap().0);
    }

    #[test]
    fn apb_worked_example() {
        let d: BrauerBDiagram =
            "{-4,4'},{4,-4'},{-3,-2},{2,3},{-1,1},{-3',-2'},{-1',1'},{2',3'}".parse().unwrap();
        let c = to_apb(&d);
        let expected: ColoredPartialBrauer = "{1},{2,3}:0,{4,4'}:1,{1'},{2',3'}:0".parse().unwrap();
        assert_eq!(c, expected);
        assert_eq!(from_apb(&c), d);
        assert_eq!(to_apb(&BrauerBDiagram::identity(3)), ColoredPartialBrauer::identity(3));
    }

    #[test]
    fn apb_bijection_and_homomorphism_exhaustive() {
        let all = all_brauer_b(2);
        let images: BTreeSet<_> = all.iter().map(to_apb).collect();
        assert_eq!(images.len(), all.len());
        assert_eq!(images.into_iter().collect::<Vec<_>>(), all_colored_partial(2));
        for a in &all {
            assert_eq!(&from_apb(&to_apb(a)), a);
            for b in &all {
                let (ab, _) = a.mul(b).unwrap();
                let (cab, _) = to_apb(a).mul(&to_apb(b)).unwrap();
                assert_eq!(to_apb(&ab), cab);
            }
        }
    }

    #[test]
    fn normal_form_recomposes_exhaustive() {
        for n in 1..=2 {
            for d in all_brauer_b(n) {
                let (l, s, r) = d.normal_form().unwrap();
                let sd = BrauerBDiagram::signed_permutation(&s).unwrap();
                let prod = l.mul(&sd).unwrap().0.mul(&r).unwrap().0;
                assert_eq!(prod, d, "{d}");
                assert_eq!(l.mul(&l).unwrap().0, l);
                assert_eq!(l.left_defect(), d.left_defect());
                assert_eq!(r.right_defect(), d.right_defect());
            }
        }
        let (l, s, r) = BrauerBDiagram::identity(3).normal_form().unwrap();
        assert!(s.is_identity());
        assert_eq!((l.clone(), r), (BrauerBDiagram::identity(3), BrauerBDiagram::identity(3)));
    }

    #[test]
    fn enumeration_counts() {
        let double_fact = [1usize, 1, 3, 15, 105, 945];
        for n in 0..=5 {
            assert_eq!(all_brauer(n).len(), double_fact[n]);
        }
        // oracle: filter all matchings on 4n points
        for n in 1..=3 {
            let pts: Vec<usize> = (0..4 * n).collect();
            let oracle = perfect_matchings(&pts)
                .into_iter()
                .filter(|m| {
                    let mut mate = vec![0; 4 * n];
                    for &(a, b) in m {
                        mate[a] = b;
                        mate[b] = a;
                    }
                    BrauerBDiagram::new(n, mate).is_ok()
                })
                .count();
            assert_eq!(all_brauer_b(n).len(), oracle);
        }
        assert_eq!(all_brauer_b(1).len(), 3);
        assert_eq!(all_partial_brauer(2).len(), 10);
    }

    #[test]
    fn text_round_trip() {
        for d in all_brauer_b(2) {
            assert_eq!(d.to_string().parse::<BrauerBDiagram>().unwrap(), d);
        }
        for d in all_colored_partial(2) {
            let s = d.to_string();
            assert_eq!(s.parse::<ColoredPartialBrauer>().unwrap(), d, "{s}");
        }
        assert!("{1,1}".parse::<BrauerDiagram>().is_err());
        assert!("{1,2},{1,1'}".parse::<BrauerDiagram>().is_err());
        assert!("{1,2}".parse::<BrauerBDiagram>().is_err());
    }

    #[test]
    fn json_shape() {
        let d = BrauerDiagram::hook(1, 3).unwrap();
        let v = json_with_exponents(d.to_json(), &ScalarExponents { k_closed: 1, ..Default::default() });
        assert_eq!(v["blocks"][0], json!([1, 2]));
        assert_eq!(v["blocks"][1], json!(["3", "3'"]));
        assert_eq!(v["k"], json!(1));
        assert_eq!(v["kp"], json!(0));
        let c: ColoredPartialBrauer = "{1,1'}:1".parse().unwrap();
        assert_eq!(c.to_json()["colors"]["{1,1'}"], json!(1));
    }

    fn pick<T: Clone>(v: &[T], s: u64) -> T {
        v[(s % v.len() as u64) as usize].clone()
    }

    proptest! {
        #[test]
        fn associativity_with_exponents(s in any::<(u64, u64, u64)>()) {
            let all = all_brauer(4);
            let (a, b, c) = (pick(&all, s.0), pick(&all, s.1), pick(&all, s.2));
            let (ab, e1) = a.mul(&b).unwrap();
            let (abc, e2) = ab.mul(&c).unwrap();
            let (bc, f1) = b.mul(&c).unwrap();
            let (abc2, f2) = a.mul(&bc).unwrap();
            prop_assert_eq!(abc, abc2);
            prop_assert_eq!(e1 + e2, f1 + f2);

            let all = all_colored_partial(3);
            let (a, b, c) = (pick(&all, s.0), pick(&all, s.1), pick(&all, s.2));
            let (ab, e1) = a.mul(&b).unwrap();
            let (abc, e2) = ab.mul(&c).unwrap();
            let (bc, f1) = b.mul(&c).unwrap();
            let (abc2, f2) = a.mul(&bc).unwrap();
            prop_assert_eq!(abc, abc2);
            prop_assert_eq!(e1 + e2, f1 + f2);

            let all = all_brauer_b(2);
            let (a, b, c) = (pick(&all, s.0), pick(&all, s.1), pick(&all, s.2));
            let (ab, e1) = a.mul(&b).unwrap();
            let (abc, e2) = ab.mul(&c).unwrap();
            let (bc, f1) = b.mul(&c).unwrap();
            let (abc2, f2) = a.mul(&bc).unwrap();
            prop_assert_eq!(abc, abc2);
            prop_assert_eq!(e1 + e2, f1 + f2);
        }

        #[test]
        fn partial_embedding_matches_brauer(s in any::<(u64, u64)>()) {
            let all = all_brauer(3);
            let (a, b) = (pick(&all, s.0), pick(&all, s.1));
            let (ab, e) = a.mul(&b).unwrap();
            let (pab, pe) = a.to_partial().mul(&b.to_partial()).unwrap();
            prop_assert_eq!(ab.to_partial(), pab);
            prop_assert_eq!(e, pe);
            prop_assert_eq!(pe.k_open, 0);
            let (cab, ce) = ColoredPartialBrauer::uncolored(a.to_partial())
                .mul(&ColoredPartialBrauer::uncolored(b.to_partial())).unwrap();
            prop_assert_eq!(cab.diagram(), &ab.to_partial());
            prop_assert_eq!(ce.k_by_color[0], e.k_closed);
        }

        #[test]
        fn apb_homomorphism_random_n3(s in any::<(u64, u64)>()) {
            let asg = chi_b_assignment(3).unwrap();
            let ws = random_words(&alphabet(&CoxeterType::B(3).matrix()), 8, 2, s.0 ^ s.1);
            let a = asg.evaluate(&ws[0]).unwrap();
            let b = asg.evaluate(&ws[1]).unwrap();
            let ab = a.mul(&b).unwrap().0;
            prop_assert_eq!(to_apb(&ab), to_apb(&a).mul(&to_apb(&b)).unwrap().0);
            prop_assert_eq!(from_apb(&to_apb(&ab)), ab);
        }
    }
}
