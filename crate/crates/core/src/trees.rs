//! Planar reduced rooted trees with leaves labelled `x` or `y`.
//!
//! A [`Monomial`] is either the unit (the empty tree), a single labelled
//! leaf, or a node with at least two non-unit children. Construction always
//! goes through [`graft`], which absorbs units and splices away unary
//! vertices, so two monomials are structurally equal exactly when they are
//! isomorphic as labelled planar trees.
//!
//! Every monomial carries its canonical encoding (`1`, `x`, `y`, or
//! `(c1,c2,...)`), which doubles as its hash and ordering key. Monomials are
//! ordered by total degree first, then byte-lexicographically on the
//! encoding; in ASCII `(` < `)` < `,` < `1` < `x` < `y`, which is the order
//! the encoding alphabet is meant to sort in.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    X,
    Y,
}

impl Label {
    pub fn as_char(self) -> char {
        match self {
            Label::X => 'x',
            Label::Y => 'y',
        }
    }
}

#[derive(Debug)]
pub enum Shape {
    Unit,
    Leaf(Label),
    Node(Vec<Monomial>),
}

#[derive(Debug)]
struct Inner {
    shape: Shape,
    deg_x: usize,
    deg_y: usize,
    code: String,
}

/// An isomorphism class of `{x, y}`-labelled planar reduced rooted trees,
/// or the unit `1`.
#[derive(Clone)]
pub struct Monomial(Arc<Inner>);

impl Monomial {
    fn from_inner(shape: Shape) -> Self {
        let (deg_x, deg_y, code) = match &shape {
            Shape::Unit => (0, 0, "1".to_string()),
            Shape::Leaf(Label::X) => (1, 0, "x".to_string()),
            Shape::Leaf(Label::Y) => (0, 1, "y".to_string()),
            Shape::Node(children) => {
                let mut code = String::from("(");
                let (mut dx, mut dy) = (0, 0);
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        code.push(',');
                    }
                    code.push_str(c.encoding());
                    dx += c.deg_x();
                    dy += c.deg_y();
                }
                code.push(')');
                (dx, dy, code)
            }
        };
        Monomial(Arc::new(Inner {
            shape,
            deg_x,
            deg_y,
            code,
        }))
    }

    pub fn unit() -> Self {
        Self::from_inner(Shape::Unit)
    }

    pub fn leaf(label: Label) -> Self {
        Self::from_inner(Shape::Leaf(label))
    }

    pub fn x() -> Self {
        Self::leaf(Label::X)
    }

    pub fn y() -> Self {
        Self::leaf(Label::Y)
    }

    /// The n-ary corolla `x^n`; `x^1 = x` and `x^0 = 1`.
    pub fn corolla(n: usize) -> Self {
        match n {
            0 => Self::unit(),
            1 => Self::x(),
            _ => Self::from_inner(Shape::Node(vec![Self::x(); n])),
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.0.shape
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.0.shape, Shape::Unit)
    }

    /// Children of the root; empty for units and leaves.
    pub fn children(&self) -> &[Monomial] {
        match &self.0.shape {
            Shape::Node(c) => c,
            _ => &[],
        }
    }

    pub fn deg_x(&self) -> usize {
        self.0.deg_x
    }

    pub fn deg_y(&self) -> usize {
        self.0.deg_y
    }

    /// Total degree, the number of leaves.
    pub fn degree(&self) -> usize {
        self.0.deg_x + self.0.deg_y
    }

    pub fn encoding(&self) -> &str {
        &self.0.code
    }

    /// Leaf labels in left-to-right planar order.
    pub fn leaf_labels(&self) -> Vec<Label> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<Label>) {
        match &self.0.shape {
            Shape::Unit => {}
            Shape::Leaf(l) => out.push(*l),
            Shape::Node(c) => c.iter().for_each(|c| c.collect_labels(out)),
        }
    }

    /// True when every vertex has exactly two children.
    pub fn is_binary(&self) -> bool {
        match &self.0.shape {
            Shape::Node(c) => c.len() == 2 && c.iter().all(Monomial::is_binary),
            _ => true,
        }
    }

    /// True when the monomial is an n-ary corolla of `x` leaves with n ≥ 2.
    pub fn is_x_corolla(&self) -> bool {
        match &self.0.shape {
            Shape::Node(c) => c.iter().all(|c| matches!(c.shape(), Shape::Leaf(Label::X))),
            _ => false,
        }
    }

    /// Rebuilds the tree with leaf `i` (1-based) replaced by `f(label)`.
    fn map_leaf(&self, index: usize, f: &dyn Fn(Label) -> Monomial) -> Result<Monomial> {
        if self.is_unit() {
            return Err(Error::UnitHasNoLeaves);
        }
        if index == 0 || index > self.degree() {
            return Err(Error::LeafIndex {
                index,
                degree: self.degree(),
            });
        }
        Ok(self.map_leaf_unchecked(index, f))
    }

    fn map_leaf_unchecked(&self, index: usize, f: &dyn Fn(Label) -> Monomial) -> Monomial {
        match &self.0.shape {
            Shape::Unit => self.clone(),
            Shape::Leaf(l) => f(*l),
            Shape::Node(children) => {
                let mut offset = 0;
                let mut out = Vec::with_capacity(children.len());
                for c in children {
                    let d = c.degree();
                    if offset < index && index <= offset + d {
                        out.push(c.map_leaf_unchecked(index - offset, f));
                    } else {
                        out.push(c.clone());
                    }
                    offset += d;
                }
                graft_unchecked(out)
            }
        }
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.code == other.0.code
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.code.hash(state);
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.code.as_bytes().cmp(other.0.code.as_bytes()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.code)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.code)
    }
}

/// Parses the canonical encoding. Input that is not already reduced (a unary
/// node, a unit child) is normalized through [`graft`].
impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes: Vec<(usize, u8)> = s
            .bytes()
            .enumerate()
            .filter(|(_, b)| !b.is_ascii_whitespace())
            .collect();
        let mut pos = 0;
        let m = parse_encoding(&bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse {
                pos: bytes[pos].0,
                msg: "trailing input after monomial".into(),
            });
        }
        Ok(m)
    }
}

fn parse_encoding(bytes: &[(usize, u8)], pos: &mut usize) -> Result<Monomial> {
    let err = |pos: usize, msg: &str| Error::Parse {
        pos: bytes
            .get(pos)
            .map_or(bytes.last().map_or(0, |b| b.0 + 1), |b| b.0),
        msg: msg.to_string(),
    };
    match bytes.get(*pos).map(|b| b.1) {
        Some(b'1') => {
            *pos += 1;
            Ok(Monomial::unit())
        }
        Some(b'x') => {
            *pos += 1;
            Ok(Monomial::x())
        }
        Some(b'y') => {
            *pos += 1;
            Ok(Monomial::y())
        }
        Some(b'(') => {
            *pos += 1;
            let mut children = vec![parse_encoding(bytes, pos)?];
            loop {
                match bytes.get(*pos).map(|b| b.1) {
                    Some(b',') => {
                        *pos += 1;
                        children.push(parse_encoding(bytes, pos)?);
                    }
                    Some(b')') => {
                        *pos += 1;
                        break;
                    }
                    _ => return Err(err(*pos, "expected ',' or ')'")),
                }
            }
            Ok(graft_unchecked(children))
        }
        _ => Err(err(*pos, "expected '1', 'x', 'y' or '('")),
    }
}

/// Grafts any number of monomials, dropping units; zero survivors give the
/// unit and a single survivor is returned unchanged.
pub(crate) fn graft_unchecked(args: Vec<Monomial>) -> Monomial {
    let mut kept: Vec<Monomial> = args.into_iter().filter(|m| !m.is_unit()).collect();
    match kept.len() {
        0 => Monomial::unit(),
        1 => kept.pop().unwrap(),
        _ => Monomial::from_inner(Shape::Node(kept)),
    }
}

/// The m-ary grafting operation, m = `args.len()` ≥ 2.
pub fn graft(args: &[Monomial]) -> Result<Monomial> {
    if args.len() < 2 {
        return Err(Error::Arity(args.len()));
    }
    Ok(graft_unchecked(args.to_vec()))
}

/// All m-tuples whose m-ary graft equals `s`.
///
/// Either `s` sits in one slot with units elsewhere, or (when the root arity
/// r satisfies 2 ≤ r ≤ m) the root's children occupy an r-subset of the
/// slots in order.
pub fn decompositions(s: &Monomial, m: usize) -> Result<Vec<Vec<Monomial>>> {
    if m < 2 {
        return Err(Error::Arity(m));
    }
    let unit = Monomial::unit();
    if s.is_unit() {
        return Ok(vec![vec![unit; m]]);
    }
    let mut out = Vec::new();
    for slot in 0..m {
        let mut t = vec![unit.clone(); m];
        t[slot] = s.clone();
        out.push(t);
    }
    let children = s.children();
    let r = children.len();
    if r >= 2 && r <= m {
        for subset in combinations(m, r) {
            let mut t = vec![unit.clone(); m];
            for (child, slot) in children.iter().zip(subset) {
                t[slot] = child.clone();
            }
            out.push(t);
        }
    }
    Ok(out)
}

/// r-subsets of 0..n in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = r;
        while i > 0 && idx[i - 1] == n - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Removes leaf `index` (1-based, left to right) and re-reduces the tree.
pub fn delete_leaf_and_reduce(s: &Monomial, index: usize) -> Result<Monomial> {
    s.map_leaf(index, &|_| Monomial::unit())
}

pub fn relabel_leaf(s: &Monomial, index: usize, label: Label) -> Result<Monomial> {
    s.map_leaf(index, &|_| Monomial::leaf(label))
}

/// All monomials of total degree `n` with leaf labels drawn from `labels`,
/// in canonical order.
pub fn enumerate_monomials(n: usize, labels: &[Label]) -> Vec<Monomial> {
    let mut labels = labels.to_vec();
    labels.sort();
    labels.dedup();
    let mut memo: HashMap<usize, Vec<Monomial>> = HashMap::new();
    let mut out = enumerate_memo(n, &labels, &mut memo);
    out.sort();
    out
}

fn enumerate_memo(
    n: usize,
    labels: &[Label],
    memo: &mut HashMap<usize, Vec<Monomial>>,
) -> Vec<Monomial> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let out = match n {
        0 => vec![Monomial::unit()],
        1 => labels.iter().map(|&l| Monomial::leaf(l)).collect(),
        _ => {
            let mut out = Vec::new();
            for parts in compositions(n) {
                if parts.len() < 2 {
                    continue;
                }
                let choices: Vec<Vec<Monomial>> = parts
                    .iter()
                    .map(|&p| enumerate_memo(p, labels, memo))
                    .collect();
                for pick in cartesian(&choices) {
                    out.push(Monomial::from_inner(Shape::Node(pick)));
                }
            }
            out
        }
    };
    memo.insert(n, out.clone());
    out
}

/// Compositions of n into positive parts.
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub(crate) fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::with_capacity(choices.len())];
    for options in choices {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for o in options {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Canonical key of the underlying non-planar labelled tree: the encoding
/// obtained after sorting every node's children by (degree, key).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitKey(String);

impl OrbitKey {
    pub fn of(s: &Monomial) -> Self {
        OrbitKey(sorted_form(s).encoding().to_string())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for OrbitKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The member of the orbit of `s` whose children are sorted at every node;
/// its encoding is the orbit key.
pub fn sorted_form(s: &Monomial) -> Monomial {
    match s.shape() {
        Shape::Node(children) => {
            let mut sorted: Vec<Monomial> = children.iter().map(sorted_form).collect();
            sorted.sort();
            Monomial::from_inner(Shape::Node(sorted))
        }
        _ => s.clone(),
    }
}

/// All planar monomials sharing the underlying rooted tree of `s`, in
/// canonical order.
pub fn orbit_sum(s: &Monomial) -> Vec<Monomial> {
    let mut out = orbit_members(s);
    out.sort();
    out.dedup();
    out
}

fn orbit_members(s: &Monomial) -> Vec<Monomial> {
    let children = match s.shape() {
        Shape::Node(c) => c,
        _ => return vec![s.clone()],
    };
    // one representative per child class, children as indices into it
    let mut classes: Vec<(OrbitKey, Vec<Monomial>)> = Vec::new();
    let mut seq: Vec<usize> = Vec::with_capacity(children.len());
    for c in children {
        let key = OrbitKey::of(c);
        let idx = match classes.iter().position(|(k, _)| *k == key) {
            Some(i) => i,
            None => {
                classes.push((key, orbit_members(c)));
                classes.len() - 1
            }
        };
        seq.push(idx);
    }
    seq.sort_unstable();
    let mut out = Vec::new();
    loop {
        let choices: Vec<Vec<Monomial>> = seq.iter().map(|&i| classes[i].1.clone()).collect();
        for pick in cartesian(&choices) {
            out.push(Monomial::from_inner(Shape::Node(pick)));
        }
        if !next_permutation(&mut seq) {
            break;
        }
    }
    out
}

/// Number of planar monomials in the orbit of `s`.
pub fn orbit_size(s: &Monomial) -> u128 {
    let children = s.children();
    if children.is_empty() {
        return 1;
    }
    let keys: Vec<OrbitKey> = children.iter().map(OrbitKey::of).collect();
    let mut arrangements = factorial(children.len());
    let mut counted: Vec<&OrbitKey> = Vec::new();
    for k in &keys {
        if !counted.contains(&k) {
            counted.push(k);
            arrangements /= factorial(keys.iter().filter(|o| *o == k).count());
        }
    }
    children
        .iter()
        .fold(arrangements, |acc, c| acc * orbit_size(c))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
