//! Tree-indexed composites and substitution homomorphisms.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::series::{product, Rational, Series};
use crate::trees::{graft_unchecked, Label, Monomial, Shape};

/// The operation `·_T` attached to a tree: leaves take the arguments in
/// planar order and every node multiplies its children's composites.
pub fn composite(t: &Monomial, args: &[&Series]) -> Result<Series> {
    if t.is_unit() || args.len() != t.degree() {
        return Err(Error::ArgumentCount {
            leaves: t.degree(),
            args: args.len(),
        });
    }
    let p = args.iter().map(|s| s.precision()).min().unwrap();
    Ok(composite_rec(t, args, p))
}

fn composite_rec(t: &Monomial, args: &[&Series], p: usize) -> Series {
    match t.shape() {
        Shape::Unit => Series::one(p),
        Shape::Leaf(_) => args[0].truncate(p),
        Shape::Node(children) => {
            let mut offset = 0;
            let parts: Vec<Series> = children
                .iter()
                .map(|c| {
                    let d = c.degree();
                    let part = composite_rec(c, &args[offset..offset + d], p);
                    offset += d;
                    part
                })
                .collect();
            let refs: Vec<&Series> = parts.iter().collect();
            product(&refs).expect("nodes have at least two children")
        }
    }
}

/// `f(g, h)`: the substitution homomorphism sending `x ↦ g`, `y ↦ h`.
///
/// Requires `ord_x(g) ≥ 1`. The result is exact to
/// `min(P_f, P_g, P_h)`.
pub fn substitute(f: &Series, g: &Series, h: &Series) -> Result<Series> {
    if !g.has_positive_order() {
        return Err(Error::OrderViolation);
    }
    let p = f.precision().min(g.precision()).min(h.precision());
    let g = g.truncate(p);
    let h = h.truncate(p);
    let mut memo: HashMap<Monomial, Series> = HashMap::new();
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for (s, c) in f.terms() {
        if s.deg_x() > p {
            continue;
        }
        let image = substitute_monomial(s, &g, &h, p, &mut memo);
        terms.extend(image.terms().map(|(m, a)| (m.clone(), a * c)));
    }
    Ok(Series::from_terms(terms, p))
}

fn substitute_monomial(
    s: &Monomial,
    g: &Series,
    h: &Series,
    p: usize,
    memo: &mut HashMap<Monomial, Series>,
) -> Series {
    if let Some(v) = memo.get(s) {
        return v.clone();
    }
    let out = match s.shape() {
        Shape::Unit => Series::one(p),
        Shape::Leaf(Label::X) => g.clone(),
        Shape::Leaf(Label::Y) => h.clone(),
        Shape::Node(children) => {
            let parts: Vec<Series> = children
                .iter()
                .map(|c| substitute_monomial(c, g, h, p, memo))
                .collect();
            let refs: Vec<&Series> = parts.iter().collect();
            product(&refs).expect("nodes have at least two children")
        }
    };
    memo.insert(s.clone(), out.clone());
    out
}

/// `f(g)` with `y` left in place.
pub fn substitute_x(f: &Series, g: &Series) -> Result<Series> {
    substitute(f, g, &Series::y(f.precision()))
}

/// `ψ`: sends `y ↦ 1` by deleting every y-leaf and re-reducing.
pub fn eval_y_one(f: &Series) -> Series {
    Series::from_terms(
        f.terms().map(|(m, c)| (strip_y(m), c.clone())),
        f.precision(),
    )
}

fn strip_y(m: &Monomial) -> Monomial {
    if m.deg_y() == 0 {
        return m.clone();
    }
    match m.shape() {
        Shape::Leaf(Label::Y) => Monomial::unit(),
        Shape::Node(children) => graft_unchecked(children.iter().map(strip_y).collect()),
        _ => m.clone(),
    }
}
