//! The universal derivation `d`, the derivative `d/dx = ψ ∘ d`, general
//! derivations `h·d/dx = φ_(x,h) ∘ d`, and the chain-rule verifiers.
//!
//! `d` moves one unit of x-degree into y-degree, so a coefficient of `df` at
//! x-degree n depends on the slice of `f` at n + 1: outputs of
//! [`differential`] and [`derivative`] are one degree less precise than
//! their input.
//!
//! Note that `(h·d/dx)(f)` is not `h` times `f'`; there is deliberately no
//! helper computing the latter.

use crate::error::{Error, Result};
use crate::report::Report;
use crate::series::{Rational, Series};
use crate::substitution::{eval_y_one, substitute, substitute_x};
use crate::trees::{relabel_leaf, Label, Monomial};

fn require_x_only(f: &Series) -> Result<()> {
    match f.monomials().find(|m| m.deg_y() > 0) {
        Some(m) => Err(Error::YPresent(m.encoding().to_string())),
        None => Ok(()),
    }
}

fn reduced_precision(f: &Series) -> Result<usize> {
    f.precision().checked_sub(1).ok_or(Error::Precision {
        requested: 1,
        precision: 0,
    })
}

/// `df`: every x-leaf in turn is relabelled `y`.
pub fn differential(f: &Series) -> Result<Series> {
    require_x_only(f)?;
    let p = reduced_precision(f)?;
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for (s, c) in f.terms() {
        for i in 1..=s.degree() {
            terms.push((relabel_leaf(s, i, Label::Y)?, c.clone()));
        }
    }
    Ok(Series::from_terms(terms, p))
}

/// `f' = ψ(df)`.
pub fn derivative(f: &Series) -> Result<Series> {
    Ok(eval_y_one(&differential(f)?))
}

/// The derivation `h·d/dx` applied to `f`, i.e. `(df)(x, h)`.
pub fn derivation_apply(h: &Series, f: &Series) -> Result<Series> {
    let df = differential(f)?;
    substitute(&df, &Series::x(df.precision()), h)
}

/// `(dφ_g)(df)`: the differential of `f` with `x ↦ g` and `y ↦ dg`.
pub fn differential_substituted(f: &Series, g: &Series) -> Result<Series> {
    let df = differential(f)?;
    let dg = differential(g)?;
    substitute(&df, g, &dg)
}

/// Checks `(dφ_g)(df) = d(f(g))`.
pub fn verify_chain_rule(f: &Series, g: &Series) -> Report {
    let p = f.precision().min(g.precision()).saturating_sub(1);
    let mut report = Report::new("chain-rule", p).sides("dphi(df)", "d(f(g))");
    if !g.has_positive_order() {
        report.precondition_failed("g must have x-order at least 1");
        return report;
    }
    let sides = differential_substituted(f, g).and_then(|left| {
        let right = differential(&substitute_x(f, g)?)?;
        Ok((left, right))
    });
    match sides {
        Ok((left, right)) => report.compare("chain rule", &left, &right),
        Err(e) => report.precondition_failed(e.to_string()),
    }
    report
}

/// Checks `d/dx f(g) = ((1+x)·d/dx)(f)(g)` for a `g` with `g' = 1 + g`.
pub fn verify_special_chain_rule(f: &Series, g: &Series) -> Report {
    let p = f.precision().min(g.precision()).saturating_sub(1);
    let mut report = Report::new("special-chain-rule", p).sides("(f(g))'", "((1+x)d/dx f)(g)");
    if !g.has_positive_order() {
        report.precondition_failed("g must have x-order at least 1");
        return report;
    }
    match derivative(g) {
        Ok(dg) => {
            let one_plus_g = &Series::one(g.precision()) + g;
            if let Some(mm) = dg.first_mismatch(&one_plus_g) {
                report.precondition_failed(format!(
                    "g' != 1 + g at {}: {} vs {}",
                    mm.monomial, mm.left, mm.right
                ));
                return report;
            }
        }
        Err(e) => {
            report.precondition_failed(e.to_string());
            return report;
        }
    }
    let sides = substitute_x(f, g)
        .and_then(|fg| derivative(&fg))
        .and_then(|left| {
            let one_plus_x = &Series::one(f.precision()) + &Series::x(f.precision());
            let theta_f = derivation_apply(&one_plus_x, f)?;
            Ok((left, substitute_x(&theta_f, g)?))
        });
    match sides {
        Ok((left, right)) => report.compare("special chain rule", &left, &right),
        Err(e) => report.precondition_failed(e.to_string()),
    }
    report
}
