//! Text syntax for planar series.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! series   := ['+'|'-'] term (('+'|'-') term)*
//! term     := rational '*' mono | rational | mono
//! mono     := '1' | atomlist
//! atomlist := atom ('*' atom)*
//! atom     := 'x' | 'y' | 'x^' INT | '{' atomlist '}' | '(' atomlist ')'
//! rational := INT ['/' INT]
//! ```
//!
//! A list of m ≥ 2 atoms is one m-ary graft, so `x*x*x` is the ternary
//! corolla and differs from `(x*x)*x`. `x^n` (n ≥ 2) is the n-ary corolla
//! and `{…}` expands to the orbit sum of the enclosed monomial. Inside
//! parentheses `,` may be used in place of `*`, which makes the canonical
//! tree encoding valid input as well. A bare rational is a constant term.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{Rational, Series};
use crate::trees::{
    graft_unchecked, orbit_size, orbit_sum, sorted_form, Monomial, OrbitKey, Shape,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Canonical,
    Pretty,
    Json,
}

impl FromStr for Style {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "canonical" => Ok(Style::Canonical),
            "pretty" => Ok(Style::Pretty),
            "json" => Ok(Style::Json),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

/// Parses a polynomial; its precision is the largest x-degree written.
pub fn parse(text: &str) -> Result<Series> {
    let mut p = Parser::new(text);
    let terms = p.series()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    let precision = terms.iter().map(|(m, _)| m.deg_x()).max().unwrap_or(0);
    Ok(Series::from_terms(terms, precision))
}

type Sum = Vec<(Monomial, Rational)>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn series(&mut self) -> Result<Sum> {
        let mut out = Sum::new();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (c, terms) = self.term()?;
            let c = if negative { -c } else { c };
            out.extend(terms.into_iter().map(|(m, a)| (m, a * &c)));
            negative = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return Ok(out),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Rational, Sum)> {
        if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            let c = self.rational()?;
            if self.eat(b'*') {
                if self.eat(b'1') {
                    return Ok((c, vec![(Monomial::unit(), Rational::one())]));
                }
                return Ok((c, self.atomlist(false)?));
            }
            return Ok((c, vec![(Monomial::unit(), Rational::one())]));
        }
        Ok((Rational::one(), self.atomlist(false)?))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as an integer"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                self.pos = at;
                return Err(self.error("zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn atomlist(&mut self, allow_comma: bool) -> Result<Sum> {
        let mut atoms = vec![self.atom()?];
        while self.eat(b'*') || (allow_comma && self.eat(b',')) {
            atoms.push(self.atom()?);
        }
        if atoms.len() == 1 {
            return Ok(atoms.pop().unwrap());
        }
        let mut out = vec![(Vec::new(), Rational::one())];
        for atom in &atoms {
            let mut next = Vec::with_capacity(out.len() * atom.len());
            for (prefix, c) in &out {
                for (m, a) in atom {
                    let mut v: Vec<Monomial> = prefix.clone();
                    v.push(m.clone());
                    next.push((v, c * a));
                }
            }
            out = next;
        }
        Ok(out
            .into_iter()
            .map(|(children, c)| (graft_unchecked(children), c))
            .collect())
    }

    fn atom(&mut self) -> Result<Sum> {
        let one = Rational::one();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let at = self.pos;
                    let n = self.integer()?;
                    let n: usize = match n.try_into() {
                        Ok(n) if n >= 2 => n,
                        _ => {
                            self.pos = at;
                            return Err(self.error("exponent must be at least 2 (write x or 1)"));
                        }
                    };
                    return Ok(vec![(Monomial::corolla(n), one)]);
                }
                Ok(vec![(Monomial::x(), one)])
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(vec![(Monomial::y(), one)])
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.atomlist(true)?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'{') => {
                self.pos += 1;
                let at = self.pos;
                let inner = self.atomlist(false)?;
                if !self.eat(b'}') {
                    return Err(self.error("expected '}'"));
                }
                match inner.as_slice() {
                    [(m, c)] if c.is_one() => {
                        Ok(orbit_sum(m).into_iter().map(|t| (t, one.clone())).collect())
                    }
                    _ => {
                        self.pos = at;
                        Err(self.error("orbit braces must enclose a single monomial"))
                    }
                }
            }
            _ => Err(self.error("expected 'x', 'y', '(' or '{'")),
        }
    }
}

/// `x*(x*x^2)`-style rendering of one monomial.
pub fn pretty_monomial(m: &Monomial) -> String {
    match m.shape() {
        Shape::Unit => "1".into(),
        Shape::Leaf(l) => l.as_char().to_string(),
        Shape::Node(children) if m.is_x_corolla() => format!("x^{}", children.len()),
        Shape::Node(children) => children
            .iter()
            .map(|c| match c.shape() {
                Shape::Node(_) if !c.is_x_corolla() => format!("({})", pretty_monomial(c)),
                _ => pretty_monomial(c),
            })
            .collect::<Vec<_>>()
            .join("*"),
    }
}

fn write_terms<'a, I>(out: &mut String, terms: I)
where
    I: IntoIterator<Item = (String, &'a Rational)>,
{
    let mut first = true;
    for (text, c) in terms {
        let magnitude = c.abs();
        let body = if text == "1" {
            magnitude.to_string()
        } else if magnitude.is_one() {
            text
        } else {
            format!("{magnitude}*{text}")
        };
        match (first, c.is_negative()) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
        first = false;
    }
    if first {
        out.push('0');
    }
}

/// Tree-encoding rendering, terms in canonical order.
pub fn format_canonical(f: &Series) -> String {
    let mut out = String::new();
    write_terms(
        &mut out,
        f.terms().map(|(m, c)| (m.encoding().to_string(), c)),
    );
    out
}

/// `*`/`^` rendering; an orbit whose members all appear with one common
/// coefficient is collapsed to `{…}`.
pub fn format_pretty(f: &Series) -> String {
    let mut groups: BTreeMap<OrbitKey, Vec<(&Monomial, &Rational)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        groups.entry(OrbitKey::of(m)).or_default().push((m, c));
    }
    let mut items: Vec<(&Monomial, String, &Rational)> = Vec::new();
    for members in groups.values() {
        let (first, c) = members[0];
        let collapsible = members.len() > 1
            && members.iter().all(|(_, a)| *a == c)
            && orbit_size(first) == members.len() as u128;
        if collapsible {
            items.push((
                first,
                format!("{{{}}}", pretty_monomial(&sorted_form(first))),
                c,
            ));
        } else {
            items.extend(members.iter().map(|&(m, a)| (m, pretty_monomial(m), a)));
        }
    }
    items.sort_by(|a, b| a.0.cmp(b.0));
    let mut out = String::new();
    write_terms(&mut out, items.into_iter().map(|(_, t, c)| (t, c)));
    out
}

#[derive(Serialize)]
struct JsonSeries {
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    precision: usize,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize)]
struct JsonTerm {
    coeff: String,
    monomial: String,
    deg_x: usize,
    deg_y: usize,
}

pub fn format_json(f: &Series, k: Option<u32>) -> String {
    let doc = JsonSeries {
        k,
        precision: f.precision(),
        terms: f
            .terms()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                monomial: m.encoding().to_string(),
                deg_x: m.deg_x(),
                deg_y: m.deg_y(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("series serializes")
}

pub fn format(f: &Series, style: Style) -> String {
    match style {
        Style::Canonical => format_canonical(f),
        Style::Pretty => format_pretty(f),
        Style::Json => format_json(f, None),
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_pretty(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("x*(x*x^2)").unwrap(),
            Series::monomial(m("(x,(x,(x,x)))"), int(1), 4)
        );
        let orbit = parse("{x*x^2}").unwrap();
        assert_eq!(
            orbit,
            Series::from_terms([(m("(x,(x,x))"), int(1)), (m("((x,x),x)"), int(1))], 3)
        );
        let h = parse("-1/2*x^2 + x").unwrap();
        assert_eq!(
            h,
            Series::from_terms([(m("x"), int(1)), (m("(x,x)"), rat(-1, 2))], 2)
        );
    }

    #[test]
    fn products_are_flat_grafts() {
        assert_eq!(parse("x*x*x").unwrap(), parse("x^3").unwrap());
        assert_ne!(parse("x*x*x").unwrap(), parse("(x*x)*x").unwrap());
        assert_eq!(parse("(x,(x,x))").unwrap(), parse("x*x^2").unwrap());
        assert_eq!(
            parse("y*x").unwrap(),
            Series::monomial(m("(y,x)"), int(1), 1)
        );
    }

    #[test]
    fn orbit_inside_product_distributes() {
        let f = parse("x*{x*x^2}").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&m("(x,(x,(x,x)))")).unwrap(), int(1));
        assert_eq!(f.coefficient(&m("(x,((x,x),x))")).unwrap(), int(1));
    }

    #[test]
    fn constants_and_signs() {
        assert_eq!(parse("1").unwrap(), Series::one(0));
        assert_eq!(parse("3").unwrap(), Series::one(0).scale(&int(3)));
        assert_eq!(parse("2*1 - 1").unwrap(), Series::one(0));
        assert_eq!(parse("0").unwrap(), Series::zero(0));
        assert_eq!(parse("1 + x - x").unwrap(), Series::one(1));
        assert_eq!(parse(" - x ").unwrap(), Series::x(1).scale(&int(-1)));
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "x^1", "x^0", "x*", "(x*x", "{x*x", "2/0*x", "x y", "z", "", "{x+x}", "{2*x}",
        ] {
            assert!(matches!(parse(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
        match parse("x + x^1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pretty_monomials() {
        assert_eq!(pretty_monomial(&m("(x,(x,x))")), "x*x^2");
        assert_eq!(pretty_monomial(&m("((x,x),x)")), "x^2*x");
        assert_eq!(pretty_monomial(&m("(x,(x,(x,x)))")), "x*(x*x^2)");
        assert_eq!(pretty_monomial(&m("(x,x,x)")), "x^3");
        assert_eq!(pretty_monomial(&m("(x,y)")), "x*y");
        assert_eq!(pretty_monomial(&m("((x,y),x)")), "(x*y)*x");
    }

    #[test]
    fn format_styles() {
        let half_x2 = Series::monomial(m("(x,x)"), rat(1, 2), 2);
        assert_eq!(format_canonical(&half_x2), "1/2*(x,x)");
        assert_eq!(format_pretty(&half_x2), "1/2*x^2");
        let f = parse("1 - x + 2/3*{x*x^2} - x*x^2").unwrap();
        assert_eq!(format_pretty(&f), "1 - x + 2/3*x^2*x - 1/3*x*x^2");
        let g = parse("2*{x^2*x^2} + 2*{x*x^2}").unwrap();
        assert_eq!(format_pretty(&g), "2*{x*x^2} + 2*x^2*x^2");
        assert_eq!(format_pretty(&Series::zero(3)), "0");
    }

    #[test]
    fn json_shape() {
        let f = parse("x - 1/2*x*y").unwrap();
        let v: serde_json::Value = serde_json::from_str(&format_json(&f, Some(3))).unwrap();
        assert_eq!(v["k"], 3);
        assert_eq!(v["precision"], 1);
        assert_eq!(v["terms"][0]["monomial"], "x");
        assert_eq!(v["terms"][1]["coeff"], "-1/2");
        assert_eq!(v["terms"][1]["deg_y"], 1);
        let v: serde_json::Value = serde_json::from_str(&format_json(&f, None)).unwrap();
        assert!(v.get("k").is_none());
    }
}
