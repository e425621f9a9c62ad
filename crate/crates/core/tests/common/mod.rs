#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use planar_core::trees::Shape;
use planar_core::{decompositions, enumerate_monomials, graft, Label, Monomial, Rational, Series};
use proptest::prelude::*;
use rand::Rng;

pub fn m(s: &str) -> Monomial {
    s.parse().unwrap()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// All monomials over the given labels with total degree in `degrees`.
pub fn pool(degrees: std::ops::RangeInclusive<usize>, labels: &[Label]) -> Vec<Monomial> {
    degrees
        .flat_map(|d| enumerate_monomials(d, labels))
        .collect()
}

pub fn series_of(picks: &[(usize, i64, i64)], pool: &[Monomial], precision: usize) -> Series {
    Series::from_terms(
        picks
            .iter()
            .map(|&(i, n, d)| (pool[i % pool.len()].clone(), rat(n, d))),
        precision,
    )
}

/// proptest strategy: a polynomial with up to `max_terms` terms drawn from
/// `pool`, small rational coefficients.
pub fn arb_poly(pool: Vec<Monomial>, max_terms: usize, precision: usize) -> BoxedStrategy<Series> {
    prop::collection::vec((0..pool.len(), -4i64..=4, 1i64..=3), 0..=max_terms)
        .prop_map(move |picks| series_of(&picks, &pool, precision))
        .boxed()
}

/// Same as [`arb_poly`] for use with a seeded RNG.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    pool: &[Monomial],
    max_terms: usize,
    precision: usize,
) -> Series {
    let n = rng.gen_range(1..=max_terms);
    let picks: Vec<(usize, i64, i64)> = (0..n)
        .map(|_| {
            let mut num = rng.gen_range(-5i64..=5);
            if num == 0 {
                num = 1;
            }
            (rng.gen_range(0..pool.len()), num, rng.gen_range(1i64..=4))
        })
        .collect();
    series_of(&picks, pool, precision)
}

/// Replaces the leaves of `t` left to right by `picks`, re-reducing.
pub fn plug(t: &Monomial, picks: &mut dyn Iterator<Item = Monomial>) -> Monomial {
    match t.shape() {
        Shape::Unit => t.clone(),
        Shape::Leaf(_) => picks.next().expect("one pick per leaf"),
        Shape::Node(children) => {
            let parts: Vec<Monomial> = children.iter().map(|c| plug(c, picks)).collect();
            graft(&parts).unwrap()
        }
    }
}

/// Substitution by brute-force multilinear expansion: every leaf of every
/// monomial independently picks a term of `g` (x-leaf) or `h` (y-leaf).
/// Uses neither `product` nor `substitute`.
pub fn substitute_oracle(f: &Series, g: &Series, h: &Series) -> Series {
    let p = f.precision().min(g.precision()).min(h.precision());
    let mut acc: HashMap<Monomial, Rational> = HashMap::new();
    for (s, c) in f.terms() {
        if s.is_unit() {
            *acc.entry(s.clone()).or_insert_with(Rational::zero) += c;
            continue;
        }
        let options: Vec<Vec<(Monomial, Rational)>> = s
            .leaf_labels()
            .into_iter()
            .map(|l| {
                let src = if l == Label::X { g } else { h };
                src.terms().map(|(m, a)| (m.clone(), a.clone())).collect()
            })
            .collect();
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        let sizes: Vec<usize> = options.iter().map(Vec::len).collect();
        for choice in odometer(&sizes) {
            let deg: usize = choice
                .iter()
                .zip(&options)
                .map(|(&i, o)| o[i].0.deg_x())
                .sum();
            if deg > p {
                continue;
            }
            let coeff = choice
                .iter()
                .zip(&options)
                .fold(c.clone(), |a, (&i, o)| a * &o[i].1);
            let mut it = choice.iter().zip(&options).map(|(&i, o)| o[i].0.clone());
            let t = plug(s, &mut it);
            *acc.entry(t).or_insert_with(Rational::zero) += coeff;
        }
    }
    Series::from_terms(acc, p)
}

/// Every index vector `v` with `v[i] < sizes[i]`.
fn odometer(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// m-ary product computed from the coefficient formula: for every candidate
/// monomial S, sum coefficient products over `decompositions(S, m)`.
/// Candidates are all monomials over {x, y} up to `max_degree` leaves.
pub fn product_oracle(args: &[&Series], max_degree: usize) -> Series {
    let p = args.iter().map(|s| s.precision()).min().unwrap();
    let mut terms = Vec::new();
    for d in 0..=max_degree {
        for s in enumerate_monomials(d, &[Label::X, Label::Y]) {
            if s.deg_x() > p {
                continue;
            }
            let mut c = Rational::zero();
            for tuple in decompositions(&s, args.len()).unwrap() {
                let mut prod = int(1);
                for (f, t) in args.iter().zip(&tuple) {
                    prod *= f.coefficient(t).unwrap_or_else(|_| Rational::zero());
                    if prod.is_zero() {
                        break;
                    }
                }
                c += prod;
            }
            terms.push((s, c));
        }
    }
    Series::from_terms(terms, p)
}

/// Counts reduced planar trees with n leaves by walking every preorder
/// arity word (0 for a leaf, 2..=n for an internal vertex) that satisfies
/// the Łukasiewicz condition. Each tree corresponds to exactly one word.
pub fn count_trees_bruteforce(n: usize) -> u64 {
    // `open`: subtrees still to be written; each needs at least one leaf
    fn walk(open: usize, leaves: usize, n: usize) -> u64 {
        if open == 0 {
            return u64::from(leaves == 0);
        }
        if open > leaves {
            return 0;
        }
        let mut total = walk(open - 1, leaves - 1, n);
        for arity in 2..=n {
            total += walk(open - 1 + arity, leaves, n);
        }
        total
    }
    walk(1, n, n)
}

/// Little Schröder numbers from the three-term recurrence
/// `(n+1) s_{n+1} = 3(2n-1) s_n - (n-2) s_{n-1}`, s_1 = s_2 = 1.
pub fn schroeder(n_max: usize) -> Vec<u64> {
    let mut s: Vec<i128> = vec![0, 1, 1];
    for n in 2..n_max {
        let n1 = n as i128;
        let next = (3 * (2 * n1 - 1) * s[n] - (n1 - 2) * s[n - 1]) / (n1 + 1);
        s.push(next);
    }
    s[1..=n_max].iter().map(|&v| v as u64).collect()
}
