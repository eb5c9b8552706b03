//! Brute-force reference engines.
//!
//! Everything here is deliberately independent of the determinant machinery
//! so it can serve as ground truth: backtracking enumeration of perfect
//! matchings, a memoised subset recursion for small nonplanar graphs (the
//! hypercube), multivariate matching polynomials, and the dimer-tableaux
//! enumerator whose weight sum equals that of domino coverings of a
//! rectangle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::PlanarGraph;
use crate::region;

/// Default soft limit on the number of vertices for enumeration.
pub const ORACLE_LIMIT: usize = 36;

/// Calls `visit` with the edge indices of every perfect matching, in a
/// deterministic order. Returns the number of matchings.
///
/// Backtracking always branches on an unmatched vertex with the fewest
/// available partners and prunes as soon as some vertex has none.
pub fn for_each_matching(g: &PlanarGraph, mut visit: impl FnMut(&[usize])) -> BigInt {
    let n = g.vertices.len();
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let adj = g.adjacency();
    let mut matched = vec![false; n];
    let mut chosen = Vec::with_capacity(n / 2);
    let mut count = BigInt::zero();
    fn rec(
        adj: &[Vec<(usize, usize)>],
        matched: &mut [bool],
        chosen: &mut Vec<usize>,
        count: &mut BigInt,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let mut best: Option<(usize, usize)> = None;
        for x in 0..matched.len() {
            if matched[x] {
                continue;
            }
            let d = adj[x].iter().filter(|(y, _)| !matched[*y]).count();
            if d == 0 {
                return;
            }
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((x, d));
                if d == 1 {
                    break;
                }
            }
        }
        let Some((x, _)) = best else {
            *count += 1;
            visit(chosen);
            return;
        };
        matched[x] = true;
        for &(y, k) in &adj[x] {
            if matched[y] {
                continue;
            }
            matched[y] = true;
            chosen.push(k);
            rec(adj, matched, chosen, count, visit);
            chosen.pop();
            matched[y] = false;
        }
        matched[x] = false;
    }
    rec(&adj, &mut matched, &mut chosen, &mut count, &mut visit);
    count
}

fn check_size(g: &PlanarGraph, limit: usize) -> Result<()> {
    if g.vertices.len() > limit {
        return Err(Error::Limit(format!(
            "enumeration of a {}-vertex graph exceeds the oracle limit {limit}",
            g.vertices.len()
        )));
    }
    Ok(())
}

/// Number of perfect matchings by exhaustive enumeration.
pub fn enumerate_matchings(g: &PlanarGraph) -> Result<BigInt> {
    enumerate_matchings_with_limit(g, ORACLE_LIMIT)
}

pub fn enumerate_matchings_with_limit(g: &PlanarGraph, limit: usize) -> Result<BigInt> {
    check_size(g, limit)?;
    Ok(for_each_matching(g, |_| {}))
}

/// Weighted matching sum by exhaustive enumeration.
pub fn enumerate_weighted(g: &PlanarGraph) -> Result<BigRational> {
    check_size(g, ORACLE_LIMIT)?;
    let mut total = BigRational::zero();
    for_each_matching(g, |m| {
        total += m.iter().map(|&k| g.edges[k].weight.clone()).fold(BigRational::one(), |a, b| a * b);
    });
    Ok(total)
}

/// All perfect matchings as sorted edge-index lists.
pub fn all_matchings(g: &PlanarGraph) -> Result<Vec<Vec<usize>>> {
    check_size(g, ORACLE_LIMIT)?;
    let mut out = Vec::new();
    for_each_matching(g, |m| {
        let mut m = m.to_vec();
        m.sort_unstable();
        out.push(m);
    });
    out.sort();
    Ok(out)
}

/// Weighted matching sum by memoised recursion over the set of unmatched
/// vertices (always matching the lowest one). Works for any graph with at
/// most 128 vertices; efficient when the vertex order has small bandwidth.
pub fn subset_count(g: &PlanarGraph) -> Result<BigRational> {
    let n = g.vertices.len();
    if n > 128 {
        return Err(Error::Limit(format!("subset recursion supports at most 128 vertices, got {n}")));
    }
    if n % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let mut nbrs: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); n];
    for e in &g.edges {
        nbrs[e.u].push((e.v, e.weight.clone()));
        nbrs[e.v].push((e.u, e.weight.clone()));
    }
    fn rec(mask: u128, nbrs: &[Vec<(usize, BigRational)>], memo: &mut HashMap<u128, BigRational>) -> BigRational {
        if mask == 0 {
            return BigRational::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let x = mask.trailing_zeros() as usize;
        let mut total = BigRational::zero();
        for (y, w) in &nbrs[x] {
            if mask >> y & 1 == 1 {
                let sub = rec(mask & !(1u128 << x) & !(1u128 << y), nbrs, memo);
                if !sub.is_zero() {
                    total += w * sub;
                }
            }
        }
        memo.insert(mask, total.clone());
        total
    }
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    Ok(rec(full, &nbrs, &mut HashMap::new()))
}

/// Number of perfect matchings of the n-dimensional cube.
pub fn cube_matchings(n: usize) -> Result<BigInt> {
    let g = region::hypercube(n)?;
    Ok(subset_count(&g)?.to_integer())
}

/// An indeterminate such as `x3` or `y1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub name: char,
    pub index: u32,
}

impl Var {
    pub fn x(index: u32) -> Var {
        Var { name: 'x', index }
    }

    pub fn y(index: u32) -> Var {
        Var { name: 'y', index }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, self.index)
    }
}

/// A monomial as a map from variable to (positive) exponent.
pub type Monomial = BTreeMap<Var, u32>;

pub fn monomial(vars: &[(Var, u32)]) -> Monomial {
    vars.iter().filter(|(_, e)| *e > 0).copied().collect()
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = a.clone();
    for (v, e) in b {
        *out.entry(*v).or_insert(0) += e;
    }
    out
}

/// Integer-coefficient polynomial in named indeterminates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::from_monomial(Monomial::new())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::from_monomial(monomial(&[(v, 1)]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(mono_mul(a, b), ca * cb);
            }
        }
        out
    }

    /// Sum of the coefficients (every indeterminate set to 1).
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes an integer for one indeterminate.
    pub fn specialize(&self, v: Var, value: i64) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut m = m.clone();
            let e = m.remove(&v).unwrap_or(0);
            out.add_term(m, c * BigInt::from(value).pow(e));
        }
        out
    }

    /// Halves every exponent; `None` if some exponent is odd.
    pub fn halve_exponents(&self) -> Option<Self> {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut h = Monomial::new();
            for (v, e) in m {
                if e % 2 == 1 {
                    return None;
                }
                h.insert(*v, e / 2);
            }
            out.add_term(h, c.clone());
        }
        Some(out)
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    m.iter().map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect::<Vec<_>>().join("*")
}

impl fmt::Display for MultiPoly {
    /// Canonical text: terms in ascending monomial order, e.g. `x1 + 2*x1*y1^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let ms = fmt_monomial(m);
                if ms.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    ms
                } else {
                    format!("{c}*{ms}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sum over perfect matchings of the product of the given edge monomials.
pub fn weighted_matching_poly(g: &PlanarGraph, weights: &[Monomial]) -> Result<MultiPoly> {
    if weights.len() != g.edges.len() {
        return Err(Error::Parameter(format!("{} weights for {} edges", weights.len(), g.edges.len())));
    }
    check_size(g, ORACLE_LIMIT.max(40))?;
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for_each_matching(g, |m| {
        let mono = m.iter().fold(Monomial::new(), |a, &k| mono_mul(&a, &weights[k]));
        *acc.entry(mono).or_insert_with(BigInt::zero) += 1;
    });
    let mut p = MultiPoly::zero();
    for (m, c) in acc {
        p.add_term(m, c);
    }
    Ok(p)
}

fn check_even(m: usize, n: usize) -> Result<()> {
    if m % 2 == 1 || n % 2 == 1 || m == 0 || n == 0 {
        return Err(Error::Parameter(format!("dimension {m}x{n} must be positive and even")));
    }
    Ok(())
}

/// Weighted domino coverings of the m×n rectangle: a horizontal domino from
/// column j to j+1 weighs √x_j and a vertical one from row i to i+1 weighs
/// √y_i. Exponents are doubled during enumeration and halved at the end.
pub fn dimer_covering_poly(m: usize, n: usize) -> Result<MultiPoly> {
    check_even(m, n)?;
    if m * n > 40 {
        return Err(Error::Limit(format!("{m}x{n} rectangle exceeds 40 cells")));
    }
    let g = region::rectangle(m, n)?;
    let weights: Vec<Monomial> = g
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (e.u.min(e.v), e.u.max(e.v));
            let (ra, ca) = (a / n, a % n);
            let rb = b / n;
            if ra == rb {
                monomial(&[(Var::x(ca as u32 + 1), 1)])
            } else {
                monomial(&[(Var::y(ra as u32 + 1), 1)])
            }
        })
        .collect();
    let doubled = weighted_matching_poly(&g, &weights)?;
    doubled.halve_exponents().ok_or_else(|| Error::Domain("covering weight with a fractional exponent".into()))
}

/// A dimer tableau: a Young-diagram split of the (m/2)×(n/2) rectangle with
/// fillings. `split[r]` is the number of upper-left cells in row `r` (rows
/// from the top, weakly decreasing); `entries` is row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimerTableau {
    pub split: Vec<usize>,
    pub entries: Vec<Vec<u32>>,
}

impl DimerTableau {
    pub fn weight(&self) -> Monomial {
        let mut m = Monomial::new();
        for (r, row) in self.entries.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                let v = if c < self.split[r] { Var::x(e) } else { Var::y(e) };
                *m.entry(v).or_insert(0) += 1;
            }
        }
        m
    }
}

/// Calls `visit` on every (m/2)×(n/2) dimer tableau.
///
/// Upper-left entries come from 1..n−1 with `i < j−1` for horizontal
/// neighbours (i left of j) and `i ≤ j+1` for vertical neighbours (i above
/// j); lower-right entries come from 1..m−1 with `i ≤ j+1` horizontally and
/// `i < j−1` vertically. Cells on opposite sides of the path are
/// unconstrained.
pub fn for_each_tableau(m: usize, n: usize, mut visit: impl FnMut(&DimerTableau)) -> Result<()> {
    check_even(m, n)?;
    let (rows, cols) = (m / 2, n / 2);
    if rows * cols > 12 {
        return Err(Error::Limit(format!("{rows}x{cols} tableaux exceed 12 cells")));
    }
    // Enumerate weakly decreasing split vectors.
    fn splits(rows: usize, cols: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == rows {
            out.push(prefix.clone());
            return;
        }
        let max = prefix.last().copied().unwrap_or(cols);
        for s in 0..=max {
            prefix.push(s);
            splits(rows, cols, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    splits(rows, cols, &mut Vec::new(), &mut all);
    for split in all {
        let mut t = DimerTableau { split, entries: vec![vec![0; cols]; rows] };
        fill(&mut t, 0, rows, cols, (n - 1) as u32, (m - 1) as u32, &mut visit);
    }
    Ok(())
}

fn fill(
    t: &mut DimerTableau,
    cell: usize,
    rows: usize,
    cols: usize,
    xmax: u32,
    ymax: u32,
    visit: &mut dyn FnMut(&DimerTableau),
) {
    if cell == rows * cols {
        visit(t);
        return;
    }
    let (r, c) = (cell / cols, cell % cols);
    let upper = c < t.split[r];
    let max = if upper { xmax } else { ymax };
    for v in 1..=max {
        if c > 0 && (c - 1 < t.split[r]) == upper {
            let i = t.entries[r][c - 1];
            let ok = if upper { i + 1 < v } else { i <= v + 1 };
            if !ok {
                continue;
            }
        }
        if r > 0 && (c < t.split[r - 1]) == upper {
            let i = t.entries[r - 1][c];
            let ok = if upper { i <= v + 1 } else { i + 1 < v };
            if !ok {
                continue;
            }
        }
        t.entries[r][c] = v;
        fill(t, cell + 1, rows, cols, xmax, ymax, visit);
    }
    t.entries[r][c] = 0;
}

/// Sum of the weights of the (m/2)×(n/2) dimer tableaux.
pub fn dimer_tableaux_poly(m: usize, n: usize) -> Result<MultiPoly> {
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for_each_tableau(m, n, |t| *acc.entry(t.weight()).or_insert_with(BigInt::zero) += 1)?;
    let mut p = MultiPoly::zero();
    for (mono, c) in acc {
        p.add_term(mono, c);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{int_weight, pt, EdgeTag, Embedding};

    fn cycle4(weights: [i64; 4]) -> PlanarGraph {
        let mut g = PlanarGraph::new(Embedding::Square);
        for p in [pt(0, 0, 1), pt(1, 0, 1), pt(1, 1, 1), pt(0, 1, 1)] {
            g.add_vertex(p);
        }
        for (k, (a, b)) in [(0, 1), (1, 2), (2, 3), (3, 0)].into_iter().enumerate() {
            g.add_edge(a, b, int_weight(weights[k]), EdgeTag::Lattice);
        }
        g
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_matchings(&cycle4([1; 4])).unwrap(), 2.into());
        assert_eq!(enumerate_matchings(&region::rectangle(2, 3).unwrap()).unwrap(), 3.into());
        assert_eq!(enumerate_weighted(&cycle4([2, 3, 5, 7])).unwrap(), int_weight(2 * 5 + 3 * 7));
        assert_eq!(subset_count(&cycle4([2, 3, 5, 7])).unwrap(), int_weight(31));
    }

    #[test]
    fn cycle_polynomial() {
        let g = cycle4([1; 4]);
        let w: Vec<Monomial> = ["p", "q", "r", "s"]
            .iter()
            .enumerate()
            .map(|(k, _)| monomial(&[(Var { name: 'w', index: k as u32 }, 1)]))
            .collect();
        let p = weighted_matching_poly(&g, &w).unwrap();
        assert_eq!(p.to_string(), "w0*w2 + w1*w3");
    }

    #[test]
    fn small_cubes() {
        assert_eq!(cube_matchings(1).unwrap(), 1.into());
        assert_eq!(cube_matchings(2).unwrap(), 2.into());
        assert_eq!(cube_matchings(3).unwrap(), 9.into());
        assert_eq!(cube_matchings(4).unwrap(), 272.into());
    }

    #[test]
    fn two_by_two_polys() {
        let c = dimer_covering_poly(2, 2).unwrap();
        let t = dimer_tableaux_poly(2, 2).unwrap();
        assert_eq!(c.to_string(), "x1 + y1");
        assert_eq!(c, t);
        assert_eq!(dimer_covering_poly(2, 4).unwrap().eval_ones(), 5.into());
    }

    #[test]
    fn specialization() {
        let p = dimer_covering_poly(2, 4).unwrap();
        let q = p.specialize(Var::y(1), 0);
        // Only the all-horizontal covering survives.
        assert_eq!(q.to_string(), "x1*x3");
    }
}
