//! Signed counting matrices and exact matching counts.
//!
//! A bipartite planar graph is counted by `|det K|` for a Kasteleyn–Percus
//! matrix `K` (rows white, columns black); any planar graph is counted by the
//! `|Pf|` of a skew-symmetric matrix built from a Pfaffian orientation.
//! Nonplanar graphs fall back to the oracle's memoised subset recursion.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::graph::{self, Color, Embedding, PlanarGraph};
use crate::linalg::{self, RatMatrix, SOFT_LIMIT};

/// How the signs of a bipartite counting matrix were chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignRule {
    /// Square lattice: horizontal edges `+`, a vertical edge gets `(−1)^k`
    /// where `k` counts the vertices of its upper row strictly to its left.
    Wilson,
    /// Honeycomb (lozenge) regions: the plain adjacency matrix.
    HoneycombPlain,
    /// Signs read off a Pfaffian orientation of the embedded graph.
    GenericPlanar,
}

impl SignRule {
    pub fn name(self) -> &'static str {
        match self {
            SignRule::Wilson => "wilson",
            SignRule::HoneycombPlain => "honeycomb_plain",
            SignRule::GenericPlanar => "generic_planar",
        }
    }

    pub fn parse(s: &str) -> Result<SignRule> {
        match s {
            "wilson" => Ok(SignRule::Wilson),
            "honeycomb_plain" | "honeycomb" => Ok(SignRule::HoneycombPlain),
            "generic_planar" | "generic" => Ok(SignRule::GenericPlanar),
            _ => Err(Error::Parse(format!("unknown sign rule '{s}'"))),
        }
    }
}

/// Signed bipartite matrix with its row/column vertex maps.
#[derive(Clone, Debug)]
pub struct KasteleynSystem {
    pub matrix: RatMatrix,
    pub rule: SignRule,
    /// Vertex index of each row.
    pub rows: Vec<usize>,
    /// Vertex index of each column.
    pub cols: Vec<usize>,
    /// True when rows hold the black class (the graph had more white than
    /// black vertices and the matrix was transposed so rows ≤ columns).
    pub transposed: bool,
}

/// Skew-symmetric matrix over all vertices plus the orientation it encodes.
#[derive(Clone, Debug)]
pub struct SkewSystem {
    pub matrix: RatMatrix,
    /// `orientation[k]` is true when edge `k` points from `u` to `v`.
    pub orientation: Vec<bool>,
}

/// Options for the size guard.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub matrix: usize,
    pub oracle_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { matrix: SOFT_LIMIT, oracle_vertices: 128 }
    }
}

/// A Pfaffian orientation: every bounded face gets an odd number of edges
/// oriented clockwise. Built per connected component by orienting a
/// spanning tree arbitrarily and then fixing the remaining edges leaf-first
/// along the dual spanning tree rooted at the outer face.
pub fn pfaffian_orientation(g: &PlanarGraph) -> Result<Vec<bool>> {
    if !g.planar {
        return domain("Pfaffian orientation needs a planar embedding");
    }
    graph::validate_embedding(g)?;
    let faces = graph::faces_unchecked(g);
    let m = g.edges.len();
    let mut orient: Vec<Option<bool>> = vec![None; m];

    // Spanning forest by BFS; tree edges point away from the root.
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertices.len()];
    for s in 0..g.vertices.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &(y, k) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    orient[k] = Some(g.edges[k].u == x);
                    q.push_back(y);
                }
            }
        }
    }

    // Faces incident to each non-tree edge (always two distinct faces).
    let mut edge_faces: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (f, face) in faces.iter().enumerate() {
        for &k in &face.edges {
            if orient[k].is_none() {
                edge_faces[k].push(f);
            }
        }
    }
    let mut open: Vec<usize> = faces.iter().map(|f| f.edges.iter().filter(|&&k| orient[k].is_none()).count()).collect();
    let mut queue: VecDeque<usize> = (0..faces.len()).filter(|&f| !faces[f].outer && open[f] == 1).collect();
    while let Some(f) = queue.pop_front() {
        if open[f] != 1 {
            continue;
        }
        let face = &faces[f];
        let mut clockwise = 0usize;
        let mut free = None;
        for (pos, &k) in face.edges.iter().enumerate() {
            match orient[k] {
                Some(o) => {
                    if o != face.forward[pos] {
                        clockwise += 1;
                    }
                }
                None => free = Some(pos),
            }
        }
        let pos = free.expect("face with one open edge");
        let k = face.edges[pos];
        // Clockwise means against the counterclockwise traversal.
        let want_clockwise = clockwise.is_multiple_of(2);
        orient[k] = Some(face.forward[pos] != want_clockwise);
        for &h in &edge_faces[k] {
            open[h] -= 1;
            if h != f && !faces[h].outer && open[h] == 1 {
                queue.push_back(h);
            }
        }
    }
    orient.into_iter().map(|o| o.ok_or_else(|| Error::Domain("orientation left an edge unresolved".into()))).collect()
}

/// Checks the odd-clockwise condition on every bounded face.
pub fn is_pfaffian_orientation(g: &PlanarGraph, orientation: &[bool]) -> Result<bool> {
    let faces = graph::planar_faces(g)?;
    Ok(faces.iter().filter(|f| !f.outer).all(|f| {
        let cw = f.edges.iter().zip(&f.forward).filter(|(&k, &fw)| orientation[k] != fw).count();
        cw % 2 == 1
    }))
}

/// Skew-symmetric matrix of a Pfaffian orientation.
pub fn build_pfaffian_orientation(g: &PlanarGraph) -> Result<SkewSystem> {
    let orientation = pfaffian_orientation(g)?;
    let n = g.vertices.len();
    let mut s = RatMatrix::zeros(n, n);
    for (e, &o) in g.edges.iter().zip(&orientation) {
        let (a, b) = if o { (e.u, e.v) } else { (e.v, e.u) };
        s[(a, b)] = e.weight.clone();
        s[(b, a)] = -e.weight.clone();
    }
    Ok(SkewSystem { matrix: s, orientation })
}

fn wilson_signs(g: &PlanarGraph) -> Result<Vec<i32>> {
    if g.embedding != Embedding::Square {
        return domain("wilson rule requires a square-lattice graph");
    }
    let integral = |v: &graph::Vertex| v.pos.0.is_integer() && v.pos.1.is_integer();
    if !g.vertices.iter().all(integral) {
        return domain("wilson rule requires integer lattice positions");
    }
    let mut signs = Vec::with_capacity(g.edges.len());
    for e in &g.edges {
        let (p, q) = (&g.vertices[e.u].pos, &g.vertices[e.v].pos);
        let dx = (p.0 - q.0).abs();
        let dy = (p.1 - q.1).abs();
        if dy.is_zero() && dx.is_one() {
            signs.push(1);
        } else if dx.is_zero() && dy.is_one() {
            let upper_y = p.1.max(q.1);
            let x = p.0;
            let k = g.vertices.iter().filter(|v| v.pos.1 == upper_y && v.pos.0 < x).count();
            signs.push(if k % 2 == 0 { 1 } else { -1 });
        } else {
            return domain("wilson rule requires unit horizontal/vertical edges");
        }
    }
    Ok(signs)
}

/// Builds the signed bipartite matrix. The graph must carry a proper
/// coloring (majority edges are not allowed here).
pub fn build_bipartite(g: &PlanarGraph, rule: SignRule) -> Result<KasteleynSystem> {
    if !g.is_bipartite() {
        return domain("graph is not properly 2-colored");
    }
    let signs: Vec<i32> = match rule {
        SignRule::Wilson => wilson_signs(g)?,
        SignRule::HoneycombPlain => vec![1; g.edges.len()],
        SignRule::GenericPlanar => {
            let o = pfaffian_orientation(g)?;
            g.edges
                .iter()
                .zip(o)
                .map(|(e, o)| {
                    let from_white = (g.vertices[e.u].color == Color::White) == o;
                    if from_white {
                        1
                    } else {
                        -1
                    }
                })
                .collect()
        }
    };
    let white: Vec<usize> = (0..g.vertices.len()).filter(|&x| g.vertices[x].color == Color::White).collect();
    let black: Vec<usize> = (0..g.vertices.len()).filter(|&x| g.vertices[x].color == Color::Black).collect();
    let transposed = white.len() > black.len();
    let (rows, cols) = if transposed { (black, white) } else { (white, black) };
    let mut rpos = vec![usize::MAX; g.vertices.len()];
    let mut cpos = vec![usize::MAX; g.vertices.len()];
    for (i, &x) in rows.iter().enumerate() {
        rpos[x] = i;
    }
    for (j, &x) in cols.iter().enumerate() {
        cpos[x] = j;
    }
    let mut m = RatMatrix::zeros(rows.len(), cols.len());
    for (e, s) in g.edges.iter().zip(signs) {
        let (r, c) = if rpos[e.u] != usize::MAX { (rpos[e.u], cpos[e.v]) } else { (rpos[e.v], cpos[e.u]) };
        m[(r, c)] = if s > 0 { e.weight.clone() } else { -e.weight.clone() };
    }
    Ok(KasteleynSystem { matrix: m, rule, rows, cols, transposed })
}

/// The sign rule a family is drawn for: Wilson on integer square lattices,
/// the plain matrix on lozenge regions, otherwise a Pfaffian orientation.
pub fn default_rule(g: &PlanarGraph) -> SignRule {
    if wilson_signs(g).is_ok() {
        SignRule::Wilson
    } else {
        SignRule::GenericPlanar
    }
}

/// Weighted matching sum (the number of perfect matchings for unit weights).
pub fn count_matchings(g: &PlanarGraph) -> Result<BigRational> {
    count_matchings_with(g, Limits::default())
}

/// Like [`count_matchings`] with explicit size limits.
pub fn count_matchings_with(g: &PlanarGraph, limits: Limits) -> Result<BigRational> {
    let mut total = BigRational::one();
    for comp in g.components() {
        if comp.len() % 2 == 1 {
            return Ok(BigRational::zero());
        }
        if comp.len() == 1 {
            continue;
        }
        let sub = g.induced(&comp);
        let c = count_connected(&sub, limits)?;
        if c.is_zero() {
            return Ok(c);
        }
        total *= c;
    }
    Ok(total)
}

fn count_connected(g: &PlanarGraph, limits: Limits) -> Result<BigRational> {
    if !g.planar {
        if g.vertices.len() > limits.oracle_vertices {
            return Err(Error::Limit(format!(
                "nonplanar graph with {} vertices exceeds the oracle limit {}",
                g.vertices.len(),
                limits.oracle_vertices
            )));
        }
        return crate::oracle::subset_count(g);
    }
    let g = if g.is_colored() { g.clone() } else { g.clone().with_coloring() };
    if g.is_bipartite() {
        let (w, b) = g.color_counts();
        if w != b {
            return Ok(BigRational::zero());
        }
        if w > limits.matrix {
            return Err(Error::Limit(format!("{w}x{w} matrix exceeds the soft limit {}", limits.matrix)));
        }
        let k = build_bipartite(&g, SignRule::GenericPlanar)?;
        return Ok(linalg::det(&k.matrix)?.abs());
    }
    if g.vertices.len() > 2 * limits.matrix {
        return Err(Error::Limit(format!("{} vertices exceed the soft limit", g.vertices.len())));
    }
    let s = build_pfaffian_orientation(&g)?;
    Ok(linalg::pfaffian(&s.matrix)?.abs())
}

/// Integer matching count of a unit-weight graph.
pub fn count_int(g: &PlanarGraph) -> Result<BigInt> {
    let c = count_matchings(g)?;
    if !c.is_integer() {
        return domain("weighted graph has a non-integer matching sum");
    }
    Ok(c.to_integer())
}
