//! Embedded weighted graphs: the common substrate for every region family.
//!
//! Vertices carry exact rational drawing coordinates. Square-lattice regions
//! use integer coordinates; triangular-lattice regions use the affine
//! coordinates `x = i + j/2, y = j` of the lattice point `i·e₁ + j·e₂`, so
//! that the true picture is obtained by scaling `y` by √3/2. Orientation and
//! crossing predicates are invariant under that scaling, which keeps all
//! geometry rational.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Point = (Rational64, Rational64);

/// Builds a point from integer numerators over a common denominator.
pub fn pt(x: i64, y: i64, den: i64) -> Point {
    (Rational64::new(x, den), Rational64::new(y, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Black,
    Uncolored,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
            Color::Uncolored => Color::Uncolored,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeTag {
    Lattice,
    Majority,
    Inserted,
}

/// How the stored coordinates relate to the intended picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Embedding {
    /// Coordinates are the picture.
    Square,
    /// Affine triangular-lattice coordinates; draw with `y·√3/2`.
    Triangular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub pos: Point,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Endpoint indices into `PlanarGraph::vertices` (not ids).
    pub u: usize,
    pub v: usize,
    pub weight: BigRational,
    pub tag: EdgeTag,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// An embedded weighted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Set when the straight-line drawing is meant to be crossing-free.
    pub planar: bool,
    pub embedding: Embedding,
}

/// A face of the embedding as a cyclic list of vertex indices, traversed with
/// the face on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    /// Edge indices in traversal order; `forward[k]` tells whether the
    /// traversal runs from `edges[k].u` to `edges[k].v`.
    pub edges: Vec<usize>,
    pub forward: Vec<bool>,
    pub outer: bool,
}

impl Default for PlanarGraph {
    fn default() -> Self {
        PlanarGraph::new(Embedding::Square)
    }
}

impl PlanarGraph {
    pub fn new(embedding: Embedding) -> Self {
        PlanarGraph { vertices: Vec::new(), edges: Vec::new(), planar: true, embedding }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Adds a vertex with the next free id and returns its index.
    pub fn add_vertex(&mut self, pos: Point) -> usize {
        let id = self.vertices.iter().map(|v| v.id + 1).max().unwrap_or(0);
        self.vertices.push(Vertex { id, pos, color: Color::Uncolored });
        self.vertices.len() - 1
    }

    /// Adds an edge between vertex indices, merging with an existing parallel
    /// edge by adding weights (which preserves weighted matching sums).
    /// Returns the index of the (possibly merged) edge.
    pub fn add_edge(&mut self, u: usize, v: usize, weight: BigRational, tag: EdgeTag) -> usize {
        assert!(u != v, "loops are not allowed");
        assert!(!weight.is_zero(), "edge weights must be nonzero");
        if let Some(k) = self.find_edge(u, v) {
            let w = &self.edges[k].weight + &weight;
            if w.is_zero() {
                self.edges.remove(k);
                return usize::MAX;
            }
            self.edges[k].weight = w;
            return k;
        }
        self.edges.push(Edge { u, v, weight, tag });
        self.edges.len() - 1
    }

    pub fn add_unit_edge(&mut self, u: usize, v: usize) -> usize {
        self.add_edge(u, v, BigRational::one(), EdgeTag::Lattice)
    }

    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.iter().position(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
    }

    pub fn index_of(&self, id: usize) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Adjacency lists of (neighbor index, edge index).
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, k));
            adj[e.v].push((e.u, k));
        }
        adj
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|e| e.u == x || e.v == x).count()
    }

    pub fn is_weighted(&self) -> bool {
        self.edges.iter().any(|e| !e.weight.is_one())
    }

    /// True when every vertex carries a white/black color.
    pub fn is_colored(&self) -> bool {
        !self.vertices.is_empty() && self.vertices.iter().all(|v| v.color != Color::Uncolored)
    }

    /// Color counts (white, black).
    pub fn color_counts(&self) -> (usize, usize) {
        let w = self.vertices.iter().filter(|v| v.color == Color::White).count();
        let b = self.vertices.iter().filter(|v| v.color == Color::Black).count();
        (w, b)
    }

    /// Assigns the canonical coloring if the non-majority edges admit one.
    pub fn with_coloring(mut self) -> Self {
        match bipartite_coloring(&self) {
            Some(c) => {
                for (v, col) in self.vertices.iter_mut().zip(c) {
                    v.color = col;
                }
            }
            None => {
                for v in &mut self.vertices {
                    v.color = Color::Uncolored;
                }
            }
        }
        self
    }

    /// True when the graph (all edges included) is properly 2-colored.
    pub fn is_bipartite(&self) -> bool {
        self.is_colored() && self.edges.iter().all(|e| self.vertices[e.u].color != self.vertices[e.v].color)
    }

    /// Connected components as sorted lists of vertex indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for s in 0..self.vertices.len() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &(y, _) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        q.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on the given vertex indices (kept in index order).
    pub fn induced(&self, keep: &[usize]) -> PlanarGraph {
        let mut map = HashMap::new();
        let mut g = PlanarGraph::new(self.embedding);
        g.planar = self.planar;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &x in &keep {
            map.insert(x, g.vertices.len());
            g.vertices.push(self.vertices[x].clone());
        }
        for e in &self.edges {
            if let (Some(&a), Some(&b)) = (map.get(&e.u), map.get(&e.v)) {
                g.edges.push(Edge { u: a, v: b, weight: e.weight.clone(), tag: e.tag });
            }
        }
        g
    }

    /// Sum of edge weights as a simple fingerprint used in tests.
    pub fn total_weight(&self) -> BigRational {
        self.edges.iter().map(|e| e.weight.clone()).sum()
    }

    /// Vertex index at the given position, if any.
    pub fn vertex_at(&self, p: &Point) -> Option<usize> {
        self.vertices.iter().position(|v| &v.pos == p)
    }
}

/// Proper 2-coloring ignoring `majority` edges, canonical in that the
/// lowest-id vertex of each component is white. `None` on an odd cycle.
pub fn bipartite_coloring(g: &PlanarGraph) -> Option<Vec<Color>> {
    let n = g.vertices.len();
    let mut adj = vec![Vec::new(); n];
    for e in &g.edges {
        if e.tag != EdgeTag::Majority {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    let mut color = vec![Color::Uncolored; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| g.vertices[x].id);
    for s in order {
        if color[s] != Color::Uncolored {
            continue;
        }
        color[s] = Color::White;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if color[y] == Color::Uncolored {
                    color[y] = color[x].opposite();
                    q.push_back(y);
                } else if color[y] == color[x] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Removes the vertices with the given ids; the result is the induced
/// subgraph on the remaining vertices with ids, positions, colors and
/// weights preserved.
pub fn delete_vertices(g: &PlanarGraph, ids: &BTreeSet<usize>) -> Result<PlanarGraph> {
    for id in ids {
        if g.index_of(*id).is_none() {
            return Err(Error::Parameter(format!("unknown vertex id {id}")));
        }
    }
    let keep: Vec<usize> = (0..g.vertices.len()).filter(|&x| !ids.contains(&g.vertices[x].id)).collect();
    Ok(g.induced(&keep))
}

fn sub(a: &Point, b: &Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: &Point, b: &Point) -> Rational64 {
    a.0 * b.1 - a.1 * b.0
}

/// Orientation of the triple (a, b, c): +1 counterclockwise, -1 clockwise.
fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = cross(&sub(b, a), &sub(c, a));
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    a.0.min(b.0) <= p.0 && p.0 <= a.0.max(b.0) && a.1.min(b.1) <= p.1 && p.1 <= a.1.max(b.1)
}

/// Whether two segments meet anywhere other than a shared endpoint.
fn segments_conflict(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let shared = [a, b].iter().filter(|p| **p == c || **p == d).count();
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if shared > 0 {
        // Adjacent edges conflict only if they overlap along a line.
        if o1 == 0 && o2 == 0 {
            let (s, other_ab, other_cd) = if a == c {
                (a, b, d)
            } else if a == d {
                (a, b, c)
            } else if b == c {
                (b, a, d)
            } else {
                (b, a, c)
            };
            let u = sub(other_ab, s);
            let v = sub(other_cd, s);
            return (u.0 * v.0 + u.1 * v.1).is_positive();
        }
        return false;
    }
    if o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// Exact crossing check over all edge pairs; reports the first crossing.
pub fn validate_embedding(g: &PlanarGraph) -> Result<()> {
    let boxes: Vec<(Rational64, Rational64, Rational64, Rational64)> = g
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (&g.vertices[e.u].pos, &g.vertices[e.v].pos);
            (a.0.min(b.0), a.0.max(b.0), a.1.min(b.1), a.1.max(b.1))
        })
        .collect();
    let mut order: Vec<usize> = (0..g.edges.len()).collect();
    order.sort_by(|&x, &y| boxes[x].0.cmp(&boxes[y].0));
    for (pi, &i) in order.iter().enumerate() {
        for &j in &order[pi + 1..] {
            if boxes[j].0 > boxes[i].1 {
                break;
            }
            if boxes[j].2 > boxes[i].3 || boxes[i].2 > boxes[j].3 {
                continue;
            }
            let (ei, ej) = (&g.edges[i], &g.edges[j]);
            let p = |k: usize| &g.vertices[k].pos;
            if segments_conflict(p(ei.u), p(ei.v), p(ej.u), p(ej.v)) {
                return Err(Error::Embedding(i.min(j), i.max(j)));
            }
        }
    }
    Ok(())
}

/// Compares directions by angle in [0, 2π) measured from the positive x axis.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| -> u8 {
        if p.1.is_positive() || (p.1.is_zero() && p.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Neighbors of each vertex as (neighbor, edge) sorted counterclockwise.
pub fn rotation_system(g: &PlanarGraph) -> Vec<Vec<(usize, usize)>> {
    let mut adj = g.adjacency();
    for (x, list) in adj.iter_mut().enumerate() {
        let px = g.vertices[x].pos;
        list.sort_by(|a, b| angle_cmp(&sub(&g.vertices[a.0].pos, &px), &sub(&g.vertices[b.0].pos, &px)));
    }
    adj
}

fn twice_area(g: &PlanarGraph, cycle: &[usize]) -> Rational64 {
    let n = cycle.len();
    (0..n).map(|k| cross(&g.vertices[cycle[k]].pos, &g.vertices[cycle[(k + 1) % n]].pos)).sum()
}

/// Faces of the straight-line embedding, one outer face per connected
/// component (isolated vertices contribute none).
///
/// Fails with an embedding error if edges cross, since faces would then be
/// meaningless.
pub fn planar_faces(g: &PlanarGraph) -> Result<Vec<Face>> {
    validate_embedding(g)?;
    Ok(faces_unchecked(g))
}

/// Face tracing without the crossing check (caller guarantees planarity).
pub fn faces_unchecked(g: &PlanarGraph) -> Vec<Face> {
    let rot = rotation_system(g);
    // position of each (vertex, neighbor) in the rotation
    let mut pos_in: HashMap<(usize, usize), usize> = HashMap::new();
    for (x, list) in rot.iter().enumerate() {
        for (k, &(y, _)) in list.iter().enumerate() {
            pos_in.insert((x, y), k);
        }
    }
    let mut used: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut faces = Vec::new();
    let comp_of = {
        let mut c = vec![0usize; g.vertices.len()];
        for (k, comp) in g.components().iter().enumerate() {
            for &x in comp {
                c[x] = k;
            }
        }
        c
    };
    let mut comp_faces: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in &g.edges {
        for (s, t) in [(e.u, e.v), (e.v, e.u)] {
            if used.contains_key(&(s, t)) {
                continue;
            }
            let mut verts = Vec::new();
            let mut edges = Vec::new();
            let mut forward = Vec::new();
            let (mut a, mut b) = (s, t);
            loop {
                used.insert((a, b), true);
                verts.push(a);
                let k = pos_in[&(a, b)];
                let ek = rot[a][k].1;
                edges.push(ek);
                forward.push(g.edges[ek].u == a);
                // next: at b, predecessor of a in ccw order
                let list = &rot[b];
                let ia = pos_in[&(b, a)];
                let next = list[(ia + list.len() - 1) % list.len()].0;
                a = b;
                b = next;
                if a == s && b == t {
                    break;
                }
            }
            comp_faces.entry(comp_of[s]).or_default().push(faces.len());
            faces.push(Face { vertices: verts, edges, forward, outer: false });
        }
    }
    for list in comp_faces.values() {
        let outer = list
            .iter()
            .copied()
            .min_by(|&x, &y| twice_area(g, &faces[x].vertices).cmp(&twice_area(g, &faces[y].vertices)))
            .expect("component with edges has a face");
        faces[outer].outer = true;
    }
    faces
}

/// Integer weight helper.
pub fn int_weight(w: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn grid(rows: i64, cols: i64) -> PlanarGraph {
        let mut g = PlanarGraph::new(Embedding::Square);
        for r in 0..rows {
            for c in 0..cols {
                g.add_vertex(pt(c, -r, 1));
            }
        }
        for r in 0..rows {
            for c in 0..cols {
                let x = (r * cols + c) as usize;
                if c + 1 < cols {
                    g.add_unit_edge(x, x + 1);
                }
                if r + 1 < rows {
                    g.add_unit_edge(x, x + cols as usize);
                }
            }
        }
        g.with_coloring()
    }

    #[test]
    fn coloring_of_square_and_triangle() {
        let g = grid(2, 2);
        assert_eq!(g.color_counts(), (2, 2));
        let mut t = PlanarGraph::new(Embedding::Triangular);
        for p in [pt(0, 0, 1), pt(1, 0, 1), pt(1, 2, 2)] {
            t.add_vertex(p);
        }
        t.add_unit_edge(0, 1);
        t.add_unit_edge(1, 2);
        t.add_unit_edge(0, 2);
        assert!(bipartite_coloring(&t).is_none());
    }

    #[test]
    fn faces_satisfy_euler() {
        for (r, c, f) in [(2, 2, 2), (2, 3, 3), (3, 3, 5)] {
            let g = grid(r, c);
            let faces = planar_faces(&g).unwrap();
            assert_eq!(faces.len(), f);
            assert_eq!(faces.iter().filter(|f| f.outer).count(), 1);
            assert_eq!(g.vertex_count() as i64 - g.edge_count() as i64 + faces.len() as i64, 2);
        }
    }

    #[test]
    fn crossing_detected() {
        let mut g = grid(2, 2);
        // vertices 0:(0,0) 1:(1,0) 2:(0,-1) 3:(1,-1); add both diagonals
        g.add_unit_edge(0, 3);
        assert!(validate_embedding(&g).is_ok());
        g.add_unit_edge(1, 2);
        assert!(matches!(validate_embedding(&g), Err(Error::Embedding(4, 5))));
    }

    #[test]
    fn overlap_and_touch_are_crossings() {
        let mut g = PlanarGraph::new(Embedding::Square);
        for p in [pt(0, 0, 1), pt(2, 0, 1), pt(1, 0, 1), pt(1, 1, 1)] {
            g.add_vertex(p);
        }
        g.add_unit_edge(0, 1);
        g.add_unit_edge(2, 3); // T-junction at (1,0)
        assert!(validate_embedding(&g).is_err());
    }

    #[test]
    fn deletion_composes() {
        let g = grid(3, 3);
        let a: BTreeSet<usize> = [0, 4].into();
        let b: BTreeSet<usize> = [8].into();
        let ab: BTreeSet<usize> = [0, 4, 8].into();
        let one = delete_vertices(&delete_vertices(&g, &a).unwrap(), &b).unwrap();
        let both = delete_vertices(&g, &ab).unwrap();
        assert_eq!(one, both);
        assert_eq!(delete_vertices(&g, &BTreeSet::new()).unwrap(), g);
        assert!(delete_vertices(&g, &[99].into()).is_err());
    }

    #[test]
    fn parallel_edges_merge() {
        let mut g = grid(1, 2);
        let k = g.add_edge(0, 1, int_weight(2), EdgeTag::Inserted);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges[k].weight, int_weight(3));
    }
}
