//! Local substitutions with a predictable effect on weighted matching sums.
//!
//! *Urban renewal.* A 4-cycle `p0 p1 p2 p3` with weights `a = p0p1`,
//! `b = p1p2`, `d = p2p3`, `c = p3p0` (so `a` faces `d` and `b` faces `c`)
//! whose corners have no neighbours besides the cycle and at most one
//! unit-weight "leg" each. Removing the four corners and joining the leg
//! ends `q0 … q3` by a new 4-cycle divides the matching sum by `ad + bc`.
//! The new edge running alongside an old edge carries the weight of the
//! *opposite* old edge divided by `ad + bc`; in particular
//! `A = a/(ad+bc)` sits across from where `a` was. A corner whose outside
//! attachment is not a single unit leg is first split into
//! `p' — m — p` (a sum-preserving move), after which `m` is its leg end.
//!
//! *Kenyon's substitution.* A 2×3 ladder
//!
//! ```text
//!   v5 —d— v1 —g— v4
//!   |a      |b     |c
//!   v6 —f— v2 —e— v3
//! ```
//!
//! with a circled set that has no outside neighbours. Deleting `c` and
//! reweighting `A = (abc+aeg+cdf)/(bc+eg)`, `B = b`, `D = dgE/(bc+eg)`,
//! `E` on edge `e`, `F = ef/E`, `G = (bc+eg)/E` preserves the matching sum
//! exactly for any nonzero `E`. Four circled sets make the identity hold:
//! `{v1,v2,v3,v4}`, `{v1,v2,v5,v6}`, `{v1,v3,v6}` and `{v2,v4,v5}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::graph::{self, Color, EdgeTag, PlanarGraph};
use crate::kasteleyn::count_matchings;

/// Which substitution a site belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Urban,
    Kenyon,
}

impl Pattern {
    pub fn name(self) -> &'static str {
        match self {
            Pattern::Urban => "urban",
            Pattern::Kenyon => "kenyon",
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "urban" => Ok(Pattern::Urban),
            "kenyon" => Ok(Pattern::Kenyon),
            _ => Err(Error::Parse(format!("unknown substitution pattern '{s}' (expected urban or kenyon)"))),
        }
    }
}

/// How an urban-renewal corner connects to the rest of the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attachment {
    /// No neighbours outside the cycle.
    Free,
    /// Exactly one outside neighbour, joined by a unit-weight edge.
    Leg(usize),
    /// Anything else: the corner is split before renewal.
    Split,
}

/// One embedding of a substitution pattern, with roles assigned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionSite {
    pub pattern: Pattern,
    /// Vertex indices by role: `p0..p3` for urban, `v1..v6` for Kenyon.
    pub vertices: Vec<usize>,
    /// Edge indices by role: `a, b, c, d` for urban, `a..g` for Kenyon.
    pub edges: Vec<usize>,
    /// The vertices whose only neighbours lie in the pattern.
    pub circled: Vec<usize>,
    /// Urban only: attachment of each corner `p0..p3`.
    pub attachments: Vec<Attachment>,
}

impl SubstitutionSite {
    /// True when no corner needs splitting (urban) — the site matches the
    /// pattern as drawn.
    pub fn is_strict(&self) -> bool {
        !self.attachments.contains(&Attachment::Split)
    }

    fn weights(&self, g: &PlanarGraph) -> Vec<BigRational> {
        self.edges.iter().map(|&k| g.edges[k].weight.clone()).collect()
    }
}

impl fmt::Display for SubstitutionSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}[{}]", self.pattern.name(), ids.join(","))
    }
}

fn neighbor_sets(g: &PlanarGraph) -> Vec<BTreeMap<usize, usize>> {
    let mut adj = vec![BTreeMap::new(); g.vertex_count()];
    for (k, e) in g.edges.iter().enumerate() {
        adj[e.u].insert(e.v, k);
        adj[e.v].insert(e.u, k);
    }
    adj
}

/// All sites of the pattern, in a deterministic order.
pub fn find_sites(g: &PlanarGraph, pattern: Pattern) -> Vec<SubstitutionSite> {
    match pattern {
        Pattern::Urban => urban_sites(g),
        Pattern::Kenyon => kenyon_sites(g),
    }
}

fn urban_sites(g: &PlanarGraph) -> Vec<SubstitutionSite> {
    let adj = neighbor_sets(g);
    let mut out = Vec::new();
    for p0 in 0..g.vertex_count() {
        let nb: Vec<usize> = adj[p0].keys().copied().filter(|&x| x > p0).collect();
        for (i, &p1) in nb.iter().enumerate() {
            for &p3 in &nb[i + 1..] {
                if adj[p1].contains_key(&p3) {
                    continue;
                }
                for (&p2, _) in adj[p1].iter().filter(|(&x, _)| x > p0 && x != p3) {
                    if !adj[p3].contains_key(&p2) || adj[p0].contains_key(&p2) {
                        continue;
                    }
                    let cyc = [p0, p1, p2, p3];
                    let attachments = cyc
                        .iter()
                        .map(|&p| {
                            let outside: Vec<(usize, usize)> =
                                adj[p].iter().filter(|(x, _)| !cyc.contains(x)).map(|(&x, &k)| (x, k)).collect();
                            match outside[..] {
                                [] => Attachment::Free,
                                [(q, k)] if g.edges[k].weight.is_one() => Attachment::Leg(q),
                                _ => Attachment::Split,
                            }
                        })
                        .collect();
                    let e = |x: usize, y: usize| adj[x][&y];
                    out.push(SubstitutionSite {
                        pattern: Pattern::Urban,
                        vertices: cyc.to_vec(),
                        edges: vec![e(p0, p1), e(p1, p2), e(p3, p0), e(p2, p3)],
                        circled: cyc.to_vec(),
                        attachments,
                    });
                }
            }
        }
    }
    out
}

/// Circled role sets (0-based indices into `v1..v6`) for which Kenyon's
/// identity holds, in order of preference.
const KENYON_CIRCLED: [&[usize]; 4] = [&[0, 1, 2, 3], &[0, 1, 4, 5], &[0, 2, 5], &[1, 3, 4]];

fn kenyon_sites(g: &PlanarGraph) -> Vec<SubstitutionSite> {
    let adj = neighbor_sets(g);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for rung in &g.edges {
        for (v1, v2) in [(rung.u, rung.v), (rung.v, rung.u)] {
            let squares: Vec<(usize, usize)> = adj[v1]
                .keys()
                .filter(|&&x| x != v2)
                .flat_map(|&x| adj[v2].keys().filter(move |&&y| y != v1 && y != x).map(move |&y| (x, y)))
                .filter(|(x, y)| adj[*x].contains_key(y))
                .collect();
            for &(v5, v6) in &squares {
                for &(v4, v3) in &squares {
                    let vs = [v1, v2, v3, v4, v5, v6];
                    let set: BTreeSet<usize> = vs.iter().copied().collect();
                    if set.len() != 6 {
                        continue;
                    }
                    let inside = g.edges.iter().filter(|e| set.contains(&e.u) && set.contains(&e.v)).count();
                    if inside != 7 {
                        continue;
                    }
                    let key: Vec<usize> = set.iter().copied().collect();
                    if seen.contains(&key) {
                        continue;
                    }
                    let has_outside = |v: usize| adj[v].keys().any(|x| !set.contains(x));
                    let Some(circled) = KENYON_CIRCLED
                        .iter()
                        .find(|roles| roles.iter().all(|&r| !has_outside(vs[r])))
                        .map(|roles| roles.iter().map(|&r| vs[r]).collect::<Vec<_>>())
                    else {
                        continue;
                    };
                    seen.insert(key);
                    let e = |x: usize, y: usize| adj[x][&y];
                    out.push(SubstitutionSite {
                        pattern: Pattern::Kenyon,
                        vertices: vs.to_vec(),
                        edges: vec![e(v5, v6), e(v1, v2), e(v4, v3), e(v5, v1), e(v2, v3), e(v6, v2), e(v1, v4)],
                        circled,
                        attachments: Vec::new(),
                    });
                }
            }
        }
    }
    out
}

/// Copies `g` without the given vertices; returns the new graph and the
/// old-index → new-index map.
fn without(g: &PlanarGraph, remove: &BTreeSet<usize>) -> (PlanarGraph, Vec<Option<usize>>) {
    let mut h = PlanarGraph::new(g.embedding);
    h.planar = g.planar;
    let mut map = vec![None; g.vertex_count()];
    for (i, v) in g.vertices.iter().enumerate() {
        if !remove.contains(&i) {
            map[i] = Some(h.vertices.len());
            h.vertices.push(v.clone());
        }
    }
    for e in &g.edges {
        if let (Some(a), Some(b)) = (map[e.u], map[e.v]) {
            h.edges.push(graph::Edge { u: a, v: b, weight: e.weight.clone(), tag: e.tag });
        }
    }
    (h, map)
}

fn finish(mut h: PlanarGraph) -> PlanarGraph {
    if h.planar && graph::validate_embedding(&h).is_err() {
        h.planar = false;
    }
    h
}

/// The four renewed weights `(A, B, C, D)` and the divisor `ad + bc`.
pub fn renewed_weights(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
) -> Result<([BigRational; 4], BigRational)> {
    let den = a * d + b * c;
    if den.is_zero() {
        return domain("urban renewal needs ad + bc ≠ 0");
    }
    Ok(([a / &den, b / &den, c / &den, d / &den], den))
}

/// Applies urban renewal; the matching sum of `g` equals `factor` times
/// that of the returned graph.
pub fn urban_renewal(g: &PlanarGraph, site: &SubstitutionSite) -> Result<(PlanarGraph, BigRational)> {
    if site.pattern != Pattern::Urban || site.vertices.len() != 4 {
        return domain("not an urban-renewal site");
    }
    let w = site.weights(g);
    let ([na, nb, nc, nd], den) = renewed_weights(&w[0], &w[1], &w[2], &w[3])?;
    let p = &site.vertices;
    let remove: BTreeSet<usize> = p.iter().copied().collect();
    let (mut h, map) = without(g, &remove);
    let cx = p.iter().map(|&x| g.vertices[x].pos.0).sum::<Rational64>() / Rational64::from_integer(4);
    let cy = p.iter().map(|&x| g.vertices[x].pos.1).sum::<Rational64>() / Rational64::from_integer(4);
    let mut ends: Vec<Option<usize>> = Vec::with_capacity(4);
    for (i, &pi) in p.iter().enumerate() {
        match site.attachments[i] {
            Attachment::Free => ends.push(None),
            Attachment::Leg(q) => ends.push(map[q]),
            Attachment::Split => {
                // p keeps its outside edges (as p'), a new vertex m joins it.
                let pos = g.vertices[pi].pos;
                let keep = h.add_vertex(pos);
                h.vertices[keep].id = g.vertices[pi].id;
                h.vertices[keep].color = g.vertices[pi].color;
                for e in &g.edges {
                    let other = if e.u == pi {
                        e.v
                    } else if e.v == pi {
                        e.u
                    } else {
                        continue;
                    };
                    if remove.contains(&other) {
                        continue;
                    }
                    h.add_edge(keep, map[other].expect("outside vertex kept"), e.weight.clone(), e.tag);
                }
                let third = Rational64::new(1, 3);
                let m = h.add_vertex((pos.0 + (cx - pos.0) * third, pos.1 + (cy - pos.1) * third));
                h.vertices[m].color = g.vertices[pi].color.opposite();
                h.add_unit_edge(keep, m);
                ends.push(Some(m));
            }
        }
    }
    // New edge q_i q_{i+1} runs alongside old edge p_i p_{i+1} and takes
    // the renewed weight of the opposite edge: q0q1 ↔ D, q1q2 ↔ C,
    // q2q3 ↔ A, q3q0 ↔ B.
    let plan = [(0, 1, nd), (1, 2, nc), (2, 3, na), (3, 0, nb)];
    for (i, j, wt) in plan {
        if let (Some(x), Some(y)) = (ends[i], ends[j]) {
            if x != y {
                h.add_edge(x, y, wt, EdgeTag::Inserted);
            }
        }
    }
    h.edges.retain(|e| !e.weight.is_zero());
    Ok((finish(h), den))
}

/// Kenyon's weights `(A, B, D, E, F, G)` for old weights `a..g` and free `E`.
#[allow(clippy::too_many_arguments)]
pub fn kenyon_weights(w: &[BigRational; 7], big_e: &BigRational) -> Result<[BigRational; 6]> {
    let [a, b, c, d, e, f, g] = w;
    let s = b * c + e * g;
    if s.is_zero() {
        return domain("Kenyon substitution needs bc + eg ≠ 0");
    }
    if big_e.is_zero() {
        return domain("Kenyon substitution needs E ≠ 0");
    }
    let na = (a * b * c + a * e * g + c * d * f) / &s;
    let nd = d * g * big_e / &s;
    let nf = e * f / big_e;
    let ng = &s / big_e;
    Ok([na, b.clone(), nd, big_e.clone(), nf, ng])
}

/// Applies Kenyon's substitution with free parameter `E`; the matching sum
/// is unchanged.
pub fn kenyon_substitution(g: &PlanarGraph, site: &SubstitutionSite, big_e: &BigRational) -> Result<PlanarGraph> {
    if site.pattern != Pattern::Kenyon || site.edges.len() != 7 {
        return domain("not a Kenyon site");
    }
    let w: [BigRational; 7] = site.weights(g).try_into().expect("seven site edges");
    let [na, nb, nd, ne, nf, ng] = kenyon_weights(&w, big_e)?;
    let mut h = g.clone();
    let [ka, kb, kc, kd, ke, kf, kg] = site.edges[..] else { unreachable!() };
    for (k, wt) in [(ka, na), (kb, nb), (kd, nd), (ke, ne), (kf, nf), (kg, ng)] {
        h.edges[k].weight = wt;
    }
    h.edges.remove(kc);
    h.edges.retain(|e| !e.weight.is_zero());
    Ok(finish(h))
}

/// Which substitutions `reduce` may use besides the elementary moves
/// (forced edges and degree-2 contraction), which are always on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Urban,
    Kenyon,
    All,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "urban" => Ok(Strategy::Urban),
            "kenyon" => Ok(Strategy::Kenyon),
            "all" => Ok(Strategy::All),
            _ => Err(Error::Parse(format!("unknown strategy '{s}' (expected urban, kenyon or all)"))),
        }
    }
}

/// One step of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: &'static str,
    /// Ids of the vertices the step acted on.
    pub vertices: Vec<usize>,
    /// Factor pulled out of the matching sum by this step.
    pub factor: BigRational,
}

/// The record of a reduction: `sum(original) = factor · sum(remainder)`.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub factor: BigRational,
    pub remainder: PlanarGraph,
    /// True when the step budget ran out before a fixed point.
    pub truncated: bool,
}

impl ReductionTrace {
    /// True when nothing is left (the factor is the whole matching sum).
    pub fn is_trivial(&self) -> bool {
        self.remainder.vertex_count() == 0
    }

    /// Checks `sum(original) = factor · sum(remainder)` with exact counts.
    pub fn verify(&self, original: &PlanarGraph) -> Result<bool> {
        Ok(count_matchings(original)? == &self.factor * count_matchings(&self.remainder)?)
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            let ids: Vec<String> = s.vertices.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{:>4} {:<9} [{}] factor {}", i + 1, s.rule, ids.join(","), s.factor)?;
        }
        write!(
            f,
            "total factor {}; remainder {} vertices, {} edges{}",
            self.factor,
            self.remainder.vertex_count(),
            self.remainder.edge_count(),
            if self.truncated { " (step limit reached)" } else { "" }
        )
    }
}

/// Removes a degree-1 vertex together with its partner.
fn force_pendant(g: &PlanarGraph) -> Option<(PlanarGraph, TraceStep)> {
    let adj = g.adjacency();
    let v = (0..g.vertex_count()).find(|&v| adj[v].len() == 1)?;
    let (u, k) = adj[v][0];
    let remove = BTreeSet::from([u, v]);
    let (h, _) = without(g, &remove);
    let step = TraceStep {
        rule: "forced",
        vertices: vec![g.vertices[v].id, g.vertices[u].id],
        factor: g.edges[k].weight.clone(),
    };
    Some((finish(h), step))
}

/// Contracts a degree-2 vertex `v` with neighbours `x`, `y` into one vertex
/// placed at `v`: an edge `x–u` becomes `z–u` scaled by `w(vy)` and `y–u`
/// becomes `z–u` scaled by `w(vx)`. The edge `x–y`, if any, is dropped.
fn contract_degree_two(g: &PlanarGraph) -> Option<(PlanarGraph, TraceStep)> {
    let adj = g.adjacency();
    let v = (0..g.vertex_count()).find(|&v| adj[v].len() == 2)?;
    let [(x, kx), (y, ky)] = adj[v][..] else { unreachable!() };
    let (wx, wy) = (g.edges[kx].weight.clone(), g.edges[ky].weight.clone());
    let remove = BTreeSet::from([v, x, y]);
    let (mut h, map) = without(g, &remove);
    let z = h.add_vertex(g.vertices[v].pos);
    h.vertices[z].color = g.vertices[x].color;
    for (end, scale) in [(x, &wy), (y, &wx)] {
        for &(u, k) in &adj[end] {
            if let Some(mu) = map[u] {
                h.add_edge(z, mu, &g.edges[k].weight * scale, g.edges[k].tag);
            }
        }
    }
    h.edges.retain(|e| !e.weight.is_zero());
    let step = TraceStep {
        rule: "contract",
        vertices: vec![g.vertices[v].id, g.vertices[x].id, g.vertices[y].id],
        factor: BigRational::one(),
    };
    Some((finish(h), step))
}

fn ids(g: &PlanarGraph, vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|&v| g.vertices[v].id).collect()
}

/// Repeatedly applies elementary moves and the allowed substitutions until
/// none applies (or a step budget proportional to the graph size runs
/// out). Priority: forced edges, degree-2 contraction, strict urban
/// renewal, Kenyon (with `E = 1`), then urban renewal with splitting.
pub fn reduce(g: &PlanarGraph, strategy: Strategy) -> ReductionTrace {
    let urban = matches!(strategy, Strategy::Urban | Strategy::All);
    let kenyon = matches!(strategy, Strategy::Kenyon | Strategy::All);
    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut factor = BigRational::one();
    let budget = 8 * (g.vertex_count() + g.edge_count()) + 16;
    let mut truncated = false;
    loop {
        if steps.len() >= budget {
            truncated = true;
            break;
        }
        if cur.vertices.iter().enumerate().any(|(v, _)| cur.degree(v) == 0) {
            break;
        }
        let next = force_pendant(&cur).or_else(|| contract_degree_two(&cur)).or_else(|| {
            let sites = if urban { find_sites(&cur, Pattern::Urban) } else { Vec::new() };
            if let Some(s) = sites.iter().find(|s| s.is_strict()) {
                let (h, f) = urban_renewal(&cur, s).ok()?;
                return Some((h, TraceStep { rule: "urban", vertices: ids(&cur, &s.vertices), factor: f }));
            }
            if kenyon {
                if let Some(s) = find_sites(&cur, Pattern::Kenyon).first() {
                    let h = kenyon_substitution(&cur, s, &BigRational::one()).ok()?;
                    return Some((
                        h,
                        TraceStep { rule: "kenyon", vertices: ids(&cur, &s.vertices), factor: BigRational::one() },
                    ));
                }
            }
            let s = sites.first()?;
            let (h, f) = urban_renewal(&cur, s).ok()?;
            Some((h, TraceStep { rule: "urban", vertices: ids(&cur, &s.vertices), factor: f }))
        });
        match next {
            Some((h, step)) => {
                factor *= &step.factor;
                steps.push(step);
                cur = h;
            }
            None => break,
        }
    }
    ReductionTrace { steps, factor, remainder: cur, truncated }
}

/// Number of vertices of each color, used in structure checks.
pub fn color_balance(g: &PlanarGraph) -> (usize, usize) {
    let w = g.vertices.iter().filter(|v| v.color == Color::White).count();
    let b = g.vertices.iter().filter(|v| v.color == Color::Black).count();
    (w, b)
}
