//! Parametric region families and their matching-equivalent graphs.
//!
//! Tiling regions become dual graphs: one vertex per cell, one edge per pair
//! of cells sharing a side. Square-lattice regions are described by cells
//! `(row, col)` with rows growing downward, drawn at `(col, -row)`.
//! Triangular-lattice regions are described by unit triangles `up(i,j)`
//! with corners `(i,j),(i+1,j),(i,j+1)` and `down(i,j)` with corners
//! `(i+1,j),(i,j+1),(i+1,j+1)` in the lattice basis `e₁ = (1,0)`,
//! `e₂ = (1/2, √3/2)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::{bipartite_coloring, pt, Color, EdgeTag, Embedding, PlanarGraph, Point};

/// A unit triangle of the triangular lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tri {
    pub i: i64,
    pub j: i64,
    pub up: bool,
}

impl Tri {
    pub fn up(i: i64, j: i64) -> Tri {
        Tri { i, j, up: true }
    }

    pub fn down(i: i64, j: i64) -> Tri {
        Tri { i, j, up: false }
    }

    /// Centroid in affine drawing coordinates.
    pub fn centroid(&self) -> Point {
        // up: (i+1/3, j+1/3) -> x = i + j/2 + 1/2, y = j + 1/3
        // down: (i+2/3, j+2/3) -> x = i + j/2 + 1, y = j + 2/3
        let (x6, y6) = if self.up {
            (6 * self.i + 3 * self.j + 3, 6 * self.j + 2)
        } else {
            (6 * self.i + 3 * self.j + 6, 6 * self.j + 4)
        };
        pt(x6, y6, 6)
    }

    /// Column index in the VAX picture: consecutive triangles in a strip
    /// get consecutive columns, and a triangle shares its horizontal side
    /// with the one of opposite orientation in the same column.
    pub fn vax_col(&self) -> i64 {
        2 * self.i + self.j + if self.up { 1 } else { 2 }
    }

    /// The triangles sharing a side with this one.
    pub fn neighbors(&self) -> [Tri; 3] {
        let (i, j) = (self.i, self.j);
        if self.up {
            [Tri::down(i, j), Tri::down(i - 1, j), Tri::down(i, j - 1)]
        } else {
            [Tri::up(i, j), Tri::up(i + 1, j), Tri::up(i, j + 1)]
        }
    }
}

/// Region families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Rectangle,
    AztecDiamond,
    AztecRectangle,
    AztecWindow,
    FoolsDiamond,
    Pillow0Mod4,
    Pillow2Mod4,
    IntrudedSquare,
    Hexagon,
    HexagonMinusCentralTriangle,
    HexagonNotchedSides,
    HexagonTwoCentral,
    HexagonGeneral,
    TriangleGraph,
    TriangleGraphAugmented,
    RightTriangleAugmented,
    HexagonMajority,
    AztecRectMajority,
    Fortress,
    AztecDungeon,
    HexagonalDungeon,
    Dragon,
    Quasihexagon,
    Hypercube,
}

const FAMILIES: &[(Family, &str)] = &[
    (Family::Rectangle, "rectangle"),
    (Family::AztecDiamond, "aztec_diamond"),
    (Family::AztecRectangle, "aztec_rectangle"),
    (Family::AztecWindow, "aztec_window"),
    (Family::FoolsDiamond, "fools_diamond"),
    (Family::Pillow0Mod4, "pillow_0mod4"),
    (Family::Pillow2Mod4, "pillow_2mod4"),
    (Family::IntrudedSquare, "intruded_square"),
    (Family::Hexagon, "hexagon"),
    (Family::HexagonMinusCentralTriangle, "hexagon_minus_central_triangle"),
    (Family::HexagonNotchedSides, "hexagon_notched_sides"),
    (Family::HexagonTwoCentral, "hexagon_two_central"),
    (Family::HexagonGeneral, "hexagon_general"),
    (Family::TriangleGraph, "triangle_graph"),
    (Family::TriangleGraphAugmented, "triangle_graph_augmented"),
    (Family::RightTriangleAugmented, "right_triangle_augmented"),
    (Family::HexagonMajority, "hexagon_majority"),
    (Family::AztecRectMajority, "aztec_rect_majority"),
    (Family::Fortress, "fortress"),
    (Family::AztecDungeon, "aztec_dungeon"),
    (Family::HexagonalDungeon, "hexagonal_dungeon"),
    (Family::Dragon, "dragon"),
    (Family::Quasihexagon, "quasihexagon"),
    (Family::Hypercube, "hypercube"),
];

impl Family {
    pub fn name(self) -> &'static str {
        FAMILIES.iter().find(|(f, _)| *f == self).map(|(_, n)| *n).expect("every family is named")
    }

    pub fn all() -> impl Iterator<Item = Family> {
        FAMILIES.iter().map(|(f, _)| *f)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        FAMILIES
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(f, _)| *f)
            .ok_or_else(|| Error::Parse(format!("unknown region family '{s}'")))
    }
}

/// A family argument: a nonnegative integer or a keyword such as
/// `opposite` or `holey`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    Int(u64),
    Word(String),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Int(n) => write!(f, "{n}"),
            Arg::Word(w) => write!(f, "{w}"),
        }
    }
}

/// Which pair of central triangles is removed from a regular hexagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    Opposite,
    Adjacent,
}

impl Placement {
    fn parse(s: &str) -> Result<Placement> {
        match s {
            "opposite" => Ok(Placement::Opposite),
            "adjacent" => Ok(Placement::Adjacent),
            _ => Err(Error::Parse(format!("expected 'opposite' or 'adjacent', got '{s}'"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Placement::Opposite => "opposite",
            Placement::Adjacent => "adjacent",
        }
    }
}

/// Named deletions applied to a generated region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Aztec rectangle: remove the central square.
    CentralSquare,
    /// Aztec rectangle: remove the square north of the central square.
    CentralSquareNeighbor,
    /// Aztec diamond of order n: remove the squares at (n−2, n) and
    /// (n, n−1), a knight's move apart and as central as possible.
    KnightPair,
    /// Hexagon with sides n,n+1,n,n+1,n,n+1: remove the central triangle.
    CentralTriangle,
    /// Regular hexagon: remove an up and a down triangle at the center.
    CentralTwo(Placement),
    /// Hexagon with odd sides b, d, f: remove the middle triangle on each.
    SideNotches,
    /// Aztec diamond: remove the middle cells of the northwest and
    /// northeast borders.
    BorderMiddles,
}

impl Mutation {
    fn parse(s: &str) -> Result<Mutation> {
        Ok(match s {
            "central_square" => Mutation::CentralSquare,
            "central_square_neighbor" => Mutation::CentralSquareNeighbor,
            "knight_pair" => Mutation::KnightPair,
            "central_triangle" => Mutation::CentralTriangle,
            "side_notches" => Mutation::SideNotches,
            "border_middles" => Mutation::BorderMiddles,
            "central_two(opposite)" => Mutation::CentralTwo(Placement::Opposite),
            "central_two(adjacent)" => Mutation::CentralTwo(Placement::Adjacent),
            _ => return Err(Error::Parse(format!("unknown mutation '{s}'"))),
        })
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mutation::CentralSquare => write!(f, "central_square"),
            Mutation::CentralSquareNeighbor => write!(f, "central_square_neighbor"),
            Mutation::KnightPair => write!(f, "knight_pair"),
            Mutation::CentralTriangle => write!(f, "central_triangle"),
            Mutation::CentralTwo(p) => write!(f, "central_two({})", p.name()),
            Mutation::SideNotches => write!(f, "side_notches"),
            Mutation::BorderMiddles => write!(f, "border_middles"),
        }
    }
}

/// A named region: `family(p1,p2,...)[+mutation...]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegionSpec {
    pub family: Family,
    pub args: Vec<Arg>,
    pub mutations: Vec<Mutation>,
}

impl RegionSpec {
    pub fn new(family: Family, params: &[u64]) -> Self {
        RegionSpec { family, args: params.iter().map(|&p| Arg::Int(p)).collect(), mutations: Vec::new() }
    }

    pub fn with(mut self, m: Mutation) -> Self {
        self.mutations.push(m);
        self
    }

    fn ints(&self) -> Result<Vec<u64>> {
        self.args
            .iter()
            .map(|a| match a {
                Arg::Int(n) => Ok(*n),
                Arg::Word(w) => Err(Error::Parameter(format!("{}: unexpected keyword '{w}'", self.family.name()))),
            })
            .collect()
    }

    fn int_args(&self, arity: usize) -> Result<Vec<i64>> {
        let v = self.ints()?;
        if v.len() != arity {
            return Err(Error::Parameter(format!(
                "{} takes {arity} parameter(s), got {}",
                self.family.name(),
                v.len()
            )));
        }
        Ok(v.into_iter().map(|x| x as i64).collect())
    }
}

/// Splits on commas that are not nested in parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for RegionSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<RegionSpec> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let parts = split_top(&s, '+');
        let head = parts[0];
        let open = head.find('(').ok_or_else(|| Error::Parse(format!("expected 'family(...)' in '{text}'")))?;
        if !head.ends_with(')') {
            return Err(Error::Parse(format!("unbalanced parentheses in '{text}'")));
        }
        let family: Family = head[..open].parse()?;
        let inner = &head[open + 1..head.len() - 1];
        let mut args = Vec::new();
        if !inner.is_empty() {
            for a in inner.split(',') {
                if a.is_empty() {
                    return Err(Error::Parse(format!("empty parameter in '{text}'")));
                }
                if a.chars().all(|c| c.is_ascii_digit()) {
                    args.push(Arg::Int(a.parse().map_err(|_| Error::Parse(format!("parameter '{a}' too large")))?));
                } else if a.chars().all(|c| c.is_ascii_lowercase() || c == '_') {
                    args.push(Arg::Word(a.to_string()));
                } else {
                    return Err(Error::Parse(format!("bad parameter '{a}'")));
                }
            }
        }
        let mutations = parts[1..].iter().map(|m| Mutation::parse(m)).collect::<Result<Vec<_>>>()?;
        Ok(RegionSpec { family, args, mutations })
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
        write!(f, "{}({})", self.family.name(), args.join(","))?;
        for m in &self.mutations {
            write!(f, "+{m}")?;
        }
        Ok(())
    }
}

fn param_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

// ---------------------------------------------------------------------------
// Square-lattice cell sets

pub type SquareCells = BTreeSet<(i64, i64)>;

/// Dual graph of a set of unit squares `(row, col)`.
pub fn square_region(cells: &SquareCells) -> PlanarGraph {
    let mut g = PlanarGraph::new(Embedding::Square);
    let mut index = HashMap::new();
    for &(r, c) in cells {
        index.insert((r, c), g.add_vertex(pt(c, -r, 1)));
    }
    for &(r, c) in cells {
        let x = index[&(r, c)];
        if let Some(&y) = index.get(&(r, c + 1)) {
            g.add_unit_edge(x, y);
        }
        if let Some(&y) = index.get(&(r + 1, c)) {
            g.add_unit_edge(x, y);
        }
    }
    g.with_coloring()
}

fn rectangle_cells(m: i64, n: i64) -> SquareCells {
    (0..m).flat_map(|r| (0..n).map(move |c| (r, c))).collect()
}

/// Aztec rectangle with `a−1 ≤ r+c ≤ a−1+2b` and `|c−r| ≤ a`; rows
/// `0..a+b`. `aztec_rectangle_cells(n, n)` is the Aztec diamond of order n.
fn aztec_rectangle_cells(a: i64, b: i64) -> SquareCells {
    let mut out = SquareCells::new();
    for r in 0..a + b {
        for c in 0..a + b {
            let (d1, d2) = (r + c, c - r);
            if d1 >= a - 1 && d1 <= a - 1 + 2 * b && d2.abs() <= a {
                out.insert((r, c));
            }
        }
    }
    out
}

fn aztec_center(a: i64, b: i64) -> Option<(i64, i64)> {
    // d1 = a-1+b, d2 = 0
    let d1 = a - 1 + b;
    (d1 % 2 == 0).then_some((d1 / 2, d1 / 2))
}

fn pillow_cells(n: i64, two_mod_four: bool) -> SquareCells {
    let mut out = SquareCells::new();
    let len = |k: i64| if two_mod_four { 4 * k + 2 } else { 4 * (k + 1) };
    for k in 0..n {
        let off = 3 * (n - 1 - k);
        for c in off..off + len(k) {
            out.insert((k, c));
        }
    }
    for k in 0..n {
        let l = len(n - 1 - k);
        for c in k..k + l {
            out.insert((n + k, c));
        }
    }
    out
}

fn remove_cells(cells: &mut SquareCells, which: &[(i64, i64)], what: &str) -> Result<()> {
    for w in which {
        if !cells.remove(w) {
            return param_err(format!("{what}: cell {w:?} is not in the region"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Triangular-lattice cell sets

pub type TriCells = BTreeSet<Tri>;

/// Dual (honeycomb) graph of a set of unit triangles, vertices in VAX
/// reading order.
pub fn triangle_region(cells: &TriCells) -> PlanarGraph {
    let mut order: Vec<Tri> = cells.iter().copied().collect();
    order.sort_by_key(|t| (-t.j, t.vax_col()));
    let mut g = PlanarGraph::new(Embedding::Triangular);
    let mut index = HashMap::new();
    for t in &order {
        index.insert(*t, g.add_vertex(t.centroid()));
    }
    for t in order.iter().filter(|t| t.up) {
        for n in t.neighbors() {
            if let Some(&y) = index.get(&n) {
                g.add_unit_edge(index[t], y);
            }
        }
    }
    g.with_coloring()
}

/// Unit triangles of the hexagon with sides a..f taken counterclockwise
/// from the bottom side, with corners (0,0), (a,0), (a,b), (a−c,b+c), ...
pub fn hexagon_cells(s: [i64; 6]) -> Result<TriCells> {
    let [a, b, c, d, e, f] = s;
    if a - c - d + f != 0 || b + c - e - f != 0 {
        return param_err(format!("hexagon sides {a},{b},{c},{d},{e},{f} do not close up"));
    }
    let (lo, hi, top, sum) = (a - c - d, a, b + c, a + b);
    let mut out = TriCells::new();
    for j in 0..top {
        for i in lo..hi {
            if i + j >= 0 && i + j < sum {
                out.insert(Tri::up(i, j));
            }
            if i + j + 1 >= 0 && i + j + 2 <= sum {
                out.insert(Tri::down(i, j));
            }
        }
    }
    Ok(out)
}

fn remove_tris(cells: &mut TriCells, which: &[Tri], what: &str) -> Result<()> {
    for w in which {
        if !cells.remove(w) {
            return param_err(format!("{what}: triangle {w:?} is not in the region"));
        }
    }
    Ok(())
}

fn central_triangle(n: i64) -> Tri {
    Tri::down(-1, n)
}

fn side_notches(s: [i64; 6]) -> Result<Vec<Tri>> {
    let [a, b, c, d, _, f] = s;
    if b % 2 == 0 || d % 2 == 0 || f % 2 == 0 {
        return param_err("side_notches needs odd sides b, d, f");
    }
    Ok(vec![
        Tri::down(a - 1, (b - 1) / 2),
        Tri::down(a - c - d + (d - 1) / 2, b + c - 1),
        Tri::down(-1 - (f - 1) / 2, (f - 1) / 2),
    ])
}

fn central_two(n: i64, p: Placement) -> Vec<Tri> {
    match p {
        Placement::Opposite => vec![Tri::up(0, n), Tri::down(-1, n - 1)],
        Placement::Adjacent => vec![Tri::up(0, n), Tri::down(0, n - 1)],
    }
}

// ---------------------------------------------------------------------------
// Polygonal dissections (diform regions)

type IPoint = (i64, i64);

/// Dual graph of a set of polygons given by integer vertex coordinates.
/// `to_point` maps an integer vertex to drawing coordinates; dual vertices
/// sit at vertex averages. Cells are taken in the given order.
fn polygon_dual(cells: &[Vec<IPoint>], embedding: Embedding, den: i64, affine: bool) -> PlanarGraph {
    let mut g = PlanarGraph::new(embedding);
    let mut edge_cells: BTreeMap<(IPoint, IPoint), Vec<usize>> = BTreeMap::new();
    for (k, poly) in cells.iter().enumerate() {
        let len = poly.len() as i64;
        let sx: i64 = poly.iter().map(|p| p.0).sum();
        let sy: i64 = poly.iter().map(|p| p.1).sum();
        let (x, y) = (Rational64::new(sx, len * den), Rational64::new(sy, len * den));
        let pos = if affine { (x + y / 2, y) } else { (x, y) };
        g.add_vertex(pos);
        for t in 0..poly.len() {
            let (p, q) = (poly[t], poly[(t + 1) % poly.len()]);
            let key = if p < q { (p, q) } else { (q, p) };
            edge_cells.entry(key).or_default().push(k);
        }
    }
    for list in edge_cells.values() {
        if let [a, b] = list[..] {
            g.add_unit_edge(a.min(b), a.max(b));
        }
    }
    g.edges.sort_by_key(|e| (e.u, e.v));
    g.with_coloring()
}

/// Boundary edges (sides belonging to exactly one cell), keyed by cell.
fn boundary_sides(cells: &[Vec<IPoint>]) -> Vec<Vec<(IPoint, IPoint)>> {
    let mut count: HashMap<(IPoint, IPoint), usize> = HashMap::new();
    let key = |p: IPoint, q: IPoint| if p < q { (p, q) } else { (q, p) };
    for poly in cells {
        for t in 0..poly.len() {
            *count.entry(key(poly[t], poly[(t + 1) % poly.len()])).or_default() += 1;
        }
    }
    cells
        .iter()
        .map(|poly| {
            (0..poly.len())
                .map(|t| (poly[t], poly[(t + 1) % poly.len()]))
                .filter(|&(p, q)| count[&key(p, q)] == 1)
                .collect()
        })
        .collect()
}

/// Fortress of order n: an n×n block of unit squares, each cut into four
/// isosceles right triangles by its diagonals; along the border, squares
/// with odd `i+j` lose their outward triangle.
fn fortress_cells(n: i64) -> Vec<Vec<IPoint>> {
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let (x, y) = (2 * i, 2 * j);
            let c = (x + 1, y + 1);
            let corners = [(x, y), (x + 2, y), (x + 2, y + 2), (x, y + 2)];
            // k: 0 bottom, 1 right, 2 top, 3 left
            let outward = [j == 0, i == n - 1, j == n - 1, i == 0];
            for k in 0..4 {
                if outward[k] && (i + j) % 2 == 1 {
                    continue;
                }
                out.push(vec![corners[k], corners[(k + 1) % 4], c]);
            }
        }
    }
    out
}

/// A small triangle of the 30-60-90 dissection: lattice point, edge
/// midpoint and centroid of a unit triangle, in lattice coordinates ×6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Kis {
    l: IPoint,
    m: IPoint,
    c: IPoint,
}

impl Kis {
    /// The two-coloring: orientation of (L, M, C).
    fn color(&self) -> bool {
        let (a, b, c) = (self.l, self.m, self.c);
        (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) > 0
    }

    fn poly(&self) -> Vec<IPoint> {
        vec![self.l, self.m, self.c]
    }
}

/// The six small triangles of unit triangle `t`.
fn kis_of(t: Tri) -> [Kis; 6] {
    let (i, j) = (6 * t.i, 6 * t.j);
    let v = if t.up { [(i, j), (i + 6, j), (i, j + 6)] } else { [(i + 6, j), (i + 6, j + 6), (i, j + 6)] };
    let c = if t.up { (i + 2, j + 2) } else { (i + 4, j + 4) };
    let mut out = [Kis { l: (0, 0), m: (0, 0), c }; 6];
    for a in 0..3 {
        let (p, q) = (v[a], v[(a + 1) % 3]);
        let m = ((p.0 + q.0) / 2, (p.1 + q.1) / 2);
        out[2 * a] = Kis { l: p, m, c };
        out[2 * a + 1] = Kis { l: q, m, c };
    }
    out
}

/// A straight side of a region, `form(point) == value`, and the color
/// the small triangles along it must have.
#[derive(Clone, Copy)]
struct Side {
    form: fn(IPoint) -> i64,
    value: i64,
    color: bool,
}

fn form_i(p: IPoint) -> i64 {
    p.0
}

fn form_j(p: IPoint) -> i64 {
    p.1
}

fn form_ij(p: IPoint) -> i64 {
    p.0 + p.1
}

/// All small triangles of the unit triangles in `tris`, minus those touching
/// a side with the wrong color.
fn kis_region(tris: &TriCells, sides: &[Side]) -> Vec<Vec<IPoint>> {
    let small: Vec<Kis> = tris.iter().flat_map(|&t| kis_of(t)).collect();
    let polys: Vec<Vec<IPoint>> = small.iter().map(|k| k.poly()).collect();
    let bd = boundary_sides(&polys);
    small
        .iter()
        .zip(bd)
        .filter(|(k, edges)| {
            !edges.iter().any(|&(p, q)| {
                sides.iter().any(|s| (s.form)(p) == 6 * s.value && (s.form)(q) == 6 * s.value && k.color() != s.color)
            })
        })
        .map(|(k, _)| k.poly())
        .collect()
}

/// Aztec dungeon of order n: the lattice rhombus `0 ≤ i, j ≤ n+1` in the
/// 30-60-90 dissection, trimmed so that each of its four sides is lined by
/// small triangles of one color (the sides `j = 0` and `j = n+1` take one
/// color, `i = 0` and `i = n+1` the other).
fn aztec_dungeon_cells(n: i64) -> Vec<Vec<IPoint>> {
    let a = n + 1;
    let tris: TriCells = (0..a).flat_map(|i| (0..a).flat_map(move |j| [Tri::up(i, j), Tri::down(i, j)])).collect();
    let sides = [
        Side { form: form_j, value: 0, color: true },
        Side { form: form_j, value: a, color: true },
        Side { form: form_i, value: 0, color: false },
        Side { form: form_i, value: a, color: false },
    ];
    kis_region(&tris, &sides)
}

/// A linear form on lattice points, used to describe the side lines of a region.
type LineForm = fn(IPoint) -> i64;

/// Hexagonal dungeon with sides a, 2a, b, a, 2a, b in the 30-60-90
/// dissection, the six sides alternately lined by the two colors.
fn hexagonal_dungeon_cells(a: i64, b: i64) -> Result<Vec<Vec<IPoint>>> {
    let s = [a, 2 * a, b, a, 2 * a, b];
    let tris = hexagon_cells(s)?;
    let [sa, sb, sc, sd, _, _] = s;
    let lines: [(LineForm, i64); 6] =
        [(form_j, 0), (form_i, sa), (form_ij, sa + sb), (form_j, sb + sc), (form_i, sa - sc - sd), (form_ij, 0)];
    let sides: Vec<Side> =
        lines.iter().enumerate().map(|(k, &(form, value))| Side { form, value, color: k % 2 == 1 }).collect();
    Ok(kis_region(&tris, &sides))
}

/// A cell of the triangle-square-hexagon dissection: a hexagon around each
/// lattice point, a square across each lattice edge and a triangle inside
/// each unit triangle. Cells are named by their centers in lattice
/// coordinates ×6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Tsh {
    Hexagon,
    Square,
    Triangle,
}

fn tsh_kind(p: IPoint) -> Option<Tsh> {
    match (p.0.rem_euclid(6), p.1.rem_euclid(6)) {
        (0, 0) => Some(Tsh::Hexagon),
        (3, 0) | (0, 3) | (3, 3) => Some(Tsh::Square),
        (2, 2) | (4, 4) => Some(Tsh::Triangle),
        _ => None,
    }
}

fn tsh_neighbors(p: IPoint) -> Vec<IPoint> {
    let (x, y) = p;
    match (x.rem_euclid(6), y.rem_euclid(6)) {
        (0, 0) => vec![(x + 3, y), (x - 3, y), (x, y + 3), (x, y - 3), (x + 3, y - 3), (x - 3, y + 3)],
        (2, 2) => vec![(x + 1, y - 2), (x - 2, y + 1), (x + 1, y + 1)],
        (4, 4) => vec![(x - 1, y + 2), (x + 2, y - 1), (x - 1, y - 1)],
        (3, 0) => vec![(x - 3, y), (x + 3, y), (x - 1, y + 2), (x + 1, y - 2)],
        (0, 3) => vec![(x, y - 3), (x, y + 3), (x + 2, y - 1), (x - 2, y + 1)],
        _ => vec![(x + 3, y - 3), (x - 3, y + 3), (x - 1, y - 1), (x + 1, y + 1)],
    }
}

/// Dragon of order n on the triangle-square-hexagon dissection: the cells
/// with centers in the lattice parallelogram `0 ≤ i ≤ n + 1/3`,
/// `1/6 ≤ j ≤ n + 1`, after which every cell that touches one of the
/// `i`-sides and is a square, or touches one of the `j`-sides and is not a
/// square, is discarded. The four border stretches are then each lined by a
/// single color.
pub fn dragon(n: i64) -> PlanarGraph {
    let (ihi, jlo, jhi) = (6 * n + 2, 1, 6 * n + 6);
    let inside = |p: IPoint| p.0 >= 0 && p.0 <= ihi && p.1 >= jlo && p.1 <= jhi;
    let mut cells = Vec::new();
    for y in jlo..=jhi {
        for x in 0..=ihi {
            let p = (x, y);
            let Some(kind) = tsh_kind(p) else { continue };
            if !inside(p) {
                continue;
            }
            let square = kind == Tsh::Square;
            let keep = tsh_neighbors(p).into_iter().all(|q| {
                let across_i = q.0 < 0 || q.0 > ihi;
                let across_j = q.1 < jlo || q.1 > jhi;
                !(across_i && square) && !(across_j && !square)
            });
            if keep {
                cells.push(p);
            }
        }
    }
    // reading order: top row first
    cells.sort_by_key(|&(x, y)| (-y, 2 * x + y));
    let mut g = PlanarGraph::new(Embedding::Triangular);
    let index: HashMap<IPoint, usize> =
        cells.iter().map(|&(x, y)| ((x, y), g.add_vertex(pt(2 * x + y, 2 * y, 12)))).collect();
    for &p in &cells {
        if tsh_kind(p) != Some(Tsh::Square) {
            continue;
        }
        for q in tsh_neighbors(p) {
            if let Some(&k) = index.get(&q) {
                g.add_unit_edge(index[&p], k);
            }
        }
    }
    g.edges.sort_by_key(|e| (e.u.min(e.v), e.u.max(e.v)));
    g.with_coloring()
}

/// A cell of the square grid sliced along every third SW-NE diagonal
/// (`y − x ≡ 0 mod 3`): an unsliced unit square, or the upper-left or
/// lower-right half of a sliced one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum QCell {
    Square(i64, i64),
    Upper(i64, i64),
    Lower(i64, i64),
}

fn sliced(x: i64, y: i64) -> bool {
    (y - x).rem_euclid(3) == 0
}

impl QCell {
    /// Centroid ×6.
    fn centroid6(self) -> IPoint {
        match self {
            QCell::Square(x, y) => (6 * x + 3, 6 * y + 3),
            QCell::Upper(x, y) => (6 * x + 2, 6 * y + 4),
            QCell::Lower(x, y) => (6 * x + 4, 6 * y + 2),
        }
    }

    fn neighbors(self) -> Vec<QCell> {
        // the cell of square (x,y) touching its left/top side or right/bottom side
        let left_top = |x, y| if sliced(x, y) { QCell::Upper(x, y) } else { QCell::Square(x, y) };
        let right_bottom = |x, y| if sliced(x, y) { QCell::Lower(x, y) } else { QCell::Square(x, y) };
        match self {
            QCell::Square(x, y) => {
                vec![right_bottom(x - 1, y), left_top(x + 1, y), right_bottom(x, y + 1), left_top(x, y - 1)]
            }
            QCell::Upper(x, y) => vec![right_bottom(x - 1, y), right_bottom(x, y + 1), QCell::Lower(x, y)],
            QCell::Lower(x, y) => vec![left_top(x + 1, y), left_top(x, y - 1), QCell::Upper(x, y)],
        }
    }
}

/// The a,b,c quasihexagon: the cells whose centroids lie in the hexagon with
/// corners on the slicing diagonals and sides `a·(2,−1)`, `b·(1,1)`,
/// `c·(−1,2)`, `a·(−2,1)`, `b·(−1,−1)`, `c·(1,−2)`. Its staircase sides
/// follow the coarse triangular lattice of points on the diagonals.
fn quasihexagon(a: i64, b: i64, c: i64) -> Result<PlanarGraph> {
    let dirs = [(2, -1), (1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2)];
    let lens = [a, b, c, a, b, c];
    let mut corners = vec![(0i64, 0i64)];
    for k in 0..5 {
        let (x, y) = corners[k];
        corners.push((x + lens[k] * dirs[k].0, y + lens[k] * dirs[k].1));
    }
    let inside = |p: IPoint| {
        (0..6).all(|k| {
            let (cx, cy) = (6 * corners[k].0, 6 * corners[k].1);
            dirs[k].0 * (p.1 - cy) - dirs[k].1 * (p.0 - cx) > 0
        })
    };
    let (xlo, xhi) = (corners.iter().map(|p| p.0).min().unwrap(), corners.iter().map(|p| p.0).max().unwrap());
    let (ylo, yhi) = (corners.iter().map(|p| p.1).min().unwrap(), corners.iter().map(|p| p.1).max().unwrap());
    let mut cells = Vec::new();
    for y in (ylo..yhi).rev() {
        for x in xlo..xhi {
            let candidates =
                if sliced(x, y) { vec![QCell::Upper(x, y), QCell::Lower(x, y)] } else { vec![QCell::Square(x, y)] };
            cells.extend(candidates.into_iter().filter(|q| inside(q.centroid6())));
        }
    }
    let mut g = PlanarGraph::new(Embedding::Square);
    let index: HashMap<QCell, usize> = cells
        .iter()
        .map(|&q| {
            let (x, y) = q.centroid6();
            (q, g.add_vertex(pt(x, y, 6)))
        })
        .collect();
    for &q in &cells {
        for n in q.neighbors() {
            if let Some(&k) = index.get(&n) {
                if index[&q] < k {
                    g.add_unit_edge(index[&q], k);
                }
            }
        }
    }
    Ok(g.with_coloring())
}

// ---------------------------------------------------------------------------
// Graph families

/// The triangle graph of order n: lattice points `i, j ≥ 0, i + j < n`.
pub fn triangle_graph(n: i64, augmented: bool) -> PlanarGraph {
    let mut g = PlanarGraph::new(Embedding::Triangular);
    let mut index = HashMap::new();
    for j in (0..n).rev() {
        for i in 0..n - j {
            index.insert((i, j), g.add_vertex(pt(2 * i + j, 2 * j, 2)));
        }
    }
    for j in (0..n).rev() {
        for i in 0..n - j {
            let x = index[&(i, j)];
            for (di, dj) in [(1, 0), (0, 1), (-1, 1)] {
                if let Some(&y) = index.get(&(i + di, j + dj)) {
                    g.add_unit_edge(x, y);
                }
            }
        }
    }
    if augmented {
        for j in (0..n - 1).rev() {
            for i in 0..n - 1 - j {
                let t = Tri::up(i, j);
                let c = g.add_vertex(t.centroid());
                for p in [(i, j), (i + 1, j), (i, j + 1)] {
                    g.add_edge(index[&p], c, crate::graph::int_weight(1), EdgeTag::Inserted);
                }
            }
        }
    }
    g.with_coloring()
}

/// The n-dimensional cube graph (nonplanar for n ≥ 4; flagged nonplanar).
pub fn hypercube(n: usize) -> Result<PlanarGraph> {
    if n == 0 || n > 6 {
        return param_err(format!("hypercube dimension must be in 1..=6, got {n}"));
    }
    let mut g = PlanarGraph::new(Embedding::Square);
    g.planar = false;
    for v in 0..1i64 << n {
        g.add_vertex(pt(v, v.count_ones() as i64, 1));
    }
    for v in 0..1usize << n {
        for k in 0..n {
            let w = v ^ (1 << k);
            if v < w {
                g.add_unit_edge(v, w);
            }
        }
    }
    Ok(g.with_coloring())
}

/// Rectangle grid graph with `m` rows and `n` columns.
pub fn rectangle(m: usize, n: usize) -> Result<PlanarGraph> {
    Ok(square_region(&rectangle_cells(m as i64, n as i64)))
}

/// Majority-color augmentation rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MajorityRule {
    /// Honeycomb: the six nearest like-colored vertices.
    Hex6,
    /// Square grid: the four diagonal like-colored vertices.
    Square4,
}

impl MajorityRule {
    pub fn parse(s: &str) -> Result<MajorityRule> {
        match s {
            "hex6" => Ok(MajorityRule::Hex6),
            "square4" => Ok(MajorityRule::Square4),
            _ => Err(Error::Parse(format!("unknown majority rule '{s}'"))),
        }
    }
}

/// Joins each vertex of the majority color to its nearest like-colored
/// vertices with `majority`-tagged unit edges. Idempotent.
pub fn augment_majority(g: &PlanarGraph, rule: MajorityRule) -> Result<PlanarGraph> {
    let colors = bipartite_coloring(g).ok_or_else(|| Error::Domain("graph is not bipartite".into()))?;
    let white = colors.iter().filter(|&&c| c == Color::White).count();
    let black = colors.len() - white;
    if white == black {
        return Err(Error::Domain("colors are balanced; majority augmentation refused".into()));
    }
    let major = if white > black { Color::White } else { Color::Black };
    let offsets: Vec<Point> = match rule {
        MajorityRule::Hex6 => {
            if g.embedding != Embedding::Triangular {
                return Err(Error::Domain("hex6 augmentation needs a triangular-lattice graph".into()));
            }
            vec![pt(1, 0, 1), pt(1, 2, 2), pt(-1, 2, 2)]
        }
        MajorityRule::Square4 => {
            if g.embedding != Embedding::Square {
                return Err(Error::Domain("square4 augmentation needs a square-lattice graph".into()));
            }
            vec![pt(1, 1, 1), pt(1, -1, 1)]
        }
    };
    let mut out = g.clone();
    for (v, c) in out.vertices.iter_mut().zip(&colors) {
        v.color = *c;
    }
    let by_pos: HashMap<Point, usize> = out.vertices.iter().enumerate().map(|(k, v)| (v.pos, k)).collect();
    for x in 0..out.vertices.len() {
        if colors[x] != major {
            continue;
        }
        for off in &offsets {
            let p = out.vertices[x].pos;
            let q = (p.0 + off.0, p.1 + off.1);
            if let Some(&y) = by_pos.get(&q) {
                if colors[y] == major && out.find_edge(x, y).is_none() {
                    out.add_edge(x, y, crate::graph::int_weight(1), EdgeTag::Majority);
                }
            }
        }
    }
    Ok(out)
}

/// Staircase `0 ≤ c ≤ r < n` of the square grid with diagonals joining the
/// cells of the class containing the corner cell (0,0).
fn right_triangle_augmented(n: i64) -> PlanarGraph {
    let cells: SquareCells = (0..n).flat_map(|r| (0..=r).map(move |c| (r, c))).collect();
    let mut g = square_region(&cells);
    let index: HashMap<(i64, i64), usize> =
        g.vertices.iter().enumerate().map(|(k, v)| ((-v.pos.1.to_integer(), v.pos.0.to_integer()), k)).collect();
    for &(r, c) in &cells {
        if (r + c) % 2 != 0 {
            continue;
        }
        for (dr, dc) in [(1, 1), (1, -1)] {
            if let Some(&y) = index.get(&(r + dr, c + dc)) {
                g.add_edge(index[&(r, c)], y, crate::graph::int_weight(1), EdgeTag::Majority);
            }
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Generation

/// Builds the matching-equivalent graph of a region.
pub fn generate(spec: &RegionSpec) -> Result<PlanarGraph> {
    use Family::*;
    let muts = &spec.mutations;
    let no_mutations = || -> Result<()> {
        if let Some(m) = muts.first() {
            return param_err(format!("mutation {m} is not supported by {}", spec.family.name()));
        }
        Ok(())
    };
    match spec.family {
        Rectangle | AztecDiamond | AztecRectangle | AztecWindow | FoolsDiamond | Pillow0Mod4 | Pillow2Mod4
        | IntrudedSquare => Ok(square_region(&square_family_cells(spec)?)),
        Hexagon | HexagonMinusCentralTriangle | HexagonNotchedSides | HexagonTwoCentral | HexagonGeneral => {
            Ok(triangle_region(&hexagon_family_cells(spec)?))
        }
        TriangleGraph => {
            no_mutations()?;
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("triangle_graph order must be at least 1");
            }
            Ok(triangle_graph(n, false))
        }
        TriangleGraphAugmented => {
            no_mutations()?;
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("triangle_graph_augmented order must be at least 1");
            }
            Ok(triangle_graph(n, true))
        }
        RightTriangleAugmented => {
            no_mutations()?;
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("right_triangle_augmented order must be at least 1");
            }
            Ok(right_triangle_augmented(n))
        }
        HexagonMajority => {
            let s = spec.int_args(6)?;
            let mut cells = hexagon_cells([s[0], s[1], s[2], s[3], s[4], s[5]])?;
            apply_tri_mutations(&mut cells, spec, [s[0], s[1], s[2], s[3], s[4], s[5]])?;
            augment_majority(&triangle_region(&cells), MajorityRule::Hex6)
        }
        AztecRectMajority => {
            no_mutations()?;
            let ints: Vec<i64> =
                spec.args.iter().filter_map(|a| if let Arg::Int(n) = a { Some(*n as i64) } else { None }).collect();
            let words: Vec<&str> =
                spec.args.iter().filter_map(|a| if let Arg::Word(w) = a { Some(w.as_str()) } else { None }).collect();
            let holey = match words[..] {
                [] => false,
                ["holey"] => true,
                _ => return param_err("aztec_rect_majority takes (a,b) or (a,b,holey)"),
            };
            let [a, b] = ints[..] else {
                return param_err("aztec_rect_majority takes (a,b) or (a,b,holey)");
            };
            if a < 1 || b < 1 {
                return param_err("aztec_rect_majority sides must be positive");
            }
            let mut cells = aztec_rectangle_cells(a, b);
            if holey {
                let c = aztec_center(a, b).ok_or_else(|| Error::Parameter("no central square (a+b even)".into()))?;
                remove_cells(&mut cells, &[c], "holey")?;
            } else if (a + b) % 2 == 1 {
                return param_err("aztec_rect_majority needs a+b even (or the holey variant)");
            }
            augment_majority(&square_region(&cells), MajorityRule::Square4)
        }
        Fortress => {
            no_mutations()?;
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("fortress order must be at least 1");
            }
            Ok(polygon_dual(&fortress_cells(n), Embedding::Square, 2, false))
        }
        AztecDungeon => {
            no_mutations()?;
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("aztec_dungeon order must be at least 1");
            }
            Ok(polygon_dual(&aztec_dungeon_cells(n), Embedding::Triangular, 6, true))
        }
        HexagonalDungeon => {
            no_mutations()?;
            let [a, b] = spec.int_args(2)?[..] else { unreachable!() };
            if a < 1 || b < 2 * a {
                return param_err(format!("hexagonal_dungeon({a},{b}) needs a >= 1 and b >= 2a"));
            }
            Ok(polygon_dual(&hexagonal_dungeon_cells(a, b)?, Embedding::Triangular, 6, true))
        }
        Dragon => {
            no_mutations()?;
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("dragon order must be at least 1");
            }
            Ok(dragon(n))
        }
        Quasihexagon => {
            no_mutations()?;
            let [a, b, c] = spec.int_args(3)?[..] else { unreachable!() };
            if a < 1 || b < 1 || c < 1 {
                return param_err("quasihexagon sides must be positive");
            }
            quasihexagon(a, b, c)
        }
        Hypercube => {
            no_mutations()?;
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            hypercube(n as usize)
        }
    }
}

/// Cells of a square-lattice family after its mutations.
pub fn square_family_cells(spec: &RegionSpec) -> Result<SquareCells> {
    use Family::*;
    let mut cells = match spec.family {
        Rectangle => {
            let [m, n] = spec.int_args(2)?[..] else { unreachable!() };
            rectangle_cells(m, n)
        }
        AztecDiamond => {
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            aztec_rectangle_cells(n, n)
        }
        AztecRectangle => {
            let [a, b] = spec.int_args(2)?[..] else { unreachable!() };
            if a < 1 || b < 1 {
                return param_err("aztec_rectangle sides must be positive");
            }
            aztec_rectangle_cells(a, b)
        }
        AztecWindow => {
            let [x, y] = spec.int_args(2)?[..] else { unreachable!() };
            if x > y {
                return param_err(format!("aztec_window inner order {x} exceeds outer order {y}"));
            }
            let mut cells = aztec_rectangle_cells(y, y);
            for (r, c) in aztec_rectangle_cells(x, x) {
                cells.remove(&(r + y - x, c + y - x));
            }
            cells
        }
        FoolsDiamond => {
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("fools_diamond order must be at least 1");
            }
            let m = n - 1;
            (0..=2 * m)
                .flat_map(|r| (0..=2 * m).map(move |c| (r, c)))
                .filter(|&(r, c)| (r - m).abs() + (c - m).abs() <= m)
                .collect()
        }
        Pillow0Mod4 | Pillow2Mod4 => {
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("pillow order must be at least 1");
            }
            pillow_cells(n, spec.family == Pillow2Mod4)
        }
        IntrudedSquare => {
            let v = spec.ints()?;
            let (n, m) = match v[..] {
                [n] => (n as i64, n as i64 / 2),
                [n, m] => (n as i64, m as i64),
                _ => return param_err("intruded_square takes (n) or (n,m)"),
            };
            if n < 1 || m > 2 * n - 1 {
                return param_err(format!("intruded_square({n},{m}) needs n >= 1 and m <= 2n-1"));
            }
            let mut cells = rectangle_cells(2 * n, 2 * n);
            for k in 0..m {
                cells.remove(&(2 * n - 1 - k, k));
                cells.remove(&(2 * n - 1 - k, k + 1));
            }
            cells
        }
        f => return param_err(format!("{} is not a square-lattice family", f.name())),
    };
    for m in &spec.mutations {
        match (spec.family, m) {
            (AztecRectangle, Mutation::CentralSquare) => {
                let [a, b] = spec.int_args(2)?[..] else { unreachable!() };
                let c = aztec_center(a, b).ok_or_else(|| Error::Parameter("no central square (a+b even)".into()))?;
                remove_cells(&mut cells, &[c], "central_square")?;
            }
            (AztecRectangle, Mutation::CentralSquareNeighbor) => {
                let [a, b] = spec.int_args(2)?[..] else { unreachable!() };
                let (r, c) =
                    aztec_center(a, b).ok_or_else(|| Error::Parameter("no central square (a+b even)".into()))?;
                remove_cells(&mut cells, &[(r - 1, c)], "central_square_neighbor")?;
            }
            (AztecDiamond, Mutation::KnightPair) => {
                let [n] = spec.int_args(1)?[..] else { unreachable!() };
                if n < 2 {
                    return param_err("knight_pair needs order at least 2");
                }
                remove_cells(&mut cells, &[(n - 2, n), (n, n - 1)], "knight_pair")?;
            }
            (AztecDiamond, Mutation::BorderMiddles) => {
                let [n] = spec.int_args(1)?[..] else { unreachable!() };
                if n % 2 == 0 {
                    return param_err("border_middles needs an odd order (borders have a middle cell)");
                }
                let r = (n - 1) / 2;
                remove_cells(&mut cells, &[(r, n - 1 - r), (r, n + r)], "border_middles")?;
            }
            (f, m) => return param_err(format!("mutation {m} is not supported by {}", f.name())),
        }
    }
    Ok(cells)
}

fn apply_tri_mutations(cells: &mut TriCells, spec: &RegionSpec, s: [i64; 6]) -> Result<()> {
    for m in &spec.mutations {
        match m {
            Mutation::CentralTriangle => {
                let n = s[0];
                if s != [n, n + 1, n, n + 1, n, n + 1] {
                    return param_err("central_triangle needs sides n,n+1,n,n+1,n,n+1");
                }
                remove_tris(cells, &[central_triangle(n)], "central_triangle")?;
            }
            Mutation::SideNotches => remove_tris(cells, &side_notches(s)?, "side_notches")?,
            Mutation::CentralTwo(p) => {
                let n = s[0];
                if s != [n; 6] || n < 1 {
                    return param_err("central_two needs a regular hexagon");
                }
                remove_tris(cells, &central_two(n, *p), "central_two")?;
            }
            m => return param_err(format!("mutation {m} is not supported by {}", spec.family.name())),
        }
    }
    Ok(())
}

/// Cells of a hexagon family after its mutations.
pub fn hexagon_family_cells(spec: &RegionSpec) -> Result<TriCells> {
    use Family::*;
    let (sides, implied): ([i64; 6], Option<Mutation>) = match spec.family {
        Hexagon => {
            let [a, b, c] = spec.int_args(3)?[..] else { unreachable!() };
            ([a, b, c, a, b, c], None)
        }
        HexagonGeneral => {
            let s = spec.int_args(6)?;
            ([s[0], s[1], s[2], s[3], s[4], s[5]], None)
        }
        HexagonMinusCentralTriangle => {
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("order must be at least 1");
            }
            ([n, n + 1, n, n + 1, n, n + 1], Some(Mutation::CentralTriangle))
        }
        HexagonNotchedSides => {
            let [n] = spec.int_args(1)?[..] else { unreachable!() };
            if n < 1 {
                return param_err("order must be at least 1");
            }
            // Order 1 is the smallest member: the side-3 triangle.
            let (a, b) = (2 * (n - 1), 2 * n + 1);
            ([a, b, a, b, a, b], Some(Mutation::SideNotches))
        }
        HexagonTwoCentral => {
            let (p, n) = match &spec.args[..] {
                [Arg::Word(w), Arg::Int(n)] => (Placement::parse(w)?, *n as i64),
                _ => return param_err("hexagon_two_central takes (opposite|adjacent, n)"),
            };
            if n < 1 {
                return param_err("order must be at least 1");
            }
            ([n; 6], Some(Mutation::CentralTwo(p)))
        }
        f => return param_err(format!("{} is not a hexagon family", f.name())),
    };
    if sides.iter().any(|&s| s < 0) {
        return param_err("hexagon sides must be nonnegative");
    }
    let mut cells = hexagon_cells(sides)?;
    let mut full = spec.clone();
    if let Some(m) = implied {
        full.mutations.insert(0, m);
    }
    apply_tri_mutations(&mut cells, &full, sides)?;
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_embedding;
    use crate::kasteleyn::count_int;

    fn count(s: &str) -> u64 {
        let g = generate(&s.parse().unwrap()).unwrap();
        count_int(&g).unwrap().try_into().unwrap()
    }

    #[test]
    fn spec_round_trip() {
        for s in [
            "aztec_diamond(4)+knight_pair",
            "hexagon_two_central(opposite,3)",
            "aztec_rect_majority(3,4,holey)",
            "hexagon(2,2,2)",
            "aztec_rectangle(4,5)+central_square",
        ] {
            let spec: RegionSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("nonsense(1)".parse::<RegionSpec>().unwrap_err().is_parse());
        assert!("aztec_diamond(1".parse::<RegionSpec>().is_err());
        assert!("aztec_diamond(2)+bogus".parse::<RegionSpec>().is_err());
    }

    #[test]
    fn basic_counts() {
        assert_eq!(count("aztec_diamond(1)"), 2);
        assert_eq!(count("aztec_diamond(3)"), 64);
        assert_eq!(count("hexagon(2,2,2)"), 20);
        assert_eq!(count("hexagon(1,1,1)"), 2);
        assert_eq!(count("rectangle(2,3)"), 3);
        assert_eq!(count("triangle_graph(3)"), 2);
        assert_eq!(count("triangle_graph(4)"), 6);
        assert_eq!(count("fortress(5)"), 31250);
        assert_eq!(count("aztec_dungeon(2)"), 2197);
    }

    #[test]
    fn vertex_counts() {
        for n in 1..6 {
            let g = generate(&RegionSpec::new(Family::AztecDiamond, &[n])).unwrap();
            assert_eq!(g.vertex_count() as u64, 2 * n * (n + 1));
        }
        let g = generate(&"rectangle(3,5)".parse().unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 15);
    }

    #[test]
    fn embeddings_are_planar() {
        for s in ["fortress(4)", "aztec_dungeon(2)", "hexagonal_dungeon(1,2)", "hexagon_majority(2,4,2,4,2,4)"] {
            let g = generate(&s.parse().unwrap()).unwrap();
            validate_embedding(&g).unwrap();
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(generate(&"hexagonal_dungeon(2,3)".parse().unwrap()).is_err());
        assert!(generate(&"hexagon_general(1,2,3,4,5,6)".parse().unwrap()).is_err());
        assert!(generate(&"aztec_diamond(1)+knight_pair".parse().unwrap()).is_err());
        assert!(generate(&"rectangle(2,2)+central_triangle".parse().unwrap()).is_err());
        assert!(augment_majority(&generate(&"hexagon(1,1,1)".parse().unwrap()).unwrap(), MajorityRule::Hex6).is_err());
    }
}
