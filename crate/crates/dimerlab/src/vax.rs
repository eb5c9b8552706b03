//! VAX text format and SVG drawings.
//!
//! A VAX document is a block of text in which each letter is a vertex.
//! `X` marks a cell of the square lattice; it is adjacent to the `X`s
//! directly left, right, above and below. `A` and `V` mark upward and
//! downward triangles of the triangular lattice, laid out in horizontal
//! strips: a letter is adjacent to the letters immediately left and right
//! of it, and an `A` is adjacent to the `V` directly below it (the two share
//! the `A`'s base). Spaces are holes.
//!
//! ```text
//!  XX        AVA
//! XXXX      AVAVA
//! XXXX      VAVAV
//!  XX        VAV
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeTag, Embedding, PlanarGraph, Point};
use crate::region::{square_region, triangle_region, SquareCells, Tri, TriCells};

/// Parses a VAX document into the dual graph of the region it depicts.
pub fn parse_vax(text: &str) -> Result<PlanarGraph> {
    let mut squares = SquareCells::new();
    let mut letters: Vec<(i64, i64, bool)> = Vec::new();
    for (r, line) in text.lines().enumerate() {
        for (c, ch) in line.chars().enumerate() {
            let (r, c) = (r as i64, c as i64);
            match ch {
                'X' => {
                    squares.insert((r, c));
                }
                'A' => letters.push((r, c, true)),
                'V' => letters.push((r, c, false)),
                ' ' | '\t' | '\r' => {}
                other => {
                    return Err(Error::Parse(format!(
                        "unsupported character '{other}' at row {}, column {}",
                        r + 1,
                        c + 1
                    )))
                }
            }
        }
    }
    if !squares.is_empty() && !letters.is_empty() {
        return Err(Error::Parse("a document cannot mix X with A/V letters".into()));
    }
    if letters.is_empty() {
        return Ok(square_region(&squares));
    }
    // Strip j = top - r. An up triangle in strip j sits at column
    // 2i + j + 1 (+ offset), a down triangle at 2i + j + 2 (+ offset), so all
    // A's share one parity of r + c and all V's the other.
    let top = letters.iter().map(|l| l.0).max().unwrap_or(0);
    let (r0, c0, up0) = letters[0];
    let a_parity = (r0 + c0 + if up0 { 0 } else { 1 }).rem_euclid(2);
    let offset = (top - r0 + 1 - c0 + if up0 { 0 } else { 1 }).rem_euclid(2);
    let mut cells = TriCells::new();
    for &(r, c, up) in &letters {
        let parity = (r + c + if up { 0 } else { 1 }).rem_euclid(2);
        if parity != a_parity {
            return Err(Error::Parse(format!(
                "dangling triangle pairing: '{}' at row {}, column {} has the wrong orientation for its position",
                if up { 'A' } else { 'V' },
                r + 1,
                c + 1
            )));
        }
        let j = top - r;
        let i = (c + offset - j - if up { 1 } else { 2 }).div_euclid(2);
        cells.insert(Tri { i, j, up });
    }
    Ok(triangle_region(&cells))
}

fn off_lattice<T>(why: impl Into<String>) -> Result<T> {
    Err(Error::Domain(format!("graph is not a VAX-representable lattice region: {}", why.into())))
}

fn int_point(p: &Point) -> Option<(i64, i64)> {
    (p.0.is_integer() && p.1.is_integer()).then(|| (p.0.to_integer(), p.1.to_integer()))
}

/// Recovers the triangle whose centroid is at `p`.
fn tri_at(p: &Point) -> Option<Tri> {
    let j = p.1.floor().to_integer();
    let frac = p.1 - Rational64::from_integer(j);
    let up = if frac == Rational64::new(1, 3) {
        true
    } else if frac == Rational64::new(2, 3) {
        false
    } else {
        return None;
    };
    let shift = Rational64::new(if up { 1 } else { 2 }, 2);
    let i = p.0 - Rational64::new(j, 2) - shift;
    i.is_integer().then(|| Tri { i: i.to_integer(), j, up })
}

/// Checks that `g` is exactly the dual graph of the given cells.
fn same_structure(g: &PlanarGraph, dual: &PlanarGraph) -> bool {
    if g.vertex_count() != dual.vertex_count() || g.edge_count() != dual.edge_count() {
        return false;
    }
    let key = |h: &PlanarGraph| -> BTreeSet<(Point, Point)> {
        h.edges
            .iter()
            .map(|e| {
                let (a, b) = (h.vertices[e.u].pos, h.vertices[e.v].pos);
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    };
    key(g) == key(dual)
}

fn plain(g: &PlanarGraph) -> bool {
    g.planar
        && g.edges.iter().all(|e| e.tag == EdgeTag::Lattice && e.weight == BigRational::from_integer(BigInt::from(1)))
}

/// Writes a square- or triangular-lattice region graph as a VAX document.
pub fn emit_vax(g: &PlanarGraph) -> Result<String> {
    if !plain(g) {
        return off_lattice("weighted, nonplanar or augmented edges");
    }
    if g.vertex_count() == 0 {
        return Ok(String::new());
    }
    let mut rows: BTreeMap<i64, BTreeMap<i64, char>> = BTreeMap::new();
    match g.embedding {
        Embedding::Square => {
            let mut cells = SquareCells::new();
            for v in &g.vertices {
                let Some((x, y)) = int_point(&v.pos) else { return off_lattice("non-integer vertex position") };
                cells.insert((-y, x));
            }
            if cells.len() != g.vertex_count() || !same_structure(g, &square_region(&cells)) {
                return off_lattice("edges do not match the square lattice");
            }
            for (r, c) in cells {
                rows.entry(r).or_default().insert(c, 'X');
            }
        }
        Embedding::Triangular => {
            let mut cells = TriCells::new();
            for v in &g.vertices {
                let Some(t) = tri_at(&v.pos) else { return off_lattice("vertex is not a triangle centroid") };
                cells.insert(t);
            }
            if cells.len() != g.vertex_count() || !same_structure(g, &triangle_region(&cells)) {
                return off_lattice("edges do not match the honeycomb");
            }
            for t in cells {
                rows.entry(-t.j).or_default().insert(t.vax_col(), if t.up { 'A' } else { 'V' });
            }
        }
    }
    let cmin = rows.values().flat_map(|r| r.keys().copied()).min().unwrap_or(0);
    let rmin = *rows.keys().next().unwrap_or(&0);
    let rmax = *rows.keys().last().unwrap_or(&0);
    let mut out = String::new();
    for r in rmin..=rmax {
        if let Some(row) = rows.get(&r) {
            let mut line = String::new();
            for (&c, &ch) in row {
                while (line.chars().count() as i64) < c - cmin {
                    line.push(' ');
                }
                line.push(ch);
            }
            out.push_str(&line);
        }
        out.push('\n');
    }
    Ok(out)
}

/// What to draw on top of a graph.
#[derive(Clone, Debug)]
pub enum Overlay<'a> {
    None,
    /// Edge indices of a matching, drawn as thick tiles.
    Matching(&'a [usize]),
    /// One probability per edge, printed at the edge midpoint.
    Probabilities(&'a [BigRational]),
}

const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;

fn draw_xy(g: &PlanarGraph, p: &Point) -> (f64, f64) {
    let x = p.0.to_f64().unwrap_or(0.0);
    let y = p.1.to_f64().unwrap_or(0.0);
    match g.embedding {
        Embedding::Square => (x, y),
        Embedding::Triangular => (x, y * 3f64.sqrt() / 2.0),
    }
}

/// Renders `g` as a deterministic SVG 1.1 document.
pub fn emit_svg(g: &PlanarGraph, overlay: Overlay<'_>) -> Result<String> {
    if !g.planar {
        return Err(Error::Domain("cannot draw a graph without a planar embedding".into()));
    }
    match overlay {
        Overlay::Matching(m) => {
            if let Some(&e) = m.iter().find(|&&e| e >= g.edge_count()) {
                return Err(Error::Domain(format!("matching references edge {e}, graph has {}", g.edge_count())));
            }
        }
        Overlay::Probabilities(p) => {
            if p.len() != g.edge_count() {
                return Err(Error::Domain(format!("{} probabilities given for {} edges", p.len(), g.edge_count())));
            }
        }
        Overlay::None => {}
    }
    let pts: Vec<(f64, f64)> = g.vertices.iter().map(|v| draw_xy(g, &v.pos)).collect();
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(&(x, y)) = pts.first() {
        (xmin, xmax, ymin, ymax) = (x, x, y, y);
    }
    for &(x, y) in &pts {
        xmin = xmin.min(x);
        xmax = xmax.max(x);
        ymin = ymin.min(y);
        ymax = ymax.max(y);
    }
    let tx = |x: f64| MARGIN + (x - xmin) * SCALE;
    let ty = |y: f64| MARGIN + (ymax - y) * SCALE;
    let width = 2.0 * MARGIN + (xmax - xmin) * SCALE;
    let height = 2.0 * MARGIN + (ymax - ymin) * SCALE;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    );
    if let Overlay::Matching(m) = overlay {
        for &e in m {
            let (a, b) = (pts[g.edges[e].u], pts[g.edges[e].v]);
            let _ = writeln!(
                s,
                r##"<line class="tile" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#d9a441" stroke-width="16" stroke-linecap="round"/>"##,
                tx(a.0),
                ty(a.1),
                tx(b.0),
                ty(b.1)
            );
        }
    }
    for e in &g.edges {
        let (a, b) = (pts[e.u], pts[e.v]);
        let dash = if e.tag == EdgeTag::Lattice { "" } else { r#" stroke-dasharray="4 3""# };
        let _ = writeln!(
            s,
            r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#555555" stroke-width="1.5"{dash}/>"##,
            tx(a.0),
            ty(a.1),
            tx(b.0),
            ty(b.1)
        );
    }
    for (v, &(x, y)) in g.vertices.iter().zip(&pts) {
        let fill = match v.color {
            Color::White => "#ffffff",
            Color::Black => "#222222",
            Color::Uncolored => "#888888",
        };
        let _ = writeln!(
            s,
            r##"<circle cx="{:.3}" cy="{:.3}" r="4" fill="{fill}" stroke="#222222" stroke-width="1"/>"##,
            tx(x),
            ty(y)
        );
    }
    if let Overlay::Probabilities(p) = overlay {
        for (e, prob) in g.edges.iter().zip(p) {
            let (a, b) = (pts[e.u], pts[e.v]);
            let label = if prob.is_zero() { "0".to_string() } else { prob.to_string() };
            let _ = writeln!(
                s,
                r#"<text x="{:.3}" y="{:.3}" font-family="monospace" font-size="9" text-anchor="middle">{label}</text>"#,
                tx((a.0 + b.0) / 2.0),
                ty((a.1 + b.1) / 2.0) - 2.0
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
