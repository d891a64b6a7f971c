//! Honeycombs dual to hives, their axioms, boundary data and SVG drawings.
//!
//! Points live in the plane `a + b + c = 0`. Edges run parallel to
//! `NW = (0,1,-1)`, `NE = (-1,0,1)` or `S = (1,-1,0)`, along which the first,
//! second or third coordinate respectively stays constant.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hive::{unit_triangles, validate_hive, Hive, TriPoint};
use crate::weight::Weight;

pub type PlanePoint = [i64; 3];

/// The six directions parallel to the coordinate axes of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    NW,
    NE,
    S,
    SE,
    SW,
    N,
}

impl Direction {
    pub const ALL: [Direction; 6] =
        [Direction::NW, Direction::NE, Direction::S, Direction::SE, Direction::SW, Direction::N];

    pub fn vector(self) -> PlanePoint {
        match self {
            Direction::NW => [0, 1, -1],
            Direction::NE => [-1, 0, 1],
            Direction::S => [1, -1, 0],
            Direction::SE => [0, -1, 1],
            Direction::SW => [1, 0, -1],
            Direction::N => [-1, 1, 0],
        }
    }

    pub fn reverse(self) -> Direction {
        match self {
            Direction::NW => Direction::SE,
            Direction::NE => Direction::SW,
            Direction::S => Direction::N,
            Direction::SE => Direction::NW,
            Direction::SW => Direction::NE,
            Direction::N => Direction::S,
        }
    }

    /// The coordinate that stays constant along this direction.
    pub fn constant_axis(self) -> usize {
        match self {
            Direction::NW | Direction::SE => 0,
            Direction::NE | Direction::SW => 1,
            Direction::S | Direction::N => 2,
        }
    }

    /// Whether this is one of the three directions allowed for rays.
    pub fn is_outward(self) -> bool {
        matches!(self, Direction::NW | Direction::NE | Direction::S)
    }

    /// `(dir, t)` with `delta = t * dir` and `t > 0`, if `delta` is a
    /// nonzero multiple of a coordinate direction.
    pub fn of_delta(delta: PlanePoint) -> Option<(Direction, i64)> {
        let t = delta.iter().map(|v| v.abs()).max()?;
        if t == 0 {
            return None;
        }
        Direction::ALL.into_iter().find(|d| d.vector().map(|v| v * t) == delta).map(|d| (d, t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HoneyEdge {
    pub from: usize,
    /// `None` for a ray leaving `from` in direction `dir`.
    pub to: Option<usize>,
    pub dir: Direction,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Honeycomb {
    pub vertices: Vec<PlanePoint>,
    pub edges: Vec<HoneyEdge>,
    /// Zero-length dual edges absorbed when coinciding vertices were merged.
    pub degenerate: usize,
}

impl Honeycomb {
    pub fn constant_of(&self, e: &HoneyEdge) -> i64 {
        self.vertices[e.from][e.dir.constant_axis()]
    }

    pub fn rays(&self) -> impl Iterator<Item = &HoneyEdge> {
        self.edges.iter().filter(|e| e.to.is_none())
    }

    pub fn segments(&self) -> impl Iterator<Item = &HoneyEdge> {
        self.edges.iter().filter(|e| e.to.is_some())
    }
}

fn sub(p: PlanePoint, q: PlanePoint) -> PlanePoint {
    [p[0] - q[0], p[1] - q[1], p[2] - q[2]]
}

/// Whether `p` lies on the open ray/segment from `start` in `dir`, strictly
/// beyond `start` and (for a segment) strictly before `len`.
fn strictly_on(start: PlanePoint, dir: Direction, len: Option<i64>, p: PlanePoint) -> bool {
    match Direction::of_delta(sub(p, start)) {
        Some((d, t)) => d == dir && len.is_none_or(|l| t < l),
        None => false,
    }
}

/// Builds a honeycomb from raw pieces: merges coinciding vertices, drops
/// zero-length segments, splits edges at vertices lying on them and adds up
/// multiplicities of coinciding pieces.
fn canonicalize(points: Vec<PlanePoint>, raw: Vec<(usize, Option<usize>, Direction)>) -> Honeycomb {
    let mut ids: BTreeMap<PlanePoint, usize> = BTreeMap::new();
    for p in &points {
        let next = ids.len();
        ids.entry(*p).or_insert(next);
    }
    let mut vertices = vec![[0; 3]; ids.len()];
    for (p, &i) in &ids {
        vertices[i] = *p;
    }
    let mut degenerate = 0;
    let mut pieces: BTreeMap<(PlanePoint, Option<PlanePoint>, Direction), u32> = BTreeMap::new();
    let mut stack: Vec<(PlanePoint, Option<PlanePoint>, Direction)> = Vec::new();
    for (from, to, dir) in raw {
        let a = points[from];
        match to {
            Some(t) if points[t] == a => degenerate += 1,
            Some(t) => {
                let b = points[t];
                // store every segment in an outward direction
                match Direction::of_delta(sub(b, a)) {
                    Some((d, _)) if d.is_outward() => stack.push((a, Some(b), d)),
                    Some((d, _)) => stack.push((b, Some(a), d.reverse())),
                    None => unreachable!("dual edges are parallel to a coordinate direction"),
                }
            }
            None => stack.push((a, None, dir)),
        }
    }
    while let Some((a, b, dir)) = stack.pop() {
        let len = b.map(|b| Direction::of_delta(sub(b, a)).expect("nonzero").1);
        let split = vertices
            .iter()
            .filter(|&&v| strictly_on(a, dir, len, v))
            .min_by_key(|&&v| Direction::of_delta(sub(v, a)).expect("on the line").1);
        match split {
            Some(&v) => {
                stack.push((a, Some(v), dir));
                stack.push((v, b, dir));
            }
            None => *pieces.entry((a, b, dir)).or_insert(0) += 1,
        }
    }
    let edges = pieces
        .into_iter()
        .map(|((a, b, dir), mult)| HoneyEdge { from: ids[&a], to: b.map(|b| ids[&b]), dir, mult })
        .collect();
    Honeycomb { vertices, edges, degenerate }
}

/// The honeycomb dual to a valid hive: one vertex per unit triangle, one edge
/// across each unit edge of the triangle, rays across the boundary edges.
pub fn hive_to_honeycomb(h: &Hive) -> Result<Honeycomb> {
    if !validate_hive(h).is_valid() {
        return Err(Error::Precondition("hive violates a rhombus inequality".into()));
    }
    let n = h.n();
    if n == 0 {
        return Ok(Honeycomb { vertices: Vec::new(), edges: Vec::new(), degenerate: 0 });
    }
    let tris = unit_triangles(n);
    let mut points = Vec::with_capacity(tris.len());
    // hive edge (as sorted endpoint pair) -> triangles containing it
    let mut by_edge: BTreeMap<[TriPoint; 2], Vec<usize>> = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        let [px, py, pz] = t.vertices;
        let [hx, hy, hz] = [h.get(px), h.get(py), h.get(pz)];
        points.push(if t.upright { [hy - hx, hz - hy, hx - hz] } else { [hx - hy, hy - hz, hz - hx] });
        for (p, q) in [(px, py), (py, pz), (px, pz)] {
            let mut key = [p, q];
            key.sort();
            by_edge.entry(key).or_default().push(i);
        }
    }
    let mut raw = Vec::new();
    for (key, ts) in by_edge {
        // x<->y edges are dual to NW edges, y<->z to NE, z<->x to S
        let dir = if key[0].z == key[1].z {
            Direction::NW
        } else if key[0].x == key[1].x {
            Direction::NE
        } else {
            Direction::S
        };
        match ts.as_slice() {
            [a, b] => raw.push((*a, Some(*b), dir)),
            [a] => raw.push((*a, None, dir)),
            _ => unreachable!("a unit edge borders one or two triangles"),
        }
    }
    Ok(canonicalize(points, raw))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoneycombVerdict {
    /// Vertices where the weighted directions of the incident edges do not
    /// sum to zero.
    pub tension: Vec<usize>,
    /// Rays pointing in a reversed direction.
    pub reversed_rays: Vec<usize>,
    /// Segments that are not a positive multiple of their direction, or with
    /// multiplicity zero.
    pub malformed: Vec<usize>,
    /// Vertices off the plane `a + b + c = 0`.
    pub off_plane: Vec<usize>,
    /// Number of rays (with multiplicity) in the NW, NE and S directions.
    pub ray_counts: [u32; 3],
}

impl HoneycombVerdict {
    pub fn is_valid(&self) -> bool {
        self.tension.is_empty()
            && self.reversed_rays.is_empty()
            && self.malformed.is_empty()
            && self.off_plane.is_empty()
            && self.ray_counts[0] == self.ray_counts[1]
            && self.ray_counts[1] == self.ray_counts[2]
    }
}

pub fn validate_honeycomb(hc: &Honeycomb) -> HoneycombVerdict {
    let mut pull = vec![[0i64; 3]; hc.vertices.len()];
    let mut v = HoneycombVerdict {
        tension: Vec::new(),
        reversed_rays: Vec::new(),
        malformed: Vec::new(),
        off_plane: hc.vertices.iter().enumerate().filter(|(_, p)| p.iter().sum::<i64>() != 0).map(|(i, _)| i).collect(),
        ray_counts: [0; 3],
    };
    for (i, e) in hc.edges.iter().enumerate() {
        let d = e.dir.vector();
        let m = e.mult as i64;
        if e.mult == 0 {
            v.malformed.push(i);
        }
        for k in 0..3 {
            pull[e.from][k] += m * d[k];
        }
        match e.to {
            Some(t) => {
                let ok = matches!(Direction::of_delta(sub(hc.vertices[t], hc.vertices[e.from])), Some((dir, _)) if dir == e.dir);
                if !ok && !v.malformed.contains(&i) {
                    v.malformed.push(i);
                }
                for k in 0..3 {
                    pull[t][k] -= m * d[k];
                }
            }
            None => {
                if e.dir.is_outward() {
                    v.ray_counts[e.dir.constant_axis()] += e.mult;
                } else {
                    v.reversed_rays.push(i);
                }
            }
        }
    }
    v.tension = pull.iter().enumerate().filter(|(_, p)| **p != [0, 0, 0]).map(|(i, _)| i).collect();
    v
}

/// Constant coordinates of the rays in each outward direction, repeated by
/// multiplicity and sorted decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoneycombBoundary {
    pub nw: Vec<i64>,
    pub ne: Vec<i64>,
    pub s: Vec<i64>,
}

impl HoneycombBoundary {
    /// The hive boundary `(lambda, mu, nu)` this corresponds to: NW rays
    /// carry `lambda`, NE rays `mu`, and S rays the negatives of `nu`.
    pub fn weights(&self) -> Result<(Weight, Weight, Weight)> {
        let mut nu: Vec<i64> = self.s.iter().map(|c| -c).collect();
        nu.sort_unstable_by(|a, b| b.cmp(a));
        Ok((Weight::new(self.nw.clone())?, Weight::new(self.ne.clone())?, Weight::new(nu)?))
    }
}

pub fn boundary_coordinates(hc: &Honeycomb) -> HoneycombBoundary {
    let mut sides: [Vec<i64>; 3] = Default::default();
    for e in hc.rays().filter(|e| e.dir.is_outward()) {
        for _ in 0..e.mult {
            sides[e.dir.constant_axis()].push(hc.constant_of(e));
        }
    }
    for s in &mut sides {
        s.sort_unstable_by(|a, b| b.cmp(a));
    }
    let [nw, ne, s] = sides;
    HoneycombBoundary { nw, ne, s }
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    to: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    ray: Option<Direction>,
    mult: u32,
    #[serde(rename = "const")]
    constant: i64,
}

#[derive(Serialize, Deserialize)]
struct HoneycombJson {
    vertices: Vec<PlanePoint>,
    edges: Vec<EdgeJson>,
}

impl Serialize for Honeycomb {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HoneycombJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    from: e.from,
                    to: e.to,
                    ray: e.to.is_none().then_some(e.dir),
                    mult: e.mult,
                    constant: self.constant_of(e),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Honeycomb {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = HoneycombJson::deserialize(d)?;
        let mut edges = Vec::new();
        for e in j.edges {
            let at = |i: usize| j.vertices.get(i).copied().ok_or_else(|| D::Error::custom(format!("no vertex {i}")));
            let from = at(e.from)?;
            let dir = match (e.to, e.ray) {
                (Some(t), None) => {
                    Direction::of_delta(sub(at(t)?, from))
                        .ok_or_else(|| D::Error::custom("edge is not parallel to a coordinate direction"))?
                        .0
                }
                (None, Some(dir)) => dir,
                _ => return Err(D::Error::custom("an edge needs exactly one of \"to\" and \"ray\"")),
            };
            if from[dir.constant_axis()] != e.constant {
                return Err(D::Error::custom("constant coordinate does not match the vertex"));
            }
            edges.push(HoneyEdge { from: e.from, to: e.to, dir, mult: e.mult });
        }
        Ok(Honeycomb { vertices: j.vertices, edges, degenerate: 0 })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Pixels per unit of length.
    pub scale: f64,
    /// Drawn length of rays, in units.
    pub ray_length: f64,
    pub margin: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { scale: 40.0, ray_length: 1.5, margin: 20.0 }
    }
}

fn project(p: [f64; 3]) -> (f64, f64) {
    let c = p[2];
    (3f64.sqrt() / 2.0 * c, -(p[1] + c / 2.0))
}

/// An SVG 1.1 drawing: one `line` per edge (rays cut at a fixed length) and a
/// numeral beside every edge of multiplicity at least 2.
pub fn render_svg(hc: &Honeycomb, opts: &SvgOptions) -> String {
    let to_f = |p: PlanePoint| p.map(|v| v as f64);
    let mut lines = Vec::new();
    for e in &hc.edges {
        let a = to_f(hc.vertices[e.from]);
        let b = match e.to {
            Some(t) => to_f(hc.vertices[t]),
            None => {
                let d = e.dir.vector();
                [0, 1, 2].map(|k| a[k] + opts.ray_length * d[k] as f64)
            }
        };
        let (x1, y1) = project(a);
        let (x2, y2) = project(b);
        lines.push((x1 * opts.scale, y1 * opts.scale, x2 * opts.scale, y2 * opts.scale, e.mult));
    }
    let xs = lines.iter().flat_map(|l| [l.0, l.2]);
    let ys = lines.iter().flat_map(|l| [l.1, l.3]);
    let (min_x, max_x) = xs.fold((0f64, 0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let (min_y, max_y) = ys.fold((0f64, 0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let (ox, oy) = (opts.margin - min_x, opts.margin - min_y);
    let width = max_x - min_x + 2.0 * opts.margin;
    let height = max_y - min_y + 2.0 * opts.margin;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">"
    );
    out.push_str("<g stroke=\"black\" stroke-width=\"2\" stroke-linecap=\"round\">\n");
    for (x1, y1, x2, y2, _) in &lines {
        let _ = writeln!(
            out,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>",
            x1 + ox,
            y1 + oy,
            x2 + ox,
            y2 + oy
        );
    }
    out.push_str("</g>\n<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n");
    for (x1, y1, x2, y2, m) in &lines {
        if *m >= 2 {
            let _ = writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\">{m}</text>",
                (x1 + x2) / 2.0 + ox + 4.0,
                (y1 + y2) / 2.0 + oy - 4.0
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
