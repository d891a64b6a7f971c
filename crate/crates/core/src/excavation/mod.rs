//! Excavation of the size-`n` tetrahedron by the octahedron recurrence.
//!
//! Vertices are `A=[n,0,0,0]`, `B=[0,n,0,0]`, `C=[0,0,n,0]`, `D=[0,0,0,n]`
//! and the height of a point is `x + y`. The top faces are `{w=0}` (a hive
//! in `HIVE_{lambda mu}^sigma`) and `{z=0}` (a hive in `HIVE_{sigma nu}^pi`),
//! glued along the edge AB. Removing every piece from the top down exposes
//! the bottom faces `{x=0}` and `{y=0}`, which carry hives in
//! `HIVE_{mu nu}^tau` and `HIVE_{lambda tau}^pi`.

mod star;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use self::star::{verify_star, StarReport};
use crate::error::{Error, Result};
use crate::hive::{rhombus_list, tri_points, validate_hive, Hive, TriPoint};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 4]", into = "[usize; 4]")]
pub struct TetPoint {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub w: usize,
}

impl TetPoint {
    pub const fn new(x: usize, y: usize, z: usize, w: usize) -> Self {
        TetPoint { x, y, z, w }
    }

    pub fn coords(&self) -> [usize; 4] {
        [self.x, self.y, self.z, self.w]
    }

    pub fn size(&self) -> usize {
        self.x + self.y + self.z + self.w
    }

    pub fn height(&self) -> usize {
        self.x + self.y
    }

    /// On one of the two top faces.
    pub fn is_top(&self) -> bool {
        self.z == 0 || self.w == 0
    }

    /// On one of the two bottom faces.
    pub fn is_bottom(&self) -> bool {
        self.x == 0 || self.y == 0
    }

    fn plus(&self, i: usize) -> TetPoint {
        let mut c = self.coords();
        c[i] += 1;
        c.into()
    }

    fn minus(&self, i: usize) -> Option<TetPoint> {
        let mut c = self.coords();
        c[i] = c[i].checked_sub(1)?;
        Some(c.into())
    }
}

impl From<[usize; 4]> for TetPoint {
    fn from(c: [usize; 4]) -> Self {
        TetPoint::new(c[0], c[1], c[2], c[3])
    }
}

impl From<TetPoint> for [usize; 4] {
    fn from(p: TetPoint) -> Self {
        p.coords()
    }
}

impl fmt::Display for TetPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{}]", self.x, self.y, self.z, self.w)
    }
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;
const W: usize = 3;

/// All points of `tet_n` in lexicographic order.
pub fn tet_points(n: usize) -> Vec<TetPoint> {
    let mut out = Vec::new();
    for x in 0..=n {
        for y in 0..=n - x {
            for z in 0..=n - x - y {
                out.push(TetPoint::new(x, y, z, n - x - y - z));
            }
        }
    }
    out
}

/// The points of the two top faces in lexicographic order.
pub fn top_surface(n: usize) -> Vec<TetPoint> {
    tet_points(n).into_iter().filter(TetPoint::is_top).collect()
}

/// The points of the two bottom faces in lexicographic order.
pub fn bottom_surface(n: usize) -> Vec<TetPoint> {
    tet_points(n).into_iter().filter(TetPoint::is_bottom).collect()
}

/// The labels of one octahedron: top `e`, bottom `e'`, and the two opposite
/// equatorial pairs `(a, c)` and `(b, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Octahedron {
    pub top: TetPoint,
    pub bottom: TetPoint,
    pub a: TetPoint,
    pub b: TetPoint,
    pub c: TetPoint,
    pub d: TetPoint,
}

impl Octahedron {
    /// The octahedron with base point `p` (`|p| = n - 2`).
    pub fn at(p: TetPoint) -> Self {
        Octahedron {
            top: p.plus(X).plus(Y),
            bottom: p.plus(Z).plus(W),
            a: p.plus(X).plus(Z),
            c: p.plus(Y).plus(W),
            b: p.plus(X).plus(W),
            d: p.plus(Y).plus(Z),
        }
    }
}

/// A piece of the decomposition of `tet_n`: upright unit tetrahedra
/// (`p + e_i`, `|p| = n-1`), octahedra (base `|p| = n-2`) and inverted unit
/// tetrahedra (`r + 1 - e_i`, `|r| = n-3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "base", rename_all = "lowercase")]
pub enum Piece {
    Up(TetPoint),
    Oct(TetPoint),
    Down(TetPoint),
}

impl Piece {
    pub fn base(&self) -> TetPoint {
        match *self {
            Piece::Up(p) | Piece::Oct(p) | Piece::Down(p) => p,
        }
    }

    /// Pieces that sit directly above this one and must be removed first.
    pub fn blockers(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        match *self {
            Piece::Oct(p) => {
                out.push(Piece::Up(p.plus(X)));
                out.push(Piece::Up(p.plus(Y)));
                out.extend(p.minus(Z).map(Piece::Down));
                out.extend(p.minus(W).map(Piece::Down));
            }
            Piece::Up(q) => {
                out.extend(q.minus(W).map(Piece::Oct));
                out.extend(q.minus(Z).map(Piece::Oct));
            }
            Piece::Down(r) => {
                out.push(Piece::Oct(r.plus(X)));
                out.push(Piece::Oct(r.plus(Y)));
            }
        }
        out
    }
}

/// Every piece of `tet_n`.
pub fn pieces(n: usize) -> Vec<Piece> {
    let mut out = Vec::new();
    if n >= 1 {
        out.extend(tet_points(n - 1).into_iter().map(Piece::Up));
    }
    if n >= 2 {
        out.extend(tet_points(n - 2).into_iter().map(Piece::Oct));
    }
    if n >= 3 {
        out.extend(tet_points(n - 3).into_iter().map(Piece::Down));
    }
    out
}

/// How excavation chooses the next piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExcavationOrder {
    /// Sweep base heights from the top down; within a height, inverted
    /// tetrahedra, then octahedra, then upright tetrahedra.
    Layer,
    /// Uniformly random among the currently removable pieces.
    Random(u64),
}

pub fn layer_order(n: usize) -> Vec<Piece> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for level in (0..n).rev() {
        let at = |size: usize| -> Vec<TetPoint> {
            if size > n {
                return Vec::new();
            }
            tet_points(n - size).into_iter().filter(|p| p.height() == level).collect()
        };
        out.extend(at(3).into_iter().map(Piece::Down));
        out.extend(at(2).into_iter().map(Piece::Oct));
        out.extend(at(1).into_iter().map(Piece::Up));
    }
    out
}

/// A random admissible order: repeatedly removes a uniformly chosen piece
/// among those with nothing left above them.
pub fn random_order(n: usize, rng: &mut impl Rng) -> Vec<Piece> {
    let all = pieces(n);
    let pos: HashMap<Piece, usize> = all.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut waiting = vec![0usize; all.len()];
    let mut unblocks = vec![Vec::new(); all.len()];
    for (i, p) in all.iter().enumerate() {
        for b in p.blockers() {
            waiting[i] += 1;
            unblocks[pos[&b]].push(i);
        }
    }
    let mut ready: Vec<usize> = (0..all.len()).filter(|&i| waiting[i] == 0).collect();
    let mut out = Vec::with_capacity(all.len());
    while !ready.is_empty() {
        let i = ready.swap_remove(rng.gen_range(0..ready.len()));
        out.push(all[i]);
        for &j in &unblocks[i] {
            waiting[j] -= 1;
            if waiting[j] == 0 {
                ready.push(j);
            }
        }
    }
    out
}

pub fn order_for(n: usize, order: ExcavationOrder) -> Vec<Piece> {
    match order {
        ExcavationOrder::Layer => layer_order(n),
        ExcavationOrder::Random(seed) => {
            use rand::SeedableRng;
            random_order(n, &mut rand::rngs::StdRng::seed_from_u64(seed))
        }
    }
}

/// Whether `order` lists every piece of `tet_n` once, each after all of its
/// blockers.
pub fn is_admissible(n: usize, order: &[Piece]) -> bool {
    let all = pieces(n);
    if order.len() != all.len() {
        return false;
    }
    let mut done: HashMap<Piece, bool> = all.into_iter().map(|p| (p, false)).collect();
    for p in order {
        match done.get(p) {
            Some(false) => {}
            _ => return false,
        }
        if p.blockers().iter().any(|b| !done[b]) {
            return false;
        }
        done.insert(*p, true);
    }
    true
}

/// The update applied when an octahedron is removed. The same rule, applied
/// to `(e', a, b, c, d)`, must recover `e`.
pub trait OctahedronRule<T> {
    fn apply(&self, e: &T, a: &T, b: &T, c: &T, d: &T) -> Result<T>;
}

/// `e' = max(a + c, b + d) - e`.
pub fn octahedron_step(e: i64, a: i64, b: i64, c: i64, d: i64) -> i64 {
    (a + c).max(b + d) - e
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TropicalRule;

impl OctahedronRule<i64> for TropicalRule {
    fn apply(&self, e: &i64, a: &i64, b: &i64, c: &i64, d: &i64) -> Result<i64> {
        Ok(octahedron_step(*e, *a, *b, *c, *d))
    }
}

/// A partial labeling of `tet_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetLabeling<T = i64> {
    n: usize,
    labels: BTreeMap<TetPoint, T>,
}

impl<T: Clone> TetLabeling<T> {
    pub fn new(n: usize) -> Self {
        TetLabeling { n, labels: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: TetPoint) -> Option<&T> {
        self.labels.get(&p)
    }

    pub fn set(&mut self, p: TetPoint, v: T) -> Result<()> {
        if p.size() != self.n {
            return Err(Error::Malformed(format!("{p} is not a point of the size-{} tetrahedron", self.n)));
        }
        self.labels.insert(p, v);
        Ok(())
    }

    pub fn labels(&self) -> impl Iterator<Item = (&TetPoint, &T)> {
        self.labels.iter()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn need(&self, p: TetPoint) -> Result<&T> {
        self.labels.get(&p).ok_or_else(|| Error::Precondition(format!("no label at {p}")))
    }

    /// Restriction to the points with `w = 0` and with `z = 0`, if labeled.
    pub fn is_top_labeled(&self) -> bool {
        top_surface(self.n).iter().all(|p| self.labels.contains_key(p))
    }

    pub fn is_bottom_labeled(&self) -> bool {
        bottom_surface(self.n).iter().all(|p| self.labels.contains_key(p))
    }
}

impl<T: Serialize> Serialize for TetLabeling<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a, T> {
            p: TetPoint,
            v: &'a T,
        }
        #[derive(Serialize)]
        struct Doc<'a, T> {
            n: usize,
            labels: Vec<Entry<'a, T>>,
        }
        Doc { n: self.n, labels: self.labels.iter().map(|(p, v)| Entry { p: *p, v }).collect() }.serialize(s)
    }
}

impl<'de, T: Deserialize<'de> + Clone> Deserialize<'de> for TetLabeling<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Entry<T> {
            p: TetPoint,
            v: T,
        }
        #[derive(Deserialize)]
        struct Doc<T> {
            n: usize,
            labels: Vec<Entry<T>>,
        }
        let doc = Doc::<T>::deserialize(d)?;
        let mut t = TetLabeling::new(doc.n);
        for e in doc.labels {
            t.set(e.p, e.v).map_err(serde::de::Error::custom)?;
        }
        Ok(t)
    }
}

/// One step of an excavation trace. `exposed` is the newly labeled bottom
/// point of an octahedron; tetrahedra expose nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEvent<T = i64> {
    pub piece: Piece,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exposed: Option<TetPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<T>,
}

/// Two hives sharing an edge: the top faces (`shared = sigma`) or the bottom
/// faces (`shared = tau`) of the tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HivePair {
    pub left: Hive,
    pub right: Hive,
    pub shared: Weight,
}

impl HivePair {
    /// Both hives translated to lower-left label 0.
    pub fn normalized(&self) -> HivePair {
        HivePair { left: self.left.normalized(), right: self.right.normalized(), shared: self.shared.clone() }
    }
}

/// Labels the two top faces. `h1` goes on `{w=0}` with `[x,y,z,0]` carrying
/// `h1[x,z,y]`; `h2` goes on `{z=0}` with `[x,y,0,w]` carrying `h2[x,y,w]`,
/// translated so both agree at `A`. The South side of `h1` and the Northwest
/// side of `h2` must coincide.
pub fn assemble_top(h1: &Hive, h2: &Hive) -> Result<TetLabeling<i64>> {
    let n = h1.n();
    if h2.n() != n {
        return Err(Error::Gluing(format!("hives of sizes {} and {}", n, h2.n())));
    }
    if h1.south_differences() != h2.nw_differences() {
        return Err(Error::Gluing(format!(
            "South side {} of the first hive differs from Northwest side {} of the second",
            crate::weight::format_entries(&h1.south_differences()),
            crate::weight::format_entries(&h2.nw_differences())
        )));
    }
    for h in [h1, h2] {
        if !validate_hive(h).is_valid() {
            return Err(Error::Precondition("top face labels are not a valid hive".into()));
        }
    }
    let shift = h1.base() - h2.base();
    let mut t = TetLabeling::new(n);
    for p in tri_points(n) {
        t.set(TetPoint::new(p.x, p.z, p.y, 0), h1.get(p))?;
        t.set(TetPoint::new(p.x, p.y, 0, p.z), h2.get(p) + shift)?;
    }
    Ok(t)
}

/// Labels the two bottom faces. `g1` goes on `{x=0}` with `[0,b,a,c]`
/// carrying `g1[a,b,c]`; `g2` goes on `{y=0}` with `[a,0,b,c]` carrying
/// `g2[a,b,c]`. `g1` is translated to agree with `g2` at `C`.
pub fn assemble_bottom(g1: &Hive, g2: &Hive) -> Result<TetLabeling<i64>> {
    let n = g1.n();
    if g2.n() != n {
        return Err(Error::Gluing(format!("hives of sizes {} and {}", n, g2.n())));
    }
    if g1.south_differences() != g2.ne_differences() {
        return Err(Error::Gluing(format!(
            "South side {} of the first hive differs from Northeast side {} of the second",
            crate::weight::format_entries(&g1.south_differences()),
            crate::weight::format_entries(&g2.ne_differences())
        )));
    }
    let shift = g2.at(0, n, 0) - g1.base();
    let mut t = TetLabeling::new(n);
    for p in tri_points(n) {
        t.set(TetPoint::new(0, p.y, p.x, p.z), g1.get(p) + shift)?;
        t.set(TetPoint::new(p.x, 0, p.y, p.z), g2.get(p))?;
    }
    Ok(t)
}

fn read_face(n: usize, t: &TetLabeling<i64>, place: impl Fn(TriPoint) -> TetPoint) -> Result<Hive> {
    let labels = tri_points(n).into_iter().map(|p| t.need(place(p)).copied()).collect::<Result<Vec<_>>>()?;
    Hive::from_labels(n, labels)
}

/// Reads the top faces back as a pair (`left = h1`, `right = h2`).
pub fn top_faces(t: &TetLabeling<i64>) -> Result<HivePair> {
    let n = t.n();
    let left = read_face(n, t, |p| TetPoint::new(p.x, p.z, p.y, 0))?;
    let right = read_face(n, t, |p| TetPoint::new(p.x, p.y, 0, p.z))?;
    let shared = Weight::new(left.south_differences())?;
    Ok(HivePair { left, right, shared })
}

/// Reads the bottom faces as a pair (`left = g1` on `{x=0}`, `right = g2` on
/// `{y=0}`).
pub fn bottom_faces(t: &TetLabeling<i64>) -> Result<HivePair> {
    let n = t.n();
    let left = read_face(n, t, |p| TetPoint::new(0, p.y, p.x, p.z))?;
    let right = read_face(n, t, |p| TetPoint::new(p.x, 0, p.y, p.z))?;
    let shared = Weight::new(left.south_differences())?;
    Ok(HivePair { left, right, shared })
}

/// Removes the pieces in `order`, labeling each exposed octahedron bottom by
/// `rule`. Returns the labeling of the whole tetrahedron.
pub fn excavate_labels<T: Clone, R: OctahedronRule<T>>(
    t: &TetLabeling<T>,
    order: &[Piece],
    rule: &R,
    mut trace: Option<&mut Vec<TraceEvent<T>>>,
) -> Result<TetLabeling<T>> {
    let n = t.n();
    if !t.is_top_labeled() {
        return Err(Error::Precondition("the top surface is not fully labeled".into()));
    }
    if !is_admissible(n, order) {
        return Err(Error::Precondition("the removal order is not admissible".into()));
    }
    let mut out = t.clone();
    for piece in order {
        let mut event = TraceEvent { piece: *piece, exposed: None, value: None };
        if let Piece::Oct(p) = piece {
            let o = Octahedron::at(*p);
            let v = rule.apply(out.need(o.top)?, out.need(o.a)?, out.need(o.b)?, out.need(o.c)?, out.need(o.d)?)?;
            if trace.is_some() {
                event.exposed = Some(o.bottom);
                event.value = Some(v.clone());
            }
            out.labels.insert(o.bottom, v);
        }
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(event);
        }
    }
    Ok(out)
}

/// Runs the octahedra in reverse layer order, recovering each top label from
/// the bottom one. Returns the labeling of the whole tetrahedron.
pub fn fill_labels<T: Clone, R: OctahedronRule<T>>(t: &TetLabeling<T>, rule: &R) -> Result<TetLabeling<T>> {
    if !t.is_bottom_labeled() {
        return Err(Error::Precondition("the bottom surface is not fully labeled".into()));
    }
    let mut out = t.clone();
    for piece in layer_order(t.n()).into_iter().rev() {
        if let Piece::Oct(p) = piece {
            let o = Octahedron::at(p);
            let v = rule.apply(out.need(o.bottom)?, out.need(o.a)?, out.need(o.b)?, out.need(o.c)?, out.need(o.d)?)?;
            out.labels.insert(o.top, v);
        }
    }
    Ok(out)
}

/// Every unit rhombus lying in a slice `{coordinate = k}` whose four
/// vertices are labeled and which violates its rhombus inequality.
pub fn audit_rhombi(t: &TetLabeling<i64>) -> Vec<[TetPoint; 4]> {
    let n = t.n();
    let mut bad = Vec::new();
    for coord in 0..4 {
        for k in 0..n.saturating_sub(1) {
            let m = n - k;
            let embed = |p: TriPoint| {
                let mut c = [0usize; 4];
                c[coord] = k;
                let mut vals = [p.x, p.y, p.z].into_iter();
                for (i, slot) in c.iter_mut().enumerate() {
                    if i != coord {
                        *slot = vals.next().expect("three free coordinates");
                    }
                }
                TetPoint::from(c)
            };
            for r in rhombus_list(m) {
                let pts = r.vertices().map(embed);
                let vals: Option<Vec<i64>> = pts.iter().map(|p| t.get(*p).copied()).collect();
                if let Some(v) = vals {
                    if v[0] + v[1] < v[2] + v[3] {
                        bad.push(pts);
                    }
                }
            }
        }
    }
    bad
}

/// Excavates an assembled top labeling and returns the bottom pair, with the
/// labels as found (`g1` has lower-left label `T[C]`, `g2` has `T[A]`).
pub fn excavate(t: &TetLabeling<i64>) -> Result<HivePair> {
    excavate_in_order(t, ExcavationOrder::Layer, None)
}

pub fn excavate_in_order(
    t: &TetLabeling<i64>,
    order: ExcavationOrder,
    trace: Option<&mut Vec<TraceEvent<i64>>>,
) -> Result<HivePair> {
    let full = excavate_labels(t, &order_for(t.n(), order), &TropicalRule, trace)?;
    debug_assert!(audit_rhombi(&full).is_empty(), "excavation produced a violated rhombus");
    bottom_faces(&full)
}

/// Inverse of [`excavate`]: rebuilds the top pair from a bottom pair. The
/// result is anchored at `g2`'s lower-left label.
pub fn fill(bottom: &HivePair) -> Result<HivePair> {
    let t = assemble_bottom(&bottom.left, &bottom.right)?;
    let full = fill_labels(&t, &TropicalRule)?;
    top_faces(&full)
}
