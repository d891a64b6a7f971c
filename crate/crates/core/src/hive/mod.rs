//! Hives: integer labelings of the triangular lattice `tri_n` satisfying
//! every rhombus inequality.
//!
//! Points `[x, y, z]` have `x + y + z = n`. Drawn in the plane, `[n,0,0]` is
//! the lower-left corner, `[0,n,0]` the apex and `[0,0,n]` the lower-right
//! corner. Row `k` of the triangle (counting from the apex) holds the points
//! with `y = n - k`, listed left to right, i.e. with `x` descending.

mod search;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use self::search::{count_hives, enumerate_hives, HiveSearch};
use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriPoint {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl TriPoint {
    pub const fn new(x: usize, y: usize, z: usize) -> Self {
        TriPoint { x, y, z }
    }

    pub fn size(&self) -> usize {
        self.x + self.y + self.z
    }

    fn coords(&self) -> [usize; 3] {
        [self.x, self.y, self.z]
    }

    fn from_coords(c: [usize; 3]) -> Self {
        TriPoint::new(c[0], c[1], c[2])
    }
}

impl fmt::Display for TriPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.x, self.y, self.z)
    }
}

/// All `(n+2)(n+1)/2` points of `tri_n`, row by row from the apex, each row
/// left to right.
pub fn tri_points(n: usize) -> Vec<TriPoint> {
    (0..=n)
        .flat_map(|k| (0..=k).map(move |z| TriPoint::new(k - z, n - k, z)))
        .collect()
}

/// Position of `p` in [`tri_points`] order.
pub fn tri_index(n: usize, p: TriPoint) -> usize {
    let k = n - p.y;
    k * (k + 1) / 2 + p.z
}

pub(crate) fn tri_len(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// The three rhombus families, named by the rotation that carries the first
/// family onto them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Deg0,
    Deg120,
    Deg240,
}

impl Orientation {
    pub fn degrees(self) -> u32 {
        match self {
            Orientation::Deg0 => 0,
            Orientation::Deg120 => 120,
            Orientation::Deg240 => 240,
        }
    }
}

/// A unit rhombus: two unit triangles sharing an edge. The shared edge is the
/// short diagonal; its endpoints are the obtuse vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rhombus {
    pub obtuse: [TriPoint; 2],
    pub acute: [TriPoint; 2],
    pub orientation: Orientation,
}

impl Rhombus {
    /// Obtuse sum minus acute sum; the rhombus inequality says this is `>= 0`.
    pub fn slack(&self, label: impl Fn(TriPoint) -> i64) -> i64 {
        label(self.obtuse[0]) + label(self.obtuse[1]) - label(self.acute[0]) - label(self.acute[1])
    }

    pub fn vertices(&self) -> [TriPoint; 4] {
        [self.obtuse[0], self.obtuse[1], self.acute[0], self.acute[1]]
    }
}

/// Every unit rhombus of `tri_n`, each exactly once.
///
/// For a base point `p` with `|p| = n - 2` and a cyclic rotation `(i, j, k)`
/// of the coordinates, the rhombus has obtuse vertices `p+e_i+e_k`,
/// `p+e_j+e_k` and acute vertices `p+e_i+e_j`, `p+2e_k`.
pub fn rhombus_list(n: usize) -> Vec<Rhombus> {
    if n < 2 {
        return Vec::new();
    }
    let families = [
        (0usize, 1usize, 2usize, Orientation::Deg0),
        (1, 2, 0, Orientation::Deg120),
        (2, 0, 1, Orientation::Deg240),
    ];
    let mut out = Vec::with_capacity(3 * n * (n - 1) / 2);
    for &(i, j, k, orientation) in &families {
        for p in tri_points(n - 2) {
            let at = |a: usize, b: usize| {
                let mut c = p.coords();
                c[a] += 1;
                c[b] += 1;
                TriPoint::from_coords(c)
            };
            out.push(Rhombus {
                obtuse: [at(i, k), at(j, k)],
                acute: [at(i, j), at(k, k)],
                orientation,
            });
        }
    }
    out
}

/// A unit triangle of `tri_n`. Upright triangles are `[x+1,y,z], [x,y+1,z],
/// [x,y,z+1]`; inverted ones are `[x-1,y,z], [x,y-1,z], [x,y,z-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitTriangle {
    pub upright: bool,
    /// Vertices in the order (x-vertex, y-vertex, z-vertex): for an upright
    /// triangle the lower-left, apex and lower-right corners.
    pub vertices: [TriPoint; 3],
}

pub fn unit_triangles(n: usize) -> Vec<UnitTriangle> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for p in tri_points(n - 1) {
        out.push(UnitTriangle {
            upright: true,
            vertices: [
                TriPoint::new(p.x + 1, p.y, p.z),
                TriPoint::new(p.x, p.y + 1, p.z),
                TriPoint::new(p.x, p.y, p.z + 1),
            ],
        });
    }
    for p in tri_points(n + 1) {
        if p.x >= 1 && p.y >= 1 && p.z >= 1 {
            out.push(UnitTriangle {
                upright: false,
                vertices: [
                    TriPoint::new(p.x - 1, p.y, p.z),
                    TriPoint::new(p.x, p.y - 1, p.z),
                    TriPoint::new(p.x, p.y, p.z - 1),
                ],
            });
        }
    }
    out
}

/// An integer labeling of `tri_n`. Construction does not check the rhombus
/// inequalities; use [`validate_hive`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hive {
    n: usize,
    labels: Vec<i64>,
}

impl Hive {
    pub fn from_fn(n: usize, mut f: impl FnMut(TriPoint) -> i64) -> Self {
        Hive { n, labels: tri_points(n).into_iter().map(&mut f).collect() }
    }

    /// Labels in [`tri_points`] order.
    pub fn from_labels(n: usize, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != tri_len(n) {
            return Err(Error::Malformed(format!(
                "size {n} needs {} labels, got {}",
                tri_len(n),
                labels.len()
            )));
        }
        Ok(Hive { n, labels })
    }

    pub fn from_map(n: usize, map: &HashMap<TriPoint, i64>) -> Result<Self> {
        let labels = tri_points(n)
            .into_iter()
            .map(|p| map.get(&p).copied().ok_or_else(|| Error::Malformed(format!("missing label for {p}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Hive { n, labels })
    }

    /// `rows[k]` lists row `y = n - k` left to right.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Malformed("a hive needs at least one row".into()));
        }
        let n = rows.len() - 1;
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(Error::Malformed(format!(
                    "row {k} must have {} labels, got {}",
                    k + 1,
                    row.len()
                )));
            }
        }
        Ok(Hive { n, labels: rows.concat() })
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..=self.n)
            .map(|k| {
                let start = k * (k + 1) / 2;
                self.labels[start..start + k + 1].to_vec()
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn get(&self, p: TriPoint) -> i64 {
        debug_assert_eq!(p.size(), self.n);
        self.labels[tri_index(self.n, p)]
    }

    pub fn at(&self, x: usize, y: usize, z: usize) -> i64 {
        self.get(TriPoint::new(x, y, z))
    }

    /// Label at the lower-left corner.
    pub fn base(&self) -> i64 {
        self.at(self.n, 0, 0)
    }

    pub fn translated(&self, k: i64) -> Hive {
        Hive { n: self.n, labels: self.labels.iter().map(|&v| v + k).collect() }
    }

    /// Translate so the lower-left corner is zero.
    pub fn normalized(&self) -> Hive {
        self.translated(-self.base())
    }

    /// Differences along the Northwest side, lower-left to apex.
    pub fn nw_differences(&self) -> Vec<i64> {
        let n = self.n;
        (1..=n).map(|i| self.at(n - i, i, 0) - self.at(n - i + 1, i - 1, 0)).collect()
    }

    /// Differences along the Northeast side, apex to lower-right.
    pub fn ne_differences(&self) -> Vec<i64> {
        let n = self.n;
        (1..=n).map(|i| self.at(0, n - i, i) - self.at(0, n - i + 1, i - 1)).collect()
    }

    /// Differences along the South side, lower-left to lower-right.
    pub fn south_differences(&self) -> Vec<i64> {
        let n = self.n;
        (1..=n).map(|i| self.at(n - i, 0, i) - self.at(n - i + 1, 0, i - 1)).collect()
    }

    pub fn to_json(&self) -> HiveJson {
        HiveJson { n: self.n, rows: self.rows() }
    }
}

impl fmt::Display for Hive {
    /// The triangle drawn row by row with the apex on top.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        let width = self.labels.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for (k, row) in rows.iter().enumerate() {
            let pad = (self.n - k) * (width + 1) / 2;
            write!(f, "{:pad$}", "")?;
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Serialized form: `{"n": n, "rows": [[apex], ..., [bottom row]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiveJson {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl TryFrom<HiveJson> for Hive {
    type Error = Error;

    fn try_from(j: HiveJson) -> Result<Self> {
        if j.rows.len() != j.n + 1 {
            return Err(Error::Malformed(format!(
                "size {} needs {} rows, got {}",
                j.n,
                j.n + 1,
                j.rows.len()
            )));
        }
        Hive::from_rows(&j.rows)
    }
}

impl Serialize for Hive {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hive {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = HiveJson::deserialize(d)?;
        Hive::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Result of checking all rhombus inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Rhombus>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_hive(h: &Hive) -> Verdict {
    let violations = rhombus_list(h.n).into_iter().filter(|r| r.slack(|p| h.get(p)) < 0).collect();
    Verdict { violations }
}

/// Boundary data of a hive: the three difference sequences and the label at
/// the lower-left corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub lambda: Weight,
    pub mu: Weight,
    pub nu: Weight,
    pub base: i64,
}

impl BoundarySpec {
    pub fn new(lambda: Weight, mu: Weight, nu: Weight) -> Self {
        BoundarySpec { lambda, mu, nu, base: 0 }
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub(crate) fn check_lengths(&self) -> Result<()> {
        let n = self.lambda.len();
        if self.mu.len() != n || self.nu.len() != n {
            return Err(Error::LengthMismatch(format!(
                "lambda, mu, nu have lengths {}, {}, {}",
                n,
                self.mu.len(),
                self.nu.len()
            )));
        }
        Ok(())
    }

    /// Whether `sum(lambda) + sum(mu) = sum(nu)`.
    pub fn sums_match(&self) -> bool {
        self.lambda.sum() + self.mu.sum() == self.nu.sum()
    }
}

/// Reads the boundary of a valid hive. Fails only if a side is not weakly
/// decreasing, which cannot happen for a valid hive.
pub fn boundary_of(h: &Hive) -> Result<BoundarySpec> {
    Ok(BoundarySpec {
        lambda: Weight::new(h.nw_differences())?,
        mu: Weight::new(h.ne_differences())?,
        nu: Weight::new(h.south_differences())?,
        base: h.base(),
    })
}
