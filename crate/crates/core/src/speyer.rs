//! Closed forms for excavated labels as sums over perfect matchings.
//!
//! The graph `G` is the planar dual of the triangulated top surface: one
//! vertex per unit triangle, except that the two triangles meeting along a
//! unit edge of AB are merged into a single vertex. Edges of `G` cross the
//! surface's unit edges (those on AB excepted), so the faces of `G` are the
//! surface points: interior points of AB give rhombi, interior points of the
//! two top faces give hexagons, and the `4n` points on the outer boundary
//! give unbounded faces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::excavation::{top_surface, Octahedron, TetPoint};
use crate::hive::{unit_triangles, TriPoint};
use crate::laurent::{surface_variables, LaurentPolynomial, TropicalForm, Variables};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceKind {
    Rhombus,
    Hexagon,
    Exterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Face {
    pub label: TetPoint,
    pub kind: FaceKind,
}

/// A vertex of `G`: a unit triangle of the surface, or the merged pair of
/// triangles on either side of a unit edge of AB.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphVertex {
    Triangle([TetPoint; 3]),
    Collision([TetPoint; 2]),
}

/// An edge of `G`, crossing the surface edge between the two faces it
/// separates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub ends: [usize; 2],
    pub faces: [TetPoint; 2],
}

#[derive(Clone, Debug)]
pub struct ScatterGraph {
    n: usize,
    vars: Variables,
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
    /// Unbounded edges: the vertex they leave and the two boundary faces
    /// they separate.
    pub rays: Vec<(usize, [TetPoint; 2])>,
    pub faces: Vec<Face>,
}

fn face_kind(p: TetPoint) -> FaceKind {
    if p.x == 0 || p.y == 0 {
        FaceKind::Exterior
    } else if on_ab(p) {
        FaceKind::Rhombus
    } else {
        FaceKind::Hexagon
    }
}

fn on_ab(p: TetPoint) -> bool {
    p.z == 0 && p.w == 0
}

pub fn build_scatter_graph(n: usize) -> Result<ScatterGraph> {
    if n < 2 {
        return Err(Error::Precondition("the matching graph needs size at least 2".into()));
    }
    let embeds: [fn(TriPoint) -> TetPoint; 2] =
        [|p| TetPoint::new(p.x, p.y, p.z, 0), |p| TetPoint::new(p.x, p.y, 0, p.z)];
    let mut triangles: BTreeSet<[TetPoint; 3]> = BTreeSet::new();
    for embed in embeds {
        for t in unit_triangles(n) {
            let mut v = t.vertices.map(embed);
            v.sort();
            triangles.insert(v);
        }
    }
    let mut by_edge: BTreeMap<[TetPoint; 2], Vec<[TetPoint; 3]>> = BTreeMap::new();
    for t in &triangles {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            by_edge.entry([t[i], t[j]]).or_default().push(*t);
        }
    }
    let mut vertex_of: HashMap<[TetPoint; 3], GraphVertex> = HashMap::new();
    for (e, ts) in &by_edge {
        if on_ab(e[0]) && on_ab(e[1]) {
            for t in ts {
                vertex_of.insert(*t, GraphVertex::Collision(*e));
            }
        }
    }
    for t in &triangles {
        vertex_of.entry(*t).or_insert(GraphVertex::Triangle(*t));
    }
    let vertices: Vec<GraphVertex> = vertex_of.values().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index: HashMap<GraphVertex, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for (e, ts) in &by_edge {
        if on_ab(e[0]) && on_ab(e[1]) {
            continue;
        }
        match ts.as_slice() {
            [t1, t2] => edges.push(GraphEdge { ends: [index[&vertex_of[t1]], index[&vertex_of[t2]]], faces: *e }),
            [t] => rays.push((index[&vertex_of[t]], *e)),
            _ => unreachable!("a surface edge borders one or two triangles"),
        }
    }
    let faces = top_surface(n).into_iter().map(|p| Face { label: p, kind: face_kind(p) }).collect();
    Ok(ScatterGraph { n, vars: surface_variables(n), vertices, edges, rays, faces })
}

impl ScatterGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn count(&self, kind: FaceKind) -> usize {
        self.faces.iter().filter(|f| f.kind == kind).count()
    }

    /// Number of edges of `G` (bounded or not) around the face at `p`.
    pub fn face_degree(&self, p: TetPoint) -> usize {
        self.edges.iter().filter(|e| e.faces.contains(&p)).count()
            + self.rays.iter().filter(|(_, f)| f.contains(&p)).count()
    }
}

/// The part of `G` over the octahedra that must be removed before the
/// bottom point `target` is exposed.
#[derive(Clone, Debug)]
pub struct EntrySubgraph {
    pub target: Option<TetPoint>,
    vars: Variables,
    /// Faces over removed octahedra, with the number of edges around each.
    pub interior: BTreeMap<TetPoint, usize>,
    pub exterior: BTreeSet<TetPoint>,
    pub vertices: Vec<usize>,
    pub edges: Vec<GraphEdge>,
}

/// A perfect matching, as indices into [`EntrySubgraph::edges`].
pub type Matching = Vec<usize>;

impl EntrySubgraph {
    /// The subgraph with nothing in it: one empty matching, monomial 1.
    pub fn empty(vars: &Variables) -> Self {
        EntrySubgraph {
            target: None,
            vars: vars.clone(),
            interior: BTreeMap::new(),
            exterior: BTreeSet::new(),
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }
}

/// Base points of every octahedron that must go before the one exposing `b`:
/// the octahedra exposing any of its non-bottom vertices, recursively.
pub fn excavation_cone(b: TetPoint) -> BTreeSet<TetPoint> {
    let mut cone = BTreeSet::new();
    let mut stack = vec![TetPoint::new(b.x, b.y, b.z - 1, b.w - 1)];
    while let Some(p) = stack.pop() {
        if !cone.insert(p) {
            continue;
        }
        let o = Octahedron::at(p);
        for v in [o.top, o.a, o.b, o.c, o.d] {
            if v.z >= 1 && v.w >= 1 {
                stack.push(TetPoint::new(v.x, v.y, v.z - 1, v.w - 1));
            }
        }
    }
    cone
}

pub fn entry_subgraph(g: &ScatterGraph, b: TetPoint) -> Result<EntrySubgraph> {
    if b.size() != g.n || !b.is_bottom() {
        return Err(Error::Precondition(format!("{b} is not a bottom point of the size-{} tetrahedron", g.n)));
    }
    if b.z == 0 || b.w == 0 {
        return Err(Error::EmptySubgraph(b.to_string()));
    }
    let interior_faces: BTreeSet<TetPoint> = excavation_cone(b)
        .into_iter()
        .map(|p| Octahedron::at(p).top)
        .filter(TetPoint::is_top)
        .collect();
    let edges: Vec<GraphEdge> =
        g.edges.iter().filter(|e| e.faces.iter().any(|f| interior_faces.contains(f))).copied().collect();
    let vertices: BTreeSet<usize> = edges.iter().flat_map(|e| e.ends).collect();
    let exterior: BTreeSet<TetPoint> =
        edges.iter().flat_map(|e| e.faces).filter(|f| !interior_faces.contains(f)).collect();
    let interior = interior_faces.into_iter().map(|f| (f, g.face_degree(f))).collect();
    Ok(EntrySubgraph {
        target: Some(b),
        vars: g.vars.clone(),
        interior,
        exterior,
        vertices: vertices.into_iter().collect(),
        edges,
    })
}

/// Every perfect matching of the subgraph, by backtracking on the smallest
/// unmatched vertex.
pub fn enumerate_matchings(s: &EntrySubgraph) -> Vec<Matching> {
    let mut incident: BTreeMap<usize, Vec<usize>> = s.vertices.iter().map(|&v| (v, Vec::new())).collect();
    for (i, e) in s.edges.iter().enumerate() {
        for v in e.ends {
            incident.get_mut(&v).expect("edge ends are vertices").push(i);
        }
    }
    let mut out = Vec::new();
    let mut used = BTreeSet::new();
    let mut current = Vec::new();
    extend(s, &incident, &mut used, &mut current, &mut out);
    out
}

fn extend(
    s: &EntrySubgraph,
    incident: &BTreeMap<usize, Vec<usize>>,
    used: &mut BTreeSet<usize>,
    current: &mut Matching,
    out: &mut Vec<Matching>,
) {
    let Some(&v) = s.vertices.iter().find(|v| !used.contains(v)) else {
        let mut m = current.clone();
        m.sort();
        out.push(m);
        return;
    };
    for &i in &incident[&v] {
        let [a, b] = s.edges[i].ends;
        let other = if a == v { b } else { a };
        if other == v || used.contains(&other) {
            continue;
        }
        used.insert(v);
        used.insert(other);
        current.push(i);
        extend(s, incident, used, current, out);
        current.pop();
        used.remove(&v);
        used.remove(&other);
    }
}

/// The monomial of a matching: each interior face with `2m` sides gets
/// exponent `m - 1 - k`, each exterior face `1 - k`, where `k` counts the
/// matched edges on that face.
pub fn matching_monomial(s: &EntrySubgraph, m: &Matching) -> LaurentPolynomial {
    let mut on_face: HashMap<TetPoint, i32> = HashMap::new();
    for &i in m {
        for f in s.edges[i].faces {
            *on_face.entry(f).or_insert(0) += 1;
        }
    }
    let mut exps = vec![0i32; s.vars.len()];
    let slot = |p: &TetPoint| s.vars.index(&p.to_string()).expect("faces are surface points");
    for (f, &deg) in &s.interior {
        exps[slot(f)] = (deg / 2) as i32 - 1 - on_face.get(f).copied().unwrap_or(0);
    }
    for f in &s.exterior {
        exps[slot(f)] = 1 - on_face.get(f).copied().unwrap_or(0);
    }
    LaurentPolynomial::monomial(&s.vars, exps, 1)
}

#[derive(Clone, Debug)]
pub struct ClosedForm {
    pub laurent: LaurentPolynomial,
    pub tropical: TropicalForm,
    pub matchings: usize,
}

pub fn closed_form_of(s: &EntrySubgraph) -> Result<ClosedForm> {
    let matchings = enumerate_matchings(s);
    let mut laurent = LaurentPolynomial::zero(&s.vars);
    for m in &matchings {
        laurent = laurent.add(&matching_monomial(s, m));
    }
    let tropical = laurent.tropicalize()?;
    Ok(ClosedForm { laurent, tropical, matchings: matchings.len() })
}

/// The label exposed at the bottom point `b` as a sum over matchings of its
/// entry subgraph, and the corresponding maximum of linear forms.
pub fn closed_form(g: &ScatterGraph, b: TetPoint) -> Result<ClosedForm> {
    closed_form_of(&entry_subgraph(g, b)?)
}
