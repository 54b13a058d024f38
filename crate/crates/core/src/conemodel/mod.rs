//! Cones over finite simplicial complexes.
//!
//! Each maximal simplex with `d` vertices spans an orthant `R^d_{>=0}` with
//! the metric `1/2 max_i |x_i - y_i|`. Orthants are glued along shared faces
//! and all of them share the apex, so the cone is path connected even when
//! two maximal simplices have no vertex in common. Distances are computed by
//! minimising over chains of distinct simplices; within a chain the crossing
//! points on shared faces are found by a small linear program.

mod parse;

use std::collections::{BTreeMap, HashSet};

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};

use crate::{Error, Result};

pub use parse::{parse_complex, write_complex};

/// A finite complex given by its maximal simplices, all of size `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeComplexSpec {
    vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
    dim: usize,
}

impl ConeComplexSpec {
    pub fn new(vertices: Vec<String>, simplices: Vec<Vec<usize>>, dim: usize) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidComplex(m));
        if dim == 0 {
            return bad("dimension must be positive".into());
        }
        if simplices.is_empty() {
            return bad("no maximal simplices".into());
        }
        let mut seen = HashSet::new();
        let mut used = vec![false; vertices.len()];
        for (k, s) in simplices.iter().enumerate() {
            if s.len() != dim {
                return bad(format!("simplex {k} has {} vertices, expected {dim}", s.len()));
            }
            let mut key = s.clone();
            key.sort_unstable();
            key.dedup();
            if key.len() != dim {
                return bad(format!("simplex {k} repeats a vertex"));
            }
            if let Some(&v) = key.iter().find(|&&v| v >= vertices.len()) {
                return bad(format!("simplex {k} uses unknown vertex {v}"));
            }
            for &v in &key {
                used[v] = true;
            }
            if !seen.insert(key) {
                return bad(format!("simplex {k} is listed twice"));
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return bad(format!("vertex {:?} is in no simplex", vertices[v]));
        }
        Ok(Self {
            vertices,
            simplices,
            dim,
        })
    }

    /// Builds a complex from labelled simplices, collecting vertices in order
    /// of first appearance.
    pub fn from_labels(simplices: &[&[&str]]) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut ids = Vec::new();
        for s in simplices {
            let mut row = Vec::new();
            for v in *s {
                let id = match vertices.iter().position(|w| w == v) {
                    Some(i) => i,
                    None => {
                        vertices.push(v.to_string());
                        vertices.len() - 1
                    }
                };
                row.push(id);
            }
            ids.push(row);
        }
        let dim = simplices.first().map_or(0, |s| s.len());
        Self::new(vertices, ids, dim)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    /// Index of the maximal simplex with exactly this vertex set.
    pub fn find_simplex(&self, vertex_set: &[usize]) -> Option<usize> {
        let mut key = vertex_set.to_vec();
        key.sort_unstable();
        self.simplices.iter().position(|s| {
            let mut k = s.clone();
            k.sort_unstable();
            k == key
        })
    }

    fn shared_vertices(&self, a: usize, b: usize) -> Vec<usize> {
        let sb = &self.simplices[b];
        self.simplices[a]
            .iter()
            .copied()
            .filter(|v| sb.contains(v))
            .collect()
    }
}

/// A point in the orthant of a maximal simplex; `coords[i]` belongs to the
/// `i`-th vertex of that simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct ConePoint {
    pub simplex: usize,
    pub coords: Vec<f64>,
}

impl ConePoint {
    pub fn new(simplex: usize, coords: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = coords
            .iter()
            .enumerate()
            .find(|(_, c)| !(**c >= 0.0) || !c.is_finite())
        {
            return Err(Error::BadCoordinate { index, value });
        }
        Ok(Self { simplex, coords })
    }

    pub fn apex(simplex: usize, dim: usize) -> Self {
        Self {
            simplex,
            coords: vec![0.0; dim],
        }
    }

    fn check_in(&self, cc: &ConeComplexSpec) -> Result<()> {
        if self.simplex >= cc.simplex_count() {
            return Err(Error::PointNotInComplex(format!(
                "simplex id {} out of range ({} simplices)",
                self.simplex,
                cc.simplex_count()
            )));
        }
        if self.coords.len() != cc.dim() {
            return Err(Error::PointNotInComplex(format!(
                "{} coordinates for a {}-dimensional orthant",
                self.coords.len(),
                cc.dim()
            )));
        }
        Ok(())
    }

    /// Positive coordinates keyed by vertex id.
    pub fn support(&self, cc: &ConeComplexSpec) -> BTreeMap<usize, f64> {
        cc.simplices[self.simplex]
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| **c > 0.0)
            .map(|(v, c)| (*v, *c))
            .collect()
    }

    /// Equality as points of the cone: same positive coordinates on the same
    /// vertices, regardless of the orthant used to write them down.
    pub fn same_point(&self, other: &ConePoint, cc: &ConeComplexSpec) -> bool {
        self.support(cc) == other.support(cc)
    }

    fn max_coord(&self) -> f64 {
        self.coords.iter().copied().fold(0.0, f64::max)
    }
}

/// Distance within one orthant: `1/2 max_i |u_i - v_i|`.
pub fn orthant_distance(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(0.5 * u.iter().zip(v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// Length of the route through the apex: `1/2 (max x + max y)`.
pub fn apex_route_bound(x: &ConePoint, y: &ConePoint) -> f64 {
    0.5 * (x.max_coord() + y.max_coord())
}

/// Every chain of pairwise distinct simplices from `from` to `to` with at
/// most `max_len` entries, in lexicographic order. Any two simplices are
/// adjacent through the apex.
pub fn chain_enumerate(
    cc: &ConeComplexSpec,
    from: usize,
    to: usize,
    max_len: usize,
) -> Vec<Vec<usize>> {
    fn walk(
        n: usize,
        to: usize,
        max_len: usize,
        chain: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *chain.last().expect("nonempty chain");
        if last == to {
            out.push(chain.clone());
            return;
        }
        if chain.len() == max_len {
            return;
        }
        for next in 0..n {
            if !used[next] {
                used[next] = true;
                chain.push(next);
                walk(n, to, max_len, chain, used, out);
                chain.pop();
                used[next] = false;
            }
        }
    }

    let n = cc.simplex_count();
    let mut out = Vec::new();
    if from >= n || to >= n || max_len == 0 {
        return out;
    }
    let mut used = vec![false; n];
    used[from] = true;
    walk(n, to, max_len, &mut vec![from], &mut used, &mut out);
    out
}

/// A shortest route found by [`path_distance`].
#[derive(Clone, Debug, PartialEq)]
pub struct PathWitness {
    pub chain: Vec<usize>,
    /// `crossing_points[j]` lies on the face shared by `chain[j]` and
    /// `chain[j + 1]`, written in the orthant of `chain[j]`.
    pub crossing_points: Vec<ConePoint>,
    pub total_length: f64,
}

#[derive(Clone, Copy)]
enum Coord {
    Fixed(f64),
    Free(Variable),
}

/// Minimises the length of routes following `chain` over the crossing
/// points, as the linear program
/// `min sum_j t_j` subject to `t_j >= +-(start_v - end_v) / 2` for every
/// vertex `v` of the `j`-th simplex.
fn solve_chain(
    cc: &ConeComplexSpec,
    chain: &[usize],
    x: &ConePoint,
    y: &ConePoint,
) -> Result<(f64, Vec<ConePoint>)> {
    if let [only] = chain {
        debug_assert_eq!(*only, x.simplex);
        return Ok((orthant_distance(&x.coords, &y.coords)?, Vec::new()));
    }
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let bound = x.max_coord().max(y.max_coord());
    let faces: Vec<Vec<(usize, Variable)>> = chain
        .windows(2)
        .map(|w| {
            cc.shared_vertices(w[0], w[1])
                .into_iter()
                .map(|v| (v, lp.add_var(0.0, (0.0, bound))))
                .collect()
        })
        .collect();

    let coord_at = |j: usize, v: usize, at_end: bool| -> Coord {
        // position j of the route: 0 = x, chain.len() = y, otherwise face j - 1
        let k = if at_end { j + 1 } else { j };
        if k == 0 {
            let i = cc.simplices[x.simplex].iter().position(|&w| w == v);
            Coord::Fixed(i.map_or(0.0, |i| x.coords[i]))
        } else if k == chain.len() {
            let i = cc.simplices[y.simplex].iter().position(|&w| w == v);
            Coord::Fixed(i.map_or(0.0, |i| y.coords[i]))
        } else {
            faces[k - 1]
                .iter()
                .find(|(w, _)| *w == v)
                .map_or(Coord::Fixed(0.0), |(_, var)| Coord::Free(*var))
        }
    };

    for (j, &s) in chain.iter().enumerate() {
        let t = lp.add_var(1.0, (0.0, f64::INFINITY));
        for &v in &cc.simplices[s] {
            let (start, end) = (coord_at(j, v, false), coord_at(j, v, true));
            for sign in [1.0, -1.0] {
                // t - sign/2 (start - end) >= 0
                let mut terms = vec![(t, 1.0)];
                let mut rhs = 0.0;
                for (c, w) in [(start, -0.5 * sign), (end, 0.5 * sign)] {
                    match c {
                        Coord::Fixed(val) => rhs -= w * val,
                        Coord::Free(var) => terms.push((var, w)),
                    }
                }
                lp.add_constraint(terms.as_slice(), ComparisonOp::Ge, rhs);
            }
        }
    }

    let sol = lp.solve().map_err(|e| Error::Solver(e.to_string()))?;
    let crossings = chain
        .windows(2)
        .zip(&faces)
        .map(|(w, face)| {
            let coords = cc.simplices[w[0]]
                .iter()
                .map(|v| {
                    face.iter()
                        .find(|(u, _)| u == v)
                        .map_or(0.0, |(_, var)| sol[*var].max(0.0))
                })
                .collect();
            ConePoint {
                simplex: w[0],
                coords,
            }
        })
        .collect();
    Ok((sol.objective().max(0.0), crossings))
}

/// Path distance between two points of the cone over `cc`.
///
/// Every simple chain of at most `cc.simplex_count()` simplices is solved
/// exactly by linear programming, so the only inaccuracy is floating point
/// round-off; `tol` must be positive and bounds the accuracy callers may
/// rely on. The result never exceeds [`apex_route_bound`], and ties between
/// chains go to the first chain in enumeration order.
pub fn path_distance(
    x: &ConePoint,
    y: &ConePoint,
    cc: &ConeComplexSpec,
    tol: f64,
) -> Result<(f64, PathWitness)> {
    if !(tol > 0.0) {
        return Err(Error::BadTolerance(tol));
    }
    x.check_in(cc)?;
    y.check_in(cc)?;

    if x.same_point(y, cc) {
        let (chain, crossing_points) = if x.simplex == y.simplex {
            (vec![x.simplex], Vec::new())
        } else {
            (vec![x.simplex, y.simplex], vec![x.clone()])
        };
        return Ok((
            0.0,
            PathWitness {
                chain,
                crossing_points,
                total_length: 0.0,
            },
        ));
    }

    let mut best: Option<(f64, PathWitness)> = None;
    for chain in chain_enumerate(cc, x.simplex, y.simplex, cc.simplex_count()) {
        let (value, crossing_points) = solve_chain(cc, &chain, x, y)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((
                value,
                PathWitness {
                    chain,
                    crossing_points,
                    total_length: value,
                },
            ));
        }
    }
    let (mut value, mut witness) = best.expect("the direct chain always exists");

    let apex = apex_route_bound(x, y);
    if apex < value {
        value = apex;
        witness = PathWitness {
            chain: vec![x.simplex, y.simplex],
            crossing_points: vec![ConePoint::apex(x.simplex, cc.dim())],
            total_length: apex,
        };
        if x.simplex == y.simplex {
            witness.chain.truncate(1);
        }
    }
    Ok((value, witness))
}

/// Distance on the quotient ray `V(S_{1,1}) = [0, inf)`: `|x - y| / 2`.
pub fn quotient_ray_distance_s11(x: f64, y: f64) -> Result<f64> {
    for (index, value) in [x, y].into_iter().enumerate() {
        if !(value >= 0.0) {
            return Err(Error::BadCoordinate { index, value });
        }
    }
    Ok(0.5 * (x - y).abs())
}

/// A simplicial automorphism, given by the image of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub vertex_image: Vec<usize>,
}

impl SimplicialMap {
    pub fn identity(cc: &ConeComplexSpec) -> Self {
        Self {
            vertex_image: (0..cc.vertices().len()).collect(),
        }
    }

    pub fn validate(&self, cc: &ConeComplexSpec) -> Result<()> {
        let n = cc.vertices().len();
        let mut hit = vec![false; n];
        if self.vertex_image.len() != n {
            return Err(Error::NotAutomorphism(format!(
                "{} images for {n} vertices",
                self.vertex_image.len()
            )));
        }
        for &w in &self.vertex_image {
            if w >= n || std::mem::replace(&mut hit[w], true) {
                return Err(Error::NotAutomorphism("vertex map is not a bijection".into()));
            }
        }
        for (k, s) in cc.simplices().iter().enumerate() {
            let image: Vec<usize> = s.iter().map(|&v| self.vertex_image[v]).collect();
            if cc.find_simplex(&image).is_none() {
                return Err(Error::NotAutomorphism(format!(
                    "image of simplex {k} is not a maximal simplex"
                )));
            }
        }
        Ok(())
    }

    /// Image of a point; coordinates follow their vertices.
    pub fn apply(&self, p: &ConePoint, cc: &ConeComplexSpec) -> Result<ConePoint> {
        p.check_in(cc)?;
        let source = &cc.simplices()[p.simplex];
        let image: Vec<usize> = source.iter().map(|&v| self.vertex_image[v]).collect();
        let target = cc.find_simplex(&image).ok_or_else(|| {
            Error::NotAutomorphism(format!("image of simplex {} is not maximal", p.simplex))
        })?;
        let coords = cc.simplices()[target]
            .iter()
            .map(|w| p.coords[image.iter().position(|u| u == w).expect("same vertex set")])
            .collect();
        Ok(ConePoint {
            simplex: target,
            coords,
        })
    }
}

/// `min` over the supplied automorphisms `phi` of `path_distance(x, phi(y))`:
/// an upper bound for the distance in the quotient by the group they
/// generate, exact once the list covers the relevant orbit of `y`.
pub fn quotient_distance(
    x: &ConePoint,
    y: &ConePoint,
    cc: &ConeComplexSpec,
    orbit_maps: &[SimplicialMap],
    tol: f64,
) -> Result<f64> {
    if orbit_maps.is_empty() {
        return Err(Error::NotAutomorphism("no orbit maps supplied".into()));
    }
    let mut best = f64::INFINITY;
    for phi in orbit_maps {
        phi.validate(cc)?;
        let (d, _) = path_distance(x, &phi.apply(y, cc)?, cc, tol)?;
        best = best.min(d);
    }
    Ok(best)
}
