//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's trace recursion or path solver: traces
//! come from explicit SL(2, R) words and cone distances from breadth-first
//! search on a king-move lattice.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use conelab::conemodel::{apex_route_bound, path_distance, ConeComplexSpec, ConePoint};
use conelab::hypgeom::{from_fenchel_nielsen, FNPoint, TraceCoord};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// A random structure with pants length in `[0.2, 2.5]` and at most two
/// turns of twist.
pub fn random_structure(r: &mut impl Rng) -> TraceCoord {
    let length = r.gen_range(0.2..2.5);
    let turns = r.gen_range(-2.0..2.0);
    from_fenchel_nielsen(FNPoint::new(length, turns * length).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// Matrix oracle

/// A 2x2 matrix times `exp(scale)`, renormalised after every product so that
/// long words neither overflow nor underflow.
#[derive(Clone, Copy, Debug)]
pub struct Scaled {
    m: [[f64; 2]; 2],
    scale: f64,
}

impl Scaled {
    pub fn new(m: [[f64; 2]; 2]) -> Self {
        Self { m, scale: 0.0 }.normalized()
    }

    fn normalized(mut self) -> Self {
        let big = self.m.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
        if big > 0.0 {
            for v in self.m.iter_mut().flatten() {
                *v /= big;
            }
            self.scale += big.ln();
        }
        self
    }

    pub fn mul(&self, o: &Scaled) -> Scaled {
        let (a, b) = (&self.m, &o.m);
        let mut m = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Scaled {
            m,
            scale: self.scale + o.scale,
        }
        .normalized()
    }

    pub fn inverse(&self) -> Scaled {
        let [[a, b], [c, d]] = self.m;
        let det = a * d - b * c;
        // (s M)^{-1} = s^{-1} M^{-1}
        Scaled {
            m: [[d / det, -b / det], [-c / det, a / det]],
            scale: -self.scale,
        }
        .normalized()
    }

    /// `ln |trace|`.
    pub fn ln_trace(&self) -> f64 {
        (self.m[0][0] + self.m[1][1]).abs().ln() + self.scale
    }

    pub fn trace(&self) -> f64 {
        self.ln_trace().exp()
    }

    pub fn min_entry(&self) -> f64 {
        self.m.iter().flatten().fold(f64::INFINITY, |a, v| a.min(*v))
    }
}

/// `2 arccosh(t / 2)` from `ln t`, valid for huge `t`.
pub fn length_from_ln_trace(lt: f64) -> f64 {
    if lt < 20.0 {
        2.0 * (lt.exp() / 2.0).acosh()
    } else {
        // t/2 + sqrt(t^2/4 - 1) = t (1/2 + sqrt(1/4 - 1/t^2))
        2.0 * (lt + (0.5 + (0.25 - (-2.0 * lt).exp()).sqrt()).ln())
    }
}

/// Generators `A`, `B` with `tr A = x`, `tr B = y`, `tr AB = z`, using
/// `A = [[lambda, 1], [0, 1/lambda]]`. Entries of `B` are made positive when
/// possible so that traces of positive words involve no cancellation.
pub fn generators(x: f64, y: f64, z: f64) -> (Scaled, Scaled) {
    let lambda = (x + (x * x - 4.0).sqrt()) / 2.0;
    let a_mat = [[lambda, 1.0], [0.0, 1.0 / lambda]];
    let solve = |a: f64| {
        let d = y - a;
        let c = z - lambda * a - d / lambda;
        let b = (a * d - 1.0) / c;
        [[a, b], [c, d]]
    };
    let mut best = solve(y / 2.0);
    let score = |m: &[[f64; 2]; 2]| m.iter().flatten().fold(f64::INFINITY, |acc, v| acc.min(*v));
    for i in 1..400 {
        let cand = solve(y * f64::from(i) / 400.0);
        if cand.iter().flatten().all(|v| v.is_finite()) && score(&cand) > score(&best) {
            best = cand;
        }
    }
    (Scaled::new(a_mat), Scaled::new(best))
}

/// `tr [A, B]`, which is `-2` exactly for a once-punctured torus.
pub fn commutator_trace(a: &Scaled, b: &Scaled) -> f64 {
    let c = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
    (c.m[0][0] + c.m[1][1]) * c.scale.exp()
}

/// Matrix words for the Farey tree of one marking: visits every reduced
/// `p/q` with `0 < p/q < inf` and `max(p, q) <= h` with `ln tr` of its word.
pub fn positive_words(a: &Scaled, b: &Scaled, h: i64, f: &mut impl FnMut(i64, i64, f64)) {
    // (left vector, right vector, left word, right word)
    let mut stack = vec![((0i64, 1i64), (1i64, 0i64), *a, *b)];
    while let Some((l, r, wl, wr)) = stack.pop() {
        let m = (l.0 + r.0, l.1 + r.1);
        if m.0.max(m.1) > h {
            continue;
        }
        let wm = wl.mul(&wr);
        f(m.0, m.1, wm.ln_trace());
        stack.push((l, m, wl, wm));
        stack.push((m, r, wm, wr));
    }
}

/// Oracle `ln trace` of every slope `p/q` of height at most `h`, keyed by
/// `(p, q)` with `q > 0` or `(1, 0)`.
pub fn oracle_ln_traces(x: f64, y: f64, z: f64, h: i64) -> HashMap<(i64, i64), f64> {
    let mut out = HashMap::new();
    let (a, b) = generators(x, y, z);
    out.insert((0, 1), a.ln_trace());
    out.insert((1, 0), b.ln_trace());
    positive_words(&a, &b, h, &mut |p, q, lt| {
        out.insert((p, q), lt);
    });
    // slope -p/q of (A, B) is slope p/q of (A, B^{-1}), whose triple is
    // (x, y, xy - z)
    let (a, b) = generators(x, y, x * y - z);
    positive_words(&a, &b, h, &mut |p, q, lt| {
        out.insert((-p, q), lt);
    });
    out
}

// ---------------------------------------------------------------------------
// Lattice oracle for cone path distances

/// Lattice points of the cone over `cc` with coordinates in
/// `{0, 1/n, ..., 1}`, identified along shared faces, and king-move
/// adjacency inside each orthant. Each move has length `1 / (2n)`.
pub struct Lattice {
    n: u32,
    ids: HashMap<Vec<(usize, u32)>, usize>,
    adj: Vec<Vec<usize>>,
}

fn key(vertices: &[usize], k: &[u32]) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = vertices
        .iter()
        .zip(k)
        .filter(|(_, &c)| c > 0)
        .map(|(&v, &c)| (v, c))
        .collect();
    out.sort_unstable();
    out
}

fn boxes(d: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=n).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

impl Lattice {
    pub fn new(cc: &ConeComplexSpec, n: u32) -> Self {
        let d = cc.dim();
        let pts = boxes(d, n);
        let mut ids: HashMap<Vec<(usize, u32)>, usize> = HashMap::new();
        let mut adj: Vec<Vec<usize>> = Vec::new();
        let moves: Vec<Vec<i64>> = boxes(d, 2)
            .into_iter()
            .map(|m| m.into_iter().map(|c| i64::from(c) - 1).collect::<Vec<i64>>())
            .filter(|m| m.iter().any(|&c| c != 0))
            .collect();
        for s in cc.simplices() {
            let id_of = |k: &[u32], ids: &mut HashMap<_, usize>, adj: &mut Vec<Vec<usize>>| {
                let kk = key(s, k);
                *ids.entry(kk).or_insert_with(|| {
                    adj.push(Vec::new());
                    adj.len() - 1
                })
            };
            for p in &pts {
                let from = id_of(p, &mut ids, &mut adj);
                for m in &moves {
                    let q: Option<Vec<u32>> = p
                        .iter()
                        .zip(m)
                        .map(|(&c, &dc)| {
                            let v = i64::from(c) + dc;
                            (0..=i64::from(n)).contains(&v).then_some(v as u32)
                        })
                        .collect();
                    if let Some(q) = q {
                        let to = id_of(&q, &mut ids, &mut adj);
                        adj[from].push(to);
                    }
                }
            }
        }
        Self { n, ids, adj }
    }

    /// Node of a point whose coordinates are multiples of `1 / n`.
    pub fn node(&self, cc: &ConeComplexSpec, p: &ConePoint) -> usize {
        let k: Vec<u32> = p
            .coords
            .iter()
            .map(|c| (c * f64::from(self.n)).round() as u32)
            .collect();
        self.ids[&key(&cc.simplices()[p.simplex], &k)]
    }

    /// Shortest lattice-path lengths from `source` to every node.
    pub fn distances_from(&self, source: usize) -> Vec<f64> {
        let mut hops = vec![u32::MAX; self.adj.len()];
        hops[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if hops[v] == u32::MAX {
                    hops[v] = hops[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let step = 0.5 / f64::from(self.n);
        hops.into_iter().map(|h| f64::from(h) * step).collect()
    }
}

/// A random complex with at most five maximal simplices of dimension at most
/// three, labelled so that every vertex is used.
pub fn random_complex(r: &mut impl Rng) -> ConeComplexSpec {
    let d = r.gen_range(1..=3usize);
    let nv = r.gen_range(d..=d + 3);
    let count = r.gen_range(1..=5usize);
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    for _ in 0..50 {
        if simplices.len() == count {
            break;
        }
        let mut verts: Vec<usize> = (0..nv).collect();
        for i in 0..d {
            let j = r.gen_range(i..nv);
            verts.swap(i, j);
        }
        let mut s = verts[..d].to_vec();
        s.sort_unstable();
        if !simplices.contains(&s) {
            simplices.push(s);
        }
    }
    let names: Vec<Vec<String>> = simplices
        .iter()
        .map(|s| s.iter().map(|v| format!("v{v}")).collect())
        .collect();
    let refs: Vec<Vec<&str>> = names.iter().map(|s| s.iter().map(String::as_str).collect()).collect();
    let slices: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
    ConeComplexSpec::from_labels(&slices).unwrap()
}

/// A random point with coordinates in `{0, 0.1, ..., 1}`.
pub fn random_grid_point(r: &mut impl Rng, cc: &ConeComplexSpec) -> ConePoint {
    let s = r.gen_range(0..cc.simplex_count());
    let coords = (0..cc.dim()).map(|_| f64::from(r.gen_range(0..=10u32)) / 10.0).collect();
    ConePoint::new(s, coords).unwrap()
}

/// Largest gap between the solver and the lattice oracle over `pairs`
/// source-target pairs on each of `complexes` random complexes. The solver
/// may never exceed the oracle, which measures actual lattice paths.
pub fn worst_gap(seed: u64, complexes: usize, sources: usize, n: u32) -> f64 {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    let mut through_faces = 0;
    for _ in 0..complexes {
        let cc = random_complex(&mut r);
        let lattice = Lattice::new(&cc, n);
        for _ in 0..sources {
            let x = random_grid_point(&mut r, &cc);
            let dist = lattice.distances_from(lattice.node(&cc, &x));
            for _ in 0..sources {
                let y = random_grid_point(&mut r, &cc);
                let (d, w) = path_distance(&x, &y, &cc, 1e-9).unwrap();
                if w.chain.len() > 1 && d < apex_route_bound(&x, &y) - 1e-9 {
                    through_faces += 1;
                }
                let oracle = dist[lattice.node(&cc, &y)];
                assert!(d <= oracle + 1e-9, "{d} > {oracle} on {cc:?} {x:?} {y:?}");
                worst = worst.max(oracle - d);
            }
        }
    }
    assert!(complexes < 4 || through_faces > 0, "no route crossed a shared face");
    worst
}
