//! Trace coordinates on the Teichmüller space of the once-punctured torus.
//!
//! A marked structure is a Markov triple `(x, y, z) = (tr A, tr B, tr AB)`
//! with `x^2 + y^2 + z^2 = xyz` and every entry above 2, where `A` carries
//! slope `0/1`, `B` carries slope `1/0` and `AB` carries slope `1/1`.
//!
//! Traces of long curves overflow `f64` quickly (they grow like
//! `exp(length / 2)`), and traces of short curves sit just above 2, where
//! `t - 2` loses most of its digits. Both problems go away if a trace
//! `t = 2 cosh(u)` is stored through its half-length `u`, which is what
//! [`Trace`] does. All recursions are carried out on `ln cosh`.

use std::cmp::Ordering;
use std::f64::consts::LN_2;

use crate::curvesys::{MappingClass, Slope};
use crate::{Error, Result};

/// Relative tolerance on the Markov relation accepted at construction.
pub const MARKOV_TOLERANCE: f64 = 1e-9;

/// `ln cosh(u)` for `u >= 0`, without overflow.
pub(crate) fn ln_cosh(u: f64) -> f64 {
    if u < 1.0 {
        // cosh(u) - 1 = 2 sinh^2(u / 2)
        (2.0 * (u / 2.0).sinh().powi(2)).ln_1p()
    } else {
        u + (-2.0 * u).exp().ln_1p() - LN_2
    }
}

/// `ln sinh(u)` for `u > 0`, without overflow.
pub(crate) fn ln_sinh(u: f64) -> f64 {
    if u < 1.0 {
        u.sinh().ln()
    } else {
        u + (-(-2.0 * u).exp()).ln_1p() - LN_2
    }
}

/// Inverse of [`ln_cosh`]: the `u >= 0` with `ln cosh(u) = l`.
fn acosh_from_ln_cosh(l: f64) -> f64 {
    if l <= 0.0 {
        0.0
    } else if l < 20.0 {
        // cosh(u) - 1 = 2 sinh^2(u / 2)
        2.0 * (l.exp_m1() / 2.0).sqrt().asinh()
    } else {
        l + (-(-2.0 * l).exp_m1()).sqrt().ln_1p()
    }
}

/// The trace `2 cosh(u)` of a hyperbolic element, stored through the
/// half-length `u = length / 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trace {
    half_length: f64,
}

impl Trace {
    pub fn from_value(t: f64) -> Result<Self> {
        if !(t > 2.0) || !t.is_finite() {
            return Err(Error::InvalidTrace {
                x: t,
                y: f64::NAN,
                z: f64::NAN,
                reason: "trace must be finite and > 2".into(),
            });
        }
        Ok(Self {
            half_length: (t / 2.0).acosh(),
        })
    }

    /// The trace of a closed geodesic of the given length.
    pub fn from_length(length: f64) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::BadLength(length));
        }
        Ok(Self {
            half_length: length / 2.0,
        })
    }

    /// From `ln(t / 2)`.
    pub(crate) fn from_ln_half(l: f64) -> Self {
        Self {
            half_length: acosh_from_ln_cosh(l),
        }
    }

    /// The trace itself; `+inf` once it leaves the `f64` range.
    pub fn value(&self) -> f64 {
        2.0 * self.half_length.cosh()
    }

    /// `ln(t)`, finite for every representable half-length.
    pub fn ln_value(&self) -> f64 {
        LN_2 + ln_cosh(self.half_length)
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    /// Hyperbolic length `2 arccosh(t / 2)` of the geodesic.
    pub fn length(&self) -> f64 {
        2.0 * self.half_length
    }
}

impl PartialOrd for Trace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.half_length.partial_cmp(&other.half_length)
    }
}

/// Trace of `P Q` given `tr P`, `tr Q` and `tr P Q^{-1}`: the Fricke relation
/// `tr PQ = tr P tr Q - tr PQ^{-1}`.
pub fn fricke(p: Trace, q: Trace, p_q_inv: Trace) -> Trace {
    let (a, b, c) = (p.half_length, q.half_length, p_q_inv.half_length);
    let s = a + b;
    // 2 cosh a cosh b - cosh c = (e^s / 2) * bracket
    let bracket = 1.0 + (-2.0 * s).exp() + (-2.0 * a).exp() + (-2.0 * b).exp()
        - (c - s).exp()
        - (-c - s).exp();
    if !(bracket > 0.0) {
        return Trace { half_length: 0.0 };
    }
    Trace::from_ln_half(s - LN_2 + bracket.ln())
}

/// Traces of the root triangle `(0/1, 1/0, 1/1)` of some marking.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Triple {
    x: Trace,
    y: Trace,
    z: Trace,
}

impl Triple {
    /// Trace of `-1/1`, i.e. `tr AB^{-1} = xy - z`.
    fn minus_one(&self) -> Trace {
        fricke(self.x, self.y, self.z)
    }

    /// Stern–Brocot descent from the root triangle. Accurate when the triple
    /// is reduced, since every step then moves away from the shortest
    /// triangle and no Fricke step cancels.
    fn descend(&self, p: i64, q: i64) -> Trace {
        let (p, q) = if q < 0 || (q == 0 && p < 0) { (-p, -q) } else { (p, q) };
        if q == 0 {
            return self.y;
        }
        if p == 0 {
            return self.x;
        }
        let target = (p.abs(), q);
        let mut cell = if p < 0 {
            // Marking (A, B^{-1}): slope -p/q becomes p/q.
            Cell::root(self.x, self.y, self.minus_one())
        } else {
            Cell::root(self.x, self.y, self.z)
        };
        loop {
            let m = cell.mid();
            if m == target {
                return cell.t_mid;
            }
            // target < mid as fractions p/q
            cell = if target.0 * m.1 < m.0 * target.1 {
                cell.go_left(&plain_step)
            } else {
                cell.go_right(&plain_step)
            };
        }
    }
}

/// A point of Teichmüller space of `S_{1,1}` in trace coordinates.
///
/// Stored as the traces of a reduced marking (one whose root triangle is the
/// shortest Farey triangle) together with the change of marking: slope `s`
/// of this point is slope `class s` of the base. Computing traces straight
/// from an unreduced triple is ill-conditioned — a Fricke step towards the
/// shortest triangle subtracts two nearly equal large numbers — while in
/// this form mapping classes act exactly and every trace is read off the
/// base with uphill steps only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceCoord {
    base: Triple,
    class: MappingClass,
}

impl TraceCoord {
    /// From raw traces, checking `x, y, z > 2` and the Markov relation.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidTrace {
            x,
            y,
            z,
            reason: reason.into(),
        };
        let traces = [x, y, z].map(Trace::from_value);
        let [Ok(tx), Ok(ty), Ok(tz)] = traces else {
            return Err(bad("every trace must be finite and > 2"));
        };
        Self::from_traces(tx, ty, tz).map_err(|_| bad("Markov relation x^2 + y^2 + z^2 = xyz fails"))
    }

    pub fn from_traces(x: Trace, y: Trace, z: Trace) -> Result<Self> {
        let r = markov_residual(x, y, z);
        if !(r <= MARKOV_TOLERANCE) {
            return Err(Error::InvalidTrace {
                x: x.value(),
                y: y.value(),
                z: z.value(),
                reason: format!("Markov residual {r:e}"),
            });
        }
        Ok(Self::from_traces_unchecked(x, y, z))
    }

    pub(crate) fn from_traces_unchecked(x: Trace, y: Trace, z: Trace) -> Self {
        let (base, class) = reduce_triple(Triple { x, y, z });
        Self { base, class }
    }

    /// Relative Markov residual `|x/(yz) + y/(xz) + z/(xy) - 1|`, which is
    /// `|x^2 + y^2 + z^2 - xyz| / xyz`.
    pub fn markov_residual(&self) -> f64 {
        let [x, y, z] = self.traces();
        markov_residual(x, y, z)
    }

    pub fn x(&self) -> f64 {
        self.trace(0, 1).value()
    }

    pub fn y(&self) -> f64 {
        self.trace(1, 0).value()
    }

    pub fn z(&self) -> f64 {
        self.trace(1, 1).value()
    }

    /// Traces of `0/1`, `1/0` and `1/1`.
    pub fn traces(&self) -> [Trace; 3] {
        [self.trace(0, 1), self.trace(1, 0), self.trace(1, 1)]
    }

    /// Trace of the curve with slope `-1/1`, i.e. `tr AB^{-1} = xy - z`.
    pub fn minus_one_trace(&self) -> Trace {
        self.trace(-1, 1)
    }

    /// Root traces of the reduced marking and the class `C` with
    /// `trace(s) = base trace(C s)`.
    pub(crate) fn parts(&self) -> ([Trace; 3], MappingClass) {
        ([self.base.x, self.base.y, self.base.z], self.class)
    }

    fn trace(&self, p: i64, q: i64) -> Trace {
        let (a, b) = self.class.apply_vec(p, q);
        self.base.descend(a, b)
    }

    /// Visits the slopes of height at most `h` in a fixed order.
    fn for_each(&self, h: i64, f: &mut impl FnMut(Slope, Trace)) {
        if h < 1 {
            return;
        }
        let identity = self.class == MappingClass::IDENTITY;
        let (x, y) = (self.trace(0, 1), self.trace(1, 0));
        f(Slope::INFINITY, y);
        f(Slope::ZERO, x);
        let mut stack = Vec::new();
        for sign in [1i64, -1] {
            let step = |a: Trace, b: Trace, opposite: Trace, m: (i64, i64)| {
                let (ua, ub, uc) = (a.half_length, b.half_length, opposite.half_length);
                // Downhill iff cosh(uc) > cosh(ua) cosh(ub); the first test is
                // a cheap necessary condition.
                if !identity
                    && uc >= ua + ub - 2.0 * LN_2
                    && ln_cosh(uc) > ln_cosh(ua) + ln_cosh(ub)
                {
                    self.trace(sign * m.0, m.1)
                } else {
                    fricke(a, b, opposite)
                }
            };
            stack.push(Cell::root(x, y, self.trace(sign, 1)));
            while let Some(cell) = stack.pop() {
                let (p, q) = cell.mid();
                let s = Slope::new(sign * p, q).expect("mediant is nonzero");
                f(s, cell.t_mid);
                let lm = (cell.left.0 + p, cell.left.1 + q);
                let rm = (p + cell.right.0, q + cell.right.1);
                if rm.0.max(rm.1) <= h {
                    stack.push(cell.go_right(&step));
                }
                if lm.0.max(lm.1) <= h {
                    stack.push(cell.go_left(&step));
                }
            }
        }
    }
}

fn markov_residual(x: Trace, y: Trace, z: Trace) -> f64 {
    let (lx, ly, lz) = (x.ln_value(), y.ln_value(), z.ln_value());
    ((lx - ly - lz).exp() + (ly - lx - lz).exp() + (lz - lx - ly).exp() - 1.0).abs()
}

/// Stern–Brocot descent state: Farey neighbours `left`, `right` (nonnegative
/// vectors) with traces, plus the trace of their mediant.
#[derive(Clone, Copy)]
struct Cell {
    left: (i64, i64),
    right: (i64, i64),
    t_left: Trace,
    t_right: Trace,
    t_mid: Trace,
}

impl Cell {
    fn root(t: Trace, u: Trace, tu: Trace) -> Self {
        Self {
            left: (0, 1),
            right: (1, 0),
            t_left: t,
            t_right: u,
            t_mid: tu,
        }
    }

    fn mid(&self) -> (i64, i64) {
        (self.left.0 + self.right.0, self.left.1 + self.right.1)
    }

    /// `step(a, b, opposite, mediant)` computes the trace of a new mediant
    /// from its Farey parents and the vertex across from it.
    fn go_left(&self, step: &impl Fn(Trace, Trace, Trace, (i64, i64)) -> Trace) -> Self {
        let right = self.mid();
        let m = (self.left.0 + right.0, self.left.1 + right.1);
        Self {
            left: self.left,
            right,
            t_left: self.t_left,
            t_right: self.t_mid,
            t_mid: step(self.t_left, self.t_mid, self.t_right, m),
        }
    }

    fn go_right(&self, step: &impl Fn(Trace, Trace, Trace, (i64, i64)) -> Trace) -> Self {
        let left = self.mid();
        let m = (left.0 + self.right.0, left.1 + self.right.1);
        Self {
            left,
            right: self.right,
            t_left: self.t_mid,
            t_right: self.t_right,
            t_mid: step(self.t_mid, self.t_right, self.t_left, m),
        }
    }
}

fn plain_step(a: Trace, b: Trace, opposite: Trace, _: (i64, i64)) -> Trace {
    fricke(a, b, opposite)
}

/// Trace of the simple closed curve with slope `s`.
pub fn trace_of_slope(t: &TraceCoord, s: Slope) -> Trace {
    t.trace(s.p(), s.q())
}

pub fn length_of_slope(t: &TraceCoord, s: Slope) -> f64 {
    trace_of_slope(t, s).length()
}

/// Hyperbolic length from a trace value; errors when `t <= 2`.
pub fn length_from_trace(t: f64) -> Result<f64> {
    Trace::from_value(t).map(|tr| tr.length())
}

/// Calls `f` on every slope of height at most `max_height`, together with
/// its trace, by a depth-first walk of the Stern–Brocot tree. The visiting
/// order depends only on `max_height`.
pub fn for_each_slope_trace(t: &TraceCoord, max_height: u32, mut f: impl FnMut(Slope, Trace)) {
    t.for_each(i64::from(max_height), &mut f);
}

/// Half-lengths of all slopes of height at most `max_height`, in the order of
/// [`for_each_slope_trace`].
pub fn half_length_table(t: &TraceCoord, max_height: u32) -> Vec<f64> {
    let mut out = Vec::new();
    for_each_slope_trace(t, max_height, |_, tr| out.push(tr.half_length()));
    out
}

/// `k` Dehn twists about the curve of slope `0/1`: on traces,
/// `(x, y, z) -> (x, z, xz - y)`, inverted by `(x, y, z) -> (x, xy - z, y)`.
pub fn dehn_twist(t: &TraceCoord, k: i64) -> TraceCoord {
    act(&dehn_twist_class(k), t)
}

/// The mapping class `m` applied to a marked structure: the result assigns to
/// slope `s` the trace that `t` assigns to `m^{-1} s`. This is a left action,
/// and lengths satisfy `length(m.t, m s) = length(t, s)`. Exact: only the
/// marking changes.
pub fn act(m: &MappingClass, t: &TraceCoord) -> TraceCoord {
    TraceCoord {
        base: t.base,
        class: t.class.compose(&m.inverse()),
    }
}

/// The Dehn twist of [`dehn_twist`] as a mapping class.
pub fn dehn_twist_class(k: i64) -> MappingClass {
    MappingClass::new(1, 0, -k, 1).expect("unimodular")
}

/// Outcome of reducing a marking to its shortest triangle.
#[derive(Clone, Copy, Debug)]
pub struct Reduction {
    /// `class . input = reduced`.
    pub class: MappingClass,
    pub reduced: TraceCoord,
    /// Shortest curve, in the input marking.
    pub systole: Slope,
    pub systole_trace: Trace,
    /// Largest height among the three slopes of the shortest triangle, in the
    /// input marking. Enumeration to at least this height finds the systole.
    pub triangle_height: i64,
}

/// Re-marks `t` so that the two shortest curves of its shortest Farey
/// triangle become `0/1` and `1/0`.
pub fn reduce(t: &TraceCoord) -> Reduction {
    let back = t.class.inverse();
    let base = t.base;
    // the shortest triangle is (0/1, 1/0, +-1/1) on the base
    let third = if base.z.half_length <= base.minus_one().half_length {
        (1, 1)
    } else {
        (-1, 1)
    };
    let height = |(p, q): (i64, i64)| {
        let (a, b) = back.apply_vec(p, q);
        a.abs().max(b.abs())
    };
    let (sp, sq) = back.apply_vec(0, 1);
    Reduction {
        class: t.class,
        reduced: TraceCoord {
            base,
            class: MappingClass::IDENTITY,
        },
        systole: Slope::new(sp, sq).expect("unimodular image of a slope"),
        systole_trace: base.x,
        triangle_height: height((0, 1)).max(height((1, 0))).max(height(third)),
    }
}

/// Flips the longest side of the root triangle while that strictly shortens
/// it, then re-marks so the two shortest curves of the final triangle become
/// `0/1` and `1/0`. Returns the reduced triple and the class `C` with
/// `trace(s) = reduced trace(C s)`. Ties keep the earlier position, so an
/// already reduced triple maps to itself.
fn reduce_triple(t: Triple) -> (Triple, MappingClass) {
    let mut tri: [((i64, i64), Trace); 3] = [((0, 1), t.x), ((1, 0), t.y), ((1, 1), t.z)];
    // Traces strictly decrease along the walk; the cap only guards against
    // pathological floating point input.
    for _ in 0..100_000 {
        let i = (0..3)
            .max_by(|&a, &b| {
                tri[a]
                    .1
                    .partial_cmp(&tri[b].1)
                    .unwrap_or(Ordering::Equal)
                    .then(b.cmp(&a))
            })
            .expect("three vertices");
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let flipped = fricke(tri[j].1, tri[k].1, tri[i].1);
        if !(flipped.half_length() < tri[i].1.half_length()) {
            break;
        }
        let (vj, vk, vi) = (tri[j].0, tri[k].0, tri[i].0);
        let sum = (vj.0 + vk.0, vj.1 + vk.1);
        let diff = (vj.0 - vk.0, vj.1 - vk.1);
        tri[i] = (if same_slope(sum, vi) { diff } else { sum }, flipped);
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| {
        tri[a]
            .1
            .partial_cmp(&tri[b].1)
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    let (u, tu) = tri[order[0]];
    // Orient v so that (v, u) has determinant one; then u + v is either the
    // third vertex or its flip. Near-ties for second place are resolved in
    // favour of the choice that keeps the shortest triangle.
    let oriented = |k: usize| {
        let (mut v, tv) = tri[order[k]];
        if v.0 * u.1 - u.0 * v.1 < 0 {
            v = (-v.0, -v.1);
        }
        let (w, tw) = tri[order[3 - k]];
        (v, tv, w, tw)
    };
    let (t1, t2) = (tri[order[1]].1, tri[order[2]].1);
    let tied = (t2.half_length() - t1.half_length()) <= 1e-9 * t1.half_length();
    let mut pick = oriented(1);
    if tied {
        let keeps = |c: &((i64, i64), Trace, (i64, i64), Trace)| {
            same_slope((u.0 + c.0 .0, u.1 + c.0 .1), c.2)
        };
        let alt = oriented(2);
        if !keeps(&pick) && keeps(&alt) {
            pick = alt;
        }
    }
    let (v, tv, w, tw) = pick;
    let inv = MappingClass::new(v.0, u.0, v.1, u.1).expect("Farey neighbours are unimodular");
    let uv = (u.0 + v.0, u.1 + v.1);
    let t_uv = if same_slope(uv, w) { tw } else { fricke(tu, tv, tw) };
    (
        Triple {
            x: tu,
            y: tv,
            z: t_uv,
        },
        inv.inverse(),
    )
}

fn same_slope(a: (i64, i64), b: (i64, i64)) -> bool {
    a == b || a == (-b.0, -b.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvesys::{apply_mapping_class, enumerate_slopes, mapping_class_ball};
    use crate::hypgeom::zero_twist_point;

    fn modular() -> TraceCoord {
        TraceCoord::new(3.0, 3.0, 3.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs())
    }

    #[test]
    fn trace_scalar_round_trips() {
        for t in [2.000001, 2.5, 3.0, 10.0, 1e6, 1e200] {
            let tr = Trace::from_value(t).unwrap();
            assert!(rel(tr.value(), t) < 1e-12, "{t}");
            assert!((tr.ln_value() - t.ln()).abs() < 1e-12);
        }
        for l in [1e-6, 0.1, 1.0, 50.0, 800.0] {
            let tr = Trace::from_ln_half(l);
            assert!(rel(ln_cosh(tr.half_length()), l) < 1e-12, "{l}");
        }
        assert!(Trace::from_value(2.0).is_err());
        assert!(Trace::from_value(f64::NAN).is_err());
        let t = Trace::from_value(2.0 * 0.25f64.cosh()).unwrap();
        assert!((t.length() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn length_is_increasing_in_trace() {
        let mut last = 0.0;
        for i in 1..200 {
            let l = length_from_trace(2.0 + 0.05 * f64::from(i)).unwrap();
            assert!(l > last);
            last = l;
        }
        assert!(length_from_trace(1.5).is_err());
    }

    #[test]
    fn fricke_matches_plain_arithmetic() {
        let t = |v: f64| Trace::from_value(v).unwrap();
        for (a, b, c) in [(3.0, 3.0, 3.0), (2.1, 7.0, 5.0), (10.0, 12.0, 3.0)] {
            let got = fricke(t(a), t(b), t(c)).value();
            assert!(rel(got, a * b - c) < 1e-12, "{a} {b} {c}");
        }
    }

    #[test]
    fn validation() {
        assert!(TraceCoord::new(3.0, 3.0, 3.0).is_ok());
        assert!(TraceCoord::new(3.0, 3.0, 3.1).is_err());
        assert!(TraceCoord::new(1.0, 3.0, 3.0).is_err());
    }

    #[test]
    fn marking_convention() {
        let t = TraceCoord::new(3.0, 6.0, 15.0).unwrap();
        for (s, want) in [(Slope::ZERO, 3.0), (Slope::INFINITY, 6.0), (Slope::ONE, 15.0)] {
            assert!(rel(trace_of_slope(&t, s).value(), want) < 1e-12);
        }
        let half = trace_of_slope(&t, Slope::new(1, 2).unwrap()).value();
        assert!(rel(half, 3.0 * 15.0 - 6.0) < 1e-12);
        let m1 = trace_of_slope(&t, Slope::MINUS_ONE).value();
        assert!(rel(m1, 3.0 * 6.0 - 15.0) < 1e-12);
    }

    #[test]
    fn modular_torus_lengths() {
        let want = 2.0 * 1.5f64.acosh();
        assert!((want - 1.924847300238).abs() < 1e-11);
        for s in [Slope::ZERO, Slope::INFINITY, Slope::ONE] {
            assert!((length_of_slope(&modular(), s) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn tree_walk_covers_enumeration() {
        let t = zero_twist_point(0.3).unwrap();
        for h in [1u32, 2, 7, 30] {
            let mut seen = Vec::new();
            for_each_slope_trace(&t, h, |s, tr| seen.push((s, tr)));
            let mut slopes: Vec<_> = seen.iter().map(|(s, _)| *s).collect();
            slopes.sort_by_key(Slope::enumeration_key);
            assert_eq!(slopes, enumerate_slopes(h));
            for (s, tr) in seen {
                assert!(rel(tr.half_length(), trace_of_slope(&t, s).half_length()) < 1e-13);
            }
        }
    }

    #[test]
    fn dehn_twist_examples() {
        let t = zero_twist_point(0.1).unwrap();
        assert_eq!(dehn_twist(&t, 0), t);
        let back = dehn_twist(&dehn_twist(&t, 1), -1);
        for (a, b) in back.traces().iter().zip(t.traces()) {
            assert!(rel(a.value(), b.value()) < 1e-12);
        }
        let once = dehn_twist(&t, 1);
        assert_eq!(once.x(), t.x());
        assert!(rel(once.y(), t.z()) < 1e-14);
        assert!(rel(once.z(), t.x() * t.z() - t.y()) < 1e-12);
    }

    #[test]
    fn dehn_twist_is_a_mapping_class() {
        let t = TraceCoord::new(3.0, 6.0, 15.0).unwrap();
        for k in [-3i64, -1, 1, 2, 5] {
            let a = dehn_twist(&t, k);
            let b = act(&dehn_twist_class(k), &t);
            for (p, q) in a.traces().iter().zip(b.traces()) {
                assert!(rel(p.value(), q.value()) < 1e-11, "k = {k}");
            }
        }
    }

    #[test]
    fn action_is_exact_far_from_the_identity() {
        let t = crate::hypgeom::from_fenchel_nielsen(
            crate::hypgeom::FNPoint::new(1e-3, 3e-4).unwrap(),
        )
        .unwrap();
        for f in mapping_class_ball(8).iter().step_by(7) {
            let moved = act(f, &t);
            assert!(moved.markov_residual() < 1e-9);
            for s in enumerate_slopes(5) {
                let a = length_of_slope(&t, s);
                let b = length_of_slope(&moved, apply_mapping_class(f, s));
                assert!(rel(a, b) < 1e-14, "{f} {s}");
            }
            let mut got = Vec::new();
            for_each_slope_trace(&moved, 12, |s, tr| got.push((s, tr)));
            for (s, tr) in got {
                let want = trace_of_slope(&moved, s);
                assert!(rel(tr.half_length(), want.half_length()) < 1e-12, "{f} {s}");
            }
        }
    }

    #[test]
    fn action_is_a_left_action() {
        let t = TraceCoord::new(3.0, 6.0, 15.0).unwrap();
        let ball = mapping_class_ball(3);
        for (i, f) in ball.iter().enumerate().step_by(3) {
            let g = ball[(i * 7 + 1) % ball.len()];
            let lhs = act(&f.compose(&g), &t);
            let rhs = act(f, &act(&g, &t));
            for (p, q) in lhs.traces().iter().zip(rhs.traces()) {
                assert!(rel(p.value(), q.value()) < 1e-10);
            }
            assert!(act(f, &t).markov_residual() < 1e-9);
            for s in enumerate_slopes(4) {
                let a = length_of_slope(&t, s);
                let b = length_of_slope(&act(f, &t), apply_mapping_class(f, s));
                assert!(rel(a, b) < 1e-11);
            }
        }
    }

    #[test]
    fn reduction_recovers_twisted_markings() {
        let base = zero_twist_point(0.2).unwrap();
        let red = reduce(&base);
        assert_eq!(red.class, MappingClass::IDENTITY);
        assert_eq!(red.reduced, base);
        assert_eq!(red.systole, Slope::ZERO);
        assert_eq!(red.triangle_height, 1);

        // generic point: the modular torus has ties everywhere
        let t = crate::hypgeom::from_fenchel_nielsen(
            crate::hypgeom::FNPoint::new(0.9, 0.37).unwrap(),
        )
        .unwrap();
        let ball = mapping_class_ball(4);
        let r0 = reduce(&t);
        for m in &ball {
            let moved = act(m, &t);
            let r = reduce(&moved);
            // reduced triples agree up to the finite symmetry of the triangle
            let mut a: Vec<f64> = r.reduced.traces().iter().map(Trace::value).collect();
            let mut b: Vec<f64> = r0.reduced.traces().iter().map(Trace::value).collect();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            for (p, q) in a.iter().zip(&b) {
                assert!(rel(*p, *q) < 1e-9, "{m}");
            }
            let direct = act(&r.class, &moved);
            for (p, q) in direct.traces().iter().zip(r.reduced.traces()) {
                assert!(rel(p.value(), q.value()) < 1e-9);
            }
            let sys = trace_of_slope(&moved, r.systole);
            assert!(rel(sys.value(), r.systole_trace.value()) < 1e-9);
        }
    }
}
