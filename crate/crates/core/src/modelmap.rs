//! The map from the cone ray into moduli space and back.
//!
//! For the once-punctured torus the curve complex quotient is a single
//! vertex, so the cone model is the ray `[0, inf)` and a model point `x` maps
//! to the zero-twist structure whose pants curve has length `eps0 * e^{-x}`.

use crate::curvesys::{mapping_class_ball, MappingClass, Slope};
use crate::hypgeom::{
    act, for_each_slope_trace, reduce, trace_of_slope, zero_twist_point, LengthSpectrum,
    MetricBracket, TraceCoord,
};
use crate::{Error, Result};

/// Curves of length at most this are pairwise disjoint on every hyperbolic
/// `S_{1,1}`; the collar lemma threshold is `2 asinh(1) ~ 1.7627`.
pub const EPSILON0: f64 = 0.5;

pub fn epsilon0() -> f64 {
    EPSILON0
}

/// A point of the quotient ray `V(S_{1,1})`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ModelPoint(f64);

impl ModelPoint {
    pub fn new(x: f64) -> Result<Self> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::NegativeModelPoint(x));
        }
        Ok(Self(x))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// The zero-twist structure with `length(0/1) = eps0 * e^{-x}`.
pub fn psi(x: ModelPoint) -> TraceCoord {
    zero_twist_point(EPSILON0 * (-x.0).exp()).expect("positive length")
}

/// Result of projecting a structure to the model ray.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projection {
    pub point: ModelPoint,
    pub systole: Slope,
    pub systole_length: f64,
    /// Enumeration height that provably contains the systole. The search is
    /// exact whenever the requested height is at least this.
    pub exact_height: i64,
}

/// Finds the shortest slope of height at most `max_height` and returns
/// `log(eps0 / l)` if its length `l` is at most `eps0`, or 0 otherwise.
pub fn bers_project(t: &TraceCoord, max_height: u32) -> Projection {
    let mut best: Option<(Slope, f64)> = None;
    for_each_slope_trace(t, max_height, |s, tr| {
        let u = tr.half_length();
        let better = match best {
            None => true,
            Some((b, bu)) => u < bu || (u == bu && s.enumeration_key() < b.enumeration_key()),
        };
        if better {
            best = Some((s, u));
        }
    });
    let (systole, half) = best.expect("height >= 1 enumerates at least four slopes");
    let length = 2.0 * half;
    let x = if length <= EPSILON0 {
        (EPSILON0 / length).ln()
    } else {
        0.0
    };
    Projection {
        point: ModelPoint(x.max(0.0)),
        systole,
        systole_length: length,
        exact_height: reduce(t).triangle_height,
    }
}

/// Checks that every pair of distinct slopes of length at most `eps0` is
/// disjoint; returns the number of short slopes found up to `max_height`.
/// On `S_{1,1}` distinct slopes always intersect, so at most one may be short.
pub fn short_curves_disjoint(t: &TraceCoord, max_height: u32) -> std::result::Result<usize, (Slope, Slope)> {
    let mut short = Vec::new();
    for_each_slope_trace(t, max_height, |s, tr| {
        if tr.length() <= EPSILON0 {
            short.push(s);
        }
    });
    for (i, a) in short.iter().enumerate() {
        for b in &short[i + 1..] {
            if crate::curvesys::intersection_number(*a, *b) != 0 {
                return Err((*a, *b));
            }
        }
    }
    Ok(short.len())
}

/// Orbit-minimised length-spectra estimate on moduli space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModuliDistance {
    pub bracket: MetricBracket,
    /// A mapping class `phi` with `d_ls(t1, phi . t2)` equal to the value.
    pub class: MappingClass,
    /// Value for the identity matching of the two input markings.
    pub identity_value: f64,
}

const PROBE: [Slope; 4] = [Slope::ZERO, Slope::INFINITY, Slope::ONE, Slope::MINUS_ONE];

/// `min` over `phi` in the radius-`R` ball of the enumerated length-spectra
/// distance between `t1` and `phi . t2`.
///
/// Both structures are first re-marked so that their two shortest curves
/// are `0/1` and `1/0` (see [`reduce`]), and the ball is centred at those
/// markings; already reduced inputs, such as images of [`psi`], are left
/// alone. A mapping class is skipped when the four height-one slopes already
/// bound its distance from below by the current minimum, which never changes
/// the result.
pub fn moduli_ls_distance(
    t1: &TraceCoord,
    t2: &TraceCoord,
    max_height: u32,
    orbit_radius: u32,
) -> ModuliDistance {
    let (r1, r2) = (reduce(t1), reduce(t2));
    let (a, b) = (r1.reduced, r2.reduced);
    let spec_a = LengthSpectrum::new(&a, max_height);
    let probe_a: Vec<f64> = PROBE.iter().map(|s| trace_of_slope(&a, *s).half_length()).collect();

    let mut best = f64::INFINITY;
    let mut best_phi = MappingClass::IDENTITY;
    let mut identity_value = f64::NAN;
    for phi in mapping_class_ball(orbit_radius) {
        let moved = act(&phi, &b);
        let bound = PROBE
            .iter()
            .zip(&probe_a)
            .map(|(s, ua)| 0.5 * (trace_of_slope(&moved, *s).half_length() / ua).ln().abs())
            .fold(0.0, f64::max);
        let is_identity = phi == MappingClass::IDENTITY;
        if bound >= best && !is_identity {
            continue;
        }
        let (d1, d2) = spec_a.thurston_against(&LengthSpectrum::new(&moved, max_height));
        let value = d1.max(d2);
        if is_identity {
            identity_value = value;
        }
        if value < best {
            best = value;
            best_phi = phi;
        }
    }
    let class = r1.class.inverse().compose(&best_phi).compose(&r2.class);
    ModuliDistance {
        bracket: MetricBracket::lower_only(best, max_height, Some(orbit_radius)),
        class,
        identity_value,
    }
}
