//! Fenchel–Nielsen coordinates and the thin-part product-region estimate.

use super::trace::{ln_cosh, ln_sinh, Trace, TraceCoord};
use crate::{Error, Result};

/// Fenchel–Nielsen coordinates with respect to one pants curve.
///
/// `twist` is measured in hyperbolic length along the curve, so one Dehn
/// twist adds `length` to it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FNPoint {
    pub length: f64,
    pub twist: f64,
}

impl FNPoint {
    pub fn new(length: f64, twist: f64) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::BadLength(length));
        }
        Ok(Self { length, twist })
    }

    /// Twist in units of full Dehn twists.
    pub fn twist_turns(&self) -> f64 {
        self.twist / self.length
    }
}

/// Horizontal coordinate used for the twist in the `(twist, 1/length)`
/// upper half-plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TwistUnit {
    /// Number of Dehn twists, `twist / length`.
    #[default]
    DehnTwists,
    /// Raw twist in hyperbolic length.
    Length,
}

impl TwistUnit {
    pub fn coordinate(&self, p: &FNPoint) -> f64 {
        match self {
            TwistUnit::DehnTwists => p.twist_turns(),
            TwistUnit::Length => p.twist,
        }
    }
}

impl std::str::FromStr for TwistUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dehn" | "dehn-twists" => Ok(TwistUnit::DehnTwists),
            "length" => Ok(TwistUnit::Length),
            _ => Err(Error::Config(format!(
                "unknown twist unit {s:?} (expected \"dehn\" or \"length\")"
            ))),
        }
    }
}

/// The marked structure with `length(0/1) = length` and the given twist about
/// `0/1`, measured from the symmetric locus `tr B = tr AB`.
///
/// With `a = length / 2` and `tau = twist / length`,
/// `y = 2 coth(a) cosh(a (tau - 1/2))` and `z = 2 coth(a) cosh(a (tau + 1/2))`.
pub fn from_fenchel_nielsen(p: FNPoint) -> Result<TraceCoord> {
    let p = FNPoint::new(p.length, p.twist)?;
    let a = p.length / 2.0;
    let tau = p.twist_turns();
    let ln_coth = ln_cosh(a) - ln_sinh(a);
    let y = Trace::from_ln_half(ln_coth + ln_cosh((a * (tau - 0.5)).abs()));
    let z = Trace::from_ln_half(ln_coth + ln_cosh((a * (tau + 0.5)).abs()));
    let x = Trace::from_length(p.length)?;
    Ok(TraceCoord::from_traces_unchecked(x, y, z))
}

/// Zero-twist structure with `length(0/1) = length`:
/// `x = 2 cosh(length / 2)`, `y = z = x / sqrt(x - 2)`.
pub fn zero_twist_point(length: f64) -> Result<TraceCoord> {
    let x = Trace::from_length(length)?;
    // y / 2 = cosh(l/2) / (2 sinh(l/4))
    let ln_half_y = ln_cosh(length / 2.0) - std::f64::consts::LN_2 - ln_sinh(length / 4.0);
    let y = Trace::from_ln_half(ln_half_y);
    Ok(TraceCoord::from_traces_unchecked(x, y, y))
}

/// Fenchel–Nielsen coordinates of `t` about the curve `0/1`.
///
/// When `0/1` is also the pants curve of the reduced marking underlying `t`,
/// the two markings differ by whole Dehn twists about it, and the twist is
/// read off the reduced traces plus that integer count; this keeps the twist
/// exact for heavily twisted thin structures.
pub fn fenchel_nielsen(t: &TraceCoord) -> FNPoint {
    let ([x, y, z], class) = t.parts();
    let [_, b, c, _] = class.entries();
    if b == 0 {
        let base = twist_from_traces(x, y, z);
        return FNPoint {
            length: base.length,
            twist: base.twist + c as f64 * base.length,
        };
    }
    let [x, y, z] = t.traces();
    twist_from_traces(x, y, z)
}

fn twist_from_traces(x: Trace, y: Trace, z: Trace) -> FNPoint {
    let length = x.length();
    // (z - y) / (z + y) = tanh(a tau) tanh(a / 2), a = length / 2
    let r = ((z.ln_value() - y.ln_value()) / 2.0).tanh() / (length / 4.0).tanh();
    let r = r.clamp(-1.0 + f64::EPSILON, 1.0 - f64::EPSILON);
    FNPoint {
        length,
        twist: 2.0 * r.atanh(),
    }
}

/// Distance in the upper half-plane with metric `(dx^2 + dy^2) / (4 y^2)`,
/// i.e. half the curvature -1 distance:
/// `asinh(|p - q| / (2 sqrt(y_p y_q)))`.
pub fn h2_distance(p: (f64, f64), q: (f64, f64)) -> Result<f64> {
    for y in [p.1, q.1] {
        if !(y > 0.0) {
            return Err(Error::NotInUpperHalfPlane(y));
        }
    }
    let chord = (p.0 - q.0).hypot(p.1 - q.1);
    Ok((chord / (2.0 * (p.1 * q.1).sqrt())).asinh())
}

/// Product-region estimate of the Teichmüller distance between two points of
/// the thin part: the sup over pants curves of the half-plane distance
/// between `(twist_i, 1 / length_i)` of each point. Agrees with the
/// Teichmüller distance up to an additive constant depending on `eps0`.
///
/// Every length must lie in `(0, eps0]`.
pub fn minsky_teich_estimate(
    first: &[FNPoint],
    second: &[FNPoint],
    eps0: f64,
    unit: TwistUnit,
) -> Result<f64> {
    if first.len() != second.len() {
        return Err(Error::DimensionMismatch {
            left: first.len(),
            right: second.len(),
        });
    }
    for (index, p) in first.iter().chain(second).enumerate() {
        if !(p.length > 0.0) {
            return Err(Error::BadLength(p.length));
        }
        if p.length > eps0 {
            return Err(Error::NotThin {
                index: index % first.len().max(1),
                length: p.length,
                eps0,
            });
        }
    }
    first.iter().zip(second).try_fold(0.0f64, |acc, (a, b)| {
        let pa = (unit.coordinate(a), 1.0 / a.length);
        let pb = (unit.coordinate(b), 1.0 / b.length);
        Ok(acc.max(h2_distance(pa, pb)?))
    })
}
