//! Length-spectra and Thurston asymmetric metrics by slope enumeration.

use super::trace::{half_length_table, TraceCoord};

/// A distance estimate with the enumeration parameters that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricBracket {
    pub lower: f64,
    pub upper: f64,
    pub enum_height: u32,
    pub orbit_radius: Option<u32>,
}

impl MetricBracket {
    pub fn lower_only(lower: f64, enum_height: u32, orbit_radius: Option<u32>) -> Self {
        Self {
            lower,
            upper: f64::INFINITY,
            enum_height,
            orbit_radius,
        }
    }
}

/// Half-lengths of every slope up to a fixed height, reusable across many
/// comparisons against the same structure.
#[derive(Clone, Debug)]
pub struct LengthSpectrum {
    height: u32,
    half_lengths: Vec<f64>,
}

impl LengthSpectrum {
    pub fn new(t: &TraceCoord, height: u32) -> Self {
        Self {
            height,
            half_lengths: half_length_table(t, height),
        }
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn len(&self) -> usize {
        self.half_lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_lengths.is_empty()
    }

    /// `(d1, d2)` with `d1 = 1/2 log max l_other / l_self` and
    /// `d2 = 1/2 log max l_self / l_other`, each clamped at 0.
    pub fn thurston_against(&self, other: &LengthSpectrum) -> (f64, f64) {
        assert_eq!(self.height, other.height, "spectra enumerated to different heights");
        let (mut k1, mut k2) = (1.0f64, 1.0f64);
        for (a, b) in self.half_lengths.iter().zip(&other.half_lengths) {
            k1 = k1.max(b / a);
            k2 = k2.max(a / b);
        }
        (0.5 * k1.ln(), 0.5 * k2.ln())
    }
}

/// Lower bounds for Thurston's two asymmetric distances from `t1` to `t2`,
/// taking the sup of length ratios over slopes of height at most `height`.
pub fn thurston_asym(t1: &TraceCoord, t2: &TraceCoord, height: u32) -> (f64, f64) {
    LengthSpectrum::new(t1, height).thurston_against(&LengthSpectrum::new(t2, height))
}

/// Enumerated length-spectra distance: the max of the two asymmetric
/// estimates. A lower bound for the true distance; no upper bound is claimed.
pub fn length_spectra_distance(t1: &TraceCoord, t2: &TraceCoord, height: u32) -> MetricBracket {
    let (d1, d2) = thurston_asym(t1, t2, height);
    MetricBracket::lower_only(d1.max(d2), height, None)
}

/// Values at `max(height / 2, 1)` and at `height`; their difference is the
/// stabilisation gap used as enumeration slack.
pub fn stabilization(t1: &TraceCoord, t2: &TraceCoord, height: u32) -> (f64, f64) {
    let half = (height / 2).max(1);
    (
        length_spectra_distance(t1, t2, half).lower,
        length_spectra_distance(t1, t2, height).lower,
    )
}
