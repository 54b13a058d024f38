//! Hyperbolic structures on the once-punctured torus.

mod fenchel;
mod spectra;
mod trace;

pub use fenchel::{
    fenchel_nielsen, from_fenchel_nielsen, h2_distance, minsky_teich_estimate, zero_twist_point,
    FNPoint, TwistUnit,
};
pub use spectra::{
    length_spectra_distance, stabilization, thurston_asym, LengthSpectrum, MetricBracket,
};
pub use trace::{
    act, dehn_twist, dehn_twist_class, for_each_slope_trace, fricke, half_length_table,
    length_from_trace, length_of_slope, reduce, trace_of_slope, Reduction, Trace, TraceCoord,
    MARKOV_TOLERANCE,
};
