//! Surface types and simple closed curves on the once-punctured torus.
//!
//! Essential simple closed curves on `S_{1,1}` are in bijection with the
//! extended rationals: the curve with homology class `±(p, q)` is the slope
//! `p/q`. Mapping classes are `SL(2, Z)` matrices modulo `±I`, acting on
//! column vectors `(p, q)`.

use std::collections::HashSet;
use std::fmt;

use crate::{Error, Result};

/// Topological type `S_{g,n}` with complexity `d = 3g - 3 + n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceKind {
    genus: u32,
    punctures: u32,
}

impl SurfaceKind {
    pub fn new(genus: u32, punctures: u32) -> Result<Self> {
        let complexity = 3 * i64::from(genus) - 3 + i64::from(punctures);
        if complexity < 1 {
            return Err(Error::LowComplexity {
                genus,
                punctures,
                complexity,
            });
        }
        Ok(Self { genus, punctures })
    }

    /// The once-punctured torus.
    pub fn once_punctured_torus() -> Self {
        Self {
            genus: 1,
            punctures: 1,
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn punctures(&self) -> u32 {
        self.punctures
    }

    /// Number of curves in a pants decomposition, which is also the
    /// dimension of the cone over a maximal simplex of the curve complex.
    pub fn complexity(&self) -> usize {
        (3 * self.genus as usize + self.punctures as usize) - 3
    }
}

/// A slope `p/q` in canonical form: `gcd(|p|, q) = 1` and either `q > 0` or
/// `(p, q) = (1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Slope {
    /// Reduces `(p, q)` to the canonical representative of its projective
    /// class.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::ZeroSlope);
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Self { p, q })
    }

    /// `0/1`, the curve carried by the first generator of the marking.
    pub const ZERO: Slope = Slope { p: 0, q: 1 };
    /// `1/0`, the curve carried by the second generator.
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    /// `1/1`, the product of the two generators.
    pub const ONE: Slope = Slope { p: 1, q: 1 };
    /// `-1/1`.
    pub const MINUS_ONE: Slope = Slope { p: -1, q: 1 };

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `max(|p|, q)`, the enumeration height.
    pub fn height(&self) -> i64 {
        self.p.abs().max(self.q)
    }

    /// Ordering key used by [`enumerate_slopes`]: by `q`, then by `p`.
    pub fn enumeration_key(&self) -> (i64, i64) {
        (self.q, self.p)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Geometric intersection number `|p_a q_b - p_b q_a|`.
pub fn intersection_number(a: Slope, b: Slope) -> u64 {
    (a.p * b.q - b.p * a.q).unsigned_abs()
}

/// All canonical slopes with `max(|p|, q) <= max_height`, ordered by `q`
/// then `p`.
pub fn enumerate_slopes(max_height: u32) -> Vec<Slope> {
    let h = i64::from(max_height);
    let mut out = Vec::new();
    if h < 1 {
        return out;
    }
    out.push(Slope::INFINITY);
    for q in 1..=h {
        for p in -h..=h {
            if gcd(p, q) == 1 {
                out.push(Slope { p, q });
            }
        }
    }
    out
}

/// An element of `PSL(2, Z)`: a determinant one integer matrix up to sign.
///
/// Acts on slopes by `(p, q) -> (a p + b q, c p + d q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MappingClass {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl MappingClass {
    pub const IDENTITY: MappingClass = MappingClass {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    /// `S = [[0, -1], [1, 0]]`, canonicalised.
    pub fn s() -> Self {
        Self::new(0, -1, 1, 0).expect("unimodular")
    }

    /// `T = [[1, 1], [0, 1]]`.
    pub fn t() -> Self {
        Self::new(1, 1, 0, 1).expect("unimodular")
    }

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::NotUnimodular(a, b, c, d));
        }
        // (a, c) is never (0, 0); make its first nonzero entry positive.
        let flip = a < 0 || (a == 0 && c < 0);
        Ok(if flip {
            Self {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            Self { a, b, c, d }
        })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a).expect("inverse is unimodular")
    }

    /// Matrix product `self * rhs`; acting by the product applies `rhs` first.
    pub fn compose(&self, rhs: &MappingClass) -> Self {
        Self::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
        .expect("product of unimodular matrices")
    }

    /// Image of the column vector `(p, q)`, without canonicalisation.
    pub fn apply_vec(&self, p: i64, q: i64) -> (i64, i64) {
        (self.a * p + self.b * q, self.c * p + self.d * q)
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn apply_mapping_class(m: &MappingClass, s: Slope) -> Slope {
    let (p, q) = m.apply_vec(s.p, s.q);
    Slope::new(p, q).expect("unimodular image of a nonzero vector is nonzero")
}

/// All projective classes of words of length at most `radius` in `S`, `T`
/// and their inverses, in breadth-first order.
pub fn mapping_class_ball(radius: u32) -> Vec<MappingClass> {
    let t = MappingClass::t();
    let generators = [MappingClass::s(), t, t.inverse()];
    let mut seen = HashSet::new();
    let mut ball = vec![MappingClass::IDENTITY];
    seen.insert(MappingClass::IDENTITY);
    let mut frontier = ball.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &generators {
                let m = w.compose(g);
                if seen.insert(m) {
                    next.push(m);
                }
            }
        }
        ball.extend_from_slice(&next);
        frontier = next;
    }
    ball
}
