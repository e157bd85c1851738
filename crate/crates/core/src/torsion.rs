//! Slope cuts on tubular lattices.
//!
//! A cut at `θ ∈ ℚ ∪ {∞}` (or at an irrational `θ`, held as a rational
//! bracket) sends classes of slope `> θ` to the torsion side and `< θ` to the
//! torsion-free side; slope exactly `θ` is a boundary case whose fate is
//! decided by a policy on the tubes of that slope.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::parse_rational;
use crate::quiver::LatticeVector;
use crate::wpl::{rank_degree, slope, Slope, TubularLattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theta {
    Rational(BigRational),
    Infinity,
    /// An irrational number known to lie strictly between `lo` and `hi`.
    Irrational {
        lo: BigRational,
        hi: BigRational,
    },
}

impl Theta {
    pub fn rational(p: i64, q: i64) -> Self {
        Theta::Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn irrational(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyBracket(lo.to_string(), hi.to_string()));
        }
        Ok(Theta::Irrational { lo, hi })
    }

    pub fn is_irrational(&self) -> bool {
        matches!(self, Theta::Irrational { .. })
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Rational(q) => write!(f, "{q}"),
            Theta::Infinity => write!(f, "inf"),
            Theta::Irrational { lo, hi } => write!(f, "({lo},{hi})"),
        }
    }
}

impl Serialize for Theta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `"1/2"`, `"-3"`, `"inf"`, or a bracket `"(1/2,2/3)"` for an irrational.
impl FromStr for Theta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "∞") {
            return Ok(Theta::Infinity);
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (lo, hi) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad bracket {s:?}")))?;
            return Theta::irrational(rat(lo)?, rat(hi)?);
        }
        Ok(Theta::Rational(rat(s)?))
    }
}

fn rat(s: &str) -> Result<BigRational> {
    parse_rational(s.trim()).ok_or_else(|| Error::Parse(format!("not a rational: {s:?}")))
}

/// How the tubes of slope exactly `θ` are split. Only a token: the lattice
/// cannot see individual tubes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BoundaryPolicy {
    AllTorsion,
    AllFree,
    Subset(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeCut {
    pub theta: Theta,
    pub boundary: BoundaryPolicy,
}

impl SlopeCut {
    pub fn new(theta: Theta) -> Self {
        SlopeCut {
            theta,
            boundary: BoundaryPolicy::AllTorsion,
        }
    }

    pub fn with_policy(theta: Theta, boundary: BoundaryPolicy) -> Self {
        SlopeCut { theta, boundary }
    }

    /// Where a slope sits relative to `θ`.
    pub fn compare(&self, mu: &Slope) -> Result<Ordering> {
        Ok(match (&self.theta, mu) {
            (Theta::Infinity, Slope::Infinite) => Ordering::Equal,
            (Theta::Infinity, Slope::Finite(_)) => Ordering::Less,
            (_, Slope::Infinite) => Ordering::Greater,
            (Theta::Rational(q), Slope::Finite(m)) => m.cmp(q),
            (Theta::Irrational { lo, hi }, Slope::Finite(m)) => {
                if m <= lo {
                    Ordering::Less
                } else if m >= hi {
                    Ordering::Greater
                } else {
                    return Err(Error::BracketTooWide {
                        slope: m.to_string(),
                        lo: lo.to_string(),
                        hi: hi.to_string(),
                    });
                }
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Torsion,
    Free,
    Boundary,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Torsion => "T",
            Side::Free => "F",
            Side::Boundary => "Boundary",
        }
    }
}

pub fn classify_slope(cut: &SlopeCut, mu: &Slope) -> Result<Side> {
    Ok(match cut.compare(mu)? {
        Ordering::Greater => Side::Torsion,
        Ordering::Less => Side::Free,
        Ordering::Equal => Side::Boundary,
    })
}

pub fn classify(cut: &SlopeCut, lat: &TubularLattice, x: &LatticeVector) -> Result<Side> {
    classify_slope(cut, &slope(lat, x)?)
}

/// Resolves a boundary class by the cut's policy; `None` for subset tokens.
pub fn resolve(cut: &SlopeCut, side: Side) -> Option<Side> {
    match (side, &cut.boundary) {
        (Side::Boundary, BoundaryPolicy::AllTorsion) => Some(Side::Torsion),
        (Side::Boundary, BoundaryPolicy::AllFree) => Some(Side::Free),
        (Side::Boundary, BoundaryPolicy::Subset(_)) => None,
        (s, _) => Some(s),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub slope_torsion: Slope,
    pub slope_free: Slope,
    /// `μf < μt`.
    pub slopes_ordered: bool,
    /// `χ̄(f, t)`.
    #[serde(serialize_with = "crate::linalg::serialize_display")]
    pub chi_bar_ft: BigRational,
    /// `χ̄(f, t) > 0`; only asserted when `f` has positive rank.
    pub chi_positive: Option<bool>,
}

impl SplitReport {
    pub fn pass(&self) -> bool {
        self.slopes_ordered && self.chi_positive.unwrap_or(true)
    }
}

/// Classes that can be objects of the heart: positive rank, or rank zero
/// with positive degree.
pub fn is_effective(lat: &TubularLattice, x: &LatticeVector) -> bool {
    let (rk, deg) = rank_degree(lat, x);
    rk.is_positive() || (rk.is_zero() && deg.is_positive())
}

/// Directional consistency of a torsion/torsion-free pair.
pub fn split_sign_check(
    cut: &SlopeCut,
    lat: &TubularLattice,
    t: &LatticeVector,
    f: &LatticeVector,
) -> Result<SplitReport> {
    for (name, x) in [("t", t), ("f", f)] {
        if !is_effective(lat, x) {
            return Err(Error::Precondition(format!(
                "{name} is not an effective class"
            )));
        }
    }
    if classify(cut, lat, t)? != Side::Torsion {
        return Err(Error::Precondition("t is not on the torsion side".into()));
    }
    if classify(cut, lat, f)? != Side::Free {
        return Err(Error::Precondition("f is not on the free side".into()));
    }
    let slope_torsion = slope(lat, t)?;
    let slope_free = slope(lat, f)?;
    let chi_bar_ft = lat.chi_bar(f, t);
    let (rk_f, _) = rank_degree(lat, f);
    let chi_positive = rk_f.is_positive().then(|| chi_bar_ft.is_positive());
    Ok(SplitReport {
        slopes_ordered: slope_free < slope_torsion,
        slope_torsion,
        slope_free,
        chi_bar_ft,
        chi_positive,
    })
}

/// A random effective class with entries bounded by `bound`.
pub fn random_effective_class<R: Rng>(
    lat: &TubularLattice,
    rng: &mut R,
    bound: i64,
) -> LatticeVector {
    loop {
        let x = LatticeVector(
            (0..lat.dim())
                .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                .collect(),
        );
        if is_effective(lat, &x) {
            return x;
        }
        let neg = -&x;
        if is_effective(lat, &neg) {
            return neg;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionAnswer {
    pub slope: Slope,
    pub class: &'static str,
}

pub fn query(lat: &TubularLattice, theta: Theta, x: &LatticeVector) -> Result<TorsionAnswer> {
    let cut = SlopeCut::new(theta);
    let mu = slope(lat, x)?;
    let side = classify_slope(&cut, &mu)?;
    Ok(TorsionAnswer {
        slope: mu,
        class: side.label(),
    })
}
