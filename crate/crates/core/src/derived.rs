//! Combinatorial model of `D^b(rep Q)` for a Dynkin quiver `Q`.
//!
//! Indecomposables are pairs (positive root, shift). The AR translate acts
//! through the Coxeter matrix: a root that `Φ` keeps positive stays in the
//! same degree, and a root that `Φ` turns negative (a projective) lands one
//! degree lower as an injective.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cy::CyPair;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::quiver::{cartan_matrix, coxeter_matrix, euler_form, LatticeVector, Quiver};

/// Largest coordinate of any positive root of a simply-laced Dynkin diagram
/// (attained by the highest root of `E_8`).
pub const ROOT_COORDINATE_BOUND: i64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) => n,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DynkinType::A(n) if n >= 1 => Ok(()),
            DynkinType::D(n) if n >= 4 => Ok(()),
            DynkinType::E6 | DynkinType::E7 | DynkinType::E8 => Ok(()),
            _ => Err(Error::NotDynkin(self.to_string())),
        }
    }

    /// Edges of the diagram in the standard labelling: a path `0 - 1 - ...`
    /// with, for `D_n`, vertex `n-1` attached to `n-3` and, for `E_n`,
    /// vertex `n-1` attached to `2`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        match *self {
            DynkinType::A(_) => (1..n).map(|i| (i - 1, i)).collect(),
            DynkinType::D(_) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            DynkinType::E6 | DynkinType::E7 | DynkinType::E8 => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }

    /// Number of positive roots.
    pub fn root_count(&self) -> usize {
        match *self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E6 => 36,
            DynkinType::E7 => 63,
            DynkinType::E8 => 120,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

impl std::str::FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_uppercase().replace('_', "");
        let bad = || Error::Parse(format!("unknown Dynkin type {s:?}"));
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        let ty = match (head, n) {
            ("A", n) => DynkinType::A(n),
            ("D", n) => DynkinType::D(n),
            ("E", 6) => DynkinType::E6,
            ("E", 7) => DynkinType::E7,
            ("E", 8) => DynkinType::E8,
            _ => return Err(bad()),
        };
        ty.validate()?;
        Ok(ty)
    }
}

/// A Dynkin diagram with a chosen orientation of every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinQuiver {
    ty: DynkinType,
    quiver: Quiver,
    coxeter: IntMatrix,
    coxeter_inverse: IntMatrix,
}

impl DynkinQuiver {
    /// `orientation` must contain each edge of the standard diagram exactly
    /// once, in either direction.
    pub fn new(ty: DynkinType, orientation: Vec<(usize, usize)>) -> Result<Self> {
        ty.validate()?;
        let mut expected: Vec<(usize, usize)> = ty.edges();
        expected.sort_unstable();
        let mut got: Vec<(usize, usize)> = orientation
            .iter()
            .map(|&(s, t)| (s.min(t), s.max(t)))
            .collect();
        got.sort_unstable();
        if got != expected {
            return Err(Error::NotDynkin(ty.to_string()));
        }
        let quiver = Quiver::new(ty.rank(), orientation)?;
        let coxeter = coxeter_matrix(&cartan_matrix(&quiver)?)?;
        let coxeter_inverse = coxeter.integer_inverse()?;
        Ok(DynkinQuiver {
            ty,
            quiver,
            coxeter,
            coxeter_inverse,
        })
    }

    /// Every edge oriented from the smaller to the larger label.
    pub fn standard(ty: DynkinType) -> Result<Self> {
        ty.validate()?;
        DynkinQuiver::new(ty, ty.edges())
    }

    /// All `2^(edges)` orientations of the diagram.
    pub fn all_orientations(ty: DynkinType) -> Result<Vec<Self>> {
        ty.validate()?;
        let edges = ty.edges();
        (0u32..1 << edges.len())
            .map(|mask| {
                let arrows = edges
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
                    .collect();
                DynkinQuiver::new(ty, arrows)
            })
            .collect()
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.ty
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn coxeter(&self) -> &IntMatrix {
        &self.coxeter
    }

    /// Tits form `q(d) = χ(d, d)`.
    pub fn tits_form(&self, d: &LatticeVector) -> BigInt {
        euler_form(&self.quiver, d, d).expect("vector length matches quiver")
    }
}

/// The positive roots, found by closing the simple roots under adding simple
/// roots while the Tits form stays 1, within the coordinate bound.
pub fn positive_roots(q: &DynkinQuiver) -> BTreeSet<LatticeVector> {
    let n = q.ty.rank();
    let one = BigInt::from(1);
    let bound = BigInt::from(ROOT_COORDINATE_BOUND);
    let mut roots = BTreeSet::new();
    let mut queue: VecDeque<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    while let Some(d) = queue.pop_front() {
        if !roots.insert(d.clone()) {
            continue;
        }
        for i in 0..n {
            let mut next = d.clone();
            next.0[i] += 1;
            if next.0[i] <= bound && q.tits_form(&next) == one && !roots.contains(&next) {
                queue.push_back(next);
            }
        }
    }
    roots
}

/// Indecomposable object `M_root[shift]` of the derived category.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DerivedObject {
    pub root: LatticeVector,
    pub shift: i64,
}

impl fmt::Debug for DerivedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.root, self.shift)
    }
}

impl DerivedObject {
    pub fn new(root: LatticeVector, shift: i64) -> Self {
        DerivedObject { root, shift }
    }

    pub fn shift_by(&self, k: i64) -> Self {
        DerivedObject {
            root: self.root.clone(),
            shift: self.shift + k,
        }
    }
}

fn signed_lift(v: LatticeVector, shift: i64, negative_shift: i64) -> DerivedObject {
    if v.is_positive() {
        DerivedObject::new(v, shift)
    } else {
        let neg = -&v;
        assert!(
            neg.is_positive(),
            "Coxeter image {v:?} is neither positive nor negative"
        );
        DerivedObject::new(neg, shift + negative_shift)
    }
}

/// `τ` on indecomposables: `(Φd, n)` when `Φd > 0`, otherwise `(−Φd, n−1)`.
pub fn tau_derived(x: &DerivedObject, q: &DynkinQuiver) -> DerivedObject {
    signed_lift(LatticeVector::apply(&q.coxeter, &x.root), x.shift, -1)
}

/// `τ⁻¹`, the inverse rule through `Φ⁻¹`.
pub fn tau_inverse_derived(x: &DerivedObject, q: &DynkinQuiver) -> DerivedObject {
    signed_lift(
        LatticeVector::apply(&q.coxeter_inverse, &x.root),
        x.shift,
        1,
    )
}

/// The Serre functor `S = τ[1]`.
pub fn serre(x: &DerivedObject, q: &DynkinQuiver) -> DerivedObject {
    tau_derived(x, q).shift_by(1)
}

pub fn shift_by(x: &DerivedObject, k: i64) -> DerivedObject {
    x.shift_by(k)
}

/// Minimal `n ≤ bound` with `S^n` acting on every indecomposable as one
/// common shift `[m]`.
pub fn cy_dimension(q: &DynkinQuiver, bound: usize) -> Result<CyPair> {
    let start: Vec<DerivedObject> = positive_roots(q)
        .into_iter()
        .map(|r| DerivedObject::new(r, 0))
        .collect();
    let mut current = start.clone();
    for n in 1..=bound {
        current = current.iter().map(|x| serre(x, q)).collect();
        let m = current[0].shift;
        if current
            .iter()
            .zip(&start)
            .all(|(c, s)| c.root == s.root && c.shift == m)
        {
            return Ok(CyPair::new(n as u32, m));
        }
    }
    Err(Error::BoundExceeded(bound))
}

/// Checks that `τ` permutes the indecomposables with roots in `roots` and
/// shift in `shifts`, up to boundary effects, by verifying `τ⁻¹ τ = id`.
pub fn tau_round_trips(q: &DynkinQuiver, shifts: std::ops::RangeInclusive<i64>) -> bool {
    let roots = positive_roots(q);
    let mut images = HashSet::new();
    for r in &roots {
        for s in shifts.clone() {
            let x = DerivedObject::new(r.clone(), s);
            let y = tau_derived(&x, q);
            if !roots.contains(&y.root) || tau_inverse_derived(&y, q) != x {
                return false;
            }
            images.insert(y);
        }
    }
    images.len() == roots.len() * shifts.count()
}

/// `S^n` on every indecomposable, if it is one common shift `[m]`.
pub fn serre_power_shift(q: &DynkinQuiver, n: usize) -> Option<i64> {
    let mut m = None;
    for r in positive_roots(q) {
        let x = DerivedObject::new(r, 0);
        let mut y = x.clone();
        for _ in 0..n {
            y = serre(&y, q);
        }
        if y.root != x.root || m.is_some_and(|m| m != y.shift) {
            return None;
        }
        m = Some(y.shift);
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyTableRow {
    #[serde(rename = "type")]
    pub ty: String,
    /// Coxeter number, the order of `Φ`.
    pub h: u32,
    pub h_minus_2: i64,
    /// `(h-2)/h` in lowest terms.
    pub reduced: String,
    /// `S^h ≅ [h-2]` on every indecomposable.
    pub serre_h_is_shift: bool,
    /// Smallest `(n, m)` with `S^n ≅ [m]` on objects.
    pub minimal: CyPair,
}

pub fn cy_table(types: &[DynkinType]) -> Result<Vec<CyTableRow>> {
    types
        .iter()
        .map(|&ty| {
            let q = DynkinQuiver::standard(ty)?;
            let h = crate::quiver::matrix_order(q.coxeter(), 64).ok_or(Error::BoundExceeded(64))?;
            let pair = CyPair::new(h as u32, h as i64 - 2);
            let (num, den) = pair.reduced();
            Ok(CyTableRow {
                ty: ty.to_string(),
                h: pair.n,
                h_minus_2: pair.m,
                reduced: format!("{num}/{den}"),
                serre_h_is_shift: serre_power_shift(&q, h) == Some(pair.m),
                minimal: cy_dimension(&q, 64)?,
            })
        })
        .collect()
}
