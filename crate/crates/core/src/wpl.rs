//! K-theory of weighted projective lines through canonical algebras.
//!
//! The canonical algebra of weight type `(p_1, ..., p_t)` has a source
//! (vertex `0`), a sink (vertex `n-1`), and `t` arms of `p_i` arrows each.
//! Its Cartan matrix only depends on the weights: the `t` full-arm paths from
//! source to sink span a 2-dimensional space modulo the `t - 2` relations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{clear_denominators, IntMatrix, QMatrix};
use crate::quiver::{coxeter_matrix, matrix_order, LatticeVector, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightType {
    weights: Vec<u32>,
    lambdas: Vec<BigRational>,
}

impl WeightType {
    /// Weight type with the default parameters `λ_3, ..., λ_t = 1, 2, ...`.
    pub fn new(weights: &[u32]) -> Result<Self> {
        let lambdas = (3..=weights.len())
            .map(|i| BigRational::from_integer(BigInt::from(i - 2)))
            .collect();
        WeightType::with_lambdas(weights, lambdas)
    }

    pub fn with_lambdas(weights: &[u32], lambdas: Vec<BigRational>) -> Result<Self> {
        if weights.iter().any(|&p| p < 2) {
            return Err(Error::InvalidWeights(format!(
                "weights must be at least 2: {weights:?}"
            )));
        }
        if lambdas.len() != weights.len().saturating_sub(2) {
            return Err(Error::InvalidWeights(format!(
                "{} weights need {} parameters, got {}",
                weights.len(),
                weights.len().saturating_sub(2),
                lambdas.len()
            )));
        }
        for (i, l) in lambdas.iter().enumerate() {
            if l.is_zero() {
                return Err(Error::InvalidWeights("parameters must be nonzero".into()));
            }
            if lambdas[..i].contains(l) {
                return Err(Error::InvalidWeights(
                    "parameters must be pairwise distinct".into(),
                ));
            }
        }
        Ok(WeightType {
            weights: weights.to_vec(),
            lambdas,
        })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn lambdas(&self) -> &[BigRational] {
        &self.lambdas
    }

    /// `n = 2 + Σ (p_i - 1)`.
    pub fn lattice_rank(&self) -> usize {
        2 + self.weights.iter().map(|&p| p as usize - 1).sum::<usize>()
    }

    pub fn lcm(&self) -> u32 {
        self.weights.iter().fold(1, |acc, &p| acc.lcm(&p))
    }

    pub fn is_tubular(&self) -> bool {
        euler_characteristic(self).is_zero()
    }

    /// Vertex index of the `j`-th interior vertex (`1 <= j < p_i`) on arm `i`.
    pub fn arm_vertex(&self, arm: usize, j: usize) -> usize {
        assert!(j >= 1 && j < self.weights[arm] as usize);
        1 + self.weights[..arm]
            .iter()
            .map(|&p| p as usize - 1)
            .sum::<usize>()
            + (j - 1)
    }

    pub fn sink(&self) -> usize {
        self.lattice_rank() - 1
    }

    /// The canonical quiver (relations are not recorded on it).
    pub fn quiver(&self) -> Result<Quiver> {
        self.check_canonical()?;
        let sink = self.sink();
        let mut arrows = Vec::new();
        for (arm, &p) in self.weights.iter().enumerate() {
            let mut prev = 0;
            for j in 1..p as usize {
                let v = self.arm_vertex(arm, j);
                arrows.push((prev, v));
                prev = v;
            }
            arrows.push((prev, sink));
        }
        Quiver::new(self.lattice_rank(), arrows)
    }

    fn check_canonical(&self) -> Result<()> {
        if self.weights.len() < 2 {
            return Err(Error::InvalidWeights(
                "a canonical algebra needs at least two arms".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for WeightType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `"2,3,6"`.
pub fn parse_weights(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad weight {p:?}")))
        })
        .collect()
}

/// `χ = 2 − Σ (1 − 1/p_i)`.
pub fn euler_characteristic(w: &WeightType) -> BigRational {
    let one = BigRational::one();
    w.weights
        .iter()
        .fold(BigRational::from_integer(2.into()), |acc, &p| {
            acc - (&one - BigRational::new(BigInt::one(), BigInt::from(p)))
        })
}

/// Cartan matrix of the canonical algebra, entry `(v, w)` = dimension of the
/// path space `w -> v` modulo relations; column `w` is `[P_w]`.
pub fn canonical_cartan(w: &WeightType) -> Result<IntMatrix> {
    w.check_canonical()?;
    let n = w.lattice_rank();
    let sink = w.sink();
    let mut c = IntMatrix::identity(n);
    let one = BigInt::one();
    for (arm, &p) in w.weights.iter().enumerate() {
        let arm_vertices: Vec<usize> = (1..p as usize).map(|j| w.arm_vertex(arm, j)).collect();
        for (i, &a) in arm_vertices.iter().enumerate() {
            c.set(a, 0, one.clone());
            c.set(sink, a, one.clone());
            for &b in &arm_vertices[i + 1..] {
                c.set(b, a, one.clone());
            }
        }
    }
    c.set(sink, 0, BigInt::from(2));
    Ok(c)
}

/// The Grothendieck lattice of a tubular weighted projective line.
#[derive(Clone, Debug)]
pub struct TubularLattice {
    weights: WeightType,
    cartan: IntMatrix,
    euler: IntMatrix,
    coxeter: IntMatrix,
    coxeter_inverse: IntMatrix,
    period: u32,
    average: QMatrix,
    radical: Vec<LatticeVector>,
    rank_functional: Vec<BigInt>,
    degree_functional: Vec<BigRational>,
}

/// Builds the lattice; fails for non-tubular weight types.
///
/// Rank is normalised so that every indecomposable projective (the line
/// bundles of the canonical tilting bundle) has rank 1, and degree is
/// `deg y = χ̄(L, y)` for the sink projective `L`, which then has degree 0.
/// `L` maps to every other indecomposable projective, so those have
/// positive degree.
pub fn tubular_lattice(w: &WeightType) -> Result<TubularLattice> {
    let chi = euler_characteristic(w);
    if !chi.is_zero() {
        return Err(Error::NotTubular(w.to_string(), chi.to_string()));
    }
    let n = w.lattice_rank();
    let cartan = canonical_cartan(w)?;
    let cartan_inverse = cartan.integer_inverse()?;
    let euler = cartan_inverse.transpose();
    let coxeter = coxeter_matrix(&cartan)?;
    let coxeter_inverse = coxeter.integer_inverse()?;
    let period = w.lcm();
    if !coxeter.pow(period).is_identity() {
        return Err(Error::NotTubular(
            w.to_string(),
            "Coxeter matrix not periodic".into(),
        ));
    }

    let euler_q = euler.to_rational();
    let mut sum = QMatrix::zeros(n, n);
    let mut power = IntMatrix::identity(n);
    for _ in 0..period {
        sum = sum.add_mat(&power.transpose().to_rational().mul_mat(&euler_q));
        power = power.mul_mat(&coxeter);
    }
    let average = sum.scale(&BigRational::new(BigInt::one(), BigInt::from(period)));

    let radical: Vec<LatticeVector> = average
        .nullspace()
        .iter()
        .map(|v| LatticeVector(clear_denominators(v)))
        .collect();

    let ones = vec![BigInt::one(); n];
    let rank_functional = cartan_inverse.vec_mul(&ones);
    for r in &radical {
        let value: BigInt = rank_functional.iter().zip(&r.0).map(|(a, b)| a * b).sum();
        if !value.is_zero() {
            return Err(Error::NotTubular(
                w.to_string(),
                "rank does not vanish on the radical".into(),
            ));
        }
    }
    let anchor = to_q(&LatticeVector(cartan.column(n - 1)));
    let degree_functional = average.vec_mul(&anchor);

    Ok(TubularLattice {
        weights: w.clone(),
        cartan,
        euler,
        coxeter,
        coxeter_inverse,
        period,
        average,
        radical,
        rank_functional,
        degree_functional,
    })
}

fn to_q(x: &LatticeVector) -> Vec<BigRational> {
    x.0.iter().cloned().map(BigRational::from_integer).collect()
}

impl TubularLattice {
    pub fn weights(&self) -> &WeightType {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.cartan.rows()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn euler(&self) -> &IntMatrix {
        &self.euler
    }

    pub fn coxeter(&self) -> &IntMatrix {
        &self.coxeter
    }

    pub fn coxeter_inverse(&self) -> &IntMatrix {
        &self.coxeter_inverse
    }

    /// `p = lcm(p_i)`.
    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn average_form(&self) -> &QMatrix {
        &self.average
    }

    pub fn radical(&self) -> &[LatticeVector] {
        &self.radical
    }

    pub fn radical_rank(&self) -> usize {
        self.radical.len()
    }

    pub fn rank_functional(&self) -> &[BigInt] {
        &self.rank_functional
    }

    pub fn degree_functional(&self) -> &[BigRational] {
        &self.degree_functional
    }

    /// `[P_v]`.
    pub fn projective(&self, v: usize) -> LatticeVector {
        LatticeVector(self.cartan.column(v))
    }

    pub fn simple(&self, v: usize) -> LatticeVector {
        LatticeVector::unit(self.dim(), v)
    }

    pub fn check(&self, x: &LatticeVector) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Euler form `χ(x, y)`.
    pub fn chi(&self, x: &LatticeVector, y: &LatticeVector) -> BigInt {
        self.euler.bilinear(&x.0, &y.0)
    }

    /// Average Euler form `χ̄(x, y) = (1/p) Σ_j χ(Φ^j x, y)`.
    pub fn chi_bar(&self, x: &LatticeVector, y: &LatticeVector) -> BigRational {
        self.average.bilinear(&to_q(x), &to_q(y))
    }

    pub fn tau(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector::apply(&self.coxeter, x)
    }

    pub fn tau_inverse(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector::apply(&self.coxeter_inverse, x)
    }

    pub fn in_radical(&self, x: &LatticeVector) -> bool {
        self.average.mul_vec(&to_q(x)).iter().all(Zero::is_zero)
    }

    /// Checks `χ̄ = rk ∧ deg` as an exact matrix identity.
    pub fn rank_degree_identity_holds(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let ri = BigRational::from_integer(self.rank_functional[i].clone());
                let rj = BigRational::from_integer(self.rank_functional[j].clone());
                let wedge = &ri * &self.degree_functional[j] - &self.degree_functional[i] * &rj;
                self.average.get(i, j) == &wedge
            })
        })
    }

    pub fn is_antisymmetric(&self) -> bool {
        let neg = -&self.average;
        self.average.transpose() == neg
    }
}

/// `(rk x, deg x)`.
pub fn rank_degree(lat: &TubularLattice, x: &LatticeVector) -> (BigInt, BigRational) {
    let rk = lat
        .rank_functional
        .iter()
        .zip(&x.0)
        .map(|(a, b)| a * b)
        .sum();
    let deg = lat
        .degree_functional
        .iter()
        .zip(&x.0)
        .fold(BigRational::zero(), |acc, (a, b)| {
            acc + a * BigRational::from_integer(b.clone())
        });
    (rk, deg)
}

/// `μ = deg / rk ∈ Q ∪ {∞}`; finite slopes sort below `∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(BigRational),
    Infinite,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(q) => write!(f, "{q}"),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn slope_of(rk: &BigInt, deg: &BigRational) -> Result<Slope> {
    if rk.is_zero() {
        if deg.is_zero() {
            return Err(Error::UndefinedSlope);
        }
        return Ok(Slope::Infinite);
    }
    Ok(Slope::Finite(deg / BigRational::from_integer(rk.clone())))
}

pub fn slope(lat: &TubularLattice, x: &LatticeVector) -> Result<Slope> {
    lat.check(x)?;
    let (rk, deg) = rank_degree(lat, x);
    slope_of(&rk, &deg)
}

/// `χ̄(x, y)`; positive whenever `x`, `y` have positive rank and `μx < μy`.
pub fn hom_direction_check(
    lat: &TubularLattice,
    x: &LatticeVector,
    y: &LatticeVector,
) -> BigRational {
    lat.chi_bar(x, y)
}

/// Nonempty weight types (weights >= 2, nondecreasing) with `Σ p_i <= max_sum`.
pub fn weight_types_up_to(max_sum: u32) -> Vec<Vec<u32>> {
    fn go(min: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for p in min..=left {
            cur.push(p);
            go(p, left - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(2, max_sum, &mut Vec::new(), &mut out);
    out
}

pub const TUBULAR_TYPES: [[u32; 4]; 4] = [[2, 2, 2, 2], [3, 3, 3, 0], [2, 4, 4, 0], [2, 3, 6, 0]];

/// The four tubular weight types.
pub fn tubular_types() -> Vec<WeightType> {
    TUBULAR_TYPES
        .iter()
        .map(|w| {
            let ws: Vec<u32> = w.iter().copied().filter(|&p| p > 0).collect();
            WeightType::new(&ws).expect("tubular weights are valid")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WplSummary {
    pub weights: Vec<u32>,
    pub chi: String,
    pub n: usize,
    pub p: u32,
    pub coxeter_order: Option<usize>,
    pub radical_rank: Option<usize>,
    pub identity_check: bool,
}

/// One-line numerical summary; lattice fields are only filled for tubular types.
pub fn summarize(w: &WeightType) -> Result<WplSummary> {
    let chi = euler_characteristic(w);
    let mut summary = WplSummary {
        weights: w.weights.clone(),
        chi: chi.to_string(),
        n: w.lattice_rank(),
        p: w.lcm(),
        coxeter_order: None,
        radical_rank: None,
        identity_check: false,
    };
    if chi.is_zero() {
        let lat = tubular_lattice(w)?;
        summary.coxeter_order = matrix_order(lat.coxeter(), lat.period() as usize);
        summary.radical_rank = Some(lat.radical_rank());
        summary.identity_check = lat.is_antisymmetric() && lat.rank_degree_identity_holds();
    }
    Ok(summary)
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(q: &BigRational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}
