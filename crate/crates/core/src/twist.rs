//! Generalised 1-spherical twists.
//!
//! On `K_0` the twist along `E = ⊕ E_i` and its dual are
//!
//! * `t_E(x)  = x − Σ_i χ(e_i, x) e_i`
//! * `t*_E(x) = x − Σ_i χ(x, e_i) e_i`
//!
//! and they are mutually inverse once the classes satisfy
//! `χ(e_i, e_j) = δ_ij − δ_{σ(i), j}` together with the Serre-duality shadow
//! `χ(e_i, x) = −χ(x, e_σ(i))` for every `x`. On explicit representations
//! the twist is computed in the case where the evaluation map already
//! determines the cone, i.e. when `Ext¹(E, X)` (or `Ext¹(X, E)`) vanishes.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, QMatrix};
use crate::quiver::{cartan_matrix, coxeter_matrix, LatticeVector, Quiver};
use crate::rep::{self, ker_coker, Rep};
use crate::wpl::TubularLattice;

/// `K_0` with its Euler form and the Coxeter transformation `Φ = [τ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerLattice {
    euler: IntMatrix,
    coxeter: IntMatrix,
    coxeter_inverse: IntMatrix,
}

impl EulerLattice {
    pub fn new(euler: IntMatrix, coxeter: IntMatrix) -> Result<Self> {
        let coxeter_inverse = coxeter.integer_inverse()?;
        if euler.rows() != coxeter.rows() || !euler.is_square() {
            return Err(Error::DimensionMismatch {
                expected: euler.rows(),
                got: coxeter.rows(),
            });
        }
        Ok(EulerLattice {
            euler,
            coxeter,
            coxeter_inverse,
        })
    }

    /// Lattice of an acyclic quiver, in the basis of simples.
    pub fn of_quiver(q: &Quiver) -> Result<Self> {
        let c = cartan_matrix(q)?;
        EulerLattice::new(q.euler_matrix(), coxeter_matrix(&c)?)
    }

    /// Lattice of a rank-`r` tube in the basis of simples; `Φ [S_i] = [S_{i+1}]`.
    pub fn of_tube(r: usize) -> Result<Self> {
        let q = Quiver::cyclic(r)?;
        let shift = IntMatrix::from_fn(r, r, |i, j| {
            if i == (j + 1) % r {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        EulerLattice::new(q.euler_matrix(), shift)
    }

    pub fn of_tubular(lat: &TubularLattice) -> Self {
        EulerLattice {
            euler: lat.euler().clone(),
            coxeter: lat.coxeter().clone(),
            coxeter_inverse: lat.coxeter_inverse().clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.euler.rows()
    }

    pub fn euler(&self) -> &IntMatrix {
        &self.euler
    }

    pub fn chi(&self, x: &LatticeVector, y: &LatticeVector) -> BigInt {
        self.euler.bilinear(&x.0, &y.0)
    }

    pub fn tau(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector::apply(&self.coxeter, x)
    }

    pub fn tau_inverse(&self, x: &LatticeVector) -> LatticeVector {
        LatticeVector::apply(&self.coxeter_inverse, x)
    }

    pub fn tau_pow(&self, x: &LatticeVector, k: i64) -> LatticeVector {
        let mut y = x.clone();
        for _ in 0..k.unsigned_abs() {
            y = if k > 0 {
                self.tau(&y)
            } else {
                self.tau_inverse(&y)
            };
        }
        y
    }

    /// `τ`-orbit of `x`, if it closes within `max` steps.
    pub fn orbit(&self, x: &LatticeVector, max: usize) -> Option<Vec<LatticeVector>> {
        let mut orbit = vec![x.clone()];
        loop {
            let next = self.tau(orbit.last().expect("nonempty"));
            if &next == x {
                return Some(orbit);
            }
            if orbit.len() >= max {
                return None;
            }
            orbit.push(next);
        }
    }
}

/// Classes `e_1..e_r` of a generalised 1-spherical object with its permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalData {
    #[serde(skip)]
    euler: IntMatrix,
    classes: Vec<LatticeVector>,
    sigma: Vec<usize>,
}

impl SphericalData {
    pub fn new(euler: &IntMatrix, classes: Vec<LatticeVector>, sigma: Vec<usize>) -> Result<Self> {
        let r = classes.len();
        let n = euler.rows();
        if r == 0 {
            return Err(Error::InvalidSphericalData("no classes".into()));
        }
        if sigma.len() != r {
            return Err(Error::InvalidSphericalData("σ has the wrong length".into()));
        }
        let mut seen = vec![false; r];
        for &s in &sigma {
            if s >= r || seen[s] {
                return Err(Error::InvalidSphericalData(format!(
                    "{sigma:?} is not a permutation"
                )));
            }
            seen[s] = true;
        }
        for e in &classes {
            if e.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.len(),
                });
            }
        }
        let chi = |a: &LatticeVector, b: &LatticeVector| euler.bilinear(&a.0, &b.0);
        for i in 0..r {
            for j in 0..r {
                let expected = i64::from(i == j) - i64::from(sigma[i] == j);
                if chi(&classes[i], &classes[j]) != BigInt::from(expected) {
                    return Err(Error::InvalidSphericalData(format!(
                        "χ(e_{i}, e_{j}) = {}, expected {expected}",
                        chi(&classes[i], &classes[j])
                    )));
                }
            }
        }
        for i in 0..r {
            for v in 0..n {
                let x = LatticeVector::unit(n, v);
                if chi(&classes[i], &x) != -chi(&x, &classes[sigma[i]]) {
                    return Err(Error::InvalidSphericalData(format!(
                        "χ(e_{i}, x) ≠ −χ(x, e_σ({i})) at basis vector {v}"
                    )));
                }
            }
        }
        Ok(SphericalData {
            euler: euler.clone(),
            classes,
            sigma,
        })
    }

    pub fn classes(&self) -> &[LatticeVector] {
        &self.classes
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn r(&self) -> usize {
        self.classes.len()
    }

    fn chi(&self, a: &LatticeVector, b: &LatticeVector) -> BigInt {
        self.euler.bilinear(&a.0, &b.0)
    }
}

/// `t_E(x) = x − Σ χ(e_i, x) e_i`.
pub fn twist_class(e: &SphericalData, x: &LatticeVector) -> LatticeVector {
    e.classes
        .iter()
        .fold(x.clone(), |acc, ei| &acc - &ei.scaled(&e.chi(ei, x)))
}

/// `t*_E(x) = x − Σ χ(x, e_i) e_i`.
pub fn dual_twist_class(e: &SphericalData, x: &LatticeVector) -> LatticeVector {
    e.classes
        .iter()
        .fold(x.clone(), |acc, ei| &acc - &ei.scaled(&e.chi(x, ei)))
}

/// Homology of an explicitly computed twist in a hereditary category:
/// `degree0` sits in degree 0 and `shifted` in the other nonzero degree
/// (`-1` for `T_E`, `+1` for `T*_E`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitTwist {
    pub degree0: Rep,
    pub shifted: Rep,
}

impl ExplicitTwist {
    /// Class in `K_0`: `[degree0] − [shifted]`.
    pub fn class(&self) -> LatticeVector {
        &self.degree0.dim_vector() - &self.shifted.dim_vector()
    }
}

fn check_family(family: &[Rep], x: &Rep) -> Result<()> {
    if family.is_empty() {
        return Err(Error::InvalidSphericalData("empty family".into()));
    }
    for (i, a) in family.iter().enumerate() {
        if a.quiver() != x.quiver() {
            return Err(Error::QuiverMismatch);
        }
        for (j, b) in family.iter().enumerate() {
            if rep::hom_dim(a, b)? != usize::from(i == j) {
                return Err(Error::InvalidSphericalData(format!(
                    "Hom(E_{i}, E_{j}) is not δ_ij"
                )));
            }
        }
    }
    Ok(())
}

/// `T_E X` when `Ext¹(E_i, X) = 0` for every `i`: the cone of the evaluation
/// `⊕_i Hom(E_i, X) ⊗ E_i → X` has `H^0 = coker` and `H^{-1} = ker`.
pub fn twist_explicit(family: &[Rep], x: &Rep) -> Result<ExplicitTwist> {
    check_family(family, x)?;
    for e in family {
        if rep::ext1_dim(e, x)? != 0 {
            return Err(Error::NonvanishingExt);
        }
    }
    let q = x.quiver();
    let mut summands = Vec::new();
    let mut components: Vec<Vec<QMatrix>> = Vec::new();
    for e in family {
        for f in rep::hom_space(e, x)?.basis {
            summands.push(e.clone());
            components.push(f);
        }
    }
    let source = Rep::direct_sum(&summands, q)?;
    let ev: Vec<QMatrix> = (0..q.vertex_count())
        .map(|v| {
            let blocks: Vec<QMatrix> = components.iter().map(|f| f[v].clone()).collect();
            QMatrix::hstack(x.dims()[v], &blocks)
        })
        .collect();
    let (ker, coker) = ker_coker(&ev, &source, x)?;
    Ok(ExplicitTwist {
        degree0: coker,
        shifted: ker,
    })
}

/// `T*_E X` when `Ext¹(X, E_i) = 0` for every `i`: the fibre of the
/// coevaluation `X → ⊕_i Hom(X, E_i)* ⊗ E_i` has `H^0 = ker` and `H^1 = coker`.
pub fn dual_twist_explicit(family: &[Rep], x: &Rep) -> Result<ExplicitTwist> {
    check_family(family, x)?;
    for e in family {
        if rep::ext1_dim(x, e)? != 0 {
            return Err(Error::NonvanishingExt);
        }
    }
    let q = x.quiver();
    let mut summands = Vec::new();
    let mut components: Vec<Vec<QMatrix>> = Vec::new();
    for e in family {
        for f in rep::hom_space(x, e)?.basis {
            summands.push(e.clone());
            components.push(f);
        }
    }
    let target = Rep::direct_sum(&summands, q)?;
    let coev: Vec<QMatrix> = (0..q.vertex_count())
        .map(|v| {
            let blocks: Vec<QMatrix> = components.iter().map(|f| f[v].clone()).collect();
            QMatrix::vstack(x.dims()[v], &blocks)
        })
        .collect();
    let (ker, coker) = ker_coker(&coev, x, &target)?;
    Ok(ExplicitTwist {
        degree0: ker,
        shifted: coker,
    })
}

/// Classes `[L]`, `[S]` of two peripheral objects, `S` in a tube of rank `s`.
#[derive(Clone, Debug)]
pub struct LSequenceConfig {
    lattice: EulerLattice,
    l: LatticeVector,
    s: LatticeVector,
    tube_rank: usize,
    e: LatticeVector,
}

impl LSequenceConfig {
    /// Checks `χ(L,L) = 1`, `χ(L,E) = 1`, `χ(E,L) = −1`, `χ(E,E) = 0` for
    /// `[E] = Σ_{k<s} τ^k [S]`, and that `τ^s [S] = [S]`.
    pub fn new(
        lattice: EulerLattice,
        l: LatticeVector,
        s: LatticeVector,
        tube_rank: usize,
    ) -> Result<Self> {
        if tube_rank == 0 {
            return Err(Error::InvalidLConfig("tube rank must be positive".into()));
        }
        if lattice.tau_pow(&s, tube_rank as i64) != s {
            return Err(Error::InvalidLConfig("τ^s [S] ≠ [S]".into()));
        }
        let e = (0..tube_rank as i64).fold(LatticeVector::zero(lattice.dim()), |acc, k| {
            &acc + &lattice.tau_pow(&s, k)
        });
        let checks = [
            ("χ(L,L)", lattice.chi(&l, &l), 1),
            ("χ(L,E)", lattice.chi(&l, &e), 1),
            ("χ(E,L)", lattice.chi(&e, &l), -1),
            ("χ(E,E)", lattice.chi(&e, &e), 0),
        ];
        for (name, got, want) in checks {
            if got != BigInt::from(want) {
                return Err(Error::InvalidLConfig(format!(
                    "{name} = {got}, expected {want}"
                )));
            }
        }
        Ok(LSequenceConfig {
            lattice,
            l,
            s,
            tube_rank,
            e,
        })
    }

    pub fn l(&self) -> &LatticeVector {
        &self.l
    }

    pub fn s(&self) -> &LatticeVector {
        &self.s
    }

    pub fn e(&self) -> &LatticeVector {
        &self.e
    }

    pub fn tube_rank(&self) -> usize {
        self.tube_rank
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LSequence {
    pub indices: Vec<i64>,
    pub classes: Vec<LatticeVector>,
    /// `chi[a][b] = χ([L_{indices[a]}], [L_{indices[b]}])`.
    #[serde(serialize_with = "crate::quiver::serialize_int_rows")]
    pub chi: Vec<Vec<BigInt>>,
}

/// Classes `[L_i]` for `i_min <= i <= i_max`, built step by step from the
/// short exact sequences `0 → t^k L → t^{k+1} L → τ^{−k−1} S → 0`, with
/// `L_i = t^{i s} L`.
pub fn l_sequence(cfg: &LSequenceConfig, i_min: i64, i_max: i64) -> LSequence {
    let s = cfg.tube_rank as i64;
    let lat = &cfg.lattice;
    let step_class = |k: i64| lat.tau_pow(&cfg.s, -k - 1);
    let mut indices = Vec::new();
    let mut classes = Vec::new();
    for i in i_min..=i_max {
        let target = i * s;
        let mut x = cfg.l.clone();
        if target >= 0 {
            for k in 0..target {
                x = &x + &step_class(k);
            }
        } else {
            for k in (target..0).rev() {
                x = &x - &step_class(k);
            }
        }
        indices.push(i);
        classes.push(x);
    }
    let chi = classes
        .iter()
        .map(|a| classes.iter().map(|b| lat.chi(a, b)).collect())
        .collect();
    LSequence {
        indices,
        classes,
        chi,
    }
}

/// Finds `[L]`, `[S]` inside a tubular lattice: `L` is the sink projective
/// (a line bundle) and `S` runs over `τ`-orbits of the arm simples, keeping
/// the largest tube rank with `χ(L, τ^{-i} S) = δ_{i0}` for `0 <= i < s`.
pub fn find_l_config(lat: &TubularLattice) -> Result<LSequenceConfig> {
    let el = EulerLattice::of_tubular(lat);
    let l = lat.projective(lat.dim() - 1);
    let w = lat.weights();
    let mut best: Option<LSequenceConfig> = None;
    for arm in 0..w.weights().len() {
        let seed = lat.simple(w.arm_vertex(arm, 1));
        let Some(orbit) = el.orbit(&seed, lat.period() as usize) else {
            continue;
        };
        let s_rank = orbit.len();
        for s in &orbit {
            let peripheral_ok = (0..s_rank as i64)
                .all(|i| el.chi(&l, &el.tau_pow(s, -i)) == BigInt::from(i64::from(i == 0)));
            if !peripheral_ok {
                continue;
            }
            if let Ok(cfg) = LSequenceConfig::new(el.clone(), l.clone(), s.clone(), s_rank) {
                if best.as_ref().is_none_or(|b| b.tube_rank < s_rank) {
                    best = Some(cfg);
                }
            }
        }
    }
    best.ok_or_else(|| Error::InvalidLConfig("no peripheral pair found".into()))
}

/// `τ`-orbits of classes in a tubular lattice that form spherical data on
/// their own and are mutually orthogonal: the mouths of the exceptional
/// tubes (from the arm simples) and the homogeneous class.
pub fn spherical_orbit_pool(lat: &TubularLattice) -> Vec<Vec<LatticeVector>> {
    let el = EulerLattice::of_tubular(lat);
    let w = lat.weights();
    let mut pool: Vec<Vec<LatticeVector>> = Vec::new();
    for arm in 0..w.weights().len() {
        let seed = lat.simple(w.arm_vertex(arm, 1));
        if let Some(orbit) = el.orbit(&seed, lat.period() as usize) {
            pool.push(orbit);
        }
    }
    if let Some(first) = pool.first() {
        let delta = first
            .iter()
            .fold(LatticeVector::zero(lat.dim()), |acc, x| &acc + x);
        pool.push(vec![delta]);
    }
    pool.retain(|orbit| orbit_data(lat.euler(), orbit).is_ok());
    pool
}

fn orbit_data(euler: &IntMatrix, orbit: &[LatticeVector]) -> Result<SphericalData> {
    let r = orbit.len();
    SphericalData::new(euler, orbit.to_vec(), (0..r).map(|i| (i + 1) % r).collect())
}

/// Random spherical data with at most `max_r` classes: a union of orthogonal
/// orbits from the pool, with random signs, moved by a few random twists and
/// listed in a random order (so `σ` is an arbitrary conjugate).
pub fn random_spherical_data<R: Rng>(
    lat: &TubularLattice,
    rng: &mut R,
    max_r: usize,
) -> Result<SphericalData> {
    let pool = spherical_orbit_pool(lat);
    let euler = lat.euler();
    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.shuffle(rng);
    let mut classes = Vec::new();
    let mut sigma = Vec::new();
    for idx in order {
        let orbit = &pool[idx];
        if classes.len() + orbit.len() > max_r || (!classes.is_empty() && rng.gen_bool(0.4)) {
            continue;
        }
        let base = classes.len();
        let sign = if rng.gen_bool(0.5) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        for (k, c) in orbit.iter().enumerate() {
            classes.push(c.scaled(&sign));
            sigma.push(base + (k + 1) % orbit.len());
        }
    }
    if classes.is_empty() {
        let smallest = pool
            .iter()
            .min_by_key(|o| o.len())
            .ok_or(Error::InvalidSphericalData("empty pool".into()))?;
        classes = smallest.clone();
        sigma = (0..classes.len())
            .map(|i| (i + 1) % classes.len())
            .collect();
    }
    // move the whole configuration by random twists along pool orbits
    for _ in 0..rng.gen_range(0..=2) {
        let along = orbit_data(euler, pool.choose(rng).expect("nonempty pool"))?;
        let dual = rng.gen_bool(0.5);
        classes = classes
            .iter()
            .map(|c| {
                if dual {
                    dual_twist_class(&along, c)
                } else {
                    twist_class(&along, c)
                }
            })
            .collect();
    }
    // relabel
    let r = classes.len();
    let mut perm: Vec<usize> = (0..r).collect();
    perm.shuffle(rng);
    let mut new_classes = vec![LatticeVector::zero(0); r];
    let mut new_sigma = vec![0; r];
    for old in 0..r {
        new_classes[perm[old]] = classes[old].clone();
        new_sigma[perm[old]] = perm[sigma[old]];
    }
    SphericalData::new(euler, new_classes, new_sigma)
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> LatticeVector {
    LatticeVector(
        (0..n)
            .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
            .collect(),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiInverseFailure {
    pub classes: Vec<LatticeVector>,
    pub sigma: Vec<usize>,
    pub x: LatticeVector,
    pub y: LatticeVector,
    pub reason: String,
}

/// Checks `t_E t*_E = t*_E t_E = id` and `χ(t_E x, t_E y) = χ(x, y)` on
/// `samples` random vectors against one random spherical configuration.
pub fn check_quasi_inverse<R: Rng>(
    lat: &TubularLattice,
    data: &SphericalData,
    rng: &mut R,
    samples: usize,
) -> std::result::Result<(), Box<QuasiInverseFailure>> {
    let n = lat.dim();
    for _ in 0..samples {
        let x = random_vector(rng, n, 6);
        let y = random_vector(rng, n, 6);
        let fail = |reason: &str| {
            Box::new(QuasiInverseFailure {
                classes: data.classes.clone(),
                sigma: data.sigma.clone(),
                x: x.clone(),
                y: y.clone(),
                reason: reason.into(),
            })
        };
        if twist_class(data, &dual_twist_class(data, &x)) != x {
            return Err(fail("t_E t*_E x ≠ x"));
        }
        if dual_twist_class(data, &twist_class(data, &x)) != x {
            return Err(fail("t*_E t_E x ≠ x"));
        }
        if lat.chi(&twist_class(data, &x), &twist_class(data, &y)) != lat.chi(&x, &y) {
            return Err(fail("χ not preserved by t_E"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::kronecker;
    use crate::tube::{mouth, TubeObject};
    use crate::wpl::{tubular_lattice, tubular_types, WeightType};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(xs: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(xs)
    }

    fn tube_data(r: usize) -> (EulerLattice, SphericalData) {
        let el = EulerLattice::of_tube(r).unwrap();
        let classes = (0..r).map(|i| LatticeVector::unit(r, i)).collect();
        let sigma = (0..r).map(|i| (i + 1) % r).collect();
        let data = SphericalData::new(el.euler(), classes, sigma).unwrap();
        (el, data)
    }

    #[test]
    fn rejects_invalid_data() {
        let el = EulerLattice::of_tube(2).unwrap();
        let bad_sigma = SphericalData::new(el.euler(), vec![v(&[1, 0]), v(&[0, 1])], vec![0, 1]);
        assert!(matches!(bad_sigma, Err(Error::InvalidSphericalData(_))));
        let not_perm = SphericalData::new(el.euler(), vec![v(&[1, 0]), v(&[0, 1])], vec![1, 1]);
        assert!(not_perm.is_err());
    }

    #[test]
    fn gram_condition_alone_is_rejected() {
        // {S_0, S_1 + S_2} in a rank-3 tube has the right Gram matrix for a
        // swap but is not τ-stable, and the twists are not inverse
        let el = EulerLattice::of_tube(3).unwrap();
        let classes = vec![v(&[1, 0, 0]), v(&[0, 1, 1])];
        let chi = |a: &LatticeVector, b: &LatticeVector| el.chi(a, b);
        assert_eq!(chi(&classes[0], &classes[1]), BigInt::from(-1));
        assert_eq!(chi(&classes[1], &classes[0]), BigInt::from(-1));
        assert_eq!(chi(&classes[1], &classes[1]), BigInt::from(1));
        assert!(matches!(
            SphericalData::new(el.euler(), classes, vec![1, 0]),
            Err(Error::InvalidSphericalData(_))
        ));
        let k = EulerLattice::of_quiver(&Quiver::kronecker(2)).unwrap();
        assert!(SphericalData::new(k.euler(), vec![v(&[2, 2])], vec![0]).is_ok());
        let k3 = EulerLattice::of_quiver(&Quiver::kronecker(3)).unwrap();
        assert!(SphericalData::new(k3.euler(), vec![v(&[1, 1])], vec![0]).is_err());
    }

    #[test]
    fn twist_fixes_orthogonal_and_spherical_classes() {
        let k = EulerLattice::of_quiver(&Quiver::kronecker(2)).unwrap();
        let data = SphericalData::new(k.euler(), vec![v(&[1, 1])], vec![0]).unwrap();
        assert_eq!(twist_class(&data, &v(&[1, 1])), v(&[1, 1]));
        assert_eq!(dual_twist_class(&data, &v(&[2, 2])), v(&[2, 2]));
        // P_y = (0,1): χ((1,1),(0,1)) = 1 - 2 = -1, so t_E P_y = P_y + δ
        assert_eq!(twist_class(&data, &v(&[0, 1])), v(&[1, 2]));
        assert_eq!(dual_twist_class(&data, &v(&[0, 1])), v(&[-1, 0]));
    }

    #[test]
    fn tube_twist_round_trip() {
        let (_, data) = tube_data(3);
        let x = v(&[2, -1, 5]);
        assert_eq!(twist_class(&data, &dual_twist_class(&data, &x)), x);
    }

    #[test]
    fn quasi_inverse_on_random_tubular_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for w in tubular_types() {
            let lat = tubular_lattice(&w).unwrap();
            for _ in 0..5 {
                let data = random_spherical_data(&lat, &mut rng, 6).unwrap();
                assert!(data.r() <= 6);
                check_quasi_inverse(&lat, &data, &mut rng, 50).unwrap();
            }
        }
    }

    #[test]
    fn pool_covers_every_arm() {
        for w in tubular_types() {
            let lat = tubular_lattice(&w).unwrap();
            let pool = spherical_orbit_pool(&lat);
            let mut sizes: Vec<usize> = pool.iter().map(Vec::len).collect();
            sizes.sort_unstable();
            let mut expected: Vec<usize> = w.weights().iter().map(|&p| p as usize).collect();
            expected.push(1);
            expected.sort_unstable();
            assert_eq!(sizes, expected, "{w}");
        }
    }

    #[test]
    fn explicit_twist_on_orthogonal_object() {
        // S_0 and S_2 in a rank-3 tube: Hom and Ext¹ from S_0 to S_2 vanish
        let e = vec![TubeObject::new(3, 0, 1).unwrap().to_rep()];
        let x = TubeObject::new(3, 2, 1).unwrap().to_rep();
        let t = twist_explicit(&e, &x).unwrap();
        assert_eq!(t.degree0, x);
        assert!(t.shifted.is_zero());
    }

    #[test]
    fn explicit_twist_kronecker_injective() {
        let r = kronecker::regular_i64(1, 0).unwrap();
        let x = kronecker::i_x();
        let t = twist_explicit(std::slice::from_ref(&r), &x).unwrap();
        let k = EulerLattice::of_quiver(&Quiver::kronecker(2)).unwrap();
        let data = SphericalData::new(k.euler(), vec![r.dim_vector()], vec![0]).unwrap();
        assert_eq!(t.class(), twist_class(&data, &x.dim_vector()));
        assert!(t.degree0.is_zero());
        assert_eq!(t.shifted.dims(), &[0, 1]);
    }

    #[test]
    fn explicit_twist_rejects_nonvanishing_ext() {
        let family: Vec<Rep> = mouth(2).iter().map(TubeObject::to_rep).collect();
        let x = TubeObject::new(2, 0, 2).unwrap().to_rep();
        assert_eq!(twist_explicit(&family, &x), Err(Error::NonvanishingExt));
    }

    #[test]
    fn dual_twist_kronecker_projective() {
        let r = kronecker::regular_i64(1, 0).unwrap();
        let t = dual_twist_explicit(std::slice::from_ref(&r), &kronecker::p_y()).unwrap();
        assert!(t.degree0.is_zero());
        assert_eq!(t.shifted.dims(), &[1, 0]);
        let k = EulerLattice::of_quiver(&Quiver::kronecker(2)).unwrap();
        let data = SphericalData::new(k.euler(), vec![r.dim_vector()], vec![0]).unwrap();
        assert_eq!(t.class(), dual_twist_class(&data, &v(&[0, 1])));
    }

    #[test]
    fn dual_twist_on_orthogonal_object() {
        let e = vec![TubeObject::new(3, 0, 1).unwrap().to_rep()];
        let x = TubeObject::new(3, 1, 1).unwrap().to_rep();
        // Hom(S_1, S_0) = 0 and Ext¹(S_1, S_0) = 0 (no arrow 1 -> 0 in rank 3)
        let t = dual_twist_explicit(&e, &x).unwrap();
        assert_eq!(t.degree0, x);
        assert!(t.shifted.is_zero());
    }

    #[test]
    fn family_must_be_hom_orthogonal() {
        let s = TubeObject::new(2, 0, 1).unwrap().to_rep();
        let x = TubeObject::new(2, 1, 1).unwrap().to_rep();
        assert!(matches!(
            twist_explicit(&[s.clone(), s], &x),
            Err(Error::InvalidSphericalData(_))
        ));
    }

    #[test]
    fn l_sequence_table() {
        for w in tubular_types() {
            let lat = tubular_lattice(&w).unwrap();
            let cfg = find_l_config(&lat).unwrap();
            let seq = l_sequence(&cfg, -5, 5);
            for (a, &i) in seq.indices.iter().enumerate() {
                for (b, &j) in seq.indices.iter().enumerate() {
                    assert_eq!(seq.chi[a][b], BigInt::from(1 + j - i), "{w} i={i} j={j}");
                }
            }
            // each block of s steps adds the class of E
            assert_eq!(&seq.classes[6] - &seq.classes[5], cfg.e().clone());
        }
    }

    #[test]
    fn l_config_validation() {
        let lat = tubular_lattice(&WeightType::new(&[2, 2, 2, 2]).unwrap()).unwrap();
        let el = EulerLattice::of_tubular(&lat);
        let l = lat.projective(0);
        assert!(LSequenceConfig::new(el.clone(), l.clone(), l.clone(), 1).is_err());
        assert!(LSequenceConfig::new(el, l.clone(), lat.simple(1), 0).is_err());
    }
}
