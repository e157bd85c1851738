//! A single tube of rank `r`: finite dimensional nilpotent representations
//! of the cyclically oriented quiver with `r` vertices (arrows `i -> i+1`).
//!
//! Every indecomposable is uniserial and is determined by its simple socle
//! and its length. The AR translate shifts the socle by one step along the
//! arrows; that direction is the one for which `dim Ext¹(Y, τX) = dim Hom(X, Y)`.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cy::CyPair;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::quiver::Quiver;
use crate::rep::Rep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TubeObjectJson", into = "TubeObjectJson")]
pub struct TubeObject {
    rank: usize,
    socle: usize,
    length: usize,
}

#[derive(Serialize, Deserialize)]
struct TubeObjectJson {
    rank: usize,
    socle: usize,
    length: usize,
}

impl TryFrom<TubeObjectJson> for TubeObject {
    type Error = Error;
    fn try_from(j: TubeObjectJson) -> Result<Self> {
        TubeObject::new(j.rank, j.socle, j.length)
    }
}

impl From<TubeObject> for TubeObjectJson {
    fn from(x: TubeObject) -> Self {
        TubeObjectJson {
            rank: x.rank,
            socle: x.socle,
            length: x.length,
        }
    }
}

impl TubeObject {
    pub fn new(rank: usize, socle: usize, length: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidTubeObject("rank must be at least 1".into()));
        }
        if socle >= rank {
            return Err(Error::InvalidTubeObject(format!(
                "socle {socle} not below rank {rank}"
            )));
        }
        if length == 0 {
            return Err(Error::InvalidTubeObject("length must be at least 1".into()));
        }
        Ok(TubeObject {
            rank,
            socle,
            length,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn socle(&self) -> usize {
        self.socle
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Vertex of the simple top.
    pub fn top(&self) -> usize {
        self.vertex_at(self.length - 1)
    }

    /// Vertex carrying the basis vector at string position `j`
    /// (position 0 is the socle, `length - 1` the top).
    fn vertex_at(&self, j: usize) -> usize {
        let r = self.rank;
        (self.socle + r - j % r) % r
    }

    pub fn is_peripheral(&self) -> bool {
        self.length == 1
    }

    pub fn tau(&self) -> Self {
        self.tau_pow(1)
    }

    pub fn tau_inverse(&self) -> Self {
        self.tau_pow(-1)
    }

    pub fn tau_pow(&self, k: i64) -> Self {
        let r = self.rank as i64;
        TubeObject {
            socle: (self.socle as i64 + k).rem_euclid(r) as usize,
            ..*self
        }
    }

    pub fn quiver(&self) -> Quiver {
        Quiver::cyclic(self.rank).expect("rank >= 1")
    }

    /// Matrix model: one basis vector per string position, arrows act by
    /// moving each position one step towards the socle.
    pub fn to_rep(&self) -> Rep {
        let r = self.rank;
        let quiver = self.quiver();
        let mut dims = vec![0; r];
        let mut index = vec![0; self.length];
        for (j, slot) in index.iter_mut().enumerate() {
            let v = self.vertex_at(j);
            *slot = dims[v];
            dims[v] += 1;
        }
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let mut m = QMatrix::zeros(dims[t], dims[s]);
                for j in 1..self.length {
                    if self.vertex_at(j) == s {
                        debug_assert_eq!(self.vertex_at(j - 1), t);
                        m.set(index[j - 1], index[j], BigRational::one());
                    }
                }
                m
            })
            .collect();
        Rep::new(quiver, dims, maps).expect("uniserial model has consistent shapes")
    }
}

/// All indecomposables of the rank-`r` tube with length at most `max_length`.
pub fn objects(rank: usize, max_length: usize) -> Vec<TubeObject> {
    let mut out = Vec::with_capacity(rank * max_length);
    for length in 1..=max_length {
        for socle in 0..rank {
            out.push(TubeObject {
                rank,
                socle,
                length,
            });
        }
    }
    out
}

fn same_rank(x: &TubeObject, y: &TubeObject) -> Result<()> {
    if x.rank != y.rank {
        return Err(Error::RankMismatch(x.rank, y.rank));
    }
    Ok(())
}

/// `dim Hom(X, Y)`: the number of `t ∈ [1, min(l_X, l_Y)]` for which the
/// length-`t` quotient of `X` is isomorphic to the length-`t` submodule of `Y`.
pub fn hom_dim(x: &TubeObject, y: &TubeObject) -> Result<usize> {
    same_rank(x, y)?;
    let r = x.rank;
    // the length-t quotient of X has top top(X); the length-t submodule of Y
    // has top socle(Y) - (t - 1); they agree iff t ≡ l_X + socle(Y) - socle(X) (mod r)
    let target = (x.length + y.socle + r - x.socle) % r;
    let max_t = x.length.min(y.length);
    Ok((1..=max_t).filter(|t| t % r == target).count())
}

/// `dim Ext¹(X, Y)` via Serre duality, `dim Hom(Y, τX)`.
pub fn ext_dim(x: &TubeObject, y: &TubeObject) -> Result<usize> {
    hom_dim(y, &x.tau())
}

/// Picks `k ∈ [0, r)` maximising `dim Hom(τ^k A, B)`; the maximum is at least
/// `min(l_A, l_B) / r`.
pub fn length_gives_homs(a: &TubeObject, b: &TubeObject) -> Result<(usize, usize)> {
    same_rank(a, b)?;
    let mut best = (0, hom_dim(a, b)?);
    for k in 1..a.rank {
        let d = hom_dim(&a.tau_pow(k as i64), b)?;
        if d > best.1 {
            best = (k, d);
        }
    }
    Ok(best)
}

/// The mouth of the tube, ordered `E_0, τE_0, ..., τ^{r-1}E_0` from `E_0 = S_0`.
pub fn mouth(rank: usize) -> Vec<TubeObject> {
    let e0 = TubeObject {
        rank,
        socle: 0,
        length: 1,
    };
    (0..rank).map(|i| e0.tau_pow(i as i64)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalCheck {
    pub spherical: bool,
    /// `σ` with `Ext¹(E_i, E_σ(i)) ≅ k` and `τE_i ≅ E_σ(i)`, when it exists.
    pub sigma: Option<Vec<usize>>,
}

/// Checks the generalised 1-spherical conditions on a family of tube objects:
/// `dim Hom(E_i, E_j) = δ_ij`, the `Ext¹` dimensions form a permutation
/// matrix, and that permutation is the one induced by `τ`.
pub fn is_generalized_1_spherical(family: &[TubeObject]) -> Result<SphericalCheck> {
    let no = SphericalCheck {
        spherical: false,
        sigma: None,
    };
    if family.is_empty() {
        return Ok(no);
    }
    for e in family {
        same_rank(&family[0], e)?;
    }
    let n = family.len();
    let mut sigma = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let h = hom_dim(&family[i], &family[j])?;
            if h != usize::from(i == j) {
                return Ok(no);
            }
            match ext_dim(&family[i], &family[j])? {
                0 => {}
                1 if sigma[i] == usize::MAX => sigma[i] = j,
                _ => return Ok(no),
            }
        }
    }
    let mut hit = vec![false; n];
    for i in 0..n {
        if sigma[i] == usize::MAX || hit[sigma[i]] {
            return Ok(no);
        }
        hit[sigma[i]] = true;
        if family[i].tau() != family[sigma[i]] {
            return Ok(no);
        }
    }
    Ok(SphericalCheck {
        spherical: true,
        sigma: Some(sigma),
    })
}

/// An object `X[shift]` of the bounded derived category of the tube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedTubeObject {
    pub object: TubeObject,
    pub shift: i64,
}

impl ShiftedTubeObject {
    /// `S = τ[1]`.
    pub fn serre(&self) -> Self {
        ShiftedTubeObject {
            object: self.object.tau(),
            shift: self.shift + 1,
        }
    }
}

/// Smallest `n ≤ bound` with `S^n ≅ [m]` on every object of length at most
/// `max_length`; the pair is reported unreduced.
pub fn cy_pair(rank: usize, max_length: usize, bound: usize) -> Result<CyPair> {
    let objs = objects(rank, max_length);
    let mut current: Vec<ShiftedTubeObject> = objs
        .iter()
        .map(|&object| ShiftedTubeObject { object, shift: 0 })
        .collect();
    for n in 1..=bound {
        current = current.iter().map(ShiftedTubeObject::serre).collect();
        let m = current[0].shift;
        let pure_shift = current
            .iter()
            .zip(&objs)
            .all(|(c, o)| c.object == *o && c.shift == m);
        if pure_shift {
            return Ok(CyPair::new(n as u32, m));
        }
    }
    Err(Error::BoundExceeded(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep;

    fn t(r: usize, a: usize, l: usize) -> TubeObject {
        TubeObject::new(r, a, l).unwrap()
    }

    #[test]
    fn validation() {
        assert!(TubeObject::new(0, 0, 1).is_err());
        assert!(TubeObject::new(2, 2, 1).is_err());
        assert!(TubeObject::new(2, 1, 0).is_err());
        let j: TubeObject = serde_json::from_str(r#"{"rank":3,"socle":1,"length":4}"#).unwrap();
        assert_eq!(j, t(3, 1, 4));
        assert!(serde_json::from_str::<TubeObject>(r#"{"rank":3,"socle":3,"length":4}"#).is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(t(1, 0, 4).tau(), t(1, 0, 4));
        assert_eq!(t(2, 0, 5).tau(), t(2, 1, 5));
        for a in 0..3 {
            for l in 1..5 {
                assert_eq!(t(3, a, l).tau_pow(3), t(3, a, l));
                assert_eq!(t(3, a, l).tau().tau_inverse(), t(3, a, l));
            }
        }
    }

    #[test]
    fn to_rep_examples() {
        let s0 = t(2, 0, 1).to_rep();
        assert_eq!(s0.dims(), &[1, 0]);
        let m = t(2, 0, 2).to_rep();
        assert_eq!(m.dims(), &[1, 1]);
        // arrow 0 -> 1 is zero, arrow 1 -> 0 is the identity
        assert_eq!(m.maps()[0], QMatrix::from_int(&[&[0]]));
        assert_eq!(m.maps()[1], QMatrix::from_int(&[&[1]]));
        let j = t(1, 0, 3).to_rep();
        assert_eq!(j.dims(), &[3]);
        assert_eq!(
            j.maps()[0],
            QMatrix::from_int(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])
        );
        assert!(j.is_nilpotent());
    }

    #[test]
    fn hom_dim_examples() {
        assert_eq!(hom_dim(&t(2, 0, 2), &t(2, 0, 2)).unwrap(), 1);
        assert_eq!(hom_dim(&t(2, 0, 3), &t(2, 0, 3)).unwrap(), 2);
        for l in 1..=8 {
            for m in 1..=8 {
                assert_eq!(hom_dim(&t(1, 0, l), &t(1, 0, m)).unwrap(), l.min(m));
            }
        }
        assert_eq!(
            hom_dim(&t(2, 0, 1), &t(3, 0, 1)),
            Err(Error::RankMismatch(2, 3))
        );
    }

    #[test]
    fn closed_form_matches_solver_small_grid() {
        for r in 1..=3 {
            let objs = objects(r, 4);
            for x in &objs {
                for y in &objs {
                    let (h, e) = rep::hom_ext_dims(&x.to_rep(), &y.to_rep()).unwrap();
                    assert_eq!(h, hom_dim(x, y).unwrap(), "{x:?} {y:?}");
                    assert_eq!(e, ext_dim(x, y).unwrap(), "{x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn length_gives_homs_examples() {
        let (_, d) = length_gives_homs(&t(2, 0, 2), &t(2, 0, 4)).unwrap();
        assert!(d >= 1);
        assert_eq!(length_gives_homs(&t(1, 0, 3), &t(1, 0, 5)).unwrap(), (0, 3));
        let (_, d) = length_gives_homs(&t(3, 0, 7), &t(3, 1, 9)).unwrap();
        assert!(d >= 3);
    }

    #[test]
    fn spherical_examples() {
        for r in 1..=5 {
            let check = is_generalized_1_spherical(&mouth(r)).unwrap();
            assert!(check.spherical);
            let sigma = check.sigma.unwrap();
            let expected: Vec<usize> = (0..r).map(|i| (i + 1) % r).collect();
            assert_eq!(sigma, expected);
        }
        assert!(!is_generalized_1_spherical(&[t(2, 0, 1)]).unwrap().spherical);
        assert!(
            !is_generalized_1_spherical(&[t(2, 0, 2), t(2, 1, 2)])
                .unwrap()
                .spherical
        );
        let r1 = is_generalized_1_spherical(&[t(1, 0, 1)]).unwrap();
        assert_eq!(r1.sigma, Some(vec![0]));
    }

    #[test]
    fn tube_cy_pairs_are_unreduced() {
        for r in 1..=4 {
            assert_eq!(cy_pair(r, 6, 20).unwrap(), CyPair::new(r as u32, r as i64));
        }
    }
}
