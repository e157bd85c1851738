//! Explicit quiver representations over the rationals, with Hom and Ext¹
//! computed from the standard two-term resolution
//!
//! `0 → Hom(M,N) → ⊕_v Hom(M_v, N_v) → ⊕_{a: i→j} Hom(M_i, N_j) → Ext¹(M,N) → 0`,
//! `φ ↦ (N_a φ_i − φ_j M_a)_a`, valid for any quiver without relations.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, QMatrix};
use crate::quiver::{LatticeVector, Quiver};

/// A finite dimensional representation: one vector space dimension per
/// vertex and one `dims[t] x dims[s]` matrix per arrow `s -> t`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RepJson", into = "RepJson")]
pub struct Rep {
    quiver: Quiver,
    dims: Vec<usize>,
    maps: Vec<QMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    quiver: Quiver,
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<String>>>,
}

impl TryFrom<RepJson> for Rep {
    type Error = Error;
    fn try_from(j: RepJson) -> Result<Self> {
        let mut maps = Vec::with_capacity(j.maps.len());
        for (a, rows) in j.maps.into_iter().enumerate() {
            let (s, _) = *j.quiver.arrows().get(a).ok_or(Error::DimensionMismatch {
                expected: j.quiver.arrows().len(),
                got: a + 1,
            })?;
            let cols = j.dims.get(s).copied().unwrap_or(0);
            let parsed = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| {
                            crate::linalg::parse_rational(x)
                                .ok_or_else(|| Error::Parse(format!("bad rational {x:?}")))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(Matrix::from_rows(parsed, cols)?);
        }
        Rep::new(j.quiver, j.dims, maps)
    }
}

impl From<Rep> for RepJson {
    fn from(r: Rep) -> Self {
        use crate::linalg::ScalarText;
        RepJson {
            quiver: r.quiver,
            dims: r.dims,
            maps: r
                .maps
                .iter()
                .map(|m| {
                    m.to_rows()
                        .iter()
                        .map(|row| row.iter().map(ScalarText::to_text).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

impl Rep {
    pub fn new(quiver: Quiver, dims: Vec<usize>, maps: Vec<QMatrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: quiver.vertex_count(),
                got: dims.len(),
            });
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch {
                expected: quiver.arrows().len(),
                got: maps.len(),
            });
        }
        for (a, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::BadArrowMatrix {
                    arrow: a,
                    rows: dims[t],
                    cols: dims[s],
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        Ok(Rep { quiver, dims, maps })
    }

    pub fn zero(quiver: &Quiver) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver
            .arrows()
            .iter()
            .map(|_| QMatrix::zeros(0, 0))
            .collect();
        Rep {
            quiver: quiver.clone(),
            dims,
            maps,
        }
    }

    /// The simple representation at `v`.
    pub fn simple(quiver: &Quiver, v: usize) -> Self {
        let dims: Vec<usize> = (0..quiver.vertex_count())
            .map(|w| (w == v) as usize)
            .collect();
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| QMatrix::zeros(dims[t], dims[s]))
            .collect();
        Rep {
            quiver: quiver.clone(),
            dims,
            maps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[QMatrix] {
        &self.maps
    }

    pub fn dim_vector(&self) -> LatticeVector {
        LatticeVector::from_dims(&self.dims)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Direct sum of representations of the same quiver.
    pub fn direct_sum(parts: &[Rep], quiver: &Quiver) -> Result<Rep> {
        for p in parts {
            if &p.quiver != quiver {
                return Err(Error::QuiverMismatch);
            }
        }
        let n = quiver.vertex_count();
        let dims: Vec<usize> = (0..n)
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = QMatrix::zeros(dims[t], dims[s]);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    let block = &p.maps[a];
                    for r in 0..block.rows() {
                        for c in 0..block.cols() {
                            m.set(r0 + r, c0 + c, block.get(r, c).clone());
                        }
                    }
                    r0 += p.dims[t];
                    c0 += p.dims[s];
                }
                m
            })
            .collect();
        Rep::new(quiver.clone(), dims, maps)
    }

    /// Nilpotency certificate: every sufficiently long path acts as zero.
    ///
    /// Tracks the span of images of all paths of length `k` at each vertex;
    /// the representation is nilpotent iff that span vanishes for
    /// `k = total_dim`.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.quiver.vertex_count();
        let mut spans: Vec<QMatrix> = (0..n).map(|v| QMatrix::identity(self.dims[v])).collect();
        for _ in 0..=self.total_dim() {
            if spans.iter().all(|s| s.cols() == 0) {
                return true;
            }
            let mut next: Vec<Vec<QMatrix>> = vec![Vec::new(); n];
            for (&(s, t), m) in self.quiver.arrows().iter().zip(&self.maps) {
                next[t].push(m.mul_mat(&spans[s]));
            }
            spans = next
                .into_iter()
                .enumerate()
                .map(|(v, blocks)| column_basis(&QMatrix::hstack(self.dims[v], &blocks)))
                .collect();
        }
        spans.iter().all(|s| s.cols() == 0)
    }
}

/// A basis for the column space, packed as columns.
pub(crate) fn column_basis(m: &QMatrix) -> QMatrix {
    let mut t = m.transpose();
    let pivots = t.rref();
    Matrix::from_fn(m.rows(), pivots.len(), |r, c| t.get(c, r).clone())
}

/// A morphism of representations: one matrix per vertex.
pub type RepMorphism = Vec<QMatrix>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub basis: Vec<RepMorphism>,
    pub dimension: usize,
}

/// Matrix of `φ ↦ (N_a φ_s − φ_t M_a)_a`, with `φ_v` flattened row-major
/// and the blocks laid out vertex by vertex.
fn intertwiner_system(m: &Rep, n: &Rep) -> (QMatrix, Vec<usize>) {
    let q = &m.quiver;
    let mut offsets = Vec::with_capacity(q.vertex_count() + 1);
    let mut off = 0;
    for v in 0..q.vertex_count() {
        offsets.push(off);
        off += n.dims[v] * m.dims[v];
    }
    offsets.push(off);
    let unknowns = off;
    let equations: usize = q.arrows().iter().map(|&(s, t)| n.dims[t] * m.dims[s]).sum();
    let mut sys = QMatrix::zeros(equations, unknowns);
    let mut row0 = 0;
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        let (rows, cols) = (n.dims[t], m.dims[s]);
        // equation (i, j): Σ_k Na[i,k] φ_s[k,j] − Σ_k φ_t[i,k] Ma[k,j]
        for i in 0..rows {
            for j in 0..cols {
                let eq = row0 + i * cols + j;
                for k in 0..n.dims[s] {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        let var = offsets[s] + k * m.dims[s] + j;
                        let v = sys.get(eq, var) + c;
                        sys.set(eq, var, v);
                    }
                }
                for k in 0..m.dims[t] {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        let var = offsets[t] + i * m.dims[t] + k;
                        let v = sys.get(eq, var) - c;
                        sys.set(eq, var, v);
                    }
                }
            }
        }
        row0 += rows * cols;
    }
    (sys, offsets)
}

fn check_same_quiver(m: &Rep, n: &Rep) -> Result<()> {
    if m.quiver != n.quiver {
        return Err(Error::QuiverMismatch);
    }
    Ok(())
}

/// Basis of `Hom(M, N)`.
pub fn hom_space(m: &Rep, n: &Rep) -> Result<HomSpace> {
    check_same_quiver(m, n)?;
    let (sys, offsets) = intertwiner_system(m, n);
    let basis: Vec<RepMorphism> = sys
        .nullspace()
        .into_iter()
        .map(|vec| {
            (0..m.quiver.vertex_count())
                .map(|v| {
                    let (r, c) = (n.dims[v], m.dims[v]);
                    Matrix::from_fn(r, c, |i, j| vec[offsets[v] + i * c + j].clone())
                })
                .collect()
        })
        .collect();
    Ok(HomSpace {
        dimension: basis.len(),
        basis,
    })
}

pub fn hom_dim(m: &Rep, n: &Rep) -> Result<usize> {
    check_same_quiver(m, n)?;
    let (sys, _) = intertwiner_system(m, n);
    Ok(sys.cols() - sys.rank())
}

/// `dim Ext¹(M, N)` as the cokernel dimension of the intertwiner system.
pub fn ext1_dim(m: &Rep, n: &Rep) -> Result<usize> {
    check_same_quiver(m, n)?;
    let (sys, _) = intertwiner_system(m, n);
    Ok(sys.rows() - sys.rank())
}

/// `(dim Hom, dim Ext¹)` from one elimination.
pub fn hom_ext_dims(m: &Rep, n: &Rep) -> Result<(usize, usize)> {
    check_same_quiver(m, n)?;
    let (sys, _) = intertwiner_system(m, n);
    let rank = sys.rank();
    Ok((sys.cols() - rank, sys.rows() - rank))
}

pub fn is_intertwiner(f: &[QMatrix], m: &Rep, n: &Rep) -> bool {
    let q = &m.quiver;
    if f.len() != q.vertex_count() {
        return false;
    }
    let shapes_ok = f
        .iter()
        .zip(m.dims.iter().zip(&n.dims))
        .all(|(fv, (&dm, &dn))| fv.rows() == dn && fv.cols() == dm);
    shapes_ok
        && q.arrows()
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| n.maps[a].mul_mat(&f[s]) == f[t].mul_mat(&m.maps[a]))
}

/// Linear combination `Σ c_i f_i` of morphisms with the same shapes.
pub fn combine(coeffs: &[BigRational], maps: &[RepMorphism]) -> RepMorphism {
    assert_eq!(coeffs.len(), maps.len());
    let first = &maps[0];
    (0..first.len())
        .map(|v| {
            coeffs.iter().zip(maps).fold(
                QMatrix::zeros(first[v].rows(), first[v].cols()),
                |acc, (c, f)| acc.add_mat(&f[v].scale(c)),
            )
        })
        .collect()
}

/// Vertexwise kernel and cokernel of `f: M -> N` with the induced arrow maps.
pub fn ker_coker(f: &[QMatrix], m: &Rep, n: &Rep) -> Result<(Rep, Rep)> {
    check_same_quiver(m, n)?;
    if !is_intertwiner(f, m, n) {
        return Err(Error::NotIntertwiner);
    }
    let q = &m.quiver;
    // kernel inclusions M_v <- k^{k_v}; cokernel projections N_v -> k^{c_v}
    let kers: Vec<QMatrix> = f.iter().map(QMatrix::kernel_matrix).collect();
    let projs: Vec<QMatrix> = f
        .iter()
        .map(|fv| fv.transpose().kernel_matrix().transpose())
        .collect();

    let mut ker_maps = Vec::with_capacity(q.arrows().len());
    let mut coker_maps = Vec::with_capacity(q.arrows().len());
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let image = m.maps[a].mul_mat(&kers[s]);
        ker_maps.push(kers[t].solve(&image).ok_or(Error::NotIntertwiner)?);

        let ps = &projs[s];
        let right_inverse = if ps.rows() == 0 {
            QMatrix::zeros(n.dims[s], 0)
        } else {
            let gram = ps.mul_mat(&ps.transpose());
            ps.transpose()
                .mul_mat(&gram.inverse().expect("projection has full row rank"))
        };
        coker_maps.push(projs[t].mul_mat(&n.maps[a]).mul_mat(&right_inverse));
    }
    let ker = Rep::new(
        q.clone(),
        kers.iter().map(QMatrix::cols).collect(),
        ker_maps,
    )?;
    let coker = Rep::new(
        q.clone(),
        projs.iter().map(QMatrix::rows).collect(),
        coker_maps,
    )?;
    Ok((ker, coker))
}

/// Vertexwise ranks of a morphism.
pub fn rank_profile(f: &[QMatrix]) -> Vec<usize> {
    f.iter().map(QMatrix::rank).collect()
}

/// Endomorphism ring is one-dimensional. Meaningful as an indecomposability
/// witness only for exceptional objects.
pub fn is_endo_simple(m: &Rep) -> bool {
    hom_dim(m, m).map(|d| d == 1).unwrap_or(false)
}

/// The Kronecker quiver `K_2` and its standard indecomposables. Vertex
/// `x = 0` is the source, `y = 1` the sink.
pub mod kronecker {
    use super::*;

    pub fn quiver() -> Quiver {
        Quiver::kronecker(2)
    }

    /// `P_x`, dims (1,2).
    pub fn p_x() -> Rep {
        Rep::new(
            quiver(),
            vec![1, 2],
            vec![
                QMatrix::from_int(&[&[1], &[0]]),
                QMatrix::from_int(&[&[0], &[1]]),
            ],
        )
        .expect("P_x")
    }

    /// `P_y = S_y`, dims (0,1).
    pub fn p_y() -> Rep {
        Rep::simple(&quiver(), 1)
    }

    /// `I_x = S_x`, dims (1,0).
    pub fn i_x() -> Rep {
        Rep::simple(&quiver(), 0)
    }

    /// `I_y`, dims (2,1).
    pub fn i_y() -> Rep {
        Rep::new(
            quiver(),
            vec![2, 1],
            vec![QMatrix::from_int(&[&[1, 0]]), QMatrix::from_int(&[&[0, 1]])],
        )
        .expect("I_y")
    }

    /// Regular module `R_f`, dims (1,1), arrow maps `(λ)` and `(μ)` for `f = (λ:μ)`.
    pub fn regular(lambda: &BigRational, mu: &BigRational) -> Result<Rep> {
        if lambda.is_zero() && mu.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let one = |x: &BigRational| Matrix::from_fn(1, 1, |_, _| x.clone());
        Rep::new(quiver(), vec![1, 1], vec![one(lambda), one(mu)])
    }

    pub fn regular_i64(lambda: i64, mu: i64) -> Result<Rep> {
        regular(
            &BigRational::from_integer(lambda.into()),
            &BigRational::from_integer(mu.into()),
        )
    }

    /// The morphism `P_y -> P_x` sending the generator to `λ a_0 + μ a_1`.
    pub fn projective_map(lambda: &BigRational, mu: &BigRational) -> Result<RepMorphism> {
        if lambda.is_zero() && mu.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(vec![
            QMatrix::zeros(1, 0),
            Matrix::from_fn(
                2,
                1,
                |r, _| if r == 0 { lambda.clone() } else { mu.clone() },
            ),
        ])
    }

    /// Preprojective of dimension vector `(n, n+1)`; `n = 0` is `P_y`, `n = 1` is `P_x`.
    pub fn preprojective(n: usize) -> Rep {
        let a0 = Matrix::from_fn(n + 1, n, |r, c| {
            if r == c {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        let a1 = Matrix::from_fn(n + 1, n, |r, c| {
            if r == c + 1 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        Rep::new(quiver(), vec![n, n + 1], vec![a0, a1]).expect("preprojective")
    }

    /// Preinjective of dimension vector `(n+1, n)`; `n = 0` is `I_x`, `n = 1` is `I_y`.
    pub fn preinjective(n: usize) -> Rep {
        let a0 = Matrix::from_fn(n, n + 1, |r, c| {
            if r == c {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        let a1 = Matrix::from_fn(n, n + 1, |r, c| {
            if c == r + 1 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        Rep::new(quiver(), vec![n + 1, n], vec![a0, a1]).expect("preinjective")
    }
}

#[cfg(test)]
mod tests {
    use super::kronecker::*;
    use super::*;
    use crate::quiver::euler_form;
    use num_bigint::BigInt;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn rejects_bad_shapes() {
        let k = quiver();
        let err = Rep::new(
            k.clone(),
            vec![1, 1],
            vec![QMatrix::from_int(&[&[1, 0]]), QMatrix::from_int(&[&[1]])],
        );
        assert!(matches!(err, Err(Error::BadArrowMatrix { arrow: 0, .. })));
        assert!(Rep::new(k, vec![1], vec![]).is_err());
    }

    #[test]
    fn kronecker_projective_homs() {
        assert_eq!(hom_dim(&p_y(), &p_x()).unwrap(), 2);
        assert_eq!(hom_dim(&p_x(), &p_y()).unwrap(), 0);
        assert_eq!(ext1_dim(&p_x(), &p_y()).unwrap(), 0);
        let s = Rep::simple(&quiver(), 0);
        assert_eq!(hom_dim(&s, &s).unwrap(), 1);
    }

    #[test]
    fn kronecker_regulars() {
        let r = regular_i64(1, 0).unwrap();
        assert_eq!(r.maps()[0], QMatrix::from_int(&[&[1]]));
        assert_eq!(r.maps()[1], QMatrix::from_int(&[&[0]]));
        assert_eq!(hom_dim(&p_x(), &r).unwrap(), 1);
        assert_eq!(hom_dim(&p_y(), &r).unwrap(), 1);
        let g = regular_i64(0, 1).unwrap();
        assert_eq!(hom_dim(&r, &g).unwrap(), 0);
        assert_eq!(ext1_dim(&r, &g).unwrap(), 0);
        assert_eq!(regular_i64(0, 0), Err(Error::ZeroParameter));
    }

    #[test]
    fn cokernel_of_projective_map_is_regular() {
        let f = projective_map(&q(2), &q(3)).unwrap();
        let (ker, coker) = ker_coker(&f, &p_y(), &p_x()).unwrap();
        assert!(ker.is_zero());
        assert_eq!(coker.dims(), &[1, 1]);
        assert_eq!(hom_dim(&coker, &coker).unwrap(), 1);
        assert_eq!(ext1_dim(&coker, &coker).unwrap(), 1);
    }

    #[test]
    fn cyclic_simples_ext() {
        let c = Quiver::cyclic(2).unwrap();
        let s0 = Rep::simple(&c, 0);
        let s1 = Rep::simple(&c, 1);
        assert_eq!(ext1_dim(&s0, &s1).unwrap(), 1);
        assert_eq!(ext1_dim(&s0, &s0).unwrap(), 0);
        let e = Rep::direct_sum(&[s0, s1], &c).unwrap();
        assert_eq!(hom_dim(&e, &e).unwrap(), 2);
        assert_eq!(ext1_dim(&e, &e).unwrap(), 2);
    }

    #[test]
    fn ker_coker_trivial_cases() {
        let m = i_y();
        let zero: RepMorphism = (0..2)
            .map(|v| QMatrix::zeros(m.dims()[v], m.dims()[v]))
            .collect();
        let (k, c) = ker_coker(&zero, &m, &m).unwrap();
        assert_eq!(k.dims(), m.dims());
        assert_eq!(c.dims(), m.dims());
        assert_eq!(hom_dim(&k, &m).unwrap(), 1);
        let id: RepMorphism = (0..2).map(|v| QMatrix::identity(m.dims()[v])).collect();
        let (k, c) = ker_coker(&id, &m, &m).unwrap();
        assert!(k.is_zero() && c.is_zero());
    }

    #[test]
    fn ker_coker_of_inclusion_into_regular() {
        let r = regular_i64(1, 0).unwrap();
        let homs = hom_space(&p_y(), &r).unwrap();
        assert_eq!(homs.dimension, 1);
        let (k, c) = ker_coker(&homs.basis[0], &p_y(), &r).unwrap();
        assert!(k.is_zero());
        assert_eq!(c.dims(), &[1, 0]);
    }

    #[test]
    fn ker_coker_rejects_non_morphism() {
        let r = regular_i64(1, 0).unwrap();
        let bad = vec![QMatrix::from_int(&[&[1]]), QMatrix::from_int(&[&[0]])];
        assert_eq!(ker_coker(&bad, &r, &r), Err(Error::NotIntertwiner));
    }

    #[test]
    fn kronecker_families_are_exceptional() {
        for n in 0..=5 {
            for m in [preprojective(n), preinjective(n)] {
                assert_eq!(hom_dim(&m, &m).unwrap(), 1, "{:?}", m.dims());
                assert_eq!(ext1_dim(&m, &m).unwrap(), 0, "{:?}", m.dims());
            }
        }
        assert_eq!(preprojective(0).dims(), p_y().dims());
        assert_eq!(hom_dim(&preprojective(1), &p_x()).unwrap(), 1);
        assert_eq!(hom_dim(&preinjective(1), &i_y()).unwrap(), 1);
    }

    #[test]
    fn euler_identity_on_kronecker_family() {
        let mut family = vec![regular_i64(1, 0).unwrap(), regular_i64(1, 1).unwrap()];
        for n in 0..=5 {
            family.push(preprojective(n));
            family.push(preinjective(n));
        }
        let k = quiver();
        for a in &family {
            for b in &family {
                let (h, e) = hom_ext_dims(a, b).unwrap();
                let chi = euler_form(&k, &a.dim_vector(), &b.dim_vector()).unwrap();
                assert_eq!(BigInt::from(h as i64 - e as i64), chi);
            }
        }
    }

    #[test]
    fn nilpotency_certificate() {
        let c = Quiver::cyclic(2).unwrap();
        let nil = Rep::new(
            c.clone(),
            vec![1, 1],
            vec![QMatrix::from_int(&[&[1]]), QMatrix::from_int(&[&[0]])],
        )
        .unwrap();
        assert!(nil.is_nilpotent());
        let cyc = Rep::new(
            c,
            vec![1, 1],
            vec![QMatrix::from_int(&[&[1]]), QMatrix::from_int(&[&[1]])],
        )
        .unwrap();
        assert!(!cyc.is_nilpotent());
    }

    #[test]
    fn rep_json_round_trip() {
        let r = regular(&BigRational::new(1.into(), 2.into()), &q(-3)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains(r#""1/2""#));
        let back: Rep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let z = Rep::simple(&quiver(), 1);
        let back: Rep = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
    }
}
