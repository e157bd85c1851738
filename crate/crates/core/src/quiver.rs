//! Quivers, Grothendieck-group vectors and the integer matrices attached to
//! an acyclic path algebra.
//!
//! Arrows act left to right: a representation assigns to an arrow `s -> t` a
//! linear map from the space at `s` to the space at `t`. With this convention
//! the indecomposable projective `P_w` has `(P_w)_v` = number of paths `w -> v`
//! and the injective `I_w` has `(I_w)_v` = number of paths `v -> w`.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A finite connected quiver.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
    acyclic: bool,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    arrows: Vec<[usize; 2]>,
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;
    fn try_from(j: QuiverJson) -> Result<Self> {
        Quiver::new(
            j.vertices,
            j.arrows.into_iter().map(|[s, t]| (s, t)).collect(),
        )
    }
}

impl From<Quiver> for QuiverJson {
    fn from(q: Quiver) -> Self {
        QuiverJson {
            vertices: q.vertex_count,
            arrows: q.arrows.iter().map(|&(s, t)| [s, t]).collect(),
        }
    }
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyQuiver);
        }
        for &(s, t) in &arrows {
            for index in [s, t] {
                if index >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        index,
                        vertices: vertex_count,
                    });
                }
            }
        }
        if !is_connected(vertex_count, &arrows) {
            return Err(Error::Disconnected);
        }
        let acyclic = topological_order(vertex_count, &arrows).is_some();
        Ok(Quiver {
            vertex_count,
            arrows,
            acyclic,
        })
    }

    /// Linearly oriented `A_n`: `0 -> 1 -> ... -> n-1`.
    pub fn linear_a(n: usize) -> Result<Self> {
        Quiver::new(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    /// The `n`-Kronecker quiver: vertices `x = 0`, `y = 1`, `n` arrows `x -> y`.
    pub fn kronecker(n: usize) -> Self {
        Quiver::new(2, vec![(0, 1); n]).expect("Kronecker quiver is valid")
    }

    /// Cyclically oriented `Ã_{r-1}`: arrows `i -> i+1 mod r`. For `r = 1`
    /// this is the one-loop quiver.
    pub fn cyclic(r: usize) -> Result<Self> {
        Quiver::new(r, (0..r).map(|i| (i, (i + 1) % r)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    /// Number of arrows `i -> j`, as a square integer matrix.
    pub fn adjacency(&self) -> IntMatrix {
        let n = self.vertex_count;
        let mut a = IntMatrix::zeros(n, n);
        for &(s, t) in &self.arrows {
            let v = a.get(s, t) + BigInt::from(1);
            a.set(s, t, v);
        }
        a
    }

    /// Gram matrix `E` of the Euler form, `χ(d, e) = dᵀ E e = Σ d_v e_v − Σ_{a: i→j} d_i e_j`.
    pub fn euler_matrix(&self) -> IntMatrix {
        let n = self.vertex_count;
        IntMatrix::identity(n).sub_mat(&self.adjacency())
    }

    pub fn check_vector(&self, d: &LatticeVector) -> Result<()> {
        if d.len() != self.vertex_count {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count,
                got: d.len(),
            });
        }
        Ok(())
    }

    pub fn simple(&self, v: usize) -> LatticeVector {
        LatticeVector::unit(self.vertex_count, v)
    }

    /// `[P_v]`, the dimension vector of the indecomposable projective.
    pub fn projective(&self, v: usize) -> Result<LatticeVector> {
        Ok(LatticeVector(cartan_matrix(self)?.column(v)))
    }

    /// `[I_v]`, the dimension vector of the indecomposable injective.
    pub fn injective(&self, v: usize) -> Result<LatticeVector> {
        Ok(LatticeVector(cartan_matrix(self)?.row(v).to_vec()))
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver({}; {:?})", self.vertex_count, self.arrows)
    }
}

fn is_connected(n: usize, arrows: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in arrows {
        adj[s].push(t);
        adj[t].push(s);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for &(s, t) in arrows {
        indeg[t] += 1;
        out[s].push(t);
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// An integer vector in `K_0`, indexed by vertices (or by any fixed basis).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<BigInt>);

/// Serializes an integer as a JSON number when it fits in `i64`, otherwise
/// as a decimal string.
pub struct IntText<'a>(pub &'a BigInt);

impl Serialize for IntText<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// `serialize_with` helper for integer tables.
pub fn serialize_int_rows<S: serde::Serializer>(
    rows: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for row in rows {
        seq.serialize_element(&row.iter().map(IntText).collect::<Vec<_>>())?;
    }
    seq.end()
}

impl Serialize for LatticeVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(IntText))
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Num(i64),
            Text(String),
        }
        let entries = Vec::<Entry>::deserialize(d)?;
        entries
            .into_iter()
            .map(|e| match e {
                Entry::Num(v) => Ok(BigInt::from(v)),
                Entry::Text(t) => t.parse().map_err(serde::de::Error::custom),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(LatticeVector)
    }
}

impl LatticeVector {
    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn from_i64s(xs: &[i64]) -> Self {
        LatticeVector(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_dims(dims: &[usize]) -> Self {
        LatticeVector(dims.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Nonzero with all entries nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|x| !x.is_negative())
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        LatticeVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn apply(m: &IntMatrix, v: &LatticeVector) -> LatticeVector {
        LatticeVector(m.mul_vec(&v.0))
    }

    /// Entries as `i64`; panics if any entry does not fit.
    pub fn to_i64s(&self) -> Vec<i64> {
        self.0
            .iter()
            .map(|x| i64::try_from(x).expect("lattice entry exceeds i64"))
            .collect()
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Euler form `χ(d, e)` of a relation-free quiver.
pub fn euler_form(q: &Quiver, d: &LatticeVector, e: &LatticeVector) -> Result<BigInt> {
    q.check_vector(d)?;
    q.check_vector(e)?;
    let diag: BigInt = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
    let arrows: BigInt = q.arrows.iter().map(|&(s, t)| &d.0[s] * &e.0[t]).sum();
    Ok(diag - arrows)
}

/// Cartan matrix: entry `(v, w)` counts paths `w -> v`, so column `w` is `[P_w]`.
pub fn cartan_matrix(q: &Quiver) -> Result<IntMatrix> {
    let order = topological_order(q.vertex_count, &q.arrows).ok_or(Error::Cyclic)?;
    let n = q.vertex_count;
    let mut c = IntMatrix::zeros(n, n);
    // paths from w: process vertices in topological order
    for w in 0..n {
        let mut count = vec![BigInt::zero(); n];
        count[w] = BigInt::from(1);
        for &v in &order {
            if count[v].is_zero() {
                continue;
            }
            for &(s, t) in &q.arrows {
                if s == v {
                    count[t] = &count[t] + &count[v];
                }
            }
        }
        for (v, k) in count.into_iter().enumerate() {
            c.set(v, w, k);
        }
    }
    Ok(c)
}

/// Coxeter matrix `Φ = −Cᵀ C⁻¹`, characterised by `Φ [P_v] = −[I_v]`.
pub fn coxeter_matrix(c: &IntMatrix) -> Result<IntMatrix> {
    let inv = c.integer_inverse()?;
    Ok(-&c.transpose().mul_mat(&inv))
}

/// Smallest `k <= max_k` with `m^k = 1`.
pub fn matrix_order(m: &IntMatrix, max_k: usize) -> Option<usize> {
    if !m.is_square() {
        return None;
    }
    let mut acc = m.clone();
    for k in 1..=max_k {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul_mat(m);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(xs)
    }

    #[test]
    fn rejects_bad_quivers() {
        assert_eq!(Quiver::new(0, vec![]), Err(Error::EmptyQuiver));
        assert!(matches!(
            Quiver::new(2, vec![(0, 2)]),
            Err(Error::VertexOutOfRange { index: 2, .. })
        ));
        assert_eq!(Quiver::new(3, vec![(0, 1)]), Err(Error::Disconnected));
    }

    #[test]
    fn acyclicity_flag() {
        assert!(Quiver::linear_a(4).unwrap().is_acyclic());
        assert!(!Quiver::cyclic(3).unwrap().is_acyclic());
        assert!(!Quiver::cyclic(1).unwrap().is_acyclic());
    }

    #[test]
    fn euler_form_examples() {
        let k3 = Quiver::kronecker(3);
        assert_eq!(
            euler_form(&k3, &v(&[1, 2]), &v(&[1, 2])).unwrap(),
            BigInt::from(-1)
        );
        let k2 = Quiver::kronecker(2);
        assert_eq!(
            euler_form(&k2, &v(&[1, 1]), &v(&[1, 1])).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            euler_form(&k2, &v(&[0, 0]), &v(&[5, -3])).unwrap(),
            BigInt::from(0)
        );
        assert!(matches!(
            euler_form(&k2, &v(&[1]), &v(&[1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn euler_matrix_agrees_with_form() {
        let q = Quiver::new(3, vec![(0, 1), (2, 1), (0, 2)]).unwrap();
        let e = q.euler_matrix();
        let (d, f) = (v(&[1, -2, 3]), v(&[2, 5, -1]));
        assert_eq!(e.bilinear(&d.0, &f.0), euler_form(&q, &d, &f).unwrap());
    }

    #[test]
    fn cartan_examples() {
        let a2 = Quiver::linear_a(2).unwrap();
        assert_eq!(
            cartan_matrix(&a2).unwrap(),
            IntMatrix::from_i64(&[&[1, 0], &[1, 1]])
        );
        let a1 = Quiver::linear_a(1).unwrap();
        assert_eq!(cartan_matrix(&a1).unwrap(), IntMatrix::from_i64(&[&[1]]));
        let k2 = Quiver::kronecker(2);
        assert_eq!(
            cartan_matrix(&k2).unwrap(),
            IntMatrix::from_i64(&[&[1, 0], &[2, 1]])
        );
        assert_eq!(
            cartan_matrix(&Quiver::cyclic(2).unwrap()),
            Err(Error::Cyclic)
        );
    }

    #[test]
    fn coxeter_examples() {
        let a2 = Quiver::linear_a(2).unwrap();
        let phi = coxeter_matrix(&cartan_matrix(&a2).unwrap()).unwrap();
        assert_eq!(LatticeVector::apply(&phi, &v(&[1, 1])), v(&[-1, 0]));
        assert_eq!(matrix_order(&phi, 10), Some(3));

        let a3 = Quiver::linear_a(3).unwrap();
        let phi3 = coxeter_matrix(&cartan_matrix(&a3).unwrap()).unwrap();
        assert_eq!(matrix_order(&phi3, 10), Some(4));

        let k2 = Quiver::kronecker(2);
        let phik = coxeter_matrix(&cartan_matrix(&k2).unwrap()).unwrap();
        assert_eq!(matrix_order(&phik, 100), None);

        assert_eq!(matrix_order(&IntMatrix::identity(3), 10), Some(1));
        assert_eq!(
            coxeter_matrix(&IntMatrix::from_i64(&[&[2, 0], &[0, 1]])),
            Err(Error::NotUnimodular)
        );
    }

    #[test]
    fn coxeter_sends_projectives_to_negative_injectives() {
        let quivers = [
            Quiver::linear_a(4).unwrap(),
            Quiver::kronecker(3),
            Quiver::new(4, vec![(0, 1), (2, 1), (1, 3)]).unwrap(),
            Quiver::new(5, vec![(1, 0), (1, 2), (3, 2), (3, 4), (0, 4)]).unwrap(),
        ];
        for q in &quivers {
            let c = cartan_matrix(q).unwrap();
            let phi = coxeter_matrix(&c).unwrap();
            for w in 0..q.vertex_count() {
                let p = q.projective(w).unwrap();
                let i = q.injective(w).unwrap();
                assert_eq!(LatticeVector::apply(&phi, &p), -&i, "{q:?} vertex {w}");
            }
        }
    }

    #[test]
    fn projectives_pair_with_simples_as_delta() {
        let q = Quiver::new(4, vec![(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)]).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let chi = euler_form(&q, &q.projective(a).unwrap(), &q.simple(b)).unwrap();
                assert_eq!(chi, BigInt::from((a == b) as i64));
            }
        }
    }

    #[test]
    fn quiver_json_shape() {
        let q = Quiver::kronecker(2);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"vertices":2,"arrows":[[0,1],[0,1]]}"#);
        let back: Quiver = serde_json::from_str(&s).unwrap();
        let big = LatticeVector(vec![BigInt::from(-3), BigInt::from(u64::MAX) * 4]);
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(text, r#"[-3,"73786976294838206460"]"#);
        assert_eq!(serde_json::from_str::<LatticeVector>(&text).unwrap(), big);
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Quiver>(r#"{"vertices":3,"arrows":[[0,1]]}"#).is_err());
    }
}
