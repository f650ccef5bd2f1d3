//! Objects and morphisms of the nilpotent category: pairs `(X, x)` with `x`
//! nilpotent, and linear maps `f` with `y·f = f·x`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{NilError, Result};
use crate::matrix::Mat;
use crate::scalar::{Field, Scalar};

/// A finite-dimensional space with a nilpotent endomorphism.
///
/// Equality is structural (same field, same matrix). Use
/// [`is_isomorphism`] or compare Jordan types for conjugacy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilObject {
    endo: Mat,
}

impl NilObject {
    /// Validates that `endo` is a `dim × dim` nilpotent matrix.
    pub fn new(dim: usize, endo: Mat) -> Result<NilObject> {
        if endo.rows() != dim || endo.cols() != dim {
            return Err(NilError::NotSquare { rows: endo.rows(), cols: endo.cols(), dim });
        }
        // a dim-dimensional operator is nilpotent iff its dim-th power vanishes
        if !endo.pow(dim as u32).is_zero() {
            return Err(NilError::NotNilpotent(dim));
        }
        Ok(NilObject { endo })
    }

    pub(crate) fn new_unchecked(endo: Mat) -> NilObject {
        debug_assert!(endo.is_square());
        NilObject { endo }
    }

    pub fn zero(field: Field) -> NilObject {
        NilObject { endo: Mat::zeros(field, 0, 0) }
    }

    /// `(K^n, 0)`.
    pub fn plain(field: Field, n: usize) -> NilObject {
        NilObject { endo: Mat::zeros(field, n, n) }
    }

    /// `(K^p, J_p)` with ones on the superdiagonal, so `J_p e_{i+1} = e_i`.
    pub fn jordan_block(field: Field, p: usize) -> Result<NilObject> {
        if p == 0 {
            return Err(NilError::ZeroBlock);
        }
        Ok(NilObject { endo: shift_matrix(field, p) })
    }

    /// Block-diagonal `⊕ J_{p_i}` in the order of the parts.
    pub fn from_jordan_type(field: Field, t: &JordanType) -> NilObject {
        let endo = t
            .parts()
            .iter()
            .fold(Mat::zeros(field, 0, 0), |acc, &p| acc.block_diag(&shift_matrix(field, p)));
        NilObject { endo }
    }

    pub fn dim(&self) -> usize {
        self.endo.rows()
    }

    pub fn endo(&self) -> &Mat {
        &self.endo
    }

    pub fn field(&self) -> Field {
        self.endo.field()
    }

    /// Least `n ≥ 0` with `endo^n = 0`; the zero object has index 0.
    pub fn nilindex(&self) -> usize {
        if self.dim() == 0 {
            return 0;
        }
        let mut power = self.endo.clone();
        let mut n = 1;
        while !power.is_zero() {
            power = &power * &self.endo;
            n += 1;
        }
        n
    }

    /// `rank(x^k)` for `k = 0..=nilindex`.
    pub fn rank_sequence(&self) -> Vec<usize> {
        let mut out = vec![self.dim()];
        let mut power = Mat::identity(self.field(), self.dim());
        for _ in 0..self.nilindex() {
            power = &power * &self.endo;
            out.push(power.rank());
        }
        out
    }

    /// `(X, c·x·c⁻¹)` together with the isomorphism `c` from `self`.
    pub fn conjugate(&self, c: &Mat) -> Result<(NilObject, NilMorphism)> {
        let inv = c.inverse().ok_or(NilError::NotInvertible)?;
        if c.rows() != self.dim() {
            return Err(NilError::ShapeMismatch {
                got: c.shape(),
                expected: (self.dim(), self.dim()),
            });
        }
        let target = NilObject { endo: &(c * &self.endo) * &inv };
        let iso = NilMorphism::new(self.clone(), target.clone(), c.clone())?;
        Ok((target, iso))
    }

    /// The transposed object `(X*, xᵀ)`.
    pub fn transpose(&self) -> NilObject {
        NilObject { endo: self.endo.transpose() }
    }
}

impl fmt::Display for NilObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K^{}, x) with x =\n{}", self.dim(), self.endo)
    }
}

pub(crate) fn shift_matrix(field: Field, p: usize) -> Mat {
    Mat::from_fn(field, p, p, |i, j| if j == i + 1 { field.one() } else { field.zero() })
}

/// Block sizes of a nilpotent operator, weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct JordanType {
    parts: Vec<usize>,
}

impl JordanType {
    /// Sorts the parts into weakly decreasing order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<JordanType> {
        if parts.contains(&0) {
            return Err(NilError::ZeroBlock);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(JordanType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.parts.len()
    }

    /// All partitions of `n`, each weakly decreasing, in reverse lexicographic order.
    pub fn partitions(n: usize) -> Vec<JordanType> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<JordanType>) {
            if rem == 0 {
                out.push(JordanType { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for JordanType {
    type Error = NilError;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        JordanType::new(v)
    }
}

impl From<JordanType> for Vec<usize> {
    fn from(t: JordanType) -> Self {
        t.parts
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// A linear map `f: X → Y` with `y·f = f·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NilMorphism {
    src: NilObject,
    dst: NilObject,
    mat: Mat,
}

impl NilMorphism {
    pub fn new(src: NilObject, dst: NilObject, mat: Mat) -> Result<NilMorphism> {
        if src.field() != dst.field() {
            return Err(NilError::FieldMismatch(src.field(), dst.field()));
        }
        if mat.field() != src.field() {
            return Err(NilError::FieldMismatch(src.field(), mat.field()));
        }
        if mat.shape() != (dst.dim(), src.dim()) {
            return Err(NilError::ShapeMismatch { got: mat.shape(), expected: (dst.dim(), src.dim()) });
        }
        if &dst.endo * &mat != &mat * &src.endo {
            return Err(NilError::NotIntertwining);
        }
        Ok(NilMorphism { src, dst, mat })
    }

    /// Caller guarantees the intertwining law.
    pub(crate) fn new_unchecked(src: NilObject, dst: NilObject, mat: Mat) -> NilMorphism {
        debug_assert_eq!(&dst.endo * &mat, &mat * &src.endo);
        NilMorphism { src, dst, mat }
    }

    pub fn identity(obj: &NilObject) -> NilMorphism {
        NilMorphism {
            src: obj.clone(),
            dst: obj.clone(),
            mat: Mat::identity(obj.field(), obj.dim()),
        }
    }

    pub fn zero(src: &NilObject, dst: &NilObject) -> NilMorphism {
        NilMorphism {
            src: src.clone(),
            dst: dst.clone(),
            mat: Mat::zeros(src.field(), dst.dim(), src.dim()),
        }
    }

    pub fn src(&self) -> &NilObject {
        &self.src
    }

    pub fn dst(&self) -> &NilObject {
        &self.dst
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn field(&self) -> Field {
        self.mat.field()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &NilMorphism) -> Result<NilMorphism> {
        compose(self, f)
    }

    /// Sum of two parallel morphisms.
    pub fn add(&self, other: &NilMorphism) -> Result<NilMorphism> {
        if self.src != other.src || self.dst != other.dst {
            return Err(NilError::NotComposable);
        }
        Ok(NilMorphism::new_unchecked(self.src.clone(), self.dst.clone(), &self.mat + &other.mat))
    }

    pub fn scale(&self, s: &Scalar) -> NilMorphism {
        NilMorphism::new_unchecked(self.src.clone(), self.dst.clone(), self.mat.scale(s))
    }

    /// `Σ coeffs[i] · basis[i]`, all parallel `src → dst`.
    pub fn linear_combination(
        src: &NilObject,
        dst: &NilObject,
        coeffs: &[Scalar],
        basis: &[NilMorphism],
    ) -> Result<NilMorphism> {
        assert_eq!(coeffs.len(), basis.len(), "one coefficient per basis element");
        let mut acc = NilMorphism::zero(src, dst);
        for (c, b) in coeffs.iter().zip(basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// The transposed morphism `fᵀ: (Y*, yᵀ) → (X*, xᵀ)`.
    pub fn transpose(&self) -> NilMorphism {
        NilMorphism::new_unchecked(self.dst.transpose(), self.src.transpose(), self.mat.transpose())
    }
}

/// `g ∘ f`; requires `f.dst == g.src` exactly.
pub fn compose(g: &NilMorphism, f: &NilMorphism) -> Result<NilMorphism> {
    if f.dst != g.src {
        return Err(NilError::NotComposable);
    }
    Ok(NilMorphism::new_unchecked(f.src.clone(), g.dst.clone(), &g.mat * &f.mat))
}

/// The biproduct `A ⊕ B` with its four structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biproduct {
    pub object: NilObject,
    pub inject_a: NilMorphism,
    pub inject_b: NilMorphism,
    pub project_a: NilMorphism,
    pub project_b: NilMorphism,
}

impl Biproduct {
    /// The unique `u: A ⊕ B → W` with `u∘i_a = f_a` and `u∘i_b = f_b`.
    pub fn copair(&self, fa: &NilMorphism, fb: &NilMorphism) -> Result<NilMorphism> {
        if fa.src != self.inject_a.src || fb.src != self.inject_b.src || fa.dst != fb.dst {
            return Err(NilError::NotComposable);
        }
        NilMorphism::new(self.object.clone(), fa.dst.clone(), fa.mat.hstack(&fb.mat))
    }

    /// The unique `v: W → A ⊕ B` with `p_a∘v = g_a` and `p_b∘v = g_b`.
    pub fn pair(&self, ga: &NilMorphism, gb: &NilMorphism) -> Result<NilMorphism> {
        if ga.dst != self.project_a.dst || gb.dst != self.project_b.dst || ga.src != gb.src {
            return Err(NilError::NotComposable);
        }
        NilMorphism::new(ga.src.clone(), self.object.clone(), ga.mat.vstack(&gb.mat))
    }
}

pub fn direct_sum(a: &NilObject, b: &NilObject) -> Result<Biproduct> {
    if a.field() != b.field() {
        return Err(NilError::FieldMismatch(a.field(), b.field()));
    }
    let field = a.field();
    let (m, n) = (a.dim(), b.dim());
    let object = NilObject { endo: a.endo.block_diag(&b.endo) };
    let ia = Mat::identity(field, m).vstack(&Mat::zeros(field, n, m));
    let ib = Mat::zeros(field, m, n).vstack(&Mat::identity(field, n));
    Ok(Biproduct {
        project_a: NilMorphism::new_unchecked(object.clone(), a.clone(), ia.transpose()),
        project_b: NilMorphism::new_unchecked(object.clone(), b.clone(), ib.transpose()),
        inject_a: NilMorphism::new_unchecked(a.clone(), object.clone(), ia),
        inject_b: NilMorphism::new_unchecked(b.clone(), object.clone(), ib),
        object,
    })
}

/// The inverse morphism when `f` is an isomorphism.
pub fn is_isomorphism(f: &NilMorphism) -> Option<NilMorphism> {
    let inv = f.mat.inverse()?;
    Some(NilMorphism::new_unchecked(f.dst.clone(), f.src.clone(), inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn block(p: usize) -> NilObject {
        NilObject::jordan_block(Q, p).unwrap()
    }

    #[test]
    fn object_validation() {
        assert!(NilObject::new(2, block(2).endo().clone()).is_ok());
        assert!(matches!(NilObject::new(2, Mat::identity(Q, 2)), Err(NilError::NotNilpotent(2))));
        assert!(matches!(
            NilObject::new(3, Mat::zeros(Q, 3, 2)),
            Err(NilError::NotSquare { .. })
        ));
        let z = NilObject::new(0, Mat::zeros(Q, 0, 0)).unwrap();
        assert_eq!(z, NilObject::zero(Q));
        assert_eq!(z.nilindex(), 0);
    }

    #[test]
    fn jordan_blocks() {
        assert_eq!(block(1).endo(), &Mat::zeros(Q, 1, 1));
        assert_eq!(block(3).endo().rank(), 2);
        for p in 1..=6 {
            assert_eq!(block(p).nilindex(), p);
        }
        assert_eq!(NilObject::jordan_block(Q, 0), Err(NilError::ZeroBlock));
    }

    #[test]
    fn nilindex_examples() {
        assert_eq!(block(3).nilindex(), 3);
        assert_eq!(NilObject::plain(Q, 2).nilindex(), 1);
        let s = direct_sum(&block(2), &block(5)).unwrap();
        assert_eq!(s.object.nilindex(), 5);
        let s = direct_sum(&block(2), &block(3)).unwrap();
        assert_eq!(s.object.dim(), 5);
        assert_eq!(s.object.nilindex(), 3);
    }

    #[test]
    fn morphism_validation() {
        let x = block(3);
        assert!(NilMorphism::new(x.clone(), x.clone(), Mat::identity(Q, 3)).is_ok());
        assert!(NilMorphism::new(x.clone(), x.clone(), x.endo().clone()).is_ok());
        let k = NilObject::plain(Q, 1);
        let seven = Mat::from_i64(Q, 1, 1, &[7]);
        assert!(NilMorphism::new(k.clone(), k, seven).is_ok());
        assert!(matches!(
            NilMorphism::new(x.clone(), x.clone(), Mat::identity(Q, 2)),
            Err(NilError::ShapeMismatch { .. })
        ));
        // e_1 ↦ e_1 only, not an intertwiner
        let bad = Mat::from_i64(Q, 3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(NilMorphism::new(x.clone(), x, bad), Err(NilError::NotIntertwining));
    }

    #[test]
    fn composition_with_identity() {
        let x = block(3);
        let f = NilMorphism::new(x.clone(), x.clone(), x.endo().clone()).unwrap();
        let id = NilMorphism::identity(&x);
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert_eq!(compose(&f, &id).unwrap(), f);
        let other = NilMorphism::identity(&block(2));
        assert_eq!(compose(&other, &f), Err(NilError::NotComposable));
    }

    #[test]
    fn biproduct_identities() {
        let s = direct_sum(&block(2), &block(3)).unwrap();
        let id_a = NilMorphism::identity(&block(2));
        assert_eq!(compose(&s.project_a, &s.inject_a).unwrap(), id_a);
        assert_eq!(compose(&s.project_b, &s.inject_b).unwrap(), NilMorphism::identity(&block(3)));
        assert!(compose(&s.project_a, &s.inject_b).unwrap().is_zero());
        let sum = compose(&s.inject_a, &s.project_a)
            .unwrap()
            .add(&compose(&s.inject_b, &s.project_b).unwrap())
            .unwrap();
        assert_eq!(sum, NilMorphism::identity(&s.object));
    }

    #[test]
    fn direct_sum_with_zero() {
        let x = block(3);
        let s = direct_sum(&NilObject::zero(Q), &x).unwrap();
        assert_eq!(s.object, x);
        let f7 = Field::prime(7).unwrap();
        assert!(matches!(
            direct_sum(&x, &NilObject::zero(f7)),
            Err(NilError::FieldMismatch(..))
        ));
    }

    #[test]
    fn isomorphism_detection() {
        let x = block(3);
        let id = NilMorphism::identity(&x);
        assert_eq!(is_isomorphism(&id), Some(id.clone()));
        let f = NilMorphism::new(block(2), x.clone(), Mat::from_i64(Q, 3, 2, &[1, 0, 0, 1, 0, 0])).unwrap();
        assert!(is_isomorphism(&f).is_none());
        let c = Mat::from_i64(Q, 3, 3, &[1, 2, 0, 0, 1, 3, 1, 0, 1]);
        let (_, conj) = x.conjugate(&c).unwrap();
        let inv = is_isomorphism(&conj).unwrap();
        assert_eq!(compose(&inv, &conj).unwrap(), NilMorphism::identity(&x));
    }

    #[test]
    fn partitions_enumerate() {
        let counts: Vec<usize> = (0..=6).map(|n| JordanType::partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(JordanType::new(vec![1, 3, 2]).unwrap().parts(), &[3, 2, 1]);
        assert!(JordanType::new(vec![2, 0]).is_err());
    }
}
