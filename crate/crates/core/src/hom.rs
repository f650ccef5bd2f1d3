//! Hom spaces in the nilpotent category, computed from the vectorised
//! intertwiner equation `f·N − M·f = 0` (`N = x`, `M = y`).

use crate::error::{NilError, Result};
use crate::matrix::{Mat, Vector};
use crate::object::{JordanType, NilMorphism, NilObject};

/// Coefficient matrix `kron(srcᵀ, I) − kron(I, dst)` acting on `vec(f)`.
///
/// Works for any square matrices, nilpotent or not; the diagnostics use it
/// for objects such as `(K^m, 1)`.
pub fn intertwiner_matrix(src_endo: &Mat, dst_endo: &Mat) -> Result<Mat> {
    if src_endo.field() != dst_endo.field() {
        return Err(NilError::FieldMismatch(src_endo.field(), dst_endo.field()));
    }
    let field = src_endo.field();
    let i_dst = Mat::identity(field, dst_endo.rows());
    let i_src = Mat::identity(field, src_endo.rows());
    Ok(&src_endo.transpose().kron(&i_dst) - &i_src.kron(dst_endo))
}

/// Solution space of `dst·f = f·src`, as `dst.rows × src.rows` matrices.
pub fn intertwiner_solutions(src_endo: &Mat, dst_endo: &Mat) -> Result<Vec<Mat>> {
    let sys = intertwiner_matrix(src_endo, dst_endo)?;
    let (m, n) = (dst_endo.rows(), src_endo.rows());
    Ok(sys
        .nullspace_basis()
        .iter()
        .map(|v| Mat::unvectorize(src_endo.field(), m, n, v))
        .collect())
}

pub fn intertwiner_system(src: &NilObject, dst: &NilObject) -> Result<Mat> {
    intertwiner_matrix(src.endo(), dst.endo())
}

/// Canonical basis of `Hom(src, dst)`, ordered by the free columns of the
/// intertwiner system.
pub fn hom_basis(src: &NilObject, dst: &NilObject) -> Result<Vec<NilMorphism>> {
    Ok(intertwiner_solutions(src.endo(), dst.endo())?
        .into_iter()
        .map(|m| NilMorphism::new_unchecked(src.clone(), dst.clone(), m))
        .collect())
}

pub fn hom_dim(src: &NilObject, dst: &NilObject) -> Result<usize> {
    let sys = intertwiner_system(src, dst)?;
    Ok(sys.cols() - sys.rank())
}

/// `Σ_{i,j} min(p_i, q_j)`.
pub fn jordan_hom_dim(src: &JordanType, dst: &JordanType) -> usize {
    src.parts()
        .iter()
        .flat_map(|&p| dst.parts().iter().map(move |&q| p.min(q)))
        .sum()
}

/// Basis `f_1, …, f_m` of `Hom(J_p, J_q)`, `m = min(p, q)`, with
/// `J_q·f_i = f_{i+1}` and `J_q·f_m = 0`.
///
/// `f_1` has ones at `(k, k + p − m)`: the inclusion of `J_p` as the first
/// `p` coordinates when `p ≤ q`, the projection onto the last `q`
/// coordinates when `p > q`.
pub fn shifted_jordan_basis(field: crate::Field, p: usize, q: usize) -> Result<Vec<NilMorphism>> {
    let src = NilObject::jordan_block(field, p)?;
    let dst = NilObject::jordan_block(field, q)?;
    let m = p.min(q);
    let first = Mat::from_fn(field, q, p, |i, j| {
        if i < m && j == i + p - m {
            field.one()
        } else {
            field.zero()
        }
    });
    let mut out = vec![NilMorphism::new(src.clone(), dst.clone(), first)?];
    for _ in 1..m {
        let next = dst.endo() * out.last().expect("nonempty").mat();
        out.push(NilMorphism::new_unchecked(src.clone(), dst.clone(), next));
    }
    Ok(out)
}

/// Coordinates of `target` in a linearly independent family of parallel
/// morphisms, or `None` when it lies outside their span.
pub fn coordinates(basis: &[NilMorphism], target: &NilMorphism) -> Result<Option<Vector>> {
    let field = target.field();
    let len = target.mat().rows() * target.mat().cols();
    let cols: Vec<Vector> = basis.iter().map(|b| b.mat().vectorize()).collect();
    let stacked = Mat::from_columns(field, len, &cols);
    Ok(stacked.solve(&target.mat().vectorize())?.map(|s| s.particular))
}

/// Rank of a family of parallel morphisms viewed as vectors.
pub fn span_rank(family: &[NilMorphism]) -> usize {
    let Some(first) = family.first() else {
        return 0;
    };
    let len = first.mat().rows() * first.mat().cols();
    let cols: Vec<Vector> = family.iter().map(|b| b.mat().vectorize()).collect();
    Mat::from_columns(first.field(), len, &cols).rank()
}

/// Matrix of a linear map between two Hom spaces given by its action on a
/// basis of the source: column `j` holds the coordinates of `map(src[j])`
/// in `dst`. Fails if an image lies outside the span of `dst`.
pub fn linear_map_matrix(
    src_basis: &[NilMorphism],
    dst_basis: &[NilMorphism],
    mut map: impl FnMut(&NilMorphism) -> Result<NilMorphism>,
    field: crate::Field,
) -> Result<Mat> {
    let mut cols = Vec::with_capacity(src_basis.len());
    for g in src_basis {
        let image = map(g)?;
        let c = coordinates(dst_basis, &image)?.ok_or_else(|| {
            NilError::DimensionMismatch("image lies outside the target hom space".into())
        })?;
        cols.push(c);
    }
    Ok(Mat::from_columns(field, dst_basis.len(), &cols))
}
