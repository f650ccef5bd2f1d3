//! Decomposition of objects into Jordan blocks `(K^p, J_p)`.

use crate::matrix::{Mat, Vector};
use crate::object::{JordanType, NilMorphism, NilObject};

/// Block sizes read off the rank sequence:
/// `#{parts ≥ k} = rank(x^{k−1}) − rank(x^k)`.
pub fn jordan_type(a: &NilObject) -> JordanType {
    let ranks = a.rank_sequence();
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::with_capacity(a.dim());
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k, exactly));
    }
    JordanType::new(parts).expect("parts are positive")
}

/// `⊕ J_{p_i}` for the Jordan type of `a`.
pub fn canonical_form(a: &NilObject) -> NilObject {
    NilObject::from_jordan_type(a.field(), &jordan_type(a))
}

/// Chain generators `(v, length)`, longest chains first.
///
/// At level `k` a candidate from the canonical basis of `ker x^k` becomes a
/// generator when it is independent of `ker x^{k−1}` together with the
/// level-`k` vectors of the longer chains already chosen.
fn chain_generators(a: &NilObject) -> Vec<(Vector, usize)> {
    let field = a.field();
    let n = a.dim();
    let x = a.endo();
    let s = a.nilindex();
    let mut powers = vec![Mat::identity(field, n)];
    for k in 1..=s {
        powers.push(&powers[k - 1] * x);
    }
    let kernels: Vec<Vec<Vector>> = powers.iter().map(Mat::nullspace_basis).collect();

    let mut chosen: Vec<(Vector, usize)> = Vec::new();
    for k in (1..=s).rev() {
        let mut span: Vec<Vector> = kernels[k - 1].clone();
        for (v, len) in &chosen {
            span.push(powers[len - k].apply(v));
        }
        let mut rank = Mat::from_columns(field, n, &span).rank();
        for cand in &kernels[k] {
            span.push(cand.clone());
            let r = Mat::from_columns(field, n, &span).rank();
            if r > rank {
                rank = r;
                chosen.push((cand.clone(), k));
            } else {
                span.pop();
            }
        }
    }
    chosen
}

/// An isomorphism `φ: a → canonical_form(a)`, so `φ·x·φ⁻¹` is block
/// diagonal with weakly decreasing blocks.
///
/// Within a block the basis is `x^{p−1}v, …, x·v, v`, matching the
/// superdiagonal convention `J_p e_{i+1} = e_i`.
pub fn jordan_basis(a: &NilObject) -> NilMorphism {
    let field = a.field();
    let mut columns = Vec::with_capacity(a.dim());
    for (v, len) in chain_generators(a) {
        let mut chain = vec![v];
        for _ in 1..len {
            let next = a.endo().apply(chain.last().expect("nonempty"));
            chain.push(next);
        }
        columns.extend(chain.into_iter().rev());
    }
    let change = Mat::from_columns(field, a.dim(), &columns);
    let phi = change.inverse().expect("chain vectors form a basis");
    NilMorphism::new(a.clone(), canonical_form(a), phi).expect("chain basis conjugates to the canonical form")
}

/// One indecomposable summand with its structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub object: NilObject,
    pub injection: NilMorphism,
    pub projection: NilMorphism,
}

/// Splits `a` into blocks `(K^{p_i}, J_{p_i})`; the injections and
/// projections satisfy the biproduct identities.
pub fn decompose(a: &NilObject) -> Vec<Summand> {
    let field = a.field();
    let phi = jordan_basis(a);
    let phi_inv = phi.mat().inverse().expect("isomorphism");
    let mut offset = 0;
    jordan_type(a)
        .parts()
        .iter()
        .map(|&p| {
            let block = NilObject::jordan_block(field, p).expect("positive part");
            let inj = phi_inv.submatrix(0..a.dim(), offset..offset + p);
            let proj = phi.mat().submatrix(offset..offset + p, 0..a.dim());
            offset += p;
            Summand {
                injection: NilMorphism::new(block.clone(), a.clone(), inj).expect("restriction of an isomorphism"),
                projection: NilMorphism::new(a.clone(), block.clone(), proj).expect("restriction of an isomorphism"),
                object: block,
            }
        })
        .collect()
}

pub fn is_indecomposable(a: &NilObject) -> bool {
    jordan_type(a).num_blocks() == 1
}

/// The simple objects are exactly the one-dimensional ones, `(K, 0)`.
pub fn is_simple(a: &NilObject) -> bool {
    a.dim() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::object::{compose, direct_sum};
    use crate::scalar::Field;

    const Q: Field = Field::Rationals;

    fn jt(v: &[usize]) -> JordanType {
        JordanType::new(v.to_vec()).unwrap()
    }

    fn block(p: usize) -> NilObject {
        NilObject::jordan_block(Q, p).unwrap()
    }

    fn conj() -> Mat {
        Mat::from_i64(Q, 4, 4, &[1, 2, 0, -1, 0, 1, 3, 0, 1, 0, 1, 2, 0, -1, 0, 1])
    }

    #[test]
    fn jordan_type_examples() {
        assert_eq!(jordan_type(&block(3)), jt(&[3]));
        assert_eq!(jordan_type(&NilObject::plain(Q, 3)), jt(&[1, 1, 1]));
        let a = NilObject::from_jordan_type(Q, &jt(&[3, 1]));
        let (b, _) = a.conjugate(&conj()).unwrap();
        assert_ne!(a, b);
        assert_eq!(jordan_type(&b), jt(&[3, 1]));
        assert_eq!(jordan_type(&NilObject::zero(Q)), jt(&[]));
    }

    #[test]
    fn canonical_input_gives_identity() {
        for t in [jt(&[3]), jt(&[2, 1]), jt(&[2, 2]), jt(&[3, 1, 1])] {
            let a = NilObject::from_jordan_type(Q, &t);
            assert_eq!(jordan_basis(&a).mat(), &Mat::identity(Q, t.size()));
        }
        assert_eq!(jordan_basis(&NilObject::plain(Q, 3)).mat(), &Mat::identity(Q, 3));
    }

    #[test]
    fn jordan_basis_recovers_conjugated_form() {
        let a = NilObject::from_jordan_type(Q, &jt(&[2, 2]));
        let (b, _) = a.conjugate(&conj()).unwrap();
        let phi = jordan_basis(&b);
        let inv = phi.mat().inverse().unwrap();
        assert_eq!(&(phi.mat() * b.endo()) * &inv, *a.endo());
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&block(5)).len(), 1);
        let parts = decompose(&NilObject::plain(Q, 3));
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|s| s.object == NilObject::plain(Q, 1)));
    }

    #[test]
    fn decompose_direct_sum_round_trip() {
        let s = direct_sum(&block(2), &block(4)).unwrap();
        let s = direct_sum(&s.object, &block(1)).unwrap();
        let sizes: Vec<usize> = decompose(&s.object).iter().map(|d| d.object.dim()).collect();
        assert_eq!(sizes, vec![4, 2, 1]);
    }

    #[test]
    fn summands_satisfy_biproduct_identities() {
        let (a, _) = NilObject::from_jordan_type(Q, &jt(&[2, 1, 1])).conjugate(&conj()).unwrap();
        let parts = decompose(&a);
        let mut total = NilMorphism::zero(&a, &a);
        for (i, si) in parts.iter().enumerate() {
            for (j, sj) in parts.iter().enumerate() {
                let c = compose(&si.projection, &sj.injection);
                if i == j {
                    assert_eq!(c.unwrap(), NilMorphism::identity(&si.object));
                } else if let Ok(c) = c {
                    assert!(c.is_zero());
                } else {
                    let m = si.projection.mat() * sj.injection.mat();
                    assert!(m.is_zero());
                }
            }
            total = total.add(&compose(&si.injection, &si.projection).unwrap()).unwrap();
        }
        assert_eq!(total, NilMorphism::identity(&a));
    }

    #[test]
    fn indecomposable_and_simple() {
        assert!(is_indecomposable(&block(4)));
        assert!(!is_indecomposable(&NilObject::plain(Q, 2)));
        assert!(is_simple(&NilObject::plain(Q, 1)));
        assert!(!is_simple(&block(2)));
        assert!(!is_simple(&NilObject::plain(Q, 2)));
    }
}
