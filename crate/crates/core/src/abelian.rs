//! Kernels, cokernels, images and exactness, plus the extension-closure
//! check for endomorphisms of short exact sequences.

use serde::Serialize;

use crate::error::{NilError, Result};
use crate::matrix::Mat;
use crate::object::{NilMorphism, NilObject};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub object: NilObject,
    /// Monic `g: (N, n) → src(f)` whose columns are the canonical nullspace basis of `f`.
    pub mono: NilMorphism,
}

impl Kernel {
    /// The unique `u` with `h = mono ∘ u`, for `h` killed by the morphism.
    pub fn factor(&self, h: &NilMorphism) -> Result<NilMorphism> {
        if h.dst() != self.mono.dst() {
            return Err(NilError::NotComposable);
        }
        let u = self
            .mono
            .mat()
            .solve_matrix(h.mat())?
            .ok_or_else(|| NilError::DimensionMismatch("morphism does not factor through the kernel".into()))?;
        NilMorphism::new(h.src().clone(), self.object.clone(), u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub object: NilObject,
    /// Epi `π: dst(f) → (C, c)`.
    pub epi: NilMorphism,
    /// Inclusion of the complement coordinates; `π·section = I`.
    pub section: Mat,
}

impl Cokernel {
    /// The unique `v` with `k = v ∘ epi`, for `k` vanishing on the image.
    pub fn factor(&self, k: &NilMorphism) -> Result<NilMorphism> {
        if k.src() != self.epi.src() {
            return Err(NilError::NotComposable);
        }
        let v = k.mat() * &self.section;
        if &v * self.epi.mat() != *k.mat() {
            return Err(NilError::DimensionMismatch("morphism does not factor through the cokernel".into()));
        }
        NilMorphism::new(self.object.clone(), k.dst().clone(), v)
    }
}

pub fn kernel(f: &NilMorphism) -> Kernel {
    let x = f.src();
    let field = f.field();
    let basis = f.mat().nullspace_basis();
    let g = Mat::from_columns(field, x.dim(), &basis);
    // g has full column rank, so g·n = x·g has exactly one solution
    let n = g
        .solve_matrix(&(x.endo() * &g))
        .expect("shapes agree")
        .expect("x preserves ker f");
    let object = NilObject::new(basis.len(), n).expect("restriction of a nilpotent map");
    let mono = NilMorphism::new(object.clone(), x.clone(), g).expect("inclusion intertwines");
    Kernel { object, mono }
}

pub fn cokernel(f: &NilMorphism) -> Cokernel {
    let y = f.dst();
    let field = f.field();
    let dim = y.dim();
    // rows of rref(fᵀ) span im f; complement spanned by the non-pivot coordinates
    let (r, pivots) = f.mat().transpose().rref();
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let pi = Mat::from_fn(field, free.len(), dim, |row, col| {
        let j = free[row];
        if col == j {
            field.one()
        } else if let Some(i) = pivots.iter().position(|&p| p == col) {
            -r.get(i, j)
        } else {
            field.zero()
        }
    });
    let section = Mat::from_fn(field, dim, free.len(), |i, k| {
        if i == free[k] {
            field.one()
        } else {
            field.zero()
        }
    });
    let c = &(&pi * y.endo()) * &section;
    let object = NilObject::new(free.len(), c).expect("quotient of a nilpotent map");
    let epi = NilMorphism::new(y.clone(), object.clone(), pi).expect("projection intertwines");
    Cokernel { object, epi, section }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub object: NilObject,
    pub epi: NilMorphism,
    pub mono: NilMorphism,
}

/// `f = mono ∘ epi` with `mono` the kernel of the cokernel of `f`.
pub fn image_factorization(f: &NilMorphism) -> Image {
    let coker = cokernel(f);
    let im = kernel(&coker.epi);
    let e = im
        .mono
        .mat()
        .solve_matrix(f.mat())
        .expect("shapes agree")
        .expect("f lands in its image");
    let epi = NilMorphism::new(f.src().clone(), im.object.clone(), e).expect("corestriction intertwines");
    Image { object: im.object, epi, mono: im.mono }
}

/// Whether `im f = ker g` as subobjects of the middle object.
pub fn is_exact_pair(f: &NilMorphism, g: &NilMorphism) -> Result<bool> {
    if f.dst() != g.src() {
        return Err(NilError::NotComposable);
    }
    let im = image_factorization(f);
    let ker = kernel(g);
    Ok(im.mono.mat().same_column_space(ker.mono.mat()))
}

/// `(K^n, 0)`: a plain vector space viewed as an object.
pub fn embed_plain(field: Field, n: usize) -> NilObject {
    NilObject::plain(field, n)
}

/// `0 → (X, x) →f (Y, y) →g (Z, z) → 0` in the category of all
/// endomorphisms, with `y` not yet known to be nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndExtension {
    pub sub: NilObject,
    pub mid: Mat,
    pub quot: NilObject,
    pub f: Mat,
    pub g: Mat,
}

impl EndExtension {
    /// Checks shapes, commutativity of both squares and exactness.
    pub fn validate(&self) -> Result<()> {
        let not_exact = |m: &str| Err(NilError::NotExact(m.to_string()));
        let (a, c) = (self.sub.dim(), self.quot.dim());
        let b = self.mid.rows();
        if !self.mid.is_square() {
            return Err(NilError::NotSquare { rows: self.mid.rows(), cols: self.mid.cols(), dim: b });
        }
        for m in [&self.mid, &self.f, &self.g] {
            if m.field() != self.sub.field() || self.quot.field() != self.sub.field() {
                return Err(NilError::FieldMismatch(self.sub.field(), m.field()));
            }
        }
        if self.f.shape() != (b, a) {
            return Err(NilError::ShapeMismatch { got: self.f.shape(), expected: (b, a) });
        }
        if self.g.shape() != (c, b) {
            return Err(NilError::ShapeMismatch { got: self.g.shape(), expected: (c, b) });
        }
        if &self.mid * &self.f != &self.f * self.sub.endo() {
            return not_exact("y·f != f·x");
        }
        if self.quot.endo() * &self.g != &self.g * &self.mid {
            return not_exact("z·g != g·y");
        }
        let rf = self.f.rank();
        if rf != a {
            return not_exact("f is not monic");
        }
        let rg = self.g.rank();
        if rg != c {
            return not_exact("g is not epic");
        }
        if !(&self.g * &self.f).is_zero() || rf != b - rg {
            return not_exact("im f != ker g");
        }
        Ok(())
    }

    pub fn middle_object(&self) -> Result<NilObject> {
        NilObject::new(self.mid.rows(), self.mid.clone())
    }
}

/// Witness that the middle of an extension of nilpotent objects is nilpotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThicknessCertificate {
    /// `max(nilindex(sub), nilindex(quot))`.
    pub t: usize,
    pub kills_sub: bool,
    pub kills_quotient: bool,
    pub vanishes_at_2t: bool,
    pub nilindex_sub: usize,
    pub nilindex_quot: usize,
    /// `None` when the middle is not nilpotent.
    pub nilindex_mid: Option<usize>,
}

impl ThicknessCertificate {
    pub fn nilpotent(&self) -> bool {
        self.nilindex_mid.is_some()
    }

    /// `nilindex(mid) ≤ nilindex(sub) + nilindex(quot)`.
    pub fn additive_bound_holds(&self) -> bool {
        self.nilindex_mid
            .is_some_and(|n| n <= self.nilindex_sub + self.nilindex_quot)
    }
}

/// Verifies `y^t·f = 0`, `g·y^t = 0` and `y^{2t} = 0`, and measures the
/// nilpotency index of `y` directly.
pub fn extension_nilindex_check(ext: &EndExtension) -> Result<(bool, ThicknessCertificate)> {
    ext.validate()?;
    let nx = ext.sub.nilindex();
    let nz = ext.quot.nilindex();
    let t = nx.max(nz);
    let yt = ext.mid.pow(t as u32);
    let dim = ext.mid.rows();
    let nilindex_mid = ext.mid.pow(dim as u32).is_zero().then(|| {
        NilObject::new(dim, ext.mid.clone()).expect("checked nilpotent").nilindex()
    });
    let cert = ThicknessCertificate {
        t,
        kills_sub: (&yt * &ext.f).is_zero(),
        kills_quotient: (&ext.g * &yt).is_zero(),
        vanishes_at_2t: (&yt * &yt).is_zero(),
        nilindex_sub: nx,
        nilindex_quot: nz,
        nilindex_mid,
    };
    let ok = cert.kills_sub && cert.kills_quotient && cert.vanishes_at_2t && cert.nilpotent();
    Ok((ok, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{hom_dim, shifted_jordan_basis};
    use crate::jordan::jordan_type;
    use crate::object::{compose, direct_sum, JordanType};

    const Q: Field = Field::Rationals;

    fn block(p: usize) -> NilObject {
        NilObject::jordan_block(Q, p).unwrap()
    }

    /// f = (1, 0)ᵀ: (X, x) → (X ⊕ X, [[x, 1], [0, x]]).
    fn stacked(x: &NilObject) -> (NilMorphism, NilMorphism) {
        let n = x.dim();
        let i = Mat::identity(Q, n);
        let z = Mat::zeros(Q, n, n);
        let y = Mat::from_blocks(Q, &[vec![x.endo(), &i], vec![&z, x.endo()]]);
        let mid = NilObject::new(2 * n, y).unwrap();
        let f = NilMorphism::new(x.clone(), mid.clone(), i.vstack(&z)).unwrap();
        let g = NilMorphism::new(mid, x.clone(), z.hstack(&i)).unwrap();
        (f, g)
    }

    #[test]
    fn kernel_examples() {
        let x = block(3);
        assert_eq!(kernel(&NilMorphism::identity(&x)).object, NilObject::zero(Q));
        let k = kernel(&NilMorphism::zero(&x, &block(2)));
        assert_eq!(k.object, x);
        assert_eq!(k.mono, NilMorphism::identity(&x));
        let (f, _) = stacked(&NilObject::plain(Q, 1));
        assert_eq!(kernel(&f).object.dim(), 0);
    }

    #[test]
    fn cokernel_examples() {
        let x = block(3);
        assert_eq!(cokernel(&NilMorphism::identity(&x)).object, NilObject::zero(Q));
        let c = cokernel(&NilMorphism::zero(&block(2), &x));
        assert_eq!(c.object, x);
        assert_eq!(c.epi, NilMorphism::identity(&x));
        let f1 = shifted_jordan_basis(Q, 2, 3).unwrap().remove(0);
        let c = cokernel(&f1);
        assert_eq!(c.object, NilObject::plain(Q, 1));
        assert!(compose(&c.epi, &f1).unwrap().is_zero());
    }

    #[test]
    fn image_examples() {
        let f1 = shifted_jordan_basis(Q, 2, 3).unwrap().remove(0);
        let im = image_factorization(&f1);
        assert!(im.epi.mat().is_invertible());
        assert_eq!(compose(&im.mono, &im.epi).unwrap(), f1);
        let z = image_factorization(&NilMorphism::zero(&block(2), &block(3)));
        assert_eq!(z.object.dim(), 0);
    }

    #[test]
    fn exactness_examples() {
        let x = block(2);
        let zero = NilObject::zero(Q);
        let into = NilMorphism::zero(&zero, &x);
        assert!(is_exact_pair(&into, &NilMorphism::identity(&x)).unwrap());
        let s = direct_sum(&x, &block(3)).unwrap();
        assert!(is_exact_pair(&s.inject_a, &s.project_b).unwrap());
        assert!(!is_exact_pair(&s.inject_a, &s.project_a).unwrap());
        let (f, g) = stacked(&block(2));
        assert!(is_exact_pair(&f, &g).unwrap());
        assert_eq!(is_exact_pair(&g, &g), Err(NilError::NotComposable));
    }

    #[test]
    fn split_extension_certificate() {
        let x = block(2);
        let s = direct_sum(&x, &x).unwrap();
        let ext = EndExtension {
            sub: x.clone(),
            mid: s.object.endo().clone(),
            quot: x.clone(),
            f: s.inject_a.mat().clone(),
            g: s.project_b.mat().clone(),
        };
        let (ok, cert) = extension_nilindex_check(&ext).unwrap();
        assert!(ok);
        assert_eq!(cert.t, 2);
        assert_eq!(cert.nilindex_mid, Some(2));
    }

    #[test]
    fn nonsplit_extension_of_simples() {
        let k = NilObject::plain(Q, 1);
        let ext = EndExtension {
            sub: k.clone(),
            mid: block(2).endo().clone(),
            quot: k,
            f: Mat::from_i64(Q, 2, 1, &[1, 0]),
            g: Mat::from_i64(Q, 1, 2, &[0, 1]),
        };
        let (ok, cert) = extension_nilindex_check(&ext).unwrap();
        assert!(ok);
        assert_eq!(cert.t, 1);
        assert!(cert.vanishes_at_2t);
        assert_eq!(cert.nilindex_mid, Some(2));
        assert!(cert.additive_bound_holds());
    }

    #[test]
    fn non_exact_data_is_rejected() {
        let k = NilObject::plain(Q, 1);
        let ext = EndExtension {
            sub: k.clone(),
            mid: block(2).endo().clone(),
            quot: k,
            f: Mat::from_i64(Q, 2, 1, &[1, 0]),
            g: Mat::from_i64(Q, 1, 2, &[1, 0]),
        };
        assert!(matches!(extension_nilindex_check(&ext), Err(NilError::NotExact(_))));
    }

    #[test]
    fn plain_embedding() {
        assert_eq!(embed_plain(Q, 1), NilObject::plain(Q, 1));
        assert_eq!(hom_dim(&embed_plain(Q, 2), &embed_plain(Q, 3)).unwrap(), 6);
        assert_eq!(jordan_type(&embed_plain(Q, 3)), JordanType::new(vec![1, 1, 1]).unwrap());
    }
}
