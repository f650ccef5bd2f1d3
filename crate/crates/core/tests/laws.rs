use nilcat_core::abelian::{cokernel, kernel};
use nilcat_core::functors::{homf_mor, tensor_adjunction, tensor_adjunction_inverse, tensor_mor, HomFunctorParam, TensorParam};
use nilcat_core::hom::{hom_dim, jordan_hom_dim};
use nilcat_core::jordan::{decompose, jordan_basis, jordan_type};
use nilcat_core::json::{MorphismDoc, ObjectDoc};
use nilcat_core::random::ProbeRng;
use nilcat_core::{compose, Field, Mat, NilMorphism, NilObject};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(5)), Just(Field::Prime(7))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hom_dim_is_conjugation_invariant(seed in any::<u64>(), field in fields()) {
        let mut rng = ProbeRng::new(seed);
        let (a, b) = (rng.object(field, 1, 4), rng.object(field, 1, 4));
        prop_assert_eq!(hom_dim(&a, &b).unwrap(), jordan_hom_dim(&jordan_type(&a), &jordan_type(&b)));
    }

    #[test]
    fn jordan_basis_conjugates_to_canonical_form(seed in any::<u64>(), field in fields()) {
        let mut rng = ProbeRng::new(seed);
        let a = rng.object(field, 1, 6);
        let phi = jordan_basis(&a);
        prop_assert!(phi.mat().is_invertible());
        let sizes: usize = decompose(&a).iter().map(|s| s.object.dim()).sum();
        prop_assert_eq!(sizes, a.dim());
    }

    #[test]
    fn tensor_is_a_functor(seed in any::<u64>()) {
        let mut rng = ProbeRng::new(seed);
        let q = Field::Rationals;
        let t = TensorParam::new(rng.invertible(q, 2)).unwrap();
        let (x, y, z) = (rng.object(q, 1, 3), rng.object(q, 1, 3), rng.object(q, 1, 3));
        let f = rng.morphism(&x, &y).unwrap();
        let g = rng.morphism(&y, &z).unwrap();
        let lhs = tensor_mor(&compose(&g, &f).unwrap(), &t).unwrap();
        let rhs = compose(&tensor_mor(&g, &t).unwrap(), &tensor_mor(&f, &t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hom_is_a_functor(seed in any::<u64>()) {
        let mut rng = ProbeRng::new(seed);
        let q = Field::Rationals;
        let h = HomFunctorParam::new(rng.object(q, 1, 3));
        let (x, y, z) = (rng.object(q, 1, 3), rng.object(q, 1, 3), rng.object(q, 1, 3));
        let f = rng.morphism(&x, &y).unwrap();
        let g = rng.morphism(&y, &z).unwrap();
        let lhs = homf_mor(&compose(&g, &f).unwrap(), &h).unwrap();
        let rhs = compose(&homf_mor(&g, &h).unwrap(), &homf_mor(&f, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs.mat(), rhs.mat());
        let id = homf_mor(&NilMorphism::identity(&x), &h).unwrap();
        prop_assert_eq!(id.mat(), &Mat::identity(q, id.mat().rows()));
    }

    #[test]
    fn tensor_adjunction_inverts(seed in any::<u64>()) {
        let mut rng = ProbeRng::new(seed);
        let q = Field::Rationals;
        let t = TensorParam::new(rng.invertible(q, 2)).unwrap();
        let (x, y) = (rng.object(q, 1, 3), rng.object(q, 1, 3));
        let tx = nilcat_core::functors::tensor_obj(&x, &t).unwrap();
        let g = rng.morphism(&tx, &y).unwrap();
        let k = tensor_adjunction(&g, &x, &t).unwrap();
        prop_assert_eq!(tensor_adjunction_inverse(&k, &y, &t).unwrap(), g);
    }

    #[test]
    fn kernel_cokernel_dimensions(seed in any::<u64>(), field in fields()) {
        let mut rng = ProbeRng::new(seed);
        let (a, b) = (rng.object(field, 1, 5), rng.object(field, 1, 5));
        let f = rng.morphism(&a, &b).unwrap();
        let r = f.mat().rank();
        prop_assert_eq!(kernel(&f).object.dim(), a.dim() - r);
        prop_assert_eq!(cokernel(&f).object.dim(), b.dim() - r);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), field in fields()) {
        let mut rng = ProbeRng::new(seed);
        let (a, b) = (rng.object(field, 0, 4), rng.object(field, 0, 4));
        let f = rng.morphism(&a, &b).unwrap();
        let text = serde_json::to_string(&MorphismDoc::encode(&f)).unwrap();
        let back: MorphismDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.decode(field).unwrap(), f);
        let text = serde_json::to_string(&ObjectDoc::encode(&a)).unwrap();
        let back: ObjectDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.decode(field).unwrap(), a);
    }
}

#[test]
fn zero_object_is_initial_and_terminal() {
    let q = Field::Rationals;
    let z = NilObject::zero(q);
    let a = NilObject::from_jordan_type(q, &nilcat_core::JordanType::new(vec![3, 1]).unwrap());
    assert_eq!(hom_dim(&z, &a).unwrap(), 0);
    assert_eq!(hom_dim(&a, &z).unwrap(), 0);
}
