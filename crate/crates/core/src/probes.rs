//! Seeded probe suites for the functor layer: Jordan type of tensor
//! objects, bijectivity and naturality of both adjunctions, and the unit
//! evaluation on plain objects.

use serde_json::json;

use crate::diagnostics::{mat_json, mor_json, obj_json, SuiteReport, Tally};
use crate::functors::{
    check_bijective, check_naturality, eta_plain, tensor_obj, HomAdjunction, HomFunctorParam, PlainFunctor,
    SelfAdjunction, TensorAdjunction, TensorParam,
};
use crate::jordan::jordan_type;
use crate::matrix::Mat;
use crate::object::{JordanType, NilMorphism, NilObject};
use crate::random::ProbeRng;
use crate::scalar::{Field, Scalar};

/// Invertible `L·D·U` with a random nonzero diagonal `D`.
fn random_b(rng: &mut ProbeRng, field: Field, d: usize) -> Mat {
    let lu = rng.invertible(field, d);
    let diag = Mat::from_fn(field, d, d, |i, j| {
        if i != j {
            return field.zero();
        }
        match field {
            Field::Rationals => Scalar::from_i64(field, [1, 2, 3, -1, -2][rng.below(5) as usize]),
            Field::Prime(p) => Scalar::from_i64(field, 1 + rng.below(p - 1) as i64),
        }
    });
    &lu * &diag
}

fn repeated(t: &JordanType, d: usize) -> JordanType {
    JordanType::new(t.parts().iter().flat_map(|&p| std::iter::repeat_n(p, d)).collect()).expect("positive parts")
}

fn square_outcome(adj: &dyn SelfAdjunction, y: &NilObject, f: &NilMorphism) -> Result<(), (String, serde_json::Value)> {
    let rep = check_naturality(adj, y, std::slice::from_ref(f));
    match rep.failures.first() {
        None => Ok(()),
        Some(fail) => Err((
            format!("naturality square fails: {}", fail.reason),
            json!({"probe": mor_json(f), "y": obj_json(y)}),
        )),
    }
}

/// Ten parameters `b` for each `d ≤ 3`; per parameter one Jordan-type law,
/// one bijectivity and one naturality case on random objects of dimension
/// `1..=max_dim`.
pub fn tensor_suite(field: Field, max_dim: usize, seed: u64) -> SuiteReport {
    let mut rng = ProbeRng::new(seed);
    let mut tally = Tally::new();
    for d in 1..=3 {
        for _ in 0..10 {
            let b = random_b(&mut rng, field, d);
            let t = TensorParam::new(b.clone()).expect("invertible");
            let x = rng.object(field, 1, max_dim);
            let y = rng.object(field, 1, max_dim);
            let x_prime = rng.object(field, 1, max_dim);
            let f = rng.morphism(&x_prime, &x).expect("same field");
            let base = json!({"b": mat_json(&b), "x": obj_json(&x), "y": obj_json(&y)});

            let tx = tensor_obj(&x, &t).expect("same field");
            let (got, want) = (jordan_type(&tx), repeated(&jordan_type(&x), d));
            tally.record(if got == want {
                Ok(())
            } else {
                Err((format!("jordan type {got}, expected {want}"), base.clone()))
            });

            let adj = TensorAdjunction { param: t };
            tally.record(match check_bijective(&adj, &x, &y) {
                Ok(rep) if rep.bijective => Ok(()),
                Ok(rep) => Err(("phi is not bijective".into(), json!({"case": base, "dims": rep}))),
                Err(e) => Err((e.to_string(), base)),
            });
            tally.record(square_outcome(&adj, &y, &f));
        }
    }
    tally.finish("adjoint-tensor", field, max_dim, seed)
}

/// Every triple of single blocks `A = J_r`, `X = J_p`, `Y = J_q` with
/// sizes `≤ max_dim`: both Hom spaces have dimension `min(r, p, q)` and
/// `φ` is bijective. Then 20 seeded naturality squares.
pub fn hom_suite(field: Field, max_dim: usize, seed: u64) -> SuiteReport {
    let mut rng = ProbeRng::new(seed);
    let mut tally = Tally::new();
    let block = |n: usize| NilObject::jordan_block(field, n).expect("positive size");
    for r in 1..=max_dim {
        let adj = HomAdjunction { param: HomFunctorParam::new(block(r)) };
        for p in 1..=max_dim {
            for q in 1..=max_dim {
                let (x, y) = (block(p), block(q));
                let base = json!({"r": r, "p": p, "q": q});
                let m = r.min(p).min(q);
                let dims = adj
                    .domain_basis(&x, &y)
                    .and_then(|d| Ok((d.len(), adj.codomain_basis(&x, &y)?.len())));
                tally.record(match dims {
                    Ok((a, b)) if a == m && b == m => Ok(()),
                    Ok((a, b)) => Err((format!("hom dimensions {a}, {b}, expected {m}"), base.clone())),
                    Err(e) => Err((e.to_string(), base.clone())),
                });
                tally.record(match check_bijective(&adj, &x, &y) {
                    Ok(rep) if rep.bijective => Ok(()),
                    Ok(rep) => Err(("phi is not bijective".into(), json!({"case": base, "dims": rep}))),
                    Err(e) => Err((e.to_string(), base)),
                });
            }
        }
    }
    for _ in 0..20 {
        let r = rng.usize_in(1, max_dim);
        let (p, q, p_prime) = (rng.usize_in(1, max_dim), rng.usize_in(1, max_dim), rng.usize_in(1, max_dim));
        let adj = HomAdjunction { param: HomFunctorParam::new(block(r)) };
        let f = rng.morphism(&block(p_prime), &block(p)).expect("same field");
        tally.record(square_outcome(&adj, &block(q), &f).map_err(|(reason, w)| (reason, json!({"r": r, "square": w}))));
    }
    tally.finish("adjoint-hom", field, max_dim, seed)
}

/// `η_A` for `− ⊗ K^d` and `Hom(K^m, −)`, `d, m ≤ 3`, on plain objects of
/// dimension `1..=max_dim`, and 10 seeded probe maps per functor.
pub fn eta_suite(field: Field, max_dim: usize, seed: u64) -> SuiteReport {
    let mut rng = ProbeRng::new(seed);
    let mut tally = Tally::new();
    let functors = (1..=3).map(PlainFunctor::TensorBy).chain((1..=3).map(PlainFunctor::HomFrom));
    let dims: Vec<usize> = (1..=max_dim).collect();
    for functor in functors {
        let probes: Vec<Mat> = (0..10)
            .map(|_| {
                let a = rng.usize_in(1, max_dim);
                let b = rng.usize_in(1, max_dim);
                rng.matrix(field, b, a)
            })
            .collect();
        match eta_plain(field, functor, &dims, &probes) {
            Ok(rep) => {
                for case in &rep.objects {
                    tally.record(if case.invertible {
                        Ok(())
                    } else {
                        Err(("eta is not invertible".into(), json!({"functor": rep.functor, "dim": case.dim})))
                    });
                }
                for (i, probe) in probes.iter().enumerate() {
                    tally.record(if rep.naturality_failures.contains(&i) {
                        Err(("eta is not natural".into(), json!({"functor": rep.functor, "probe": mat_json(probe)})))
                    } else {
                        Ok(())
                    });
                }
            }
            Err(e) => tally.record(Err((e.to_string(), json!({"functor": functor.label()})))),
        }
    }
    tally.finish("eta", field, max_dim, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn tensor_suite_passes_small() {
        let rep = tensor_suite(Q, 3, 1);
        assert_eq!(rep.cases, 90);
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn hom_suite_counts() {
        let rep = hom_suite(Q, 2, 1);
        assert_eq!(rep.cases, 8 * 2 + 20);
        // J_2 → HOM(J_1, J_q) sends everything to zero
        assert_eq!(rep.failures.len(), 2);
        assert!(rep.failures.iter().all(|f| f.reason == "phi is not bijective"));
    }

    #[test]
    fn eta_suite_passes() {
        let rep = eta_suite(Q, 3, 2);
        assert_eq!(rep.cases, 6 * (3 + 10));
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn suites_are_deterministic() {
        let a = serde_json::to_string(&tensor_suite(Q, 2, 5)).unwrap();
        let b = serde_json::to_string(&tensor_suite(Q, 2, 5)).unwrap();
        assert_eq!(a, b);
    }
}
