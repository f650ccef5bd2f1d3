//! Seeded probe generation.
//!
//! The stream is ChaCha8 seeded with `seed_from_u64`, and every draw is
//! `next_u64() % n`. Keeping to that pair of primitives pins the sequence of
//! generated probes for a given seed independently of `rand` sampling
//! internals.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::abelian::EndExtension;
use crate::error::Result;
use crate::hom::hom_basis;
use crate::matrix::Mat;
use crate::object::{JordanType, NilMorphism, NilObject};
use crate::scalar::{Field, Scalar};

pub struct ProbeRng {
    inner: ChaCha8Rng,
}

impl ProbeRng {
    pub fn new(seed: u64) -> ProbeRng {
        ProbeRng { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform-ish in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        self.inner.next_u64() % n
    }

    /// Inclusive integer range.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        self.range(lo as i64, hi as i64) as usize
    }

    /// Small entries: `-3..=3` over Q, any residue over F_p.
    pub fn scalar(&mut self, field: Field) -> Scalar {
        match field {
            Field::Rationals => Scalar::from_i64(field, self.range(-3, 3)),
            Field::Prime(p) => Scalar::from_i64(field, self.below(p) as i64),
        }
    }

    pub fn matrix(&mut self, field: Field, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| self.scalar(field))
    }

    /// `L·U` with unit-triangular factors; over Q the inverse is again an
    /// integer matrix.
    pub fn invertible(&mut self, field: Field, n: usize) -> Mat {
        let off = |this: &mut Self| match field {
            Field::Rationals => Scalar::from_i64(field, this.range(-2, 2)),
            Field::Prime(_) => this.scalar(field),
        };
        let mut lower = Mat::identity(field, n);
        let mut upper = Mat::identity(field, n);
        for i in 0..n {
            for j in 0..i {
                lower.set(i, j, off(self));
                upper.set(j, i, off(self));
            }
        }
        &lower * &upper
    }

    /// A random partition of `n`.
    pub fn partition_of(&mut self, n: usize) -> JordanType {
        let mut parts = Vec::new();
        let mut rem = n;
        while rem > 0 {
            let p = self.usize_in(1, rem);
            parts.push(p);
            rem -= p;
        }
        JordanType::new(parts).expect("positive parts")
    }

    /// Up to `max_blocks` blocks (at least one), each of size `1..=max_size`.
    pub fn jordan_type(&mut self, max_blocks: usize, max_size: usize) -> JordanType {
        let count = self.usize_in(1, max_blocks);
        let parts = (0..count).map(|_| self.usize_in(1, max_size)).collect();
        JordanType::new(parts).expect("positive parts")
    }

    /// A random conjugate of a random Jordan form of the given dimension.
    pub fn object_of_dim(&mut self, field: Field, dim: usize) -> NilObject {
        let t = self.partition_of(dim);
        let c = self.invertible(field, dim);
        NilObject::from_jordan_type(field, &t)
            .conjugate(&c)
            .expect("invertible conjugator")
            .0
    }

    pub fn object(&mut self, field: Field, min_dim: usize, max_dim: usize) -> NilObject {
        let d = self.usize_in(min_dim, max_dim);
        self.object_of_dim(field, d)
    }

    /// A random element of `Hom(src, dst)`.
    pub fn morphism(&mut self, src: &NilObject, dst: &NilObject) -> Result<NilMorphism> {
        let basis = hom_basis(src, dst)?;
        let coeffs: Vec<Scalar> = basis.iter().map(|_| self.scalar(src.field())).collect();
        NilMorphism::linear_combination(src, dst, &coeffs, &basis)
    }

    /// `0 → X → Y → Z → 0` with random nilpotent ends, middle
    /// `c·[[x, w], [0, z]]·c⁻¹` for random `w` and invertible `c`, and
    /// `f = c·[1; 0]`, `g = [0, 1]·c⁻¹`. Both ends have dimension at least 1.
    pub fn extension(&mut self, field: Field, max_dim: usize) -> EndExtension {
        let n = self.usize_in(2, max_dim.max(2));
        let a = self.usize_in(1, n - 1);
        let sub = self.object_of_dim(field, a);
        let quot = self.object_of_dim(field, n - a);
        let w = self.matrix(field, a, n - a);
        let upper = Mat::from_blocks(field, &[vec![sub.endo(), &w], vec![&Mat::zeros(field, n - a, a), quot.endo()]]);
        let c = self.invertible(field, n);
        let c_inv = c.inverse().expect("invertible");
        let incl = Mat::identity(field, a).vstack(&Mat::zeros(field, n - a, a));
        let proj = Mat::zeros(field, n - a, a).hstack(&Mat::identity(field, n - a));
        EndExtension {
            mid: &(&c * &upper) * &c_inv,
            f: &c * &incl,
            g: &proj * &c_inv,
            sub,
            quot,
        }
    }
}
