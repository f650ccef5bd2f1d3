//! The Tensor functor `− ⊗ (B, b)` and the HOM functor `HOM((A, a), −)`,
//! their adjunction bijections, naturality checks, and the unit-evaluation
//! isomorphism `η = ψ∘φ` for the plain functors.
//!
//! Coordinates: `X ⊗ B` is indexed `i·d + k` (`kron(x, b)`), and the HOM
//! object of `(X, x)` carries the canonical basis of `Hom((A, a), (X, x))`
//! returned by [`hom_basis`]. Induced maps are always written in those bases.

use serde::Serialize;

use crate::error::{NilError, Result};
use crate::hom::{coordinates, hom_basis, linear_map_matrix, shifted_jordan_basis};
use crate::jordan::{is_indecomposable, jordan_basis, jordan_type};
use crate::matrix::{Mat, Vector};
use crate::object::{compose, is_isomorphism, NilMorphism, NilObject};
use crate::scalar::Field;

/// An invertible `b` on `B = K^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorParam {
    b: Mat,
}

impl TensorParam {
    pub fn new(b: Mat) -> Result<TensorParam> {
        if !b.is_square() || b.rows() == 0 {
            return Err(NilError::NotSquare { rows: b.rows(), cols: b.cols(), dim: b.rows().max(1) });
        }
        if !b.is_invertible() {
            return Err(NilError::NotInvertible);
        }
        Ok(TensorParam { b })
    }

    pub fn identity(field: Field, d: usize) -> Result<TensorParam> {
        TensorParam::new(Mat::identity(field, d))
    }

    pub fn space_dim(&self) -> usize {
        self.b.rows()
    }

    pub fn b(&self) -> &Mat {
        &self.b
    }

    pub fn field(&self) -> Field {
        self.b.field()
    }
}

fn same_field(a: Field, b: Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(NilError::FieldMismatch(a, b))
    }
}

/// `(X ⊗ B, x ⊗ b)`.
pub fn tensor_obj(x: &NilObject, t: &TensorParam) -> Result<NilObject> {
    same_field(x.field(), t.field())?;
    // (x ⊗ b)^k = x^k ⊗ b^k, so nilpotency is inherited
    Ok(NilObject::new_unchecked(x.endo().kron(&t.b)))
}

/// `f ⊗ 1_B`.
pub fn tensor_mor(f: &NilMorphism, t: &TensorParam) -> Result<NilMorphism> {
    same_field(f.field(), t.field())?;
    let id = Mat::identity(t.field(), t.space_dim());
    NilMorphism::new(tensor_obj(f.src(), t)?, tensor_obj(f.dst(), t)?, f.mat().kron(&id))
}

/// `(Y ⊗ B, y ⊗ b⁻ᵀ)`: the object that the block-split (curried) form of a
/// map `X ⊗ (B, b) → Y` intertwines into.
fn curried_target(y: &NilObject, t: &TensorParam) -> Result<NilObject> {
    let b_inv_t = t.b.inverse().ok_or(NilError::NotInvertible)?.transpose();
    Ok(NilObject::new_unchecked(y.endo().kron(&b_inv_t)))
}

/// Isomorphism `(Y ⊗ B, y ⊗ b⁻ᵀ) → (Y ⊗ B, y ⊗ b)` through the common
/// Jordan form. Both sides are `d` copies of the Jordan type of `y`.
fn curried_conjugator(y: &NilObject, t: &TensorParam) -> Result<NilMorphism> {
    let from = jordan_basis(&curried_target(y, t)?);
    let to = jordan_basis(&tensor_obj(y, t)?);
    let back = is_isomorphism(&to).ok_or(NilError::NotInvertible)?;
    compose(&back, &from)
}

/// Splits `g: X ⊗ (B, b) → Y` into its `d` block components
/// `g_k = g∘(1 ⊗ e_k)`, restacks them as a map `X → Y ⊗ B`, and transports
/// the result into `Y ⊗ (B, b)`.
///
/// The block split is the whole bijection when `b = 1`; for other `b` the
/// restacked map intertwines with `y ⊗ b⁻ᵀ`, which is conjugated to
/// `y ⊗ b` on the `Y` side so that the family stays natural in `X`.
pub fn tensor_adjunction(g: &NilMorphism, x: &NilObject, t: &TensorParam) -> Result<NilMorphism> {
    let tx = tensor_obj(x, t)?;
    if g.src().dim() != tx.dim() {
        return Err(NilError::ShapeMismatch { got: g.mat().shape(), expected: (g.dst().dim(), tx.dim()) });
    }
    if g.src() != &tx {
        return Err(NilError::NotComposable);
    }
    let y = g.dst();
    let (n, q, d) = (x.dim(), y.dim(), t.space_dim());
    let stacked = Mat::from_fn(t.field(), q * d, n, |row, i| {
        let (j, k) = (row / d, row % d);
        g.mat().get(j, i * d + k).clone()
    });
    let curried = NilMorphism::new(x.clone(), curried_target(y, t)?, stacked)?;
    compose(&curried_conjugator(y, t)?, &curried)
}

/// Inverse of [`tensor_adjunction`]: `k: X → Y ⊗ (B, b)` to `X ⊗ (B, b) → Y`.
pub fn tensor_adjunction_inverse(k: &NilMorphism, y: &NilObject, t: &TensorParam) -> Result<NilMorphism> {
    let ty = tensor_obj(y, t)?;
    if k.dst() != &ty {
        return Err(NilError::NotComposable);
    }
    let back = is_isomorphism(&curried_conjugator(y, t)?).ok_or(NilError::NotInvertible)?;
    let curried = compose(&back, k)?;
    let x = k.src();
    let (n, q, d) = (x.dim(), y.dim(), t.space_dim());
    let g = Mat::from_fn(t.field(), q, n * d, |j, col| {
        let (i, kk) = (col / d, col % d);
        curried.mat().get(j * d + kk, i).clone()
    });
    NilMorphism::new(tensor_obj(x, t)?, y.clone(), g)
}

/// The fixed object `(A, a)` of a HOM functor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFunctorParam {
    a: NilObject,
}

impl HomFunctorParam {
    pub fn new(a: NilObject) -> HomFunctorParam {
        HomFunctorParam { a }
    }

    pub fn object(&self) -> &NilObject {
        &self.a
    }

    /// Nilpotency index `s` of `a`.
    pub fn s(&self) -> usize {
        self.a.nilindex()
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }
}

/// `HOM((A, a), (X, x))`: the Hom space with its chosen basis and the
/// endomorphism `θ_x` written in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomObject {
    pub object: NilObject,
    pub basis: Vec<NilMorphism>,
    pub source: NilObject,
    pub target: NilObject,
}

impl HomObject {
    /// The morphism `A → X` with the given coordinates.
    pub fn element(&self, coords: &[crate::Scalar]) -> Result<NilMorphism> {
        NilMorphism::linear_combination(&self.source, &self.target, coords, &self.basis)
    }

    pub fn coordinates_of(&self, f: &NilMorphism) -> Result<Vector> {
        coordinates(&self.basis, f)?
            .ok_or_else(|| NilError::DimensionMismatch("map is not in the hom space".into()))
    }
}

/// `θ_x(f) = x∘f`, which equals `f∘a` for every intertwiner `f`.
fn theta_matrix(basis: &[NilMorphism], x: &NilObject, field: Field) -> Result<Mat> {
    linear_map_matrix(
        basis,
        basis,
        |f| Ok(NilMorphism::new_unchecked(f.src().clone(), f.dst().clone(), x.endo() * f.mat())),
        field,
    )
}

pub fn homf_obj(x: &NilObject, h: &HomFunctorParam) -> Result<HomObject> {
    let basis = hom_basis(&h.a, x)?;
    let theta = theta_matrix(&basis, x, x.field())?;
    let object = NilObject::new(basis.len(), theta)?;
    Ok(HomObject { object, basis, source: h.a.clone(), target: x.clone() })
}

/// `Hom((A, a), f)`: `g ↦ f∘g` written in the canonical bases.
pub fn homf_mor(f: &NilMorphism, h: &HomFunctorParam) -> Result<NilMorphism> {
    let from = homf_obj(f.src(), h)?;
    let to = homf_obj(f.dst(), h)?;
    let m = linear_map_matrix(&from.basis, &to.basis, |g| compose(f, g), f.field())?;
    NilMorphism::new(from.object, to.object, m)
}

/// `HOM(J_p, J_q)` written in the chain basis `f_i` (so `θ f_i = f_{i+1}`),
/// and the isomorphism onto `(K^m, J_m)`, `m = min(p, q)`.
///
/// With `J_m e_{i+1} = e_i` the chain runs downwards, so the isomorphism
/// sends `f_i` to `e_{m+1−i}`.
pub fn jordan_hom_object(field: Field, p: usize, q: usize) -> Result<(HomObject, NilMorphism)> {
    let basis = shifted_jordan_basis(field, p, q)?;
    let target = NilObject::jordan_block(field, q)?;
    let source = NilObject::jordan_block(field, p)?;
    let m = basis.len();
    let theta = theta_matrix(&basis, &target, field)?;
    let object = NilObject::new(m, theta)?;
    let reverse = Mat::from_fn(field, m, m, |i, j| if i + j + 1 == m { field.one() } else { field.zero() });
    let iso = NilMorphism::new(object.clone(), NilObject::jordan_block(field, m)?, reverse)?;
    Ok((HomObject { object, basis, source, target }, iso))
}

/// First standard basis vector outside `ker a^{s−1}`, provided its orbit
/// spans `A`.
pub fn cyclic_generator(a: &NilObject) -> Result<Vector> {
    let s = a.nilindex();
    if s == 0 || s != a.dim() {
        return Err(NilError::DegenerateGenerator);
    }
    let top = a.endo().pow((s - 1) as u32);
    let field = a.field();
    (0..a.dim())
        .find(|&i| (0..a.dim()).any(|r| !top.get(r, i).is_zero()))
        .map(|i| (0..a.dim()).map(|r| if r == i { field.one() } else { field.zero() }).collect())
        .ok_or(NilError::DegenerateGenerator)
}

/// For `g: X → HOM((A, a), Y)` returns `g̃: HOM((A, a), X) → Y`,
/// `g̃(ρ) = h(ρ(β))` where `h(α) = g(α)(β)` and `β` is the cyclic generator
/// of `A`. All of `A`, `X`, `Y` must be single Jordan blocks.
pub fn hom_adjunction(g: &NilMorphism, hom_y: &HomObject, h: &HomFunctorParam) -> Result<NilMorphism> {
    for (name, obj) in [("A", &h.a), ("X", g.src()), ("Y", &hom_y.target)] {
        if !is_indecomposable(obj) {
            return Err(NilError::NotIndecomposable(format!("{name} has Jordan type {}", jordan_type(obj))));
        }
    }
    if g.dst() != &hom_y.object || hom_y.source != h.a {
        return Err(NilError::NotComposable);
    }
    let beta = cyclic_generator(&h.a)?;
    let field = h.field();
    let y = &hom_y.target;
    let x = g.src();
    let eval_y: Vec<Vector> = hom_y.basis.iter().map(|b| b.mat().apply(&beta)).collect();
    let h_mat = &Mat::from_columns(field, y.dim(), &eval_y) * g.mat();
    let hom_x = homf_obj(x, h)?;
    let eval_x: Vec<Vector> = hom_x.basis.iter().map(|b| b.mat().apply(&beta)).collect();
    let tilde = &h_mat * &Mat::from_columns(field, x.dim(), &eval_x);
    NilMorphism::new(hom_x.object, y.clone(), tilde)
}

/// A self-adjoint functor together with its bijections
/// `φ_{X,Y}: D(X, Y) → C(X, Y)` between two Hom spaces, and the actions of
/// a morphism `f: X' → X` on both sides used for naturality in `X`.
pub trait SelfAdjunction {
    fn name(&self) -> String;
    fn field(&self) -> Field;
    fn apply_obj(&self, x: &NilObject) -> Result<NilObject>;
    fn apply_mor(&self, f: &NilMorphism) -> Result<NilMorphism>;
    fn domain_basis(&self, x: &NilObject, y: &NilObject) -> Result<Vec<NilMorphism>>;
    fn codomain_basis(&self, x: &NilObject, y: &NilObject) -> Result<Vec<NilMorphism>>;
    fn phi(&self, g: &NilMorphism, x: &NilObject, y: &NilObject) -> Result<NilMorphism>;
    /// `D(X, Y) → D(X', Y)` induced by `f: X' → X`.
    fn pull_domain(&self, g: &NilMorphism, f: &NilMorphism) -> Result<NilMorphism>;
    /// `C(X, Y) → C(X', Y)` induced by `f: X' → X`.
    fn pull_codomain(&self, k: &NilMorphism, f: &NilMorphism) -> Result<NilMorphism>;
}

/// `Hom(X ⊗ (B, b), Y) → Hom(X, Y ⊗ (B, b))`.
pub struct TensorAdjunction {
    pub param: TensorParam,
}

impl SelfAdjunction for TensorAdjunction {
    fn name(&self) -> String {
        format!("tensor(d={})", self.param.space_dim())
    }

    fn field(&self) -> Field {
        self.param.field()
    }

    fn apply_obj(&self, x: &NilObject) -> Result<NilObject> {
        tensor_obj(x, &self.param)
    }

    fn apply_mor(&self, f: &NilMorphism) -> Result<NilMorphism> {
        tensor_mor(f, &self.param)
    }

    fn domain_basis(&self, x: &NilObject, y: &NilObject) -> Result<Vec<NilMorphism>> {
        hom_basis(&tensor_obj(x, &self.param)?, y)
    }

    fn codomain_basis(&self, x: &NilObject, y: &NilObject) -> Result<Vec<NilMorphism>> {
        hom_basis(x, &tensor_obj(y, &self.param)?)
    }

    fn phi(&self, g: &NilMorphism, x: &NilObject, _y: &NilObject) -> Result<NilMorphism> {
        tensor_adjunction(g, x, &self.param)
    }

    fn pull_domain(&self, g: &NilMorphism, f: &NilMorphism) -> Result<NilMorphism> {
        compose(g, &tensor_mor(f, &self.param)?)
    }

    fn pull_codomain(&self, k: &NilMorphism, f: &NilMorphism) -> Result<NilMorphism> {
        compose(k, f)
    }
}

/// `Hom(X, HOM(A, Y)) → Hom(HOM(A, X), Y)` on single Jordan blocks.
pub struct HomAdjunction {
    pub param: HomFunctorParam,
}

impl SelfAdjunction for HomAdjunction {
    fn name(&self) -> String {
        format!("hom(A={})", jordan_type(&self.param.a))
    }

    fn field(&self) -> Field {
        self.param.field()
    }

    fn apply_obj(&self, x: &NilObject) -> Result<NilObject> {
        Ok(homf_obj(x, &self.param)?.object)
    }

    fn apply_mor(&self, f: &NilMorphism) -> Result<NilMorphism> {
        homf_mor(f, &self.param)
    }

    fn domain_basis(&self, x: &NilObject, y: &NilObject) -> Result<Vec<NilMorphism>> {
        hom_basis(x, &homf_obj(y, &self.param)?.object)
    }

    fn codomain_basis(&self, x: &NilObject, y: &NilObject) -> Result<Vec<NilMorphism>> {
        hom_basis(&homf_obj(x, &self.param)?.object, y)
    }

    fn phi(&self, g: &NilMorphism, _x: &NilObject, y: &NilObject) -> Result<NilMorphism> {
        hom_adjunction(g, &homf_obj(y, &self.param)?, &self.param)
    }

    fn pull_domain(&self, g: &NilMorphism, f: &NilMorphism) -> Result<NilMorphism> {
        compose(g, f)
    }

    fn pull_codomain(&self, k: &NilMorphism, f: &NilMorphism) -> Result<NilMorphism> {
        compose(k, &homf_mor(f, &self.param)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectivityReport {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub bijective: bool,
}

/// Matrix of `φ_{X,Y}` in the canonical bases, and whether it is invertible.
pub fn check_bijective(adj: &dyn SelfAdjunction, x: &NilObject, y: &NilObject) -> Result<BijectivityReport> {
    let dom = adj.domain_basis(x, y)?;
    let cod = adj.codomain_basis(x, y)?;
    let m = linear_map_matrix(&dom, &cod, |g| adj.phi(g, x, y), adj.field())?;
    let rank = m.rank();
    Ok(BijectivityReport {
        domain_dim: dom.len(),
        codomain_dim: cod.len(),
        rank,
        bijective: dom.len() == cod.len() && rank == dom.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityFailure {
    pub probe: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NaturalityReport {
    pub functor: String,
    pub cases: usize,
    pub failures: Vec<NaturalityFailure>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each probe `f: X' → X` compares the two paths
/// `D(X, Y) → C(X', Y)`, `g ↦ pull(φ_{X,Y}(g), f)` and
/// `g ↦ φ_{X',Y}(pull(g, f))`, on every basis element of `D(X, Y)`.
pub fn check_naturality(adj: &dyn SelfAdjunction, y: &NilObject, probes: &[NilMorphism]) -> NaturalityReport {
    let failures = probes
        .iter()
        .enumerate()
        .filter_map(|(i, f)| match naturality_square(adj, y, f) {
            Ok(None) => None,
            Ok(Some(reason)) => Some(NaturalityFailure { probe: i, reason }),
            Err(e) => Some(NaturalityFailure { probe: i, reason: e.to_string() }),
        })
        .collect();
    NaturalityReport { functor: adj.name(), cases: probes.len(), failures }
}

fn naturality_square(adj: &dyn SelfAdjunction, y: &NilObject, f: &NilMorphism) -> Result<Option<String>> {
    let (x_prime, x) = (f.src(), f.dst());
    for (k, g) in adj.domain_basis(x, y)?.iter().enumerate() {
        let top = adj.pull_codomain(&adj.phi(g, x, y)?, f)?;
        let bottom = adj.phi(&adj.pull_domain(g, f)?, x_prime, y)?;
        if top.mat() != bottom.mat() {
            return Ok(Some(format!("square differs on basis element {k}")));
        }
    }
    Ok(None)
}

/// The built-in functors on plain vector spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PlainFunctor {
    /// `− ⊗ K^d`
    TensorBy(usize),
    /// `Hom(K^m, −)`
    HomFrom(usize),
}

impl PlainFunctor {
    /// `dim F(K^n)`.
    pub fn dim_of(self, n: usize) -> usize {
        match self {
            PlainFunctor::TensorBy(d) => n * d,
            PlainFunctor::HomFrom(m) => n * m,
        }
    }

    /// Matrix of `F(f)` in the coordinates of `F(K^a)` and `F(K^b)`.
    pub fn on_map(self, f: &Mat) -> Mat {
        match self {
            PlainFunctor::TensorBy(d) => f.kron(&Mat::identity(f.field(), d)),
            PlainFunctor::HomFrom(m) => Mat::identity(f.field(), m).kron(f),
        }
    }

    pub fn label(self) -> String {
        match self {
            PlainFunctor::TensorBy(d) => format!("-⊗K^{d}"),
            PlainFunctor::HomFrom(m) => format!("Hom(K^{m},-)"),
        }
    }
}

/// Adjunction `Hom(Hom(K^m, X), Y) → Hom(X, Hom(K^m, Y))` for plain spaces,
/// `φ(g)(ξ)(e_k) = g(ξ·e_kᵀ)`. `Hom(K^m, X)` uses column-stacked coordinates.
pub fn plain_hom_adjunction(g: &Mat, m: usize, x_dim: usize) -> Mat {
    let y_dim = g.rows();
    assert_eq!(g.cols(), m * x_dim, "g must act on Hom(K^m, X)");
    Mat::from_fn(g.field(), m * y_dim, x_dim, |row, i| {
        let (k, j) = (row / y_dim, row % y_dim);
        g.get(j, k * x_dim + i).clone()
    })
}

/// `η_A: Hom(F(K), A) → F(A)`, `η = ψ∘φ_{K,A}` with `ψ(g) = g(1)`, as a
/// matrix acting on column-stacked coordinates of `Hom(F(K), A)`.
pub fn eta_matrix(field: Field, functor: PlainFunctor, a_dim: usize) -> Result<Mat> {
    let fk = functor.dim_of(1);
    let n = a_dim * fk;
    let mut columns = Vec::with_capacity(n);
    for idx in 0..n {
        let mut unit = vec![field.zero(); n];
        unit[idx] = field.one();
        let g = Mat::unvectorize(field, a_dim, fk, &unit);
        let phi_g = match functor {
            PlainFunctor::TensorBy(d) => {
                let t = TensorParam::identity(field, d)?;
                let k = NilObject::plain(field, 1);
                let g = NilMorphism::new(tensor_obj(&k, &t)?, NilObject::plain(field, a_dim), g)?;
                tensor_adjunction(&g, &k, &t)?.mat().clone()
            }
            PlainFunctor::HomFrom(m) => plain_hom_adjunction(&g, m, 1),
        };
        // ψ: evaluate the map K → F(A) at 1
        columns.push(phi_g.column(0));
    }
    Ok(Mat::from_columns(field, functor.dim_of(a_dim), &columns))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaObjectCase {
    pub dim: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaReport {
    pub functor: String,
    pub objects: Vec<EtaObjectCase>,
    pub naturality_cases: usize,
    /// Indices of probe maps whose square failed.
    pub naturality_failures: Vec<usize>,
}

impl EtaReport {
    pub fn passed(&self) -> bool {
        self.objects.iter().all(|c| c.invertible) && self.naturality_failures.is_empty()
    }
}

/// Checks that `η_A` is invertible for every listed dimension and that
/// `η_{A'}∘Hom(F(K), f) = F(f)∘η_A` for every probe `f: K^a → K^{a'}`.
pub fn eta_plain(field: Field, functor: PlainFunctor, dims: &[usize], probes: &[Mat]) -> Result<EtaReport> {
    let mut objects = Vec::with_capacity(dims.len());
    for &dim in dims {
        let eta = eta_matrix(field, functor, dim)?;
        objects.push(EtaObjectCase {
            dim,
            domain_dim: eta.cols(),
            codomain_dim: eta.rows(),
            invertible: eta.is_invertible(),
        });
    }
    let fk = functor.dim_of(1);
    let mut naturality_failures = Vec::new();
    for (i, f) in probes.iter().enumerate() {
        let (a2, a1) = f.shape();
        let delta = Mat::identity(field, fk).kron(f);
        let left = &eta_matrix(field, functor, a2)? * &delta;
        let right = &functor.on_map(f) * &eta_matrix(field, functor, a1)?;
        if left != right {
            naturality_failures.push(i);
        }
    }
    Ok(EtaReport { functor: functor.label(), objects, naturality_cases: probes.len(), naturality_failures })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivergenceRow {
    pub dim_x: usize,
    pub tensor_dim: usize,
    /// `Σ_i min(dim X, p_i)` from the Jordan type of `A`.
    pub hom_dim_formula: usize,
    /// Dimension of the computed HOM object.
    pub hom_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivergenceReport {
    pub a_type: Vec<usize>,
    pub d: usize,
    pub rows: Vec<DivergenceRow>,
    /// First `dim X` at which `dim(X ⊗ B) − dim HOM(A, X)` changes.
    pub divergence_at: Option<usize>,
    /// First `dim X` at which `dim HOM(A, X) ≠ dim X · dim HOM(A, K)`.
    pub hom_nonlinear_at: Option<usize>,
}

impl DivergenceReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("A = {:?}, d = {}\n", self.a_type, self.d);
        out.push_str(&format!("{:>6} {:>10} {:>10}\n", "dim X", "dim X⊗B", "dim HOM"));
        for r in &self.rows {
            out.push_str(&format!("{:>6} {:>10} {:>10}\n", r.dim_x, r.tensor_dim, r.hom_dim));
        }
        let show = |v: Option<usize>| v.map_or("none".to_string(), |n| n.to_string());
        out.push_str(&format!("divergence at dim X = {}\n", show(self.divergence_at)));
        out.push_str(&format!("HOM nonlinear at dim X = {}\n", show(self.hom_nonlinear_at)));
        out
    }
}

/// Tabulates both dimension functions over indecomposable `X = (K^n, J_n)`.
pub fn divergence_report(h: &HomFunctorParam, t: &TensorParam, max_dim: usize) -> Result<DivergenceReport> {
    same_field(h.field(), t.field())?;
    let a_type = jordan_type(&h.a);
    let mut rows = Vec::with_capacity(max_dim);
    for n in 1..=max_dim {
        let x = NilObject::jordan_block(h.field(), n)?;
        rows.push(DivergenceRow {
            dim_x: n,
            tensor_dim: tensor_obj(&x, t)?.dim(),
            hom_dim_formula: a_type.parts().iter().map(|&p| p.min(n)).sum(),
            hom_dim: homf_obj(&x, h)?.object.dim(),
        });
    }
    let gap = |r: &DivergenceRow| r.tensor_dim as i64 - r.hom_dim as i64;
    let divergence_at = rows.windows(2).find(|w| gap(&w[0]) != gap(&w[1])).map(|w| w[1].dim_x);
    let hom_nonlinear_at = rows
        .first()
        .and_then(|r1| rows.iter().find(|r| r.hom_dim != r.dim_x * r1.hom_dim))
        .map(|r| r.dim_x);
    Ok(DivergenceReport { a_type: a_type.parts().to_vec(), d: t.space_dim(), rows, divergence_at, hom_nonlinear_at })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::object::JordanType;

    const Q: Field = Field::Rationals;

    fn block(p: usize) -> NilObject {
        NilObject::jordan_block(Q, p).unwrap()
    }

    fn jt(v: &[usize]) -> JordanType {
        JordanType::new(v.to_vec()).unwrap()
    }

    fn swap() -> TensorParam {
        TensorParam::new(Mat::from_i64(Q, 2, 2, &[0, 1, 1, 0])).unwrap()
    }

    #[test]
    fn tensor_param_validation() {
        assert_eq!(TensorParam::new(Mat::zeros(Q, 2, 2)), Err(NilError::NotInvertible));
        assert!(TensorParam::new(Mat::zeros(Q, 2, 3)).is_err());
    }

    #[test]
    fn tensor_object_examples() {
        let i2 = TensorParam::identity(Q, 2).unwrap();
        let tx = tensor_obj(&block(2), &i2).unwrap();
        assert_eq!(tx.dim(), 4);
        assert_eq!(jordan_type(&tx), jt(&[2, 2]));
        assert_eq!(jordan_type(&tensor_obj(&block(2), &swap()).unwrap()), jt(&[2, 2]));
        assert_eq!(tensor_obj(&NilObject::zero(Q), &swap()).unwrap(), NilObject::zero(Q));
    }

    #[test]
    fn tensor_morphisms() {
        let t = swap();
        let x = block(3);
        let id = tensor_mor(&NilMorphism::identity(&x), &t).unwrap();
        assert_eq!(id, NilMorphism::identity(&tensor_obj(&x, &t).unwrap()));
        let f1 = shifted_jordan_basis(Q, 2, 3).unwrap().remove(0);
        assert!(tensor_mor(&f1, &t).is_ok());
    }

    #[test]
    fn tensor_adjunction_round_trip() {
        let t = TensorParam::new(Mat::from_i64(Q, 2, 2, &[2, 1, 1, 1])).unwrap();
        let x = block(2);
        let y = block(3);
        let tx = tensor_obj(&x, &t).unwrap();
        for g in hom_basis(&tx, &y).unwrap() {
            let k = tensor_adjunction(&g, &x, &t).unwrap();
            assert_eq!(k.dst(), &tensor_obj(&y, &t).unwrap());
            assert_eq!(tensor_adjunction_inverse(&k, &y, &t).unwrap(), g);
        }
    }

    #[test]
    fn tensor_adjunction_trivial_d1() {
        let t = TensorParam::identity(Q, 1).unwrap();
        let x = block(3);
        let y = block(2);
        for g in hom_basis(&tensor_obj(&x, &t).unwrap(), &y).unwrap() {
            assert_eq!(tensor_adjunction(&g, &x, &t).unwrap().mat(), g.mat());
        }
    }

    #[test]
    fn tensor_adjunction_rejects_wrong_source() {
        let t = swap();
        let g = NilMorphism::identity(&block(4));
        assert!(matches!(tensor_adjunction(&g, &block(3), &t), Err(NilError::ShapeMismatch { .. })));
    }

    #[test]
    fn homf_examples() {
        let h = HomFunctorParam::new(block(2));
        let hx = homf_obj(&block(3), &h).unwrap();
        assert_eq!(jordan_type(&hx.object), jt(&[2]));
        let k = HomFunctorParam::new(NilObject::plain(Q, 1));
        let x = NilObject::from_jordan_type(Q, &jt(&[3, 2, 2]));
        assert_eq!(homf_obj(&x, &k).unwrap().object.dim(), 3);
        assert_eq!(homf_obj(&NilObject::zero(Q), &h).unwrap().object, NilObject::zero(Q));
    }

    #[test]
    fn homf_morphisms() {
        let h = HomFunctorParam::new(block(2));
        let x = block(3);
        let id = homf_mor(&NilMorphism::identity(&x), &h).unwrap();
        assert_eq!(id.mat(), &Mat::identity(Q, 2));
        let z = homf_mor(&NilMorphism::zero(&x, &block(2)), &h).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn jordan_hom_object_examples() {
        for (p, q) in [(3, 2), (1, 1), (4, 4)] {
            let (hom, iso) = jordan_hom_object(Q, p, q).unwrap();
            let m = p.min(q);
            assert_eq!(iso.dst(), &NilObject::jordan_block(Q, m).unwrap());
            assert_eq!(iso.mat() * hom.object.endo(), iso.dst().endo() * iso.mat());
            assert!(iso.mat().is_invertible());
        }
    }

    #[test]
    fn cyclic_generator_of_block() {
        let beta = cyclic_generator(&block(3)).unwrap();
        assert_eq!(beta, vec![Q.zero(), Q.zero(), Q.one()]);
        assert_eq!(cyclic_generator(&NilObject::plain(Q, 2)), Err(NilError::DegenerateGenerator));
    }

    #[test]
    fn hom_adjunction_rejects_decomposables() {
        let h = HomFunctorParam::new(block(2));
        let x = NilObject::plain(Q, 2);
        let y = block(2);
        let hy = homf_obj(&y, &h).unwrap();
        let g = NilMorphism::zero(&x, &hy.object);
        assert!(matches!(hom_adjunction(&g, &hy, &h), Err(NilError::NotIndecomposable(_))));
    }

    #[test]
    fn hom_adjunction_all_ones() {
        let k = NilObject::plain(Q, 1);
        let adj = HomAdjunction { param: HomFunctorParam::new(k.clone()) };
        let rep = check_bijective(&adj, &k, &k).unwrap();
        assert_eq!((rep.domain_dim, rep.codomain_dim, rep.rank), (1, 1, 1));
    }

    #[test]
    fn hom_adjunction_r2_p3_q2() {
        let adj = HomAdjunction { param: HomFunctorParam::new(block(2)) };
        let rep = check_bijective(&adj, &block(3), &block(2)).unwrap();
        assert_eq!(rep.domain_dim, 2);
        assert_eq!(rep.codomain_dim, 2);
    }

    #[test]
    fn hom_adjunction_injectivity_witness_r2_p2_q2() {
        // for g ≠ 0 pick u with g(u) ≠ 0 and ρ(a^{i−1}β) = x^{i−1}u; then φ(g)(ρ) ≠ 0
        let h = HomFunctorParam::new(block(2));
        let x = block(2);
        let y = block(2);
        let hy = homf_obj(&y, &h).unwrap();
        let beta = cyclic_generator(h.object()).unwrap();
        for g in hom_basis(&x, &hy.object).unwrap() {
            let tilde = hom_adjunction(&g, &hy, &h).unwrap();
            let u_idx = (0..x.dim()).find(|&j| g.mat().column(j).iter().any(|s| !s.is_zero())).unwrap();
            let u: Vector = (0..2).map(|r| if r == u_idx { Q.one() } else { Q.zero() }).collect();
            // ρ sends β ↦ u and aβ ↦ xu
            let a_beta = h.object().endo().apply(&beta);
            let src = Mat::from_columns(Q, 2, &[beta.clone(), a_beta]);
            let dst = Mat::from_columns(Q, 2, &[u.clone(), x.endo().apply(&u)]);
            let rho = NilMorphism::new(h.object().clone(), x.clone(), &dst * &src.inverse().unwrap()).unwrap();
            let hx = homf_obj(&x, &h).unwrap();
            let coords = hx.coordinates_of(&rho).unwrap();
            assert!(tilde.mat().apply(&coords).iter().any(|s| !s.is_zero()));
        }
    }

    #[test]
    fn plain_hom_adjunction_is_natural_and_bijective() {
        let mut rng = crate::random::ProbeRng::new(5);
        let (m, xd, yd) = (2, 3, 2);
        // naturality in X: φ(g∘Hom(K^m, f)) = φ(g)∘f
        let g = rng.matrix(Q, yd, m * xd);
        let f = rng.matrix(Q, xd, 2);
        let lhs = plain_hom_adjunction(&(&g * &Mat::identity(Q, m).kron(&f)), m, 2);
        let rhs = &plain_hom_adjunction(&g, m, xd) * &f;
        assert_eq!(lhs, rhs);
        let n = yd * m * xd;
        let cols: Vec<Vector> = (0..n)
            .map(|i| {
                let mut e = vec![Q.zero(); n];
                e[i] = Q.one();
                plain_hom_adjunction(&Mat::unvectorize(Q, yd, m * xd, &e), m, xd).vectorize()
            })
            .collect();
        assert!(Mat::from_columns(Q, n, &cols).is_invertible());
    }

    #[test]
    fn eta_examples() {
        let e = eta_matrix(Q, PlainFunctor::TensorBy(1), 3).unwrap();
        assert_eq!(e, Mat::identity(Q, 3));
        let e = eta_matrix(Q, PlainFunctor::TensorBy(3), 2).unwrap();
        assert_eq!(e.shape(), (6, 6));
        assert!(e.is_invertible());
        let mut rng = crate::random::ProbeRng::new(11);
        let probes: Vec<Mat> = (0..10).map(|_| {
            let a = rng.usize_in(1, 3);
            let b = rng.usize_in(1, 3);
            rng.matrix(Q, b, a)
        }).collect();
        let rep = eta_plain(Q, PlainFunctor::HomFrom(2), &[2], &probes).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn divergence_examples() {
        let h = HomFunctorParam::new(block(2));
        let rep = divergence_report(&h, &TensorParam::identity(Q, 2).unwrap(), 4).unwrap();
        let row3 = &rep.rows[2];
        assert_eq!((row3.tensor_dim, row3.hom_dim), (6, 2));
        assert_eq!(rep.divergence_at, Some(2));

        let k = HomFunctorParam::new(NilObject::plain(Q, 1));
        let rep = divergence_report(&k, &TensorParam::identity(Q, 1).unwrap(), 4).unwrap();
        assert_eq!(rep.divergence_at, Some(2));
        assert_eq!(rep.rows[0].tensor_dim, rep.rows[0].hom_dim);

        let kk = HomFunctorParam::new(NilObject::plain(Q, 2));
        let rep = divergence_report(&kk, &TensorParam::identity(Q, 2).unwrap(), 3).unwrap();
        assert_eq!(rep.rows[0].tensor_dim, rep.rows[0].hom_dim);
        assert_eq!(rep.divergence_at, Some(2));
        for r in &rep.rows {
            assert_eq!(r.hom_dim, r.hom_dim_formula);
        }
    }
}
