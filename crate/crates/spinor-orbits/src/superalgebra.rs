//! The (2,0) supertranslation structure: the R-symmetry space W, supercharges
//! Q: W^∨ → S₊, the odd bracket, ranks, the image of [Q,−], and the actions
//! of the even symmetry algebra and its parabolic group generators.

use std::fmt;

use crate::exterior::{
    contract, even_masks, mask_degree, mask_indices, wedge, Form, Mask, Polyvector,
};
use crate::linalg::{Matrix, RowSpan};
use crate::scalar::Scalar;
use crate::spinor::{gamma_with, Orientation, Spinor, VectorV};

/// Degree-2 monomial masks in canonical order — the coordinate order used
/// for X₊ and X₋ throughout.
pub fn two_masks() -> &'static [Mask] {
    &even_masks()[1..11]
}

// ---------------------------------------------------------------------------
// W and supercharges
// ---------------------------------------------------------------------------

/// Vector of W = ℂ², with (w,w')_W = w1·w1' + w2·w2' (the basis is chosen so
/// the form is the identity). Isotropic vectors lie on span(1,i) ∪ span(1,−i).
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct WVector(pub Scalar, pub Scalar);

impl WVector {
    pub fn new(w1: Scalar, w2: Scalar) -> Self {
        WVector(w1, w2)
    }

    pub fn pairing(&self, other: &WVector) -> Scalar {
        &self.0 * &other.0 + &self.1 * &other.1
    }

    pub fn is_isotropic(&self) -> bool {
        self.pairing(self).is_zero()
    }
}

/// A supercharge Q ∈ S₊ ⊗ W viewed as a map W^∨ → S₊ and stored as its two
/// image columns; ψ⊗(w1,w2) has columns (w1·ψ, w2·ψ).
#[derive(Clone, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct Supercharge {
    columns: [Spinor; 2],
}

impl Supercharge {
    pub fn zero() -> Self {
        Supercharge::default()
    }

    pub fn new(c1: Spinor, c2: Spinor) -> Self {
        Supercharge { columns: [c1, c2] }
    }

    /// ψ ⊗ w.
    pub fn simple(psi: &Spinor, w: &WVector) -> Self {
        Supercharge {
            columns: [psi.scale(&w.0), psi.scale(&w.1)],
        }
    }

    pub fn columns(&self) -> &[Spinor; 2] {
        &self.columns
    }

    pub fn column(&self, u: usize) -> &Spinor {
        &self.columns[u]
    }

    pub fn is_zero(&self) -> bool {
        self.columns[0].is_zero() && self.columns[1].is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Supercharge {
            columns: [self.columns[0].scale(c), self.columns[1].scale(c)],
        }
    }

    /// 32 coordinates: column 1 then column 2, each in canonical monomial order.
    pub fn coords(&self) -> Vec<Scalar> {
        let mut v = self.columns[0].coords();
        v.extend(self.columns[1].coords());
        v
    }

    pub fn from_coords(coords: &[Scalar]) -> Self {
        assert_eq!(coords.len(), 32, "supercharge needs 32 coordinates");
        Supercharge {
            columns: [
                Spinor::from_coords(&coords[..16]),
                Spinor::from_coords(&coords[16..]),
            ],
        }
    }

    /// Column rank over ℚ(i) together with a canonical basis of S_Q.
    pub fn rank_and_image(&self) -> (usize, Vec<Spinor>) {
        let mut span = RowSpan::new(16);
        for col in &self.columns {
            span.insert(&col.coords());
        }
        let basis: Vec<Spinor> = span.basis().iter().map(|v| Spinor::from_coords(v)).collect();
        (basis.len(), basis)
    }

    /// Q = ψ⊗w when the rank is exactly 1, None otherwise.
    pub fn rank_one_decomposition(&self) -> Option<(Spinor, WVector)> {
        if self.rank_and_image().0 != 1 {
            return None;
        }
        let c1 = &self.columns[0];
        let c2 = &self.columns[1];
        if c1.is_zero() {
            return Some((c2.clone(), WVector::new(Scalar::zero(), Scalar::one())));
        }
        // c2 = ratio·c1: read the ratio off the first nonzero coordinate
        let coords1 = c1.coords();
        let lead = coords1.iter().position(|c| !c.is_zero()).unwrap();
        let ratio = &c2.coords()[lead] / &coords1[lead];
        Some((c1.clone(), WVector::new(Scalar::one(), ratio)))
    }
}

impl std::ops::Add<&Supercharge> for &Supercharge {
    type Output = Supercharge;
    fn add(self, rhs: &Supercharge) -> Supercharge {
        Supercharge {
            columns: [
                &self.columns[0] + &rhs.columns[0],
                &self.columns[1] + &rhs.columns[1],
            ],
        }
    }
}

impl std::ops::Sub<&Supercharge> for &Supercharge {
    type Output = Supercharge;
    fn sub(self, rhs: &Supercharge) -> Supercharge {
        Supercharge {
            columns: [
                &self.columns[0] - &rhs.columns[0],
                &self.columns[1] - &rhs.columns[1],
            ],
        }
    }
}

impl fmt::Display for Supercharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) ⊗ w1 + ({}) ⊗ w2", self.columns[0], self.columns[1])
    }
}

impl fmt::Debug for Supercharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// The odd bracket
// ---------------------------------------------------------------------------

/// [Q, Q'] = (γ ⊗ (−,−)_W) ∈ V; in column form γ(c1,c1') + γ(c2,c2').
pub fn bracket_with(q: &Supercharge, qp: &Supercharge, orientation: Orientation) -> VectorV {
    let g1 = gamma_with(q.column(0), qp.column(0), orientation);
    let g2 = gamma_with(q.column(1), qp.column(1), orientation);
    &g1 + &g2
}

pub fn bracket(q: &Supercharge, qp: &Supercharge) -> VectorV {
    bracket_with(q, qp, Orientation::Calibrated)
}

pub fn is_square_zero(q: &Supercharge) -> bool {
    bracket(q, q).is_zero()
}

/// The 10×32 matrix of χ⊗u ↦ [Q, χ⊗u] over the monomial basis of S₊⊗W.
pub fn translations_matrix_with(q: &Supercharge, orientation: Orientation) -> Matrix {
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(32);
    for u in 0..2 {
        for &m in even_masks() {
            let mut basis_q = Supercharge::zero();
            basis_q.columns[u] = Spinor::monomial(m);
            cols.push(bracket_with(q, &basis_q, orientation).coords().to_vec());
        }
    }
    Matrix::from_columns(cols)
}

/// Dimension and canonical basis of Im([Q,−]) ⊆ V — the translations that
/// survive in the Q-twisted theory pair with this image.
pub fn translations_image_with(
    q: &Supercharge,
    orientation: Orientation,
) -> (usize, Vec<VectorV>) {
    let m = translations_matrix_with(q, orientation);
    let mut span = RowSpan::new(10);
    for c in 0..m.cols() {
        span.insert(&m.column(c));
    }
    let basis: Vec<VectorV> = span.basis().iter().map(|v| VectorV::from_coords(v.clone())).collect();
    (basis.len(), basis)
}

pub fn translations_image(q: &Supercharge) -> (usize, Vec<VectorV>) {
    translations_image_with(q, Orientation::Calibrated)
}

// ---------------------------------------------------------------------------
// The even symmetry algebra
// ---------------------------------------------------------------------------

/// Element of 𝔰𝔬(V) ⊕ 𝔰𝔬(W) ⊕ ℂ·s in parabolic coordinates: A ∈ 𝔤𝔩(L),
/// X₊ ∈ Λ²L^∨, X₋ ∈ Λ²L, the W-rotation parameter t, and the scaling s.
/// 25 + 10 + 10 + 1 + 1 = 47 coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieElement {
    a: Matrix,
    xplus: Form,
    xminus: Polyvector,
    t: Scalar,
    s: Scalar,
}

impl LieElement {
    pub const DIM: usize = 47;

    pub fn new(a: Matrix, xplus: Form, xminus: Polyvector, t: Scalar, s: Scalar) -> Self {
        assert_eq!((a.rows(), a.cols()), (5, 5), "A must be 5×5");
        assert!(
            matches!(xplus.homogeneous_degree(), Ok(None) | Ok(Some(2))),
            "X₊ must be a 2-form"
        );
        assert!(
            matches!(xminus.homogeneous_degree(), Ok(None) | Ok(Some(2))),
            "X₋ must be a 2-polyvector"
        );
        LieElement { a, xplus, xminus, t, s }
    }

    pub fn zero() -> Self {
        LieElement::new(
            Matrix::zeros(5, 5),
            Form::zero(),
            Polyvector::zero(),
            Scalar::zero(),
            Scalar::zero(),
        )
    }

    pub fn from_a(a: Matrix) -> Self {
        LieElement::new(a, Form::zero(), Polyvector::zero(), Scalar::zero(), Scalar::zero())
    }

    pub fn from_xplus(xplus: Form) -> Self {
        LieElement::new(Matrix::zeros(5, 5), xplus, Polyvector::zero(), Scalar::zero(), Scalar::zero())
    }

    pub fn from_xminus(xminus: Polyvector) -> Self {
        LieElement::new(Matrix::zeros(5, 5), Form::zero(), xminus, Scalar::zero(), Scalar::zero())
    }

    pub fn from_t(t: Scalar) -> Self {
        LieElement::new(Matrix::zeros(5, 5), Form::zero(), Polyvector::zero(), t, Scalar::zero())
    }

    pub fn from_s(s: Scalar) -> Self {
        LieElement::new(Matrix::zeros(5, 5), Form::zero(), Polyvector::zero(), Scalar::zero(), s)
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn xplus(&self) -> &Form {
        &self.xplus
    }

    pub fn xminus(&self) -> &Polyvector {
        &self.xminus
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    pub fn s(&self) -> &Scalar {
        &self.s
    }

    /// Coordinates: A row-major (25), X₊ over the canonical degree-2 masks
    /// (10), X₋ likewise (10), t, s.
    pub fn coords(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(Self::DIM);
        for i in 0..5 {
            for j in 0..5 {
                v.push(self.a.at(i, j).clone());
            }
        }
        for &m in two_masks() {
            v.push(self.xplus.coeff(m));
        }
        for &m in two_masks() {
            v.push(self.xminus.coeff(m));
        }
        v.push(self.t.clone());
        v.push(self.s.clone());
        v
    }

    pub fn from_coords(coords: &[Scalar]) -> Self {
        assert_eq!(coords.len(), Self::DIM, "LieElement needs 47 coordinates");
        let a = Matrix::from_fn(5, 5, |i, j| coords[5 * i + j].clone());
        let mut xplus = Form::zero();
        let mut xminus = Polyvector::zero();
        for (k, &m) in two_masks().iter().enumerate() {
            xplus.add_term(m, coords[25 + k].clone());
            xminus.add_term(m, coords[35 + k].clone());
        }
        LieElement::new(a, xplus, xminus, coords[45].clone(), coords[46].clone())
    }

    pub fn basis_element(k: usize) -> Self {
        assert!(k < Self::DIM);
        let mut coords = vec![Scalar::zero(); Self::DIM];
        coords[k] = Scalar::one();
        LieElement::from_coords(&coords)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
            && self.xplus.is_zero()
            && self.xminus.is_zero()
            && self.t.is_zero()
            && self.s.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LieElement {
            a: self.a.scale(c),
            xplus: self.xplus.scale(c),
            xminus: self.xminus.scale(c),
            t: &self.t * c,
            s: &self.s * c,
        }
    }

    /// The 10×10 matrix of the 𝔰𝔬(V)-part acting on V in (e, f) coordinates:
    /// e_j ↦ −A e_j − ι_{e_j}(X₊), f_k ↦ −ι_{f_k}(X₋) + A^T f_k.
    pub fn v_matrix(&self) -> Matrix {
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(10);
        for j in 1..=5u8 {
            let mut col = vec![Scalar::zero(); 10];
            for i in 0..5 {
                col[i] = -self.a.at(i, (j - 1) as usize);
            }
            let s_part = -&contract(&Polyvector::monomial(1 << (j - 1)), &self.xplus);
            for (m, c) in s_part.terms() {
                col[4 + mask_indices(m)[0] as usize] = c.clone();
            }
            cols.push(col);
        }
        for k in 1..=5u8 {
            let mut col = vec![Scalar::zero(); 10];
            let r_part = -&contract_form_poly(&Form::monomial(1 << (k - 1)), &self.xminus);
            for (m, c) in r_part.terms() {
                col[(mask_indices(m)[0] - 1) as usize] = c.clone();
            }
            for i in 0..5 {
                col[5 + i] = self.a.at((k - 1) as usize, i).clone();
            }
            cols.push(col);
        }
        Matrix::from_columns(cols)
    }

    /// Inverse of `v_matrix` on its image; rejects matrices outside 𝔰𝔬(V)
    /// in the parabolic block shape.
    pub fn from_v_matrix(m: &Matrix) -> Result<Self, String> {
        if (m.rows(), m.cols()) != (10, 10) {
            return Err("expected a 10×10 matrix".to_string());
        }
        let a = Matrix::from_fn(5, 5, |i, j| -m.at(i, j));
        let mut xplus = Form::zero();
        let mut xminus = Polyvector::zero();
        for i in 1..=5u8 {
            for j in (i + 1)..=5u8 {
                let mask = (1 << (i - 1)) | (1 << (j - 1));
                // block21[j][i] = −x₊_{ij}, block12[j][i] = −x₋_{ij}
                xplus.add_term(mask, -m.at((j + 4) as usize, (i - 1) as usize));
                xminus.add_term(mask, -m.at((j - 1) as usize, (i + 4) as usize));
            }
        }
        let candidate = LieElement::new(a, xplus, xminus, Scalar::zero(), Scalar::zero());
        if &candidate.v_matrix() != m {
            return Err("matrix is not in 𝔰𝔬(V) parabolic block form".to_string());
        }
        Ok(candidate)
    }

    /// Lie bracket. The 𝔰𝔬(V)-parts bracket through their V-matrices; t and
    /// s are central among themselves and commute with 𝔰𝔬(V), so the t and s
    /// components of any bracket vanish.
    pub fn algebra_bracket(&self, other: &LieElement) -> LieElement {
        let mx = self.v_matrix();
        let my = other.v_matrix();
        let comm = mx.mul(&my).sub(&my.mul(&mx));
        LieElement::from_v_matrix(&comm).expect("𝔰𝔬(V) is closed under commutator")
    }
}

impl std::ops::Add<&LieElement> for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        LieElement {
            a: self.a.add(&rhs.a),
            xplus: &self.xplus + &rhs.xplus,
            xminus: &self.xminus + &rhs.xminus,
            t: &self.t + &rhs.t,
            s: &self.s + &rhs.s,
        }
    }
}

impl std::ops::Sub<&LieElement> for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        LieElement {
            a: self.a.sub(&rhs.a),
            xplus: &self.xplus - &rhs.xplus,
            xminus: &self.xminus - &rhs.xminus,
            t: &self.t - &rhs.t,
            s: &self.s - &rhs.s,
        }
    }
}

/// ι_λ on polyvectors for a 1-form λ: the anti-derivation with
/// ι_λ(e_i) = λ(e_i), so ι_λ(e_i∧e_j) = λ_i e_j − λ_j e_i.
fn contract_form_poly(lam: &Form, p: &Polyvector) -> Polyvector {
    let mut out = Polyvector::zero();
    for (lm, lc) in lam.terms() {
        debug_assert_eq!(mask_degree(lm), 1);
        let i = mask_indices(lm)[0];
        for (pm, pc) in p.terms() {
            if pm & lm == 0 {
                continue;
            }
            let pos = mask_indices(pm).iter().position(|&x| x == i).unwrap();
            let mut c = lc * pc;
            if pos % 2 == 1 {
                c = -c;
            }
            out.add_term(pm & !lm, c);
        }
    }
    out
}

/// Derivation of Λ•L^∨ extending the degree-preserving action of A on
/// generators, A·e^∨_i = Σ_j A_ij e^∨_j. Together with the −½tr(A) twist this
/// is the honest quantization of the 𝔰𝔬(V)-element acting on V as
/// (−A on L, A^T on L^∨).
fn derivation_action(a: &Matrix, f: &Form) -> Form {
    let mut out = Form::zero();
    for (m, c) in f.terms() {
        let indices = mask_indices(m);
        for (pos, &s) in indices.iter().enumerate() {
            let rest = m & !(1 << (s - 1));
            let mut image_of_s = Form::zero();
            for j in 1..=5u8 {
                image_of_s.add_term(1 << (j - 1), a.at((s - 1) as usize, (j - 1) as usize).clone());
            }
            let mut term = wedge(&image_of_s, &Form::monomial(rest)).scale(c);
            if pos % 2 == 1 {
                term = -&term;
            }
            out = &out + &term;
        }
    }
    out
}

/// Infinitesimal action of the 𝔰𝔬(V)-part on the spinor module:
/// X₊∧ψ + ι_{X₋}ψ + (derivation of A)ψ − ½tr(A)·ψ. The −½tr(A) twist makes
/// this an honest 𝔰𝔬(V)-representation.
pub fn so_spinor_action(x: &LieElement, f: &Form) -> Form {
    let mut out = wedge(&x.xplus, f);
    out = &out + &contract(&x.xminus, f);
    out = &out + &derivation_action(&x.a, f);
    let half_tr = x.a.trace() * Scalar::rational(1, 2);
    &out - &f.scale(&half_tr)
}

/// Full infinitesimal action on supercharges: 𝔰𝔬(V) on the spinor index,
/// t on the W index as (c1,c2) ↦ (−t·c2, t·c1), s as the identity.
pub fn lie_act(x: &LieElement, q: &Supercharge) -> Supercharge {
    let c1 = q.column(0);
    let c2 = q.column(1);
    let mut d1 = so_spinor_action(x, c1.form());
    let mut d2 = so_spinor_action(x, c2.form());
    d1 = &(&d1 + &c1.form().scale(&x.s)) - &c2.form().scale(&x.t);
    d2 = &(&d2 + &c2.form().scale(&x.s)) + &c1.form().scale(&x.t);
    Supercharge::new(Spinor::new(d1.even_part()), Spinor::new(d2.even_part()))
}

// ---------------------------------------------------------------------------
// Parabolic group generators
// ---------------------------------------------------------------------------

/// Finite symmetry generators. The GL(L) action is the projective pullback
/// ψ ↦ det(g)⁻¹·(g⁻¹)*ψ (no det^{1/2} twist, which is not rational); all
/// invariants consumed downstream are projective. WRotation(u) is the
/// rational rotation with cos = (1−u²)/(1+u²), sin = 2u/(1+u²).
#[derive(Clone, Debug)]
pub enum GroupGenerator {
    GL(Matrix),
    ExpPlus(Form),
    ExpMinus(Polyvector),
    WRotation(Scalar),
    WReflection,
    Rescale(Scalar),
}

/// Pullback of a form along h ∈ GL(L): e^∨_i ↦ Σ_j h_ij e^∨_j, extended
/// multiplicatively.
fn pullback_form(h: &Matrix, f: &Form) -> Form {
    let mut out = Form::zero();
    for (m, c) in f.terms() {
        let mut term = Form::term(0, c.clone());
        for &i in &mask_indices(m) {
            let mut row = Form::zero();
            for j in 1..=5u8 {
                row.add_term(1 << (j - 1), h.at((i - 1) as usize, (j - 1) as usize).clone());
            }
            term = wedge(&term, &row);
        }
        out = &out + &term;
    }
    out
}

pub fn group_generator_act(g: &GroupGenerator, q: &Supercharge) -> Result<Supercharge, String> {
    let act_columns = |f: &dyn Fn(&Form) -> Form| {
        Supercharge::new(
            Spinor::new(f(q.column(0).form()).even_part()),
            Spinor::new(f(q.column(1).form()).even_part()),
        )
    };
    match g {
        GroupGenerator::GL(m) => {
            if (m.rows(), m.cols()) != (5, 5) {
                return Err("GL generator must be 5×5".to_string());
            }
            let h = m.inverse().ok_or_else(|| "singular GL generator".to_string())?;
            let det_inv = m.det().inv();
            Ok(act_columns(&|f| pullback_form(&h, f).scale(&det_inv)))
        }
        GroupGenerator::ExpPlus(xp) => {
            if !matches!(xp.homogeneous_degree(), Ok(None) | Ok(Some(2))) {
                return Err("exp generator must be a 2-form".to_string());
            }
            Ok(act_columns(&|f| {
                let first = wedge(xp, f);
                let second = wedge(xp, &first).scale(&Scalar::rational(1, 2));
                &(f + &first) + &second
            }))
        }
        GroupGenerator::ExpMinus(xm) => {
            if !matches!(xm.homogeneous_degree(), Ok(None) | Ok(Some(2))) {
                return Err("exp generator must be a 2-polyvector".to_string());
            }
            Ok(act_columns(&|f| {
                let first = contract(xm, f);
                let second = contract(xm, &first).scale(&Scalar::rational(1, 2));
                &(f + &first) + &second
            }))
        }
        GroupGenerator::WRotation(u) => {
            let denom = Scalar::one() + u * u;
            let cos = (Scalar::one() - u * u) / denom.clone();
            let sin = (Scalar::from_int(2) * u) / denom;
            let c1 = &q.column(0).scale(&cos) - &q.column(1).scale(&sin);
            let c2 = &q.column(0).scale(&sin) + &q.column(1).scale(&cos);
            Ok(Supercharge::new(c1, c2))
        }
        GroupGenerator::WReflection => Ok(Supercharge::new(
            q.column(0).clone(),
            -q.column(1),
        )),
        GroupGenerator::Rescale(c) => {
            if c.is_zero() {
                return Err("rescale by zero".to_string());
            }
            Ok(q.scale(c))
        }
    }
}
