//! The chiral spinor module S₊ = Λ^even L^∨, vectors in V = L ⊕ L^∨ with the
//! hyperbolic pairing, the Clifford action, the vector-valued form γ, Clifford
//! annihilators and purity, and the alignment construction for pairs of
//! maximal isotropic subspaces.

use std::fmt;

use serde::de::Error as DeError;
use serde::ser::SerializeMap;

use crate::exterior::{
    contract, even_masks, mask_degree, mask_from_indices, mask_from_key, mask_key, odd_masks,
    omega_inv, wedge, Form, Mask, Polyvector,
};
use crate::linalg::{Matrix, RowSpan};
use crate::scalar::Scalar;

/// Global sign of the γ formula. `Calibrated` is the convention used
/// throughout (it gives γ(e^∨₂₃+e^∨₄₅, same) = e₁); `Flipped` negates γ.
/// Every orbit invariant is independent of this choice.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Orientation {
    #[default]
    Calibrated,
    Flipped,
}

impl Orientation {
    fn gamma_sign(self) -> Scalar {
        match self {
            Orientation::Calibrated => -Scalar::one(),
            Orientation::Flipped => Scalar::one(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpinorError {
    ZeroSpinor,
    ImpureInput,
    NotIsotropic,
    BadBasis(String),
    IntersectionMismatch { left: usize, right: usize },
}

impl fmt::Display for SpinorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinorError::ZeroSpinor => write!(f, "zero spinor has no annihilator data"),
            SpinorError::ImpureInput => write!(f, "operation requires pure spinors"),
            SpinorError::NotIsotropic => write!(f, "subspace is not isotropic"),
            SpinorError::BadBasis(msg) => write!(f, "bad basis: {msg}"),
            SpinorError::IntersectionMismatch { left, right } => {
                write!(f, "intersection dimensions differ: {left} vs {right}")
            }
        }
    }
}

impl std::error::Error for SpinorError {}

// ---------------------------------------------------------------------------
// Vectors of V = L ⊕ L^∨
// ---------------------------------------------------------------------------

/// A vector of V = L ⊕ L^∨ in coordinates (e_1..e_5, f_1..f_5), where f_i is
/// the dual basis e^∨_i. The pairing is ⟨l+λ, l'+λ'⟩ = λ(l') + λ'(l).
#[derive(Clone, PartialEq, Eq)]
pub struct VectorV {
    coords: [Scalar; 10],
}

impl VectorV {
    pub fn zero() -> Self {
        VectorV {
            coords: std::array::from_fn(|_| Scalar::zero()),
        }
    }

    /// Basis vector e_i of L, i ∈ 1..=5.
    pub fn e(i: u8) -> Self {
        assert!((1..=5).contains(&i));
        let mut v = VectorV::zero();
        v.coords[(i - 1) as usize] = Scalar::one();
        v
    }

    /// Basis vector f_i = e^∨_i of L^∨, i ∈ 1..=5.
    pub fn f(i: u8) -> Self {
        assert!((1..=5).contains(&i));
        let mut v = VectorV::zero();
        v.coords[(i + 4) as usize] = Scalar::one();
        v
    }

    pub fn from_coords(coords: Vec<Scalar>) -> Self {
        assert_eq!(coords.len(), 10, "VectorV needs 10 coordinates");
        VectorV {
            coords: coords.try_into().unwrap_or_else(|_| unreachable!()),
        }
    }

    /// L-part as degree-1 polyvector plus L^∨-part as degree-1 form.
    pub fn from_parts(l: &Polyvector, lambda: &Form) -> Self {
        let mut v = VectorV::zero();
        for (m, c) in l.terms() {
            assert_eq!(mask_degree(m), 1, "L-part must be degree 1");
            let i = mask_key(m).parse::<usize>().unwrap();
            v.coords[i - 1] = c.clone();
        }
        for (m, c) in lambda.terms() {
            assert_eq!(mask_degree(m), 1, "L^∨-part must be degree 1");
            let i = mask_key(m).parse::<usize>().unwrap();
            v.coords[i + 4] = c.clone();
        }
        v
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn e_coeff(&self, i: u8) -> &Scalar {
        &self.coords[(i - 1) as usize]
    }

    pub fn f_coeff(&self, i: u8) -> &Scalar {
        &self.coords[(i + 4) as usize]
    }

    pub fn l_part(&self) -> Polyvector {
        let mut p = Polyvector::zero();
        for i in 1..=5u8 {
            p.add_term(mask_from_indices(&[i]), self.e_coeff(i).clone());
        }
        p
    }

    pub fn lambda_part(&self) -> Form {
        let mut p = Form::zero();
        for i in 1..=5u8 {
            p.add_term(mask_from_indices(&[i]), self.f_coeff(i).clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        VectorV {
            coords: std::array::from_fn(|k| &self.coords[k] * c),
        }
    }

    /// ⟨l+λ, l'+λ'⟩_V = λ(l') + λ'(l).
    pub fn inner(&self, other: &VectorV) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..5 {
            let (a, b) = (&self.coords[i], &other.coords[i + 5]);
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
            let (c, d) = (&self.coords[i + 5], &other.coords[i]);
            if !c.is_zero() && !d.is_zero() {
                acc += c * d;
            }
        }
        acc
    }

    /// Gram matrix of ⟨−,−⟩_V in the (e, f) coordinates.
    pub fn gram() -> Matrix {
        let mut g = Matrix::zeros(10, 10);
        for i in 0..5 {
            g.set(i, i + 5, Scalar::one());
            g.set(i + 5, i, Scalar::one());
        }
        g
    }
}

impl std::ops::Add<&VectorV> for &VectorV {
    type Output = VectorV;
    fn add(self, rhs: &VectorV) -> VectorV {
        VectorV {
            coords: std::array::from_fn(|k| &self.coords[k] + &rhs.coords[k]),
        }
    }
}

impl std::ops::Sub<&VectorV> for &VectorV {
    type Output = VectorV;
    fn sub(self, rhs: &VectorV) -> VectorV {
        VectorV {
            coords: std::array::from_fn(|k| &self.coords[k] - &rhs.coords[k]),
        }
    }
}

impl std::ops::Neg for &VectorV {
    type Output = VectorV;
    fn neg(self) -> VectorV {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for VectorV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in 0..10 {
            let c = &self.coords[k];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let name = if k < 5 {
                format!("e{}", k + 1)
            } else {
                format!("f{}", k - 4)
            };
            if c.is_one() {
                write!(f, "{name}")?;
            } else if (-c).is_one() {
                write!(f, "-{name}")?;
            } else {
                let cs = c.display_compact();
                if cs[1..].contains('+') || cs[1..].contains('-') {
                    write!(f, "({cs})*{name}")?;
                } else {
                    write!(f, "{cs}*{name}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for VectorV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for VectorV {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(None)?;
        for k in 0..10usize {
            if self.coords[k].is_zero() {
                continue;
            }
            let key = if k < 5 {
                format!("e{}", k + 1)
            } else {
                format!("f{}", k - 4)
            };
            map.serialize_entry(&key, &self.coords[k])?;
        }
        map.end()
    }
}

impl<'de> serde::Deserialize<'de> for VectorV {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = std::collections::BTreeMap::<String, Scalar>::deserialize(de)?;
        let mut v = VectorV::zero();
        for (key, val) in raw {
            if key.len() != 2 {
                return Err(D::Error::custom(format!("bad V coordinate key {key:?}")));
            }
            let (family, idx) = key.split_at(1);
            let i: usize = idx
                .parse()
                .ok()
                .filter(|i| (1..=5).contains(i))
                .ok_or_else(|| D::Error::custom(format!("bad V coordinate key {key:?}")))?;
            match family {
                "e" => v.coords[i - 1] = val,
                "f" => v.coords[i + 4] = val,
                _ => return Err(D::Error::custom(format!("bad V coordinate key {key:?}"))),
            }
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// Spinors
// ---------------------------------------------------------------------------

/// A chiral spinor: a form supported in even degrees (16 coordinates).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Spinor {
    form: Form,
}

impl Spinor {
    /// Panics on odd-degree support; JSON input is validated before this.
    pub fn new(form: Form) -> Self {
        assert!(
            form.support().iter().all(|&m| mask_degree(m) % 2 == 0),
            "spinor must have even-degree support"
        );
        Spinor { form }
    }

    pub fn zero() -> Self {
        Spinor { form: Form::zero() }
    }

    pub fn one() -> Self {
        Spinor { form: Form::one() }
    }

    pub fn monomial(m: Mask) -> Self {
        Spinor::new(Form::monomial(m))
    }

    pub fn term(m: Mask, c: Scalar) -> Self {
        Spinor::new(Form::term(m, c))
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn coeff(&self, m: Mask) -> Scalar {
        self.form.coeff(m)
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Spinor {
            form: self.form.scale(c),
        }
    }

    pub fn part(&self, k: usize) -> Form {
        self.form.part_of_degree(k)
    }

    /// Coordinates in the canonical even-monomial order.
    pub fn coords(&self) -> Vec<Scalar> {
        even_masks().iter().map(|&m| self.form.coeff(m)).collect()
    }

    pub fn from_coords(coords: &[Scalar]) -> Self {
        assert_eq!(coords.len(), 16, "spinor needs 16 coordinates");
        let mut form = Form::zero();
        for (k, &m) in even_masks().iter().enumerate() {
            form.add_term(m, coords[k].clone());
        }
        Spinor { form }
    }
}

impl std::ops::Add<&Spinor> for &Spinor {
    type Output = Spinor;
    fn add(self, rhs: &Spinor) -> Spinor {
        Spinor {
            form: &self.form + &rhs.form,
        }
    }
}

impl std::ops::Sub<&Spinor> for &Spinor {
    type Output = Spinor;
    fn sub(self, rhs: &Spinor) -> Spinor {
        Spinor {
            form: &self.form - &rhs.form,
        }
    }
}

impl std::ops::Neg for &Spinor {
    type Output = Spinor;
    fn neg(self) -> Spinor {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.form, f)
    }
}

impl fmt::Debug for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Spinor {
    /// Object of nonzero coefficients, keys in canonical (degree, lex) order.
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(None)?;
        for &m in even_masks() {
            let c = self.form.coeff(m);
            if !c.is_zero() {
                map.serialize_entry(&mask_key(m), &c)?;
            }
        }
        map.end()
    }
}

impl<'de> serde::Deserialize<'de> for Spinor {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = std::collections::BTreeMap::<String, Scalar>::deserialize(de)?;
        let mut form = Form::zero();
        for (key, val) in raw {
            let m = mask_from_key(&key).map_err(D::Error::custom)?;
            if mask_degree(m) % 2 != 0 {
                return Err(D::Error::custom(format!(
                    "odd-degree monomial {key:?} in spinor"
                )));
            }
            form.add_term(m, val);
        }
        Ok(Spinor { form })
    }
}

// ---------------------------------------------------------------------------
// Clifford action and γ
// ---------------------------------------------------------------------------

/// v · f = ι_l(f) + λ ∧ f. Satisfies v·(v·f) = λ(l)·f = ½⟨v,v⟩·f.
pub fn clifford_act(v: &VectorV, f: &Form) -> Form {
    &contract(&v.l_part(), f) + &wedge(&v.lambda_part(), f)
}

/// The squared γ: γ(ψ,ψ) = σ·[Ω⁻¹(ψ⁰∧ψ⁴) − ½Ω⁻¹(ψ²∧ψ²) + ψ²∨Ω⁻¹(ψ⁴)],
/// with the global sign σ set by the orientation. The ∨ in the last term is
/// the right contraction ψ² ⌞ x = −ι_x(ψ²); this is the convention under
/// which Im γ(ψ,−) = Ann(ψ) for pure ψ.
pub fn gamma_sq_with(psi: &Spinor, orientation: Orientation) -> VectorV {
    let p0 = psi.part(0);
    let p2 = psi.part(2);
    let p4 = psi.part(4);

    let t1 = omega_inv(&wedge(&p0, &p4)).expect("degree-4 product");
    let t2 = omega_inv(&wedge(&p2, &p2)).expect("degree-4 product");
    let l = &t1 - &t2.scale(&Scalar::rational(1, 2));
    let lam = -&contract(&omega_inv(&p4).expect("degree-4 part"), &p2);

    VectorV::from_parts(&l, &lam).scale(&orientation.gamma_sign())
}

pub fn gamma_sq(psi: &Spinor) -> VectorV {
    gamma_sq_with(psi, Orientation::Calibrated)
}

/// Polarization: γ(ψ,φ) = ½(γ(ψ+φ,ψ+φ) − γ(ψ,ψ) − γ(φ,φ)).
pub fn gamma_with(psi: &Spinor, phi: &Spinor, orientation: Orientation) -> VectorV {
    let sum = gamma_sq_with(&(psi + phi), orientation);
    let a = gamma_sq_with(psi, orientation);
    let b = gamma_sq_with(phi, orientation);
    (&(&sum - &a) - &b).scale(&Scalar::rational(1, 2))
}

pub fn gamma(psi: &Spinor, phi: &Spinor) -> VectorV {
    gamma_with(psi, phi, Orientation::Calibrated)
}

// ---------------------------------------------------------------------------
// Annihilators and purity
// ---------------------------------------------------------------------------

pub fn v_basis() -> Vec<VectorV> {
    let mut basis = Vec::with_capacity(10);
    for i in 1..=5 {
        basis.push(VectorV::e(i));
    }
    for i in 1..=5 {
        basis.push(VectorV::f(i));
    }
    basis
}

/// 16×10 matrix of v ↦ v·ψ: rows run over odd monomials in canonical order,
/// columns over the (e, f) basis of V.
fn clifford_matrix(psi: &Spinor) -> Matrix {
    let images: Vec<Form> = v_basis()
        .iter()
        .map(|v| clifford_act(v, psi.form()))
        .collect();
    Matrix::from_fn(16, 10, |r, c| images[c].coeff(odd_masks()[r]))
}

/// Basis of Ann(ψ) = {v ∈ V : v·ψ = 0}; errors on the zero spinor.
pub fn annihilator(psi: &Spinor) -> Result<Vec<VectorV>, SpinorError> {
    if psi.is_zero() {
        return Err(SpinorError::ZeroSpinor);
    }
    Ok(clifford_matrix(psi)
        .kernel_basis()
        .into_iter()
        .map(VectorV::from_coords)
        .collect())
}

/// Pure ⟺ the annihilator is maximal isotropic (dimension 5).
pub fn is_pure(psi: &Spinor) -> Result<bool, SpinorError> {
    Ok(annihilator(psi)?.len() == 5)
}

/// r = dim(Ann(ψ₁) ∩ Ann(ψ₂)) for two pure spinors; always odd.
pub fn pair_intersection_dim(psi1: &Spinor, psi2: &Spinor) -> Result<usize, SpinorError> {
    let a1 = annihilator(psi1)?;
    let a2 = annihilator(psi2)?;
    if a1.len() != 5 || a2.len() != 5 {
        return Err(SpinorError::ImpureInput);
    }
    let m1 = Matrix::from_columns(a1.iter().map(|v| v.coords().to_vec()).collect());
    let m2 = Matrix::from_columns(a2.iter().map(|v| v.coords().to_vec()).collect());
    Ok(10 - m1.hcat(&m2).rank())
}

// ---------------------------------------------------------------------------
// Alignment of isotropic pairs
// ---------------------------------------------------------------------------

fn check_isotropic_basis(basis: &[VectorV]) -> Result<(), SpinorError> {
    if basis.len() != 5 {
        return Err(SpinorError::BadBasis(format!(
            "expected 5 basis vectors, got {}",
            basis.len()
        )));
    }
    let m = Matrix::from_columns(basis.iter().map(|v| v.coords().to_vec()).collect());
    if m.rank() != 5 {
        return Err(SpinorError::BadBasis("basis is dependent".to_string()));
    }
    for a in basis {
        for b in basis {
            if !a.inner(b).is_zero() {
                return Err(SpinorError::NotIsotropic);
            }
        }
    }
    Ok(())
}

/// Canonical basis of span(u) ∩ span(w).
fn intersect_subspaces(u: &[VectorV], w: &[VectorV]) -> Vec<VectorV> {
    let mu = Matrix::from_columns(u.iter().map(|v| v.coords().to_vec()).collect());
    let mw = Matrix::from_columns(w.iter().map(|v| v.coords().to_vec()).collect());
    let stacked = mu.hcat(&mw.scale(&-Scalar::one()));
    let mut span = RowSpan::new(10);
    for combo in stacked.kernel_basis() {
        let x = mu.mul_vec(&combo[..u.len()]);
        span.insert(&x);
    }
    span.basis().iter().map(|v| VectorV::from_coords(v.clone())).collect()
}

/// Standard hyperbolic frame (k…, a…, b…, w…) adapted to the pair (L1, L2):
/// k spans K = L1∩L2, a completes K to L1, b completes K to L2 and is dual
/// to a, w is an isotropic dual of K orthogonal to a and b.
fn standard_frame(l1: &[VectorV], l2: &[VectorV]) -> Result<Vec<VectorV>, SpinorError> {
    let k = intersect_subspaces(l1, l2);
    let r = k.len();

    let complement = |whole: &[VectorV]| {
        let mut span = RowSpan::new(10);
        for v in &k {
            span.insert(v.coords());
        }
        let mut picked = Vec::new();
        for v in whole {
            if span.insert(v.coords()) {
                picked.push(v.clone());
            }
        }
        picked
    };
    let a = complement(l1);
    let b_raw = complement(l2);

    // dual-normalize b against a through the pairing (perfect on A × B)
    let g = Matrix::from_fn(5 - r, 5 - r, |u, v| a[u].inner(&b_raw[v]));
    let g_inv = g
        .inverse()
        .ok_or_else(|| SpinorError::BadBasis("pairing between complements is degenerate".into()))?;
    let b: Vec<VectorV> = (0..5 - r)
        .map(|v| {
            let mut acc = VectorV::zero();
            for w in 0..5 - r {
                acc = &acc + &b_raw[w].scale(g_inv.at(w, v));
            }
            acc
        })
        .collect();

    // dual of K, orthogonal to a and b: solve ⟨x, basis⟩ constraints, then
    // correct to an isotropic family
    let gram = VectorV::gram();
    let mut constraint_rows: Vec<Vec<Scalar>> = Vec::new();
    for v in a.iter().chain(&b).chain(&k) {
        constraint_rows.push(gram.mul_vec(v.coords()));
    }
    let constraints = Matrix::from_rows(constraint_rows);
    let mut w_vecs: Vec<VectorV> = Vec::new();
    for j in 0..r {
        let mut rhs = vec![Scalar::zero(); 2 * (5 - r) + r];
        rhs[2 * (5 - r) + j] = Scalar::one();
        let sol = constraints
            .solve(&rhs)
            .ok_or_else(|| SpinorError::BadBasis("dual completion failed".into()))?;
        let mut w = VectorV::from_coords(sol);
        // isotropize while keeping ⟨w_j, k_i⟩ = δ_ij
        let half = Scalar::rational(1, 2);
        let self_pair = w.inner(&w);
        w = &w - &k[j].scale(&(&half * &self_pair));
        for m in 0..j {
            let cross = w.inner(&w_vecs[m]);
            w = &w - &k[m].scale(&cross);
        }
        w_vecs.push(w);
    }

    let mut frame = k;
    frame.extend(a);
    frame.extend(b);
    frame.extend(w_vecs);
    Ok(frame)
}

/// Orthogonal map of V carrying (L1, L2) to (L1', L2'), built by mapping the
/// standard hyperbolic frame of one pair onto the other's. All four inputs
/// must be bases of maximal isotropic subspaces, with matching intersection
/// dimensions.
pub fn align_isotropic_pairs(
    l1: &[VectorV],
    l2: &[VectorV],
    l1p: &[VectorV],
    l2p: &[VectorV],
) -> Result<Matrix, SpinorError> {
    for basis in [l1, l2, l1p, l2p] {
        check_isotropic_basis(basis)?;
    }
    let r = intersect_subspaces(l1, l2).len();
    let rp = intersect_subspaces(l1p, l2p).len();
    if r != rp {
        return Err(SpinorError::IntersectionMismatch { left: r, right: rp });
    }
    let p = Matrix::from_columns(
        standard_frame(l1, l2)?.iter().map(|v| v.coords().to_vec()).collect(),
    );
    let pp = Matrix::from_columns(
        standard_frame(l1p, l2p)?.iter().map(|v| v.coords().to_vec()).collect(),
    );
    let p_inv = p
        .inverse()
        .ok_or_else(|| SpinorError::BadBasis("frame is singular".into()))?;
    Ok(pp.mul(&p_inv))
}
