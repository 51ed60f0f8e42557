//! Orbit classification of square-zero supercharges: the rank / intersection
//! decision table, canonical representatives, seeded orbit sampling, pencil
//! scans, and the defining quadratic ideal in the 32 supercharge coordinates.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::binquad::{common_projective_zeros, BinaryQuadratic, CommonZeros};
use crate::exterior::{even_masks, mask_from_indices, mask_key, Form, Polyvector};
use crate::scalar::Scalar;
use crate::spinor::{gamma_with, is_pure, Orientation, Spinor, VectorV};
use crate::stabilizer;
use crate::superalgebra::{
    bracket_with, group_generator_act, translations_image_with, GroupGenerator, LieElement,
    Supercharge, WVector,
};

// ---------------------------------------------------------------------------
// Labels and reports
// ---------------------------------------------------------------------------

/// The seven strata of square-zero supercharges: the origin, three rank-one
/// families (pure spinor with isotropic / non-isotropic R-symmetry vector,
/// impure spinor), and three rank-two families named by how the pencil of
/// spinors meets the pure spinor variety.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OrbitLabel {
    Zero,
    R1PureIso,
    R1PureNonIso,
    R1Impure,
    R2Line,
    R2TwoPoints,
    R2Tangent,
}

impl OrbitLabel {
    /// The six nonzero orbits, in decision-table order.
    pub const NONZERO: [OrbitLabel; 6] = [
        OrbitLabel::R1PureIso,
        OrbitLabel::R1PureNonIso,
        OrbitLabel::R1Impure,
        OrbitLabel::R2Line,
        OrbitLabel::R2TwoPoints,
        OrbitLabel::R2Tangent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrbitLabel::Zero => "Zero",
            OrbitLabel::R1PureIso => "R1PureIso",
            OrbitLabel::R1PureNonIso => "R1PureNonIso",
            OrbitLabel::R1Impure => "R1Impure",
            OrbitLabel::R2Line => "R2Line",
            OrbitLabel::R2TwoPoints => "R2TwoPoints",
            OrbitLabel::R2Tangent => "R2Tangent",
        }
    }

    pub fn parse(s: &str) -> Option<OrbitLabel> {
        let mut all = vec![OrbitLabel::Zero];
        all.extend(OrbitLabel::NONZERO);
        all.into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for OrbitLabel {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        OrbitLabel::parse(&s).ok_or_else(|| D::Error::custom(format!("unknown orbit label {s:?}")))
    }
}

/// How the line of spinors spanned by a rank-two supercharge meets the
/// projective quadric of pure spinors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntersectionPattern {
    Line,
    TwoPoints,
    OnePoint,
    Empty,
}

impl IntersectionPattern {
    pub fn name(self) -> &'static str {
        match self {
            IntersectionPattern::Line => "Line",
            IntersectionPattern::TwoPoints => "TwoPoints",
            IntersectionPattern::OnePoint => "OnePoint",
            IntersectionPattern::Empty => "Empty",
        }
    }
}

impl fmt::Display for IntersectionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for IntersectionPattern {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for IntersectionPattern {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        [
            IntersectionPattern::Line,
            IntersectionPattern::TwoPoints,
            IntersectionPattern::OnePoint,
            IntersectionPattern::Empty,
        ]
        .into_iter()
        .find(|p| p.name() == s)
        .ok_or_else(|| D::Error::custom(format!("unknown pattern {s:?}")))
    }
}

/// The full invariant set of a square-zero supercharge. `pattern` is present
/// exactly for rank two, `psi_pure`/`w_isotropic` exactly for rank one, and
/// `projective_orbit_dim + stabilizer_dim = 47` always.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InvariantReport {
    pub label: OrbitLabel,
    pub rank: usize,
    pub square_zero: bool,
    pub pattern: Option<IntersectionPattern>,
    pub psi_pure: Option<bool>,
    pub w_isotropic: Option<bool>,
    pub translations_dim: usize,
    pub projective_orbit_dim: usize,
    pub stabilizer_dim: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClassifyError {
    /// The input does not square to zero; carries the nonzero bracket.
    NotSquareZero(VectorV),
    /// The operation needs a supercharge of a specific rank.
    WrongRank { expected: usize, got: usize },
    /// A rank-two square-zero supercharge whose pencil misses the pure
    /// spinor quadric entirely. Provably unreachable; reported as an
    /// internal error rather than a label.
    EmptyIntersection,
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::NotSquareZero(v) => {
                write!(f, "supercharge does not square to zero: [Q,Q] = {v}")
            }
            ClassifyError::WrongRank { expected, got } => {
                write!(f, "expected a rank-{expected} supercharge, got rank {got}")
            }
            ClassifyError::EmptyIntersection => {
                write!(f, "internal error: empty intersection pattern on a rank-2 square-zero supercharge")
            }
        }
    }
}

impl std::error::Error for ClassifyError {}

// ---------------------------------------------------------------------------
// Intersection pattern
// ---------------------------------------------------------------------------

/// The ten binary quadratics `(a,b) ↦ γ(a·ψ1 + b·ψ2, a·ψ1 + b·ψ2)_k`.
fn pencil_quadratics(psi1: &Spinor, psi2: &Spinor, orientation: Orientation) -> Vec<BinaryQuadratic> {
    let g11 = gamma_with(psi1, psi1, orientation);
    let g12 = gamma_with(psi1, psi2, orientation);
    let g22 = gamma_with(psi2, psi2, orientation);
    (0..10)
        .map(|k| {
            BinaryQuadratic::new(
                g11.coords()[k].clone(),
                Scalar::from_int(2) * &g12.coords()[k],
                g22.coords()[k].clone(),
            )
        })
        .collect()
}

pub fn intersection_pattern_with(
    q: &Supercharge,
    orientation: Orientation,
) -> Result<IntersectionPattern, ClassifyError> {
    let (rank, basis) = q.rank_and_image();
    if rank != 2 {
        return Err(ClassifyError::WrongRank { expected: 2, got: rank });
    }
    let forms = pencil_quadratics(&basis[0], &basis[1], orientation);
    let zeros = common_projective_zeros(&forms).expect("ten quadratics");
    Ok(match zeros {
        CommonZeros::AllOfP1 => IntersectionPattern::Line,
        CommonZeros::TwoPoints => IntersectionPattern::TwoPoints,
        CommonZeros::OnePoint => IntersectionPattern::OnePoint,
        CommonZeros::Empty => IntersectionPattern::Empty,
    })
}

/// Zero locus of γ restricted to the pencil of spinors of a rank-two
/// supercharge, inside the projective line. Basis-independent.
pub fn intersection_pattern(q: &Supercharge) -> Result<IntersectionPattern, ClassifyError> {
    intersection_pattern_with(q, Orientation::default())
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

pub fn classify_with(q: &Supercharge, orientation: Orientation) -> Result<InvariantReport, ClassifyError> {
    let br = bracket_with(q, q, orientation);
    if !br.is_zero() {
        return Err(ClassifyError::NotSquareZero(br));
    }
    if q.is_zero() {
        return Ok(InvariantReport {
            label: OrbitLabel::Zero,
            rank: 0,
            square_zero: true,
            pattern: None,
            psi_pure: None,
            w_isotropic: None,
            translations_dim: 0,
            projective_orbit_dim: 0,
            stabilizer_dim: LieElement::DIM,
        });
    }

    let (rank, _) = q.rank_and_image();
    let (label, pattern, psi_pure, w_isotropic) = match rank {
        1 => {
            let (psi, w) = q.rank_one_decomposition().expect("rank checked");
            let pure = is_pure(&psi).expect("rank-one spinor is nonzero");
            let iso = w.is_isotropic();
            let label = match (pure, iso) {
                (true, true) => OrbitLabel::R1PureIso,
                (true, false) => OrbitLabel::R1PureNonIso,
                // square-zero with an impure spinor forces the isotropy of w
                (false, _) => OrbitLabel::R1Impure,
            };
            (label, None, Some(pure), Some(iso))
        }
        2 => {
            let pattern = intersection_pattern_with(q, orientation)?;
            let label = match pattern {
                IntersectionPattern::Line => OrbitLabel::R2Line,
                IntersectionPattern::TwoPoints => OrbitLabel::R2TwoPoints,
                IntersectionPattern::OnePoint => OrbitLabel::R2Tangent,
                IntersectionPattern::Empty => return Err(ClassifyError::EmptyIntersection),
            };
            (label, Some(pattern), None, None)
        }
        other => unreachable!("supercharge rank {other} out of range"),
    };

    let translations_dim = translations_image_with(q, orientation).0;
    let orbit = stabilizer::projective_orbit_dim(q).expect("nonzero supercharge");
    Ok(InvariantReport {
        label,
        rank,
        square_zero: true,
        pattern,
        psi_pure,
        w_isotropic,
        translations_dim,
        projective_orbit_dim: orbit,
        stabilizer_dim: LieElement::DIM - orbit,
    })
}

/// Decision table: `Zero` for the origin; rank one splits by purity of ψ and
/// isotropy of w; rank two splits by the intersection pattern.
pub fn classify(q: &Supercharge) -> Result<InvariantReport, ClassifyError> {
    classify_with(q, Orientation::default())
}

// ---------------------------------------------------------------------------
// Representatives and sampling
// ---------------------------------------------------------------------------

fn spinor(indices: &[u8]) -> Spinor {
    Spinor::monomial(mask_from_indices(indices))
}

/// ψg = e^∨₂∧e^∨₃ + e^∨₄∧e^∨₅, the standard impure spinor.
fn psi_generic() -> Spinor {
    &spinor(&[2, 3]) + &spinor(&[4, 5])
}

/// Canonical representative of each orbit (the zero supercharge for `Zero`).
pub fn representative(label: OrbitLabel) -> Supercharge {
    let w_iso = WVector::new(Scalar::one(), Scalar::i());
    let w1 = WVector::new(Scalar::one(), Scalar::zero());
    let w2 = WVector::new(Scalar::zero(), Scalar::one());
    match label {
        OrbitLabel::Zero => Supercharge::zero(),
        OrbitLabel::R1PureIso => Supercharge::simple(&Spinor::one(), &w_iso),
        OrbitLabel::R1PureNonIso => Supercharge::simple(&Spinor::one(), &w1),
        OrbitLabel::R1Impure => Supercharge::simple(&psi_generic(), &w_iso),
        OrbitLabel::R2Line => {
            &Supercharge::simple(&Spinor::one(), &w1) + &Supercharge::simple(&spinor(&[4, 5]), &w2)
        }
        OrbitLabel::R2TwoPoints => {
            &Supercharge::simple(&Spinor::one(), &w1)
                + &Supercharge::simple(&spinor(&[2, 3, 4, 5]), &w2)
        }
        OrbitLabel::R2Tangent => {
            &Supercharge::simple(&Spinor::one(), &w1) + &Supercharge::simple(&psi_generic(), &w_iso)
        }
    }
}

fn unit_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let pool = [Scalar::one(), -Scalar::one(), Scalar::i(), -Scalar::i()];
    pool[rng.gen_range(0..pool.len())].clone()
}

fn small_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let pool = [
        Scalar::one(),
        -Scalar::one(),
        Scalar::i(),
        Scalar::from_int(2),
        Scalar::gauss(1, 1, 1, 1),
        Scalar::gauss(1, 1, -1, 1),
    ];
    pool[rng.gen_range(0..pool.len())].clone()
}

fn random_two_form(rng: &mut ChaCha8Rng) -> Form {
    let mut f = Form::zero();
    for _ in 0..rng.gen_range(1..=2usize) {
        let i = rng.gen_range(1..=4u8);
        let j = rng.gen_range(i + 1..=5u8);
        f.add_term(mask_from_indices(&[i, j]), small_scalar(rng));
    }
    f
}

fn random_two_polyvector(rng: &mut ChaCha8Rng) -> Polyvector {
    let mut p = Polyvector::zero();
    for _ in 0..rng.gen_range(1..=2usize) {
        let i = rng.gen_range(1..=4u8);
        let j = rng.gen_range(i + 1..=5u8);
        p.add_term(mask_from_indices(&[i, j]), small_scalar(rng));
    }
    p
}

/// One pseudorandom symmetry generator with small coefficients. Always
/// invertible: shear and diagonal GL elements have unit determinant factors.
fn random_generator(rng: &mut ChaCha8Rng) -> GroupGenerator {
    match rng.gen_range(0..7) {
        0 => {
            // elementary shear 1 + c·E_ij, i ≠ j
            let mut m = crate::linalg::Matrix::identity(5);
            let i = rng.gen_range(0..5);
            let j = (i + rng.gen_range(1..5)) % 5;
            m.set(i, j, unit_scalar(rng));
            GroupGenerator::GL(m)
        }
        1 => {
            // diagonal with one non-unit entry
            let mut m = crate::linalg::Matrix::identity(5);
            let i = rng.gen_range(0..5);
            m.set(i, i, small_scalar(rng));
            GroupGenerator::GL(m)
        }
        2 => GroupGenerator::ExpPlus(random_two_form(rng)),
        3 => GroupGenerator::ExpMinus(random_two_polyvector(rng)),
        4 => {
            // rational rotation parameter; ±i would degenerate
            let pool = [
                Scalar::one(),
                -Scalar::one(),
                Scalar::from_int(2),
                Scalar::rational(1, 2),
                Scalar::from_int(3),
            ];
            GroupGenerator::WRotation(pool[rng.gen_range(0..pool.len())].clone())
        }
        5 => GroupGenerator::WReflection,
        _ => GroupGenerator::Rescale(small_scalar(rng)),
    }
}

/// Applies a pseudorandom word of `word_len` group generators to the orbit
/// representative. Deterministic in the seed.
pub fn sample_orbit_sized(label: OrbitLabel, seed: u64, word_len: usize) -> Supercharge {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = representative(label);
    for _ in 0..word_len {
        let g = random_generator(&mut rng);
        q = group_generator_act(&g, &q).expect("sampled generators are invertible");
    }
    q
}

pub fn sample_orbit(label: OrbitLabel, seed: u64) -> Supercharge {
    sample_orbit_sized(label, seed, 6)
}

/// Classifies the pencil q0 + t·q1 at each sample point. A non-square-zero
/// member yields an error entry for that t instead of aborting the scan.
pub fn closure_scan(
    q0: &Supercharge,
    q1: &Supercharge,
    sample_points: &[Scalar],
) -> Vec<(Scalar, Result<OrbitLabel, ClassifyError>)> {
    sample_points
        .iter()
        .map(|t| {
            let qt = q0 + &q1.scale(t);
            (t.clone(), classify(&qt).map(|r| r.label))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// The defining ideal
// ---------------------------------------------------------------------------

/// Name of the k-th supercharge coordinate, `q_{m,c}` with m the monomial
/// key and c ∈ {1,2} the column.
pub fn ideal_variable_name(k: usize) -> String {
    format!("q_{{{},{}}}", mask_key(even_masks()[k % 16]), k / 16 + 1)
}

/// Homogeneous quadratic in the 32 supercharge coordinates, stored as an
/// upper-triangular coefficient map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticPolynomial {
    coeffs: BTreeMap<(usize, usize), Scalar>,
}

impl QuadraticPolynomial {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            2
        }
    }

    pub fn coefficient(&self, i: usize, j: usize) -> Scalar {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.coeffs.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn evaluate(&self, vars: &[Scalar]) -> Scalar {
        assert_eq!(vars.len(), 32, "expected the 32 supercharge coordinates");
        let mut out = Scalar::zero();
        for ((i, j), c) in &self.coeffs {
            out = out + &(c * &vars[*i]) * &vars[*j];
        }
        out
    }
}

fn coefficient_string(c: &Scalar) -> String {
    let s = c.display_compact();
    if s[1..].contains('+') || s[1..].contains('-') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for QuadraticPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((i, j), c) in &self.coeffs {
            let monomial = if i == j {
                format!("{}^2", ideal_variable_name(*i))
            } else {
                format!("{}*{}", ideal_variable_name(*i), ideal_variable_name(*j))
            };
            let negative = c.is_real() && num_traits::Signed::is_negative(c.re());
            if first {
                if c.is_one() {
                    write!(f, "{monomial}")?;
                } else if (-c).is_one() {
                    write!(f, "-{monomial}")?;
                } else {
                    write!(f, "{}*{monomial}", coefficient_string(c))?;
                }
                first = false;
            } else if negative {
                let abs = -c;
                if abs.is_one() {
                    write!(f, " - {monomial}")?;
                } else {
                    write!(f, " - {}*{monomial}", coefficient_string(&abs))?;
                }
            } else if c.is_one() {
                write!(f, " + {monomial}")?;
            } else {
                write!(f, " + {}*{monomial}", coefficient_string(c))?;
            }
        }
        Ok(())
    }
}

pub fn emit_ideal_with(orientation: Orientation) -> Vec<QuadraticPolynomial> {
    let basis: Vec<Supercharge> = (0..32)
        .map(|i| {
            let mut c = vec![Scalar::zero(); 32];
            c[i] = Scalar::one();
            Supercharge::from_coords(&c)
        })
        .collect();
    let mut polys = vec![QuadraticPolynomial { coeffs: BTreeMap::new() }; 10];
    for i in 0..32 {
        for j in i..32 {
            let b = bracket_with(&basis[i], &basis[j], orientation);
            let factor = if i == j { Scalar::one() } else { Scalar::from_int(2) };
            for (k, poly) in polys.iter_mut().enumerate() {
                let c = &factor * &b.coords()[k];
                if !c.is_zero() {
                    poly.coeffs.insert((i, j), c);
                }
            }
        }
    }
    polys
}

/// The ten components of [Q,Q] as quadratics in the coordinates of Q, in
/// the order e₁..e₅, f₁..f₅. Their common zero locus is exactly the set of
/// square-zero supercharges.
pub fn emit_ideal() -> Vec<QuadraticPolynomial> {
    emit_ideal_with(Orientation::default())
}
