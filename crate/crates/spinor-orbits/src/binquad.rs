//! Binary quadratic forms q(a,b) = c20 a² + c11 ab + c02 b² over Q(i), and
//! the common zero locus of a family of them inside the projective line.
//!
//! The classifier never extracts roots: the locus shape is decided by the
//! degree of the homogeneous gcd and, in degree two, by whether its
//! discriminant vanishes. Roots at infinity (b = 0) are tracked as explicit
//! powers of b factored off before the univariate gcd.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryQuadratic {
    pub c20: Scalar,
    pub c11: Scalar,
    pub c02: Scalar,
}

impl BinaryQuadratic {
    pub fn new(c20: Scalar, c11: Scalar, c02: Scalar) -> Self {
        BinaryQuadratic { c20, c11, c02 }
    }

    pub fn zero() -> Self {
        BinaryQuadratic::new(Scalar::zero(), Scalar::zero(), Scalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c20.is_zero() && self.c11.is_zero() && self.c02.is_zero()
    }

    pub fn eval(&self, a: &Scalar, b: &Scalar) -> Scalar {
        &(&self.c20 * a) * a + &(&self.c11 * a) * b + &(&self.c02 * b) * b
    }

    pub fn discriminant(&self) -> Scalar {
        &self.c11 * &self.c11 - Scalar::from_int(4) * &self.c20 * &self.c02
    }
}

/// Shape of the common projective zero locus of a family of binary
/// quadratics: everything, two distinct points, one (possibly doubled)
/// point, or nothing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CommonZeros {
    AllOfP1,
    TwoPoints,
    OnePoint,
    Empty,
}

impl fmt::Display for CommonZeros {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CommonZeros::AllOfP1 => "AllOfP1",
            CommonZeros::TwoPoints => "TwoPoints",
            CommonZeros::OnePoint => "OnePoint",
            CommonZeros::Empty => "Empty",
        };
        write!(f, "{s}")
    }
}

/// The zero pattern of an empty family is undefined.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NoFormsError;

impl fmt::Display for NoFormsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "common_projective_zeros needs at least one form")
    }
}

impl std::error::Error for NoFormsError {}

// -- univariate helpers on coefficient vectors (low degree first) --

fn poly_trim(p: &mut Vec<Scalar>) {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
}

fn poly_rem(mut a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    let db = b.len() - 1;
    let lead_inv = b[db].inv();
    while a.len() > db {
        let da = a.len() - 1;
        let factor = &a[da] * &lead_inv;
        if !factor.is_zero() {
            for (k, bc) in b.iter().enumerate() {
                if !bc.is_zero() {
                    a[da - db + k] = &a[da - db + k] - &(bc * &factor);
                }
            }
        }
        a.pop();
        poly_trim(&mut a);
    }
    a
}

/// Monic gcd of two univariate polynomials (empty vec = zero polynomial).
fn poly_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        let inv = lead.inv();
        for c in &mut x {
            *c = &*c * &inv;
        }
    }
    x
}

/// Splits a nonzero form as b^m · (affine part), with the affine part given
/// by its dehomogenization at b = 1 (which then has no root at infinity).
fn b_power_and_affine(q: &BinaryQuadratic) -> (usize, Vec<Scalar>) {
    if !q.c20.is_zero() {
        (0, vec![q.c02.clone(), q.c11.clone(), q.c20.clone()])
    } else if !q.c11.is_zero() {
        (1, vec![q.c02.clone(), q.c11.clone()])
    } else {
        (2, vec![q.c02.clone()])
    }
}

pub fn common_projective_zeros(
    forms: &[BinaryQuadratic],
) -> Result<CommonZeros, NoFormsError> {
    if forms.is_empty() {
        return Err(NoFormsError);
    }
    let nonzero: Vec<&BinaryQuadratic> = forms.iter().filter(|q| !q.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(CommonZeros::AllOfP1);
    }

    let mut min_b = usize::MAX;
    let mut affine_gcd: Option<Vec<Scalar>> = None;
    for q in nonzero {
        let (m, p) = b_power_and_affine(q);
        min_b = min_b.min(m);
        affine_gcd = Some(match affine_gcd {
            None => {
                let mut p = p;
                poly_trim(&mut p);
                let inv = p.last().unwrap().inv();
                for c in &mut p {
                    *c = &*c * &inv;
                }
                p
            }
            Some(g) => poly_gcd(&g, &p),
        });
    }
    let g = affine_gcd.unwrap();

    // re-homogenize: the full gcd is b^min_b · hom(g)
    let (c20, c11, c02) = match (min_b, g.len() - 1) {
        (0, 0) => return Ok(CommonZeros::Empty),
        (_, _) if min_b + (g.len() - 1) == 1 => return Ok(CommonZeros::OnePoint),
        (0, 2) => (g[2].clone(), g[1].clone(), g[0].clone()),
        (1, 1) => (Scalar::zero(), g[1].clone(), g[0].clone()),
        (2, 0) => (Scalar::zero(), Scalar::zero(), g[0].clone()),
        _ => unreachable!("binary quadratic gcd degree exceeds 2"),
    };
    let full = BinaryQuadratic::new(c20, c11, c02);
    if full.discriminant().is_zero() {
        Ok(CommonZeros::OnePoint)
    } else {
        Ok(CommonZeros::TwoPoints)
    }
}

pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Square root of a Gaussian rational when one exists in Q(i).
pub fn gauss_sqrt(z: &Scalar) -> Option<Scalar> {
    if z.is_zero() {
        return Some(Scalar::zero());
    }
    if z.im().is_zero() {
        if let Some(p) = rational_sqrt(z.re()) {
            return Some(Scalar::new(p, BigRational::zero()));
        }
        if let Some(p) = rational_sqrt(&-z.re().clone()) {
            return Some(Scalar::new(BigRational::zero(), p));
        }
        return None;
    }
    let n = rational_sqrt(&z.norm_sq())?;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let p_sq = (z.re() + &n) * &half;
    let p = rational_sqrt(&p_sq)?;
    if p.is_zero() {
        return None;
    }
    let q = z.im() * &half / &p;
    let cand = Scalar::new(p, q);
    if &(&cand * &cand) == z {
        Some(cand)
    } else {
        None
    }
}

/// The Q(i)-rational projective roots of a nonzero binary quadratic,
/// normalized as (a, 1) for finite points and (1, 0) at infinity. Roots
/// living in a proper quadratic extension are omitted.
pub fn rational_projective_roots(q: &BinaryQuadratic) -> Vec<(Scalar, Scalar)> {
    assert!(!q.is_zero(), "roots of the zero form are all of P1");
    if q.c20.is_zero() {
        if q.c11.is_zero() {
            return vec![(Scalar::one(), Scalar::zero())];
        }
        return vec![
            (Scalar::one(), Scalar::zero()),
            (-&q.c02 / &q.c11, Scalar::one()),
        ];
    }
    let two_a = Scalar::from_int(2) * &q.c20;
    let disc = q.discriminant();
    if disc.is_zero() {
        return vec![(-&q.c11 / &two_a, Scalar::one())];
    }
    match gauss_sqrt(&disc) {
        Some(sq) => vec![
            ((-&q.c11 + &sq) / &two_a, Scalar::one()),
            ((-&q.c11 - &sq) / &two_a, Scalar::one()),
        ],
        None => Vec::new(),
    }
}

/// Q(i)-rational points of the common projective zero locus. A family
/// without a nonzero member vanishes on all of P¹, which has no finite
/// list; that case returns an empty vector and should be screened off with
/// common_projective_zeros first.
pub fn common_rational_zeros(forms: &[BinaryQuadratic]) -> Vec<(Scalar, Scalar)> {
    let Some(first) = forms.iter().find(|q| !q.is_zero()) else {
        return Vec::new();
    };
    rational_projective_roots(first)
        .into_iter()
        .filter(|(a, b)| forms.iter().all(|q| q.eval(a, b).is_zero()))
        .collect()
}
