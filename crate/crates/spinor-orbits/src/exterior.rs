//! Exterior algebras over the fixed 5-dimensional space L: forms in Λ•L^∨,
//! polyvectors in Λ•L, wedge products, contraction, and the inverse of the
//! chosen top form Ω = e^∨_1 ∧ … ∧ e^∨_5.
//!
//! Monomials are indexed by subsets of {1,…,5} packed into a bitmask (bit
//! i−1 ↔ index i). Coefficient maps never store zeros, so structural
//! equality is semantic equality.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::scalar::Scalar;

pub type Mask = u8;

/// The full index set {1,2,3,4,5}.
pub const TOP_MASK: Mask = 0b1_1111;

pub fn mask_degree(m: Mask) -> usize {
    m.count_ones() as usize
}

pub fn mask_from_indices(indices: &[u8]) -> Mask {
    let mut m = 0;
    for &i in indices {
        assert!((1..=5).contains(&i), "index out of range");
        assert!(m & (1 << (i - 1)) == 0, "repeated index");
        m |= 1 << (i - 1);
    }
    m
}

pub fn mask_indices(m: Mask) -> Vec<u8> {
    (1..=5).filter(|i| m & (1 << (i - 1)) != 0).collect()
}

/// Key string: indices concatenated, "" for the empty subset.
pub fn mask_key(m: Mask) -> String {
    mask_indices(m).into_iter().map(|i| i.to_string()).collect()
}

pub fn mask_from_key(key: &str) -> Result<Mask, String> {
    let mut m: Mask = 0;
    let mut prev = 0u8;
    for ch in key.chars() {
        let d = ch.to_digit(10).ok_or_else(|| format!("bad monomial key {key:?}"))? as u8;
        if !(1..=5).contains(&d) || d <= prev {
            return Err(format!("bad monomial key {key:?}"));
        }
        m |= 1 << (d - 1);
        prev = d;
    }
    Ok(m)
}

fn sorted_by_degree(mut masks: Vec<Mask>) -> Vec<Mask> {
    masks.sort_by_key(|&m| (mask_degree(m), mask_indices(m)));
    masks
}

/// The 16 even-degree subsets in canonical (degree, lexicographic) order —
/// the coordinate order used for spinors everywhere, including JSON.
pub fn even_masks() -> &'static [Mask] {
    static CELL: OnceLock<Vec<Mask>> = OnceLock::new();
    CELL.get_or_init(|| sorted_by_degree((0u8..32).filter(|m| m.count_ones() % 2 == 0).collect()))
}

/// The 16 odd-degree subsets in the same canonical order.
pub fn odd_masks() -> &'static [Mask] {
    static CELL: OnceLock<Vec<Mask>> = OnceLock::new();
    CELL.get_or_init(|| sorted_by_degree((0u8..32).filter(|m| m.count_ones() % 2 == 1).collect()))
}

/// Sign of e_S ∧ e_T relative to e_{S∪T} for disjoint S, T: parity of the
/// number of pairs (a ∈ S, b ∈ T) with b < a.
pub fn wedge_sign(s: Mask, t: Mask) -> i32 {
    debug_assert!(s & t == 0);
    let mut inversions = 0u32;
    for a in 1..=5u8 {
        if s & (1 << (a - 1)) != 0 {
            inversions += (t & ((1 << (a - 1)) - 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn sign_scalar(sign: i32) -> Scalar {
    if sign >= 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

macro_rules! multivector_type {
    ($T:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, Default)]
        pub struct $T {
            coeffs: BTreeMap<Mask, Scalar>,
        }

        impl $T {
            pub fn zero() -> Self {
                $T { coeffs: BTreeMap::new() }
            }

            pub fn one() -> Self {
                Self::monomial(0)
            }

            pub fn monomial(m: Mask) -> Self {
                Self::term(m, Scalar::one())
            }

            pub fn term(m: Mask, c: Scalar) -> Self {
                let mut out = Self::zero();
                out.add_term(m, c);
                out
            }

            pub fn add_term(&mut self, m: Mask, c: Scalar) {
                if c.is_zero() {
                    return;
                }
                match self.coeffs.entry(m) {
                    Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    Entry::Occupied(mut e) => {
                        let v = &*e.get() + &c;
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                }
            }

            pub fn coeff(&self, m: Mask) -> Scalar {
                self.coeffs.get(&m).cloned().unwrap_or_else(Scalar::zero)
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn terms(&self) -> impl Iterator<Item = (Mask, &Scalar)> {
                self.coeffs.iter().map(|(m, c)| (*m, c))
            }

            pub fn support(&self) -> Vec<Mask> {
                self.coeffs.keys().copied().collect()
            }

            pub fn part_of_degree(&self, k: usize) -> Self {
                let mut out = Self::zero();
                for (m, c) in self.terms() {
                    if mask_degree(m) == k {
                        out.add_term(m, c.clone());
                    }
                }
                out
            }

            /// Degree when homogeneous; zero counts as homogeneous of any
            /// degree and reports None.
            pub fn homogeneous_degree(&self) -> Result<Option<usize>, String> {
                let mut deg = None;
                for (m, _) in self.terms() {
                    let d = mask_degree(m);
                    match deg {
                        None => deg = Some(d),
                        Some(e) if e != d => {
                            return Err("non-homogeneous".to_string());
                        }
                        _ => {}
                    }
                }
                Ok(deg)
            }

            pub fn scale(&self, c: &Scalar) -> Self {
                let mut out = Self::zero();
                if c.is_zero() {
                    return out;
                }
                for (m, v) in self.terms() {
                    out.add_term(m, v * c);
                }
                out
            }

            fn render(&self, f: &mut fmt::Formatter<'_>, dual_marker: &str) -> fmt::Result {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let order = sorted_by_degree(self.support());
                for (k, m) in order.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    let c = self.coeff(*m);
                    let mono = if *m == 0 {
                        "1".to_string()
                    } else {
                        format!("e{}{}", mask_key(*m), dual_marker)
                    };
                    if *m == 0 {
                        write!(f, "{}", c.display_compact())?;
                    } else if c.is_one() {
                        write!(f, "{mono}")?;
                    } else if (-&c).is_one() {
                        write!(f, "-{mono}")?;
                    } else {
                        let cs = c.display_compact();
                        if cs[1..].contains('+') || cs[1..].contains('-') {
                            write!(f, "({cs})*{mono}")?;
                        } else {
                            write!(f, "{cs}*{mono}")?;
                        }
                    }
                }
                Ok(())
            }
        }

        impl std::ops::Add<&$T> for &$T {
            type Output = $T;
            fn add(self, rhs: &$T) -> $T {
                let mut out = self.clone();
                for (m, c) in rhs.terms() {
                    out.add_term(m, c.clone());
                }
                out
            }
        }

        impl std::ops::Sub<&$T> for &$T {
            type Output = $T;
            fn sub(self, rhs: &$T) -> $T {
                let mut out = self.clone();
                for (m, c) in rhs.terms() {
                    out.add_term(m, -c);
                }
                out
            }
        }

        impl std::ops::Neg for &$T {
            type Output = $T;
            fn neg(self) -> $T {
                self.scale(&-Scalar::one())
            }
        }

        impl fmt::Debug for $T {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }
    };
}

multivector_type!(Form, "Element of Λ•L^∨; monomial e^∨_S per subset S.");
multivector_type!(Polyvector, "Element of Λ•L; monomial e_S per subset S.");

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, "^")
    }
}

impl fmt::Display for Polyvector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, "")
    }
}

impl Form {
    pub fn even_part(&self) -> Form {
        let mut out = Form::zero();
        for (m, c) in self.terms() {
            if mask_degree(m) % 2 == 0 {
                out.add_term(m, c.clone());
            }
        }
        out
    }

    pub fn odd_part(&self) -> Form {
        &*self - &self.even_part()
    }
}

pub fn wedge(a: &Form, b: &Form) -> Form {
    let mut out = Form::zero();
    for (s, cs) in a.terms() {
        for (t, ct) in b.terms() {
            if s & t != 0 {
                continue;
            }
            out.add_term(s | t, &(cs * ct) * sign_scalar(wedge_sign(s, t)));
        }
    }
    out
}

/// Single contraction ι_{e_j}: an anti-derivation of degree −1.
fn contract_index(j: u8, f: &Form) -> Form {
    let bit = 1 << (j - 1);
    let mut out = Form::zero();
    for (t, c) in f.terms() {
        if t & bit == 0 {
            continue;
        }
        let below = (t & (bit - 1)).count_ones();
        let sign = if below % 2 == 0 { 1 } else { -1 };
        out.add_term(t & !bit, c * sign_scalar(sign));
    }
    out
}

/// Contraction of a form by a polyvector. For a monomial e_S with
/// S = {s1 < … < sk} this is the composition ι_{e_{s1}} ∘ … ∘ ι_{e_{sk}},
/// the largest index acting first; extended bilinearly.
pub fn contract(p: &Polyvector, a: &Form) -> Form {
    let mut out = Form::zero();
    for (s, cs) in p.terms() {
        let mut acc = a.clone();
        for j in mask_indices(s).into_iter().rev() {
            acc = contract_index(j, &acc);
        }
        for (t, c) in acc.terms() {
            out.add_term(t, c * cs);
        }
    }
    out
}

/// The perfect pairing ⟨e_S, e^∨_T⟩ = δ_{S,T}, extended bilinearly.
pub fn pairing(p: &Polyvector, a: &Form) -> Scalar {
    let mut acc = Scalar::zero();
    for (s, c) in p.terms() {
        let av = a.coeff(s);
        if !av.is_zero() {
            acc += c * &av;
        }
    }
    acc
}

/// Inverse of the top form: the unique polyvector with
/// a ∧ μ = ⟨omega_inv(a), μ⟩ · Ω for every form μ of complementary degree.
/// Input must be homogeneous.
pub fn omega_inv(a: &Form) -> Result<Polyvector, String> {
    a.homogeneous_degree()?;
    let mut out = Polyvector::zero();
    for (s, c) in a.terms() {
        let comp = TOP_MASK & !s;
        out.add_term(comp, c * sign_scalar(wedge_sign(s, comp)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(indices: &[u8]) -> Form {
        Form::monomial(mask_from_indices(indices))
    }

    fn pv(indices: &[u8]) -> Polyvector {
        Polyvector::monomial(mask_from_indices(indices))
    }

    #[test]
    fn canonical_mask_orders() {
        let even: Vec<String> = even_masks().iter().map(|&m| mask_key(m)).collect();
        assert_eq!(
            even,
            ["", "12", "13", "14", "15", "23", "24", "25", "34", "35", "45", "1234", "1235",
             "1245", "1345", "2345"]
        );
        let odd: Vec<String> = odd_masks().iter().map(|&m| mask_key(m)).collect();
        assert_eq!(
            odd,
            ["1", "2", "3", "4", "5", "123", "124", "125", "134", "135", "145", "234", "235",
             "245", "345", "12345"]
        );
        for key in even {
            assert_eq!(mask_key(mask_from_key(&key).unwrap()), key);
        }
        assert!(mask_from_key("21").is_err());
        assert!(mask_from_key("16").is_err());
        assert!(mask_from_key("141").is_err());
    }

    #[test]
    fn wedge_basics() {
        assert_eq!(wedge(&fm(&[1]), &fm(&[2])), fm(&[1, 2]));
        assert_eq!(wedge(&fm(&[2]), &fm(&[1])), -&fm(&[1, 2]));
        assert!(wedge(&fm(&[1, 2]), &fm(&[1, 2])).is_zero());
        let psi = &fm(&[2, 3]) + &fm(&[4, 5]);
        assert_eq!(wedge(&psi, &psi), fm(&[2, 3, 4, 5]).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn wedge_is_graded_commutative_and_associative() {
        let forms = [
            fm(&[1]),
            fm(&[3]),
            &fm(&[2]) + &fm(&[5]),
            fm(&[1, 4]),
            &fm(&[2, 3]) + &fm(&[4, 5]),
            fm(&[1, 2, 3]),
        ];
        for a in &forms {
            for b in &forms {
                for c in &forms {
                    assert_eq!(wedge(&wedge(a, b), c), wedge(a, &wedge(b, c)));
                }
                // homogeneous graded commutativity
                let da = a.homogeneous_degree().unwrap().unwrap_or(0);
                let db = b.homogeneous_degree().unwrap().unwrap_or(0);
                let sign = if (da * db) % 2 == 0 { 1 } else { -1 };
                assert_eq!(wedge(a, b), wedge(b, a).scale(&sign_scalar(sign)));
            }
        }
    }

    #[test]
    fn contraction_spot_checks() {
        assert_eq!(contract(&pv(&[1]), &fm(&[1])), Form::one());
        assert!(contract(&pv(&[1]), &fm(&[2, 3])).is_zero());
        // declared order: ι_{e_2} ∘ ι_{e_3}
        assert_eq!(contract(&pv(&[2, 3]), &fm(&[2, 3])), Form::term(0, -Scalar::one()));
        assert_eq!(contract(&pv(&[4, 5]), &fm(&[4, 5])), Form::term(0, -Scalar::one()));
        // anti-derivation in degree 1: ι_{e_2}(e^∨_{12}) = -e^∨_1
        assert_eq!(contract(&pv(&[2]), &fm(&[1, 2])), -&fm(&[1]));
        assert_eq!(contract(&pv(&[2]), &fm(&[2, 3])), fm(&[3]));
    }

    #[test]
    fn degree_one_contraction_is_an_antiderivation() {
        let p = pv(&[3]);
        let pairs = [
            (fm(&[1]), fm(&[3])),
            (fm(&[3]), fm(&[4, 5])),
            (&fm(&[2, 3]) + &fm(&[4, 5]), fm(&[1, 3])),
            (fm(&[1, 3]), &fm(&[2]) + &fm(&[4])),
        ];
        for (a, b) in &pairs {
            let lhs = contract(&p, &wedge(a, b));
            let da = a.homogeneous_degree().unwrap().unwrap_or(0);
            let sign = if da % 2 == 0 { 1 } else { -1 };
            let rhs = &wedge(&contract(&p, a), b)
                + &wedge(a, &contract(&p, b)).scale(&sign_scalar(sign));
            assert_eq!(lhs, rhs, "Leibniz fails on {a:?}, {b:?}");
        }
    }

    #[test]
    fn pairing_is_perfect_on_monomials() {
        for &s in even_masks().iter().chain(odd_masks()) {
            for &t in even_masks().iter().chain(odd_masks()) {
                let want = if s == t { Scalar::one() } else { Scalar::zero() };
                assert_eq!(pairing(&Polyvector::monomial(s), &Form::monomial(t)), want);
            }
        }
    }

    #[test]
    fn omega_inv_pins() {
        // Ω ↦ 1
        assert_eq!(omega_inv(&fm(&[1, 2, 3, 4, 5])).unwrap(), Polyvector::one());
        // 1 ↦ e_{12345}
        assert_eq!(omega_inv(&Form::one()).unwrap(), pv(&[1, 2, 3, 4, 5]));
        // e^∨_{2345} ↦ +e_1 in this orientation
        assert_eq!(omega_inv(&fm(&[2, 3, 4, 5])).unwrap(), pv(&[1]));
        // and the sign is genuinely the pairing sign: e^∨_{1345} ∧ e^∨_2 = -Ω
        assert_eq!(omega_inv(&fm(&[1, 3, 4, 5])).unwrap(), -&pv(&[2]));
        assert!(omega_inv(&(&Form::one() + &fm(&[1, 2]))).is_err());
        assert!(omega_inv(&Form::zero()).unwrap().is_zero());
    }

    #[test]
    fn omega_inv_satisfies_its_defining_identity() {
        // a ∧ μ = ⟨Ω^{-1}(a), μ⟩ Ω over all monomial pairs
        for s in 0..32u8 {
            let a = Form::monomial(s);
            let inv = omega_inv(&a).unwrap();
            for t in 0..32u8 {
                if mask_degree(t as Mask) != 5 - mask_degree(s) {
                    continue;
                }
                let mu = Form::monomial(t);
                let lhs = wedge(&a, &mu).coeff(TOP_MASK);
                let rhs = pairing(&inv, &mu);
                assert_eq!(lhs, rhs, "pairing identity fails at S={s:02x} T={t:02x}");
            }
        }
    }

    #[test]
    fn display_uses_monomial_notation() {
        let psi = &(&Form::one() + &fm(&[2, 3])) + &fm(&[4, 5]);
        assert_eq!(psi.to_string(), "1 + e23^ + e45^");
        let x = fm(&[1, 2]).scale(&Scalar::gauss(0, 1, -1, 1));
        assert_eq!(x.to_string(), "-i*e12^");
        let y = fm(&[1]).scale(&Scalar::gauss(1, 1, 1, 1));
        assert_eq!(y.to_string(), "(1+i)*e1^");
        let z = fm(&[1]).scale(&Scalar::rational(-1, 2));
        assert_eq!(z.to_string(), "-1/2*e1^");
        assert_eq!(pv(&[1, 2]).to_string(), "e12");
        assert_eq!(Form::zero().to_string(), "0");
    }
}
