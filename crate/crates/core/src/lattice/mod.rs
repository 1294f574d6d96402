//! The quantum phase space: normal-ordered Laurent monomials in `x_i, y_i`
//! with `QLaurent` coefficients.

mod monomial;

pub use monomial::{Block, LatticeMonomial};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qcoeff::QLaurent;

/// Result of a grading query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grade {
    Homogeneous(i64),
    Mixed,
    /// The zero element has every degree.
    Zero,
}

impl Grade {
    pub fn value(self) -> Option<i64> {
        match self {
            Grade::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

/// Finite linear combination of normal-ordered monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AqElement {
    terms: BTreeMap<LatticeMonomial, QLaurent>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl AqElement {
    pub fn zero() -> Self {
        AqElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(QLaurent::one())
    }

    pub fn scalar(c: QLaurent) -> Self {
        Self::term(LatticeMonomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::scalar(QLaurent::from_int(c))
    }

    pub fn term(m: LatticeMonomial, c: QLaurent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AqElement { terms }
    }

    pub fn monomial(m: LatticeMonomial) -> Self {
        Self::term(m, QLaurent::one())
    }

    pub fn x(i: i32) -> Self {
        Self::monomial(LatticeMonomial::x(i, 1))
    }

    pub fn y(i: i32) -> Self {
        Self::monomial(LatticeMonomial::y(i, 1))
    }

    pub fn x_inv(i: i32) -> Self {
        Self::monomial(LatticeMonomial::x(i, -1))
    }

    pub fn y_inv(i: i32) -> Self {
        Self::monomial(LatticeMonomial::y(i, -1))
    }

    /// `e_{2i-1} = (x_i y_i)^-1` and `e_{2i} = (y_i x_{i+1})^-1`, as elements.
    pub fn e(k: i32) -> Self {
        let (m, e) = Self::e_monomial(k);
        Self::term(m, QLaurent::q_pow(e))
    }

    /// Normal form of `e_k`: returns `(monomial, q-exponent)`.
    pub fn e_monomial(k: i32) -> (LatticeMonomial, i32) {
        let i = k.div_euclid(2) + k.rem_euclid(2);
        let word = if k.rem_euclid(2) == 1 {
            LatticeMonomial::from_blocks([(i, 1, 1)])
        } else {
            // y_i x_{i+1} is already normal
            LatticeMonomial::from_blocks([(i, 0, 1), (i + 1, 1, 0)])
        };
        word.inverse()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeMonomial, &QLaurent)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &LatticeMonomial) -> QLaurent {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> QLaurent {
        self.coeff(&LatticeMonomial::one())
    }

    /// Returns the single monomial and coefficient if the element has exactly one term.
    pub fn as_single_term(&self) -> Option<(&LatticeMonomial, &QLaurent)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: LatticeMonomial, c: &QLaurent) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (LatticeMonomial, QLaurent)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in it {
            out.add_term(m, &c);
        }
        out
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AqElement { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&QLaurent::from_int(c))
    }

    pub fn shift_q(&self, k: i32) -> Self {
        AqElement { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.shift_q(k))).collect() }
    }

    /// Applies `f` to every coefficient (must be additive to make sense).
    pub fn map_coeffs<F: Fn(&QLaurent) -> QLaurent>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<F: Fn(&QLaurent) -> Result<QLaurent>>(&self, f: F) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }

    pub fn exact_div_q_minus_1(&self) -> Result<Self> {
        self.try_map_coeffs(|c| c.exact_div_q_minus_1())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Minimal and maximal site touched by any term (constants ignored).
    pub fn support(&self) -> Option<(i32, i32)> {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for m in self.terms.keys() {
            if let (Some(a), Some(b)) = (m.min_site(), m.max_site()) {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn grade_by<F: Fn(&LatticeMonomial) -> i64>(&self, f: F) -> Grade {
        let mut it = self.terms.keys().map(f);
        let Some(first) = it.next() else {
            return Grade::Zero;
        };
        if it.all(|d| d == first) {
            Grade::Homogeneous(first)
        } else {
            Grade::Mixed
        }
    }

    /// `deg x_i = 1`, `deg y_i = -1`.
    pub fn degree(&self) -> Grade {
        self.grade_by(|m| m.degree())
    }

    /// `deg_p x_i = deg_p y_i = 1`.
    pub fn principal_degree(&self) -> Grade {
        self.grade_by(|m| m.principal_degree())
    }

    fn map_monomials<F: Fn(&LatticeMonomial) -> LatticeMonomial>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// `T^k`.
    pub fn translate(&self, k: i32) -> Self {
        if k == 0 {
            return self.clone();
        }
        AqElement { terms: self.terms.iter().map(|(m, c)| (m.translate(k), c.clone())).collect() }
    }

    /// `T^{1/2}`: `x_i -> y_i`, `y_i -> x_{i+1}`.
    pub fn half_translate(&self) -> Self {
        self.map_monomials(|m| m.half_translate())
    }

    /// The anti-automorphism `x_i -> y_{1-i}`, `y_i -> x_{1-i}`.
    pub fn phi(&self) -> Self {
        self.map_monomials(|m| m.phi())
    }

    /// Inverse of a single-term element with unit coefficient `c * s^e`.
    pub fn inverse_single(&self) -> Result<Self> {
        let (m, c) = self.as_single_term().ok_or(Error::NotInvertibleLeadingTerm)?;
        let cinv = QLaurent::one().div_exact(c).map_err(|_| Error::NotInvertibleLeadingTerm)?;
        let (mi, e) = m.inverse();
        Ok(Self::term(mi, cinv.shift_q(e)))
    }

    /// Coefficients specialized at `q = 1`.
    pub fn specialize_q1(&self) -> BTreeMap<LatticeMonomial, BigRational> {
        self.terms.iter().map(|(m, c)| (m.clone(), c.specialize_q1())).filter(|(_, c)| !c.is_zero()).collect()
    }

    /// True if every coefficient lies in `Q[q, q^-1]`.
    pub fn is_q_laurent(&self) -> bool {
        self.terms.values().all(|c| c.is_q_laurent())
    }
}

/// Inverse of a lattice monomial, as an element.
pub fn monomial_inverse(m: &LatticeMonomial) -> AqElement {
    let (mi, e) = m.inverse();
    AqElement::term(mi, QLaurent::q_pow(e))
}

/// `Sigma_{+,n} = x_1 + ... + x_n`, `Sigma_{-,n} = y_1 + ... + y_n`.
pub fn screening_window(sign: Sign, n: u32) -> AqElement {
    let mut out = AqElement::zero();
    for i in 1..=n as i32 {
        let g = match sign {
            Sign::Plus => AqElement::x(i),
            Sign::Minus => AqElement::y(i),
        };
        out = &out + &g;
    }
    out
}

/// Left side of the quantum Serre relation
/// `a^3 b - [3](a^2 b a - a b a^2) - b a^3` with `[3] = q + 1 + q^-1`.
pub fn serre_expression(a: &AqElement, b: &AqElement) -> AqElement {
    let a2 = a * a;
    let a3 = &a2 * a;
    let c = QLaurent::q_pow(1) + QLaurent::one() + QLaurent::q_pow(-1);
    let mid = &(&(&a2 * b) * a) - &(&(a * b) * &a2);
    &(&(&a3 * b) - &mid.scale(&c)) - &(b * &a3)
}

pub fn serre_check(a: &AqElement, b: &AqElement) -> bool {
    serre_expression(a, b).is_zero()
}

fn multiply(a: &AqElement, b: &AqElement) -> AqElement {
    if a.is_zero() || b.is_zero() {
        return AqElement::zero();
    }
    let mut acc: HashMap<LatticeMonomial, QLaurent> = HashMap::with_capacity(a.terms.len() * b.terms.len());
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let (m, e) = ma.mul(mb);
            let c = (ca * cb).shift_q(e);
            match acc.get_mut(&m) {
                Some(x) => *x += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
    }
    AqElement { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
}

impl Mul<&AqElement> for &AqElement {
    type Output = AqElement;
    fn mul(self, rhs: &AqElement) -> AqElement {
        multiply(self, rhs)
    }
}

impl Add<&AqElement> for &AqElement {
    type Output = AqElement;
    fn add(self, rhs: &AqElement) -> AqElement {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&AqElement> for &AqElement {
    type Output = AqElement;
    fn sub(self, rhs: &AqElement) -> AqElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Neg for &AqElement {
    type Output = AqElement;
    fn neg(self) -> AqElement {
        AqElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<AqElement> for AqElement {
            type Output = AqElement;
            fn $f(self, rhs: AqElement) -> AqElement {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&AqElement> for AqElement {
            type Output = AqElement;
            fn $f(self, rhs: &AqElement) -> AqElement {
                (&self).$f(rhs)
            }
        }
        impl $tr<AqElement> for &AqElement {
            type Output = AqElement;
            fn $f(self, rhs: AqElement) -> AqElement {
                self.$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for AqElement {
    type Output = AqElement;
    fn neg(self) -> AqElement {
        -&self
    }
}

impl fmt::Display for AqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", m, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for AqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}: {}", m, c)?;
        }
        write!(f, "}}")
    }
}

impl FromStr for AqElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (m, c) = line.split_once(':').ok_or_else(|| Error::Parse(format!("missing ':' in '{}'", line)))?;
            let m: LatticeMonomial = m.parse()?;
            let c: QLaurent = c.parse()?;
            out.add_term(m, &c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(e: i32) -> QLaurent {
        QLaurent::q_pow(e)
    }

    fn random_monomial(rng: &mut ChaCha8Rng) -> LatticeMonomial {
        let n = rng.gen_range(0..4);
        LatticeMonomial::from_blocks(
            (0..n).map(|_| (rng.gen_range(-3..=3), rng.gen_range(-2..=2), rng.gen_range(-2..=2))),
        )
    }

    fn random_element(rng: &mut ChaCha8Rng) -> AqElement {
        let mut out = AqElement::zero();
        for _ in 0..rng.gen_range(1..4) {
            let c = q(rng.gen_range(-2..=2)).scale(&BigRational::from_integer(rng.gen_range(-3i64..=3).into()));
            out.add_term(random_monomial(rng), &c);
        }
        out
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(
            &AqElement::x(1) * &AqElement::x(2),
            AqElement::monomial(LatticeMonomial::from_blocks([(1, 1, 0), (2, 1, 0)]))
        );
        assert_eq!(
            &AqElement::y(1) * &AqElement::x(1),
            AqElement::term(LatticeMonomial::from_blocks([(1, 1, 1)]), q(1))
        );
        let xy0 = AqElement::monomial(LatticeMonomial::from_blocks([(0, 1, 1)]));
        let u2 = &(&xy0.inverse_single().unwrap() * &AqElement::y_inv(0)).shift_q(-1);
        assert_eq!(u2 * &AqElement::y(0).pow(2), AqElement::x_inv(0));
    }

    #[test]
    fn pairwise_exchange_relations() {
        for (i, j) in [(0, 1), (-2, 3), (1, 2)] {
            let (xi, xj, yi, yj) = (AqElement::x(i), AqElement::x(j), AqElement::y(i), AqElement::y(j));
            assert_eq!(&xi * &xj, (&xj * &xi).scale(&q(1)));
            assert_eq!(&yi * &yj, (&yj * &yi).scale(&q(1)));
            assert_eq!(&yi * &xj, (&xj * &yi).scale(&q(-1)));
            assert_eq!(&xi * &yj, (&yj * &xi).scale(&q(-1)));
        }
        let (x, y) = (AqElement::x(4), AqElement::y(4));
        assert_eq!(&x * &y, (&y * &x).scale(&q(-1)));
    }

    #[test]
    fn degrees() {
        assert_eq!(AqElement::x(3).degree(), Grade::Homogeneous(1));
        assert_eq!(AqElement::e(1).degree(), Grade::Homogeneous(0));
        assert_eq!((AqElement::x(1) + AqElement::y(1)).degree(), Grade::Mixed);
        assert_eq!(AqElement::x(3).principal_degree(), Grade::Homogeneous(1));
        assert_eq!(AqElement::e(1).principal_degree(), Grade::Homogeneous(-2));
        assert_eq!((AqElement::e(1) + AqElement::e(2).pow(2)).principal_degree(), Grade::Mixed);
        assert_eq!(AqElement::zero().degree(), Grade::Zero);
    }

    #[test]
    fn half_translate_and_phi_examples() {
        assert_eq!(AqElement::e(1).half_translate(), AqElement::e(2));
        assert_eq!(AqElement::x(0).half_translate().half_translate(), AqElement::x(1));
        assert_eq!(AqElement::y(5).half_translate(), AqElement::x(6));
        assert_eq!(AqElement::x(0).phi(), AqElement::y(1));
        let x1y2 = &AqElement::x(1) * &AqElement::y(2);
        assert_eq!(x1y2.phi().phi(), x1y2);
        let lhs = (&AqElement::x(1) * &AqElement::y(1)).phi();
        assert_eq!(lhs, &AqElement::x(0) * &AqElement::y(0));
        // e_k chain: e_k e_{k+1} = q^-1 e_{k+1} e_k
        for k in -2..4 {
            let (a, b) = (AqElement::e(k), AqElement::e(k + 1));
            assert_eq!(&a * &b, (&b * &a).shift_q(-1), "k={k}");
        }
    }

    #[test]
    fn screening_and_serre() {
        assert_eq!(screening_window(Sign::Plus, 1), AqElement::x(1));
        assert_eq!(screening_window(Sign::Minus, 2), AqElement::y(1) + AqElement::y(2));
        assert!(serre_check(&AqElement::x(1), &AqElement::y(1)));
        assert!(serre_check(&screening_window(Sign::Plus, 3), &screening_window(Sign::Minus, 3)));
        assert!(serre_check(&screening_window(Sign::Minus, 3), &screening_window(Sign::Plus, 3)));
    }

    #[test]
    fn monomial_inverses() {
        let m = LatticeMonomial::from_blocks([(0, 1, 1)]);
        let inv = monomial_inverse(&m);
        assert_eq!(&AqElement::monomial(m.clone()) * &inv, AqElement::one());
        assert_eq!(&inv * &AqElement::monomial(m), AqElement::one());
        assert_eq!(monomial_inverse(&LatticeMonomial::x(1, 1)), AqElement::x_inv(1));
        assert_eq!(monomial_inverse(&LatticeMonomial::one()), AqElement::one());
    }

    #[test]
    fn random_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (a, b, c) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
        for _ in 0..100 {
            let (a, b) = (random_element(&mut rng), random_element(&mut rng));
            assert_eq!((&a * &b).half_translate(), &a.half_translate() * &b.half_translate());
            assert_eq!((&a * &b).phi(), &b.phi() * &a.phi());
            assert_eq!(a.phi().phi(), a);
            assert_eq!(a.half_translate().half_translate(), a.translate(1));
            assert_eq!((&a * &b).specialize_q1(), (&b * &a).specialize_q1());
            let m = random_monomial(&mut rng);
            let inv = monomial_inverse(&m);
            assert_eq!(&AqElement::monomial(m) * &inv, AqElement::one());
        }
    }

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = random_element(&mut rng);
            let back: AqElement = a.to_string().parse().unwrap();
            assert_eq!(back, a);
            assert_eq!(back.to_string(), a.to_string());
        }
        assert_eq!("0".parse::<AqElement>().unwrap(), AqElement::zero());
    }
}
