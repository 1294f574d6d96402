//! Exact scalars: Laurent polynomials in `s` with `q = s^4`, Gaussian integers
//! and binomials, and reduced rational functions for coefficient formulas.

mod fraction;
mod mpoly;

pub use fraction::QFraction;
pub use mpoly::{MPoly, VAR_A, VAR_B, VAR_Q};

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial in `s` over the rationals; `q = s^4`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so structural
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    terms: Vec<(i32, BigRational)>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    /// `c * s^e`.
    pub fn monomial(e: i32, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            QLaurent { terms: vec![(e, c)] }
        }
    }

    pub fn s_pow(e: i32) -> Self {
        Self::monomial(e, BigRational::one())
    }

    pub fn q_pow(e: i32) -> Self {
        Self::s_pow(4 * e)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(it: I) -> Self {
        let mut v: Vec<(i32, BigRational)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, BigRational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        QLaurent { terms: out }
    }

    pub fn terms(&self) -> &[(i32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// True when every exponent is a multiple of 4, i.e. the value lies in `Q[q, q^-1]`.
    pub fn is_q_laurent(&self) -> bool {
        self.terms.iter().all(|t| t.0 % 4 == 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QLaurent { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        QLaurent { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift_q(&self, k: i32) -> Self {
        self.shift(4 * k)
    }

    /// The automorphism `s -> s^-1`.
    pub fn invert_s(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        QLaurent { terms }
    }

    pub fn eval(&self, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rat(s, *e);
        }
        acc
    }

    pub fn specialize_q1(&self) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (_, c)| acc + c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`, or `NotDivisible`.
    pub fn div_exact(&self, d: &QLaurent) -> Result<QLaurent> {
        if d.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (dmin, dmax) = (d.min_exp().unwrap(), d.max_exp().unwrap());
        let lowest_allowed = self.min_exp().unwrap() - dmin;
        let dlc = d.terms.last().unwrap().1.clone();
        let mut rem = self.clone();
        let mut quot: Vec<(i32, BigRational)> = Vec::new();
        while let Some((he, hc)) = rem.terms.last().cloned() {
            let qe = he - dmax;
            if qe < lowest_allowed {
                return Err(Error::NotDivisible(format!("{} by {}", self, d)));
            }
            let qc = hc / &dlc;
            let step = d.shift(qe).scale(&qc);
            rem = &rem - &step;
            quot.push((qe, qc));
        }
        Ok(Self::from_terms(quot))
    }

    /// Exact quotient by `q - 1`.
    pub fn exact_div_q_minus_1(&self) -> Result<QLaurent> {
        self.div_exact(&(Self::q_pow(1) - Self::one()))
    }
}

fn pow_rat(x: &BigRational, e: i32) -> BigRational {
    let mut acc = BigRational::one();
    let base = if e < 0 { x.recip() } else { x.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn merge(a: &QLaurent, b: &QLaurent, negate_b: bool) -> QLaurent {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let take_a = j >= b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
        let take_b = i >= a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
        if take_a {
            out.push(a.terms[i].clone());
            i += 1;
        } else if take_b {
            let (e, c) = &b.terms[j];
            out.push((*e, if negate_b { -c } else { c.clone() }));
            j += 1;
        } else {
            let c = if negate_b { &a.terms[i].1 - &b.terms[j].1 } else { &a.terms[i].1 + &b.terms[j].1 };
            if !c.is_zero() {
                out.push((a.terms[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    QLaurent { terms: out }
}

impl Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        merge(self, rhs, false)
    }
}

impl Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        merge(self, rhs, true)
    }
}

impl Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return QLaurent { terms: self.terms.iter().map(|(f, d)| (f + e, d * c)).collect() };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let lo = self.min_exp().unwrap() + rhs.min_exp().unwrap();
        let hi = self.max_exp().unwrap() + rhs.max_exp().unwrap();
        let mut dense: Vec<BigRational> = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                dense[(e + f - lo) as usize] += c * d;
            }
        }
        QLaurent {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (lo + k as i32, c))
                .collect(),
        }
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $f(self, rhs: QLaurent) -> QLaurent {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $f(self, rhs: &QLaurent) -> QLaurent {
                (&self).$f(rhs)
            }
        }
        impl $tr<QLaurent> for &QLaurent {
            type Output = QLaurent;
            fn $f(self, rhs: QLaurent) -> QLaurent {
                self.$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QLaurent> for QLaurent {
    fn sub_assign(&mut self, rhs: &QLaurent) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}*s^{}", c, e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({})", self)
    }
}

impl FromStr for QLaurent {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        // Split on '+' that separates terms; a coefficient may itself start
        // with '-', which never follows '+' ambiguously in the canonical form.
        let mut terms = Vec::new();
        for part in text.split('+') {
            let (c, e) = part.split_once("*s^").ok_or_else(|| Error::Parse(format!("bad Laurent term '{}'", part)))?;
            let c: BigRational = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient '{}'", c)))?;
            let e: i32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent '{}'", e)))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

/// Gaussian integer `[p] = (q^p - 1)/(q - 1)`; for negative `p` this is `-q^p [-p]`.
pub fn q_int(p: i64) -> QLaurent {
    let one = BigRational::one();
    if p >= 0 {
        QLaurent::from_terms((0..p).map(|k| (4 * k as i32, one.clone())))
    } else {
        QLaurent::from_terms((p..0).map(|k| (4 * k as i32, -one.clone())))
    }
}

/// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
pub fn q_factorial(n: u32) -> QLaurent {
    (1..=n as i64).fold(QLaurent::one(), |acc, k| &acc * &q_int(k))
}

/// Gaussian binomial with the conventions: 1 when `b = 0`, 0 when `b < 0` or
/// `b > max(0, a)`, otherwise `[a]!/([b]![a-b]!)`.
pub fn q_binomial(a: i64, b: i64) -> QLaurent {
    if b == 0 {
        return QLaurent::one();
    }
    if b < 0 || b > a.max(0) {
        return QLaurent::zero();
    }
    // prod_{k=1}^{b} [a-b+k]/[k], each partial product stays polynomial.
    let mut acc = QLaurent::one();
    for k in 1..=b {
        acc =
            (&acc * &q_int(a - b + k)).div_exact(&q_int(k)).expect("partial Gaussian binomial products are polynomial");
    }
    acc
}

/// `F_q(a_1..a_N) = prod_i C(a_i + a_{i+1} - 1, a_{i+1})` with `a_{N+1} = 0`.
pub fn f_q(a: &[i64]) -> QLaurent {
    let mut acc = QLaurent::one();
    for i in 0..a.len() {
        let next = a.get(i + 1).copied().unwrap_or(0);
        let c = q_binomial(a[i] + next - 1, next);
        if c.is_zero() {
            return c;
        }
        acc = &acc * &c;
    }
    acc
}

/// True when `x` has no negative part (helper for tests and report formatting).
pub fn is_nonneg_integer_coeffs(x: &QLaurent) -> bool {
    x.terms().iter().all(|(_, c)| c.is_integer() && !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i32) -> QLaurent {
        QLaurent::q_pow(e)
    }
    fn int(c: i64) -> QLaurent {
        QLaurent::from_int(c)
    }
    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn q_int_values() {
        assert!(q_int(0).is_zero());
        assert!(q_int(1).is_one());
        assert_eq!(q_int(3), q(2) + q(1) + int(1));
        // [-2] = (q^-2 - 1)/(q - 1) = -q^-2 - q^-1
        assert_eq!(q_int(-2), -(q(-2) + q(-1)));
        for p in 0..=50 {
            assert_eq!(q_int(p).specialize_q1(), BigRational::from_integer(p.into()));
        }
    }

    #[test]
    fn binomial_cases() {
        assert!(q_binomial(5, 0).is_one());
        assert!(q_binomial(1, 2).is_zero());
        assert!(q_binomial(-3, -1).is_zero());
        assert!(q_binomial(-1, 0).is_one());
        assert!(q_binomial(-1, 1).is_zero());
        assert_eq!(q_binomial(2, 1), q(1) + int(1));
        assert_eq!(q_binomial(4, 2).specialize_q1(), rat(6, 1));
    }

    #[test]
    fn binomial_factorial_identity() {
        for a in 0..=12i64 {
            for b in 0..=a {
                let lhs = &(&q_binomial(a, b) * &q_factorial(b as u32)) * &q_factorial((a - b) as u32);
                assert_eq!(lhs, q_factorial(a as u32), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn pascal_recurrence() {
        for a in 1..=12i64 {
            for b in 1..=a {
                let rhs = q_binomial(a - 1, b - 1) + q(b as i32) * q_binomial(a - 1, b);
                assert_eq!(q_binomial(a, b), rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn f_q_examples() {
        assert!(f_q(&[1, 0]).is_one());
        assert!(f_q(&[1, 1]).is_one());
        assert_eq!(f_q(&[2, 1]), q(1) + int(1));
        assert!(f_q(&[1, 0, 1]).is_zero());
        assert!(f_q(&[]).is_one());
    }

    #[test]
    fn division_by_q_minus_one() {
        assert_eq!((q(2) - int(1)).exact_div_q_minus_1().unwrap(), q(1) + int(1));
        assert!(int(0).exact_div_q_minus_1().unwrap().is_zero());
        assert_eq!((q(3) - q(1)).exact_div_q_minus_1().unwrap(), q(2) + q(1));
        assert!(matches!((q(1) + int(1)).exact_div_q_minus_1(), Err(Error::NotDivisible(_))));
        // s - 1 does not divide by q - 1 even though it vanishes at s = 1.
        assert!((QLaurent::s_pow(1) - int(1)).exact_div_q_minus_1().is_err());
        // negative exponents
        assert_eq!((int(1) - q(-1)).exact_div_q_minus_1().unwrap(), q(-1));
    }

    #[test]
    fn specialization() {
        assert_eq!((q(1) + int(1)).specialize_q1(), rat(2, 1));
        assert_eq!(q_int(5).specialize_q1(), rat(5, 1));
        assert_eq!((q(1) + int(1)).eval(&rat(1, 2)), rat(17, 16));
    }

    #[test]
    fn text_round_trip() {
        let x = QLaurent::from_terms(vec![(4, rat(-3, 2)), (-1, rat(1, 1)), (0, rat(7, 3))]);
        let s = x.to_string();
        assert_eq!(s, "1*s^-1+7/3*s^0+-3/2*s^4");
        assert_eq!(s.parse::<QLaurent>().unwrap(), x);
        assert_eq!("0".parse::<QLaurent>().unwrap(), QLaurent::zero());
        assert!("garbage".parse::<QLaurent>().is_err());
    }

    #[test]
    fn ring_axioms_small() {
        let a = q(1) + int(2);
        let b = QLaurent::s_pow(-3) - q(2);
        let c = q_int(4);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a * &b, &b * &a);
        assert!((&a - &a).is_zero());
        assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        assert_eq!(a.invert_s().invert_s(), a);
    }
}
