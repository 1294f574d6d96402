use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::mpoly::{MPoly, VAR_A, VAR_B, VAR_Q};
use super::QLaurent;
use crate::error::{Error, Result};

/// Reduced rational function in `(q, lambda^-1, mu^-1)`.
///
/// Always stored reduced: numerator and denominator coprime, denominator with
/// lexicographically leading coefficient 1. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFraction {
    num: MPoly,
    den: MPoly,
}

impl QFraction {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        Ok(Self::reduce_parts(num, den))
    }

    fn reduce_parts(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return QFraction { num, den: MPoly::one() };
        }
        let g = MPoly::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        let inv = lc.recip();
        QFraction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    /// Re-reduces; a no-op on values built through the public API.
    pub fn reduce(&self) -> Self {
        Self::reduce_parts(self.num.clone(), self.den.clone())
    }

    pub fn zero() -> Self {
        QFraction { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(MPoly::from_int(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn from_poly(p: MPoly) -> Self {
        QFraction { num: p, den: MPoly::one() }
    }

    pub fn q() -> Self {
        Self::from_poly(MPoly::var(VAR_Q))
    }

    pub fn lambda_inv() -> Self {
        Self::from_poly(MPoly::var(VAR_A))
    }

    pub fn mu_inv() -> Self {
        Self::from_poly(MPoly::var(VAR_B))
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        if k >= 0 {
            Self::from_poly(MPoly::var_pow(VAR_Q, k as u32))
        } else {
            QFraction { num: MPoly::one(), den: MPoly::var_pow(VAR_Q, (-k) as u32) }
        }
    }

    /// Embeds a Laurent polynomial in `q`; fails if some `s`-exponent is not a multiple of 4.
    pub fn from_qlaurent(x: &QLaurent) -> Result<Self> {
        if !x.is_q_laurent() {
            return Err(Error::Precondition(format!("{} is not a Laurent polynomial in q", x)));
        }
        let Some(lo) = x.min_exp() else {
            return Ok(Self::zero());
        };
        let shift = (lo / 4).min(0);
        let mut num = MPoly::zero();
        for (e, c) in x.terms() {
            let k = (e / 4 - shift) as u32;
            num = &num + &MPoly::term([k, 0, 0], c.clone());
        }
        Self::new(num, MPoly::var_pow(VAR_Q, (-shift) as u32))
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::SingularSystem);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Equality by cross multiplication, independent of the stored normal form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    /// The polynomial value, if the denominator is a constant.
    pub fn to_poly(&self) -> Option<MPoly> {
        if self.is_polynomial() {
            let c = self.den.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::one);
            Some(self.num.scale(&c.recip()))
        } else {
            None
        }
    }

    /// The value as a Laurent polynomial in `q`, if it is one (no `lambda`, `mu`,
    /// denominator a monomial in `q`).
    pub fn to_qlaurent(&self) -> Option<QLaurent> {
        if self.num.uses_var(VAR_A) || self.num.uses_var(VAR_B) || self.den.uses_var(VAR_A) || self.den.uses_var(VAR_B)
        {
            return None;
        }
        let mut it = self.den.terms();
        let (de, dc) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        let dk = de[VAR_Q] as i32;
        let inv = dc.recip();
        Some(QLaurent::from_terms(self.num.terms().map(|(e, c)| (4 * (e[VAR_Q] as i32 - dk), c * &inv))))
    }
}

impl Add<&QFraction> for &QFraction {
    type Output = QFraction;
    fn add(self, rhs: &QFraction) -> QFraction {
        if self.den == rhs.den {
            return QFraction::reduce_parts(&self.num + &rhs.num, self.den.clone());
        }
        QFraction::reduce_parts(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub<&QFraction> for &QFraction {
    type Output = QFraction;
    fn sub(self, rhs: &QFraction) -> QFraction {
        self + &(-rhs)
    }
}

impl Mul<&QFraction> for &QFraction {
    type Output = QFraction;
    fn mul(self, rhs: &QFraction) -> QFraction {
        if self.is_zero() || rhs.is_zero() {
            return QFraction::zero();
        }
        QFraction::reduce_parts(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&QFraction> for &QFraction {
    type Output = Result<QFraction>;
    fn div(self, rhs: &QFraction) -> Result<QFraction> {
        #[allow(clippy::suspicious_arithmetic_impl)]
        Ok(self * &rhs.recip()?)
    }
}

impl Neg for &QFraction {
    type Output = QFraction;
    fn neg(self) -> QFraction {
        QFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl Zero for QFraction {
    fn zero() -> Self {
        QFraction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for QFraction {
    type Output = QFraction;
    fn add(self, rhs: QFraction) -> QFraction {
        &self + &rhs
    }
}

impl fmt::Debug for QFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] / [{:?}]", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng) -> MPoly {
        let mut p = MPoly::zero();
        for _ in 0..rng.gen_range(1..4) {
            let e = [rng.gen_range(0..3), rng.gen_range(0..2), rng.gen_range(0..2)];
            let c = BigRational::from_integer(rng.gen_range(-3i64..=3).into());
            p = &p + &MPoly::term(e, c);
        }
        p
    }

    #[test]
    fn reduce_idempotent_and_cross_eq() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = random_poly(&mut rng);
            let mut d = random_poly(&mut rng);
            if d.is_zero() {
                d = MPoly::one();
            }
            let common = random_poly(&mut rng);
            let common = if common.is_zero() { MPoly::one() } else { common };
            let x = QFraction::new(&n * &common, &d * &common).unwrap();
            assert_eq!(x.reduce(), x);
            let y = QFraction::new(n.clone(), d.clone()).unwrap();
            assert_eq!(x == y, x.cross_eq(&y));
            assert!(x == y);

            let m = random_poly(&mut rng);
            let mut e = random_poly(&mut rng);
            if e.is_zero() {
                e = MPoly::one();
            }
            let z = QFraction::new(m, e).unwrap();
            assert_eq!(x == z, x.cross_eq(&z));
        }
    }

    #[test]
    fn laurent_embedding() {
        let x = QLaurent::q_pow(-2) + QLaurent::from_int(3) + QLaurent::q_pow(1);
        let f = QFraction::from_qlaurent(&x).unwrap();
        assert_eq!(f.to_qlaurent().unwrap(), x);
        assert!(QFraction::from_qlaurent(&QLaurent::s_pow(1)).is_err());
    }

    #[test]
    fn field_ops() {
        let a = QFraction::lambda_inv();
        let b = QFraction::mu_inv();
        let d = &a - &b;
        let x = (&(&(&a * &a) - &(&b * &b)) / &d).unwrap();
        assert_eq!(x, &a + &b);
        let inv = d.recip().unwrap();
        assert_eq!(&inv * &d, QFraction::one());
        assert_eq!(&QFraction::q_pow(-3) * &QFraction::q_pow(3), QFraction::one());
    }
}
