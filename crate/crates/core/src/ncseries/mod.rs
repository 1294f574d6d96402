//! Truncated series in `lambda^-1` (and `mu^-1`) with coefficients in `A_q`.
//!
//! A series carries the largest power of `lambda^-1` up to which its
//! coefficients are known (`None` means exact). Arithmetic propagates these
//! bounds so that no operation reports a coefficient it cannot know.

mod bi;
mod chain;
mod fraction;

pub use bi::{diagonal_checked_upto, divide_by_lambda_minus_mu, NcBiSeries};
pub use chain::{check_aba, check_qbinomial_product, ChainElement};
pub use fraction::{
    basi_coefficients, check_basi, cont_frac_u, cont_frac_v, ln_q, ln_q_factorial_cleared, nested_fraction,
    FractionSide,
};

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::lattice::AqElement;

pub(crate) fn min_bound(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

pub(crate) fn add_bound(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

/// Series `sum_k c_k lambda^-k`; finitely many negative `k` allowed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcSeries {
    coeffs: BTreeMap<i32, AqElement>,
    order: Option<i32>,
}

impl NcSeries {
    pub fn zero() -> Self {
        NcSeries { coeffs: BTreeMap::new(), order: None }
    }

    pub fn one() -> Self {
        Self::constant(AqElement::one())
    }

    pub fn constant(a: AqElement) -> Self {
        Self::term(0, a)
    }

    /// `a * lambda^-k`, exact.
    pub fn term(k: i32, a: AqElement) -> Self {
        let mut coeffs = BTreeMap::new();
        if !a.is_zero() {
            coeffs.insert(k, a);
        }
        NcSeries { coeffs, order: None }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i32, AqElement)>>(it: I, order: Option<i32>) -> Self {
        let mut s = NcSeries::zero();
        for (k, a) in it {
            s.add_coeff(k, &a);
        }
        s.with_order(order)
    }

    fn add_coeff(&mut self, k: i32, a: &AqElement) {
        if a.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        *slot = &*slot + a;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn order(&self) -> Option<i32> {
        self.order
    }

    /// Lowers the truncation bound to `order` (never raises it).
    pub fn with_order(mut self, order: Option<i32>) -> Self {
        self.order = min_bound(self.order, order);
        if let Some(k) = self.order {
            self.coeffs.retain(|&p, _| p <= k);
        }
        self
    }

    pub fn truncate(self, k: i32) -> Self {
        self.with_order(Some(k))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i32, &AqElement)> {
        self.coeffs.iter().map(|(k, a)| (*k, a))
    }

    /// Coefficient of `lambda^-k`, or `OutOfTruncation` if it is not known.
    pub fn coeff(&self, k: i32) -> Result<AqElement> {
        if self.order.is_some_and(|o| k > o) {
            return Err(Error::OutOfTruncation);
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_default())
    }

    /// Lowest power with nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    /// Lower bound on the valuation usable for bound propagation (`None` = infinite).
    fn valuation_bound(&self) -> Option<i32> {
        self.valuation().or(self.order.map(|k| k + 1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Applies an additive map to every coefficient.
    pub fn map_coeffs<F: Fn(&AqElement) -> AqElement>(&self, f: F) -> Self {
        NcSeries::from_coeffs(self.coeffs.iter().map(|(k, a)| (*k, f(a))), self.order)
    }

    pub fn try_map_coeffs<F: Fn(&AqElement) -> Result<AqElement>>(&self, f: F) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (k, a) in &self.coeffs {
            out.push((*k, f(a)?));
        }
        Ok(NcSeries::from_coeffs(out, self.order))
    }

    pub fn try_map_coeffs_indexed<F: Fn(i32, &AqElement) -> Result<AqElement>>(&self, f: F) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (k, a) in &self.coeffs {
            out.push((*k, f(*k, a)?));
        }
        Ok(NcSeries::from_coeffs(out, self.order))
    }

    pub fn half_translate(&self) -> Self {
        self.map_coeffs(|a| a.half_translate())
    }

    pub fn translate(&self, k: i32) -> Self {
        self.map_coeffs(|a| a.translate(k))
    }

    /// Multiply by `lambda^-k`.
    pub fn shift(&self, k: i32) -> Self {
        NcSeries {
            coeffs: self.coeffs.iter().map(|(p, a)| (p + k, a.clone())).collect(),
            order: self.order.map(|o| o + k),
        }
    }

    pub fn left_mul_elem(&self, a: &AqElement) -> Self {
        self.map_coeffs(|c| a * c)
    }

    pub fn right_mul_elem(&self, a: &AqElement) -> Self {
        self.map_coeffs(|c| c * a)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(NcSeries::one(), |acc, _| &acc * self)
    }

    /// Two-sided inverse up to the propagated order. Needs a finite order.
    pub fn invert(&self) -> Result<Self> {
        let k =
            self.order.ok_or_else(|| Error::Precondition("inverting an exact series needs a target order".into()))?;
        let v = self.valuation().ok_or(Error::NotInvertibleLeadingTerm)?;
        self.invert_to(k - 2 * v)
    }

    /// Inverse computed up to `lambda^-target` (capped by what the input determines).
    pub fn invert_to(&self, target: i32) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NotInvertibleLeadingTerm)?;
        let lead = &self.coeffs[&v];
        let lead_inv = lead.inverse_single()?;
        let target = match self.order {
            Some(k) => target.min(k - 2 * v),
            None => target,
        };
        let mut g: BTreeMap<i32, AqElement> = BTreeMap::new();
        for j in -v..=target {
            let mut acc = if j == -v { AqElement::one() } else { AqElement::zero() };
            for (&i, fi) in self.coeffs.range((v + 1)..) {
                let idx = j + v - i;
                if idx < -v {
                    break;
                }
                if let Some(gj) = g.get(&idx) {
                    acc = &acc - &(fi * gj);
                }
            }
            let gj = &lead_inv * &acc;
            if !gj.is_zero() {
                g.insert(j, gj);
            }
        }
        Ok(NcSeries { coeffs: g, order: Some(target) })
    }

    /// True if the two series agree on every power known to both.
    pub fn eq_upto(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Add<&NcSeries> for &NcSeries {
    type Output = NcSeries;
    fn add(self, rhs: &NcSeries) -> NcSeries {
        let mut out = self.clone();
        for (k, a) in &rhs.coeffs {
            out.add_coeff(*k, a);
        }
        out.order = self.order;
        out.with_order(rhs.order)
    }
}

impl Sub<&NcSeries> for &NcSeries {
    type Output = NcSeries;
    fn sub(self, rhs: &NcSeries) -> NcSeries {
        self + &(-rhs)
    }
}

impl Neg for &NcSeries {
    type Output = NcSeries;
    fn neg(self) -> NcSeries {
        NcSeries { coeffs: self.coeffs.iter().map(|(k, a)| (*k, -a)).collect(), order: self.order }
    }
}

impl Mul<&NcSeries> for &NcSeries {
    type Output = NcSeries;
    fn mul(self, rhs: &NcSeries) -> NcSeries {
        let order =
            min_bound(add_bound(self.order, rhs.valuation_bound()), add_bound(rhs.order, self.valuation_bound()));
        let mut out = NcSeries { coeffs: BTreeMap::new(), order };
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                if order.is_some_and(|o| i + j > o) {
                    break;
                }
                out.add_coeff(i + j, &(a * b));
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($t:ty, $tr:ident, $f:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(NcSeries, Add, add);
owned_binop!(NcSeries, Sub, sub);
owned_binop!(NcSeries, Mul, mul);
pub(crate) use owned_binop;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::QLaurent;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_elem(rng: &mut ChaCha8Rng) -> AqElement {
        let mut a = AqElement::zero();
        for _ in 0..rng.gen_range(1..3) {
            let g = match rng.gen_range(0..4) {
                0 => AqElement::x(rng.gen_range(0..3)),
                1 => AqElement::y(rng.gen_range(0..3)),
                2 => AqElement::e(rng.gen_range(0..4)),
                _ => AqElement::from_int(rng.gen_range(1..3)),
            };
            a = &a + &g;
        }
        a
    }

    fn rand_series(rng: &mut ChaCha8Rng, k: i32) -> NcSeries {
        let mut s = NcSeries::one().truncate(k);
        for p in 1..=k {
            s = &s + &NcSeries::term(p, rand_elem(rng));
        }
        s
    }

    #[test]
    fn geometric_inverse() {
        let a = AqElement::e(1);
        let f = (&NcSeries::one() - &NcSeries::term(1, a.clone())).truncate(5);
        let g = f.invert().unwrap();
        for k in 0..=5 {
            assert_eq!(g.coeff(k).unwrap(), a.pow(k as u32));
        }
        assert!(g.coeff(6).is_err());
    }

    #[test]
    fn inverse_two_sided_and_involutive() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let f = rand_series(&mut rng, 4);
            let g = f.invert().unwrap();
            assert!((&f * &g).eq_upto(&NcSeries::one()));
            assert!((&g * &f).eq_upto(&NcSeries::one()));
            assert!(g.invert().unwrap().eq_upto(&f));
        }
    }

    #[test]
    fn laurent_leading_term() {
        let f = (&NcSeries::term(-1, AqElement::x(1)) + &NcSeries::one()).truncate(4);
        let g = f.invert().unwrap();
        assert_eq!(g.valuation(), Some(1));
        assert_eq!(g.coeff(1).unwrap(), AqElement::x_inv(1));
        assert!((&f * &g).eq_upto(&NcSeries::one()));
        let bad = NcSeries::term(0, AqElement::x(1) + AqElement::y(1)).clone().truncate(3);
        assert!(matches!(bad.invert(), Err(Error::NotInvertibleLeadingTerm)));
        let nonunit =
            NcSeries::constant(AqElement::from_int(2).scale(&QLaurent::q_pow(1)) + AqElement::one()).truncate(2);
        assert!(nonunit.invert().is_err());
    }

    #[test]
    fn associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let (f, g, h) = (rand_series(&mut rng, 3), rand_series(&mut rng, 3), rand_series(&mut rng, 3));
            assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        }
    }
}
