use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::{add_bound, min_bound, owned_binop, NcSeries};
use crate::error::{Error, Result};
use crate::lattice::AqElement;

/// Series in `a = lambda^-1` and `b = mu^-1`. A coefficient `(i, j)` is known
/// when `i <= ka`, `j <= kb` and `i + j <= kt` (absent bounds are infinite).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcBiSeries {
    coeffs: BTreeMap<(i32, i32), AqElement>,
    ka: Option<i32>,
    kb: Option<i32>,
    kt: Option<i32>,
}

impl NcBiSeries {
    pub fn zero() -> Self {
        NcBiSeries::default()
    }

    pub fn one() -> Self {
        Self::term(0, 0, AqElement::one())
    }

    /// `c * a^i * b^j`, exact.
    pub fn term(i: i32, j: i32, c: AqElement) -> Self {
        let mut s = NcBiSeries::zero();
        s.add_coeff((i, j), &c);
        s
    }

    /// Embeds a series in `lambda^-1`.
    pub fn from_lambda(f: &NcSeries) -> Self {
        let mut s = NcBiSeries { ka: f.order(), ..Default::default() };
        for (k, c) in f.coeffs() {
            s.add_coeff((k, 0), c);
        }
        s
    }

    /// Embeds a series in `mu^-1`.
    pub fn from_mu(f: &NcSeries) -> Self {
        let mut s = NcBiSeries { kb: f.order(), ..Default::default() };
        for (k, c) in f.coeffs() {
            s.add_coeff((0, k), c);
        }
        s
    }

    pub fn bounds(&self) -> (Option<i32>, Option<i32>, Option<i32>) {
        (self.ka, self.kb, self.kt)
    }

    pub fn known(&self, i: i32, j: i32) -> bool {
        self.ka.is_none_or(|k| i <= k) && self.kb.is_none_or(|k| j <= k) && self.kt.is_none_or(|k| i + j <= k)
    }

    pub fn with_bounds(mut self, ka: Option<i32>, kb: Option<i32>, kt: Option<i32>) -> Self {
        self.ka = min_bound(self.ka, ka);
        self.kb = min_bound(self.kb, kb);
        self.kt = min_bound(self.kt, kt);
        let (ka, kb, kt) = (self.ka, self.kb, self.kt);
        self.coeffs.retain(|&(i, j), _| {
            ka.is_none_or(|k| i <= k) && kb.is_none_or(|k| j <= k) && kt.is_none_or(|k| i + j <= k)
        });
        self
    }

    fn add_coeff(&mut self, key: (i32, i32), c: &AqElement) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(key).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeff(&self, i: i32, j: i32) -> Result<AqElement> {
        if !self.known(i, j) {
            return Err(Error::OutOfTruncation);
        }
        Ok(self.coeffs.get(&(i, j)).cloned().unwrap_or_default())
    }

    pub fn coeffs(&self) -> impl Iterator<Item = ((i32, i32), &AqElement)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn valuations(&self) -> (Option<i32>, Option<i32>, Option<i32>) {
        if self.coeffs.is_empty() {
            return (self.ka.map(|k| k + 1), self.kb.map(|k| k + 1), self.kt.map(|k| k + 1));
        }
        let va = self.coeffs.keys().map(|k| k.0).min();
        let vb = self.coeffs.keys().map(|k| k.1).min();
        let vt = self.coeffs.keys().map(|k| k.0 + k.1).min();
        (va, vb, vt)
    }

    /// Multiply by `a^i b^j`.
    pub fn shift(&self, i: i32, j: i32) -> Self {
        NcBiSeries {
            coeffs: self.coeffs.iter().map(|(&(p, r), c)| ((p + i, r + j), c.clone())).collect(),
            ka: self.ka.map(|k| k + i),
            kb: self.kb.map(|k| k + j),
            kt: self.kt.map(|k| k + i + j),
        }
    }

    pub fn map_coeffs<F: Fn(&AqElement) -> AqElement>(&self, f: F) -> Self {
        let mut out = NcBiSeries { ka: self.ka, kb: self.kb, kt: self.kt, ..Default::default() };
        for (k, c) in &self.coeffs {
            out.add_coeff(*k, &f(c));
        }
        out
    }

    pub fn try_map_coeffs<F: Fn(&AqElement) -> Result<AqElement>>(&self, f: F) -> Result<Self> {
        let mut out = NcBiSeries { ka: self.ka, kb: self.kb, kt: self.kt, ..Default::default() };
        for (k, c) in &self.coeffs {
            out.add_coeff(*k, &f(c)?);
        }
        Ok(out)
    }

    /// Swaps the roles of `lambda` and `mu`.
    pub fn swap(&self) -> Self {
        NcBiSeries {
            coeffs: self.coeffs.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
            ka: self.kb,
            kb: self.ka,
            kt: self.kt,
        }
    }

    /// Restriction to the diagonal `lambda = mu`, as a series in one variable.
    pub fn diagonal(&self) -> NcSeries {
        let kd = diagonal_checked_upto(self);
        let mut terms: BTreeMap<i32, AqElement> = BTreeMap::new();
        for (&(i, j), c) in &self.coeffs {
            let slot = terms.entry(i + j).or_default();
            *slot = &*slot + c;
        }
        NcSeries::from_coeffs(terms, kd)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(NcBiSeries::one(), |acc, _| &acc * self)
    }
}

/// Largest total degree `d` such that every coefficient `(t, d - t)` is known.
pub fn diagonal_checked_upto(f: &NcBiSeries) -> Option<i32> {
    min_bound(min_bound(f.ka, f.kb), f.kt)
}

/// `g` with `(lambda^-1 - mu^-1) g = f`, provided `f` vanishes on the diagonal.
///
/// `g_{p,r} = sum_{t=0}^{r} f_{p+1+t, r-t}` (or the mirrored formula, whichever
/// keeps more known coefficients). Every fully known diagonal slice is checked.
pub fn divide_by_lambda_minus_mu(f: &NcBiSeries) -> Result<NcBiSeries> {
    if f.coeffs.keys().any(|&(i, j)| i < 0 || j < 0) {
        return Err(Error::Precondition("negative powers in divided difference".into()));
    }
    let max_deg = f.coeffs.keys().map(|k| k.0 + k.1).max();
    let upto = diagonal_checked_upto(f);
    if let Some(maxd) = max_deg {
        let last = upto.map_or(maxd, |u| u.min(maxd));
        for d in 0..=last {
            let mut s = AqElement::zero();
            for t in 0..=d {
                if let Some(c) = f.coeffs.get(&(t, d - t)) {
                    s = &s + c;
                }
            }
            if !s.is_zero() {
                return Err(Error::NonzeroDiagonalRemainder { degree: d });
            }
        }
    }
    let use_a = match (min_bound(f.ka, f.kt), min_bound(f.kb, f.kt)) {
        (None, _) => true,
        (_, None) => false,
        (Some(x), Some(y)) => x >= y,
    };
    let (ka, kb, kt) = if use_a {
        (f.ka.map(|k| k - 1), f.kb, min_bound(f.ka, f.kt).map(|k| k - 1))
    } else {
        (f.ka, f.kb.map(|k| k - 1), min_bound(f.kb, f.kt).map(|k| k - 1))
    };
    let mut g = NcBiSeries { ka, kb, kt, ..Default::default() };
    let Some(maxd) = max_deg else {
        return Ok(g);
    };
    let top = kt.map_or(maxd - 1, |k| k.min(maxd - 1));
    for d in 0..=top {
        for p in 0..=d {
            let r = d - p;
            if !g.known(p, r) {
                continue;
            }
            let mut acc = AqElement::zero();
            if use_a {
                for t in 0..=r {
                    if let Some(c) = f.coeffs.get(&(p + 1 + t, r - t)) {
                        acc = &acc + c;
                    }
                }
            } else {
                for t in 0..=p {
                    if let Some(c) = f.coeffs.get(&(p - t, r + 1 + t)) {
                        acc = &acc - c;
                    }
                }
            }
            g.add_coeff((p, r), &acc);
        }
    }
    // (a - b) g must give back f wherever both are known; a nonzero diagonal
    // beyond the directly checked slices shows up here.
    let back = &(&g.shift(1, 0) - &g.shift(0, 1)) - f;
    if let Some(d) = back.coeffs.keys().map(|k| k.0 + k.1).min() {
        return Err(Error::NonzeroDiagonalRemainder { degree: d });
    }
    Ok(g)
}

impl Add<&NcBiSeries> for &NcBiSeries {
    type Output = NcBiSeries;
    fn add(self, rhs: &NcBiSeries) -> NcBiSeries {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_coeff(*k, c);
        }
        out.with_bounds(rhs.ka, rhs.kb, rhs.kt)
    }
}

impl Sub<&NcBiSeries> for &NcBiSeries {
    type Output = NcBiSeries;
    fn sub(self, rhs: &NcBiSeries) -> NcBiSeries {
        self + &(-rhs)
    }
}

impl Neg for &NcBiSeries {
    type Output = NcBiSeries;
    fn neg(self) -> NcBiSeries {
        self.map_coeffs(|c| -c)
    }
}

impl Mul<&NcBiSeries> for &NcBiSeries {
    type Output = NcBiSeries;
    fn mul(self, rhs: &NcBiSeries) -> NcBiSeries {
        let (fa, fb, ft) = self.valuations();
        let (ga, gb, gt) = rhs.valuations();
        let ka = min_bound(add_bound(self.ka, ga), add_bound(rhs.ka, fa));
        let kb = min_bound(add_bound(self.kb, gb), add_bound(rhs.kb, fb));
        let kt = min_bound(add_bound(self.kt, gt), add_bound(rhs.kt, ft));
        let mut out = NcBiSeries { ka, kb, kt, ..Default::default() };
        for (&(i, j), a) in &self.coeffs {
            for (&(k, l), b) in &rhs.coeffs {
                if out.known(i + k, j + l) {
                    out.add_coeff((i + k, j + l), &(a * b));
                }
            }
        }
        out
    }
}

owned_binop!(NcBiSeries, Add, add);
owned_binop!(NcBiSeries, Sub, sub);
owned_binop!(NcBiSeries, Mul, mul);
