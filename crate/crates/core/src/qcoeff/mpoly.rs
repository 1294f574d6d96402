use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

pub const VAR_Q: usize = 0;
pub const VAR_A: usize = 1;
pub const VAR_B: usize = 2;
const NV: usize = 3;

type Exp = [u32; NV];

/// Polynomial in `(q, a, b)` over the rationals, with `a`, `b` standing for
/// `lambda^-1`, `mu^-1`. Terms are ordered lexicographically with `q` most
/// significant.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exp, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term([0; NV], c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn term(e: Exp, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    pub fn var(v: usize) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, k: u32) -> Self {
        let mut e = [0; NV];
        e[v] = k;
        Self::term(e, BigRational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn leading(&self) -> Option<(&Exp, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    fn add_term(&mut self, e: Exp, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn mul_var_pow(&self, v: usize, k: u32) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    e[v] += k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Divides out `v^k`; every term must carry at least that power.
    pub fn div_var_pow(&self, v: usize, k: u32) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    e[v] -= k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `v := value` where `value` is another polynomial.
    pub fn substitute(&self, v: usize, value: &MPoly) -> Self {
        let mut out = MPoly::zero();
        for (k, coeff) in self.coeffs_in(v).into_iter().enumerate() {
            if !coeff.is_zero() {
                out = &out + &(&coeff * &value.pow(k as u32));
            }
        }
        out
    }

    /// Coefficients w.r.t. variable `v`: `self = sum_k out[k] v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = *e;
            e2[v] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: usize, cs: &[MPoly]) -> Self {
        let mut out = MPoly::zero();
        for (k, c) in cs.iter().enumerate() {
            for (e, x) in &c.terms {
                let mut e2 = *e;
                e2[v] += k as u32;
                out.add_term(e2, x.clone());
            }
        }
        out
    }

    /// Exact multivariate division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dlead, dlc) = d.leading()?;
        let (dlead, dlc) = (*dlead, dlc.clone());
        if d.terms.len() == 1 {
            let mut out = MPoly::zero();
            for (e, c) in &self.terms {
                let mut e2 = *e;
                for i in 0..NV {
                    e2[i] = e[i].checked_sub(dlead[i])?;
                }
                out.terms.insert(e2, c / &dlc);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((le, lc)) = rem.leading() {
            let mut qe = [0; NV];
            for i in 0..NV {
                qe[i] = le[i].checked_sub(dlead[i])?;
            }
            let qc = lc / &dlc;
            let step = MPoly::term(qe, qc.clone());
            rem = &rem - &(&step * d);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Scales so that the lexicographically leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn leading_coeff_in(&self, v: usize) -> MPoly {
        self.coeffs_in(v).pop().unwrap_or_else(MPoly::zero)
    }

    /// Greatest common divisor, normalized monic (lex leading coefficient 1).
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        let var = (0..NV).find(|&v| a.uses_var(v) || b.uses_var(v));
        let Some(v) = var else {
            return MPoly::one();
        };
        // Pull out common monomial powers of v first; this keeps the PRS short.
        let ca = content_in(a, v);
        let cb = content_in(b, v);
        let c = MPoly::gcd(&ca, &cb);
        let mut pa = a.div_exact(&ca).expect("content divides");
        let mut pb = b.div_exact(&cb).expect("content divides");
        if pa.degree_in(v) < pb.degree_in(v) {
            std::mem::swap(&mut pa, &mut pb);
        }
        let g = loop {
            if pb.degree_in(v) == 0 {
                // pb is primitive in v with degree 0, hence a unit up to
                // constants once its content (itself) was removed.
                break if pb.is_zero() { pa } else { MPoly::one() };
            }
            let r = pseudo_rem(&pa, &pb, v);
            if r.is_zero() {
                break pb;
            }
            pa = pb;
            pb = primitive_in(&r, v);
        };
        (&c * &primitive_in(&g, v)).monic()
    }
}

/// gcd of the coefficients of `p` regarded as a polynomial in `v`.
fn content_in(p: &MPoly, v: usize) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = MPoly::gcd(&g, &c);
        if g.is_constant() {
            return MPoly::one();
        }
    }
    if g.is_zero() {
        MPoly::one()
    } else {
        g
    }
}

fn primitive_in(p: &MPoly, v: usize) -> MPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in the variable `v`.
fn pseudo_rem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree_in(v);
    let lcb = b.leading_coeff_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.leading_coeff_in(v);
        r = &(&r * &lcb) - &(&lcr.mul_var_pow(v, dr - db) * b);
    }
    r
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let mut g = *e;
                for i in 0..NV {
                    g[i] += f[i];
                }
                out.add_term(g, c * d);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["q", "a", "b"];
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", c)?;
            for (i, n) in names.iter().enumerate() {
                if e[i] > 0 {
                    write!(f, "*{}^{}", n, e[i])?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MPoly {
        MPoly::var(VAR_Q)
    }
    fn a() -> MPoly {
        MPoly::var(VAR_A)
    }
    fn b() -> MPoly {
        MPoly::var(VAR_B)
    }
    fn c(k: i64) -> MPoly {
        MPoly::from_int(k)
    }

    #[test]
    fn exact_division() {
        let f = &(&a() - &b()) * &(&(&q() * &a()) + &c(1));
        assert_eq!(f.div_exact(&(&a() - &b())).unwrap(), &(&q() * &a()) + &c(1));
        assert!(f.div_exact(&(&a() + &b())).is_none());
    }

    #[test]
    fn gcd_basic() {
        let common = &(&q() * &a()) - &b();
        let x = &common * &(&a() + &c(2));
        let y = &common * &(&(&q() * &q()) - &b());
        assert_eq!(MPoly::gcd(&x, &y), common.monic());
        assert_eq!(MPoly::gcd(&a(), &b()), MPoly::one());
        assert_eq!(MPoly::gcd(&x.scale(&BigRational::from_integer(6.into())), &x), x.monic());
    }

    #[test]
    fn gcd_with_monomial_content() {
        let x = &(&q() * &q()) * &(&a() - &b());
        let y = &q() * &(&a() - &b()).pow(2);
        assert_eq!(MPoly::gcd(&x, &y), (&q() * &(&a() - &b())).monic());
    }

    #[test]
    fn substitution() {
        let f = &(&a() * &a()) - &b();
        assert_eq!(f.substitute(VAR_A, &b()), &(&b() * &b()) - &b());
    }
}
