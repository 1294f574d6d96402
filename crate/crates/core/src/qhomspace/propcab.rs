//! Closed-form exchange coefficients between powers of `u(lambda)` and `u(mu)`.
//!
//! `a = lambda^-1`, `b = mu^-1`. Every identity is multiplied through by the
//! least common denominator of its coefficients before comparing series, since
//! `1/(q^j a - b)` has no bivariate power series expansion.

use super::u_series;
use crate::error::{Error, Result};
use crate::ncseries::NcBiSeries;
use crate::qcoeff::{MPoly, QFraction, QLaurent, VAR_A, VAR_B, VAR_Q};

fn a() -> QFraction {
    QFraction::lambda_inv()
}

fn b() -> QFraction {
    QFraction::mu_inv()
}

fn qp(k: i32) -> QFraction {
    QFraction::q_pow(k)
}

/// `q^j a - b`.
fn lin(j: i32) -> QFraction {
    &(&qp(j) * &a()) - &b()
}

/// `[n]` for `n >= 0`.
fn qint(n: i32) -> QFraction {
    (0..n).fold(QFraction::zero(), |acc, k| &acc + &qp(k))
}

fn pow(x: &QFraction, n: i32) -> QFraction {
    if n >= 0 {
        (0..n).fold(QFraction::one(), |acc, _| &acc * x)
    } else {
        pow(&x.recip().expect("nonzero base"), -n)
    }
}

fn prod(range: std::ops::RangeInclusive<i32>, f: impl Fn(i32) -> QFraction) -> QFraction {
    range.fold(QFraction::one(), |acc, j| &acc * &f(j))
}

fn div(x: QFraction, y: QFraction) -> QFraction {
    (&x / &y).expect("denominators of the closed forms are nonzero")
}

/// `(a - b)(a - q b)`.
fn common_factor() -> QFraction {
    &(&a() - &b()) * &(&a() - &(&qp(1) * &b()))
}

/// `c_{alpha,beta}` in `u(mu) u(lambda)^n = sum_{alpha+beta=n+1} c u(lambda)^alpha u(mu)^beta`.
pub fn c_coefficient(alpha: i32, beta: i32) -> QFraction {
    assert!(alpha >= 0 && beta >= 0);
    if beta == 0 {
        let num = &(&qp(alpha - 1) - &QFraction::one()) * &a();
        return div(num, lin(alpha - 1));
    }
    let num = &(&(&qp(alpha - 1) * &prod(alpha + 1..=alpha + beta - 1, |j| &qp(j) - &QFraction::one()))
        * &common_factor())
        * &pow(&b(), beta - 1);
    div(num, prod(alpha - 1..=alpha + beta - 1, lin))
}

/// `P^(2)_{alpha,beta}`.
fn p2(alpha: i32, beta: i32) -> QFraction {
    let t1 = &(&(&qp(1) * &qint(alpha + beta - 1)) * &lin(1)) * &lin(alpha - 2);
    let t2 = &(&qint(alpha) * &(&a() - &(&qp(1) * &b()))) * &lin(alpha + beta - 1);
    &t1 - &t2
}

/// `c^(2)_{alpha,beta}` in `u(mu)^2 u(lambda)^n = sum_{alpha+beta=n+2} c^(2) u(lambda)^alpha u(mu)^beta`.
pub fn c2_coefficient(alpha: i32, beta: i32) -> QFraction {
    assert!(alpha >= 0 && beta >= 0);
    let one = QFraction::one();
    match beta {
        0 => {
            let num = &(&(&qp(alpha - 2) - &one) * &(&qp(alpha - 1) - &one)) * &pow(&a(), 2);
            div(num, &lin(alpha - 2) * &lin(alpha - 1))
        }
        1 => {
            let num = &(&(&(&qp(alpha - 2) * &(&qp(alpha - 1) - &one)) * &qint(2)) * &common_factor()) * &a();
            div(num, prod(alpha - 2..=alpha, lin))
        }
        _ => {
            let num = &(&(&(&qp(alpha - 2) * &prod(alpha + 1..=alpha + beta - 2, |j| &qp(j) - &one))
                * &common_factor())
                * &pow(&b(), beta - 2))
                * &p2(alpha, beta);
            div(num, prod(alpha - 2..=alpha + beta - 1, lin))
        }
    }
}

/// `d_{x,y}` in `u(mu)^n u(lambda) = sum_{x+y=n+1} d u(lambda)^x u(mu)^y`, via
/// `a^(beta-1) c_{alpha,beta} = b^(beta-1) d_{beta,alpha}`.
pub fn d_from_symmetry(x: i32, y: i32) -> QFraction {
    &pow(&div(a(), b()), x - 1) * &c_coefficient(y, x)
}

/// `d^(2)_{x,y}` in `u(mu)^n u(lambda)^2 = sum_{x+y=n+2} d^(2) u(lambda)^x u(mu)^y`.
pub fn d2_from_symmetry(x: i32, y: i32) -> QFraction {
    &pow(&div(a(), b()), x - 2) * &c2_coefficient(y, x)
}

fn lcm(x: &MPoly, y: &MPoly) -> MPoly {
    let g = MPoly::gcd(x, y);
    (x * y).div_exact(&g).expect("gcd divides product")
}

/// Multiplies a bivariate series by a polynomial in `(q, a, b)`.
fn scale_by_poly(s: &NcBiSeries, p: &MPoly) -> NcBiSeries {
    let mut out = NcBiSeries::zero();
    for (e, c) in p.terms() {
        let coeff = QLaurent::monomial(4 * e[VAR_Q] as i32, c.clone());
        let term = s.shift(e[VAR_A] as i32, e[VAR_B] as i32).map_coeffs(|x| x.scale(&coeff));
        out = &out + &term;
    }
    out
}

/// `lhs = sum c_k rhs_k` after clearing denominators, compared up to `(k, k)`.
fn cleared_identity(lhs: &NcBiSeries, rhs: &[(QFraction, NcBiSeries)], k: i32) -> Result<bool> {
    let mut d = MPoly::one();
    for (c, _) in rhs {
        d = lcm(&d, c.denom());
    }
    let df = QFraction::from_poly(d.clone());
    let mut total = scale_by_poly(lhs, &d);
    for (c, s) in rhs {
        let p =
            (&df * c).to_poly().ok_or_else(|| Error::Precondition("cleared coefficient is not polynomial".into()))?;
        total = &total - &scale_by_poly(s, &p);
    }
    let total = total.with_bounds(Some(k), Some(k), None);
    Ok(total.is_zero())
}

struct Powers {
    la: Vec<NcBiSeries>,
    mu: Vec<NcBiSeries>,
}

impl Powers {
    fn new(max: usize, k: i32) -> Self {
        let u = u_series(k);
        let (ul, um) = (NcBiSeries::from_lambda(&u), NcBiSeries::from_mu(&u));
        let mut la = vec![NcBiSeries::one()];
        let mut mu = vec![NcBiSeries::one()];
        for i in 0..max {
            la.push(&la[i] * &ul);
            mu.push(&mu[i] * &um);
        }
        Powers { la, mu }
    }

    /// `u(lambda)^x u(mu)^y`.
    fn lm(&self, x: usize, y: usize) -> NcBiSeries {
        &self.la[x] * &self.mu[y]
    }
}

/// `u(mu)^{mu_pow} u(lambda)^{la_pow} = sum_{x+y} coeff(x, y) u(lambda)^x u(mu)^y`.
fn check_expansion(mu_pow: usize, la_pow: usize, k: i32, coeff: impl Fn(i32, i32) -> QFraction) -> Result<bool> {
    let total = mu_pow + la_pow;
    let pw = Powers::new(total, k);
    let lhs = &pw.mu[mu_pow] * &pw.la[la_pow];
    let rhs: Vec<(QFraction, NcBiSeries)> = (0..=total)
        .map(|x| (coeff(x as i32, (total - x) as i32), pw.lm(x, total - x)))
        .filter(|(c, _)| !c.is_zero())
        .collect();
    cleared_identity(&lhs, &rhs, k)
}

/// `u(mu) u(lambda)^n` expansion with the closed-form `c_{alpha,beta}`.
pub fn check_cab(n: u32, k: i32) -> Result<bool> {
    check_expansion(1, n as usize, k, c_coefficient)
}

/// `u(mu)^2 u(lambda)^n` expansion with `c^(2)` (indices summing to `n+2`).
pub fn check_cab2(n: u32, k: i32) -> Result<bool> {
    check_expansion(2, n as usize, k, c2_coefficient)
}

/// `u(mu)^n u(lambda)` expansion with `d` obtained through the symmetry.
pub fn check_d_symmetry(n: u32, k: i32) -> Result<bool> {
    check_expansion(n as usize, 1, k, d_from_symmetry)
}

/// `u(mu)^n u(lambda)^2` expansion with `d^(2)` obtained through the symmetry.
pub fn check_dab2(n: u32, k: i32) -> Result<bool> {
    check_expansion(n as usize, 2, k, d2_from_symmetry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert!(c_coefficient(1, 0).is_zero());
        assert_eq!(c_coefficient(0, 1), QFraction::one());
        assert!(d_from_symmetry(0, 1).is_zero());
        assert_eq!(d_from_symmetry(1, 0), QFraction::one());
    }

    #[test]
    fn single_exchange() {
        assert!(check_cab(1, 4).unwrap());
        assert!(check_d_symmetry(1, 4).unwrap());
    }

    #[test]
    fn wrong_coefficient_detected() {
        let bad = |x: i32, y: i32| {
            if x == 1 && y == 1 {
                &c_coefficient(x, y) + &QFraction::one()
            } else {
                c_coefficient(x, y)
            }
        };
        assert!(!check_expansion(1, 1, 3, bad).unwrap());
    }
}
