use super::NcSeries;
use crate::error::{Error, Result};
use crate::imot::density_psi;
use crate::lattice::AqElement;
use crate::qcoeff::{q_factorial, q_int};

/// Which side the denominator is inverted on: `a/b = a b^-1` or `a/b = b^-1 a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractionSide {
    Right,
    Left,
}

fn frac(a: &NcSeries, b: &NcSeries, side: FractionSide) -> Result<NcSeries> {
    let binv = b.invert()?;
    Ok(match side {
        FractionSide::Right => a * &binv,
        FractionSide::Left => &binv * a,
    })
}

/// `top / (1 + s t_1 / (1 + s t_2 / ( ... / (1 + s t_m))))` with `s = sign`,
/// evaluated bottom-up to order `k`.
pub fn nested_fraction(top: &NcSeries, terms: &[NcSeries], sign: i64, side: FractionSide, k: i32) -> Result<NcSeries> {
    let one = NcSeries::one().truncate(k);
    let scaled = |t: &NcSeries| t.map_coeffs(|c| c.scale_int(sign));
    let mut denom: Option<NcSeries> = None;
    for t in terms.iter().rev() {
        let inner = match &denom {
            None => t.clone(),
            Some(d) => frac(t, d, side)?,
        };
        denom = Some((&one + &scaled(&inner)).truncate(k));
    }
    frac(&top.clone().truncate(k), &denom.unwrap_or(one), side)
}

/// `U_N = 1/(1 - (lambda x_1 y_1)^-1/(1 - (lambda y_1 x_2)^-1/( ... (1 - (lambda y_{N-1} x_N)^-1))))`
/// with `a/b = a b^-1`.
pub fn cont_frac_u(n: u32, k: i32) -> Result<NcSeries> {
    if n == 0 {
        return Err(Error::Precondition("N >= 1".into()));
    }
    let terms: Vec<NcSeries> = (1..=(2 * n as i32 - 2)).map(|j| NcSeries::term(1, AqElement::e(j))).collect();
    nested_fraction(&NcSeries::one(), &terms, -1, FractionSide::Right, k)
}

/// `V_N = T^{1/2} U_N`.
pub fn cont_frac_v(n: u32, k: i32) -> Result<NcSeries> {
    Ok(cont_frac_u(n, k)?.half_translate())
}

/// Coefficients of `ln_q f = sum_p [p]^-1 (1 - f^-1)^p` multiplied by `[p]!`.
///
/// `[p]!/[k]` is a polynomial for every `k <= p`, so these stay in the Laurent
/// ring for any input; the `[p]`-cleared form below may not.
pub fn ln_q_factorial_cleared(f: &NcSeries) -> Result<NcSeries> {
    let k = f.order().ok_or_else(|| Error::Precondition("ln_q needs a truncated series".into()))?;
    if f.valuation().is_some_and(|v| v < 0) || f.coeff(0)? != AqElement::one() {
        return Err(Error::Precondition("ln_q needs f = 1 + O(lambda^-1)".into()));
    }
    let h = &NcSeries::one() - &f.invert()?;
    let mut powers = vec![NcSeries::one()];
    for _ in 1..=k {
        let next = (powers.last().unwrap() * &h).truncate(k);
        powers.push(next);
    }
    let mut out = Vec::new();
    for p in 1..=k {
        let pf = q_factorial(p as u32);
        let mut numer = AqElement::zero();
        for (kk, hk) in powers.iter().enumerate().take(p as usize + 1).skip(1) {
            let c = pf.div_exact(&q_int(kk as i64))?;
            numer = &numer + &hk.coeff(p)?.scale(&c);
        }
        out.push((p, numer));
    }
    Ok(NcSeries::from_coeffs(out, Some(k)))
}

/// `[p]`-cleared coefficients of `ln_q f`: coefficient `p` of the result is
/// `[p]` times the coefficient of `lambda^-p`. Fails with `NotDivisible` when
/// that product is not a Laurent polynomial in `q`.
pub fn ln_q(f: &NcSeries) -> Result<NcSeries> {
    let numer = ln_q_factorial_cleared(f)?;
    numer.try_map_coeffs_indexed(|p, c| {
        let d = q_factorial(p as u32 - 1);
        c.try_map_coeffs(|x| x.div_exact(&d))
    })
}

fn basi_numerators(n: u32, k: i32) -> Result<NcSeries> {
    let u = cont_frac_u(n, k)?;
    let v = cont_frac_v(n, k)?;
    Ok(&ln_q_factorial_cleared(&u)? + &ln_q_factorial_cleared(&v)?)
}

/// The `[p]`-cleared coefficients of `ln_q U_N + ln_q V_N` for `p = 1..=p_max`.
pub fn basi_coefficients(p_max: u32, n: u32, k: i32) -> Result<Vec<AqElement>> {
    if p_max as i32 > k {
        return Err(Error::Precondition("p_max <= K".into()));
    }
    let s = basi_numerators(n, k)?;
    (1..=p_max as i32)
        .map(|p| {
            let d = q_factorial(p as u32 - 1);
            s.coeff(p)?.try_map_coeffs(|x| x.div_exact(&d))
        })
        .collect()
}

/// Compares the generating-function coefficients with `psi_p` (after clearing
/// `[p]!`, so no division is involved) and requires agreement between chain
/// lengths `N` and `N+1`.
pub fn check_basi(p_max: u32, n: u32, k: i32) -> Result<bool> {
    if p_max as i32 > k {
        return Err(Error::Precondition("p_max <= K".into()));
    }
    let a = basi_numerators(n, k)?;
    let b = basi_numerators(n + 1, k)?;
    for p in 1..=p_max as i32 {
        if a.coeff(p)? != b.coeff(p)? {
            return Err(Error::StabilizationFailure { n: n as usize, next: n as usize + 1 });
        }
    }
    for p in 1..=p_max {
        let expected = density_psi(p)?.value.scale(&q_factorial(p - 1));
        if a.coeff(p as i32)? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_small() {
        assert_eq!(cont_frac_u(1, 4).unwrap(), NcSeries::one().truncate(4));
        let u2 = cont_frac_u(2, 4).unwrap();
        let inner = (&NcSeries::one() - &NcSeries::term(1, AqElement::e(2))).truncate(4);
        let mid = &NcSeries::one() - &(&NcSeries::term(1, AqElement::e(1)) * &inner.invert().unwrap());
        assert_eq!(u2, mid.truncate(4).invert().unwrap());
        for n in 2..=4 {
            assert_eq!(cont_frac_u(n, 3).unwrap().coeff(1).unwrap(), AqElement::e(1));
        }
    }

    #[test]
    fn ln_q_cases() {
        assert!(ln_q(&NcSeries::one().truncate(4)).unwrap().is_zero());
        let a = AqElement::e(3);
        let f = (&NcSeries::one() - &NcSeries::term(1, a.clone())).truncate(5).invert().unwrap();
        let l = ln_q(&f).unwrap();
        for p in 1..=5 {
            assert_eq!(l.coeff(p).unwrap(), a.pow(p as u32));
        }
        let g = (&NcSeries::one() + &NcSeries::term(1, AqElement::x(1))).truncate(1);
        let h = &NcSeries::one() - &g.invert().unwrap();
        assert_eq!(ln_q(&g).unwrap().coeff(1).unwrap(), h.coeff(1).unwrap());
        assert!(ln_q(&NcSeries::term(0, AqElement::from_int(2)).truncate(2)).is_err());
    }

    #[test]
    fn basi_first_coefficient() {
        let c = basi_coefficients(1, 3, 4).unwrap();
        assert_eq!(c[0], AqElement::e(1) + AqElement::e(2));
        assert!(check_basi(1, 3, 4).unwrap());
    }
}
