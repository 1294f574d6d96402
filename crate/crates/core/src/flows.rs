//! The flows `H_k` on the homogeneous space, evaluated through the images of
//! `u(lambda)` and `m(lambda)` in `A_q`, and compared with `ad(I_k)`.
//!
//! Bivariate series use `a = lambda^-1`, `b = mu^-1`, and
//! `H(mu) = sum_k (-1)^k H_k mu^-k`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::functionals::{ad_action, Functional};
use crate::imot::integral;
use crate::lattice::AqElement;
use crate::ncseries::{divide_by_lambda_minus_mu, NcBiSeries, NcSeries};
use crate::qcoeff::{q_int, QLaurent};
use crate::qhomspace::{gen_image_m, gen_image_u, m_series, u_series, Generator};

fn sign(e: i32) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `-b x sum_k (-b)^k (y x)^k` up to `b^K`: the common shape of `v` and `w`.
fn geometric(x: &NcSeries, y: &NcSeries, k: i32) -> NcSeries {
    // t = -b y x
    let t = (y * x).shift(1).map_coeffs(|c| -c).truncate(k);
    let mut acc = NcSeries::one().truncate(k);
    let mut pw = NcSeries::one().truncate(k);
    for _ in 1..=k {
        pw = (&pw * &t).truncate(k);
        acc = &acc + &pw;
    }
    (x * &acc).shift(1).map_coeffs(|c| -c).truncate(k)
}

/// `-(y + mu x^-1)^-1`, by direct inversion; equals `geometric(x, y, k)`.
fn direct(x: &NcSeries, y: &NcSeries, k: i32) -> Result<NcSeries> {
    let xinv = x.invert_to(k + 2)?;
    let s = &y.clone().with_order(Some(k + 1)) + &xinv.shift(-1);
    Ok(s.invert_to(k)?.map_coeffs(|c| -c).truncate(k))
}

fn cross_checked(name: &str, x: &NcSeries, y: &NcSeries, k: i32) -> Result<NcSeries> {
    let g = geometric(x, y, k);
    let d = direct(x, y, k)?;
    if g != d {
        return Err(Error::CrossCheckMismatch(format!("{name}: geometric and direct expansions differ")));
    }
    Ok(g)
}

/// `v(mu) = -(u(mu) + mu m(mu)^-1)^-1` up to `mu^-K`.
pub fn v_series(k: i32) -> Result<NcSeries> {
    cross_checked("v", &m_series(k + 1), &u_series(k + 1), k)
}

/// `w(mu) = -(m(mu) + mu u(mu)^-1)^-1` up to `mu^-K`.
pub fn w_series(k: i32) -> Result<NcSeries> {
    cross_checked("w", &u_series(k + 1), &m_series(k + 1), k)
}

fn lam(s: &NcSeries, k: i32) -> NcBiSeries {
    NcBiSeries::from_lambda(&s.clone().truncate(k))
}

fn mu(s: &NcSeries, k: i32) -> NcBiSeries {
    NcBiSeries::from_mu(&s.clone().truncate(k))
}

/// `H(mu)(u(lambda))` known for `lambda`-degree below `ka` and `mu`-degree up to `kb`.
pub fn flow_u_biseries_bounded(ka: i32, kb: i32) -> Result<NcBiSeries> {
    let ua = lam(&u_series(ka), ka);
    let ub = mu(&u_series(kb), kb);
    let vb = mu(&v_series(kb)?, kb);
    let first = &(&(&ua.shift(1, 0) - &ub.shift(0, 1)) * &vb) * &ua;
    let second = &(&ua - &ub) * &(&NcBiSeries::one() + &(&vb * &ub));
    let g1 = divide_by_lambda_minus_mu(&first)?;
    let g2 = divide_by_lambda_minus_mu(&second)?;
    Ok(&g1 - &g2.shift(0, 1))
}

/// `H(mu)(m(lambda))`, same bounds convention.
pub fn flow_m_biseries_bounded(ka: i32, kb: i32) -> Result<NcBiSeries> {
    let ma = lam(&m_series(ka), ka);
    let mb = mu(&m_series(kb), kb);
    let wb = mu(&w_series(kb)?, kb);
    let first = &(&NcBiSeries::one() + &(&mb * &wb)) * &(&ma - &mb);
    let second = &(&ma * &wb) * &(&ma.shift(1, 0) - &mb.shift(0, 1));
    let g1 = divide_by_lambda_minus_mu(&first)?;
    let g2 = divide_by_lambda_minus_mu(&second)?;
    Ok(&g1.shift(0, 1) - &g2)
}

pub fn flow_u_biseries(k: i32) -> Result<NcBiSeries> {
    flow_u_biseries_bounded(k, k)
}

pub fn flow_m_biseries(k: i32) -> Result<NcBiSeries> {
    flow_m_biseries_bounded(k, k)
}

/// `H_k(gen_j)` read off a flow series: `(-1)^{k+j-1}` times the `a^{j-1} b^k` coefficient.
pub fn extract_from(series: &NcBiSeries, k: u32, j: u32) -> Result<AqElement> {
    let c = series.coeff(j as i32 - 1, k as i32)?;
    Ok(c.scale_int(sign((k + j - 1) as i32)))
}

/// `H_k(gen)` with the smallest series budget that determines it.
pub fn extract_flow(k: u32, gen: Generator) -> Result<AqElement> {
    match gen {
        Generator::U(j) => extract_from(&flow_u_biseries_bounded((j + k) as i32, k as i32)?, k, j),
        Generator::M(j) => extract_from(&flow_m_biseries_bounded((j + k) as i32, k as i32)?, k, j),
    }
}

/// `I_n`, memoized.
pub fn integral_cached(n: u32) -> Result<Functional> {
    static C: OnceLock<Mutex<HashMap<u32, Functional>>> = OnceLock::new();
    let cache = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return Ok(f.clone());
    }
    let f = integral(n)?;
    cache.lock().unwrap().insert(n, f.clone());
    Ok(f)
}

pub fn ad_integral(n: u32, x: &AqElement) -> Result<AqElement> {
    ad_action(&integral_cached(n)?, x)
}

/// How `H_n` is matched against `I_n = I(psi_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FlowNormalization {
    /// `H_n = ad(I_n)`.
    #[default]
    Literal,
    /// `H_n = ad(I_n) / [n]`, i.e. `I_n` replaced by the `lambda^-n` coefficient of `ln_q U + ln_q V`.
    LogCoefficient,
}

impl FlowNormalization {
    fn factor(self, n: u32) -> QLaurent {
        match self {
            FlowNormalization::Literal => QLaurent::one(),
            FlowNormalization::LogCoefficient => q_int(n as i64),
        }
    }
}

/// `ad(I_n)` rescaled to act as `H_n` under the given normalization.
pub fn flow_as_adjoint(n: u32, x: &AqElement, norm: FlowNormalization) -> Result<AqElement> {
    let f = norm.factor(n);
    ad_integral(n, x)?.try_map_coeffs(|c| c.div_exact(&f))
}

/// A generator at which `H_n` and `ad(I_n)` disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwineMismatch {
    pub generator: Generator,
    pub difference: AqElement,
}

/// All `u_j, m_j` with `j <= j_max` where `H_n(g)` differs from the adjoint side.
pub fn intertwine_mismatches_with(n: u32, j_max: u32, norm: FlowNormalization) -> Result<Vec<IntertwineMismatch>> {
    let (ka, kb) = ((j_max + n) as i32, n as i32);
    let fu = flow_u_biseries_bounded(ka, kb)?;
    let fm = flow_m_biseries_bounded(ka, kb)?;
    let f = norm.factor(n);
    let mut out = Vec::new();
    for j in 1..=j_max {
        for (gen, series, image) in [(Generator::U(j), &fu, gen_image_u(j)), (Generator::M(j), &fm, gen_image_m(j))] {
            let h = extract_from(series, n, j)?.scale(&f);
            let ad = ad_integral(n, &image)?;
            let diff = &h - &ad;
            if !diff.is_zero() {
                out.push(IntertwineMismatch { generator: gen, difference: diff });
            }
        }
    }
    Ok(out)
}

pub fn intertwine_mismatches(n: u32, j_max: u32) -> Result<Vec<IntertwineMismatch>> {
    intertwine_mismatches_with(n, j_max, FlowNormalization::Literal)
}

/// `H_n = ad(I_n)` on `u_j, m_j` for all `j <= j_max`.
pub fn check_intertwine(n: u32, j_max: u32) -> Result<bool> {
    Ok(intertwine_mismatches(n, j_max)?.is_empty())
}

/// `[n] H_n = ad(I_n)` on `u_j, m_j` for all `j <= j_max`.
pub fn check_intertwine_log_normalized(n: u32, j_max: u32) -> Result<bool> {
    Ok(intertwine_mismatches_with(n, j_max, FlowNormalization::LogCoefficient)?.is_empty())
}

/// `[ad(I_m), ad(I_n)]` vanishes on the given elements.
pub fn check_flow_commute(m: u32, n: u32, sample: &[AqElement]) -> Result<bool> {
    for x in sample {
        let a = ad_integral(m, &ad_integral(n, x)?)?;
        let b = ad_integral(n, &ad_integral(m, x)?)?;
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(a - b) H(mu)(v(lambda))` against the numerator of its closed form, up to `(K, K)`,
/// with `H_k` acting through `ad(I_k)` under `norm`.
pub fn check_imvl_with(k: i32, norm: FlowNormalization) -> Result<bool> {
    let v = v_series(k)?;
    let u = u_series(k);
    let mut lhs = NcBiSeries::zero().with_bounds(Some(k), Some(k), None);
    for kk in 1..=k {
        let hv = v.try_map_coeffs(|c| flow_as_adjoint(kk as u32, c, norm))?;
        let term = NcBiSeries::from_lambda(&hv).shift(0, kk).map_coeffs(|c| c.scale_int(sign(kk)));
        lhs = &lhs + &term;
    }
    let lhs = &lhs.shift(1, 0) - &lhs.shift(0, 1);
    let (va, vb) = (lam(&v, k), mu(&v, k));
    let (ua, ub) = (lam(&u, k), mu(&u, k));
    let mid = &ub.shift(0, 1) - &ua.shift(1, 0);
    let rhs = &(&(&va.shift(0, 1) - &vb.shift(1, 0)) + &(&(&va * &mid) * &vb)) + &(&(&vb * &mid) * &va);
    let diff = (&lhs - &rhs).with_bounds(Some(k), Some(k), None);
    Ok(diff.is_zero())
}

/// The closed form of `H(mu)(v(lambda))` with `H_k` realized exactly, i.e. as `ad(I_k) / [k]`.
pub fn check_imvl(k: i32) -> Result<bool> {
    check_imvl_with(k, FlowNormalization::LogCoefficient)
}
