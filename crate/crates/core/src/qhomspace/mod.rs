//! The quantized homogeneous space, realized through the explicit images of
//! its generators `u_i`, `m_i` in `A_q`.

mod linalg;
mod pbw;
mod propcab;

pub use linalg::{rank, solve};
pub use pbw::{check_pbw_independence, pbw_expand, pbw_monomials, Generator, PbwMonomial, QhbElement};
pub use propcab::{
    c2_coefficient, c_coefficient, check_cab, check_cab2, check_d_symmetry, check_dab2, d2_from_symmetry,
    d_from_symmetry,
};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::imot::{e_word, weighted_compositions};
use crate::lattice::AqElement;
use crate::ncseries::{NcBiSeries, NcSeries};
use crate::qcoeff::{f_q, QLaurent};

fn cache() -> &'static Mutex<HashMap<(bool, u32), AqElement>> {
    static C: OnceLock<Mutex<HashMap<(bool, u32), AqElement>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(is_u: bool, i: u32, build: impl FnOnce() -> AqElement) -> AqElement {
    if let Some(v) = cache().lock().unwrap().get(&(is_u, i)) {
        return v.clone();
    }
    let v = build();
    cache().lock().unwrap().insert((is_u, i), v.clone());
    v
}

/// Compositions of `i - 1` with their `F_q` weights (nonzero weights only).
fn weighted(i: u32) -> Vec<(Vec<i64>, QLaurent)> {
    if i <= 1 {
        return vec![(Vec::new(), QLaurent::one())];
    }
    weighted_compositions(i - 1, (i - 1) as usize)
        .into_iter()
        .map(|a| {
            let w = f_q(&a);
            (a, w)
        })
        .filter(|(_, w)| !w.is_zero())
        .collect()
}

/// Image of `u_i`: `sum F_q(a) ... e_{-2}^{a_2} e_{-1}^{a_1} y_0^-1` over compositions of `i-1`.
pub fn gen_image_u(i: u32) -> AqElement {
    assert!(i >= 1, "generator index starts at 1");
    cached(true, i, || {
        let mut out = AqElement::zero();
        for (a, w) in weighted(i) {
            // e_{-L}^{a_L} ... e_{-1}^{a_1}: reverse the list and start at e_{-L}.
            let rev: Vec<i64> = a.iter().rev().copied().collect();
            let word = e_word(-(a.len() as i32), &rev);
            out = &out + &(&word * &AqElement::y_inv(0)).scale(&w);
        }
        out
    })
}

/// Image of `m_i`: `sum F_q(a) x_1^-1 e_1^{a_1} e_2^{a_2} ...` over compositions of `i-1`.
pub fn gen_image_m(i: u32) -> AqElement {
    assert!(i >= 1, "generator index starts at 1");
    cached(false, i, || {
        let mut out = AqElement::zero();
        for (a, w) in weighted(i) {
            out = &out + &(&AqElement::x_inv(1) * &e_word(1, &a)).scale(&w);
        }
        out
    })
}

/// `u(lambda) = sum_{i=0}^{K} (-1)^i u_{i+1} lambda^-i` in image form.
pub fn u_series(k: i32) -> NcSeries {
    NcSeries::from_coeffs(
        (0..=k).map(|i| (i, gen_image_u(i as u32 + 1).scale_int(if i % 2 == 0 { 1 } else { -1 }))),
        Some(k),
    )
}

/// `m(lambda) = sum_{i=0}^{K} (-1)^i m_{i+1} lambda^-i` in image form.
pub fn m_series(k: i32) -> NcSeries {
    NcSeries::from_coeffs(
        (0..=k).map(|i| (i, gen_image_m(i as u32 + 1).scale_int(if i % 2 == 0 { 1 } else { -1 }))),
        Some(k),
    )
}

/// `u_i m_j - q^e m_j u_i` for the images; zero for all `i, j` when `e = -1`.
pub fn relum_defect(i: u32, j: u32, e: i32) -> AqElement {
    let (u, m) = (gen_image_u(i), gen_image_m(j));
    &(&u * &m) - &(&m * &u).shift_q(e)
}

pub fn check_relum(i_max: u32) -> bool {
    (1..=i_max).all(|i| (1..=i_max).all(|j| relum_defect(i, j, -1).is_zero()))
}

/// `(a X(a) - b X(b))(X(a) - X(b)) - q^e (X(a) - X(b))(a X(a) - b X(b))` for a series `X`.
pub fn quadratic_defect(x: &NcSeries, e: i32) -> NcBiSeries {
    let xa = NcBiSeries::from_lambda(x);
    let xb = NcBiSeries::from_mu(x);
    let weighted = &xa.shift(1, 0) - &xb.shift(0, 1);
    let diff = &xa - &xb;
    let lhs = &weighted * &diff;
    let rhs = (&diff * &weighted).map_coeffs(|c| c.shift_q(e));
    &lhs - &rhs
}

fn truncated_order(i_max: u32, k: i32) -> i32 {
    (i_max as i32 - 1).min(k)
}

/// The u-relation for images of `u_1..u_{i_max}`, up to bidegree `(K, K)`.
pub fn check_relu(i_max: u32, k: i32) -> bool {
    quadratic_defect(&u_series(truncated_order(i_max, k)), 1).is_zero()
}

/// The m-relation (with `q^-1`) for images of `m_1..m_{i_max}`.
pub fn check_relm(i_max: u32, k: i32) -> bool {
    quadratic_defect(&m_series(truncated_order(i_max, k)), -1).is_zero()
}

/// `[u_i, u_j] - (1 - q^-1) sum_{k=i}^{upper} u_k u_{i+j-k}` with the given upper limit.
pub fn uij_defect_with_upper(i: u32, j: u32, upper: u32) -> AqElement {
    let lhs = gen_image_u(i).commutator(&gen_image_u(j));
    let mut sum = AqElement::zero();
    for k in i..=upper {
        sum = &sum + &(&gen_image_u(k) * &gen_image_u(i + j - k));
    }
    let c = QLaurent::one() - QLaurent::q_pow(-1);
    &lhs - &sum.scale(&c)
}

/// The commutator relation exactly as displayed: summation `k = i .. i+j-1`.
pub fn uij_defect(i: u32, j: u32) -> AqElement {
    uij_defect_with_upper(i, j, i + j - 1)
}

pub fn check_uij(i: u32, j: u32) -> bool {
    uij_defect(i, j).is_zero()
}

/// Variable introduced by the deepest factor of `u_i` (`i >= 2`): `(site, is_x)`.
pub fn newest_variable_u(i: u32) -> (i32, bool) {
    let l = (i - 1) as i32;
    if l % 2 == 1 {
        (-(l - 1) / 2, true)
    } else {
        (-l / 2, false)
    }
}

/// Variable introduced by the deepest factor of `m_i` (`i >= 2`): `(site, is_x)`.
pub fn newest_variable_m(i: u32) -> (i32, bool) {
    let l = (i - 1) as i32;
    if l % 2 == 1 {
        ((l + 1) / 2, false)
    } else {
        (l / 2 + 1, true)
    }
}

/// Number of monomials of `x` involving the given variable.
pub fn monomials_with_variable(x: &AqElement, var: (i32, bool)) -> usize {
    x.terms()
        .filter(|(m, _)| {
            let (a, b) = m.exponents_at(var.0);
            if var.1 {
                a != 0
            } else {
                b != 0
            }
        })
        .count()
}
