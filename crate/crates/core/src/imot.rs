//! Integrals of motion: explicit densities, their classes, screening and
//! commutativity checks, and a small on-disk density cache.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::functionals::{bracket, project, Functional};
use crate::lattice::AqElement;
use crate::qcoeff::{f_q, q_int};

pub const CACHE_FORMAT: &str = "qds-density-cache v1";
const CONVENTION: &str = "fq-trailing-zero";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Density {
    pub n: u32,
    /// Chain length parameter used to build `A_n`.
    pub big_n: u32,
    pub value: AqElement,
}

/// Smallest admissible chain length: `n <= 2(N-1)`.
pub fn minimal_chain(n: u32) -> u32 {
    n.div_ceil(2) + 1
}

/// Compositions of `total` into `len` nonnegative parts with the first part
/// at least 1, in lexicographic order. Parts after the first zero are forced
/// to zero, since any other choice has vanishing `F_q` weight.
pub fn weighted_compositions(total: u32, len: usize) -> Vec<Vec<i64>> {
    fn rec(rest: u32, len: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == len {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let zero_seen = prefix.last() == Some(&0);
        let lo = if prefix.is_empty() { 1 } else { 0 };
        let hi = if zero_seen { 0 } else { rest };
        for a in lo..=hi {
            prefix.push(a as i64);
            rec(rest - a, len, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len > 0 && total > 0 {
        rec(total, len, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

/// Ordered product `e_{start}^{a_0} e_{start+1}^{a_1} ...`.
pub fn e_word(start: i32, exps: &[i64]) -> AqElement {
    let mut acc = AqElement::one();
    for (k, &a) in exps.iter().enumerate() {
        if a != 0 {
            acc = &acc * &AqElement::e(start + k as i32).pow(a as u32);
        }
    }
    acc
}

/// `A_n` built with chain length `big_n`.
pub fn density_a(n: u32, big_n: u32) -> Result<AqElement> {
    if n == 0 || n > 2 * (big_n.max(1) - 1) {
        return Err(Error::Precondition(format!("need 1 <= n <= 2(N-1), got n={n}, N={big_n}")));
    }
    let len = (2 * big_n - 2) as usize;
    let qn = q_int(n as i64);
    let mut out = AqElement::zero();
    for alpha in weighted_compositions(n, len) {
        let w = f_q(&alpha);
        if w.is_zero() {
            continue;
        }
        let c = (&w * &qn).div_exact(&q_int(alpha[0]))?;
        out = &out + &e_word(1, &alpha).scale(&c);
    }
    Ok(out)
}

pub fn density_psi_with_chain(n: u32, big_n: u32) -> Result<Density> {
    let a = density_a(n, big_n)?;
    let value = &a + &a.half_translate();
    Ok(Density { n, big_n, value })
}

/// `psi_n = A_n + T^{1/2} A_n` with the minimal chain length.
pub fn density_psi(n: u32) -> Result<Density> {
    density_psi_with_chain(n, minimal_chain(n))
}

/// `I_n = I(psi_n)`.
pub fn integral(n: u32) -> Result<Functional> {
    project(&density_psi(n)?.value, 0)
}

/// Brackets of `I_n` with `I(x_0)` and `I(y_0)`; both vanish for an integral of motion.
pub fn screening_brackets(n: u32) -> Result<(Functional, Functional)> {
    let i_n = integral(n)?;
    let plus = bracket(&i_n, &project(&AqElement::x(0), 1)?)?;
    let minus = bracket(&i_n, &project(&AqElement::y(0), -1)?)?;
    Ok((plus, minus))
}

pub fn check_screening(n: u32) -> Result<bool> {
    let (p, m) = screening_brackets(n)?;
    Ok(p.is_zero() && m.is_zero())
}

pub fn commute_bracket(n: u32, p: u32) -> Result<Functional> {
    bracket(&integral(n)?, &integral(p)?)
}

pub fn check_commute(n: u32, p: u32) -> Result<bool> {
    Ok(commute_bracket(n, p)?.is_zero())
}

fn cache_path(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("psi_{n}.txt"))
}

fn render_cache(d: &Density) -> String {
    format!("{CACHE_FORMAT}\nn={}\nN={}\nconvention={CONVENTION}\n---\n{}\n", d.n, d.big_n, d.value)
}

/// Writes `psi_n` to `dir`, atomically (temp file then rename).
pub fn write_density(dir: &Path, d: &Density) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, d.n);
    let tmp = dir.join(format!(".psi_{}.tmp.{}", d.n, std::process::id()));
    fs::write(&tmp, render_cache(d))?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

pub fn read_density(dir: &Path, n: u32) -> Result<Density> {
    let text = fs::read_to_string(cache_path(dir, n))?;
    parse_density(&text)
}

pub fn parse_density(text: &str) -> Result<Density> {
    let (header, body) =
        text.split_once("\n---\n").ok_or_else(|| Error::VersionMismatch("missing header separator".into()))?;
    let mut lines = header.lines();
    let magic = lines.next().unwrap_or_default();
    if magic != CACHE_FORMAT {
        return Err(Error::VersionMismatch(format!("found '{magic}', expected '{CACHE_FORMAT}'")));
    }
    let mut n = None;
    let mut big_n = None;
    let mut conv = None;
    for line in lines {
        match line.split_once('=') {
            Some(("n", v)) => n = v.parse::<u32>().ok(),
            Some(("N", v)) => big_n = v.parse::<u32>().ok(),
            Some(("convention", v)) => conv = Some(v.to_string()),
            _ => return Err(Error::VersionMismatch(format!("unexpected header line '{line}'"))),
        }
    }
    if conv.as_deref() != Some(CONVENTION) {
        return Err(Error::VersionMismatch(format!("convention {:?}", conv)));
    }
    let (Some(n), Some(big_n)) = (n, big_n) else {
        return Err(Error::VersionMismatch("incomplete header".into()));
    };
    Ok(Density { n, big_n, value: body.parse()? })
}
