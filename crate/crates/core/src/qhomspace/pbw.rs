use std::collections::BTreeMap;
use std::fmt;

use super::linalg::{rank, solve};
use super::{gen_image_m, gen_image_u};
use crate::error::Result;
use crate::lattice::{AqElement, Grade};
use crate::qcoeff::{QFraction, QLaurent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    U(u32),
    M(u32),
}

impl Generator {
    pub fn image(self) -> AqElement {
        match self {
            Generator::U(i) => gen_image_u(i),
            Generator::M(i) => gen_image_m(i),
        }
    }
}

/// `prod u_i^{a_i} prod m_j^{b_j}`, u-block first, indices ascending in each block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    pub u_exponents: BTreeMap<u32, u32>,
    pub m_exponents: BTreeMap<u32, u32>,
}

impl PbwMonomial {
    pub fn from_word(word: &[Generator]) -> Self {
        let mut m = PbwMonomial::default();
        for g in word {
            match *g {
                Generator::U(i) => *m.u_exponents.entry(i).or_default() += 1,
                Generator::M(i) => *m.m_exponents.entry(i).or_default() += 1,
            }
        }
        m
    }

    /// The ordered word this monomial stands for.
    pub fn word(&self) -> Vec<Generator> {
        let mut w = Vec::new();
        for (&i, &a) in &self.u_exponents {
            w.extend(std::iter::repeat_n(Generator::U(i), a as usize));
        }
        for (&j, &b) in &self.m_exponents {
            w.extend(std::iter::repeat_n(Generator::M(j), b as usize));
        }
        w
    }

    pub fn image(&self) -> AqElement {
        word_image(&self.word())
    }

    /// `sum of u-exponents - sum of m-exponents`.
    pub fn degree(&self) -> i64 {
        self.u_exponents.values().map(|&a| a as i64).sum::<i64>()
            - self.m_exponents.values().map(|&b| b as i64).sum::<i64>()
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word();
        if w.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = w
            .iter()
            .map(|g| match g {
                Generator::U(i) => format!("u{i}"),
                Generator::M(j) => format!("m{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn word_image(word: &[Generator]) -> AqElement {
    word.iter().fold(AqElement::one(), |acc, g| &acc * &g.image())
}

/// An element given by PBW coordinates together with its image in `A_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QhbElement {
    pub terms: Vec<(PbwMonomial, QFraction)>,
    pub image: AqElement,
}

impl QhbElement {
    /// Coordinates as Laurent polynomials in `q`, if they all are.
    pub fn laurent_terms(&self) -> Option<Vec<(PbwMonomial, QLaurent)>> {
        self.terms.iter().map(|(m, c)| c.to_qlaurent().map(|l| (m.clone(), l))).collect()
    }

    /// Recomputes the image from the coordinates.
    pub fn image_from_terms(&self) -> Result<AqElement> {
        let mut out = AqElement::zero();
        for (m, c) in &self.terms {
            let l = c
                .to_qlaurent()
                .ok_or_else(|| crate::Error::Precondition("coordinate is not a Laurent polynomial".into()))?;
            out = &out + &m.image().scale(&l);
        }
        Ok(out)
    }
}

/// Multisets of `count` positive indices summing to `sum`, ascending.
fn partitions(count: u32, sum: u32) -> Vec<Vec<u32>> {
    fn rec(count: u32, sum: u32, min: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if count == 0 {
            if sum == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let mut k = min;
        while k * count <= sum {
            acc.push(k);
            rec(count - 1, sum - k, k, acc, out);
            acc.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    rec(count, sum, 1, &mut Vec::new(), &mut out);
    out
}

/// PBW monomials with the given u-count, m-count, u-index-sum and m-index-sum.
pub fn pbw_monomials(u_count: u32, m_count: u32, u_sum: u32, m_sum: u32) -> Vec<PbwMonomial> {
    let mut out = Vec::new();
    for us in partitions(u_count, u_sum) {
        for ms in partitions(m_count, m_sum) {
            let w: Vec<Generator> =
                us.iter().map(|&i| Generator::U(i)).chain(ms.iter().map(|&j| Generator::M(j))).collect();
            out.push(PbwMonomial::from_word(&w));
        }
    }
    out
}

/// Rewrites the image of `word` in the PBW basis with matching counts and index sums.
pub fn pbw_expand(word: &[Generator]) -> Result<QhbElement> {
    let (mut uc, mut mc, mut us, mut ms) = (0, 0, 0, 0);
    for g in word {
        match *g {
            Generator::U(i) => {
                uc += 1;
                us += i;
            }
            Generator::M(j) => {
                mc += 1;
                ms += j;
            }
        }
    }
    let basis = pbw_monomials(uc, mc, us, ms);
    let images: Vec<AqElement> = basis.iter().map(PbwMonomial::image).collect();
    let target = word_image(word);
    let coeffs = solve(&images, &target)?;
    let terms = basis.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect();
    Ok(QhbElement { terms, image: target })
}

/// All PBW monomials with `1..=max_letters` letters and total index sum at most
/// `max_index_sum` have linearly independent images. Monomials are grouped by
/// the bigrading `(deg, deg_p)` of `A_q`, which separates distinct groups.
pub fn check_pbw_independence(max_letters: u32, max_index_sum: u32) -> Result<bool> {
    let mut groups: BTreeMap<(i64, i64), Vec<AqElement>> = BTreeMap::new();
    for letters in 1..=max_letters {
        for uc in 0..=letters {
            let mc = letters - uc;
            for us in uc..=max_index_sum {
                for ms in mc..=(max_index_sum - us) {
                    if (uc == 0 && us > 0) || (mc == 0 && ms > 0) {
                        continue;
                    }
                    for m in pbw_monomials(uc, mc, us, ms) {
                        let img = m.image();
                        let key = match (img.degree(), img.principal_degree()) {
                            (Grade::Homogeneous(d), Grade::Homogeneous(p)) => (d, p),
                            _ => return Ok(false),
                        };
                        groups.entry(key).or_default().push(img);
                    }
                }
            }
        }
    }
    for g in groups.values() {
        if rank(g)? != g.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
