use std::collections::BTreeMap;

use crate::qcoeff::{f_q, q_binomial, QLaurent};

/// Element of the chain algebra on `t_1..t_N` with `t_i t_{i+1} = q t_{i+1} t_i`
/// and distant generators commuting, truncated at a total degree.
///
/// Words are stored in the normal order `t_N^{a_N} ... t_1^{a_1}`; the key
/// holds `(a_1, ..., a_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElement {
    n: usize,
    max_degree: u32,
    terms: BTreeMap<Vec<u32>, QLaurent>,
}

impl ChainElement {
    pub fn zero(n: usize, max_degree: u32) -> Self {
        ChainElement { n, max_degree, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, max_degree: u32) -> Self {
        let mut e = Self::zero(n, max_degree);
        e.terms.insert(vec![0; n], QLaurent::one());
        e
    }

    /// The generator `t_i`, `1 <= i <= n`.
    pub fn gen(n: usize, max_degree: u32, i: usize) -> Self {
        let mut e = Self::zero(n, max_degree);
        if max_degree >= 1 {
            let mut w = vec![0; n];
            w[i - 1] = 1;
            e.terms.insert(w, QLaurent::one());
        }
        e
    }

    pub fn coeff(&self, word: &[u32]) -> QLaurent {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, w: Vec<u32>, c: QLaurent) {
        if c.is_zero() || w.iter().sum::<u32>() > self.max_degree {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.max_degree);
        for (a, ca) in &self.terms {
            let da: u32 = a.iter().sum();
            for (b, cb) in &other.terms {
                if da + b.iter().sum::<u32>() > self.max_degree {
                    continue;
                }
                // t_{j-1}^{a_{j-1}} has to move right past t_j^{b_j}.
                let e: u32 = (1..self.n).map(|j| a[j - 1] * b[j]).sum();
                let w: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(w, (ca * cb).shift_q(e as i32));
            }
        }
        out
    }

    /// `(1 - x)^-1` for `x` without constant term.
    pub fn one_minus_inverse(x: &Self) -> Self {
        let one = Self::one(x.n, x.max_degree);
        let mut acc = one.clone();
        let mut pw = one;
        for _ in 0..x.max_degree {
            pw = pw.mul(x);
            acc = acc.add(&pw);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The nested inverse `(1 - (1 - ( ... (1 - t_N)^-1 t_{N-1} ... )^-1 t_2)^-1 t_1)^-1`.
pub fn nested_chain_inverse(n: usize, max_degree: u32) -> ChainElement {
    let mut g = ChainElement::one_minus_inverse(&ChainElement::gen(n, max_degree, n));
    for k in (1..n).rev() {
        let x = g.mul(&ChainElement::gen(n, max_degree, k));
        g = ChainElement::one_minus_inverse(&x);
    }
    g
}

/// `sum F_q(a) t_N^{a_N} ... t_1^{a_1}` over all words of total degree at most `max_degree`.
pub fn fq_chain_sum(n: usize, max_degree: u32) -> ChainElement {
    fn rec(n: usize, rest: u32, w: &mut Vec<u32>, out: &mut ChainElement) {
        if w.len() == n {
            let a: Vec<i64> = w.iter().map(|&x| x as i64).collect();
            out.add_term(w.clone(), f_q(&a));
            return;
        }
        for x in 0..=rest {
            w.push(x);
            rec(n, rest - x, w, out);
            w.pop();
        }
    }
    let mut out = ChainElement::zero(n, max_degree);
    rec(n, max_degree, &mut Vec::with_capacity(n), &mut out);
    out
}

pub fn check_aba(n: usize, max_degree: u32) -> bool {
    n >= 1 && nested_chain_inverse(n, max_degree) == fq_chain_sum(n, max_degree)
}

/// `prod_{s=0}^{M-1} (1 - q^s t)^-1 = sum_k C(M+k-1, k) t^k` up to `t^kmax`.
pub fn check_qbinomial_product(m: u32, kmax: usize) -> bool {
    let mut prod = vec![QLaurent::zero(); kmax + 1];
    prod[0] = QLaurent::one();
    for s in 0..m as i32 {
        // multiply by the geometric series in q^s t
        let mut next = vec![QLaurent::zero(); kmax + 1];
        for (i, c) in prod.iter().enumerate() {
            for j in 0..=(kmax - i) {
                next[i + j] += &c.shift_q(s * j as i32);
            }
        }
        prod = next;
    }
    (0..=kmax).all(|k| prod[k] == q_binomial(m as i64 + k as i64 - 1, k as i64))
}
