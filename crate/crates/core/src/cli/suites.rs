//! The individual checks behind each suite.

use std::collections::BTreeMap;

use super::config::{Suite, SuiteConfig};
use crate::error::Result;
use crate::flows::{
    check_flow_commute, check_imvl, flow_m_biseries_bounded, flow_u_biseries_bounded, intertwine_mismatches_with,
    v_series, w_series, FlowNormalization,
};
use crate::functionals::ad_action;
use crate::imot::{commute_bracket, density_psi, integral, minimal_chain, read_density, screening_brackets};
use crate::lattice::{screening_window, serre_expression, AqElement, Sign};
use crate::laxrtt;
use crate::ncseries::{check_aba, check_basi};
use crate::qhomspace::{
    check_cab, check_cab2, check_d_symmetry, check_dab2, check_pbw_independence, check_relm, check_relu, check_relum,
    gen_image_m, gen_image_u, uij_defect, Generator,
};

/// Result of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub pass: bool,
    /// Counterexample or explanation when failing.
    pub detail: Option<String>,
}

impl Outcome {
    fn from_bool(pass: bool) -> Self {
        Outcome { pass, detail: None }
    }

    fn from_defect(x: &AqElement) -> Self {
        if x.is_zero() {
            Outcome::from_bool(true)
        } else {
            Outcome { pass: false, detail: Some(x.to_string()) }
        }
    }
}

type Runner = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub params: BTreeMap<String, i64>,
    run: Runner,
}

impl Check {
    /// Runs the check; engine errors become failing outcomes.
    pub fn execute(&self) -> Outcome {
        match (self.run)() {
            Ok(o) => o,
            Err(e) => Outcome { pass: false, detail: Some(format!("error: {e}")) },
        }
    }

    pub fn full_name(&self) -> String {
        format!("{}/{}", self.suite, self.name)
    }
}

struct Builder {
    suite: Suite,
    out: Vec<Check>,
}

impl Builder {
    fn add<F>(&mut self, name: &'static str, params: &[(&str, i64)], f: F)
    where
        F: Fn() -> Result<Outcome> + Send + Sync + 'static,
    {
        self.out.push(Check {
            suite: self.suite,
            name,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            run: Box::new(f),
        });
    }

    fn add_bool<F>(&mut self, name: &'static str, params: &[(&str, i64)], f: F)
    where
        F: Fn() -> Result<bool> + Send + Sync + 'static,
    {
        self.add(name, params, move || f().map(Outcome::from_bool));
    }
}

fn serre(b: &mut Builder, c: &SuiteConfig) {
    for n in 1..=c.n_max {
        let (p, m) = (screening_window(Sign::Plus, n), screening_window(Sign::Minus, n));
        let (p2, m2) = (p.clone(), m.clone());
        b.add("plus_minus", &[("n", n as i64)], move || Ok(Outcome::from_defect(&serre_expression(&p, &m))));
        b.add("minus_plus", &[("n", n as i64)], move || Ok(Outcome::from_defect(&serre_expression(&m2, &p2))));
    }
}

fn imot(b: &mut Builder, c: &SuiteConfig) {
    b.add("psi1_closed_form", &[], || {
        let expected = &AqElement::e(1) + &AqElement::e(2);
        Ok(Outcome::from_defect(&(&density_psi(1)?.value - &expected)))
    });
    b.add("ad_i1_x1", &[], || {
        let expected = &AqElement::y_inv(0) - &AqElement::y_inv(1);
        Ok(Outcome::from_defect(&(&ad_action(&integral(1)?, &AqElement::x(1))? - &expected)))
    });
    for n in 1..=c.n_max {
        b.add("screening", &[("n", n as i64)], move || {
            let (p, m) = screening_brackets(n)?;
            Ok(Outcome::from_defect(&(p.canon() + m.canon())))
        });
    }
    for n in 1..=c.n_max {
        for p in (n + 1)..=(c.n_max + 2 - n) {
            b.add("commute", &[("n", n as i64), ("p", p as i64)], move || {
                Ok(Outcome::from_defect(commute_bracket(n, p)?.canon()))
            });
        }
    }
    if let Some(dir) = c.cache_dir.clone() {
        for n in 1..=c.n_max {
            let dir = dir.clone();
            b.add_bool("density_cache_roundtrip", &[("n", n as i64)], move || {
                Ok(read_density(&dir, n)? == density_psi(n)?)
            });
        }
    }
}

fn basi(b: &mut Builder, c: &SuiteConfig) {
    let p = c.n_max;
    let chain = minimal_chain(p).max(5);
    b.add_bool("ln_q_sum", &[("p_max", p as i64), ("N", chain as i64)], move || check_basi(p, chain, p as i32));
}

fn aba(b: &mut Builder, c: &SuiteConfig) {
    let deg = c.series_order.min(5) as u32;
    for n in 1..=5usize {
        b.add_bool("chain_expansion", &[("N", n as i64), ("degree", deg as i64)], move || Ok(check_aba(n, deg)));
    }
}

fn hspace(b: &mut Builder, c: &SuiteConfig) {
    let k = c.series_order.min(5);
    b.add_bool("relum", &[("i_max", 4)], || Ok(check_relum(4)));
    b.add_bool("relu", &[("i_max", 5), ("K", k as i64)], move || Ok(check_relu(5, k)));
    b.add_bool("relm", &[("i_max", 5), ("K", k as i64)], move || Ok(check_relm(5, k)));
    for j in 2..=4u32 {
        for i in 1..j {
            b.add("uij", &[("i", i as i64), ("j", j as i64)], move || Ok(Outcome::from_defect(&uij_defect(i, j))));
        }
    }
    b.add_bool("pbw_independence", &[("letters", 3), ("index_sum", 6)], || check_pbw_independence(3, 6));
}

fn rtt(b: &mut Builder, c: &SuiteConfig) {
    let k = c.series_order;
    for n in 1..=5 {
        b.add_bool("recursions", &[("n", n)], move || Ok(laxrtt::check_recursions(n as u32)));
    }
    for n in 1..=3 {
        b.add_bool("ima", &[("n", n), ("K", k as i64)], move || laxrtt::check_ima(n as u32, k));
    }
    for n in 1..=c.rtt_n {
        b.add_bool("rtt", &[("n", n as i64)], move || Ok(laxrtt::check_rtt(n)));
    }
    b.add_bool("rtt_twist_control", &[("n", 1)], || Ok(!laxrtt::check_rtt_with_twist(1, 1)));
    for n in 1..=3 {
        b.add_bool("taga", &[("n", n)], move || Ok(laxrtt::check_taga(n as u32)));
        b.add_bool("tagb", &[("n", n)], move || Ok(laxrtt::check_tagb(n as u32)));
        b.add_bool("tagc", &[("n", n)], move || Ok(laxrtt::check_tagc(n as u32)));
        b.add_bool("tagc_cleared", &[("n", n)], move || Ok(laxrtt::check_tagc_cleared(n as u32)));
    }
}

fn qdet(b: &mut Builder, c: &SuiteConfig) {
    let k = c.series_order;
    for n in 1..=3 {
        b.add_bool("qdet", &[("n", n), ("K", k as i64)], move || laxrtt::check_qdet(n as u32, k));
    }
}

fn propcab(b: &mut Builder, c: &SuiteConfig) {
    let k = c.series_order;
    for n in 1..=3u32 {
        let p = [("n", n as i64), ("K", k as i64)];
        b.add_bool("cab", &p, move || check_cab(n, k));
        b.add_bool("cab2", &p, move || check_cab2(n, k));
        b.add_bool("d_symmetry", &p, move || check_d_symmetry(n, k));
        b.add_bool("dab2", &p, move || check_dab2(n, k));
    }
}

fn generator_sample(max: u32) -> Vec<AqElement> {
    (1..=max).flat_map(|i| [gen_image_u(i), gen_image_m(i)]).collect()
}

fn flows(b: &mut Builder, c: &SuiteConfig) {
    let k = c.series_order;
    b.add_bool("vw_cross_check", &[("K", k as i64)], move || {
        v_series(k)?;
        w_series(k)?;
        Ok(true)
    });
    let (ka, kb) = ((c.flow_j + c.flow_n) as i32, c.flow_n as i32);
    b.add_bool("divided_differences", &[("ka", ka as i64), ("kb", kb as i64)], move || {
        flow_u_biseries_bounded(ka, kb)?;
        flow_m_biseries_bounded(ka, kb)?;
        Ok(true)
    });
    for m in 1..=c.flow_n {
        for n in (m + 1)..=c.flow_n {
            b.add_bool("commute", &[("m", m as i64), ("n", n as i64)], move || {
                check_flow_commute(m, n, &generator_sample(3))
            });
        }
    }
    b.add_bool("imvl", &[("K", 2)], || check_imvl(2));
}

fn intertwine(b: &mut Builder, c: &SuiteConfig) {
    let j = c.flow_j;
    for n in 1..=c.flow_n {
        for (name, norm) in
            [("literal", FlowNormalization::Literal), ("log_normalized", FlowNormalization::LogCoefficient)]
        {
            b.add(name, &[("n", n as i64), ("j_max", j as i64)], move || {
                let bad = intertwine_mismatches_with(n, j, norm)?;
                if bad.is_empty() {
                    return Ok(Outcome::from_bool(true));
                }
                let lines: Vec<String> = bad
                    .iter()
                    .map(|m| {
                        let g = match m.generator {
                            Generator::U(i) => format!("u{i}"),
                            Generator::M(i) => format!("m{i}"),
                        };
                        format!("{g}: {}", m.difference)
                    })
                    .collect();
                Ok(Outcome { pass: false, detail: Some(lines.join("\n")) })
            });
        }
    }
}

/// All checks selected by `config`, in a fixed order.
pub fn build_checks(config: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for &suite in &config.suites {
        let mut b = Builder { suite, out: Vec::new() };
        match suite {
            Suite::Serre => serre(&mut b, config),
            Suite::Imot => imot(&mut b, config),
            Suite::Basi => basi(&mut b, config),
            Suite::Aba => aba(&mut b, config),
            Suite::Hspace => hspace(&mut b, config),
            Suite::Rtt => rtt(&mut b, config),
            Suite::Qdet => qdet(&mut b, config),
            Suite::Propcab => propcab(&mut b, config),
            Suite::Flows => flows(&mut b, config),
            Suite::Intertwine => intertwine(&mut b, config),
        }
        out.extend(b.out);
    }
    out
}

/// One line of `list_checks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteListing {
    pub suite: Suite,
    pub parameters: &'static str,
    pub statement: &'static str,
}

pub fn list_checks() -> Vec<SuiteListing> {
    let row = |suite, parameters, statement| SuiteListing { suite, parameters, statement };
    vec![
        row(Suite::Serre, "n = 1..n-max", "quantum Serre relations for the screening windows x_1+..+x_n, y_1+..+y_n"),
        row(
            Suite::Imot,
            "n <= n-max, n+p <= n-max+2",
            "psi_1 closed form, ad(I_1)(x_1), screening and pairwise commutativity of I_n",
        ),
        row(Suite::Basi, "p <= n-max, N >= 5", "ln_q U_N + ln_q V_N has [p]-cleared coefficients psi_p, stable in N"),
        row(
            Suite::Aba,
            "N <= 5, degree <= min(order, 5)",
            "nested inverse of the chain 1 + e_1(1 + e_2(...)) equals its F_q sum",
        ),
        row(
            Suite::Hspace,
            "i_max = 5, K = min(order, 5)",
            "relations of u(lambda), m(lambda), the u_i u_j exchange rule, PBW independence",
        ),
        row(
            Suite::Rtt,
            "n <= 5 / 3 / rtt-n, K = order",
            "h_n recursions, alpha(lambda) three ways, RTT, exchange relations of the L entries",
        ),
        row(
            Suite::Qdet,
            "n <= 3, K = order",
            "quantum determinant normalization a_11(q lambda)(d - c a^-1 b)(lambda) = 1",
        ),
        row(
            Suite::Propcab,
            "n <= 3, K = order",
            "exchange coefficients c, d, c^(2), d^(2) between powers of u(lambda) and u(mu)",
        ),
        row(
            Suite::Flows,
            "ka = flow-j + flow-n, kb = flow-n",
            "v/w expansions, exact divided differences, commuting flows, H(mu) on v(lambda)",
        ),
        row(
            Suite::Intertwine,
            "n <= flow-n, j <= flow-j",
            "DS_q o H_n = ad(I_n) o DS_q on u_j, m_j, as stated and with I_n / [n]",
        ),
    ]
}
