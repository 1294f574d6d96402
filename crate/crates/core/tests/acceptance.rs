//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use qds_core::cli::{cache_densities, run, SuiteConfig};
use qds_core::flows::{check_intertwine, flow_m_biseries_bounded, flow_u_biseries_bounded, intertwine_mismatches};
use qds_core::functionals::ad_action;
use qds_core::imot::{check_commute, check_screening, density_psi, integral, parse_density, read_density};
use qds_core::lattice::{screening_window, serre_check, AqElement, Sign};
use qds_core::laxrtt::{check_ima, check_qdet, check_recursions, check_rtt, check_tagb, check_tagc};
use qds_core::ncseries::{check_aba, check_basi};
use qds_core::qhomspace::{
    check_cab, check_cab2, check_d_symmetry, check_dab2, check_pbw_independence, check_relm, check_relu, check_relum,
    check_uij,
};
use qds_core::Error;

/// Collects failing sub-items of one criterion.
#[derive(Default)]
struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn expect_ok(&mut self, r: Result<bool, Error>, what: impl Into<String>) {
        match r {
            Ok(b) => self.expect(b, what),
            Err(e) => self.failures.push(format!("{} ({e})", what.into())),
        }
    }
}

fn serre() -> Criterion {
    let mut c = Criterion::default();
    for n in 1..=4 {
        let (p, m) = (screening_window(Sign::Plus, n), screening_window(Sign::Minus, n));
        c.expect(serre_check(&p, &m), format!("serre(S+, S-) n={n}"));
        c.expect(serre_check(&m, &p), format!("serre(S-, S+) n={n}"));
    }
    c
}

fn integrals() -> Criterion {
    let mut c = Criterion::default();
    for n in 1..=6 {
        c.expect_ok(check_screening(n), format!("screening n={n}"));
    }
    for n in 1..=7 {
        for p in (n + 1)..=(8 - n) {
            c.expect_ok(check_commute(n, p), format!("commute n={n} p={p}"));
        }
    }
    c
}

fn first_density() -> Criterion {
    let mut c = Criterion::default();
    let psi1 = density_psi(1).map(|d| d.value);
    c.expect(psi1.ok() == Some(&AqElement::e(1) + &AqElement::e(2)), "psi_1 = (x1 y1)^-1 + (y1 x2)^-1");
    let ad = integral(1).and_then(|i| ad_action(&i, &AqElement::x(1)));
    let expected = &AqElement::y_inv(0) - &AqElement::y_inv(1);
    c.expect(ad.ok() == Some(expected), "ad(I_1)(x_1) = -y_1^-1 + y_0^-1");
    c
}

fn generating_function() -> Criterion {
    let mut c = Criterion::default();
    // compares N = 5 with N = 6 internally, then with psi_p for p <= 6
    c.expect_ok(check_basi(6, 5, 6), "ln_q U_N + ln_q V_N, p <= 6, N = 5 vs 6");
    c
}

fn chain_expansion() -> Criterion {
    let mut c = Criterion::default();
    for n in 1..=5 {
        c.expect(check_aba(n, 5), format!("chain expansion N={n}, degree <= 5"));
    }
    c
}

fn homogeneous_space() -> Criterion {
    let mut c = Criterion::default();
    c.expect(check_relum(4), "relum i_max=4");
    c.expect(check_relu(5, 5), "relu (5,5)");
    c.expect(check_relm(5, 5), "relm (5,5)");
    for j in 2..=4 {
        for i in 1..j {
            c.expect(check_uij(i, j), format!("u_i u_j exchange rule as stated, i={i} j={j}"));
        }
    }
    c.expect_ok(check_pbw_independence(3, 6), "PBW independence (3 letters, index sum 6)");
    c
}

fn lax_side() -> Criterion {
    let mut c = Criterion::default();
    for n in 1..=5 {
        c.expect(check_recursions(n), format!("recursions n={n}"));
    }
    for n in 1..=3 {
        c.expect_ok(check_ima(n, 6), format!("alpha three ways n={n} K=6"));
        c.expect(check_tagb(n), format!("tagb n={n}"));
        c.expect(check_tagc(n), format!("tagc as stated n={n}"));
        c.expect_ok(check_qdet(n, 6), format!("qdet n={n} K=6"));
    }
    for n in 1..=2 {
        c.expect(check_rtt(n), format!("rtt n={n}"));
    }
    c
}

fn exchange_coefficients() -> Criterion {
    let mut c = Criterion::default();
    for n in 1..=3 {
        c.expect_ok(check_cab(n, 6), format!("c n={n}"));
        c.expect_ok(check_d_symmetry(n, 6), format!("d n={n}"));
        c.expect_ok(check_cab2(n, 6), format!("c2 n={n}"));
        c.expect_ok(check_dab2(n, 6), format!("d2 n={n}"));
    }
    c
}

fn headline() -> Criterion {
    let mut c = Criterion::default();
    for n in 1..=3u32 {
        let (ka, kb) = ((4 + n) as i32, n as i32);
        c.expect_ok(flow_u_biseries_bounded(ka, kb).map(|_| true), format!("u divisions exact at ({ka},{kb})"));
        c.expect_ok(flow_m_biseries_bounded(ka, kb).map(|_| true), format!("m divisions exact at ({ka},{kb})"));
        match check_intertwine(n, 4) {
            Ok(true) => {}
            Ok(false) => {
                let bad = intertwine_mismatches(n, 4).unwrap_or_default();
                let gens: Vec<String> = bad.iter().map(|m| format!("{:?}", m.generator)).collect();
                c.failures.push(format!("intertwine n={n} j_max=4 fails on {}", gens.join(" ")));
            }
            Err(e) => c.failures.push(format!("intertwine n={n} ({e})")),
        }
    }
    c
}

fn determinism() -> Criterion {
    let mut c = Criterion::default();
    let config = SuiteConfig::default();
    match (run(&config), run(&config)) {
        (Ok(a), Ok(b)) => {
            c.expect(a.without_timing().to_json() == b.without_timing().to_json(), "identical reports");
        }
        _ => c.failures.push("suite run errored".into()),
    }
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let written = cache_densities(6, d1.path());
    c.expect(written == Ok(6), "six density files written");
    c.expect(cache_densities(6, d1.path()) == Ok(0), "cache write is idempotent");
    for n in 1..=6 {
        let name = format!("psi_{n}.txt");
        let bytes = fs::read(d1.path().join(&name)).unwrap_or_default();
        let reread = read_density(d1.path(), n);
        c.expect(reread.as_ref().ok() == density_psi(n).as_ref().ok(), format!("psi_{n} reload equals recompute"));
        if let Ok(d) = reread {
            let _ = qds_core::imot::write_density(d2.path(), &d);
        }
        let again = fs::read(d2.path().join(&name)).unwrap_or_default();
        c.expect(!bytes.is_empty() && bytes == again, format!("psi_{n} bytes stable through reload"));
    }
    let text = fs::read_to_string(d1.path().join("psi_1.txt")).unwrap_or_default();
    let corrupt = text.replacen("v1", "v0", 1);
    c.expect(matches!(parse_density(&corrupt), Err(Error::VersionMismatch(_))), "corrupt header rejected");
    c
}

type Entry = (&'static str, fn() -> Criterion);

fn main() -> ExitCode {
    let criteria: [Entry; 10] = [
        ("quantum Serre relations, n = 1..4", serre),
        ("screening n <= 6 and commutativity n+p <= 8", integrals),
        ("psi_1 and ad(I_1)(x_1)", first_density),
        ("ln_q generating function, p <= 6, N = 5 stable to 6", generating_function),
        ("chain continued fraction, N <= 5, degree <= 5", chain_expansion),
        ("homogeneous-space relations and PBW independence", homogeneous_space),
        ("Lax matrix: recursions, alpha, RTT, tagb/tagc, qdet", lax_side),
        ("exchange coefficients c, d, c2, d2, n <= 3, K = 6", exchange_coefficients),
        ("DS_q o H_n = ad(I_n) o DS_q, n <= 3, j <= 4", headline),
        ("deterministic reports and density cache round trip", determinism),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let c = f();
        let verdict = if c.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict}  {title}  ({:.1} s)", i + 1, t.elapsed().as_secs_f64());
        for f in &c.failures {
            println!("    failed: {f}");
        }
        if !c.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
