use qds_core::flows::{
    check_flow_commute, check_imvl, check_imvl_with, check_intertwine, check_intertwine_log_normalized, extract_flow,
    flow_as_adjoint, intertwine_mismatches, FlowNormalization,
};
use qds_core::lattice::AqElement;
use qds_core::qcoeff::{q_int, QLaurent};
use qds_core::qhomspace::{gen_image_m, gen_image_u, Generator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn intertwine_first_flow_literal() {
    let bad = intertwine_mismatches(1, 4).unwrap();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn higher_flows_differ_from_adjoint_by_q_integer() {
    for n in 2..=3 {
        assert!(!check_intertwine(n, 4).unwrap());
        for m in intertwine_mismatches(n, 4).unwrap() {
            // difference = H_n(g) - [n] H_n(g)
            let h = extract_flow(n, m.generator).unwrap();
            let expected = h.scale(&(&QLaurent::one() - &q_int(n as i64)));
            assert_eq!(m.difference, expected, "n={n} {:?}", m.generator);
        }
    }
}

#[test]
fn intertwine_log_normalized() {
    for n in 1..=3 {
        assert!(check_intertwine_log_normalized(n, 4).unwrap(), "n={n}");
    }
}

#[test]
fn flows_commute_on_generators() {
    let sample: Vec<AqElement> = (1..=3).flat_map(|i| [gen_image_u(i), gen_image_m(i)]).collect();
    for m in 1..=3 {
        for n in m..=3 {
            assert!(check_flow_commute(m, n, &sample).unwrap(), "H_{m}, H_{n}");
        }
    }
}

#[test]
fn v_transforms_by_closed_form() {
    assert!(check_imvl(2).unwrap());
    assert!(!check_imvl_with(2, FlowNormalization::Literal).unwrap());
}

#[test]
fn leibniz_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pick = |rng: &mut ChaCha8Rng| {
        let j = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            Generator::U(j)
        } else {
            Generator::M(j)
        }
    };
    for _ in 0..20 {
        let (g, h) = (pick(&mut rng), pick(&mut rng));
        let n = rng.gen_range(1..=2);
        let lhs = flow_as_adjoint(n, &(&g.image() * &h.image()), FlowNormalization::LogCoefficient).unwrap();
        let hg = extract_flow(n, g).unwrap();
        let hh = extract_flow(n, h).unwrap();
        let rhs = &(&hg * &h.image()) + &(&g.image() * &hh);
        assert_eq!(lhs, rhs, "n={n} {g:?} {h:?}");
    }
}
