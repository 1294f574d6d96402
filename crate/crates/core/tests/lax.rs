use qds_core::laxrtt::*;

#[test]
fn recursions_and_alpha() {
    for n in 1..=5 {
        assert!(check_recursions(n), "n={n}");
    }
    for n in 1..=3 {
        assert!(check_ima(n, 6).unwrap(), "n={n}");
    }
}

#[test]
fn rtt_and_tag() {
    for n in 0..=2 {
        assert!(check_rtt(n), "n={n}");
    }
    // the opposite twist pattern is rejected
    assert!(!check_rtt_with_twist(1, 1));
    for n in 1..=3 {
        assert!(check_taga(n), "n={n}");
        assert!(check_tagb(n), "n={n}");
        assert!(check_tagc_cleared(n), "n={n}");
        assert!(!check_tagc(n), "n={n}");
    }
}

#[test]
fn quantum_determinant() {
    for n in 1..=3 {
        assert!(check_qdet(n, 6).unwrap(), "n={n}");
    }
}
