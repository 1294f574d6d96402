use qds_core::imot::density_psi;
use qds_core::lattice::AqElement;
use qds_core::ncseries::{basi_coefficients, check_aba, check_basi, check_qbinomial_product};

#[test]
fn generating_function_p6() {
    assert!(check_basi(6, 5, 8).unwrap());
}

#[test]
fn generating_function_negative_control() {
    let c = basi_coefficients(2, 4, 4).unwrap();
    assert_eq!(c[1], density_psi(2).unwrap().value);
    assert_ne!(c[1], AqElement::e(1).pow(2));
}

#[test]
fn nested_chain_inverse() {
    for n in 1..=5 {
        for d in 0..=5 {
            assert!(check_aba(n, d), "N={n} D={d}");
        }
    }
    for m in 1..=4 {
        assert!(check_qbinomial_product(m, 6));
    }
}
