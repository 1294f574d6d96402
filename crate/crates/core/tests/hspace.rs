use qds_core::qhomspace::*;

#[test]
fn relations_at_default_bounds() {
    assert!(check_relum(4));
    assert!(check_relu(5, 5));
    assert!(check_relm(5, 5));
}

#[test]
fn commutator_relation_as_displayed() {
    // The displayed range k = i..i+j-1 does not hold; k = i..j-1 does.
    for j in 2..=4 {
        for i in 1..j {
            assert!(!check_uij(i, j), "({i},{j})");
            assert!(uij_defect_with_upper(i, j, j - 1).is_zero(), "({i},{j})");
        }
    }
}

#[test]
fn pbw_spot_check() {
    assert!(check_pbw_independence(3, 6).unwrap());
}

#[test]
fn propcab_identities() {
    for n in 1..=3 {
        assert!(check_cab(n, 6).unwrap(), "cab n={n}");
        assert!(check_d_symmetry(n, 6).unwrap(), "dab n={n}");
        assert!(check_cab2(n, 6).unwrap(), "cab2 n={n}");
        assert!(check_dab2(n, 6).unwrap(), "dab2 n={n}");
    }
}
