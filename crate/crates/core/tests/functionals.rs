use qds_core::functionals::{ad_action, bracket, bracket_alt, project, Functional};
use qds_core::lattice::AqElement;
use qds_core::qcoeff::QLaurent;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random grade-0 element: sums of `x_a^s y_b^s`, `s = +-1`, with small q-power coefficients.
fn random_grade0(rng: &mut ChaCha8Rng) -> AqElement {
    let mut acc = AqElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let m = if rng.gen_bool(0.5) {
            &AqElement::x(a) * &AqElement::y(b)
        } else {
            &AqElement::x_inv(a) * &AqElement::y_inv(b)
        };
        acc = &acc + &m.scale(&QLaurent::q_pow(rng.gen_range(-1..=1)));
    }
    acc
}

fn random_element(rng: &mut ChaCha8Rng) -> AqElement {
    let mut m = AqElement::one();
    for _ in 0..rng.gen_range(1..=3) {
        let site = rng.gen_range(-1..=2);
        let g = match rng.gen_range(0..4) {
            0 => AqElement::x(site),
            1 => AqElement::y(site),
            2 => AqElement::x_inv(site),
            _ => AqElement::y_inv(site),
        };
        m = &m * &g;
    }
    m
}

fn functional(rng: &mut ChaCha8Rng) -> Functional {
    project(&random_grade0(rng), 0).unwrap()
}

#[test]
fn bracket_forms_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut nonzero = 0;
    for _ in 0..20 {
        let (f, g) = (functional(&mut rng), functional(&mut rng));
        let b = bracket(&f, &g).unwrap();
        nonzero += usize::from(!b.is_zero());
        assert_eq!(b, bracket_alt(&f, &g).unwrap());
    }
    assert!(nonzero >= 5, "sample too degenerate: {nonzero}");
}

#[test]
fn jacobi_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let (f, g, h) = (functional(&mut rng), functional(&mut rng), functional(&mut rng));
        let a = bracket(&bracket(&f, &g).unwrap(), &h).unwrap();
        let b = bracket(&bracket(&g, &h).unwrap(), &f).unwrap();
        let c = bracket(&bracket(&h, &f).unwrap(), &g).unwrap();
        assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
    }
}

#[test]
fn ad_is_lie_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let (f, g) = (functional(&mut rng), functional(&mut rng));
        let x = random_element(&mut rng);
        let lhs = ad_action(&bracket(&f, &g).unwrap(), &x).unwrap();
        let fg = ad_action(&f, &ad_action(&g, &x).unwrap()).unwrap();
        let gf = ad_action(&g, &ad_action(&f, &x).unwrap()).unwrap();
        assert_eq!(lhs, &fg - &gf);
    }
}

#[test]
fn ad_commutes_with_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let f = functional(&mut rng);
        let x = random_element(&mut rng);
        assert_eq!(ad_action(&f, &x.translate(1)).unwrap(), ad_action(&f, &x).unwrap().translate(1));
    }
}

#[test]
fn projection_kills_translation_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..50 {
        let p = random_grade0(&mut rng);
        let k = rng.gen_range(-3..=3);
        assert!(project(&(&p.translate(k) - &p), 0).unwrap().is_zero());
        let x = random_element(&mut rng);
        if let qds_core::lattice::Grade::Homogeneous(d) = x.degree() {
            assert!(project(&(&x.translate(k) - &x), d).unwrap().is_zero());
        }
    }
}
