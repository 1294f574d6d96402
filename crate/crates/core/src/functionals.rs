//! Functionals: translation-orbit classes in `A_q[n] / Im(T - Id)`, the Lie
//! bracket on grade-0 classes and their adjoint action on `A_q`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{AqElement, Grade, LatticeMonomial};
use crate::qcoeff::QLaurent;

/// Canonical representative: every nonconstant monomial has minimal site 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Functional {
    grade: i64,
    canon: AqElement,
}

fn canonical_shift(m: &LatticeMonomial) -> i32 {
    m.min_site().map(|s| 1 - s).unwrap_or(0)
}

fn canonicalize(p: &AqElement) -> AqElement {
    AqElement::from_terms(p.terms().map(|(m, c)| (m.translate(canonical_shift(m)), c.clone())))
}

impl Functional {
    pub fn zero(grade: i64) -> Self {
        Functional { grade, canon: AqElement::zero() }
    }

    pub fn grade(&self) -> i64 {
        self.grade
    }

    pub fn canon(&self) -> &AqElement {
        &self.canon
    }

    pub fn is_zero(&self) -> bool {
        self.canon.is_zero()
    }

    pub fn add(&self, other: &Functional) -> Result<Functional> {
        if self.grade != other.grade {
            return Err(Error::GradeMismatch { expected: self.grade });
        }
        Ok(Functional { grade: self.grade, canon: &self.canon + &other.canon })
    }

    pub fn sub(&self, other: &Functional) -> Result<Functional> {
        self.add(&other.scale(&QLaurent::from_int(-1)))
    }

    pub fn scale(&self, c: &QLaurent) -> Functional {
        Functional { grade: self.grade, canon: self.canon.scale(c) }
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I[{}]({:?})", self.grade, self.canon)
    }
}

/// Class `I(P)` of a homogeneous element of degree `n`.
pub fn project(p: &AqElement, n: i64) -> Result<Functional> {
    match p.degree() {
        Grade::Zero => Ok(Functional::zero(n)),
        Grade::Homogeneous(d) if d == n => Ok(Functional { grade: n, canon: canonicalize(p) }),
        _ => Err(Error::GradeMismatch { expected: n }),
    }
}

/// Sum over `i` of `f(T^i left, right)` where `i` ranges over the shifts for which
/// the translated supports are not fully separated. Constants are dropped
/// because they are central.
fn windowed_sum<F>(left: &AqElement, right: &AqElement, mut f: F) -> AqElement
where
    F: FnMut(i32) -> AqElement,
{
    let (Some((pmin, pmax)), Some((qmin, qmax))) = (left.support(), right.support()) else {
        return AqElement::zero();
    };
    let mut acc = AqElement::zero();
    for i in (qmin - pmax - 1)..=(qmax - pmin + 1) {
        acc = &acc + &f(i);
    }
    acc
}

fn nonconstant_part(p: &AqElement) -> AqElement {
    AqElement::from_terms(p.terms().filter(|(m, _)| !m.is_one()).map(|(m, c)| (m.clone(), c.clone())))
}

/// `{F, G} = I( (q-1)^-1 sum_i [T^i P, Q] )` for `F = I(P)` of grade 0.
pub fn bracket(f: &Functional, g: &Functional) -> Result<Functional> {
    if f.grade != 0 {
        return Err(Error::NonZeroGrade(f.grade));
    }
    let p = nonconstant_part(&f.canon);
    let q = &g.canon;
    let sum = windowed_sum(&p, q, |i| p.translate(i).commutator(q));
    project(&sum.exact_div_q_minus_1()?, g.grade)
}

/// Same bracket, summing over translates of `Q` instead.
pub fn bracket_alt(f: &Functional, g: &Functional) -> Result<Functional> {
    if f.grade != 0 {
        return Err(Error::NonZeroGrade(f.grade));
    }
    let p = nonconstant_part(&f.canon);
    let q = nonconstant_part(&g.canon);
    let sum = windowed_sum(&q, &p, |i| p.commutator(&q.translate(i)));
    project(&sum.exact_div_q_minus_1()?, g.grade)
}

/// The derivation `ad(F)(x) = (q-1)^-1 sum_k [T^k P, x]`.
pub fn ad_action(f: &Functional, x: &AqElement) -> Result<AqElement> {
    if f.grade != 0 {
        return Err(Error::NonZeroGrade(f.grade));
    }
    let p = nonconstant_part(&f.canon);
    windowed_sum(&p, x, |k| p.translate(k).commutator(x)).exact_div_q_minus_1()
}

/// Solves `T(R) - R = P` with `R` of finite support, by cumulative sums along
/// each translation orbit.
pub fn solve_telescope(p: &AqElement) -> Result<AqElement> {
    // orbit representative -> (shift -> coefficient)
    let mut orbits: BTreeMap<LatticeMonomial, BTreeMap<i32, QLaurent>> = BTreeMap::new();
    for (m, c) in p.terms() {
        if m.is_one() {
            return Err(Error::NotTelescoping);
        }
        let k = -canonical_shift(m);
        orbits.entry(m.translate(-k)).or_default().insert(k, c.clone());
    }
    let mut out = AqElement::zero();
    for (rep, coeffs) in orbits {
        let lo = *coeffs.keys().next().unwrap();
        let hi = *coeffs.keys().next_back().unwrap();
        let mut running = QLaurent::zero();
        for k in lo..=hi {
            if let Some(c) = coeffs.get(&k) {
                running += c;
            }
            if k < hi {
                out.add_term(rep.translate(k), &-&running);
            }
        }
        if !running.is_zero() {
            return Err(Error::NotTelescoping);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(p: &AqElement) -> Functional {
        let d = p.degree().value().unwrap_or(0);
        project(p, d).unwrap()
    }

    fn i1() -> Functional {
        class(&(AqElement::e(1) + AqElement::e(2)))
    }

    #[test]
    fn projection_examples() {
        let p = AqElement::e(5); // (x_3 y_3)^-1
        assert_eq!(class(&p).canon(), &AqElement::e(1));
        let m = &AqElement::x(2) * &AqElement::y_inv(5);
        let diff = &m.translate(1) - &m;
        assert!(project(&diff, 2).unwrap().is_zero());
        let two = project(&(AqElement::x(0) + AqElement::x(1)), 1).unwrap();
        assert_eq!(two.canon(), &AqElement::x(1).scale_int(2));
        assert!(matches!(project(&AqElement::x(1), 0), Err(Error::GradeMismatch { .. })));
    }

    #[test]
    fn bracket_trivial_cases() {
        let one = class(&AqElement::one());
        let g = class(&AqElement::x(0));
        assert!(bracket(&one, &g).unwrap().is_zero());
        assert!(bracket(&i1(), &one).unwrap().is_zero());
        assert!(bracket_alt(&one, &g).unwrap().is_zero());
        assert!(matches!(bracket(&g, &i1()), Err(Error::NonZeroGrade(1))));
    }

    #[test]
    fn ad_i1_on_x1() {
        let r = ad_action(&i1(), &AqElement::x(1)).unwrap();
        assert_eq!(r, &AqElement::y_inv(0) - &AqElement::y_inv(1));
        let rp = solve_telescope(&r).unwrap();
        assert_eq!(rp, -AqElement::y_inv(0));
        assert!(ad_action(&class(&AqElement::one()), &AqElement::x(1)).unwrap().is_zero());
    }

    #[test]
    fn telescope_cases() {
        assert!(solve_telescope(&AqElement::zero()).unwrap().is_zero());
        let m = &(&AqElement::x(2) * &AqElement::y(3)) * &AqElement::x_inv(4);
        assert_eq!(solve_telescope(&(&m.translate(1) - &m)).unwrap(), m);
        assert!(matches!(solve_telescope(&AqElement::x(1)), Err(Error::NotTelescoping)));
    }

    #[test]
    fn screening_negative_control() {
        let e1 = class(&AqElement::e(1));
        let sigma_plus = class(&AqElement::x(0));
        assert!(!bracket(&e1, &sigma_plus).unwrap().is_zero());
        assert!(bracket(&i1(), &sigma_plus).unwrap().is_zero());
    }
}
