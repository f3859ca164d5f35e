use jetsec::calculus::{inversion_expansion, partner, Membership};
use jetsec::solver::{gaussian_kernel, membership_constraints, solve_subspace};
use jetsec::text::{format_laurent, parse_poly};
use jetsec::theorems::theorem_basis_p2;
use jetsec::{derive, JetPolynomial, SubspaceQuery};
use proptest::prelude::*;

fn poly(s: &str) -> JetPolynomial {
    parse_poly(s).unwrap()
}

fn partner_of(s: &str, n: u32) -> Option<JetPolynomial> {
    match partner(&poly(s), n).unwrap() {
        Membership::Member(p) => Some(p),
        Membership::NotAMember { .. } => None,
    }
}

#[test]
fn worked_examples() {
    assert_eq!(format_laurent(&inversion_expansion(&poly("x0"))), "1/x0");
    assert_eq!(
        format_laurent(&inversion_expansion(&poly("x2*x0 - 2*x1^2"))),
        "-x2/x0^3"
    );
    assert_eq!(partner_of("1", 5), Some(poly("x0^5")));
    assert_eq!(partner_of("x2*x0 - 2*x1^2", 3), Some(poly("-x2")));
    assert_eq!(partner_of("x1", 2), Some(poly("-x1")));
    assert_eq!(partner_of("x1", 1), None);
    assert_eq!(derive(&poly("x3*x0 - 3*x2*x1")), poly("x4*x0 - 2*x3*x1 - 3*x2^2"));
}

#[test]
fn kernel_of_a_small_system() {
    let m = membership_constraints(
        &[
            poly("x2*x0").terms().next().unwrap().0.clone(),
            poly("x1^2").terms().next().unwrap().0.clone(),
        ],
        3,
    );
    let k = gaussian_kernel(&m);
    assert_eq!(k.len(), 1);
    assert_eq!(k[0][0], jetsec::rational::int(1));
    assert_eq!(k[0][1], jetsec::rational::int(-2));
}

#[test]
fn closed_form_basis_matches_solver_for_n5() {
    let solved = solve_subspace(SubspaceQuery::new(5, 2, None).unwrap()).unwrap();
    let basis = theorem_basis_p2(5).unwrap();
    assert_eq!(solved.dimension, 10);
    assert_eq!(basis.len(), 10);
    let mut joint = basis.clone();
    joint.extend(solved.basis);
    assert_eq!(jetsec::solver::polynomial_rank(&joint), 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partner_is_an_involution(n in 1u32..7, picks in prop::collection::vec((0u32..7, any::<prop::sample::Index>(), -5i64..=5), 1..5)) {
        let mut rho = JetPolynomial::zero();
        for (d, idx, c) in picks {
            let d = d % (n + 1);
            let basis = solve_subspace(SubspaceQuery::new(n, d, None).unwrap()).unwrap().basis;
            let b = &basis[idx.index(basis.len())];
            rho = &rho + &b.scale(&jetsec::rational::int(c));
        }
        prop_assume!(!rho.is_zero());
        let Membership::Member(rho2) = partner(&rho, n).unwrap() else {
            panic!("{rho} is a combination of members");
        };
        let Membership::Member(back) = partner(&rho2, n).unwrap() else {
            panic!("{rho2} is a partner");
        };
        prop_assert_eq!(back, rho);
    }
}
