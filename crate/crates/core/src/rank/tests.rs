use super::*;
use crate::poly::{parse_poly, parse_poly_infer, random_form, var_names};
use proptest::prelude::*;

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn named(blocks: &[(&str, &str)]) -> BlockDecomposition {
    let decls: Vec<(Vec<String>, String)> = blocks
        .iter()
        .map(|(v, f)| (v.split(',').map(|s| s.trim().to_string()).collect(), f.to_string()))
        .collect();
    BlockDecomposition::from_named(&decls).unwrap()
}

#[test]
fn monomial_rank_examples() {
    assert_eq!(monomial_rank(&[1, 1, 1]).unwrap(), 4);
    assert_eq!(monomial_rank(&[5]).unwrap(), 1);
    assert_eq!(monomial_rank(&[1, 2, 2]).unwrap(), 9);
    assert_eq!(monomial_rank(&[2, 0, 1]).unwrap(), 3);
    assert_eq!(monomial_rank(&[0, 0]), Err(Error::DegreeZero));
}

#[test]
fn monomial_crank_examples() {
    assert_eq!(monomial_crank(&[1, 2]).unwrap(), 2);
    assert_eq!(monomial_crank(&[1, 1, 2]).unwrap(), 4);
    assert!(matches!(monomial_crank(&[1, 1, 1]), Err(Error::AssumptionNotSatisfied(_))));
    assert_eq!(monomial_crank(&[4]).unwrap(), 1);
}

#[test]
fn monomial_computing_form_examples() {
    assert_eq!(monomial_computing_form(&[1, 2]).unwrap(), LinearForm::var(2, 0));
    assert_eq!(monomial_computing_form(&[2, 1]).unwrap(), LinearForm::var(2, 1));
    assert_eq!(monomial_computing_form(&[1, 1]).unwrap(), LinearForm::var(2, 0));
    assert_eq!(monomial_computing_form(&[0, 3, 3]).unwrap(), LinearForm::var(3, 1));
}

#[test]
fn binary_profile_examples() {
    let xy = vars(&["x", "y"]);
    let p = binary_profile(&parse_poly("x^2*y", &xy).unwrap()).unwrap();
    assert_eq!((p.d1, p.d2, p.rank, p.crank), (2, 3, 3, 2));
    assert!(!p.squarefree_at_d1);
    assert_eq!(p.generators, vec![parse_poly("y^2", &xy).unwrap()]);

    let p = binary_profile(&parse_poly("x^3 + y^3", &xy).unwrap()).unwrap();
    assert_eq!((p.d1, p.d2, p.rank, p.crank), (2, 3, 2, 2));
    assert!(p.squarefree_at_d1);
    assert_eq!(p.generators, vec![parse_poly("x*y", &xy).unwrap()]);

    for d in 1..=6 {
        let f = parse_poly(&format!("x^{d}"), &xy).unwrap();
        let p = binary_profile(&f).unwrap();
        assert_eq!((p.d1, p.rank, p.crank), (1, 1, 1));
        assert_eq!(p.generators, vec![parse_poly("y", &xy).unwrap()]);
    }
    assert_eq!(binary_profile(&parse_poly_infer("x*y*z").unwrap()), Err(Error::NotBinary));
}

#[test]
fn pencil_profile() {
    // Quadric of full rank: F^⊥ is generated in degree 2 by a pencil.
    let f = parse_poly_infer("x^2 + x*y + y^2").unwrap();
    let p = binary_profile(&f).unwrap();
    assert_eq!((p.d1, p.d2, p.rank), (2, 2, 2));
    assert_eq!(p.g1_candidates.dim(), 2);
}

#[test]
fn binary_computing_form_examples() {
    let xy = vars(&["x", "y"]);
    let t = binary_computing_form(&parse_poly("x^2*y", &xy).unwrap()).unwrap();
    assert_eq!(t, LinearForm::var(2, 1));
    let t = binary_computing_form(&parse_poly("x*y^2", &xy).unwrap()).unwrap();
    assert_eq!(t, LinearForm::var(2, 0));
    // The witness must be isotropic for the dual quadric, which has no
    // rational points here.
    let f = parse_poly("x^2 + x*y + y^2", &xy).unwrap();
    assert!(matches!(binary_computing_form(&f), Err(Error::AlgebraicExtensionRequired(_))));
    // x^2 - y^2 has the rational isotropic directions t_x ± t_y.
    let f = parse_poly("x^2 - y^2", &xy).unwrap();
    let t = binary_computing_form(&f).unwrap();
    assert_eq!(rank_lower_bound(&f, &t).unwrap(), 2);
}

#[test]
fn rank_lower_bound_examples() {
    let f = parse_poly_infer("x0*x1^2*x2^2").unwrap();
    assert_eq!(rank_lower_bound(&f, &LinearForm::var(3, 0)).unwrap(), 9);
    for d in 1..=6 {
        let f = parse_poly_infer(&format!("x^{d}")).unwrap();
        assert_eq!(rank_lower_bound(&f, &LinearForm::var(1, 0)).unwrap(), 1);
    }
    // At the summed witness the bound for xy + zw is only 2; the value 4 comes
    // from the block-ideal chain in `additive_rank`.
    let f = parse_poly("x*y + z*w", &vars(&["x", "y", "z", "w"])).unwrap();
    assert_eq!(rank_lower_bound(&f, &LinearForm::from_ints(&[1, 0, 1, 0])).unwrap(), 2);
}

#[test]
fn annihilating_witness_gives_zero() {
    let f = parse_poly("x^3", &vars(&["x", "y"])).unwrap();
    assert_eq!(rank_lower_bound(&f, &LinearForm::var(2, 1)).unwrap(), 0);
}

#[test]
fn crank_lower_bound_examples() {
    let b = crank_lower_bound(&parse_poly_infer("x*y^2").unwrap(), 3, 7).unwrap();
    assert_eq!(b.value, 2);
    assert!(b.agreed);
    assert_eq!(b.samples.len(), 3);
    assert_eq!(crank_lower_bound(&parse_poly_infer("x^4").unwrap(), 3, 7).unwrap().value, 1);
    assert_eq!(crank_lower_bound(&parse_poly_infer("x0*x1*x2^2").unwrap(), 3, 7).unwrap().value, 4);
    // Deterministic in the seed.
    let f = parse_poly_infer("x0*x1*x2^2").unwrap();
    assert_eq!(crank_lower_bound(&f, 3, 11).unwrap(), crank_lower_bound(&f, 3, 11).unwrap());
    assert_eq!(crank_lower_bound(&f, 0, 1).unwrap().samples.len(), 1);
}

#[test]
fn sampled_forms_have_no_zero_coefficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let l = sample_linear_form(4, &mut rng);
        assert!(l.coeffs().iter().all(|c| !num_traits::Zero::is_zero(c)));
        assert!(l.coeffs().iter().all(|c| c.numer().magnitude() <= &10u32.into()));
    }
}

#[test]
fn form_rank_by_class() {
    let r = form_rank(&parse_poly_infer("x0*x1^2*x2^2").unwrap(), None).unwrap();
    assert_eq!((r.rank, r.bound), (Some(9), 9));
    assert_eq!(r.witness, LinearForm::var(3, 0));
    let r = form_rank(&parse_poly_infer("x^2*y").unwrap(), None).unwrap();
    assert!(matches!(r.class, FormClass::Monomial(_)));
    assert_eq!((r.rank, r.witness.clone()), (Some(3), LinearForm::var(2, 1)));
    let r = form_rank(&parse_poly_infer("x^3 + y^3 + z^3").unwrap(), None).unwrap();
    assert_eq!(r.class, FormClass::General);
    assert_eq!(r.rank, None);
    assert!(r.bound >= 1);
    // Binary support inside three variables.
    let r = form_rank(&parse_poly("x^3 + z^3", &vars(&["x", "y", "z"])).unwrap(), None).unwrap();
    assert_eq!(r.class, FormClass::Binary([0, 2]));
    assert_eq!((r.rank, r.bound), (Some(2), 2));
    let r = form_rank(&parse_poly_infer("x^2 + x*y + y^2").unwrap(), None).unwrap();
    assert_eq!(r.rank, Some(2));
    assert!(!r.witness_computes_rank);
}

#[test]
fn additive_rank_examples() {
    let c = additive_rank(&named(&[("x,y", "x*y"), ("z,w", "z*w")])).unwrap();
    assert_eq!((c.value, c.lower_bound, c.upper_bound), (4, 4, 4));
    assert_eq!(c.verdict, Verdict::CertifiedEqual);
    assert_eq!(c.intersection_dim, Some(3));
    assert_eq!(c.sum_witness_bound, Some(2));
    assert_eq!(c.colon_contained, Some(true));
    assert_eq!(c.nonannihilating, Some(true));

    let c = additive_rank(&named(&[("x0,x1,x2", "x0*x1*x2")])).unwrap();
    assert_eq!((c.value, c.verdict), (4, Verdict::CertifiedEqual));
    assert_eq!(c.intersection_dim, Some(4));

    let c = additive_rank(&named(&[("x0,x1,x2", "x0*x1^2*x2^2"), ("y0,y1", "y0^5 + y1^5")])).unwrap();
    assert_eq!(c.blocks.iter().map(|b| b.value).collect::<Vec<_>>(), vec![9, 2]);
    assert_eq!((c.value, c.verdict), (11, Verdict::CertifiedEqual));
}

#[test]
fn additive_rank_without_rational_witness_is_bound_only() {
    let c = additive_rank(&named(&[("x,y", "x^2 + x*y + y^2"), ("z,w", "z*w")])).unwrap();
    assert_eq!(c.upper_bound, 4);
    assert_eq!(c.verdict, Verdict::BoundOnly);
    assert!(c.lower_bound < 4);
    assert!(c.blocks[0].witness.is_none());
    assert!(!c.notes.is_empty());
}

#[test]
fn additive_rank_rejects_bad_blocks() {
    let v = vars(&["x", "y", "z"]);
    let bd = BlockDecomposition::new(
        v.clone(),
        vec![vec![0, 1], vec![1, 2]],
        vec![parse_poly("x*y", &v).unwrap(), parse_poly("y*z", &v).unwrap()],
    );
    assert!(matches!(additive_rank(&bd), Err(Error::InvalidBlocks(_))));
    let bd = named(&[("x,y,z", "x^3 + y^3 + z^3")]);
    assert!(matches!(additive_rank(&bd), Err(Error::UnsupportedBlock(_))));
}

#[test]
fn unused_ambient_variables_are_dropped() {
    let v = vars(&["x", "u", "y", "z", "w"]);
    let bd = BlockDecomposition::new(
        v.clone(),
        vec![vec![0, 2], vec![3, 4]],
        vec![parse_poly("x*y", &v).unwrap(), parse_poly("z*w", &v).unwrap()],
    );
    assert_eq!(additive_rank(&bd).unwrap().verdict, Verdict::CertifiedEqual);
}

#[test]
fn additive_crank_examples() {
    let c = additive_crank(&named(&[("x,y", "x*y^2"), ("z,w", "z*w^2")]), 3, 1).unwrap();
    assert_eq!((c.value, c.lower_bound, c.verdict), (4, 4, Verdict::CertifiedEqual));
    assert_eq!(c.partial_sums, vec![2, 4]);
    assert_eq!(c.samples_agree, Some(true));

    let c = additive_crank(&named(&[("x,y", "x*y^2")]), 3, 1).unwrap();
    assert_eq!((c.value, c.verdict), (2, Verdict::CertifiedEqual));

    let c = additive_crank(&named(&[("x0,x1,x2", "x0*x1*x2^2"), ("y,z", "y^4 + z^4")]), 3, 1).unwrap();
    assert_eq!(c.blocks.iter().map(|b| b.value).collect::<Vec<_>>(), vec![4, 2]);
    assert_eq!((c.value, c.verdict), (6, Verdict::CertifiedEqual));

    let bad = named(&[("x0,x1,x2", "x0*x1*x2")]);
    assert!(matches!(additive_crank(&bad, 3, 1), Err(Error::AssumptionNotSatisfied(_))));
}

#[test]
fn three_block_sums() {
    let bd = named(&[("a,b", "a^3*b"), ("c,d", "c^4 + d^4"), ("e", "e^4")]);
    let w = additive_rank(&bd).unwrap();
    assert_eq!((w.value, w.verdict), (4 + 2 + 1, Verdict::CertifiedEqual));
    assert_eq!(w.intersection_dim, Some(7 - 2));
    let c = additive_crank(&bd, 3, 5).unwrap();
    assert_eq!((c.value, c.verdict), (2 + 2 + 1, Verdict::CertifiedEqual));
    assert_eq!(c.partial_sums, vec![2, 4, 5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn binary_structure(seed in 0u64..10_000, d in 2usize..=6) {
        let f = random_form(&var_names("x", 2), d, 5, seed);
        let p = binary_profile(&f).unwrap();
        prop_assert_eq!(p.d1 + p.d2, d + 2);
        prop_assert!(p.d1 <= p.d2);
        prop_assert_eq!(p.crank, p.d1);
        prop_assert!(p.rank == p.d1 || p.rank == p.d2);
        if let Ok(t) = binary_computing_form(&f) {
            prop_assert_eq!(rank_lower_bound(&f, &t).unwrap(), p.rank);
            prop_assert!(!apply_operator(&t.to_polynomial(f.vars()), &f).unwrap().is_zero());
        }
    }

    #[test]
    fn eq3_is_sound_for_binary_forms(seed in 0u64..10_000, d in 2usize..=5, a in -4i64..=4, b in -4i64..=4) {
        prop_assume!(a != 0 || b != 0);
        let f = random_form(&var_names("x", 2), d, 5, seed);
        let rank = binary_profile(&f).unwrap().rank;
        prop_assert!(rank_lower_bound(&f, &LinearForm::from_ints(&[a, b])).unwrap() <= rank);
    }

    #[test]
    fn monomial_witness_is_optimal(exps in prop::collection::vec(0u32..=3, 2..=3)) {
        prop_assume!(exps.iter().sum::<u32>() >= 1);
        let names = var_names("x", exps.len());
        let f = Polynomial::monomial(names, exps.clone(), Q::from_integer(1.into()));
        let t = monomial_computing_form(&exps).unwrap();
        prop_assert_eq!(rank_lower_bound(&f, &t).unwrap(), monomial_rank(&exps).unwrap());
        if let Ok(c) = monomial_crank(&exps) {
            prop_assert_eq!(crank_lower_bound(&f, 3, 0).unwrap().value, c);
            prop_assert!(c <= monomial_rank(&exps).unwrap());
        }
    }
}
