//! The monomial cap is process-wide, so this lives in its own test binary.

use apolarity::apolarity::{monomial_cap, perp_graded, set_monomial_cap, DEFAULT_MONOMIAL_CAP};
use apolarity::poly::parse_poly_infer;
use apolarity::rank::additive_rank;
use apolarity::poly::BlockDecomposition;
use apolarity::Error;

#[test]
fn cap_rejects_then_accepts() {
    assert_eq!(monomial_cap(), DEFAULT_MONOMIAL_CAP);
    let f = parse_poly_infer("x0^3*x1*x2 + x3^5").unwrap();

    // T_5 in four variables has 56 monomials.
    set_monomial_cap(55);
    assert_eq!(perp_graded(&f), Err(Error::SizeLimit { monomials: 56, cap: 55 }));
    let bd = BlockDecomposition::from_named(&[
        (vec!["x0".into(), "x1".into(), "x2".into()], "x0^3*x1*x2".into()),
        (vec!["y0".into(), "y1".into(), "y2".into()], "y0^5".into()),
    ])
    .unwrap();
    assert!(matches!(additive_rank(&bd), Err(Error::SizeLimit { .. })));

    set_monomial_cap(56);
    let h = perp_graded(&f).unwrap().hilbert_function();
    assert_eq!(h.trimmed().first(), Some(&1));

    set_monomial_cap(DEFAULT_MONOMIAL_CAP);
    assert_eq!(additive_rank(&bd).unwrap().value, 9);
}
