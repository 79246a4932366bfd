//! Binary forms: passage to univariate polynomials, square-freeness, rational
//! linear factors and Jacobians of pencils.

use num_traits::{One, Zero};

use super::univariate::UPoly;
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::poly::{apply_operator, LinearForm, Polynomial};

/// `g(s, 1)` together with the degree of `g`. Exponent of the first variable
/// is the power of `s`.
pub(crate) fn dehomogenize(g: &Polynomial) -> Result<(UPoly, usize)> {
    if g.nvars() != 2 {
        return Err(Error::NotBinary);
    }
    let n = g.form_degree()?;
    let mut c = vec![Q::zero(); n + 1];
    for (m, a) in g.terms() {
        c[m.0[0] as usize] = a.clone();
    }
    Ok((UPoly::new(c), n))
}

/// Whether a nonzero binary form has no repeated linear factor over an
/// algebraic closure.
pub fn squarefree_test(g: &Polynomial) -> Result<bool> {
    let (p, n) = dehomogenize(g)?;
    let deg = p.degree().expect("nonzero form");
    // n - deg is the multiplicity of the second variable as a factor.
    Ok(n - deg <= 1 && p.is_squarefree())
}

/// Value of a binary form at a point.
pub(crate) fn eval_binary(g: &Polynomial, x: &Q, y: &Q) -> Q {
    g.terms().iter().fold(Q::zero(), |acc, (m, a)| {
        acc + a * num_traits::pow(x.clone(), m.0[0] as usize) * num_traits::pow(y.clone(), m.0[1] as usize)
    })
}

/// Whether the linear form `a t_0 + b t_1` divides `g`.
pub(crate) fn divides(l: &LinearForm, g: &Polynomial) -> bool {
    let c = l.coeffs();
    eval_binary(g, &c[1], &-c[0].clone()).is_zero()
}

/// Distinct rational linear factors with multiplicities. A root `r` of
/// `g(s, 1)` gives `t_0 - r t_1`; the factor `t_1` is listed last.
pub fn rational_linear_factors(g: &Polynomial) -> Result<Vec<(LinearForm, usize)>> {
    let (p, n) = dehomogenize(g)?;
    let mut out: Vec<(LinearForm, usize)> = p
        .rational_roots()
        .into_iter()
        .map(|r| {
            let k = p.root_multiplicity(&r);
            (LinearForm::new(vec![Q::one(), -r]), k)
        })
        .collect();
    let at_infinity = n - p.degree().expect("nonzero form");
    if at_infinity > 0 {
        out.push((LinearForm::new(vec![Q::zero(), Q::one()]), at_infinity));
    }
    Ok(out)
}

/// `∂g1/∂t_0 · ∂g2/∂t_1 - ∂g1/∂t_1 · ∂g2/∂t_0`.
pub(crate) fn jacobian(g1: &Polynomial, g2: &Polynomial) -> Result<Polynomial> {
    let vars = g1.vars().to_vec();
    let dx = Polynomial::monomial(vars.clone(), vec![1, 0], Q::one());
    let dy = Polynomial::monomial(vars, vec![0, 1], Q::one());
    let a = apply_operator(&dx, g1)?.mul(&apply_operator(&dy, g2)?)?;
    let b = apply_operator(&dy, g1)?.mul(&apply_operator(&dx, g2)?)?;
    a.add(&b.scale(&-Q::one()))
}

/// Small integer linear forms `t_0`, `t_1`, `t_0 + k t_1`, `t_0 - k t_1`, …
pub(crate) fn small_binary_forms() -> impl Iterator<Item = LinearForm> {
    let head = [LinearForm::from_ints(&[1, 0]), LinearForm::from_ints(&[0, 1])];
    head.into_iter()
        .chain((1..).flat_map(|k: i64| [LinearForm::from_ints(&[1, k]), LinearForm::from_ints(&[1, -k])]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::poly::parse_poly;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &xy()).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        assert!(squarefree_test(&p("x^2 - y^2")).unwrap());
        assert!(!squarefree_test(&p("x^2")).unwrap());
        assert!(!squarefree_test(&p("x*y^2")).unwrap());
        assert!(squarefree_test(&p("x*y")).unwrap());
        assert!(squarefree_test(&p("x^2 + y^2")).unwrap());
        assert!(squarefree_test(&p("x")).unwrap());
        assert!(!squarefree_test(&p("x^3 + x^2*y - x*y^2 - y^3")).unwrap());
        let three = parse_poly("x^2", &["x".into(), "y".into(), "z".into()]).unwrap();
        assert_eq!(squarefree_test(&three), Err(Error::NotBinary));
    }

    #[test]
    fn linear_factors() {
        let f = rational_linear_factors(&p("2*x^2*y^2 - 3*x*y^3")).unwrap();
        assert_eq!(
            f,
            vec![
                (LinearForm::from_ints(&[1, 0]), 1),
                (LinearForm::new(vec![q(1), crate::linalg::qr(-3, 2)]), 1),
                (LinearForm::from_ints(&[0, 1]), 2),
            ]
        );
        assert!(rational_linear_factors(&p("x^2 + y^2")).unwrap().is_empty());
        for (l, _) in &f {
            assert!(divides(l, &p("2*x^2*y^2 - 3*x*y^3")));
        }
        assert!(!divides(&LinearForm::from_ints(&[1, 1]), &p("x*y")));
    }

    #[test]
    fn jacobian_of_coordinate_pencil() {
        // J(x^2, y^2) = 2x * 2y
        assert_eq!(jacobian(&p("x^2"), &p("y^2")).unwrap(), p("4*x*y"));
    }

    #[test]
    fn small_forms_are_distinct_up_to_scale() {
        let v: Vec<LinearForm> = small_binary_forms().take(6).collect();
        assert_eq!(v[0], LinearForm::from_ints(&[1, 0]));
        assert_eq!(v[1], LinearForm::from_ints(&[0, 1]));
        assert_eq!(v[2], LinearForm::from_ints(&[1, 1]));
        assert_eq!(v[3], LinearForm::from_ints(&[1, -1]));
    }
}
