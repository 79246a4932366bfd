//! Dense univariate polynomials over Q: Euclidean GCD, square-free parts and
//! exact rational root finding (Sturm isolation plus the rational root
//! theorem's denominator bound).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::Q;

/// `c[k]` is the coefficient of `s^k`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    c: Vec<Q>,
}

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self { c }
    }

    pub fn zero() -> Self {
        Self { c: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lc(&self) -> &Q {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * Q::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().expect("nonzero");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        let lc = d.lc();
        for k in (dd..r.len()).rev() {
            let f = &r[k] / lc;
            if f.is_zero() {
                continue;
            }
            for (j, b) in d.c.iter().enumerate() {
                let t = &f * b;
                r[k - dd + j] -= t;
            }
            quo[k - dd] = f;
        }
        r.truncate(dd);
        (UPoly::new(quo), UPoly::new(r))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc().clone();
        UPoly::new(self.c.iter().map(|a| a / &lc).collect())
    }

    /// Monic GCD; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (up to scale).
    pub fn squarefree_part(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    /// Integer multiple with coprime integer coefficients.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * Q::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        ints.into_iter().map(|a| a / &g).collect()
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Q) -> usize {
        let lin = UPoly::new(vec![-r.clone(), Q::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (quo, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = quo;
            k += 1;
        }
        k
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Q> {
        match self.degree() {
            None | Some(0) => return Vec::new(),
            Some(1) => return vec![-&self.c[0] / &self.c[1]],
            _ => {}
        }
        let p = self.squarefree_part();
        let ints = p.primitive_integer();
        let lead = ints.last().expect("nonzero").abs();
        // A root u/v in lowest terms has v | lead, so lead * root is an
        // integer; intervals narrower than 1/lead hold at most one candidate.
        let sturm: Vec<Vec<BigInt>> = sturm_sequence(&p).iter().map(UPoly::primitive_integer).collect();
        let vars = |x: &Dyadic| variations(&sturm, &x.m, &(BigInt::one() << x.k));
        let bound = Dyadic::power_of_two_above(&cauchy_bound(&p));
        let lo = Dyadic { m: -bound.m.clone(), k: bound.k };
        let (vlo, vhi) = (vars(&lo), vars(&bound));
        let mut roots = BTreeSet::new();
        let mut stack = vec![(lo, bound, vlo, vhi)];
        let splits = (p.c.len() + 2).next_power_of_two();
        let shift = splits.trailing_zeros();
        while let Some((a, b, va, vb)) = stack.pop() {
            if va <= vb {
                continue;
            }
            let (a, b) = Dyadic::common(a, b);
            let k = a.k;
            if (&b.m - &a.m) * &lead < BigInt::one() << k {
                let cand = (&a.m * &lead).div_floor(&(BigInt::one() << k)) + BigInt::one();
                if cand.clone() << k < &b.m * &lead && eval_homogeneous(&ints, &cand, &lead).is_zero() {
                    roots.insert(Q::new(cand, lead.clone()));
                }
                continue;
            }
            // Grid points a + j (b - a) / splits; one of them is not a root.
            let step = &b.m - &a.m;
            let mut split = None;
            for j in (1..splits).map(|j| if j % 2 == 1 { splits / 2 + j / 2 } else { splits / 2 - j / 2 }) {
                let c = Dyadic {
                    m: (&a.m << shift) + &step * BigInt::from(j),
                    k: k + shift,
                };
                if sign_at(&ints, &c).is_zero() {
                    roots.insert(c.to_q());
                } else {
                    split = Some(c);
                    break;
                }
            }
            let c = split.expect("a polynomial has fewer roots than split points");
            let vc = vars(&c);
            stack.push((a, c.clone(), va, vc));
            stack.push((c, b, vc, vb));
        }
        roots.into_iter().collect()
    }
}

/// `m / 2^k`.
#[derive(Clone, Debug)]
struct Dyadic {
    m: BigInt,
    k: u32,
}

impl Dyadic {
    fn power_of_two_above(x: &Q) -> Dyadic {
        let mut m = BigInt::one();
        while Q::from_integer(m.clone()) <= *x {
            m <<= 1;
        }
        Dyadic { m, k: 0 }
    }

    fn common(a: Dyadic, b: Dyadic) -> (Dyadic, Dyadic) {
        let k = a.k.max(b.k);
        (
            Dyadic { m: a.m << (k - a.k), k },
            Dyadic { m: b.m << (k - b.k), k },
        )
    }

    fn to_q(&self) -> Q {
        Q::new(self.m.clone(), BigInt::one() << self.k)
    }
}

/// `Σ c_i num^i den^(n-i)`, which has the sign of `p(num/den)` for `den > 0`.
fn eval_homogeneous(c: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    let n = c.len() - 1;
    let mut acc = c[n].clone();
    let mut dpow = BigInt::one();
    for i in (0..n).rev() {
        dpow *= den;
        acc = acc * num + &c[i] * &dpow;
    }
    acc
}

fn sign_at(c: &[BigInt], x: &Dyadic) -> BigInt {
    eval_homogeneous(c, &x.m, &(BigInt::one() << x.k))
}

fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(UPoly::new(r.c.iter().map(|a| -a).collect()));
    }
    seq
}

/// Sign changes of the sequence at `num/den`; scaling each member by a
/// positive constant does not change them.
fn variations(seq: &[Vec<BigInt>], num: &BigInt, den: &BigInt) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|c| eval_homogeneous(c, num, den))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Strict bound on absolute values of roots: `1 + max |a_k / a_n|`.
fn cauchy_bound(p: &UPoly) -> Q {
    let lc = p.lc().abs();
    let m = p.c[..p.c.len() - 1]
        .iter()
        .map(|a| a.abs() / &lc)
        .fold(Q::zero(), |acc, x| if x > acc { x } else { acc });
    m + Q::one()
}
