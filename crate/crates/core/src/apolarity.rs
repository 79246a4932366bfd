//! Graded ideals of the dual ring, stored as full graded components.
//!
//! Every ideal here is derived from a form of degree `d` and is truncated at
//! `D = d + 1`: perp ideals contain all of `T_e` for `e > d`, so nothing above
//! the cap carries information. Each piece is a [`Subspace`] of `T_e` in the
//! descending-lex monomial basis. Colons, sums with linear forms, extensions
//! and intersections are all computed degree by degree; no Gröbner bases.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, SparseVec, Subspace, Q};
use crate::poly::{apply_operator, degree_basis, falling_factor, monomial_count, var_positions, LinearForm, Monomial, Polynomial};

/// Default guardrail on `dim T_d`.
pub const DEFAULT_MONOMIAL_CAP: usize = 20_000;

static MONOMIAL_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_MONOMIAL_CAP);

/// Overrides the process-wide cap on the number of degree-`d` monomials.
pub fn set_monomial_cap(cap: usize) {
    MONOMIAL_CAP.store(cap, Ordering::Relaxed);
}

pub fn monomial_cap() -> usize {
    MONOMIAL_CAP.load(Ordering::Relaxed)
}

fn guard(nvars: usize, d: usize) -> Result<()> {
    let monomials = monomial_count(nvars, d);
    let cap = monomial_cap();
    if monomials > cap {
        return Err(Error::SizeLimit { monomials, cap });
    }
    Ok(())
}

/// Homogeneous ideal of `T` given by its graded pieces in degrees `0..=D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    vars: Vec<String>,
    pieces: Vec<Subspace>,
}

impl GradedIdeal {
    pub fn new(vars: Vec<String>, pieces: Vec<Subspace>) -> Result<Self> {
        let n = vars.len();
        for (e, p) in pieces.iter().enumerate() {
            let expected = monomial_count(n, e);
            if p.ambient_dim() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    found: p.ambient_dim(),
                });
            }
        }
        Ok(Self { vars, pieces })
    }

    pub fn zero(vars: Vec<String>, top_degree: usize) -> Self {
        let n = vars.len();
        let pieces = (0..=top_degree).map(|e| Subspace::zero(monomial_count(n, e))).collect();
        Self { vars, pieces }
    }

    pub fn unit(vars: Vec<String>, top_degree: usize) -> Self {
        let n = vars.len();
        let pieces = (0..=top_degree).map(|e| Subspace::full(monomial_count(n, e))).collect();
        Self { vars, pieces }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn top_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, e: usize) -> &Subspace {
        &self.pieces[e]
    }

    pub fn pieces(&self) -> &[Subspace] {
        &self.pieces
    }

    pub fn is_unit(&self) -> bool {
        self.pieces[0].is_full()
    }

    pub fn hilbert_function(&self) -> HilbertFunction {
        hilbert_function(self)
    }

    pub fn quotient_total_dim(&self) -> Result<usize> {
        quotient_total_dim(self)
    }

    fn check_compatible(&self, other: &GradedIdeal) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        if self.top_degree() != other.top_degree() {
            return Err(Error::DimensionMismatch {
                expected: self.top_degree(),
                found: other.top_degree(),
            });
        }
        Ok(())
    }

    /// Degreewise containment `other ⊆ self`.
    pub fn contains(&self, other: &GradedIdeal) -> Result<bool> {
        self.check_compatible(other)?;
        for (a, b) in self.pieces.iter().zip(&other.pieces) {
            if !a.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Degrees where `other ⊆ self` holds properly; `None` if containment fails.
    pub fn proper_containment_degrees(&self, other: &GradedIdeal) -> Result<Option<Vec<usize>>> {
        if !self.contains(other)? {
            return Ok(None);
        }
        Ok(Some(
            (0..=self.top_degree())
                .filter(|&e| self.pieces[e].dim() > other.pieces[e].dim())
                .collect(),
        ))
    }

    /// Checks `I_e · T_1 ⊆ I_{e+1}` for every `e < D`.
    pub fn is_ideal(&self) -> bool {
        let n = self.nvars();
        (0..self.top_degree()).all(|e| {
            let (lo, hi) = (&self.pieces[e], &self.pieces[e + 1]);
            if lo.is_zero() || hi.is_full() {
                return true;
            }
            let (from, to) = (degree_basis(n, e), degree_basis(n, e + 1));
            let eqs = hi.equations();
            lo.rows().iter().all(|r| {
                (0..n).all(|i| {
                    let v = r.remap(|k| to.index_of(&from.get(k).times_var(i)).expect("degree e+1"));
                    eqs.iter().all(|eq| num_traits::Zero::is_zero(&eq.dot(&v)))
                })
            })
        })
    }
}

/// Hilbert function `H(T/I, e)` for `e = 0..=D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    values: Vec<usize>,
}

impl HilbertFunction {
    pub fn new(values: Vec<usize>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn total(&self) -> usize {
        self.values.iter().sum()
    }

    /// Values with trailing zeros removed.
    pub fn trimmed(&self) -> &[usize] {
        let end = self.values.iter().rposition(|&h| h != 0).map_or(0, |k| k + 1);
        &self.values[..end]
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Calls `f(h)` for every `h ≤ alpha` of total degree `e`.
fn for_each_divisor(alpha: &Monomial, e: usize, f: &mut impl FnMut(Monomial)) {
    fn rec(alpha: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, f: &mut impl FnMut(Monomial)) {
        if i == alpha.len() {
            if left == 0 {
                f(Monomial(cur.clone()));
            }
            return;
        }
        let rest: u32 = alpha[i + 1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for a in lo..=alpha[i].min(left) {
            cur[i] = a;
            rec(alpha, i + 1, left - a, cur, f);
        }
        cur[i] = 0;
    }
    if alpha.degree() < e {
        return;
    }
    let mut cur = vec![0; alpha.nvars()];
    rec(&alpha.0, 0, e as u32, &mut cur, f);
}

/// Rows of the catalecticant `T_e → S_{d−e}`, one functional on `T_e` per
/// monomial of `S_{d−e}` (zero rows omitted).
fn catalecticant_rows(f: &Polynomial, e: usize) -> Vec<SparseVec> {
    let n = f.nvars();
    let d = f.degree().expect("homogeneous");
    let cols = degree_basis(n, e);
    let rows = degree_basis(n, d - e);
    let mut acc: Vec<Vec<(usize, Q)>> = vec![Vec::new(); rows.len()];
    for (alpha, c) in f.terms() {
        for_each_divisor(alpha, e, &mut |h| {
            let mu = alpha.div(&h).expect("divisor");
            let k = Q::from_integer(falling_factor(alpha, &h));
            acc[rows.index_of(&mu).expect("degree d-e")].push((cols.index_of(&h).expect("degree e"), c * k));
        });
    }
    acc.into_iter()
        .map(SparseVec::from_entries)
        .filter(|r| !r.is_zero())
        .collect()
}

/// Matrix of `h ↦ h·F` from `T_e` to `S_{d−e}` in the monomial bases.
pub fn catalecticant_matrix(f: &Polynomial, e: usize) -> Result<QMatrix> {
    let d = f.form_degree()?;
    if e > d {
        return Err(Error::DegreeOutOfRange { degree: e, max: d });
    }
    let n = f.nvars();
    let rows = degree_basis(n, d - e);
    let cols = degree_basis(n, e);
    let mut entries: Vec<Q> = Vec::with_capacity(rows.len() * cols.len());
    for mu in rows.monomials() {
        for h in cols.monomials() {
            let alpha = mu.mul(h);
            let c = f.coeff(&alpha);
            entries.push(c * Q::from_integer(falling_factor(&alpha, h)));
        }
    }
    QMatrix::new(rows.len(), cols.len(), entries)
}

/// Kernel pieces of `G`'s catalecticants in degrees `0..=deg G`, full above,
/// up to `top`.
fn annihilator_pieces(g: &Polynomial, top: usize) -> Vec<Subspace> {
    let n = g.nvars();
    let dg = g.degree().expect("homogeneous");
    (0..=top)
        .into_par_iter()
        .map(|e| {
            let dim = monomial_count(n, e);
            if e > dg {
                Subspace::full(dim)
            } else {
                Subspace::from_equations(dim, &catalecticant_rows(g, e))
            }
        })
        .collect()
}

/// `F^⊥ = { g : g·F = 0 }`, pieces `0..=d+1`.
pub fn perp_graded(f: &Polynomial) -> Result<GradedIdeal> {
    let d = f.form_degree()?;
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    guard(f.nvars(), d)?;
    Ok(GradedIdeal {
        vars: f.vars().to_vec(),
        pieces: annihilator_pieces(f, d + 1),
    })
}

/// `(F^⊥ : t) = { h : (t h)·F = 0 }`, pieces `0..=d+1`.
///
/// The action is commutative, so `(t h)·F = h·(t·F)` and the colon is the
/// annihilator of the single form `t·F` of degree `d − 1`.
pub fn colon_by_linear(f: &Polynomial, t: &LinearForm) -> Result<GradedIdeal> {
    let d = f.form_degree()?;
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    if t.nvars() != f.nvars() {
        return Err(Error::VariableMismatch);
    }
    if t.is_zero() {
        return Err(Error::ZeroLinearForm);
    }
    guard(f.nvars(), d)?;
    let vars = f.vars().to_vec();
    let g = apply_operator(&t.to_polynomial(&vars), f)?;
    if g.is_zero() {
        return Ok(GradedIdeal::unit(vars, d + 1));
    }
    Ok(GradedIdeal {
        pieces: annihilator_pieces(&g, d + 1),
        vars,
    })
}

/// `I + (l_1, …, l_k)`.
pub fn add_linear_forms(ideal: &GradedIdeal, forms: &[LinearForm]) -> Result<GradedIdeal> {
    let n = ideal.nvars();
    if forms.iter().any(|l| l.nvars() != n) {
        return Err(Error::VariableMismatch);
    }
    let forms: Vec<&LinearForm> = forms.iter().filter(|l| !l.is_zero()).collect();
    if forms.is_empty() {
        return Ok(ideal.clone());
    }
    let coordinate: Option<Vec<usize>> = forms.iter().map(|l| l.as_variable()).collect();
    let pieces = (0..=ideal.top_degree())
        .into_par_iter()
        .map(|e| {
            let piece = &ideal.pieces[e];
            if e == 0 || piece.is_full() {
                return piece.clone();
            }
            match &coordinate {
                Some(vs) => add_coordinate_monomials(piece, n, e, vs),
                None => {
                    let (from, to) = (degree_basis(n, e - 1), degree_basis(n, e));
                    let mut vectors = Vec::with_capacity(from.len() * forms.len());
                    for l in &forms {
                        for m in from.monomials() {
                            let entries = l
                                .coeffs()
                                .iter()
                                .enumerate()
                                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                                .map(|(i, c)| (to.index_of(&m.times_var(i)).expect("degree e"), c.clone()))
                                .collect();
                            vectors.push(SparseVec::from_entries(entries));
                        }
                    }
                    piece.sum_with_vectors(&vectors)
                }
            }
        })
        .collect();
    Ok(GradedIdeal {
        vars: ideal.vars.clone(),
        pieces,
    })
}

/// `piece + span{ monomials divisible by some x_i, i ∈ vars }`: the sum splits
/// into the coordinate part and the projection of `piece` onto the rest.
fn add_coordinate_monomials(piece: &Subspace, n: usize, e: usize, vars: &[usize]) -> Subspace {
    let basis = degree_basis(n, e);
    let hit: Vec<bool> = basis
        .monomials()
        .iter()
        .map(|m| vars.iter().any(|&i| m.0[i] > 0))
        .collect();
    let projected: Vec<SparseVec> = piece
        .rows()
        .iter()
        .map(|r| SparseVec::from_entries(r.entries().iter().filter(|(k, _)| !hit[*k]).cloned().collect()))
        .filter(|r| !r.is_zero())
        .collect();
    let rest = Subspace::span(basis.len(), &projected);
    let mut rows: Vec<SparseVec> = rest.rows().to_vec();
    rows.extend((0..basis.len()).filter(|&k| hit[k]).map(SparseVec::unit));
    Subspace::from_rref_rows(basis.len(), rows)
}

/// Extends an ideal of a sub-ring `T_i ⊂ T` to the ideal it generates in `T`.
///
/// Writing each ambient monomial as (block part)·(rest part), degree `e` of
/// the extension is the direct sum over rest monomials `ρ` of degree `k` of
/// `I_{e−k}·ρ`, so no elimination is needed when the block variables keep
/// their relative order in `ambient`.
pub fn extend_to_ambient(ideal: &GradedIdeal, ambient: &[String]) -> Result<GradedIdeal> {
    let pos = var_positions(&ideal.vars, ambient)?;
    let n = ambient.len();
    guard(n, ideal.top_degree().saturating_sub(1))?;
    let rest: Vec<usize> = (0..n).filter(|i| !pos.contains(i)).collect();
    let ordered = pos.windows(2).all(|w| w[0] < w[1]);
    let nb = ideal.nvars();
    let pieces = (0..=ideal.top_degree())
        .into_par_iter()
        .map(|e| {
            let target = degree_basis(n, e);
            let mut rows = Vec::new();
            for k in 0..=e {
                let sub = &ideal.pieces[e - k];
                if sub.is_zero() {
                    continue;
                }
                let block_basis = degree_basis(nb, e - k);
                for rho in degree_basis(rest.len(), k).monomials() {
                    let mut base = vec![0u32; n];
                    for (j, &r) in rest.iter().enumerate() {
                        base[r] = rho.0[j];
                    }
                    for row in sub.rows() {
                        rows.push(row.remap(|idx| {
                            let mut m = base.clone();
                            for (j, &p) in pos.iter().enumerate() {
                                m[p] = block_basis.get(idx).0[j];
                            }
                            target.index_of(&Monomial(m)).expect("degree e")
                        }));
                    }
                }
            }
            if ordered {
                Subspace::from_rref_rows(target.len(), rows)
            } else {
                Subspace::span(target.len(), &rows)
            }
        })
        .collect();
    Ok(GradedIdeal {
        vars: ambient.to_vec(),
        pieces,
    })
}

/// Degreewise intersection. An empty list is an error.
pub fn graded_intersect(ideals: &[GradedIdeal]) -> Result<GradedIdeal> {
    let (first, rest) = ideals.split_first().ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
    for i in rest {
        first.check_compatible(i)?;
    }
    let pieces = (0..=first.top_degree())
        .into_par_iter()
        .map(|e| {
            rest.iter().try_fold(first.pieces[e].clone(), |acc, i| acc.intersect(&i.pieces[e]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedIdeal {
        vars: first.vars.clone(),
        pieces,
    })
}

/// Degreewise sum `I + J`.
pub fn graded_sum(a: &GradedIdeal, b: &GradedIdeal) -> Result<GradedIdeal> {
    a.check_compatible(b)?;
    let pieces = a
        .pieces
        .par_iter()
        .zip(&b.pieces)
        .map(|(x, y)| x.sum(y))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedIdeal {
        vars: a.vars.clone(),
        pieces,
    })
}

pub fn hilbert_function(ideal: &GradedIdeal) -> HilbertFunction {
    HilbertFunction::new(ideal.pieces.iter().map(Subspace::codim).collect())
}

/// `dim T/I`, requiring `H(D) = 0`.
pub fn quotient_total_dim(ideal: &GradedIdeal) -> Result<usize> {
    let h = hilbert_function(ideal);
    let top = ideal.top_degree();
    if h.values[top] != 0 {
        return Err(Error::NonArtinian { degree: top });
    }
    Ok(h.total())
}
