//! Waring and cactus ranks for monomials and binary forms, computing linear
//! forms, dimension-count lower bounds and additive certificates for sums of
//! forms in disjoint variables.
//!
//! Lower bounds:
//! * `rk(F) ≥ dim T/((F^⊥ : t) + (t))` for any nonzero linear form `t`;
//! * `crk(F) ≥ dim T/(F^⊥ + (l))` for a general linear form `l`, estimated by
//!   seeded sampling (the generic value is the minimum over all `l`).
//!
//! For a block sum `F = F_1 + ⋯ + F_m` with witnesses `t_i` computing
//! `rk(F_i)`, the Waring certificate uses the ideals
//! `J_i = (F_i^⊥ : t_i) + (t_i) + (all other blocks' variables)`: once
//! `(F^⊥ : (t_1, …, t_m)) ⊆ J_1 ∩ ⋯ ∩ J_m` and `t_i·F_i ≠ 0` are verified,
//! `dim T/(J_1 ∩ ⋯ ∩ J_m) + (m − 1)` is a lower bound for `rk(F)`.

pub mod binary;
mod univariate;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::apolarity::{add_linear_forms, colon_by_linear, extend_to_ambient, graded_intersect, perp_graded, quotient_total_dim, GradedIdeal};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Q};
use crate::poly::{apply_operator, check_blocks, BlockDecomposition, LinearForm, Polynomial};

pub use binary::{rational_linear_factors, squarefree_test};
pub use univariate::UPoly;

/// Number of random linear forms drawn by default for cactus bounds.
pub const DEFAULT_SAMPLES: usize = 3;

/// Sampled coefficients lie in `[-SAMPLE_RANGE, SAMPLE_RANGE] \ {0}`.
pub const SAMPLE_RANGE: i64 = 10;

fn positive_sorted(exponents: &[u32]) -> Result<Vec<u32>> {
    let mut a: Vec<u32> = exponents.iter().copied().filter(|&e| e > 0).collect();
    if a.is_empty() {
        return Err(Error::DegreeZero);
    }
    a.sort_unstable();
    Ok(a)
}

/// `rk(x_0^{a_0}⋯x_n^{a_n}) = (a_1+1)⋯(a_n+1)` with `a_0` the smallest
/// exponent. Variables with exponent zero are ignored.
pub fn monomial_rank(exponents: &[u32]) -> Result<usize> {
    let a = positive_sorted(exponents)?;
    Ok(a[1..].iter().map(|&e| e as usize + 1).product())
}

/// `crk = (a_0+1)⋯(a_{n-1}+1)` with exponents sorted ascending, valid when
/// `a_0 + ⋯ + a_{n-1} ≤ a_n`.
pub fn monomial_crank(exponents: &[u32]) -> Result<usize> {
    let a = positive_sorted(exponents)?;
    let (last, rest) = a.split_last().expect("nonempty");
    let head: u32 = rest.iter().sum();
    if head > *last {
        return Err(Error::AssumptionNotSatisfied(format!(
            "sum of the smaller exponents {head} exceeds the largest exponent {last}"
        )));
    }
    Ok(rest.iter().map(|&e| e as usize + 1).product())
}

/// Dual variable of a minimum positive exponent, lowest index on ties.
pub fn monomial_computing_form(exponents: &[u32]) -> Result<LinearForm> {
    let (i, _) = exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .min_by_key(|(i, &e)| (e, *i))
        .ok_or(Error::DegreeZero)?;
    Ok(LinearForm::var(exponents.len(), i))
}

/// Generators of `F^⊥` for a binary form and the resulting ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryPerpProfile {
    pub degree: usize,
    pub d1: usize,
    pub d2: usize,
    /// `F^⊥` in degree `d1`: one generator, or a pencil when `d1 = d2`.
    pub g1_candidates: Subspace,
    /// Basis of `g1_candidates` as forms in the dual variables.
    pub generators: Vec<Polynomial>,
    pub squarefree_at_d1: bool,
    pub rank: usize,
    pub crank: usize,
}

pub fn binary_profile(f: &Polynomial) -> Result<BinaryPerpProfile> {
    if f.nvars() != 2 {
        return Err(Error::NotBinary);
    }
    let d = f.form_degree()?;
    let perp = perp_graded(f)?;
    let d1 = (1..=perp.top_degree())
        .find(|&e| !perp.piece(e).is_zero())
        .expect("F^⊥ contains all of T_{d+1}");
    let d2 = d + 2 - d1;
    let piece = perp.piece(d1).clone();
    let generators: Vec<Polynomial> = piece
        .rows()
        .iter()
        .map(|r| Polynomial::from_coefficients(f.vars().to_vec(), d1, r))
        .collect();
    let squarefree_at_d1 = if d1 < d2 {
        squarefree_test(&generators[0])?
    } else {
        pencil_has_squarefree_member(&generators[0], &generators[1], d1)?
    };
    Ok(BinaryPerpProfile {
        degree: d,
        d1,
        d2,
        g1_candidates: piece,
        generators,
        squarefree_at_d1,
        rank: if squarefree_at_d1 { d1 } else { d2 },
        crank: d1,
    })
}

/// The discriminant of `g1 + s g2` has degree at most `2k − 2` in `s`, so
/// unless it vanishes identically one of `s = 0, …, 2k − 2` avoids its roots.
fn pencil_has_squarefree_member(g1: &Polynomial, g2: &Polynomial, k: usize) -> Result<bool> {
    for s in 0..=(2 * k).saturating_sub(2) {
        let member = g1.add(&g2.scale(&Q::from_integer(s.into())))?;
        if !member.is_zero() && squarefree_test(&member)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `dim T/((F^⊥ : t) + (t))`, a lower bound for `rk(F)` for every `t`.
pub fn rank_lower_bound(f: &Polynomial, t: &LinearForm) -> Result<usize> {
    let colon = colon_by_linear(f, t)?;
    quotient_total_dim(&add_linear_forms(&colon, std::slice::from_ref(t))?)
}

struct WitnessSearch {
    found: Option<LinearForm>,
    best: (LinearForm, usize),
}

fn binary_witness_search(f: &Polynomial, prof: &BinaryPerpProfile) -> Result<WitnessSearch> {
    use binary::{divides, jacobian, small_binary_forms};
    let mut candidates: Vec<LinearForm> = Vec::new();
    if prof.d1 < prof.d2 {
        let g1 = &prof.generators[0];
        if prof.squarefree_at_d1 {
            // Any t not dividing g1 computes the rank.
            candidates.extend(small_binary_forms().filter(|l| !divides(l, g1)).take(4));
        } else {
            candidates.extend(
                rational_linear_factors(g1)?
                    .into_iter()
                    .filter(|(_, k)| *k >= 2)
                    .map(|(l, _)| l),
            );
        }
    } else {
        // Pencil: t must be a multiple factor of some member, i.e. a root of
        // the Jacobian of the two generators.
        let j = jacobian(&prof.generators[0], &prof.generators[1])?;
        if !j.is_zero() {
            candidates.extend(rational_linear_factors(&j)?.into_iter().map(|(l, _)| l));
        }
    }
    candidates.extend(small_binary_forms().take(4));
    let mut best: Option<(LinearForm, usize)> = None;
    for t in candidates {
        let b = rank_lower_bound(f, &t)?;
        if b == prof.rank {
            return Ok(WitnessSearch {
                found: Some(t.clone()),
                best: (t, b),
            });
        }
        if best.as_ref().is_none_or(|(_, bb)| b > *bb) {
            best = Some((t, b));
        }
    }
    Ok(WitnessSearch {
        found: None,
        best: best.expect("candidate list is never empty"),
    })
}

/// A rational `t` with `dim T/((F^⊥ : t) + (t)) = rk(F)` for a binary form.
pub fn binary_computing_form(f: &Polynomial) -> Result<LinearForm> {
    let prof = binary_profile(f)?;
    binary_witness_search(f, &prof)?.found.ok_or_else(|| no_rational_witness(f, &prof))
}

fn no_rational_witness(f: &Polynomial, prof: &BinaryPerpProfile) -> Error {
    Error::AlgebraicExtensionRequired(format!(
        "every linear form computing rk({f}) = {} is irrational",
        prof.rank
    ))
}

/// Result of sampling `dim T/(F^⊥ + (l))` at seeded random linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrankBound {
    /// Minimum over the samples.
    pub value: usize,
    pub samples: Vec<(LinearForm, usize)>,
    /// All samples gave the same value.
    pub agreed: bool,
}

/// Random linear form with coefficients in `[-SAMPLE_RANGE, SAMPLE_RANGE]`,
/// never zero.
pub fn sample_linear_form(n: usize, rng: &mut ChaCha8Rng) -> LinearForm {
    LinearForm::new(
        (0..n)
            .map(|_| {
                let v = rng.gen_range(1..=SAMPLE_RANGE);
                Q::from_integer((if rng.gen_bool(0.5) { -v } else { v }).into())
            })
            .collect(),
    )
}

/// `dim T/(F^⊥ + (l))` at `samples` seeded random linear forms; at least one
/// sample is always drawn.
pub fn crank_lower_bound(f: &Polynomial, samples: usize, seed: u64) -> Result<CrankBound> {
    let perp = perp_graded(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms: Vec<LinearForm> = (0..samples.max(1)).map(|_| sample_linear_form(f.nvars(), &mut rng)).collect();
    let samples = forms
        .into_par_iter()
        .map(|l| {
            let dim = quotient_total_dim(&add_linear_forms(&perp, std::slice::from_ref(&l))?)?;
            Ok((l, dim))
        })
        .collect::<Result<Vec<_>>>()?;
    let value = samples.iter().map(|(_, v)| *v).min().expect("at least one sample");
    let agreed = samples.iter().all(|(_, v)| *v == value);
    Ok(CrankBound { value, samples, agreed })
}

/// Which closed form applies to a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormClass {
    /// Exponent vector over the form's variables.
    Monomial(Vec<u32>),
    /// Exactly two variables occur; their positions.
    Binary([usize; 2]),
    General,
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormClass::Monomial(_) => "monomial",
            FormClass::Binary(_) => "binary",
            FormClass::General => "general",
        })
    }
}

pub fn classify(f: &Polynomial) -> FormClass {
    if f.terms().len() == 1 {
        let m = f.terms().keys().next().expect("one term");
        return FormClass::Monomial(m.0.clone());
    }
    let support: Vec<usize> = f.support().into_iter().collect();
    match support.as_slice() {
        [a, b] => FormClass::Binary([*a, *b]),
        _ => FormClass::General,
    }
}

/// Rank information for a single form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormRank {
    pub class: FormClass,
    /// Known exactly for monomials and binary forms.
    pub rank: Option<usize>,
    /// Linear form used for the bound, over the form's variables.
    pub witness: LinearForm,
    /// The witness attains the rank.
    pub witness_computes_rank: bool,
    /// `dim T/((F^⊥ : t) + (t))` at the witness.
    pub bound: usize,
    pub profile: Option<BinaryPerpProfile>,
}

/// Rank, witness and lower bound for `f`. With `witness` given, the bound is
/// evaluated there instead of at a searched witness. For forms other than
/// monomials and binary forms only the best bound over a few candidates is
/// reported.
pub fn form_rank(f: &Polynomial, witness: Option<&LinearForm>) -> Result<FormRank> {
    let n = f.nvars();
    f.form_degree()?;
    if let Some(t) = witness {
        if t.nvars() != n {
            return Err(Error::VariableMismatch);
        }
        if t.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
    }
    let class = classify(f);
    let (rank, searched, profile) = match &class {
        FormClass::Monomial(e) => (Some(monomial_rank(e)?), Some(monomial_computing_form(e)?), None),
        FormClass::Binary(pos) => {
            let local = f.restrict(pos)?;
            let prof = binary_profile(&local)?;
            let found = if witness.is_some() {
                None
            } else {
                let s = binary_witness_search(&local, &prof)?;
                Some(s.found.unwrap_or(s.best.0).embed(pos, n))
            };
            (Some(prof.rank), found, Some(prof))
        }
        FormClass::General => (None, None, None),
    };
    let (witness, bound) = match witness.cloned().or(searched) {
        Some(t) => {
            let b = rank_lower_bound(f, &t)?;
            (t, b)
        }
        None => best_general_witness(f)?,
    };
    Ok(FormRank {
        witness_computes_rank: rank == Some(bound),
        class,
        rank,
        witness,
        bound,
        profile,
    })
}

/// Best bound over the coordinate forms and the sum of all variables.
fn best_general_witness(f: &Polynomial) -> Result<(LinearForm, usize)> {
    let n = f.nvars();
    let mut candidates: Vec<LinearForm> = (0..n).map(|i| LinearForm::var(n, i)).collect();
    candidates.push(LinearForm::from_ints(&vec![1; n]));
    let bounds = candidates
        .into_par_iter()
        .map(|t| rank_lower_bound(f, &t).map(|b| (t, b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(bounds
        .into_iter()
        .fold(None, |acc: Option<(LinearForm, usize)>, (t, b)| match acc {
            Some((_, bb)) if bb >= b => acc,
            _ => Some((t, b)),
        })
        .expect("at least one variable"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankKind {
    Waring,
    Cactus,
}

impl fmt::Display for RankKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankKind::Waring => "waring",
            RankKind::Cactus => "cactus",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedEqual,
    BoundOnly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedEqual => "certified_equal",
            Verdict::BoundOnly => "bound_only",
        })
    }
}

/// Per-block data in a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRank {
    pub vars: Vec<String>,
    pub class: FormClass,
    pub value: usize,
    /// Waring only: witness over the ambient variables, if a rational one
    /// computing the block rank was found.
    pub witness: Option<LinearForm>,
}

/// Rank of a block sum with the evidence behind it.
///
/// `value` is the best known upper bound `Σ value_i`; the verdict is
/// `CertifiedEqual` exactly when `lower_bound` reaches it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub kind: RankKind,
    pub value: usize,
    pub upper_bound: usize,
    pub lower_bound: usize,
    /// Waring: the block witnesses `t_i`; cactus: the sampled forms `l`.
    pub witnesses: Vec<LinearForm>,
    pub blocks: Vec<BlockRank>,
    pub verdict: Verdict,
    /// Waring: `dim T/((F^⊥ : t) + (t))` at `t = t_1 + ⋯ + t_m`.
    pub sum_witness_bound: Option<usize>,
    /// Waring: `dim T/(J_1 ∩ ⋯ ∩ J_m)`.
    pub intersection_dim: Option<usize>,
    /// Waring: `(F^⊥ : (t_1, …, t_m)) ⊆ J_1 ∩ ⋯ ∩ J_m` in every degree.
    pub colon_contained: Option<bool>,
    /// Waring: `t_i·F_i ≠ 0` for every block.
    pub nonannihilating: Option<bool>,
    /// Cactus: every sample gave the same value.
    pub samples_agree: Option<bool>,
    /// Cactus: running sums `crk(F_1) + ⋯ + crk(F_k)`.
    pub partial_sums: Vec<usize>,
    pub notes: Vec<String>,
}

fn validate(bd: &BlockDecomposition) -> Result<BlockDecomposition> {
    let v = check_blocks(bd);
    if !v.is_empty() {
        return Err(Error::InvalidBlocks(v));
    }
    Ok(compact(bd))
}

/// Drops ambient variables that belong to no block.
pub(crate) fn compact(bd: &BlockDecomposition) -> BlockDecomposition {
    let mut keep: Vec<usize> = bd.blocks().iter().flatten().copied().collect();
    keep.sort_unstable();
    if keep.len() == bd.vars().len() {
        return bd.clone();
    }
    let new_index = |i: usize| keep.binary_search(&i).expect("block variable");
    let vars = keep.iter().map(|&i| bd.vars()[i].clone()).collect();
    let blocks = bd.blocks().iter().map(|b| b.iter().map(|&i| new_index(i)).collect()).collect();
    let forms = bd
        .forms()
        .iter()
        .map(|f| f.restrict(&keep).expect("support inside blocks"))
        .collect();
    BlockDecomposition::new(vars, blocks, forms)
}

/// `J_i = (F_i^⊥ : t_i) + (t_i) + (V_j^* : j ≠ i)` over the ambient ring;
/// `t` is in the block's own coordinates. Ambient variables outside every
/// block must not occur.
pub fn block_ideal(bd: &BlockDecomposition, i: usize, t: &LinearForm) -> Result<GradedIdeal> {
    let fi = bd.block_form(i)?;
    let local = add_linear_forms(&colon_by_linear(&fi, t)?, std::slice::from_ref(t))?;
    let ext = extend_to_ambient(&local, bd.vars())?;
    let n = bd.vars().len();
    let block = &bd.blocks()[i];
    let others: Vec<LinearForm> = (0..n).filter(|k| !block.contains(k)).map(|k| LinearForm::var(n, k)).collect();
    add_linear_forms(&ext, &others)
}

/// `(F^⊥ : (t_1, …, t_m)) = ∩ (F^⊥ : t_i)` for ambient linear forms.
pub fn colon_by_forms(f: &Polynomial, ts: &[LinearForm]) -> Result<GradedIdeal> {
    let colons = ts.par_iter().map(|t| colon_by_linear(f, t)).collect::<Result<Vec<_>>>()?;
    graded_intersect(&colons)
}

/// Per-block Waring analysis: value, verified witness (block coordinates)
/// and a best-effort fallback witness.
struct BlockAnalysis {
    class: FormClass,
    value: usize,
    witness: Option<LinearForm>,
    fallback: LinearForm,
}

fn analyse_waring_block(bd: &BlockDecomposition, i: usize) -> Result<BlockAnalysis> {
    let fi = bd.block_form(i)?;
    let class = classify(&fi);
    if class == FormClass::General {
        return Err(Error::UnsupportedBlock(bd.forms()[i].to_string()));
    }
    let r = form_rank(&fi, None)?;
    let rank = r.rank.expect("covered class");
    Ok(BlockAnalysis {
        class,
        value: rank,
        witness: r.witness_computes_rank.then(|| r.witness.clone()),
        fallback: r.witness,
    })
}

/// Waring rank of a block sum of monomials and binary forms.
pub fn additive_rank(bd: &BlockDecomposition) -> Result<RankCertificate> {
    let bd = validate(bd)?;
    let n = bd.vars().len();
    let m = bd.len();
    let analyses = (0..m)
        .into_par_iter()
        .map(|i| analyse_waring_block(&bd, i))
        .collect::<Result<Vec<_>>>()?;
    let f = bd.total()?;
    let embed = |i: usize, t: &LinearForm| t.embed(&bd.blocks()[i], n);
    let upper: usize = analyses.iter().map(|a| a.value).sum();
    let blocks: Vec<BlockRank> = analyses
        .iter()
        .enumerate()
        .map(|(i, a)| BlockRank {
            vars: bd.block_vars(i),
            class: a.class.clone(),
            value: a.value,
            witness: a.witness.as_ref().map(|t| embed(i, t)),
        })
        .collect();
    let used: Vec<LinearForm> = analyses
        .iter()
        .enumerate()
        .map(|(i, a)| embed(i, a.witness.as_ref().unwrap_or(&a.fallback)))
        .collect();
    let sum = used.iter().skip(1).fold(used[0].clone(), |acc, t| acc.add(t));
    let sum_bound = rank_lower_bound(&f, &sum)?;
    let mut notes = Vec::new();
    let mut cert = RankCertificate {
        kind: RankKind::Waring,
        value: upper,
        upper_bound: upper,
        lower_bound: sum_bound,
        witnesses: used.clone(),
        blocks,
        verdict: Verdict::BoundOnly,
        sum_witness_bound: Some(sum_bound),
        intersection_dim: None,
        colon_contained: None,
        nonannihilating: None,
        samples_agree: None,
        partial_sums: Vec::new(),
        notes: Vec::new(),
    };
    if analyses.iter().all(|a| a.witness.is_some()) {
        let local: Vec<LinearForm> = analyses.iter().map(|a| a.witness.clone().expect("checked")).collect();
        let nonann = (0..m)
            .map(|i| Ok(!apply_operator(&local[i].to_polynomial(&bd.block_vars(i)), &bd.block_form(i)?)?.is_zero()))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);
        let js = (0..m)
            .into_par_iter()
            .map(|i| block_ideal(&bd, i, &local[i]))
            .collect::<Result<Vec<_>>>()?;
        let inter = graded_intersect(&js)?;
        let inter_dim = quotient_total_dim(&inter)?;
        let contained = inter.contains(&colon_by_forms(&f, &used)?)?;
        cert.intersection_dim = Some(inter_dim);
        cert.colon_contained = Some(contained);
        cert.nonannihilating = Some(nonann);
        if contained && nonann {
            cert.lower_bound = cert.lower_bound.max(inter_dim + m - 1);
        } else {
            notes.push("witness chain did not verify; using the bound at t_1 + ... + t_m".to_string());
        }
    } else {
        let missing: Vec<String> = (0..m)
            .filter(|&i| analyses[i].witness.is_none())
            .map(|i| bd.block_vars(i).join(","))
            .collect();
        notes.push(format!(
            "no rational computing form for block(s) {}; lower bound from t_1 + ... + t_m only",
            missing.join(" ; ")
        ));
    }
    if cert.lower_bound == cert.upper_bound {
        cert.verdict = Verdict::CertifiedEqual;
    }
    cert.notes = notes;
    Ok(cert)
}

fn block_crank(bd: &BlockDecomposition, i: usize) -> Result<(FormClass, usize)> {
    let fi = bd.block_form(i)?;
    let class = classify(&fi);
    let value = match &class {
        FormClass::Monomial(e) => monomial_crank(e)?,
        FormClass::Binary(pos) => binary_profile(&fi.restrict(pos)?)?.crank,
        FormClass::General => return Err(Error::UnsupportedBlock(bd.forms()[i].to_string())),
    };
    Ok((class, value))
}

/// Cactus rank of a block sum of binary forms and monomials with
/// `a_0 + ⋯ + a_{n-1} ≤ a_n`, checked against the sampled bound for the
/// whole sum.
pub fn additive_crank(bd: &BlockDecomposition, samples: usize, seed: u64) -> Result<RankCertificate> {
    let bd = validate(bd)?;
    let per_block = (0..bd.len())
        .into_par_iter()
        .map(|i| block_crank(&bd, i))
        .collect::<Result<Vec<_>>>()?;
    let partial_sums: Vec<usize> = per_block
        .iter()
        .scan(0, |acc, (_, v)| {
            *acc += v;
            Some(*acc)
        })
        .collect();
    let upper = *partial_sums.last().expect("at least one block");
    let bound = crank_lower_bound(&bd.total()?, samples, seed)?;
    let mut notes = Vec::new();
    if !bound.agreed {
        notes.push("samples disagree; the minimum is reported".to_string());
    }
    let lower = if bound.value > upper {
        notes.push(format!(
            "sampled value {} exceeds the upper bound; samples were not general",
            bound.value
        ));
        0
    } else {
        bound.value
    };
    Ok(RankCertificate {
        kind: RankKind::Cactus,
        value: upper,
        upper_bound: upper,
        lower_bound: lower,
        witnesses: bound.samples.iter().map(|(l, _)| l.clone()).collect(),
        blocks: per_block
            .into_iter()
            .enumerate()
            .map(|(i, (class, value))| BlockRank {
                vars: bd.block_vars(i),
                class,
                value,
                witness: None,
            })
            .collect(),
        verdict: if lower == upper { Verdict::CertifiedEqual } else { Verdict::BoundOnly },
        sum_witness_bound: None,
        intersection_dim: None,
        colon_contained: None,
        nonannihilating: None,
        samples_agree: Some(bound.agreed),
        partial_sums,
        notes,
    })
}

#[cfg(test)]
mod tests;
