//! Instance-level checks of the additivity machinery, an independent
//! monomial-counting oracle and a seeded corpus runner.
//!
//! Every check returns a [`CheckReport`]; failures are reported, not thrown.
//! Witnesses are linear forms over the ambient variables of the block
//! decomposition, each supported on its own block.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::apolarity::{add_linear_forms, colon_by_linear, extend_to_ambient, graded_intersect, perp_graded, quotient_total_dim, GradedIdeal};
use crate::error::{Error, Result};
use crate::linalg::{SparseVec, Subspace, Q};
use crate::poly::{apply_operator, check_blocks, degree_basis, random_form, BlockDecomposition, LinearForm, Monomial, Polynomial};
use crate::rank::{
    additive_crank, additive_rank, binary_computing_form, block_ideal, colon_by_forms, compact, form_rank, monomial_crank,
    monomial_rank, rank_lower_bound, sample_linear_form, FormClass, Verdict,
};

/// Outcome of one check on one instance. Observed and expected values are
/// exact decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub passed: bool,
    /// A precondition failed; `passed` is false and nothing was checked.
    pub skipped: bool,
    pub observed: BTreeMap<String, String>,
    pub expected: BTreeMap<String, String>,
    pub note: Option<String>,
}

impl CheckReport {
    fn new(check: &str, instance: String) -> Self {
        Self {
            check: check.to_string(),
            instance,
            passed: false,
            skipped: false,
            observed: BTreeMap::new(),
            expected: BTreeMap::new(),
            note: None,
        }
    }

    fn observe(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.observed.insert(key.to_string(), value.to_string());
        self
    }

    fn expect(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.expected.insert(key.to_string(), value.to_string());
        self
    }

    fn skip(mut self, why: impl Into<String>) -> Self {
        self.skipped = true;
        self.passed = false;
        self.note = Some(why.into());
        self
    }

    fn error(mut self, e: Error) -> Self {
        self.passed = false;
        self.note = Some(format!("error: {e}"));
        self
    }

    /// Not skipped and not failed.
    pub fn ok(&self) -> bool {
        self.passed || self.skipped
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.skipped {
            "SKIP"
        } else if self.passed {
            "PASS"
        } else {
            "FAIL"
        };
        write!(f, "{status} {} [{}]", self.check, self.instance)?;
        for (k, v) in &self.observed {
            write!(f, " {k}={v}")?;
            if let Some(e) = self.expected.get(k) {
                if e != v {
                    write!(f, " (expected {e})")?;
                }
            }
        }
        if let Some(n) = &self.note {
            write!(f, " ; {n}")?;
        }
        Ok(())
    }
}

/// `x,y: x*y ; z,w: z*w`.
pub fn describe_blocks(bd: &BlockDecomposition) -> String {
    (0..bd.len())
        .map(|i| format!("{}: {}", bd.block_vars(i).join(","), bd.forms()[i]))
        .collect::<Vec<_>>()
        .join(" ; ")
}

fn describe_with(bd: &BlockDecomposition, forms: &[LinearForm]) -> String {
    let ts: Vec<String> = forms.iter().map(|t| t.display(bd.vars())).collect();
    format!("{} | {}", describe_blocks(bd), ts.join(", "))
}

/// Validates the decomposition and the witnesses; returns the compacted
/// decomposition with witnesses in block coordinates and in its ambient
/// coordinates.
fn prepare(bd: &BlockDecomposition, witnesses: &[LinearForm]) -> std::result::Result<Prepared, String> {
    let v = check_blocks(bd);
    if !v.is_empty() {
        return Err(format!("invalid blocks: {v:?}"));
    }
    if witnesses.len() != bd.len() {
        return Err(format!("{} witnesses for {} blocks", witnesses.len(), bd.len()));
    }
    let mut local = Vec::new();
    for (i, t) in witnesses.iter().enumerate() {
        if t.nvars() != bd.vars().len() {
            return Err(format!("witness {i} has the wrong number of variables"));
        }
        let block = &bd.blocks()[i];
        let outside = t
            .coeffs()
            .iter()
            .enumerate()
            .any(|(k, c)| !num_traits::Zero::is_zero(c) && !block.contains(&k));
        if outside {
            return Err(format!("witness {i} is not supported on its block"));
        }
        if t.is_zero() {
            return Err(format!("witness {i} is zero"));
        }
        local.push(t.restrict(block));
    }
    let compacted = compact(bd);
    let n = compacted.vars().len();
    let ambient = local
        .iter()
        .enumerate()
        .map(|(i, t)| t.embed(&compacted.blocks()[i], n))
        .collect();
    Ok(Prepared {
        bd: compacted,
        local,
        ambient,
    })
}

struct Prepared {
    bd: BlockDecomposition,
    local: Vec<LinearForm>,
    ambient: Vec<LinearForm>,
}

/// `(F^⊥ : (t_1, …, t_m)) ⊆ J_1 ∩ ⋯ ∩ J_m` in every degree.
pub fn check_colon_inclusion(bd: &BlockDecomposition, witnesses: &[LinearForm]) -> CheckReport {
    let report = CheckReport::new("colon-inclusion", describe_with(bd, witnesses));
    let p = match prepare(bd, witnesses) {
        Ok(p) => p,
        Err(why) => return report.skip(why),
    };
    let run = || -> Result<(Vec<usize>, Vec<usize>, bool)> {
        let f = p.bd.total()?;
        let left = colon_by_forms(&f, &p.ambient)?;
        let js = (0..p.bd.len())
            .into_par_iter()
            .map(|i| block_ideal(&p.bd, i, &p.local[i]))
            .collect::<Result<Vec<_>>>()?;
        let right = graded_intersect(&js)?;
        Ok((piece_dims(&left), piece_dims(&right), right.contains(&left)?))
    };
    let mut report = report;
    match run() {
        Ok((l, r, contained)) => {
            report
                .observe("contained", contained)
                .expect("contained", true)
                .observe("colon_piece_dims", join(&l))
                .observe("intersection_piece_dims", join(&r));
            report.passed = contained;
            report
        }
        Err(e) => report.error(e),
    }
}

fn piece_dims(i: &GradedIdeal) -> Vec<usize> {
    i.pieces().iter().map(|p| p.dim()).collect()
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Closed-form Waring rank of a block form, if it is covered.
fn closed_form_rank(f: &Polynomial) -> Result<Option<usize>> {
    Ok(form_rank(f, None)?.rank)
}

/// `dim T/(J_1 ∩ ⋯ ∩ J_m) = Σ rk(F_i) − (m − 1)`, with the ranks taken from
/// the closed forms.
pub fn check_claim1(bd: &BlockDecomposition, witnesses: &[LinearForm]) -> CheckReport {
    let report = CheckReport::new("claim1", describe_with(bd, witnesses));
    let p = match prepare(bd, witnesses) {
        Ok(p) => p,
        Err(why) => return report.skip(why),
    };
    let m = p.bd.len();
    let mut ranks = Vec::new();
    for i in 0..m {
        match p.bd.block_form(i).and_then(|f| closed_form_rank(&f)) {
            Ok(Some(r)) => ranks.push(r),
            Ok(None) => return report.skip(format!("block {i} has no closed-form rank")),
            Err(e) => return report.error(e),
        }
    }
    let run = || -> Result<(Vec<usize>, usize)> {
        let js = (0..m)
            .into_par_iter()
            .map(|i| block_ideal(&p.bd, i, &p.local[i]))
            .collect::<Result<Vec<_>>>()?;
        let single = js.iter().map(quotient_total_dim).collect::<Result<Vec<_>>>()?;
        Ok((single, quotient_total_dim(&graded_intersect(&js)?)?))
    };
    let mut report = report;
    match run() {
        Ok((single, total)) => {
            let expected = ranks.iter().sum::<usize>() + 1 - m;
            report
                .observe("intersection_dim", total)
                .expect("intersection_dim", expected)
                .observe("block_dims", join(&single))
                .expect("block_dims", join(&ranks));
            report.passed = total == expected && single == ranks;
            report
        }
        Err(e) => report.error(e),
    }
}

/// `t_i·F_i ≠ 0` for every block.
pub fn check_nonannihilation(bd: &BlockDecomposition, witnesses: &[LinearForm]) -> CheckReport {
    let mut report = CheckReport::new("nonannihilation", describe_with(bd, witnesses));
    let p = match prepare(bd, witnesses) {
        Ok(p) => p,
        Err(why) => return report.skip(why),
    };
    let mut zero = Vec::new();
    for i in 0..p.bd.len() {
        let res = p
            .bd
            .block_form(i)
            .and_then(|f| apply_operator(&p.local[i].to_polynomial(f.vars()), &f));
        match res {
            Ok(g) if g.is_zero() => zero.push(i),
            Ok(_) => {}
            Err(e) => return report.error(e),
        }
    }
    report
        .observe("annihilated_blocks", join(&zero))
        .expect("annihilated_blocks", "");
    report.passed = zero.is_empty();
    report
}

/// Ideal `I + (V_j^* : j ≠ i)` over the ambient ring, for `I` an ideal of
/// block `i`'s own ring.
fn extend_block(bd: &BlockDecomposition, i: usize, local: &GradedIdeal) -> Result<GradedIdeal> {
    let ext = extend_to_ambient(local, bd.vars())?;
    let n = bd.vars().len();
    let others: Vec<LinearForm> = (0..n)
        .filter(|k| !bd.blocks()[i].contains(k))
        .map(|k| LinearForm::var(n, k))
        .collect();
    add_linear_forms(&ext, &others)
}

/// For two blocks and `l_i ∉ F_i^⊥`:
/// (a) `F^⊥ + (l_1 + l_2) ⊆ [F_1^⊥ + (l_1) + (V_2^*)] ∩ [F_2^⊥ + (l_2) + (V_1^*)]`,
/// (b) the containment is proper in some degree,
/// (c) `dim T/(F^⊥ + (l_1 + l_2)) ≥ dim T_1/(F_1^⊥ + (l_1)) + dim T_2/(F_2^⊥ + (l_2))`.
pub fn check_cactus_lemma(bd: &BlockDecomposition, l1: &LinearForm, l2: &LinearForm) -> CheckReport {
    let witnesses = [l1.clone(), l2.clone()];
    let report = CheckReport::new("cactus-lemma", describe_with(bd, &witnesses));
    if bd.len() != 2 {
        return report.skip(format!("needs exactly 2 blocks, got {}", bd.len()));
    }
    let p = match prepare(bd, &witnesses) {
        Ok(p) => p,
        Err(why) => return report.skip(why),
    };
    if bd.degree().is_none_or(|d| d < 2) {
        return report.skip("degree must be at least 2");
    }
    for i in 0..2 {
        let annihilates = p
            .bd
            .block_form(i)
            .and_then(|f| apply_operator(&p.local[i].to_polynomial(f.vars()), &f))
            .map(|g| g.is_zero());
        match annihilates {
            Ok(true) => return report.skip(format!("l_{} lies in F_{}^perp", i + 1, i + 1)),
            Ok(false) => {}
            Err(e) => return report.error(e),
        }
    }
    let run = || -> Result<(bool, Option<Vec<usize>>, usize, [usize; 2])> {
        let f = p.bd.total()?;
        let l = p.ambient[0].add(&p.ambient[1]);
        let left = add_linear_forms(&perp_graded(&f)?, std::slice::from_ref(&l))?;
        let mut ks = Vec::new();
        let mut dims = [0; 2];
        for i in 0..2 {
            let local = add_linear_forms(&perp_graded(&p.bd.block_form(i)?)?, std::slice::from_ref(&p.local[i]))?;
            dims[i] = quotient_total_dim(&local)?;
            ks.push(extend_block(&p.bd, i, &local)?);
        }
        let right = graded_intersect(&ks)?;
        let proper = right.proper_containment_degrees(&left)?;
        Ok((proper.is_some(), proper, quotient_total_dim(&left)?, dims))
    };
    let mut report = report;
    match run() {
        Ok((contained, proper, total, dims)) => {
            let strict = proper.as_ref().is_some_and(|v| !v.is_empty());
            let inequality = total >= dims[0] + dims[1];
            report
                .observe("contained", contained)
                .expect("contained", true)
                .observe("strict", strict)
                .expect("strict", true)
                .observe("proper_degrees", proper.map(|v| join(&v)).unwrap_or_default())
                .observe("sum_dim", total)
                .observe("block_dims", join(&dims))
                .observe("inequality", inequality)
                .expect("inequality", true);
            report.passed = contained && strict && inequality;
            report
        }
        Err(e) => report.error(e),
    }
}

/// `H(e) = H(d − e)` and `H(0) = H(d) = 1` for `T/F^⊥`.
pub fn check_gorenstein_symmetry(f: &Polynomial) -> CheckReport {
    let mut report = CheckReport::new("gorenstein", f.to_string());
    let h = match perp_graded(f) {
        Ok(p) => p.hilbert_function(),
        Err(e) => return report.error(e),
    };
    let d = f.degree().expect("perp succeeded");
    let v = &h.values()[..=d];
    let symmetric = (0..=d).all(|e| v[e] == v[d - e]);
    report
        .observe("hilbert", join(v))
        .observe("symmetric", symmetric)
        .expect("symmetric", true)
        .observe("socle_ends", format!("{},{}", v[0], v[d]))
        .expect("socle_ends", "1,1")
        .observe("beyond_socle", h.values()[d + 1])
        .expect("beyond_socle", 0);
    report.passed = symmetric && v[0] == 1 && v[d] == 1 && h.values()[d + 1] == 0;
    report
}

/// Number of monomials divisible by none of `generators`, by enumeration
/// through degree `cap`. The quotient must be Artinian within the cap.
pub fn oracle_monomial_quotient(nvars: usize, generators: &[Vec<u32>], cap: usize) -> Result<usize> {
    if let Some(g) = generators.iter().find(|g| g.len() != nvars) {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: g.len(),
        });
    }
    let gens: Vec<Monomial> = generators.iter().map(|g| Monomial(g.clone())).collect();
    let mut total = 0;
    for e in 0..=cap {
        let level = degree_basis(nvars, e)
            .monomials()
            .iter()
            .filter(|m| !gens.iter().any(|g| g.divides(m)))
            .count();
        if level == 0 {
            return Ok(total);
        }
        total += level;
    }
    Err(Error::NonArtinian { degree: cap })
}

/// Generators of `(F^⊥ : t_k) + (t_k)` for `F = x^a` (`a_k > 0`): `t_k` and
/// `t_i^{a_i + 1}` for `i ≠ k`.
pub fn monomial_eq3_generators(exponents: &[u32], k: usize) -> Vec<Vec<u32>> {
    let n = exponents.len();
    (0..n)
        .map(|i| {
            let mut g = vec![0; n];
            g[i] = if i == k { 1 } else { exponents[i] + 1 };
            g
        })
        .collect()
}

/// Pairwise lcms: generators of the intersection of two monomial ideals.
pub fn intersect_monomial_generators(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for x in a {
        for y in b {
            let l: Vec<u32> = x.iter().zip(y).map(|(p, q)| *p.max(q)).collect();
            if !out.contains(&l) {
                out.push(l);
            }
        }
    }
    out
}

/// Oracle count against linear algebra for every ideal derived from the
/// monomial blocks of `bd` with coordinate witnesses: `F_i^⊥`, the ideal
/// behind the rank bound, `J_i`, and `∩ J_i` when all blocks are monomials.
pub fn check_monomial_oracle(bd: &BlockDecomposition, witnesses: &[LinearForm]) -> CheckReport {
    let report = CheckReport::new("oracle", describe_with(bd, witnesses));
    let p = match prepare(bd, witnesses) {
        Ok(p) => p,
        Err(why) => return report.skip(why),
    };
    let n = p.bd.vars().len();
    let d = p.bd.degree().expect("validated");
    let mut pairs: Vec<(String, usize, usize)> = Vec::new();
    let mut all_monomial = true;
    let mut j_gens: Vec<Vec<Vec<u32>>> = Vec::new();
    let run = |pairs: &mut Vec<(String, usize, usize)>, all_monomial: &mut bool, j_gens: &mut Vec<Vec<Vec<u32>>>| -> Result<()> {
        let mut js = Vec::new();
        for i in 0..p.bd.len() {
            let fi = p.bd.block_form(i)?;
            let (FormClass::Monomial(a), Some(k)) = (crate::rank::classify(&fi), p.local[i].as_variable()) else {
                *all_monomial = false;
                continue;
            };
            let nb = a.len();
            let perp_gens: Vec<Vec<u32>> = (0..nb)
                .map(|j| {
                    let mut g = vec![0; nb];
                    g[j] = a[j] + 1;
                    g
                })
                .collect();
            let la = quotient_total_dim(&perp_graded(&fi)?)?;
            pairs.push((format!("perp_{i}"), oracle_monomial_quotient(nb, &perp_gens, d + 1)?, la));
            let local = monomial_eq3_generators(&a, k);
            let la = rank_lower_bound(&fi, &p.local[i])?;
            pairs.push((format!("bound_{i}"), oracle_monomial_quotient(nb, &local, d + 1)?, la));
            let mut ambient: Vec<Vec<u32>> = local
                .iter()
                .map(|g| {
                    let mut e = vec![0; n];
                    for (j, &pos) in p.bd.blocks()[i].iter().enumerate() {
                        e[pos] = g[j];
                    }
                    e
                })
                .collect();
            ambient.extend((0..n).filter(|k| !p.bd.blocks()[i].contains(k)).map(|k| {
                let mut e = vec![0; n];
                e[k] = 1;
                e
            }));
            let j = block_ideal(&p.bd, i, &p.local[i])?;
            pairs.push((format!("J_{i}"), oracle_monomial_quotient(n, &ambient, d + 1)?, quotient_total_dim(&j)?));
            js.push(j);
            j_gens.push(ambient);
        }
        if *all_monomial && js.len() > 1 {
            let gens = j_gens[1..]
                .iter()
                .fold(j_gens[0].clone(), |acc, g| intersect_monomial_generators(&acc, g));
            pairs.push((
                "intersection".to_string(),
                oracle_monomial_quotient(n, &gens, d + 1)?,
                quotient_total_dim(&graded_intersect(&js)?)?,
            ));
        }
        Ok(())
    };
    let mut report = report;
    if let Err(e) = run(&mut pairs, &mut all_monomial, &mut j_gens) {
        return report.error(e);
    }
    if pairs.is_empty() {
        return report.skip("no monomial block with a coordinate witness");
    }
    for (name, oracle, la) in &pairs {
        report.observe(name, la).expect(name, oracle);
    }
    report.passed = pairs.iter().all(|(_, o, l)| o == l);
    report
}

/// Which blocks a corpus may contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassMix {
    Mixed,
    Monomials,
    Binary,
}

/// Sizes, seeds and class mix of a generated corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub instances: usize,
    pub seed: u64,
    pub max_vars: usize,
    pub max_blocks: usize,
    pub min_blocks: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub mix: ClassMix,
    /// Monomial blocks satisfy `a_0 + ⋯ + a_{n-1} ≤ a_n`.
    pub cactus: bool,
    /// Samples for cactus bounds.
    pub samples: usize,
    /// Coefficient bound for random binary forms.
    pub coefficient_bound: u32,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            instances: 50,
            seed: 0,
            max_vars: 8,
            max_blocks: 3,
            min_blocks: 1,
            min_degree: 2,
            max_degree: 6,
            mix: ClassMix::Mixed,
            cactus: false,
            samples: crate::rank::DEFAULT_SAMPLES,
            coefficient_bound: 5,
        }
    }
}

impl CorpusConfig {
    /// Two-block instances whose monomials meet the cactus hypothesis.
    pub fn cactus(instances: usize, seed: u64) -> Self {
        Self {
            instances,
            seed,
            min_blocks: 2,
            max_blocks: 2,
            cactus: true,
            ..Self::default()
        }
    }
}

/// One generated block sum with a computing form per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusInstance {
    pub index: usize,
    pub seed: u64,
    pub bd: BlockDecomposition,
    /// Ambient witnesses `t_i` computing the block ranks.
    pub witnesses: Vec<LinearForm>,
}

const BINARY_RETRIES: u64 = 500;

fn instance_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Positive composition of `d` into `k` parts.
fn composition(rng: &mut ChaCha8Rng, d: usize, k: usize) -> Vec<u32> {
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, d - 1, k - 1).into_vec();
    cuts.sort_unstable();
    let mut prev = 0;
    let mut out = Vec::with_capacity(k);
    for c in cuts {
        out.push((c + 1 - prev) as u32);
        prev = c + 1;
    }
    out.push((d - prev) as u32);
    out
}

fn monomial_exponents(rng: &mut ChaCha8Rng, d: usize, k: usize, cactus: bool) -> Vec<u32> {
    if !cactus {
        return composition(rng, d, k.min(d));
    }
    // Largest exponent at least half the degree, the rest a composition of
    // what remains.
    let k = k.min(d / 2 + 1).max(1);
    if k == 1 {
        return vec![d as u32];
    }
    let top = rng.gen_range(d.div_ceil(2)..=d - (k - 1));
    let mut e = composition(rng, d - top, k - 1);
    let at = rng.gen_range(0..k);
    e.insert(at, top as u32);
    e
}

fn block_prefix(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

/// Builds instance `index` of the corpus described by `config`.
pub fn generate_instance(config: &CorpusConfig, index: usize) -> CorpusInstance {
    let seed = instance_seed(config.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(config.min_degree..=config.max_degree);
    let m = rng.gen_range(config.min_blocks..=config.max_blocks.max(config.min_blocks));
    let mut budget = config.max_vars;
    let mut specs: Vec<(Vec<String>, Polynomial)> = Vec::new();
    for i in 0..m {
        let left = m - i - 1;
        let room = budget.saturating_sub(left);
        let binary = match config.mix {
            ClassMix::Binary => true,
            ClassMix::Monomials => false,
            ClassMix::Mixed => rng.gen_bool(0.5),
        } && room >= 2;
        let (names, form) = if binary {
            let names: Vec<String> = (0..2).map(|j| format!("{}{j}", block_prefix(i))).collect();
            (names.clone(), binary_block(&names, d, config.coefficient_bound, &mut rng))
        } else {
            let k = rng.gen_range(1..=room.clamp(1, 3));
            let exps = monomial_exponents(&mut rng, d, k, config.cactus);
            let names: Vec<String> = (0..exps.len()).map(|j| format!("{}{j}", block_prefix(i))).collect();
            let f = Polynomial::monomial(names.clone(), exps, Q::from_integer(1.into()));
            (names, f)
        };
        budget -= names.len();
        specs.push((names, form));
    }
    let vars: Vec<String> = specs.iter().flat_map(|(n, _)| n.clone()).collect();
    let mut blocks = Vec::new();
    let mut forms = Vec::new();
    let mut offset = 0;
    for (names, f) in &specs {
        blocks.push((offset..offset + names.len()).collect());
        offset += names.len();
        forms.push(f.embed(&vars).expect("names are in the ambient list"));
    }
    let bd = BlockDecomposition::new(vars, blocks, forms);
    let n = bd.vars().len();
    let witnesses = (0..bd.len())
        .map(|i| {
            let fi = bd.block_form(i).expect("support in block");
            form_rank(&fi, None).expect("covered block").witness.embed(&bd.blocks()[i], n)
        })
        .collect();
    CorpusInstance {
        index,
        seed,
        bd,
        witnesses,
    }
}

/// Random binary form with a rational computing form. Plain random forms
/// of even degree rarely have one, so after a few attempts the form is drawn
/// from the inverse system of `g = l^2 h` with `l` rational, which makes `l`
/// a witness; `x_0^{d-1} x_1` is the last resort.
fn binary_block(names: &[String], d: usize, bound: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let plain = if d % 2 == 1 { 20 } else { 4 };
    for _ in 0..plain {
        let f = random_form(names, d, bound, rng.gen());
        if f.support().len() == 2 && binary_computing_form(&f).is_ok() {
            return f;
        }
    }
    for _ in 0..BINARY_RETRIES {
        let f = inverse_system_form(names, d, bound, rng);
        if f.support().len() == 2 && binary_computing_form(&f).is_ok() {
            return f;
        }
    }
    Polynomial::monomial(names.to_vec(), vec![d as u32 - 1, 1], Q::from_integer(1.into()))
}

/// Random element of `{F ∈ S_d : g·F = 0}` for `g = l^2 h` of random degree
/// `2 ≤ r ≤ (d + 2)/2`.
fn inverse_system_form(names: &[String], d: usize, bound: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let r = rng.gen_range(2..=(d + 2) / 2);
    let (a, b) = loop {
        let (a, b) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
        if a != 0 || b != 0 {
            break (a, b);
        }
    };
    let l = LinearForm::from_ints(&[a, b]).to_polynomial(names);
    let mut g = l.mul(&l).expect("same variables");
    if r > 2 {
        g = g.mul(&random_form(names, r - 2, bound, rng.gen())).expect("same variables");
    }
    let source = degree_basis(2, d);
    let target = degree_basis(2, d - r);
    let mut eqs: Vec<Vec<(usize, Q)>> = vec![Vec::new(); target.len()];
    for (j, m) in source.monomials().iter().enumerate() {
        let x = Polynomial::monomial(names.to_vec(), m.0.clone(), Q::from_integer(1.into()));
        let image = apply_operator(&g, &x).expect("same variables");
        for (k, c) in image.coefficient_vector(d - r).entries() {
            eqs[*k].push((j, c.clone()));
        }
    }
    let eqs: Vec<SparseVec> = eqs.into_iter().map(SparseVec::from_entries).collect();
    let kernel = Subspace::from_equations(source.len(), &eqs);
    let b = i64::from(bound);
    let mut acc = SparseVec::new();
    for row in kernel.rows() {
        let c = rng.gen_range(1..=b) * if rng.gen_bool(0.5) { -1 } else { 1 };
        acc = acc.axpy(&Q::from_integer(c.into()), row);
    }
    Polynomial::from_coefficients(names.to_vec(), d, &acc)
}

pub fn generate_corpus(config: &CorpusConfig) -> Vec<CorpusInstance> {
    (0..config.instances)
        .into_par_iter()
        .map(|i| generate_instance(config, i))
        .collect()
}

/// Named groups of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Claim1,
    ColonInclusion,
    Nonannihilation,
    CactusLemma,
    AdditiveRank,
    AdditiveCrank,
    Oracle,
    Gorenstein,
    Negative,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 10] = [
        "claim1",
        "colon-inclusion",
        "nonannihilation",
        "cactus-lemma",
        "additive-rank",
        "additive-crank",
        "oracle",
        "gorenstein",
        "negative",
        "all",
    ];

    pub fn parse(name: &str) -> Option<Suite> {
        use Suite::*;
        let all = [
            Claim1,
            ColonInclusion,
            Nonannihilation,
            CactusLemma,
            AdditiveRank,
            AdditiveCrank,
            Oracle,
            Gorenstein,
            Negative,
            All,
        ];
        Self::NAMES.iter().position(|n| *n == name).map(|i| all[i])
    }
}

/// Waring certificate matches the closed-form block ranks.
pub fn check_additive_rank(bd: &BlockDecomposition) -> CheckReport {
    let mut report = CheckReport::new("additive-rank", describe_blocks(bd));
    let expected: Result<Vec<Option<usize>>> = (0..bd.len()).map(|i| bd.block_form(i).and_then(|f| closed_form_rank(&f))).collect();
    let expected: usize = match expected {
        Ok(v) if v.iter().all(Option::is_some) => v.into_iter().flatten().sum(),
        Ok(_) => return report.skip("a block has no closed-form rank"),
        Err(e) => return report.error(e),
    };
    match additive_rank(bd) {
        Ok(c) => {
            report
                .observe("value", c.value)
                .expect("value", expected)
                .observe("lower_bound", c.lower_bound)
                .expect("lower_bound", expected)
                .observe("verdict", c.verdict)
                .expect("verdict", Verdict::CertifiedEqual);
            report.passed = c.value == expected && c.lower_bound == expected && c.verdict == Verdict::CertifiedEqual;
            report
        }
        Err(e) => report.error(e),
    }
}

/// Cactus certificate matches the closed-form block cactus ranks.
pub fn check_additive_crank(bd: &BlockDecomposition, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("additive-crank", describe_blocks(bd));
    let mut expected = 0;
    for i in 0..bd.len() {
        let v = bd.block_form(i).and_then(|f| match crate::rank::classify(&f) {
            FormClass::Monomial(e) => monomial_crank(&e),
            FormClass::Binary(pos) => Ok(crate::rank::binary_profile(&f.restrict(&pos)?)?.d1),
            FormClass::General => Err(Error::UnsupportedBlock(f.to_string())),
        });
        match v {
            Ok(v) => expected += v,
            Err(Error::AssumptionNotSatisfied(why)) => return report.skip(why),
            Err(e) => return report.error(e),
        }
    }
    match additive_crank(bd, samples, seed) {
        Ok(c) => {
            report
                .observe("value", c.value)
                .expect("value", expected)
                .observe("lower_bound", c.lower_bound)
                .expect("lower_bound", expected)
                .observe("samples_agree", c.samples_agree.unwrap_or(false))
                .observe("verdict", c.verdict)
                .expect("verdict", Verdict::CertifiedEqual);
            report.passed = c.value == expected && c.lower_bound == expected && c.verdict == Verdict::CertifiedEqual;
            report
        }
        Err(e) => report.error(e),
    }
}

/// Cactus lemma at seeded random `l_i` supported on each block.
fn cactus_lemma_for(inst: &CorpusInstance) -> CheckReport {
    let n = inst.bd.vars().len();
    let mut rng = ChaCha8Rng::seed_from_u64(inst.seed.rotate_left(17));
    let ls: Vec<LinearForm> = (0..inst.bd.len())
        .map(|i| {
            let b = &inst.bd.blocks()[i];
            sample_linear_form(b.len(), &mut rng).embed(b, n)
        })
        .collect();
    if ls.len() != 2 {
        return CheckReport::new("cactus-lemma", describe_blocks(&inst.bd)).skip("needs exactly 2 blocks");
    }
    check_cactus_lemma(&inst.bd, &ls[0], &ls[1])
}

/// Corruptions that must be detected; each report passes when the
/// corruption is caught.
pub fn negative_controls(seed: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let names = |s: &[&str]| s.iter().map(|v| v.to_string()).collect::<Vec<String>>();

    // A witness in F^⊥: block variable absent from the form.
    let vars = names(&["x", "y", "u", "z", "w"]);
    let f1 = Polynomial::monomial(vars.clone(), vec![1, 2, 0, 0, 0], Q::from_integer(1.into()));
    let f2 = Polynomial::monomial(vars.clone(), vec![0, 0, 0, 1, 2], Q::from_integer(1.into()));
    let bd = BlockDecomposition::new(vars.clone(), vec![vec![0, 1, 2], vec![3, 4]], vec![f1.clone(), f2]);
    let bad = [LinearForm::var(5, 2), LinearForm::var(5, 3)];
    let mut r = check_nonannihilation(&bd, &bad);
    let detected = !r.passed && !r.skipped;
    r.check = "negative:corrupted-witness".into();
    r.passed = detected;
    out.push(r);

    let mut r = CheckReport::new("negative:unit-colon", format!("{f1} | t_u"));
    let t = LinearForm::var(5, 2);
    match colon_by_linear(&f1, &t).and_then(|c| Ok((c.is_unit(), rank_lower_bound(&f1, &t)?))) {
        Ok((unit, bound)) => {
            r.observe("unit", unit).expect("unit", true).observe("bound", bound).expect("bound", 0);
            r.passed = unit && bound == 0;
        }
        Err(e) => r = r.error(e),
    }
    out.push(r);

    let mut r = check_cactus_lemma(&bd, &LinearForm::var(5, 2), &LinearForm::var(5, 4));
    let detected = r.skipped;
    r.check = "negative:cactus-precondition".into();
    r.passed = detected;
    r.skipped = false;
    out.push(r);

    // Overlapping blocks.
    let v3 = names(&["x", "y", "z"]);
    let g = random_form(&v3[..2], 3, 5, seed);
    let h = Polynomial::monomial(v3.clone(), vec![0, 1, 2], Q::from_integer(1.into()));
    let bd = BlockDecomposition::new(v3.clone(), vec![vec![0, 1], vec![1, 2]], vec![g.embed(&v3).expect("subset"), h]);
    let mut r = CheckReport::new("negative:overlapping-blocks", describe_blocks(&bd));
    let violations = check_blocks(&bd);
    r.observe("violations", violations.len());
    r.passed = !violations.is_empty() && matches!(additive_rank(&bd), Err(Error::InvalidBlocks(_)));
    out.push(r);

    // Witness of a non-computing form: the bound drops below the rank.
    let xy = names(&["x", "y"]);
    let f = Polynomial::monomial(xy.clone(), vec![2, 1], Q::from_integer(1.into()));
    let mut r = CheckReport::new("negative:non-computing-witness", format!("{f} | t_x"));
    match rank_lower_bound(&f, &LinearForm::var(2, 0)) {
        Ok(b) => {
            r.observe("bound", b).expect("bound_below_rank", monomial_rank(&[2, 1]).expect("positive"));
            r.passed = b < 3;
        }
        Err(e) => r = r.error(e),
    }
    out.push(r);
    out
}

fn waring_checks(suite: Suite, inst: &CorpusInstance) -> Vec<CheckReport> {
    let (bd, ts) = (&inst.bd, inst.witnesses.as_slice());
    let mut out = Vec::new();
    if matches!(suite, Suite::AdditiveRank | Suite::All) {
        out.push(check_additive_rank(bd));
    }
    if matches!(suite, Suite::Claim1 | Suite::All) {
        out.push(check_claim1(bd, ts));
    }
    if matches!(suite, Suite::ColonInclusion | Suite::All) {
        out.push(check_colon_inclusion(bd, ts));
    }
    if matches!(suite, Suite::Nonannihilation | Suite::All) {
        out.push(check_nonannihilation(bd, ts));
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        out.push(check_monomial_oracle(bd, ts));
    }
    if matches!(suite, Suite::Gorenstein | Suite::All) {
        out.push(check_gorenstein_symmetry(&bd.total().expect("same ambient")));
    }
    out
}

/// Runs one suite on `config.instances` generated instances. Cactus suites
/// use two-block instances with the cactus hypothesis on monomials.
pub fn run_suite(suite: Suite, config: &CorpusConfig) -> Vec<CheckReport> {
    if config.instances == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    if suite == Suite::Negative || suite == Suite::All {
        out.extend(negative_controls(config.seed));
    }
    let waring = !matches!(suite, Suite::CactusLemma | Suite::AdditiveCrank | Suite::Negative);
    if waring {
        let corpus = generate_corpus(config);
        let reports: Vec<Vec<CheckReport>> = corpus.par_iter().map(|inst| waring_checks(suite, inst)).collect();
        out.extend(reports.into_iter().flatten());
    }
    if matches!(suite, Suite::CactusLemma | Suite::AdditiveCrank | Suite::All) {
        let cfg = CorpusConfig {
            min_blocks: 2,
            max_blocks: 2,
            cactus: true,
            ..config.clone()
        };
        let corpus = generate_corpus(&cfg);
        let reports: Vec<Vec<CheckReport>> = corpus
            .par_iter()
            .map(|inst| {
                let mut v = Vec::new();
                if matches!(suite, Suite::AdditiveCrank | Suite::All) {
                    v.push(check_additive_crank(&inst.bd, cfg.samples, inst.seed));
                }
                if matches!(suite, Suite::CactusLemma | Suite::All) {
                    v.push(cactus_lemma_for(inst));
                }
                v
            })
            .collect();
        out.extend(reports.into_iter().flatten());
    }
    out
}

/// Every suite on the configured corpus.
pub fn run_corpus(config: &CorpusConfig) -> Vec<CheckReport> {
    run_suite(Suite::All, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn named(blocks: &[(&str, &str)]) -> BlockDecomposition {
        let decls: Vec<(Vec<String>, String)> = blocks
            .iter()
            .map(|(v, f)| (v.split(',').map(str::to_string).collect(), f.to_string()))
            .collect();
        BlockDecomposition::from_named(&decls).unwrap()
    }

    #[test]
    fn colon_inclusion_examples() {
        let bd = named(&[("x,y", "x*y"), ("z,w", "z*w")]);
        let ts = [LinearForm::var(4, 0), LinearForm::var(4, 2)];
        let r = check_colon_inclusion(&bd, &ts);
        assert!(r.passed, "{r}");
        let bd = named(&[("x0,x1,x2", "x0*x1^2*x2^2")]);
        let r = check_colon_inclusion(&bd, &[LinearForm::var(3, 0)]);
        assert!(r.passed, "{r}");
    }

    #[test]
    fn claim1_examples() {
        let bd = named(&[("x,y", "x*y"), ("z,w", "z*w")]);
        let r = check_claim1(&bd, &[LinearForm::var(4, 0), LinearForm::var(4, 2)]);
        assert!(r.passed, "{r}");
        assert_eq!(r.observed["intersection_dim"], "3");
        let bd = named(&[("x0,x1,x2", "x0*x1^2*x2^2")]);
        let r = check_claim1(&bd, &[LinearForm::var(3, 0)]);
        assert!(r.passed, "{r}");
        assert_eq!(r.observed["intersection_dim"], "9");
        // A witness that does not compute the rank breaks the identity.
        let r = check_claim1(&bd, &[LinearForm::var(3, 1)]);
        assert!(!r.passed && !r.skipped, "{r}");
    }

    #[test]
    fn witness_outside_block_is_skipped() {
        let bd = named(&[("x,y", "x*y"), ("z,w", "z*w")]);
        let r = check_claim1(&bd, &[LinearForm::from_ints(&[1, 0, 1, 0]), LinearForm::var(4, 2)]);
        assert!(r.skipped);
    }

    #[test]
    fn nonannihilation_examples() {
        let bd = named(&[("x0,x1", "x0*x1^2"), ("y0,y1", "y0^2*y1")]);
        let ok = [LinearForm::var(4, 0), LinearForm::var(4, 3)];
        assert!(check_nonannihilation(&bd, &ok).passed);
        let v = ["x", "y", "u"].map(String::from).to_vec();
        let bd = BlockDecomposition::new(v.clone(), vec![vec![0, 1, 2]], vec![parse_poly("x*y^2", &v).unwrap()]);
        let r = check_nonannihilation(&bd, &[LinearForm::var(3, 2)]);
        assert!(!r.passed && !r.skipped);
    }

    #[test]
    fn cactus_lemma_examples() {
        let bd = named(&[("x,y", "x*y^2"), ("z,w", "z*w^2")]);
        let r = check_cactus_lemma(&bd, &LinearForm::from_ints(&[3, -2, 0, 0]), &LinearForm::from_ints(&[0, 0, 5, 7]));
        assert!(r.passed, "{r}");
        assert_eq!(r.observed["sum_dim"], "4");
        let v = ["x", "y", "u", "z", "w"].map(String::from).to_vec();
        let bd = BlockDecomposition::new(
            v.clone(),
            vec![vec![0, 1, 2], vec![3, 4]],
            vec![parse_poly("x*y^2", &v).unwrap(), parse_poly("z*w^2", &v).unwrap()],
        );
        let r = check_cactus_lemma(&bd, &LinearForm::var(5, 2), &LinearForm::var(5, 3));
        assert!(r.skipped, "{r}");
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_monomial_quotient(2, &[vec![2, 0], vec![0, 2]], 10).unwrap(), 4);
        let ids: Vec<Vec<u32>> = (0..4).map(|i| (0..4).map(|j| u32::from(i == j)).collect()).collect();
        assert_eq!(oracle_monomial_quotient(4, &ids, 10).unwrap(), 1);
        assert_eq!(oracle_monomial_quotient(3, &[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 2]], 10).unwrap(), 4);
        assert_eq!(
            oracle_monomial_quotient(2, &[vec![2, 0]], 10),
            Err(Error::NonArtinian { degree: 10 })
        );
        assert_eq!(
            intersect_monomial_generators(&[vec![1, 0]], &[vec![0, 1], vec![2, 0]]),
            vec![vec![1, 1], vec![2, 0]]
        );
    }

    #[test]
    fn oracle_agrees_on_monomial_blocks() {
        let bd = named(&[("x0,x1,x2", "x0*x1^2*x2^2"), ("y0,y1", "y0^2*y1^3")]);
        let ts = [LinearForm::var(5, 0), LinearForm::var(5, 3)];
        let r = check_monomial_oracle(&bd, &ts);
        assert!(r.passed, "{r}");
        assert!(r.observed.contains_key("intersection"));
    }

    #[test]
    fn gorenstein_examples() {
        let r = check_gorenstein_symmetry(&parse_poly("x^3 + y^3", &["x".into(), "y".into()]).unwrap());
        assert!(r.passed);
        assert_eq!(r.observed["hilbert"], "1,2,2,1");
    }

    #[test]
    fn empty_config_gives_no_reports() {
        let cfg = CorpusConfig {
            instances: 0,
            ..CorpusConfig::default()
        };
        assert!(run_corpus(&cfg).is_empty());
    }

    #[test]
    fn corpus_is_reproducible() {
        let cfg = CorpusConfig {
            instances: 4,
            seed: 9,
            max_vars: 5,
            max_degree: 4,
            ..CorpusConfig::default()
        };
        let a = run_suite(Suite::Claim1, &cfg);
        assert_eq!(a, run_suite(Suite::Claim1, &cfg));
        assert_eq!(a.len(), 4);
        assert!(a.iter().all(|r| r.passed), "{a:?}");
    }

    #[test]
    fn generated_instances_respect_limits() {
        let cfg = CorpusConfig {
            instances: 30,
            seed: 2,
            ..CorpusConfig::default()
        };
        for inst in generate_corpus(&cfg) {
            assert!(check_blocks(&inst.bd).is_empty());
            assert!(inst.bd.vars().len() <= 8);
            assert!((1..=3).contains(&inst.bd.len()));
            let d = inst.bd.degree().unwrap();
            assert!((2..=6).contains(&d));
        }
        for inst in generate_corpus(&CorpusConfig::cactus(30, 4)) {
            assert_eq!(inst.bd.len(), 2);
            for i in 0..2 {
                if let FormClass::Monomial(e) = crate::rank::classify(&inst.bd.block_form(i).unwrap()) {
                    assert!(monomial_crank(&e).is_ok(), "{e:?}");
                }
            }
        }
    }

    #[test]
    fn negative_controls_are_detected() {
        let reports = negative_controls(1);
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for n in Suite::NAMES {
            assert!(Suite::parse(n).is_some());
        }
        assert_eq!(Suite::parse("bogus"), None);
    }
}
