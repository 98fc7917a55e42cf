//! The `check` command: one lemma or proposition, on a file or on samples.

use std::path::PathBuf;

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::{ArgGroup, Args};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use sumfree_core::check::{CheckResult, CheckTally};
use sumfree_core::primitive::{certificate_from_json, check_lemma, enumerate_primitive, primitive_library, recognize_primitive, LemmaId, LemmaInstance, PrimitiveEntry};
use sumfree_core::search::{check_proposition, PropId, PropParams};
use sumfree_core::subspace::hyperplane_from_functional;
use sumfree_core::{enumerate_hyperplanes, pow3, AffineSubspace, GroupElement, TernarySet, TernaryVector};

use crate::{emit, print_json, read_input, read_set, render, Format, Outcome, Output};

#[derive(Args)]
#[command(group(ArgGroup::new("statement").required(true).args(["lemma", "prop"])))]
pub struct CheckArgs {
    /// card_formula, sym_containment, four_sum, hyperplane_bound,
    /// affine_above_sym, dense_affine or disjoint_transfer.
    #[arg(long)]
    lemma: Option<LemmaId>,
    /// prop_hyperplane_cover, prop_empty_slice, conclusion_grid, five_in_cube,
    /// four_point, line_everywhere, parallel_lines, dim4, no_zero_4A or
    /// codim2_slice.
    #[arg(long)]
    prop: Option<PropId>,
    /// Set file (`-` for standard input). Without it, sampled instances are checked.
    input: Option<PathBuf>,
    /// Certificate JSON for card_formula and sym_containment.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Set file with the subset B for disjoint_transfer.
    #[arg(long)]
    subset: Option<PathBuf>,
    /// Hyperplane `f_1 ... f_n = c`, the points x with f . x = c.
    #[arg(long)]
    hyperplane: Option<String>,
    /// Subspace dimension for dense_affine.
    #[arg(long)]
    k: Option<usize>,
    /// Dimension of the sampled instances.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: Output,
}

pub fn parse_hyperplane(spec: &str) -> Result<AffineSubspace> {
    let (lhs, rhs) = spec.split_once('=').ok_or_else(|| anyhow!("hyperplane `{spec}` must look like `f_1 ... f_n = c`"))?;
    let trit = |t: &str| -> Result<u8> {
        match t.trim().parse::<u8>() {
            Ok(v) if v < 3 => Ok(v),
            _ => bail!("`{t}` is not a trit in {{0, 1, 2}}"),
        }
    };
    let f: Vec<u8> = lhs.split_whitespace().map(trit).collect::<Result<_>>()?;
    let c = trit(rhs)?;
    let f = TernaryVector::from_trits(&f)?;
    ensure!(!f.is_zero(), "the functional must be nonzero");
    Ok(hyperplane_from_functional(f, c))
}

pub fn run(args: CheckArgs) -> Result<Outcome> {
    let hyperplane = args.hyperplane.as_deref().map(parse_hyperplane).transpose()?;
    let (name, results) = match &args.input {
        Some(path) => {
            let a = read_set(path)?;
            let r = match (args.lemma, args.prop) {
                (Some(id), _) => check_lemma(id, &lemma_instance(id, &a, &args, hyperplane)?)?,
                (_, Some(id)) => check_proposition(id, &a, &PropParams { hyperplane })?,
                _ => unreachable!("clap requires one of --lemma and --prop"),
            };
            match args.out.format {
                Format::Json => print_json(&serde_json::to_value(&r)?),
                Format::Text => emit(&render::result_text(&r)),
            }
            return Ok(if r.is_counterexample() { Outcome::Fail } else { Outcome::Pass });
        }
        None => {
            ensure!(args.samples > 0, "--samples must be positive");
            ensure!(hyperplane.is_none() && args.k.is_none(), "--hyperplane and --k need an input set");
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            match (args.lemma, args.prop) {
                (Some(id), _) => (id.name(), sampled_lemma(id, args.dim, args.samples, &mut rng)?),
                (_, Some(id)) => (id.name(), sampled_prop(id, args.dim, args.samples, &mut rng)?),
                _ => unreachable!("clap requires one of --lemma and --prop"),
            }
        }
    };
    let tally: CheckTally = results.iter().collect();
    match args.out.format {
        Format::Json => print_json(&json!({ "check": name, "dim": args.dim, "seed": args.seed, "instances": results.len(), "tally": tally })),
        Format::Text => emit(&render::tally_text(name, &tally)),
    }
    Ok(if tally.passed() { Outcome::Pass } else { Outcome::Fail })
}

fn lemma_instance(id: LemmaId, a: &TernarySet, args: &CheckArgs, hyperplane: Option<AffineSubspace>) -> Result<LemmaInstance> {
    Ok(match id {
        LemmaId::CardFormula | LemmaId::SymContainment => {
            let cert = match &args.certificate {
                Some(p) => certificate_from_json(&read_input(p)?).with_context(|| format!("parsing {}", p.display()))?,
                None => recognize_primitive(a).ok_or_else(|| anyhow!("the set is not primitive; pass --certificate to check a certificate"))?,
            };
            LemmaInstance::Certified(cert)
        }
        LemmaId::FourSum | LemmaId::HyperplaneBound | LemmaId::AffineAboveSym => LemmaInstance::Set(a.clone()),
        LemmaId::DenseAffine => LemmaInstance::Dense { b: a.clone(), k: args.k.ok_or_else(|| anyhow!("dense_affine needs --k"))? },
        LemmaId::DisjointTransfer => {
            let b = read_set(args.subset.as_deref().ok_or_else(|| anyhow!("disjoint_transfer needs --subset"))?)?;
            let j = hyperplane.ok_or_else(|| anyhow!("disjoint_transfer needs --hyperplane"))?;
            LemmaInstance::Transfer { a: a.clone(), b, j }
        }
    })
}

/// Primitive sets of dimension `n`: the whole library up to dimension 3,
/// random images of the orbit representatives in dimension 4.
fn primitive_pool(n: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<PrimitiveEntry>> {
    if n <= 3 {
        return Ok(primitive_library(n)?.to_vec());
    }
    let reps = enumerate_primitive(n, true)?;
    Ok((0..samples.max(reps.len()))
        .map(|i| {
            let (s, c) = &reps[i % reps.len()];
            let g = GroupElement::random(n, rng);
            (g.apply_set(s), c.transform(&g))
        })
        .collect())
}

fn random_subset(a: &TernarySet, min: usize, rng: &mut ChaCha8Rng) -> TernarySet {
    let mut idx = a.indices();
    idx.shuffle(rng);
    let keep = rng.gen_range(min.clamp(1, idx.len())..=idx.len());
    TernarySet::from_indices(a.dim(), idx[..keep].iter().copied()).expect("indices come from a set")
}

fn sampled_lemma(id: LemmaId, n: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CheckResult>> {
    let pool = primitive_pool(n, samples, rng)?;
    let instances: Vec<LemmaInstance> = match id {
        LemmaId::CardFormula | LemmaId::SymContainment => pool.into_iter().map(|(_, c)| LemmaInstance::Certified(c)).collect(),
        LemmaId::FourSum | LemmaId::HyperplaneBound | LemmaId::AffineAboveSym => pool.into_iter().map(|(s, _)| LemmaInstance::Set(s)).collect(),
        LemmaId::DenseAffine => (0..samples)
            .map(|_| {
                let (a, _) = pool.choose(rng).expect("nonempty pool");
                LemmaInstance::Dense { b: random_subset(a, a.len() / 2, rng), k: rng.gen_range(1..=n) }
            })
            .collect(),
        LemmaId::DisjointTransfer => {
            let hyperplanes = enumerate_hyperplanes(n, false);
            (0..samples)
                .map(|_| {
                    let (a, _) = pool.choose(rng).expect("nonempty pool");
                    let b = random_subset(a, a.len() / 2, rng);
                    LemmaInstance::Transfer { a: a.clone(), b, j: hyperplanes.choose(rng).expect("nonempty").clone() }
                })
                .collect()
        }
    };
    instances.iter().map(|inst| Ok(check_lemma(id, inst)?)).collect()
}

/// Random dense subsets of primitive sets; in dimension 4 the subsets have
/// at least 14 elements.
fn sampled_prop(id: PropId, n: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CheckResult>> {
    let pool = primitive_pool(n, samples, rng)?;
    let min = if n == 4 { 14 } else { pow3(n) / 6 + 1 };
    (0..samples)
        .map(|_| {
            let (a, _) = pool.choose(rng).expect("nonempty pool");
            let b = random_subset(a, min, rng);
            Ok(check_proposition(id, &b, &PropParams::default())?)
        })
        .collect()
}
