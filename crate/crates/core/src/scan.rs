//! Seeded search for types that fail to split as relators plus zigzag words.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::params::{ParameterSequence, SequenceJson};
use crate::relators::{directness_check, DirectnessCertificate, LambdaJson};
use crate::sampling::random_feasible;
use crate::words::WordType;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeTally {
    pub lambda: LambdaJson,
    pub label: String,
    pub direct: usize,
    pub total: usize,
}

/// A non-direct case with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanFailure {
    pub sample: usize,
    pub certificate: DirectnessCertificate,
    pub p: SequenceJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub d: usize,
    pub max_length: usize,
    pub samples: usize,
    pub seed: u64,
    pub field: FieldCtx,
    pub cases: usize,
    pub direct: usize,
    pub per_type: Vec<TypeTally>,
    pub failures: Vec<ScanFailure>,
    /// every certificate, ordered by sample then type
    #[serde(skip)]
    pub certificates: Vec<(usize, DirectnessCertificate)>,
}

impl ScanReport {
    pub fn all_direct(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every type of length `1..=max_length` against `samples` random
/// feasible sequences drawn from `ChaCha8Rng::seed_from_u64(seed)`.
///
/// The sequences are drawn before any work is parallelized, so the report
/// depends only on the arguments.
pub fn conjecture_scan(
    d: usize,
    max_length: usize,
    samples: usize,
    seed: u64,
    ctx: FieldCtx,
) -> Result<ScanReport> {
    if max_length == 0 {
        return Err(Error::ConstraintViolated("max_length >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seqs = (0..samples)
        .map(|_| random_feasible(&mut rng, d, ctx))
        .collect::<Result<Vec<ParameterSequence>>>()?;
    let types = WordType::all_up_to(max_length, d);
    let jobs: Vec<(usize, usize)> = (0..samples)
        .flat_map(|s| (0..types.len()).map(move |t| (s, t)))
        .collect();
    let certificates = jobs
        .par_iter()
        .map(|&(s, t)| Ok((s, directness_check(&types[t], &seqs[s])?)))
        .collect::<Result<Vec<_>>>()?;

    let mut per_type: Vec<TypeTally> = types
        .iter()
        .map(|lambda| TypeTally {
            lambda: LambdaJson(*lambda),
            label: lambda.to_string(),
            direct: 0,
            total: 0,
        })
        .collect();
    let mut failures = Vec::new();
    for (&(s, t), (_, cert)) in jobs.iter().zip(&certificates) {
        per_type[t].total += 1;
        if cert.direct {
            per_type[t].direct += 1;
        } else {
            failures.push(ScanFailure {
                sample: s,
                certificate: cert.clone(),
                p: seqs[s].to_json(),
            });
        }
    }
    Ok(ScanReport {
        d,
        max_length,
        samples,
        seed,
        field: ctx,
        cases: certificates.len(),
        direct: certificates.iter().filter(|(_, c)| c.direct).count(),
        per_type,
        failures,
        certificates,
    })
}
