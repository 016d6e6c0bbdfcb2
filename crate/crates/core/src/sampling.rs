//! Seeded random generators for feasible sequences and q-Racah inputs.
//!
//! Over GF(p) every quantity is a uniform residue. Over the rationals the
//! draws are small: `beta = a/b` with `a in [-12, 12]`, `b in [1, 4]`, and the
//! three starting values are integers in `[-20, 20]`. Draws whose sequences
//! repeat a value are rejected and redrawn.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::params::{qracah_construct, recurrence_sequence, ParameterSequence, QRacahParams};

/// Redraws allowed before giving up.
pub const MAX_ATTEMPTS: usize = 64;

fn random_element<R: Rng>(rng: &mut R, ctx: FieldCtx, lo: i64, hi: i64) -> FieldElement {
    match ctx {
        FieldCtx::Rational => ctx.from_integer(rng.gen_range(lo..=hi)),
        FieldCtx::Prime { p } => ctx.from_integer(rng.gen_range(0..p) as i64),
    }
}

fn random_beta<R: Rng>(rng: &mut R, ctx: FieldCtx) -> FieldElement {
    match ctx {
        FieldCtx::Rational => {
            let a = rng.gen_range(-12..=12);
            let b = rng.gen_range(1..=4);
            ctx.from_ratio(a, b).expect("nonzero denominator")
        }
        FieldCtx::Prime { .. } => random_element(rng, ctx, 0, 0),
    }
}

fn random_nonzero<R: Rng>(rng: &mut R, ctx: FieldCtx, lo: i64, hi: i64) -> FieldElement {
    loop {
        let x = random_element(rng, ctx, lo, hi);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random feasible sequence: both halves follow the recurrence with one
/// shared `beta` and independent starting triples.
pub fn random_feasible<R: Rng>(rng: &mut R, d: usize, ctx: FieldCtx) -> Result<ParameterSequence> {
    for _ in 0..MAX_ATTEMPTS {
        let beta = random_beta(rng, ctx);
        let mut halves = Vec::with_capacity(2);
        for _ in 0..2 {
            let t: Vec<FieldElement> = (0..3).map(|_| random_element(rng, ctx, -20, 20)).collect();
            halves.push(recurrence_sequence(&beta, &t[0], &t[1], &t[2], d)?);
        }
        let theta_star = halves.pop().expect("two halves");
        let theta = halves.pop().expect("two halves");
        match ParameterSequence::new(ctx, theta, theta_star) {
            Ok(p) if p.is_feasible() => return Ok(p),
            Ok(_) | Err(Error::NotDistinct) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingFailed(MAX_ATTEMPTS))
}

/// Random inputs for the q-Racah closed form that produce a valid sequence
/// of diameter `d`.
pub fn random_qracah_params<R: Rng>(rng: &mut R, d: usize, ctx: FieldCtx) -> Result<QRacahParams> {
    for _ in 0..MAX_ATTEMPTS {
        let q = match ctx {
            FieldCtx::Rational => {
                let a = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
                let b = rng.gen_range(1..=5);
                ctx.from_ratio(a, b).expect("nonzero denominator")
            }
            FieldCtx::Prime { .. } => random_nonzero(rng, ctx, 0, 0),
        };
        let args = QRacahParams {
            q,
            alpha: random_element(rng, ctx, -10, 10),
            b: random_nonzero(rng, ctx, -10, 10),
            c: random_nonzero(rng, ctx, -10, 10),
            alpha_star: random_element(rng, ctx, -10, 10),
            b_star: random_nonzero(rng, ctx, -10, 10),
            c_star: random_nonzero(rng, ctx, -10, 10),
        };
        match qracah_construct(&args, d) {
            Ok(_) => return Ok(args),
            Err(Error::NotDistinct | Error::ConstraintViolated(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingFailed(MAX_ATTEMPTS))
}
