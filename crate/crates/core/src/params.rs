//! Eigenvalue/dual eigenvalue sequences and parameter arrays.
//!
//! The feasibility test, the three-term recurrence behind condition (ii),
//! q-Racah detection and construction, the `tau`/`eta` polynomials and the
//! full parameter-array validator. The auxiliary `beta` is always carried as
//! a field element; the base `q` is never solved for.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// `p = ({theta_i}, {theta*_i})` for `0 <= i <= d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterSequence {
    d: usize,
    ctx: FieldCtx,
    theta: Vec<FieldElement>,
    theta_star: Vec<FieldElement>,
}

impl ParameterSequence {
    pub fn new(
        ctx: FieldCtx,
        theta: Vec<FieldElement>,
        theta_star: Vec<FieldElement>,
    ) -> Result<Self> {
        if theta.is_empty() || theta.len() != theta_star.len() {
            return Err(Error::DimensionMismatch(format!(
                "theta has {} entries, theta* has {}",
                theta.len(),
                theta_star.len()
            )));
        }
        for x in theta.iter().chain(&theta_star) {
            if x.ctx() != ctx {
                return Err(Error::CtxMismatch(ctx, x.ctx()));
            }
        }
        Ok(Self {
            d: theta.len() - 1,
            ctx,
            theta,
            theta_star,
        })
    }

    /// Convenience constructor from integers.
    pub fn from_integers(ctx: FieldCtx, theta: &[i64], theta_star: &[i64]) -> Result<Self> {
        let conv = |xs: &[i64]| xs.iter().map(|&x| ctx.from_integer(x)).collect();
        Self::new(ctx, conv(theta), conv(theta_star))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn theta(&self) -> &[FieldElement] {
        &self.theta
    }

    pub fn theta_star(&self) -> &[FieldElement] {
        &self.theta_star
    }

    /// The `theta` list, or `theta*` when `starred`.
    pub fn sequence(&self, starred: bool) -> &[FieldElement] {
        if starred {
            &self.theta_star
        } else {
            &self.theta
        }
    }

    /// SHA-256 over the canonical JSON form (hex).
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(&self.to_json()).expect("serializable");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn to_json(&self) -> SequenceJson {
        SequenceJson {
            d: self.d,
            field: self.ctx,
            theta: self.theta.iter().map(ToString::to_string).collect(),
            theta_star: self.theta_star.iter().map(ToString::to_string).collect(),
            zeta: None,
        }
    }

    pub fn from_json(json: &SequenceJson) -> Result<Self> {
        let ctx = json.field;
        let parse = |xs: &[String]| {
            xs.iter()
                .map(|s| ctx.parse_element(s))
                .collect::<Result<Vec<_>>>()
        };
        let p = Self::new(ctx, parse(&json.theta)?, parse(&json.theta_star)?)?;
        if p.d != json.d {
            return Err(Error::DimensionMismatch(format!(
                "declared d = {} but {} eigenvalues given",
                json.d,
                p.d + 1
            )));
        }
        Ok(p)
    }

    pub fn is_feasible(&self) -> bool {
        check_feasible(self).feasible
    }

    pub(crate) fn require_feasible(&self) -> Result<()> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(Error::NotFeasible)
        }
    }
}

/// JSON shape shared by parameter sequences and parameter arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub d: usize,
    pub field: FieldCtx,
    pub theta: Vec<String>,
    pub theta_star: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub distinct_theta: bool,
    pub distinct_theta_star: bool,
    pub ratios_equal: bool,
    pub beta_plus_one: Option<FieldElement>,
    pub feasible: bool,
}

fn all_distinct(xs: &[FieldElement]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, x)| xs[i + 1..].iter().all(|y| x != y))
}

/// `(t_{i-2} - t_{i+1}) / (t_{i-1} - t_i)` for `2 <= i <= d-1`; `None` on a
/// zero denominator.
fn ratios(t: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let d = t.len() - 1;
    (2..d)
        .map(|i| {
            let num = t[i - 2].sub(&t[i + 1]).ok()?;
            let den = t[i - 1].sub(&t[i]).ok()?;
            num.div(&den).ok()
        })
        .collect()
}

/// Distinctness of both sequences and constancy of the common ratio.
pub fn check_feasible(p: &ParameterSequence) -> FeasibilityReport {
    let distinct_theta = all_distinct(&p.theta);
    let distinct_theta_star = all_distinct(&p.theta_star);
    let (ratios_equal, beta_plus_one) = if p.d < 3 {
        (true, None)
    } else {
        match (ratios(&p.theta), ratios(&p.theta_star)) {
            (Some(a), Some(b)) => {
                let first = a[0].clone();
                let equal = a.iter().chain(&b).all(|r| *r == first);
                (equal, equal.then_some(first))
            }
            _ => (false, None),
        }
    };
    FeasibilityReport {
        distinct_theta,
        distinct_theta_star,
        ratios_equal,
        beta_plus_one,
        feasible: distinct_theta && distinct_theta_star && ratios_equal,
    }
}

/// `theta_i = theta*_i = vartheta^i`.
pub fn geometric_sequence(vartheta: &FieldElement, d: usize) -> Result<ParameterSequence> {
    let ctx = vartheta.ctx();
    if vartheta.is_zero() {
        return Err(Error::ConstraintViolated("vartheta != 0"));
    }
    let mut powers = vec![ctx.one()];
    for n in 1..=d {
        let next = powers[n - 1].mul(vartheta)?;
        if next.is_one() {
            return Err(Error::RootOfUnity(format!("{vartheta}^{n} = 1")));
        }
        powers.push(next);
    }
    ParameterSequence::new(ctx, powers.clone(), powers)
}

/// `t_i = (beta+1) t_{i-1} - (beta+1) t_{i-2} + t_{i-3}` for `3 <= i <= d`,
/// returning `t_0..t_d` (truncated when `d < 2`).
pub fn recurrence_sequence(
    beta: &FieldElement,
    t0: &FieldElement,
    t1: &FieldElement,
    t2: &FieldElement,
    d: usize,
) -> Result<Vec<FieldElement>> {
    let b1 = beta.add(&beta.ctx().one())?;
    let mut t = vec![t0.clone(), t1.clone(), t2.clone()];
    t.truncate(d + 1);
    for i in 3..=d {
        let next = b1.mul(&t[i - 1].sub(&t[i - 2])?)?.add(&t[i - 3])?;
        t.push(next);
    }
    Ok(t)
}

/// `(t0-t1)^2 - beta (t0-t1)(t1-t2) + (t1-t2)^2`.
pub fn omega(
    beta: &FieldElement,
    t0: &FieldElement,
    t1: &FieldElement,
    t2: &FieldElement,
) -> Result<FieldElement> {
    let a = t0.sub(t1)?;
    let b = t1.sub(t2)?;
    a.mul(&a)?.sub(&beta.mul(&a)?.mul(&b)?)?.add(&b.mul(&b)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QRacahWitness {
    pub beta: FieldElement,
    pub omega: FieldElement,
    pub omega_star: FieldElement,
    pub is_qracah: bool,
    pub bc: Option<FieldElement>,
    pub bstar_cstar: Option<FieldElement>,
}

/// Decides membership in the q-Racah family for a feasible `p` with `d >= 3`.
pub fn qracah_witness(p: &ParameterSequence) -> Result<QRacahWitness> {
    if p.d < 3 {
        return Err(Error::UnsupportedDiameter(p.d));
    }
    let report = check_feasible(p);
    let Some(bpo) = report.beta_plus_one.filter(|_| report.feasible) else {
        return Err(Error::NotFeasible);
    };
    let ctx = p.ctx;
    let beta = bpo.sub(&ctx.one())?;
    let t = &p.theta;
    let s = &p.theta_star;
    let omega_v = omega(&beta, &t[0], &t[1], &t[2])?;
    let omega_star = omega(&beta, &s[0], &s[1], &s[2])?;
    let two = ctx.from_integer(2);
    let beta_sq_is_four = beta.mul(&beta)? == ctx.from_integer(4);
    let is_qracah = !beta_sq_is_four && !omega_v.is_zero() && !omega_star.is_zero();
    let (bc, bstar_cstar) = if is_qracah {
        let bm2 = beta.sub(&two)?;
        let denom = bm2.mul(&bm2)?.mul(&beta.add(&two)?)?;
        (Some(omega_v.div(&denom)?), Some(omega_star.div(&denom)?))
    } else {
        (None, None)
    };
    Ok(QRacahWitness {
        beta,
        omega: omega_v,
        omega_star,
        is_qracah,
        bc,
        bstar_cstar,
    })
}

/// Inputs of the closed form `alpha + b q^{2i-d} + c q^{d-2i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRacahParams {
    pub q: FieldElement,
    pub alpha: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub alpha_star: FieldElement,
    pub b_star: FieldElement,
    pub c_star: FieldElement,
}

/// Builds the q-Racah sequence from its closed form.
pub fn qracah_construct(args: &QRacahParams, d: usize) -> Result<ParameterSequence> {
    let ctx = args.q.ctx();
    for x in [
        &args.alpha,
        &args.b,
        &args.c,
        &args.alpha_star,
        &args.b_star,
        &args.c_star,
    ] {
        if x.ctx() != ctx {
            return Err(Error::CtxMismatch(ctx, x.ctx()));
        }
    }
    if args.q.is_zero() {
        return Err(Error::ConstraintViolated("q != 0"));
    }
    let q2 = args.q.mul(&args.q)?;
    if q2.is_one() {
        return Err(Error::ConstraintViolated("q^2 != 1"));
    }
    if q2.add(&ctx.one())?.is_zero() {
        return Err(Error::ConstraintViolated("q^2 != -1"));
    }
    if args
        .b
        .mul(&args.b_star)?
        .mul(&args.c)?
        .mul(&args.c_star)?
        .is_zero()
    {
        return Err(Error::ConstraintViolated("b b* c c* != 0"));
    }
    let d_i = d as i64;
    let closed =
        |alpha: &FieldElement, b: &FieldElement, c: &FieldElement| -> Result<Vec<FieldElement>> {
            (0..=d_i)
                .map(|i| {
                    alpha
                        .add(&b.mul(&args.q.pow(2 * i - d_i)?)?)?
                        .add(&c.mul(&args.q.pow(d_i - 2 * i)?)?)
                })
                .collect()
        };
    let theta = closed(&args.alpha, &args.b, &args.c)?;
    let theta_star = closed(&args.alpha_star, &args.b_star, &args.c_star)?;
    if !all_distinct(&theta) || !all_distinct(&theta_star) {
        return Err(Error::NotDistinct);
    }
    ParameterSequence::new(ctx, theta, theta_star)
}

/// Selector for the four product polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TauKind {
    /// `(x - theta_0) ... (x - theta_{i-1})`
    Tau,
    /// `(x - theta_d) ... (x - theta_{d-i+1})`
    Eta,
    TauStar,
    EtaStar,
}

/// Evaluates `tau_i`, `eta_i` or a starred analogue at `x`.
pub fn tau_eval(
    kind: TauKind,
    i: usize,
    x: &FieldElement,
    p: &ParameterSequence,
) -> Result<FieldElement> {
    if i > p.d {
        return Err(Error::IndexOutOfRange { index: i, max: p.d });
    }
    let (seq, reversed) = match kind {
        TauKind::Tau => (&p.theta, false),
        TauKind::Eta => (&p.theta, true),
        TauKind::TauStar => (&p.theta_star, false),
        TauKind::EtaStar => (&p.theta_star, true),
    };
    let mut acc = p.ctx.one();
    for h in 0..i {
        let root = if reversed { &seq[p.d - h] } else { &seq[h] };
        acc = acc.mul(&x.sub(root)?)?;
    }
    Ok(acc)
}

/// `({theta_i}, {theta*_i}, {zeta_i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterArray {
    pub seq: ParameterSequence,
    pub zeta: Vec<FieldElement>,
}

impl ParameterArray {
    pub fn new(seq: ParameterSequence, zeta: Vec<FieldElement>) -> Result<Self> {
        if zeta.len() != seq.d + 1 {
            return Err(Error::DimensionMismatch(format!(
                "zeta has {} entries, expected {}",
                zeta.len(),
                seq.d + 1
            )));
        }
        if let Some(z) = zeta.iter().find(|z| z.ctx() != seq.ctx) {
            return Err(Error::CtxMismatch(seq.ctx, z.ctx()));
        }
        Ok(Self { seq, zeta })
    }

    pub fn from_json(json: &SequenceJson) -> Result<Self> {
        let seq = ParameterSequence::from_json(json)?;
        let zeta = json
            .zeta
            .as_ref()
            .ok_or_else(|| Error::Parse("parameter array needs \"zeta\"".into()))?
            .iter()
            .map(|s| json.field.parse_element(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(seq, zeta)
    }

    pub fn to_json(&self) -> SequenceJson {
        let mut json = self.seq.to_json();
        json.zeta = Some(self.zeta.iter().map(ToString::to_string).collect());
        json
    }
}

/// Per-condition verdicts of the classification criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrayValidation {
    /// condition (i)
    pub distinct: bool,
    /// condition (ii)
    pub ratios_equal: bool,
    pub zeta0_is_one: bool,
    pub zetad_nonzero: bool,
    /// `sum_i eta_{d-i}(theta_0) eta*_{d-i}(theta*_0) zeta_i`
    pub weighted_sum: FieldElement,
    pub weighted_sum_nonzero: bool,
    /// all three conditions hold: a sharp system with this array exists and
    /// is unique up to isomorphism
    pub valid: bool,
}

pub fn validate_parameter_array(arr: &ParameterArray) -> Result<ArrayValidation> {
    let p = &arr.seq;
    let feas = check_feasible(p);
    let d = p.d;
    let mut sum = p.ctx.zero();
    for (i, z) in arr.zeta.iter().enumerate() {
        let eta = tau_eval(TauKind::Eta, d - i, &p.theta[0], p)?;
        let eta_star = tau_eval(TauKind::EtaStar, d - i, &p.theta_star[0], p)?;
        sum = sum.add(&eta.mul(&eta_star)?.mul(z)?)?;
    }
    let distinct = feas.distinct_theta && feas.distinct_theta_star;
    let zeta0_is_one = arr.zeta[0].is_one();
    let zetad_nonzero = !arr.zeta[d].is_zero();
    let weighted_sum_nonzero = !sum.is_zero();
    Ok(ArrayValidation {
        distinct,
        ratios_equal: feas.ratios_equal,
        zeta0_is_one,
        zetad_nonzero,
        weighted_sum: sum,
        weighted_sum_nonzero,
        valid: distinct
            && feas.ratios_equal
            && zeta0_is_one
            && zetad_nonzero
            && weighted_sum_nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldCtx = FieldCtx::Rational;

    fn r(s: &str) -> FieldElement {
        Q.parse_element(s).unwrap()
    }

    fn geo2() -> ParameterSequence {
        ParameterSequence::from_integers(Q, &[1, 2, 4, 8], &[1, 2, 4, 8]).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let rep = check_feasible(&geo2());
        assert!(rep.feasible);
        assert_eq!(rep.beta_plus_one, Some(r("7/2")));

        let rep = check_feasible(
            &ParameterSequence::from_integers(Q, &[5, 5, 1, 2], &[0, 1, 2, 3]).unwrap(),
        );
        assert!(!rep.feasible);
        assert!(!rep.distinct_theta);

        let ap = ParameterSequence::from_integers(Q, &[0, 1, 2, 3, 4], &[0, 1, 2, 3, 4]).unwrap();
        let rep = check_feasible(&ap);
        assert!(rep.feasible);
        assert_eq!(rep.beta_plus_one, Some(r("3")));
    }

    #[test]
    fn ratios_must_agree_across_sequences() {
        let p = ParameterSequence::from_integers(Q, &[1, 2, 4, 8], &[0, 1, 2, 3]).unwrap();
        let rep = check_feasible(&p);
        assert!(rep.distinct_theta && rep.distinct_theta_star);
        assert!(!rep.ratios_equal);
        assert_eq!(rep.beta_plus_one, None);
        // d <= 2: ratio condition is vacuous
        let p = ParameterSequence::from_integers(Q, &[1, 7, 3], &[0, 1, 9]).unwrap();
        assert!(check_feasible(&p).feasible);
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric_sequence(&r("2"), 3).unwrap(), geo2());
        assert!(matches!(
            geometric_sequence(&r("1"), 1),
            Err(Error::RootOfUnity(_))
        ));
        assert!(matches!(
            geometric_sequence(&r("-1"), 2),
            Err(Error::RootOfUnity(_))
        ));
        let gf13 = FieldCtx::prime(13).unwrap();
        let p = geometric_sequence(&gf13.from_integer(3), 2).unwrap();
        let res: Vec<u64> = p.theta().iter().map(|x| x.residue().unwrap()).collect();
        assert_eq!(res, vec![1, 3, 9]);
        assert!(geometric_sequence(&gf13.from_integer(3), 3).is_err());
    }

    #[test]
    fn recurrence_examples() {
        let t = recurrence_sequence(&r("5/2"), &r("1"), &r("2"), &r("4"), 3).unwrap();
        assert_eq!(t[3], r("8"));
        let t = recurrence_sequence(&r("17"), &r("1"), &r("2"), &r("4"), 2).unwrap();
        assert_eq!(t, vec![r("1"), r("2"), r("4")]);
        let t = recurrence_sequence(&r("2"), &r("0"), &r("1"), &r("2"), 3).unwrap();
        assert_eq!(t[3], r("3"));
        assert_eq!(
            recurrence_sequence(&r("2"), &r("0"), &r("1"), &r("2"), 0)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn witness_for_geometric_sequence() {
        // beta = vartheta + 1/vartheta = 5/2 and omega = 5 - 2 beta = 0:
        // a geometric sequence has c = 0 in the closed form
        let w = qracah_witness(&geo2()).unwrap();
        assert_eq!(w.beta, r("5/2"));
        assert_eq!(w.omega, r("0"));
        assert_eq!(w.omega_star, r("0"));
        assert!(!w.is_qracah);
        assert_eq!(w.bc, None);
    }

    #[test]
    fn witness_rejects_arithmetic_progression() {
        let ap = ParameterSequence::from_integers(Q, &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        let w = qracah_witness(&ap).unwrap();
        assert_eq!(w.beta, r("2"));
        assert!(!w.is_qracah);
    }

    #[test]
    fn witness_refuses_small_or_infeasible_input() {
        let p = ParameterSequence::from_integers(Q, &[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(qracah_witness(&p), Err(Error::UnsupportedDiameter(2)));
        let p = ParameterSequence::from_integers(Q, &[0, 0, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert_eq!(qracah_witness(&p), Err(Error::NotFeasible));
    }

    fn args(q: &str, b: &str, c: &str, bs: &str, cs: &str) -> QRacahParams {
        QRacahParams {
            q: r(q),
            alpha: r("0"),
            b: r(b),
            c: r(c),
            alpha_star: r("0"),
            b_star: r(bs),
            c_star: r(cs),
        }
    }

    #[test]
    fn construct_examples() {
        assert_eq!(
            qracah_construct(&args("2", "1", "1", "1", "1"), 3),
            Err(Error::NotDistinct)
        );
        let p = qracah_construct(&args("2", "1", "2", "1", "3"), 3).unwrap();
        assert_eq!(p.theta(), &[r("129/8"), r("9/2"), r("3"), r("33/4")]);
        assert_eq!(
            qracah_construct(&args("1", "1", "2", "1", "3"), 3),
            Err(Error::ConstraintViolated("q^2 != 1"))
        );
        assert_eq!(
            qracah_construct(&args("2", "0", "2", "1", "3"), 3),
            Err(Error::ConstraintViolated("b b* c c* != 0"))
        );
        // q^2 = -1 has a solution in GF(13): 5^2 = 25 = -1
        let gf13 = FieldCtx::prime(13).unwrap();
        let one = gf13.one();
        let a = QRacahParams {
            q: gf13.from_integer(5),
            alpha: gf13.zero(),
            b: one.clone(),
            c: one.clone(),
            alpha_star: gf13.zero(),
            b_star: one.clone(),
            c_star: one,
        };
        assert_eq!(
            qracah_construct(&a, 3),
            Err(Error::ConstraintViolated("q^2 != -1"))
        );
    }

    #[test]
    fn construct_then_witness_recovers_products() {
        let p = qracah_construct(&args("2", "1", "2", "1", "3"), 3).unwrap();
        assert!(check_feasible(&p).feasible);
        let w = qracah_witness(&p).unwrap();
        assert!(w.is_qracah);
        assert_eq!(w.beta, r("17/4"));
        assert_eq!(w.bc, Some(r("2")));
        assert_eq!(w.bstar_cstar, Some(r("3")));
    }

    #[test]
    fn tau_and_eta_values() {
        let p = geo2();
        assert_eq!(tau_eval(TauKind::Tau, 0, &r("123"), &p).unwrap(), r("1"));
        assert_eq!(tau_eval(TauKind::Tau, 2, &r("3"), &p).unwrap(), r("2"));
        assert_eq!(tau_eval(TauKind::Eta, 2, &r("0"), &p).unwrap(), r("32"));
        assert_eq!(tau_eval(TauKind::EtaStar, 1, &r("0"), &p).unwrap(), r("-8"));
        assert_eq!(
            tau_eval(TauKind::TauStar, 4, &r("0"), &p),
            Err(Error::IndexOutOfRange { index: 4, max: 3 })
        );
    }

    #[test]
    fn parameter_array_examples() {
        let p0 = ParameterSequence::from_integers(Q, &[0], &[0]).unwrap();
        let v = validate_parameter_array(&ParameterArray::new(p0, vec![r("1")]).unwrap()).unwrap();
        assert!(v.valid);
        assert_eq!(v.weighted_sum, r("1"));

        let p1 = ParameterSequence::from_integers(Q, &[0, 1], &[0, 1]).unwrap();
        for z in -3..=3 {
            let arr = ParameterArray::new(p1.clone(), vec![r("1"), Q.from_integer(z)]).unwrap();
            let v = validate_parameter_array(&arr).unwrap();
            assert_eq!(v.weighted_sum, Q.from_integer(1 + z));
            assert_eq!(v.valid, z != 0 && z != -1, "zeta_1 = {z}");
        }

        let arr = ParameterArray::new(geo2(), vec![r("2"), r("1"), r("1"), r("1")]).unwrap();
        let v = validate_parameter_array(&arr).unwrap();
        assert!(!v.zeta0_is_one);
        assert!(!v.valid);
    }

    #[test]
    fn json_round_trip_and_digest() {
        let p = geo2();
        let json = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"d":3,"field":{"kind":"rational"},"theta":["1","2","4","8"],"theta_star":["1","2","4","8"]}"#
        );
        let back: SequenceJson = serde_json::from_str(&json).unwrap();
        assert_eq!(ParameterSequence::from_json(&back).unwrap(), p);
        assert_eq!(p.digest(), geo2().digest());
        assert_ne!(p.digest(), geometric_sequence(&r("3"), 3).unwrap().digest());

        let mut bad = back.clone();
        bad.d = 4;
        assert!(ParameterSequence::from_json(&bad).is_err());
    }
}
