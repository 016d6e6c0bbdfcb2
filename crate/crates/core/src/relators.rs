//! The relator ideal of a feasible sequence and its homogeneous pieces.
//!
//! A relator is `u a*^k v` (family C: `u` ends and `v` begins with
//! nonstarred letters) or `u a^k v` (family C*: both starred), with
//! `k < |index(end u) - index(begin v)|`. Relators of one family and split
//! point span the homogeneous component `R_lambda` of the ideal, which is
//! all we ever need: membership and rank questions are answered one type at
//! a time.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::linalg::{in_span, rank, sum_is_direct, SparseMatrix, SparseVector};
use crate::params::ParameterSequence;
use crate::words::{
    enumerate_words, enumerate_zigzag, Family, Generator, TElement, Word, WordType,
};

/// Largest `d` for which the ψ-identity suite runs without an override.
pub const PSI_DEFAULT_MAX_D: usize = 2;

/// Coefficients of `a^k = sum theta_l^k e_l` (or the starred analogue).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct APowerVector {
    pub starred: bool,
    pub k: usize,
    pub coeffs: Vec<FieldElement>,
}

/// `a^k` (or `a*^k`); `k = 0` gives the all-ones vector.
pub fn a_power(p: &ParameterSequence, k: usize, starred: bool) -> APowerVector {
    let coeffs = p
        .sequence(starred)
        .iter()
        .map(|t| t.pow(k as i64).expect("nonnegative power"))
        .collect();
    APowerVector { starred, k, coeffs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelatorFamily {
    /// `u a*^k v`, boundary letters nonstarred
    C,
    /// `u a^k v`, boundary letters starred
    CStar,
}

impl RelatorFamily {
    /// Family of the inserted letters.
    fn inserted(self) -> Family {
        match self {
            RelatorFamily::C => Family::Starred,
            RelatorFamily::CStar => Family::Nonstarred,
        }
    }
}

impl fmt::Display for RelatorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelatorFamily::C => write!(f, "C"),
            RelatorFamily::CStar => write!(f, "C*"),
        }
    }
}

impl Serialize for RelatorFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A triple `(u, v, k)` tagged with its family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RelatorSpec {
    pub family: RelatorFamily,
    pub u: Word,
    pub v: Word,
    pub k: usize,
}

impl RelatorSpec {
    /// Checks the family and `k` constraints and that indices fit `d`.
    pub fn validate(&self, d: usize) -> Result<()> {
        let (Some(end_u), Some(begin_v)) = (self.u.end(), self.v.begin()) else {
            return Err(Error::InconsistentType(
                "relator words must be nontrivial".into(),
            ));
        };
        let boundary = match self.family {
            RelatorFamily::C => Family::Nonstarred,
            RelatorFamily::CStar => Family::Starred,
        };
        if end_u.family != boundary || begin_v.family != boundary {
            return Err(Error::InconsistentType(format!(
                "family {} needs boundary letters of family {boundary:?}, got {end_u} and {begin_v}",
                self.family
            )));
        }
        let gap = (end_u.index as i64 - begin_v.index as i64).unsigned_abs() as usize;
        if self.k >= gap {
            return Err(Error::InconsistentType(format!(
                "k = {} must be below |{} - {}|",
                self.k, end_u.index, begin_v.index
            )));
        }
        let max = self.u.max_index().max(self.v.max_index()).unwrap_or(0) as usize;
        if max > d {
            return Err(Error::DimensionMismatch(format!(
                "index {max} exceeds d = {d}"
            )));
        }
        Ok(())
    }

    /// Type of every word in the expanded relator.
    pub fn lambda(&self) -> WordType {
        WordType::Nontrivial {
            length: self.u.len() + self.v.len() + 1,
            begin: self.u.begin().expect("nontrivial"),
            end: self.v.end().expect("nontrivial"),
        }
    }

    /// `u g_l v` for inserted generator index `l`.
    fn word_with(&self, l: u8) -> Word {
        let mut idx = Vec::with_capacity(self.u.len() + self.v.len() + 1);
        idx.extend_from_slice(self.u.indices());
        idx.push(l);
        idx.extend_from_slice(self.v.indices());
        Word::new(self.u.begin_family(), idx)
    }
}

/// All relator specs whose relator is `lambda`-homogeneous.
pub fn enumerate_relator_specs(lambda: &WordType, d: usize) -> Result<Vec<RelatorSpec>> {
    lambda.validate(d)?;
    let WordType::Nontrivial { length, begin, end } = *lambda else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    if length < 3 {
        return Ok(out);
    }
    for len_u in 1..=length - 2 {
        let len_v = length - 1 - len_u;
        // letters at 0-based positions len_u - 1 and len_u + 1 share a family
        let boundary = if (len_u - 1) % 2 == 0 {
            begin.family
        } else {
            begin.family.other()
        };
        let family = match boundary {
            Family::Nonstarred => RelatorFamily::C,
            Family::Starred => RelatorFamily::CStar,
        };
        let end_choices: Vec<u8> = if len_u == 1 {
            vec![begin.index]
        } else {
            (0..=d as u8).collect()
        };
        let begin_choices: Vec<u8> = if len_v == 1 {
            vec![end.index]
        } else {
            (0..=d as u8).collect()
        };
        for &i in &end_choices {
            let u_type = WordType::Nontrivial {
                length: len_u,
                begin,
                end: Generator {
                    family: boundary,
                    index: i,
                },
            };
            let us = enumerate_words(&u_type, d)?;
            for &j in &begin_choices {
                let gap = (i as i64 - j as i64).unsigned_abs() as usize;
                if gap == 0 {
                    continue;
                }
                let v_type = WordType::Nontrivial {
                    length: len_v,
                    begin: Generator {
                        family: boundary,
                        index: j,
                    },
                    end,
                };
                let vs = enumerate_words(&v_type, d)?;
                for u in &us {
                    for v in &vs {
                        for k in 0..gap {
                            out.push(RelatorSpec {
                                family,
                                u: u.clone(),
                                v: v.clone(),
                                k,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The relator of `spec` as an element of the free algebra.
pub fn expand_relator(spec: &RelatorSpec, p: &ParameterSequence) -> Result<TElement> {
    spec.validate(p.d())?;
    let coeffs = a_power(p, spec.k, spec.family.inserted() == Family::Starred);
    TElement::from_terms(
        p.ctx(),
        p.d(),
        coeffs
            .coeffs
            .into_iter()
            .enumerate()
            .map(|(l, c)| (spec.word_with(l as u8), c)),
    )
}

/// Column of the relator in the word basis of its type.
fn relator_column(
    spec: &RelatorSpec,
    lambda: &WordType,
    powers: &[FieldElement],
    d: usize,
) -> Result<SparseVector> {
    SparseVector::from_pairs(
        powers
            .iter()
            .enumerate()
            .map(|(l, c)| (lambda.position_of(&spec.word_with(l as u8), d), c.clone())),
    )
}

/// Coefficient matrix of the `lambda`-homogeneous relators: rows follow
/// [`enumerate_words`], one column per spec from [`enumerate_relator_specs`].
pub fn relator_matrix(lambda: &WordType, p: &ParameterSequence) -> Result<SparseMatrix> {
    p.require_feasible()?;
    relator_matrix_unchecked(lambda, p)
}

fn relator_matrix_unchecked(lambda: &WordType, p: &ParameterSequence) -> Result<SparseMatrix> {
    let d = p.d();
    let specs = enumerate_relator_specs(lambda, d)?;
    let mut m = SparseMatrix::new(lambda.dimension(d), p.ctx());
    // a^k and a*^k tables indexed by k
    let max_k = d.max(1);
    let powers: BTreeMap<(bool, usize), Vec<FieldElement>> = [false, true]
        .into_iter()
        .flat_map(|s| (0..max_k).map(move |k| (s, k)))
        .map(|(s, k)| ((s, k), a_power(p, k, s).coeffs))
        .collect();
    for spec in &specs {
        let starred = spec.family.inserted() == Family::Starred;
        m.push_column(relator_column(
            spec,
            lambda,
            &powers[&(starred, spec.k)],
            d,
        )?)?;
    }
    Ok(m)
}

/// Indicator columns of the zigzag words of `lambda`.
pub fn zigzag_matrix(lambda: &WordType, d: usize, ctx: FieldCtx) -> Result<SparseMatrix> {
    let cols = enumerate_zigzag(lambda, d)?
        .iter()
        .map(|w| SparseVector::unit(lambda.position_of(w, d), ctx))
        .collect();
    SparseMatrix::from_columns(lambda.dimension(d), ctx, cols)
}

/// JSON form of a type: `{"n": n}` for `[n]`, otherwise explicit fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaJson(pub WordType);

impl Serialize for LambdaJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        if let Some(n) = self.0.as_bracket() {
            map.serialize_entry("n", &n)?;
        } else {
            match self.0 {
                WordType::Trivial => map.serialize_entry("length", &0)?,
                WordType::Nontrivial { length, begin, end } => {
                    map.serialize_entry("length", &length)?;
                    map.serialize_entry("begin", &begin.to_string())?;
                    map.serialize_entry("end", &end.to_string())?;
                }
            }
        }
        map.end()
    }
}

/// Rank-based verdict on whether `T_lambda = R_lambda (+) Z_lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectnessCertificate {
    pub lambda: LambdaJson,
    pub d: usize,
    pub field: FieldCtx,
    /// `dim T_lambda`
    pub dim: usize,
    /// `dim Z_lambda`
    pub zigzag: usize,
    pub relators: usize,
    /// `dim R_lambda`
    pub rank: usize,
    /// `rank >= dim - zigzag`; a `false` here contradicts `T = R + Z`
    pub lower_bound_holds: bool,
    pub direct: bool,
    pub p_digest: String,
}

impl DirectnessCertificate {
    pub fn word_type(&self) -> WordType {
        self.lambda.0
    }
}

/// Certifies (or refutes) that `lambda` is direct for `p`.
pub fn directness_check(lambda: &WordType, p: &ParameterSequence) -> Result<DirectnessCertificate> {
    p.require_feasible()?;
    let d = p.d();
    let m = relator_matrix_unchecked(lambda, p)?;
    let dim = lambda.dimension(d);
    let zigzag = enumerate_zigzag(lambda, d)?.len();
    let r = rank(&m);
    let lower_bound_holds = r + zigzag >= dim;
    Ok(DirectnessCertificate {
        lambda: LambdaJson(*lambda),
        d,
        field: p.ctx(),
        dim,
        zigzag,
        relators: m.ncols(),
        rank: r,
        lower_bound_holds,
        direct: r + zigzag == dim,
        p_digest: p.digest(),
    })
}

/// Second formulation of directness: relator and zigzag spans intersect
/// trivially.
pub fn directness_via_direct_sum(lambda: &WordType, p: &ParameterSequence) -> Result<bool> {
    p.require_feasible()?;
    let m = relator_matrix_unchecked(lambda, p)?;
    let z = zigzag_matrix(lambda, p.d(), p.ctx())?;
    sum_is_direct(&m, &z)
}

/// Membership of `x` in the relator ideal, tested one component at a time.
pub fn in_r(x: &TElement, p: &ParameterSequence) -> Result<bool> {
    p.require_feasible()?;
    if x.ctx() != p.ctx() {
        return Err(Error::CtxMismatch(p.ctx(), x.ctx()));
    }
    if x.d() != p.d() {
        return Err(Error::DimensionMismatch(format!(
            "element has d = {}, sequence d = {}",
            x.d(),
            p.d()
        )));
    }
    for (lambda, part) in x.components() {
        if !component_in_r(&lambda, &part, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn component_in_r(lambda: &WordType, part: &TElement, p: &ParameterSequence) -> Result<bool> {
    if part.is_zero() {
        return Ok(true);
    }
    if lambda.length() < 3 {
        return Ok(false);
    }
    let d = p.d();
    let m = relator_matrix_unchecked(lambda, p)?;
    let v = SparseVector::from_pairs(
        part.terms()
            .iter()
            .map(|(w, c)| (lambda.position_of(w, d), c.clone())),
    )?;
    Ok(in_span(&m, &v)?.0)
}

/// One lifted identity and whether it holds modulo the relator ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub in_r: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub d: usize,
    pub field: FieldCtx,
    pub p_digest: String,
    pub checks: Vec<IdentityCheck>,
    pub all_hold: bool,
}

/// Lifts `Delta = 1 - sum e_i`, `Delta* = 1 - sum E_i` and
/// `psi = (Delta - Delta*)^2` to the free algebra and checks each identity
/// `lhs = rhs` by testing `lhs - rhs` for membership in the relator ideal.
///
/// Refuses `d > PSI_DEFAULT_MAX_D` unless `allow_large` is set.
pub fn verify_psi_identities(p: &ParameterSequence, allow_large: bool) -> Result<PsiReport> {
    p.require_feasible()?;
    let (ctx, d) = (p.ctx(), p.d());
    if d > PSI_DEFAULT_MAX_D && !allow_large {
        return Err(Error::LimitExceeded(format!(
            "psi identities default to d <= {PSI_DEFAULT_MAX_D}; got d = {d}"
        )));
    }
    let one = TElement::one(ctx, d);
    let delta = one.sub(&TElement::family_sum(ctx, d, Family::Nonstarred))?;
    let delta_star = one.sub(&TElement::family_sum(ctx, d, Family::Starred))?;
    let diff = delta.sub(&delta_star)?;
    let psi = diff.mul(&diff)?;
    let e = |i: usize| TElement::generator(ctx, d, Generator::nonstarred(i as u8));
    let es = |i: usize| TElement::generator(ctx, d, Generator::starred(i as u8));

    let mut pending: Vec<(String, TElement)> = vec![
        ("Delta^2 = Delta".into(), delta.mul(&delta)?.sub(&delta)?),
        (
            "Delta*^2 = Delta*".into(),
            delta_star.mul(&delta_star)?.sub(&delta_star)?,
        ),
        (
            "psi = Delta + Delta* - Delta Delta* - Delta* Delta".into(),
            psi.sub(
                &delta
                    .add(&delta_star)?
                    .sub(&delta.mul(&delta_star)?)?
                    .sub(&delta_star.mul(&delta)?)?,
            )?,
        ),
    ];
    for i in 0..=d {
        pending.push((format!("e{i} Delta = 0"), e(i).mul(&delta)?));
        pending.push((format!("Delta e{i} = 0"), delta.mul(&e(i))?));
        pending.push((format!("E{i} Delta* = 0"), es(i).mul(&delta_star)?));
        pending.push((format!("Delta* E{i} = 0"), delta_star.mul(&es(i))?));
    }
    for i in 0..=d {
        for j in 0..=d {
            let (lhs, rhs) = (e(i).mul(&delta_star)?.mul(&e(j))?, psi.mul(&e(i))?);
            let (lhs_s, rhs_s) = (es(i).mul(&delta)?.mul(&es(j))?, psi.mul(&es(i))?);
            if i == j {
                pending.push((format!("e{i} Delta* e{i} = psi e{i}"), lhs.sub(&rhs)?));
                pending.push((format!("E{i} Delta E{i} = psi E{i}"), lhs_s.sub(&rhs_s)?));
            } else {
                pending.push((format!("e{i} Delta* e{j} = 0"), lhs));
                pending.push((format!("E{i} Delta E{j} = 0"), lhs_s));
            }
        }
    }
    for i in 0..=d {
        pending.push((
            format!("e{i} psi = psi e{i}"),
            e(i).mul(&psi)?.sub(&psi.mul(&e(i))?)?,
        ));
        pending.push((
            format!("E{i} psi = psi E{i}"),
            es(i).mul(&psi)?.sub(&psi.mul(&es(i))?)?,
        ));
    }

    let checks = pending
        .into_iter()
        .map(|(identity, x)| {
            Ok(IdentityCheck {
                identity,
                in_r: in_r(&x, p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PsiReport {
        d,
        field: ctx,
        p_digest: p.digest(),
        all_hold: checks.iter().all(|c| c.in_r),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::geometric_sequence;

    const Q: FieldCtx = FieldCtx::Rational;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn geo(d: usize) -> ParameterSequence {
        geometric_sequence(&Q.from_integer(2), d).unwrap()
    }

    #[test]
    fn a_power_examples() {
        let p = geo(3);
        assert_eq!(a_power(&p, 0, false).coeffs, vec![Q.one(); 4]);
        let sq: Vec<_> = [1, 4, 16, 64].iter().map(|&x| Q.from_integer(x)).collect();
        assert_eq!(a_power(&p, 2, false).coeffs, sq);
        assert_eq!(a_power(&p, 1, true).coeffs, p.theta_star());
    }

    #[test]
    fn no_relators_for_bracket_one() {
        for d in 0..=3 {
            assert!(enumerate_relator_specs(&WordType::bracket(1), d)
                .unwrap()
                .is_empty());
        }
        assert!(enumerate_relator_specs(&WordType::bracket(0), 2)
            .unwrap()
            .is_empty());
        assert!(enumerate_relator_specs(&WordType::Trivial, 2)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn bracket_two_specs() {
        let specs = enumerate_relator_specs(&WordType::bracket(2), 2).unwrap();
        for k in 0..2 {
            assert!(specs.contains(&RelatorSpec {
                family: RelatorFamily::C,
                u: w("E0 e2"),
                v: w("e0 E0"),
                k
            }));
        }
        let specs = enumerate_relator_specs(&WordType::bracket(2), 1).unwrap();
        assert_eq!(specs.len(), 6);
        for s in &specs {
            let (i, j) = (s.u.end().unwrap().index, s.v.begin().unwrap().index);
            assert_eq!((i as i64 - j as i64).abs(), 1);
            assert_eq!(s.k, 0);
            s.validate(1).unwrap();
        }
    }

    #[test]
    fn expansion_examples() {
        let p = ParameterSequence::from_integers(Q, &[0, 1], &[3, 5]).unwrap();
        let spec = RelatorSpec {
            family: RelatorFamily::C,
            u: w("E0 e1"),
            v: w("e0 E0"),
            k: 0,
        };
        let x = expand_relator(&spec, &p).unwrap();
        let expected = TElement::from_terms(
            Q,
            1,
            [
                (w("E0 e1 E0 e0 E0"), Q.one()),
                (w("E0 e1 E1 e0 E0"), Q.one()),
            ],
        )
        .unwrap();
        assert_eq!(x, expected);

        let p = ParameterSequence::from_integers(Q, &[0, 1, 2], &[3, 5, 11]).unwrap();
        let spec = RelatorSpec {
            family: RelatorFamily::C,
            u: w("E0 e2"),
            v: w("e0 E0"),
            k: 1,
        };
        let x = expand_relator(&spec, &p).unwrap();
        assert_eq!(x.terms().len(), 3);
        for l in 0..3u8 {
            let word = Word::new(Family::Starred, vec![0, 2, l, 0, 0]);
            assert_eq!(x.coefficient(&word), p.theta_star()[l as usize]);
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let p = geo(2);
        let bad_k = RelatorSpec {
            family: RelatorFamily::C,
            u: w("E0 e1"),
            v: w("e0 E0"),
            k: 1,
        };
        assert!(expand_relator(&bad_k, &p).is_err());
        let bad_family = RelatorSpec {
            family: RelatorFamily::CStar,
            u: w("E0 e1"),
            v: w("e0 E0"),
            k: 0,
        };
        assert!(expand_relator(&bad_family, &p).is_err());
        let too_big = RelatorSpec {
            family: RelatorFamily::C,
            u: w("E0 e3"),
            v: w("e0 E0"),
            k: 0,
        };
        assert!(matches!(
            expand_relator(&too_big, &p),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn relator_matrix_shapes() {
        let p = geo(3);
        assert_eq!(
            relator_matrix(&WordType::bracket(1), &p).unwrap().ncols(),
            0
        );
        let p1 = ParameterSequence::from_integers(Q, &[1, 2], &[3, 4]).unwrap();
        let m = relator_matrix(&WordType::bracket(2), &p1).unwrap();
        assert_eq!(m.nrows(), 8);
        assert!(m.columns().iter().all(|c| c.nnz() == 2));
        assert!(m
            .columns()
            .iter()
            .flat_map(|c| c.entries())
            .all(|(_, x)| x.is_one()));
        let bad = ParameterSequence::from_integers(Q, &[1, 1], &[3, 4]).unwrap();
        assert_eq!(
            relator_matrix(&WordType::bracket(2), &bad),
            Err(Error::NotFeasible)
        );
    }

    #[test]
    fn expanded_relators_are_homogeneous() {
        let p = geo(2);
        for lambda in WordType::all_up_to(5, 2) {
            for spec in enumerate_relator_specs(&lambda, 2).unwrap() {
                let x = expand_relator(&spec, &p).unwrap();
                assert_eq!(x.homogeneous_type(), Some(lambda));
                assert_eq!(spec.lambda(), lambda);
            }
        }
    }

    #[test]
    fn directness_small_cases() {
        let c = directness_check(&WordType::bracket(0), &geo(3)).unwrap();
        assert_eq!((c.dim, c.zigzag, c.rank, c.direct), (1, 1, 0, true));
        let p1 = ParameterSequence::from_integers(Q, &[1, 2], &[3, 4]).unwrap();
        let c = directness_check(&WordType::bracket(1), &p1).unwrap();
        assert_eq!((c.dim, c.zigzag, c.rank, c.direct), (2, 2, 0, true));
        let c = directness_check(&WordType::bracket(2), &p1).unwrap();
        assert_eq!((c.dim, c.zigzag, c.rank, c.direct), (8, 3, 5, true));
        let c = directness_check(&WordType::bracket(2), &geo(2)).unwrap();
        assert_eq!((c.dim, c.zigzag, c.rank, c.direct), (27, 6, 21, true));
        assert!(c.lower_bound_holds);
        assert!(directness_via_direct_sum(&WordType::bracket(2), &geo(2)).unwrap());
    }

    #[test]
    fn certificate_json_shape() {
        let c = directness_check(&WordType::bracket(2), &geo(2)).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["lambda"], serde_json::json!({"n": 2}));
        assert_eq!(v["dim"], 27);
        assert_eq!(v["zigzag"], 6);
        assert_eq!(v["rank"], 21);
        assert_eq!(v["direct"], true);
        assert_eq!(v["field"], serde_json::json!({"kind": "rational"}));
        assert_eq!(v["p_digest"], geo(2).digest());
    }

    #[test]
    fn membership_examples() {
        let p = ParameterSequence::from_integers(Q, &[1, 2], &[3, 4]).unwrap();
        assert!(in_r(&TElement::zero(Q, 1), &p).unwrap());
        for spec in enumerate_relator_specs(&WordType::bracket(2), 1).unwrap() {
            assert!(in_r(&expand_relator(&spec, &p).unwrap(), &p).unwrap());
        }
        for word in enumerate_words(&WordType::bracket(2), 1).unwrap() {
            assert!(!in_r(&TElement::from_word(Q, 1, word), &p).unwrap());
        }
        assert!(!in_r(&TElement::one(Q, 1), &p).unwrap());
    }

    #[test]
    fn psi_identities_for_small_d() {
        for d in 1..=2 {
            let rep = verify_psi_identities(&geo(d), false).unwrap();
            assert!(
                rep.all_hold,
                "{:?}",
                rep.checks.iter().filter(|c| !c.in_r).collect::<Vec<_>>()
            );
            assert_eq!(
                rep.checks.len(),
                3 + 4 * (d + 1) + 2 * (d + 1) * (d + 1) + 2 * (d + 1)
            );
        }
        assert!(matches!(
            verify_psi_identities(&geo(3), false),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn off_diagonal_delta_is_minus_a_relator() {
        let p = geo(2);
        let one = TElement::one(Q, 2);
        let delta = one
            .sub(&TElement::family_sum(Q, 2, Family::Nonstarred))
            .unwrap();
        let lhs = TElement::generator(Q, 2, Generator::starred(0))
            .mul(&delta)
            .unwrap()
            .mul(&TElement::generator(Q, 2, Generator::starred(2)))
            .unwrap();
        let rel = expand_relator(
            &RelatorSpec {
                family: RelatorFamily::CStar,
                u: w("E0"),
                v: w("E2"),
                k: 0,
            },
            &p,
        )
        .unwrap();
        assert!(lhs.add(&rel).unwrap().is_zero());
    }
}
