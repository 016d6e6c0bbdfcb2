//! Monomials of `F[x_0, ..., x_d]`, their interleaving with `E0` into
//! zigzag words of type `[n]`, the change-of-basis matrix `phi`, and the
//! finite verification report for the isomorphism `mu`.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{rank, SparseMatrix};
use crate::params::{tau_eval, ParameterSequence, TauKind};
use crate::relators::{directness_check, DirectnessCertificate};
use crate::words::{is_bracket_zigzag, Family, Word, WordType};

/// `x_{y_1} x_{y_2} ... x_{y_n}` with `y_1 >= y_2 >= ... >= y_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    /// Sorts the factors into canonical order.
    pub fn new(mut indices: Vec<u8>) -> Self {
        indices.sort_unstable_by(|a, b| b.cmp(a));
        Monomial(indices)
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new([self.0.as_slice(), other.0.as_slice()].concat())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// Degree-`n` monomials in `x_0..x_d`, ascending lexicographic order of the
/// sorted tuples (which is also the order of their images among the words
/// of type `[n]`).
pub fn monomials(n: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fill(n, d as u8, &mut cur, &mut out);
    out
}

fn fill(n: usize, cap: u8, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
    if cur.len() == n {
        out.push(Monomial(cur.clone()));
        return;
    }
    let hi = cur.last().copied().unwrap_or(cap);
    for y in 0..=hi {
        cur.push(y);
        fill(n, cap, cur, out);
        cur.pop();
    }
}

/// `1 -> E0`, `x_{y_1}...x_{y_n} -> E0 e_{y_1} E0 ... E0 e_{y_n} E0`.
pub fn natural_map(m: &Monomial) -> Word {
    let mut idx = Vec::with_capacity(2 * m.degree() + 1);
    idx.push(0);
    for &y in &m.0 {
        idx.push(y);
        idx.push(0);
    }
    Word::new(Family::Starred, idx)
}

/// Reads the monomial back off the even positions of a zigzag `[n]` word.
pub fn natural_inverse(w: &Word) -> Result<Monomial> {
    match is_bracket_zigzag(w) {
        Some(true) => Ok(Monomial(
            w.indices().iter().skip(1).step_by(2).copied().collect(),
        )),
        _ => Err(Error::NotZigzagBracketType),
    }
}

/// The `d x d` matrix with entry `(i, j) = tau_i(theta_j)`, `1 <= i, j <= d`
/// (stored 0-based).
pub fn phi_matrix(p: &ParameterSequence) -> Result<SparseMatrix> {
    p.require_feasible()?;
    let d = p.d();
    if d == 0 {
        return Err(Error::NotApplicable("phi matrix needs d >= 1"));
    }
    let rows = (1..=d)
        .map(|i| {
            (1..=d)
                .map(|j| tau_eval(TauKind::Tau, i, &p.theta()[j], p))
                .collect::<Result<Vec<FieldElement>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SparseMatrix::from_dense(p.ctx(), &rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiCheck {
    pub upper_triangular: bool,
    pub diagonal_nonzero: bool,
    pub rank: usize,
    pub invertible: bool,
}

pub fn check_phi(m: &SparseMatrix) -> PhiCheck {
    let n = m.ncols();
    let upper_triangular = m
        .columns()
        .iter()
        .enumerate()
        .all(|(j, col)| col.entries().iter().all(|(i, _)| *i <= j));
    let diagonal_nonzero = (0..n).all(|i| !m.get(i, i).is_zero());
    let r = rank(m);
    PhiCheck {
        upper_triangular,
        diagonal_nonzero,
        rank: r,
        invertible: m.nrows() == n && r == n,
    }
}

/// Statements linking directness of every `[n]` to the isomorphism `mu`.
pub const EQUIVALENCES: [&str; 3] = [
    "The natural map from F[x_0..x_d] onto E0 T E0 (tilde) is bijective iff every type [n] splits as relators (+) zigzag words.",
    "That map is bijective iff mu : F[x_1..x_d] -> e0* T e0* is bijective.",
    "mu is bijective iff nu is bijective.",
];

pub const LIMITATION: &str = "Finite evidence only: the types [n] were checked for n <= n_max at this one sequence and field; nothing is claimed for larger n.";

pub const VARIABLES_NOTE: &str = "Monomials range over x_0..x_d; the certificates concern the map on all d+1 variables, not the restriction to x_1..x_d.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuCertificate {
    pub n: usize,
    pub certificate: DirectnessCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuReport {
    pub p_digest: String,
    pub n_max: usize,
    pub per_n: Vec<MuCertificate>,
    /// true iff every `[n]` with `n <= n_max` is direct
    pub evidence_up_to_n_max: bool,
    pub variables: &'static str,
    pub equivalences: Vec<&'static str>,
    pub limitation: &'static str,
}

pub fn mu_verification(p: &ParameterSequence, n_max: usize) -> Result<MuReport> {
    p.require_feasible()?;
    let per_n = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            Ok(MuCertificate {
                n,
                certificate: directness_check(&WordType::bracket(n), p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MuReport {
        p_digest: p.digest(),
        n_max,
        evidence_up_to_n_max: per_n.iter().all(|c| c.certificate.direct),
        per_n,
        variables: VARIABLES_NOTE,
        equivalences: EQUIVALENCES.to_vec(),
        limitation: LIMITATION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::params::geometric_sequence;
    use crate::words::enumerate_zigzag;

    const Q: FieldCtx = FieldCtx::Rational;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn monomial_listing() {
        assert_eq!(monomials(0, 3), vec![Monomial::unit()]);
        let m: Vec<Vec<u8>> = monomials(2, 1)
            .iter()
            .map(|m| m.indices().to_vec())
            .collect();
        assert_eq!(m, vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert_eq!(monomials(2, 2).len(), 6);
        assert_eq!(Monomial::new(vec![1, 3, 2]).indices(), &[3, 2, 1]);
    }

    #[test]
    fn natural_map_examples() {
        assert_eq!(natural_map(&Monomial::unit()), w("E0"));
        assert_eq!(natural_map(&Monomial::new(vec![2, 1])), w("E0 e2 E0 e1 E0"));
        assert_eq!(natural_map(&Monomial::new(vec![0, 0])), w("E0 e0 E0 e0 E0"));
        assert_eq!(natural_inverse(&w("E0")), Ok(Monomial::unit()));
        assert_eq!(
            natural_inverse(&w("E0 e2 E0 e1 E0")),
            Ok(Monomial::new(vec![2, 1]))
        );
        assert_eq!(
            natural_inverse(&w("E0 e1 E0 e2 E0")),
            Err(Error::NotZigzagBracketType)
        );
        assert_eq!(natural_inverse(&w("e0")), Err(Error::NotZigzagBracketType));
    }

    #[test]
    fn natural_map_is_a_bijection_onto_zigzags() {
        for d in 0..=3 {
            for n in 0..=4 {
                let images: Vec<Word> = monomials(n, d).iter().map(natural_map).collect();
                assert_eq!(images, enumerate_zigzag(&WordType::bracket(n), d).unwrap());
                for (m, img) in monomials(n, d).iter().zip(&images) {
                    assert_eq!(&natural_inverse(img).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn product_of_images_has_summed_type() {
        let ms = monomials(2, 2);
        for a in &ms {
            for b in &ms {
                let prod = crate::words::word_mul(&natural_map(a), &natural_map(b)).unwrap();
                assert_eq!(prod.word_type(), WordType::bracket(4));
                if a.indices().last() >= b.indices().first() {
                    assert_eq!(prod, natural_map(&a.mul(b)));
                }
            }
        }
    }

    #[test]
    fn phi_example() {
        let p = ParameterSequence::from_integers(Q, &[1, 2, 4], &[0, 1, 3]).unwrap();
        let m = phi_matrix(&p).unwrap();
        assert_eq!(m.get(0, 0), Q.from_integer(1));
        assert_eq!(m.get(0, 1), Q.from_integer(3));
        assert_eq!(m.get(1, 0), Q.zero());
        assert_eq!(m.get(1, 1), Q.from_integer(6));
        let c = check_phi(&m);
        assert!(c.upper_triangular && c.diagonal_nonzero && c.invertible);
        assert_eq!(c.rank, 2);
        let bad = ParameterSequence::from_integers(Q, &[1, 2, 4, 0], &[0, 1, 3, 2]).unwrap();
        assert_eq!(phi_matrix(&bad), Err(Error::NotFeasible));
    }

    #[test]
    fn mu_reports() {
        let r = mu_verification(&geometric_sequence(&Q.from_integer(2), 2).unwrap(), 3).unwrap();
        assert!(r.evidence_up_to_n_max);
        assert_eq!(r.per_n.len(), 4);
        let r = mu_verification(
            &ParameterSequence::from_integers(Q, &[0, 1], &[5, 2]).unwrap(),
            0,
        )
        .unwrap();
        assert_eq!(r.per_n.len(), 1);
        assert!(r.evidence_up_to_n_max);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["evidence_up_to_n_max"], true);
        assert_eq!(v["per_n"][0]["certificate"]["dim"], 1);
    }
}
