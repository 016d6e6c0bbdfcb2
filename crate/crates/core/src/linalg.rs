//! Exact sparse matrices: rank, span membership and direct-sum tests.
//!
//! Matrices are stored column-major because relators arrive as columns over
//! a fixed word-basis row indexing. Rank over GF(p) uses plain elimination
//! with normalized pivots; over the rationals every column is scaled to a
//! primitive integer vector and eliminated fraction-free, so no rational
//! arithmetic happens inside the elimination loop.
//!
//! Columns are processed in order of increasing support size (ties by
//! column index) and each reduced column pivots on its lowest nonzero row,
//! which makes every result deterministic.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, sub_mod, FieldCtx, FieldElement};

/// Sparse vector: strictly increasing indices, nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVector {
    entries: Vec<(usize, FieldElement)>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing repeats
    /// and dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, FieldElement)>) -> Result<Self> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, FieldElement)> = Vec::with_capacity(pairs.len());
        for (i, x) in pairs {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y = y.add(&x)?,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|(_, x)| !x.is_zero());
        Ok(Self { entries })
    }

    /// The `i`-th standard basis vector of `ctx`.
    pub fn unit(i: usize, ctx: FieldCtx) -> Self {
        Self {
            entries: vec![(i, ctx.one())],
        }
    }

    pub fn entries(&self) -> &[(usize, FieldElement)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&FieldElement> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self + factor * other`.
    pub fn axpy(&self, factor: &FieldElement, other: &SparseVector) -> Result<SparseVector> {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) if i == j => {
                    let s = x.add(&factor.mul(y)?)?;
                    if !s.is_zero() {
                        out.push((*i, s));
                    }
                    a.next();
                    b.next();
                }
                (Some((i, x)), Some((j, _))) if i < j => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (_, Some((j, y))) => {
                    let s = factor.mul(y)?;
                    if !s.is_zero() {
                        out.push((*j, s));
                    }
                    b.next();
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, None) => break,
            }
        }
        Ok(SparseVector { entries: out })
    }

    pub fn scale(&self, factor: &FieldElement) -> Result<SparseVector> {
        SparseVector::from_pairs(
            self.entries
                .iter()
                .map(|(i, x)| Ok((*i, x.mul(factor)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

/// Column-major sparse matrix over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ctx: FieldCtx,
    cols: Vec<SparseVector>,
}

impl SparseMatrix {
    /// An `nrows x 0` matrix; grow it with [`SparseMatrix::push_column`].
    pub fn new(nrows: usize, ctx: FieldCtx) -> Self {
        Self {
            nrows,
            ctx,
            cols: Vec::new(),
        }
    }

    pub fn zeros(nrows: usize, ncols: usize, ctx: FieldCtx) -> Self {
        Self {
            nrows,
            ctx,
            cols: vec![SparseVector::new(); ncols],
        }
    }

    pub fn identity(n: usize, ctx: FieldCtx) -> Self {
        Self {
            nrows: n,
            ctx,
            cols: (0..n).map(|i| SparseVector::unit(i, ctx)).collect(),
        }
    }

    pub fn from_columns(nrows: usize, ctx: FieldCtx, cols: Vec<SparseVector>) -> Result<Self> {
        let mut m = Self::new(nrows, ctx);
        for c in cols {
            m.push_column(c)?;
        }
        Ok(m)
    }

    /// Row-major dense input; every row must have the same length.
    pub fn from_dense(ctx: FieldCtx, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged dense matrix".into()));
        }
        let cols = (0..ncols)
            .map(|c| SparseVector::from_pairs((0..nrows).map(|r| (r, rows[r][c].clone()))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(nrows, ctx, cols)
    }

    pub fn push_column(&mut self, col: SparseVector) -> Result<()> {
        if let Some(i) = col.max_index() {
            if i >= self.nrows {
                return Err(Error::DimensionMismatch(format!(
                    "row index {i} in a matrix with {} rows",
                    self.nrows
                )));
            }
        }
        for (_, x) in col.entries() {
            if x.ctx() != self.ctx {
                return Err(Error::CtxMismatch(self.ctx, x.ctx()));
            }
        }
        self.cols.push(col);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.cols
    }

    pub fn column(&self, c: usize) -> &SparseVector {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVector::nnz).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.cols[c]
            .get(r)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col.entries() {
                rows[*r].push((c, x.clone()));
            }
        }
        SparseMatrix {
            nrows: self.cols.len(),
            ctx: self.ctx,
            cols: rows
                .into_iter()
                .map(|entries| SparseVector { entries })
                .collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_compatible(other)?;
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(SparseMatrix {
            nrows: self.nrows,
            ctx: self.ctx,
            cols,
        })
    }

    /// `self * x` for a coefficient vector indexed by column.
    pub fn mul_vector(&self, x: &SparseVector) -> Result<SparseVector> {
        let mut acc = SparseVector::new();
        for (c, coeff) in x.entries() {
            let col = self
                .cols
                .get(*c)
                .ok_or_else(|| Error::DimensionMismatch(format!("column {c} out of range")))?;
            acc = acc.axpy(coeff, col)?;
        }
        Ok(acc)
    }

    fn check_compatible(&self, other: &SparseMatrix) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch(self.ctx, other.ctx));
        }
        if self.nrows != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "{} rows vs {} rows",
                self.nrows, other.nrows
            )));
        }
        Ok(())
    }

    /// Text dump: header `rows cols ctx`, then `r c value` sorted by `(c, r)`.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.nrows, self.ncols(), self.ctx.label());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col.entries() {
                let _ = writeln!(out, "{r} {c} {x}");
            }
        }
        out
    }

    /// Inverse of [`SparseMatrix::dump`].
    pub fn parse_dump(text: &str) -> Result<SparseMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let parse_usize = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        };
        let (nrows, ncols) = (parse_usize(h[0])?, parse_usize(h[1])?);
        let ctx: FieldCtx = h[2].parse()?;
        let mut cols: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); ncols];
        for line in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(Error::Parse(format!("bad entry line {line:?}")));
            }
            let (r, c) = (parse_usize(t[0])?, parse_usize(t[1])?);
            if c >= ncols {
                return Err(Error::DimensionMismatch(format!("column {c} >= {ncols}")));
            }
            cols[c].push((r, ctx.parse_element(t[2])?));
        }
        let cols = cols
            .into_iter()
            .map(SparseVector::from_pairs)
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::from_columns(nrows, ctx, cols)
    }
}

/// Rank of `m` over its field; exact.
pub fn rank(m: &SparseMatrix) -> usize {
    let order = elimination_order(m);
    match m.ctx {
        FieldCtx::Prime { p } => rank_mod_p(m, &order, p),
        FieldCtx::Rational => rank_integer(m, &order),
    }
}

/// Whether `v` lies in the column span of `m`; when it does, also returns
/// coefficients `c` with `m * c = v`.
pub fn in_span(m: &SparseMatrix, v: &SparseVector) -> Result<(bool, Option<SparseVector>)> {
    for (_, x) in v.entries() {
        if x.ctx() != m.ctx {
            return Err(Error::CtxMismatch(m.ctx, x.ctx()));
        }
    }
    if let Some(i) = v.max_index() {
        if i >= m.nrows {
            return Err(Error::DimensionMismatch(format!(
                "vector index {i} in a space of dimension {}",
                m.nrows
            )));
        }
    }
    let basis = TrackedBasis::build(m)?;
    Ok(match basis.solve(v)? {
        Some(c) => (true, Some(c)),
        None => (false, None),
    })
}

/// True iff the column spans of `a` and `b` intersect trivially.
pub fn sum_is_direct(a: &SparseMatrix, b: &SparseMatrix) -> Result<bool> {
    let joined = a.hstack(b)?;
    Ok(rank(&joined) == rank(a) + rank(b))
}

fn elimination_order(m: &SparseMatrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.ncols()).collect();
    order.sort_by_key(|&c| (m.cols[c].nnz(), c));
    order
}

/// Echelon basis over GF(p) keyed by pivot row; pivots normalized to 1.
fn rank_mod_p(m: &SparseMatrix, order: &[usize], p: u64) -> usize {
    let n = m.nrows;
    let mut pivots: Vec<Option<Vec<(u32, u64)>>> = vec![None; n];
    let mut acc = vec![0u64; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut rank = 0;
    for &c in order {
        let col = &m.cols[c];
        if col.is_zero() {
            continue;
        }
        touched.clear();
        let mut lo = usize::MAX;
        for (r, x) in col.entries() {
            acc[*r] = x.residue().expect("prime element");
            touched.push(*r);
            lo = lo.min(*r);
        }
        let mut hi = col.max_index().unwrap_or(0);
        let mut r = lo;
        let mut new_pivot = None;
        while r <= hi {
            let f = acc[r];
            if f == 0 {
                r += 1;
                continue;
            }
            match &pivots[r] {
                Some(b) => {
                    for &(i, y) in b {
                        let i = i as usize;
                        if acc[i] == 0 {
                            touched.push(i);
                        }
                        acc[i] = sub_mod(acc[i], mul_mod(f, y, p), p);
                        hi = hi.max(i);
                    }
                    debug_assert_eq!(acc[r], 0);
                    r += 1;
                }
                None => {
                    new_pivot = Some(r);
                    break;
                }
            }
        }
        if let Some(r0) = new_pivot {
            let inv = inv_mod(acc[r0], p);
            let mut rows: Vec<usize> = touched
                .iter()
                .copied()
                .filter(|&i| i >= r0 && acc[i] != 0)
                .collect();
            rows.sort_unstable();
            rows.dedup();
            let vec: Vec<(u32, u64)> = rows
                .iter()
                .map(|&i| (i as u32, mul_mod(acc[i], inv, p)))
                .collect();
            pivots[r0] = Some(vec);
            rank += 1;
        }
        for &i in &touched {
            acc[i] = 0;
        }
    }
    rank
}

type IntVec = Vec<(u32, BigInt)>;

/// Clears denominators and content so the column becomes a primitive
/// integer vector with positive leading entry.
fn primitive_integer_column(col: &SparseVector) -> IntVec {
    let mut lcm = BigInt::one();
    for (_, x) in col.entries() {
        let q = x.as_rational().expect("rational element");
        lcm = lcm.lcm(q.denom());
    }
    let v: IntVec = col
        .entries()
        .iter()
        .map(|(r, x)| {
            let q = x.as_rational().expect("rational element");
            (*r as u32, q.numer() * (&lcm / q.denom()))
        })
        .collect();
    make_primitive(v)
}

fn make_primitive(mut v: IntVec) -> IntVec {
    let mut g = BigInt::zero();
    for (_, x) in &v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if v.first().is_some_and(|(_, x)| x.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, x) in &mut v {
            *x = &*x / &g;
        }
    }
    v
}

/// `a * v - c * b` where `b` has its leading entry at the row being eliminated.
fn fraction_free_combine(v: &IntVec, a: &BigInt, b: &IntVec, c: &BigInt) -> IntVec {
    let mut out = Vec::with_capacity(v.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < b.len() {
        let ri = v.get(i).map_or(u32::MAX, |e| e.0);
        let rj = b.get(j).map_or(u32::MAX, |e| e.0);
        if ri == rj {
            let s = a * &v[i].1 - c * &b[j].1;
            if !s.is_zero() {
                out.push((ri, s));
            }
            i += 1;
            j += 1;
        } else if ri < rj {
            out.push((ri, a * &v[i].1));
            i += 1;
        } else {
            out.push((rj, -(c * &b[j].1)));
            j += 1;
        }
    }
    out
}

/// Fraction-free elimination on primitive integer columns.
fn rank_integer(m: &SparseMatrix, order: &[usize]) -> usize {
    let mut pivots: Vec<Option<IntVec>> = vec![None; m.nrows];
    let mut rank = 0;
    for &c in order {
        let mut v = primitive_integer_column(&m.cols[c]);
        while let Some((r, lead)) = v.first().map(|(r, x)| (*r as usize, x.clone())) {
            match &pivots[r] {
                Some(b) => {
                    let piv = &b[0].1;
                    let g = piv.gcd(&lead);
                    let (a, cc) = (piv / &g, &lead / &g);
                    v = make_primitive(fraction_free_combine(&v, &a, b, &cc));
                }
                None => {
                    pivots[r] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Echelon basis over an arbitrary field that remembers how each basis
/// vector was built from the original columns.
struct TrackedBasis {
    // pivot row -> (vector with leading 1, combination of original columns)
    pivots: std::collections::BTreeMap<usize, (SparseVector, SparseVector)>,
}

impl TrackedBasis {
    fn build(m: &SparseMatrix) -> Result<Self> {
        let mut basis = TrackedBasis {
            pivots: Default::default(),
        };
        for c in elimination_order(m) {
            let (w, combo) = basis.reduce(m.cols[c].clone(), SparseVector::unit(c, m.ctx))?;
            if let Some((r, lead)) = w.entries().first().cloned() {
                let inv = lead.inv()?;
                basis.pivots.insert(r, (w.scale(&inv)?, combo.scale(&inv)?));
            }
        }
        Ok(basis)
    }

    /// Eliminates leading entries of `w` while they hit existing pivots.
    /// Keeps `w = M * combo` invariant.
    fn reduce(
        &self,
        mut w: SparseVector,
        mut combo: SparseVector,
    ) -> Result<(SparseVector, SparseVector)> {
        while let Some((r, lead)) = w.entries().first().cloned() {
            let Some((b, bc)) = self.pivots.get(&r) else {
                break;
            };
            let f = lead.neg();
            w = w.axpy(&f, b)?;
            combo = combo.axpy(&f, bc)?;
        }
        Ok((w, combo))
    }

    /// Coefficients `c` with `M * c = v`, if any.
    fn solve(&self, v: &SparseVector) -> Result<Option<SparseVector>> {
        // invariant: v = w + M * combo
        let mut w = v.clone();
        let mut combo = SparseVector::new();
        while let Some((r, lead)) = w.entries().first().cloned() {
            let Some((b, bc)) = self.pivots.get(&r) else {
                return Ok(None);
            };
            w = w.axpy(&lead.neg(), b)?;
            combo = combo.axpy(&lead, bc)?;
        }
        Ok(Some(combo))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldCtx {
        FieldCtx::Rational
    }

    fn vecq(pairs: &[(usize, i64)]) -> SparseVector {
        SparseVector::from_pairs(pairs.iter().map(|&(i, x)| (i, q().from_integer(x)))).unwrap()
    }

    #[test]
    fn rank_of_trivial_matrices() {
        assert_eq!(rank(&SparseMatrix::zeros(3, 2, q())), 0);
        assert_eq!(rank(&SparseMatrix::identity(4, q())), 4);
        let gf = FieldCtx::prime(1_000_003).unwrap();
        assert_eq!(rank(&SparseMatrix::identity(4, gf)), 4);
    }

    #[test]
    fn span_membership_examples() {
        let m = SparseMatrix::from_columns(3, q(), vec![vecq(&[(0, 1)])]).unwrap();
        let (ok, c) = in_span(&m, &SparseVector::new()).unwrap();
        assert!(ok);
        assert!(c.unwrap().is_zero());
        assert_eq!(in_span(&m, &vecq(&[(1, 1)])).unwrap(), (false, None));

        let m = SparseMatrix::from_columns(2, q(), vec![vecq(&[(0, 1), (1, 1)]), vecq(&[(1, 1)])])
            .unwrap();
        let (ok, c) = in_span(&m, &vecq(&[(0, 1)])).unwrap();
        assert!(ok);
        assert_eq!(c.unwrap(), vecq(&[(0, 1), (1, -1)]));
    }

    #[test]
    fn span_membership_checks_field() {
        let m = SparseMatrix::identity(2, q());
        let gf = FieldCtx::prime(7).unwrap();
        assert!(matches!(
            in_span(&m, &SparseVector::unit(0, gf)),
            Err(Error::CtxMismatch(..))
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let e1 = || vecq(&[(0, 1)]);
        let e2 = || vecq(&[(1, 1)]);
        let mat = |cols: Vec<SparseVector>| SparseMatrix::from_columns(2, q(), cols).unwrap();
        assert!(sum_is_direct(&mat(vec![e1()]), &mat(vec![e2()])).unwrap());
        assert!(!sum_is_direct(&mat(vec![e1()]), &mat(vec![e1()])).unwrap());
        let a = mat(vec![vecq(&[(0, 1), (1, 1)])]);
        let b = mat(vec![e2(), vecq(&[(0, 1), (1, -1)])]);
        assert_eq!(rank(&a.hstack(&b).unwrap()), 2);
        assert!(!sum_is_direct(&a, &b).unwrap());
    }

    #[test]
    fn rejects_out_of_range_rows() {
        let mut m = SparseMatrix::new(2, q());
        assert!(matches!(
            m.push_column(vecq(&[(2, 1)])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn rational_rank_with_fractions() {
        let h = |a: i64, b: i64| q().from_ratio(a, b).unwrap();
        // Hilbert 3x3 is nonsingular, rank 3; a duplicated scaled row drops it.
        let hilbert: Vec<Vec<FieldElement>> = (1..=3)
            .map(|i| (1..=3).map(|j| h(1, i + j - 1)).collect())
            .collect();
        assert_eq!(rank(&SparseMatrix::from_dense(q(), &hilbert).unwrap()), 3);
        let mut sing = hilbert.clone();
        sing[2] = sing[0].iter().map(|x| x.mul(&h(-7, 3)).unwrap()).collect();
        assert_eq!(rank(&SparseMatrix::from_dense(q(), &sing).unwrap()), 2);
    }

    #[test]
    fn dump_round_trip() {
        let m = SparseMatrix::from_columns(3, q(), vec![vecq(&[(0, 2), (2, -1)]), vecq(&[(1, 5)])])
            .unwrap();
        let text = m.dump();
        assert_eq!(text, "3 2 rational\n0 0 2\n2 0 -1\n1 1 5\n");
        assert_eq!(SparseMatrix::parse_dump(&text).unwrap(), m);
    }
}
