//! Brute-force computation of `P_{n,d}` and `P_{n,d,l}` as kernels of exact
//! linear systems.
//!
//! Candidates are all monomials of degree `d` in `x0..x(n−1)` (with order of
//! derivatives `l` when given). A linear combination lies in `P_n` exactly
//! when every Laurent term with `x0` power below `−n` cancels across the
//! candidates' inversion expansions, so each such term contributes one
//! constraint row.
//!
//! Inversion expansion keeps the order of derivatives of every monomial, so
//! the constraint system is block diagonal in `l` and is solved level by
//! level. At level `l`, a numerator with order of derivatives `l` built from
//! `x1..x(n−1)` has degree at least `⌈l/(n−1)⌉`. Once that exceeds `n − d`,
//! every term is a constraint; inversion is injective, so such levels have a
//! trivial kernel and are skipped.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::calculus::InversionEngine;
use crate::laurent::LaurentKey;
use crate::poly::{JetMonomial, JetPolynomial};
use crate::rational::{from_bigint, Rational};
use crate::{invalid, Error, Result};

/// Queries that would build more than this many candidate monomials are
/// refused. Candidates at provably trivial levels are not counted.
pub const CANDIDATE_LIMIT: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceQuery {
    pub n: u32,
    pub d: u32,
    pub l: Option<u32>,
}

impl SubspaceQuery {
    pub fn new(n: u32, d: u32, l: Option<u32>) -> Result<Self> {
        if d > n {
            return Err(invalid(format!("degree d={d} exceeds n={n}")));
        }
        Ok(SubspaceQuery { n, d, l })
    }

    /// Highest order of derivatives a degree-`d` monomial in `x0..x(n−1)` can have.
    pub fn max_level(&self) -> u32 {
        self.d * self.n.saturating_sub(1)
    }

    fn levels(&self) -> Vec<u32> {
        match self.l {
            Some(l) => vec![l],
            None => (0..=self.max_level()).collect(),
        }
    }

    // above this level the kernel is trivial, see module docs
    fn trivial_above(&self) -> u32 {
        (self.n - self.d) * self.n.saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDimension {
    pub l: u32,
    pub dimension: usize,
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceReport {
    pub query: SubspaceQuery,
    pub dimension: usize,
    pub basis: Vec<JetPolynomial>,
    pub candidate_count: usize,
    pub levels: Vec<LevelDimension>,
}

/// Dense matrix of exact rationals, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        ExactMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rank(&self) -> usize {
        reduced_rows(self).len()
    }
}

/// Reduced row echelon form, built one input row at a time.
struct Echelon {
    cols: usize,
    pivots: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon {
            cols,
            pivots: Vec::new(),
        }
    }

    fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    fn insert(&mut self, mut row: Vec<Rational>) {
        for (pc, prow) in &self.pivots {
            if !row[*pc].is_zero() {
                let f = row[*pc].clone();
                axpy(&mut row, &f, prow);
            }
        }
        let Some(c) = row.iter().position(|v| !v.is_zero()) else {
            return;
        };
        let inv = row[c].recip();
        for v in row.iter_mut().skip(c) {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        for (_, prow) in self.pivots.iter_mut() {
            if !prow[c].is_zero() {
                let f = prow[c].clone();
                axpy(prow, &f, &row);
            }
        }
        self.pivots.push((c, row));
    }

    /// `(pivot column, row)` pairs by pivot column.
    fn finish(mut self) -> Vec<(usize, Vec<Rational>)> {
        self.pivots.sort_by_key(|(c, _)| *c);
        self.pivots
    }
}

fn reduced_rows(m: &ExactMatrix) -> Vec<(usize, Vec<Rational>)> {
    echelon(m).finish()
}

fn echelon(m: &ExactMatrix) -> Echelon {
    // the reduced form does not depend on row order; sparse rows first keep
    // the pivot rows sparse for longer
    let mut order: Vec<(usize, usize)> = (0..m.rows)
        .map(|r| (m.row(r).iter().filter(|v| !v.is_zero()).count(), r))
        .filter(|(nnz, _)| *nnz > 0)
        .collect();
    order.sort();
    let mut ech = Echelon::new(m.cols);
    for (_, r) in order {
        if ech.is_full() {
            break;
        }
        ech.insert(m.row(r).to_vec());
    }
    ech
}

fn kernel_of(ech: Echelon) -> Vec<Vec<Rational>> {
    let cols = ech.cols;
    let pivots = ech.finish();
    let mut is_pivot = vec![false; cols];
    for (c, _) in &pivots {
        is_pivot[*c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (pc, prow) in &pivots {
            v[*pc] = -prow[free].clone();
        }
        let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("free entry is 1");
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x /= &lead;
            }
        }
        basis.push(v);
    }
    basis
}

/// Fraction-free row echelon form over the integers. Each stored row is
/// zero in the pivot columns of the rows stored before it.
struct IntEchelon {
    cols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IntEchelon {
    fn new(cols: usize) -> Self {
        IntEchelon {
            cols,
            rows: Vec::new(),
        }
    }

    fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    fn insert(&mut self, mut row: Vec<BigInt>) {
        for (pc, prow) in &self.rows {
            if row[*pc].is_zero() {
                continue;
            }
            let g = row[*pc].gcd(&prow[*pc]);
            let a = &prow[*pc] / &g;
            let b = &row[*pc] / &g;
            for (x, y) in row.iter_mut().zip(prow) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &a;
                    }
                } else {
                    *x = &*x * &a - &b * y;
                }
            }
            divide_content(&mut row);
        }
        let Some(c) = row.iter().position(|v| !v.is_zero()) else {
            return;
        };
        self.rows.push((c, row));
    }

    /// One vector per free column, scaled so its first nonzero entry is 1.
    fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for (c, _) in &self.rows {
            is_pivot[*c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (pc, row) in self.rows.iter().rev() {
                let mut s = Rational::zero();
                for (c, x) in row.iter().enumerate() {
                    if c != *pc && !x.is_zero() && !v[c].is_zero() {
                        s += &v[c] * from_bigint(x.clone());
                    }
                }
                v[*pc] = -s / from_bigint(row[*pc].clone());
            }
            let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("free entry is 1");
            if !lead.is_one() {
                for x in v.iter_mut() {
                    *x /= &lead;
                }
            }
            basis.push(v);
        }
        basis
    }
}

fn divide_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if !g.is_zero() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

// row -= f * other
fn axpy(row: &mut [Rational], f: &Rational, other: &[Rational]) {
    for (a, b) in row.iter_mut().zip(other) {
        if !b.is_zero() {
            *a -= f * b;
        }
    }
}

/// Null-space basis from the reduced row echelon form: one vector per free
/// column (in column order), scaled so its first nonzero entry is 1.
pub fn gaussian_kernel(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    kernel_of(echelon(m))
}

/// Number of degree-`d` monomials in `x0..x(n−1)`, restricted to order of
/// derivatives `l` when given.
pub fn candidate_count(n: u32, d: u32, l: Option<u32>) -> u128 {
    let per_level = level_counts(n, d);
    match l {
        Some(l) => per_level.get(l as usize).copied().unwrap_or(0),
        None => per_level.iter().fold(0u128, |a, &b| a.saturating_add(b)),
    }
}

// candidate counts indexed by order of derivatives
fn level_counts(n: u32, d: u32) -> Vec<u128> {
    if n == 0 {
        return vec![u128::from(d == 0)];
    }
    let max_l = (d * (n - 1)) as usize;
    // ways[j][s]: multisets of size j from the orders seen so far with sum s
    let mut ways = vec![vec![0u128; max_l + 1]; d as usize + 1];
    ways[0][0] = 1;
    for r in 0..n as usize {
        for j in 1..=d as usize {
            for s in r..=max_l {
                let add = ways[j - 1][s - r];
                ways[j][s] = ways[j][s].saturating_add(add);
            }
        }
    }
    ways.swap_remove(d as usize)
}

/// All monomials of degree `d` in `x0..x(n−1)` (order of derivatives `l` when
/// given), in canonical monomial order. The degree in `x(n−1)` is not bounded
/// beforehand.
pub fn candidate_monomials(n: u32, d: u32, l: Option<u32>) -> Vec<JetMonomial> {
    let mut out = Vec::new();
    let mut orders = Vec::with_capacity(d as usize);
    fill_candidates(n, d, l, 0, 0, &mut orders, &mut out);
    out.sort();
    out
}

fn fill_candidates(
    n: u32,
    d: u32,
    l: Option<u32>,
    min_order: u32,
    sum: u32,
    orders: &mut Vec<usize>,
    out: &mut Vec<JetMonomial>,
) {
    if orders.len() == d as usize {
        if l.is_none_or(|l| l == sum) {
            out.push(JetMonomial::product_of(orders));
        }
        return;
    }
    let left = d - orders.len() as u32;
    for r in min_order..n {
        if let Some(l) = l {
            // remaining factors are all ≥ r
            if sum + r * left > l {
                break;
            }
            if sum + (n - 1) * left < l {
                continue;
            }
        }
        orders.push(r as usize);
        fill_candidates(n, d, l, r, sum + r, orders, out);
        orders.pop();
    }
}

/// One row per Laurent term with `x0` power below `−n` occurring in some
/// candidate's inversion expansion; rows ordered by `(x0 power, numerator)`.
pub fn membership_constraints(candidates: &[JetMonomial], n: u32) -> ExactMatrix {
    membership_constraints_with(&mut InversionEngine::new(), candidates, n)
}

pub fn membership_constraints_with(
    engine: &mut InversionEngine,
    candidates: &[JetMonomial],
    n: u32,
) -> ExactMatrix {
    let mut rows: BTreeMap<LaurentKey, Vec<(usize, BigInt)>> = BTreeMap::new();
    for (j, m) in candidates.iter().enumerate() {
        let d = m.degree() as i64;
        for (num, c) in engine.monomial_terms(m).iter() {
            let power = -(d + num.degree() as i64);
            if power < -(n as i64) {
                rows.entry(LaurentKey::new(num.clone(), power))
                    .or_default()
                    .push((j, c.clone()));
            }
        }
    }
    let mut mat = ExactMatrix::zeros(rows.len(), candidates.len());
    for (i, entries) in rows.into_values().enumerate() {
        for (j, c) in entries {
            mat.set(i, j, from_bigint(c));
        }
    }
    mat
}

/// Kernel of the constraint system for an arbitrary candidate list, as
/// polynomials. The basis is the reduced row echelon form of the kernel in
/// candidate order, so it does not depend on how the system was solved.
pub fn members_among(candidates: &[JetMonomial], n: u32) -> Vec<JetPolynomial> {
    members_among_with(&mut InversionEngine::new(), candidates, n)
}

pub fn members_among_with(
    engine: &mut InversionEngine,
    candidates: &[JetMonomial],
    n: u32,
) -> Vec<JetPolynomial> {
    let kernel = structured_kernel(engine, candidates, n);
    let cols = candidates.len();
    reduced_rows(&ExactMatrix::from_rows(kernel, cols))
        .into_iter()
        .map(|(_, v)| JetPolynomial::from_terms(candidates.iter().cloned().zip(v)))
        .collect()
}

// A candidate x0^a*D whose own derivative part D sits below x0^-n has the row
// (D, -(deg + deg D)) with coefficient ±1 there, and every other candidate in
// that row has a strictly coarser derivative part. Those columns are solved by
// substitution in order of deg D, leaving a system over the other candidates.
fn structured_kernel(engine: &mut InversionEngine, candidates: &[JetMonomial], n: u32) -> Vec<Vec<Rational>> {
    let expansions: Vec<_> = candidates.iter().map(|m| engine.monomial_terms(m)).collect();
    let mut rows: HashMap<(&JetMonomial, i64), Vec<(usize, &BigInt)>> = HashMap::new();
    for (j, (m, terms)) in candidates.iter().zip(&expansions).enumerate() {
        let d = m.degree() as i64;
        for (num, c) in terms.iter() {
            let power = -(d + num.degree() as i64);
            if power < -(n as i64) {
                rows.entry((num, power)).or_default().push((j, c));
            }
        }
    }

    let mut pivot_key: Vec<Option<(JetMonomial, i64)>> = vec![None; candidates.len()];
    let mut free = Vec::new();
    let mut free_pos = vec![usize::MAX; candidates.len()];
    let mut pivoted = Vec::new();
    for (j, m) in candidates.iter().enumerate() {
        let (_, deriv) = m.split_x0();
        let power = -((m.degree() + deriv.degree()) as i64);
        if power < -(n as i64) {
            pivoted.push((deriv.degree(), j));
            pivot_key[j] = Some((deriv, power));
        } else {
            free_pos[j] = free.len();
            free.push(j);
        }
    }
    pivoted.sort();

    // column j in terms of the free columns; the diagonal entry is ±1, so
    // these stay integral
    let width = free.len();
    let mut solved: Vec<Option<Vec<BigInt>>> = vec![None; candidates.len()];
    for &(_, j) in &pivoted {
        let (deriv, power) = pivot_key[j].as_ref().expect("pivot candidate");
        let entries = rows
            .remove(&(deriv, *power))
            .expect("a candidate reaches its own derivative part");
        let mut acc = vec![BigInt::zero(); width];
        let mut diag = BigInt::zero();
        for (c, v) in entries {
            if c == j {
                diag = v.clone();
            } else if free_pos[c] != usize::MAX {
                acc[free_pos[c]] += v;
            } else {
                let col = solved[c].as_ref().expect("coarser columns are solved first");
                for (a, x) in acc.iter_mut().zip(col) {
                    if !x.is_zero() {
                        *a += v * x;
                    }
                }
            }
        }
        assert!(diag.magnitude().is_one(), "unit diagonal");
        if diag.is_positive() {
            for a in acc.iter_mut() {
                *a = -std::mem::take(a);
            }
        }
        solved[j] = Some(acc);
    }

    // sparse rows first; the key only makes the order reproducible
    let mut remaining: Vec<_> = rows.into_iter().collect();
    remaining.sort_by(|(ka, a), (kb, b)| a.len().cmp(&b.len()).then_with(|| ka.cmp(kb)));
    let mut remaining: Vec<Vec<(usize, &BigInt)>> = remaining.into_iter().map(|(_, r)| r).collect();

    let reduce = |entries: &Vec<(usize, &BigInt)>| {
        let mut acc = vec![BigInt::zero(); width];
        for &(c, v) in entries {
            match &solved[c] {
                None => acc[free_pos[c]] += v,
                Some(col) => {
                    for (a, x) in acc.iter_mut().zip(col) {
                        if !x.is_zero() {
                            *a += v * x;
                        }
                    }
                }
            }
        }
        acc
    };
    let expand = |w: &[Rational]| -> Vec<Rational> {
        (0..candidates.len())
            .map(|j| match &solved[j] {
                None => w[free_pos[j]].clone(),
                Some(col) => col.iter().zip(w).map(|(a, b)| from_bigint(a.clone()) * b).sum(),
            })
            .collect()
    };

    // Eliminate a batch of rows, then test the kernel found so far against
    // every row left over. Violated rows join the system; once none are
    // violated the kernel is exact.
    let mut ech = IntEchelon::new(width);
    let mut batch: Vec<_> = remaining.drain(..remaining.len().min(width + 16)).collect();
    loop {
        for r in batch.par_iter().map(reduce).collect::<Vec<_>>() {
            if ech.is_full() {
                break;
            }
            ech.insert(r);
        }
        if ech.is_full() {
            return Vec::new();
        }
        let kernel: Vec<Vec<Rational>> = ech.kernel().iter().map(|w| expand(w)).collect();
        let scaled: Vec<Vec<BigInt>> = kernel.iter().map(|v| clear_denominators(v)).collect();
        let (violated, kept): (Vec<_>, Vec<_>) = remaining.into_par_iter().partition(|entries| {
            scaled.iter().any(|v| {
                let dot: BigInt = entries.iter().map(|&(c, x)| x * &v[c]).sum();
                !dot.is_zero()
            })
        });
        if violated.is_empty() {
            return kernel;
        }
        // a few violated rows usually cut the kernel down; the rest are
        // tested again against the smaller kernel
        let mut violated = violated;
        remaining = kept;
        remaining.extend(violated.drain(violated.len().min(16)..));
        remaining.sort_by_key(Vec::len);
        batch = violated;
    }
}

fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

pub fn solve_subspace(q: SubspaceQuery) -> Result<SubspaceReport> {
    let total = candidate_count(q.n, q.d, q.l);
    // trivial levels are never built, so only the rest counts against the limit
    let per_level = level_counts(q.n, q.d);
    let built = q
        .levels()
        .into_iter()
        .filter(|&l| l <= q.trivial_above())
        .filter_map(|l| per_level.get(l as usize))
        .fold(0u128, |a, &b| a.saturating_add(b));
    if built > CANDIDATE_LIMIT as u128 {
        return Err(Error::SizeLimit {
            candidates: usize::try_from(built).unwrap_or(usize::MAX),
            limit: CANDIDATE_LIMIT,
        });
    }
    let solved: Vec<(LevelDimension, Vec<JetPolynomial>)> = q
        .levels()
        .into_par_iter()
        .map(|l| {
            if l > q.max_level() {
                return (
                    LevelDimension {
                        l,
                        dimension: 0,
                        candidates: 0,
                    },
                    Vec::new(),
                );
            }
            let count = candidate_count(q.n, q.d, Some(l)) as usize;
            if l > q.trivial_above() {
                return (
                    LevelDimension {
                        l,
                        dimension: 0,
                        candidates: count,
                    },
                    Vec::new(),
                );
            }
            let candidates = candidate_monomials(q.n, q.d, Some(l));
            let basis = members_among(&candidates, q.n);
            (
                LevelDimension {
                    l,
                    dimension: basis.len(),
                    candidates: candidates.len(),
                },
                basis,
            )
        })
        .collect();
    let mut levels = Vec::with_capacity(solved.len());
    let mut basis = Vec::new();
    for (lvl, b) in solved {
        levels.push(lvl);
        basis.extend(b);
    }
    Ok(SubspaceReport {
        query: q,
        dimension: basis.len(),
        basis,
        candidate_count: total as usize,
        levels,
    })
}

/// Rank of the coefficient matrix of a list of polynomials.
pub fn polynomial_rank(polys: &[JetPolynomial]) -> usize {
    let mut index: BTreeMap<&JetMonomial, usize> = BTreeMap::new();
    for p in polys {
        for m in p.monomials() {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let mut mat = ExactMatrix::zeros(polys.len(), index.len());
    for (i, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            mat.set(i, index[m], c.clone());
        }
    }
    mat.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::partner;
    use crate::rational::int;
    use crate::text::parse_poly;

    fn mono(orders: &[usize]) -> JetMonomial {
        JetMonomial::product_of(orders)
    }

    fn mat(rows: &[&[i64]]) -> ExactMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn candidate_examples() {
        assert_eq!(candidate_monomials(2, 1, None), vec![mono(&[0]), mono(&[1])]);
        assert_eq!(
            candidate_monomials(3, 2, Some(2)),
            vec![mono(&[2, 0]), mono(&[1, 1])]
        );
        assert_eq!(candidate_monomials(4, 2, None).len(), 10);
        assert_eq!(candidate_monomials(0, 0, None), vec![JetMonomial::one()]);
        assert!(candidate_monomials(0, 1, None).is_empty());
    }

    #[test]
    fn candidate_count_matches_listing() {
        for n in 0..7 {
            for d in 0..5 {
                assert_eq!(
                    candidate_count(n, d, None),
                    candidate_monomials(n, d, None).len() as u128
                );
                for l in 0..=d * n {
                    assert_eq!(
                        candidate_count(n, d, Some(l)),
                        candidate_monomials(n, d, Some(l)).len() as u128,
                        "n={n} d={d} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn constraint_examples() {
        let m = membership_constraints(&[mono(&[2, 0]), mono(&[1, 1])], 3);
        assert_eq!((m.rows(), m.cols()), (1, 2));
        let k = gaussian_kernel(&m);
        assert_eq!(k, vec![vec![int(1), int(-2)]]);

        let m = membership_constraints(&[JetMonomial::one()], 0);
        assert_eq!(m.rows(), 0);
        assert_eq!(gaussian_kernel(&m).len(), 1);

        let m = membership_constraints(&[mono(&[1])], 1);
        assert_eq!(m.rows(), 1);
        assert!(gaussian_kernel(&m).is_empty());
    }

    #[test]
    fn kernel_examples() {
        assert!(gaussian_kernel(&ExactMatrix::identity(3)).is_empty());
        assert_eq!(gaussian_kernel(&ExactMatrix::zeros(2, 3)).len(), 3);
        let k = gaussian_kernel(&mat(&[&[1, 1, 0]]));
        assert_eq!(
            k,
            vec![vec![int(1), int(-1), int(0)], vec![int(0), int(0), int(1)]]
        );
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = mat(&[&[2, 4, -2, 0], &[1, 2, 0, 3], &[3, 6, -2, 3]]);
        let k = gaussian_kernel(&m);
        assert_eq!(k.len(), 4 - m.rank());
        assert_eq!(m.rank(), 2);
        for v in &k {
            for r in 0..m.rows() {
                let dot: Rational = m.row(r).iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn solve_examples() {
        for n in 1..=6 {
            let r = solve_subspace(SubspaceQuery::new(n, 1, None).unwrap()).unwrap();
            assert_eq!(r.dimension, n as usize);
            assert_eq!(polynomial_rank(&r.basis), n as usize);
            let r = solve_subspace(SubspaceQuery::new(n, 0, None).unwrap()).unwrap();
            assert_eq!(r.dimension, 1);
        }
        let r = solve_subspace(SubspaceQuery::new(4, 2, None).unwrap()).unwrap();
        assert_eq!(r.dimension, 6);
        assert_eq!(r.candidate_count, 10);
        let r = solve_subspace(SubspaceQuery::new(3, 2, Some(2)).unwrap()).unwrap();
        assert_eq!(r.basis, vec![parse_poly("x2*x0 - 2*x1^2").unwrap()]);
        assert!(SubspaceQuery::new(3, 4, None).is_err());
    }

    #[test]
    fn level_shortcut_agrees_with_full_system() {
        for n in 1..=6u32 {
            for d in 0..=n {
                let q = SubspaceQuery::new(n, d, None).unwrap();
                let full = members_among(&candidate_monomials(n, d, None), n);
                let split = solve_subspace(q).unwrap();
                assert_eq!(full.len(), split.dimension, "n={n} d={d}");
                for l in q.trivial_above() + 1..=q.max_level() {
                    assert!(members_among(&candidate_monomials(n, d, Some(l)), n).is_empty());
                }
            }
        }
    }

    #[test]
    fn substitution_agrees_with_plain_elimination() {
        for n in 1..=7u32 {
            for d in 0..=n {
                for l in 0..=d * n.saturating_sub(1) {
                    let c = candidate_monomials(n, d, Some(l));
                    let plain = gaussian_kernel(&membership_constraints(&c, n));
                    let expected: Vec<JetPolynomial> = reduced_rows(&ExactMatrix::from_rows(plain, c.len()))
                        .into_iter()
                        .map(|(_, v)| JetPolynomial::from_terms(c.iter().cloned().zip(v)))
                        .collect();
                    assert_eq!(members_among(&c, n), expected, "n={n} d={d} l={l}");
                }
            }
        }
        let mixed = candidate_monomials(5, 2, None)
            .into_iter()
            .chain(candidate_monomials(5, 3, None))
            .collect::<Vec<_>>();
        let plain = gaussian_kernel(&membership_constraints(&mixed, 5));
        assert_eq!(members_among(&mixed, 5).len(), plain.len());
    }

    #[test]
    fn basis_members_and_top_variable() {
        for n in 2..=6 {
            for d in 0..=n {
                let r = solve_subspace(SubspaceQuery::new(n, d, None).unwrap()).unwrap();
                for b in &r.basis {
                    assert!(partner(b, n).unwrap().is_member());
                    assert!(b.degree_in(n as usize - 1) <= 1);
                }
            }
        }
    }

    #[test]
    fn guardrail() {
        match solve_subspace(SubspaceQuery::new(40, 20, None).unwrap()) {
            Err(Error::SizeLimit { limit, .. }) => assert_eq!(limit, CANDIDATE_LIMIT),
            other => panic!("{other:?}"),
        }
        // above the limit in total, but nearly every level is trivial
        let q = SubspaceQuery::new(12, 11, None).unwrap();
        assert!(candidate_count(12, 11, None) > CANDIDATE_LIMIT as u128);
        let r = solve_subspace(q).unwrap();
        assert_eq!(r.dimension, 12);
        assert_eq!(r.candidate_count as u128, candidate_count(12, 11, None));
    }
}
