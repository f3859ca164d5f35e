//! Closed-form generators for the degree-two sections and verifiers for the
//! accompanying combinatorial identities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::calculus::{partner_with, InversionEngine};
use crate::combinatorics::{c_coefficient, check_bijection, count_hitting, CompositionIter};
use crate::poly::{JetMonomial, JetPolynomial};
use crate::rational::{binomial, ratio, Rational};
use crate::solver::{polynomial_rank, solve_subspace, SubspaceQuery};
use crate::{invalid, Result};

/// Explicit basis of `P_{n,2}`:
/// - `x_{r1} x_{r2}` for `0 ≤ r2 ≤ r1 ≤ n−2−r2`,
/// - `x_{k1} x_{k2} − k1/(k2+1) · x_{k1−1} x_{k2+1}` for `0 ≤ n−1−k1 ≤ k2 ≤ k1−2`.
pub fn theorem_basis_p2(n: u32) -> Result<Vec<JetPolynomial>> {
    if n < 2 {
        return Err(invalid(format!("degree-two basis needs n >= 2, got {n}")));
    }
    let mut out = Vec::new();
    for r2 in 0..=n - 2 {
        for r1 in r2..=(n - 2).saturating_sub(r2) {
            if r1 + r2 <= n - 2 {
                out.push(JetPolynomial::monomial(JetMonomial::product_of(&[
                    r1 as usize,
                    r2 as usize,
                ])));
            }
        }
    }
    for k1 in 2..=n - 1 {
        for k2 in (n - 1 - k1)..=k1 - 2 {
            out.push(binomial_element(k1, k2));
        }
    }
    Ok(out)
}

/// `x_{k1} x_{k2} − k1/(k2+1) · x_{k1−1} x_{k2+1}`.
pub fn binomial_element(k1: u32, k2: u32) -> JetPolynomial {
    let lead = JetMonomial::product_of(&[k1 as usize, k2 as usize]);
    let tail = JetMonomial::product_of(&[k1 as usize - 1, k2 as usize + 1]);
    let mut p = JetPolynomial::monomial(lead);
    p.add_term(tail, -ratio(k1 as i64, k2 as i64 + 1));
    p
}

/// Dimension of `P_{n,2,l}`: `1 + ⌊l/2⌋` for `l ≤ n−2`,
/// `1 + ⌊(2n−4−l)/2⌋` for `n−1 ≤ l ≤ 2n−4`, zero otherwise.
pub fn dim_formula_p2(n: u32, l: u32) -> u64 {
    assert!(n >= 2, "formula needs n >= 2");
    let top = 2 * n - 4;
    if l > top {
        0
    } else if l <= n - 2 {
        1 + (l / 2) as u64
    } else {
        1 + ((top - l) / 2) as u64
    }
}

/// `x_{n−1} x_{n−3} − (n−1)/(n−2) · x_{n−2}^2`, the element of `P_{n,2}` with
/// the largest order of derivatives.
pub fn max_tod_element(n: u32) -> Result<JetPolynomial> {
    if n < 3 {
        return Err(invalid(format!("needs n >= 3, got {n}")));
    }
    Ok(binomial_element(n - 1, n - 3))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityInstance {
    pub parameters: String,
    pub left: String,
    pub right: String,
    pub pass: bool,
    pub detail: String,
}

impl IdentityInstance {
    fn new(parameters: String, left: impl ToString, right: impl ToString, pass: bool) -> Self {
        IdentityInstance {
            parameters,
            left: left.to_string(),
            right: right.to_string(),
            pass,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }
}

/// Per-instance results of one identity over a parameter grid. `witnesses`
/// holds instances where a failure is expected and observed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub statement: String,
    pub grid: String,
    pub instances: Vec<IdentityInstance>,
    pub witnesses: Vec<IdentityInstance>,
    pub pass: bool,
}

impl IdentityReport {
    fn finish(
        statement: &str,
        grid: String,
        instances: Vec<IdentityInstance>,
        witnesses: Vec<IdentityInstance>,
        extra_ok: bool,
    ) -> Self {
        let pass = extra_ok && instances.iter().all(|i| i.pass);
        IdentityReport {
            statement: statement.into(),
            grid,
            instances,
            witnesses,
            pass,
        }
    }

    /// Concatenates reports of the same statement in the given order.
    pub fn merge(statement: &str, grid: String, parts: Vec<IdentityReport>) -> IdentityReport {
        let pass = parts.iter().all(|r| r.pass);
        let mut instances = Vec::new();
        let mut witnesses = Vec::new();
        for p in parts {
            instances.extend(p.instances);
            witnesses.extend(p.witnesses);
        }
        IdentityReport {
            statement: statement.into(),
            grid,
            instances,
            witnesses,
            pass,
        }
    }
}

/// For every `μ ∈ 𝔓_{n−1,2n−4}` with `|μ| ≥ n−1`, checks
/// `C_{μ,n−1,n−3} = C_{μ,n−2,n−2}` and that both equal the numbers of
/// permutations of `M_μ` whose partial sums contain `n−1` resp. `n−2`.
/// With `with_bijection`, the permutation bijection between the two sets is
/// also checked exhaustively.
pub fn verify_prop_cis(n: u32, with_bijection: bool) -> Result<IdentityReport> {
    if n < 4 {
        return Err(invalid(format!("identity needs n >= 4, got {n}")));
    }
    let mus: Vec<_> = CompositionIter::new(n as usize - 1, 2 * n - 4)
        .filter(|mu| mu.weight() >= n - 1)
        .collect();
    let instances = mus
        .par_iter()
        .map(|mu| -> Result<IdentityInstance> {
            let left = c_coefficient(mu, n - 1, n - 3)?;
            let right = c_coefficient(mu, n - 2, n - 2)?;
            let a = count_hitting(mu, n - 1);
            let a_prime = count_hitting(mu, n - 2);
            let mut pass = left == right && a == left && a_prime == right;
            let mut detail = format!("|A|={a} |A'|={a_prime}");
            if with_bijection {
                let check = check_bijection(n, mu, false)?;
                pass &= check.is_bijective()
                    && BigInt::from(check.domain_size) == a
                    && BigInt::from(check.codomain_size) == a_prime;
                detail.push_str(if check.is_bijective() {
                    " bijective"
                } else {
                    " NOT bijective"
                });
            }
            Ok(IdentityInstance::new(format!("n={n} mu={mu}"), left, right, pass).with_detail(detail))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport::finish(
        "cis",
        format!("n={n}"),
        instances,
        Vec::new(),
        true,
    ))
}

/// For every `μ ∈ 𝔓_{n−1,n−1+k2}` with `|μ| ≥ n−1`, checks
/// `C_{μ,n−1,k2} = C_{μ,n−2,k2+1}`; among `|μ| = n−2` it collects the `μ`
/// where the two sides differ and requires at least one.
pub fn verify_corollary(n: u32, k2: u32) -> Result<IdentityReport> {
    if n < 4 || k2 < 1 || k2 > n - 3 {
        return Err(invalid(format!(
            "needs n >= 4 and 1 <= k2 <= n-3, got n={n}, k2={k2}"
        )));
    }
    let mut instances = Vec::new();
    let mut witnesses = Vec::new();
    for mu in CompositionIter::new(n as usize - 1, n - 1 + k2) {
        let w = mu.weight();
        if w + 2 < n {
            continue;
        }
        let left = c_coefficient(&mu, n - 1, k2)?;
        let right = c_coefficient(&mu, n - 2, k2 + 1)?;
        let params = format!("n={n} k2={k2} mu={mu}");
        if w >= n - 1 {
            let pass = left == right;
            instances.push(IdentityInstance::new(params, left, right, pass));
        } else if left != right {
            witnesses.push(IdentityInstance::new(params, left, right, true).with_detail("|mu|=n-2".into()));
        }
    }
    let has_witness = !witnesses.is_empty();
    Ok(IdentityReport::finish(
        "corollary",
        format!("n={n} k2={k2}"),
        instances,
        witnesses,
        has_witness,
    ))
}

/// Checks the explicit basis of `P_{n,2}` against the solver: membership of
/// each element, independence, the count `binom(n,2)`, per-level counts
/// against the closed formula and the solver, the absence of order `2n−3`,
/// and span equality.
pub fn verify_theorem_p2(n: u32) -> Result<IdentityReport> {
    let basis = theorem_basis_p2(n)?;
    let solved = solve_subspace(SubspaceQuery::new(n, 2, None)?)?;
    let mut engine = InversionEngine::new();
    let mut instances = Vec::new();

    for b in &basis {
        let member = partner_with(&mut engine, b, n)?.is_member();
        instances.push(IdentityInstance::new(
            format!("n={n} member {b}"),
            member,
            true,
            member,
        ));
    }
    let rank = polynomial_rank(&basis);
    instances.push(IdentityInstance::new(
        format!("n={n} rank"),
        rank,
        basis.len(),
        rank == basis.len(),
    ));
    let expected = binomial(n as u64, 2);
    instances.push(IdentityInstance::new(
        format!("n={n} count vs binom(n,2)"),
        basis.len(),
        &expected,
        BigInt::from(basis.len()) == expected,
    ));
    instances.push(IdentityInstance::new(
        format!("n={n} count vs solver"),
        basis.len(),
        solved.dimension,
        basis.len() == solved.dimension,
    ));

    let mut per_level: BTreeMap<u32, usize> = BTreeMap::new();
    for b in &basis {
        *per_level.entry(b.sd()?).or_default() += 1;
    }
    for lvl in &solved.levels {
        let count = per_level.get(&lvl.l).copied().unwrap_or(0);
        let formula = dim_formula_p2(n, lvl.l) as usize;
        instances.push(
            IdentityInstance::new(
                format!("n={n} l={}", lvl.l),
                count,
                lvl.dimension,
                count == lvl.dimension && formula == lvl.dimension,
            )
            .with_detail(format!("formula={formula}")),
        );
    }

    let forbidden = 2 * n - 3;
    let hits = solved
        .basis
        .iter()
        .chain(&basis)
        .filter(|p| p.monomials().any(|m| m.sd() == forbidden))
        .count();
    instances.push(IdentityInstance::new(
        format!("n={n} terms with sd={forbidden}"),
        hits,
        0,
        hits == 0,
    ));

    let mut combined = basis.clone();
    combined.extend(solved.basis.iter().cloned());
    let joint = polynomial_rank(&combined);
    instances.push(IdentityInstance::new(
        format!("n={n} span rank"),
        joint,
        solved.dimension,
        joint == solved.dimension && joint == basis.len(),
    ));

    Ok(IdentityReport::finish(
        "theorem",
        format!("n={n}"),
        instances,
        Vec::new(),
        true,
    ))
}

/// Facts gathered for `P_{n,d}` without asserting any expected value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureProbeReport {
    pub n: u32,
    pub d: u32,
    pub solver_dimension: usize,
    pub binomial_value: BigInt,
    pub grading: BTreeMap<u32, usize>,
    /// `dim P_{n,d,l} = dim P_{n,d,dn−d²−l}` for all `l`.
    pub symmetry_pass: bool,
    /// `dim P_{n,d,l} ≠ 0` exactly for `0 ≤ l ≤ dn−d²`.
    pub support_pass: bool,
    pub consistent: bool,
}

impl ConjectureProbeReport {
    pub fn matches_binomial(&self) -> bool {
        BigInt::from(self.solver_dimension) == self.binomial_value
    }
}

pub fn conjecture_probe(n: u32, d: u32) -> Result<ConjectureProbeReport> {
    let solved = solve_subspace(SubspaceQuery::new(n, d, None)?)?;
    let grading: BTreeMap<u32, usize> = solved.levels.iter().map(|l| (l.l, l.dimension)).collect();
    let span = d * (n - d);
    let dim_at = |l: u32| grading.get(&l).copied().unwrap_or(0);
    let symmetry_pass = (0..=span).all(|l| dim_at(l) == dim_at(span - l));
    let support_pass = grading.iter().all(|(&l, &dim)| (dim != 0) == (l <= span))
        && (0..=span).all(|l| grading.contains_key(&l));
    let consistent = grading.values().sum::<usize>() == solved.dimension
        && crate::solver::polynomial_rank(&solved.basis) == solved.dimension;
    Ok(ConjectureProbeReport {
        n,
        d,
        solver_dimension: solved.dimension,
        binomial_value: binomial(n as u64, d as u64),
        grading,
        symmetry_pass,
        support_pass,
        consistent,
    })
}

/// Coefficient of the lower term of [`binomial_element`].
pub fn binomial_ratio(k1: u32, k2: u32) -> Rational {
    ratio(k1 as i64, k2 as i64 + 1)
}
