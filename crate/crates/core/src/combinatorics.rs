//! Weighted compositions, multinomials, the `C_{μ,k1,k2}` coefficients and
//! multiset permutations with their partial sums.
//!
//! A composition `p = (p_1, ..., p_m)` lists multiplicities: `p_i` copies of
//! the integer `i`. Its weighted sum is `k = Σ i·p_i` and its weight is
//! `|p| = Σ p_i`. The set of all such `p` of length `m` and weighted sum `k`
//! is written `𝔓_{m,k}`, and `𝔓_k = 𝔓_{k,k}`.
//!
//! Enumeration orders: compositions come out in colexicographic order of
//! their parts (last part most significant), permutations in lexicographic
//! order of their entry sequences.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::factorial;
use crate::{invalid, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    /// `parts[i]` is the multiplicity of `i + 1`.
    pub fn new(parts: Vec<u32>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Declared length `m`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of the integer `i` (1-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Weighted sum `Σ i·p_i`.
    pub fn total(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u32 + 1) * p)
            .sum()
    }

    /// `|p| = Σ p_i`.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Largest `i` with `p_i > 0`.
    pub fn support(&self) -> usize {
        self.parts.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1)
    }

    /// Membership in `𝔓_{m,k}` up to trailing zeros.
    pub fn is_in(&self, m: usize, k: u32) -> bool {
        self.support() <= m && self.total() == k
    }

    /// Same multiplicities with length `m`; trailing entries must be zero.
    pub fn resized(&self, m: usize) -> Option<Composition> {
        if self.support() > m {
            return None;
        }
        let mut parts = self.parts.clone();
        parts.resize(m, 0);
        Some(Composition { parts })
    }

    /// The multiset `M_p` as a sorted sequence.
    pub fn multiset(&self) -> Vec<u32> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| std::iter::repeat(i as u32 + 1).take(p as usize))
            .collect()
    }

    /// Multiplicity vector of a multiset of positive integers, length `m`.
    pub fn from_multiset(entries: &[u32], m: usize) -> Option<Composition> {
        let mut parts = vec![0; m];
        for &a in entries {
            if a == 0 || a as usize > m {
                return None;
            }
            parts[a as usize - 1] += 1;
        }
        Some(Composition { parts })
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Streaming enumeration of `𝔓_{m,k}` in colexicographic order.
pub struct CompositionIter {
    m: usize,
    k: u32,
    current: Option<Vec<u32>>,
}

impl CompositionIter {
    pub fn new(m: usize, k: u32) -> Self {
        let current = (m >= 1).then(|| {
            let mut v = vec![0; m];
            v[0] = k;
            v
        });
        CompositionIter { m, k, current }
    }
}

impl Iterator for CompositionIter {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        // colex successor: bump the lowest position i >= 2 that still fits,
        // clear positions 2..i, and let p_1 absorb the remainder
        let mut above = vec![0u32; self.m + 1];
        for i in (0..self.m).rev() {
            above[i] = above[i + 1] + (i as u32 + 1) * cur[i];
        }
        let mut next = None;
        for i in 1..self.m {
            let used = above[i + 1] + (i as u32 + 1) * (cur[i] + 1);
            if used <= self.k {
                let mut v = cur.clone();
                for slot in v.iter_mut().take(i).skip(1) {
                    *slot = 0;
                }
                v[i] += 1;
                v[0] = self.k - used;
                next = Some(v);
                break;
            }
        }
        self.current = next;
        Some(Composition { parts: cur })
    }
}

/// All of `𝔓_{m,k}` in colexicographic order.
pub fn compositions(m: usize, k: u32) -> Result<Vec<Composition>> {
    if m < 1 || k < 1 {
        return Err(invalid(format!("compositions need m, k >= 1, got m={m}, k={k}")));
    }
    Ok(CompositionIter::new(m, k).collect())
}

/// `|p|! / (p_1! ⋯ p_m!)`.
pub fn multinomial(p: &Composition) -> BigInt {
    let mut acc = factorial(p.weight());
    for &x in p.parts() {
        acc /= factorial(x);
    }
    acc
}

/// `C_{μ,k1,k2}`: sum of `multinomial(p)·multinomial(q)` over `μ = p + q`
/// with `p ∈ 𝔓_{k1}` and `q ∈ 𝔓_{k2}`; zero when no such split exists.
///
/// Compositions equal up to trailing zeros are identified, so `μ` only has
/// to have weighted sum `k1 + k2`; parts beyond `k1` simply admit no split.
pub fn c_coefficient(mu: &Composition, k1: u32, k2: u32) -> Result<BigInt> {
    if k2 < 1 || k1 < k2 {
        return Err(invalid(format!("need k1 >= k2 >= 1, got k1={k1}, k2={k2}")));
    }
    if mu.total() != k1 + k2 {
        return Err(invalid(format!(
            "μ={mu} has weighted sum {}, expected k1+k2={}",
            mu.total(),
            k1 + k2
        )));
    }
    if mu.support() > k1 as usize {
        return Ok(BigInt::zero());
    }
    let m = k1 as usize;
    let mu = mu.resized(m).expect("support checked");
    let mut total = BigInt::zero();
    let mut p = vec![0u32; m];
    split_sum(&mu, k1, k2, 0, k1, &mut p, &mut total);
    Ok(total)
}

// Chooses p_i ≤ μ_i for i = idx+1..m with remaining weighted budget `left`;
// q = μ − p must vanish beyond k2.
fn split_sum(
    mu: &Composition,
    k1: u32,
    k2: u32,
    idx: usize,
    left: u32,
    p: &mut Vec<u32>,
    total: &mut BigInt,
) {
    let m = p.len();
    if idx == m {
        if left == 0 {
            let q: Vec<u32> = mu.parts().iter().zip(p.iter()).map(|(a, b)| a - b).collect();
            let qc = Composition::new(q);
            if qc.support() <= k2 as usize {
                *total += multinomial(&Composition::new(p.clone())) * multinomial(&qc);
            }
        }
        return;
    }
    let i = idx as u32 + 1;
    let need_min = if idx as u32 + 1 > k2 { mu.part(idx + 1) } else { 0 };
    let hi = mu.part(idx + 1).min(left / i);
    if need_min > hi {
        return;
    }
    for v in need_min..=hi {
        p[idx] = v;
        split_sum(mu, k1, k2, idx + 1, left - v * i, p, total);
    }
    p[idx] = 0;
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MultisetPermutation {
    entries: Vec<u32>,
}

impl MultisetPermutation {
    pub fn new(entries: Vec<u32>) -> Self {
        MultisetPermutation { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn partial_sums(&self) -> Vec<u32> {
        partial_sums(&self.entries)
    }

    pub fn hits(&self, target: u32) -> bool {
        let mut s = 0;
        for &a in &self.entries {
            s += a;
            if s >= target {
                return s == target;
            }
        }
        false
    }
}

impl std::fmt::Display for MultisetPermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        Composition::new(self.entries.clone()).fmt(f)
    }
}

pub fn partial_sums(entries: &[u32]) -> Vec<u32> {
    entries
        .iter()
        .scan(0u32, |s, &a| {
            *s += a;
            Some(*s)
        })
        .collect()
}

/// Streaming lexicographic enumeration of the distinct permutations of `M_r`.
pub struct PermutationIter {
    current: Option<Vec<u32>>,
}

impl PermutationIter {
    pub fn new(r: &Composition) -> Self {
        PermutationIter {
            current: Some(r.multiset()),
        }
    }
}

impl Iterator for PermutationIter {
    type Item = MultisetPermutation;

    fn next(&mut self) -> Option<MultisetPermutation> {
        let cur = self.current.take()?;
        let mut v = cur.clone();
        if let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
            let pivot = i - 1;
            let j = (i..v.len())
                .rev()
                .find(|&j| v[j] > v[pivot])
                .expect("pivot has successor");
            v.swap(pivot, j);
            v[i..].reverse();
            self.current = Some(v);
        }
        Some(MultisetPermutation { entries: cur })
    }
}

/// All distinct permutations of `M_r` in lexicographic order.
pub fn multiset_permutations(r: &Composition) -> Result<Vec<MultisetPermutation>> {
    if r.weight() == 0 {
        return Err(invalid("multiset permutations need |r| >= 1"));
    }
    Ok(PermutationIter::new(r).collect())
}

/// Permutations of `M_μ` whose partial sums contain `target`, streamed.
pub fn filtered_permutations(mu: &Composition, target: u32) -> impl Iterator<Item = MultisetPermutation> {
    PermutationIter::new(mu).filter(move |w| w.hits(target))
}

pub fn filtered_permutation_set(mu: &Composition, target: u32) -> Vec<MultisetPermutation> {
    filtered_permutations(mu, target).collect()
}

/// Number of permutations of `M_μ` whose partial sums contain `target`,
/// counted by dynamic programming over the lattice of sub-multisets of `M_μ`
/// without listing any permutation.
pub fn count_hitting(mu: &Composition, target: u32) -> BigInt {
    let dims: Vec<usize> = mu.parts().iter().map(|&p| p as usize + 1).collect();
    let size: usize = dims.iter().product();
    let mut words = vec![BigInt::zero(); size];
    let mut hitting = vec![BigInt::zero(); size];
    let mut state = vec![0usize; dims.len()];
    for idx in 0..size {
        // mixed-radix decode, least significant first
        let mut rem = idx;
        let mut total = 0u32;
        for (slot, &d) in state.iter_mut().zip(&dims) {
            *slot = rem % d;
            rem /= d;
        }
        for (i, &c) in state.iter().enumerate() {
            total += (i as u32 + 1) * c as u32;
        }
        if idx == 0 {
            words[0] = BigInt::one();
            continue;
        }
        let mut w = BigInt::zero();
        let mut h = BigInt::zero();
        let mut stride = 1usize;
        for (i, &c) in state.iter().enumerate() {
            if c > 0 {
                w += &words[idx - stride];
                h += &hitting[idx - stride];
            }
            stride *= dims[i];
        }
        if total == target {
            h = w.clone();
        } else if total < target {
            h = BigInt::zero();
        }
        words[idx] = w;
        hitting[idx] = h;
    }
    hitting[size - 1].clone()
}

/// Validates the domain of the permutation bijection: `n ≥ 4`,
/// `μ ∈ 𝔓_{n−1,2n−4}` and `|μ| ≥ n−1`.
pub fn check_bijection_domain(n: u32, mu: &Composition) -> Result<()> {
    if n < 4 {
        return Err(invalid(format!("bijection needs n >= 4, got {n}")));
    }
    if !mu.is_in(n as usize - 1, 2 * n - 4) {
        return Err(invalid(format!("μ={mu} is not in 𝔓_(n-1, 2n-4) for n={n}")));
    }
    if mu.weight() < n - 1 {
        return Err(invalid(format!("|μ|={} is below n-1={}", mu.weight(), n - 1)));
    }
    Ok(())
}

/// Maps a permutation of `M_μ` whose partial sums contain `n−1` to one whose
/// partial sums contain `n−2`.
///
/// With `ω = (a_1..a_s, b_1..b_t)` split where the running sum reaches `n−1`:
/// if `a_1 = 1` the leading 1 moves to the end of the first block; otherwise
/// take the smallest prefix sum `S_i` of the first block such that `S_i − 1`
/// is a prefix sum `S̃_j` of the second block and emit
/// `(b_1..b_j, a_{i+1}..a_s, a_1..a_i, b_{j+1}..b_t)`.
pub fn sigma_bijection(omega: &MultisetPermutation, n: u32, mu: &Composition) -> Result<MultisetPermutation> {
    check_bijection_domain(n, mu)?;
    let m = n as usize - 1;
    match Composition::from_multiset(omega.entries(), m) {
        Some(c) if c.resized(m) == mu.resized(m) => {}
        _ => return Err(invalid(format!("{omega} is not a permutation of M_μ for μ={mu}"))),
    }
    let sums = omega.partial_sums();
    let split = sums
        .iter()
        .position(|&s| s == n - 1)
        .ok_or_else(|| invalid(format!("partial sums of {omega} do not contain n-1={}", n - 1)))?
        + 1;
    let (a, b) = omega.entries().split_at(split);
    if a[0] == 1 {
        let mut out = Vec::with_capacity(omega.len());
        out.extend_from_slice(&a[1..]);
        out.push(1);
        out.extend_from_slice(b);
        return Ok(MultisetPermutation::new(out));
    }
    let sa = partial_sums(a);
    let sb = partial_sums(b);
    for (i1, &s) in sa.iter().enumerate() {
        if let Some(i2) = sb.iter().position(|&t| t + 1 == s) {
            let (i1, i2) = (i1 + 1, i2 + 1);
            let mut out = Vec::with_capacity(omega.len());
            out.extend_from_slice(&b[..i2]);
            out.extend_from_slice(&a[i1..]);
            out.extend_from_slice(&a[..i1]);
            out.extend_from_slice(&b[i2..]);
            return Ok(MultisetPermutation::new(out));
        }
    }
    // unreachable when |μ| ≥ n−1 (pigeonhole on 1..n−2)
    Err(invalid(format!("no matching partial sums for {omega}")))
}

/// Outcome of checking the bijection exhaustively on one `(n, μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCheck {
    pub domain_size: u64,
    pub codomain_size: u64,
    pub image_size: u64,
    pub images_in_codomain: bool,
    pub mapping: Vec<(MultisetPermutation, MultisetPermutation)>,
}

impl BijectionCheck {
    pub fn is_bijective(&self) -> bool {
        self.images_in_codomain
            && self.image_size == self.domain_size
            && self.image_size == self.codomain_size
    }
}

/// Applies the bijection to every element of `A` and compares against `A′`.
/// The mapping itself is kept only when `keep_mapping` is set.
pub fn check_bijection(n: u32, mu: &Composition, keep_mapping: bool) -> Result<BijectionCheck> {
    check_bijection_domain(n, mu)?;
    let mut image = HashSet::new();
    let mut domain_size = 0u64;
    let mut images_in_codomain = true;
    let mut mapping = Vec::new();
    for w in filtered_permutations(mu, n - 1) {
        domain_size += 1;
        let s = sigma_bijection(&w, n, mu)?;
        if !s.hits(n - 2) {
            images_in_codomain = false;
        }
        if keep_mapping {
            mapping.push((w, s.clone()));
        }
        image.insert(s);
    }
    let codomain_size = filtered_permutations(mu, n - 2).count() as u64;
    Ok(BijectionCheck {
        domain_size,
        codomain_size,
        image_size: image.len() as u64,
        images_in_codomain,
        mapping,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec())
    }

    fn perm(p: &[u32]) -> MultisetPermutation {
        MultisetPermutation::new(p.to_vec())
    }

    // brute force over all m-tuples bounded by k
    fn brute_compositions(m: usize, k: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut v = vec![0u32; m];
        loop {
            if comp(&v).total() == k {
                out.push(v.clone());
            }
            let mut i = 0;
            loop {
                if i == m {
                    return out;
                }
                v[i] += 1;
                if v[i] <= k {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn composition_examples() {
        let c22: Vec<_> = compositions(2, 2)
            .unwrap()
            .into_iter()
            .map(|c| c.parts().to_vec())
            .collect();
        assert_eq!(c22, vec![vec![2, 0], vec![0, 1]]);
        let c33: Vec<_> = compositions(3, 3)
            .unwrap()
            .into_iter()
            .map(|c| c.parts().to_vec())
            .collect();
        assert_eq!(c33, vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(compositions(4, 4).unwrap().len(), 5);
        assert!(compositions(0, 3).is_err());
    }

    #[test]
    fn compositions_match_brute_force_in_colex_order() {
        for m in 1..=6 {
            for k in 1..=9 {
                let mut brute = brute_compositions(m, k);
                // colex: compare from the last coordinate
                brute.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
                let got: Vec<_> = CompositionIter::new(m, k).map(|c| c.parts().to_vec()).collect();
                assert_eq!(got, brute, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&comp(&[2, 0])), BigInt::from(1));
        assert_eq!(multinomial(&comp(&[1, 1])), BigInt::from(2));
        assert_eq!(multinomial(&comp(&[2, 1])), BigInt::from(3));
    }

    // direct definition: pairs from 𝔓_{k1} × 𝔓_{k2}
    fn c_by_pairs(mu: &Composition, k1: u32, k2: u32) -> BigInt {
        let mut total = BigInt::zero();
        let m = k1 as usize;
        let Some(mu) = mu.resized(m) else { return total };
        for p in CompositionIter::new(k1 as usize, k1) {
            for q in CompositionIter::new(k2 as usize, k2) {
                let q = q.resized(m).unwrap();
                let sum: Vec<u32> = p.parts().iter().zip(q.parts()).map(|(a, b)| a + b).collect();
                if sum == mu.parts() {
                    total += multinomial(&p) * multinomial(&q);
                }
            }
        }
        total
    }

    #[test]
    fn c_coefficient_examples() {
        assert_eq!(c_coefficient(&comp(&[4, 0, 0]), 3, 1).unwrap(), BigInt::from(1));
        assert_eq!(c_coefficient(&comp(&[2, 1, 0]), 3, 1).unwrap(), BigInt::from(2));
        assert_eq!(c_coefficient(&comp(&[1, 0, 1]), 2, 2).unwrap(), BigInt::from(0));
        assert!(c_coefficient(&comp(&[1, 0, 1]), 3, 2).is_err());
        assert!(c_coefficient(&comp(&[2, 1]), 1, 3).is_err());
    }

    #[test]
    fn c_coefficient_matches_pair_enumeration() {
        for k1 in 1..=7u32 {
            for k2 in 1..=k1 {
                for mu in CompositionIter::new(k1 as usize, k1 + k2) {
                    assert_eq!(c_coefficient(&mu, k1, k2).unwrap(), c_by_pairs(&mu, k1, k2));
                }
            }
        }
    }

    #[test]
    fn permutation_examples() {
        let p = multiset_permutations(&comp(&[2, 1])).unwrap();
        assert_eq!(p, vec![perm(&[1, 1, 2]), perm(&[1, 2, 1]), perm(&[2, 1, 1])]);
        assert_eq!(
            multiset_permutations(&comp(&[0, 2])).unwrap(),
            vec![perm(&[2, 2])]
        );
        assert_eq!(
            multiset_permutations(&comp(&[2, 0, 1])).unwrap(),
            vec![perm(&[1, 1, 3]), perm(&[1, 3, 1]), perm(&[3, 1, 1])]
        );
        assert!(multiset_permutations(&comp(&[0, 0])).is_err());
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(perm(&[1, 2, 1]).partial_sums(), vec![1, 3, 4]);
        assert_eq!(perm(&[2, 1, 1]).partial_sums(), vec![2, 3, 4]);
        assert_eq!(perm(&[4]).partial_sums(), vec![4]);
    }

    #[test]
    fn filtered_examples() {
        let mu = comp(&[2, 1, 0]);
        assert_eq!(
            filtered_permutation_set(&mu, 3),
            vec![perm(&[1, 2, 1]), perm(&[2, 1, 1])]
        );
        assert_eq!(
            filtered_permutation_set(&mu, 2),
            vec![perm(&[1, 1, 2]), perm(&[2, 1, 1])]
        );
        assert!(filtered_permutation_set(&mu, 5).is_empty());
        assert_eq!(count_hitting(&mu, 3), BigInt::from(2));
        assert_eq!(count_hitting(&mu, 5), BigInt::from(0));
    }

    #[test]
    fn sigma_examples() {
        let mu = comp(&[2, 1, 0]);
        assert_eq!(
            sigma_bijection(&perm(&[1, 2, 1]), 4, &mu).unwrap(),
            perm(&[2, 1, 1])
        );
        assert_eq!(
            sigma_bijection(&perm(&[2, 1, 1]), 4, &mu).unwrap(),
            perm(&[1, 1, 2])
        );
        let check = check_bijection(4, &mu, true).unwrap();
        assert!(check.is_bijective());
        assert_eq!((check.domain_size, check.codomain_size), (2, 2));
    }

    #[test]
    fn sigma_rejects_bad_input() {
        let mu = comp(&[2, 1, 0]);
        // (1,1,2) has partial sums 1,2,4: not in A
        assert!(sigma_bijection(&perm(&[1, 1, 2]), 4, &mu).is_err());
        assert!(sigma_bijection(&perm(&[1, 2, 1]), 3, &mu).is_err());
        assert!(sigma_bijection(&perm(&[2, 2]), 4, &comp(&[0, 2, 0])).is_err());
        assert!(sigma_bijection(&perm(&[1, 1, 1, 1]), 4, &mu).is_err());
    }

    #[test]
    fn sigma_is_bijective_small_n() {
        for n in 4..=8u32 {
            for mu in CompositionIter::new(n as usize - 1, 2 * n - 4).filter(|m| m.weight() >= n - 1) {
                let check = check_bijection(n, &mu, false).unwrap();
                assert!(check.is_bijective(), "n={n} μ={mu} {check:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn permutation_count_is_multinomial(parts in prop::collection::vec(0u32..4, 1..5)) {
            let r = Composition::new(parts);
            prop_assume!(r.weight() > 0);
            let perms = multiset_permutations(&r).unwrap();
            prop_assert_eq!(BigInt::from(perms.len()), multinomial(&r));
            for w in perms.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            for w in &perms {
                let s = w.partial_sums();
                prop_assert!(s.windows(2).all(|x| x[0] < x[1]));
                prop_assert_eq!(*s.last().unwrap(), r.total());
            }
        }

        #[test]
        fn lattice_count_matches_enumeration(parts in prop::collection::vec(0u32..4, 1..5), target in 1u32..12) {
            let r = Composition::new(parts);
            prop_assume!(r.weight() > 0);
            let listed = filtered_permutations(&r, target).count();
            prop_assert_eq!(count_hitting(&r, target), BigInt::from(listed));
        }
    }
}
