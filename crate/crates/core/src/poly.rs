//! Sparse jet monomials and polynomials with exact coefficients.
//!
//! Monomials are ordered by total degree, then by order of derivatives, then
//! by exponent vector compared from the highest derivative order downward
//! (larger exponent first). Polynomials iterate and print in that order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

/// Monomial `x0^e0 * x1^e1 * ...` stored densely by derivative order with
/// trailing zero exponents trimmed, so the representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct JetMonomial {
    exps: Vec<u32>,
}

impl JetMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(order: usize) -> Self {
        Self::var_pow(order, 1)
    }

    pub fn var_pow(order: usize, exp: u32) -> Self {
        let mut m = Self::one();
        m.set_exponent(order, exp);
        m
    }

    /// Builds a monomial from `(order, exponent)` pairs; repeated orders add up.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut m = Self::one();
        for (r, e) in pairs {
            let cur = m.exponent(r);
            m.set_exponent(r, cur + e);
        }
        m
    }

    /// Product of the variables `x_{orders[0]} * x_{orders[1]} * ...`.
    pub fn product_of(orders: &[usize]) -> Self {
        Self::from_pairs(orders.iter().map(|&r| (r, 1)))
    }

    pub fn exponent(&self, order: usize) -> u32 {
        self.exps.get(order).copied().unwrap_or(0)
    }

    fn set_exponent(&mut self, order: usize, exp: u32) {
        if exp == 0 {
            if order < self.exps.len() {
                self.exps[order] = 0;
                self.trim();
            }
            return;
        }
        if order >= self.exps.len() {
            self.exps.resize(order + 1, 0);
        }
        self.exps[order] = exp;
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Nonzero `(order, exponent)` pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(r, &e)| (r, e))
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Order of derivatives: `Σ r·e`.
    pub fn sd(&self) -> u32 {
        self.exps.iter().enumerate().map(|(r, &e)| r as u32 * e).sum()
    }

    /// Highest derivative order present, `None` for the constant monomial.
    pub fn max_order(&self) -> Option<usize> {
        self.exps.len().checked_sub(1)
    }

    /// Splits off the `x0` exponent.
    pub fn split_x0(&self) -> (u32, JetMonomial) {
        let mut rest = self.clone();
        rest.set_exponent(0, 0);
        (self.exponent(0), rest)
    }

    pub fn mul(&self, other: &JetMonomial) -> JetMonomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (slot, e) in exps.iter_mut().zip(&short.exps) {
            *slot += e;
        }
        JetMonomial { exps }
    }

    /// `self / x_order`, or `None` if `x_order` does not divide `self`.
    pub fn div_var(&self, order: usize) -> Option<JetMonomial> {
        let e = self.exponent(order);
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.set_exponent(order, e - 1);
        Some(m)
    }

    /// The sequence of variable orders with multiplicity, highest first.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (r, e) in self.iter().collect::<Vec<_>>().into_iter().rev() {
            out.extend(std::iter::repeat(r).take(e as usize));
        }
        out
    }
}

impl Ord for JetMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.sd().cmp(&other.sd()))
            .then_with(|| {
                let len = self.exps.len().max(other.exps.len());
                for r in (0..len).rev() {
                    let (a, b) = (self.exponent(r), other.exponent(r));
                    if a != b {
                        return b.cmp(&a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for JetMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for JetMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::text::format_monomial(self))
    }
}

/// Polynomial in jet variables: a map from monomial to nonzero coefficient.
/// The empty map is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct JetPolynomial {
    terms: BTreeMap<JetMonomial, Rational>,
}

impl JetPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(JetMonomial::one(), c)
    }

    pub fn term(m: JetMonomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: JetMonomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn var(order: usize) -> Self {
        Self::monomial(JetMonomial::var(order))
    }

    pub fn from_terms<I: IntoIterator<Item = (JetMonomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place, keeping the canonical form.
    pub fn add_term(&mut self, m: JetMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&JetMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &JetMonomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &JetMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> JetPolynomial {
        if c.is_zero() {
            return Self::zero();
        }
        JetPolynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &JetMonomial) -> JetPolynomial {
        JetPolynomial {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// Maximal total degree. Rejects the zero polynomial.
    pub fn degree(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(JetMonomial::degree)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Order of derivatives: maximum of the monomial values.
    pub fn sd(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(JetMonomial::sd)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Highest derivative order occurring, `None` for constants and zero.
    pub fn max_order(&self) -> Option<usize> {
        self.terms.keys().filter_map(JetMonomial::max_order).max()
    }

    /// Largest exponent of `x_order` over all terms.
    pub fn degree_in(&self, order: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(order)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(JetMonomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&JetMonomial) -> bool) -> JetPolynomial {
        JetPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> JetPolynomial {
        self.filter(|m| m.degree() == d)
    }

    /// Terms whose order of derivatives is exactly `l`.
    pub fn sd_component(&self, l: u32) -> JetPolynomial {
        self.filter(|m| m.sd() == l)
    }
}

impl std::fmt::Debug for JetPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::text::format_poly(self))
    }
}

impl std::fmt::Display for JetPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::text::format_poly(self))
    }
}

impl<'a> Add<&'a JetPolynomial> for &'a JetPolynomial {
    type Output = JetPolynomial;

    fn add(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for JetPolynomial {
    type Output = JetPolynomial;

    fn add(mut self, rhs: JetPolynomial) -> JetPolynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Sub<&'a JetPolynomial> for &'a JetPolynomial {
    type Output = JetPolynomial;

    fn sub(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for JetPolynomial {
    type Output = JetPolynomial;

    fn sub(self, rhs: JetPolynomial) -> JetPolynomial {
        &self - &rhs
    }
}

impl Neg for JetPolynomial {
    type Output = JetPolynomial;

    fn neg(self) -> JetPolynomial {
        JetPolynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a JetPolynomial> for &'a JetPolynomial {
    type Output = JetPolynomial;

    fn mul(self, rhs: &JetPolynomial) -> JetPolynomial {
        let mut out = JetPolynomial::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Mul for JetPolynomial {
    type Output = JetPolynomial;

    fn mul(self, rhs: JetPolynomial) -> JetPolynomial {
        &self * &rhs
    }
}
