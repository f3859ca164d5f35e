//! Laurent-type expansions: sums of `c · N · x0^e` where `N` is a monomial in
//! `x1, x2, ...` and `e` is any integer.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::poly::{JetMonomial, JetPolynomial};
use crate::rational::Rational;

/// Term key ordered by `x0` power ascending, then numerator monomial order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LaurentKey {
    pub x0_power: i64,
    pub numerator: JetMonomial,
}

impl LaurentKey {
    /// Panics if `numerator` involves `x0`.
    pub fn new(numerator: JetMonomial, x0_power: i64) -> Self {
        assert_eq!(numerator.exponent(0), 0, "numerator must not involve x0");
        LaurentKey { x0_power, numerator }
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentExpansion {
    terms: BTreeMap<LaurentKey, Rational>,
}

impl LaurentExpansion {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(numerator: JetMonomial, x0_power: i64, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(LaurentKey::new(numerator, x0_power), c);
        e
    }

    pub fn add_term(&mut self, key: LaurentKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&LaurentKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, numerator: &JetMonomial, x0_power: i64) -> Rational {
        self.terms
            .get(&LaurentKey::new(numerator.clone(), x0_power))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Smallest `x0` power, `None` for the empty expansion.
    pub fn min_x0_power(&self) -> Option<i64> {
        self.terms.keys().next().map(|k| k.x0_power)
    }

    /// The term attaining the smallest `x0` power (first in term order).
    pub fn lowest_term(&self) -> Option<(&LaurentKey, &Rational)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, c: &Rational) -> LaurentExpansion {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentExpansion {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Multiplies every term by `x0^shift`.
    pub fn shift(&self, shift: i64) -> LaurentExpansion {
        LaurentExpansion {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| {
                    (
                        LaurentKey {
                            x0_power: k.x0_power + shift,
                            numerator: k.numerator.clone(),
                        },
                        v.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Reads the expansion as a jet polynomial if no negative `x0` power occurs.
    pub fn to_polynomial(&self) -> Option<JetPolynomial> {
        if self.min_x0_power().is_some_and(|p| p < 0) {
            return None;
        }
        Some(JetPolynomial::from_terms(self.terms.iter().map(|(k, c)| {
            (
                k.numerator.mul(&JetMonomial::var_pow(0, k.x0_power as u32)),
                c.clone(),
            )
        })))
    }

    /// Embeds a polynomial, moving `x0` exponents into the power slot.
    pub fn from_polynomial(p: &JetPolynomial) -> LaurentExpansion {
        let mut out = Self::zero();
        for (m, c) in p.terms() {
            let (e0, rest) = m.split_x0();
            out.add_term(LaurentKey::new(rest, e0 as i64), c.clone());
        }
        out
    }
}

impl std::fmt::Debug for LaurentExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::text::format_laurent(self))
    }
}

impl<'a> Add<&'a LaurentExpansion> for &'a LaurentExpansion {
    type Output = LaurentExpansion;

    fn add(self, rhs: &LaurentExpansion) -> LaurentExpansion {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentExpansion> for &'a LaurentExpansion {
    type Output = LaurentExpansion;

    fn mul(self, rhs: &LaurentExpansion) -> LaurentExpansion {
        let mut out = LaurentExpansion::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(
                    LaurentKey {
                        x0_power: a.x0_power + b.x0_power,
                        numerator: a.numerator.mul(&b.numerator),
                    },
                    ca * cb,
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn product_and_min_power() {
        let a = LaurentExpansion::term(JetMonomial::var(1), -2, int(-1));
        let sq = &a * &a;
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.min_x0_power(), Some(-4));
        assert_eq!(sq.coefficient(&JetMonomial::var_pow(1, 2), -4), int(1));
        assert!(sq.to_polynomial().is_none());
        let p = sq.shift(5).to_polynomial().unwrap();
        assert_eq!(
            p,
            JetPolynomial::monomial(JetMonomial::from_pairs([(0, 1), (1, 2)]))
        );
    }

    #[test]
    fn cancellation_is_canonical() {
        let a = LaurentExpansion::term(JetMonomial::var(2), -3, int(2));
        let b = a.scale(&int(-1));
        assert!((&a + &b).is_zero());
        assert_eq!((&a + &b).min_x0_power(), None);
    }

    #[test]
    #[should_panic]
    fn numerator_rejects_x0() {
        LaurentKey::new(JetMonomial::var(0), 1);
    }
}
