//! Inversion expansions and the compatibility relation.
//!
//! Substituting the jets of `1/x` into a jet polynomial turns `x0` into
//! `x0^{-1}` and each `xk` (`k ≥ 1`) into the Faà di Bruno expansion
//!
//! ```text
//! (1/x)^{(k)} = Σ_{p ∈ 𝔓_k} c_p · x1^{p_1} ⋯ xk^{p_k} · x0^{-(|p|+1)},
//! c_p = k! (−1)^{|p|} / ((1!)^{p_1} ⋯ (k!)^{p_k}) · |p|! / (p_1! ⋯ p_k!).
//! ```
//!
//! `ρ1 ∼_n ρ2` holds when `x0^n` times the inversion expansion of `ρ1` is the
//! polynomial `ρ2`; `ρ1` belongs to `P_n` exactly when such a `ρ2` exists.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{c_coefficient, multinomial, CompositionIter};
use crate::laurent::{LaurentExpansion, LaurentKey};
use crate::poly::{JetMonomial, JetPolynomial};
use crate::rational::{factorial, from_bigint, int, Rational};
use crate::{invalid, Error, Result};

/// Integer-coefficient numerators of a monomial's inversion expansion. For a
/// monomial of degree `d`, a numerator `N` carries the power `x0^{-(d + deg N)}`.
pub type MonomialExpansion = Arc<Vec<(JetMonomial, BigInt)>>;

/// Coefficient `c_p` of the numerator `x^p` in `(1/x)^{(k)}`.
pub fn faa_di_bruno_coefficient(k: u32, p: &crate::Composition) -> BigInt {
    let mut denom = BigInt::one();
    for (i, &pi) in p.parts().iter().enumerate() {
        denom *= factorial(i as u32 + 1).pow(pi);
    }
    let sign = if p.weight() % 2 == 0 { 1 } else { -1 };
    factorial(k) * multinomial(p) * sign / denom
}

fn composition_monomial(p: &crate::Composition) -> JetMonomial {
    JetMonomial::from_pairs(
        p.parts()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i + 1, e)),
    )
}

/// Memoizing expander. Each instance owns its tables, so concurrent tasks
/// use one engine each.
#[derive(Default)]
pub struct InversionEngine {
    derivative: Vec<MonomialExpansion>,
    monomials: HashMap<JetMonomial, MonomialExpansion>,
}

impl InversionEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Numerators of `(1/x)^{(k)}`; `k = 0` gives the single numerator `1`.
    pub fn derivative_terms(&mut self, k: usize) -> MonomialExpansion {
        while self.derivative.len() <= k {
            let j = self.derivative.len() as u32;
            let terms = if j == 0 {
                vec![(JetMonomial::one(), BigInt::one())]
            } else {
                CompositionIter::new(j as usize, j)
                    .map(|p| (composition_monomial(&p), faa_di_bruno_coefficient(j, &p)))
                    .collect()
            };
            self.derivative.push(Arc::new(terms));
        }
        self.derivative[k].clone()
    }

    /// Expansion of a single monomial. `x0` factors only shift the power, so
    /// results are cached on the `x0`-free part.
    pub fn monomial_terms(&mut self, m: &JetMonomial) -> MonomialExpansion {
        let (_, rest) = m.split_x0();
        if let Some(hit) = self.monomials.get(&rest) {
            return hit.clone();
        }
        let result = match rest.max_order() {
            None => Arc::new(vec![(JetMonomial::one(), BigInt::one())]),
            Some(k) => {
                let sub = rest.div_var(k).expect("max order divides");
                let left = self.monomial_terms(&sub);
                let right = self.derivative_terms(k);
                let mut acc: HashMap<JetMonomial, BigInt> =
                    HashMap::with_capacity(left.len() * right.len().min(8));
                for (a, ca) in left.iter() {
                    for (b, cb) in right.iter() {
                        *acc.entry(a.mul(b)).or_insert_with(BigInt::zero) += ca * cb;
                    }
                }
                Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            }
        };
        self.monomials.insert(rest, result.clone());
        result
    }

    pub fn expand(&mut self, rho: &JetPolynomial) -> LaurentExpansion {
        let mut out = LaurentExpansion::zero();
        for (m, c) in rho.terms() {
            let d = m.degree() as i64;
            for (num, coeff) in self.monomial_terms(m).iter() {
                let power = -(d + num.degree() as i64);
                out.add_term(
                    LaurentKey::new(num.clone(), power),
                    c * from_bigint(coeff.clone()),
                );
            }
        }
        out
    }
}

/// Faà di Bruno expansion of `(1/x)^{(k)}`.
pub fn inverse_derivative_expansion(k: u32) -> Result<LaurentExpansion> {
    if k < 1 {
        return Err(invalid("derivative order must be at least 1"));
    }
    let mut out = LaurentExpansion::zero();
    for p in CompositionIter::new(k as usize, k) {
        out.add_term(
            LaurentKey::new(composition_monomial(&p), -(p.weight() as i64 + 1)),
            from_bigint(faa_di_bruno_coefficient(k, &p)),
        );
    }
    Ok(out)
}

/// Closed form of `(1/x)^{(k1)} · (1/x)^{(k2)}` through `C_{μ,k1,k2}`:
/// `Σ_{μ ∈ 𝔓_{k1,k1+k2}} c_μ · x^μ · x0^{-(|μ|+2)}` with
/// `c_μ = k1! k2! (−1)^{|μ|} / ((1!)^{μ_1} ⋯ (k1!)^{μ_{k1}}) · C_{μ,k1,k2}`.
pub fn product_expansion(k1: u32, k2: u32) -> Result<LaurentExpansion> {
    if k2 < 1 || k1 < k2 {
        return Err(invalid(format!("need k1 >= k2 >= 1, got k1={k1}, k2={k2}")));
    }
    let mut out = LaurentExpansion::zero();
    let scale = factorial(k1) * factorial(k2);
    for mu in CompositionIter::new(k1 as usize, k1 + k2) {
        let c = c_coefficient(&mu, k1, k2)?;
        if c.is_zero() {
            continue;
        }
        let mut denom = BigInt::one();
        for (i, &m) in mu.parts().iter().enumerate() {
            denom *= factorial(i as u32 + 1).pow(m);
        }
        let sign = if mu.weight() % 2 == 0 { 1 } else { -1 };
        let coeff = Rational::new(&scale * c * sign, denom);
        out.add_term(
            LaurentKey::new(composition_monomial(&mu), -(mu.weight() as i64 + 2)),
            coeff,
        );
    }
    Ok(out)
}

/// Expansion of `ρ` evaluated on the jets of `1/x`.
pub fn inversion_expansion(rho: &JetPolynomial) -> LaurentExpansion {
    InversionEngine::new().expand(rho)
}

/// Result of the partner search at level `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `ρ ∈ P_n` with the unique `ρ2` such that `ρ ∼_n ρ2`.
    Member(JetPolynomial),
    /// The inversion expansion reaches `x0^{min_x0_power}` with
    /// `min_x0_power < −n`; `witness` is one term attaining it.
    NotAMember {
        min_x0_power: i64,
        witness: (LaurentKey, Rational),
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn partner(&self) -> Option<&JetPolynomial> {
        match self {
            Membership::Member(p) => Some(p),
            Membership::NotAMember { .. } => None,
        }
    }
}

/// `ρ2 = x0^n · inversion(ρ1)` if it is a polynomial.
pub fn partner(rho: &JetPolynomial, n: u32) -> Result<Membership> {
    partner_with(&mut InversionEngine::new(), rho, n)
}

pub fn partner_with(engine: &mut InversionEngine, rho: &JetPolynomial, n: u32) -> Result<Membership> {
    if rho.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let expansion = engine.expand(rho);
    let (key, c) = expansion
        .lowest_term()
        .expect("inversion is injective, nonzero input has nonzero expansion");
    if key.x0_power < -(n as i64) {
        return Ok(Membership::NotAMember {
            min_x0_power: key.x0_power,
            witness: (key.clone(), c.clone()),
        });
    }
    let shifted = expansion.shift(n as i64);
    Ok(Membership::Member(
        shifted.to_polynomial().expect("all powers are nonnegative"),
    ))
}

/// A checked pair `ρ1 ∼_n ρ2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityWitness {
    pub n: u32,
    pub rho1: JetPolynomial,
    pub rho2: JetPolynomial,
}

impl CompatibilityWitness {
    /// Builds the witness for a member of `P_n`, `None` otherwise.
    pub fn for_member(rho1: &JetPolynomial, n: u32) -> Result<Option<Self>> {
        Ok(match partner(rho1, n)? {
            Membership::Member(rho2) => Some(CompatibilityWitness {
                n,
                rho1: rho1.clone(),
                rho2,
            }),
            Membership::NotAMember { .. } => None,
        })
    }

    /// Checks the relation in both directions.
    pub fn verify(&self) -> bool {
        let forward = inversion_expansion(&self.rho1)
            .shift(self.n as i64)
            .to_polynomial();
        let backward = inversion_expansion(&self.rho2)
            .shift(self.n as i64)
            .to_polynomial();
        forward.as_ref() == Some(&self.rho2) && backward.as_ref() == Some(&self.rho1)
    }
}

/// Total derivative: `xr ↦ x(r+1)` extended by the product rule.
pub fn derive(rho: &JetPolynomial) -> JetPolynomial {
    let mut out = JetPolynomial::zero();
    for (m, c) in rho.terms() {
        for (r, e) in m.iter() {
            let raised = m
                .div_var(r)
                .expect("variable present")
                .mul(&JetMonomial::var(r + 1));
            out.add_term(raised, c * int(e as i64));
        }
    }
    out
}
