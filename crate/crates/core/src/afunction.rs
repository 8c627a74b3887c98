//! The a-function, as minus the q-valuation of Schur elements of cyclotomic
//! Hecke algebras, and the c-comparison through the N-function.
//!
//! With `Q_j = ζ^j q^{r m^j}` and Hecke parameter `q^r`, the Schur element of
//! `λ` is (up to a unit) `q^{−r N(λ̄)}` times a product over the cells
//! `(a, b)` of each `λ^i` and every component `j` of factors
//! `q^{e} − 1`, where `e = r·h` for `i = j` and `e = r(h + m^i − m^j)`
//! otherwise, with the generalized hook `h = λ^i_a − b + (λ^j)'_b − a + 1`.
//! A factor `q^e − 1` has valuation `min(e, 0)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{Multipartition, Verdict};
use crate::rational::Rational;
use crate::symbols::{n_value, shifted_symbol};

/// How a-values are normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ANormalization {
    /// The bare Schur-element valuation; the empty multipartition has a = 0.
    Intrinsic,
    /// Shifted by `|r|` times the pair-minimum sum of the symbol of the empty
    /// multipartition at this size, so that a equals the pair-minimum sum of
    /// the symbol of `λ` itself when `r = 1`.
    SymbolSize(i64),
}

/// Parameters `(m, r)` of an a-function evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AContext {
    pub m: Vec<Rational>,
    pub r: Rational,
    pub normalization: ANormalization,
}

impl AContext {
    pub fn new(m: Vec<Rational>, r: Rational, normalization: ANormalization) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroR);
        }
        Ok(AContext { m, r, normalization })
    }

    pub fn intrinsic(m: Vec<Rational>, r: Rational) -> Result<Self> {
        AContext::new(m, r, ANormalization::Intrinsic)
    }

    /// Whether `r m^i ∈ Z` for every `i`.
    pub fn is_hecke_integral(&self) -> bool {
        self.m.iter().all(|&mi| (mi * self.r).is_integer())
    }

    fn negated(&self) -> AContext {
        AContext {
            m: self.m.iter().map(|&x| -x).collect(),
            r: -self.r,
            normalization: self.normalization,
        }
    }
}

/// `−val_q` of the Schur element, computed factor by factor; valid for any
/// sign of `r`.
pub(crate) fn schur_neg_valuation(lambda: &Multipartition, m: &[Rational], r: Rational) -> Rational {
    let n = lambda.weight() as i64;
    let merged = lambda.merged_parts();
    let mut val = -r * merged.n_statistic() as i64 - Rational::from(n) * r.min(Rational::ZERO);
    let conj: Vec<_> = lambda.components().iter().map(|p| p.transpose()).collect();
    for (i, li) in lambda.components().iter().enumerate() {
        for (a, b) in li.cells() {
            let arm = li.part(a) as i64 - b as i64;
            for (j, cj) in conj.iter().enumerate() {
                let hook = arm + cj.part(b) as i64 - a as i64 + 1;
                let e = if i == j { r * hook } else { r * (m[i] - m[j] + hook) };
                val += e.min(Rational::ZERO);
            }
        }
    }
    -val
}

/// Sum of `min(x, y)` over unordered pairs of entries.
pub(crate) fn pair_min_sum(entries: &[Rational]) -> Rational {
    let mut sorted = entries.to_vec();
    sorted.sort_unstable();
    let len = sorted.len() as i64;
    sorted.iter().enumerate().map(|(k, &x)| x * (len - 1 - k as i64)).sum()
}

/// Pair-minimum sum of all entries of the shifted symbol of `λ`.
pub fn symbol_pair_min(lambda: &Multipartition, m: &[Rational], s: i64) -> Result<Rational> {
    let sym = shifted_symbol(lambda, m, s)?;
    let all: Vec<Rational> = sym.rows.iter().flatten().copied().collect();
    Ok(pair_min_sum(&all))
}

/// `a_{m,r}(λ)`; negative `r` goes through `a_{m,r}(λ) = a_{−m,−r}(ᵗλ)`.
pub fn a_value(lambda: &Multipartition, ctx: &AContext) -> Result<Rational> {
    if ctx.r.is_zero() {
        return Err(Error::ZeroR);
    }
    if lambda.level() != ctx.m.len() {
        return Err(Error::LevelMismatch { expected: ctx.m.len(), got: lambda.level() });
    }
    if ctx.r.is_negative() {
        return a_value(&lambda.transpose(), &ctx.negated());
    }
    let base = schur_neg_valuation(lambda, &ctx.m, ctx.r);
    match ctx.normalization {
        ANormalization::Intrinsic => Ok(base),
        ANormalization::SymbolSize(s) => {
            let empty = Multipartition::empty(lambda.level());
            Ok(base + ctx.r * symbol_pair_min(&empty, &ctx.m, s)?)
        }
    }
}

/// Compares `c(λ)` and `c(μ)` through the N-function: `Less` means
/// `c(λ) < c(μ)`.
pub fn c_compare(
    lambda: &Multipartition,
    mu: &Multipartition,
    ctx: &AContext,
    s: i64,
) -> Result<Verdict> {
    if ctx.r.is_zero() {
        return Err(Error::ZeroR);
    }
    let a = n_value(lambda, &ctx.m, s)?;
    let b = n_value(mu, &ctx.m, s)?;
    let v = match a.cmp(&b) {
        std::cmp::Ordering::Less => Verdict::Less,
        std::cmp::Ordering::Greater => Verdict::Greater,
        std::cmp::Ordering::Equal => Verdict::Equal,
    };
    Ok(if ctx.r.is_negative() { v.reverse() } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_multipartitions, partitions, Partition};
    use crate::rational::parse_list;
    use crate::symbols::kappa_compare;

    fn mp(s: &str) -> Multipartition {
        Multipartition::parse_json(s).unwrap()
    }

    fn q(s: &str) -> Vec<Rational> {
        parse_list(s).unwrap()
    }

    fn ctx4(m: &str) -> AContext {
        AContext::new(q(m), Rational::ONE, ANormalization::SymbolSize(4)).unwrap()
    }

    #[test]
    fn known_anchors() {
        let l = mp("[[],[3,2]]");
        let u = mp("[[2,2,1],[]]");
        assert_eq!(a_value(&l, &ctx4("1/2,0")).unwrap(), Rational::new(65, 2));
        assert_eq!(a_value(&u, &ctx4("1/2,0")).unwrap(), Rational::from(34));
        assert_eq!(a_value(&l, &ctx4("1,0")).unwrap(), Rational::from(40));
        assert_eq!(a_value(&u, &ctx4("1,0")).unwrap(), Rational::from(39));
    }

    #[test]
    fn intrinsic_values() {
        let ctx = |m: &str| AContext::intrinsic(q(m), Rational::ONE).unwrap();
        assert_eq!(a_value(&mp("[[],[3,2]]"), &ctx("1/2,0")).unwrap(), Rational::new(9, 2));
        assert_eq!(a_value(&mp("[[2,2,1],[]]"), &ctx("1,0")).unwrap(), Rational::from(5));
        assert_eq!(a_value(&mp("[[1]]"), &ctx("0")).unwrap(), Rational::ZERO);
        assert_eq!(a_value(&mp("[[],[]]"), &ctx("1/2,0")).unwrap(), Rational::ZERO);
    }

    #[test]
    fn symbol_normalization_is_a_shift() {
        // a_intrinsic(λ) + A_s(∅) = A_s(λ) for the pair-minimum sum A_s
        for (level, m) in [(2, "1/2,0"), (2, "1,0"), (2, "1/3,0"), (3, "1/2,1/3,0")] {
            let m = q(m);
            for n in 0..=3 {
                for lam in enumerate_multipartitions(level, n) {
                    for s in [6, 7] {
                        let ctx = AContext::new(m.clone(), Rational::ONE, ANormalization::SymbolSize(s)).unwrap();
                        assert_eq!(a_value(&lam, &ctx).unwrap(), symbol_pair_min(&lam, &m, s).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn zero_r_is_rejected() {
        assert_eq!(AContext::intrinsic(q("0,0"), Rational::ZERO), Err(Error::ZeroR));
        let bad = AContext { m: q("0,0"), r: Rational::ZERO, normalization: ANormalization::Intrinsic };
        assert_eq!(a_value(&mp("[[1],[]]"), &bad), Err(Error::ZeroR));
    }

    #[test]
    fn transpose_rule_holds_for_direct_valuation() {
        for m in ["1/2,0", "1,0", "0,0", "-2/3,1"] {
            let m = q(m);
            let neg: Vec<_> = m.iter().map(|&x| -x).collect();
            for r in [Rational::ONE, Rational::new(3, 2)] {
                for n in 0..=3 {
                    for lam in enumerate_multipartitions(2, n) {
                        let direct = schur_neg_valuation(&lam, &m, -r);
                        assert_eq!(direct, schur_neg_valuation(&lam.transpose(), &neg, r));
                        let ctx = AContext::intrinsic(m.clone(), -r).unwrap();
                        assert_eq!(a_value(&lam, &ctx).unwrap(), direct);
                    }
                }
            }
        }
    }

    // Laurent-free integer polynomials, lowest degree first
    fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut rem = a.to_vec();
        let lead = *b.last().unwrap();
        let mut quot = vec![0; a.len() + 1 - b.len()];
        for k in (0..quot.len()).rev() {
            let c = rem[k + b.len() - 1] / lead;
            quot[k] = c;
            for (j, y) in b.iter().enumerate() {
                rem[k + j] -= c * y;
            }
        }
        assert!(rem.iter().all(|&x| x == 0), "inexact division");
        quot
    }

    fn x_pow_minus_one(k: usize) -> Vec<i64> {
        let mut v = vec![0; k + 1];
        v[0] = -1;
        v[k] = 1;
        v
    }

    fn valuation(p: &[i64]) -> usize {
        p.iter().position(|&c| c != 0).unwrap()
    }

    /// −val of P(x)/D_λ(x) with the hook-length generic degree.
    fn hook_oracle(lam: &Partition) -> i64 {
        let n = lam.weight() as usize;
        let mut poincare = vec![1];
        let mut num = vec![1];
        for i in 1..=n {
            poincare = mul(&poincare, &div_exact(&x_pow_minus_one(i), &[-1, 1]));
            num = mul(&num, &x_pow_minus_one(i));
        }
        let mut den = vec![1];
        for (r, c) in lam.cells() {
            den = mul(&den, &x_pow_minus_one(lam.hook(r, c) as usize));
        }
        let mut degree = div_exact(&num, &den);
        let shift = lam.n_statistic() as usize;
        let mut shifted = vec![0; shift];
        shifted.append(&mut degree);
        valuation(&shifted) as i64 - valuation(&poincare) as i64
    }

    #[test]
    fn level_one_matches_hook_formula() {
        for n in 0..=4 {
            for lam in partitions(n) {
                let expected = hook_oracle(&lam);
                for r in [1, 2] {
                    let ctx = AContext::intrinsic(q("0"), Rational::from(r)).unwrap();
                    let got = a_value(&Multipartition::new(vec![lam.clone()]), &ctx).unwrap();
                    assert_eq!(got, Rational::from(expected * r), "{lam}");
                }
            }
        }
    }

    #[test]
    fn kappa_dominance_reverses_a() {
        for m in ["0,0", "1/2,0", "1,0", "2,0"] {
            let ctx = AContext::intrinsic(q(m), Rational::ONE).unwrap();
            for n in 0..=3 {
                let all = enumerate_multipartitions(2, n);
                let s = crate::symbols::min_size_all(&all, &ctx.m);
                for a in &all {
                    for b in &all {
                        if kappa_compare(a, b, &ctx.m, s).unwrap() == Verdict::Less {
                            assert!(a_value(a, &ctx).unwrap() > a_value(b, &ctx).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn c_compare_examples() {
        let l = mp("[[],[3,2]]");
        let u = mp("[[2,2,1],[]]");
        let ctx = AContext::intrinsic(q("1,0"), Rational::ONE).unwrap();
        assert_eq!(c_compare(&l, &u, &ctx, 4).unwrap(), Verdict::Less);
        let ctx = AContext::intrinsic(q("9/10,0"), Rational::ONE).unwrap();
        assert_eq!(c_compare(&l, &u, &ctx, 4).unwrap(), Verdict::Less);
        assert_eq!(c_compare(&l, &l, &ctx, 4).unwrap(), Verdict::Equal);
        let neg = AContext::intrinsic(q("1,0"), -Rational::ONE).unwrap();
        assert_eq!(c_compare(&l, &u, &neg, 4).unwrap(), Verdict::Greater);
    }
}
