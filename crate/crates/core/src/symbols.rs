//! Shifted m-symbols, κ-sequences and the N-function.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{dominance_compare, Multipartition, Partition, RationalSeq, Verdict};
use crate::rational::Rational;

/// The shifted m-symbol of a multipartition: one weakly increasing row per
/// component, row `i` built from `λ^{i+1}` and `m^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Symbol {
    pub rows: Vec<Vec<Rational>>,
    pub m: Vec<Rational>,
    pub s: i64,
    pub source: Multipartition,
}

/// All symbol entries merged in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct KappaSequence {
    pub entries: RationalSeq,
}

impl KappaSequence {
    pub fn entries(&self) -> &[Rational] {
        self.entries.entries()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn compare(&self, other: &KappaSequence) -> Verdict {
        dominance_compare(self.entries(), other.entries())
    }
}

impl std::fmt::Display for KappaSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.entries.fmt(f)
    }
}

fn check_level(lambda: &Multipartition, m: &[Rational]) -> Result<()> {
    if lambda.level() != m.len() {
        return Err(Error::LevelMismatch { expected: m.len(), got: lambda.level() });
    }
    Ok(())
}

/// `hc^i = h(λ^{i+1}) − m^i` for every row.
fn row_charges(lambda: &Multipartition, m: &[Rational]) -> Vec<Rational> {
    lambda
        .components()
        .iter()
        .zip(m)
        .map(|(p, &mi)| Rational::from(p.height()) - mi)
        .collect()
}

/// `hc^λ = max_i hc^i`.
pub fn hc(lambda: &Multipartition, m: &[Rational]) -> Rational {
    row_charges(lambda, m).into_iter().max().expect("level is at least 1")
}

/// Smallest integer `s` with `s ≥ hc^λ + 1`.
pub fn min_size(lambda: &Multipartition, m: &[Rational]) -> i64 {
    (hc(lambda, m) + 1).ceil()
}

/// The largest [`min_size`] over a family of multipartitions.
pub fn min_size_all<'a>(family: impl IntoIterator<Item = &'a Multipartition>, m: &[Rational]) -> i64 {
    family.into_iter().map(|l| min_size(l, m)).max().unwrap_or(1).max(1)
}

/// First-row β-numbers of `p` in increasing order:
/// `(p_h, …, p_j − j + h, …, p_1 − 1 + h)`.
fn increasing_beta(p: &Partition) -> Vec<i64> {
    let h = p.height() as i64;
    (1..=h).rev().map(|j| p.part(j as usize) as i64 - j + h).collect()
}

/// `β(t)` applied to the increasing β-numbers.
fn shifted_row(beta: &[i64], t: Rational) -> Vec<Rational> {
    if t < 1 {
        return beta.iter().map(|&b| Rational::from(b)).collect();
    }
    let whole = t.floor();
    let frac = t - whole;
    let seed = (0..whole).map(|k| frac + k);
    seed.chain(beta.iter().map(|&b| t + b)).collect()
}

pub fn shifted_symbol(lambda: &Multipartition, m: &[Rational], s: i64) -> Result<Symbol> {
    check_level(lambda, m)?;
    let min = min_size(lambda, m);
    if s < min {
        return Err(Error::SizeTooSmall { size: s, min });
    }
    let rows = lambda
        .components()
        .iter()
        .zip(row_charges(lambda, m))
        .map(|(p, hci)| {
            let t = Rational::from(s) - hci;
            if t.is_negative() {
                return Err(Error::SizeTooSmall { size: s, min });
            }
            Ok(shifted_row(&increasing_beta(p), t))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Symbol { rows, m: m.to_vec(), s, source: lambda.clone() })
}

impl Symbol {
    pub fn kappa(&self) -> KappaSequence {
        let all = self.rows.iter().flatten().copied().collect();
        KappaSequence { entries: RationalSeq::from_unsorted(all) }
    }
}

pub fn kappa(lambda: &Multipartition, m: &[Rational], s: i64) -> Result<KappaSequence> {
    Ok(shifted_symbol(lambda, m, s)?.kappa())
}

/// `ℓ Σ_i ([κ_i]+1)(2κ_i − [κ_i])/2` for a sequence of nonnegative entries.
pub fn n_value_of_seq(level: usize, entries: &[Rational]) -> Result<Rational> {
    let mut total = Rational::ZERO;
    for &k in entries {
        if k.is_negative() {
            return Err(Error::NegativeEntry(k));
        }
        let fl = k.floor();
        total += Rational::from(fl + 1) * (k * 2 - fl) / 2;
    }
    Ok(total * level as i64)
}

pub fn n_value(lambda: &Multipartition, m: &[Rational], s: i64) -> Result<Rational> {
    let k = kappa(lambda, m, s)?;
    n_value_of_seq(lambda.level(), k.entries())
}

/// Dominance comparison of `κ^s_m(λ)` and `κ^s_m(μ)`.
pub fn kappa_compare(
    lambda: &Multipartition,
    mu: &Multipartition,
    m: &[Rational],
    s: i64,
) -> Result<Verdict> {
    let a = kappa(lambda, m, s)?;
    let b = kappa(mu, m, s)?;
    Ok(a.compare(&b))
}
