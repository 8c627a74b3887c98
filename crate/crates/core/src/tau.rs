//! Charged β-sets, the bijection τ_s and its inverse, ℓ-cores, J-hearts.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Multipartition, Partition, Permutation};
use crate::rational::{format_list, parse_list, Rational};

/// A charge `s = (s_0, …, s_{ℓ−1})` with `Σ s_i = 0` and `ℓ s_i ∈ Z`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct Charge(Vec<Rational>);

impl Charge {
    pub fn new(components: Vec<Rational>) -> Result<Self> {
        let l = components.len() as i64;
        if l == 0 {
            return Err(Error::MalformedCharge("empty charge".into()));
        }
        let sum: Rational = components.iter().sum();
        if !sum.is_zero() {
            return Err(Error::MalformedCharge(format!(
                "({}) sums to {sum}, not 0",
                format_list(&components)
            )));
        }
        if let Some(bad) = components.iter().find(|c| !(**c * l).is_integer()) {
            return Err(Error::MalformedCharge(format!("{bad} is not in (1/{l})Z")));
        }
        Ok(Charge(components))
    }

    pub fn from_ints(components: &[i64]) -> Result<Self> {
        Charge::new(components.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero(level: usize) -> Self {
        Charge(vec![Rational::ZERO; level])
    }

    pub fn parse(s: &str) -> Result<Self> {
        Charge::new(parse_list(s)?)
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    /// `s_i` for `0 ≤ i < ℓ`.
    pub fn get(&self, i: usize) -> Rational {
        self.0[i]
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    /// `s̄ = (−s_{ℓ−1}, …, −s_0)`.
    pub fn bar(&self) -> Charge {
        Charge(self.0.iter().rev().map(|&c| -c).collect())
    }

    /// `ℓ·max_i |s_i|`, an integer.
    fn spread(&self) -> i64 {
        let l = self.level() as i64;
        self.0.iter().map(|c| (c.abs() * l).numer()).max().unwrap_or(0)
    }

    /// Every charge of level `l` with integer components bounded by `bound`
    /// in absolute value, in lexicographic order.
    pub fn integral_grid(l: usize, bound: i64) -> Vec<Charge> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(l);
        fn rec(l: usize, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<Charge>) {
            if cur.len() + 1 == l {
                let last = -cur.iter().sum::<i64>();
                if last.abs() <= bound {
                    let mut v = cur.clone();
                    v.push(last);
                    out.push(Charge::from_ints(&v).expect("sums to zero"));
                }
                return;
            }
            for c in -bound..=bound {
                cur.push(c);
                rec(l, bound, cur, out);
                cur.pop();
            }
        }
        rec(l, bound, &mut cur, &mut out);
        out
    }
}

impl TryFrom<Vec<Rational>> for Charge {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        Charge::new(v)
    }
}

impl From<Charge> for Vec<Rational> {
    fn from(c: Charge) -> Self {
        c.0
    }
}

impl fmt::Debug for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_list(&self.0))
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_list(&self.0))
    }
}

/// The twisted action `s'_{i−1} = s_{w⁻¹(i)−1} + (w⁻¹(i) − i)/ℓ`.
pub fn act_charge(w: &Permutation, s: &Charge) -> Charge {
    let l = s.level();
    assert_eq!(w.degree(), l, "permutation degree must match the charge level");
    let inv = w.inverse();
    let comps = (1..=l)
        .map(|i| {
            let j = inv.apply(i);
            s.get(j - 1) + Rational::new(j as i64 - i as i64, l as i64)
        })
        .collect();
    Charge(comps)
}

/// First `k` entries of `β_c(p) = (p_1 + c, p_2 + c − 1, …)`.
pub fn beta_set(p: &Partition, charge: Rational, k: usize) -> Vec<Rational> {
    (1..=k).map(|j| charge + p.part(j) as i64 - j as i64 + 1).collect()
}

/// Intermediate data of a τ computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauTrace {
    /// Materialized prefix of `β_{s_{i−1}}(λ^i)` per component.
    pub betas: Vec<Vec<Rational>>,
    /// The same prefixes mapped to `ℓ(x−1)+i`.
    pub sets: Vec<Vec<i64>>,
    /// The certified prefix of `β_0(ρ)`.
    pub merged: Vec<i64>,
    pub rho: Partition,
}

fn check_residues(s: &Charge) -> Result<()> {
    let l = s.level() as i64;
    let mut seen = BTreeSet::new();
    for (i, c) in s.components().iter().enumerate() {
        let r = ((*c * l).numer() + i as i64 + 1).rem_euclid(l);
        if !seen.insert(r) {
            return Err(Error::MalformedCharge(format!(
                "components of ({s}) collide modulo {l} after dilation"
            )));
        }
    }
    Ok(())
}

pub fn tau_trace(s: &Charge, lambda: &Multipartition) -> Result<TauTrace> {
    let l = s.level();
    if lambda.level() != l {
        return Err(Error::LevelMismatch { expected: l, got: lambda.level() });
    }
    check_residues(s)?;
    let li = l as i64;
    let cutoff = lambda.weight() as usize + l * (s.spread() as usize + 1) + 1;

    let mut betas = Vec::with_capacity(l);
    let mut sets = Vec::with_capacity(l);
    for (idx, p) in lambda.components().iter().enumerate() {
        let beta = beta_set(p, s.get(idx), cutoff);
        let set: Vec<i64> = beta
            .iter()
            .map(|&x| ((x - 1) * li).to_integer().expect("ℓ·x is an integer") + idx as i64 + 1)
            .collect();
        betas.push(beta);
        sets.push(set);
    }

    // entries at or above the largest per-component minimum are complete
    let theta = sets.iter().map(|t| *t.last().expect("cutoff >= 1")).max().unwrap();
    let mut merged: Vec<i64> = sets.iter().flatten().copied().filter(|&v| v >= theta).collect();
    merged.sort_unstable_by(|a, b| b.cmp(a));

    // every component must have reached its arithmetic tail well above theta
    let tail_floor = lambda
        .components()
        .iter()
        .zip(&sets)
        .map(|(p, t)| t[p.height()])
        .min()
        .unwrap();
    let last = merged.len() as i64;
    if theta > tail_floor - li + 1 || merged.last().map(|&v| v + last - 1) != Some(0) {
        return Err(Error::InternalCutoff);
    }
    let parts: Vec<u32> = merged
        .iter()
        .enumerate()
        .map(|(j, &v)| (v + j as i64) as u32)
        .take_while(|&p| p > 0)
        .collect();
    let rho = Partition::new(parts).map_err(|_| Error::InternalCutoff)?;
    Ok(TauTrace { betas, sets, merged, rho })
}

/// `τ_s(λ)`: the partition whose `β_0` is the union of the dilated β-sets.
pub fn tau(s: &Charge, lambda: &Multipartition) -> Result<Partition> {
    Ok(tau_trace(s, lambda)?.rho)
}

/// The unique `(s, λ)` with integer charge and `τ_s(λ) = ρ`.
pub fn tau_inverse(l: usize, rho: &Partition) -> (Charge, Multipartition) {
    assert!(l >= 1);
    let li = l as i64;
    let size = rho.weight() as i64;
    let count = li * (2 * size + 2) + rho.height() as i64;
    let mut xs: Vec<Vec<i64>> = vec![Vec::new(); l];
    for j in 1..=count {
        let v = rho.part(j as usize) as i64 - j + 1;
        let i = (v - 1).rem_euclid(li) + 1;
        xs[(i - 1) as usize].push((v - i) / li + 1);
    }
    let mut charge = Vec::with_capacity(l);
    let mut comps = Vec::with_capacity(l);
    for x in &xs {
        let c = x.last().expect("every residue class is met") + x.len() as i64 - 1;
        let parts: Vec<u32> = x
            .iter()
            .enumerate()
            .map(|(j, &xj)| (xj - c + j as i64) as u32)
            .take_while(|&p| p > 0)
            .collect();
        charge.push(c);
        comps.push(Partition::new(parts).expect("β-numbers decrease"));
    }
    (Charge::from_ints(&charge).expect("β_0 has charge 0"), Multipartition::new(comps))
}

/// `ν_s = τ_s(∅)`, the ℓ-core attached to an integer charge.
pub fn ell_core(s: &Charge) -> Result<Partition> {
    if !s.is_integral() {
        return Err(Error::MalformedCharge(format!("({s}) is not integral")));
    }
    tau(s, &Multipartition::empty(s.level()))
}

/// A set `J ⊆ {0, …, ℓ−1}` of residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueSet {
    pub level: usize,
    pub residues: BTreeSet<usize>,
}

impl ResidueSet {
    pub fn new(level: usize, residues: impl IntoIterator<Item = usize>) -> Result<Self> {
        let residues: BTreeSet<usize> = residues.into_iter().collect();
        if let Some(&r) = residues.iter().find(|&&r| r >= level) {
            return Err(Error::Invalid(format!("residue {r} is not below {level}")));
        }
        Ok(ResidueSet { level, residues })
    }

    pub fn full(level: usize) -> Self {
        ResidueSet { level, residues: (0..level).collect() }
    }

    /// Parses `0,1`; the empty string is the empty set.
    pub fn parse(level: usize, s: &str) -> Result<Self> {
        let items = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad residue `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        ResidueSet::new(level, items)
    }

    pub fn contains(&self, r: usize) -> bool {
        self.residues.contains(&r)
    }

    /// Every subset of `{0, …, ℓ−1}`.
    pub fn all(level: usize) -> Vec<ResidueSet> {
        (0..1usize << level)
            .map(|mask| ResidueSet {
                level,
                residues: (0..level).filter(|b| mask >> b & 1 == 1).collect(),
            })
            .collect()
    }
}

/// Residue `(col − row) mod ℓ` of a cell.
pub fn cell_residue(row: usize, col: usize, l: usize) -> usize {
    (col as i64 - row as i64).rem_euclid(l as i64) as usize
}

/// Removes removable cells with residue in `J` until none is left.
pub fn j_heart(rho: &Partition, j: &ResidueSet) -> Partition {
    let mut cur = rho.clone();
    loop {
        let next = cur
            .removable_cells()
            .into_iter()
            .find(|&(r, c)| j.contains(cell_residue(r, c, j.level)));
        match next {
            Some((r, _)) => cur = cur.remove_cell(r),
            None => return cur,
        }
    }
}

pub fn j_class_eq(a: &Partition, b: &Partition, j: &ResidueSet) -> bool {
    j_heart(a, j) == j_heart(b, j)
}

/// The ℓ-core of `ρ` by repeatedly stripping rim hooks of length `ℓ`.
pub fn core_by_rim_hooks(rho: &Partition, l: u32) -> Partition {
    let mut cur = rho.clone();
    'outer: loop {
        for (r, c) in cur.cells().collect::<Vec<_>>() {
            if cur.hook(r, c) == l {
                let foot = cur.transpose().part(c) as usize;
                let mut parts = cur.parts().to_vec();
                for i in r..foot {
                    parts[i - 1] = cur.part(i + 1) - 1;
                }
                parts[foot - 1] = c as u32 - 1;
                cur = Partition::new(parts).unwrap();
                continue 'outer;
            }
        }
        return cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate_multipartitions, partitions};

    fn mp(s: &str) -> Multipartition {
        Multipartition::parse_json(s).unwrap()
    }

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn ch(v: &[i64]) -> Charge {
        Charge::from_ints(v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn beta_set_examples() {
        assert_eq!(beta_set(&p(&[2, 2, 1]), Rational::ONE, 6), ints(&[3, 2, 0, -2, -3, -4]));
        assert_eq!(beta_set(&p(&[]), Rational::from(-1), 4), ints(&[-1, -2, -3, -4]));
        assert_eq!(beta_set(&p(&[]), Rational::ZERO, 3), ints(&[0, -1, -2]));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&ch(&[1, -1]), &mp("[[2,2,1],[]]")).unwrap(), p(&[5, 4, 1, 1]));
        assert_eq!(tau(&ch(&[0, 0]), &mp("[[],[2,2,1]]")).unwrap(), p(&[4, 3, 1, 1, 1]));
        assert_eq!(tau(&ch(&[0, 0, 0]), &mp("[[],[],[]]")).unwrap(), p(&[]));
    }

    #[test]
    fn tau_trace_matches_worked_example() {
        let t = tau_trace(&ch(&[1, -1]), &mp("[[2,2,1],[]]")).unwrap();
        assert_eq!(t.sets[0][..5], [5, 3, -1, -5, -7]);
        assert_eq!(t.sets[1][..4], [-2, -4, -6, -8]);
        assert_eq!(t.merged[..9], [5, 3, -1, -2, -4, -5, -6, -7, -8]);
    }

    #[test]
    fn tau_inverse_examples() {
        assert_eq!(tau_inverse(2, &p(&[5, 4, 1, 1])), (ch(&[1, -1]), mp("[[2,2,1],[]]")));
        assert_eq!(tau_inverse(2, &p(&[])), (ch(&[0, 0]), mp("[[],[]]")));
        assert_eq!(tau_inverse(2, &p(&[1])), (ch(&[1, -1]), mp("[[],[]]")));
    }

    #[test]
    fn core_examples() {
        assert_eq!(ell_core(&ch(&[0, 0])).unwrap(), p(&[]));
        assert_eq!(ell_core(&ch(&[1, -1])).unwrap(), p(&[1]));
        // β_0 = (2, 0, −2, −3, …) by direct interleaving
        assert_eq!(ell_core(&ch(&[-1, 1])).unwrap(), p(&[2, 1]));
        let half = Charge::parse("1/2,-1/2").unwrap();
        assert!(matches!(ell_core(&half), Err(Error::MalformedCharge(_))));
    }

    #[test]
    fn charge_validation() {
        assert!(Charge::parse("1,0").is_err());
        assert!(Charge::parse("1/3,-1/3").is_err());
        assert!(Charge::parse("1/2,-1/2").is_ok());
        // (1/3, 0, -1/3) dilates to residues that collide
        let c = Charge::parse("1/3,0,-1/3").unwrap();
        assert!(matches!(tau(&c, &mp("[[],[],[]]")), Err(Error::MalformedCharge(_))));
    }

    #[test]
    fn act_charge_examples() {
        let s = Permutation::transposition(2, 1, 2);
        assert_eq!(act_charge(&s, &ch(&[0, 0])), Charge::parse("1/2,-1/2").unwrap());
        assert_eq!(act_charge(&s, &ch(&[1, -1])), Charge::parse("-1/2,1/2").unwrap());
        assert_eq!(act_charge(&Permutation::identity(2), &ch(&[1, -1])), ch(&[1, -1]));
    }

    #[test]
    fn act_charge_is_a_group_action() {
        for l in 1..=3 {
            for s in Charge::integral_grid(l, 2) {
                for a in Permutation::all(l) {
                    for b in Permutation::all(l) {
                        let lhs = act_charge(&a.compose(&b), &s);
                        assert_eq!(lhs, act_charge(&a, &act_charge(&b, &s)));
                        assert!(Charge::new(lhs.components().to_vec()).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn round_trips() {
        for l in 1..=3 {
            for s in Charge::integral_grid(l, 3) {
                for n in 0..=3 {
                    for lam in enumerate_multipartitions(l, n) {
                        let rho = tau(&s, &lam).unwrap();
                        assert_eq!(tau_inverse(l, &rho), (s.clone(), lam));
                    }
                }
            }
            for n in 0..=10 {
                for rho in partitions(n) {
                    let (s, lam) = tau_inverse(l, &rho);
                    assert_eq!(tau(&s, &lam).unwrap(), rho);
                }
            }
        }
    }

    // rim-hook stripping, independent of β-sets
    #[test]
    fn weight_and_core_laws() {
        for l in 2..=3usize {
            for s in Charge::integral_grid(l, 2) {
                let core = ell_core(&s).unwrap();
                assert_eq!(core_by_rim_hooks(&core, l as u32), core);
                for n in 0..=3 {
                    for lam in enumerate_multipartitions(l, n) {
                        let rho = tau(&s, &lam).unwrap();
                        assert_eq!(rho.weight(), l as u32 * n + core.weight());
                        assert_eq!(core_by_rim_hooks(&rho, l as u32), core);
                    }
                }
            }
        }
    }

    #[test]
    fn equivariance_and_transpose_laws() {
        for l in 2..=3usize {
            for s in Charge::integral_grid(l, 2) {
                for lam in enumerate_multipartitions(l, 3) {
                    let rho = tau(&s, &lam).unwrap();
                    for w in Permutation::all(l) {
                        assert_eq!(tau(&act_charge(&w, &s), &lam.act(&w)).unwrap(), rho);
                    }
                    assert_eq!(tau(&s.bar(), &lam.bar()).unwrap(), rho.transpose());
                }
            }
        }
    }

    fn all_hearts(
        rho: &Partition,
        j: &ResidueSet,
        seen: &mut BTreeSet<Partition>,
        out: &mut BTreeSet<Partition>,
    ) {
        if !seen.insert(rho.clone()) {
            return;
        }
        let cells: Vec<_> = rho
            .removable_cells()
            .into_iter()
            .filter(|&(r, c)| j.contains(cell_residue(r, c, j.level)))
            .collect();
        if cells.is_empty() {
            out.insert(rho.clone());
        }
        for (r, _) in cells {
            all_hearts(&rho.remove_cell(r), j, seen, out);
        }
    }

    #[test]
    fn j_heart_examples() {
        let j0 = ResidueSet::new(2, [0]).unwrap();
        let j1 = ResidueSet::new(2, [1]).unwrap();
        assert_eq!(j_heart(&p(&[1]), &j0), p(&[]));
        assert_eq!(j_heart(&p(&[1]), &j1), p(&[1]));
        assert_eq!(j_heart(&p(&[2, 1]), &j1), p(&[1]));
        assert!(j_class_eq(&p(&[1]), &p(&[]), &j0));
        assert!(!j_class_eq(&p(&[1]), &p(&[]), &j1));
        assert!(ResidueSet::new(2, [2]).is_err());
    }

    #[test]
    fn j_heart_is_confluent() {
        for l in 1..=3 {
            for j in ResidueSet::all(l) {
                for n in 0..=10 {
                    for rho in partitions(n) {
                        let mut hearts = BTreeSet::new();
                        all_hearts(&rho, &j, &mut BTreeSet::new(), &mut hearts);
                        let h = j_heart(&rho, &j);
                        assert_eq!(hearts.into_iter().collect::<Vec<_>>(), vec![h.clone()]);
                        assert_eq!(j_heart(&h, &j), h);
                    }
                }
            }
        }
    }
}
