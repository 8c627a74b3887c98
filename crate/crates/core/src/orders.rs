//! The combinatorial order `◁_θ` attached to an alcove, the preorder at a
//! wall and its lift to blocks.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::blocks::BlockPartition;
use crate::error::{Error, Result};
use crate::params::{classify_theta_l2, Alcove, Classification, ParamTheta, Sign};
use crate::partition::{dominance_compare, enumerate_multipartitions, Multipartition, Partition, Verdict};
use crate::poset::FinitePoset;
use crate::tau::tau;

/// The partition `τ_s(w·ᵗλ)` (sign `+`) or `τ_s(w·ᵗλ̄)` (sign `−`) whose
/// dominance order reversed is `◁_θ`.
pub fn order_key(a: &Alcove, lambda: &Multipartition) -> Result<Partition> {
    if lambda.level() != a.level() {
        return Err(Error::LevelMismatch { expected: a.level(), got: lambda.level() });
    }
    let base = match a.sign {
        Sign::Plus => lambda.clone(),
        Sign::Minus => lambda.bar(),
    };
    tau(&a.s, &base.transpose().act(&a.w))
}

fn compare_keys(x: &Partition, y: &Partition, lambda: &Multipartition, mu: &Multipartition) -> Verdict {
    // λ ◁ μ iff key(μ) ◁ key(λ)
    let v = dominance_compare(y.parts(), x.parts());
    assert!(v != Verdict::Equal || lambda == mu, "τ is not injective on {lambda} and {mu}");
    v
}

/// Verdict of `λ` against `μ` in `◁_θ` for `θ ∈ a`.
pub fn comb_order(a: &Alcove, lambda: &Multipartition, mu: &Multipartition) -> Result<Verdict> {
    Ok(compare_keys(&order_key(a, lambda)?, &order_key(a, mu)?, lambda, mu))
}

/// [`comb_order`] at the alcove containing a level-2 parameter.
pub fn comb_order_theta_l2(theta: &ParamTheta, lambda: &Multipartition, mu: &Multipartition) -> Result<Verdict> {
    match classify_theta_l2(theta)? {
        Classification::Alcove { alcove, .. } => comb_order(&alcove, lambda, mu),
        Classification::Wall { .. } | Classification::Degenerate => Err(Error::OnWall),
    }
}

/// `◁_θ` on `P(ℓ, n)` with order keys computed once.
#[derive(Clone, Debug)]
pub struct AlcoveOrder {
    pub alcove: Alcove,
    pub ground: Vec<Multipartition>,
    keys: Vec<Partition>,
}

impl AlcoveOrder {
    pub fn new(alcove: &Alcove, n: u32) -> Result<Self> {
        Self::on(alcove, enumerate_multipartitions(alcove.level(), n))
    }

    pub fn on(alcove: &Alcove, ground: Vec<Multipartition>) -> Result<Self> {
        let keys = ground.par_iter().map(|x| order_key(alcove, x)).collect::<Result<Vec<_>>>()?;
        Ok(AlcoveOrder { alcove: alcove.clone(), ground, keys })
    }

    pub fn compare(&self, i: usize, j: usize) -> Verdict {
        compare_keys(&self.keys[i], &self.keys[j], &self.ground[i], &self.ground[j])
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.compare(i, j) == Verdict::Less
    }

    /// All `(i, j)` with `ground[i] ◁_θ ground[j]` strictly.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.ground.len();
        (0..n)
            .into_par_iter()
            .flat_map_iter(|i| (0..n).filter(move |&j| self.less(i, j)).map(move |j| (i, j)))
            .collect()
    }

    pub fn poset(&self) -> FinitePoset<Multipartition> {
        FinitePoset::from_pairs(self.ground.clone(), self.strict_pairs())
    }
}

/// `◁_θ` materialized on `P(ℓ, n)`.
pub fn order_poset(a: &Alcove, n: u32) -> Result<FinitePoset<Multipartition>> {
    Ok(AlcoveOrder::new(a, n)?.poset())
}

/// The preorder at a wall generated by the orders of the adjacent alcoves.
#[derive(Clone, Debug)]
pub struct WallPreorder {
    pub ground: Vec<Multipartition>,
    /// `steps[i]` lists every `j` with `ground[i] ◁_{θ_k} ground[j]` for some `k`.
    steps: Vec<Vec<usize>>,
    closure: FinitePoset<Multipartition>,
}

impl WallPreorder {
    pub fn new(adjacent: &[Alcove], level: usize, n: u32) -> Result<Self> {
        if adjacent.is_empty() {
            return Err(Error::Invalid("no adjacent alcoves".into()));
        }
        let ground = enumerate_multipartitions(level, n);
        let orders = adjacent
            .iter()
            .map(|a| AlcoveOrder::on(a, ground.clone()))
            .collect::<Result<Vec<_>>>()?;
        let mut steps = vec![Vec::new(); ground.len()];
        for o in &orders {
            for (i, j) in o.strict_pairs() {
                steps[i].push(j);
            }
        }
        for s in &mut steps {
            s.sort_unstable();
            s.dedup();
        }
        let pairs: Vec<(usize, usize)> =
            steps.iter().enumerate().flat_map(|(i, s)| s.iter().map(move |&j| (i, j))).collect();
        let closure = FinitePoset::from_pairs(ground.clone(), pairs);
        Ok(WallPreorder { ground, steps, closure })
    }

    pub fn index_of(&self, lambda: &Multipartition) -> Result<usize> {
        self.ground
            .iter()
            .position(|x| x == lambda)
            .ok_or_else(|| Error::Invalid(format!("{lambda} is not in the ground set")))
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.closure.le(i, j)
    }

    /// A shortest chain from `i` to `j`, every step strict in some adjacent
    /// alcove.
    pub fn chain(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.ground.len()];
        prev[i] = i;
        let mut queue = VecDeque::from([i]);
        while let Some(x) = queue.pop_front() {
            if x == j {
                let mut path = vec![j];
                while *path.last().unwrap() != i {
                    path.push(prev[*path.last().unwrap()]);
                }
                path.reverse();
                return Some(path);
            }
            for &y in &self.steps[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    pub fn poset(&self) -> &FinitePoset<Multipartition> {
        &self.closure
    }
}

/// Whether a chain of strict steps in the adjacent alcoves leads from `λ` to
/// `μ`.
pub fn wall_preorder(adjacent: &[Alcove], lambda: &Multipartition, mu: &Multipartition) -> Result<bool> {
    if lambda.level() != mu.level() || lambda.weight() != mu.weight() {
        return Err(Error::Invalid("λ and μ lie in different P(ℓ, n)".into()));
    }
    let w = WallPreorder::new(adjacent, lambda.level(), lambda.weight())?;
    Ok(w.chain(w.index_of(lambda)?, w.index_of(mu)?).is_some())
}

/// Relation on blocks: `B ≤ B'` iff some member of `B` precedes some member
/// of `B'` in the wall preorder, then closed.
pub fn block_order(adjacent: &[Alcove], blocks: &BlockPartition) -> Result<FinitePoset<Vec<Multipartition>>> {
    let w = wall_for_blocks(adjacent, blocks)?;
    block_lift(&w, blocks, false)
}

/// The lift with "for all members" in place of "for some member".
pub fn block_order_universal(
    adjacent: &[Alcove],
    blocks: &BlockPartition,
) -> Result<FinitePoset<Vec<Multipartition>>> {
    let w = wall_for_blocks(adjacent, blocks)?;
    block_lift(&w, blocks, true)
}

fn wall_for_blocks(adjacent: &[Alcove], blocks: &BlockPartition) -> Result<WallPreorder> {
    let first = adjacent.first().ok_or_else(|| Error::Invalid("no adjacent alcoves".into()))?;
    let level = blocks.ground.first().map_or(first.level(), Multipartition::level);
    let n = blocks.ground.first().map_or(0, Multipartition::weight);
    WallPreorder::new(adjacent, level, n)
}

/// Lifts `w` to the classes of `blocks`.
pub fn block_lift(
    w: &WallPreorder,
    blocks: &BlockPartition,
    universal: bool,
) -> Result<FinitePoset<Vec<Multipartition>>> {
    let index: Vec<usize> = blocks.ground.iter().map(|x| w.index_of(x)).collect::<Result<_>>()?;
    let k = blocks.len();
    let mut pairs = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let ca = &blocks.classes[a];
            let cb = &blocks.classes[b];
            let mut rel = ca.iter().flat_map(|&x| cb.iter().map(move |&y| (x, y)));
            let hit = |(x, y): (usize, usize)| w.related(index[x], index[y]);
            let ok = if universal { rel.all(hit) } else { rel.any(hit) };
            if ok {
                pairs.push((a, b));
            }
        }
    }
    Ok(FinitePoset::from_pairs(blocks.labeled_classes(), pairs))
}
