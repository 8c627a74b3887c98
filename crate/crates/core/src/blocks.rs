//! Calogero–Moser partitions of `Irr G(ℓ,1,n)` and their transfer to
//! `G(ℓ,e,n)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::ParamH;
use crate::partition::{enumerate_multipartitions, Multipartition};
use crate::poset::FinitePoset;
use crate::rational::Rational;
use crate::symbols::{kappa, min_size_all};
use crate::tau::{j_heart, tau, Charge, ResidueSet};

/// Where a block partition came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    RegularSingletons,
    KappaEquality { m: Vec<Rational>, s: i64 },
    JClass { s: Charge, j: Vec<usize> },
    UserSupplied,
}

/// A partition of a list of multipartitions into classes of indices.
///
/// Members of a class are sorted and classes are ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPartition {
    pub ground: Vec<Multipartition>,
    pub classes: Vec<Vec<usize>>,
    pub provenance: Provenance,
}

impl BlockPartition {
    /// Validates that `classes` partitions `0..ground.len()`.
    pub fn new(ground: Vec<Multipartition>, mut classes: Vec<Vec<usize>>, provenance: Provenance) -> Result<Self> {
        let mut seen = vec![false; ground.len()];
        for class in &mut classes {
            if class.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            class.sort_unstable();
            for &x in class.iter() {
                if x >= ground.len() || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Invalid(format!("index {x} is out of range or repeated")));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid("blocks do not cover the ground set".into()));
        }
        classes.sort_unstable_by_key(|c| c[0]);
        Ok(BlockPartition { ground, classes, provenance })
    }

    /// Fibers of `key` over `ground`.
    pub fn from_key<K: Ord>(
        ground: Vec<Multipartition>,
        provenance: Provenance,
        mut key: impl FnMut(&Multipartition) -> Result<K>,
    ) -> Result<Self> {
        let mut fibers: BTreeMap<K, Vec<usize>> = BTreeMap::new();
        for (i, lam) in ground.iter().enumerate() {
            fibers.entry(key(lam)?).or_default().push(i);
        }
        BlockPartition::new(ground, fibers.into_values().collect(), provenance)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Class index of every ground element.
    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.ground.len()];
        for (k, c) in self.classes.iter().enumerate() {
            for &x in c {
                out[x] = k;
            }
        }
        out
    }

    pub fn members(&self, class: usize) -> Vec<Multipartition> {
        self.classes[class].iter().map(|&i| self.ground[i].clone()).collect()
    }

    /// Multipartition lists per class, in class order.
    pub fn labeled_classes(&self) -> Vec<Vec<Multipartition>> {
        (0..self.len()).map(|k| self.members(k)).collect()
    }
}

/// All-singleton partition of `P(ℓ, n)`.
pub fn cm_blocks_regular(l: usize, n: u32) -> BlockPartition {
    let ground = enumerate_multipartitions(l, n);
    let classes = (0..ground.len()).map(|i| vec![i]).collect();
    BlockPartition { ground, classes, provenance: Provenance::RegularSingletons }
}

/// Level-2 blocks: fibers of `λ ↦ κ^s_m(λ)`.
pub fn cm_blocks_l2(n: u32, m: &[Rational], s: i64) -> Result<BlockPartition> {
    if m.len() != 2 {
        return Err(Error::WrongLevel(m.len()));
    }
    cm_blocks_kappa(2, n, m, s)
}

/// Fibers of `λ ↦ κ^s_m(λ)` on `P(ℓ, n)` at any level.
pub fn cm_blocks_kappa(l: usize, n: u32, m: &[Rational], s: i64) -> Result<BlockPartition> {
    let ground = enumerate_multipartitions(l, n);
    let min = min_size_all(&ground, m);
    if s < min {
        return Err(Error::SizeTooSmall { size: s, min });
    }
    let provenance = Provenance::KappaEquality { m: m.to_vec(), s };
    BlockPartition::from_key(ground, provenance, |lam| kappa(lam, m, s))
}

/// Fibers of `λ ↦ j_heart(τ_s(ᵗλ), J)`.
pub fn cm_blocks_jclass(l: usize, n: u32, s: &Charge, j: &ResidueSet) -> Result<BlockPartition> {
    if !s.is_integral() {
        return Err(Error::MalformedCharge(format!("({s}) is not integral")));
    }
    if s.level() != l || j.level != l {
        return Err(Error::LevelMismatch { expected: l, got: s.level() });
    }
    let ground = enumerate_multipartitions(l, n);
    let provenance = Provenance::JClass { s: s.clone(), j: j.residues.iter().copied().collect() };
    BlockPartition::from_key(ground, provenance, |lam| Ok(j_heart(&tau(s, &lam.transpose())?, j)))
}

fn group_size(l: usize, e: usize) -> Result<usize> {
    if e == 0 || !l.is_multiple_of(e) {
        return Err(Error::BadDivisor { l, e });
    }
    Ok(l / e)
}

/// Rotates the components by `k·p` places: `λ^i ↦` position `i + kp`.
fn shift(lambda: &Multipartition, p: usize, k: usize) -> Multipartition {
    let comps = lambda.components();
    let l = comps.len();
    let t = (k * p) % l;
    Multipartition::new((0..l).map(|i| comps[(i + l - t) % l].clone()).collect())
}

/// Whether the `e` groups of `ℓ/e` consecutive components coincide.
pub fn is_stuttering(lambda: &Multipartition, e: usize) -> Result<bool> {
    let p = group_size(lambda.level(), e)?;
    Ok(shift(lambda, p, 1) == *lambda)
}

/// Order of the stabilizer of `λ` under the cyclic shift by `ℓ/e` components.
pub fn stabilizer_order(lambda: &Multipartition, e: usize) -> Result<usize> {
    let p = group_size(lambda.level(), e)?;
    Ok((0..e).filter(|&k| shift(lambda, p, k) == *lambda).count())
}

/// The `C_e`-orbit of `λ`, without repetition.
pub fn ce_orbit(lambda: &Multipartition, e: usize) -> Result<BTreeSet<Multipartition>> {
    let p = group_size(lambda.level(), e)?;
    Ok((0..e).map(|k| shift(lambda, p, k)).collect())
}

/// Lexicographically smallest rotation.
pub fn canonical_rep(lambda: &Multipartition, e: usize) -> Result<Multipartition> {
    Ok(ce_orbit(lambda, e)?.into_iter().next().expect("orbit is nonempty"))
}

/// A label of `Irr G(ℓ,e,n)`: an orbit and an index below its stabilizer
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GlenLabel {
    pub orbit: Multipartition,
    pub index: usize,
}

impl fmt::Display for GlenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.orbit, self.index)
    }
}

/// Labels grouped by orbit, orbits in order of first appearance in
/// `P(ℓ, n)`.
pub fn irr_glen_labels(l: usize, e: usize, n: u32) -> Result<Vec<GlenLabel>> {
    group_size(l, e)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for lam in enumerate_multipartitions(l, n) {
        let rep = canonical_rep(&lam, e)?;
        if seen.insert(rep.clone()) {
            for index in 0..stabilizer_order(&rep, e)? {
                out.push(GlenLabel { orbit: rep.clone(), index });
            }
        }
    }
    Ok(out)
}

/// The transferred block partition of `Irr G(ℓ,e,n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlenBlockPartition {
    pub classes: Vec<Vec<GlenLabel>>,
    /// Per class: it is one of the `|Ĉ_λ|` pieces of a split stuttering block.
    pub unresolved: Vec<bool>,
    /// Per class: index of one `G(ℓ,1,n)` block it comes from.
    pub source: Vec<usize>,
}

impl GlenBlockPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Checks `H_{j+p} = H_j` for the indices `0..ℓ` (with `H_0 = −ΣH`).
pub fn check_ce_stable_param(h: &ParamH, e: usize) -> Result<()> {
    let l = h.level();
    let p = group_size(l, e)?;
    let mut all = vec![h.h0()];
    all.extend_from_slice(&h.big_h);
    if (0..l).any(|j| all[(j + p) % l] != all[j]) {
        return Err(Error::NotCeStable(format!("H_(j+{p}) != H_j for h = ({h})")));
    }
    Ok(())
}

/// `B ↦ Γ(B)`: a split stuttering singleton becomes `|Ĉ_λ|` singleton
/// classes, any other block the set of labels of the orbits it meets.
/// Translates of one block give the same class.
pub fn glen_blocks(l: usize, e: usize, n: u32, wblocks: &BlockPartition) -> Result<GlenBlockPartition> {
    let p = group_size(l, e)?;
    if wblocks.ground.iter().any(|x| x.level() != l || x.weight() != n) {
        return Err(Error::Invalid(format!("blocks are not a partition of P({l},{n})")));
    }
    let block_sets: BTreeSet<BTreeSet<Multipartition>> =
        wblocks.labeled_classes().into_iter().map(|c| c.into_iter().collect()).collect();
    for b in &block_sets {
        let moved: BTreeSet<_> = b.iter().map(|x| shift(x, p, 1)).collect();
        if !block_sets.contains(&moved) {
            return Err(Error::NotCeStable(format!(
                "the shift of block {:?} is not a block",
                b.iter().map(ToString::to_string).collect::<Vec<_>>()
            )));
        }
    }

    let mut out = GlenBlockPartition { classes: Vec::new(), unresolved: Vec::new(), source: Vec::new() };
    let mut emitted = BTreeSet::new();
    for (k, members) in wblocks.labeled_classes().into_iter().enumerate() {
        if let [lam] = members.as_slice() {
            let stab = stabilizer_order(lam, e)?;
            if stab > 1 {
                let rep = canonical_rep(lam, e)?;
                if !emitted.insert((0..stab).map(|index| GlenLabel { orbit: rep.clone(), index }).collect()) {
                    continue;
                }
                for index in 0..stab {
                    out.classes.push(vec![GlenLabel { orbit: rep.clone(), index }]);
                    out.unresolved.push(true);
                    out.source.push(k);
                }
                continue;
            }
        }
        let mut labels = BTreeSet::new();
        for lam in &members {
            let rep = canonical_rep(lam, e)?;
            for index in 0..stabilizer_order(&rep, e)? {
                labels.insert(GlenLabel { orbit: rep.clone(), index });
            }
        }
        if emitted.insert(labels.clone()) {
            out.classes.push(labels.into_iter().collect());
            out.unresolved.push(false);
            out.source.push(k);
        }
    }
    Ok(out)
}

/// Transports an order on the `G(ℓ,1,n)` blocks to the `G(ℓ,e,n)` classes.
///
/// A class is related to another when some block it comes from is related
/// to some block the other comes from; pieces of one split block are left
/// incomparable.
pub fn glen_block_order(
    l: usize,
    e: usize,
    n: u32,
    wblocks: &BlockPartition,
    worder: &FinitePoset<Vec<Multipartition>>,
) -> Result<FinitePoset<Vec<GlenLabel>>> {
    let glen = glen_blocks(l, e, n, wblocks)?;
    if worder.len() != wblocks.len() {
        return Err(Error::Invalid("order and blocks have different sizes".into()));
    }
    // every W-block whose image is a given class
    let mut sources: Vec<Vec<usize>> = vec![Vec::new(); glen.len()];
    for (k, members) in wblocks.labeled_classes().iter().enumerate() {
        let rep = canonical_rep(&members[0], e)?;
        let mut targets: BTreeSet<usize> = BTreeSet::new();
        for (c, labels) in glen.classes.iter().enumerate() {
            if labels.iter().any(|lab| lab.orbit == rep) {
                targets.insert(c);
            }
        }
        for c in targets {
            sources[c].push(k);
        }
    }
    let mut pairs = Vec::new();
    for a in 0..glen.len() {
        for b in 0..glen.len() {
            let siblings = a != b && glen.unresolved[a] && glen.unresolved[b] && glen.source[a] == glen.source[b];
            if !siblings && sources[a].iter().any(|&x| sources[b].iter().any(|&y| worder.le(x, y))) {
                pairs.push((a, b));
            }
        }
    }
    Ok(FinitePoset::from_pairs(glen.classes, pairs))
}

/// The common value of `f` on each class, or `ConstancyViolation`.
pub fn afc_on_blocks(
    partition: &BlockPartition,
    mut f: impl FnMut(&Multipartition) -> Result<Rational>,
) -> Result<Vec<Rational>> {
    partition
        .classes
        .iter()
        .enumerate()
        .map(|(k, class)| {
            let first = f(&partition.ground[class[0]])?;
            for &x in &class[1..] {
                if f(&partition.ground[x])? != first {
                    return Err(Error::ConstancyViolation { class: k });
                }
            }
            Ok(first)
        })
        .collect()
}
