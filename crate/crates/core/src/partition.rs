//! Partitions, multipartitions, permutations of components, and the dominance
//! order on weakly decreasing sequences.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Outcome of comparing two elements of a partially ordered set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl Verdict {
    /// The verdict seen from the other side.
    pub fn reverse(self) -> Verdict {
        match self {
            Verdict::Less => Verdict::Greater,
            Verdict::Greater => Verdict::Less,
            v => v,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Verdict::Less | Verdict::Greater)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Less => "Less",
            Verdict::Greater => "Greater",
            Verdict::Equal => "Equal",
            Verdict::Incomparable => "Incomparable",
        };
        f.write_str(s)
    }
}

/// Dominance comparison of two weakly decreasing sequences.
///
/// The shorter sequence is padded with zeros. Sequences with different totals
/// are `Incomparable`.
pub fn dominance_compare<T>(a: &[T], b: &[T]) -> Verdict
where
    T: Copy + Ord + Default + Add<Output = T>,
{
    let len = a.len().max(b.len());
    let at = |s: &[T], i: usize| s.get(i).copied().unwrap_or_default();
    let (mut pa, mut pb) = (T::default(), T::default());
    let (mut le, mut ge) = (true, true);
    for i in 0..len {
        pa = pa + at(a, i);
        pb = pb + at(b, i);
        if pa > pb {
            le = false;
        }
        if pa < pb {
            ge = false;
        }
    }
    if pa != pb {
        return Verdict::Incomparable;
    }
    match (le, ge) {
        (true, true) => Verdict::Equal,
        (true, false) => Verdict::Less,
        (false, true) => Verdict::Greater,
        (false, false) => Verdict::Incomparable,
    }
}

/// A weakly decreasing finite sequence of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RationalSeq(Vec<Rational>);

impl RationalSeq {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("sequence is not weakly decreasing".into()));
        }
        Ok(RationalSeq(entries))
    }

    /// Sorts the entries into decreasing order.
    pub fn from_unsorted(mut entries: Vec<Rational>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        RationalSeq(entries)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn compare(&self, other: &RationalSeq) -> Verdict {
        dominance_compare(&self.0, &other.0)
    }
}

impl fmt::Display for RationalSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::rational::format_list(&self.0))
    }
}

/// An integer partition, stored as its positive parts in weakly decreasing
/// order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates the parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Invalid(format!(
                "{parts:?} is not a weakly decreasing sequence of positive integers"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `j` counted from 1; zero past the height.
    pub fn part(&self, j: usize) -> u32 {
        if j == 0 {
            return 0;
        }
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        let cols = (1..=width)
            .map(|c| self.0.iter().take_while(|&&p| p >= c).count() as u32)
            .collect();
        Partition(cols)
    }

    /// Cells `(row, col)`, both 1-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len as usize).map(move |c| (r + 1, c)))
    }

    /// Cells whose removal leaves a partition, as `(row, col)`.
    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        (0..self.0.len())
            .filter(|&r| self.0.get(r + 1).copied().unwrap_or(0) < self.0[r])
            .map(|r| (r + 1, self.0[r] as usize))
            .collect()
    }

    /// Removes the last cell of `row` (1-based). The caller guarantees the
    /// cell is removable.
    pub fn remove_cell(&self, row: usize) -> Partition {
        let mut parts = self.0.clone();
        parts[row - 1] -= 1;
        if parts[row - 1] == 0 {
            parts.truncate(row - 1);
        }
        Partition(parts)
    }

    /// Hook length of the cell `(row, col)`.
    pub fn hook(&self, row: usize, col: usize) -> u32 {
        let arm = self.part(row) as usize - col;
        let leg = self.0.iter().skip(row).take_while(|&&p| p as usize >= col).count();
        (arm + leg + 1) as u32
    }

    /// Σ (i-1) λ_i.
    pub fn n_statistic(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    pub fn as_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|&p| Rational::from(p)).collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, in reverse lexicographic order: `(n)` first,
/// `(1^n)` last.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// An ℓ-tuple of partitions `(λ^1, …, λ^ℓ)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    /// Panics if `components` is empty.
    pub fn new(components: Vec<Partition>) -> Self {
        assert!(!components.is_empty(), "a multipartition has level at least 1");
        Multipartition(components)
    }

    /// The multipartition of 0 with `level` empty components.
    pub fn empty(level: usize) -> Self {
        Multipartition::new(vec![Partition::empty(); level])
    }

    /// Builds from raw part lists, validating each component.
    pub fn from_parts(parts: Vec<Vec<u32>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid("a multipartition needs at least one component".into()));
        }
        Ok(Multipartition(parts.into_iter().map(Partition::new).collect::<Result<_>>()?))
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("multipartition `{s}`: {e}")))
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(Partition::weight).sum()
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    /// Component `i` counted from 1, as in `λ = (λ^1, …, λ^ℓ)`.
    pub fn component(&self, i: usize) -> &Partition {
        &self.0[i - 1]
    }

    /// Componentwise transpose `ᵗλ`.
    pub fn transpose(&self) -> Multipartition {
        Multipartition(self.0.iter().map(Partition::transpose).collect())
    }

    /// `λ̄ = (ᵗλ^ℓ, …, ᵗλ^1)`.
    pub fn bar(&self) -> Multipartition {
        Multipartition(self.0.iter().rev().map(Partition::transpose).collect())
    }

    /// The place-permutation action `w·λ = (λ^{w⁻¹(1)}, …, λ^{w⁻¹(ℓ)})`.
    pub fn act(&self, w: &Permutation) -> Multipartition {
        Multipartition(w.act_on_slice(&self.0))
    }

    /// All parts of all components, sorted decreasingly.
    pub fn merged_parts(&self) -> Partition {
        let mut parts: Vec<u32> = self.0.iter().flat_map(|p| p.0.iter().copied()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Multipartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let comps = Vec::<Partition>::deserialize(deserializer)?;
        if comps.is_empty() {
            return Err(serde::de::Error::custom("a multipartition needs at least one component"));
        }
        Ok(Multipartition(comps))
    }
}

/// Every ℓ-multipartition of `n`, deterministic order: the weight of the first
/// component decreases, and within a component partitions run in reverse
/// lexicographic order.
pub fn enumerate_multipartitions(level: usize, n: u32) -> Vec<Multipartition> {
    assert!(level >= 1);
    let tables: Vec<Vec<Partition>> = (0..=n).map(partitions).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(level);
    fn rec(
        level: usize,
        remaining: u32,
        tables: &[Vec<Partition>],
        current: &mut Vec<Partition>,
        out: &mut Vec<Multipartition>,
    ) {
        if current.len() + 1 == level {
            for p in &tables[remaining as usize] {
                current.push(p.clone());
                out.push(Multipartition(current.clone()));
                current.pop();
            }
            return;
        }
        for k in (0..=remaining).rev() {
            for p in &tables[k as usize] {
                current.push(p.clone());
                rec(level, remaining - k, tables, current, out);
                current.pop();
            }
        }
    }
    rec(level, n, &tables, &mut current, &mut out);
    out
}

/// A permutation of `{1, …, ℓ}`, stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let l = images.len();
        let mut seen = vec![false; l + 1];
        for &x in &images {
            if x == 0 || x > l || seen[x] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation of 1..{l}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(l: usize) -> Self {
        Permutation((1..=l).collect())
    }

    /// The transposition exchanging `i` and `j` (1-based).
    pub fn transposition(l: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (1..=l).collect();
        v.swap(i - 1, j - 1);
        Permutation(v)
    }

    /// The longest element `(1,ℓ)(2,ℓ-1)⋯`.
    pub fn longest(l: usize) -> Self {
        Permutation((1..=l).rev().collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// `self ∘ other`, i.e. `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x - 1]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `w·(q_1, …, q_ℓ) = (q_{w⁻¹(1)}, …, q_{w⁻¹(ℓ)})`.
    pub fn act_on_slice<T: Clone>(&self, q: &[T]) -> Vec<T> {
        assert_eq!(q.len(), self.0.len(), "permutation degree must match the tuple length");
        let inv = self.inverse();
        inv.0.iter().map(|&j| q[j - 1].clone()).collect()
    }

    /// All of `S_ℓ` in lexicographic order of image vectors.
    pub fn all(l: usize) -> Vec<Permutation> {
        fn rec(l: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if cur.len() == l {
                out.push(Permutation(cur.clone()));
                return;
            }
            for x in 1..=l {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    rec(l, used, cur, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(l, &mut vec![false; l + 1], &mut Vec::new(), &mut out);
        out
    }

    /// Parses `2,1` style image lists.
    pub fn parse(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad permutation `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Place-permutation action on a tuple of ℓ rationals (the m-parameters).
pub fn act_sym_q(w: &Permutation, q: &[Rational]) -> Vec<Rational> {
    w.act_on_slice(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn mp(v: &[&[u32]]) -> Multipartition {
        Multipartition::new(v.iter().map(|c| p(c)).collect())
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(
            dominance_compare(p(&[4, 3, 1, 1, 1]).parts(), p(&[5, 2, 2, 1]).parts()),
            Verdict::Less
        );
        assert_eq!(dominance_compare(p(&[3, 2]).parts(), p(&[3, 2]).parts()), Verdict::Equal);
        assert_eq!(dominance_compare(p(&[3, 3]).parts(), p(&[4, 1, 1]).parts()), Verdict::Incomparable);
        // different totals
        assert_eq!(dominance_compare(p(&[3]).parts(), p(&[2]).parts()), Verdict::Incomparable);
    }

    #[test]
    fn dominance_zero_padding() {
        let a = [Rational::from(2), Rational::from(1)];
        let b = [Rational::from(2), Rational::from(1), Rational::ZERO];
        assert_eq!(dominance_compare(&a, &b), Verdict::Equal);
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0]).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 2]).transpose(), p(&[2, 2, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(p(&[5, 4, 1, 1]).transpose(), p(&[4, 2, 2, 2, 1]));
    }

    #[test]
    fn transpose_matches_cell_count() {
        // column c has one cell for every row of length >= c
        for n in 0..=8 {
            for lam in partitions(n) {
                let t = lam.transpose();
                for c in 1..=lam.part(1) as usize {
                    let count = lam.cells().filter(|&(_, col)| col == c).count();
                    assert_eq!(t.part(c) as usize, count);
                }
            }
        }
    }

    #[test]
    fn multipartition_transposes_and_bar() {
        assert_eq!(mp(&[&[], &[3, 2]]).transpose(), mp(&[&[], &[2, 2, 1]]));
        assert_eq!(mp(&[&[2, 2, 1], &[]]).transpose(), mp(&[&[3, 2], &[]]));
        assert_eq!(mp(&[&[3, 2]]).transpose(), mp(&[&[2, 2, 1]]));
        assert_eq!(mp(&[&[], &[3, 2]]).bar(), mp(&[&[2, 2, 1], &[]]));
        assert_eq!(mp(&[&[], &[]]).bar(), mp(&[&[], &[]]));
        let l = mp(&[&[1], &[2]]);
        assert_eq!(l.bar().bar(), l);
    }

    #[test]
    fn sym_action() {
        let s = Permutation::transposition(2, 1, 2);
        assert_eq!(mp(&[&[], &[3, 2]]).act(&s), mp(&[&[3, 2], &[]]));
        assert_eq!(mp(&[&[], &[3, 2]]).act(&Permutation::identity(2)), mp(&[&[], &[3, 2]]));
        let m = vec![Rational::new(1, 2), Rational::ZERO];
        assert_eq!(act_sym_q(&s, &m), vec![Rational::ZERO, Rational::new(1, 2)]);
    }

    #[test]
    fn sym_action_is_a_left_action() {
        let lam = mp(&[&[1], &[2], &[]]);
        for a in Permutation::all(3) {
            for b in Permutation::all(3) {
                assert_eq!(lam.act(&a.compose(&b)), lam.act(&b).act(&a));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_multipartitions(1, 3).len(), 3);
        let two = enumerate_multipartitions(2, 2);
        let expected = vec![
            mp(&[&[2], &[]]),
            mp(&[&[1, 1], &[]]),
            mp(&[&[1], &[1]]),
            mp(&[&[], &[2]]),
            mp(&[&[], &[1, 1]]),
        ];
        assert_eq!(two, expected);
        assert_eq!(enumerate_multipartitions(2, 5).len(), 36);
        assert_eq!(enumerate_multipartitions(2, 0).len(), 1);
    }

    #[test]
    fn enumeration_matches_convolution() {
        let p: Vec<usize> = (0..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11]);
        for n in 0..=6u32 {
            let conv2: usize = (0..=n as usize).map(|k| p[k] * p[n as usize - k]).sum();
            let all = enumerate_multipartitions(2, n);
            assert_eq!(all.len(), conv2);
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
            assert!(all.iter().all(|m| m.weight() == n));
        }
    }

    #[test]
    fn json_formats() {
        let m: Multipartition = Multipartition::parse_json("[[2,2,1],[]]").unwrap();
        assert_eq!(m, mp(&[&[2, 2, 1], &[]]));
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[2,2,1],[]]");
        assert_eq!(m.to_string(), "[[2,2,1],[]]");
        assert!(Multipartition::parse_json("[[1,2]]").is_err());
        assert!(Multipartition::parse_json("[]").is_err());
    }

    #[test]
    fn permutation_basics() {
        let w = Permutation::parse("2,3,1").unwrap();
        assert_eq!(w.compose(&w.inverse()), Permutation::identity(3));
        assert_eq!(Permutation::all(3).len(), 6);
        assert!(Permutation::parse("1,1").is_err());
        assert_eq!(Permutation::longest(3).images(), &[3, 2, 1]);
    }
}
