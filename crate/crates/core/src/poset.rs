//! Finite preorders: closure, antisymmetry certificate, quotient by a finite
//! group action, Hasse reduction and DOT export.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};

/// Square boolean matrix stored as 64-bit words per row.
#[derive(Clone, PartialEq, Eq, Hash)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    /// Reflexive-transitive closure, Warshall style with row unions.
    fn close(&mut self) {
        for i in 0..self.n {
            self.set(i, i);
        }
        for k in 0..self.n {
            let row_k: Vec<u64> = self.bits[k * self.words..(k + 1) * self.words].to_vec();
            for i in 0..self.n {
                if self.get(i, k) {
                    let row_i = &mut self.bits[i * self.words..(i + 1) * self.words];
                    for (a, b) in row_i.iter_mut().zip(&row_k) {
                        *a |= b;
                    }
                }
            }
        }
    }
}

/// A reflexive, transitive relation on a finite list of labels, together
/// with a certificate of whether it is antisymmetric.
#[derive(Clone)]
pub struct FinitePoset<L> {
    elements: Vec<L>,
    rel: BitMatrix,
    partial_order: bool,
}

impl<L> FinitePoset<L> {
    /// Closure of `pairs`, each `(i, j)` meaning `elements[i] ≤ elements[j]`.
    pub fn from_pairs(elements: Vec<L>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let n = elements.len();
        let mut rel = BitMatrix::new(n);
        for (i, j) in pairs {
            assert!(i < n && j < n, "pair ({i},{j}) out of range for {n} elements");
            rel.set(i, j);
        }
        rel.close();
        let partial_order = (0..n).all(|i| (i + 1..n).all(|j| !(rel.get(i, j) && rel.get(j, i))));
        FinitePoset { elements, rel, partial_order }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[L] {
        &self.elements
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.rel.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j) && !self.le(j, i)
    }

    pub fn is_partial_order(&self) -> bool {
        self.partial_order
    }

    /// All related pairs `(i, j)` with `i ≤ j`, including the diagonal.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.le(i, j)).collect()
    }

    /// Classes of the equivalence `i ≤ j ≤ i`, ordered by smallest member.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let class: Vec<usize> =
                (i..self.len()).filter(|&j| self.le(i, j) && self.le(j, i)).collect();
            for &j in &class {
                seen[j] = true;
            }
            out.push(class);
        }
        out
    }

    /// Cover pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn hasse(&self) -> Result<Vec<(usize, usize)>> {
        if !self.partial_order {
            return Err(Error::PreorderNotOrder);
        }
        let n = self.len();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && self.le(i, j)
                    && !(0..n).any(|k| k != i && k != j && self.le(i, k) && self.le(k, j))
                {
                    covers.push((i, j));
                }
            }
        }
        Ok(covers)
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| !self.lt(i, j))).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| (0..self.len()).all(|j| !self.lt(j, i))).collect()
    }

    /// Same relation with relabeled elements.
    pub fn map_labels<M>(&self, f: impl FnMut(&L) -> M) -> FinitePoset<M> {
        FinitePoset {
            elements: self.elements.iter().map(f).collect(),
            rel: self.rel.clone(),
            partial_order: self.partial_order,
        }
    }

    /// Whether both posets relate the same index pairs.
    pub fn same_relation<M>(&self, other: &FinitePoset<M>) -> bool {
        self.rel == other.rel
    }
}

impl<L: Display> FinitePoset<L> {
    /// DOT digraph of the Hasse diagram, edges pointing upwards.
    pub fn to_dot(&self) -> Result<String> {
        let covers = self.hasse()?;
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            let label = e.to_string().replace('\\', "\\\\").replace('"', "\\\"");
            writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
        }
        for (i, j) in covers {
            writeln!(out, "  n{i} -> n{j};").unwrap();
        }
        out.push_str("}\n");
        Ok(out)
    }
}

impl<L: Serialize> Serialize for FinitePoset<L> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("FinitePoset", 3)?;
        st.serialize_field("elements", &self.elements)?;
        st.serialize_field("relation", &self.relation())?;
        st.serialize_field("partial_order", &self.partial_order)?;
        st.end()
    }
}

impl<L: fmt::Debug> fmt::Debug for FinitePoset<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("elements", &self.elements)
            .field("relation", &self.relation())
            .field("partial_order", &self.partial_order)
            .finish()
    }
}

/// A finite group given by its multiplication table, acting on `0..size`.
///
/// Group element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    compose: Vec<Vec<usize>>,
    action: Vec<Vec<usize>>,
}

impl GroupAction {
    /// `compose[g][h] = gh`, `action[g][x] = g·x`. Checks the group and action
    /// axioms.
    pub fn new(compose: Vec<Vec<usize>>, action: Vec<Vec<usize>>) -> Result<Self> {
        let k = compose.len();
        let bad = |msg: &str| Err(Error::Invalid(format!("group action: {msg}")));
        if k == 0 || action.len() != k || compose.iter().any(|r| r.len() != k || r.iter().any(|&x| x >= k)) {
            return bad("table shapes");
        }
        let size = action[0].len();
        if action.iter().any(|r| r.len() != size || r.iter().any(|&x| x >= size)) {
            return bad("action shape");
        }
        if (0..k).any(|g| compose[0][g] != g || compose[g][0] != g) {
            return bad("element 0 is not the identity");
        }
        for a in 0..k {
            if !(0..k).any(|b| compose[a][b] == 0) {
                return bad("missing inverse");
            }
            for b in 0..k {
                for c in 0..k {
                    if compose[compose[a][b]][c] != compose[a][compose[b][c]] {
                        return bad("not associative");
                    }
                }
            }
        }
        if (0..size).any(|x| action[0][x] != x) {
            return bad("identity does not act trivially");
        }
        for g in 0..k {
            for h in 0..k {
                if (0..size).any(|x| action[compose[g][h]][x] != action[g][action[h][x]]) {
                    return bad("(gh)·x ≠ g·(h·x)");
                }
            }
        }
        Ok(GroupAction { compose, action })
    }

    /// The cyclic group generated by a permutation `gen` of `0..size`, of
    /// order equal to that of `gen`.
    pub fn cyclic(gen: &[usize]) -> Result<Self> {
        let size = gen.len();
        let mut powers = vec![(0..size).collect::<Vec<_>>()];
        loop {
            let last = powers.last().unwrap();
            let next: Vec<usize> = last.iter().map(|&x| gen[x]).collect();
            if next == powers[0] {
                break;
            }
            powers.push(next);
            if powers.len() > size.max(1) * size.max(1) + 1 {
                return Err(Error::Invalid("generator is not a permutation".into()));
            }
        }
        let k = powers.len();
        let compose = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        GroupAction::new(compose, powers)
    }

    /// The trivial group acting on `size` points.
    pub fn trivial(size: usize) -> Self {
        GroupAction { compose: vec![vec![0]], action: vec![(0..size).collect()] }
    }

    pub fn order(&self) -> usize {
        self.compose.len()
    }

    pub fn degree(&self) -> usize {
        self.action[0].len()
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    /// Orbits ordered by smallest member, each sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.degree()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.degree() {
            if index[x] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.order()).map(|g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                index[y] = out.len();
            }
            out.push(orbit);
        }
        out
    }
}

/// The orbit preorder: `O ≤ O'` iff `x ≤ g·x'` for some `x ∈ O`, `g`, then
/// closed. Requires `x ≤ y ⇒ g·x ≤ g·y`.
pub fn quotient_by_group<L: Clone>(
    p: &FinitePoset<L>,
    a: &GroupAction,
) -> Result<FinitePoset<Vec<L>>> {
    if a.degree() != p.len() {
        return Err(Error::Invalid(format!(
            "group acts on {} points, poset has {}",
            a.degree(),
            p.len()
        )));
    }
    for (x, y) in p.relation() {
        if (0..a.order()).any(|g| !p.le(a.act(g, x), a.act(g, y))) {
            return Err(Error::NonEquivariant);
        }
    }
    let orbits = a.orbits();
    let mut orbit_of = BTreeMap::new();
    for (k, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of.insert(x, k);
        }
    }
    let pairs: Vec<(usize, usize)> = p.relation().into_iter().map(|(x, y)| (orbit_of[&x], orbit_of[&y])).collect();
    let labels = orbits
        .iter()
        .map(|o| o.iter().map(|&x| p.elements()[x].clone()).collect())
        .collect();
    Ok(FinitePoset::from_pairs(labels, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinitePoset<&'static str> {
        FinitePoset::from_pairs(vec!["a", "b", "c"], [(0, 1), (1, 2)])
    }

    #[test]
    fn from_pairs_examples() {
        let anti = FinitePoset::from_pairs(vec!["a", "b"], []);
        assert!(anti.is_partial_order());
        assert!(!anti.le(0, 1) && anti.le(0, 0));
        let cyc = FinitePoset::from_pairs(vec!["a", "b"], [(0, 1), (1, 0)]);
        assert!(!cyc.is_partial_order());
        assert_eq!(cyc.hasse(), Err(Error::PreorderNotOrder));
        assert!(chain3().le(0, 2));
    }

    #[test]
    fn hasse_examples() {
        assert_eq!(chain3().hasse().unwrap(), vec![(0, 1), (1, 2)]);
        let anti = FinitePoset::from_pairs(vec![1, 2, 3], []);
        assert!(anti.hasse().unwrap().is_empty());
        let diamond = FinitePoset::from_pairs(vec!["a", "b", "c", "d"], [(0, 1), (0, 2), (1, 3), (2, 3)]);
        let covers = diamond.hasse().unwrap();
        assert_eq!(covers.len(), 4);
        assert!(!covers.contains(&(0, 3)));
        assert!(diamond.le(0, 3));
    }

    #[test]
    fn dot_output() {
        let dot = chain3().to_dot().unwrap();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("n0 -> n1;") && dot.contains("n1 -> n2;"));
        assert!(!dot.contains("n0 -> n2"));
    }

    #[test]
    fn quotient_examples() {
        let p = FinitePoset::from_pairs(vec!["a", "b", "c"], [(0, 2), (1, 2)]);
        let q = quotient_by_group(&p, &GroupAction::trivial(3)).unwrap();
        assert!(q.same_relation(&p));
        let swap = GroupAction::cyclic(&[1, 0, 2]).unwrap();
        let q = quotient_by_group(&p, &swap).unwrap();
        assert_eq!(q.elements(), &[vec!["a", "b"], vec!["c"]]);
        assert!(q.lt(0, 1));
        let anti = FinitePoset::from_pairs(vec!["x", "y"], []);
        let q = quotient_by_group(&anti, &GroupAction::cyclic(&[1, 0]).unwrap()).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn quotient_detects_non_equivariance() {
        let p = FinitePoset::from_pairs(vec!["a", "b", "c"], [(0, 2)]);
        let swap = GroupAction::cyclic(&[1, 0, 2]).unwrap();
        assert_eq!(quotient_by_group(&p, &swap).unwrap_err(), Error::NonEquivariant);
    }

    #[test]
    fn group_axioms_are_checked() {
        assert!(GroupAction::new(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![1, 0]]).is_err());
        let c3 = GroupAction::cyclic(&[1, 2, 0]).unwrap();
        assert_eq!(c3.order(), 3);
        assert_eq!(c3.orbits(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn equivalence_classes_of_preorder() {
        let p = FinitePoset::from_pairs(vec![0, 1, 2], [(0, 1), (1, 0), (1, 2)]);
        assert_eq!(p.equivalence_classes(), vec![vec![0, 1], vec![2]]);
    }
}
