//! The intersection lattice of an inversion arrangement.
//!
//! Every intersection of hyperplanes `x_i = x_j` is determined by which
//! coordinates it forces equal, so lattice elements are set partitions of
//! `[n]`: exactly those whose blocks induce connected subgraphs of the
//! inversion graph (its bond lattice). Rank is `n - #blocks`, the
//! codimension of the subspace.
//!
//! Elements are ordered by rank, then by the array sending each point to the
//! smallest point of its block.
//!
//! Hyperplanes are numbered `1..=k` by the reflection sequence of a reduced
//! expression and ordered `H_1 > H_2 > ... > H_k`. The label of a cover
//! `A < B` is the smallest hyperplane below `B` and not below `A`, which is
//! the largest qualifying index. A chain is lambda-decreasing exactly when
//! its label indices strictly increase.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{check_size, Permutation, ReducedExpression, Transposition, MAX_N};

/// A set partition of `[n]`, stored canonically: each point records the
/// smallest point of its block.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: u8,
    rep: [u8; MAX_N],
}

impl SetPartition {
    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        let mut rep = [0u8; MAX_N];
        for (i, r) in rep.iter_mut().enumerate().take(n) {
            *r = i as u8;
        }
        SetPartition { n: n as u8, rep }
    }

    /// From 1-based blocks covering `[n]` exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        check_size(n)?;
        let mut rep = [u8::MAX; MAX_N];
        for block in blocks {
            let min = *block.iter().min().ok_or_else(|| Error::Parse { token: "|".into() })?;
            for &x in block {
                if x == 0 || x > n || rep[x - 1] != u8::MAX {
                    return Err(Error::Parse { token: x.to_string() });
                }
                rep[x - 1] = (min - 1) as u8;
            }
        }
        if rep[..n].contains(&u8::MAX) {
            return Err(Error::Parse { token: "missing element".into() });
        }
        for r in rep[n..].iter_mut() {
            *r = 0;
        }
        Ok(SetPartition { n: n as u8, rep })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// 1-based blocks, each sorted, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if self.rep[i] as usize == i {
                out.push((i..n).filter(|&x| self.rep[x] as usize == i).map(|x| x + 1).collect());
            }
        }
        out
    }

    pub fn block_count(&self) -> usize {
        (0..self.n()).filter(|&i| self.rep[i] as usize == i).count()
    }

    /// Codimension of the subspace, `n - #blocks`.
    pub fn rank(&self) -> usize {
        self.n() - self.block_count()
    }

    /// Whether 1-based points `a` and `b` share a block.
    #[inline]
    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.rep[a - 1] == self.rep[b - 1]
    }

    /// Merges the blocks of 1-based points `a` and `b`.
    pub fn merge(&self, a: usize, b: usize) -> SetPartition {
        let (ra, rb) = (self.rep[a - 1], self.rep[b - 1]);
        let (keep, drop) = (ra.min(rb), ra.max(rb));
        let mut out = *self;
        for r in out.rep[..self.n()].iter_mut() {
            if *r == drop {
                *r = keep;
            }
        }
        out
    }

    /// `self <= other` in refinement order: every block of `self` lies in a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        (0..self.n()).all(|i| other.rep[self.rep[i] as usize] == other.rep[i])
    }
}

impl PartialOrd for SetPartition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Rank first, then the canonical representative array lexicographically.
impl Ord for SetPartition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.rank(), self.rep).cmp(&(other.n, other.rank(), other.rep))
    }
}

impl fmt::Display for SetPartition {
    /// `134|2`; elements comma-separated inside blocks when `n > 9`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() <= 9 { "" } else { "," };
        let text = self.blocks().iter().map(|b| b.iter().join(sep)).join("|");
        f.write_str(&text)
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// `n` is the largest element mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.trim().split('|') {
            let block: Vec<usize> = if part.contains(',') {
                part.split(',')
                    .map(|t| t.trim().parse().map_err(|_| Error::Parse { token: t.to_string() }))
                    .collect::<Result<_>>()?
            } else {
                part.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse { token: c.to_string() }))
                    .collect::<Result<_>>()?
            };
            blocks.push(block);
        }
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::from_blocks(n, &blocks)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An upward cover of a lattice element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Cover {
    pub upper: usize,
    /// 1-based hyperplane index.
    pub label: usize,
}

#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    n: usize,
    hyperplanes: Vec<Transposition>,
    elements: Vec<SetPartition>,
    index: HashMap<SetPartition, usize>,
    covers: Vec<Vec<Cover>>,
}

impl IntersectionLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `H_1, ..., H_k` as the transpositions they reflect in.
    pub fn hyperplanes(&self) -> &[Transposition] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Sorted by rank, then by blocks; index 0 is the bottom element.
    pub fn elements(&self) -> &[SetPartition] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &SetPartition {
        &self.elements[idx]
    }

    pub fn index_of(&self, x: &SetPartition) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Upward covers of `idx`, sorted by label.
    pub fn covers(&self, idx: usize) -> &[Cover] {
        &self.covers[idx]
    }

    pub fn cover_label(&self, lower: usize, upper: usize) -> Option<usize> {
        self.covers[lower].iter().find(|c| c.upper == upper).map(|c| c.label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].refines(&self.elements[b])
    }

    pub fn max_rank(&self) -> usize {
        self.elements.last().map_or(0, |x| x.rank())
    }
}

/// Closes the atoms under joins, one cover at a time: in a geometric lattice
/// the upper covers of `X` are exactly `X v H` for the atoms `H` not below `X`.
pub fn build_lattice(w: &Permutation, expr: &ReducedExpression) -> Result<IntersectionLattice> {
    let value = expr.evaluate();
    if value != *w {
        return Err(Error::ExpressionMismatch {
            expected: w.to_string(),
            found: value.to_string(),
        });
    }
    let hyperplanes = expr.reflection_sequence()?;
    let n = w.n();
    let bottom = SetPartition::discrete(n);

    let mut seen: HashMap<SetPartition, Vec<(SetPartition, usize)>> = HashMap::new();
    let mut queue = VecDeque::from([bottom]);
    seen.insert(bottom, Vec::new());
    while let Some(x) = queue.pop_front() {
        let mut ups: Vec<(SetPartition, usize)> = Vec::new();
        for (k, t) in hyperplanes.iter().enumerate() {
            if x.same_block(t.i, t.j) {
                continue;
            }
            let y = x.merge(t.i, t.j);
            // hyperplanes ascend, so the last index reaching y is the label
            match ups.iter_mut().find(|(u, _)| *u == y) {
                Some(entry) => entry.1 = k + 1,
                None => ups.push((y, k + 1)),
            }
            if !seen.contains_key(&y) {
                seen.insert(y, Vec::new());
                queue.push_back(y);
            }
        }
        seen.insert(x, ups);
    }

    let mut elements: Vec<SetPartition> = seen.keys().copied().collect();
    elements.sort();
    let index: HashMap<SetPartition, usize> = elements.iter().enumerate().map(|(k, x)| (*x, k)).collect();
    let covers = elements
        .iter()
        .map(|x| {
            let mut cs: Vec<Cover> = seen[x]
                .iter()
                .map(|(y, label)| Cover {
                    upper: index[y],
                    label: *label,
                })
                .collect();
            cs.sort_by_key(|c| c.label);
            cs
        })
        .collect();
    Ok(IntersectionLattice {
        n,
        hyperplanes,
        elements,
        index,
        covers,
    })
}

/// A saturated chain `0 = X_0 < X_1 < ... < X_m` with its cover labels.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DecreasingChain {
    pub chain: Vec<SetPartition>,
    /// 1-based hyperplane indices `j_1 < j_2 < ... < j_m`.
    pub labels: Vec<usize>,
}

impl DecreasingChain {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn top(&self) -> &SetPartition {
        self.chain.last().expect("chain contains the bottom element")
    }

    /// Label word such as `t1t2t4`; the empty chain prints as `e`.
    pub fn label_word(&self) -> String {
        if self.labels.is_empty() {
            "e".to_string()
        } else {
            self.labels.iter().map(|j| format!("t{j}")).collect()
        }
    }

    /// Checks saturation and strict label decrease against `lattice`.
    pub fn validate(&self, lattice: &IntersectionLattice) -> Result<()> {
        if self.chain.len() != self.labels.len() + 1 || self.chain[0] != SetPartition::discrete(lattice.n()) {
            return Err(Error::NotDecreasing);
        }
        for (k, pair) in self.chain.windows(2).enumerate() {
            let (a, b) = match (lattice.index_of(&pair[0]), lattice.index_of(&pair[1])) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::NotDecreasing),
            };
            if lattice.cover_label(a, b) != Some(self.labels[k]) {
                return Err(Error::NotDecreasing);
            }
        }
        if !self.labels.windows(2).all(|p| p[0] < p[1]) {
            return Err(Error::NotDecreasing);
        }
        Ok(())
    }
}

/// Every lambda-decreasing saturated chain from the bottom, the empty chain
/// included, in lexicographic order of label words.
pub fn decreasing_chains(lattice: &IntersectionLattice) -> Vec<DecreasingChain> {
    fn go(lattice: &IntersectionLattice, at: usize, path: &mut Vec<usize>, labels: &mut Vec<usize>, out: &mut Vec<DecreasingChain>) {
        out.push(DecreasingChain {
            chain: path.iter().map(|&k| lattice.elements[k]).collect(),
            labels: labels.clone(),
        });
        let last = labels.last().copied().unwrap_or(0);
        for cover in lattice.covers(at) {
            if cover.label > last {
                path.push(cover.upper);
                labels.push(cover.label);
                go(lattice, cover.upper, path, labels, out);
                path.pop();
                labels.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(lattice, 0, &mut vec![0], &mut Vec::new(), &mut out);
    out
}

/// Number of decreasing chains ending at each element, by dynamic programming
/// over covers.
pub fn decreasing_chain_counts(lattice: &IntersectionLattice) -> Vec<u64> {
    let k = lattice.hyperplanes.len();
    // ending[x][j]: chains ending at x whose last label is j (0 = empty chain)
    let mut ending = vec![vec![0u64; k + 1]; lattice.len()];
    ending[0][0] = 1;
    // elements are sorted by rank, so every cover goes forward
    for x in 0..lattice.len() {
        let mut prefix = vec![0u64; k + 2];
        for j in 0..=k {
            prefix[j + 1] = prefix[j] + ending[x][j];
        }
        for cover in &lattice.covers[x] {
            ending[cover.upper][cover.label] += prefix[cover.label];
        }
    }
    ending.iter().map(|row| row.iter().sum()).collect()
}

/// `mu(0, X)` by the recursion `mu(0, X) = -sum_{Y < X} mu(0, Y)`.
pub fn mobius_signed(lattice: &IntersectionLattice) -> Vec<i64> {
    let mut mu = vec![0i64; lattice.len()];
    mu[0] = 1;
    for x in 1..lattice.len() {
        let rank = lattice.elements[x].rank();
        let mut sum = 0i64;
        for y in 0..x {
            if lattice.elements[y].rank() < rank && lattice.leq(y, x) {
                sum += mu[y];
            }
        }
        mu[x] = -sum;
    }
    mu
}

/// `|mu(0, X)|` for every element, computed by the Möbius recursion and by
/// counting decreasing chains, which must agree.
pub fn mobius_values(lattice: &IntersectionLattice) -> Result<Vec<u64>> {
    let signed = mobius_signed(lattice);
    let chains = decreasing_chain_counts(lattice);
    for (x, (&mu, &count)) in signed.iter().zip(&chains).enumerate() {
        let rank = lattice.elements[x].rank();
        let sign_ok = mu == 0 || (mu > 0) == (rank % 2 == 0);
        if mu.unsigned_abs() != count || !sign_ok {
            return Err(Error::InvariantViolation(format!(
                "mobius value {mu} at {} disagrees with {count} decreasing chains",
                lattice.elements[x]
            )));
        }
    }
    Ok(chains)
}

/// `beta^i = sum of |mu(0, X)|` over rank-`i` elements.
pub fn betti_numbers(lattice: &IntersectionLattice) -> Result<Vec<u64>> {
    let mu = mobius_values(lattice)?;
    let mut betti = vec![0u64; lattice.max_rank() + 1];
    for (x, m) in lattice.elements.iter().zip(mu) {
        betti[x.rank()] += m;
    }
    Ok(betti)
}

/// Number of regions of the inversion arrangement, the total number of
/// decreasing chains from the bottom.
pub fn region_count(w: &Permutation) -> u64 {
    let lattice = build_lattice(w, &ReducedExpression::canonical(w)).expect("canonical expression is reduced");
    decreasing_chain_counts(&lattice).iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chromatics;
    use std::collections::HashSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn lattice_of(s: &str) -> IntersectionLattice {
        let w = p(s);
        build_lattice(&w, &ReducedExpression::canonical(&w)).unwrap()
    }

    /// Component partitions of every edge subset.
    fn flats_by_subsets(w: &Permutation) -> HashSet<SetPartition> {
        let edges = w.inversions();
        let mut out = HashSet::new();
        for bits in 0u32..1 << edges.len() {
            let mut x = SetPartition::discrete(w.n());
            for (k, &(a, b)) in edges.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    x = x.merge(a, b);
                }
            }
            out.insert(x);
        }
        out
    }

    #[test]
    fn partition_text() {
        let x: SetPartition = "134|2".parse().unwrap();
        assert_eq!(x.blocks(), vec![vec![1, 3, 4], vec![2]]);
        assert_eq!(x.rank(), 2);
        assert_eq!(x.to_string(), "134|2");
        assert!("12|2".parse::<SetPartition>().is_err());
        assert!("12|4".parse::<SetPartition>().is_err());
        let big = SetPartition::discrete(10).merge(1, 10);
        assert_eq!(big.to_string(), "1,10|2|3|4|5|6|7|8|9");
    }

    #[test]
    fn refinement() {
        let a: SetPartition = "12|3|4".parse().unwrap();
        let b: SetPartition = "12|34".parse().unwrap();
        let c: SetPartition = "13|24".parse().unwrap();
        assert!(a.refines(&b) && !b.refines(&a));
        assert!(!a.refines(&c));
        assert!(SetPartition::discrete(4).refines(&c));
    }

    #[test]
    fn identity_lattice_is_a_point() {
        let l = lattice_of("1234");
        assert_eq!(l.len(), 1);
        assert_eq!(decreasing_chains(&l).len(), 1);
        assert_eq!(betti_numbers(&l).unwrap(), vec![1]);
        assert_eq!(region_count(&p("1234")), 1);
    }

    #[test]
    fn lattice_of_4132() {
        let l = lattice_of("4132");
        let names: Vec<String> = l.elements().iter().map(|x| x.to_string()).collect();
        assert_eq!(
            names,
            ["1|2|3|4", "12|3|4", "13|2|4", "14|2|3", "1|2|34", "123|4", "124|3", "12|34", "134|2", "1234"]
        );
        let label = |a: &str, b: &str| {
            l.cover_label(l.index_of(&a.parse().unwrap()).unwrap(), l.index_of(&b.parse().unwrap()).unwrap())
        };
        assert_eq!(label("12|3|4", "12|34"), Some(4));
        assert_eq!(label("13|2|4", "123|4"), Some(1));
        assert_eq!(label("13|2|4", "134|2"), Some(4));
        assert_eq!(label("12|34", "1234"), Some(3));
        assert_eq!(label("134|2", "1234"), Some(1));
        assert_eq!(label("12|3|4", "134|2"), None);
    }

    #[test]
    fn chains_of_4132() {
        let l = lattice_of("4132");
        let words: Vec<String> = decreasing_chains(&l).iter().map(|c| c.label_word()).collect();
        assert_eq!(
            words,
            ["e", "t1", "t1t2", "t1t2t4", "t1t3", "t1t3t4", "t1t4", "t2", "t2t4", "t3", "t3t4", "t4"]
        );
        for c in decreasing_chains(&l) {
            c.validate(&l).unwrap();
        }
    }

    #[test]
    fn invalid_chains_rejected() {
        let l = lattice_of("4132");
        let bad = DecreasingChain {
            chain: vec![SetPartition::discrete(4), "13|2|4".parse().unwrap(), "123|4".parse().unwrap()],
            labels: vec![2, 1],
        };
        assert_eq!(bad.validate(&l), Err(Error::NotDecreasing));
    }

    #[test]
    fn mobius_of_4132() {
        let l = lattice_of("4132");
        let mu = mobius_values(&l).unwrap();
        assert_eq!(mu, vec![1, 1, 1, 1, 1, 1, 1, 1, 2, 2]);
        assert_eq!(mu.iter().sum::<u64>(), 12);
        assert_eq!(betti_numbers(&l).unwrap(), vec![1, 4, 5, 2]);
        assert_eq!(region_count(&p("4132")), 12);
    }

    #[test]
    fn lattice_of_4231_matches_subset_oracle() {
        let w = p("4231");
        let l = lattice_of("4231");
        let oracle = flats_by_subsets(&w);
        assert_eq!(l.elements().iter().copied().collect::<HashSet<_>>(), oracle);
        // K4 minus {2,3}: every partition except 1|23|4 and 14|23
        assert_eq!(l.len(), 13);
    }

    #[test]
    fn elements_match_subset_oracle_on_s5() {
        for w in Permutation::all(5).unwrap() {
            let l = build_lattice(&w, &ReducedExpression::canonical(&w)).unwrap();
            let got: HashSet<_> = l.elements().iter().copied().collect();
            assert_eq!(got.len(), l.len());
            assert_eq!(got, flats_by_subsets(&w), "{w}");
        }
    }

    #[test]
    fn covers_merge_two_blocks() {
        for w in Permutation::all(5).unwrap() {
            let l = build_lattice(&w, &ReducedExpression::canonical(&w)).unwrap();
            for a in 0..l.len() {
                for c in l.covers(a) {
                    let (x, y) = (l.element(a), l.element(c.upper));
                    assert!(x.refines(y));
                    assert_eq!(y.rank(), x.rank() + 1);
                    let t = l.hyperplanes()[c.label - 1];
                    assert!(y.same_block(t.i, t.j) && !x.same_block(t.i, t.j));
                }
            }
        }
    }

    /// Exactly one label-increasing (index-decreasing) saturated chain in every interval.
    #[test]
    fn el_labelling_on_s5() {
        fn increasing_chains(l: &IntersectionLattice, from: usize, to: usize, last: usize) -> usize {
            if from == to {
                return 1;
            }
            l.covers(from)
                .iter()
                .filter(|c| c.label < last && l.leq(c.upper, to))
                .map(|c| increasing_chains(l, c.upper, to, c.label))
                .sum()
        }
        for w in Permutation::all(5).unwrap() {
            let l = build_lattice(&w, &ReducedExpression::canonical(&w)).unwrap();
            for a in 0..l.len() {
                for b in 0..l.len() {
                    if l.leq(a, b) {
                        assert_eq!(increasing_chains(&l, a, b, usize::MAX), 1, "{w}");
                    }
                }
            }
        }
    }

    #[test]
    fn counts_agree_on_s5() {
        for w in Permutation::all(5).unwrap() {
            let l = build_lattice(&w, &ReducedExpression::canonical(&w)).unwrap();
            let mu = mobius_values(&l).unwrap();
            let re: u64 = mu.iter().sum();
            assert_eq!(re, decreasing_chains(&l).len() as u64);
            assert_eq!(re, chromatics::acyclic_orientations(&w.inversion_graph()), "{w}");
            let betti = betti_numbers(&l).unwrap();
            assert_eq!(betti.iter().sum::<u64>(), re);
            assert_eq!(betti[0], 1);
            if w.length() > 0 {
                assert_eq!(betti[1] as usize, w.length());
            }
        }
    }

    #[test]
    fn betti_of_4231_matches_whitney_numbers() {
        let w = p("4231");
        let betti = betti_numbers(&lattice_of("4231")).unwrap();
        let chi = chromatics::chromatic_polynomial(&w.inversion_graph());
        let whitney: Vec<u64> = (0..=3).map(|i| chi.coeff(4 - i).unsigned_abs()).collect();
        assert_eq!(betti, whitney);
        assert_eq!(chi.coeff(0), 0);
    }

    #[test]
    fn region_count_symmetric_up_to_s6() {
        for n in 1..=6 {
            for w in Permutation::all(n).unwrap() {
                let re = region_count(&w);
                assert_eq!(re, region_count(&w.inverse()));
                assert_eq!(re, region_count(&w.rotate()));
            }
        }
    }

    #[test]
    fn wrong_expression_rejected() {
        let w = p("4132");
        let other = ReducedExpression::canonical(&p("4123"));
        assert!(matches!(build_lattice(&w, &other), Err(Error::ExpressionMismatch { .. })));
    }
}
