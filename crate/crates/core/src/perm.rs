//! Permutations of `[n]` acting from the right.
//!
//! A permutation is written in one-line notation `1w 2w ... nw`. Products
//! read left to right: `uw` means "first `u`, then `w`", so
//! `i(uw) = (iu)w`. With this convention left multiplication by a
//! transposition `(i j)` swaps the entries at positions `i` and `j`, and
//! right multiplication swaps the values `i` and `j`.
//!
//! Positions and values are 1-based on the public surface.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported `n`.
pub const MAX_N: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    // 0-based images; entries past `n` stay zero so derived traits agree
    word: [u8; MAX_N],
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        check_size(n)?;
        let mut word = [0u8; MAX_N];
        for (i, slot) in word.iter_mut().enumerate().take(n) {
            *slot = i as u8;
        }
        Ok(Permutation { n: n as u8, word })
    }

    /// The longest element `n(n-1)...1`.
    pub fn longest(n: usize) -> Result<Self> {
        check_size(n)?;
        let mut word = [0u8; MAX_N];
        for (i, slot) in word.iter_mut().enumerate().take(n) {
            *slot = (n - 1 - i) as u8;
        }
        Ok(Permutation { n: n as u8, word })
    }

    /// Builds a permutation from its 1-based one-line word.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        check_size(n)?;
        let mut seen = [false; MAX_N];
        let mut word = [0u8; MAX_N];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation {
                    n,
                    word: values.to_vec(),
                });
            }
            seen[v - 1] = true;
            word[i] = (v - 1) as u8;
        }
        Ok(Permutation { n: n as u8, word })
    }

    /// Caller guarantees `images` is a bijection on `0..images.len()`.
    pub(crate) fn from_zero_based(images: &[u8]) -> Self {
        debug_assert!(images.len() <= MAX_N);
        let mut word = [0u8; MAX_N];
        word[..images.len()].copy_from_slice(images);
        Permutation {
            n: images.len() as u8,
            word,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// `iw` for a 1-based position `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.word[i - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn zero_based(&self) -> &[u8] {
        &self.word[..self.n as usize]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.zero_based().iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.zero_based().iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `uw`: first `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let mut word = [0u8; MAX_N];
        for i in 0..self.n() {
            word[i] = other.word[self.word[i] as usize];
        }
        Permutation { n: self.n, word }
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = [0u8; MAX_N];
        for i in 0..self.n() {
            word[self.word[i] as usize] = i as u8;
        }
        Permutation { n: self.n, word }
    }

    /// Transposes the rook diagram; the same permutation as [`inverse`](Self::inverse).
    pub fn transpose(&self) -> Permutation {
        self.inverse()
    }

    /// `w0 w w0`: the rook diagram turned by 180 degrees.
    pub fn rotate(&self) -> Permutation {
        let n = self.n();
        let mut word = [0u8; MAX_N];
        for i in 0..n {
            word[n - 1 - i] = (n - 1 - self.word[i] as usize) as u8;
        }
        Permutation { n: self.n, word }
    }

    /// `(i j) w` for 1-based positions: swaps the entries in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Permutation {
        let mut out = *self;
        out.word.swap(i - 1, j - 1);
        out
    }

    /// `w (a b)` for 1-based values: swaps the values `a` and `b`.
    pub fn swap_values(&self, a: usize, b: usize) -> Permutation {
        let (a0, b0) = ((a - 1) as u8, (b - 1) as u8);
        let mut out = *self;
        for v in out.word[..self.n()].iter_mut() {
            if *v == a0 {
                *v = b0;
            } else if *v == b0 {
                *v = a0;
            }
        }
        out
    }

    /// All pairs `(i, j)`, `i < j`, with `iw > jw`, in lexicographic order.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let w = self.zero_based();
        let n = w.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if w[i] > w[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    #[inline]
    pub fn is_inversion(&self, i: usize, j: usize) -> bool {
        (i < j && self.word[i - 1] > self.word[j - 1]) || (j < i && self.word[j - 1] > self.word[i - 1])
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let w = self.zero_based();
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Cycles of length at least two, each starting at its smallest point, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = [false; MAX_N];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.word[i] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let fixed = self.zero_based().iter().enumerate().filter(|(i, &v)| *i == v as usize).count();
        fixed + self.cycles().len()
    }

    /// Minimal number of transpositions whose product is `w`: `n` minus the number of cycles.
    pub fn absolute_length(&self) -> usize {
        self.n() - self.cycle_count()
    }

    /// Cycle notation, e.g. `(1 4 2)`; the identity prints as `e`.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "e".to_string();
        }
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().join(" ")))
            .collect()
    }

    /// 1-based descent positions `a` with `aw > (a+1)w`.
    pub fn descents(&self) -> Vec<usize> {
        let w = self.zero_based();
        (1..w.len()).filter(|&a| w[a - 1] > w[a]).collect()
    }

    /// Removes position `i` and its value, then standardizes: the rook diagram
    /// with row `i` and column `iw` deleted.
    pub fn delete_rook(&self, i: usize) -> Permutation {
        let removed = self.word[i - 1];
        let mut images = Vec::with_capacity(self.n() - 1);
        for (pos, &v) in self.zero_based().iter().enumerate() {
            if pos == i - 1 {
                continue;
            }
            images.push(if v > removed { v - 1 } else { v });
        }
        Permutation::from_zero_based(&images)
    }

    /// Left-to-right maxima positions; position 1 is always one.
    pub fn record_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut best: Option<u8> = None;
        for (i, &v) in self.zero_based().iter().enumerate() {
            if best.map_or(true, |b| v > b) {
                out.push(i + 1);
                best = Some(v);
            }
        }
        out
    }

    /// Exponents `e_1..e_n` of the record-position product formula for the
    /// chromatic polynomial of a smooth permutation's inversion graph.
    pub fn opy_exponents(&self) -> Vec<usize> {
        let w = self.zero_based();
        let n = w.len();
        let records = self.record_positions();
        let mut out = Vec::with_capacity(n);
        for i in 1..=n {
            // r_i: last record <= i; r'_i: first record > i, if any
            let r = *records.iter().rev().find(|&&r| r <= i).expect("position 1 is a record");
            let r_next = records.iter().find(|&&r| r > i).copied();
            let wi = w[i - 1];
            let before = (r..i).filter(|&j| w[j - 1] > wi).count();
            let after = match r_next {
                Some(rn) => (rn..=n).filter(|&k| w[k - 1] < wi).count(),
                None => 0,
            };
            out.push(before + after);
        }
        out
    }

    /// The inversion graph on positions `1..=n`.
    pub fn inversion_graph(&self) -> crate::graph::Graph {
        crate::graph::Graph::inversion_graph(self)
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Permutation>> {
        check_size(n)?;
        Ok((0..n as u8)
            .permutations(n)
            .map(|images| Permutation::from_zero_based(&images)))
    }
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        Err(Error::UnsupportedSize(n))
    } else {
        Ok(())
    }
}

impl fmt::Display for Permutation {
    /// Digits for `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in self.one_line() {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.one_line().iter().join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut values = Vec::new();
        if s.contains(',') {
            for token in s.split(',') {
                let token = token.trim();
                let v = token.parse::<usize>().map_err(|_| Error::Parse {
                    token: token.to_string(),
                })?;
                values.push(v);
            }
        } else {
            if s.is_empty() {
                return Err(Error::Parse { token: String::new() });
            }
            for c in s.chars() {
                let v = c.to_digit(10).ok_or_else(|| Error::Parse { token: c.to_string() })?;
                values.push(v as usize);
            }
        }
        Permutation::from_one_line(&values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A transposition `(i j)` with `1 <= i < j <= n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Transposition {
    pub i: usize,
    pub j: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "a transposition moves two distinct points");
        Transposition {
            i: a.min(b),
            j: a.max(b),
        }
    }

    pub fn to_permutation(&self, n: usize) -> Permutation {
        Permutation::identity(n)
            .expect("size already validated")
            .swap_positions(self.i, self.j)
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.i, self.j)
    }
}

/// A word `s_{a_1} ... s_{a_k}` in the adjacent transpositions `s_a = (a a+1)`
/// whose product has length `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ReducedExpression {
    n: usize,
    letters: Vec<usize>,
}

impl ReducedExpression {
    /// Validates that every letter lies in `1..n` and that the word is reduced.
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        check_size(n)?;
        if letters.iter().any(|&a| a == 0 || a >= n) {
            return Err(Error::NotReduced);
        }
        let expr = ReducedExpression { n, letters };
        if expr.evaluate().length() != expr.letters.len() {
            return Err(Error::NotReduced);
        }
        Ok(expr)
    }

    /// Peels off the smallest left descent until the word is sorted.
    pub fn canonical(w: &Permutation) -> Self {
        let mut current = *w;
        let mut letters = Vec::with_capacity(w.length());
        while let Some(&a) = current.descents().first() {
            letters.push(a);
            current = current.swap_positions(a, a + 1);
        }
        ReducedExpression { n: w.n(), letters }
    }

    /// Every reduced word for `w`, in lexicographic order.
    pub fn all_for(w: &Permutation) -> Vec<Self> {
        fn go(current: Permutation, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let descents = current.descents();
            if descents.is_empty() {
                out.push(prefix.clone());
                return;
            }
            for a in descents {
                prefix.push(a);
                go(current.swap_positions(a, a + 1), prefix, out);
                prefix.pop();
            }
        }
        let mut words = Vec::new();
        go(*w, &mut Vec::new(), &mut words);
        words
            .into_iter()
            .map(|letters| ReducedExpression { n: w.n(), letters })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product `s_{a_1} ... s_{a_k}`.
    pub fn evaluate(&self) -> Permutation {
        let mut w = Permutation::identity(self.n).expect("size validated at construction");
        for &a in &self.letters {
            w = w.swap_values(a, a + 1);
        }
        w
    }

    /// `t_i = s_{a_1} ... s_{a_{i-1}} s_{a_i} s_{a_{i-1}} ... s_{a_1}` for each `i`.
    ///
    /// The order of the result is the hyperplane order `H_1 > H_2 > ... > H_k`.
    pub fn reflection_sequence(&self) -> Result<Vec<Transposition>> {
        let mut prefix = Permutation::identity(self.n)?;
        let mut out: Vec<Transposition> = Vec::with_capacity(self.len());
        for &a in &self.letters {
            // t = prefix s_a prefix^{-1} moves exactly the points a u^{-1}, (a+1) u^{-1}
            let inv = prefix.inverse();
            let t = Transposition::new(inv.image(a), inv.image(a + 1));
            if out.contains(&t) {
                return Err(Error::NotReduced);
            }
            out.push(t);
            prefix = prefix.swap_values(a, a + 1);
        }
        Ok(out)
    }
}

impl fmt::Display for ReducedExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for a in &self.letters {
            write!(f, "s{a}")?;
        }
        Ok(())
    }
}
