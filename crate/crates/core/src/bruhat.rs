//! Bruhat order on `S_n`: comparison, lower intervals, the Bruhat graph and
//! the weak orders.
//!
//! Rook diagrams put a rook at row `i`, column `iw`, with row 1 on top.
//! "Below" means a larger row index and "left" a smaller column index.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns;
use crate::permanent::permanent_01;
use crate::perm::Permutation;

/// The table `w[i, j] = |{m <= i : mw >= j}|`, 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankMatrix {
    n: usize,
    counts: Vec<u8>,
}

impl RankMatrix {
    pub fn of(w: &Permutation) -> Self {
        let n = w.n();
        let mut counts = vec![0u8; n * n];
        let word = w.zero_based();
        for i in 0..n {
            for j in 0..n {
                let above = if i > 0 { counts[(i - 1) * n + j] } else { 0 };
                counts[i * n + j] = above + u8::from(word[i] as usize >= j);
            }
        }
        RankMatrix { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `w[i, j]` for `1 <= i, j <= n`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.counts[(i - 1) * self.n + (j - 1)] as usize
    }

    /// Entrywise `self <= other`.
    pub fn dominated_by(&self, other: &RankMatrix) -> bool {
        self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }
}

/// `|{m <= i : mw >= j}|` without building the full table.
#[inline]
fn rank_at(w: &Permutation, i: usize, j: usize) -> usize {
    w.zero_based()[..i].iter().filter(|&&v| v as usize + 1 >= j).count()
}

/// Which criterion [`bruhat_leq_with`] evaluates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Criterion {
    /// Compare every entry of the rank matrices.
    RankMatrix,
    /// Compare the rank matrices only at the bubbles of the upper element.
    Bubbles,
    /// All rooks of the lower element lie in the right hull of the upper
    /// element. Valid only when the upper element avoids the four patterns.
    RightHull,
}

pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    bruhat_leq_with(u, w, Criterion::Bubbles)
}

pub fn bruhat_leq_with(u: &Permutation, w: &Permutation, criterion: Criterion) -> Result<bool> {
    if u.n() != w.n() {
        return Err(Error::SizeMismatch(u.n(), w.n()));
    }
    Ok(match criterion {
        Criterion::RankMatrix => RankMatrix::of(u).dominated_by(&RankMatrix::of(w)),
        Criterion::Bubbles => bubbles(w).iter().all(|&(i, j)| rank_at(u, i, j) <= rank_at(w, i, j)),
        Criterion::RightHull => {
            if !patterns::is_chromobruhatic(w) {
                return Err(Error::HullRequiresAvoiding(w.to_string()));
            }
            let hull = right_hull(w);
            (1..=u.n()).all(|i| hull.contains(i, u.image(i)))
        }
    })
}

/// Squares `(i, j)` with a rook strictly left in row `i` and strictly below
/// in column `j`, in row-major order.
pub fn bubbles(w: &Permutation) -> Vec<(usize, usize)> {
    let n = w.n();
    let inv = w.inverse();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in w.image(i) + 1..=n {
            if inv.image(j) > i {
                out.push((i, j));
            }
        }
    }
    out
}

/// Squares with a rook weakly south-west and a rook weakly north-east.
///
/// In every row the hull is a contiguous run of columns, so it is stored as
/// one bitmask per row.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RightHull {
    n: usize,
    rows: Vec<u16>,
}

impl RightHull {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether square `(i, j)` (1-based) is in the hull.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    /// Row bitmasks, bit `j - 1` for column `j`.
    pub fn rows(&self) -> &[u16] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// The hull with the board turned by 180 degrees.
    pub fn rotated(&self) -> RightHull {
        let n = self.n;
        let mut rows = vec![0u16; n];
        for i in 1..=n {
            for j in 1..=n {
                if self.contains(i, j) {
                    rows[n - i] |= 1 << (n - j);
                }
            }
        }
        RightHull { n, rows }
    }

    /// One text line per row, `#` inside the hull and `.` outside.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                s.push(if self.contains(i, j) { '#' } else { '.' });
            }
            s.push('\n');
        }
        s
    }
}

pub fn right_hull(w: &Permutation) -> RightHull {
    let n = w.n();
    // leftmost rook in rows i..n and rightmost rook in rows 1..=i bound row i
    let mut lo = vec![usize::MAX; n + 2];
    for i in (1..=n).rev() {
        lo[i] = lo[i + 1].min(w.image(i));
    }
    let mut rows = vec![0u16; n];
    let mut hi = 0;
    for i in 1..=n {
        hi = hi.max(w.image(i));
        for j in lo[i]..=hi {
            rows[i - 1] |= 1 << (j - 1);
        }
    }
    RightHull { n, rows }
}

/// `[e, w]` in lexicographic order, by filtering `S_n`.
pub fn interval(w: &Permutation) -> Vec<Permutation> {
    let bubbles = bubbles(w);
    let targets: Vec<usize> = bubbles.iter().map(|&(i, j)| rank_at(w, i, j)).collect();
    Permutation::all(w.n())
        .expect("size validated at construction")
        .filter(|u| bubbles.iter().zip(&targets).all(|(&(i, j), &t)| rank_at(u, i, j) <= t))
        .collect()
}

/// `br(w) = |[e, w]|`.
pub fn interval_size(w: &Permutation) -> u64 {
    interval_size_by_subsets(w)
}

/// Counts `[e, w]` by dynamic programming over value sets.
///
/// `u[i, j]` depends only on the set `{1u, ..., iu}`, so `u <= w` iff every
/// prefix set `S` of size `i` has at most `w[i, j]` values `>= j` for all
/// `j`. The count is the number of saturated chains of such sets, found in
/// `O(2^n n)`.
pub fn interval_size_by_subsets(w: &Permutation) -> u64 {
    let n = w.n();
    let rank = RankMatrix::of(w);
    let mut ways = vec![0u64; 1 << n];
    ways[0] = 1;
    for set in 0usize..1 << n {
        if ways[set] == 0 {
            continue;
        }
        let i = set.count_ones() as usize;
        if i > 0 {
            let mut at_least = 0;
            let admissible = (1..=n).rev().all(|j| {
                at_least += set >> (j - 1) & 1;
                at_least <= rank.get(i, j)
            });
            if !admissible {
                ways[set] = 0;
                continue;
            }
        }
        for v in 0..n {
            if set >> v & 1 == 0 {
                ways[set | 1 << v] += ways[set];
            }
        }
    }
    ways[(1 << n) - 1]
}

pub fn interval_size_by_filter(w: &Permutation) -> u64 {
    interval(w).len() as u64
}

/// Permanent of the right-hull mask, which counts the permutations whose
/// rooks all lie in the hull. Equals `br(w)` only for avoiding `w`.
pub fn interval_size_by_permanent(w: &Permutation) -> Result<u64> {
    if !patterns::is_chromobruhatic(w) {
        return Err(Error::HullRequiresAvoiding(w.to_string()));
    }
    Ok(permanent_01(right_hull(w).rows()))
}

/// Counts lower intervals across a whole `S_n` sweep.
///
/// Rank matrices of every permutation are computed once, so each count is a
/// pass over a flat table comparing only at the bubbles of the upper element.
pub struct LowerIntervalCounter {
    n: usize,
    table: Vec<u8>,
}

impl LowerIntervalCounter {
    pub fn new(n: usize) -> Result<Self> {
        let mut table = Vec::new();
        for u in Permutation::all(n)? {
            table.extend_from_slice(&RankMatrix::of(&u).counts);
        }
        Ok(LowerIntervalCounter { n, table })
    }

    pub fn count(&self, w: &Permutation) -> u64 {
        assert_eq!(w.n(), self.n);
        let rank = RankMatrix::of(w);
        let checks: Vec<(usize, u8)> = bubbles(w)
            .into_iter()
            .map(|(i, j)| ((i - 1) * self.n + (j - 1), rank.get(i, j) as u8))
            .collect();
        self.table
            .chunks_exact(self.n * self.n)
            .filter(|m| checks.iter().all(|&(idx, bound)| m[idx] <= bound))
            .count() as u64
    }
}

/// Directed distance `al(u, w)` from every `u` in `[e, w]` to `w` in the
/// Bruhat graph, whose edges are `x -> tx` with `l(x) < l(tx)`.
///
/// Runs backwards from `w`: the predecessors of `y` are `(i j) y` for the
/// inversions `(i, j)` of `y`. Every vertex with a path to `w` lies below
/// `w`, so the search never leaves the interval and reaches all of it.
pub fn distances_to(w: &Permutation) -> HashMap<Permutation, u32> {
    let mut dist = HashMap::new();
    dist.insert(*w, 0u32);
    let mut queue = VecDeque::from([*w]);
    while let Some(y) = queue.pop_front() {
        let d = dist[&y];
        for (i, j) in y.inversions() {
            let x = y.swap_positions(i, j);
            dist.entry(x).or_insert_with(|| {
                queue.push_back(x);
                d + 1
            });
        }
    }
    dist
}

pub fn directed_distance(u: &Permutation, w: &Permutation) -> Result<u32> {
    if !bruhat_leq(u, w)? {
        return Err(Error::NotBelow {
            u: u.to_string(),
            w: w.to_string(),
        });
    }
    Ok(distances_to(w)[u])
}

/// Forward search from `u` over the Bruhat graph on all of `S_n`. Reference
/// implementation for checking the interval-restricted search.
pub fn directed_distance_unrestricted(u: &Permutation, w: &Permutation) -> Option<u32> {
    let n = u.n();
    let mut dist = HashMap::new();
    dist.insert(*u, 0u32);
    let mut queue = VecDeque::from([*u]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if x == *w {
            return Some(d);
        }
        for i in 1..=n {
            for j in i + 1..=n {
                if x.is_inversion(i, j) {
                    continue;
                }
                let y = x.swap_positions(i, j);
                dist.entry(y).or_insert_with(|| {
                    queue.push_back(y);
                    d + 1
                });
            }
        }
    }
    None
}

/// The Bruhat graph restricted to `[e, w]`.
#[derive(Clone, Debug)]
pub struct BruhatGraph {
    pub vertices: Vec<Permutation>,
    /// `(a, b)` means `vertices[a] -> vertices[b]`.
    pub edges: Vec<(usize, usize)>,
}

impl BruhatGraph {
    pub fn of_interval(w: &Permutation) -> Self {
        let vertices = interval(w);
        let index: HashMap<Permutation, usize> =
            vertices.iter().enumerate().map(|(k, v)| (*v, k)).collect();
        let mut edges = Vec::new();
        for (a, x) in vertices.iter().enumerate() {
            for i in 1..=x.n() {
                for j in i + 1..=x.n() {
                    if x.is_inversion(i, j) {
                        continue;
                    }
                    if let Some(&b) = index.get(&x.swap_positions(i, j)) {
                        edges.push((a, b));
                    }
                }
            }
        }
        BruhatGraph { vertices, edges }
    }
}

/// `INV(u) ⊆ INV(w)`.
pub fn weak_leq_right(u: &Permutation, w: &Permutation) -> Result<bool> {
    if u.n() != w.n() {
        return Err(Error::SizeMismatch(u.n(), w.n()));
    }
    Ok(u.inversions().iter().all(|&(i, j)| w.is_inversion(i, j)))
}

/// `INV(u^-1) ⊆ INV(w^-1)`.
pub fn weak_leq_left(u: &Permutation, w: &Permutation) -> Result<bool> {
    weak_leq_right(&u.inverse(), &w.inverse())
}

/// Elements covered by `w` in the two-sided weak order: `s_a w` for the
/// descents `a` of `w` and `w s_a` for the descents of `w^-1`. Sorted.
pub fn two_sided_weak_covers(w: &Permutation) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = w
        .descents()
        .into_iter()
        .map(|a| w.swap_positions(a, a + 1))
        .chain(w.inverse().descents().into_iter().map(|a| w.swap_values(a, a + 1)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A saturated chain `w = c_0 > c_1 > ... > e` in the two-sided weak order
/// with every element satisfying `keep`, if one exists.
pub fn weak_chain_to_identity<F>(w: &Permutation, keep: F) -> Option<Vec<Permutation>>
where
    F: Fn(&Permutation) -> bool,
{
    fn go<F: Fn(&Permutation) -> bool>(
        x: Permutation,
        keep: &F,
        dead: &mut HashSet<Permutation>,
        path: &mut Vec<Permutation>,
    ) -> bool {
        path.push(x);
        if x.is_identity() {
            return true;
        }
        for y in two_sided_weak_covers(&x) {
            if dead.contains(&y) || !keep(&y) {
                continue;
            }
            if go(y, keep, dead, path) {
                return true;
            }
            dead.insert(y);
        }
        path.pop();
        false
    }
    if !keep(w) {
        return None;
    }
    let mut path = Vec::new();
    let mut dead = HashSet::new();
    go(*w, &keep, &mut dead, &mut path).then_some(path)
}
