//! Pattern containment, the chromobruhatic and smooth classes, reduction
//! pairs and the witnesses below non-avoiding permutations.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const CHROMOBRUHATIC_PATTERNS: [&str; 4] = ["4231", "35142", "42513", "351624"];
pub const SMOOTH_PATTERNS: [&str; 2] = ["3412", "4231"];

/// A finite set of patterns; a permutation is in the class iff it avoids all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternClass {
    pub name: &'static str,
    pub patterns: Vec<Permutation>,
}

impl PatternClass {
    fn from_words(name: &'static str, words: &[&str]) -> Self {
        PatternClass {
            name,
            patterns: words.iter().map(|s| s.parse().expect("valid pattern")).collect(),
        }
    }

    pub fn chromobruhatic() -> Self {
        Self::from_words("chromobruhatic", &CHROMOBRUHATIC_PATTERNS)
    }

    pub fn smooth() -> Self {
        Self::from_words("smooth", &SMOOTH_PATTERNS)
    }

    pub fn contains_member(&self, w: &Permutation) -> bool {
        self.patterns.iter().all(|p| !contains(w, p))
    }
}

/// Lexicographically first positions `i_1 < ... < i_m` (1-based) at which `w`
/// realizes the relative order of `pattern`.
pub fn find_occurrence(w: &Permutation, pattern: &Permutation) -> Option<Vec<usize>> {
    let m = pattern.n();
    let n = w.n();
    if m > n {
        return None;
    }
    let word = w.zero_based();
    let pat = pattern.zero_based();
    // chosen[k] = position (0-based) assigned to pattern letter k
    let mut chosen = vec![0usize; m];

    fn go(word: &[u8], pat: &[u8], chosen: &mut [usize], k: usize, start: usize) -> bool {
        let m = pat.len();
        if k == m {
            return true;
        }
        // value window from already placed letters
        let mut lo: i16 = -1;
        let mut hi: i16 = word.len() as i16;
        for l in 0..k {
            let v = word[chosen[l]] as i16;
            if pat[l] < pat[k] {
                lo = lo.max(v);
            } else {
                hi = hi.min(v);
            }
        }
        let last = word.len() - (m - k);
        for pos in start..=last {
            let v = word[pos] as i16;
            if v > lo && v < hi {
                chosen[k] = pos;
                if go(word, pat, chosen, k + 1, pos + 1) {
                    return true;
                }
            }
        }
        false
    }

    go(word, pat, &mut chosen, 0, 0).then(|| chosen.iter().map(|&p| p + 1).collect())
}

pub fn contains(w: &Permutation, pattern: &Permutation) -> bool {
    find_occurrence(w, pattern).is_some()
}

/// Avoids 4231, 35142, 42513 and 351624.
pub fn is_chromobruhatic(w: &Permutation) -> bool {
    CHROMOBRUHATIC_PATTERNS
        .iter()
        .all(|p| !contains(w, &p.parse().expect("valid pattern")))
}

/// Avoids 3412 and 4231.
pub fn is_smooth(w: &Permutation) -> bool {
    SMOOTH_PATTERNS
        .iter()
        .all(|p| !contains(w, &p.parse().expect("valid pattern")))
}

/// A rook of a rook diagram: row `i`, column `iw`, both 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Rook {
    pub row: usize,
    pub col: usize,
}

impl Rook {
    pub fn of(w: &Permutation, row: usize) -> Self {
        Rook { row, col: w.image(row) }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    Light,
    Heavy,
}

/// A descent `x, y` (`y` in the row directly above `x`, and to its right)
/// satisfying the light or heavy emptiness conditions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ReductionPair {
    pub kind: PairKind,
    pub x: Rook,
    pub y: Rook,
}

/// The four diagram symmetries generated by transposition and rotation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Identity,
    Inverse,
    Rotate,
    RotateInverse,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::Identity,
        Symmetry::Inverse,
        Symmetry::Rotate,
        Symmetry::RotateInverse,
    ];

    pub fn apply(self, w: &Permutation) -> Permutation {
        match self {
            Symmetry::Identity => *w,
            Symmetry::Inverse => w.inverse(),
            Symmetry::Rotate => w.rotate(),
            Symmetry::RotateInverse => w.rotate().inverse(),
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::Identity => "w",
            Symmetry::Inverse => "w^-1",
            Symmetry::Rotate => "rot(w)",
            Symmetry::RotateInverse => "rot(w)^-1",
        })
    }
}

/// A reduction pair found in one of the symmetry images of a permutation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ReductionHit {
    pub symmetry: Symmetry,
    pub target: Permutation,
    pub pair: ReductionPair,
}

/// The descent pair with `x` in row `row` and `y` directly above it.
fn descent_at(w: &Permutation, row: usize) -> Option<(Rook, Rook)> {
    if row < 2 || row > w.n() || w.image(row) > w.image(row - 1) {
        return None;
    }
    Some((Rook::of(w, row), Rook::of(w, row - 1)))
}

/// `x` is the lower rook of the first descent: `x_i = min{i : iw < (i-1)w}`.
pub fn first_descent(w: &Permutation) -> Option<(Rook, Rook)> {
    w.descents().first().and_then(|&a| descent_at(w, a + 1))
}

fn rooks(w: &Permutation) -> impl Iterator<Item = Rook> + '_ {
    (1..=w.n()).map(move |i| Rook::of(w, i))
}

pub fn is_light(w: &Permutation, x: Rook, y: Rook) -> bool {
    let ne_of_y = rooks(w).any(|a| a.row < y.row && a.col > y.col);
    let below_x_between = rooks(w).any(|a| a.row > x.row && x.col < a.col && a.col < y.col);
    !ne_of_y && !below_x_between
}

pub fn is_heavy(w: &Permutation, x: Rook, y: Rook) -> bool {
    let sw_of_x = rooks(w).any(|a| a.row > x.row && a.col < x.col);
    let ne_of_y = rooks(w).any(|a| a.row < y.row && a.col > y.col);
    if sw_of_x || ne_of_y {
        return false;
    }
    let crossing = rooks(w).any(|a| {
        a.row < y.row
            && x.col < a.col
            && rooks(w).any(|b| b.row > x.row && a.col < b.col && b.col < y.col)
    });
    !crossing
}

/// The column-split form of the third heavy condition: some `x_j <= j < y_j`
/// leaves `[1, y_i-1] x [x_j+1, j]` and `[x_i+1, n] x [j+1, y_j-1]` empty.
pub fn heavy_split_exists(w: &Permutation, x: Rook, y: Rook) -> bool {
    (x.col..y.col).any(|j| {
        let upper_empty = !rooks(w).any(|a| a.row < y.row && a.col > x.col && a.col <= j);
        let lower_empty = !rooks(w).any(|a| a.row > x.row && a.col > j && a.col < y.col);
        upper_empty && lower_empty
    })
}

/// Light takes precedence over heavy when both hold.
pub fn classify_descent(w: &Permutation, row: usize) -> Option<ReductionPair> {
    let (x, y) = descent_at(w, row)?;
    let kind = if is_light(w, x, y) {
        PairKind::Light
    } else if is_heavy(w, x, y) {
        PairKind::Heavy
    } else {
        return None;
    };
    Some(ReductionPair { kind, x, y })
}

/// Looks only at the first descent of `w` and then the first descent of `w^-1`.
pub fn first_descent_reduction_pair(w: &Permutation) -> Option<ReductionHit> {
    [Symmetry::Identity, Symmetry::Inverse].into_iter().find_map(|symmetry| {
        let target = symmetry.apply(w);
        let (x, _) = first_descent(&target)?;
        classify_descent(&target, x.row).map(|pair| ReductionHit {
            symmetry,
            target,
            pair,
        })
    })
}

/// A reduction pair among the four symmetry images of `w`.
///
/// Light pairs are searched over every descent of every image first. Only
/// when no image has a light pair anywhere is a heavy pair returned, first
/// trying the first descents of `w` and `w^-1`, then any descent. With that
/// order the heavy recurrences apply to whatever is returned.
pub fn find_reduction_pair(w: &Permutation) -> Option<ReductionHit> {
    let images: Vec<(Symmetry, Permutation)> = Symmetry::ALL.iter().map(|&s| (s, s.apply(w))).collect();
    let light = images.iter().find_map(|&(symmetry, target)| {
        target.descents().into_iter().find_map(|a| {
            classify_descent(&target, a + 1)
                .filter(|pair| pair.kind == PairKind::Light)
                .map(|pair| ReductionHit {
                    symmetry,
                    target,
                    pair,
                })
        })
    });
    if light.is_some() {
        return light;
    }
    first_descent_reduction_pair(w).or_else(|| {
        images.iter().find_map(|&(symmetry, target)| {
            target.descents().into_iter().find_map(|a| {
                classify_descent(&target, a + 1).map(|pair| ReductionHit {
                    symmetry,
                    target,
                    pair,
                })
            })
        })
    })
}

/// The permutations produced by one reduction step.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ReductionStep {
    /// `x` moved up a row and `y` down a row.
    pub rho: Permutation,
    pub minus_y: Permutation,
    /// Heavy pairs only.
    pub minus_x: Option<Permutation>,
    /// Heavy pairs only; `None` when `n = 2`.
    pub minus_xy: Option<Permutation>,
}

pub fn reduction_step(w: &Permutation, pair: &ReductionPair) -> Result<ReductionStep> {
    let valid = classify_descent(w, pair.x.row).map_or(false, |found| found == *pair);
    if !valid {
        return Err(Error::InvalidPair(w.to_string()));
    }
    let rho = w.swap_positions(pair.y.row, pair.x.row);
    let minus_y = w.delete_rook(pair.y.row);
    let (minus_x, minus_xy) = match pair.kind {
        PairKind::Light => (None, None),
        PairKind::Heavy => {
            let minus_x = w.delete_rook(pair.x.row);
            // y sits above x, so its row index survives deleting x
            let minus_xy = (w.n() > 2).then(|| minus_x.delete_rook(pair.y.row));
            (Some(minus_x), minus_xy)
        }
    };
    Ok(ReductionStep {
        rho,
        minus_y,
        minus_x,
        minus_xy,
    })
}

/// An element `u < w` whose distance to `w` in the Bruhat graph exceeds the
/// absolute length of `u w^-1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub pattern: Permutation,
    pub positions: Vec<usize>,
    /// The cycles `c` with `u = c w`, as position lists.
    pub cycles: Vec<Vec<usize>>,
    pub u: Permutation,
}

/// Cycle shapes per pattern, as indices into the occurrence positions.
const WITNESS_CYCLES: [&[&[usize]]; 4] = [
    &[&[0, 3], &[1, 2]],
    &[&[0, 2, 3], &[1, 4]],
    &[&[1, 4, 2], &[0, 3]],
    &[&[0, 2, 5, 3], &[1, 4]],
];

/// Uses the first of the four patterns that `w` contains, at its
/// lexicographically first occurrence. `None` iff `w` avoids all four.
pub fn witness_below(w: &Permutation) -> Option<Witness> {
    CHROMOBRUHATIC_PATTERNS.iter().zip(WITNESS_CYCLES).find_map(|(word, shape)| {
        let pattern: Permutation = word.parse().expect("valid pattern");
        let positions = find_occurrence(w, &pattern)?;
        let cycles: Vec<Vec<usize>> = shape
            .iter()
            .map(|c| c.iter().map(|&k| positions[k]).collect())
            .collect();
        let mut images: Vec<u8> = (0..w.n() as u8).collect();
        for cycle in &cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = (b - 1) as u8;
            }
        }
        let c = Permutation::from_zero_based(&images);
        Some(Witness {
            pattern,
            positions,
            cycles,
            u: c.compose_unchecked(w),
        })
    })
}
