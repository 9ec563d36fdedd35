//! Chromatic polynomials of inversion graphs, acyclic orientation counts and
//! the Bruhat-graph distance generating function.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::LazyLock;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::bruhat;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::patterns;
use crate::perm::Permutation;

/// Integer polynomial, coefficients in ascending degree. Never stores a
/// trailing zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        IntPolynomial { coeffs }
    }

    /// `(t - r_1)(t - r_2)...`.
    pub fn from_roots<I: IntoIterator<Item = i64>>(roots: I) -> Self {
        roots
            .into_iter()
            .fold(IntPolynomial::one(), |acc, r| acc.mul_linear(r))
    }

    /// `t (t-1) ... (t-n+1)`.
    pub fn falling_factorial(n: usize) -> Self {
        Self::from_roots(0..n as i64)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| {
            acc.checked_mul(t)
                .and_then(|v| v.checked_add(c))
                .expect("polynomial evaluation overflow")
        })
    }

    /// `self * (t - r)`.
    pub fn mul_linear(&self, r: i64) -> Self {
        let mut out = vec![0i64; self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k + 1] = checked(out[k + 1].checked_add(c));
            out[k] = checked(out[k].checked_sub(checked(c.checked_mul(r))));
        }
        IntPolynomial::new(out)
    }

    /// `self * t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPolynomial { coeffs }
    }

    /// `(-q)^n p(-1/q)` for a polynomial `p` of degree at most `n`.
    pub fn reciprocal_transform(&self, n: usize) -> Self {
        assert!(self.coeffs.len() <= n + 1);
        let coeffs = (0..=n)
            .map(|m| {
                let c = self.coeff(n - m);
                if m % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        IntPolynomial::new(coeffs)
    }

    /// Descending form in the variable `var`, e.g. `2q^3+5q^2+4q+1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let a = c.unsigned_abs();
            if a != 1 || k == 0 {
                s.push_str(&a.to_string());
            }
            match k {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&format!("{var}^{k}")),
            }
        }
        s
    }
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("polynomial coefficient overflow")
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self.render("t"))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| checked(self.coeff(k).checked_add(rhs.coeff(k)))).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| checked(self.coeff(k).checked_sub(rhs.coeff(k)))).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, &x) in self.coeffs.iter().enumerate() {
            for (b, &y) in rhs.coeffs.iter().enumerate() {
                out[a + b] = checked(out[a + b].checked_add(checked(x.checked_mul(y))));
            }
        }
        IntPolynomial::new(out)
    }
}

/// Memo table for deletion-contraction, shared between threads.
///
/// Keys are graphs relabelled by colour refinement: vertices sorted by
/// stable refined colour, ties kept in original order. The key is the whole
/// relabelled adjacency, so two different graphs never share an entry;
/// refinement only makes isomorphic minors more likely to collide.
#[derive(Default)]
pub struct ChromaticCache {
    table: DashMap<Graph, IntPolynomial>,
}

impl ChromaticCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn chromatic(&self, g: &Graph) -> IntPolynomial {
        let n = g.n();
        if n == 0 {
            return IntPolynomial::one();
        }
        let edges = g.edge_count();
        if edges == 0 {
            return IntPolynomial::monomial(n);
        }
        if g.is_complete() {
            return IntPolynomial::falling_factorial(n);
        }
        if edges == n - 1 && g.components().len() == 1 {
            // tree: t (t-1)^(n-1)
            return (0..n - 1).fold(IntPolynomial::monomial(1), |acc, _| acc.mul_linear(1));
        }
        let components = g.components();
        if components.len() > 1 {
            return components
                .iter()
                .map(|&c| self.chromatic(&g.induced(c)))
                .fold(IntPolynomial::one(), |acc, p| &acc * &p);
        }
        let key = refined_relabel(g);
        if let Some(hit) = self.table.get(&key) {
            return hit.clone();
        }
        let (a, b) = pick_edge(&key);
        let mut deleted = key.clone();
        deleted.remove_edge(a, b);
        let contracted = key.contract(a, b);
        let result = &self.chromatic(&deleted) - &self.chromatic(&contracted);
        self.table.insert(key, result.clone());
        result
    }
}

/// Endpoint of highest degree and its highest-degree neighbour.
fn pick_edge(g: &Graph) -> (usize, usize) {
    let a = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).expect("nonempty");
    let mut nb = g.neighbors(a);
    let mut best = None;
    while nb != 0 {
        let v = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if best.map_or(true, |b: usize| g.degree(v) > g.degree(b)) {
            best = Some(v);
        }
    }
    (a, best.expect("vertex of positive degree"))
}

fn refined_relabel(g: &Graph) -> Graph {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&u| g.has_edge(v, u)).map(|u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("present"))
            .collect();
        let classes_before = {
            let mut c = colour.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        colour = next;
        if distinct.len() == classes_before {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colour[v], v));
    g.relabel(&order)
}

static SHARED_CACHE: LazyLock<ChromaticCache> = LazyLock::new(ChromaticCache::new);

/// Chromatic polynomial by memoized deletion-contraction, using a
/// process-wide cache.
pub fn chromatic_polynomial(g: &Graph) -> IntPolynomial {
    SHARED_CACHE.chromatic(g)
}

/// `ao(G) = (-1)^n chi_G(-1)`.
pub fn acyclic_orientations(g: &Graph) -> u64 {
    let value = chromatic_polynomial(g).eval(-1);
    let signed = if g.n() % 2 == 0 { value } else { -value };
    u64::try_from(signed).expect("acyclic orientation count is nonnegative")
}

pub fn smooth(w: &Permutation) -> bool {
    patterns::is_smooth(w)
}

/// `(t - e_1)...(t - e_n)` from the record-position exponents. Requires a
/// smooth permutation.
pub fn opy_chromatic(w: &Permutation) -> Result<IntPolynomial> {
    if !smooth(w) {
        return Err(Error::NotSmooth(w.to_string()));
    }
    Ok(IntPolynomial::from_roots(w.opy_exponents().into_iter().map(|e| e as i64)))
}

/// `sum over u in [e, w] of q^{al(u, w)}`.
pub fn distance_poly(w: &Permutation) -> IntPolynomial {
    let mut coeffs = vec![0i64; w.length() + 1];
    for d in bruhat::distances_to(w).into_values() {
        coeffs[d as usize] += 1;
    }
    IntPolynomial::new(coeffs)
}

/// `(-q)^n chi_{G_w}(-1/q)`.
pub fn chromatic_identity_rhs(w: &Permutation) -> IntPolynomial {
    chromatic_polynomial(&w.inversion_graph()).reciprocal_transform(w.n())
}

pub fn chromatic_identity_holds(w: &Permutation) -> bool {
    distance_poly(w) == chromatic_identity_rhs(w)
}
