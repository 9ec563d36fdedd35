//! Brute-force oracles over plain one-line vectors, independent of the library.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use chromobruhat::Permutation;

/// All permutations of `1..=n` in lexicographic order.
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

pub fn to_perm(w: &[usize]) -> Permutation {
    Permutation::from_one_line(w).unwrap()
}

pub fn length(w: &[usize]) -> usize {
    let n = w.len();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count()
}

/// 0-based inversion pairs, the edges of the inversion graph.
pub fn inversion_edges(w: &[usize]) -> Vec<(usize, usize)> {
    let n = w.len();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).collect()
}

/// Full rank-matrix comparison.
pub fn bruhat_leq(u: &[usize], w: &[usize]) -> bool {
    let n = w.len();
    (1..=n).all(|i| {
        (1..=n).all(|j| {
            let cu = u[..i].iter().filter(|&&v| v >= j).count();
            let cw = w[..i].iter().filter(|&&v| v >= j).count();
            cu <= cw
        })
    })
}

pub fn interval_size(w: &[usize]) -> u64 {
    perms(w.len()).iter().filter(|u| bruhat_leq(u, w)).count() as u64
}

/// Whether some subsequence of `w` is order-isomorphic to `p`.
pub fn contains(w: &[usize], p: &[usize]) -> bool {
    fn go(w: &[usize], p: &[usize], start: usize, picked: &mut Vec<usize>) -> bool {
        if picked.len() == p.len() {
            let m = p.len();
            return (0..m).all(|a| (0..m).all(|b| (w[picked[a]] < w[picked[b]]) == (p[a] < p[b])));
        }
        (start..w.len()).any(|i| {
            picked.push(i);
            let found = go(w, p, i + 1, picked);
            picked.pop();
            found
        })
    }
    p.len() <= w.len() && go(w, p, 0, &mut Vec::new())
}

pub fn avoids_four(w: &[usize]) -> bool {
    [&[4, 2, 3, 1][..], &[3, 5, 1, 4, 2], &[4, 2, 5, 1, 3], &[3, 5, 1, 6, 2, 4]]
        .iter()
        .all(|p| !contains(w, p))
}

pub fn is_smooth(w: &[usize]) -> bool {
    !contains(w, &[3, 4, 1, 2]) && !contains(w, &[4, 2, 3, 1])
}

/// Acyclic orientations of a graph on `n` vertices by enumerating all `2^|E|`.
pub fn acyclic_orientations(n: usize, edges: &[(usize, usize)]) -> u64 {
    let mut count = 0;
    for bits in 0u64..1 << edges.len() {
        let mut indegree = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, &(a, b)) in edges.iter().enumerate() {
            let (from, to) = if bits >> k & 1 == 1 { (b, a) } else { (a, b) };
            out[from].push(to);
            indegree[to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &t in &out[v] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        if seen == n {
            count += 1;
        }
    }
    count
}

/// Number of cycles, fixed points included.
pub fn cycle_count(w: &[usize]) -> usize {
    let mut seen = vec![false; w.len()];
    let mut cycles = 0;
    for s in 0..w.len() {
        if !seen[s] {
            cycles += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = w[i] - 1;
            }
        }
    }
    cycles
}

/// Directed distances from `u` in the Bruhat graph on all of `S_n`, edges
/// `x -> (i j) x` raising length.
pub fn distances_from(u: &[usize]) -> HashMap<Vec<usize>, usize> {
    let n = u.len();
    let mut dist = HashMap::from([(u.to_vec(), 0)]);
    let mut queue = VecDeque::from([u.to_vec()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for i in 0..n {
            for j in i + 1..n {
                let mut y = x.clone();
                y.swap(i, j);
                if length(&y) > length(&x) && !dist.contains_key(&y) {
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
    }
    dist
}

/// `u w^{-1}` under left-to-right composition: `i (u w^-1) = w^-1(u(i))`.
pub fn times_inverse(u: &[usize], w: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; w.len()];
    for (i, &v) in w.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    u.iter().map(|&v| inv[v - 1]).collect()
}

/// Prints one result line and returns whether it passed.
pub fn report(number: usize, name: &str, pass: bool, detail: &str) -> bool {
    println!("criterion {number:>2} {}: {name} ({detail})", if pass { "PASS" } else { "FAIL" });
    pass
}
