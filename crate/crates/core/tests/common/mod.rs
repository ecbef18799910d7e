//! Independent oracles for the property and acceptance suites. Everything
//! here recomputes answers from definitions with different algorithms than
//! the library: subset scans instead of Bron–Kerbosch, backtracking
//! colorings instead of class-removal DP, Carathéodory subsystem solves
//! instead of simplex, and grid search plus mass-transfer ascent instead of
//! projected gradients.
//!
//! Each integration test target compiles this module on its own, so not
//! every oracle is referenced by every target.
#![allow(dead_code)]

use clspace::scalar::Rat;
use num_traits::{One, Signed, Zero};

/// `S` induces a clique: every member is adjacent to every other member.
pub fn is_clique(adj: &[u32], s: u32) -> bool {
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & s != s & !(1 << v) {
            return false;
        }
    }
    true
}

/// All maximal cliques by scanning every subset for cliqueness and
/// single-vertex extendability. Ascending mask order.
pub fn naive_maximal_cliques(adj: &[u32], n: usize) -> Vec<u32> {
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut out = Vec::new();
    for s in 1..=full {
        if !is_clique(adj, s) {
            continue;
        }
        let mut extendable = false;
        for v in 0..n {
            if s & (1 << v) == 0 && adj[v] & s == s {
                extendable = true;
                break;
            }
        }
        if !extendable {
            out.push(s);
        }
    }
    out
}

/// Clique number of the subgraph induced by `mask`, by scanning its subsets.
pub fn naive_clique_number(adj: &[u32], mask: u32) -> usize {
    let mut best = 0u32;
    let mut sub = mask;
    loop {
        if sub.count_ones() > best && is_clique(adj, sub) {
            best = sub.count_ones();
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    best as usize
}

/// Clique numbers of every induced subgraph at once: mark each clique, then
/// push maxima upward over supersets.
pub fn naive_clique_numbers_all(adj: &[u32], n: usize) -> Vec<u8> {
    let size = 1usize << n;
    let mut omega = vec![0u8; size];
    for s in 1..size as u32 {
        if is_clique(adj, s) {
            omega[s as usize] = s.count_ones() as u8;
        }
    }
    for b in 0..n {
        for s in 0..size {
            if s & (1 << b) != 0 {
                omega[s] = omega[s].max(omega[s ^ (1 << b)]);
            }
        }
    }
    omega
}

fn colorable(adj: &[u32], verts: &[usize], idx: usize, k: usize, colors: &mut [usize]) -> bool {
    if idx == verts.len() {
        return true;
    }
    let v = verts[idx];
    let mut forbidden = 0u32;
    for &u in &verts[..idx] {
        if adj[v] & (1 << u) != 0 {
            forbidden |= 1 << colors[u];
        }
    }
    for c in 0..k {
        if forbidden & (1 << c) == 0 {
            colors[v] = c;
            if colorable(adj, verts, idx + 1, k, colors) {
                return true;
            }
        }
    }
    false
}

/// Chromatic number of the subgraph induced by `mask`, by trying to
/// construct a proper coloring with k colors for growing k. `floor` is a
/// known lower bound (use 1 when in doubt); the first k whose backtracking
/// search succeeds is returned with the coloring as the certificate.
pub fn naive_chromatic_number(adj: &[u32], mask: u32, floor: usize) -> usize {
    if mask == 0 {
        return 0;
    }
    let verts: Vec<usize> = (0..adj.len()).filter(|&v| mask & (1 << v) != 0).collect();
    let mut colors = vec![usize::MAX; adj.len()];
    for k in floor.max(1)..=verts.len() {
        if colorable(adj, &verts, 0, k, &mut colors) {
            return k;
        }
    }
    verts.len()
}

/// Exhaustive perfectness from definitions: every nonempty induced subgraph
/// must have its clique number equal to its chromatic number.
pub fn naive_is_perfect(adj: &[u32], n: usize) -> bool {
    let omega = naive_clique_numbers_all(adj, n);
    for mask in 1..(1u32 << n) {
        let w = omega[mask as usize] as usize;
        if naive_chromatic_number(adj, mask, w) != w {
            return false;
        }
    }
    true
}

/// Unique solution of the affine system `Σ w_i col_i = rhs` when the columns
/// are linearly independent; `None` when inconsistent or underdetermined.
fn solve_unique(cols: &[&Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let rows = rhs.len();
    let k = cols.len();
    let mut aug: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();

    let mut pivot_of_col = vec![usize::MAX; k];
    let mut rank = 0usize;
    for col in 0..k {
        let pivot = (rank..rows).find(|&r| !aug[r][col].is_zero());
        let Some(p) = pivot else { continue };
        aug.swap(rank, p);
        let inv = Rat::one() / &aug[rank][col];
        for x in aug[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != rank && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in 0..=k {
                    let delta = &factor * &aug[rank][c];
                    aug[r][c] -= delta;
                }
            }
        }
        pivot_of_col[col] = rank;
        rank += 1;
    }
    // inconsistent?
    for r in rank..rows {
        if !aug[r][k].is_zero() {
            return None;
        }
    }
    // underdetermined?
    if rank < k {
        return None;
    }
    Some(
        (0..k)
            .map(|col| aug[pivot_of_col[col]][k].clone())
            .collect(),
    )
}

/// Convex-hull membership by brute force: a point is in the hull iff some
/// affinely independent subset of at most dim+1 generators carries it with
/// nonnegative weights, and for such subsets the weights are unique.
pub fn hull_member_oracle(point: &[Rat], generators: &[Vec<Rat>]) -> bool {
    let dim = point.len();
    let mut rhs: Vec<Rat> = point.to_vec();
    rhs.push(Rat::one());
    let lifted: Vec<Vec<Rat>> = generators
        .iter()
        .map(|g| {
            let mut col = g.clone();
            col.push(Rat::one());
            col
        })
        .collect();
    for mask in 1u32..(1 << generators.len()) {
        if mask.count_ones() as usize > dim + 1 {
            continue;
        }
        let chosen: Vec<&Vec<Rat>> = (0..generators.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| &lifted[i])
            .collect();
        if let Some(w) = solve_unique(&chosen, &rhs) {
            if w.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Signed rational grid on the ℓ1 sphere of dimension `n`: all points whose
/// coordinates are multiples of `1/step` with `Σ|x_i| = 1`.
pub fn ell1_sphere_grid(n: usize, step: u32) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut parts = vec![0u32; n];
    fn rec(parts: &mut Vec<u32>, pos: usize, remaining: u32, step: u32, out: &mut Vec<Vec<f64>>) {
        if pos + 1 == parts.len() {
            parts[pos] = remaining;
            // sign patterns over the nonzero coordinates
            let nonzero: Vec<usize> = (0..parts.len()).filter(|&i| parts[i] > 0).collect();
            for signs in 0..(1u32 << nonzero.len()) {
                let mut point: Vec<f64> = parts
                    .iter()
                    .map(|&p| p as f64 / step as f64)
                    .collect();
                for (b, &i) in nonzero.iter().enumerate() {
                    if signs & (1 << b) != 0 {
                        point[i] = -point[i];
                    }
                }
                out.push(point);
            }
            return;
        }
        for take in 0..=remaining {
            parts[pos] = take;
            rec(parts, pos + 1, remaining - take, step, out);
        }
    }
    rec(&mut parts, 0, step, step, &mut out);
    out
}

/// Local ascent on the ℓ1 sphere by mass transfer: repeatedly move `delta`
/// of ℓ1 weight from one coordinate to another (either sign) when it
/// improves the objective, halving `delta` when nothing does.
pub fn ell1_sphere_ascent<F: Fn(&[f64]) -> f64>(start: &[f64], objective: &F) -> (f64, Vec<f64>) {
    let n = start.len();
    let mut x = start.to_vec();
    let mut value = objective(&x);
    let mut delta = 1.0 / 30.0;
    while delta > 1e-13 {
        let mut improved = false;
        for from in 0..n {
            if x[from].abs() < delta {
                continue;
            }
            for to in 0..n {
                if to == from {
                    continue;
                }
                for sign in [1.0f64, -1.0] {
                    let mut cand = x.clone();
                    cand[from] -= delta * cand[from].signum();
                    cand[to] += sign * delta;
                    let norm: f64 = cand.iter().map(|c| c.abs()).sum();
                    if (norm - 1.0).abs() > 1e-9 {
                        continue;
                    }
                    let v = objective(&cand);
                    if v > value {
                        x = cand;
                        value = v;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            delta *= 0.5;
        }
    }
    (value, x)
}

/// Adjacency bitsets of a graph, for feeding the oracles.
pub fn adjacency(g: &clspace::Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).mask()).collect()
}

/// All size-m multisets of the given items, as cloned tuples in
/// nondecreasing index order.
pub fn multisets<T: Clone>(items: &[T], m: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut tuple = vec![0usize; m];
    if items.is_empty() {
        return out;
    }
    loop {
        out.push(tuple.iter().map(|&i| items[i].clone()).collect());
        let mut pos = m;
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            if tuple[pos] + 1 < items.len() {
                let v = tuple[pos] + 1;
                for c in tuple.iter_mut().skip(pos) {
                    *c = v;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}
