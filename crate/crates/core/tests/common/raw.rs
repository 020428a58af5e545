//! Ground truth from raw relation matrices: every antisymmetric relation on
//! `n` labeled points is generated, non-transitive ones are dropped, and
//! isomorphism classes are found by minimizing over all relabelings.

use std::collections::HashSet;

type Matrix = Vec<Vec<bool>>;

pub struct RawCounts {
    pub classes: usize,
    pub indecomposable: usize,
}

fn transitive(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|x| (0..n).all(|y| !m[x][y] || (0..n).all(|z| !m[y][z] || m[x][z])))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn key(m: &Matrix, perm: &[usize]) -> u64 {
    let n = m.len();
    let mut k = 0u64;
    for x in 0..n {
        for y in 0..n {
            k = k << 1 | m[perm[x]][perm[y]] as u64;
        }
    }
    k
}

fn indecomposable(m: &Matrix) -> bool {
    let n = m.len();
    for s in 1u32..(1 << n) {
        let size = s.count_ones() as usize;
        if size < 2 || size == n {
            continue;
        }
        let inside: Vec<usize> = (0..n).filter(|&x| s >> x & 1 == 1).collect();
        let uniform = (0..n).filter(|&z| s >> z & 1 == 0).all(|z| {
            let r = |x: usize| (m[z][x], m[x][z]);
            inside.iter().all(|&x| r(x) == r(inside[0]))
        });
        if uniform {
            return false;
        }
    }
    true
}

pub fn raw_counts(n: usize) -> RawCounts {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut indecomposable_classes = 0;
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut m = vec![vec![false; n]; n];
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => m[i][j] = true,
                2 => m[j][i] = true,
                _ => {}
            }
            c /= 3;
        }
        if !transitive(&m) {
            continue;
        }
        let canon = perms.iter().map(|p| key(&m, p)).min().unwrap();
        if seen.insert(canon) && indecomposable(&m) {
            indecomposable_classes += 1;
        }
    }
    RawCounts {
        classes: seen.len(),
        indecomposable: indecomposable_classes,
    }
}
