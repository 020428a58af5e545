//! Pin-respecting order embeddings by backtracking.

use crate::poset::{PinnedTriple, Poset};
use crate::subset::Bits;

/// An order-embedding of `t1` into `t2` (injective, preserving both `<` and
/// incomparability) that sends `t1.a ↦ t2.a` and `t1.b ↦ t2.b`.
pub fn find_pinned_embedding(t1: &PinnedTriple, t2: &PinnedTriple) -> Option<Vec<usize>> {
    find_embedding(&t1.poset, &t2.poset, &[(t1.a, t2.a), (t1.b, t2.b)])
}

pub fn embeds_pinned(t1: &PinnedTriple, t2: &PinnedTriple) -> bool {
    find_pinned_embedding(t1, t2).is_some()
}

pub fn isomorphic_pinned(t1: &PinnedTriple, t2: &PinnedTriple) -> bool {
    t1.poset.len() == t2.poset.len()
        && t1.poset.relation_count() == t2.poset.relation_count()
        && embeds_pinned(t1, t2)
}

pub fn isomorphic(p: &Poset, q: &Poset) -> bool {
    p.len() == q.len()
        && p.relation_count() == q.relation_count()
        && find_embedding(p, q, &[]).is_some()
}

/// Embedding of `small` into `large` extending the forced pairs.
pub fn find_embedding(
    small: &Poset,
    large: &Poset,
    forced: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if small.len() > large.len() {
        return None;
    }
    let order = visit_order(small, forced.iter().map(|&(x, _)| x));
    let mut image = vec![usize::MAX; small.len()];
    let mut used = 0u64;
    let forced_target = |x: usize| forced.iter().find(|&&(s, _)| s == x).map(|&(_, t)| t);
    fn extend(
        small: &Poset,
        large: &Poset,
        order: &[usize],
        depth: usize,
        image: &mut [usize],
        used: &mut u64,
        forced_target: &dyn Fn(usize) -> Option<usize>,
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        let up_deg = small.up_mask(v).count_ones();
        let down_deg = small.down_mask(v).count_ones();
        let candidates: Vec<usize> = match forced_target(v) {
            Some(t) => vec![t],
            None => (0..large.len()).collect(),
        };
        for c in candidates {
            if *used >> c & 1 == 1
                || large.up_mask(c).count_ones() < up_deg
                || large.down_mask(c).count_ones() < down_deg
            {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                let m = image[u];
                small.lt(u, v) == large.lt(m, c) && small.lt(v, u) == large.lt(c, m)
            });
            if !consistent {
                continue;
            }
            image[v] = c;
            *used |= 1 << c;
            if extend(small, large, order, depth + 1, image, used, forced_target) {
                return true;
            }
            image[v] = usize::MAX;
            *used &= !(1 << c);
        }
        false
    }
    extend(
        small,
        large,
        &order,
        0,
        &mut image,
        &mut used,
        &forced_target,
    )
    .then_some(image)
}

/// Forced elements first, then breadth-first over comparabilities so each
/// new vertex is constrained by already-placed neighbors.
fn visit_order(p: &Poset, first: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut order: Vec<usize> = Vec::with_capacity(p.len());
    let mut seen = 0u64;
    for x in first {
        if seen >> x & 1 == 0 {
            seen |= 1 << x;
            order.push(x);
        }
    }
    let mut head = 0;
    loop {
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in Bits(p.comparability_mask(x) & !seen) {
                seen |= 1 << y;
                order.push(y);
            }
        }
        match (0..p.len()).find(|&x| seen >> x & 1 == 0) {
            Some(x) => {
                seen |= 1 << x;
                order.push(x);
            }
            None => return order,
        }
    }
}
