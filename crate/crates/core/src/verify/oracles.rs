//! Slow, independent reference computations.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::goursat::{BisetBasis, ProductSubgroup};
use crate::groups::{PermGroup, DEFAULT_BOUND};

/// Conjugacy classes of subgroups of `g × h`, counted on the enumerated
/// direct product.
pub fn product_subgroup_class_count(g: &PermGroup, h: &PermGroup) -> Result<usize> {
    let p = g.direct_product(h, DEFAULT_BOUND.max(g.order() * h.order()))?;
    Ok(p.lattice().classes.len())
}

/// Cosets of `l` in `g × h`: `coset[a * |h| + b]` is the coset of `(a, b)`.
fn coset_table(g: &PermGroup, h: &PermGroup, l: &ProductSubgroup) -> (Vec<usize>, usize) {
    let nh = h.order();
    let pairs: Vec<(usize, usize)> = l.pairs().collect();
    let mut coset = vec![usize::MAX; g.order() * nh];
    let mut count = 0;
    for a in 0..g.order() {
        for b in 0..nh {
            if coset[a * nh + b] != usize::MAX {
                continue;
            }
            for &(x, y) in &pairs {
                coset[g.mul(a, x) * nh + h.mul(b, y)] = count;
            }
            count += 1;
        }
    }
    (coset, count)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Decomposes the actual biset `(G×H/L) ×_H (H×K/M)` into transitive
/// `(G, K)`-orbits and names each by its point stabilizer.
pub fn compose_by_orbits(
    left: &BisetBasis,
    i: usize,
    right: &BisetBasis,
    j: usize,
    out: &BisetBasis,
) -> Result<Vec<(usize, i64)>> {
    let (g, h, k) = (&*left.target, &*left.source, &*right.source);
    let (nh, nk) = (h.order(), k.order());
    let (cx, nx) = coset_table(g, h, &left.labels[i].rep);
    let (cy, ny) = coset_table(h, k, &right.labels[j].rep);
    // A representative pair for each coset.
    let mut rep_x = vec![(0, 0); nx];
    for a in 0..g.order() {
        for b in 0..nh {
            rep_x[cx[a * nh + b]] = (a, b);
        }
    }
    let mut rep_y = vec![(0, 0); ny];
    for a in 0..nh {
        for b in 0..nk {
            rep_y[cy[a * nk + b]] = (a, b);
        }
    }
    // x·t = (a, t^-1 b)L and t·y = (t c, d)M.
    let act_x_right = |x: usize, t: usize| {
        let (a, b) = rep_x[x];
        cx[a * nh + h.mul(h.inv(t), b)]
    };
    let act_y_left = |t: usize, y: usize| {
        let (c, d) = rep_y[y];
        cy[h.mul(t, c) * nk + d]
    };
    // (x·t, y) ~ (x, t·y), i.e. (x, y) ~ (x·t, t^-1·y).
    let mut parent: Vec<usize> = (0..nx * ny).collect();
    for x in 0..nx {
        for y in 0..ny {
            for t in 0..nh {
                let a = find(&mut parent, x * ny + y);
                let b = find(&mut parent, act_x_right(x, t) * ny + act_y_left(h.inv(t), y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let class: Vec<usize> = (0..nx * ny).map(|p| find(&mut parent, p)).collect();
    // (g, k)·p = g·p·k^-1 on the balanced classes, so stabilizers are point
    // stabilizers of (G × K)/L.
    let act = |gg: usize, kk: usize, p: usize| {
        let (x, y) = (p / ny, p % ny);
        let (a, b) = rep_x[x];
        let (c, d) = rep_y[y];
        let x2 = cx[g.mul(gg, a) * nh + b];
        let y2 = cy[c * nk + k.mul(kk, d)];
        class[x2 * ny + y2]
    };
    let mut seen = vec![false; nx * ny];
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for p in 0..nx * ny {
        let p = class[p];
        if seen[p] {
            continue;
        }
        let mut stab = Vec::new();
        for gg in 0..g.order() {
            for kk in 0..nk {
                let q = act(gg, kk, p);
                seen[q] = true;
                if q == p {
                    stab.push((gg, kk));
                }
            }
        }
        let l = ProductSubgroup::from_pairs(g, k, stab)?;
        *acc.entry(out.identify(&l)?).or_insert(0) += 1;
    }
    Ok(acc.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::compose_basis;
    use crate::groups::parse_group;
    use std::sync::Arc;

    #[test]
    fn goursat_matches_product_lattice() {
        for (a, b) in [("C2", "C2"), ("S3", "C2"), ("C3", "S3"), ("V4", "C4")] {
            let g = Arc::new(parse_group(a, 400).unwrap());
            let h = Arc::new(parse_group(b, 400).unwrap());
            let want = product_subgroup_class_count(&g, &h).unwrap();
            assert_eq!(BisetBasis::new(g, h).unwrap().dim(), want, "{a} x {b}");
        }
    }

    #[test]
    fn double_cosets_match_orbits() {
        let s3 = Arc::new(parse_group("S3", 400).unwrap());
        let c2 = Arc::new(parse_group("C2", 400).unwrap());
        let b1 = BisetBasis::new(s3.clone(), c2.clone()).unwrap();
        let b2 = BisetBasis::new(c2.clone(), s3.clone()).unwrap();
        let out = BisetBasis::new(s3.clone(), s3.clone()).unwrap();
        for i in 0..b1.dim() {
            for j in 0..b2.dim() {
                assert_eq!(
                    compose_basis(&b1, i, &b2, j, &out).unwrap(),
                    compose_by_orbits(&b1, i, &b2, j, &out).unwrap()
                );
            }
        }
    }
}
