//! Latching objects and the relative latching map.
//!
//! The latching object of `X` at `c` is the colimit of `X` over the
//! non-identity inverse-class maps out of `c`; it is computed as
//! union-find classes on the nodes `(sigma: c -> d, point of X(d))`, glued
//! along every inverse-class factorization `beta . sigma = sigma'`.  The
//! structure map lands in the degenerate points, surjectively; on elegant
//! truncations it is a bijection, which the caller can read off the
//! result.

use alloc::vec::Vec;

use crate::error::TermError;
use crate::presheaf::{classify_points, Presheaf, PresheafMap};
use crate::trunc::Truncation;
use crate::unionfind::UnionFind;

/// One node of the latching diagram: a non-identity inverse-class map
/// `c -> cod` (by hom-set index) together with a point of `X(cod)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatchNode {
    pub cod: usize,
    pub map: usize,
    pub point: u32,
}

#[derive(Clone, Debug)]
pub struct LatchingObject {
    pub object: usize,
    pub nodes: Vec<LatchNode>,
    /// Node index -> class index.
    pub class_of: Vec<usize>,
    /// Number of classes, i.e. the size of the latching object.
    pub size: usize,
    /// Class -> point of `X(c)` (the canonical structure map); every value
    /// is a degenerate point.
    pub structure_map: Vec<u32>,
    /// Whether the corestriction onto the degenerate points is bijective.
    pub onto_degenerate_bijective: bool,
}

impl LatchingObject {
    /// Class of a given node.
    pub fn class(&self, node: usize) -> usize {
        self.class_of[node]
    }
}

/// Compute the latching object of `x` at the object with truncation index
/// `c`.  Only inverse-class maps out of `c` are consulted, so the
/// computation is exact within the truncation.
pub fn latching(trunc: &Truncation<'_>, x: &Presheaf, c: usize) -> LatchingObject {
    let n = trunc.object_count();
    let mut nodes = Vec::new();
    // node lookup: start offset of (d, sigma) runs
    let mut offsets: Vec<Vec<Option<usize>>> = Vec::with_capacity(n);
    for d in 0..n {
        let mut per_map = Vec::with_capacity(trunc.hom(c, d).len());
        for sigma in 0..trunc.hom(c, d).len() {
            if trunc.is_minus(c, d, sigma) && !trunc.is_identity(c, d, sigma) {
                per_map.push(Some(nodes.len()));
                for point in 0..x.size(d) as u32 {
                    nodes.push(LatchNode {
                        cod: d,
                        map: sigma,
                        point,
                    });
                }
            } else {
                per_map.push(None);
            }
        }
        offsets.push(per_map);
    }
    let mut uf = UnionFind::new(nodes.len());
    // glue (sigma', x') with (sigma, X(beta)(x')) whenever beta . sigma = sigma'
    for d in 0..n {
        for sigma in 0..trunc.hom(c, d).len() {
            let Some(base) = offsets[d][sigma] else {
                continue;
            };
            for d2 in 0..n {
                for beta in trunc.minus_indices(d, d2) {
                    let composite = trunc
                        .compose(&trunc.hom(d, d2)[beta], &trunc.hom(c, d)[sigma])
                        .expect("latching composition");
                    let sigma2 = trunc
                        .hom_index(c, d2, &composite)
                        .expect("composite in truncation");
                    let Some(base2) = offsets[d2][sigma2] else {
                        continue; // composite is the identity or not minus
                    };
                    for x2 in 0..x.size(d2) as u32 {
                        let pulled = x.apply(d, d2, beta, x2);
                        uf.union(base2 + x2 as usize, base + pulled as usize);
                    }
                }
            }
        }
    }
    let (reps, class_of) = uf.classes();
    let structure_map: Vec<u32> = reps
        .iter()
        .map(|&r| {
            let node = nodes[r];
            x.apply(c, node.cod, node.map, node.point)
        })
        .collect();
    // the structure map always lands in (and covers) the degenerate
    // points; bijectivity is the elegant case
    let class = classify_points(trunc, x);
    debug_assert!(structure_map.iter().all(|&p| !class.is_nd(c, p)));
    let dg = class.dg_count(c);
    let mut distinct = structure_map.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let onto_degenerate_bijective = reps.len() == dg && distinct.len() == reps.len();
    LatchingObject {
        object: c,
        nodes,
        class_of,
        size: reps.len(),
        structure_map,
        onto_degenerate_bijective,
    }
}

/// Verdict of the relative latching map test for one map and one object.
#[derive(Clone, Debug)]
pub struct RelativeLatchingReport {
    pub object: usize,
    /// Size of the set pushout `X(c) + L_cY / L_cX`.
    pub pushout_size: usize,
    pub mono: bool,
    /// On failure: two pushout classes with the same image in `Y(c)`.
    pub witness: Option<(usize, usize)>,
}

/// Compute the relative latching map `X(c) + L_cY / L_cX -> Y(c)` of a
/// componentwise-injective `f: X -> Y` and test injectivity.
pub fn relative_latching_mono(
    trunc: &Truncation<'_>,
    x: &Presheaf,
    y: &Presheaf,
    f: &PresheafMap,
    c: usize,
) -> Result<RelativeLatchingReport, TermError> {
    if !f.is_componentwise_injective() {
        let bad = f
            .components
            .iter()
            .position(|comp| {
                let mut s = comp.clone();
                s.sort_unstable();
                s.windows(2).any(|w| w[0] == w[1])
            })
            .unwrap_or(0);
        return Err(TermError::NotMono {
            object: trunc.object(bad).render(),
        });
    }
    let lx = latching(trunc, x, c);
    let ly = latching(trunc, y, c);
    // induced map on latching objects: (sigma, p) -> (sigma, f(p))
    let mut node_index_y = alloc::collections::BTreeMap::new();
    for (i, node) in ly.nodes.iter().enumerate() {
        node_index_y.insert((node.cod, node.map, node.point), i);
    }
    let mut lf = alloc::vec![0usize; lx.size];
    for (i, node) in lx.nodes.iter().enumerate() {
        let image = f.apply(node.cod, node.point);
        let j = node_index_y[&(node.cod, node.map, image)];
        lf[lx.class_of[i]] = ly.class_of[j];
    }
    // pushout of X(c) <- L_cX -> L_cY over the structure map and lf
    let nx = x.size(c);
    let mut uf = UnionFind::new(nx + ly.size);
    for l in 0..lx.size {
        uf.union(lx.structure_map[l] as usize, nx + lf[l]);
    }
    let (reps, _class_of) = uf.classes();
    // induced map to Y(c): fold f on the left leg, the structure map on
    // the right leg
    let images: Vec<u32> = reps
        .iter()
        .map(|&r| {
            if r < nx {
                f.apply(c, r as u32)
            } else {
                ly.structure_map[r - nx]
            }
        })
        .collect();
    let mut witness = None;
    'outer: for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] == images[j] {
                witness = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(RelativeLatchingReport {
        object: c,
        pushout_size: reps.len(),
        mono: witness.is_none(),
        witness,
    })
}
