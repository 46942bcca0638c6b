//! Finite tabulated presheaves on a truncated oracle.
//!
//! A presheaf is stored as one named point set per bounded object plus a
//! complete action table: for every morphism `a -> b` between bounded
//! objects, the function `X(b) -> X(a)` as an index vector.  Every check
//! of the degeneracy/elegance machinery is then a finite exhaustive
//! computation.  Functoriality is validated on construction or load;
//! violations carry a replayable witness.

mod classify;
mod latching;
mod sp;

pub use classify::{
    check_e_prime, classify_points, ez_decompose, EPrimeReport, EzOutcome, PointClass,
};
pub use latching::{
    latching, relative_latching_mono, LatchNode, LatchingObject, RelativeLatchingReport,
};
pub(crate) use sp::search_sp_square;
pub use sp::{map_image_class, representability_search, strong_pushout, ImageClass, SpOutcome};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::TermError;
use crate::trunc::Truncation;
use crate::unionfind::UnionFind;

/// A violation of the presheaf laws, with enough data to replay it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresheafViolation {
    /// `X(identity)` is not the identity at this object.
    Identity { object: usize, point: u32 },
    /// `X(beta . alpha) != X(alpha) . X(beta)` at the given point.
    Composition {
        /// Domain, middle, and codomain object indices of the pair.
        objects: (usize, usize, usize),
        /// Hom-set indices of `alpha: a -> b` and `beta: b -> c`.
        alpha: usize,
        beta: usize,
        point: u32,
    },
    /// A naturality square of a presheaf map fails at the given point.
    Naturality {
        objects: (usize, usize),
        morphism: usize,
        point: u32,
    },
}

/// A finite presheaf tabulated over a truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presheaf {
    level: u32,
    max_degree: u32,
    /// Point names per object, in the truncation's canonical object order.
    names: Vec<Vec<String>>,
    /// `action[a][b][m]` is `X(m): X(b) -> X(a)` for the `m`-th morphism
    /// `a -> b`, as a vector over the points of `X(b)`.
    action: Vec<Vec<Vec<Vec<u32>>>>,
}

impl Presheaf {
    /// Assemble a presheaf from raw parts.  Shape is checked here;
    /// functoriality is a separate pass ([`Presheaf::validate`]).
    pub fn from_parts(
        trunc: &Truncation<'_>,
        names: Vec<Vec<String>>,
        action: Vec<Vec<Vec<Vec<u32>>>>,
    ) -> Result<Self, TermError> {
        let n = trunc.object_count();
        if names.len() != n || action.len() != n {
            return Err(TermError::PresheafData {
                reason: format!("expected {n} objects"),
            });
        }
        for (a, row) in action.iter().enumerate() {
            if row.len() != n {
                return Err(TermError::PresheafData {
                    reason: format!("action row {a} has wrong length"),
                });
            }
            for (b, tables) in row.iter().enumerate() {
                if tables.len() != trunc.hom(a, b).len() {
                    return Err(TermError::PresheafData {
                        reason: format!("action tables missing for some morphisms {a} -> {b}"),
                    });
                }
                for table in tables {
                    if table.len() != names[b].len() {
                        return Err(TermError::PresheafData {
                            reason: format!("table between {a} and {b} has wrong length"),
                        });
                    }
                    if table.iter().any(|&p| p as usize >= names[a].len()) {
                        return Err(TermError::PresheafData {
                            reason: format!("table between {a} and {b} points out of range"),
                        });
                    }
                }
            }
        }
        Ok(Presheaf {
            level: trunc.level(),
            max_degree: trunc.max_degree(),
            names,
            action,
        })
    }

    /// The empty presheaf.
    pub fn empty(trunc: &Truncation<'_>) -> Self {
        let n = trunc.object_count();
        let names = vec![Vec::new(); n];
        let action = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| vec![Vec::new(); trunc.hom(a, b).len()])
                    .collect()
            })
            .collect();
        Presheaf {
            level: trunc.level(),
            max_degree: trunc.max_degree(),
            names,
            action,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn size(&self, object: usize) -> usize {
        self.names[object].len()
    }

    pub fn names(&self, object: usize) -> &[String] {
        &self.names[object]
    }

    pub fn name(&self, object: usize, point: u32) -> &str {
        &self.names[object][point as usize]
    }

    /// `X(m)(point)` for the `m`-th morphism `a -> b` applied to a point
    /// of `X(b)`.
    pub fn apply(&self, a: usize, b: usize, m: usize, point: u32) -> u32 {
        self.action[a][b][m][point as usize]
    }

    pub fn table(&self, a: usize, b: usize, m: usize) -> &[u32] {
        &self.action[a][b][m]
    }

    /// Overwrite one action entry.  Exists so tests and hand-authored
    /// tables can introduce deliberate corruption; normal construction
    /// never needs it.
    pub fn set_action_entry(&mut self, a: usize, b: usize, m: usize, point: u32, value: u32) {
        self.action[a][b][m][point as usize] = value;
    }

    pub fn total_points(&self) -> u64 {
        self.names.iter().map(|n| n.len() as u64).sum()
    }

    /// Check the functor laws over the whole truncation.
    pub fn validate(&self, trunc: &Truncation<'_>) -> Result<(), PresheafViolation> {
        let n = trunc.object_count();
        for c in 0..n {
            let id = trunc.identity_index(c);
            for p in 0..self.size(c) as u32 {
                if self.apply(c, c, id, p) != p {
                    return Err(PresheafViolation::Identity {
                        object: c,
                        point: p,
                    });
                }
            }
        }
        // X(beta . alpha) = X(alpha) . X(beta) for alpha: a -> b, beta: b -> c
        for a in 0..n {
            for b in 0..n {
                for (ai, alpha) in trunc.hom(a, b).iter().enumerate() {
                    for c in 0..n {
                        for (bi, beta) in trunc.hom(b, c).iter().enumerate() {
                            let composite =
                                trunc.compose(beta, alpha).expect("truncation composition");
                            let ci = trunc
                                .hom_index(a, c, &composite)
                                .expect("composite in truncation");
                            for p in 0..self.size(c) as u32 {
                                let lhs = self.apply(a, c, ci, p);
                                let rhs = self.apply(a, b, ai, self.apply(b, c, bi, p));
                                if lhs != rhs {
                                    return Err(PresheafViolation::Composition {
                                        objects: (a, b, c),
                                        alpha: ai,
                                        beta: bi,
                                        point: p,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A map of presheaves, componentwise on points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMap {
    /// `components[c][p]` is the image of point `p` of `X(c)` in `Y(c)`.
    pub components: Vec<Vec<u32>>,
}

impl PresheafMap {
    pub fn identity(x: &Presheaf) -> Self {
        PresheafMap {
            components: x
                .names
                .iter()
                .map(|pts| (0..pts.len() as u32).collect())
                .collect(),
        }
    }

    pub fn apply(&self, object: usize, point: u32) -> u32 {
        self.components[object][point as usize]
    }

    /// Check the naturality squares of `self: x -> y`.
    pub fn validate(
        &self,
        trunc: &Truncation<'_>,
        x: &Presheaf,
        y: &Presheaf,
    ) -> Result<(), PresheafViolation> {
        let n = trunc.object_count();
        for a in 0..n {
            for b in 0..n {
                for m in 0..trunc.hom(a, b).len() {
                    for p in 0..x.size(b) as u32 {
                        let lhs = self.apply(a, x.apply(a, b, m, p));
                        let rhs = y.apply(a, b, m, self.apply(b, p));
                        if lhs != rhs {
                            return Err(PresheafViolation::Naturality {
                                objects: (a, b),
                                morphism: m,
                                point: p,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_componentwise_injective(&self) -> bool {
        self.components.iter().all(|comp| {
            let mut seen: Vec<u32> = comp.clone();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }
}

/// The Yoneda presheaf of the object with truncation index `target`:
/// its points at stage `d` are the morphisms `d -> target`, acting by
/// precomposition.
pub fn yoneda(trunc: &Truncation<'_>, target: usize) -> Presheaf {
    let n = trunc.object_count();
    let names: Vec<Vec<String>> = (0..n)
        .map(|d| {
            trunc
                .hom(d, target)
                .iter()
                .map(|f| f.render_name())
                .collect()
        })
        .collect();
    let mut action = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let tables = trunc
                .hom(a, b)
                .iter()
                .map(|alpha| {
                    trunc
                        .hom(b, target)
                        .iter()
                        .map(|beta| {
                            let composite = trunc.compose(beta, alpha).expect("yoneda composition");
                            trunc
                                .hom_index(a, target, &composite)
                                .expect("composite in truncation")
                                as u32
                        })
                        .collect()
                })
                .collect();
            row.push(tables);
        }
        action.push(row);
    }
    Presheaf {
        level: trunc.level(),
        max_degree: trunc.max_degree(),
        names,
        action,
    }
}

/// The image of a morphism under the Yoneda functor, as a map of
/// presheaves `F(dom) -> F(cod)` given by postcomposition.
pub fn yoneda_map(trunc: &Truncation<'_>, dom: usize, cod: usize, morphism: usize) -> PresheafMap {
    let g = &trunc.hom(dom, cod)[morphism];
    let components = (0..trunc.object_count())
        .map(|a| {
            trunc
                .hom(a, dom)
                .iter()
                .map(|x| {
                    let composite = trunc.compose(g, x).expect("yoneda map composition");
                    trunc
                        .hom_index(a, cod, &composite)
                        .expect("composite in truncation") as u32
                })
                .collect()
        })
        .collect();
    PresheafMap { components }
}

/// Pointwise product, with pair names `(x,y)`, first factor major.
pub fn product_presheaf(x: &Presheaf, y: &Presheaf) -> Presheaf {
    let n = x.names.len();
    let names: Vec<Vec<String>> = (0..n)
        .map(|c| {
            let mut out = Vec::with_capacity(x.size(c) * y.size(c));
            for xn in x.names(c) {
                for yn in y.names(c) {
                    out.push(format!("({xn},{yn})"));
                }
            }
            out
        })
        .collect();
    let action = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..x.action[a][b].len())
                        .map(|m| {
                            let mut table = Vec::with_capacity(x.size(b) * y.size(b));
                            for xp in 0..x.size(b) as u32 {
                                for yp in 0..y.size(b) as u32 {
                                    let xi = x.apply(a, b, m, xp);
                                    let yi = y.apply(a, b, m, yp);
                                    table.push(xi * y.size(a) as u32 + yi);
                                }
                            }
                            table
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Presheaf {
        level: x.level,
        max_degree: x.max_degree,
        names,
        action,
    }
}

/// Pointwise set pushout of `x <-f- z -g-> y`: disjoint union modulo the
/// relation generated by `f(z) ~ g(z)`, computed by union-find with
/// deterministic minimal representatives.  Returns the pushout with both
/// injections.
pub fn pushout_presheaf(
    trunc: &Truncation<'_>,
    z: &Presheaf,
    x: &Presheaf,
    y: &Presheaf,
    f: &PresheafMap,
    g: &PresheafMap,
) -> (Presheaf, PresheafMap, PresheafMap) {
    let n = trunc.object_count();
    let mut names: Vec<Vec<String>> = Vec::with_capacity(n);
    let mut inl: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut inr: Vec<Vec<u32>> = Vec::with_capacity(n);
    // per object: union-find over X(c) + Y(c), then classes
    let mut class_data: Vec<(Vec<usize>, Vec<usize>)> = Vec::with_capacity(n);
    for c in 0..n {
        let nx = x.size(c);
        let ny = y.size(c);
        let mut uf = UnionFind::new(nx + ny);
        for p in 0..z.size(c) as u32 {
            uf.union(f.apply(c, p) as usize, nx + g.apply(c, p) as usize);
        }
        let (reps, class_of) = uf.classes();
        names.push(
            reps.iter()
                .map(|&r| {
                    if r < nx {
                        format!("l:{}", x.name(c, r as u32))
                    } else {
                        format!("r:{}", y.name(c, (r - nx) as u32))
                    }
                })
                .collect(),
        );
        inl.push((0..nx).map(|p| class_of[p] as u32).collect());
        inr.push((0..ny).map(|p| class_of[nx + p] as u32).collect());
        class_data.push((reps, class_of));
    }
    // induced action: act on any representative through the side it came from
    let action = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..x.action[a][b].len())
                        .map(|m| {
                            let nx_b = x.size(b);
                            let nx_a = x.size(a);
                            class_data[b]
                                .0
                                .iter()
                                .map(|&rep| {
                                    if rep < nx_b {
                                        let image = x.apply(a, b, m, rep as u32) as usize;
                                        class_data[a].1[image] as u32
                                    } else {
                                        let image = y.apply(a, b, m, (rep - nx_b) as u32) as usize;
                                        class_data[a].1[nx_a + image] as u32
                                    }
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let pushout = Presheaf {
        level: x.level,
        max_degree: x.max_degree,
        names,
        action,
    };
    (
        pushout,
        PresheafMap { components: inl },
        PresheafMap { components: inr },
    )
}

/// Restrict `x` to the points where `keep` is set, checking closure under
/// the action; returns the sub-presheaf and its inclusion.
pub fn sub_presheaf(
    trunc: &Truncation<'_>,
    x: &Presheaf,
    keep: &[Vec<bool>],
) -> Result<(Presheaf, PresheafMap), TermError> {
    let n = trunc.object_count();
    let mut new_index: Vec<Vec<Option<u32>>> = Vec::with_capacity(n);
    let mut names: Vec<Vec<String>> = Vec::with_capacity(n);
    let mut inclusion: Vec<Vec<u32>> = Vec::with_capacity(n);
    for c in 0..n {
        let mut index = vec![None; x.size(c)];
        let mut kept_names = Vec::new();
        let mut incl = Vec::new();
        for p in 0..x.size(c) {
            if keep[c][p] {
                index[p] = Some(kept_names.len() as u32);
                kept_names.push(String::from(x.name(c, p as u32)));
                incl.push(p as u32);
            }
        }
        new_index.push(index);
        names.push(kept_names);
        inclusion.push(incl);
    }
    let mut action: Vec<Vec<Vec<Vec<u32>>>> = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let mut tables = Vec::with_capacity(x.action[a][b].len());
            for m in 0..x.action[a][b].len() {
                let mut table = Vec::with_capacity(names[b].len());
                for p in 0..x.size(b) {
                    if !keep[b][p] {
                        continue;
                    }
                    let image = x.apply(a, b, m, p as u32);
                    match new_index[a][image as usize] {
                        Some(q) => table.push(q),
                        None => {
                            return Err(TermError::PresheafData {
                                reason: format!("subset not closed under the action at object {b}"),
                            })
                        }
                    }
                }
                tables.push(table);
            }
            row.push(tables);
        }
        action.push(row);
    }
    Ok((
        Presheaf {
            level: x.level,
            max_degree: x.max_degree,
            names,
            action,
        },
        PresheafMap {
            components: inclusion,
        },
    ))
}
