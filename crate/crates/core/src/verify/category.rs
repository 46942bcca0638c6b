//! Category law verification: identity and associativity over all
//! composable pairs and triples among bounded objects.  A full composition
//! table is built first so the triple sweep is pure index lookups.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::TermError;
use crate::oracle::ReedyOracle;
use crate::trunc::Truncation;
use crate::verify::report::{assemble, ItemAcc, VerificationReport};

/// Composition table over a truncation: `entry(a, b, c)[g * |hom(a,b)| + f]`
/// is the index of `g . f` in `hom(a, c)`, or `u32::MAX` when composition
/// failed to land in the enumerated hom-set.
pub(crate) struct CompositionTable {
    object_count: usize,
    tables: Vec<Vec<u32>>,
}

pub(crate) const BAD_ENTRY: u32 = u32::MAX;

impl CompositionTable {
    pub fn build(trunc: &Truncation<'_>, closure: &mut ItemAcc) -> Self {
        let n = trunc.object_count();
        let mut tables = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let fs = trunc.hom(a, b);
                    let gs = trunc.hom(b, c);
                    let mut table = Vec::with_capacity(fs.len() * gs.len());
                    for g in gs {
                        for f in fs {
                            let entry = trunc
                                .compose(g, f)
                                .ok()
                                .and_then(|h| trunc.hom_index(a, c, &h).ok());
                            match entry {
                                Some(idx) => {
                                    closure.ok();
                                    table.push(idx as u32);
                                }
                                None => {
                                    closure.fail(
                                        String::from("composite not in the enumerated hom-set"),
                                        alloc::vec![
                                            (String::from("f"), f.render_name()),
                                            (String::from("g"), g.render_name()),
                                        ],
                                    );
                                    table.push(BAD_ENTRY);
                                }
                            }
                        }
                    }
                    tables.push(table);
                }
            }
        }
        CompositionTable {
            object_count: n,
            tables,
        }
    }

    #[inline]
    pub fn get(
        &self,
        trunc: &Truncation<'_>,
        a: usize,
        b: usize,
        c: usize,
        f: usize,
        g: usize,
    ) -> u32 {
        let table = &self.tables[(a * self.object_count + b) * self.object_count + c];
        table[g * trunc.hom(a, b).len() + f]
    }
}

pub fn verify_category(
    oracle: &dyn ReedyOracle,
    max_degree: u32,
) -> Result<VerificationReport, TermError> {
    let trunc = Truncation::build(oracle, max_degree)?;
    let n = trunc.object_count();

    let mut closure = ItemAcc::new("composition_well_defined");
    let table = CompositionTable::build(&trunc, &mut closure);

    let mut identity_laws = ItemAcc::new("identity_laws");
    for a in 0..n {
        for b in 0..n {
            let id_a = trunc.identity_index(a);
            let id_b = trunc.identity_index(b);
            for f in 0..trunc.hom(a, b).len() {
                let left = table.get(&trunc, a, b, b, f, id_b);
                let right = table.get(&trunc, a, a, b, id_a, f);
                identity_laws.check(left == f as u32 && right == f as u32, || {
                    (
                        format!(
                            "identity laws fail: id.f={} f.id={} expected {}",
                            left, right, f
                        ),
                        alloc::vec![(String::from("f"), trunc.hom(a, b)[f].render_name())],
                    )
                });
            }
        }
    }

    let mut associativity = ItemAcc::new("associativity");
    for a in 0..n {
        for b in 0..n {
            for f in 0..trunc.hom(a, b).len() {
                for c in 0..n {
                    for g in 0..trunc.hom(b, c).len() {
                        let gf = table.get(&trunc, a, b, c, f, g);
                        if gf == BAD_ENTRY {
                            continue; // already reported by the closure item
                        }
                        for d in 0..n {
                            for h in 0..trunc.hom(c, d).len() {
                                let hg = table.get(&trunc, b, c, d, g, h);
                                if hg == BAD_ENTRY {
                                    continue;
                                }
                                let left = table.get(&trunc, a, c, d, gf as usize, h);
                                let right = table.get(&trunc, a, b, d, f, hg as usize);
                                associativity.check(left == right && left != BAD_ENTRY, || {
                                    (
                                        String::from("associativity fails on this triple"),
                                        alloc::vec![
                                            (String::from("f"), trunc.hom(a, b)[f].render_name()),
                                            (String::from("g"), trunc.hom(b, c)[g].render_name()),
                                            (String::from("h"), trunc.hom(c, d)[h].render_name()),
                                            (String::from("dom"), trunc.object(a).render()),
                                        ],
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }

    let notes = alloc::vec![
        format!("objects={}", n),
        format!("morphisms={}", trunc.morphism_count()),
    ];
    Ok(assemble(
        "category",
        oracle.describe(),
        max_degree,
        None,
        alloc::vec![closure, identity_laws, associativity],
        notes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::DeltaOracle;
    use crate::oracle::TerminalOracle;
    use crate::theta::theta_tower;

    #[test]
    fn terminal_and_delta_satisfy_the_laws() {
        assert!(verify_category(&TerminalOracle, 3).unwrap().passed());
        let report = verify_category(&DeltaOracle, 4).unwrap();
        assert!(report.passed());
        // associativity examined a nontrivial number of triples
        assert!(report.items[2].examined > 100_000);
    }

    #[test]
    fn small_theta_towers_satisfy_the_laws() {
        assert!(verify_category(&*theta_tower(2), 3).unwrap().passed());
    }
}
