//! Operational equivalence of the one-fold theta construction with the
//! directly-implemented simplex oracle.  The two share the term language,
//! so the object and hom bijections are the identity on representations;
//! the substance of the check is that the independently written
//! composition, class-membership, and factorization code paths agree
//! everywhere in the truncation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::delta::DeltaOracle;
use crate::error::TermError;
use crate::oracle::{ReedyOracle, TerminalOracle};
use crate::term::MultiMorphism;
use crate::theta::ThetaOracle;
use crate::verify::report::{assemble, ItemAcc, VerificationReport};

pub fn theta1_delta_equiv(max_degree: u32) -> Result<VerificationReport, TermError> {
    let theta = ThetaOracle::new(TerminalOracle);
    let delta = DeltaOracle;

    let mut objects_agree = ItemAcc::new("objects_and_degrees_agree");
    let mut homs_agree = ItemAcc::new("hom_sets_agree");
    let mut composition_agrees = ItemAcc::new("composition_agrees");
    let mut minus_agree = ItemAcc::new("minus_classes_agree");
    let mut plus_agree = ItemAcc::new("plus_classes_agree");
    let mut factorizations_agree = ItemAcc::new("factorizations_agree");

    let theta_objects = theta.enumerate_objects(max_degree);
    let delta_objects = delta.enumerate_objects(max_degree);
    objects_agree.check(theta_objects == delta_objects, || {
        (
            format!(
                "object lists differ: {} vs {}",
                theta_objects.len(),
                delta_objects.len()
            ),
            Vec::new(),
        )
    });
    for obj in &theta_objects {
        objects_agree.check(theta.degree(obj) == delta.degree(obj), || {
            (
                String::from("degree functions disagree"),
                alloc::vec![(String::from("object"), obj.render())],
            )
        });
    }
    let objects = delta_objects;
    let n = objects.len();

    let mut homs: Vec<Vec<Vec<crate::term::MorphismTerm>>> = Vec::with_capacity(n);
    for c in &objects {
        let mut row = Vec::with_capacity(n);
        for d in &objects {
            let ht = theta.enumerate_hom(c, d)?;
            let hd = delta.enumerate_hom(c, d)?;
            homs_agree.check(ht == hd, || {
                (
                    format!("hom enumerations differ: {} vs {}", ht.len(), hd.len()),
                    alloc::vec![
                        (String::from("dom"), c.render()),
                        (String::from("cod"), d.render()),
                    ],
                )
            });
            row.push(hd);
        }
        homs.push(row);
    }

    for a in 0..n {
        for b in 0..n {
            for f in &homs[a][b] {
                minus_agree.check(theta.is_minus(f) == delta.is_minus(f), || {
                    (
                        String::from("inverse-class membership disagrees"),
                        alloc::vec![(String::from("f"), f.render_name())],
                    )
                });
                for c in 0..n {
                    for g in &homs[b][c] {
                        let ct = theta.compose(g, f)?;
                        let cd = delta.compose(g, f)?;
                        composition_agrees.check(ct == cd, || {
                            (
                                String::from("compositions disagree"),
                                alloc::vec![
                                    (String::from("f"), f.render_name()),
                                    (String::from("g"), g.render_name()),
                                ],
                            )
                        });
                    }
                }
            }
        }
    }

    // family-level agreement, valences 0..=2
    for c in 0..n {
        let mut families: Vec<MultiMorphism> =
            alloc::vec![MultiMorphism::empty(objects[c].clone())];
        for d1 in 0..n {
            for f1 in &homs[c][d1] {
                families.push(MultiMorphism::new(
                    objects[c].clone(),
                    alloc::vec![f1.clone()],
                ));
                for d2 in 0..n {
                    for f2 in &homs[c][d2] {
                        families.push(MultiMorphism::new(
                            objects[c].clone(),
                            alloc::vec![f1.clone(), f2.clone()],
                        ));
                    }
                }
            }
        }
        for family in &families {
            plus_agree.check(
                theta.is_plus_family(family) == delta.is_plus_family(family),
                || {
                    (
                        String::from("direct-class membership disagrees"),
                        alloc::vec![(String::from("dom"), family.domain.render())],
                    )
                },
            );
            let ft = theta.factorize(family)?;
            let fd = delta.factorize(family)?;
            factorizations_agree.check(ft == fd, || {
                (
                    String::from("factorizations disagree"),
                    alloc::vec![(String::from("dom"), family.domain.render())],
                )
            });
        }
    }

    let notes = alloc::vec![format!("objects={n}")];
    Ok(assemble(
        "equiv-delta",
        String::from("theta(terminal) vs delta"),
        max_degree,
        None,
        alloc::vec![
            objects_agree,
            homs_agree,
            composition_agrees,
            minus_agree,
            plus_agree,
            factorizations_agree,
        ],
        notes,
    ))
}
