//! Eilenberg-Zilber axiom verification: every inverse-class map has a
//! section, and section sets separate inverse-class maps.  Also checks
//! the hom-nonemptiness hypothesis used by the preservation argument for
//! the theta construction, as an advisory flag, and provides idempotent
//! splitting through the Reedy factorization.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::TermError;
use crate::oracle::ReedyOracle;
use crate::term::{MorphismTerm, MultiMorphism, ObjectTerm};
use crate::trunc::Truncation;
use crate::verify::report::{assemble, ItemAcc, VerificationReport};

pub fn verify_ez(
    oracle: &dyn ReedyOracle,
    max_degree: u32,
) -> Result<VerificationReport, TermError> {
    let trunc = Truncation::build(oracle, max_degree)?;
    let n = trunc.object_count();

    let mut ez1 = ItemAcc::new("ez1_sections_nonempty");
    let mut ez2 = ItemAcc::new("ez2_section_sets_separate");
    let mut sections_plus = ItemAcc::new("sections_of_inverse_maps_are_direct");
    let mut homs_nonempty = ItemAcc::advisory("hypothesis_homs_nonempty");

    for c in 0..n {
        for d in 0..n {
            homs_nonempty.check(!trunc.hom(c, d).is_empty(), || {
                (
                    String::from("empty hom-set"),
                    alloc::vec![
                        (String::from("dom"), trunc.object(c).render()),
                        (String::from("cod"), trunc.object(d).render()),
                    ],
                )
            });
            let minus: Vec<usize> = trunc.minus_indices(c, d).collect();
            if minus.is_empty() {
                continue;
            }
            let id_d = trunc.identity_index(d);
            // section sets of every inverse-class map c -> d
            let mut section_sets: Vec<Vec<usize>> = Vec::with_capacity(minus.len());
            for &sigma in &minus {
                let sigma_term = &trunc.hom(c, d)[sigma];
                let mut sections = Vec::new();
                for (b, beta) in trunc.hom(d, c).iter().enumerate() {
                    let composite = trunc.compose(sigma_term, beta);
                    if matches!(&composite, Ok(h) if trunc.hom_index(d, d, h) == Ok(id_d)) {
                        sections.push(b);
                    }
                }
                ez1.check(!sections.is_empty(), || {
                    (
                        String::from("inverse-class map has no section"),
                        alloc::vec![
                            (String::from("sigma"), sigma_term.render_name()),
                            (String::from("dom"), trunc.object(c).render()),
                            (String::from("cod"), trunc.object(d).render()),
                        ],
                    )
                });
                for &b in &sections {
                    let singleton = MultiMorphism::new(
                        trunc.object(d).clone(),
                        alloc::vec![trunc.hom(d, c)[b].clone()],
                    );
                    sections_plus.check(oracle.is_plus_family(&singleton), || {
                        (
                            String::from("section of an inverse-class map is not direct"),
                            alloc::vec![
                                (String::from("sigma"), sigma_term.render_name()),
                                (String::from("section"), trunc.hom(d, c)[b].render_name()),
                            ],
                        )
                    });
                }
                section_sets.push(sections);
            }
            for i in 0..minus.len() {
                for j in i + 1..minus.len() {
                    ez2.check(section_sets[i] != section_sets[j], || {
                        (
                            String::from("distinct inverse-class maps share their section set"),
                            alloc::vec![
                                (
                                    String::from("sigma"),
                                    trunc.hom(c, d)[minus[i]].render_name()
                                ),
                                (
                                    String::from("sigma_prime"),
                                    trunc.hom(c, d)[minus[j]].render_name()
                                ),
                                (String::from("dom"), trunc.object(c).render()),
                            ],
                        )
                    });
                }
            }
        }
    }

    let notes = alloc::vec![format!("objects={}", n)];
    Ok(assemble(
        "ez",
        oracle.describe(),
        max_degree,
        None,
        alloc::vec![ez1, ez2, sections_plus, homs_nonempty],
        notes,
    ))
}

/// The splitting of an idempotent produced by the Reedy factorization.
#[derive(Clone, Debug)]
pub struct IdempotentSplitting {
    /// The inverse-class part `rho: c -> mid`.
    pub retraction: MorphismTerm,
    /// The direct-class part `section: mid -> c`.
    pub section: MorphismTerm,
    pub mid: ObjectTerm,
    /// `rho . section = identity` (the split condition).
    pub splits: bool,
    /// `section . rho` equals the original idempotent.
    pub recomposes: bool,
}

/// Split an idempotent `eps: c -> c` through its inverse/direct
/// factorization.  Errors when `eps` is not an idempotent endomorphism;
/// the split/recompose flags report the lemma's conclusion.
pub fn split_idempotent(
    oracle: &dyn ReedyOracle,
    object: &ObjectTerm,
    eps: &MorphismTerm,
) -> Result<IdempotentSplitting, TermError> {
    eps.check_against(object, object)?;
    if &oracle.compose(eps, eps)? != eps {
        return Err(TermError::NotIdempotent);
    }
    let fac = oracle.factorize(&MultiMorphism::new(
        object.clone(),
        alloc::vec![eps.clone()],
    ))?;
    let section = fac.plus_part.components[0].clone();
    let retraction = fac.minus_part;
    let id_mid = oracle.identity(&fac.mid)?;
    let splits = oracle.compose(&retraction, &section)? == id_mid;
    let recomposes = &oracle.compose(&section, &retraction)? == eps;
    Ok(IdempotentSplitting {
        retraction,
        section,
        mid: fac.mid,
        splits,
        recomposes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{delta_object, wrap_map, DeltaOracle};
    use crate::term::MonotoneMap;
    use crate::theta::theta_tower;

    #[test]
    fn delta_is_ez_at_small_bounds() {
        let report = verify_ez(&DeltaOracle, 4).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn theta_squared_is_ez_at_small_bounds() {
        let report = verify_ez(&*theta_tower(2), 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn splitting_the_constant_idempotent_on_the_interval() {
        let oracle = DeltaOracle;
        let c = delta_object(1);
        // eps = (0,0): [1] -> [1]
        let eps = wrap_map(&MonotoneMap::new(alloc::vec![0, 0], 1).unwrap());
        let split = split_idempotent(&oracle, &c, &eps).unwrap();
        assert!(split.splits && split.recomposes);
        assert_eq!(split.mid, delta_object(0));
        assert_eq!(split.retraction.alpha().values(), &[0, 0]);
        assert_eq!(split.section.alpha().values(), &[0]);

        // identities split trivially
        let id = oracle.identity(&c).unwrap();
        let split = split_idempotent(&oracle, &c, &id).unwrap();
        assert!(split.splits && split.recomposes);
        assert!(split.retraction.is_identity() && split.section.is_identity());

        // (1,2,2): [2] -> [2] does not fix its image, so it is rejected
        let c2 = delta_object(2);
        let not_idem = wrap_map(&MonotoneMap::new(alloc::vec![1, 2, 2], 2).unwrap());
        assert!(matches!(
            split_idempotent(&oracle, &c2, &not_idem),
            Err(TermError::NotIdempotent)
        ));
    }
}
