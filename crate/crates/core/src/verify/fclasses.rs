//! Characterization of the Reedy classes through the Yoneda functor:
//! inverse-class maps are exactly those with componentwise surjective
//! image, direct-class maps exactly those with injective image, and every
//! direct-class family induces a componentwise injection into the product
//! of representables.  The converse directions quantify over test objects
//! in the truncation only and are labelled as bounded verification.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::TermError;
use crate::oracle::ReedyOracle;
use crate::term::MultiMorphism;
use crate::trunc::Truncation;
use crate::verify::report::{assemble, ItemAcc, VerificationReport};

/// Componentwise image classification of the Yoneda image of `f: c -> d`:
/// postcomposition on every bounded test object.
fn f_image_class(trunc: &Truncation<'_>, c: usize, d: usize, f: usize) -> (bool, bool) {
    let term = &trunc.hom(c, d)[f];
    let mut mono = true;
    let mut epi = true;
    for a in 0..trunc.object_count() {
        let mut hit = alloc::vec![false; trunc.hom(a, d).len()];
        let mut seen = alloc::vec![false; trunc.hom(a, d).len()];
        for x in trunc.hom(a, c) {
            let composite = trunc.compose(term, x).expect("bounded composition");
            let idx = trunc
                .hom_index(a, d, &composite)
                .expect("composite in truncation");
            if seen[idx] {
                mono = false;
            }
            seen[idx] = true;
            hit[idx] = true;
        }
        if hit.iter().any(|&h| !h) {
            epi = false;
        }
        if !mono && !epi {
            break;
        }
    }
    (mono, epi)
}

pub fn verify_f_classes(
    oracle: &dyn ReedyOracle,
    max_degree: u32,
    valence: u32,
) -> Result<VerificationReport, TermError> {
    let trunc = Truncation::build(oracle, max_degree)?;
    let n = trunc.object_count();

    let mut minus_to_epi = ItemAcc::new("minus_implies_f_epi");
    let mut epi_to_minus = ItemAcc::new("f_epi_implies_minus_bounded");
    let mut plus_to_mono = ItemAcc::new("plus_single_implies_f_mono");
    let mut mono_to_plus = ItemAcc::new("f_mono_implies_plus_bounded");
    let mut family_mono = ItemAcc::new("plus_family_implies_f_mono");

    for c in 0..n {
        for d in 0..n {
            for f in 0..trunc.hom(c, d).len() {
                let (mono, epi) = f_image_class(&trunc, c, d, f);
                let term = &trunc.hom(c, d)[f];
                let singleton =
                    MultiMorphism::new(trunc.object(c).clone(), alloc::vec![term.clone()]);
                let is_minus = trunc.is_minus(c, d, f);
                let is_plus = oracle.is_plus_family(&singleton);
                let witness = |label: &'static str| {
                    (
                        String::from(label),
                        alloc::vec![
                            (String::from("f"), term.render_name()),
                            (String::from("dom"), trunc.object(c).render()),
                            (String::from("cod"), trunc.object(d).render()),
                        ],
                    )
                };
                if is_minus {
                    minus_to_epi.check(epi, || witness("inverse-class map with non-epi image"));
                }
                if epi {
                    epi_to_minus.check(is_minus, || witness("epi image on a non-inverse map"));
                }
                if is_plus {
                    plus_to_mono.check(mono, || witness("direct-class map with non-mono image"));
                }
                if mono {
                    mono_to_plus.check(is_plus, || witness("mono image on a non-direct map"));
                }
            }
        }
    }

    // direct-class families of valence <= U induce injections into the
    // product of representables (valence 0 lands in the terminal presheaf)
    for x in 0..n {
        for codomains in codomain_tuples_up_to(n, valence) {
            let sizes: Vec<usize> = codomains.iter().map(|&d| trunc.hom(x, d).len()).collect();
            if sizes.contains(&0) {
                continue;
            }
            let mut pick = alloc::vec![0usize; codomains.len()];
            loop {
                let family = MultiMorphism::new(
                    trunc.object(x).clone(),
                    pick.iter()
                        .zip(&codomains)
                        .map(|(&f, &d)| trunc.hom(x, d)[f].clone())
                        .collect(),
                );
                if oracle.is_plus_family(&family) {
                    let mut mono = true;
                    'stages: for a in 0..n {
                        let mut seen: alloc::collections::BTreeSet<Vec<usize>> =
                            alloc::collections::BTreeSet::new();
                        for t in trunc.hom(a, x) {
                            let mut image = Vec::with_capacity(family.components.len());
                            for (s, comp) in family.components.iter().enumerate() {
                                let composite =
                                    trunc.compose(comp, t).expect("bounded composition");
                                image.push(
                                    trunc
                                        .hom_index(a, codomains[s], &composite)
                                        .expect("composite in truncation"),
                                );
                            }
                            if !seen.insert(image) {
                                mono = false;
                                break 'stages;
                            }
                        }
                    }
                    family_mono.check(mono, || {
                        let mut terms =
                            alloc::vec![(String::from("dom"), trunc.object(x).render())];
                        for (s, comp) in family.components.iter().enumerate() {
                            terms.push((format!("f{}", s + 1), comp.render_name()));
                        }
                        (
                            String::from("direct family with non-mono product image"),
                            terms,
                        )
                    });
                }
                if !advance(&mut pick, &sizes) {
                    break;
                }
            }
        }
    }

    let notes = alloc::vec![format!("objects={n}")];
    Ok(assemble(
        "fclasses",
        oracle.describe(),
        max_degree,
        Some(valence),
        alloc::vec![
            minus_to_epi,
            epi_to_minus,
            plus_to_mono,
            mono_to_plus,
            family_mono
        ],
        notes,
    ))
}

fn codomain_tuples_up_to(n: usize, max_valence: u32) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    for len in 1..=max_valence as usize {
        let mut tuple = alloc::vec![0usize; len];
        loop {
            out.push(tuple.clone());
            let mut slot = len;
            let mut advanced = false;
            while slot > 0 {
                slot -= 1;
                if tuple[slot] + 1 < n {
                    tuple[slot] += 1;
                    advanced = true;
                    break;
                }
                tuple[slot] = 0;
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

fn advance(pick: &mut [usize], sizes: &[usize]) -> bool {
    let mut slot = pick.len();
    while slot > 0 {
        slot -= 1;
        if pick[slot] + 1 < sizes[slot] {
            pick[slot] += 1;
            return true;
        }
        pick[slot] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::DeltaOracle;
    use crate::theta::theta_tower;

    #[test]
    fn delta_classes_match_their_images() {
        let report = verify_f_classes(&DeltaOracle, 3, 2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn theta_squared_classes_match_their_images() {
        let report = verify_f_classes(&*theta_tower(2), 2, 2).unwrap();
        assert!(report.passed(), "{report}");
    }
}
