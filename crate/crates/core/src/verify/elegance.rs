//! Elegance via strong pushouts, cross-checked against the pointwise
//! unique-decomposition property.
//!
//! Every pair of inverse-class maps out of a bounded object must extend
//! to a commuting inverse-class square whose Yoneda image is a pushout of
//! presheaves.  Independently, the unique-decomposition property and its
//! bijectivity reformulation are swept over the generated presheaves (the
//! Yoneda presheaves and every pushout computed for the square search),
//! and the two verdicts are required to agree — the executable content of
//! the equivalence between the two characterizations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::TermError;
use crate::oracle::ReedyOracle;
use crate::presheaf::{
    check_e_prime, classify_points, ez_decompose, pushout_presheaf, search_sp_square, yoneda,
    yoneda_map, EzOutcome, Presheaf,
};
use crate::trunc::Truncation;
use crate::verify::report::{assemble, ItemAcc, VerificationReport};

pub fn verify_elegance_sp(
    oracle: &dyn ReedyOracle,
    max_degree: u32,
) -> Result<VerificationReport, TermError> {
    let trunc = Truncation::build(oracle, max_degree)?;
    let n = trunc.object_count();

    let mut sp_item = ItemAcc::new("sp_square_exists");
    let mut e_item = ItemAcc::new("e_unique_decomposition");
    let mut eprime_item = ItemAcc::new("e_prime_bijective");
    let mut agree_pointwise = ItemAcc::new("e_agrees_with_e_prime");
    let mut agree_global = ItemAcc::new("sp_agrees_with_pointwise_e");

    // presheaves swept for the pointwise property: all Yoneda presheaves
    // plus every pushout arising from the square search
    let mut sweep: Vec<(String, Presheaf)> = (0..n)
        .map(|c| {
            (
                format!("yoneda({})", trunc.object(c).render()),
                yoneda(&trunc, c),
            )
        })
        .collect();

    for c in 0..n {
        let mut pairs: Vec<(usize, usize, usize, usize)> = Vec::new();
        for d1 in 0..n {
            for s1 in trunc.minus_indices(c, d1) {
                for d2 in 0..n {
                    for s2 in trunc.minus_indices(c, d2) {
                        if (d1, s1) <= (d2, s2) {
                            pairs.push((d1, s1, d2, s2));
                        }
                    }
                }
            }
        }
        for (d1, s1, d2, s2) in pairs {
            let fc = yoneda(&trunc, c);
            let fd1 = yoneda(&trunc, d1);
            let fd2 = yoneda(&trunc, d2);
            let m1 = yoneda_map(&trunc, c, d1, s1);
            let m2 = yoneda_map(&trunc, c, d2, s2);
            let (pushout, inl, inr) = pushout_presheaf(&trunc, &fc, &fd1, &fd2, &m1, &m2);
            let mut rejected = Vec::new();
            let witness = search_sp_square(
                &trunc,
                &pushout,
                &inl,
                &inr,
                c,
                d1,
                s1,
                d2,
                s2,
                &mut rejected,
            );
            sp_item.check(witness.is_some(), || {
                (
                    String::from("no inverse-class square represents the pushout"),
                    alloc::vec![
                        (String::from("dom"), trunc.object(c).render()),
                        (String::from("sigma1"), trunc.hom(c, d1)[s1].render_name()),
                        (String::from("sigma2"), trunc.hom(c, d2)[s2].render_name()),
                    ],
                )
            });
            sweep.push((
                format!(
                    "pushout({},{},{})",
                    trunc.object(c).render(),
                    trunc.hom(c, d1)[s1].render_name(),
                    trunc.hom(c, d2)[s2].render_name()
                ),
                pushout,
            ));
        }
    }

    for (label, x) in &sweep {
        let class = classify_points(&trunc, x);
        for c in 0..n {
            let pointwise_ok = (0..x.size(c) as u32).all(|p| {
                let outcome = ez_decompose(&trunc, x, &class, c, p);
                let unique = matches!(outcome, EzOutcome::Unique { .. });
                e_item.check(unique, || match &outcome {
                    EzOutcome::Violation { pairs } => (
                        format!("{} decomposition pairs for one point", pairs.len()),
                        alloc::vec![
                            (String::from("presheaf"), label.clone()),
                            (String::from("object"), trunc.object(c).render()),
                            (String::from("point"), String::from(x.name(c, p))),
                        ],
                    ),
                    EzOutcome::Unique { .. } => unreachable!(),
                });
                unique
            });
            let report = check_e_prime(&trunc, x, &class, c);
            eprime_item.check(report.bijective, || {
                (
                    format!("{} defective points", report.defects.len()),
                    alloc::vec![
                        (String::from("presheaf"), label.clone()),
                        (String::from("object"), trunc.object(c).render()),
                    ],
                )
            });
            agree_pointwise.check(report.bijective == pointwise_ok, || {
                (
                    String::from("bijectivity reformulation disagrees with pointwise sweep"),
                    alloc::vec![
                        (String::from("presheaf"), label.clone()),
                        (String::from("object"), trunc.object(c).render()),
                    ],
                )
            });
        }
    }

    let sp_verdict = sp_item.violations == 0;
    let e_verdict = e_item.violations == 0 && eprime_item.violations == 0;
    agree_global.check(sp_verdict == e_verdict, || {
        (
            format!("square verdict {sp_verdict} vs pointwise verdict {e_verdict}"),
            Vec::new(),
        )
    });

    let notes = alloc::vec![format!("swept_presheaves={}", sweep.len())];
    Ok(assemble(
        "elegance-sp",
        oracle.describe(),
        max_degree,
        None,
        alloc::vec![sp_item, e_item, eprime_item, agree_pointwise, agree_global],
        notes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::DeltaOracle;
    use crate::theta::theta_tower;

    #[test]
    fn delta_is_elegant_at_small_bounds() {
        let report = verify_elegance_sp(&DeltaOracle, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn theta_squared_is_elegant_at_small_bounds() {
        let report = verify_elegance_sp(&*theta_tower(2), 2).unwrap();
        assert!(report.passed(), "{report}");
    }
}
