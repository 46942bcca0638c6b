//! The prism correspondence: jointly monic families out of `[m]` with
//! fixed targets biject with the non-degenerate `m`-cells of the product
//! of standard simplices.  Both sides are computed by independent routes
//! (direct enumeration of monotone tuples; presheaf classification) and
//! compared.

use alloc::format;
use alloc::vec::Vec;

use crate::delta::{enumerate_monotone, is_plus_family_delta, DeltaOracle};
use crate::error::TermError;
use crate::presheaf::{classify_points, product_presheaf, yoneda, Presheaf};
use crate::term::MonotoneMap;
use crate::trunc::Truncation;
use crate::verify::report::{assemble, ItemAcc, VerificationReport};

/// Count the jointly monic families `[m] -> [n_1], ..., [n_r]` by direct
/// enumeration.
pub fn plus_family_count(m: u32, targets: &[u32]) -> u64 {
    let mut count = 0u64;
    let mut pools: Vec<Vec<MonotoneMap>> = Vec::with_capacity(targets.len());
    for &n in targets {
        pools.push(enumerate_monotone(m, n));
    }
    let sizes: Vec<usize> = pools.iter().map(Vec::len).collect();
    if sizes.contains(&0) {
        return 0;
    }
    let mut pick = alloc::vec![0usize; targets.len()];
    loop {
        let family: Vec<&MonotoneMap> = pick.iter().zip(&pools).map(|(&i, p)| &p[i]).collect();
        if is_plus_family_delta(m, &family) {
            count += 1;
        }
        let mut slot = pick.len();
        let mut advanced = false;
        while slot > 0 {
            slot -= 1;
            if pick[slot] + 1 < sizes[slot] {
                pick[slot] += 1;
                advanced = true;
                break;
            }
            pick[slot] = 0;
        }
        if !advanced {
            return count;
        }
    }
}

/// Count the non-degenerate `m`-cells of the product of the standard
/// simplices on `targets`, through the presheaf machinery.
pub fn prism_nondegenerate_count(m: u32, targets: &[u32]) -> Result<u64, TermError> {
    let bound = targets.iter().copied().max().unwrap_or(0).max(m);
    let oracle = DeltaOracle;
    let trunc = Truncation::build(&oracle, bound)?;
    let mut product: Option<Presheaf> = None;
    for &n in targets {
        let factor = yoneda(&trunc, n as usize);
        product = Some(match product {
            None => factor,
            Some(acc) => product_presheaf(&acc, &factor),
        });
    }
    // the empty product is the terminal presheaf: one point everywhere
    let product = match product {
        Some(p) => p,
        None => yoneda(&trunc, 0),
    };
    let class = classify_points(&trunc, &product);
    Ok(class.nd_count(m as usize) as u64)
}

pub fn prism_correspondence(m: u32, targets: &[u32]) -> Result<VerificationReport, TermError> {
    let direct = plus_family_count(m, targets);
    let presheaf_route = prism_nondegenerate_count(m, targets)?;
    let mut item = ItemAcc::new("prism_counts_agree");
    item.check(direct == presheaf_route, || {
        (
            format!("direct count {direct} != non-degenerate cell count {presheaf_route}"),
            alloc::vec![(
                alloc::string::String::from("shape"),
                format!("[{m}] -> {targets:?}"),
            )],
        )
    });
    let notes = alloc::vec![
        format!("shape=[{m}];{targets:?}"),
        format!("plus_families={direct}"),
        format!("nondegenerate_cells={presheaf_route}"),
    ];
    let bound = targets.iter().copied().max().unwrap_or(0).max(m);
    Ok(assemble(
        "prism",
        alloc::string::String::from("delta"),
        bound,
        Some(targets.len() as u32),
        alloc::vec![item],
        notes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_cell_counts() {
        assert_eq!(plus_family_count(1, &[1, 1]), 5);
        assert_eq!(plus_family_count(2, &[1, 1]), 2);
        assert_eq!(prism_nondegenerate_count(1, &[1, 1]).unwrap(), 5);
        assert_eq!(prism_nondegenerate_count(2, &[1, 1]).unwrap(), 2);
    }

    #[test]
    fn single_target_counts_injections() {
        fn binom(n: u64, k: u64) -> u64 {
            if k > n {
                return 0;
            }
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        // |Delta^+([m];[n])| = C(n+1, m+1), the injections [m] -> [n]
        for m in 0..=3u32 {
            for n in 0..=3u32 {
                let expected = binom(u64::from(n) + 1, u64::from(m) + 1);
                let direct = plus_family_count(m, &[n]);
                let via_presheaf = prism_nondegenerate_count(m, &[n]).unwrap();
                assert_eq!(direct, expected, "({m},{n})");
                assert_eq!(direct, via_presheaf, "({m},{n})");
            }
        }
        assert_eq!(plus_family_count(1, &[2]), 3);
    }

    #[test]
    fn reports_pass() {
        let report = prism_correspondence(1, &[1, 1]).unwrap();
        assert!(report.passed());
        assert!(report.notes.iter().any(|n| n == "plus_families=5"));
    }
}
