//! Degenerate/non-degenerate point classification and the Eilenberg-Zilber
//! decomposition machinery: a point is degenerate when it is the image of
//! some point under a non-identity inverse-class morphism, and an elegant
//! truncation decomposes every point uniquely as a degeneracy of a
//! non-degenerate point.
//!
//! All sweeps only consult codomains of inverse-class maps, whose degree
//! never exceeds the source degree, so verdicts are exact within the
//! truncation rather than approximations.

use alloc::vec;
use alloc::vec::Vec;

use crate::presheaf::Presheaf;
use crate::trunc::Truncation;

/// The partition of every point set into degenerate and non-degenerate
/// points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClass {
    /// `nd[c][p]` is true when point `p` of `X(c)` is non-degenerate.
    pub nd: Vec<Vec<bool>>,
}

impl PointClass {
    pub fn is_nd(&self, object: usize, point: u32) -> bool {
        self.nd[object][point as usize]
    }

    pub fn nd_count(&self, object: usize) -> usize {
        self.nd[object].iter().filter(|&&b| b).count()
    }

    pub fn dg_count(&self, object: usize) -> usize {
        self.nd[object].len() - self.nd_count(object)
    }

    /// Indices of the degenerate points of `X(c)`.
    pub fn dg_points(&self, object: usize) -> Vec<u32> {
        self.nd[object]
            .iter()
            .enumerate()
            .filter_map(|(p, &nd)| if nd { None } else { Some(p as u32) })
            .collect()
    }
}

/// Classify every point of `x`: degenerate iff it is `X(sigma)(y)` for a
/// non-identity inverse-class `sigma` out of its object.  Brute force over
/// all bounded inverse-class morphisms.
pub fn classify_points(trunc: &Truncation<'_>, x: &Presheaf) -> PointClass {
    let n = trunc.object_count();
    let mut nd: Vec<Vec<bool>> = (0..n).map(|c| vec![true; x.size(c)]).collect();
    for c in 0..n {
        for d in 0..n {
            for sigma in trunc.minus_indices(c, d) {
                if trunc.is_identity(c, d, sigma) {
                    continue;
                }
                for y in 0..x.size(d) as u32 {
                    nd[c][x.apply(c, d, sigma, y) as usize] = false;
                }
            }
        }
    }
    PointClass { nd }
}

/// Result of decomposing one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EzOutcome {
    /// Exactly one pair `(sigma: c -> d inverse, y non-degenerate)` with
    /// `X(sigma)(y) = x`; fields are `(d, sigma index, y)`.
    Unique { cod: usize, map: usize, point: u32 },
    /// Zero or at least two such pairs: an elegance violation, with the
    /// full witness list.
    Violation { pairs: Vec<(usize, usize, u32)> },
}

/// Enumerate all pairs `(sigma in C^-, y non-degenerate)` through which
/// the point factors; the identity map is among the candidates, so for a
/// non-degenerate point the unique pair is `(identity, x)`.
pub fn ez_decompose(
    trunc: &Truncation<'_>,
    x: &Presheaf,
    class: &PointClass,
    object: usize,
    point: u32,
) -> EzOutcome {
    let mut pairs = Vec::new();
    for d in 0..trunc.object_count() {
        for sigma in trunc.minus_indices(object, d) {
            for y in 0..x.size(d) as u32 {
                if class.is_nd(d, y) && x.apply(object, d, sigma, y) == point {
                    pairs.push((d, sigma, y));
                }
            }
        }
    }
    if pairs.len() == 1 {
        let (cod, map, point) = pairs[0];
        EzOutcome::Unique { cod, map, point }
    } else {
        EzOutcome::Violation { pairs }
    }
}

/// Verdict of the bijectivity reformulation at one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EPrimeReport {
    pub bijective: bool,
    /// Points hit zero or several times: `(point, multiplicity)`.
    pub defects: Vec<(u32, usize)>,
}

/// Test that `(d, y non-degenerate, sigma in C^-(c, d)) -> X(sigma)(y)`
/// is a bijection onto `X(c)`.
pub fn check_e_prime(
    trunc: &Truncation<'_>,
    x: &Presheaf,
    class: &PointClass,
    object: usize,
) -> EPrimeReport {
    let mut hits = vec![0usize; x.size(object)];
    for d in 0..trunc.object_count() {
        for sigma in trunc.minus_indices(object, d) {
            for y in 0..x.size(d) as u32 {
                if class.is_nd(d, y) {
                    hits[x.apply(object, d, sigma, y) as usize] += 1;
                }
            }
        }
    }
    let defects: Vec<(u32, usize)> = hits
        .iter()
        .enumerate()
        .filter_map(|(p, &h)| if h != 1 { Some((p as u32, h)) } else { None })
        .collect();
    EPrimeReport {
        bijective: defects.is_empty(),
        defects,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::DeltaOracle;
    use crate::presheaf::{product_presheaf, yoneda};
    use crate::term::MonotoneMap;

    #[test]
    fn standard_simplex_nd_counts() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 3).unwrap();
        let f1 = yoneda(&trunc, 1);
        let class = classify_points(&trunc, &f1);
        assert_eq!(class.nd_count(0), 2);
        assert_eq!(class.nd_count(1), 1);
        assert_eq!(class.nd_count(2), 0);
        assert_eq!(class.nd_count(3), 0);
        // the unique non-degenerate 1-cell is the identity (0,1)
        let nd_names: Vec<&str> = (0..f1.size(1) as u32)
            .filter(|&p| class.is_nd(1, p))
            .map(|p| f1.name(1, p))
            .collect();
        assert_eq!(nd_names, vec!["[0,1](1)"]);
    }

    #[test]
    fn square_nd_counts() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 3).unwrap();
        let f1 = yoneda(&trunc, 1);
        let square = product_presheaf(&f1, &f1);
        let class = classify_points(&trunc, &square);
        assert_eq!(class.nd_count(0), 4);
        assert_eq!(class.nd_count(1), 5);
        assert_eq!(class.nd_count(2), 2);
        assert_eq!(class.nd_count(3), 0);
    }

    #[test]
    fn points_at_degree_zero_are_never_degenerate() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 2).unwrap();
        for target in 0..trunc.object_count() {
            let x = yoneda(&trunc, target);
            let class = classify_points(&trunc, &x);
            assert_eq!(class.nd_count(0), x.size(0));
        }
    }

    #[test]
    fn decomposition_of_a_degenerate_edge() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 3).unwrap();
        let f1 = yoneda(&trunc, 1);
        let class = classify_points(&trunc, &f1);
        // point (0,1,1) of F[1] at [2] decomposes through sigma = (0,1,1)
        let sigma = crate::delta::wrap_map(&MonotoneMap::new(vec![0, 1, 1], 1).unwrap());
        let point = trunc.hom_index(2, 1, &sigma).unwrap() as u32;
        match ez_decompose(&trunc, &f1, &class, 2, point) {
            EzOutcome::Unique { cod, map, point: y } => {
                assert_eq!(cod, 1);
                let sigma_found = &trunc.hom(2, 1)[map];
                assert_eq!(sigma_found.alpha().values(), &[0, 1, 1]);
                assert_eq!(f1.name(1, y), "[0,1](1)");
            }
            other => panic!("expected unique decomposition, got {other:?}"),
        }
    }

    #[test]
    fn non_degenerate_points_decompose_through_the_identity() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 2).unwrap();
        let f2 = yoneda(&trunc, 2);
        let class = classify_points(&trunc, &f2);
        let id = trunc.identity_index(2);
        for p in 0..f2.size(2) as u32 {
            if class.is_nd(2, p) {
                assert_eq!(
                    ez_decompose(&trunc, &f2, &class, 2, p),
                    EzOutcome::Unique {
                        cod: 2,
                        map: id,
                        point: p
                    }
                );
            }
        }
    }

    #[test]
    fn e_prime_agrees_with_pointwise_decomposition() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 3).unwrap();
        for target in 0..trunc.object_count() {
            let x = yoneda(&trunc, target);
            let class = classify_points(&trunc, &x);
            for c in 0..trunc.object_count() {
                let report = check_e_prime(&trunc, &x, &class, c);
                let pointwise_ok = (0..x.size(c) as u32).all(|p| {
                    matches!(
                        ez_decompose(&trunc, &x, &class, c, p),
                        EzOutcome::Unique { .. }
                    )
                });
                assert!(report.bijective);
                assert_eq!(report.bijective, pointwise_ok);
            }
        }
    }
}
