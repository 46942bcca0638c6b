//! Strong pushouts, representability search, and image classification of
//! presheaf maps.
//!
//! A square of inverse-class maps is a strong pushout when its Yoneda
//! image is a pushout of presheaves; this is tested by computing the
//! actual set-level pushout and comparing it, stage by stage, with the
//! representable presheaf of the candidate corner.

use alloc::vec::Vec;

use crate::presheaf::{pushout_presheaf, yoneda, yoneda_map, Presheaf, PresheafMap};
use crate::trunc::Truncation;

/// Componentwise image classification of a presheaf map over the bounded
/// stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ImageClass {
    pub mono: bool,
    pub epi: bool,
}

pub fn map_image_class(f: &PresheafMap, x: &Presheaf, y: &Presheaf) -> ImageClass {
    let mut mono = true;
    let mut epi = true;
    for c in 0..f.components.len() {
        let comp = &f.components[c];
        let mut hit = alloc::vec![false; y.size(c)];
        let mut seen = alloc::vec![false; y.size(c)];
        for &q in comp {
            if seen[q as usize] {
                mono = false;
            }
            seen[q as usize] = true;
            hit[q as usize] = true;
        }
        if hit.iter().any(|&h| !h) {
            epi = false;
        }
        let _ = x;
    }
    ImageClass { mono, epi }
}

/// Outcome of the strong-pushout search for a pair of inverse-class maps
/// `sigma_s: c -> d_s`.
#[derive(Clone, Debug)]
pub struct SpOutcome {
    /// The set-level pushout of the Yoneda square, with its stage sizes.
    pub pushout_sizes: Vec<usize>,
    /// `(e, tau_1 index in hom(d1, e), tau_2 index in hom(d2, e))` when a
    /// commuting inverse-class square exists whose corner represents the
    /// pushout; Reedy rigidity makes it unique when it exists.
    pub witness: Option<(usize, usize, usize)>,
    /// Candidate squares that commuted but failed the stage-by-stage
    /// bijection, kept for failure reports.
    pub rejected: Vec<(usize, usize, usize)>,
}

/// Search for the strong pushout of `sigma1: c -> d1`, `sigma2: c -> d2`
/// (hom-set indices; both must be inverse-class).  The corner is searched
/// among objects of degree at most `min(deg d1, deg d2)`, which is where
/// inverse-class maps can land.
pub fn strong_pushout(
    trunc: &Truncation<'_>,
    c: usize,
    d1: usize,
    sigma1: usize,
    d2: usize,
    sigma2: usize,
) -> SpOutcome {
    let fc = yoneda(trunc, c);
    let fd1 = yoneda(trunc, d1);
    let fd2 = yoneda(trunc, d2);
    let f1 = yoneda_map(trunc, c, d1, sigma1);
    let f2 = yoneda_map(trunc, c, d2, sigma2);
    let (pushout, inl, inr) = pushout_presheaf(trunc, &fc, &fd1, &fd2, &f1, &f2);
    let pushout_sizes: Vec<usize> = (0..trunc.object_count()).map(|a| pushout.size(a)).collect();

    let mut rejected = Vec::new();
    let witness = search_sp_square(
        trunc,
        &pushout,
        &inl,
        &inr,
        c,
        d1,
        sigma1,
        d2,
        sigma2,
        &mut rejected,
    );
    SpOutcome {
        pushout_sizes,
        witness,
        rejected,
    }
}

/// Search for the commuting inverse-class square on `sigma1`, `sigma2`
/// whose corner represents the given pushout; rejected commuting squares
/// are appended to `rejected`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn search_sp_square(
    trunc: &Truncation<'_>,
    pushout: &Presheaf,
    inl: &PresheafMap,
    inr: &PresheafMap,
    c: usize,
    d1: usize,
    sigma1: usize,
    d2: usize,
    sigma2: usize,
    rejected: &mut Vec<(usize, usize, usize)>,
) -> Option<(usize, usize, usize)> {
    let s1 = &trunc.hom(c, d1)[sigma1];
    let s2 = &trunc.hom(c, d2)[sigma2];
    let bound = trunc.degree(d1).min(trunc.degree(d2));
    for e in 0..trunc.object_count() {
        if trunc.degree(e) > bound {
            continue;
        }
        for tau1 in trunc.minus_indices(d1, e) {
            let t1s1 = trunc
                .compose(&trunc.hom(d1, e)[tau1], s1)
                .expect("sp composition");
            for tau2 in trunc.minus_indices(d2, e) {
                let t2s2 = trunc
                    .compose(&trunc.hom(d2, e)[tau2], s2)
                    .expect("sp composition");
                if t1s1 != t2s2 {
                    continue;
                }
                if square_represents_pushout(trunc, pushout, inl, inr, d1, tau1, d2, tau2, e) {
                    return Some((e, tau1, tau2));
                }
                rejected.push((e, tau1, tau2));
            }
        }
    }
    None
}

/// Stage-by-stage bijectivity of the induced map `P -> Fe` sending the
/// class of `x: a -> d_s` to `tau_s . x`.
#[allow(clippy::too_many_arguments)]
fn square_represents_pushout(
    trunc: &Truncation<'_>,
    pushout: &Presheaf,
    inl: &PresheafMap,
    inr: &PresheafMap,
    d1: usize,
    tau1: usize,
    d2: usize,
    tau2: usize,
    e: usize,
) -> bool {
    let t1 = &trunc.hom(d1, e)[tau1];
    let t2 = &trunc.hom(d2, e)[tau2];
    for a in 0..trunc.object_count() {
        let target = trunc.hom(a, e).len();
        if pushout.size(a) != target {
            return false;
        }
        let mut image = alloc::vec![None; pushout.size(a)];
        // classes are hit through both injections; the assignments must be
        // single-valued and jointly bijective
        for (x, &class) in inl.components[a].iter().enumerate() {
            let composite = trunc
                .compose(t1, &trunc.hom(a, d1)[x])
                .expect("sp composition");
            let idx = trunc
                .hom_index(a, e, &composite)
                .expect("bounded composite");
            match image[class as usize] {
                None => image[class as usize] = Some(idx),
                Some(prev) if prev == idx => {}
                Some(_) => return false,
            }
        }
        for (y, &class) in inr.components[a].iter().enumerate() {
            let composite = trunc
                .compose(t2, &trunc.hom(a, d2)[y])
                .expect("sp composition");
            let idx = trunc
                .hom_index(a, e, &composite)
                .expect("bounded composite");
            match image[class as usize] {
                None => image[class as usize] = Some(idx),
                Some(prev) if prev == idx => {}
                Some(_) => return false,
            }
        }
        let mut seen = alloc::vec![false; target];
        for entry in image {
            match entry {
                Some(idx) => {
                    if seen[idx] {
                        return false;
                    }
                    seen[idx] = true;
                }
                None => return false,
            }
        }
        if seen.iter().any(|&s| !s) {
            return false;
        }
    }
    true
}

/// Search for an object representing `x`: some `e` and point `w` of
/// `X(e)` whose classifying map `Fe -> X` is a stage-by-stage bijection.
/// Returns the witness object and the iso.
pub fn representability_search(
    trunc: &Truncation<'_>,
    x: &Presheaf,
) -> Option<(usize, PresheafMap)> {
    for e in 0..trunc.object_count() {
        for w in 0..x.size(e) as u32 {
            let mut components = Vec::with_capacity(trunc.object_count());
            let mut bijective = true;
            for a in 0..trunc.object_count() {
                let mut comp = Vec::with_capacity(trunc.hom(a, e).len());
                let mut seen = alloc::vec![false; x.size(a)];
                for gamma in 0..trunc.hom(a, e).len() {
                    let image = x.apply(a, e, gamma, w);
                    if seen[image as usize] {
                        bijective = false;
                        break;
                    }
                    seen[image as usize] = true;
                    comp.push(image);
                }
                if !bijective || seen.iter().any(|&s| !s) {
                    bijective = false;
                    break;
                }
                components.push(comp);
            }
            if bijective {
                return Some((e, PresheafMap { components }));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::DeltaOracle;
    use crate::term::MonotoneMap;
    use crate::trunc::Truncation;

    fn sigma_index(trunc: &Truncation<'_>, c: usize, d: usize, values: &[u32]) -> usize {
        let term = crate::delta::wrap_map(
            &MonotoneMap::new(values.to_vec(), trunc.object(d).arity() as u32).unwrap(),
        );
        trunc.hom_index(c, d, &term).unwrap()
    }

    #[test]
    fn degeneracy_against_itself_collapses_to_a_point() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 2).unwrap();
        let s0 = sigma_index(&trunc, 1, 0, &[0, 0]);
        let out = strong_pushout(&trunc, 1, 0, s0, 0, s0);
        let (e, tau1, tau2) = out.witness.expect("strong pushout exists");
        assert_eq!(e, 0);
        assert!(trunc.is_identity(0, 0, tau1));
        assert!(trunc.is_identity(0, 0, tau2));
        // the pushout presheaf is representable by [0]
        for a in 0..trunc.object_count() {
            assert_eq!(out.pushout_sizes[a], trunc.hom(a, 0).len());
        }
    }

    #[test]
    fn the_two_collapses_of_a_triangle_push_out_to_the_point() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 2).unwrap();
        let s1 = sigma_index(&trunc, 2, 1, &[0, 0, 1]);
        let s2 = sigma_index(&trunc, 2, 1, &[0, 1, 1]);
        let out = strong_pushout(&trunc, 2, 1, s1, 1, s2);
        let (e, tau1, tau2) = out.witness.expect("strong pushout exists");
        assert_eq!(e, 0);
        assert_eq!(trunc.hom(1, 0)[tau1].alpha().values(), &[0, 0]);
        assert_eq!(trunc.hom(1, 0)[tau2].alpha().values(), &[0, 0]);
    }

    #[test]
    fn pushout_of_a_degeneracy_is_representable() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 2).unwrap();
        let f1 = yoneda(&trunc, 1);
        let f0 = yoneda(&trunc, 0);
        let s0 = sigma_index(&trunc, 1, 0, &[0, 0]);
        let fs0 = yoneda_map(&trunc, 1, 0, s0);
        let (p, _, _) = pushout_presheaf(&trunc, &f1, &f0, &f0, &fs0, &fs0);
        let (e, iso) = representability_search(&trunc, &p).expect("representable");
        assert_eq!(e, 0);
        iso.validate(&trunc, &yoneda(&trunc, 0), &p).unwrap();
        let class = map_image_class(&iso, &f0, &p);
        assert!(class.mono && class.epi);
    }

    /// Retracts of representable presheaves are representable: for every
    /// idempotent, the fixed-point sub-presheaf of its Yoneda image is
    /// represented by the splitting object.
    #[test]
    fn retracts_of_representables_are_representable() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 3).unwrap();
        let mut seen = 0;
        for c in 0..trunc.object_count() {
            let fc = yoneda(&trunc, c);
            for eps_idx in 0..trunc.hom(c, c).len() {
                let eps = &trunc.hom(c, c)[eps_idx];
                if &trunc.compose(eps, eps).unwrap() != eps {
                    continue;
                }
                let split = crate::verify::split_idempotent(
                    &oracle,
                    trunc.object(c),
                    eps,
                )
                .unwrap();
                assert!(split.splits && split.recomposes);
                // fixed points of F(eps): Fc -> Fc form the retract
                let feps = yoneda_map(&trunc, c, c, eps_idx);
                let keep: Vec<Vec<bool>> = (0..trunc.object_count())
                    .map(|a| {
                        (0..fc.size(a) as u32)
                            .map(|p| feps.apply(a, p) == p)
                            .collect()
                    })
                    .collect();
                let (retract, _) = crate::presheaf::sub_presheaf(&trunc, &fc, &keep).unwrap();
                let (rep, iso) =
                    representability_search(&trunc, &retract).expect("retract representable");
                assert_eq!(trunc.object(rep), &split.mid);
                iso.validate(&trunc, &yoneda(&trunc, rep), &retract).unwrap();
                seen += 1;
            }
        }
        assert!(seen > 10);
    }

    #[test]
    fn yoneda_images_classify_as_expected() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 2).unwrap();
        let f1 = yoneda(&trunc, 1);
        let f0 = yoneda(&trunc, 0);
        // F(s0) is epi but not mono
        let s0 = sigma_index(&trunc, 1, 0, &[0, 0]);
        let fs0 = yoneda_map(&trunc, 1, 0, s0);
        let class = map_image_class(&fs0, &f1, &f0);
        assert!(class.epi && !class.mono);
        // F of a coface is mono but not epi
        let d0 = sigma_index(&trunc, 0, 1, &[1]);
        let fd0 = yoneda_map(&trunc, 0, 1, d0);
        let class = map_image_class(&fd0, &f0, &f1);
        assert!(class.mono && !class.epi);
    }
}
