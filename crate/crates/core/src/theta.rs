//! The theta construction as a functor on oracles: given any multi-Reedy
//! oracle for `C`, [`ThetaOracle`] presents `Theta C` with composition,
//! inverse/direct structure, degree, and the unique minus-then-plus
//! factorization.  Applying it `k` times to the terminal oracle yields the
//! `k`-fold theta category; applying it to the simplex oracle exercises
//! the construction at full generality.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::delta::{enumerate_monotone, factorize_delta, is_plus_family_delta, DeltaOracle};
use crate::error::TermError;
use crate::oracle::{Factorization, ReedyOracle, TerminalOracle};
use crate::term::{MonotoneMap, MorphismTerm, MultiMorphism, ObjectTerm};

/// Index bookkeeping for theta blocks.
///
/// All the subscript juggling of the construction happens here: which
/// codomain children a source index covers, how families are gathered at a
/// source index, and how gathered lists are scattered back.  Indices `i`
/// (source) and `j` (target) are 1-based to match the usual notation;
/// block storage is 0-based.
pub mod blocks {
    use super::*;

    /// 1-based codomain indices covered by source index `i`:
    /// the half-open interval `(alpha(i-1), alpha(i)]`.
    pub fn covered_targets(alpha: &MonotoneMap, i: u32) -> core::ops::RangeInclusive<u32> {
        alpha.value(i - 1) + 1..=alpha.value(i)
    }

    /// For a surjective `sigma` and a 1-based target index `j`, the unique
    /// source index `i` with `sigma(i-1) < sigma(i) = j`.
    pub fn jump_source(sigma: &MonotoneMap, j: u32) -> Option<u32> {
        (1..=sigma.source_size())
            .find(|&i| sigma.value(i - 1) < sigma.value(i) && sigma.value(i) == j)
    }

    /// Gathered slot order for a family of shapes `(alpha_s)` at source
    /// index `i`: pairs `(s, j)` with `j` covered by `i` under `alpha_s`,
    /// component-major.  This is the order in which inner multimorphisms
    /// are assembled during plus-membership tests and factorization.
    pub fn gathered_slots(alphas: &[&MonotoneMap], i: u32) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (s, alpha) in alphas.iter().enumerate() {
            for j in covered_targets(alpha, i) {
                out.push((s, j));
            }
        }
        out
    }

    /// Split a gathered list back into one run per component, with run `s`
    /// of length `alpha_s(i) - alpha_s(i-1)`.  Inverse to the order used
    /// by [`gathered_slots`].
    pub fn scatter<T: Clone>(gathered: &[T], alphas: &[&MonotoneMap], i: u32) -> Vec<Vec<T>> {
        let mut out = Vec::with_capacity(alphas.len());
        let mut offset = 0usize;
        for alpha in alphas {
            let len = (alpha.value(i) - alpha.value(i - 1)) as usize;
            out.push(gathered[offset..offset + len].to_vec());
            offset += len;
        }
        debug_assert_eq!(offset, gathered.len());
        out
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        fn mm(values: &[u32], target: u32) -> MonotoneMap {
            MonotoneMap::new(values.to_vec(), target).unwrap()
        }

        #[test]
        fn covered_targets_partition_the_codomain_for_each_component() {
            // exhaustive over all maps [m] -> [n] at small sizes
            for m in 0..=4u32 {
                for n in 0..=4u32 {
                    for alpha in enumerate_monotone(m, n) {
                        let mut seen = Vec::new();
                        for i in 1..=m {
                            seen.extend(covered_targets(&alpha, i));
                        }
                        // covered indices are exactly (alpha(0), alpha(m)],
                        // each exactly once, in ascending order
                        let expected: Vec<u32> = (alpha.value(0) + 1..=alpha.value(m)).collect();
                        assert_eq!(seen, expected, "alpha {alpha}");
                    }
                }
            }
        }

        #[test]
        fn jump_source_finds_the_unique_preimage_jump() {
            for m in 0..=4u32 {
                for k in 0..=m {
                    for sigma in enumerate_monotone(m, k) {
                        if !sigma.is_surjective() {
                            continue;
                        }
                        for j in 1..=k {
                            let i = jump_source(&sigma, j).unwrap();
                            assert!(sigma.value(i - 1) < sigma.value(i));
                            assert_eq!(sigma.value(i), j);
                            // uniqueness: no other jump lands on j
                            for i2 in 1..=m {
                                if i2 != i {
                                    assert!(
                                        !(sigma.value(i2 - 1) < sigma.value(i2)
                                            && sigma.value(i2) == j)
                                    );
                                }
                            }
                        }
                        assert_eq!(jump_source(&sigma, 0), None);
                    }
                }
            }
        }

        #[test]
        fn scatter_inverts_gathering() {
            let a1 = mm(&[0, 2, 2], 3);
            let a2 = mm(&[1, 1, 3], 3);
            let alphas = [&a1, &a2];
            for i in 1..=2u32 {
                let slots = gathered_slots(&alphas, i);
                let runs = scatter(&slots, &alphas, i);
                assert_eq!(runs.len(), 2);
                let mut flat = Vec::new();
                for (s, run) in runs.iter().enumerate() {
                    for &(s2, j) in run {
                        assert_eq!(s2, s);
                        assert!(covered_targets(alphas[s], i).contains(&j));
                    }
                    flat.extend(run.iter().copied());
                }
                assert_eq!(flat, slots);
            }
            // slot counts per component match the increments
            assert_eq!(gathered_slots(&alphas, 1).len(), 2); // a1 covers 1,2; a2 covers none
            assert_eq!(gathered_slots(&alphas, 2).len(), 2); // a2 covers 2,3
        }

        #[test]
        fn gathered_slots_is_component_major() {
            let a1 = mm(&[0, 1], 2);
            let a2 = mm(&[0, 2], 2);
            let slots = gathered_slots(&[&a1, &a2], 1);
            assert_eq!(slots, vec![(0, 1), (1, 1), (1, 2)]);
        }
    }
}

/// `Theta C` for any inner multi-Reedy oracle `C`.
#[derive(Clone, Copy, Debug)]
pub struct ThetaOracle<O> {
    inner: O,
}

impl<O: ReedyOracle> ThetaOracle<O> {
    pub fn new(inner: O) -> Self {
        ThetaOracle { inner }
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    fn check_level(&self, found: u32) -> Result<(), TermError> {
        if found != self.level() {
            return Err(TermError::LevelMismatch {
                expected: self.level(),
                found,
            });
        }
        Ok(())
    }

    /// Gather the inner multimorphism sitting over source index `i`
    /// (1-based): all block-`i` components of all family members, in
    /// component-major order.
    fn gather(&self, family: &MultiMorphism, i: u32) -> MultiMorphism {
        let domain = family.domain.children()[(i - 1) as usize].clone();
        let mut components = Vec::new();
        for f in &family.components {
            components.extend(f.blocks()[(i - 1) as usize].iter().cloned());
        }
        MultiMorphism::new(domain, components)
    }
}

impl<O: ReedyOracle> ReedyOracle for ThetaOracle<O> {
    fn level(&self) -> u32 {
        self.inner.level() + 1
    }

    fn describe(&self) -> String {
        format!("theta({})", self.inner.describe())
    }

    fn degree(&self, obj: &ObjectTerm) -> u32 {
        obj.arity() as u32
            + obj
                .children()
                .iter()
                .map(|c| self.inner.degree(c))
                .sum::<u32>()
    }

    fn check_object(&self, obj: &ObjectTerm) -> Result<(), TermError> {
        self.check_level(obj.level())?;
        for child in obj.children() {
            self.inner.check_object(child)?;
        }
        Ok(())
    }

    fn enumerate_objects(&self, max_degree: u32) -> Vec<ObjectTerm> {
        let mut out = Vec::new();
        for m in 0..=max_degree {
            let budget = max_degree - m;
            let pool: Vec<(ObjectTerm, u32)> = self
                .inner
                .enumerate_objects(budget)
                .into_iter()
                .map(|c| {
                    let d = self.inner.degree(&c);
                    (c, d)
                })
                .collect();
            let mut chosen: Vec<ObjectTerm> = Vec::with_capacity(m as usize);
            fill_children(
                self.level(),
                m as usize,
                budget,
                &pool,
                &mut chosen,
                &mut out,
            );
        }
        out.sort();
        out
    }

    fn enumerate_hom(
        &self,
        dom: &ObjectTerm,
        cod: &ObjectTerm,
    ) -> Result<Vec<MorphismTerm>, TermError> {
        self.check_level(dom.level())?;
        self.check_level(cod.level())?;
        let m = dom.arity() as u32;
        let n = cod.arity() as u32;
        let mut out = Vec::new();
        'alphas: for alpha in enumerate_monotone(m, n) {
            // one inner hom-set per slot, in block order
            let mut slot_homs: Vec<Vec<MorphismTerm>> = Vec::new();
            let mut slot_block: Vec<usize> = Vec::new();
            for i in 1..=m {
                for j in blocks::covered_targets(&alpha, i) {
                    let hom = self.inner.enumerate_hom(
                        &dom.children()[(i - 1) as usize],
                        &cod.children()[(j - 1) as usize],
                    )?;
                    if hom.is_empty() {
                        continue 'alphas;
                    }
                    slot_homs.push(hom);
                    slot_block.push((i - 1) as usize);
                }
            }
            // odometer over slot choices, last slot fastest: together with
            // ascending alphas this yields the canonical (alpha, blocks)
            // lexicographic order
            let mut pick = vec![0usize; slot_homs.len()];
            loop {
                let mut blocks_out: Vec<Vec<MorphismTerm>> = vec![Vec::new(); m as usize];
                for (slot, &choice) in pick.iter().enumerate() {
                    blocks_out[slot_block[slot]].push(slot_homs[slot][choice].clone());
                }
                out.push(MorphismTerm::node(self.level(), alpha.clone(), blocks_out)?);
                let mut advanced = false;
                let mut slot = pick.len();
                while slot > 0 {
                    slot -= 1;
                    if pick[slot] + 1 < slot_homs[slot].len() {
                        pick[slot] += 1;
                        advanced = true;
                        break;
                    }
                    pick[slot] = 0;
                }
                if !advanced {
                    break;
                }
            }
        }
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
        Ok(out)
    }

    fn identity(&self, obj: &ObjectTerm) -> Result<MorphismTerm, TermError> {
        self.check_object(obj)?;
        Ok(MorphismTerm::identity_of(obj))
    }

    fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError> {
        self.check_level(g.level())?;
        self.check_level(f.level())?;
        let alpha = MonotoneMap::compose(g.alpha(), f.alpha())?;
        let m = f.alpha().source_size();
        let mut blocks_out: Vec<Vec<MorphismTerm>> = Vec::with_capacity(m as usize);
        for i in 1..=m {
            let mut block = Vec::new();
            for j in blocks::covered_targets(f.alpha(), i) {
                let f_component =
                    &f.blocks()[(i - 1) as usize][(j - 1 - f.alpha().value(i - 1)) as usize];
                for k in blocks::covered_targets(g.alpha(), j) {
                    let g_component =
                        &g.blocks()[(j - 1) as usize][(k - 1 - g.alpha().value(j - 1)) as usize];
                    block.push(self.inner.compose(g_component, f_component)?);
                }
            }
            blocks_out.push(block);
        }
        MorphismTerm::node(self.level(), alpha, blocks_out)
    }

    fn is_minus(&self, f: &MorphismTerm) -> bool {
        if f.level() != self.level() {
            return false;
        }
        if !f.alpha().is_surjective() {
            return false;
        }
        // surjectivity forces jumps of exactly one, so jump blocks are
        // single components
        f.blocks()
            .iter()
            .flatten()
            .all(|component| self.inner.is_minus(component))
    }

    fn is_plus_family(&self, family: &MultiMorphism) -> bool {
        if family.domain.level() != self.level() {
            return false;
        }
        let m = family.domain.arity() as u32;
        if family
            .components
            .iter()
            .any(|f| f.level() != self.level() || f.alpha().source_size() != m)
        {
            return false;
        }
        let alphas: Vec<&MonotoneMap> = family.components.iter().map(|f| f.alpha()).collect();
        if !is_plus_family_delta(m, &alphas) {
            return false;
        }
        (1..=m).all(|i| self.inner.is_plus_family(&self.gather(family, i)))
    }

    fn factorize(&self, family: &MultiMorphism) -> Result<Factorization, TermError> {
        self.check_object(&family.domain)?;
        let m = family.domain.arity() as u32;
        for f in &family.components {
            self.check_level(f.level())?;
            if f.alpha().source_size() != m {
                return Err(TermError::DomainMismatch);
            }
        }
        let alphas: Vec<&MonotoneMap> = family.components.iter().map(|f| f.alpha()).collect();
        let (sigma, deltas) = factorize_delta(m, &alphas);
        let k = sigma.target_size();

        let mut mid_children: Vec<Option<ObjectTerm>> = vec![None; k as usize];
        let mut minus_blocks: Vec<Vec<MorphismTerm>> = vec![Vec::new(); m as usize];
        let mut plus_blocks: Vec<Vec<Vec<MorphismTerm>>> =
            vec![vec![Vec::new(); k as usize]; family.components.len()];

        for i in 1..=m {
            if sigma.value(i - 1) == sigma.value(i) {
                continue; // no jump: every block here is empty by construction
            }
            let j = sigma.value(i);
            let gathered = self.gather(family, i);
            let inner_fac =
                self.inner
                    .factorize(&gathered)
                    .map_err(|e| TermError::InnerFactorization {
                        reason: format!("{e}"),
                    })?;
            minus_blocks[(i - 1) as usize] = vec![inner_fac.minus_part];
            mid_children[(j - 1) as usize] = Some(inner_fac.mid);
            // the gathered plus components split into one run per family
            // member; run s has length alpha_s(i) - alpha_s(i-1), which
            // equals delta_s(j) - delta_s(j-1)
            let runs = blocks::scatter(&inner_fac.plus_part.components, &alphas, i);
            for (s, run) in runs.into_iter().enumerate() {
                plus_blocks[s][(j - 1) as usize] = run;
            }
        }

        let mid = ObjectTerm::node(
            self.level(),
            mid_children
                .into_iter()
                .map(|c| {
                    c.ok_or(TermError::InnerFactorization {
                        reason: String::from("missing mid child"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?,
        )?;
        let minus_part = MorphismTerm::node(self.level(), sigma, minus_blocks)?;
        let plus_components = deltas
            .into_iter()
            .zip(plus_blocks)
            .map(|(delta, blocks)| MorphismTerm::node(self.level(), delta, blocks))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Factorization {
            minus_part,
            mid: mid.clone(),
            plus_part: MultiMorphism::new(mid, plus_components),
        })
    }
}

fn fill_children(
    level: u32,
    remaining: usize,
    budget: u32,
    pool: &[(ObjectTerm, u32)],
    chosen: &mut Vec<ObjectTerm>,
    out: &mut Vec<ObjectTerm>,
) {
    if remaining == 0 {
        out.push(ObjectTerm::node(level, chosen.clone()).unwrap());
        return;
    }
    for (child, degree) in pool {
        if *degree > budget {
            continue;
        }
        chosen.push(child.clone());
        fill_children(level, remaining - 1, budget - degree, pool, chosen, out);
        chosen.pop();
    }
}

/// The `k`-fold theta construction on the terminal category.
pub fn theta_tower(level: u32) -> Box<dyn ReedyOracle> {
    if level == 0 {
        Box::new(TerminalOracle)
    } else {
        Box::new(ThetaOracle::new(theta_tower(level - 1)))
    }
}

/// A tower over the simplex base: level 1 is the simplex oracle itself,
/// level `k >= 2` wraps it in `k - 1` theta applications.
pub fn theta_tower_over_delta(level: u32) -> Result<Box<dyn ReedyOracle>, TermError> {
    if level == 0 {
        return Err(TermError::LevelMismatch {
            expected: 1,
            found: 0,
        });
    }
    if level == 1 {
        Ok(Box::new(DeltaOracle))
    } else {
        Ok(Box::new(ThetaOracle::new(theta_tower_over_delta(
            level - 1,
        )?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::delta_object;
    use crate::parse::parse_object;

    fn theta1() -> ThetaOracle<TerminalOracle> {
        ThetaOracle::new(TerminalOracle)
    }

    fn theta2() -> ThetaOracle<ThetaOracle<TerminalOracle>> {
        ThetaOracle::new(theta1())
    }

    fn mm(values: &[u32], target: u32) -> MonotoneMap {
        MonotoneMap::new(values.to_vec(), target).unwrap()
    }

    #[test]
    fn object_enumeration_matches_expected_lists() {
        let t1 = theta1();
        let objs = t1.enumerate_objects(3);
        let rendered: Vec<_> = objs.iter().map(|o| o.render()).collect();
        assert_eq!(rendered, vec!["[0]()", "[1](*)", "[2](*,*)", "[3](*,*,*)"]);

        let t2 = theta2();
        let objs = t2.enumerate_objects(2);
        let rendered: Vec<_> = objs.iter().map(|o| o.render()).collect();
        assert_eq!(
            rendered,
            vec!["[0]()", "[1]([0]())", "[1]([1](*))", "[2]([0](),[0]())"]
        );
        for o in t2.enumerate_objects(4) {
            assert!(o.degree() <= 4);
            t2.check_object(&o).unwrap();
        }
    }

    #[test]
    fn enumeration_is_strictly_filtered_and_complete() {
        // closed-form oracle: level-2 objects of degree <= D are the
        // tuples (m; n_1..n_m) with m + sum n_i <= D, counted by
        // sum_m C(D, m) = 2^D
        let t2 = theta2();
        for bound in 0..=6u32 {
            let objs = t2.enumerate_objects(bound);
            assert_eq!(objs.len() as u64, 1u64 << bound, "bound {bound}");
            assert!(objs.iter().all(|o| o.degree() <= bound));
            // strictly sorted, hence duplicate-free
            assert!(objs.windows(2).all(|w| w[0] < w[1]));
        }
        // and the filtration is nested: each bound extends the previous
        for bound in 1..=5u32 {
            let smaller = t2.enumerate_objects(bound - 1);
            let larger = t2.enumerate_objects(bound);
            assert!(smaller.iter().all(|o| larger.binary_search(o).is_ok()));
        }
    }

    #[test]
    fn hom_sets_at_level_two() {
        let t2 = theta2();
        let o0 = parse_object("[0]()", 2).unwrap();
        let hom = t2.enumerate_hom(&o0, &o0).unwrap();
        assert_eq!(hom.len(), 1);
        assert!(hom[0].is_identity());

        // hom([1]([1](*)), [1]([1](*))): alpha (0,0) and (1,1) give one
        // morphism each, alpha (0,1) carries hom_delta([1],[1]) = 3.
        let c = parse_object("[1]([1](*))", 2).unwrap();
        let hom = t2.enumerate_hom(&c, &c).unwrap();
        assert_eq!(hom.len(), 5);
    }

    #[test]
    fn composition_matches_componentwise_evaluation() {
        // f: [1]([1](*)) -> [1]([2](*,*)) with alpha id, block (0,2)
        // g: [1]([2](*,*)) -> [1]([1](*)) with alpha id, block (0,1,1)
        // composite block: (0,1,1) . (0,2) = (0,1)
        let t2 = theta2();
        let f_block = crate::delta::wrap_map(&mm(&[0, 2], 2));
        let g_block = crate::delta::wrap_map(&mm(&[0, 1, 1], 1));
        let f = MorphismTerm::node(2, MonotoneMap::identity(1), vec![vec![f_block]]).unwrap();
        let g = MorphismTerm::node(2, MonotoneMap::identity(1), vec![vec![g_block]]).unwrap();
        let h = t2.compose(&g, &f).unwrap();
        assert_eq!(h.blocks()[0][0].alpha(), &mm(&[0, 1], 1));

        // composing with identities is the identity operation
        let c = parse_object("[1]([1](*))", 2).unwrap();
        let id = t2.identity(&c).unwrap();
        let f_dom = parse_object("[1]([1](*))", 2).unwrap();
        for m in t2.enumerate_hom(&f_dom, &c).unwrap() {
            assert_eq!(t2.compose(&id, &m).unwrap(), m);
        }
    }

    #[test]
    fn minus_membership() {
        let t2 = theta2();
        let c = parse_object("[1]([1](*))", 2).unwrap();
        assert!(t2.is_minus(&t2.identity(&c).unwrap()));

        // [1]([1](*)) -> [1]([0]()): alpha id, block the map [1] -> [0]
        let s = MorphismTerm::node(
            2,
            MonotoneMap::identity(1),
            vec![vec![crate::delta::wrap_map(&mm(&[0, 0], 0))]],
        )
        .unwrap();
        assert!(t2.is_minus(&s));

        // an injective alpha is never minus
        let d = MorphismTerm::node(
            2,
            mm(&[0, 2], 2),
            vec![vec![
                crate::delta::wrap_map(&mm(&[0, 0], 0)),
                crate::delta::wrap_map(&mm(&[0, 0], 0)),
            ]],
        )
        .unwrap();
        assert!(!t2.is_minus(&d));
    }

    #[test]
    fn empty_family_factorizes_to_the_degree_zero_object() {
        let t2 = theta2();
        let c = parse_object("[1]([0]())", 2).unwrap();
        assert_eq!(t2.degree(&c), 1);
        let fac = t2.factorize(&MultiMorphism::empty(c.clone())).unwrap();
        assert_eq!(fac.mid.render(), "[0]()");
        assert!(t2.is_minus(&fac.minus_part));
        assert!(fac.plus_part.components.is_empty());
        assert!(t2.is_plus_family(&fac.plus_part));
        fac.minus_part.check_against(&c, &fac.mid).unwrap();

        // the empty family is plus exactly at degree zero
        assert!(!t2.is_plus_family(&MultiMorphism::empty(c)));
        let zero = parse_object("[0]()", 2).unwrap();
        assert!(t2.is_plus_family(&MultiMorphism::empty(zero)));
    }

    #[test]
    fn factorization_composes_back_exhaustively_small() {
        let t2 = theta2();
        let objs = t2.enumerate_objects(2);
        for c in &objs {
            for d1 in &objs {
                for f1 in t2.enumerate_hom(c, d1).unwrap() {
                    let fam = MultiMorphism::new(c.clone(), vec![f1.clone()]);
                    let fac = t2.factorize(&fam).unwrap();
                    assert!(t2.is_minus(&fac.minus_part));
                    assert!(t2.is_plus_family(&fac.plus_part));
                    let back = t2
                        .compose(&fac.plus_part.components[0], &fac.minus_part)
                        .unwrap();
                    assert_eq!(back, f1);
                }
            }
        }
    }

    #[test]
    fn level_one_factorization_matches_delta() {
        let t1 = theta1();
        let d = DeltaOracle;
        let c = delta_object(2);
        let f = crate::delta::wrap_map(&mm(&[0, 0, 2], 2));
        let fam = MultiMorphism::new(c, vec![f]);
        let theta_fac = t1.factorize(&fam).unwrap();
        let delta_fac = d.factorize(&fam).unwrap();
        assert_eq!(theta_fac.minus_part, delta_fac.minus_part);
        assert_eq!(theta_fac.mid, delta_fac.mid);
        assert_eq!(theta_fac.plus_part, delta_fac.plus_part);
        assert_eq!(theta_fac.minus_part.alpha(), &mm(&[0, 0, 1], 1));
        assert_eq!(theta_fac.plus_part.components[0].alpha(), &mm(&[0, 2], 2));
    }

    #[test]
    fn towers_report_their_levels() {
        assert_eq!(theta_tower(0).level(), 0);
        assert_eq!(theta_tower(2).level(), 2);
        assert_eq!(theta_tower(2).describe(), "theta(theta(terminal))");
        assert_eq!(theta_tower_over_delta(1).unwrap().describe(), "delta");
        assert_eq!(theta_tower_over_delta(2).unwrap().level(), 2);
        assert!(theta_tower_over_delta(0).is_err());
    }
}
