//! The simplex category as a multi-Reedy oracle, implemented directly on
//! monotone maps: surjections form the inverse class, jointly monic
//! families the direct multicategory class, and factorization collapses
//! the intervals a family cannot separate.  This is independent of the
//! theta construction and serves as the base case and as a cross-check
//! oracle for it.
//!
//! Objects are carried as level-1 terms `[n](*,...,*)` so that the shared
//! verification and presheaf machinery (and the theta construction itself)
//! can run over this oracle unchanged.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::TermError;
use crate::oracle::{Factorization, ReedyOracle};
use crate::term::{MonotoneMap, MorphismTerm, MultiMorphism, ObjectTerm};

/// The object `[n]` as a level-1 term.
pub fn delta_object(n: u32) -> ObjectTerm {
    ObjectTerm::node(1, vec![ObjectTerm::star(); n as usize]).unwrap()
}

/// Wrap a monotone map as a level-1 morphism term (blocks are forced:
/// every slot carries the trivial morphism).
pub fn wrap_map(alpha: &MonotoneMap) -> MorphismTerm {
    let blocks = (0..alpha.source_size())
        .map(|i| vec![MorphismTerm::trivial(); (alpha.value(i + 1) - alpha.value(i)) as usize])
        .collect();
    MorphismTerm::node(1, alpha.clone(), blocks).unwrap()
}

/// All monotone maps `[m] -> [n]`, in lexicographic order on value lists.
pub fn enumerate_monotone(m: u32, n: u32) -> Vec<MonotoneMap> {
    let len = (m + 1) as usize;
    let mut out = Vec::new();
    let mut values = vec![0u32; len];
    loop {
        out.push(MonotoneMap::new(values.clone(), n).unwrap());
        // next weakly increasing sequence in lex order
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if values[i] < n {
                values[i] += 1;
                for j in i + 1..len {
                    values[j] = values[i];
                }
                break;
            }
        }
    }
}

/// `binomial(m + n + 1, m + 1)`: the size of `hom([m], [n])`, used as a
/// closed-form cross-check against enumeration.
pub fn hom_count_delta(m: u32, n: u32) -> u64 {
    binomial(u64::from(m) + u64::from(n) + 1, u64::from(m) + 1)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u64 = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// `g . f` on monotone maps.
pub fn compose_delta(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap, TermError> {
    MonotoneMap::compose(g, f)
}

/// Inverse-class membership: surjectivity.
pub fn is_minus_delta(f: &MonotoneMap) -> bool {
    f.is_surjective()
}

/// Joint monicity of a family of monotone maps out of `[m]`: the pointwise
/// product map `i -> (alpha_1(i), ..., alpha_u(i))` is injective.  Maps out
/// of `[m]` are determined by their values on points and points are
/// separated by maps from `[0]`, so this is equivalent to the family being
/// jointly monic in the category.  For the empty family the product map
/// collapses everything, so it is jointly monic exactly when `m = 0`.
pub fn is_plus_family_delta(source_size: u32, alphas: &[&MonotoneMap]) -> bool {
    // Monotone coordinates make consecutive distinctness equivalent to
    // injectivity of the product map.
    for i in 0..source_size {
        if alphas.iter().all(|a| a.value(i) == a.value(i + 1)) {
            return false;
        }
    }
    true
}

/// The minus-then-plus factorization of a family `(alpha_s: [m] -> [n_s])`:
/// the surjection collapses `i ~ i-1` whenever no component separates
/// them; the direct parts are the induced maps on the quotient.  No search
/// is involved; uniqueness is asserted by the verifier.
pub fn factorize_delta(
    source_size: u32,
    alphas: &[&MonotoneMap],
) -> (MonotoneMap, Vec<MonotoneMap>) {
    let mut sigma = Vec::with_capacity(source_size as usize + 1);
    sigma.push(0u32);
    let mut k = 0u32;
    for i in 1..=source_size {
        if !alphas.iter().all(|a| a.value(i) == a.value(i - 1)) {
            k += 1;
        }
        sigma.push(k);
    }
    // delta_s(sigma(i)) = alpha_s(i); well-defined because sigma only
    // collapses indices every alpha_s collapses.
    let deltas = alphas
        .iter()
        .map(|a| {
            let mut values = vec![0u32; k as usize + 1];
            for i in 0..=source_size {
                values[sigma[i as usize] as usize] = a.value(i);
            }
            MonotoneMap::new(values, a.target_size()).unwrap()
        })
        .collect();
    (MonotoneMap::new(sigma, k).unwrap(), deltas)
}

/// The simplex category, truncation-agnostic; `deg([n]) = n`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DeltaOracle;

impl DeltaOracle {
    fn alpha_of<'a>(&self, f: &'a MorphismTerm) -> Result<&'a MonotoneMap, TermError> {
        if f.level() != 1 {
            return Err(TermError::LevelMismatch {
                expected: 1,
                found: f.level(),
            });
        }
        Ok(f.alpha())
    }
}

impl ReedyOracle for DeltaOracle {
    fn level(&self) -> u32 {
        1
    }

    fn describe(&self) -> String {
        String::from("delta")
    }

    fn check_object(&self, obj: &ObjectTerm) -> Result<(), TermError> {
        if obj.level() != 1 {
            return Err(TermError::LevelMismatch {
                expected: 1,
                found: obj.level(),
            });
        }
        Ok(())
    }

    fn enumerate_objects(&self, max_degree: u32) -> Vec<ObjectTerm> {
        (0..=max_degree).map(delta_object).collect()
    }

    fn enumerate_hom(
        &self,
        dom: &ObjectTerm,
        cod: &ObjectTerm,
    ) -> Result<Vec<MorphismTerm>, TermError> {
        self.check_object(dom)?;
        self.check_object(cod)?;
        Ok(enumerate_monotone(dom.arity() as u32, cod.arity() as u32)
            .iter()
            .map(wrap_map)
            .collect())
    }

    fn identity(&self, obj: &ObjectTerm) -> Result<MorphismTerm, TermError> {
        self.check_object(obj)?;
        Ok(MorphismTerm::identity_of(obj))
    }

    fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError> {
        let alpha = compose_delta(self.alpha_of(g)?, self.alpha_of(f)?)?;
        Ok(wrap_map(&alpha))
    }

    fn is_minus(&self, f: &MorphismTerm) -> bool {
        self.alpha_of(f).map(is_minus_delta).unwrap_or(false)
    }

    fn is_plus_family(&self, family: &MultiMorphism) -> bool {
        let m = family.domain.arity() as u32;
        let alphas: Vec<&MonotoneMap> = match family
            .components
            .iter()
            .map(|f| self.alpha_of(f))
            .collect::<Result<_, _>>()
        {
            Ok(a) => a,
            Err(_) => return false,
        };
        if alphas.iter().any(|a| a.source_size() != m) {
            return false;
        }
        is_plus_family_delta(m, &alphas)
    }

    fn factorize(&self, family: &MultiMorphism) -> Result<Factorization, TermError> {
        self.check_object(&family.domain)?;
        let m = family.domain.arity() as u32;
        let alphas: Vec<&MonotoneMap> = family
            .components
            .iter()
            .map(|f| self.alpha_of(f))
            .collect::<Result<_, _>>()?;
        if alphas.iter().any(|a| a.source_size() != m) {
            return Err(TermError::DomainMismatch);
        }
        let (sigma, deltas) = factorize_delta(m, &alphas);
        let mid = delta_object(sigma.target_size());
        Ok(Factorization {
            minus_part: wrap_map(&sigma),
            mid: mid.clone(),
            plus_part: MultiMorphism::new(mid, deltas.iter().map(wrap_map).collect()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mm(values: &[u32], target: u32) -> MonotoneMap {
        MonotoneMap::new(values.to_vec(), target).unwrap()
    }

    #[test]
    fn composition_is_pointwise() {
        let g = mm(&[0, 1], 1);
        let f = mm(&[0, 0, 1], 1);
        assert_eq!(compose_delta(&g, &f).unwrap(), mm(&[0, 0, 1], 1));

        let g = mm(&[0, 2], 2);
        let f = mm(&[0, 1, 1], 1);
        assert_eq!(compose_delta(&g, &f).unwrap(), mm(&[0, 2, 2], 2));

        let id = MonotoneMap::identity(1);
        assert_eq!(
            compose_delta(&id, &mm(&[0, 0, 1], 1)).unwrap(),
            mm(&[0, 0, 1], 1)
        );
        assert!(compose_delta(&mm(&[0, 1], 1), &mm(&[0, 2], 2)).is_err());
    }

    #[test]
    fn minus_is_surjectivity() {
        assert!(is_minus_delta(&mm(&[0, 0, 1], 1)));
        assert!(!is_minus_delta(&mm(&[0, 2], 2)));
        assert!(is_minus_delta(&MonotoneMap::identity(3)));
    }

    #[test]
    fn joint_monicity_examples() {
        let a1 = mm(&[0, 1, 1], 1);
        let a2 = mm(&[0, 0, 1], 1);
        assert!(is_plus_family_delta(2, &[&a1, &a2]));

        let c = mm(&[0, 0], 0);
        assert!(!is_plus_family_delta(1, &[&c, &c]));

        assert!(is_plus_family_delta(0, &[]));
        assert!(!is_plus_family_delta(1, &[]));
    }

    #[test]
    fn factorization_examples() {
        // single map (0,0,2): sigma (0,0,1), delta (0,2)
        let a = mm(&[0, 0, 2], 2);
        let (sigma, deltas) = factorize_delta(2, &[&a]);
        assert_eq!(sigma, mm(&[0, 0, 1], 1));
        assert_eq!(deltas, vec![mm(&[0, 2], 2)]);

        // empty family at [2]: collapse everything
        let (sigma, deltas) = factorize_delta(2, &[]);
        assert_eq!(sigma, mm(&[0, 0, 0], 0));
        assert!(deltas.is_empty());

        // already monic family: sigma is the identity
        let b1 = mm(&[0, 1], 2);
        let b2 = mm(&[1, 1], 1);
        let (sigma, deltas) = factorize_delta(1, &[&b1, &b2]);
        assert!(sigma.is_identity());
        assert_eq!(deltas, vec![b1, b2]);
    }

    #[test]
    fn hom_counts_match_enumeration() {
        assert_eq!(hom_count_delta(1, 1), 3);
        assert_eq!(hom_count_delta(2, 1), 4);
        for n in 0..5 {
            assert_eq!(hom_count_delta(0, n), u64::from(n) + 1);
        }
        for m in 0..=4u32 {
            for n in 0..=4u32 {
                assert_eq!(
                    enumerate_monotone(m, n).len() as u64,
                    hom_count_delta(m, n),
                    "({m},{n})"
                );
            }
        }
    }

    #[test]
    fn hom_enumeration_is_sorted_and_duplicate_free() {
        for m in 0..=4u32 {
            for n in 0..=4u32 {
                let maps = enumerate_monotone(m, n);
                for w in maps.windows(2) {
                    assert!(w[0] < w[1]);
                }
            }
        }
    }

    /// Brute-force uniqueness of the factorization at desk scale: every
    /// candidate (sigma surjective, induced deltas) is tried directly.
    #[test]
    fn factorization_is_unique_by_brute_force() {
        let bound = 3u32;
        for m in 0..=bound {
            let mut families: Vec<Vec<MonotoneMap>> = vec![Vec::new()];
            for a in enumerate_monotone(m, 2) {
                families.push(vec![a.clone()]);
                for b in enumerate_monotone(m, 3) {
                    families.push(vec![a.clone(), b]);
                }
            }
            for family in families {
                let refs: Vec<&MonotoneMap> = family.iter().collect();
                let (sigma, deltas) = factorize_delta(m, &refs);
                let delta_refs: Vec<&MonotoneMap> = deltas.iter().collect();
                assert!(sigma.is_surjective());
                assert!(is_plus_family_delta(sigma.target_size(), &delta_refs));
                for (a, d) in family.iter().zip(&deltas) {
                    assert_eq!(&compose_delta(d, &sigma).unwrap(), a);
                }
                // count all valid candidates
                let mut count = 0;
                for k in 0..=m {
                    for cand in enumerate_monotone(m, k) {
                        if !cand.is_surjective() {
                            continue;
                        }
                        // a valid plus part is forced by the surjection
                        let mut induced = Vec::new();
                        let mut ok = true;
                        for a in &family {
                            let mut values = vec![0u32; k as usize + 1];
                            for i in 0..=m {
                                values[cand.value(i) as usize] = a.value(i);
                            }
                            match MonotoneMap::new(values, a.target_size()) {
                                Ok(d) => {
                                    if &compose_delta(&d, &cand).unwrap() != a {
                                        ok = false;
                                        break;
                                    }
                                    induced.push(d);
                                }
                                Err(_) => {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        let induced_refs: Vec<&MonotoneMap> = induced.iter().collect();
                        if ok && is_plus_family_delta(k, &induced_refs) {
                            count += 1;
                        }
                    }
                }
                assert_eq!(count, 1, "family {family:?} out of [{m}]");
            }
        }
    }

    proptest! {
        #[test]
        fn factorization_composes_back(values1 in proptest::collection::vec(0u32..5, 1..6),
                                       values2 in proptest::collection::vec(0u32..4, 1..6)) {
            let mut v1 = values1;
            let mut v2 = values2;
            v1.sort_unstable();
            v2.sort_unstable();
            v2.truncate(v1.len());
            while v2.len() < v1.len() {
                let last = *v2.last().unwrap();
                v2.push(last);
            }
            let m = (v1.len() - 1) as u32;
            let a1 = MonotoneMap::new(v1, 4).unwrap();
            let a2 = MonotoneMap::new(v2, 3).unwrap();
            let (sigma, deltas) = factorize_delta(m, &[&a1, &a2]);
            prop_assert!(sigma.is_surjective());
            prop_assert_eq!(compose_delta(&deltas[0], &sigma).unwrap(), a1);
            prop_assert_eq!(compose_delta(&deltas[1], &sigma).unwrap(), a2);
            let refs: Vec<&MonotoneMap> = deltas.iter().collect();
            prop_assert!(is_plus_family_delta(sigma.target_size(), &refs));
        }
    }

    #[test]
    fn oracle_surface_agrees_with_raw_maps() {
        let d = DeltaOracle;
        let c1 = delta_object(1);
        // hom([1],[1]) in lex order: (0,0), (0,1), (1,1)
        let hom = d.enumerate_hom(&c1, &c1).unwrap();
        assert_eq!(hom.len(), 3);
        let minus: Vec<bool> = hom.iter().map(|f| d.is_minus(f)).collect();
        assert_eq!(minus, vec![false, true, false]);

        let fam = MultiMorphism::new(c1.clone(), vec![hom[0].clone()]);
        let fac = d.factorize(&fam).unwrap();
        assert_eq!(fac.mid, delta_object(0));
        assert!(d.is_minus(&fac.minus_part));
        assert!(d.is_plus_family(&fac.plus_part));
        assert_eq!(
            d.compose(&fac.plus_part.components[0], &fac.minus_part)
                .unwrap(),
            hom[0]
        );
    }
}
