//! Deliberately broken and deliberately non-elegant oracles, used as
//! negative controls: each verifier must reject the fixture that violates
//! exactly its axiom, with a concrete witness.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::delta::{delta_object, wrap_map, DeltaOracle};
use crate::error::TermError;
use crate::oracle::{Factorization, ReedyOracle};
use crate::term::{MonotoneMap, MorphismTerm, MultiMorphism, ObjectTerm};

/// The simplex oracle with one composition result overridden, breaking
/// associativity (and nothing else structural).
pub struct AssocMutantOracle {
    inner: DeltaOracle,
    victim_g: MorphismTerm,
    victim_f: MorphismTerm,
    replacement: MorphismTerm,
}

impl Default for AssocMutantOracle {
    fn default() -> Self {
        // true composite of (0): [0] -> [1] after (0,0): [1] -> [0] is the
        // constant (0,0); report (1,1) instead
        AssocMutantOracle {
            inner: DeltaOracle,
            victim_g: wrap_map(&MonotoneMap::new(vec![0], 1).unwrap()),
            victim_f: wrap_map(&MonotoneMap::new(vec![0, 0], 0).unwrap()),
            replacement: wrap_map(&MonotoneMap::new(vec![1, 1], 1).unwrap()),
        }
    }
}

impl ReedyOracle for AssocMutantOracle {
    fn level(&self) -> u32 {
        1
    }
    fn describe(&self) -> String {
        String::from("delta[assoc-mutant]")
    }
    fn check_object(&self, obj: &ObjectTerm) -> Result<(), TermError> {
        self.inner.check_object(obj)
    }
    fn enumerate_objects(&self, max_degree: u32) -> Vec<ObjectTerm> {
        self.inner.enumerate_objects(max_degree)
    }
    fn enumerate_hom(
        &self,
        dom: &ObjectTerm,
        cod: &ObjectTerm,
    ) -> Result<Vec<MorphismTerm>, TermError> {
        self.inner.enumerate_hom(dom, cod)
    }
    fn identity(&self, obj: &ObjectTerm) -> Result<MorphismTerm, TermError> {
        self.inner.identity(obj)
    }
    fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError> {
        if g == &self.victim_g && f == &self.victim_f {
            return Ok(self.replacement.clone());
        }
        self.inner.compose(g, f)
    }
    fn is_minus(&self, f: &MorphismTerm) -> bool {
        self.inner.is_minus(f)
    }
    fn is_plus_family(&self, family: &MultiMorphism) -> bool {
        self.inner.is_plus_family(family)
    }
    fn factorize(&self, family: &MultiMorphism) -> Result<Factorization, TermError> {
        self.inner.factorize(family)
    }
}

/// The simplex oracle with one injection added to the inverse class: the
/// factorization of that map stops being unique (and the degree axiom for
/// inverse maps breaks with it).
pub struct FactorMutantOracle {
    inner: DeltaOracle,
    extra_minus: MorphismTerm,
}

impl Default for FactorMutantOracle {
    fn default() -> Self {
        FactorMutantOracle {
            inner: DeltaOracle,
            // the coface (0): [0] -> [1]
            extra_minus: wrap_map(&MonotoneMap::new(vec![0], 1).unwrap()),
        }
    }
}

impl ReedyOracle for FactorMutantOracle {
    fn level(&self) -> u32 {
        1
    }
    fn describe(&self) -> String {
        String::from("delta[factor-mutant]")
    }
    fn check_object(&self, obj: &ObjectTerm) -> Result<(), TermError> {
        self.inner.check_object(obj)
    }
    fn enumerate_objects(&self, max_degree: u32) -> Vec<ObjectTerm> {
        self.inner.enumerate_objects(max_degree)
    }
    fn enumerate_hom(
        &self,
        dom: &ObjectTerm,
        cod: &ObjectTerm,
    ) -> Result<Vec<MorphismTerm>, TermError> {
        self.inner.enumerate_hom(dom, cod)
    }
    fn identity(&self, obj: &ObjectTerm) -> Result<MorphismTerm, TermError> {
        self.inner.identity(obj)
    }
    fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError> {
        self.inner.compose(g, f)
    }
    fn is_minus(&self, f: &MorphismTerm) -> bool {
        f == &self.extra_minus || self.inner.is_minus(f)
    }
    fn is_plus_family(&self, family: &MultiMorphism) -> bool {
        self.inner.is_plus_family(family)
    }
    fn factorize(&self, family: &MultiMorphism) -> Result<Factorization, TermError> {
        self.inner.factorize(family)
    }
}

/// A two-object multi-Reedy category that is not elegant: one inverse map
/// `sigma: a -> b` with no section (`hom(b, a)` is empty).  The direct
/// multicategory class consists of the families at `b` together with the
/// families at `a` containing at least one identity; all multi-Reedy
/// axioms hold, but both EZ axioms and the strong-pushout property fail.
pub struct NonElegantOracle {
    a: ObjectTerm,
    b: ObjectTerm,
    sigma: MorphismTerm,
}

impl Default for NonElegantOracle {
    fn default() -> Self {
        NonElegantOracle {
            a: delta_object(1),
            b: delta_object(0),
            sigma: wrap_map(&MonotoneMap::new(vec![0, 0], 0).unwrap()),
        }
    }
}

impl NonElegantOracle {
    fn id_a(&self) -> MorphismTerm {
        MorphismTerm::identity_of(&self.a)
    }
    fn id_b(&self) -> MorphismTerm {
        MorphismTerm::identity_of(&self.b)
    }
}

impl ReedyOracle for NonElegantOracle {
    fn level(&self) -> u32 {
        1
    }
    fn describe(&self) -> String {
        String::from("two-object[non-elegant]")
    }
    fn check_object(&self, obj: &ObjectTerm) -> Result<(), TermError> {
        if obj == &self.a || obj == &self.b {
            Ok(())
        } else {
            Err(TermError::UnknownObject {
                rendered: obj.render(),
            })
        }
    }
    fn enumerate_objects(&self, max_degree: u32) -> Vec<ObjectTerm> {
        if max_degree == 0 {
            vec![self.b.clone()]
        } else {
            vec![self.b.clone(), self.a.clone()]
        }
    }
    fn enumerate_hom(
        &self,
        dom: &ObjectTerm,
        cod: &ObjectTerm,
    ) -> Result<Vec<MorphismTerm>, TermError> {
        self.check_object(dom)?;
        self.check_object(cod)?;
        Ok(match (dom == &self.a, cod == &self.a) {
            (true, true) => vec![self.id_a()],
            (true, false) => vec![self.sigma.clone()],
            (false, true) => Vec::new(),
            (false, false) => vec![self.id_b()],
        })
    }
    fn identity(&self, obj: &ObjectTerm) -> Result<MorphismTerm, TermError> {
        self.check_object(obj)?;
        Ok(MorphismTerm::identity_of(obj))
    }
    fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError> {
        // the only composites: id.id, sigma.id_a, id_b.sigma
        if f.is_identity() {
            return Ok(g.clone());
        }
        if g.is_identity() {
            return Ok(f.clone());
        }
        Err(TermError::ComposeMismatch {
            expected: 0,
            found: 1,
        })
    }
    fn is_minus(&self, _f: &MorphismTerm) -> bool {
        true
    }
    fn is_plus_family(&self, family: &MultiMorphism) -> bool {
        if family.domain == self.b {
            return true;
        }
        family.components.iter().any(|f| f.is_identity())
    }
    fn factorize(&self, family: &MultiMorphism) -> Result<Factorization, TermError> {
        self.check_object(&family.domain)?;
        if self.is_plus_family(family) {
            return Ok(Factorization {
                minus_part: MorphismTerm::identity_of(&family.domain),
                mid: family.domain.clone(),
                plus_part: family.clone(),
            });
        }
        // domain a, every component sigma: collapse through sigma
        let plus = MultiMorphism::new(
            self.b.clone(),
            family.components.iter().map(|_| self.id_b()).collect(),
        );
        Ok(Factorization {
            minus_part: self.sigma.clone(),
            mid: self.b.clone(),
            plus_part: plus,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{verify_category, verify_elegance_sp, verify_ez, verify_multi_reedy};

    #[test]
    fn assoc_mutant_fails_category_laws_with_witness() {
        let report = verify_category(&AssocMutantOracle::default(), 2).unwrap();
        assert!(!report.passed());
        let assoc = report
            .items
            .iter()
            .find(|i| i.name == "associativity")
            .unwrap();
        assert!(assoc.violations > 0);
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn factor_mutant_fails_uniqueness_with_witness() {
        let report = verify_multi_reedy(&FactorMutantOracle::default(), 2, 2).unwrap();
        assert!(!report.passed());
        let unique = report
            .items
            .iter()
            .find(|i| i.name == "factorization_unique")
            .unwrap();
        assert!(unique.violations > 0);
        assert!(report
            .witnesses
            .iter()
            .any(|w| w.item == "factorization_unique"));
        // the mutant also breaks the degree axiom for inverse maps
        let degree = report
            .items
            .iter()
            .find(|i| i.name == "minus_degree_monotone")
            .unwrap();
        assert!(degree.violations > 0);
    }

    #[test]
    fn non_elegant_fixture_is_multi_reedy_but_fails_ez_and_sp() {
        let fixture = NonElegantOracle::default();
        let mr = verify_multi_reedy(&fixture, 2, 2).unwrap();
        assert!(mr.passed(), "{mr}");
        let cat = verify_category(&fixture, 2).unwrap();
        assert!(cat.passed(), "{cat}");

        let ez = verify_ez(&fixture, 2).unwrap();
        assert!(!ez.passed());
        assert!(ez
            .witnesses
            .iter()
            .any(|w| w.item == "ez1_sections_nonempty"));
        // the hom-nonemptiness hypothesis flag trips as well
        let hypothesis = ez
            .items
            .iter()
            .find(|i| i.name == "hypothesis_homs_nonempty")
            .unwrap();
        assert!(hypothesis.advisory && hypothesis.violations > 0);

        let sp = verify_elegance_sp(&fixture, 2).unwrap();
        assert!(!sp.passed());
        let sp_item = sp
            .items
            .iter()
            .find(|i| i.name == "sp_square_exists")
            .unwrap();
        let e_item = sp
            .items
            .iter()
            .find(|i| i.name == "e_unique_decomposition")
            .unwrap();
        assert!(sp_item.violations > 0);
        assert!(e_item.violations > 0);
        // both routes fail, so the agreement item passes: the iff holds
        let agree = sp
            .items
            .iter()
            .find(|i| i.name == "sp_agrees_with_pointwise_e")
            .unwrap();
        assert_eq!(agree.violations, 0);
    }
}
