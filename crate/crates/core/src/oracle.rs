//! The oracle interface every category implementation satisfies, plus the
//! terminal base oracle and generic utilities (sections, object
//! enumeration for theta towers).
//!
//! An oracle presents a degree-truncatable multi-Reedy category on the
//! shared term language: it enumerates objects up to a degree bound,
//! enumerates finite hom-sets, composes, and decides the inverse class on
//! morphisms and the direct class on multimorphisms, together with the
//! minus-then-plus factorization.  All operations are pure and
//! deterministic; implementations hold no mutable state.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::TermError;
use crate::term::{MorphismTerm, MultiMorphism, ObjectTerm};

/// Result of the unique minus-then-plus factorization of a multimorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// The inverse-class morphism out of the family's domain.
    pub minus_part: MorphismTerm,
    /// Codomain of `minus_part` and domain of `plus_part`.
    pub mid: ObjectTerm,
    /// The direct-class multimorphism; its components compose with
    /// `minus_part` to give back the original family.
    pub plus_part: MultiMorphism,
}

pub trait ReedyOracle: Send + Sync {
    /// Level of the terms this oracle speaks about.
    fn level(&self) -> u32;

    /// Human-readable name used in reports (`"delta"`, `"theta(terminal)"`).
    fn describe(&self) -> String;

    /// Degree of an object; the default is the intrinsic term degree.
    fn degree(&self, obj: &ObjectTerm) -> u32 {
        obj.degree()
    }

    /// Whether `obj` is an object of this oracle.
    fn check_object(&self, obj: &ObjectTerm) -> Result<(), TermError>;

    /// All objects of degree `<= max_degree`, in canonical order, without
    /// duplicates.
    fn enumerate_objects(&self, max_degree: u32) -> Vec<ObjectTerm>;

    /// The complete hom-set `dom -> cod`, in canonical order.
    fn enumerate_hom(
        &self,
        dom: &ObjectTerm,
        cod: &ObjectTerm,
    ) -> Result<Vec<MorphismTerm>, TermError>;

    fn identity(&self, obj: &ObjectTerm) -> Result<MorphismTerm, TermError>;

    /// `g . f` (apply `f` first).
    fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError>;

    /// Membership in the inverse class.
    fn is_minus(&self, f: &MorphismTerm) -> bool;

    /// Membership of a whole family in the direct multicategory class.
    fn is_plus_family(&self, family: &MultiMorphism) -> bool;

    /// The unique factorization `family = plus . minus`.
    fn factorize(&self, family: &MultiMorphism) -> Result<Factorization, TermError>;
}

impl<T: ReedyOracle + ?Sized> ReedyOracle for &T {
    fn level(&self) -> u32 {
        (**self).level()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
    fn degree(&self, obj: &ObjectTerm) -> u32 {
        (**self).degree(obj)
    }
    fn check_object(&self, obj: &ObjectTerm) -> Result<(), TermError> {
        (**self).check_object(obj)
    }
    fn enumerate_objects(&self, max_degree: u32) -> Vec<ObjectTerm> {
        (**self).enumerate_objects(max_degree)
    }
    fn enumerate_hom(
        &self,
        dom: &ObjectTerm,
        cod: &ObjectTerm,
    ) -> Result<Vec<MorphismTerm>, TermError> {
        (**self).enumerate_hom(dom, cod)
    }
    fn identity(&self, obj: &ObjectTerm) -> Result<MorphismTerm, TermError> {
        (**self).identity(obj)
    }
    fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError> {
        (**self).compose(g, f)
    }
    fn is_minus(&self, f: &MorphismTerm) -> bool {
        (**self).is_minus(f)
    }
    fn is_plus_family(&self, family: &MultiMorphism) -> bool {
        (**self).is_plus_family(family)
    }
    fn factorize(&self, family: &MultiMorphism) -> Result<Factorization, TermError> {
        (**self).factorize(family)
    }
}

impl<T: ReedyOracle + ?Sized> ReedyOracle for Box<T> {
    fn level(&self) -> u32 {
        (**self).level()
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
    fn degree(&self, obj: &ObjectTerm) -> u32 {
        (**self).degree(obj)
    }
    fn check_object(&self, obj: &ObjectTerm) -> Result<(), TermError> {
        (**self).check_object(obj)
    }
    fn enumerate_objects(&self, max_degree: u32) -> Vec<ObjectTerm> {
        (**self).enumerate_objects(max_degree)
    }
    fn enumerate_hom(
        &self,
        dom: &ObjectTerm,
        cod: &ObjectTerm,
    ) -> Result<Vec<MorphismTerm>, TermError> {
        (**self).enumerate_hom(dom, cod)
    }
    fn identity(&self, obj: &ObjectTerm) -> Result<MorphismTerm, TermError> {
        (**self).identity(obj)
    }
    fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError> {
        (**self).compose(g, f)
    }
    fn is_minus(&self, f: &MorphismTerm) -> bool {
        (**self).is_minus(f)
    }
    fn is_plus_family(&self, family: &MultiMorphism) -> bool {
        (**self).is_plus_family(family)
    }
    fn factorize(&self, family: &MultiMorphism) -> Result<Factorization, TermError> {
        (**self).factorize(family)
    }
}

/// The terminal category: one object `*` of degree 0, one morphism, with
/// the whole category as inverse class and the whole multicategory as
/// direct class.
#[derive(Clone, Copy, Debug, Default)]
pub struct TerminalOracle;

impl ReedyOracle for TerminalOracle {
    fn level(&self) -> u32 {
        0
    }

    fn describe(&self) -> String {
        String::from("terminal")
    }

    fn check_object(&self, obj: &ObjectTerm) -> Result<(), TermError> {
        if obj.level() != 0 {
            return Err(TermError::LevelMismatch {
                expected: 0,
                found: obj.level(),
            });
        }
        Ok(())
    }

    fn enumerate_objects(&self, _max_degree: u32) -> Vec<ObjectTerm> {
        vec![ObjectTerm::star()]
    }

    fn enumerate_hom(
        &self,
        dom: &ObjectTerm,
        cod: &ObjectTerm,
    ) -> Result<Vec<MorphismTerm>, TermError> {
        self.check_object(dom)?;
        self.check_object(cod)?;
        Ok(vec![MorphismTerm::trivial()])
    }

    fn identity(&self, obj: &ObjectTerm) -> Result<MorphismTerm, TermError> {
        self.check_object(obj)?;
        Ok(MorphismTerm::trivial())
    }

    fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError> {
        for part in [g, f] {
            if !part.is_trivial() {
                return Err(TermError::LevelMismatch {
                    expected: 0,
                    found: part.level(),
                });
            }
        }
        Ok(MorphismTerm::trivial())
    }

    fn is_minus(&self, _f: &MorphismTerm) -> bool {
        true
    }

    fn is_plus_family(&self, _family: &MultiMorphism) -> bool {
        true
    }

    fn factorize(&self, family: &MultiMorphism) -> Result<Factorization, TermError> {
        self.check_object(&family.domain)?;
        Ok(Factorization {
            minus_part: MorphismTerm::trivial(),
            mid: ObjectTerm::star(),
            plus_part: family.clone(),
        })
    }
}

/// All sections of `f: dom -> cod`, i.e. every `s: cod -> dom` with
/// `f . s = identity`.  Brute force over the full hom-set.
pub fn sections(
    oracle: &dyn ReedyOracle,
    f: &MorphismTerm,
    dom: &ObjectTerm,
    cod: &ObjectTerm,
) -> Result<Vec<MorphismTerm>, TermError> {
    f.check_against(dom, cod)?;
    let id = oracle.identity(cod)?;
    let mut out = Vec::new();
    for candidate in oracle.enumerate_hom(cod, dom)? {
        if oracle.compose(f, &candidate)? == id {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// Objects of the `level`-fold theta construction on the terminal
/// category, up to the degree bound.  Convenience wrapper used by the CLI
/// and tests; equivalent to enumerating through a theta-tower oracle.
pub fn enumerate_objects(level: u32, max_degree: u32) -> Vec<ObjectTerm> {
    crate::theta::theta_tower(level).enumerate_objects(max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_is_a_one_point_category() {
        let t = TerminalOracle;
        assert_eq!(t.enumerate_objects(7), vec![ObjectTerm::star()]);
        let star = ObjectTerm::star();
        let hom = t.enumerate_hom(&star, &star).unwrap();
        assert_eq!(hom.len(), 1);
        assert!(t.is_minus(&hom[0]));
        let fac = t
            .factorize(&MultiMorphism::new(star.clone(), hom.clone()))
            .unwrap();
        assert!(fac.minus_part.is_identity());
        assert_eq!(fac.plus_part.components.len(), 1);
    }

    #[test]
    fn sections_of_identity() {
        let t = TerminalOracle;
        let star = ObjectTerm::star();
        let id = t.identity(&star).unwrap();
        let secs = sections(&t, &id, &star, &star).unwrap();
        assert_eq!(secs, vec![MorphismTerm::trivial()]);
    }

    #[test]
    fn sections_of_the_interval_collapse() {
        use crate::delta::{delta_object, wrap_map, DeltaOracle};
        use crate::term::MonotoneMap;
        let d = DeltaOracle;
        let c = delta_object(1);
        let e = delta_object(0);
        let s0 = wrap_map(&MonotoneMap::new(vec![0, 0], 0).unwrap());
        let secs = sections(&d, &s0, &c, &e).unwrap();
        // both vertices of the interval section the collapse
        assert_eq!(secs.len(), 2);
        for beta in &secs {
            assert!(d.compose(&s0, beta).unwrap().is_identity());
        }
    }
}
