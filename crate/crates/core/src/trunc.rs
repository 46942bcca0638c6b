//! A degree truncation of an oracle: the finite working context every
//! sweep and presheaf construction runs over.  Objects, degrees, hom-sets,
//! and reverse indices are tabulated once; the underlying categories are
//! infinite, but the inverse structure never raises degree, so a
//! truncation is closed under everything the checks consult.

use alloc::vec::Vec;

use alloc::collections::BTreeMap;

use crate::error::TermError;
use crate::oracle::ReedyOracle;
use crate::term::{MorphismTerm, ObjectTerm};

pub struct Truncation<'a> {
    oracle: &'a dyn ReedyOracle,
    max_degree: u32,
    objects: Vec<ObjectTerm>,
    degrees: Vec<u32>,
    object_index: BTreeMap<ObjectTerm, usize>,
    /// `homs[c][d]` is the canonical list of morphisms `c -> d`.
    homs: Vec<Vec<Vec<MorphismTerm>>>,
    hom_index: Vec<Vec<BTreeMap<MorphismTerm, usize>>>,
    /// `minus[c][d][f]` caches inverse-class membership.
    minus: Vec<Vec<Vec<bool>>>,
    identity: Vec<usize>,
}

impl<'a> Truncation<'a> {
    pub fn build(oracle: &'a dyn ReedyOracle, max_degree: u32) -> Result<Self, TermError> {
        let objects = oracle.enumerate_objects(max_degree);
        let degrees: Vec<u32> = objects.iter().map(|o| oracle.degree(o)).collect();
        let object_index: BTreeMap<ObjectTerm, usize> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), i))
            .collect();
        let n = objects.len();
        let mut homs = Vec::with_capacity(n);
        let mut hom_index = Vec::with_capacity(n);
        let mut minus = Vec::with_capacity(n);
        for c in &objects {
            let mut row = Vec::with_capacity(n);
            let mut row_index = Vec::with_capacity(n);
            let mut row_minus = Vec::with_capacity(n);
            for d in &objects {
                let hom = oracle.enumerate_hom(c, d)?;
                let index: BTreeMap<MorphismTerm, usize> = hom
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (f.clone(), i))
                    .collect();
                let minus_flags = hom.iter().map(|f| oracle.is_minus(f)).collect();
                row.push(hom);
                row_index.push(index);
                row_minus.push(minus_flags);
            }
            homs.push(row);
            hom_index.push(row_index);
            minus.push(row_minus);
        }
        let mut identity = Vec::with_capacity(n);
        for (i, c) in objects.iter().enumerate() {
            let id = oracle.identity(c)?;
            let idx = hom_index[i][i]
                .get(&id)
                .copied()
                .ok_or(TermError::UnknownMorphism {
                    rendered: id.render_name(),
                })?;
            identity.push(idx);
        }
        Ok(Truncation {
            oracle,
            max_degree,
            objects,
            degrees,
            object_index,
            homs,
            hom_index,
            minus,
            identity,
        })
    }

    pub fn oracle(&self) -> &'a dyn ReedyOracle {
        self.oracle
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn level(&self) -> u32 {
        self.oracle.level()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[ObjectTerm] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &ObjectTerm {
        &self.objects[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn object_index(&self, obj: &ObjectTerm) -> Result<usize, TermError> {
        self.object_index
            .get(obj)
            .copied()
            .ok_or_else(|| TermError::UnknownObject {
                rendered: obj.render(),
            })
    }

    pub fn hom(&self, c: usize, d: usize) -> &[MorphismTerm] {
        &self.homs[c][d]
    }

    pub fn hom_index(&self, c: usize, d: usize, f: &MorphismTerm) -> Result<usize, TermError> {
        self.hom_index[c][d]
            .get(f)
            .copied()
            .ok_or_else(|| TermError::UnknownMorphism {
                rendered: f.render_name(),
            })
    }

    pub fn is_minus(&self, c: usize, d: usize, f: usize) -> bool {
        self.minus[c][d][f]
    }

    /// Indices of inverse-class morphisms `c -> d`.
    pub fn minus_indices(&self, c: usize, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.minus[c][d]
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| if m { Some(i) } else { None })
    }

    pub fn identity_index(&self, c: usize) -> usize {
        self.identity[c]
    }

    pub fn is_identity(&self, c: usize, d: usize, f: usize) -> bool {
        c == d && self.identity[c] == f
    }

    pub fn compose(&self, g: &MorphismTerm, f: &MorphismTerm) -> Result<MorphismTerm, TermError> {
        self.oracle.compose(g, f)
    }

    /// Compose by hom-set indices; `f: c -> d`, `g: d -> e`.
    pub fn compose_indexed(
        &self,
        c: usize,
        d: usize,
        e: usize,
        f: usize,
        g: usize,
    ) -> Result<usize, TermError> {
        let composite = self
            .oracle
            .compose(&self.homs[d][e][g], &self.homs[c][d][f])?;
        self.hom_index(c, e, &composite)
    }

    /// Total number of morphisms in the truncation.
    pub fn morphism_count(&self) -> u64 {
        self.homs
            .iter()
            .flat_map(|row| row.iter())
            .map(|h| h.len() as u64)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::DeltaOracle;

    #[test]
    fn delta_truncation_tables() {
        let oracle = DeltaOracle;
        let trunc = Truncation::build(&oracle, 3).unwrap();
        assert_eq!(trunc.object_count(), 4);
        assert_eq!(trunc.hom(1, 1).len(), 3);
        assert_eq!(trunc.hom(2, 1).len(), 4);
        let id = trunc.identity_index(1);
        assert!(trunc.is_minus(1, 1, id));
        assert_eq!(trunc.minus_indices(2, 1).collect::<Vec<_>>().len(), 2);
        // composition through indices lands on the right entry
        let s = trunc.hom_index(2, 1, &trunc.hom(2, 1)[1].clone()).unwrap();
        let composed = trunc.compose_indexed(2, 1, 1, s, id).unwrap();
        assert_eq!(composed, s);
    }
}
