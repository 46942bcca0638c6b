//! Term representations for the objects and morphisms of the iterated
//! theta construction.
//!
//! Objects are level-indexed bracket terms `[m](c_1, ..., c_m)` whose
//! children sit one level lower; the unique level-0 object is written `*`.
//! Morphisms pair a monotone map between bracket arities with one block of
//! lower-level morphisms per source index.  Terms are plain immutable
//! values; structural equality is the only notion of identity, which is
//! exactly right for Reedy categories (they have no non-trivial
//! isomorphisms).

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::TermError;

/// An object of the `k`-fold theta construction: `*` at level 0, or
/// `[m](c_1, ..., c_m)` with children of level one less.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ObjectTerm {
    level: u32,
    children: Vec<ObjectTerm>,
}

impl ObjectTerm {
    /// The unique level-0 object.
    pub fn star() -> Self {
        ObjectTerm {
            level: 0,
            children: Vec::new(),
        }
    }

    /// Build `[children.len()](children...)` at the given level (>= 1).
    pub fn node(level: u32, children: Vec<ObjectTerm>) -> Result<Self, TermError> {
        if level == 0 {
            if children.is_empty() {
                return Ok(Self::star());
            }
            return Err(TermError::ArityMismatch {
                expected: 0,
                found: children.len(),
            });
        }
        for child in &children {
            if child.level != level - 1 {
                return Err(TermError::ChildLevel {
                    parent_level: level,
                    child_level: child.level,
                });
            }
        }
        Ok(ObjectTerm { level, children })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// The bracket arity `m`; zero for the level-0 object.
    pub fn arity(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self) -> &[ObjectTerm] {
        &self.children
    }

    /// Degree: 0 at level 0, otherwise `m + sum of child degrees`.
    pub fn degree(&self) -> u32 {
        if self.level == 0 {
            return 0;
        }
        self.children.len() as u32 + self.children.iter().map(ObjectTerm::degree).sum::<u32>()
    }

    /// ASCII rendering: `*` or `[m](c_1,...,c_m)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        use core::fmt::Write;
        if self.level == 0 {
            out.push('*');
            return;
        }
        let _ = write!(out, "[{}](", self.children.len());
        for (i, child) in self.children.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            child.render_into(out);
        }
        out.push(')');
    }
}

impl fmt::Display for ObjectTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Canonical order: level, then degree, then arity, then children
// lexicographically.  Within one level this is the enumeration order used
// everywhere (CLI listings, point names, reports).
impl Ord for ObjectTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.level
            .cmp(&other.level)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.children.len().cmp(&other.children.len()))
            .then_with(|| self.children.cmp(&other.children))
    }
}

impl PartialOrd for ObjectTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A weakly increasing map `[m] -> [n]`, stored as the value list
/// `a(0), ..., a(m)` together with the target size `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    values: Vec<u32>,
    target: u32,
}

impl MonotoneMap {
    pub fn new(values: Vec<u32>, target: u32) -> Result<Self, TermError> {
        if values.is_empty() {
            return Err(TermError::EmptyValues);
        }
        for i in 1..values.len() {
            if values[i] < values[i - 1] {
                return Err(TermError::NotMonotone { position: i });
            }
        }
        let last = *values.last().unwrap();
        if last > target {
            return Err(TermError::ValueOutOfRange {
                value: last,
                target,
            });
        }
        Ok(MonotoneMap { values, target })
    }

    pub fn identity(size: u32) -> Self {
        MonotoneMap {
            values: (0..=size).collect(),
            target: size,
        }
    }

    /// Source size `m` (the map is defined on `{0, ..., m}`).
    pub fn source_size(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn target_size(&self) -> u32 {
        self.target
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, i: u32) -> u32 {
        self.values[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source_size()
            && self.values.iter().enumerate().all(|(i, &v)| v == i as u32)
    }

    /// Surjective onto `{0, ..., n}`; these are the inverse maps of the
    /// simplex category.
    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[1] > w[0])
    }

    /// `g . f` with `f: [m] -> [n]`, `g: [n] -> [p]`.
    pub fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap, TermError> {
        if g.source_size() != f.target_size() {
            return Err(TermError::ComposeMismatch {
                expected: g.source_size(),
                found: f.target_size(),
            });
        }
        Ok(MonotoneMap {
            values: f.values.iter().map(|&i| g.values[i as usize]).collect(),
            target: g.target,
        })
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A morphism term of the iterated theta construction.
///
/// At level 0 this is the unique trivial morphism.  At level `k` it is a
/// pair `(alpha, blocks)` where block `i` (one per source index, `1`-based
/// in the mathematics, `0`-based here) holds `alpha(i) - alpha(i-1)`
/// morphisms of level `k - 1`: component `j` of block `i` maps the `i`-th
/// child of the domain to child `alpha(i-1) + j` of the codomain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphismTerm {
    level: u32,
    alpha: MonotoneMap,
    blocks: Vec<Vec<MorphismTerm>>,
}

impl MorphismTerm {
    /// The unique morphism at level 0.
    pub fn trivial() -> Self {
        MorphismTerm {
            level: 0,
            alpha: MonotoneMap::identity(0),
            blocks: Vec::new(),
        }
    }

    /// Build a level `>= 1` morphism, checking block shape against `alpha`.
    pub fn node(
        level: u32,
        alpha: MonotoneMap,
        blocks: Vec<Vec<MorphismTerm>>,
    ) -> Result<Self, TermError> {
        if level == 0 {
            return Err(TermError::LevelMismatch {
                expected: 1,
                found: 0,
            });
        }
        if blocks.len() != alpha.source_size() as usize {
            return Err(TermError::ArityMismatch {
                expected: alpha.source_size() as usize,
                found: blocks.len(),
            });
        }
        for (i, block) in blocks.iter().enumerate() {
            let expected = (alpha.value(i as u32 + 1) - alpha.value(i as u32)) as usize;
            if block.len() != expected {
                return Err(TermError::BlockLength {
                    block: i + 1,
                    expected,
                    found: block.len(),
                });
            }
            for component in block {
                if component.level != level - 1 {
                    return Err(TermError::ChildLevel {
                        parent_level: level,
                        child_level: component.level,
                    });
                }
            }
        }
        Ok(MorphismTerm {
            level,
            alpha,
            blocks,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn alpha(&self) -> &MonotoneMap {
        &self.alpha
    }

    pub fn blocks(&self) -> &[Vec<MorphismTerm>] {
        &self.blocks
    }

    pub fn is_trivial(&self) -> bool {
        self.level == 0
    }

    /// Identity morphism of an object.
    pub fn identity_of(obj: &ObjectTerm) -> Self {
        if obj.level() == 0 {
            return Self::trivial();
        }
        let m = obj.arity() as u32;
        let blocks = obj
            .children()
            .iter()
            .map(|c| alloc::vec![Self::identity_of(c)])
            .collect();
        MorphismTerm {
            level: obj.level(),
            alpha: MonotoneMap::identity(m),
            blocks,
        }
    }

    pub fn is_identity(&self) -> bool {
        if self.level == 0 {
            return true;
        }
        self.alpha.is_identity()
            && self
                .blocks
                .iter()
                .all(|b| b.len() == 1 && b[0].is_identity())
    }

    /// Validate this term as a morphism `dom -> cod`.
    pub fn check_against(&self, dom: &ObjectTerm, cod: &ObjectTerm) -> Result<(), TermError> {
        if dom.level() != cod.level() {
            return Err(TermError::LevelMismatch {
                expected: dom.level(),
                found: cod.level(),
            });
        }
        if self.level != dom.level() {
            return Err(TermError::LevelMismatch {
                expected: dom.level(),
                found: self.level,
            });
        }
        if self.level == 0 {
            return Ok(());
        }
        if self.alpha.source_size() as usize != dom.arity() {
            return Err(TermError::ArityMismatch {
                expected: dom.arity(),
                found: self.alpha.source_size() as usize,
            });
        }
        if self.alpha.target_size() as usize != cod.arity() {
            return Err(TermError::ArityMismatch {
                expected: cod.arity(),
                found: self.alpha.target_size() as usize,
            });
        }
        for (i, block) in self.blocks.iter().enumerate() {
            let lo = self.alpha.value(i as u32) as usize;
            for (j, component) in block.iter().enumerate() {
                component.check_against(&dom.children()[i], &cod.children()[lo + j])?;
            }
        }
        Ok(())
    }

    /// Compact deterministic rendering, used for point names and report
    /// witnesses: `1` at level 0, otherwise `[a0,...,am](block;...;block)`
    /// with components inside a block separated by commas.
    pub fn render_name(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        use core::fmt::Write;
        if self.level == 0 {
            out.push('1');
            return;
        }
        out.push('[');
        for (i, v) in self.alpha.values().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v}");
        }
        out.push_str("](");
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            for (j, component) in block.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                component.render_into(out);
            }
        }
        out.push(')');
    }
}

impl fmt::Display for MorphismTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_name())
    }
}

/// A finite list of morphisms sharing one domain; the valence may be zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiMorphism {
    pub domain: ObjectTerm,
    pub components: Vec<MorphismTerm>,
}

impl MultiMorphism {
    pub fn new(domain: ObjectTerm, components: Vec<MorphismTerm>) -> Self {
        MultiMorphism { domain, components }
    }

    /// The empty multimorphism at `domain`.
    pub fn empty(domain: ObjectTerm) -> Self {
        MultiMorphism {
            domain,
            components: Vec::new(),
        }
    }

    pub fn valence(&self) -> usize {
        self.components.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn obj(text: &str, level: u32) -> ObjectTerm {
        crate::parse::parse_object(text, level).unwrap()
    }

    #[test]
    fn star_has_degree_zero() {
        assert_eq!(ObjectTerm::star().degree(), 0);
        assert_eq!(ObjectTerm::star().render(), "*");
    }

    #[test]
    fn degree_is_arity_plus_child_degrees() {
        // [2]([1](*),[0]()) at level 2: 2 + 1 + 0 = 3
        let t = obj("[2]([1](*),[0]())", 2);
        assert_eq!(t.degree(), 3);
        // empty bracket at any level >= 1 has degree 0
        assert_eq!(obj("[0]()", 1).degree(), 0);
        assert_eq!(obj("[0]()", 3).degree(), 0);
        assert_eq!(obj("[2]([1](*),[1](*))", 2).degree(), 4);
    }

    #[test]
    fn node_rejects_bad_child_levels() {
        let star = ObjectTerm::star();
        let lvl1 = ObjectTerm::node(1, vec![star.clone()]).unwrap();
        let err = ObjectTerm::node(1, vec![lvl1]).unwrap_err();
        assert!(matches!(err, TermError::ChildLevel { .. }));
    }

    #[test]
    fn canonical_object_order_is_degree_arity_children() {
        let mut objs = [
            obj("[2]([0](),[0]())", 2),
            obj("[0]()", 2),
            obj("[1]([1](*))", 2),
            obj("[1]([0]())", 2),
        ];
        objs.sort();
        let rendered: Vec<_> = objs.iter().map(|o| o.render()).collect();
        assert_eq!(
            rendered,
            vec!["[0]()", "[1]([0]())", "[1]([1](*))", "[2]([0](),[0]())"]
        );
    }

    #[test]
    fn monotone_map_validation() {
        assert!(MonotoneMap::new(vec![0, 0, 1], 1).is_ok());
        assert!(matches!(
            MonotoneMap::new(vec![0, 2, 1], 2),
            Err(TermError::NotMonotone { position: 2 })
        ));
        assert!(matches!(
            MonotoneMap::new(vec![0, 3], 2),
            Err(TermError::ValueOutOfRange { .. })
        ));
        assert!(matches!(
            MonotoneMap::new(vec![], 0),
            Err(TermError::EmptyValues)
        ));
    }

    #[test]
    fn monotone_classification() {
        let s = MonotoneMap::new(vec![0, 0, 1], 1).unwrap();
        assert!(s.is_surjective() && !s.is_injective());
        let d = MonotoneMap::new(vec![0, 2], 2).unwrap();
        assert!(!d.is_surjective() && d.is_injective());
        assert!(MonotoneMap::identity(3).is_surjective());
        assert!(MonotoneMap::identity(3).is_identity());
    }

    #[test]
    fn identity_morphism_checks_out() {
        let c = obj("[2]([1](*),[0]())", 2);
        let id = MorphismTerm::identity_of(&c);
        assert!(id.is_identity());
        id.check_against(&c, &c).unwrap();
        assert_eq!(id.render_name(), "[0,1,2]([0,1](1);[0]())");
    }

    #[test]
    fn block_shapes_are_enforced() {
        // alpha (0,2): [1] -> [2] needs a block of two level-0 components.
        let alpha = MonotoneMap::new(vec![0, 2], 2).unwrap();
        let bad = MorphismTerm::node(1, alpha.clone(), vec![vec![MorphismTerm::trivial()]]);
        assert!(matches!(bad, Err(TermError::BlockLength { .. })));
        let good = MorphismTerm::node(
            1,
            alpha,
            vec![vec![MorphismTerm::trivial(), MorphismTerm::trivial()]],
        );
        assert!(good.is_ok());
    }
}
