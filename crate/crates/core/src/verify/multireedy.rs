//! Exhaustive multi-Reedy verification over a truncation.
//!
//! The factorization axiom is checked in two passes.  A direct pass runs
//! the oracle's `factorize` on every bounded family of valence at most `U`
//! and validates the output (classes, shapes, exact compose-back).  A
//! global recount pass then enumerates every candidate factorization
//! `(g in C^-, plus tuple out of its codomain)` and counts, per family,
//! how many candidates compose to it: uniqueness holds exactly when every
//! count is one.  Together the passes prove that the returned
//! factorization is the unique valid one among all candidates within the
//! truncation.
//!
//! Closure of the direct class is checked through partial compositions
//! (one position at a time) with the composite valence bounded by `U`;
//! partial compositions generate all multi-compositions, and the
//! valence-1-against-family case exercises the full gather machinery.
//!
//! The check is split into independent, deterministic work units keyed by
//! the family's domain and codomain tuple, so callers may evaluate units
//! in parallel and merge; results are identical regardless of schedule.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::TermError;
use crate::oracle::ReedyOracle;
use crate::term::MultiMorphism;
use crate::trunc::Truncation;
use crate::verify::report::{assemble, ItemAcc, VerificationReport};

/// Flat storage of the direct-class tuples out of one object into one
/// codomain tuple: `stride` hom indices per tuple.  Only valences >= 1
/// live here; the empty family is tracked separately.
struct PlusTuples {
    stride: usize,
    flat: Vec<u32>,
}

impl PlusTuples {
    fn count(&self) -> usize {
        self.flat.len() / self.stride
    }
}

enum Unit {
    FamilySpace {
        domain: usize,
        codomains: Vec<usize>,
    },
    PlusClosure {
        domain: usize,
    },
    MinusClosure {
        domain: usize,
    },
}

/// Work-unit result; opaque to callers, consumed by
/// [`MultiReedyCheck::finish`].
pub struct UnitOutcome {
    items: Vec<ItemAcc>,
}

const FACTOR_VALID: usize = 0;
const FACTOR_UNIQUE: usize = 1;
const PLUS_CLOSED: usize = 2;
const MINUS_CLOSED: usize = 3;

fn fresh_unit_items() -> Vec<ItemAcc> {
    alloc::vec![
        ItemAcc::new("factorization_valid"),
        ItemAcc::new("factorization_unique"),
        ItemAcc::new("plus_closed_under_partial_composition"),
        ItemAcc::new("minus_closed_under_composition"),
    ]
}

pub struct MultiReedyCheck<'a> {
    trunc: Truncation<'a>,
    valence: u32,
    /// `minus_lists[c][x]` holds the hom indices of the inverse-class
    /// morphisms `c -> x` (identities included).
    minus_lists: Vec<Vec<Vec<usize>>>,
    /// Presence of the empty plus tuple at an object.
    empty_plus: Vec<bool>,
    /// `(x, codomain tuple) -> direct-class tuples out of x`, valence >= 1.
    plus_tuples: BTreeMap<(usize, Vec<usize>), PlusTuples>,
    units: Vec<Unit>,
    base_items: Vec<ItemAcc>,
}

impl<'a> MultiReedyCheck<'a> {
    pub fn new(
        oracle: &'a dyn ReedyOracle,
        max_degree: u32,
        valence: u32,
    ) -> Result<Self, TermError> {
        let trunc = Truncation::build(oracle, max_degree)?;
        let n = trunc.object_count();

        let minus_lists: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|c| {
                (0..n)
                    .map(|x| trunc.minus_indices(c, x).collect())
                    .collect()
            })
            .collect();

        let mut identity_in_minus = ItemAcc::new("identity_in_minus");
        let mut identity_plus = ItemAcc::new("identity_singleton_plus");
        let mut empty_iff_zero = ItemAcc::new("empty_family_plus_iff_degree_zero");
        let mut unique_collapse = ItemAcc::new("unique_minus_to_degree_zero");
        let mut empty_plus = Vec::with_capacity(n);
        for c in 0..n {
            let obj = trunc.object(c);
            let id = trunc.identity_index(c);
            identity_in_minus.check(trunc.is_minus(c, c, id), || {
                (
                    String::from("identity is not in the inverse class"),
                    alloc::vec![(String::from("object"), obj.render())],
                )
            });
            let singleton =
                MultiMorphism::new(obj.clone(), alloc::vec![trunc.hom(c, c)[id].clone()]);
            identity_plus.check(oracle.is_plus_family(&singleton), || {
                (
                    String::from("identity singleton is not in the direct class"),
                    alloc::vec![(String::from("object"), obj.render())],
                )
            });
            let empty_ok = oracle.is_plus_family(&MultiMorphism::empty(obj.clone()));
            empty_plus.push(empty_ok);
            empty_iff_zero.check(empty_ok == (trunc.degree(c) == 0), || {
                (
                    format!(
                        "empty family plus-membership {} disagrees with degree {}",
                        empty_ok,
                        trunc.degree(c)
                    ),
                    alloc::vec![(String::from("object"), obj.render())],
                )
            });
            let collapse_count: usize = (0..n)
                .filter(|&x| trunc.degree(x) == 0)
                .map(|x| minus_lists[c][x].len())
                .sum();
            unique_collapse.check(collapse_count == 1, || {
                (
                    format!("{collapse_count} inverse-class maps to degree-0 objects"),
                    alloc::vec![(String::from("object"), obj.render())],
                )
            });
        }

        let mut minus_degree = ItemAcc::new("minus_degree_monotone");
        let mut plus_degree = ItemAcc::new("plus_single_degree_monotone");
        let mut intersection = ItemAcc::new("minus_plus_intersection_identities");
        for c in 0..n {
            for d in 0..n {
                for (f, term) in trunc.hom(c, d).iter().enumerate() {
                    let is_minus = trunc.is_minus(c, d, f);
                    let singleton =
                        MultiMorphism::new(trunc.object(c).clone(), alloc::vec![term.clone()]);
                    let is_plus = oracle.is_plus_family(&singleton);
                    let is_id = trunc.is_identity(c, d, f);
                    let witness = |label: &'static str| {
                        (
                            String::from(label),
                            alloc::vec![
                                (String::from("f"), term.render_name()),
                                (String::from("dom"), trunc.object(c).render()),
                                (String::from("cod"), trunc.object(d).render()),
                            ],
                        )
                    };
                    if is_minus {
                        let ok = trunc.degree(c) > trunc.degree(d)
                            || (trunc.degree(c) == trunc.degree(d) && is_id);
                        minus_degree
                            .check(ok, || witness("inverse map fails the degree inequality"));
                    }
                    if is_plus {
                        let ok = trunc.degree(c) < trunc.degree(d)
                            || (trunc.degree(c) == trunc.degree(d) && is_id);
                        plus_degree.check(ok, || witness("direct map fails the degree inequality"));
                    }
                    if is_minus && is_plus {
                        intersection.check(is_id, || witness("non-identity map in both classes"));
                    }
                }
            }
        }

        // enumerate direct-class tuples of valence 1..=U out of every object
        let mut plus_family_degree = ItemAcc::new("plus_family_degree_bound");
        let mut plus_tuples = BTreeMap::new();
        for x in 0..n {
            for codomains in codomain_tuples(n, valence) {
                let sizes: Vec<usize> = codomains.iter().map(|&d| trunc.hom(x, d).len()).collect();
                if sizes.contains(&0) {
                    continue;
                }
                let stride = codomains.len();
                let mut flat = Vec::new();
                let mut pick = alloc::vec![0usize; stride];
                loop {
                    let family = MultiMorphism::new(
                        trunc.object(x).clone(),
                        pick.iter()
                            .zip(&codomains)
                            .map(|(&f, &d)| trunc.hom(x, d)[f].clone())
                            .collect(),
                    );
                    if oracle.is_plus_family(&family) {
                        let target_sum: u32 = codomains.iter().map(|&d| trunc.degree(d)).sum();
                        plus_family_degree.check(trunc.degree(x) <= target_sum, || {
                            (
                                format!(
                                    "direct family violates deg(dom) <= sum deg(cod): {} > {}",
                                    trunc.degree(x),
                                    target_sum
                                ),
                                family_witness(&trunc, x, &codomains, &pick),
                            )
                        });
                        flat.extend(pick.iter().map(|&f| f as u32));
                    }
                    if !advance(&mut pick, &sizes) {
                        break;
                    }
                }
                if !flat.is_empty() {
                    plus_tuples.insert((x, codomains.clone()), PlusTuples { stride, flat });
                }
            }
        }

        let mut units = Vec::new();
        for c in 0..n {
            units.push(Unit::FamilySpace {
                domain: c,
                codomains: Vec::new(),
            });
        }
        for u in 1..=valence {
            for c in 0..n {
                for codomains in codomain_tuples_of_len(n, u as usize) {
                    units.push(Unit::FamilySpace {
                        domain: c,
                        codomains,
                    });
                }
            }
        }
        for c in 0..n {
            units.push(Unit::PlusClosure { domain: c });
        }
        for c in 0..n {
            units.push(Unit::MinusClosure { domain: c });
        }

        Ok(MultiReedyCheck {
            trunc,
            valence,
            minus_lists,
            empty_plus,
            plus_tuples,
            units,
            base_items: alloc::vec![
                identity_in_minus,
                identity_plus,
                empty_iff_zero,
                unique_collapse,
                minus_degree,
                plus_degree,
                intersection,
                plus_family_degree,
            ],
        })
    }

    pub fn trunc(&self) -> &Truncation<'a> {
        &self.trunc
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    /// Run one unit; pure, safe to call from any thread.
    pub fn run_unit(&self, unit: usize) -> UnitOutcome {
        let mut items = fresh_unit_items();
        match &self.units[unit] {
            Unit::FamilySpace { domain, codomains } => {
                self.run_family_space(*domain, codomains, &mut items)
            }
            Unit::PlusClosure { domain } => self.run_plus_closure(*domain, &mut items),
            Unit::MinusClosure { domain } => self.run_minus_closure(*domain, &mut items),
        }
        UnitOutcome { items }
    }

    /// Merge unit outcomes (in unit order) into the final report.
    pub fn finish(&self, outcomes: Vec<UnitOutcome>) -> VerificationReport {
        let mut merged = fresh_unit_items();
        for outcome in outcomes {
            for (slot, item) in outcome.items.into_iter().enumerate() {
                merged[slot].merge(item);
            }
        }
        let mut accs = self.base_items.clone();
        accs.extend(merged);
        let notes = alloc::vec![
            format!("objects={}", self.trunc.object_count()),
            format!("morphisms={}", self.trunc.morphism_count()),
            format!(
                "plus_tuples={}",
                self.plus_tuples
                    .values()
                    .map(|t| t.count() as u64)
                    .sum::<u64>()
                    + self.empty_plus.iter().filter(|&&b| b).count() as u64
            ),
        ];
        assemble(
            "multireedy",
            self.trunc.oracle().describe(),
            self.trunc.max_degree(),
            Some(self.valence),
            accs,
            notes,
        )
    }

    /// Sequential convenience: run every unit in order and merge.
    pub fn run(&self) -> VerificationReport {
        let outcomes = (0..self.unit_count()).map(|u| self.run_unit(u)).collect();
        self.finish(outcomes)
    }

    fn plus_tuple_data(&self, x: usize, codomains: &[usize]) -> Option<&PlusTuples> {
        self.plus_tuples.get(&(x, codomains.to_vec()))
    }

    fn run_family_space(&self, c: usize, codomains: &[usize], items: &mut [ItemAcc]) {
        let trunc = &self.trunc;
        let oracle = trunc.oracle();
        let n = trunc.object_count();
        let sizes: Vec<usize> = codomains.iter().map(|&d| trunc.hom(c, d).len()).collect();
        let total: usize = sizes.iter().product();
        if total == 0 {
            return;
        }

        // candidate recount: counter over the whole family space
        let mut counter = alloc::vec![0u32; total];
        for x in 0..n {
            let tuples = if codomains.is_empty() {
                if !self.empty_plus[x] {
                    continue;
                }
                None // exactly the empty tuple
            } else {
                match self.plus_tuple_data(x, codomains) {
                    Some(t) => Some(t),
                    None => continue,
                }
            };
            for &g in &self.minus_lists[c][x] {
                let g_term = &trunc.hom(c, x)[g];
                match tuples {
                    None => counter[0] += 1,
                    Some(t) => {
                        // per codomain, the composition map hom(x,d) -> hom(c,d)
                        let mut comp: Vec<Vec<u32>> = Vec::with_capacity(codomains.len());
                        for (s, &d) in codomains.iter().enumerate() {
                            let mut v = Vec::with_capacity(trunc.hom(x, d).len());
                            for h in trunc.hom(x, d) {
                                let idx = trunc
                                    .compose(h, g_term)
                                    .ok()
                                    .and_then(|composite| trunc.hom_index(c, d, &composite).ok())
                                    .map(|i| i as u32)
                                    .unwrap_or(u32::MAX);
                                v.push(idx);
                            }
                            let _ = s;
                            comp.push(v);
                        }
                        let stride = t.stride;
                        for tuple in t.flat.chunks_exact(stride) {
                            let mut index = 0usize;
                            let mut ok = true;
                            for (s, &h) in tuple.iter().enumerate() {
                                let mapped = comp[s][h as usize];
                                if mapped == u32::MAX {
                                    ok = false;
                                    break;
                                }
                                index = index * sizes[s] + mapped as usize;
                            }
                            if ok {
                                counter[index] += 1;
                            }
                        }
                    }
                }
            }
        }

        // direct factorize validation over every family
        let mut pick = alloc::vec![0usize; codomains.len()];
        loop {
            let components: Vec<_> = pick
                .iter()
                .zip(codomains)
                .map(|(&f, &d)| trunc.hom(c, d)[f].clone())
                .collect();
            let family = MultiMorphism::new(trunc.object(c).clone(), components);
            match oracle.factorize(&family) {
                Ok(fac) => {
                    let mut reason: Option<&'static str> = None;
                    if !oracle.is_minus(&fac.minus_part) {
                        reason = Some("minus part is not inverse-class");
                    } else if trunc.object_index(&fac.mid).is_err() {
                        reason = Some("mid object escapes the truncation");
                    } else if fac
                        .minus_part
                        .check_against(&family.domain, &fac.mid)
                        .is_err()
                    {
                        reason = Some("minus part does not match domain/mid");
                    } else if fac.plus_part.domain != fac.mid {
                        reason = Some("plus part domain differs from mid");
                    } else if !oracle.is_plus_family(&fac.plus_part) {
                        reason = Some("plus part is not direct-class");
                    } else if fac.plus_part.components.len() != family.components.len() {
                        reason = Some("plus part valence changed");
                    } else {
                        for (h, f) in fac.plus_part.components.iter().zip(&family.components) {
                            match oracle.compose(h, &fac.minus_part) {
                                Ok(back) if &back == f => {}
                                _ => {
                                    reason = Some("factorization does not compose back");
                                    break;
                                }
                            }
                        }
                    }
                    items[FACTOR_VALID].check(reason.is_none(), || {
                        (
                            String::from(reason.unwrap_or("invalid factorization")),
                            family_witness(trunc, c, codomains, &pick),
                        )
                    });
                }
                Err(e) => items[FACTOR_VALID].fail(
                    format!("factorize failed: {e}"),
                    family_witness(trunc, c, codomains, &pick),
                ),
            }
            if !advance(&mut pick, &sizes) {
                break;
            }
        }

        // uniqueness: exactly one candidate per family
        for (index, &count) in counter.iter().enumerate() {
            items[FACTOR_UNIQUE].check(count == 1, || {
                let pick = decode(index, &sizes);
                (
                    format!("{count} candidate factorizations within the truncation"),
                    family_witness(trunc, c, codomains, &pick),
                )
            });
        }
    }

    fn run_plus_closure(&self, c: usize, items: &mut [ItemAcc]) {
        let trunc = &self.trunc;
        let oracle = trunc.oracle();
        let n = trunc.object_count();
        // iterate plus families out of c (valence 1..=U), compose one
        // position with a plus family (valence bounded so the composite
        // stays within U), require the composite to be plus
        for u in 1..=self.valence as usize {
            for codomains in codomain_tuples_of_len(n, u) {
                let Some(tuples) = self.plus_tuple_data(c, &codomains) else {
                    continue;
                };
                for tuple in tuples.flat.chunks_exact(tuples.stride) {
                    let components: Vec<_> = tuple
                        .iter()
                        .zip(&codomains)
                        .map(|(&f, &d)| trunc.hom(c, d)[f as usize].clone())
                        .collect();
                    for position in 0..u {
                        let d = codomains[position];
                        let budget = self.valence as usize - (u - 1);
                        // valence-0 partial composition: drop the position
                        if self.empty_plus[d] {
                            let mut composite = components.clone();
                            composite.remove(position);
                            let fam = MultiMorphism::new(trunc.object(c).clone(), composite);
                            items[PLUS_CLOSED].check(oracle.is_plus_family(&fam), || {
                                (
                                    String::from(
                                        "partial composition with the empty family left the direct class",
                                    ),
                                    family_witness_terms(trunc, c, &components),
                                )
                            });
                        }
                        for v in 1..=budget {
                            for targets in codomain_tuples_of_len(n, v) {
                                let Some(inner) = self.plus_tuple_data(d, &targets) else {
                                    continue;
                                };
                                for g_tuple in inner.flat.chunks_exact(inner.stride) {
                                    let mut composite = Vec::with_capacity(u - 1 + v);
                                    composite.extend_from_slice(&components[..position]);
                                    let mut bad = false;
                                    for (&g, &e) in g_tuple.iter().zip(&targets) {
                                        match oracle.compose(
                                            &trunc.hom(d, e)[g as usize],
                                            &components[position],
                                        ) {
                                            Ok(h) => composite.push(h),
                                            Err(_) => {
                                                bad = true;
                                                break;
                                            }
                                        }
                                    }
                                    composite.extend_from_slice(&components[position + 1..]);
                                    let fam =
                                        MultiMorphism::new(trunc.object(c).clone(), composite);
                                    items[PLUS_CLOSED].check(
                                        !bad && oracle.is_plus_family(&fam),
                                        || {
                                            (
                                                String::from(
                                                    "partial composition left the direct class",
                                                ),
                                                family_witness_terms(trunc, c, &components),
                                            )
                                        },
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    fn run_minus_closure(&self, c: usize, items: &mut [ItemAcc]) {
        let trunc = &self.trunc;
        let oracle = trunc.oracle();
        let n = trunc.object_count();
        for x in 0..n {
            for &g in &self.minus_lists[c][x] {
                for y in 0..n {
                    for &h in &self.minus_lists[x][y] {
                        let composite = oracle.compose(&trunc.hom(x, y)[h], &trunc.hom(c, x)[g]);
                        let ok = matches!(&composite, Ok(term) if oracle.is_minus(term));
                        items[MINUS_CLOSED].check(ok, || {
                            (
                                String::from("composite of inverse maps left the inverse class"),
                                alloc::vec![
                                    (String::from("g"), trunc.hom(c, x)[g].render_name()),
                                    (String::from("h"), trunc.hom(x, y)[h].render_name()),
                                    (String::from("dom"), trunc.object(c).render()),
                                ],
                            )
                        });
                    }
                }
            }
        }
    }
}

fn family_witness(
    trunc: &Truncation<'_>,
    c: usize,
    codomains: &[usize],
    pick: &[usize],
) -> Vec<(String, String)> {
    let mut terms = alloc::vec![(String::from("dom"), trunc.object(c).render())];
    for (s, (&f, &d)) in pick.iter().zip(codomains).enumerate() {
        terms.push((format!("f{}", s + 1), trunc.hom(c, d)[f].render_name()));
        terms.push((format!("cod{}", s + 1), trunc.object(d).render()));
    }
    terms
}

fn family_witness_terms(
    trunc: &Truncation<'_>,
    c: usize,
    components: &[crate::term::MorphismTerm],
) -> Vec<(String, String)> {
    let mut terms = alloc::vec![(String::from("dom"), trunc.object(c).render())];
    for (s, f) in components.iter().enumerate() {
        terms.push((format!("f{}", s + 1), f.render_name()));
    }
    terms
}

/// Ordered codomain tuples of every valence `0..=max`, in canonical order.
fn codomain_tuples(n: usize, max_valence: u32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for u in 1..=max_valence as usize {
        out.extend(codomain_tuples_of_len(n, u));
    }
    out
}

fn codomain_tuples_of_len(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut tuple = alloc::vec![0usize; len];
    if len == 0 {
        return alloc::vec![Vec::new()];
    }
    loop {
        out.push(tuple.clone());
        let mut slot = len;
        let mut advanced = false;
        while slot > 0 {
            slot -= 1;
            if tuple[slot] + 1 < n {
                tuple[slot] += 1;
                advanced = true;
                break;
            }
            tuple[slot] = 0;
        }
        if !advanced {
            break;
        }
    }
    out
}

fn advance(pick: &mut [usize], sizes: &[usize]) -> bool {
    let mut slot = pick.len();
    while slot > 0 {
        slot -= 1;
        if pick[slot] + 1 < sizes[slot] {
            pick[slot] += 1;
            return true;
        }
        pick[slot] = 0;
    }
    false
}

fn decode(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = alloc::vec![0usize; sizes.len()];
    for s in (0..sizes.len()).rev() {
        out[s] = index % sizes[s];
        index /= sizes[s];
    }
    out
}

pub fn verify_multi_reedy(
    oracle: &dyn ReedyOracle,
    max_degree: u32,
    valence: u32,
) -> Result<VerificationReport, TermError> {
    Ok(MultiReedyCheck::new(oracle, max_degree, valence)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::DeltaOracle;
    use crate::oracle::TerminalOracle;
    use crate::theta::theta_tower;

    #[test]
    fn terminal_is_multi_reedy() {
        let report = verify_multi_reedy(&TerminalOracle, 3, 2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn delta_is_multi_reedy_at_small_bounds() {
        let report = verify_multi_reedy(&DeltaOracle, 3, 2).unwrap();
        assert!(report.passed(), "{report}");
        let unique = report
            .items
            .iter()
            .find(|i| i.name == "factorization_unique")
            .unwrap();
        assert!(unique.examined > 1000);
    }

    #[test]
    fn theta_of_terminal_is_multi_reedy_at_small_bounds() {
        let report = verify_multi_reedy(&*theta_tower(1), 3, 2).unwrap();
        assert!(report.passed(), "{report}");
        let report = verify_multi_reedy(&*theta_tower(2), 2, 2).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn unit_partition_is_schedule_independent() {
        let oracle = DeltaOracle;
        let check = MultiReedyCheck::new(&oracle, 2, 2).unwrap();
        let sequential = check.run();
        // reversed evaluation order, merged in unit order
        let mut outcomes: Vec<(usize, UnitOutcome)> = (0..check.unit_count())
            .rev()
            .map(|u| (u, check.run_unit(u)))
            .collect();
        outcomes.sort_by_key(|(u, _)| *u);
        let merged = check.finish(outcomes.into_iter().map(|(_, o)| o).collect());
        assert_eq!(sequential, merged);
        assert!(sequential.passed());
    }
}
