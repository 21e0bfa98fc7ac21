//! Exhaustive enumeration of small tables, canonical forms under
//! relabeling, and the search for bi-ideal-free hypersemigroups that are not
//! hypergroups.
//!
//! Tables in a space are numbered in mixed radix with the first cell most
//! significant. A hyper cell holding mask `m` has digit `m - 1`; a gamma cell
//! holding `x` has digit `x`. Index order is therefore the lexicographic
//! order of cell sequences, the same order canonical forms minimise over.

use std::ops::Range;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::GammaTable;
use crate::hyper::{HyperTable, HypergroupVerdict};
use crate::ideals::{enumerate_ideals, IdealKind};
use crate::structure::{Shape, Structure};
use crate::subset::{Carrier, Subset};

/// Largest hyper space swept without an override: `7^9`, all of n = 3.
pub const DEFAULT_HYPER_LIMIT: u128 = 40_353_607;
/// Largest gamma space swept without an override: `3^9`, n = 3 with k = 1.
pub const DEFAULT_GAMMA_LIMIT: u128 = 19_683;

/// How many tables a sweep may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub hyper_limit: u128,
    pub gamma_limit: u128,
    /// Lifts both limits. Spaces whose size overflows `u128` stay refused.
    pub overridden: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            hyper_limit: DEFAULT_HYPER_LIMIT,
            gamma_limit: DEFAULT_GAMMA_LIMIT,
            overridden: false,
        }
    }
}

impl Budget {
    pub fn overridden() -> Self {
        Budget {
            overridden: true,
            ..Budget::default()
        }
    }

    /// Size of the space if it is within budget.
    pub fn admit(&self, shape: Shape) -> Result<u128> {
        let space = Space::new(shape)?;
        let limit = match shape {
            Shape::Hyper { .. } => self.hyper_limit,
            Shape::Gamma { .. } => self.gamma_limit,
        };
        match space.size() {
            Some(size) if self.overridden || size <= limit => Ok(size),
            _ => Err(Error::BudgetExceeded {
                space: space.size_label(),
                limit,
            }),
        }
    }
}

/// All tables of one shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space {
    shape: Shape,
    carrier: Carrier,
    radix: u64,
    cells: usize,
}

impl Space {
    pub fn new(shape: Shape) -> Result<Self> {
        let carrier = Carrier::new(shape.n())?;
        let n = shape.n();
        let (radix, cells) = match shape {
            Shape::Hyper { .. } => (carrier.mask(), n * n),
            Shape::Gamma { k, .. } => {
                if k == 0 {
                    return Err(Error::EmptyGamma);
                }
                (n as u64, n * k * n)
            }
        };
        Ok(Space {
            shape,
            carrier,
            radix,
            cells,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Number of tables, or `None` past `u128`.
    pub fn size(&self) -> Option<u128> {
        (0..self.cells).try_fold(1u128, |acc, _| acc.checked_mul(u128::from(self.radix)))
    }

    /// Exact count when it fits, otherwise `radix^cells`.
    pub fn size_label(&self) -> String {
        match self.size() {
            Some(s) => s.to_string(),
            None => format!("{}^{}", self.radix, self.cells),
        }
    }

    fn digits_at(&self, mut index: u128) -> Vec<u64> {
        let radix = u128::from(self.radix);
        let mut digits = vec![0u64; self.cells];
        for d in digits.iter_mut().rev() {
            *d = (index % radix) as u64;
            index /= radix;
        }
        digits
    }

    fn build(&self, digits: &[u64]) -> Structure {
        match self.shape {
            Shape::Hyper { .. } => Structure::Hyper(HyperTable::from_masks_unchecked(
                self.carrier,
                digits.iter().map(|d| d + 1).collect(),
            )),
            Shape::Gamma { k, .. } => Structure::Gamma(GammaTable::from_bytes_unchecked(
                self.carrier,
                k,
                digits.iter().map(|&d| d as u8).collect(),
            )),
        }
    }

    /// The table with the given index.
    pub fn structure_at(&self, index: u128) -> Option<Structure> {
        (index < self.size()?).then(|| self.build(&self.digits_at(index)))
    }

    /// Index of a structure of this shape.
    pub fn index_of(&self, structure: &Structure) -> Option<u128> {
        if structure.shape() != self.shape {
            return None;
        }
        let offset = u64::from(matches!(self.shape, Shape::Hyper { .. }));
        structure.key().iter().try_fold(0u128, |acc, &c| {
            acc.checked_mul(u128::from(self.radix))?.checked_add(u128::from(c - offset))
        })
    }

    /// Tables with indices in `range`, in order.
    pub fn iter_range(&self, range: Range<u128>) -> SpaceIter<'_> {
        SpaceIter {
            space: self,
            digits: self.digits_at(range.start),
            next: range.start,
            end: range.end,
        }
    }

    /// Contiguous index ranges, each a block sharing its leading cells.
    /// Blocks are fine enough to balance work across `workers` threads.
    pub fn partitions(&self, workers: usize) -> Vec<Range<u128>> {
        let Some(size) = self.size() else {
            return Vec::new();
        };
        let target = (workers.max(1) * 16) as u128;
        let mut blocks = 1u128;
        let mut leading = 0;
        while blocks < target && leading < self.cells {
            blocks *= u128::from(self.radix);
            leading += 1;
        }
        let block = size / blocks;
        (0..blocks).map(|i| i * block..(i + 1) * block).collect()
    }
}

/// Odometer over a contiguous index range.
pub struct SpaceIter<'a> {
    space: &'a Space,
    digits: Vec<u64>,
    next: u128,
    end: u128,
}

impl Iterator for SpaceIter<'_> {
    type Item = (u128, Structure);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let item = (self.next, self.space.build(&self.digits));
        self.next += 1;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.space.radix {
                break;
            }
            *d = 0;
        }
        Some(item)
    }
}

/// Folds `visit` over every table of the space and merges the per-block
/// accumulators in block order, so the result does not depend on `workers`.
pub fn sweep<A, I, V, M>(space: &Space, workers: usize, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, u128, Structure) + Sync,
    M: Fn(&mut A, A),
{
    let fold_block = |range: &Range<u128>| {
        let mut acc = init();
        for (index, structure) in space.iter_range(range.clone()) {
            visit(&mut acc, index, structure);
        }
        acc
    };
    let blocks = space.partitions(workers);
    let partials = run_blocks(&blocks, workers, &fold_block);
    let mut total = init();
    for part in partials {
        merge(&mut total, part);
    }
    total
}

#[cfg(feature = "parallel")]
fn run_blocks<A, F>(blocks: &[Range<u128>], workers: usize, fold_block: &F) -> Vec<A>
where
    A: Send,
    F: Fn(&Range<u128>) -> A + Sync,
{
    use rayon::prelude::*;
    if workers <= 1 {
        return blocks.iter().map(fold_block).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| blocks.par_iter().map(fold_block).collect()),
        Err(_) => blocks.iter().map(fold_block).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_blocks<A, F>(blocks: &[Range<u128>], _workers: usize, fold_block: &F) -> Vec<A>
where
    F: Fn(&Range<u128>) -> A,
{
    blocks.iter().map(fold_block).collect()
}

/// Which tables an enumeration keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    All,
    SemigroupsOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dedup {
    Raw,
    /// One representative, the canonical form, per isomorphism class.
    UpToIsomorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub shape: Shape,
    pub filter: Filter,
    pub dedup: Dedup,
}

fn keeps(spec: &EnumerationSpec, s: &Structure) -> bool {
    (spec.filter == Filter::All || s.is_semigroup())
        && (spec.dedup == Dedup::Raw || is_canonical(s))
}

/// Lazily yields the selected tables in index order on the calling thread.
pub fn enumerate_structures(
    spec: EnumerationSpec,
    budget: &Budget,
) -> Result<impl Iterator<Item = Structure>> {
    let size = budget.admit(spec.shape)?;
    let space = Space::new(spec.shape)?;
    Ok(IterOwned { space, next: 0, end: size }.filter(move |s| keeps(&spec, s)))
}

struct IterOwned {
    space: Space,
    next: u128,
    end: u128,
}

impl Iterator for IterOwned {
    type Item = Structure;

    fn next(&mut self) -> Option<Structure> {
        if self.next >= self.end {
            return None;
        }
        let s = self.space.structure_at(self.next);
        self.next += 1;
        s
    }
}

/// The selected tables with their indices, collected by a parallel sweep.
pub fn collect_structures(
    spec: EnumerationSpec,
    budget: &Budget,
    workers: usize,
) -> Result<Vec<(u128, Structure)>> {
    budget.admit(spec.shape)?;
    let space = Space::new(spec.shape)?;
    Ok(sweep(
        &space,
        workers,
        Vec::new,
        |acc, index, s| {
            if keeps(&spec, &s) {
                acc.push((index, s));
            }
        },
        |acc, part| acc.extend(part),
    ))
}

fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).permutations(n)
}

/// Every relabeling of the structure: carrier permutations, and for gamma
/// tables also permutations of the gamma set.
pub fn relabelings(s: &Structure) -> Vec<Structure> {
    let n = s.size();
    match s {
        Structure::Hyper(t) => permutations(n)
            .map(|p| Structure::Hyper(t.relabel(&p).expect("valid permutation")))
            .collect(),
        Structure::Gamma(t) => permutations(n)
            .cartesian_product(permutations(t.gamma_size()).collect::<Vec<_>>())
            .map(|(p, q)| Structure::Gamma(t.relabel(&p, &q).expect("valid permutation")))
            .collect(),
    }
}

/// The lexicographically least table among all relabelings.
pub fn canonical_form(s: &Structure) -> Structure {
    relabelings(s)
        .into_iter()
        .min_by(|a, b| a.key().cmp(&b.key()))
        .expect("the identity relabeling is always present")
}

/// Whether no relabeling yields a lexicographically smaller table.
pub fn is_canonical(s: &Structure) -> bool {
    let key = s.key();
    relabelings(s).iter().all(|r| r.key() >= key)
}

/// A hypersemigroup with no proper bi-ideals that is not a hypergroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemWitness {
    #[serde(skip)]
    table: HyperTable,
    /// Every bi-ideal; always just the whole carrier.
    pub bi_ideals: Vec<Subset>,
    /// Why the table is not a hypergroup.
    pub reason: HypergroupVerdict,
}

impl ProblemWitness {
    /// Checks all three conditions from scratch.
    pub fn new(table: HyperTable) -> Result<Self> {
        if let Some(v) = table.associativity_violation() {
            return Err(Error::InvalidWitness(format!("not a hypersemigroup: {v}")));
        }
        let bi_ideals = enumerate_ideals(&table, IdealKind::BiIdeal)?;
        if bi_ideals != [table.carrier().full()] {
            return Err(Error::InvalidWitness(format!(
                "proper bi-ideal {}",
                bi_ideals[0]
            )));
        }
        let reason = table.hypergroup()?;
        if reason.is_hypergroup() {
            return Err(Error::InvalidWitness("the table is a hypergroup".into()));
        }
        Ok(ProblemWitness {
            table,
            bi_ideals,
            reason,
        })
    }

    pub fn table(&self) -> &HyperTable {
        &self.table
    }
}

/// Search result for one carrier size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchLevel {
    Complete {
        n: usize,
        /// Tables scanned at this size.
        scanned: u128,
        witnesses: Vec<(u128, ProblemWitness)>,
    },
    /// The space exceeded the budget; nothing at this size was searched.
    Refused { n: usize, space: String },
}

impl SearchLevel {
    pub fn n(&self) -> usize {
        match self {
            SearchLevel::Complete { n, .. } | SearchLevel::Refused { n, .. } => *n,
        }
    }

    pub fn witnesses(&self) -> &[(u128, ProblemWitness)] {
        match self {
            SearchLevel::Complete { witnesses, .. } => witnesses,
            SearchLevel::Refused { .. } => &[],
        }
    }
}

fn is_bi_ideal_free_non_hypergroup(t: &HyperTable) -> bool {
    t.is_hypersemigroup()
        && crate::ideals::has_no_proper_bi_ideals(t).unwrap_or(false)
        && !t.is_hypergroup()
}

/// Sweeps hyper tables of sizes `n_from..=n_to` for witnesses, handing each
/// finished level to `on_level` before starting the next one.
pub fn search_problem_with<F>(
    n_from: usize,
    n_to: usize,
    dedup: Dedup,
    budget: &Budget,
    workers: usize,
    mut on_level: F,
) -> Vec<SearchLevel>
where
    F: FnMut(&SearchLevel),
{
    let mut levels = Vec::new();
    for n in n_from..=n_to {
        let shape = Shape::Hyper { n };
        let level = match budget.admit(shape).and_then(|size| Ok((size, Space::new(shape)?))) {
            Err(Error::BudgetExceeded { space, .. }) => SearchLevel::Refused { n, space },
            Err(e) => SearchLevel::Refused {
                n,
                space: e.to_string(),
            },
            Ok((scanned, space)) => {
                let found = sweep(
                    &space,
                    workers,
                    Vec::new,
                    |acc: &mut Vec<(u128, HyperTable)>, index, s| {
                        if let Structure::Hyper(t) = s {
                            if is_bi_ideal_free_non_hypergroup(&t)
                                && (dedup == Dedup::Raw || is_canonical(&Structure::Hyper(t.clone())))
                            {
                                acc.push((index, t));
                            }
                        }
                    },
                    |acc, part| acc.extend(part),
                );
                let witnesses = found
                    .into_iter()
                    .map(|(i, t)| (i, ProblemWitness::new(t).expect("search predicate matches witness checks")))
                    .collect();
                SearchLevel::Complete {
                    n,
                    scanned,
                    witnesses,
                }
            }
        };
        on_level(&level);
        levels.push(level);
    }
    levels
}

pub fn search_problem(
    n_from: usize,
    n_to: usize,
    dedup: Dedup,
    budget: &Budget,
    workers: usize,
) -> Vec<SearchLevel> {
    search_problem_with(n_from, n_to, dedup, budget, workers, |_| {})
}
