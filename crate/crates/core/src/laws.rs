//! Executable instances of the bi-ideal results.
//!
//! Each [`CheckId`] names one proposition, corollary or theorem and is run
//! against a concrete table. Results about gamma-semigroups (`P2.*`, `C2.3`,
//! `T2.9`) apply to gamma tables and their hypersemigroup twins (`P3.*`,
//! `C3.6`, `T3.12`, `T3.13`) to hyper tables. A check whose hypothesis the
//! table does not meet is reported as not applicable, with the reason.
//!
//! Checks about arbitrary subsets (`P2.7`, `P3.1`, `P3.2`, `P3.10`) are run
//! on random subsets drawn from a stream seeded by the configured seed and
//! the table's fingerprint, so a report depends on nothing but the table
//! and the configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::enumerate::{sweep, Budget, Space};
use crate::error::{AssociativityViolation, Result};
use crate::hyper::{HyperTable, HypergroupVerdict};
use crate::ideals::{self, IdealKind, SubsetAlgebra};
use crate::structure::{Shape, Structure};
use crate::subset::{Carrier, Subset};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_b1d0;
/// Random subset tuples drawn per sampled check.
pub const DEFAULT_SAMPLES: usize = 8;
/// Failure records kept in an exhaustive report; the count is always exact.
pub const MAX_RECORDED_FAILURES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    P2_1,
    P2_2,
    C2_3,
    P2_4,
    P2_5,
    P2_6,
    P2_7,
    P2_8,
    T2_9,
    P3_1,
    P3_2,
    P3_4,
    P3_5,
    C3_6,
    P3_7,
    P3_8,
    P3_9,
    P3_10,
    P3_11,
    T3_12,
    T3_13,
}

impl CheckId {
    pub const GAMMA: [CheckId; 9] = [
        CheckId::P2_1,
        CheckId::P2_2,
        CheckId::C2_3,
        CheckId::P2_4,
        CheckId::P2_5,
        CheckId::P2_6,
        CheckId::P2_7,
        CheckId::P2_8,
        CheckId::T2_9,
    ];

    pub const HYPER: [CheckId; 12] = [
        CheckId::P3_1,
        CheckId::P3_2,
        CheckId::P3_4,
        CheckId::P3_5,
        CheckId::C3_6,
        CheckId::P3_7,
        CheckId::P3_8,
        CheckId::P3_9,
        CheckId::P3_10,
        CheckId::P3_11,
        CheckId::T3_12,
        CheckId::T3_13,
    ];

    pub fn all() -> impl Iterator<Item = CheckId> {
        CheckId::GAMMA.into_iter().chain(CheckId::HYPER)
    }

    pub fn code(self) -> &'static str {
        match self {
            CheckId::P2_1 => "P2.1",
            CheckId::P2_2 => "P2.2",
            CheckId::C2_3 => "C2.3",
            CheckId::P2_4 => "P2.4",
            CheckId::P2_5 => "P2.5",
            CheckId::P2_6 => "P2.6",
            CheckId::P2_7 => "P2.7",
            CheckId::P2_8 => "P2.8",
            CheckId::T2_9 => "T2.9",
            CheckId::P3_1 => "P3.1",
            CheckId::P3_2 => "P3.2",
            CheckId::P3_4 => "P3.4",
            CheckId::P3_5 => "P3.5",
            CheckId::C3_6 => "C3.6",
            CheckId::P3_7 => "P3.7",
            CheckId::P3_8 => "P3.8",
            CheckId::P3_9 => "P3.9",
            CheckId::P3_10 => "P3.10",
            CheckId::P3_11 => "P3.11",
            CheckId::T3_12 => "T3.12",
            CheckId::T3_13 => "T3.13",
        }
    }

    pub fn from_code(code: &str) -> Option<CheckId> {
        CheckId::all().find(|c| c.code() == code)
    }

    /// One-line statement of what the check asserts.
    pub fn statement(self) -> &'static str {
        match self {
            CheckId::P2_1 | CheckId::P3_4 => "regular <=> a in a.H.a for all a <=> A subset of A.H.A for all A",
            CheckId::P2_2 | CheckId::P3_5 => "H.{a} = H for all a implies left simple (and the right analogue)",
            CheckId::C2_3 | CheckId::C3_6 => "left (right) simple <=> H.{a} = H ({a}.H = H) for all a",
            CheckId::P2_4 | CheckId::P3_7 => "left simple and right simple implies regular",
            CheckId::P2_5 | CheckId::P3_8 => "regular implies bi-ideals = subidempotent bi-ideals",
            CheckId::P2_6 | CheckId::P3_9 => "left and right ideals are bi-ideals",
            CheckId::P2_7 | CheckId::P3_10 => "product distributes over union on both sides",
            CheckId::P2_8 | CheckId::P3_11 => "L(b) = {b} u H.b and R(b) = {b} u b.H are the least one-sided ideals containing b",
            CheckId::T2_9 | CheckId::T3_12 => "left and right simple <=> no proper bi-ideals",
            CheckId::P3_1 => "x in A*B <=> x in a o b for some a in A, b in B; a o b subset of A*B",
            CheckId::P3_2 => "A subset of B implies A*C subset of B*C and C*A subset of C*B",
            CheckId::T3_13 => "a hypergroup has no proper bi-ideals",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

/// Replayable data behind a failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub detail: String,
    pub elements: Vec<usize>,
    pub subsets: Vec<Subset>,
}

impl Counterexample {
    fn new(detail: impl Into<String>, elements: Vec<usize>, subsets: Vec<Subset>) -> Self {
        Counterexample {
            detail: detail.into(),
            elements,
            subsets,
        }
    }
}

/// Why a check does not apply to a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inapplicable {
    NotAssociative(AssociativityViolation),
    NotRegular,
    NotHypergroup(HypergroupVerdict),
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inapplicable::NotAssociative(v) => write!(f, "not associative: {v}"),
            Inapplicable::NotRegular => f.write_str("not regular"),
            Inapplicable::NotHypergroup(v) => write!(f, "not a hypergroup: {}", v.reason()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Counterexample),
    NotApplicable(Inapplicable),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::NotApplicable(_) => "not-applicable",
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Outcome::Pass => {
                let mut st = s.serialize_struct("Outcome", 1)?;
                st.serialize_field("outcome", "pass")?;
                st.end()
            }
            Outcome::Fail(c) => {
                let mut st = s.serialize_struct("Outcome", 2)?;
                st.serialize_field("outcome", "fail")?;
                st.serialize_field("counterexample", c)?;
                st.end()
            }
            Outcome::NotApplicable(r) => {
                let mut st = s.serialize_struct("Outcome", 2)?;
                st.serialize_field("outcome", "not-applicable")?;
                st.serialize_field("reason", &r.to_string())?;
                st.end()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Random tuples per sampled check.
    pub samples: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: CheckId,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

/// Outcome of every check of the structure's family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub structure: Structure,
    pub digest: String,
    pub config: HarnessConfig,
    pub results: Vec<CheckResult>,
}

impl LawReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.outcome.is_fail())
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn outcome(&self, id: CheckId) -> Option<&Outcome> {
        self.results.iter().find(|r| r.id == id).map(|r| &r.outcome)
    }
}

/// Runs every check of the structure's family, timing each.
pub fn verify_structure(structure: &Structure, config: &HarnessConfig) -> LawReport {
    let mut results = Vec::new();
    run_checks(structure, config, |id, run| {
        let start = Instant::now();
        let outcome = run();
        results.push(CheckResult {
            id,
            outcome,
            elapsed: start.elapsed(),
        });
    });
    LawReport {
        structure: structure.clone(),
        digest: structure.digest(),
        config: *config,
        results,
    }
}

/// Outcomes only, in check order; no timing or digest.
pub fn check_outcomes(structure: &Structure, config: &HarnessConfig) -> Vec<(CheckId, Outcome)> {
    let mut out = Vec::with_capacity(CheckId::HYPER.len());
    run_checks(structure, config, |id, run| out.push((id, run())));
    out
}

/// Runs a single check.
pub fn check(structure: &Structure, id: CheckId, config: &HarnessConfig) -> Option<Outcome> {
    let mut found = None;
    run_checks(structure, config, |cid, run| {
        if cid == id {
            found = Some(run());
        }
    });
    found
}

/// Theorem 3.13 instance: a hypergroup has no proper bi-ideals.
pub fn check_t313(table: &HyperTable) -> Outcome {
    if let Some(v) = table.associativity_violation() {
        return Outcome::NotApplicable(Inapplicable::NotAssociative(v));
    }
    let verdict = table.hypergroup().expect("associativity checked above");
    if !verdict.is_hypergroup() {
        return Outcome::NotApplicable(Inapplicable::NotHypergroup(verdict));
    }
    let bi = ideals::enumerate_ideals(table, IdealKind::BiIdeal).expect("associative");
    match bi.iter().find(|b| !b.is_full()) {
        None => Outcome::Pass,
        Some(&b) => Outcome::Fail(Counterexample::new(
            format!("hypergroup has proper bi-ideal {b}"),
            vec![],
            vec![b],
        )),
    }
}

fn run_checks<F>(structure: &Structure, config: &HarnessConfig, mut sink: F)
where
    F: FnMut(CheckId, &mut dyn FnMut() -> Outcome),
{
    let mut rng = Pcg64Mcg::seed_from_u64(config.seed ^ structure.fingerprint());
    match structure {
        Structure::Hyper(t) => {
            let facts = Facts::new(t);
            let regular = || {
                let def = ideals::is_regular_hypersemigroup_form(t).expect("associative");
                let disjunctive = ideals::is_regular_hypergroupoid_form(t);
                [("definition", def), ("disjunctive definition", disjunctive)]
            };
            sink(CheckId::P3_1, &mut || sampled_pointwise(t, &mut rng, config.samples));
            sink(CheckId::P3_2, &mut || sampled_monotone(t, &mut rng, config.samples));
            sink(CheckId::P3_4, &mut || facts.regular_forms_agree(|| regular().to_vec()));
            sink(CheckId::P3_5, &mut || facts.criterion_implies_simple());
            sink(CheckId::C3_6, &mut || facts.criterion_matches_simple());
            sink(CheckId::P3_7, &mut || facts.simple_implies_regular());
            sink(CheckId::P3_8, &mut || facts.bi_ideals_subidempotent());
            sink(CheckId::P3_9, &mut || facts.one_sided_are_bi());
            sink(CheckId::P3_10, &mut || sampled_distributive(t, &mut rng, config.samples));
            sink(CheckId::P3_11, &mut || facts.principal_ideals_least());
            sink(CheckId::T3_12, &mut || facts.simple_iff_no_proper_bi());
            sink(CheckId::T3_13, &mut || check_t313(t));
        }
        Structure::Gamma(t) => {
            let facts = Facts::new(t);
            let regular = || [("definition", ideals::is_regular_gamma_form(t).expect("associative"))];
            sink(CheckId::P2_1, &mut || facts.regular_forms_agree(|| regular().to_vec()));
            sink(CheckId::P2_2, &mut || facts.criterion_implies_simple());
            sink(CheckId::C2_3, &mut || facts.criterion_matches_simple());
            sink(CheckId::P2_4, &mut || facts.simple_implies_regular());
            sink(CheckId::P2_5, &mut || facts.bi_ideals_subidempotent());
            sink(CheckId::P2_6, &mut || facts.one_sided_are_bi());
            sink(CheckId::P2_7, &mut || sampled_distributive(t, &mut rng, config.samples));
            sink(CheckId::P2_8, &mut || facts.principal_ideals_least());
            sink(CheckId::T2_9, &mut || facts.simple_iff_no_proper_bi());
        }
    }
}

/// Deciders evaluated once per structure and shared by the checks.
struct Facts<'a, S: SubsetAlgebra> {
    alg: &'a S,
    violation: Option<AssociativityViolation>,
    left: Vec<Subset>,
    right: Vec<Subset>,
    left_simple: bool,
    right_simple: bool,
    left_criterion: bool,
    right_criterion: bool,
}

impl<'a, S: SubsetAlgebra> Facts<'a, S> {
    fn new(alg: &'a S) -> Self {
        let left = ideals::enumerate_ideals(alg, IdealKind::LeftIdeal).expect("no precondition");
        let right = ideals::enumerate_ideals(alg, IdealKind::RightIdeal).expect("no precondition");
        Facts {
            alg,
            violation: alg.associativity_violation(),
            left_simple: ideals::is_left_simple(alg),
            right_simple: ideals::is_right_simple(alg),
            left_criterion: ideals::left_simple_criterion(alg),
            right_criterion: ideals::right_simple_criterion(alg),
            left,
            right,
        }
    }

    fn carrier(&self) -> Carrier {
        self.alg.carrier()
    }

    fn associative(&self) -> std::result::Result<(), Outcome> {
        match self.violation {
            Some(v) => Err(Outcome::NotApplicable(Inapplicable::NotAssociative(v))),
            None => Ok(()),
        }
    }

    fn proper(list: &[Subset]) -> Option<Subset> {
        list.iter().copied().find(|s| !s.is_full())
    }

    fn non_generating(&self, left: bool) -> Option<usize> {
        let full = self.carrier().full();
        (0..self.carrier().size()).find(|&a| {
            let single = self.carrier().singleton(a).expect("in range");
            let p = if left {
                self.alg.product(full, single)
            } else {
                self.alg.product(single, full)
            };
            p.expect("nonempty operands") != full
        })
    }

    fn criterion_implies_simple(&self) -> Outcome {
        for (side, criterion, list) in [
            ("left", self.left_criterion, &self.left),
            ("right", self.right_criterion, &self.right),
        ] {
            if criterion {
                if let Some(p) = Self::proper(list) {
                    return Outcome::Fail(Counterexample::new(
                        format!("{side} criterion holds but {p} is a proper {side} ideal"),
                        vec![],
                        vec![p],
                    ));
                }
            }
        }
        Outcome::Pass
    }

    fn criterion_matches_simple(&self) -> Outcome {
        if let Err(o) = self.associative() {
            return o;
        }
        for (left, criterion, simple, list) in [
            (true, self.left_criterion, self.left_simple, &self.left),
            (false, self.right_criterion, self.right_simple, &self.right),
        ] {
            let side = if left { "left" } else { "right" };
            if simple && !criterion {
                let a = self.non_generating(left).expect("criterion fails somewhere");
                return Outcome::Fail(Counterexample::new(
                    format!("{side} simple but the {side} product with {{{a}}} is not the carrier"),
                    vec![a],
                    vec![],
                ));
            }
            if criterion && !simple {
                let p = Self::proper(list).expect("not simple");
                return Outcome::Fail(Counterexample::new(
                    format!("{side} criterion holds but {p} is a proper {side} ideal"),
                    vec![],
                    vec![p],
                ));
            }
            if simple != (list.len() == 1) {
                return Outcome::Fail(Counterexample::new(
                    format!("{side} simplicity decider disagrees with the ideal enumeration"),
                    vec![],
                    list.clone(),
                ));
            }
        }
        Outcome::Pass
    }

    fn element_regular(&self) -> bool {
        ideals::is_regular(self.alg).expect("associative")
    }

    fn regular_forms_agree<F>(&self, definitions: F) -> Outcome
    where
        F: FnOnce() -> Vec<(&'static str, bool)>,
    {
        if let Err(o) = self.associative() {
            return o;
        }
        let element = self.element_regular();
        let subset = ideals::is_regular_subset_form(self.alg).expect("associative");
        let mut verdicts = vec![("element form", element), ("subset form", subset)];
        verdicts.extend(definitions());
        if verdicts.iter().all(|&(_, v)| v == element) {
            return Outcome::Pass;
        }
        let listing: Vec<String> = verdicts.iter().map(|(name, v)| format!("{name}={v}")).collect();
        Outcome::Fail(Counterexample::new(
            format!("regularity deciders disagree: {}", listing.join(", ")),
            vec![],
            vec![],
        ))
    }

    fn simple_implies_regular(&self) -> Outcome {
        if let Err(o) = self.associative() {
            return o;
        }
        if self.left_simple && self.right_simple && !self.element_regular() {
            let full = self.carrier().full();
            let a = (0..self.carrier().size())
                .find(|&a| {
                    let single = self.carrier().singleton(a).expect("in range");
                    let around = self
                        .alg
                        .product(self.alg.product(single, full).expect("nonempty"), single)
                        .expect("nonempty");
                    !around.contains(a)
                })
                .unwrap_or(0);
            return Outcome::Fail(Counterexample::new(
                format!("left and right simple but {a} is not in {{{a}}}.H.{{{a}}}"),
                vec![a],
                vec![],
            ));
        }
        Outcome::Pass
    }

    fn bi_ideals(&self) -> Vec<Subset> {
        ideals::enumerate_ideals(self.alg, IdealKind::BiIdeal).expect("associative")
    }

    fn bi_ideals_subidempotent(&self) -> Outcome {
        if let Err(o) = self.associative() {
            return o;
        }
        if !self.element_regular() {
            return Outcome::NotApplicable(Inapplicable::NotRegular);
        }
        let bi = self.bi_ideals();
        let sub = ideals::enumerate_ideals(self.alg, IdealKind::SubidempotentBiIdeal).expect("associative");
        match bi.iter().find(|b| !sub.contains(b)) {
            None => Outcome::Pass,
            Some(&b) => Outcome::Fail(Counterexample::new(
                format!("bi-ideal {b} of a regular structure is not a subsemigroup"),
                vec![],
                vec![b],
            )),
        }
    }

    fn one_sided_are_bi(&self) -> Outcome {
        if let Err(o) = self.associative() {
            return o;
        }
        for (side, list) in [("left", &self.left), ("right", &self.right)] {
            for &a in list.iter() {
                if !ideals::is_bi_ideal(self.alg, a).expect("associative, nonempty") {
                    return Outcome::Fail(Counterexample::new(
                        format!("{side} ideal {a} is not a bi-ideal"),
                        vec![],
                        vec![a],
                    ));
                }
            }
        }
        Outcome::Pass
    }

    fn principal_ideals_least(&self) -> Outcome {
        if let Err(o) = self.associative() {
            return o;
        }
        let carrier = self.carrier();
        for b in 0..carrier.size() {
            for (side, list, principal) in [
                ("left", &self.left, ideals::principal_left_ideal(self.alg, b)),
                ("right", &self.right, ideals::principal_right_ideal(self.alg, b)),
            ] {
                let principal = principal.expect("associative, in range");
                let least = list
                    .iter()
                    .filter(|s| s.contains(b))
                    .fold(carrier.full(), |acc, s| acc.intersection(*s).expect("same carrier"));
                let is_ideal = list.contains(&principal);
                if !is_ideal || !principal.contains(b) || principal != least {
                    return Outcome::Fail(Counterexample::new(
                        format!(
                            "{side} principal ideal of {b} is {principal}, least {side} ideal containing it is {least}"
                        ),
                        vec![b],
                        vec![principal, least],
                    ));
                }
            }
        }
        Outcome::Pass
    }

    fn simple_iff_no_proper_bi(&self) -> Outcome {
        if let Err(o) = self.associative() {
            return o;
        }
        let simple = self.left_simple && self.right_simple;
        let bi = self.bi_ideals();
        let proper = Self::proper(&bi);
        if simple == proper.is_none() {
            return Outcome::Pass;
        }
        Outcome::Fail(match proper {
            Some(p) => Counterexample::new(
                format!("left and right simple but {p} is a proper bi-ideal"),
                vec![],
                vec![p],
            ),
            None => {
                let witness = Self::proper(&self.left).or_else(|| Self::proper(&self.right));
                Counterexample::new(
                    "no proper bi-ideals but not both left and right simple",
                    vec![],
                    witness.into_iter().collect(),
                )
            }
        })
    }
}

fn random_subset<R: Rng>(rng: &mut R, carrier: Carrier) -> Subset {
    carrier.subset_unchecked(rng.gen_range(1..=carrier.mask()))
}

/// Nonempty random subset of `of`.
fn random_part<R: Rng>(rng: &mut R, of: Subset) -> Subset {
    let bits = rng.gen::<u64>() & of.bits();
    let bits = if bits == 0 { of.bits() & of.bits().wrapping_neg() } else { bits };
    of.carrier().subset_unchecked(bits)
}

fn sampled_pointwise<R: Rng>(t: &HyperTable, rng: &mut R, samples: usize) -> Outcome {
    let carrier = t.carrier();
    for _ in 0..samples {
        let a = random_subset(rng, carrier);
        let b = random_subset(rng, carrier);
        let star = t.star(a, b).expect("nonempty operands");
        for x in 0..carrier.size() {
            let witnessed = a.iter().any(|p| {
                b.iter()
                    .any(|q| t.hyper_product(p, q).expect("in range").contains(x))
            });
            if witnessed != star.contains(x) {
                return Outcome::Fail(Counterexample::new(
                    format!("membership of {x} in A*B disagrees with the pointwise products"),
                    vec![x],
                    vec![a, b],
                ));
            }
        }
        for p in a.iter() {
            for q in b.iter() {
                let cell = t.hyper_product(p, q).expect("in range");
                if !cell.is_subset_of(star).expect("same carrier") {
                    return Outcome::Fail(Counterexample::new(
                        format!("{p} o {q} is not contained in A*B"),
                        vec![p, q],
                        vec![a, b],
                    ));
                }
            }
        }
    }
    Outcome::Pass
}

fn sampled_monotone<R: Rng>(t: &HyperTable, rng: &mut R, samples: usize) -> Outcome {
    let carrier = t.carrier();
    let star = |x, y| t.star(x, y).expect("nonempty operands");
    let within = |x: Subset, y: Subset| x.is_subset_of(y).expect("same carrier");
    for _ in 0..samples {
        let big = random_subset(rng, carrier);
        let small = random_part(rng, big);
        let c = random_subset(rng, carrier);
        let d = c.union(random_subset(rng, carrier)).expect("same carrier");
        let holds = within(star(small, c), star(big, c))
            && within(star(c, small), star(c, big))
            && within(star(small, c), star(big, d))
            && within(star(c, small), star(d, big));
        if !holds {
            return Outcome::Fail(Counterexample::new(
                "A subset of B and C subset of D but a product is not monotone (subsets: A, B, C, D)",
                vec![],
                vec![small, big, c, d],
            ));
        }
    }
    Outcome::Pass
}

fn sampled_distributive<S: SubsetAlgebra, R: Rng>(alg: &S, rng: &mut R, samples: usize) -> Outcome {
    let carrier = alg.carrier();
    let prod = |x, y| alg.product(x, y).expect("nonempty operands");
    let union = |x: Subset, y: Subset| x.union(y).expect("same carrier");
    for _ in 0..samples {
        let a = random_subset(rng, carrier);
        let b = random_subset(rng, carrier);
        let c = random_subset(rng, carrier);
        let ab = union(a, b);
        if prod(ab, c) != union(prod(a, c), prod(b, c)) {
            return Outcome::Fail(Counterexample::new(
                "(A u B).C != A.C u B.C (subsets: A, B, C)",
                vec![],
                vec![a, b, c],
            ));
        }
        if prod(c, ab) != union(prod(c, a), prod(c, b)) {
            return Outcome::Fail(Counterexample::new(
                "C.(A u B) != C.A u C.B (subsets: A, B, C)",
                vec![],
                vec![a, b, c],
            ));
        }
    }
    Outcome::Pass
}

/// Per-check outcome counts over a sweep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
}

/// One failed check in a sweep, with the table that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepFailure {
    pub index: u128,
    pub check: CheckId,
    pub counterexample: Counterexample,
    pub structure: Structure,
}

/// Aggregate of [`verify_structure`] over every table of a shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub shape: Shape,
    pub config: HarnessConfig,
    pub scanned: u128,
    pub semigroups: u64,
    /// Hyper sweeps only.
    pub hypergroups: Option<u64>,
    /// Hyper sweeps only: bi-ideal-free hypersemigroups that are not hypergroups.
    pub problem_witnesses: Option<u64>,
    pub tallies: BTreeMap<CheckId, Tally>,
    pub failure_count: u64,
    /// The first failures by table index, at most [`MAX_RECORDED_FAILURES`].
    pub failures: Vec<SweepFailure>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Default)]
struct SweepAcc {
    scanned: u128,
    semigroups: u64,
    hypergroups: u64,
    witnesses: u64,
    tallies: BTreeMap<CheckId, Tally>,
    failure_count: u64,
    failures: Vec<SweepFailure>,
}

impl SweepAcc {
    fn merge(&mut self, other: SweepAcc) {
        self.scanned += other.scanned;
        self.semigroups += other.semigroups;
        self.hypergroups += other.hypergroups;
        self.witnesses += other.witnesses;
        for (id, t) in other.tallies {
            let mine = self.tallies.entry(id).or_default();
            mine.pass += t.pass;
            mine.fail += t.fail;
            mine.not_applicable += t.not_applicable;
        }
        self.failure_count += other.failure_count;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

/// Runs the harness over every table of `shape`.
pub fn verify_exhaustive(
    shape: Shape,
    budget: &Budget,
    config: &HarnessConfig,
    workers: usize,
) -> Result<SweepReport> {
    budget.admit(shape)?;
    let space = Space::new(shape)?;
    let start = Instant::now();
    let hyper = matches!(shape, Shape::Hyper { .. });
    let init = || {
        let ids: &[CheckId] = if hyper { &CheckId::HYPER } else { &CheckId::GAMMA };
        SweepAcc {
            tallies: ids.iter().map(|&id| (id, Tally::default())).collect(),
            ..SweepAcc::default()
        }
    };
    let acc = sweep(
        &space,
        workers,
        init,
        |acc, index, structure| {
            acc.scanned += 1;
            if structure.is_semigroup() {
                acc.semigroups += 1;
                if let Structure::Hyper(t) = &structure {
                    let hypergroup = t.is_hypergroup();
                    acc.hypergroups += u64::from(hypergroup);
                    if !hypergroup && ideals::has_no_proper_bi_ideals(t).unwrap_or(false) {
                        acc.witnesses += 1;
                    }
                }
            }
            for (id, outcome) in check_outcomes(&structure, config) {
                let tally = acc.tallies.entry(id).or_default();
                match outcome {
                    Outcome::Pass => tally.pass += 1,
                    Outcome::NotApplicable(_) => tally.not_applicable += 1,
                    Outcome::Fail(counterexample) => {
                        tally.fail += 1;
                        acc.failure_count += 1;
                        if acc.failures.len() < MAX_RECORDED_FAILURES {
                            acc.failures.push(SweepFailure {
                                index,
                                check: id,
                                counterexample,
                                structure: structure.clone(),
                            });
                        }
                    }
                }
            }
        },
        SweepAcc::merge,
    );
    Ok(SweepReport {
        shape,
        config: *config,
        scanned: acc.scanned,
        semigroups: acc.semigroups,
        hypergroups: hyper.then_some(acc.hypergroups),
        problem_witnesses: hyper.then_some(acc.witnesses),
        tallies: acc.tallies,
        failure_count: acc.failure_count,
        failures: acc.failures,
        elapsed: start.elapsed(),
    })
}
