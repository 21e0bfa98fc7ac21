//! Ideal theory over any subset product that is the union of its pointwise
//! products. Hypergroupoids and gamma-groupoids both instantiate it.

use serde::{Deserialize, Serialize};

use crate::error::{AssociativityViolation, Error, Result};
use crate::gamma::GammaTable;
use crate::hyper::HyperTable;
use crate::subset::{enumerate_nonempty_subsets, Carrier, Elements, Subset};

/// A carrier together with a product on its nonempty subsets.
///
/// Implementors supply the product of two singletons; the product of larger
/// subsets is the union of those, which is what makes the product
/// distribute over union and keeps this module generic.
pub trait SubsetAlgebra {
    fn carrier(&self) -> Carrier;

    /// `{a} . {b}` as a bit mask. Never empty.
    fn pointwise_bits(&self, a: usize, b: usize) -> u64;

    /// Least tuple at which the instantiating structure's own associativity
    /// law fails, if any.
    fn associativity_violation(&self) -> Option<AssociativityViolation>;

    fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    #[inline]
    fn product_bits(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for x in Elements::of_bits(a) {
            for y in Elements::of_bits(b) {
                out |= self.pointwise_bits(x, y);
            }
        }
        out
    }

    fn product(&self, a: Subset, b: Subset) -> Result<Subset> {
        let a = operand(self, a, "a subset product")?;
        let b = operand(self, b, "a subset product")?;
        Ok(self.carrier().subset_unchecked(self.product_bits(a, b)))
    }
}

/// The ideal species recognised by [`enumerate_ideals`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealKind {
    LeftIdeal,
    RightIdeal,
    TwoSidedIdeal,
    BiIdeal,
    Subsemigroup,
    SubidempotentBiIdeal,
}

impl IdealKind {
    pub const ALL: [IdealKind; 6] = [
        IdealKind::LeftIdeal,
        IdealKind::RightIdeal,
        IdealKind::TwoSidedIdeal,
        IdealKind::BiIdeal,
        IdealKind::Subsemigroup,
        IdealKind::SubidempotentBiIdeal,
    ];

    pub fn needs_associativity(self) -> bool {
        matches!(self, IdealKind::BiIdeal | IdealKind::SubidempotentBiIdeal)
    }
}

fn operand<S: SubsetAlgebra + ?Sized>(alg: &S, s: Subset, what: &'static str) -> Result<u64> {
    if s.carrier() != alg.carrier() {
        return Err(Error::CarrierMismatch {
            left: alg.carrier().size(),
            right: s.carrier().size(),
        });
    }
    if s.is_empty() {
        return Err(Error::EmptyOperand(what));
    }
    Ok(s.bits())
}

fn require_associative<S: SubsetAlgebra + ?Sized>(alg: &S) -> Result<()> {
    match alg.associativity_violation() {
        Some(v) => Err(Error::NotAssociative(v)),
        None => Ok(()),
    }
}

#[inline]
fn within(a: u64, b: u64) -> bool {
    a & !b == 0
}

// Bit-level predicates; callers have already validated the operand.

fn subsemigroup_bits<S: SubsetAlgebra + ?Sized>(alg: &S, a: u64) -> bool {
    within(alg.product_bits(a, a), a)
}

fn left_ideal_bits<S: SubsetAlgebra + ?Sized>(alg: &S, a: u64) -> bool {
    within(alg.product_bits(alg.carrier().mask(), a), a)
}

fn right_ideal_bits<S: SubsetAlgebra + ?Sized>(alg: &S, a: u64) -> bool {
    within(alg.product_bits(a, alg.carrier().mask()), a)
}

fn bi_ideal_bits<S: SubsetAlgebra + ?Sized>(alg: &S, b: u64) -> bool {
    let bh = alg.product_bits(b, alg.carrier().mask());
    within(alg.product_bits(bh, b), b)
}

fn kind_bits<S: SubsetAlgebra + ?Sized>(alg: &S, kind: IdealKind, a: u64) -> bool {
    match kind {
        IdealKind::LeftIdeal => left_ideal_bits(alg, a),
        IdealKind::RightIdeal => right_ideal_bits(alg, a),
        IdealKind::TwoSidedIdeal => left_ideal_bits(alg, a) && right_ideal_bits(alg, a),
        IdealKind::BiIdeal => bi_ideal_bits(alg, a),
        IdealKind::Subsemigroup => subsemigroup_bits(alg, a),
        IdealKind::SubidempotentBiIdeal => bi_ideal_bits(alg, a) && subsemigroup_bits(alg, a),
    }
}

/// `A . A ⊆ A`.
pub fn is_subsemigroup<S: SubsetAlgebra + ?Sized>(alg: &S, a: Subset) -> Result<bool> {
    Ok(subsemigroup_bits(alg, operand(alg, a, "the subsemigroup test")?))
}

/// `H . A ⊆ A`.
pub fn is_left_ideal<S: SubsetAlgebra + ?Sized>(alg: &S, a: Subset) -> Result<bool> {
    Ok(left_ideal_bits(alg, operand(alg, a, "the left ideal test")?))
}

/// `A . H ⊆ A`.
pub fn is_right_ideal<S: SubsetAlgebra + ?Sized>(alg: &S, a: Subset) -> Result<bool> {
    Ok(right_ideal_bits(alg, operand(alg, a, "the right ideal test")?))
}

pub fn is_two_sided_ideal<S: SubsetAlgebra + ?Sized>(alg: &S, a: Subset) -> Result<bool> {
    let a = operand(alg, a, "the ideal test")?;
    Ok(left_ideal_bits(alg, a) && right_ideal_bits(alg, a))
}

/// `B . H . B ⊆ B`; needs associativity for the triple product to be
/// unambiguous.
pub fn is_bi_ideal<S: SubsetAlgebra + ?Sized>(alg: &S, b: Subset) -> Result<bool> {
    let b = operand(alg, b, "the bi-ideal test")?;
    require_associative(alg)?;
    Ok(bi_ideal_bits(alg, b))
}

pub fn is_subidempotent_bi_ideal<S: SubsetAlgebra + ?Sized>(alg: &S, b: Subset) -> Result<bool> {
    let b = operand(alg, b, "the bi-ideal test")?;
    require_associative(alg)?;
    Ok(bi_ideal_bits(alg, b) && subsemigroup_bits(alg, b))
}

pub fn is_ideal<S: SubsetAlgebra + ?Sized>(alg: &S, kind: IdealKind, a: Subset) -> Result<bool> {
    let a = operand(alg, a, "an ideal test")?;
    if kind.needs_associativity() {
        require_associative(alg)?;
    }
    Ok(kind_bits(alg, kind, a))
}

/// `L(b) = {b} ∪ H . {b}`, the least left ideal containing `b`.
pub fn principal_left_ideal<S: SubsetAlgebra + ?Sized>(alg: &S, b: usize) -> Result<Subset> {
    let carrier = alg.carrier();
    carrier.check(b)?;
    require_associative(alg)?;
    Ok(carrier.subset_unchecked(1 << b | alg.product_bits(carrier.mask(), 1 << b)))
}

/// `R(b) = {b} ∪ {b} . H`, the least right ideal containing `b`.
pub fn principal_right_ideal<S: SubsetAlgebra + ?Sized>(alg: &S, b: usize) -> Result<Subset> {
    let carrier = alg.carrier();
    carrier.check(b)?;
    require_associative(alg)?;
    Ok(carrier.subset_unchecked(1 << b | alg.product_bits(1 << b, carrier.mask())))
}

/// Every nonempty subset of the requested kind, ascending. Exponential in
/// the carrier size.
pub fn enumerate_ideals<S: SubsetAlgebra + ?Sized>(alg: &S, kind: IdealKind) -> Result<Vec<Subset>> {
    if kind.needs_associativity() {
        require_associative(alg)?;
    }
    Ok(enumerate_nonempty_subsets(alg.carrier())
        .filter(|s| kind_bits(alg, kind, s.bits()))
        .collect())
}

fn only_full<S: SubsetAlgebra + ?Sized>(alg: &S, kind: IdealKind) -> bool {
    let full = alg.carrier().mask();
    (1..full).all(|bits| !kind_bits(alg, kind, bits))
}

/// No left ideal other than the whole carrier; decided by enumeration.
pub fn is_left_simple<S: SubsetAlgebra + ?Sized>(alg: &S) -> bool {
    only_full(alg, IdealKind::LeftIdeal)
}

/// No right ideal other than the whole carrier; decided by enumeration.
pub fn is_right_simple<S: SubsetAlgebra + ?Sized>(alg: &S) -> bool {
    only_full(alg, IdealKind::RightIdeal)
}

/// True iff the only bi-ideal is the whole carrier.
pub fn has_no_proper_bi_ideals<S: SubsetAlgebra + ?Sized>(alg: &S) -> Result<bool> {
    require_associative(alg)?;
    Ok(only_full(alg, IdealKind::BiIdeal))
}

/// `H . {a} = H` for every `a`. Sufficient for left simplicity on any
/// algebra, equivalent to it on associative ones.
pub fn left_simple_criterion<S: SubsetAlgebra + ?Sized>(alg: &S) -> bool {
    let full = alg.carrier().mask();
    (0..alg.carrier().size()).all(|a| alg.product_bits(full, 1 << a) == full)
}

/// `{a} . H = H` for every `a`.
pub fn right_simple_criterion<S: SubsetAlgebra + ?Sized>(alg: &S) -> bool {
    let full = alg.carrier().mask();
    (0..alg.carrier().size()).all(|a| alg.product_bits(1 << a, full) == full)
}

/// `a ∈ {a} . H . {a}` for every `a`.
pub fn is_regular<S: SubsetAlgebra + ?Sized>(alg: &S) -> Result<bool> {
    require_associative(alg)?;
    let full = alg.carrier().mask();
    Ok((0..alg.carrier().size()).all(|a| {
        let around = alg.product_bits(alg.product_bits(1 << a, full), 1 << a);
        around >> a & 1 == 1
    }))
}

/// `A ⊆ A . H . A` for every nonempty `A`; decided by enumeration.
pub fn is_regular_subset_form<S: SubsetAlgebra + ?Sized>(alg: &S) -> Result<bool> {
    require_associative(alg)?;
    let full = alg.carrier().mask();
    Ok((1..=full).all(|a| within(a, alg.product_bits(alg.product_bits(a, full), a))))
}

/// Regularity for hypergroupoids: every `a` has an `x` with
/// `a ∈ (a o x) * {a}` or `a ∈ {a} * (x o a)`. No associativity needed.
pub fn is_regular_hypergroupoid_form(table: &HyperTable) -> bool {
    let n = table.size();
    (0..n).all(|a| {
        (0..n).any(|x| {
            table.star_bits(table.cell(a, x), 1 << a) >> a & 1 == 1
                || table.star_bits(1 << a, table.cell(x, a)) >> a & 1 == 1
        })
    })
}

/// Regularity for hypersemigroups: every `a` has an `x` with
/// `a ∈ (a o x) * {a}`.
pub fn is_regular_hypersemigroup_form(table: &HyperTable) -> Result<bool> {
    require_associative(table)?;
    let n = table.size();
    Ok((0..n).all(|a| (0..n).any(|x| table.star_bits(table.cell(a, x), 1 << a) >> a & 1 == 1)))
}

/// Regularity for gamma-semigroups, element form: every `a` has `x, g, m`
/// with `a = (a g x) m a`.
pub fn is_regular_gamma_form(table: &GammaTable) -> Result<bool> {
    require_associative(table)?;
    let (n, k) = (table.size(), table.gamma_size());
    let at = |a, g, b| table.apply(a, g, b).expect("indices in range");
    Ok((0..n).all(|a| {
        (0..n).any(|x| (0..k).any(|g| (0..k).any(|m| at(at(a, g, x), m, a) == a)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::fixtures::left_zero2;
    use crate::hyper::fixtures::{constant2, full2, right_projection2, trivial};

    fn set(n: usize, xs: &[usize]) -> Subset {
        Carrier::new(n).unwrap().subset(xs.iter().copied()).unwrap()
    }

    fn non_associative() -> HyperTable {
        HyperTable::from_masks(Carrier::new(2).unwrap(), vec![0b10, 0b01, 0b01, 0b01]).unwrap()
    }

    #[test]
    fn subsemigroup_examples() {
        assert!(!is_subsemigroup(&full2(), set(2, &[0])).unwrap());
        assert!(is_subsemigroup(&constant2(), set(2, &[0])).unwrap());
        for t in [full2(), constant2(), right_projection2(), non_associative()] {
            assert!(is_subsemigroup(&t, set(2, &[0, 1])).unwrap());
        }
        assert!(matches!(
            is_subsemigroup(&full2(), set(2, &[])),
            Err(Error::EmptyOperand(_))
        ));
    }

    #[test]
    fn left_ideal_examples() {
        assert!(is_left_ideal(&constant2(), set(2, &[0])).unwrap());
        for s in [set(2, &[0]), set(2, &[1]), set(2, &[0, 1])] {
            assert!(is_left_ideal(&right_projection2(), s).unwrap());
        }
        assert!(!is_left_ideal(&full2(), set(2, &[0])).unwrap());
        assert!(is_left_ideal(&full2(), set(2, &[])).is_err());
    }

    #[test]
    fn right_ideal_examples() {
        assert!(!is_right_ideal(&right_projection2(), set(2, &[0])).unwrap());
        assert!(is_right_ideal(&left_zero2(), set(2, &[0])).unwrap());
        for t in [full2(), constant2(), right_projection2()] {
            assert!(is_right_ideal(&t, set(2, &[0, 1])).unwrap());
        }
    }

    #[test]
    fn bi_ideal_examples() {
        for s in [set(2, &[0]), set(2, &[1]), set(2, &[0, 1])] {
            assert!(is_bi_ideal(&right_projection2(), s).unwrap());
        }
        assert!(!is_bi_ideal(&full2(), set(2, &[0])).unwrap());
        assert!(is_bi_ideal(&constant2(), set(2, &[0, 1])).unwrap());
        assert!(matches!(
            is_bi_ideal(&non_associative(), set(2, &[0])),
            Err(Error::NotAssociative(_))
        ));
        assert!(is_bi_ideal(&full2(), set(2, &[])).is_err());
    }

    #[test]
    fn subidempotent_examples() {
        for t in [full2(), constant2(), right_projection2()] {
            assert!(is_subidempotent_bi_ideal(&t, set(2, &[0, 1])).unwrap());
        }
        assert!(is_subidempotent_bi_ideal(&right_projection2(), set(2, &[0])).unwrap());
        assert!(is_subidempotent_bi_ideal(&non_associative(), set(2, &[0])).is_err());
    }

    #[test]
    fn principal_left_ideal_examples() {
        assert_eq!(principal_left_ideal(&constant2(), 1).unwrap(), set(2, &[0, 1]));
        assert_eq!(principal_left_ideal(&constant2(), 0).unwrap(), set(2, &[0]));
        for b in 0..2 {
            assert_eq!(principal_left_ideal(&right_projection2(), b).unwrap(), set(2, &[b]));
        }
        assert!(principal_left_ideal(&constant2(), 2).is_err());
        assert!(principal_left_ideal(&non_associative(), 0).is_err());
    }

    #[test]
    fn principal_right_ideal_examples() {
        assert_eq!(principal_right_ideal(&right_projection2(), 0).unwrap(), set(2, &[0, 1]));
        assert_eq!(principal_right_ideal(&constant2(), 1).unwrap(), set(2, &[0, 1]));
        assert_eq!(principal_right_ideal(&trivial(), 0).unwrap(), set(1, &[0]));
    }

    #[test]
    fn enumerate_ideals_examples() {
        assert_eq!(enumerate_ideals(&full2(), IdealKind::LeftIdeal).unwrap(), vec![set(2, &[0, 1])]);
        assert_eq!(
            enumerate_ideals(&right_projection2(), IdealKind::BiIdeal).unwrap(),
            vec![set(2, &[0]), set(2, &[1]), set(2, &[0, 1])]
        );
        assert_eq!(
            enumerate_ideals(&constant2(), IdealKind::LeftIdeal).unwrap(),
            vec![set(2, &[0]), set(2, &[0, 1])]
        );
        assert!(enumerate_ideals(&non_associative(), IdealKind::BiIdeal).is_err());
        assert!(enumerate_ideals(&non_associative(), IdealKind::LeftIdeal).is_ok());
    }

    #[test]
    fn two_sided_ideal_is_conjunction() {
        let t = right_projection2();
        for s in enumerate_nonempty_subsets(t.carrier()) {
            assert_eq!(
                is_two_sided_ideal(&t, s).unwrap(),
                is_left_ideal(&t, s).unwrap() && is_right_ideal(&t, s).unwrap()
            );
        }
        assert_eq!(
            enumerate_ideals(&t, IdealKind::TwoSidedIdeal).unwrap(),
            vec![set(2, &[0, 1])]
        );
    }

    #[test]
    fn simplicity_examples() {
        assert!(is_left_simple(&full2()));
        assert!(!is_left_simple(&right_projection2()));
        assert!(is_left_simple(&trivial()));
        assert!(is_right_simple(&full2()));
        assert!(is_right_simple(&right_projection2()));
        assert!(!is_right_simple(&left_zero2()));
        assert!(is_right_simple(&trivial()));
    }

    #[test]
    fn criterion_examples() {
        assert!(left_simple_criterion(&full2()));
        assert!(!left_simple_criterion(&constant2()));
        assert!(right_simple_criterion(&full2()));
        assert!(!right_simple_criterion(&constant2()));
        assert!(right_simple_criterion(&right_projection2()));
        assert!(!left_simple_criterion(&right_projection2()));
    }

    #[test]
    fn regularity_examples() {
        assert!(is_regular(&full2()).unwrap());
        assert!(!is_regular(&constant2()).unwrap());
        assert!(is_regular(&right_projection2()).unwrap());
        assert!(is_regular_subset_form(&full2()).unwrap());
        assert!(!is_regular_subset_form(&constant2()).unwrap());
        assert!(is_regular_hypergroupoid_form(&full2()));
        assert!(!is_regular_hypergroupoid_form(&constant2()));
        assert!(is_regular_gamma_form(&left_zero2()).unwrap());
        assert!(matches!(is_regular(&non_associative()), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn one_element_structures_are_degenerate_but_sensible() {
        let t = trivial();
        let full = set(1, &[0]);
        for kind in IdealKind::ALL {
            assert_eq!(enumerate_ideals(&t, kind).unwrap(), vec![full]);
        }
        assert!(is_left_simple(&t) && is_right_simple(&t));
        assert!(left_simple_criterion(&t) && right_simple_criterion(&t));
        assert!(is_regular(&t).unwrap() && is_regular_subset_form(&t).unwrap());
        assert!(has_no_proper_bi_ideals(&t).unwrap());
    }
}
