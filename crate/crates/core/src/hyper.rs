//! Hypergroupoids: a table `a o b` of nonempty subsets and the induced
//! product `A * B` on nonempty subsets.

use serde::Serialize;

use crate::error::{AssociativityViolation, Error, Result};
use crate::ideals::SubsetAlgebra;
use crate::subset::{Carrier, Elements, Subset};

/// An `n x n` table of nonempty subsets, row-major.
///
/// Associativity is decided once at construction and cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperTable {
    carrier: Carrier,
    cells: Vec<u64>,
    violation: Option<[usize; 3]>,
}

/// Outcome of the hypergroup decider.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum HypergroupVerdict {
    Hypergroup {
        identity: usize,
        /// `inverses[a]` is the least `a'` with `a o a' = a' o a = {e}`.
        inverses: Vec<usize>,
        /// Further elements satisfying the identity law. Always empty in a
        /// hypersemigroup; anything here is a structural anomaly.
        other_identities: Vec<usize>,
    },
    NoIdentity,
    MissingInverse {
        identity: usize,
        element: usize,
    },
}

impl HypergroupVerdict {
    pub fn is_hypergroup(&self) -> bool {
        matches!(self, HypergroupVerdict::Hypergroup { .. })
    }

    pub fn reason(&self) -> String {
        match self {
            HypergroupVerdict::Hypergroup { identity, .. } => {
                format!("hypergroup with identity {identity}")
            }
            HypergroupVerdict::NoIdentity => "no element e with a o e = e o a = {a}".into(),
            HypergroupVerdict::MissingInverse { identity, element } => format!(
                "element {element} has no inverse with respect to identity {identity}"
            ),
        }
    }
}

impl HyperTable {
    /// Builds a table from row-major cells; every cell must be nonempty and
    /// over `carrier`.
    pub fn new(carrier: Carrier, cells: Vec<Subset>) -> Result<Self> {
        let n = carrier.size();
        if cells.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "expected {} cells, got {}",
                n * n,
                cells.len()
            )));
        }
        let mut masks = Vec::with_capacity(cells.len());
        for (i, cell) in cells.into_iter().enumerate() {
            if cell.carrier() != carrier {
                return Err(Error::CarrierMismatch {
                    left: n,
                    right: cell.carrier().size(),
                });
            }
            if cell.is_empty() {
                return Err(Error::MalformedTable(format!(
                    "cell ({}, {}) is empty",
                    i / n,
                    i % n
                )));
            }
            masks.push(cell.bits());
        }
        Self::from_masks(carrier, masks)
    }

    /// Builds a table from row-major bit masks.
    pub fn from_masks(carrier: Carrier, masks: Vec<u64>) -> Result<Self> {
        let n = carrier.size();
        if masks.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "expected {} cells, got {}",
                n * n,
                masks.len()
            )));
        }
        for (i, &m) in masks.iter().enumerate() {
            if m == 0 {
                return Err(Error::MalformedTable(format!(
                    "cell ({}, {}) is empty",
                    i / n,
                    i % n
                )));
            }
            carrier.subset_from_bits(m)?;
        }
        Ok(Self::from_masks_unchecked(carrier, masks))
    }

    pub(crate) fn from_masks_unchecked(carrier: Carrier, cells: Vec<u64>) -> Self {
        let mut table = HyperTable {
            carrier,
            cells,
            violation: None,
        };
        table.violation = table.find_violation();
        table
    }

    /// Table with `a o b = f(a, b)`.
    pub fn from_fn<F>(carrier: Carrier, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Subset,
    {
        let n = carrier.size();
        let cells = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(carrier, cells)
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    /// Row-major cell masks.
    pub fn masks(&self) -> &[u64] {
        &self.cells
    }

    #[inline]
    pub(crate) fn cell(&self, a: usize, b: usize) -> u64 {
        self.cells[a * self.carrier.size() + b]
    }

    /// The cell `a o b`.
    pub fn hyper_product(&self, a: usize, b: usize) -> Result<Subset> {
        self.carrier.check(a)?;
        self.carrier.check(b)?;
        Ok(self.carrier.subset_unchecked(self.cell(a, b)))
    }

    #[inline]
    pub(crate) fn star_bits(&self, a: u64, b: u64) -> u64 {
        let n = self.carrier.size();
        let mut out = 0;
        for x in Elements::of_bits(a) {
            let row = &self.cells[x * n..x * n + n];
            for y in Elements::of_bits(b) {
                out |= row[y];
            }
        }
        out
    }

    /// `A * B`, the union of `a o b` over `a` in `A` and `b` in `B`.
    pub fn star(&self, a: Subset, b: Subset) -> Result<Subset> {
        self.check_operand(a)?;
        self.check_operand(b)?;
        Ok(self.carrier.subset_unchecked(self.star_bits(a.bits(), b.bits())))
    }

    fn check_operand(&self, s: Subset) -> Result<()> {
        if s.carrier() != self.carrier {
            return Err(Error::CarrierMismatch {
                left: self.size(),
                right: s.carrier().size(),
            });
        }
        if s.is_empty() {
            return Err(Error::EmptyOperand("the hyperproduct *"));
        }
        Ok(())
    }

    /// Left fold of `*` over `parts`. Requires an associative table so the
    /// bracketing does not matter.
    pub fn star_chain(&self, parts: &[Subset]) -> Result<Subset> {
        if let Some(v) = self.associativity_violation() {
            return Err(Error::NotAssociative(v));
        }
        let (first, rest) = parts.split_first().ok_or(Error::EmptyChain)?;
        self.check_operand(*first)?;
        rest.iter().try_fold(*first, |acc, &part| self.star(acc, part))
    }

    fn find_violation(&self) -> Option<[usize; 3]> {
        let n = self.carrier.size();
        for x in 0..n {
            for y in 0..n {
                let xy = self.cell(x, y);
                for z in 0..n {
                    let left = self.star_bits(1 << x, self.cell(y, z));
                    let right = self.star_bits(xy, 1 << z);
                    if left != right {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    /// Lexicographically least `(x, y, z)` with `{x}*(y o z) != (x o y)*{z}`.
    pub fn associativity_violation(&self) -> Option<AssociativityViolation> {
        self.violation
            .map(|[x, y, z]| AssociativityViolation::Hyper { x, y, z })
    }

    pub fn is_hypersemigroup(&self) -> bool {
        self.violation.is_none()
    }

    /// Decides whether the hypersemigroup is a hypergroup. Every candidate
    /// identity is scanned.
    pub fn hypergroup(&self) -> Result<HypergroupVerdict> {
        if let Some(v) = self.associativity_violation() {
            return Err(Error::NotAssociative(v));
        }
        let n = self.size();
        let identities: Vec<usize> = (0..n)
            .filter(|&e| (0..n).all(|a| self.cell(a, e) == 1 << a && self.cell(e, a) == 1 << a))
            .collect();
        if identities.is_empty() {
            return Ok(HypergroupVerdict::NoIdentity);
        }
        let mut first_missing = None;
        for &e in &identities {
            let inverse_of = |a: usize| {
                (0..n).find(|&b| self.cell(a, b) == 1 << e && self.cell(b, a) == 1 << e)
            };
            match (0..n).map(inverse_of).collect::<Option<Vec<usize>>>() {
                Some(inverses) => {
                    return Ok(HypergroupVerdict::Hypergroup {
                        identity: e,
                        inverses,
                        other_identities: identities.iter().copied().filter(|&o| o != e).collect(),
                    })
                }
                None => {
                    first_missing.get_or_insert_with(|| HypergroupVerdict::MissingInverse {
                        identity: e,
                        element: (0..n).find(|&a| inverse_of(a).is_none()).unwrap_or(0),
                    });
                }
            }
        }
        Ok(first_missing.expect("at least one candidate identity was scanned"))
    }

    pub fn is_hypergroup(&self) -> bool {
        self.hypergroup().map(|v| v.is_hypergroup()).unwrap_or(false)
    }

    /// The table relabeled by `x -> perm[x]`: `perm(a) o' perm(b) = perm(a o b)`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.size())?;
        let n = self.size();
        let mut cells = vec![0u64; n * n];
        for a in 0..n {
            for b in 0..n {
                let image = self.carrier.subset_unchecked(self.cell(a, b)).map(perm);
                cells[perm[a] * n + perm[b]] = image.bits();
            }
        }
        Ok(Self::from_masks_unchecked(self.carrier, cells))
    }

    /// Cells as sorted element lists, row by row.
    pub fn to_rows(&self) -> Vec<Vec<Vec<usize>>> {
        let n = self.size();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| Elements::of_bits(self.cell(a, b)).collect())
                    .collect()
            })
            .collect()
    }
}

impl SubsetAlgebra for HyperTable {
    fn carrier(&self) -> Carrier {
        self.carrier
    }

    #[inline]
    fn pointwise_bits(&self, a: usize, b: usize) -> u64 {
        self.cell(a, b)
    }

    #[inline]
    fn product_bits(&self, a: u64, b: u64) -> u64 {
        self.star_bits(a, b)
    }

    fn associativity_violation(&self) -> Option<AssociativityViolation> {
        HyperTable::associativity_violation(self)
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::MalformedTable(format!(
            "permutation has length {}, expected {n}",
            perm.len()
        )));
    }
    let mut seen = 0u64;
    for &p in perm {
        if p >= n || seen >> p & 1 == 1 {
            return Err(Error::MalformedTable(format!("{perm:?} is not a permutation")));
        }
        seen |= 1 << p;
    }
    Ok(())
}

/// Small named tables used across the test suites and docs.
pub mod fixtures {
    use super::*;

    fn two() -> Carrier {
        Carrier::new(2).expect("2 is a valid carrier size")
    }

    /// `a o b = {0}` on two elements.
    pub fn constant2() -> HyperTable {
        HyperTable::from_masks(two(), vec![0b01; 4]).expect("valid table")
    }

    /// `a o b = {0, 1}` on two elements.
    pub fn full2() -> HyperTable {
        HyperTable::from_masks(two(), vec![0b11; 4]).expect("valid table")
    }

    /// `a o b = {b}` on two elements.
    pub fn right_projection2() -> HyperTable {
        HyperTable::from_masks(two(), vec![0b01, 0b10, 0b01, 0b10]).expect("valid table")
    }

    /// The one-element hypergroup.
    pub fn trivial() -> HyperTable {
        HyperTable::from_masks(Carrier::new(1).expect("valid"), vec![1]).expect("valid table")
    }

    /// The group Z2 viewed as a hypergroup.
    pub fn z2() -> HyperTable {
        HyperTable::from_masks(two(), vec![0b01, 0b10, 0b10, 0b01]).expect("valid table")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn set(n: usize, xs: &[usize]) -> Subset {
        Carrier::new(n).unwrap().subset(xs.iter().copied()).unwrap()
    }

    #[test]
    fn hyper_product_examples() {
        assert_eq!(constant2().hyper_product(1, 1).unwrap(), set(2, &[0]));
        assert_eq!(full2().hyper_product(0, 1).unwrap(), set(2, &[0, 1]));
        assert_eq!(right_projection2().hyper_product(0, 1).unwrap(), set(2, &[1]));
        assert!(matches!(
            full2().hyper_product(2, 0),
            Err(Error::OutOfRange { element: 2, n: 2 })
        ));
    }

    #[test]
    fn star_examples() {
        assert_eq!(full2().star(set(2, &[0]), set(2, &[0, 1])).unwrap(), set(2, &[0, 1]));
        assert_eq!(constant2().star(set(2, &[0, 1]), set(2, &[0, 1])).unwrap(), set(2, &[0]));
        assert_eq!(right_projection2().star(set(2, &[0, 1]), set(2, &[1])).unwrap(), set(2, &[1]));
    }

    #[test]
    fn star_rejects_empty_operands() {
        assert!(matches!(
            full2().star(set(2, &[]), set(2, &[0])),
            Err(Error::EmptyOperand(_))
        ));
        assert!(full2().star(set(2, &[0]), set(2, &[])).is_err());
        assert!(full2().star(set(3, &[0]), set(2, &[0])).is_err());
    }

    #[test]
    fn star_chain_examples() {
        let chain = [set(2, &[0]), set(2, &[1]), set(2, &[0])];
        assert_eq!(full2().star_chain(&chain).unwrap(), set(2, &[0, 1]));
        let ones = [set(2, &[1]); 3];
        assert_eq!(constant2().star_chain(&ones).unwrap(), set(2, &[0]));
        for t in [constant2(), full2(), right_projection2(), z2()] {
            assert_eq!(t.star_chain(&[set(2, &[1])]).unwrap(), set(2, &[1]));
        }
        assert!(matches!(full2().star_chain(&[]), Err(Error::EmptyChain)));
    }

    #[test]
    fn star_chain_rejects_non_associative_tables() {
        // 0 o 0 = {1}, everything else {0}; fails at (0, 0, 1)
        let t = HyperTable::from_masks(Carrier::new(2).unwrap(), vec![0b10, 0b01, 0b01, 0b01]).unwrap();
        assert!(!t.is_hypersemigroup());
        assert!(matches!(
            t.star_chain(&[set(2, &[0])]),
            Err(Error::NotAssociative(_))
        ));
    }

    #[test]
    fn associativity_examples() {
        assert!(constant2().is_hypersemigroup());
        assert!(full2().is_hypersemigroup());
        assert!(right_projection2().is_hypersemigroup());
        assert!(trivial().is_hypersemigroup());
    }

    #[test]
    fn violation_is_lexicographically_least() {
        let t = HyperTable::from_masks(Carrier::new(2).unwrap(), vec![0b10, 0b01, 0b01, 0b01]).unwrap();
        let v = t.associativity_violation().unwrap();
        // brute force the least failing triple directly
        let mut expected = None;
        'outer: for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let l = t.star(set(2, &[x]), t.hyper_product(y, z).unwrap()).unwrap();
                    let r = t.star(t.hyper_product(x, y).unwrap(), set(2, &[z])).unwrap();
                    if l != r {
                        expected = Some(AssociativityViolation::Hyper { x, y, z });
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(Some(v), expected);
    }

    #[test]
    fn hypergroup_examples() {
        assert_eq!(
            trivial().hypergroup().unwrap(),
            HypergroupVerdict::Hypergroup {
                identity: 0,
                inverses: vec![0],
                other_identities: vec![]
            }
        );
        assert_eq!(full2().hypergroup().unwrap(), HypergroupVerdict::NoIdentity);
        assert_eq!(constant2().hypergroup().unwrap(), HypergroupVerdict::NoIdentity);
        assert!(z2().is_hypergroup());
        assert!(!right_projection2().is_hypergroup());
    }

    #[test]
    fn hypergroup_requires_associativity() {
        let t = HyperTable::from_masks(Carrier::new(2).unwrap(), vec![0b10, 0b01, 0b01, 0b01]).unwrap();
        assert!(matches!(t.hypergroup(), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn missing_inverse_is_reported() {
        // {0,1} with 0 as identity and 1 o 1 = {1}: a monoid without inverses
        let t = HyperTable::from_masks(Carrier::new(2).unwrap(), vec![0b01, 0b10, 0b10, 0b10]).unwrap();
        assert!(t.is_hypersemigroup());
        assert_eq!(
            t.hypergroup().unwrap(),
            HypergroupVerdict::MissingInverse { identity: 0, element: 1 }
        );
    }

    #[test]
    fn construction_rejects_bad_cells() {
        let two = Carrier::new(2).unwrap();
        assert!(HyperTable::from_masks(two, vec![1, 1, 1]).is_err());
        assert!(HyperTable::from_masks(two, vec![1, 0, 1, 1]).is_err());
        assert!(HyperTable::from_masks(two, vec![1, 4, 1, 1]).is_err());
        assert!(HyperTable::new(two, vec![set(3, &[0]); 4]).is_err());
    }

    #[test]
    fn relabel_swaps_projection_sides_consistently() {
        let t = right_projection2();
        let swapped = t.relabel(&[1, 0]).unwrap();
        // still a right projection: a o b = {b}
        assert_eq!(swapped, t);
        assert!(t.relabel(&[0, 0]).is_err());
        assert_eq!(constant2().relabel(&[1, 0]).unwrap().masks(), &[0b10; 4]);
    }
}
