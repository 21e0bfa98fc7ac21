//! Gamma-groupoids: a map `(a, g, b) -> a g b` from `M x Gamma x M` into `M`
//! and the set product `A Gamma B`.

use crate::error::{AssociativityViolation, Error, Result};
use crate::hyper::check_permutation;
use crate::ideals::SubsetAlgebra;
use crate::subset::{Carrier, Elements, Subset};

/// Cells are indexed `(a * k + g) * n + b`.
///
/// The gamma set is the index range `0..k` and carries no structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaTable {
    carrier: Carrier,
    gamma_size: usize,
    cells: Vec<u8>,
    /// `collapsed[a * n + b]` is `{a g b : g in Gamma}`.
    collapsed: Vec<u64>,
    violation: Option<[usize; 5]>,
}

impl GammaTable {
    pub fn new(carrier: Carrier, gamma_size: usize, cells: Vec<usize>) -> Result<Self> {
        let n = carrier.size();
        if gamma_size == 0 {
            return Err(Error::EmptyGamma);
        }
        if cells.len() != n * gamma_size * n {
            return Err(Error::MalformedTable(format!(
                "expected {} cells, got {}",
                n * gamma_size * n,
                cells.len()
            )));
        }
        let mut bytes = Vec::with_capacity(cells.len());
        for c in cells {
            carrier.check(c)?;
            bytes.push(c as u8);
        }
        Ok(Self::from_bytes_unchecked(carrier, gamma_size, bytes))
    }

    pub(crate) fn from_bytes_unchecked(carrier: Carrier, gamma_size: usize, cells: Vec<u8>) -> Self {
        let n = carrier.size();
        let mut collapsed = vec![0u64; n * n];
        for a in 0..n {
            for g in 0..gamma_size {
                for b in 0..n {
                    collapsed[a * n + b] |= 1 << cells[(a * gamma_size + g) * n + b];
                }
            }
        }
        let mut table = GammaTable {
            carrier,
            gamma_size,
            cells,
            collapsed,
            violation: None,
        };
        table.violation = table.find_violation();
        table
    }

    /// Table with `a g b = f(a, g, b)`.
    pub fn from_fn<F>(carrier: Carrier, gamma_size: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> usize,
    {
        let n = carrier.size();
        let mut cells = Vec::with_capacity(n * gamma_size * n);
        for a in 0..n {
            for g in 0..gamma_size {
                for b in 0..n {
                    cells.push(f(a, g, b));
                }
            }
        }
        Self::new(carrier, gamma_size, cells)
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn gamma_size(&self) -> usize {
        self.gamma_size
    }

    /// Cells in `(a, g, b)` lexicographic order.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    #[inline]
    fn at(&self, a: usize, g: usize, b: usize) -> usize {
        self.cells[(a * self.gamma_size + g) * self.carrier.size() + b] as usize
    }

    /// `a g b`.
    pub fn apply(&self, a: usize, g: usize, b: usize) -> Result<usize> {
        self.carrier.check(a)?;
        self.carrier.check(b)?;
        if g >= self.gamma_size {
            return Err(Error::OutOfRange {
                element: g,
                n: self.gamma_size,
            });
        }
        Ok(self.at(a, g, b))
    }

    #[inline]
    pub(crate) fn product_bits(&self, a: u64, b: u64) -> u64 {
        let n = self.carrier.size();
        let mut out = 0;
        for x in Elements::of_bits(a) {
            let row = &self.collapsed[x * n..x * n + n];
            for y in Elements::of_bits(b) {
                out |= row[y];
            }
        }
        out
    }

    /// `A Gamma B = {a g b : a in A, g in Gamma, b in B}`.
    pub fn gamma_product(&self, a: Subset, b: Subset) -> Result<Subset> {
        for s in [a, b] {
            if s.carrier() != self.carrier {
                return Err(Error::CarrierMismatch {
                    left: self.size(),
                    right: s.carrier().size(),
                });
            }
            if s.is_empty() {
                return Err(Error::EmptyOperand("the gamma product"));
            }
        }
        Ok(self.carrier.subset_unchecked(self.product_bits(a.bits(), b.bits())))
    }

    fn find_violation(&self) -> Option<[usize; 5]> {
        let n = self.carrier.size();
        let k = self.gamma_size;
        for a in 0..n {
            for g in 0..k {
                for b in 0..n {
                    let ab = self.at(a, g, b);
                    for m in 0..k {
                        for c in 0..n {
                            if self.at(a, g, self.at(b, m, c)) != self.at(ab, m, c) {
                                return Some([a, g, b, m, c]);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Lexicographically least `(a, g, b, m, c)` with
    /// `a g (b m c) != (a g b) m c`.
    pub fn associativity_violation(&self) -> Option<AssociativityViolation> {
        self.violation
            .map(|[a, gamma, b, mu, c]| AssociativityViolation::Gamma { a, gamma, b, mu, c })
    }

    pub fn is_gamma_semigroup(&self) -> bool {
        self.violation.is_none()
    }

    /// Relabels the carrier by `perm` and the gamma set by `gamma_perm`.
    pub fn relabel(&self, perm: &[usize], gamma_perm: &[usize]) -> Result<Self> {
        let n = self.size();
        let k = self.gamma_size;
        check_permutation(perm, n)?;
        check_permutation(gamma_perm, k)?;
        let mut cells = vec![0u8; self.cells.len()];
        for a in 0..n {
            for g in 0..k {
                for b in 0..n {
                    cells[(perm[a] * k + gamma_perm[g]) * n + perm[b]] = perm[self.at(a, g, b)] as u8;
                }
            }
        }
        Ok(Self::from_bytes_unchecked(self.carrier, k, cells))
    }

    /// `rows[a][g][b] = a g b`.
    pub fn to_rows(&self) -> Vec<Vec<Vec<usize>>> {
        let (n, k) = (self.size(), self.gamma_size);
        (0..n)
            .map(|a| (0..k).map(|g| (0..n).map(|b| self.at(a, g, b)).collect()).collect())
            .collect()
    }
}

impl SubsetAlgebra for GammaTable {
    fn carrier(&self) -> Carrier {
        self.carrier
    }

    #[inline]
    fn pointwise_bits(&self, a: usize, b: usize) -> u64 {
        self.collapsed[a * self.carrier.size() + b]
    }

    #[inline]
    fn product_bits(&self, a: u64, b: u64) -> u64 {
        GammaTable::product_bits(self, a, b)
    }

    fn associativity_violation(&self) -> Option<AssociativityViolation> {
        GammaTable::associativity_violation(self)
    }
}

/// Small named tables used across the test suites.
pub mod fixtures {
    use super::*;

    /// `a g b = a` on two elements with a single gamma.
    pub fn left_zero2() -> GammaTable {
        GammaTable::from_fn(Carrier::new(2).expect("valid"), 1, |a, _, _| a).expect("valid table")
    }

    /// The one-element gamma-semigroup with `k` gammas.
    pub fn trivial(k: usize) -> GammaTable {
        GammaTable::from_fn(Carrier::new(1).expect("valid"), k, |_, _, _| 0).expect("valid table")
    }
}
