use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::AssociativityViolation;
use crate::format;
use crate::gamma::GammaTable;
use crate::hyper::HyperTable;
use crate::ideals::SubsetAlgebra;

/// Either kind of finite structure handled by the toolkit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Structure {
    Hyper(HyperTable),
    Gamma(GammaTable),
}

/// Shape of a table space: carrier size and, for gamma tables, `|Gamma|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Shape {
    Hyper { n: usize },
    Gamma { n: usize, k: usize },
}

impl Shape {
    pub fn n(self) -> usize {
        match self {
            Shape::Hyper { n } | Shape::Gamma { n, .. } => n,
        }
    }

    pub fn k(self) -> Option<usize> {
        match self {
            Shape::Hyper { .. } => None,
            Shape::Gamma { k, .. } => Some(k),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Hyper { n } => write!(f, "hyper n={n}"),
            Shape::Gamma { n, k } => write!(f, "gamma n={n} k={k}"),
        }
    }
}

impl Structure {
    pub fn shape(&self) -> Shape {
        match self {
            Structure::Hyper(t) => Shape::Hyper { n: t.size() },
            Structure::Gamma(t) => Shape::Gamma {
                n: t.size(),
                k: t.gamma_size(),
            },
        }
    }

    pub fn size(&self) -> usize {
        self.shape().n()
    }

    /// `"hypergroupoid"` or `"gamma-groupoid"`, as in structure files.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Structure::Hyper(_) => format::HYPER_KIND,
            Structure::Gamma(_) => format::GAMMA_KIND,
        }
    }

    /// The table as a subset algebra, for the ideal-theory deciders.
    pub fn algebra(&self) -> &dyn SubsetAlgebra {
        match self {
            Structure::Hyper(t) => t,
            Structure::Gamma(t) => t,
        }
    }

    /// Whether the defining associativity law holds (hypersemigroup or
    /// gamma-semigroup).
    pub fn is_semigroup(&self) -> bool {
        self.associativity_violation().is_none()
    }

    pub fn associativity_violation(&self) -> Option<AssociativityViolation> {
        match self {
            Structure::Hyper(t) => t.associativity_violation(),
            Structure::Gamma(t) => t.associativity_violation(),
        }
    }

    /// Relabels the carrier by `perm`; gamma tables also take a permutation
    /// of the gamma set (identity when `None`).
    pub fn relabel(&self, perm: &[usize], gamma_perm: Option<&[usize]>) -> crate::Result<Structure> {
        Ok(match self {
            Structure::Hyper(t) => Structure::Hyper(t.relabel(perm)?),
            Structure::Gamma(t) => {
                let identity: Vec<usize> = (0..t.gamma_size()).collect();
                Structure::Gamma(t.relabel(perm, gamma_perm.unwrap_or(&identity))?)
            }
        })
    }

    /// Table cells flattened in lexicographic position order; the
    /// canonical-form order compares these.
    pub fn key(&self) -> Vec<u64> {
        match self {
            Structure::Hyper(t) => t.masks().to_vec(),
            Structure::Gamma(t) => t.cells().iter().map(|&c| u64::from(c)).collect(),
        }
    }

    /// `sha256:<hex>` of the canonical structure file.
    pub fn digest(&self) -> String {
        format!("sha256:{:x}", Sha256::digest(format::to_json(self).as_bytes()))
    }

    /// 64-bit fingerprint used to derive per-structure sampling streams;
    /// stable across platforms and toolchains.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Sha256::new();
        h.update((self.size() as u64).to_le_bytes());
        h.update((self.shape().k().unwrap_or(0) as u64).to_le_bytes());
        for cell in self.key() {
            h.update(cell.to_le_bytes());
        }
        let digest = h.finalize();
        u64::from_le_bytes(digest[..8].try_into().expect("sha256 is 32 bytes"))
    }
}

impl From<HyperTable> for Structure {
    fn from(t: HyperTable) -> Self {
        Structure::Hyper(t)
    }
}

impl From<GammaTable> for Structure {
    fn from(t: GammaTable) -> Self {
        Structure::Gamma(t)
    }
}
