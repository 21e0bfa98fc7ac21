//! Naive reference implementation: tables as nested vectors, subsets as
//! `BTreeSet`s, every predicate read straight off its definition. Nothing
//! here touches the library's bit-level code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hyperbi::{GammaTable, HyperTable, Structure};

pub type Set = BTreeSet<usize>;

/// `t[a][b]` is the cell `a o b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NaiveHyper {
    pub n: usize,
    pub t: Vec<Vec<Set>>,
}

/// `t[a][g][b]` is `a g b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NaiveGamma {
    pub n: usize,
    pub k: usize,
    pub t: Vec<Vec<Vec<usize>>>,
}

pub fn full(n: usize) -> Set {
    (0..n).collect()
}

/// Nonempty subsets of `0..n`, each a sorted list.
pub fn nonempty_subsets(n: usize) -> Vec<Set> {
    let mut out: Vec<Set> = vec![Set::new()];
    for x in 0..n {
        let with: Vec<Set> = out
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.insert(x);
                s
            })
            .collect();
        out.extend(with);
    }
    out.retain(|s| !s.is_empty());
    out.sort();
    out
}

impl NaiveHyper {
    pub fn star(&self, a: &Set, b: &Set) -> Set {
        let mut out = Set::new();
        for &x in a {
            for &y in b {
                out.extend(self.t[x][y].iter().copied());
            }
        }
        out
    }

    pub fn is_hypersemigroup(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = self.star(&[x].into(), &self.t[y][z]);
                    let right = self.star(&self.t[x][y], &[z].into());
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_hypergroup(&self) -> bool {
        let n = self.n;
        (0..n).any(|e| {
            let identity = (0..n).all(|a| self.t[a][e] == [a].into() && self.t[e][a] == [a].into());
            identity
                && (0..n).all(|a| (0..n).any(|b| self.t[a][b] == [e].into() && self.t[b][a] == [e].into()))
        })
    }

    pub fn relabel(&self, p: &[usize]) -> NaiveHyper {
        let n = self.n;
        let mut t = vec![vec![Set::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                t[p[a]][p[b]] = self.t[a][b].iter().map(|&x| p[x]).collect();
            }
        }
        NaiveHyper { n, t }
    }

    pub fn to_table(&self) -> HyperTable {
        let carrier = hyperbi::Carrier::new(self.n).unwrap();
        HyperTable::from_fn(carrier, |a, b| carrier.subset(self.t[a][b].iter().copied()).unwrap()).unwrap()
    }

    pub fn from_table(t: &HyperTable) -> NaiveHyper {
        let n = t.size();
        let t = (0..n)
            .map(|a| (0..n).map(|b| t.hyper_product(a, b).unwrap().iter().collect()).collect())
            .collect();
        NaiveHyper { n, t }
    }
}

impl NaiveGamma {
    pub fn product(&self, a: &Set, b: &Set) -> Set {
        let mut out = Set::new();
        for &x in a {
            for g in 0..self.k {
                for &y in b {
                    out.insert(self.t[x][g][y]);
                }
            }
        }
        out
    }

    pub fn is_gamma_semigroup(&self) -> bool {
        let (n, k) = (self.n, self.k);
        for a in 0..n {
            for g in 0..k {
                for b in 0..n {
                    for m in 0..k {
                        for c in 0..n {
                            if self.t[a][g][self.t[b][m][c]] != self.t[self.t[a][g][b]][m][c] {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn relabel(&self, p: &[usize], q: &[usize]) -> NaiveGamma {
        let (n, k) = (self.n, self.k);
        let mut t = vec![vec![vec![0; n]; k]; n];
        for a in 0..n {
            for g in 0..k {
                for b in 0..n {
                    t[p[a]][q[g]][p[b]] = p[self.t[a][g][b]];
                }
            }
        }
        NaiveGamma { n, k, t }
    }

    pub fn to_table(&self) -> GammaTable {
        let carrier = hyperbi::Carrier::new(self.n).unwrap();
        GammaTable::from_fn(carrier, self.k, |a, g, b| self.t[a][g][b]).unwrap()
    }
}

/// The product used by the ideal predicates, over either kind.
pub trait NaiveAlgebra {
    fn n(&self) -> usize;
    fn mul(&self, a: &Set, b: &Set) -> Set;
    fn associative(&self) -> bool;
}

impl NaiveAlgebra for NaiveHyper {
    fn n(&self) -> usize {
        self.n
    }
    fn mul(&self, a: &Set, b: &Set) -> Set {
        self.star(a, b)
    }
    fn associative(&self) -> bool {
        self.is_hypersemigroup()
    }
}

impl NaiveAlgebra for NaiveGamma {
    fn n(&self) -> usize {
        self.n
    }
    fn mul(&self, a: &Set, b: &Set) -> Set {
        self.product(a, b)
    }
    fn associative(&self) -> bool {
        self.is_gamma_semigroup()
    }
}

pub fn is_left_ideal<A: NaiveAlgebra>(alg: &A, s: &Set) -> bool {
    alg.mul(&full(alg.n()), s).is_subset(s)
}

pub fn is_right_ideal<A: NaiveAlgebra>(alg: &A, s: &Set) -> bool {
    alg.mul(s, &full(alg.n())).is_subset(s)
}

pub fn is_bi_ideal<A: NaiveAlgebra>(alg: &A, s: &Set) -> bool {
    alg.mul(&alg.mul(s, &full(alg.n())), s).is_subset(s)
}

pub fn is_subsemigroup<A: NaiveAlgebra>(alg: &A, s: &Set) -> bool {
    alg.mul(s, s).is_subset(s)
}

pub fn ideals_where<A: NaiveAlgebra>(alg: &A, pred: impl Fn(&A, &Set) -> bool) -> Vec<Set> {
    nonempty_subsets(alg.n()).into_iter().filter(|s| pred(alg, s)).collect()
}

pub fn is_regular<A: NaiveAlgebra>(alg: &A) -> bool {
    let h = full(alg.n());
    (0..alg.n()).all(|a| {
        let single: Set = [a].into();
        alg.mul(&alg.mul(&single, &h), &single).contains(&a)
    })
}

/// Every hyper table on `n` elements, in the library's index order.
pub fn all_hyper(n: usize) -> Vec<NaiveHyper> {
    let subsets = nonempty_subsets_by_mask(n);
    let mut out = vec![Vec::new()];
    for _ in 0..n * n {
        let mut next = Vec::new();
        for prefix in &out {
            for s in &subsets {
                let mut p: Vec<Set> = prefix.clone();
                p.push(s.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|cells| NaiveHyper {
            n,
            t: cells.chunks(n).map(|r| r.to_vec()).collect(),
        })
        .collect()
}

/// Nonempty subsets ordered by their characteristic number, the order the
/// library's table index uses for cells.
fn nonempty_subsets_by_mask(n: usize) -> Vec<Set> {
    (1..1usize << n)
        .map(|m| (0..n).filter(|&x| m >> x & 1 == 1).collect())
        .collect()
}

/// Every gamma table on `n` elements with `|Gamma| = k`.
pub fn all_gamma(n: usize, k: usize) -> Vec<NaiveGamma> {
    let cells = n * k * n;
    let mut out = vec![Vec::new()];
    for _ in 0..cells {
        let mut next = Vec::new();
        for prefix in &out {
            for x in 0..n {
                let mut p: Vec<usize> = prefix.clone();
                p.push(x);
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|flat| NaiveGamma {
            n,
            k,
            t: flat.chunks(k * n).map(|row| row.chunks(n).map(|l| l.to_vec()).collect()).collect(),
        })
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Number of orbits of `items` under relabeling, found by partitioning.
pub fn orbit_count<T: Ord + Clone>(items: &[T], relabelings: impl Fn(&T) -> Vec<T>) -> usize {
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for item in items {
        if seen.contains(item) {
            continue;
        }
        orbits += 1;
        for image in relabelings(item) {
            seen.insert(image);
        }
    }
    orbits
}

pub fn hyper_orbits(items: &[NaiveHyper]) -> usize {
    let n = items.first().map_or(0, |t| t.n);
    let perms = permutations(n);
    orbit_count(items, |t| perms.iter().map(|p| t.relabel(p)).collect())
}

pub fn gamma_orbits(items: &[NaiveGamma]) -> usize {
    let Some(first) = items.first() else { return 0 };
    let (ps, qs) = (permutations(first.n), permutations(first.k));
    orbit_count(items, |t| {
        ps.iter().flat_map(|p| qs.iter().map(move |q| t.relabel(p, q))).collect()
    })
}

/// A hypersemigroup whose only bi-ideal is the carrier and which is not a hypergroup.
pub fn is_problem_witness(t: &NaiveHyper) -> bool {
    t.is_hypersemigroup() && ideals_where(t, is_bi_ideal) == vec![full(t.n)] && !t.is_hypergroup()
}

pub fn to_structure_hyper(t: &NaiveHyper) -> Structure {
    Structure::Hyper(t.to_table())
}
