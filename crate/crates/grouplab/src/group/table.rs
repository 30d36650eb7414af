//! Finite groups as dense multiplication tables over element indices `0..n`.
//!
//! Index 0 is always the identity. All counting loops in the rest of the crate
//! work directly on these tables.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::perm::Perm;

/// Default cap on the order of a materialized table. Overridable through the
/// `GROUPLAB_CAP` environment variable.
pub const DEFAULT_CAP: usize = 4096;

/// Orders up to this bound get a full associativity / homomorphism check;
/// larger tables are spot-checked on random triples.
pub const FULL_CHECK_ORDER: usize = 512;

const RANDOM_TRIPLES: usize = 10_000;

pub fn closure_cap() -> usize {
    std::env::var("GROUPLAB_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Clone, Debug)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    names: Vec<String>,
    generators: Vec<u32>,
    /// Set when the group was constructed from permutations of known degree.
    perm_degree: Option<usize>,
}

/// A subgroup of some ambient [`GroupTable`], stored as its sorted member set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    members: Vec<u32>,
}

impl Subgroup {
    pub fn from_sorted(members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub fn trivial() -> Self {
        Subgroup { members: vec![0] }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: u32) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct ConjClassPartition {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
    pub representatives: Vec<u32>,
}

impl ConjClassPartition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

/// Derived series, solvable radical and socle of a group.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub derived_series: Vec<Subgroup>,
    /// `None` marks a nonsolvable group.
    pub derived_length: Option<usize>,
    pub radical: Subgroup,
    pub socle: Subgroup,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn name(&self, g: u32) -> &str {
        &self.names[g as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn perm_degree(&self) -> Option<usize> {
        self.perm_degree
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.n as u32
    }

    /// `g^e` for any signed exponent.
    pub fn pow(&self, g: u32, e: i64) -> u32 {
        let base = if e < 0 { self.inv(g) } else { g };
        let mut e = e.unsigned_abs();
        let mut acc = 0u32;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: u32) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        self.elements().fold(1u64, |acc, g| {
            let o = self.element_order(g) as u64;
            acc / gcd(acc, o) * o
        })
    }

    pub fn is_abelian(&self) -> bool {
        for a in self.elements() {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Build a table from explicit data and verify the group axioms.
    pub fn from_parts(
        mul: Vec<u32>,
        names: Vec<String>,
        generators: Vec<u32>,
        perm_degree: Option<usize>,
    ) -> Result<Self> {
        let n = names.len();
        assert_eq!(mul.len(), n * n);
        let mut inv = vec![u32::MAX; n];
        for a in 0..n as u32 {
            if mul[a as usize * n] != a || mul[a as usize] != a {
                return Err(Error::NotBijective {
                    degree: n,
                    reason: "index 0 is not a two-sided identity".into(),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    if inv[a] != u32::MAX && inv[a] != b as u32 {
                        return Err(Error::NotBijective {
                            degree: n,
                            reason: "ambiguous inverse".into(),
                        });
                    }
                    inv[a] = b as u32;
                }
            }
            if inv[a] == u32::MAX {
                return Err(Error::NotBijective {
                    degree: n,
                    reason: format!("element {a} has no right inverse"),
                });
            }
        }
        let g = GroupTable {
            n,
            mul,
            inv,
            names,
            generators,
            perm_degree,
        };
        g.check_axioms()?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.n as u32;
        // Two-sided inverses.
        for a in 0..n {
            let i = self.inv(a);
            if self.mul(a, i) != 0 || self.mul(i, a) != 0 {
                return Err(Error::NotBijective {
                    degree: self.n,
                    reason: format!("inv[{a}] is not two-sided"),
                });
            }
        }
        let assoc = |a: u32, b: u32, c: u32| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if self.n <= FULL_CHECK_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::NotBijective {
                                degree: self.n,
                                reason: format!("associativity fails at ({a},{b},{c})"),
                            });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6c_ab);
            for _ in 0..RANDOM_TRIPLES {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                if !assoc(a, b, c) {
                    return Err(Error::NotBijective {
                        degree: self.n,
                        reason: format!("associativity fails at ({a},{b},{c})"),
                    });
                }
            }
        }
        // Generators generate everything.
        if !self.generators.is_empty() {
            let cl = self.closure_of(&self.generators);
            if cl.order() != self.n {
                return Err(Error::NotBijective {
                    degree: self.n,
                    reason: "declared generators do not generate the group".into(),
                });
            }
        }
        Ok(())
    }

    /// Cayley table of the permutation group generated by `gens`.
    pub fn from_permutations(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::NotBijective {
                    degree,
                    reason: "generator degree mismatch".into(),
                });
            }
        }
        let mut elems: Vec<Perm> = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, u32> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut frontier = 0usize;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            for g in gens {
                let next = cur.compose(g);
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(Error::ClosureExceeded { cap });
                    }
                    index.insert(next.clone(), elems.len() as u32);
                    elems.push(next);
                }
            }
            frontier += 1;
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * n + j] = index[&a.compose(b)];
            }
        }
        let names = elems.iter().map(|p| p.cycle_string()).collect();
        let gen_idx = gens.iter().filter_map(|g| index.get(g).copied()).collect();
        GroupTable::from_parts(mul, names, gen_idx, Some(degree))
    }

    /// Component-wise product of two tables.
    pub fn direct_product(a: &GroupTable, b: &GroupTable, cap: usize) -> Result<Self> {
        let n = a.n.checked_mul(b.n).filter(|&n| n <= cap).ok_or(Error::ClosureExceeded { cap })?;
        let idx = |x: u32, y: u32| (x as usize) * b.n + y as usize;
        let mut mul = vec![0u32; n * n];
        for xa in 0..a.n as u32 {
            for ya in 0..b.n as u32 {
                let p = idx(xa, ya);
                for xb in 0..a.n as u32 {
                    for yb in 0..b.n as u32 {
                        mul[p * n + idx(xb, yb)] = idx(a.mul(xa, xb), b.mul(ya, yb)) as u32;
                    }
                }
            }
        }
        let mut names = Vec::with_capacity(n);
        for xa in 0..a.n as u32 {
            for ya in 0..b.n as u32 {
                names.push(format!("({}|{})", a.name(xa), b.name(ya)));
            }
        }
        let mut generators: Vec<u32> = a.generators.iter().map(|&g| idx(g, 0) as u32).collect();
        generators.extend(b.generators.iter().map(|&g| idx(0, g) as u32));
        GroupTable::from_parts(mul, names, generators, None)
    }

    /// Subgroup generated by `gens` inside this table.
    pub fn closure_of(&self, gens: &[u32]) -> Subgroup {
        let mut in_set = vec![false; self.n];
        in_set[0] = true;
        let mut members = vec![0u32];
        let mut frontier = 0;
        while frontier < members.len() {
            let cur = members[frontier];
            for &g in gens {
                let next = self.mul(cur, g);
                if !in_set[next as usize] {
                    in_set[next as usize] = true;
                    members.push(next);
                }
            }
            frontier += 1;
        }
        members.sort_unstable();
        Subgroup::from_sorted(members)
    }

    pub fn conjugacy_classes(&self) -> ConjClassPartition {
        let mut class_of = vec![u32::MAX; self.n];
        let mut classes = Vec::new();
        let mut representatives = Vec::new();
        for x in self.elements() {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut class = Vec::new();
            for g in self.elements() {
                let y = self.conj(g, x);
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = id;
                    class.push(y);
                }
            }
            class.sort_unstable();
            representatives.push(x);
            classes.push(class);
        }
        ConjClassPartition {
            classes,
            class_of,
            representatives,
        }
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().count()
    }

    pub fn centralizer(&self, x: u32) -> Subgroup {
        let members = self
            .elements()
            .filter(|&y| self.mul(y, x) == self.mul(x, y))
            .collect();
        Subgroup::from_sorted(members)
    }

    pub fn center(&self) -> Subgroup {
        let members = self
            .elements()
            .filter(|&y| self.elements().all(|x| self.mul(y, x) == self.mul(x, y)))
            .collect();
        Subgroup::from_sorted(members)
    }

    /// Full subgroup lattice by closure-BFS with canonical dedup.
    pub fn subgroups(&self, order_cap: usize) -> Result<Vec<Subgroup>> {
        if self.n > order_cap {
            return Err(Error::GroupTooLarge {
                order: self.n,
                cap: order_cap,
            });
        }
        let mut seen: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
        let trivial = Subgroup::trivial();
        seen.insert(trivial.members.clone(), vec![]);
        let mut queue = vec![(trivial, Vec::<u32>::new())];
        let mut out = Vec::new();
        while let Some((sub, gens)) = queue.pop() {
            out.push(sub.clone());
            if sub.order() == self.n {
                continue;
            }
            for x in self.elements() {
                if sub.contains(x) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let bigger = self.closure_of(&g2);
                if !seen.contains_key(bigger.members()) {
                    seen.insert(bigger.members.clone(), g2.clone());
                    queue.push((bigger, g2));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        self.elements()
            .all(|g| sub.members().iter().all(|&x| sub.contains(self.conj(g, x))))
    }

    fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens: Vec<u32> = a.members().to_vec();
        gens.extend_from_slice(b.members());
        self.closure_of(&gens)
    }

    /// All normal subgroups, as joins of normal closures of conjugacy classes.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let classes = self.conjugacy_classes();
        let mut basis: Vec<Subgroup> = Vec::new();
        for class in &classes.classes {
            let cl = self.closure_of(class);
            if !basis.contains(&cl) {
                basis.push(cl);
            }
        }
        let mut all: Vec<Subgroup> = vec![Subgroup::trivial()];
        for b in &basis {
            if !all.contains(b) {
                all.push(b.clone());
            }
        }
        loop {
            let mut added = false;
            let snapshot = all.clone();
            for a in &snapshot {
                for b in &basis {
                    let j = self.join(a, b);
                    if !all.contains(&j) {
                        all.push(j);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        all.sort();
        all
    }

    /// Normal subgroups invariant under every supplied automorphism image array.
    pub fn characteristic_subgroups(&self, aut_images: &[Vec<u32>]) -> Vec<Subgroup> {
        self.normal_subgroups()
            .into_iter()
            .filter(|sub| {
                aut_images.iter().all(|img| {
                    sub.members().iter().all(|&x| sub.contains(img[x as usize]))
                })
            })
            .collect()
    }

    /// Quotient table plus the projection map element -> coset index.
    pub fn quotient(&self, nsub: &Subgroup) -> Result<(GroupTable, Vec<u32>)> {
        if !self.is_normal(nsub) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            for &x in nsub.members() {
                coset_of[self.mul(x, g) as usize] = id;
            }
            reps.push(g);
        }
        let k = reps.len();
        let mut mul = vec![0u32; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * k + j] = coset_of[self.mul(a, b) as usize];
            }
        }
        let names = reps.iter().map(|&r| format!("[{}]", self.name(r))).collect();
        let generators = (1..k as u32).collect::<Vec<_>>();
        let q = GroupTable::from_parts(mul, names, generators, None)?;
        Ok((q, coset_of))
    }

    /// The subgroup as a standalone table (identity stays at index 0).
    pub fn sub_table(&self, sub: &Subgroup) -> GroupTable {
        let members = sub.members();
        let k = members.len();
        let mut pos = HashMap::new();
        for (i, &m) in members.iter().enumerate() {
            pos.insert(m, i as u32);
        }
        let mut mul = vec![0u32; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                mul[i * k + j] = pos[&self.mul(a, b)];
            }
        }
        let names = members.iter().map(|&m| self.name(m).to_string()).collect();
        let sub_tab = GroupTable {
            n: k,
            mul,
            inv: members.iter().map(|&m| pos[&self.inv(m)]).collect(),
            names,
            generators: vec![],
            perm_degree: None,
        };
        let generators = sub_tab.small_generating_set();
        GroupTable {
            generators,
            ..sub_tab
        }
    }

    /// Commutator subgroup `[H, H]` of a subgroup given by its member set.
    pub fn derived_of(&self, sub: &Subgroup) -> Subgroup {
        let ms = sub.members();
        let mut gens = Vec::new();
        let mut seen = vec![false; self.n];
        for &a in ms {
            for &b in ms {
                let c = self.mul(
                    self.mul(a, b),
                    self.mul(self.inv(a), self.inv(b)),
                );
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    gens.push(c);
                }
            }
        }
        self.closure_of(&gens)
    }

    pub fn derived_series(&self) -> (Vec<Subgroup>, Option<usize>) {
        let whole = Subgroup::from_sorted(self.elements().collect());
        let mut series = vec![whole];
        loop {
            let next = self.derived_of(series.last().unwrap());
            if next.order() == series.last().unwrap().order() {
                break;
            }
            series.push(next);
        }
        let dl = if series.last().unwrap().is_trivial() {
            Some(series.len() - 1)
        } else {
            None
        };
        (series, dl)
    }

    pub fn is_solvable_subgroup(&self, sub: &Subgroup) -> bool {
        let mut cur = sub.clone();
        loop {
            let next = self.derived_of(&cur);
            if next.is_trivial() {
                return true;
            }
            if next.order() == cur.order() {
                return false;
            }
            cur = next;
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().1.is_some()
    }

    /// Simple: exactly two normal subgroups. (Trivial group is not simple.)
    pub fn is_simple(&self) -> bool {
        self.n > 1 && self.normal_subgroups().len() == 2
    }

    /// Derived series, solvable radical and socle.
    pub fn series_report(&self) -> Result<SeriesReport> {
        let (derived_series, derived_length) = self.derived_series();
        let normals = self.normal_subgroups();
        // Radical: iterated join of solvable normal subgroups.
        let mut radical = Subgroup::trivial();
        loop {
            let mut grew = false;
            for nsub in &normals {
                if nsub.order() > radical.order()
                    && self.is_solvable_subgroup(nsub)
                {
                    let j = self.join(&radical, nsub);
                    if j.order() > radical.order() && self.is_solvable_subgroup(&j) {
                        radical = j;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        // Socle: join of minimal nontrivial normal subgroups.
        let mut minimal: Vec<&Subgroup> = Vec::new();
        for nsub in &normals {
            if nsub.is_trivial() {
                continue;
            }
            let is_min = normals.iter().all(|other| {
                other.is_trivial()
                    || other == nsub
                    || !(other.order() < nsub.order()
                        && other.members().iter().all(|&x| nsub.contains(x)))
            });
            if is_min {
                minimal.push(nsub);
            }
        }
        let mut socle = Subgroup::trivial();
        for m in minimal {
            socle = self.join(&socle, m);
        }
        Ok(SeriesReport {
            derived_series,
            derived_length,
            radical,
            socle,
        })
    }

    /// A small generating set, chosen greedily by closure growth.
    pub fn small_generating_set(&self) -> Vec<u32> {
        if self.n == 1 {
            return vec![];
        }
        let mut gens: Vec<u32> = Vec::new();
        let mut closure = Subgroup::trivial();
        while closure.order() < self.n {
            let mut best: Option<(u32, Subgroup)> = None;
            for x in self.elements() {
                if closure.contains(x) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let cl = self.closure_of(&g2);
                let better = match &best {
                    None => true,
                    Some((_, b)) => cl.order() > b.order(),
                };
                if better {
                    let done = cl.order() == self.n;
                    best = Some((x, cl));
                    if done {
                        break;
                    }
                }
            }
            let (x, cl) = best.unwrap();
            gens.push(x);
            closure = cl;
        }
        gens
    }
}
