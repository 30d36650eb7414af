//! Wreath products base wr Sym_n, the coordinate equations for cubed cosets,
//! opportune-index machinery, and C-determination counting on tiny instances.

use crate::aut::Automorphism;
use crate::error::{Error, Result};
use crate::group::perm::Perm;
use crate::group::table::GroupTable;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

/// Largest materialized wreath table.
pub const MATERIALIZE_CAP: usize = 10_000_000;
/// Largest tuple space for inversion enumeration.
pub const TUPLE_CAP: usize = 1_000_000;

/// An element (t, sigma) of base wr Sym_n with the law
/// (t, sigma) (u, tau) = (t * sigma(u), sigma tau).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub tuple: Vec<u32>,
    pub perm: Perm,
}

pub struct WreathGroup<'a> {
    base: &'a GroupTable,
    n: usize,
}

impl<'a> WreathGroup<'a> {
    pub fn new(base: &'a GroupTable, n: usize) -> Result<Self> {
        let mut order = factorial(n);
        for _ in 0..n {
            order = order.saturating_mul(base.order() as u64);
        }
        if order > MATERIALIZE_CAP as u64 {
            return Err(Error::SizeExceeded(format!(
                "wreath order {order} exceeds cap {MATERIALIZE_CAP}"
            )));
        }
        Ok(WreathGroup { base, n })
    }

    pub fn base(&self) -> &GroupTable {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        (base_pow(self.base.order(), self.n) as u64) * factorial(self.n)
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            tuple: vec![0; self.n],
            perm: Perm::identity(self.n),
        }
    }

    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let sig_inv = x.perm.inverse();
        let tuple = (0..self.n)
            .map(|i| self.base.mul(x.tuple[i], y.tuple[sig_inv.apply(i)]))
            .collect();
        WreathElement {
            tuple,
            perm: x.perm.compose(&y.perm),
        }
    }

    pub fn inv(&self, x: &WreathElement) -> WreathElement {
        let tuple = (0..self.n)
            .map(|i| self.base.inv(x.tuple[x.perm.apply(i)]))
            .collect();
        WreathElement {
            tuple,
            perm: x.perm.inverse(),
        }
    }

    pub fn conj(&self, a: &WreathElement, x: &WreathElement) -> WreathElement {
        self.mul(&self.mul(a, x), &self.inv(a))
    }

    pub fn cube(&self, x: &WreathElement) -> WreathElement {
        self.mul(&self.mul(x, x), x)
    }

    /// All elements, identity first, in deterministic order.
    pub fn elements(&self) -> Vec<WreathElement> {
        let tuples = all_tuples(self.base.order(), self.n);
        let perms = all_perms(self.n);
        let mut out = Vec::with_capacity(tuples.len() * perms.len());
        for p in &perms {
            for t in &tuples {
                out.push(WreathElement {
                    tuple: t.clone(),
                    perm: p.clone(),
                });
            }
        }
        out
    }

    /// Materialize the multiplication table, identity at index 0.
    pub fn to_group_table(&self) -> Result<GroupTable> {
        let elems = self.elements();
        let n = elems.len();
        if n > 4096 {
            return Err(Error::SizeExceeded(format!(
                "wreath table of order {n} is too large to materialize"
            )));
        }
        let mut index: HashMap<WreathElement, u32> = HashMap::with_capacity(n);
        for (i, e) in elems.iter().enumerate() {
            index.insert(e.clone(), i as u32);
        }
        let mut mul = vec![0u32; n * n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                mul[i * n + j] = index[&self.mul(x, y)];
            }
        }
        let names = elems
            .iter()
            .map(|e| {
                let parts: Vec<&str> = e.tuple.iter().map(|&t| self.base.name(t)).collect();
                format!("({};{})", parts.join(","), e.perm.cycle_string())
            })
            .collect();
        GroupTable::from_parts(mul, names, Vec::new(), None)
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn base_pow(b: usize, n: usize) -> usize {
    let mut out = 1usize;
    for _ in 0..n {
        out = out.saturating_mul(b);
    }
    out
}

fn all_tuples(base_order: usize, n: usize) -> Vec<Vec<u32>> {
    let total = base_pow(base_order, n);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0u32; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if (cur[i] as usize) < base_order {
                break;
            }
            cur[i] = 0;
        }
    }
}

fn all_perms(n: usize) -> Vec<Perm> {
    let mut images: Vec<u16> = (0..n as u16).collect();
    let mut out = vec![Perm::from_images(images.clone()).unwrap()];
    // Heap's algorithm.
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                images.swap(0, i);
            } else {
                images.swap(c[i], i);
            }
            out.push(Perm::from_images(images.clone()).unwrap());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct OpportuneFamily {
    pub n: usize,
    pub opportune: Vec<usize>,
    pub family: Vec<Vec<usize>>,
}

/// The opportune index set O_i = {i, sa^{-1}(i), sb^{-1}(i), sb^{-2}(i)}.
fn opportune_set(sa: &Perm, sb: &Perm, i: usize) -> BTreeSet<usize> {
    let sa_inv = sa.inverse();
    let sb_inv = sb.inverse();
    let mut o = BTreeSet::new();
    o.insert(i);
    o.insert(sa_inv.apply(i));
    o.insert(sb_inv.apply(i));
    o.insert(sb_inv.apply(sb_inv.apply(i)));
    o
}

/// Greedy family of pairwise disjoint opportune index sets: pick the least
/// remaining opportune index, take its set, and drop the set together with
/// its images under sa, sb and sb^2 from the pool. Each step removes at
/// most 16 indices, so the family has at least ceil(M/16) members.
pub fn opportune_family(sa: &Perm, sb: &Perm) -> OpportuneFamily {
    assert_eq!(sa.degree(), sb.degree());
    let n = sa.degree();
    let mut pool: BTreeSet<usize> = (0..n)
        .filter(|&i| sa.apply(i) != i || sb.apply(i) != i)
        .collect();
    let opportune: Vec<usize> = pool.iter().copied().collect();
    let mut family = Vec::new();
    while let Some(&i) = pool.iter().next() {
        let o = opportune_set(sa, sb, i);
        let mut removal: BTreeSet<usize> = BTreeSet::new();
        for &j in &o {
            removal.insert(j);
            removal.insert(sa.apply(j));
            removal.insert(sb.apply(j));
            removal.insert(sb.apply(sb.apply(j)));
        }
        for j in removal {
            pool.remove(&j);
        }
        family.push(o.into_iter().collect());
    }
    OpportuneFamily {
        n,
        opportune,
        family,
    }
}

/// The coordinate-wise cubing condition for k with trivial permutation part:
/// for every i, a_i(k_{sa^{-1}(i)}) = k_i * b_i(k_{sb^{-1}(i)})
/// * (b_i b_{sb^{-1}(i)})(k_{sb^{-2}(i)}), where a_i and b_i act by
/// conjugation in the base. Equivalent to alpha(k beta) = (k beta)^3 in the
/// ambient wreath group whenever alpha(beta) = beta^3.
pub fn coordinate_condition(
    w: &WreathGroup,
    alpha: &WreathElement,
    beta: &WreathElement,
    k: &WreathElement,
) -> Result<bool> {
    if !k.perm.is_identity() {
        return Err(Error::PermNotTrivial);
    }
    let g = w.base();
    let sa_inv = alpha.perm.inverse();
    let sb_inv = beta.perm.inverse();
    for i in 0..w.degree() {
        let lhs = g.conj(alpha.tuple[i], k.tuple[sa_inv.apply(i)]);
        let j = sb_inv.apply(i);
        let jj = sb_inv.apply(j);
        let term2 = g.conj(beta.tuple[i], k.tuple[j]);
        let term3 = g.conj(g.mul(beta.tuple[i], beta.tuple[j]), k.tuple[jj]);
        let rhs = g.mul(g.mul(k.tuple[i], term2), term3);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeterminationReport {
    pub i_set: Vec<usize>,
    pub c: usize,
    pub k_size: usize,
    pub k_beta_size: usize,
    pub bound: f64,
    pub holds: bool,
}

/// Smallest C such that k_beta is C-determined by the index set, together
/// with the bound |K_beta| <= (C / s^{n - |I|}) |K|.
pub fn c_determination_ratio(
    k_members: &[Vec<u32>],
    k_beta_members: &[Vec<u32>],
    i_set: &[usize],
    s_order: usize,
    n: usize,
) -> Result<DeterminationReport> {
    if k_members.len() > 1_000_000 {
        return Err(Error::SizeExceeded("K too large to scan".into()));
    }
    let mut fibers: HashMap<Vec<u32>, usize> = HashMap::new();
    for k in k_beta_members {
        let key: Vec<u32> = i_set.iter().map(|&i| k[i]).collect();
        *fibers.entry(key).or_insert(0) += 1;
    }
    let c = fibers.values().copied().max().unwrap_or(0);
    let bound =
        (c as f64 / (s_order as f64).powi((n - i_set.len()) as i32)) * k_members.len() as f64;
    Ok(DeterminationReport {
        i_set: i_set.to_vec(),
        c,
        k_size: k_members.len(),
        k_beta_size: k_beta_members.len(),
        bound,
        holds: k_beta_members.len() as f64 <= bound + 1e-9,
    })
}

/// Tuples of base^n inverted by (a_1 x ... x a_n) composed with the n-cycle
/// (1 2 ... n), counted by brute force and by the one-free-coordinate
/// recursion s_i = (a_i(s_{i-1}))^{-1} with closing check a_1(s_n) = s_1^{-1}.
pub fn ncycle_inversion_count(
    base: &GroupTable,
    alphas: &[Automorphism],
) -> Result<(usize, Vec<Vec<u32>>)> {
    let n = alphas.len();
    assert!(n >= 1);
    if base_pow(base.order(), n) > TUPLE_CAP {
        return Err(Error::SizeExceeded("tuple space too large".into()));
    }
    let inverted = |s: &[u32]| {
        (0..n).all(|i| {
            let prev = s[(i + n - 1) % n];
            alphas[i].apply(prev) == base.inv(s[i])
        })
    };
    let brute: Vec<Vec<u32>> = all_tuples(base.order(), n)
        .into_iter()
        .filter(|s| inverted(s))
        .collect();
    let mut recursed = Vec::new();
    for s0 in base.elements() {
        let mut s = vec![s0];
        for i in 1..n {
            let prev = s[i - 1];
            s.push(base.inv(alphas[i].apply(prev)));
        }
        if alphas[0].apply(s[n - 1]) == base.inv(s[0]) {
            recursed.push(s);
        }
    }
    if brute != recursed {
        return Err(Error::PreconditionViolated(
            "inversion recursion disagrees with brute force".into(),
        ));
    }
    Ok((brute.len(), brute))
}

#[derive(Clone, Debug, Serialize)]
pub struct SurvivorReport {
    pub counts: Vec<usize>,
    pub base_order: usize,
    pub strict: bool,
}

/// Count s with alpha(s) = s * (tau_kappa beta)(s) * (tau_{kappa beta(kappa)}
/// beta^2)(s) for each coordinate. For a centerless nonsolvable base the
/// count is at most |base| - 1 in every coordinate.
pub fn coset_survivor_fraction(
    base: &GroupTable,
    kappas: &[u32],
    alphas: &[Automorphism],
    betas: &[Automorphism],
) -> SurvivorReport {
    let n = kappas.len();
    assert_eq!(alphas.len(), n);
    assert_eq!(betas.len(), n);
    let mut counts = Vec::with_capacity(n);
    for i in 0..n {
        let kappa = kappas[i];
        let alpha = &alphas[i];
        let beta = &betas[i];
        let c2 = base.mul(kappa, beta.apply(kappa));
        let count = base
            .elements()
            .filter(|&s| {
                let t1 = base.conj(kappa, beta.apply(s));
                let t2 = base.conj(c2, beta.apply(beta.apply(s)));
                alpha.apply(s) == base.mul(base.mul(s, t1), t2)
            })
            .count();
        counts.push(count);
    }
    let strict = base.center().order() == 1 && !base.is_solvable();
    SurvivorReport {
        counts,
        base_order: base.order(),
        strict,
    }
}
