//! Explicit PGammaL2(q) = PGL2(q) semidirect Gal(F_q/F_p) in the normalized
//! matrix representation, with closed-form cubing and conjugation and exact
//! L3 counting for inner automorphisms.

use crate::error::{Error, Result};
use crate::ff::field::{split_prime_power, FqField};
use crate::group::table::GroupTable;
use serde::Serialize;
use std::collections::HashMap;

/// Largest q for which a group handle is constructed.
pub const Q_CAP: u64 = 1 << 13;
/// Largest q for which full L3 scans are attempted.
pub const SCAN_CAP: u64 = 512;

/// A normalized element of PGammaL2(q): a projective 2x2 matrix together
/// with a Frobenius power. The matrix satisfies d = 1, or d = 0 and b = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GammaL2Element {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub m: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodCount {
    pub q: u64,
    pub conjugator: GammaL2Element,
    pub count: usize,
    pub bound: f64,
}

pub struct GammaL2Group {
    field: FqField,
    k: u32,
}

impl GammaL2Group {
    pub fn new(q: u64) -> Result<Self> {
        if q > Q_CAP {
            return Err(Error::SizeExceeded(format!(
                "q = {q} exceeds the PGammaL2 cap {Q_CAP}"
            )));
        }
        let (_, k) = split_prime_power(q)?;
        let field = FqField::from_order(q)?;
        Ok(GammaL2Group { field, k })
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn frobenius_degree(&self) -> u32 {
        self.k
    }

    /// (q^3 - q) * K.
    pub fn order(&self) -> u64 {
        let q = self.q();
        (q * q * q - q) * self.k as u64
    }

    pub fn identity(&self) -> GammaL2Element {
        GammaL2Element {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
            m: 0,
        }
    }

    /// Scale the matrix so that d = 1, or d = 0 and b = 1.
    pub fn normalize(&self, a: u64, b: u64, c: u64, d: u64, m: u32) -> GammaL2Element {
        let f = &self.field;
        let s = if d != 0 {
            f.inv(d)
        } else {
            debug_assert!(b != 0, "singular matrix cannot be normalized");
            f.inv(b)
        };
        GammaL2Element {
            a: f.mul(a, s),
            b: f.mul(b, s),
            c: f.mul(c, s),
            d: f.mul(d, s),
            m: m % self.k,
        }
    }

    pub fn det(&self, x: &GammaL2Element) -> u64 {
        let f = &self.field;
        f.sub(f.mul(x.a, x.d), f.mul(x.b, x.c))
    }

    /// Semilinear product (A, Frob^M)(B, Frob^N) = (A Frob^M(B), Frob^{M+N}).
    pub fn mul(&self, x: &GammaL2Element, y: &GammaL2Element) -> GammaL2Element {
        let f = &self.field;
        let e = f.frob_iter(y.a, x.m);
        let ff = f.frob_iter(y.b, x.m);
        let g = f.frob_iter(y.c, x.m);
        let h = f.frob_iter(y.d, x.m);
        let a = f.add(f.mul(x.a, e), f.mul(x.b, g));
        let b = f.add(f.mul(x.a, ff), f.mul(x.b, h));
        let c = f.add(f.mul(x.c, e), f.mul(x.d, g));
        let d = f.add(f.mul(x.c, ff), f.mul(x.d, h));
        self.normalize(a, b, c, d, (x.m + y.m) % self.k)
    }

    pub fn inv(&self, x: &GammaL2Element) -> GammaL2Element {
        let f = &self.field;
        let n = (self.k - x.m % self.k) % self.k;
        // The projective inverse of the matrix part is its adjugate.
        let a = f.frob_iter(x.d, n);
        let b = f.frob_iter(f.neg(x.b), n);
        let c = f.frob_iter(f.neg(x.c), n);
        let d = f.frob_iter(x.a, n);
        self.normalize(a, b, c, d, n)
    }

    /// All normalized elements, identity first.
    pub fn elements(&self) -> Vec<GammaL2Element> {
        let q = self.q();
        let mut out = Vec::with_capacity(self.order() as usize);
        out.push(self.identity());
        for m in 0..self.k {
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        // d = 1, so the determinant is a - bc.
                        if a == self.field.mul(b, c) {
                            continue;
                        }
                        let e = GammaL2Element { a, b, c, d: 1, m };
                        if e != self.identity() {
                            out.push(e);
                        }
                    }
                }
            }
            for a in 0..q {
                for c in 1..q {
                    out.push(GammaL2Element {
                        a,
                        b: 1,
                        c,
                        d: 0,
                        m,
                    });
                }
            }
        }
        debug_assert_eq!(out.len() as u64, self.order());
        out
    }

    /// Admissible Frobenius powers with psi^2 = id: {0} for K odd,
    /// {0, K/2} for K even.
    pub fn psi_constraint_filter(&self) -> Vec<u32> {
        if self.k % 2 == 0 {
            vec![0, self.k / 2]
        } else {
            vec![0]
        }
    }

    fn psi_involutory(&self, m: u32) -> bool {
        (2 * m) % self.k == 0
    }

    pub fn cube_generic(&self, x: &GammaL2Element) -> GammaL2Element {
        self.mul(&self.mul(x, x), x)
    }

    /// Closed-form cube for psi^2 = id; generic triple product otherwise.
    pub fn cube(&self, x: &GammaL2Element) -> GammaL2Element {
        if !self.psi_involutory(x.m) {
            return self.cube_generic(x);
        }
        let f = &self.field;
        let (e, ff, g, h) = (x.a, x.b, x.c, x.d);
        let ps = |v: u64| f.frob_iter(v, x.m);
        let sum4 = |t1: u64, t2: u64, t3: u64, t4: u64| f.add(f.add(t1, t2), f.add(t3, t4));
        let m11 = sum4(
            f.mul(f.mul(e, e), ps(e)),
            f.mul(f.mul(e, ff), ps(g)),
            f.mul(f.mul(e, g), ps(ff)),
            f.mul(f.mul(ff, g), ps(h)),
        );
        let m21 = sum4(
            f.mul(f.mul(e, g), ps(e)),
            f.mul(f.mul(e, h), ps(g)),
            f.mul(f.mul(g, g), ps(ff)),
            f.mul(f.mul(g, h), ps(h)),
        );
        let m12 = sum4(
            f.mul(f.mul(e, ff), ps(e)),
            f.mul(f.mul(ff, ff), ps(g)),
            f.mul(f.mul(e, h), ps(ff)),
            f.mul(f.mul(ff, h), ps(h)),
        );
        let m22 = sum4(
            f.mul(f.mul(ff, g), ps(e)),
            f.mul(f.mul(ff, h), ps(g)),
            f.mul(f.mul(g, h), ps(ff)),
            f.mul(f.mul(h, h), ps(h)),
        );
        self.normalize(m11, m12, m21, m22, x.m)
    }

    pub fn conj_generic(&self, x: &GammaL2Element, y: &GammaL2Element) -> GammaL2Element {
        self.mul(&self.mul(x, y), &self.inv(x))
    }

    /// Closed-form conjugation x y x^{-1} for psi^2 = id on y; generic
    /// otherwise. Equals A sigma(E) psi(adj A) on the matrix part.
    pub fn conj_apply(&self, x: &GammaL2Element, y: &GammaL2Element) -> GammaL2Element {
        if !self.psi_involutory(y.m) {
            return self.conj_generic(x, y);
        }
        let f = &self.field;
        let (a, b, c, d) = (x.a, x.b, x.c, x.d);
        let sg = |v: u64| f.frob_iter(v, x.m);
        let ps = |v: u64| f.frob_iter(v, y.m);
        let (e, ef, g, h) = (y.a, y.b, y.c, y.d);
        let sum = |t1: u64, t2: u64, t3: u64, t4: u64| f.add(f.add(t1, t2), f.add(t3, t4));
        let m11 = sum(
            f.mul(f.mul(a, sg(e)), ps(d)),
            f.mul(f.mul(b, sg(g)), ps(d)),
            f.neg(f.mul(f.mul(a, sg(ef)), ps(c))),
            f.neg(f.mul(f.mul(b, sg(h)), ps(c))),
        );
        let m21 = sum(
            f.mul(f.mul(c, sg(e)), ps(d)),
            f.mul(f.mul(d, sg(g)), ps(d)),
            f.neg(f.mul(f.mul(c, sg(ef)), ps(c))),
            f.neg(f.mul(f.mul(d, sg(h)), ps(c))),
        );
        let m12 = sum(
            f.neg(f.mul(f.mul(a, sg(e)), ps(b))),
            f.neg(f.mul(f.mul(b, sg(g)), ps(b))),
            f.mul(f.mul(a, sg(ef)), ps(a)),
            f.mul(f.mul(b, sg(h)), ps(a)),
        );
        let m22 = sum(
            f.neg(f.mul(f.mul(c, sg(e)), ps(b))),
            f.neg(f.mul(f.mul(d, sg(g)), ps(b))),
            f.mul(f.mul(c, sg(ef)), ps(a)),
            f.mul(f.mul(d, sg(h)), ps(a)),
        );
        self.normalize(m11, m12, m21, m22, y.m)
    }

    /// One representative per conjugacy class, by orbit scan.
    pub fn conjugacy_class_reps(&self) -> Vec<GammaL2Element> {
        let elems = self.elements();
        let mut seen: HashMap<GammaL2Element, ()> = HashMap::with_capacity(elems.len());
        let mut reps = Vec::new();
        for x in &elems {
            if seen.contains_key(x) {
                continue;
            }
            reps.push(*x);
            for g in &elems {
                seen.entry(self.conj_apply(g, x)).or_insert(());
            }
        }
        reps
    }

    /// Exact count of beta with conj(x, beta) = beta^3. Only beta with
    /// psi^2 = id can satisfy the equation, since both sides carry beta's
    /// Frobenius power M and 3M = M mod K forces 2M = 0 mod K.
    pub fn count_good(&self, conjugator: &GammaL2Element) -> GoodCount {
        let q = self.q();
        let filter = self.psi_constraint_filter();
        let mut count = 0usize;
        for beta in self.elements() {
            if !filter.contains(&beta.m) {
                continue;
            }
            if self.conj_apply(conjugator, &beta) == self.cube(&beta) {
                count += 1;
            }
        }
        GoodCount {
            q,
            conjugator: *conjugator,
            count,
            bound: (q as f64).powf(11.0 / 4.0),
        }
    }

    /// Max of count_good over conjugacy-class representatives, which equals
    /// L3 over the inner automorphisms of PGammaL2(q).
    pub fn l3_inner_max(&self) -> Result<(usize, GammaL2Element)> {
        if self.q() > SCAN_CAP {
            return Err(Error::ScanTooLarge(format!(
                "q = {} exceeds the L3 scan cap {SCAN_CAP}",
                self.q()
            )));
        }
        let reps = self.conjugacy_class_reps();
        let mut best = (0usize, self.identity());
        for r in &reps {
            let gc = self.count_good(r);
            if gc.count > best.0 {
                best = (gc.count, *r);
            }
        }
        Ok(best)
    }

    /// Materialize the abstract multiplication table. Intended for small q.
    pub fn to_group_table(&self) -> Result<GroupTable> {
        let n = self.order() as usize;
        if n > 4096 {
            return Err(Error::GroupTooLarge {
                order: n,
                cap: 4096,
            });
        }
        let elems = self.elements();
        let mut index: HashMap<GammaL2Element, u32> = HashMap::with_capacity(n);
        for (i, e) in elems.iter().enumerate() {
            index.insert(*e, i as u32);
        }
        let mut mul = vec![0u32; n * n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                mul[i * n + j] = index[&self.mul(x, y)];
            }
        }
        let names = elems
            .iter()
            .map(|e| format!("[{},{};{},{}]f{}", e.a, e.b, e.c, e.d, e.m))
            .collect();
        GroupTable::from_parts(mul, names, Vec::new(), None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::automorphism_group;
    use crate::power::l_value;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(g: &GammaL2Group, rng: &mut ChaCha8Rng) -> GammaL2Element {
        let q = g.q();
        loop {
            let x = GammaL2Element {
                a: rng.gen_range(0..q),
                b: rng.gen_range(0..q),
                c: rng.gen_range(0..q),
                d: rng.gen_range(0..q),
                m: rng.gen_range(0..g.frobenius_degree()),
            };
            if g.det(&x) != 0 {
                return g.normalize(x.a, x.b, x.c, x.d, x.m);
            }
        }
    }

    #[test]
    fn orders() {
        for (q, want) in [(4, 120), (5, 120), (7, 336), (8, 1512), (9, 1440), (11, 1320)] {
            let g = GammaL2Group::new(q).unwrap();
            assert_eq!(g.order(), want, "q = {q}");
            assert_eq!(g.elements().len() as u64, want);
        }
        assert!(matches!(GammaL2Group::new(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn normalization_is_idempotent_and_projective() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x95f2);
        for q in [4u64, 5, 7, 8, 9] {
            let g = GammaL2Group::new(q).unwrap();
            let f = g.field();
            for _ in 0..200 {
                let x = random_element(&g, &mut rng);
                let again = g.normalize(x.a, x.b, x.c, x.d, x.m);
                assert_eq!(x, again);
                let lam = rng.gen_range(1..q);
                let scaled = g.normalize(
                    f.mul(lam, x.a),
                    f.mul(lam, x.b),
                    f.mul(lam, x.c),
                    f.mul(lam, x.d),
                    x.m,
                );
                assert_eq!(x, scaled);
            }
        }
    }

    #[test]
    fn group_axioms_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa550c);
        for q in [4u64, 5, 7, 8, 9] {
            let g = GammaL2Group::new(q).unwrap();
            let id = g.identity();
            for _ in 0..10_000 {
                let x = random_element(&g, &mut rng);
                let y = random_element(&g, &mut rng);
                let z = random_element(&g, &mut rng);
                assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
            }
            for _ in 0..200 {
                let x = random_element(&g, &mut rng);
                assert_eq!(g.mul(&x, &id), x);
                assert_eq!(g.mul(&id, &x), x);
                assert_eq!(g.mul(&x, &g.inv(&x)), id);
                assert_eq!(g.mul(&g.inv(&x), &x), id);
            }
        }
    }

    #[test]
    fn cube_matches_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc0be);
        for q in [4u64, 5, 7, 8, 9] {
            let g = GammaL2Group::new(q).unwrap();
            assert_eq!(g.cube(&g.identity()), g.identity());
            for _ in 0..1000 {
                let x = random_element(&g, &mut rng);
                assert_eq!(g.cube(&x), g.cube_generic(&x), "q = {q}, x = {x:?}");
                if g.mul(&x, &x) == g.identity() {
                    assert_eq!(g.cube(&x), x);
                }
            }
        }
    }

    #[test]
    fn conj_matches_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa1fa);
        for q in [4u64, 5, 7, 8, 9] {
            let g = GammaL2Group::new(q).unwrap();
            let id = g.identity();
            for _ in 0..1000 {
                let x = random_element(&g, &mut rng);
                let y = random_element(&g, &mut rng);
                assert_eq!(
                    g.conj_apply(&x, &y),
                    g.conj_generic(&x, &y),
                    "q = {q}, x = {x:?}, y = {y:?}"
                );
                assert_eq!(g.conj_apply(&id, &y), y);
                assert_eq!(g.conj_apply(&x, &id), id);
            }
        }
    }

    #[test]
    fn psi_filter() {
        for (q, want) in [
            (4u64, vec![0u32, 1]),
            (5, vec![0]),
            (7, vec![0]),
            (8, vec![0]),
            (9, vec![0, 1]),
        ] {
            let g = GammaL2Group::new(q).unwrap();
            assert_eq!(g.psi_constraint_filter(), want, "q = {q}");
        }
    }

    #[test]
    fn filter_agrees_with_full_scan() {
        // Scanning every beta, including those with psi^2 != id, must find
        // exactly the elements the filtered count finds.
        for q in [8u64, 9] {
            let g = GammaL2Group::new(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(0xf17e + q);
            for _ in 0..3 {
                let alpha = random_element(&g, &mut rng);
                let full = g
                    .elements()
                    .iter()
                    .filter(|b| g.conj_generic(&alpha, b) == g.cube_generic(b))
                    .count();
                assert_eq!(full, g.count_good(&alpha).count, "q = {q}");
            }
        }
    }

    #[test]
    fn count_good_identity_counts_involutions() {
        for q in [4u64, 5, 7] {
            let g = GammaL2Group::new(q).unwrap();
            let id = g.identity();
            let invols = g
                .elements()
                .iter()
                .filter(|x| g.mul(x, x) == id)
                .count();
            assert_eq!(g.count_good(&id).count, invols, "q = {q}");
        }
    }

    #[test]
    fn count_good_matches_generic_per_class() {
        let g = GammaL2Group::new(5).unwrap();
        for rep in g.conjugacy_class_reps() {
            let brute = g
                .elements()
                .iter()
                .filter(|b| g.conj_generic(&rep, b) == g.cube_generic(b))
                .count();
            assert_eq!(g.count_good(&rep).count, brute);
        }
    }

    #[test]
    fn l3_inner_max_q4_matches_abstract_brute_force() {
        let g = GammaL2Group::new(4).unwrap();
        let (max, _) = g.l3_inner_max().unwrap();
        let table = g.to_group_table().unwrap();
        assert_eq!(table.order(), 120);
        assert!(!table.is_solvable());
        let aut = automorphism_group(&table).unwrap();
        // PGammaL2(4) is complete, so all automorphisms are inner.
        assert_eq!(aut.order(), 120);
        let (l3, _) = l_value(&table, &aut, 3);
        assert_eq!(max, l3);
    }

    #[test]
    fn scan_cap_enforced() {
        let g = GammaL2Group::new(1024).unwrap();
        assert!(matches!(g.l3_inner_max(), Err(Error::ScanTooLarge(_))));
    }
}
