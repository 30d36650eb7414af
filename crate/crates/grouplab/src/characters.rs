//! Character tables mod p by the Burnside-Dixon class-matrix method, plus
//! Frobenius-Schur indicators and the square-root identity.

use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::group::table::{ConjClassPartition, GroupTable};
use crate::power::sqrt_set;

pub const MAX_CLASSES: usize = 64;
pub const MAX_ORDER: usize = 1024;
const PRIME_BOUND: u64 = 100_000_000;
const MAX_COMBO_RETRIES: usize = 40;
const MAX_PRIME_ATTEMPTS: usize = 6;

#[derive(Clone, Debug)]
pub struct CharacterTableMod {
    pub prime: u64,
    pub classes: ConjClassPartition,
    /// `values[row][col]` is χ_row at the representative of class col, mod p.
    pub values: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
    /// Class index of the inverses of each class.
    pub inverse_class: Vec<usize>,
    pub group_order: u64,
}

#[derive(Clone, Debug)]
pub struct FSIndicators {
    pub nu2: Vec<i64>,
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

/// Square root mod an odd prime via Tonelli-Shanks. `None` for non-residues.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    // p - 1 = q * 2^s with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| mod_pow(z, (p - 1) / 2, p) == p - 1).unwrap();
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn is_prime(n: u64) -> bool {
    crate::ff::field::is_prime(n)
}

/// Smallest prime p > lower with p ≡ 1 (mod m), skipping `skip` hits.
fn splitting_prime(m: u64, lower: u64, skip: usize) -> Result<u64> {
    let mut candidate = lower / m * m + 1;
    let mut remaining = skip;
    while candidate < PRIME_BOUND {
        if candidate > lower && is_prime(candidate) {
            if remaining == 0 {
                return Ok(candidate);
            }
            remaining -= 1;
        }
        candidate += m;
    }
    Err(Error::NoSplittingPrime { bound: PRIME_BOUND })
}

/// Class multiplication coefficients: `c[i][j][k]` counts pairs
/// (x, y) in C_i × C_j with x·y = rep_k.
fn class_matrices(g: &GroupTable, classes: &ConjClassPartition) -> Vec<Vec<Vec<u64>>> {
    let k = classes.count();
    let n = g.order();
    let mut rep_index = vec![usize::MAX; n];
    for (ci, &r) in classes.representatives.iter().enumerate() {
        rep_index[r as usize] = ci;
    }
    let mut c = vec![vec![vec![0u64; k]; k]; k];
    for x in 0..n as u32 {
        let i = classes.class_of[x as usize] as usize;
        for y in 0..n as u32 {
            let z = g.mul(x, y);
            let zk = rep_index[z as usize];
            if zk != usize::MAX {
                let j = classes.class_of[y as usize] as usize;
                c[i][j][zk] += 1;
            }
        }
    }
    c
}

/// Characteristic polynomial mod p via Hessenberg reduction, coefficients
/// in ascending degree, monic of degree k.
fn char_poly(mut a: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let k = a.len();
    // similarity reduction to upper Hessenberg form
    for col in 0..k.saturating_sub(2) {
        // find pivot below the subdiagonal
        let pivot = (col + 1..k).find(|&r| a[r][col] != 0);
        let Some(pivot) = pivot else { continue };
        if pivot != col + 1 {
            a.swap(pivot, col + 1);
            for row in a.iter_mut() {
                row.swap(pivot, col + 1);
            }
        }
        let inv = inv_mod(a[col + 1][col], p);
        for r in col + 2..k {
            let factor = mul_mod(a[r][col], inv, p);
            if factor == 0 {
                continue;
            }
            for cc in 0..k {
                let sub = mul_mod(factor, a[col + 1][cc], p);
                a[r][cc] = (a[r][cc] + p - sub) % p;
            }
            for rr in 0..k {
                let add = mul_mod(factor, a[rr][r], p);
                a[rr][col + 1] = (a[rr][col + 1] + add) % p;
            }
        }
    }
    // recurrence over leading principal minors of xI - H
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=k {
        // (x - h[m-1][m-1]) * p_{m-1}
        let prev = &polys[m - 1];
        let mut cur = vec![0u64; prev.len() + 1];
        let h = a[m - 1][m - 1];
        for (d, &cf) in prev.iter().enumerate() {
            cur[d + 1] = (cur[d + 1] + cf) % p;
            cur[d] = (cur[d] + p - mul_mod(h, cf, p)) % p;
        }
        let mut subdiag = 1u64;
        for i in (1..m).rev() {
            subdiag = mul_mod(subdiag, a[i][i - 1], p);
            let coeff = mul_mod(a[i - 1][m - 1], subdiag, p);
            if coeff == 0 {
                continue;
            }
            for (d, &cf) in polys[i - 1].iter().enumerate() {
                cur[d] = (cur[d] + p - mul_mod(coeff, cf, p)) % p;
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}

fn poly_eval(poly: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in poly.iter().rev() {
        acc = (mul_mod(acc, x, p) + c) % p;
    }
    acc
}

/// 1-dimensional nullspace of (M - λI); `None` if the dimension differs.
fn eigenvector(m: &[Vec<u64>], lambda: u64, p: u64) -> Option<Vec<u64>> {
    let k = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            row[i] = (row[i] + p - lambda % p) % p;
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..k {
        let Some(pr) = (rank..k).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = inv_mod(a[rank][col], p);
        for cc in 0..k {
            a[rank][cc] = mul_mod(a[rank][cc], inv, p);
        }
        for r in 0..k {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for cc in 0..k {
                    let sub = mul_mod(f, a[rank][cc], p);
                    a[r][cc] = (a[r][cc] + p - sub) % p;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if rank != k - 1 {
        return None;
    }
    let free_col = (0..k).find(|c| !pivot_cols.contains(c))?;
    let mut v = vec![0u64; k];
    v[free_col] = 1;
    for (r, &pc) in pivot_cols.iter().enumerate() {
        v[pc] = (p - a[r][free_col]) % p;
    }
    Some(v)
}

pub fn character_table(g: &GroupTable) -> Result<CharacterTableMod> {
    character_table_with_prime_skip(g, 0)
}

/// Build a table starting from the `skip`-th admissible prime (so
/// independent verification runs can use different primes). Small primes can
/// fail to separate the eigenvalues of every random class-matrix
/// combination; in that case the next prime of the same parity class is
/// tried, which keeps the prime sets of skip 0 and skip 1 disjoint.
pub fn character_table_with_prime_skip(g: &GroupTable, skip: usize) -> Result<CharacterTableMod> {
    let mut last = None;
    for attempt in 0..MAX_PRIME_ATTEMPTS {
        match character_table_at_index(g, skip + 2 * attempt) {
            Ok(t) => return Ok(t),
            Err(e @ Error::DegenerateEigenspace { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt was made"))
}

fn character_table_at_index(g: &GroupTable, skip: usize) -> Result<CharacterTableMod> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Error::GroupTooLarge {
            order: n,
            cap: MAX_ORDER,
        });
    }
    let classes = g.conjugacy_classes();
    let k = classes.count();
    if k > MAX_CLASSES {
        return Err(Error::BudgetExceeded(format!(
            "{k} conjugacy classes exceeds {MAX_CLASSES}"
        )));
    }
    let p = splitting_prime(g.exponent(), 2 * n as u64, skip)?;
    let c = class_matrices(g, &classes);
    let inverse_class: Vec<usize> = classes
        .representatives
        .iter()
        .map(|&r| classes.class_of[g.inv(r) as usize] as usize)
        .collect();
    let class_sizes: Vec<u64> = classes.classes.iter().map(|cl| cl.len() as u64).collect();

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xd1c0 + skip as u64);
    let mut found: Option<Vec<Vec<u64>>> = None;
    for _ in 0..MAX_COMBO_RETRIES {
        // random linear combination of the class matrices
        let r: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        let mut m = vec![vec![0u64; k]; k];
        for i in 0..k {
            if r[i] == 0 {
                continue;
            }
            for j in 0..k {
                for kk in 0..k {
                    m[j][kk] = (m[j][kk] + mul_mod(r[i], c[i][j][kk], p)) % p;
                }
            }
        }
        let poly = char_poly(m.clone(), p);
        let mut roots = Vec::new();
        for lambda in 0..p {
            if poly_eval(&poly, lambda, p) == 0 {
                roots.push(lambda);
                if roots.len() > k {
                    break;
                }
            }
        }
        if roots.len() != k {
            continue; // repeated eigenvalues, try another combination
        }
        let mut omegas: Vec<Vec<u64>> = Vec::with_capacity(k);
        let mut ok = true;
        for &lambda in &roots {
            match eigenvector(&m, lambda, p) {
                Some(v) if v[0] != 0 => {
                    let inv0 = inv_mod(v[0], p);
                    omegas.push(v.iter().map(|&x| mul_mod(x, inv0, p)).collect());
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            found = Some(omegas);
            break;
        }
    }
    let omegas = found.ok_or(Error::DegenerateEigenspace { prime: p })?;

    // degrees from the second orthogonality relation through the ω values
    let order_mod = n as u64 % p;
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(k);
    for w in &omegas {
        let mut s = 0u64;
        for i in 0..k {
            let term = mul_mod(w[i], w[inverse_class[i]], p);
            s = (s + mul_mod(term, inv_mod(class_sizes[i], p), p)) % p;
        }
        let d2 = mul_mod(order_mod, inv_mod(s, p), p);
        let root = sqrt_mod(d2, p).ok_or(Error::DegenerateEigenspace { prime: p })?;
        let d = root.min(p - root);
        if d == 0 || d * d > n as u64 {
            return Err(Error::LiftOutOfRange {
                residue: d,
                prime: p,
                order: n,
            });
        }
        let values: Vec<u64> = (0..k)
            .map(|i| mul_mod(mul_mod(d, w[i], p), inv_mod(class_sizes[i], p), p))
            .collect();
        rows.push((d, values));
    }
    rows.sort();
    let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
    let values: Vec<Vec<u64>> = rows.into_iter().map(|r| r.1).collect();

    let table = CharacterTableMod {
        prime: p,
        classes,
        values,
        degrees,
        inverse_class,
        group_order: n as u64,
    };
    table.verify()?;
    Ok(table)
}

impl CharacterTableMod {
    /// Row orthogonality mod p and the exact degree-square sum.
    pub fn verify(&self) -> Result<()> {
        let p = self.prime;
        let k = self.classes.count();
        let sizes: Vec<u64> = self.classes.classes.iter().map(|c| c.len() as u64).collect();
        for i in 0..k {
            for j in 0..k {
                let mut s = 0u64;
                for t in 0..k {
                    let term = mul_mod(
                        self.values[i][t],
                        self.values[j][self.inverse_class[t]],
                        p,
                    );
                    s = (s + mul_mod(sizes[t], term, p)) % p;
                }
                let expect = if i == j { self.group_order % p } else { 0 };
                if s != expect {
                    return Err(Error::DegenerateEigenspace { prime: p });
                }
            }
        }
        let degsum: u64 = self.degrees.iter().map(|&d| d * d).sum();
        if degsum != self.group_order {
            return Err(Error::LiftOutOfRange {
                residue: degsum,
                prime: p,
                order: self.group_order as usize,
            });
        }
        Ok(())
    }

    /// Σ_χ χ(1), an exact integer.
    pub fn degree_sum(&self) -> u64 {
        self.degrees.iter().sum()
    }
}

pub fn fs_indicators(g: &GroupTable, t: &CharacterTableMod) -> Result<FSIndicators> {
    let p = t.prime;
    let k = t.classes.count();
    // the class of g² is constant on each class
    let square_class: Vec<usize> = t
        .classes
        .representatives
        .iter()
        .map(|&r| t.classes.class_of[g.mul(r, r) as usize] as usize)
        .collect();
    // consistency: squaring respects the class partition
    for (ci, class) in t.classes.classes.iter().enumerate() {
        for &x in class {
            debug_assert_eq!(
                t.classes.class_of[g.mul(x, x) as usize] as usize,
                square_class[ci]
            );
        }
    }
    let sizes: Vec<u64> = t.classes.classes.iter().map(|c| c.len() as u64).collect();
    let inv_order = inv_mod(t.group_order % p, p);
    let mut nu2 = Vec::with_capacity(t.values.len());
    for row in &t.values {
        let mut s = 0u64;
        for i in 0..k {
            s = (s + mul_mod(sizes[i], row[square_class[i]], p)) % p;
        }
        let v = mul_mod(inv_order, s, p);
        nu2.push(if v == 0 {
            0
        } else if v == 1 {
            1
        } else if v == p - 1 {
            -1
        } else {
            return Err(Error::LiftAmbiguous { residue: v, prime: p });
        });
    }
    Ok(FSIndicators { nu2 })
}

/// Σ_χ ν₂(χ)·χ(x) computed mod p and lifted to [0, |G|].
pub fn sqrt_via_characters(t: &CharacterTableMod, ind: &FSIndicators, x_class: usize) -> Result<u64> {
    let p = t.prime;
    let mut s = 0u64;
    for (row, &nu) in t.values.iter().zip(&ind.nu2) {
        match nu {
            1 => s = (s + row[x_class]) % p,
            -1 => s = (s + p - row[x_class]) % p,
            _ => {}
        }
    }
    if s > t.group_order {
        return Err(Error::LiftOutOfRange {
            residue: s,
            prime: p,
            order: t.group_order as usize,
        });
    }
    Ok(s)
}

/// Verify |√g| = Σ ν₂(χ)χ(g) for every class, against brute force.
pub fn check_character_sqrt_identity(g: &GroupTable, t: &CharacterTableMod) -> Result<bool> {
    let ind = fs_indicators(g, t)?;
    for (ci, &rep) in t.classes.representatives.iter().enumerate() {
        let predicted = sqrt_via_characters(t, &ind, ci)?;
        let actual = sqrt_set(g, rep).len() as u64;
        if predicted != actual {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Σ_χ ν₂(χ)χ(1) equals maxsqrt-related degree sums; here just the plain
/// degree sum Σχ(1) as an exact integer for the external bound checks.
pub fn degsum(g: &GroupTable) -> Result<u64> {
    Ok(character_table(g)?.degree_sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse::parse_group;
    use crate::power::maxsqrt;

    #[test]
    fn s3_degrees() {
        let g = parse_group("S3").unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
        let ind = fs_indicators(&g, &t).unwrap();
        assert_eq!(ind.nu2, vec![1, 1, 1]);
    }

    #[test]
    fn cyclic_tables_are_linear() {
        for n in [2usize, 3, 5, 8, 12] {
            let g = parse_group(&format!("C{n}")).unwrap();
            let t = character_table(&g).unwrap();
            assert!(t.degrees.iter().all(|&d| d == 1), "C{n}");
            assert_eq!(t.degrees.len(), n);
        }
    }

    #[test]
    fn c3_indicators() {
        let g = parse_group("C3").unwrap();
        let t = character_table(&g).unwrap();
        let ind = fs_indicators(&g, &t).unwrap();
        let mut nu = ind.nu2.clone();
        nu.sort_unstable();
        // trivial character real, the two faithful ones complex
        assert_eq!(nu, vec![0, 0, 1]);
    }

    #[test]
    fn q8_has_symplectic_character() {
        let g = parse_group("Q8").unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 1, 2]);
        let ind = fs_indicators(&g, &t).unwrap();
        // rows are sorted by degree, so the last is the 2-dimensional one
        assert_eq!(ind.nu2[4], -1);
        assert_eq!(&ind.nu2[..4], &[1, 1, 1, 1]);
    }

    #[test]
    fn sqrt_identity_on_small_corpus() {
        for spec in ["S3", "S4", "A4", "Q8", "D8", "C12", "SL(2,3)", "A5", "D12"] {
            let g = parse_group(spec).unwrap();
            let t = character_table(&g).unwrap();
            assert!(check_character_sqrt_identity(&g, &t).unwrap(), "{spec}");
        }
    }

    #[test]
    fn identity_column_counts_involutions() {
        for spec in ["S3", "S4", "Q8", "A5"] {
            let g = parse_group(spec).unwrap();
            let t = character_table(&g).unwrap();
            let ind = fs_indicators(&g, &t).unwrap();
            let predicted = sqrt_via_characters(&t, &ind, 0).unwrap();
            let involutions = g.elements().filter(|&x| g.mul(x, x) == 0).count() as u64;
            assert_eq!(predicted, involutions, "{spec}");
            assert!(predicted <= maxsqrt(&g) as u64);
        }
    }

    #[test]
    fn two_primes_agree() {
        for spec in ["S4", "Q8", "A5"] {
            let g = parse_group(spec).unwrap();
            let t1 = character_table_with_prime_skip(&g, 0).unwrap();
            let t2 = character_table_with_prime_skip(&g, 1).unwrap();
            assert_ne!(t1.prime, t2.prime);
            assert_eq!(t1.degrees, t2.degrees, "{spec}");
            let mut n1 = fs_indicators(&g, &t1).unwrap().nu2;
            let mut n2 = fs_indicators(&g, &t2).unwrap().nu2;
            n1.sort_unstable();
            n2.sort_unstable();
            assert_eq!(n1, n2, "{spec}");
        }
    }

    #[test]
    fn caps_are_enforced() {
        // PGammaL(2,9) has order 1440 > 1024
        let g = parse_group("PGammaL(2,9)").unwrap();
        assert!(matches!(
            character_table(&g),
            Err(Error::GroupTooLarge { .. })
        ));
    }
}
