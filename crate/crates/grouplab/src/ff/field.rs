//! Explicitly constructed finite fields F_{p^K} with log/antilog tables.
//!
//! Elements are encoded as integers in `[0, q)` whose base-`p` digits are the
//! coefficients of the polynomial basis `1, t, t^2, ...` modulo a fixed
//! irreducible. The modulus is the lexicographically least monic irreducible
//! of degree `K` (constant coefficient varying fastest), so field construction
//! is reproducible without external tables.

use crate::error::{Error, Result};

pub const FIELD_CAP: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Split `q` as `p^K` with `p` prime, or fail.
pub fn split_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let fac = prime_factors(q);
    if fac.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = fac[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    if p.pow(k) != q {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, k))
}

// --- dense polynomial helpers over F_p, used only for the modulus search ---

fn fp_poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn fp_poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] * lead_inv) % p;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p * p - (c * mi) % p) % p;
            }
        }
        r.pop();
        fp_poly_trim(&mut r);
        if r.iter().all(|&x| x == 0) {
            return vec![0];
        }
    }
    r
}

fn fp_poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    fp_poly_rem(&prod, m, p)
}

fn fp_poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_poly_mulmod(&acc, &b, m, p);
        }
        b = fp_poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn fp_poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_poly_trim(&mut a);
    fp_poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = fp_poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime, a != 0
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn fp_poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        *slot = (ai + p - bi) % p;
    }
    fp_poly_trim(&mut out);
    out
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    let x_red = fp_poly_rem(&[0, 1], f, p);
    // X^{p^K} == X mod f
    let mut xp = x_red.clone();
    for _ in 0..k {
        xp = fp_poly_powmod(&xp, p, f, p);
    }
    let diff = fp_poly_sub(&xp, &x_red, p);
    if !(diff.len() == 1 && diff[0] == 0) {
        return false;
    }
    // gcd(X^{p^{K/r}} - X, f) == 1 for each prime r | K
    for r in prime_factors(k as u64) {
        let d = k as u64 / r;
        let mut xq = x_red.clone();
        for _ in 0..d {
            xq = fp_poly_powmod(&xq, p, f, p);
        }
        let diff = fp_poly_sub(&xq, &x_red, p);
        if diff.len() == 1 && diff[0] == 0 {
            return false;
        }
        let g = fp_poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct FqField {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus of degree K, constant coefficient first.
    modulus: Vec<u64>,
    exp_table: Vec<u32>,
    log_table: Vec<u32>,
}

impl FqField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) || k == 0 {
            return Err(Error::NotPrimePower(p.pow(k.max(1))));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= FIELD_CAP)
            .ok_or(Error::FieldTooLarge {
                q: u64::MAX,
                cap: FIELD_CAP,
            })?;
        // Lexicographically least monic irreducible of degree K.
        let modulus = 'found: {
            let mut coeffs = vec![0u64; k as usize];
            loop {
                let mut f = coeffs.clone();
                f.push(1);
                if is_irreducible(&f, p) {
                    break 'found f;
                }
                // increment base-p counter, constant coefficient fastest
                let mut i = 0;
                loop {
                    if i == k as usize {
                        return Err(Error::NotPrimePower(q));
                    }
                    coeffs[i] += 1;
                    if coeffs[i] < p {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
            }
        };
        let mut field = FqField {
            p,
            k,
            q,
            modulus,
            exp_table: Vec::new(),
            log_table: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    pub fn from_order(q: u64) -> Result<Self> {
        let (p, k) = split_prime_power(q)?;
        FqField::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    fn digits(&self, x: u64) -> Vec<u64> {
        let mut d = vec![0u64; self.k as usize];
        let mut x = x;
        for di in d.iter_mut() {
            *di = x % self.p;
            x /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u64]) -> u64 {
        let mut x = 0u64;
        for &di in d.iter().rev() {
            x = x * self.p + di;
        }
        x
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u64> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.digits(a), self.digits(b));
        let deg = self.k as usize;
        let mut prod = vec![0u64; 2 * deg - 1];
        for (i, &ai) in da.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % self.p;
            }
        }
        // reduce by the monic modulus
        for i in (deg..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in self.modulus.iter().take(deg).enumerate() {
                let idx = i - deg + j;
                prod[idx] = (prod[idx] + self.p * self.p - c * mj % self.p) % self.p;
            }
        }
        self.from_digits(&prod[..deg])
    }

    fn build_tables(&mut self) {
        let q = self.q;
        // find a multiplicative generator
        let fac = prime_factors(q - 1);
        let gen = (1..q)
            .find(|&g| {
                fac.iter().all(|&r| {
                    let mut acc = 1u64;
                    let mut e = (q - 1) / r;
                    let mut b = g;
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = self.mul_raw(acc, b);
                        }
                        b = self.mul_raw(b, b);
                        e >>= 1;
                    }
                    acc != 1
                })
            })
            .expect("multiplicative group of a finite field is cyclic");
        let m = (q - 1) as usize;
        let mut exp_table = vec![0u32; 2 * m];
        let mut log_table = vec![0u32; q as usize];
        let mut cur = 1u64;
        for i in 0..m {
            exp_table[i] = cur as u32;
            exp_table[i + m] = cur as u32;
            log_table[cur as usize] = i as u32;
            cur = self.mul_raw(cur, gen);
        }
        self.exp_table = exp_table;
        self.log_table = log_table;
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp_table
            [self.log_table[a as usize] as usize + self.log_table[b as usize] as usize]
            as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "division by zero in F_q");
        let m = (self.q - 1) as usize;
        let l = self.log_table[a as usize] as usize;
        self.exp_table[(m - l) % m] as u64
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// `a^e` with `e` reduced mod `q - 1` for nonzero `a`.
    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let m = (self.q - 1) as u128;
        let l = self.log_table[a as usize] as u128;
        let idx = (l * (e as u128 % m)) % m;
        self.exp_table[idx as usize] as u64
    }

    /// The field Frobenius `x -> x^p`.
    pub fn frob(&self, a: u64) -> u64 {
        self.pow(a, self.p)
    }

    /// `x -> x^{p^m}`.
    pub fn frob_iter(&self, a: u64, m: u32) -> u64 {
        let mut x = a;
        for _ in 0..(m % self.k) {
            x = self.frob(x);
        }
        x
    }

    pub fn one(&self) -> u64 {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = FqField::new(2, 2).unwrap();
        assert_eq!(f.order(), 4);
        // modulus is X^2 + X + 1, the only irreducible quadratic over F_2
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let t = 2; // the class of X
        assert_eq!(f.mul(t, t), f.add(t, 1)); // t^2 = t + 1
        assert_eq!(f.pow(t, 3), 1);
    }

    #[test]
    fn f9_has_square_roots_of_minus_one() {
        let f = FqField::new(3, 2).unwrap();
        let minus_one = f.neg(1);
        let roots: Vec<u64> = f.elements().filter(|&x| f.mul(x, x) == minus_one).collect();
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FqField::from_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    assert_eq!(f.pow(a, q - 1), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // distributivity spot check
                    assert_eq!(
                        f.mul(a, f.add(b, 1)),
                        f.add(f.mul(a, b), a)
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = FqField::new(2, 4).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
            }
        }
        // frob^K = id
        for a in f.elements() {
            assert_eq!(f.frob_iter(a, 4), a);
        }
    }

    #[test]
    fn rejects_non_prime_power() {
        assert!(split_prime_power(12).is_err());
        assert!(split_prime_power(1).is_err());
        assert_eq!(split_prime_power(8).unwrap(), (2, 3));
    }
}
