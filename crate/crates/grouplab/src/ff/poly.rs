//! Sparse polynomials over F_q and the root-set-preserving lacunary reduction.

use crate::error::{Error, Result};
use crate::ff::field::FqField;

/// Sparse polynomial: strictly increasing exponents, nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqPoly {
    terms: Vec<(u64, u64)>,
}

impl FqPoly {
    pub fn new(field: &FqField, terms: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut terms: Vec<(u64, u64)> = terms.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_by_key(|&(e, _)| e);
        // merge duplicate exponents
        let mut merged: Vec<(u64, u64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == e => {
                    last.1 = field.add(last.1, c);
                }
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        FqPoly { terms: merged }
    }

    pub fn zero() -> Self {
        FqPoly { terms: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    pub fn deg(&self) -> Option<u64> {
        self.terms.last().map(|&(e, _)| e)
    }

    pub fn mindeg(&self) -> Option<u64> {
        self.terms.first().map(|&(e, _)| e)
    }

    pub fn add(&self, field: &FqField, other: &FqPoly) -> FqPoly {
        FqPoly::new(field, self.terms.iter().chain(&other.terms).copied())
    }

    pub fn eval(&self, field: &FqField, x: u64) -> u64 {
        let mut acc = 0u64;
        for &(e, c) in &self.terms {
            let xe = if e == 0 { 1 } else { field.pow(x, e) };
            acc = field.add(acc, field.mul(c, xe));
        }
        acc
    }

    /// Apply the ring Frobenius termwise: `(e, c) -> (e * p^m, c^{p^m})`.
    /// For every `x` in F_q the result evaluates to `f(x)^{p^m}`.
    pub fn frobenius(&self, field: &FqField, iterations: u32) -> FqPoly {
        let pm = field.p().pow(iterations);
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| (e * pm, field.pow(c, pm)));
        FqPoly::new(field, terms)
    }

    /// Exhaustive root scan over F_q.
    pub fn roots(&self, field: &FqField) -> Result<Vec<u64>> {
        if field.order() > crate::ff::field::FIELD_CAP {
            return Err(Error::FieldTooLarge {
                q: field.order(),
                cap: crate::ff::field::FIELD_CAP,
            });
        }
        Ok(field.elements().filter(|&x| self.eval(field, x) == 0).collect())
    }
}

/// Outcome of [`lacunary_reduce`]: the low-degree polynomial with the same
/// root set, plus the degree bound it was checked against.
#[derive(Clone, Debug)]
pub struct LacunaryReduction {
    pub reduced: FqPoly,
    pub degree_bound: f64,
}

/// Root-set-preserving reduction of a lacunary polynomial.
///
/// `f` must split as `P1 + P2` where `deg(P1) <= q^{1/2+eps}`, every exponent
/// of `P2` lies in `[p^L, p^L + q^{1/2+eps} - 1]` and `deg(P2) < q`, with
/// `(3/4)K <= L < K` and `0 < eps < 1/4`. The result `Q` has degree at most
/// `q^{3/4+eps}` and the same roots in F_q as `f`.
pub fn lacunary_reduce(field: &FqField, f: &FqPoly, big_l: u32, eps: f64) -> Result<LacunaryReduction> {
    let p = field.p();
    let k = field.extension_degree();
    let q = field.order();
    let qf = q as f64;
    if !(eps > 0.0 && eps < 0.25) {
        return Err(Error::PreconditionViolated(format!("eps {eps} not in (0, 1/4)")));
    }
    if !(4 * big_l >= 3 * k && big_l < k) {
        return Err(Error::PreconditionViolated(format!(
            "L = {big_l} not in [(3/4)K, K) for K = {k}"
        )));
    }
    let pl = p.pow(big_l);
    let low_bound = qf.powf(0.5 + eps);
    let split_at = f.terms().partition_point(|&(e, _)| e < pl);
    let p1 = FqPoly {
        terms: f.terms()[..split_at].to_vec(),
    };
    let p2 = FqPoly {
        terms: f.terms()[split_at..].to_vec(),
    };
    if let Some(d) = p1.deg() {
        if (d as f64) > low_bound + 1e-9 {
            return Err(Error::PreconditionViolated(format!(
                "deg(P1) = {d} exceeds q^(1/2+eps) = {low_bound}"
            )));
        }
    }
    if let Some(d) = p2.deg() {
        let hi = pl as f64 + low_bound - 1.0;
        if (d as f64) > hi + 1e-9 || d >= q {
            return Err(Error::PreconditionViolated(format!(
                "deg(P2) = {d} outside [p^L, p^L + q^(1/2+eps) - 1] with bound {hi}"
            )));
        }
    }
    let iters = k - big_l;
    let p1t = p1.frobenius(field, iters);
    let p2t = p2.frobenius(field, iters);
    // Every exponent of P2~ is >= q; one subtraction of q-1 brings it back
    // below q^{3/4+eps} + 1 and never down to 0.
    let reduced_terms: Vec<(u64, u64)> = p2t
        .terms()
        .iter()
        .map(|&(e, c)| {
            debug_assert!(e >= q, "P2~ exponent below q");
            debug_assert!(e - (q - 1) >= 1);
            (e - (q - 1), c)
        })
        .collect();
    let t = FqPoly::new(field, reduced_terms);
    let reduced = p1t.add(field, &t);
    if reduced.is_zero() && !f.is_zero() {
        return Err(Error::ZeroResult);
    }
    let degree_bound = qf.powf(0.75 + eps);
    if let Some(d) = reduced.deg() {
        if (d as f64) > degree_bound + 1e-9 {
            return Err(Error::PreconditionViolated(format!(
                "reduced degree {d} exceeds q^(3/4+eps) = {degree_bound}"
            )));
        }
    }
    Ok(LacunaryReduction {
        reduced,
        degree_bound,
    })
}

/// Summary of a batch of randomized lacunary reduction trials.
#[derive(Clone, Debug, serde::Serialize)]
pub struct LacunaryTrialReport {
    pub q: u64,
    pub big_l: u32,
    pub eps: f64,
    pub trials: usize,
    pub root_mismatches: usize,
    pub max_reduced_degree: u64,
    pub degree_bound: f64,
}

/// Draw a random admissible lacunary polynomial: a low part of degree at
/// most q^{1/2+eps} plus a high part with exponents in
/// [p^L, p^L + q^{1/2+eps} - 1], both nonempty.
pub fn random_lacunary_instance(
    field: &FqField,
    big_l: u32,
    eps: f64,
    rng: &mut impl rand::Rng,
) -> FqPoly {
    let q = field.order();
    let low_max = (q as f64).powf(0.5 + eps).floor() as u64;
    let pl = field.p().pow(big_l);
    let high_max = (pl + low_max - 1).min(q - 1);
    loop {
        let mut terms = Vec::new();
        for _ in 0..rng.gen_range(1..=4usize) {
            terms.push((rng.gen_range(0..=low_max), rng.gen_range(1..q)));
        }
        for _ in 0..rng.gen_range(1..=4usize) {
            terms.push((rng.gen_range(pl..=high_max), rng.gen_range(1..q)));
        }
        let f = FqPoly::new(field, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Run seeded random reduction trials and check exact root-set equality and
/// the degree bound on each.
pub fn lacunary_trials(
    field: &FqField,
    big_l: u32,
    eps: f64,
    trials: usize,
    seed: u64,
) -> Result<LacunaryTrialReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0usize;
    let mut max_deg = 0u64;
    let mut bound = 0.0f64;
    for _ in 0..trials {
        let f = random_lacunary_instance(field, big_l, eps, &mut rng);
        let r = match lacunary_reduce(field, &f, big_l, eps) {
            Ok(r) => r,
            Err(Error::ZeroResult) => continue,
            Err(e) => return Err(e),
        };
        bound = r.degree_bound;
        if let Some(d) = r.reduced.deg() {
            max_deg = max_deg.max(d);
        }
        if f.roots(field)? != r.reduced.roots(field)? {
            mismatches += 1;
        }
    }
    Ok(LacunaryTrialReport {
        q: field.order(),
        big_l,
        eps,
        trials,
        root_mismatches: mismatches,
        max_reduced_degree: max_deg,
        degree_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_identity_iteration() {
        let f4 = FqField::new(2, 2).unwrap();
        let f = FqPoly::new(&f4, [(1, 1), (0, 1)]); // X + 1
        assert_eq!(f.frobenius(&f4, 0), f);
        let f2 = f.frobenius(&f4, 1);
        assert_eq!(f2.terms(), &[(0, 1), (2, 1)]); // X^2 + 1
    }

    #[test]
    fn frobenius_commutes_with_evaluation() {
        use rand::{Rng, SeedableRng};
        let field = FqField::new(2, 8).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let terms: Vec<(u64, u64)> = (0..5)
                .map(|_| (rng.gen_range(0..300u64), rng.gen_range(0..256u64)))
                .collect();
            let f = FqPoly::new(&field, terms);
            let m = rng.gen_range(0..8u32);
            let g = f.frobenius(&field, m);
            let pm = 2u64.pow(m);
            for x in field.elements() {
                assert_eq!(g.eval(&field, x), field.pow(f.eval(&field, x), pm));
            }
        }
    }

    #[test]
    fn roots_of_x_q_minus_x() {
        let field = FqField::new(3, 2).unwrap();
        let f = FqPoly::new(&field, [(9, 1), (1, field.neg(1))]);
        assert_eq!(f.roots(&field).unwrap().len(), 9);
        let c = FqPoly::new(&field, [(0, 2)]);
        assert!(c.roots(&field).unwrap().is_empty());
    }

    #[test]
    fn x_squared_plus_one_over_f9() {
        let field = FqField::new(3, 2).unwrap();
        let f = FqPoly::new(&field, [(2, 1), (0, 1)]);
        assert_eq!(f.roots(&field).unwrap().len(), 2);
    }

    #[test]
    fn pure_low_degree_reduction_is_frobenius() {
        let field = FqField::new(2, 4).unwrap();
        let f = FqPoly::new(&field, [(0, 3), (2, 1), (3, 7)]);
        let r = lacunary_reduce(&field, &f, 3, 0.2).unwrap();
        assert_eq!(r.reduced, f.frobenius(&field, 1));
        assert_eq!(
            f.roots(&field).unwrap(),
            r.reduced.roots(&field).unwrap()
        );
    }

    #[test]
    fn f16_split_instance() {
        // f = X^8 g(X) + h(X) with deg g, deg h <= 3 over F_16, L = 3.
        let field = FqField::new(2, 4).unwrap();
        let f = FqPoly::new(
            &field,
            [(0, 5), (1, 9), (3, 2), (8, 1), (9, 4), (11, 13)],
        );
        let r = lacunary_reduce(&field, &f, 3, 0.2).unwrap();
        assert!(r.reduced.deg().unwrap() as f64 <= 16f64.powf(0.95) + 1e-9);
        assert_eq!(f.roots(&field).unwrap(), r.reduced.roots(&field).unwrap());
    }

    #[test]
    fn seeded_trials_have_no_mismatches() {
        for (p, k, l) in [(2u64, 4u32, 3u32), (3, 4, 3)] {
            let field = FqField::new(p, k).unwrap();
            let rep = lacunary_trials(&field, l, 0.2, 50, 0x1ac).unwrap();
            assert_eq!(rep.root_mismatches, 0, "q = {}", rep.q);
            assert!(rep.max_reduced_degree as f64 <= rep.degree_bound + 1e-9);
        }
    }

    #[test]
    fn precondition_violations_are_rejected() {
        let field = FqField::new(2, 4).unwrap();
        let f = FqPoly::new(&field, [(0, 1), (15, 1)]);
        assert!(matches!(
            lacunary_reduce(&field, &f, 3, 0.2),
            Err(Error::PreconditionViolated(_))
        ));
        let g = FqPoly::new(&field, [(0, 1)]);
        assert!(lacunary_reduce(&field, &g, 2, 0.2).is_err()); // L below (3/4)K
        assert!(lacunary_reduce(&field, &g, 3, 0.3).is_err()); // eps too big
    }
}
