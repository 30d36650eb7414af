//! Automorphism groups by generator-image backtracking, plus the maps built
//! from an automorphism: fixed points, the translation map T, shifts and f.

use crate::error::{Error, Result};
use crate::group::table::{GroupTable, Subgroup};

pub const DEFAULT_AUT_CAP: usize = 100_000;
pub const AUT_GROUP_ORDER_CAP: usize = 512;

/// An automorphism stored as its full image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    images: Vec<u32>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Automorphism {
            images: (0..n as u32).collect(),
        }
    }

    /// Validate and wrap an image array. The homomorphism property is checked
    /// on all pairs for |G| <= 512 and on seeded random pairs above.
    pub fn from_images(g: &GroupTable, images: Vec<u32>) -> Result<Self> {
        let n = g.order();
        if images.len() != n || images[0] != 0 {
            return Err(Error::NotBijective {
                degree: n,
                reason: "bad length or identity not fixed".into(),
            });
        }
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n || seen[im] {
                return Err(Error::NotBijective {
                    degree: n,
                    reason: "image array not a bijection".into(),
                });
            }
            seen[im] = true;
        }
        let check = |x: u32, y: u32| -> bool {
            images[g.mul(x, y) as usize] == g.mul(images[x as usize], images[y as usize])
        };
        if n <= 512 {
            for x in 0..n as u32 {
                for y in 0..n as u32 {
                    if !check(x, y) {
                        return Err(Error::NotBijective {
                            degree: n,
                            reason: format!("not multiplicative at ({x}, {y})"),
                        });
                    }
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                let x = rng.gen_range(0..n) as u32;
                let y = rng.gen_range(0..n) as u32;
                if !check(x, y) {
                    return Err(Error::NotBijective {
                        degree: n,
                        reason: format!("not multiplicative at ({x}, {y})"),
                    });
                }
            }
        }
        Ok(Automorphism { images })
    }

    pub fn apply(&self, g: u32) -> u32 {
        self.images[g as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// `(self ∘ other)(g) = self(other(g))`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            images: other.images.iter().map(|&g| self.images[g as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Automorphism { images }
    }

    /// Order as a permutation of the element set (lcm of cycle lengths).
    pub fn order(&self) -> usize {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut acc: usize = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            acc = lcm(acc, len);
        }
        acc
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The inner automorphism τ_g: x -> g x g⁻¹.
pub fn inner_automorphism(g: &GroupTable, c: u32) -> Automorphism {
    Automorphism {
        images: g.elements().map(|x| g.conj(c, x)).collect(),
    }
}

#[derive(Clone, Debug)]
pub struct AutGroup {
    pub elements: Vec<Automorphism>,
    pub inner_count: usize,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Closure chain for the chosen generating set: `closures[j]` is the BFS
/// order of the subgroup generated by `gens[0..=j]`, and `tree[j]` holds for
/// each non-identity member the pair (predecessor, generator index) with
/// member = predecessor * gens[generator index].
struct GenChain {
    gens: Vec<u32>,
    closures: Vec<Vec<u32>>,
    trees: Vec<Vec<(u32, usize)>>,
}

fn build_chain(g: &GroupTable, gens: &[u32]) -> GenChain {
    let mut closures = Vec::new();
    let mut trees = Vec::new();
    for j in 0..gens.len() {
        let avail = &gens[..=j];
        let mut order = vec![0u32];
        let mut tree = vec![(0u32, usize::MAX)];
        let mut seen = vec![false; g.order()];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            for (gi, &gen) in avail.iter().enumerate() {
                let y = g.mul(x, gen);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    order.push(y);
                    tree.push((x, gi));
                }
            }
            head += 1;
        }
        closures.push(order);
        trees.push(tree);
    }
    GenChain {
        gens: gens.to_vec(),
        closures,
        trees,
    }
}

/// Extend chosen generator images over the j-th closure. Returns the partial
/// image map on success, or `None` on any homomorphism or injectivity
/// conflict.
fn extend_partial(
    g: &GroupTable,
    chain: &GenChain,
    j: usize,
    gen_images: &[u32],
) -> Option<Vec<u32>> {
    let order = &chain.closures[j];
    let tree = &chain.trees[j];
    let n = g.order();
    let mut image = vec![u32::MAX; n];
    let mut hit = vec![false; n];
    image[0] = 0;
    hit[0] = true;
    for idx in 1..order.len() {
        let (prev, gi) = tree[idx];
        let im = g.mul(image[prev as usize], gen_images[gi]);
        if hit[im as usize] {
            return None;
        }
        hit[im as usize] = true;
        image[order[idx] as usize] = im;
    }
    // edge consistency: image(x * gen) == image(x) * image(gen)
    for &x in order {
        for (gi, _) in chain.gens[..=j].iter().enumerate() {
            let y = g.mul(x, chain.gens[gi]);
            if image[y as usize] != g.mul(image[x as usize], gen_images[gi]) {
                return None;
            }
        }
    }
    Some(image)
}

pub fn automorphism_group(g: &GroupTable) -> Result<AutGroup> {
    automorphism_group_capped(g, DEFAULT_AUT_CAP)
}

pub fn automorphism_group_capped(g: &GroupTable, cap: usize) -> Result<AutGroup> {
    let n = g.order();
    if n > AUT_GROUP_ORDER_CAP {
        return Err(Error::GroupTooLarge {
            order: n,
            cap: AUT_GROUP_ORDER_CAP,
        });
    }
    if n == 1 {
        return Ok(AutGroup {
            elements: vec![Automorphism::identity(1)],
            inner_count: 1,
        });
    }
    let gens = g.small_generating_set();
    let chain = build_chain(g, &gens);
    // candidate pool per generator: elements of the same order
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&gen| {
            let ord = g.element_order(gen);
            g.elements().filter(|&x| g.element_order(x) == ord).collect()
        })
        .collect();
    let mut found: Vec<Automorphism> = Vec::new();
    let mut chosen = vec![0u32; gens.len()];
    backtrack(g, &chain, &candidates, 0, &mut chosen, &mut found, cap)?;
    found.sort();
    let center = g.center().order();
    let aut = AutGroup {
        elements: found,
        inner_count: n / center,
    };
    debug_assert!(aut.order() % aut.inner_count == 0);
    Ok(aut)
}

fn backtrack(
    g: &GroupTable,
    chain: &GenChain,
    candidates: &[Vec<u32>],
    level: usize,
    chosen: &mut Vec<u32>,
    found: &mut Vec<Automorphism>,
    cap: usize,
) -> Result<()> {
    for &cand in &candidates[level] {
        chosen[level] = cand;
        match extend_partial(g, chain, level, &chosen[..=level]) {
            None => continue,
            Some(image) => {
                if level + 1 < chain.gens.len() {
                    backtrack(g, chain, candidates, level + 1, chosen, found, cap)?;
                } else {
                    // the closure at the last level is all of G, so the
                    // partial map is total and already verified on edges
                    debug_assert!(image.iter().all(|&v| v != u32::MAX));
                    found.push(Automorphism { images: image });
                    if found.len() > cap {
                        return Err(Error::AutCapExceeded { cap });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Fixed-point subgroup of an automorphism.
pub fn fix(g: &GroupTable, a: &Automorphism) -> Subgroup {
    Subgroup::from_sorted(g.elements().filter(|&x| a.apply(x) == x).collect())
}

/// `T_α(g) = g⁻¹ α(g)`.
pub fn t_map(g: &GroupTable, a: &Automorphism, x: u32) -> u32 {
    g.mul(g.inv(x), a.apply(x))
}

/// `sh_α^(e)(g) = g · α(g) · α²(g) ··· α^{e−1}(g)`.
pub fn shift(g: &GroupTable, a: &Automorphism, e: u32, x: u32) -> u32 {
    let mut acc = 0u32;
    let mut cur = x;
    for _ in 0..e {
        acc = g.mul(acc, cur);
        cur = a.apply(cur);
    }
    acc
}

/// `f_{c,α}(g) = g · c · α(g)`.
pub fn f_map(g: &GroupTable, c: u32, a: &Automorphism, x: u32) -> u32 {
    g.mul(g.mul(x, c), a.apply(x))
}

/// Maximum automorphism order.
pub fn mao(g: &GroupTable) -> Result<usize> {
    let aut = automorphism_group(g)?;
    Ok(aut.elements.iter().map(|a| a.order()).max().unwrap_or(1))
}

/// Restriction of `a` to an invariant subgroup, re-indexed against
/// `sub_table` (whose element i is `sub.members()[i]`).
pub fn restrict(
    g: &GroupTable,
    a: &Automorphism,
    sub: &Subgroup,
) -> Result<Automorphism> {
    let images = sub
        .members()
        .iter()
        .map(|&x| {
            let im = a.apply(x);
            sub.members()
                .binary_search(&im)
                .map(|i| i as u32)
                .map_err(|_| Error::NotNormal)
        })
        .collect::<Result<Vec<u32>>>()?;
    let _ = g;
    // the restriction of a homomorphism needs no re-verification
    Ok(Automorphism { images })
}

/// The automorphism induced on `G/N` for an invariant normal `N`, given the
/// quotient table and the coset projection from `GroupTable::quotient`.
pub fn induced_on_quotient(
    g: &GroupTable,
    a: &Automorphism,
    quotient: &GroupTable,
    projection: &[u32],
) -> Result<Automorphism> {
    let mut images = vec![u32::MAX; quotient.order()];
    for x in g.elements() {
        let from = projection[x as usize];
        let to = projection[a.apply(x) as usize];
        if images[from as usize] == u32::MAX {
            images[from as usize] = to;
        } else if images[from as usize] != to {
            return Err(Error::NotNormal);
        }
    }
    Automorphism::from_images(quotient, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse::parse_group;

    fn aut_of(spec: &str) -> AutGroup {
        automorphism_group(&parse_group(spec).unwrap()).unwrap()
    }

    #[test]
    fn aut_s3_is_inner() {
        let g = parse_group("S3").unwrap();
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(aut.order(), 6);
        assert_eq!(aut.inner_count, 6);
        for c in g.elements() {
            let tau = inner_automorphism(&g, c);
            assert!(aut.elements.contains(&tau));
        }
    }

    #[test]
    fn aut_v4_is_gl2f2() {
        assert_eq!(aut_of("V4").order(), 6);
    }

    #[test]
    fn aut_cyclic_matches_unit_group() {
        for n in 1..=32usize {
            let phi = (1..=n).filter(|&a| gcd(a, n) == 1).count();
            assert_eq!(aut_of(&format!("C{n}")).order(), phi, "Aut(C{n})");
        }
    }

    #[test]
    fn aut_closure_properties() {
        for spec in ["S3", "Q8", "A4", "D8", "C12"] {
            let g = parse_group(spec).unwrap();
            let aut = automorphism_group(&g).unwrap();
            assert!(aut.elements.iter().any(|a| a.is_identity()));
            for a in &aut.elements {
                assert!(aut.elements.contains(&a.inverse()), "{spec}: inverse");
            }
            for a in aut.elements.iter().take(8) {
                for b in aut.elements.iter().take(8) {
                    assert!(aut.elements.contains(&a.compose(b)), "{spec}: closure");
                }
            }
            assert_eq!(aut.order() % aut.inner_count, 0);
            assert_eq!(aut.inner_count, g.order() / g.center().order());
        }
    }

    #[test]
    fn fix_examples() {
        let g = parse_group("S3").unwrap();
        let id = Automorphism::identity(6);
        assert_eq!(fix(&g, &id).order(), 6);
        for c in g.elements() {
            let tau = inner_automorphism(&g, c);
            assert_eq!(fix(&g, &tau), g.centralizer(c));
        }
        let c5 = parse_group("C5").unwrap();
        let invert = Automorphism::from_images(&c5, c5.elements().map(|x| c5.inv(x)).collect()).unwrap();
        assert!(fix(&c5, &invert).is_trivial());
        for x in c5.elements() {
            assert_eq!(t_map(&c5, &invert, x), c5.pow(x, -2));
        }
    }

    #[test]
    fn t_map_fibers_are_fix_cosets() {
        use std::collections::BTreeMap;
        for spec in ["S3", "A4", "Q8", "C12"] {
            let g = parse_group(spec).unwrap();
            let aut = automorphism_group(&g).unwrap();
            for a in &aut.elements {
                let f = fix(&g, a);
                let mut fibers: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
                for x in g.elements() {
                    fibers.entry(t_map(&g, a, x)).or_default().push(x);
                }
                for members in fibers.values() {
                    // each fiber is the right coset fix(a) * g for any of its g
                    let rep = members[0];
                    let mut coset: Vec<u32> =
                        f.members().iter().map(|&h| g.mul(h, rep)).collect();
                    coset.sort_unstable();
                    assert_eq!(&coset, members, "{spec}: fiber law");
                }
            }
        }
    }

    #[test]
    fn shift_and_f_map_small_cases() {
        let g = parse_group("S3").unwrap();
        let id = Automorphism::identity(6);
        for x in g.elements() {
            assert_eq!(shift(&g, &id, 3, x), g.pow(x, 3));
            assert_eq!(shift(&g, &id, 1, x), x);
            assert_eq!(shift(&g, &id, 0, x), 0);
            assert_eq!(f_map(&g, 0, &id, x), g.pow(x, 2));
        }
        for c in g.elements() {
            let tau = inner_automorphism(&g, c);
            for x in g.elements() {
                assert_eq!(shift(&g, &tau, 2, x), g.mul(x, g.conj(c, x)));
            }
        }
        // fibers of f partition the domain
        let tau = inner_automorphism(&g, 1);
        let total: usize = g
            .elements()
            .map(|v| g.elements().filter(|&x| f_map(&g, 2, &tau, x) == v).count())
            .sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn mao_examples() {
        assert_eq!(mao(&parse_group("V4").unwrap()).unwrap(), 3);
        assert_eq!(mao(&parse_group("S3").unwrap()).unwrap(), 3);
        assert_eq!(mao(&parse_group("C2").unwrap()).unwrap(), 1);
    }

    #[test]
    fn complete_groups_are_all_inner() {
        for spec in ["S3", "S4"] {
            let g = parse_group(spec).unwrap();
            let aut = automorphism_group(&g).unwrap();
            assert_eq!(aut.order(), aut.inner_count, "{spec} complete");
            for a in &aut.elements {
                assert!(
                    g.elements().any(|c| &inner_automorphism(&g, c) == a),
                    "{spec}: automorphism not inner"
                );
            }
        }
    }

    #[test]
    fn restriction_and_quotient_action() {
        let g = parse_group("A4").unwrap();
        let aut = automorphism_group(&g).unwrap();
        let v4 = g
            .normal_subgroups()
            .into_iter()
            .find(|s| s.order() == 4)
            .unwrap();
        let (q, proj) = g.quotient(&v4).unwrap();
        let sub = g.sub_table(&v4);
        for a in &aut.elements {
            let r = restrict(&g, a, &v4).unwrap();
            assert_eq!(r.images().len(), 4);
            let _ = Automorphism::from_images(&sub, r.images().to_vec()).unwrap();
            let qa = induced_on_quotient(&g, a, &q, &proj).unwrap();
            assert_eq!(qa.images().len(), 3);
        }
    }
}
