//! Power sets P_e, the counts L_e and l_e, square roots, generalized power
//! sets with their maxima, and the coset-wise lemma checkers.

use crate::aut::{
    automorphism_group, fix, induced_on_quotient, inner_automorphism, restrict, shift, f_map,
    Automorphism, AutGroup,
};
use crate::error::{Error, Result};
use crate::group::table::{GroupTable, Subgroup};

/// {g : α(g) = g^e} for a signed exponent.
#[derive(Clone, Debug)]
pub struct PowerSet {
    pub exponent: i64,
    pub members: Vec<u32>,
}

pub fn p_set(g: &GroupTable, a: &Automorphism, e: i64) -> PowerSet {
    let members = g.elements().filter(|&x| a.apply(x) == g.pow(x, e)).collect();
    PowerSet { exponent: e, members }
}

pub fn l_of_alpha(g: &GroupTable, a: &Automorphism, e: i64) -> usize {
    g.elements().filter(|&x| a.apply(x) == g.pow(x, e)).count()
}

/// L_e(G) with a witnessing automorphism (index into `aut.elements`).
pub fn l_value(g: &GroupTable, aut: &AutGroup, e: i64) -> (usize, usize) {
    aut.elements
        .iter()
        .enumerate()
        .map(|(i, a)| (l_of_alpha(g, a, e), i))
        .max()
        .expect("Aut(G) contains id")
}

pub fn sqrt_set(g: &GroupTable, x: u32) -> Vec<u32> {
    g.elements().filter(|&f| g.mul(f, f) == x).collect()
}

pub fn maxsqrt(g: &GroupTable) -> usize {
    g.elements().map(|x| sqrt_set(g, x).len()).max().unwrap_or(0)
}

/// Maximum of |P₋₁(τ_g)| over g, with witness. The identity
/// P₋₁(τ_g) = √(g⁻²)·g is asserted for every g along the way.
pub fn inverted_by_inner(g: &GroupTable) -> (usize, u32) {
    let mut best = (0usize, 0u32);
    for c in g.elements() {
        let tau = inner_automorphism(g, c);
        let mut p = p_set(g, &tau, -1).members;
        p.sort_unstable();
        let mut via_roots: Vec<u32> = sqrt_set(g, g.pow(c, -2))
            .into_iter()
            .map(|r| g.mul(r, c))
            .collect();
        via_roots.sort_unstable();
        assert_eq!(p, via_roots, "sqrtProp(1) identity");
        if p.len() > best.0 {
            best = (p.len(), c);
        }
    }
    best
}

/// {g : α(g) = β₁(g)···β_e(g)}.
pub fn generalized_p_set(g: &GroupTable, a: &Automorphism, factors: &[&Automorphism]) -> Vec<u32> {
    g.elements()
        .filter(|&x| {
            let mut prod = 0u32;
            for b in factors {
                prod = g.mul(prod, b.apply(x));
            }
            a.apply(x) == prod
        })
        .collect()
}

/// Func(G) = max over (α, β) of |P₂(α | id, β)|, with witnesses.
pub fn func_value(g: &GroupTable, aut: &AutGroup) -> (usize, usize, usize) {
    let id = Automorphism::identity(g.order());
    let mut best = (0usize, 0usize, 0usize);
    for (i, a) in aut.elements.iter().enumerate() {
        for (j, b) in aut.elements.iter().enumerate() {
            let count = generalized_p_set(g, a, &[&id, b]).len();
            if b.is_identity() {
                debug_assert_eq!(count, l_of_alpha(g, a, 2), "Func(α, id) = L₂(α)");
            }
            if count > best.0 {
                best = (count, i, j);
            }
        }
    }
    best
}

pub const LHAT_MAX_E: u32 = 3;
pub const LHAT_AUT_BUDGET: usize = 300;
pub const LHAT_WORK_BUDGET: u64 = 200_000_000;

/// L̂_e(G) = max over (α, β₁..β_e) of |P_e(α | β₁..β_e)|.
pub fn lhat(g: &GroupTable, aut: &AutGroup, e: u32) -> Result<usize> {
    if e == 0 || e > LHAT_MAX_E || aut.order() > LHAT_AUT_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "lhat(e = {e}) with |Aut| = {}",
            aut.order()
        )));
    }
    let work = (aut.order() as u64)
        .pow(e + 1)
        .saturating_mul(g.order() as u64);
    if work > LHAT_WORK_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "lhat(e = {e}) tuple scan needs {work} operations"
        )));
    }
    let m = aut.order();
    let mut best = 0usize;
    let mut idx = vec![0usize; e as usize];
    loop {
        for a in &aut.elements {
            let factors: Vec<&Automorphism> = idx.iter().map(|&i| &aut.elements[i]).collect();
            best = best.max(generalized_p_set(g, a, &factors).len());
        }
        // odometer over the factor tuple
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(best);
            }
            idx[pos] += 1;
            if idx[pos] < m {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct LemmaCheck {
    pub name: String,
    pub ok: bool,
    pub witness: Option<String>,
}

impl LemmaCheck {
    fn pass(name: impl Into<String>) -> Self {
        LemmaCheck {
            name: name.into(),
            ok: true,
            witness: None,
        }
    }

    fn fail(name: impl Into<String>, witness: String) -> Self {
        LemmaCheck {
            name: name.into(),
            ok: false,
            witness: Some(witness),
        }
    }
}

/// L_e(α) ≤ k(G)·|fix(α)| for every α and e in {−1, 2, 3}.
pub fn check_l_e(g: &GroupTable, aut: &AutGroup) -> Vec<LemmaCheck> {
    let k = g.class_count();
    let mut out = Vec::new();
    for e in [-1i64, 2, 3] {
        let mut check = LemmaCheck::pass(format!("lELem e={e}"));
        for (i, a) in aut.elements.iter().enumerate() {
            let le = l_of_alpha(g, a, e);
            let bound = k * fix(g, a).order();
            if le > bound {
                check = LemmaCheck::fail(
                    format!("lELem e={e}"),
                    format!("alpha #{i}: L_e = {le} > {bound}"),
                );
                break;
            }
        }
        out.push(check);
    }
    // the identity automorphism pins the definition down
    let id = Automorphism::identity(g.order());
    for e in [-1i64, 2, 3] {
        let direct = g.elements().filter(|&x| g.pow(x, e - 1) == 0).count();
        let via = l_of_alpha(g, &id, e);
        out.push(if via == direct {
            LemmaCheck::pass(format!("L_e(id) e={e}"))
        } else {
            LemmaCheck::fail(format!("L_e(id) e={e}"), format!("{via} != {direct}"))
        });
    }
    out
}

fn characteristic_subgroups_of(g: &GroupTable, aut: &AutGroup) -> Vec<Subgroup> {
    let images: Vec<Vec<u32>> = aut.elements.iter().map(|a| a.images().to_vec()).collect();
    g.characteristic_subgroups(&images)
}

/// L₂(α) ≤ [N : fix(α|_N)]·L₂(α̃) for every characteristic N.
pub fn check_l_two(g: &GroupTable, aut: &AutGroup) -> Result<Vec<LemmaCheck>> {
    let mut out = Vec::new();
    for nsub in characteristic_subgroups_of(g, aut) {
        let (q, proj) = g.quotient(&nsub)?;
        let mut check = LemmaCheck::pass(format!("lTwoLem |N|={}", nsub.order()));
        for (i, a) in aut.elements.iter().enumerate() {
            let fix_n = restrict(g, a, &nsub)?
                .images()
                .iter()
                .enumerate()
                .filter(|&(x, &im)| x as u32 == im)
                .count();
            let qa = induced_on_quotient(g, a, &q, &proj)?;
            let l2_quot = l_of_alpha(&q, &qa, 2);
            let l2 = l_of_alpha(g, a, 2);
            let bound = (nsub.order() / fix_n) * l2_quot;
            if l2 > bound {
                check = LemmaCheck::fail(
                    format!("lTwoLem |N|={}", nsub.order()),
                    format!("alpha #{i}: L2 = {l2} > {bound}"),
                );
                break;
            }
        }
        out.push(check);
    }
    Ok(out)
}

/// L₃(α) ≤ [N : fix(α|_N)]·L₋₁(N)·L₃(α̃) for every characteristic N.
pub fn check_l_three(g: &GroupTable, aut: &AutGroup) -> Result<Vec<LemmaCheck>> {
    let mut out = Vec::new();
    for nsub in characteristic_subgroups_of(g, aut) {
        let n_table = g.sub_table(&nsub);
        let n_aut = automorphism_group(&n_table)?;
        let (l_minus_one_n, _) = l_value(&n_table, &n_aut, -1);
        let (q, proj) = g.quotient(&nsub)?;
        let mut check = LemmaCheck::pass(format!("lThreeLem |N|={}", nsub.order()));
        for (i, a) in aut.elements.iter().enumerate() {
            let fix_n = restrict(g, a, &nsub)?
                .images()
                .iter()
                .enumerate()
                .filter(|&(x, &im)| x as u32 == im)
                .count();
            let qa = induced_on_quotient(g, a, &q, &proj)?;
            let l3_quot = l_of_alpha(&q, &qa, 3);
            let l3 = l_of_alpha(g, a, 3);
            let bound = (nsub.order() / fix_n) * l_minus_one_n * l3_quot;
            if l3 > bound {
                check = LemmaCheck::fail(
                    format!("lThreeLem |N|={}", nsub.order()),
                    format!("alpha #{i}: L3 = {l3} > {bound}"),
                );
                break;
            }
        }
        out.push(check);
    }
    Ok(out)
}

/// Coset membership: for g in P_e(α) and n in N, ng in P_e(α) iff
/// α(n) = sh_{τ_g}^(e)(n).
pub fn check_shift_cor(g: &GroupTable, aut: &AutGroup) -> Vec<LemmaCheck> {
    let mut out = Vec::new();
    for e in [1i64, 2, 3] {
        let mut check = LemmaCheck::pass(format!("shiftCor e={e}"));
        'outer: for nsub in characteristic_subgroups_of(g, aut) {
            for a in &aut.elements {
                let p = p_set(g, a, e);
                for &gg in &p.members {
                    let tau = inner_automorphism(g, gg);
                    for &n in nsub.members() {
                        let lhs = p.members.contains(&g.mul(n, gg));
                        let rhs = a.apply(n) == shift(g, &tau, e as u32, n);
                        if lhs != rhs {
                            check = LemmaCheck::fail(
                                format!("shiftCor e={e}"),
                                format!("|N|={}, g={gg}, n={n}", nsub.order()),
                            );
                            break 'outer;
                        }
                    }
                }
            }
        }
        out.push(check);
    }
    out
}

/// shiftTwoProp: the fiber of f_{c,α} through g equals P₋₁(τ_g ∘ τ_c ∘ α)·g.
pub fn check_shift_two_prop(g: &GroupTable, aut: &AutGroup) -> Vec<LemmaCheck> {
    for a in &aut.elements {
        for c in g.elements() {
            for g1 in g.elements() {
                let value = f_map(g, c, a, g1);
                let mut fiber: Vec<u32> =
                    g.elements().filter(|&x| f_map(g, c, a, x) == value).collect();
                fiber.sort_unstable();
                let composite = inner_automorphism(g, g1)
                    .compose(&inner_automorphism(g, c))
                    .compose(a);
                let mut coset: Vec<u32> = p_set(g, &composite, -1)
                    .members
                    .iter()
                    .map(|&r| g.mul(r, g1))
                    .collect();
                coset.sort_unstable();
                if fiber != coset {
                    return vec![LemmaCheck::fail(
                        "shiftTwoProp",
                        format!("c={c}, g={g1}"),
                    )];
                }
            }
        }
    }
    vec![LemmaCheck::pass("shiftTwoProp")]
}

/// The commuting gadget behind the Func bound: whenever g, h and gh all lie
/// in P₂(α | id, β), the elements h and β(g) commute.
pub fn check_func_gadget(g: &GroupTable, aut: &AutGroup) -> Vec<LemmaCheck> {
    let id = Automorphism::identity(g.order());
    for a in &aut.elements {
        for b in &aut.elements {
            let p = generalized_p_set(g, a, &[&id, b]);
            let mut in_p = vec![false; g.order()];
            for &x in &p {
                in_p[x as usize] = true;
            }
            for &x in &p {
                for &y in &p {
                    if in_p[g.mul(x, y) as usize] {
                        let bg = b.apply(x);
                        if g.mul(y, bg) != g.mul(bg, y) {
                            return vec![LemmaCheck::fail(
                                "funcGadget",
                                format!("g={x}, h={y}"),
                            )];
                        }
                    }
                }
            }
        }
    }
    vec![LemmaCheck::pass("funcGadget")]
}

/// nonShiftLem: on a centerless nonsolvable group, for every (α, β, γ) some
/// element violates α(g) = g·β(g)·γ(g).
pub fn check_non_shift(g: &GroupTable, aut: &AutGroup) -> Vec<LemmaCheck> {
    assert!(g.center().is_trivial() && !g.is_solvable());
    for a in &aut.elements {
        for b in &aut.elements {
            for c in &aut.elements {
                let all_match = g.elements().all(|x| {
                    a.apply(x) == g.mul(g.mul(x, b.apply(x)), c.apply(x))
                });
                if all_match {
                    return vec![LemmaCheck::fail("nonShiftLem", "triple with P3 = G".into())];
                }
            }
        }
    }
    vec![LemmaCheck::pass("nonShiftLem")]
}
