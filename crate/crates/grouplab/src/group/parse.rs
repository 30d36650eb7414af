//! The group mini-language: `C<n>`, `D<2n>`, `Q8`, `S<n>`, `A<n>`, `V4`,
//! `SL(2,3)`, `PSL(2,q)`, `PGL(2,q)`, `PGammaL(2,q)`, `file:<path>` and
//! products joined with `x`, e.g. `S3xA5`.

use std::fs;

use crate::error::{Error, Result};
use crate::ff::field::FqField;
use crate::group::perm::Perm;
use crate::group::table::{closure_cap, GroupTable};

pub fn cyclic(n: usize) -> Result<GroupTable> {
    assert!(n >= 1);
    if n == 1 {
        return trivial();
    }
    let images = (0..n).map(|i| ((i + 1) % n) as u16).collect();
    GroupTable::from_permutations(n, &[Perm::from_images(images)?], closure_cap())
}

pub fn trivial() -> Result<GroupTable> {
    GroupTable::from_parts(vec![0], vec!["()".into()], vec![], None)
}

/// Dihedral group of order `2n` acting on `n` points (`n >= 3`).
pub fn dihedral(order: usize) -> Result<GroupTable> {
    if order % 2 != 0 || order < 6 {
        return Err(Error::BadGroupSpec(format!("D{order}")));
    }
    let n = order / 2;
    let rot = Perm::from_images((0..n).map(|i| ((i + 1) % n) as u16).collect())?;
    let refl = Perm::from_images((0..n).map(|i| ((n - i) % n) as u16).collect())?;
    GroupTable::from_permutations(n, &[rot, refl], closure_cap())
}

pub fn symmetric(n: usize) -> Result<GroupTable> {
    if n <= 1 {
        return trivial();
    }
    let mut gens = vec![Perm::parse_cycles("(1 2)", n)?];
    if n > 2 {
        let cycle = format!(
            "({})",
            (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
        );
        gens.push(Perm::parse_cycles(&cycle, n)?);
    }
    GroupTable::from_permutations(n, &gens, closure_cap())
}

pub fn alternating(n: usize) -> Result<GroupTable> {
    if n <= 2 {
        return trivial();
    }
    if n == 3 {
        return GroupTable::from_permutations(3, &[Perm::parse_cycles("(1 2 3)", 3)?], closure_cap());
    }
    let long = if n % 2 == 1 {
        (1..=n).collect::<Vec<_>>()
    } else {
        (2..=n).collect::<Vec<_>>()
    };
    let cycle = format!(
        "({})",
        long.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    );
    let gens = vec![Perm::parse_cycles("(1 2 3)", n)?, Perm::parse_cycles(&cycle, n)?];
    GroupTable::from_permutations(n, &gens, closure_cap())
}

pub fn klein_four() -> Result<GroupTable> {
    let gens = vec![
        Perm::parse_cycles("(1 2)(3 4)", 4)?,
        Perm::parse_cycles("(1 3)(2 4)", 4)?,
    ];
    GroupTable::from_permutations(4, &gens, closure_cap())
}

/// Quaternion group, built directly from the unit table.
pub fn quaternion8() -> Result<GroupTable> {
    // element = sign * axis, encoded (sign in {0,1}, axis in {1,i,j,k})
    let enc = |s: usize, a: usize| (s * 4 + a) as u32;
    // axis product table and its sign: i*j = k, j*i = -k, ...
    let axis_mul = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let axis_sign = [
        [0, 0, 0, 0],
        [0, 1, 0, 1],
        [0, 1, 1, 0],
        [0, 0, 1, 1],
    ];
    let n = 8;
    let mut mul = vec![0u32; n * n];
    for sa in 0..2 {
        for aa in 0..4 {
            for sb in 0..2 {
                for ab in 0..4 {
                    let s = (sa + sb + axis_sign[aa][ab]) % 2;
                    mul[enc(sa, aa) as usize * n + enc(sb, ab) as usize] =
                        enc(s, axis_mul[aa][ab]);
                }
            }
        }
    }
    let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    GroupTable::from_parts(mul, names, vec![enc(0, 1), enc(0, 2)], None)
}

/// SL(2,3) via its faithful action on the 8 nonzero vectors of F_3^2.
pub fn sl23() -> Result<GroupTable> {
    let vecs: Vec<(u64, u64)> = (0..3)
        .flat_map(|x| (0..3).map(move |y| (x, y)))
        .filter(|&(x, y)| (x, y) != (0, 0))
        .collect();
    let apply = |m: [[u64; 2]; 2], v: (u64, u64)| {
        (
            (m[0][0] * v.0 + m[0][1] * v.1) % 3,
            (m[1][0] * v.0 + m[1][1] * v.1) % 3,
        )
    };
    let perm_of = |m: [[u64; 2]; 2]| -> Result<Perm> {
        let images = vecs
            .iter()
            .map(|&v| vecs.iter().position(|&w| w == apply(m, v)).unwrap() as u16)
            .collect();
        Perm::from_images(images)
    };
    let gens = vec![perm_of([[1, 1], [0, 1]])?, perm_of([[0, 2], [1, 0]])?];
    GroupTable::from_permutations(8, &gens, closure_cap())
}

/// Flavor of projective group over F_q acting on the projective line.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum ProjectiveFlavor {
    Psl,
    Pgl,
    PGammaL,
}

/// Points of P^1(F_q): field elements `0..q` plus `q` for infinity.
fn moebius_perm(field: &FqField, a: u64, b: u64, c: u64, d: u64) -> Result<Perm> {
    let q = field.order() as usize;
    let inf = q as u16;
    let mut images = vec![0u16; q + 1];
    for x in field.elements() {
        let num = field.add(field.mul(a, x), b);
        let den = field.add(field.mul(c, x), d);
        images[x as usize] = if den == 0 {
            inf
        } else {
            field.div(num, den) as u16
        };
    }
    images[q] = if c == 0 { inf } else { field.div(a, c) as u16 };
    Perm::from_images(images)
}

pub fn projective_linear(q: u64, flavor: ProjectiveFlavor) -> Result<GroupTable> {
    let field = FqField::from_order(q)?;
    let qn = q as usize;
    let mut gens = Vec::new();
    // translations x -> x + t^i over the power basis of F_q, where t is the
    // residue of X (encoded as the element p)
    let mut basis = 1u64;
    for i in 0..field.extension_degree() {
        gens.push(moebius_perm(&field, 1, basis, 0, 1)?);
        if i + 1 < field.extension_degree() {
            basis = field.mul(basis, field.p());
        }
    }
    // a multiplicative generator s: squares-only for PSL, full torus otherwise
    let s = field
        .elements()
        .find(|&g| {
            g != 0 && {
                // primitive iff no proper-order witness
                crate::ff::field::prime_factors(q - 1)
                    .iter()
                    .all(|&r| field.pow(g, (q - 1) / r) != 1)
            }
        })
        .expect("F_q* is cyclic");
    match flavor {
        ProjectiveFlavor::Psl => {
            gens.push(moebius_perm(&field, field.mul(s, s), 0, 0, 1)?);
        }
        _ => {
            gens.push(moebius_perm(&field, s, 0, 0, 1)?);
        }
    }
    // the Weyl element x -> -1/x
    gens.push(moebius_perm(&field, 0, field.neg(1), 1, 0)?);
    if flavor == ProjectiveFlavor::PGammaL {
        let images = (0..=qn)
            .map(|x| {
                if x == qn {
                    qn as u16
                } else {
                    field.frob(x as u64) as u16
                }
            })
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    GroupTable::from_permutations(qn + 1, &gens, closure_cap())
}

fn parse_atom(spec: &str) -> Result<GroupTable> {
    let bad = || Error::BadGroupSpec(spec.to_string());
    if let Some(path) = spec.strip_prefix("file:") {
        return parse_perm_file(path);
    }
    match spec {
        "V4" => return klein_four(),
        "Q8" => return quaternion8(),
        "SL(2,3)" => return sl23(),
        _ => {}
    }
    for (prefix, flavor) in [
        ("PSL(2,", ProjectiveFlavor::Psl),
        ("PGL(2,", ProjectiveFlavor::Pgl),
        ("PGammaL(2,", ProjectiveFlavor::PGammaL),
    ] {
        if let Some(rest) = spec.strip_prefix(prefix) {
            let q: u64 = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            return projective_linear(q, flavor);
        }
    }
    let (head, tail) = spec.split_at(1);
    let n: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "C" if n >= 1 => cyclic(n),
        "D" => dihedral(n),
        "S" if n >= 1 => symmetric(n),
        "A" if n >= 1 => alternating(n),
        _ => Err(bad()),
    }
}

/// Text file: first line `degree <d>`, then one permutation per line in cycle
/// notation.
fn parse_perm_file(path: &str) -> Result<GroupTable> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::BadGroupSpec(format!("file:{path}")))?;
    let degree: usize = header
        .trim()
        .strip_prefix("degree")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| Error::BadGroupSpec(format!("file:{path}: bad header")))?;
    let gens: Vec<Perm> = lines
        .map(|l| Perm::parse_cycles(l.trim(), degree))
        .collect::<Result<_>>()?;
    GroupTable::from_permutations(degree, &gens, closure_cap())
}

/// Parse a full group spec, including `x`-products. A `file:` spec is taken
/// whole, since paths may contain `x`.
pub fn parse_group(spec: &str) -> Result<GroupTable> {
    if spec.trim().starts_with("file:") {
        return parse_atom(spec.trim());
    }
    let parts: Vec<&str> = spec.split('x').collect();
    let mut acc: Option<GroupTable> = None;
    for part in parts {
        let g = parse_atom(part.trim())?;
        acc = Some(match acc {
            None => g,
            Some(a) => GroupTable::direct_product(&a, &g, closure_cap())?,
        });
    }
    acc.ok_or_else(|| Error::BadGroupSpec(spec.to_string()))
}
