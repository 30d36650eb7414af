//! Dense permutations on `{0..degree-1}` with cycle-notation parsing and display.

use crate::error::{Error, Result};

/// A permutation stored as its image array: `images[i]` is where point `i` goes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            if (img as usize) >= degree {
                return Err(Error::NotBijective {
                    degree,
                    reason: format!("image {} out of range", img as usize + 1),
                });
            }
            if seen[img as usize] {
                return Err(Error::NotBijective {
                    degree,
                    reason: format!("image {} repeated", img as usize + 1),
                });
            }
            seen[img as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Parse cycle notation with 1-based points, e.g. `(1 2)(3 4)` or `(1,2,3)`.
    /// The empty string and `()` denote the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let bad = |reason: &str| Error::NotBijective {
            degree,
            reason: reason.to_string(),
        };
        let s = s.trim();
        let mut rest = s;
        let mut moved = vec![false; degree];
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unbalanced parentheses"))?;
            let inner = &rest[1..close];
            rest = rest[close + 1..].trim_start();
            let pts: Vec<usize> = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<_>>()?;
            if pts.is_empty() {
                continue;
            }
            for &p in &pts {
                if p == 0 || p > degree {
                    return Err(bad(&format!("point {p} out of range 1..{degree}")));
                }
                if moved[p - 1] {
                    return Err(bad(&format!("point {p} appears twice")));
                }
                moved[p - 1] = true;
            }
            for w in 0..pts.len() {
                let from = pts[w] - 1;
                let to = pts[(w + 1) % pts.len()] - 1;
                images[from] = to as u16;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let images = other.images.iter().map(|&p| self.images[p as usize]).collect();
        Perm { images }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.images.len()];
        let mut out = String::new();
        for start in 0..self.images.len() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            loop {
                seen[p] = true;
                out.push_str(&(p + 1).to_string());
                p = self.apply(p);
                if p == start {
                    break;
                }
                out.push(' ');
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        let p = Perm::parse_cycles("(1 2)(3 4)", 5).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(4), 4);
        assert_eq!(p.cycle_string(), "(1 2)(3 4)");
        let q = Perm::parse_cycles(&p.cycle_string(), 5).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(2 3)", 3).unwrap();
        // (a*b)(3) = a(b(3)) = a(2) = 1
        assert_eq!(a.compose(&b).apply(2), 0);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Perm::parse_cycles("(1 2", 3).is_err());
        assert!(Perm::parse_cycles("(1 4)", 3).is_err());
        assert!(Perm::parse_cycles("(1 1)", 3).is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Perm::parse_cycles("(1 2 3 4 5)", 6).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
    }
}
