//! Permutations on `{0, .., n-1}` acting on the right.
//!
//! Products compose left to right: `x^(a*b) = (x^a)^b`. Text form uses
//! 1-based cycle notation, e.g. `(1,2)(3,4)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list (0-based).
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            if seen[x] {
                return Err(Error::Syntax(format!("image {} repeated", x + 1)));
            }
            seen[x] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.iter().map(|&x| x as usize).collect()).is_ok());
        Perm { images }
    }

    /// Parses 1-based cycle notation. Cycles are multiplied left to right, so
    /// `(1,2)(2,3)` equals `(1,3,2)`.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut result = Perm::identity(degree);
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Syntax("empty permutation".into()));
        }
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Syntax(format!("expected '(' in {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Syntax(format!("unclosed cycle in {text:?}")))?;
            let body = &body_start[..close];
            rest = &body_start[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut points = Vec::new();
            for tok in body.split(',') {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Syntax(format!("bad point {tok:?} in {text:?}")))?;
                if v == 0 || v > degree {
                    return Err(Error::PointOutOfRange { point: v, degree });
                }
                if points.contains(&(v - 1)) {
                    return Err(Error::Syntax(format!("point {v} repeated in a cycle")));
                }
                points.push(v - 1);
            }
            let mut cycle: Vec<u32> = (0..degree as u32).collect();
            for (i, &x) in points.iter().enumerate() {
                cycle[x] = points[(i + 1) % points.len()] as u32;
            }
            result = result.then(&Perm { images: cycle });
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Checked product `self * other` (apply `self` first).
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate(&self, g: &Perm) -> Result<Perm> {
        if self.degree() != g.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: g.degree(),
            });
        }
        let mut out = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[x as usize];
        }
        Ok(Perm { images: out })
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.image(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            s.push_str(&parts.join(","));
            s.push(')');
        }
        s
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self.to_cycle_string())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_images() {
        let p = Perm::parse("(1,2)(3,4)", 4).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(Perm::parse("()", 3).unwrap(), Perm::identity(3));
    }

    #[test]
    fn right_action_composition() {
        let a = Perm::parse("(1,2)", 3).unwrap();
        let b = Perm::parse("(2,3)", 3).unwrap();
        assert_eq!(a.compose(&b).unwrap().to_cycle_string(), "(1,3,2)");
        assert_eq!(Perm::parse("(1,2)(2,3)", 3).unwrap().to_cycle_string(), "(1,3,2)");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            Perm::parse("(1,5)", 4),
            Err(Error::PointOutOfRange { .. })
        ));
        assert!(matches!(Perm::parse("(1,2", 4), Err(Error::Syntax(_))));
        assert!(matches!(Perm::parse("(1,1)", 4), Err(Error::Syntax(_))));
        let a = Perm::identity(3);
        let b = Perm::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn conjugation() {
        let x = Perm::parse("(1,2,3)", 4).unwrap();
        let g = Perm::parse("(3,4)", 4).unwrap();
        let c = x.conjugate(&g).unwrap();
        let expect = g.inverse().then(&x).then(&g);
        assert_eq!(c, expect);
        assert_eq!(c.to_cycle_string(), "(1,2,4)");
    }

    #[test]
    fn order_and_parity() {
        let p = Perm::parse("(1,2)(3,4,5)", 6).unwrap();
        assert_eq!(p.order(), 6);
        assert!(!p.is_even());
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(2), p.then(&p));
    }
}
