//! Dense exponent-vector monomials in `x1, ..., xn`.
//!
//! The derived `Ord` compares exponent vectors lexicographically, which is the
//! lexicographic monomial order with `x1 > x2 > ... > xn`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiset::Multiset;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Exponent of `x_i`, 1-based.
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    /// 1-based indices of the variables dividing the monomial.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i + 1).collect()
    }

    pub fn support_mask(&self) -> u64 {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | (1u64 << i))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0).map(|i| i + 1)
    }

    pub fn min_index(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0).map(|i| i + 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.n(), other.n());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    /// `x_i * self / x_j` (1-based), `None` when `x_j` does not divide `self`.
    pub fn exchange(&self, i: usize, j: usize) -> Option<Monomial> {
        if self.exps[j - 1] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[j - 1] -= 1;
        exps[i - 1] += 1;
        Some(Monomial { exps })
    }

    pub fn to_multiset(&self) -> Multiset {
        let elems = self.exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e as usize)).collect();
        Multiset::from_sorted_unchecked(elems, self.n())
    }

    /// Parse `x1^2*x3*x5` (or `1`). With `n = None` the ambient is the largest index seen.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Monomial> {
        let s = s.trim();
        let mut pairs = Vec::new();
        if s != "1" {
            for factor in s.split('*') {
                let factor = factor.trim();
                let rest =
                    factor.strip_prefix('x').ok_or_else(|| Error::Parse(format!("bad factor `{factor}` in `{s}`")))?;
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e),
                    None => (rest, "1"),
                };
                let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable index in `{factor}`")))?;
                let exp: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                if idx == 0 {
                    return Err(Error::Parse("variables are numbered from x1".into()));
                }
                pairs.push((idx, exp));
            }
        }
        let top = pairs.iter().map(|p| p.0).max().unwrap_or(0);
        let n = n.unwrap_or(top.max(1));
        if top > n {
            return Err(Error::Parse(format!("x{top} outside ambient ring with n = {n}")));
        }
        let mut exps = vec![0; n];
        for (i, e) in pairs {
            exps[i - 1] += e;
        }
        Ok(Monomial { exps })
    }

    /// Singular-style product, e.g. `x1^2*x3`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        let m = Monomial::new(vec![2, 0, 1, 0, 1]);
        assert_eq!(m.to_string(), "x1^2*x3*x5");
        assert_eq!(Monomial::parse("x1^2*x3*x5", Some(5)).unwrap(), m);
        assert_eq!(Monomial::parse("x1^2*x3*x5", None).unwrap(), m);
        assert_eq!(Monomial::one(3).to_string(), "1");
        assert_eq!(Monomial::parse("1", Some(3)).unwrap(), Monomial::one(3));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Monomial::parse("y1", None).is_err());
        assert!(Monomial::parse("x0", None).is_err());
        assert!(Monomial::parse("x4", Some(3)).is_err());
        assert!(Monomial::parse("x1^a", None).is_err());
    }

    #[test]
    fn lex_order() {
        // x1x4 > x2x3 in lex
        let a = Monomial::parse("x1*x4", Some(4)).unwrap();
        let b = Monomial::parse("x2*x3", Some(4)).unwrap();
        assert!(a > b);
        let c = Monomial::parse("x1^2", Some(4)).unwrap();
        assert!(c > a);
    }

    #[test]
    fn arithmetic() {
        let a = Monomial::parse("x1^2*x2", Some(3)).unwrap();
        let b = Monomial::parse("x1*x2^2*x3", Some(3)).unwrap();
        assert_eq!(a.gcd(&b).to_string(), "x1*x2");
        assert_eq!(a.lcm(&b).to_string(), "x1^2*x2^2*x3");
        assert_eq!(a.mul(&b).degree(), 7);
        assert!(a.div(&b).is_none());
        assert_eq!(b.exchange(1, 3).unwrap().to_string(), "x1^2*x2^2");
        assert!(a.exchange(2, 3).is_none());
    }
}
