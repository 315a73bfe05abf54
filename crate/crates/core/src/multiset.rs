//! Multisets on `[n]`, t-spread blocks, and the stretching operators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A nonempty weakly increasing sequence of integers in `[1, n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multiset {
    elems: Vec<usize>,
    n: usize,
}

/// A contiguous run of a t-spread multiset whose consecutive gaps are exactly `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Position of the first element in the parent multiset (0-based).
    pub start: usize,
    pub elems: Vec<usize>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn min(&self) -> usize {
        self.elems[0]
    }

    pub fn max(&self) -> usize {
        *self.elems.last().unwrap()
    }
}

impl Multiset {
    pub fn new(elems: Vec<usize>, n: usize) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::Precondition("multisets must be nonempty".into()));
        }
        if elems.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition(format!("{elems:?} is not weakly increasing")));
        }
        if elems[0] < 1 || *elems.last().unwrap() > n {
            return Err(Error::Precondition(format!("{elems:?} leaves [1, {n}]")));
        }
        Ok(Multiset { elems, n })
    }

    pub(crate) fn from_sorted_unchecked(elems: Vec<usize>, n: usize) -> Self {
        Multiset { elems, n }
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn to_monomial(&self) -> Monomial {
        let mut exps = vec![0u32; self.n];
        for &i in &self.elems {
            exps[i - 1] += 1;
        }
        Monomial::new(exps)
    }

    pub fn is_t_spread(&self, t: usize) -> bool {
        is_t_spread(&self.elems, t)
    }

    pub fn block_decomposition(&self, t: usize) -> Result<Vec<Block>> {
        if !self.is_t_spread(t) {
            return Err(Error::Precondition(format!("{self} is not {t}-spread")));
        }
        Ok(blocks_of(&self.elems, t))
    }

    pub fn block_sizes(&self, t: usize) -> Result<Vec<usize>> {
        Ok(self.block_decomposition(t)?.iter().map(Block::len).collect())
    }

    pub fn is_c_bounded(&self, t: usize, c: usize) -> Result<bool> {
        Ok(self.block_sizes(t)?.into_iter().all(|s| s <= c))
    }

    /// Positionwise stretch `i_j -> i_j + (j - 1)`, into ambient `n + d - 1`.
    pub fn sigma(&self) -> Multiset {
        let d = self.len();
        Multiset { elems: self.elems.iter().enumerate().map(|(j, &i)| i + j).collect(), n: self.n + d - 1 }
    }

    /// Inverse of [`Multiset::sigma`]; needs a strictly increasing input.
    pub fn tau(&self) -> Result<Multiset> {
        let d = self.len();
        if self.elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!("tau needs a strictly increasing set, got {self}")));
        }
        if self.n + 1 < d {
            return Err(Error::Precondition(format!("tau of {self} leaves [1, n - d + 1]")));
        }
        let elems: Vec<usize> = self.elems.iter().enumerate().map(|(j, &i)| i - j).collect();
        let n = self.n + 1 - d;
        if *elems.last().unwrap() > n {
            return Err(Error::Precondition(format!("tau of {self} leaves [1, {n}]")));
        }
        Ok(Multiset { elems, n })
    }

    pub fn sigma_pow(&self, t: usize) -> Multiset {
        (0..t).fold(self.clone(), |a, _| a.sigma())
    }

    pub fn tau_pow(&self, t: usize) -> Result<Multiset> {
        (0..t).try_fold(self.clone(), |a, _| a.tau())
    }

    /// Parse `{1,3,5}`. With `n = None` the ambient is the largest element.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Multiset> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected `{{...}}`, got `{s}`")))?;
        let elems = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad element `{x}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        let n = n.unwrap_or_else(|| elems.iter().copied().max().unwrap_or(0));
        Multiset::new(elems, n)
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.elems.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn is_t_spread(elems: &[usize], t: usize) -> bool {
    elems.windows(2).all(|w| w[1] >= w[0] + t)
}

/// Maximal blocks of a sequence already known to be t-spread.
pub(crate) fn blocks_of(elems: &[usize], t: usize) -> Vec<Block> {
    let mut out: Vec<Block> = Vec::new();
    for (pos, &i) in elems.iter().enumerate() {
        match out.last_mut() {
            Some(b) if i == b.max() + t => b.elems.push(i),
            _ => out.push(Block { start: pos, elems: vec![i] }),
        }
    }
    out
}
