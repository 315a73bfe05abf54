//! The three named ideal families and their closed-form invariants.

use std::fmt;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// c-bounded t-spread Veronese ideal: generated by `x_A` for t-spread `A` of size `d`
/// in `[n]` whose maximal blocks have at most `c` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CBounded {
    pub c: usize,
    pub n: usize,
    pub d: usize,
    pub t: usize,
}

/// t-spread Veronese ideal of bounded block type: at most `k` maximal blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockType {
    pub n: usize,
    pub d: usize,
    pub t: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum IdealSpec {
    /// Degree-`d` monomials with `deg_{x_i} <= bounds[i]`.
    VeroneseType {
        d: usize,
        bounds: Vec<usize>,
    },
    CBounded(CBounded),
    BlockType(BlockType),
}

impl IdealSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            IdealSpec::VeroneseType { d, bounds } => {
                if bounds.is_empty() || *d == 0 {
                    return Err(Error::Precondition("veronese-type needs n >= 1 and d >= 1".into()));
                }
                if bounds.windows(2).any(|w| w[0] > w[1]) || bounds[0] < 1 || *bounds.last().unwrap() > *d {
                    return Err(Error::Precondition(format!(
                        "veronese-type bounds must satisfy 1 <= a_1 <= ... <= a_n <= d, got {bounds:?}"
                    )));
                }
                if bounds.iter().sum::<usize>() <= *d {
                    return Err(Error::Precondition("veronese-type needs d < a_1 + ... + a_n".into()));
                }
                Ok(())
            }
            IdealSpec::CBounded(s) => s.validate(),
            IdealSpec::BlockType(s) => s.validate(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            IdealSpec::VeroneseType { bounds, .. } => bounds.len(),
            IdealSpec::CBounded(s) => s.n,
            IdealSpec::BlockType(s) => s.n,
        }
    }

    pub fn d(&self) -> usize {
        match self {
            IdealSpec::VeroneseType { d, .. } => *d,
            IdealSpec::CBounded(s) => s.d,
            IdealSpec::BlockType(s) => s.d,
        }
    }

    /// Full minimal generating set, lex-descending.
    pub fn generators(&self) -> Result<MonomialIdeal> {
        self.validate()?;
        Ok(match self {
            IdealSpec::VeroneseType { d, bounds } => veronese_type_generators(*d, bounds),
            IdealSpec::CBounded(s) => s.generators(),
            IdealSpec::BlockType(s) => s.generators(),
        })
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealSpec::VeroneseType { d, bounds } => write!(f, "veronese-type(d={d}, a={bounds:?})"),
            IdealSpec::CBounded(s) => s.fmt(f),
            IdealSpec::BlockType(s) => s.fmt(f),
        }
    }
}

impl fmt::Display for CBounded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cbounded(c={}, n={}, d={}, t={})", self.c, self.n, self.d, self.t)
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "blocktype(n={}, d={}, t={}, k={})", self.n, self.d, self.t, self.k)
    }
}

impl CBounded {
    pub fn new(c: usize, n: usize, d: usize, t: usize) -> Self {
        CBounded { c, n, d, t }
    }

    pub fn validate(&self) -> Result<()> {
        if self.c == 0 || self.d == 0 || self.n == 0 {
            return Err(Error::Precondition(format!("{self}: need c >= 1, d >= 1, n >= 1")));
        }
        Ok(())
    }

    /// `floor((d - 1) / c)`: the number of full blocks in `d = floor_k * c + r`.
    pub fn floor_k(&self) -> usize {
        (self.d - 1) / self.c
    }

    /// `r = d - floor_k * c`, with `0 < r <= c`.
    pub fn r(&self) -> usize {
        self.d - self.floor_k() * self.c
    }

    /// Exponent position of the cover-order minimum: `(i-1)t + floor((i-1)/c) + 1`.
    pub fn alpha(&self, i: usize) -> i64 {
        let i = i as i64;
        let (c, t) = (self.c as i64, self.t as i64);
        (i - 1) * t + (i - 1).div_euclid(c) + 1
    }

    /// `a_1 = n - floor_k - t(d - 1)`; negative for empty families.
    pub fn a1(&self) -> i64 {
        self.n as i64 - self.floor_k() as i64 - (self.t * (self.d - 1)) as i64
    }

    /// Exponent position of the cover-order maximum: `a_1 + (i-1)t + ceil((i-r)/c)`.
    pub fn a(&self, i: usize) -> i64 {
        let i = i as i64;
        let (c, t, r) = (self.c as i64, self.t as i64, self.r() as i64);
        self.a1() + (i - 1) * t + ceil_div(i - r, c)
    }

    pub fn is_nonempty(&self) -> bool {
        self.validate().is_ok() && self.alpha(self.d) <= self.n as i64
    }

    fn require_nonempty(&self) -> Result<()> {
        self.validate()?;
        if !self.is_nonempty() {
            return Err(Error::EmptyFamily(format!("{self}: alpha_d = {} > n", self.alpha(self.d))));
        }
        Ok(())
    }

    pub fn generators(&self) -> MonomialIdeal {
        if self.validate().is_err() {
            return MonomialIdeal::zero(self.n.max(1));
        }
        let mut out = Vec::new();
        let c = self.c;
        enumerate_spread(self.n, self.d, self.t, &mut |blk_len, _| blk_len <= c, &mut out);
        MonomialIdeal::from_minimal_unchecked(self.n, out)
    }

    /// The unique maximal element for the cover order (smallest in lex).
    pub fn max_element(&self) -> Result<Monomial> {
        self.require_nonempty()?;
        Ok(self.monomial_at(|i| self.a(i)))
    }

    /// The unique minimal element for the cover order (largest in lex).
    pub fn min_element(&self) -> Result<Monomial> {
        self.require_nonempty()?;
        Ok(self.monomial_at(|i| self.alpha(i)))
    }

    fn monomial_at(&self, pos: impl Fn(usize) -> i64) -> Monomial {
        let mut exps = vec![0u32; self.n];
        for i in 1..=self.d {
            exps[pos(i) as usize - 1] += 1;
        }
        Monomial::new(exps)
    }

    /// `n - (floor_k + t(d - 1))`.
    pub fn height(&self) -> Result<usize> {
        self.require_nonempty()?;
        Ok(self.a1() as usize)
    }

    fn principal_bound(&self) -> usize {
        self.t * (self.d - 1) + self.floor_k() + 1
    }

    /// A single generator. Height 1 alone is not enough: at `n = t(d-1) + k + 1` there
    /// are `C(c - r + k, k)` generators.
    pub fn is_principal(&self) -> Result<bool> {
        self.require_nonempty()?;
        Ok(self.n <= self.principal_bound() && (self.r() == self.c || self.floor_k() == 0))
    }

    /// Principal, or a power of the maximal ideal (`d <= c`), or squarefree (`c = 1`).
    pub fn is_cohen_macaulay(&self) -> Result<bool> {
        Ok(self.is_principal()? || self.d <= self.c || self.c == 1)
    }

    /// Principal, or `d = 1`.
    pub fn is_gorenstein(&self) -> Result<bool> {
        Ok(self.is_principal()? || self.d == 1)
    }

    /// The criterion with `n <= t(d-1) + k + 1` standing in for principality.
    pub fn is_cohen_macaulay_stated(&self) -> Result<bool> {
        self.require_nonempty()?;
        Ok(self.n <= self.principal_bound() || self.d <= self.c || self.c == 1)
    }

    pub fn is_gorenstein_stated(&self) -> Result<bool> {
        self.require_nonempty()?;
        Ok(self.n <= self.principal_bound() || self.d == 1)
    }

    /// The same family after `n -> n + d - 1`, `t -> t + 1`.
    pub fn stretched(&self) -> CBounded {
        CBounded { n: self.n + self.d - 1, t: self.t + 1, ..*self }
    }

    /// `(c, n - (d-1)t, d, 0)`, or `None` when `n < (d-1)t`.
    pub fn unstretched(&self) -> Option<CBounded> {
        let shift = (self.d - 1) * self.t;
        (self.n > shift).then(|| CBounded { n: self.n - shift, t: 0, ..*self })
    }
}

impl BlockType {
    pub fn new(n: usize, d: usize, t: usize, k: usize) -> Self {
        BlockType { n, d, t, k }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.d == 0 {
            return Err(Error::Precondition(format!("{self}: need n >= 1, d >= 1")));
        }
        if self.k < 1 || self.k > self.n {
            return Err(Error::Precondition(format!("{self}: need 1 <= k <= n")));
        }
        Ok(())
    }

    pub fn generators(&self) -> MonomialIdeal {
        if self.validate().is_err() {
            return MonomialIdeal::zero(self.n.max(1));
        }
        let mut out = Vec::new();
        let k = self.k;
        enumerate_spread(self.n, self.d, self.t, &mut |_, blocks| blocks <= k, &mut out);
        MonomialIdeal::from_minimal_unchecked(self.n, out)
    }

    pub fn stretched(&self) -> BlockType {
        BlockType { n: self.n + self.d - 1, t: self.t + 1, ..*self }
    }
}

/// `sum_{i=1..k} C(d-1, i-1) C(n, i)`: generator count of the block-type family with `t = 0`.
pub fn mu_blocktype(n: usize, d: usize, k: usize) -> u128 {
    (1..=k.min(n).min(d)).map(|i| binomial((d - 1) as u128, (i - 1) as u128) * binomial(n as u128, i as u128)).sum()
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Depth-first enumeration of t-spread multisets of size `d` in `[n]`, in increasing
/// sequence order (lex-descending monomials). `accept(current_block_len, block_count)`
/// prunes partial sequences.
fn enumerate_spread(
    n: usize,
    d: usize,
    t: usize,
    accept: &mut dyn FnMut(usize, usize) -> bool,
    out: &mut Vec<Monomial>,
) {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        n: usize,
        d: usize,
        t: usize,
        seq: &mut Vec<usize>,
        blk_len: usize,
        blocks: usize,
        accept: &mut dyn FnMut(usize, usize) -> bool,
        out: &mut Vec<Monomial>,
    ) {
        if seq.len() == d {
            let mut exps = vec![0u32; n];
            for &i in seq.iter() {
                exps[i - 1] += 1;
            }
            out.push(Monomial::new(exps));
            return;
        }
        let remaining = d - seq.len() - 1;
        let lo = seq.last().map_or(1, |&l| l + t);
        for x in lo..=n {
            if x + remaining * t > n {
                break;
            }
            let (bl, bc) = match seq.last() {
                Some(&l) if x == l + t => (blk_len + 1, blocks),
                _ => (1, blocks + 1),
            };
            if !accept(bl, bc) {
                continue;
            }
            seq.push(x);
            rec(n, d, t, seq, bl, bc, accept, out);
            seq.pop();
        }
    }
    rec(n, d, t, &mut Vec::with_capacity(d), 0, 0, accept, out);
}

fn veronese_type_generators(d: usize, bounds: &[usize]) -> MonomialIdeal {
    fn rec(pos: usize, left: usize, bounds: &[usize], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == bounds.len() {
            if left == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let cap: usize = bounds[pos + 1..].iter().sum();
        for e in (0..=bounds[pos].min(left)).rev() {
            if left - e > cap {
                break;
            }
            exps[pos] = e as u32;
            rec(pos + 1, left - e, bounds, exps, out);
        }
        exps[pos] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, bounds, &mut vec![0; bounds.len()], &mut out);
    MonomialIdeal::from_minimal_unchecked(bounds.len(), out)
}
