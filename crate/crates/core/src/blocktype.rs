//! Invariants of the block-type ideals `I_{(n,d,0),k}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::BlockType;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// A monomial outside the ideal all of whose one-step multiples lie inside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoclePoint {
    pub exponents: Vec<u32>,
    pub degree: u32,
}

fn check_range(n: usize, d: usize, k: usize) -> Result<()> {
    if !(1 < k && k < n) || d < 2 {
        return Err(Error::Precondition(format!(
            "block-type invariants assume 1 < k < n and d >= 2, got n={n}, d={d}, k={k}"
        )));
    }
    Ok(())
}

/// `(n-k) floor((d-1)/k) + d - 1`, the top nonvanishing degree of `S/I_{(n,d,0),k}`.
pub fn regularity_blocktype(n: usize, d: usize, k: usize) -> Result<usize> {
    check_range(n, d, k)?;
    Ok((n - k) * ((d - 1) / k) + d - 1)
}

/// Exponent of the pure power of each variable among the minimal generators.
fn pure_powers(ideal: &MonomialIdeal) -> Result<Vec<u32>> {
    let n = ideal.n();
    (1..=n)
        .map(|i| {
            ideal.gens().iter().filter(|g| g.support() == [i]).map(|g| g.exp(i)).min().ok_or(Error::NotArtinian(i))
        })
        .collect()
}

/// A monomial of maximal degree outside an artinian ideal, by exhaustive search of
/// the box below the pure powers.
pub fn top_socle_point(ideal: &MonomialIdeal) -> Result<SoclePoint> {
    let ideal = ideal.minimalize();
    let caps = pure_powers(&ideal)?;
    let gens: Vec<Vec<u32>> = ideal.gens().iter().map(|g| g.exps().to_vec()).collect();
    let inside = |m: &[u32]| gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b));
    let mut best: Option<Vec<u32>> = None;
    let mut cur = vec![0u32; caps.len()];
    'outer: loop {
        if !inside(&cur) {
            let deg: u32 = cur.iter().sum();
            if best.as_ref().is_none_or(|b| deg > b.iter().sum()) {
                best = Some(cur.clone());
            }
        }
        for i in 0..cur.len() {
            if cur[i] + 1 < caps[i] {
                cur[i] += 1;
                continue 'outer;
            }
            cur[i] = 0;
        }
        break;
    }
    // the unit monomial lies outside any proper ideal
    let exponents = best.ok_or_else(|| Error::Precondition("the unit ideal has no socle".into()))?;
    let degree = exponents.iter().sum();
    Ok(SoclePoint { exponents, degree })
}

pub fn top_socle_degree(ideal: &MonomialIdeal) -> Result<u32> {
    Ok(top_socle_point(ideal)?.degree)
}

/// `I_{(n,d,0),k}^s = m^{sd}`, by oracle power and comparison of minimal generators.
pub fn power_equals_mpower(n: usize, d: usize, k: usize, s: u32) -> Result<bool> {
    if s == 0 {
        return Err(Error::Precondition("power exponent must be >= 1".into()));
    }
    let spec = BlockType::new(n, d, 0, k);
    spec.validate()?;
    let power = spec.generators().power(s)?;
    Ok(power.equals(&MonomialIdeal::maximal_power(n, s * d as u32)))
}

/// Least `j` with `I^j = m^{jd}`, found by ascending search up to `n - 1`.
pub fn smallest_power_j(n: usize, d: usize, k: usize) -> Result<u32> {
    if !(1 < k && k < n) {
        return Err(Error::Precondition(format!("need 1 < k < n, got n={n}, k={k}")));
    }
    let spec = BlockType::new(n, d, 0, k);
    let base = spec.generators();
    let mut power = base.clone();
    for j in 1..n as u32 {
        if power.equals(&MonomialIdeal::maximal_power(n, j * d as u32)) {
            return Ok(j);
        }
        power = power.multiply(&base);
    }
    Err(Error::Precondition(format!("no power j <= n-1 with I^j = m^(jd) for {spec}")))
}

/// `max{j - 1, n - ceil(n/d)}` with `j` from [`smallest_power_j`].
pub fn fiber_cone_regularity(n: usize, d: usize, k: usize) -> Result<usize> {
    let j = smallest_power_j(n, d, k)? as usize;
    Ok((j - 1).max(n - n.div_ceil(d)))
}

/// Oracle `reg(I)` of the block-type ideal from its Betti table, for any `t`.
pub fn regularity_oracle(spec: &BlockType) -> Result<Option<u32>> {
    spec.validate()?;
    crate::oracle::reg_from_table(&spec.generators())
}

pub fn socle_monomial(point: &SoclePoint) -> Monomial {
    Monomial::new(point.exponents.clone())
}
