//! Closed-form evaluators: the matching-join clique count, the
//! conjectured optimum, the large-n threshold, the connected-path clique
//! bound, and the two general bound sums parameterized by an `ex` oracle.
//!
//! Everything is exact integer arithmetic; intermediates run in `u128`
//! and results are checked back into `u64`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Standard binomial coefficient: `C(0,0) = 1`, zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial exceeds u64")
}

/// Binomial convention used by the bound sums.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BinomConvention {
    /// `C(0,s) = 0` for `s > 0`. The default everywhere.
    Standard,
    /// Diagnostic variant declaring `C(0,s) = 1` for `s > 0`; offered
    /// for comparison output only.
    ZeroChoosesOne,
}

fn binom_conv(n: usize, r: usize, conv: BinomConvention) -> u64 {
    match conv {
        BinomConvention::ZeroChoosesOne if n == 0 && r > 0 => 1,
        _ => binomial(n, r),
    }
}

fn widen_sum(terms: impl Iterator<Item = u128>) -> Result<u64> {
    let total: u128 = terms.sum();
    u64::try_from(total)
        .map_err(|_| Error::Capacity("bound sum exceeds the 64-bit budget".into()))
}

/// `f(n,k,s) = C(k-1,s) + (n-k+1)C(k-1,s-1) + floor((n-k+1)/2)C(k-1,s-2)`,
/// the s-clique count of the join of `K_{k-1}` with a maximal matching.
pub fn f_formula(n: usize, k: usize, s: usize) -> Result<u64> {
    if k < 1 || n < k {
        return Err(Error::Argument(format!(
            "f(n,k,s) requires n >= k >= 1, got n={n}, k={k}"
        )));
    }
    let m = n - k + 1;
    let total = binomial(k - 1, s) as u128
        + m as u128 * binom_sub(k - 1, s, 1) as u128
        + (m / 2) as u128 * binom_sub(k - 1, s, 2) as u128;
    u64::try_from(total).map_err(|_| Error::Capacity("f(n,k,s) exceeds u64".into()))
}

/// `C(a, s - d)` treating `s - d < 0` as zero.
fn binom_sub(a: usize, s: usize, d: usize) -> u64 {
    if s < d {
        0
    } else {
        binomial(a, s - d)
    }
}

/// Conjectured optimum `max{C(3k-1,s), f(n,k,s)}` for `n >= 3k`,
/// `s >= 3`, `k >= 1`.
pub fn conjecture_value(n: usize, k: usize, s: usize) -> Result<u64> {
    if k < 1 || n < 3 * k || s < 3 {
        return Err(Error::Argument(format!(
            "conjecture value requires n >= 3k, s >= 3, k >= 1; got n={n}, k={k}, s={s}"
        )));
    }
    Ok(binomial(3 * k - 1, s).max(f_formula(n, k, s)?))
}

/// Threshold `g(k,s)` past which the join construction provably wins,
/// for `k >= s >= 3`. Exact arithmetic; the leading division rounds up
/// when it is not integral.
pub fn g_threshold(k: usize, s: usize) -> Result<u64> {
    if s < 3 || k < s {
        return Err(Error::Argument(format!(
            "g(k,s) requires k >= s >= 3, got k={k}, s={s}"
        )));
    }
    let den = binomial(k - 2, s - 2) as u128;
    if den == 0 {
        return Err(Error::Argument(format!("C({},{}) = 0", k - 2, s - 2)));
    }
    let peak = [s, s - 1, s - 2]
        .iter()
        .map(|&x| binomial(3 * k - 3, x))
        .max()
        .unwrap() as u128;
    let num = peak * (9 * k as u128 - 8);
    let lead = num.div_ceil(den);
    u64::try_from(lead + k as u128 + 1)
        .map_err(|_| Error::Capacity("g(k,s) exceeds u64".into()))
}

/// Clique bound for connected graphs with no long path:
/// `f_s(n,k,a) = C(k-a,s) + (n-k+a)C(a,s-1)`, requiring `n >= k >= a >= 1`.
pub fn luo_f(n: usize, k: usize, a: usize, s: usize) -> Result<u64> {
    if a < 1 || k < a || n < k {
        return Err(Error::Argument(format!(
            "luo_f requires n >= k >= a >= 1, got n={n}, k={k}, a={a}"
        )));
    }
    let total =
        binomial(k - a, s) as u128 + (n - k + a) as u128 * binom_sub(a, s, 1) as u128;
    u64::try_from(total).map_err(|_| Error::Capacity("luo_f exceeds u64".into()))
}

/// Supplies `ex(n, K_i, H)` values for a fixed pattern `H`.
///
/// Implementations must honor `ex(n, K_0, H) = 1` and
/// `ex(n, K_1, H) = n`, return 0 whenever `i > n`, and be safe for
/// concurrent calls.
pub trait ExOracle: Sync {
    fn ex(&self, n: usize, i: usize) -> Result<u64>;
}

/// Closed form of `ex(n, K_i, P3)`: a P3-free graph is a matching, so
/// `i=0 -> 1`, `i=1 -> n`, `i=2 -> floor(n/2)`, `i>=3 -> 0`.
pub fn ex_p3_closed(n: usize, i: usize) -> u64 {
    match i {
        0 => 1,
        1 => n as u64,
        2 => (n / 2) as u64,
        _ => 0,
    }
}

/// The closed-form oracle for the path on three vertices.
pub struct P3ClosedOracle;

impl ExOracle for P3ClosedOracle {
    fn ex(&self, n: usize, i: usize) -> Result<u64> {
        Ok(ex_p3_closed(n, i))
    }
}

/// The two lower-bound branches for forbidding k disjoint copies of a
/// connected m-vertex pattern, and their maximum.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub best: u64,
    pub union_branch: u64,
    pub join_branch: u64,
}

/// Lower bound from the two extremal constructions:
/// union branch `ex(n-km+1, K_s, H) + C(km-1, s)` and join branch
/// `sum_i ex(n-k+1, K_i, H) C(k-1, s-i)`. Requires `n >= km`, `k >= 1`.
pub fn thm_lower(
    n: usize,
    k: usize,
    s: usize,
    m: usize,
    oracle: &dyn ExOracle,
) -> Result<LowerBound> {
    thm_lower_with(n, k, s, m, oracle, BinomConvention::Standard)
}

/// Convention-parameterized variant of [`thm_lower`] for diagnostics.
pub fn thm_lower_with(
    n: usize,
    k: usize,
    s: usize,
    m: usize,
    oracle: &dyn ExOracle,
    conv: BinomConvention,
) -> Result<LowerBound> {
    if k < 1 || m < 1 || n < k * m {
        return Err(Error::Argument(format!(
            "lower bound requires n >= km and k >= 1, got n={n}, k={k}, m={m}"
        )));
    }
    let union_branch = oracle.ex(n - k * m + 1, s)? as u128
        + binom_conv(k * m - 1, s, conv) as u128;
    let union_branch = u64::try_from(union_branch)
        .map_err(|_| Error::Capacity("union branch exceeds u64".into()))?;

    let mut terms = Vec::with_capacity(s + 1);
    for i in 0..=s {
        terms.push(oracle.ex(n - k + 1, i)? as u128 * binom_conv(k - 1, s - i, conv) as u128);
    }
    let join_branch = widen_sum(terms.into_iter())?;

    Ok(LowerBound {
        best: union_branch.max(join_branch),
        union_branch,
        join_branch,
    })
}

/// Upper bound `sum_i ex(n-(k-1)m, K_i, H) C((k-1)m, s-i)` for
/// `n >= km`, `m >= 3`, `s >= 1`.
pub fn thm_upper(
    n: usize,
    k: usize,
    s: usize,
    m: usize,
    oracle: &dyn ExOracle,
) -> Result<u64> {
    thm_upper_with(n, k, s, m, oracle, BinomConvention::Standard)
}

/// Convention-parameterized variant of [`thm_upper`] for diagnostics.
pub fn thm_upper_with(
    n: usize,
    k: usize,
    s: usize,
    m: usize,
    oracle: &dyn ExOracle,
    conv: BinomConvention,
) -> Result<u64> {
    if k < 1 || m < 3 || s < 1 || n < k * m {
        return Err(Error::Argument(format!(
            "upper bound requires n >= km, m >= 3, s >= 1; got n={n}, k={k}, m={m}, s={s}"
        )));
    }
    let rest = (k - 1) * m;
    let mut terms = Vec::with_capacity(s + 1);
    for i in 0..=s {
        terms.push(oracle.ex(n - rest, i)? as u128 * binom_conv(rest, s - i, conv) as u128);
    }
    widen_sum(terms.into_iter())
}

/// Bound summary for one `(n, k, s, H)` instance; `exact` is filled in
/// when the search module can reach it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    /// Canonical graph6 of the forbidden pattern H.
    pub pattern: String,
    pub lower: u64,
    pub lower_union: u64,
    pub lower_join: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    /// `lower <= exact <= upper`, when `exact` is present.
    pub chain_ok: Option<bool>,
}
