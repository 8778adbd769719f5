//! Truncated formal power series over nonnegative big integers.
//!
//! Every transform takes an explicit truncation order `N` and returns the
//! coefficients `a(0..=N)`. Divisions inside the recurrences are checked to
//! be exact; a remainder is reported as [`Error::Consistency`].

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::ratio_f64;

/// Coefficients `a(0..=N)` of a truncated power series.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<BigUint>,
}

impl Series {
    /// Builds a series from its coefficients. At least `a(0)` must be given.
    pub fn new(coeffs: Vec<BigUint>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::input("a series needs at least one coefficient"));
        }
        Ok(Series { coeffs })
    }

    /// Builds a series of order `order` from a prefix, padding with zeros.
    /// Coefficients beyond `order` are dropped.
    pub fn from_prefix<T: Into<BigUint> + Copy>(prefix: &[T], order: usize) -> Self {
        let mut coeffs: Vec<BigUint> = prefix.iter().take(order + 1).map(|&x| x.into()).collect();
        coeffs.resize(order + 1, BigUint::zero());
        Series { coeffs }
    }

    /// `1 + t + t^2 + ...` to order `order`.
    pub fn ones(order: usize) -> Self {
        Series {
            coeffs: vec![BigUint::one(); order + 1],
        }
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        Self::from_prefix(&[1u32], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigUint {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigUint> {
        self.coeffs
    }

    /// The coefficients as machine words, if they all fit.
    pub fn to_u64_vec(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Restricts to order `order`, which must not exceed the current order.
    pub fn truncated(&self, order: usize) -> Result<Self> {
        self.require(order)?;
        Ok(Series {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Index of the last nonzero coefficient, if any.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn require(&self, order: usize) -> Result<()> {
        if self.order() < order {
            Err(Error::input(format!(
                "series known to order {} but order {order} was requested",
                self.order()
            )))
        } else {
            Ok(())
        }
    }
}

/// Cauchy product `c(n) = sum a(i) b(n-i)` to order `order`.
pub fn mul(a: &Series, b: &Series, order: usize) -> Result<Series> {
    a.require(order)?;
    b.require(order)?;
    Ok(Series {
        coeffs: convolve(&a.coeffs, &b.coeffs, order),
    })
}

fn convolve(a: &[BigUint], b: &[BigUint], order: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Coefficients of `prod_{n>=1} (1 - t^n)^(-f(n))`: the number of multisets
/// of weighted types, `f(n)` types of weight `n`. `f(0)` is ignored.
///
/// Uses `c(n) = sum_{d | n} d f(d)` and `n g(n) = sum_{k=1..n} c(k) g(n-k)`.
pub fn euler_transform(f: &Series, order: usize) -> Result<Series> {
    f.require(order)?;
    let mut c = vec![BigUint::zero(); order + 1];
    for d in 1..=order {
        if f.coeffs[d].is_zero() {
            continue;
        }
        let term = &f.coeffs[d] * d;
        for m in (d..=order).step_by(d) {
            c[m] += &term;
        }
    }

    let mut g = Vec::with_capacity(order + 1);
    g.push(BigUint::one());
    for n in 1..=order {
        let total = weighted_sum(&c[1..=n], &g, n);
        let (q, r) = total.div_rem(&BigUint::from(n));
        if !r.is_zero() {
            return Err(Error::consistency(format!(
                "Euler transform recurrence left remainder {r} at n = {n}"
            )));
        }
        g.push(q);
    }
    Ok(Series { coeffs: g })
}

/// `sum_{k=1..n} c[k-1] * g[n-k]`.
fn weighted_sum(c: &[BigUint], g: &[BigUint], n: usize) -> BigUint {
    let term = |k: usize| -> BigUint {
        let ck = &c[k - 1];
        let gk = &g[n - k];
        if ck.is_zero() || gk.is_zero() {
            BigUint::zero()
        } else {
            ck * gk
        }
    };

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        // Small sums are not worth the scheduling overhead.
        let bits = g[n - 1].bits() + c[n - 1].bits();
        if n >= 256 && bits >= 512 {
            return (1..n + 1)
                .into_par_iter()
                .with_min_len(64)
                .fold(BigUint::zero, |acc, k| acc + term(k))
                .reduce(BigUint::zero, |a, b| a + b);
        }
    }

    (1..=n).fold(BigUint::zero(), |acc, k| acc + term(k))
}

/// Multisets of exactly `k` orbit types, the empty type included, counted by
/// total size: the profile of `k` interchangeable copies.
///
/// Uses the Newton identity `m H_m = sum_{j=1..m} P_j H_{m-j}` with
/// `P_j(t) = F(t^j)`. For `k > order` at most `order` copies can be
/// nonempty, and the result coincides with [`euler_transform`].
pub fn mset_k_transform(f: &Series, k: usize, order: usize) -> Result<Series> {
    f.require(order)?;
    if !f.coeffs[0].is_one() {
        return Err(Error::input("mset_k_transform expects f(0) = 1"));
    }
    if k == 0 {
        return Ok(Series::one(order));
    }
    if k > order {
        return euler_transform(f, order);
    }
    mset_k_newton(f, k, order)
}

pub(crate) fn mset_k_newton(f: &Series, k: usize, order: usize) -> Result<Series> {
    let power_sum = |j: usize| -> Vec<BigUint> {
        let mut p = vec![BigUint::zero(); order + 1];
        for (i, fi) in f.coeffs.iter().enumerate() {
            if i * j > order {
                break;
            }
            p[i * j] = fi.clone();
        }
        p
    };
    let powers: Vec<Vec<BigUint>> = (1..=k).map(power_sum).collect();

    let mut h: Vec<Vec<BigUint>> = vec![Series::one(order).coeffs];
    for m in 1..=k {
        let mut acc = vec![BigUint::zero(); order + 1];
        for j in 1..=m {
            let pj = &powers[j - 1];
            let prev = &h[m - j];
            // P_j is supported on multiples of j.
            for (i, pji) in pj.iter().enumerate().step_by(j) {
                if pji.is_zero() {
                    continue;
                }
                for (l, hl) in prev.iter().enumerate().take(order + 1 - i) {
                    if !hl.is_zero() {
                        acc[i + l] += pji * hl;
                    }
                }
            }
        }
        let divisor = BigUint::from(m);
        let mut next = Vec::with_capacity(order + 1);
        for (n, a) in acc.into_iter().enumerate() {
            let (q, r) = a.div_rem(&divisor);
            if !r.is_zero() {
                return Err(Error::consistency(format!(
                    "multiset recurrence not divisible by {m} at n = {n}"
                )));
            }
            next.push(q);
        }
        h.push(next);
    }
    Ok(Series {
        coeffs: h.pop().expect("k >= 1"),
    })
}

/// Sequences of nonempty blocks: `g(0) = 1`, `g(n) = sum_{i=1..n} f(i) g(n-i)`,
/// i.e. `1 / (2 - F(t))` when `f(0) = 1`.
pub fn seq_transform(f: &Series, order: usize) -> Result<Series> {
    f.require(order)?;
    let mut g: Vec<BigUint> = Vec::with_capacity(order + 1);
    g.push(BigUint::one());
    for n in 1..=order {
        let mut acc = BigUint::zero();
        for i in 1..=n {
            if !f.coeffs[i].is_zero() && !g[n - i].is_zero() {
                acc += &f.coeffs[i] * &g[n - i];
            }
        }
        g.push(acc);
    }
    Ok(Series { coeffs: g })
}

/// Empirical exponential growth base of a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthBase {
    pub estimate: f64,
    /// Difference between the extrapolated estimates at `n` and `n/2`.
    pub spread: f64,
    pub converged: bool,
}

/// Threshold on [`GrowthBase::spread`] below which the estimate counts as
/// converged.
pub const BASE_TOLERANCE: f64 = 1e-6;

/// Minimum number of coefficients [`growth_base`] accepts.
pub const MIN_BASE_TERMS: usize = 64;

/// Estimates `lim g(n)^(1/n)` from the ratios `r(m) = g(m+1)/g(m)`.
///
/// The extrapolated value `R(m) = 2 r(m) - r(m/2)` removes the `1/m` term of
/// the ratio; the estimate is `R(n)` at the last available `n` and the spread
/// is `|R(n) - R(n/2)|`. A sequence ending in zero (a finite structure) has
/// base 0.
pub fn growth_base(g: &Series) -> Result<GrowthBase> {
    if g.coeffs.len() < MIN_BASE_TERMS {
        return Err(Error::input(format!(
            "growth_base needs at least {MIN_BASE_TERMS} coefficients, got {}",
            g.coeffs.len()
        )));
    }
    if g.coeffs[g.order()].is_zero() {
        return Ok(GrowthBase {
            estimate: 0.0,
            spread: 0.0,
            converged: true,
        });
    }
    let n = g.order() - 1;
    let ratio = |m: usize| -> Option<f64> {
        let (a, b) = (&g.coeffs[m + 1], &g.coeffs[m]);
        (!b.is_zero()).then(|| ratio_f64(a, b))
    };
    let extrapolated = |m: usize| -> Option<f64> { Some(2.0 * ratio(m)? - ratio(m / 2)?) };

    match (extrapolated(n), extrapolated(n / 2)) {
        (Some(hi), Some(lo)) => {
            let spread = (hi - lo).abs();
            Ok(GrowthBase {
                estimate: hi,
                spread,
                converged: spread < BASE_TOLERANCE,
            })
        }
        _ => {
            // Interior zeros: fall back to a root of the ratio over [n/2, n].
            let half = n / 2;
            let span = (g.order() - half) as f64;
            let estimate = if g.coeffs[half].is_zero() {
                crate::numeric::ln_big(&g.coeffs[g.order()])
                    .exp()
                    .powf(1.0 / g.order() as f64)
            } else {
                ratio_f64(&g.coeffs[g.order()], &g.coeffs[half]).powf(1.0 / span)
            };
            Ok(GrowthBase {
                estimate,
                spread: f64::INFINITY,
                converged: false,
            })
        }
    }
}

/// Structural growth base `1/rho` of the sequence transform of a block
/// polynomial `F`, where `rho` is the root of `F(t) = 2` in `(0, 1]`.
/// Bisection runs until the bracket is below `1e-12`.
pub fn structural_base(block: &Series) -> Result<f64> {
    let coeffs: Vec<f64> = block
        .coeffs
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    if coeffs[0] != 1.0 {
        return Err(Error::input("block polynomial must have constant term 1"));
    }
    let eval = |t: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c);
    let at_one = eval(1.0);
    if at_one < 2.0 {
        return Err(Error::input("block polynomial never reaches 2 on (0, 1]"));
    }
    if at_one == 2.0 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if eval(mid) < 2.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(1.0 / (0.5 * (lo + hi)))
}
