//! Formal power series evaluated on cohomology classes.
//!
//! Positive-degree classes are nilpotent, so every series below is a finite
//! sum: the `k`-th power of a class without constant term lives in degree at
//! least `k` and vanishes once `k` exceeds the top degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeffs::GaussRat;
use crate::cohomology::CohClass;
use crate::error::{Error, Result};

/// `sum_k coeff(k) * n^k` for a nilpotent `n`.
fn eval_nilpotent(n: &CohClass, coeff: impl Fn(u32) -> GaussRat) -> CohClass {
    let mut acc = CohClass::scalar(n.space(), coeff(0));
    let mut power = n.clone();
    let mut k = 1;
    while !power.is_zero() {
        let c = coeff(k);
        if !c.is_zero() {
            acc = acc.add(&power.scale(&c)).expect("same space");
        }
        power = power.mul(n).expect("same space");
        k += 1;
    }
    acc
}

/// Splits `u = 1 + n`, requiring the constant term to be exactly 1.
fn unit_part(u: &CohClass) -> Result<CohClass> {
    let c = u.constant_term();
    if !c.is_one() {
        return Err(Error::NonUnitConstant(c.to_string()));
    }
    Ok(u.sub(&CohClass::one(u.space())).expect("same space"))
}

fn rational(r: BigRational) -> GaussRat {
    GaussRat::from_rational(r)
}

/// `1/u` for `u` with constant term 1.
pub fn series_inverse(u: &CohClass) -> Result<CohClass> {
    let n = unit_part(u)?;
    Ok(eval_nilpotent(&n, |k| GaussRat::from_int(if k % 2 == 0 { 1 } else { -1 })))
}

/// The generalized binomial coefficient `binom(1/2, k)`.
fn half_binomial(k: u32) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (0..k).fold(BigRational::one(), |acc, j| {
        acc * (&half - BigRational::from_integer(j.into())) / BigRational::from_integer((j + 1).into())
    })
}

/// The square root with constant term 1 of `u = 1 + n`, via the binomial
/// series `sum_k binom(1/2, k) n^k`.
pub fn series_sqrt(u: &CohClass) -> Result<CohClass> {
    let n = unit_part(u)?;
    Ok(eval_nilpotent(&n, |k| rational(half_binomial(k))))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * j)
}

/// `exp(a)` for `a` without constant term.
pub fn series_exp(a: &CohClass) -> Result<CohClass> {
    let c = a.constant_term();
    if !c.is_zero() {
        return Err(Error::NonZeroConstant(c.to_string()));
    }
    Ok(eval_nilpotent(a, |k| rational(BigRational::new(BigInt::one(), factorial(k)))))
}

/// `log(u)` for `u` with constant term 1 (Mercator series).
pub fn series_log(u: &CohClass) -> Result<CohClass> {
    let n = unit_part(u)?;
    Ok(eval_nilpotent(&n, |k| {
        if k == 0 {
            GaussRat::zero()
        } else {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            GaussRat::ratio(sign, i64::from(k))
        }
    }))
}

/// Truncated univariate power series `sum_k c_k x^k`, `k <= order`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Univariate(pub Vec<BigRational>);

impl Univariate {
    fn mul(&self, rhs: &Univariate) -> Univariate {
        let n = self.0.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Univariate(out)
    }

    /// `1/f` for `f(0) = 1`.
    fn inverse(&self) -> Univariate {
        let n = self.0.len();
        let mut out = vec![BigRational::zero(); n];
        out[0] = BigRational::one();
        for k in 1..n {
            let s: BigRational = (1..=k).map(|j| &self.0[j] * &out[k - j]).sum();
            out[k] = -s;
        }
        Univariate(out)
    }

    /// `log f` for `f(0) = 1`.
    fn log(&self) -> Univariate {
        let n = self.0.len();
        let mut g = self.clone();
        g.0[0] = BigRational::zero();
        let mut out = vec![BigRational::zero(); n];
        let mut power = g.clone();
        for k in 1..n {
            let c = BigRational::new(BigInt::from(if k % 2 == 1 { 1 } else { -1 }), BigInt::from(k));
            for (o, p) in out.iter_mut().zip(&power.0) {
                *o += &c * p;
            }
            power = power.mul(&g);
        }
        Univariate(out)
    }
}

/// Coefficients `a_1..a_order` of `log(x / (1 - e^{-x}))`; index 0 is 0.
pub(crate) fn todd_log_coefficients(order: usize) -> Vec<BigRational> {
    // (1 - e^{-x}) / x = sum_m (-1)^m x^m / (m+1)!
    let denom = Univariate(
        (0..=order)
            .map(|m| {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                BigRational::new(BigInt::from(sign), factorial(m as u32 + 1))
            })
            .collect(),
    );
    denom.inverse().log().0
}
