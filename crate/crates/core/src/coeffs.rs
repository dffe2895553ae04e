//! Exact arithmetic over the Gaussian rationals `Q(i)` and dense exact
//! linear algebra.
//!
//! Every value is kept in canonical form: both parts are reduced
//! [`BigRational`]s with positive denominators, so structural equality is
//! field equality and values can be hashed.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `re + im*i` of `Q(i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num / den` as a real value. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussRat::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        GaussRat::new(r, BigRational::zero())
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussRat::one(),
            1 => GaussRat::i(),
            2 => GaussRat::from_int(-1),
            _ => -GaussRat::i(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// The field norm `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn div(&self, rhs: &GaussRat) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = GaussRat::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Rendering without whitespace, e.g. `1/2+3*i`, used in space files.
    pub fn to_compact(&self) -> String {
        self.to_string().replace(' ', "")
    }
}

fn fmt_imag(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else {
        format!("{}*i", im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", fmt_imag(&-self.im.clone()))
                } else {
                    write!(f, "{}", fmt_imag(&self.im))
                }
            }
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{} - {}", self.re, fmt_imag(&-self.im.clone()))
                } else {
                    write!(f, "{} + {}", self.re, fmt_imag(&self.im))
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid Gaussian rational `{0}`")]
pub struct ParseGaussRatError(pub String);

impl FromStr for GaussRat {
    type Err = ParseGaussRatError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let err = || ParseGaussRatError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        // split into signed terms at every +/- that is not leading
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in compact.char_indices() {
            if idx > start && (ch == '+' || ch == '-') {
                terms.push(&compact[start..idx]);
                start = idx;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = GaussRat::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let (imag, coeff) = if let Some(c) = body.strip_suffix("*i") {
                (true, c)
            } else if let Some(c) = body.strip_suffix('i') {
                if !c.is_empty() {
                    return Err(err());
                }
                (true, "1")
            } else {
                (false, body)
            };
            if coeff.is_empty() || coeff.starts_with(['+', '-']) {
                return Err(err());
            }
            let mut r = BigRational::from_str(coeff).map_err(|_| err())?;
            if sign < 0 {
                r = -r;
            }
            if imag {
                acc.im += r;
            } else {
                acc.re += r;
            }
        }
        Ok(acc)
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::from_rational(&self.re * &rhs.re);
        }
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        &self * &rhs
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl std::iter::Sum for GaussRat {
    fn sum<I: Iterator<Item = GaussRat>>(iter: I) -> Self {
        iter.fold(GaussRat::zero(), |a, b| a + b)
    }
}

/// Dense row-major matrix over `Q(i)`.
pub type Matrix = Vec<Vec<GaussRat>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { GaussRat::one() } else { GaussRat::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[GaussRat]) -> Vec<GaussRat> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, brow)| x * &brow[c])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan elimination of `[m | rhs]` where `rhs` has any number of
/// columns. Returns the solution columns, or the rank when `m` is singular.
fn eliminate(m: &Matrix, rhs: Matrix) -> Result<Matrix> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) || rhs.len() != n {
        return Err(Error::Shape {
            rows: n,
            cols: m.first().map_or(0, Vec::len),
            rhs: rhs.len(),
        });
    }
    let mut a: Matrix = m.clone();
    let mut b = rhs;
    let mut rank = 0;
    let mut singular = false;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            singular = true;
            continue;
        };
        a.swap(rank, pivot);
        b.swap(rank, pivot);
        let inv = a[rank][col].inv()?;
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for x in b[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let (prow, brow) = (a[rank].clone(), b[rank].clone());
            for (x, p) in a[r].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
            for (x, p) in b[r].iter_mut().zip(&brow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        rank += 1;
    }
    if singular {
        return Err(Error::Singular { size: n, rank });
    }
    Ok(b)
}

/// Solve `m x = rhs` exactly.
pub fn solve_linear(m: &Matrix, rhs: &[GaussRat]) -> Result<Vec<GaussRat>> {
    let cols = rhs.iter().map(|x| vec![x.clone()]).collect();
    Ok(eliminate(m, cols)?.into_iter().map(|mut r| r.remove(0)).collect())
}

pub fn invert(m: &Matrix) -> Result<Matrix> {
    eliminate(m, identity(m.len()))
}
