//! Exact integers and rationals, exact square roots, and the [`Quadruple`]
//! solution record shared by the rest of the crate.
//!
//! `Integer` and `Rational` are the `num` big-number types. `BigRational`
//! keeps every value in lowest terms with a positive denominator, which is
//! the invariant every curve computation here relies on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

pub fn rat_int(v: &Integer) -> Rational {
    Rational::from_integer(v.clone())
}

/// True when `gcd(|num|, den) = 1` and `den > 0`.
pub fn is_reduced(v: &Rational) -> bool {
    v.denom().is_positive() && v.numer().gcd(v.denom()).is_one()
}

/// Debug hook run on values leaving the arithmetic-heavy modules.
#[inline]
pub(crate) fn debug_check(v: &Rational) {
    debug_assert!(is_reduced(v), "unreduced rational {v}");
}

pub fn fourth(v: &Integer) -> Integer {
    let sq = v * v;
    &sq * &sq
}

fn fourth_q(v: &Rational) -> Rational {
    let sq = v * v;
    &sq * &sq
}

/// `n(x⁴+y⁴) = z⁴+w⁴` over the integers. Signs are irrelevant.
pub fn verify(n: &Integer, x: &Integer, y: &Integer, z: &Integer, w: &Integer) -> bool {
    n * (fourth(x) + fourth(y)) == fourth(z) + fourth(w)
}

fn verify_rational(n: &Integer, x: &Rational, y: &Rational, z: &Rational, w: &Rational) -> bool {
    rat_int(n) * (fourth_q(x) + fourth_q(y)) == fourth_q(z) + fourth_q(w)
}

/// Exact integer square root.
pub fn int_sqrt_exact(v: &Integer) -> Result<Integer> {
    if v.is_negative() {
        return Err(Error::NegativeInput);
    }
    let s = v.sqrt();
    if &s * &s == *v {
        Ok(s)
    } else {
        Err(Error::NotASquare)
    }
}

/// Exact rational square root: both reduced parts must be squares.
pub fn rat_sqrt_exact(v: &Rational) -> Result<Rational> {
    if v.is_negative() {
        return Err(Error::NegativeInput);
    }
    let num = int_sqrt_exact(v.numer())?;
    let den = int_sqrt_exact(v.denom())?;
    Ok(Rational::new(num, den))
}

/// A primitive, nonnegative integer solution of `n(x⁴+y⁴) = z⁴+w⁴`.
///
/// Pair order is kept as produced; use [`Quadruple::eq_unordered`] to
/// compare against rows whose pairs may be swapped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quadruple {
    n: Integer,
    x: Integer,
    y: Integer,
    z: Integer,
    w: Integer,
}

impl Quadruple {
    /// Validates every invariant: `n ≥ 1`, entries nonnegative, `(x, y) ≠ 0`,
    /// primitive, and the equation holds exactly.
    pub fn new(n: Integer, x: Integer, y: Integer, z: Integer, w: Integer) -> Result<Self> {
        if n < Integer::one() {
            return Err(Error::InvalidArgument(format!("multiplier n = {n} must be >= 1")));
        }
        if [&x, &y, &z, &w].iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidArgument("quadruple entries must be nonnegative".into()));
        }
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidArgument("x and y are both zero".into()));
        }
        let g = x.gcd(&y).gcd(&z).gcd(&w);
        if !g.is_one() {
            return Err(Error::InvalidArgument(format!("not primitive (gcd {g})")));
        }
        if !verify(&n, &x, &y, &z, &w) {
            return Err(Error::EquationFails(format!("({n}, {x}, {y}, {z}, {w})")));
        }
        Ok(Quadruple { n, x, y, z, w })
    }

    pub fn from_i64(n: i64, x: i64, y: i64, z: i64, w: i64) -> Result<Self> {
        Self::new(int(n), int(x), int(y), int(z), int(w))
    }

    pub fn n(&self) -> &Integer {
        &self.n
    }
    pub fn x(&self) -> &Integer {
        &self.x
    }
    pub fn y(&self) -> &Integer {
        &self.y
    }
    pub fn z(&self) -> &Integer {
        &self.z
    }
    pub fn w(&self) -> &Integer {
        &self.w
    }

    pub fn coords(&self) -> [&Integer; 4] {
        [&self.x, &self.y, &self.z, &self.w]
    }

    /// Re-runs the exact equation check.
    pub fn verify(&self) -> bool {
        verify(&self.n, &self.x, &self.y, &self.z, &self.w)
    }

    /// Some coordinate is zero.
    pub fn is_degenerate(&self) -> bool {
        self.coords().iter().any(|v| v.is_zero())
    }

    pub fn max_coord(&self) -> &Integer {
        self.coords().into_iter().max().expect("four coordinates")
    }

    /// `z⁴ + w⁴`, equal to `n(x⁴+y⁴)`.
    pub fn objective(&self) -> Integer {
        fourth(&self.z) + fourth(&self.w)
    }

    /// Equality up to swapping within `(x, y)` and within `(z, w)`.
    pub fn eq_unordered(&self, other: &Quadruple) -> bool {
        fn same_pair(a: (&Integer, &Integer), b: (&Integer, &Integer)) -> bool {
            a == b || (a.0 == b.1 && a.1 == b.0)
        }
        self.n == other.n
            && same_pair((&self.x, &self.y), (&other.x, &other.y))
            && same_pair((&self.z, &self.w), (&other.z, &other.w))
    }

    /// Same as [`eq_unordered`](Self::eq_unordered) against a literal row.
    pub fn matches_row(&self, n: &str, x: &str, y: &str, z: &str, w: &str) -> bool {
        let p = |s: &str| s.parse::<Integer>().expect("decimal literal");
        Quadruple { n: p(n), x: p(x), y: p(y), z: p(z), w: p(w) }.eq_unordered(self)
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.n, self.x, self.y, self.z, self.w)
    }
}

/// Clears denominators, divides out the common gcd and takes absolute
/// values. Rejects input that does not satisfy the equation over the
/// rationals.
pub fn normalize_quadruple(
    n: &Integer,
    x: &Rational,
    y: &Rational,
    z: &Rational,
    w: &Rational,
) -> Result<Quadruple> {
    if !verify_rational(n, x, y, z, w) {
        return Err(Error::EquationFails(format!("{n}·({x}⁴ + {y}⁴) ≠ {z}⁴ + {w}⁴")));
    }
    let coords = [x, y, z, w];
    let lcm = coords.iter().fold(Integer::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<Integer> = coords
        .iter()
        .map(|v| (v.numer() * (&lcm / v.denom())).abs())
        .collect();
    let g = scaled.iter().fold(Integer::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return Err(Error::InvalidArgument("all coordinates are zero".into()));
    }
    let mut it = scaled.into_iter().map(|v| v / &g);
    let (x, y, z, w) = (
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    );
    Quadruple::new(n.clone(), x, y, z, w)
}

/// `(nx)⁴ + (ny)⁴ = n³(z⁴ + w⁴)`, obtained by multiplying a solution
/// through by `n³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocalForm {
    pub multiplier: Integer,
    pub x: Integer,
    pub y: Integer,
    pub z: Integer,
    pub w: Integer,
}

impl ReciprocalForm {
    /// `x⁴ + y⁴ = multiplier·(z⁴ + w⁴)`.
    pub fn verify(&self) -> bool {
        verify(&self.multiplier, &self.z, &self.w, &self.x, &self.y)
    }
}

pub fn scale_transform(q: &Quadruple) -> Result<ReciprocalForm> {
    let n = q.n();
    let out = ReciprocalForm {
        multiplier: n * n * n,
        x: n * q.x(),
        y: n * q.y(),
        z: q.z().clone(),
        w: q.w().clone(),
    };
    if !out.verify() {
        return Err(Error::EquationFails(format!("scaled form of {q}")));
    }
    Ok(out)
}
