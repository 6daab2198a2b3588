//! Long-form Weierstrass curves over ℚ and their chord-tangent group law.
//!
//! Curves are kept exactly as given, `Y² + a1·XY + a3·Y = X³ + a2·X² + a4·X + a6`,
//! without passing to a short or minimal model.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_arith::{debug_check, rat, Rational};

/// Largest order a rational torsion point can have (Mazur).
pub const MAZUR_BOUND: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EcPoint {
    Infinity,
    Affine(Rational, Rational),
}

impl EcPoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        EcPoint::Affine(x, y)
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        EcPoint::Affine(rat(x, 1), rat(y, 1))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, EcPoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&Rational, &Rational)> {
        match self {
            EcPoint::Infinity => None,
            EcPoint::Affine(x, y) => Some((x, y)),
        }
    }
}

impl WeierstrassCurve {
    /// Rejects singular models.
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Result<Self> {
        let c = WeierstrassCurve { a1, a2, a3, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    /// `Y² = X³ + a·X + b`.
    pub fn short(a: i64, b: i64) -> Result<Self> {
        let z = Rational::zero();
        Self::new(z.clone(), z.clone(), z, rat(a, 1), rat(b, 1))
    }

    pub fn discriminant(&self) -> Rational {
        let WeierstrassCurve { a1, a2, a3, a4, a6 } = self;
        let b2 = a1 * a1 + rat(4, 1) * a2;
        let b4 = rat(2, 1) * a4 + a1 * a3;
        let b6 = a3 * a3 + rat(4, 1) * a6;
        let b8 = a1 * a1 * a6 + rat(4, 1) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -(&b2 * &b2 * &b8) - rat(8, 1) * &b4 * &b4 * &b4 - rat(27, 1) * &b6 * &b6
            + rat(9, 1) * &b2 * &b4 * &b6
    }

    /// Left side minus right side of the curve equation at `(x, y)`.
    fn residual(&self, x: &Rational, y: &Rational) -> Rational {
        let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
        let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
        lhs - rhs
    }

    pub fn is_on_curve(&self, p: &EcPoint) -> bool {
        match p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => self.residual(x, y).is_zero(),
        }
    }

    /// Builds a point, checking the curve equation.
    pub fn point(&self, x: Rational, y: Rational) -> Result<EcPoint> {
        let p = EcPoint::Affine(x, y);
        if self.is_on_curve(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &EcPoint) -> EcPoint {
        match p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), -y - &self.a1 * x - &self.a3),
        }
    }

    pub fn add(&self, p: &EcPoint, q: &EcPoint) -> EcPoint {
        let ((x1, y1), (x2, y2)) = match (p, q) {
            (EcPoint::Infinity, _) => return q.clone(),
            (_, EcPoint::Infinity) => return p.clone(),
            (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, y2)) => ((x1, y1), (x2, y2)),
        };
        let slope = if x1 == x2 {
            let denom = y1 + y2 + &self.a1 * x2 + &self.a3;
            if denom.is_zero() {
                // q = -p, which covers doubling a 2-torsion point
                return EcPoint::Infinity;
            }
            // x1 == x2 with y2 ≠ -y1 - a1x - a3 forces y1 == y2: tangent
            let num = rat(3, 1) * x1 * x1 + rat(2, 1) * &self.a2 * x1 + &self.a4 - &self.a1 * y1;
            num / (rat(2, 1) * y1 + &self.a1 * x1 + &self.a3)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let intercept = y1 - &slope * x1;
        let x3 = &slope * &slope + &self.a1 * &slope - &self.a2 - x1 - x2;
        let y3 = -(&slope + &self.a1) * &x3 - intercept - &self.a3;
        debug_check(&x3);
        debug_check(&y3);
        EcPoint::Affine(x3, y3)
    }

    pub fn double(&self, p: &EcPoint) -> EcPoint {
        self.add(p, p)
    }

    /// `j·p` by left-to-right double-and-add.
    pub fn mul(&self, j: u64, p: &EcPoint) -> EcPoint {
        let mut acc = EcPoint::Infinity;
        if j == 0 {
            return acc;
        }
        for bit in (0..64 - j.leading_zeros()).rev() {
            acc = self.double(&acc);
            if (j >> bit) & 1 == 1 {
                acc = self.add(&acc, p);
            }
        }
        acc
    }

    /// The multiples `p, 2p, 3p, …` in order.
    pub fn multiples<'a>(&'a self, p: &'a EcPoint) -> impl Iterator<Item = EcPoint> + 'a {
        std::iter::successors(Some(p.clone()), move |acc| Some(self.add(acc, p)))
    }

    /// True iff `j·p ≠ O` for every `1 ≤ j ≤ 12`. Rational torsion has
    /// order at most 12, so this decides infinite order exactly.
    pub fn is_nontorsion(&self, p: &EcPoint) -> bool {
        self.multiples(p)
            .take(MAZUR_BOUND as usize)
            .all(|q| !q.is_infinity())
    }

    /// Order of `p` when it is torsion.
    pub fn torsion_order(&self, p: &EcPoint) -> Option<u32> {
        self.multiples(p)
            .take(MAZUR_BOUND as usize)
            .position(|q| q.is_infinity())
            .map(|i| i as u32 + 1)
    }
}

impl WeierstrassCurve {
    /// Convenience for curves whose coefficients are all integers.
    pub fn from_ints(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<Self> {
        Self::new(rat(a1, 1), rat(a2, 1), rat(a3, 1), rat(a4, 1), rat(a6, 1))
    }
}
