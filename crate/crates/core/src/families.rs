//! Solution generation for `N(x⁴ + y⁴) = z⁴ + w⁴`.
//!
//! Two routes are provided:
//!
//! * closed-form polynomial families in `(m, n)` or `m`, and
//! * pipelines that take multiples `jP` of a point of infinite order,
//!   carry them through a [`BirationalLink`] to a quartic point `(U, V)`,
//!   and rebuild `(x, y, z, w)` from the quartic parameter.
//!
//! For the two-squares pipelines, with `a = (m² − n²)/2`, `b = (m² + n²)/2`
//! (so `a + b = m²` and `N = a² + b²`), the parameter `k` gives
//!
//! ```text
//! x = k² − 2mk + 4a − 3m²,   y = −k² − 2mk + 4a − m²,
//! z² = a·x² + b·y²,           w² = b·x² − a·y²,
//! ```
//!
//! and `(a² + b²)(x⁴ + y⁴) = (ax² + by²)² + (bx² − ay²)²` closes the loop.
//! `w²` is the quartic in `k` whose reversal is the link's quartic in `U`,
//! hence `w = |V|·k²` when `U = 1/k` and `w = |V|` when `U = k`.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::elliptic::EcPoint;
use crate::error::{Error, Result};
use crate::exact_arith::{int, normalize_quadruple, rat, rat_int, rat_sqrt_exact, Integer, Quadruple, Rational};
use crate::quartic_maps::{instance17_link, instance41_link, theorem1_link, BirationalLink, QuarticPoint};

/// Which closed-form member of the two-parameter family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family1Form {
    /// from the doubled point
    TwoQ,
    /// from the tripled point
    ThreeQ,
}

/// The two closed forms for `N = (m⁴ + 1)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family2Form {
    First,
    Second,
}

/// Same-parity nonzero `(m, n)` with the derived `a`, `b` and `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub m: Integer,
    pub n: Integer,
}

impl FamilyParams {
    pub fn new(m: Integer, n: Integer) -> Result<Self> {
        if m.is_zero() || n.is_zero() {
            return Err(Error::InvalidArgument("m and n must be nonzero".into()));
        }
        if m.is_odd() != n.is_odd() {
            return Err(Error::ParityMismatch(format!("m = {m}, n = {n}")));
        }
        Ok(FamilyParams { m, n })
    }

    pub fn a(&self) -> Integer {
        (&self.m * &self.m - &self.n * &self.n) / 2
    }

    pub fn b(&self) -> Integer {
        (&self.m * &self.m + &self.n * &self.n) / 2
    }

    /// `a² + b² = (m⁴ + n⁴)/2`.
    pub fn multiplier(&self) -> Integer {
        let (a, b) = (self.a(), self.b());
        &a * &a + &b * &b
    }
}

fn pw(v: &Integer, e: u32) -> Integer {
    num_traits::pow(v.clone(), e as usize)
}

fn normalize_ints(n: &Integer, x: Integer, y: Integer, z: Integer, w: Integer) -> Result<Quadruple> {
    normalize_quadruple(n, &rat_int(&x), &rat_int(&y), &rat_int(&z), &rat_int(&w))
}

/// Evaluates the printed 2Q or 3Q polynomials and normalizes against
/// `N = (m⁴ + n⁴)/2`.
pub fn family1_closed_form(m: &Integer, n: &Integer, which: Family1Form) -> Result<Quadruple> {
    let params = FamilyParams::new(m.clone(), n.clone())?;
    let (m, n) = (&params.m, &params.n);
    let (x, y, z, w) = match which {
        Family1Form::TwoQ => {
            let (m2, n2, m4, n4) = (pw(m, 2), pw(n, 2), pw(m, 4), pw(n, 4));
            (
                -&n4 + 4 * &m2 * &n2 + &m4,
                &n4 + 4 * &m2 * &n2 - &m4,
                (3 * &n4 + &m4) * m,
                (&n4 + 3 * &m4) * n,
            )
        }
        Family1Form::ThreeQ => {
            let mp = |e| pw(m, e);
            let np = |e| pw(n, e);
            (
                mp(12) + 12 * np(2) * mp(10) - 19 * mp(8) * np(4) + 40 * np(6) * mp(6)
                    + 19 * mp(4) * np(8)
                    + 12 * np(10) * mp(2)
                    - np(12),
                -mp(12) + 12 * np(2) * mp(10) + 19 * mp(8) * np(4) + 40 * np(6) * mp(6)
                    - 19 * mp(4) * np(8)
                    + 12 * np(10) * mp(2)
                    + np(12),
                m * (mp(12) + 41 * mp(8) * np(4) + 27 * mp(4) * np(8) - 5 * np(12)),
                n * (-np(12) - 41 * mp(4) * np(8) - 27 * mp(8) * np(4) + 5 * mp(12)),
            )
        }
    };
    normalize_ints(&params.multiplier(), x, y, z, w)
}

/// Evaluates the two closed forms for odd `m`, `|m| ≥ 3`, against
/// `N = (m⁴ + 1)/2`.
pub fn family2_closed_form(m: &Integer, which: Family2Form) -> Result<Quadruple> {
    if m.is_even() {
        return Err(Error::ParityMismatch(format!("m = {m} must be odd")));
    }
    if m.abs().is_one() {
        return Err(Error::DegenerateFamily);
    }
    let mp = |e| pw(m, e);
    let (x, y, z, w) = match which {
        Family2Form::First => (
            mp(4) + 4 * mp(2) - 1,
            mp(4) - 4 * mp(2) - 1,
            3 * mp(4) + 1,
            (mp(4) + 3) * m,
        ),
        Family2Form::Second => (
            mp(12) + 12 * mp(10) - 19 * mp(8) + 40 * mp(6) + 19 * mp(4) + 12 * mp(2) - 1,
            mp(12) - 12 * mp(10) - 19 * mp(8) - 40 * mp(6) + 19 * mp(4) - 12 * mp(2) - 1,
            5 * mp(12) - 27 * mp(8) - 41 * mp(4) - 1,
            m * (mp(12) + 41 * mp(8) + 27 * mp(4) - 5),
        ),
    };
    let multiplier = (mp(4) + 1) / 2;
    normalize_ints(&multiplier, x, y, z, w)
}

/// One multiple carried all the way to a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub j: u64,
    pub curve_point: EcPoint,
    pub quartic_point: QuarticPoint,
    pub k: Rational,
    /// `(x, y, z, w)` before clearing denominators.
    pub raw: [Rational; 4],
    pub quadruple: Quadruple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Recovery {
    /// Two-squares parameterization with `k = 1/U`, `w = |V|·k²`.
    InverseU { a: Rational, b: Rational, m: Rational },
    /// Same parameterization with `k = U`, `w = |V|`.
    DirectU { a: Rational, b: Rational, m: Rational },
    /// The conic parameterization for `N = 17`.
    Conic17,
}

/// A link plus the recipe for turning its quartic points into solutions.
#[derive(Debug, Clone)]
pub struct Pipeline {
    link: BirationalLink,
    recovery: Recovery,
    multiplier: Integer,
}

impl Pipeline {
    /// Multiples of the distinguished point on the `(m⁴ + n⁴)/2` curve.
    pub fn theorem1(m: &Integer, n: &Integer) -> Result<Self> {
        let params = FamilyParams::new(m.clone(), n.clone())?;
        let link = theorem1_link(m, n)?;
        Ok(Pipeline {
            link,
            recovery: Recovery::InverseU {
                a: rat_int(&params.a()),
                b: rat_int(&params.b()),
                m: rat_int(m),
            },
            multiplier: params.multiplier(),
        })
    }

    /// `N = (m⁴ + 1)/2` for odd `m`: the two-parameter family at `n = 1`.
    pub fn theorem2(m: &Integer) -> Result<Self> {
        if m.is_even() {
            return Err(Error::ParityMismatch(format!("m = {m} must be odd")));
        }
        Self::theorem1(m, &Integer::one())
    }

    pub fn instance41() -> Result<Self> {
        Ok(Pipeline {
            link: instance41_link()?,
            recovery: Recovery::DirectU { a: rat(4, 1), b: rat(5, 1), m: rat(3, 1) },
            multiplier: int(41),
        })
    }

    pub fn instance17() -> Result<Self> {
        Ok(Pipeline { link: instance17_link()?, recovery: Recovery::Conic17, multiplier: int(17) })
    }

    pub fn link(&self) -> &BirationalLink {
        &self.link
    }

    pub fn multiplier(&self) -> &Integer {
        &self.multiplier
    }

    /// Solution from `j·P`, `j ≥ 2`.
    pub fn run(&self, j: u64) -> Result<PipelineResult> {
        if j < 2 {
            return Err(Error::InvalidArgument(format!("multiple j = {j} must be >= 2")));
        }
        let point = self.link.curve.mul(j, &self.link.generator);
        self.solve_at(j, point)
    }

    /// Results for every `j` in `first..=last`, computing the multiples
    /// incrementally. Exceptional multiples are reported, not dropped.
    pub fn run_range(&self, first: u64, last: u64) -> Vec<(u64, Result<PipelineResult>)> {
        if first < 2 {
            return vec![(first, Err(Error::InvalidArgument(format!("multiple j = {first} must be >= 2"))))];
        }
        let curve = &self.link.curve;
        let g = &self.link.generator;
        let mut point = curve.mul(first, g);
        let mut out = Vec::new();
        for j in first..=last {
            out.push((j, self.solve_at(j, point.clone())));
            point = curve.add(&point, g);
        }
        out
    }

    fn solve_at(&self, j: u64, point: EcPoint) -> Result<PipelineResult> {
        let quartic_point = self.link.forward(&point)?;
        let (k, raw) = self.recover(&quartic_point)?;
        let [x, y, z, w] = &raw;
        let quadruple = normalize_quadruple(&self.multiplier, x, y, z, w)?;
        Ok(PipelineResult { j, curve_point: point, quartic_point, k, raw, quadruple })
    }

    fn recover(&self, q: &QuarticPoint) -> Result<(Rational, [Rational; 4])> {
        match &self.recovery {
            Recovery::InverseU { a, b, m } => {
                if q.u.is_zero() {
                    return Err(Error::ExceptionalPoint);
                }
                let k = q.u.recip();
                let w = q.v.abs() * &k * &k;
                let raw = two_squares_solution(&k, a, b, m, w)?;
                Ok((k, raw))
            }
            Recovery::DirectU { a, b, m } => {
                let k = q.u.clone();
                let raw = two_squares_solution(&k, a, b, m, q.v.abs())?;
                Ok((k, raw))
            }
            Recovery::Conic17 => {
                let k = q.u.clone();
                let two = rat(2, 1);
                let scale = &k * &k - rat(5, 1);
                assert!(!scale.is_zero(), "k² = 5 has no rational solution");
                let x = &two * (&k - rat(2, 1)) * (&k - rat(3, 1)) / &scale;
                let y = (&k - rat(1, 1)) * (rat(3, 1) * &k - rat(7, 1)) / &scale;
                let w = (rat(25, 1) + rat(5, 1) * &k * &k - rat(22, 1) * &k) / &scale;
                let z = &two * &q.v / &scale;
                if &z * &z * rat(4, 1) != rat(17, 1) * &y * &y - &w * &w {
                    return Err(Error::EquationFails(format!("z² relation at k = {k}")));
                }
                Ok((k, [x, y, z.abs(), w.abs()]))
            }
        }
    }
}

/// `(x, y, z, w)` for parameter `k`, checking both square relations.
fn two_squares_solution(
    k: &Rational,
    a: &Rational,
    b: &Rational,
    m: &Rational,
    w: Rational,
) -> Result<[Rational; 4]> {
    let four_a = rat(4, 1) * a;
    let x = k * k - rat(2, 1) * m * k + &four_a - rat(3, 1) * m * m;
    let y = -(k * k) - rat(2, 1) * m * k + &four_a - m * m;
    let z = rat_sqrt_exact(&(a * &x * &x + b * &y * &y))?;
    if &w * &w != b * &x * &x - a * &y * &y {
        return Err(Error::EquationFails(format!("w² = b·x² − a·y² at k = {k}")));
    }
    Ok([x, y, z, w])
}

pub fn pipeline_theorem1(m: &Integer, n: &Integer, j: u64) -> Result<PipelineResult> {
    Pipeline::theorem1(m, n)?.run(j)
}

pub fn pipeline_theorem2(m: &Integer, j: u64) -> Result<PipelineResult> {
    Pipeline::theorem2(m)?.run(j)
}

pub fn pipeline_instance41(j: u64) -> Result<PipelineResult> {
    Pipeline::instance41()?.run(j)
}

pub fn pipeline_instance17(j: u64) -> Result<PipelineResult> {
    Pipeline::instance17()?.run(j)
}
