//! Quartic models `V² = q4·U⁴ + q3·U³ + q2·U² + q1·U + q0` and the explicit
//! birational maps linking them to Weierstrass curves.
//!
//! Three families of links are available: the two-parameter family
//! [`theorem1_link`] (`N = (m⁴ + n⁴)/2`), and the fixed instances
//! [`instance41_link`] and [`instance17_link`]. Each map is stored as a pair
//! of rational functions in two variables with exact coefficients, so the
//! formulas can be inspected and evaluated without any reduction step.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::elliptic::{EcPoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact_arith::{debug_check, int, rat, rat_int, Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuarticPoint {
    pub u: Rational,
    pub v: Rational,
}

impl QuarticPoint {
    pub fn new(u: Rational, v: Rational) -> Self {
        QuarticPoint { u, v }
    }

    pub fn from_ints(u: i64, v: i64) -> Self {
        QuarticPoint { u: rat(u, 1), v: rat(v, 1) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticModel {
    /// `[q4, q3, q2, q1, q0]`
    coeffs: [Rational; 5],
    marked: QuarticPoint,
}

impl QuarticModel {
    pub fn new(coeffs: [Rational; 5], marked: QuarticPoint) -> Result<Self> {
        if coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("leading quartic coefficient is zero".into()));
        }
        let model = QuarticModel { coeffs, marked };
        if !model.contains(&model.marked) {
            return Err(Error::EquationFails(format!(
                "marked point ({}, {}) is not on the quartic",
                model.marked.u, model.marked.v
            )));
        }
        Ok(model)
    }

    pub fn coeffs(&self) -> &[Rational; 5] {
        &self.coeffs
    }

    pub fn marked_point(&self) -> &QuarticPoint {
        &self.marked
    }

    /// `q(U)` by Horner's rule.
    pub fn eval(&self, u: &Rational) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc * u + c)
    }

    pub fn contains(&self, p: &QuarticPoint) -> bool {
        &p.v * &p.v == self.eval(&p.u)
    }

    /// The model obtained by `U ↦ 1/U`, `V ↦ V/U²`: coefficients reversed.
    pub fn reversed_coeffs(&self) -> [Rational; 5] {
        let mut c = self.coeffs.clone();
        c.reverse();
        c
    }
}

/// One monomial `coef · s^i · t^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    coef: Rational,
    s_pow: u32,
    t_pow: u32,
}

/// Polynomial in two variables with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly(Vec<Term>);

impl BiPoly {
    fn new(terms: Vec<(Rational, u32, u32)>) -> Self {
        BiPoly(
            terms
                .into_iter()
                .filter(|(c, _, _)| !c.is_zero())
                .map(|(coef, s_pow, t_pow)| Term { coef, s_pow, t_pow })
                .collect(),
        )
    }

    fn from_ints(terms: &[(i64, u32, u32)]) -> Self {
        Self::new(terms.iter().map(|&(c, i, j)| (rat(c, 1), i, j)).collect())
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, term| {
            acc + &term.coef * pow(s, term.s_pow) * pow(t, term.t_pow)
        })
    }
}

fn pow(v: &Rational, e: u32) -> Rational {
    num_traits::pow(v.clone(), e as usize)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: BiPoly,
    den: BiPoly,
}

impl RationalFunction {
    fn new(num: BiPoly, den: BiPoly) -> Self {
        RationalFunction { num, den }
    }

    /// Fails with [`Error::ExceptionalPoint`] when the denominator vanishes.
    pub fn eval(&self, s: &Rational, t: &Rational) -> Result<Rational> {
        let den = self.den.eval(s, t);
        if den.is_zero() {
            return Err(Error::ExceptionalPoint);
        }
        let out = self.num.eval(s, t) / den;
        debug_check(&out);
        Ok(out)
    }
}

/// `(s, t) ↦ (first(s, t), second(s, t))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointMap {
    first: RationalFunction,
    second: RationalFunction,
}

impl PointMap {
    pub fn apply(&self, s: &Rational, t: &Rational) -> Result<(Rational, Rational)> {
        Ok((self.first.eval(s, t)?, self.second.eval(s, t)?))
    }
}

/// Which printed set of formulas a link carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkKind {
    Theorem1 { m: Integer, n: Integer },
    Instance41,
    Instance17,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirationalLink {
    pub kind: LinkKind,
    pub quartic: QuarticModel,
    pub curve: WeierstrassCurve,
    /// `(X, Y) ↦ (U, V)`
    pub to_quartic: PointMap,
    /// `(U, V) ↦ (X, Y)`
    pub to_curve: PointMap,
    /// Point of infinite order whose multiples drive the pipelines.
    pub generator: EcPoint,
}

impl BirationalLink {
    /// Curve point to quartic point.
    pub fn forward(&self, p: &EcPoint) -> Result<QuarticPoint> {
        let (x, y) = p.coords().ok_or(Error::ExceptionalPoint)?;
        let (u, v) = self.to_quartic.apply(x, y)?;
        Ok(QuarticPoint { u, v })
    }

    /// Quartic point to curve point.
    pub fn backward(&self, p: &QuarticPoint) -> Result<EcPoint> {
        let (x, y) = self.to_curve.apply(&p.u, &p.v)?;
        Ok(EcPoint::Affine(x, y))
    }
}

fn check_link(link: BirationalLink) -> Result<BirationalLink> {
    if !link.curve.is_on_curve(&link.generator) {
        return Err(Error::NotOnCurve);
    }
    Ok(link)
}

/// Curve, quartic and maps for multiplier `(m⁴ + n⁴)/2`, with `m` and `n`
/// nonzero and of equal parity. The quartic carries the marked point
/// `(0, n)`; the attached point is
/// `P = (2m²(n⁴+2m⁴)/n², −16m(n⁸−m⁸)/n³)`.
pub fn theorem1_link(m: &Integer, n: &Integer) -> Result<BirationalLink> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::InvalidArgument("m and n must be nonzero".into()));
    }
    if m.is_odd() != n.is_odd() {
        return Err(Error::ParityMismatch(format!("m = {m}, n = {n}")));
    }
    let (mq, nq) = (rat_int(m), rat_int(n));
    let mp = |e: u32| pow(&mq, e);
    let np = |e: u32| pow(&nq, e);
    let c = |v: i64| rat(v, 1);

    let curve = WeierstrassCurve::new(
        -c(4) * mp(3) / &nq,
        -c(2) * mp(2) * (np(4) + c(2) * mp(4)) / np(2),
        c(8) * &nq * mp(5) + c(16) * &mq * np(5),
        -c(20) * mp(4) * np(4) - c(16) * np(8),
        c(104) * mp(6) * np(6) + c(32) * mp(2) * np(10) + c(80) * mp(10) * np(2),
    )?;

    let quartic = QuarticModel::new(
        [
            c(5) * mp(4) * np(2) + c(4) * np(6),
            c(4) * mp(5) + c(8) * &mq * np(4),
            -c(2) * mp(2) * np(2),
            -c(4) * mp(3),
            np(2),
        ],
        QuarticPoint::new(Rational::zero(), nq.clone()),
    )?;

    // forward: s = X, t = Y
    let to_quartic = PointMap {
        first: RationalFunction::new(
            BiPoly::new(vec![
                (c(2) * np(2), 1, 0),
                (-c(4) * mp(2) * np(4) - c(8) * mp(6), 0, 0),
            ]),
            BiPoly::new(vec![(nq.clone(), 0, 1)]),
        ),
        second: RationalFunction::new(
            BiPoly::new(vec![
                (np(4), 3, 0),
                (-c(6) * np(6) * mp(2) - c(12) * mp(6) * np(2), 2, 0),
                (
                    c(28) * np(8) * mp(4) + c(32) * np(4) * mp(8) + c(32) * mp(12) + c(16) * np(12),
                    1,
                    0,
                ),
                (-c(16) * mp(9) * &nq + c(16) * np(9) * &mq, 0, 1),
                (-c(104) * np(10) * mp(6) - c(32) * np(14) * mp(2) - c(80) * np(6) * mp(10), 0, 0),
            ]),
            BiPoly::new(vec![(np(3), 0, 2)]),
        ),
    };

    // backward: s = U, t = V
    let to_curve = PointMap {
        first: RationalFunction::new(
            BiPoly::new(vec![
                (c(2) * &nq, 0, 1),
                (c(2) * np(2), 0, 0),
                (-c(4) * mp(3), 1, 0),
            ]),
            BiPoly::new(vec![(Rational::one(), 2, 0)]),
        ),
        second: RationalFunction::new(
            BiPoly::new(vec![
                (c(4) * np(3), 0, 1),
                (c(4) * np(4), 0, 0),
                (-c(8) * np(2) * mp(3), 1, 0),
                (-c(4) * np(4) * mp(2) - c(8) * mp(6), 2, 0),
            ]),
            BiPoly::new(vec![(nq.clone(), 3, 0)]),
        ),
    };

    let generator = EcPoint::Affine(
        c(2) * mp(2) * (np(4) + c(2) * mp(4)) / np(2),
        -c(16) * &mq * (np(8) - mp(8)) / np(3),
    );

    check_link(BirationalLink {
        kind: LinkKind::Theorem1 { m: m.clone(), n: n.clone() },
        quartic,
        curve,
        to_quartic,
        to_curve,
        generator,
    })
}

fn int_quartic(c: [i64; 5], marked: (i64, i64)) -> Result<QuarticModel> {
    QuarticModel::new(c.map(|v| rat(v, 1)), QuarticPoint::from_ints(marked.0, marked.1))
}

/// `V² = U⁴ − 108U³ − 18U² + 996U + 409` against
/// `Y² + XY + Y = X³ − X² − 27X + 26`, generator `(6, −11)`.
///
/// `U` here is the parameter `k` of the `(a, b, m) = (4, 5, 3)`
/// parameterization directly, so this quartic is the coefficient-reversed
/// form of the `theorem1_link(3, 1)` quartic. The marked point `(−3, 16)`
/// is the image of the generator.
pub fn instance41_link() -> Result<BirationalLink> {
    let curve = WeierstrassCurve::from_ints(1, -1, 1, -27, 26)?;
    let quartic = int_quartic([1, -108, -18, 996, 409], (-3, 16))?;
    let to_quartic = PointMap {
        first: RationalFunction::new(
            BiPoly::from_ints(&[(4, 0, 1), (29, 1, 0), (-10, 0, 0)]),
            BiPoly::from_ints(&[(1, 1, 0), (-46, 0, 0)]),
        ),
        second: RationalFunction::new(
            BiPoly::from_ints(&[(16, 3, 0), (-2208, 2, 0), (-3392, 1, 0), (13744, 0, 0), (-9840, 0, 1)]),
            // (X − 46)²
            BiPoly::from_ints(&[(1, 2, 0), (-92, 1, 0), (2116, 0, 0)]),
        ),
    };
    let to_curve = PointMap {
        first: RationalFunction::new(
            BiPoly::from_ints(&[(1, 0, 1), (1, 2, 0), (-54, 1, 0), (5, 0, 0)]),
            BiPoly::from_ints(&[(32, 0, 0)]),
        ),
        second: RationalFunction::new(
            BiPoly::from_ints(&[(1, 1, 1), (1, 3, 0), (-83, 2, 0), (99, 1, 0), (-29, 0, 1), (175, 0, 0)]),
            BiPoly::from_ints(&[(128, 0, 0)]),
        ),
    };
    check_link(BirationalLink {
        kind: LinkKind::Instance41,
        quartic,
        curve,
        to_quartic,
        to_curve,
        generator: EcPoint::from_ints(6, -11),
    })
}

/// `V² = 8U⁴ − 50U³ + 105U² − 80U + 13` against `Y² = X³ − 91X + 330`,
/// generator `(7, −6)`, marked point `(2, 1)`.
///
/// The marked point is the image of the point at infinity and lies in the
/// exceptional set of the backward map; the generator maps to `(3/2, −1)`.
pub fn instance17_link() -> Result<BirationalLink> {
    let curve = WeierstrassCurve::short(-91, 330)?;
    let quartic = int_quartic([8, -50, 105, -80, 13], (2, 1))?;
    // Y + 2X − 12
    let lin = [(1, 0, 1), (2, 1, 0), (-12, 0, 0)];
    let lin_sq = [
        (1, 0, 2),
        (4, 1, 1),
        (4, 2, 0),
        (-24, 0, 1),
        (-48, 1, 0),
        (144, 0, 0),
    ];
    let to_quartic = PointMap {
        first: RationalFunction::new(
            BiPoly::from_ints(&[(6, 1, 0), (-36, 0, 0), (2, 0, 1)]),
            BiPoly::from_ints(&lin),
        ),
        second: RationalFunction::new(
            BiPoly::from_ints(&[(-18, 2, 0), (-114, 0, 0), (1, 3, 0), (91, 1, 0)]),
            BiPoly::from_ints(&lin_sq),
        ),
    };
    let to_curve = PointMap {
        first: RationalFunction::new(
            BiPoly::from_ints(&[(2, 0, 1), (6, 0, 0), (-1, 2, 0)]),
            BiPoly::from_ints(&[(1, 2, 0), (-4, 1, 0), (4, 0, 0)]),
        ),
        second: RationalFunction::new(
            BiPoly::from_ints(&[(12, 0, 1), (-108, 0, 0), (180, 1, 0), (-90, 2, 0), (-4, 1, 1), (14, 3, 0)]),
            BiPoly::from_ints(&[(1, 3, 0), (-6, 2, 0), (12, 1, 0), (-8, 0, 0)]),
        ),
    };
    check_link(BirationalLink {
        kind: LinkKind::Instance17,
        quartic,
        curve,
        to_quartic,
        to_curve,
        generator: EcPoint::from_ints(7, -6),
    })
}

/// Shorthand used by tests and the CLI.
pub fn theorem1_link_i64(m: i64, n: i64) -> Result<BirationalLink> {
    theorem1_link(&int(m), &int(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem1_quartic_at_3_1_is_reversed_instance41_quartic() {
        let t1 = theorem1_link_i64(3, 1).unwrap();
        let i41 = instance41_link().unwrap();
        assert_eq!(
            t1.quartic.coeffs().clone(),
            [409, 996, -18, -108, 1].map(|v| rat(v, 1))
        );
        assert_eq!(&t1.quartic.reversed_coeffs(), i41.quartic.coeffs());
    }

    #[test]
    fn theorem1_distinguished_point_at_3_1() {
        let link = theorem1_link_i64(3, 1).unwrap();
        assert_eq!(link.generator, EcPoint::from_ints(2934, 314880));
        assert!(link.curve.is_on_curve(&link.generator));
        assert!(link.quartic.contains(link.quartic.marked_point()));
    }

    #[test]
    fn theorem1_generator_maps_to_marked_point() {
        for (m, n) in [(3, 1), (5, 3), (4, 2), (7, 5)] {
            let link = theorem1_link_i64(m, n).unwrap();
            let q = link.forward(&link.generator).unwrap();
            assert_eq!(q.u, rat(0, 1));
            assert_eq!(q.v.clone() * q.v.clone(), rat(n * n, 1));
            // backward is undefined at U = 0
            assert_eq!(link.backward(&q), Err(Error::ExceptionalPoint));
        }
    }

    #[test]
    fn theorem1_doubled_point_matches_closed_form_u() {
        for (m, n) in [(3i64, 1i64), (5, 1), (5, 3), (9, 7), (6, 4)] {
            let link = theorem1_link_i64(m, n).unwrap();
            let p2 = link.curve.double(&link.generator);
            let q = link.forward(&p2).unwrap();
            let expected = rat(-2 * n * n * m, n.pow(4) + m.pow(4));
            assert_eq!(q.u, expected, "(m, n) = ({m}, {n})");
            assert!(link.quartic.contains(&q));
        }
        let q = theorem1_link_i64(3, 1).unwrap();
        let u = q.forward(&q.curve.double(&q.generator)).unwrap().u;
        assert_eq!(u, rat(-3, 41));
    }

    #[test]
    fn theorem1_rejects_bad_parameters() {
        assert!(matches!(theorem1_link_i64(3, 2), Err(Error::ParityMismatch(_))));
        assert!(matches!(theorem1_link_i64(0, 2), Err(Error::InvalidArgument(_))));
        assert!(matches!(theorem1_link_i64(3, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn instance41_generator_image() {
        let link = instance41_link().unwrap();
        let q = link.forward(&link.generator).unwrap();
        // U = (−44 + 174 − 10)/(6 − 46)
        assert_eq!(q, QuarticPoint::from_ints(-3, 16));
        assert!(link.quartic.contains(&q));
        assert_eq!(link.backward(&q).unwrap(), link.generator);
    }

    #[test]
    fn instance41_roundtrip_at_doubled_generator() {
        let link = instance41_link().unwrap();
        let p2 = link.curve.double(&link.generator);
        let q = link.forward(&p2).unwrap();
        assert!(link.quartic.contains(&q));
        assert_eq!(link.backward(&q).unwrap(), p2);
    }

    #[test]
    fn instance41_exceptional_points() {
        let link = instance41_link().unwrap();
        assert_eq!(
            link.forward(&EcPoint::Affine(rat(46, 1), rat(0, 1))),
            Err(Error::ExceptionalPoint)
        );
        assert_eq!(link.forward(&EcPoint::Infinity), Err(Error::ExceptionalPoint));
    }

    #[test]
    fn instance17_marked_point_is_exceptional() {
        let link = instance17_link().unwrap();
        let marked = link.quartic.marked_point().clone();
        assert_eq!(marked, QuarticPoint::from_ints(2, 1));
        assert_eq!(link.backward(&marked), Err(Error::ExceptionalPoint));
    }

    #[test]
    fn instance17_generator_image() {
        let link = instance17_link().unwrap();
        let q = link.forward(&link.generator).unwrap();
        assert_eq!(q, QuarticPoint::new(rat(3, 2), rat(-1, 1)));
        assert!(link.quartic.contains(&q));
        assert_eq!(link.backward(&q).unwrap(), link.generator);
    }

    #[test]
    fn quartic_rejects_bad_models() {
        assert!(QuarticModel::new([0, 1, 0, 0, 1].map(|v| rat(v, 1)), QuarticPoint::from_ints(0, 1)).is_err());
        assert!(QuarticModel::new([1, 0, 0, 0, 1].map(|v| rat(v, 1)), QuarticPoint::from_ints(0, 2)).is_err());
    }

    #[test]
    fn links_roundtrip_on_multiples() {
        for link in [
            theorem1_link_i64(3, 1).unwrap(),
            theorem1_link_i64(5, 3).unwrap(),
            instance41_link().unwrap(),
            instance17_link().unwrap(),
        ] {
            for p in link.curve.multiples(&link.generator).skip(1).take(8) {
                let q = link.forward(&p).unwrap();
                assert!(link.quartic.contains(&q));
                assert_eq!(link.backward(&q).unwrap(), p);
            }
        }
    }
}
