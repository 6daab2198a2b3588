//! Tangent-line descent on `x⁴ + y⁴ = n(z⁴ + w⁴)`.
//!
//! From a known solution `S = (x0, y0, z0, w0)` put `S + t·v` into the
//! equation. The `t⁰` term vanishes; choosing `v = (p, q, r, s)` so that the
//! `t¹` and `t²` terms vanish too leaves `c3·t³ + c4·t⁴ = 0`, hence the new
//! point at `t = −c3/c4`.
//!
//! With `s = 1`, `c1 = 0` is a plane which fixes `q` in terms of `(p, r)`;
//! `c2 = 0` is then a conic in `(p, r)` through the trivial direction
//! `P0 = (x0/w0, z0/w0)`. That conic is always singular at `P0` (Euler's
//! identity makes the seed a kernel vector of the restricted form), so it
//! splits into two lines through `P0`. Because the four coefficients
//! `1, 1, −n, −n` multiply to a square, those lines are rational. Each
//! line yields one new solution, independent of which point of the line is
//! used. When the conic is nonsingular at `P0` a chord through `P0` is used
//! instead.
//!
//! This module works in the `x⁴ + y⁴ = n(z⁴ + w⁴)` orientation and converts
//! to [`Quadruple`] (`n(x⁴ + y⁴) = z⁴ + w⁴`) by swapping the pairs.

use std::cmp::Ordering;

use log::warn;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{fourth, normalize_quadruple, rat, rat_int, rat_sqrt_exact, Integer, Quadruple, Rational};

/// A known solution of `x0⁴ + y0⁴ = n(z0⁴ + w0⁴)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    n: Integer,
    coords: [Integer; 4],
}

impl Seed {
    pub fn new(n: Integer, coords: [Integer; 4]) -> Result<Self> {
        let [x, y, z, w] = &coords;
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidArgument("seed has x = y = 0".into()));
        }
        if fourth(x) + fourth(y) != &n * (fourth(z) + fourth(w)) {
            return Err(Error::EquationFails(format!(
                "{x}⁴ + {y}⁴ ≠ {n}·({z}⁴ + {w}⁴)"
            )));
        }
        Ok(Seed { n, coords })
    }

    pub fn from_i64(n: i64, coords: [i64; 4]) -> Result<Self> {
        Self::new(Integer::from(n), coords.map(Integer::from))
    }

    /// `n(x⁴ + y⁴) = z⁴ + w⁴` becomes `z⁴ + w⁴ = n(x⁴ + y⁴)`.
    pub fn from_quadruple(q: &Quadruple) -> Self {
        Seed {
            n: q.n().clone(),
            coords: [q.z().clone(), q.w().clone(), q.x().clone(), q.y().clone()],
        }
    }

    pub fn to_quadruple(&self) -> Result<Quadruple> {
        let [x, y, z, w] = self.coords.each_ref().map(rat_int);
        normalize_quadruple(&self.n, &z, &w, &x, &y)
    }

    pub fn n(&self) -> &Integer {
        &self.n
    }

    pub fn coords(&self) -> &[Integer; 4] {
        &self.coords
    }

    fn weights(&self) -> [Rational; 4] {
        let n = rat_int(&self.n);
        [Rational::one(), Rational::one(), -n.clone(), -n]
    }
}

/// Direction `(p, q, r, s)` of the line `S + t·v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Direction(pub [Rational; 4]);

impl Direction {
    /// The usual form with `s = 1`.
    pub fn pqr(p: Rational, q: Rational, r: Rational) -> Self {
        Direction([p, q, r, Rational::one()])
    }

    pub fn p(&self) -> &Rational {
        &self.0[0]
    }
    pub fn q(&self) -> &Rational {
        &self.0[1]
    }
    pub fn r(&self) -> &Rational {
        &self.0[2]
    }
    pub fn s(&self) -> &Rational {
        &self.0[3]
    }

    /// Proportional to the seed itself.
    pub fn is_trivial_for(&self, seed: &Seed) -> bool {
        let s = seed.coords.each_ref().map(rat_int);
        (0..4).all(|i| (0..4).all(|j| &self.0[i] * &s[j] == &self.0[j] * &s[i]))
    }
}

/// Coefficients `[c1, c2, c3, c4]` of `t¹ … t⁴` in
/// `Σ weight_i·(seed_i + t·v_i)⁴`.
pub fn expand_coefficients(seed: &Seed, dir: &Direction) -> [Rational; 4] {
    const BINOM: [i64; 5] = [1, 4, 6, 4, 1];
    let weights = seed.weights();
    let base = seed.coords.each_ref().map(rat_int);
    std::array::from_fn(|idx| {
        let i = idx + 1;
        let sum = (0..4).fold(Rational::zero(), |acc, j| {
            acc + &weights[j]
                * num_traits::pow(base[j].clone(), 4 - i)
                * num_traits::pow(dir.0[j].clone(), i)
        });
        rat(BINOM[i], 1) * sum
    })
}

/// Which of the two lines of a split conic to use. Lines are ordered by
/// the height of their slope, smaller first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    Primary,
    Secondary,
}

/// Picks a point on the chosen line (`value` is the `p` coordinate), or the
/// chord slope when the conic does not split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selector {
    pub value: Rational,
    pub branch: Branch,
}

impl Selector {
    pub fn new(value: Rational, branch: Branch) -> Self {
        Selector { value, branch }
    }

    pub fn p(value: i64) -> Self {
        Selector { value: rat(value, 1), branch: Branch::Primary }
    }
}

/// `p ∈ {1, 2, −1, 1/2, 3, −2, 5, −3}` on the primary line, then the same
/// values on the secondary line.
pub fn default_selectors() -> Vec<Selector> {
    let values = [(1, 1), (2, 1), (-1, 1), (1, 2), (3, 1), (-2, 1), (5, 1), (-3, 1)];
    [Branch::Primary, Branch::Secondary]
        .into_iter()
        .flat_map(|b| values.iter().map(move |&(a, d)| Selector::new(rat(a, d), b)))
        .collect()
}

/// Coordinate permutation making `y0 ≠ 0` and `w0 ≠ 0`; an involution.
#[derive(Debug, Clone, Copy)]
struct Roles {
    swap_xy: bool,
    swap_zw: bool,
}

impl Roles {
    fn for_seed(c: &[Integer; 4]) -> Self {
        Roles { swap_xy: c[1].is_zero(), swap_zw: c[3].is_zero() }
    }

    fn apply<T: Clone>(&self, v: &[T; 4]) -> [T; 4] {
        let mut out = v.clone();
        if self.swap_xy {
            out.swap(0, 1);
        }
        if self.swap_zw {
            out.swap(2, 3);
        }
        out
    }
}

/// The conic `c2 = 0` restricted to the plane `c1 = 0`, in `(p, r)` with
/// `s = 1`, as `A p² + 2B pr + C r² + 2D p + 2E r + G`.
struct PlaneConic {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
    e: Rational,
    g: Rational,
    /// `q = q_p·p + q_r·r + q_0`
    q_p: Rational,
    q_r: Rational,
    q_0: Rational,
}

impl PlaneConic {
    fn build(seed: &Seed) -> Self {
        let w = seed.weights();
        let s = seed.coords.each_ref().map(rat_int);
        let cube = |i: usize| &w[i] * &s[i] * &s[i] * &s[i];
        let square = |i: usize| &w[i] * &s[i] * &s[i];
        let (e0, e1, e2, e3) = (cube(0), cube(1), cube(2), cube(3));
        let q_p = -(&e0 / &e1);
        let q_r = -(&e2 / &e1);
        let q_0 = -(&e3 / &e1);
        let (d0, d1, d2, d3) = (square(0), square(1), square(2), square(3));
        PlaneConic {
            a: &d0 + &d1 * &q_p * &q_p,
            b: &d1 * &q_p * &q_r,
            c: &d2 + &d1 * &q_r * &q_r,
            d: &d1 * &q_p * &q_0,
            e: &d1 * &q_r * &q_0,
            g: &d3 + &d1 * &q_0 * &q_0,
            q_p,
            q_r,
            q_0,
        }
    }

    fn determinant(&self) -> Rational {
        let PlaneConic { a, b, c, d, e, g, .. } = self;
        a * (c * g - e * e) - b * (b * g - e * d) + d * (b * e - c * d)
    }

    /// Half-gradient at `(p, r)`.
    fn half_gradient(&self, p: &Rational, r: &Rational) -> (Rational, Rational) {
        (&self.a * p + &self.b * r + &self.d, &self.b * p + &self.c * r + &self.e)
    }

    fn q_at(&self, p: &Rational, r: &Rational) -> Rational {
        &self.q_p * p + &self.q_r * r + &self.q_0
    }

    /// The two line directions `(dp, dr)` through the singular point,
    /// primary first.
    fn split_lines(&self) -> Result<Vec<(Rational, Rational)>> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::NoNontrivialDirection);
        }
        let disc = b * b - a * c;
        let root = rat_sqrt_exact(&disc).map_err(|e| match e {
            Error::NotASquare | Error::NegativeInput => Error::IrrationalLines,
            other => other,
        })?;
        let mut lines = if c.is_zero() {
            // p·(A·p + 2B·r) = 0 in shifted coordinates
            vec![(Rational::zero(), Rational::one()), (rat(2, 1) * b, -a.clone())]
        } else {
            vec![
                (Rational::one(), (-b + &root) / c),
                (Rational::one(), (-b - &root) / c),
            ]
        };
        lines.iter_mut().for_each(|l| *l = primitive_direction(l));
        lines.sort_by(compare_height);
        lines.dedup();
        Ok(lines)
    }
}

/// Scales `(dp, dr)` to coprime integers with a positive leading entry.
fn primitive_direction((dp, dr): &(Rational, Rational)) -> (Rational, Rational) {
    use num_integer::Integer as _;
    let lcm = dp.denom().lcm(dr.denom());
    let (ip, ir) = ((dp * rat_int(&lcm)).to_integer(), (dr * rat_int(&lcm)).to_integer());
    let g = ip.gcd(&ir);
    let sign = if ip.is_negative() || (ip.is_zero() && ir.is_negative()) { -1 } else { 1 };
    (rat_int(&(&ip / &g * sign)), rat_int(&(&ir / &g * sign)))
}

fn compare_height(l: &(Rational, Rational), r: &(Rational, Rational)) -> Ordering {
    let h = |d: &(Rational, Rational)| d.0.abs().max(d.1.abs());
    h(l).cmp(&h(r)).then_with(|| l.cmp(r))
}

/// A direction with `c1 = c2 = 0` other than the trivial one.
pub fn solve_direction(seed: &Seed, selector: &Selector) -> Result<Direction> {
    let roles = Roles::for_seed(&seed.coords);
    let permuted = Seed { n: seed.n.clone(), coords: roles.apply(&seed.coords) };
    let dir = solve_direction_permuted(&permuted, selector)?;
    Ok(Direction(roles.apply(&dir.0)))
}

fn solve_direction_permuted(seed: &Seed, selector: &Selector) -> Result<Direction> {
    let conic = PlaneConic::build(seed);
    let s = seed.coords.each_ref().map(rat_int);
    let p0 = &s[0] / &s[3];
    let r0 = &s[2] / &s[3];

    let (gp, gr) = conic.half_gradient(&p0, &r0);
    let (p, r) = if gp.is_zero() && gr.is_zero() && conic.determinant().is_zero() {
        let lines = conic.split_lines()?;
        let idx = match selector.branch {
            Branch::Primary => 0,
            Branch::Secondary => 1,
        };
        let (dp, dr) = lines.get(idx).ok_or(Error::NoNontrivialDirection)?;
        if dp.is_zero() {
            // the line p = p0: the selector moves along r instead
            (p0.clone(), &r0 + &selector.value)
        } else {
            let shift = &selector.value - &p0;
            (selector.value.clone(), &r0 + shift * dr / dp)
        }
    } else {
        // chord through P0 with slope `value`; the constant term vanishes
        let mu = &selector.value;
        let quad = &conic.a + rat(2, 1) * &conic.b * mu + &conic.c * mu * mu;
        let lin = rat(2, 1) * (&gp + mu * &gr);
        if quad.is_zero() || lin.is_zero() {
            return Err(Error::NoNontrivialDirection);
        }
        let lambda = -lin / quad;
        (&p0 + &lambda, &r0 + &lambda * mu)
    };
    if p == p0 && r == r0 {
        return Err(Error::NoNontrivialDirection);
    }
    let q = conic.q_at(&p, &r);
    Ok(Direction::pqr(p, q, r))
}

/// One descent step in the `x⁴ + y⁴ = n(z⁴ + w⁴)` orientation.
pub fn descend_seed(seed: &Seed, selector: &Selector) -> Result<Seed> {
    let dir = solve_direction(seed, selector)?;
    let [c1, c2, c3, c4] = expand_coefficients(seed, &dir);
    if !c1.is_zero() || !c2.is_zero() {
        return Err(Error::EquationFails("direction does not kill c1 and c2".into()));
    }
    if c4.is_zero() {
        return Err(Error::ZeroQuartic);
    }
    let t = -c3 / c4;
    if t.is_zero() {
        return Err(Error::DegenerateStep);
    }
    let point: [Rational; 4] =
        std::array::from_fn(|i| rat_int(&seed.coords[i]) + &t * &dir.0[i]);
    // clear denominators and common factors
    let q = normalize_quadruple(&seed.n, &point[2], &point[3], &point[0], &point[1])?;
    let next = Seed::from_quadruple(&q);
    if q.eq_unordered(&seed.to_quadruple()?) {
        return Err(Error::DegenerateStep);
    }
    Ok(next)
}

/// One descent step, returned as a [`Quadruple`] in `n(x⁴ + y⁴) = z⁴ + w⁴`
/// form.
pub fn descend(seed: &Seed, selector: &Selector) -> Result<Quadruple> {
    descend_seed(seed, selector)?.to_quadruple()
}

/// A seed plus the solutions derived from it so far.
#[derive(Debug, Clone)]
pub struct RichmondState {
    pub current: Seed,
    pub direction: Option<Direction>,
    pub coefficients: Option<[Rational; 4]>,
    pub history: Vec<Quadruple>,
}

impl RichmondState {
    pub fn new(seed: Seed) -> Self {
        RichmondState { current: seed, direction: None, coefficients: None, history: Vec::new() }
    }

    /// Tries each selector until a step gives a solution not seen before.
    pub fn advance(&mut self, selectors: &[Selector]) -> Result<&Quadruple> {
        let origin = self.current.to_quadruple()?;
        let mut last_err = Error::NoNontrivialDirection;
        for sel in selectors {
            match descend_seed(&self.current, sel) {
                Ok(next) => {
                    let q = next.to_quadruple()?;
                    if q.eq_unordered(&origin) || self.history.iter().any(|h| h.eq_unordered(&q)) {
                        warn!("descent from {origin} repeated {q}; trying next selector");
                        last_err = Error::DegenerateStep;
                        continue;
                    }
                    let dir = solve_direction(&self.current, sel)?;
                    self.coefficients = Some(expand_coefficients(&self.current, &dir));
                    self.direction = Some(dir);
                    self.current = next;
                    self.history.push(q);
                    return Ok(self.history.last().expect("just pushed"));
                }
                Err(e) => last_err = e,
            }
        }
        Err(last_err)
    }
}

/// Iterates [`descend`], feeding each result back in as the next seed.
pub fn chain(seed: &Seed, steps: usize, selectors: &[Selector]) -> Result<Vec<Quadruple>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be >= 1".into()));
    }
    let mut state = RichmondState::new(seed.clone());
    for _ in 0..steps {
        state.advance(selectors)?;
    }
    Ok(state.history)
}
