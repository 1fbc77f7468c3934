//! Exact orientation predicate.
//!
//! A floating-point filter settles almost every call. When the filter cannot
//! certify the sign, the determinant is evaluated exactly as a floating-point
//! expansion. Inputs whose magnitudes could underflow or overflow during the
//! expansion stage fall through to big rational arithmetic.

use crate::error::{Error, Result};
use crate::geometry::Point;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Sign of the turn a -> b -> c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Collinear,
    Right,
}

impl Orientation {
    fn from_sign(s: f64) -> Self {
        if s > 0.0 {
            Orientation::Left
        } else if s < 0.0 {
            Orientation::Right
        } else {
            Orientation::Collinear
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of the cross product (b - a) x (c - a), computed exactly.
///
/// Fails on NaN or infinite coordinates.
pub fn orient(a: Point, b: Point, c: Point) -> Result<Orientation> {
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(orientation(a, b, c))
}

const EPS: f64 = f64::EPSILON * 0.5;
const CCW_ERRBOUND_A: f64 = (3.0 + 16.0 * EPS) * EPS;
// Coordinates in this band keep every product and rounding error of the
// expansion stage in the normal range.
const SAFE_LO: f64 = 1e-135;
const SAFE_HI: f64 = 1e135;
// Products at least this large are normal, so the filter bound holds.
const TINY: f64 = 1e-300;

/// Unchecked orientation for coordinates already known to be finite.
#[inline]
pub(crate) fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    debug_assert!(a.is_finite() && b.is_finite() && c.is_finite());
    let detleft = (a.x - c.x) * (b.y - c.y);
    let detright = (a.y - c.y) * (b.x - c.x);
    let det = detleft - detright;
    let (l, r) = (detleft.abs(), detright.abs());
    if !(l >= TINY && r >= TINY && l + r <= f64::MAX) {
        return slow_path(a, b, c, detleft, detright, det);
    }
    if (detleft > 0.0) != (detright > 0.0) {
        return Orientation::from_sign(det);
    }
    if det.abs() >= CCW_ERRBOUND_A * (l + r) {
        return Orientation::from_sign(det);
    }
    exact_expansion(a, b, c)
}

#[inline]
fn in_safe_band(v: f64) -> bool {
    let m = v.abs();
    m == 0.0 || (SAFE_LO..=SAFE_HI).contains(&m)
}

fn slow_path(a: Point, b: Point, c: Point, detleft: f64, detright: f64, det: f64) -> Orientation {
    let coords = [a.x, a.y, b.x, b.y, c.x, c.y];
    if !coords.iter().all(|&v| in_safe_band(v)) {
        return rational(a, b, c);
    }
    // Inside the band a zero product means a zero factor, and a nonzero
    // product is normal, so its rounded sign is exact.
    if detleft == 0.0 || detright == 0.0 {
        return Orientation::from_sign(det);
    }
    exact_expansion(a, b, c)
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bv = s - a;
    let av = s - bv;
    (s, (a - av) + (b - bv))
}

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn grow_expansion(e: &mut Vec<f64>, b: f64) {
    let mut q = b;
    let mut out = Vec::with_capacity(e.len() + 1);
    for &x in e.iter() {
        let (s, h) = two_sum(q, x);
        q = s;
        if h != 0.0 {
            out.push(h);
        }
    }
    if q != 0.0 {
        out.push(q);
    }
    *e = out;
}

fn exact_expansion(a: Point, b: Point, c: Point) -> Orientation {
    // ax*by - ay*bx + bx*cy - by*cx + cx*ay - cy*ax
    let terms = [
        two_product(a.x, b.y),
        two_product(-a.y, b.x),
        two_product(b.x, c.y),
        two_product(-b.y, c.x),
        two_product(c.x, a.y),
        two_product(-c.y, a.x),
    ];
    let mut e = Vec::with_capacity(12);
    for (hi, lo) in terms {
        grow_expansion(&mut e, lo);
        grow_expansion(&mut e, hi);
    }
    match e.last() {
        Some(&top) => Orientation::from_sign(top),
        None => Orientation::Collinear,
    }
}

fn rational(a: Point, b: Point, c: Point) -> Orientation {
    let q = |v: f64| BigRational::from_float(v).expect("finite coordinate");
    let (ax, ay, bx, by, cx, cy) = (q(a.x), q(a.y), q(b.x), q(b.y), q(c.x), q(c.y));
    let det = (&bx - &ax) * (&cy - &ay) - (&by - &ay) * (&cx - &ax);
    if det.is_zero() {
        Orientation::Collinear
    } else if det.is_positive() {
        Orientation::Left
    } else {
        Orientation::Right
    }
}

/// Total order on directions around `center`, starting at the positive x
/// axis and sweeping counterclockwise. Points on the same ray compare equal.
#[inline]
pub(crate) fn angular_cmp(center: Point, p: Point, q: Point) -> Ordering {
    let hp = half_of(center, p);
    let hq = half_of(center, q);
    if hp != hq {
        return hp.cmp(&hq);
    }
    match orientation(center, p, q) {
        Orientation::Left => Ordering::Less,
        Orientation::Right => Ordering::Greater,
        Orientation::Collinear => Ordering::Equal,
    }
}

/// 0 for directions in [0, pi), 1 for [pi, 2 pi). Exact.
#[inline]
pub(crate) fn half_of(center: Point, p: Point) -> u8 {
    if p.y > center.y || (p.y == center.y && p.x > center.x) {
        0
    } else {
        1
    }
}
