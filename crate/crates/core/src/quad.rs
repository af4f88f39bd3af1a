//! Hinged planar quadrilaterals with four fixed sides.
//!
//! The quadrilateral `a x b y` is split by the diagonal `[ab]` into the
//! triangles `a x b` (sides `p = |ax|`, `q = |bx|`) and `a y b` (sides
//! `r = |ay|`, `s = |by|`). Up to congruence it is determined by the sum of
//! the two opposite angles `alpha = ∠axb + ∠ayb`, which is a strictly
//! increasing function of the diagonal length. The area `A(alpha)` rises
//! until `alpha = π` (the cyclic position) and falls after it.

use nalgebra::Vector2;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuadError {
    #[error("side lengths ({p}, {q}, {r}, {s}) admit no nondegenerate hinge")]
    InvalidSpec { p: f64, q: f64, r: f64, s: f64 },
    #[error("alpha = {alpha} lies outside [{min}, {max}]")]
    AlphaOutOfRange { alpha: f64, min: f64, max: f64 },
}

/// Four side lengths of `a x b y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
}

/// One member of the hinge family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HingeState {
    pub spec: QuadSpec,
    /// Equal to `angle_x + angle_y`, the sum evaluated at `diagonal`.
    pub alpha: f64,
    pub diagonal: f64,
    pub angle_x: f64,
    pub angle_y: f64,
}

/// Planar realization with `a` at the origin and `b` on the positive x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarQuad {
    pub a: Vector2<f64>,
    pub x: Vector2<f64>,
    pub b: Vector2<f64>,
    pub y: Vector2<f64>,
}

impl PlanarQuad {
    /// Shoelace area of the polygon `a x b y`.
    pub fn shoelace_area(&self) -> f64 {
        let pts = [self.a, self.x, self.b, self.y];
        let twice: f64 = (0..4)
            .map(|i| {
                let (u, v) = (pts[i], pts[(i + 1) % 4]);
                u.x * v.y - v.x * u.y
            })
            .sum();
        0.5 * twice.abs()
    }
}

/// Angle opposite the side of length `opposite` in a triangle with the two
/// other sides `u`, `v`.
fn law_of_cosines(u: f64, v: f64, opposite: f64) -> f64 {
    ((u * u + v * v - opposite * opposite) / (2.0 * u * v))
        .clamp(-1.0, 1.0)
        .acos()
}

impl QuadSpec {
    pub fn new(p: f64, q: f64, r: f64, s: f64) -> Result<Self, QuadError> {
        let spec = QuadSpec { p, q, r, s };
        let valid = [p, q, r, s].iter().all(|l| l.is_finite() && *l > 0.0)
            && spec.d_min() < spec.d_max();
        if valid {
            Ok(spec)
        } else {
            Err(QuadError::InvalidSpec { p, q, r, s })
        }
    }

    pub fn d_min(&self) -> f64 {
        (self.p - self.q).abs().max((self.r - self.s).abs())
    }

    pub fn d_max(&self) -> f64 {
        (self.p + self.q).min(self.r + self.s)
    }

    /// `(∠axb, ∠ayb)` for diagonal length `d`.
    pub fn hinge_angles(&self, d: f64) -> (f64, f64) {
        (
            law_of_cosines(self.p, self.q, d),
            law_of_cosines(self.r, self.s, d),
        )
    }

    /// The angle sum as a function of the diagonal.
    pub fn alpha_of_diagonal(&self, d: f64) -> f64 {
        let (ax, ay) = self.hinge_angles(d);
        ax + ay
    }

    pub fn alpha_range(&self) -> (f64, f64) {
        (
            self.alpha_of_diagonal(self.d_min()),
            self.alpha_of_diagonal(self.d_max()),
        )
    }

    fn check_alpha(&self, alpha: f64) -> Result<(), QuadError> {
        let (min, max) = self.alpha_range();
        let slack = 1e-12 * (1.0 + max);
        if alpha.is_finite() && alpha >= min - slack && alpha <= max + slack {
            Ok(())
        } else {
            Err(QuadError::AlphaOutOfRange { alpha, min, max })
        }
    }

    /// Inverts the angle sum by bisection.
    ///
    /// Near an end of the range one triangle degenerates and the angle sum
    /// has unbounded slope in the diagonal, so the search runs over the
    /// corner angle of that triangle instead, which keeps full precision.
    pub fn diagonal_from_alpha(&self, alpha: f64) -> Result<HingeState, QuadError> {
        self.check_alpha(alpha)?;
        let QuadSpec { p, q, r, s } = *self;
        let (min, max) = self.alpha_range();
        let drive_x = if alpha >= 0.5 * (min + max) {
            p + q <= r + s
        } else {
            (p - q).abs() >= (r - s).abs()
        };
        let ((u, v), (w, z)) = if drive_x { ((p, q), (r, s)) } else { ((r, s), (p, q)) };
        // driving angle t, the other one from the shared diagonal
        let split = |t: f64| {
            let d2 = (u * u + v * v - 2.0 * u * v * t.cos()).max(0.0);
            let other = ((w * w + z * z - d2) / (2.0 * w * z)).clamp(-1.0, 1.0).acos();
            (d2.sqrt(), other)
        };
        let (mut lo, mut hi) = (
            law_of_cosines(u, v, self.d_min()),
            law_of_cosines(u, v, self.d_max()),
        );
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if mid + split(mid).1 < alpha {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        let (diagonal, other) = split(t);
        let (angle_x, angle_y) = if drive_x { (t, other) } else { (other, t) };
        Ok(HingeState {
            spec: *self,
            alpha: angle_x + angle_y,
            diagonal,
            angle_x,
            angle_y,
        })
    }

    pub fn state_at_diagonal(&self, d: f64) -> HingeState {
        let (angle_x, angle_y) = self.hinge_angles(d);
        HingeState {
            spec: *self,
            alpha: angle_x + angle_y,
            diagonal: d,
            angle_x,
            angle_y,
        }
    }

    /// `A(alpha)`.
    pub fn area_of_alpha(&self, alpha: f64) -> Result<f64, QuadError> {
        Ok(self.diagonal_from_alpha(alpha)?.area())
    }

    /// Central finite difference of `A` with step `1e-6` of the alpha range,
    /// shortened on one side near the ends of the range.
    pub fn d_area_d_alpha(&self, alpha: f64) -> Result<f64, QuadError> {
        let (min, max) = self.alpha_range();
        if !(alpha > min && alpha < max) {
            return Err(QuadError::AlphaOutOfRange { alpha, min, max });
        }
        let h = 1e-6 * (max - min);
        let lo = (alpha - h).max(min);
        let hi = (alpha + h).min(max);
        Ok((self.area_of_alpha(hi)? - self.area_of_alpha(lo)?) / (hi - lo))
    }

    pub fn swapped(&self) -> QuadSpec {
        QuadSpec {
            p: self.r,
            q: self.s,
            r: self.p,
            s: self.q,
        }
    }
}

impl HingeState {
    pub fn area(&self) -> f64 {
        let QuadSpec { p, q, r, s } = self.spec;
        0.5 * p * q * self.angle_x.sin() + 0.5 * r * s * self.angle_y.sin()
    }

    /// Lays the quadrilateral out in the plane with `x` above and `y` below
    /// the diagonal, so that `[ab]` divides it.
    pub fn embed_planar(&self) -> PlanarQuad {
        let QuadSpec { p, q, r, s } = self.spec;
        let d = self.diagonal;
        let apex = |u: f64, v: f64, sign: f64| {
            if d == 0.0 {
                return Vector2::new(0.0, sign * u);
            }
            let t = (u * u - v * v + d * d) / (2.0 * d);
            Vector2::new(t, sign * (u * u - t * t).max(0.0).sqrt())
        };
        PlanarQuad {
            a: Vector2::zeros(),
            x: apex(p, q, 1.0),
            b: Vector2::new(d, 0.0),
            y: apex(r, s, -1.0),
        }
    }
}
