//! Explicit planar domains (rectangles, right isosceles triangles, scaled
//! copies and disjoint unions), their geometric invariants, and the two
//! corner functionals `V(P)` and `c(gamma)` that drive the small-time
//! expansions of the heat trace and the heat content.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad;

/// Boundary condition carried by a single straight edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryCondition {
    #[serde(rename = "D")]
    Dirichlet,
    #[serde(rename = "N")]
    Neumann,
}

impl BoundaryCondition {
    pub fn is_dirichlet(self) -> bool {
        self == BoundaryCondition::Dirichlet
    }
}

pub use BoundaryCondition::{Dirichlet, Neumann};

/// An explicit planar region.
///
/// Edge order is fixed per variant so boundary-condition patterns are
/// unambiguous in files and on the command line:
///
/// * `Rectangle` with side lengths `a` (horizontal) and `b` (vertical):
///   edges `[bottom, right, top, left]`.
/// * `RightIsoTriangle` with vertices `(0,0)`, `(leg,0)`, `(leg,leg)`:
///   edges `[horizontal leg, vertical leg, hypotenuse]`.
///
/// A `Union` stores no geometric placement; its parts are treated as
/// pairwise disjoint and only spectral additivity is ever used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Domain {
    Rectangle {
        a: f64,
        b: f64,
        bc: [BoundaryCondition; 4],
    },
    #[serde(rename = "triangle")]
    RightIsoTriangle {
        leg: f64,
        bc: [BoundaryCondition; 3],
    },
    Scaled {
        alpha: f64,
        inner: Box<Domain>,
    },
    Union {
        parts: Vec<Domain>,
    },
}

impl Domain {
    pub fn rectangle(a: f64, b: f64, bc: [BoundaryCondition; 4]) -> Result<Domain> {
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidDomain(format!(
                "rectangle sides must be positive, got {a} x {b}"
            )));
        }
        Ok(Domain::Rectangle { a, b, bc })
    }

    pub fn triangle(leg: f64, bc: [BoundaryCondition; 3]) -> Result<Domain> {
        if !(leg > 0.0) || !leg.is_finite() {
            return Err(Error::InvalidDomain(format!(
                "triangle leg must be positive, got {leg}"
            )));
        }
        Ok(Domain::RightIsoTriangle { leg, bc })
    }

    pub fn scaled(inner: Domain, alpha: f64) -> Result<Domain> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidRatio { alpha });
        }
        Ok(Domain::Scaled {
            alpha,
            inner: Box::new(inner),
        })
    }

    pub fn union(parts: Vec<Domain>) -> Result<Domain> {
        if parts.is_empty() {
            return Err(Error::InvalidDomain("union must be nonempty".into()));
        }
        Ok(Domain::Union { parts })
    }

    /// Convenience: all-Dirichlet rectangle.
    pub fn rect_d(a: f64, b: f64) -> Domain {
        Domain::rectangle(a, b, [Dirichlet; 4]).expect("positive sides")
    }

    /// Convenience: all-Dirichlet right isosceles triangle.
    pub fn tri_d(leg: f64) -> Domain {
        Domain::triangle(leg, [Dirichlet; 3]).expect("positive leg")
    }

    /// Re-validate a value that was built directly or deserialized.
    pub fn validate(&self) -> Result<()> {
        match self {
            Domain::Rectangle { a, b, .. } => {
                if !(*a > 0.0 && *b > 0.0) || !a.is_finite() || !b.is_finite() {
                    return Err(Error::InvalidDomain(format!(
                        "rectangle sides must be positive, got {a} x {b}"
                    )));
                }
            }
            Domain::RightIsoTriangle { leg, .. } => {
                if !(*leg > 0.0) || !leg.is_finite() {
                    return Err(Error::InvalidDomain(format!(
                        "triangle leg must be positive, got {leg}"
                    )));
                }
            }
            Domain::Scaled { alpha, inner } => {
                if !(*alpha > 0.0) || !alpha.is_finite() {
                    return Err(Error::InvalidRatio { alpha: *alpha });
                }
                inner.validate()?;
            }
            Domain::Union { parts } => {
                if parts.is_empty() {
                    return Err(Error::InvalidDomain("union must be nonempty".into()));
                }
                for p in parts {
                    p.validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Domain> {
        let d: Domain =
            serde_json::from_str(s).map_err(|e| Error::InvalidDomain(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("domain serializes")
    }
}

/// One polygon corner: opening angle plus the boundary conditions of the two
/// adjacent edges in traversal order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corner {
    /// Inward-pointing opening angle in radians, restricted to (0, pi].
    pub angle: f64,
    pub left_bc: BoundaryCondition,
    pub right_bc: BoundaryCondition,
}

impl Corner {
    pub fn is_dirichlet(&self) -> bool {
        self.left_bc.is_dirichlet() && self.right_bc.is_dirichlet()
    }

    /// Exactly one adjacent edge is Neumann.
    pub fn is_mixed(&self) -> bool {
        self.left_bc.is_dirichlet() != self.right_bc.is_dirichlet()
    }
}

/// Aggregate geometric data of a domain: area, perimeter, total length of
/// Dirichlet edges and the corner list. Additive over disjoint unions.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonInvariants {
    pub area: f64,
    pub boundary_length: f64,
    pub dirichlet_length: f64,
    pub corners: Vec<Corner>,
}

/// Geometric invariants of `d`. Area and lengths are additive over unions;
/// a `Scaled` wrapper multiplies the area by `alpha^2`, the lengths by
/// `alpha`, and leaves angles and boundary conditions unchanged.
pub fn polygon_invariants(d: &Domain) -> PolygonInvariants {
    let mut inv = PolygonInvariants {
        area: 0.0,
        boundary_length: 0.0,
        dirichlet_length: 0.0,
        corners: Vec::new(),
    };
    accumulate(d, 1.0, &mut inv);
    inv
}

fn accumulate(d: &Domain, scale: f64, inv: &mut PolygonInvariants) {
    match d {
        Domain::Rectangle { a, b, bc } => {
            let (a, b) = (a * scale, b * scale);
            inv.area += a * b;
            inv.boundary_length += 2.0 * (a + b);
            let lengths = [a, b, a, b];
            for (len, c) in lengths.iter().zip(bc.iter()) {
                if c.is_dirichlet() {
                    inv.dirichlet_length += len;
                }
            }
            // Corner i sits between edge i and edge i+1 (mod 4).
            for i in 0..4 {
                inv.corners.push(Corner {
                    angle: PI / 2.0,
                    left_bc: bc[i],
                    right_bc: bc[(i + 1) % 4],
                });
            }
        }
        Domain::RightIsoTriangle { leg, bc } => {
            let c = leg * scale;
            inv.area += 0.5 * c * c;
            let hyp = c * std::f64::consts::SQRT_2;
            inv.boundary_length += 2.0 * c + hyp;
            let lengths = [c, c, hyp];
            for (len, b) in lengths.iter().zip(bc.iter()) {
                if b.is_dirichlet() {
                    inv.dirichlet_length += len;
                }
            }
            // Right angle between the legs, pi/4 at each end of the hypotenuse.
            let angles = [PI / 2.0, PI / 4.0, PI / 4.0];
            for i in 0..3 {
                inv.corners.push(Corner {
                    angle: angles[i],
                    left_bc: bc[i],
                    right_bc: bc[(i + 1) % 3],
                });
            }
        }
        Domain::Scaled { alpha, inner } => accumulate(inner, scale * alpha, inv),
        Domain::Union { parts } => {
            for p in parts {
                accumulate(p, scale, inv);
            }
        }
    }
}

/// The vertex term `V(P) = sum_i (pi^2 - gamma_i^2) / (24 pi gamma_i)` of the
/// polygon heat-trace expansion. Stated for all-Dirichlet polygons only.
pub fn vertex_term(p: &PolygonInvariants) -> Result<f64> {
    for c in &p.corners {
        if !c.is_dirichlet() {
            return Err(Error::UnsupportedConfiguration(
                "vertex term requires Dirichlet conditions on both sides of every corner".into(),
            ));
        }
    }
    Ok(p.corners
        .iter()
        .map(|c| (PI * PI - c.angle * c.angle) / (24.0 * PI * c.angle))
        .sum())
}

/// Tail of the corner integrand beyond `x`: the integrand is bounded by
/// `8 e^{-2 gamma x} / (1 - e^{-2 pi})` for `x >= 1`, so the tail integral is
/// at most `TAIL_CONST * e^{-2 gamma x} / (2 gamma)`.
fn corner_tail_bound(gamma: f64, x: f64) -> f64 {
    let tail_const = 8.0 / (1.0 - (-2.0 * PI).exp());
    tail_const * (-2.0 * gamma * x).exp() / (2.0 * gamma)
}

/// The corner coefficient
/// `c(gamma) = \int_0^inf 4 sinh((pi - gamma) x) / (sinh(pi x) cosh(gamma x)) dx`
/// computed to absolute error at most `tol`.
///
/// The removable singularity at 0 is evaluated as the limit
/// `4 (pi - gamma) / pi`; the integral is truncated at a point where the
/// analytic tail bound fits into half of the error budget, and the finite
/// part is handled by adaptive Gauss-Kronrod quadrature.
pub fn corner_coefficient(gamma: f64, tol: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= PI) || !gamma.is_finite() {
        return Err(Error::InvalidAngle { gamma });
    }
    if !(tol > 0.0) {
        return Err(Error::ToleranceNotMet(format!(
            "corner coefficient tolerance must be positive, got {tol}"
        )));
    }
    if gamma == PI {
        // sinh((pi - gamma) x) vanishes identically.
        return Ok(0.0);
    }
    let integrand = |x: f64| {
        if x == 0.0 {
            4.0 * (PI - gamma) / PI
        } else {
            // For moderately large x evaluate via exponentials to avoid
            // overflow of the individual hyperbolic factors.
            if x * (PI + gamma) > 300.0 {
                // sinh(ax)/(sinh(pi x) cosh(g x)) ~ 2 e^{(a - pi - g) x}
                8.0 * (-2.0 * gamma * x).exp()
            } else {
                4.0 * ((PI - gamma) * x).sinh() / ((PI * x).sinh() * (gamma * x).cosh())
            }
        }
    };
    // Truncation point: analytic tail bound <= tol/2.
    let tail_const = 8.0 / (1.0 - (-2.0 * PI).exp());
    let x_cut = (1.0f64).max((tail_const / (gamma * tol)).ln() / (2.0 * gamma));
    let tail = corner_tail_bound(gamma, x_cut);
    let q = quad::integrate(integrand, 0.0, x_cut, 0.4 * tol);
    if q.error + tail > tol {
        return Err(Error::ToleranceNotMet(format!(
            "corner coefficient quadrature achieved {:.3e} (requested {tol:.3e})",
            q.error + tail
        )));
    }
    Ok(q.value)
}

/// Rescale a domain by `alpha`, pushing the factor into the primitive
/// dimensions (a scaled rectangle becomes a rectangle). Eigenvalues of the
/// result are those of `d` divided by `alpha^2`.
pub fn scale(d: &Domain, alpha: f64) -> Result<Domain> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidRatio { alpha });
    }
    Ok(scale_unchecked(d, alpha))
}

fn scale_unchecked(d: &Domain, alpha: f64) -> Domain {
    match d {
        Domain::Rectangle { a, b, bc } => Domain::Rectangle {
            a: a * alpha,
            b: b * alpha,
            bc: *bc,
        },
        Domain::RightIsoTriangle { leg, bc } => Domain::RightIsoTriangle {
            leg: leg * alpha,
            bc: *bc,
        },
        Domain::Scaled { alpha: a0, inner } => scale_unchecked(inner, alpha * a0),
        Domain::Union { parts } => Domain::Union {
            parts: parts.iter().map(|p| scale_unchecked(p, alpha)).collect(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn rectangle_invariants() {
        let d = Domain::rect_d(1.0, 2.0);
        let inv = polygon_invariants(&d);
        assert_eq!(inv.area, 2.0);
        assert_eq!(inv.boundary_length, 6.0);
        assert_eq!(inv.dirichlet_length, 6.0);
        assert_eq!(inv.corners.len(), 4);
        assert!(inv.corners.iter().all(|c| c.angle == PI / 2.0));
    }

    #[test]
    fn triangle_invariants() {
        let d = Domain::tri_d(2.0);
        let inv = polygon_invariants(&d);
        assert!((inv.area - 2.0).abs() < 1e-15);
        assert!((inv.boundary_length - (4.0 + 2.0 * SQRT_2)).abs() < 1e-14);
        let mut angles: Vec<f64> = inv.corners.iter().map(|c| c.angle).collect();
        angles.sort_by(f64::total_cmp);
        assert_eq!(angles, vec![PI / 4.0, PI / 4.0, PI / 2.0]);
    }

    #[test]
    fn dirichlet_length_of_the_two_piece_bands() {
        // Triangle with leg 2 (all Dirichlet) plus triangle with leg 1 and a
        // Neumann hypotenuse: Dirichlet length 6 + 2 sqrt(2).
        let a_minus_e = Domain::union(vec![
            Domain::tri_d(2.0),
            Domain::triangle(1.0, [Dirichlet, Dirichlet, Neumann]).unwrap(),
        ])
        .unwrap();
        let inv = polygon_invariants(&a_minus_e);
        assert!((inv.dirichlet_length - (6.0 + 2.0 * SQRT_2)).abs() < 1e-12);

        // Rectangle 1 x 2 (all Dirichlet) plus triangle with leg 1 and a
        // Neumann leg: Dirichlet length 7 + sqrt(2).
        let b_minus_f = Domain::union(vec![
            Domain::rect_d(1.0, 2.0),
            Domain::triangle(1.0, [Dirichlet, Neumann, Dirichlet]).unwrap(),
        ])
        .unwrap();
        let inv = polygon_invariants(&b_minus_f);
        assert!((inv.dirichlet_length - (7.0 + SQRT_2)).abs() < 1e-12);
    }

    #[test]
    fn union_invariants_are_additive() {
        let parts = vec![
            Domain::rect_d(1.0, 2.0),
            Domain::tri_d(1.5),
            Domain::scaled(Domain::rect_d(2.0, 3.0), 0.5).unwrap(),
        ];
        let whole = Domain::union(parts.clone()).unwrap();
        let inv = polygon_invariants(&whole);
        let sum_area: f64 = parts.iter().map(|p| polygon_invariants(p).area).sum();
        let sum_dir: f64 = parts
            .iter()
            .map(|p| polygon_invariants(p).dirichlet_length)
            .sum();
        assert!((inv.area - sum_area).abs() < 1e-14);
        assert!((inv.dirichlet_length - sum_dir).abs() < 1e-14);
    }

    #[test]
    fn scaled_invariants() {
        let d = Domain::rect_d(1.0, 2.0);
        let s = scale(&d, 1.0 / SQRT_2).unwrap();
        match &s {
            Domain::Rectangle { a, b, .. } => {
                assert!((a - 1.0 / SQRT_2).abs() < 1e-15);
                assert!((b - SQRT_2).abs() < 1e-15);
            }
            _ => panic!("scale should push into the rectangle"),
        }
        let inv = polygon_invariants(&s);
        assert!((inv.area - 1.0).abs() < 1e-14);
        let base = polygon_invariants(&d);
        let alpha = 0.37;
        let sc = scale(&d, alpha).unwrap();
        let si = polygon_invariants(&sc);
        assert!((si.boundary_length - alpha * base.boundary_length).abs() < 1e-12);
        assert_eq!(
            si.corners.iter().map(|c| c.angle).collect::<Vec<_>>(),
            base.corners.iter().map(|c| c.angle).collect::<Vec<_>>()
        );
    }

    #[test]
    fn vertex_term_values() {
        let rect = polygon_invariants(&Domain::rect_d(1.0, 2.0));
        assert!((vertex_term(&rect).unwrap() - 0.25).abs() < 1e-15);
        let square = polygon_invariants(&Domain::rect_d(1.0, 1.0));
        assert!((vertex_term(&square).unwrap() - 0.25).abs() < 1e-15);
        // Corner sum for the right isosceles triangle: 1/16 + 2 * 5/32 = 3/8.
        let tri = polygon_invariants(&Domain::tri_d(7.3));
        assert!((vertex_term(&tri).unwrap() - 0.375).abs() < 1e-14);
    }

    #[test]
    fn vertex_term_rejects_neumann_corners() {
        let d = Domain::triangle(1.0, [Dirichlet, Neumann, Dirichlet]).unwrap();
        let inv = polygon_invariants(&d);
        assert!(matches!(
            vertex_term(&inv),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn corner_coefficient_right_angle() {
        let v = corner_coefficient(PI / 2.0, 1e-12).unwrap();
        assert!((v - 4.0 / PI).abs() < 1e-11, "c(pi/2) = {v}");
    }

    #[test]
    fn corner_coefficient_flat_angle_vanishes() {
        assert_eq!(corner_coefficient(PI, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn corner_coefficient_quarter_angle() {
        // Frozen from an independent high-precision oracle; numerically this
        // equals 2 + 4/pi.
        let v = corner_coefficient(PI / 4.0, 1e-12).unwrap();
        assert!((v - 3.273_239_544_735_162_7).abs() < 1e-10, "c(pi/4) = {v}");
    }

    #[test]
    fn corner_coefficient_is_monotone_decreasing() {
        let mut prev = f64::INFINITY;
        for k in 1..=20 {
            let gamma = PI * k as f64 / 20.0;
            let v = corner_coefficient(gamma, 1e-11).unwrap();
            assert!(v < prev, "c not decreasing at gamma={gamma}");
            prev = v;
        }
        assert!(prev.abs() < 1e-11); // c(pi) = 0
    }

    #[test]
    fn corner_coefficient_tolerance_contract() {
        for &gamma in &[PI / 4.0, PI / 2.0, 2.9] {
            for &tol in &[1e-6, 1e-9] {
                let v1 = corner_coefficient(gamma, tol).unwrap();
                let v2 = corner_coefficient(gamma, tol / 2.0).unwrap();
                assert!(
                    (v1 - v2).abs() <= 1.5 * tol,
                    "tolerance halving moved c({gamma}) by {}",
                    (v1 - v2).abs()
                );
            }
        }
    }

    #[test]
    fn corner_coefficient_rejects_bad_angles() {
        assert!(matches!(
            corner_coefficient(0.0, 1e-9),
            Err(Error::InvalidAngle { .. })
        ));
        assert!(matches!(
            corner_coefficient(PI + 0.1, 1e-9),
            Err(Error::InvalidAngle { .. })
        ));
    }

    #[test]
    fn scale_rejects_bad_ratio() {
        assert!(matches!(
            scale(&Domain::rect_d(1.0, 1.0), 0.0),
            Err(Error::InvalidRatio { .. })
        ));
    }

    #[test]
    fn domain_json_round_trip() {
        let d = Domain::union(vec![
            Domain::rectangle(1.0, 2.0, [Dirichlet, Dirichlet, Neumann, Dirichlet]).unwrap(),
            Domain::scaled(Domain::tri_d(2.0), 1.0 / SQRT_2).unwrap(),
        ])
        .unwrap();
        let s = d.to_json();
        let back = Domain::from_json(&s).unwrap();
        assert_eq!(d, back);
        // Schema sanity for the documented shapes.
        let parsed = Domain::from_json(
            r#"{"type":"rectangle","a":1.0,"b":2.0,"bc":["D","D","D","D"]}"#,
        )
        .unwrap();
        assert_eq!(parsed, Domain::rect_d(1.0, 2.0));
        let parsed =
            Domain::from_json(r#"{"type":"triangle","leg":2.0,"bc":["D","D","N"]}"#).unwrap();
        assert_eq!(
            parsed,
            Domain::triangle(2.0, [Dirichlet, Dirichlet, Neumann]).unwrap()
        );
        assert!(Domain::from_json(r#"{"type":"rectangle","a":-1.0,"b":2.0,"bc":["D","D","D","D"]}"#).is_err());
    }
}
