//! Heat trace `Z(t)` and heat content `Q(t)` with certified truncation
//! bounds, the polygon small-time asymptotics, least-squares extraction of
//! the small-time coefficients, and the large-time leading term.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{
    corner_coefficient, polygon_invariants, vertex_term, Domain, PolygonInvariants,
};
use crate::spectra::{self, AxisFamily, Component, Mode};

/// A series evaluation together with a certified truncation bound: the
/// reported value differs from the exact series by at most `tail_bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatValue {
    pub value: f64,
    pub tail_bound: f64,
    pub t: f64,
    pub modes_used: usize,
}

/// Small-time heat content coefficients `Q(t) ~ b0 + b1 sqrt(t) + b2 t`.
/// `b2` is `None` when the corner configuration is not covered by the
/// Dirichlet formula or the halving rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoeffs {
    pub b0: f64,
    pub b1: f64,
    pub b2: Option<f64>,
}

/// Leading large-time behaviour `Q(t) = amplitude e^{-lambda1 t} + O(e^{-lambda2 t})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeTimeLeading {
    pub lambda1: f64,
    pub amplitude: f64,
    pub lambda2: f64,
}

/// Result of a least-squares fit of `Q(t)` against `{1, sqrt t, t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallTimeFit {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    /// Largest absolute deviation of the samples from the fitted model.
    pub max_residual: f64,
}

/// Value with a certified absolute error bound.
#[derive(Debug, Clone, Copy)]
struct Cert {
    val: f64,
    err: f64,
}

impl Cert {
    const ZERO: Cert = Cert { val: 0.0, err: 0.0 };

    fn add(self, o: Cert) -> Cert {
        Cert {
            val: self.val + o.val,
            err: self.err + o.err,
        }
    }

    fn sub(self, o: Cert) -> Cert {
        Cert {
            val: self.val - o.val,
            err: self.err + o.err,
        }
    }

    fn mul(self, o: Cert) -> Cert {
        Cert {
            val: self.val * o.val,
            err: self.err * o.val.abs() + o.err * self.val.abs() + self.err * o.err,
        }
    }

    fn scale(self, c: f64) -> Cert {
        Cert {
            val: self.val * c,
            err: self.err * c.abs(),
        }
    }
}

/// Kahan compensated accumulator for long sums of small positive terms.
#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// 1-D theta sum for one axis family on an interval of length `len`: the sum
/// of `e^{-t mu_k}` over the family frequencies, with a Gaussian-integral
/// tail bound folded into the certificate.
fn theta_sum(family: AxisFamily, len: f64, t: f64, eps: f64) -> (Cert, usize) {
    let beta = t * PI * PI / (len * len);
    let (shift, constant) = match family {
        AxisFamily::DD => (0.0, 0.0),
        AxisFamily::DN | AxisFamily::ND => (0.5, 0.0),
        // k = 0 contributes 1; the k >= 1 frequencies match the DD family.
        AxisFamily::NN => (0.0, 1.0),
    };
    let mut acc = Kahan::default();
    let mut k = 1usize;
    loop {
        let f = k as f64 - shift;
        acc.add((-beta * f * f).exp());
        // Tail after k terms: monotone comparison with the Gaussian integral
        // from the last summed frequency.
        let edge = k as f64 - shift;
        let tail = (-beta * edge * edge).exp() / (2.0 * beta * edge);
        if tail <= eps || k > 20_000_000 {
            return (
                Cert {
                    val: acc.sum + constant,
                    err: tail,
                },
                k,
            );
        }
        k += 1;
    }
}

fn component_trace(comp: &Component, t: f64, eps: f64) -> Result<(Cert, usize)> {
    // Build with a trial budget and tighten until the certificate fits.
    let mut inner = eps / 8.0;
    for _ in 0..6 {
        let (cert, terms) = component_trace_once(comp, t, inner)?;
        if cert.err <= eps {
            return Ok((cert, terms));
        }
        inner /= 16.0;
    }
    Err(Error::ToleranceNotMet(format!(
        "heat trace budget {eps:.3e} unreachable at t = {t}"
    )))
}

fn component_trace_once(comp: &Component, t: f64, eps: f64) -> Result<(Cert, usize)> {
    match comp {
        Component::Rect { a, b, bc } => {
            let fx = AxisFamily::from_bc(bc[3], bc[1]);
            let fy = AxisFamily::from_bc(bc[0], bc[2]);
            let (sx, nx) = theta_sum(fx, *a, t, eps);
            let (sy, ny) = theta_sum(fy, *b, t, eps);
            Ok((sx.mul(sy), nx + ny))
        }
        Component::Tri { leg, bc } => match spectra::tri_family(*bc)? {
            spectra::TriFamily::AllD => {
                // Z = (S_c(t)^2 - S_c(2t)) / 2.
                let (s1, n1) = theta_sum(AxisFamily::DD, *leg, t, eps);
                let (s2, n2) = theta_sum(AxisFamily::DD, *leg, 2.0 * t, eps);
                Ok((s1.mul(s1).sub(s2).scale(0.5), n1 + n2))
            }
            spectra::TriFamily::NeumannHyp => {
                let (s1, n1) = theta_sum(AxisFamily::DD, *leg, t, eps);
                let (s2, n2) = theta_sum(AxisFamily::DD, *leg, 2.0 * t, eps);
                Ok((s1.mul(s1).add(s2).scale(0.5), n1 + n2))
            }
            spectra::TriFamily::NeumannLeg => {
                // Double of leg c sqrt 2 filtered to i + j odd:
                // Z = S_even S_odd = S_{L/2}(t) (S_L(t) - S_{L/2}(t)).
                let big = leg * std::f64::consts::SQRT_2;
                let (sl, n1) = theta_sum(AxisFamily::DD, big, t, eps);
                let (sh, n2) = theta_sum(AxisFamily::DD, big / 2.0, t, eps);
                Ok((sh.mul(sl.sub(sh)), n1 + n2))
            }
        },
    }
}

/// Heat trace `Z(t) = sum_j e^{-t lambda_j}` with certified truncation.
pub fn heat_trace(d: &Domain, t: f64, eps: f64) -> Result<HeatValue> {
    if !(t > 0.0) {
        return Err(Error::NonpositiveTime { t });
    }
    if !(eps > 0.0) {
        return Err(Error::ToleranceNotMet("eps must be positive".into()));
    }
    let comps = spectra::flatten(d);
    let per = eps / comps.len() as f64;
    let mut total = Cert::ZERO;
    let mut terms = 0usize;
    for comp in &comps {
        let (c, n) = component_trace(comp, t, per)?;
        total = total.add(c);
        terms += n;
    }
    Ok(HeatValue {
        value: total.val,
        tail_bound: total.err,
        t,
        modes_used: terms,
    })
}

/// Heat content `Q(t) = sum_j e^{-t lambda_j} (int phi_j)^2` with the Bessel
/// tail bound `e^{-t cutoff} area <= eps`.
pub fn heat_content(d: &Domain, t: f64, eps: f64) -> Result<HeatValue> {
    if !(t > 0.0) {
        return Err(Error::NonpositiveTime { t });
    }
    if !(eps > 0.0) {
        return Err(Error::ToleranceNotMet("eps must be positive".into()));
    }
    let area = polygon_invariants(d).area;
    let cutoff = (area / eps).ln().max(0.0) / t;
    let mut acc = Kahan::default();
    let mut used = 0usize;
    spectra::for_each_mode(d, cutoff, &mut |m: Mode| {
        acc.add((-t * m.lambda).exp() * m.coeff_sq);
        used += 1;
    })?;
    Ok(HeatValue {
        value: acc.sum,
        tail_bound: (-t * cutoff).exp() * area,
        t,
        modes_used: used,
    })
}

/// Polygon heat-trace asymptotics `|P|/(4 pi t) - |dP|/(8 sqrt(pi t)) + V(P)`
/// (all-Dirichlet polygons only).
pub fn trace_asymptotic(p: &PolygonInvariants, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::NonpositiveTime { t });
    }
    let v = vertex_term(p)?;
    Ok(p.area / (4.0 * PI * t) - p.boundary_length / (8.0 * (PI * t).sqrt()) + v)
}

/// Small-time heat content coefficients of `d`.
///
/// `b0` is the area and `b1 = -2 pi^{-1/2} (Dirichlet length)`. The `t`
/// coefficient sums, per component, `c(gamma)` over Dirichlet-Dirichlet
/// corners plus `c(2 gamma)/2` for corners with exactly one Neumann side
/// (such a corner unfolds across the Neumann edge of the symmetric double).
/// Components with Neumann-Neumann corners, or mixed corners opening past
/// `pi/2`, leave `b2` unavailable.
pub fn content_coeffs(d: &Domain) -> Result<AsymptoticCoeffs> {
    let inv = polygon_invariants(d);
    let mut b2 = Some(0.0f64);
    for comp in spectra::flatten(d) {
        let comp_domain = match comp {
            Component::Rect { a, b, bc } => Domain::Rectangle { a, b, bc },
            Component::Tri { leg, bc } => {
                spectra::tri_family(bc)?;
                Domain::RightIsoTriangle { leg, bc }
            }
        };
        let cinv = polygon_invariants(&comp_domain);
        for corner in &cinv.corners {
            let add = if corner.is_dirichlet() {
                Some(corner_coefficient(corner.angle, 1e-12)?)
            } else if corner.is_mixed() && 2.0 * corner.angle <= PI + 1e-12 {
                Some(0.5 * corner_coefficient((2.0 * corner.angle).min(PI), 1e-12)?)
            } else {
                None
            };
            b2 = match (b2, add) {
                (Some(acc), Some(x)) => Some(acc + x),
                _ => None,
            };
        }
    }
    Ok(AsymptoticCoeffs {
        b0: inv.area,
        b1: -2.0 / PI.sqrt() * inv.dirichlet_length,
        b2,
    })
}

/// Evaluate the small-time model `b0 + b1 sqrt(t) + b2 t` of `d` at `t >= 0`.
pub fn content_asymptotic(d: &Domain, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::NonpositiveTime { t });
    }
    let c = content_coeffs(d)?;
    let b2 = c.b2.ok_or_else(|| {
        Error::UnsupportedConfiguration(
            "t-coefficient unavailable: corner configuration outside the Dirichlet \
             formula and the halving rule"
                .into(),
        )
    })?;
    Ok(c.b0 + c.b1 * t.sqrt() + b2 * t)
}

/// Least-squares fit of `(t, Q)` samples against `{1, sqrt t, t}`.
pub fn fit_heat_samples(samples: &[(f64, f64)]) -> Result<SmallTimeFit> {
    if samples.len() < 4 {
        return Err(Error::IllConditionedFit(format!(
            "need at least 4 samples, got {}",
            samples.len()
        )));
    }
    let basis = |t: f64| [1.0, t.sqrt(), t];
    // Normal equations with column scaling.
    let mut scale = [0.0f64; 3];
    for &(t, _) in samples {
        let row = basis(t);
        for i in 0..3 {
            scale[i] += row[i] * row[i];
        }
    }
    for s in &mut scale {
        *s = s.sqrt();
        if *s == 0.0 {
            return Err(Error::IllConditionedFit("degenerate basis column".into()));
        }
    }
    let mut ata = [[0.0f64; 3]; 3];
    let mut atb = [0.0f64; 3];
    for &(t, q) in samples {
        let row = basis(t);
        let r = [row[0] / scale[0], row[1] / scale[1], row[2] / scale[2]];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += r[i] * r[j];
            }
            atb[i] += r[i] * q;
        }
    }
    let sol = solve3(ata, atb)
        .ok_or_else(|| Error::IllConditionedFit("singular normal equations".into()))?;
    let b = [sol[0] / scale[0], sol[1] / scale[1], sol[2] / scale[2]];
    let mut max_residual = 0.0f64;
    for &(t, q) in samples {
        let row = basis(t);
        let fit = b[0] * row[0] + b[1] * row[1] + b[2] * row[2];
        max_residual = max_residual.max((q - fit).abs());
    }
    Ok(SmallTimeFit {
        b0: b[0],
        b1: b[1],
        b2: b[2],
        max_residual,
    })
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in (col + 1)..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 3];
    for col in (0..3).rev() {
        let mut s = b[col];
        for k in (col + 1)..3 {
            s -= a[col][k] * x[k];
        }
        x[col] = s / a[col][col];
    }
    Some(x)
}

/// Default log-spaced fit window: 16 points in [1e-4, 1e-2].
pub fn default_fit_grid() -> Vec<f64> {
    log_grid(1e-4, 1e-2, 16)
}

/// `n` log-spaced points spanning `[lo, hi]` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Fit the small-time coefficients of `Q(t)` on the given grid, evaluating
/// the series with per-point budget `eps`.
pub fn fit_small_time(d: &Domain, t_grid: &[f64], eps: f64) -> Result<SmallTimeFit> {
    if t_grid.len() < 4 {
        return Err(Error::IllConditionedFit(format!(
            "need at least 4 grid points, got {}",
            t_grid.len()
        )));
    }
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let q = heat_content(d, t, eps)?;
        samples.push((t, q.value));
    }
    fit_heat_samples(&samples)
}

/// Strict large-time leading term
/// `Q(t) = amplitude e^{-lambda1 t} + O(e^{-lambda2 t})`, requiring a simple
/// ground state.
pub fn large_time_leading(d: &Domain) -> Result<LargeTimeLeading> {
    let modes = spectra::first_modes(d, 2)?;
    let lambda1 = modes[0].lambda;
    let tol = spectra::eigenvalue_tol(lambda1);
    if (modes[1].lambda - lambda1).abs() <= tol {
        let more = spectra::first_modes(d, 16)?;
        let mult = more
            .iter()
            .take_while(|m| (m.lambda - lambda1).abs() <= tol)
            .count();
        return Err(Error::DegenerateGroundState {
            lambda1,
            multiplicity: mult.max(2),
        });
    }
    Ok(LargeTimeLeading {
        lambda1,
        amplitude: modes[0].coeff_sq,
        lambda2: modes[1].lambda,
    })
}

/// Large-time leading data with the amplitude summed over the whole
/// `lambda_1` eigenspace; `lambda2` is the next distinct eigenvalue. Unlike
/// [`large_time_leading`] this is well defined for degenerate ground states.
pub fn ground_state_amplitude(d: &Domain) -> Result<LargeTimeLeading> {
    let mut count = 8;
    loop {
        let modes = spectra::first_modes(d, count)?;
        let lambda1 = modes[0].lambda;
        let tol = spectra::eigenvalue_tol(lambda1);
        if let Some(next) = modes.iter().find(|m| (m.lambda - lambda1).abs() > tol) {
            let amplitude = modes
                .iter()
                .take_while(|m| (m.lambda - lambda1).abs() <= tol)
                .map(|m| m.coeff_sq)
                .sum();
            return Ok(LargeTimeLeading {
                lambda1,
                amplitude,
                lambda2: next.lambda,
            });
        }
        count *= 2;
        if count > 1 << 16 {
            return Err(Error::ToleranceNotMet(
                "could not find a second distinct eigenvalue".into(),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{scale, Dirichlet, Neumann};

    const SQRT_2: f64 = std::f64::consts::SQRT_2;

    fn band_a() -> Domain {
        Domain::union(vec![Domain::rect_d(1.0, 1.0), Domain::tri_d(2.0)]).unwrap()
    }

    fn band_b() -> Domain {
        Domain::union(vec![Domain::rect_d(1.0, 2.0), Domain::tri_d(SQRT_2)]).unwrap()
    }

    fn mixed_square() -> Domain {
        Domain::rectangle(1.0, 1.0, [Dirichlet, Dirichlet, Neumann, Dirichlet]).unwrap()
    }

    #[test]
    fn trace_is_additive() {
        let a = Domain::rect_d(1.0, 2.0);
        let b = Domain::tri_d(1.0);
        let u = Domain::union(vec![a.clone(), b.clone()]).unwrap();
        let t = 0.1;
        let za = heat_trace(&a, t, 1e-10).unwrap();
        let zb = heat_trace(&b, t, 1e-10).unwrap();
        let zu = heat_trace(&u, t, 1e-10).unwrap();
        let slack = 2.0 * (za.tail_bound + zb.tail_bound + zu.tail_bound).max(1e-14);
        assert!((zu.value - za.value - zb.value).abs() <= slack);
    }

    #[test]
    fn trace_scaling_consistency() {
        let d = Domain::union(vec![Domain::rect_d(1.0, 2.0), Domain::tri_d(1.3)]).unwrap();
        let alpha = 0.77;
        let sd = scale(&d, alpha).unwrap();
        let t = 0.05;
        let z1 = heat_trace(&sd, t, 1e-11).unwrap();
        let z2 = heat_trace(&d, t / (alpha * alpha), 1e-11).unwrap();
        assert!((z1.value - z2.value).abs() < 1e-10);
    }

    #[test]
    fn trace_matches_polygon_asymptotics() {
        let d = Domain::rect_d(1.0, 2.0);
        let z = heat_trace(&d, 0.02, 1e-9).unwrap();
        let asym = trace_asymptotic(&polygon_invariants(&d), 0.02).unwrap();
        assert!(
            (z.value - asym).abs() < 1e-6,
            "Z = {}, asym = {asym}",
            z.value
        );
    }

    #[test]
    fn trace_rejects_nonpositive_time() {
        assert!(matches!(
            heat_trace(&Domain::rect_d(1.0, 1.0), 0.0, 1e-9),
            Err(Error::NonpositiveTime { .. })
        ));
    }

    #[test]
    fn content_band_b_large_time() {
        // At t = 2 the band Q is dominated by its ground mode amplitude.
        let t = 2.0;
        let q = heat_content(&band_b(), t, 1e-18).unwrap();
        let amp = 1152.0 / (9.0 * PI.powi(4));
        let expect = amp * (-5.0 * PI * PI * t / 4.0).exp();
        let slack = (-2.0 * PI * PI * t).exp() * 3.0 + q.tail_bound;
        assert!((q.value - expect).abs() <= slack);
    }

    #[test]
    fn content_additive_and_halving() {
        // Heat content of the 1 x 2 Dirichlet rectangle equals that of two
        // mixed unit squares (each is half of the rectangle).
        let a = Domain::rect_d(1.0, 2.0);
        let b = Domain::union(vec![mixed_square(), mixed_square()]).unwrap();
        for &t in &[0.01, 0.1, 1.0] {
            let qa = heat_content(&a, t, 1e-12).unwrap();
            let qb = heat_content(&b, t, 1e-12).unwrap();
            assert!(
                (qa.value - qb.value).abs() <= 2.0 * (qa.tail_bound + qb.tail_bound),
                "t = {t}"
            );
        }
    }

    #[test]
    fn content_eps_consistency() {
        let d = band_a();
        for &t in &[0.03, 0.5] {
            let q1 = heat_content(&d, t, 1e-8).unwrap();
            let q2 = heat_content(&d, t, 1e-9).unwrap();
            assert!((q1.value - q2.value).abs() <= 1e-8);
        }
    }

    #[test]
    fn content_monotone_and_bounded() {
        let d = band_b();
        let area = polygon_invariants(&d).area;
        let mut prev = f64::INFINITY;
        for &t in &[1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0] {
            let q = heat_content(&d, t, 1e-12).unwrap();
            assert!(q.value > 0.0 && q.value < area);
            assert!(q.value < prev);
            prev = q.value;
        }
    }

    #[test]
    fn content_approaches_area() {
        let d = Domain::rect_d(1.0, 2.0);
        let q = heat_content(&d, 1e-6, 1e-3).unwrap();
        assert!(q.value > 0.995 * 2.0, "Q(1e-6) = {}", q.value);
    }

    #[test]
    fn content_asymptotic_rectangle() {
        let d = Domain::rect_d(1.0, 2.0);
        let c = content_coeffs(&d).unwrap();
        assert!((c.b0 - 2.0).abs() < 1e-15);
        assert!((c.b1 + 12.0 / PI.sqrt()).abs() < 1e-13);
        let b2 = c.b2.unwrap();
        assert!((b2 - 16.0 / PI).abs() < 1e-10, "b2 = {b2}");
        assert!((content_asymptotic(&d, 0.0).unwrap() - 2.0).abs() < 1e-15);
        let t: f64 = 0.004;
        let expect = 2.0 - 12.0 / PI.sqrt() * t.sqrt() + 16.0 / PI * t;
        assert!((content_asymptotic(&d, t).unwrap() - expect).abs() < 1e-10);
    }

    #[test]
    fn content_coeffs_mixed_components() {
        // Triangle with leg sqrt 2 and one Neumann leg:
        // b1 = -2 (2 + sqrt 2) / sqrt(pi).
        let f = Domain::triangle(SQRT_2, [Dirichlet, Neumann, Dirichlet]).unwrap();
        let c = content_coeffs(&f).unwrap();
        assert!((c.b1 + 2.0 * (2.0 + SQRT_2) / PI.sqrt()).abs() < 1e-13);
        // Halving rule: b2 = c(pi/4) + c(pi/2)/2.
        let expect = corner_coefficient(PI / 4.0, 1e-12).unwrap()
            + 0.5 * corner_coefficient(PI / 2.0, 1e-12).unwrap();
        assert!((c.b2.unwrap() - expect).abs() < 1e-11);
        // Mixed square: b2 = 2 c(pi/2) = 8/pi (half of the doubled rectangle).
        let c = content_coeffs(&mixed_square()).unwrap();
        assert!((c.b2.unwrap() - 8.0 / PI).abs() < 1e-10);
        // Adjacent Neumann edges produce a Neumann-Neumann corner: flagged.
        let odd =
            Domain::rectangle(1.0, 1.0, [Neumann, Neumann, Dirichlet, Dirichlet]).unwrap();
        assert!(content_coeffs(&odd).unwrap().b2.is_none());
        assert!(matches!(
            content_asymptotic(&odd, 0.1),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn fit_recovers_rectangle_coefficients() {
        let d = Domain::rect_d(1.0, 2.0);
        let fit = fit_small_time(&d, &default_fit_grid(), 1e-12).unwrap();
        assert!((fit.b0 - 2.0).abs() < 2e-8, "b0 = {}", fit.b0);
        let b1 = -12.0 / PI.sqrt();
        assert!((fit.b1 - b1).abs() < 1e-3 * b1.abs(), "b1 = {}", fit.b1);
        let b2 = 16.0 / PI;
        assert!((fit.b2 - b2).abs() < 1e-2 * b2, "b2 = {}", fit.b2);
    }

    #[test]
    fn fit_requires_enough_points() {
        let d = Domain::rect_d(1.0, 1.0);
        assert!(matches!(
            fit_small_time(&d, &[1e-3, 2e-3, 4e-3], 1e-10),
            Err(Error::IllConditionedFit(_))
        ));
    }

    #[test]
    fn large_time_leading_band_amplitudes() {
        let la = large_time_leading(&band_a()).unwrap();
        assert!((la.lambda1 - 5.0 * PI * PI / 4.0).abs() < 1e-12);
        assert!((la.amplitude - 1024.0 / (9.0 * PI.powi(4))).abs() < 1e-14);
        assert!((la.lambda2 - 2.0 * PI * PI).abs() < 1e-12);
        let lb = large_time_leading(&band_b()).unwrap();
        assert!((lb.amplitude - 1152.0 / (9.0 * PI.powi(4))).abs() < 1e-14);
    }

    #[test]
    fn degenerate_ground_state_detected() {
        let b = Domain::union(vec![mixed_square(), mixed_square()]).unwrap();
        match large_time_leading(&b) {
            Err(Error::DegenerateGroundState { multiplicity, .. }) => {
                assert_eq!(multiplicity, 2)
            }
            other => panic!("expected degenerate ground state, got {other:?}"),
        }
        // The clustered amplitude still exists and doubles the single-square one.
        let g = ground_state_amplitude(&b).unwrap();
        assert!((g.amplitude - 1152.0 / (9.0 * PI.powi(4))).abs() < 1e-13);
    }
}
