//! Closed-form Dirichlet/Neumann spectra for the supported domain families,
//! Fourier coefficients of the constant function 1, and isospectrality
//! checking.
//!
//! Supported components:
//!
//! * rectangles with any per-edge D/N pattern (separable sine/cosine modes),
//! * the all-Dirichlet right isosceles triangle (antisymmetrized products),
//! * the triangle with a Neumann hypotenuse (symmetrized products),
//! * the triangle with Neumann on exactly one leg, represented through its
//!   all-Dirichlet double (leg `c sqrt 2`) with the parity filter `i + j odd`
//!   and the halving rule for coefficients.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{BoundaryCondition, Domain};

/// Provenance class of a mode within its component family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParityClass {
    /// Separable rectangle mode.
    Plain,
    /// Antisymmetrized triangle mode (all-Dirichlet family).
    Anti,
    /// Symmetrized triangle mode (Neumann hypotenuse family).
    Sym,
    /// Mode of the Dirichlet double surviving the `i + j` odd filter.
    OddSum,
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParityClass::Plain => "-",
            ParityClass::Anti => "anti",
            ParityClass::Sym => "sym",
            ParityClass::OddSum => "odd",
        };
        f.write_str(s)
    }
}

/// Structured provenance of a mode: component index in flattened union
/// order, the per-family mode indices, and the parity class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeLabel {
    pub component: usize,
    pub idx: (u32, u32),
    pub parity: ParityClass,
}

/// One eigenpair summary: eigenvalue, squared integral of the L2-normalized
/// eigenfunction, and provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub lambda: f64,
    pub coeff_sq: f64,
    pub label: ModeLabel,
}

/// All modes with eigenvalue at most `cutoff`, sorted by eigenvalue with
/// ties broken lexicographically on the label.
#[derive(Debug, Clone)]
pub struct ModeStream {
    pub modes: Vec<Mode>,
    pub cutoff: f64,
}

impl ModeStream {
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.lambda).collect()
    }
}

/// A single rectangle or triangle with all scale factors applied.
#[derive(Debug, Clone)]
pub(crate) enum Component {
    Rect {
        a: f64,
        b: f64,
        bc: [BoundaryCondition; 4],
    },
    Tri {
        leg: f64,
        bc: [BoundaryCondition; 3],
    },
}

pub(crate) fn flatten(d: &Domain) -> Vec<Component> {
    let mut out = Vec::new();
    push_components(d, 1.0, &mut out);
    out
}

fn push_components(d: &Domain, scale: f64, out: &mut Vec<Component>) {
    match d {
        Domain::Rectangle { a, b, bc } => out.push(Component::Rect {
            a: a * scale,
            b: b * scale,
            bc: *bc,
        }),
        Domain::RightIsoTriangle { leg, bc } => out.push(Component::Tri {
            leg: leg * scale,
            bc: *bc,
        }),
        Domain::Scaled { alpha, inner } => push_components(inner, scale * alpha, out),
        Domain::Union { parts } => {
            for p in parts {
                push_components(p, scale, out);
            }
        }
    }
}

/// 1-D mode family on an interval, classified by its endpoint conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AxisFamily {
    /// Dirichlet both ends: sin(k pi x / L), k >= 1.
    DD,
    /// Dirichlet at 0, Neumann at L: sin((k - 1/2) pi x / L), k >= 1.
    DN,
    /// Neumann at 0, Dirichlet at L: cos((k - 1/2) pi x / L), k >= 1.
    ND,
    /// Neumann both ends: cos(k pi x / L), k >= 0.
    NN,
}

impl AxisFamily {
    pub(crate) fn from_bc(lo: BoundaryCondition, hi: BoundaryCondition) -> AxisFamily {
        match (lo.is_dirichlet(), hi.is_dirichlet()) {
            (true, true) => AxisFamily::DD,
            (true, false) => AxisFamily::DN,
            (false, true) => AxisFamily::ND,
            (false, false) => AxisFamily::NN,
        }
    }

    pub(crate) fn k_start(self) -> u32 {
        match self {
            AxisFamily::NN => 0,
            _ => 1,
        }
    }

    /// Frequency in units of pi/L.
    fn freq(self, k: u32) -> f64 {
        match self {
            AxisFamily::DD | AxisFamily::NN => k as f64,
            AxisFamily::DN | AxisFamily::ND => k as f64 - 0.5,
        }
    }

    fn mu(self, k: u32, len: f64) -> f64 {
        let w = self.freq(k) * PI / len;
        w * w
    }

    /// Integral of the (unnormalized) 1-D mode over [0, L].
    fn integral(self, k: u32, len: f64) -> f64 {
        match self {
            AxisFamily::DD => {
                let sigma = if k % 2 == 1 { 2.0 } else { 0.0 };
                len * sigma / (k as f64 * PI)
            }
            AxisFamily::DN => len / ((k as f64 - 0.5) * PI),
            AxisFamily::ND => {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * len / ((k as f64 - 0.5) * PI)
            }
            AxisFamily::NN => {
                if k == 0 {
                    len
                } else {
                    0.0
                }
            }
        }
    }

    fn norm_sq(self, k: u32, len: f64) -> f64 {
        if self == AxisFamily::NN && k == 0 {
            len
        } else {
            len / 2.0
        }
    }
}

/// sigma_k = 1 - (-1)^k.
fn sigma(k: u32) -> f64 {
    if k % 2 == 1 {
        2.0
    } else {
        0.0
    }
}

/// Integral over the unit-leg triangle {0 <= y <= x <= 1} of the
/// antisymmetrized product `sin(i pi x) sin(j pi y) - sin(j pi x) sin(i pi y)`.
///
/// Closed form validated against a 2-D quadrature oracle (see the
/// `triangle_oracle` integration test).
pub(crate) fn tri_antisym_integral(i: u32, j: u32) -> f64 {
    if (i + j) % 2 == 0 {
        return 0.0;
    }
    let (fi, fj) = (i as f64, j as f64);
    if i % 2 == 1 {
        -4.0 * fj / (fi * PI * PI * (fi * fi - fj * fj))
    } else {
        -4.0 * fi / (fj * PI * PI * (fi * fi - fj * fj))
    }
}

/// Coefficient (int phi)^2 for the all-Dirichlet triangle of leg `c`,
/// mode (i, j) with i > j.
fn tri_d_coeff_sq(c: f64, i: u32, j: u32) -> f64 {
    let integral = tri_antisym_integral(i, j);
    4.0 * c * c * integral * integral
}

/// Coefficient for the Neumann-hypotenuse triangle of leg `c`, i >= j.
fn tri_nhyp_coeff_sq(c: f64, i: u32, j: u32) -> f64 {
    let (si, sj) = (sigma(i), sigma(j));
    let (fi, fj) = (i as f64, j as f64);
    let pi4 = PI.powi(4);
    if i > j {
        4.0 * c * c * si * si * sj * sj / (fi * fi * fj * fj * pi4)
    } else {
        2.0 * c * c * si.powi(4) / (fi.powi(4) * pi4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TriFamily {
    AllD,
    NeumannHyp,
    NeumannLeg,
}

pub(crate) fn tri_family(bc: [BoundaryCondition; 3]) -> Result<TriFamily> {
    let n: Vec<bool> = bc.iter().map(|b| !b.is_dirichlet()).collect();
    match (n[0], n[1], n[2]) {
        (false, false, false) => Ok(TriFamily::AllD),
        (false, false, true) => Ok(TriFamily::NeumannHyp),
        (true, false, false) | (false, true, false) => Ok(TriFamily::NeumannLeg),
        _ => Err(Error::UnsupportedDomain(
            "triangle supports Neumann on the hypotenuse or on exactly one leg".into(),
        )),
    }
}

fn rect_modes(
    a: f64,
    b: f64,
    bc: [BoundaryCondition; 4],
    cutoff: f64,
    component: usize,
    out: &mut dyn FnMut(Mode),
) {
    // Edge order [bottom, right, top, left]: the x-axis sees (left, right),
    // the y-axis (bottom, top).
    let fx = AxisFamily::from_bc(bc[3], bc[1]);
    let fy = AxisFamily::from_bc(bc[0], bc[2]);
    let mut kx = fx.k_start();
    loop {
        let mux = fx.mu(kx, a);
        if mux > cutoff {
            break;
        }
        let ix = fx.integral(kx, a);
        let nx = fx.norm_sq(kx, a);
        let mut ky = fy.k_start();
        loop {
            let muy = fy.mu(ky, b);
            if mux + muy > cutoff {
                break;
            }
            let iy = fy.integral(ky, b);
            let ny = fy.norm_sq(ky, b);
            let int = ix * iy;
            out(Mode {
                lambda: mux + muy,
                coeff_sq: int * int / (nx * ny),
                label: ModeLabel {
                    component,
                    idx: (kx, ky),
                    parity: ParityClass::Plain,
                },
            });
            ky += 1;
        }
        kx += 1;
    }
}

fn tri_modes(
    leg: f64,
    bc: [BoundaryCondition; 3],
    cutoff: f64,
    component: usize,
    out: &mut dyn FnMut(Mode),
) -> Result<()> {
    let family = tri_family(bc)?;
    match family {
        TriFamily::AllD | TriFamily::NeumannHyp => {
            let c2 = leg * leg;
            let imax = (leg * cutoff.max(0.0).sqrt() / PI).floor() as u32 + 1;
            for i in 1..=imax {
                let jmax = i;
                for j in 1..=jmax {
                    if family == TriFamily::AllD && j == i {
                        continue;
                    }
                    let lambda = PI * PI * ((i * i + j * j) as f64) / c2;
                    if lambda > cutoff {
                        break;
                    }
                    let (coeff_sq, parity) = match family {
                        TriFamily::AllD => (tri_d_coeff_sq(leg, i, j), ParityClass::Anti),
                        TriFamily::NeumannHyp => {
                            (tri_nhyp_coeff_sq(leg, i, j), ParityClass::Sym)
                        }
                        TriFamily::NeumannLeg => unreachable!(),
                    };
                    out(Mode {
                        lambda,
                        coeff_sq,
                        label: ModeLabel {
                            component,
                            idx: (i, j),
                            parity,
                        },
                    });
                }
            }
        }
        TriFamily::NeumannLeg => {
            // Double across the Neumann leg: all-Dirichlet triangle of leg
            // c sqrt 2, keep i + j odd, halve the double's coefficient.
            let big = leg * SQRT_2;
            let c2 = big * big;
            let imax = (big * cutoff.max(0.0).sqrt() / PI).floor() as u32 + 1;
            for i in 2..=imax {
                for j in 1..i {
                    if (i + j) % 2 == 0 {
                        continue;
                    }
                    let lambda = PI * PI * ((i * i + j * j) as f64) / c2;
                    if lambda > cutoff {
                        break;
                    }
                    out(Mode {
                        lambda,
                        coeff_sq: 0.5 * tri_d_coeff_sq(big, i, j),
                        label: ModeLabel {
                            component,
                            idx: (i, j),
                            parity: ParityClass::OddSum,
                        },
                    });
                }
            }
        }
    }
    Ok(())
}

/// Visit every mode of `d` with eigenvalue at most `cutoff`, in component
/// enumeration order (unsorted).
pub(crate) fn for_each_mode(
    d: &Domain,
    cutoff: f64,
    visit: &mut dyn FnMut(Mode),
) -> Result<()> {
    for (ci, comp) in flatten(d).iter().enumerate() {
        match comp {
            Component::Rect { a, b, bc } => rect_modes(*a, *b, *bc, cutoff, ci, visit),
            Component::Tri { leg, bc } => tri_modes(*leg, *bc, cutoff, ci, visit)?,
        }
    }
    Ok(())
}

/// Enumerate every eigenvalue of `d` up to `cutoff` with exact multiplicity,
/// together with the squared integrals of the normalized eigenfunctions.
pub fn enumerate_modes(d: &Domain, cutoff: f64) -> Result<ModeStream> {
    let mut modes = Vec::new();
    for_each_mode(d, cutoff, &mut |m| modes.push(m))?;
    modes.sort_by(|x, y| {
        x.lambda
            .total_cmp(&y.lambda)
            .then(x.label.component.cmp(&y.label.component))
            .then(x.label.idx.cmp(&y.label.idx))
    });
    Ok(ModeStream { modes, cutoff })
}

/// (int phi)^2 for the normalized eigenfunction with the given family
/// indices on a single-component domain.
pub fn fourier_coeff_sq(d: &Domain, idx: (u32, u32)) -> Result<f64> {
    let comps = flatten(d);
    if comps.len() != 1 {
        return Err(Error::UnsupportedDomain(
            "fourier_coeff_sq expects a single-component domain".into(),
        ));
    }
    match &comps[0] {
        Component::Rect { a, b, bc } => {
            let fx = AxisFamily::from_bc(bc[3], bc[1]);
            let fy = AxisFamily::from_bc(bc[0], bc[2]);
            let (kx, ky) = idx;
            let int = fx.integral(kx, *a) * fy.integral(ky, *b);
            Ok(int * int / (fx.norm_sq(kx, *a) * fy.norm_sq(ky, *b)))
        }
        Component::Tri { leg, bc } => {
            let (i, j) = idx;
            match tri_family(*bc)? {
                TriFamily::AllD => {
                    if i <= j {
                        return Err(Error::UnsupportedDomain(
                            "all-Dirichlet triangle modes require i > j >= 1".into(),
                        ));
                    }
                    Ok(tri_d_coeff_sq(*leg, i, j))
                }
                TriFamily::NeumannHyp => {
                    if i < j || j == 0 {
                        return Err(Error::UnsupportedDomain(
                            "Neumann-hypotenuse triangle modes require i >= j >= 1".into(),
                        ));
                    }
                    Ok(tri_nhyp_coeff_sq(*leg, i, j))
                }
                TriFamily::NeumannLeg => {
                    if i <= j || (i + j) % 2 == 0 {
                        return Err(Error::UnsupportedDomain(
                            "Neumann-leg triangle modes require i > j >= 1 with i + j odd".into(),
                        ));
                    }
                    Ok(0.5 * tri_d_coeff_sq(leg * SQRT_2, i, j))
                }
            }
        }
    }
}

/// First `count` eigenvalues (with multiplicity) in nondecreasing order.
pub fn first_eigenvalues(d: &Domain, count: usize) -> Result<Vec<f64>> {
    let area = crate::geometry::polygon_invariants(d).area;
    let mut cutoff = (4.0 * PI * (count as f64 + 8.0) / area).max(1.0);
    for _ in 0..80 {
        let stream = enumerate_modes(d, cutoff)?;
        if stream.len() >= count {
            let mut ev = stream.eigenvalues();
            ev.truncate(count);
            return Ok(ev);
        }
        cutoff = cutoff * 1.6 + 10.0;
    }
    Err(Error::ToleranceNotMet(format!(
        "could not collect {count} eigenvalues"
    )))
}

/// First `count` modes in stream order.
pub fn first_modes(d: &Domain, count: usize) -> Result<Vec<Mode>> {
    let area = crate::geometry::polygon_invariants(d).area;
    let mut cutoff = (4.0 * PI * (count as f64 + 8.0) / area).max(1.0);
    for _ in 0..80 {
        let stream = enumerate_modes(d, cutoff)?;
        if stream.len() >= count {
            let mut m = stream.modes;
            m.truncate(count);
            return Ok(m);
        }
        cutoff = cutoff * 1.6 + 10.0;
    }
    Err(Error::ToleranceNotMet(format!(
        "could not collect {count} modes"
    )))
}

/// Smallest eigenvalue of `d`.
pub fn lambda_min(d: &Domain) -> Result<f64> {
    Ok(first_eigenvalues(d, 1)?[0])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsospectralCheck {
    pub equal: bool,
    /// 1-based index of the first eigenvalue disagreement, if any.
    pub first_mismatch: Option<usize>,
}

/// Compare the first `count` eigenvalues (with multiplicity) of two domains
/// within absolute tolerance `tol`.
pub fn isospectral_check(
    d1: &Domain,
    d2: &Domain,
    count: usize,
    tol: f64,
) -> Result<IsospectralCheck> {
    let e1 = first_eigenvalues(d1, count)?;
    let e2 = first_eigenvalues(d2, count)?;
    for i in 0..count {
        if (e1[i] - e2[i]).abs() > tol {
            return Ok(IsospectralCheck {
                equal: false,
                first_mismatch: Some(i + 1),
            });
        }
    }
    Ok(IsospectralCheck {
        equal: true,
        first_mismatch: None,
    })
}

/// Default comparison tolerance for closed-form eigenvalues.
pub fn eigenvalue_tol(lambda: f64) -> f64 {
    1e-9 * lambda.abs().max(1.0)
}
