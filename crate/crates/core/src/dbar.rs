//! The inhomogeneous problem `∂h/∂z̄ = φ` and Cauchy-Pompeiu reconstruction.
//!
//! The area form `dξ̄ ∧ dξ = 2i dx ∧ dy` turns the solution formula
//! `h(ζ) = (i/2π) ∬ φ(ξ)/(ξ − ζ) dξ̄∧dξ` into the Cauchy transform
//!
//! ```text
//! h(ζ) = −(1/π) ∬ φ(ξ)/(ξ − ζ) dA
//! ```
//!
//! evaluated by the midpoint rule over grid cells. Targets are cell centres,
//! and the target's own cell is left out: the kernel is odd about the centre,
//! so that cell contributes nothing at leading order. The orientation is the
//! one for which `φ ≡ 1` on the unit disk gives `h(ζ) = ζ̄`.
//!
//! The reconstruction uses the full formula for a disk `U`,
//!
//! ```text
//! w(ζ) = (1/2πi) ∮ w(z)/(z − ζ) dz − (1/π) ∬ w_z̄(z)/(z − ζ) dA
//! ```
//!
//! with the trapezoid rule on the circle.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{eval_finite, label, ComplexField, ComplexPoint, GridDomain, SampledField, Shape};
use crate::report::{Params, ResidualReport};
use crate::wirtinger::{d_wirtinger, StepPolicy};

/// Default interior inset for [`verify_dbar`], as a fraction of the shape size.
pub const DEFAULT_INSET: f64 = 0.1;

/// Default number of trapezoid nodes on the boundary circle.
pub const DEFAULT_BOUNDARY_NODES: usize = 1024;

/// Kernel `1/(Δi·dx + iΔj·dy)` on all offsets, zero at the origin.
struct Kernel {
    nx: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Kernel {
    fn new(grid: &GridDomain) -> Self {
        let (nx, ny) = (grid.nx(), grid.ny());
        let (w, h) = (2 * nx - 1, 2 * ny - 1);
        let mut re = vec![0.0; w * h];
        let mut im = vec![0.0; w * h];
        for b in 0..h {
            for a in 0..w {
                let di = a as f64 - (nx - 1) as f64;
                let dj = b as f64 - (ny - 1) as f64;
                if di == 0.0 && dj == 0.0 {
                    continue;
                }
                let g = Complex64::new(di * grid.dx(), dj * grid.dy()).inv();
                re[b * w + a] = g.re;
                im[b * w + a] = g.im;
            }
        }
        Kernel { nx, re, im }
    }

    /// Kernel row for source row `js` seen from target `(i, j)`, aligned so
    /// that element `is` belongs to source column `is`.
    fn row(&self, i: usize, j: usize, js: usize, ny: usize) -> (&[f64], &[f64]) {
        let w = 2 * self.nx - 1;
        let b = js + ny - 1 - j;
        let start = b * w + (self.nx - 1 - i);
        (
            &self.re[start..start + self.nx],
            &self.im[start..start + self.nx],
        )
    }
}

/// Source samples split into real and imaginary planes, zero where masked.
struct Planes {
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Planes {
    fn sample(phi: &dyn ComplexField, grid: &GridDomain) -> Result<(Self, SampledField)> {
        let field = SampledField::try_from_cells(grid, |_, p| eval_finite(phi, p.z()).map(Some))?;
        let re = field.values().iter().map(|v| v.map_or(0.0, |c| c.re)).collect();
        let im = field.values().iter().map(|v| v.map_or(0.0, |c| c.im)).collect();
        Ok((Planes { re, im }, field))
    }
}

/// `−(dA/π) Σ φ(c) · kernel(c − ζ)` for the target cell `(i, j)`.
fn transform_at(planes: &Planes, kernel: &Kernel, grid: &GridDomain, i: usize, j: usize) -> Complex64 {
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut acc_re = 0.0;
    let mut acc_im = 0.0;
    for js in 0..ny {
        let (gr, gi) = kernel.row(i, j, js, ny);
        let pr = &planes.re[js * nx..(js + 1) * nx];
        let pi = &planes.im[js * nx..(js + 1) * nx];
        let mut sr = 0.0;
        let mut si = 0.0;
        for k in 0..nx {
            sr += pr[k] * gr[k] - pi[k] * gi[k];
            si += pr[k] * gi[k] + pi[k] * gr[k];
        }
        acc_re += sr;
        acc_im += si;
    }
    Complex64::new(acc_re, acc_im) * (-grid.cell_area() / PI)
}

fn target_cell(grid: &GridDomain, zeta: ComplexPoint) -> Result<(usize, usize)> {
    let (i, j) = grid.locate_center(zeta).ok_or_else(|| Error::InvalidTarget {
        point: zeta,
        reason: "not a cell centre of the grid".into(),
    })?;
    if !grid.is_valid(grid.index(i, j)) {
        return Err(Error::InvalidTarget {
            point: zeta,
            reason: "cell centre lies outside the domain".into(),
        });
    }
    Ok((i, j))
}

/// `h(ζ)` for a single target cell centre `ζ`.
pub fn pompeiu_solve(phi: &dyn ComplexField, grid: &GridDomain, zeta: ComplexPoint) -> Result<Complex64> {
    let (i, j) = target_cell(grid, zeta)?;
    let (planes, _) = Planes::sample(phi, grid)?;
    Ok(transform_at(&planes, &Kernel::new(grid), grid, i, j))
}

/// `h` at every valid cell centre, computed once.
#[derive(Debug, Clone)]
pub struct PompeiuSolution {
    source: SampledField,
    values: SampledField,
    phi_label: String,
}

impl PompeiuSolution {
    pub fn new(phi: &dyn ComplexField, grid: &GridDomain) -> Result<Self> {
        let (planes, source) = Planes::sample(phi, grid)?;
        let kernel = Kernel::new(grid);
        let values = (0..grid.len())
            .into_par_iter()
            .map(|k| {
                grid.is_valid(k).then(|| {
                    let (i, j) = (k % grid.nx(), k / grid.nx());
                    transform_at(&planes, &kernel, grid, i, j)
                })
            })
            .collect();
        Ok(PompeiuSolution {
            source,
            values: SampledField::new(grid.clone(), values)?,
            phi_label: label(phi),
        })
    }

    pub fn grid(&self) -> &GridDomain {
        self.values.grid()
    }

    /// Sampled `φ`.
    pub fn source(&self) -> &SampledField {
        &self.source
    }

    /// Sampled `h`.
    pub fn values(&self) -> &SampledField {
        &self.values
    }

    pub fn phi_label(&self) -> &str {
        &self.phi_label
    }

    /// `h` at cell `(i, j)`, `None` if masked or out of range.
    pub fn at(&self, i: isize, j: isize) -> Option<Complex64> {
        let g = self.grid();
        if !g.is_valid_ij(i, j) {
            return None;
        }
        self.values.get(g.index(i as usize, j as usize))
    }

    /// `h(ζ)` at a valid cell centre.
    pub fn evaluate(&self, zeta: ComplexPoint) -> Result<Complex64> {
        let (i, j) = target_cell(self.grid(), zeta)?;
        Ok(self.values.get(self.grid().index(i, j)).expect("valid target cell"))
    }
}

impl ComplexField for PompeiuSolution {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.evaluate(z.into())
    }

    fn describe(&self) -> Option<String> {
        Some(format!("pompeiu({})", self.phi_label))
    }
}

/// What [`verify_dbar`] differentiates.
#[derive(Clone, Copy)]
pub enum DbarCandidate<'a> {
    /// Any field; central differences with the policy step.
    Field(&'a dyn ComplexField),
    /// Cached grid solution; central differences between neighbouring cells.
    Solution(&'a PompeiuSolution),
}

/// Residual `h_z̄ − φ` on interior cells, with the default inset.
pub fn verify_dbar(
    h: DbarCandidate<'_>,
    phi: &dyn ComplexField,
    grid: &GridDomain,
    policy: &StepPolicy,
) -> Result<ResidualReport> {
    verify_dbar_with_inset(h, phi, grid, policy, DEFAULT_INSET)
}

/// Residual `h_z̄ − φ` on cells at least `inset · size` inside the shape.
///
/// Cells whose difference probes leave the domain are skipped and counted in
/// `skipped_cells`; cells inside the inset band are counted in `inset_cells`.
pub fn verify_dbar_with_inset(
    h: DbarCandidate<'_>,
    phi: &dyn ComplexField,
    grid: &GridDomain,
    policy: &StepPolicy,
    inset: f64,
) -> Result<ResidualReport> {
    if !(0.0..1.0).contains(&inset) {
        return Err(Error::InvalidParameter(format!("inset fraction {inset} must lie in [0, 1)")));
    }
    if let DbarCandidate::Solution(s) = h {
        if s.grid() != grid {
            return Err(Error::InvalidParameter("solution was computed on a different grid".into()));
        }
    }
    let shape = *grid.shape();
    let margin = inset * shape.size();
    let nx = grid.nx();
    // 0 = evaluated, 1 = in the inset band, 2 = probe left the domain
    let outcome = |k: usize, p: ComplexPoint| -> Result<(u8, Option<Complex64>)> {
        if !shape.contains_inset(p, margin) {
            return Ok((1, None));
        }
        let dzbar = match h {
            DbarCandidate::Solution(s) => {
                let (i, j) = ((k % nx) as isize, (k / nx) as isize);
                match (s.at(i + 1, j), s.at(i - 1, j), s.at(i, j + 1), s.at(i, j - 1)) {
                    (Some(e), Some(w), Some(n), Some(so)) => {
                        let hx = (e - w) / (2.0 * grid.dx());
                        let hy = (n - so) / (2.0 * grid.dy());
                        0.5 * (hx + Complex64::i() * hy)
                    }
                    _ => return Ok((2, None)),
                }
            }
            DbarCandidate::Field(f) => {
                let step = policy.first_step(p.z());
                let probes = [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)];
                if !probes.iter().all(|&(a, b)| shape.contains(ComplexPoint::new(p.x + a, p.y + b))) {
                    return Ok((2, None));
                }
                d_wirtinger(f, p, policy)?.d_zbar
            }
        };
        Ok((0, Some(dzbar - eval_finite(phi, p.z())?)))
    };
    let cells = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            if grid.is_valid(k) {
                outcome(k, grid.center_at(k)).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let count = |tag: u8| cells.iter().flatten().filter(|c| c.0 == tag).count();
    let (inset_cells, skipped) = (count(1), count(2));
    let values = cells.iter().map(|c| c.and_then(|c| c.1)).collect();
    let field = SampledField::new(grid.clone(), values)?;
    if field.valid_count() == 0 {
        return Err(Error::InvalidDomain("no interior cells left to verify".into()));
    }
    let (h_label, fd) = match h {
        DbarCandidate::Field(f) => (label(f), "policy"),
        DbarCandidate::Solution(s) => (format!("pompeiu({})", s.phi_label()), "grid"),
    };
    let params = Params::new()
        .with("h", h_label)
        .with("phi", label(phi))
        .with("differences", fd)
        .with("inset", inset)
        .with("inset_margin", margin)
        .with("inset_cells", inset_cells)
        .with("skipped_cells", skipped)
        .with("h1", policy.h1);
    ResidualReport::from_field("dbar", field, params)
}

/// Boundary and area parts of a Cauchy-Pompeiu reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reconstruction {
    pub boundary: Complex64,
    pub area: Complex64,
}

impl Reconstruction {
    pub fn value(&self) -> Complex64 {
        self.boundary + self.area
    }
}

/// Reconstructs `w(ζ)` on a disk grid from boundary values and `w_z̄`.
pub fn cauchy_pompeiu_reconstruct(
    w: &dyn ComplexField,
    grid: &GridDomain,
    zeta: ComplexPoint,
    policy: &StepPolicy,
    boundary_nodes: usize,
) -> Result<Reconstruction> {
    let Shape::Disk { center, radius } = *grid.shape() else {
        return Err(Error::InvalidDomain("reconstruction needs a disk domain".into()));
    };
    if boundary_nodes < 3 {
        return Err(Error::InvalidParameter(format!(
            "{boundary_nodes} boundary nodes; need at least 3"
        )));
    }
    target_cell(grid, zeta)?;
    let c = center.z();
    let zt = zeta.z();
    // (1/2πi) ∮ w/(z−ζ) dz with dz = i(z−c)dθ
    let mut boundary = Complex64::new(0.0, 0.0);
    for k in 0..boundary_nodes {
        let theta = 2.0 * PI * k as f64 / boundary_nodes as f64;
        let r = Complex64::from_polar(radius, theta);
        let z = c + r;
        boundary += eval_finite(w, z)? * r / (z - zt);
    }
    boundary /= boundary_nodes as f64;
    let source = |z: Complex64| -> Result<Complex64> { Ok(d_wirtinger(w, z.into(), policy)?.d_zbar) };
    let area = pompeiu_solve(&FnField(&source), grid, zeta)?;
    Ok(Reconstruction { boundary, area })
}

struct FnField<'a>(&'a (dyn Fn(Complex64) -> Result<Complex64> + Sync));

impl ComplexField for FnField<'_> {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        (self.0)(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn disk(n: usize) -> GridDomain {
        GridDomain::disk(ComplexPoint::new(0.0, 0.0), 1.0, n, n).unwrap()
    }

    const P: StepPolicy = StepPolicy { h1: 1e-5, h2: 1e-3 };

    #[test]
    fn zero_source() {
        let g = disk(16);
        let s = PompeiuSolution::new(&|_z: Complex64| Complex64::new(0.0, 0.0), &g).unwrap();
        assert!(s.values().valid().all(|(_, v)| v == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn single_target_matches_cached_bitwise() {
        let g = disk(24);
        let phi = parse("z + 2*conj(z)^2").unwrap();
        let s = PompeiuSolution::new(&phi, &g).unwrap();
        for (k, p) in g.centers().step_by(37) {
            assert_eq!(pompeiu_solve(&phi, &g, p).unwrap(), s.values().get(k).unwrap());
        }
    }

    #[test]
    fn invalid_targets() {
        let g = disk(8);
        let one = |_z: Complex64| Complex64::new(1.0, 0.0);
        assert!(matches!(
            pompeiu_solve(&one, &g, ComplexPoint::new(0.01, 0.0)),
            Err(Error::InvalidTarget { .. })
        ));
        // corner cell of the bounding square is masked
        let corner = g.center(0, 0);
        assert!(matches!(pompeiu_solve(&one, &g, corner), Err(Error::InvalidTarget { .. })));
    }

    #[test]
    fn unit_source_gives_conjugate() {
        let g = disk(64);
        let s = PompeiuSolution::new(&|_z: Complex64| Complex64::new(1.0, 0.0), &g).unwrap();
        for (p, h) in s.values().valid().filter(|(p, _)| p.z().norm() <= 0.5) {
            assert!((h - p.z().conj()).norm() < 2e-2, "{p}: {h}");
        }
    }

    #[test]
    fn exact_fields_verify() {
        let g = disk(32);
        let one = |_z: Complex64| Complex64::new(1.0, 0.0);
        let zero = |_z: Complex64| Complex64::new(0.0, 0.0);
        let r = verify_dbar(DbarCandidate::Field(&parse("conj(z)").unwrap()), &one, &g, &P).unwrap();
        assert!(r.linf() < 1e-9);
        let r = verify_dbar(DbarCandidate::Field(&parse("z^2").unwrap()), &zero, &g, &P).unwrap();
        assert!(r.linf() < 1e-9);
        assert!(r.field.valid_count() < g.valid_count());
    }

    #[test]
    fn solution_residual_is_small_inside() {
        let g = disk(64);
        let one = |_z: Complex64| Complex64::new(1.0, 0.0);
        let s = PompeiuSolution::new(&one, &g).unwrap();
        let r = verify_dbar(DbarCandidate::Solution(&s), &one, &g, &P).unwrap();
        assert!(r.linf() < 5e-2, "{}", r.linf());
        assert!(verify_dbar(DbarCandidate::Solution(&s), &one, &disk(32), &P).is_err());
    }

    #[test]
    fn reconstruction_of_holomorphic_function() {
        let g = disk(64);
        let w = parse("z^2").unwrap();
        let zeta = g.center(38, 35);
        let r = cauchy_pompeiu_reconstruct(&w, &g, zeta, &P, DEFAULT_BOUNDARY_NODES).unwrap();
        assert!(r.area.norm() < 1e-8);
        assert!((r.value() - zeta.z() * zeta.z()).norm() < 1e-3);
        let rect = GridDomain::rect(0.0, 1.0, 0.0, 1.0, 4, 4).unwrap();
        assert!(matches!(
            cauchy_pompeiu_reconstruct(&w, &rect, rect.center(1, 1), &P, 64),
            Err(Error::InvalidDomain(_))
        ));
    }

    #[test]
    fn structural_integrand_is_minus_dbar() {
        // for w = e^{-κ}, w κ_z̄ = −w_z̄; here κ = 0.5 z̄
        let w = parse("exp(-0.5*conj(z))").unwrap();
        for (_, p) in disk(12).centers() {
            let wz = d_wirtinger(&w, p, &P).unwrap().d_zbar;
            let integrand = w.eval(p.z()).unwrap() * 0.5;
            assert!((integrand + wz).norm() < 1e-6);
        }
    }
}
