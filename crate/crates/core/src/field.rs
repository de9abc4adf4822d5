//! Domain geometry, sampled complex fields and discrete norms.
//!
//! Grids are uniform cell-centred lattices over a rectangle, or over the
//! bounding square of a disk with a containment mask. Every other module
//! evaluates its residuals on these cell centres.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// A point z = x + iy of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub x: f64,
    pub y: f64,
}

impl ComplexPoint {
    pub const fn new(x: f64, y: f64) -> Self {
        ComplexPoint { x, y }
    }

    pub fn z(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        ComplexPoint::new(z.re, z.im)
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        p.z()
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A complex-valued map of one complex variable.
///
/// Closures `Fn(Complex64) -> Complex64` implement this directly; parsed
/// expressions implement it through [`crate::expr::ExprField`].
pub trait ComplexField: Send + Sync {
    fn eval(&self, z: Complex64) -> Result<Complex64>;

    /// Source text, when the field came from an expression.
    fn describe(&self) -> Option<String> {
        None
    }
}

pub(crate) fn label(f: &dyn ComplexField) -> String {
    f.describe().unwrap_or_else(|| "<closure>".to_owned())
}

impl<F> ComplexField for F
where
    F: Fn(Complex64) -> Complex64 + Send + Sync,
{
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self(z))
    }
}

/// Evaluates `f` at `z`, turning non-finite output into a numerical failure.
pub fn eval_finite(f: &dyn ComplexField, z: Complex64) -> Result<Complex64> {
    let w = f.eval(z)?;
    if w.re.is_finite() && w.im.is_finite() {
        Ok(w)
    } else {
        Err(Error::numerical(z, format!("non-finite value {w}")))
    }
}

/// A real-valued map of the plane, f(x, y).
pub trait RealField: Send + Sync {
    fn eval(&self, x: f64, y: f64) -> Result<f64>;

    fn describe(&self) -> Option<String> {
        None
    }
}

pub(crate) fn real_label(f: &dyn RealField) -> String {
    f.describe().unwrap_or_else(|| "<closure>".to_owned())
}

impl<F> RealField for F
where
    F: Fn(f64, f64) -> f64 + Send + Sync,
{
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self(x, y))
    }
}

pub(crate) fn eval_real_finite(f: &dyn RealField, x: f64, y: f64) -> Result<f64> {
    let v = f.eval(x, y)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::numerical(ComplexPoint::new(x, y), format!("non-finite value {v}")))
    }
}

/// Real part of a complex field, as a real field.
pub struct RealPart<'a>(pub &'a dyn ComplexField);

/// Imaginary part of a complex field, as a real field.
pub struct ImagPart<'a>(pub &'a dyn ComplexField);

impl RealField for RealPart<'_> {
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.0.eval(Complex64::new(x, y))?.re)
    }

    fn describe(&self) -> Option<String> {
        Some(format!("re({})", label(self.0)))
    }
}

impl RealField for ImagPart<'_> {
    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.0.eval(Complex64::new(x, y))?.im)
    }

    fn describe(&self) -> Option<String> {
        Some(format!("im({})", label(self.0)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Rect {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
    },
    Disk {
        center: ComplexPoint,
        radius: f64,
    },
}

impl Shape {
    /// Bounding box as (x_min, x_max, y_min, y_max).
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        match *self {
            Shape::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => (x_min, x_max, y_min, y_max),
            Shape::Disk { center, radius } => (
                center.x - radius,
                center.x + radius,
                center.y - radius,
                center.y + radius,
            ),
        }
    }

    /// Closed containment for rectangles, strict containment for disks.
    pub fn contains(&self, p: ComplexPoint) -> bool {
        match *self {
            Shape::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max,
            Shape::Disk { center, radius } => (p.z() - center.z()).norm() < radius,
        }
    }

    /// True if `p` lies in the shape shrunk by `margin` (a distance).
    pub fn contains_inset(&self, p: ComplexPoint, margin: f64) -> bool {
        match *self {
            Shape::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => {
                p.x >= x_min + margin
                    && p.x <= x_max - margin
                    && p.y >= y_min + margin
                    && p.y <= y_max - margin
            }
            Shape::Disk { center, radius } => (p.z() - center.z()).norm() < radius - margin,
        }
    }

    /// Characteristic size: the radius, or the smaller rectangle half-extent.
    pub fn size(&self) -> f64 {
        match *self {
            Shape::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => 0.5 * (x_max - x_min).min(y_max - y_min),
            Shape::Disk { radius, .. } => radius,
        }
    }
}

/// Shape plus resolution; the input of [`make_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub shape: Shape,
    pub nx: usize,
    pub ny: usize,
}

/// A uniform cell-centred grid. Row-major: index `k = j * nx + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDomain {
    shape: Shape,
    nx: usize,
    ny: usize,
    x0: f64,
    y0: f64,
    dx: f64,
    dy: f64,
    mask: Option<Vec<bool>>,
}

pub fn make_grid(spec: GridSpec) -> Result<GridDomain> {
    let GridSpec { shape, nx, ny } = spec;
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidDomain(format!(
            "grid needs nx, ny >= 2 (got {nx} x {ny})"
        )));
    }
    match shape {
        Shape::Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        } => {
            let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
            if !finite || x_max <= x_min || y_max <= y_min {
                return Err(Error::InvalidDomain(format!(
                    "rectangle [{x_min}, {x_max}] x [{y_min}, {y_max}] has no positive extent"
                )));
            }
        }
        Shape::Disk { center, radius } => {
            if !center.is_finite() || !(radius > 0.0 && radius.is_finite()) {
                return Err(Error::InvalidDomain(format!(
                    "disk center {center} radius {radius} is degenerate"
                )));
            }
        }
    }
    let (x_min, x_max, y_min, y_max) = shape.bounds();
    let dx = (x_max - x_min) / nx as f64;
    let dy = (y_max - y_min) / ny as f64;
    let mut grid = GridDomain {
        shape,
        nx,
        ny,
        x0: x_min,
        y0: y_min,
        dx,
        dy,
        mask: None,
    };
    if let Shape::Disk { .. } = shape {
        let mask = (0..nx * ny)
            .map(|k| shape.contains(grid.center_at(k)))
            .collect();
        grid.mask = Some(mask);
    }
    Ok(grid)
}

impl GridDomain {
    pub fn rect(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        make_grid(GridSpec {
            shape: Shape::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            },
            nx,
            ny,
        })
    }

    pub fn disk(center: ComplexPoint, radius: f64, nx: usize, ny: usize) -> Result<Self> {
        make_grid(GridSpec {
            shape: Shape::Disk { center, radius },
            nx,
            ny,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn cell_area(&self) -> f64 {
        self.dx * self.dy
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn center(&self, i: usize, j: usize) -> ComplexPoint {
        ComplexPoint::new(
            self.x0 + (i as f64 + 0.5) * self.dx,
            self.y0 + (j as f64 + 0.5) * self.dy,
        )
    }

    pub fn center_at(&self, k: usize) -> ComplexPoint {
        self.center(k % self.nx, k / self.nx)
    }

    pub fn is_valid(&self, k: usize) -> bool {
        self.mask.as_ref().is_none_or(|m| m[k])
    }

    pub fn is_valid_ij(&self, i: isize, j: isize) -> bool {
        i >= 0
            && j >= 0
            && (i as usize) < self.nx
            && (j as usize) < self.ny
            && self.is_valid(self.index(i as usize, j as usize))
    }

    pub fn valid_count(&self) -> usize {
        (0..self.len()).filter(|&k| self.is_valid(k)).count()
    }

    /// Area of the masked domain, `valid_count * cell_area`.
    pub fn valid_area(&self) -> f64 {
        self.valid_count() as f64 * self.cell_area()
    }

    pub fn centers(&self) -> impl Iterator<Item = (usize, ComplexPoint)> + '_ {
        (0..self.len())
            .filter(|&k| self.is_valid(k))
            .map(|k| (k, self.center_at(k)))
    }

    /// Finds the valid cell whose centre is `p` (to a small fraction of a cell).
    pub fn locate_center(&self, p: ComplexPoint) -> Option<(usize, usize)> {
        let fi = (p.x - self.x0) / self.dx - 0.5;
        let fj = (p.y - self.y0) / self.dy - 0.5;
        let (i, j) = (fi.round(), fj.round());
        if (fi - i).abs() > 1e-6 || (fj - j).abs() > 1e-6 {
            return None;
        }
        if !self.is_valid_ij(i as isize, j as isize) {
            return None;
        }
        Some((i as usize, j as usize))
    }
}

/// Complex samples at the cell centres of a grid; `None` marks masked cells.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: GridDomain,
    values: Vec<Option<Complex64>>,
}

pub fn sample_field(f: &dyn ComplexField, grid: &GridDomain) -> Result<SampledField> {
    SampledField::try_from_cells(grid, |_, p| eval_finite(f, p.z()).map(Some))
}

impl SampledField {
    pub fn new(grid: GridDomain, values: Vec<Option<Complex64>>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "{} values for a {}-cell grid",
                values.len(),
                grid.len()
            )));
        }
        Ok(SampledField { grid, values })
    }

    /// Evaluates `cell` at every valid centre in parallel. A cell may decline
    /// (return `Ok(None)`), which leaves it invalid; the first error in
    /// row-major order is returned.
    pub fn try_from_cells<F>(grid: &GridDomain, cell: F) -> Result<Self>
    where
        F: Fn(usize, ComplexPoint) -> Result<Option<Complex64>> + Sync,
    {
        let values = (0..grid.len())
            .into_par_iter()
            .map(|k| {
                if grid.is_valid(k) {
                    cell(k, grid.center_at(k))
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SampledField {
            grid: grid.clone(),
            values,
        })
    }

    pub fn grid(&self) -> &GridDomain {
        &self.grid
    }

    pub fn values(&self) -> &[Option<Complex64>] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Option<Complex64> {
        self.values[k]
    }

    pub fn valid(&self) -> impl Iterator<Item = (ComplexPoint, Complex64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(k, v)| v.map(|w| (self.grid.center_at(k), w)))
    }

    pub fn valid_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> SampledField {
        SampledField {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v.map(&f)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> SampledField {
        self.map(|w| c * w)
    }

    pub fn norm(&self, p: f64) -> Result<FieldNorm> {
        Ok(FieldNorm {
            p,
            value: norm_lp(self, p)?,
        })
    }

    /// Valid cell with the largest modulus (first one on ties).
    pub fn argmax(&self) -> Option<(ComplexPoint, f64)> {
        let mut best: Option<(ComplexPoint, f64)> = None;
        for (p, w) in self.valid() {
            let a = w.norm();
            if best.is_none_or(|(_, b)| a > b) {
                best = Some((p, a));
            }
        }
        best
    }
}

/// A discrete L^p norm value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldNorm {
    pub p: f64,
    pub value: f64,
}

/// Midpoint-rule L^p norm over the valid cells; `p = f64::INFINITY` gives the
/// maximum modulus.
pub fn norm_lp(field: &SampledField, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("norm order p = {p} < 1")));
    }
    let area = field.grid.cell_area();
    let mut count = 0usize;
    let mut acc = 0.0f64;
    for (pt, w) in field.valid() {
        let a = w.norm();
        if !a.is_finite() {
            return Err(Error::numerical(pt, format!("non-finite sample {w}")));
        }
        count += 1;
        if p.is_infinite() {
            acc = acc.max(a);
        } else if p == 2.0 {
            acc += a * a * area;
        } else {
            acc += a.powf(p) * area;
        }
    }
    if count == 0 {
        return Err(Error::InvalidParameter("field has no valid cells".into()));
    }
    Ok(if p.is_infinite() {
        acc
    } else if p == 2.0 {
        acc.sqrt()
    } else {
        acc.powf(1.0 / p)
    })
}
