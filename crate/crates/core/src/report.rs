//! Residual reports and their JSON / CSV encodings.
//!
//! Both encodings are byte-stable: floats are printed with 17 significant
//! digits and JSON keys follow a fixed order.

use std::io::Write;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{ComplexPoint, GridDomain, SampledField, Shape};

/// A value in a report's parameter record.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Text(String),
    Number(f64),
    Int(i64),
    Bool(bool),
}

impl From<&str> for ParamValue {
    fn from(s: &str) -> Self {
        ParamValue::Text(s.to_owned())
    }
}

impl From<String> for ParamValue {
    fn from(s: String) -> Self {
        ParamValue::Text(s)
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Number(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<bool> for ParamValue {
    fn from(v: bool) -> Self {
        ParamValue::Bool(v)
    }
}

/// Insertion-ordered parameter record.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params(Vec<(String, ParamValue)>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    /// Sets `key`, replacing an earlier value in place.
    pub fn set(&mut self, key: &str, value: impl Into<ParamValue>) -> &mut Self {
        let value = value.into();
        match self.0.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.0.push((key.to_owned(), value)),
        }
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<ParamValue>) -> Self {
        self.set(key, value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&ParamValue> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn extend(&mut self, other: &Params) {
        for (k, v) in &other.0 {
            self.set(k, v.clone());
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ParamValue)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    pub l2: f64,
    pub linf: f64,
    /// Optional extra L^p norm as (p, value).
    pub lp: Option<(f64, f64)>,
}

/// A named residual field with its norms and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub operator: String,
    pub field: SampledField,
    pub norms: Norms,
    pub max_location: ComplexPoint,
    pub max_abs: f64,
    pub params: Params,
}

impl ResidualReport {
    pub fn from_field(operator: &str, field: SampledField, params: Params) -> Result<Self> {
        let l2 = field.norm(2.0)?.value;
        let linf = field.norm(f64::INFINITY)?.value;
        let (max_location, max_abs) = field
            .argmax()
            .ok_or_else(|| Error::InvalidParameter("report field has no valid cells".into()))?;
        Ok(ResidualReport {
            operator: operator.to_owned(),
            field,
            norms: Norms { l2, linf, lp: None },
            max_location,
            max_abs,
            params,
        })
    }

    /// Adds an L^p norm to the report.
    pub fn with_lp(mut self, p: f64) -> Result<Self> {
        let v = self.field.norm(p)?.value;
        self.norms.lp = Some((p, v));
        Ok(self)
    }

    pub fn grid(&self) -> &GridDomain {
        self.field.grid()
    }

    pub fn linf(&self) -> f64 {
        self.norms.linf
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = JsonReport {
            operator: &self.operator,
            grid: JsonGrid(self.grid(), self.field.valid_count()),
            norms: JsonNorms(&self.norms),
            max: JsonMax(self.max_location, self.max_abs),
            params: JsonParams(&self.params),
        };
        let mut s = serde_json::to_string_pretty(&doc)
            .map_err(|e| Error::InvalidParameter(format!("report encoding: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn write_json(&self, out: &mut dyn Write) -> Result<()> {
        out.write_all(self.to_json()?.as_bytes())?;
        Ok(())
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        write_field_csv(&self.field, out)
    }
}

/// Formats a float with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn raw(v: f64) -> std::result::Result<Box<RawValue>, String> {
    if !v.is_finite() {
        return Err(format!("non-finite value {v} in report"));
    }
    RawValue::from_string(fmt17(v)).map_err(|e| e.to_string())
}

struct F17(f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        raw(self.0).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    operator: &'a str,
    grid: JsonGrid<'a>,
    norms: JsonNorms<'a>,
    max: JsonMax,
    params: JsonParams<'a>,
}

struct JsonGrid<'a>(&'a GridDomain, usize);

impl Serialize for JsonGrid<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let g = self.0;
        let mut m = s.serialize_map(None)?;
        match *g.shape() {
            Shape::Rect {
                x_min,
                x_max,
                y_min,
                y_max,
            } => {
                m.serialize_entry("shape", "rect")?;
                m.serialize_entry("nx", &g.nx())?;
                m.serialize_entry("ny", &g.ny())?;
                m.serialize_entry("x_min", &F17(x_min))?;
                m.serialize_entry("x_max", &F17(x_max))?;
                m.serialize_entry("y_min", &F17(y_min))?;
                m.serialize_entry("y_max", &F17(y_max))?;
            }
            Shape::Disk { center, radius } => {
                m.serialize_entry("shape", "disk")?;
                m.serialize_entry("nx", &g.nx())?;
                m.serialize_entry("ny", &g.ny())?;
                m.serialize_entry("cx", &F17(center.x))?;
                m.serialize_entry("cy", &F17(center.y))?;
                m.serialize_entry("radius", &F17(radius))?;
            }
        }
        m.serialize_entry("cell_area", &F17(g.cell_area()))?;
        m.serialize_entry("valid_cells", &self.1)?;
        m.end()
    }
}

struct JsonNorms<'a>(&'a Norms);

impl Serialize for JsonNorms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("l2", &F17(self.0.l2))?;
        m.serialize_entry("linf", &F17(self.0.linf))?;
        if let Some((p, v)) = self.0.lp {
            m.serialize_entry("p", &F17(p))?;
            m.serialize_entry("lp", &F17(v))?;
        }
        m.end()
    }
}

struct JsonMax(ComplexPoint, f64);

impl Serialize for JsonMax {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("x", &F17(self.0.x))?;
        m.serialize_entry("y", &F17(self.0.y))?;
        m.serialize_entry("abs", &F17(self.1))?;
        m.end()
    }
}

struct JsonParams<'a>(&'a Params);

impl Serialize for JsonParams<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        for (k, v) in self.0.iter() {
            match v {
                ParamValue::Text(t) => m.serialize_entry(k, t)?,
                ParamValue::Number(x) => m.serialize_entry(k, &F17(*x))?,
                ParamValue::Int(i) => m.serialize_entry(k, i)?,
                ParamValue::Bool(b) => m.serialize_entry(k, b)?,
            }
        }
        m.end()
    }
}

/// Named complex values at one point, for operations that do not sweep a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PointReport {
    pub operator: String,
    pub at: ComplexPoint,
    pub values: Vec<(String, Complex64)>,
    pub params: Params,
}

impl PointReport {
    pub fn new(operator: &str, at: ComplexPoint, params: Params) -> Self {
        PointReport {
            operator: operator.to_owned(),
            at,
            values: Vec::new(),
            params,
        }
    }

    pub fn with(mut self, name: &str, v: Complex64) -> Self {
        self.values.push((name.to_owned(), v));
        self
    }

    pub fn get(&self, name: &str) -> Option<Complex64> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|(_, v)| v.re.is_finite() && v.im.is_finite())
    }

    /// JSON with keys `operator`, `at`, `values`, `params`.
    pub fn to_json(&self) -> Result<String> {
        let doc = JsonPoint(self);
        let mut s = serde_json::to_string_pretty(&doc)
            .map_err(|e| Error::InvalidParameter(format!("report encoding: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    /// CSV with header `name,re,im,abs`.
    pub fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(["name", "re", "im", "abs"]).map_err(io)?;
        for (n, v) in &self.values {
            w.write_record([n.clone(), fmt17(v.re), fmt17(v.im), fmt17(v.norm())])
                .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}

struct JsonPoint<'a>(&'a PointReport);

struct JsonComplex(Complex64);

impl Serialize for JsonComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("re", &F17(self.0.re))?;
        m.serialize_entry("im", &F17(self.0.im))?;
        m.end()
    }
}

struct JsonValues<'a>(&'a [(String, Complex64)]);

impl Serialize for JsonValues<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (n, v) in self.0 {
            m.serialize_entry(n, &JsonComplex(*v))?;
        }
        m.end()
    }
}

impl Serialize for JsonPoint<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.0;
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("operator", &r.operator)?;
        m.serialize_entry("at", &JsonComplex(r.at.z()))?;
        m.serialize_entry("values", &JsonValues(&r.values))?;
        m.serialize_entry("params", &JsonParams(&r.params))?;
        m.end()
    }
}

/// CSV dump with header `x,y,re,im,abs`, one row per valid cell, row-major.
pub fn write_field_csv(field: &SampledField, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["x", "y", "re", "im", "abs"]).map_err(io)?;
    for (p, v) in field.valid() {
        w.write_record([
            fmt17(p.x),
            fmt17(p.y),
            fmt17(v.re),
            fmt17(v.im),
            fmt17(v.norm()),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
