//! JSON wire formats for points, cubes and paths.
//!
//! Reals are written with the shortest digit string (at most 17 significant
//! digits) that parses back to the same `f64`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;
use thiserror::Error;

use crate::complex::{ComplexError, Cube, Point};
use crate::geodesic::GeodesicPath;
use crate::pip::{Pip, PipError, RawPip};

#[derive(Error, Debug)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Pip(#[from] PipError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A real that serializes losslessly with at most 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct Real(pub f64);

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real(x)
    }
}

/// Plain decimal for exponents in `[-5, 16]`, exponent form otherwise.
/// Non-finite values become `null`.
pub fn format_real(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let sci = format!("{:e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    if (-5..=16).contains(&exp) {
        let (int, frac) = if exp >= 0 {
            let cut = exp as usize + 1;
            let padded = format!("{digits:0<cut$}");
            (padded[..cut].to_string(), padded[cut..].to_string())
        } else {
            ("0".to_string(), format!("{}{digits}", "0".repeat((-exp - 1) as usize)))
        };
        let frac = if frac.is_empty() { "0".to_string() } else { frac };
        format!("{sign}{int}.{frac}")
    } else {
        let (lead, rest) = digits.split_at(1);
        let rest = if rest.is_empty() { "0" } else { rest };
        format!("{sign}{lead}.{rest}e{exp}")
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawValue::from_string(format_real(self.0)).map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Real(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

/// `{"coords":{"1":0.2}}`; absent keys mean 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub coords: BTreeMap<String, Real>,
}

impl PointJson {
    pub fn from_point(pip: &Pip, x: &Point) -> Self {
        PointJson { coords: x.to_named(pip).into_iter().map(|(k, v)| (k, Real(v))).collect() }
    }

    pub fn to_point(&self, pip: &Pip) -> Result<Point, JsonError> {
        let named: BTreeMap<String, f64> = self.coords.iter().map(|(k, v)| (k.clone(), v.0)).collect();
        Ok(Point::from_named(pip, &named)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeJson {
    pub ideal: Vec<String>,
    pub free: Vec<String>,
}

impl CubeJson {
    pub fn from_cube(pip: &Pip, c: &Cube) -> Self {
        CubeJson { ideal: pip.names_of(c.ideal()), free: pip.names_of(c.free()) }
    }

    pub fn to_cube(&self, pip: &Pip) -> Result<Cube, JsonError> {
        Ok(Cube::from_names(pip, &self.ideal, &self.free)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathJson {
    pub length: Real,
    pub breakpoints: Vec<PointJson>,
    pub cubes: Vec<CubeJson>,
    pub certified: bool,
    pub zero_tension_residual: Real,
    pub iterations: usize,
}

impl PathJson {
    pub fn from_path(pip: &Pip, p: &GeodesicPath) -> Self {
        PathJson {
            length: Real(p.length),
            breakpoints: p.breakpoints.iter().map(|b| PointJson::from_point(pip, b)).collect(),
            cubes: p.cubes.iter().map(|c| CubeJson::from_cube(pip, c)).collect(),
            certified: p.certificate.certified,
            zero_tension_residual: Real(p.certificate.zero_tension_residual),
            iterations: p.iterations,
        }
    }
}

/// Parses and validates a PIP.
pub fn parse_pip(text: &str) -> Result<Pip, JsonError> {
    let raw: RawPip = serde_json::from_str(text)?;
    Ok(Pip::new(&raw)?)
}

/// Canonical form: elements sorted, cover and inconsistent pairs sorted.
pub fn pip_to_json(pip: &Pip) -> String {
    serde_json::to_string(&pip.to_raw()).expect("RawPip serializes")
}

pub fn parse_point(pip: &Pip, text: &str) -> Result<Point, JsonError> {
    serde_json::from_str::<PointJson>(text)?.to_point(pip)
}
