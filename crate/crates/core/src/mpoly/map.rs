//! Rational maps `Pⁿ ⇢ Pᵐ` given by homogeneous coordinate polynomials.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::exact::QuadExt;

/// A point of projective space; equality is up to a nonzero scalar.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    pub coords: Vec<QuadExt>,
}

impl ProjPoint {
    pub fn new(coords: Vec<QuadExt>) -> Result<Self> {
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidParameter("projective point with all coordinates zero".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| QuadExt::from_int(c)).collect()).expect("nonzero point")
    }

    /// Coordinate point `e_i`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![QuadExt::zero(); n];
        v[i] = QuadExt::from_int(1);
        ProjPoint { coords: v }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Rescaled so the first nonzero coordinate is one.
    pub fn normalized(&self) -> Self {
        let k = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero point").clone();
        ProjPoint { coords: self.coords.iter().map(|c| c / &k).collect() }
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coords.len();
        n == other.coords.len() && (0..n).all(|i| (i + 1..n).all(|j| &self.coords[i] * &other.coords[j] == &self.coords[j] * &other.coords[i]))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cs.join(" : "))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Image {
    Point(ProjPoint),
    Indeterminate,
}

impl Image {
    pub fn point(&self) -> Option<&ProjPoint> {
        match self {
            Image::Point(p) => Some(p),
            Image::Indeterminate => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    coords: Vec<MultiPoly>,
}

impl RationalMap {
    /// Coordinates must share the source ring and be homogeneous of one degree.
    pub fn new(coords: Vec<MultiPoly>) -> Result<Self> {
        let first = coords.first().ok_or_else(|| Error::DimensionMismatch("map without coordinates".into()))?;
        let n = first.nvars();
        if coords.iter().any(|c| c.nvars() != n) {
            return Err(Error::DimensionMismatch("coordinates live in different rings".into()));
        }
        if coords.iter().all(MultiPoly::is_zero) {
            return Err(Error::InvalidParameter("all coordinates vanish identically".into()));
        }
        let d = coords.iter().find(|c| !c.is_zero()).unwrap().degree();
        if coords.iter().any(|c| !c.is_zero() && (!c.is_homogeneous() || c.degree() != d)) {
            return Err(Error::InvalidParameter("coordinates are not homogeneous of one degree".into()));
        }
        Ok(RationalMap { coords })
    }

    pub fn identity(nvars: usize) -> Self {
        RationalMap { coords: (0..nvars).map(|i| MultiPoly::var(nvars, i)).collect() }
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    /// Number of homogeneous source variables (`n + 1` for `Pⁿ`).
    pub fn source_vars(&self) -> usize {
        self.coords[0].nvars()
    }

    pub fn target_vars(&self) -> usize {
        self.coords.len()
    }

    pub fn degree(&self) -> u32 {
        self.coords.iter().map(MultiPoly::degree).max().unwrap_or(0)
    }

    /// `outer ∘ inner` by substitution, not reduced.
    pub fn compose(outer: &RationalMap, inner: &RationalMap) -> Result<RationalMap> {
        if outer.source_vars() != inner.target_vars() {
            return Err(Error::DimensionMismatch(format!("outer map takes {} variables, inner map yields {}", outer.source_vars(), inner.target_vars())));
        }
        RationalMap::new(outer.coords.iter().map(|c| c.substitute(&inner.coords)).collect())
    }

    /// Parallel variant of [`compose`](Self::compose), one task per outer coordinate.
    pub fn compose_with(outer: &RationalMap, inner: &RationalMap, exec: crate::par::Execution) -> Result<RationalMap> {
        if outer.source_vars() != inner.target_vars() {
            return Self::compose(outer, inner);
        }
        let coords = crate::par::map_slice(exec, &outer.coords, |c| c.substitute(&inner.coords));
        RationalMap::new(coords)
    }

    pub fn eval_raw(&self, p: &[QuadExt]) -> Vec<QuadExt> {
        self.coords.iter().map(|c| c.eval(p)).collect()
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Result<Image> {
        if p.dim() != self.source_vars() {
            return Err(Error::DimensionMismatch("point dimension".into()));
        }
        let v = self.eval_raw(&p.coords);
        Ok(if v.iter().all(Zero::is_zero) { Image::Indeterminate } else { Image::Point(ProjPoint { coords: v }) })
    }

    /// Same map up to a global scalar: coordinates pairwise proportional with one ratio.
    pub fn same_as(&self, other: &RationalMap) -> bool {
        if self.coords.len() != other.coords.len() || self.source_vars() != other.source_vars() {
            return false;
        }
        let Some(k) = self.coords.iter().position(|c| !c.is_zero()) else { return false };
        let (Some((m, a)), Some(b)) = (self.coords[k].leading(), other.coords[k].leading().map(|(_, c)| c.clone())) else {
            return false;
        };
        if other.coords[k].leading().map(|(om, _)| om) != Some(m) {
            return false;
        }
        let ratio = &b / a;
        self.coords.iter().zip(&other.coords).all(|(x, y)| x.scale(&ratio) == *y)
    }

    /// Scale so the leading coefficient of the first nonzero coordinate is one.
    pub fn normalized(&self) -> Self {
        let k = self.coords.iter().find(|c| !c.is_zero()).and_then(|c| c.leading()).map(|(_, c)| c.clone());
        match k {
            Some(k) => {
                let inv = crate::exact::Field::inv(&k);
                RationalMap { coords: self.coords.iter().map(|c| c.scale(&inv)).collect() }
            }
            None => self.clone(),
        }
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        RationalMap { coords: self.coords.iter().map(|c| c.scale(k)).collect() }
    }

    /// Divide every coordinate by `h`, which must divide all of them.
    pub fn divide_by(&self, h: &MultiPoly) -> Option<Self> {
        let coords = self.coords.iter().map(|c| c.exact_div(h)).collect::<Option<Vec<_>>>()?;
        Some(RationalMap { coords })
    }

    /// Determinant of the matrix of partial derivatives of the lift.
    pub fn jacobian_det(&self) -> Result<MultiPoly> {
        let n = self.source_vars();
        if self.target_vars() != n {
            return Err(Error::DimensionMismatch("Jacobian of a non-square map".into()));
        }
        let m: Vec<Vec<MultiPoly>> = self.coords.iter().map(|c| (0..n).map(|v| c.derivative(v)).collect()).collect();
        Ok(det(&m))
    }

    /// The induced map on the invariant hyperplane `{x_v = 0}`.
    pub fn restrict_to_plane(&self, v: usize) -> Result<RationalMap> {
        if v >= self.source_vars() || self.source_vars() != self.target_vars() {
            return Err(Error::DimensionMismatch("restriction index".into()));
        }
        let restricted: Vec<MultiPoly> = self.coords.iter().map(|c| c.set_var(v, &QuadExt::zero())).collect();
        if !restricted[v].is_zero() {
            return Err(Error::NotInvariant(v));
        }
        let coords = restricted.iter().enumerate().filter(|&(i, _)| i != v).map(|(_, c)| c.drop_var(v)).collect();
        RationalMap::new(coords)
    }
}

fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let nv = m[0][0].nvars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = MultiPoly::zero(nv);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].mul(&det(&minor));
        total = if j % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", cs.join(" : "))
    }
}

impl Serialize for RationalMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
