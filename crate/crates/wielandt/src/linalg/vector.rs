//! Dense complex vectors.
//!
//! Entries are `num_complex::Complex<f64>`. Public constructors reject NaN
//! and infinity so that downstream routines can assume finite data.

use crate::error::{Error, Result};
use num_complex::Complex;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use std::ops::{Add, Index, Neg, Sub};

/// Complex scalar used throughout the crate.
pub type Complex64 = Complex<f64>;

/// Dense column vector over the complex numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    data: Vec<Complex64>,
}

impl Vector {
    /// Builds a vector, rejecting empty or non-finite input.
    pub fn new(data: Vec<Complex64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::DimensionMismatch("empty vector".into()));
        }
        for (k, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite(format!("vector entry {k} = {z}")));
            }
        }
        Ok(Self { data })
    }

    /// Builds a vector from real entries.
    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Zero vector of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "dimension must be positive");
        Self { data: vec![Complex64::ZERO; n] }
    }

    /// Standard basis vector `e_k` in dimension `n`.
    pub fn basis(n: usize, k: usize) -> Self {
        assert!(k < n, "basis index {k} out of range for dimension {n}");
        let mut v = Self::zeros(n);
        v.data[k] = Complex64::ONE;
        v
    }

    /// Builds a vector entry by entry. The closure is trusted to return
    /// finite values.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        assert!(n > 0, "dimension must be positive");
        Self { data: (0..n).map(f).collect() }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one entry
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.data.iter()
    }

    /// True when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// True when `self == other` entrywise (exact floating comparison).
    pub fn same_entries(&self, other: &Vector) -> bool {
        self.data == other.data
    }

    /// True when `self == -other` entrywise (exact floating comparison).
    pub fn negated_entries(&self, other: &Vector) -> bool {
        self.len() == other.len()
            && self
                .iter()
                .zip(other.iter())
                .all(|(a, b)| a.re == -b.re && a.im == -b.im)
    }

    /// Scalar multiple `z * self`.
    pub fn scaled(&self, z: Complex64) -> Vector {
        Vector { data: self.data.iter().map(|w| z * w).collect() }
    }

    /// Euclidean norm, used only to normalize random samples; metric norms
    /// go through a Gram matrix.
    pub fn euclid_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Index<usize> for Vector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.data[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector dimensions differ");
        Vector::from_fn(self.len(), |i| self.data[i] + rhs.data[i])
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector dimensions differ");
        Vector::from_fn(self.len(), |i| self.data[i] - rhs.data[i])
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector { data: self.data.iter().map(|z| -z).collect() }
    }
}

/// Reports are serialized with every complex entry as an `[re, im]` pair.
impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.data.len()))?;
        for z in &self.data {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }
}
