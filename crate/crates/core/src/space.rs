use std::collections::HashSet;
use std::fmt;

use sdias_linalg::{Scalar, SparseVector};

use crate::CoreError;

/// An element of Z₂.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Result<Self, CoreError> {
        match bit {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(CoreError::BadParity(bit.to_string())),
        }
    }

    pub fn from_bool(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Product in Z₂, i.e. the exponent of `(−1)^{|a||b|}`.
    pub fn times(self, other: Parity) -> Parity {
        Parity::from_bool(self.is_odd() && other.is_odd())
    }

    /// `(−1)^self` as ±1.
    pub fn sign(self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn sign_scalar(self) -> Scalar {
        Scalar::from_int(self.sign())
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bool(self.is_odd() != rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// `(−1)^{|a||b|}` as ±1.
pub fn koszul(a: Parity, b: Parity) -> i64 {
    a.times(b).sign()
}

/// Parity of a vector relative to a graded basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VectorParity {
    Zero,
    Homogeneous(Parity),
    Mixed,
}

/// A finite-dimensional Z₂-graded space with an ordered homogeneous basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperSpace {
    name: String,
    labels: Vec<String>,
    parities: Vec<Parity>,
}

impl SuperSpace {
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        parities: Vec<Parity>,
    ) -> Result<Self, CoreError> {
        if labels.len() != parities.len() {
            return Err(CoreError::DimensionMismatch {
                expected: labels.len(),
                found: parities.len(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(CoreError::DuplicateLabel(l.clone()));
            }
        }
        Ok(SuperSpace {
            name: name.into(),
            labels,
            parities,
        })
    }

    /// Space with labels `prefix0, prefix1, ...`.
    pub fn numbered(name: impl Into<String>, prefix: &str, parities: Vec<Parity>) -> Self {
        let labels = (0..parities.len()).map(|i| format!("{prefix}{i}")).collect();
        SuperSpace::new(name, labels, parities).expect("numbered labels are distinct")
    }

    pub fn empty(name: impl Into<String>) -> Self {
        SuperSpace {
            name: name.into(),
            labels: Vec::new(),
            parities: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vector_parity(&self, v: &SparseVector) -> VectorParity {
        let mut found: Option<Parity> = None;
        for i in v.support() {
            let p = self.parities[i];
            match found {
                None => found = Some(p),
                Some(q) if q != p => return VectorParity::Mixed,
                _ => {}
            }
        }
        found.map_or(VectorParity::Zero, VectorParity::Homogeneous)
    }

    /// Basis of ordered pairs `(i, i')`, flattened as `i * other.dim() + i'`.
    pub fn tensor(&self, other: &SuperSpace) -> SuperSpace {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        let mut parities = Vec::with_capacity(self.dim() * other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                labels.push(format!("{}⊗{}", self.labels[i], other.labels[j]));
                parities.push(self.parities[i] + other.parities[j]);
            }
        }
        SuperSpace {
            name: format!("{}⊗{}", self.name, other.name),
            labels,
            parities,
        }
    }

    /// Concatenation of bases; labels of `other` are kept unless they clash.
    pub fn direct_sum(&self, other: &SuperSpace, name: impl Into<String>) -> SuperSpace {
        let mut labels = self.labels.clone();
        let taken: HashSet<&str> = self.labels.iter().map(String::as_str).collect();
        for l in &other.labels {
            if taken.contains(l.as_str()) {
                labels.push(format!("{l}'"));
            } else {
                labels.push(l.clone());
            }
        }
        let mut parities = self.parities.clone();
        parities.extend_from_slice(&other.parities);
        SuperSpace::new(name, labels, parities).expect("direct sum labels are distinct")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
        assert_eq!(koszul(Parity::Odd, Parity::Odd), -1);
        assert_eq!(koszul(Parity::Odd, Parity::Even), 1);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let r = SuperSpace::new("x", vec!["a".into(), "a".into()], vec![Parity::Even; 2]);
        assert!(matches!(r, Err(CoreError::DuplicateLabel(_))));
    }

    #[test]
    fn tensor_parities() {
        let l = SuperSpace::new("L", vec!["1".into(), "t".into()], vec![Parity::Even, Parity::Odd]).unwrap();
        let t = l.tensor(&l);
        assert_eq!(t.dim(), 4);
        assert_eq!(t.parities(), &[Parity::Even, Parity::Odd, Parity::Odd, Parity::Even]);
        assert_eq!(t.label(3), "t⊗t");
    }

    #[test]
    fn vector_parity() {
        let l = SuperSpace::new("L", vec!["1".into(), "t".into()], vec![Parity::Even, Parity::Odd]).unwrap();
        let one = Scalar::one();
        assert_eq!(l.vector_parity(&SparseVector::zero(2)), VectorParity::Zero);
        assert_eq!(
            l.vector_parity(&SparseVector::unit(2, 1)),
            VectorParity::Homogeneous(Parity::Odd)
        );
        let mixed = SparseVector::from_pairs(2, [(0, one.clone()), (1, one)]).unwrap();
        assert_eq!(l.vector_parity(&mixed), VectorParity::Mixed);
    }
}
