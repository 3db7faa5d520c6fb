//! Hilbert function values `(H(0), H(1), ...)`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Hilbert function with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedProfile(Vec<usize>);

impl GradedProfile {
    #[must_use]
    pub fn new(mut values: Vec<usize>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        Self(values)
    }

    #[must_use]
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `H(i)`, zero past the end.
    #[must_use]
    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Sum of all values, the colength.
    #[must_use]
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Largest `i` with `H(i) > 0`.
    #[must_use]
    pub fn socle_degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
}

impl From<&[usize]> for GradedProfile {
    fn from(v: &[usize]) -> Self {
        Self::new(v.to_vec())
    }
}

impl fmt::Display for GradedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_formats() {
        let p = GradedProfile::new(vec![1, 4, 3, 0, 0]);
        assert_eq!(p.to_string(), "(1,4,3)");
        assert_eq!(p.total(), 8);
        assert_eq!(p.socle_degree(), Some(2));
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,4,3]");
    }
}
