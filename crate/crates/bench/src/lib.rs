//! Benchmark inputs shared by the criterion targets.

use artinian::apolarity::InverseSystem;
use artinian::catalog::embedded_source;
use artinian::catalog::payload::MatrixTuplePayload;
use artinian::commuting::CommutingTuple;
use artinian::exactalg::{int, Matrix};
use artinian::ideals::FiniteIdeal;
use artinian::random::{rng, small_scalar};

/// A dense `d x d` matrix with small random integer entries.
#[must_use]
pub fn random_matrix(d: usize, seed: u64) -> Matrix {
    let mut r = rng(seed);
    Matrix::from_fn(d, d, |_, _| small_scalar(&mut r, 9))
}

/// The `(1,4,3)` inverse system in four variables.
#[must_use]
pub fn quadric_system() -> InverseSystem {
    InverseSystem::parse("x1*x2, x3*x4, x1*x3+x2*x4", 4).expect("valid system")
}

/// A degree-`k` form in `n` variables with a full divided-power expansion.
#[must_use]
pub fn power_sum(n: usize, k: u32) -> InverseSystem {
    let text: Vec<String> = (1..=n).map(|i| format!("x{i}^{k}")).collect();
    let mixed: Vec<String> = (1..n).map(|i| format!("x{i}*x{}^{}", i + 1, k - 1)).collect();
    InverseSystem::parse(&format!("{} + {}", text.join(" + "), mixed.join(" + ")), n).expect("valid form")
}

/// The commuting tuple stored in an embedded fixture.
#[must_use]
pub fn fixture_tuple(id: &str) -> CommutingTuple {
    let source = embedded_source(&format!("{id}.json")).expect("embedded fixture");
    let value: serde_json::Value = serde_json::from_str(source).expect("fixture JSON");
    let payload: MatrixTuplePayload = serde_json::from_value(value["payload"].clone()).expect("tuple payload");
    payload.build().expect("buildable").tuple(&int(1), None).expect("commuting tuple")
}

/// The ideal of `n` distinct points on the moment curve.
#[must_use]
pub fn moment_points(n: usize, count: i64) -> Vec<FiniteIdeal> {
    (1..=count).map(|t| FiniteIdeal::point(&(1..=n as u32).map(|k| int(t.pow(k))).collect::<Vec<_>>())).collect()
}

#[cfg(test)]
mod tests {
    use artinian::apolarity::hilbert_function;

    use super::*;

    #[test]
    fn inputs_build() {
        assert_eq!(hilbert_function(&quadric_system()).values(), &[1, 4, 3]);
        assert_eq!(fixture_tuple("prop_smooth1nr1").d(), 10);
        assert_eq!(random_matrix(5, 1).rows(), 5);
        assert!(power_sum(3, 3).is_homogeneous());
        let pts = moment_points(3, 4);
        let all = pts[1..].iter().fold(pts[0].clone(), |acc, p| acc.intersect(p).unwrap());
        assert_eq!(all.colength(), 4);
    }
}
