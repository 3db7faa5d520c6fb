//! JSON output of every subcommand except `verify-paper`, which prints the
//! catalog's verification report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// `hf`: Hilbert function of an inverse system, or the local Hilbert
/// function of an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfOutput {
    pub kind: String,
    pub vars: usize,
    pub hilbert_function: Vec<usize>,
    pub colength: usize,
}

/// One graded piece of an apolar ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApolarPiece {
    pub degree: u32,
    pub dim: usize,
    pub minimal_generators: usize,
    pub basis: Vec<String>,
}

/// `apolar`: the apolar ideal of an inverse system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApolarOutput {
    pub vars: usize,
    pub colength: usize,
    pub pieces: Vec<ApolarPiece>,
    pub generators: Vec<String>,
}

/// `socle`: socle dimension, split by degree for homogeneous inverse systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleOutput {
    pub vars: usize,
    pub dimension: usize,
    pub by_degree: Option<BTreeMap<u32, usize>>,
}

/// `algebra`: the quotient algebra and its multiplication matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraOutput {
    pub kind: String,
    pub vars: usize,
    pub colength: usize,
    pub local: bool,
    pub hilbert_function: Option<Vec<usize>>,
    pub standard_monomials: Vec<String>,
    pub generators: Vec<String>,
    /// Row-major entries of `a_i` acting on the standard monomials.
    pub matrices: Vec<Vec<String>>,
}

/// `tangent`: tangent space of the commuting variety at a tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentOutput {
    pub n: usize,
    pub d: usize,
    pub shape: Option<String>,
    pub tangent_dim: usize,
    pub principal_component_dim: usize,
    pub hilb_tangent_dim: Option<usize>,
}

/// `stable`: whether a vector generates the whole space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableOutput {
    pub n: usize,
    pub d: usize,
    pub stable: bool,
    pub vector: Option<Vec<String>>,
}

/// Colength of one ray fiber; `None` when it could not be certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaySample {
    pub lambda: String,
    pub colength: Option<usize>,
}

/// One ray fiber in full.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayFiber {
    pub lambda: String,
    pub family: String,
    pub colength: usize,
    pub generators: Vec<String>,
}

/// `ray`: ray order, decomposition and fiber colengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayOutput {
    pub vars: usize,
    pub direction: usize,
    pub ray_order: u32,
    pub colength: usize,
    pub q: String,
    pub j_generators: Vec<String>,
    pub upper: Vec<RaySample>,
    pub lower: Vec<RaySample>,
    pub upper_flat: bool,
    pub fibers: Vec<RayFiber>,
}

/// `init-ideal` and `intersect`: a resulting ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealOutput {
    pub vars: usize,
    pub colength: usize,
    pub local: bool,
    pub hilbert_function: Option<Vec<usize>>,
    pub generators: Vec<String>,
    /// Colengths of the intersected components, for `intersect`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<usize>,
}
