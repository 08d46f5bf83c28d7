use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, Subspace};
use crate::scalar::Scalar;

/// A complete flag `𝔤₁ ⊂ 𝔤₂ ⊂ … ⊂ 𝔤_n` with `dim 𝔤_i = i`, stored through an
/// adapted basis: `𝔤_i` is the span of the first `i` direction vectors.
///
/// Flags produced by [`jordan_holder_flag`] are chains of ideals. Flags loaded
/// from user input only need to be nested; whether every layer is an ideal is
/// recorded in [`Flag::is_ideal_chain`] and consulted by the algorithms that
/// rely on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag<S> {
    directions: Vec<Vec<S>>,
    layers: Vec<Subspace<S>>,
    ideal_chain: bool,
}

impl<S: Scalar> Flag<S> {
    pub fn from_directions(algebra: &LieAlgebra<S>, directions: Vec<Vec<S>>) -> Result<Self> {
        let n = algebra.dim();
        if directions.len() != n {
            return Err(Error::InvalidFlag(format!(
                "expected {n} direction vectors, found {}",
                directions.len()
            )));
        }
        let mut layers = Vec::with_capacity(n);
        for (i, d) in directions.iter().enumerate() {
            if d.len() != n {
                return Err(Error::FlagMismatch(format!(
                    "direction {i} has length {}, algebra dimension is {n}",
                    d.len()
                )));
            }
            let layer = Subspace::span(n, &directions[..=i]);
            if layer.dim() != i + 1 {
                return Err(Error::InvalidFlag(format!(
                    "direction {i} is linearly dependent on the previous ones"
                )));
            }
            layers.push(layer);
        }
        let mut ideal_chain = true;
        for layer in &layers {
            if !layer.is_ideal(algebra)? {
                ideal_chain = false;
                break;
            }
        }
        Ok(Self {
            directions,
            layers,
            ideal_chain,
        })
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.layers.len()
    }

    /// `𝔤_{i+1}` (0-based layer index).
    pub fn layer(&self, i: usize) -> &Subspace<S> {
        &self.layers[i]
    }

    /// The layer below layer `i` (`{0}` for `i = 0`).
    pub fn below(&self, i: usize) -> Subspace<S> {
        if i == 0 {
            Subspace::zero(self.ambient_dim())
        } else {
            self.layers[i - 1].clone()
        }
    }

    pub fn layers(&self) -> &[Subspace<S>] {
        &self.layers
    }

    /// The vector added at layer `i`.
    pub fn direction(&self, i: usize) -> &[S] {
        &self.directions[i]
    }

    pub fn directions(&self) -> &[Vec<S>] {
        &self.directions
    }

    pub fn is_ideal_chain(&self) -> bool {
        self.ideal_chain
    }

    pub fn check_algebra(&self, algebra: &LieAlgebra<S>) -> Result<()> {
        if self.ambient_dim() != algebra.dim() {
            return Err(Error::FlagMismatch(format!(
                "flag has dimension {}, algebra has dimension {}",
                self.ambient_dim(),
                algebra.dim()
            )));
        }
        Ok(())
    }
}

/// A flag of ideals refining the lower central series.
///
/// Working from `{0}` upwards through the lower central series, each term
/// `C_i` is reached by adding the echelon basis vectors of `C_i` that are not
/// yet in the span, highest pivot first. Any subspace between `C_{i+1}` and
/// `C_i` is an ideal, so every layer passes the ideal check.
pub fn jordan_holder_flag<S: Scalar>(algebra: &LieAlgebra<S>) -> Flag<S> {
    let n = algebra.dim();
    let series = algebra.lower_central_series();
    let mut directions: Vec<Vec<S>> = Vec::with_capacity(n);
    let mut current = Subspace::zero(n);
    for term in series.iter().rev().skip(1) {
        for candidate in term.basis().into_iter().rev() {
            if current.contains(&candidate) {
                continue;
            }
            directions.push(candidate);
            current = Subspace::span(n, &directions);
            debug_assert!(current.is_ideal(algebra).unwrap_or(false));
        }
    }
    Flag::from_directions(algebra, directions).expect("lower central series yields a complete flag")
}
