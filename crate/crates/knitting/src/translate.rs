use complexes::{dual_complex, minimize, ProjComplex};
use exact_linalg::Scalar;
use path_algebra::Algebra;
use quiver_rep::{min_proj_resolution, nakayama_complex, simple, Direction, RepError};
use shapes::is_indecomposable_k;

use crate::KnitError;

/// An algebra certified to have finite global dimension, with its opposite
/// for the inverse translate.
#[derive(Clone, Debug)]
pub struct Translator<F> {
    pub alg: Algebra<F>,
    pub op: Algebra<F>,
    pub max_len: usize,
    pub global_dimension: usize,
}

fn certify<F: Scalar>(alg: &Algebra<F>, max_len: usize) -> Result<usize, KnitError> {
    let mut gl = 0;
    for v in 0..alg.vertex_count() {
        match min_proj_resolution(alg, &simple(alg, v), max_len) {
            Ok(res) => gl = gl.max((-res.complex.lo()) as usize),
            Err(RepError::ResolutionTooLong(_)) => return Err(KnitError::InfiniteGlobalDimension { vertex: v, max_len }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(gl)
}

impl<F: Scalar> Translator<F> {
    /// Resolves every simple within `max_len` steps.
    pub fn new(alg: &Algebra<F>, max_len: usize) -> Result<Self, KnitError> {
        let global_dimension = certify(alg, max_len)?;
        Ok(Translator {
            alg: alg.clone(),
            op: alg.opposite()?,
            max_len,
            global_dimension,
        })
    }

    /// `νX`: `P_i ↦ I_i` termwise, projectively resolved and minimized.
    pub fn nakayama(&self, x: &ProjComplex<F>) -> Result<ProjComplex<F>, KnitError> {
        Ok(nakayama_complex(&self.alg, x, self.max_len)?)
    }

    fn nakayama_op(&self, x: &ProjComplex<F>) -> Result<ProjComplex<F>, KnitError> {
        Ok(nakayama_complex(&self.op, x, self.max_len)?)
    }

    /// `τX = νX[-1]`, and `τ⁻¹X = (τ_op X*)*` through the duality with the
    /// opposite algebra.
    pub fn tau(&self, x: &ProjComplex<F>, direction: Direction) -> Result<ProjComplex<F>, KnitError> {
        if !is_indecomposable_k(&self.alg, x) {
            return Err(KnitError::NotIndecomposable(x.name(&self.alg)));
        }
        self.tau_unchecked(x, direction)
    }

    pub(crate) fn tau_unchecked(&self, x: &ProjComplex<F>, direction: Direction) -> Result<ProjComplex<F>, KnitError> {
        let x = minimize(&self.alg, x).complex;
        Ok(match direction {
            Direction::Forward => self.nakayama(&x)?.shift(-1),
            Direction::Inverse => {
                let dual = dual_complex(&self.alg, &self.op, &x);
                let t = self.nakayama_op(&dual)?.shift(-1);
                dual_complex(&self.op, &self.alg, &t)
            }
        })
    }
}
