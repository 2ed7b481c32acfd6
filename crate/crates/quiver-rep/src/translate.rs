use complexes::{dual_complex, ProjComplex};
use path_algebra::Algebra;

use exact_linalg::Scalar;

use crate::modules::{hom_matrix_morphism, injective, projective};
use crate::rep::arrow_ends;
use crate::resolve::presentation;
use crate::{hom_rep, RepError, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `τ`
    Forward,
    /// `τ⁻¹`
    Inverse,
}

/// `D M = Hom_k(M, k)` as a module over `to`, the opposite of `from`.
pub fn dual_rep<F: Scalar>(from: &Algebra<F>, to: &Algebra<F>, m: &Representation<F>) -> Representation<F> {
    let _ = from;
    Representation::new_unchecked(
        m.dims().to_vec(),
        arrow_ends(to),
        m.maps().iter().map(|a| a.transpose()).collect(),
    )
}

/// `Tr M` over `op`, the cokernel of the dual of a minimal presentation.
fn transpose<F: Scalar>(
    alg: &Algebra<F>,
    op: &Algebra<F>,
    m: &Representation<F>,
) -> Representation<F> {
    let res = presentation(alg, m).complex;
    let pres = ProjComplex::new_unchecked(-1, vec![res.cell(-1).to_vec(), res.cell(0).to_vec()], vec![res.diff(alg, -1)]);
    let dual = dual_complex(alg, op, &pres);
    let (c0, c1) = (dual.cell(0).to_vec(), dual.cell(1).to_vec());
    let target = projective(op, &c1);
    let d = hom_matrix_morphism(op, &dual.diff(op, 0), &c0, &c1);
    let image = d.image(&target);
    image.quotient(&target).0
}

/// `τ M = D Tr M` or `τ⁻¹ M = Tr D M`; `op` is the opposite algebra.
pub fn ar_translate_mod<F: Scalar>(
    alg: &Algebra<F>,
    op: &Algebra<F>,
    m: &Representation<F>,
    direction: Direction,
) -> Result<Representation<F>, RepError> {
    let nv = alg.vertex_count();
    match direction {
        Direction::Forward => {
            if (0..nv).any(|v| has_projective_summand(alg, m, v)) {
                return Err(RepError::ProjectiveSummand);
            }
            Ok(dual_rep(op, alg, &transpose(alg, op, m)))
        }
        Direction::Inverse => {
            if (0..nv).any(|v| has_injective_summand(alg, m, v)) {
                return Err(RepError::InjectiveSummand);
            }
            Ok(transpose(op, alg, &dual_rep(alg, op, m)))
        }
    }
}

/// Whether `P_v` is a direct summand: some `M -> P_v` is onto.
pub fn has_projective_summand<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, v: usize) -> bool {
    let p = projective(alg, &[v]);
    let top = alg.block(v, v).iter().position(|&b| b == alg.trivial_index(v)).expect("trivial path");
    hom_rep(alg, m, &p)
        .iter()
        .any(|g| g.comps[v].row(top).iter().any(|x| !x.is_zero()))
}

/// Whether `I_v` is a direct summand: some `I_v -> M` is nonzero on the socle.
pub fn has_injective_summand<F: Scalar>(alg: &Algebra<F>, m: &Representation<F>, v: usize) -> bool {
    let i = injective(alg, &[v]);
    let soc = alg.block(v, v).iter().position(|&b| b == alg.trivial_index(v)).expect("trivial path");
    hom_rep(alg, &i, m)
        .iter()
        .any(|f| f.comps[v].column(soc).iter().any(|x| !x.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{a3_hereditary, a5};
    use crate::{find_isomorphism, projective_cover, simple};

    type Q = exact_linalg::Rational;

    fn try_tau(alg: &Algebra<Q>, m: &Representation<Q>, d: Direction) -> Result<Representation<Q>, RepError> {
        ar_translate_mod(alg, &alg.opposite().unwrap(), m, d)
    }

    fn tau(alg: &Algebra<Q>, m: &Representation<Q>, d: Direction) -> Representation<Q> {
        try_tau(alg, m, d).unwrap()
    }

    #[test]
    fn tau_inverse_of_p1() {
        let alg = a5();
        let p1 = projective(&alg, &[0]);
        let m = tau(&alg, &p1, Direction::Inverse);
        assert_eq!(m.total_dim(), projective(&alg, &[1]).total_dim() - p1.total_dim());
        assert_eq!(projective_cover(&alg, &m).0, vec![1]);
        let back = tau(&alg, &m, Direction::Forward);
        assert!(find_isomorphism(&alg, &back, &p1).is_some());
        let again = tau(&alg, &back, Direction::Inverse);
        assert!(find_isomorphism(&alg, &again, &m).is_some());
    }

    #[test]
    fn preconditions_enforced() {
        let alg = a5();
        for v in 0..5 {
            let p = projective(&alg, &[v]);
            assert_eq!(try_tau(&alg, &p, Direction::Forward), Err(RepError::ProjectiveSummand));
            let i = injective(&alg, &[v]);
            assert_eq!(try_tau(&alg, &i, Direction::Inverse), Err(RepError::InjectiveSummand));
        }
    }

    #[test]
    fn translates_of_slice_modules() {
        // τ⁻¹P_k = P_(k+1) / P_1 for k = 1, 2, 3.
        let alg = a5();
        for k in 0..3 {
            let m = tau(&alg, &projective(&alg, &[k]), Direction::Inverse);
            let mut dims = vec![0; 5];
            for d in dims.iter_mut().take(k + 2).skip(1) {
                *d = 1;
            }
            assert_eq!(m.dims(), &dims[..]);
            assert_eq!(projective_cover(&alg, &m).0, vec![k + 1]);
        }
    }

    #[test]
    fn hereditary_tau_inverse_s1() {
        // 1 <- 2 <- 3: the AR sequence 0 -> S1 -> P2 -> S2 -> 0 gives τ⁻¹ S1 = S2.
        let alg = a3_hereditary();
        let m = tau(&alg, &simple(&alg, 0), Direction::Inverse);
        assert!(find_isomorphism(&alg, &m, &simple(&alg, 1)).is_some());
    }

    #[test]
    fn summand_detection() {
        let alg = a5();
        let m = simple(&alg, 1).direct_sum(&projective(&alg, &[3]));
        assert!(has_projective_summand(&alg, &m, 3));
        assert!(!has_projective_summand(&alg, &m, 1));
        assert!(has_injective_summand(&alg, &injective(&alg, &[2]), 2));
        assert!(!has_injective_summand(&alg, &projective(&alg, &[4]), 4));
        // S1 = P1 is projective, S5 = I5 is injective.
        assert!(has_projective_summand(&alg, &simple(&alg, 0), 0));
        assert!(has_injective_summand(&alg, &simple(&alg, 4), 4));
    }
}
