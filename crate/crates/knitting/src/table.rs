use exact_linalg::Scalar;
use path_algebra::Algebra;
use shapes::{classify, theorem2_shape, MorphClass, ShapeError, ShapeReport};

use crate::{ARComponent, KnitError};

/// Classes of all arrows and the shape matched by every mesh.
#[derive(Clone, Debug)]
pub struct ComponentTable {
    pub arrows: Vec<String>,
    pub meshes: Vec<ShapeReport>,
}

/// `u` smonic forces `v` sepic, `u` sepic forces `v` sirreducible, and `u`
/// sirreducible forces `v` smonic or sirreducible.
fn first_map_table<F>(u: &MorphClass<F>, v: &MorphClass<F>) -> bool {
    matches!(
        (u, v),
        (MorphClass::Smonic, MorphClass::Sepic)
            | (MorphClass::Sepic, MorphClass::Sirreducible { .. })
            | (MorphClass::Sirreducible { .. }, MorphClass::Smonic | MorphClass::Sirreducible { .. })
    )
}

pub fn classify_component_arrows<F: Scalar>(alg: &Algebra<F>, c: &ARComponent<F>) -> Result<ComponentTable, KnitError> {
    let mut arrows = Vec::with_capacity(c.arrows.len());
    for a in &c.arrows {
        arrows.push(classify(alg, &a.map)?.to_string());
    }
    let mut meshes = Vec::with_capacity(c.meshes.len());
    for m in &c.meshes {
        let t = &m.record.triangle;
        let u = classify(alg, &t.u)?;
        let v = classify(alg, &t.v)?;
        if !first_map_table(&u, &v) {
            return Err(ShapeError::ShapeViolation(format!(
                "mesh {} -> {}: u={u} v={v}",
                c.nodes[m.start].signature, c.nodes[m.end].signature
            ))
            .into());
        }
        meshes.push(theorem2_shape(alg, &u, t)?);
    }
    Ok(ComponentTable { arrows, meshes })
}
