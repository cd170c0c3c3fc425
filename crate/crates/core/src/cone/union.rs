//! Complements of finite unions of polyhedral cones, and the single-set
//! existential representation of complete cones whose strict part is convex.

use crate::cone::{dual_cone, ConeH, ConeV, UnionConeV};
use crate::error::{Error, Result};
use crate::feasibility::{feasible, LinIneqSystem, Relation};
use crate::linalg::Vector;

/// Normal sets `N` such that the open cells `{x : <x, n> < 0 for n in N}`
/// are nonempty and cover the complement of `cone`. One normal is chosen per
/// part: a point escapes the union exactly when it violates some facet of
/// every part.
pub(crate) fn complement_cells(cone: &UnionConeV) -> Vec<Vec<Vector>> {
    let facets: Vec<Vec<Vector>> = cone.parts().iter().map(|p| p.to_h().normals().to_vec()).collect();
    let mut cells = Vec::new();
    let mut chosen = Vec::new();
    collect_cells(cone.dim(), &facets, &mut chosen, &mut cells);
    cells
}

fn collect_cells(dim: usize, facets: &[Vec<Vector>], chosen: &mut Vec<Vector>, out: &mut Vec<Vec<Vector>>) {
    let Some((first, rest)) = facets.split_first() else {
        out.push(chosen.clone());
        return;
    };
    for n in first {
        let fresh = !chosen.contains(n);
        if fresh {
            chosen.push(n.clone());
        }
        if open_cell_nonempty(dim, chosen, &[]) {
            collect_cells(dim, rest, chosen, out);
        }
        if fresh {
            chosen.pop();
        }
    }
}

/// Whether `{x : <x, n> < 0 for n in negative, <x, m> > 0 for m in positive}`
/// has a point.
fn open_cell_nonempty(dim: usize, negative: &[Vector], positive: &[Vector]) -> bool {
    let rows = negative
        .iter()
        .map(|n| (-n, Relation::Gt))
        .chain(positive.iter().map(|m| (m.clone(), Relation::Gt)))
        .collect();
    let sys = LinIneqSystem::new(dim, rows).expect("normals share the dimension");
    feasible(&sys).is_feasible()
}

/// Whether `C ∪ (-C)` covers the whole space.
pub fn union_is_complete(cone: &UnionConeV) -> bool {
    let cells = complement_cells(cone);
    // X \ (-C) is covered by the negated cells.
    cells
        .iter()
        .all(|f| cells.iter().all(|g| !open_cell_nonempty(cone.dim(), f, g)))
}

/// For a closed cone `C` with `C ∪ (-C) = X` and `D = C \ (-C)` convex,
/// returns a finite set `K` with `x ∈ C  <=>  <x, k> >= 0 for some k ∈ K`.
///
/// `K` is the generator set of the dual of the closure of `D`. The whole
/// space gets `K = {0}`.
pub fn justifiable_k(cone: &UnionConeV) -> Result<Vec<Vector>> {
    let dim = cone.dim();
    let cells = complement_cells(cone);
    if cells.is_empty() {
        return Ok(vec![Vector::zeros(dim)]);
    }
    for f in &cells {
        for g in &cells {
            if open_cell_nonempty(dim, f, g) {
                return Err(Error::precondition(
                    "completeness: C ∪ (-C) = X",
                    "some direction lies in neither C nor -C",
                ));
            }
        }
    }

    // D = X \ (-C) is the union of the open cells {x : <x, m> > 0, m in f}.
    let mut hull_generators = Vec::new();
    for f in &cells {
        hull_generators.extend(ConeH::new(dim, f.clone())?.to_v().generators().iter().cloned());
    }
    let hull = ConeV::new(dim, hull_generators)?;
    let k: Vec<Vector> = dual_cone(&hull).generators().to_vec();

    // D is convex iff the interior of its convex hull avoids -C.
    let interior_escapes = k.is_empty()
        || cone.parts().iter().any(|part| {
            let rows = k
                .iter()
                .map(|u| (u.clone(), Relation::Gt))
                .chain(part.to_h().normals().iter().map(|n| (-n, Relation::Ge)))
                .collect();
            let sys = LinIneqSystem::new(dim, rows).expect("normals share the dimension");
            feasible(&sys).is_feasible()
        });
    if interior_escapes {
        return Err(Error::precondition(
            "convexity of C \\ (-C)",
            "the strict part of the cone is not convex",
        ));
    }
    Ok(k)
}
