//! Representation families: finite families of finite dual-vector sets `K`,
//! with the induced cone `C_K = { x : every K has some y with <x, y> >= 0 }`.
//!
//! The canonical family of a cone, `{ G_x : x not in C }`, is infinite and is
//! never materialized. Operations that quantify over it take explicit lists
//! of non-members or sample points; sample adequacy is heuristic (boundary
//! rays, interior points and non-members should all be present).
//!
//! The whole space is represented by the convention family, flagged with
//! `whole_space`. An empty list of sets (vacuous quantifier) also denotes the
//! whole space and is normalized to the flag, as is the literal `{∅}`.

use num_traits::Signed;

use crate::cone::{member_v, ConeV};
use crate::error::{check_dim, Error, Result};
use crate::feasibility::{feasible, Feasibility, LinIneqSystem, Relation};
use crate::linalg::{check_all_dims, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepFamily {
    dim: usize,
    sets: Vec<Vec<Vector>>,
    whole_space: bool,
}

impl RepFamily {
    pub fn new(dim: usize, sets: Vec<Vec<Vector>>) -> Result<Self> {
        if sets.is_empty() || (sets.len() == 1 && sets[0].is_empty()) {
            return Ok(Self::whole_space(dim));
        }
        for set in &sets {
            if set.is_empty() {
                return Err(Error::precondition(
                    "nonempty inner sets",
                    "an empty set is only allowed as the whole-space convention {∅}",
                ));
            }
            check_all_dims(dim, set)?;
        }
        Ok(RepFamily { dim, sets, whole_space: false })
    }

    pub fn whole_space(dim: usize) -> Self {
        RepFamily { dim, sets: Vec::new(), whole_space: true }
    }

    /// `{{d_1}, ..., {d_m}}` for the generators `d_i` of the dual of a closed
    /// convex cone; it represents that cone.
    pub fn singletons(dim: usize, vectors: &[Vector]) -> Result<Self> {
        Self::new(dim, vectors.iter().map(|v| vec![v.clone()]).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sets(&self) -> &[Vec<Vector>] {
        &self.sets
    }

    pub fn is_whole_space(&self) -> bool {
        self.whole_space
    }
}

/// `G_x = { y : <x, y> < 0 }` for a nonzero `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GxCone {
    x: Vector,
}

impl GxCone {
    pub fn new(x: Vector) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::precondition("x nonzero", "G_0 is empty"));
        }
        Ok(GxCone { x })
    }

    pub fn x(&self) -> &Vector {
        &self.x
    }

    pub fn contains(&self, y: &Vector) -> Result<bool> {
        check_dim(self.x.dim(), y.dim())?;
        Ok(self.x.dot(y).is_negative())
    }

    pub fn contains_all(&self, set: &[Vector]) -> Result<bool> {
        subset_of_gx(set, &self.x)
    }
}

pub fn family_member(family: &RepFamily, x: &Vector) -> Result<bool> {
    check_dim(family.dim, x.dim())?;
    if family.whole_space {
        return Ok(true);
    }
    Ok(family
        .sets
        .iter()
        .all(|set| set.iter().any(|y| !x.dot(y).is_negative())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    /// `x` pairs strictly negatively with every element of the set.
    NonTrivial { witness: Vector },
}

/// A set is trivial when it excludes no point: no `x` pairs strictly
/// negatively with all of its elements.
pub fn is_trivial(set: &[Vector]) -> Result<Triviality> {
    let Some(first) = set.first() else {
        return Err(Error::precondition("K nonempty", "triviality is defined for nonempty sets"));
    };
    let dim = first.dim();
    let sys = LinIneqSystem::new(dim, set.iter().map(|y| (-y, Relation::Gt)).collect())?;
    Ok(match feasible(&sys) {
        Feasibility::Infeasible => Triviality::Trivial,
        Feasibility::Witness(witness) => Triviality::NonTrivial { witness },
    })
}

/// Whether the whole set lies in `G_x`.
pub fn subset_of_gx(set: &[Vector], x: &Vector) -> Result<bool> {
    check_all_dims(x.dim(), set)?;
    Ok(set.iter().all(|y| x.dot(y).is_negative()))
}

fn hat_contains(family: &RepFamily, x: &Vector) -> bool {
    family
        .sets
        .iter()
        .any(|set| set.iter().all(|y| x.dot(y).is_negative()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HatComparison {
    Equal,
    /// `G_x` is in exactly one of the two hats.
    Differ { x: Vector },
}

/// Compares the hats of two families pointwise: for each sample `x`, whether
/// some set of the family fits inside `G_x`.
pub fn hat_equal_on_sample(f1: &RepFamily, f2: &RepFamily, sample: &[Vector]) -> Result<HatComparison> {
    check_dim(f1.dim, f2.dim)?;
    check_all_dims(f1.dim, sample)?;
    if sample.iter().any(Vector::is_zero) {
        return Err(Error::precondition("sample vectors nonzero", "G_0 is empty"));
    }
    for x in sample {
        if hat_contains(f1, x) != hat_contains(f2, x) {
            return Ok(HatComparison::Differ { x: x.clone() });
        }
    }
    Ok(HatComparison::Equal)
}

/// Extreme directions of the conic hull of a nontrivial set: an element is
/// kept unless it is a conic combination of the others.
fn hull_generators(dim: usize, set: &[Vector]) -> Vec<Vector> {
    let mut dirs: Vec<Vector> = set.iter().map(Vector::primitive).collect();
    dirs.sort();
    dirs.dedup();
    let mut keep: Vec<Vector> = Vec::new();
    for (i, d) in dirs.iter().enumerate() {
        let others: Vec<Vector> = dirs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, o)| o.clone())
            .collect();
        let rest = ConeV::new(dim, others).expect("dims checked");
        if !member_v(&rest, d).expect("dims checked") {
            keep.push(d.clone());
        }
    }
    keep
}

/// Drops trivial sets and replaces each remaining set by the extreme
/// generators of its conic hull. Family membership is unchanged.
pub fn normalize_family(family: &RepFamily) -> Result<RepFamily> {
    if family.whole_space {
        return Ok(family.clone());
    }
    let mut sets = Vec::new();
    for set in &family.sets {
        if is_trivial(set)? == Triviality::Trivial {
            continue;
        }
        sets.push(hull_generators(family.dim, set));
    }
    RepFamily::new(family.dim, sets)
}

/// Evaluates `for every x0 in nonmembers, G_{x0} has some y with <x, y> >= 0`.
/// Every listed vector must be rejected by `in_cone`.
pub fn kc_membership_test(
    in_cone: impl Fn(&Vector) -> bool,
    x: &Vector,
    nonmembers: &[Vector],
) -> Result<bool> {
    check_all_dims(x.dim(), nonmembers)?;
    for x0 in nonmembers {
        if in_cone(x0) {
            return Err(Error::precondition(
                "listed vectors are non-members",
                format!("{x0} belongs to the cone"),
            ));
        }
    }
    for x0 in nonmembers {
        let sys = LinIneqSystem::new(x.dim(), vec![(-x0, Relation::Gt), (x.clone(), Relation::Ge)])?;
        if !feasible(&sys).is_feasible() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::dual_cone;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    fn fam(sets: &[&[&[i64]]]) -> RepFamily {
        RepFamily::new(2, sets.iter().map(|s| s.iter().map(|y| v(y)).collect()).collect()).unwrap()
    }

    fn directions() -> Vec<Vector> {
        let mut out = Vec::new();
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                out.push(v(&[a, b]));
            }
        }
        out
    }

    #[test]
    fn membership_examples() {
        assert!(!family_member(&fam(&[&[&[1, 0]], &[&[0, 1]]]), &v(&[1, -1])).unwrap());
        assert!(family_member(&fam(&[&[&[1, 0], &[0, 1]]]), &v(&[1, -1])).unwrap());
        let line = fam(&[&[&[2, -3], &[-2, 3]]]);
        for x in directions() {
            assert!(family_member(&line, &x).unwrap());
        }
    }

    #[test]
    fn empty_family_and_convention_are_whole_space() {
        assert!(RepFamily::new(2, vec![]).unwrap().is_whole_space());
        assert!(RepFamily::new(2, vec![vec![]]).unwrap().is_whole_space());
        assert!(RepFamily::new(2, vec![vec![], vec![v(&[1, 0])]]).is_err());
        assert!(family_member(&RepFamily::whole_space(2), &v(&[-1, -1])).unwrap());
    }

    #[test]
    fn triviality_examples() {
        assert_eq!(is_trivial(&[v(&[1, 0]), v(&[-1, 0])]).unwrap(), Triviality::Trivial);
        match is_trivial(&[v(&[1, 0])]).unwrap() {
            Triviality::NonTrivial { witness } => assert!(witness.dot(&v(&[1, 0])).is_negative()),
            Triviality::Trivial => panic!("single nonzero vector is not trivial"),
        }
        assert_eq!(is_trivial(&[v(&[0, 0])]).unwrap(), Triviality::Trivial);
        assert!(is_trivial(&[]).is_err());
    }

    #[test]
    fn subset_examples() {
        assert!(subset_of_gx(&[v(&[-1, 0]), v(&[-1, -1])], &v(&[1, 0])).unwrap());
        assert!(!subset_of_gx(&[v(&[-1, 0]), v(&[1, 0])], &v(&[1, 0])).unwrap());
        assert!(!subset_of_gx(&[v(&[0, 0])], &v(&[3, 1])).unwrap());
    }

    #[test]
    fn hat_examples() {
        let f1 = fam(&[&[&[1, 0]], &[&[0, 1]]]);
        let f2 = fam(&[&[&[1, 0], &[3, 0]], &[&[0, 2], &[0, 5]]]);
        let sample: Vec<Vector> = directions().into_iter().filter(|x| !x.is_zero()).collect();
        assert_eq!(hat_equal_on_sample(&f1, &f2, &sample).unwrap(), HatComparison::Equal);

        let a = fam(&[&[&[1, 0]]]);
        let b = fam(&[&[&[0, 1]]]);
        assert_eq!(
            hat_equal_on_sample(&a, &b, &[v(&[-1, 0])]).unwrap(),
            HatComparison::Differ { x: v(&[-1, 0]) }
        );
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_family(&fam(&[&[&[1, 0], &[2, 0]]])).unwrap(), fam(&[&[&[1, 0]]]));
        assert_eq!(
            normalize_family(&fam(&[&[&[1, 0], &[-1, 0]], &[&[0, 1]]])).unwrap(),
            fam(&[&[&[0, 1]]])
        );
        let f = fam(&[&[&[1, 0], &[0, 1], &[1, 1]]]);
        let g = normalize_family(&f).unwrap();
        assert_eq!(g, fam(&[&[&[0, 1], &[1, 0]]]));
        for x in directions() {
            assert_eq!(family_member(&f, &x).unwrap(), family_member(&g, &x).unwrap());
        }
        let sample: Vec<Vector> = directions().into_iter().filter(|x| !x.is_zero()).collect();
        assert_eq!(hat_equal_on_sample(&f, &g, &sample).unwrap(), HatComparison::Equal);
    }

    #[test]
    fn all_trivial_sets_normalize_to_whole_space() {
        let f = fam(&[&[&[1, 0], &[-1, 0]]]);
        assert!(normalize_family(&f).unwrap().is_whole_space());
    }

    #[test]
    fn kc_membership_examples() {
        let orthant = ConeV::new(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        let oracle = |x: &Vector| member_v(&orthant, x).unwrap();
        assert!(kc_membership_test(oracle, &v(&[1, 1]), &[v(&[-1, 0]), v(&[0, -1]), v(&[-1, -1])]).unwrap());
        assert!(!kc_membership_test(oracle, &v(&[-1, 0]), &[v(&[-1, 0])]).unwrap());
        assert!(kc_membership_test(oracle, &v(&[1, 0]), &[v(&[-1, 2])]).unwrap());
        assert!(kc_membership_test(oracle, &v(&[1, 0]), &[v(&[1, 2])]).is_err());
    }

    #[test]
    fn dual_singletons_represent_the_orthant() {
        let orthant = ConeV::new(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        let d = dual_cone(&orthant);
        let f = RepFamily::singletons(2, d.generators()).unwrap();
        for x in directions() {
            assert_eq!(family_member(&f, &x).unwrap(), member_v(&orthant, &x).unwrap());
        }
    }

    #[test]
    fn gx_is_never_trivial() {
        for x in directions().into_iter().filter(|x| !x.is_zero()) {
            let g = GxCone::new(x.clone()).unwrap();
            let members: Vec<Vector> = directions().into_iter().filter(|y| g.contains(y).unwrap()).take(5).collect();
            assert!(g.contains_all(&members).unwrap());
            assert!(matches!(is_trivial(&members).unwrap(), Triviality::NonTrivial { .. }));
        }
    }
}
