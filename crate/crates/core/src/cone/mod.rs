//! Polyhedral cones and the duality calculus on them.
//!
//! [`ConeV`] is a finitely generated cone, [`ConeH`] an intersection of
//! closed halfspaces through the origin, [`OpenConeH`] an intersection of
//! open ones, and [`UnionConeV`] a finite union of finitely generated cones
//! (closed, but not necessarily convex). Conversions go through the double
//! description method in [`dd`]; decisions that need a certificate go
//! through [`crate::feasibility`].

mod dd;
mod planar;
mod union;

use std::fmt;

use num_traits::Signed;

use crate::error::{check_dim, Error, Result};
use crate::family::RepFamily;
use crate::feasibility::{feasible, LinIneqSystem, Relation};
use crate::linalg::{check_all_dims, int, null_space, rank, solve_prescribed_values, Rational, Vector};

pub use planar::{closed_cone_rep_2d, complement_sectors_2d, Sector2D};
pub use union::{justifiable_k, union_is_complete};

/// `{ sum_i l_i g_i : l_i >= 0 }`. An empty generator list is the cone `{0}`.
///
/// Generators are stored as primitive integer vectors, sorted and without
/// duplicates; zero generators are dropped since they do not change the set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeV {
    dim: usize,
    generators: Vec<Vector>,
}

impl ConeV {
    pub fn new(dim: usize, generators: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::precondition("positive dimension", "cones need dim >= 1"));
        }
        check_all_dims(dim, &generators)?;
        let mut generators: Vec<Vector> = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.primitive())
            .collect();
        generators.sort();
        generators.dedup();
        Ok(ConeV { dim, generators })
    }

    pub(crate) fn from_canonical(dim: usize, generators: Vec<Vector>) -> Self {
        ConeV { dim, generators }
    }

    pub fn origin(dim: usize) -> Self {
        ConeV { dim, generators: Vec::new() }
    }

    pub fn whole_space(dim: usize) -> Self {
        dual_cone(&ConeV::origin(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn is_origin(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        rank(&self.generators).unwrap_or(0) == self.dim
    }

    /// The same set with a canonical, minimal generator list (via the double
    /// dual). Two equal cones have identical canonical forms.
    pub fn canonical(&self) -> ConeV {
        dual_cone(&dual_cone(self))
    }

    /// Halfspace description: the normals are the generators of the dual.
    pub fn to_h(&self) -> ConeH {
        ConeH {
            dim: self.dim,
            normals: dual_cone(self).generators,
        }
    }
}

impl fmt::Display for ConeV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{{")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

/// `{ x : <x, n> >= 0 for every normal n }`; no normals means the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeH {
    dim: usize,
    normals: Vec<Vector>,
}

impl ConeH {
    pub fn new(dim: usize, normals: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::precondition("positive dimension", "cones need dim >= 1"));
        }
        check_all_dims(dim, &normals)?;
        let normals = normals.into_iter().filter(|n| !n.is_zero()).collect();
        Ok(ConeH { dim, normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        check_dim(self.dim, x.dim())?;
        Ok(self.normals.iter().all(|n| !n.dot(x).is_negative()))
    }

    pub fn to_v(&self) -> ConeV {
        ConeV::from_canonical(self.dim, dd::halfspaces_to_generators(self.dim, &self.normals))
    }
}

/// `{ x : <x, n> > 0 for every normal n }`, a blunted open convex cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenConeH {
    dim: usize,
    normals: Vec<Vector>,
}

impl OpenConeH {
    pub fn new(dim: usize, normals: Vec<Vector>) -> Result<Self> {
        check_all_dims(dim, &normals)?;
        if normals.is_empty() || normals.iter().any(Vector::is_zero) {
            return Err(Error::precondition(
                "nonempty list of nonzero normals",
                "an open cone needs at least one nonzero normal",
            ));
        }
        Ok(OpenConeH { dim, normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    fn system(&self) -> LinIneqSystem {
        LinIneqSystem::new(self.dim, self.normals.iter().map(|n| (n.clone(), Relation::Gt)).collect())
            .expect("dims checked at construction")
    }
}

/// A finite union of finitely generated cones. Closed and contains the
/// origin; convex only in special cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionConeV {
    dim: usize,
    parts: Vec<ConeV>,
}

impl UnionConeV {
    pub fn new(dim: usize, parts: Vec<ConeV>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::precondition("nonempty part list", "a union needs at least one part ({0} is a part with no generators)"));
        }
        for p in &parts {
            check_dim(dim, p.dim())?;
        }
        Ok(UnionConeV { dim, parts })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> &[ConeV] {
        &self.parts
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        for p in &self.parts {
            if member_v(p, x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn negated(&self) -> UnionConeV {
        UnionConeV {
            dim: self.dim,
            parts: self
                .parts
                .iter()
                .map(|p| ConeV::from_canonical(p.dim, p.generators.iter().map(|g| -g).collect()))
                .collect(),
        }
    }
}

/// Conic-combination membership, decided on the multipliers: the system
/// `sum l_i g_i = t x`, `l >= 0`, `t > 0` in the unknowns `(l, t)`.
pub fn member_v(cone: &ConeV, x: &Vector) -> Result<bool> {
    check_dim(cone.dim, x.dim())?;
    if x.is_zero() {
        return Ok(true);
    }
    let k = cone.generators.len();
    let mut sys = LinIneqSystem::empty(k + 1);
    for i in 0..cone.dim {
        let mut row: Vec<Rational> = cone.generators.iter().map(|g| g.coords()[i].clone()).collect();
        row.push(-x.coords()[i].clone());
        sys.push(Vector::new(row), Relation::Eq)?;
    }
    for j in 0..k {
        sys.push(Vector::unit(k + 1, j), Relation::Ge)?;
    }
    sys.push(Vector::unit(k + 1, k), Relation::Gt)?;
    Ok(feasible(&sys).is_feasible())
}

/// Generators of `C' = { y : <g, y> >= 0 for every generator g }`.
pub fn dual_cone(cone: &ConeV) -> ConeV {
    ConeV::from_canonical(cone.dim, dd::halfspaces_to_generators(cone.dim, &cone.generators))
}

/// Whether `C'' = C`, checked by mutual containment.
pub fn bipolar_check(cone: &ConeV) -> bool {
    let bidual = dual_cone(&dual_cone(cone));
    same_cone(cone, &bidual).expect("duals share the dimension")
}

/// Whether `inner` is a subset of `outer`.
pub fn contains(outer: &ConeV, inner: &ConeV) -> Result<bool> {
    check_dim(outer.dim, inner.dim)?;
    for g in &inner.generators {
        if !member_v(outer, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn same_cone(a: &ConeV, b: &ConeV) -> Result<bool> {
    Ok(contains(a, b)? && contains(b, a)?)
}

/// Whether `C ∪ (-C)` is the whole space. A point escapes both `C` and `-C`
/// exactly when some normal pairs negatively with it and some normal pairs
/// positively, so completeness is the infeasibility of every such pair.
pub fn is_complete(cone: &ConeH) -> bool {
    let n = &cone.normals;
    for i in 0..n.len() {
        for j in 0..n.len() {
            if i == j {
                continue;
            }
            let sys = LinIneqSystem::new(cone.dim, vec![(-&n[i], Relation::Gt), (n[j].clone(), Relation::Gt)])
                .expect("normals share the dimension");
            if feasible(&sys).is_feasible() {
                return false;
            }
        }
    }
    true
}

/// Whether `G_{x1} ∩ G_{x2}` is nonempty for every pair of listed vectors,
/// with `G_x = { y : <x, y> < 0 }`.
pub fn pairwise_g_intersections(nonmembers: &[Vector]) -> Result<bool> {
    let Some(first) = nonmembers.first() else {
        return Ok(true);
    };
    check_all_dims(first.dim(), nonmembers)?;
    for i in 0..nonmembers.len() {
        for j in i + 1..nonmembers.len() {
            let sys = LinIneqSystem::new(
                first.dim(),
                vec![(-&nonmembers[i], Relation::Gt), (-&nonmembers[j], Relation::Gt)],
            )?;
            if !feasible(&sys).is_feasible() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which branch of the constructive argument produced a [`LemmaWitness`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaCase {
    /// `b` and `c` are multiples of `a`.
    SpanOfA,
    /// `c` lies in the plane of the independent pair `a`, `b`.
    SpanOfAB,
    /// `c` is outside `span{a, b}`.
    OutsideSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaWitness {
    pub case: LemmaCase,
    pub y: Vector,
}

/// For nonzero `a`, `b`, `c` with `c` outside the conic hull of `{a, b}`,
/// builds `y` with `<c, y> < 0 <= min(<a, y>, <b, y>)`, i.e. a point of
/// `G_c \ (G_a ∪ G_b)`.
pub fn lemma_witness(a: &Vector, b: &Vector, c: &Vector) -> Result<LemmaWitness> {
    let dim = a.dim();
    check_dim(dim, b.dim())?;
    check_dim(dim, c.dim())?;
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::precondition("a, b, c nonzero", "all three vectors must be nonzero"));
    }
    let hull = ConeV::new(dim, vec![a.clone(), b.clone()])?;
    if member_v(&hull, c)? {
        return Err(Error::precondition(
            "c not in co(cone({a, b}))",
            format!("{c} is a conic combination of {a} and {b}; no witness exists"),
        ));
    }

    let rank_ab = rank(&[a.clone(), b.clone()])?;
    let rank_abc = rank(&[a.clone(), b.clone(), c.clone()])?;
    let prescribe = |targets: Vec<(Vector, Rational)>| {
        solve_prescribed_values(dim, &targets)
            .map(|y| y.expect("prescriptions on independent vectors are consistent"))
    };

    let (case, y) = if rank_abc > rank_ab {
        (
            LemmaCase::OutsideSpan,
            prescribe(vec![(a.clone(), int(0)), (b.clone(), int(0)), (c.clone(), int(-1))])?,
        )
    } else if rank_ab == 1 {
        // c = gamma a with gamma < 0 < beta; <a, y> = 1 suffices.
        (LemmaCase::SpanOfA, prescribe(vec![(a.clone(), int(1))])?)
    } else {
        // c = alpha a + beta b with min(alpha, beta) < 0; relabel so alpha < 0.
        let coords: Vec<(Vector, Rational)> = (0..dim)
            .map(|i| {
                (
                    Vector::new(vec![a.coords()[i].clone(), b.coords()[i].clone()]),
                    c.coords()[i].clone(),
                )
            })
            .collect();
        let ab = solve_prescribed_values(2, &coords)?.expect("c lies in span{a, b}");
        let (mut alpha, mut beta) = (ab.coords()[0].clone(), ab.coords()[1].clone());
        let (mut first, mut second) = (a, b);
        if !alpha.is_negative() {
            std::mem::swap(&mut alpha, &mut beta);
            std::mem::swap(&mut first, &mut second);
        }
        let second_value = if beta.is_positive() {
            -alpha / (int(2) * beta)
        } else {
            int(1)
        };
        (
            LemmaCase::SpanOfAB,
            prescribe(vec![(first.clone(), int(1)), (second.clone(), second_value)])?,
        )
    };
    debug_assert!(c.dot(&y).is_negative() && !a.dot(&y).is_negative() && !b.dot(&y).is_negative());
    Ok(LemmaWitness { case, y })
}

/// Interior membership for a full-dimensional cone: `x` pairs strictly
/// positively with every generator of the dual.
pub fn interior_member(cone: &ConeV, x: &Vector) -> Result<bool> {
    check_dim(cone.dim, x.dim())?;
    if !cone.is_full_dimensional() {
        return Err(Error::precondition(
            "nonempty interior",
            format!("{cone} is not full-dimensional in dimension {}", cone.dim),
        ));
    }
    Ok(dual_cone(cone).generators.iter().all(|d| d.dot(x).is_positive()))
}

pub fn open_cone_member(cone: &OpenConeH, x: &Vector) -> Result<bool> {
    check_dim(cone.dim, x.dim())?;
    Ok(cone.normals.iter().all(|n| n.dot(x).is_positive()))
}

/// The closed convex cone generated by the normals of a nonempty open cone,
/// in canonical form. Normal lists describing the same open cone give equal
/// results.
pub fn open_cone_canonical(cone: &OpenConeH) -> Result<ConeV> {
    if !feasible(&cone.system()).is_feasible() {
        return Err(Error::precondition(
            "nonempty open cone",
            "no point pairs strictly positively with every normal",
        ));
    }
    Ok(ConeV::new(cone.dim, cone.normals.clone())?.canonical())
}

/// Checks both sides of the equivalence `A ⊆ B  <=>  B' ∩ D ⊆ A' ∩ D`, with
/// `D` the linear span of `C`, and reports whether they agree. `A` and `B`
/// must lie in `D`.
pub fn evren_check(a: &ConeV, b: &ConeV, c: &ConeV) -> Result<bool> {
    check_dim(c.dim, a.dim)?;
    check_dim(c.dim, b.dim)?;
    let span_rank = rank(&c.generators)?;
    for (name, cone) in [("A", a), ("B", b)] {
        for g in &cone.generators {
            let mut with = c.generators.clone();
            with.push(g.clone());
            if rank(&with)? != span_rank {
                return Err(Error::precondition(
                    "A, B inside span(C - C)",
                    format!("generator {g} of {name} leaves the span of C"),
                ));
            }
        }
    }
    let lhs = contains(b, a)?;
    let restricted_dual = |cone: &ConeV| -> Result<ConeV> {
        let mut normals = cone.generators.clone();
        for w in null_space(c.dim, &c.generators) {
            normals.push(-&w);
            normals.push(w);
        }
        ConeH::new(c.dim, normals).map(|h| h.to_v())
    };
    let dual_b = restricted_dual(b)?;
    let dual_a = restricted_dual(a)?;
    let rhs = contains(&dual_a, &dual_b)?;
    Ok(lhs == rhs)
}

/// If every set of the family meets `H`, checks that every generator of
/// `H'` lies in `C`; returns `true` when the antecedent fails.
pub fn dual_inclusion_check(h: &ConeV, family: &RepFamily, c: &ConeH) -> Result<bool> {
    check_dim(h.dim, family.dim())?;
    check_dim(h.dim, c.dim)?;
    for set in family.sets() {
        let mut meets = false;
        for y in set {
            if member_v(h, y)? {
                meets = true;
                break;
            }
        }
        if !meets {
            return Ok(true);
        }
    }
    for g in dual_cone(h).generators() {
        if !c.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}
