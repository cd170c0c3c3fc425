//! Preferences over lotteries on a finite outcome set and over
//! Anscombe-Aumann acts, encoded through the cone of scaled differences
//! `{ a (p - q) : a >= 0, (p, q) asserted }`.
//!
//! Under reflexivity and independence alone the implied relation is the
//! union of the asserted rays. Adding transitivity closes it to the conic
//! hull. Continuity changes nothing here: finitely generated conic hulls are
//! already closed, so the flag is recorded and otherwise ignored.
//!
//! Denied pairs are an addition for finite data: they make queries
//! refutable and let inconsistent data be reported.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::cone::{dual_cone, member_v, ConeV};
use crate::error::{check_dim, Error, Result};
use crate::feasibility::{feasible, strong_separate, LinIneqSystem, Relation};
use crate::linalg::{Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lottery {
    probs: Vec<Rational>,
}

impl Lottery {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::precondition("nonempty outcome set", "a lottery needs at least one outcome"));
        }
        if probs.iter().any(Signed::is_negative) {
            return Err(Error::precondition("probabilities nonnegative", "negative probability"));
        }
        let total: Rational = probs.iter().sum();
        if total != Rational::from_integer(1.into()) {
            return Err(Error::precondition("probabilities sum to one", format!("probabilities sum to {total}")));
        }
        Ok(Lottery { probs })
    }

    /// The degenerate lottery on outcome `index`.
    pub fn dirac(m: usize, index: usize) -> Self {
        Lottery { probs: Vector::unit(m, index).into_coords() }
    }

    pub fn m(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn to_vector(&self) -> Vector {
        Vector::new(self.probs.clone())
    }

    pub fn expectation(&self, utility: &[Rational]) -> Result<Rational> {
        check_dim(self.m(), utility.len())?;
        Ok(self.probs.iter().zip(utility).map(|(p, u)| p * u).sum())
    }

    /// `alpha * self + (1 - alpha) * other`.
    pub fn mix(&self, alpha: &Rational, other: &Lottery) -> Result<Lottery> {
        check_dim(self.m(), other.m())?;
        let beta = Rational::from_integer(1.into()) - alpha;
        Lottery::new(
            self.probs
                .iter()
                .zip(&other.probs)
                .map(|(p, q)| alpha * p + &beta * q)
                .collect(),
        )
    }
}

impl fmt::Display for Lottery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_vector().fmt(f)
    }
}

/// A map from a finite state set to lotteries; row `w` is the lottery
/// obtained in state `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Act {
    rows: Vec<Lottery>,
}

impl Act {
    pub fn new(rows: Vec<Lottery>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::precondition("nonempty state set", "an act needs at least one state"));
        };
        let m = first.m();
        for r in &rows {
            check_dim(m, r.m())?;
        }
        Ok(Act { rows })
    }

    pub fn omega_count(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.rows[0].m()
    }

    pub fn rows(&self) -> &[Lottery] {
        &self.rows
    }

    /// Row-major flattening by state.
    pub fn flatten(&self) -> Vector {
        Vector::new(self.rows.iter().flat_map(|r| r.probs.iter().cloned()).collect())
    }
}

impl fmt::Display for Act {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ground {
    Lotteries { m: usize },
    Acts { omega_count: usize, m: usize },
}

impl Ground {
    pub fn dim(self) -> usize {
        match self {
            Ground::Lotteries { m } => m,
            Ground::Acts { omega_count, m } => omega_count * m,
        }
    }

    fn block(self) -> usize {
        match self {
            Ground::Lotteries { m } | Ground::Acts { m, .. } => m,
        }
    }
}

/// A finite relation: asserted pairs `(a, b)` mean `a` is weakly preferred to
/// `b`; denied pairs mean it is not. Objects are stored as flattened vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreferenceData {
    ground: Ground,
    asserted: Vec<(Vector, Vector)>,
    denied: Vec<(Vector, Vector)>,
}

impl PreferenceData {
    pub fn lotteries(m: usize) -> Self {
        PreferenceData { ground: Ground::Lotteries { m }, asserted: Vec::new(), denied: Vec::new() }
    }

    pub fn acts(omega_count: usize, m: usize) -> Self {
        PreferenceData { ground: Ground::Acts { omega_count, m }, asserted: Vec::new(), denied: Vec::new() }
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn asserted(&self) -> &[(Vector, Vector)] {
        &self.asserted
    }

    pub fn denied(&self) -> &[(Vector, Vector)] {
        &self.denied
    }

    fn lottery_ground(&self, p: &Lottery) -> Result<()> {
        match self.ground {
            Ground::Lotteries { m } => check_dim(m, p.m()),
            Ground::Acts { .. } => Err(Error::precondition("lottery ground", "relation is over acts")),
        }
    }

    fn act_ground(&self, f: &Act) -> Result<()> {
        match self.ground {
            Ground::Acts { omega_count, m } => {
                check_dim(omega_count, f.omega_count())?;
                check_dim(m, f.m())
            }
            Ground::Lotteries { .. } => Err(Error::precondition("act ground", "relation is over lotteries")),
        }
    }

    pub fn prefer(&mut self, p: &Lottery, q: &Lottery) -> Result<()> {
        self.lottery_ground(p)?;
        self.lottery_ground(q)?;
        self.asserted.push((p.to_vector(), q.to_vector()));
        Ok(())
    }

    pub fn deny(&mut self, p: &Lottery, q: &Lottery) -> Result<()> {
        self.lottery_ground(p)?;
        self.lottery_ground(q)?;
        self.denied.push((p.to_vector(), q.to_vector()));
        Ok(())
    }

    pub fn prefer_act(&mut self, f: &Act, g: &Act) -> Result<()> {
        self.act_ground(f)?;
        self.act_ground(g)?;
        self.asserted.push((f.flatten(), g.flatten()));
        Ok(())
    }

    pub fn deny_act(&mut self, f: &Act, g: &Act) -> Result<()> {
        self.act_ground(f)?;
        self.act_ground(g)?;
        self.denied.push((f.flatten(), g.flatten()));
        Ok(())
    }

    fn differences(&self) -> Vec<Vector> {
        aumann_rays(self.asserted.iter().map(|(a, b)| a - b))
    }
}

/// Reflexivity and independence are always assumed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AxiomSet {
    pub transitivity: bool,
    pub continuity: bool,
}

impl AxiomSet {
    pub fn base() -> Self {
        AxiomSet::default()
    }

    pub fn transitive() -> Self {
        AxiomSet { transitivity: true, continuity: false }
    }

    pub fn reflexivity(&self) -> bool {
        true
    }

    pub fn independence(&self) -> bool {
        true
    }
}

impl fmt::Display for AxiomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "reflexivity + independence")?;
        if self.transitivity {
            write!(f, " + transitivity")?;
        }
        if self.continuity {
            write!(f, " + continuity")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
            Verdict::Undetermined => "Undetermined",
        })
    }
}

fn aumann_rays(diffs: impl Iterator<Item = Vector>) -> Vec<Vector> {
    let mut rays: Vec<Vector> = diffs.filter(|d| !d.is_zero()).map(|d| d.primitive()).collect();
    rays.sort();
    rays.dedup();
    rays
}

/// Primitive directions of the rays `a (p - q)`; reflexive pairs contribute
/// nothing.
pub fn aumann_cone(data: &PreferenceData) -> Vec<Vector> {
    data.differences()
}

/// Whether `d` is in the implied cone: the ray union, or its conic hull
/// under transitivity.
fn in_implied_cone(dim: usize, rays: &[Vector], d: &Vector, axioms: AxiomSet) -> bool {
    if d.is_zero() {
        return true;
    }
    if axioms.transitivity {
        let hull = ConeV::new(dim, rays.to_vec()).expect("rays share the dimension");
        member_v(&hull, d).expect("dims checked")
    } else {
        rays.iter().any(|r| r.same_ray(d))
    }
}

fn check_consistency(data: &PreferenceData, axioms: AxiomSet) -> Result<Vec<Vector>> {
    let dim = data.ground.dim();
    let rays = data.differences();
    for (a, b) in &data.denied {
        let e = a - b;
        if in_implied_cone(dim, &rays, &e, axioms) {
            return Err(Error::Inconsistent { axioms: axioms.to_string(), difference: e.to_string() });
        }
    }
    Ok(rays)
}

fn implied_difference(data: &PreferenceData, axioms: AxiomSet, d: &Vector) -> Result<Verdict> {
    let dim = data.ground.dim();
    let rays = check_consistency(data, axioms)?;
    if in_implied_cone(dim, &rays, d, axioms) {
        return Ok(Verdict::Yes);
    }
    let mut extended = rays;
    extended.push(d.primitive());
    let forced_out = data
        .denied
        .iter()
        .any(|(a, b)| in_implied_cone(dim, &extended, &(a - b), axioms));
    Ok(if forced_out { Verdict::No } else { Verdict::Undetermined })
}

/// Whether `p ⪰ q` follows from the data under the given axioms. `No` means
/// adding the pair would make some denied pair implied.
pub fn implied(data: &PreferenceData, axioms: AxiomSet, p: &Lottery, q: &Lottery) -> Result<Verdict> {
    data.lottery_ground(p)?;
    data.lottery_ground(q)?;
    implied_difference(data, axioms, &(&p.to_vector() - &q.to_vector()))
}

pub fn aa_implied(data: &PreferenceData, axioms: AxiomSet, f: &Act, g: &Act) -> Result<Verdict> {
    data.act_ground(f)?;
    data.act_ground(g)?;
    implied_difference(data, axioms, &aa_vectorize(f, g)?)
}

/// Shifts every state block so its minimum coordinate is zero. Differences of
/// objects sum to zero within each block, so the pairing is unchanged.
fn quotient_constants(u: &Vector, block: usize) -> Vector {
    let mut coords = u.coords().to_vec();
    for chunk in coords.chunks_mut(block) {
        let min = chunk.iter().min().cloned().unwrap_or_else(Rational::zero);
        for c in chunk.iter_mut() {
            *c -= &min;
        }
    }
    Vector::new(coords)
}

fn utility_generators(data: &PreferenceData, axioms: AxiomSet) -> Result<Vec<Vector>> {
    if !axioms.transitivity {
        return Err(Error::precondition(
            "transitivity",
            "a single utility set represents the relation only when it is transitive",
        ));
    }
    let rays = check_consistency(data, axioms)?;
    let dim = data.ground.dim();
    let dual = dual_cone(&ConeV::new(dim, rays)?);
    let mut us: Vec<Vector> = dual
        .generators()
        .iter()
        .map(|u| quotient_constants(u, data.ground.block()))
        .filter(|u| !u.is_zero())
        .map(|u| u.primitive())
        .collect();
    us.sort();
    us.dedup();
    Ok(us)
}

/// Utility vectors `U` with `p ⪰ q  <=>  E_p[u] >= E_q[u]` for every `u` in
/// `U`, reported modulo constants (minimum coordinate zero).
pub fn multi_utility(data: &PreferenceData, axioms: AxiomSet) -> Result<Vec<Vector>> {
    if !matches!(data.ground, Ground::Lotteries { .. }) {
        return Err(Error::precondition("lottery ground", "use aa_multi_utility for acts"));
    }
    utility_generators(data, axioms)
}

/// A state-dependent utility `u(z, w)`, stored flattened by state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtilityMatrix {
    omega_count: usize,
    m: usize,
    values: Vector,
}

impl UtilityMatrix {
    pub fn from_flat(omega_count: usize, m: usize, values: Vector) -> Result<Self> {
        check_dim(omega_count * m, values.dim())?;
        Ok(UtilityMatrix { omega_count, m, values })
    }

    pub fn get(&self, outcome: usize, state: usize) -> &Rational {
        &self.values.coords()[state * self.m + outcome]
    }

    pub fn flat(&self) -> &Vector {
        &self.values
    }

    pub fn omega_count(&self) -> usize {
        self.omega_count
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `sum_w E_{f(w)}[u(., w)]`.
    pub fn evaluate(&self, act: &Act) -> Result<Rational> {
        check_dim(self.omega_count, act.omega_count())?;
        check_dim(self.m, act.m())?;
        let mut total = Rational::zero();
        for (w, row) in act.rows().iter().enumerate() {
            let column: Vec<Rational> = (0..self.m).map(|z| self.get(z, w).clone()).collect();
            total += row.expectation(&column)?;
        }
        Ok(total)
    }
}

pub fn aa_multi_utility(data: &PreferenceData, axioms: AxiomSet) -> Result<Vec<UtilityMatrix>> {
    let Ground::Acts { omega_count, m } = data.ground else {
        return Err(Error::precondition("act ground", "use multi_utility for lotteries"));
    };
    utility_generators(data, axioms)?
        .into_iter()
        .map(|u| UtilityMatrix::from_flat(omega_count, m, u))
        .collect()
}

/// Flattened difference `f - g`, row-major by state.
pub fn aa_vectorize(f: &Act, g: &Act) -> Result<Vector> {
    check_dim(f.omega_count(), g.omega_count())?;
    check_dim(f.m(), g.m())?;
    Ok(&f.flatten() - &g.flatten())
}

/// Evidence that the ray-union cone is not convex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonConvexity {
    pub a: Vector,
    pub b: Vector,
    /// `a + t·b` for the least positive integer `t` putting it on no
    /// asserted ray (usually `t = 1`).
    pub combination: Vector,
    /// For each asserted ray `r`, a functional `y` with `<r, y> >= 0` and
    /// `<combination, y> = -1`: together they show `G_combination` is among
    /// the excluded `G_x`.
    pub exclusions: Vec<(Vector, Vector)>,
    /// The system `<combination, y> < 0 <= <a, y>, <b, y>` was verified
    /// infeasible: `G_combination` lies inside `G_a ∪ G_b`.
    pub covered_by_pair: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransitivityCertificate {
    Convex,
    Counterexample(NonConvexity),
}

/// Decides whether the union of asserted rays is already convex. Two rays
/// span a convex union only when they coincide or are opposite; any other
/// pair yields a counterexample `a + t·b`: distinct `t` give distinct
/// directions, so only finitely many can land on asserted rays.
pub fn transitivity_certificate(data: &PreferenceData) -> Result<TransitivityCertificate> {
    let rays = data.differences();
    let dim = data.ground.dim();
    for i in 0..rays.len() {
        for j in i + 1..rays.len() {
            let (a, b) = (&rays[i], &rays[j]);
            if a.same_ray(&(-b)) {
                continue;
            }
            let combination = (1..)
                .map(|t| a + &b.scale(&Rational::from_integer(t.into())))
                .find(|x| !rays.iter().any(|r| r.same_ray(x)))
                .expect("finitely many rays");
            let mut exclusions = Vec::with_capacity(rays.len());
            for r in &rays {
                exclusions.push((r.clone(), strong_separate(&ConeV::new(dim, vec![r.clone()])?, &combination)?));
            }
            let sys = LinIneqSystem::new(
                dim,
                vec![(-&combination, Relation::Gt), (a.clone(), Relation::Ge), (b.clone(), Relation::Ge)],
            )?;
            let covered_by_pair = !feasible(&sys).is_feasible();
            return Ok(TransitivityCertificate::Counterexample(NonConvexity {
                a: a.clone(),
                b: b.clone(),
                combination,
                exclusions,
                covered_by_pair,
            }));
        }
    }
    Ok(TransitivityCertificate::Convex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    fn chain() -> PreferenceData {
        let mut data = PreferenceData::lotteries(3);
        data.prefer(&Lottery::dirac(3, 0), &Lottery::dirac(3, 1)).unwrap();
        data.prefer(&Lottery::dirac(3, 1), &Lottery::dirac(3, 2)).unwrap();
        data
    }

    #[test]
    fn lottery_validation() {
        assert!(Lottery::new(vec![rat(1, 2), rat(1, 2)]).is_ok());
        assert!(Lottery::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(Lottery::new(vec![rat(3, 2), rat(-1, 2)]).is_err());
    }

    #[test]
    fn aumann_cone_examples() {
        let (d1, d2) = (Lottery::dirac(2, 0), Lottery::dirac(2, 1));
        let mut data = PreferenceData::lotteries(2);
        data.prefer(&d1, &d2).unwrap();
        assert_eq!(aumann_cone(&data), vec![v(&[1, -1])]);
        data.prefer(&d2, &d1).unwrap();
        assert_eq!(aumann_cone(&data), vec![v(&[-1, 1]), v(&[1, -1])]);
        let mut refl = PreferenceData::lotteries(2);
        refl.prefer(&d1, &d1).unwrap();
        assert!(aumann_cone(&refl).is_empty());
    }

    #[test]
    fn chain_needs_transitivity() {
        let data = chain();
        let (p, q) = (Lottery::dirac(3, 0), Lottery::dirac(3, 2));
        assert_eq!(implied(&data, AxiomSet::base(), &p, &q).unwrap(), Verdict::Undetermined);
        assert_eq!(implied(&data, AxiomSet::transitive(), &p, &q).unwrap(), Verdict::Yes);
        assert_eq!(implied(&data, AxiomSet::base(), &p, &p).unwrap(), Verdict::Yes);
    }

    #[test]
    fn denied_pairs_refute_and_detect_inconsistency() {
        let mut data = chain();
        let (d1, d3) = (Lottery::dirac(3, 0), Lottery::dirac(3, 2));
        data.deny(&d3, &d1).unwrap();
        assert_eq!(implied(&data, AxiomSet::base(), &d3, &d1).unwrap(), Verdict::No);
        let half = Lottery::new(vec![rat(1, 2), int(0), rat(1, 2)]).unwrap();
        // (1/2)(d3 - d1) is on the denied ray.
        assert_eq!(implied(&data, AxiomSet::base(), &half, &d1).unwrap(), Verdict::No);

        let mut bad = chain();
        bad.deny(&d1, &d3).unwrap();
        assert!(implied(&bad, AxiomSet::base(), &d1, &d1).is_ok());
        assert!(matches!(
            implied(&bad, AxiomSet::transitive(), &d1, &d1),
            Err(Error::Inconsistent { .. })
        ));
    }

    #[test]
    fn chain_utilities_rank_outcomes() {
        let data = chain();
        let us = multi_utility(&data, AxiomSet::transitive()).unwrap();
        assert!(!us.is_empty());
        let (d1, d3) = (Lottery::dirac(3, 0), Lottery::dirac(3, 2));
        for u in &us {
            assert!(d1.expectation(u.coords()).unwrap() >= d3.expectation(u.coords()).unwrap());
        }
        assert!(multi_utility(&data, AxiomSet::base()).is_err());
    }

    #[test]
    fn single_utility_halfspace() {
        // Generated by u = (1, 0) on two outcomes: the difference cone is the
        // ray (1, -1).
        let mut data = PreferenceData::lotteries(2);
        data.prefer(&Lottery::dirac(2, 0), &Lottery::dirac(2, 1)).unwrap();
        assert_eq!(multi_utility(&data, AxiomSet::transitive()).unwrap(), vec![v(&[1, 0])]);
    }

    #[test]
    fn reflexive_only_data_yields_equality() {
        let mut data = PreferenceData::lotteries(2);
        let p = Lottery::dirac(2, 0);
        data.prefer(&p, &p).unwrap();
        let us = multi_utility(&data, AxiomSet::transitive()).unwrap();
        assert_eq!(us, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn transitivity_certificates() {
        let mut single = PreferenceData::lotteries(3);
        single.prefer(&Lottery::dirac(3, 0), &Lottery::dirac(3, 1)).unwrap();
        assert_eq!(transitivity_certificate(&single).unwrap(), TransitivityCertificate::Convex);

        let mut line = PreferenceData::lotteries(2);
        line.prefer(&Lottery::dirac(2, 0), &Lottery::dirac(2, 1)).unwrap();
        line.prefer(&Lottery::dirac(2, 1), &Lottery::dirac(2, 0)).unwrap();
        assert_eq!(transitivity_certificate(&line).unwrap(), TransitivityCertificate::Convex);

        match transitivity_certificate(&chain()).unwrap() {
            TransitivityCertificate::Counterexample(nc) => {
                assert_eq!(nc.combination, v(&[1, 0, -1]));
                assert!(nc.covered_by_pair);
                for (r, y) in &nc.exclusions {
                    assert_eq!(nc.combination.dot(y), int(-1));
                    assert!(!r.dot(y).is_negative());
                }
            }
            TransitivityCertificate::Convex => panic!("two independent rays are not convex"),
        }
    }

    #[test]
    fn certificate_steps_past_sums_on_asserted_rays() {
        // Rays (1,-1,0), (1,0,-1) and their sum's direction (2,-1,-1).
        let mut data = PreferenceData::lotteries(3);
        data.prefer(&Lottery::dirac(3, 0), &Lottery::dirac(3, 1)).unwrap();
        data.prefer(&Lottery::dirac(3, 0), &Lottery::dirac(3, 2)).unwrap();
        let mix = Lottery::new(vec![int(0), crate::linalg::rat(1, 2), crate::linalg::rat(1, 2)]).unwrap();
        data.prefer(&Lottery::dirac(3, 0), &mix).unwrap();
        match transitivity_certificate(&data).unwrap() {
            TransitivityCertificate::Counterexample(nc) => {
                assert_eq!(nc.exclusions.len(), 3);
                assert!(nc.exclusions.iter().all(|(r, _)| !r.same_ray(&nc.combination)));
                assert_ne!(nc.combination, &nc.a + &nc.b, "{nc:?}");
                for (r, y) in &nc.exclusions {
                    assert_eq!(nc.combination.dot(y), int(-1));
                    assert!(!r.dot(y).is_negative());
                }
            }
            TransitivityCertificate::Convex => panic!("three rays in a plane are not convex"),
        }

        let mut line_and_ray = PreferenceData::lotteries(3);
        line_and_ray.prefer(&Lottery::dirac(3, 0), &Lottery::dirac(3, 1)).unwrap();
        line_and_ray.prefer(&Lottery::dirac(3, 1), &Lottery::dirac(3, 0)).unwrap();
        line_and_ray.prefer(&Lottery::dirac(3, 1), &Lottery::dirac(3, 2)).unwrap();
        assert!(matches!(
            transitivity_certificate(&line_and_ray).unwrap(),
            TransitivityCertificate::Counterexample(_)
        ));
    }

    #[test]
    fn act_vectorization() {
        let d = |i| Lottery::dirac(2, i);
        let f = Act::new(vec![d(0), d(0)]).unwrap();
        let g = Act::new(vec![d(1), d(1)]).unwrap();
        let diff = aa_vectorize(&f, &g).unwrap();
        assert_eq!(diff, v(&[1, -1, 1, -1]));
        assert_eq!(diff.dot(&v(&[1, 0, 1, 0])), int(2));
        assert!(aa_vectorize(&f, &f).unwrap().is_zero());
        let f2 = Act::new(vec![d(0), d(1)]).unwrap();
        let g2 = Act::new(vec![d(1), d(0)]).unwrap();
        assert_eq!(aa_vectorize(&f2, &g2).unwrap(), v(&[1, -1, -1, 1]));
    }

    #[test]
    fn act_queries() {
        let d = |i| Lottery::dirac(2, i);
        let f = Act::new(vec![d(0), d(0)]).unwrap();
        let g = Act::new(vec![d(1), d(1)]).unwrap();
        let h = Act::new(vec![d(0), d(1)]).unwrap();
        let mut data = PreferenceData::acts(2, 2);
        data.prefer_act(&f, &g).unwrap();
        assert_eq!(aa_implied(&data, AxiomSet::base(), &h, &h).unwrap(), Verdict::Yes);
        assert_eq!(aa_implied(&data, AxiomSet::base(), &h, &g).unwrap(), Verdict::Undetermined);
        let us = aa_multi_utility(&data, AxiomSet::transitive()).unwrap();
        for u in &us {
            assert!(u.evaluate(&f).unwrap() >= u.evaluate(&g).unwrap());
        }
    }
}
