//! Exact feasibility of homogeneous linear systems that mix `>= 0`, `> 0`
//! and `= 0` rows.
//!
//! Equalities are removed first by Gaussian substitution. The remaining
//! inequalities go through Fourier-Motzkin elimination where each derived row
//! carries a strictness flag: a combination is strict as soon as one of its
//! parents is. A system is infeasible exactly when elimination produces the
//! row `0 > 0`. Witnesses are rebuilt by back-substitution, picking small
//! integers whenever the admissible interval allows it.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::cone::ConeV;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{check_all_dims, Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `<normal, y> >= 0`
    Ge,
    /// `<normal, y> > 0`
    Gt,
    /// `<normal, y> = 0`
    Eq,
}

impl Relation {
    pub fn holds(self, value: &Rational) -> bool {
        match self {
            Relation::Ge => !value.is_negative(),
            Relation::Gt => value.is_positive(),
            Relation::Eq => value.is_zero(),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => "GE",
            Relation::Gt => "GT",
            Relation::Eq => "EQ",
        })
    }
}

/// Homogeneous system `<normal_i, y> rel_i 0` in the unknown `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinIneqSystem {
    dim: usize,
    rows: Vec<(Vector, Relation)>,
}

impl LinIneqSystem {
    pub fn new(dim: usize, rows: Vec<(Vector, Relation)>) -> Result<Self> {
        check_all_dims(dim, rows.iter().map(|(n, _)| n))?;
        Ok(LinIneqSystem { dim, rows })
    }

    pub fn empty(dim: usize) -> Self {
        LinIneqSystem { dim, rows: Vec::new() }
    }

    pub fn push(&mut self, normal: Vector, relation: Relation) -> Result<()> {
        check_dim(self.dim, normal.dim())?;
        self.rows.push((normal, relation));
        Ok(())
    }

    pub fn with(mut self, normal: Vector, relation: Relation) -> Result<Self> {
        self.push(normal, relation)?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[(Vector, Relation)] {
        &self.rows
    }

    /// Exact substitution check of a candidate solution.
    pub fn satisfied_by(&self, y: &Vector) -> bool {
        y.dim() == self.dim && self.rows.iter().all(|(n, rel)| rel.holds(&n.dot(y)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Witness(Vector),
    Infeasible,
}

impl Feasibility {
    pub fn witness(self) -> Option<Vector> {
        match self {
            Feasibility::Witness(y) => Some(y),
            Feasibility::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Witness(_))
    }
}

#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rational>,
    strict: bool,
    /// Indices of the input rows this one was combined from.
    origin: Vec<u64>,
}

fn origin_of(index: usize) -> Vec<u64> {
    let mut bits = vec![0u64; index / 64 + 1];
    bits[index / 64] |= 1 << (index % 64);
    bits
}

fn origin_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, w) in out.iter_mut().zip(short) {
        *o |= w;
    }
    out
}

fn origin_size(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

impl Ineq {
    /// Positive rescaling so that the largest absolute coefficient is one;
    /// this makes proportional rows compare equal.
    fn normalized(mut self) -> Self {
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        if !max.is_zero() && !max.is_one() {
            for c in self.coeffs.iter_mut() {
                *c /= &max;
            }
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// One elimination stage: the variable removed and the rows that bounded it.
struct Stage {
    var: usize,
    rows: Vec<Ineq>,
}

/// Decides the system and returns an exact witness when one exists.
///
/// The zero vector is returned only when the system has no strict rows and
/// zero is the value elimination settles on; a strict row is never satisfied
/// by zero, so any witness of a system with `Gt` rows is nonzero.
pub fn feasible(sys: &LinIneqSystem) -> Feasibility {
    let n = sys.dim;

    // Equalities: build reduced echelon rows, substitute into inequalities.
    let mut eq_rows: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut ineqs: Vec<Ineq> = Vec::new();
    for (normal, rel) in &sys.rows {
        match rel {
            Relation::Eq => {
                let mut row = normal.coords().to_vec();
                for (p, e) in &eq_rows {
                    if !row[*p].is_zero() {
                        let f = row[*p].clone();
                        for (r, c) in row.iter_mut().zip(e) {
                            *r -= &f * c;
                        }
                    }
                }
                let Some(p) = row.iter().position(|c| !c.is_zero()) else {
                    continue;
                };
                let inv = row[p].recip();
                for c in row.iter_mut() {
                    *c *= &inv;
                }
                for (_, e) in eq_rows.iter_mut() {
                    if !e[p].is_zero() {
                        let f = e[p].clone();
                        for (r, c) in e.iter_mut().zip(&row) {
                            *r -= &f * c;
                        }
                    }
                }
                eq_rows.push((p, row));
            }
            Relation::Ge | Relation::Gt => ineqs.push(Ineq {
                coeffs: normal.coords().to_vec(),
                strict: *rel == Relation::Gt,
                origin: origin_of(ineqs.len()),
            }),
        }
    }
    for ineq in ineqs.iter_mut() {
        for (p, e) in &eq_rows {
            if !ineq.coeffs[*p].is_zero() {
                let f = ineq.coeffs[*p].clone();
                for (r, c) in ineq.coeffs.iter_mut().zip(e) {
                    *r -= &f * c;
                }
            }
        }
    }

    let pivots: Vec<usize> = eq_rows.iter().map(|(p, _)| *p).collect();
    let Some(mut current) = prune(ineqs) else {
        return Feasibility::Infeasible;
    };

    let mut stages: Vec<Stage> = Vec::new();
    for (eliminated, var) in (0..n).filter(|v| !pivots.contains(v)).enumerate() {
        // Chernikov: a row built from more than `eliminated + 2` input rows
        // after this step is a positive combination of kept rows.
        let max_origin = eliminated + 2;
        let (involved, rest): (Vec<Ineq>, Vec<Ineq>) =
            current.into_iter().partition(|r| !r.coeffs[var].is_zero());
        let mut next = rest;
        {
            let pos = involved.iter().filter(|r| r.coeffs[var].is_positive());
            for p in pos {
                for q in involved.iter().filter(|r| r.coeffs[var].is_negative()) {
                    let origin = origin_union(&p.origin, &q.origin);
                    if origin_size(&origin) > max_origin {
                        continue;
                    }
                    // p/|p_var| + q/|q_var| cancels the variable.
                    let pw = p.coeffs[var].recip();
                    let qw = -q.coeffs[var].recip();
                    let coeffs = p
                        .coeffs
                        .iter()
                        .zip(&q.coeffs)
                        .map(|(a, b)| a * &pw + b * &qw)
                        .collect();
                    next.push(Ineq {
                        coeffs,
                        strict: p.strict || q.strict,
                        origin,
                    });
                }
            }
        }
        stages.push(Stage { var, rows: involved });
        current = match prune(next) {
            Some(rows) => rows,
            None => return Feasibility::Infeasible,
        };
    }
    debug_assert!(current.is_empty());

    let mut y = vec![Rational::zero(); n];
    for stage in stages.iter().rev() {
        let mut lower: Option<(Rational, bool)> = None;
        let mut upper: Option<(Rational, bool)> = None;
        for row in &stage.rows {
            let a = &row.coeffs[stage.var];
            let rest: Rational = row
                .coeffs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != stage.var)
                .fold(Rational::zero(), |acc, (j, c)| acc + c * &y[j]);
            let bound = -rest / a;
            if a.is_positive() {
                tighten(&mut lower, bound, row.strict, |new, old| new > old);
            } else {
                tighten(&mut upper, bound, row.strict, |new, old| new < old);
            }
        }
        y[stage.var] = choose_value(lower.as_ref(), upper.as_ref());
    }
    for (p, e) in &eq_rows {
        let rest: Rational = e
            .iter()
            .enumerate()
            .filter(|(j, _)| j != p)
            .fold(Rational::zero(), |acc, (j, c)| acc + c * &y[j]);
        y[*p] = -rest;
    }

    let witness = Vector::new(y);
    debug_assert!(sys.satisfied_by(&witness), "unsound witness {witness}");
    Feasibility::Witness(witness)
}

fn tighten(
    slot: &mut Option<(Rational, bool)>,
    bound: Rational,
    strict: bool,
    better: impl Fn(&Rational, &Rational) -> bool,
) {
    match slot {
        None => *slot = Some((bound, strict)),
        Some((old, old_strict)) => {
            if better(&bound, old) {
                *slot = Some((bound, strict));
            } else if bound == *old {
                *old_strict |= strict;
            }
        }
    }
}

fn admissible(value: &Rational, lower: Option<&(Rational, bool)>, upper: Option<&(Rational, bool)>) -> bool {
    let above = lower.map_or(true, |(l, s)| if *s { value > l } else { value >= l });
    let below = upper.map_or(true, |(u, s)| if *s { value < u } else { value <= u });
    above && below
}

fn choose_value(lower: Option<&(Rational, bool)>, upper: Option<&(Rational, bool)>) -> Rational {
    let zero = Rational::zero();
    if admissible(&zero, lower, upper) {
        return zero;
    }
    let mut candidates = Vec::new();
    if let Some((l, _)) = lower {
        let c = l.ceil();
        candidates.push(c.clone());
        candidates.push(c + Rational::one());
    }
    if let Some((u, _)) = upper {
        let c = u.floor();
        candidates.push(c.clone());
        candidates.push(c - Rational::one());
    }
    if let Some(c) = candidates.into_iter().find(|c| admissible(c, lower, upper)) {
        return c;
    }
    match (lower, upper) {
        (Some((l, _)), Some((u, _))) => (l + u) / Rational::from_integer(2.into()),
        _ => unreachable!("one-sided intervals always contain an integer"),
    }
}

/// Drops trivially satisfied rows and merges proportional rows (the strict
/// copy dominates). `None` signals the contradiction `0 > 0`.
fn prune(rows: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut out: Vec<Ineq> = Vec::new();
    for row in rows {
        if row.is_zero() {
            if row.strict {
                return None;
            }
            continue;
        }
        let row = row.normalized();
        match seen.get(&row.coeffs) {
            Some(&i) => {
                out[i].strict |= row.strict;
                if origin_size(&row.origin) < origin_size(&out[i].origin) {
                    out[i].origin = row.origin;
                }
            }
            None => {
                seen.insert(row.coeffs.clone(), out.len());
                out.push(row);
            }
        }
    }
    Some(out)
}

/// A functional `y` with `<g, y> >= 0` on every generator of `cone` and
/// `<x0, y> = -1`. Fails exactly when `x0` lies in the cone.
pub fn strong_separate(cone: &ConeV, x0: &Vector) -> Result<Vector> {
    check_dim(cone.dim(), x0.dim())?;
    let mut sys = LinIneqSystem::empty(cone.dim());
    for g in cone.generators() {
        sys.push(g.clone(), Relation::Ge)?;
    }
    sys.push(-x0, Relation::Gt)?;
    match feasible(&sys) {
        Feasibility::Witness(y) => {
            let scale = -(x0.dot(&y)).recip();
            Ok(y.scale(&scale))
        }
        Feasibility::Infeasible => Err(Error::precondition(
            "x0 not in C",
            format!("{x0} belongs to the cone, so no separating functional exists"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    fn sys(dim: usize, rows: &[(&[i64], Relation)]) -> LinIneqSystem {
        LinIneqSystem::new(dim, rows.iter().map(|(n, r)| (v(n), *r)).collect()).unwrap()
    }

    #[test]
    fn open_orthant_is_feasible() {
        let s = sys(2, &[(&[1, 0], Relation::Gt), (&[0, 1], Relation::Gt)]);
        assert_eq!(feasible(&s), Feasibility::Witness(v(&[1, 1])));
    }

    #[test]
    fn contradictory_signs_are_infeasible() {
        let s = sys(2, &[(&[1, 0], Relation::Gt), (&[-1, 0], Relation::Ge)]);
        assert_eq!(feasible(&s), Feasibility::Infeasible);
    }

    #[test]
    fn equality_is_substituted() {
        let s = sys(2, &[(&[1, 1], Relation::Gt), (&[1, -1], Relation::Eq)]);
        assert_eq!(feasible(&s), Feasibility::Witness(v(&[1, 1])));
    }

    #[test]
    fn empty_and_nonstrict_systems_return_zero() {
        assert_eq!(feasible(&LinIneqSystem::empty(3)), Feasibility::Witness(v(&[0, 0, 0])));
        let s = sys(2, &[(&[1, 2], Relation::Ge), (&[-1, -2], Relation::Ge)]);
        assert!(feasible(&s).is_feasible());
    }

    #[test]
    fn lone_strict_row_gets_nonzero_witness() {
        let s = sys(3, &[(&[0, 0, -2], Relation::Gt)]);
        let y = feasible(&s).witness().unwrap();
        assert!(s.satisfied_by(&y));
        assert!(!y.is_zero());
    }

    #[test]
    fn zero_normal_strict_row_is_infeasible() {
        let s = sys(2, &[(&[0, 0], Relation::Gt)]);
        assert_eq!(feasible(&s), Feasibility::Infeasible);
    }

    #[test]
    fn strong_separation_examples() {
        let c = ConeV::new(2, vec![v(&[1, 0])]).unwrap();
        let y = strong_separate(&c, &v(&[0, -1])).unwrap();
        assert_eq!(v(&[0, -1]).dot(&y), int(-1));
        assert!(!v(&[1, 0]).dot(&y).is_negative());

        let orthant = ConeV::new(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        let y = strong_separate(&orthant, &v(&[-1, -1])).unwrap();
        assert_eq!(v(&[-1, -1]).dot(&y), int(-1));
        assert!(y.coords().iter().all(|c| !c.is_negative()));

        let diag = ConeV::new(2, vec![v(&[1, 1])]).unwrap();
        let y = strong_separate(&diag, &v(&[1, 0])).unwrap();
        assert_eq!(y.coords()[0], int(-1));
        assert!(!v(&[1, 1]).dot(&y).is_negative());
    }

    #[test]
    fn strong_separation_refuses_members() {
        let orthant = ConeV::new(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert!(matches!(
            strong_separate(&orthant, &v(&[2, 3])),
            Err(Error::Precondition { .. })
        ));
    }

    fn relation() -> impl Strategy<Value = Relation> {
        prop_oneof![Just(Relation::Ge), Just(Relation::Gt), Just(Relation::Eq)]
    }

    fn system(dim: usize) -> impl Strategy<Value = LinIneqSystem> {
        proptest::collection::vec((proptest::collection::vec(-2i64..=2, dim), relation()), 0..5)
            .prop_map(move |rows| {
                LinIneqSystem::new(dim, rows.into_iter().map(|(n, r)| (v(&n), r)).collect()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn witnesses_are_sound(s in (1usize..=4).prop_flat_map(system)) {
            if let Feasibility::Witness(y) = feasible(&s) {
                prop_assert!(s.satisfied_by(&y));
            }
        }

        #[test]
        fn positive_row_scaling_preserves_status(
            s in (1usize..=3).prop_flat_map(system),
            scales in proptest::collection::vec(1i64..=5, 5),
        ) {
            let scaled = LinIneqSystem::new(
                s.dim(),
                s.rows().iter().zip(&scales).map(|((n, r), &k)| (n.scale(&crate::linalg::rat(k, 2)), *r)).collect(),
            ).unwrap();
            prop_assert_eq!(feasible(&s).is_feasible(), feasible(&scaled).is_feasible());
        }
    }
}
