//! Brute-force verification over rational grids.
//!
//! Everything here evaluates the defining predicates directly and shares no
//! code with the elimination and double-description paths: cone membership
//! is decided by Carathéodory enumeration (some linearly independent subset
//! of the generators expresses `x` with nonnegative weights), halfspace
//! membership by substitution, and feasibility by searching the grid.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::cone::{member_v, ConeV};
use crate::decision::{aa_implied, implied, Act, AxiomSet, Ground, Lottery, PreferenceData, Verdict};
use crate::error::{check_dim, Error, Result};
use crate::family::{family_member, is_trivial, RepFamily, Triviality};
use crate::feasibility::{feasible, Feasibility, LinIneqSystem};
use crate::linalg::{Rational, Vector};
use crate::text::ConeFile;

/// All vectors whose coordinates are `p/q` with `q` in `denominators` and
/// `|p/q| <= numerator_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub dim: usize,
    pub numerator_bound: u32,
    pub denominators: Vec<u32>,
}

impl GridSpec {
    pub fn new(dim: usize, numerator_bound: u32, denominators: Vec<u32>) -> Result<Self> {
        if dim == 0 || numerator_bound == 0 || denominators.is_empty() || denominators.contains(&0) {
            return Err(Error::precondition(
                "positive grid parameters",
                "dimension, numerator bound and denominators must be positive",
            ));
        }
        Ok(GridSpec { dim, numerator_bound, denominators })
    }

    /// Numerator bound 4, denominators 1, 2, 3.
    pub fn default_for(dim: usize) -> Self {
        GridSpec { dim, numerator_bound: 4, denominators: vec![1, 2, 3] }
    }

    /// Distinct coordinate values, ascending.
    pub fn values(&self) -> Vec<Rational> {
        let n = i64::from(self.numerator_bound);
        let set: BTreeSet<Rational> = self
            .denominators
            .iter()
            .flat_map(|&q| {
                let q = i64::from(q);
                (-n * q..=n * q).map(move |p| Rational::new(p.into(), q.into()))
            })
            .collect();
        set.into_iter().collect()
    }

    pub fn point_count(&self) -> usize {
        self.values().len().pow(self.dim as u32)
    }

    /// Every grid vector, in lexicographic order.
    pub fn points(&self) -> Vec<Vector> {
        let values = self.values();
        let mut out = vec![Vec::new()];
        for _ in 0..self.dim {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Rational>| {
                    values.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v.clone());
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(Vector::new).collect()
    }
}

/// `count` pairwise distinct rational directions in the plane, in angular
/// order, taken from the boundary of an integer square.
pub fn rational_directions_2d(count: usize) -> Vec<Vector> {
    assert!(count % 8 == 0 && count > 0, "direction count must be a positive multiple of 8");
    let r = (count / 8) as i64;
    let mut out = Vec::with_capacity(count);
    for t in -r..r {
        out.push(Vector::from_ints(&[r, t]));
    }
    for t in (-r + 1..=r).rev() {
        out.push(Vector::from_ints(&[t, r]));
    }
    for t in (-r + 1..=r).rev() {
        out.push(Vector::from_ints(&[-r, t]));
    }
    for t in -r..r {
        out.push(Vector::from_ints(&[t, -r]));
    }
    out
}

fn dot(a: &Vector, b: &Vector) -> Rational {
    a.coords().iter().zip(b.coords()).map(|(x, y)| x * y).sum()
}

/// Solves `sum_i l_i cols_i = x` when the columns are independent; `None`
/// if they are dependent or the system is inconsistent.
fn solve_columns(cols: &[&Vector], x: &Vector) -> Option<Vec<Rational>> {
    let (rows, width) = (x.dim(), cols.len());
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c.coords()[r].clone()).collect();
            row.push(x.coords()[r].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..width {
        let found = (pivot_row..rows).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, found);
        let p = m[pivot_row][col].clone();
        for v in m[pivot_row].iter_mut() {
            *v /= &p;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=width {
                    let delta = &f * &m[pivot_row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    if m[width..].iter().any(|row| !row[width].is_zero()) {
        return None;
    }
    Some((0..width).map(|r| m[r][width].clone()).collect())
}

fn subsets(n: usize, k: usize, start: usize, current: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if current.len() == k {
        return f(current);
    }
    for i in start..n {
        current.push(i);
        if subsets(n, k, i + 1, current, f) {
            return true;
        }
        current.pop();
    }
    false
}

/// Whether `x` is a nonnegative combination of `generators`, by enumerating
/// independent subsets of at most `dim` generators.
pub fn caratheodory_member(generators: &[Vector], x: &Vector) -> bool {
    if x.is_zero() {
        return true;
    }
    let n = generators.len();
    for k in 1..=n.min(x.dim()) {
        let hit = subsets(n, k, 0, &mut Vec::new(), &mut |idx| {
            let cols: Vec<&Vector> = idx.iter().map(|&i| &generators[i]).collect();
            solve_columns(&cols, x).is_some_and(|l| l.iter().all(|c| !c.is_negative()))
        });
        if hit {
            return true;
        }
    }
    false
}

/// Membership by definition for each file kind.
pub fn definitional_member(cone: &ConeFile, x: &Vector) -> bool {
    match cone {
        ConeFile::V(c) => caratheodory_member(c.generators(), x),
        ConeFile::H(c) => c.normals().iter().all(|n| !dot(n, x).is_negative()),
        ConeFile::Union(u) => u.parts().iter().any(|p| caratheodory_member(p.generators(), x)),
    }
}

/// The library path: halfspace data is converted to generators once, then
/// every query goes through `member_v`.
fn fast_path(cone: &ConeFile) -> ConeFile {
    match cone {
        ConeFile::H(c) => ConeFile::V(c.to_v()),
        other => other.clone(),
    }
}

fn fast_member(cone: &ConeFile, x: &Vector) -> Result<bool> {
    match cone {
        ConeFile::V(c) => member_v(c, x),
        ConeFile::H(c) => member_v(&c.to_v(), x),
        ConeFile::Union(u) => u.contains(x),
    }
}

pub enum OracleTask<'a> {
    Membership(&'a ConeFile),
    Triviality(&'a [Vector]),
    Feasibility(&'a LinIneqSystem),
    FamilyMembership { family: &'a RepFamily, cone: &'a ConeFile },
    Implied { data: &'a PreferenceData, axioms: AxiomSet },
}

impl OracleTask<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            OracleTask::Membership(_) => "membership",
            OracleTask::Triviality(_) => "triviality",
            OracleTask::Feasibility(_) => "feasibility",
            OracleTask::FamilyMembership { .. } => "family-membership",
            OracleTask::Implied { .. } => "implied",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub task: &'static str,
    pub points: usize,
    /// Offending points with a short description, sorted.
    pub disagreements: Vec<String>,
    pub summary: String,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.task, self.summary)?;
        for d in &self.disagreements {
            write!(f, "\n  disagree at {d}")?;
        }
        Ok(())
    }
}

fn compare_on<F>(points: &[Vector], check: F) -> Result<Vec<String>>
where
    F: Fn(&Vector) -> Result<Option<String>> + Sync,
{
    let found: Vec<Option<String>> = points.par_iter().map(|x| check(x)).collect::<Result<_>>()?;
    let mut out: Vec<String> = found.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn agreement(task: &'static str, points: usize, disagreements: Vec<String>) -> OracleReport {
    let summary = if disagreements.is_empty() {
        format!("agree on {points} points")
    } else {
        format!("{} disagreements on {points} points", disagreements.len())
    };
    OracleReport { task, points, disagreements, summary }
}

fn task_dim(task: &OracleTask<'_>) -> Result<usize> {
    Ok(match task {
        OracleTask::Membership(c) => c.dim(),
        OracleTask::Triviality(k) => k
            .first()
            .map(Vector::dim)
            .ok_or_else(|| Error::precondition("nonempty set", "triviality needs at least one vector"))?,
        OracleTask::Feasibility(s) => s.dim(),
        OracleTask::FamilyMembership { family, cone } => {
            check_dim(family.dim(), cone.dim())?;
            family.dim()
        }
        OracleTask::Implied { data, .. } => data.ground().dim(),
    })
}

/// Exhaustively evaluates the defining predicate of `task` on the grid and
/// compares it with the library's decision procedure.
pub fn oracle_compare(task: &OracleTask<'_>, grid: &GridSpec) -> Result<OracleReport> {
    let name = task.name();
    match task {
        OracleTask::Implied { data, axioms } => return implied_compare(data, *axioms, grid),
        _ => check_dim(task_dim(task)?, grid.dim)?,
    }
    let points = grid.points();
    let n = points.len();
    match task {
        OracleTask::Membership(cone) => {
            let library = fast_path(cone);
            let d = compare_on(&points, |x| {
                let (oracle, fast) = (definitional_member(cone, x), fast_member(&library, x)?);
                Ok((oracle != fast).then(|| format!("{x}: definition {oracle}, library {fast}")))
            })?;
            Ok(agreement(name, n, d))
        }
        OracleTask::FamilyMembership { family, cone } => {
            let d = compare_on(&points, |x| {
                let (oracle, fam) = (definitional_member(cone, x), family_member(family, x)?);
                Ok((oracle != fam).then(|| format!("{x}: cone {oracle}, family {fam}")))
            })?;
            Ok(agreement(name, n, d))
        }
        OracleTask::Triviality(k) => match is_trivial(k)? {
            Triviality::Trivial => {
                let d = compare_on(&points, |x| {
                    let ok = k.iter().any(|y| !dot(x, y).is_negative());
                    Ok((!ok).then(|| format!("{x}: pairs negatively with every element")))
                })?;
                let summary = if d.is_empty() {
                    format!("necessary-direction pass: all {n} points satisfied")
                } else {
                    format!("necessary-direction FAIL: {} of {n} points unsatisfied", d.len())
                };
                Ok(OracleReport { task: name, points: n, disagreements: d, summary })
            }
            Triviality::NonTrivial { witness } => {
                let certified = k.iter().all(|y| dot(&witness, y).is_negative());
                let d = if certified { Vec::new() } else { vec![format!("{witness}: witness not certified")] };
                let summary = format!("nontrivial: witness {witness} certified exactly (grid check is one-sided)");
                Ok(OracleReport { task: name, points: n, disagreements: d, summary })
            }
        },
        OracleTask::Feasibility(sys) => {
            let result = feasible(sys);
            let grid_witness = points.par_iter().find_first(|y| sys.satisfied_by(y)).cloned();
            let mut d = Vec::new();
            let summary = match (&result, &grid_witness) {
                (Feasibility::Witness(y), _) => {
                    if !sys.satisfied_by(y) {
                        d.push(format!("{y}: returned witness fails substitution"));
                    }
                    format!("sound: witness {y} passes substitution")
                }
                (Feasibility::Infeasible, Some(y)) => {
                    d.push(format!("{y}: grid point satisfies a system reported infeasible"));
                    "refuted".to_string()
                }
                (Feasibility::Infeasible, None) => {
                    format!("necessary-direction pass: no grid point among {n} satisfies the system")
                }
            };
            Ok(OracleReport { task: name, points: n, disagreements: d, summary })
        }
        OracleTask::Implied { .. } => unreachable!("handled above"),
    }
}

/// Lotteries on `m` outcomes whose probabilities are grid values.
fn grid_lotteries(m: usize, grid: &GridSpec) -> Vec<Lottery> {
    let values: Vec<Rational> = grid.values().into_iter().filter(|v| !v.is_negative()).collect();
    let one = Rational::from_integer(1.into());
    let mut out: Vec<Vec<Rational>> = vec![Vec::new()];
    for i in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                let used: Rational = prefix.iter().sum();
                let rest = &one - &used;
                let choices: Vec<Rational> = if i + 1 == m {
                    if rest.is_negative() { Vec::new() } else { vec![rest] }
                } else {
                    values.iter().filter(|v| **v <= rest).cloned().collect()
                };
                choices.into_iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out.into_iter().filter_map(|p| Lottery::new(p).ok()).collect()
}

/// Whether `d` is implied by the rays, by definition.
fn implied_by_definition(rays: &[Vector], d: &Vector, axioms: AxiomSet) -> bool {
    if d.is_zero() {
        return true;
    }
    if axioms.transitivity {
        caratheodory_member(rays, d)
    } else {
        rays.iter().any(|r| {
            let t = dot(r, d);
            t.is_positive() && dot(r, r) * dot(d, d) == &t * &t
        })
    }
}

fn verdict_by_definition(data: &PreferenceData, rays: &[Vector], d: &Vector, axioms: AxiomSet) -> Verdict {
    if implied_by_definition(rays, d, axioms) {
        return Verdict::Yes;
    }
    let mut extended = rays.to_vec();
    extended.push(d.clone());
    if data.denied().iter().any(|(a, b)| implied_by_definition(&extended, &(a - b), axioms)) {
        Verdict::No
    } else {
        Verdict::Undetermined
    }
}

fn implied_compare(data: &PreferenceData, axioms: AxiomSet, grid: &GridSpec) -> Result<OracleReport> {
    let rays: Vec<Vector> = data.asserted().iter().map(|(a, b)| a - b).filter(|d| !d.is_zero()).collect();
    let inconsistent = data
        .denied()
        .iter()
        .any(|(a, b)| implied_by_definition(&rays, &(a - b), axioms));
    // Objects: grid lotteries, or acts built from Dirac rows.
    let objects: Vec<Vector> = match data.ground() {
        Ground::Lotteries { m } => grid_lotteries(m, grid).iter().map(Lottery::to_vector).collect(),
        Ground::Acts { omega_count, m } => {
            let mut acts: Vec<Vec<Lottery>> = vec![Vec::new()];
            for _ in 0..omega_count {
                acts = acts
                    .into_iter()
                    .flat_map(|prefix| {
                        (0..m).map(move |z| {
                            let mut next = prefix.clone();
                            next.push(Lottery::dirac(m, z));
                            next
                        })
                    })
                    .collect();
            }
            acts.into_iter().map(|rows| Act::new(rows).expect("uniform rows").flatten()).collect()
        }
    };
    let pairs: Vec<(Vector, Vector)> = objects
        .iter()
        .flat_map(|p| objects.iter().map(move |q| (p.clone(), q.clone())))
        .collect();
    let query = |p: &Vector, q: &Vector| -> Result<Verdict> {
        match data.ground() {
            Ground::Lotteries { .. } => implied(
                data,
                axioms,
                &Lottery::new(p.coords().to_vec())?,
                &Lottery::new(q.coords().to_vec())?,
            ),
            Ground::Acts { m, .. } => {
                let act = |v: &Vector| {
                    Act::new(
                        v.coords()
                            .chunks(m)
                            .map(|r| Lottery::new(r.to_vec()))
                            .collect::<Result<Vec<_>>>()?,
                    )
                };
                aa_implied(data, axioms, &act(p)?, &act(q)?)
            }
        }
    };
    let n = pairs.len();
    let found: Vec<Option<String>> = pairs
        .par_iter()
        .map(|(p, q)| {
            let fast = query(p, q);
            Ok(match fast {
                Err(Error::Inconsistent { .. }) if inconsistent => None,
                Err(e) if !inconsistent => Some(format!("{p} vs {q}: library error {e}")),
                Err(e) => return Err(e),
                Ok(v) if inconsistent => Some(format!("{p} vs {q}: library answered {v} on inconsistent data")),
                Ok(v) => {
                    let oracle = verdict_by_definition(data, &rays, &(p - q), axioms);
                    (v != oracle).then(|| format!("{p} vs {q}: definition {oracle}, library {v}"))
                }
            })
        })
        .collect::<Result<_>>()?;
    let mut d: Vec<String> = found.into_iter().flatten().collect();
    d.sort();
    let mut report = agreement("implied", n, d);
    report.summary = if report.passed() {
        if inconsistent {
            format!("agree on {n} pairs: data inconsistent under {axioms}")
        } else {
            format!("agree on {n} pairs")
        }
    } else {
        format!("{} disagreements on {n} pairs", report.disagreements.len())
    };
    Ok(report)
}

/// Convenience for callers that only need a generator-list oracle.
pub fn cone_member_by_definition(cone: &ConeV, x: &Vector) -> bool {
    caratheodory_member(cone.generators(), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_cone, parse_family, parse_relation, parse_system};

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(GridSpec::new(2, 3, vec![1, 2]).unwrap().points().len(), 169);
        assert_eq!(GridSpec::new(2, 4, vec![1]).unwrap().point_count(), 81);
        assert_eq!(GridSpec::default_for(1).values().len(), 33);
        assert!(GridSpec::new(2, 0, vec![1]).is_err());
    }

    #[test]
    fn direction_sweep() {
        let dirs = rational_directions_2d(360);
        assert_eq!(dirs.len(), 360);
        let mut prims: Vec<Vector> = dirs.iter().map(Vector::primitive).collect();
        prims.sort();
        prims.dedup();
        assert_eq!(prims.len(), 360);
    }

    #[test]
    fn caratheodory() {
        let gens = [v(&[1, 0]), v(&[1, 1]), v(&[0, 1])];
        assert!(caratheodory_member(&gens, &v(&[3, 1])));
        assert!(!caratheodory_member(&gens, &v(&[-1, 1])));
        assert!(caratheodory_member(&[], &v(&[0, 0])));
        assert!(!caratheodory_member(&[], &v(&[0, 1])));
        assert!(caratheodory_member(&[v(&[1, 0]), v(&[-1, 0])], &v(&[-5, 0])));
    }

    #[test]
    fn orthant_membership_report() {
        let cone = parse_cone("dim 2\nvrep\n1 0\n0 1\n").unwrap();
        let report = oracle_compare(&OracleTask::Membership(&cone), &GridSpec::new(2, 3, vec![1, 2]).unwrap()).unwrap();
        assert_eq!(report.summary, "agree on 169 points");
    }

    #[test]
    fn triviality_report() {
        let k = [v(&[1, 0]), v(&[-1, 0])];
        let report = oracle_compare(&OracleTask::Triviality(&k), &GridSpec::new(2, 4, vec![1]).unwrap()).unwrap();
        assert_eq!(report.summary, "necessary-direction pass: all 81 points satisfied");
        let k = [v(&[1, 0]), v(&[0, 1])];
        let report = oracle_compare(&OracleTask::Triviality(&k), &GridSpec::new(2, 4, vec![1]).unwrap()).unwrap();
        assert!(report.passed());
        assert!(report.summary.starts_with("nontrivial"));
    }

    #[test]
    fn family_report() {
        let cone = parse_cone("dim 2\nvrep\n1 0\n0 1\n").unwrap();
        let family = parse_family("dim 2\nfamily 2\nset 1\n1 0\nset 1\n0 1\n").unwrap();
        let report = oracle_compare(
            &OracleTask::FamilyMembership { family: &family, cone: &cone },
            &GridSpec::new(2, 4, vec![1, 2]).unwrap(),
        )
        .unwrap();
        assert!(report.passed());
        assert!(report.summary.starts_with("agree"));
        let wrong = parse_family("dim 2\nfamily 1\nset 1\n1 0\n").unwrap();
        let report = oracle_compare(
            &OracleTask::FamilyMembership { family: &wrong, cone: &cone },
            &GridSpec::new(2, 2, vec![1]).unwrap(),
        )
        .unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn feasibility_report() {
        let grid = GridSpec::new(2, 2, vec![1, 2]).unwrap();
        let sys = parse_system("dim 2\nGT 1 0\nGE 0 1\n").unwrap();
        assert!(oracle_compare(&OracleTask::Feasibility(&sys), &grid).unwrap().passed());
        let sys = parse_system("dim 2\nGT 1 0\nGE -1 0\n").unwrap();
        let r = oracle_compare(&OracleTask::Feasibility(&sys), &grid).unwrap();
        assert!(r.passed());
        assert!(r.summary.starts_with("necessary-direction pass"));
    }

    #[test]
    fn implied_report() {
        let data = parse_relation("lotteries 3\npref: (1,0,0) | (0,1,0)\npref: (0,1,0) | (0,0,1)\nnpref: (0,0,1) | (1,0,0)\n").unwrap();
        let grid = GridSpec::new(1, 1, vec![1, 2]).unwrap();
        for axioms in [AxiomSet::base(), AxiomSet::transitive()] {
            let r = oracle_compare(&OracleTask::Implied { data: &data, axioms }, &grid).unwrap();
            assert!(r.passed(), "{r}");
        }
        let acts = parse_relation("acts 2 2\npref: (1,0); (1,0) | (0,1); (0,1)\n").unwrap();
        let r = oracle_compare(&OracleTask::Implied { data: &acts, axioms: AxiomSet::transitive() }, &grid).unwrap();
        assert!(r.passed(), "{r}");
    }
}
