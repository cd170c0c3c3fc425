//! Planar sectors and the constructive representation of closed cones in
//! dimension two: the open complement of a closed cone is covered by finitely
//! many open convex sectors, and negating their normal sets yields a
//! representing family.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::cone::{OpenConeH, UnionConeV};
use crate::error::{check_dim, Error, Result};
use crate::family::RepFamily;
use crate::linalg::{Rational, Vector};

fn cross(a: &Vector, b: &Vector) -> Rational {
    let (a, b) = (a.coords(), b.coords());
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn half(v: &Vector) -> u8 {
    let c = v.coords();
    if c[1].is_positive() || (c[1].is_zero() && c[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Counter-clockwise angular order starting at the positive first axis.
pub(crate) fn angular_cmp(a: &Vector, b: &Vector) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn rot90(v: &Vector) -> Vector {
    let c = v.coords();
    Vector::new(vec![-c[1].clone(), c[0].clone()])
}

/// The counter-clockwise arc from `start` to `end`, at most a half-turn wide,
/// with each boundary ray included or not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector2D {
    start: Vector,
    end: Vector,
    start_open: bool,
    end_open: bool,
}

impl Sector2D {
    pub fn new(start: Vector, end: Vector, start_open: bool, end_open: bool) -> Result<Self> {
        check_dim(2, start.dim())?;
        check_dim(2, end.dim())?;
        if start.is_zero() || end.is_zero() {
            return Err(Error::precondition("nonzero boundary rays", "sector boundaries must be nonzero"));
        }
        let turn = cross(&start, &end);
        if turn.is_negative() {
            return Err(Error::precondition(
                "width at most a half-turn",
                format!("arc from {start} to {end} is wider than a half-turn"),
            ));
        }
        if start.same_ray(&end) && (start_open || end_open) {
            return Err(Error::precondition(
                "degenerate sector closed",
                "a single-ray sector must include its ray",
            ));
        }
        Ok(Sector2D {
            start: start.primitive(),
            end: end.primitive(),
            start_open,
            end_open,
        })
    }

    pub fn open(start: Vector, end: Vector) -> Result<Self> {
        Self::new(start, end, true, true)
    }

    pub fn closed(start: Vector, end: Vector) -> Result<Self> {
        Self::new(start, end, false, false)
    }

    pub fn start(&self) -> &Vector {
        &self.start
    }

    pub fn end(&self) -> &Vector {
        &self.end
    }

    fn is_half_turn(&self) -> bool {
        cross(&self.start, &self.end).is_zero() && !self.start.same_ray(&self.end)
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        check_dim(2, x.dim())?;
        if x.is_zero() {
            return Ok(!self.start_open && !self.end_open);
        }
        if self.start.same_ray(x) {
            return Ok(!self.start_open);
        }
        if self.end.same_ray(x) {
            return Ok(!self.end_open);
        }
        if self.start.same_ray(&self.end) {
            return Ok(false);
        }
        let after_start = cross(&self.start, x).is_positive();
        if self.is_half_turn() {
            return Ok(after_start);
        }
        Ok(after_start && cross(x, &self.end).is_positive())
    }

    /// Normals of the open version of this sector.
    pub fn open_normals(&self) -> Vec<Vector> {
        let first = rot90(&self.start);
        let second = -&rot90(&self.end);
        if first.same_ray(&second) {
            vec![first]
        } else {
            vec![first, second]
        }
    }

    pub fn to_open_cone(&self) -> Result<OpenConeH> {
        if self.start.same_ray(&self.end) {
            return Err(Error::precondition("nondegenerate sector", "a single ray has empty interior"));
        }
        OpenConeH::new(2, self.open_normals())
    }

    /// Generators of the closed version of this sector.
    pub fn closed_generators(&self) -> Vec<Vector> {
        if self.start.same_ray(&self.end) {
            vec![self.start.clone()]
        } else if self.is_half_turn() {
            vec![self.start.clone(), self.end.clone(), rot90(&self.start)]
        } else {
            vec![self.start.clone(), self.end.clone()]
        }
    }
}

/// Boundary directions of `cone` plus the four axis directions, in angular
/// order. Consecutive entries are at most a quarter-turn apart.
fn critical_directions(cone: &UnionConeV) -> Vec<Vector> {
    let mut dirs: Vec<Vector> = vec![
        Vector::from_ints(&[1, 0]),
        Vector::from_ints(&[0, 1]),
        Vector::from_ints(&[-1, 0]),
        Vector::from_ints(&[0, -1]),
    ];
    dirs.extend(cone.parts().iter().flat_map(|p| p.generators().iter().cloned()));
    dirs.sort_by(angular_cmp);
    dirs.dedup_by(|a, b| angular_cmp(a, b) == Ordering::Equal);
    dirs
}

/// Open sectors whose union is the complement of `cone` (minus the origin).
/// Each maximal excluded arc gets one sector when it spans at most a
/// half-turn, and two overlapping open halfplanes when it is wider; a circle
/// missing a single ray needs a third halfplane around the opposite ray.
pub fn complement_sectors_2d(cone: &UnionConeV) -> Result<Vec<Sector2D>> {
    check_dim(2, cone.dim())?;
    let dirs = critical_directions(cone);
    let n = dirs.len();
    let mut ray_in = Vec::with_capacity(n);
    let mut arc_in = Vec::with_capacity(n);
    for k in 0..n {
        // Consecutive directions are less than a half-turn apart, so the sum
        // lies strictly inside the arc between them.
        let mid = &dirs[k] + &dirs[(k + 1) % n];
        ray_in.push(cone.contains(&dirs[k])?);
        arc_in.push(cone.contains(&mid)?);
    }
    let Some(first_in) = ray_in.iter().position(|&r| r) else {
        // Only the origin: four open halfplanes cover every direction.
        let (e1, e2) = (Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1]));
        return [(&e1, -&e1), (&-&e1, e1.clone()), (&e2, -&e2), (&-&e2, e2.clone())]
            .into_iter()
            .map(|(s, e)| Sector2D::open(s.clone(), e))
            .collect();
    };
    let mut sectors = Vec::new();
    let mut k = first_in;
    for _ in 0..n {
        let next = (k + 1) % n;
        if ray_in[k] && !arc_in[k] {
            // Excluded arc starting at an included ray: extend to the next
            // included ray. Closedness makes every ray in between excluded.
            let mut j = next;
            while !ray_in[j] {
                j = (j + 1) % n;
            }
            sectors.extend(cover_arc(&dirs[k], &dirs[j])?);
        }
        k = next;
    }
    Ok(sectors)
}

/// Open sectors covering the open counter-clockwise arc from `s` to `e`.
fn cover_arc(s: &Vector, e: &Vector) -> Result<Vec<Sector2D>> {
    let turn = cross(s, e);
    if s.same_ray(e) {
        let p = rot90(s);
        return Ok(vec![
            Sector2D::open(s.clone(), -s)?,
            Sector2D::open(-s, s.clone())?,
            Sector2D::open(p.clone(), -&p)?,
        ]);
    }
    if turn.is_positive() || (turn.is_zero() && !s.same_ray(e)) {
        return Ok(vec![Sector2D::open(s.clone(), e.clone())?]);
    }
    Ok(vec![Sector2D::open(s.clone(), -s)?, Sector2D::open(-e, e.clone())?])
}

/// A representing family for a closed planar cone: one set `-U` per open
/// complement sector with normal set `U`. The whole plane gets the
/// convention family.
pub fn closed_cone_rep_2d(cone: &UnionConeV) -> Result<RepFamily> {
    let sectors = complement_sectors_2d(cone)?;
    if sectors.is_empty() {
        return Ok(RepFamily::whole_space(2));
    }
    let sets = sectors
        .iter()
        .map(|s| s.open_normals().iter().map(|u| -u).collect())
        .collect();
    RepFamily::new(2, sets)
}
