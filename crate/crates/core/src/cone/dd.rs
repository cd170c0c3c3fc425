//! Double description conversion from halfspace normals to generators.
//!
//! Constraints are inserted in input order. The lineality space is tracked
//! explicitly: while a constraint cuts through it, one lineality direction is
//! turned into a ray and the others are sheared into the hyperplane. Once the
//! lineality is orthogonal to a constraint, the usual ray update applies, with
//! the combinatorial adjacency test on the sets of tight constraints.
//!
//! The output is canonical: the lineality basis is in reduced echelon form
//! (emitted as `+b` and `-b`), rays are projected orthogonally off the
//! lineality, and every generator is a primitive integer vector.

use num_traits::Zero;

use crate::linalg::{orthogonalize, project_out, sign, span_basis, Rational, Vector};

#[derive(Clone)]
struct Ray {
    v: Vector,
    tight: Vec<bool>,
}

fn is_superset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x || !*y)
}

/// Generators of `{x : <x, n> >= 0 for every n in normals}`.
pub(crate) fn halfspaces_to_generators(dim: usize, normals: &[Vector]) -> Vec<Vector> {
    let mut lineality: Vec<Vector> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed = 0usize;

    for n in normals.iter().filter(|n| !n.is_zero()) {
        let k = processed;
        processed += 1;
        for r in rays.iter_mut() {
            r.tight.push(false);
        }

        if let Some(pos) = lineality.iter().position(|l| !l.dot(n).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            if sign(&l0.dot(n)) < 0 {
                l0 = -&l0;
            }
            let l0n = l0.dot(n);
            for l in lineality.iter_mut() {
                let f = l.dot(n) / &l0n;
                *l = l.add_scaled(&-f, &l0).primitive();
            }
            for r in rays.iter_mut() {
                let f = r.v.dot(n) / &l0n;
                r.v = r.v.add_scaled(&-f, &l0).primitive();
                r.tight[k] = true;
            }
            let mut tight = vec![true; processed];
            tight[k] = false;
            rays.push(Ray { v: l0.primitive(), tight });
            continue;
        }

        let values: Vec<Rational> = rays.iter().map(|r| r.v.dot(n)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, val) in rays.iter().zip(&values) {
            if sign(val) >= 0 {
                let mut r = r.clone();
                if sign(val) == 0 {
                    r.tight[k] = true;
                }
                next.push(r);
            }
        }
        for (i, (p, pv)) in rays.iter().zip(&values).enumerate() {
            if sign(pv) <= 0 {
                continue;
            }
            for (j, (q, qv)) in rays.iter().zip(&values).enumerate() {
                if sign(qv) >= 0 {
                    continue;
                }
                let common: Vec<bool> = p.tight.iter().zip(&q.tight).map(|(a, b)| *a && *b).collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, r)| t == i || t == j || !is_superset(&r.tight, &common));
                if !adjacent {
                    continue;
                }
                // pv > 0 > qv: pv * q - qv * p lies on the hyperplane.
                let v = q.v.scale(pv).add_scaled(&-qv.clone(), &p.v).primitive();
                let mut tight = common;
                tight[k] = true;
                next.push(Ray { v, tight });
            }
        }
        rays = next;
    }

    let basis: Vec<Vector> = span_basis(dim, &lineality)
        .into_iter()
        .map(|b| b.primitive())
        .collect();
    let orthogonal = orthogonalize(&basis);
    let mut out: Vec<Vector> = Vec::new();
    for b in &basis {
        out.push(b.clone());
        out.push(-b);
    }
    for r in rays {
        let v = project_out(&r.v, &orthogonal);
        if !v.is_zero() {
            out.push(v.primitive());
        }
    }
    out.sort();
    out.dedup();
    out
}
