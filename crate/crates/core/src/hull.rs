//! Exact incremental convex hull in three dimensions.
//!
//! Coplanar hull triangles are merged into polygonal faces. Input points that
//! are not hull vertices are dropped; [`Hull::source`] maps each output vertex
//! back to its input index.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::geometry::{orient3d, Sign, Vec3};
use crate::polyhedron::{ModelError, Polyhedron};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("all points are coplanar")]
    Flat,
    #[error("hull is degenerate: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone)]
pub struct Hull {
    pub polyhedron: Polyhedron,
    pub source: Vec<usize>,
}

fn sign_of_orient(pts: &[Vec3], t: &[usize; 3], p: usize) -> Sign {
    Sign::of(&orient3d(&pts[t[0]], &pts[t[1]], &pts[t[2]], &pts[p]))
}

pub fn convex_hull(points: &[Vec3]) -> Result<Hull, HullError> {
    let n = points.len();
    if n < 4 {
        return Err(HullError::Flat);
    }
    let i0 = 0;
    let i1 = (1..n).find(|&i| points[i] != points[i0]).ok_or(HullError::Flat)?;
    let i2 = (1..n)
        .find(|&i| !(&points[i1] - &points[i0]).cross(&(&points[i] - &points[i0])).is_zero())
        .ok_or(HullError::Flat)?;
    let i3 = (1..n)
        .find(|&i| Sign::of(&orient3d(&points[i0], &points[i1], &points[i2], &points[i])) != Sign::Zero)
        .ok_or(HullError::Flat)?;

    // Triangles are counterclockwise from outside: every other hull point
    // has negative orientation against them.
    let mut tris: Vec<[usize; 3]> = Vec::new();
    let seed = [i0, i1, i2, i3];
    for skip in 0..4 {
        let mut t = [0usize; 3];
        let mut k = 0;
        for (j, &s) in seed.iter().enumerate() {
            if j != skip {
                t[k] = s;
                k += 1;
            }
        }
        if sign_of_orient(points, &t, seed[skip]) == Sign::Positive {
            t.swap(1, 2);
        }
        tris.push(t);
    }

    for p in 0..n {
        if seed.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = tris.iter().map(|t| sign_of_orient(points, t, p) == Sign::Positive).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (ti, t) in tris.iter().enumerate() {
            for j in 0..3 {
                owner.insert((t[j], t[(j + 1) % 3]), ti);
            }
        }
        let mut next = Vec::new();
        let mut horizon = Vec::new();
        for (ti, t) in tris.iter().enumerate() {
            if !visible[ti] {
                next.push(*t);
                continue;
            }
            for j in 0..3 {
                let (a, b) = (t[j], t[(j + 1) % 3]);
                match owner.get(&(b, a)) {
                    Some(&other) if !visible[other] => horizon.push((a, b)),
                    Some(_) => {}
                    None => return Err(HullError::Degenerate("open triangle mesh".into())),
                }
            }
        }
        for (a, b) in horizon {
            next.push([a, b, p]);
        }
        tris = next;
    }

    merge_coplanar(points, &tris)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn merge_coplanar(points: &[Vec3], tris: &[[usize; 3]]) -> Result<Hull, HullError> {
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (ti, t) in tris.iter().enumerate() {
        for j in 0..3 {
            owner.insert((t[j], t[(j + 1) % 3]), ti);
        }
    }
    let mut parent: Vec<usize> = (0..tris.len()).collect();
    for (ti, t) in tris.iter().enumerate() {
        for j in 0..3 {
            let (a, b) = (t[j], t[(j + 1) % 3]);
            let Some(&other) = owner.get(&(b, a)) else {
                return Err(HullError::Degenerate("open triangle mesh".into()));
            };
            let apex = tris[other].iter().copied().find(|&x| x != a && x != b).expect("triangle apex");
            if sign_of_orient(points, t, apex) == Sign::Zero {
                let (ra, rb) = (find(&mut parent, ti), find(&mut parent, other));
                parent[ra] = rb;
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for ti in 0..tris.len() {
        let r = find(&mut parent, ti);
        groups.entry(r).or_default().push(ti);
    }

    let mut faces = Vec::new();
    for members in groups.values() {
        let mut directed: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &ti in members {
            let t = tris[ti];
            for j in 0..3 {
                directed.insert((t[j], t[(j + 1) % 3]));
            }
        }
        let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in &directed {
            if !directed.contains(&(b, a)) && succ.insert(a, b).is_some() {
                return Err(HullError::Degenerate("pinched face boundary".into()));
            }
        }
        let start = *succ.keys().next().ok_or_else(|| HullError::Degenerate("empty face".into()))?;
        let mut cycle = vec![start];
        let mut cur = succ[&start];
        while cur != start {
            cycle.push(cur);
            cur = *succ.get(&cur).ok_or_else(|| HullError::Degenerate("broken face boundary".into()))?;
            if cycle.len() > succ.len() {
                return Err(HullError::Degenerate("face boundary does not close".into()));
            }
        }
        if cycle.len() != succ.len() {
            return Err(HullError::Degenerate("face with several boundary loops".into()));
        }
        faces.push(cycle);
    }

    let used: BTreeSet<usize> = faces.iter().flatten().copied().collect();
    let source: Vec<usize> = used.into_iter().collect();
    let remap: BTreeMap<usize, usize> = source.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let vertices = source.iter().map(|&i| points[i].clone()).collect();
    let faces = faces.into_iter().map(|f| f.into_iter().map(|i| remap[&i]).collect()).collect();
    let polyhedron = Polyhedron::new_oriented(vertices, faces)?;
    Ok(Hull { polyhedron, source })
}
