use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::alcove::{average_of, Inequality, RealAlcove};
use crate::arith::{Rational, RationalVector, WallSet};
use crate::error::{Error, Result};
use crate::lp::{self, Kind};

/// Face of the closure of an alcove.
///
/// `active` indexes the facets of the parent alcove that vanish on the face.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Face {
    pub codim: usize,
    pub active: Vec<usize>,
    pub witness: RationalVector,
    pub vertices: Vec<RationalVector>,
}

impl Face {
    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Strip bounds of `alcove` (facets or not) whose hyperplane contains the face.
    pub fn walls_through(&self, alcove: &RealAlcove, walls: &WallSet) -> Vec<Inequality> {
        alcove
            .bounds()
            .into_iter()
            .filter(|b| b.slack(walls, &self.witness).is_zero())
            .collect()
    }
}

/// Every nonempty face of the closure of a bounded alcove, the alcove itself
/// included, ordered by codimension and then by active set.
pub fn faces_of(alcove: &RealAlcove, walls: &WallSet) -> Result<Vec<Face>> {
    if !alcove.is_bounded(walls) {
        return Err(Error::Unbounded);
    }
    let verts = alcove.vertices(walls);
    let tight: Vec<BTreeSet<usize>> = verts
        .iter()
        .map(|v| {
            alcove
                .facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.slack(walls, v).is_zero())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut sets: BTreeSet<BTreeSet<usize>> = tight.iter().cloned().collect();
    loop {
        let current: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
        let mut grew = false;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let meet: BTreeSet<usize> = current[i].intersection(&current[j]).copied().collect();
                if sets.insert(meet) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|t| {
            let vs: Vec<RationalVector> = verts
                .iter()
                .zip(&tight)
                .filter(|(_, tv)| t.is_subset(tv))
                .map(|(v, _)| v.clone())
                .collect();
            let rows: Vec<Vec<Rational>> = t
                .iter()
                .map(|&i| alcove.facets[i].constraint(walls, Kind::Ge).coeffs)
                .collect();
            Face {
                codim: lp::rank(&rows),
                active: t.into_iter().collect(),
                witness: average_of(&vs),
                vertices: vs,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.codim, &a.active).cmp(&(b.codim, &b.active)));
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, Covector, Wall};
    use crate::geometry::real_alcove_of;
    use alloc::vec;

    #[test]
    fn triangle_has_seven_faces() {
        let z = |xs: &[i64]| xs.iter().map(|&x| Rational::integer(x)).collect::<Vec<_>>();
        let w = WallSet::new(
            2,
            vec![
                Wall::new(0, Covector::from_i64(&[1, 0]), z(&[0])).unwrap(),
                Wall::new(1, Covector::from_i64(&[0, 1]), z(&[0])).unwrap(),
                Wall::new(2, Covector::from_i64(&[1, 1]), z(&[0])).unwrap(),
            ],
        )
        .unwrap();
        let a = real_alcove_of(&w, &RationalVector(vec![q("1/3"), q("1/3")])).unwrap();
        let faces = faces_of(&a, &w).unwrap();
        let codims: Vec<usize> = faces.iter().map(|f| f.codim).collect();
        assert_eq!(codims, vec![0, 1, 1, 1, 2, 2, 2]);
        assert_eq!(faces[0].witness, RationalVector(vec![q("1/3"), q("1/3")]));
        for (i, f) in faces.iter().filter(|f| f.codim == 1).enumerate() {
            assert_eq!(f.active, vec![i]);
        }
        let origin = faces.iter().find(|f| f.active == vec![0, 1]).unwrap();
        assert_eq!(origin.witness, RationalVector::from_i64(&[0, 0]));
        // The redundant bound x1 + x2 >= 0 also passes through the origin.
        assert_eq!(origin.walls_through(&a, &w).len(), 3);
    }

    #[test]
    fn interval_has_three_faces() {
        let w = WallSet::new(
            1,
            vec![Wall::new(0, Covector::from_i64(&[1]), vec![q("1/2"), q("1/3")]).unwrap()],
        )
        .unwrap();
        let a = real_alcove_of(&w, &RationalVector(vec![q("2/5")])).unwrap();
        let faces = faces_of(&a, &w).unwrap();
        assert_eq!(faces.len(), 3);
        assert_eq!(faces[1].witness, RationalVector(vec![q("1/3")]));
        assert_eq!(faces[2].witness, RationalVector(vec![q("1/2")]));
    }
}
