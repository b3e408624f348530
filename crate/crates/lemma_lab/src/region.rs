//! Convex regions with exact lattice-point enumeration, and the unimodular
//! maps used to distort them.
//!
//! A set cut from a convex region `K` as `K ∩ Z^n` is integrally convex, and
//! nested regions give relatively convex nested sets. A unimodular map
//! preserves the lattice, so both properties survive the distortion.

use num_integer::Roots;
use rand::Rng;
use serde::{Deserialize, Serialize};

use lattice_core::{LatticePoint, LatticeSet};

use crate::LabError;

/// An integral affine map `x = U y + shift` with `det U = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unimodular {
    pub matrix: Vec<Vec<i64>>,
    pub inverse: Vec<Vec<i64>>,
    pub shift: Vec<i64>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

impl Unimodular {
    pub fn identity(n: usize) -> Self {
        Unimodular { matrix: identity(n), inverse: identity(n), shift: vec![0; n] }
    }

    /// A product of a few random shears, a permutation and sign flips.
    pub fn random<R: Rng>(n: usize, shears: usize, rng: &mut R) -> Self {
        let mut u = identity(n);
        let mut inv = identity(n);
        for _ in 0..shears {
            if n < 2 {
                break;
            }
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
            // Row op on U: row_i += c row_j. Column op on U^-1: col_j -= c col_i.
            let row_j = u[j].clone();
            for (x, y) in u[i].iter_mut().zip(&row_j) {
                *x += c * y;
            }
            for row in inv.iter_mut() {
                row[j] -= c * row[i];
            }
        }
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            u.swap(i, j);
            for row in inv.iter_mut() {
                row.swap(i, j);
            }
        }
        for i in 0..n {
            if rng.gen_bool(0.5) {
                for x in u[i].iter_mut() {
                    *x = -*x;
                }
                for row in inv.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
        let shift = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        Unimodular { matrix: u, inverse: inv, shift }
    }

    pub fn forward(&self, y: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrix, y).iter().zip(&self.shift).map(|(a, b)| a + b).collect()
    }

    pub fn backward(&self, x: &[i64]) -> Vec<i64> {
        let d: Vec<i64> = x.iter().zip(&self.shift).map(|(a, b)| a - b).collect();
        mat_vec(&self.inverse, &d)
    }

    /// Whether `inverse` really inverts `matrix`.
    pub fn is_consistent(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: i64 = (0..n).map(|k| self.matrix[i][k] * self.inverse[k][j]).sum();
                s == i64::from(i == j)
            })
        })
    }
}

/// A half-space `normal . y <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub normal: Vec<i64>,
    pub bound: i64,
}

/// A convex region in the undistorted coordinates `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// `sum_i w_i (denom * y_i - center_i)^2 <= radius`.
    Ellipsoid { weights: Vec<i64>, center: Vec<i64>, denom: i64, radius: i64 },
    /// `lo <= y <= hi`, optionally intersected with a half-space.
    Box { lo: Vec<i64>, hi: Vec<i64>, cut: Option<Cut> },
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Ellipsoid { weights, .. } => weights.len(),
            Region::Box { lo, .. } => lo.len(),
        }
    }

    pub fn contains(&self, y: &[i64]) -> bool {
        match self {
            Region::Ellipsoid { weights, center, denom, radius } => {
                let s: i128 = y
                    .iter()
                    .zip(center)
                    .zip(weights)
                    .map(|((yi, ci), wi)| {
                        let d = (*denom as i128) * (*yi as i128) - *ci as i128;
                        *wi as i128 * d * d
                    })
                    .sum();
                s <= *radius as i128
            }
            Region::Box { lo, hi, cut } => {
                y.iter().zip(lo.iter().zip(hi)).all(|(v, (l, h))| l <= v && v <= h)
                    && cut.as_ref().is_none_or(|c| c.normal.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() <= c.bound)
            }
        }
    }

    /// A box containing every lattice point of the region.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        match self {
            Region::Ellipsoid { weights, center, denom, radius } => {
                let mut lo = Vec::new();
                let mut hi = Vec::new();
                for (w, c) in weights.iter().zip(center) {
                    let s = (radius / w).max(0).sqrt();
                    lo.push((c - s).div_euclid(*denom) - 1);
                    hi.push((c + s).div_euclid(*denom) + 1);
                }
                (lo, hi)
            }
            Region::Box { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    /// Lattice points of the region, in `y` coordinates.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return out;
        }
        let mut cur = lo.clone();
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == cur.len() {
                    return out;
                }
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
                i += 1;
            }
        }
    }

    /// Whether `self ⊆ other` follows from the parameters: same family and
    /// shape, weaker constraints in `other`.
    pub fn is_inside(&self, other: &Region) -> bool {
        match (self, other) {
            (
                Region::Ellipsoid { weights: w1, center: c1, denom: d1, radius: r1 },
                Region::Ellipsoid { weights: w2, center: c2, denom: d2, radius: r2 },
            ) => w1 == w2 && c1 == c2 && d1 == d2 && r1 <= r2,
            (Region::Box { lo: l1, hi: h1, cut: k1 }, Region::Box { lo: l2, hi: h2, cut: k2 }) => {
                let box_ok = l1.iter().zip(l2).all(|(a, b)| a >= b) && h1.iter().zip(h2).all(|(a, b)| a <= b);
                let cut_ok = match (k1, k2) {
                    (_, None) => true,
                    (None, Some(_)) => false,
                    (Some(a), Some(b)) => a.normal == b.normal && a.bound <= b.bound,
                };
                box_ok && cut_ok
            }
            _ => false,
        }
    }
}

/// The regions a triple was cut from, shared distortion included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionWitness {
    pub map: Unimodular,
    pub regions: [Region; 3],
}

impl RegionWitness {
    pub fn set(&self, i: usize) -> Result<LatticeSet, LabError> {
        let dim = self.map.matrix.len();
        let pts = self.regions[i]
            .lattice_points()
            .iter()
            .map(|y| LatticePoint::new(self.map.forward(y)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LatticeSet::with_dim(dim, pts)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, LabError> {
        serde_json::from_str(s).map_err(|e| LabError::Parse(e.to_string()))
    }

    /// Checks that each `sets[i]` is exactly the image of the lattice points
    /// of region `i`, that the regions are nested and that the map is
    /// unimodular. Together these certify integral and relative convexity.
    pub fn certifies(&self, sets: [&LatticeSet; 3]) -> bool {
        if !self.map.is_consistent() {
            return false;
        }
        if !self.regions[0].is_inside(&self.regions[1]) || !self.regions[1].is_inside(&self.regions[2]) {
            return false;
        }
        (0..3).all(|i| {
            let count = self.regions[i].lattice_points().len();
            count == sets[i].len() && sets[i].iter().all(|p| self.regions[i].contains(&self.map.backward(p.coords())))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let u = Unimodular::random(4, 5, &mut rng);
            assert!(u.is_consistent());
            let y = vec![3, -1, 4, 1];
            assert_eq!(u.backward(&u.forward(&y)), y);
        }
    }

    #[test]
    fn ellipsoid_points() {
        let e = Region::Ellipsoid { weights: vec![1, 1], center: vec![0, 0], denom: 1, radius: 1 };
        assert_eq!(e.lattice_points().len(), 5);
        let e = Region::Ellipsoid { weights: vec![1, 1], center: vec![1, 1], denom: 2, radius: 2 };
        // Centre (1/2, 1/2): the unit square's corners.
        assert_eq!(e.lattice_points().len(), 4);
    }

    #[test]
    fn box_with_cut() {
        let b = Region::Box { lo: vec![0, 0], hi: vec![2, 2], cut: Some(Cut { normal: vec![1, 1], bound: 2 }) };
        assert_eq!(b.lattice_points().len(), 6);
        let outer = Region::Box { lo: vec![0, 0], hi: vec![3, 3], cut: None };
        assert!(b.is_inside(&outer));
        assert!(!outer.is_inside(&b));
    }
}
