//! Seeded generators of nested triples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lattice_core::{dimension, ConvexTriple, LatticePoint, LatticeSet};

use crate::region::{Cut, Region, RegionWitness, Unimodular};
use crate::LabError;

const MAX_RETRIES: usize = 64;

/// Shape family used for the regions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Ellipsoid,
    Box,
    Either,
}

/// Tunable knobs of [`generate_with`].
#[derive(Clone, Debug)]
pub struct TripleProfile {
    pub dim: usize,
    pub size_target: usize,
    /// `#A2` as a percentage of `#A3`, drawn from this range.
    pub a2_percent: (u32, u32),
    /// `#A1` as a percentage of `#A2`, drawn from this range.
    pub a1_percent: (u32, u32),
    pub min_a1_dim: usize,
    pub shape: Shape,
    pub shears: usize,
}

impl TripleProfile {
    pub fn new(dim: usize, size_target: usize) -> Self {
        TripleProfile {
            dim,
            size_target,
            a2_percent: (40, 100),
            a1_percent: (10, 100),
            min_a1_dim: dim,
            shape: Shape::Either,
            shears: dim,
        }
    }
}

/// Nested convex triple in dimension `dim` with `#A3` close to (at least)
/// `size_target`; `A1` is full-dimensional. Deterministic in `seed`.
pub fn generate_nested_triple(dim: usize, size_target: usize, seed: u64) -> Result<ConvexTriple, LabError> {
    generate_with(&TripleProfile::new(dim, size_target), seed)
}

pub fn generate_with(profile: &TripleProfile, seed: u64) -> Result<ConvexTriple, LabError> {
    let dim = profile.dim;
    if dim < 2 {
        return Err(LabError::Precondition(format!("dimension {dim} below 2")));
    }
    if profile.size_target < dim + 1 {
        return Err(LabError::Precondition(format!(
            "size target {} below dim + 1 = {}",
            profile.size_target,
            dim + 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let shape = match profile.shape {
            Shape::Either => {
                if rng.gen_bool(0.6) {
                    Shape::Ellipsoid
                } else {
                    Shape::Box
                }
            }
            s => s,
        };
        let regions = match shape {
            Shape::Ellipsoid => ellipsoid_regions(profile, &mut rng),
            _ => box_regions(profile, &mut rng),
        };
        let Some(regions) = regions else { continue };
        let map = Unimodular::random(dim, rng.gen_range(0..=profile.shears), &mut rng);
        let witness = RegionWitness { map, regions };
        let a1 = witness.set(0)?;
        if a1.is_empty() || dimension(&a1)? < profile.min_a1_dim {
            continue;
        }
        let triple = ConvexTriple::new(a1, witness.set(1)?, witness.set(2)?)?;
        return Ok(triple.with_regions(Some(witness.to_json())));
    }
    Err(LabError::GenerationFailed { retries: MAX_RETRIES })
}

fn percent_of(n: usize, range: (u32, u32), rng: &mut ChaCha8Rng) -> usize {
    let p = rng.gen_range(range.0..=range.1) as usize;
    (n * p).div_ceil(100).max(1)
}

/// Smallest value in `[lo, hi]` whose region holds at least `target`
/// lattice points, or `hi` if none does.
fn smallest_param(lo: i64, hi: i64, target: usize, count: impl Fn(i64) -> usize) -> i64 {
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if count(mid) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

fn ellipsoid_regions(profile: &TripleProfile, rng: &mut ChaCha8Rng) -> Option<[Region; 3]> {
    let dim = profile.dim;
    let weights: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=3)).collect();
    let denom: i64 = rng.gen_range(1..=3);
    let center: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..denom)).collect();
    let make = |radius: i64| Region::Ellipsoid {
        weights: weights.clone(),
        center: center.clone(),
        denom,
        radius,
    };
    let count = |r: i64| make(r).lattice_points().len();
    let mut cap = 1i64;
    while count(cap) < profile.size_target {
        cap *= 2;
        if cap > 1 << 40 {
            return None;
        }
    }
    let r3 = smallest_param(0, cap, profile.size_target, count);
    let n3 = count(r3);
    let r2 = smallest_param(0, r3, percent_of(n3, profile.a2_percent, rng), count);
    let n2 = count(r2);
    let r1 = smallest_param(0, r2, percent_of(n2, profile.a1_percent, rng), count);
    Some([make(r1), make(r2), make(r3)])
}

fn box_regions(profile: &TripleProfile, rng: &mut ChaCha8Rng) -> Option<[Region; 3]> {
    let dim = profile.dim;
    let base = integer_root_ceil(profile.size_target, dim) as i64;
    let sides: Vec<i64> = (0..dim).map(|_| (base + rng.gen_range(-1..=1)).max(2)).collect();
    let hi3: Vec<i64> = sides.iter().map(|s| s - 1).collect();
    let lo3 = vec![0i64; dim];
    let normal: Vec<i64> = loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=2)).collect();
        if v.iter().any(|&x| x != 0) {
            break v;
        }
    };
    let max_dot: i64 = normal.iter().zip(&hi3).map(|(a, b)| a * b).sum();
    let make = |lo: &[i64], hi: &[i64], bound: i64| Region::Box {
        lo: lo.to_vec(),
        hi: hi.to_vec(),
        cut: Some(Cut { normal: normal.clone(), bound }),
    };
    let count = |lo: &[i64], hi: &[i64], b: i64| make(lo, hi, b).lattice_points().len();
    let b3 = smallest_param(0, max_dot, profile.size_target, |b| count(&lo3, &hi3, b));
    let n3 = count(&lo3, &hi3, b3);
    let shrink = |hi: &[i64], rng: &mut ChaCha8Rng| -> Vec<i64> {
        hi.iter().map(|&h| if h >= 2 && rng.gen_bool(0.3) { h - 1 } else { h }).collect()
    };
    let hi2 = shrink(&hi3, rng);
    let b2 = smallest_param(0, b3, percent_of(n3, profile.a2_percent, rng), |b| count(&lo3, &hi2, b));
    let n2 = count(&lo3, &hi2, b2);
    let hi1 = shrink(&hi2, rng);
    let b1 = smallest_param(0, b2, percent_of(n2, profile.a1_percent, rng), |b| count(&lo3, &hi1, b));
    Some([make(&lo3, &hi1, b1), make(&lo3, &hi2, b2), make(&lo3, &hi3, b3)])
}

fn integer_root_ceil(n: usize, k: usize) -> usize {
    let mut r = 1usize;
    while r.pow(k as u32) < n {
        r += 1;
    }
    r
}

/// Large box-shaped triple with `#A3` in `[min_size, max_size]`, `A2` of at
/// least a quarter of `A3` and a small full-dimensional `A1`. Boxes keep the
/// longest chain close to the minimum possible for the size.
pub fn generate_large_triple(
    dim: usize,
    min_size: usize,
    max_size: usize,
    seed: u64,
) -> Result<ConvexTriple, LabError> {
    if dim < 2 || min_size < dim + 1 || max_size < min_size {
        return Err(LabError::Precondition(format!(
            "large instance needs dim >= 2 and dim + 1 <= min_size <= max_size, got {dim}, {min_size}, {max_size}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let target = rng.gen_range(min_size..=max_size);
        let side = integer_root_ceil(target, dim) as i64;
        let hi3 = vec![side - 1; dim];
        let lo = vec![0i64; dim];
        let normal: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=2)).collect();
        let max_dot: i64 = normal.iter().zip(&hi3).map(|(a, b)| a * b).sum();
        let make = |hi: &[i64], bound: i64| Region::Box {
            lo: lo.clone(),
            hi: hi.to_vec(),
            cut: Some(Cut { normal: normal.clone(), bound }),
        };
        let count = |hi: &[i64], b: i64| make(hi, b).lattice_points().len();
        let b3 = smallest_param(0, max_dot, target, |b| count(&hi3, b));
        let n3 = count(&hi3, b3);
        if n3 < min_size || n3 > max_size {
            continue;
        }
        let hi2 = hi3.clone();
        let t2 = percent_of(n3, (26, 60), &mut rng);
        let b2 = smallest_param(0, b3, t2, |b| count(&hi2, b));
        let hi1: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=2)).collect();
        let b1: i64 = normal.iter().zip(&hi1).map(|(a, b)| a * b).sum::<i64>().min(b2);
        let regions = [make(&hi1, b1), make(&hi2, b2), make(&hi3, b3)];
        let map = Unimodular::random(dim, rng.gen_range(0..=2), &mut rng);
        let witness = RegionWitness { map, regions };
        let a1 = witness.set(0)?;
        if a1.is_empty() || dimension(&a1)? < dim {
            continue;
        }
        let triple = ConvexTriple::new(a1, witness.set(1)?, witness.set(2)?)?;
        return Ok(triple.with_regions(Some(witness.to_json())));
    }
    Err(LabError::GenerationFailed { retries: MAX_RETRIES })
}

/// Nested but generally non-convex triple: random points in a cube, nested
/// by prefix. Used where only nesting matters.
pub fn generate_scattered_triple(dim: usize, max_points: usize, seed: u64) -> Result<ConvexTriple, LabError> {
    if dim < 2 || max_points < dim + 1 {
        return Err(LabError::Precondition(format!("scattered triple needs dim >= 2 and enough points, got {dim}, {max_points}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = rng.gen_range(2..=5i64);
    for _ in 0..MAX_RETRIES {
        let n = rng.gen_range(dim + 1..=max_points);
        let pts: Vec<LatticePoint> = (0..n)
            .map(|_| LatticePoint::from(&(0..dim).map(|_| rng.gen_range(0..=span)).collect::<Vec<_>>()[..]))
            .collect();
        let k2 = rng.gen_range(dim + 1..=n);
        let k1 = rng.gen_range(dim + 1..=k2);
        let a1 = LatticeSet::new(pts[..k1].to_vec())?;
        if dimension(&a1)? < dim {
            continue;
        }
        let a2 = LatticeSet::new(pts[..k2].to_vec())?;
        let a3 = LatticeSet::new(pts)?;
        return Ok(ConvexTriple::new(a1, a2, a3)?);
    }
    Err(LabError::GenerationFailed { retries: MAX_RETRIES })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::is_relatively_convex;

    #[test]
    fn deterministic() {
        let a = generate_nested_triple(3, 30, 1).unwrap();
        let b = generate_nested_triple(3, 30, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn requested_dimension_and_size() {
        let t = generate_nested_triple(3, 30, 1).unwrap();
        assert!(dimension(t.a1()).unwrap() >= 3);
        assert!(t.a3().len() >= 30);
        assert!(t.convexity().unwrap().all());
    }

    #[test]
    fn size_below_floor_rejected() {
        assert!(matches!(generate_nested_triple(2, 2, 0), Err(LabError::Precondition(_))));
        assert!(matches!(generate_nested_triple(1, 10, 0), Err(LabError::Precondition(_))));
    }

    #[test]
    fn witness_certifies() {
        for seed in 0..20 {
            let t = generate_nested_triple(3, 40, seed).unwrap();
            let w = RegionWitness::from_json(t.witness_regions().unwrap()).unwrap();
            assert!(w.certifies([t.a1(), t.a2(), t.a3()]));
            assert!(is_relatively_convex(t.a1(), t.a2()).unwrap());
        }
    }

    #[test]
    fn large_instance_in_range() {
        let t = generate_large_triple(4, 1100, 3000, 5).unwrap();
        assert!((1100..=3000).contains(&t.a3().len()));
        assert!(4 * t.a2().len() >= t.a3().len());
        assert_eq!(dimension(t.a1()).unwrap(), 4);
    }
}
