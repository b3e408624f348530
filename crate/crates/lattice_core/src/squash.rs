//! Dimension-reducing integral projections of nested triples.
//!
//! The map has the shape `phi(x) = x - l(x - p0) * w`, where `l` is a linear
//! functional vanishing on the directions of a reference set through `p0`
//! and `w` satisfies `l(w) = 1`. It is the identity on the reference set,
//! sends the ambient space into the hyperplane `l(x - p0) = 0`, and is
//! injective on a set exactly when no difference of two of its points is
//! parallel to `w`.
//!
//! When the reference set lies in a hyperplane `x_n = c` and the big set is
//! full-dimensional, `l = x_n - c` and `w = e_n - t(1, ..., 1, 0)`, giving
//! `phi(x) = (x_1 + t(x_n - c), ..., x_{n-1} + t(x_n - c), c)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::linalg::{coefficients, direction_basis, is_integer, q, to_q, EchelonBasis};
use crate::{dimension, ConvexTriple, LatticeError, LatticePoint, LatticeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SquashVariant {
    /// `dim A2 < dim A3`; maps `A3` only.
    ReduceA3,
    /// `dim A1 < dim A2 = dim A3`; maps `A2` and `A3`.
    ReduceA2,
    /// All three spans equal, of dimension at least 2; maps every set.
    ReduceAll,
}

impl std::str::FromStr for SquashVariant {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reduce-a3" => Ok(SquashVariant::ReduceA3),
            "reduce-a2" => Ok(SquashVariant::ReduceA2),
            "reduce-all" => Ok(SquashVariant::ReduceAll),
            other => Err(LatticeError::Parse(format!("unknown squash variant {other:?}"))),
        }
    }
}

/// Full description of the map that was applied.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SquashMap {
    pub variant: SquashVariant,
    /// True when the coordinate form `(x_1 + t x_n, ..., 0)` was used.
    pub coordinate_form: bool,
    pub t: i64,
    pub base_point: Vec<i64>,
    /// The functional `l`, entries as `num/den`.
    pub functional: Vec<String>,
    pub direction: Vec<i64>,
}

impl SquashMap {
    fn functional_value(&self, l: &[BigRational], x: &[i64]) -> BigRational {
        l.iter()
            .zip(x.iter().zip(&self.base_point))
            .map(|(li, (xi, pi))| li * q(xi - pi))
            .sum()
    }

    fn apply_with(&self, l: &[BigRational], p: &LatticePoint) -> Result<LatticePoint, LatticeError> {
        let v = self.functional_value(l, p.coords());
        if !is_integer(&v) {
            return Err(LatticeError::NonIntegralMap);
        }
        let v = v.to_integer().to_i64().ok_or(LatticeError::Overflow)?;
        let coords = p
            .coords()
            .iter()
            .zip(&self.direction)
            .map(|(x, w)| w.checked_mul(v).and_then(|m| x.checked_sub(m)).ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LatticePoint::from(&coords[..]))
    }

    fn parsed_functional(&self) -> Vec<BigRational> {
        self.functional.iter().map(|s| s.parse().expect("own rational encoding")).collect()
    }

    /// Applies the map to one point.
    pub fn apply(&self, p: &LatticePoint) -> Result<LatticePoint, LatticeError> {
        self.apply_with(&self.parsed_functional(), p)
    }

    /// Applies the map to every point of a set.
    pub fn apply_set(&self, a: &LatticeSet) -> Result<LatticeSet, LatticeError> {
        let l = self.parsed_functional();
        let pts = a.iter().map(|p| self.apply_with(&l, p)).collect::<Result<Vec<_>, _>>()?;
        LatticeSet::with_dim(a.dim(), pts)
    }
}

/// Largest `|a_i| + |b_i|` over coordinates `i` and pairs of distinct points.
fn coordinate_pair_bound(a: &LatticeSet) -> i64 {
    let mut bound = 0i64;
    for i in 0..a.dim() {
        let (mut first, mut second) = (0i64, 0i64);
        for p in a.iter() {
            let v = p.coords()[i].abs();
            if v > first {
                second = first;
                first = v;
            } else if v > second {
                second = v;
            }
        }
        let pair = if a.len() >= 2 { first + second } else { first };
        bound = bound.max(pair);
    }
    bound
}

fn render(l: &[BigRational]) -> Vec<String> {
    l.iter().map(|x| x.to_string()).collect()
}

fn is_injective_on(map: &SquashMap, a: &LatticeSet) -> Result<bool, LatticeError> {
    Ok(map.apply_set(a)?.len() == a.len())
}

/// Builds the map for the given reference set inside `big`.
fn build_map(
    variant: SquashVariant,
    reference: &LatticeSet,
    big: &LatticeSet,
) -> Result<SquashMap, LatticeError> {
    let n = big.dim();
    let big_dim = dimension(big)?;
    if big_dim < 2 {
        return Err(LatticeError::DimensionHypothesis(
            "an injective reduction needs the big set to span at least a plane".into(),
        ));
    }
    let bound = coordinate_pair_bound(big);
    let last = n - 1;
    let c = reference.points()[0].coords()[last];
    let flat = variant == SquashVariant::ReduceAll || reference.iter().all(|p| p.coords()[last] == c);
    let moves = big.iter().any(|p| p.coords()[last] != c);
    if big_dim == n && flat && moves {
        let c = if variant == SquashVariant::ReduceAll { 0 } else { c };
        let t = bound + 1;
        let mut base_point = vec![0; n];
        base_point[last] = c;
        let mut direction = vec![-t; n];
        direction[last] = 1;
        let mut l = vec![BigRational::zero(); n];
        l[last] = q(1);
        let map = SquashMap {
            variant,
            coordinate_form: true,
            t,
            base_point,
            functional: render(&l),
            direction,
        };
        if !is_injective_on(&map, big)? {
            return Err(LatticeError::Internal("coordinate squash not injective".into()));
        }
        return Ok(map);
    }

    let p0 = reference.points()[0].clone();
    let r_basis = if variant == SquashVariant::ReduceAll { Vec::new() } else { direction_basis(reference) };
    let mut span = EchelonBasis::default();
    for r in &r_basis {
        span.insert(&to_q(r));
    }
    let candidates: Vec<Vec<i64>> = big
        .iter()
        .map(|p| p.sub(&p0).coords().to_vec())
        .filter(|d| !span.contains(&to_q(d)))
        .collect();
    if candidates.is_empty() {
        return Err(LatticeError::DimensionHypothesis("reference set already spans the big set".into()));
    }
    let e = &candidates[0];
    let mut basis = r_basis.clone();
    let mut eb = span.clone();
    eb.insert(&to_q(e));
    basis.push(e.clone());
    let e_pos = basis.len() - 1;
    for d in &candidates {
        if eb.insert(&to_q(d)) {
            basis.push(d.clone());
        }
    }
    let u = basis
        .iter()
        .enumerate()
        .find(|(i, _)| *i != e_pos)
        .map(|(_, u)| u.clone())
        .ok_or_else(|| LatticeError::DimensionHypothesis("big set spans less than a plane".into()))?;
    // Complete to an ambient basis with unit vectors and read off the
    // coefficient of `e`: a functional vanishing on every other basis vector.
    let mut full = basis.clone();
    for j in 0..n {
        let mut unit = vec![0; n];
        unit[j] = 1;
        if eb.insert(&to_q(&unit)) {
            full.push(unit);
        }
    }
    let mut l = Vec::with_capacity(n);
    for j in 0..n {
        let mut unit = vec![0; n];
        unit[j] = 1;
        let x = coefficients(&full, &unit).ok_or_else(|| LatticeError::Internal("basis completion".into()))?;
        l.push(x[e_pos].clone());
    }
    // Rescale so the values on the differences are coprime integers, then
    // take a Bezout combination of the differences as the direction.
    let diffs: Vec<Vec<i64>> = big.iter().map(|p| p.sub(&p0).coords().to_vec()).collect();
    let values: Vec<BigRational> =
        diffs.iter().map(|d| l.iter().zip(d).map(|(li, x)| li * q(*x)).sum()).collect();
    let denom = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums: Vec<BigInt> = values.iter().map(|v| (v * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let g = nums.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let scale = BigRational::new(denom, g.clone());
    let l: Vec<BigRational> = l.iter().map(|x| x * &scale).collect();
    let ints: Vec<i64> = nums
        .iter()
        .map(|x| (x / &g).to_i64().ok_or(LatticeError::Overflow))
        .collect::<Result<_, _>>()?;
    let bezout = bezout_all(&ints);
    let mut e = vec![0i64; n];
    for (coef, d) in bezout.iter().zip(&diffs) {
        for (ei, di) in e.iter_mut().zip(d) {
            *ei = coef.checked_mul(*di).and_then(|m| ei.checked_add(m)).ok_or(LatticeError::Overflow)?;
        }
    }
    let emax = e.iter().map(|x| x.abs()).max().unwrap_or(0);
    let mut t = bound + emax + 1;
    loop {
        let direction: Vec<i64> = e.iter().zip(&u).map(|(ei, ui)| ei - t * ui).collect();
        let map = SquashMap {
            variant,
            coordinate_form: false,
            t,
            base_point: p0.coords().to_vec(),
            functional: render(&l),
            direction,
        };
        if is_injective_on(&map, big)? {
            return Ok(map);
        }
        t += 1;
    }
}

/// Coefficients `x` with `sum x_i v_i = gcd(v)`.
fn bezout_all(v: &[i64]) -> Vec<i64> {
    let mut coef = vec![0i64; v.len()];
    let mut g = 0i64;
    for (i, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if g == 0 {
            g = x.abs();
            coef[i] = x.signum();
            continue;
        }
        let e = g.extended_gcd(&x);
        for c in coef.iter_mut().take(i) {
            *c *= e.x;
        }
        coef[i] = e.y;
        g = e.gcd;
    }
    coef
}

/// Projects a nested triple one dimension down, following the chosen variant.
pub fn squash_projection(
    triple: &ConvexTriple,
    variant: SquashVariant,
) -> Result<(ConvexTriple, SquashMap), LatticeError> {
    let (a1, a2, a3) = (triple.a1(), triple.a2(), triple.a3());
    if a1.is_empty() {
        return Err(LatticeError::EmptySet);
    }
    let (d1, d2, d3) = (dimension(a1)?, dimension(a2)?, dimension(a3)?);
    let hyp = |msg: String| Err(LatticeError::DimensionHypothesis(msg));
    match variant {
        SquashVariant::ReduceA3 => {
            if d2 >= d3 {
                return hyp(format!("reduce-a3 needs dim A2 < dim A3, got {d2} and {d3}"));
            }
            let map = build_map(variant, a2, a3)?;
            let out = ConvexTriple::new(a1.clone(), a2.clone(), map.apply_set(a3)?)?;
            Ok((out, map))
        }
        SquashVariant::ReduceA2 => {
            if d1 >= d2 || d2 != d3 {
                return hyp(format!("reduce-a2 needs dim A1 < dim A2 = dim A3, got {d1}, {d2}, {d3}"));
            }
            let map = build_map(variant, a1, a3)?;
            let out = ConvexTriple::new(a1.clone(), map.apply_set(a2)?, map.apply_set(a3)?)?;
            Ok((out, map))
        }
        SquashVariant::ReduceAll => {
            if d1 != d2 || d2 != d3 || d3 < 2 {
                return hyp(format!("reduce-all needs equal spans of dimension >= 2, got {d1}, {d2}, {d3}"));
            }
            let map = build_map(variant, a1, a3)?;
            let out = ConvexTriple::new(map.apply_set(a1)?, map.apply_set(a2)?, map.apply_set(a3)?)?;
            Ok((out, map))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::union_count;

    fn set(rows: &[&[i64]]) -> LatticeSet {
        LatticeSet::from_rows(rows).unwrap()
    }

    #[test]
    fn gap_zero_rejected() {
        let a = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        let t = ConvexTriple::new(a.clone(), a.clone(), a).unwrap();
        assert!(matches!(
            squash_projection(&t, SquashVariant::ReduceA3),
            Err(LatticeError::DimensionHypothesis(_))
        ));
    }

    #[test]
    fn plane_plus_one_point() {
        let a2 = set(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        let mut rows: Vec<&[i64]> = vec![&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0]];
        rows.push(&[0, 0, 1]);
        let a3 = set(&rows);
        let a1 = set(&[&[0, 0, 0], &[1, 0, 0]]);
        let t = ConvexTriple::new(a1, a2, a3.clone()).unwrap();
        let (img, map) = squash_projection(&t, SquashVariant::ReduceA3).unwrap();
        assert!(map.coordinate_form);
        assert_eq!(map.t, 3);
        assert_eq!(img.a3().len(), a3.len());
        assert!(img.a3().iter().all(|p| p.coords()[2] == 0));
        assert_eq!(map.apply(&LatticePoint::from([0, 0, 1])).unwrap(), LatticePoint::from([3, 3, 0]));
        assert!(union_count(&img).unwrap() <= union_count(&t).unwrap());
    }

    #[test]
    fn general_position_reference() {
        // A2 spans a tilted line, A3 a plane in 3-space.
        let a2 = set(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]]);
        let a3 = set(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2], &[1, 0, 0], &[2, 1, 1]]);
        let a1 = set(&[&[1, 1, 1]]);
        let t = ConvexTriple::new(a1, a2.clone(), a3.clone()).unwrap();
        let (img, map) = squash_projection(&t, SquashVariant::ReduceA3).unwrap();
        assert!(!map.coordinate_form);
        assert_eq!(img.a3().len(), a3.len());
        for p in a2.iter() {
            assert_eq!(map.apply(p).unwrap(), *p);
        }
        assert_eq!(dimension(img.a3()).unwrap(), 1);
        assert!(union_count(&img).unwrap() <= union_count(&t).unwrap());
    }

    #[test]
    fn reduce_all_square() {
        let a = set(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let t = ConvexTriple::new(a.clone(), a.clone(), a.clone()).unwrap();
        let (img, map) = squash_projection(&t, SquashVariant::ReduceAll).unwrap();
        assert!(map.coordinate_form);
        assert_eq!(img.a3().len(), 4);
        assert_eq!(dimension(img.a3()).unwrap(), 1);
        assert!(union_count(&img).unwrap() <= union_count(&t).unwrap());
    }

    #[test]
    fn reduce_a2_hypothesis() {
        let a1 = set(&[&[0, 0]]);
        let a2 = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        let t = ConvexTriple::new(a1.clone(), a2.clone(), a2.clone()).unwrap();
        let (img, _) = squash_projection(&t, SquashVariant::ReduceA2).unwrap();
        assert_eq!(img.a1(), &a1);
        assert_eq!(img.a3().len(), 3);
        let bad = ConvexTriple::new(a2.clone(), a2.clone(), a2).unwrap();
        assert!(squash_projection(&bad, SquashVariant::ReduceA2).is_err());
    }

    #[test]
    fn bezout() {
        let v = [6, 10, 15];
        let c = bezout_all(&v);
        assert_eq!(c.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>(), 1);
        assert_eq!(bezout_all(&[0, -3]).iter().zip(&[0, -3]).map(|(a, b)| a * b).sum::<i64>(), 3);
    }

    #[test]
    fn tilted_plane_in_space() {
        let a3 = set(&[&[-3, -3, 2], &[-3, -1, -2], &[-3, 2, 1], &[-3, 3, -3]]);
        let a1 = set(&[&[-3, -3, 2]]);
        let t = ConvexTriple::new(a1.clone(), a1, a3.clone()).unwrap();
        let (img, _) = squash_projection(&t, SquashVariant::ReduceA3).unwrap();
        assert_eq!(img.a3().len(), 4);
        assert_eq!(dimension(img.a3()).unwrap(), 1);
    }

    #[test]
    fn variant_names() {
        assert_eq!("reduce-all".parse::<SquashVariant>().unwrap(), SquashVariant::ReduceAll);
        assert!("reduce".parse::<SquashVariant>().is_err());
    }
}
