//! Definition-level reference implementations, independent of the
//! optimized code in `lattice_core`. Quadratic or worse; small inputs only.

use std::collections::{BTreeSet, HashSet};

use lattice_core::{LatticeSet, LatticeError};

/// A coordinate of a mid-point as a reduced fraction `(num, den)`.
pub type Half = (i64, i64);

pub fn midpoints(a: &LatticeSet, b: &LatticeSet) -> BTreeSet<Vec<Half>> {
    let mut out = BTreeSet::new();
    for p in a.iter() {
        for q in b.iter() {
            let m = p
                .coords()
                .iter()
                .zip(q.coords())
                .map(|(x, y)| if (x + y) % 2 == 0 { ((x + y) / 2, 1) } else { (x + y, 2) })
                .collect();
            out.insert(m);
        }
    }
    out
}

/// Doubled points `p + q` rewritten as fractions, for comparison.
pub fn halves_of_doubled(doubled: &LatticeSet) -> BTreeSet<Vec<Half>> {
    doubled
        .iter()
        .map(|p| p.coords().iter().map(|&c| if c % 2 == 0 { (c / 2, 1) } else { (c, 2) }).collect())
        .collect()
}

/// Tries every start and every step given by an ordered pair.
pub fn longest_chain(a: &LatticeSet) -> usize {
    let pts: HashSet<Vec<i64>> = a.iter().map(|p| p.coords().to_vec()).collect();
    let mut best = usize::from(!a.is_empty());
    for p in a.iter() {
        for q in a.iter() {
            if p == q {
                continue;
            }
            let step: Vec<i64> = q.coords().iter().zip(p.coords()).map(|(x, y)| x - y).collect();
            let mut cur = p.coords().to_vec();
            let mut len = 0;
            while pts.contains(&cur) {
                len += 1;
                cur.iter_mut().zip(&step).for_each(|(c, s)| *c += s);
            }
            best = best.max(len);
        }
    }
    best
}

/// `x` is kept iff `x_axis >= 0` and the line through `x` along `axis`
/// holds more than `x_axis` points of `a`.
pub fn arrangement(a: &LatticeSet, axis: usize) -> Result<LatticeSet, LatticeError> {
    let mut out = BTreeSet::new();
    for p in a.iter() {
        let line = a
            .iter()
            .filter(|b| (0..a.dim()).all(|j| j == axis || b.coords()[j] == p.coords()[j]))
            .count() as i64;
        for h in 0..line {
            let mut x = p.coords().to_vec();
            x[axis] = h;
            out.insert(x);
        }
    }
    let rows: Vec<Vec<i64>> = out.into_iter().collect();
    if rows.is_empty() {
        return LatticeSet::empty(a.dim());
    }
    LatticeSet::from_rows(&rows)
}

/// `#(A1.A3 ∪ A2.A2)`.
pub fn union_count(a1: &LatticeSet, a2: &LatticeSet, a3: &LatticeSet) -> usize {
    let mut m = midpoints(a1, a3);
    m.extend(midpoints(a2, a2));
    m.len()
}

/// `(before, after)` for each arrangement step along axes `0..d` in order.
pub fn arrangement_steps(
    a1: &LatticeSet,
    a2: &LatticeSet,
    a3: &LatticeSet,
) -> Result<Vec<(usize, usize)>, LatticeError> {
    let (mut b1, mut b2, mut b3) = (a1.clone(), a2.clone(), a3.clone());
    let mut steps = Vec::new();
    for axis in 0..a1.dim() {
        let before = union_count(&b1, &b2, &b3);
        b1 = arrangement(&b1, axis)?;
        b2 = arrangement(&b2, axis)?;
        b3 = arrangement(&b3, axis)?;
        steps.push((before, union_count(&b1, &b2, &b3)));
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let a = LatticeSet::from_rows(&[[0, 0], [1, 0], [2, 0], [0, 5]]).unwrap();
        assert_eq!(longest_chain(&a), 3);
        let arr = arrangement(&a, 1).unwrap();
        assert_eq!(arr.len(), 4);
        assert!(arr.contains_coords(&[0, 1]));
        assert_eq!(midpoints(&a, &a).len(), 9);
    }
}
