//! Exact convex-hull membership via a rational phase-one simplex.
//!
//! A failed membership test yields a Farkas certificate, which is turned into
//! a valid inequality for the hull and cached; later queries try the cached
//! inequalities before solving another LP.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::q;
use crate::{LatticeError, LatticePoint, LatticeSet};

/// Outcome of one LP solve.
enum Membership {
    Inside,
    /// Rational normal `c` with `c.b < c.p` for all hull points `b`.
    Outside(Vec<BigRational>),
}

fn lp_membership(b: &LatticeSet, p: &[i64]) -> Membership {
    let d = b.dim();
    let m = d + 1;
    let n = b.len();
    let cols = n + m;
    // Row 0: sum of weights = 1; rows 1..=d: sum of weights * (b - p) = 0.
    let mut t: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols + 1]; m];
    for (j, pt) in b.iter().enumerate() {
        t[0][j] = BigRational::one();
        for i in 0..d {
            t[i + 1][j] = q(pt.coords()[i] - p[i]);
        }
    }
    for i in 0..m {
        t[i][n + i] = BigRational::one();
    }
    t[0][cols] = BigRational::one();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Phase-one reduced costs: artificials cost 1, weights cost 0.
    let mut rc: Vec<BigRational> = vec![BigRational::zero(); cols + 1];
    for j in 0..n {
        let mut s = BigRational::zero();
        for row in &t {
            s += &row[j];
        }
        rc[j] = -s;
    }
    rc[cols] = -BigRational::one();

    loop {
        let Some(enter) = (0..cols).find(|&j| rc[j].is_negative()) else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][cols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let (r, _) = leave.expect("phase-one LP is bounded");
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let f = rc[enter].clone();
        for (x, y) in rc.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        basis[r] = enter;
    }
    // The objective value is -rc[cols].
    if rc[cols].is_zero() {
        return Membership::Inside;
    }
    // Duals: y_i = cost(artificial_i) - reduced cost = 1 - rc[n+i].
    let y: Vec<BigRational> = (0..m).map(|i| BigRational::one() - &rc[n + i]).collect();
    Membership::Outside(y[1..].to_vec())
}

/// Hull-membership oracle for a fixed point set, caching separating
/// inequalities found along the way.
pub struct HullOracle<'a> {
    set: &'a LatticeSet,
    separators: Vec<(Vec<BigInt>, BigInt)>,
}

impl<'a> HullOracle<'a> {
    pub fn new(set: &'a LatticeSet) -> Self {
        HullOracle { set, separators: Vec::new() }
    }

    /// Whether `p` lies in the convex hull of the set.
    pub fn contains(&mut self, p: &LatticePoint) -> Result<bool, LatticeError> {
        if p.dim() != self.set.dim() {
            return Err(LatticeError::DimensionMismatch { expected: self.set.dim(), found: p.dim() });
        }
        if self.set.contains(p) {
            return Ok(true);
        }
        if self.set.is_empty() {
            return Ok(false);
        }
        let pc: Vec<BigInt> = p.coords().iter().map(|&x| BigInt::from(x)).collect();
        for (c, h) in &self.separators {
            if dot(c, &pc) > *h {
                return Ok(false);
            }
        }
        match lp_membership(self.set, p.coords()) {
            Membership::Inside => Ok(true),
            Membership::Outside(c) => {
                let c = clear_denominators(&c);
                let h = self
                    .set
                    .iter()
                    .map(|b| dot(&c, &b.coords().iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()))
                    .max()
                    .expect("nonempty set");
                debug_assert!(dot(&c, &pc) > h);
                self.separators.push((c, h));
                Ok(false)
            }
        }
    }

    pub fn cached_inequalities(&self) -> usize {
        self.separators.len()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn clear_denominators(c: &[BigRational]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Whether `p` lies in the convex hull of `set`.
pub fn in_convex_hull(set: &LatticeSet, p: &LatticePoint) -> Result<bool, LatticeError> {
    HullOracle::new(set).contains(p)
}

/// Whether no point of `a - b` lies in the convex hull of `b`.
pub fn is_relatively_convex(b: &LatticeSet, a: &LatticeSet) -> Result<bool, LatticeError> {
    b.check_dim(a)?;
    if !b.is_subset_of(a) {
        return Err(LatticeError::NotSubset);
    }
    let Some((lo, hi)) = b.bounding_box() else { return Ok(true) };
    let mut oracle = HullOracle::new(b);
    for p in a.iter() {
        if b.contains(p) {
            continue;
        }
        let inside_box = p.coords().iter().enumerate().all(|(i, &c)| lo[i] <= c && c <= hi[i]);
        if inside_box && oracle.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `a` contains every integer point of its own convex hull.
///
/// Scans the bounding box, so it is meant for sets of modest extent.
pub fn is_integrally_convex(a: &LatticeSet) -> Result<bool, LatticeError> {
    let Some((lo, hi)) = a.bounding_box() else { return Ok(true) };
    let mut oracle = HullOracle::new(a);
    let mut cur = lo.clone();
    loop {
        let p = LatticePoint::from(&cur[..]);
        if !a.contains(&p) && oracle.contains(&p)? {
            return Ok(false);
        }
        // Odometer step through the box.
        let mut i = 0;
        loop {
            if i == cur.len() {
                return Ok(true);
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

/// Integer points of the convex hull of `a` (bounding-box scan).
pub fn integer_hull_points(a: &LatticeSet) -> Result<LatticeSet, LatticeError> {
    let Some((lo, hi)) = a.bounding_box() else { return Ok(a.clone()) };
    let mut oracle = HullOracle::new(a);
    let mut out = Vec::new();
    let mut cur = lo.clone();
    'scan: loop {
        let p = LatticePoint::from(&cur[..]);
        if oracle.contains(&p)? {
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == cur.len() {
                break 'scan;
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
    LatticeSet::with_dim(a.dim(), out)
}
