//! Exhaustive search for abelian covers whose group is larger than a linear
//! bound in the genus.
//!
//! Completeness: an abelian group acting on a curve of genus `g >= 2` has
//! order at most `4g + 4`, so orders up to `4 gmax + 4` are searched. For a
//! fixed order `N` and quotient genus `gamma`, the formula
//! `2g - 2 = N(2 gamma - 2) + sum (N - N/r_i)` bounds `gamma` and, since each
//! term of the sum is at least `N/2`, the number of branch points.
//!
//! Data are counted once per orbit of `Aut(G)` acting on the multiset of
//! branch elements: a multiset is kept only if it is the lexicographically
//! smallest image of itself.
//!
//! On the no-hyperelliptic filter: only involutions inside `G` are tested. If
//! `C` is hyperelliptic its hyperelliptic involution is central in `Aut(C)`;
//! if it lies outside `G`, the group it generates with `G` is abelian of
//! order `2|G|`, which exceeds `4g + 4` once `|G| > 3g + 6 >= 2g + 2`. So
//! above `3g + 6` the filter is exact; below that threshold it may miss
//! hyperelliptic curves.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datum::{hurwitz_genus, involution_quotients, witness_from, CoverDatum, Involution, Witness, WitnessKind};
use crate::group::FiniteAbelianGroup;
use crate::CoverError;

/// `slope * g + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearBound {
    pub slope: Rational64,
    pub intercept: Rational64,
}

impl LinearBound {
    pub fn new(slope: i64, intercept: i64) -> Self {
        LinearBound { slope: slope.into(), intercept: intercept.into() }
    }

    pub fn at(&self, g: u64) -> Rational64 {
        self.slope * Rational64::from(g as i64) + self.intercept
    }

    pub fn exceeded_by(&self, order: u64, g: u64) -> bool {
        Rational64::from(order as i64) > self.at(g)
    }
}

fn parse_rational(s: &str) -> Result<Rational64, CoverError> {
    let bad = || CoverError::Parse(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n.trim().parse().map_err(|_| bad())?, d))
        }
        None => Ok(Rational64::from(s.trim().parse::<i64>().map_err(|_| bad())?)),
    }
}

impl FromStr for LinearBound {
    type Err = CoverError;

    /// Accepts forms such as `3g+6`, `4g-4`, `g`, `5/2g+1` or `12`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (slope, rest) = match t.find('g') {
            Some(i) => {
                let c = &t[..i];
                let slope = match c {
                    "" | "+" => Rational64::from(1),
                    "-" => Rational64::from(-1),
                    _ => parse_rational(c)?,
                };
                (slope, &t[i + 1..])
            }
            None => (Rational64::from(0), t.as_str()),
        };
        let intercept = if rest.is_empty() { Rational64::from(0) } else { parse_rational(rest.trim_start_matches('+'))? };
        Ok(LinearBound { slope, intercept })
    }
}

impl fmt::Display for LinearBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope != Rational64::from(0) {
            if self.slope == Rational64::from(1) {
                write!(f, "g")?;
            } else {
                write!(f, "{}g", self.slope)?;
            }
            if self.intercept > Rational64::from(0) {
                write!(f, "+{}", self.intercept)?;
            } else if self.intercept < Rational64::from(0) {
                write!(f, "{}", self.intercept)?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.intercept)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Filters {
    /// Only this quotient genus.
    pub gamma: Option<u64>,
    pub kmin: Option<usize>,
    pub kmax: Option<usize>,
    /// Drop data with an involution whose quotient is rational.
    pub require_no_hyperelliptic_witness: bool,
    /// Cyclic groups only.
    pub assume_cyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRecord {
    #[serde(flatten)]
    pub datum: CoverDatum,
    pub genus: u64,
    pub order: u64,
    pub signature: Vec<u64>,
    pub bound_tested: String,
    pub exceeds: bool,
    /// Every order-2 subgroup with its quotient genus.
    pub witnesses: Vec<Involution>,
    /// The first witness of genus 0, else of genus 1.
    pub witness: Option<Witness>,
}

impl EnumerationRecord {
    pub fn k(&self) -> usize {
        self.datum.branch.len()
    }

    /// `(g, |G|, k, signature)`.
    pub fn signature_key(&self) -> (u64, u64, usize, Vec<u64>) {
        (self.genus, self.order, self.k(), self.signature.clone())
    }

    fn sort_key(&self) -> (u64, u64, Vec<u64>, u64, Vec<u64>, Vec<Vec<u64>>) {
        (
            self.genus,
            self.order,
            self.datum.group.invariant_factors().to_vec(),
            self.datum.quotient_genus,
            self.signature.clone(),
            self.datum.branch.iter().map(|x| x.residues.clone()).collect(),
        )
    }
}

struct Cell<'a> {
    group: FiniteAbelianGroup,
    gamma: u64,
    n: u64,
    gmin: u64,
    gmax: u64,
    bound: &'a LinearBound,
    filters: &'a Filters,
    /// `N - N/r` per element index.
    weight: Vec<u64>,
    add: Vec<Vec<usize>>,
    autos: Option<Vec<Vec<usize>>>,
}

impl<'a> Cell<'a> {
    fn new(group: FiniteAbelianGroup, gamma: u64, gmin: u64, gmax: u64, bound: &'a LinearBound, filters: &'a Filters) -> Self {
        let n = group.order();
        let elems = group.elements();
        let weight = elems.iter().map(|x| n - n / group.element_order(x)).collect();
        let add = elems
            .iter()
            .map(|x| elems.iter().map(|y| group.index_of(&group.add(x, y))).collect())
            .collect();
        Cell { group, gamma, n, gmin, gmax, bound, filters, weight, add, autos: None }
    }

    /// Largest `sum (N - N/r_i)` compatible with `g <= gmax`.
    fn cap(&self) -> i64 {
        2 * self.gmax as i64 - 2 - self.n as i64 * (2 * self.gamma as i64 - 2)
    }

    fn run(mut self) -> Result<Vec<EnumerationRecord>, CoverError> {
        let mut out = Vec::new();
        let cap = self.cap();
        if cap < 0 {
            return Ok(out);
        }
        let mut chosen = Vec::new();
        self.dfs(1, 0, 0, cap as u64, &mut chosen, &mut out)?;
        Ok(out)
    }

    fn dfs(
        &mut self,
        start: usize,
        sum_w: u64,
        sum: usize,
        cap: u64,
        chosen: &mut Vec<usize>,
        out: &mut Vec<EnumerationRecord>,
    ) -> Result<(), CoverError> {
        self.visit(sum_w, sum, chosen, out)?;
        if self.filters.kmax.is_some_and(|k| chosen.len() >= k) {
            return Ok(());
        }
        for i in start..self.n as usize {
            let w = sum_w + self.weight[i];
            if w > cap {
                continue;
            }
            chosen.push(i);
            let s = self.add[sum][i];
            self.dfs(i, w, s, cap, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }

    fn visit(&mut self, sum_w: u64, sum: usize, chosen: &[usize], out: &mut Vec<EnumerationRecord>) -> Result<(), CoverError> {
        if sum != 0 || self.filters.kmin.is_some_and(|k| chosen.len() < k) {
            return Ok(());
        }
        let twice = self.n as i64 * (2 * self.gamma as i64 - 2) + sum_w as i64 + 2;
        if twice < 0 || twice % 2 != 0 {
            return Ok(());
        }
        let g = (twice / 2) as u64;
        if g < self.gmin || g > self.gmax || !self.bound.exceeded_by(self.n, g) {
            return Ok(());
        }
        let branch: Vec<_> = chosen.iter().map(|&i| self.group.element_at(i)).collect();
        if self.gamma == 0 && !self.group.generates(&branch) {
            return Ok(());
        }
        if !self.is_canonical(chosen) {
            return Ok(());
        }
        let mut branch = branch;
        branch.sort_by_key(|x| (std::cmp::Reverse(self.group.element_order(x)), self.group.index_of(x)));
        let datum = CoverDatum::new(self.group.clone(), self.gamma, branch)?;
        let witnesses = involution_quotients(&datum)?;
        let witness = witness_from(&witnesses);
        if self.filters.require_no_hyperelliptic_witness && witness.as_ref().is_some_and(|w| w.kind == WitnessKind::Hyperelliptic) {
            return Ok(());
        }
        debug_assert_eq!(hurwitz_genus(&datum).ok(), Some(g));
        out.push(EnumerationRecord {
            signature: datum.signature(),
            order: self.n,
            genus: g,
            bound_tested: self.bound.to_string(),
            exceeds: true,
            witnesses,
            witness,
            datum,
        });
        Ok(())
    }

    fn is_canonical(&mut self, chosen: &[usize]) -> bool {
        let autos = self.autos.get_or_insert_with(|| self.group.automorphisms());
        let mut img = vec![0; chosen.len()];
        autos.iter().all(|perm| {
            for (slot, &i) in img.iter_mut().zip(chosen) {
                *slot = perm[i];
            }
            img.sort_unstable();
            img.as_slice() >= chosen
        })
    }
}

/// All covers with genus in `gmin..=gmax` and `|G| > bound(g)`, one per
/// `Aut(G)`-orbit, sorted by genus, order, group, quotient genus and
/// signature.
pub fn enumerate_extremal(
    gmin: u64,
    gmax: u64,
    bound: &LinearBound,
    filters: &Filters,
) -> Result<Vec<EnumerationRecord>, CoverError> {
    if gmin > gmax {
        return Ok(Vec::new());
    }
    let max_order = 4 * gmax + 4;
    let mut cells = Vec::new();
    for n in 1..=max_order {
        for group in FiniteAbelianGroup::all_of_order(n) {
            if filters.assume_cyclic && !group.is_cyclic() {
                continue;
            }
            // 2 gmax - 2 >= n (2 gamma - 2).
            let gamma_max = (gmax.saturating_sub(1)) / n + 1;
            for gamma in 0..=gamma_max {
                if filters.gamma.is_some_and(|x| x != gamma) {
                    continue;
                }
                cells.push((group.clone(), gamma));
            }
        }
    }
    let mut records: Vec<EnumerationRecord> = cells
        .into_par_iter()
        .map(|(group, gamma)| Cell::new(group, gamma, gmin, gmax, bound, filters).run())
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    records.sort_by_key(EnumerationRecord::sort_key);
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_bounds() {
        assert_eq!("3g+6".parse::<LinearBound>().unwrap(), LinearBound::new(3, 6));
        assert_eq!("4g-4".parse::<LinearBound>().unwrap(), LinearBound::new(4, -4));
        assert_eq!("g".parse::<LinearBound>().unwrap(), LinearBound::new(1, 0));
        assert_eq!("12".parse::<LinearBound>().unwrap(), LinearBound::new(0, 12));
        let b: LinearBound = "5/2g+1".parse().unwrap();
        assert_eq!(b.at(2), Rational64::from(6));
        assert!("3h+1".parse::<LinearBound>().is_err());
        for s in ["3g+6", "3g-3", "2g+2", "g", "5/2g+1"] {
            assert_eq!(s.parse::<LinearBound>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn empty_range() {
        assert!(enumerate_extremal(5, 4, &LinearBound::new(0, 0), &Filters::default()).unwrap().is_empty());
    }

    #[test]
    fn genus_two_maximum() {
        // Largest abelian group on a genus-2 curve has order 4g + 4 = 12.
        let recs = enumerate_extremal(2, 2, &LinearBound::new(0, 11), &Filters::default()).unwrap();
        assert!(!recs.is_empty());
        assert!(recs.iter().all(|r| r.order == 12));
    }
}
