//! Branch data of abelian covers `C -> C/G` and the quantities computed from
//! them.
//!
//! A cover is the triple `(G, gamma, [g_1, ..., g_k])`: the group, the genus
//! of the quotient and the local monodromy at each branch point. The
//! ramification index `r_i` is the order of `g_i`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::CoverError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverDatum {
    #[serde(rename = "invariant_factors")]
    pub group: FiniteAbelianGroup,
    #[serde(rename = "gamma")]
    pub quotient_genus: u64,
    pub branch: Vec<GroupElement>,
}

impl CoverDatum {
    /// Checks the branch elements: in the group, nonzero, summing to zero,
    /// and generating `G` when `gamma = 0`.
    pub fn new(group: FiniteAbelianGroup, quotient_genus: u64, branch: Vec<GroupElement>) -> Result<Self, CoverError> {
        let d = CoverDatum { group, quotient_genus, branch };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), CoverError> {
        let g = &self.group;
        if let Some(x) = self.branch.iter().find(|x| !g.contains(x)) {
            return Err(CoverError::InvalidDatum(format!("{x} is not a reduced element of {g}")));
        }
        if self.branch.iter().any(|x| *x == g.zero()) {
            return Err(CoverError::InvalidDatum("branch elements must be nonzero".into()));
        }
        let sum = self.branch.iter().fold(g.zero(), |acc, x| g.add(&acc, x));
        if sum != g.zero() {
            return Err(CoverError::InvalidDatum(format!("branch elements sum to {sum}, not 0")));
        }
        if self.quotient_genus == 0 && !g.generates(&self.branch) {
            return Err(CoverError::InvalidDatum("branch elements do not generate the group".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Ramification indices sorted in decreasing order.
    pub fn signature(&self) -> Vec<u64> {
        let mut r: Vec<u64> = self.branch.iter().map(|x| self.group.element_order(x)).collect();
        r.sort_unstable_by(|a, b| b.cmp(a));
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("datum serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CoverError> {
        let d: CoverDatum = serde_json::from_str(s).map_err(|e| CoverError::Parse(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }
}

/// Solves `2g - 2 = n (2 gamma - 2 + sum (1 - 1/r_i))` for `g`. Every `r_i`
/// divides `n`, so `n (1 - 1/r_i)` is an integer and the arithmetic is exact.
fn genus_from(n: u64, gamma: u64, indices: &[u64]) -> Result<u64, CoverError> {
    let mut twice = n as i128 * (2 * gamma as i128 - 2);
    for &r in indices {
        if r == 0 || n % r != 0 {
            return Err(CoverError::Inadmissible(format!("index {r} does not divide {n}")));
        }
        twice += (n - n / r) as i128;
    }
    let two_g = twice + 2;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(CoverError::Inadmissible(format!("2g = {two_g} is not a non-negative even integer")));
    }
    Ok((two_g / 2) as u64)
}

/// Genus of `C` from the Riemann-Hurwitz formula.
pub fn hurwitz_genus(d: &CoverDatum) -> Result<u64, CoverError> {
    let r: Vec<u64> = d.branch.iter().map(|x| d.group.element_order(x)).collect();
    genus_from(d.order(), d.quotient_genus, &r)
}

/// Genus of `C/H`, with `H` generated by `subgroup`. Applies the formula to
/// `C/H -> C/G`, whose group is `G/H` and whose indices are the orders of
/// the `g_i` modulo `H`.
pub fn quotient_genus(d: &CoverDatum, subgroup: &[GroupElement]) -> Result<u64, CoverError> {
    let g = &d.group;
    if subgroup.iter().any(|x| !g.contains(x)) {
        return Err(CoverError::NotSubgroup);
    }
    let mask = g.span_mask(subgroup);
    let h = mask.iter().filter(|&&m| m).count() as u64;
    let n = g.order() / h;
    let indices: Vec<u64> = d
        .branch
        .iter()
        .map(|x| (1..).find(|&m| mask[g.index_of(&g.scale(x, m))]).expect("order is finite"))
        .filter(|&s| s > 1)
        .collect();
    genus_from(n, d.quotient_genus, &indices)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCheck {
    pub name: String,
    pub holds: bool,
    pub measured: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCheckReport {
    pub checks: Vec<CoverCheck>,
    pub admissible: bool,
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Divisibility conditions on the signature of a cover with rational
/// quotient: (i) each product of all but one index is a multiple of `|G|`;
/// (ii) each prime of `|G|` divides at least two indices; (iii) the lcm of
/// the indices divides `|G|`; with `assume_cyclic` also (iv) `|G|` equals
/// that lcm and each maximal prime power of `|G|` divides at least two
/// indices.
pub fn lemma43_admissible(d: &CoverDatum, assume_cyclic: bool) -> Result<CoverCheckReport, CoverError> {
    if d.quotient_genus != 0 {
        return Err(CoverError::Precondition("the divisibility conditions need gamma = 0".into()));
    }
    let n = d.order();
    let r = d.signature();
    let mut checks = Vec::new();

    let bad: Vec<String> = (0..r.len())
        .filter_map(|j| {
            let m: u128 = r.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, &x)| x as u128).product();
            (m % n as u128 != 0).then(|| format!("m{} = {m}", j + 1))
        })
        .collect();
    checks.push(CoverCheck {
        name: "(i) |G| divides every m_j".into(),
        holds: bad.is_empty(),
        measured: if bad.is_empty() { "all".into() } else { bad.join(", ") },
    });

    let pp = prime_powers(n);
    let bad: Vec<String> =
        pp.iter().filter(|(p, _)| r.iter().filter(|&&x| x % p == 0).count() < 2).map(|(p, _)| p.to_string()).collect();
    checks.push(CoverCheck {
        name: "(ii) each prime of |G| divides two indices".into(),
        holds: bad.is_empty(),
        measured: if bad.is_empty() { "all".into() } else { format!("fails for {}", bad.join(", ")) },
    });

    let l = r.iter().fold(1u64, |a, b| a.lcm(b));
    checks.push(CoverCheck { name: "(iii) lcm divides |G|".into(), holds: n % l == 0, measured: format!("lcm {l}, |G| {n}") });

    if assume_cyclic {
        let bad: Vec<String> =
            pp.iter().filter(|(_, q)| r.iter().filter(|&&x| x % q == 0).count() < 2).map(|(_, q)| q.to_string()).collect();
        let holds = l == n && bad.is_empty();
        let mut measured = format!("lcm {l}, |G| {n}");
        if !bad.is_empty() {
            measured.push_str(&format!("; prime powers {} divide fewer than two indices", bad.join(", ")));
        }
        checks.push(CoverCheck { name: "(iv) cyclic: |G| = lcm, prime powers twice".into(), holds, measured });
    }
    let admissible = checks.iter().all(|c| c.holds);
    Ok(CoverCheckReport { checks, admissible })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Hyperelliptic,
    BiElliptic,
}

/// An order-2 subgroup `{0, h}` with the genus of `C/<h>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Involution {
    pub generator: GroupElement,
    pub quotient_genus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub generator: GroupElement,
    pub quotient_genus: u64,
}

/// Quotient genus for every order-2 subgroup of `G`.
pub fn involution_quotients(d: &CoverDatum) -> Result<Vec<Involution>, CoverError> {
    d.group
        .involutions()
        .into_iter()
        .map(|h| Ok(Involution { quotient_genus: quotient_genus(d, std::slice::from_ref(&h))?, generator: h }))
        .collect()
}

/// First involution with rational quotient, else the first with elliptic
/// quotient.
pub fn witness_from(inv: &[Involution]) -> Option<Witness> {
    let pick = |target: u64, kind| {
        inv.iter()
            .find(|i| i.quotient_genus == target)
            .map(|i| Witness { kind, generator: i.generator.clone(), quotient_genus: target })
    };
    pick(0, WitnessKind::Hyperelliptic).or_else(|| pick(1, WitnessKind::BiElliptic))
}

/// An order-2 subgroup with rational quotient if one exists, otherwise one
/// with elliptic quotient. Only involutions inside `G` are considered.
pub fn hyperelliptic_witness(d: &CoverDatum) -> Result<Option<Witness>, CoverError> {
    Ok(witness_from(&involution_quotients(d)?))
}

/// `y^3 = x^{3m} - 1` with `G = Z/3m x Z/3`: rational quotient and
/// signature `(3m, 3m, 3)`, genus `3m - 2`, `|G| = 9m`.
pub fn example_family_49(m: u64) -> Result<CoverDatum, CoverError> {
    if m < 2 {
        return Err(CoverError::Precondition(format!("m must be at least 2, got {m}")));
    }
    let g = FiniteAbelianGroup::new(vec![3, 3 * m])?;
    let branch = vec![g.element(vec![0, 1])?, g.element(vec![1, 3 * m - 1])?, g.element(vec![2, 0])?];
    CoverDatum::new(g, 0, branch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(factors: Vec<u64>, gamma: u64, branch: &[&[u64]]) -> CoverDatum {
        let g = FiniteAbelianGroup::new(factors).unwrap();
        let b = branch.iter().map(|r| g.element(r.to_vec()).unwrap()).collect();
        CoverDatum::new(g, gamma, b).unwrap()
    }

    #[test]
    fn fermat_genera() {
        assert_eq!(hurwitz_genus(&datum(vec![5, 5], 0, &[&[1, 0], &[0, 1], &[4, 4]])).unwrap(), 6);
        assert_eq!(hurwitz_genus(&datum(vec![4, 4], 0, &[&[1, 0], &[0, 1], &[3, 3]])).unwrap(), 3);
        assert_eq!(hurwitz_genus(&CoverDatum::new(FiniteAbelianGroup::trivial(), 2, vec![]).unwrap()).unwrap(), 2);
    }

    #[test]
    fn double_cover_of_line() {
        let d = datum(vec![2], 0, &[&[1u64][..]; 6]);
        assert_eq!(hurwitz_genus(&d).unwrap(), 2);
        assert_eq!(quotient_genus(&d, &[d.group.element(vec![1]).unwrap()]).unwrap(), 0);
        assert_eq!(quotient_genus(&d, &[]).unwrap(), 2);
        let w = hyperelliptic_witness(&d).unwrap().unwrap();
        assert_eq!(w.kind, WitnessKind::Hyperelliptic);
    }

    #[test]
    fn fermat_quartic_has_no_witness() {
        let d = datum(vec![4, 4], 0, &[&[1, 0], &[0, 1], &[3, 3]]);
        let inv = involution_quotients(&d).unwrap();
        assert_eq!(inv.len(), 3);
        // Each involution fixes four points, so every quotient is elliptic.
        assert!(inv.iter().all(|i| i.quotient_genus == 1));
        assert_eq!(hyperelliptic_witness(&d).unwrap().unwrap().kind, WitnessKind::BiElliptic);
    }

    #[test]
    fn invalid_data_rejected() {
        let g = FiniteAbelianGroup::new(vec![5, 5]).unwrap();
        let x = g.element(vec![1, 0]).unwrap();
        assert!(CoverDatum::new(g.clone(), 0, vec![x.clone(), x.clone()]).is_err());
        assert!(CoverDatum::new(g.clone(), 0, vec![x.clone(), g.neg(&x)]).is_err());
    }

    #[test]
    fn divisibility_conditions() {
        let fermat = datum(vec![5, 5], 0, &[&[1, 0], &[0, 1], &[4, 4]]);
        assert!(lemma43_admissible(&fermat, false).unwrap().admissible);
        let cyc = lemma43_admissible(&fermat, true).unwrap();
        assert!(!cyc.admissible);
        assert!(!cyc.checks[3].holds);
        // (7, 3, 2) fails the lcm condition and indeed has no abelian datum.
        let g = FiniteAbelianGroup::cyclic(42).unwrap();
        let b = [21, 14, 6].iter().map(|&r| g.element(vec![r]).unwrap()).collect();
        assert!(CoverDatum::new(g, 0, b).is_err());
        let z6 = datum(vec![6], 0, &[&[3], &[2], &[1]]);
        assert_eq!(z6.signature(), vec![6, 3, 2]);
        assert!(lemma43_admissible(&z6, true).unwrap().admissible);
        let higher = CoverDatum::new(FiniteAbelianGroup::trivial(), 1, vec![]).unwrap();
        assert!(lemma43_admissible(&higher, false).is_err());
    }

    #[test]
    fn family_49() {
        for m in 2..=6 {
            let d = example_family_49(m).unwrap();
            assert_eq!(d.signature(), vec![3 * m, 3 * m, 3]);
            let g = hurwitz_genus(&d).unwrap();
            assert_eq!(g, 3 * m - 2);
            assert_eq!(d.order(), 9 * m);
            assert_eq!(d.order(), 3 * g + 6);
            assert!(lemma43_admissible(&d, false).unwrap().admissible);
        }
        assert!(example_family_49(1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = example_family_49(3).unwrap();
        assert_eq!(CoverDatum::from_json(&d.to_json()).unwrap(), d);
        assert!(d.to_json().starts_with("{\"invariant_factors\":[3,9],\"gamma\":0,\"branch\":[[0,1]"));
    }
}
