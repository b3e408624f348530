//! Finite abelian groups in invariant-factor form.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::CoverError;

/// `Z/d1 x ... x Z/dm` with `d1 | d2 | ... | dm`, every `di >= 2`. The empty
/// list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

/// One residue per invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub residues: Vec<u64>,
}

impl GroupElement {
    pub fn new(residues: Vec<u64>) -> Self {
        GroupElement { residues }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = CoverError;
    fn try_from(v: Vec<u64>) -> Result<Self, Self::Error> {
        FiniteAbelianGroup::new(v)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(g: FiniteAbelianGroup) -> Self {
        g.factors
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self, CoverError> {
        if factors.iter().any(|&d| d < 2) {
            return Err(CoverError::InvalidGroup(format!("invariant factors must be >= 2: {factors:?}")));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(CoverError::InvalidGroup(format!("invariant factors must form a divisor chain: {factors:?}")));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self, CoverError> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(vec![n])
        }
    }

    /// Every abelian group of order `n`, one per isomorphism class.
    pub fn all_of_order(n: u64) -> Vec<Self> {
        fn rec(rest: u64, prev: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if rest == 1 {
                out.push(cur.clone());
                return;
            }
            for d in divisors(rest) {
                if d >= 2 && d % prev == 0 {
                    // The remaining factors are multiples of d.
                    let r = rest / d;
                    if r == 1 || r % d == 0 {
                        cur.push(d);
                        rec(r, d, cur, out);
                        cur.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        if n >= 1 {
            rec(n, 1, &mut Vec::new(), &mut out);
        }
        out.into_iter().map(|factors| FiniteAbelianGroup { factors }).collect()
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.factors.len()])
    }

    /// Reduces residues, checking the length.
    pub fn element(&self, residues: Vec<u64>) -> Result<GroupElement, CoverError> {
        if residues.len() != self.factors.len() {
            return Err(CoverError::InvalidElement(format!(
                "{} residues for a group with {} factors",
                residues.len(),
                self.factors.len()
            )));
        }
        Ok(GroupElement::new(residues.iter().zip(&self.factors).map(|(r, d)| r % d).collect()))
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.residues.len() == self.factors.len() && x.residues.iter().zip(&self.factors).all(|(r, d)| r < d)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement::new(
            x.residues.iter().zip(&y.residues).zip(&self.factors).map(|((a, b), d)| (a + b) % d).collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement::new(x.residues.iter().zip(&self.factors).map(|(a, d)| (d - a) % d).collect())
    }

    pub fn scale(&self, x: &GroupElement, k: u64) -> GroupElement {
        GroupElement::new(x.residues.iter().zip(&self.factors).map(|(a, d)| (a * (k % d)) % d).collect())
    }

    pub fn element_order(&self, x: &GroupElement) -> u64 {
        x.residues.iter().zip(&self.factors).fold(1, |acc, (a, d)| acc.lcm(&(d / a.gcd(d))))
    }

    /// Mixed-radix index in `0..order`.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        let mut idx = 0u64;
        for (a, d) in x.residues.iter().zip(&self.factors) {
            idx = idx * d + a;
        }
        idx as usize
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut r = vec![0; self.factors.len()];
        for (slot, d) in r.iter_mut().zip(&self.factors).rev() {
            *slot = idx as u64 % d;
            idx /= *d as usize;
        }
        GroupElement::new(r)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order() as usize).map(|i| self.element_at(i)).collect()
    }

    /// Indices of the subgroup generated by `gens`, as a membership mask.
    pub fn span_mask(&self, gens: &[GroupElement]) -> Vec<bool> {
        let n = self.order() as usize;
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut members = vec![self.zero()];
        let mut i = 0;
        while i < members.len() {
            let x = members[i].clone();
            for g in gens {
                let y = self.add(&x, g);
                let j = self.index_of(&y);
                if !mask[j] {
                    mask[j] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        mask
    }

    pub fn span(&self, gens: &[GroupElement]) -> Vec<GroupElement> {
        self.span_mask(gens)
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.element_at(i))
            .collect()
    }

    pub fn generates(&self, gens: &[GroupElement]) -> bool {
        self.span_mask(gens).iter().all(|&m| m)
    }

    /// Subgroups of order 2, one generator each, in index order.
    pub fn involutions(&self) -> Vec<GroupElement> {
        self.elements().into_iter().filter(|x| self.element_order(x) == 2).collect()
    }

    /// All automorphisms, each as the permutation of element indices it
    /// induces. Brute force over images of the standard generators.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order() as usize;
        let elems = self.elements();
        let candidates: Vec<Vec<&GroupElement>> = self
            .factors
            .iter()
            .map(|&d| elems.iter().filter(|x| self.element_order(x) == d).collect())
            .collect();
        let mut out = Vec::new();
        let mut images: Vec<&GroupElement> = Vec::new();
        self.extend_automorphism(&candidates, &mut images, &elems, n, &mut out);
        out
    }

    fn extend_automorphism<'a>(
        &self,
        candidates: &[Vec<&'a GroupElement>],
        images: &mut Vec<&'a GroupElement>,
        elems: &[GroupElement],
        n: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if images.len() == candidates.len() {
            let mut perm = vec![0usize; n];
            let mut seen = vec![false; n];
            for (i, x) in elems.iter().enumerate() {
                let mut y = self.zero();
                for (a, img) in x.residues.iter().zip(images.iter()) {
                    y = self.add(&y, &self.scale(img, *a));
                }
                let j = self.index_of(&y);
                if seen[j] {
                    return;
                }
                seen[j] = true;
                perm[i] = j;
            }
            out.push(perm);
            return;
        }
        for c in &candidates[images.len()] {
            images.push(c);
            self.extend_automorphism(candidates, images, elems, n, out);
            images.pop();
        }
    }
}
