//! Mixed-radix packing of points inside a box, used for fast membership and
//! distinct-count queries.

use std::collections::HashSet;

/// Packs coordinates in `[lo, hi]` into a single `u64`.
#[derive(Clone, Debug)]
pub(crate) struct Packer {
    lo: Vec<i64>,
    hi: Vec<i64>,
    stride: Vec<u64>,
    volume: u64,
}

impl Packer {
    /// `None` if the box volume does not fit in a `u64`.
    pub(crate) fn new(lo: Vec<i64>, hi: Vec<i64>) -> Option<Self> {
        let mut stride = Vec::with_capacity(lo.len());
        let mut volume: u64 = 1;
        for (l, h) in lo.iter().zip(&hi) {
            stride.push(volume);
            let width = u64::try_from(h.checked_sub(*l)?.checked_add(1)?).ok()?;
            volume = volume.checked_mul(width)?;
        }
        Some(Packer { lo, hi, stride, volume })
    }

    pub(crate) fn volume(&self) -> u64 {
        self.volume
    }

    #[inline]
    pub(crate) fn key(&self, c: &[i64]) -> Option<u64> {
        let mut k = 0u64;
        for i in 0..c.len() {
            if c[i] < self.lo[i] || c[i] > self.hi[i] {
                return None;
            }
            k += (c[i] - self.lo[i]) as u64 * self.stride[i];
        }
        Some(k)
    }
}

/// Collects distinct points, using a bitmap when the box is small.
pub(crate) enum DistinctSink {
    Bits { packer: Packer, words: Vec<u64>, count: usize },
    Hashed { packer: Packer, keys: HashSet<u64> },
    Raw(HashSet<Vec<i64>>),
}

const BITMAP_LIMIT: u64 = 1 << 28;

impl DistinctSink {
    pub(crate) fn for_box(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        match Packer::new(lo, hi) {
            Some(p) if p.volume() <= BITMAP_LIMIT => {
                let words = vec![0u64; (p.volume() as usize).div_ceil(64)];
                DistinctSink::Bits { packer: p, words, count: 0 }
            }
            Some(p) => DistinctSink::Hashed { packer: p, keys: HashSet::new() },
            None => DistinctSink::Raw(HashSet::new()),
        }
    }

    #[inline]
    pub(crate) fn insert(&mut self, c: &[i64]) {
        match self {
            DistinctSink::Bits { packer, words, count } => {
                let k = packer.key(c).expect("point inside box") as usize;
                let (w, b) = (k / 64, k % 64);
                if words[w] & (1 << b) == 0 {
                    words[w] |= 1 << b;
                    *count += 1;
                }
            }
            DistinctSink::Hashed { packer, keys } => {
                keys.insert(packer.key(c).expect("point inside box"));
            }
            DistinctSink::Raw(set) => {
                set.insert(c.to_vec());
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            DistinctSink::Bits { count, .. } => *count,
            DistinctSink::Hashed { keys, .. } => keys.len(),
            DistinctSink::Raw(set) => set.len(),
        }
    }
}

/// Membership index over a fixed point set.
pub(crate) enum PointIndex {
    Packed { packer: Packer, keys: HashSet<u64> },
    Raw(HashSet<Vec<i64>>),
}

impl PointIndex {
    pub(crate) fn build<'a, I>(lo: Vec<i64>, hi: Vec<i64>, pts: I) -> Self
    where
        I: Iterator<Item = &'a [i64]>,
    {
        match Packer::new(lo, hi) {
            Some(packer) => {
                let keys = pts.map(|c| packer.key(c).expect("point inside box")).collect();
                PointIndex::Packed { packer, keys }
            }
            None => PointIndex::Raw(pts.map(|c| c.to_vec()).collect()),
        }
    }

    #[inline]
    pub(crate) fn contains(&self, c: &[i64]) -> bool {
        match self {
            PointIndex::Packed { packer, keys } => packer.key(c).is_some_and(|k| keys.contains(&k)),
            PointIndex::Raw(set) => set.contains(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_is_injective_on_box() {
        let p = Packer::new(vec![-1, 0], vec![1, 2]).unwrap();
        let mut seen = HashSet::new();
        for x in -1..=1 {
            for y in 0..=2 {
                assert!(seen.insert(p.key(&[x, y]).unwrap()));
            }
        }
        assert_eq!(p.volume(), 9);
        assert!(p.key(&[2, 0]).is_none());
    }

    #[test]
    fn huge_box_falls_back() {
        let mut s = DistinctSink::for_box(vec![i64::MIN / 2; 3], vec![i64::MAX / 2; 3]);
        s.insert(&[0, 0, 0]);
        s.insert(&[0, 0, 0]);
        s.insert(&[1, 0, 0]);
        assert_eq!(s.len(), 2);
    }
}
