//! Exact right-hand sides of the counting lemmas.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::LabError;

/// The four counting lemmas the lab checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    /// Arrangement never increases `#(A1.A3 ∪ A2.A2)`.
    Arrangement,
    /// Dimension 3, six-case minimum.
    Dim3,
    /// Dimension at least 4, with `epsilon = 1/530`.
    Dim4,
    /// Mixed dimensions 2 and 3.
    Mixed,
}

impl LemmaId {
    pub const ALL: [LemmaId; 4] = [LemmaId::Arrangement, LemmaId::Dim3, LemmaId::Dim4, LemmaId::Mixed];

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::Arrangement => "2.4",
            LemmaId::Dim3 => "2.5",
            LemmaId::Dim4 => "2.6",
            LemmaId::Mixed => "2.7",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.as_str() == s.trim())
            .ok_or_else(|| LabError::UnknownLemma(s.to_string()))
    }
}

impl Serialize for LemmaId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `epsilon` of the four-dimensional lemma.
pub fn epsilon() -> BigRational {
    rat(1, 530)
}

/// The six linear forms of the three-dimensional lemma, as
/// `(coefficient of n3, coefficient of n2, constant)`.
pub fn dim3_forms() -> [(BigRational, BigRational, BigRational); 6] {
    [
        (rat(1, 1), rat(3, 1), rat(-23, 1)),
        (rat(5, 6), rat(10, 3), rat(-10, 1)),
        (rat(5, 6), rat(13, 4), rat(-2, 1)),
        (rat(7, 12), rat(15, 4), rat(-6, 1)),
        (rat(1, 2), rat(4, 1), rat(-4, 1)),
        (rat(0, 1), rat(5, 1), rat(-31, 1)),
    ]
}

/// Value of each of the six forms at `(n2, n3)`.
pub fn dim3_values(n2: u64, n3: u64) -> Vec<BigRational> {
    dim3_forms().iter().map(|(a, b, c)| a * int(n3) + b * int(n2) + c).collect()
}

/// Lower bound for `#(A1.A3 ∪ A2.A2)` given `n2 = #A2` and `n3 = #A3`.
pub fn bound_formula(lemma: LemmaId, n2: u64, n3: u64) -> Result<BigRational, LabError> {
    match lemma {
        LemmaId::Dim3 => Ok(dim3_values(n2, n3).into_iter().min().expect("six forms")),
        LemmaId::Dim4 => {
            let e = epsilon();
            let one = rat(1, 1);
            let a = &one - &e;
            let b = rat(14, 3) * (&one - rat(4, 1) * &e);
            Ok(a * int(n3) + b * int(n2) - rat(57, 1))
        }
        LemmaId::Mixed => Ok(rat(9, 10) * int(n3) + rat(16, 5) * int(n2) - rat(30, 1)),
        LemmaId::Arrangement => Err(LabError::NoFormula(lemma.to_string())),
    }
}

/// `num/den` rendering used in reports.
pub fn render(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_case_example() {
        let v = dim3_values(21, 42);
        assert_eq!(v, vec![rat(82, 1), rat(95, 1), rat(405, 4), rat(389, 4), rat(101, 1), rat(74, 1)]);
        assert_eq!(bound_formula(LemmaId::Dim3, 21, 42).unwrap(), rat(74, 1));
    }

    #[test]
    fn constant_terms() {
        assert_eq!(bound_formula(LemmaId::Mixed, 0, 0).unwrap(), rat(-30, 1));
        assert_eq!(bound_formula(LemmaId::Dim4, 0, 0).unwrap(), rat(-57, 1));
    }

    #[test]
    fn dim4_coefficients() {
        // (1 - 1/530) n3 + (14 * 526 / 1590) n2 - 57
        assert_eq!(bound_formula(LemmaId::Dim4, 0, 530).unwrap(), rat(529 - 57, 1));
        assert_eq!(bound_formula(LemmaId::Dim4, 1590, 0).unwrap(), rat(14 * 526 - 57, 1));
    }

    #[test]
    fn ids_parse() {
        assert_eq!("2.5".parse::<LemmaId>().unwrap(), LemmaId::Dim3);
        assert!(matches!("9.9".parse::<LemmaId>(), Err(LabError::UnknownLemma(_))));
        assert!(bound_formula(LemmaId::Arrangement, 1, 1).is_err());
        assert_eq!(render(&rat(-6, 4)), "-3/2");
    }
}
