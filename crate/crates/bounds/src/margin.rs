//! Margins of the counting arguments: a lattice-lemma lower bound for the
//! number of mid-points, minus the dimension of the target space.

use std::fmt;
use std::str::FromStr;

use lemma_lab::formulas::{dim3_forms, epsilon};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::surface::SurfaceInvariants;
use crate::threefold::{plurigenus, ThreefoldInvariants};
use crate::{int, rat, ser, BoundsError, Condition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MarginVariant {
    /// `H_n, H_2n, H_3n -> H_4n` on a threefold.
    Prop33(u64),
    /// `H_1, H_2, H_3 -> H_4` on a surface.
    Prop63,
    /// `Sigma_3 . Sigma_3` against `H_6`, assuming `dim Sigma_3 >= 4`.
    Lemma72,
    /// `H_2, H_3, H_4 -> H_6`.
    Lemma74,
    /// `H_4, H_6, H_8 -> H_12`.
    Lemma76_12,
    /// `H_5, H_8, H_11 -> H_16`.
    Lemma76_16,
}

impl MarginVariant {
    pub const SURFACE: [MarginVariant; 5] =
        [MarginVariant::Prop63, MarginVariant::Lemma72, MarginVariant::Lemma74, MarginVariant::Lemma76_12, MarginVariant::Lemma76_16];
}

impl fmt::Display for MarginVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarginVariant::Prop33(n) => write!(f, "prop3.3({n})"),
            MarginVariant::Prop63 => f.write_str("prop6.3"),
            MarginVariant::Lemma72 => f.write_str("lemma7.2"),
            MarginVariant::Lemma74 => f.write_str("lemma7.4"),
            MarginVariant::Lemma76_12 => f.write_str("lemma7.6-12"),
            MarginVariant::Lemma76_16 => f.write_str("lemma7.6-16"),
        }
    }
}

impl FromStr for MarginVariant {
    type Err = BoundsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let v = match s {
            "prop6.3" => MarginVariant::Prop63,
            "lemma7.2" => MarginVariant::Lemma72,
            "lemma7.4" => MarginVariant::Lemma74,
            "lemma7.6-12" => MarginVariant::Lemma76_12,
            "lemma7.6-16" => MarginVariant::Lemma76_16,
            _ => {
                let n = s
                    .strip_prefix("prop3.3(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| s.strip_prefix("prop3.3:"))
                    .ok_or_else(|| BoundsError::Parse(format!("unknown margin variant {s:?}")))?;
                MarginVariant::Prop33(n.parse().map_err(|_| BoundsError::Parse(format!("bad n in {s:?}")))?)
            }
        };
        Ok(v)
    }
}

impl Serialize for MarginVariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Invariants {
    Threefold(ThreefoldInvariants),
    Surface(SurfaceInvariants),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarginReport {
    pub variant: MarginVariant,
    /// `(name, size)` of the sets and the target space.
    pub sizes: Vec<(String, String)>,
    #[serde(serialize_with = "ser::rational")]
    pub lhs: BigRational,
    #[serde(serialize_with = "ser::rational")]
    pub rhs: BigRational,
    #[serde(serialize_with = "ser::rational")]
    pub margin: BigRational,
    pub positive: bool,
    /// Index of the smallest of the six forms, for the three-dimensional lemma.
    pub governing_case: Option<usize>,
    pub hypothesis_trail: Vec<Condition>,
}

/// `(1 - e) n3 + 14 (1 - 4e)/3 n2 - 57`.
pub fn dim4_form(n2: &BigRational, n3: &BigRational) -> BigRational {
    let e = epsilon();
    let one = int(1);
    (&one - &e) * n3 + rat(14, 3) * (&one - int(4) * &e) * n2 - int(57)
}

/// `9/10 n3 + 16/5 n2 - 30`.
pub fn mixed_form(n2: &BigRational, n3: &BigRational) -> BigRational {
    rat(9, 10) * n3 + rat(16, 5) * n2 - int(30)
}

/// Minimum of the six forms and the index attaining it (first on ties).
pub fn dim3_form(n2: &BigRational, n3: &BigRational) -> (BigRational, usize) {
    dim3_forms()
        .iter()
        .map(|(a, b, c)| a * n3 + b * n2 + c)
        .enumerate()
        .min_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0)))
        .map(|(i, v)| (v, i))
        .expect("six forms")
}

fn mismatch(v: MarginVariant) -> BoundsError {
    BoundsError::Precondition(format!("{v} does not apply to these invariants"))
}

pub fn decomposability_margin(variant: MarginVariant, inv: &Invariants) -> Result<MarginReport, BoundsError> {
    match (variant, inv) {
        (MarginVariant::Prop33(n), Invariants::Threefold(t)) => threefold_margin(n, t),
        (MarginVariant::Prop33(_), Invariants::Surface(_)) => Err(mismatch(variant)),
        (_, Invariants::Threefold(_)) => Err(mismatch(variant)),
        (_, Invariants::Surface(s)) => surface_margin(variant, s),
    }
}

fn threefold_margin(n: u64, t: &ThreefoldInvariants) -> Result<MarginReport, BoundsError> {
    if n < 1 {
        return Err(BoundsError::Precondition("n >= 1".into()));
    }
    let v = MarginVariant::Prop33(n);
    let src = v.to_string();
    let p = |m: u64| -> Result<BigInt, BoundsError> {
        if m == 1 {
            Err(BoundsError::Precondition("the plurigenus formula needs n >= 2".into()))
        } else {
            plurigenus(t, m)
        }
    };
    let (p2, p3, p4) = (p(2 * n)?, p(3 * n)?, p(4 * n)?);
    let lhs = dim4_form(&int(p2.clone()), &int(p3.clone()));
    let rhs = int(p4.clone());
    let margin = &lhs - &rhs;
    let ch = BigInt::from(6 * n - 1) * BigInt::from(3 * n as i64 - 2);
    let trail = vec![
        Condition::checked(
            &src,
            format!("longest chain of Sigma_3n below 12/((6n-1)(3n-2)) #Sigma_3n <= e #Sigma_3n, (6n-1)(3n-2) = {ch} >= 6360"),
            ch >= BigInt::from(6360),
        ),
        Condition::checked(&src, format!("4 #Sigma_2n >= #Sigma_3n ({} >= {p3})", BigInt::from(4) * &p2), BigInt::from(4) * &p2 >= p3),
        Condition::checked(&src, "Phi_n birational (n >= 8), so dim Sigma_n >= 4", n >= 8),
        Condition::assumed(&src, "H_i uniquely decomposable for i < 4n", true),
    ];
    Ok(MarginReport {
        variant: v,
        sizes: vec![
            ("#Sigma_2n".into(), p2.to_string()),
            ("#Sigma_3n".into(), p3.to_string()),
            ("dim H_4n".into(), p4.to_string()),
        ],
        positive: margin > BigRational::zero(),
        lhs,
        rhs,
        margin,
        governing_case: None,
        hypothesis_trail: trail,
    })
}

fn surface_margin(v: MarginVariant, s: &SurfaceInvariants) -> Result<MarginReport, BoundsError> {
    s.validate()?;
    let src = v.to_string();
    let k2 = s.k2;
    let chi = s.chi.ok_or_else(|| BoundsError::Precondition(format!("{v} needs chi")))?;
    let f = &s.flags;
    let mut trail = vec![Condition::checked(&src, format!("K2 <= 9 chi ({k2} <= {})", 9 * chi), k2 <= 9 * chi)];
    let size_conditions = |trail: &mut Vec<Condition>, n2: u64, n3: u64| {
        trail.push(Condition::checked(&src, format!("#A2 >= 21 ({n2})"), n2 >= 21));
        trail.push(Condition::checked(&src, format!("#A3 <= 2 #A2 ({n3} <= {})", 2 * n2), n3 <= 2 * n2));
    };
    let (names, lhs, rhs, case) = match v {
        MarginVariant::Prop63 => {
            let (n2, n3, t) = (s.h(2)?, s.h(3)?, s.h(4)?);
            trail.push(Condition::checked(&src, "chi >= 14", chi >= 14));
            trail.push(Condition::checked(&src, "K2 >= 82 (long chains give a pencil of genus <= 5)", k2 >= 82));
            trail.push(Condition::assumed(&src, "no pencil of genus <= 5", !f.pencil_genera.iter().any(|&g| g <= 5)));
            trail.push(Condition::assumed(&src, "canonical image of dimension 2", f.canonical_image_dim == Some(2)));
            trail.push(Condition::assumed(&src, "H_i uniquely decomposable for i <= 3", true));
            (["dim H_2", "dim H_3", "dim H_4"], mixed_form(&int(n2), &int(n3)), t, None)
        }
        MarginVariant::Lemma72 => {
            let (n3, t) = (s.h(3)?, s.h(6)?);
            let d = 4u64;
            trail.push(Condition::checked(&src, "chi >= 5", chi >= 5));
            trail.push(Condition::checked(&src, format!("#Sigma_3 >= d + 1 = {}", d + 1), n3 > d));
            trail.push(Condition::assumed(&src, "dim Sigma_3 = 4 (supposed, for the contradiction)", true));
            trail.push(Condition::assumed(&src, "P_6 uniquely decomposable", true));
            let lhs = int(d + 1) * (int(n3) - rat(d as i64, 2));
            (["dim H_3", "dim H_3", "dim H_6"], lhs, t, None)
        }
        MarginVariant::Lemma74 => {
            let (n2, n3, t) = (s.h(3)?, s.h(4)?, s.h(6)?);
            trail.push(Condition::checked(&src, "chi >= 8", chi >= 8));
            trail.push(Condition::checked(&src, "chi >= 5, so dim Sigma_3 = 3", chi >= 5));
            trail.push(Condition::checked(&src, "K2 >= 10 (long chains give a pencil of genus 2)", k2 >= 10));
            trail.push(Condition::assumed(&src, "no pencil of genus 2", !f.pencil_genera.contains(&2)));
            size_conditions(&mut trail, n2, n3);
            let (lhs, i) = dim3_form(&int(n2), &int(n3));
            (["dim H_3", "dim H_4", "dim H_6"], lhs, t, Some(i))
        }
        MarginVariant::Lemma76_12 | MarginVariant::Lemma76_16 => {
            let (a2, a3, target, floor) = if v == MarginVariant::Lemma76_12 { (6, 8, 12, 4) } else { (8, 11, 16, 2) };
            let (n2, n3, t) = (s.h(a2)?, s.h(a3)?, s.h(target)?);
            trail.push(Condition::checked(&src, format!("K2 >= {floor}"), k2 >= floor));
            trail.push(Condition::assumed(&src, "long chains would give a pencil of genus 1", true));
            size_conditions(&mut trail, n2, n3);
            let (lhs, i) = dim3_form(&int(n2), &int(n3));
            let names = if v == MarginVariant::Lemma76_12 {
                ["dim H_6", "dim H_8", "dim H_12"]
            } else {
                ["dim H_8", "dim H_11", "dim H_16"]
            };
            (names, lhs, t, Some(i))
        }
        MarginVariant::Prop33(_) => unreachable!("handled by the caller"),
    };
    let rhs = int(rhs);
    let margin = &lhs - &rhs;
    let sizes = match v {
        MarginVariant::Lemma72 => vec![(names[0].to_string(), s.h(3)?.to_string()), (names[2].into(), render_r(&rhs))],
        _ => {
            let idx = |name: &str| name.rsplit('_').next().and_then(|x| x.parse::<u64>().ok()).expect("indexed name");
            names.iter().map(|nm| (nm.to_string(), s.h(idx(nm)).map(|x| x.to_string()).unwrap_or_default())).collect()
        }
    };
    Ok(MarginReport { variant: v, sizes, positive: margin > BigRational::zero(), lhs, rhs, margin, governing_case: case, hypothesis_trail: trail })
}

fn render_r(r: &BigRational) -> String {
    crate::render(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::SurfaceFlags;

    fn surf(k2: i64, chi: i64) -> Invariants {
        Invariants::Surface(SurfaceInvariants::new(k2, Some(chi), SurfaceFlags::default()).unwrap())
    }

    fn m(v: MarginVariant, k2: i64, chi: i64) -> MarginReport {
        decomposability_margin(v, &surf(k2, chi)).unwrap()
    }

    #[test]
    fn governing_reductions() {
        assert_eq!(m(MarginVariant::Lemma74, 72, 8).margin, int(1));
        assert_eq!(m(MarginVariant::Lemma74, 63, 7).governing_case, Some(5));
        assert_eq!(m(MarginVariant::Lemma74, 63, 7).margin, int(-3));
        // 3.1 chi - 0.1 K2 - 30.
        assert_eq!(m(MarginVariant::Prop63, 126, 14).margin, rat(4, 5));
        assert_eq!(m(MarginVariant::Prop63, 117, 13).margin, rat(-7, 5));
        assert_eq!(m(MarginVariant::Lemma72, 27, 3).margin, int(2));
        assert_eq!(m(MarginVariant::Lemma76_12, 4, 1).margin, int(8));
        assert_eq!(m(MarginVariant::Lemma76_16, 2, 1).margin, int(13));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["prop3.3(20)", "prop6.3", "lemma7.2", "lemma7.4", "lemma7.6-12", "lemma7.6-16"] {
            assert_eq!(s.parse::<MarginVariant>().unwrap().to_string(), s);
        }
        assert!("lemma9.9".parse::<MarginVariant>().is_err());
    }

    #[test]
    fn variant_mismatch_rejected() {
        let t = Invariants::Threefold(ThreefoldInvariants::new(2, 0).unwrap());
        assert!(decomposability_margin(MarginVariant::Lemma74, &t).is_err());
        assert!(decomposability_margin(MarginVariant::Prop33(20), &surf(10, 5)).is_err());
    }

    #[test]
    fn forms_agree_with_lattice_lemmas() {
        use lemma_lab::{bound_formula, LemmaId};
        for (n2, n3) in [(21u64, 30u64), (100, 150), (7, 3), (500, 999)] {
            let (a, b) = (int(n2), int(n3));
            assert_eq!(dim3_form(&a, &b).0, bound_formula(LemmaId::Dim3, n2, n3).unwrap());
            assert_eq!(dim4_form(&a, &b), bound_formula(LemmaId::Dim4, n2, n3).unwrap());
            assert_eq!(mixed_form(&a, &b), bound_formula(LemmaId::Mixed, n2, n3).unwrap());
        }
    }
}
