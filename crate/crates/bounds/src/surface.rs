//! Bounds for abelian automorphism groups of minimal surfaces of general
//! type. Each source is encoded with the hypotheses of its statement;
//! `surface_bound` returns the smallest bound whose hypotheses all hold.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::{int, rat, ser, BoundsError, Condition};

/// Geometric data that is not computed: it is taken as given.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SurfaceFlags {
    /// Genera of all pencils of genus at most 8 the surface carries.
    pub pencil_genera: Vec<u64>,
    /// The surface has two distinct pencils of this genus.
    pub two_pencils_genus: Option<u64>,
    /// Dimension of the image of the canonical map, when known.
    pub canonical_image_dim: Option<u8>,
    /// Genus of the pencil the canonical map is composed with.
    pub canonical_pencil_genus: Option<u64>,
    pub canonical_map_birational: bool,
    /// Simply connected with even intersection form.
    pub even_simply_connected: bool,
    /// For `K = 2L`: `phi_L` generically finite and `phi_2L` birational.
    pub half_canonical_maps_good: bool,
    /// Degrees of a smooth complete intersection in `P^N`, `N = len + 2`.
    pub complete_intersection: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub k2: i64,
    /// `chi(O_S)`; conditions on it fail when it is unknown.
    pub chi: Option<i64>,
    #[serde(default)]
    pub flags: SurfaceFlags,
}

impl SurfaceInvariants {
    pub fn new(k2: i64, chi: Option<i64>, flags: SurfaceFlags) -> Result<Self, BoundsError> {
        let s = SurfaceInvariants { k2, chi, flags };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        if self.k2 <= 0 {
            return Err(BoundsError::Invalid(format!("K2 > 0 (got K2={})", self.k2)));
        }
        if let Some(chi) = self.chi {
            if chi < 1 {
                return Err(BoundsError::Invalid(format!("chi >= 1 (got chi={chi})")));
            }
            if self.k2 > 9 * chi {
                return Err(BoundsError::Invalid(format!("K2 <= 9 chi (got K2={}, chi={chi})", self.k2)));
            }
        }
        if let Some(d) = self.flags.canonical_image_dim {
            if !(1..=2).contains(&d) {
                return Err(BoundsError::Invalid(format!("canonical image dimension in {{1, 2}} (got {d})")));
            }
        }
        if let Some(degrees) = &self.flags.complete_intersection {
            let (k2, chi) = complete_intersection_invariants(degrees)?;
            if k2 != self.k2 || self.chi.is_some_and(|c| c != chi) {
                return Err(BoundsError::Invalid(format!(
                    "complete intersection {degrees:?} has K2={k2}, chi={chi}"
                )));
            }
        }
        Ok(())
    }

    /// A smooth complete intersection of the given degrees.
    pub fn complete_intersection(degrees: Vec<u64>) -> Result<Self, BoundsError> {
        let (k2, chi) = complete_intersection_invariants(&degrees)?;
        let flags = SurfaceFlags { complete_intersection: Some(degrees), ..SurfaceFlags::default() };
        Self::new(k2, Some(chi), flags)
    }

    /// `dim H^0(iK) = i(i-1)/2 K^2 + chi` for `i >= 2`.
    pub fn h(&self, i: u64) -> Result<u64, BoundsError> {
        let chi = self.chi.ok_or_else(|| BoundsError::Precondition("chi is required".into()))?;
        if i < 2 {
            return Err(BoundsError::Precondition(format!("dim H_i formula needs i >= 2, got {i}")));
        }
        Ok((i * (i - 1) / 2) * self.k2 as u64 + chi as u64)
    }
}

/// `(K^2, chi)` of a smooth complete intersection surface.
pub fn complete_intersection_invariants(degrees: &[u64]) -> Result<(i64, i64), BoundsError> {
    if degrees.is_empty() || degrees.iter().any(|&d| d < 2) {
        return Err(BoundsError::Invalid(format!("complete intersection degrees >= 2 (got {degrees:?})")));
    }
    let n = degrees.len() as i64 + 2;
    let sum: i64 = degrees.iter().map(|&d| d as i64).sum();
    let deg: i64 = degrees.iter().map(|&d| d as i64).product();
    let a = sum - n - 1;
    if a <= 0 {
        return Err(BoundsError::Invalid(format!("complete intersection {degrees:?} is not of general type")));
    }
    let k2 = a * a * deg;
    let mut h2 = 0;
    for i in 0..degrees.len() {
        for j in i..degrees.len() {
            h2 += degrees[i] as i64 * degrees[j] as i64;
        }
    }
    let c2 = ((n + 1) * n / 2 - (n + 1) * sum + h2) * deg;
    // Noether.
    Ok((k2, (k2 + c2) / 12))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub source: String,
    pub formula: String,
    #[serde(serialize_with = "ser::rational")]
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    /// The smallest applicable bound; `None` when no source applies.
    #[serde(serialize_with = "ser::opt_rational")]
    pub value: Option<BigRational>,
    pub source: Option<String>,
    pub applicable: Vec<Candidate>,
    pub hypothesis_trail: Vec<Condition>,
    pub assumptions: Vec<String>,
}

/// One case of the canonical-pencil estimate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop58Case {
    pub genus: u64,
    #[serde(serialize_with = "ser::rational")]
    pub value: BigRational,
    pub formula: String,
    pub within_headline: bool,
    /// For genus 4: whether `8K^2 + 640 <= 12K^2 + 496` holds at this `K^2`.
    pub stated_chain_holds: Option<bool>,
}

fn headline58(k2: &BigRational) -> BigRational {
    rat(25, 2) * k2 + int(469)
}

/// Per-genus values of the canonical-pencil estimate, each compared with the
/// headline `12.5 K^2 + 469`.
pub fn prop58_cases(k2: i64) -> Vec<Prop58Case> {
    let k = int(k2);
    let head = headline58(&k);
    let cases: [(u64, BigRational, &str); 4] = [
        (2, rat(25, 2) * &k + int(100), "12.5K2+100"),
        (3, rat(72, 7) * &k + int(376) + rat(8, 21), "72/7K2+376+8/21"),
        (4, int(8) * &k + int(640), "8K2+640"),
        (5, int(12) * &k + int(432), "12K2+432"),
    ];
    cases
        .into_iter()
        .map(|(genus, value, formula)| Prop58Case {
            genus,
            within_headline: value <= head,
            stated_chain_holds: (genus == 4).then(|| 8 * k2 + 640 <= 12 * k2 + 496),
            value,
            formula: formula.into(),
        })
        .collect()
}

struct Ctx<'a> {
    s: &'a SurfaceInvariants,
    trail: Vec<Condition>,
    applicable: Vec<Candidate>,
}

impl Ctx<'_> {
    fn chi_at_least(&mut self, src: &str, c: i64) -> bool {
        let holds = self.s.chi.is_some_and(|x| x >= c);
        let cond = match self.s.chi {
            Some(_) => format!("chi >= {c}"),
            None => format!("chi >= {c} (chi unknown)"),
        };
        self.trail.push(Condition::checked(src, cond, holds));
        holds
    }

    fn check(&mut self, src: &str, cond: impl Into<String>, holds: bool) -> bool {
        self.trail.push(Condition::checked(src, cond, holds));
        holds
    }

    fn flag(&mut self, src: &str, cond: impl Into<String>, holds: bool) -> bool {
        self.trail.push(Condition::assumed(src, cond, holds));
        holds
    }

    /// `K^2 >= (p/q) chi`, false when chi is unknown.
    fn slope(&mut self, src: &str, p: i64, q: i64, text: &str) -> bool {
        let holds = self.s.chi.is_some_and(|c| q * self.s.k2 >= p * c);
        self.check(src, format!("K2 >= {text} chi"), holds)
    }

    fn offer(&mut self, src: &str, formula: &str, value: BigRational) {
        self.applicable.push(Candidate { source: src.into(), formula: formula.into(), value });
    }

    fn has_pencil(&self, g: u64) -> bool {
        self.s.flags.pencil_genera.contains(&g)
    }
}

/// Evaluates every encoded source whose hypotheses hold and returns the
/// minimum with the full trail.
pub fn surface_bound(s: &SurfaceInvariants) -> Result<BoundResult, BoundsError> {
    s.validate()?;
    let mut c = Ctx { s, trail: Vec::new(), applicable: Vec::new() };
    let k2 = s.k2;
    let k = int(k2);
    let f = &s.flags;

    // Small K^2.
    if c.check("thm7.7", "K2 = 1", k2 == 1) {
        c.offer("thm7.7", "270", int(270));
    }
    if c.check("thm7.7", "2 <= K2 <= 3", (2..=3).contains(&k2)) {
        c.offer("thm7.7", "200K2+22", int(200) * &k + int(22));
    }
    if c.check("thm7.7", "4 <= K2 <= 63", (4..=63).contains(&k2)) {
        c.offer("thm7.7", "114K2+24", int(114) * &k + int(24));
    }

    if c.chi_at_least("thm7.1", 8) {
        c.offer("thm7.1", "36K2+24", int(36) * &k + int(24));
    }

    // Large K^2 with the slope condition on pencils of genus 3 to 5.
    let big = c.check("thm6.5", "K2 >= 181", k2 >= 181);
    let mut slopes = true;
    for g in 3..=5u64 {
        if c.has_pencil(g) {
            c.flag("thm6.5", format!("has a pencil of genus {g}"), true);
            let p = 12 * (g as i64 - 1);
            let q = g as i64 + 5;
            slopes &= c.slope("thm6.5", p, q, &format!("{p}/{q}"));
        }
    }
    if big && slopes {
        c.offer("thm6.5", "24K2+256", int(24) * &k + int(256));
    }

    let dim2 = c.flag("thm6.1", "canonical image of dimension 2", f.canonical_image_dim == Some(2));
    let chi14 = c.chi_at_least("thm6.1", 14);
    let k82 = c.check("thm6.1", "K2 >= 82", k2 >= 82);
    let no_small = c.flag("thm6.1", "no pencil of genus <= 5", !f.pencil_genera.iter().any(|&g| g <= 5));
    if dim2 && chi14 && k82 && no_small {
        c.offer("thm6.1", "24K2+16", int(24) * &k + int(16));
        if c.flag("thm6.1", "canonical map birational", f.canonical_map_birational) {
            c.offer("thm6.1", "18K2+18", int(18) * &k + int(18));
        }
    }

    if let Some(g) = f.two_pencils_genus {
        c.flag("prop5.4", format!("two pencils of genus {g}"), true);
        let gm = g as i64 - 1;
        if c.check("prop5.4", "genus >= 2", g >= 2) & c.check("prop5.4", format!("K2 > {}", 4 * gm * gm), k2 > 4 * gm * gm)
        {
            c.offer("prop5.4", "16K2", int(16) * &k);
        }
    }

    // Pencils of genus 3, 4, 5.
    let pencil_cases: [(u64, &str, i64, i64, i64, &str, i64); 3] =
        [(3, "prop5.5", 16, 3, 1, "24K2+64", 64), (4, "prop5.6", 36, 4, 1, "24K2+144", 144), (5, "prop5.7", 64, 24, 5, "24K2+256", 256)];
    for (g, src, floor, p, q, formula, add) in pencil_cases {
        if c.has_pencil(g) {
            c.flag(src, format!("has a pencil of genus {g}"), true);
            let a = c.check(src, format!("K2 > {floor}"), k2 > floor);
            let text = if q == 1 { p.to_string() } else { format!("{p}/{q}") };
            let b = c.slope(src, p, q, &text);
            if a && b {
                c.offer(src, formula, int(24) * &k + int(add));
            }
        }
    }

    // Canonical map composed with a pencil.
    let chi21 = c.chi_at_least("prop5.8", 21);
    let dim1 = c.flag("prop5.8", "canonical image of dimension 1", f.canonical_image_dim == Some(1));
    if chi21 && dim1 {
        c.offer("prop5.8", "12.5K2+469", headline58(&k));
        if let Some(g) = f.canonical_pencil_genus {
            let chi = s.chi.expect("checked above");
            let forced = c.check(
                "prop5.8",
                format!("K2 >= (2g-2)(chi-2) = {} for the canonical pencil of genus {g}", (2 * g as i64 - 2) * (chi - 2)),
                k2 >= (2 * g as i64 - 2) * (chi - 2),
            );
            if let Some(case) = prop58_cases(k2).into_iter().find(|x| x.genus == g) {
                if let Some(chain) = case.stated_chain_holds {
                    c.check("prop5.8", "8K2+640 <= 12K2+496", chain);
                }
                if forced {
                    c.offer(&format!("prop5.8/g={g}"), &case.formula, case.value);
                }
            }
        }
    }

    // Genus 2 pencils.
    if c.has_pencil(2) {
        c.flag("chen", "has a pencil of genus 2", true);
        if c.check("chen", "K2 >= 9", k2 >= 9) {
            c.offer("chen", "12.5K2+100", rat(25, 2) * &k + int(100));
        }
    }

    let even = c.flag("thm8.1", "simply connected and even", f.even_simply_connected);
    let maps = c.flag("thm8.1", "phi_L generically finite, phi_2L birational", f.half_canonical_maps_good);
    let no_fib = c.flag("thm8.1", "no fibration of genus 3..8", !f.pencil_genera.iter().any(|g| (3..=8).contains(g)));
    let k196 = k2 > 196;
    if even && maps && no_fib & c.check("thm8.1", "K2 > 196", k196) {
        c.offer("thm8.1", "12K2+24", int(12) * &k + int(24));
    }

    if let Some(d) = &f.complete_intersection {
        let n = d.len() as i64 + 2;
        let sum: i64 = d.iter().map(|&x| x as i64).sum();
        c.flag("cor8.2", format!("smooth complete intersection of type {d:?} in P^{n}"), true);
        let odd = c.check("cor8.2", format!("sum d_i - N = {} odd", sum - n), (sum - n) % 2 != 0);
        if odd & c.check("cor8.2", "K2 > 196", k196) {
            c.offer("cor8.2", "12K2+24", int(12) * &k + int(24));
        }
        if d.len() == 1 && c.check("thm8.3", format!("surface in P^3 of degree {} >= 5", d[0]), d[0] >= 5) {
            let dd = BigInt::from(d[0]);
            c.offer("thm8.3", "3d^2(d-2)+9", int(BigInt::from(3) * &dd * &dd * (&dd - 2) + 9));
        }
    }

    let best = c.applicable.iter().min_by(|a, b| a.value.cmp(&b.value)).cloned();
    let mut assumptions = vec!["geometric flags are taken as given".to_string()];
    if s.chi.is_some() {
        assumptions.push("chi >= 1 for surfaces of general type".into());
    }
    Ok(BoundResult {
        value: best.as_ref().map(|b| b.value.clone()),
        source: best.map(|b| b.source),
        applicable: c.applicable,
        hypothesis_trail: c.trail,
        assumptions,
    })
}

/// One row of the bound table; flags are all at their defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub k2: i64,
    pub chi: i64,
    pub bound: String,
    pub source: String,
}

/// Bounds over the grid, skipping pairs with `K^2 > 9 chi`.
pub fn surface_table(
    k2: std::ops::RangeInclusive<i64>,
    chi: std::ops::RangeInclusive<i64>,
) -> Result<Vec<TableRow>, BoundsError> {
    let mut rows = Vec::new();
    for k in k2 {
        for x in chi.clone() {
            if k > 9 * x || x < 1 || k < 1 {
                continue;
            }
            let r = surface_bound(&SurfaceInvariants::new(k, Some(x), SurfaceFlags::default())?)?;
            rows.push(TableRow {
                k2: k,
                chi: x,
                bound: r.value.as_ref().map(crate::render).unwrap_or_else(|| "none".into()),
                source: r.source.unwrap_or_else(|| "none".into()),
            });
        }
    }
    Ok(rows)
}

/// CSV rendering of `surface_table`.
pub fn table_csv(rows: &[TableRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(k2: i64, chi: Option<i64>, flags: SurfaceFlags) -> BoundResult {
        surface_bound(&SurfaceInvariants::new(k2, chi, flags).unwrap()).unwrap()
    }

    #[test]
    fn headline_values() {
        assert_eq!(bound(1, None, SurfaceFlags::default()).value, Some(int(270)));
        assert_eq!(bound(200, Some(30), SurfaceFlags::default()).value, Some(int(5056)));
        let g2 = SurfaceFlags { pencil_genera: vec![2], ..SurfaceFlags::default() };
        assert_eq!(bound(50, None, g2).value, Some(int(725)));
        let quintic = SurfaceInvariants::complete_intersection(vec![5]).unwrap();
        assert_eq!((quintic.k2, quintic.chi), (5, Some(5)));
        assert_eq!(surface_bound(&quintic).unwrap().value, Some(int(234)));
    }

    #[test]
    fn invalid_inputs() {
        assert!(SurfaceInvariants::new(10, Some(0), SurfaceFlags::default()).is_err());
        assert!(SurfaceInvariants::new(10, Some(1), SurfaceFlags::default()).is_err());
        assert!(SurfaceInvariants::new(0, None, SurfaceFlags::default()).is_err());
    }

    #[test]
    fn complete_intersections() {
        assert_eq!(complete_intersection_invariants(&[6]).unwrap(), (24, 11));
        assert_eq!(complete_intersection_invariants(&[4, 5]).unwrap(), (320, 70));
        assert!(complete_intersection_invariants(&[4]).is_err());
    }

    #[test]
    fn nothing_applies_without_chi() {
        let r = bound(100, None, SurfaceFlags::default());
        assert_eq!(r.value, None);
        assert!(r.hypothesis_trail.iter().any(|c| c.condition.contains("chi unknown")));
    }

    #[test]
    fn genus_four_chain_needs_k2_36() {
        let at = |k2| prop58_cases(k2).into_iter().find(|c| c.genus == 4).unwrap();
        assert_eq!(at(35).stated_chain_holds, Some(false));
        assert_eq!(at(36).stated_chain_holds, Some(true));
        assert!(!at(37).within_headline);
        assert!(at(38).within_headline);
    }
}
