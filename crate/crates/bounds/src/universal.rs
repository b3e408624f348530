//! The least index `n` for which the threefold counting argument works for
//! every admissible `(K^3, chi)`, and an explicit constant assembled from it.
//!
//! All quantities are linear in `(K^3, chi)` with coefficients polynomial in
//! `n`. For fixed `n` and `K^3` the sign is decided at the two ends of the
//! `chi` range, `K^3/6` and `-5/2 K^3 - 1`; along each end the value is
//! `slope * K^3 + intercept`, positive for all `K^3 >= 2` iff the slope is
//! non-negative and the value at `K^3 = 2` is positive.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::margin::{decomposability_margin, Invariants, MarginVariant};
use crate::threefold::ThreefoldInvariants;
use crate::{int, rat, render, ser, BoundsError};

/// Polynomial in `n`; `coefficients[i]` multiplies `n^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coefficients: Vec<BigRational>,
}

impl Poly {
    fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Poly { coefficients }
    }

    fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * n + c)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coefficients.last().cloned().unwrap_or_else(BigRational::zero)
    }

    fn add(&self, o: &Poly) -> Poly {
        let len = self.coefficients.len().max(o.coefficients.len());
        let get = |p: &Poly, i: usize| p.coefficients.get(i).cloned().unwrap_or_else(BigRational::zero);
        Poly::new((0..len).map(|i| get(self, i) + get(o, i)).collect())
    }

    fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-BigRational::one()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => render(c),
                1 => format!("({}) n", render(c)),
                _ => format!("({}) n^{i}", render(c)),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coefficients.iter().map(render).collect();
        v.serialize(s)
    }
}

/// `(2cn - 1)(cn)(cn - 1)/12`, the `K^3` coefficient of `p_{cn}`.
fn k3_coefficient(c: i64) -> Poly {
    Poly::new(vec![BigRational::zero(), rat(c, 12), rat(-3 * c * c, 12), rat(2 * c * c * c, 12)])
}

/// `1 - 2cn`, the `chi` coefficient of `p_{cn}`.
fn chi_coefficient(c: i64) -> Poly {
    Poly::new(vec![int(1), int(-2 * c)])
}

/// A quantity `k3_part * K^3 + chi_part * chi + constant`.
#[derive(Clone, Debug)]
struct Linear {
    k3: Poly,
    chi: Poly,
    constant: Poly,
}

impl Linear {
    /// Along `chi = K^3/6`.
    fn upper(&self) -> (Poly, Poly) {
        (self.k3.add(&self.chi.scale(&rat(1, 6))), self.constant.clone())
    }

    /// Along `chi = -5/2 K^3 - 1`.
    fn lower(&self) -> (Poly, Poly) {
        (self.k3.sub(&self.chi.scale(&rat(5, 2))), self.constant.sub(&self.chi))
    }
}

fn margin_linear(eps: &BigRational) -> Linear {
    let a = int(1) - eps;
    let b = rat(14, 3) * (int(1) - int(4) * eps);
    Linear {
        k3: k3_coefficient(3).scale(&a).add(&k3_coefficient(2).scale(&b)).sub(&k3_coefficient(4)),
        chi: chi_coefficient(3).scale(&a).add(&chi_coefficient(2).scale(&b)).sub(&chi_coefficient(4)),
        constant: Poly::constant(int(-57)),
    }
}

/// `4 p_2n - p_3n`.
fn ratio_linear() -> Linear {
    Linear {
        k3: k3_coefficient(2).scale(&int(4)).sub(&k3_coefficient(3)),
        chi: chi_coefficient(2).scale(&int(4)).sub(&chi_coefficient(3)),
        constant: Poly::constant(BigRational::zero()),
    }
}

/// Sign check of one quantity along one end of the `chi` range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointCheck {
    pub quantity: String,
    pub endpoint: String,
    pub slope_poly: Poly,
    pub intercept_poly: Poly,
    #[serde(serialize_with = "ser::rational")]
    pub slope: BigRational,
    #[serde(serialize_with = "ser::rational")]
    pub intercept: BigRational,
    /// Value at `K^3 = 2`.
    #[serde(serialize_with = "ser::rational")]
    pub at_k3_min: BigRational,
    pub strict: bool,
    pub holds: bool,
}

struct Quantity {
    name: &'static str,
    linear: Linear,
    strict: bool,
}

fn endpoint_checks(quantities: &[Quantity], n: &BigRational) -> Vec<EndpointCheck> {
    let mut out = Vec::new();
    for q in quantities {
        for (endpoint, (s, c)) in [("chi = K3/6", q.linear.upper()), ("chi = -5/2 K3 - 1", q.linear.lower())] {
            let slope = s.eval(n);
            let intercept = c.eval(n);
            let at_k3_min = &slope * int(2) + &intercept;
            let positive = if q.strict { at_k3_min.is_positive() } else { !at_k3_min.is_negative() };
            out.push(EndpointCheck {
                quantity: q.name.into(),
                endpoint: endpoint.into(),
                holds: !slope.is_negative() && positive,
                slope_poly: s,
                intercept_poly: c,
                slope,
                intercept,
                at_k3_min,
                strict: q.strict,
            });
        }
    }
    out
}

/// A concrete admissible input at which `n_star - 1` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityWitness {
    pub n: u64,
    pub failed: Vec<String>,
    pub k3: Option<i64>,
    pub chi: Option<i64>,
    pub margin: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NCertificate {
    #[serde(serialize_with = "ser::rational")]
    pub epsilon: BigRational,
    pub n_star: u64,
    /// `n^3` coefficient of the margin's `K^3` part, `(1 - 529 e)/18`.
    #[serde(serialize_with = "ser::rational")]
    pub leading_coefficient: BigRational,
    /// Least `n` with `12/((6n-1)(3n-2)) <= e`.
    pub chain_min_n: u64,
    pub birational_min_n: u64,
    pub margin_k3_poly: Poly,
    pub margin_chi_poly: Poly,
    pub ratio_k3_poly: Poly,
    pub ratio_chi_poly: Poly,
    pub checks: Vec<EndpointCheck>,
    pub minimality: MinimalityWitness,
}

fn chain_ok(n: u64, eps: &BigRational) -> bool {
    let d = BigInt::from(6 * n - 1) * BigInt::from(3 * n as i64 - 2);
    d.is_positive() && rat(12, 1) / int(d) <= *eps
}

/// The least `n` for which the counting argument goes through for every
/// admissible threefold, with an exact certificate.
pub fn universal_n(epsilon: &BigRational) -> Result<NCertificate, BoundsError> {
    let lead = (int(1) - int(529) * epsilon) / int(18);
    if !lead.is_positive() || !epsilon.is_positive() {
        return Err(BoundsError::Precondition(format!("need 0 < e < 1/529, got {}", render(epsilon))));
    }
    let quantities = [
        Quantity { name: "margin", linear: margin_linear(epsilon), strict: true },
        Quantity { name: "4 p_2n - p_3n", linear: ratio_linear(), strict: false },
    ];
    debug_assert_eq!(quantities[0].linear.k3.leading(), lead);
    let chain_min_n = (1..).find(|&n| chain_ok(n, epsilon)).expect("chain bound grows");
    let birational_min_n = 8;
    let ok = |n: u64| {
        n >= chain_min_n && n >= birational_min_n && endpoint_checks(&quantities, &int(n)).iter().all(|c| c.holds)
    };
    let n_star = (1u64..).find(|&n| ok(n)).expect("the cubic term dominates");
    let checks = endpoint_checks(&quantities, &int(n_star));
    let minimality = minimality_witness(n_star - 1, &quantities, epsilon, chain_min_n, birational_min_n);
    Ok(NCertificate {
        epsilon: epsilon.clone(),
        n_star,
        leading_coefficient: lead,
        chain_min_n,
        birational_min_n,
        margin_k3_poly: quantities[0].linear.k3.clone(),
        margin_chi_poly: quantities[0].linear.chi.clone(),
        ratio_k3_poly: quantities[1].linear.k3.clone(),
        ratio_chi_poly: quantities[1].linear.chi.clone(),
        checks,
        minimality,
    })
}

fn minimality_witness(
    n: u64,
    quantities: &[Quantity],
    eps: &BigRational,
    chain_min_n: u64,
    birational_min_n: u64,
) -> MinimalityWitness {
    let mut failed = Vec::new();
    if n < chain_min_n {
        failed.push(format!("chain: 12/((6n-1)(3n-2)) > {}", render(eps)));
    }
    if n < birational_min_n {
        failed.push("n < 8".into());
    }
    let mut k3 = None;
    let mut chi = None;
    let mut margin = None;
    for c in endpoint_checks(quantities, &int(n)).into_iter().filter(|c| !c.holds) {
        failed.push(format!("{} along {}", c.quantity, c.endpoint));
        if k3.is_some() || c.quantity != "margin" || n < 1 {
            continue;
        }
        // An admissible integer point where the margin is not positive.
        let upper = c.endpoint.starts_with("chi = K3/6");
        let step = if upper { 6 } else { 2 };
        let mut k = step;
        let limit = 1i64 << 40;
        while k < limit {
            let v = &c.slope * int(k) + &c.intercept;
            if !v.is_positive() {
                break;
            }
            if !c.slope.is_negative() {
                k = limit;
                break;
            }
            // Jump to the root.
            let root = (-&c.intercept / &c.slope).ceil().to_integer().to_i64().unwrap_or(limit);
            k = Integer::div_ceil(&root.max(k + step), &step) * step;
        }
        if k >= limit {
            continue;
        }
        let x = if upper { k / 6 } else { ThreefoldInvariants::chi_min(k) };
        if n >= 1 && *eps == lemma_lab::formulas::epsilon() {
            if let Ok(t) = ThreefoldInvariants::new(k, x) {
                if let Ok(r) = decomposability_margin(MarginVariant::Prop33(n), &Invariants::Threefold(t)) {
                    margin = Some(render(&r.margin));
                }
            }
        }
        k3 = Some(k);
        chi = Some(x);
    }
    MinimalityWitness { n, failed, k3, chi, margin }
}

/// One factor of the constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssemblyStep {
    pub name: String,
    pub value: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantAssembly {
    /// `#G <= c K^3`; an upper bound assembled from the argument, not a
    /// published value.
    #[serde(serialize_with = "ser::bigint")]
    pub c: BigInt,
    pub n_star: u64,
    pub b: u64,
    pub trail: Vec<AssemblyStep>,
    /// Lower bound from the product example `#G = 25 K^3 + 1200`.
    pub example_floor: u64,
}

/// Explicit `c`: the larger of the two branches of the fibration argument
/// with `b = 4 n_star`.
pub fn threefold_constant() -> Result<ConstantAssembly, BoundsError> {
    let cert = universal_n(&lemma_lab::formulas::epsilon())?;
    let b = 4 * cert.n_star;
    let m = b + 4;
    let branch_small: BigInt = BigInt::from(270u64 * 9 * 34) * b;
    let mi = int(m);
    let two_m_1 = int(2 * m - 1);
    // p_m <= (2m-1)m(m-1)/12 K^3 + (2m-1)(5/2 K^3 + 1) and K^3 >= 2.
    let pm_coeff = &two_m_1 * &mi * (&mi - int(1)) / int(12) + &two_m_1 * rat(5, 2) + &two_m_1 / int(2);
    let branch_large = int(335) * &pm_coeff;
    let branch_large_ceil = branch_large.ceil().to_integer();
    let c = branch_small.clone().max(branch_large_ceil.clone());
    let trail = vec![
        AssemblyStep { name: "n_star".into(), value: cert.n_star.to_string(), note: "least n from the universal index search".into() },
        AssemblyStep { name: "b".into(), value: b.to_string(), note: "b = 4 n_star; the fixed pencil lives in |bK|".into() },
        AssemblyStep { name: "270*9*34".into(), value: (270u64 * 9 * 34).to_string(), note: "surface bound 270 K^2, K^2 <= 9 chi, p_g < 34".into() },
        AssemblyStep { name: "branch p_g < 34".into(), value: branch_small.to_string(), note: "270*9*34*b, using d <= b K^3".into() },
        AssemblyStep { name: "p_(b+4) coefficient".into(), value: render(&pm_coeff), note: "(2m-1)m(m-1)/12 + (2m-1)(5/2) + (2m-1)/2 with m = b+4; -chi <= 5/2 K^3 + 1 and 1 <= K^3/2".into() },
        AssemblyStep { name: "branch p_g >= 34".into(), value: render(&branch_large), note: "335 p_g(F) d <= 335 p_(b+4)".into() },
        AssemblyStep { name: "c".into(), value: c.to_string(), note: "maximum of the two branches, rounded up".into() },
    ];
    Ok(ConstantAssembly { c, n_star: cert.n_star, b, trail, example_floor: 25 })
}

impl ConstantAssembly {
    pub fn above_example_floor(&self) -> bool {
        self.c >= BigInt::from(self.example_floor)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_polys_match_plurigenera() {
        for (k3, chi) in [(2, 0), (2, -6), (12, 2), (40, -101)] {
            let t = ThreefoldInvariants::new(k3, chi).unwrap();
            for n in 2..12u64 {
                let lin = margin_linear(&lemma_lab::formulas::epsilon());
                let nn = int(n);
                let v = lin.k3.eval(&nn) * int(k3) + lin.chi.eval(&nn) * int(chi) + lin.constant.eval(&nn);
                let r = decomposability_margin(MarginVariant::Prop33(n), &Invariants::Threefold(t)).unwrap();
                assert_eq!(v, r.margin);
            }
        }
    }

    #[test]
    fn leading_coefficient() {
        let lin = margin_linear(&lemma_lab::formulas::epsilon());
        assert_eq!(lin.k3.degree(), 3);
        assert_eq!(lin.k3.leading(), rat(1, 9540));
    }

    #[test]
    fn chain_floor_is_twenty() {
        let e = lemma_lab::formulas::epsilon();
        assert!(!chain_ok(19, &e));
        assert!(chain_ok(20, &e));
    }
}
