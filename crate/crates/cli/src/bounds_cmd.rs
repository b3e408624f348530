//! `bounds`: surface bounds, threefold plurigenera, margins and the
//! universal index, from `key=value` invariants.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

use bounds::surface::{complete_intersection_invariants, table_csv};
use bounds::{
    decomposability_margin, plurigenus, render, surface_bound, surface_table, threefold_constant, universal_n,
    Invariants, MarginVariant, SurfaceFlags, SurfaceInvariants, ThreefoldInvariants,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::report::{self, Header};
use crate::{exit, CliError, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BoundsKind {
    Surface,
    Threefold,
    Plurigenus,
    Margin,
    UniversalN,
}

#[derive(Clone, Debug)]
pub struct BoundsArgs {
    pub kind: BoundsKind,
    pub pairs: Vec<String>,
    /// Emit the bound table over `k2_range` x `chi_range` as CSV.
    pub table: bool,
    pub k2_range: String,
    pub chi_range: String,
    pub out: PathBuf,
}

impl BoundsArgs {
    pub fn new(kind: BoundsKind, pairs: &[&str], out: PathBuf) -> Self {
        BoundsArgs {
            kind,
            pairs: pairs.iter().map(|s| s.to_string()).collect(),
            table: false,
            k2_range: "1..=100".into(),
            chi_range: "1..=30".into(),
            out,
        }
    }
}

const SURFACE_KEYS: &[&str] = &[
    "k2",
    "chi",
    "pencils",
    "two_pencils",
    "canonical_dim",
    "canonical_pencil",
    "birational",
    "even",
    "half_canonical",
    "ci",
];

/// Case-insensitive keys; `K2`, `k^2` and `K²` all mean `k2`.
fn parse_pairs(pairs: &[String], allowed: &[&str]) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for p in pairs {
        let (k, v) = p.split_once('=').ok_or_else(|| CliError::Usage(format!("expected key=value, got {p:?}")))?;
        let key = k.trim().to_lowercase().replace('^', "").replace('²', "2").replace('³', "3").replace('-', "_");
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("unknown key {k:?}; expected one of {}", allowed.join(", "))));
        }
        if map.insert(key, v.trim().to_string()).is_some() {
            return Err(CliError::Usage(format!("key {k:?} given twice")));
        }
    }
    Ok(map)
}

fn int<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError> {
    map.get(key)
        .map(|v| v.parse::<T>().map_err(|_| CliError::Usage(format!("{key}={v:?} is not an integer"))))
        .transpose()
}

fn required<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<T, CliError> {
    int(map, key)?.ok_or_else(|| CliError::Usage(format!("missing {key}=...")))
}

fn list(map: &BTreeMap<String, String>, key: &str) -> Result<Option<Vec<u64>>, CliError> {
    map.get(key)
        .map(|v| {
            v.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("{key}={v:?} is not a list of integers"))))
                .collect()
        })
        .transpose()
}

fn flag(map: &BTreeMap<String, String>, key: &str) -> Result<bool, CliError> {
    match map.get(key).map(|s| s.to_lowercase()) {
        None => Ok(false),
        Some(v) if matches!(v.as_str(), "1" | "true" | "yes") => Ok(true),
        Some(v) if matches!(v.as_str(), "0" | "false" | "no") => Ok(false),
        Some(v) => Err(CliError::Usage(format!("{key}={v:?} is not a boolean"))),
    }
}

pub fn surface_invariants(pairs: &[String]) -> Result<SurfaceInvariants, CliError> {
    let m = parse_pairs(pairs, SURFACE_KEYS)?;
    let ci = list(&m, "ci")?;
    let flags = SurfaceFlags {
        pencil_genera: list(&m, "pencils")?.unwrap_or_default(),
        two_pencils_genus: int(&m, "two_pencils")?,
        canonical_image_dim: int(&m, "canonical_dim")?,
        canonical_pencil_genus: int(&m, "canonical_pencil")?,
        canonical_map_birational: flag(&m, "birational")?,
        even_simply_connected: flag(&m, "even")?,
        half_canonical_maps_good: flag(&m, "half_canonical")?,
        complete_intersection: ci.clone(),
    };
    let (mut k2, mut chi) = (int::<i64>(&m, "k2")?, int::<i64>(&m, "chi")?);
    if let Some(d) = &ci {
        let (ck, cx) = complete_intersection_invariants(d)?;
        k2 = k2.or(Some(ck));
        chi = chi.or(Some(cx));
    }
    let k2 = k2.ok_or_else(|| CliError::Usage("missing K2=... (or ci=...)".into()))?;
    Ok(SurfaceInvariants::new(k2, chi, flags)?)
}

fn threefold_invariants(m: &BTreeMap<String, String>) -> Result<ThreefoldInvariants, CliError> {
    Ok(ThreefoldInvariants::new(required(m, "k3")?, required(m, "chi")?)?)
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, CliError> {
    let bad = || CliError::Usage(format!("bad range {s:?}; use a..=b or a..b"));
    let (a, b, inclusive) = if let Some((a, b)) = s.split_once("..=") {
        (a, b, true)
    } else if let Some((a, b)) = s.split_once("..") {
        (a, b, false)
    } else {
        return Err(bad());
    };
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok(if inclusive { a..=b } else { a..=b - 1 })
}

#[derive(Serialize)]
struct ThreefoldBody {
    invariants: ThreefoldInvariants,
    chi_range: (i64, i64),
    plurigenera: Vec<(u64, String)>,
}

#[derive(Serialize)]
struct PlurigenusBody {
    invariants: ThreefoldInvariants,
    n: u64,
    value: String,
}

#[derive(Serialize)]
struct UniversalBody {
    certificate: bounds::NCertificate,
    constant: bounds::ConstantAssembly,
}

fn finish<T: Serialize>(
    args: &BoundsArgs,
    name: &str,
    started: Instant,
    data: &T,
    mut lines: Vec<String>,
) -> Result<Outcome, CliError> {
    let header = Header::new(&format!("bounds {name}"), None, serde_json::json!({ "total": started.elapsed().as_millis() }));
    let written = report::write(&args.out, &format!("bounds-{name}"), &header, data)?;
    lines.push(format!("report: {}", written.body.display()));
    Ok(Outcome { code: exit::OK, lines })
}

pub fn run(args: &BoundsArgs) -> Result<Outcome, CliError> {
    let started = Instant::now();
    match args.kind {
        BoundsKind::Surface if args.table => {
            if !args.pairs.is_empty() {
                return Err(CliError::Usage("--table takes --k2 and --chi ranges, not key=value invariants".into()));
            }
            let rows = surface_table(parse_range(&args.k2_range)?, parse_range(&args.chi_range)?)?;
            let csv = table_csv(&rows);
            let path = report::write_text(&args.out, "bounds-surface-table.csv", &csv)?;
            let mut lines: Vec<String> = csv.lines().map(String::from).collect();
            lines.push(format!("table: {}", path.display()));
            Ok(Outcome { code: exit::OK, lines })
        }
        BoundsKind::Surface => {
            let inv = surface_invariants(&args.pairs)?;
            let r = surface_bound(&inv)?;
            let line = match (&r.value, &r.source) {
                (Some(v), Some(s)) => format!("bound: {} ({s})", render(v)),
                _ => "bound: none (no statement applies to these invariants)".into(),
            };
            let data = serde_json::json!({ "invariants": inv, "result": r });
            finish(args, "surface", started, &data, vec![line])
        }
        BoundsKind::Threefold => {
            let m = parse_pairs(&args.pairs, &["k3", "chi"])?;
            let inv = threefold_invariants(&m)?;
            let plurigenera = (2..=6)
                .map(|n| plurigenus(&inv, n).map(|p| (n, p.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let body = ThreefoldBody {
                chi_range: (ThreefoldInvariants::chi_min(inv.k3), ThreefoldInvariants::chi_max(inv.k3)),
                invariants: inv,
                plurigenera,
            };
            let mut lines = vec![format!("chi range for K3={}: [{}, {}]", body.invariants.k3, body.chi_range.0, body.chi_range.1)];
            lines.extend(body.plurigenera.iter().map(|(n, p)| format!("P{n} = {p}")));
            finish(args, "threefold", started, &body, lines)
        }
        BoundsKind::Plurigenus => {
            let m = parse_pairs(&args.pairs, &["k3", "chi", "n"])?;
            let inv = threefold_invariants(&m)?;
            let n: u64 = required(&m, "n")?;
            let value = plurigenus(&inv, n)?.to_string();
            let line = format!("P{n} = {value}");
            finish(args, "plurigenus", started, &PlurigenusBody { invariants: inv, n, value }, vec![line])
        }
        BoundsKind::Margin => {
            let mut m = parse_pairs(&args.pairs, &["variant", "k2", "k3", "chi", "n"])?;
            let name = m.remove("variant").ok_or_else(|| CliError::Usage("missing variant=...".into()))?;
            let variant: MarginVariant = match m.remove("n") {
                Some(n) => format!("prop3.3({n})").parse()?,
                None => name.parse()?,
            };
            let inv = match variant {
                MarginVariant::Prop33(_) => {
                    if m.contains_key("k2") {
                        return Err(CliError::Usage(format!("{variant} takes K3=, not K2=")));
                    }
                    Invariants::Threefold(threefold_invariants(&m)?)
                }
                _ => {
                    if m.contains_key("k3") {
                        return Err(CliError::Usage(format!("{variant} takes K2=, not K3=")));
                    }
                    let k2: i64 = required(&m, "k2")?;
                    let chi: i64 = required(&m, "chi")?;
                    Invariants::Surface(SurfaceInvariants::new(k2, Some(chi), SurfaceFlags::default())?)
                }
            };
            let r = decomposability_margin(variant, &inv)?;
            let line = format!(
                "{variant}: lhs {} rhs {} margin {} ({})",
                render(&r.lhs),
                render(&r.rhs),
                render(&r.margin),
                if r.positive { "positive" } else { "not positive" }
            );
            finish(args, "margin", started, &r, vec![line])
        }
        BoundsKind::UniversalN => {
            let m = parse_pairs(&args.pairs, &["eps"])?;
            let eps = match m.get("eps") {
                None => lemma_lab::formulas::epsilon(),
                Some(s) => parse_rational(s)?,
            };
            let certificate = universal_n(&eps)?;
            let constant = threefold_constant()?;
            let lines = vec![
                format!("n_star = {}", certificate.n_star),
                format!("leading coefficient = {}", render(&certificate.leading_coefficient)),
                format!("chain condition from n = {}", certificate.chain_min_n),
                format!("c = {}", constant.c),
            ];
            finish(args, "universal-n", started, &UniversalBody { certificate, constant }, lines)
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("bad rational {s:?}"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn keys_normalize() {
        let inv = surface_invariants(&s(&["K2=4", "Chi=3", "pencils=3,4"])).unwrap();
        assert_eq!((inv.k2, inv.chi), (4, Some(3)));
        assert_eq!(inv.flags.pencil_genera, vec![3, 4]);
        assert!(matches!(surface_invariants(&s(&["K2=4", "colour=3"])), Err(CliError::Usage(_))));
        assert!(matches!(surface_invariants(&s(&["K2=10", "chi=0"])), Err(CliError::Invalid(_))));
    }

    #[test]
    fn complete_intersection_fills_invariants() {
        let inv = surface_invariants(&s(&["ci=5"])).unwrap();
        assert_eq!((inv.k2, inv.chi), (5, Some(5)));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..=4").unwrap(), 1..=4);
        assert_eq!(parse_range("1..4").unwrap(), 1..=3);
        assert!(parse_range("1-4").is_err());
    }
}
