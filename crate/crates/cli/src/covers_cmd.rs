//! `enumerate-covers`: exhaustive search with an optional golden comparison.

use std::path::PathBuf;
use std::time::Instant;

use covers::{compare_with_golden, enumerate_extremal, golden_for, EnumerationRecord, Filters, GoldenComparison, LinearBound};
use serde::Serialize;

use crate::report::{self, Header};
use crate::{exit, CliError, Outcome};

#[derive(Clone, Debug)]
pub struct CoversArgs {
    pub bound: String,
    pub gmin: u64,
    pub gmax: u64,
    pub gamma: Option<u64>,
    pub kmin: Option<usize>,
    pub kmax: Option<usize>,
    pub no_hyperelliptic: bool,
    pub cyclic: bool,
    pub golden: bool,
    pub out: PathBuf,
}

impl CoversArgs {
    pub fn new(bound: &str, gmin: u64, gmax: u64, out: PathBuf) -> Self {
        CoversArgs {
            bound: bound.into(),
            gmin,
            gmax,
            gamma: None,
            kmin: None,
            kmax: None,
            no_hyperelliptic: false,
            cyclic: false,
            golden: false,
            out,
        }
    }

    pub fn filters(&self) -> Filters {
        Filters {
            gamma: self.gamma,
            kmin: self.kmin,
            kmax: self.kmax,
            require_no_hyperelliptic_witness: self.no_hyperelliptic,
            assume_cyclic: self.cyclic,
        }
    }

    fn report_name(&self) -> String {
        let mut s = format!("enumerate-covers-{}-g{}-{}", self.bound.replace('/', "_"), self.gmin, self.gmax);
        if let Some(g) = self.gamma {
            s += &format!("-gamma{g}");
        }
        if let Some(k) = self.kmin {
            s += &format!("-kmin{k}");
        }
        if let Some(k) = self.kmax {
            s += &format!("-kmax{k}");
        }
        if self.no_hyperelliptic {
            s += "-nohyp";
        }
        if self.cyclic {
            s += "-cyclic";
        }
        s
    }
}

#[derive(Serialize)]
struct ConfigEcho {
    bound: String,
    gmin: u64,
    gmax: u64,
    gamma: Option<u64>,
    kmin: Option<usize>,
    kmax: Option<usize>,
    no_hyperelliptic: bool,
    cyclic: bool,
}

#[derive(Serialize)]
pub struct CoversBody {
    config: ConfigEcho,
    count: usize,
    records: Vec<EnumerationRecord>,
    golden: Option<GoldenComparison>,
}

fn describe(r: &EnumerationRecord) -> String {
    let w = match &r.witness {
        Some(w) => format!("witness genus {}", w.quotient_genus),
        None => "no involution witness".into(),
    };
    format!(
        "g={} |G|={} G={} gamma={} signature={:?} ({w})",
        r.genus, r.order, r.datum.group, r.datum.quotient_genus, r.signature
    )
}

pub fn run(args: &CoversArgs) -> Result<Outcome, CliError> {
    let bound: LinearBound = args.bound.parse()?;
    if args.gmin > args.gmax {
        return Err(CliError::Usage(format!("--gmin {} exceeds --gmax {}", args.gmin, args.gmax)));
    }
    let filters = args.filters();
    let golden_run = if args.golden {
        Some(golden_for(&bound, args.gmin, args.gmax, &filters).ok_or_else(|| {
            CliError::Usage("--golden: no shipped expected list for these parameters".into())
        })?)
    } else {
        None
    };
    let start = Instant::now();
    let records = enumerate_extremal(args.gmin, args.gmax, &bound, &filters)?;
    let elapsed = start.elapsed().as_millis();
    let golden = golden_run.as_ref().map(|g| compare_with_golden(g, &records));

    let mut lines = vec![format!("{} records", records.len())];
    lines.extend(records.iter().map(describe));
    let mut code = exit::OK;
    if let Some(c) = &golden {
        if c.exact {
            lines.push(format!("golden {}: exact match", c.run));
        } else {
            code = exit::VIOLATION;
            lines.push(format!("golden {}: MISMATCH", c.run));
            for e in &c.missing {
                lines.push(format!("  expected but not found: g={} |G|={} {:?}", e.genus, e.order, e.signature));
            }
            for e in &c.unexpected {
                lines.push(format!("  found but not expected: g={} |G|={} {:?}", e.genus, e.order, e.signature));
            }
            for f in &c.flagged {
                lines.push(format!("  finding [{}]: {}", f.kind, f.note));
            }
            for e in &c.unexplained {
                lines.push(format!("  unexplained: g={} |G|={} {:?}", e.genus, e.order, e.signature));
            }
        }
    }
    let body = CoversBody {
        config: ConfigEcho {
            bound: bound.to_string(),
            gmin: args.gmin,
            gmax: args.gmax,
            gamma: args.gamma,
            kmin: args.kmin,
            kmax: args.kmax,
            no_hyperelliptic: args.no_hyperelliptic,
            cyclic: args.cyclic,
        },
        count: records.len(),
        records,
        golden,
    };
    let header = Header::new("enumerate-covers", None, serde_json::json!({ "enumeration": elapsed }));
    let written = report::write(&args.out, &args.report_name(), &header, &body)?;
    lines.push(format!("report: {}", written.body.display()));
    Ok(Outcome { code, lines })
}
