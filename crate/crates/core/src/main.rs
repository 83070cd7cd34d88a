use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::Deserialize;
use serde_json::{json, Value};

use curvsym::cache::Cache;
use curvsym::classify::{classify, ClassificationQuery, FormType, Parity};
use curvsym::cohomology::{classify_central_extensions, verify_lemma_7x, LemmaCase};
use curvsym::config::Config;
use curvsym::fixed_point::{
    batch_lefschetz_cp2, batch_lefschetz_s4, fixed_set_cp2, fixed_set_s4, involution_catalog, involution_identity_check,
    lefschetz_check_cp2, lefschetz_check_s4,
};
use curvsym::group::{structural_invariants, GroupKind, MetacyclicParams};
use curvsym::matrix_embed::{embed_into_so5, pu3_metacyclic, pu3_relation_residuals, MatrixRep, StructureHint, C64};
use curvsym::report::{cohomology_entry, describe_factors, h2_prediction, h2_status, verify_all, Status, VerifyOptions};
use curvsym::sphere_geom::{extent_lower_bound, scan_extent, LensParams, SCAN_CSV_HEADER};
use curvsym::{Error, Result};

#[derive(Parser)]
#[command(name = "curvsym", version, about = "Lens-space extents, group extensions, matrix embeddings and fixed-point checks")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Flat `key = value` settings file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Upper bound and optimized lower bound for the q-extent of L(n;k,l).
    Extent {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        l: u64,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Upper bound over every canonical lens space in a range of n.
    ScanExtent {
        #[arg(long, default_value_t = 61)]
        n_min: u64,
        #[arg(long, default_value_t = 300)]
        n_max: u64,
        #[arg(long, default_value_t = 5)]
        q: u32,
        /// Defaults to pi/3.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// H²(Q; Z_m) next to the tabulated value.
    H2 {
        #[arg(long)]
        group: String,
        #[arg(long)]
        m: u64,
    },
    /// Isomorphism types of central extensions, or a lemma check with --lemma.
    Extensions {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        m: Option<u64>,
        /// One of 7.3, 7.4.1, 7.4.2, 7.5, 7.6.
        #[arg(long)]
        lemma: Option<String>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        m_plus: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// SO(5) embedding from a structure hint, or the PU(3) model with --pu3 m,n,r.
    Embed {
        /// JSON structure hint, e.g. '{"type":"odd-dihedral","m":2,"k":3}'.
        #[arg(long, conflicts_with = "pu3")]
        hint: Option<String>,
        #[arg(long, value_delimiter = ',')]
        pu3: Option<Vec<u64>>,
        /// Also include the matrices in the output.
        #[arg(long)]
        matrices: bool,
    },
    /// Fixed-point and Lefschetz verdicts for a matrix, a catalog entry or a batch.
    Fixedpoint {
        /// JSON file `{"space": "s4"|"cp2", "matrix": [[...]]}`; complex entries as [re, im].
        #[arg(long, conflicts_with_all = ["catalog", "batch"])]
        matrix: Option<PathBuf>,
        #[arg(long, conflicts_with = "batch")]
        catalog: Option<String>,
        #[arg(long, value_parser = ["s4", "cp2"])]
        batch: Option<String>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// Statements whose hypotheses match the query.
    Classify {
        #[arg(long)]
        b2: u8,
        #[arg(long)]
        parity: Parity,
        #[arg(long)]
        pseudofree: Option<bool>,
        #[arg(long)]
        form: Option<FormType>,
    },
    /// Run the full suite and write the report.
    VerifyAll {
        #[arg(long)]
        threshold_n: Option<u64>,
    },
}

/// Payload plus process exit status.
struct Output {
    json: Value,
    csv: Option<String>,
    code: u8,
}

impl Output {
    fn ok(json: Value) -> Self {
        Self { json, csv: None, code: 0 }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    let text = match (cli.format, &out.csv) {
        (Format::Csv, Some(csv)) => csv.clone(),
        (Format::Csv, None) => return Err(Error::InvalidInput("this subcommand has no csv form".into())),
        (Format::Json, _) => serde_json::to_string_pretty(&out.json)? + "\n",
    };
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_kind(name: &str) -> Result<GroupKind> {
    GroupKind::parse(name)
}

fn run(cli: &Cli) -> Result<Output> {
    let mut config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let cache = Cache::new(cli.cache_dir.as_deref())?;
    match &cli.command {
        Command::Extent { n, k, l, q } => {
            let lens = LensParams::new(*n, *k, *l)?;
            let mut ecfg = config.extent;
            ecfg.seed = cli.seed;
            if let Some(q) = q {
                ecfg.q = *q;
            }
            let r = extent_lower_bound(&lens, &ecfg)?;
            let csv = format!(
                "n,k,l,q,upper_bound,lower_bound,iterations_used\n{},{},{},{},{:.15},{:.15},{}\n",
                r.params.n, r.params.k, r.params.l, r.q, r.upper_bound, r.lower_bound, r.iterations_used
            );
            Ok(Output {
                json: serde_json::to_value(&r)?,
                csv: Some(csv),
                code: 0,
            })
        }
        Command::ScanExtent { n_min, n_max, q, threshold } => {
            let rows = scan_extent(*n_min, *n_max, *q, threshold.unwrap_or(PI / 3.0))?;
            let mut csv = format!("{SCAN_CSV_HEADER}\n");
            for r in &rows {
                csv.push_str(&r.csv_line());
                csv.push('\n');
            }
            Ok(Output {
                json: serde_json::to_value(&rows)?,
                csv: Some(csv),
                code: 0,
            })
        }
        Command::H2 { group, m } => {
            let kind = parse_kind(group)?;
            let e = cohomology_entry(&cache, kind, *m)?;
            let predicted = h2_prediction(kind, *m);
            let status = h2_status(kind, *m, &e.invariant_factors);
            let computed = describe_factors(&e.invariant_factors);
            let predicted_text = predicted.as_deref().map(describe_factors).unwrap_or_else(|| "-".into());
            let csv = format!(
                "group,m,computed,predicted,status\n{},{},{computed},{predicted_text},{}\n",
                e.group_id,
                m,
                status.as_str()
            );
            Ok(Output {
                json: json!({
                    "group": e.group_id,
                    "m": m,
                    "computed": computed,
                    "invariant_factors": e.invariant_factors,
                    "class_count": e.class_count,
                    "predicted": predicted_text,
                    "status": status,
                }),
                csv: Some(csv),
                code: 0,
            })
        }
        Command::Extensions { group, m, lemma, r, s, m_plus, k } => {
            if let Some(tag) = lemma {
                let need = |v: Option<u64>, name: &str| {
                    v.ok_or_else(|| Error::InvalidInput(format!("lemma {tag} needs --{name}")))
                };
                let case = match tag.as_str() {
                    "7.3" => LemmaCase::Polyhedral {
                        icosahedral: match parse_kind(group.as_deref().unwrap_or("A5"))? {
                            GroupKind::Icosa => true,
                            GroupKind::Octa => false,
                            _ => return Err(Error::InvalidInput("lemma 7.3 takes --group A5 or S4".into())),
                        },
                        m: need(*m, "m")?,
                    },
                    "7.4.1" => LemmaCase::TetraThree {
                        r: r.unwrap_or(1),
                        m_plus: m_plus.unwrap_or(1),
                    },
                    "7.4.2" => LemmaCase::TetraTwo {
                        r: r.unwrap_or(1),
                        m_plus: m_plus.unwrap_or(1),
                    },
                    "7.5" => LemmaCase::TetraSix {
                        r: r.unwrap_or(1),
                        s: s.unwrap_or(1),
                        m_plus: m_plus.unwrap_or(1),
                    },
                    "7.6" => LemmaCase::Dihedral {
                        m: need(*m, "m")?,
                        k: need(*k, "k")?,
                    },
                    other => return Err(Error::InvalidInput(format!("unknown lemma {other:?}"))),
                };
                let v = verify_lemma_7x(case)?;
                return Ok(Output::ok(serde_json::to_value(&v)?));
            }
            let kind = parse_kind(
                group
                    .as_deref()
                    .ok_or_else(|| Error::InvalidInput("extensions needs --group or --lemma".into()))?,
            )?;
            let m = m.ok_or_else(|| Error::InvalidInput("extensions needs --m".into()))?;
            let q = cache.group_or_build(&format!("standard-{}", kind.name()), || curvsym::group::build_standard(kind))?;
            let types = classify_central_extensions(&q, m)?;
            let mut entry = cohomology_entry(&cache, kind, m)?;
            entry.iso_class_count = Some(types.len());
            cache.put_cohomology(&entry)?;
            let list: Vec<Value> = types
                .iter()
                .map(|t| {
                    let inv = structural_invariants(&t.group);
                    json!({
                        "order": t.group.order(),
                        "multiplicity": t.multiplicity,
                        "includes_trivial": t.includes_trivial,
                        "class_orders": t.class_orders,
                        "invariants": inv,
                    })
                })
                .collect();
            Ok(Output::ok(json!({
                "group": kind.name(),
                "m": m,
                "invariant_factors": entry.invariant_factors,
                "class_count": entry.class_count,
                "iso_class_count": types.len(),
                "types": list,
            })))
        }
        Command::Embed { hint, pu3, matrices } => {
            let (rep, residuals) = if let Some(p) = pu3 {
                if p.len() != 3 {
                    return Err(Error::InvalidInput("--pu3 takes m,n,r".into()));
                }
                let params = MetacyclicParams::new(p[0], p[1], p[2])?;
                (pu3_metacyclic(&params)?, Some(pu3_relation_residuals(&params)))
            } else {
                let text = hint
                    .as_deref()
                    .ok_or_else(|| Error::InvalidInput("embed needs --hint or --pu3".into()))?;
                let hint: StructureHint = serde_json::from_str(text)?;
                let g = match hint.recipe() {
                    Ok(recipe) => recipe.target()?,
                    Err(Error::Unsupported(msg)) => {
                        return Ok(Output::ok(json!({ "status": Status::Unsupported, "reason": msg })));
                    }
                    Err(e) => return Err(e),
                };
                (embed_into_so5(&g, hint)?, None)
            };
            Ok(embed_output(&rep, residuals, *matrices))
        }
        Command::Fixedpoint { matrix, catalog, batch, count } => {
            if let Some(path) = matrix {
                return fixedpoint_file(path);
            }
            if let Some(name) = catalog {
                let entry = involution_catalog()?
                    .into_iter()
                    .find(|e| &e.name == name)
                    .ok_or_else(|| Error::InvalidInput(format!("no catalog entry {name:?}")))?;
                let rec = involution_identity_check(entry.data);
                return Ok(Output {
                    json: json!({ "entry": entry, "record": rec }),
                    csv: None,
                    code: u8::from(!rec.eq62_pass),
                });
            }
            if let Some(space) = batch {
                let summary = if space == "s4" {
                    batch_lefschetz_s4(*count, cli.seed)
                } else {
                    batch_lefschetz_cp2(*count, cli.seed)
                };
                return Ok(Output {
                    json: json!({ "space": space, "seed": cli.seed, "summary": summary }),
                    csv: None,
                    code: u8::from(!summary.all_pass()),
                });
            }
            Err(Error::InvalidInput("fixedpoint needs --matrix, --catalog or --batch".into()))
        }
        Command::Classify { b2, parity, pseudofree, form } => {
            let query = ClassificationQuery {
                b2: *b2,
                order_parity: *parity,
                pseudofree: *pseudofree,
                intersection_form: *form,
            };
            let records = classify(&query)?;
            Ok(Output::ok(json!({ "query": query, "statements": records })))
        }
        Command::VerifyAll { threshold_n } => {
            if let Some(t) = threshold_n {
                config.threshold_n = *t;
            }
            let report = verify_all(&VerifyOptions {
                seed: cli.seed,
                config,
                cache,
            })?;
            let mut summary = String::new();
            for st in [Status::Pass, Status::Fail, Status::Discrepancy, Status::Unsupported] {
                summary.push_str(&format!("{} {}  ", st.as_str(), report.count(st)));
            }
            for c in report.checks.iter().filter(|c| c.status != Status::Pass) {
                eprintln!("{:<12} {}: {}", c.status.as_str(), c.id, c.actual);
            }
            eprintln!("{} checks: {}", report.checks.len(), summary.trim_end());
            Ok(Output {
                json: serde_json::to_value(&report)?,
                csv: Some(report.to_csv()),
                code: report.exit_code() as u8,
            })
        }
    }
}

fn embed_output(rep: &MatrixRep, residuals: Option<[f64; 3]>, with_matrices: bool) -> Output {
    let check = rep.check();
    let mut v = json!({
        "order": rep.order(),
        "dimension": rep.dimension,
        "field_tag": rep.field_tag,
        "projective": rep.projective,
        "check": check,
        "special_orthogonal": !rep.projective && rep.is_special_orthogonal(),
        "status": if check.faithful { Status::Pass } else { Status::Fail },
    });
    if let Some(r) = residuals {
        v["relation_residuals"] = json!(r);
    }
    if with_matrices {
        v["rep"] = rep.to_json();
    }
    Output {
        code: u8::from(!check.faithful),
        json: v,
        csv: None,
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    fn value(&self) -> C64 {
        match *self {
            Entry::Real(x) => C64::new(x, 0.0),
            Entry::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Deserialize)]
struct MatrixFile {
    space: String,
    matrix: Vec<Vec<Entry>>,
}

fn fixedpoint_file(path: &Path) -> Result<Output> {
    let file: MatrixFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let n = file.matrix.len();
    if n == 0 || file.matrix.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("matrix must be square and nonempty".into()));
    }
    let c = DMatrix::<C64>::from_fn(n, n, |i, j| file.matrix[i][j].value());
    let (fixed, rec) = match file.space.as_str() {
        "s4" => {
            if c.iter().any(|z| z.im != 0.0) {
                return Err(Error::InvalidInput("an S^4 matrix must be real".into()));
            }
            let g = c.map(|z| z.re);
            (fixed_set_s4(&g)?, lefschetz_check_s4(&g)?)
        }
        "cp2" => (fixed_set_cp2(&c)?, lefschetz_check_cp2(&c)?),
        other => return Err(Error::InvalidInput(format!("space must be s4 or cp2, got {other:?}"))),
    };
    Ok(Output {
        code: u8::from(!rec.pass),
        json: json!({ "space": file.space, "fixed_set": fixed, "record": rec }),
        csv: None,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out).map(|_| out.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
