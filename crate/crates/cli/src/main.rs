use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use cactus_core::cactus::{self, all_pass, CheckRecord, GroupData, WallCrossingTable};
use cactus_core::cells::CellKind;
use cactus_core::coxeter::{format_word, DynkinDiagram, ElementId, Subdiagram, WeylGroup};
use cactus_core::export::{self, KlRecord};
use cactus_core::tableaux;
use cactus_core::KlTable;

/// Kazhdan-Lusztig cells and cactus-group wall-crossing bijections for finite Weyl groups.
#[derive(Parser, Debug)]
#[command(name = "cactus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Named Dynkin type, e.g. A3, B2, G2, D4.
    #[arg(long, global = true)]
    group: Option<String>,

    /// JSON file holding a Cartan matrix (array of integer arrays).
    #[arg(long, global = true)]
    cartan: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Output file (a directory for `export`); stdout if omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Directory for cached KL tables.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summary of the Weyl group.
    Group,
    /// Kazhdan-Lusztig polynomials h(y, w) and mu-coefficients.
    Kl {
        /// Only this element (comma-separated generator ids).
        #[arg(long)]
        w: Option<String>,
    },
    /// Left, right or two-sided cells.
    Cells {
        #[arg(long, value_enum, default_value_t = Kind::Right)]
        kind: Kind,
    },
    /// The wall-crossing bijection of a subdiagram.
    Wc {
        #[arg(long)]
        subdiagram: String,
        #[arg(long)]
        w: Option<String>,
    },
    /// Check the cactus relations and the cell properties of the action.
    Verify,
    /// Orbits of the group generated by all wall-crossing bijections.
    Orbits,
    /// RSK tableaux of type-A elements.
    Rsk {
        #[arg(long)]
        w: Option<String>,
    },
    /// Compare sigma with evacuation of recording tableaux in S_n.
    Crosscheck {
        #[arg(long)]
        n: usize,
    },
    /// Write every artifact of a group as JSON files into --out.
    Export,
    /// Experimental: test C_w T_{w_D} against wc_D inside the full Hecke algebra.
    Probe {
        #[arg(long)]
        subdiagram: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Left,
    Right,
    TwoSided,
}

impl From<Kind> for CellKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Left => CellKind::Left,
            Kind::Right => CellKind::Right,
            Kind::TwoSided => CellKind::TwoSided,
        }
    }
}

/// Bad input from the user; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

/// Parsed invocation with the group spec already resolved.
struct RunConfig {
    diagram: Option<DynkinDiagram>,
    format: Format,
    out: Option<PathBuf>,
    cache: Option<PathBuf>,
    verbosity: u8,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self> {
        let diagram = match (&cli.group, &cli.cartan) {
            (Some(_), Some(_)) => return usage("give either --group or --cartan, not both"),
            (Some(name), None) => match DynkinDiagram::from_name(name) {
                Ok(d) => Some(d),
                Err(e) => return usage(e.to_string()),
            },
            (None, Some(path)) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let matrix: Vec<Vec<i64>> = match serde_json::from_str(&text) {
                    Ok(m) => m,
                    Err(e) => return usage(format!("{}: not a JSON integer matrix: {e}", path.display())),
                };
                match DynkinDiagram::from_cartan(matrix) {
                    Ok(d) => Some(d),
                    Err(e) => return usage(e.to_string()),
                }
            }
            (None, None) => None,
        };
        Ok(Self { diagram, format: cli.format, out: cli.out.clone(), cache: cli.cache.clone(), verbosity: cli.verbose })
    }

    fn log(&self, msg: impl AsRef<str>) {
        if self.verbosity > 0 {
            eprintln!("[cactus] {}", msg.as_ref());
        }
    }

    fn group(&self) -> Result<Arc<WeylGroup>> {
        let Some(d) = &self.diagram else {
            return usage("this command needs --group or --cartan");
        };
        let t = Instant::now();
        let g = match WeylGroup::build(d.clone()) {
            Ok(g) => g,
            Err(e) => return usage(e.to_string()),
        };
        self.log(format!("built {} ({} elements) in {:?}", d.label(), g.order(), t.elapsed()));
        Ok(Arc::new(g))
    }

    fn kl_table(&self, g: &Arc<WeylGroup>) -> Result<KlTable> {
        let t = Instant::now();
        let Some(dir) = &self.cache else {
            let table = KlTable::full(g.clone())?;
            self.log(format!("KL table in {:?}", t.elapsed()));
            return Ok(table);
        };
        let path = dir.join(format!("{}.kl.json", cache_key(g.diagram())));
        if path.exists() {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let records: Vec<KlRecord> = serde_json::from_str(&text)?;
            let table = export::kl_table_from_records(g.clone(), &records)
                .with_context(|| format!("cached table {} is invalid", path.display()))?;
            self.log(format!("loaded {} in {:?}", path.display(), t.elapsed()));
            return Ok(table);
        }
        let table = KlTable::full(g.clone())?;
        fs::create_dir_all(dir)?;
        fs::write(&path, serde_json::to_string(&export::kl_records(&table)?)?)?;
        self.log(format!("KL table in {:?}, cached to {}", t.elapsed(), path.display()));
        Ok(table)
    }

    fn data(&self) -> Result<GroupData> {
        let g = self.group()?;
        let table = self.kl_table(&g)?;
        let t = Instant::now();
        let data = GroupData::from_table(table)?;
        self.log(format!("cells in {:?}", t.elapsed()));
        Ok(data)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
            }
        }
        Ok(())
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.emit(&s)
    }

    fn no_dot(&self) -> Result<()> {
        if self.format == Format::Dot {
            return usage("--format dot is only supported by `cells`");
        }
        Ok(())
    }
}

/// `<name>-<first 16 hex digits of sha256(cartan json)>`.
fn cache_key(d: &DynkinDiagram) -> String {
    let digest = Sha256::digest(serde_json::to_vec(d.cartan()).expect("integer matrix"));
    format!("{}-{}", d.name().unwrap_or("cartan"), &hex::encode(digest)[..16])
}

fn parse_word(g: &WeylGroup, text: &str) -> Result<ElementId> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(g.identity());
    }
    let mut word = Vec::new();
    for part in text.split(',') {
        match part.trim().parse::<usize>() {
            Ok(s) => word.push(s),
            Err(_) => return usage(format!("`{part}` is not a generator id")),
        }
    }
    match g.element_from_word(&word) {
        Ok(w) => Ok(w),
        Err(e) => usage(e.to_string()),
    }
}

fn parse_subdiagram(g: &WeylGroup, text: &str) -> Result<Subdiagram> {
    let mut nodes = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        match part.trim().parse::<usize>() {
            Ok(s) => nodes.push(s),
            Err(_) => return usage(format!("`{part}` is not a node id")),
        }
    }
    if nodes.is_empty() {
        return usage("subdiagram must be nonempty");
    }
    match g.diagram().subdiagram(&nodes) {
        Ok(s) => Ok(s),
        Err(e) => usage(e.to_string()),
    }
}

fn words(g: &WeylGroup, ids: &[ElementId]) -> Vec<Vec<usize>> {
    ids.iter().map(|&w| g.word(w).to_vec()).collect()
}

fn render_cells(g: &WeylGroup, cells: &[Vec<ElementId>]) -> String {
    cells
        .iter()
        .map(|c| c.iter().map(|&w| format!("[{}]", g.format(w))).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_records(records: &[CheckRecord]) -> String {
    let mut s = String::new();
    for r in records {
        let status = if r.pass { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status} {} {}", r.relation, r.instance));
        if let Some(c) = &r.counterexample {
            s.push_str(&format!("  ({c})"));
        }
        s.push('\n');
    }
    let passed = records.iter().filter(|r| r.pass).count();
    s.push_str(&format!("{passed}/{} checks passed\n", records.len()));
    s
}

fn failure_report(first: &CheckRecord) -> String {
    json!({ "status": "fail", "first_counterexample": first }).to_string()
}

fn cmd_group(cfg: &RunConfig) -> Result<ExitCode> {
    cfg.no_dot()?;
    let g = cfg.group()?;
    let d = g.diagram();
    match cfg.format {
        Format::Json => cfg.emit_json(&json!({
            "name": d.name(),
            "rank": d.rank(),
            "cartan": d.cartan(),
            "order": g.order(),
            "positive_roots": g.num_positive_roots(),
            "longest": g.word(g.longest()),
            "connected_subdiagrams": d.connected_subdiagrams().iter().map(|s| s.nodes().to_vec()).collect::<Vec<_>>(),
        }))?,
        _ => cfg.emit(&format!(
            "{}: rank {}, order {}, {} positive roots, w0 = {} (length {})\n",
            d.label(),
            d.rank(),
            g.order(),
            g.num_positive_roots(),
            g.format(g.longest()),
            g.length(g.longest())
        ))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kl(cfg: &RunConfig, w: Option<&str>) -> Result<ExitCode> {
    cfg.no_dot()?;
    let g = cfg.group()?;
    let only = w.map(|w| parse_word(&g, w)).transpose()?;
    let table = match only {
        Some(w) if cfg.cache.is_none() => {
            let t = KlTable::new(g.clone());
            t.kl_element(w)?;
            t
        }
        _ => cfg.kl_table(&g)?,
    };
    let records: Vec<KlRecord> = match only {
        Some(w) => table
            .kl_element(w)?
            .terms()
            .iter()
            .map(|(&y, h)| KlRecord {
                y: g.word(y).to_vec(),
                w: g.word(w).to_vec(),
                h: h.to_string(),
                mu: if y == w { 0 } else { h.coefficient(-1) },
            })
            .collect(),
        None => export::kl_records(&table)?,
    };
    match cfg.format {
        Format::Json => cfg.emit_json(&records)?,
        _ => {
            let mut s = String::new();
            if let Some(w) = only {
                s.push_str(&format!("C[{}] = {}\n", g.format(w), table.kl_element(w)?.render(&g)));
            }
            for r in &records {
                s.push_str(&format!("h({}; {}) = {}  mu = {}\n", format_word(&r.y), format_word(&r.w), r.h, r.mu));
            }
            cfg.emit(&s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_cells(cfg: &RunConfig, kind: Kind) -> Result<ExitCode> {
    let data = cfg.data()?;
    let kind = CellKind::from(kind);
    match cfg.format {
        Format::Json => cfg.emit_json(&export::cells_export(&data.cells, kind))?,
        Format::Dot => cfg.emit(&export::cells_dot(&data.cells, kind))?,
        Format::Text => {
            let p = data.cells.partition(kind);
            cfg.emit(&format!("{kind} cells: {}\n{}\n", p.len(), render_cells(&data.group, p.cells())))?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_wc(cfg: &RunConfig, sub: &str, w: Option<&str>) -> Result<ExitCode> {
    cfg.no_dot()?;
    let data = cfg.data()?;
    let g = data.group.clone();
    let sub = parse_subdiagram(&g, sub)?;
    let only = w.map(|w| parse_word(&g, w)).transpose()?;
    let wct = WallCrossingTable::build(&data)?;
    let ex = if sub.is_connected() {
        export::wc_export(&wct, &sub, only)?
    } else {
        // product of the generators of the connected components
        let ids: Vec<ElementId> = match only {
            Some(w) => vec![w],
            None => g.ids().collect(),
        };
        let mut permutation = Vec::with_capacity(ids.len());
        for w in ids {
            permutation.push([g.word(w).to_vec(), g.word(wct.act_union(&sub, w)?).to_vec()]);
        }
        export::WcExport { subdiagram: sub.nodes().to_vec(), permutation, alpha: None }
    };
    match cfg.format {
        Format::Json => cfg.emit_json(&ex)?,
        _ => {
            let mut s = format!("wc{}\n", sub);
            for (k, [a, b]) in ex.permutation.iter().enumerate() {
                s.push_str(&format!("{} -> {}", format_word(a), format_word(b)));
                if let Some(alpha) = ex.alpha.as_ref().map(|al| al[k]) {
                    let sign = if alpha.sign < 0 { "-" } else { "+" };
                    s.push_str(&format!("  alpha = {sign}v^{}", alpha.k));
                }
                s.push('\n');
            }
            cfg.emit(&s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cfg: &RunConfig) -> Result<ExitCode> {
    cfg.no_dot()?;
    let data = cfg.data()?;
    let t = Instant::now();
    let wct = WallCrossingTable::build(&data)?;
    let mut records = cactus::verify_cactus_relations(&wct)?;
    records.extend(cactus::verify_theorem(&wct, &data.cells)?);
    records.extend(cactus::verify_factorization(&data, &wct)?);
    cfg.log(format!("verification in {:?}", t.elapsed()));
    match cfg.format {
        Format::Json => cfg.emit_json(&records)?,
        _ => cfg.emit(&render_records(&records))?,
    }
    if let Some(first) = records.iter().find(|r| !r.pass) {
        eprintln!("{}", failure_report(first));
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_orbits(cfg: &RunConfig) -> Result<ExitCode> {
    cfg.no_dot()?;
    let data = cfg.data()?;
    let wct = WallCrossingTable::build(&data)?;
    let orbits = wct.orbits();
    let g = &data.group;
    match cfg.format {
        Format::Json => cfg.emit_json(&orbits.iter().map(|o| words(g, o)).collect::<Vec<_>>())?,
        _ => cfg.emit(&format!("orbits: {}\n{}\n", orbits.len(), render_cells(g, &orbits)))?,
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct RskRow {
    w: Vec<usize>,
    oneline: Vec<u32>,
    p: tableaux::Tableau,
    q: tableaux::Tableau,
}

fn cmd_rsk(cfg: &RunConfig, w: Option<&str>) -> Result<ExitCode> {
    cfg.no_dot()?;
    let g = cfg.group()?;
    if let Err(e) = tableaux::type_a_degree(&g) {
        return usage(e.to_string());
    }
    let ids: Vec<ElementId> = match w {
        Some(w) => vec![parse_word(&g, w)?],
        None => g.ids().collect(),
    };
    let mut rows = Vec::with_capacity(ids.len());
    for w in ids {
        let oneline = tableaux::weyl_to_oneline(&g, w)?;
        let pair = tableaux::rsk(&oneline)?;
        rows.push(RskRow { w: g.word(w).to_vec(), oneline, p: pair.p, q: pair.q });
    }
    match cfg.format {
        Format::Json => cfg.emit_json(&rows)?,
        _ => {
            let mut s = String::new();
            for r in &rows {
                let line: Vec<String> = r.oneline.iter().map(u32::to_string).collect();
                s.push_str(&format!("w = {}  one-line {}\nP:\n{}\nQ:\n{}\n\n", format_word(&r.w), line.join(" "), r.p, r.q));
            }
            cfg.emit(&s)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_crosscheck(cfg: &RunConfig, n: usize) -> Result<ExitCode> {
    cfg.no_dot()?;
    if n < 2 {
        return usage("crosscheck needs n >= 2");
    }
    let name = format!("A{}", n - 1);
    let g = match WeylGroup::from_name(&name) {
        Ok(g) => Arc::new(g),
        Err(e) => return usage(e.to_string()),
    };
    let data = GroupData::from_table(cfg.kl_table(&g)?)?;
    let mut counterexample = None;
    for w in g.ids() {
        let (image, _) = cactus::sigma(&data, w)?;
        let lhs = tableaux::rsk(&tableaux::weyl_to_oneline(&g, image)?)?;
        let rhs = tableaux::rsk(&tableaux::weyl_to_oneline(&g, w)?)?;
        if lhs.q != tableaux::evacuation(&rhs.q) || lhs.p != rhs.p {
            counterexample = Some(json!({
                "w": g.word(w),
                "sigma_w": g.word(image),
                "q_sigma_w": lhs.q,
                "evacuated_q_w": tableaux::evacuation(&rhs.q),
                "p_sigma_w": lhs.p,
                "p_w": rhs.p,
            }));
            break;
        }
    }
    let pass = counterexample.is_none();
    let report = json!({ "n": n, "checked": g.order(), "pass": pass, "counterexample": counterexample });
    match cfg.format {
        Format::Json => cfg.emit_json(&report)?,
        _ => cfg.emit(&format!(
            "crosscheck S_{n}: {} ({} elements)\n",
            if pass { "pass" } else { "FAIL" },
            g.order()
        ))?,
    }
    if !pass {
        eprintln!("{}", json!({ "status": "fail", "first_counterexample": report["counterexample"] }));
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let path = dir.join(name);
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(&path, s).with_context(|| format!("writing {}", path.display()))
}

fn cmd_export(cfg: &RunConfig) -> Result<ExitCode> {
    let Some(dir) = cfg.out.clone() else {
        return usage("export needs --out <directory>");
    };
    let data = cfg.data()?;
    let g = &data.group;
    fs::create_dir_all(&dir)?;
    write_json(&dir, "kl.json", &export::kl_records(&data.table)?)?;
    for kind in [CellKind::Left, CellKind::Right, CellKind::TwoSided] {
        write_json(&dir, &format!("cells_{kind}.json"), &export::cells_export(&data.cells, kind))?;
    }
    let wct = WallCrossingTable::build(&data)?;
    let wc: Vec<export::WcExport> =
        wct.subdiagrams().iter().map(|s| export::wc_export(&wct, s, None)).collect::<Result<_, _>>()?;
    write_json(&dir, "wc.json", &wc)?;
    let mut records = cactus::verify_cactus_relations(&wct)?;
    records.extend(cactus::verify_theorem(&wct, &data.cells)?);
    records.extend(cactus::verify_factorization(&data, &wct)?);
    write_json(&dir, "report.json", &records)?;
    write_json(&dir, "orbits.json", &wct.orbits().iter().map(|o| words(g, o)).collect::<Vec<_>>())?;
    cfg.log(format!("wrote artifacts to {}", dir.display()));
    Ok(if all_pass(&records) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_probe(cfg: &RunConfig, sub: &str) -> Result<ExitCode> {
    cfg.no_dot()?;
    let data = cfg.data()?;
    let sub = parse_subdiagram(&data.group, sub)?;
    if !sub.is_connected() {
        return usage(format!("subdiagram {sub} is not connected"));
    }
    let wct = WallCrossingTable::build(&data)?;
    let records = cactus::probe_big_algebra(&data, &wct, &sub)?;
    let monomial = records.iter().filter(|r| r.monomial).count();
    let lower = records.iter().filter(|r| r.residual_lower).count();
    let both = records.iter().filter(|r| r.monomial && r.residual_lower).count();
    match cfg.format {
        Format::Json => cfg.emit_json(&json!({
            "subdiagram": sub.nodes(),
            "total": records.len(),
            "monomial": monomial,
            "residual_lower": lower,
            "consistent": both,
            "records": records,
        }))?,
        _ => cfg.emit(&format!(
            "probe wc{sub}: {both}/{} elements consistent (monomial coefficient {monomial}, lower residual {lower})\n",
            records.len()
        ))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::Group => cmd_group(&cfg),
        Command::Kl { w } => cmd_kl(&cfg, w.as_deref()),
        Command::Cells { kind } => cmd_cells(&cfg, *kind),
        Command::Wc { subdiagram, w } => cmd_wc(&cfg, subdiagram, w.as_deref()),
        Command::Verify => cmd_verify(&cfg),
        Command::Orbits => cmd_orbits(&cfg),
        Command::Rsk { w } => cmd_rsk(&cfg, w.as_deref()),
        Command::Crosscheck { n } => cmd_crosscheck(&cfg, *n),
        Command::Export => cmd_export(&cfg),
        Command::Probe { subdiagram } => cmd_probe(&cfg, subdiagram),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            if err.downcast_ref::<UsageError>().is_some() {
                eprintln!("error: {err}");
                ExitCode::from(2)
            } else {
                eprintln!("{}", json!({ "status": "error", "message": format!("{err:#}") }));
                ExitCode::from(1)
            }
        }
    }
}
