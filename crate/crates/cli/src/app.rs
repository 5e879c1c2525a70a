use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use crosscut_core::complex::{crosscut_complex, face_poset, order_complex, SimplicialComplex};
use crosscut_core::crosscut::{
    check_mxl_characterization, crosscut_poset, l_k, p0_retraction, verify_retract,
};
use crosscut_core::finite_space::{core, is_contractible, is_weakly_contractible};
use crosscut_core::fixed_points::{
    has_fpp, verify_fpp_transfer, verify_fsp_equivalence, verify_main_theorem,
    verify_pm_contractibility, FppOptions, FppResult, EQUIVALENCE_NOTE,
};
use crosscut_core::homology::{homology, HomologySummary};
use crosscut_core::stars::{is_coherent_cutset, is_cutset};
use crosscut_core::{is_isomorphic, ElementSet, FinitePoset, Limits};
use serde_json::{json, Map, Value};

use crate::dot::poset_to_dot;
use crate::fixtures::write_fixtures;
use crate::format::{parse_complex, parse_poset, write_complex, write_poset, FormatError};
use crate::report::*;

/// Overrides the default guards when `--guard` is absent.
pub const GUARD_ENV: &str = "CROSSCUT_GUARD";

#[derive(Debug, Parser)]
#[command(
    name = "crosscut",
    version,
    about = "Crosscut posets, order complexes, homology and fixed points of finite posets"
)]
pub struct Cli {
    /// Print a JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Leave the timestamp out of JSON reports.
    #[arg(long, global = true)]
    pub stable: bool,
    /// Size guard for coherence, fixed-point search and join enumeration.
    #[arg(long, global = true, value_name = "N")]
    pub guard: Option<usize>,
    /// Search the whole poset instead of its core.
    #[arg(long, global = true)]
    pub no_core_preprocess: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summary of a poset and of a cutset in it.
    Analyze {
        file: PathBuf,
        /// `mxl`, `mnl` or a comma-separated list of labels.
        #[arg(long, default_value = "mxl")]
        cutset: String,
    },
    /// The crosscut poset of the components of star intersections.
    CrosscutPoset {
        file: PathBuf,
        #[arg(long, default_value = "mxl")]
        cutset: String,
        /// Emit DOT instead of the poset format.
        #[arg(long)]
        dot: bool,
    },
    /// The complex of subsets of the cutset with a common comparable element.
    CrosscutComplex {
        file: PathBuf,
        #[arg(long, default_value = "mxl")]
        cutset: String,
    },
    /// The complex of chains of a poset.
    OrderComplex { file: PathBuf },
    /// Integral homology of a complex.
    Homology {
        file: PathBuf,
        #[arg(long)]
        reduced: bool,
    },
    /// Removes beat points until none is left.
    Core { file: PathBuf },
    /// Decides the fixed point property of a poset.
    Fpp { file: PathBuf },
    /// Decides the fixed simplex property of a complex.
    Fsp { file: PathBuf },
    /// Checks one of the transfer statements on an input.
    Verify {
        theorem: Theorem,
        file: PathBuf,
        #[arg(long, default_value = "mxl")]
        cutset: String,
    },
    /// Hasse diagram in Graphviz DOT.
    Dot { file: PathBuf },
    /// Writes the example posets and complexes into a directory.
    Fixtures { dir: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// P and its crosscut poset have the same reduced homology.
    MainTheorem,
    /// The crosscut poset is a retract of the crosscut complex's face poset.
    Retract,
    /// Maxima of the carriers form a retract isomorphic to the crosscut poset.
    P0,
    /// Joins of minimal elements and weak contractibility.
    Joins,
    /// Fixed point property of P and of its crosscut poset over the maxima.
    FppTransfer,
    /// Fixed simplex property of K and fixed point property of its
    /// facet-intersection poset.
    FspEquivalence,
    /// Maximal carriers are the stars of the cutset.
    MxlCharacterization,
}

impl Theorem {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

/// Exit code and the text for both streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Read(PathBuf, io::Error),
    Format(PathBuf, FormatError),
    Lib(crosscut_core::Error),
}

impl From<crosscut_core::Error> for Failure {
    fn from(e: crosscut_core::Error) -> Self {
        Failure::Lib(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Read(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            Failure::Format(p, e) if e.line == 0 => write!(f, "{}: {}", p.display(), e.message),
            Failure::Format(p, e) => write!(f, "{}:{}: {}", p.display(), e.line, e.message),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Read(..) => "io",
            Failure::Format(..) => "format",
            Failure::Lib(_) => "hypothesis",
        }
    }
}

struct Report {
    code: i32,
    text: String,
    data: Value,
}

impl Report {
    fn ok(text: String, data: Value) -> Self {
        Report {
            code: 0,
            text,
            data,
        }
    }
}

struct Ctx {
    limits: Limits,
    fpp: FppOptions,
}

/// Parses `args` (program name first) and runs the command. `env_guard` is
/// the value of [`GUARD_ENV`], if set.
pub fn run<I, T>(args: I, env_guard: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    run_cli(&cli, env_guard)
}

pub fn run_cli(cli: &Cli, env_guard: Option<&str>) -> Outcome {
    let name = command_name(&cli.command);
    let result = context(cli, env_guard).and_then(|ctx| dispatch(&cli.command, &ctx));
    match result {
        Ok(report) => {
            let stdout = if cli.json || report.text.is_empty() {
                envelope(&name, cli.stable, report.data)
            } else {
                report.text
            };
            Outcome {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(failure) => {
            let stdout = if cli.json {
                let err =
                    json!({ "error": { "kind": failure.kind(), "message": failure.to_string() } });
                envelope(&name, cli.stable, err)
            } else {
                String::new()
            };
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error: {failure}\n"),
            }
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Analyze { .. } => "analyze".into(),
        Command::CrosscutPoset { .. } => "crosscut-poset".into(),
        Command::CrosscutComplex { .. } => "crosscut-complex".into(),
        Command::OrderComplex { .. } => "order-complex".into(),
        Command::Homology { .. } => "homology".into(),
        Command::Core { .. } => "core".into(),
        Command::Fpp { .. } => "fpp".into(),
        Command::Fsp { .. } => "fsp".into(),
        Command::Verify { theorem, .. } => format!("verify {}", theorem.name()),
        Command::Dot { .. } => "dot".into(),
        Command::Fixtures { .. } => "fixtures".into(),
    }
}

fn envelope(command: &str, stable: bool, data: Value) -> String {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    if !stable {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        m.insert("generated_at".into(), json!(secs));
    }
    if let Value::Object(fields) = data {
        m.extend(fields);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn context(cli: &Cli, env_guard: Option<&str>) -> Result<Ctx, Failure> {
    let guard =
        match (cli.guard, env_guard) {
            (Some(n), _) => Some(n),
            (None, Some(v)) => Some(v.trim().parse::<usize>().map_err(|_| {
                Failure::Usage(format!("{GUARD_ENV} must be a number, found `{v}`"))
            })?),
            (None, None) => None,
        };
    let limits = guard.map_or(Limits::DEFAULT, Limits::with_guard);
    Ok(Ctx {
        fpp: FppOptions {
            core_preprocess: !cli.no_core_preprocess,
            guard: limits.fpp,
        },
        limits,
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Read(path.to_path_buf(), e))
}

fn load_poset(path: &Path) -> Result<FinitePoset, Failure> {
    parse_poset(&read(path)?).map_err(|e| Failure::Format(path.to_path_buf(), e))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    parse_complex(&read(path)?).map_err(|e| Failure::Format(path.to_path_buf(), e))
}

/// `mxl`, `mnl` or comma-separated labels.
fn parse_cutset(p: &FinitePoset, text: &str) -> Result<ElementSet, Failure> {
    match text.trim() {
        "mxl" => Ok(p.mxl()),
        "mnl" => Ok(p.mnl()),
        list => {
            let labels: Vec<&str> = list
                .split(',')
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            if labels.is_empty() {
                return Err(Failure::Usage("empty --cutset".into()));
            }
            Ok(p.ids_of(&labels)?)
        }
    }
}

fn homology_text(h: &HomologySummary) -> String {
    let betti: Vec<String> = h.betti.iter().map(ToString::to_string).collect();
    let torsion: Vec<String> = h
        .torsion
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.is_empty())
        .map(|(d, t)| {
            let t: Vec<String> = t.iter().map(|c| format!("Z/{c}")).collect();
            format!("{d}: {}", t.join(" + "))
        })
        .collect();
    let mut s = format!("betti ({})", betti.join(", "));
    if h.betti_minus_one > 0 {
        s.push_str(&format!(", degree -1: {}", h.betti_minus_one));
    }
    if !torsion.is_empty() {
        s.push_str(&format!(", torsion {}", torsion.join("; ")));
    }
    s
}

fn fpp_text(p: &FinitePoset, r: &FppResult, what: &str) -> String {
    match &r.witness {
        None => format!("{what}: yes (searched {} elements)\n", r.searched),
        Some(w) => {
            let mut s = format!("{what}: no\nfixed-point-free order-preserving map:\n");
            for x in 0..p.len() {
                s.push_str(&format!("  {} -> {}\n", p.label(x), p.label(w.apply(x))));
            }
            s
        }
    }
}

fn dispatch(command: &Command, ctx: &Ctx) -> Result<Report, Failure> {
    let limits = &ctx.limits;
    match command {
        Command::Analyze { file, cutset } => analyze(file, cutset, limits),
        Command::CrosscutPoset { file, cutset, dot } => {
            let p = load_poset(file)?;
            let x = parse_cutset(&p, cutset)?;
            let g = crosscut_poset(&p, &x, limits)?;
            let carriers: Vec<Value> = g
                .carriers
                .iter()
                .zip(&g.generators)
                .map(|(c, a)| json!({ "carrier": set_json(&p, c), "generator": set_json(&p, a) }))
                .collect();
            let mut data = json!({
                "cutset": set_json(&p, &x),
                "carriers": carriers,
                "poset": poset_json(&g.poset),
            });
            let text = if *dot {
                let d = poset_to_dot(&g.poset, "crosscut poset");
                data["dot"] = json!(d);
                d
            } else {
                let mut t = format!("# crosscut poset over {}\n", p.render_set(&x));
                for (c, a) in g.carriers.iter().zip(&g.generators) {
                    t.push_str(&format!(
                        "# {}: component of st({})\n",
                        p.render_set(c),
                        p.set_labels(a).join(",")
                    ));
                }
                t + &write_poset(&g.poset)
            };
            Ok(Report::ok(text, data))
        }
        Command::CrosscutComplex { file, cutset } => {
            let p = load_poset(file)?;
            let x = parse_cutset(&p, cutset)?;
            complex_report(&crosscut_complex(&p, &x)?, limits)
        }
        Command::OrderComplex { file } => {
            complex_report(&order_complex(&load_poset(file)?), limits)
        }
        Command::Homology { file, reduced } => {
            let k = load_complex(file)?;
            let h = homology(&k, *reduced, limits)?;
            let mut data = homology_json(&h);
            data["euler_characteristic"] = json!(k.euler_characteristic(limits)?);
            // Always JSON.
            Ok(Report::ok(String::new(), data))
        }
        Command::Core { file } => {
            let p = load_poset(file)?;
            let c = core(&p);
            let removed: Vec<&str> = c.removed.iter().map(|&x| p.label(x)).collect();
            let text = format!(
                "# removed beat points: {}\n{}",
                removed.join(" "),
                write_poset(&c.poset)
            );
            Ok(Report::ok(
                text,
                json!({
                    "kept": set_json(&p, &c.kept),
                    "removed": removed,
                    "retraction": map_json(&p, &c.retraction),
                    "contractible": c.poset.len() == 1,
                    "core": poset_json(&c.poset),
                }),
            ))
        }
        Command::Fpp { file } => {
            let p = load_poset(file)?;
            let r = has_fpp(&p, &ctx.fpp)?;
            Ok(Report {
                code: if r.has_fpp { 0 } else { 1 },
                text: fpp_text(&p, &r, "fixed point property"),
                data: fpp_json(&p, &r),
            })
        }
        Command::Fsp { file } => {
            let k = load_complex(file)?;
            let fp = face_poset(&k, limits)?;
            let r = has_fpp(&fp.poset, &ctx.fpp)?;
            Ok(Report {
                code: if r.has_fpp { 0 } else { 1 },
                text: fpp_text(&fp.poset, &r, "fixed simplex property"),
                data: fpp_json(&fp.poset, &r),
            })
        }
        Command::Verify {
            theorem,
            file,
            cutset,
        } => verify(*theorem, file, cutset, ctx),
        Command::Dot { file } => {
            let p = load_poset(file)?;
            let name = file
                .file_stem()
                .map_or("poset".into(), |s| s.to_string_lossy().into_owned());
            let d = poset_to_dot(&p, &name);
            Ok(Report::ok(d.clone(), json!({ "dot": d })))
        }
        Command::Fixtures { dir } => {
            let paths = write_fixtures(dir).map_err(|e| Failure::Read(dir.clone(), e))?;
            let names: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
            let text = names.iter().map(|n| format!("{n}\n")).collect();
            Ok(Report::ok(text, json!({ "files": names })))
        }
    }
}

fn complex_report(k: &SimplicialComplex, limits: &Limits) -> Result<Report, Failure> {
    let mut data = complex_json(k);
    data["f_vector"] = json!(k.f_vector(limits)?);
    Ok(Report::ok(write_complex(k), data))
}

fn analyze(file: &Path, cutset: &str, limits: &Limits) -> Result<Report, Failure> {
    let p = load_poset(file)?;
    let x = parse_cutset(&p, cutset)?;
    let cut = is_cutset(&p, &x);
    let coherence = is_coherent_cutset(&p, &x, limits)?;
    let gamma = crosscut_poset(&p, &x, limits)?;
    let c = core(&p);
    let cert = is_weakly_contractible(&p, limits)?;
    let h = homology(&order_complex(&p), true, limits)?;

    let mut text = format!(
        "elements: {}\ncovers: {}\nmaximal: {}\nminimal: {}\n",
        p.len(),
        p.covers().len(),
        p.render_set(&p.mxl()),
        p.render_set(&p.mnl())
    );
    text.push_str(&format!("cutset {}: ", p.render_set(&x)));
    match &cut.witness {
        None => text.push_str("covers every maximal chain"),
        Some(w) => text.push_str(&format!("misses the chain {}", p.render_set(w))),
    }
    match &coherence.violating {
        Some(v) if cut.holds => text.push_str(&format!(
            ", not coherent ({} has no meet or join)\n",
            p.render_set(v)
        )),
        _ if coherence.holds => text.push_str(", coherent\n"),
        _ => text.push('\n'),
    }
    text.push_str(&format!("crosscut poset: {} elements\n", gamma.len()));
    text.push_str(&format!(
        "core: {} elements{}\n",
        c.poset.len(),
        if is_contractible(&p) {
            " (contractible)"
        } else {
            ""
        }
    ));
    text.push_str(&format!(
        "weakly contractible: {}\n",
        verdict_name(cert.verdict)
    ));
    text.push_str(&format!("reduced homology: {}\n", homology_text(&h)));

    let data = json!({
        "poset": poset_json(&p),
        "maximal": set_json(&p, &p.mxl()),
        "minimal": set_json(&p, &p.mnl()),
        "cutset": {
            "elements": set_json(&p, &x),
            "is_cutset": cut.holds,
            "missed_chain": cut.witness.as_ref().map(|w| set_json(&p, w)),
            "coherent": coherence.holds,
            "violating": coherence.violating.as_ref().map(|v| set_json(&p, v)),
        },
        "crosscut_poset": poset_json(&gamma.poset),
        "core": { "kept": set_json(&p, &c.kept), "contractible": c.poset.len() == 1 },
        "weak_contractibility": certificate_json(&p, &cert),
        "reduced_homology": homology_json(&h),
    });
    Ok(Report::ok(text, data))
}

fn verify(theorem: Theorem, file: &Path, cutset: &str, ctx: &Ctx) -> Result<Report, Failure> {
    let limits = &ctx.limits;
    let (holds, mut text, mut data) = match theorem {
        Theorem::MainTheorem => {
            let p = load_poset(file)?;
            let x = parse_cutset(&p, cutset)?;
            let r = verify_main_theorem(&p, &x, limits)?;
            let carriers: Vec<Value> = r
                .carriers
                .iter()
                .map(|(c, cert)| {
                    json!({ "carrier": set_json(&p, c), "certificate": certificate_json(&p.induced(c).0, cert) })
                })
                .collect();
            let text = format!(
                "carriers: {} (all weakly contractible)\nposet: {}\ncrosscut poset: {}\n",
                r.carriers.len(),
                homology_text(&r.poset_homology),
                homology_text(&r.gamma_homology)
            );
            let data = json!({
                "cutset": set_json(&p, &x),
                "carriers": carriers,
                "poset_homology": homology_json(&r.poset_homology),
                "gamma_homology": homology_json(&r.gamma_homology),
            });
            (r.holds(), text, data)
        }
        Theorem::Retract => {
            let p = load_poset(file)?;
            let x = parse_cutset(&p, cutset)?;
            let r = verify_retract(&p, &x, limits)?;
            let text = format!(
                "carriers: {}\nsimplices: {}\nnu o iota = id: {}\niota o nu >= id: {}\n",
                r.carriers, r.simplices, r.nu_iota_identity, r.iota_nu_above
            );
            let data = json!({
                "cutset": set_json(&p, &x),
                "carriers": r.carriers,
                "simplices": r.simplices,
                "nu_monotone": r.nu_monotone,
                "iota_monotone": r.iota_monotone,
                "nu_iota_identity": r.nu_iota_identity,
                "iota_nu_above": r.iota_nu_above,
                "violations": r.violations,
            });
            (r.holds(), text, data)
        }
        Theorem::P0 => {
            let p = load_poset(file)?;
            let r = p0_retraction(&p, limits)?;
            let fixes = r.elements.iter().all(|x| r.retraction.apply(x) == x);
            let above = (0..p.len()).all(|x| p.leq(x, r.retraction.apply(x)));
            let iso = is_isomorphic(&r.p0, &r.gamma.poset)?.is_some();
            let text = format!(
                "P0: {}\nr o i = id: {fixes}\ni o r >= id: {above}\nisomorphic to the crosscut poset: {iso}\n",
                p.render_set(&r.elements)
            );
            let data = json!({
                "elements": set_json(&p, &r.elements),
                "retraction": map_json(&p, &r.retraction),
                "carrier_maxima": mapping_json(&r.gamma.poset, &p, &r.iso),
                "retraction_fixes_p0": fixes,
                "retraction_above_identity": above,
                "isomorphic_to_crosscut_poset": iso,
            });
            (fixes && above && iso, text, data)
        }
        Theorem::Joins => {
            let p = load_poset(file)?;
            let r = verify_pm_contractibility(&p, limits)?;
            let pm = p.induced(&r.joins).0;
            let text = format!(
                "joins of minimal elements: {}\nweakly contractible (joins): {}\nweakly contractible (poset): {}\n",
                p.render_set(&r.joins),
                verdict_name(r.joins_certificate.verdict),
                verdict_name(r.poset_certificate.verdict)
            );
            let data = json!({
                "joins": set_json(&p, &r.joins),
                "joins_certificate": certificate_json(&pm, &r.joins_certificate),
                "poset_certificate": certificate_json(&p, &r.poset_certificate),
            });
            (r.holds(), text, data)
        }
        Theorem::FppTransfer => {
            let p = load_poset(file)?;
            let r = verify_fpp_transfer(&p, &ctx.fpp, limits)?;
            let g = crosscut_poset(&p, &p.mxl(), limits)?;
            let text = format!(
                "poset has the fixed point property: {}\ncrosscut poset has it: {}\n",
                r.left.has_fpp, r.right.has_fpp
            );
            let data = json!({ "poset": fpp_json(&p, &r.left), "crosscut_poset": fpp_json(&g.poset, &r.right) });
            (r.holds(), text, data)
        }
        Theorem::FspEquivalence => {
            let k = load_complex(file)?;
            let r = verify_fsp_equivalence(&k, &ctx.fpp, limits)?;
            let fp = face_poset(&k, limits)?;
            let lk = l_k(&k)?;
            let text = format!(
                "complex has the fixed simplex property: {}\nfacet-intersection poset has the fixed point property: {}\n",
                r.left.has_fpp, r.right.has_fpp
            );
            let data = json!({
                "face_poset": fpp_json(&fp.poset, &r.left),
                "intersection_poset": fpp_json(&lk.poset, &r.right),
            });
            (r.holds(), text, data)
        }
        Theorem::MxlCharacterization => {
            let p = load_poset(file)?;
            let x = parse_cutset(&p, cutset)?;
            let r = check_mxl_characterization(&p, &x, limits)?;
            let text = match &r.counterexample {
                None => "maximal carriers are exactly the stars of the cutset\n".to_string(),
                Some(c) => format!("counterexample: {}\n", p.render_set(c)),
            };
            let data = json!({
                "cutset": set_json(&p, &x),
                "counterexample": r.counterexample.as_ref().map(|c| set_json(&p, c)),
            });
            (r.holds, text, data)
        }
    };
    let head = format!(
        "{}: {}\n",
        theorem.name(),
        if holds { "verified" } else { "violated" }
    );
    text.insert_str(0, &head);
    text.push_str(&format!("note: {EQUIVALENCE_NOTE}\n"));
    data["theorem"] = json!(theorem.name());
    data["holds"] = json!(holds);
    data["note"] = json!(EQUIVALENCE_NOTE);
    Ok(Report {
        code: if holds { 0 } else { 1 },
        text,
        data,
    })
}
