//! Command-line front end. Every command reads a stacky-fan JSON file and
//! prints either a text report or, with `--json`, a JSON document carrying
//! rationals as `{"num", "den"}` strings.
//!
//! Exit codes: 0 ok, 2 validation failure, 3 verification mismatch,
//! 64 usage or parse error, 70 internal invariant violation.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::boxes::{enumerate_box, BoxElement};
use crate::error::Error;
use crate::fan::{validate, NElement, StackyFan, ValidatedFan};
use crate::io::{parse_fan, rational_json, vector_json};
use crate::linalg::{RatVector, Scalar};
use crate::orb::{Eta, Orbifold};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(
    name = "orbcone",
    version,
    about = "Orbifold cones of split toric DM stacks"
)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fan axioms, simpliciality, completeness and finite cokernel.
    Validate { file: PathBuf },
    /// Per-ray data b, w, c and torsion part.
    Rays { file: PathBuf },
    /// All box elements, the untwisted one included.
    Box { file: PathBuf },
    /// Twisted sectors with their a-coefficients.
    Sectors { file: PathBuf },
    /// Néron–Severi dimensions, curve-space basis and ray divisor classes.
    Ns { file: PathBuf },
    /// The Ξ and Ξ* systems and the dual-basis check.
    Xi { file: PathBuf },
    /// Extremal rays of the movable cone of orbifold curve classes.
    Mov { file: PathBuf },
    /// Generators and extremal rays of the orbifold pseudo-effective cone.
    Peff { file: PathBuf },
    /// Compare the dual of the movable cone with the explicit generators.
    Verify { file: PathBuf },
    /// Orbifold class of the one-parameter subgroup of b ∈ N.
    #[command(name = "class-of-1ps")]
    ClassOf1ps {
        file: PathBuf,
        /// `free;torsion`, comma-separated coordinates, e.g. "-3" or "1,2;1".
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

impl Command {
    pub fn file(&self) -> &PathBuf {
        match self {
            Command::Validate { file }
            | Command::Rays { file }
            | Command::Box { file }
            | Command::Sectors { file }
            | Command::Ns { file }
            | Command::Xi { file }
            | Command::Mov { file }
            | Command::Peff { file }
            | Command::Verify { file }
            | Command::ClassOf1ps { file, .. } => file,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stdout: String, stderr: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr,
        }
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = match e {
        Error::Parse(_) | Error::Malformed(_) => EXIT_USAGE,
        Error::Validation(_) | Error::NotComplete(_) | Error::ZeroVector => EXIT_INVALID,
        _ => EXIT_INTERNAL,
    };
    Outcome::fail(code, String::new(), format!("error: {e}\n"))
}

/// Parses arguments and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome::fail(code, String::new(), text)
            }
        }
    }
}

fn load(path: &PathBuf) -> Result<StackyFan, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_fan(&text)
}

pub fn execute(cli: &Cli) -> Outcome {
    let fan = match load(cli.command.file()) {
        Ok(f) => f,
        Err(e) => return error_outcome(&e),
    };
    run_on_fan(&cli.command, fan, cli.json)
}

/// Runs a command on an already parsed fan.
pub fn run_on_fan(command: &Command, fan: StackyFan, as_json: bool) -> Outcome {
    if let Command::Validate { .. } = command {
        return cmd_validate(&fan, as_json);
    }
    if let Command::Box { .. } | Command::Sectors { .. } | Command::Rays { .. } = command {
        let vf = match ValidatedFan::new(fan) {
            Ok(v) => v,
            Err(e) => return error_outcome(&e),
        };
        return match command {
            Command::Rays { .. } => Outcome::ok(render_rays(&vf, as_json)),
            Command::Box { .. } => Outcome::ok(render_box(&vf, &enumerate_box(&vf), true, as_json)),
            _ => {
                let s: Vec<BoxElement> = enumerate_box(&vf)
                    .into_iter()
                    .filter(|e| !e.is_untwisted())
                    .collect();
                Outcome::ok(render_box(&vf, &s, false, as_json))
            }
        };
    }
    let orb = match Orbifold::new(fan) {
        Ok(o) => o,
        Err(e) => return error_outcome(&e),
    };
    let result = match command {
        Command::Ns { .. } => render_ns(&orb, as_json),
        Command::Xi { .. } => render_xi(&orb, as_json),
        Command::Mov { .. } => render_mov(&orb, as_json),
        Command::Peff { .. } => render_peff(&orb, as_json),
        Command::Verify { .. } => return cmd_verify(&orb, as_json),
        Command::ClassOf1ps { b, .. } => {
            let b = match parse_b(&orb, b) {
                Ok(b) => b,
                Err(e) => return error_outcome(&e),
            };
            render_class_of_1ps(&orb, &b, as_json)
        }
        _ => unreachable!("handled above"),
    };
    match result {
        Ok(s) => Outcome::ok(s),
        Err(e) => error_outcome(&e),
    }
}

/// Parses `free;torsion` where each part is a comma-separated integer list.
pub fn parse_b(orb: &Orbifold, spec: &str) -> Result<NElement, Error> {
    let (free, torsion) = spec.split_once(';').unwrap_or((spec, ""));
    let ints = |s: &str| -> Result<Vec<i64>, Error> {
        s.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse()
                    .map_err(|_| Error::Parse(format!("bad integer '{x}' in --b")))
            })
            .collect()
    };
    let free = ints(free)?;
    let mut torsion = ints(torsion)?;
    let group = orb.fan.group();
    if torsion.is_empty() {
        torsion = vec![0; group.torsion_orders.len()];
    }
    NElement::from_i64(group, &free, &torsion).map_err(|e| Error::Parse(e.to_string()))
}

pub fn fmt_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_scalar).collect();
    format!("({})", parts.join(","))
}

fn fmt_ints<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn ints_json<T: ToString>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn vectors_json(vs: &[RatVector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_json(v)).collect())
}

fn coordinate_labels(orb: &Orbifold) -> Vec<String> {
    orb.xi.labels().iter().map(ToString::to_string).collect()
}

fn fan_header(fan: &StackyFan) -> String {
    format!(
        "fan: {} (rank {}, torsion {}, {} rays, {} maximal cones)\n",
        fan.name,
        fan.group.rank,
        fmt_ints(&fan.group.torsion_orders),
        fan.num_rays(),
        fan.max_cones.len()
    )
}

fn cmd_validate(fan: &StackyFan, as_json: bool) -> Outcome {
    let report = validate(fan);
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_INVALID
    };
    let out = if as_json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| json!({"check": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        to_json(&json!({"fan": fan.name, "valid": report.passed(), "checks": checks}))
    } else {
        let mut s = fan_header(fan);
        s.push_str(&report.to_string());
        let verdict = if report.passed() { "valid" } else { "invalid" };
        let _ = writeln!(s, "result: {verdict}");
        s
    };
    Outcome::fail(code, out, String::new())
}

fn render_rays(vf: &ValidatedFan, as_json: bool) -> String {
    if as_json {
        let rays: Vec<Value> = vf
            .rays()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                json!({"ray": i, "b": ints_json(&r.b_rig), "w": ints_json(&r.w),
                       "c": r.c.to_string(), "torsion": r.torsion})
            })
            .collect();
        return to_json(&json!({"fan": vf.fan().name, "rays": rays}));
    }
    let mut rows = vec![[
        "ray".to_string(),
        "b".into(),
        "w".into(),
        "c".into(),
        "torsion".into(),
    ]];
    for (i, r) in vf.rays().iter().enumerate() {
        rows.push([
            format!("ρ{i}"),
            fmt_ints(&r.b_rig),
            fmt_ints(&r.w),
            r.c.to_string(),
            fmt_ints(&r.torsion),
        ]);
    }
    let mut s = fan_header(vf.fan());
    s.push_str(&table(&rows));
    s
}

fn table<const N: usize>(rows: &[[String; N]]) -> String {
    let mut widths = [0usize; N];
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut s = String::new();
    for r in rows {
        let mut line = String::new();
        for (i, cell) in r.iter().enumerate() {
            line.push_str(cell);
            if i + 1 < N {
                let pad = widths[i] - cell.chars().count() + 2;
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        s.push_str(line.trim_end());
        s.push('\n');
    }
    s
}

fn coeffs_text(e: &BoxElement) -> String {
    if e.coeffs.is_empty() {
        return "-".into();
    }
    e.coeffs
        .iter()
        .map(|(rho, a)| format!("a[ρ{rho}]={a}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn box_json(e: &BoxElement) -> Value {
    let coeffs: Vec<Value> = e
        .coeffs
        .iter()
        .map(|(rho, a)| json!({"ray": rho, "a": rational_json(a)}))
        .collect();
    json!({"rig": ints_json(&e.rig), "torsion": e.torsion, "coeffs": coeffs,
           "twisted": !e.is_untwisted()})
}

fn render_box(
    vf: &ValidatedFan,
    elements: &[BoxElement],
    whole_box: bool,
    as_json: bool,
) -> String {
    if as_json {
        let key = if whole_box { "box" } else { "sectors" };
        let list: Vec<Value> = elements.iter().map(box_json).collect();
        return to_json(&json!({"fan": vf.fan().name, key: list}));
    }
    let mut s = fan_header(vf.fan());
    let twisted: Vec<&BoxElement> = elements.iter().filter(|e| !e.is_untwisted()).collect();
    if twisted.is_empty() {
        s.push_str(if whole_box {
            "Box = {0}; no twisted sectors\n"
        } else {
            "no twisted sectors\n"
        });
        return s;
    }
    let rig: Vec<String> = {
        let mut r: Vec<String> = elements.iter().map(|e| fmt_ints(&e.rig)).collect();
        r.dedup();
        r
    };
    if whole_box {
        let _ = writeln!(
            s,
            "Box^rig = {{{}}}; |N_tor| = {}",
            rig.join(", "),
            vf.group().torsion_size()
        );
    }
    let _ = writeln!(s, "twisted sectors: {}", twisted.len());
    let mut rows = vec![[
        "sector".to_string(),
        "rig".into(),
        "torsion".into(),
        "coefficients".into(),
    ]];
    let mut next = 0;
    for e in elements {
        let label = if e.is_untwisted() {
            "untwisted".to_string()
        } else {
            next += 1;
            format!("Y{}", next - 1)
        };
        rows.push([
            label,
            fmt_ints(&e.rig),
            fmt_ints(&e.torsion),
            coeffs_text(e),
        ]);
    }
    s.push_str(&table(&rows));
    s
}

fn render_ns(orb: &Orbifold, as_json: bool) -> Result<String, Error> {
    let sp = &orb.spaces;
    let classes = (0..sp.num_rays())
        .map(|r| sp.divisor_class_of_ray(r))
        .collect::<Result<Vec<_>, _>>()?;
    if as_json {
        let table: Vec<Value> = classes
            .iter()
            .enumerate()
            .map(|(r, (e, se))| json!({"ray": r, "E": vector_json(&e.0), "script_E": vector_json(&se.0)}))
            .collect();
        return Ok(to_json(&json!({
            "fan": orb.name(),
            "dim_N1": sp.picard_number(),
            "dim_N1_orb": sp.orb_picard_number(),
            "ker_beta_prime_basis": vectors_json(sp.ker_basis()),
            "curve_basis": vectors_json(sp.curve_basis()),
            "coordinates": coordinate_labels(orb),
            "ray_classes": table,
        })));
    }
    let labels = coordinate_labels(orb);
    let k = sp.orb_picard_number();
    let mut s = fan_header(orb.fan.fan());
    let _ = writeln!(s, "dim N^1(X) = dim N_1(X) = {}", sp.picard_number());
    let _ = writeln!(s, "dim N^1_orb = dim N_1,orb = {k}");
    let _ = writeln!(
        s,
        "Ker(beta') basis (V coordinates {}):",
        labels[..sp.num_rays()].join(" ")
    );
    for (i, v) in sp.ker_basis().iter().enumerate() {
        let _ = writeln!(s, "  f{} = {}", i + 1, fmt_vec(v));
    }
    let _ = writeln!(s, "curve basis (V_orb coordinates {}):", labels.join(" "));
    for (i, v) in sp.curve_basis().iter().enumerate() {
        let _ = writeln!(s, "  e{} = {}", i + 1, fmt_vec(v));
    }
    let names: Vec<String> = (1..=k).map(|i| format!("e{i}")).collect();
    let _ = writeln!(
        s,
        "ray divisor classes (pairings with {}):",
        names.join(" ")
    );
    let mut rows = vec![["ray".to_string(), "[E]".into(), "[ℰ]".into()]];
    for (r, (e, se)) in classes.iter().enumerate() {
        rows.push([format!("ρ{r}"), fmt_vec(&e.0), fmt_vec(&se.0)]);
    }
    s.push_str(&table(&rows));
    Ok(s)
}

fn render_xi(orb: &Orbifold, as_json: bool) -> Result<String, Error> {
    let xi = &orb.xi;
    let pairing = xi.pairing_matrix();
    let dual_ok = pairing.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    });
    if as_json {
        let entries: Vec<Value> = xi
            .labels()
            .iter()
            .enumerate()
            .map(|(i, eta)| {
                json!({"eta": eta.to_string(), "xi": vector_json(&xi.xi()[i]),
                       "xi_star": vector_json(&xi.xi_star()[i])})
            })
            .collect();
        return Ok(to_json(&json!({
            "fan": orb.name(),
            "coordinates": coordinate_labels(orb),
            "system": entries,
            "dual_basis": dual_ok,
        })));
    }
    let mut s = fan_header(orb.fan.fan());
    let _ = writeln!(s, "coordinates: {}", coordinate_labels(orb).join(" "));
    let mut rows = vec![["η".to_string(), "Ξ".into(), "Ξ*".into()]];
    for (i, eta) in xi.labels().iter().enumerate() {
        rows.push([
            eta.to_string(),
            fmt_vec(&xi.xi()[i]),
            fmt_vec(&xi.xi_star()[i]),
        ]);
    }
    s.push_str(&table(&rows));
    let _ = writeln!(
        s,
        "dual-basis check <Ξ*_η, Ξ_η'> = δ: {}",
        if dual_ok { "ok" } else { "FAILED" }
    );
    Ok(s)
}

fn basis_names(orb: &Orbifold) -> String {
    (1..=orb.spaces.orb_picard_number())
        .map(|i| format!("e{i}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_mov(orb: &Orbifold, as_json: bool) -> Result<String, Error> {
    let mov = orb.mov_cone()?;
    if as_json {
        return Ok(to_json(&json!({
            "fan": orb.name(),
            "curve_basis": vectors_json(orb.spaces.curve_basis()),
            "extremal_rays": vectors_json(mov.generators()),
        })));
    }
    let mut s = fan_header(orb.fan.fan());
    let _ = writeln!(
        s,
        "Mov_1,orb extremal rays (curve-basis coordinates {}):",
        basis_names(orb)
    );
    for g in mov.generators() {
        let v = orb
            .spaces
            .curve_vector(&crate::ns::OrbCurveClass(g.clone()))?;
        let _ = writeln!(s, "  {}  = {} in V_orb", fmt_vec(g), fmt_vec(&v));
    }
    Ok(s)
}

fn render_peff(orb: &Orbifold, as_json: bool) -> Result<String, Error> {
    let gens = orb.peff_generators()?;
    let peff = orb.peff_cone()?;
    if as_json {
        let list: Vec<Value> = orb
            .xi
            .labels()
            .iter()
            .zip(&gens)
            .map(|(eta, g)| json!({"eta": eta.to_string(), "class": vector_json(&g.0)}))
            .collect();
        return Ok(to_json(&json!({
            "fan": orb.name(),
            "generators": list,
            "extremal_rays": vectors_json(peff.generators()),
        })));
    }
    let mut s = fan_header(orb.fan.fan());
    let _ = writeln!(
        s,
        "PEff_orb generators λ_orb(Ξ*_η) (pairings with {}):",
        basis_names(orb)
    );
    for (eta, g) in orb.xi.labels().iter().zip(&gens) {
        let what = match eta {
            Eta::Ray(r) => format!("[ℰ_ρ{r}] - Σ a_ρ{r}(Y) u_Y"),
            Eta::Sector(i) => format!("u_Y{i}"),
        };
        let _ = writeln!(s, "  {eta}: {}  ({what})", fmt_vec(&g.0));
    }
    let rays: Vec<String> = peff.generators().iter().map(|g| fmt_vec(g)).collect();
    let _ = writeln!(s, "PEff_orb extremal rays: {}", rays.join(", "));
    Ok(s)
}

fn cmd_verify(orb: &Orbifold, as_json: bool) -> Outcome {
    let report = match orb.verify_duality() {
        Ok(r) => r,
        Err(e) => return error_outcome(&e),
    };
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let out = if as_json {
        to_json(&json!({
            "fan": report.name,
            "mov": vectors_json(&report.mov),
            "mov_by_intersection": vectors_json(&report.mov_by_intersection),
            "mov_paths_agree": report.mov_paths_agree,
            "dual_of_mov": vectors_json(&report.dual_of_mov),
            "corollary_generators": vectors_json(&report.corollary_generators),
            "corollary_extremal": vectors_json(&report.corollary_extremal),
            "equal": report.equal,
            "separating": report.separating.as_ref().map(|v| vector_json(v)),
        }))
    } else {
        let list = |vs: &[RatVector]| vs.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>().join(", ");
        let mut s = fan_header(orb.fan.fan());
        let _ = writeln!(s, "coordinates: curve basis {}", basis_names(orb));
        let _ = writeln!(s, "Mov_1,orb extremal rays: {}", list(&report.mov));
        let _ = writeln!(
            s,
            "Mov_1,orb via cone(Ξ) ∩ Ker(β'_orb): {} [{}]",
            list(&report.mov_by_intersection),
            if report.mov_paths_agree {
                "agrees"
            } else {
                "DIFFERS"
            }
        );
        let _ = writeln!(s, "dual of Mov_1,orb: {}", list(&report.dual_of_mov));
        let _ = writeln!(
            s,
            "λ_orb(Ξ*_η) generators: {}",
            list(&report.corollary_generators)
        );
        let _ = writeln!(
            s,
            "PEff_orb extremal rays: {}",
            list(&report.corollary_extremal)
        );
        if let Some(v) = &report.separating {
            let _ = writeln!(s, "separating vector: {}", fmt_vec(v));
        }
        let _ = writeln!(
            s,
            "verdict: {}",
            if report.passed() { "equal" } else { "MISMATCH" }
        );
        s
    };
    Outcome::fail(code, out, String::new())
}

fn term(coef: &Scalar, name: &str) -> String {
    if coef.is_one() {
        name.to_string()
    } else {
        format!("{coef}·{name}")
    }
}

fn render_class_of_1ps(orb: &Orbifold, b: &NElement, as_json: bool) -> Result<String, Error> {
    let c = orb.one_ps_class(b)?;
    let labels = coordinate_labels(orb);
    if as_json {
        let decomposition: Vec<Value> = c
            .decomposition
            .iter()
            .map(|(eta, k)| json!({"eta": eta.to_string(), "coefficient": rational_json(k)}))
            .collect();
        return Ok(to_json(&json!({
            "fan": orb.name(),
            "b": {"free": ints_json(&b.free), "torsion": b.torsion},
            "coordinates": labels,
            "class": vector_json(&c.class_vector),
            "sector": c.sector_index.map(|i| format!("Y{i}")),
            "sector_element": box_json(&c.sector),
            "decomposition": decomposition,
        })));
    }
    let class_terms: Vec<String> = c
        .class_vector
        .iter()
        .zip(&labels)
        .filter(|(x, _)| !x.is_zero())
        .map(|(x, l)| term(x, &format!("v[{l}]")))
        .collect();
    let mut dec_terms = Vec::new();
    if let Some(i) = c.sector_index {
        dec_terms.push(format!("Ξ[Y{i}]"));
    }
    for (eta, k) in &c.decomposition {
        if let Eta::Ray(_) = eta {
            dec_terms.push(format!("{k}·Ξ[{eta}]"));
        }
    }
    let join = |v: Vec<String>| {
        if v.is_empty() {
            "0".to_string()
        } else {
            v.join(" + ")
        }
    };
    let mut s = fan_header(orb.fan.fan());
    let torsion = if b.torsion.is_empty() {
        String::new()
    } else {
        format!(" tor {}", fmt_ints(&b.torsion))
    };
    let _ = writeln!(s, "b = {}{torsion}", fmt_ints(&b.free));
    let sector = match c.sector_index {
        Some(i) => format!("Y{i} = {}", c.sector),
        None => "untwisted".to_string(),
    };
    let _ = writeln!(s, "sector = {sector}");
    let _ = writeln!(
        s,
        "class = {}; decomposition = {}",
        join(class_terms),
        join(dec_terms)
    );
    Ok(s)
}
