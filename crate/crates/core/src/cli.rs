//! Command-line front end wiring the whole toolkit together: algebra
//! ingestion, the polarize/quantize pipeline, Verma and Fock computations,
//! and parabolic tower enumeration.
//!
//! Exit-code convention: `0` means success, `1` means a mathematical
//! verification failed (the command still prints a structured failure report
//! on stdout), `2` means a usage or parse error (message on stderr). This
//! lets CI distinguish invariant violations from operational mistakes.
//!
//! [`run`] is a pure function of the parsed command line, so identical
//! configurations produce byte-identical output. JSON output is emitted with
//! sorted keys and canonical rational strings; `--format table` produces a
//! human-readable rendering of the same data.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::fock::{exp_graded_dims, virasoro_check, GradedDims};
use crate::lie::{catalog, Functional, LieAlgebra, Subalgebra};
use crate::loops::{loop_bracket, operator_loop_bracket, quantize_loop, verify_invariant_form, AlgebraLoop};
use crate::matrix::RationalMatrix;
use crate::orbit::{check_polarization, quantize_nilpotent, vergne_polarization, verify_homomorphism};
use crate::rational::Rational;
use crate::towers::{levi_data, towers, Composition};
use crate::verma::{gram_matrix, kac_determinant, irreducible_graded_dims, singular_vectors, VermaModule, VermaVector};

/// Exact coadjoint-orbit quantization and Virasoro/Fock toolkit.
#[derive(Debug, Parser)]
#[command(name = "orbifock", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Seed for randomized subcommands. Accepted globally so wrappers can
    /// pass it unconditionally; every current subcommand is deterministic
    /// and ignores it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Jacobi identity of an algebra's bracket table.
    Jacobi {
        /// Path to an algebra JSON file, or a catalog name such as
        /// "heisenberg3".
        algebra: String,
    },
    /// Report dimension, nilpotency, solvability, center, and the lower
    /// central and derived series.
    Classify {
        /// Path to an algebra JSON file, or a catalog name.
        algebra: String,
    },
    /// Compute the Vergne polarization at a linear functional and verify the
    /// polarization conditions.
    Polarize {
        /// Path to an algebra JSON file, or a catalog name.
        algebra: String,
        /// Functional in dual-basis coordinates, comma-separated rationals
        /// (e.g. 0,0,1 for Z*).
        #[arg(long)]
        functional: String,
    },
    /// Quantize a polarized functional into differential operators and check
    /// the commutation relations.
    Quantize {
        /// Path to an algebra JSON file, or a catalog name.
        algebra: String,
        /// Functional in dual-basis coordinates, comma-separated rationals.
        #[arg(long)]
        functional: String,
        /// Optional polarization override: JSON file holding an array of
        /// basis rows (each a list of rational strings). Defaults to the
        /// Vergne polarization.
        #[arg(long)]
        polarization: Option<PathBuf>,
    },
    /// Highest-weight module reports: Gram matrix, Kac determinant, singular
    /// vectors, irreducible graded dimensions. With no section flag, all
    /// sections are emitted.
    Verma {
        /// Central charge, as a rational.
        #[arg(long)]
        c: Rational,
        /// Highest weight, as a rational.
        #[arg(long)]
        h: Rational,
        /// Level of the graded piece to analyse (irreducible dimensions are
        /// reported through this level).
        #[arg(long)]
        level: u32,
        /// Emit the Gram matrix of the level.
        #[arg(long)]
        gram: bool,
        /// Emit the Kac determinant of the level.
        #[arg(long)]
        det: bool,
        /// Emit the singular vectors of the level.
        #[arg(long)]
        singular: bool,
        /// Emit irreducible graded dimensions through the level.
        #[arg(long = "irreducible-dims")]
        irreducible_dims: bool,
    },
    /// Verify the Virasoro commutation relations for the quadratic
    /// oscillator-mode operators on the charged Fock space.
    Sugawara {
        /// Largest |m| of the modes L_m to check.
        #[arg(long = "max-mode")]
        max_mode: u32,
        /// Largest graded level of the states acted on.
        #[arg(long)]
        level: u32,
        /// Fock-space momentum (eigenvalue of the zero mode), as a rational.
        #[arg(long)]
        momentum: Rational,
    },
    /// Graded dimensions of the symmetric algebra over a graded space with
    /// the given dimensions at levels 1, 2, ...
    Expdim {
        /// Comma-separated dimensions at levels 1, 2, ...
        #[arg(long)]
        dims: String,
        /// Highest level of the output series.
        #[arg(long)]
        max: u32,
    },
    /// Bracket two loop-algebra elements, with the central-extension cocycle
    /// for an invariant form; optionally push through a quantization.
    Loopbracket {
        /// Path to an algebra JSON file, or a catalog name.
        algebra: String,
        /// Left element: '+'-separated monomials `[coeff*]<label>@<exponent>`,
        /// e.g. "X@1" or "1/2*X@1 + Y@-2".
        #[arg(long)]
        a: String,
        /// Right element, same syntax as --a.
        #[arg(long)]
        b: String,
        /// Invariant symmetric form for the cocycle: "zero" (default),
        /// "identity", or a path to a JSON array of matrix rows.
        #[arg(long, default_value = "zero")]
        form: String,
        /// Functional for quantization, comma-separated rationals (required
        /// with --quantized).
        #[arg(long)]
        functional: Option<String>,
        /// Also quantize both elements and bracket the operator loops.
        #[arg(long)]
        quantized: bool,
    },
    /// Enumerate maximal parabolic towers above a block composition.
    Towers {
        /// Comma-separated positive block sizes, e.g. 1,1,1,1.
        #[arg(long)]
        composition: String,
        /// Print only the number of towers.
        #[arg(long = "count-only")]
        count_only: bool,
    },
}

/// Result of [`run`]: what to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// A finished command: `pass == false` means a mathematical verification
/// failed and the process should exit 1 while still printing the report.
struct Report {
    pass: bool,
    json: Value,
    table: String,
}

impl Report {
    fn ok(json: Value, table: String) -> Self {
        Report { pass: true, json, table }
    }

    fn fail(json: Value, table: String) -> Self {
        Report { pass: false, json, table }
    }
}

/// Operational error: bad flags, unreadable files, malformed literals.
struct UsageError(String);

impl UsageError {
    fn new(msg: impl Into<String>) -> Self {
        UsageError(msg.into())
    }
}

/// Executes a parsed command line, returning output instead of printing, so
/// the determinism contract is testable in-process.
pub fn run(cli: &Cli) -> RunOutput {
    match dispatch(&cli.command) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => canonical_json(&report.json),
                Format::Table => report.table,
            };
            RunOutput {
                code: if report.pass { 0 } else { 1 },
                stdout: body + "\n",
                stderr: String::new(),
            }
        }
        Err(UsageError(msg)) => {
            RunOutput { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
    }
}

fn dispatch(command: &Command) -> Result<Report, UsageError> {
    match command {
        Command::Jacobi { algebra } => {
            let g = load_algebra(algebra)?;
            Ok(jacobi_report(&g))
        }
        Command::Classify { algebra } => classify(algebra),
        Command::Polarize { algebra, functional } => polarize(algebra, functional),
        Command::Quantize { algebra, functional, polarization } => {
            quantize(algebra, functional, polarization.as_deref())
        }
        Command::Verma { c, h, level, gram, det, singular, irreducible_dims } => {
            Ok(verma(c, h, *level, *gram, *det, *singular, *irreducible_dims))
        }
        Command::Sugawara { max_mode, level, momentum } => {
            Ok(sugawara(*max_mode, *level, momentum))
        }
        Command::Expdim { dims, max } => expdim(dims, *max),
        Command::Loopbracket { algebra, a, b, form, functional, quantized } => {
            loopbracket(algebra, a, b, form, functional.as_deref(), *quantized)
        }
        Command::Towers { composition, count_only } => towers_cmd(composition, *count_only),
    }
}

/// JSON with sorted keys and stable formatting. `serde_json::Value` keeps
/// object keys in a sorted map, so serializing through it canonicalizes key
/// order no matter how the document was assembled.
fn canonical_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON value serialization cannot fail")
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report serialization cannot fail")
}

/// Loads an algebra from a JSON file path, falling back to the built-in
/// catalog when no such file exists.
fn load_algebra(arg: &str) -> Result<LieAlgebra, UsageError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError::new(format!("cannot read {arg}: {e}")))?;
        LieAlgebra::from_json(&text)
            .map_err(|e| UsageError::new(format!("malformed algebra file {arg}: {e}")))
    } else {
        catalog::by_name(arg).ok_or_else(|| {
            UsageError::new(format!(
                "{arg} is neither a readable file nor a catalog algebra (catalog names: {})",
                catalog::NAME_PATTERNS.join(", ")
            ))
        })
    }
}

/// Loads an algebra and insists its bracket satisfies the Jacobi identity;
/// a violation is reported as a mathematical failure, not a usage error.
fn load_verified(arg: &str) -> Result<Result<LieAlgebra, Report>, UsageError> {
    let g = load_algebra(arg)?;
    let report = g.check_jacobi();
    if report.pass {
        Ok(Ok(g))
    } else {
        Ok(Err(jacobi_report(&g)))
    }
}

fn jacobi_report(g: &LieAlgebra) -> Report {
    let report = g.check_jacobi();
    let table = match &report.failure {
        None => "pass".to_string(),
        Some(f) => {
            let (i, j, k) = f.triple;
            let labels = g.labels();
            format!(
                "fail at ({}, {}, {}): residual = {}",
                labels[i],
                labels[j],
                labels[k],
                g.label_vector(&f.residual)
            )
        }
    };
    Report { pass: report.pass, json: to_value(&report), table }
}

fn parse_functional(g: &LieAlgebra, s: &str) -> Result<Functional, UsageError> {
    Functional::parse_csv(s, g.dim()).map_err(|e| UsageError::new(format!("bad functional: {e}")))
}

fn classify(algebra: &str) -> Result<Report, UsageError> {
    let g = match load_verified(algebra)? {
        Ok(g) => g,
        Err(report) => return Ok(report),
    };
    let lower_central: Vec<usize> = g.lower_central_series().iter().map(Subalgebra::dim).collect();
    let derived: Vec<usize> = g.derived_series().iter().map(Subalgebra::dim).collect();
    let center = g.center().describe(&g);
    let class = g.nilpotency_class();

    let json = json!({
        "dim": g.dim(),
        "basis": g.labels(),
        "nilpotent": g.is_nilpotent(),
        "nilpotency_class": class,
        "solvable": g.is_solvable(),
        "center": center,
        "lower_central_dims": lower_central,
        "derived_dims": derived,
    });

    let mut t = String::new();
    let _ = writeln!(t, "dim: {}", g.dim());
    let _ = writeln!(t, "basis: {}", g.labels().join(", "));
    match class {
        Some(c) => {
            let _ = writeln!(t, "nilpotent: yes (class {c})");
        }
        None => {
            let _ = writeln!(t, "nilpotent: no");
        }
    }
    let _ = writeln!(t, "solvable: {}", if g.is_solvable() { "yes" } else { "no" });
    let _ = writeln!(t, "center: {}", join_or(&center, "0"));
    let _ = writeln!(t, "lower central dims: {}", join_display(&lower_central));
    let _ = write!(t, "derived dims: {}", join_display(&derived));
    Ok(Report::ok(json, t))
}

fn polarize(algebra: &str, functional: &str) -> Result<Report, UsageError> {
    let g = match load_verified(algebra)? {
        Ok(g) => g,
        Err(report) => return Ok(report),
    };
    let f = parse_functional(&g, functional)?;
    let p = match vergne_polarization(&g, &f, None) {
        Ok(p) => p,
        Err(e) => return Ok(math_failure(&e.to_string())),
    };
    let check = check_polarization(&g, &f, &p);
    let rows = rows_as_strings(p.basis_matrix());

    let json = json!({
        "functional": to_value(&f.0),
        "basis": p.describe(&g),
        "rows": rows,
        "check": to_value(&check),
    });

    let mut t = String::new();
    let _ = writeln!(t, "polarization basis:");
    for label in p.describe(&g) {
        let _ = writeln!(t, "  {label}");
    }
    let _ = write!(t, "{check}");
    Ok(Report { pass: check.pass, json, table: t })
}

fn quantize(
    algebra: &str,
    functional: &str,
    polarization: Option<&Path>,
) -> Result<Report, UsageError> {
    let g = match load_verified(algebra)? {
        Ok(g) => g,
        Err(report) => return Ok(report),
    };
    let f = parse_functional(&g, functional)?;

    let p = match polarization {
        Some(path) => {
            let rows = read_matrix_rows(path)?;
            for row in &rows {
                if row.len() != g.dim() {
                    return Err(UsageError::new(format!(
                        "polarization rows must have length {}, got {}",
                        g.dim(),
                        row.len()
                    )));
                }
            }
            let p = Subalgebra::candidate(g.dim(), &rows);
            let check = check_polarization(&g, &f, &p);
            if !check.pass {
                let json = json!({ "check": to_value(&check) });
                return Ok(Report::fail(json, check.to_string()));
            }
            p
        }
        None => match vergne_polarization(&g, &f, None) {
            Ok(p) => p,
            Err(e) => return Ok(math_failure(&e.to_string())),
        },
    };

    let rep = match quantize_nilpotent(&g, &f, &p) {
        Ok(rep) => rep,
        Err(e) => return Ok(math_failure(&e.to_string())),
    };
    let hom = verify_homomorphism(&g, &rep.operators);

    let operators: Vec<Value> = g
        .labels()
        .iter()
        .zip(&rep.operators)
        .map(|(label, op)| {
            json!({
                "element": label,
                "display": op.to_string(),
                "operator": to_value(op),
            })
        })
        .collect();
    let json = json!({
        "functional": to_value(&f.0),
        "polarization": p.describe(&g),
        "variables": rep.variables,
        "operators": operators,
        "homomorphism": to_value(&hom),
    });

    let width = g.labels().iter().map(String::len).max().unwrap_or(0);
    let mut t = String::new();
    for (label, op) in g.labels().iter().zip(&rep.operators) {
        let _ = writeln!(t, "{label:width$} -> {op}");
    }
    let _ = writeln!(t, "variables: {}", rep.variables);
    let _ = write!(t, "homomorphism: {}", serde_json::to_string(&to_value(&hom)).expect("report"));
    Ok(Report { pass: hom.pass, json, table: t })
}

fn verma(
    c: &Rational,
    h: &Rational,
    level: u32,
    gram: bool,
    det: bool,
    singular: bool,
    irreducible_dims: bool,
) -> Report {
    let module = VermaModule::new(c.clone(), h.clone());
    // No section flag means every section.
    let all = !(gram || det || singular || irreducible_dims);
    let (gram, det, singular, irreducible_dims) =
        (gram || all, det || all, singular || all, irreducible_dims || all);

    let mut sections: Vec<(&str, Value)> = Vec::new();
    let mut t = String::new();
    let _ = writeln!(t, "c = {c}, h = {h}, level = {level}");

    if gram {
        let gm = gram_matrix(&module, level);
        let basis = to_value(&gm.partitions);
        let matrix: Vec<Vec<String>> = (0..gm.matrix.rows())
            .map(|r| gm.matrix.row(r).iter().map(Rational::to_string).collect())
            .collect();
        sections.push(("gram", json!({ "level": level, "basis": basis, "matrix": matrix })));

        let headers: Vec<String> = gm.partitions.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(t, "gram matrix:");
        let _ = write!(t, "{}", grid(&headers, &matrix));
    }
    if det {
        let d = kac_determinant(&module, level);
        sections.push(("kac_determinant", to_value(&d)));
        let _ = writeln!(t, "kac determinant: {d}");
    }
    if singular {
        let vectors = if level == 0 { Vec::new() } else { singular_vectors(&module, level) };
        sections.push(("singular_vectors", to_value(&vectors)));
        if vectors.is_empty() {
            let _ = writeln!(t, "singular vectors: none");
        } else {
            let _ = writeln!(t, "singular vectors:");
            for v in &vectors {
                let _ = writeln!(t, "  {}", render_verma(v));
            }
        }
    }
    if irreducible_dims {
        let dims = irreducible_graded_dims(&module, level);
        sections.push(("irreducible_dims", to_value(&dims)));
        let _ = writeln!(t, "irreducible dims: {}", join_display(&dims));
    }

    // A single requested section is emitted bare, so e.g. `--gram --format
    // json` prints exactly the Gram document; otherwise sections are wrapped
    // together with the module parameters.
    let json = if sections.len() == 1 {
        sections.pop().unwrap().1
    } else {
        let mut doc = serde_json::Map::new();
        doc.insert("c".into(), to_value(c));
        doc.insert("h".into(), to_value(h));
        doc.insert("level".into(), json!(level));
        for (key, value) in sections {
            doc.insert(key.into(), value);
        }
        Value::Object(doc)
    };
    Report::ok(json, t.trim_end().to_string())
}

/// Renders a module vector as a sum of lowering-operator words, e.g.
/// `L_-2|h> - 4/3*L_-1^2|h>`.
fn render_verma(v: &VermaVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (partition, coeff) in v.coeffs() {
        let mut word = String::new();
        let mut parts = partition.parts().iter().peekable();
        while let Some(&k) = parts.next() {
            let mut power = 1;
            while parts.peek() == Some(&&k) {
                parts.next();
                power += 1;
            }
            if power == 1 {
                let _ = write!(word, "L_-{k}");
            } else {
                let _ = write!(word, "L_-{k}^{power}");
            }
        }
        word.push_str("|h>");

        let negative = coeff < &Rational::zero();
        let magnitude = if negative { -coeff.clone() } else { coeff.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude != Rational::one() {
            let _ = write!(out, "{magnitude}*");
        }
        out.push_str(&word);
    }
    out
}

fn sugawara(max_mode: u32, level: u32, momentum: &Rational) -> Report {
    let report = virasoro_check(max_mode, level, momentum);
    let json = json!({
        "max_mode": max_mode,
        "max_level": level,
        "momentum": to_value(momentum),
        "pass": report.pass,
        "inferred_central_charge": to_value(&report.inferred_central_charge),
        "failures": to_value(&report.failures),
    });

    let mut t = String::new();
    if report.pass {
        let _ = write!(
            t,
            "pass: modes through {max_mode} on states through level {level} \
             (inferred central charge {})",
            report.inferred_central_charge
        );
    } else {
        let _ = writeln!(
            t,
            "FAIL: {} commutator(s) deviate (inferred central charge {})",
            report.failures.len(),
            report.inferred_central_charge
        );
        for f in &report.failures {
            let _ = writeln!(
                t,
                "  [L_{}, L_{}] on basis {} of momentum {momentum}",
                f.modes.0, f.modes.1, f.state
            );
        }
        t.truncate(t.trim_end().len());
    }
    Report { pass: report.pass, json, table: t }
}

fn expdim(dims: &str, max: u32) -> Result<Report, UsageError> {
    let parsed: Result<Vec<u64>, _> =
        dims.split(',').map(|tok| tok.trim().parse::<u64>()).collect();
    let parsed = parsed.map_err(|e| UsageError::new(format!("bad --dims: {e}")))?;
    let series = exp_graded_dims(&GradedDims(parsed.clone()), max);
    let json = json!({ "dims": parsed, "max_level": max, "series": series });
    let table = join_display(&series);
    Ok(Report::ok(json, table))
}

/// Parses a loop element written as '+'-separated monomials
/// `[coeff*]<basis_label>@<exponent>`.
fn parse_loop(g: &LieAlgebra, s: &str) -> Result<AlgebraLoop, UsageError> {
    let mut out = AlgebraLoop::zero(g.dim());
    for monomial in s.split('+') {
        let monomial = monomial.trim();
        if monomial.is_empty() {
            return Err(UsageError::new(format!("empty monomial in loop element {s:?}")));
        }
        let (head, exponent) = monomial.rsplit_once('@').ok_or_else(|| {
            UsageError::new(format!(
                "monomial {monomial:?} must be written [coeff*]<basis_label>@<exponent>"
            ))
        })?;
        let exponent: i64 = exponent
            .trim()
            .parse()
            .map_err(|e| UsageError::new(format!("bad exponent in {monomial:?}: {e}")))?;
        let (coeff, label) = match head.rsplit_once('*') {
            Some((c, l)) => {
                let c: Rational = c
                    .trim()
                    .parse()
                    .map_err(|e| UsageError::new(format!("bad coefficient in {monomial:?}: {e}")))?;
                (c, l.trim())
            }
            None => (Rational::one(), head.trim()),
        };
        let index = g.labels().iter().position(|l| l == label).ok_or_else(|| {
            UsageError::new(format!(
                "unknown basis label {label:?}; this algebra has basis {}",
                g.labels().join(", ")
            ))
        })?;
        let mut vector = vec![Rational::zero(); g.dim()];
        vector[index] = coeff;
        out.add_term(exponent, &vector);
    }
    Ok(out)
}

fn parse_form(g: &LieAlgebra, form: &str) -> Result<RationalMatrix, UsageError> {
    let n = g.dim();
    match form {
        "zero" => Ok(RationalMatrix::zero(n, n)),
        "identity" => Ok(RationalMatrix::identity(n)),
        path => {
            let rows = read_matrix_rows(Path::new(path))?;
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(UsageError::new(format!("--form matrix must be {n}x{n}")));
            }
            let mut m = RationalMatrix::zero(n, n);
            for (i, row) in rows.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    m.set(i, j, v.clone());
                }
            }
            Ok(m)
        }
    }
}

fn read_matrix_rows(path: &Path) -> Result<Vec<Vec<Rational>>, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError::new(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| UsageError::new(format!("malformed matrix file {}: {e}", path.display())))
}

fn loopbracket(
    algebra: &str,
    a: &str,
    b: &str,
    form: &str,
    functional: Option<&str>,
    quantized: bool,
) -> Result<Report, UsageError> {
    let g = match load_verified(algebra)? {
        Ok(g) => g,
        Err(report) => return Ok(report),
    };
    let x = parse_loop(&g, a)?;
    let y = parse_loop(&g, b)?;
    let form = parse_form(&g, form)?;
    if let Err(e) = verify_invariant_form(&g, &form) {
        return Ok(math_failure(&e.to_string()));
    }
    let bracket = loop_bracket(&g, &x, &y, &form).expect("elements built over the same algebra");

    let mut doc = serde_json::Map::new();
    doc.insert("a".into(), to_value(&x));
    doc.insert("b".into(), to_value(&y));
    doc.insert("bracket".into(), to_value(&bracket));
    doc.insert("display".into(), json!(bracket.describe(&g)));

    let mut t = String::new();
    let _ = writeln!(t, "a: {}", x.describe(&g));
    let _ = writeln!(t, "b: {}", y.describe(&g));
    let _ = write!(t, "[a, b]: {}", bracket.describe(&g));

    if quantized {
        let functional = functional.ok_or_else(|| {
            UsageError::new("--quantized requires --functional to pick the representation")
        })?;
        let f = parse_functional(&g, functional)?;
        let p = match vergne_polarization(&g, &f, None) {
            Ok(p) => p,
            Err(e) => return Ok(math_failure(&e.to_string())),
        };
        let rep = match quantize_nilpotent(&g, &f, &p) {
            Ok(rep) => rep,
            Err(e) => return Ok(math_failure(&e.to_string())),
        };
        let qa = quantize_loop(&rep, &x).expect("dimensions match by construction");
        let qb = quantize_loop(&rep, &y).expect("dimensions match by construction");
        let qbracket =
            operator_loop_bracket(&qa, &qb).expect("operator loops over the same variables");
        doc.insert("quantized_bracket".into(), to_value(&qbracket));
        doc.insert("quantized_display".into(), json!(qbracket.to_string()));
        let _ = write!(t, "\nquantized [a, b]: {qbracket}");
    }

    Ok(Report::ok(Value::Object(doc), t))
}

fn towers_cmd(composition: &str, count_only: bool) -> Result<Report, UsageError> {
    let parts: Result<Vec<u32>, _> =
        composition.split(',').map(|tok| tok.trim().parse::<u32>()).collect();
    let parts = parts.map_err(|e| UsageError::new(format!("bad --composition: {e}")))?;
    let start =
        Composition::new(parts).map_err(|e| UsageError::new(format!("bad --composition: {e}")))?;
    let all = towers(&start);
    let levi = levi_data(&start);

    let mut doc = serde_json::Map::new();
    doc.insert("composition".into(), to_value(&start));
    doc.insert("count".into(), json!(all.len()));
    doc.insert("levi".into(), to_value(&levi));
    let table = if count_only {
        format!("{}", all.len())
    } else {
        // Chains are emitted as bare arrays of compositions.
        let chains: Vec<&[Composition]> = all.iter().map(|t| t.chain.as_slice()).collect();
        doc.insert("towers".into(), to_value(&chains));
        let mut t = String::new();
        let _ = writeln!(t, "{} tower(s) above {start}", all.len());
        for tower in &all {
            let chain: Vec<String> = tower.chain.iter().map(Composition::to_string).collect();
            let _ = writeln!(t, "  {}", chain.join(" -> "));
        }
        t.trim_end().to_string()
    };
    Ok(Report::ok(Value::Object(doc), table))
}

/// Structured report for a mathematical precondition or verification failure
/// (exit 1): the error rendered both as JSON and as the table line.
fn math_failure(message: &str) -> Report {
    Report::fail(json!({ "pass": false, "error": message }), format!("error: {message}"))
}

fn rows_as_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(Rational::to_string).collect()).collect()
}

fn join_display<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn join_or(items: &[String], empty: &str) -> String {
    if items.is_empty() {
        empty.to_string()
    } else {
        items.join(", ")
    }
}

/// Renders a square grid with row and column headers, columns padded to
/// their widest entry.
fn grid(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
    for row in rows {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    let head_width = headers.iter().map(String::len).max().unwrap_or(0);

    let mut out = String::new();
    let _ = write!(out, "{:head_width$}", "");
    for (j, header) in headers.iter().enumerate() {
        let _ = write!(out, "  {:>width$}", header, width = widths[j]);
    }
    out.push('\n');
    for (i, row) in rows.iter().enumerate() {
        let _ = write!(out, "{:head_width$}", headers[i]);
        for (j, cell) in row.iter().enumerate() {
            let _ = write!(out, "  {:>width$}", cell, width = widths[j]);
        }
        out.push('\n');
    }
    out
}
