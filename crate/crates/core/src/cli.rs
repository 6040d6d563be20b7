//! The `lorentz-roots` command line.
//!
//! [`dispatch`] parses arguments, runs one computation and renders a JSON
//! report. Exit codes: 0 success, 1 domain error, 2 usage error or an
//! unreadable lattice file. On failure nothing is written to stdout.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::arith::{Int, Matrix, Rat, Vector};
use crate::error::Error;
use crate::fixtures;
use crate::kacmoody::{
    anti_invariance_check, cartan, solve_multiplicities, sum_side, w_invariance_violations, RootDatum,
};
use crate::lattice::{Isometry, Lattice};
use crate::qseries::{cusp_identity, eta_power, Direction};
use crate::report::{int_json, matrix_json, rat_json, rat_vec_json, render, vec_json};
use crate::rootset::RootSet;
use crate::vinberg::{gram_bound_check, parse_key, run, Limits, RootFilter};
use crate::weylstruct::{
    build_pk_sample, candidate_roots_for_weyl_vector, classify_chamber, lattice_weyl_vector,
    m_star_p_membership, parabolic_translation, symmetry_group, ChamberClass, GroupOrder,
    SymmetryGroup,
};

#[derive(Parser, Debug)]
#[command(name = "lorentz-roots", version, about = "Reflection groups of hyperbolic lattices and their root systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker budget (computations are currently sequential).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signature, parity, determinant and discriminant group.
    Info(LatticeArg),
    /// Vinberg's algorithm from a controller vector.
    Vinberg(VinbergArgs),
    /// Lattice Weyl vector of a root set and the roots it admits.
    Weyl(WeylArgs),
    /// Symmetry group and elliptic/parabolic classification of a root set.
    Classify(ClassifyArgs),
    /// Generalized Cartan matrix of a root set.
    Cartan(RootsArgs),
    /// Weyl–Kac denominator identity and root multiplicities.
    Denominator(DenominatorArgs),
    /// Eta products and the cusp identity.
    Qseries(QseriesArgs),
    /// A window of the parabolic family generated by a translation.
    Family(FamilyArgs),
}

#[derive(Args, Debug)]
struct LatticeArg {
    /// Lattice JSON file (`{"name": ..., "gram": [[...]]}`); names of the
    /// shipped fixtures also work without a path.
    #[arg(long)]
    lattice: PathBuf,
}

#[derive(Args, Debug)]
struct VinbergArgs {
    #[command(flatten)]
    lattice: LatticeArg,
    /// Controller h with S(h,h) < 0, e.g. `1,1,1`.
    #[arg(long, allow_hyphen_values = true)]
    controller: String,
    /// Root norms, e.g. `2` or `2,8`.
    #[arg(long)]
    norms: String,
    /// Basis vectors of the congruence sublattice, e.g. `1,0,0;0,1,0;0,0,2`.
    #[arg(long, allow_hyphen_values = true, requires = "residues")]
    congruence_basis: Option<String>,
    /// Allowed residues modulo the sublattice, e.g. `0,0,1`.
    #[arg(long, allow_hyphen_values = true, requires = "congruence_basis")]
    residues: Option<String>,
    /// Largest height key `S(h,δ)²/S(δ,δ)` to examine, e.g. `4096` or `9/2`.
    #[arg(long, default_value = "4096")]
    max_key: String,
    #[arg(long, default_value_t = 64)]
    max_roots: usize,
    /// Allow the upper Gram bound to be attained.
    #[arg(long)]
    non_strict: bool,
}

#[derive(Args, Debug)]
struct RootsArgs {
    #[command(flatten)]
    lattice: LatticeArg,
    /// Root set as `;`-separated vectors, e.g. `1,0,0;0,1,0;0,0,1`.
    #[arg(long, allow_hyphen_values = true)]
    roots: String,
}

#[derive(Args, Debug)]
struct WeylArgs {
    #[command(flatten)]
    roots: RootsArgs,
    /// List roots of norm up to this bound admitted by the Weyl vector.
    #[arg(long, default_value_t = 0)]
    norm_bound: u64,
    /// Coordinate window for that list (required for isotropic ρ).
    #[arg(long)]
    window: Option<u64>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    roots: RootsArgs,
    /// Two walls `d_a;d_b` with mirrors parallel at infinity; the product of
    /// their reflections is used as the symmetry generator.
    #[arg(long, allow_hyphen_values = true)]
    translation: Option<String>,
    /// Power of that translation to use as generator.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    power: i64,
}

#[derive(Args, Debug)]
struct DenominatorArgs {
    #[command(flatten)]
    roots: RootsArgs,
    /// Truncation height.
    #[arg(long, default_value_t = 6)]
    n: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CuspDirection {
    Tau2m,
    M2tau,
}

#[derive(Args, Debug)]
struct QseriesArgs {
    /// Coefficients of ∏(1 − qⁿ)^E.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "cusp_identity")]
    eta_power: Option<i64>,
    /// Solve 1 − Σ m(t)qᵗ = ∏(1 − qᵏ)^τ(k) in the given direction.
    #[arg(long, value_enum, requires = "coeffs")]
    cusp_identity: Option<CuspDirection>,
    /// Input sequence for the cusp identity, indexed from 1.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Truncation degree.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[command(flatten)]
    lattice: LatticeArg,
    /// Two walls `d_a;d_b` whose reflections compose to the translation.
    #[arg(long, allow_hyphen_values = true)]
    translation: String,
    /// Seeds `e0;f01;f02`.
    #[arg(long, allow_hyphen_values = true)]
    seeds: String,
    #[arg(long)]
    k: i64,
    #[arg(long, default_value_t = 6)]
    window: i64,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// Runs the command line given by `argv` (including the program name).
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = if cli.threads == 0 {
        Err(Failure::Usage("--threads must be at least 1".into()))
    } else {
        execute(&cli.command)
    };
    match result {
        Ok(report) => {
            let text = match &report {
                Value::Array(_) => serde_json::to_string(&report).expect("reports serialize") + "\n",
                _ => render(&report),
            };
            match &cli.output {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome { code: 0, stdout: String::new(), stderr: String::new() },
                    Err(e) => Outcome {
                        code: 2,
                        stdout: String::new(),
                        stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    },
                },
                None => Outcome { code: 0, stdout: text, stderr: String::new() },
            }
        }
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Domain(e)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn execute(cmd: &Command) -> Run<Value> {
    match cmd {
        Command::Info(a) => info(a),
        Command::Vinberg(a) => vinberg(a),
        Command::Weyl(a) => weyl(a),
        Command::Classify(a) => classify(a),
        Command::Cartan(a) => cartan_cmd(a),
        Command::Denominator(a) => denominator(a),
        Command::Qseries(a) => qseries(a),
        Command::Family(a) => family(a),
    }
}

fn load_lattice(path: &Path) -> Run<Lattice> {
    if !path.exists() {
        if let Some(l) = path.file_name().and_then(|n| n.to_str()).and_then(fixtures::by_file_name) {
            return Ok(l);
        }
    }
    Lattice::load(path).map_err(|e| Failure::Usage(e.to_string()))
}

fn lattice_name(l: &Lattice) -> Value {
    Value::from(l.name().unwrap_or(""))
}

fn parse_ints(text: &str) -> Run<Vec<i64>> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("not an integer list: {text:?}"))))
        .collect()
}

fn parse_vector(text: &str) -> Run<Vector> {
    Ok(parse_ints(text)?.into_iter().map(Int::from).collect())
}

fn parse_vectors(text: &str) -> Run<Vec<Vector>> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(parse_vector).collect()
}

fn check_dims(l: &Lattice, vs: &[Vector]) -> Run<()> {
    match vs.iter().find(|v| v.len() != l.rank()) {
        Some(v) => Err(Failure::Usage(format!("vector {v:?} has {} coordinates, lattice rank is {}", v.len(), l.rank()))),
        None => Ok(()),
    }
}

fn vectors_json(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| vec_json(v)).collect())
}

fn isometries_json(gs: &[Isometry]) -> Value {
    Value::Array(gs.iter().map(|g| matrix_json(g.matrix())).collect())
}

fn report(l: Option<&Lattice>, config: Value, body: Value) -> Value {
    let mut m = Map::new();
    if let Some(l) = l {
        m.insert("lattice".into(), lattice_name(l));
    }
    m.insert("config".into(), config);
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

fn info(a: &LatticeArg) -> Run<Value> {
    let l = load_lattice(&a.lattice)?;
    let inv = l.invariants();
    Ok(report(
        Some(&l),
        json!({"command": "info"}),
        json!({
            "gram": matrix_json(l.gram()),
            "rank": l.rank(),
            "signature": [inv.signature.0, inv.signature.1],
            "hyperbolic": l.is_hyperbolic(),
            "even": inv.even,
            "determinant": int_json(&inv.determinant),
            "smith_divisors": vec_json(&inv.smith_divisors),
            "discriminant_exponent": int_json(&inv.exponent),
        }),
    ))
}

fn vinberg(a: &VinbergArgs) -> Run<Value> {
    let l = load_lattice(&a.lattice.lattice)?;
    let h = parse_vector(&a.controller)?;
    check_dims(&l, std::slice::from_ref(&h))?;
    let norms = parse_ints(&a.norms)?;
    let mut filter = RootFilter::new(norms.clone())?;
    if let (Some(b), Some(r)) = (&a.congruence_basis, &a.residues) {
        let basis = parse_vectors(b)?;
        let residues = parse_vectors(r)?;
        check_dims(&l, &basis)?;
        check_dims(&l, &residues)?;
        let m = Matrix::from_columns(&basis)?;
        filter = filter.with_congruence(&m, &residues)?;
    }
    let max_key = parse_key(&a.max_key).map_err(|e| Failure::Usage(e.to_string()))?;
    let limits = Limits { max_key, max_roots: a.max_roots };
    let rep = run(&l, &h, &filter, &limits)?;
    let bound = if rep.accepted.is_empty() {
        Value::Null
    } else {
        let b = gram_bound_check(&l, &rep.accepted, !a.non_strict)?;
        json!({
            "violations": b.violations.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
            "spanning_connected_subset": b.spanning_connected_subset,
        })
    };
    Ok(report(
        Some(&l),
        json!({
            "command": "vinberg",
            "controller": vec_json(&h),
            "norms": norms,
            "congruence_basis": a.congruence_basis,
            "residues": a.residues,
            "max_key": limits.max_key.to_string(),
            "max_roots": a.max_roots,
            "strict": !a.non_strict,
        }),
        json!({
            "roots": vectors_json(&rep.accepted),
            "norms": rep.accepted.iter().map(|r| int_json(&l.norm(r))).collect::<Vec<_>>(),
            "height_keys": rep.keys.iter().map(|k| Value::from(k.to_string())).collect::<Vec<_>>(),
            "gram": matrix_json(&rep.gram),
            "terminated": rep.terminated,
            "exhausted": rep.exhausted,
            "gram_bound": bound,
        }),
    ))
}

fn root_set(a: &RootsArgs) -> Run<(Lattice, RootSet)> {
    let l = load_lattice(&a.lattice.lattice)?;
    let roots = parse_vectors(&a.roots)?;
    check_dims(&l, &roots)?;
    let p = RootSet::new(&l, roots)?;
    Ok((l, p))
}

fn weyl(a: &WeylArgs) -> Run<Value> {
    let (l, p) = root_set(&a.roots)?;
    let w = lattice_weyl_vector(&l, &p)?;
    let mut body = json!({
        "rho": w.rho.as_ref().map(|r| rat_vec_json(r)),
        "rho_norm": w.rho_norm.as_ref().map(rat_json),
        "kind": w.kind.as_str(),
    });
    if let Some(rho) = &w.rho {
        body["in_dual_m_p"] = Value::from(m_star_p_membership(&l, p.roots(), rho));
        if a.norm_bound > 0 {
            let c = candidate_roots_for_weyl_vector(&l, rho, a.norm_bound, a.window)?;
            body["candidates"] = vectors_json(&c);
        }
    }
    Ok(report(
        Some(&l),
        json!({
            "command": "weyl",
            "roots": vectors_json(p.roots()),
            "norm_bound": a.norm_bound,
            "window": a.window,
        }),
        body,
    ))
}

fn two_walls(text: &str) -> Run<(Vector, Vector)> {
    let vs = parse_vectors(text)?;
    match <[Vector; 2]>::try_from(vs) {
        Ok([a, b]) => Ok((a, b)),
        Err(_) => Err(Failure::Usage("translation needs exactly two walls `d_a;d_b`".into())),
    }
}

fn classify(a: &ClassifyArgs) -> Run<Value> {
    let (l, p) = root_set(&a.roots)?;
    let sym = match &a.translation {
        Some(t) => {
            let (da, db) = two_walls(t)?;
            check_dims(&l, &[da.clone(), db.clone()])?;
            let phi = parabolic_translation(&l, &da, &db)?;
            let g = phi.power(a.power).ok_or_else(|| Failure::Domain(Error::Invalid("translation is not invertible".into())))?;
            SymmetryGroup::from_generators(&l, vec![g])?
        }
        None => symmetry_group(&l, &p)?,
    };
    let class = classify_chamber(&l, &p, &sym)?;
    let order = match sym.order {
        GroupOrder::Finite(n) => Value::from(n),
        GroupOrder::InfiniteCandidate => Value::from("infinite-candidate"),
    };
    let cusp = match &class {
        ChamberClass::ParabolicCandidate { cusp } => vec_json(cusp),
        _ => Value::Null,
    };
    Ok(report(
        Some(&l),
        json!({
            "command": "classify",
            "roots": vectors_json(p.roots()),
            "translation": a.translation,
            "power": a.power,
        }),
        json!({
            "symmetry_order": order,
            "generators": isometries_json(&sym.generators),
            "class": class.as_str(),
            "cusp": cusp,
        }),
    ))
}

fn cartan_cmd(a: &RootsArgs) -> Run<Value> {
    let (l, p) = root_set(a)?;
    let c = cartan(&l, &p)?;
    Ok(report(
        Some(&l),
        json!({"command": "cartan", "roots": vectors_json(p.roots())}),
        json!({
            "a": matrix_json(&c.a),
            "d": c.d.iter().map(rat_json).collect::<Vec<_>>(),
            "b": matrix_json(&c.b),
            "lorentzian": c.lorentzian,
        }),
    ))
}

fn denominator(a: &DenominatorArgs) -> Run<Value> {
    if a.n < 0 {
        return Err(Failure::Usage("--n must be nonnegative".into()));
    }
    let (l, p) = root_set(&a.roots)?;
    let datum = RootDatum::new(l.clone(), p.clone())?;
    let sum = sum_side(&datum, a.n)?;
    let table = solve_multiplicities(&datum, a.n)?;
    let anti = match datum.rho() {
        Some(_) => Value::from(anti_invariance_check(&datum, a.n)?),
        None => Value::Null,
    };
    let mults: Vec<Value> = table
        .mults
        .iter()
        .map(|(g, m)| {
            let v = datum.to_lattice(g);
            json!({
                "grade": g,
                "root": vec_json(&v),
                "norm": int_json(&l.norm(&v)),
                "mult": int_json(m),
                "real": table.real.contains(g),
            })
        })
        .collect();
    let sum_terms: Vec<Value> = sum.terms().map(|(g, c)| json!({"grade": g, "coeff": int_json(c)})).collect();
    Ok(report(
        Some(&l),
        json!({"command": "denominator", "roots": vectors_json(p.roots()), "n": a.n}),
        json!({
            "sum_side": sum_terms,
            "multiplicities": mults,
            "residual_zero": table.residual_zero,
            "w_invariant": w_invariance_violations(&datum, &table).is_empty(),
            "anti_invariant": anti,
        }),
    ))
}

fn qseries(a: &QseriesArgs) -> Run<Value> {
    let ints_json = |xs: &[Int]| Value::Array(xs.iter().map(int_json).collect());
    match (a.eta_power, a.cusp_identity, &a.coeffs) {
        (Some(e), None, _) => {
            let n = a.n.ok_or_else(|| Failure::Usage("--eta-power needs --n".into()))?;
            Ok(ints_json(eta_power(e, n).coeffs()))
        }
        (None, Some(dir), Some(c)) => {
            let input: Vec<Int> = parse_ints(c)?.into_iter().map(Int::from).collect();
            let n = a.n.unwrap_or(input.len());
            let dir = match dir {
                CuspDirection::Tau2m => Direction::TauToM,
                CuspDirection::M2tau => Direction::MToTau,
            };
            Ok(ints_json(&cusp_identity(dir, &input, n)?))
        }
        _ => Err(Failure::Usage("give either --eta-power or --cusp-identity with --coeffs".into())),
    }
}

fn family(a: &FamilyArgs) -> Run<Value> {
    let l = load_lattice(&a.lattice.lattice)?;
    let (da, db) = two_walls(&a.translation)?;
    let seeds = parse_vectors(&a.seeds)?;
    check_dims(&l, &seeds)?;
    check_dims(&l, &[da.clone(), db.clone()])?;
    let [e0, f01, f02] = <[Vector; 3]>::try_from(seeds)
        .map_err(|_| Failure::Usage("seeds must be three vectors `e0;f01;f02`".into()))?;
    let phi = parabolic_translation(&l, &da, &db)?;
    let s = build_pk_sample(&l, &phi, &e0, &f01, &f02, a.k, a.window)?;
    let weyl_ok = s.roots.roots().iter().all(|r| {
        let lhs = l.form_rat(&s.rho, &crate::arith::to_rat(r)) * Rat::from_integer(Int::from(2));
        (lhs + Rat::from_integer(l.norm(r))).is_zero()
    });
    Ok(report(
        Some(&l),
        json!({
            "command": "family",
            "translation": a.translation,
            "seeds": a.seeds,
            "k": a.k,
            "window": a.window,
        }),
        json!({
            "translation_matrix": matrix_json(phi.matrix()),
            "cusp": vec_json(&s.cusp),
            "rho": rat_vec_json(&s.rho),
            "roots": vectors_json(s.roots.roots()),
            "shifts": s.shifts,
            "norms": s.roots.norms(&l).iter().map(int_json).collect::<Vec<_>>(),
            "crystallographic": true,
            "non_obtuse": true,
            "weyl_property": weyl_ok,
            "all_pairings_nonpositive": s.roots.roots().iter().all(|r| !l.form(&s.cusp, r).is_positive()),
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> Outcome {
        dispatch(std::iter::once("lorentz-roots").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_cli(&[]).code, 2);
        assert_eq!(run_cli(&["vinberg", "--lattice", "ex134.json"]).code, 2);
        assert_eq!(run_cli(&["info", "--lattice", "/nonexistent/lattice.json"]).code, 2);
        assert_eq!(run_cli(&["qseries", "--n", "3"]).code, 2);
        assert_eq!(run_cli(&["info", "--lattice", "ex134.json", "--threads", "0"]).code, 2);
    }

    #[test]
    fn domain_errors_exit_one() {
        let o = run_cli(&["vinberg", "--lattice", "ex134.json", "--controller", "1,0,0", "--norms", "2"]);
        assert_eq!(o.code, 1);
        assert!(o.stdout.is_empty());
        assert!(o.stderr.contains("timelike"));
    }

    #[test]
    fn help_exits_zero() {
        let o = run_cli(&["--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("vinberg"));
    }

    #[test]
    fn qseries_arrays() {
        assert_eq!(run_cli(&["qseries", "--eta-power", "-24", "--n", "2"]).stdout, "[1,24,324]\n");
        let o = run_cli(&["qseries", "--cusp-identity", "tau2m", "--coeffs", "24,24,24"]);
        assert_eq!(o.stdout, "[24,-252,1472]\n");
    }
}
