//! `cyclosim`: command-line front end for the similarity engine.
//!
//! Every subcommand prints one JSON document on standard output. Exit codes:
//! 0 on a computed answer, 2 on bad input or a failed precondition, 3 on an
//! internal invariant failure, 4 when a capacity bound is exceeded.

mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use cyclosim::classifier::{
    decide_similarity, decide_stable, enumerate_unstable, in_rt, order_in_rtop,
    parity_torsion_crosscheck_with, rtop_presentation, std_basis, Decision, DEFAULT_MAX_PAIRS,
};
use cyclosim::group_ring::{
    legal_gamma_indices, legal_sigma_v_params, verify_cond_b_unit, verify_identity_gamma,
    verify_identity_v, verify_sigma_v_factorization,
};
use cyclosim::normal::{a_prime_instance, k_invariant_order};
use cyclosim::oliver::{oliver_kernel_check, NormTable};
use cyclosim::rep::{parse_rep, RepLiteral, VirtualRep};
use cyclosim::tate::{tate, C2Module, C2ModuleJson, UnitModuleOptions};
use cyclosim::{Error, Result};

#[derive(Parser)]
#[command(name = "cyclosim", version, about = "Topological similarity of cyclic group representations")]
struct Cli {
    /// Print a plain-text table instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    table: bool,
    /// Print JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Group {
    /// The group is C(2^r).
    #[arg(long)]
    r: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Decide V1 + W ~ V2 + W.
    Decide {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
        #[arg(long, default_value = "")]
        w: String,
        /// Also compare parity with the torsion class of the units.
        #[arg(long)]
        crosscheck: bool,
        /// Exponent bound for the unit relation search.
        #[arg(long, default_value_t = 3)]
        exp_bound: i64,
    },
    /// Decide whether V1 and V2 become similar after adding some W.
    Stable {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
    },
    /// Invariant factors of the quotient by the similarity lattice.
    Rtop {
        #[command(flatten)]
        group: Group,
    },
    /// The standard basis, and optionally the coordinates of an element.
    Basis {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        x: Option<String>,
    },
    /// Order of an element in the quotient by the similarity lattice.
    Order {
        #[command(flatten)]
        group: Group,
        #[arg(long)]
        x: String,
    },
    /// Weight congruence rows, or k-invariant orders when --q is given.
    Normal {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        i: Option<i64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        /// Sweep every admissible parameter for the given r.
        #[arg(long)]
        sweep: bool,
    },
    /// Group ring unit identities.
    Identities {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Tate cohomology of a module with involution, given as JSON or a path.
    Tate {
        #[arg(long)]
        module: String,
    },
    /// Decide every pair of free representations of a given dimension.
    Enumerate {
        #[command(flatten)]
        group: Group,
        /// Complex dimension of the representations.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value = "")]
        w: String,
        #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
        max_enum: u64,
        /// List every pair, not only the similar ones.
        #[arg(long)]
        all: bool,
    },
    /// Kernel check for the norm-element table.
    Oliver {
        #[arg(long)]
        n: u32,
    },
}

fn order_of(r: u32) -> Result<u64> {
    if r == 0 || r > 62 {
        return Err(Error::Domain(format!("r = {r} is out of range")));
    }
    Ok(1u64 << r)
}

/// A term list such as `"t, t9"` or a JSON literal `{"N": 16, ...}`.
fn rep_arg(n: u64, s: &str) -> Result<VirtualRep> {
    if s.trim_start().starts_with('{') {
        let lit: RepLiteral = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if lit.n != n {
            return Err(Error::Domain(format!("literal is over C({}), expected C({n})", lit.n)));
        }
        return lit.to_rep();
    }
    if s.trim().is_empty() {
        return Ok(VirtualRep::zero(n));
    }
    parse_rep(n, s)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

fn missing(flag: &str) -> Error {
    Error::Parse(format!("--{flag} is required here"))
}

fn run(cmd: Command) -> Result<Value> {
    match cmd {
        Command::Decide { group, v1, v2, w, crosscheck, exp_bound } => {
            let n = order_of(group.r)?;
            let (v1, v2, w) = (rep_arg(n, &v1)?, rep_arg(n, &v2)?, rep_arg(n, &w)?);
            let verdict = to_value(&decide_similarity(&v1, &v2, &w)?)?;
            if !crosscheck {
                return Ok(verdict);
            }
            let opts = UnitModuleOptions { exponent_bound: exp_bound, ..Default::default() };
            let report = parity_torsion_crosscheck_with(&v1.sub(&v2)?, &opts)?;
            Ok(json!({ "verdict": verdict, "crosscheck": to_value(&report)? }))
        }
        Command::Stable { group, v1, v2 } => {
            let n = order_of(group.r)?;
            to_value(&decide_stable(&rep_arg(n, &v1)?, &rep_arg(n, &v2)?)?)
        }
        Command::Rtop { group } => to_value(&rtop_presentation(group.r)?),
        Command::Basis { group, x } => {
            let b = std_basis(group.r)?;
            let elements: Vec<Value> = b
                .elements()
                .iter()
                .enumerate()
                .map(|(j, (s, i))| json!({ "label": format!("a{s}({i})"), "element": b.element(j).to_string() }))
                .collect();
            let mut out = json!({ "r": group.r, "elements": elements });
            if let Some(x) = x {
                let c = b.to_coords(&rep_arg(b.order(), &x)?)?;
                out["coordinates"] = to_value(&c)?["coords"].take();
            }
            Ok(out)
        }
        Command::Order { group, x } => {
            let n = order_of(group.r)?;
            let x = rep_arg(n, &x)?;
            let coeffs = in_rt(&x)?;
            Ok(json!({
                "x": x.to_string(),
                "order": order_in_rtop(&x)?,
                "in_rt": coeffs.is_some(),
                "rt_coefficients": coeffs.map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>()),
            }))
        }
        Command::Normal { r, s, i, k, q, sweep } => normal(r, s, i, k, q, sweep),
        Command::Identities { q, r } => identities(q, r),
        Command::Tate { module } => {
            let text = if module.trim_start().starts_with('{') {
                module
            } else {
                std::fs::read_to_string(&module).map_err(|e| Error::Parse(format!("{module}: {e}")))?
            };
            let doc: C2ModuleJson = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let m = C2Module::from_json(&doc)?;
            let group = |d: u8| -> Result<Value> {
                let h = tate(&m, d)?;
                Ok(json!({ "invariant_factors": h.invariant_factors_u64(), "order": h.order().to_string() }))
            };
            Ok(json!({ "gens": m.n_gens(), "h0": group(0)?, "h1": group(1)? }))
        }
        Command::Enumerate { group, dim, w, max_enum, all } => {
            let w = rep_arg(order_of(group.r)?, &w)?;
            let pairs = enumerate_unstable(group.r, dim, &w, max_enum)?;
            let yes = pairs.iter().filter(|p| p.verdict.decision == Decision::Yes).count();
            let shown: Vec<_> = pairs
                .iter()
                .filter(|p| all || p.verdict.decision == Decision::Yes)
                .collect();
            Ok(json!({
                "r": group.r,
                "dim": dim,
                "w": w.to_string(),
                "pairs": pairs.len(),
                "yes": yes,
                "results": to_value(&shown)?,
            }))
        }
        Command::Oliver { n } => to_value(&oliver_kernel_check(n, &NormTable)?),
    }
}

fn normal(r: u32, s: Option<u32>, i: Option<i64>, k: Option<u64>, q: Option<u64>, sweep: bool) -> Result<Value> {
    if let Some(q) = q {
        let rows = if sweep {
            let mut rows = Vec::new();
            for s in 1..=r {
                for i in (1..2 * q * (1u64 << r)).step_by(2).filter(|&i| cyclosim::arith::gcd(i, q) == 1) {
                    rows.push(to_value(&k_invariant_order(i, s, r, q)?)?);
                }
            }
            rows
        } else {
            let s = s.ok_or_else(|| missing("s"))?;
            let i = i.ok_or_else(|| missing("i"))?;
            let i = u64::try_from(i).map_err(|_| Error::Domain("i must be positive".into()))?;
            vec![to_value(&k_invariant_order(i, s, r, q)?)?]
        };
        return Ok(Value::Array(rows));
    }
    if !sweep {
        let s = s.ok_or_else(|| missing("s"))?;
        let i = i.ok_or_else(|| missing("i"))?;
        let k = k.ok_or_else(|| missing("k"))?;
        return to_value(&a_prime_instance(r, s, i, k)?);
    }
    let mut rows = Vec::new();
    for s in 1..=r.saturating_sub(2) {
        for i in (1..1i64 << (r - s)).step_by(4) {
            for k in 1..=1u64 << s {
                rows.push(to_value(&a_prime_instance(r, s, i, k)?)?);
            }
        }
    }
    Ok(Value::Array(rows))
}

fn identities(q: Option<u64>, r: Option<u32>) -> Result<Value> {
    if q.is_none() && r.is_none() {
        return Err(Error::Parse("give --q, --r or both".into()));
    }
    let mut out = serde_json::Map::new();
    if let Some(q) = q {
        out.insert("v".into(), to_value(&verify_identity_v(q)?)?);
        let gamma = legal_gamma_indices(q)
            .into_iter()
            .map(|j| verify_identity_gamma(q, j).and_then(|rep| to_value(&rep)))
            .collect::<Result<Vec<_>>>()?;
        out.insert("gamma".into(), Value::Array(gamma));
    }
    if let Some(r) = r {
        let fact = legal_sigma_v_params(r)
            .into_iter()
            .map(|(s, i)| verify_sigma_v_factorization(r, s, i).and_then(|rep| to_value(&rep)))
            .collect::<Result<Vec<_>>>()?;
        out.insert("sigma_v".into(), Value::Array(fact));
        out.insert("cond_b".into(), to_value(&verify_cond_b_unit(r)?)?);
    }
    Ok(Value::Object(out))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) => 3,
        Error::CapacityExceeded(_) => 4,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Precondition(_) => "precondition",
        Error::NotDivisible(_) => "not_divisible",
        Error::NotInSpan(_) => "not_in_span",
        Error::CapacityExceeded(_) => "capacity_exceeded",
        Error::Unsupported(_) => "unsupported",
        Error::Parse(_) => "parse",
        Error::Internal(_) => "internal",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match run(cli.command) {
        Ok(v) => (v, 0),
        Err(e) => {
            eprintln!("cyclosim: {e}");
            (json!({ "error": error_kind(&e), "message": e.to_string() }), exit_code(&e))
        }
    };
    let text = if cli.table {
        table::render(&value)
    } else {
        serde_json::to_string_pretty(&value).expect("JSON values always serialize") + "\n"
    };
    // A closed pipe is not an error worth reporting.
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(code)
}
