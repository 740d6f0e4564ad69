//! Command-line runner for the motivic class engine.
//!
//! Exit codes: 0 when every assertion passes (discrepancies are allowed
//! unless --strict), 1 when any assertion fails (or any discrepancy under
//! --strict), 2 on input errors.

use std::io::Write;
use std::process::ExitCode;

use motivic::context::GaloisContext;
use motivic::poly::render_poly;
use motivic::scenario::{
    run_all, scenario_basics, scenario_remark_grid, scenario_theorem_1_5, scenario_theorem_1_6,
    scenario_torus_t, ScenarioReport,
};
use motivic::torus::{
    quasi_split_class, torus_class_from_lattice, weil_restriction_p1_class, LatticeClassCatalog,
};

const USAGE: &str = "usage:
  motivic check <thm15|thm16|lemma-t|basics|remark|all> [flags]
  motivic compute <qs-class|p1-class|marks|burnside-mul|torus-class> [inputs] [flags]

flags:
  --context <file>   load the Galois context from JSON (default: built-in biquadratic C2xC2)
  --m <int>          torsion parameter for thm16 (torsion order n = 2m; default 1)
  --r <int>          number of extra multiplicative-group factors for thm15 (default 1)
  --seed <int>       seed for randomized consistency checks (default 42)
  --json             emit reports as JSON
  --out <file>       write the report to a file instead of standard output
  --strict           treat discrepancies as failures

compute inputs:
  --gset <spec>      G-set: regular | point | trivial:<n> | coset:<LABEL>, joined by '+'
  --elem <expr>      Burnside element, e.g. \"2+[K]-[E1]-[E2]-[E12]\"
  --a, --b <expr>    factors for burnside-mul
  --lattice <name>   built-in lattice: M | P | Q | N | sign | D
";

struct Invocation {
    command: String,
    target: String,
    context: Option<String>,
    m: i64,
    r: u32,
    seed: u64,
    json: bool,
    out: Option<String>,
    strict: bool,
    gset: Option<String>,
    elem: Option<String>,
    a: Option<String>,
    b: Option<String>,
    lattice: Option<String>,
}

fn fail_input(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("{USAGE}");
    ExitCode::from(2)
}

fn parse_args(args: &[String]) -> Result<Invocation, String> {
    if args.len() < 2 {
        return Err("missing command".into());
    }
    let mut inv = Invocation {
        command: args[0].clone(),
        target: args[1].clone(),
        context: None,
        m: 1,
        r: 1,
        seed: 42,
        json: false,
        out: None,
        strict: false,
        gset: None,
        elem: None,
        a: None,
        b: None,
        lattice: None,
    };
    let mut i = 2;
    while i < args.len() {
        let flag = args[i].clone();
        let take_value = |i: &mut usize| -> Result<String, String> {
            *i += 1;
            args.get(*i)
                .cloned()
                .ok_or_else(|| format!("flag {flag} needs a value"))
        };
        match args[i].as_str() {
            "--context" => inv.context = Some(take_value(&mut i)?),
            "--m" => {
                inv.m = take_value(&mut i)?
                    .parse()
                    .map_err(|_| "flag --m needs an integer".to_string())?
            }
            "--r" => {
                inv.r = take_value(&mut i)?
                    .parse()
                    .map_err(|_| "flag --r needs a non-negative integer".to_string())?
            }
            "--seed" => {
                inv.seed = take_value(&mut i)?
                    .parse()
                    .map_err(|_| "flag --seed needs an integer".to_string())?
            }
            "--json" => inv.json = true,
            "--out" => inv.out = Some(take_value(&mut i)?),
            "--strict" => inv.strict = true,
            "--gset" => inv.gset = Some(take_value(&mut i)?),
            "--elem" => inv.elem = Some(take_value(&mut i)?),
            "--a" => inv.a = Some(take_value(&mut i)?),
            "--b" => inv.b = Some(take_value(&mut i)?),
            "--lattice" => inv.lattice = Some(take_value(&mut i)?),
            other => return Err(format!("unknown flag {other:?}")),
        }
        i += 1;
    }
    Ok(inv)
}

fn load_context(inv: &Invocation) -> Result<GaloisContext, String> {
    match &inv.context {
        None => Ok(GaloisContext::biquadratic()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read context file {path:?}: {e}"))?;
            GaloisContext::from_json(&text).map_err(|e| e.to_string())
        }
    }
}

fn emit(inv: &Invocation, text: String) -> Result<(), String> {
    match &inv.out {
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {path:?}: {e}")),
    }
}

fn render_reports(inv: &Invocation, reports: &[ScenarioReport]) -> String {
    if inv.json {
        if reports.len() == 1 {
            let mut s = reports[0].to_json();
            s.push('\n');
            s
        } else {
            let items: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
            format!("[{}]\n", items.join(","))
        }
    } else {
        reports
            .iter()
            .map(|r| r.render_text())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn cmd_check(inv: &Invocation) -> ExitCode {
    let ctx = match load_context(inv) {
        Ok(c) => c,
        Err(e) => return fail_input(&e),
    };
    let reports = match inv.target.as_str() {
        "basics" => scenario_basics(&ctx, inv.seed).map(|r| vec![r]),
        "lemma-t" => scenario_torus_t(&ctx).map(|r| vec![r]),
        "thm15" => scenario_theorem_1_5(&ctx, inv.r).map(|r| vec![r]),
        "thm16" => scenario_theorem_1_6(&ctx, inv.m).map(|r| vec![r]),
        "remark" => scenario_remark_grid(&ctx).map(|r| vec![r]),
        "all" => run_all(&ctx, inv.seed, inv.m, inv.r),
        other => return fail_input(&format!("unknown scenario {other:?}")),
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return fail_input(&e.to_string()),
    };
    if let Err(e) = emit(inv, render_reports(inv, &reports)) {
        return fail_input(&e);
    }
    let failed = reports.iter().any(|r| r.has_failure())
        || (inv.strict && reports.iter().any(|r| r.has_discrepancy()));
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

/// Resolve a lattice argument: a built-in name or "@file.json" in the
/// {"rank":...,"action":{"s1":[[...]],...}} format.
fn resolve_lattice(
    ctx: &GaloisContext,
    name: &str,
) -> Result<motivic::lattice::GaloisLattice, String> {
    use motivic::lattice::biquadratic as bi;
    if let Some(path) = name.strip_prefix('@') {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
        let v: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| format!("{path}: {e} (at line {}, column {})", e.line(), e.column()))?;
        return ctx.lattice_from_json(path, &v).map_err(|e| e.to_string());
    }
    let g = ctx.group();
    match name {
        "M" => Ok(bi::diag_quotient(g)),
        "P" => Ok(bi::twisted_plane(g)),
        "Q" => Ok(bi::pair_permutation(g)),
        "N" => Ok(bi::sum_zero(g)),
        "sign" => Ok(bi::sign(g)),
        "D" => Ok(bi::norm_one_product(g)),
        other => Err(format!(
            "unknown built-in lattice {other:?} (try M, P, Q, N, sign, D, or @file.json)"
        )),
    }
}

/// Resolve a G-set argument: a spec string like "regular" or "coset:E12", or
/// "@file.json" holding a {"transitive":[...]} / {"action":[...]} fragment
/// (optionally wrapped in a {"gset": ...} object).
fn resolve_gset(ctx: &GaloisContext, arg: &str) -> Result<motivic::perm::GSet, String> {
    if let Some(path) = arg.strip_prefix('@') {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {path:?}: {e}"))?;
        let v: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| format!("{path}: {e} (at line {}, column {})", e.line(), e.column()))?;
        let fragment = v.get("gset").unwrap_or(&v);
        ctx.gset_from_json(fragment).map_err(|e| e.to_string())
    } else {
        ctx.parse_gset(arg).map_err(|e| e.to_string())
    }
}

fn cmd_compute(inv: &Invocation) -> ExitCode {
    let ctx = match load_context(inv) {
        Ok(c) => c,
        Err(e) => return fail_input(&e),
    };
    let result: Result<String, String> = match inv.target.as_str() {
        "qs-class" => inv
            .gset
            .as_deref()
            .ok_or_else(|| "qs-class needs --gset".to_string())
            .and_then(|s| resolve_gset(&ctx, s))
            .and_then(|g| quasi_split_class(&ctx, &g).map_err(|e| e.to_string()))
            .map(|p| render_poly(&ctx, &p)),
        "p1-class" => inv
            .gset
            .as_deref()
            .ok_or_else(|| "p1-class needs --gset".to_string())
            .and_then(|s| resolve_gset(&ctx, s))
            .and_then(|g| weil_restriction_p1_class(&ctx, &g).map_err(|e| e.to_string()))
            .map(|p| render_poly(&ctx, &p)),
        "marks" => inv
            .elem
            .as_deref()
            .ok_or_else(|| "marks needs --elem".to_string())
            .and_then(|s| ctx.parse_element(s).map_err(|e| e.to_string()))
            .map(|e| ctx.tables().marks(&e).to_string()),
        "burnside-mul" => {
            let a = inv
                .a
                .as_deref()
                .ok_or_else(|| "burnside-mul needs --a".to_string());
            let b = inv
                .b
                .as_deref()
                .ok_or_else(|| "burnside-mul needs --b".to_string());
            a.and_then(|a| b.map(|b| (a, b))).and_then(|(a, b)| {
                let ea = ctx.parse_element(a).map_err(|e| e.to_string())?;
                let eb = ctx.parse_element(b).map_err(|e| e.to_string())?;
                let prod = ctx.tables().mul(&ea, &eb).map_err(|e| e.to_string())?;
                Ok(ctx.render_element(&prod))
            })
        }
        "torus-class" => inv
            .lattice
            .as_deref()
            .ok_or_else(|| "torus-class needs --lattice".to_string())
            .and_then(|name| resolve_lattice(&ctx, name))
            .and_then(|lat| {
                let mut catalog = LatticeClassCatalog::new();
                // the rank-2 twisted plane is recognized through its division-route class
                let mut registry = motivic::stack::SpecialRegistry::new(&ctx);
                if let Ok(route) = motivic::scenario::division_route(&ctx, &mut registry) {
                    catalog.push(
                        motivic::lattice::biquadratic::twisted_plane(ctx.group()),
                        route.t.class,
                        "twisted plane",
                    );
                }
                torus_class_from_lattice(&ctx, &lat, &catalog, 2)
                    .map(|r| render_poly(&ctx, &r.class))
                    .ok_or_else(|| {
                        "no verified route to this torus class within the search bounds".to_string()
                    })
            }),
        other => return fail_input(&format!("unknown compute kind {other:?}")),
    };
    match result {
        Ok(text) => match emit(inv, format!("{text}\n")) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail_input(&e),
        },
        Err(e) => fail_input(&e),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inv = match parse_args(&args) {
        Ok(inv) => inv,
        Err(e) => return fail_input(&e),
    };
    match inv.command.as_str() {
        "check" => cmd_check(&inv),
        "compute" => cmd_compute(&inv),
        other => fail_input(&format!("unknown command {other:?}")),
    }
}
