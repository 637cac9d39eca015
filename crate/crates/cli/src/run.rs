//! Command dispatch.

use rayon::prelude::*;
use serde_json::{json, Value};

use mixmult::fc::{all_types, build_sequence, verify_reduction, SearchOptions};
use mixmult::free_algebra::{free_algebra_report, FreeAlgebra};
use mixmult::local::LocalRingModel;
use mixmult::mixed::{mixed_multiplicities, HilbertTable, ProblemInstance, Route};
use mixmult::rng::derive_seed;
use mixmult::sample::{RandomInstance, SampleShape};
use mixmult::{Ideal, RingContext};

use crate::error::{CliError, EXIT_FINDING, EXIT_INCONCLUSIVE, EXIT_OK};
use crate::problem::ProblemFile;
use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Table,
    Mixed,
    Fc,
    Verify,
    Hsm,
    Free,
    Difftest,
}

impl Command {
    pub fn needs_problem(self) -> bool {
        !matches!(self, Command::Free | Command::Difftest)
    }
}

/// Flags shared by the commands; unset values fall back to the problem file
/// and then to the instance defaults.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub base0: Option<u32>,
    pub window: Option<u32>,
    pub retries: Option<u32>,
    pub ty: Option<Vec<u32>>,
    pub all: bool,
    pub h: Option<Vec<String>>,
    pub d: Option<usize>,
    pub t: Option<Vec<u32>>,
    pub j: Option<Vec<String>>,
    pub kill: Option<Vec<usize>>,
    pub count: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub exit: i32,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome {
            json,
            exit: EXIT_OK,
        }
    }
}

struct Settings {
    seed: u64,
    base0: u32,
    window: u32,
    retries: u32,
}

fn settings(file: &ProblemFile, p: &ProblemInstance, o: &Options) -> Settings {
    Settings {
        seed: o.seed.or(file.seed).unwrap_or(0),
        base0: o.base0.or(file.base0).unwrap_or_else(|| p.default_base0()),
        window: o
            .window
            .or(file.window)
            .unwrap_or_else(|| p.default_window()),
        retries: o
            .retries
            .or(file.retries)
            .unwrap_or(SearchOptions::default().retries),
    }
}

pub fn run(cmd: Command, file: Option<&ProblemFile>, o: &Options) -> Result<Outcome, CliError> {
    match cmd {
        Command::Free => return free(o),
        Command::Difftest => return difftest(o),
        _ => {}
    }
    let file = file.ok_or_else(|| CliError::input("this command needs a problem file"))?;
    let p = file.instance()?;
    let s = settings(file, &p, o);
    let table = || -> Result<HilbertTable, CliError> { Ok(p.build_table(s.base0, s.window)?) };
    let search = |fc1_base: u32| SearchOptions {
        retries: s.retries,
        fc1_base: Some(fc1_base),
        check_fc3: true,
    };
    match cmd {
        Command::Table => Ok(Outcome::ok(report::table_json(&table()?))),
        Command::Mixed => {
            let r = mixed_multiplicities(&table()?, Route::DirectTable)?;
            Ok(Outcome::ok(report::mixed_json(&r)))
        }
        Command::Fc => {
            let k =
                o.ty.as_ref()
                    .ok_or_else(|| CliError::input("`fc` needs --type"))?;
            let t = table()?;
            let r = build_sequence(&p, k, s.seed, &search(t.base[0]))?;
            Ok(Outcome::ok(report::record_json(&r)))
        }
        Command::Verify => {
            let t = table()?;
            let types = match (&o.ty, o.all) {
                (Some(k), false) => vec![k.clone()],
                (None, true) => all_types(&p),
                _ => {
                    return Err(CliError::input(
                        "`verify` needs exactly one of --type and --all",
                    ))
                }
            };
            let mut exit = EXIT_OK;
            let mut results = Vec::new();
            for k in &types {
                let r = verify_reduction(&p, &t, k, s.seed, &search(t.base[0]))?;
                exit = worst(
                    exit,
                    match r.agrees() {
                        Some(true) => EXIT_OK,
                        Some(false) => EXIT_FINDING,
                        None => EXIT_INCONCLUSIVE,
                    },
                );
                results.push(report::verify_json(&r));
            }
            let json = if o.all {
                json!({ "results": results })
            } else {
                results.pop().expect("one type")
            };
            Ok(Outcome { json, exit })
        }
        Command::Hsm => {
            let ctx = p.model().ctx();
            let gens = o.h.clone().unwrap_or_default();
            let polys = gens
                .iter()
                .map(|g| ctx.parse_homogeneous(g))
                .collect::<Result<Vec<_>, _>>()?;
            let h = Ideal::new(ctx.ring(), polys)?;
            let sd = p.model().hilbert_samuel(p.j(), &h)?;
            Ok(Outcome::ok(report::samuel_json(&sd)))
        }
        Command::Free | Command::Difftest => unreachable!("handled above"),
    }
}

/// Findings outrank inconclusive runs, which outrank successes.
fn worst(a: i32, b: i32) -> i32 {
    let rank = |c: i32| match c {
        EXIT_FINDING => 2,
        EXIT_INCONCLUSIVE => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

const FREE_VARS: [&str; 7] = ["x", "y", "z", "w", "u", "v", "s"];

fn free(o: &Options) -> Result<Outcome, CliError> {
    let d = o.d.ok_or_else(|| CliError::input("`free` needs --d"))?;
    if d == 0 || d > FREE_VARS.len() {
        return Err(CliError::input(format!(
            "--d must be between 1 and {}",
            FREE_VARS.len()
        )));
    }
    let t =
        o.t.clone()
            .ok_or_else(|| CliError::input("`free` needs --t"))?;
    let ctx = RingContext::with_vars(&FREE_VARS[..d])?;
    let j = match &o.j {
        Some(gens) => Ideal::parse(&ctx, gens)?,
        None => Ideal::parse(&ctx, &FREE_VARS[..d])?,
    };
    let algebra = FreeAlgebra::new(LocalRingModel::regular(ctx), j, t.clone())?;
    let base0 = o.base0.unwrap_or_else(|| algebra.default_base0());
    let r = free_algebra_report(&algebra, base0, o.window)?;
    let kill: Vec<usize> = o.kill.clone().unwrap_or_else(|| vec![1]);
    if kill.contains(&0) {
        return Err(CliError::input("--kill takes 1-based block indices"));
    }
    let dirs: Vec<usize> = kill.iter().map(|k| k - 1).collect();
    let ledger = algebra.quotient_ledger(&dirs)?;
    let mut json = report::mixed_json(&r);
    json["d"] = json!(d);
    json["t"] = json!(t);
    json["diagonal_dim"] = json!(ledger.dims[0]);
    let mut q = report::ledger_json(&ledger);
    q["kill"] = json!(kill);
    json["quotient_ledger"] = q;
    Ok(Outcome::ok(json))
}

/// Base and problem text of the `i`-th differential instance for `seed`.
pub fn difftest_case(seed: u64, i: u64) -> (RandomInstance, u32) {
    let inst = RandomInstance::generate(derive_seed(seed, i), SampleShape::default());
    let base0 = 1 + (derive_seed(seed ^ 0x5eed, i) % 6) as u32;
    (inst, base0)
}

pub const DIFFTEST_WINDOW: u32 = 2;

fn difftest(o: &Options) -> Result<Outcome, CliError> {
    let count = o.count.unwrap_or(50);
    let seed = o.seed.unwrap_or(0);
    let cases: Vec<Value> = (0..count)
        .into_par_iter()
        .map(|i| {
            let (inst, base0) = difftest_case(seed, i);
            let problem = ProblemFile::from_random(&inst).print();
            let both = || -> Result<(Vec<i64>, Vec<i64>), CliError> {
                let p = inst.instantiate()?;
                let staircase = p.evaluate_grid(base0, DIFFTEST_WINDOW)?;
                let gb = p.general_path()?.evaluate_grid(base0, DIFFTEST_WINDOW)?;
                Ok((staircase, gb))
            };
            match both() {
                Ok((a, b)) => {
                    let mut v = json!({ "index": i, "base0": base0, "points": a.len(), "agree": a == b });
                    if a != b {
                        v["problem"] = json!(problem);
                        v["staircase"] = json!(a);
                        v["gb"] = json!(b);
                    }
                    v
                }
                Err(e) => json!({ "index": i, "base0": base0, "problem": problem, "error": e.to_json()["error"] }),
            }
        })
        .collect();
    let agree = cases.iter().filter(|c| c["agree"] == json!(true)).count();
    let errors = cases.iter().filter(|c| c.get("error").is_some()).count();
    let exit = if agree + errors < cases.len() {
        EXIT_FINDING
    } else if errors > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        json: json!({
            "count": count,
            "seed": seed,
            "window": DIFFTEST_WINDOW,
            "agree": agree,
            "mismatches": cases.len() - agree - errors,
            "errors": errors,
            "instances": cases,
        }),
        exit,
    })
}
