//! Command-line dispatch. Every subcommand is deterministic: identical
//! inputs give byte-identical reports. Exit codes: 0 yes/tractable/pass,
//! 1 no/NP-complete/counterexample, 2 usage or input error, 3 budget
//! exceeded.

use std::fmt::Write as _;

use crate::cert::{
    classify_3element, classify_simple_ksurj, derive_certificate, render_certificate,
    ClassificationVerdict,
};
use crate::clone::free_algebra;
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::format::{parse_structure, serialize_structure};
use crate::hom::{count_homs, counting_probe, enumerate_homs, find_hom, ProbeFamily};
use crate::paper;
use crate::rewrite::{enforce_identities, parse_tspec, qfpp_reduce, validate_spec};
use crate::solve::{
    classify_boolean, prop5_solve, schaefer_check, sheffer_solve, z_solve, BooleanVerdict,
    PReason,
};
use crate::structure::Structure;
use crate::tct::{
    all_congruences, find_type1free_chain, render_lattice, trace_report, type_of_cover,
    ChainSearch,
};
use crate::term::parse_identities;
use crate::width::{
    build_not23_instance, kl_minimality, paper_p_system, verify_system, width_harness,
    HarnessOutcome,
};

/// The outcome of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub report: String,
}

fn outcome(exit_code: i32, report: String) -> CommandOutcome {
    CommandOutcome { exit_code, report }
}

struct Ctx {
    budget: usize,
    seed: u64,
    porcelain: bool,
    positional: Vec<String>,
    options: Vec<(String, String)>,
    flags: Vec<String>,
}

const VALUE_OPTIONS: [&str; 17] = [
    "--source", "--target", "--instance", "--ids", "--spec", "--from", "--to", "--alpha",
    "--beta", "-k", "-l", "-n", "--max-n", "--samples", "--family", "--files", "--dump",
];

fn parse_args(argv: &[String]) -> Result<Ctx> {
    let mut ctx = Ctx {
        budget: crate::clone::DEFAULT_TABLE_BUDGET,
        seed: 1,
        porcelain: false,
        positional: Vec::new(),
        options: Vec::new(),
        flags: Vec::new(),
    };
    let mut i = 0;
    while i < argv.len() {
        let arg = &argv[i];
        if arg == "--budget" || arg == "--seed" {
            let v = argv
                .get(i + 1)
                .ok_or_else(|| Error::Usage(format!("{} needs a value", arg)))?;
            let n: u64 = v
                .parse()
                .map_err(|_| Error::Usage(format!("{} needs an integer, got `{}`", arg, v)))?;
            if arg == "--budget" {
                ctx.budget = n as usize;
            } else {
                ctx.seed = n;
            }
            i += 2;
        } else if arg == "--porcelain" {
            ctx.porcelain = true;
            i += 1;
        } else if VALUE_OPTIONS.contains(&arg.as_str()) {
            let v = argv
                .get(i + 1)
                .ok_or_else(|| Error::Usage(format!("{} needs a value", arg)))?;
            ctx.options.push((arg.clone(), v.clone()));
            i += 2;
        } else if arg.starts_with("--") {
            ctx.flags.push(arg.clone());
            i += 1;
        } else {
            ctx.positional.push(arg.clone());
            i += 1;
        }
    }
    Ok(ctx)
}

impl Ctx {
    fn opt(&self, name: &str) -> Option<&str> {
        self.options
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }

    fn required(&self, name: &str) -> Result<&str> {
        self.opt(name)
            .ok_or_else(|| Error::Usage(format!("missing {}", name)))
    }

    fn int(&self, name: &str, default: usize) -> Result<usize> {
        match self.opt(name) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::Usage(format!("{} needs an integer, got `{}`", name, v))),
        }
    }

    fn required_int(&self, name: &str) -> Result<usize> {
        self.required(name)?
            .parse()
            .map_err(|_| Error::Usage(format!("{} needs an integer", name)))
    }

    fn has_flag(&self, name: &str) -> bool {
        self.flags.iter().any(|f| f == name)
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_string(),
        msg: e.to_string(),
    })
}

fn load_structure(path: &str) -> Result<Structure> {
    if let Some(s) = paper::builtin_instance(path) {
        return Ok(s);
    }
    parse_structure(&read_file(path)?)
}

fn load_identities(path: &str) -> Result<Vec<crate::term::Identity>> {
    if let Some(ids) = paper::builtin_identities(path) {
        return ids;
    }
    parse_identities(&read_file(path)?)
}

fn usage() -> String {
    "usage: finstr <command> [options]\n\
     \n\
     commands:\n\
     \x20 hom exists|count|enum --source X.finstr --target A.finstr [--surjective]\n\
     \x20 classify boolean|ksurj|simple A.finstr\n\
     \x20 congruences A.finstr [--types]\n\
     \x20 tct type|minsets A.finstr --alpha I --beta J\n\
     \x20 tct chain A.finstr\n\
     \x20 rewrite enforce --instance X.finstr --ids FILE.ids\n\
     \x20 rewrite reduce --instance X.finstr --spec FILE.tspec --from A.finstr --to B.finstr\n\
     \x20 free-algebra A.finstr -n N\n\
     \x20 probe counting --target A.finstr --family free-algebra|star-extension --max-n N\n\
     \x20 solve sheffer|z|prop5 X.finstr\n\
     \x20 solve brute --source X.finstr --target A.finstr\n\
     \x20 width minimality --source X.finstr --target A.finstr -k K -l L [--dump FILE]\n\
     \x20 width harness --target A.finstr -k K -l L --max-n N [--samples S]\n\
     \x20 width paper not23\n\
     \x20 paper example-4-12|prop-5-1|prop-6-1|sheffer|z-template\n\
     \n\
     global options: --budget N --seed N --porcelain\n\
     built-in instance names are accepted wherever a file is expected\n"
        .to_string()
}

/// Run one command; never panics on user input.
pub fn run(argv: &[String]) -> CommandOutcome {
    match dispatch(argv) {
        Ok(out) => out,
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded(_) => 3,
                _ => 2,
            };
            outcome(code, format!("error: {}\n{}", e, usage()))
        }
    }
}

fn dispatch(argv: &[String]) -> Result<CommandOutcome> {
    let ctx = parse_args(argv)?;
    let cmd: Vec<&str> = ctx.positional.iter().map(|s| s.as_str()).collect();
    match cmd.as_slice() {
        ["hom", mode, ..] => cmd_hom(&ctx, mode),
        ["classify", "boolean", file] => cmd_classify_boolean(&ctx, file),
        ["classify", "ksurj", file] => cmd_classify_ksurj(&ctx, file),
        ["classify", "simple", file] => cmd_classify_simple(&ctx, file),
        ["congruences", file] => cmd_congruences(&ctx, file),
        ["tct", "type", file] => cmd_tct_type(&ctx, file),
        ["tct", "minsets", file] => cmd_tct_minsets(&ctx, file),
        ["tct", "chain", file] => cmd_tct_chain(&ctx, file),
        ["rewrite", "enforce"] => cmd_rewrite_enforce(&ctx),
        ["rewrite", "reduce"] => cmd_rewrite_reduce(&ctx),
        ["free-algebra", file] => cmd_free_algebra(&ctx, file),
        ["probe", "counting"] => cmd_probe(&ctx),
        ["solve", "sheffer", file] => cmd_solve_sheffer(&ctx, file),
        ["solve", "z", file] => cmd_solve_z(&ctx, file),
        ["solve", "prop5", file] => cmd_solve_prop5(&ctx, file),
        ["solve", "brute"] => cmd_solve_brute(&ctx),
        ["width", "minimality"] => cmd_width_minimality(&ctx),
        ["width", "harness"] => cmd_width_harness(&ctx),
        ["width", "paper", "not23"] => cmd_width_paper(&ctx),
        ["paper", name] => cmd_paper(&ctx, name),
        [] => Ok(outcome(2, usage())),
        other => Err(Error::Usage(format!("unknown command {:?}", other))),
    }
}

fn witness_line(h: &[usize]) -> String {
    h.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_hom(ctx: &Ctx, mode: &str) -> Result<CommandOutcome> {
    let x = load_structure(ctx.required("--source")?)?;
    let a = load_structure(ctx.required("--target")?)?;
    let surjective = ctx.has_flag("--surjective");
    let mut report = String::new();
    let code;
    match mode {
        "exists" => {
            let found = find_hom(&x, &a, surjective)?;
            match &found {
                Some(h) => {
                    if ctx.porcelain {
                        writeln!(report, "result=yes").unwrap();
                        writeln!(report, "witness={}", witness_line(h)).unwrap();
                    } else {
                        writeln!(report, "homomorphism exists: {}", witness_line(h)).unwrap();
                    }
                    code = 0;
                }
                None => {
                    if ctx.porcelain {
                        writeln!(report, "result=no").unwrap();
                    } else {
                        writeln!(report, "no homomorphism").unwrap();
                    }
                    code = 1;
                }
            }
        }
        "count" => {
            let n = count_homs(&x, &a, surjective)?;
            if ctx.porcelain {
                writeln!(report, "count={}", n).unwrap();
            } else {
                writeln!(report, "{}", n).unwrap();
            }
            code = if n > 0 { 0 } else { 1 };
        }
        "enum" => {
            let homs = enumerate_homs(&x, &a, surjective)?;
            for h in &homs {
                writeln!(report, "{}", witness_line(h)).unwrap();
            }
            if ctx.porcelain {
                writeln!(report, "count={}", homs.len()).unwrap();
            }
            code = if homs.is_empty() { 1 } else { 0 };
        }
        other => return Err(Error::Usage(format!("unknown hom mode `{}`", other))),
    }
    Ok(outcome(code, report))
}

fn cmd_classify_boolean(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let a = load_structure(file)?;
    let verdict = classify_boolean(&a)?;
    let mut report = String::new();
    let code = match &verdict {
        BooleanVerdict::PolynomialTime(reason) => {
            let why = match reason {
                PReason::NonUnaryOperation(op) => format!("operation `{}` is not essentially unary", op),
                PReason::SchaeferPolymorphism(op) => {
                    format!("graph admits the {} polymorphism", op.name())
                }
            };
            if ctx.porcelain {
                writeln!(report, "verdict=polynomial-time").unwrap();
                writeln!(report, "reason={}", why).unwrap();
            } else {
                writeln!(report, "polynomial time: {}", why).unwrap();
            }
            0
        }
        BooleanVerdict::NPComplete { unary_ops } => {
            if ctx.porcelain {
                writeln!(report, "verdict=np-complete").unwrap();
            } else {
                writeln!(
                    report,
                    "NP-complete: all six polymorphisms refuted; operations {:?} essentially unary",
                    unary_ops
                )
                .unwrap();
            }
            1
        }
    };
    Ok(outcome(code, report))
}

fn verdict_report(
    ctx: &Ctx,
    a: &Structure,
    verdict: &ClassificationVerdict,
) -> (i32, String) {
    let mut report = String::new();
    let code = match verdict {
        ClassificationVerdict::InKsurjEff(cert) => {
            if ctx.porcelain {
                writeln!(report, "verdict=in-ksurj-eff").unwrap();
            } else {
                writeln!(report, "in Ksurj (effective); certificate:").unwrap();
                report.push_str(&render_certificate(cert, &a.algebraic_reduct(), 1));
            }
            0
        }
        ClassificationVerdict::NotInKsurj(w) => {
            if ctx.porcelain {
                writeln!(report, "verdict=not-in-ksurj").unwrap();
                writeln!(report, "probe={}", w.probe.family).unwrap();
            } else {
                writeln!(
                    report,
                    "not in Ksurj; unary-type cover ({}, {})",
                    w.cover.0.render(),
                    w.cover.1.render()
                )
                .unwrap();
                writeln!(report, "growth samples via {} instances:", w.probe.family).unwrap();
                for (size, all, surj) in &w.probe.counts {
                    writeln!(report, "  size {}: {} homs, {} surjective", size, all, surj)
                        .unwrap();
                }
            }
            1
        }
        ClassificationVerdict::Unknown(reason) => {
            if ctx.porcelain {
                writeln!(report, "verdict=unknown").unwrap();
            } else {
                writeln!(report, "unknown: {}", reason).unwrap();
            }
            3
        }
    };
    (code, report)
}

fn cmd_classify_ksurj(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let a = load_structure(file)?;
    let verdict = derive_certificate(&a, ctx.budget)?;
    let (code, report) = verdict_report(ctx, &a, &verdict);
    Ok(outcome(code, report))
}

fn cmd_classify_simple(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let a = load_structure(file)?;
    let verdict = classify_simple_ksurj(&a, ctx.budget)?;
    let (code, report) = verdict_report(ctx, &a, &verdict);
    Ok(outcome(code, report))
}

fn cmd_congruences(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let a = load_structure(file)?;
    let lat = all_congruences(&a, ctx.budget)?;
    let report = render_lattice(&a, &lat, ctx.has_flag("--types"), ctx.budget)?;
    Ok(outcome(0, report))
}

fn lattice_member(a: &Structure, budget: usize, index: usize) -> Result<Congruence> {
    let lat = all_congruences(a, budget)?;
    lat.congruences
        .get(index)
        .cloned()
        .ok_or_else(|| Error::Usage(format!("congruence index {} out of range", index)))
}

fn cmd_tct_type(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let a = load_structure(file)?;
    let alpha = lattice_member(&a, ctx.budget, ctx.required_int("--alpha")?)?;
    let beta = lattice_member(&a, ctx.budget, ctx.required_int("--beta")?)?;
    let t = type_of_cover(&a, &alpha, &beta, ctx.budget)?;
    let report = if ctx.porcelain {
        format!("typ={}\n", t)
    } else {
        format!("typ({}, {}) = {}\n", alpha.render(), beta.render(), t)
    };
    Ok(outcome(0, report))
}

fn cmd_tct_minsets(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let a = load_structure(file)?;
    let alpha = lattice_member(&a, ctx.budget, ctx.required_int("--alpha")?)?;
    let beta = lattice_member(&a, ctx.budget, ctx.required_int("--beta")?)?;
    let report_data = trace_report(&a, &alpha, &beta, ctx.budget)?;
    let mut report = String::new();
    let fmt_set = |s: &[usize]| {
        format!(
            "{{{}}}",
            s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
        )
    };
    for s in &report_data.minimal_sets {
        writeln!(report, "minimal set {}", fmt_set(s)).unwrap();
    }
    for (u, n) in &report_data.traces {
        writeln!(report, "trace {} inside {}", fmt_set(n), fmt_set(u)).unwrap();
    }
    writeln!(report, "typ={}", report_data.type_label).unwrap();
    Ok(outcome(0, report))
}

fn cmd_tct_chain(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let a = load_structure(file)?;
    let mut report = String::new();
    let code = match find_type1free_chain(&a, ctx.budget)? {
        ChainSearch::Chain { congruences, types } => {
            for (i, c) in congruences.iter().enumerate() {
                if i > 0 {
                    writeln!(report, "  typ={}", types[i - 1]).unwrap();
                }
                writeln!(report, "{}", c.render()).unwrap();
            }
            0
        }
        ChainSearch::Failure { cover } => {
            writeln!(
                report,
                "no chain avoiding unary type; witness cover ({}, {}) has typ=1",
                cover.0.render(),
                cover.1.render()
            )
            .unwrap();
            1
        }
    };
    Ok(outcome(code, report))
}

fn cmd_rewrite_enforce(ctx: &Ctx) -> Result<CommandOutcome> {
    let x = load_structure(ctx.required("--instance")?)?;
    let ids = load_identities(ctx.required("--ids")?)?;
    let out = enforce_identities(&x, &ids)?;
    let mut report = String::new();
    if ctx.porcelain {
        writeln!(report, "steps={}", out.steps).unwrap();
        writeln!(report, "size={}", out.instance.size()).unwrap();
        writeln!(report, "map={}", witness_line(&out.map)).unwrap();
    } else {
        writeln!(
            report,
            "# {} quotient steps; domain {} -> {}",
            out.steps,
            x.size(),
            out.instance.size()
        )
        .unwrap();
        writeln!(report, "# quotient map: {}", witness_line(&out.map)).unwrap();
    }
    report.push_str(&serialize_structure(&out.instance));
    Ok(outcome(0, report))
}

fn cmd_rewrite_reduce(ctx: &Ctx) -> Result<CommandOutcome> {
    let x = load_structure(ctx.required("--instance")?)?;
    let a = load_structure(ctx.required("--from")?)?;
    let b = load_structure(ctx.required("--to")?)?;
    let spec_path = ctx.required("--spec")?;
    let spec_text = if spec_path == "sheffer.tspec" || spec_path == "sheffer" {
        paper::SHEFFER_TSPEC.to_string()
    } else {
        read_file(spec_path)?
    };
    let spec = parse_tspec(&spec_text, a.signature(), b.signature())?;
    let v = validate_spec(&spec, &a, &b)?;
    let ids = crate::rewrite::compatibility_identities(&v)?;
    let enforced = enforce_identities(&x, &ids)?;
    let y = qfpp_reduce(&enforced.instance, &v)?;
    let mut report = String::new();
    if ctx.porcelain {
        writeln!(report, "enforce-steps={}", enforced.steps).unwrap();
        writeln!(report, "size={}", y.size()).unwrap();
    } else {
        writeln!(
            report,
            "# enforced compatibility identities in {} steps; reduced instance:",
            enforced.steps
        )
        .unwrap();
    }
    report.push_str(&serialize_structure(&y));
    Ok(outcome(0, report))
}

fn cmd_free_algebra(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let a = load_structure(file)?;
    let n = ctx.required_int("-n")?;
    let (f, gens) = free_algebra(&a.algebraic_reduct(), n, ctx.budget)?;
    let mut report = String::new();
    if ctx.porcelain {
        writeln!(report, "size={}", f.size()).unwrap();
        writeln!(report, "generators={}", witness_line(&gens)).unwrap();
    } else {
        writeln!(
            report,
            "# free algebra on {} generators has {} elements; generators at {:?}",
            n,
            f.size(),
            gens
        )
        .unwrap();
    }
    report.push_str(&serialize_structure(&f));
    Ok(outcome(0, report))
}

fn cmd_probe(ctx: &Ctx) -> Result<CommandOutcome> {
    let a = load_structure(ctx.required("--target")?)?;
    let family = match ctx.required("--family")? {
        "free-algebra" => ProbeFamily::FreeAlgebra,
        "star-extension" => ProbeFamily::StarExtension,
        "custom" => {
            let list = ctx
                .required("--files")?
                .split(',')
                .map(load_structure)
                .collect::<Result<Vec<_>>>()?;
            ProbeFamily::Custom(list)
        }
        other => return Err(Error::Usage(format!("unknown family `{}`", other))),
    };
    let n_max = ctx.int("--max-n", 4)?;
    let probe = counting_probe(&a.algebraic_reduct(), family, n_max, ctx.budget)?;
    let mut report = String::new();
    if ctx.porcelain {
        for (i, (size, all, surj)) in probe.counts.iter().enumerate() {
            writeln!(report, "n={} size={} homs={} surjective={}", i + 1, size, all, surj)
                .unwrap();
        }
    } else {
        writeln!(report, "{} family against the target:", probe.family).unwrap();
        for (i, (size, all, surj)) in probe.counts.iter().enumerate() {
            writeln!(
                report,
                "  n={}: instance size {}, {} homomorphisms, {} surjective",
                i + 1,
                size,
                all,
                surj
            )
            .unwrap();
        }
    }
    Ok(outcome(0, report))
}

fn solver_outcome(ctx: &Ctx, found: Option<Vec<usize>>) -> CommandOutcome {
    match found {
        Some(h) => {
            let report = if ctx.porcelain {
                format!("result=yes\nwitness={}\n", witness_line(&h))
            } else {
                format!("homomorphism exists: {}\n", witness_line(&h))
            };
            outcome(0, report)
        }
        None => {
            let report = if ctx.porcelain {
                "result=no\n".to_string()
            } else {
                "no homomorphism\n".to_string()
            };
            outcome(1, report)
        }
    }
}

fn cmd_solve_sheffer(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let x = load_structure(file)?;
    let a = paper::sheffer_template();
    Ok(solver_outcome(ctx, sheffer_solve(&x, &a)?))
}

fn cmd_solve_z(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let x = load_structure(file)?;
    Ok(solver_outcome(ctx, z_solve(&x)?))
}

fn cmd_solve_prop5(ctx: &Ctx, file: &str) -> Result<CommandOutcome> {
    let x = load_structure(file)?;
    Ok(solver_outcome(ctx, prop5_solve(&x)?))
}

fn cmd_solve_brute(ctx: &Ctx) -> Result<CommandOutcome> {
    let x = load_structure(ctx.required("--source")?)?;
    let a = load_structure(ctx.required("--target")?)?;
    Ok(solver_outcome(ctx, find_hom(&x, &a, false)?))
}

fn cmd_width_minimality(ctx: &Ctx) -> Result<CommandOutcome> {
    let x = load_structure(ctx.required("--source")?)?;
    let a = load_structure(ctx.required("--target")?)?;
    let k = ctx.required_int("-k")?;
    let l = ctx.required_int("-l")?;
    if k == 0 || k > l {
        return Err(Error::Usage("need 1 <= k <= l".into()));
    }
    let system = kl_minimality(&x, &a, k, l);
    let nontrivial = system.is_nontrivial();
    let mut report = String::new();
    if ctx.porcelain {
        writeln!(report, "nontrivial={}", nontrivial).unwrap();
    } else {
        writeln!(
            report,
            "({},{})-minimality fixpoint is {}",
            k,
            l,
            if nontrivial { "nontrivial" } else { "trivial" }
        )
        .unwrap();
    }
    if let Some(path) = ctx.opt("--dump") {
        std::fs::write(path, system.render()).map_err(|e| Error::Io {
            path: path.to_string(),
            msg: e.to_string(),
        })?;
        writeln!(report, "# system written to {}", path).unwrap();
    }
    Ok(outcome(if nontrivial { 0 } else { 1 }, report))
}

fn cmd_width_harness(ctx: &Ctx) -> Result<CommandOutcome> {
    let a = load_structure(ctx.required("--target")?)?;
    let k = ctx.required_int("-k")?;
    let l = ctx.required_int("-l")?;
    let max_n = ctx.int("--max-n", 7)?;
    let samples = ctx.int("--samples", 50)?;
    let mut report = String::new();
    let code = match width_harness(&a, k, l, max_n, samples, ctx.seed)? {
        HarnessOutcome::Pass { tested } => {
            if ctx.porcelain {
                writeln!(report, "result=pass").unwrap();
                writeln!(report, "tested={}", tested).unwrap();
            } else {
                writeln!(
                    report,
                    "pass: {} instances tested, nontrivial fixpoints always satisfiable",
                    tested
                )
                .unwrap();
            }
            0
        }
        HarnessOutcome::Counterexample { instance } => {
            if ctx.porcelain {
                writeln!(report, "result=counterexample").unwrap();
                writeln!(report, "size={}", instance.size()).unwrap();
            } else {
                writeln!(
                    report,
                    "counterexample: nontrivial ({},{})-system but no homomorphism",
                    k, l
                )
                .unwrap();
            }
            report.push_str(&serialize_structure(&instance));
            1
        }
    };
    Ok(outcome(code, report))
}

fn cmd_width_paper(ctx: &Ctx) -> Result<CommandOutcome> {
    let x = build_not23_instance();
    let a = paper::sheffer_template();
    let p = paper_p_system();
    let violation = verify_system(&x, &a, &p, 2, 3)?;
    let nontrivial = p.is_nontrivial();
    let mut report = String::new();
    if ctx.porcelain {
        writeln!(report, "nontrivial={}", nontrivial).unwrap();
        writeln!(report, "compatible={}", violation.is_none()).unwrap();
    } else {
        writeln!(
            report,
            "explicit system: {}, {}",
            if nontrivial { "nontrivial" } else { "trivial" },
            match &violation {
                None => "compatible (2,3)-system".to_string(),
                Some(v) => format!("violates forth at K={:?} in {}", v.k_set, v.window),
            }
        )
        .unwrap();
    }
    Ok(outcome(
        if nontrivial && violation.is_none() { 0 } else { 1 },
        report,
    ))
}

fn cmd_paper(ctx: &Ctx, name: &str) -> Result<CommandOutcome> {
    let mut report = String::new();
    let code;
    match name {
        "prop-6-1" => {
            let x = paper::prop_6_1_instance();
            let a = paper::sheffer_template();
            let homs = count_homs(&x, &a, false)?;
            let system = kl_minimality(&x, &a, 2, 3);
            let p = paper_p_system();
            let compatible = verify_system(&x, &a, &p, 2, 3)?.is_none();
            let contained = p.contained_in(&system);
            if ctx.porcelain {
                writeln!(report, "homomorphisms={}", homs).unwrap();
                writeln!(report, "minimality-nontrivial={}", system.is_nontrivial()).unwrap();
                writeln!(report, "paper-system-compatible={}", compatible).unwrap();
                writeln!(report, "paper-system-contained={}", contained).unwrap();
            } else {
                writeln!(
                    report,
                    "homomorphisms: {}; (2,3)-minimality: {}",
                    homs,
                    if system.is_nontrivial() {
                        "nontrivial"
                    } else {
                        "trivial"
                    }
                )
                .unwrap();
                writeln!(
                    report,
                    "explicit system verifies: {}; contained in fixpoint: {}",
                    compatible, contained
                )
                .unwrap();
            }
            code = if homs == 0 { 1 } else { 0 };
        }
        "example-4-12" => {
            let a = paper::example_4_12();
            let lat = all_congruences(&a, ctx.budget)?;
            let alpha = lat
                .congruences
                .iter()
                .find(|c| !c.is_identity() && !c.is_full())
                .cloned()
                .ok_or_else(|| Error::NotFound("missing middle congruence".into()))?;
            let t = type_of_cover(&a, &Congruence::identity(3), &alpha, ctx.budget)?;
            let verdict = classify_3element(&a, ctx.budget)?;
            if ctx.porcelain {
                writeln!(report, "congruences={}", lat.congruences.len()).unwrap();
                writeln!(report, "typ-bottom={}", t).unwrap();
                writeln!(
                    report,
                    "verdict={}",
                    if verdict.is_in() { "in-ksurj-eff" } else { "out" }
                )
                .unwrap();
            } else {
                writeln!(
                    report,
                    "congruence lattice: {} members; typ(0, {}) = {}",
                    lat.congruences.len(),
                    alpha.render(),
                    t
                )
                .unwrap();
                let (c, r) = verdict_report(ctx, &a, &verdict);
                report.push_str(&r);
                code = c;
                return Ok(outcome(code, report));
            }
            code = if verdict.is_in() { 0 } else { 1 };
        }
        "prop-5-1" => {
            let a = paper::prop_5_1();
            let verdict = classify_3element(&a, ctx.budget)?;
            let self_solve = prop5_solve(&a)?;
            if ctx.porcelain {
                writeln!(
                    report,
                    "verdict={}",
                    if verdict.is_in() { "in-ksurj-eff" } else { "out" }
                )
                .unwrap();
                writeln!(report, "self-map={}", self_solve.is_some()).unwrap();
            } else {
                let (_, r) = verdict_report(ctx, &a, &verdict);
                report.push_str(&r);
                writeln!(
                    report,
                    "identity instance solved: {}",
                    self_solve.is_some()
                )
                .unwrap();
            }
            code = if verdict.is_in() && self_solve.is_some() { 0 } else { 1 };
        }
        "sheffer" => {
            let a = paper::sheffer_template();
            let verdict = classify_boolean(&a)?;
            let admitted = schaefer_check(&a.graph_of())?;
            if ctx.porcelain {
                writeln!(
                    report,
                    "verdict={}",
                    match verdict {
                        BooleanVerdict::PolynomialTime(_) => "polynomial-time",
                        BooleanVerdict::NPComplete { .. } => "np-complete",
                    }
                )
                .unwrap();
                writeln!(report, "graph-polymorphisms={}", admitted.len()).unwrap();
            } else {
                writeln!(
                    report,
                    "template is tractable through its operation; its graph admits {} of the six polymorphisms (NP-complete as a relational template)",
                    admitted.len()
                )
                .unwrap();
            }
            code = 0;
        }
        "z-template" => {
            let a = paper::z_template();
            let verdict = classify_boolean(&a)?;
            let h = z_solve(&a)?;
            if ctx.porcelain {
                writeln!(
                    report,
                    "verdict={}",
                    match verdict {
                        BooleanVerdict::PolynomialTime(_) => "polynomial-time",
                        BooleanVerdict::NPComplete { .. } => "np-complete",
                    }
                )
                .unwrap();
                writeln!(report, "self-map={}", h.is_some()).unwrap();
            } else {
                writeln!(
                    report,
                    "template is tractable; Gaussian elimination solves it (identity instance: {})",
                    if h.is_some() { "yes" } else { "no" }
                )
                .unwrap();
            }
            code = 0;
        }
        other => {
            return Err(Error::Usage(format!(
                "unknown paper artifact `{}`; known: example-4-12 prop-5-1 prop-6-1 sheffer z-template",
                other
            )))
        }
    }
    Ok(outcome(code, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> CommandOutcome {
        let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        run(&argv)
    }

    #[test]
    fn paper_prop_6_1_reports_no_homomorphism() {
        let out = run_str(&["paper", "prop-6-1"]);
        assert_eq!(out.exit_code, 1);
        assert!(out.report.contains("homomorphisms: 0"));
        assert!(out.report.contains("nontrivial"));
    }

    #[test]
    fn hom_count_on_a_one_element_builtin() {
        // build a temporary one-element structure file
        let dir = std::env::temp_dir().join("finstr-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("one.finstr");
        std::fs::write(&path, "domain 1\nop f 2\n0\n").unwrap();
        let p = path.to_str().unwrap();
        let out = run_str(&["hom", "count", "--source", p, "--target", p]);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.report.trim(), "1");
    }

    #[test]
    fn classify_boolean_on_builtin_templates() {
        let out = run_str(&["classify", "boolean", "sheffer"]);
        assert_eq!(out.exit_code, 0);
        let out = run_str(&["classify", "boolean", "z-template"]);
        assert_eq!(out.exit_code, 0);
    }

    #[test]
    fn usage_errors_exit_2() {
        let out = run_str(&["frobnicate"]);
        assert_eq!(out.exit_code, 2);
        let out = run_str(&["hom", "exists", "--source", "sheffer"]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_str(&["paper", "example-4-12"]);
        let b = run_str(&["paper", "example-4-12"]);
        assert_eq!(a, b);
        assert_eq!(a.exit_code, 0);
    }

    #[test]
    fn porcelain_mode_emits_key_value_lines() {
        let out = run_str(&["paper", "prop-6-1", "--porcelain"]);
        assert!(out.report.contains("homomorphisms=0"));
        assert!(out.report.contains("minimality-nontrivial=true"));
    }
}
