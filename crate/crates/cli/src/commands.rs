//! One handler per command. Each returns the report as JSON plus its text
//! and, where tabular, CSV renderings.

use std::fmt::Write as _;

use ait_core::bitio::{is_prefix_free, kraft_sum, BitString, CodeSet};
use ait_core::complexity::{
    algorithmic_probability, check_chain_rule, check_coding, complexity_upper, find_elegant,
    ChainParams, ComplexityTable, SweepParams,
};
use ait_core::hierarchy::{dominance_check, fgh_eval, TowerInt};
use ait_core::incompleteness::{
    diagonalize_total, elegance_ceiling_experiment, fas_theorems, multiples_family,
    omega_bits_ceiling_experiment, run_berry, BerryOutcome, EleganceOracle, IncompletenessError,
    ToyFAS,
};
use ait_core::lispvm::RunOutcome;
use ait_core::machines::{run_c2, run_program, MachineId, Output, Program};
use ait_core::omega::{
    borel_normality, omega_double_prime, omega_exact_capped, omega_lower_bound,
    oracle_halting_from_omega, OmegaApprox, OracleOutcome,
};
use ait_core::report::rows_to_csv;
use ait_core::sexpr::{from_bits_prefix, parse, to_bits, SExpr};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Settings;
use crate::{
    BitsOp, ChainArgs, CliError, Command, DiagArgs, FasArgs, FasOp, FghOp, NormalityArgs, OmegaOp,
    RunArgs, SexprOp, System,
};

pub struct Rendered {
    /// Machine the command ran on, if any.
    pub machine: Option<MachineId>,
    pub report: Value,
    pub text: String,
    pub csv: Option<String>,
}

fn value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn csv_of<T: Serialize>(rows: &[T]) -> Result<Option<String>, CliError> {
    rows_to_csv(rows).map(Some).map_err(domain)
}

fn rendered(machine: Option<MachineId>, report: Value, text: String) -> Rendered {
    Rendered {
        machine,
        report,
        text,
        csv: None,
    }
}

pub fn dispatch(cmd: &Command, s: &Settings) -> Result<Rendered, CliError> {
    match cmd {
        Command::Bits { op } => bits(op),
        Command::Sexpr { op } => sexpr(op),
        Command::Run(a) => run(a, s),
        Command::Sweep => sweep(s),
        Command::Complexity { x } => complexity(x, s),
        Command::Elegant => elegant(s),
        Command::Prob { x } => prob(x, s),
        Command::Coding => coding(s),
        Command::Chain(a) => chain(a, s),
        Command::Omega { op } => omega(op, s),
        Command::Normality(a) => normality(a, s),
        Command::Fas { op } => fas(op, s),
        Command::Fgh { op } => fgh(op, s),
        Command::Diag(a) => diag(a),
    }
}

fn bits(op: &BitsOp) -> Result<Rendered, CliError> {
    let words = match op {
        BitsOp::Kraft { words } | BitsOp::Prefixfree { words } => words,
    };
    let set: CodeSet = words.iter().cloned().collect();
    let sum = kraft_sum(&set);
    let pf = is_prefix_free(&set);
    let mut text = match op {
        BitsOp::Kraft { .. } => format!("kraft sum {sum}\n"),
        BitsOp::Prefixfree { .. } => String::new(),
    };
    match &pf.witness {
        None => text.push_str("prefix-free\n"),
        Some((a, b)) => writeln!(text, "not prefix-free: {a:?} is a prefix of {b:?}").unwrap(),
    }
    let report = json!({
        "words": set.len(),
        "kraft_sum": sum.to_string(),
        "prefix_free": pf.prefix_free,
        "witness": pf.witness,
    });
    Ok(rendered(None, report, text))
}

fn sexpr(op: &SexprOp) -> Result<Rendered, CliError> {
    match op {
        SexprOp::Parse { text } | SexprOp::Encode { text } => {
            let e = parse(text).map_err(domain)?;
            let bits = to_bits(&e).ok();
            let report = json!({
                "canonical": e.to_string(),
                "chars": e.print_len(),
                "bits": bits.as_ref().map(BitString::to_string),
            });
            let text = match (op, &bits) {
                (SexprOp::Encode { .. }, Some(b)) => format!("{b}\n"),
                (SexprOp::Encode { .. }, None) => {
                    return Err(domain("a bare atom has no bit encoding"))
                }
                _ => format!("{e}\n{} chars\n", e.print_len()),
            };
            Ok(rendered(None, report, text))
        }
        SexprOp::Decode { bits } => {
            let (e, used) = from_bits_prefix(bits).map_err(domain)?;
            let rest = bits.slice(used, bits.len());
            let report = json!({
                "expr": e.to_string(),
                "used_bits": used,
                "rest": rest.to_string(),
            });
            Ok(rendered(None, report, format!("{e}\nrest {rest:?}\n")))
        }
    }
}

fn outcome_json(o: &RunOutcome) -> (Value, String) {
    match o {
        RunOutcome::Halted {
            value,
            payload_consumed,
            steps,
        } => {
            let out = Output::classify(value);
            (
                json!({
                    "status": "halted",
                    "value": value.to_string(),
                    "output": out,
                    "steps": steps,
                    "payload_consumed": payload_consumed,
                }),
                format!("Halted {out}\nsteps {steps}\n"),
            )
        }
        RunOutcome::OutOfBudget => (json!({"status": "out-of-budget"}), "OutOfBudget\n".into()),
        RunOutcome::Faulted(f) => (
            json!({"status": "faulted", "fault": format!("{f:?}")}),
            format!("Faulted {f:?}\n"),
        ),
    }
}

fn run(a: &RunArgs, s: &Settings) -> Result<Rendered, CliError> {
    let machine = s.machine_or(MachineId::Sd);
    let budget = a.budget.unwrap_or(s.budget);
    let outcome = match (machine, &a.raw, &a.prefix) {
        (MachineId::C2, Some(raw), None) => run_c2(raw, budget),
        (MachineId::C2, _, _) => {
            return Err(CliError::Usage("c2 programs are given with --raw".into()))
        }
        (m, Some(raw), None) => {
            let p = Program::from_bits(raw).map_err(domain)?;
            run_program(m, &p, budget, a.aux.as_ref())
        }
        (m, None, Some(prefix)) => {
            let e = parse(prefix).map_err(domain)?;
            let p = Program::new(e, a.payload.clone().unwrap_or_default()).map_err(domain)?;
            run_program(m, &p, budget, a.aux.as_ref())
        }
        _ => return Err(CliError::Usage("give --raw or --prefix".into())),
    };
    let (report, text) = outcome_json(&outcome);
    Ok(rendered(Some(machine), report, text))
}

fn params(s: &Settings, default: MachineId) -> SweepParams {
    SweepParams::new(s.machine_or(default), s.max_bits, s.budget).workers(s.workers)
}

fn sweep(s: &Settings) -> Result<Rendered, CliError> {
    let p = params(s, MachineId::Sd);
    let table = ComplexityTable::build(&p);
    let mut text = String::new();
    for e in &table.entries {
        let exact = if table.is_exact(&e.output) {
            ""
        } else {
            " (upper bound)"
        };
        writeln!(
            text,
            "{:?}\th={}{exact}\t{}",
            e.output.to_string(),
            e.h_upper,
            e.minimal_count
        )
        .unwrap();
    }
    Ok(Rendered {
        machine: Some(p.machine),
        csv: Some(table.to_csv()),
        report: value(&table),
        text,
    })
}

fn complexity(x: &BitString, s: &Settings) -> Result<Rendered, CliError> {
    let p = params(s, MachineId::Sd);
    let bound = complexity_upper(&p, x);
    let text = match &bound {
        Some(b) if b.exact => format!("h({x:?}) = {}\n", b.h_upper),
        Some(b) => format!("h({x:?}) <= {}\n", b.h_upper),
        None => format!("no program for {x:?} within L = {}\n", p.max_bits),
    };
    let report = json!({"x": x, "bound": bound});
    Ok(rendered(Some(p.machine), report, text))
}

fn elegant(s: &Settings) -> Result<Rendered, CliError> {
    let p = params(s, MachineId::Sd);
    let list = find_elegant(&ComplexityTable::build(&p));
    let mut text = String::new();
    for e in &list {
        writeln!(
            text,
            "{:?}\t{} bits\t{}",
            e.output.to_string(),
            e.size_bits,
            e.program
        )
        .unwrap();
    }
    Ok(Rendered {
        machine: Some(p.machine),
        csv: csv_of(&list)?,
        report: value(&list),
        text,
    })
}

fn prob(x: &BitString, s: &Settings) -> Result<Rendered, CliError> {
    let p = params(s, MachineId::Sd);
    let pr = algorithmic_probability(&p, x).map_err(domain)?;
    let report = json!({"x": x, "prob": pr, "neg_log2_ceil": pr.neg_log2_ceil()});
    Ok(rendered(Some(p.machine), report, format!("{pr}\n")))
}

fn coding(s: &Settings) -> Result<Rendered, CliError> {
    let p = params(s, MachineId::Sd);
    let r = check_coding(&ComplexityTable::build(&p)).map_err(domain)?;
    let text = format!(
        "{} outputs, all hold: {}, max defect {:?}\n",
        r.rows.len(),
        r.all_hold,
        r.max_defect
    );
    Ok(Rendered {
        machine: Some(p.machine),
        csv: csv_of(&r.rows)?,
        report: value(&r),
        text,
    })
}

/// Every string of length at most `n`, in shortlex order.
fn strings_up_to(n: usize) -> Vec<BitString> {
    (0..=n)
        .flat_map(|len| (0..1u64 << len).map(move |v| BitString::from_u64(v, len)))
        .collect()
}

fn chain(a: &ChainArgs, s: &Settings) -> Result<Rendered, CliError> {
    let machine = s.machine_or(MachineId::Sd);
    if !machine.is_self_delimiting() {
        return Err(domain("the chain rule needs a self-delimiting machine"));
    }
    if a.max_len > 8 {
        return Err(CliError::Usage("--max-len is limited to 8".into()));
    }
    let mut p = ChainParams::new(s.max_bits, s.budget);
    p.machine = machine;
    p.relative_bits = a.relative_bits;
    p.joint_bits = a.joint_bits;
    p.workers = s.workers;
    let strings = strings_up_to(a.max_len);
    let pairs: Vec<(BitString, BitString)> = strings
        .iter()
        .flat_map(|x| strings.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let r = check_chain_rule(&p, &pairs);
    let text = format!(
        "K = {} bits, {} pairs checked, {} skipped, all hold: {}, max |defect| {:?}\n",
        r.k,
        r.rows.len(),
        r.skipped.len(),
        r.all_hold,
        r.max_abs_defect
    );
    Ok(Rendered {
        machine: Some(machine),
        csv: csv_of(&r.rows)?,
        report: value(&r),
        text,
    })
}

fn omega_json(o: &OmegaApprox, emit_bits: Option<usize>) -> Result<(Value, String), CliError> {
    let mut v = json!({
        "machine": o.machine,
        "L": o.max_bits,
        "B": o.budget,
        "value": o.value,
    });
    let mut text = format!("{}\n", o.value);
    if let Some(k) = emit_bits {
        let b = o.bits(k).map_err(domain)?;
        v["bits"] = json!(b);
        writeln!(text, "0.{b}").unwrap();
    }
    v["contributing"] = json!(o.contributing);
    v["unconvertible_mass"] = json!(o.unconvertible_mass);
    Ok((v, text))
}

fn omega(op: &OmegaOp, s: &Settings) -> Result<Rendered, CliError> {
    match op {
        OmegaOp::Lower { emit_bits } => {
            let p = params(s, MachineId::Total);
            let o = omega_lower_bound(&p).map_err(domain)?;
            let (report, text) = omega_json(&o, *emit_bits)?;
            Ok(rendered(Some(p.machine), report, text))
        }
        OmegaOp::Exact { emit_bits } => {
            let o = omega_exact_capped(s.max_bits, s.workers);
            let (report, text) = omega_json(&o, *emit_bits)?;
            Ok(rendered(Some(MachineId::Total), report, text))
        }
        OmegaOp::Bits { k } => {
            let o = omega_exact_capped(s.max_bits, s.workers);
            let (report, text) = omega_json(&o, Some(*k))?;
            Ok(rendered(Some(MachineId::Total), report, text))
        }
        OmegaOp::Oracle { kbits, k, guard } => {
            let kbits = match (kbits, k) {
                (Some(b), None) => b.clone(),
                (None, Some(k)) => omega_exact_capped(s.max_bits, s.workers)
                    .bits(*k)
                    .map_err(domain)?,
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --kbits and --k".into(),
                    ))
                }
            };
            let r =
                oracle_halting_from_omega(&kbits, s.max_bits, *guard, s.workers).map_err(domain)?;
            let (text, csv) = match &r.outcome {
                OracleOutcome::Complete { halting, .. } => {
                    let mut t = format!(
                        "{} halting programs of at most {} bits\n",
                        halting.len(),
                        kbits.len()
                    );
                    for h in halting {
                        writeln!(t, "{h}").unwrap();
                    }
                    let csv = rows_to_csv(
                        &halting
                            .iter()
                            .map(|h| ProgramRow {
                                program: h.to_string(),
                            })
                            .collect::<Vec<_>>(),
                    )
                    .map_err(domain)?;
                    (t, Some(csv))
                }
                OracleOutcome::GuardTripped { resolved, .. } => (
                    if *resolved {
                        "every program resolved below the claimed value: the digits are wrong\n"
                            .into()
                    } else {
                        "guard tripped\n".into()
                    },
                    None,
                ),
            };
            Ok(Rendered {
                machine: Some(MachineId::Total),
                report: value(&r),
                text,
                csv,
            })
        }
        OmegaOp::DoublePrime { n } => {
            let p = params(s, MachineId::Sd);
            if !p.machine.is_self_delimiting() {
                return Err(domain(format!(
                    "machine {} is not self-delimiting",
                    p.machine
                )));
            }
            let r = omega_double_prime(&ComplexityTable::build(&p), *n);
            let text = format!(
                "{} ({} numerals without a program)\n",
                r.value,
                r.missing.len()
            );
            Ok(rendered(Some(p.machine), value(&r), text))
        }
    }
}

#[derive(Serialize)]
struct ProgramRow {
    program: String,
}

fn normality(a: &NormalityArgs, s: &Settings) -> Result<Rendered, CliError> {
    let x = match &a.bits {
        Some(b) => b.clone(),
        None => omega_exact_capped(s.max_bits, s.workers)
            .bits(a.digits)
            .map_err(domain)?,
    };
    let r = borel_normality(&x, a.k, a.tol).map_err(domain)?;
    let mut text = format!(
        "{} blocks of {} bits, expected frequency {}: {}\n",
        r.blocks,
        r.k,
        r.expected,
        if r.pass { "pass" } else { "fail" }
    );
    for f in &r.frequencies {
        writeln!(text, "{}\t{}\t{:.4}", f.block, f.count, f.frequency).unwrap();
    }
    Ok(Rendered {
        machine: None,
        csv: csv_of(&r.frequencies)?,
        report: value(&r),
        text,
    })
}

fn build_fas(a: &FasArgs, s: &Settings) -> Result<ToyFAS, CliError> {
    if let Some(text) = &a.enumerator {
        let e = parse(text).map_err(domain)?;
        let p = Program::new(e, a.payload.clone().unwrap_or_default()).map_err(domain)?;
        return Ok(ToyFAS::new(p, a.fas_machine));
    }
    Ok(match a.system {
        System::Sound => ToyFAS::bundled_sound(),
        System::Unsound => ToyFAS::bundled_unsound(),
        System::Empty => ToyFAS::empty(),
        System::OmegaBits => {
            let mut bits = omega_exact_capped(s.max_bits, s.workers)
                .bits(a.omega_k)
                .map_err(domain)?
                .into_vec();
            if let Some(i) = a.flip {
                let b = bits
                    .get_mut(i)
                    .ok_or_else(|| CliError::Usage(format!("--flip {i} is beyond --omega-k")))?;
                *b = !*b;
            }
            ToyFAS::omega_bits(&BitString::from_bools(bits))
        }
    })
}

fn fas_error(e: IncompletenessError) -> CliError {
    if e.is_unsound() {
        CliError::Abort(e.to_string())
    } else {
        domain(e)
    }
}

fn fas(op: &FasOp, s: &Settings) -> Result<Rendered, CliError> {
    let (FasOp::Theorems(a) | FasOp::Berry(a) | FasOp::Ceiling(a) | FasOp::Omegabits(a)) = op;
    let f = build_fas(a, s)?;
    match op {
        FasOp::Theorems(_) => {
            let ts = fas_theorems(&f, a.budget).map_err(domain)?;
            let mut text = format!("{} theorems, N <= {} bits\n", ts.len(), f.n_bits());
            for t in &ts {
                writeln!(text, "{t}").unwrap();
            }
            let report = json!({"n_bits": f.n_bits(), "budget": a.budget, "theorems": ts});
            Ok(rendered(Some(f.machine), report, text))
        }
        FasOp::Berry(_) => {
            let r = run_berry(&f, a.budget).map_err(fas_error)?;
            let mut text = format!(
                "driver {} bits, threshold T = {}\n",
                r.size_bits, r.threshold
            );
            match &r.outcome {
                BerryOutcome::Exhausted => text.push_str("budget exhausted: no claim above T\n"),
                BerryOutcome::Halted { output } => writeln!(
                    text,
                    "halted with {output}; replicated the claimed program: {}",
                    r.replicated
                )
                .unwrap(),
                BerryOutcome::Faulted { fault } => writeln!(text, "faulted: {fault}").unwrap(),
            }
            Ok(rendered(Some(MachineId::Sd), value(&r), text))
        }
        FasOp::Ceiling(_) => {
            let oracle = EleganceOracle::new(a.oracle_cap, s.workers);
            let r = elegance_ceiling_experiment(&f, a.budget, &oracle).map_err(fas_error)?;
            let text = format!(
                "N = {}, T = {} (c = {}), largest provably elegant program {}: {:?}\n",
                r.n_bits,
                r.threshold,
                r.constant,
                r.max_elegant_size
                    .map_or("none".to_string(), |m| format!("{m} bits")),
                r.verdict
            );
            Ok(rendered(Some(MachineId::Total), value(&r), text))
        }
        FasOp::Omegabits(_) => {
            let r = omega_bits_ceiling_experiment(&f, s.max_bits, a.budget, s.workers)
                .map_err(fas_error)?;
            let text = format!(
                "{} of {} claimed digits correct, N = {}, excess {}\n",
                r.correct, r.claimed, r.n_bits, r.excess
            );
            Ok(rendered(Some(MachineId::Total), value(&r), text))
        }
    }
}

#[derive(Serialize)]
struct DominanceCsvRow {
    n: u64,
    f_alpha: String,
    f_beta: String,
    order: String,
}

fn fgh(op: &FghOp, s: &Settings) -> Result<Rendered, CliError> {
    match op {
        FghOp::Eval { ordinal, n } => {
            let v: TowerInt = fgh_eval(ordinal, *n, s.cap_bits);
            let report = json!({"ordinal": ordinal, "n": n, "value": v});
            Ok(rendered(None, report, format!("{v}\n")))
        }
        FghOp::Dominate {
            alpha,
            beta,
            points,
        } => {
            let r = dominance_check(alpha, beta, points, s.cap_bits).map_err(domain)?;
            let rows: Vec<DominanceCsvRow> = r
                .rows
                .iter()
                .map(|x| DominanceCsvRow {
                    n: x.n,
                    f_alpha: x.f_alpha.to_string(),
                    f_beta: x.f_beta.to_string(),
                    order: x.order.clone(),
                })
                .collect();
            let mut text = String::new();
            for row in &rows {
                writeln!(
                    text,
                    "n={}\t{} {} {}",
                    row.n, row.f_alpha, row.order, row.f_beta
                )
                .unwrap();
            }
            match r.first_crossing {
                Some(c) => writeln!(
                    text,
                    "f_{beta} exceeds f_{alpha} from n = {c}; holds at all tested points after: {}",
                    r.holds_after_crossing
                )
                .unwrap(),
                None => writeln!(text, "no crossing at the tested points").unwrap(),
            }
            Ok(Rendered {
                machine: None,
                csv: csv_of(&rows)?,
                report: value(&r),
                text,
            })
        }
    }
}

fn diag(a: &DiagArgs) -> Result<Rendered, CliError> {
    let family: Vec<SExpr> = match &a.family {
        Some(text) => text
            .split(';')
            .map(|t| parse(t.trim()).map_err(domain))
            .collect::<Result<_, _>>()?,
        None => multiples_family(a.members),
    };
    let r = diagonalize_total(&family, a.n).map_err(domain)?;
    Ok(rendered(None, value(&r), format!("{}\n", r.value)))
}
