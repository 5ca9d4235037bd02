//! Toy formal axiomatic systems and the experiments built on them.
//!
//! A system is a theorem enumerator: a program whose value is the list of
//! theorems it proves. Two kinds of theorem exist, elegance claims about
//! programs of the total machine and claims about single bits of the capped
//! halting probability.
//!
//! Wire encoding, one record per theorem:
//!
//! ```text
//! (e b1 b2 ... bn)    program b1..bn is elegant on the total machine
//! (o (1 1 ... 1) b)   digit i of the capped value is b, i = number of 1s
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitio::BitString;
use crate::complexity::{enumerate_halting, SweepParams};
use crate::lispvm::{eval, subst, Fault, RunOutcome, VMConfig};
use crate::machines::{run_program, run_raw, MachineId, Output, Program};
use crate::omega::{omega_exact_capped, structural_budget};
use crate::programs::{berry_fixed_point, ProgramError};
use crate::sexpr::{parse, text_to_bits, SExpr};
use crate::surface::Compiler;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FasError {
    #[error("theorem enumerator faulted: {0:?}")]
    EnumeratorFault(Fault),
    #[error("malformed theorem at position {position}: {reason}")]
    Malformed { position: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncompletenessError {
    #[error(transparent)]
    Fas(#[from] FasError),
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error("the Berry driver needs an enumerator without payload bits")]
    EnumeratorPayload,
    #[error("unsound: theorem {position} claims {theorem}, but {witness} is shorter with the same output")]
    Unsound {
        position: usize,
        theorem: String,
        witness: String,
    },
    #[error(
        "unsound: theorem {position} claims {theorem}, which is not a program of the total machine"
    )]
    NotAProgram { position: usize, theorem: String },
    #[error("theorem {position} ({theorem}) lies beyond the elegance oracle cap of {cap} bits and is not refuted by it")]
    Unverifiable {
        position: usize,
        theorem: String,
        cap: usize,
    },
    #[error("unsound: omega bit {index} claimed {claimed}, capped value has {actual}")]
    WrongOmegaBit {
        index: usize,
        claimed: u8,
        actual: u8,
    },
}

impl IncompletenessError {
    /// The system proved something false.
    pub fn is_unsound(&self) -> bool {
        matches!(
            self,
            IncompletenessError::Unsound { .. }
                | IncompletenessError::NotAProgram { .. }
                | IncompletenessError::WrongOmegaBit { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Theorem {
    Elegant {
        program_bits: BitString,
        machine: MachineId,
    },
    OmegaBit {
        index: usize,
        bit: u8,
    },
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::Elegant {
                program_bits,
                machine,
            } => match Program::from_bits(program_bits) {
                Ok(p) => write!(f, "elegant[{machine}]({p})"),
                Err(_) => write!(f, "elegant[{machine}](bits {program_bits})"),
            },
            Theorem::OmegaBit { index, bit } => write!(f, "omega_bit[{index}] = {bit}"),
        }
    }
}

impl Theorem {
    pub fn to_sexpr(&self) -> SExpr {
        let bit = |b: bool| SExpr::Atom(if b { b'1' } else { b'0' });
        match self {
            Theorem::Elegant { program_bits, .. } => {
                let mut items = vec![SExpr::Atom(b'e')];
                items.extend(program_bits.iter().map(bit));
                SExpr::list(items)
            }
            Theorem::OmegaBit { index, bit: b } => SExpr::list(vec![
                SExpr::Atom(b'o'),
                SExpr::list(vec![SExpr::Atom(b'1'); *index]),
                bit(*b == 1),
            ]),
        }
    }

    fn decode(e: &SExpr, position: usize) -> Result<Theorem, FasError> {
        let bad = |reason: &str| FasError::Malformed {
            position,
            reason: reason.to_string(),
        };
        let items = e.as_list().ok_or_else(|| bad("not a list"))?.to_vec();
        let bit_of = |x: &SExpr| match x.as_atom() {
            Some(b'0') => Some(false),
            Some(b'1') => Some(true),
            _ => None,
        };
        match items.first().and_then(SExpr::as_atom) {
            Some(b'e') => {
                let bits = items[1..]
                    .iter()
                    .map(bit_of)
                    .collect::<Option<Vec<bool>>>()
                    .ok_or_else(|| bad("elegance claim has a non-bit element"))?;
                let program_bits = BitString::from_bools(bits);
                Program::from_bits(&program_bits)
                    .map_err(|_| bad("claimed program does not decode"))?;
                Ok(Theorem::Elegant {
                    program_bits,
                    machine: MachineId::Total,
                })
            }
            Some(b'o') => {
                if items.len() != 3 {
                    return Err(bad("omega claim needs an index and a bit"));
                }
                let unary = items[1]
                    .as_list()
                    .ok_or_else(|| bad("omega index is not a unary list"))?;
                if unary.iter().any(|x| x.as_atom() != Some(b'1')) {
                    return Err(bad("omega index is not a unary list"));
                }
                let bit = bit_of(&items[2]).ok_or_else(|| bad("omega claim bit is not 0 or 1"))?;
                Ok(Theorem::OmegaBit {
                    index: unary.len(),
                    bit: bit as u8,
                })
            }
            _ => Err(bad("unknown theorem tag")),
        }
    }
}

/// A formal system given by its theorem enumerator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToyFAS {
    pub enumerator: Program,
    pub machine: MachineId,
}

/// Every elegant total program of at most 48 bits whose output is a bit
/// string.
const SOUND_THEOREMS: &str = "(q((e0010100000101001)\
(e0010100001110010001010010)\
(e0010100001110010001010011)))";

/// Doublings used to build the fake elegance claim.
const UNSOUND_DOUBLINGS: usize = 12;

impl ToyFAS {
    pub fn new(enumerator: Program, machine: MachineId) -> ToyFAS {
        ToyFAS {
            enumerator,
            machine,
        }
    }

    fn literal(prefix: SExpr) -> ToyFAS {
        ToyFAS::new(
            Program::new(prefix, BitString::new()).expect("literal enumerator is a list"),
            MachineId::Total,
        )
    }

    /// Size of the enumerator, an upper bound on the system's complexity.
    pub fn n_bits(&self) -> usize {
        self.enumerator.size_bits()
    }

    /// Proves nothing.
    pub fn empty() -> ToyFAS {
        ToyFAS::literal(SExpr::list(vec![SExpr::Atom(b'q'), SExpr::nil()]))
    }

    /// Lists each elegant total program up to 48 bits with bit-string
    /// output.
    pub fn bundled_sound() -> ToyFAS {
        ToyFAS::literal(parse(SOUND_THEOREMS).expect("literal parses"))
    }

    /// Claims elegance of a 32840-bit program that outputs `1`, built by
    /// doubling so that the enumerator itself stays small.
    pub fn bundled_unsound() -> ToyFAS {
        let head = text_to_bits(b"(h(q(1");
        let tail = text_to_bits(b")))");
        let z = text_to_bits(b"z");
        let mut body = "Z".to_string();
        for _ in 0..UNSOUND_DOUBLINGS {
            body = format!("(dbl {body})");
        }
        let src = format!(
            "(let ((app (rec app (a b) (if a (cons (car a) (app (cdr a) b)) b))))
               (let ((dbl (fn (x) (app x x))))
                 (list (cons (quote e) (app HEAD (app {body} TAIL))))))"
        );
        let prefix = Compiler::new()
            .constant("HEAD", SExpr::bit_list(&head))
            .constant("TAIL", SExpr::bit_list(&tail))
            .constant("Z", SExpr::bit_list(&z))
            .compile(&src)
            .expect("enumerator source compiles");
        ToyFAS::new(
            Program::new(prefix, BitString::new()).expect("compiled code is a list"),
            MachineId::Sd,
        )
    }

    /// The program the unsound system claims to be elegant.
    pub fn unsound_claim() -> BitString {
        let mut text = b"(h(q(1".to_vec();
        text.extend(std::iter::repeat_n(b'z', 1 << UNSOUND_DOUBLINGS));
        text.extend(b")))");
        text_to_bits(&text)
    }

    /// States the given digits of the capped halting probability, starting
    /// at digit 0.
    pub fn omega_bits(bits: &BitString) -> ToyFAS {
        let theorems = bits
            .iter()
            .enumerate()
            .map(|(index, b)| {
                Theorem::OmegaBit {
                    index,
                    bit: b as u8,
                }
                .to_sexpr()
            })
            .collect();
        ToyFAS::literal(SExpr::list(vec![SExpr::Atom(b'q'), SExpr::list(theorems)]))
    }

    /// Same theorems from a longer enumerator: `(h(c P ()))`.
    pub fn padded(&self) -> ToyFAS {
        let prefix = SExpr::list(vec![
            SExpr::Atom(b'h'),
            SExpr::list(vec![
                SExpr::Atom(b'c'),
                self.enumerator.prefix.clone(),
                SExpr::nil(),
            ]),
        ]);
        ToyFAS::new(
            Program {
                prefix,
                payload: self.enumerator.payload.clone(),
            },
            self.machine,
        )
    }
}

/// The theorems proved within `budget` steps. The enumerator is run to
/// completion or not at all, so the list is empty until the budget suffices.
pub fn fas_theorems(f: &ToyFAS, budget: u64) -> Result<Vec<Theorem>, FasError> {
    match run_program(f.machine, &f.enumerator, budget, None) {
        RunOutcome::Halted { value, .. } => {
            let list = value.as_list().ok_or_else(|| FasError::Malformed {
                position: 0,
                reason: "enumerator value is not a list".into(),
            })?;
            list.iter()
                .enumerate()
                .map(|(i, t)| Theorem::decode(t, i))
                .collect()
        }
        RunOutcome::OutOfBudget => Ok(Vec::new()),
        RunOutcome::Faulted(fault) => Err(FasError::EnumeratorFault(fault)),
    }
}

/// Upper bound on the complexity of the system: the size of its enumerator.
pub fn fas_complexity_upper(f: &ToyFAS) -> usize {
    f.n_bits()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BerryProgram {
    pub program: Program,
    pub size_bits: usize,
    pub threshold: usize,
}

/// The Berry driver for `f` with its self-covering threshold.
pub fn build_berry_program(f: &ToyFAS) -> Result<BerryProgram, IncompletenessError> {
    if !f.enumerator.payload.is_empty() {
        return Err(IncompletenessError::EnumeratorPayload);
    }
    let (p, threshold) = berry_fixed_point(&f.enumerator.prefix)?;
    let program = Program::new(p, BitString::new()).expect("driver is a list");
    let size_bits = program.size_bits();
    assert!(size_bits <= threshold);
    Ok(BerryProgram {
        program,
        size_bits,
        threshold,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum BerryOutcome {
    /// Ran out of budget: no claim above the threshold was found.
    Exhausted,
    Halted {
        output: Output,
    },
    Faulted {
        fault: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BerryRun {
    pub size_bits: usize,
    pub threshold: usize,
    pub budget: u64,
    pub outcome: BerryOutcome,
    /// First elegance claim longer than the threshold, found directly.
    pub claim: Option<BitString>,
    /// Output of that claim when run directly on the total machine.
    pub claim_output: Option<Output>,
    /// The driver reproduced the claimed program's output.
    pub replicated: bool,
}

/// Build the driver and run it on `sd` for `budget` steps.
pub fn run_berry(f: &ToyFAS, budget: u64) -> Result<BerryRun, IncompletenessError> {
    let berry = build_berry_program(f)?;
    let outcome = match run_program(MachineId::Sd, &berry.program, budget, None) {
        RunOutcome::Halted { value, .. } => BerryOutcome::Halted {
            output: Output::classify(&value),
        },
        RunOutcome::OutOfBudget => BerryOutcome::Exhausted,
        RunOutcome::Faulted(fault) => BerryOutcome::Faulted {
            fault: format!("{fault:?}"),
        },
    };
    let claim = fas_theorems(f, budget)?.into_iter().find_map(|t| match t {
        Theorem::Elegant { program_bits, .. } if program_bits.len() > berry.threshold => {
            Some(program_bits)
        }
        _ => None,
    });
    let claim_output = claim.as_ref().and_then(|q| {
        run_raw(MachineId::Total, q, structural_budget(q.len()))
            .value()
            .map(Output::classify)
    });
    let replicated = match (&outcome, &claim_output) {
        (BerryOutcome::Halted { output }, Some(direct)) => output == direct,
        _ => false,
    };
    Ok(BerryRun {
        size_bits: berry.size_bits,
        threshold: berry.threshold,
        budget,
        outcome,
        claim,
        claim_output,
        replicated,
    })
}

pub const DEFAULT_ORACLE_CAP: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EleganceVerdict {
    Elegant,
    Refuted { witness: BitString },
    NotAProgram,
    Unverifiable,
}

/// Exhaustive elegance oracle for the total machine: the shortest program
/// for every output produced by some program of at most `cap` bits.
#[derive(Debug, Clone)]
pub struct EleganceOracle {
    pub cap: usize,
    shortest: BTreeMap<Output, BitString>,
    halting: Vec<(BitString, Output)>,
}

impl EleganceOracle {
    pub fn new(cap: usize, workers: usize) -> EleganceOracle {
        let params =
            SweepParams::new(MachineId::Total, cap, structural_budget(cap)).workers(workers);
        let halting: Vec<(BitString, Output)> = enumerate_halting(&params)
            .into_iter()
            .map(|r| (r.program_bits, r.output))
            .collect();
        let mut shortest = BTreeMap::new();
        // records come in shortlex order, so the first per output is shortest
        for (bits, out) in &halting {
            shortest.entry(out.clone()).or_insert_with(|| bits.clone());
        }
        EleganceOracle {
            cap,
            shortest,
            halting,
        }
    }

    pub fn check(&self, q: &BitString) -> EleganceVerdict {
        let Some(value) = run_raw(MachineId::Total, q, structural_budget(q.len()))
            .value()
            .cloned()
        else {
            return EleganceVerdict::NotAProgram;
        };
        match self.shortest.get(&Output::classify(&value)) {
            Some(w) if w.len() < q.len() => EleganceVerdict::Refuted { witness: w.clone() },
            _ if q.len() <= self.cap => EleganceVerdict::Elegant,
            _ => EleganceVerdict::Unverifiable,
        }
    }

    /// Elegant programs with bit-string output, in shortlex order.
    pub fn elegant_bit_programs(&self) -> Vec<BitString> {
        self.halting
            .iter()
            .filter(|(bits, out)| {
                matches!(out, Output::Bits(_))
                    && self.shortest.get(out).map(BitString::len) == Some(bits.len())
            })
            .map(|(bits, _)| bits.clone())
            .collect()
    }
}

fn program_text(bits: &BitString) -> String {
    match Program::from_bits(bits) {
        Ok(p) => p.to_string(),
        Err(_) => bits.to_string(),
    }
}

/// Check every elegance claim against the oracle; abort on the first false
/// or uncheckable one.
pub fn soundness_gate(
    theorems: &[Theorem],
    oracle: &EleganceOracle,
    events: &mut Vec<String>,
) -> Result<(), IncompletenessError> {
    for (position, t) in theorems.iter().enumerate() {
        let Theorem::Elegant { program_bits, .. } = t else {
            continue;
        };
        match oracle.check(program_bits) {
            EleganceVerdict::Elegant => events.push(format!(
                "theorem {position}: {t} verified ({} bits)",
                program_bits.len()
            )),
            EleganceVerdict::Refuted { witness } => {
                return Err(IncompletenessError::Unsound {
                    position,
                    theorem: t.to_string(),
                    witness: program_text(&witness),
                })
            }
            EleganceVerdict::NotAProgram => {
                return Err(IncompletenessError::NotAProgram {
                    position,
                    theorem: t.to_string(),
                })
            }
            EleganceVerdict::Unverifiable => {
                return Err(IncompletenessError::Unverifiable {
                    position,
                    theorem: t.to_string(),
                    cap: oracle.cap,
                })
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CeilingReport {
    pub n_bits: usize,
    pub threshold: usize,
    pub constant: i64,
    pub max_elegant_size: Option<usize>,
    pub verdict: Verdict,
    pub budget: u64,
    pub events: Vec<String>,
    pub berry: BerryRun,
}

/// Verify the system's elegance claims, build the Berry driver and run it.
pub fn elegance_ceiling_experiment(
    f: &ToyFAS,
    budget: u64,
    oracle: &EleganceOracle,
) -> Result<CeilingReport, IncompletenessError> {
    let theorems = fas_theorems(f, budget)?;
    let mut events = vec![format!(
        "{} theorems from a {}-bit enumerator",
        theorems.len(),
        f.n_bits()
    )];
    soundness_gate(&theorems, oracle, &mut events)?;
    let max_elegant_size = theorems
        .iter()
        .filter_map(|t| match t {
            Theorem::Elegant { program_bits, .. } => Some(program_bits.len()),
            _ => None,
        })
        .max();
    let berry = run_berry(f, budget)?;
    events.push(format!(
        "driver of {} bits, threshold {}: {}",
        berry.size_bits,
        berry.threshold,
        match &berry.outcome {
            BerryOutcome::Exhausted => "budget exhausted".to_string(),
            BerryOutcome::Halted { output } => format!("halted with {output}"),
            BerryOutcome::Faulted { fault } => format!("faulted ({fault})"),
        }
    ));
    let verdict = if max_elegant_size.is_none_or(|m| m <= berry.threshold) {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    Ok(CeilingReport {
        n_bits: f.n_bits(),
        threshold: berry.threshold,
        constant: berry.threshold as i64 - f.n_bits() as i64,
        max_elegant_size,
        verdict,
        budget,
        events,
        berry,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaBitsReport {
    pub n_bits: usize,
    #[serde(rename = "L")]
    pub max_bits: usize,
    pub budget: u64,
    pub claimed: usize,
    pub correct: usize,
    pub excess: i64,
    pub events: Vec<String>,
}

/// Check the system's claims about digits of the capped halting
/// probability of the total machine at `max_bits`.
pub fn omega_bits_ceiling_experiment(
    f: &ToyFAS,
    max_bits: usize,
    budget: u64,
    workers: usize,
) -> Result<OmegaBitsReport, IncompletenessError> {
    let theorems = fas_theorems(f, budget)?;
    let claims: Vec<(usize, u8)> = theorems
        .iter()
        .filter_map(|t| match t {
            Theorem::OmegaBit { index, bit } => Some((*index, *bit)),
            _ => None,
        })
        .collect();
    let width = claims.iter().map(|c| c.0 + 1).max().unwrap_or(0);
    let omega = omega_exact_capped(max_bits, workers);
    let digits = omega.bits(width).expect("capped value lies below 1");
    let mut correct = std::collections::BTreeSet::new();
    let mut events = Vec::new();
    for &(index, bit) in &claims {
        let actual = digits.get(index).unwrap() as u8;
        if actual != bit {
            return Err(IncompletenessError::WrongOmegaBit {
                index,
                claimed: bit,
                actual,
            });
        }
        events.push(format!("digit {index} = {bit} verified"));
        correct.insert(index);
    }
    Ok(OmegaBitsReport {
        n_bits: f.n_bits(),
        max_bits,
        budget,
        claimed: claims.len(),
        correct: correct.len(),
        excess: correct.len() as i64 - f.n_bits() as i64,
        events,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagReport {
    pub n: u64,
    /// Values of the members consulted, `family[0..=min(n, len-1)]` at `n`.
    pub member_values: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagError {
    #[error("family member {0} did not halt on input {1}: {2:?}")]
    NoValue(usize, u64, RunOutcome),
}

/// Apply a family member to `k`: substitute the quoted unary numeral for
/// the parameter atom `n` and count the atoms of the result.
pub fn apply_member(f: &SExpr, k: u64) -> Result<BigUint, RunOutcome> {
    let numeral = SExpr::list(vec![
        SExpr::Atom(b'q'),
        SExpr::list(vec![SExpr::Atom(b'1'); k as usize]),
    ]);
    let e = subst(f, b'n', &numeral);
    let empty = BitString::new();
    let cfg = VMConfig::new(e.subexpr_count() as u64 + 1, &empty)
        .with_fragment(crate::lispvm::Fragment::Total);
    match eval(&e, &cfg) {
        RunOutcome::Halted { value, .. } => Ok(BigUint::from(value.atom_count())),
        other => Err(other),
    }
}

/// `F(n) = 1 + max` of the first `n + 1` members at `n`, which differs from
/// every one of them at the diagonal.
pub fn diagonalize_total(family: &[SExpr], n: u64) -> Result<DiagReport, DiagError> {
    let used = family
        .len()
        .min(n.saturating_add(1).min(usize::MAX as u64) as usize);
    let mut values = Vec::with_capacity(used);
    for (i, f) in family.iter().take(used).enumerate() {
        values.push(apply_member(f, n).map_err(|o| DiagError::NoValue(i, n, o))?);
    }
    let value = values.iter().max().cloned().unwrap_or_default() + 1u32;
    Ok(DiagReport {
        n,
        member_values: values.iter().map(BigUint::to_string).collect(),
        value: value.to_string(),
    })
}

/// `f_i(n) = (i + 1) n`: a list of `i + 1` copies of the numeral.
pub fn multiples_family(members: usize) -> Vec<SExpr> {
    (0..members)
        .map(|i| {
            let mut e = SExpr::nil();
            for _ in 0..=i {
                e = SExpr::list(vec![SExpr::Atom(b'c'), SExpr::Atom(b'n'), e]);
            }
            e
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitio::bs_parse;

    fn oracle() -> &'static EleganceOracle {
        static O: std::sync::OnceLock<EleganceOracle> = std::sync::OnceLock::new();
        O.get_or_init(|| EleganceOracle::new(DEFAULT_ORACLE_CAP, 0))
    }

    fn elegant(text: &str) -> Theorem {
        let (prefix, payload) = text.split_at(text.rfind(')').unwrap() + 1);
        let p = Program::new(parse(prefix).unwrap(), bs_parse(payload).unwrap()).unwrap();
        Theorem::Elegant {
            program_bits: p.to_bits(),
            machine: MachineId::Total,
        }
    }

    #[test]
    fn theorem_encoding_round_trips() {
        for t in [
            elegant("(r)1"),
            Theorem::OmegaBit { index: 0, bit: 1 },
            Theorem::OmegaBit { index: 3, bit: 0 },
        ] {
            assert_eq!(Theorem::decode(&t.to_sexpr(), 0).unwrap(), t);
        }
        let bad = parse("(e01a)").unwrap();
        assert!(matches!(
            Theorem::decode(&bad, 4),
            Err(FasError::Malformed { position: 4, .. })
        ));
        assert!(Theorem::decode(&parse("(o(10)1)").unwrap(), 0).is_err());
    }

    #[test]
    fn theorems_examples() {
        let sound = ToyFAS::bundled_sound();
        assert!(fas_theorems(&sound, 0).unwrap().is_empty());
        let ts = fas_theorems(&sound, 1_000_000).unwrap();
        assert_eq!(ts, vec![elegant("()"), elegant("(r)0"), elegant("(r)1")]);
        let mut prev: Vec<Theorem> = Vec::new();
        for b in [0, 1, 2, 10, 1000] {
            let now = fas_theorems(&sound, b).unwrap();
            assert!(now.starts_with(&prev));
            prev = now;
        }
        let faulty = ToyFAS::literal(parse("(h())").unwrap());
        assert!(fas_theorems(&faulty, 10).is_err());
        let malformed = ToyFAS::literal(parse("(q((e0)(x)))").unwrap());
        assert!(matches!(
            fas_theorems(&malformed, 10),
            Err(FasError::Malformed { position: 0, .. })
        ));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(fas_complexity_upper(&ToyFAS::empty()), 40);
        let sound = ToyFAS::bundled_sound();
        assert_eq!(fas_complexity_upper(&sound), 8 * SOUND_THEOREMS.len());
        assert!(fas_complexity_upper(&sound.padded()) > fas_complexity_upper(&sound));
        assert_eq!(
            fas_theorems(&sound.padded(), 1000).unwrap(),
            fas_theorems(&sound, 1000).unwrap()
        );
    }

    #[test]
    fn sound_system_matches_the_oracle() {
        let ts = fas_theorems(&ToyFAS::bundled_sound(), 1000).unwrap();
        let claimed: Vec<BitString> = ts
            .iter()
            .map(|t| match t {
                Theorem::Elegant { program_bits, .. } => program_bits.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(claimed, oracle().elegant_bit_programs());
        let mut events = Vec::new();
        soundness_gate(&ts, oracle(), &mut events).unwrap();
        assert_eq!(events.len(), 3);
    }

    #[test]
    fn oracle_verdicts() {
        let o = oracle();
        let bits = |t: &str| match elegant(t) {
            Theorem::Elegant { program_bits, .. } => program_bits,
            _ => unreachable!(),
        };
        assert_eq!(o.check(&bits("(r)0")), EleganceVerdict::Elegant);
        assert!(matches!(
            o.check(&bits("(q(0))")),
            EleganceVerdict::Refuted { .. }
        ));
        assert_eq!(o.check(&bits("(h())")), EleganceVerdict::NotAProgram);
        assert_eq!(o.check(&bits("(q(00))")), EleganceVerdict::Unverifiable);
    }

    #[test]
    fn unsound_system_claims_the_long_program() {
        let ts = fas_theorems(&ToyFAS::bundled_unsound(), 10_000_000).unwrap();
        let q = ToyFAS::unsound_claim();
        assert_eq!(q.len(), 32840);
        assert_eq!(
            ts,
            vec![Theorem::Elegant {
                program_bits: q,
                machine: MachineId::Total
            }]
        );
        let err = elegance_ceiling_experiment(&ToyFAS::bundled_unsound(), 10_000_000, oracle())
            .unwrap_err();
        assert!(err.is_unsound());
        assert!(err.to_string().contains("(r)1"));
    }

    #[test]
    fn berry_driver_replicates_the_fake_claim() {
        let run = run_berry(&ToyFAS::bundled_unsound(), 10_000_000).unwrap();
        assert!(run.size_bits <= run.threshold);
        assert_eq!(run.claim, Some(ToyFAS::unsound_claim()));
        assert_eq!(
            run.outcome,
            BerryOutcome::Halted {
                output: Output::Bits(bs_parse("1").unwrap())
            }
        );
        assert!(run.replicated);
    }

    #[test]
    fn berry_threshold_and_padding() {
        let sound = ToyFAS::bundled_sound();
        let b = build_berry_program(&sound).unwrap();
        assert!(b.size_bits <= b.threshold);
        let padded = sound.padded();
        let pb = build_berry_program(&padded).unwrap();
        let pad = padded.n_bits() - sound.n_bits();
        assert!(pb.threshold > b.threshold);
        assert!(pb.threshold <= b.threshold + pad + 8);
        assert!(matches!(
            build_berry_program(&ToyFAS::new(
                Program::new(parse("(r)").unwrap(), bs_parse("1").unwrap()).unwrap(),
                MachineId::Sd
            )),
            Err(IncompletenessError::EnumeratorPayload)
        ));
    }

    #[test]
    fn ceiling_examples() {
        let r = elegance_ceiling_experiment(&ToyFAS::bundled_sound(), 1_000_000, oracle()).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert_eq!(r.max_elegant_size, Some(25));
        assert_eq!(r.berry.outcome, BerryOutcome::Exhausted);
        let r = elegance_ceiling_experiment(&ToyFAS::empty(), 100_000, oracle()).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert_eq!(r.max_elegant_size, None);
    }

    #[test]
    fn omega_bits_examples() {
        let omega = omega_exact_capped(24, 1);
        let first8 = omega.bits(8).unwrap();
        let r = omega_bits_ceiling_experiment(&ToyFAS::omega_bits(&first8), 24, 1000, 1).unwrap();
        assert_eq!((r.claimed, r.correct), (8, 8));
        assert_eq!(r.excess, 8 - r.n_bits as i64);
        let mut flipped = first8.into_vec();
        flipped[5] = !flipped[5];
        let err = omega_bits_ceiling_experiment(
            &ToyFAS::omega_bits(&BitString::from_bools(flipped)),
            24,
            1000,
            1,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            IncompletenessError::WrongOmegaBit { index: 5, .. }
        ));
        let r = omega_bits_ceiling_experiment(&ToyFAS::empty(), 24, 1000, 1).unwrap();
        assert_eq!(r.correct, 0);
    }

    #[test]
    fn diagonal_examples() {
        let fam = multiples_family(3);
        let r = diagonalize_total(&fam, 2).unwrap();
        assert_eq!(r.member_values, vec!["2", "4", "6"]);
        assert_eq!(r.value, "7");
        assert_eq!(diagonalize_total(&[], 5).unwrap().value, "1");
        let fam = multiples_family(6);
        for n in 0..8u64 {
            let f: BigUint = diagonalize_total(&fam, n).unwrap().value.parse().unwrap();
            for (i, member) in fam.iter().enumerate().take(n as usize + 1) {
                assert_ne!(apply_member(member, n).unwrap(), f, "i={i} n={n}");
            }
        }
    }
}
