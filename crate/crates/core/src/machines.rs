//! The complexity machines.
//!
//! * `c2` reads the whole program and knows where it ends. A leading `0`
//!   prints the rest of the program; a leading `1` makes the rest one
//!   expression, evaluated with nothing on the payload channel.
//! * `sd` is self-delimiting: a program is a list expression (the prefix)
//!   followed by payload bits that the prefix reads with `r`. A run counts
//!   only if it halts having read the payload exactly.
//! * `total` is `sd` restricted to the total fragment, so halting is
//!   decidable.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitio::BitString;
use crate::lispvm::{eval, value_to_bitstring, Fault, Fragment, RunOutcome, VMConfig};
use crate::sexpr::{decode_text, from_bits_prefix, parse_bytes, to_bits, CodecError, SExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MachineId {
    C2,
    Sd,
    Total,
}

impl MachineId {
    pub fn name(self) -> &'static str {
        match self {
            MachineId::C2 => "c2",
            MachineId::Sd => "sd",
            MachineId::Total => "total",
        }
    }

    pub fn is_self_delimiting(self) -> bool {
        !matches!(self, MachineId::C2)
    }

    pub fn fragment(self) -> Fragment {
        match self {
            MachineId::Total => Fragment::Total,
            _ => Fragment::General,
        }
    }
}

impl fmt::Display for MachineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown machine {0:?} (expected c2, sd or total)")]
pub struct UnknownMachine(pub String);

impl FromStr for MachineId {
    type Err = UnknownMachine;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "c2" => Ok(MachineId::C2),
            "sd" => Ok(MachineId::Sd),
            "total" => Ok(MachineId::Total),
            other => Err(UnknownMachine(other.to_string())),
        }
    }
}

/// A self-delimiting program: list prefix plus payload bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Program {
    pub prefix: SExpr,
    pub payload: BitString,
}

impl Program {
    pub fn new(prefix: SExpr, payload: BitString) -> Result<Program, CodecError> {
        if prefix.is_atom() {
            return Err(CodecError::BareAtom);
        }
        Ok(Program { prefix, payload })
    }

    pub fn size_bits(&self) -> usize {
        8 * self.prefix.print_len() + self.payload.len()
    }

    pub fn to_bits(&self) -> BitString {
        to_bits(&self.prefix)
            .expect("prefix is a list")
            .concat(&self.payload)
    }

    /// Split raw bits into the balanced prefix and the remaining payload.
    pub fn from_bits(bits: &BitString) -> Result<Program, CodecError> {
        let (prefix, used) = from_bits_prefix(bits)?;
        Ok(Program {
            prefix,
            payload: bits.slice(used, bits.len()),
        })
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.prefix, self.payload)
    }
}

/// Output convention for single-string results: a flat list of `0`/`1`
/// atoms, or a lone `0`/`1` atom standing for a one-bit string.
pub fn output_bits(v: &SExpr) -> Result<BitString, Fault> {
    match v {
        SExpr::Atom(b'0') => Ok(BitString::from_bools(vec![false])),
        SExpr::Atom(b'1') => Ok(BitString::from_bools(vec![true])),
        _ => value_to_bitstring(v),
    }
}

/// What a halting run produced, classified by shape.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Bits(BitString),
    Pair(BitString, BitString),
    /// Halted, but the value is neither a bit string nor a pair of them.
    Other(String),
}

impl Output {
    pub fn classify(v: &SExpr) -> Output {
        if let Ok(bits) = output_bits(v) {
            return Output::Bits(bits);
        }
        if let Ok((x, y)) = crate::lispvm::value_to_pair(v) {
            return Output::Pair(x, y);
        }
        Output::Other(v.to_string())
    }

    pub fn as_bits(&self) -> Option<&BitString> {
        match self {
            Output::Bits(b) => Some(b),
            _ => None,
        }
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Bits(b) => write!(f, "\"{b}\""),
            Output::Pair(x, y) => write!(f, "(\"{x}\", \"{y}\")"),
            Output::Other(v) => write!(f, "{v}"),
        }
    }
}

/// Blank-endmarker machine. The halted value is normalised to the output
/// bit list.
pub fn run_c2(raw: &BitString, budget: u64) -> RunOutcome {
    let Some(first) = raw.get(0) else {
        return RunOutcome::Faulted(Fault::Decode);
    };
    let rest = raw.slice(1, raw.len());
    if !first {
        if budget == 0 {
            return RunOutcome::OutOfBudget;
        }
        return RunOutcome::Halted {
            value: SExpr::bit_list(&rest),
            payload_consumed: 0,
            steps: 1,
        };
    }
    let Ok(text) = decode_text(&rest) else {
        return RunOutcome::Faulted(Fault::Decode);
    };
    let Ok(expr) = parse_bytes(&text) else {
        return RunOutcome::Faulted(Fault::Decode);
    };
    let empty = BitString::new();
    match eval(&expr, &VMConfig::new(budget, &empty)) {
        RunOutcome::Halted {
            value,
            payload_consumed,
            steps,
        } => match output_bits(&value) {
            Ok(bits) => RunOutcome::Halted {
                value: SExpr::bit_list(&bits),
                payload_consumed,
                steps,
            },
            Err(f) => RunOutcome::Faulted(f),
        },
        other => other,
    }
}

/// Run a self-delimiting program on `sd` or `total`, optionally with an aux
/// channel. Under-consumption of the payload is reported as
/// `Faulted(PayloadOverrun)`.
pub fn run_program(
    machine: MachineId,
    p: &Program,
    budget: u64,
    aux: Option<&BitString>,
) -> RunOutcome {
    let mut cfg = VMConfig::new(budget, &p.payload).with_fragment(machine.fragment());
    if let Some(aux) = aux {
        cfg = cfg.with_aux(aux);
    }
    match eval(&p.prefix, &cfg) {
        RunOutcome::Halted {
            payload_consumed, ..
        } if payload_consumed < p.payload.len() => RunOutcome::Faulted(Fault::PayloadOverrun),
        other => other,
    }
}

pub fn run_sd(p: &Program, budget: u64) -> RunOutcome {
    run_program(MachineId::Sd, p, budget, None)
}

pub fn run_total(p: &Program, budget: u64) -> RunOutcome {
    run_program(MachineId::Total, p, budget, None)
}

/// Run any machine on raw program bits.
pub fn run_raw(machine: MachineId, bits: &BitString, budget: u64) -> RunOutcome {
    match machine {
        MachineId::C2 => run_c2(bits, budget),
        m => match Program::from_bits(bits) {
            Ok(p) => run_program(m, &p, budget, None),
            Err(_) => RunOutcome::Faulted(Fault::Decode),
        },
    }
}

/// Domain membership within `budget` for a self-delimiting machine.
pub fn in_domain(machine: MachineId, bits: &BitString, budget: u64) -> bool {
    machine.is_self_delimiting() && run_raw(machine, bits, budget).is_halted()
}
