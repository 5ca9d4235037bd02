//! Halting-probability bounds.
//!
//! The sums run over domain programs (every halting, fully consuming
//! program), whatever they output; mass from programs whose value is not a
//! bit string or pair is also reported on its own.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitio::{dyadic_bits, BitString, BitsError, DyadicRational};
use crate::complexity::{
    enumerate_halting, explore, for_each_list_text, ComplexityTable, Explored, HaltRecord,
    SweepParams,
};
use crate::machines::{MachineId, Output};
use crate::par;
use crate::sexpr::parse_bytes;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("machine {0} is not self-delimiting")]
    NotSelfDelimiting(MachineId),
    #[error("{0} oracle bits requested but the ensemble is capped at {1} bits")]
    TooManyBits(usize, usize),
    #[error("block size must be between 1 and 24 and at most the string length")]
    BadBlock,
    #[error(transparent)]
    Bits(#[from] BitsError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaApprox {
    pub machine: MachineId,
    #[serde(rename = "L")]
    pub max_bits: usize,
    #[serde(rename = "B")]
    pub budget: u64,
    pub value: DyadicRational,
    pub contributing: usize,
    /// Part of `value` from programs whose output is neither a bit string
    /// nor a pair of them.
    pub unconvertible_mass: DyadicRational,
    pub unconvertible: usize,
}

impl OmegaApprox {
    fn from_records(params: &SweepParams, records: &[HaltRecord]) -> OmegaApprox {
        let mut value = DyadicRational::zero();
        let mut unconvertible_mass = DyadicRational::zero();
        let mut unconvertible = 0;
        for r in records {
            let term = DyadicRational::pow2_neg(r.size_bits as u64);
            if matches!(r.output, Output::Other(_)) {
                unconvertible_mass += &term;
                unconvertible += 1;
            }
            value += &term;
        }
        OmegaApprox {
            machine: params.machine,
            max_bits: params.max_bits,
            budget: params.budget,
            value,
            contributing: records.len(),
            unconvertible_mass,
            unconvertible,
        }
    }

    pub fn bits(&self, k: usize) -> Result<BitString, BitsError> {
        dyadic_bits(&self.value, k)
    }
}

/// Exact sum of `2^-|p|` over the domain members found at `(L, B)`.
pub fn omega_lower_bound(params: &SweepParams) -> Result<OmegaApprox, OmegaError> {
    if !params.machine.is_self_delimiting() {
        return Err(OmegaError::NotSelfDelimiting(params.machine));
    }
    Ok(OmegaApprox::from_records(
        params,
        &enumerate_halting(params),
    ))
}

/// A budget no total program of at most `max_bits` bits can exhaust: each
/// list node costs at most one step and a text of `max_bits / 8`
/// characters has fewer nodes than characters.
pub fn structural_budget(max_bits: usize) -> u64 {
    (max_bits / 8) as u64
}

/// Halting probability of the total machine restricted to programs of at
/// most `max_bits` bits, exactly.
pub fn omega_exact_capped(max_bits: usize, workers: usize) -> OmegaApprox {
    let params =
        SweepParams::new(MachineId::Total, max_bits, structural_budget(max_bits)).workers(workers);
    OmegaApprox::from_records(&params, &enumerate_halting(&params))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaDoublePrime {
    pub n: u64,
    pub value: DyadicRational,
    /// Numerals with no program in the table; their terms are left out.
    pub missing: Vec<u64>,
}

/// `sum_{1 <= n <= N} 2^-h(n)` with `n` written in binary, most significant
/// bit first and without leading zeros. Built from upper bounds on `h`, so
/// every term is a lower bound on the true term.
pub fn omega_double_prime(table: &ComplexityTable, n_max: u64) -> OmegaDoublePrime {
    let mut value = DyadicRational::zero();
    let mut missing = Vec::new();
    for n in 1..=n_max {
        let x = BitString::from_natural(&n.into());
        match table.get(&x) {
            Some(e) => value += &DyadicRational::pow2_neg(e.h_upper as u64),
            None => missing.push(n),
        }
    }
    OmegaDoublePrime {
        n: n_max,
        value,
        missing,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum OracleOutcome {
    /// Every program of at most `k` bits that halts is listed.
    Complete {
        halting: Vec<BitString>,
        stages: usize,
        final_budget: u64,
    },
    /// The guard ran out, or every program was resolved and the sum still
    /// fell short: the given bits cannot be a prefix of the capped value.
    GuardTripped { stages: usize, resolved: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub kbits: BitString,
    #[serde(rename = "L")]
    pub max_bits: usize,
    pub guard: u64,
    pub steps: u64,
    pub lower_bound: DyadicRational,
    pub outcome: OracleOutcome,
}

pub const DEFAULT_ORACLE_GUARD: u64 = 100_000_000;

/// Decide halting for every total program of at most `k = |kbits|` bits,
/// given the first `k` bits of the capped halting probability: dovetail
/// the ensemble with doubling budgets until the halted mass reaches the
/// value of `kbits`. Any program of at most `k` bits still running then
/// would push the sum past the true value.
pub fn oracle_halting_from_omega(
    kbits: &BitString,
    max_bits: usize,
    guard: u64,
    workers: usize,
) -> Result<OracleReport, OmegaError> {
    let k = kbits.len();
    if k > max_bits {
        return Err(OmegaError::TooManyBits(k, max_bits));
    }
    let target = DyadicRational::from_fraction_bits(kbits);
    let mut pending: Vec<(crate::sexpr::SExpr, BitString)> = Vec::new();
    for len in 2..=max_bits / 8 {
        for_each_list_text(len, &mut |t| {
            pending.push((
                parse_bytes(t).expect("generated texts parse"),
                BitString::new(),
            ));
        });
    }
    let mut halted: Vec<HaltRecord> = Vec::new();
    let mut sum = DyadicRational::zero();
    let mut steps = 0u64;
    let mut budget = 1u64;
    let mut stages = 0;
    let outcome = loop {
        if sum >= target {
            let mut halting: Vec<BitString> = halted
                .iter()
                .filter(|r| r.size_bits <= k)
                .map(|r| r.program_bits.clone())
                .collect();
            halting.sort_by(|a, b| a.shortlex_cmp(b));
            break OracleOutcome::Complete {
                halting,
                stages,
                final_budget: budget / 2,
            };
        }
        if pending.is_empty() || steps >= guard {
            break OracleOutcome::GuardTripped {
                stages,
                resolved: pending.is_empty(),
            };
        }
        stages += 1;
        let results = par::map(&pending, workers, |(prefix, payload)| {
            let mut ex = Explored::default();
            explore(
                MachineId::Total,
                prefix,
                payload.clone(),
                max_bits,
                budget,
                None,
                &mut ex,
            );
            ex
        });
        pending = Vec::new();
        for ex in results {
            steps = steps.saturating_add(ex.steps);
            for r in ex.halted {
                sum += &DyadicRational::pow2_neg(r.size_bits as u64);
                halted.push(r);
            }
            pending.extend(ex.pending.into_iter().map(|p| (p.prefix, p.payload)));
        }
        budget = budget.saturating_mul(2);
    };
    Ok(OracleReport {
        kbits: kbits.clone(),
        max_bits,
        guard,
        steps,
        lower_bound: sum,
        outcome,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockFrequency {
    pub block: BitString,
    pub count: usize,
    pub frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub k: usize,
    pub blocks: usize,
    pub tol: f64,
    pub expected: f64,
    pub frequencies: Vec<BlockFrequency>,
    pub pass: bool,
}

/// Split `x` into disjoint `k`-bit blocks and compare each block value's
/// frequency with `2^-k`.
pub fn borel_normality(x: &BitString, k: usize, tol: f64) -> Result<NormalityReport, OmegaError> {
    if k == 0 || k > 24 || x.len() < k {
        return Err(OmegaError::BadBlock);
    }
    let blocks = x.len() / k;
    let mut counts = vec![0usize; 1 << k];
    for b in 0..blocks {
        let v = (0..k).fold(0usize, |acc, i| {
            (acc << 1) | x.get(b * k + i).unwrap() as usize
        });
        counts[v] += 1;
    }
    let expected = 1.0 / (1u64 << k) as f64;
    let frequencies: Vec<BlockFrequency> = counts
        .iter()
        .enumerate()
        .map(|(v, &count)| BlockFrequency {
            block: BitString::from_u64(v as u64, k),
            count,
            frequency: count as f64 / blocks as f64,
        })
        .collect();
    let pass = frequencies
        .iter()
        .all(|f| (f.frequency - expected).abs() <= tol);
    Ok(NormalityReport {
        k,
        blocks,
        tol,
        expected,
        frequencies,
        pass,
    })
}
