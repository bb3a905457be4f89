//! Linear array of single-ion traps and compilation of remote two-qubit gates
//! into merge / hold / split sequences.
//!
//! A remote sqrt(SWAP) between traps `a < b` moves the state of `a` next to
//! `b` with a chain of SWAPs (each a doubled sqrt(SWAP) hold), applies one
//! sqrt(SWAP), and undoes the chain. Time is logical: merges and splits are
//! instantaneous and every hold lasts a whole number of collision
//! half-periods `pi / omega_z`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::error::{Error, Result};

/// Relative slack when checking that a hold is a whole number of half-periods.
pub const QUANTIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrapArray {
    /// Trap length / spacing, m.
    pub trap_length: f64,
    occupancy: Vec<String>,
}

impl TrapArray {
    /// One qubit label per trap, in trap order.
    pub fn new(occupancy: Vec<String>, trap_length: f64) -> Result<Self> {
        if occupancy.len() < 2 {
            return Err(Error::invalid("n_traps", "need at least two traps"));
        }
        if !(trap_length > 0.0 && trap_length.is_finite()) {
            return Err(Error::invalid("trap_length", "must be positive"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for label in &occupancy {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::invalid(
                    "occupancy",
                    format!("bad qubit label `{label}`"),
                ));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::invalid(
                    "occupancy",
                    format!("label `{label}` appears twice; each trap holds one ion"),
                ));
            }
        }
        Ok(Self {
            trap_length,
            occupancy,
        })
    }

    /// `n` traps holding `q0 .. q{n-1}`.
    pub fn with_count(n: usize, trap_length: f64) -> Result<Self> {
        Self::new((0..n).map(|i| format!("q{i}")).collect(), trap_length)
    }

    pub fn n_traps(&self) -> usize {
        self.occupancy.len()
    }

    pub fn occupancy(&self) -> &[String] {
        &self.occupancy
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.occupancy.iter().position(|l| l == label)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GateKind {
    SqrtSwap,
    Swap,
}

impl GateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GateKind::SqrtSwap => "sqrt_swap",
            GateKind::Swap => "swap",
        }
    }

    /// Number of sqrt(SWAP) holds the gate takes.
    pub fn sqrt_swap_units(&self) -> u32 {
        match self {
            GateKind::SqrtSwap => 1,
            GateKind::Swap => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EventKind {
    Merge,
    Hold,
    Split,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Merge => "MERGE",
            EventKind::Hold => "HOLD",
            EventKind::Split => "SPLIT",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Event {
    pub t_start: f64,
    pub t_end: f64,
    pub kind: EventKind,
    pub trap_i: usize,
    pub trap_j: usize,
    pub gate: GateKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MergeSchedule {
    pub events: Vec<Event>,
    /// Sum of all hold times, s.
    pub total_time: f64,
    /// `pi / omega_z`, s.
    pub half_period: f64,
    /// Hold time of one sqrt(SWAP): `t_g` rounded up to whole half-periods.
    pub sqrt_swap_hold: f64,
    /// Labels the remote gate acts on, if the schedule came from the router.
    pub target: Option<(String, String)>,
}

fn hold_for(t_g: f64, half_period: f64) -> f64 {
    let periods = t_g / half_period;
    let nearest = periods.round();
    let n = if nearest >= 1.0 && (periods - nearest).abs() <= QUANTIZATION_TOLERANCE * periods {
        nearest
    } else {
        periods.ceil().max(1.0)
    };
    n * half_period
}

/// Compiles a sqrt(SWAP) between `qubit_a` and `qubit_b`.
pub fn route_remote_gate(
    array: &TrapArray,
    qubit_a: &str,
    qubit_b: &str,
    gate_time_tg: f64,
    omega_z: f64,
) -> Result<MergeSchedule> {
    let pa = array
        .position(qubit_a)
        .ok_or_else(|| Error::UnknownQubit(qubit_a.to_string()))?;
    let pb = array
        .position(qubit_b)
        .ok_or_else(|| Error::UnknownQubit(qubit_b.to_string()))?;
    if pa == pb {
        return Err(Error::SameTrap(qubit_a.to_string(), qubit_b.to_string()));
    }
    if !(gate_time_tg > 0.0 && gate_time_tg.is_finite()) {
        return Err(Error::invalid("t_g", "must be positive"));
    }
    if !(omega_z > 0.0 && omega_z.is_finite()) {
        return Err(Error::invalid("omega_z", "must be positive"));
    }
    let half_period = PI / omega_z;
    let sqrt_hold = hold_for(gate_time_tg, half_period);
    let (lo, hi) = (pa.min(pb), pa.max(pb));

    let mut plan: Vec<(usize, GateKind)> = (lo..hi - 1).map(|i| (i, GateKind::Swap)).collect();
    plan.push((hi - 1, GateKind::SqrtSwap));
    plan.extend((lo..hi - 1).rev().map(|i| (i, GateKind::Swap)));

    let mut events = Vec::with_capacity(plan.len() * 3);
    let mut t = 0.0;
    for (i, gate) in plan {
        let hold = sqrt_hold * gate.sqrt_swap_units() as f64;
        let end = t + hold;
        let ev = |t_start, t_end, kind| Event {
            t_start,
            t_end,
            kind,
            trap_i: i,
            trap_j: i + 1,
            gate,
        };
        events.push(ev(t, t, EventKind::Merge));
        events.push(ev(t, end, EventKind::Hold));
        events.push(ev(end, end, EventKind::Split));
        t = end;
    }
    Ok(MergeSchedule {
        events,
        total_time: t,
        half_period,
        sqrt_swap_hold: sqrt_hold,
        target: Some((qubit_a.to_string(), qubit_b.to_string())),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    TrapOutOfRange {
        event: usize,
    },
    NonAdjacent {
        event: usize,
    },
    NegativeDuration {
        event: usize,
    },
    TimeReversal {
        event: usize,
    },
    InstantaneousExpected {
        event: usize,
    },
    /// A trap would take part in two merges at once.
    Exclusivity {
        event: usize,
        trap: usize,
    },
    NotMerged {
        event: usize,
    },
    Quantization {
        event: usize,
        half_periods: f64,
    },
    HoldMismatch {
        event: usize,
        expected: f64,
        actual: f64,
    },
    UnclosedMerge {
        trap_i: usize,
    },
    FinalOccupancy {
        trap: usize,
        expected: String,
        actual: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TrapOutOfRange { event } => {
                write!(f, "event {event}: trap index out of range")
            }
            Violation::NonAdjacent { event } => {
                write!(f, "event {event}: traps are not neighbours")
            }
            Violation::NegativeDuration { event } => {
                write!(f, "event {event}: ends before it starts")
            }
            Violation::TimeReversal { event } => {
                write!(f, "event {event}: starts before the previous event")
            }
            Violation::InstantaneousExpected { event } => {
                write!(f, "event {event}: merge/split must be instantaneous")
            }
            Violation::Exclusivity { event, trap } => {
                write!(f, "event {event}: trap {trap} is already merged")
            }
            Violation::NotMerged { event } => write!(f, "event {event}: traps are not merged"),
            Violation::Quantization {
                event,
                half_periods,
            } => write!(
                f,
                "event {event}: hold of {half_periods} half-periods is not a whole number"
            ),
            Violation::HoldMismatch {
                event,
                expected,
                actual,
            } => write!(
                f,
                "event {event}: hold lasts {actual:e} s, gate needs {expected:e} s"
            ),
            Violation::UnclosedMerge { trap_i } => {
                write!(
                    f,
                    "traps {trap_i}-{} are still merged at the end",
                    trap_i + 1
                )
            }
            Violation::FinalOccupancy {
                trap,
                expected,
                actual,
            } => write!(
                f,
                "trap {trap} ends with `{actual}` instead of `{expected}`"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Label pairs that shared a sqrt(SWAP) hold, in order.
    pub sqrt_swap_pairs: Vec<(String, String)>,
    pub final_occupancy: Vec<String>,
    /// Phase-gate byproducts per qubit, in multiples of theta.
    pub theta_multiples: BTreeMap<String, u32>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= QUANTIZATION_TOLERANCE * a.abs().max(b.abs())
}

/// Checks nesting, adjacency, exclusivity, quantization and final occupancy,
/// simulating the label permutation as it goes.
pub fn validate_schedule(array: &TrapArray, schedule: &MergeSchedule) -> ValidationReport {
    let n = array.n_traps();
    let mut violations = Vec::new();
    let mut occupancy = array.occupancy().to_vec();
    // merged_with[i] = Some(i + 1) when the pair (i, i + 1) is merged.
    let mut merged = vec![false; n];
    let mut sqrt_swap_pairs = Vec::new();
    let mut theta_multiples: BTreeMap<String, u32> =
        occupancy.iter().map(|l| (l.clone(), 0)).collect();
    let mut last_start = f64::NEG_INFINITY;

    for (idx, ev) in schedule.events.iter().enumerate() {
        if ev.trap_i >= n || ev.trap_j >= n {
            violations.push(Violation::TrapOutOfRange { event: idx });
            continue;
        }
        if ev.trap_j != ev.trap_i + 1 {
            violations.push(Violation::NonAdjacent { event: idx });
            continue;
        }
        if !(ev.t_end >= ev.t_start) {
            violations.push(Violation::NegativeDuration { event: idx });
        }
        if ev.t_start < last_start {
            violations.push(Violation::TimeReversal { event: idx });
        }
        last_start = last_start.max(ev.t_start);
        let i = ev.trap_i;
        // merged[i] marks the pair (i, i+1); a trap is busy if either pair
        // touching it is merged.
        let busy = |m: &[bool], t: usize| m[t] || (t > 0 && m[t - 1]);
        match ev.kind {
            EventKind::Merge => {
                if ev.t_end != ev.t_start {
                    violations.push(Violation::InstantaneousExpected { event: idx });
                }
                for t in [i, i + 1] {
                    if busy(&merged, t) {
                        violations.push(Violation::Exclusivity {
                            event: idx,
                            trap: t,
                        });
                    }
                }
                merged[i] = true;
            }
            EventKind::Split => {
                if ev.t_end != ev.t_start {
                    violations.push(Violation::InstantaneousExpected { event: idx });
                }
                if !merged[i] {
                    violations.push(Violation::NotMerged { event: idx });
                }
                merged[i] = false;
            }
            EventKind::Hold => {
                if !merged[i] {
                    violations.push(Violation::NotMerged { event: idx });
                }
                let dur = ev.t_end - ev.t_start;
                let periods = dur / schedule.half_period;
                if !(periods >= 0.5 && close(periods, periods.round())) {
                    violations.push(Violation::Quantization {
                        event: idx,
                        half_periods: periods,
                    });
                }
                let expected = schedule.sqrt_swap_hold * ev.gate.sqrt_swap_units() as f64;
                if !close(dur, expected) {
                    violations.push(Violation::HoldMismatch {
                        event: idx,
                        expected,
                        actual: dur,
                    });
                }
                let units = ev.gate.sqrt_swap_units();
                for t in [i, i + 1] {
                    *theta_multiples.entry(occupancy[t].clone()).or_insert(0) += units;
                }
                match ev.gate {
                    GateKind::Swap => occupancy.swap(i, i + 1),
                    GateKind::SqrtSwap => {
                        sqrt_swap_pairs.push((occupancy[i].clone(), occupancy[i + 1].clone()))
                    }
                }
            }
        }
    }
    for (i, &m) in merged.iter().enumerate() {
        if m {
            violations.push(Violation::UnclosedMerge { trap_i: i });
        }
    }
    for (t, (exp, act)) in array.occupancy().iter().zip(&occupancy).enumerate() {
        if exp != act {
            violations.push(Violation::FinalOccupancy {
                trap: t,
                expected: exp.clone(),
                actual: act.clone(),
            });
        }
    }
    ValidationReport {
        violations,
        sqrt_swap_pairs,
        final_occupancy: occupancy,
        theta_multiples,
    }
}

impl MergeSchedule {
    /// Line-oriented export, `t_start t_end MERGE|SPLIT|HOLD trap_i trap_j kind`,
    /// preceded by `#` header lines carrying the timing parameters.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# half_period {:.17e}", self.half_period);
        let _ = writeln!(out, "# sqrt_swap_hold {:.17e}", self.sqrt_swap_hold);
        if let Some((a, b)) = &self.target {
            let _ = writeln!(out, "# target {a} {b}");
        }
        for ev in &self.events {
            let _ = writeln!(
                out,
                "{:.17e} {:.17e} {} {} {} {}",
                ev.t_start,
                ev.t_end,
                ev.kind.as_str(),
                ev.trap_i,
                ev.trap_j,
                ev.gate.as_str()
            );
        }
        out
    }

    /// Parses [`MergeSchedule::to_text`] output.
    pub fn from_text(text: &str) -> Result<Self> {
        let bad =
            |line: usize, what: &str| Error::Config(format!("schedule line {}: {what}", line + 1));
        let mut half_period = None;
        let mut sqrt_hold = None;
        let mut target = None;
        let mut events = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                match parts.as_slice() {
                    ["half_period", v] => {
                        half_period = Some(v.parse::<f64>().map_err(|_| bad(no, "bad number"))?)
                    }
                    ["sqrt_swap_hold", v] => {
                        sqrt_hold = Some(v.parse::<f64>().map_err(|_| bad(no, "bad number"))?)
                    }
                    ["target", a, b] => target = Some((a.to_string(), b.to_string())),
                    _ => {}
                }
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 6 {
                return Err(bad(no, "expected 6 fields"));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(no, "bad time"));
            let idx = |s: &str| s.parse::<usize>().map_err(|_| bad(no, "bad trap index"));
            let kind = match f[2] {
                "MERGE" => EventKind::Merge,
                "HOLD" => EventKind::Hold,
                "SPLIT" => EventKind::Split,
                _ => return Err(bad(no, "event must be MERGE, HOLD or SPLIT")),
            };
            let gate = match f[5] {
                "sqrt_swap" => GateKind::SqrtSwap,
                "swap" => GateKind::Swap,
                _ => return Err(bad(no, "kind must be sqrt_swap or swap")),
            };
            events.push(Event {
                t_start: num(f[0])?,
                t_end: num(f[1])?,
                kind,
                trap_i: idx(f[3])?,
                trap_j: idx(f[4])?,
                gate,
            });
        }
        let half_period =
            half_period.ok_or_else(|| Error::Config("schedule lacks `# half_period`".into()))?;
        let sqrt_swap_hold =
            sqrt_hold.ok_or_else(|| Error::Config("schedule lacks `# sqrt_swap_hold`".into()))?;
        let total_time = events
            .iter()
            .filter(|e| e.kind == EventKind::Hold)
            .map(|e| e.t_end - e.t_start)
            .sum();
        Ok(Self {
            events,
            total_time,
            half_period,
            sqrt_swap_hold,
            target,
        })
    }
}
