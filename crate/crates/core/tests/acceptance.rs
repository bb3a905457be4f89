//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use rug::Float;

use ioncollide::coupling::oracle::bruteforce_reduced;
use ioncollide::coupling::{
    design_point_alpha1, design_point_alpha1_at_length, direct_interaction_renormalized,
    exchange_long_distance, interference_term_reduced, level_shifts_reduced, BruteForceGrid,
    QuadratureSettings,
};
use ioncollide::drive::{match_drive_to_separation, position_shift_bound};
use ioncollide::gate::{decompose_sqrt_swap, synthesize_gate, unitarity_residual};
use ioncollide::potential::{v_eff, v_eff_reduced, EffectivePotentialParams};
use ioncollide::schedule::{route_remote_gate, validate_schedule, EventKind, TrapArray};
use ioncollide::species::IonSpecies;
use ioncollide::units::CODATA_2018;

const TWO_PI_10MHZ: f64 = 2.0 * PI * 10e6;

struct Outcome {
    ok: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn j_over_hbar(cfg: &ioncollide::trap::TrapConfig) -> f64 {
    exchange_long_distance(cfg) / CODATA_2018.hbar
}

fn design(species: IonSpecies, l_target: f64, j_target: f64) -> Outcome {
    let cfg = design_point_alpha1(&species, TWO_PI_10MHZ, 5.0).unwrap();
    let j = j_over_hbar(&cfg);
    check(
        rel(cfg.length, l_target) <= 0.02 && rel(j, j_target) <= 0.05,
        format!("L = {:.2} um, J/hbar = {:.1} rad/s", cfg.length * 1e6, j),
    )
}

fn c1_ytterbium_design() -> Outcome {
    design(IonSpecies::ytterbium_171(), 103e-6, 190.0)
}

fn c2_beryllium_design() -> Outcome {
    design(IonSpecies::beryllium_9(), 215e-6, 390.0)
}

fn c3_restriction_product() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (species, target) in [
        (IonSpecies::ytterbium_171(), 940.0),
        (IonSpecies::beryllium_9(), 1970.0),
    ] {
        for l in [60e-6, 150e-6, 400e-6] {
            let cfg = design_point_alpha1_at_length(&species, TWO_PI_10MHZ, l).unwrap();
            let p = cfg.omega_perp() * j_over_hbar(&cfg);
            ok &= rel(p, target) <= 0.02;
            parts.push(format!("{:.1}", p));
        }
    }
    check(ok, format!("omega_perp J/hbar = [{}]", parts.join(", ")))
}

fn c4_electron() -> Outcome {
    let cfg =
        design_point_alpha1_at_length(&IonSpecies::electron(), 2.0 * PI * 100e9, 10e-3).unwrap();
    let j = j_over_hbar(&cfg);
    check(
        rel(j, 0.108e6) <= 0.02 && rel(cfg.omega_perp(), 2.05e4) <= 0.02,
        format!("J/hbar = {:.4e}, omega_perp = {:.4e}", j, cfg.omega_perp()),
    )
}

fn c5_position_shift() -> Outcome {
    let cfg = design_point_alpha1(&IonSpecies::ytterbium_171(), TWO_PI_10MHZ, 5.0).unwrap();
    let u = direct_interaction_renormalized(&cfg).unwrap();
    let drive = match_drive_to_separation(&cfg, 1.0).unwrap();
    let s = position_shift_bound(&cfg, &drive, u).unwrap();
    let v = s.relative_shift * drive.f;
    check(rel(v, 1.4e-4) <= 0.15, format!("dL/L * f = {v:.4e}"))
}

fn c6_interference_limit() -> Outcome {
    let target = 2.0 / PI.sqrt();
    let mut worst: f64 = 0.0;
    for wp in [5.0f64, 50.0] {
        for ratio in [100.0, 200.0, 400.0] {
            let l = ratio * (0.5 * wp).sqrt();
            let a = interference_term_reduced(l, wp, 1e-10).unwrap();
            worst = worst.max(rel(a, target));
        }
    }
    check(
        worst <= 0.01,
        format!("max |A - 2/sqrt(pi)| / (2/sqrt(pi)) = {worst:.2e}"),
    )
}

fn c7_power_law() -> Outcome {
    let settings = QuadratureSettings::default();
    let pts: Vec<(f64, f64)> = (0..9)
        .map(|i| {
            let l = 50.0 * 10f64.powf(i as f64 / 8.0);
            let j = level_shifts_reduced(l, 5.0, &settings).unwrap().exchange;
            (l.ln(), j.ln())
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    check((slope + 3.0).abs() <= 0.05, format!("slope = {slope:.5}"))
}

fn c8_oracle() -> Outcome {
    let settings = QuadratureSettings::default();
    let mut worst: f64 = 0.0;
    for (l, wp) in [(5.0, 5.0), (8.0, 5.0), (12.0, 10.0)] {
        let q = level_shifts_reduced(l, wp, &settings).unwrap();
        let o = bruteforce_reduced(l, wp, &BruteForceGrid::default()).unwrap();
        worst = worst
            .max(rel(q.v_plus(), o.v_plus))
            .max(rel(q.v_minus(), o.v_minus));
    }
    check(
        worst <= 1e-6,
        format!("max relative V+- difference = {worst:.2e}"),
    )
}

fn c9_gate_properties() -> Outcome {
    let hbar = CODATA_2018.hbar;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let (mut unit, mut dec, mut swap): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let j = hbar * 10f64.powf(rng.random_range(0.0..6.0));
        let u = hbar
            * 10f64.powf(rng.random_range(0.0..12.0))
            * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let e0 = hbar * 10f64.powf(rng.random_range(0.0..11.0));
        let omega_z = 10f64.powf(rng.random_range(5.0..8.0));
        let g = synthesize_gate(e0, u, j, omega_z).unwrap();
        unit = unit.max(unitarity_residual(&g.matrix));
        dec = dec.max(decompose_sqrt_swap(&g.matrix).map_or(f64::INFINITY, |d| d.residual));
        // Central block squared must be a phase times [[0, 1], [1, 0]].
        let m = &g.matrix;
        let b = [[m[1][1], m[1][2]], [m[2][1], m[2][2]]];
        let sq = |r: usize, c: usize| b[r][0] * b[0][c] + b[r][1] * b[1][c];
        let phase = sq(0, 1);
        let dev = [
            sq(0, 0).norm(),
            sq(1, 1).norm(),
            (sq(1, 0) - phase).norm(),
            (phase.norm() - 1.0).abs(),
        ];
        swap = swap.max(dev.into_iter().fold(0.0, f64::max));
    }
    check(
        unit < 1e-12 && dec < 1e-12 && swap < 1e-12,
        format!("unitarity {unit:.1e}, decomposition {dec:.1e}, block^2 vs SWAP {swap:.1e}"),
    )
}

/// `sqrt(pi w / 2) exp(x^2) erfc(x)`, `x = sqrt(w / 2) r`, at 256 bits.
fn v_eff_oracle(r: f64, wp: f64) -> f64 {
    let prec = 256;
    let a = Float::with_val(prec, wp) / 2u32;
    let x = Float::with_val(prec, a.sqrt_ref()) * r;
    let x2 = Float::with_val(prec, x.square_ref());
    let erfc = x.erfc();
    let pre = (Float::with_val(prec, rug::float::Constant::Pi) * wp / 2u32).sqrt();
    (pre * x2.exp() * erfc).to_f64()
}

fn c10_potential() -> Outcome {
    // erfc(x) for x ~ 5e4 is far below the default MPFR exponent range.
    unsafe {
        gmp_mpfr_sys::mpfr::set_emin(gmp_mpfr_sys::mpfr::get_emin_min());
        gmp_mpfr_sys::mpfr::set_emax(gmp_mpfr_sys::mpfr::get_emax_max());
    }
    let mut worst: f64 = 0.0;
    for wp in [5.0f64, 50.0] {
        let mut grid = vec![0.0];
        grid.extend((0..199).map(|i| 1e-4 * 1e8f64.powf(i as f64 / 198.0)));
        for r in grid {
            worst = worst.max(rel(v_eff_reduced(r, wp), v_eff_oracle(r, wp)));
        }
    }
    // SI path and the Coulomb tail at the Yb design point.
    let cfg = design_point_alpha1(&IonSpecies::ytterbium_171(), TWO_PI_10MHZ, 5.0).unwrap();
    let params = EffectivePotentialParams::from_trap(&cfg);
    let r = 1e3 * cfg.z0() * (2.0 / cfg.omega_perp()).sqrt();
    let coulomb = cfg.species.coulomb_strength() / r;
    let tail = rel(v_eff(&params, r).unwrap(), coulomb);
    check(
        worst <= 1e-12 && tail <= 1e-3,
        format!("oracle max rel {worst:.2e}, Coulomb tail rel {tail:.2e}"),
    )
}

fn c11_scheduler() -> Outcome {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in 2..=12usize {
        let array = TrapArray::with_count(n, 100e-6).unwrap();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let (qa, qb) = (format!("q{a}"), format!("q{b}"));
                let s = route_remote_gate(&array, &qa, &qb, 1e-3, 2.0 * PI * 1e6).unwrap();
                let report = validate_schedule(&array, &s);
                let pair_ok = report.sqrt_swap_pairs.len() == 1 && {
                    let (x, y) = &report.sqrt_swap_pairs[0];
                    (x == &qa && y == &qb) || (x == &qb && y == &qa)
                };
                if !report.is_valid() || !pair_ok || report.final_occupancy != array.occupancy() {
                    failures.push(format!("n={n} {qa}-{qb}"));
                }
                // A truncated schedule must be rejected.
                let mut broken = s.clone();
                if let Some(pos) = broken
                    .events
                    .iter()
                    .rposition(|e| e.kind == EventKind::Split)
                {
                    broken.events.remove(pos);
                }
                if validate_schedule(&array, &broken).is_valid() {
                    failures.push(format!("n={n} {qa}-{qb} truncated accepted"));
                }
                checked += 1;
            }
        }
    }
    check(
        failures.is_empty(),
        format!(
            "{checked} pairs, {} failures {:?}",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "1 Yb-171 design point",
            c1_ytterbium_design,
            Duration::from_secs(1),
        ),
        (
            "2 Be-9 design point",
            c2_beryllium_design,
            Duration::from_secs(1),
        ),
        (
            "3 restriction product",
            c3_restriction_product,
            Duration::from_secs(1),
        ),
        (
            "4 electron design point",
            c4_electron,
            Duration::from_secs(1),
        ),
        (
            "5 position shift bound",
            c5_position_shift,
            Duration::from_secs(1),
        ),
        (
            "6 interference limit",
            c6_interference_limit,
            Duration::from_secs(10),
        ),
        ("7 L^-3 power law", c7_power_law, Duration::from_secs(60)),
        (
            "8 quadrature vs grid oracle",
            c8_oracle,
            Duration::from_secs(120),
        ),
        (
            "9 gate properties",
            c9_gate_properties,
            Duration::from_secs(5),
        ),
        (
            "10 effective potential",
            c10_potential,
            Duration::from_secs(5),
        ),
        (
            "11 scheduler closure",
            c11_scheduler,
            Duration::from_secs(5),
        ),
    ];
    let mut failed = 0;
    for (name, f, budget) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| check(false, "panicked"));
        let took = start.elapsed();
        let ok = outcome.ok && took <= budget;
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {} ({:.3} s of {} s)",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
