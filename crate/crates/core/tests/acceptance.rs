// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
// Runs as a plain binary (harness = false) so the report is always printed.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use polydisc::flip::{can_flip, flat_convex_check, measure_hinge, Hinge};
use polydisc::io::{parse_obj, trace_csv, write_obj};
use polydisc::mesh::{PolyhedralDisc, Vec3};
use polydisc::optimize::{edge_length_area_gradient, minimize, position_area_gradient, MoveKind, OptimizerConfig};
use polydisc::quad::QuadSpec;
use polydisc::saddle::{brute_force_cutting_direction, certify_saddle, cutting_direction};
use polydisc::scenario::{make_tent, random_instance, TentParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS_SADDLE: f64 = 1e-7;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec3 {
    Vec3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

/// Closed-form quadrilateral area from four sides and the sum of one pair of
/// opposite angles.
fn bretschneider(p: f64, q: f64, r: f64, s: f64, alpha: f64) -> f64 {
    let half = 0.5 * (p + q + r + s);
    let c = (0.5 * alpha).cos();
    ((half - p) * (half - q) * (half - r) * (half - s) - p * q * r * s * c * c)
        .max(0.0)
        .sqrt()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut specs = 0;
    let mut worst_violation: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    while specs < 1000 {
        let [p, q, r, s] = [(); 4].map(|_| rng.random_range(0.2..2.0));
        let Ok(spec) = QuadSpec::new(p, q, r, s) else {
            continue;
        };
        specs += 1;
        let (lo, hi) = spec.alpha_range();
        let scale = [p, q, r, s].iter().fold(0.0f64, |m, x| m.max(*x)).powi(2);
        let grid: Vec<(f64, f64)> = (0..50)
            .map(|i| {
                let alpha = lo + (hi - lo) * i as f64 / 49.0;
                let area = spec.area_of_alpha(alpha).expect("grid is inside the range");
                worst_oracle = worst_oracle.max((area - bretschneider(p, q, r, s, alpha)).abs() / scale);
                (alpha, area)
            })
            .collect();
        for w in grid.windows(2) {
            let (a0, f0) = w[0];
            let (a1, f1) = w[1];
            let rise = (f1 - f0) / scale;
            if a1 <= PI {
                worst_violation = worst_violation.max(-rise);
            } else if a0 >= PI {
                worst_violation = worst_violation.max(rise);
            }
        }
    }
    outcome(
        worst_violation <= 1e-9 && worst_oracle <= 1e-9,
        format!("1000 quads, worst monotonicity violation {worst_violation:.2e}, worst deviation from closed form {worst_oracle:.2e}"),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut spatial = 0;
    let mut worst_gain: f64 = f64::INFINITY;
    while spatial < 100_000 {
        let h = Hinge {
            a: random_point(&mut rng),
            b: random_point(&mut rng),
            x: random_point(&mut rng),
            y: random_point(&mut rng),
        };
        let diam = h.diameter();
        if diam < 1e-3 || !(h.sigma() < PI) {
            continue;
        }
        spatial += 1;
        worst_gain = worst_gain.min(h.gain() / (diam * diam));
    }

    // Four points on a random circle in a random plane, in the order a x b y.
    let mut worst_sigma: f64 = 0.0;
    let mut worst_flat: f64 = 0.0;
    let mut coplanar = 0;
    while coplanar < 10_000 {
        let n = random_unit(&mut rng);
        let u = n.cross(&random_unit(&mut rng));
        if u.norm() < 1e-2 {
            continue;
        }
        let u = u.normalize();
        let v = n.cross(&u);
        let center = random_point(&mut rng);
        let radius = rng.random_range(0.1..2.0);
        let mut t: Vec<f64> = (0..4).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
        t.sort_by(f64::total_cmp);
        let gaps = [t[1] - t[0], t[2] - t[1], t[3] - t[2], 2.0 * PI - t[3] + t[0]];
        if gaps.iter().any(|g| *g < 1e-2) {
            continue;
        }
        let at = |s: f64| center + radius * (s.cos() * u + s.sin() * v);
        let h = Hinge {
            a: at(t[0]),
            x: at(t[1]),
            b: at(t[2]),
            y: at(t[3]),
        };
        coplanar += 1;
        let diam = h.diameter();
        worst_sigma = worst_sigma.max((h.sigma() - PI).abs());
        worst_flat = worst_flat.max(h.gain().abs() / (diam * diam));
    }
    outcome(
        worst_gain >= -1e-9 && worst_sigma <= 1e-9 && worst_flat <= 1e-9,
        format!(
            "{spatial} spatial hinges min normalized gain {worst_gain:.2e}; {coplanar} flat convex hinges max |sigma-pi| {worst_sigma:.2e}, max |gain| {worst_flat:.2e}"
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    let mut decided = 0;
    let mut nonsaddle = 0;
    for case in 0..1000 {
        let k = rng.random_range(3..=10);
        // Half the stars are pulled toward a random direction so that both
        // verdicts occur often.
        let bias = if case % 2 == 0 { 0.0 } else { rng.random_range(0.0..1.5) };
        let pull = random_unit(&mut rng);
        let dirs: Vec<Vec3> = (0..k)
            .map(|_| (random_unit(&mut rng) + bias * pull) * rng.random_range(0.1..3.0))
            .filter(|d| d.norm() > 1e-6)
            .collect();
        let unit: Vec<Vec3> = dirs.iter().map(|d| d.normalize()).collect();
        let verdict = cutting_direction(&dirs, EPS_SADDLE).expect("nonzero directions");
        let (_, t) = brute_force_cutting_direction(&dirs, 10_000);
        if !verdict.verify(&unit, EPS_SADDLE) {
            failures.push(format!("case {case}: witness does not verify"));
        }
        if let Some(m) = verdict.margin {
            // the exact optimum dominates every sampled direction
            if m < t - 1e-12 {
                failures.push(format!("case {case}: margin {m} below sampled {t}"));
            }
        }
        if verdict.is_saddle() {
            if verdict.residual.is_none_or(|r| r > 1e-7) {
                failures.push(format!("case {case}: residual {:?}", verdict.residual));
            }
        } else {
            nonsaddle += 1;
        }
        // Outside the band the oracle decides only when it finds a cut; a
        // sampled lower bound cannot certify saddle, the verified witness does.
        if t.abs() > 2.0 * EPS_SADDLE {
            decided += 1;
            if t > 0.0 && verdict.is_saddle() {
                failures.push(format!("case {case}: oracle cuts with {t}, solver says saddle"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "1000 stars, {nonsaddle} cuttable, {decided} outside the band{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!("; {} failures, first: {}", failures.len(), failures[0])
            }
        ),
    )
}

struct MinimizerRuns {
    runs: usize,
    converged: usize,
    not_saddle: Vec<String>,
    flip_violations: Vec<String>,
    gradient_violations: Vec<String>,
    flips: usize,
    reductions: usize,
    cuts: usize,
    elapsed: Duration,
}

fn minimizer_runs() -> MinimizerRuns {
    let start = Instant::now();
    let mut r = MinimizerRuns {
        runs: 0,
        converged: 0,
        not_saddle: Vec::new(),
        flip_violations: Vec::new(),
        gradient_violations: Vec::new(),
        flips: 0,
        reductions: 0,
        cuts: 0,
        elapsed: Duration::ZERO,
    };
    // Seeds 0..3 start from the centroid fan; seed 3 lifts the apex far
    // above the boundary so that it starts out cuttable.
    for m in 8..=16 {
        for seed in 0..4u64 {
            let tag = format!("m={m} seed={seed}");
            let mut input = random_instance(m, 0.5, 1000 * m as u64 + seed).expect("valid instance");
            if seed == 3 {
                let mut pos = input.positions().to_vec();
                pos[m].z += 1.0;
                input = PolyhedralDisc::new(input.complex().clone(), pos).expect("lifted fan");
            }
            let config = OptimizerConfig {
                seed,
                ..Default::default()
            };
            let (out, trace) = minimize(&input, &config).expect("budget is the input size");
            r.runs += 1;
            r.flips += trace.flips.len();
            r.reductions += trace.reductions.len();
            r.cuts += trace.moves.iter().filter(|m| m.kind == MoveKind::Cut).count();
            if !trace.converged {
                continue;
            }
            r.converged += 1;
            if !certify_saddle(&out, EPS_SADDLE).saddle {
                r.not_saddle.push(tag.clone());
            }
            for e in out.complex().interior_edges() {
                let Ok(h) = measure_hinge(&out, e) else {
                    r.flip_violations.push(format!("{tag}: degenerate hinge {e:?}"));
                    continue;
                };
                if can_flip(out.complex(), e).is_ok() && h.sigma < PI - 1e-9 {
                    r.flip_violations.push(format!("{tag}: sigma {} at {e:?}", h.sigma));
                }
                if (h.sigma - PI).abs() <= 1e-9 && !flat_convex_check(&out, e, 1e-6).expect("interior") {
                    r.flip_violations.push(format!("{tag}: non-flat equality at {e:?}"));
                }
            }
            for v in out.complex().interior_vertices() {
                for (e, g) in edge_length_area_gradient(&out, v) {
                    if g < -1e-6 {
                        r.gradient_violations.push(format!("{tag}: dA/dl {g:.3e} at {e:?}"));
                    }
                }
            }
        }
    }
    r.elapsed = start.elapsed();
    r
}

fn first(v: &[String]) -> String {
    v.first().map_or(String::new(), |s| format!(", first: {s}"))
}

fn criterion_4(r: &MinimizerRuns) -> Outcome {
    let ok = r.runs >= 20
        && r.not_saddle.is_empty()
        && r.converged * 10 >= r.runs * 9
        && r.elapsed <= Duration::from_secs(300);
    outcome(
        ok,
        format!(
            "{}/{} runs converged ({} flips, {} reductions, {} cut moves), {} converged outputs not saddle{}",
            r.converged,
            r.runs,
            r.flips,
            r.reductions,
            r.cuts,
            r.not_saddle.len(),
            first(&r.not_saddle)
        ),
    )
}

fn criterion_5() -> Outcome {
    let tent = match make_tent(&TentParams::default()) {
        Ok(t) => t,
        Err(e) => return outcome(false, format!("construction failed: {e}")),
    };
    let fan_t = tent.fan_disc.complex().triangle_count();
    let chord_t = tent.chord_disc.complex().triangle_count();
    let fan_interior = tent.fan_disc.complex().interior_vertices().count();
    let chord_interior = tent.chord_disc.complex().interior_vertices().count();
    // Re-certify independently of the constructor's own check.
    let cert = certify_saddle(&tent.fan_fixed_optimum, EPS_SADDLE);
    let apex_cut = cert.vertices.len() == 1 && !cert.vertices[0].is_saddle();
    let fan_area = tent.fan_fixed_optimum.total_area();
    let chord_area = tent.chord_optimum.total_area();
    let gap = fan_area - chord_area;
    let ok = fan_t == 12
        && chord_t == 10
        && fan_interior == 1
        && chord_interior == 0
        && tent.fan_fixed_optimum.complex().triangle_count() == 12
        && tent.chord_optimum.complex().triangle_count() <= 10
        && apex_cut
        && gap > 1e-6 * fan_area;
    outcome(
        ok,
        format!(
            "{fan_t} and {chord_t} triangles, apex margin {:.3e}, areas {fan_area:.6} vs {chord_area:.6} (gap {gap:.3e})",
            cert.vertices.first().and_then(|v| v.margin).unwrap_or(f64::NAN)
        ),
    )
}

fn criterion_6(r: &MinimizerRuns) -> Outcome {
    outcome(
        r.flip_violations.is_empty(),
        format!(
            "{} converged outputs, {} hinge violations{}",
            r.converged,
            r.flip_violations.len(),
            first(&r.flip_violations)
        ),
    )
}

fn criterion_7(r: &MinimizerRuns) -> Outcome {
    outcome(
        r.gradient_violations.is_empty(),
        format!(
            "{} converged outputs, {} negative edge derivatives{}",
            r.converged,
            r.gradient_violations.len(),
            first(&r.gradient_violations)
        ),
    )
}

fn fd_gradient(disc: &PolyhedralDisc, v: usize) -> Vec3 {
    // Only the star of v depends on its position; summing every triangle keeps
    // the oracle independent of the library's star bookkeeping.
    let h = 1e-6 * disc.diameter();
    let area_at = |p: Vec3| -> f64 {
        let mut pos = disc.positions().to_vec();
        pos[v] = p;
        disc.complex()
            .triangles()
            .iter()
            .map(|t| 0.5 * (pos[t[1]] - pos[t[0]]).cross(&(pos[t[2]] - pos[t[0]])).norm())
            .sum()
    };
    let p = disc.position(v);
    let mut g = Vec3::zeros();
    for i in 0..3 {
        let mut step = Vec3::zeros();
        step[i] = h;
        g[i] = (area_at(p + step) - area_at(p - step)) / (2.0 * h);
    }
    g
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for pair in 0..100u64 {
        let m = rng.random_range(5..=14);
        let mut disc = random_instance(m, 0.6, 80_000 + pair).expect("valid instance");
        let apex = m;
        let mut pos = disc.positions().to_vec();
        pos[apex] += 0.3 * random_point(&mut rng);
        disc = PolyhedralDisc::new(disc.complex().clone(), pos).expect("still nondegenerate");
        let g = position_area_gradient(&disc, apex);
        let fd = fd_gradient(&disc, apex);
        worst = worst.max((g - fd).norm() / g.norm().max(1e-12));
    }
    outcome(worst <= 1e-6, format!("100 pairs, worst relative error {worst:.2e}"))
}

fn criterion_9() -> Outcome {
    let input = random_instance(11, 0.5, 99).expect("valid instance");
    let config = OptimizerConfig {
        seed: 5,
        ..Default::default()
    };
    let (_, t1) = minimize(&input, &config).expect("runs");
    let (_, t2) = minimize(&input, &config).expect("runs");
    let same_trace = trace_csv(&t1) == trace_csv(&t2) && t1 == t2;

    let disc = random_instance(50, 0.5, 7).expect("valid instance");
    let back = parse_obj(&write_obj(&disc)).expect("round trip parses");
    let same_complex = back.complex() == disc.complex();
    let worst = disc
        .positions()
        .iter()
        .zip(back.positions())
        .map(|(a, b)| (a - b).abs().max())
        .fold(0.0, f64::max);
    outcome(
        same_trace && same_complex && worst <= 1e-9 && disc.complex().triangle_count() == 50,
        format!("identical traces: {same_trace}, identical complex: {same_complex}, max position error {worst:.1e}"),
    )
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut report = |n: usize, limit: Option<u64>, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            if elapsed > Duration::from_secs(secs) {
                o.ok = false;
                o.detail.push_str(&format!("; exceeded {secs} s"));
            }
        }
        all_ok &= o.ok;
        println!(
            "criterion {n}: {} ({:.1} s) {}",
            if o.ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail
        );
    };
    report(1, Some(10), &mut criterion_1);
    report(2, Some(30), &mut criterion_2);
    report(3, Some(30), &mut criterion_3);
    let runs = minimizer_runs();
    println!("minimizer runs took {:.1} s", runs.elapsed.as_secs_f64());
    report(4, None, &mut || criterion_4(&runs));
    report(5, Some(30), &mut criterion_5);
    report(6, None, &mut || criterion_6(&runs));
    report(7, None, &mut || criterion_7(&runs));
    report(8, Some(10), &mut criterion_8);
    report(9, None, &mut criterion_9);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
