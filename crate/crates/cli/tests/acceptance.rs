//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vacuum_tori::asymptotics::ratio_table;
use vacuum_tori::oracle::{
    adjudicate, energy_quadrature, fd_spectrum, fourier_block_spectrum, harmonicity_residual,
    jacobi_residual, map_residuals, required_box, NullMode,
};
use vacuum_tori::vacuum::transform_frequencies;
use vacuum_tori::{
    index_nullity, threshold, Rational, Scalar, Tolerance, TorusLattice, VacuumSolution, Variant,
};

type Check = Result<String, String>;
type Case = (TorusLattice<Rational>, i64, i64, (usize, usize));
type Criterion = (&'static str, Duration, fn() -> Check);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rect(w: Rational, h: Rational) -> TorusLattice<Rational> {
    TorusLattice::new(
        Complex::new(w, q(0, 1)),
        Complex::new(q(0, 1), h),
        Tolerance::DEFAULT,
    )
    .unwrap()
}

fn to_float(lat: &TorusLattice<Rational>) -> TorusLattice<f64> {
    let c = |z: &Complex<Rational>| Complex::new(z.re.to_f64(), z.im.to_f64());
    TorusLattice::new(c(lat.omega1()), c(lat.omega2()), Tolerance::DEFAULT).unwrap()
}

/// `(lattice, n, m, (index, nullity))` for the square and `1 x 2` tori.
fn table() -> Vec<Case> {
    let square = rect(q(1, 1), q(1, 1));
    vec![
        (square.clone(), 1, 0, (1, 5)),
        (square.clone(), 1, 1, (5, 5)),
        (square.clone(), 2, 1, (13, 9)),
        (square, 0, 0, (0, 2)),
        (rect(q(1, 1), q(2, 1)), 1, 0, (3, 5)),
    ]
}

/// Enumeration over a fixed box for a `w x h` rectangle, straight from
/// `theta = k^2/w^2 + l^2/h^2` and `threshold = (h^2 n^2 + w^2 m^2) / (w h)^2`.
fn rectangle_oracle(w: &Rational, h: &Rational, n: i64, m: i64) -> (usize, usize) {
    let (w2, h2) = (w * w, h * h);
    let thr = (&h2 * q(n * n, 1) + &w2 * q(m * m, 1)) / (&w2 * &h2);
    let (mut below, mut on) = (0, 0);
    for k in -40i64..=40 {
        for l in -40i64..=40 {
            let theta = q(k * k, 1) / &w2 + q(l * l, 1) / &h2;
            if theta < thr {
                below += 1;
            } else if theta == thr {
                on += 1;
            }
        }
    }
    (below, on + 1)
}

fn criterion_1() -> Check {
    let mut seen = Vec::new();
    for (lat, n, m, want) in table() {
        let oracle = rectangle_oracle(&lat.omega1().re, &lat.omega2().im, n, m);
        if oracle != want {
            return Err(format!("oracle gives {oracle:?} for ({n},{m}), expected {want:?}"));
        }
        let r = index_nullity(&VacuumSolution::build(lat, n, m), Variant::Paper)
            .map_err(|e| e.to_string())?;
        if (r.index, r.nullity) != want || !r.exact {
            return Err(format!("({n},{m}): got ({}, {})", r.index, r.nullity));
        }
        seen.push(format!("{want:?}"));
    }
    Ok(seen.join(" "))
}

/// Random rational rectangles with `|n|, |m| <= 5`.
fn random_cases() -> Vec<(TorusLattice<Rational>, i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    (0..24)
        .map(|_| {
            let w = q(rng.gen_range(1..=5), rng.gen_range(1..=3));
            let h = q(rng.gen_range(1..=5), rng.gen_range(1..=3));
            (rect(w, h), rng.gen_range(-5..=5), rng.gen_range(-5..=5))
        })
        .collect()
}

fn criterion_2() -> Check {
    let cases = random_cases();
    for (lat, n, m) in &cases {
        let vs = VacuumSolution::build(lat.clone(), *n, *m);
        for variant in Variant::ALL {
            let r = index_nullity(&vs, variant).map_err(|e| e.to_string())?;
            let s = fourier_block_spectrum(&vs, required_box(&vs, variant), variant)
                .map_err(|e| e.to_string())?;
            if !s.exact || (s.negative, s.zero) != (r.index, r.nullity) {
                return Err(format!(
                    "{} {} ({n},{m}) {variant}: blocks ({}, {}) vs closed form ({}, {})",
                    lat.omega1(),
                    lat.omega2(),
                    s.negative,
                    s.zero,
                    r.index,
                    r.nullity
                ));
            }
        }
    }
    Ok(format!("{} lattices, both variants", cases.len()))
}

fn criterion_3() -> Check {
    let mut blocks = 0;
    let mut worst = 0.0f64;
    for (lat, n, m) in random_cases() {
        let exact = VacuumSolution::build(lat.clone(), n, m);
        let float = VacuumSolution::build(to_float(&lat), n, m);
        let thr = threshold(&exact);
        for variant in Variant::ALL {
            let k = required_box(&exact, variant);
            let s = fourier_block_spectrum(&exact, k, variant).map_err(|e| e.to_string())?;
            for b in &s.blocks {
                let want = (b.theta.clone() - thr.clone(), b.theta.clone());
                if b.exact_over_pi2.as_ref() != Some(&want) {
                    return Err(format!("block ({},{}) is not exactly {{theta - t, theta}}", b.k, b.l));
                }
            }
            let sf = fourier_block_spectrum(&float, k, variant).map_err(|e| e.to_string())?;
            let four_a2 = 4.0 * float.alpha_abs_sq();
            for b in &sf.blocks {
                let plus = PI * PI * b.theta;
                let minus = plus - four_a2;
                let scale = plus.abs().max(four_a2).max(f64::MIN_POSITIVE);
                let err = (b.eigenvalues.0 - minus).abs().max((b.eigenvalues.1 - plus).abs()) / scale;
                worst = worst.max(err);
                blocks += 1;
            }
        }
    }
    if worst > 1e-12 {
        return Err(format!("float relative deviation {worst:.3e}"));
    }
    Ok(format!("{blocks} float blocks, max relative deviation {worst:.1e}; exact blocks identical"))
}

fn criterion_4() -> Check {
    let vs = VacuumSolution::build(to_float(&rect(q(1, 1), q(1, 1))), 1, 0);
    let mut counts = Vec::new();
    let mut detail = String::new();
    for n in [24, 32, 48] {
        let s = fd_spectrum(&vs, n).map_err(|e| e.to_string())?;
        if n == 24 {
            let lowest = s.eigenvalues[0];
            let rel = (lowest + PI * PI).abs() / (PI * PI);
            if s.negative != 1 || rel > 0.02 || s.near_zero != 5 {
                return Err(format!(
                    "N=24: {} negative (lowest {lowest}), {} in band",
                    s.negative, s.near_zero
                ));
            }
            detail = format!("N=24 lowest {lowest:.5} ({:.2}% off), 5 in band {:.2e}", 100.0 * rel, s.band);
        }
        counts.push(s.negative);
    }
    if counts != [1, 1, 1] {
        return Err(format!("negative counts {counts:?} over N = 24, 32, 48"));
    }
    Ok(detail)
}

fn criterion_5() -> Check {
    let mut worst = 0.0f64;
    for (lat, n, m, _) in table() {
        let vs = VacuumSolution::build(lat, n, m);
        let e = energy_quadrature(&vs, 32).map_err(|e| e.to_string())?;
        let closed = vs.energy();
        let err = if closed == 0.0 {
            e.energy.abs()
        } else {
            (e.energy - closed).abs() / closed
        };
        if err >= 1e-8 {
            return Err(format!("({n},{m}): relative error {err:.3e}"));
        }
        worst = worst.max(err);
    }
    let vs = VacuumSolution::build(rect(q(1, 1), q(1, 1)), 1, 0);
    let e = energy_quadrature(&vs, 32).map_err(|e| e.to_string())?;
    let want = 2.0 * PI * PI;
    let spread = (e.max_density - e.min_density) / want;
    let err = (e.energy - want).abs() / want;
    if spread > 1e-10 || err > 1e-10 {
        return Err(format!("square (1,0): energy error {err:.3e}, density spread {spread:.3e}"));
    }
    Ok(format!("max relative error {worst:.1e}; square density spread {spread:.1e}"))
}

fn criterion_6() -> Check {
    let mut modes = 0;
    let mut worst = 0.0f64;
    for (lat, n, m, _) in table() {
        let vs = VacuumSolution::build(lat, n, m);
        let scale = 4.0 * vs.alpha_abs_sq();
        let bound = 1e-9 * if scale > 0.0 { scale } else { 1.0 };
        let r = index_nullity(&vs, Variant::Paper).map_err(|e| e.to_string())?;
        let mut list = vec![NullMode::Constant];
        list.extend(r.boundary_points.iter().map(|&(k, l)| NullMode::Mode(k, l)));
        for mode in list {
            let j = jacobi_residual(&vs, mode, Variant::Paper).map_err(|e| e.to_string())?;
            if j.residual >= bound || j.periodicity_defect >= 1e-9 {
                return Err(format!("({n},{m}) {mode:?}: residual {:.3e}", j.residual));
            }
            worst = worst.max(j.residual / bound * 1e-9);
            modes += 1;
        }
    }
    Ok(format!("{modes} null fields, max residual {worst:.1e} x 4|alpha|^2"))
}

fn criterion_7() -> Check {
    let mut orders = Vec::new();
    for (lat, n, m, _) in table() {
        let vs = VacuumSolution::build(lat, n, m);
        let r = map_residuals(&vs, 100, 7);
        let worst = r.periodicity.max(r.unitarity).max(r.determinant);
        if worst >= 1e-10 {
            return Err(format!("({n},{m}): map residual {worst:.3e}"));
        }
        if vs.is_constant() {
            continue;
        }
        let res: Vec<f64> = [16, 32, 64]
            .iter()
            .map(|&g| harmonicity_residual(&vs, g))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for w in res.windows(2) {
            let order = (w[0] / w[1]).log2();
            if !(3.5..=4.5).contains(&order) {
                return Err(format!("({n},{m}): harmonicity residuals {res:?}, order {order:.2}"));
            }
            orders.push(order);
        }
    }
    let lo = orders.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = orders.iter().cloned().fold(0.0, f64::max);
    Ok(format!("map residuals < 1e-10; harmonicity orders {lo:.2}..{hi:.2}"))
}

fn criterion_8() -> Check {
    let rows = ratio_table(&rect(q(1, 1), q(1, 1)), (1, 0), 40, Variant::Paper)
        .map_err(|e| e.to_string())?;
    let limit = 1.0 / (2.0 * PI);
    let last = rows.last().unwrap();
    let rel = (last.ratio - limit).abs() / limit;
    if last.t != 40 || rel >= 0.05 {
        return Err(format!("t=40 ratio {} ({:.2}% off)", last.ratio, 100.0 * rel));
    }
    let dev: Vec<f64> = [10usize, 20, 40]
        .iter()
        .map(|&t| {
            let avg = 0.5 * (rows[t - 2].ratio + rows[t - 1].ratio);
            (avg - limit).abs() / limit
        })
        .collect();
    if !(dev[0] > dev[1] && dev[1] > dev[2]) {
        return Err(format!("averaged deviations {dev:?} not decreasing"));
    }
    Ok(format!(
        "t=40 ratio {:.6} ({:.2}% off); averaged deviations {:.4} {:.4} {:.4}",
        last.ratio,
        100.0 * rel,
        dev[0],
        dev[1],
        dev[2]
    ))
}

const GENERAL: [[[i64; 2]; 2]; 4] = [[[1, 1], [0, 1]], [[2, 1], [1, 1]], [[1, 0], [-3, 1]], [[0, 1], [-1, 2]]];
const RECTANGULAR: [[[i64; 2]; 2]; 3] = [[[0, 1], [1, 0]], [[-1, 0], [0, 1]], [[0, -1], [1, 0]]];

fn criterion_9() -> Check {
    let mut checks = 0;
    for (lat, n, m, want) in table() {
        let vs = VacuumSolution::build(lat.clone(), n, m);
        let e0 = vs.energy_over_pi2().clone();
        let same = |other: &VacuumSolution<Rational>, variant: Variant, tag: &str| -> Result<(), String> {
            if other.energy_over_pi2() != &e0 {
                return Err(format!("({n},{m}) {tag}: energy {} vs {e0}", other.energy_over_pi2()));
            }
            let r = index_nullity(other, variant).map_err(|e| e.to_string())?;
            if (r.index, r.nullity) != want {
                return Err(format!("({n},{m}) {tag} {variant}: ({}, {})", r.index, r.nullity));
            }
            Ok(())
        };

        for phase in [0.3, 1.0, 2.5, -1.2] {
            let rotated = vs.with_phase(phase);
            for variant in Variant::ALL {
                let s = fourier_block_spectrum(&rotated, required_box(&rotated, variant), variant)
                    .map_err(|e| e.to_string())?;
                if (s.negative, s.zero) != want {
                    return Err(format!("({n},{m}) phase {phase}: ({}, {})", s.negative, s.zero));
                }
            }
            let e = energy_quadrature(&rotated, 32).map_err(|e| e.to_string())?.energy;
            if (e - vs.energy()).abs() > 1e-8 * vs.energy().max(1.0) {
                return Err(format!("({n},{m}) phase {phase}: energy {e}"));
            }
            checks += 1;
        }

        for c in [(2, 0), (0, 1), (1, 1)] {
            let c = Complex::new(q(c.0, 1), q(c.1, 1));
            let scaled = lat.scaled(&c).map_err(|e| e.to_string())?;
            let other = VacuumSolution::build(scaled, n, m);
            for variant in Variant::ALL {
                same(&other, variant, &format!("scale {c}"))?;
            }
            checks += 1;
        }

        for g in GENERAL {
            let (n2, m2) = transform_frequencies(g, n, m);
            let other = VacuumSolution::build(lat.change_basis(g).map_err(|e| e.to_string())?, n2, m2);
            same(&other, Variant::Dual, &format!("basis {g:?}"))?;
            checks += 1;
        }
        for g in RECTANGULAR {
            let (n2, m2) = transform_frequencies(g, n, m);
            let other = VacuumSolution::build(lat.change_basis(g).map_err(|e| e.to_string())?, n2, m2);
            for variant in Variant::ALL {
                same(&other, variant, &format!("basis {g:?}"))?;
            }
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} transformations (phase, scaling, unimodular; paper form on rectangular bases)"
    ))
}

fn criterion_10() -> Check {
    let hex = TorusLattice::new(
        Complex::new(1.0, 0.0),
        Complex::new(0.5, 3f64.sqrt() / 2.0),
        Tolerance::DEFAULT,
    )
    .unwrap();
    let adj = adjudicate(&VacuumSolution::build(hex, 1, 1), 32).map_err(|e| e.to_string())?;
    if (adj.paper_index, adj.dual_index) != (13, 7) {
        return Err(format!("predictions ({}, {})", adj.paper_index, adj.dual_index));
    }
    if adj.matching.len() != 1 {
        return Err(format!("FD negative count {} matches {:?}", adj.fd.negative, adj.matching));
    }
    let out = vacuum_tori_cli::run([
        "vacuum-tori", "verify", "--omega1", "1,0", "--omega2", "0.5,0.8660254037844386",
        "-n", "1", "-m", "1", "--check", "fd", "--variant", "both", "--grid", "32",
    ]);
    let name = adj.matching[0].name();
    let wanted = [
        format!("matching variant: {name}"),
        "paper    13".to_string(),
        "dual     7".to_string(),
    ];
    if out.code != 0 || !wanted.iter().all(|w| out.stdout.contains(w.as_str())) {
        return Err(format!("verify exit {}:\n{}{}", out.code, out.stdout, out.stderr));
    }
    Ok(format!(
        "FD negative count {} at N=32 matches {name} (paper 13, dual 7)",
        adj.fd.negative
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed-form table", Duration::from_secs(1), criterion_1),
        ("oracle equivalence", Duration::from_secs(5), criterion_2),
        ("block eigenvalues", Duration::from_secs(60), criterion_3),
        ("finite-difference spectrum", Duration::from_secs(60), criterion_4),
        ("energy quadrature", Duration::from_secs(60), criterion_5),
        ("jacobi fields", Duration::from_secs(60), criterion_6),
        ("map sanity", Duration::from_secs(60), criterion_7),
        ("index/energy limit", Duration::from_secs(10), criterion_8),
        ("invariance suite", Duration::from_secs(120), criterion_9),
        ("adjudication", Duration::from_secs(120), criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; took {elapsed:?}, budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {:>2} {name} ({:.2}s): {detail}", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({:.2}s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
