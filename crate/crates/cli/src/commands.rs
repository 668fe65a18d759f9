use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;
use vacuum_tori::asymptotics::ratio_table;
use vacuum_tori::oracle::{
    adjudicate, energy_quadrature, fourier_block_spectrum, harmonicity_residual, jacobi_residual,
    map_residuals, required_box, NullMode,
};
use vacuum_tori::{
    enumerate_spectrum, format_scalar, index_nullity, threshold, Scalar, TorusLattice,
    VacuumSolution, Variant,
};

use crate::args::{Check, Format};
use crate::error::CliError;
use crate::report::{
    AdjudicationReport, CheckReport, CountReport, CountRow, RatioRow, SampleRow, SpectrumRow,
    VerifyReport,
};

/// Command output and whether every verification passed.
pub struct Rendered {
    pub text: String,
    pub passed: bool,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

pub(crate) fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Serialize(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub(crate) fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| CliError::Serialize(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))
}

fn complex_strings<S: Scalar>(z: &num_complex::Complex<S>) -> [String; 2] {
    [format_scalar(&z.re), format_scalar(&z.im)]
}

pub fn count_reports<S: Scalar>(
    lat: &TorusLattice<S>,
    n: i64,
    m: i64,
    variants: &[Variant],
) -> Result<Vec<CountReport>, CliError> {
    let vs = VacuumSolution::build(lat.clone(), n, m);
    variants
        .iter()
        .map(|&variant| {
            let r = index_nullity(&vs, variant)?;
            Ok(CountReport {
                index: r.index,
                nullity: r.nullity,
                threshold: format_scalar(&r.threshold),
                energy: S::EXACT.then(|| format!("{}*pi^2", vs.energy_over_pi2())),
                energy_decimal: vs.energy(),
                boundary_points: r.boundary_points.iter().map(|&(k, l)| [k, l]).collect(),
                variant: variant.name().to_string(),
                exact: r.exact,
                index_range: [r.index_range.0, r.index_range.1],
                nullity_range: [r.nullity_range.0, r.nullity_range.1],
                n,
                m,
                omega1: complex_strings(lat.omega1()),
                omega2: complex_strings(lat.omega2()),
            })
        })
        .collect()
}

pub fn count<S: Scalar>(
    lat: &TorusLattice<S>,
    n: i64,
    m: i64,
    variants: &[Variant],
    format: Format,
) -> Result<Rendered, CliError> {
    let reports = count_reports(lat, n, m, variants)?;
    let text = match format {
        Format::Json if reports.len() == 1 => to_json(&reports[0])?,
        Format::Json => to_json(&reports)?,
        Format::Csv => to_csv(&reports.iter().map(CountRow::from).collect::<Vec<_>>())?,
        Format::Text => {
            let mut out = String::new();
            let r0 = &reports[0];
            writeln!(out, "periods    ({}, {}) ({}, {})", r0.omega1[0], r0.omega1[1], r0.omega2[0], r0.omega2[1]).unwrap();
            writeln!(out, "winding    n = {}, m = {}", n, m).unwrap();
            match &r0.energy {
                Some(e) => writeln!(out, "energy     {} = {}", e, r0.energy_decimal).unwrap(),
                None => writeln!(out, "energy     {}", r0.energy_decimal).unwrap(),
            }
            for r in &reports {
                writeln!(out).unwrap();
                writeln!(out, "variant    {}", r.variant).unwrap();
                writeln!(out, "threshold  {}", r.threshold).unwrap();
                if r.exact {
                    writeln!(out, "index      {}", r.index).unwrap();
                    writeln!(out, "nullity    {}", r.nullity).unwrap();
                } else {
                    writeln!(out, "index      {} (range {}..={})", r.index, r.index_range[0], r.index_range[1]).unwrap();
                    writeln!(out, "nullity    {} (range {}..={})", r.nullity, r.nullity_range[0], r.nullity_range[1]).unwrap();
                }
                let pts: Vec<String> = r
                    .boundary_points
                    .iter()
                    .map(|[k, l]| format!("({k},{l})"))
                    .collect();
                writeln!(out, "boundary   {}", pts.join(" ")).unwrap();
                writeln!(out, "exact      {}", r.exact).unwrap();
            }
            out
        }
    };
    Ok(Rendered::ok(text))
}

pub fn spectrum<S: Scalar>(
    lat: &TorusLattice<S>,
    n: i64,
    m: i64,
    variants: &[Variant],
    lambda_max: f64,
    format: Format,
) -> Result<Rendered, CliError> {
    let vs = VacuumSolution::build(lat.clone(), n, m);
    let mut rows = Vec::new();
    for &variant in variants {
        for e in enumerate_spectrum(&vs, lambda_max, variant)? {
            rows.push(SpectrumRow {
                variant: variant.name().to_string(),
                k: e.k,
                l: e.l,
                theta: format_scalar(&e.theta_value),
                lambda_minus_over_pi2: format_scalar(&e.minus_over_pi2),
                lambda_plus_over_pi2: format_scalar(&e.plus_over_pi2),
                lambda_minus: e.lambda_minus(),
                lambda_plus: e.lambda_plus(),
            });
        }
    }
    let text = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => to_csv(&rows)?,
        Format::Text => {
            let mut out = String::from("variant\tk\tl\ttheta\tminus/pi^2\tplus/pi^2\tlambda_minus\tlambda_plus\n");
            for r in &rows {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.variant, r.k, r.l, r.theta, r.lambda_minus_over_pi2, r.lambda_plus_over_pi2,
                    r.lambda_minus, r.lambda_plus
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Rendered::ok(text))
}

pub struct VerifyOptions {
    pub checks: Vec<Check>,
    pub grid: usize,
    pub box_k: Option<i64>,
}

const MAP_SAMPLES: usize = 100;
const MAP_SEED: u64 = 0x5eed;

pub fn verify_report<S: Scalar>(
    lat: &TorusLattice<S>,
    n: i64,
    m: i64,
    variants: &[Variant],
    opts: &VerifyOptions,
) -> Result<VerifyReport, CliError> {
    let vs = VacuumSolution::build(lat.clone(), n, m);
    let mut checks: Vec<Check> = if opts.checks.contains(&Check::All) {
        Check::EACH.to_vec()
    } else {
        opts.checks.clone()
    };
    checks.sort();
    checks.dedup();

    let four_a2 = 4.0 * vs.alpha_abs_sq();
    let mut out = Vec::new();
    let mut adjudication = None;
    for check in checks {
        match check {
            Check::Energy => out.push(energy_check(&vs, opts.grid)?),
            Check::Jacobi => {
                for &v in variants {
                    out.push(jacobi_check(&vs, v, four_a2)?);
                }
            }
            Check::Periodicity => {
                let r = map_residuals(&vs, MAP_SAMPLES, MAP_SEED);
                let worst = r.periodicity.max(r.unitarity).max(r.determinant);
                out.push(CheckReport {
                    check: check.name().into(),
                    variant: None,
                    passed: worst < 1e-10,
                    measured: Some(worst),
                    bound: Some(1e-10),
                    detail: format!(
                        "{} points: periodicity {:.3e}, unitarity {:.3e}, det {:.3e}",
                        r.samples, r.periodicity, r.unitarity, r.determinant
                    ),
                });
            }
            Check::Harmonicity => out.push(harmonicity_check(&vs, opts.grid)?),
            Check::Fourier => {
                for &v in variants {
                    out.push(fourier_check(&vs, v, opts.box_k, four_a2)?);
                }
            }
            Check::Fd => {
                let (report, adj) = fd_check(&vs, variants, opts.grid)?;
                out.push(report);
                adjudication = Some(adj);
            }
            Check::All => unreachable!("expanded above"),
        }
    }
    Ok(VerifyReport {
        passed: out.iter().all(|c| c.passed),
        checks: out,
        adjudication,
    })
}

fn energy_check<S: Scalar>(vs: &VacuumSolution<S>, grid: usize) -> Result<CheckReport, CliError> {
    let n = grid.max(32);
    let q = energy_quadrature(vs, n)?;
    let closed = vs.energy();
    let err = if closed == 0.0 {
        q.energy.abs()
    } else {
        (q.energy - closed).abs() / closed
    };
    Ok(CheckReport {
        check: "energy".into(),
        variant: None,
        passed: err < 1e-8,
        measured: Some(err),
        bound: Some(1e-8),
        detail: format!(
            "quadrature {} vs closed form {} on a {n}x{n} grid",
            q.energy, closed
        ),
    })
}

fn jacobi_check<S: Scalar>(
    vs: &VacuumSolution<S>,
    variant: Variant,
    four_a2: f64,
) -> Result<CheckReport, CliError> {
    let bound = 1e-9 * if four_a2 > 0.0 { four_a2 } else { 1.0 };
    let constant = jacobi_residual(vs, NullMode::Constant, variant)?;
    let inn = index_nullity(vs, variant)?;
    let mut worst = constant.residual;
    let mut defect = 0.0f64;
    for &(k, l) in &inn.boundary_points {
        let r = jacobi_residual(vs, NullMode::Mode(k, l), variant)?;
        worst = worst.max(r.residual);
        defect = defect.max(r.periodicity_defect);
    }
    Ok(CheckReport {
        check: "jacobi".into(),
        variant: Some(variant.name().into()),
        passed: worst < bound && defect < 1e-9,
        measured: Some(worst),
        bound: Some(bound),
        detail: format!(
            "constant mode and {} boundary modes; periodicity defect {:.3e}",
            inn.boundary_points.len(),
            defect
        ),
    })
}

fn harmonicity_check<S: Scalar>(vs: &VacuumSolution<S>, grid: usize) -> Result<CheckReport, CliError> {
    let n = grid.max(16);
    let coarse = harmonicity_residual(vs, n)?;
    let fine = harmonicity_residual(vs, 2 * n)?;
    let order = (coarse / fine).log2();
    let roundoff = 1e-8 * (1.0 + vs.energy());
    let passed = fine <= roundoff || order >= 3.5;
    Ok(CheckReport {
        check: "harmonicity".into(),
        variant: None,
        passed,
        measured: order.is_finite().then_some(order),
        bound: Some(3.5),
        detail: format!(
            "residual {coarse:.3e} at N={n}, {fine:.3e} at N={}, observed order {order:.2}",
            2 * n
        ),
    })
}

fn fourier_check<S: Scalar>(
    vs: &VacuumSolution<S>,
    variant: Variant,
    box_k: Option<i64>,
    four_a2: f64,
) -> Result<CheckReport, CliError> {
    let k = box_k.unwrap_or_else(|| required_box(vs, variant));
    let spec = fourier_block_spectrum(vs, k, variant)?;
    let inn = index_nullity(vs, variant)?;
    let thr = threshold(vs);
    let mut dev = 0.0f64;
    let mut exact_mismatch = 0;
    for b in &spec.blocks {
        let plus = PI * PI * b.theta.to_f64();
        let minus = plus - four_a2;
        let scale = plus.abs().max(four_a2);
        let err = (b.eigenvalues.0 - minus).abs().max((b.eigenvalues.1 - plus).abs());
        dev = dev.max(if scale > 0.0 { err / scale } else { err });
        if let Some((lo, hi)) = &b.exact_over_pi2 {
            if *lo != b.theta.clone() - thr.clone() || *hi != b.theta {
                exact_mismatch += 1;
            }
        }
    }
    let counts_ok = (inn.index_range.0..=inn.index_range.1).contains(&spec.negative)
        && (inn.nullity_range.0..=inn.nullity_range.1).contains(&spec.zero);
    Ok(CheckReport {
        check: "fourier".into(),
        variant: Some(variant.name().into()),
        passed: counts_ok && dev <= 1e-12 && exact_mismatch == 0,
        measured: Some(dev),
        bound: Some(1e-12),
        detail: format!(
            "box {k}: {} negative, {} zero (closed form {}, {}); {} blocks{}",
            spec.negative,
            spec.zero,
            inn.index,
            inn.nullity,
            spec.blocks.len(),
            if spec.exact { ", exact" } else { "" }
        ),
    })
}

fn fd_check<S: Scalar>(
    vs: &VacuumSolution<S>,
    variants: &[Variant],
    grid: usize,
) -> Result<(CheckReport, AdjudicationReport), CliError> {
    let adj = adjudicate(vs, grid)?;
    let fd = &adj.fd;
    let prediction = |v: Variant| match v {
        Variant::Paper => (adj.paper_index, adj.paper_nullity),
        Variant::Dual => (adj.dual_index, adj.dual_nullity),
    };
    let (passed, variant, detail) = if let [v] = variants {
        let (index, nullity) = prediction(*v);
        (
            fd.negative == index && fd.near_zero == nullity,
            Some(v.name().to_string()),
            format!(
                "{} negative, {} near zero (closed form {index}, {nullity})",
                fd.negative, fd.near_zero
            ),
        )
    } else {
        let names: Vec<&str> = adj.matching.iter().map(|v| v.name()).collect();
        let detail = if names.is_empty() {
            format!(
                "{} negative matches neither paper ({}) nor dual ({})",
                fd.negative, adj.paper_index, adj.dual_index
            )
        } else {
            format!(
                "{} negative, {} near zero; matching variant: {} (paper {}, dual {})",
                fd.negative,
                fd.near_zero,
                names.join(", "),
                adj.paper_index,
                adj.dual_index
            )
        };
        (!names.is_empty(), None, detail)
    };
    let report = CheckReport {
        check: "fd".into(),
        variant,
        passed,
        measured: Some(fd.negative as f64),
        bound: None,
        detail: format!("grid {grid}: {detail}; zero band {:.3e}", fd.band),
    };
    let summary = AdjudicationReport {
        grid,
        fd_negative: fd.negative,
        fd_near_zero: fd.near_zero,
        band: fd.band,
        lowest_eigenvalue: fd.eigenvalues.first().copied().unwrap_or(0.0),
        paper_index: adj.paper_index,
        paper_nullity: adj.paper_nullity,
        dual_index: adj.dual_index,
        dual_nullity: adj.dual_nullity,
        matching: adj.matching.iter().map(|v| v.name().to_string()).collect(),
    };
    Ok((report, summary))
}

pub fn verify<S: Scalar>(
    lat: &TorusLattice<S>,
    n: i64,
    m: i64,
    variants: &[Variant],
    opts: &VerifyOptions,
    format: Format,
) -> Result<Rendered, CliError> {
    let report = verify_report(lat, n, m, variants, opts)?;
    let text = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => to_csv(&report.checks)?,
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                let label = match &c.variant {
                    Some(v) => format!("{} [{v}]", c.check),
                    None => c.check.clone(),
                };
                let measured = match (c.measured, c.bound) {
                    (Some(x), Some(b)) => format!(" measured {x:.3e} (bound {b:.1e})"),
                    (Some(x), None) => format!(" measured {x}"),
                    _ => String::new(),
                };
                writeln!(
                    out,
                    "{} {label}:{measured} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.detail
                )
                .unwrap();
            }
            if let Some(a) = &report.adjudication {
                writeln!(out).unwrap();
                writeln!(out, "variant  index  nullity").unwrap();
                writeln!(out, "paper    {:<6} {}", a.paper_index, a.paper_nullity).unwrap();
                writeln!(out, "dual     {:<6} {}", a.dual_index, a.dual_nullity).unwrap();
                writeln!(out, "fd       {:<6} {}  (grid {})", a.fd_negative, a.fd_near_zero, a.grid).unwrap();
                let matching = if a.matching.is_empty() {
                    "none".to_string()
                } else {
                    a.matching.join(", ")
                };
                writeln!(out, "matching variant: {matching}").unwrap();
            }
            writeln!(out, "{}", if report.passed { "all checks passed" } else { "verification failed" })
                .unwrap();
            out
        }
    };
    Ok(Rendered {
        text,
        passed: report.passed,
    })
}

pub fn asymptotics<S: Scalar>(
    lat: &TorusLattice<S>,
    variants: &[Variant],
    ray: (i64, i64),
    steps: usize,
    format: Format,
) -> Result<Rendered, CliError> {
    let mut rows = Vec::new();
    for &variant in variants {
        for s in ratio_table(lat, ray, steps, variant)? {
            rows.push(RatioRow {
                variant: variant.name().to_string(),
                t: s.t,
                n: s.n,
                m: s.m,
                energy: s.energy,
                index: s.index,
                ratio: s.ratio,
                limit: s.limit,
                corollary_limit: s.corollary_limit,
            });
        }
    }
    let text = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => to_csv(&rows)?,
        Format::Text => {
            let mut out = String::from("variant\tt\tn\tm\tenergy\tindex\tratio\tlimit\tcorollary_limit\n");
            for r in &rows {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.variant, r.t, r.n, r.m, r.energy, r.index, r.ratio, r.limit, r.corollary_limit
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Rendered::ok(text))
}

pub fn map_sample<S: Scalar>(
    lat: &TorusLattice<S>,
    n: i64,
    m: i64,
    resolution: usize,
    format: Format,
) -> Result<Rendered, CliError> {
    if resolution == 0 || resolution > 4096 {
        return Err(CliError::Input(format!(
            "resolution {resolution} must lie in 1..=4096"
        )));
    }
    let vs = VacuumSolution::build(lat.clone(), n, m);
    let r = resolution as f64;
    let mut rows = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        for j in 0..resolution {
            let (s, t) = (i as f64 / r, j as f64 / r);
            let [x, y, z] = vs.sphere_point(vs.point(s, t));
            rows.push(SampleRow { s, t, x, y, z });
        }
    }
    let text = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv | Format::Text => to_csv(&rows)?,
    };
    Ok(Rendered::ok(text))
}
