//! The five subcommands. All numeric output is exact rational or dyadic
//! text; identical invocations produce byte-identical output.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};

use ntop_core::arith::{eval, hawkeye_decide};
use ntop_core::axioms::{check_pre_natural_axioms, AxiomReport};
use ntop_core::expr::{eval_expr, parse_expr};
use ntop_core::fragment::{
    baire_fragment, nary_unit_fragment, product_sigma_r_fragment, sigma01_fragment,
    sigma_r_fragment, GradedFragment,
};
use ntop_core::metric::{build_fann, builtin_presentation, parse_presentation, MetricPresentation};
use ntop_core::morphism::cantor_map;
use ntop_core::rational::{format_rational, parse_rational, pow2};
use ntop_core::spaces::baire::BaireSpace;
use ntop_core::spaces::lean::from_rational;
use ntop_core::spaces::nary::{nary_unit_from_rational, NAryDot, NAryKind};
use ntop_core::trail::is_fann_fragment;
use ntop_core::{Error, Graded, Space};

use crate::fault::mutated_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_STALL: i32 = 3;

/// Pulls allowed per requested precision level unless overridden by the
/// `--fuel` flag or the `NTOP_FUEL` environment variable.
pub const DEFAULT_FUEL_PER_LEVEL: u64 = 64;

const MAX_PRECISION: u32 = 64;

#[derive(Debug)]
pub enum CliError {
    /// Bad input or usage; exit 2.
    Usage(String),
    /// Computation ran out of fuel; exit 3.
    Stall(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Stall(_) => EXIT_STALL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Stall(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Stall { .. } | Error::Exhausted { .. } | Error::ContractViolation(_) => {
                CliError::Stall(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn fuel_per_level(flag: Option<u64>) -> u64 {
    if let Some(f) = flag {
        return f.max(1);
    }
    if let Ok(v) = std::env::var("NTOP_FUEL") {
        if let Ok(f) = v.parse::<u64>() {
            return f.max(1);
        }
    }
    DEFAULT_FUEL_PER_LEVEL
}

fn fuel_budget(flag: Option<u64>, levels: u32) -> u64 {
    fuel_per_level(flag).saturating_mul(levels as u64 + 1)
}

/// `eval EXPR -p PRECISION`: exact expression evaluation to a lean dyadic
/// interval of width at most `2^(1-precision)`.
pub fn cmd_eval(expr: &str, precision: u32, fuel: Option<u64>) -> Result<String, CliError> {
    if precision > MAX_PRECISION {
        return Err(CliError::Usage(format!(
            "precision {precision} exceeds the maximum {MAX_PRECISION}"
        )));
    }
    let parsed = parse_expr(expr).map_err(|e| CliError::Usage(e.to_string()))?;
    let budget = fuel_budget(fuel, precision);
    let answer = eval_expr(&parsed, precision, budget)?;
    Ok(format!("{answer}\n"))
}

fn render_report(report: &AxiomReport, header: &str) -> (String, bool) {
    let mut out = String::new();
    let _ = writeln!(out, "{header}: {} dots", report.dots);
    for check in &report.checks {
        let verdict = if check.pass { "PASS" } else { "FAIL" };
        let _ = write!(out, "  {:<38} {}", check.name, verdict);
        if let Some(cex) = &check.counterexample {
            let _ = write!(out, "  counterexample: {cex}");
        }
        let _ = writeln!(out);
    }
    let all = report.all_pass();
    let _ = writeln!(out, "result: {}", if all { "PASS" } else { "FAIL" });
    (out, all)
}

fn space_report<S: Graded>(frag: &GradedFragment<S>, mutate: bool) -> Result<(String, bool), CliError> {
    let header = format!(
        "axioms on {} (depth <= {})",
        frag.space().name(),
        frag.max_rank()
    );
    let report = if mutate {
        mutated_report(frag.space(), frag.dots())?
    } else {
        check_pre_natural_axioms(frag.space(), frag.dots())
    };
    Ok(render_report(&report, &header))
}

/// `axioms SPACE --depth N`: exhaustive five-axiom suite on the standard
/// fragment of the named space. Returns the report and whether it passed.
pub fn cmd_axioms(space: &str, depth: u32, mutate: bool) -> Result<(String, bool), CliError> {
    match space {
        "sigmaR" => space_report(&sigma_r_fragment(depth), mutate),
        "sigma01" => space_report(&sigma01_fragment(depth), mutate),
        "binary" => space_report(&nary_unit_fragment(2, depth, Some(1024)), mutate),
        "ternary" => space_report(&nary_unit_fragment(3, depth, Some(1024)), mutate),
        "decimal" => space_report(&nary_unit_fragment(10, depth, Some(1024)), mutate),
        "baire" => space_report(&baire_fragment(BaireSpace::baire(), 3, depth), mutate),
        "cantor" => space_report(&baire_fragment(BaireSpace::cantor(), 2, depth), mutate),
        "product:sigmaR" => space_report(&product_sigma_r_fragment(depth, 16), mutate),
        other => Err(CliError::Usage(format!(
            "unknown space {other:?}; expected one of sigmaR, sigma01, binary, ternary, \
             decimal, baire, cantor, product:sigmaR"
        ))),
    }
}

/// `cantor X -p PRECISION`: image of `x in [0,1]` under the staircase map,
/// as a binary dot of width at most `2^(1-precision)`.
pub fn cmd_cantor(x: &str, precision: u32, fuel: Option<u64>) -> Result<String, CliError> {
    if precision > MAX_PRECISION {
        return Err(CliError::Usage(format!(
            "precision {precision} exceeds the maximum {MAX_PRECISION}"
        )));
    }
    let x = parse_rational(x).map_err(|e| CliError::Usage(e.to_string()))?;
    if x < BigRational::zero() || x > BigRational::one() {
        return Err(CliError::Usage(format!(
            "{} is outside [0, 1]",
            format_rational(&x)
        )));
    }
    let budget = fuel_budget(fuel, precision);
    let point = nary_unit_from_rational(3, &x)?;
    let mut image = cantor_map().apply_with_fuel(point, budget);
    // a binary dot of depth m has width 2^-m; precision p needs m >= p-1
    let want = precision.saturating_sub(1);
    for i in 0..budget {
        let dot = image.dot(i as usize)?;
        if let NAryDot {
            kind: NAryKind::Interval { m, .. },
            ..
        } = dot
        {
            if m >= want {
                let (lo, hi) = dot.endpoints().expect("interval dot");
                return Ok(format!(
                    "{dot} = [{}, {}]\n",
                    format_rational(&lo),
                    format_rational(&hi)
                ));
            }
        }
    }
    Err(CliError::Stall(format!(
        "staircase image did not reach width 2^-{want} within {budget} pulls"
    )))
}

/// `hawkeye LINE BALL -t TOL`: the in/out/let call for a rational ball
/// against a rational line.
pub fn cmd_hawkeye(
    line: &str,
    ball: &str,
    tolerance: u32,
    fuel: Option<u64>,
) -> Result<String, CliError> {
    if tolerance == 0 {
        return Err(CliError::Usage("tolerance must be at least 1".into()));
    }
    let line = parse_rational(line).map_err(|e| CliError::Usage(e.to_string()))?;
    let ball = parse_rational(ball).map_err(|e| CliError::Usage(e.to_string()))?;
    let budget = fuel_budget(fuel, tolerance);
    let mut point = from_rational(&ball);
    let call = hawkeye_decide(&line, &mut point, tolerance, budget)?;
    Ok(format!("{call}\n"))
}

fn load_presentation(spec: &str, levels: u32) -> Result<MetricPresentation, CliError> {
    if let Ok(pres) = builtin_presentation(spec, levels) {
        return Ok(pres);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| CliError::Usage(format!("cannot read presentation {spec:?}: {e}")))?;
    Ok(parse_presentation(spec, &text)?)
}

/// `fann PRESENTATION --max-level L`: builds the fann of a builtin or file
/// presentation and reports per-level counts, branching and the axiom suite.
pub fn cmd_fann(presentation: &str, max_level: u32) -> Result<String, CliError> {
    let pres = load_presentation(presentation, max_level + 1)?;
    let fann = build_fann(&pres, max_level)?;
    let space = fann.space().clone();

    let mut out = String::new();
    let _ = writeln!(out, "fann({}): built to level {max_level}", pres.name());
    for level in 0..=max_level {
        let ids: Vec<usize> = (0..fann.len())
            .filter(|&i| {
                !space.is_maximal(fann.dot(i)) && space.depth(fann.dot(i)) == level
            })
            .collect();
        let (mut lo, mut hi, mut total) = (usize::MAX, 0usize, 0usize);
        for &i in &ids {
            let b = fann.children_of(i).len();
            lo = lo.min(b);
            hi = hi.max(b);
            total += b;
        }
        if level == max_level {
            let _ = writeln!(out, "level {level}: {} dots", ids.len());
        } else {
            let _ = writeln!(
                out,
                "level {level}: {} dots, branching {lo}..{hi} (total {total})",
                ids.len()
            );
        }
    }
    let _ = writeln!(
        out,
        "grading: OK (every ball reaches the maximal dot in level+1 steps)"
    );
    let _ = writeln!(
        out,
        "finitely branching: {}",
        if is_fann_fragment(&fann) { "yes" } else { "no" }
    );
    let (axioms, pass) = render_report(
        &check_pre_natural_axioms(&space, fann.dots()),
        "axiom suite",
    );
    out.push_str(&axioms);
    if !pass {
        return Err(CliError::Usage(
            "built fann failed the axiom suite".into(),
        ));
    }
    Ok(out)
}
