//! Property suites over a whole Grassmannian, with machine-readable reports.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::grass::{self, GrassContext};
use crate::oracles;
use crate::partition::Partition;
use crate::poly::Poly;
use crate::rep::{self, VElement};
use crate::schur::{self, SchurExpansion};

/// Highest power of `sigma_1` checked by the SYT suite.
pub const SYT_MAX_POWER: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Pieri,
    Positivity,
    Specialize,
    Intertwine,
    Syt,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Pieri,
        Suite::Positivity,
        Suite::Specialize,
        Suite::Intertwine,
        Suite::Syt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pieri => "pieri",
            Suite::Positivity => "positivity",
            Suite::Specialize => "specialize",
            Suite::Intertwine => "intertwine",
            Suite::Syt => "syt",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite {s:?}, expected one of {}", names.join(", "))
            })
    }
}

/// A failed check: what was checked, what was expected, what came out.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: Value,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub m: usize,
    pub passed: bool,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
    /// Suite-specific payload, e.g. the certified table for `positivity`.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl Report {
    fn new(suite: Suite, ctx: &GrassContext) -> Self {
        Report {
            suite: suite.name().to_string(),
            n: ctx.n(),
            m: ctx.m(),
            passed: true,
            checked: 0,
            skipped: 0,
            failures: Vec::new(),
            details: Value::Null,
        }
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Failure) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            self.failures.push(failure());
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} on G({},{}): {} checked, {} skipped, {} failed",
            self.suite,
            self.n,
            self.m,
            self.checked,
            self.skipped,
            self.failures.len()
        )?;
        for failure in &self.failures {
            write!(
                f,
                "\n  case {}: expected {}, got {}",
                failure.case, failure.expected, failure.actual
            )?;
        }
        Ok(())
    }
}

pub fn run(suite: Suite, ctx: &GrassContext) -> Result<Report> {
    match suite {
        Suite::Pieri => pieri(ctx),
        Suite::Positivity => positivity(ctx),
        Suite::Specialize => specialize(ctx),
        Suite::Intertwine => intertwine(ctx),
        Suite::Syt => syt(ctx),
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serialization cannot fail")
}

/// The Pieri formula against a direct expansion of `(x1+...+xn) s_lambda`.
pub fn pieri(ctx: &GrassContext) -> Result<Report> {
    let mut report = Report::new(Suite::Pieri, ctx);
    let n = ctx.n();
    let sum = (1..=n).fold(Poly::zero(n), |acc, i| &acc + &Poly::x(n, i));
    for lambda in ctx.classes() {
        let formula = schur::pieri_multiply(&lambda, n)?;
        let direct = schur::expand_in_double_schur(&(&sum * &schur::double_schur(&lambda, n)?), n)?;
        report.check(formula == direct, || Failure {
            case: json!({ "lambda": lambda }),
            expected: to_json(&direct),
            actual: to_json(&formula),
        });
    }
    Ok(report)
}

/// Every structure constant of the table has a positivity certificate.
pub fn positivity(ctx: &GrassContext) -> Result<Report> {
    let mut report = Report::new(Suite::Positivity, ctx);
    let table = grass::full_structure_table(ctx)?;
    for entry in table.entries() {
        for term in &entry.products {
            report.check(term.certificate.is_ok(), || Failure {
                case: json!({ "lambda": entry.lambda, "mu": entry.mu, "nu": term.nu }),
                expected: json!("nonnegative integer combination of monomials in u1..u(m-1)"),
                actual: json!(term
                    .certificate
                    .as_ref()
                    .err()
                    .map(ToString::to_string)
                    .unwrap_or_default()),
            });
        }
    }
    report.details = json!({
        "differences_used": table.differences_used(),
        "table": table,
    });
    Ok(report)
}

/// Killing the t-variables recovers classical Schur polynomials and
/// Littlewood-Richardson coefficients.
pub fn specialize(ctx: &GrassContext) -> Result<Report> {
    let mut report = Report::new(Suite::Specialize, ctx);
    let n = ctx.n();
    for lambda in ctx.classes() {
        let specialized = schur::double_schur(&lambda, n)?.drop_t();
        let classical = oracles::classical_schur_ssyt(&lambda, n);
        report.check(specialized == classical, || Failure {
            case: json!({ "schur": lambda }),
            expected: to_json(&classical),
            actual: to_json(&specialized),
        });
    }
    let table = grass::full_structure_table(ctx)?;
    for entry in table.entries() {
        let at_zero = entry.expansion(n).map_coefficients(|_, c| Some(c.drop_t()));
        let size = entry.lambda.size() + entry.mu.size();
        if size as usize > oracles::LR_ENUMERATION_LIMIT {
            report.skipped += 1;
            continue;
        }
        let mut expected = SchurExpansion::new(n);
        for nu in ctx.classes() {
            let c = oracles::lr_coefficient(&entry.lambda, &entry.mu, &nu)?;
            expected.add_term(nu, Poly::constant(0, c));
        }
        report.check(at_zero == expected, || Failure {
            case: json!({ "lambda": entry.lambda, "mu": entry.mu }),
            expected: to_json(&expected),
            actual: to_json(&at_zero),
        });
    }
    Ok(report)
}

/// Wedge-side and polynomial-side actions of each `(x|t)^k`, and of `x`,
/// agree on every Schubert class.
pub fn intertwine(ctx: &GrassContext) -> Result<Report> {
    let mut report = Report::new(Suite::Intertwine, ctx);
    let m = ctx.m();
    let mut elements: Vec<(String, VElement)> = (0..m)
        .map(|k| (format!("(x|t)^{k}"), VElement::basis(m, k)))
        .collect();
    elements.push(("x".into(), rep::mult_by_x(&VElement::basis(m, 0))));
    for lambda in ctx.classes() {
        let class = SchurExpansion::basis(ctx.n(), lambda.clone());
        for (name, f) in &elements {
            let wedge = rep::wedge_side_action(f, &class, ctx)?;
            let poly = rep::polynomial_side_action(f, &class, ctx)?;
            report.check(wedge == poly, || Failure {
                case: json!({ "f": name, "lambda": lambda }),
                expected: to_json(&poly),
                actual: to_json(&wedge),
            });
        }
    }
    Ok(report)
}

/// Top coefficients of `(x1+...+xn)^k` are standard tableau counts.
pub fn syt(ctx: &GrassContext) -> Result<Report> {
    let mut report = Report::new(Suite::Syt, ctx);
    for k in 0..=SYT_MAX_POWER {
        let power = grass::sigma1_power_expansion(k, ctx)?;
        for lambda in Partition::all_of_size(k, ctx.n()) {
            if !ctx.contains(&lambda) {
                continue;
            }
            let count = oracles::syt_count(&lambda)?;
            let expected = Poly::constant(0, count);
            let actual = power.coefficient(&lambda);
            report.check(actual == expected, || Failure {
                case: json!({ "k": k, "lambda": lambda }),
                expected: to_json(&expected),
                actual: to_json(&actual),
            });
        }
        let too_big: Vec<&Partition> = power.iter().map(|(l, _)| l).filter(|l| l.size() > k).collect();
        report.check(too_big.is_empty(), || Failure {
            case: json!({ "k": k }),
            expected: json!("no classes of degree above k"),
            actual: to_json(&too_big),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("pierri".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let ctx = GrassContext::new(2, 4).unwrap();
        for suite in Suite::ALL {
            let report = run(suite, &ctx).unwrap();
            assert!(report.passed, "{report}");
            assert!(report.checked > 0);
        }
    }
}
