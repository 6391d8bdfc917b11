//! The property battery behind `verify`: one structured line per property,
//! with pass/fail/skipped status and a deterministic detail string.

use crate::crossed::{
    crossed_product, rho_window_check, validate_crossed_module, CrossedModule,
};
use crate::error::Result;
use crate::groupoid::{validate_groupoid, FiniteGroupoid};
use crate::nerve::check_simplicial_identities;
use crate::report::Report;
use crate::transgression::{
    cochain_map_check, convention_relation, pipeline_vs_closed_check, Convention, LevelSign,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
    /// Extra measured facts worth printing even on success.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyRun {
    pub lines: Vec<CheckLine>,
}

impl VerifyRun {
    pub fn all_passed(&self) -> bool {
        self.lines
            .iter()
            .all(|l| !matches!(l.status, CheckStatus::Fail(_)))
    }

    fn push_report(&mut self, name: &str, report: Report) {
        let status = if report.is_valid() {
            CheckStatus::Pass
        } else {
            let first = &report.violations[0];
            CheckStatus::Fail(format!(
                "{} ({} violation(s), first: {} [{}])",
                report.context,
                report.violations.len(),
                first.law,
                first.witness
            ))
        };
        self.lines.push(CheckLine { name: name.to_string(), status, detail: None });
    }
}

/// Battery for a bare groupoid: axioms and simplicial identities.
pub fn verify_groupoid(g: &FiniteGroupoid, pmax: usize, max_cells: u64) -> Result<VerifyRun> {
    let mut run = VerifyRun::default();
    run.push_report("groupoid axioms", validate_groupoid(g));
    run.push_report(
        "simplicial identities",
        check_simplicial_identities(g, pmax, max_cells)?,
    );
    Ok(run)
}

/// Battery for a crossed module: axioms on the bundle and the base, the
/// simplicial identities on both nerves, the integer-twist window laws, the
/// staged-pipeline comparisons, and the cochain-map sign measurement.
pub fn verify_crossed_module(
    cm: &CrossedModule,
    pmax: usize,
    window: i64,
    max_cells: u64,
) -> Result<VerifyRun> {
    let mut run = VerifyRun::default();
    run.push_report("base groupoid axioms", validate_groupoid(&cm.base));
    run.push_report("crossed-module axioms", validate_crossed_module(cm));
    if !run.all_passed() {
        // everything downstream assumes a lawful module
        return Ok(run);
    }
    let cp = crossed_product(cm);
    run.push_report(
        "simplicial identities (base nerve)",
        check_simplicial_identities(&cm.base, pmax.min(3), max_cells)?,
    );
    run.push_report(
        "simplicial identities (crossed-product nerve)",
        check_simplicial_identities(&cp.groupoid, pmax.min(3), max_cells)?,
    );

    if window == 0 {
        run.lines.push(CheckLine {
            name: "integer-twist window laws".to_string(),
            status: CheckStatus::Skipped("window 0 makes the integer tests vacuous".to_string()),
            detail: None,
        });
    } else {
        run.push_report(
            "integer-twist window laws",
            rho_window_check(cm, &cp, window),
        );
    }

    run.push_report(
        "staged pipeline vs closed formulas",
        pipeline_vs_closed_check(cm, &cp, pmax, max_cells)?,
    );

    let relation = convention_relation(cm, &cp, pmax.min(3), max_cells)?;
    let relation_line = match &relation {
        crate::transgression::ConventionRelation::Mixed { witness } => CheckLine {
            name: "convention comparison".to_string(),
            status: CheckStatus::Fail(witness.clone()),
            detail: None,
        },
        other => CheckLine {
            name: "convention comparison".to_string(),
            status: CheckStatus::Pass,
            detail: Some(other.to_string()),
        },
    };
    run.lines.push(relation_line);

    if pmax < 2 {
        run.lines.push(CheckLine {
            name: "cochain-map sign".to_string(),
            status: CheckStatus::Skipped(
                "needs two adjacent transgressions (pmax >= 2)".to_string(),
            ),
            detail: None,
        });
    } else {
        let check = cochain_map_check(cm, &cp, pmax, Convention::Tilde, max_cells)?;
        let line = match check.global_sign {
            Some(s) => CheckLine {
                name: "cochain-map sign".to_string(),
                status: CheckStatus::Pass,
                detail: Some(format!(
                    "T1(dc) = {}d(T1 c) at every level in 1..{pmax}",
                    if s > 0 { "+" } else { "-" }
                )),
            },
            None => {
                let witness = check
                    .per_level
                    .iter()
                    .find_map(|(p, v)| match v {
                        LevelSign::Neither { witness } => {
                            Some(format!("level {p}: {witness}"))
                        }
                        _ => None,
                    })
                    .unwrap_or_else(|| "level signs disagree".to_string());
                CheckLine {
                    name: "cochain-map sign".to_string(),
                    status: CheckStatus::Fail(witness),
                    detail: None,
                }
            }
        };
        run.lines.push(line);
    }

    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::identity_cm;
    use crate::groupoid::{cyclic, pair};

    #[test]
    fn healthy_module_passes_the_whole_battery() {
        let cm = identity_cm(&cyclic(3));
        let run = verify_crossed_module(&cm, 3, 2, 1_000_000).unwrap();
        assert!(run.all_passed());
        assert_eq!(run.lines.len(), 8);
        let sign_line = run.lines.iter().find(|l| l.name == "cochain-map sign").unwrap();
        assert_eq!(
            sign_line.detail.as_deref(),
            Some("T1(dc) = -d(T1 c) at every level in 1..3")
        );
    }

    #[test]
    fn zero_window_marks_the_integer_tests_skipped() {
        let cm = identity_cm(&cyclic(2));
        let run = verify_crossed_module(&cm, 2, 0, 1_000_000).unwrap();
        assert!(run.all_passed());
        let rho_line = run
            .lines
            .iter()
            .find(|l| l.name == "integer-twist window laws")
            .unwrap();
        assert!(matches!(rho_line.status, CheckStatus::Skipped(_)));
    }

    #[test]
    fn groupoid_battery_covers_axioms_and_identities() {
        let run = verify_groupoid(&pair(3), 3, 1_000_000).unwrap();
        assert!(run.all_passed());
        assert_eq!(run.lines.len(), 2);
    }

    #[test]
    fn broken_axioms_stop_the_battery_early() {
        // hand-built tables over Z/2 with one corrupted action entry
        let g = cyclic(2);
        let elems = vec![("n0".to_string(), "o".to_string()), ("n1".to_string(), "o".to_string())];
        let mul = vec![
            ("n0".to_string(), "n0".to_string(), "n0".to_string()),
            ("n0".to_string(), "n1".to_string(), "n1".to_string()),
            ("n1".to_string(), "n0".to_string(), "n1".to_string()),
            ("n1".to_string(), "n1".to_string(), "n0".to_string()),
        ];
        let phi = vec![("n0".to_string(), "r0".to_string()), ("n1".to_string(), "r1".to_string())];
        let mut action = Vec::new();
        for x in ["n0", "n1"] {
            for garr in ["r0", "r1"] {
                let out = if x == "n1" && garr == "r1" { "n0" } else { x };
                action.push((x.to_string(), garr.to_string(), out.to_string()));
            }
        }
        let cm = crate::crossed::CrossedModule::from_parts(g, elems, mul, phi, action).unwrap();
        let run = verify_crossed_module(&cm, 3, 2, 1_000_000).unwrap();
        assert!(!run.all_passed());
        assert_eq!(run.lines.len(), 2, "downstream checks are not attempted");
    }
}
