//! Suite orchestration: composes the library's verification reports into
//! the aggregate reports produced by the command-line interface.
//!
//! A *suite* is a named bundle of checks.  `verify` runs the four default
//! suites (`ns`, `nikulin`, `isometry`, `covers`); the `pell` and `glue`
//! suites back the standalone subcommands and can also be requested through
//! `--suites`.  Check names from each bundle are namespaced by a prefix so a
//! combined report stays unambiguous.

use kummer_lattice::covers::covers_report;
use kummer_lattice::isometry::{
    extension_check, isometry_report, lefschetz_number, obstruction_report, phi, theta,
};
use kummer_lattice::nikulin::{
    a_prime, kummer_structure_count, model_stats_report, nikulin_configuration_report,
    verify_nef_big, verify_no_base_component, verify_not_hyperelliptic, NefCertificate, NefTarget,
};
use kummer_lattice::ns::{
    build_ns_basis, disc_structure_ns, intersect, self_intersection, verify_beta_patterns,
    KummerContext, NsBasis, NsClass,
};
use kummer_lattice::pell::neg2_in_rank2;
use kummer_lattice::report::{format_tuple, CheckStatus, VerificationReport};
use kummer_lattice::{Error as CoreError, Int, Rat};

/// Every suite name accepted by `--suites` and the subcommand dispatch.
pub const ALL_SUITES: [&str; 6] = ["ns", "nikulin", "isometry", "covers", "pell", "glue"];

/// Which suites a run should execute.
#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteSelection {
    pub ns: bool,
    pub nikulin: bool,
    pub isometry: bool,
    pub covers: bool,
    pub pell: bool,
    pub glue: bool,
}

impl SuiteSelection {
    /// The default `verify` set: everything except the two standalone
    /// suites whose checks are already embedded in `isometry`.
    pub fn all_verify() -> Self {
        Self {
            ns: true,
            nikulin: true,
            isometry: true,
            covers: true,
            ..Self::default()
        }
    }

    /// Selection consisting of exactly one named suite.
    ///
    /// Panics on unknown names; callers pass literals from [`ALL_SUITES`].
    pub fn only(name: &str) -> Self {
        let mut sel = Self::default();
        sel.enable(name).expect("known suite name");
        sel
    }

    fn enable(&mut self, name: &str) -> Result<(), String> {
        match name {
            "ns" => self.ns = true,
            "nikulin" => self.nikulin = true,
            "isometry" => self.isometry = true,
            "covers" => self.covers = true,
            "pell" => self.pell = true,
            "glue" => self.glue = true,
            other => {
                return Err(format!(
                    "unknown suite `{other}` (expected a comma-separated subset of: {})",
                    ALL_SUITES.join(", ")
                ))
            }
        }
        Ok(())
    }

    /// Parse a `--suites` argument.  `None` means the default verify set;
    /// an empty string selects nothing (a report with zero checks passes).
    pub fn parse(arg: Option<&str>) -> Result<Self, String> {
        match arg {
            None => Ok(Self::all_verify()),
            Some(s) => {
                let mut sel = Self::default();
                for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
                    sel.enable(name)?;
                }
                Ok(sel)
            }
        }
    }
}

/// Run the selected suites over the given node indices and collect every
/// check into one report.
///
/// A mid-run library error (for example an exhausted enumeration budget)
/// stops the run; the partial report is returned together with the error so
/// the caller can still render what was checked.  `inject_fault` appends a
/// deliberately failing check, used to confirm that failures propagate to
/// the exit code.
pub fn run_verify(
    basis: &NsBasis,
    sel: &SuiteSelection,
    ts: &[usize],
    budget: u64,
    m_max: usize,
    inject_fault: bool,
) -> (VerificationReport, Option<CoreError>) {
    let ctx = basis.context();
    let t_field = if ts.len() == 1 { Some(ts[0]) } else { None };
    let mut report = VerificationReport::new(ctx.k(), t_field);
    let err = run_suites(basis, sel, ts, budget, m_max, &mut report).err();
    if inject_fault {
        let t = ts.first().copied().unwrap_or(1);
        let other = if t == 16 { 1 } else { t + 1 };
        let perturbed = a_prime(ctx, t).add(&NsClass::node(other));
        report.check(
            "fault.a_prime_square",
            "deliberately perturbed companion class must fail its square check",
            -2,
            self_intersection(&perturbed, ctx),
        );
    }
    (report, err)
}

fn run_suites(
    basis: &NsBasis,
    sel: &SuiteSelection,
    ts: &[usize],
    budget: u64,
    m_max: usize,
    report: &mut VerificationReport,
) -> Result<(), CoreError> {
    let ctx = basis.context();
    if sel.ns {
        let (_, _, disc_report) = disc_structure_ns(basis)?;
        report.absorb("ns", disc_report);
        let census = verify_beta_patterns(basis, &Rat::from_integer(Int::from(1)), budget)?;
        report.absorb("ns", census);
    }
    let tagged = ts.len() > 1;
    for &t in ts {
        let pre = |name: &str| {
            if tagged {
                format!("t{t}.{name}")
            } else {
                name.to_string()
            }
        };
        if sel.nikulin {
            report.absorb(&pre("nikulin"), nikulin_configuration_report(basis, t));
            let cert = verify_nef_big(basis, NefTarget::Lprime, t, budget)?;
            absorb_nef(report, &pre("nef_lprime"), &cert, 16);
            let cert = verify_nef_big(basis, NefTarget::LminusKA, t, budget)?;
            absorb_nef(report, &pre("nef_d"), &cert, 15);
            report.absorb(
                &pre("base_lprime"),
                verify_no_base_component(basis, NefTarget::Lprime, t),
            );
            report.absorb(
                &pre("base_d"),
                verify_no_base_component(basis, NefTarget::LminusKA, t),
            );
            report.absorb(
                &pre("hyperelliptic_lprime"),
                verify_not_hyperelliptic(basis, NefTarget::Lprime, t),
            );
            report.absorb(
                &pre("hyperelliptic_d"),
                verify_not_hyperelliptic(basis, NefTarget::LminusKA, t),
            );
            report.absorb(&pre("model"), model_stats_report(basis, t));
        }
        if sel.isometry {
            let rep = isometry_report(basis, t)?;
            if tagged {
                report.absorb(&pre("isometry"), rep);
            } else {
                // Single-t runs keep the canonical check names (they are
                // already unique across suites): e.g. `salem_factor`.
                report.checks.extend(rep.checks);
            }
        }
        if sel.isometry || sel.pell {
            report.absorb(&pre("pell"), neg2_in_rank2(ctx, t, m_max));
        }
    }
    if sel.nikulin {
        report.note(
            "kummer_structures",
            "number of distinct Kummer structures on the same K3 surface",
            "recorded",
            kummer_structure_count(ctx),
            CheckStatus::Pass,
        );
    }
    if sel.isometry {
        if ctx.k() >= 2 {
            report.absorb("obstruction", obstruction_report(ctx)?);
        } else {
            report.note(
                "obstruction",
                "rank-17 fixed-lattice obstruction applies for k >= 2 only",
                "skipped",
                "k = 1",
                CheckStatus::NotApplicable,
            );
        }
    }
    if sel.glue {
        report.absorb("glue", glue_report(basis)?);
    }
    if sel.covers {
        report.absorb("covers", covers_report(basis));
    }
    Ok(())
}

fn render_classes(classes: &[NsClass]) -> String {
    if classes.is_empty() {
        "none".to_string()
    } else {
        classes
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Flatten a nef/big certificate into named checks under `prefix`.
fn absorb_nef(
    report: &mut VerificationReport,
    prefix: &str,
    cert: &NefCertificate,
    expected_zero: usize,
) {
    let mut r = VerificationReport::new(report.k, None);
    r.check_bool(
        "big",
        "certified divisor has positive self-intersection",
        cert.is_big,
    );
    r.note(
        "square",
        "self-intersection of the certified divisor",
        "recorded",
        &cert.d_squared,
        CheckStatus::Pass,
    );
    r.check(
        "violators",
        "no (-2)-class pairs negatively with the divisor",
        "none",
        render_classes(&cert.violators),
    );
    r.check(
        "zero_class_count",
        "number of (-2)-classes orthogonal to the divisor",
        expected_zero,
        cert.zero_classes.len(),
    );
    r.note(
        "zero_classes",
        "the contracted (-2)-classes",
        "recorded",
        render_classes(&cert.zero_classes),
        CheckStatus::Pass,
    );
    r.check_bool(
        "zero_classes_orthogonal",
        "contracted classes are pairwise orthogonal",
        cert.zero_classes_pairwise_orthogonal,
    );
    r.check(
        "margin_candidates",
        "no candidate sits within one unit of the certificate boundary",
        0u64,
        cert.margin_candidates,
    );
    r.note(
        "candidates_scanned",
        "size of the finite search region",
        "recorded",
        cert.candidates_scanned,
        CheckStatus::Pass,
    );
    r.check_bool("certified", "nef certificate is complete", cert.is_nef_certified);
    report.absorb(prefix, r);
}

/// Checks about unimodular overlattice extensions: which involutions glue
/// to a rank-22 model, and the numerical invariants of that model.
fn glue_report(basis: &NsBasis) -> Result<VerificationReport, CoreError> {
    let ctx = basis.context();
    let k = ctx.k();
    let mut r = VerificationReport::new(k, None);

    let th = theta(basis, 1);
    let minus = extension_check(basis, &th, -1)?;
    r.check(
        "theta_extends_minus",
        "theta paired with -1 on the complement extends exactly when k = 1",
        k == 1,
        minus.extends,
    );
    r.note(
        "theta_minus_witness",
        "reason recorded by the extension check",
        "recorded",
        &minus.witness,
        CheckStatus::Pass,
    );
    let plus = extension_check(basis, &th, 1)?;
    r.check(
        "theta_extends_plus",
        "theta never extends with +1 on the complement",
        false,
        plus.extends,
    );

    let ph = phi(basis, 1, 2)?;
    let comp = extension_check(basis, &ph, 1)?;
    r.check(
        "phi_extends_plus",
        "the composite of two node involutions always extends with +1",
        true,
        comp.extends,
    );
    match comp.glued.as_ref() {
        Some(g) => {
            r.check("glued_rank", "overlattice has rank 22", 22usize, g.rank);
            r.check("glued_det", "overlattice is unimodular", -1, &g.det);
            r.check(
                "glued_signature",
                "overlattice has signature (3, 19)",
                "(3, 19)",
                format_tuple(&[g.signature.0, g.signature.1]),
            );
            r.check_bool("glued_even", "overlattice is even", g.is_even);
            r.check(
                "lefschetz",
                "Lefschetz number of the extended composite is 4k^2 + 20",
                4 * k * k + 20,
                lefschetz_number(basis)?,
            );
        }
        None => r.note(
            "glued_model",
            "overlattice witness search skipped above the size cap",
            "skipped",
            "discriminant group too large",
            CheckStatus::NotApplicable,
        ),
    }
    if let Some(g) = minus.glued.as_ref() {
        r.check(
            "theta_glued_trace",
            "theta glued with a sign flip on the complement has trace 10",
            10,
            &g.trace,
        );
    }
    Ok(r)
}

/// One labeled row of sweep output; `values` holds one entry per k.
pub struct SweepRow {
    pub label: String,
    pub values: Vec<String>,
}

/// Aggregated sweep results over an inclusive k-range.
pub struct SweepSummary {
    pub k_min: i64,
    pub k_max: i64,
    pub rows: Vec<SweepRow>,
    pub reports: Vec<VerificationReport>,
    pub all_passed: bool,
}

/// Run the default verification for each k in `[k_min, k_max]` and tabulate
/// headline invariants.  Stops at the first library error, returning the
/// rows accumulated so far together with the error.
pub fn run_sweep(k_min: i64, k_max: i64, budget: u64) -> (SweepSummary, Option<CoreError>) {
    const LABELS: [&str; 6] = [
        "k",
        "A1.A1'",
        "L^2",
        "salem_trace",
        "kummer_structure_count",
        "verify",
    ];
    let mut columns: Vec<Vec<String>> = vec![Vec::new(); LABELS.len()];
    let mut reports = Vec::new();
    let mut all_passed = true;
    let mut err = None;
    for k in k_min..=k_max {
        let step = (|| -> Result<(), CoreError> {
            let ctx = KummerContext::new(k)?;
            let basis = build_ns_basis(&ctx);
            let pairing = intersect(&NsClass::node(1), &a_prime(&ctx, 1), &ctx);
            let salem_trace = phi(&basis, 1, 2)?.matrix_v.trace() - Int::from(15);
            let (rep, verr) = run_verify(
                &basis,
                &SuiteSelection::all_verify(),
                &[1],
                budget,
                10,
                false,
            );
            if let Some(e) = verr {
                return Err(e);
            }
            let ok = rep.passed();
            all_passed &= ok;
            columns[0].push(k.to_string());
            columns[1].push(pairing.to_string());
            columns[2].push(ctx.l_square().to_string());
            columns[3].push(salem_trace.to_string());
            columns[4].push(kummer_structure_count(&ctx).to_string());
            columns[5].push(if ok { "pass" } else { "fail" }.to_string());
            reports.push(rep);
            Ok(())
        })();
        if let Err(e) = step {
            all_passed = false;
            err = Some(e);
            break;
        }
    }
    let rows = LABELS
        .iter()
        .zip(columns)
        .map(|(label, values)| SweepRow {
            label: label.to_string(),
            values,
        })
        .collect();
    (
        SweepSummary {
            k_min,
            k_max,
            rows,
            reports,
            all_passed,
        },
        err,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_defaults_and_subsets() {
        let def = SuiteSelection::parse(None).unwrap();
        assert!(def.ns && def.nikulin && def.isometry && def.covers);
        assert!(!def.pell && !def.glue);
        let none = SuiteSelection::parse(Some("")).unwrap();
        assert!(
            !none.ns && !none.nikulin && !none.isometry && !none.covers && !none.pell && !none.glue
        );
        let some = SuiteSelection::parse(Some("ns, covers")).unwrap();
        assert!(some.ns && some.covers && !some.nikulin && !some.isometry);
        assert!(SuiteSelection::parse(Some("spectra")).is_err());
    }

    #[test]
    fn empty_selection_yields_empty_passing_report() {
        let ctx = KummerContext::new(2).unwrap();
        let basis = build_ns_basis(&ctx);
        let sel = SuiteSelection::parse(Some("")).unwrap();
        let (report, err) = run_verify(&basis, &sel, &[1], 1 << 20, 3, false);
        assert!(err.is_none());
        assert!(report.checks.is_empty());
        assert!(report.passed());
    }

    #[test]
    fn fault_injection_fails_the_report() {
        let ctx = KummerContext::new(2).unwrap();
        let basis = build_ns_basis(&ctx);
        let sel = SuiteSelection::parse(Some("")).unwrap();
        let (report, err) = run_verify(&basis, &sel, &[1], 1 << 20, 3, true);
        assert!(err.is_none());
        assert_eq!(report.checks.len(), 1);
        assert!(!report.passed());
        assert_eq!(report.checks[0].actual, "-4");
    }

    #[test]
    fn tiny_budget_reports_budget_error() {
        let ctx = KummerContext::new(2).unwrap();
        let basis = build_ns_basis(&ctx);
        let sel = SuiteSelection::only("ns");
        let (_, err) = run_verify(&basis, &sel, &[1], 10, 3, false);
        assert!(matches!(err, Some(CoreError::BudgetExceeded { .. })));
    }

    #[test]
    fn glue_suite_passes_for_small_k() {
        for k in 1..=2 {
            let ctx = KummerContext::new(k).unwrap();
            let basis = build_ns_basis(&ctx);
            let sel = SuiteSelection::only("glue");
            let (report, err) = run_verify(&basis, &sel, &[1], 1 << 20, 3, false);
            assert!(err.is_none());
            assert!(report.passed(), "k = {k}: {:?}", report.failed_checks());
        }
    }

    #[test]
    fn sweep_rows_match_closed_forms() {
        let (summary, err) = run_sweep(1, 3, 1 << 21);
        assert!(err.is_none());
        assert!(summary.all_passed);
        assert_eq!(summary.reports.len(), 3);
        let row = |label: &str| {
            summary
                .rows
                .iter()
                .find(|r| r.label == label)
                .unwrap_or_else(|| panic!("missing row {label}"))
                .values
                .join(" ")
        };
        assert_eq!(row("k"), "1 2 3");
        assert_eq!(row("A1.A1'"), "6 10 14");
        assert_eq!(row("L^2"), "4 12 24");
        assert_eq!(row("salem_trace"), "2 14 34");
        assert_eq!(row("kummer_structure_count"), "1 2 4");
        assert_eq!(row("verify"), "pass pass pass");
    }
}
