//! One function per subcommand. Each fills a report and returns `Err` only
//! for unusable input; failed assertions are recorded as checks.

use std::fs;

use num_bigint::BigInt;

use ncalg::builtins;
use ncalg::growth::{closed_form_comparison, kobayashi_closed_form, thresholds};
use ncalg::lie::{antisymmetry_check, build_l, graded_dims, jacobi_check, matrix_model_check};
use ncalg::pbw::pbw_cross_check;
use ncalg::presentation::parse_presentation;
use ncalg::veronese::{
    appendix_reconcile, eliminate_linear, relation_rank, verify_quadraticity, veronese_presentation,
    QuadPresentation, Verdict,
};
use ncalg::{
    classify_growth, cumulative, normal_word_counts, partition_p, DimensionSeries, MonomialOrder, Presentation,
    RewriteSystem,
};

use crate::report::{Report, Table};
use crate::{Command, FlavorArg};

type Outcome = Result<(), String>;

const BUILTIN_PREFIX: &str = "builtin:";

/// Published generator and relation counts of Veronese subalgebras of the
/// built-in presentations, shown next to the computed ones.
const REFERENCE_COUNTS: &[(&str, u32, usize, usize)] = &[("U", 4, 14, 96), ("A", 3, 21, 280)];

/// Listed violations are cut off after this many.
const MAX_LISTED: usize = 20;

pub fn dispatch(cmd: &Command, r: &mut Report) -> Outcome {
    match cmd {
        Command::Complete {
            source,
            max_degree,
            emit,
        } => complete(&source.file, *max_degree, emit.is_some(), r),
        Command::Growth {
            source,
            max_degree,
            flavor,
        } => growth(&source.file, *max_degree, *flavor, r),
        Command::Classify { source, max_degree } => classify(&source.file, *max_degree, r),
        Command::Veronese {
            source,
            d,
            max_letter_degree,
            eliminate,
            emit,
        } => veronese(&source.file, *d, *max_letter_degree, *eliminate, emit.is_some(), r),
        Command::PbwCheck {
            lie,
            algebra,
            max_degree,
        } => pbw_check(lie, algebra, *max_degree, r),
        Command::LieCheck {
            builtin,
            max_degree,
            matrix_indices,
        } => lie_check(builtin, *max_degree, *matrix_indices, r),
        Command::VerifyAppendix {
            data,
            algebra,
            d,
            min_members,
        } => verify_appendix(data, algebra, *d, *min_members, r),
        Command::Partition { n } => partition(*n, r),
        Command::KobayashiCount { n, table } => kobayashi_count(*n, *table, r),
    }
}

fn builtin_name(source: &str) -> Option<&str> {
    source.strip_prefix(BUILTIN_PREFIX)
}

fn load(source: &str, r: &mut Report) -> Result<Presentation, String> {
    let text = match builtin_name(source) {
        Some(name) => builtins::presentation_text(name).map_err(|e| e.to_string())?.to_string(),
        None => fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?,
    };
    let parsed = parse_presentation(&text).map_err(|e| format!("{source}:{e}"))?;
    for w in &parsed.warnings {
        r.note(format!("{source}:{w}"));
    }
    Ok(parsed.presentation)
}

fn complete_to(p: &Presentation, n: u32) -> Result<RewriteSystem, String> {
    RewriteSystem::from_relators(p.order().clone(), p.relators())
        .and_then(|s| s.complete(n))
        .map_err(|e| e.to_string())
}

fn counts(p: &Presentation, n: u32) -> Result<DimensionSeries, String> {
    normal_word_counts(&complete_to(p, n)?, n).map_err(|e| e.to_string())
}

fn series_table(name: &str, s: &DimensionSeries) -> Table {
    let mut t = Table::new(name, &["degree", "count"]);
    for (n, c) in s.points() {
        t.push([n.to_string(), c.to_string()]);
    }
    t
}

fn order_line(p: &Presentation) -> String {
    let names: Vec<&str> = p.alphabet().generators().iter().map(|g| g.name()).collect();
    format!("{} {}", p.order().kind(), names.join(" < "))
}

fn complete(source: &str, n: u32, emit: bool, r: &mut Report) -> Outcome {
    let p = load(source, r)?;
    let sys = complete_to(&p, n)?;
    let a = p.alphabet();
    r.table(Table::fields(
        "summary",
        [
            ("order", order_line(&p)),
            ("relators", p.relators().len().to_string()),
            ("completed_to", sys.completed_to().to_string()),
            ("rules", sys.rules().len().to_string()),
        ],
    ));
    if emit {
        let mut rules: Vec<_> = sys.rules().iter().collect();
        rules.sort_by(|x, y| x.lhs().cmp(y.lhs()));
        let mut t = Table::new("rules", &["lhs", "rhs"]);
        for rule in rules {
            t.push([a.display_word(rule.lhs()), rule.rhs().display(a, Some(p.order()))]);
        }
        r.table(t);
    }
    r.check(
        "interreduced",
        sys.is_interreduced(),
        "no left-hand side contains another, right-hand sides are normal",
    );
    Ok(())
}

fn growth(source: &str, n: u32, flavor: FlavorArg, r: &mut Report) -> Outcome {
    let p = load(source, r)?;
    let h = counts(&p, n)?;
    let s = match flavor {
        FlavorArg::Graded => h,
        FlavorArg::Cumulative => cumulative(&h).map_err(|e| e.to_string())?,
    };
    r.table(series_table("series", &s));
    Ok(())
}

fn float(x: f64) -> String {
    format!("{x:.6}")
}

fn classify(source: &str, n: u32, r: &mut Report) -> Outcome {
    let p = load(source, r)?;
    let gamma = cumulative(&counts(&p, n)?).map_err(|e| e.to_string())?;
    let c = classify_growth(&gamma).map_err(|e| e.to_string())?;
    let d = &c.diagnostics;
    r.table(Table::fields(
        "classification",
        [
            ("label", c.label.to_string()),
            ("samples", gamma.len().to_string()),
            ("fit_from", d.fit_range.0.to_string()),
            ("fit_to", d.fit_range.1.to_string()),
        ],
    ));
    let mut diag = vec![
        ("ratio_median", float(d.ratio_median)),
        ("ratio_early", float(d.ratio_early)),
        ("ratio_late", float(d.ratio_late)),
        ("log_slope", float(d.log_slope)),
        ("max_slope_change", float(d.max_slope_change)),
    ];
    if let Some(s) = d.loglog_slope {
        diag.push(("loglog_slope", float(s)));
    }
    if let Some(a) = c.exponent {
        diag.push(("exponent", float(a)));
    }
    if let Some(deg) = c.degree {
        diag.push(("degree", float(deg)));
    }
    r.table(Table::fields("diagnostics", diag));
    r.note(format!(
        "diagnostics are floating-point estimates; thresholds: ratio {}, drift {}, degree {}, flatness {}",
        thresholds::EXPONENTIAL_RATIO,
        thresholds::RATIO_DRIFT,
        thresholds::POLYNOMIAL_MAX_DEGREE,
        thresholds::SLOPE_FLATNESS
    ));
    Ok(())
}

fn letter_table(qp: &QuadPresentation) -> Table {
    let a = qp.letter_alphabet();
    let order = MonomialOrder::deglex(a.clone());
    let mut t = Table::new("letters", &["letter", "word", "status"]);
    for (i, l) in qp.letters().iter().enumerate() {
        let status = match qp.eliminated().get(&(i as u16)) {
            Some(v) => format!("= {}", v.display(a, Some(&order))),
            None => "kept".to_string(),
        };
        t.push([l.name.clone(), l.source.clone(), status]);
    }
    t
}

fn veronese(source: &str, d: u32, max_letter_degree: Option<u32>, eliminate: bool, emit: bool, r: &mut Report) -> Outcome {
    let p = load(source, r)?;
    let raw = veronese_presentation(&p, d).map_err(|e| e.to_string())?;
    let reduced = eliminate_linear(&raw);
    let shown = if eliminate { &reduced } else { &raw };
    let top = (2 * d).max(d * max_letter_degree.unwrap_or(0));
    let h = counts(&p, top)?;

    let mut summary = vec![
        ("d", d.to_string()),
        ("letters", raw.letters().len().to_string()),
        ("linear_relations", raw.linear_relations().len().to_string()),
        ("quadratic_relations_listed", raw.quadratic_relations().len().to_string()),
    ];
    r.table(letter_table(shown));
    if eliminate {
        let rank = relation_rank(&reduced, &h.values()[2 * d as usize]);
        summary.extend([
            ("eliminated", reduced.eliminated().len().to_string()),
            ("generators", rank.generators.to_string()),
            ("rank", rank.rank.to_string()),
            ("h_2d", rank.h2d.to_string()),
            ("generators_squared_minus_h_2d", rank.expected.to_string()),
        ]);
        r.check(
            "relation rank",
            rank.matches,
            format!("{} = {}^2 - {}", rank.rank, rank.generators, rank.h2d),
        );
        if let Some(name) = builtin_name(source) {
            for &(b, bd, g, rels) in REFERENCE_COUNTS {
                if b == name && bd == d {
                    let agrees = g == rank.generators && rels == rank.rank;
                    r.note(format!(
                        "reference count for V{d}({name}): {g} generators, {rels} relations; computed {} and {}{}",
                        rank.generators,
                        rank.rank,
                        if agrees { " (agrees)" } else { " (differs)" }
                    ));
                }
            }
        }
    } else {
        summary.push(("quadratic_rank", raw.quadratic_span().rank().to_string()));
        r.note("linear relations are not eliminated; pass --eliminate for the generator count and rank identity");
    }
    r.table(Table::fields("summary", summary));

    if let Some(m) = max_letter_degree {
        let q = verify_quadraticity(&reduced, &h, m).map_err(|e| e.to_string())?;
        let mut t = Table::new("quadraticity", &["letter_degree", "source_degree", "expected", "computed"]);
        for row in &q.rows {
            t.push([
                row.letter_degree.to_string(),
                row.source_degree.to_string(),
                row.expected.to_string(),
                row.computed.to_string(),
            ]);
        }
        r.table(t);
        r.check(
            "quadraticity",
            q.passed,
            format!("letter presentation completed with {} rules up to letter degree {m}", q.rules),
        );
        if !eliminate {
            r.note("the quadraticity probe always uses the presentation with linear relations eliminated");
        }
    }
    if emit {
        r.document("presentation", shown.to_presentation().to_string());
    }
    Ok(())
}

fn require_l(name: &str) -> Outcome {
    match name {
        "L" | "builtin:L" => Ok(()),
        other => Err(format!("unknown Lie algebra `{other}`; only builtin:L is available")),
    }
}

fn pbw_check(lie: &str, algebra: &str, n: u32, r: &mut Report) -> Outcome {
    require_l(lie)?;
    let p = load(algebra, r)?;
    let g = build_l(n.max(1)).map_err(|e| e.to_string())?;
    let env = counts(&p, n)?;
    let report = pbw_cross_check(&graded_dims(&g, n), &env, n as usize).map_err(|e| e.to_string())?;
    let mut t = Table::new("pbw", &["degree", "predicted", "observed"]);
    for row in &report.rows {
        t.push([row.degree.to_string(), row.predicted.to_string(), row.observed.to_string()]);
    }
    r.table(t);
    let detail = if report.passed() {
        format!("degrees 0..={n} agree")
    } else {
        format!("degrees differ: {:?}", report.mismatches)
    };
    r.check("product formula", report.passed(), detail);
    Ok(())
}

fn lie_check(name: &str, n: u32, matrix_indices: Option<u32>, r: &mut Report) -> Outcome {
    require_l(name)?;
    let g = build_l(n).map_err(|e| e.to_string())?;
    let dims = graded_dims(&g, n);
    let mut t = Table::new("dimensions", &["degree", "dim"]);
    for (k, c) in dims.points().skip(1) {
        t.push([k.to_string(), c.to_string()]);
    }
    r.table(t);

    let j = jacobi_check(&g, n).map_err(|e| e.to_string())?;
    let a = antisymmetry_check(&g);
    let mut summary = vec![
        ("basis_elements", g.basis().len().to_string()),
        ("nonzero_brackets", g.nonzero_brackets().to_string()),
        ("jacobi_triples", j.checked.to_string()),
        ("antisymmetry_pairs", a.checked.to_string()),
    ];
    for v in j.violations.iter().take(MAX_LISTED) {
        r.note(format!("Jacobi fails on ({})", v.join(", ")));
    }
    for v in a.violations.iter().take(MAX_LISTED) {
        r.note(format!("antisymmetry fails on ({})", v.join(", ")));
    }
    r.check(
        "jacobi",
        j.passed(),
        format!("{} triples, {} violations", j.checked, j.violations.len()),
    );
    r.check(
        "antisymmetry",
        a.passed(),
        format!("{} pairs, {} violations", a.checked, a.violations.len()),
    );
    if let Some(k) = matrix_indices {
        let m = matrix_model_check(k).map_err(|e| e.to_string())?;
        summary.push(("matrix_pairs", m.pairs_checked.to_string()));
        for (x, y) in m.mismatches.iter().take(MAX_LISTED) {
            r.note(format!("matrix commutator of {x} and {y} differs"));
        }
        for f in m.membership_failures.iter().take(MAX_LISTED) {
            r.note(format!("matrix of {f} leaves the model"));
        }
        r.check(
            "matrix model",
            m.passed(),
            format!("{} pairs with indices <= {k}", m.pairs_checked),
        );
    }
    r.table(Table::fields("summary", summary));
    Ok(())
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Member => "member".into(),
        Verdict::NotMember => "not_member".into(),
        Verdict::WrongDegree => "wrong_degree".into(),
        Verdict::ParseError(e) => format!("parse_error: {e}"),
    }
}

fn verify_appendix(data: &str, algebra: &str, d: u32, min_members: Option<usize>, r: &mut Report) -> Outcome {
    let listed = match builtin_name(data) {
        Some("V4U") => builtins::V4U_APPENDIX.to_string(),
        Some(other) => return Err(format!("unknown relation list `builtin:{other}`; available: builtin:V4U")),
        None => fs::read_to_string(data).map_err(|e| format!("{data}: {e}"))?,
    };
    let p = load(algebra, r)?;
    let qp = veronese_presentation(&p, d).map_err(|e| e.to_string())?;
    let report = appendix_reconcile(&qp, &listed);

    let mut t = Table::new("relations", &["name", "line", "degree", "verdict", "text"]);
    for e in &report.entries {
        t.push([
            e.name.clone(),
            e.line.to_string(),
            e.degree.map_or("-".into(), |g| g.to_string()),
            verdict_text(&e.verdict),
            e.text.clone(),
        ]);
    }
    r.table(t);
    let members = report.linear_members + report.quadratic_members;
    let total = report.entries.len();
    r.table(Table::fields(
        "summary",
        [
            ("entries", total.to_string()),
            ("linear_total", report.linear_total.to_string()),
            ("linear_members", report.linear_members.to_string()),
            ("quadratic_total", report.quadratic_total.to_string()),
            ("quadratic_members", report.quadratic_members.to_string()),
            ("members", members.to_string()),
        ],
    ));
    if !report.failures.is_empty() {
        r.note(format!("not members: {}", report.failures.join(", ")));
    }
    let required = min_members.unwrap_or(total);
    r.check(
        "membership",
        members >= required,
        format!("{members} of {total} listed relations are members, {required} required"),
    );
    Ok(())
}

fn partition(n: i64, r: &mut Report) -> Outcome {
    let p = partition_p(n).map_err(|e| e.to_string())?;
    let mut t = Table::new("partition", &["n", "p"]);
    t.push([n.to_string(), p.to_string()]);
    r.table(t);
    Ok(())
}

fn kobayashi_count(n: u64, table: bool, r: &mut Report) -> Outcome {
    let mut t = Table::new("closed_form", &["n", "count"]);
    t.push([n.to_string(), kobayashi_closed_form(n).to_string()]);
    r.table(t);
    if !table {
        return Ok(());
    }
    let n = u32::try_from(n).map_err(|_| format!("degree {n} is too large for a comparison table"))?;
    let sys = complete_to(&builtins::a(), n)?;
    let rows = closed_form_comparison(&sys, n).map_err(|e| e.to_string())?;
    let mut t = Table::new("comparison", &["degree", "automaton", "closed_form", "delta", "flagged"]);
    for row in &rows {
        t.push([
            row.degree.to_string(),
            row.automaton.to_string(),
            row.closed_form.to_string(),
            row.delta.to_string(),
            row.flagged.to_string(),
        ]);
    }
    r.table(t);
    let flagged: Vec<String> = rows.iter().filter(|x| x.flagged).map(|x| x.degree.to_string()).collect();
    if !flagged.is_empty() {
        r.note(format!(
            "closed form differs from the normal-word count at degrees {}; the normal-word count is the reference",
            flagged.join(", ")
        ));
    }
    let one = BigInt::from(1);
    let bounded = rows.iter().all(|x| x.delta <= one && x.delta >= -one.clone());
    r.check("bounded difference", bounded, "|closed_form - automaton| <= 1 at every degree");
    Ok(())
}
