use serde::Serialize;

use crate::aggregate::AggregateReport;
use crate::analysis::{AnalysisReport, TaggedFinding};
use crate::config::AnalysisConfig;

/// The complete run output. JSON serialization is the schema of record
/// (full-precision numbers, stable field names); CSV and Markdown are
/// human-readable views rounded to 6 significant digits.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: AnalysisConfig,
    pub analyses: Vec<AnalysisReport>,
    pub aggregate: AggregateReport,
    pub findings: Vec<TaggedFinding>,
}

pub const SCHEMA_VERSION: u32 = 1;

pub fn to_json(report: &Report) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(report).expect("report serialization cannot fail");
    bytes.push(b'\n');
    bytes
}

/// 6 significant digits, trailing zeros trimmed; magnitudes outside a
/// readable window fall back to scientific notation.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..9).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

/// One flat table: per-analysis rows, aggregate rows, family rows.
pub fn to_csv(report: &Report) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "section",
        "metric",
        "family",
        "approach",
        "mean_value",
        "mean_rank",
        "group_index",
        "rankscore",
        "legacy_bucket",
        "legacy_rankscore",
        "mean_rankscore",
        "analyses_counted",
        "best_variant",
    ])
    .expect("write to Vec cannot fail");

    for a in &report.analyses {
        for (i, name) in a.approaches.iter().enumerate() {
            let (group, score) = match &a.corrected {
                Some(c) => (c.group_index[i].to_string(), fmt_sig(c.rankscores[i])),
                None => (String::new(), String::new()),
            };
            let (bucket, legacy_score) = match &a.legacy {
                Some(l) => (l.three_rank[i].to_string(), fmt_sig(l.rankscores[i])),
                None => (String::new(), String::new()),
            };
            w.write_record([
                "analysis",
                &a.metric,
                "",
                name,
                &fmt_opt(a.mean_values.get(i).copied()),
                &fmt_opt(a.mean_ranks.get(i).copied()),
                &group,
                &score,
                &bucket,
                &legacy_score,
                "",
                "",
                "",
            ])
            .expect("write to Vec cannot fail");
        }
    }
    for a in &report.aggregate.approaches {
        w.write_record([
            "aggregate",
            "",
            &a.family,
            &a.approach,
            "",
            "",
            "",
            "",
            "",
            "",
            &fmt_sig(a.mean_rankscore),
            &a.analyses_counted.to_string(),
            "",
        ])
        .expect("write to Vec cannot fail");
    }
    for f in &report.aggregate.families {
        w.write_record([
            "family",
            "",
            &f.family,
            "",
            "",
            "",
            "",
            "",
            "",
            "",
            &fmt_sig(f.best_mean_rankscore),
            "",
            &f.best_variant,
        ])
        .expect("write to Vec cannot fail");
    }
    w.into_inner().expect("flush to Vec cannot fail")
}

pub fn to_markdown(report: &Report) -> Vec<u8> {
    use std::fmt::Write;
    let mut md = String::new();
    let _ = writeln!(md, "# Ranking report\n");
    let c = &report.config;
    let _ = writeln!(
        md,
        "alpha = {}, direction = {:?}, mode = {:?}, missing policy = {:?}\n",
        fmt_sig(c.alpha),
        c.direction,
        c.mode,
        c.missing_policy
    );

    for a in &report.analyses {
        let _ = writeln!(md, "## {} ({}; k = {}, N = {})\n", a.metric, a.input, a.k, a.n_datasets);
        let _ = writeln!(
            md,
            "Friedman chi-square = {}, df = {}, p = {} ({}significant at alpha = {}); q_alpha = {}, cd = {}\n",
            fmt_sig(a.friedman.statistic),
            a.friedman.df,
            fmt_sig(a.friedman.p_value.value()),
            if a.friedman.significant { "" } else { "not " },
            fmt_sig(a.alpha),
            fmt_sig(a.q_alpha),
            fmt_sig(a.cd),
        );

        let _ = writeln!(md, "| approach | mean value | mean rank | group | rankscore | legacy bucket |");
        let _ = writeln!(md, "|---|---|---|---|---|---|");
        // Best first: by the corrected order when present, else by mean rank.
        let order: Vec<usize> = match &a.corrected {
            Some(c) => c.order.clone(),
            None => {
                let mut idx: Vec<usize> = (0..a.k).collect();
                idx.sort_by(|&x, &y| a.mean_ranks[y].partial_cmp(&a.mean_ranks[x]).unwrap());
                idx
            }
        };
        for i in order {
            let group = a
                .corrected
                .as_ref()
                .map(|c| c.group_index[i].to_string())
                .unwrap_or_default();
            let score = a
                .corrected
                .as_ref()
                .map(|c| fmt_sig(c.rankscores[i]))
                .unwrap_or_default();
            let bucket = a
                .legacy
                .as_ref()
                .map(|l| l.three_rank[i].to_string())
                .unwrap_or_default();
            let _ = writeln!(
                md,
                "| {} | {} | {} | {} | {} | {} |",
                a.approaches[i],
                fmt_sig(a.mean_values[i]),
                fmt_sig(a.mean_ranks[i]),
                group,
                score,
                bucket,
            );
        }
        let _ = writeln!(md);

        if let Some(cmp) = &a.mode_comparison {
            let _ = writeln!(
                md,
                "Legacy buckets: {}; corrected groups: {}; approaches with changed peer set: {}\n",
                cmp.group_count_legacy,
                cmp.group_count_corrected,
                if cmp.approaches_with_changed_bucket.is_empty() {
                    "none".to_string()
                } else {
                    cmp.approaches_with_changed_bucket.join(", ")
                }
            );
        }
        for wmsg in &a.warnings {
            let _ = writeln!(md, "> warning: {wmsg}\n");
        }
    }

    let _ = writeln!(md, "## Aggregate\n");
    let _ = writeln!(md, "| approach | family | mean rankscore | analyses |");
    let _ = writeln!(md, "|---|---|---|---|");
    for a in &report.aggregate.approaches {
        let _ = writeln!(
            md,
            "| {} | {} | {} | {} |",
            a.approach,
            a.family,
            fmt_sig(a.mean_rankscore),
            a.analyses_counted
        );
    }
    let _ = writeln!(md);
    let _ = writeln!(md, "| family | best variant | best mean rankscore |");
    let _ = writeln!(md, "|---|---|---|");
    for f in &report.aggregate.families {
        let _ = writeln!(
            md,
            "| {} | {} | {} |",
            f.family,
            f.best_variant,
            fmt_sig(f.best_mean_rankscore)
        );
    }
    let _ = writeln!(md);
    for wmsg in &report.aggregate.warnings {
        let _ = writeln!(md, "> warning: {wmsg}\n");
    }

    if !report.findings.is_empty() {
        let _ = writeln!(md, "## Inconsistency findings\n");
        for f in &report.findings {
            let _ = writeln!(
                md,
                "- [{} / {}] {} has the better mean ({} ahead) but a rankscore {} below {}{}",
                f.metric,
                f.mode,
                f.finding.better_mean_approach,
                fmt_sig(f.finding.mean_delta),
                fmt_sig(-f.finding.rankscore_delta),
                f.finding.worse_mean_approach,
                if f.finding.dominated {
                    " (dominated: wins on every dataset)"
                } else {
                    ""
                }
            );
        }
        let _ = writeln!(md);
    }

    md.into_bytes()
}
