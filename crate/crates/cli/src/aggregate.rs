use std::collections::BTreeMap;

use serde::Serialize;

/// Cross-analysis mean rankscore for one approach.
#[derive(Debug, Clone, Serialize)]
pub struct ApproachAggregate {
    pub approach: String,
    pub family: String,
    /// Unweighted arithmetic mean over the analyses the approach appears in;
    /// always within [0, 1].
    pub mean_rankscore: f64,
    pub analyses_counted: usize,
}

/// Best variant within one approach family.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyBest {
    pub family: String,
    pub variants: Vec<String>,
    pub best_variant: String,
    pub best_mean_rankscore: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregateReport {
    pub approaches: Vec<ApproachAggregate>,
    pub families: Vec<FamilyBest>,
    pub warnings: Vec<String>,
}

/// Family naming convention: `Family-VARIANT`, split at the last hyphen; a
/// name without a hyphen is its own family. An explicit mapping overrides
/// the convention per approach.
pub fn family_of<'a>(
    approach: &'a str,
    overrides: Option<&'a BTreeMap<String, String>>,
) -> &'a str {
    if let Some(map) = overrides {
        if let Some(f) = map.get(approach) {
            return f;
        }
    }
    match approach.rsplit_once('-') {
        Some((family, _variant)) if !family.is_empty() => family,
        _ => approach,
    }
}

/// Flattens per-analysis rankscores into per-approach means and per-family
/// best variants.
///
/// `roster` is every approach declared in any input (including ones later
/// dropped by a missing-data policy); an approach that ended up in zero
/// analyses is excluded with a warning. Ties for best variant break
/// lexicographically.
pub fn aggregate_rankscores(
    roster: &[String],
    per_analysis: &[BTreeMap<String, f64>],
    family_overrides: Option<&BTreeMap<String, String>>,
) -> AggregateReport {
    let mut warnings = Vec::new();
    let mut approaches: Vec<ApproachAggregate> = Vec::new();

    let mut sorted_roster: Vec<&String> = roster.iter().collect();
    sorted_roster.sort();
    sorted_roster.dedup();

    for name in sorted_roster {
        let scores: Vec<f64> = per_analysis
            .iter()
            .filter_map(|scores| scores.get(name))
            .copied()
            .collect();
        if scores.is_empty() {
            warnings.push(format!(
                "approach {name} was dropped from every analysis and is excluded from the aggregate"
            ));
            continue;
        }
        approaches.push(ApproachAggregate {
            approach: name.clone(),
            family: family_of(name, family_overrides).to_string(),
            mean_rankscore: scores.iter().sum::<f64>() / scores.len() as f64,
            analyses_counted: scores.len(),
        });
    }

    let mut families: BTreeMap<String, Vec<&ApproachAggregate>> = BTreeMap::new();
    for a in &approaches {
        families.entry(a.family.clone()).or_default().push(a);
    }
    let families = families
        .into_iter()
        .map(|(family, members)| {
            // Highest mean rankscore wins; the lexicographically smallest
            // name breaks ties (members are already name-sorted).
            let best = members
                .iter()
                .max_by(|a, b| {
                    a.mean_rankscore
                        .partial_cmp(&b.mean_rankscore)
                        .unwrap()
                        .then_with(|| b.approach.cmp(&a.approach))
                })
                .expect("families are built from existing members");
            FamilyBest {
                family,
                variants: members.iter().map(|m| m.approach.clone()).collect(),
                best_variant: best.approach.clone(),
                best_mean_rankscore: best.mean_rankscore,
            }
        })
        .collect();

    AggregateReport {
        approaches,
        families,
        warnings,
    }
}
