//! The full analysis of a semi-brace as one serializable record, with a
//! plain-text rendering. Elements appear by label, in element order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::semibrace::FiniteLeftSemibrace;
use crate::series::{analyze_series, NilpotencyProfile, SeriesBundle, SeriesReport};
use crate::subset::Subset;
use crate::subsets::{annihilator, is_e_ideal, socle, sumset, zoc};
use crate::ybe::{check_braid, properties, restrict_to_e, solution_of, Period, SolutionProperties};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub order: usize,
    pub g_order: usize,
    pub e_order: usize,
    #[serde(rename = "E_is_ideal")]
    pub e_is_ideal: bool,
    pub skew_brace: bool,
    pub g: Vec<String>,
    pub e: Vec<String>,
}

/// `b∘e∘b⁻ ∉ E`, by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledConjugation {
    pub b: String,
    pub e: String,
    pub conjugate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Socles {
    pub soc: Vec<String>,
    /// Only defined when `E` is an ideal.
    pub zoc: Option<Vec<String>>,
    pub ann: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesTable {
    pub start_index: usize,
    pub stabilized_at: usize,
    pub terms: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YbeRecord {
    pub braid_ok: bool,
    pub braid_witness: Option<[String; 3]>,
    pub s_idempotent: bool,
    pub properties: SolutionProperties,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub summary: Summary,
    pub e_ideal_witness: Option<LabeledConjugation>,
    pub socles: Socles,
    pub profile: NilpotencyProfile,
    pub series: BTreeMap<String, SeriesTable>,
    pub ybe: YbeRecord,
    pub warnings: Vec<String>,
}

pub fn labels_of(b: &FiniteLeftSemibrace, s: &Subset) -> Vec<String> {
    s.iter().map(|a| b.label(a).to_string()).collect()
}

fn table(b: &FiniteLeftSemibrace, s: &SeriesReport) -> SeriesTable {
    SeriesTable {
        start_index: s.start_index,
        stabilized_at: s.stabilized_at,
        terms: s.terms.iter().map(|t| labels_of(b, t)).collect(),
    }
}

/// Runs every module on `b`.
pub fn analyze(b: &FiniteLeftSemibrace) -> Result<AnalysisReport> {
    let e_report = is_e_ideal(b)?;
    let bundle = analyze_series(b)?;
    let mut warnings = Vec::new();

    let zoc_set = if e_report.is_ideal {
        Some(labels_of(b, &zoc(b)?))
    } else {
        warnings.push("E is not an ideal: Zoc(B) and the Zoc series are undefined".to_string());
        None
    };
    warnings.extend(zoc_soc_mismatch(b, &bundle));

    let r = solution_of(b);
    let braid = check_braid(&r);
    let s_idempotent = restrict_to_e(b, &r).is_ok();
    let props = properties(&r);
    if props.period == Period::Undetermined {
        warnings.push("period of r undetermined within the iteration cap".to_string());
    }

    let mut series = BTreeMap::new();
    for s in [&bundle.right, &bundle.left, &bundle.strong, &bundle.soc, &bundle.ann, &bundle.upper_central]
        .into_iter()
        .chain(bundle.zoc.as_ref())
    {
        series.insert(s.kind.name().to_string(), table(b, s));
    }

    Ok(AnalysisReport {
        summary: Summary {
            order: b.order(),
            g_order: b.group_elems().len(),
            e_order: b.idempotents().len(),
            e_is_ideal: e_report.is_ideal,
            skew_brace: b.is_skew_brace(),
            g: labels_of(b, b.group_elems()),
            e: labels_of(b, b.idempotents()),
        },
        e_ideal_witness: e_report.witness.map(|w| LabeledConjugation {
            b: b.label(w.b).to_string(),
            e: b.label(w.e).to_string(),
            conjugate: b.label(w.conjugate).to_string(),
        }),
        socles: Socles {
            soc: labels_of(b, &socle(b)?),
            zoc: zoc_set,
            ann: labels_of(b, &annihilator(b)?),
        },
        profile: bundle.profile.clone(),
        series,
        ybe: YbeRecord {
            braid_ok: braid.holds,
            braid_witness: braid.witness.map(|w| w.map(|x| b.label(x).to_string())),
            s_idempotent,
            properties: props,
        },
        warnings,
    })
}

/// Indices `k` where `Zoc_k` and `Soc_k + E` differ.
pub fn zoc_soc_mismatch(b: &FiniteLeftSemibrace, bundle: &SeriesBundle) -> Option<String> {
    let zoc = bundle.zoc.as_ref()?;
    let last = zoc.last_index().max(bundle.soc.last_index());
    let bad: Vec<String> = (0..=last)
        .filter(|&k| *zoc.term(k) != sumset(b, bundle.soc.term(k), b.idempotents()))
        .map(|k| k.to_string())
        .collect();
    (!bad.is_empty()).then(|| format!("Zoc_k differs from Soc_k + E at k = {}", bad.join(", ")))
}

impl AnalysisReport {
    /// Pretty JSON with a trailing newline; field and map order are fixed.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let set = |v: &[String]| format!("{{{}}}", v.join(", "));
        let yes = |x: bool| if x { "yes" } else { "no" };
        let s = &self.summary;
        let p = &self.profile;
        let mut out = String::new();
        let _ = writeln!(out, "|B| = {}, |G| = {}, |E| = {}", s.order, s.g_order, s.e_order);
        let _ = writeln!(out, "G = {}", set(&s.g));
        let _ = writeln!(out, "E = {}", set(&s.e));
        let _ = writeln!(out, "skew brace: {}", yes(s.skew_brace));
        let _ = writeln!(out, "E is an ideal: {}", yes(s.e_is_ideal));
        if let Some(w) = &self.e_ideal_witness {
            let _ = writeln!(out, "  witness: {} ∘ {} ∘ {}⁻ = {} ∉ E", w.b, w.e, w.b, w.conjugate);
        }
        let _ = writeln!(out, "Soc(B) = {}", set(&self.socles.soc));
        match &self.socles.zoc {
            Some(z) => {
                let _ = writeln!(out, "Zoc(B) = {}", set(z));
            }
            None => {
                let _ = writeln!(out, "Zoc(B) undefined");
            }
        }
        let _ = writeln!(out, "Ann(B) = {}", set(&self.socles.ann));
        for (name, flag) in [
            ("right nilpotent", p.right_nilpotent),
            ("left nilpotent", p.left_nilpotent),
            ("strongly nilpotent", p.strongly_nilpotent),
            ("nilpotent", p.nilpotent),
            ("right nil", p.right_nil),
            ("left nil", p.left_nil),
            ("has z-series", p.has_z_series),
            ("(B,∘) nilpotent", p.mul_group_nilpotent),
            ("(G,+) nilpotent", p.add_group_g_nilpotent),
        ] {
            let _ = writeln!(out, "{name}: {}", yes(flag));
        }
        for (name, t) in &self.series {
            let _ = writeln!(out, "series {name} (stabilizes at {}):", t.stabilized_at);
            for (i, term) in t.terms.iter().enumerate() {
                let _ = writeln!(out, "  [{}] {}", t.start_index + i, set(term));
            }
        }
        let y = &self.ybe;
        let _ = writeln!(out, "braid relation: {}", yes(y.braid_ok));
        let _ = writeln!(out, "s idempotent: {}", yes(y.s_idempotent));
        let _ = writeln!(
            out,
            "r: bijective {}, involutive {}, idempotent {}, period {}",
            yes(y.properties.bijective),
            yes(y.properties.involutive),
            yes(y.properties.idempotent),
            y.properties.period
        );
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{phi_sym3, sd12, trivial_semibrace};
    use crate::group::catalog_group;

    #[test]
    fn phi_report() {
        let r = analyze(&phi_sym3()).unwrap();
        assert_eq!((r.summary.g_order, r.summary.e_order), (2, 3));
        assert!(r.summary.e_is_ideal && r.profile.right_nilpotent && !r.profile.mul_group_nilpotent);
        assert_eq!(r.socles.soc, vec!["id"]);
        assert_eq!(r.socles.zoc, Some(vec!["id".to_string(), "(123)".into(), "(132)".into()]));
        assert!(r.ybe.braid_ok && r.ybe.s_idempotent);
        assert_eq!(r.warnings, vec!["Zoc_k differs from Soc_k + E at k = 2, 3"]);
        assert_eq!(r.to_json(), analyze(&phi_sym3()).unwrap().to_json());
    }

    #[test]
    fn sd12_report_names_the_witness() {
        let r = analyze(&sd12()).unwrap();
        assert!(!r.summary.e_is_ideal);
        assert_eq!(r.e_ideal_witness.as_ref().unwrap().conjugate, "((132),1)");
        assert!(r.socles.zoc.is_none());
        assert!(r.to_text().contains("E is an ideal: no"));
    }

    #[test]
    fn trivial_report_is_all_nilpotent() {
        let r = analyze(&trivial_semibrace(&catalog_group("C2").unwrap())).unwrap();
        let p = &r.profile;
        assert!(p.right_nilpotent && p.left_nilpotent && p.strongly_nilpotent && p.nilpotent);
        assert!(r.warnings.is_empty());
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["summary"]["E_is_ideal"], true);
        assert_eq!(json["ybe"]["properties"]["period"], serde_json::json!({"exact": 2}));
    }
}
