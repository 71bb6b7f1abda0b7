use mlsing_core::groebner::GbStats;
use mlsing_core::pipeline::TheoremReport;
use mlsing_core::textio::RingDoc;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifacts {
    pub sing: Vec<String>,
    pub dual: Vec<String>,
    pub dsl: Vec<String>,
}

/// The `run-all` report. Contains nothing that varies between runs with the
/// same model, field, seed and engine version.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    pub field: String,
    pub seed: u64,
    pub ring: RingDoc,
    pub artifacts: Artifacts,
    pub ml_degree: u64,
    pub theorem: TheoremReport,
    pub stats: GbStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify_q: Option<bool>,
}

fn section(out: &mut String, title: &str, gens: &[String]) {
    out.push_str(title);
    out.push_str(":\n");
    for g in gens {
        out.push_str("  ");
        out.push_str(g);
        out.push('\n');
    }
}

impl Report {
    pub fn to_text(&self, theorem: &str) -> String {
        let mut s = format!(
            "model: {}\nfield: {}\nseed: {}\n",
            self.model, self.field, self.seed
        );
        section(&mut s, "singular locus", &self.artifacts.sing);
        section(&mut s, "dual variety", &self.artifacts.dual);
        section(&mut s, "data singular locus", &self.artifacts.dsl);
        s.push_str(&format!("ml degree: {}\n", self.ml_degree));
        s.push_str("theorem:\n");
        for line in theorem.lines() {
            s.push_str("  ");
            s.push_str(line);
            s.push('\n');
        }
        if let Some(v) = self.verify_q {
            s.push_str(&format!("verified over q: {v}\n"));
        }
        let st = &self.stats;
        s.push_str(&format!(
            "stats: bases {} pairs {} pruned {} zero reductions {} max terms {}\n",
            st.bases_computed,
            st.pairs_considered,
            st.pairs_pruned,
            st.reductions_to_zero,
            st.max_intermediate_terms
        ));
        s
    }
}
