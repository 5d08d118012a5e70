//! Evidence for global insolubility: a bounded-height search and a
//! replayable transcript of the congruence argument modulo `N`.

pub mod height;
pub mod transcript;

use serde::{Deserialize, Serialize};

pub use height::{check_roots, height_search, HeightReport};
pub use transcript::{
    audit_violations, contradiction_sets, norm_residue_audit, obstruction_transcript,
    replay_transcript, ContradictionRule, ObstructionTranscript, ResidueEntry, TranscriptStep,
};

/// Height search together with the transcript (absent for forms outside the
/// families).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalReport {
    pub height_bound: u64,
    pub tuples_searched: u64,
    pub roots_found: Vec<Vec<i64>>,
    pub transcript: Option<ObstructionTranscript>,
}

impl GlobalReport {
    pub fn new(search: HeightReport, transcript: Option<ObstructionTranscript>) -> Self {
        GlobalReport {
            height_bound: search.height_bound,
            tuples_searched: search.tuples_searched,
            roots_found: search.roots_found,
            transcript,
        }
    }
}
