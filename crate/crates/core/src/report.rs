//! End-to-end classification of the Case A types.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{enumerate_case, Case, Configuration};
use crate::group::AbelianGroup;
use crate::realizability::{realize, Provenance, RealizeError, Witness};

/// Number of Case A types that are realizable.
pub const TABLE1_ROWS: usize = 11;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    /// Case A type index, 1..=13.
    #[serde(rename = "type")]
    pub type_index: usize,
    /// Row in the table of realizable types, if any.
    pub table1_index: Option<usize>,
    pub fibers: String,
    pub configuration: Configuration,
    /// Isomorphism classes of admissible torsion subgroups.
    pub possible_torsion: Vec<AbelianGroup>,
    pub final_mw: Option<AbelianGroup>,
    pub existence_provenance: Provenance,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub rows: Vec<ReportRow>,
}

/// Runs enumeration, torsion search and realizability for every Case A type.
pub fn table1() -> Result<ClassificationReport, RealizeError> {
    let mut indices: Vec<usize> = enumerate_case(Case::A)
        .iter()
        .map(|c| c.type_index().expect("every Case A configuration is a known type"))
        .collect();
    indices.sort_unstable();
    let mut rows = Vec::with_capacity(indices.len());
    let mut next_row = 1;
    for m in indices {
        let r = realize(m)?;
        let table1_index = r.final_mw.is_some().then(|| {
            next_row += 1;
            next_row - 1
        });
        rows.push(ReportRow {
            type_index: m,
            table1_index,
            fibers: Configuration::case_a_label(m)?,
            configuration: r.configuration,
            possible_torsion: r.candidate_groups,
            final_mw: r.final_mw,
            existence_provenance: r.provenance,
            witness: r.witness,
        });
    }
    Ok(ClassificationReport { rows })
}

impl ClassificationReport {
    pub fn realized(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| r.final_mw.is_some())
    }

    /// Plain-text table, one row per type.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# | type | fiber type | MW(f) | possible MW | existence\n");
        for r in &self.rows {
            let idx = r.table1_index.map_or_else(|| "-".to_string(), |i| i.to_string());
            let mw = r.final_mw.as_ref().map_or_else(|| "excluded".to_string(), ToString::to_string);
            let possible: Vec<String> = r.possible_torsion.iter().map(ToString::to_string).collect();
            writeln!(
                out,
                "{idx} | {} | {} | {mw} | {} | {}",
                r.type_index,
                r.fibers,
                possible.join(", "),
                r.existence_provenance
            )
            .expect("writing to a String");
        }
        out
    }
}
