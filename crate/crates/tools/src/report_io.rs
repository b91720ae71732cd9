// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Rendering of per-community reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;
use std::str::FromStr;

use litnet_core::{CommunityReport, RankedNode};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Csv,
    Json,
}

impl ReportFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            ReportFormat::Markdown => "md",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::UnsupportedFormat(other.into())),
        }
    }
}

fn ranked_list(nodes: &[RankedNode]) -> String {
    nodes
        .iter()
        .map(|n| format!("{} ({})", n.display, n.degree))
        .collect::<Vec<_>>()
        .join(", ")
}

fn community_name(r: &CommunityReport) -> String {
    match &r.label {
        Some(label) => format!("C{} «{}»", r.community_id, label),
        None => format!("C{}", r.community_id),
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn render_report(reports: &[CommunityReport], format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Markdown => {
            let mut out = String::new();
            out.push_str(
                "| Community | Size | Diameter | Average Clustering | Density | \
                 Top Nodes by Degree Centrality | Top Nodes by Weighted Degree |\n",
            );
            out.push_str("|---|---:|---:|---:|---:|---|---|\n");
            for r in reports {
                let diameter = if r.disconnected {
                    format!("{}*", r.diameter)
                } else {
                    r.diameter.to_string()
                };
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    md_cell(&community_name(r)),
                    r.size,
                    diameter,
                    r.avg_clustering,
                    r.density,
                    md_cell(&ranked_list(&r.top_nodes)),
                    md_cell(&ranked_list(&r.top_nodes_weighted)),
                );
            }
            if reports.iter().any(|r| r.disconnected) {
                out.push_str("\n\\* community is disconnected; diameter of its largest component\n");
            }
            Ok(out.into_bytes())
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "community_id",
                "label",
                "size",
                "diameter",
                "avg_clustering",
                "density",
                "disconnected",
                "top_nodes",
                "top_nodes_weighted",
            ])?;
            for r in reports {
                w.write_record([
                    r.community_id.to_string().as_str(),
                    r.label.as_deref().unwrap_or(""),
                    &r.size.to_string(),
                    &r.diameter.to_string(),
                    &r.avg_clustering.to_string(),
                    &r.density.to_string(),
                    &r.disconnected.to_string(),
                    &ranked_list(&r.top_nodes),
                    &ranked_list(&r.top_nodes_weighted),
                ])?;
            }
            w.into_inner()
                .map_err(|e| Error::Stream(e.into_error()))
        }
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(reports)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

pub fn parse_report_json(bytes: &[u8]) -> Result<Vec<CommunityReport>> {
    Ok(serde_json::from_slice(bytes)?)
}

/// Reads a `community_id,label` file.
pub fn load_labels<R: Read>(source: R) -> Result<BTreeMap<usize, String>> {
    let mut reader = csv::Reader::from_reader(source);
    if reader.headers()?.iter().ne(["community_id", "label"]) {
        return Err(Error::Schema("labels header must be `community_id,label`".into()));
    }
    let mut labels = BTreeMap::new();
    for record in reader.records() {
        let record = record?;
        let id = record[0]
            .parse()
            .map_err(|_| Error::Schema(format!("bad community id `{}`", &record[0])))?;
        labels.insert(id, record[1].to_string());
    }
    Ok(labels)
}
