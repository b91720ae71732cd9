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

//! Per-community parameter reports.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::{connected_components, CoGraph};
use crate::metrics::{average_clustering, density, distance_profile_with, top_by_degree, DegreeKind};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RankedNode {
    pub key: String,
    pub display: String,
    pub degree: u64,
}

/// Structural parameters of one community.
///
/// Size, diameter, clustering and density describe the induced subgraph
/// (diameter on its largest component, with `disconnected` set when there
/// is more than one). Top-node degrees are measured on the host graph.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CommunityReport {
    pub community_id: usize,
    pub label: Option<String>,
    pub size: usize,
    pub diameter: usize,
    pub avg_clustering: f64,
    pub density: f64,
    pub disconnected: bool,
    /// Ranked by raw degree.
    pub top_nodes: Vec<RankedNode>,
    /// Ranked by weighted degree (shared-event count).
    pub top_nodes_weighted: Vec<RankedNode>,
}

pub fn community_params(
    graph: &CoGraph,
    partition: &Partition,
    top_n: usize,
) -> Result<Vec<CommunityReport>> {
    partition.check(graph)?;
    if top_n == 0 {
        return Err(Error::InvalidTopN);
    }
    let ranked = |members: &[usize], kind| {
        top_by_degree(graph, members, top_n, kind)
            .into_iter()
            .map(|(i, degree)| RankedNode {
                key: graph.nodes()[i].person.key.clone(),
                display: graph.nodes()[i].person.display.clone(),
                degree,
            })
            .collect()
    };
    let mut reports: Vec<(usize, CommunityReport)> = partition
        .communities()
        .into_iter()
        .enumerate()
        .filter(|(_, members)| !members.is_empty())
        .map(|(id, members)| {
            let sub = graph.induced(&members);
            let components = connected_components(&sub);
            let distances = distance_profile_with(&sub, &components);
            let report = CommunityReport {
                community_id: id,
                label: None,
                size: members.len(),
                diameter: distances.diameter,
                avg_clustering: average_clustering(&sub),
                density: density(&sub),
                disconnected: components.count > 1,
                top_nodes: ranked(&members, DegreeKind::Raw),
                top_nodes_weighted: ranked(&members, DegreeKind::Weighted),
            };
            (members[0], report)
        })
        .collect();
    reports.sort_by(|a, b| b.1.size.cmp(&a.1.size).then(a.0.cmp(&b.0)));
    Ok(reports.into_iter().map(|(_, r)| r).collect())
}

/// Attaches user-supplied labels by community id.
pub fn apply_labels(reports: &mut [CommunityReport], labels: &BTreeMap<usize, String>) {
    for r in reports {
        r.label = labels.get(&r.community_id).cloned();
    }
}
