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

//! Parallel distance metrics and metrics report serialization.

use std::io::Write;

use litnet_core::graph::Components;
use litnet_core::metrics::{
    degree_centrality, source_tally, BfsScratch, DistanceProfile, DistanceTally,
};
use litnet_core::{connected_components, CoGraph, LowDegreeClustering, MetricsReport, Partition};
use rayon::prelude::*;

use crate::error::Result;

/// All-sources BFS spread over the rayon pool.
///
/// Per-source distance histograms are merged by integer addition, so the
/// result is bitwise identical to the sequential computation for any thread
/// count or work split.
pub fn par_distance_profile(graph: &CoGraph, components: &Components) -> DistanceProfile {
    let n = graph.node_count();
    let (whole, largest) = (0..n)
        .into_par_iter()
        .map_init(
            || BfsScratch::new(n),
            |scratch, s| (s, source_tally(graph, s, scratch)),
        )
        .fold(
            || (DistanceTally::default(), DistanceTally::default()),
            |(mut whole, mut largest), (s, t)| {
                if components.in_largest(s) {
                    largest.merge(&t);
                }
                whole.merge(&t);
                (whole, largest)
            },
        )
        .reduce(
            || (DistanceTally::default(), DistanceTally::default()),
            |(mut wa, mut la), (wb, lb)| {
                wa.merge(&wb);
                la.merge(&lb);
                (wa, la)
            },
        );
    DistanceProfile::from_tallies(n, &whole, &largest)
}

/// [`MetricsReport::compute`] with the distance pass run in parallel.
pub fn compute_report(
    graph: &CoGraph,
    partition: Option<&Partition>,
    low_degree: LowDegreeClustering,
) -> Result<MetricsReport> {
    let components = connected_components(graph);
    let distances = par_distance_profile(graph, &components);
    Ok(MetricsReport::assemble(
        graph,
        &components,
        distances,
        partition,
        low_degree,
    )?)
}

pub fn report_json(report: &MetricsReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// Two-column `parameter,value` table in the order of the published
/// whole-network parameter table. Absent partition scores are left empty.
pub fn write_report_csv<W: Write>(sink: W, report: &MetricsReport) -> Result<()> {
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    let rows = [
        ("Number of Nodes", report.n.to_string()),
        ("Number of Edges", report.m.to_string()),
        ("Connected Components", report.components.to_string()),
        ("Average Clustering", report.avg_clustering.to_string()),
        ("Diameter", report.diameter.to_string()),
        ("Density", report.density.to_string()),
        ("Coverage", opt(report.coverage)),
        ("Performance", opt(report.performance)),
        ("Average Path Length", report.avg_path_length.to_string()),
        ("Global Efficiency", report.global_efficiency.to_string()),
    ];
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["parameter", "value"])?;
    for (name, value) in rows {
        w.write_record([name, value.as_str()])?;
    }
    w.flush()?;
    Ok(())
}

/// `key,display,degree,normalized,weighted_degree` for every node.
pub fn write_degrees<W: Write>(sink: W, graph: &CoGraph) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["key", "display", "degree", "normalized", "weighted_degree"])?;
    for (node, d) in graph.nodes().iter().zip(degree_centrality(graph)) {
        w.write_record([
            node.person.key.as_str(),
            &node.person.display,
            &d.degree.to_string(),
            &d.normalized.to_string(),
            &d.weighted_degree.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
