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

//! Whole-graph structural metrics and partition quality scores.
//!
//! Every metric is unweighted: edge weights are ignored.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::community::Partition;
use crate::error::Result;
use crate::graph::{connected_components, CoGraph, Components};

/// `2m / (n (n - 1))`, or 0 below two nodes.
pub fn density(graph: &CoGraph) -> f64 {
    let n = graph.node_count() as f64;
    if graph.node_count() < 2 {
        return 0.0;
    }
    2.0 * graph.edge_count() as f64 / (n * (n - 1.0))
}

/// How nodes of degree below two enter the clustering mean.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LowDegreeClustering {
    /// Counted with coefficient 0.
    #[default]
    Zero,
    /// Left out of the mean.
    Exclude,
}

/// Number of triangles through every node.
pub fn triangles(graph: &CoGraph) -> Vec<u64> {
    let n = graph.node_count();
    let mut mark = vec![false; n];
    let mut out = vec![0u64; n];
    for i in 0..n {
        for &(j, _) in graph.neighbors(i) {
            mark[j] = true;
        }
        let mut twice = 0u64;
        for &(j, _) in graph.neighbors(i) {
            twice += graph.neighbors(j).iter().filter(|&&(k, _)| mark[k]).count() as u64;
        }
        for &(j, _) in graph.neighbors(i) {
            mark[j] = false;
        }
        out[i] = twice / 2;
    }
    out
}

/// Local clustering coefficient `2 T_i / (k_i (k_i - 1))`; 0 when `k_i < 2`.
pub fn local_clustering(graph: &CoGraph) -> Vec<f64> {
    triangles(graph)
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let k = graph.degree(i) as f64;
            if graph.degree(i) < 2 {
                0.0
            } else {
                2.0 * t as f64 / (k * (k - 1.0))
            }
        })
        .collect()
}

pub fn average_clustering(graph: &CoGraph) -> f64 {
    average_clustering_with(graph, LowDegreeClustering::Zero)
}

pub fn average_clustering_with(graph: &CoGraph, low_degree: LowDegreeClustering) -> f64 {
    let local = local_clustering(graph);
    let mut sum = 0.0;
    let mut count = 0usize;
    for (i, c) in local.into_iter().enumerate() {
        if low_degree == LowDegreeClustering::Exclude && graph.degree(i) < 2 {
            continue;
        }
        sum += c;
        count += 1;
    }
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

/// Histogram of BFS distances: `counts[d]` is the number of ordered pairs at
/// distance `d >= 1`. Merging tallies is integer addition, so any grouping or
/// order of sources gives the same result.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistanceTally {
    pub counts: Vec<u64>,
}

impl DistanceTally {
    pub fn merge(&mut self, other: &DistanceTally) {
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn max_distance(&self) -> usize {
        self.counts.iter().rposition(|&c| c > 0).unwrap_or(0)
    }

    pub fn pairs(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn distance_sum(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| d as u64 * c)
            .sum()
    }

    /// `sum_d counts[d] / d`, accumulated by increasing distance.
    pub fn inverse_distance_sum(&self) -> f64 {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, &c)| c as f64 / d as f64)
            .sum()
    }
}

/// Reusable BFS buffers.
#[derive(Debug, Clone)]
pub struct BfsScratch {
    dist: Vec<u32>,
    queue: VecDeque<usize>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        Self {
            dist: vec![u32::MAX; n],
            queue: VecDeque::new(),
        }
    }
}

/// Distances from `source` to every reachable node.
pub fn source_tally(graph: &CoGraph, source: usize, scratch: &mut BfsScratch) -> DistanceTally {
    let dist = &mut scratch.dist;
    if dist.len() != graph.node_count() {
        *dist = vec![u32::MAX; graph.node_count()];
    }
    let mut tally = DistanceTally::default();
    let mut visited = Vec::new();
    dist[source] = 0;
    visited.push(source);
    scratch.queue.push_back(source);
    while let Some(u) = scratch.queue.pop_front() {
        let du = dist[u];
        for &(v, _) in graph.neighbors(u) {
            if dist[v] == u32::MAX {
                let dv = du + 1;
                dist[v] = dv;
                visited.push(v);
                scratch.queue.push_back(v);
                let d = dv as usize;
                if tally.counts.len() <= d {
                    tally.counts.resize(d + 1, 0);
                }
                tally.counts[d] += 1;
            }
        }
    }
    for v in visited {
        dist[v] = u32::MAX;
    }
    tally
}

/// Diameter, average path length and global efficiency.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DistanceProfile {
    /// Over the largest connected component. When several components tie
    /// for the largest size, over all of them.
    pub diameter: usize,
    /// Over ordered pairs inside the largest component(s); 0 when they are
    /// single nodes.
    pub avg_path_length: f64,
    /// Over all ordered pairs of the whole graph, unreachable pairs counting 0.
    pub global_efficiency: f64,
}

impl DistanceProfile {
    /// Combines tallies over all sources (`whole`) and over the sources
    /// inside the largest component(s) (`largest`).
    pub fn from_tallies(n: usize, whole: &DistanceTally, largest: &DistanceTally) -> Self {
        let pairs = largest.pairs();
        let avg_path_length = if pairs == 0 {
            0.0
        } else {
            largest.distance_sum() as f64 / pairs as f64
        };
        let global_efficiency = if n < 2 {
            0.0
        } else {
            whole.inverse_distance_sum() / (n as f64 * (n as f64 - 1.0))
        };
        Self {
            diameter: largest.max_distance(),
            avg_path_length,
            global_efficiency,
        }
    }
}

/// All-sources BFS, sources visited in index order.
pub fn distance_profile(graph: &CoGraph) -> DistanceProfile {
    distance_profile_with(graph, &connected_components(graph))
}

pub fn distance_profile_with(graph: &CoGraph, components: &Components) -> DistanceProfile {
    let mut scratch = BfsScratch::new(graph.node_count());
    let mut whole = DistanceTally::default();
    let mut largest = DistanceTally::default();
    for s in 0..graph.node_count() {
        let t = source_tally(graph, s, &mut scratch);
        if components.in_largest(s) {
            largest.merge(&t);
        }
        whole.merge(&t);
    }
    DistanceProfile::from_tallies(graph.node_count(), &whole, &largest)
}

/// Degree of one node in three forms.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DegreeCentrality {
    pub degree: usize,
    /// `degree / (n - 1)`, 0 for a single node.
    pub normalized: f64,
    pub weighted_degree: u64,
}

pub fn degree_centrality(graph: &CoGraph) -> Vec<DegreeCentrality> {
    let n = graph.node_count();
    (0..n)
        .map(|i| DegreeCentrality {
            degree: graph.degree(i),
            normalized: if n < 2 {
                0.0
            } else {
                graph.degree(i) as f64 / (n - 1) as f64
            },
            weighted_degree: graph.weighted_degree(i),
        })
        .collect()
}

/// Which degree ranks nodes in top-N listings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum DegreeKind {
    Raw,
    Weighted,
}

/// The `top_n` of `candidates` by degree, descending, ties by ascending key
/// (node indices follow key order).
pub fn top_by_degree(
    graph: &CoGraph,
    candidates: &[usize],
    top_n: usize,
    kind: DegreeKind,
) -> Vec<(usize, u64)> {
    let mut ranked: Vec<(usize, u64)> = candidates
        .iter()
        .map(|&i| {
            let value = match kind {
                DegreeKind::Raw => graph.degree(i) as u64,
                DegreeKind::Weighted => graph.weighted_degree(i),
            };
            (i, value)
        })
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked.truncate(top_n);
    ranked
}

fn intra_edges(graph: &CoGraph, partition: &Partition) -> usize {
    graph
        .edges()
        .iter()
        .filter(|e| partition.community_of(e.source) == partition.community_of(e.target))
        .count()
}

/// Fraction of edges inside communities; 0 without edges.
pub fn coverage(graph: &CoGraph, partition: &Partition) -> Result<f64> {
    partition.check(graph)?;
    if graph.edge_count() == 0 {
        return Ok(0.0);
    }
    Ok(intra_edges(graph, partition) as f64 / graph.edge_count() as f64)
}

/// Intra-community edges plus inter-community non-adjacent pairs, over all
/// unordered pairs; 1 below two nodes.
pub fn performance(graph: &CoGraph, partition: &Partition) -> Result<f64> {
    partition.check(graph)?;
    let n = graph.node_count() as u64;
    if n < 2 {
        return Ok(1.0);
    }
    let pairs = n * (n - 1) / 2;
    let intra_pairs: u64 = partition
        .sizes()
        .iter()
        .map(|&s| (s as u64) * (s as u64).saturating_sub(1) / 2)
        .sum();
    let intra = intra_edges(graph, partition) as u64;
    let inter_edges = graph.edge_count() as u64 - intra;
    let inter_non_edges = pairs - intra_pairs - inter_edges;
    Ok((intra + inter_non_edges) as f64 / pairs as f64)
}

/// The whole-network parameter vector.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MetricsReport {
    pub n: usize,
    pub m: usize,
    pub components: usize,
    pub avg_clustering: f64,
    pub diameter: usize,
    pub density: f64,
    pub avg_path_length: f64,
    pub global_efficiency: f64,
    pub coverage: Option<f64>,
    pub performance: Option<f64>,
}

impl MetricsReport {
    pub fn compute(
        graph: &CoGraph,
        partition: Option<&Partition>,
        low_degree: LowDegreeClustering,
    ) -> Result<Self> {
        let components = connected_components(graph);
        let distances = distance_profile_with(graph, &components);
        Self::assemble(graph, &components, distances, partition, low_degree)
    }

    /// Builds the report around an already computed distance profile.
    pub fn assemble(
        graph: &CoGraph,
        components: &Components,
        distances: DistanceProfile,
        partition: Option<&Partition>,
        low_degree: LowDegreeClustering,
    ) -> Result<Self> {
        let (coverage, performance) = match partition {
            Some(p) => (Some(coverage(graph, p)?), Some(performance(graph, p)?)),
            None => (None, None),
        };
        Ok(Self {
            n: graph.node_count(),
            m: graph.edge_count(),
            components: components.count,
            avg_clustering: average_clustering_with(graph, low_degree),
            diameter: distances.diameter,
            density: density(graph),
            avg_path_length: distances.avg_path_length,
            global_efficiency: distances.global_efficiency,
            coverage,
            performance,
        })
    }
}
