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

//! Modularity scoring and modularity-maximizing community detection.

mod brute;
mod greedy;
mod louvain;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::CoGraph;

pub use brute::brute_force_best_partition;
pub use greedy::greedy_modularity;
pub use louvain::louvain;

/// Node-to-community assignment with dense ids `0..count`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Partition {
    assignment: Vec<usize>,
    count: usize,
}

impl Partition {
    /// Takes an assignment as is; ids must cover `0..count` with no gaps.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let count = assignment.iter().max().map_or(0, |&c| c + 1);
        let mut used = vec![false; count];
        for &c in &assignment {
            used[c] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::SparseCommunityIds(missing));
        }
        Ok(Self { assignment, count })
    }

    /// Builds a partition from arbitrary labels. Ids are made dense in order
    /// of first appearance.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap = BTreeMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = remap.len();
                *remap.entry(*l).or_insert(next)
            })
            .collect();
        Self {
            assignment,
            count: remap.len(),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
            count: n,
        }
    }

    pub fn whole(n: usize) -> Self {
        Self {
            assignment: vec![0; n],
            count: usize::from(n > 0),
        }
    }

    /// Renumbers communities by descending size, ties by smallest member.
    pub fn finalized(self) -> Self {
        let sizes = self.sizes();
        let mut first = vec![usize::MAX; self.count];
        for (node, &c) in self.assignment.iter().enumerate() {
            first[c] = first[c].min(node);
        }
        let mut order: Vec<usize> = (0..self.count).collect();
        order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(first[a].cmp(&first[b])));
        let mut rank = vec![0; self.count];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        Self {
            assignment: self.assignment.iter().map(|&c| rank[c]).collect(),
            count: self.count,
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &c in &self.assignment {
            sizes[c] += 1;
        }
        sizes
    }

    /// Members of every community, each list ascending.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (node, &c) in self.assignment.iter().enumerate() {
            out[c].push(node);
        }
        out
    }

    pub(crate) fn check(&self, graph: &CoGraph) -> Result<()> {
        if self.len() == graph.node_count() {
            Ok(())
        } else {
            Err(Error::PartitionIncomplete {
                expected: graph.node_count(),
                found: self.len(),
            })
        }
    }
}

/// Parameters shared by the modularity score and both detectors.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModularityParams {
    pub resolution: f64,
    pub weighted: bool,
    pub seed: u64,
}

impl Default for ModularityParams {
    fn default() -> Self {
        Self {
            resolution: 1.0,
            weighted: true,
            seed: 0,
        }
    }
}

impl ModularityParams {
    pub fn validate(&self) -> Result<()> {
        if self.resolution.is_finite() && self.resolution > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidResolution)
        }
    }

    pub(crate) fn edge_weight(&self, w: u64) -> f64 {
        if self.weighted {
            w as f64
        } else {
            1.0
        }
    }
}

/// Newman modularity with resolution:
/// `Q = sum_c [ in_c / 2W - resolution * (tot_c / 2W)^2 ]`, where `in_c` is
/// twice the intra-community weight and `tot_c` the summed member strength.
/// Returns 0 for graphs without edges.
pub fn modularity(graph: &CoGraph, partition: &Partition, params: &ModularityParams) -> Result<f64> {
    partition.check(graph)?;
    params.validate()?;
    let mut inner = vec![0.0; partition.count()];
    let mut total = vec![0.0; partition.count()];
    let mut two_w = 0.0;
    for e in graph.edges() {
        let w = params.edge_weight(e.weight);
        two_w += 2.0 * w;
        let (a, b) = (partition.community_of(e.source), partition.community_of(e.target));
        if a == b {
            inner[a] += 2.0 * w;
        }
        total[a] += w;
        total[b] += w;
    }
    if two_w == 0.0 {
        return Ok(0.0);
    }
    Ok(inner
        .iter()
        .zip(&total)
        .map(|(&i, &t)| i / two_w - params.resolution * (t / two_w) * (t / two_w))
        .sum())
}
