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

// https://arxiv.org/abs/0803.0476

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ModularityParams, Partition};
use crate::graph::CoGraph;

// Relative to the moving node's strength times 2W, the unit of the gains
// compared in `local_moves`.
const GAIN_TOLERANCE: f64 = 1e-10;

/// Graph of one Louvain level. Node `i` stands for a community of the level
/// below; `self_loops[i]` is the weight inside it.
struct LevelGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    self_loops: Vec<f64>,
    strength: Vec<f64>,
    two_w: f64,
}

impl LevelGraph {
    fn from_graph(graph: &CoGraph, params: &ModularityParams) -> Self {
        let adjacency: Vec<Vec<(usize, f64)>> = (0..graph.node_count())
            .map(|i| {
                graph
                    .neighbors(i)
                    .iter()
                    .map(|&(j, w)| (j, params.edge_weight(w)))
                    .collect()
            })
            .collect();
        let strength: Vec<f64> = adjacency
            .iter()
            .map(|list| list.iter().map(|&(_, w)| w).sum())
            .collect();
        let two_w = strength.iter().sum();
        Self {
            self_loops: vec![0.0; adjacency.len()],
            adjacency,
            strength,
            two_w,
        }
    }

    fn len(&self) -> usize {
        self.adjacency.len()
    }

    fn modularity(&self, community: &[usize], count: usize, resolution: f64) -> f64 {
        let mut inner = vec![0.0; count];
        let mut total = vec![0.0; count];
        for i in 0..self.len() {
            let c = community[i];
            total[c] += self.strength[i];
            inner[c] += 2.0 * self.self_loops[i];
            for &(j, w) in &self.adjacency[i] {
                if community[j] == c {
                    inner[c] += w;
                }
            }
        }
        inner
            .iter()
            .zip(&total)
            .map(|(&i, &t)| i / self.two_w - resolution * (t / self.two_w) * (t / self.two_w))
            .sum()
    }

    /// Repeated passes of single-node moves until a pass moves nothing.
    /// Returns the community of every node (not yet dense) and whether any
    /// node moved.
    fn local_moves(&self, order: &[usize], resolution: f64) -> (Vec<usize>, bool) {
        let n = self.len();
        let mut community: Vec<usize> = (0..n).collect();
        let mut total = self.strength.clone();
        let mut link = vec![0.0; n];
        let mut touched = vec![false; n];
        let mut candidates: Vec<usize> = Vec::new();
        let mut any_move = false;
        loop {
            let mut moved = false;
            for &i in order {
                let current = community[i];
                let k = self.strength[i];
                for &(j, w) in &self.adjacency[i] {
                    let c = community[j];
                    if !touched[c] {
                        touched[c] = true;
                        link[c] = 0.0;
                        candidates.push(c);
                    }
                    link[c] += w;
                }
                total[current] -= k;
                // Gains are 2W * link - resolution * k * total, the modularity
                // change times W. With integer weights at unit resolution
                // they are exact, which keeps ties stable under weight scaling.
                let scale = resolution * k;
                let stay_link = if touched[current] { link[current] } else { 0.0 };
                let mut best = current;
                let mut best_gain = self.two_w * stay_link - scale * total[current];
                let tolerance = GAIN_TOLERANCE * k * self.two_w;
                candidates.sort_unstable();
                for &c in &candidates {
                    if c == current {
                        continue;
                    }
                    let gain = self.two_w * link[c] - scale * total[c];
                    if gain > best_gain + tolerance {
                        best = c;
                        best_gain = gain;
                    }
                }
                total[best] += k;
                if best != current {
                    community[i] = best;
                    moved = true;
                    any_move = true;
                }
                for &c in &candidates {
                    touched[c] = false;
                }
                candidates.clear();
            }
            if !moved {
                break;
            }
        }
        (community, any_move)
    }

    /// Collapses every community into one node.
    fn aggregate(&self, community: &[usize], count: usize) -> LevelGraph {
        let mut self_loops = vec![0.0; count];
        let mut strength = vec![0.0; count];
        let mut pairs: Vec<Vec<(usize, f64)>> = vec![Vec::new(); count];
        for i in 0..self.len() {
            let c = community[i];
            strength[c] += self.strength[i];
            self_loops[c] += self.self_loops[i];
            for &(j, w) in &self.adjacency[i] {
                let d = community[j];
                if d == c {
                    // each intra edge is seen from both ends
                    self_loops[c] += w / 2.0;
                } else {
                    pairs[c].push((d, w));
                }
            }
        }
        let adjacency = pairs
            .into_iter()
            .map(|mut list| {
                list.sort_by_key(|&(d, _)| d);
                let mut merged: Vec<(usize, f64)> = Vec::with_capacity(list.len());
                for (d, w) in list {
                    match merged.last_mut() {
                        Some(last) if last.0 == d => last.1 += w,
                        _ => merged.push((d, w)),
                    }
                }
                merged
            })
            .collect();
        LevelGraph {
            adjacency,
            self_loops,
            strength,
            two_w: self.two_w,
        }
    }
}

/// Relabels to dense ids in order of first appearance by node index.
fn densify(community: &mut [usize]) -> usize {
    let mut remap = vec![usize::MAX; community.len()];
    let mut next = 0;
    for c in community.iter_mut() {
        if remap[*c] == usize::MAX {
            remap[*c] = next;
            next += 1;
        }
        *c = remap[*c];
    }
    next
}

/// Louvain community detection: local moving followed by aggregation,
/// repeated until a level brings no modularity gain.
///
/// The node visit order of every level is shuffled by a ChaCha8 stream seeded
/// from `params.seed`; the result is a pure function of graph and params.
pub fn louvain(graph: &CoGraph, params: &ModularityParams) -> Partition {
    let n = graph.node_count();
    let mut level = LevelGraph::from_graph(graph, params);
    if level.two_w == 0.0 {
        return Partition::singletons(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut membership: Vec<usize> = (0..n).collect();
    let singletons: Vec<usize> = (0..n).collect();
    let mut best_q = level.modularity(&singletons, n, params.resolution);
    loop {
        let mut order: Vec<usize> = (0..level.len()).collect();
        order.shuffle(&mut rng);
        let (mut community, moved) = level.local_moves(&order, params.resolution);
        if !moved {
            break;
        }
        let count = densify(&mut community);
        let q = level.modularity(&community, count, params.resolution);
        if q <= best_q {
            break;
        }
        best_q = q;
        for m in membership.iter_mut() {
            *m = community[*m];
        }
        level = level.aggregate(&community, count);
    }
    Partition::from_labels(&membership).finalized()
}
