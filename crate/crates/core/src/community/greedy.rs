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

//! Clauset-Newman-Moore agglomerative modularity maximization.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{ModularityParams, Partition};
use crate::graph::CoGraph;

/// A candidate merge of communities `a < b`, valid only while both
/// communities still carry the recorded versions.
struct Merge {
    gain: f64,
    a: usize,
    b: usize,
    version_a: u64,
    version_b: u64,
}

impl PartialEq for Merge {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Merge {}

impl PartialOrd for Merge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Merge {
    // Max-heap: largest gain first, then the smallest (a, b) pair.
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| (other.a, other.b).cmp(&(self.a, self.b)))
    }
}

/// Greedy agglomeration from singletons: repeatedly merge the connected
/// community pair with the largest modularity gain while that gain is
/// positive. Deterministic; `params.seed` is unused.
pub fn greedy_modularity(graph: &CoGraph, params: &ModularityParams) -> Partition {
    let n = graph.node_count();
    let mut links: Vec<BTreeMap<usize, f64>> = (0..n)
        .map(|i| {
            graph
                .neighbors(i)
                .iter()
                .map(|&(j, w)| (j, params.edge_weight(w)))
                .collect()
        })
        .collect();
    let mut strength: Vec<f64> = links.iter().map(|l| l.values().sum()).collect();
    let two_w: f64 = strength.iter().sum();
    if two_w == 0.0 {
        return Partition::singletons(n);
    }
    // Gains are kept as 2W * w - resolution * sa * sb, the modularity change
    // times the positive constant 2W^2 / 2. For integer weights at unit
    // resolution this is an exact integer, so scaling every weight by c
    // scales every gain by exactly c^2 and no comparison changes.
    let gain = |w: f64, sa: f64, sb: f64| two_w * w - params.resolution * sa * sb;

    let mut version = vec![0u64; n];
    let mut alive = vec![true; n];
    let mut label: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut heap = BinaryHeap::new();
    for e in graph.edges() {
        heap.push(Merge {
            gain: gain(params.edge_weight(e.weight), strength[e.source], strength[e.target]),
            a: e.source,
            b: e.target,
            version_a: 0,
            version_b: 0,
        });
    }

    while let Some(m) = heap.pop() {
        if !alive[m.a] || !alive[m.b] || version[m.a] != m.version_a || version[m.b] != m.version_b
        {
            continue;
        }
        if m.gain <= 0.0 {
            break;
        }
        let (keep, gone) = (m.a, m.b);
        let absorbed = core::mem::take(&mut links[gone]);
        links[keep].remove(&gone);
        for (x, w) in absorbed {
            if x == keep {
                continue;
            }
            *links[keep].entry(x).or_insert(0.0) += w;
            let back = links[x].remove(&gone).unwrap_or(0.0);
            *links[x].entry(keep).or_insert(0.0) += back;
        }
        strength[keep] += strength[gone];
        alive[gone] = false;
        version[keep] += 1;
        let moved = core::mem::take(&mut members[gone]);
        for &node in &moved {
            label[node] = keep;
        }
        members[keep].extend(moved);

        for (&x, &w) in &links[keep] {
            let (a, b) = if keep < x { (keep, x) } else { (x, keep) };
            heap.push(Merge {
                gain: gain(w, strength[keep], strength[x]),
                a,
                b,
                version_a: version[a],
                version_b: version[b],
            });
        }
    }
    Partition::from_labels(&label).finalized()
}
