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

use alloc::vec;
use alloc::vec::Vec;

use super::{ModularityParams, Partition};
use crate::error::{Error, Result};
use crate::graph::CoGraph;

const MAX_NODES: usize = 12;
const TIE_TOLERANCE: f64 = 1e-12;

/// Exhaustive search over all set partitions (restricted growth strings in
/// lexicographic order). Near-ties keep the lexicographically first
/// assignment; the returned partition is finalized.
pub fn brute_force_best_partition(
    graph: &CoGraph,
    params: &ModularityParams,
) -> Result<(Partition, f64)> {
    let n = graph.node_count();
    if n > MAX_NODES {
        return Err(Error::TooLarge(n));
    }
    params.validate()?;
    if n == 0 {
        return Ok((Partition::singletons(0), 0.0));
    }
    let edges: Vec<(usize, usize, f64)> = graph
        .edges()
        .iter()
        .map(|e| (e.source, e.target, params.edge_weight(e.weight)))
        .collect();
    let mut strength = vec![0.0; n];
    for &(a, b, w) in &edges {
        strength[a] += w;
        strength[b] += w;
    }
    let two_w: f64 = strength.iter().sum();

    let score = |labels: &[usize], count: usize, inner: &mut [f64], total: &mut [f64]| -> f64 {
        if two_w == 0.0 {
            return 0.0;
        }
        inner[..count].fill(0.0);
        total[..count].fill(0.0);
        for &(a, b, w) in &edges {
            if labels[a] == labels[b] {
                inner[labels[a]] += 2.0 * w;
            }
        }
        for (i, &s) in strength.iter().enumerate() {
            total[labels[i]] += s;
        }
        (0..count)
            .map(|c| {
                let share = total[c] / two_w;
                inner[c] / two_w - params.resolution * share * share
            })
            .sum()
    };

    let mut labels = vec![0usize; n];
    // prefix_max[i] = max(labels[..=i])
    let mut prefix_max = vec![0usize; n];
    let mut inner = vec![0.0; n];
    let mut total = vec![0.0; n];
    let mut best_labels = labels.clone();
    let mut best_q = score(&labels, 1, &mut inner, &mut total);
    while next_growth_string(&mut labels, &mut prefix_max) {
        let q = score(&labels, prefix_max[n - 1] + 1, &mut inner, &mut total);
        if q > best_q + TIE_TOLERANCE {
            best_q = q;
            best_labels.copy_from_slice(&labels);
        }
    }
    Ok((Partition::from_labels(&best_labels).finalized(), best_q))
}

/// Steps to the next restricted growth string in lexicographic order.
/// Returns false once the last one (`0, 1, .., n-1`) has been passed.
fn next_growth_string(labels: &mut [usize], prefix_max: &mut [usize]) -> bool {
    let n = labels.len();
    let mut i = n - 1;
    while i > 0 && labels[i] > prefix_max[i - 1] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    labels[i] += 1;
    prefix_max[i] = prefix_max[i - 1].max(labels[i]);
    for j in i + 1..n {
        labels[j] = 0;
        prefix_max[j] = prefix_max[i];
    }
    true
}
