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

//! Generators and brute-force oracles shared by the property tests.

#![allow(dead_code)]

use chrono::NaiveDate;
use litnet_core::{CoGraph, EventRecord, GeoPoint, PersonId};
use proptest::prelude::*;

/// Undirected graph on `n` nodes with weighted edges `(a < b, w)`.
pub fn arb_graph(max_n: usize, max_weight: u64) -> impl Strategy<Value = (usize, Vec<(usize, usize, u64)>)> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        (
            Just(n),
            proptest::collection::vec((any::<bool>(), 1..=max_weight), len).prop_map(move |picks| {
                pairs
                    .iter()
                    .zip(picks)
                    .filter(|(_, (keep, _))| *keep)
                    .map(|(&(a, b), (_, w))| (a, b, w))
                    .collect::<Vec<_>>()
            }),
        )
    })
}

pub fn build((n, edges): &(usize, Vec<(usize, usize, u64)>)) -> CoGraph {
    CoGraph::unlabeled_weighted(*n, edges).unwrap()
}

/// Every labeled simple graph on `n` nodes, by edge bitmask.
pub fn all_graphs(n: usize) -> impl Iterator<Item = CoGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        CoGraph::unlabeled(n, &edges).unwrap()
    })
}

pub fn date(offset: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(2000, 1, 1).unwrap() + chrono::Days::new(offset as u64)
}

pub fn event(day: u32, venue: &str, description: &str, people: &[usize], geo: Option<GeoPoint>) -> EventRecord {
    EventRecord::new(
        date(day),
        None,
        venue.to_string(),
        String::new(),
        geo,
        description.to_string(),
        people.iter().map(|p| PersonId::new(format!("p{p}"))).collect(),
    )
}

/// Small chronicles over a pool of `persons` participants.
pub fn arb_events(max_events: usize, persons: usize) -> impl Strategy<Value = Vec<EventRecord>> {
    proptest::collection::vec(
        (
            0u32..800,
            0usize..4,
            0usize..3,
            proptest::collection::vec(0..persons, 0..=persons),
        ),
        0..=max_events,
    )
    .prop_map(|rows| {
        rows.into_iter()
            .map(|(day, venue, text, people)| {
                event(day, &format!("Venue {venue}"), &format!("text {text}"), &people, None)
            })
            .collect()
    })
}

/// Hop distances by Floyd–Warshall; `None` where unreachable.
pub fn floyd_warshall(graph: &CoGraph) -> Vec<Vec<Option<u64>>> {
    let n = graph.node_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for e in graph.edges() {
        d[e.source][e.target] = Some(1);
        d[e.target][e.source] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].map_or(true, |c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Scalar metrics recomputed from the distance matrix and a triple loop.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub density: f64,
    pub avg_clustering: f64,
    pub components: usize,
    pub diameter: u64,
    pub avg_path_length: f64,
    pub global_efficiency: f64,
}

pub fn oracle(graph: &CoGraph) -> Oracle {
    let n = graph.node_count();
    let d = floyd_warshall(graph);
    let adj = |a: usize, b: usize| d[a][b] == Some(1);

    let density = if n < 2 {
        0.0
    } else {
        graph.edge_count() as f64 / (n * (n - 1) / 2) as f64
    };

    let mut clustering_sum = 0.0;
    for v in 0..n {
        let nbrs: Vec<usize> = (0..n).filter(|&u| u != v && adj(u, v)).collect();
        let k = nbrs.len();
        if k < 2 {
            continue;
        }
        let mut links = 0;
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if adj(a, b) {
                    links += 1;
                }
            }
        }
        clustering_sum += links as f64 / (k * (k - 1) / 2) as f64;
    }
    let avg_clustering = if n == 0 { 0.0 } else { clustering_sum / n as f64 };

    // Components as reachability classes; every class of maximal size
    // counts as largest.
    let mut class = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for v in 0..n {
        if class[v] == usize::MAX {
            let id = sizes.len();
            let members: Vec<usize> = (0..n).filter(|&u| d[v][u].is_some()).collect();
            for &u in &members {
                class[u] = id;
            }
            sizes.push(members.len());
        }
    }
    let top = sizes.iter().copied().max().unwrap_or(0);
    let (mut diameter, mut sum, mut pairs) = (0, 0u64, 0u64);
    for a in (0..n).filter(|&v| sizes[class[v]] == top) {
        for b in (0..n).filter(|&v| class[v] == class[a] && v != a) {
            let x = d[a][b].unwrap();
            diameter = diameter.max(x);
            sum += x;
            pairs += 1;
        }
    }
    let avg_path_length = if pairs == 0 { 0.0 } else { sum as f64 / pairs as f64 };

    let mut inverse = 0.0;
    for a in 0..n {
        for b in 0..n {
            if a != b {
                if let Some(x) = d[a][b] {
                    inverse += 1.0 / x as f64;
                }
            }
        }
    }
    let global_efficiency = if n < 2 { 0.0 } else { inverse / (n * (n - 1)) as f64 };

    Oracle {
        density,
        avg_clustering,
        components: sizes.len(),
        diameter,
        avg_path_length,
        global_efficiency,
    }
}

/// Relabels node `i` as `perm[i]`.
pub fn relabel(graph: &CoGraph, perm: &[usize]) -> CoGraph {
    let edges: Vec<(usize, usize, u64)> = graph
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (perm[e.source], perm[e.target]);
            (a.min(b), a.max(b), e.weight)
        })
        .collect();
    CoGraph::unlabeled_weighted(graph.node_count(), &edges).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
