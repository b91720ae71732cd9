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

//! The co-participation graph and its construction from event records.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::event::{EventRecord, PersonId, TimeWindow};

/// A graph node: a person and the number of events they took part in.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Node {
    pub person: PersonId,
    pub event_count: u64,
}

/// Undirected edge with `source < target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: u64,
}

/// Undirected weighted co-participation graph.
///
/// Nodes are indexed in ascending key order. Edges carry the number of
/// shared events, never form self-loops and are never parallel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoGraph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, u64)>>,
}

impl CoGraph {
    /// Validates and assembles a graph. Node keys must be strictly
    /// ascending; edge endpoints may come in either order.
    pub fn new(
        nodes: Vec<Node>,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        for w in nodes.windows(2) {
            if w[0].person.key >= w[1].person.key {
                return Err(Error::InvalidGraph(format!(
                    "node keys not strictly ascending at `{}`",
                    w[1].person.key
                )));
            }
        }
        let n = nodes.len();
        let mut list = Vec::new();
        for (a, b, weight) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on node {a}")));
            }
            if weight == 0 {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) has zero weight")));
            }
            let (source, target) = if a < b { (a, b) } else { (b, a) };
            list.push(Edge {
                source,
                target,
                weight,
            });
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if (w[0].source, w[0].target) == (w[1].source, w[1].target) {
                return Err(Error::InvalidGraph(format!(
                    "parallel edge ({}, {})",
                    w[0].source, w[0].target
                )));
            }
        }
        Ok(Self::assemble(nodes, list))
    }

    /// Graph on `n` nodes keyed by zero-padded indices, with unit weights.
    pub fn unlabeled(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            placeholder_nodes(n),
            edges.iter().map(|&(a, b)| (a, b, 1)),
        )
    }

    /// Like [`CoGraph::unlabeled`] with explicit weights.
    pub fn unlabeled_weighted(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        Self::new(placeholder_nodes(n), edges.iter().copied())
    }

    // `edges` must be sorted, deduplicated and oriented source < target.
    fn assemble(nodes: Vec<Node>, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for e in &edges {
            adjacency[e.source].push((e.target, e.weight));
            adjacency[e.target].push((e.source, e.weight));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            nodes,
            edges,
            adjacency,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Edges sorted by `(source, target)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `node` with edge weights, sorted by neighbor index.
    pub fn neighbors(&self, node: usize) -> &[(usize, u64)] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn weighted_degree(&self, node: usize) -> u64 {
        self.adjacency[node].iter().map(|&(_, w)| w).sum()
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<u64> {
        let list = &self.adjacency[a];
        list.binary_search_by_key(&b, |&(v, _)| v)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.weight(a, b).is_some()
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.nodes
            .binary_search_by(|n| n.person.key.as_str().cmp(key))
            .ok()
    }

    /// Induced subgraph on `keep` (any order, duplicates ignored), weights
    /// preserved.
    pub fn induced(&self, keep: &[usize]) -> CoGraph {
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::with_capacity(keep.len());
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
            nodes.push(self.nodes[old].clone());
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| remap[e.source] != usize::MAX && remap[e.target] != usize::MAX)
            .map(|e| Edge {
                source: remap[e.source],
                target: remap[e.target],
                weight: e.weight,
            })
            .collect();
        Self::assemble(nodes, edges)
    }
}

fn placeholder_nodes(n: usize) -> Vec<Node> {
    let width = format!("{}", n.saturating_sub(1)).len();
    (0..n)
        .map(|i| Node {
            person: PersonId::new(format!("v{i:0width$}")),
            event_count: 0,
        })
        .collect()
}

/// One event as seen by the incidence structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceEvent {
    pub event_id: String,
    pub date: NaiveDate,
    /// Sorted, distinct.
    pub participants: Vec<PersonId>,
}

/// Two-mode event/person structure. `person_events` holds positions into
/// `events`, so identical records that were not deduplicated stay distinct.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Incidence {
    events: Vec<IncidenceEvent>,
    person_events: BTreeMap<PersonId, BTreeSet<usize>>,
}

impl Incidence {
    pub fn events(&self) -> &[IncidenceEvent] {
        &self.events
    }

    pub fn person_events(&self) -> &BTreeMap<PersonId, BTreeSet<usize>> {
        &self.person_events
    }

    pub fn event_count(&self, person: &PersonId) -> u64 {
        self.person_events
            .get(person)
            .map_or(0, |s| s.len() as u64)
    }

    /// Copy keeping only persons with at least `min_events` events.
    fn restricted(&self, min_events: u64) -> Incidence {
        let mut events = self.events.clone();
        for ev in &mut events {
            ev.participants
                .retain(|p| self.event_count(p) >= min_events);
        }
        let person_events = self
            .person_events
            .iter()
            .filter(|(_, evs)| evs.len() as u64 >= min_events)
            .map(|(p, evs)| (p.clone(), evs.clone()))
            .collect();
        Incidence {
            events,
            person_events,
        }
    }
}

pub fn build_incidence(events: &[EventRecord]) -> Incidence {
    let mut inc = Incidence::default();
    for (pos, ev) in events.iter().enumerate() {
        let set: BTreeSet<PersonId> = ev.participants.iter().cloned().collect();
        for p in &set {
            inc.person_events.entry(p.clone()).or_default().insert(pos);
        }
        inc.events.push(IncidenceEvent {
            event_id: ev.event_id.clone(),
            date: ev.date,
            participants: set.into_iter().collect(),
        });
    }
    inc
}

/// Projects the incidence onto persons: one node per person seen in any
/// event, one edge per co-listed pair weighted by the shared-event count.
pub fn project(inc: &Incidence) -> CoGraph {
    let nodes: Vec<Node> = inc
        .person_events
        .iter()
        .map(|(p, evs)| Node {
            person: p.clone(),
            event_count: evs.len() as u64,
        })
        .collect();
    let index: BTreeMap<&str, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.person.key.as_str(), i))
        .collect();
    let mut weights: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut members = Vec::new();
    for ev in &inc.events {
        members.clear();
        members.extend(ev.participants.iter().map(|p| index[p.key.as_str()]));
        // participants are key-sorted, so indices are ascending
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                *weights.entry((a, b)).or_insert(0) += 1;
            }
        }
    }
    let edges = weights
        .into_iter()
        .map(|((source, target), weight)| Edge {
            source,
            target,
            weight,
        })
        .collect();
    CoGraph::assemble(nodes, edges)
}

/// Events dated inside `window`, in input order.
pub fn slice(events: &[EventRecord], window: &TimeWindow) -> Vec<EventRecord> {
    events
        .iter()
        .filter(|e| window.contains(e.date))
        .cloned()
        .collect()
}

/// Core-actor filter: the subgraph of `graph` induced on persons with at
/// least `min_events` events in `inc`.
pub fn filter_core(inc: &Incidence, graph: &CoGraph, min_events: u64) -> Result<CoGraph> {
    if min_events == 0 {
        return Err(Error::InvalidThreshold);
    }
    let keep: Vec<usize> = graph
        .nodes()
        .iter()
        .enumerate()
        .filter(|(_, n)| inc.event_count(&n.person) >= min_events)
        .map(|(i, _)| i)
        .collect();
    Ok(graph.induced(&keep))
}

/// Core-actor filter by re-projection: drops non-core persons from every
/// event and projects again.
pub fn reproject_core(inc: &Incidence, min_events: u64) -> Result<CoGraph> {
    if min_events == 0 {
        return Err(Error::InvalidThreshold);
    }
    Ok(project(&inc.restricted(min_events)))
}

/// Connected components with ids assigned in order of smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    pub membership: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Components {
    /// Size of the largest component, 0 for the empty graph.
    pub fn largest_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// Whether `node` lies in a component of maximal size. Components tied
    /// for the maximum are all included, so the selection does not depend
    /// on node labels.
    pub fn in_largest(&self, node: usize) -> bool {
        self.sizes[self.membership[node]] == self.largest_size()
    }

    pub fn members(&self, id: usize) -> Vec<usize> {
        self.membership
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == id)
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn connected_components(graph: &CoGraph) -> Components {
    let n = graph.node_count();
    let mut membership = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if membership[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        membership[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &(v, _) in graph.neighbors(u) {
                if membership[v] == usize::MAX {
                    membership[v] = id;
                    queue.push_back(v);
                }
            }
        }
        sizes.push(size);
    }
    Components {
        count: sizes.len(),
        membership,
        sizes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(day: u32, people: &[&str]) -> EventRecord {
        EventRecord::new(
            NaiveDate::from_ymd_opt(2019, 1, day).unwrap(),
            None,
            format!("venue {day}"),
            String::new(),
            None,
            String::new(),
            people.iter().map(|p| PersonId::new(*p)).collect(),
        )
    }

    fn keyed_edges(g: &CoGraph) -> Vec<(String, String, u64)> {
        g.edges()
            .iter()
            .map(|e| {
                (
                    g.nodes()[e.source].person.key.clone(),
                    g.nodes()[e.target].person.key.clone(),
                    e.weight,
                )
            })
            .collect()
    }

    #[test]
    fn single_event_transposes() {
        let inc = build_incidence(&[record(1, &["A", "B", "C"])]);
        for p in ["A", "B", "C"] {
            let evs = &inc.person_events()[&PersonId::new(p)];
            assert_eq!(evs.iter().copied().collect::<Vec<_>>(), [0]);
        }
    }

    #[test]
    fn empty_incidence() {
        let inc = build_incidence(&[]);
        assert!(inc.events().is_empty());
        assert!(inc.person_events().is_empty());
        let g = project(&inc);
        assert_eq!((g.node_count(), g.edge_count()), (0, 0));
    }

    #[test]
    fn triangle_from_one_event() {
        let g = project(&build_incidence(&[record(1, &["A", "B", "C"])]));
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.edges().iter().all(|e| e.weight == 1));
    }

    #[test]
    fn repeated_pairs_accumulate_weight() {
        let g = project(&build_incidence(&[
            record(1, &["A", "B"]),
            record(2, &["B", "A"]),
            record(3, &["A", "C"]),
        ]));
        assert_eq!(
            keyed_edges(&g),
            [
                ("A".into(), "B".into(), 2),
                ("A".into(), "C".into(), 1)
            ]
        );
    }

    #[test]
    fn solo_participants_become_isolated_nodes() {
        let g = project(&build_incidence(&[record(1, &["A", "B"]), record(2, &["Z"]), record(3, &[])]));
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.degree(g.index_of("Z").unwrap()), 0);
    }

    #[test]
    fn slice_windows() {
        let events = [record(1, &["A"]), record(15, &["B"]), record(31, &["C"])];
        let all = slice(&events, &TimeWindow::corpus_span());
        assert_eq!(all, events);
        let w = TimeWindow::new(
            NaiveDate::from_ymd_opt(2019, 1, 10).unwrap(),
            NaiveDate::from_ymd_opt(2019, 1, 31).unwrap(),
        )
        .unwrap();
        assert_eq!(slice(&events, &w), events[1..]);
        assert!(slice(&events, &TimeWindow::year(2005).unwrap()).is_empty());
    }

    #[test]
    fn core_filter_induces() {
        // A and B appear twice, C once.
        let events = [
            record(1, &["A", "B", "C"]),
            record(2, &["A", "B"]),
        ];
        let inc = build_incidence(&events);
        let g = project(&inc);
        let core = filter_core(&inc, &g, 2).unwrap();
        assert_eq!(keyed_edges(&core), [("A".into(), "B".into(), 2)]);
        assert_eq!(filter_core(&inc, &g, 1).unwrap(), g);
        assert_eq!(filter_core(&inc, &g, 0), Err(Error::InvalidThreshold));
        assert_eq!(reproject_core(&inc, 2).unwrap(), core);
    }

    #[test]
    fn components_are_numbered_by_smallest_member() {
        let g = CoGraph::unlabeled(5, &[]).unwrap();
        assert_eq!(connected_components(&g).count, 5);
        let g = CoGraph::unlabeled(6, &[(3, 4), (4, 5), (3, 5), (0, 1), (1, 2), (0, 2)]).unwrap();
        let c = connected_components(&g);
        assert_eq!(c.count, 2);
        assert_eq!(c.membership, [0, 0, 0, 1, 1, 1]);
        assert_eq!(c.largest_size(), 3);
        assert!(c.in_largest(0) && c.in_largest(4));
        let g = CoGraph::unlabeled(4, &[(1, 2), (2, 3)]).unwrap();
        let c = connected_components(&g);
        assert!(!c.in_largest(0) && c.in_largest(3));
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(CoGraph::unlabeled(2, &[(0, 0)]).is_err());
        assert!(CoGraph::unlabeled(2, &[(0, 1), (1, 0)]).is_err());
        assert!(CoGraph::unlabeled(2, &[(0, 2)]).is_err());
        assert!(CoGraph::unlabeled_weighted(2, &[(0, 1, 0)]).is_err());
    }

    #[test]
    fn induced_keeps_weights() {
        let g = CoGraph::unlabeled_weighted(4, &[(0, 1, 3), (1, 2, 2), (2, 3, 1)]).unwrap();
        let sub = g.induced(&[2, 1]);
        assert_eq!(sub.node_count(), 2);
        assert_eq!(sub.weight(0, 1), Some(2));
    }
}
