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

//! Co-participation network analysis for event chronicles.
//!
//! Events with participant lists are projected into a weighted undirected
//! person graph. On that graph the crate computes small-world metrics
//! (clustering, distances, efficiency, density), detects communities by
//! Louvain and by greedy agglomerative modularity maximization, and
//! summarizes communities. Spatial binning of events feeds heatmaps.
//!
//! The crate is `no_std` and only needs `alloc`; file formats and the
//! command-line front-end live in the `litnet` crate.

#![no_std]

extern crate alloc;

pub mod community;
pub mod error;
pub mod event;
pub mod geo;
pub mod graph;
pub mod metrics;
pub mod name;
pub mod registry;
pub mod report;

pub use community::{
    brute_force_best_partition, greedy_modularity, louvain, modularity, ModularityParams, Partition,
};
pub use error::{Error, Result};
pub use event::{dedupe_events, EventRecord, GeoPoint, PersonId, TimeWindow};
pub use geo::{heatmap, venue_frequency, BBox, GeocodeCache, HeatmapGrid, TimeBin};
pub use graph::{
    build_incidence, connected_components, filter_core, project, reproject_core, slice, CoGraph,
    Components, Edge, Incidence, Node,
};
pub use metrics::{DegreeKind, LowDegreeClustering, MetricsReport};
pub use name::normalize_name;
pub use registry::PersonRegistry;
pub use report::{community_params, CommunityReport, RankedNode};
