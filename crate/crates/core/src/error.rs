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

use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("name is empty after normalization")]
    NameEmpty,
    #[error("alias `{alias}` -> `{canonical}` would create an alias chain")]
    AliasChain { alias: String, canonical: String },
    #[error("min_events must be at least 1")]
    InvalidThreshold,
    #[error("time window start {start} is after end {end}")]
    InvalidWindow { start: String, end: String },
    #[error("partition covers {found} nodes but the graph has {expected}")]
    PartitionIncomplete { expected: usize, found: usize },
    #[error("community ids are not dense: id {0} is unused")]
    SparseCommunityIds(usize),
    #[error("exhaustive search is limited to 12 nodes, got {0}")]
    TooLarge(usize),
    #[error("bounding box must satisfy min < max on both axes")]
    InvalidBBox,
    #[error("heatmap grid must have at least one row and one column")]
    InvalidGrid,
    #[error("top-N listing length must be at least 1")]
    InvalidTopN,
    #[error("resolution must be a positive finite number")]
    InvalidResolution,
    #[error("coordinate ({lat}, {lon}) is out of range")]
    InvalidCoordinate { lat: f64, lon: f64 },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
