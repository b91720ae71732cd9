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

//! Partition files: `node_key,community_id` rows plus a JSON sidecar.

use std::io::{Read, Write};

use litnet_core::{CoGraph, Partition};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a partition was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionMeta {
    pub algorithm: String,
    pub resolution: f64,
    pub weighted: bool,
    pub seed: u64,
    pub modularity: f64,
    pub community_count: usize,
}

pub fn write_partition<W: Write>(sink: W, graph: &CoGraph, partition: &Partition) -> Result<()> {
    if partition.len() != graph.node_count() {
        return Err(litnet_core::Error::PartitionIncomplete {
            expected: graph.node_count(),
            found: partition.len(),
        }
        .into());
    }
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["node_key", "community_id"])?;
    for (node, c) in graph.nodes().iter().zip(partition.assignment()) {
        w.write_record([node.person.key.as_str(), &c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a partition of `graph`. Rows may come in any order but must cover
/// every node exactly once.
pub fn read_partition<R: Read>(source: R, graph: &CoGraph) -> Result<Partition> {
    let mut reader = csv::Reader::from_reader(source);
    if reader.headers()?.iter().ne(["node_key", "community_id"]) {
        return Err(Error::Schema("partition header must be `node_key,community_id`".into()));
    }
    let mut assignment: Vec<Option<usize>> = vec![None; graph.node_count()];
    for record in reader.records() {
        let record = record?;
        let node = graph
            .index_of(&record[0])
            .ok_or_else(|| Error::Schema(format!("unknown node `{}`", &record[0])))?;
        let id = record[1]
            .parse()
            .map_err(|_| Error::Schema(format!("bad community id `{}`", &record[1])))?;
        if assignment[node].replace(id).is_some() {
            return Err(Error::Schema(format!("node `{}` assigned twice", &record[0])));
        }
    }
    let found = assignment.iter().filter(|a| a.is_some()).count();
    if found != graph.node_count() {
        return Err(litnet_core::Error::PartitionIncomplete {
            expected: graph.node_count(),
            found,
        }
        .into());
    }
    Ok(Partition::new(assignment.into_iter().flatten().collect())?)
}
