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

//! Node-list and edge-list CSV persistence of co-participation graphs.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use litnet_core::{CoGraph, Node, PersonId};

use crate::error::{Error, Result};

pub const NODES_FILE: &str = "nodes.csv";
pub const EDGES_FILE: &str = "edges.csv";

/// `index,key,display,event_count`, one row per node in index order.
pub fn write_nodes<W: Write>(sink: W, graph: &CoGraph) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["index", "key", "display", "event_count"])?;
    for (i, node) in graph.nodes().iter().enumerate() {
        w.write_record([
            i.to_string().as_str(),
            &node.person.key,
            &node.person.display,
            &node.event_count.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `source_key,target_key,weight` with `source_key < target_key`, rows
/// sorted lexicographically.
pub fn write_edges<W: Write>(sink: W, graph: &CoGraph) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["source_key", "target_key", "weight"])?;
    // node indices follow key order, so index order is key order
    for e in graph.edges() {
        w.write_record([
            graph.nodes()[e.source].person.key.as_str(),
            &graph.nodes()[e.target].person.key,
            &e.weight.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn expect_header(reader: &mut csv::Reader<impl Read>, expected: &[&str], what: &str) -> Result<()> {
    let headers = reader.headers()?;
    if headers.iter().ne(expected.iter().copied()) {
        return Err(Error::Schema(format!(
            "{what} header must be `{}`",
            expected.join(",")
        )));
    }
    Ok(())
}

pub fn read_graph<N: Read, E: Read>(nodes: N, edges: E) -> Result<CoGraph> {
    let mut reader = csv::Reader::from_reader(nodes);
    expect_header(&mut reader, &["index", "key", "display", "event_count"], "node list")?;
    let mut list = Vec::new();
    for (expected, record) in reader.records().enumerate() {
        let record = record?;
        let index: usize = record[0]
            .parse()
            .map_err(|_| Error::Schema(format!("bad node index `{}`", &record[0])))?;
        if index != expected {
            return Err(Error::Schema(format!(
                "node indices must run 0.., found {index} at row {}",
                expected + 1
            )));
        }
        let event_count = record[3]
            .parse()
            .map_err(|_| Error::Schema(format!("bad event count `{}`", &record[3])))?;
        list.push(Node {
            person: PersonId {
                key: record[1].to_string(),
                display: record[2].to_string(),
            },
            event_count,
        });
    }
    let index: BTreeMap<String, usize> = list
        .iter()
        .enumerate()
        .map(|(i, n)| (n.person.key.clone(), i))
        .collect();

    let mut reader = csv::Reader::from_reader(edges);
    expect_header(&mut reader, &["source_key", "target_key", "weight"], "edge list")?;
    let mut edge_list = Vec::new();
    for record in reader.records() {
        let record = record?;
        let lookup = |key: &str| {
            index
                .get(key)
                .copied()
                .ok_or_else(|| Error::Schema(format!("edge references unknown node `{key}`")))
        };
        let weight = record[2]
            .parse()
            .map_err(|_| Error::Schema(format!("bad weight `{}`", &record[2])))?;
        edge_list.push((lookup(&record[0])?, lookup(&record[1])?, weight));
    }
    Ok(CoGraph::new(list, edge_list)?)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

/// Writes `nodes.csv` and `edges.csv` into `dir`.
pub fn save_graph(dir: &Path, graph: &CoGraph) -> Result<()> {
    write_nodes(create(&dir.join(NODES_FILE))?, graph)?;
    write_edges(create(&dir.join(EDGES_FILE))?, graph)
}

pub fn load_graph(dir: &Path) -> Result<CoGraph> {
    read_graph(open(&dir.join(NODES_FILE))?, open(&dir.join(EDGES_FILE))?)
}
