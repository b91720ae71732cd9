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

//! Graph exchange formats for external visualization tools.

use std::fmt::Write as _;
use std::str::FromStr;

use litnet_core::CoGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    GraphMl,
    Gexf,
    /// `nodes.csv` + `edges.csv`, see [`crate::graph_io`].
    EdgeList,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graphml" => Ok(GraphFormat::GraphMl),
            "gexf" => Ok(GraphFormat::Gexf),
            "edgelist" | "csv" => Ok(GraphFormat::EdgeList),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::UnsupportedFormat(other.into())),
        }
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            // attribute-value normalization would turn these into spaces
            '\t' => out.push_str("&#9;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            // characters not allowed in XML 1.0
            c if (c as u32) < 0x20 => {}
            '\u{FFFE}' | '\u{FFFF}' => {}
            c => out.push(c),
        }
    }
    out
}

/// GraphML document with node `key`, `display`, `event_count` and edge
/// `weight` attributes. Nodes in index order, edges in sorted order.
pub fn to_graphml(graph: &CoGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" \
         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" \
         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns \
         http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n",
    );
    out.push_str("  <key id=\"d0\" for=\"node\" attr.name=\"key\" attr.type=\"string\"/>\n");
    out.push_str("  <key id=\"d1\" for=\"node\" attr.name=\"display\" attr.type=\"string\"/>\n");
    out.push_str("  <key id=\"d2\" for=\"node\" attr.name=\"event_count\" attr.type=\"long\"/>\n");
    out.push_str("  <key id=\"d3\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n");
    out.push_str("  <graph id=\"G\" edgedefault=\"undirected\">\n");
    for (i, node) in graph.nodes().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <node id=\"n{i}\"><data key=\"d0\">{}</data><data key=\"d1\">{}</data>\
             <data key=\"d2\">{}</data></node>",
            escape(&node.person.key),
            escape(&node.person.display),
            node.event_count
        );
    }
    for (i, e) in graph.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\"><data key=\"d3\">{}</data></edge>",
            e.source, e.target, e.weight
        );
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

/// GEXF 1.3 static undirected graph; node labels carry the display name,
/// node attributes the key and event count, edges their weight.
pub fn to_gexf(graph: &CoGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(
        "<gexf xmlns=\"http://gexf.net/1.3\" \
         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" \
         xsi:schemaLocation=\"http://gexf.net/1.3 http://gexf.net/1.3/gexf.xsd\" \
         version=\"1.3\">\n",
    );
    out.push_str("  <meta>\n    <creator>litnet</creator>\n  </meta>\n");
    out.push_str("  <graph mode=\"static\" defaultedgetype=\"undirected\">\n");
    out.push_str("    <attributes class=\"node\" mode=\"static\">\n");
    out.push_str("      <attribute id=\"0\" title=\"key\" type=\"string\"/>\n");
    out.push_str("      <attribute id=\"1\" title=\"display\" type=\"string\"/>\n");
    out.push_str("      <attribute id=\"2\" title=\"event_count\" type=\"long\"/>\n");
    out.push_str("    </attributes>\n");
    out.push_str("    <nodes>\n");
    for (i, node) in graph.nodes().iter().enumerate() {
        let _ = writeln!(
            out,
            "      <node id=\"n{i}\" label=\"{}\"><attvalues>\
             <attvalue for=\"0\" value=\"{}\"/><attvalue for=\"1\" value=\"{}\"/>\
             <attvalue for=\"2\" value=\"{}\"/></attvalues></node>",
            escape(&node.person.display),
            escape(&node.person.key),
            escape(&node.person.display),
            node.event_count
        );
    }
    out.push_str("    </nodes>\n    <edges>\n");
    for (i, e) in graph.edges().iter().enumerate() {
        let _ = writeln!(
            out,
            "      <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\" weight=\"{}\"/>",
            e.source, e.target, e.weight
        );
    }
    out.push_str("    </edges>\n  </graph>\n</gexf>\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonNode {
    pub index: usize,
    pub key: String,
    pub display: String,
    pub event_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonEdge {
    pub source: String,
    pub target: String,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGraph {
    pub directed: bool,
    pub nodes: Vec<JsonNode>,
    pub edges: Vec<JsonEdge>,
}

pub fn to_json(graph: &CoGraph) -> Result<String> {
    let doc = JsonGraph {
        directed: false,
        nodes: graph
            .nodes()
            .iter()
            .enumerate()
            .map(|(index, n)| JsonNode {
                index,
                key: n.person.key.clone(),
                display: n.person.display.clone(),
                event_count: n.event_count,
            })
            .collect(),
        edges: graph
            .edges()
            .iter()
            .map(|e| JsonEdge {
                source: graph.nodes()[e.source].person.key.clone(),
                target: graph.nodes()[e.target].person.key.clone(),
                weight: e.weight,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}
