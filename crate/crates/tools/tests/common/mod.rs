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

//! Fixtures and checkers shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::{Command, Output};

use litnet_core::graph::Node;
use litnet_core::{CoGraph, PersonId};
use rand::seq::SliceRandom;
use rand::Rng;
use roxmltree::{Document, Node as XmlNode};

pub const GRAPHML_NS: &str = "http://graphml.graphdrawing.org/xmlns";
pub const GEXF_NS: &str = "http://gexf.net/1.3";

/// Path of the built `litnet` binary.
pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_litnet")
}

pub fn litnet(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn litnet")
}

/// Name fragments that exercise escaping in every output format.
const AWKWARD: [&str; 8] = [
    "Анна Ахматова",
    "O'Brien & Sons",
    "<b>bold</b>",
    "quote \"q\"",
    "comma, name",
    "Ёлка ё",
    "tab\tinside",
    "semi-colon",
];

/// G(n, p) with awkward labels and weights in `1..=max_weight`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, max_weight: u64) -> CoGraph {
    let mut keys: BTreeSet<String> = BTreeSet::new();
    while keys.len() < n {
        let i = keys.len();
        keys.insert(format!("{} {i:03}", AWKWARD[rng.random_range(0..AWKWARD.len())]));
    }
    let nodes: Vec<Node> = keys
        .into_iter()
        .map(|k| Node {
            person: PersonId::new(k),
            event_count: rng.random_range(1..50),
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b, rng.random_range(1..=max_weight)));
            }
        }
    }
    edges.shuffle(rng);
    CoGraph::new(nodes, edges).unwrap()
}

/// Two five-cliques joined by one bridge edge.
pub fn two_k5_bridge() -> CoGraph {
    let mut edges = Vec::new();
    for base in [0, 5] {
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((base + a, base + b));
            }
        }
    }
    edges.push((4, 5));
    CoGraph::unlabeled(10, &edges).unwrap()
}

/// Canonical-layout chronicle rows; `None` fields are left empty.
pub fn chronicle_csv(rows: &[[&str; 9]]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "event_id", "date", "time", "venue_name", "address", "latitude", "longitude",
        "description", "participants",
    ])
    .unwrap();
    for r in rows {
        w.write_record(r).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// A small chronicle with two dense groups joined by one shared reading,
/// located events and one row without coordinates.
pub fn sample_chronicle() -> String {
    chronicle_csv(&[
        ["", "2005-03-01", "19:00", "Club A", "Nevsky 1", "59.93", "30.31", "Reading one", "Ivan;Olga;Petr"],
        ["", "2005-04-01", "", "Club B", "Liteyny 5", "59.94", "30.35", "Reading two", "Ivan;Olga;Petr"],
        ["", "2005-05-11", "18:00", "Club A", "Nevsky 1", "59.93", "30.31", "Reading three", "Ivan;Olga"],
        ["", "2006-01-20", "", "Library", "Sadovaya 2", "59.92", "30.32", "Poetry night", "Anna;Boris;Vera"],
        ["", "2006-02-20", "20:00", "Library", "Sadovaya 2", "59.92", "30.32", "Poetry night two", "Anna;Boris;Vera"],
        ["", "2006-03-20", "", "Cafe", "", "", "", "Joint reading", "Petr;Anna"],
        ["", "2007-07-07", "", "Club B", "Liteyny 5", "59.94", "30.35", "Solo", "Gleb"],
    ])
}

// ---------------------------------------------------------------- GraphML

/// Structural validation of a GraphML document against the constraints of
/// the GraphML 1.0 structural schema: element placement and order, required
/// and enumerated attributes, key/id uniqueness and key references.
pub fn validate_graphml(text: &str) -> Result<(), String> {
    let doc = Document::parse(text).map_err(|e| e.to_string())?;
    let root = doc.root_element();
    expect_name(root, GRAPHML_NS, "graphml")?;
    let children = elements(root);
    let mut keys: BTreeMap<String, (String, String)> = BTreeMap::new();
    let mut seen_graph = false;
    for (i, el) in children.iter().enumerate() {
        match el.tag_name().name() {
            "desc" if i == 0 => {}
            "key" => {
                if seen_graph {
                    return Err("key after graph".into());
                }
                let id = required(*el, "id")?;
                let domain = el.attribute("for").unwrap_or("all");
                one_of(domain, &["graph", "node", "edge", "hyperedge", "port", "endpoint", "all", "graphml"], "key/@for")?;
                let ty = el.attribute("attr.type").unwrap_or("string");
                one_of(ty, &["boolean", "int", "long", "float", "double", "string"], "key/@attr.type")?;
                if keys.insert(id.to_string(), (domain.to_string(), ty.to_string())).is_some() {
                    return Err(format!("duplicate key id `{id}`"));
                }
                for c in elements(*el) {
                    one_of(c.tag_name().name(), &["desc", "default"], "key child")?;
                }
            }
            "graph" => {
                seen_graph = true;
                validate_graphml_graph(*el, &keys)?;
            }
            "data" => check_data(*el, &keys, "graphml")?,
            other => return Err(format!("unexpected element `{other}` under graphml")),
        }
    }
    if !seen_graph {
        return Err("no graph element".into());
    }
    Ok(())
}

fn validate_graphml_graph(graph: XmlNode, keys: &BTreeMap<String, (String, String)>) -> Result<(), String> {
    let edgedefault = required(graph, "edgedefault")?;
    one_of(edgedefault, &["directed", "undirected"], "graph/@edgedefault")?;
    let mut node_ids = BTreeSet::new();
    let mut edge_ids = BTreeSet::new();
    let mut edges = Vec::new();
    for el in elements(graph) {
        expect_ns(el, GRAPHML_NS)?;
        match el.tag_name().name() {
            "desc" => {}
            "data" => check_data(el, keys, "graph")?,
            "node" => {
                let id = required(el, "id")?;
                if !node_ids.insert(id.to_string()) {
                    return Err(format!("duplicate node id `{id}`"));
                }
                for c in elements(el) {
                    match c.tag_name().name() {
                        "data" => check_data(c, keys, "node")?,
                        "desc" | "port" | "graph" | "locator" => {}
                        other => return Err(format!("unexpected `{other}` in node")),
                    }
                }
            }
            "edge" => {
                if let Some(id) = el.attribute("id") {
                    if !edge_ids.insert(id.to_string()) {
                        return Err(format!("duplicate edge id `{id}`"));
                    }
                }
                if let Some(d) = el.attribute("directed") {
                    one_of(d, &["true", "false"], "edge/@directed")?;
                }
                edges.push((required(el, "source")?.to_string(), required(el, "target")?.to_string()));
                for c in elements(el) {
                    match c.tag_name().name() {
                        "data" => check_data(c, keys, "edge")?,
                        "desc" | "graph" => {}
                        other => return Err(format!("unexpected `{other}` in edge")),
                    }
                }
            }
            "hyperedge" | "locator" => {}
            other => return Err(format!("unexpected element `{other}` under graph")),
        }
    }
    for (s, t) in edges {
        if !node_ids.contains(&s) || !node_ids.contains(&t) {
            return Err(format!("edge {s} -> {t} references an unknown node"));
        }
    }
    Ok(())
}

fn check_data(el: XmlNode, keys: &BTreeMap<String, (String, String)>, domain: &str) -> Result<(), String> {
    let key = required(el, "key")?;
    let (for_, ty) = keys.get(key).ok_or_else(|| format!("data references unknown key `{key}`"))?;
    if for_ != domain && for_ != "all" {
        return Err(format!("key `{key}` is for {for_}, used on {domain}"));
    }
    let value = el.text().unwrap_or("");
    let ok = match ty.as_str() {
        "int" => value.parse::<i32>().is_ok(),
        "long" => value.parse::<i64>().is_ok(),
        "float" | "double" => value.parse::<f64>().is_ok(),
        "boolean" => value == "true" || value == "false",
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("data `{value}` is not a valid {ty}"))
    }
}

// ---------------------------------------------------------------- GEXF

/// Structural validation of a GEXF document against the GEXF 1.3 schema:
/// root version, meta and graph placement, attribute declarations, node and
/// edge required attributes, enumerations and value types.
pub fn validate_gexf(text: &str) -> Result<(), String> {
    let doc = Document::parse(text).map_err(|e| e.to_string())?;
    let root = doc.root_element();
    expect_name(root, GEXF_NS, "gexf")?;
    if required(root, "version")? != "1.3" {
        return Err("gexf/@version must be 1.3".into());
    }
    let children = elements(root);
    let names: Vec<&str> = children.iter().map(|c| c.tag_name().name()).collect();
    let graph = match names.as_slice() {
        ["meta", "graph"] => {
            for c in elements(children[0]) {
                one_of(c.tag_name().name(), &["creator", "keywords", "description"], "meta child")?;
            }
            children[1]
        }
        ["graph"] => children[0],
        other => return Err(format!("gexf children must be meta?, graph; found {other:?}")),
    };
    if let Some(mode) = graph.attribute("mode") {
        one_of(mode, &["static", "dynamic"], "graph/@mode")?;
    }
    if let Some(t) = graph.attribute("defaultedgetype") {
        one_of(t, &["directed", "undirected", "mutual"], "graph/@defaultedgetype")?;
    }
    let mut attrs: BTreeMap<(String, String), String> = BTreeMap::new();
    let mut node_ids = BTreeSet::new();
    let mut stage = 0;
    for el in elements(graph) {
        expect_ns(el, GEXF_NS)?;
        match el.tag_name().name() {
            "attributes" => {
                if stage > 0 {
                    return Err("attributes after nodes".into());
                }
                let class = required(el, "class")?;
                one_of(class, &["node", "edge"], "attributes/@class")?;
                for a in elements(el) {
                    expect_name(a, GEXF_NS, "attribute")?;
                    let id = required(a, "id")?;
                    required(a, "title")?;
                    let ty = required(a, "type")?;
                    one_of(
                        ty,
                        &[
                            "integer", "long", "double", "float", "boolean", "string", "liststring",
                            "listinteger", "listlong", "listdouble", "listfloat", "listboolean",
                            "anyURI", "bigdecimal", "biginteger", "byte", "char", "date", "listbyte",
                            "listchar", "listshort", "short", "listbigdecimal", "listbiginteger",
                        ],
                        "attribute/@type",
                    )?;
                    if attrs.insert((class.to_string(), id.to_string()), ty.to_string()).is_some() {
                        return Err(format!("duplicate {class} attribute id `{id}`"));
                    }
                }
            }
            "nodes" => {
                if stage > 0 {
                    return Err("nodes must come once, before edges".into());
                }
                stage = 1;
                for n in elements(el) {
                    expect_name(n, GEXF_NS, "node")?;
                    let id = required(n, "id")?;
                    if !node_ids.insert(id.to_string()) {
                        return Err(format!("duplicate node id `{id}`"));
                    }
                    check_attvalues(n, "node", &attrs)?;
                }
            }
            "edges" => {
                if stage != 1 {
                    return Err("edges must follow nodes".into());
                }
                stage = 2;
                let mut edge_ids = BTreeSet::new();
                for e in elements(el) {
                    expect_name(e, GEXF_NS, "edge")?;
                    let id = required(e, "id")?;
                    if !edge_ids.insert(id.to_string()) {
                        return Err(format!("duplicate edge id `{id}`"));
                    }
                    for end in ["source", "target"] {
                        let v = required(e, end)?;
                        if !node_ids.contains(v) {
                            return Err(format!("edge {id} {end} `{v}` is not a node"));
                        }
                    }
                    if let Some(w) = e.attribute("weight") {
                        w.parse::<f32>().map_err(|_| format!("weight `{w}` is not a float"))?;
                    }
                    check_attvalues(e, "edge", &attrs)?;
                }
            }
            other => return Err(format!("unexpected element `{other}` under graph")),
        }
    }
    Ok(())
}

fn check_attvalues(el: XmlNode, class: &str, attrs: &BTreeMap<(String, String), String>) -> Result<(), String> {
    for c in elements(el) {
        match c.tag_name().name() {
            "attvalues" => {
                for v in elements(c) {
                    expect_name(v, GEXF_NS, "attvalue")?;
                    let for_ = required(v, "for")?;
                    let value = required(v, "value")?;
                    let ty = attrs
                        .get(&(class.to_string(), for_.to_string()))
                        .ok_or_else(|| format!("attvalue for undeclared {class} attribute `{for_}`"))?;
                    let ok = match ty.as_str() {
                        "integer" => value.parse::<i32>().is_ok(),
                        "long" => value.parse::<i64>().is_ok(),
                        "double" | "float" => value.parse::<f64>().is_ok(),
                        "boolean" => value == "true" || value == "false",
                        _ => true,
                    };
                    if !ok {
                        return Err(format!("attvalue `{value}` is not a valid {ty}"));
                    }
                }
            }
            "spells" | "color" | "position" | "size" | "shape" | "thickness" | "parents" | "nodes"
            | "edges" => {}
            other => return Err(format!("unexpected `{other}` in {class}")),
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- helpers

fn elements<'a, 'i>(node: XmlNode<'a, 'i>) -> Vec<XmlNode<'a, 'i>> {
    node.children().filter(|c| c.is_element()).collect()
}

fn expect_ns(node: XmlNode, ns: &str) -> Result<(), String> {
    if node.tag_name().namespace() == Some(ns) {
        Ok(())
    } else {
        Err(format!("`{}` is not in namespace {ns}", node.tag_name().name()))
    }
}

fn expect_name(node: XmlNode, ns: &str, name: &str) -> Result<(), String> {
    expect_ns(node, ns)?;
    if node.tag_name().name() == name {
        Ok(())
    } else {
        Err(format!("expected `{name}`, found `{}`", node.tag_name().name()))
    }
}

fn required<'a>(node: XmlNode<'a, '_>, attr: &str) -> Result<&'a str, String> {
    node.attribute(attr)
        .ok_or_else(|| format!("`{}` lacks required @{attr}", node.tag_name().name()))
}

fn one_of(value: &str, allowed: &[&str], what: &str) -> Result<(), String> {
    if allowed.contains(&value) {
        Ok(())
    } else {
        Err(format!("{what} `{value}` not in {allowed:?}"))
    }
}
