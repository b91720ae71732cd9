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

//! Pipeline stages. Each stage reads and writes documented files in the
//! output directory.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use litnet_core::report::apply_labels;
use litnet_core::{
    build_incidence, community_params, connected_components, dedupe_events, filter_core,
    greedy_modularity, heatmap, louvain, modularity, project, reproject_core, slice,
    venue_frequency, BBox, CoGraph, EventRecord, LowDegreeClustering, Partition, PersonRegistry,
};
use serde::Serialize;

use crate::config::{Method, RunConfig};
use crate::error::{Error, Result};
use crate::export::{self, GraphFormat};
use crate::geo_io;
use crate::graph_io;
use crate::ingest::{self, ColumnMapping};
use crate::metrics_io;
use crate::partition_io::{self, PartitionMeta};
use crate::report_io::{self, ReportFormat};

pub const EVENTS_FILE: &str = "events.csv";
pub const WARNINGS_FILE: &str = "warnings.csv";

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

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn out_dir(cfg: &RunConfig) -> Result<&Path> {
    let dir = cfg.output_dir.as_path();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    Ok(dir)
}

pub fn partition_file_name(method: Method) -> String {
    format!("partition_{}.csv", method.name())
}

/// Reads the chronicle through the configured mapping and aliases,
/// optionally deduplicating.
pub fn ingest_events(cfg: &RunConfig) -> Result<(Vec<EventRecord>, Vec<ingest::Warning>)> {
    let input = cfg
        .input
        .as_deref()
        .ok_or_else(|| Error::Config("no input file configured".into()))?;
    let mapping = match &cfg.mapping {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            ColumnMapping::from_json(&text)?
        }
        None => ColumnMapping::canonical(),
    };
    let mut registry = PersonRegistry::new();
    if let Some(path) = &cfg.aliases {
        ingest::load_aliases(open(path)?, &mut registry)?;
    }
    let parsed = ingest::parse_events(open(input)?, &mapping, &mut registry, &cfg.validity()?)?;
    let mut events = parsed.events;
    if cfg.dedupe {
        events = dedupe_events(events);
        registry.recount(&events);
    }
    Ok((events, parsed.warnings))
}

pub fn cmd_ingest(cfg: &RunConfig) -> Result<String> {
    let (events, warnings) = ingest_events(cfg)?;
    let dir = out_dir(cfg)?;
    ingest::write_events(create(&dir.join(EVENTS_FILE))?, &events)?;
    ingest::write_warnings(create(&dir.join(WARNINGS_FILE))?, &warnings)?;
    Ok(format!(
        "ingest: {} events, {} warnings",
        events.len(),
        warnings.len()
    ))
}

/// Events previously written by the ingest stage.
pub fn load_events(cfg: &RunConfig) -> Result<Vec<EventRecord>> {
    let path = cfg.output_dir.join(EVENTS_FILE);
    let parsed = ingest::parse_events(
        open(&path)?,
        &ColumnMapping::canonical(),
        &mut PersonRegistry::new(),
        &cfg.validity()?,
    )?;
    if let Some(w) = parsed.warnings.first() {
        return Err(Error::Schema(format!(
            "{}: row {}: {}",
            path.display(),
            w.row,
            w.reason
        )));
    }
    Ok(parsed.events)
}

/// Slice, project and core-filter as configured.
pub fn build_graph(cfg: &RunConfig, events: &[EventRecord]) -> Result<CoGraph> {
    let sliced;
    let events = match cfg.slice_window()? {
        Some(w) => {
            sliced = slice(events, &w);
            &sliced[..]
        }
        None => events,
    };
    let inc = build_incidence(events);
    let graph = if cfg.reproject {
        reproject_core(&inc, cfg.min_events)?
    } else {
        filter_core(&inc, &project(&inc), cfg.min_events)?
    };
    Ok(graph)
}

pub fn cmd_build(cfg: &RunConfig) -> Result<String> {
    let events = load_events(cfg)?;
    let graph = build_graph(cfg, &events)?;
    graph_io::save_graph(out_dir(cfg)?, &graph)?;
    Ok(format!(
        "build: {} nodes, {} edges, {} components",
        graph.node_count(),
        graph.edge_count(),
        connected_components(&graph).count
    ))
}

pub fn load_graph(cfg: &RunConfig) -> Result<CoGraph> {
    graph_io::load_graph(&cfg.output_dir)
}

pub fn detect(cfg: &RunConfig, graph: &CoGraph) -> Partition {
    let params = cfg.detection.params();
    match cfg.detection.method {
        Method::Louvain => louvain(graph, &params),
        Method::Greedy => greedy_modularity(graph, &params),
    }
}

pub fn cmd_communities(cfg: &RunConfig) -> Result<String> {
    let graph = load_graph(cfg)?;
    let partition = detect(cfg, &graph);
    let params = cfg.detection.params();
    let q = modularity(&graph, &partition, &params)?;
    let meta = PartitionMeta {
        algorithm: cfg.detection.method.name().into(),
        resolution: params.resolution,
        weighted: params.weighted,
        seed: params.seed,
        modularity: q,
        community_count: partition.count(),
    };
    let dir = out_dir(cfg)?;
    let csv_path = dir.join(partition_file_name(cfg.detection.method));
    partition_io::write_partition(create(&csv_path)?, &graph, &partition)?;
    let mut json = serde_json::to_string_pretty(&meta)?;
    json.push('\n');
    write_file(&csv_path.with_extension("json"), json.as_bytes())?;
    Ok(format!(
        "communities: {} via {}, modularity {q}",
        partition.count(),
        meta.algorithm
    ))
}

fn read_partition(path: &Path, graph: &CoGraph) -> Result<Partition> {
    partition_io::read_partition(open(path)?, graph)
}

#[derive(Serialize)]
struct MetricsMeta<'a> {
    partition: Option<&'a str>,
    low_degree_clustering: LowDegreeClustering,
}

/// Whole-graph metrics; coverage and performance only when `partition` is
/// given.
pub fn cmd_metrics(cfg: &RunConfig, partition: Option<&Path>) -> Result<String> {
    let graph = load_graph(cfg)?;
    let part = partition.map(|p| read_partition(p, &graph)).transpose()?;
    let low_degree = if cfg.clustering_exclude_deg1 {
        LowDegreeClustering::Exclude
    } else {
        LowDegreeClustering::Zero
    };
    let report = metrics_io::compute_report(&graph, part.as_ref(), low_degree)?;
    let dir = out_dir(cfg)?;
    match cfg.metrics_format.as_str() {
        "csv" => metrics_io::write_report_csv(create(&dir.join("metrics.csv"))?, &report)?,
        "json" => write_file(
            &dir.join("metrics.json"),
            metrics_io::report_json(&report)?.as_bytes(),
        )?,
        other => return Err(Error::UnsupportedFormat(other.into())),
    }
    let partition_name = partition.and_then(|p| p.file_name()).and_then(|n| n.to_str());
    let mut meta = serde_json::to_string_pretty(&MetricsMeta {
        partition: partition_name,
        low_degree_clustering: low_degree,
    })?;
    meta.push('\n');
    write_file(&dir.join("metrics.meta.json"), meta.as_bytes())?;
    metrics_io::write_degrees(create(&dir.join("degrees.csv"))?, &graph)?;
    Ok(format!(
        "metrics: n={} m={} components={} clustering={} diameter={} apl={} efficiency={}",
        report.n,
        report.m,
        report.components,
        report.avg_clustering,
        report.diameter,
        report.avg_path_length,
        report.global_efficiency
    ))
}

pub fn default_partition_path(cfg: &RunConfig) -> PathBuf {
    cfg.output_dir.join(partition_file_name(cfg.detection.method))
}

pub fn cmd_report(cfg: &RunConfig, partition: Option<&Path>) -> Result<String> {
    let graph = load_graph(cfg)?;
    let path = partition
        .map(Path::to_path_buf)
        .unwrap_or_else(|| default_partition_path(cfg));
    let part = read_partition(&path, &graph)?;
    let mut reports = community_params(&graph, &part, cfg.top_n)?;
    if let Some(labels) = &cfg.labels {
        apply_labels(&mut reports, &report_io::load_labels(open(labels)?)?);
    }
    let format: ReportFormat = cfg.report_format.parse()?;
    let dir = out_dir(cfg)?;
    write_file(
        &dir.join(format!("report.{}", format.extension())),
        &report_io::render_report(&reports, format)?,
    )?;
    Ok(format!("report: {} communities", reports.len()))
}

pub fn export_graph(dir: &Path, graph: &CoGraph, format: GraphFormat) -> Result<PathBuf> {
    let path = match format {
        GraphFormat::GraphMl => {
            let p = dir.join("graph.graphml");
            write_file(&p, export::to_graphml(graph).as_bytes())?;
            p
        }
        GraphFormat::Gexf => {
            let p = dir.join("graph.gexf");
            write_file(&p, export::to_gexf(graph).as_bytes())?;
            p
        }
        GraphFormat::Json => {
            let p = dir.join("graph.json");
            write_file(&p, export::to_json(graph)?.as_bytes())?;
            p
        }
        GraphFormat::EdgeList => {
            graph_io::write_nodes(create(&dir.join("graph.nodes.csv"))?, graph)?;
            let p = dir.join("graph.edges.csv");
            graph_io::write_edges(create(&p)?, graph)?;
            p
        }
    };
    Ok(path)
}

pub fn cmd_export(cfg: &RunConfig) -> Result<String> {
    let graph = load_graph(cfg)?;
    let dir = out_dir(cfg)?;
    let mut written = Vec::new();
    for format in cfg.export_formats()? {
        let path = export_graph(dir, &graph, format)?;
        written.push(path.file_name().unwrap_or_default().to_string_lossy().into_owned());
    }
    Ok(format!("export: {}", written.join(", ")))
}

pub fn cmd_heatmap(cfg: &RunConfig) -> Result<String> {
    let mut events = load_events(cfg)?;
    if let Some(path) = &cfg.geocode_cache {
        let cache = geo_io::read_cache(open(path)?, "cache")?;
        cache.fill_missing(&mut events);
    }
    let h = &cfg.heatmap;
    let bbox = match h.bbox {
        Some(b) => BBox::new(b[0], b[1], b[2], b[3])?,
        None => BBox::from_extent(&events)?,
    };
    let grids = heatmap(&events, &bbox, h.rows, h.cols, h.time_bin)?;
    let dir = out_dir(cfg)?;
    for grid in &grids {
        geo_io::write_heatmap_csv(create(&dir.join(geo_io::heatmap_file_name(grid)))?, grid)?;
    }
    write_file(&dir.join("heatmap.json"), geo_io::heatmap_json(&grids)?.as_bytes())?;
    let venues = venue_frequency(&events);
    geo_io::write_venues(create(&dir.join("venues.csv"))?, &venues)?;
    let excluded: u64 = grids.iter().map(|g| g.excluded).sum();
    Ok(format!(
        "heatmap: {} grid(s), {} events excluded, {} venues",
        grids.len(),
        excluded,
        venues.len()
    ))
}

/// Every stage in order. The heatmap stage is skipped when no event has
/// coordinates and no box is configured.
pub fn cmd_all(cfg: &RunConfig) -> Result<Vec<String>> {
    let mut log = vec![cmd_ingest(cfg)?, cmd_build(cfg)?, cmd_communities(cfg)?];
    let partition = default_partition_path(cfg);
    log.push(cmd_metrics(cfg, Some(&partition))?);
    log.push(cmd_report(cfg, Some(&partition))?);
    log.push(cmd_export(cfg)?);
    let has_geo = load_events(cfg)?.iter().any(|e| e.geo.is_some());
    if has_geo || cfg.heatmap.bbox.is_some() || cfg.geocode_cache.is_some() {
        log.push(cmd_heatmap(cfg)?);
    } else {
        log.push("heatmap: skipped, no geocoded events".into());
    }
    Ok(log)
}

