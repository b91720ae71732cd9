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

//! Command-line parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};
use litnet_core::TimeBin;

use crate::commands;
use crate::config::{Method, RunConfig, WindowConfig};
use crate::error::Result;

#[derive(Debug, Parser)]
#[command(name = "litnet", version, about = "Co-participation network analysis of event chronicles")]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (overrides `output_dir`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse the chronicle CSV into events.csv and warnings.csv.
    Ingest(IngestArgs),
    /// Project events into nodes.csv and edges.csv.
    Build(BuildArgs),
    /// Whole-graph metrics into metrics.json (or metrics.csv) and degrees.csv.
    Metrics(MetricsArgs),
    /// Community detection into partition_<method>.csv and .json.
    Communities(DetectArgs),
    /// Per-community report.
    Report(ReportArgs),
    /// Graph exchange files.
    Export(ExportArgs),
    /// Event-frequency heatmaps and venue counts.
    Heatmap(HeatmapArgs),
    /// Every stage in order.
    All(AllArgs),
}

#[derive(Debug, Args, Default)]
pub struct IngestArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub mapping: Option<PathBuf>,
    #[arg(long)]
    pub aliases: Option<PathBuf>,
    /// Collapse repeated announcements.
    #[arg(long)]
    pub dedupe: bool,
}

#[derive(Debug, Args, Default)]
pub struct BuildArgs {
    /// Keep only events of this calendar year.
    #[arg(long, conflicts_with = "window")]
    pub year: Option<i32>,
    /// Keep only events dated START..=END (YYYY-MM-DD).
    #[arg(long, num_args = 2, value_names = ["START", "END"])]
    pub window: Option<Vec<NaiveDate>>,
    /// Core-actor threshold; 1 keeps everyone.
    #[arg(long)]
    pub min_events: Option<u64>,
    /// Re-project restricted events instead of inducing a subgraph.
    #[arg(long)]
    pub reproject: bool,
}

#[derive(Debug, Args, Default)]
pub struct DetectArgs {
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,
    #[arg(long)]
    pub resolution: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub unweighted: bool,
}

#[derive(Debug, Args, Default)]
pub struct MetricsArgs {
    /// Partition file for coverage and performance.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// json or csv.
    #[arg(long)]
    pub format: Option<String>,
    /// Leave nodes of degree below two out of the clustering mean.
    #[arg(long)]
    pub clustering_exclude_deg1: bool,
}

#[derive(Debug, Args, Default)]
pub struct ReportArgs {
    /// Defaults to partition_<method>.csv in the output directory.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// markdown, csv or json.
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub top_n: Option<usize>,
    #[command(flatten)]
    pub detect: DetectArgs,
}

#[derive(Debug, Args, Default)]
pub struct ExportArgs {
    /// graphml, gexf, edgelist or json; repeatable.
    #[arg(long)]
    pub format: Vec<String>,
}

#[derive(Debug, Args, Default)]
pub struct HeatmapArgs {
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    /// MIN_LAT MIN_LON MAX_LAT MAX_LON
    #[arg(long, num_args = 4, allow_negative_numbers = true)]
    pub bbox: Option<Vec<f64>>,
    #[arg(long, value_parser = parse_time_bin)]
    pub time_bin: Option<TimeBin>,
    #[arg(long)]
    pub geocode_cache: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct AllArgs {
    #[command(flatten)]
    pub ingest: IngestArgs,
    #[command(flatten)]
    pub build: BuildArgs,
    #[command(flatten)]
    pub detect: DetectArgs,
    #[arg(long)]
    pub top_n: Option<usize>,
    #[arg(long)]
    pub clustering_exclude_deg1: bool,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    match s {
        "louvain" => Ok(Method::Louvain),
        "greedy" => Ok(Method::Greedy),
        other => Err(format!("unknown method `{other}` (louvain|greedy)")),
    }
}

fn parse_time_bin(s: &str) -> std::result::Result<TimeBin, String> {
    match s {
        "year" => Ok(TimeBin::Year),
        "month" => Ok(TimeBin::Month),
        other => Err(format!("unknown time bin `{other}` (year|month)")),
    }
}

impl IngestArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(p) = &self.input {
            cfg.input = Some(p.clone());
        }
        if let Some(p) = &self.mapping {
            cfg.mapping = Some(p.clone());
        }
        if let Some(p) = &self.aliases {
            cfg.aliases = Some(p.clone());
        }
        cfg.dedupe |= self.dedupe;
    }
}

impl BuildArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(y) = self.year {
            cfg.year = Some(y);
            cfg.window = None;
        }
        if let Some(w) = &self.window {
            cfg.window = Some(WindowConfig {
                start: w[0],
                end: w[1],
            });
            cfg.year = None;
        }
        if let Some(m) = self.min_events {
            cfg.min_events = m;
        }
        cfg.reproject |= self.reproject;
    }
}

impl DetectArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(m) = self.method {
            cfg.detection.method = m;
        }
        if let Some(r) = self.resolution {
            cfg.detection.resolution = r;
        }
        if let Some(s) = self.seed {
            cfg.detection.seed = s;
        }
        if self.unweighted {
            cfg.detection.weighted = false;
        }
    }
}

/// Loads the configuration, applies command-line overrides and runs the
/// command. Returns the summary lines.
pub fn run(cli: Cli) -> Result<Vec<String>> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.output_dir = out.clone();
    }
    let mut partition = None;
    match &cli.command {
        Command::Ingest(a) => a.apply(&mut cfg),
        Command::Build(a) => a.apply(&mut cfg),
        Command::Communities(a) => a.apply(&mut cfg),
        Command::Metrics(a) => {
            partition = a.partition.clone();
            if let Some(f) = &a.format {
                cfg.metrics_format = f.clone();
            }
            cfg.clustering_exclude_deg1 |= a.clustering_exclude_deg1;
        }
        Command::Report(a) => {
            partition = a.partition.clone();
            if let Some(p) = &a.labels {
                cfg.labels = Some(p.clone());
            }
            if let Some(f) = &a.format {
                cfg.report_format = f.clone();
            }
            if let Some(n) = a.top_n {
                cfg.top_n = n;
            }
            a.detect.apply(&mut cfg);
        }
        Command::Export(a) => {
            if !a.format.is_empty() {
                cfg.export_formats = a.format.clone();
            }
        }
        Command::Heatmap(a) => {
            if let Some(r) = a.rows {
                cfg.heatmap.rows = r;
            }
            if let Some(c) = a.cols {
                cfg.heatmap.cols = c;
            }
            if let Some(b) = &a.bbox {
                cfg.heatmap.bbox = Some([b[0], b[1], b[2], b[3]]);
            }
            if let Some(t) = a.time_bin {
                cfg.heatmap.time_bin = Some(t);
            }
            if let Some(p) = &a.geocode_cache {
                cfg.geocode_cache = Some(p.clone());
            }
        }
        Command::All(a) => {
            a.ingest.apply(&mut cfg);
            a.build.apply(&mut cfg);
            a.detect.apply(&mut cfg);
            if let Some(n) = a.top_n {
                cfg.top_n = n;
            }
            cfg.clustering_exclude_deg1 |= a.clustering_exclude_deg1;
        }
    }
    cfg.validate()?;
    Ok(match &cli.command {
        Command::Ingest(_) => vec![commands::cmd_ingest(&cfg)?],
        Command::Build(_) => vec![commands::cmd_build(&cfg)?],
        Command::Metrics(_) => vec![commands::cmd_metrics(&cfg, partition.as_deref())?],
        Command::Communities(_) => vec![commands::cmd_communities(&cfg)?],
        Command::Report(_) => vec![commands::cmd_report(&cfg, partition.as_deref())?],
        Command::Export(_) => vec![commands::cmd_export(&cfg)?],
        Command::Heatmap(_) => vec![commands::cmd_heatmap(&cfg)?],
        Command::All(_) => commands::cmd_all(&cfg)?,
    })
}

/// Entry point shared by the binary and tests; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

