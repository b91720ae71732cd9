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

//! Run configuration file.

use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use litnet_core::{ModularityParams, TimeBin, TimeWindow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::export::GraphFormat;
use crate::report_io::ReportFormat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Louvain,
    Greedy,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Louvain => "louvain",
            Method::Greedy => "greedy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl WindowConfig {
    pub fn to_window(self) -> Result<TimeWindow> {
        TimeWindow::new(self.start, self.end).map_err(|e| Error::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DetectionConfig {
    pub method: Method,
    pub resolution: f64,
    pub weighted: bool,
    pub seed: u64,
}

impl Default for DetectionConfig {
    fn default() -> Self {
        let p = ModularityParams::default();
        Self {
            method: Method::Louvain,
            resolution: p.resolution,
            weighted: p.weighted,
            seed: p.seed,
        }
    }
}

impl DetectionConfig {
    pub fn params(&self) -> ModularityParams {
        ModularityParams {
            resolution: self.resolution,
            weighted: self.weighted,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HeatmapConfig {
    pub rows: usize,
    pub cols: usize,
    /// `[min_lat, min_lon, max_lat, max_lon]`; data extent when absent.
    pub bbox: Option<[f64; 4]>,
    pub time_bin: Option<TimeBin>,
}

impl Default for HeatmapConfig {
    fn default() -> Self {
        Self {
            rows: 20,
            cols: 20,
            bbox: None,
            time_bin: None,
        }
    }
}

/// Everything a pipeline run needs. Relative paths in a config file are
/// resolved against the file's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    /// Column mapping JSON; the canonical layout when absent.
    pub mapping: Option<PathBuf>,
    pub aliases: Option<PathBuf>,
    pub dedupe: bool,
    /// Dates accepted at ingest.
    pub validity_window: Option<WindowConfig>,
    /// Graph-building slice; exclusive with `year`.
    pub window: Option<WindowConfig>,
    pub year: Option<i32>,
    pub min_events: u64,
    pub reproject: bool,
    pub detection: DetectionConfig,
    pub output_dir: PathBuf,
    pub export_formats: Vec<String>,
    pub top_n: usize,
    pub labels: Option<PathBuf>,
    pub clustering_exclude_deg1: bool,
    pub metrics_format: String,
    pub report_format: String,
    pub heatmap: HeatmapConfig,
    pub geocode_cache: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            input: None,
            mapping: None,
            aliases: None,
            dedupe: false,
            validity_window: None,
            window: None,
            year: None,
            min_events: 5,
            reproject: false,
            detection: DetectionConfig::default(),
            output_dir: PathBuf::from("out"),
            export_formats: vec!["graphml".into(), "gexf".into()],
            top_n: 10,
            labels: None,
            clustering_exclude_deg1: false,
            metrics_format: "json".into(),
            report_format: "markdown".into(),
            heatmap: HeatmapConfig::default(),
            geocode_cache: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_json(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if let Some(base) = path.parent() {
            cfg.resolve_relative(base);
        }
        Ok(cfg)
    }

    fn resolve_relative(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for p in [
            &mut self.input,
            &mut self.mapping,
            &mut self.aliases,
            &mut self.labels,
            &mut self.geocode_cache,
        ]
        .into_iter()
        .flatten()
        {
            fix(p);
        }
        fix(&mut self.output_dir);
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_events == 0 {
            return Err(Error::Config("min_events must be at least 1".into()));
        }
        if self.top_n == 0 {
            return Err(Error::Config("top_n must be at least 1".into()));
        }
        self.detection
            .params()
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        if self.year.is_some() && self.window.is_some() {
            return Err(Error::Config("`year` and `window` are mutually exclusive".into()));
        }
        self.slice_window()?;
        self.validity()?;
        for f in &self.export_formats {
            f.parse::<GraphFormat>()?;
        }
        self.report_format.parse::<ReportFormat>()?;
        if !matches!(self.metrics_format.as_str(), "json" | "csv") {
            return Err(Error::UnsupportedFormat(self.metrics_format.clone()));
        }
        if self.heatmap.rows == 0 || self.heatmap.cols == 0 {
            return Err(Error::Config("heatmap rows and cols must be at least 1".into()));
        }
        if let Some(b) = self.heatmap.bbox {
            litnet_core::BBox::new(b[0], b[1], b[2], b[3])
                .map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    pub fn slice_window(&self) -> Result<Option<TimeWindow>> {
        match (self.year, self.window) {
            (Some(y), _) => TimeWindow::year(y)
                .map(Some)
                .map_err(|e| Error::Config(e.to_string())),
            (None, Some(w)) => w.to_window().map(Some),
            (None, None) => Ok(None),
        }
    }

    pub fn validity(&self) -> Result<TimeWindow> {
        match self.validity_window {
            Some(w) => w.to_window(),
            None => Ok(TimeWindow::corpus_span()),
        }
    }

    pub fn export_formats(&self) -> Result<Vec<GraphFormat>> {
        self.export_formats.iter().map(|f| f.parse()).collect()
    }
}
