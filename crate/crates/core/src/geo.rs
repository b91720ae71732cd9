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

//! Spatial and temporal event-frequency aggregation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use chrono::Datelike;

use crate::error::{Error, Result};
use crate::event::{EventRecord, GeoPoint};
use crate::name::collapse_whitespace;

/// Closed latitude/longitude box in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BBox {
    pub min_lat: f64,
    pub min_lon: f64,
    pub max_lat: f64,
    pub max_lon: f64,
}

/// Half-width in degrees given to a degenerate axis of a data extent.
pub const EXTENT_PAD: f64 = 0.001;

impl BBox {
    pub fn new(min_lat: f64, min_lon: f64, max_lat: f64, max_lon: f64) -> Result<Self> {
        let ok = [min_lat, min_lon, max_lat, max_lon].iter().all(|v| v.is_finite())
            && min_lat < max_lat
            && min_lon < max_lon;
        if !ok {
            return Err(Error::InvalidBBox);
        }
        Ok(Self {
            min_lat,
            min_lon,
            max_lat,
            max_lon,
        })
    }

    /// Smallest box holding every geocoded event. An axis of zero width
    /// (all points on one parallel or meridian) is widened by
    /// [`EXTENT_PAD`] degrees on each side.
    pub fn from_extent(events: &[EventRecord]) -> Result<Self> {
        let mut points = events.iter().filter_map(|e| e.geo);
        let first = points.next().ok_or(Error::InvalidBBox)?;
        let (mut lo, mut hi) = (first, first);
        for p in points {
            lo.lat = lo.lat.min(p.lat);
            lo.lon = lo.lon.min(p.lon);
            hi.lat = hi.lat.max(p.lat);
            hi.lon = hi.lon.max(p.lon);
        }
        let pad = |lo: f64, hi: f64| {
            if lo < hi {
                (lo, hi)
            } else {
                (lo - EXTENT_PAD, hi + EXTENT_PAD)
            }
        };
        let (min_lat, max_lat) = pad(lo.lat, hi.lat);
        let (min_lon, max_lon) = pad(lo.lon, hi.lon);
        Self::new(min_lat, min_lon, max_lat, max_lon)
    }

    pub fn contains(&self, p: GeoPoint) -> bool {
        (self.min_lat..=self.max_lat).contains(&p.lat)
            && (self.min_lon..=self.max_lon).contains(&p.lon)
    }

    /// `(row, col)` of `p`, row 0 at the northern edge. Cells are right-open
    /// in index direction; the far closing edges fold into the last cell.
    pub fn cell(&self, p: GeoPoint, rows: usize, cols: usize) -> Option<(usize, usize)> {
        if !self.contains(p) {
            return None;
        }
        let fr = (self.max_lat - p.lat) / (self.max_lat - self.min_lat) * rows as f64;
        let fc = (p.lon - self.min_lon) / (self.max_lon - self.min_lon) * cols as f64;
        let row = (libm::floor(fr) as usize).min(rows - 1);
        let col = (libm::floor(fc) as usize).min(cols - 1);
        Some((row, col))
    }
}

/// Temporal faceting of a heatmap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum TimeBin {
    Year,
    Month,
}

impl TimeBin {
    pub fn key(&self, event: &EventRecord) -> String {
        match self {
            TimeBin::Year => format!("{:04}", event.date.year()),
            TimeBin::Month => format!("{:04}-{:02}", event.date.year(), event.date.month()),
        }
    }
}

/// Event counts on a regular grid.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HeatmapGrid {
    pub bbox: BBox,
    pub rows: usize,
    pub cols: usize,
    /// `cells[row][col]`, row 0 northernmost.
    pub cells: Vec<Vec<u64>>,
    /// Bin key such as `2019` or `2019-05`; `None` when not faceted.
    pub time_bin: Option<String>,
    /// Events without coordinates or outside the box.
    pub excluded: u64,
}

impl HeatmapGrid {
    fn empty(bbox: BBox, rows: usize, cols: usize, time_bin: Option<String>) -> Self {
        Self {
            bbox,
            rows,
            cols,
            cells: vec![vec![0; cols]; rows],
            time_bin,
            excluded: 0,
        }
    }

    pub fn included(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }
}

/// Bins events into `rows x cols` cells of `bbox`, one grid per time bin
/// (bins in ascending key order, only those holding at least one event) or a
/// single grid when `time_bin` is `None`.
pub fn heatmap(
    events: &[EventRecord],
    bbox: &BBox,
    rows: usize,
    cols: usize,
    time_bin: Option<TimeBin>,
) -> Result<Vec<HeatmapGrid>> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidGrid);
    }
    let bbox = BBox::new(bbox.min_lat, bbox.min_lon, bbox.max_lat, bbox.max_lon)?;
    let mut grids: BTreeMap<Option<String>, HeatmapGrid> = BTreeMap::new();
    if time_bin.is_none() {
        grids.insert(None, HeatmapGrid::empty(bbox, rows, cols, None));
    }
    for ev in events {
        let key = time_bin.map(|b| b.key(ev));
        let grid = grids
            .entry(key.clone())
            .or_insert_with(|| HeatmapGrid::empty(bbox, rows, cols, key));
        match ev.geo.and_then(|p| bbox.cell(p, rows, cols)) {
            Some((r, c)) => grid.cells[r][c] += 1,
            None => grid.excluded += 1,
        }
    }
    Ok(grids.into_values().collect())
}

/// Events per distinct normalized venue name, most frequent first, ties by
/// name.
pub fn venue_frequency(events: &[EventRecord]) -> Vec<(String, u64)> {
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for ev in events {
        *counts.entry(collapse_whitespace(&ev.venue_name)).or_insert(0) += 1;
    }
    let mut out: Vec<(String, u64)> = counts.into_iter().collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CacheEntry {
    /// `None` records an address known not to geocode.
    pub coords: Option<GeoPoint>,
    pub provenance: String,
}

/// Offline address-to-coordinate cache keyed by normalized address.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GeocodeCache {
    entries: BTreeMap<String, CacheEntry>,
}

impl GeocodeCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, address: &str, coords: Option<GeoPoint>, provenance: &str) {
        self.entries.insert(
            collapse_whitespace(address),
            CacheEntry {
                coords,
                provenance: provenance.into(),
            },
        );
    }

    pub fn lookup(&self, address: &str) -> Option<GeoPoint> {
        self.entries
            .get(&collapse_whitespace(address))
            .and_then(|e| e.coords)
    }

    pub fn entry(&self, address: &str) -> Option<&CacheEntry> {
        self.entries.get(&collapse_whitespace(address))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &CacheEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Fills `geo` from the cache where it is missing; returns how many
    /// events gained coordinates.
    pub fn fill_missing(&self, events: &mut [EventRecord]) -> usize {
        let mut filled = 0;
        for ev in events.iter_mut().filter(|e| e.geo.is_none()) {
            if let Some(p) = self.lookup(&ev.address) {
                ev.geo = Some(p);
                filled += 1;
            }
        }
        filled
    }
}
