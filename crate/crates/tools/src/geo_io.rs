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

//! Heatmap grids, venue tables and the geocode cache file.

use std::io::{Read, Write};

use litnet_core::{GeoPoint, GeocodeCache, HeatmapGrid};

use crate::error::{Error, Result};

/// File stem of a grid: `heatmap_<bin>`, `heatmap_all` when not faceted.
pub fn heatmap_file_name(grid: &HeatmapGrid) -> String {
    format!("heatmap_{}.csv", grid.time_bin.as_deref().unwrap_or("all"))
}

/// Count matrix, first row northernmost, no header.
pub fn write_heatmap_csv<W: Write>(sink: W, grid: &HeatmapGrid) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
    for row in &grid.cells {
        w.write_record(row.iter().map(|c| c.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

pub fn heatmap_json(grids: &[HeatmapGrid]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(grids)?;
    s.push('\n');
    Ok(s)
}

pub fn write_venues<W: Write>(sink: W, venues: &[(String, u64)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["venue_name", "event_count"])?;
    for (name, count) in venues {
        w.write_record([name.as_str(), &count.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads an `address,lat,lon` cache. Rows with empty coordinates record
/// addresses known not to geocode.
pub fn read_cache<R: Read>(source: R, provenance: &str) -> Result<GeocodeCache> {
    let mut reader = csv::Reader::from_reader(source);
    if reader.headers()?.iter().ne(["address", "lat", "lon"]) {
        return Err(Error::Schema("geocode cache header must be `address,lat,lon`".into()));
    }
    let mut cache = GeocodeCache::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let bad = || Error::Schema(format!("geocode cache row {}: bad coordinates", i + 1));
        let coords = match (record[1].trim(), record[2].trim()) {
            ("", "") => None,
            (lat, lon) => {
                let lat = lat.parse().map_err(|_| bad())?;
                let lon = lon.parse().map_err(|_| bad())?;
                Some(GeoPoint::new(lat, lon).map_err(|_| bad())?)
            }
        };
        cache.insert(&record[0], coords, provenance);
    }
    Ok(cache)
}

pub fn write_cache<W: Write>(sink: W, cache: &GeocodeCache) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["address", "lat", "lon"])?;
    for (address, entry) in cache.entries() {
        let (lat, lon) = match entry.coords {
            Some(p) => (p.lat.to_string(), p.lon.to_string()),
            None => (String::new(), String::new()),
        };
        w.write_record([address, &lat, &lon])?;
    }
    w.flush()?;
    Ok(())
}
