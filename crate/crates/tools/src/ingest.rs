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

//! Chronicle CSV reading and writing.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use chrono::{NaiveDate, NaiveTime};
use litnet_core::{EventRecord, GeoPoint, PersonId, PersonRegistry, TimeWindow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical record fields a source column can map to.
pub const FIELDS: [&str; 9] = [
    "event_id",
    "date",
    "time",
    "venue_name",
    "address",
    "latitude",
    "longitude",
    "description",
    "participants",
];

const REQUIRED: [&str; 4] = ["date", "venue_name", "description", "participants"];

/// Maps source CSV columns onto record fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnMapping {
    /// Source column name -> canonical field name.
    pub columns: BTreeMap<String, String>,
    #[serde(default = "default_delimiter")]
    pub participant_delimiter: String,
}

fn default_delimiter() -> String {
    ";".into()
}

impl ColumnMapping {
    /// Identity mapping over every canonical field, as written by
    /// [`write_events`].
    pub fn canonical() -> Self {
        Self {
            columns: FIELDS.iter().map(|f| (f.to_string(), f.to_string())).collect(),
            participant_delimiter: default_delimiter(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mapping: Self =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("column mapping: {e}")))?;
        mapping.validate()?;
        Ok(mapping)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (source, field) in &self.columns {
            if !FIELDS.contains(&field.as_str()) {
                return Err(Error::Config(format!(
                    "column `{source}` maps to unknown field `{field}`"
                )));
            }
            if !seen.insert(field.as_str()) {
                return Err(Error::Config(format!("field `{field}` is mapped more than once")));
            }
        }
        for field in REQUIRED {
            if !seen.contains(field) {
                return Err(Error::Config(format!("required field `{field}` is not mapped")));
            }
        }
        if seen.contains("latitude") != seen.contains("longitude") {
            return Err(Error::Config(
                "latitude and longitude must be mapped together".into(),
            ));
        }
        if self.participant_delimiter.chars().count() != 1 {
            return Err(Error::Config(
                "participant_delimiter must be a single character".into(),
            ));
        }
        Ok(())
    }

    pub fn delimiter(&self) -> char {
        self.participant_delimiter.chars().next().unwrap_or(';')
    }
}

/// A skipped data row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warning {
    /// 1-based data row number (the header is not counted).
    pub row: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedEvents {
    pub events: Vec<EventRecord>,
    pub warnings: Vec<Warning>,
}

/// Column positions of the mapped fields.
struct Layout {
    index: BTreeMap<&'static str, usize>,
}

impl Layout {
    fn new(headers: &csv::StringRecord, mapping: &ColumnMapping) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (source, field) in &mapping.columns {
            let pos = headers
                .iter()
                .position(|h| h == source)
                .ok_or_else(|| Error::Schema(format!("missing column `{source}`")))?;
            let field = FIELDS.iter().find(|f| **f == field).copied().unwrap_or_default();
            index.insert(field, pos);
        }
        Ok(Self { index })
    }

    fn get<'r>(&self, record: &'r csv::StringRecord, field: &str) -> &'r str {
        self.index
            .get(field)
            .and_then(|&i| record.get(i))
            .unwrap_or("")
    }
}

/// Reads chronicle rows into event records.
///
/// Every data row yields either a record or a warning, in input order.
/// Participants are resolved through `registry`, which also counts their
/// events. Rows dated outside `window` are rejected with a warning.
pub fn parse_events<R: Read>(
    source: R,
    mapping: &ColumnMapping,
    registry: &mut PersonRegistry,
    window: &TimeWindow,
) -> Result<ParsedEvents> {
    mapping.validate()?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(source);
    let headers = match reader.headers() {
        Ok(h) => h.clone(),
        Err(e) if matches!(e.kind(), csv::ErrorKind::Io(_)) => return Err(e.into()),
        Err(e) => return Err(Error::Schema(format!("unreadable header: {e}"))),
    };
    if headers.is_empty() {
        return Err(Error::Schema("header row is missing".into()));
    }
    let layout = Layout::new(&headers, mapping)?;
    let mut parsed = ParsedEvents::default();
    let mut record = csv::StringRecord::new();
    let mut row = 0u64;
    loop {
        match reader.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {
                row += 1;
                match parse_row(&record, &layout, mapping, registry, window) {
                    Ok(ev) => {
                        registry.record_event(&ev);
                        parsed.events.push(ev);
                    }
                    Err(reason) => parsed.warnings.push(Warning { row, reason }),
                }
            }
            Err(e) => match e.kind() {
                csv::ErrorKind::Io(_) => return Err(e.into()),
                _ => {
                    row += 1;
                    parsed.warnings.push(Warning {
                        row,
                        reason: format!("malformed row: {e}"),
                    });
                }
            },
        }
    }
    Ok(parsed)
}

fn parse_row(
    record: &csv::StringRecord,
    layout: &Layout,
    mapping: &ColumnMapping,
    registry: &mut PersonRegistry,
    window: &TimeWindow,
) -> std::result::Result<EventRecord, String> {
    let field = |name| layout.get(record, name);

    let date_text = field("date").trim();
    if date_text.is_empty() {
        return Err("missing date".into());
    }
    let date = NaiveDate::parse_from_str(date_text, "%Y-%m-%d")
        .map_err(|e| format!("invalid date `{date_text}`: {e}"))?;
    if !window.contains(date) {
        return Err(format!("date {date} outside {}..{}", window.start(), window.end()));
    }

    let time_text = field("time").trim();
    let time = if time_text.is_empty() {
        None
    } else {
        let t = NaiveTime::parse_from_str(time_text, "%H:%M:%S")
            .or_else(|_| NaiveTime::parse_from_str(time_text, "%H:%M"))
            .map_err(|e| format!("invalid time `{time_text}`: {e}"))?;
        Some(t)
    };

    let (lat, lon) = (field("latitude").trim(), field("longitude").trim());
    let geo = match (lat.is_empty(), lon.is_empty()) {
        (true, true) => None,
        (false, false) => {
            let lat: f64 = lat.parse().map_err(|_| format!("invalid latitude `{lat}`"))?;
            let lon: f64 = lon.parse().map_err(|_| format!("invalid longitude `{lon}`"))?;
            Some(GeoPoint::new(lat, lon).map_err(|e| e.to_string())?)
        }
        _ => return Err("latitude and longitude must both be present or both empty".into()),
    };

    let mut participants = Vec::new();
    for raw in field("participants").split(mapping.delimiter()) {
        if raw.trim().is_empty() {
            continue;
        }
        participants.push(registry.resolve(raw).map_err(|e| e.to_string())?);
    }

    let mut ev = EventRecord::new(
        date,
        time,
        field("venue_name").to_string(),
        field("address").to_string(),
        geo,
        field("description").to_string(),
        participants,
    );
    let id = field("event_id").trim();
    if !id.is_empty() {
        ev.event_id = id.to_string();
    }
    Ok(ev)
}

/// Writes records with the canonical header, readable back through
/// [`ColumnMapping::canonical`].
pub fn write_events<W: Write>(sink: W, events: &[EventRecord]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(FIELDS)?;
    for ev in events {
        if let Some(p) = ev.participants.iter().find(|p| p.key.contains(';')) {
            return Err(Error::Schema(format!(
                "participant `{}` contains the list delimiter",
                p.key
            )));
        }
        let participants: Vec<&str> = ev.participants.iter().map(|p| p.key.as_str()).collect();
        let (lat, lon) = match ev.geo {
            Some(g) => (g.lat.to_string(), g.lon.to_string()),
            None => (String::new(), String::new()),
        };
        writer.write_record([
            ev.event_id.as_str(),
            &ev.date.format("%Y-%m-%d").to_string(),
            &ev.time.map(|t| t.format("%H:%M:%S").to_string()).unwrap_or_default(),
            &ev.venue_name,
            &ev.address,
            &lat,
            &lon,
            &ev.description,
            &participants.join(";"),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_warnings<W: Write>(sink: W, warnings: &[Warning]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(["row", "reason"])?;
    for w in warnings {
        writer.write_record([w.row.to_string().as_str(), &w.reason])?;
    }
    writer.flush()?;
    Ok(())
}

/// Loads `alias,canonical` rows into `registry`.
pub fn load_aliases<R: Read>(source: R, registry: &mut PersonRegistry) -> Result<usize> {
    let mut reader = csv::Reader::from_reader(source);
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["alias", "canonical"] {
        return Err(Error::Schema("alias file header must be `alias,canonical`".into()));
    }
    let mut count = 0;
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        registry
            .add_alias(&record[0], &record[1])
            .map_err(|e| Error::Schema(format!("alias row {}: {e}", i + 1)))?;
        count += 1;
    }
    Ok(count)
}

/// Participant keys of every record, for comparisons.
pub fn participant_keys(ev: &EventRecord) -> Vec<&str> {
    ev.participants.iter().map(|p: &PersonId| p.key.as_str()).collect()
}
