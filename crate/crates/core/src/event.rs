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

//! Event records, person identities and announcement deduplication.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write as _;

use chrono::{NaiveDate, NaiveTime};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::name::collapse_whitespace;

/// A person identity. Equality and ordering are by `key` only.
#[derive(Debug, Clone)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PersonId {
    pub key: String,
    pub display: String,
}

impl PersonId {
    /// Identity whose display form is the key itself.
    pub fn new(key: impl Into<String>) -> Self {
        let key = key.into();
        Self {
            display: key.clone(),
            key,
        }
    }
}

impl PartialEq for PersonId {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for PersonId {}

impl PartialOrd for PersonId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PersonId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl core::hash::Hash for PersonId {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

/// Latitude/longitude in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Result<Self> {
        if (-90.0..=90.0).contains(&lat) && (-180.0..=180.0).contains(&lon) {
            Ok(Self { lat, lon })
        } else {
            Err(Error::InvalidCoordinate { lat, lon })
        }
    }
}

/// Inclusive calendar-date window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TimeWindow {
    start: NaiveDate,
    end: NaiveDate,
}

impl TimeWindow {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self> {
        if start > end {
            let (mut s, mut e) = (String::new(), String::new());
            let _ = write!(s, "{start}");
            let _ = write!(e, "{end}");
            return Err(Error::InvalidWindow { start: s, end: e });
        }
        Ok(Self { start, end })
    }

    /// January 1 through December 31 of `year`.
    pub fn year(year: i32) -> Result<Self> {
        let start = NaiveDate::from_ymd_opt(year, 1, 1);
        let end = NaiveDate::from_ymd_opt(year, 12, 31);
        match (start, end) {
            (Some(start), Some(end)) => Self::new(start, end),
            _ => Err(Error::InvalidWindow {
                start: String::from("year out of range"),
                end: String::new(),
            }),
        }
    }

    /// May 1999 through October 2019, the span of the newsletter chronicle.
    pub fn corpus_span() -> Self {
        Self {
            start: NaiveDate::from_ymd_opt(1999, 5, 1).unwrap(),
            end: NaiveDate::from_ymd_opt(2019, 10, 31).unwrap(),
        }
    }

    pub fn start(&self) -> NaiveDate {
        self.start
    }

    pub fn end(&self) -> NaiveDate {
        self.end
    }

    pub fn contains(&self, date: NaiveDate) -> bool {
        self.start <= date && date <= self.end
    }
}

/// One announced event.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EventRecord {
    pub event_id: String,
    pub date: NaiveDate,
    pub time: Option<NaiveTime>,
    pub venue_name: String,
    pub address: String,
    pub geo: Option<GeoPoint>,
    pub description: String,
    /// Distinct participants in listing order.
    pub participants: Vec<PersonId>,
}

impl EventRecord {
    /// Builds a record, dropping repeated participants and deriving the
    /// content-hash identifier.
    pub fn new(
        date: NaiveDate,
        time: Option<NaiveTime>,
        venue_name: String,
        address: String,
        geo: Option<GeoPoint>,
        description: String,
        participants: Vec<PersonId>,
    ) -> Self {
        let mut record = Self {
            event_id: String::new(),
            date,
            time,
            venue_name,
            address,
            geo,
            description,
            participants: dedup_participants(participants),
        };
        record.event_id = record.content_hash();
        record
    }

    /// Hex SHA-256 prefix (128 bits) over every content field.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        let mut buf = String::new();
        let _ = write!(buf, "{}", self.date);
        hasher.update(buf.as_bytes());
        hasher.update([0x1f]);
        if let Some(t) = self.time {
            buf.clear();
            let _ = write!(buf, "{t}");
            hasher.update(buf.as_bytes());
        }
        hasher.update([0x1f]);
        hasher.update(self.venue_name.as_bytes());
        hasher.update([0x1f]);
        hasher.update(self.address.as_bytes());
        hasher.update([0x1f]);
        if let Some(g) = self.geo {
            hasher.update(g.lat.to_bits().to_le_bytes());
            hasher.update(g.lon.to_bits().to_le_bytes());
        }
        hasher.update([0x1f]);
        hasher.update(self.description.as_bytes());
        for p in &self.participants {
            hasher.update([0x1e]);
            hasher.update(p.key.as_bytes());
        }
        hex_prefix(&hasher.finalize(), 16)
    }
}

fn hex_prefix(bytes: &[u8], len: usize) -> String {
    let mut out = String::with_capacity(len * 2);
    for b in &bytes[..len] {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Removes repeated persons, keeping the first listing.
pub fn dedup_participants(participants: Vec<PersonId>) -> Vec<PersonId> {
    let mut seen = BTreeSet::new();
    participants
        .into_iter()
        .filter(|p| seen.insert(p.key.clone()))
        .collect()
}

/// Collapses repeated announcements.
///
/// Records sharing (date, normalized venue, description hash) are merged into
/// the first occurrence, whose participant list is extended with the others'
/// participants it does not already contain.
pub fn dedupe_events(events: Vec<EventRecord>) -> Vec<EventRecord> {
    let mut index: BTreeMap<(NaiveDate, String, [u8; 32]), usize> = BTreeMap::new();
    let mut out: Vec<EventRecord> = Vec::with_capacity(events.len());
    for ev in events {
        let key = (
            ev.date,
            collapse_whitespace(&ev.venue_name),
            Sha256::digest(ev.description.as_bytes()).into(),
        );
        match index.get(&key) {
            Some(&slot) => {
                let kept = &mut out[slot];
                for p in ev.participants {
                    if !kept.participants.contains(&p) {
                        kept.participants.push(p);
                    }
                }
            }
            None => {
                index.insert(key, out.len());
                out.push(ev);
            }
        }
    }
    out
}
