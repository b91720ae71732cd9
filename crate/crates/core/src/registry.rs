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

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::event::{EventRecord, PersonId};
use crate::name::normalize_name;

/// Canonical person identities, their aliases and per-person event counts.
#[derive(Debug, Clone, Default)]
pub struct PersonRegistry {
    canonical: BTreeMap<String, PersonId>,
    aliases: BTreeMap<String, String>,
    event_count: BTreeMap<String, u64>,
}

impl PersonRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `alias` as another spelling of `canonical`.
    ///
    /// Aliases always point at canonical keys, so resolution is one step.
    pub fn add_alias(&mut self, alias: &str, canonical: &str) -> Result<()> {
        let alias = normalize_name(alias)?;
        let canonical = normalize_name(canonical)?;
        if alias == canonical
            || self.aliases.contains_key(&canonical)
            || self.aliases.values().any(|c| *c == alias)
        {
            return Err(Error::AliasChain { alias, canonical });
        }
        if let Some(existing) = self.aliases.get(&alias) {
            if *existing != canonical {
                return Err(Error::AliasChain { alias, canonical });
            }
        }
        self.canonical
            .entry(canonical.clone())
            .or_insert_with(|| PersonId::new(canonical.clone()));
        self.aliases.insert(alias, canonical);
        Ok(())
    }

    /// Resolves a raw name to its canonical identity, registering it if new.
    pub fn resolve(&mut self, raw: &str) -> Result<PersonId> {
        let key = normalize_name(raw)?;
        let key = match self.aliases.get(&key) {
            Some(canonical) => canonical.clone(),
            None => key,
        };
        Ok(self
            .canonical
            .entry(key.clone())
            .or_insert_with(|| PersonId::new(key))
            .clone())
    }

    /// Adds one participation for every person listed in `event`.
    pub fn record_event(&mut self, event: &EventRecord) {
        for p in &event.participants {
            *self.event_count.entry(p.key.clone()).or_insert(0) += 1;
        }
    }

    /// Recomputes every event count from `events`.
    pub fn recount<'a>(&mut self, events: impl IntoIterator<Item = &'a EventRecord>) {
        self.event_count.clear();
        for ev in events {
            self.record_event(ev);
        }
    }

    pub fn event_count(&self, person: &PersonId) -> u64 {
        self.event_count.get(&person.key).copied().unwrap_or(0)
    }

    pub fn get(&self, key: &str) -> Option<&PersonId> {
        self.canonical.get(key)
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    pub fn alias_count(&self) -> usize {
        self.aliases.len()
    }

    pub fn persons(&self) -> impl Iterator<Item = &PersonId> {
        self.canonical.values()
    }

    pub fn total_participations(&self) -> u64 {
        self.event_count.values().sum()
    }
}
