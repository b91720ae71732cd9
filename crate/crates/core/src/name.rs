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

//! Name and address normalization.

use alloc::string::String;
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// Normalizes a raw name into a registry key.
///
/// Applies NFC composition, collapses interior whitespace runs to a single
/// ASCII space and trims both ends. Letter case is preserved.
pub fn normalize_name(raw: &str) -> Result<String> {
    let key = collapse_whitespace(raw);
    if key.is_empty() {
        Err(Error::NameEmpty)
    } else {
        Ok(key)
    }
}

/// Same rules as [`normalize_name`] but an empty result is returned as is.
pub fn collapse_whitespace(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for ch in raw.nfc() {
        if ch.is_whitespace() {
            pending_space = !out.is_empty();
        } else {
            if pending_space {
                out.push(' ');
                pending_space = false;
            }
            out.push(ch);
        }
    }
    out
}
