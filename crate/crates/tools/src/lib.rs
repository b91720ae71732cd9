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

//! File formats, parallel metrics and the `litnet` command-line pipeline
//! built on [`litnet_core`].

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod export;
pub mod geo_io;
pub mod graph_io;
pub mod ingest;
pub mod metrics_io;
pub mod partition_io;
pub mod report_io;

pub use error::{Error, Result};
