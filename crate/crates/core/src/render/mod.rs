//! Output serialization: CSV tables with a fixed quoting discipline and DOT
//! graph renderings of the model and its views.

mod csv;
mod dot;

pub use csv::{params_cell, to_csv, CsvDoc};
pub use dot::{to_dot_ad, to_dot_ibd, to_dot_itg, to_dot_smd, DotDoc};
