//! CSV serialization of view relations.
//!
//! One header line per table kind, one line per row, LF terminators. Cells
//! containing a comma, double quote, or newline are double-quoted with inner
//! quotes doubled; everything else is written verbatim. A parameter list
//! serializes as `; `-joined `<direction> <name>: <type>` entries, the empty
//! string when there are none.

use std::fmt;

use crate::model::{Parameter, ViewRelation};

/// An in-memory CSV table; every row has exactly `header.len()` cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvDoc {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl fmt::Display for CsvDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_line(f, &self.header)?;
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.header.len());
            write_line(f, row)?;
        }
        Ok(())
    }
}

fn write_line(f: &mut fmt::Formatter<'_>, cells: &[String]) -> fmt::Result {
    for (i, cell) in cells.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        f.write_str(&quote_cell(cell))?;
    }
    f.write_str("\n")
}

fn quote_cell(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

/// The params column of a row: `; `-joined parameter entries.
pub fn params_cell(params: &[Parameter]) -> String {
    params
        .iter()
        .map(Parameter::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Serializes a view with the header fixed by its kind.
pub fn to_csv(view: &ViewRelation) -> CsvDoc {
    let (header, rows): (&[&str], Vec<Vec<String>>) = match view {
        ViewRelation::Itgr(rows) => (
            &[
                "state_from",
                "caller",
                "channel",
                "params",
                "callee",
                "state_to",
            ],
            rows.iter()
                .map(|r| {
                    vec![
                        r.source.clone(),
                        r.caller.clone(),
                        r.channel.clone(),
                        params_cell(&r.params),
                        r.callee.clone(),
                        r.target.clone(),
                    ]
                })
                .collect(),
        ),
        ViewRelation::Ibdr(rows) => (
            &["caller", "channel", "params", "callee"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.caller.clone(),
                        r.channel.clone(),
                        params_cell(&r.params),
                        r.callee.clone(),
                    ]
                })
                .collect(),
        ),
        ViewRelation::Smdr(rows) => (
            &["region", "state_from", "channel", "state_to"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.region.clone(),
                        r.source.clone(),
                        r.channel.clone(),
                        r.target.clone(),
                    ]
                })
                .collect(),
        ),
        ViewRelation::Adr(rows) => (
            &[
                "region",
                "state_from",
                "channel",
                "params",
                "callee",
                "state_to",
            ],
            rows.iter()
                .map(|r| {
                    vec![
                        r.region.clone(),
                        r.source.clone(),
                        r.channel.clone(),
                        params_cell(&r.params),
                        r.callee.clone(),
                        r.target.clone(),
                    ]
                })
                .collect(),
        ),
    };
    CsvDoc {
        header: header.iter().map(|s| s.to_string()).collect(),
        rows,
    }
}
