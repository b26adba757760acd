//! Randomized text-level properties: the CSV writer against a third-party
//! reader, and the parser against arbitrary input.

use proptest::prelude::*;

use sbc_itg_core::dsl;
use sbc_itg_core::render::CsvDoc;

/// Cells over a charset that exercises every quoting trigger (comma, double
/// quote, newline) plus benign text. Carriage returns are excluded: cells
/// come from identifiers and parameter lists, which never contain one, and
/// a bare CR inside an unquoted cell is ambiguous to standard readers.
fn cell() -> impl Strategy<Value = String> {
    proptest::string::string_regex("[a-zA-Z0-9 ,\";:.()\n-]{0,12}").unwrap()
}

/// A rectangular table at least two columns wide, so no serialized line is
/// ever completely blank (blank lines are skipped by CSV readers).
fn table() -> impl Strategy<Value = (Vec<String>, Vec<Vec<String>>)> {
    (2usize..=6).prop_flat_map(|width| {
        (
            proptest::collection::vec(cell(), width),
            proptest::collection::vec(proptest::collection::vec(cell(), width), 0..8),
        )
    })
}

proptest! {
    #[test]
    fn csv_output_reads_back_exactly((header, rows) in table()) {
        let doc = CsvDoc { header: header.clone(), rows: rows.clone() };
        let text = doc.to_string();

        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(false)
            .from_reader(text.as_bytes());
        let mut records = Vec::new();
        for record in reader.records() {
            let record = record.expect("writer produced unreadable CSV");
            records.push(record.iter().map(str::to_string).collect::<Vec<_>>());
        }

        let mut expected = vec![header];
        expected.extend(rows);
        prop_assert_eq!(records, expected, "serialized:\n{}", text);
    }

    #[test]
    fn quoting_is_minimal(cell in cell()) {
        // A cell is quoted iff it contains a trigger character.
        let doc = CsvDoc { header: vec![cell.clone(), "x".into()], rows: vec![] };
        let line = doc.to_string();
        let quoted = line.starts_with('"');
        let needs = cell.contains(',') || cell.contains('"') || cell.contains('\n');
        prop_assert_eq!(quoted, needs, "line: {:?}", line);
    }

    #[test]
    fn parser_never_panics_on_arbitrary_input(text in "[\\PC\n\t]{0,300}") {
        let _ = dsl::parse(&text);
    }

    #[test]
    fn parser_never_panics_on_structured_noise(
        text in "(system|actor|block|channel|region|initial|->|\\{|\\}|\\(|\\)|,|:|\"|#|[a-z]{1,4}| |\n){0,60}"
    ) {
        let _ = dsl::parse(&text);
    }

    #[test]
    fn error_spans_point_into_the_text(text in "[\\PC\n\t]{0,200}") {
        if let Err(diags) = dsl::parse(&text) {
            for d in diags {
                let line_count = text.split('\n').count();
                prop_assert!(d.span.line >= 1);
                prop_assert!(d.span.column >= 1);
                prop_assert!(
                    d.span.line <= line_count,
                    "line {} of {}: {:?}",
                    d.span.line,
                    line_count,
                    text
                );
                let line = text.split('\n').nth(d.span.line - 1).unwrap();
                // One past the end is legal: that is where EOF sits.
                prop_assert!(
                    d.span.column <= line.chars().count() + 1,
                    "column {} on line {:?}",
                    d.span.column,
                    line
                );
            }
        }
    }
}
