use super::{ClassifierError, LabeledPhrase};

/// Seed training data bundled with the library.
pub const SEED_DATASET_CSV: &str = include_str!("../../data/seed_usecases.csv");

/// Reads `phrase,label` CSV with a header row. Labels are `true`/`false`
/// (case-insensitive); phrases must be nonempty.
pub fn parse_dataset(text: &str) -> Result<Vec<LabeledPhrase>, ClassifierError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .clone();
    if headers.len() != 2 || &headers[0] != "phrase" || &headers[1] != "label" {
        return Err(malformed(1, "header must be `phrase,label`".into()));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            malformed(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let phrase = record.get(0).unwrap_or_default();
        if phrase.is_empty() {
            return Err(malformed(line, "empty phrase".into()));
        }
        let label = match record.get(1).map(str::to_ascii_lowercase).as_deref() {
            Some("true") => true,
            Some("false") => false,
            other => {
                return Err(malformed(line, format!("label must be true or false, got {other:?}")))
            }
        };
        rows.push(LabeledPhrase::new(phrase, label));
    }
    Ok(rows)
}

fn malformed(line: usize, reason: String) -> ClassifierError {
    ClassifierError::MalformedDataset { line, reason }
}

pub fn write_dataset(rows: &[LabeledPhrase]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["phrase", "label"]).expect("in-memory write");
    for r in rows {
        w.write_record([r.phrase.as_str(), if r.label { "true" } else { "false" }])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn bundled_seed_dataset() -> Vec<LabeledPhrase> {
    parse_dataset(SEED_DATASET_CSV).expect("bundled seed dataset parses")
}
