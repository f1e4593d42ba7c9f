use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{CountRecord, MeasurementSetting, PauliSetting, TomoError};

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    setting_label: String,
    /// 1-based on disk.
    branch: usize,
    counts: u64,
    exposure_s: f64,
}

fn csv_error(line: usize, message: impl ToString) -> TomoError {
    TomoError::Csv {
        line,
        message: message.to_string(),
    }
}

/// Writes records as `setting_label,branch,counts,exposure_s`, branches
/// numbered from 1.
pub fn write_records_csv<W: Write>(writer: W, records: &[CountRecord]) -> Result<(), TomoError> {
    let mut out = csv::Writer::from_writer(writer);
    for (k, r) in records.iter().enumerate() {
        out.serialize(Row {
            setting_label: r.label.clone(),
            branch: r.branch + 1,
            counts: r.counts,
            exposure_s: r.exposure,
        })
        .map_err(|e| csv_error(k + 2, e))?;
    }
    out.flush().map_err(|e| csv_error(0, e))
}

/// Reads records written by [`write_records_csv`]. Projectors are rebuilt
/// from the Pauli setting labels. Errors carry the 1-based file line.
pub fn read_records_csv<R: Read>(reader: R) -> Result<Vec<CountRecord>, TomoError> {
    let mut input = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let mut records = Vec::new();
    for row in input.deserialize::<Row>() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            csv_error(line, e)
        })?;
        let line = records.len() + 2;
        let setting = PauliSetting::from_label(&row.setting_label)
            .ok_or_else(|| csv_error(line, TomoError::UnknownSetting(row.setting_label.clone())))?;
        if row.branch == 0 {
            return Err(csv_error(line, "branch numbers start at 1"));
        }
        let record = CountRecord::new(
            &MeasurementSetting::pauli(setting, row.branch - 1),
            row.counts,
            row.exposure_s,
        )
        .map_err(|e| csv_error(line, e))?;
        records.push(record);
    }
    if records.is_empty() {
        return Err(TomoError::NoRecords);
    }
    Ok(records)
}
