use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::ResultRow;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 9] = [
    "n",
    "w",
    "threshold_linear",
    "threshold_db",
    "method",
    "nlcr",
    "raw_rate",
    "mc_crossings",
    "mc_duration",
];

/// Writes the header and one LF-terminated line per row. Reals use the
/// shortest representation that parses back to the same value; absent
/// simulation fields are left blank.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `rows` to the file at `path`.
pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(rows, file).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_csv_from<R: Read>(input: R) -> std::result::Result<Vec<ResultRow>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRow>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_csv_from(file).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}
