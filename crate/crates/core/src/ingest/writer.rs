use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use super::schema::TableRow;
use super::{table_path, IngestError};
use crate::model::PatstatDataset;

/// Writes rows as RFC-4180 CSV with a header row. Missing dates are written
/// as `9999-12-31`, the Patstat placeholder.
pub fn write_table<T: TableRow, W: Write>(rows: &[T], out: W) -> io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(T::schema().column_names())?;
    for row in rows {
        writer.write_record(row.encode())?;
    }
    writer.flush()
}

fn write_file<T: TableRow>(dir: &Path, rows: &[T]) -> Result<(), IngestError> {
    let path = table_path(dir, T::schema().table);
    let io_err = |source| IngestError::Io { path: path.clone(), source };
    let file = File::create(&path).map_err(io_err)?;
    write_table(rows, BufWriter::with_capacity(1 << 20, file)).map_err(io_err)
}

/// Writes all eight tables of `dataset` into `dir` (created if needed), in the
/// layout [`load_dataset`](super::load_dataset) reads.
pub fn write_dataset(dir: impl AsRef<Path>, dataset: &PatstatDataset) -> Result<(), IngestError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|source| IngestError::Io { path: dir.to_path_buf(), source })?;
    write_file(dir, &dataset.applications)?;
    write_file(dir, &dataset.publications)?;
    write_file(dir, &dataset.persons)?;
    write_file(dir, &dataset.person_links)?;
    write_file(dir, &dataset.ipc)?;
    write_file(dir, &dataset.priority_claims)?;
    write_file(dir, &dataset.families)?;
    write_file(dir, &dataset.citations)?;
    Ok(())
}
