//! Input streaming and atomic output writing.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use port_tfidf_core::record::{parse_record, AccessRecord, RecordFormat};

use crate::error::CliError;

/// Parse every record in `path`, failing with the 1-based line number of
/// the first bad line. Blank lines are skipped.
pub fn read_records(path: &Path, format: RecordFormat) -> Result<Vec<AccessRecord>, CliError> {
    let file = File::open(path)
        .map_err(|e| CliError::input(format!("cannot open {}: {e}", path.display())))?;
    let reader = BufReader::new(file);
    let mut records = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line
            .map_err(|e| CliError::input(format!("read error in {}: {e}", path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = parse_record(&line, format).map_err(|e| {
            CliError::input(format!("{}:{}: {e}", path.display(), lineno + 1))
        })?;
        records.push(record);
    }
    Ok(records)
}

pub fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

/// Output directory with temp-file-and-rename writes so partial files
/// never land under their final name.
pub struct OutDir {
    dir: PathBuf,
}

impl OutDir {
    pub fn create(dir: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<(), CliError> {
        self.write_with(name, |w| w.write_all(contents.as_bytes()))
    }

    /// Stream into a temp file in the same directory, then rename.
    pub fn write_with(
        &self,
        name: &str,
        fill: impl FnOnce(&mut BufWriter<&mut tempfile::NamedTempFile>) -> std::io::Result<()>,
    ) -> Result<(), CliError> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)
            .map_err(|e| CliError::internal(format!("cannot create temp file: {e}")))?;
        {
            let mut writer = BufWriter::new(&mut tmp);
            fill(&mut writer)
                .and_then(|()| writer.flush())
                .map_err(|e| CliError::internal(format!("cannot write {name}: {e}")))?;
        }
        tmp.persist(self.dir.join(name))
            .map_err(|e| CliError::internal(format!("cannot persist {name}: {e}")))?;
        Ok(())
    }
}
