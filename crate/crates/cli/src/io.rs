use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use avghac::{HacError, Result};

fn with_path(path: &Path, e: io::Error) -> HacError {
    HacError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

/// Reads a file, or standard input for `None` and `-`.
pub fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(|e| with_path(p, e)),
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

/// Writes to a file, or standard output for `None` and `-`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).map_err(|e| with_path(p, e)),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
