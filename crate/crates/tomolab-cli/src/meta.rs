use std::fs;
use std::io;
use std::path::Path;

/// Writes metadata as flat `key=value` lines, one pair per line.
pub fn write_metadata(path: &Path, pairs: &[(&str, String)]) -> io::Result<()> {
    let mut buf = String::new();
    for (k, v) in pairs {
        buf.push_str(k);
        buf.push('=');
        buf.push_str(v);
        buf.push('\n');
    }
    fs::write(path, buf)
}
