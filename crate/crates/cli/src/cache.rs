//! Locked reads and writes of the Hurwitz table cache.
//!
//! Writers take an exclusive advisory flock on the cache file, readers a
//! shared one, so concurrent invocations never interleave partial JSON.

use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::os::unix::io::AsRawFd;
use std::path::Path;

use todasphere::HurwitzTable;

fn flock(file: &File, exclusive: bool) -> std::io::Result<()> {
    let operation = if exclusive { libc::LOCK_EX } else { libc::LOCK_SH };
    if unsafe { libc::flock(file.as_raw_fd(), operation) } != 0 {
        return Err(std::io::Error::last_os_error());
    }
    Ok(())
}

pub fn write_table(path: &Path, table: &HurwitzTable) -> Result<(), String> {
    // Truncation happens after the lock is held, not at open time.
    let mut file = OpenOptions::new()
        .create(true)
        .write(true)
        .truncate(false)
        .open(path)
        .map_err(|e| format!("cannot open cache {}: {e}", path.display()))?;
    flock(&file, true).map_err(|e| format!("cannot lock cache {}: {e}", path.display()))?;
    file.set_len(0)
        .and_then(|()| file.write_all(table.to_json_string().as_bytes()))
        .and_then(|()| file.write_all(b"\n"))
        .map_err(|e| format!("cannot write cache {}: {e}", path.display()))
    // The lock is released when `file` drops.
}

pub fn read_table(path: &Path) -> Result<HurwitzTable, String> {
    let mut file = File::open(path)
        .map_err(|e| format!("cannot open cache {}: {e}", path.display()))?;
    flock(&file, false).map_err(|e| format!("cannot lock cache {}: {e}", path.display()))?;
    let mut text = String::new();
    file.read_to_string(&mut text)
        .map_err(|e| format!("cannot read cache {}: {e}", path.display()))?;
    HurwitzTable::from_json_str(&text)
        .map_err(|e| format!("cache {} is unusable: {e}", path.display()))
}
