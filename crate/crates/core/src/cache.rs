//! On-disk persistence of word tables, enabled by `PARTCAT_CACHE_DIR`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use crate::ops::WordTables;
use crate::partition::bell;

pub const CACHE_ENV: &str = "PARTCAT_CACHE_DIR";

fn path_for(length: usize) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("word-tables-{length}.txt")))
}

pub(crate) fn load_tables(length: usize) -> Option<WordTables> {
    let text = fs::read_to_string(path_for(length)?).ok()?;
    let expected = bell(length).ok()? as usize;
    let mut rotate = Vec::with_capacity(expected);
    let mut contract = Vec::with_capacity(expected);
    for line in text.lines() {
        let mut parts = line.split_whitespace();
        rotate.push(parts.next()?.parse().ok()?);
        if length >= 2 {
            let r: u32 = parts.next()?.parse().ok()?;
            let closed = parts.next()? == "1";
            contract.push((r, closed));
        }
    }
    // a truncated or foreign file is ignored and rebuilt
    if length == 0 || rotate.len() != expected || (length >= 2 && contract.len() != expected) {
        return None;
    }
    Some(WordTables { length, rotate, contract })
}

pub(crate) fn store_tables(t: &WordTables) {
    let Some(path) = path_for(t.length) else { return };
    if t.rotate.is_empty() {
        return;
    }
    let mut out = String::new();
    for (i, r) in t.rotate.iter().enumerate() {
        match t.contract.get(i) {
            Some((c, closed)) => out.push_str(&format!("{r} {c} {}\n", u8::from(*closed))),
            None => out.push_str(&format!("{r}\n")),
        }
    }
    if let Some(dir) = path.parent() {
        let _ = fs::create_dir_all(dir);
    }
    // write then rename so a concurrent reader sees either nothing or the whole file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    if let Ok(mut f) = fs::File::create(&tmp) {
        if f.write_all(out.as_bytes()).is_ok() {
            let _ = fs::rename(&tmp, &path);
        } else {
            let _ = fs::remove_file(&tmp);
        }
    }
}
