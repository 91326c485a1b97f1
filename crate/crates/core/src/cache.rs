//! Plain-text cache of u-small inventories.
//!
//! ```text
//! nubound-inventory 1
//! case FI
//! engine 0.1.0
//! gram <sha256 of the Gram matrix>
//! digest <sha256 of the inventory>
//! ktypes <N>
//! <one K-type per line, space separated>
//! chamber <j> <#omega> <#boundary>
//! o <indices>
//! b <indices>
//! ```
//!
//! A file whose header does not match the current case, engine version or
//! Gram matrix is ignored and rewritten.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::bounds::ENGINE_VERSION;
use crate::context::CaseContext;
use crate::enumeration::{enumerate_usmall, ChamberInventory, UsmallInventory};
use crate::error::{Error, Result};
use crate::kernel::{Packed, MAXR};

const MAGIC: &str = "nubound-inventory 1";
pub const CACHE_ENV: &str = "NUBOUND_CACHE_DIR";

/// `$NUBOUND_CACHE_DIR`, else `$XDG_CACHE_HOME/nubound`, else
/// `$HOME/.cache/nubound`.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(d));
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(d).join("nubound"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("nubound"))
}

pub fn cache_path(dir: &Path, ctx: &CaseContext) -> PathBuf {
    dir.join(format!("{}.inventory", ctx.label()))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn render(ctx: &CaseContext, inv: &UsmallInventory) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "case {}", ctx.label());
    let _ = writeln!(s, "engine {ENGINE_VERSION}");
    let _ = writeln!(s, "gram {}", ctx.spec.context.digest());
    let _ = writeln!(s, "digest {}", inv.digest());
    let _ = writeln!(s, "ktypes {}", inv.ktypes.len());
    for p in &inv.ktypes {
        let _ = writeln!(s, "{}", join(&p[..inv.l]));
    }
    for (j, ch) in inv.chambers.iter().enumerate() {
        let _ = writeln!(s, "chamber {j} {} {}", ch.omega.len(), ch.boundary.len());
        let _ = writeln!(s, "o {}", join(&ch.omega));
        let _ = writeln!(s, "b {}", join(&ch.boundary));
    }
    s
}

/// Parses a cache file; `Ok(None)` when it belongs to another case, engine
/// version or Gram matrix.
pub fn parse(ctx: &CaseContext, text: &str) -> Result<Option<UsmallInventory>> {
    let bad = |what: &str| Error::Cache(format!("malformed inventory cache: {what}"));
    let mut lines = text.lines();
    let mut header = |key: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| bad("truncated header"))?;
        if key.is_empty() {
            return Ok(line.to_string());
        }
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(key))
    };
    if header("")? != MAGIC {
        return Ok(None);
    }
    if header("case")? != ctx.label().as_str()
        || header("engine")? != ENGINE_VERSION
        || header("gram")? != ctx.spec.context.digest()
    {
        return Ok(None);
    }
    let digest = header("digest")?;
    let n: usize = header("ktypes")?.parse().map_err(|_| bad("count"))?;
    let l = ctx.kernel.l;
    let mut ktypes: Vec<Packed> = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines.next().ok_or_else(|| bad("truncated K-type list"))?;
        let mut p = [0i16; MAXR];
        let mut count = 0;
        for (i, t) in line.split_ascii_whitespace().enumerate() {
            if i >= l {
                return Err(bad("K-type length"));
            }
            p[i] = t.parse().map_err(|_| bad("K-type entry"))?;
            count += 1;
        }
        if count != l {
            return Err(bad("K-type length"));
        }
        ktypes.push(p);
    }
    let indices = |line: Option<&str>, tag: &str| -> Result<Vec<u32>> {
        let line = line.ok_or_else(|| bad("truncated chamber list"))?;
        let rest = line.strip_prefix(tag).ok_or_else(|| bad(tag))?;
        rest.split_ascii_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| bad("index")))
            .collect()
    };
    let mut chambers = Vec::with_capacity(ctx.s());
    for j in 0..ctx.s() {
        let head = lines.next().ok_or_else(|| bad("truncated chambers"))?;
        let f: Vec<&str> = head.split_ascii_whitespace().collect();
        if f.len() != 4 || f[0] != "chamber" || f[1] != j.to_string() {
            return Err(bad("chamber header"));
        }
        let omega = indices(lines.next(), "o")?;
        let boundary = indices(lines.next(), "b")?;
        if omega.len().to_string() != f[2] || boundary.len().to_string() != f[3] {
            return Err(bad("chamber counts"));
        }
        if omega.iter().chain(&boundary).any(|&u| u as usize >= n) {
            return Err(bad("index out of range"));
        }
        chambers.push(ChamberInventory { omega, boundary });
    }
    let inv = UsmallInventory { l, ktypes, chambers };
    if inv.digest() != digest {
        return Err(bad("digest mismatch"));
    }
    Ok(Some(inv))
}

pub fn build_inventory(ctx: &CaseContext) -> Result<UsmallInventory> {
    let ktypes = enumerate_usmall(&ctx.kernel)?;
    Ok(UsmallInventory::build(&ctx.kernel, ktypes))
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub inventory: UsmallInventory,
    pub cached: bool,
    pub millis: u128,
}

/// Reads the inventory from `dir` when a valid file exists, otherwise builds
/// it and writes the file. Unreadable or stale files are rebuilt.
pub fn load_or_build(ctx: &CaseContext, dir: Option<&Path>) -> Result<Loaded> {
    let start = Instant::now();
    if let Some(dir) = dir {
        let path = cache_path(dir, ctx);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(Some(inventory)) = parse(ctx, &text) {
                return Ok(Loaded { inventory, cached: true, millis: start.elapsed().as_millis() });
            }
        }
    }
    let inventory = build_inventory(ctx)?;
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
        let path = cache_path(dir, ctx);
        // Write then rename so a concurrent reader never sees a partial file.
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, render(ctx, &inventory))?;
        fs::rename(&tmp, &path)?;
    }
    Ok(Loaded { inventory, cached: false, millis: start.elapsed().as_millis() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::CaseLabel;

    fn g2s() -> CaseContext {
        CaseContext::load(CaseLabel::G2S).unwrap()
    }

    #[test]
    fn round_trip() {
        let c = g2s();
        let inv = build_inventory(&c).unwrap();
        let back = parse(&c, &render(&c, &inv)).unwrap().unwrap();
        assert_eq!(back, inv);
    }

    #[test]
    fn other_case_or_version_is_ignored() {
        let c = g2s();
        let text = render(&c, &build_inventory(&c).unwrap());
        let fc = CaseContext::load(CaseLabel::G2C).unwrap();
        assert!(parse(&fc, &text).unwrap().is_none());
        let stale = text.replace(&format!("engine {ENGINE_VERSION}"), "engine 0.0.0-old");
        assert!(parse(&c, &stale).unwrap().is_none());
        assert!(parse(&c, "something else\n").unwrap().is_none());
    }

    #[test]
    fn corruption_is_an_error() {
        let c = g2s();
        let text = render(&c, &build_inventory(&c).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        // change one K-type entry
        let mut edited = lines.clone();
        let bumped = edited[6].replacen('0', "9", 1);
        edited[6] = &bumped;
        assert!(matches!(parse(&c, &edited.join("\n")), Err(Error::Cache(_))));
        let truncated = lines[..lines.len() - 2].join("\n");
        assert!(matches!(parse(&c, &truncated), Err(Error::Cache(_))));
    }

    #[test]
    fn load_or_build_writes_then_reads() {
        let dir = tempfile::tempdir().unwrap();
        let c = g2s();
        let first = load_or_build(&c, Some(dir.path())).unwrap();
        assert!(!first.cached);
        assert!(cache_path(dir.path(), &c).exists());
        let second = load_or_build(&c, Some(dir.path())).unwrap();
        assert!(second.cached);
        assert_eq!(first.inventory, second.inventory);

        // a damaged file is rebuilt and replaced
        fs::write(cache_path(dir.path(), &c), "nubound-inventory 1\ncase G2S\n").unwrap();
        let third = load_or_build(&c, Some(dir.path())).unwrap();
        assert!(!third.cached);
        assert!(load_or_build(&c, Some(dir.path())).unwrap().cached);
    }

    #[test]
    fn no_dir_means_no_file() {
        let c = g2s();
        let r = load_or_build(&c, None).unwrap();
        assert!(!r.cached);
    }
}
