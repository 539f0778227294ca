//! The placement atlas: one row per rook placement with its statistics,
//! streamed deterministically as CSV or JSON.

use crate::CliError;
use orthorook::placement::enumerate_placements;
use orthorook::roots::{Family, RootSystem};
use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Serialize)]
pub struct AtlasRow {
    pub family: String,
    pub rank: usize,
    pub placement: String,
    pub l: usize,
    pub s: usize,
    pub d: usize,
    pub dim: usize,
    pub plus: usize,
    pub minus: usize,
    pub codim: usize,
}

pub fn rows(system: &RootSystem) -> Result<Vec<AtlasRow>, CliError> {
    let total = system.positive_roots().len();
    enumerate_placements(system)
        .into_iter()
        .map(|placement| {
            let diagram = placement
                .battleship()
                .map_err(|e| CliError::invalid(format!("{e}")))?;
            let stats = placement.involution_stats();
            let dim = diagram.plus_count() + diagram.minus_count();
            let codim = total
                - placement
                    .polarization_roots()
                    .map_err(|e| CliError::invalid(format!("{e}")))?
                    .len();
            let row = AtlasRow {
                family: system.family().to_string(),
                rank: system.rank(),
                placement: placement.tokens(),
                l: stats.length,
                s: stats.support_size,
                d: stats.d_stat,
                dim,
                plus: diagram.plus_count(),
                minus: diagram.minus_count(),
                codim,
            };
            // row invariant: dim = l − s − 2d = plus + minus = 2 codim
            if stats.dim() != dim as i64 || dim != 2 * codim {
                return Err(CliError::counterexample(format!(
                    "atlas row invariant broken for [{}]",
                    row.placement
                )));
            }
            Ok(row)
        })
        .collect()
}

fn to_csv(rows: &[AtlasRow]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "family", "rank", "placement", "l", "s", "d", "dim", "plus", "minus", "codim",
        ])
        .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    for r in rows {
        writer
            .write_record([
                r.family.clone(),
                r.rank.to_string(),
                r.placement.clone(),
                r.l.to_string(),
                r.s.to_string(),
                r.d.to_string(),
                r.dim.to_string(),
                r.plus.to_string(),
                r.minus.to_string(),
                r.codim.to_string(),
            ])
            .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::invalid(format!("csv: {e}")))
}

pub fn run(
    family: &str,
    rank: usize,
    out: Option<&Path>,
    json: bool,
    max_rank: usize,
) -> Result<(), CliError> {
    if rank > max_rank {
        return Err(CliError::invalid(format!(
            "rank {rank} exceeds the atlas cap of {max_rank}; raise --max-rank deliberately"
        )));
    }
    let family: Family = family.parse().map_err(|e| CliError::parse(format!("{e}")))?;
    let system = RootSystem::new(family, rank).map_err(|e| CliError::invalid(format!("{e}")))?;
    let rows = rows(&system)?;
    let payload = if json {
        let mut s = serde_json::to_string_pretty(&rows)
            .map_err(|e| CliError::invalid(format!("json: {e}")))?;
        s.push('\n');
        s
    } else {
        to_csv(&rows)?
    };
    match out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => write_atomically(path, payload.as_bytes()),
    }
}

/// Write via a sibling temp file and rename, so readers never observe a
/// partial atlas.
fn write_atomically(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    let io_err = |e: std::io::Error| CliError::invalid(format!("io: {e}"));
    let mut file = fs::File::create(&tmp).map_err(io_err)?;
    file.write_all(bytes).map_err(io_err)?;
    file.sync_all().map_err(io_err)?;
    drop(file);
    fs::rename(&tmp, path).map_err(io_err)
}
