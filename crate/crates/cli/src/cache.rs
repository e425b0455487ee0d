//! On-disk cache of tower stages.
//!
//! An entry is keyed by the SHA-256 of the canonical description of the
//! braiding and cutoff. It holds the relation bases of stages `0..=m` and the
//! reports of stages `0..m`, with scalars in their exact string form.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use nichols::tower::{step_at, RankReport};
use nichols::{BraidedSpace, Field, GradedQuotient, StageReport, Subspace};

use crate::job::canonical_text;
use crate::report::StageJson;
use crate::CliError;

/// Sparse row: `(coordinate, scalar)` pairs.
type Row = Vec<(usize, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    key: String,
    /// `quotients[k][d - 1]` lists the rref rows of `R_d` at stage `k`.
    quotients: Vec<Vec<Vec<Row>>>,
    stages: Vec<StageJson>,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    fn load(&self, key: &str) -> Option<Entry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.key == key && entry.quotients.len() == entry.stages.len() + 1).then_some(entry)
    }

    fn store(&self, entry: &Entry) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::io(format!("cache {}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let target = self.path(&entry.key);
        let temp = target.with_extension(format!("tmp.{}", std::process::id()));
        let mut file = fs::File::create(&temp).map_err(io)?;
        file.write_all(serde_json::to_string(entry).expect("entry serializes").as_bytes())
            .map_err(io)?;
        file.sync_all().map_err(io)?;
        fs::rename(&temp, &target).map_err(io)
    }
}

fn encode<F: Field>(q: &GradedQuotient<F>) -> Vec<Vec<Row>> {
    let f = q.field();
    q.all_relations()
        .iter()
        .map(|r| {
            r.vectors()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !f.is_zero(x))
                        .map(|(i, x)| (i, f.format(x)))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn decode<F: Field>(space: &BraidedSpace<F>, cutoff: usize, data: &[Vec<Row>]) -> Option<GradedQuotient<F>> {
    let f = space.field();
    if data.len() != cutoff {
        return None;
    }
    let mut relations = Vec::with_capacity(cutoff);
    for (k, rows) in data.iter().enumerate() {
        let size = space.tensor_dim(k + 1);
        let mut dense = Vec::with_capacity(rows.len());
        for row in rows {
            let mut v = vec![f.zero(); size];
            for (i, x) in row {
                *v.get_mut(*i)? = f.parse(x).ok()?;
            }
            dense.push(v);
        }
        relations.push(Subspace::span(f.clone(), size, dense).ok()?);
    }
    GradedQuotient::from_relations(space, cutoff, relations).ok()
}

/// The tower up to `max_iter` stages, reusing and extending the cache when
/// one is given. The result does not depend on the cache contents.
pub fn drive<F: Field>(
    space: &BraidedSpace<F>,
    cutoff: usize,
    max_iter: usize,
    cache: Option<&Cache>,
) -> Result<RankReport<F>, CliError> {
    let Some(cache) = cache else {
        return nichols::run(space, cutoff, max_iter).map_err(CliError::from);
    };
    let key = canonical_text(space, cutoff);
    let cached = cache.load(&key).and_then(|entry| {
        let quotients = entry
            .quotients
            .iter()
            .map(|q| decode(space, cutoff, q))
            .collect::<Option<Vec<_>>>()?;
        Some((quotients, entry.stages))
    });
    let (mut quotients, mut stages) = match cached {
        Some(found) => found,
        None => (vec![GradedQuotient::free_truncated(space, cutoff)?], Vec::new()),
    };
    let mut grown = false;
    while stages.len() < max_iter && !stages.last().is_some_and(|s: &StageJson| s.iso) {
        let k = stages.len();
        let (next, report) = step_at(&quotients[k], k)?;
        stages.push(StageJson::from(&report));
        quotients.push(next);
        grown = true;
    }
    if grown {
        cache.store(&Entry {
            key,
            quotients: quotients.iter().map(encode).collect(),
            stages: stages.clone(),
        })?;
    }

    let limit = stages.len().min(max_iter);
    let used = stages[..limit].iter().position(|s| s.iso).map_or(limit, |k| k + 1);
    let rank = used.checked_sub(1).filter(|&k| stages[k].iso);
    let reports: Vec<StageReport> = stages[..used]
        .iter()
        .enumerate()
        .map(|(k, s)| StageReport {
            stage: k,
            hilbert: s.hilbert.clone(),
            new_relation_dims: s.new_relation_dims.clone(),
            stage_map_iso: s.iso,
        })
        .collect();
    let final_quotient = match rank {
        Some(k) => quotients[k].clone(),
        None => quotients[used].clone(),
    };
    Ok(RankReport {
        stages: reports,
        rank_le_cutoff: rank,
        stabilized: rank.is_some(),
        final_quotient,
        stage_quotients: quotients[..used].to_vec(),
        oracle_match: None,
    })
}
