//! On-disk cache of QSP phase sequences.

use std::path::PathBuf;

use lchs_core::qsp::{ChebyshevExpansion, DirectSolver, Parity, PhaseProvider, QspPhaseSequence};
use sha2::{Digest, Sha256};

/// Looks sequences up by a hash of the target polynomial and tolerance and
/// solves on a miss. Unreadable entries are re-solved and overwritten.
#[derive(Clone, Debug)]
pub struct PhaseCache {
    dir: PathBuf,
    pub hits: usize,
    pub misses: usize,
}

impl PhaseCache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Self { dir, hits: 0, misses: 0 })
    }

    pub fn key(e: &ChebyshevExpansion, eps: f64) -> String {
        let mut h = Sha256::new();
        h.update(b"qsp-phases v1");
        h.update([if e.parity == Parity::Even { 0u8 } else { 1 }]);
        h.update((e.coefficients.len() as u64).to_le_bytes());
        for c in &e.coefficients {
            h.update(c.to_bits().to_le_bytes());
        }
        h.update(eps.to_bits().to_le_bytes());
        format!("{:x}", h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.txt"))
    }
}

impl PhaseProvider for PhaseCache {
    fn phases(&mut self, e: &ChebyshevExpansion, eps: f64) -> lchs_core::Result<QspPhaseSequence> {
        let path = self.path(&Self::key(e, eps));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(mut seq) = QspPhaseSequence::from_text(&text) {
                if seq.residual <= eps {
                    seq.target = e.target;
                    self.hits += 1;
                    return Ok(seq);
                }
            }
        }
        self.misses += 1;
        let seq = DirectSolver.phases(e, eps)?;
        // a failed write only costs a re-solve next time
        let tmp = path.with_extension("tmp");
        if std::fs::write(&tmp, seq.to_text()).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
        Ok(seq)
    }
}
