//! The family of rings and ideal lattices the statement checkers quantify over.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::build::BuildContext;
use crate::error::{Error, Result};
use crate::ideals::{all_ideals, Ideal};
use crate::ring::{FiniteRing, Limits};

/// Which rings to include. Every bound is inclusive; 0 disables a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusConfig {
    /// `Z_n` for `1 <= n <= zn_max`.
    pub zn_max: u64,
    /// `Z_a x Z_b` for `2 <= a <= b <= product_max`.
    pub product_max: u64,
    /// `T2(Z_n)` for `2 <= n <= triangular_max`.
    pub triangular_max: u64,
    /// `Z_n(Z_d)` for `d | n`, `2 <= n <= idealization_max`.
    pub idealization_max: u64,
    /// `Morita(Z_n, Z_n, Z_n, Z_n, p)` for each listed `n` and both pairings.
    pub morita_moduli: Vec<u64>,
    /// Further ring specifications.
    pub extra: Vec<String>,
    pub max_ring_size: usize,
    pub lattice_cap: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        let limits = Limits::default();
        CorpusConfig {
            zn_max: 50,
            product_max: 12,
            triangular_max: 6,
            idealization_max: 12,
            morita_moduli: vec![2, 3, 4],
            extra: Vec::new(),
            max_ring_size: limits.max_ring_size,
            lattice_cap: limits.lattice_cap,
        }
    }
}

impl CorpusConfig {
    /// No rings at all.
    pub fn empty() -> Self {
        CorpusConfig {
            zn_max: 0,
            product_max: 0,
            triangular_max: 0,
            idealization_max: 0,
            morita_moduli: Vec::new(),
            extra: Vec::new(),
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("corpus: {e}")))
    }

    pub fn limits(&self) -> Limits {
        Limits {
            max_ring_size: self.max_ring_size,
            lattice_cap: self.lattice_cap,
        }
    }

    /// Ring specifications in corpus order.
    pub fn specs(&self) -> Vec<String> {
        let mut out: Vec<String> = (1..=self.zn_max).map(|n| format!("Z{n}")).collect();
        for a in 2..=self.product_max {
            for b in a..=self.product_max {
                out.push(format!("Z{a} x Z{b}"));
            }
        }
        out.extend((2..=self.triangular_max).map(|n| format!("T2(Z{n})")));
        for n in 2..=self.idealization_max {
            for d in (1..=n).filter(|d| n % d == 0) {
                out.push(format!("Idealization(Z{n}, Z{d})"));
            }
        }
        for &n in &self.morita_moduli {
            for pairing in ["zero", "mul"] {
                out.push(format!("Morita(Z{n}, Z{n}, Z{n}, Z{n}, {pairing})"));
            }
        }
        out.extend(self.extra.iter().cloned());
        out
    }
}

/// A ring with its element sets computed and its full ideal lattice.
#[derive(Clone)]
pub struct CorpusEntry {
    pub ring: Arc<FiniteRing>,
    pub ideals: Vec<Ideal>,
}

#[derive(Clone)]
pub struct Corpus {
    pub config: CorpusConfig,
    pub entries: Vec<CorpusEntry>,
}

pub fn build_corpus(config: &CorpusConfig) -> Result<Corpus> {
    build_corpus_with(&BuildContext::default(), config)
}

/// Like [`build_corpus`], resolving `@name` modules and pairings through `ctx`.
pub fn build_corpus_with(ctx: &BuildContext, config: &CorpusConfig) -> Result<Corpus> {
    let ctx = ctx.clone().with_limits(config.limits());
    let entries = config
        .specs()
        .par_iter()
        .map(|text| {
            let ring = ctx
                .build_str(text)
                .map_err(|e| Error::Config(format!("corpus ring `{text}`: {e}")))?;
            ring.element_sets()?;
            let ideals = all_ideals(&ring)?;
            Ok(CorpusEntry { ring, ideals })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus {
        config: config.clone(),
        entries,
    })
}
