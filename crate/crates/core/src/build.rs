//! Evaluation of [`RingSpec`] trees into rings.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::constructions::{self, MoritaContext, PairingTables};
use crate::error::{Error, Result};
use crate::ideals;
use crate::module::{ActionTables, Bimodule};
use crate::ring::{FiniteRing, Limits};
use crate::spec::{parse_ring_spec, ModuleSpec, Pairing, RingSpec};

/// Size limits plus the named module and pairing tables that `@name` refers to.
#[derive(Debug, Clone, Default)]
pub struct BuildContext {
    limits: Limits,
    modules: HashMap<String, ActionTables>,
    pairings: HashMap<String, PairingTables>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    #[serde(default)]
    modules: HashMap<String, ActionTables>,
    #[serde(default)]
    pairings: HashMap<String, PairingTables>,
}

impl BuildContext {
    pub fn new(limits: Limits) -> Self {
        BuildContext {
            limits,
            ..Default::default()
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn with_module(mut self, name: impl Into<String>, tables: ActionTables) -> Self {
        self.modules.insert(name.into(), tables);
        self
    }

    pub fn with_pairing(mut self, name: impl Into<String>, tables: PairingTables) -> Self {
        self.pairings.insert(name.into(), tables);
        self
    }

    /// Registers tables from JSON of the form `{"modules": {...}, "pairings": {...}}`.
    pub fn load_tables_json(&mut self, text: &str) -> Result<()> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("module tables: {e}")))?;
        self.modules.extend(file.modules);
        self.pairings.extend(file.pairings);
        Ok(())
    }

    pub fn build_str(&self, text: &str) -> Result<Arc<FiniteRing>> {
        self.build(&parse_ring_spec(text)?)
    }

    pub fn build(&self, spec: &RingSpec) -> Result<Arc<FiniteRing>> {
        match spec {
            RingSpec::Zn(n) => constructions::residue_ring(*n, self.limits),
            RingSpec::Product(parts) => {
                let parts = parts.iter().map(|p| self.build(p)).collect::<Result<Vec<_>>>()?;
                constructions::direct_product(parts)
            }
            RingSpec::Triangular(k, base) => constructions::triangular_ring(*k, self.build(base)?),
            RingSpec::Quotient(base, gens) => {
                let base = self.build(base)?;
                let gens = gens.iter().map(|g| base.from_literal(g)).collect::<Result<Vec<_>>>()?;
                let ideal = ideals::ideal_generated_by(&base, &gens)?;
                Ok(ideals::quotient_ring(&ideal)?.ring().clone())
            }
            RingSpec::Corner(base, f) => {
                let base = self.build(base)?;
                let f = base.from_literal(f)?;
                constructions::corner_ring(&base, f)
            }
            RingSpec::Idealization(base, module) => {
                let base = self.build(base)?;
                let module = self.module(module, base.clone(), base.clone())?;
                constructions::idealization(module)
            }
            RingSpec::Morita(ctx) => {
                let a = self.build(&ctx.a)?;
                let b = self.build(&ctx.b)?;
                let m = self.module(&ctx.m, a.clone(), b.clone())?;
                let n = self.module(&ctx.n, b, a)?;
                let context = match &ctx.pairing {
                    Pairing::Zero => MoritaContext::zero(m, n)?,
                    Pairing::Mul => MoritaContext::multiplication(m, n)?,
                    Pairing::Named(name) => {
                        let tables = self
                            .pairings
                            .get(name)
                            .ok_or_else(|| Error::Config(format!("no pairing tables named `{name}`")))?;
                        MoritaContext::from_tables(m, n, name, tables)?
                    }
                };
                constructions::morita_ring(context)
            }
        }
    }

    fn module(&self, spec: &ModuleSpec, left: Arc<FiniteRing>, right: Arc<FiniteRing>) -> Result<Bimodule> {
        match spec {
            ModuleSpec::Cyclic(factors) => Bimodule::canonical(factors.clone(), left, right),
            ModuleSpec::Named(name) => {
                let tables = self
                    .modules
                    .get(name)
                    .ok_or_else(|| Error::Config(format!("no module tables named `{name}`")))?;
                Bimodule::from_tables(spec.clone(), tables, left, right)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_match_constructions() {
        let ctx = BuildContext::default();
        for (text, size) in [
            ("Z6", 6),
            ("T2(Z2)", 8),
            ("Z2 x Z4", 8),
            ("T3(Z2)", 64),
            ("Quot(Z12; 4)", 4),
            ("Corner(T2(Z2); [[1,0],[0,0]])", 2),
            ("Idealization(Z4, Z2)", 8),
            ("Morita(Z2, Z2, Z2, Z2)", 16),
            ("Morita(Z2, Z4, Z2, Z2)", 32),
        ] {
            assert_eq!(ctx.build_str(text).unwrap().size(), size, "{text}");
        }
    }

    #[test]
    fn validation_errors() {
        let ctx = BuildContext::default();
        let err = ctx.build_str("Corner(Z6; 2)").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
        assert!(ctx.build_str("Idealization(T2(Z2), Z2)").is_err());
        assert!(ctx.build_str("Idealization(Z4, Z3)").is_err());
        assert!(ctx.build_str("Idealization(Z4, @missing)").is_err());
        // n·m read as an integer is not additive in m when M = Z2 and B = Z4.
        assert!(ctx.build_str("Morita(Z2, Z4, Z2, Z2, mul)").is_err());
        let err = ctx.build_str("T7(Z4)").unwrap_err();
        assert!(err.to_string().contains("T7(Z4)"), "{err}");
    }

    #[test]
    fn tables_load_from_json() {
        let mut ctx = BuildContext::default();
        ctx.load_tables_json(
            r#"{"modules": {"v": {"factors": [2, 2], "left": [[[0,0],[0,0]], [[1,0],[0,1]]]}},
                "pairings": {"p": {"pair_a": [[0,0],[0,1]], "pair_b": [[0,0],[0,1]]}}}"#,
        )
        .unwrap();
        assert_eq!(ctx.build_str("Idealization(Z2, @v)").unwrap().size(), 8);
        assert_eq!(ctx.build_str("Morita(Z2, Z2, Z2, Z2, @p)").unwrap().size(), 16);
        assert!(ctx.load_tables_json("{\"bogus\": 1}").is_err());
    }
}
