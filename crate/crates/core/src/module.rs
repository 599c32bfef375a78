//! Finite abelian groups `Z_d1 x ... x Z_dk` and bimodule actions on them.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lattice;
use crate::literal::Literal;
use crate::ring::FiniteRing;
use crate::spec::ModuleSpec;

/// A product of cyclic groups, encoded mixed-radix with the first factor most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>, cap: usize) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::validation("cyclic factors must have positive order"));
        }
        let size = factors
            .iter()
            .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
            .unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::SizeLimit {
                what: format!("module {}", ModuleSpec::Cyclic(factors.clone())),
                size,
                cap,
            });
        }
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        Ok(AbelianGroup {
            factors,
            strides,
            size: size as usize,
        })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coords(&self, x: usize) -> Vec<u64> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| ((x / s) as u64) % d)
            .collect()
    }

    pub fn from_coords(&self, coords: &[i64]) -> usize {
        self.factors
            .iter()
            .zip(&self.strides)
            .zip(coords)
            .map(|((&d, &s), &c)| c.rem_euclid(d as i64) as usize * s)
            .sum()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| {
                let d = d as usize;
                ((a / s) % d + (b / s) % d) % d * s
            })
            .sum()
    }

    pub fn neg(&self, a: usize) -> usize {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| {
                let d = d as usize;
                (d - (a / s) % d) % d * s
            })
            .sum()
    }

    /// The integer multiple `k·a`.
    pub fn scale(&self, k: i64, a: usize) -> usize {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| {
                let c = ((a / s) as u64 % d) as i128;
                (c * k as i128).rem_euclid(d as i128) as usize * s
            })
            .sum()
    }

    pub fn display(&self, x: usize) -> String {
        let coords = self.coords(x);
        match coords.len() {
            0 => "0".to_string(),
            1 => coords[0].to_string(),
            _ => {
                let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn from_literal(&self, lit: &Literal) -> Result<usize> {
        match (self.factors.len(), lit) {
            (0, Literal::Int(0)) => Ok(0),
            (1, Literal::Int(v)) => Ok(self.from_coords(&[*v])),
            (k, Literal::Tuple(items)) if k > 1 && items.len() == k => {
                let coords = items
                    .iter()
                    .map(|it| {
                        it.as_int()
                            .ok_or_else(|| Error::element(lit, "module coordinates must be integers"))
                    })
                    .collect::<Result<Vec<i64>>>()?;
                Ok(self.from_coords(&coords))
            }
            _ => Err(Error::element(
                lit,
                format!("expected an element of {}", ModuleSpec::Cyclic(self.factors.clone())),
            )),
        }
    }
}

/// Explicit action data for a named module, as read from a JSON module file.
///
/// `left[r]` is the integer matrix by which ring element `r` (by index) acts on
/// the generator coordinates: `(r·m)_i = sum_j left[r][i][j] * m_j mod d_i`.
/// `right` has the same shape for the right ring; when absent the left action
/// is reused on the right.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ActionTables {
    pub factors: Vec<u64>,
    pub left: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub right: Option<Vec<Vec<Vec<i64>>>>,
}

/// An (L, R)-bimodule over finite rings, stored as full action tables.
#[derive(Debug, Clone)]
pub struct Bimodule {
    spec: ModuleSpec,
    group: AbelianGroup,
    left_ring: Arc<FiniteRing>,
    right_ring: Arc<FiniteRing>,
    left: Vec<u32>,
    right: Vec<u32>,
}

impl Bimodule {
    /// Residue action of `Z_n` on `Z_d` (requires `d | n`) on both sides.
    pub fn canonical(
        factors: Vec<u64>,
        left_ring: Arc<FiniteRing>,
        right_ring: Arc<FiniteRing>,
    ) -> Result<Self> {
        let spec = ModuleSpec::Cyclic(factors.clone());
        let cap = left_ring.limits().max_ring_size;
        let group = AbelianGroup::new(factors, cap)?;
        for ring in [&left_ring, &right_ring] {
            let n = ring.residue_modulus().ok_or_else(|| {
                Error::validation(format!(
                    "the residue action of {spec} needs a residue ring Z_n, got {}",
                    ring.spec()
                ))
            })?;
            if let Some(d) = group.factors().iter().find(|&&d| n % d != 0) {
                return Err(Error::validation(format!(
                    "Z{d} is not a module over Z{n} under the residue action ({d} does not divide {n})"
                )));
            }
        }
        let left = (0..left_ring.size())
            .flat_map(|r| (0..group.size()).map(move |m| (r, m)))
            .map(|(r, m)| group.scale(r as i64, m) as u32)
            .collect();
        let right = (0..group.size())
            .flat_map(|m| (0..right_ring.size()).map(move |s| (m, s)))
            .map(|(m, s)| group.scale(s as i64, m) as u32)
            .collect();
        let module = Bimodule {
            spec,
            group,
            left_ring,
            right_ring,
            left,
            right,
        };
        module.validate()?;
        Ok(module)
    }

    /// Builds a bimodule from per-element action matrices and validates every axiom.
    pub fn from_tables(
        spec: ModuleSpec,
        tables: &ActionTables,
        left_ring: Arc<FiniteRing>,
        right_ring: Arc<FiniteRing>,
    ) -> Result<Self> {
        let cap = left_ring.limits().max_ring_size;
        let group = AbelianGroup::new(tables.factors.clone(), cap)?;
        let k = group.factors().len();
        let right_mats = tables.right.as_ref().unwrap_or(&tables.left);
        let check_shape = |mats: &Vec<Vec<Vec<i64>>>, ring: &FiniteRing, side: &str| {
            if mats.len() != ring.size() {
                return Err(Error::validation(format!(
                    "{side} action of {spec} lists {} matrices for a ring of size {}",
                    mats.len(),
                    ring.size()
                )));
            }
            if mats.iter().any(|m| m.len() != k || m.iter().any(|row| row.len() != k)) {
                return Err(Error::validation(format!(
                    "{side} action matrices of {spec} must be {k}x{k}"
                )));
            }
            Ok(())
        };
        check_shape(&tables.left, &left_ring, "left")?;
        check_shape(right_mats, &right_ring, "right")?;
        let apply = |mat: &Vec<Vec<i64>>, m: usize| -> usize {
            let c = group.coords(m);
            let out: Vec<i64> = mat
                .iter()
                .zip(group.factors())
                .map(|(row, &d)| {
                    row.iter()
                        .zip(&c)
                        .map(|(&a, &x)| a as i128 * x as i128)
                        .sum::<i128>()
                        .rem_euclid(d as i128) as i64
                })
                .collect();
            group.from_coords(&out)
        };
        let left = (0..left_ring.size())
            .flat_map(|r| (0..group.size()).map(move |m| (r, m)))
            .map(|(r, m)| apply(&tables.left[r], m) as u32)
            .collect();
        let right = (0..group.size())
            .flat_map(|m| (0..right_ring.size()).map(move |s| (m, s)))
            .map(|(m, s)| apply(&right_mats[s], m) as u32)
            .collect();
        let module = Bimodule {
            spec,
            group,
            left_ring,
            right_ring,
            left,
            right,
        };
        module.validate()?;
        Ok(module)
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    pub fn left_ring(&self) -> &Arc<FiniteRing> {
        &self.left_ring
    }

    pub fn right_ring(&self) -> &Arc<FiniteRing> {
        &self.right_ring
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.add(a, b)
    }

    /// `r·m` for `r` in the left ring.
    pub fn act_left(&self, r: usize, m: usize) -> usize {
        self.left[r * self.size() + m] as usize
    }

    /// `m·s` for `s` in the right ring.
    pub fn act_right(&self, m: usize, s: usize) -> usize {
        self.right[m * self.right_ring.size() + s] as usize
    }

    /// Exhaustively checks additivity, associativity, unitality and the
    /// compatibility `(r·m)·s = r·(m·s)`.
    pub fn validate(&self) -> Result<()> {
        let fail = |what: &str, witness: String| {
            Err(Error::validation(format!(
                "{} is not a bimodule: {what} fails at {witness}",
                self.spec
            )))
        };
        let (lr, rr, g) = (&*self.left_ring, &*self.right_ring, &self.group);
        let msize = g.size();
        for m in 0..msize {
            if self.act_left(lr.one(), m) != m {
                return fail("1·m = m", format!("m={}", g.display(m)));
            }
            if self.act_right(m, rr.one()) != m {
                return fail("m·1 = m", format!("m={}", g.display(m)));
            }
        }
        for r in 0..lr.size() {
            for m in 0..msize {
                for m2 in 0..msize {
                    if self.act_left(r, g.add(m, m2)) != g.add(self.act_left(r, m), self.act_left(r, m2)) {
                        return fail(
                            "r·(m+m') = r·m + r·m'",
                            format!("r={}, m={}, m'={}", lr.display(r), g.display(m), g.display(m2)),
                        );
                    }
                }
                for r2 in 0..lr.size() {
                    let m_sum = self.act_left(lr.add(r, r2), m);
                    if m_sum != g.add(self.act_left(r, m), self.act_left(r2, m)) {
                        return fail(
                            "(r+r')·m = r·m + r'·m",
                            format!("r={}, r'={}, m={}", lr.display(r), lr.display(r2), g.display(m)),
                        );
                    }
                    if self.act_left(lr.mul(r, r2), m) != self.act_left(r, self.act_left(r2, m)) {
                        return fail(
                            "(rr')·m = r·(r'·m)",
                            format!("r={}, r'={}, m={}", lr.display(r), lr.display(r2), g.display(m)),
                        );
                    }
                }
            }
        }
        for s in 0..rr.size() {
            for m in 0..msize {
                for m2 in 0..msize {
                    if self.act_right(g.add(m, m2), s) != g.add(self.act_right(m, s), self.act_right(m2, s)) {
                        return fail(
                            "(m+m')·s = m·s + m'·s",
                            format!("m={}, m'={}, s={}", g.display(m), g.display(m2), rr.display(s)),
                        );
                    }
                }
                for s2 in 0..rr.size() {
                    if self.act_right(m, rr.add(s, s2)) != g.add(self.act_right(m, s), self.act_right(m, s2)) {
                        return fail(
                            "m·(s+s') = m·s + m·s'",
                            format!("m={}, s={}, s'={}", g.display(m), rr.display(s), rr.display(s2)),
                        );
                    }
                    if self.act_right(m, rr.mul(s, s2)) != self.act_right(self.act_right(m, s), s2) {
                        return fail(
                            "m·(ss') = (m·s)·s'",
                            format!("m={}, s={}, s'={}", g.display(m), rr.display(s), rr.display(s2)),
                        );
                    }
                }
                for r in 0..lr.size() {
                    if self.act_right(self.act_left(r, m), s) != self.act_left(r, self.act_right(m, s)) {
                        return fail(
                            "(r·m)·s = r·(m·s)",
                            format!("r={}, m={}, s={}", lr.display(r), g.display(m), rr.display(s)),
                        );
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether left and right actions agree through the same ring (`r·m = m·r`).
    pub fn is_symmetric(&self) -> bool {
        Arc::ptr_eq(&self.left_ring, &self.right_ring)
            && (0..self.left_ring.size())
                .all(|r| (0..self.size()).all(|m| self.act_left(r, m) == self.act_right(m, r)))
    }

    /// Every sub-bimodule, sorted by size then members.
    pub fn sub_bimodules(&self, limit: usize) -> Result<Vec<FixedBitSet>> {
        let size = self.size();
        let add = |a: usize, b: usize| self.group.add(a, b);
        let atoms: Vec<FixedBitSet> = (0..size)
            .map(|m| self.generated_by(&[m]))
            .collect();
        let mut all = lattice::sum_closure(add, atoms, limit)?;
        lattice::sort_by_size_then_members(&mut all);
        Ok(all)
    }

    /// The sub-bimodule generated by `gens`: the additive span of every `r·g·s`.
    pub fn generated_by(&self, gens: &[usize]) -> FixedBitSet {
        let size = self.size();
        let mut products = FixedBitSet::with_capacity(size);
        for &g in gens {
            for r in 0..self.left_ring.size() {
                let rg = self.act_left(r, g);
                for s in 0..self.right_ring.size() {
                    products.insert(self.act_right(rg, s));
                }
            }
        }
        lattice::additive_span(
            |a, b| self.group.add(a, b),
            lattice::singleton(size, 0),
            products.ones(),
        )
    }

    pub fn display(&self, m: usize) -> String {
        self.group.display(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::BuildContext;

    fn zn(n: u64) -> Arc<FiniteRing> {
        BuildContext::default().build_str(&format!("Z{n}")).unwrap()
    }

    #[test]
    fn group_arithmetic() {
        let g = AbelianGroup::new(vec![2, 3], 100).unwrap();
        assert_eq!(g.size(), 6);
        let x = g.from_coords(&[1, 2]);
        assert_eq!(g.coords(x), vec![1, 2]);
        assert_eq!(g.add(x, x), g.from_coords(&[0, 1]));
        assert_eq!(g.add(x, g.neg(x)), 0);
        assert_eq!(g.scale(-1, x), g.neg(x));
        assert_eq!(g.display(x), "(1,2)");
        assert!(AbelianGroup::new(vec![64, 64, 64], 4096).is_err());
    }

    #[test]
    fn canonical_action_requires_divisibility() {
        let z4 = zn(4);
        let m = Bimodule::canonical(vec![2], z4.clone(), z4.clone()).unwrap();
        assert_eq!(m.act_left(3, 1), 1);
        assert_eq!(m.act_left(2, 1), 0);
        assert!(m.is_symmetric());
        assert!(Bimodule::canonical(vec![3], z4.clone(), z4).is_err());
    }

    #[test]
    fn explicit_tables_are_validated() {
        let z2 = zn(2);
        // Z2 acting on Z2 x Z2 by the identity for 1 and zero for 0.
        let ok = ActionTables {
            factors: vec![2, 2],
            left: vec![vec![vec![0, 0], vec![0, 0]], vec![vec![1, 0], vec![0, 1]]],
            right: None,
        };
        let m = Bimodule::from_tables(ModuleSpec::Named("v".into()), &ok, z2.clone(), z2.clone()).unwrap();
        assert_eq!(m.sub_bimodules(100).unwrap().len(), 5);
        // 1 acting by a non-identity matrix breaks unitality.
        let bad = ActionTables {
            factors: vec![2, 2],
            left: vec![vec![vec![0, 0], vec![0, 0]], vec![vec![0, 1], vec![1, 0]]],
            right: None,
        };
        let err = Bimodule::from_tables(ModuleSpec::Named("w".into()), &bad, z2.clone(), z2).unwrap_err();
        assert!(err.to_string().contains("1·m = m"), "{err}");
    }

    #[test]
    fn submodules_of_cyclic_module_are_divisor_subgroups() {
        let z12 = zn(12);
        let m = Bimodule::canonical(vec![12], z12.clone(), z12).unwrap();
        assert_eq!(m.sub_bimodules(100).unwrap().len(), 6);
    }
}
