//! Ring constructions: residue rings, direct products, upper-triangular
//! matrix rings, corner rings, idealizations and Morita context rings, plus
//! the ideal builders that the theorem checkers need for each of them.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::literal::parse_literal;
use crate::module::Bimodule;
use crate::ring::{upper_pos, FiniteRing, Limits, Structure};
use crate::spec::{MoritaRingSpec, Pairing, RingSpec};

fn check_size(what: impl FnOnce() -> String, size: Option<u128>, limits: Limits) -> Result<usize> {
    match size {
        Some(s) if s <= limits.max_ring_size as u128 => Ok(s as usize),
        other => Err(Error::SizeLimit {
            what: what(),
            size: other.unwrap_or(u128::MAX),
            cap: limits.max_ring_size,
        }),
    }
}

/// `Z_n`.
pub fn residue_ring(n: u64, limits: Limits) -> Result<Arc<FiniteRing>> {
    if n == 0 {
        return Err(Error::validation("residue modulus must be at least 1"));
    }
    let size = check_size(|| format!("Z{n}"), Some(n as u128), limits)?;
    Ok(Arc::new(FiniteRing::assemble(
        RingSpec::Zn(n),
        size,
        Structure::Residue { modulus: size },
        limits,
    )))
}

/// Coordinatewise product. A single factor is returned unchanged.
pub fn direct_product(parts: Vec<Arc<FiniteRing>>) -> Result<Arc<FiniteRing>> {
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().unwrap());
    }
    let first = parts
        .first()
        .ok_or_else(|| Error::validation("a direct product needs at least one factor"))?;
    let limits = first.limits();
    let spec = RingSpec::Product(parts.iter().map(|p| p.spec().clone()).collect());
    let size = parts.iter().try_fold(1u128, |acc, p| acc.checked_mul(p.size() as u128));
    let size = check_size(|| format!("product {spec}"), size, limits)?;
    let mut strides = vec![1; parts.len()];
    for i in (0..parts.len() - 1).rev() {
        strides[i] = strides[i + 1] * parts[i + 1].size();
    }
    Ok(Arc::new(FiniteRing::assemble(
        spec,
        size,
        Structure::Product { parts, strides },
        limits,
    )))
}

/// `T_k(R)`. `T_1(R)` is `R` itself.
pub fn triangular_ring(k: usize, base: Arc<FiniteRing>) -> Result<Arc<FiniteRing>> {
    if k == 0 {
        return Err(Error::validation("matrix dimension must be at least 1"));
    }
    if k == 1 {
        return Ok(base);
    }
    let limits = base.limits();
    let spec = RingSpec::Triangular(k, Box::new(base.spec().clone()));
    let cells = k * (k + 1) / 2;
    let size = (base.size() as u128).checked_pow(cells as u32);
    let size = check_size(|| format!("triangular ring {spec}"), size, limits)?;
    let mut strides = vec![1; cells];
    for p in (0..cells - 1).rev() {
        strides[p] = strides[p + 1] * base.size();
    }
    debug_assert_eq!(upper_pos(k, k - 1, k - 1), cells - 1);
    Ok(Arc::new(FiniteRing::assemble(
        spec,
        size,
        Structure::Triangular { dim: k, base, strides },
        limits,
    )))
}

/// The corner ring `fRf` with identity `f`.
pub fn corner_ring(base: &Arc<FiniteRing>, f: usize) -> Result<Arc<FiniteRing>> {
    base.check(f)?;
    if base.mul(f, f) != f {
        return Err(Error::validation(format!(
            "corner element {} is not idempotent in {}",
            base.display(f),
            base.spec()
        )));
    }
    let mut inside = FixedBitSet::with_capacity(base.size());
    for x in base.elements() {
        inside.insert(base.mul(base.mul(f, x), f));
    }
    let carrier: Vec<usize> = inside.ones().collect();
    let mut position = vec![u32::MAX; base.size()];
    for (i, &x) in carrier.iter().enumerate() {
        position[x] = i as u32;
    }
    let literal = parse_literal(&base.display(f))?;
    let spec = RingSpec::Corner(Box::new(base.spec().clone()), literal);
    Ok(Arc::new(FiniteRing::assemble(
        spec,
        carrier.len(),
        Structure::Corner {
            base: base.clone(),
            idempotent: f,
            carrier,
            position,
        },
        base.limits(),
    )))
}

/// `R(M)` for a commutative `R` and a module whose left and right actions agree.
pub fn idealization(module: Bimodule) -> Result<Arc<FiniteRing>> {
    let base = module.left_ring().clone();
    if !Arc::ptr_eq(&base, module.right_ring()) || !module.is_symmetric() {
        return Err(Error::validation(format!(
            "module {} must be a symmetric {}-module",
            module.spec(),
            base.spec()
        )));
    }
    if !base.is_commutative() {
        return Err(Error::validation(format!(
            "idealization needs a commutative base ring, {} is not",
            base.spec()
        )));
    }
    let limits = base.limits();
    let spec = RingSpec::Idealization(Box::new(base.spec().clone()), module.spec().clone());
    let size = (base.size() as u128).checked_mul(module.size() as u128);
    let size = check_size(|| format!("idealization {spec}"), size, limits)?;
    Ok(Arc::new(FiniteRing::assemble(
        spec,
        size,
        Structure::Idealization {
            base,
            module: Arc::new(module),
        },
        limits,
    )))
}

/// Explicit pairing values as element indices: `pair_a[m][n]` in `A`, `pair_b[n][m]` in `B`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct PairingTables {
    pub pair_a: Vec<Vec<usize>>,
    pub pair_b: Vec<Vec<usize>>,
}

/// A Morita context laid out as `[[A, M], [N, B]]`.
///
/// `M` is an `(A, B)`-bimodule and `N` a `(B, A)`-bimodule. The pairings are
/// `pair_A: M x N -> A` and `pair_B: N x M -> B`. Written as `(R, S, N, M, psi, phi)`
/// with matrices `[[r, n], [m, s]]`, the same context has `R = A`, `S = B`,
/// its `N` is our `M` and its `M` is our `N`, `psi = pair_A` and `phi = pair_B`.
#[derive(Debug, Clone)]
pub struct MoritaContext {
    pub a: Arc<FiniteRing>,
    pub b: Arc<FiniteRing>,
    pub m: Bimodule,
    pub n: Bimodule,
    pub pairing: Pairing,
    pair_a: Vec<u32>,
    pair_b: Vec<u32>,
}

impl MoritaContext {
    fn new(m: Bimodule, n: Bimodule, pairing: Pairing, pair_a: Vec<u32>, pair_b: Vec<u32>) -> Result<Self> {
        let a = m.left_ring().clone();
        let b = m.right_ring().clone();
        if !Arc::ptr_eq(n.left_ring(), &b) || !Arc::ptr_eq(n.right_ring(), &a) {
            return Err(Error::validation(
                "M must be an (A,B)-bimodule and N a (B,A)-bimodule over the same rings",
            ));
        }
        let ctx = MoritaContext {
            a,
            b,
            m,
            n,
            pairing,
            pair_a,
            pair_b,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    /// Both context products vanish.
    pub fn zero(m: Bimodule, n: Bimodule) -> Result<Self> {
        let (sm, sn) = (m.size(), n.size());
        Self::new(m, n, Pairing::Zero, vec![0; sm * sn], vec![0; sn * sm])
    }

    /// `pair_A(m, n) = mn` and `pair_B(n, m) = nm` read as integers, for cyclic `M` and `N`.
    pub fn multiplication(m: Bimodule, n: Bimodule) -> Result<Self> {
        if m.group().factors().len() != 1 || n.group().factors().len() != 1 {
            return Err(Error::validation(
                "the `mul` pairing needs cyclic modules M = Z_d and N = Z_d'",
            ));
        }
        let (a, b) = (m.left_ring().clone(), m.right_ring().clone());
        let (sm, sn) = (m.size(), n.size());
        let pair_a = (0..sm)
            .flat_map(|x| (0..sn).map(move |y| (x, y)))
            .map(|(x, y)| a.from_int((x * y) as i64) as u32)
            .collect();
        let pair_b = (0..sn)
            .flat_map(|y| (0..sm).map(move |x| (y, x)))
            .map(|(y, x)| b.from_int((y * x) as i64) as u32)
            .collect();
        Self::new(m, n, Pairing::Mul, pair_a, pair_b)
    }

    pub fn from_tables(m: Bimodule, n: Bimodule, name: &str, tables: &PairingTables) -> Result<Self> {
        let (sa, sb) = (m.left_ring().size(), m.right_ring().size());
        let (sm, sn) = (m.size(), n.size());
        let flatten = |rows: &Vec<Vec<usize>>, r: usize, c: usize, cap: usize, which: &str| {
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::validation(format!("pairing `{name}`: {which} must be {r}x{c}")));
            }
            if let Some(&v) = rows.iter().flatten().find(|&&v| v >= cap) {
                return Err(Error::validation(format!(
                    "pairing `{name}`: {which} value {v} outside a ring of size {cap}"
                )));
            }
            Ok(rows.iter().flatten().map(|&v| v as u32).collect::<Vec<_>>())
        };
        let pair_a = flatten(&tables.pair_a, sm, sn, sa, "pair_a")?;
        let pair_b = flatten(&tables.pair_b, sn, sm, sb, "pair_b")?;
        Self::new(m, n, Pairing::Named(name.to_string()), pair_a, pair_b)
    }

    #[inline]
    pub fn pair_a(&self, m: usize, n: usize) -> usize {
        self.pair_a[m * self.n.size() + n] as usize
    }

    #[inline]
    pub fn pair_b(&self, n: usize, m: usize) -> usize {
        self.pair_b[n * self.m.size() + m] as usize
    }

    /// Checks the associativity identities first, then additivity, linearity and balance.
    pub fn validate(&self) -> Result<()> {
        let (a, b, mm, nn) = (&self.a, &self.b, &self.m, &self.n);
        let fail = |law: &str, at: String, lhs: String, rhs: String| {
            Err(Error::validation(format!(
                "pairing violates {law} at {at} ({lhs} != {rhs})"
            )))
        };
        for m in 0..mm.size() {
            for n in 0..nn.size() {
                for n2 in 0..nn.size() {
                    let lhs = nn.act_left(self.pair_b(n, m), n2);
                    let rhs = nn.act_right(n, self.pair_a(m, n2));
                    if lhs != rhs {
                        return fail(
                            "pair_B(n,m)·n' = n·pair_A(m,n')",
                            format!("m={}, n={}, n'={}", mm.display(m), nn.display(n), nn.display(n2)),
                            nn.display(lhs),
                            nn.display(rhs),
                        );
                    }
                }
            }
        }
        for m in 0..mm.size() {
            for n in 0..nn.size() {
                for m2 in 0..mm.size() {
                    let lhs = mm.act_left(self.pair_a(m, n), m2);
                    let rhs = mm.act_right(m, self.pair_b(n, m2));
                    if lhs != rhs {
                        return fail(
                            "pair_A(m,n)·m' = m·pair_B(n,m')",
                            format!("m={}, n={}, m'={}", mm.display(m), nn.display(n), mm.display(m2)),
                            mm.display(lhs),
                            mm.display(rhs),
                        );
                    }
                }
            }
        }
        for m in 0..mm.size() {
            for n in 0..nn.size() {
                let at = || format!("m={}, n={}", mm.display(m), nn.display(n));
                for m2 in 0..mm.size() {
                    let l = self.pair_a(mm.add(m, m2), n);
                    let r = a.add(self.pair_a(m, n), self.pair_a(m2, n));
                    if l != r {
                        return fail("pair_A(m+m',n) = pair_A(m,n)+pair_A(m',n)", at(), a.display(l), a.display(r));
                    }
                    let l = self.pair_b(n, mm.add(m, m2));
                    let r = b.add(self.pair_b(n, m), self.pair_b(n, m2));
                    if l != r {
                        return fail("pair_B(n,m+m') = pair_B(n,m)+pair_B(n,m')", at(), b.display(l), b.display(r));
                    }
                }
                for n2 in 0..nn.size() {
                    let l = self.pair_a(m, nn.add(n, n2));
                    let r = a.add(self.pair_a(m, n), self.pair_a(m, n2));
                    if l != r {
                        return fail("pair_A(m,n+n') = pair_A(m,n)+pair_A(m,n')", at(), a.display(l), a.display(r));
                    }
                    let l = self.pair_b(nn.add(n, n2), m);
                    let r = b.add(self.pair_b(n, m), self.pair_b(n2, m));
                    if l != r {
                        return fail("pair_B(n+n',m) = pair_B(n,m)+pair_B(n',m)", at(), b.display(l), b.display(r));
                    }
                }
                for x in a.elements() {
                    let l = self.pair_a(mm.act_left(x, m), n);
                    let r = a.mul(x, self.pair_a(m, n));
                    if l != r {
                        return fail("pair_A(a·m,n) = a·pair_A(m,n)", at(), a.display(l), a.display(r));
                    }
                    let l = self.pair_a(m, nn.act_right(n, x));
                    let r = a.mul(self.pair_a(m, n), x);
                    if l != r {
                        return fail("pair_A(m,n·a) = pair_A(m,n)·a", at(), a.display(l), a.display(r));
                    }
                    let l = self.pair_b(nn.act_right(n, x), m);
                    let r = self.pair_b(n, mm.act_left(x, m));
                    if l != r {
                        return fail("pair_B(n·a,m) = pair_B(n,a·m)", at(), b.display(l), b.display(r));
                    }
                }
                for y in b.elements() {
                    let l = self.pair_b(nn.act_left(y, n), m);
                    let r = b.mul(y, self.pair_b(n, m));
                    if l != r {
                        return fail("pair_B(b·n,m) = b·pair_B(n,m)", at(), b.display(l), b.display(r));
                    }
                    let l = self.pair_b(n, mm.act_right(m, y));
                    let r = b.mul(self.pair_b(n, m), y);
                    if l != r {
                        return fail("pair_B(n,m·b) = pair_B(n,m)·b", at(), b.display(l), b.display(r));
                    }
                    let l = self.pair_a(mm.act_right(m, y), n);
                    let r = self.pair_a(m, nn.act_left(y, n));
                    if l != r {
                        return fail("pair_A(m·b,n) = pair_A(m,b·n)", at(), a.display(l), a.display(r));
                    }
                }
            }
        }
        Ok(())
    }

    /// `(a, m, n, b)` from `((a|M| + m)|N| + n)|B| + b`.
    pub fn split(&self, x: usize) -> (usize, usize, usize, usize) {
        let (sm, sn, sb) = (self.m.size(), self.n.size(), self.b.size());
        let b = x % sb;
        let x = x / sb;
        let n = x % sn;
        let x = x / sn;
        (x / sm, x % sm, n, b)
    }

    pub fn compose(&self, a: usize, m: usize, n: usize, b: usize) -> usize {
        ((a * self.m.size() + m) * self.n.size() + n) * self.b.size() + b
    }

    /// `[[a,m],[n,b]]·[[a',m'],[n',b']] = [[aa'+pair_A(m,n'), am'+mb'], [na'+bn', pair_B(n,m')+bb']]`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (a, m, n, b) = self.split(x);
        let (a2, m2, n2, b2) = self.split(y);
        let (ra, rb, mm, nn) = (&self.a, &self.b, &self.m, &self.n);
        self.compose(
            ra.add(ra.mul(a, a2), self.pair_a(m, n2)),
            mm.add(mm.act_left(a, m2), mm.act_right(m, b2)),
            nn.add(nn.act_right(n, a2), nn.act_left(b, n2)),
            rb.add(self.pair_b(n, m2), rb.mul(b, b2)),
        )
    }
}

pub fn morita_ring(ctx: MoritaContext) -> Result<Arc<FiniteRing>> {
    let limits = ctx.a.limits();
    let spec = RingSpec::Morita(Box::new(MoritaRingSpec {
        a: ctx.a.spec().clone(),
        b: ctx.b.spec().clone(),
        m: ctx.m.spec().clone(),
        n: ctx.n.spec().clone(),
        pairing: ctx.pairing.clone(),
    }));
    let size = [ctx.a.size(), ctx.m.size(), ctx.n.size(), ctx.b.size()]
        .iter()
        .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128));
    let size = check_size(|| format!("Morita context ring {spec}"), size, limits)?;
    Ok(Arc::new(FiniteRing::assemble(
        spec,
        size,
        Structure::Morita(Arc::new(ctx)),
        limits,
    )))
}

/// The four corner collections of a subset of a Morita context ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextProjection {
    pub p_a: Vec<usize>,
    pub p_m: Vec<usize>,
    pub p_n: Vec<usize>,
    pub p_b: Vec<usize>,
}

pub fn context_projections(ideal: &Ideal) -> Result<ContextProjection> {
    let ring = ideal.ring();
    let ctx = ring
        .morita_context()
        .ok_or_else(|| Error::Precondition(format!("{} is not a Morita context ring", ring.spec())))?;
    let mut sets = [
        FixedBitSet::with_capacity(ctx.a.size()),
        FixedBitSet::with_capacity(ctx.m.size()),
        FixedBitSet::with_capacity(ctx.n.size()),
        FixedBitSet::with_capacity(ctx.b.size()),
    ];
    for &x in ideal.elements() {
        let (a, m, n, b) = ctx.split(x);
        sets[0].insert(a);
        sets[1].insert(m);
        sets[2].insert(n);
        sets[3].insert(b);
    }
    let [p_a, p_m, p_n, p_b] = sets.map(|s| s.ones().collect());
    Ok(ContextProjection { p_a, p_m, p_n, p_b })
}

/// `[[A1, M1], [N1, B1]]` as an ideal; fails if the set is not closed.
pub fn morita_ideal(
    ring: &Arc<FiniteRing>,
    a1: &Ideal,
    m1: &FixedBitSet,
    n1: &FixedBitSet,
    b1: &Ideal,
) -> Result<Ideal> {
    let ctx = ring
        .morita_context()
        .ok_or_else(|| Error::Precondition(format!("{} is not a Morita context ring", ring.spec())))?;
    let mut members = FixedBitSet::with_capacity(ring.size());
    for &a in a1.elements() {
        for m in m1.ones() {
            for n in n1.ones() {
                for &b in b1.elements() {
                    members.insert(ctx.compose(a, m, n, b));
                }
            }
        }
    }
    Ideal::from_members(ring, members)
}

/// `I_1 x ... x I_k` inside a direct product.
pub fn product_ideal(ring: &Arc<FiniteRing>, parts: &[&Ideal]) -> Result<Ideal> {
    let factors = ring
        .product_parts()
        .ok_or_else(|| Error::Precondition(format!("{} is not a direct product", ring.spec())))?;
    if factors.len() != parts.len() || factors.iter().zip(parts).any(|(f, i)| !Arc::ptr_eq(f, i.ring())) {
        return Err(Error::Precondition(format!(
            "need one ideal of each factor of {}",
            ring.spec()
        )));
    }
    let mut members = FixedBitSet::with_capacity(ring.size());
    let mut coords = vec![0usize; parts.len()];
    fill_product(ring, parts, 0, &mut coords, &mut members);
    Ideal::from_members(ring, members)
}

fn fill_product(ring: &FiniteRing, parts: &[&Ideal], i: usize, coords: &mut [usize], out: &mut FixedBitSet) {
    if i == parts.len() {
        out.insert(ring.product_compose(coords));
        return;
    }
    for &x in parts[i].elements() {
        coords[i] = x;
        fill_product(ring, parts, i + 1, coords, out);
    }
}

/// `I(N) = {(a, n) : a in I, n in N}` inside an idealization, as a bare set.
///
/// It is an ideal exactly when `I·M` lies in `N`.
pub fn submodule_set(ring: &FiniteRing, ideal: &Ideal, sub: &FixedBitSet) -> Result<FixedBitSet> {
    let (base, _) = ring
        .idealization_parts()
        .ok_or_else(|| Error::Precondition(format!("{} is not an idealization", ring.spec())))?;
    if !Arc::ptr_eq(base, ideal.ring()) {
        return Err(Error::Precondition("ideal does not belong to the base ring".into()));
    }
    let mut members = FixedBitSet::with_capacity(ring.size());
    for &a in ideal.elements() {
        for n in sub.ones() {
            members.insert(ring.idealization_compose(a, n));
        }
    }
    Ok(members)
}

pub fn submodule_ideal(ring: &Arc<FiniteRing>, ideal: &Ideal, sub: &FixedBitSet) -> Result<Ideal> {
    Ideal::from_members(ring, submodule_set(ring, ideal, sub)?)
}

/// `[[I, R], [0, J]]` inside `T_2(R)`.
pub fn triangular_ideal(ring: &Arc<FiniteRing>, top: &Ideal, bottom: &Ideal) -> Result<Ideal> {
    let (dim, base) = ring
        .triangular_parts()
        .ok_or_else(|| Error::Precondition(format!("{} is not a triangular matrix ring", ring.spec())))?;
    if dim != 2 || !Arc::ptr_eq(base, top.ring()) || !Arc::ptr_eq(base, bottom.ring()) {
        return Err(Error::Precondition("need T2(R) and two ideals of R".into()));
    }
    let mut members = FixedBitSet::with_capacity(ring.size());
    for &a in top.elements() {
        for r in base.elements() {
            for &c in bottom.elements() {
                members.insert(ring.from_entries(&[vec![a, r], vec![0, c]]));
            }
        }
    }
    Ideal::from_members(ring, members)
}

/// `eI` viewed inside the corner ring `eRe` for a central idempotent `e`.
pub fn corner_ideal(corner: &Arc<FiniteRing>, ideal: &Ideal) -> Result<Ideal> {
    let (base, e) = corner
        .corner_base()
        .ok_or_else(|| Error::Precondition(format!("{} is not a corner ring", corner.spec())))?;
    if !Arc::ptr_eq(base, ideal.ring()) {
        return Err(Error::Precondition("ideal does not belong to the corner's base ring".into()));
    }
    let mut members = FixedBitSet::with_capacity(corner.size());
    for &x in ideal.elements() {
        let ex = base.mul(base.mul(e, x), e);
        let pos = corner
            .corner_locate(ex)
            .expect("exe lies in the corner ring");
        members.insert(pos);
    }
    Ideal::from_members(corner, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::BuildContext;
    use crate::ideals::ideal_generated_by;

    fn ring(text: &str) -> Arc<FiniteRing> {
        BuildContext::default().build_str(text).unwrap()
    }

    #[test]
    fn product_of_z2_and_z3() {
        let r = ring("Z2 x Z3");
        assert_eq!(r.size(), 6);
        assert_eq!(r.element_sets().unwrap().idempotents.len(), 4);
        let z6 = ring("Z6");
        assert!(Arc::ptr_eq(&direct_product(vec![z6.clone()]).unwrap(), &z6));
        assert_eq!(ring("Z6 x Z6").size(), 36);
    }

    #[test]
    fn triangular_idempotents_and_nilpotents() {
        let t = ring("T2(Z2)");
        let e = t.parse_element("[[1,1],[0,0]]").unwrap();
        assert_eq!(t.mul(e, e), e);
        assert_eq!((t.entry(e, 0, 0), t.entry(e, 1, 1)), (1, 0));
        let n = t.parse_element("[[0,1],[0,0]]").unwrap();
        assert!(t.element_sets().unwrap().is_nilpotent(n));
        let z5 = ring("Z5");
        assert!(Arc::ptr_eq(&triangular_ring(1, z5.clone()).unwrap(), &z5));
    }

    #[test]
    fn corner_rings() {
        let t = ring("T2(Z2)");
        let f = t.parse_element("[[1,0],[0,0]]").unwrap();
        let c = corner_ring(&t, f).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.display(c.one()), "[[1,0],[0,0]]");
        assert_eq!(c.mul(c.one(), c.one()), c.one());
        assert_eq!(c.add(c.one(), c.one()), 0);
        assert_eq!(corner_ring(&t, t.one()).unwrap().size(), 8);
        let zero = corner_ring(&t, 0).unwrap();
        assert_eq!((zero.size(), zero.one()), (1, 0));
        assert!(corner_ring(&ring("Z6"), 2).is_err());
    }

    #[test]
    fn idealization_element_sets() {
        let r = ring("Idealization(Z2, Z2)");
        let s = r.element_sets().unwrap();
        let show = |v: &[usize]| v.iter().map(|&x| r.display(x)).collect::<Vec<_>>();
        assert_eq!(show(&s.idempotents), ["(0,0)", "(1,0)"]);
        assert_eq!(show(&s.nilpotents), ["(0,0)", "(0,1)"]);
    }

    /// 2x2 matrix product over Z_n, entries in row-major order.
    fn matmul(x: [u64; 4], y: [u64; 4], n: u64) -> [u64; 4] {
        [
            (x[0] * y[0] + x[1] * y[2]) % n,
            (x[0] * y[1] + x[1] * y[3]) % n,
            (x[2] * y[0] + x[3] * y[2]) % n,
            (x[2] * y[1] + x[3] * y[3]) % n,
        ]
    }

    #[test]
    fn multiplication_pairing_is_full_matrix_ring() {
        for n in [2u64, 3] {
            let r = ring(&format!("Morita(Z{n}, Z{n}, Z{n}, Z{n}, mul)"));
            let ctx = r.morita_context().unwrap().clone();
            let entries = |x: usize| {
                let (a, m, nn, b) = ctx.split(x);
                [a as u64, m as u64, nn as u64, b as u64]
            };
            for x in r.elements() {
                for y in r.elements() {
                    assert_eq!(entries(r.mul(x, y)), matmul(entries(x), entries(y), n));
                }
            }
        }
        assert_eq!(ring("Morita(Z2, Z2, Z2, Z2)").size(), 16);
    }

    #[test]
    fn mismatched_pairings_are_rejected() {
        let ctx = BuildContext::default().with_pairing(
            "half",
            PairingTables {
                pair_a: vec![vec![0, 0], vec![0, 1]],
                pair_b: vec![vec![0, 0], vec![0, 0]],
            },
        );
        let err = ctx.build_str("Morita(Z2, Z2, Z2, Z2, @half)").unwrap_err().to_string();
        assert!(err.contains("pair_B(n,m)·n' = n·pair_A(m,n')"), "{err}");
        assert!(err.contains("m=1, n=1, n'=1"), "{err}");
    }

    #[test]
    fn projections_of_context_ideals() {
        let r = ring("Morita(Z2, Z2, Z2, Z2)");
        let whole = Ideal::whole(&r);
        let p = context_projections(&whole).unwrap();
        assert_eq!((p.p_a.len(), p.p_m.len(), p.p_n.len(), p.p_b.len()), (2, 2, 2, 2));
        let zero = Ideal::zero(&r);
        let p = context_projections(&zero).unwrap();
        assert_eq!((p.p_a.clone(), p.p_m.clone(), p.p_n.clone(), p.p_b.clone()), (vec![0], vec![0], vec![0], vec![0]));
        let g = r.parse_element("[[0,1],[0,0]]").unwrap();
        let i = ideal_generated_by(&r, &[g]).unwrap();
        assert_eq!(i.size(), 2);
        let p = context_projections(&i).unwrap();
        assert_eq!((p.p_a, p.p_m, p.p_n, p.p_b), (vec![0], vec![0, 1], vec![0], vec![0]));
        assert!(context_projections(&Ideal::whole(&ring("Z4"))).is_err());
    }

    #[test]
    fn ideal_builders() {
        let r = ring("Z6 x Z6");
        let parts = r.product_parts().unwrap();
        let left = ideal_generated_by(&parts[0], &[2]).unwrap();
        let right = ideal_generated_by(&parts[1], &[2]).unwrap();
        let p = product_ideal(&r, &[&left, &right]).unwrap();
        assert_eq!(p.size(), 9);
        assert!(product_ideal(&r, &[&left, &left]).is_err());

        let t = ring("T2(Z4)");
        let base = t.triangular_parts().unwrap().1.clone();
        let i = ideal_generated_by(&base, &[2]).unwrap();
        let s = triangular_ideal(&t, &i, &Ideal::zero(&base)).unwrap();
        assert_eq!(s.size(), 2 * 4);

        let id = ring("Idealization(Z4, Z4)");
        let base = id.idealization_parts().unwrap().0.clone();
        let module = id.idealization_parts().unwrap().1.clone();
        let two = ideal_generated_by(&base, &[2]).unwrap();
        let subs = module.sub_bimodules(100).unwrap();
        // 2·Z4 lies in the submodule {0,2}, so I(N) is an ideal.
        assert!(submodule_ideal(&id, &two, &subs[1]).is_ok());
        // but not in {0}.
        assert!(submodule_ideal(&id, &two, &subs[0]).is_err());
    }
}
