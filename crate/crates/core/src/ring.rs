//! Finite unital rings with canonical integer element encoding.
//!
//! Every ring is a [`FiniteRing`] whose elements are the indices `0..size`.
//! Index 0 is always the additive identity. Encodings are mixed-radix over the
//! construction tree: products lexicographically (first factor most
//! significant), triangular matrices row-major over the upper entries,
//! idealizations as `(r, m)`, Morita rings as `(a, m, n, b)`, quotients by the
//! rank of the minimal coset representative and corners by the rank of the
//! carrier element in the base ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::constructions::MoritaContext;
use crate::error::{Error, Result};
use crate::literal::{parse_literal, Literal};
use crate::module::Bimodule;
use crate::sets::ElementSets;
use crate::spec::RingSpec;

/// Rings at or below this size get precomputed addition and multiplication tables.
pub const TABLE_CAP: usize = 1024;

/// Size limits applied when building and analysing rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring that may be built and fully classified.
    pub max_ring_size: usize,
    /// Largest ring whose complete ideal lattice may be enumerated.
    pub lattice_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_size: 4096,
            lattice_cap: 256,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    Residue,
    Product,
    Triangular,
    Quotient,
    Corner,
    Idealization,
    Morita,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Neg,
    Mul,
}

pub(crate) enum Structure {
    Residue {
        modulus: usize,
    },
    Product {
        parts: Vec<Arc<FiniteRing>>,
        strides: Vec<usize>,
    },
    Triangular {
        dim: usize,
        base: Arc<FiniteRing>,
        strides: Vec<usize>,
    },
    Quotient {
        base: Arc<FiniteRing>,
        reps: Vec<usize>,
        class: Vec<u32>,
    },
    Corner {
        base: Arc<FiniteRing>,
        idempotent: usize,
        carrier: Vec<usize>,
        position: Vec<u32>,
    },
    Idealization {
        base: Arc<FiniteRing>,
        module: Arc<Bimodule>,
    },
    Morita(Arc<MoritaContext>),
}

pub struct FiniteRing {
    spec: RingSpec,
    size: usize,
    one: usize,
    structure: Structure,
    neg: Vec<u32>,
    tables: Option<(Vec<u32>, Vec<u32>)>,
    limits: Limits,
    sets: OnceLock<ElementSets>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("spec", &self.spec.to_string())
            .field("size", &self.size)
            .finish()
    }
}

const NOT_IN_CORNER: u32 = u32::MAX;

impl FiniteRing {
    pub(crate) fn assemble(spec: RingSpec, size: usize, structure: Structure, limits: Limits) -> Self {
        let mut ring = FiniteRing {
            spec,
            size,
            one: 0,
            structure,
            neg: Vec::new(),
            tables: None,
            limits,
            sets: OnceLock::new(),
        };
        ring.one = ring.structural_one();
        ring.neg = (0..size).map(|x| ring.structural_neg(x) as u32).collect();
        if size <= TABLE_CAP && !matches!(ring.structure, Structure::Residue { .. }) {
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for a in 0..size {
                for b in 0..size {
                    add.push(ring.structural_add(a, b) as u32);
                    mul.push(ring.structural_mul(a, b) as u32);
                }
            }
            ring.tables = Some((add, mul));
        }
        ring
    }

    pub(crate) fn corner_parts(&self) -> Option<(&Arc<FiniteRing>, usize, &[usize])> {
        match &self.structure {
            Structure::Corner {
                base,
                idempotent,
                carrier,
                ..
            } => Some((base, *idempotent, carrier)),
            _ => None,
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn kind(&self) -> RingKind {
        match &self.structure {
            Structure::Residue { .. } => RingKind::Residue,
            Structure::Product { .. } => RingKind::Product,
            Structure::Triangular { .. } => RingKind::Triangular,
            Structure::Quotient { .. } => RingKind::Quotient,
            Structure::Corner { .. } => RingKind::Corner,
            Structure::Idealization { .. } => RingKind::Idealization,
            Structure::Morita(_) => RingKind::Morita,
        }
    }

    /// `Some(n)` when this is the residue ring `Z_n`.
    pub fn residue_modulus(&self) -> Option<u64> {
        match self.structure {
            Structure::Residue { modulus } => Some(modulus as u64),
            _ => None,
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.size && b < self.size);
        match (&self.tables, &self.structure) {
            (_, Structure::Residue { modulus }) => {
                let s = a + b;
                if s >= *modulus {
                    s - modulus
                } else {
                    s
                }
            }
            (Some((add, _)), _) => add[a * self.size + b] as usize,
            (None, _) => self.structural_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.size && b < self.size);
        match (&self.tables, &self.structure) {
            (_, Structure::Residue { modulus }) => ((a as u64 * b as u64) % *modulus as u64) as usize,
            (Some((_, mul)), _) => mul[a * self.size + b] as usize,
            (None, _) => self.structural_mul(a, b),
        }
    }

    /// `x^k` by repeated squaring; `x^0 = 1`.
    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let mut acc = self.one;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The integer multiple `k·x`.
    pub fn int_mul(&self, k: i64, x: usize) -> usize {
        let mut acc = 0;
        let mut base = if k < 0 { self.neg(x) } else { x };
        let mut k = k.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// The image of the integer `k` in the ring.
    pub fn from_int(&self, k: i64) -> usize {
        self.int_mul(k, self.one)
    }

    pub fn check(&self, x: usize) -> Result<usize> {
        if x < self.size {
            Ok(x)
        } else {
            Err(Error::OutOfRange {
                index: x,
                size: self.size,
            })
        }
    }

    /// Range-checked arithmetic; `Neg` takes one argument, the others two.
    pub fn apply(&self, op: ArithOp, args: &[usize]) -> Result<usize> {
        for &a in args {
            self.check(a)?;
        }
        match (op, args) {
            (ArithOp::Neg, [a]) => Ok(self.neg(*a)),
            (ArithOp::Add, [a, b]) => Ok(self.add(*a, *b)),
            (ArithOp::Mul, [a, b]) => Ok(self.mul(*a, *b)),
            _ => Err(Error::Precondition(format!(
                "{op:?} takes {} argument(s), got {}",
                if op == ArithOp::Neg { 1 } else { 2 },
                args.len()
            ))),
        }
    }

    pub fn elem(&self, index: usize) -> Elem<'_> {
        assert!(index < self.size, "element {index} outside ring of size {}", self.size);
        Elem { ring: self, index }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (a + 1..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Full element classification, computed once and cached.
    pub fn element_sets(&self) -> Result<&ElementSets> {
        if let Some(sets) = self.sets.get() {
            return Ok(sets);
        }
        if self.size > self.limits.max_ring_size {
            return Err(Error::SizeLimit {
                what: format!("ring {}", self.spec),
                size: self.size as u128,
                cap: self.limits.max_ring_size,
            });
        }
        Ok(self.sets.get_or_init(|| ElementSets::compute(self)))
    }

    /// Exhaustively checks the ring axioms; returns the first violated law with witnesses.
    pub fn verify_axioms(&self) -> std::result::Result<(), String> {
        let n = self.size;
        let d = |x: usize| self.display(x);
        for a in 0..n {
            if self.add(a, 0) != a || self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive identity/inverse fails at {}", d(a)));
            }
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return Err(format!("multiplicative identity fails at {}", d(a)));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(format!("a+b = b+a fails at a={}, b={}", d(a), d(b)));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("(a+b)+c fails at {},{},{}", d(a), d(b), d(c)));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("(ab)c = a(bc) fails at {},{},{}", d(a), d(b), d(c)));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("a(b+c) = ab+ac fails at {},{},{}", d(a), d(b), d(c)));
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(format!("(a+b)c = ac+bc fails at {},{},{}", d(a), d(b), d(c)));
                    }
                }
            }
        }
        Ok(())
    }

    // ---- structural accessors ----

    /// Factors of a direct product.
    pub fn product_parts(&self) -> Option<&[Arc<FiniteRing>]> {
        match &self.structure {
            Structure::Product { parts, .. } => Some(parts),
            _ => None,
        }
    }

    /// Projection onto factor `i` of a direct product.
    pub fn product_component(&self, x: usize, i: usize) -> usize {
        match &self.structure {
            Structure::Product { parts, strides } => (x / strides[i]) % parts[i].size,
            _ => panic!("{} is not a direct product", self.spec),
        }
    }

    /// Builds a product element from its coordinates.
    pub fn product_compose(&self, coords: &[usize]) -> usize {
        match &self.structure {
            Structure::Product { strides, .. } => coords.iter().zip(strides).map(|(c, s)| c * s).sum(),
            _ => panic!("{} is not a direct product", self.spec),
        }
    }

    /// Dimension and coefficient ring of an upper-triangular matrix ring.
    pub fn triangular_parts(&self) -> Option<(usize, &Arc<FiniteRing>)> {
        match &self.structure {
            Structure::Triangular { dim, base, .. } => Some((*dim, base)),
            _ => None,
        }
    }

    /// Entry `X_{ij}` (0-based) of a triangular matrix; zero below the diagonal.
    pub fn entry(&self, x: usize, i: usize, j: usize) -> usize {
        match &self.structure {
            Structure::Triangular { dim, base, strides } => {
                if j < i {
                    0
                } else {
                    (x / strides[upper_pos(*dim, i, j)]) % base.size
                }
            }
            _ => panic!("{} is not a triangular matrix ring", self.spec),
        }
    }

    /// Builds a triangular matrix from a full `k x k` entry grid; entries below the diagonal are ignored.
    pub fn from_entries(&self, grid: &[Vec<usize>]) -> usize {
        match &self.structure {
            Structure::Triangular { dim, strides, .. } => {
                let mut x = 0;
                for i in 0..*dim {
                    for j in i..*dim {
                        x += grid[i][j] * strides[upper_pos(*dim, i, j)];
                    }
                }
                x
            }
            _ => panic!("{} is not a triangular matrix ring", self.spec),
        }
    }

    pub fn idealization_parts(&self) -> Option<(&Arc<FiniteRing>, &Arc<Bimodule>)> {
        match &self.structure {
            Structure::Idealization { base, module } => Some((base, module)),
            _ => None,
        }
    }

    /// `(r, m)` coordinates of an idealization element.
    pub fn idealization_split(&self, x: usize) -> (usize, usize) {
        match &self.structure {
            Structure::Idealization { module, .. } => (x / module.size(), x % module.size()),
            _ => panic!("{} is not an idealization", self.spec),
        }
    }

    pub fn idealization_compose(&self, r: usize, m: usize) -> usize {
        match &self.structure {
            Structure::Idealization { module, .. } => r * module.size() + m,
            _ => panic!("{} is not an idealization", self.spec),
        }
    }

    pub fn morita_context(&self) -> Option<&Arc<MoritaContext>> {
        match &self.structure {
            Structure::Morita(ctx) => Some(ctx),
            _ => None,
        }
    }

    /// `(a, m, n, b)` entries of a Morita context element `[[a, m], [n, b]]`.
    pub fn morita_split(&self, x: usize) -> (usize, usize, usize, usize) {
        match &self.structure {
            Structure::Morita(ctx) => ctx.split(x),
            _ => panic!("{} is not a Morita context ring", self.spec),
        }
    }

    pub fn morita_compose(&self, a: usize, m: usize, n: usize, b: usize) -> usize {
        match &self.structure {
            Structure::Morita(ctx) => ctx.compose(a, m, n, b),
            _ => panic!("{} is not a Morita context ring", self.spec),
        }
    }

    /// Base ring and idempotent `f` of a corner ring `fRf`.
    pub fn corner_base(&self) -> Option<(&Arc<FiniteRing>, usize)> {
        self.corner_parts().map(|(b, f, _)| (b, f))
    }

    /// The base-ring element represented by a corner element.
    pub fn corner_embed(&self, x: usize) -> usize {
        match &self.structure {
            Structure::Corner { carrier, .. } => carrier[x],
            _ => panic!("{} is not a corner ring", self.spec),
        }
    }

    /// The corner element for a base element, if it lies in `fRf`.
    pub fn corner_locate(&self, base_x: usize) -> Option<usize> {
        match &self.structure {
            Structure::Corner { position, .. } => match position[base_x] {
                NOT_IN_CORNER => None,
                p => Some(p as usize),
            },
            _ => panic!("{} is not a corner ring", self.spec),
        }
    }

    pub fn quotient_base(&self) -> Option<&Arc<FiniteRing>> {
        match &self.structure {
            Structure::Quotient { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Minimal base representative of a coset.
    pub fn quotient_rep(&self, x: usize) -> usize {
        match &self.structure {
            Structure::Quotient { reps, .. } => reps[x],
            _ => panic!("{} is not a quotient ring", self.spec),
        }
    }

    /// Canonical projection from the base ring.
    pub fn quotient_project(&self, base_x: usize) -> usize {
        match &self.structure {
            Structure::Quotient { class, .. } => class[base_x] as usize,
            _ => panic!("{} is not a quotient ring", self.spec),
        }
    }

    // ---- display and parsing ----

    pub fn display(&self, x: usize) -> String {
        match &self.structure {
            Structure::Residue { .. } => x.to_string(),
            Structure::Product { parts, strides } => {
                let items: Vec<String> = parts
                    .iter()
                    .zip(strides)
                    .map(|(p, s)| p.display((x / s) % p.size))
                    .collect();
                format!("({})", items.join(","))
            }
            Structure::Triangular { dim, base, .. } => {
                let rows: Vec<String> = (0..*dim)
                    .map(|i| {
                        let cells: Vec<String> = (0..*dim)
                            .map(|j| if j < i { "0".to_string() } else { base.display(self.entry(x, i, j)) })
                            .collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Structure::Quotient { base, reps, .. } => base.display(reps[x]),
            Structure::Corner { base, carrier, .. } => base.display(carrier[x]),
            Structure::Idealization { base, module } => {
                let (r, m) = (x / module.size(), x % module.size());
                format!("({},{})", base.display(r), module.display(m))
            }
            Structure::Morita(ctx) => {
                let (a, m, n, b) = ctx.split(x);
                format!(
                    "[[{},{}],[{},{}]]",
                    ctx.a.display(a),
                    ctx.m.display(m),
                    ctx.n.display(n),
                    ctx.b.display(b)
                )
            }
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<usize> {
        self.from_literal(&parse_literal(text)?)
    }

    pub fn from_literal(&self, lit: &Literal) -> Result<usize> {
        let bad = |msg: &str| Error::element(lit, format!("{msg} in {}", self.spec));
        match &self.structure {
            Structure::Residue { modulus } => match lit {
                Literal::Int(v) => Ok(v.rem_euclid(*modulus as i64) as usize),
                _ => Err(bad("expected an integer residue")),
            },
            Structure::Product { parts, strides } => match lit {
                Literal::Tuple(items) if items.len() == parts.len() => {
                    let mut x = 0;
                    for ((p, s), it) in parts.iter().zip(strides).zip(items) {
                        x += p.from_literal(it)? * s;
                    }
                    Ok(x)
                }
                _ => Err(bad(&format!("expected a {}-tuple", parts.len()))),
            },
            Structure::Triangular { dim, base, strides } => {
                let rows = match lit {
                    Literal::List(rows) if rows.len() == *dim => rows,
                    _ => return Err(bad(&format!("expected a {dim}x{dim} matrix"))),
                };
                let mut x = 0;
                for (i, row) in rows.iter().enumerate() {
                    let cells = match row {
                        Literal::List(cells) if cells.len() == *dim => cells,
                        _ => return Err(bad(&format!("expected a {dim}x{dim} matrix"))),
                    };
                    for (j, cell) in cells.iter().enumerate() {
                        if j < i {
                            if cell != &Literal::Int(0) && base.from_literal(cell)? != 0 {
                                return Err(bad("entries below the diagonal must be zero"));
                            }
                        } else {
                            x += base.from_literal(cell)? * strides[upper_pos(*dim, i, j)];
                        }
                    }
                }
                Ok(x)
            }
            Structure::Quotient { base, class, .. } => Ok(class[base.from_literal(lit)?] as usize),
            Structure::Corner { base, position, .. } => match position[base.from_literal(lit)?] {
                NOT_IN_CORNER => Err(bad("element is not in the corner ring")),
                p => Ok(p as usize),
            },
            Structure::Idealization { base, module } => match lit {
                Literal::Tuple(items) if items.len() == 2 => {
                    let r = base.from_literal(&items[0])?;
                    let m = module.group().from_literal(&items[1])?;
                    Ok(r * module.size() + m)
                }
                _ => Err(bad("expected a pair (r,m)")),
            },
            Structure::Morita(ctx) => {
                let rows = match lit {
                    Literal::List(rows) if rows.len() == 2 => rows,
                    _ => return Err(bad("expected [[a,m],[n,b]]")),
                };
                match (&rows[0], &rows[1]) {
                    (Literal::List(top), Literal::List(bottom)) if top.len() == 2 && bottom.len() == 2 => {
                        let a = ctx.a.from_literal(&top[0])?;
                        let m = ctx.m.group().from_literal(&top[1])?;
                        let n = ctx.n.group().from_literal(&bottom[0])?;
                        let b = ctx.b.from_literal(&bottom[1])?;
                        Ok(ctx.compose(a, m, n, b))
                    }
                    _ => Err(bad("expected [[a,m],[n,b]]")),
                }
            }
        }
    }

    // ---- structural arithmetic ----

    fn structural_one(&self) -> usize {
        match &self.structure {
            Structure::Residue { modulus } => 1 % modulus,
            Structure::Product { parts, strides } => parts.iter().zip(strides).map(|(p, s)| p.one * s).sum(),
            Structure::Triangular { dim, base, strides } => {
                (0..*dim).map(|i| base.one * strides[upper_pos(*dim, i, i)]).sum()
            }
            Structure::Quotient { base, class, .. } => class[base.one] as usize,
            Structure::Corner {
                idempotent, position, ..
            } => position[*idempotent] as usize,
            Structure::Idealization { base, module } => base.one * module.size(),
            Structure::Morita(ctx) => ctx.compose(ctx.a.one, 0, 0, ctx.b.one),
        }
    }

    fn structural_neg(&self, x: usize) -> usize {
        match &self.structure {
            Structure::Residue { modulus } => (modulus - x) % modulus,
            Structure::Product { parts, strides } => parts
                .iter()
                .zip(strides)
                .map(|(p, s)| p.neg((x / s) % p.size) * s)
                .sum(),
            Structure::Triangular { base, strides, .. } => {
                strides.iter().map(|s| base.neg((x / s) % base.size) * s).sum()
            }
            Structure::Quotient { base, reps, class } => class[base.neg(reps[x])] as usize,
            Structure::Corner {
                base,
                carrier,
                position,
                ..
            } => position[base.neg(carrier[x])] as usize,
            Structure::Idealization { base, module } => {
                let (r, m) = (x / module.size(), x % module.size());
                base.neg(r) * module.size() + module.group().neg(m)
            }
            Structure::Morita(ctx) => {
                let (a, m, n, b) = ctx.split(x);
                ctx.compose(ctx.a.neg(a), ctx.m.group().neg(m), ctx.n.group().neg(n), ctx.b.neg(b))
            }
        }
    }

    fn structural_add(&self, x: usize, y: usize) -> usize {
        match &self.structure {
            Structure::Residue { modulus } => (x + y) % modulus,
            Structure::Product { parts, strides } => parts
                .iter()
                .zip(strides)
                .map(|(p, s)| p.add((x / s) % p.size, (y / s) % p.size) * s)
                .sum(),
            Structure::Triangular { base, strides, .. } => strides
                .iter()
                .map(|s| base.add((x / s) % base.size, (y / s) % base.size) * s)
                .sum(),
            Structure::Quotient { base, reps, class } => class[base.add(reps[x], reps[y])] as usize,
            Structure::Corner {
                base,
                carrier,
                position,
                ..
            } => position[base.add(carrier[x], carrier[y])] as usize,
            Structure::Idealization { base, module } => {
                let ms = module.size();
                base.add(x / ms, y / ms) * ms + module.add(x % ms, y % ms)
            }
            Structure::Morita(ctx) => {
                let (a, m, n, b) = ctx.split(x);
                let (a2, m2, n2, b2) = ctx.split(y);
                ctx.compose(ctx.a.add(a, a2), ctx.m.add(m, m2), ctx.n.add(n, n2), ctx.b.add(b, b2))
            }
        }
    }

    fn structural_mul(&self, x: usize, y: usize) -> usize {
        match &self.structure {
            Structure::Residue { modulus } => ((x as u64 * y as u64) % *modulus as u64) as usize,
            Structure::Product { parts, strides } => parts
                .iter()
                .zip(strides)
                .map(|(p, s)| p.mul((x / s) % p.size, (y / s) % p.size) * s)
                .sum(),
            Structure::Triangular { dim, base, strides } => {
                let k = *dim;
                let ex = |v: usize, i: usize, j: usize| (v / strides[upper_pos(k, i, j)]) % base.size;
                let mut out = 0;
                for i in 0..k {
                    for j in i..k {
                        let mut acc = 0;
                        for t in i..=j {
                            acc = base.add(acc, base.mul(ex(x, i, t), ex(y, t, j)));
                        }
                        out += acc * strides[upper_pos(k, i, j)];
                    }
                }
                out
            }
            Structure::Quotient { base, reps, class } => class[base.mul(reps[x], reps[y])] as usize,
            Structure::Corner {
                base,
                carrier,
                position,
                ..
            } => position[base.mul(carrier[x], carrier[y])] as usize,
            Structure::Idealization { base, module } => {
                // (r,m)(r',m') = (rr', r·m' + r'·m)
                let ms = module.size();
                let (r, m, r2, m2) = (x / ms, x % ms, y / ms, y % ms);
                base.mul(r, r2) * ms + module.add(module.act_left(r, m2), module.act_left(r2, m))
            }
            Structure::Morita(ctx) => ctx.mul(x, y),
        }
    }
}

/// Position of entry `(i, j)`, `i <= j`, in the row-major upper-triangular layout.
pub(crate) fn upper_pos(dim: usize, i: usize, j: usize) -> usize {
    i * dim - i * (i + 1) / 2 + j
}

/// A ring element bound to its ring, with operator overloads.
#[derive(Clone, Copy)]
pub struct Elem<'r> {
    ring: &'r FiniteRing,
    index: usize,
}

impl<'r> Elem<'r> {
    pub fn index(self) -> usize {
        self.index
    }

    pub fn ring(self) -> &'r FiniteRing {
        self.ring
    }

    pub fn pow(self, k: u64) -> Self {
        self.ring.elem(self.ring.pow(self.index, k))
    }

    pub fn is_idempotent(self) -> bool {
        self.ring.mul(self.index, self.index) == self.index
    }
}

impl PartialEq for Elem<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ring, other.ring) && self.index == other.index
    }
}

impl Eq for Elem<'_> {}

impl fmt::Debug for Elem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.display(self.index))
    }
}

impl fmt::Display for Elem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.display(self.index))
    }
}

fn same_ring(a: &Elem<'_>, b: &Elem<'_>) {
    assert!(std::ptr::eq(a.ring, b.ring), "elements of different rings");
}

impl<'r> Add for Elem<'r> {
    type Output = Elem<'r>;
    fn add(self, rhs: Self) -> Self {
        same_ring(&self, &rhs);
        self.ring.elem(self.ring.add(self.index, rhs.index))
    }
}

impl<'r> Sub for Elem<'r> {
    type Output = Elem<'r>;
    fn sub(self, rhs: Self) -> Self {
        same_ring(&self, &rhs);
        self.ring.elem(self.ring.sub(self.index, rhs.index))
    }
}

impl<'r> Mul for Elem<'r> {
    type Output = Elem<'r>;
    fn mul(self, rhs: Self) -> Self {
        same_ring(&self, &rhs);
        self.ring.elem(self.ring.mul(self.index, rhs.index))
    }
}

impl<'r> Neg for Elem<'r> {
    type Output = Elem<'r>;
    fn neg(self) -> Self {
        self.ring.elem(self.ring.neg(self.index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::BuildContext;

    fn ring(text: &str) -> Arc<FiniteRing> {
        BuildContext::default().build_str(text).unwrap()
    }

    #[test]
    fn upper_positions_are_row_major() {
        let k = 3;
        let order: Vec<usize> = (0..k)
            .flat_map(|i| (i..k).map(move |j| (i, j)))
            .map(|(i, j)| upper_pos(k, i, j))
            .collect();
        assert_eq!(order, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(upper_pos(2, 1, 1), 2);
    }

    #[test]
    fn residue_arithmetic() {
        let z6 = ring("Z6");
        assert_eq!(z6.apply(ArithOp::Add, &[4, 5]).unwrap(), 3);
        assert_eq!(z6.apply(ArithOp::Mul, &[4, 5]).unwrap(), 2);
        assert_eq!(z6.apply(ArithOp::Neg, &[1]).unwrap(), 5);
        assert!(matches!(
            z6.apply(ArithOp::Add, &[4, 6]),
            Err(Error::OutOfRange { index: 6, size: 6 })
        ));
        assert!(z6.apply(ArithOp::Neg, &[1, 2]).is_err());
        assert_eq!(z6.from_int(-1), 5);
        assert_eq!(z6.pow(5, 2), 1);
    }

    #[test]
    fn strictly_upper_triangular_squares_to_zero() {
        let t = ring("T2(Z2)");
        assert_eq!(t.size(), 8);
        let n = t.parse_element("[[0,1],[0,0]]").unwrap();
        assert_eq!(t.mul(n, n), 0);
        assert_eq!(t.display(t.one()), "[[1,0],[0,1]]");
        assert!(t.parse_element("[[0,1],[1,0]]").is_err());
    }

    #[test]
    fn idealization_product_law() {
        let r = ring("Idealization(Z2, Z2)");
        let x = r.parse_element("(1,1)").unwrap();
        assert_eq!(r.display(r.mul(x, x)), "(1,0)");
        assert_eq!(r.size(), 4);
    }

    #[test]
    fn product_encoding_is_lexicographic() {
        let r = ring("Z2 x Z4");
        assert_eq!(r.size(), 8);
        assert_eq!(r.display(5), "(1,1)");
        assert_eq!(r.parse_element("(1,3)").unwrap(), 7);
        assert_eq!(r.product_component(7, 1), 3);
        assert_eq!(r.product_compose(&[1, 3]), 7);
    }

    #[test]
    fn display_and_parse_agree_everywhere() {
        for text in [
            "Z5",
            "Z2 x Z3",
            "T2(Z3)",
            "T3(Z2)",
            "Quot(Z8; 4)",
            "Corner(T2(Z2); [[1,0],[0,0]])",
            "Idealization(Z4, Z2 x Z2)",
            "Morita(Z2, Z2, Z2, Z2, mul)",
        ] {
            let r = ring(text);
            for x in r.elements() {
                assert_eq!(r.parse_element(&r.display(x)).unwrap(), x, "{text}: {}", r.display(x));
            }
        }
    }

    #[test]
    fn operator_overloads() {
        let z6 = ring("Z6");
        let (a, b) = (z6.elem(4), z6.elem(5));
        assert_eq!((a + b).index(), 3);
        assert_eq!((a * b).index(), 2);
        assert_eq!((-b).index(), 1);
        assert_eq!((a - b).index(), 5);
        assert!(z6.elem(3).is_idempotent());
        assert_eq!(z6.elem(2).pow(3).to_string(), "2");
    }

    #[test]
    fn large_rings_fall_back_to_structural_arithmetic() {
        let r = ring("Z40 x Z40");
        assert!(r.size() > TABLE_CAP);
        let x = r.parse_element("(3,7)").unwrap();
        let y = r.parse_element("(39,5)").unwrap();
        assert_eq!(r.display(r.add(x, y)), "(2,12)");
        assert_eq!(r.display(r.mul(x, y)), "(37,35)");
    }
}
