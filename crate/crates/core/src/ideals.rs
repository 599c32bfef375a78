//! Two-sided ideals, ideal lattices, quotient rings and idempotent lifting.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::lattice::{additive_span, singleton, sort_by_size_then_members, sum_closure};
use crate::literal::parse_literal;
use crate::ring::{FiniteRing, Structure};
use crate::spec::RingSpec;

/// Largest number of ideals [`all_ideals`] will collect for one ring.
const MAX_LATTICE_MEMBERS: usize = 1 << 16;

/// A two-sided ideal: its generators and its full, sorted element set.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    generators: Vec<usize>,
    elements: Vec<usize>,
    members: FixedBitSet,
}

impl Ideal {
    fn assemble(ring: &Arc<FiniteRing>, generators: Vec<usize>, members: FixedBitSet) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators,
            elements: members.ones().collect(),
            members,
        }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal::assemble(ring, Vec::new(), singleton(ring.size(), 0))
    }

    pub fn whole(ring: &Arc<FiniteRing>) -> Ideal {
        let mut members = FixedBitSet::with_capacity(ring.size());
        members.insert_range(..);
        Ideal::assemble(ring, vec![ring.one()], members)
    }

    /// Wraps a set that must already be a two-sided ideal; generators are chosen greedily.
    pub fn from_members(ring: &Arc<FiniteRing>, members: FixedBitSet) -> Result<Ideal> {
        if members.len() != ring.size() {
            return Err(Error::Precondition("member set has the wrong length".into()));
        }
        if let Some(why) = closure_violation(ring, &members) {
            return Err(Error::Precondition(format!("not an ideal of {}: {why}", ring.spec())));
        }
        let generators = greedy_generators(ring, &members, |x| principal(ring, x));
        Ok(Ideal::assemble(ring, generators, members))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size() == self.ring.size()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let members = additive_span(|a, b| self.ring.add(a, b), self.members.clone(), other.elements.iter().copied());
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().filter(|g| !self.contains(**g)));
        Ideal::assemble(&self.ring, gens, members)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        let generators = greedy_generators(&self.ring, &members, |x| principal(&self.ring, x));
        Ideal::assemble(&self.ring, generators, members)
    }

    /// `<g1, g2, ...>` with displayed generators.
    pub fn display(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|&g| self.ring.display(g)).collect();
        format!("<{}>", gens.join(", "))
    }

    /// `{x1, x2, ...}` with displayed elements.
    pub fn display_elements(&self) -> String {
        let items: Vec<String> = self.elements.iter().map(|&x| self.ring.display(x)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.display_elements(), self.ring.spec())
    }
}

/// The ideal generated by a single element: the additive span of every `r·g·s`.
pub(crate) fn principal(ring: &FiniteRing, g: usize) -> FixedBitSet {
    let n = ring.size();
    let mut left = FixedBitSet::with_capacity(n);
    for r in ring.elements() {
        left.insert(ring.mul(r, g));
    }
    let mut products = FixedBitSet::with_capacity(n);
    for rg in left.ones() {
        for s in ring.elements() {
            products.insert(ring.mul(rg, s));
        }
    }
    additive_span(|a, b| ring.add(a, b), singleton(n, 0), products.ones())
}

fn greedy_generators(ring: &FiniteRing, members: &FixedBitSet, principal: impl Fn(usize) -> FixedBitSet) -> Vec<usize> {
    let mut span = singleton(ring.size(), 0);
    let mut gens = Vec::new();
    for x in members.ones() {
        if !span.contains(x) {
            gens.push(x);
            span = additive_span(|a, b| ring.add(a, b), span, principal(x).ones());
        }
    }
    gens
}

/// First closure failure of a candidate ideal, if any.
fn closure_violation(ring: &FiniteRing, members: &FixedBitSet) -> Option<String> {
    if !members.contains(0) {
        return Some("does not contain 0".into());
    }
    let elems: Vec<usize> = members.ones().collect();
    for &x in &elems {
        for &y in &elems {
            if !members.contains(ring.add(x, y)) {
                return Some(format!("{} + {} escapes", ring.display(x), ring.display(y)));
            }
        }
        for r in ring.elements() {
            if !members.contains(ring.mul(r, x)) || !members.contains(ring.mul(x, r)) {
                return Some(format!(
                    "products of {} with {} escape",
                    ring.display(x),
                    ring.display(r)
                ));
            }
        }
    }
    None
}

/// Whether a set is closed under addition and two-sided multiplication by the ring.
pub fn is_ideal(ring: &FiniteRing, members: &FixedBitSet) -> bool {
    closure_violation(ring, members).is_none()
}

/// The least two-sided ideal containing `gens`.
pub fn ideal_generated_by(ring: &Arc<FiniteRing>, gens: &[usize]) -> Result<Ideal> {
    let mut members = singleton(ring.size(), 0);
    let mut kept = Vec::new();
    for &g in gens {
        ring.check(g)?;
        if !members.contains(g) {
            members = additive_span(|a, b| ring.add(a, b), members, principal(ring, g).ones());
        }
        kept.push(g);
    }
    Ok(Ideal::assemble(ring, kept, members))
}

/// Every two-sided ideal, sorted by size then members.
pub fn all_ideals(ring: &Arc<FiniteRing>) -> Result<Vec<Ideal>> {
    let cap = ring.limits().lattice_cap;
    if ring.size() > cap {
        return Err(Error::SizeLimit {
            what: format!("ideal lattice of {}", ring.spec()),
            size: ring.size() as u128,
            cap,
        });
    }
    let atoms: Vec<FixedBitSet> = ring.elements().map(|x| principal(ring, x)).collect();
    let mut sets = sum_closure(|a, b| ring.add(a, b), atoms.iter().cloned(), MAX_LATTICE_MEMBERS)?;
    sort_by_size_then_members(&mut sets);
    Ok(sets
        .into_iter()
        .map(|members| {
            let gens = greedy_generators(ring, &members, |x| atoms[x].clone());
            Ideal::assemble(ring, gens, members)
        })
        .collect())
}

pub fn is_nil_ideal(ideal: &Ideal) -> bool {
    let sets = ideal.ring.element_sets().expect("ring size was checked when it was built");
    ideal.elements.iter().all(|&x| sets.is_nilpotent(x))
}

/// `R/I` with cosets indexed by the rank of their least representative.
#[derive(Clone)]
pub struct QuotientRing {
    ring: Arc<FiniteRing>,
    modulus: Ideal,
}

impl QuotientRing {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<FiniteRing> {
        self.modulus.ring()
    }

    pub fn modulus(&self) -> &Ideal {
        &self.modulus
    }

    pub fn project(&self, x: usize) -> usize {
        self.ring.quotient_project(x)
    }

    /// Least base element of a coset.
    pub fn rep(&self, coset: usize) -> usize {
        self.ring.quotient_rep(coset)
    }
}

pub fn quotient_ring(ideal: &Ideal) -> Result<QuotientRing> {
    let base = ideal.ring();
    let n = base.size();
    let mut class = vec![u32::MAX; n];
    let mut reps = Vec::with_capacity(n / ideal.size());
    for x in base.elements() {
        if class[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &i in ideal.elements() {
            class[base.add(x, i)] = id;
        }
    }
    let gens = ideal
        .generators()
        .iter()
        .map(|&g| parse_literal(&base.display(g)))
        .collect::<Result<Vec<_>>>()?;
    let spec = RingSpec::Quotient(Box::new(base.spec().clone()), gens);
    let size = reps.len();
    let ring = FiniteRing::assemble(
        spec,
        size,
        Structure::Quotient {
            base: base.clone(),
            reps,
            class,
        },
        base.limits(),
    );
    Ok(QuotientRing {
        ring: Arc::new(ring),
        modulus: ideal.clone(),
    })
}

/// `(I + modulus)/modulus` as an ideal of the quotient ring.
pub fn image_ideal(q: &QuotientRing, ideal: &Ideal) -> Result<Ideal> {
    if !Arc::ptr_eq(ideal.ring(), q.base()) {
        return Err(Error::Precondition("ideal does not belong to the quotient's base ring".into()));
    }
    let mut members = FixedBitSet::with_capacity(q.ring.size());
    for &x in ideal.elements() {
        members.insert(q.project(x));
    }
    let mut gens: Vec<usize> = ideal.generators().iter().map(|&g| q.project(g)).filter(|&g| g != 0).collect();
    gens.dedup();
    Ok(Ideal::assemble(&q.ring, gens, members))
}

/// Lifts an idempotent of `R/I` to one of `R`, for a nil ideal `I`.
///
/// Iterates `e <- 3e^2 - 2e^3` from `a`. Every iterate is a polynomial in `a`,
/// so the iteration is valid in noncommutative rings, and each step squares
/// the defect `e^2 - e` into a deeper power of `I`.
pub fn lift_idempotent_mod_nil(ideal: &Ideal, a: usize) -> Result<usize> {
    let r = ideal.ring();
    r.check(a)?;
    if !is_nil_ideal(ideal) {
        return Err(Error::Precondition(format!("{} is not a nil ideal", ideal.display())));
    }
    if !ideal.contains(r.sub(r.mul(a, a), a)) {
        return Err(Error::Precondition(format!(
            "{} is not idempotent modulo {}",
            r.display(a),
            ideal.display()
        )));
    }
    let max_steps = usize::BITS - r.size().leading_zeros() + 1;
    let mut e = a;
    for _ in 0..=max_steps {
        let e2 = r.mul(e, e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = r.mul(e2, e);
        e = r.sub(r.int_mul(3, e2), r.int_mul(2, e3));
    }
    Err(Error::Precondition(format!(
        "lifting {} did not converge",
        r.display(a)
    )))
}

/// `Idem(R) ∩ (a + I)` by exhaustive search.
pub fn brute_force_lifts(ideal: &Ideal, a: usize) -> Vec<usize> {
    let r = ideal.ring();
    let sets = r.element_sets().expect("ring size was checked when it was built");
    sets.idempotents
        .iter()
        .copied()
        .filter(|&e| ideal.contains(r.sub(e, a)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::BuildContext;

    fn ring(text: &str) -> Arc<FiniteRing> {
        BuildContext::default().build_str(text).unwrap()
    }

    fn divisors(n: usize) -> Vec<usize> {
        (1..=n).filter(|d| n % d == 0).collect()
    }

    #[test]
    fn generated_ideals() {
        let z6 = ring("Z6");
        assert_eq!(ideal_generated_by(&z6, &[2]).unwrap().elements(), [0, 2, 4]);
        assert_eq!(ideal_generated_by(&z6, &[]).unwrap().elements(), [0]);
        assert_eq!(ideal_generated_by(&z6, &[2, 3]).unwrap().size(), 6);
        assert!(ideal_generated_by(&z6, &[6]).is_err());
        let t = ring("T2(Z2)");
        let n = t.parse_element("[[0,1],[0,0]]").unwrap();
        let i = ideal_generated_by(&t, &[n]).unwrap();
        assert_eq!(i.elements(), [0, n]);
    }

    #[test]
    fn residue_lattices_match_divisors() {
        for n in 1..=60 {
            let r = ring(&format!("Z{n}"));
            let all = all_ideals(&r).unwrap();
            assert_eq!(all.len(), divisors(n).len(), "Z{n}");
            // Ideals of Z_n are dZ_n, of size n/d.
            let mut sizes: Vec<usize> = divisors(n).into_iter().map(|d| n / d).collect();
            sizes.sort();
            assert_eq!(all.iter().map(Ideal::size).collect::<Vec<_>>(), sizes, "Z{n}");
        }
        let z6 = ring("Z6");
        let shown: Vec<String> = all_ideals(&z6).unwrap().iter().map(Ideal::display_elements).collect();
        assert_eq!(shown, ["{0}", "{0, 3}", "{0, 2, 4}", "{0, 1, 2, 3, 4, 5}"]);
        assert_eq!(all_ideals(&ring("Z2 x Z2")).unwrap().len(), 4);
    }

    #[test]
    fn lattice_respects_cap() {
        let ctx = BuildContext::default();
        assert!(matches!(all_ideals(&ctx.build_str("Z257").unwrap()), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn nil_ideals() {
        let z4 = ring("Z4");
        assert!(is_nil_ideal(&ideal_generated_by(&z4, &[2]).unwrap()));
        let z6 = ring("Z6");
        assert!(!is_nil_ideal(&ideal_generated_by(&z6, &[2]).unwrap()));
        assert!(is_nil_ideal(&Ideal::zero(&z6)));
    }

    #[test]
    fn quotients() {
        let z4 = ring("Z4");
        let q = quotient_ring(&ideal_generated_by(&z4, &[2]).unwrap()).unwrap();
        assert_eq!(q.ring().size(), 2);
        assert_eq!(q.ring().add(1, 1), 0);
        let z6 = ring("Z6");
        let three = ideal_generated_by(&z6, &[3]).unwrap();
        let q = quotient_ring(&three).unwrap();
        assert_eq!(q.ring().size(), 3);
        let two = ideal_generated_by(&z6, &[2]).unwrap();
        assert!(image_ideal(&q, &two).unwrap().is_whole());
        assert!(image_ideal(&q, &three).unwrap().is_zero());
        assert!(image_ideal(&q, &Ideal::zero(&z6)).unwrap().is_zero());

        let t = ring("T2(Z2)");
        let n = t.parse_element("[[0,1],[0,0]]").unwrap();
        let q = quotient_ring(&ideal_generated_by(&t, &[n]).unwrap()).unwrap();
        assert_eq!(q.ring().size(), 4);
        assert!(q.ring().is_commutative());
        assert_eq!(q.ring().spec().to_string(), "Quot(T2(Z2); [[0,1],[0,0]])");
    }

    #[test]
    fn projection_is_a_ring_homomorphism() {
        let r = ring("T2(Z4)");
        for ideal in all_ideals(&r).unwrap() {
            let q = quotient_ring(&ideal).unwrap();
            assert_eq!(q.ring().size() * ideal.size(), r.size());
            assert_eq!(q.project(r.one()), q.ring().one());
            for x in r.elements() {
                for y in r.elements() {
                    assert_eq!(q.project(r.add(x, y)), q.ring().add(q.project(x), q.project(y)));
                    assert_eq!(q.project(r.mul(x, y)), q.ring().mul(q.project(x), q.project(y)));
                }
            }
        }
    }

    #[test]
    fn idempotent_lifting() {
        let z4 = ring("Z4");
        let i = ideal_generated_by(&z4, &[2]).unwrap();
        assert_eq!(lift_idempotent_mod_nil(&i, 3).unwrap(), 1);
        assert_eq!(lift_idempotent_mod_nil(&i, 1).unwrap(), 1);
        let z8 = ring("Z8");
        let i = ideal_generated_by(&z8, &[2]).unwrap();
        assert_eq!(lift_idempotent_mod_nil(&i, 3).unwrap(), 1);
        assert_eq!(brute_force_lifts(&i, 3), [1]);
        let z6 = ring("Z6");
        assert!(matches!(
            lift_idempotent_mod_nil(&ideal_generated_by(&z6, &[2]).unwrap(), 1),
            Err(Error::Precondition(_))
        ));
        assert!(lift_idempotent_mod_nil(&Ideal::zero(&z4), 2).is_err());
    }
}
