//! Idempotents, nilpotents, units, Jacobson radical and centre of a finite ring.

use fixedbitset::FixedBitSet;

use crate::ring::FiniteRing;

/// The five fundamental element sets of a ring, with membership bitsets.
#[derive(Debug, Clone)]
pub struct ElementSets {
    pub idempotents: Vec<usize>,
    pub nilpotents: Vec<usize>,
    pub units: Vec<usize>,
    pub jacobson: Vec<usize>,
    pub center: Vec<usize>,
    nilpotency: Vec<Option<u32>>,
    inverse: Vec<Option<u32>>,
    idempotent_mask: FixedBitSet,
    nilpotent_mask: FixedBitSet,
    unit_mask: FixedBitSet,
    jacobson_mask: FixedBitSet,
    center_mask: FixedBitSet,
}

impl ElementSets {
    pub(crate) fn compute(ring: &FiniteRing) -> Self {
        let n = ring.size();
        let idempotents: Vec<usize> = ring.elements().filter(|&x| ring.mul(x, x) == x).collect();

        let mut stamps = vec![u32::MAX; n];
        let nilpotency: Vec<Option<u32>> = ring
            .elements()
            .map(|x| power_search(ring, x, &mut stamps, x as u32))
            .collect();
        let nilpotents: Vec<usize> = ring.elements().filter(|&x| nilpotency[x].is_some()).collect();

        let mut inverse: Vec<Option<u32>> = vec![None; n];
        for u in ring.elements() {
            if inverse[u].is_some() {
                continue;
            }
            if let Some(v) = ring
                .elements()
                .find(|&v| ring.mul(u, v) == ring.one() && ring.mul(v, u) == ring.one())
            {
                inverse[u] = Some(v as u32);
                inverse[v] = Some(u as u32);
            }
        }
        let units: Vec<usize> = ring.elements().filter(|&x| inverse[x].is_some()).collect();
        let unit_mask = mask(n, &units);

        let jacobson = jacobson_two_sided(ring, &unit_mask);
        let center: Vec<usize> = ring
            .elements()
            .filter(|&x| ring.elements().all(|r| ring.mul(x, r) == ring.mul(r, x)))
            .collect();

        ElementSets {
            idempotent_mask: mask(n, &idempotents),
            nilpotent_mask: mask(n, &nilpotents),
            jacobson_mask: mask(n, &jacobson),
            center_mask: mask(n, &center),
            unit_mask,
            idempotents,
            nilpotents,
            units,
            jacobson,
            center,
            nilpotency,
            inverse,
        }
    }

    #[inline]
    pub fn is_idempotent(&self, x: usize) -> bool {
        self.idempotent_mask.contains(x)
    }

    #[inline]
    pub fn is_nilpotent(&self, x: usize) -> bool {
        self.nilpotent_mask.contains(x)
    }

    #[inline]
    pub fn is_unit(&self, x: usize) -> bool {
        self.unit_mask.contains(x)
    }

    #[inline]
    pub fn in_jacobson(&self, x: usize) -> bool {
        self.jacobson_mask.contains(x)
    }

    #[inline]
    pub fn is_central(&self, x: usize) -> bool {
        self.center_mask.contains(x)
    }

    /// Smallest `k` with `x^k = 0`.
    pub fn nilpotency_index(&self, x: usize) -> Option<u32> {
        self.nilpotency[x]
    }

    /// Two-sided inverse of a unit.
    pub fn inverse(&self, x: usize) -> Option<usize> {
        self.inverse[x].map(|v| v as usize)
    }

    /// Central idempotents in ascending order.
    pub fn central_idempotents(&self) -> Vec<usize> {
        self.idempotents.iter().copied().filter(|&e| self.is_central(e)).collect()
    }
}

fn mask(n: usize, members: &[usize]) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(n);
    for &x in members {
        m.insert(x);
    }
    m
}

/// Walks `x, x^2, ...` until it hits 0 or revisits a power; `stamps[p] == tag`
/// marks powers already seen on this walk.
fn power_search(ring: &FiniteRing, x: usize, stamps: &mut [u32], tag: u32) -> Option<u32> {
    let mut p = x;
    let mut k = 1u32;
    loop {
        if p == 0 {
            return Some(k);
        }
        if stamps[p] == tag {
            return None;
        }
        stamps[p] = tag;
        p = ring.mul(p, x);
        k += 1;
    }
}

/// Smallest `k` with `x^k = 0`, or `None` if the powers of `x` cycle without reaching 0.
///
/// At most `|R|` multiplications: the walk stops at the first repeated power.
pub fn nilpotency_index(ring: &FiniteRing, x: usize) -> Option<u32> {
    let mut stamps = vec![u32::MAX; ring.size()];
    power_search(ring, x, &mut stamps, 0)
}

/// `J(R) = {x : 1 - r·x·s is a unit for all r, s}`.
fn jacobson_two_sided(ring: &FiniteRing, units: &FixedBitSet) -> Vec<usize> {
    let n = ring.size();
    let one = ring.one();
    let mut left_multiples = FixedBitSet::with_capacity(n);
    ring.elements()
        .filter(|&x| {
            left_multiples.clear();
            for r in ring.elements() {
                left_multiples.insert(ring.mul(r, x));
            }
            left_multiples
                .ones()
                .all(|rx| ring.elements().all(|s| units.contains(ring.sub(one, ring.mul(rx, s)))))
        })
        .collect()
}

/// One-sided characterization `{x : 1 - r·x is a unit for all r}`, kept as an
/// independent cross-check of [`ElementSets::jacobson`].
pub fn jacobson_one_sided(ring: &FiniteRing) -> Vec<usize> {
    let one = ring.one();
    let is_unit = |u: usize| ring.elements().any(|v| ring.mul(u, v) == one && ring.mul(v, u) == one);
    ring.elements()
        .filter(|&x| ring.elements().all(|r| is_unit(ring.sub(one, ring.mul(r, x)))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::BuildContext;
    use std::sync::Arc;

    fn ring(text: &str) -> Arc<FiniteRing> {
        BuildContext::default().build_str(text).unwrap()
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    /// Number-theoretic description of Z_n: idempotents solve e^2 = e, nilpotents
    /// are multiples of the radical of n, units are coprime to n.
    fn residue_oracle(n: u64) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let mut rad = 1;
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                rad *= p;
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        let idem = (0..n).filter(|e| (e * e) % n == e % n).map(|e| e as usize).collect();
        let nil = (0..n).filter(|x| x % rad == 0).map(|x| x as usize).collect();
        let units = (0..n).filter(|&x| gcd(x, n) == 1 && n > 1 || n == 1).map(|x| x as usize).collect();
        (idem, nil, units)
    }

    #[test]
    fn z6_and_z4_sets() {
        let z6 = ring("Z6");
        let s = z6.element_sets().unwrap();
        assert_eq!(s.idempotents, vec![0, 1, 3, 4]);
        assert_eq!(s.nilpotents, vec![0]);
        assert_eq!(s.units, vec![1, 5]);
        assert_eq!(s.jacobson, vec![0]);
        let z4 = ring("Z4");
        let s = z4.element_sets().unwrap();
        assert_eq!(s.idempotents, vec![0, 1]);
        assert_eq!(s.nilpotents, vec![0, 2]);
        assert_eq!(s.units, vec![1, 3]);
        assert_eq!(s.jacobson, vec![0, 2]);
        assert_eq!(s.inverse(3), Some(3));
    }

    #[test]
    fn residue_rings_match_number_theory() {
        for n in 1..=60u64 {
            let r = ring(&format!("Z{n}"));
            let s = r.element_sets().unwrap();
            let (idem, nil, units) = residue_oracle(n);
            assert_eq!(s.idempotents, idem, "Z{n}");
            assert_eq!(s.nilpotents, nil, "Z{n}");
            assert_eq!(s.units, units, "Z{n}");
            // Z_n is commutative, so J = Nil and the centre is everything.
            assert_eq!(s.jacobson, nil, "Z{n}");
            assert_eq!(s.center.len(), n as usize);
        }
    }

    #[test]
    fn nilpotency_indices() {
        let z4 = ring("Z4");
        assert_eq!(nilpotency_index(&z4, 2), Some(2));
        assert_eq!(nilpotency_index(&z4, 0), Some(1));
        let z6 = ring("Z6");
        assert_eq!(nilpotency_index(&z6, 5), None);
        let z8 = ring("Z8");
        assert_eq!(nilpotency_index(&z8, 2), Some(3));
        assert_eq!(z8.element_sets().unwrap().nilpotency_index(6), Some(3));
    }

    #[test]
    fn full_matrix_ring_centre_is_scalars() {
        let m2 = ring("Morita(Z2, Z2, Z2, Z2, mul)");
        let s = m2.element_sets().unwrap();
        let shown: Vec<String> = s.center.iter().map(|&x| m2.display(x)).collect();
        assert_eq!(shown, vec!["[[0,0],[0,0]]", "[[1,0],[0,1]]"]);
        // M2(F2) is simple: J = 0.
        assert_eq!(s.jacobson, vec![0]);
        assert_eq!(s.idempotents.len(), 8);
        assert_eq!(s.units.len(), 6);
    }

    #[test]
    fn both_jacobson_characterizations_agree() {
        for text in ["T2(Z4)", "Morita(Z2, Z2, Z2, Z2)", "Idealization(Z6, Z3)", "T3(Z2)", "Z4 x Z9"] {
            let r = ring(text);
            assert_eq!(r.element_sets().unwrap().jacobson, jacobson_one_sided(&r), "{text}");
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let ctx = BuildContext::default().with_limits(crate::Limits {
            max_ring_size: 4096,
            lattice_cap: 256,
        });
        let big = ctx.build_str("Z64 x Z64").unwrap();
        assert_eq!(big.size(), 4096);
        let small_cap = BuildContext::default().with_limits(crate::Limits {
            max_ring_size: 100,
            lattice_cap: 100,
        });
        match small_cap.build_str("Z101") {
            Err(crate::Error::SizeLimit { size, cap, .. }) => assert_eq!((size, cap), (101, 100)),
            other => panic!("{other:?}"),
        }
    }
}
