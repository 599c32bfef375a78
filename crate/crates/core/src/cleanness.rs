//! Clean, nil clean and weak nil clean decompositions of elements, ideals and rings.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::build::BuildContext;
use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::ring::FiniteRing;
use crate::sets::ElementSets;

/// Ideals at least this large are classified in parallel.
const PARALLEL_THRESHOLD: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Clean,
    WeaklyClean,
    NilClean,
    WeakNilClean,
    StronglyClean,
    StronglyWeaklyClean,
    StronglyNilClean,
    StronglyWeakNilClean,
}

impl Flavor {
    pub const ALL: [Flavor; 8] = [
        Flavor::Clean,
        Flavor::WeaklyClean,
        Flavor::NilClean,
        Flavor::WeakNilClean,
        Flavor::StronglyClean,
        Flavor::StronglyWeaklyClean,
        Flavor::StronglyNilClean,
        Flavor::StronglyWeakNilClean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Clean => "clean",
            Flavor::WeaklyClean => "weakly_clean",
            Flavor::NilClean => "nil_clean",
            Flavor::WeakNilClean => "weak_nil_clean",
            Flavor::StronglyClean => "strongly_clean",
            Flavor::StronglyWeaklyClean => "strongly_weakly_clean",
            Flavor::StronglyNilClean => "strongly_nil_clean",
            Flavor::StronglyWeakNilClean => "strongly_weak_nil_clean",
        }
    }

    /// Allows `x = -e + w` as well as `x = e + w`.
    pub fn is_weak(self) -> bool {
        matches!(
            self,
            Flavor::WeaklyClean | Flavor::WeakNilClean | Flavor::StronglyWeaklyClean | Flavor::StronglyWeakNilClean
        )
    }

    /// `w` must be nilpotent rather than a unit.
    pub fn is_nil(self) -> bool {
        matches!(
            self,
            Flavor::NilClean | Flavor::WeakNilClean | Flavor::StronglyNilClean | Flavor::StronglyWeakNilClean
        )
    }

    /// `e` and `w` must commute.
    pub fn is_strong(self) -> bool {
        matches!(
            self,
            Flavor::StronglyClean | Flavor::StronglyWeaklyClean | Flavor::StronglyNilClean | Flavor::StronglyWeakNilClean
        )
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Flavor::ALL.iter().map(|f| f.name()).collect();
                Error::Config(format!("unknown flavor `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// Weakly clean element of type I (`e + u`) or type II (`-e + u`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    I,
    II,
}

/// A witness `x = sign·e + w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub flavor: Flavor,
    pub x: usize,
    pub sign: Sign,
    pub e: usize,
    pub w: usize,
    pub commuting: bool,
    pub type_tag: Option<TypeTag>,
}

fn sets(ring: &FiniteRing) -> &ElementSets {
    ring.element_sets().expect("ring size was checked when it was built")
}

fn tag_for(flavor: Flavor, sign: Sign) -> Option<TypeTag> {
    match (flavor.is_nil(), sign) {
        (true, _) => None,
        (false, Sign::Plus) => Some(TypeTag::I),
        (false, Sign::Minus) => Some(TypeTag::II),
    }
}

fn search(
    ring: &FiniteRing,
    sets: &ElementSets,
    x: usize,
    flavor: Flavor,
    restrict: Option<&Ideal>,
) -> Option<Certificate> {
    let target = |w: usize| {
        if flavor.is_nil() {
            sets.is_nilpotent(w) && restrict.is_none_or(|i| i.contains(w))
        } else {
            sets.is_unit(w)
        }
    };
    let signs: &[Sign] = if flavor.is_weak() {
        &[Sign::Plus, Sign::Minus]
    } else {
        &[Sign::Plus]
    };
    for &e in &sets.idempotents {
        if restrict.is_some_and(|i| !i.contains(e)) {
            continue;
        }
        for &sign in signs {
            let w = match sign {
                Sign::Plus => ring.sub(x, e),
                Sign::Minus => ring.add(x, e),
            };
            if !target(w) {
                continue;
            }
            let commuting = ring.mul(e, w) == ring.mul(w, e);
            if flavor.is_strong() && !commuting {
                continue;
            }
            return Some(Certificate {
                flavor,
                x,
                sign,
                e,
                w,
                commuting,
                type_tag: tag_for(flavor, sign),
            });
        }
    }
    None
}

/// First decomposition of `x` in ascending idempotent order, `+e` before `-e`.
///
/// With `restrict`, the idempotent (and for nil flavors the nilpotent) must lie in the ideal.
pub fn decompose(ring: &FiniteRing, x: usize, flavor: Flavor, restrict: Option<&Ideal>) -> Option<Certificate> {
    search(ring, sets(ring), x, flavor, restrict)
}

/// Number of idempotents `e` with `x - e` or `x + e` nilpotent.
pub fn unique_wnc_witness_count(ring: &FiniteRing, x: usize) -> usize {
    let s = sets(ring);
    s.idempotents
        .iter()
        .filter(|&&e| s.is_nilpotent(ring.sub(x, e)) || s.is_nilpotent(ring.add(x, e)))
        .count()
}

/// Every element of the ideal has exactly one weak nil clean idempotent.
pub fn is_uniquely_wnc(ideal: &Ideal) -> bool {
    ideal
        .elements()
        .iter()
        .all(|&x| unique_wnc_witness_count(ideal.ring(), x) == 1)
}

#[derive(Debug, Clone)]
pub struct IdealClassification {
    pub flavor: Flavor,
    pub restricted: bool,
    pub holds: bool,
    /// One certificate per decomposable element, in element order.
    pub witnesses: Vec<Certificate>,
    /// Least element without a decomposition.
    pub failure: Option<usize>,
}

pub fn classify_ideal(ideal: &Ideal, flavor: Flavor, restricted: bool) -> IdealClassification {
    let ring = ideal.ring();
    let s = sets(ring);
    let restrict = restricted.then_some(ideal);
    let run = |&x: &usize| (x, search(ring, s, x, flavor, restrict));
    let results: Vec<(usize, Option<Certificate>)> = if ideal.size() >= PARALLEL_THRESHOLD {
        ideal.elements().par_iter().map(run).collect()
    } else {
        ideal.elements().iter().map(run).collect()
    };
    let failure = results.iter().find(|(_, c)| c.is_none()).map(|(x, _)| *x);
    IdealClassification {
        flavor,
        restricted,
        holds: failure.is_none(),
        witnesses: results.into_iter().filter_map(|(_, c)| c).collect(),
        failure,
    }
}

/// Least element of `elements` with no decomposition.
pub fn first_failure(ring: &FiniteRing, elements: &[usize], flavor: Flavor, restrict: Option<&Ideal>) -> Option<usize> {
    let s = sets(ring);
    elements
        .iter()
        .copied()
        .find(|&x| search(ring, s, x, flavor, restrict).is_none())
}

/// Same verdict as [`classify_ideal`], stopping at the first failure.
pub fn ideal_has_flavor(ideal: &Ideal, flavor: Flavor, restricted: bool) -> bool {
    first_failure(ideal.ring(), ideal.elements(), flavor, restricted.then_some(ideal)).is_none()
}

pub fn classify_ring(ring: &Arc<FiniteRing>, flavor: Flavor) -> IdealClassification {
    classify_ideal(&Ideal::whole(ring), flavor, false)
}

pub fn ring_has_flavor(ring: &Arc<FiniteRing>, flavor: Flavor) -> bool {
    ideal_has_flavor(&Ideal::whole(ring), flavor, false)
}

/// Checks a certificate from scratch against the ring's arithmetic.
///
/// A `-e` certificate is only accepted when `-e != e`; otherwise the same
/// decomposition has the `+e` form, which is the canonical one.
pub fn verify_certificate(ring: &FiniteRing, cert: &Certificate) -> Result<bool> {
    for (name, v) in [("x", cert.x), ("e", cert.e), ("w", cert.w)] {
        if v >= ring.size() {
            return Err(Error::Certificate(format!(
                "{name} = {v} is outside a ring of size {}",
                ring.size()
            )));
        }
    }
    let (e, w) = (cert.e, cert.w);
    if cert.sign == Sign::Minus && (!cert.flavor.is_weak() || ring.neg(e) == e) {
        return Ok(false);
    }
    if ring.mul(e, e) != e {
        return Ok(false);
    }
    let w_ok = if cert.flavor.is_nil() {
        let mut p = w;
        (0..ring.size()).any(|_| {
            let zero = p == 0;
            p = ring.mul(p, w);
            zero
        })
    } else {
        ring.elements()
            .any(|v| ring.mul(w, v) == ring.one() && ring.mul(v, w) == ring.one())
    };
    if !w_ok {
        return Ok(false);
    }
    let signed_e = match cert.sign {
        Sign::Plus => e,
        Sign::Minus => ring.neg(e),
    };
    if ring.add(signed_e, w) != cert.x {
        return Ok(false);
    }
    let commuting = ring.mul(e, w) == ring.mul(w, e);
    if cert.commuting != commuting || (cert.flavor.is_strong() && !commuting) {
        return Ok(false);
    }
    Ok(cert.type_tag == tag_for(cert.flavor, cert.sign))
}

/// JSON form of a certificate, with elements in displayed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub flavor: Flavor,
    pub ring_spec: String,
    pub x: String,
    pub sign: i64,
    pub e: String,
    pub w: String,
    pub commuting: bool,
    pub type_tag: Option<TypeTag>,
}

impl CertificateRecord {
    pub fn new(ring: &FiniteRing, cert: &Certificate) -> Self {
        CertificateRecord {
            flavor: cert.flavor,
            ring_spec: ring.spec().to_string(),
            x: ring.display(cert.x),
            sign: cert.sign.value() as i64,
            e: ring.display(cert.e),
            w: ring.display(cert.w),
            commuting: cert.commuting,
            type_tag: cert.type_tag,
        }
    }

    /// Rebuilds the ring and the certificate; malformed fields are errors.
    pub fn resolve(&self, ctx: &BuildContext) -> Result<(Arc<FiniteRing>, Certificate)> {
        let ring = ctx.build_str(&self.ring_spec)?;
        let elem = |name: &str, text: &str| {
            ring.parse_element(text)
                .map_err(|e| Error::Certificate(format!("field `{name}`: {e}")))
        };
        let sign = Sign::from_value(self.sign)
            .ok_or_else(|| Error::Certificate(format!("sign must be 1 or -1, got {}", self.sign)))?;
        let cert = Certificate {
            flavor: self.flavor,
            x: elem("x", &self.x)?,
            sign,
            e: elem("e", &self.e)?,
            w: elem("w", &self.w)?,
            commuting: self.commuting,
            type_tag: self.type_tag,
        };
        Ok((ring, cert))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{all_ideals, ideal_generated_by};

    fn ring(text: &str) -> Arc<FiniteRing> {
        BuildContext::default().build_str(text).unwrap()
    }

    /// Independent oracle: does some (e, n) in Idem x Nil give x = ±e + n?
    fn wnc_oracle(r: &FiniteRing, x: usize, allow_minus: bool) -> bool {
        let idem: Vec<usize> = r.elements().filter(|&e| r.mul(e, e) == e).collect();
        let nil: Vec<usize> = r.elements().filter(|&n| (1..=r.size() as u64).any(|k| r.pow(n, k) == 0)).collect();
        idem.iter().any(|&e| {
            nil.iter().any(|&n| r.add(e, n) == x || (allow_minus && r.sub(n, e) == x))
        })
    }

    #[test]
    fn z6_examples() {
        let z6 = ring("Z6");
        let c = decompose(&z6, 2, Flavor::WeakNilClean, None).unwrap();
        assert_eq!((c.sign, c.e, c.w), (Sign::Minus, 4, 0));
        assert!(decompose(&z6, 2, Flavor::NilClean, None).is_none());
        let two = ideal_generated_by(&z6, &[2]).unwrap();
        assert!(classify_ideal(&two, Flavor::WeakNilClean, false).holds);
        let nc = classify_ideal(&two, Flavor::NilClean, false);
        assert!(!nc.holds);
        assert_eq!(nc.failure, Some(2));
        assert!(ring_has_flavor(&z6, Flavor::WeakNilClean));
    }

    #[test]
    fn z15_examples() {
        let z15 = ring("Z15");
        assert!(decompose(&z15, 3, Flavor::WeakNilClean, None).is_none());
        let c = decompose(&z15, 3, Flavor::Clean, None).unwrap();
        assert!(verify_certificate(&z15, &c).unwrap());
        // 3 = 10 + 8 with 8 a unit is another valid clean decomposition.
        let alt = Certificate { e: 10, w: 8, ..c };
        assert!(verify_certificate(&z15, &alt).unwrap());
        let three = ideal_generated_by(&z15, &[3]).unwrap();
        assert!(classify_ideal(&three, Flavor::WeaklyClean, false).holds);
        assert_eq!(classify_ideal(&three, Flavor::WeakNilClean, false).failure, Some(3));
    }

    #[test]
    fn prime_power_residue_rings() {
        let z49 = ring("Z49");
        let r = classify_ring(&z49, Flavor::WeakNilClean);
        assert!(!r.holds);
        assert!(decompose(&z49, 3, Flavor::WeakNilClean, None).is_none());
        let seven = ideal_generated_by(&z49, &[7]).unwrap();
        let c = classify_ideal(&seven, Flavor::WeakNilClean, false);
        assert!(c.holds);
        assert!(c.witnesses.iter().all(|w| w.e == 0));
        assert!(ring_has_flavor(&ring("Z4"), Flavor::NilClean));
    }

    #[test]
    fn witness_counts() {
        let z4 = ring("Z4");
        assert_eq!(unique_wnc_witness_count(&z4, 0), 1);
        assert_eq!(unique_wnc_witness_count(&z4, 2), 1);
        let m2 = ring("Morita(Z2, Z2, Z2, Z2, mul)");
        let x = m2.parse_element("[[1,0],[0,0]]").unwrap();
        assert_eq!(unique_wnc_witness_count(&m2, x), 3);
        assert_eq!(unique_wnc_witness_count(&ring("T2(Z2)"), 0), 1);
    }

    #[test]
    fn search_agrees_with_oracle() {
        for text in ["Z12", "T2(Z3)", "Idealization(Z4, Z2)", "Morita(Z2, Z2, Z2, Z2, mul)", "Z2 x Z9"] {
            let r = ring(text);
            for x in r.elements() {
                assert_eq!(decompose(&r, x, Flavor::WeakNilClean, None).is_some(), wnc_oracle(&r, x, true), "{text}");
                assert_eq!(decompose(&r, x, Flavor::NilClean, None).is_some(), wnc_oracle(&r, x, false), "{text}");
            }
        }
    }

    #[test]
    fn restricted_witnesses_stay_inside() {
        let r = ring("T2(Z4)");
        for i in all_ideals(&r).unwrap() {
            let c = classify_ideal(&i, Flavor::WeakNilClean, true);
            assert_eq!(c.holds, classify_ideal(&i, Flavor::WeakNilClean, false).holds);
            for w in &c.witnesses {
                assert!(i.contains(w.e) && i.contains(w.w));
            }
        }
    }

    #[test]
    fn certificates_and_tampering() {
        let z6 = ring("Z6");
        let c = decompose(&z6, 2, Flavor::WeakNilClean, None).unwrap();
        assert!(verify_certificate(&z6, &c).unwrap());
        assert!(!verify_certificate(&z6, &Certificate { e: 2, ..c.clone() }).unwrap());
        let nc = Certificate {
            flavor: Flavor::NilClean,
            ..c.clone()
        };
        assert!(!verify_certificate(&z6, &nc).unwrap());
        assert!(!verify_certificate(&z6, &Certificate { sign: Sign::Plus, ..c.clone() }).unwrap());
        assert!(!verify_certificate(&z6, &Certificate { w: 1, ..c.clone() }).unwrap());
        assert!(matches!(
            verify_certificate(&z6, &Certificate { x: 9, ..c }),
            Err(Error::Certificate(_))
        ));
    }

    #[test]
    fn certificate_json_round_trip() {
        let ctx = BuildContext::default();
        let r = ctx.build_str("T2(Z3)").unwrap();
        let x = r.parse_element("[[2,1],[0,1]]").unwrap();
        let c = decompose(&r, x, Flavor::StronglyWeaklyClean, None).unwrap();
        let json = serde_json::to_string(&CertificateRecord::new(&r, &c)).unwrap();
        let back: CertificateRecord = serde_json::from_str(&json).unwrap();
        let (r2, c2) = back.resolve(&ctx).unwrap();
        assert_eq!(c2, c);
        assert!(verify_certificate(&r2, &c2).unwrap());
        let bad = CertificateRecord { sign: 2, ..back };
        assert!(bad.resolve(&ctx).is_err());
    }

    #[test]
    fn flavor_names() {
        for f in Flavor::ALL {
            assert_eq!(f.name().parse::<Flavor>().unwrap(), f);
            assert_eq!(serde_json::to_string(&f).unwrap(), format!("\"{}\"", f.name()));
        }
        assert!("dirty".parse::<Flavor>().is_err());
    }
}
