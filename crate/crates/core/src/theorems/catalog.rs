//! The statement catalog: one checker per claim, each run on a single corpus ring.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::corpus::CorpusEntry;
use super::report::{Counterexample, Tally};
use crate::cleanness::{
    classify_ideal, decompose, first_failure, ideal_has_flavor, is_uniquely_wnc, ring_has_flavor, Flavor, Sign,
};
use crate::constructions::{
    context_projections, corner_ideal, corner_ring, morita_ideal, product_ideal, submodule_set, triangular_ideal,
    MoritaContext,
};
use crate::error::Result;
use crate::ideals::{
    all_ideals, brute_force_lifts, ideal_generated_by, image_ideal, is_ideal, is_nil_ideal, lift_idempotent_mod_nil,
    quotient_ring, Ideal, QuotientRing,
};
use crate::module::Bimodule;
use crate::ring::FiniteRing;
use crate::sets::ElementSets;
use crate::spec::Pairing;

/// Cap on sub-bimodule families enumerated by the idealization and Morita checkers.
const SUBMODULE_LIMIT: usize = 1 << 16;

pub struct Statement {
    pub id: &'static str,
    pub description: &'static str,
    pub notes: &'static [&'static str],
    pub(crate) check: fn(&CorpusEntry) -> Result<Tally>,
}

impl std::fmt::Debug for Statement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Statement").field("id", &self.id).finish()
    }
}

pub fn statement_ids() -> Vec<&'static str> {
    CATALOG.iter().map(|s| s.id).collect()
}

pub static CATALOG: [Statement; 21] = [
    Statement {
        id: "STMT-L1",
        description: "every weak nil clean ideal is weakly clean, with x = (1-e) + (2e-1+n) or x = (1-e) + (-1+n)",
        notes: &[],
        check: check_l1,
    },
    Statement {
        id: "STMT-PPP1",
        description: "for a weak nil clean ideal I, I ∩ J(R) is nil",
        notes: &[],
        check: check_ppp1,
    },
    Statement {
        id: "STMT-JAC",
        description: "a weak nil clean ring has J(R) ⊆ Nil(R), with equality when R is commutative",
        notes: &["the equality is read as: commutative and weak nil clean implies J(R) = Nil(R)"],
        check: check_jac,
    },
    Statement {
        id: "STMT-STRONG",
        description: "I is strongly weak nil clean iff it is strongly weakly clean and every x has such a decomposition with x - x^2 or x + x^2 nilpotent",
        notes: &["the converse direction is checked by building the nil clean decomposition from each qualifying unit decomposition"],
        check: check_strong,
    },
    Statement {
        id: "STMT-UNIQC",
        description: "every idempotent of a uniquely weak nil clean ideal is central",
        notes: &["uniqueness counts distinct idempotents e, whichever sign is used"],
        check: check_uniqc,
    },
    Statement {
        id: "STMT-T111",
        description: "I is weak nil clean iff every x in I is ±e + n with e ∈ Idem(I) and n ∈ Nil(I)",
        notes: &[],
        check: check_t111,
    },
    Statement {
        id: "STMT-LOCAL",
        description: "if Idem(R) = {0, 1} then every proper weak nil clean ideal is nil",
        notes: &["only rings whose idempotents are 0 and 1 give instances"],
        check: check_local,
    },
    Statement {
        id: "STMT-MAIN",
        description: "R is weak nil clean iff some central e has <e> and <1-e> weak nil clean, one of them nil clean",
        notes: &[],
        check: check_main,
    },
    Statement {
        id: "STMT-CSET",
        description: "R is weak nil clean iff some complete set of central idempotents has every <e_i> weak nil clean and at most one not nil clean",
        notes: &["complete sets of one, two and three central idempotents are searched"],
        check: check_cset,
    },
    Statement {
        id: "STMT-PEIRCE",
        description: "I is weak nil clean iff some complete set of central idempotents has every e_i I weak nil clean in e_i R, at most one not nil clean",
        notes: &["complete sets of one, two and three central idempotents are searched"],
        check: check_peirce,
    },
    Statement {
        id: "STMT-QUOT",
        description: "for a nil ideal I ⊆ I1, I1 is weak nil clean iff I1/I is weak nil clean in R/I; idempotents lift modulo I",
        notes: &[],
        check: check_quot,
    },
    Statement {
        id: "STMT-HOM",
        description: "every quotient image of a weak nil clean ideal is weak nil clean",
        notes: &["homomorphic images are taken as quotient projections R -> R/K"],
        check: check_hom,
    },
    Statement {
        id: "STMT-PROD",
        description: "a product of ideals is weak nil clean iff each factor is and at most one is not nil clean",
        notes: &["finite products only; the infinite product example lies outside finite rings"],
        check: check_prod,
    },
    Statement {
        id: "STMT-D211",
        description: "in T_k(R) an idempotent has idempotent diagonal, and N is nilpotent iff every N_ii is",
        notes: &[],
        check: check_d211,
    },
    Statement {
        id: "STMT-T2",
        description: "[[I, R], [0, J]] in T_2(R) is weak nil clean iff I and J are, and one of them is nil clean",
        notes: &[],
        check: check_t2,
    },
    Statement {
        id: "STMT-RM",
        description: "(r, m) in R(M) is idempotent iff r is and m = 0, nilpotent iff r is, and (r, m)^n = (r^n, n r^(n-1) m)",
        notes: &[],
        check: check_rm,
    },
    Statement {
        id: "STMT-RM1",
        description: "I(N) is weak nil clean in R(M) iff I is weak nil clean in R",
        notes: &["I(N) is only an ideal when I·M ⊆ N; other pairs are checked elementwise on the set I(N)"],
        check: check_rm1,
    },
    Statement {
        id: "STMT-CORNER",
        description: "a ∈ fRf is strongly weak nil clean in R iff it is in fRf; fRf of a strongly weak nil clean ring is strongly weak nil clean",
        notes: &[],
        check: check_corner,
    },
    Statement {
        id: "STMT-MORL",
        description: "an ideal I of a Morita context ring is [[A1, M1], [N1, B1]] with A1 = p_A(I) and the context containments",
        notes: &[],
        check: check_morl,
    },
    Statement {
        id: "STMT-MORP",
        description: "if I is strongly weak nil clean then p_A(I) and p_B(I) are strongly weak nil clean ideals of A and B",
        notes: &[],
        check: check_morp,
    },
    Statement {
        id: "STMT-MORZ",
        description: "under zero pairing, weak nil clean A1, B1 with one strongly nil clean give a weak nil clean ideal [[A1, M1], [N1, B1]]",
        notes: &["every pair of sub-bimodules M1, N1 satisfying the containments is tried"],
        check: check_morz,
    },
];

fn sets(ring: &FiniteRing) -> Result<&ElementSets> {
    ring.element_sets()
}

fn wnc(i: &Ideal) -> bool {
    ideal_has_flavor(i, Flavor::WeakNilClean, false)
}

fn nc(i: &Ideal) -> bool {
    ideal_has_flavor(i, Flavor::NilClean, false)
}

fn ce(
    ring: &FiniteRing,
    ideal: Option<&Ideal>,
    element: Option<usize>,
    expected: impl Into<String>,
    actual: impl Into<String>,
) -> Counterexample {
    Counterexample {
        ring: ring.spec().to_string(),
        ideal: ideal.map(Ideal::display),
        element: element.map(|x| ring.display(x)),
        expected: expected.into(),
        actual: actual.into(),
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// `lhs ⇔ rhs`, recording a counterexample when they differ.
fn iff(t: &mut Tally, ring: &FiniteRing, ideal: Option<&Ideal>, what: &str, lhs: bool, rhs: bool) {
    if lhs != rhs {
        t.fail(ce(
            ring,
            ideal,
            None,
            format!("{what}: both sides equal"),
            format!("left {}, right {}", verdict(lhs), verdict(rhs)),
        ));
    }
}

fn check_l1(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let one = r.one();
    let mut t = Tally::default();
    for i in &entry.ideals {
        let c = classify_ideal(i, Flavor::WeakNilClean, false);
        t.instance(!c.holds);
        if !c.holds {
            continue;
        }
        for cert in &c.witnesses {
            let (x, e, n) = (cert.x, cert.e, cert.w);
            let f = r.sub(one, e);
            let (u, extra) = match cert.sign {
                Sign::Plus => (r.add(r.sub(r.int_mul(2, e), one), n), true),
                Sign::Minus => (r.sub(n, one), r.sub(r.add(x, e), n) == 0),
            };
            if !(r.mul(f, f) == f && s.is_unit(u) && r.add(f, u) == x && extra) {
                t.fail(ce(
                    r,
                    Some(i),
                    Some(x),
                    "(1-e) + u with u a unit",
                    format!("e = {}, u = {}", r.display(e), r.display(u)),
                ));
            }
        }
        if !ideal_has_flavor(i, Flavor::WeaklyClean, false) {
            t.fail(ce(r, Some(i), None, "weakly clean", "not weakly clean"));
        }
    }
    Ok(t)
}

fn check_ppp1(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let mut t = Tally::default();
    for i in &entry.ideals {
        let w = wnc(i);
        t.instance(!w);
        if !w {
            continue;
        }
        for &x in i.elements() {
            if s.in_jacobson(x) && !s.is_nilpotent(x) {
                t.fail(ce(r, Some(i), Some(x), "nilpotent", "in J(R) but not nilpotent"));
            }
        }
    }
    Ok(t)
}

fn check_jac(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let mut t = Tally::default();
    let w = ring_has_flavor(r, Flavor::WeakNilClean);
    t.instance(!w);
    if !w {
        return Ok(t);
    }
    for &x in &s.jacobson {
        if !s.is_nilpotent(x) {
            t.fail(ce(r, None, Some(x), "J(R) ⊆ Nil(R)", "element of J(R) not nilpotent"));
        }
    }
    if r.is_commutative() && s.jacobson != s.nilpotents {
        t.fail(ce(r, None, None, "J(R) = Nil(R)", format!("|J| = {}, |Nil| = {}", s.jacobson.len(), s.nilpotents.len())));
    }
    Ok(t)
}

fn check_strong(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let one = r.one();
    let mut t = Tally::default();
    for i in &entry.ideals {
        let swnc = ideal_has_flavor(i, Flavor::StronglyWeakNilClean, false);
        let swc = ideal_has_flavor(i, Flavor::StronglyWeaklyClean, false);
        t.instance(!swc && !swnc);
        if swnc {
            if !swc {
                t.fail(ce(r, Some(i), None, "strongly weakly clean", "not strongly weakly clean"));
            }
            for &x in i.elements() {
                let Some(cert) = decompose(r, x, Flavor::StronglyWeakNilClean, None) else {
                    continue;
                };
                let (e, n) = (cert.e, cert.w);
                let sq = r.mul(x, x);
                let f = r.sub(one, e);
                let (defect, u, sum) = match cert.sign {
                    Sign::Plus => {
                        let u = r.add(r.sub(r.int_mul(2, e), one), n);
                        (r.sub(x, sq), u, r.add(f, u))
                    }
                    Sign::Minus => {
                        let u = r.add(r.sub(one, r.int_mul(2, e)), n);
                        (r.add(x, sq), u, r.sub(u, f))
                    }
                };
                if !s.is_nilpotent(defect) {
                    t.fail(ce(r, Some(i), Some(x), "x ∓ x^2 nilpotent", "not nilpotent"));
                }
                if !(s.is_unit(u) && r.mul(f, u) == r.mul(u, f) && sum == x) {
                    t.fail(ce(
                        r,
                        Some(i),
                        Some(x),
                        "commuting unit decomposition from the nil clean one",
                        format!("u = {}", r.display(u)),
                    ));
                }
            }
        }
        let mut every = true;
        for &x in i.elements() {
            let sq = r.mul(x, x);
            let mut found = false;
            for &e in &s.idempotents {
                for sign in [Sign::Plus, Sign::Minus] {
                    let (u, defect) = match sign {
                        Sign::Plus => (r.sub(x, e), r.sub(x, sq)),
                        Sign::Minus => (r.add(x, e), r.add(x, sq)),
                    };
                    if !s.is_unit(u) || r.mul(e, u) != r.mul(u, e) || !s.is_nilpotent(defect) {
                        continue;
                    }
                    found = true;
                    let f = r.sub(one, e);
                    let (v, sum) = match sign {
                        Sign::Plus => {
                            let v = r.add(r.sub(r.int_mul(2, e), one), u);
                            (v, r.add(f, v))
                        }
                        Sign::Minus => {
                            let v = r.add(r.sub(one, r.int_mul(2, e)), u);
                            (v, r.sub(v, f))
                        }
                    };
                    if !(s.is_nilpotent(v) && r.mul(f, v) == r.mul(v, f) && sum == x) {
                        t.fail(ce(
                            r,
                            Some(i),
                            Some(x),
                            "commuting nil clean decomposition from the unit one",
                            format!("e = {}, v = {}", r.display(e), r.display(v)),
                        ));
                    }
                }
            }
            every &= found;
        }
        iff(&mut t, r, Some(i), "strongly weak nil clean ⇔ strongly weakly clean with nilpotent x ∓ x^2", swnc, swc && every);
    }
    Ok(t)
}

fn check_uniqc(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let mut t = Tally::default();
    for i in &entry.ideals {
        let u = is_uniquely_wnc(i);
        t.instance(!u);
        if !u {
            continue;
        }
        for &x in i.elements() {
            if s.is_idempotent(x) && !s.is_central(x) {
                t.fail(ce(r, Some(i), Some(x), "central idempotent", "idempotent not central"));
            }
        }
    }
    Ok(t)
}

fn check_t111(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    for i in &entry.ideals {
        t.instance(false);
        let plain = wnc(i);
        let c = classify_ideal(i, Flavor::WeakNilClean, true);
        iff(&mut t, r, Some(i), "weak nil clean ⇔ decompositions inside I", plain, c.holds);
        for cert in &c.witnesses {
            if !i.contains(cert.e) || !i.contains(cert.w) {
                t.fail(ce(r, Some(i), Some(cert.x), "e and n in I", "witness outside I"));
            }
        }
    }
    Ok(t)
}

fn check_local(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let mut t = Tally::default();
    if s.idempotents.len() > 2 {
        return Ok(t);
    }
    for i in entry.ideals.iter().filter(|i| !i.is_whole()) {
        let w = wnc(i);
        t.instance(!w);
        if w && !is_nil_ideal(i) {
            t.fail(ce(r, Some(i), None, "nil ideal", "weak nil clean but not nil"));
        }
    }
    Ok(t)
}

fn check_main(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let mut t = Tally::default();
    t.instance(false);
    let lhs = ring_has_flavor(r, Flavor::WeakNilClean);
    let mut rhs = false;
    for e in s.central_idempotents() {
        let a = ideal_generated_by(r, &[e])?;
        let b = ideal_generated_by(r, &[r.sub(r.one(), e)])?;
        if wnc(&a) && wnc(&b) && (nc(&a) || nc(&b)) {
            rhs = true;
            break;
        }
    }
    iff(&mut t, r, None, "weak nil clean ⇔ central e splitting", lhs, rhs);
    Ok(t)
}

/// Complete orthogonal sets of one, two or three nonzero central idempotents.
fn complete_sets(r: &FiniteRing, s: &ElementSets) -> Vec<Vec<usize>> {
    let one = r.one();
    let central: Vec<usize> = s.central_idempotents().into_iter().filter(|&e| e != 0).collect();
    let mut out = vec![vec![one]];
    for &e in &central {
        let f = r.sub(one, e);
        if e < f && f != 0 {
            out.push(vec![e, f]);
        }
    }
    for (a, &e1) in central.iter().enumerate() {
        for (b, &e2) in central.iter().enumerate().skip(a + 1) {
            if r.mul(e1, e2) != 0 {
                continue;
            }
            for &e3 in &central[b + 1..] {
                if r.mul(e1, e3) == 0 && r.mul(e2, e3) == 0 && r.add(r.add(e1, e2), e3) == one {
                    out.push(vec![e1, e2, e3]);
                }
            }
        }
    }
    out
}

fn is_complete(r: &FiniteRing, set: &[usize]) -> bool {
    let sum = set.iter().fold(0, |acc, &e| r.add(acc, e));
    let orthogonal = set
        .iter()
        .enumerate()
        .all(|(a, &x)| set.iter().skip(a + 1).all(|&y| r.mul(x, y) == 0 && r.mul(y, x) == 0));
    sum == r.one() && orthogonal && set.iter().all(|&e| r.mul(e, e) == e)
}

fn check_cset(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let mut t = Tally::default();
    t.instance(false);
    let lhs = ring_has_flavor(r, Flavor::WeakNilClean);
    let mut rhs = false;
    for set in complete_sets(r, s) {
        if !is_complete(r, &set) {
            t.fail(ce(r, None, None, "complete orthogonal set", "set is not complete"));
            continue;
        }
        let mut all = true;
        let mut not_nc = 0;
        for &e in &set {
            let g = ideal_generated_by(r, &[e])?;
            all &= wnc(&g);
            not_nc += usize::from(!nc(&g));
        }
        if all && not_nc <= 1 {
            rhs = true;
            break;
        }
    }
    iff(&mut t, r, None, "weak nil clean ⇔ complete central set splitting", lhs, rhs);
    Ok(t)
}

fn check_peirce(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let mut t = Tally::default();
    let csets = complete_sets(r, s);
    let mut corners: Vec<(usize, Arc<FiniteRing>)> = Vec::new();
    for set in &csets {
        if !is_complete(r, set) {
            t.fail(ce(r, None, None, "complete orthogonal set", "set is not complete"));
        }
        for &e in set {
            if !corners.iter().any(|(f, _)| *f == e) {
                corners.push((e, corner_ring(r, e)?));
            }
        }
    }
    for i in &entry.ideals {
        t.instance(false);
        let lhs = wnc(i);
        let mut rhs = false;
        for set in &csets {
            let mut all = true;
            let mut not_nc = 0;
            for &e in set {
                let corner = &corners.iter().find(|(f, _)| *f == e).expect("corner built").1;
                let ei = corner_ideal(corner, i)?;
                all &= wnc(&ei);
                not_nc += usize::from(!nc(&ei));
            }
            if all && not_nc <= 1 {
                rhs = true;
                break;
            }
        }
        iff(&mut t, r, Some(i), "weak nil clean ⇔ Peirce splitting", lhs, rhs);
    }
    Ok(t)
}

fn check_quot(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    for i in entry.ideals.iter().filter(|i| is_nil_ideal(i)) {
        let q = quotient_ring(i)?;
        let qr = q.ring();
        for i1 in entry.ideals.iter().filter(|i1| i.is_subset(i1)) {
            t.instance(false);
            let img = image_ideal(&q, i1)?;
            iff(&mut t, r, Some(i1), &format!("quotient by {}", i.display()), wnc(i1), wnc(&img));
            for &c in img.elements() {
                if qr.mul(c, c) != c {
                    continue;
                }
                let a = q.rep(c);
                let e = lift_idempotent_mod_nil(i, a)?;
                let ok = r.mul(e, e) == e
                    && i.contains(r.sub(e, a))
                    && i1.contains(e)
                    && brute_force_lifts(i, a).contains(&e);
                if !ok {
                    t.fail(ce(r, Some(i1), Some(a), "idempotent lift in the coset and in I1", format!("lift {}", r.display(e))));
                }
            }
        }
    }
    Ok(t)
}

fn check_hom(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    let quotients: Vec<QuotientRing> = entry.ideals.iter().map(quotient_ring).collect::<Result<_>>()?;
    for i1 in &entry.ideals {
        let w = wnc(i1);
        for q in &quotients {
            t.instance(!w);
            if !w {
                continue;
            }
            let img = image_ideal(q, i1)?;
            if !wnc(&img) {
                t.fail(ce(
                    r,
                    Some(i1),
                    None,
                    format!("image in R/{} weak nil clean", q.modulus().display()),
                    "image not weak nil clean",
                ));
            }
        }
    }
    Ok(t)
}

fn check_prod(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    let Some(parts) = r.product_parts() else {
        return Ok(t);
    };
    let lattices: Vec<Vec<Ideal>> = parts.iter().map(all_ideals).collect::<Result<_>>()?;
    let flags: Vec<Vec<(bool, bool)>> = lattices
        .iter()
        .map(|l| l.iter().map(|i| (wnc(i), nc(i))).collect())
        .collect();
    let mut idx = vec![0usize; parts.len()];
    loop {
        t.instance(false);
        let chosen: Vec<&Ideal> = idx.iter().enumerate().map(|(k, &j)| &lattices[k][j]).collect();
        let p = product_ideal(r, &chosen)?;
        let failure = first_failure(r, p.elements(), Flavor::WeakNilClean, None);
        let all = idx.iter().enumerate().all(|(k, &j)| flags[k][j].0);
        let not_nc = idx.iter().enumerate().filter(|&(k, &j)| !flags[k][j].1).count();
        let rhs = all && not_nc <= 1;
        if failure.is_none() != rhs {
            t.fail(ce(
                r,
                Some(&p),
                failure,
                format!("product weak nil clean: {}", verdict(rhs)),
                format!("product weak nil clean: {}", verdict(failure.is_none())),
            ));
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(t);
            }
            idx[k] += 1;
            if idx[k] < lattices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn check_d211(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    let Some((k, base)) = r.triangular_parts() else {
        return Ok(t);
    };
    let s = sets(r)?;
    let bs = sets(base)?;
    t.instance(false);
    for x in r.elements() {
        let diag: Vec<usize> = (0..k).map(|i| r.entry(x, i, i)).collect();
        if s.is_idempotent(x) && !diag.iter().all(|&d| bs.is_idempotent(d)) {
            t.fail(ce(r, None, Some(x), "idempotent diagonal", "diagonal entry not idempotent"));
        }
        let diag_nil = diag.iter().all(|&d| bs.is_nilpotent(d));
        if s.is_nilpotent(x) != diag_nil {
            t.fail(ce(
                r,
                None,
                Some(x),
                format!("nilpotent: {}", verdict(diag_nil)),
                format!("nilpotent: {}", verdict(s.is_nilpotent(x))),
            ));
        }
    }
    Ok(t)
}

fn check_t2(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    let Some((2, base)) = r.triangular_parts() else {
        return Ok(t);
    };
    let lattice = all_ideals(base)?;
    let flags: Vec<(bool, bool)> = lattice.iter().map(|i| (wnc(i), nc(i))).collect();
    for (a, top) in lattice.iter().enumerate() {
        for (b, bottom) in lattice.iter().enumerate() {
            t.instance(false);
            let sub = triangular_ideal(r, top, bottom)?;
            let rhs = flags[a].0 && flags[b].0 && (flags[a].1 || flags[b].1);
            iff(&mut t, r, Some(&sub), "[[I, R], [0, J]] weak nil clean ⇔ condition on I, J", wnc(&sub), rhs);
        }
    }
    Ok(t)
}

fn check_rm(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    let Some((base, module)) = r.idealization_parts() else {
        return Ok(t);
    };
    let s = sets(r)?;
    let bs = sets(base)?;
    t.instance(false);
    for x in r.elements() {
        let (a, m) = r.idealization_split(x);
        iff(&mut t, r, None, &format!("{} idempotent", r.display(x)), s.is_idempotent(x), bs.is_idempotent(a) && m == 0);
        iff(&mut t, r, None, &format!("{} nilpotent", r.display(x)), s.is_nilpotent(x), bs.is_nilpotent(a));
        let mut power = x;
        let mut prev = base.one();
        for n in 1..=r.size() {
            let rn = base.mul(prev, a);
            let expected = r.idealization_compose(rn, module.group().scale(n as i64, module.act_left(prev, m)));
            if power != expected {
                t.fail(ce(
                    r,
                    None,
                    Some(x),
                    format!("power {n} = {}", r.display(expected)),
                    r.display(power),
                ));
                break;
            }
            power = r.mul(power, x);
            prev = rn;
        }
    }
    Ok(t)
}

fn check_rm1(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    let Some((base, module)) = r.idealization_parts() else {
        return Ok(t);
    };
    let lattice = all_ideals(base)?;
    let subs = module.sub_bimodules(SUBMODULE_LIMIT)?;
    for i in &lattice {
        let w = wnc(i);
        for n in &subs {
            t.instance(false);
            let set = submodule_set(r, i, n)?;
            if !is_ideal(r, &set) {
                t.count("pairs (I, N) where I(N) is not an ideal", 1);
            }
            let elements: Vec<usize> = set.ones().collect();
            let failure = first_failure(r, &elements, Flavor::WeakNilClean, None);
            if w != failure.is_none() {
                t.fail(ce(
                    r,
                    None,
                    failure,
                    format!("I(N) weak nil clean: {} for I = {}", verdict(w), i.display()),
                    format!("N = {}", display_submodule(module, n)),
                ));
            }
        }
    }
    Ok(t)
}

fn display_submodule(module: &Bimodule, n: &FixedBitSet) -> String {
    let parts: Vec<String> = n.ones().map(|m| module.display(m)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn check_corner(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let s = sets(r)?;
    let mut t = Tally::default();
    let ring_swnc = ring_has_flavor(r, Flavor::StronglyWeakNilClean);
    for &f in &s.idempotents {
        t.instance(false);
        let c = corner_ring(r, f)?;
        for a in c.elements() {
            let x = c.corner_embed(a);
            let in_r = decompose(r, x, Flavor::StronglyWeakNilClean, None).is_some();
            let in_c = decompose(&c, a, Flavor::StronglyWeakNilClean, None).is_some();
            if in_r != in_c {
                t.fail(ce(
                    r,
                    None,
                    Some(x),
                    format!("same verdict in R and {}", c.spec()),
                    format!("in R {}, in corner {}", verdict(in_r), verdict(in_c)),
                ));
            }
        }
        if ring_swnc && !ring_has_flavor(&c, Flavor::StronglyWeakNilClean) {
            t.fail(ce(r, None, None, format!("{} strongly weak nil clean", c.spec()), "corner fails"));
        }
    }
    Ok(t)
}

fn to_set(size: usize, elements: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(size);
    s.extend(elements.iter().copied());
    s
}

fn is_sub_bimodule(module: &Bimodule, set: &FixedBitSet) -> bool {
    set.contains(0)
        && set.ones().all(|x| {
            set.ones().all(|y| set.contains(module.add(x, y)))
                && module.left_ring().elements().all(|r| set.contains(module.act_left(r, x)))
                && module.right_ring().elements().all(|s| set.contains(module.act_right(x, s)))
        })
}

/// First violated containment among the eight context conditions, if any.
fn containment_failure(
    ctx: &MoritaContext,
    a1: &FixedBitSet,
    m1: &FixedBitSet,
    n1: &FixedBitSet,
    b1: &FixedBitSet,
) -> Option<&'static str> {
    let (ms, ns) = (ctx.m.size(), ctx.n.size());
    if !m1.ones().all(|m| (0..ns).all(|n| a1.contains(ctx.pair_a(m, n)))) {
        return Some("M1·N ⊆ A1");
    }
    if !(0..ms).all(|m| n1.ones().all(|n| a1.contains(ctx.pair_a(m, n)))) {
        return Some("M·N1 ⊆ A1");
    }
    if !n1.ones().all(|n| (0..ms).all(|m| b1.contains(ctx.pair_b(n, m)))) {
        return Some("N1·M ⊆ B1");
    }
    if !(0..ns).all(|n| m1.ones().all(|m| b1.contains(ctx.pair_b(n, m)))) {
        return Some("N·M1 ⊆ B1");
    }
    if !a1.ones().all(|a| (0..ms).all(|m| m1.contains(ctx.m.act_left(a, m)))) {
        return Some("A1·M ⊆ M1");
    }
    if !(0..ms).all(|m| b1.ones().all(|b| m1.contains(ctx.m.act_right(m, b)))) {
        return Some("M·B1 ⊆ M1");
    }
    if !b1.ones().all(|b| (0..ns).all(|n| n1.contains(ctx.n.act_left(b, n)))) {
        return Some("B1·N ⊆ N1");
    }
    if !(0..ns).all(|n| a1.ones().all(|a| n1.contains(ctx.n.act_right(n, a)))) {
        return Some("N·A1 ⊆ N1");
    }
    None
}

fn check_morl(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    let Some(ctx) = r.morita_context() else {
        return Ok(t);
    };
    for i in &entry.ideals {
        t.instance(false);
        let p = context_projections(i)?;
        let a1 = to_set(ctx.a.size(), &p.p_a);
        let m1 = to_set(ctx.m.size(), &p.p_m);
        let n1 = to_set(ctx.n.size(), &p.p_n);
        let b1 = to_set(ctx.b.size(), &p.p_b);
        let mut problems = Vec::new();
        if !is_ideal(&ctx.a, &a1) {
            problems.push("p_A(I) is not an ideal of A");
        }
        if !is_ideal(&ctx.b, &b1) {
            problems.push("p_B(I) is not an ideal of B");
        }
        if !is_sub_bimodule(&ctx.m, &m1) {
            problems.push("p_M(I) is not a sub-bimodule of M");
        }
        if !is_sub_bimodule(&ctx.n, &n1) {
            problems.push("p_N(I) is not a sub-bimodule of N");
        }
        if let Some(c) = containment_failure(ctx, &a1, &m1, &n1, &b1) {
            problems.push(c);
        }
        let product = p.p_a.len() * p.p_m.len() * p.p_n.len() * p.p_b.len();
        if product != i.size() {
            problems.push("I differs from [[A1, M1], [N1, B1]]");
        }
        for problem in problems {
            t.fail(ce(r, Some(i), None, "context ideal structure", problem));
        }
    }
    Ok(t)
}

fn check_morp(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    let Some(ctx) = r.morita_context() else {
        return Ok(t);
    };
    for i in &entry.ideals {
        let sw = ideal_has_flavor(i, Flavor::StronglyWeakNilClean, false);
        t.instance(!sw);
        if !sw {
            continue;
        }
        let p = context_projections(i)?;
        for (name, ring, members) in [("p_A", &ctx.a, &p.p_a), ("p_B", &ctx.b, &p.p_b)] {
            let proj = Ideal::from_members(ring, to_set(ring.size(), members))?;
            if !ideal_has_flavor(&proj, Flavor::StronglyWeakNilClean, false) {
                t.fail(ce(
                    r,
                    Some(i),
                    None,
                    format!("{name}(I) strongly weak nil clean"),
                    format!("{name}(I) = {} fails", proj.display_elements()),
                ));
            }
        }
    }
    Ok(t)
}

fn check_morz(entry: &CorpusEntry) -> Result<Tally> {
    let r = &entry.ring;
    let mut t = Tally::default();
    let Some(ctx) = r.morita_context() else {
        return Ok(t);
    };
    if ctx.pairing != Pairing::Zero {
        return Ok(t);
    }
    let la = all_ideals(&ctx.a)?;
    let lb = all_ideals(&ctx.b)?;
    let sm = ctx.m.sub_bimodules(SUBMODULE_LIMIT)?;
    let sn = ctx.n.sub_bimodules(SUBMODULE_LIMIT)?;
    let flags = |l: &[Ideal]| -> Vec<(bool, bool)> {
        l.iter()
            .map(|i| (wnc(i), ideal_has_flavor(i, Flavor::StronglyNilClean, false)))
            .collect()
    };
    let (fa, fb) = (flags(&la), flags(&lb));
    for (ia, a1) in la.iter().enumerate() {
        for (ib, b1) in lb.iter().enumerate() {
            let hyp = fa[ia].0 && fb[ib].0 && (fa[ia].1 || fb[ib].1);
            for m1 in &sm {
                for n1 in &sn {
                    if containment_failure(ctx, a1.members(), m1, n1, b1.members()).is_some() {
                        continue;
                    }
                    t.instance(!hyp);
                    if !hyp {
                        continue;
                    }
                    match morita_ideal(r, a1, m1, n1, b1) {
                        Ok(i) => {
                            if !wnc(&i) {
                                t.fail(ce(r, Some(&i), None, "weak nil clean", "not weak nil clean"));
                            }
                        }
                        Err(err) => t.fail(ce(
                            r,
                            None,
                            None,
                            format!("[[{}, M1], [N1, {}]] is an ideal", a1.display(), b1.display()),
                            err.to_string(),
                        )),
                    }
                }
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::BuildContext;

    fn entry(text: &str) -> CorpusEntry {
        let ring = BuildContext::default().build_str(text).unwrap();
        let ideals = all_ideals(&ring).unwrap();
        CorpusEntry { ring, ideals }
    }

    fn run(id: &str, text: &str) -> Tally {
        let stmt = CATALOG.iter().find(|s| s.id == id).unwrap();
        (stmt.check)(&entry(text)).unwrap()
    }

    #[test]
    fn ids_are_unique_and_sorted_by_catalog() {
        let mut ids = statement_ids();
        assert_eq!(ids.len(), 21);
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 21);
    }

    #[test]
    fn product_negative_instance_is_consistent() {
        let t = run("STMT-PROD", "Z6 x Z6");
        assert_eq!(t.counterexample_count, 0, "{:?}", t.counterexamples);
        assert_eq!(t.instances, 16);
        let r = BuildContext::default().build_str("Z6 x Z6").unwrap();
        let parts = r.product_parts().unwrap().to_vec();
        let two = ideal_generated_by(&parts[0], &[2]).unwrap();
        let two_b = ideal_generated_by(&parts[1], &[2]).unwrap();
        let p = product_ideal(&r, &[&two, &two_b]).unwrap();
        assert!(!wnc(&p));
        let x = r.product_compose(&[4, 2]);
        assert!(decompose(&r, x, Flavor::WeakNilClean, None).is_none());
    }

    #[test]
    fn idealization_lemma_on_z2() {
        let t = run("STMT-RM", "Idealization(Z2, Z2)");
        assert_eq!((t.instances, t.counterexample_count), (1, 0));
    }

    #[test]
    fn uniqueness_is_not_vacuous_on_z4() {
        let t = run("STMT-UNIQC", "Z4");
        assert!(t.instances > t.vacuous);
        assert_eq!(t.counterexample_count, 0);
    }

    #[test]
    fn local_rings_give_instances() {
        let t = run("STMT-LOCAL", "Z8");
        assert!(t.instances > t.vacuous);
        assert_eq!(run("STMT-LOCAL", "Z6").instances, 0);
    }

    #[test]
    fn complete_sets_of_z30_include_triples() {
        let e = entry("Z30");
        let s = e.ring.element_sets().unwrap();
        let sets = complete_sets(&e.ring, s);
        assert!(sets.iter().any(|c| c.len() == 3));
        assert!(sets.iter().all(|c| is_complete(&e.ring, c)));
    }

    #[test]
    fn morita_checkers_on_small_contexts() {
        for text in ["Morita(Z2, Z2, Z2, Z2, zero)", "Morita(Z2, Z2, Z2, Z2, mul)", "T2(Z4)"] {
            for id in ["STMT-MORL", "STMT-MORP", "STMT-MORZ", "STMT-T2", "STMT-D211"] {
                let t = run(id, text);
                assert_eq!(t.counterexample_count, 0, "{id} on {text}: {:?}", t.counterexamples);
            }
        }
        assert!(run("STMT-MORZ", "Morita(Z2, Z2, Z2, Z2, zero)").instances > 0);
    }
}
