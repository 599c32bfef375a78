//! Textual ring specifications.
//!
//! ```text
//! ring    := term { "x" term }
//! term    := "Z" INT | "T" INT "(" ring ")" | "Quot(" ring ";" elems ")"
//!          | "Corner(" ring ";" elem ")" | "Idealization(" ring "," module ")"
//!          | "Morita(" ring "," ring "," module "," module ["," pairing] ")"
//!          | "(" ring ")"
//! module  := "Z" INT { "x" "Z" INT } | "@" NAME
//! pairing := "zero" | "mul" | "@" NAME
//! ```
//!
//! Whitespace is ignored everywhere. `@NAME` refers to an explicit action or
//! pairing table registered in the [`BuildContext`](crate::BuildContext).

use std::fmt;

use crate::error::Result;
use crate::literal::{Cursor, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zn(u64),
    Product(Vec<RingSpec>),
    Triangular(usize, Box<RingSpec>),
    Quotient(Box<RingSpec>, Vec<Literal>),
    Corner(Box<RingSpec>, Literal),
    Idealization(Box<RingSpec>, ModuleSpec),
    Morita(Box<MoritaRingSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoritaRingSpec {
    pub a: RingSpec,
    pub b: RingSpec,
    pub m: ModuleSpec,
    pub n: ModuleSpec,
    pub pairing: Pairing,
}

/// A module carrier `Z_d1 x ... x Z_dk` with either the canonical residue
/// action or a named explicit action table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    Cyclic(Vec<u64>),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Pairing {
    #[default]
    Zero,
    Mul,
    Named(String),
}

/// Parses a ring specification string.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut cur = Cursor::new(text);
    let spec = ring(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(spec)
}

impl std::str::FromStr for RingSpec {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ring_spec(s)
    }
}

fn ring(cur: &mut Cursor) -> Result<RingSpec> {
    let first = term(cur)?;
    let mut factors = vec![first];
    while cur.eat('x') {
        factors.push(term(cur)?);
    }
    Ok(if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        RingSpec::Product(factors)
    })
}

fn term(cur: &mut Cursor) -> Result<RingSpec> {
    if cur.eat_keyword("Quot(") {
        let base = ring(cur)?;
        cur.expect(';')?;
        let mut gens = Vec::new();
        if cur.peek() != Some(')') {
            gens.push(cur.literal()?);
            while cur.eat(',') {
                gens.push(cur.literal()?);
            }
        }
        cur.expect(')')?;
        return Ok(RingSpec::Quotient(Box::new(base), gens));
    }
    if cur.eat_keyword("Corner(") {
        let base = ring(cur)?;
        cur.expect(';')?;
        let f = cur.literal()?;
        cur.expect(')')?;
        return Ok(RingSpec::Corner(Box::new(base), f));
    }
    if cur.eat_keyword("Idealization(") {
        let base = ring(cur)?;
        cur.expect(',')?;
        let module = module(cur)?;
        cur.expect(')')?;
        return Ok(RingSpec::Idealization(Box::new(base), module));
    }
    if cur.eat_keyword("Morita(") {
        let a = ring(cur)?;
        cur.expect(',')?;
        let b = ring(cur)?;
        cur.expect(',')?;
        let m = module(cur)?;
        cur.expect(',')?;
        let n = module(cur)?;
        let pairing = if cur.eat(',') {
            pairing(cur)?
        } else {
            Pairing::Zero
        };
        cur.expect(')')?;
        return Ok(RingSpec::Morita(Box::new(MoritaRingSpec {
            a,
            b,
            m,
            n,
            pairing,
        })));
    }
    if cur.eat('Z') {
        let pos = cur.pos();
        let n = cur.unsigned()?;
        if n == 0 {
            return Err(crate::Error::Syntax {
                pos,
                msg: "residue modulus must be at least 1".into(),
            });
        }
        return Ok(RingSpec::Zn(n));
    }
    if cur.eat('T') {
        let pos = cur.pos();
        let k = cur.unsigned()?;
        if k == 0 {
            return Err(crate::Error::Syntax {
                pos,
                msg: "matrix dimension must be at least 1".into(),
            });
        }
        cur.expect('(')?;
        let base = ring(cur)?;
        cur.expect(')')?;
        return Ok(RingSpec::Triangular(k as usize, Box::new(base)));
    }
    if cur.eat('(') {
        let inner = ring(cur)?;
        cur.expect(')')?;
        return Ok(inner);
    }
    Err(cur.error("expected a ring"))
}

fn module(cur: &mut Cursor) -> Result<ModuleSpec> {
    if cur.eat('@') {
        return Ok(ModuleSpec::Named(cur.name()?));
    }
    let mut factors = Vec::new();
    loop {
        if !cur.eat('Z') {
            return Err(cur.error("expected a module `Z<d>` or `@name`"));
        }
        let pos = cur.pos();
        let d = cur.unsigned()?;
        if d == 0 {
            return Err(crate::Error::Syntax {
                pos,
                msg: "cyclic factor order must be at least 1".into(),
            });
        }
        factors.push(d);
        if !cur.eat('x') {
            break;
        }
    }
    Ok(ModuleSpec::Cyclic(factors))
}

fn pairing(cur: &mut Cursor) -> Result<Pairing> {
    if cur.eat_keyword("zero") {
        Ok(Pairing::Zero)
    } else if cur.eat_keyword("mul") {
        Ok(Pairing::Mul)
    } else if cur.eat('@') {
        Ok(Pairing::Named(cur.name()?))
    } else {
        Err(cur.error("expected a pairing (`zero`, `mul` or `@name`)"))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zn(n) => write!(f, "Z{n}"),
            RingSpec::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    if matches!(p, RingSpec::Product(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            RingSpec::Triangular(k, base) => write!(f, "T{k}({base})"),
            RingSpec::Quotient(base, gens) => {
                write!(f, "Quot({base}; ")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
            RingSpec::Corner(base, e) => write!(f, "Corner({base}; {e})"),
            RingSpec::Idealization(base, m) => write!(f, "Idealization({base}, {m})"),
            RingSpec::Morita(ctx) => write!(
                f,
                "Morita({}, {}, {}, {}, {})",
                ctx.a, ctx.b, ctx.m, ctx.n, ctx.pairing
            ),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Cyclic(factors) => {
                for (i, d) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "Z{d}")?;
                }
                Ok(())
            }
            ModuleSpec::Named(name) => write!(f, "@{name}"),
        }
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pairing::Zero => f.write_str("zero"),
            Pairing::Mul => f.write_str("mul"),
            Pairing::Named(name) => write!(f, "@{name}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn parses_each_constructor() {
        assert_eq!(parse_ring_spec("Z6").unwrap(), RingSpec::Zn(6));
        assert_eq!(
            parse_ring_spec("Z2 x Z4").unwrap(),
            RingSpec::Product(vec![RingSpec::Zn(2), RingSpec::Zn(4)])
        );
        assert_eq!(
            parse_ring_spec("T2(Z2)").unwrap(),
            RingSpec::Triangular(2, Box::new(RingSpec::Zn(2)))
        );
        let q = parse_ring_spec("Quot(T2(Z2); [[0,1],[0,0]])").unwrap();
        assert!(matches!(q, RingSpec::Quotient(_, ref g) if g.len() == 1));
        let m = parse_ring_spec("Morita(Z2, Z2, Z2, Z2, mul)").unwrap();
        match m {
            RingSpec::Morita(ctx) => assert_eq!(ctx.pairing, Pairing::Mul),
            other => panic!("{other:?}"),
        }
        let m = parse_ring_spec("Morita(Z2,Z2,Z2,Z2)").unwrap();
        assert!(matches!(m, RingSpec::Morita(ref c) if c.pairing == Pairing::Zero));
    }

    #[test]
    fn whitespace_and_zero_width_insensitive() {
        let a = parse_ring_spec("Ideal\u{200B}ization( Z4 , Z2 )").unwrap();
        let b = parse_ring_spec("Idealization(Z4,Z2)").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_ring_spec("Z2xZ3xZ5").unwrap().to_string(), "Z2 x Z3 x Z5");
    }

    #[test]
    fn parenthesised_products_stay_nested() {
        let s = parse_ring_spec("(Z2 x Z2) x Z3").unwrap();
        assert_eq!(s.to_string(), "(Z2 x Z2) x Z3");
        assert_eq!(parse_ring_spec(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "Z1",
            "T3(Z2 x Z3)",
            "Quot(Z8; 4)",
            "Quot(Z8; )",
            "Corner(T2(Z2); [[1,0],[0,0]])",
            "Idealization(Z12, Z2 x Z3)",
            "Idealization(Z4, @m)",
            "Morita(Z2, Z4, Z2, Z2, @p)",
        ] {
            let spec = parse_ring_spec(text).unwrap();
            assert_eq!(parse_ring_spec(&spec.to_string()).unwrap(), spec, "{text}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_ring_spec("T2(Z2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match parse_ring_spec("Z0") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_ring_spec("Q5").is_err());
        assert!(parse_ring_spec("Z1 2").is_err());
        assert!(parse_ring_spec("Z2 x").is_err());
        assert!(parse_ring_spec("Morita(Z2,Z2,Z2,Z2,both)").is_err());
    }
}
