//! Ring expressions: `Zn(4)`, `M(2,Zn(3))`, `Hst(Zn(4),s=1,t=3)`, `File("r.json")`, …

use std::fmt;
use std::path::PathBuf;

use super::{
    corner_ring, direct_product, enumerate_unital_rings, formal_triangular, hst_ring, k0_ring,
    ks_ring, lst_ring, make_zn, matrix_ring, quotient_by_generators, trivial_morita,
    upper_triangular_ring, Bimodule,
};
use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Limits};

/// Bimodule choice for the block constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// The ring acting on itself; requires both diagonal rings to coincide.
    Regular,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Zn(usize),
    Product(Vec<RingExpr>),
    Matrix(usize, Box<RingExpr>),
    Triangular(usize, Box<RingExpr>),
    Corner(Box<RingExpr>, usize),
    Quotient(Box<RingExpr>, Vec<usize>),
    Hst(Box<RingExpr>, usize, usize),
    Lst(Box<RingExpr>, usize, usize),
    K0(Box<RingExpr>),
    Ks(Box<RingExpr>, usize),
    FormalTri(Box<RingExpr>, Box<RingExpr>, ModuleSpec),
    MoritaTrivial(Box<RingExpr>, Box<RingExpr>, ModuleSpec, ModuleSpec),
    /// Representative `index` (1-based) of the order-`order` enumeration up to isomorphism.
    Enumerated(usize, usize),
    File(PathBuf),
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleSpec::Regular => "self",
            ModuleSpec::Zero => "zero",
        })
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RingExpr::*;
        match self {
            Zn(k) => write!(f, "Zn({k})"),
            Product(parts) => {
                let p: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "Prod({})", p.join(","))
            }
            Matrix(n, r) => write!(f, "M({n},{r})"),
            Triangular(n, r) => write!(f, "T({n},{r})"),
            Corner(r, e) => write!(f, "Corner({r},e={e})"),
            Quotient(r, g) => {
                let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                write!(f, "Quot({r},gens=[{}])", g.join(","))
            }
            Hst(r, s, t) => write!(f, "Hst({r},s={s},t={t})"),
            Lst(r, s, t) => write!(f, "Lst({r},s={s},t={t})"),
            K0(r) => write!(f, "K0({r})"),
            Ks(r, s) => write!(f, "Ks({r},s={s})"),
            FormalTri(a, b, m) => {
                write!(f, "Tri({a},{b}")?;
                if *m != ModuleSpec::Regular {
                    write!(f, ",m={m}")?;
                }
                f.write_str(")")
            }
            MoritaTrivial(a, b, m, n) => {
                write!(f, "Morita({a},{b}")?;
                if *m != ModuleSpec::Regular {
                    write!(f, ",m={m}")?;
                }
                if *n != ModuleSpec::Regular {
                    write!(f, ",n={n}")?;
                }
                f.write_str(")")
            }
            Enumerated(k, i) => write!(f, "Enum({k},{i})"),
            File(p) => write!(f, "File({:?})", p.display().to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Str(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            let v = text.parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("integer `{text}` out of range"),
            })?;
            out.push((pos, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect())));
        } else if c == '"' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].1 != '"' {
                i += 1;
            }
            if i == chars.len() {
                return Err(Error::Parse {
                    pos,
                    msg: "unterminated string".into(),
                });
            }
            out.push((pos, Tok::Str(chars[start..i].iter().map(|&(_, c)| c).collect())));
            i += 1;
        } else if "(),=[]".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.at += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{c}`")),
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.at += 1;
                Ok(v)
            }
            _ => self.err("expected integer"),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    /// `key=<int>`
    fn keyed_int(&mut self, key: &str) -> Result<usize> {
        let k = self.ident()?;
        if k != key {
            return self.err(format!("expected `{key}=`"));
        }
        self.sym('=')?;
        self.int()
    }

    fn module_spec(&mut self) -> Result<ModuleSpec> {
        match self.ident()?.as_str() {
            "self" => Ok(ModuleSpec::Regular),
            "zero" => Ok(ModuleSpec::Zero),
            _ => self.err("bimodule must be `self` or `zero`"),
        }
    }

    fn expr(&mut self) -> Result<RingExpr> {
        let head_pos = self.pos();
        let head = self.ident()?;
        self.sym('(')?;
        let boxed = |p: &mut Parser| p.expr().map(Box::new);
        let e = match head.as_str() {
            "Zn" => {
                let k = self.int()?;
                if k == 0 {
                    return Err(Error::Parse {
                        pos: head_pos,
                        msg: "Zn needs a positive modulus".into(),
                    });
                }
                RingExpr::Zn(k)
            }
            "M" | "T" => {
                let n = self.int()?;
                if n == 0 {
                    return self.err("matrix size must be positive");
                }
                self.sym(',')?;
                let r = boxed(self)?;
                if head == "M" {
                    RingExpr::Matrix(n, r)
                } else {
                    RingExpr::Triangular(n, r)
                }
            }
            "Prod" => {
                let mut parts = vec![self.expr()?];
                while self.eat_sym(',') {
                    parts.push(self.expr()?);
                }
                RingExpr::Product(parts)
            }
            "Corner" => {
                let r = boxed(self)?;
                self.sym(',')?;
                RingExpr::Corner(r, self.keyed_int("e")?)
            }
            "Quot" => {
                let r = boxed(self)?;
                self.sym(',')?;
                if self.ident()? != "gens" {
                    return self.err("expected `gens=`");
                }
                self.sym('=')?;
                self.sym('[')?;
                let mut gens = Vec::new();
                if !self.eat_sym(']') {
                    gens.push(self.int()?);
                    while self.eat_sym(',') {
                        gens.push(self.int()?);
                    }
                    self.sym(']')?;
                }
                RingExpr::Quotient(r, gens)
            }
            "Hst" | "Lst" => {
                let r = boxed(self)?;
                self.sym(',')?;
                let s = self.keyed_int("s")?;
                self.sym(',')?;
                let t = self.keyed_int("t")?;
                if head == "Hst" {
                    RingExpr::Hst(r, s, t)
                } else {
                    RingExpr::Lst(r, s, t)
                }
            }
            "K0" => RingExpr::K0(boxed(self)?),
            "Ks" => {
                let r = boxed(self)?;
                self.sym(',')?;
                RingExpr::Ks(r, self.keyed_int("s")?)
            }
            "Tri" => {
                let a = boxed(self)?;
                self.sym(',')?;
                let b = boxed(self)?;
                let mut m = ModuleSpec::Regular;
                if self.eat_sym(',') {
                    if self.ident()? != "m" {
                        return self.err("expected `m=`");
                    }
                    self.sym('=')?;
                    m = self.module_spec()?;
                }
                RingExpr::FormalTri(a, b, m)
            }
            "Morita" => {
                let a = boxed(self)?;
                self.sym(',')?;
                let b = boxed(self)?;
                let (mut m, mut n) = (ModuleSpec::Regular, ModuleSpec::Regular);
                while self.eat_sym(',') {
                    let key = self.ident()?;
                    self.sym('=')?;
                    match key.as_str() {
                        "m" => m = self.module_spec()?,
                        "n" => n = self.module_spec()?,
                        _ => return self.err("expected `m=` or `n=`"),
                    }
                }
                RingExpr::MoritaTrivial(a, b, m, n)
            }
            "Enum" => {
                let k = self.int()?;
                self.sym(',')?;
                RingExpr::Enumerated(k, self.int()?)
            }
            "File" => match self.next() {
                Some(Tok::Str(s)) => RingExpr::File(PathBuf::from(s)),
                _ => {
                    self.at -= 1;
                    return self.err("expected quoted path");
                }
            },
            other => {
                return Err(Error::Parse {
                    pos: head_pos,
                    msg: format!("unknown constructor `{other}`"),
                })
            }
        };
        self.sym(')')?;
        Ok(e)
    }
}

pub fn parse_expr(src: &str) -> Result<RingExpr> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl std::str::FromStr for RingExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

fn bimodule(spec: ModuleSpec, a: &FiniteRing, b: &FiniteRing) -> Result<Bimodule> {
    match spec {
        ModuleSpec::Zero => Ok(Bimodule::zero()),
        ModuleSpec::Regular => {
            if a.to_raw().mul != b.to_raw().mul || a.to_raw().add != b.to_raw().add {
                return Err(Error::DimensionMismatch(
                    "the self-action bimodule needs identical diagonal rings".into(),
                ));
            }
            Ok(Bimodule::regular(a))
        }
    }
}

/// Builds the ring an expression denotes. Every result is validated; names
/// are the canonical expression text (file rings keep their stored name).
pub fn build(expr: &RingExpr, limits: &Limits) -> Result<FiniteRing> {
    use RingExpr::*;
    let mut ring = match expr {
        Zn(k) => {
            limits.check_order(*k as u128)?;
            make_zn(*k)
        }
        Product(parts) => {
            let built: Result<Vec<FiniteRing>> = parts.iter().map(|p| build(p, limits)).collect();
            direct_product(&built?, limits)?
        }
        Matrix(n, r) => matrix_ring(*n, &build(r, limits)?, limits)?,
        Triangular(n, r) => upper_triangular_ring(*n, &build(r, limits)?, limits)?,
        Corner(r, e) => corner_ring(&build(r, limits)?, *e, limits)?.ring,
        Quotient(r, gens) => quotient_by_generators(&build(r, limits)?, gens, limits)?.ring,
        Hst(r, s, t) => hst_ring(&build(r, limits)?, *s, *t, limits)?,
        Lst(r, s, t) => lst_ring(&build(r, limits)?, *s, *t, limits)?,
        K0(r) => k0_ring(&build(r, limits)?, limits)?,
        Ks(r, s) => ks_ring(&build(r, limits)?, *s, limits)?,
        FormalTri(a, b, m) => {
            let (a, b) = (build(a, limits)?, build(b, limits)?);
            formal_triangular(&a, &b, &bimodule(*m, &a, &b)?, limits)?
        }
        MoritaTrivial(a, b, m, n) => {
            let (a, b) = (build(a, limits)?, build(b, limits)?);
            let mm = bimodule(*m, &a, &b)?;
            let nn = bimodule(*n, &b, &a)?;
            trivial_morita(&a, &b, &mm, &nn, limits)?
        }
        Enumerated(k, i) => {
            let mut all = enumerate_unital_rings(*k, true, limits)?;
            if *i == 0 || *i > all.len() {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("order {k} has {} rings up to isomorphism; index {i} is out of range", all.len()),
                });
            }
            all.swap_remove(i - 1)
        }
        File(p) => return FiniteRing::load(p, limits),
    };
    ring.set_name(expr.to_string());
    Ok(ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for src in [
            "Zn(4)",
            "M(2,Zn(3))",
            "T(2,Zn(4))",
            "Prod(Zn(2),Zn(3))",
            "Corner(M(2,Zn(3)),e=27)",
            "Quot(Zn(4),gens=[2])",
            "Hst(Zn(4),s=1,t=3)",
            "Lst(Zn(2),s=1,t=1)",
            "K0(Zn(4))",
            "Ks(Zn(2),s=1)",
            "Tri(Zn(2),Zn(2))",
            "Tri(Zn(2),Zn(3),m=zero)",
            "Morita(Zn(2),Zn(2),m=zero,n=zero)",
            "Enum(4,2)",
            "File(\"r.json\")",
        ] {
            assert_eq!(parse_expr(src).unwrap().to_string(), src);
        }
    }

    #[test]
    fn whitespace_is_ignored() {
        let e = parse_expr(" Hst ( Zn( 4 ) , s = 1 ,\n t=3 ) ").unwrap();
        assert_eq!(e.to_string(), "Hst(Zn(4),s=1,t=3)");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_expr("M(2,Zq(3))") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_expr("Zn(4") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("Zn(4) x").is_err());
        assert!(parse_expr("Zn(0)").is_err());
    }

    #[test]
    fn builds_named_rings() {
        let l = Limits::default();
        let r = build(&parse_expr("Hst(Zn(4),s=1,t=3)").unwrap(), &l).unwrap();
        assert_eq!(r.order(), 64);
        assert_eq!(r.name(), "Hst(Zn(4),s=1,t=3)");
        assert_eq!(build(&parse_expr("Zn(1)").unwrap(), &l).unwrap().order(), 1);
        assert_eq!(build(&parse_expr("M(2,Zn(3))").unwrap(), &l).unwrap().order(), 81);
        let q = build(&parse_expr("Quot(Zn(4),gens=[2])").unwrap(), &l).unwrap();
        assert_eq!(q.order(), 2);
        assert!(build(&parse_expr("Tri(Zn(2),Zn(3))").unwrap(), &l).is_err());
        assert_eq!(build(&parse_expr("Tri(Zn(2),Zn(3),m=zero)").unwrap(), &l).unwrap().order(), 6);
        assert!(matches!(
            build(&parse_expr("M(3,Zn(4))").unwrap(), &l),
            Err(Error::SizeCap { .. })
        ));
    }
}
