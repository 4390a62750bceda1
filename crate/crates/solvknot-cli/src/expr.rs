//! Expression parser for group and automorphism words.
//!
//! The grammar is shared by both contexts: identifiers from the context's
//! alphabet, `^` with an integer exponent, `*` or juxtaposition for the
//! product, and parentheses. Evaluation is left to right. The flat context
//! uses single letters (a-f, i, j for automorphisms; x, y, z for group
//! elements); the Nil context uses b, r, cu, cv, cz and the indexed family
//! k[m,n] for automorphisms, and u, v, z for group elements.

use solvknot_core::affine::AffineIso;
use solvknot_core::flat_aut::named_aut;
use solvknot_core::nil_aut::{
    aut_compose, aut_pow, conj_aut, identity_aut, is_inner, k_make, named_auts,
    GammaAutomorphism,
};
use solvknot_core::nil_group::{AffNilElement, GammaGroup, NilError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExprError {
    #[error("syntax error at position {0}: {1}")]
    Syntax(usize, String),
    #[error("unknown identifier `{1}` at position {0}")]
    UnknownIdent(usize, String),
    #[error("evaluation error: {0}")]
    Eval(String),
}

impl From<NilError> for ExprError {
    fn from(e: NilError) -> Self {
        ExprError::Eval(e.to_string())
    }
}

/// One factor of a product: an atom raised to an integer power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Ident(String),
    /// the indexed automorphism family k[m,n] (Nil context only)
    K(i64, i64),
    Paren(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub atom: Atom,
    pub exp: i64,
}

/// A left-to-right product of factors; the empty product is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expr(pub Vec<Factor>);

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, fac) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match &fac.atom {
                Atom::Ident(s) => write!(f, "{}", s)?,
                Atom::K(m, n) => write!(f, "k[{},{}]", m, n)?,
                Atom::Paren(e) => write!(f, "({})", e)?,
            }
            if fac.exp != 1 {
                write!(f, "^{}", fac.exp)?;
            }
        }
        Ok(())
    }
}

/// The identifier alphabet of a parsing context, matched longest-first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    /// flat automorphism/group words over {a..f, i, j, x, y, z}
    G6,
    /// Nil automorphism words over {b, r, cu, cv, cz, k[m,n]}
    GammaAut,
    /// Nil group words over {u, v, z}
    GammaElt,
}

impl Context {
    fn idents(self) -> &'static [&'static str] {
        match self {
            Context::G6 => &["a", "b", "c", "d", "e", "f", "i", "j", "x", "y", "z"],
            Context::GammaAut => &["cu", "cv", "cz", "b", "r"],
            Context::GammaElt => &["u", "v", "z"],
        }
    }

    fn allows_k(self) -> bool {
        self == Context::GammaAut
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    ctx: Context,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ExprError::Syntax(start, "expected an integer".into()));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ExprError::Syntax(start, "integer out of range".into()))
    }

    fn atom(&mut self) -> Result<Atom, ExprError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(ExprError::Syntax(self.pos, "expected `)`".into()));
                }
                self.pos += 1;
                Ok(Atom::Paren(inner))
            }
            Some(b'k') if self.ctx.allows_k() => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() != Some(b'[') {
                    return Err(ExprError::Syntax(self.pos, "expected `[` after k".into()));
                }
                self.pos += 1;
                self.skip_ws();
                let m = self.integer()?;
                self.skip_ws();
                if self.peek() != Some(b',') {
                    return Err(ExprError::Syntax(self.pos, "expected `,` in k[m,n]".into()));
                }
                self.pos += 1;
                self.skip_ws();
                let n = self.integer()?;
                self.skip_ws();
                if self.peek() != Some(b']') {
                    return Err(ExprError::Syntax(self.pos, "expected `]` in k[m,n]".into()));
                }
                self.pos += 1;
                Ok(Atom::K(m, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                // longest match over the context's identifier list
                let rest = &self.text[self.pos..];
                let mut best: Option<&str> = None;
                for id in self.ctx.idents() {
                    if rest.starts_with(id.as_bytes())
                        && best.map_or(true, |b| id.len() > b.len())
                    {
                        best = Some(id);
                    }
                }
                match best {
                    Some(id) => {
                        self.pos += id.len();
                        Ok(Atom::Ident(id.to_string()))
                    }
                    None => {
                        // report the full alphabetic run as the unknown name
                        let mut end = self.pos;
                        while matches!(self.text.get(end), Some(c) if c.is_ascii_alphabetic()) {
                            end += 1;
                        }
                        Err(ExprError::UnknownIdent(
                            start,
                            String::from_utf8_lossy(&self.text[start..end]).into_owned(),
                        ))
                    }
                }
            }
            Some(c) => Err(ExprError::Syntax(
                start,
                format!("unexpected character `{}`", c as char),
            )),
            None => Err(ExprError::Syntax(start, "unexpected end of input".into())),
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') => break,
                Some(b'*') => {
                    self.pos += 1;
                    continue;
                }
                _ => {}
            }
            let atom = self.atom()?;
            self.skip_ws();
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                self.integer()?
            } else {
                1
            };
            factors.push(Factor { atom, exp });
        }
        Ok(Expr(factors))
    }
}

/// Parse `text` against the given context; the empty string is the
/// identity.
pub fn parse_expression(text: &str, ctx: Context) -> Result<Expr, ExprError> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, ctx };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(ExprError::Syntax(p.pos, "trailing input".into()));
    }
    Ok(e)
}

/// Evaluate a flat-context expression to an affine map (group elements and
/// automorphisms live in the same normalizer).
pub fn eval_g6(e: &Expr) -> Result<AffineIso, ExprError> {
    let mut out = AffineIso::identity(3);
    for f in &e.0 {
        let base = match &f.atom {
            Atom::Ident(s) => named_aut(s.chars().next().unwrap())
                .map_err(|err| ExprError::Eval(err.to_string()))?,
            Atom::K(..) => {
                return Err(ExprError::Eval("k[m,n] is not a flat-context name".into()))
            }
            Atom::Paren(inner) => eval_g6(inner)?,
        };
        out = out.compose(&base.pow(f.exp));
    }
    Ok(out)
}

/// Invert an automorphism of Gamma: some power phi^N with N <= 12 is the
/// conjugation by an element w (the outer group is small), and then
/// phi^-1 = phi^(N-1) composed with conjugation by w^-1.
fn gamma_aut_inverse(
    g: &GammaGroup,
    phi: &GammaAutomorphism,
) -> Result<GammaAutomorphism, ExprError> {
    for n in 1..=12u32 {
        if let Some(w) = is_inner(g, &aut_pow(g, phi, n)?)? {
            return Ok(aut_compose(
                g,
                &aut_pow(g, phi, n - 1)?,
                &conj_aut(g, &w.inverse())?,
            )?);
        }
    }
    Err(ExprError::Eval("no power up to 12 is inner".into()))
}

fn gamma_aut_power(
    g: &GammaGroup,
    phi: &GammaAutomorphism,
    exp: i64,
) -> Result<GammaAutomorphism, ExprError> {
    if exp >= 0 {
        Ok(aut_pow(g, phi, exp as u32)?)
    } else {
        let inv = gamma_aut_inverse(g, phi)?;
        Ok(aut_pow(g, &inv, exp.unsigned_abs() as u32)?)
    }
}

/// Evaluate a Nil-context automorphism expression.
pub fn eval_gamma_aut(g: &GammaGroup, e: &Expr) -> Result<GammaAutomorphism, ExprError> {
    let na = named_auts(g)?;
    let mut out = identity_aut(g);
    for f in &e.0 {
        let base = match &f.atom {
            Atom::Ident(s) => match s.as_str() {
                "b" => na.b.clone(),
                "r" => na.r.clone(),
                "cu" => na.c_u.clone(),
                "cv" => na.c_v.clone(),
                "cz" => na.c_z.clone(),
                other => return Err(ExprError::Eval(format!("unknown name `{}`", other))),
            },
            Atom::K(m, n) => k_make(g, *m, *n)?,
            Atom::Paren(inner) => eval_gamma_aut(g, inner)?,
        };
        out = aut_compose(g, &out, &gamma_aut_power(g, &base, f.exp)?)?;
    }
    Ok(out)
}

/// Evaluate a Nil-context group word.
pub fn eval_gamma_elt(g: &GammaGroup, e: &Expr) -> Result<AffNilElement, ExprError> {
    let mut out = AffNilElement::identity();
    for f in &e.0 {
        let base = match &f.atom {
            Atom::Ident(s) => match s.as_str() {
                "u" => g.u.clone(),
                "v" => g.v.clone(),
                "z" => g.z.clone(),
                other => return Err(ExprError::Eval(format!("unknown name `{}`", other))),
            },
            Atom::K(..) => {
                return Err(ExprError::Eval("k[m,n] is an automorphism, not a group element".into()))
            }
            Atom::Paren(inner) => eval_gamma_elt(g, inner)?,
        };
        out = out.mul(&base.pow(f.exp));
    }
    Ok(out)
}
