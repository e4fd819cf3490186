//! The textual presentation language.
//!
//! ```text
//! presentation := ["star"] "algebra" IDENT ";" { genDecl | relDecl }
//! genDecl      := "generator" IDENT ("," IDENT)* ":" ("selfadjoint" | "free") ";"
//! relDecl      := "relation" polyExpr ";"
//! polyExpr     := ["-"] term (("+"|"-") term)*
//! term         := factor ("*" factor)*
//! factor       := atom ["^" NAT]
//! atom         := IDENT | "adj" "(" polyExpr ")" | "(" polyExpr ")" | RAT | RAT "i"
//! ```
//!
//! Rationals are spelled `3`, `1/2` or `2.5` and are always exact; `(a+bi)`
//! complex literals are ordinary parenthesized expressions. `#` starts a
//! comment. Diagnostics carry 1-based line and column.
//!
//! The same lexer also reads character, box, state and morphism literals.

mod lexer;

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{rat_to_f64, CRational};
use crate::spectrum::{coordinate_axes, Character, CompactBox, Part, Values};
use crate::star_poly::{Generator, Link, Mode, Morphism, Presentation, StarPoly, Terms};
use crate::states::{Density, StateSpec};

use lexer::{describe, Cursor, Tok, Token};

const RESERVED: &[&str] = &["adj", "algebra", "generator", "relation", "star"];

/// Parses a presentation. The mode is `default_mode` unless the header
/// starts with `star`, which forces star-algebra mode.
///
/// In star-algebra mode each `free` generator `g` is followed by its
/// implicit partner `adj(g)`.
pub fn parse_presentation(text: &str, default_mode: Mode) -> Result<Presentation> {
    let mut cur = Cursor::new(text)?;
    let mode = if cur.eat_keyword("star") {
        Mode::Star
    } else {
        default_mode
    };
    cur.expect_keyword("algebra")?;
    let name = cur.expect_ident()?;
    cur.expect_punct(';')?;

    let mut generators: Vec<Generator> = Vec::new();
    let mut relation_tokens: Vec<Vec<Token>> = Vec::new();
    while !cur.at_eof() {
        if cur.eat_keyword("generator") {
            let mut names = Vec::new();
            loop {
                let at = cur.peek().clone();
                let id = cur.expect_ident()?;
                if RESERVED.contains(&id.as_str()) {
                    return Err(lexer::syntax(
                        at.line,
                        at.column,
                        format!("`{id}` is reserved"),
                    ));
                }
                names.push(id);
                if !cur.eat_punct(',') {
                    break;
                }
            }
            cur.expect_punct(':')?;
            let kind_tok = cur.peek().clone();
            let kind = cur.expect_ident()?;
            cur.expect_punct(';')?;
            for id in names {
                if generators.iter().any(|g| g.name == id) {
                    return Err(Error::DuplicateGenerator(id));
                }
                match (kind.as_str(), mode) {
                    ("selfadjoint", Mode::Star) => generators.push(Generator::selfadjoint(id)),
                    ("selfadjoint", Mode::Algebra) => {
                        return Err(Error::SelfAdjointInAlgebraMode(id))
                    }
                    ("free", Mode::Algebra) => generators.push(Generator::plain(id)),
                    ("free", Mode::Star) => {
                        let i = generators.len();
                        generators.push(Generator {
                            name: id.clone(),
                            adjoint: false,
                            link: Link::Partner(i + 1),
                        });
                        generators.push(Generator {
                            name: id,
                            adjoint: true,
                            link: Link::Partner(i),
                        });
                    }
                    _ => {
                        return Err(lexer::syntax(
                            kind_tok.line,
                            kind_tok.column,
                            format!("expected `selfadjoint` or `free`, found `{kind}`"),
                        ))
                    }
                }
            }
        } else if cur.eat_keyword("relation") {
            let mut toks = Vec::new();
            while !cur.at_punct(';') {
                if cur.at_eof() {
                    return Err(cur.error("unterminated relation, expected `;`"));
                }
                toks.push(cur.next());
            }
            let end = cur.next();
            toks.push(Token {
                tok: Tok::Eof,
                line: end.line,
                column: end.column,
            });
            relation_tokens.push(toks);
        } else {
            return Err(cur.error(format!(
                "expected `generator` or `relation`, found {}",
                describe(&cur.peek().tok)
            )));
        }
    }

    let free = Arc::new(Presentation::free(name.clone(), mode, generators.clone())?);
    let relations: Vec<Terms> = relation_tokens
        .into_iter()
        .map(|toks| {
            let mut c = Cursor::from_tokens(toks);
            let p = PolyParser {
                cur: &mut c,
                pres: &free,
            }
            .parse_all()?;
            Ok(p.into_terms())
        })
        .collect::<Result<_>>()?;
    Presentation::new(name, mode, generators, relations)
}

/// Parses a polynomial over `pres` and brings it into normal form.
pub fn parse_poly(text: &str, pres: &Arc<Presentation>) -> Result<StarPoly> {
    let mut cur = Cursor::new(text)?;
    PolyParser {
        cur: &mut cur,
        pres,
    }
    .parse_all()
}

/// Canonical rendering, inverse to [`parse_poly`] on normal forms.
pub fn format_poly(p: &StarPoly) -> String {
    p.to_string()
}

fn scalar_presentation() -> Arc<Presentation> {
    Arc::new(Presentation::free("scalars", Mode::Star, Vec::new()).expect("empty presentation"))
}

/// A constant expression such as `(1/2 - 3i)` or `-2.5`.
pub fn parse_scalar(text: &str) -> Result<CRational> {
    let mut cur = Cursor::new(text)?;
    scalar_expr(&mut cur)
}

fn scalar_expr(cur: &mut Cursor) -> Result<CRational> {
    let pres = scalar_presentation();
    let p = PolyParser { cur, pres: &pres }.expr()?;
    Ok(p.coefficient(&pres.one()))
}

fn real_expr(cur: &mut Cursor) -> Result<BigRational> {
    let at = cur.peek().clone();
    let v = scalar_expr(cur)?;
    if !v.is_real() {
        return Err(lexer::syntax(at.line, at.column, "expected a real number"));
    }
    Ok(v.re)
}

struct PolyParser<'a> {
    cur: &'a mut Cursor,
    pres: &'a Arc<Presentation>,
}

impl PolyParser<'_> {
    fn parse_all(mut self) -> Result<StarPoly> {
        let p = self.expr()?;
        self.cur.expect_eof()?;
        Ok(p)
    }

    fn expr(&mut self) -> Result<StarPoly> {
        let negate = if self.cur.eat_punct('-') {
            true
        } else {
            self.cur.eat_punct('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.cur.eat_punct('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.cur.eat_punct('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<StarPoly> {
        let mut acc = self.factor()?;
        while self.cur.eat_punct('*') {
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<StarPoly> {
        let base = self.atom()?;
        if self.cur.eat_punct('^') {
            let e = self.cur.expect_nat()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<StarPoly> {
        let t = self.cur.peek().clone();
        match t.tok {
            Tok::Num(q) => {
                self.cur.next();
                Ok(StarPoly::constant(self.pres, CRational::real(q)))
            }
            Tok::Imag(q) => {
                self.cur.next();
                Ok(StarPoly::constant(
                    self.pres,
                    CRational::new(BigRational::from_integer(0.into()), q),
                ))
            }
            Tok::Punct('(') => {
                self.cur.next();
                let inner = self.expr()?;
                self.cur.expect_punct(')')?;
                Ok(inner)
            }
            Tok::Ident(ref id) if id == "adj" => {
                self.cur.next();
                if self.pres.mode() != Mode::Star {
                    return Err(lexer::syntax(
                        t.line,
                        t.column,
                        "`adj` is not available in algebra mode",
                    ));
                }
                self.cur.expect_punct('(')?;
                let inner = self.expr()?;
                self.cur.expect_punct(')')?;
                inner.involute()
            }
            Tok::Ident(id) => {
                self.cur.next();
                match self.pres.index_of(&id) {
                    Some(i) => StarPoly::generator(self.pres, i),
                    None => Err(Error::UnknownGenerator(id)),
                }
            }
            other => Err(self
                .cur
                .error(format!("expected a term, found {}", describe(&other)))),
        }
    }
}

/// Reads `name` or `adj(name)` and returns the generator index.
fn generator_ref(cur: &mut Cursor, pres: &Presentation) -> Result<usize> {
    let name = cur.expect_ident()?;
    let display = if name == "adj" {
        cur.expect_punct('(')?;
        let inner = cur.expect_ident()?;
        cur.expect_punct(')')?;
        format!("adj({inner})")
    } else {
        name
    };
    pres.index_of(&display)
        .ok_or(Error::UnknownGenerator(display))
}

/// `name = value` pairs separated by `;` or `,`, up to `close`.
fn assignments(
    cur: &mut Cursor,
    pres: &Presentation,
    close: Option<char>,
) -> Result<HashMap<usize, CRational>> {
    let mut out = HashMap::new();
    let at_end = |cur: &Cursor| match close {
        Some(c) => cur.at_punct(c),
        None => cur.at_eof(),
    };
    while !at_end(cur) {
        let g = generator_ref(cur, pres)?;
        cur.expect_punct('=')?;
        let v = scalar_expr(cur)?;
        if out.insert(g, v).is_some() {
            return Err(Error::InvalidArgument(format!(
                "generator `{}` assigned twice",
                pres.generators()[g].display_name()
            )));
        }
        if !(cur.eat_punct(';') || cur.eat_punct(',')) {
            break;
        }
    }
    if let Some(c) = close {
        cur.expect_punct(c)?;
    }
    Ok(out)
}

/// Fills in the values of `adj(g)` left out of an assignment by
/// conjugating `g`.
fn complete_assignment(
    pres: &Presentation,
    mut given: HashMap<usize, CRational>,
) -> Result<Vec<CRational>> {
    let mut vals: Vec<Option<CRational>> = Vec::with_capacity(pres.arity());
    for (i, g) in pres.generators().iter().enumerate() {
        match given.remove(&i) {
            Some(v) => vals.push(Some(v)),
            None if g.adjoint => vals.push(None),
            None => {
                return Err(Error::InvalidArgument(format!(
                    "missing value for generator `{}`",
                    g.display_name()
                )))
            }
        }
    }
    let conj: Vec<Option<CRational>> = (0..pres.arity())
        .map(|i| match (&vals[i], pres.partner(i)) {
            (None, Some(p)) => vals[p].as_ref().map(CRational::conj),
            _ => None,
        })
        .collect();
    Ok(vals
        .into_iter()
        .zip(conj)
        .map(|(v, c)| v.or(c).expect("adjoint partners are filled"))
        .collect())
}

/// `char { x = 2.5 ; z = (1+2i) }`; the `char` keyword and braces are
/// optional. Omitted `adj(g)` values default to the conjugate of `g`.
pub fn parse_character(text: &str, pres: &Arc<Presentation>) -> Result<Character> {
    let mut cur = Cursor::new(text)?;
    let braced = if cur.eat_keyword("char") {
        cur.expect_punct('{')?;
        true
    } else {
        cur.eat_punct('{')
    };
    let given = assignments(&mut cur, pres, braced.then_some('}'))?;
    cur.expect_eof()?;
    let vals = complete_assignment(pres, given)?;
    Character::new(pres, Values::Exact(vals))
}

fn interval(cur: &mut Cursor) -> Result<(f64, f64)> {
    cur.expect_punct('[')?;
    let lo = rat_to_f64(&real_expr(cur)?);
    cur.expect_punct(',')?;
    let hi = rat_to_f64(&real_expr(cur)?);
    cur.expect_punct(']')?;
    Ok((lo, hi))
}

/// `box { x in [-2, 3] ; re(z) in [-1, 1] ; im(z) in [-1, 1] }`. A bare
/// free generator `z in [a, b]` bounds both of its axes.
pub fn parse_box(text: &str, pres: &Arc<Presentation>) -> Result<CompactBox> {
    let mut cur = Cursor::new(text)?;
    cur.eat_keyword("box");
    cur.expect_punct('{')?;
    let axes = coordinate_axes(pres);
    let mut bounds: Vec<Option<(f64, f64)>> = vec![None; axes.len()];
    while !cur.at_punct('}') {
        let part = if cur.at_keyword("re") && cur.peek_at(1) == &Tok::Punct('(') {
            Some(Part::Re)
        } else if cur.at_keyword("im") && cur.peek_at(1) == &Tok::Punct('(') {
            Some(Part::Im)
        } else {
            None
        };
        let g = if part.is_some() {
            cur.next();
            cur.expect_punct('(')?;
            let g = generator_ref(&mut cur, pres)?;
            cur.expect_punct(')')?;
            g
        } else {
            generator_ref(&mut cur, pres)?
        };
        cur.expect_keyword("in")?;
        let iv = interval(&mut cur)?;
        let mut hit = false;
        for (k, (ag, ap)) in axes.iter().enumerate() {
            if *ag == g && part.is_none_or(|p| p == *ap) {
                bounds[k] = Some(iv);
                hit = true;
            }
        }
        if !hit {
            return Err(Error::InvalidArgument(format!(
                "`{}` is not a box coordinate",
                pres.generators()[g].display_name()
            )));
        }
        if !cur.eat_punct(';') {
            break;
        }
    }
    cur.expect_punct('}')?;
    cur.expect_eof()?;
    let bounds = bounds
        .into_iter()
        .enumerate()
        .map(|(k, b)| {
            b.ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "box is missing bounds for axis {}",
                    axis_label(pres, axes[k])
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    CompactBox::new(pres, bounds)
}

fn axis_label(pres: &Presentation, (g, part): (usize, Part)) -> String {
    let name = pres.generators()[g].display_name();
    match (pres.generators()[g].link, part) {
        (Link::SelfAdjoint, _) => name,
        (_, Part::Re) => format!("re({name})"),
        (_, Part::Im) => format!("im({name})"),
    }
}

/// ```text
/// state atomic [normalize] { (x=1): 1/2 ; (x=-1): 1/2 }
/// state gaussian | state gaussian(x, ...)
/// state density "uniform" on [0,1] [x [a,b] ...] order 16
/// ```
/// The leading `state` keyword is optional.
pub fn parse_state(text: &str, pres: &Arc<Presentation>) -> Result<StateSpec> {
    let mut cur = Cursor::new(text)?;
    cur.eat_keyword("state");
    let kind_at = cur.peek().clone();
    let kind = cur.expect_ident()?;
    let spec = match kind.as_str() {
        "atomic" => {
            let rescale = cur.eat_keyword("normalize");
            cur.expect_punct('{')?;
            let mut atoms = Vec::new();
            while !cur.at_punct('}') {
                cur.expect_punct('(')?;
                let given = assignments(&mut cur, pres, Some(')'))?;
                cur.expect_punct(':')?;
                let w = real_expr(&mut cur)?;
                let vals = complete_assignment(pres, given)?;
                atoms.push((Character::new(pres, Values::Exact(vals))?, w));
                if !cur.eat_punct(';') {
                    break;
                }
            }
            cur.expect_punct('}')?;
            StateSpec::Atomic { atoms, rescale }
        }
        "gaussian" => {
            if cur.eat_punct('(') {
                let mut named = Vec::new();
                while !cur.at_punct(')') {
                    named.push(generator_ref(&mut cur, pres)?);
                    if !cur.eat_punct(',') {
                        break;
                    }
                }
                cur.expect_punct(')')?;
                let mut expected: Vec<usize> = (0..pres.arity())
                    .filter(|&i| !pres.generators()[i].adjoint)
                    .collect();
                named.sort_unstable();
                expected.sort_unstable();
                if named != expected {
                    return Err(Error::InvalidArgument(
                        "gaussian(...) must list every generator of the presentation".into(),
                    ));
                }
            }
            StateSpec::Gaussian
        }
        "density" => {
            let name_at = cur.peek().clone();
            let density = match &name_at.tok {
                Tok::Str(s) | Tok::Ident(s) => {
                    let d = Density::from_name(s).ok_or_else(|| {
                        lexer::syntax(
                            name_at.line,
                            name_at.column,
                            format!("unknown density `{s}`"),
                        )
                    })?;
                    cur.next();
                    d
                }
                t => return Err(cur.error(format!("expected density name, found {}", describe(t)))),
            };
            cur.expect_keyword("on")?;
            let mut bounds = vec![interval(&mut cur)?];
            while cur.eat_keyword("x") || cur.eat_punct('x') {
                bounds.push(interval(&mut cur)?);
            }
            cur.expect_keyword("order")?;
            let order = cur.expect_nat()? as usize;
            let region = CompactBox::new(pres, bounds)?;
            StateSpec::Density {
                density,
                region,
                order,
            }
        }
        other => {
            return Err(lexer::syntax(
                kind_at.line,
                kind_at.column,
                format!("unknown state kind `{other}`"),
            ))
        }
    };
    cur.expect_eof()?;
    Ok(spec)
}

/// `morphism { x = x^2 + 1 ; }` with source generators on the left and
/// target polynomials on the right. Omitted `adj(g)` images default to the
/// involute of the image of `g`.
pub fn parse_morphism(
    text: &str,
    source: &Arc<Presentation>,
    target: &Arc<Presentation>,
    star: bool,
) -> Result<Morphism> {
    let mut cur = Cursor::new(text)?;
    cur.eat_keyword("morphism");
    let braced = cur.eat_punct('{');
    let mut images: Vec<Option<StarPoly>> = vec![None; source.arity()];
    while !(cur.at_eof() || (braced && cur.at_punct('}'))) {
        let g = generator_ref(&mut cur, source)?;
        cur.expect_punct('=')?;
        let p = PolyParser {
            cur: &mut cur,
            pres: target,
        }
        .expr()?;
        if images[g].replace(p).is_some() {
            return Err(Error::InvalidArgument(format!(
                "image of `{}` given twice",
                source.generators()[g].display_name()
            )));
        }
        if !(cur.eat_punct(';') || cur.eat_punct(',')) {
            break;
        }
    }
    if braced {
        cur.expect_punct('}')?;
    }
    cur.expect_eof()?;
    for i in 0..source.arity() {
        if images[i].is_none() && source.generators()[i].adjoint {
            let p = source.partner(i).expect("adjoint has a partner");
            if let Some(img) = &images[p] {
                images[i] = Some(img.involute()?);
            }
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| {
            img.ok_or_else(|| {
                Error::InvalidMorphism(format!(
                    "no image given for `{}`",
                    source.generators()[i].display_name()
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(Arc::clone(source), Arc::clone(target), images, star)
}
