//! The line-oriented text format for presentations and relation lists.
//!
//! ```text
//! # comment
//! name: U
//! generators: x:1 y:1
//! order: deglex x < y
//! relator: x^3*y - 3*x^2*y*x + 3*x*y*x^2 - y*x^3
//! ```
//!
//! A polynomial is a signed sum of terms `c*w`, where `c` is an integer or a
//! fraction `p/q` and `w` is a `*`-separated product of generator names with
//! optional `^k` powers. A relator may also be written `lhs = rhs`. The order
//! line lists every generator once, in increasing precedence; when it is
//! absent the order is deglex with the generators in listed order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::alphabet::{Alphabet, Generator};
use crate::error::ParseError;
use crate::order::{MonomialOrder, OrderKind};
use crate::poly::{NcPoly, Scalar};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    name: Option<String>,
    order: MonomialOrder,
    relators: Vec<NcPoly>,
}

impl Presentation {
    pub fn new(name: Option<String>, order: MonomialOrder, relators: Vec<NcPoly>) -> Self {
        Presentation {
            name,
            order,
            relators,
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.order.alphabet()
    }

    pub fn relators(&self) -> &[NcPoly] {
        &self.relators
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name: {name}")?;
        }
        let gens = self.alphabet().generators();
        let listed: Vec<String> = gens.iter().map(|g| format!("{}:{}", g.name(), g.degree())).collect();
        writeln!(f, "generators: {}", listed.join(" "))?;
        let names: Vec<&str> = gens.iter().map(Generator::name).collect();
        writeln!(f, "order: {} {}", self.order.kind(), names.join(" < "))?;
        for r in &self.relators {
            writeln!(f, "relator: {}", r.display(self.alphabet(), Some(&self.order)))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub presentation: Presentation,
    pub warnings: Vec<ParseWarning>,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(is_ident_start) && cs.all(is_ident_char)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Splits `key: rest`, returning the key and the 0-based char offset of rest.
fn split_key(line: &str) -> Option<(&str, &str, usize)> {
    let colon = line.find(':')?;
    let key = line[..colon].trim();
    let rest = &line[colon + 1..];
    Some((key, rest, line[..colon + 1].chars().count()))
}

pub fn parse_presentation(text: &str) -> Result<Parsed, ParseError> {
    let mut name = None;
    let mut generators: Option<(Vec<Generator>, usize)> = None;
    let mut order: Option<MonomialOrder> = None;
    let mut relators = Vec::new();
    let mut warnings = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: String| ParseError {
            line: line_no,
            column,
            message,
        };
        let (key, rest, offset) =
            split_key(line).ok_or_else(|| err(1, "expected `key: value`".into()))?;
        match key {
            "name" => {
                if name.is_some() {
                    return Err(err(1, "duplicate name line".into()));
                }
                let value = rest.trim();
                if value.is_empty() {
                    return Err(err(offset + 1, "empty name".into()));
                }
                name = Some(value.to_string());
            }
            "generators" => {
                if generators.is_some() {
                    return Err(err(1, "duplicate generators line".into()));
                }
                let mut gens = Vec::new();
                for (col, tok) in tokens_with_columns(rest) {
                    let column = offset + col;
                    let (gname, degree) = match tok.split_once(':') {
                        Some((n, d)) => {
                            let degree = d
                                .parse::<u32>()
                                .map_err(|_| err(column, format!("bad degree in `{tok}`")))?;
                            (n, degree)
                        }
                        None => (tok, 1),
                    };
                    if !valid_name(gname) {
                        return Err(err(column, format!("bad generator name `{gname}`")));
                    }
                    let g = Generator::new(gname, degree).map_err(|e| err(column, e.to_string()))?;
                    gens.push(g);
                }
                if gens.is_empty() {
                    return Err(err(offset + 1, "no generators listed".into()));
                }
                Alphabet::new(gens.clone()).map_err(|e| err(offset + 1, e.to_string()))?;
                generators = Some((gens, line_no));
            }
            "order" => {
                let Some((gens, _)) = &generators else {
                    return Err(err(1, "order line before generators line".into()));
                };
                if order.is_some() {
                    return Err(err(1, "duplicate order line".into()));
                }
                order = Some(parse_order_line(rest, offset, gens).map_err(|(c, m)| err(c, m))?);
            }
            "relator" => {
                let Some((gens, _)) = &generators else {
                    return Err(err(1, "relator line before generators line".into()));
                };
                if order.is_none() {
                    let alphabet = Alphabet::new(gens.clone()).expect("checked above");
                    order = Some(MonomialOrder::deglex(alphabet));
                }
                let alphabet = order.as_ref().expect("set above").alphabet();
                let p = parse_relation(rest, alphabet).map_err(|(c, m)| err(offset + c, m))?;
                if p.is_zero() {
                    warnings.push(ParseWarning {
                        line: line_no,
                        message: "relator is zero and was dropped".into(),
                    });
                } else {
                    relators.push(p);
                }
            }
            other => return Err(err(1, format!("unknown key `{other}`"))),
        }
    }
    let (gens, _) = generators.ok_or(ParseError {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing generators line".into(),
    })?;
    let order = match order {
        Some(o) => o,
        None => MonomialOrder::deglex(Alphabet::new(gens).expect("checked above")),
    };
    Ok(Parsed {
        presentation: Presentation::new(name, order, relators),
        warnings,
    })
}

/// Whitespace-separated tokens with their 1-based char columns.
fn tokens_with_columns(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut char_col = 0;
    let mut start_col = 0;
    for (byte, c) in s.char_indices() {
        char_col += 1;
        if c.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((start_col, &s[b..byte]));
            }
        } else if start.is_none() {
            start = Some(byte);
            start_col = char_col;
        }
    }
    if let Some(b) = start {
        out.push((start_col, &s[b..]));
    }
    out
}

fn parse_order_line(rest: &str, offset: usize, gens: &[Generator]) -> Result<MonomialOrder, (usize, String)> {
    let toks = tokens_with_columns(rest);
    let Some(&(kcol, kind)) = toks.first() else {
        return Err((offset + 1, "expected `deglex` or `shortlex`".into()));
    };
    let kind: OrderKind = kind.parse().map_err(|_| (offset + kcol, format!("unknown order `{kind}`")))?;
    let mut names = Vec::new();
    let mut expect_name = true;
    for &(col, tok) in &toks[1..] {
        // allow `x<y` without spaces
        for (j, piece) in tok.split('<').enumerate() {
            if j > 0 {
                if expect_name {
                    return Err((offset + col, "expected a generator before `<`".into()));
                }
                expect_name = true;
            }
            if piece.is_empty() {
                continue;
            }
            if !expect_name {
                return Err((offset + col, format!("expected `<` before `{piece}`")));
            }
            names.push((col, piece));
            expect_name = false;
        }
    }
    if expect_name && !names.is_empty() {
        return Err((offset + rest.chars().count(), "dangling `<`".into()));
    }
    let mut ordered = Vec::new();
    for &(col, n) in &names {
        let g = gens
            .iter()
            .find(|g| g.name() == n)
            .ok_or_else(|| (offset + col, format!("unknown generator `{n}`")))?;
        if ordered.iter().any(|h: &Generator| h.name() == n) {
            return Err((offset + col, format!("generator `{n}` listed twice")));
        }
        ordered.push(g.clone());
    }
    if names.is_empty() {
        ordered = gens.to_vec();
    } else if ordered.len() != gens.len() {
        return Err((offset + 1, "order must list every generator exactly once".into()));
    }
    let alphabet = Alphabet::new(ordered).map_err(|e| (offset + 1, e.to_string()))?;
    Ok(MonomialOrder::new(kind, alphabet))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, (usize, String)> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((col, Tok::Num(digits.parse().expect("ascii digits"))));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^=".contains(c) {
            out.push((col, Tok::Sym(c)));
            i += 1;
        } else {
            return Err((col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct PolyParser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    alphabet: &'a Alphabet,
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, (usize, String)> {
        Err((self.col(), msg.into()))
    }

    fn number(&mut self) -> Option<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                Some(n)
            }
            _ => None,
        }
    }

    fn poly(&mut self) -> Result<NcPoly, (usize, String)> {
        let mut p = NcPoly::zero();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            let (w, c) = self.term()?;
            p.add_term(w, if negative { -c } else { c });
            first = false;
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Word, Scalar), (usize, String)> {
        let mut coeff = Scalar::one();
        if let Some(n) = self.number() {
            coeff = Scalar::from_integer(n);
            if self.eat('/') {
                let col = self.col();
                let Some(d) = self.number() else {
                    return self.fail("expected a denominator");
                };
                if d.is_zero() {
                    return Err((col, "zero denominator".into()));
                }
                coeff /= Scalar::from_integer(d);
            }
            if !self.eat('*') {
                return Ok((Word::empty(), coeff));
            }
        }
        let mut letters = Vec::new();
        loop {
            let col = self.col();
            let Some(Tok::Ident(name)) = self.peek().cloned() else {
                return self.fail("expected a generator name");
            };
            self.pos += 1;
            let letter = self
                .alphabet
                .letter(&name)
                .ok_or_else(|| (col, format!("unknown generator `{name}`")))?;
            let mut power = 1usize;
            if self.eat('^') {
                let Some(k) = self.number() else {
                    return self.fail("expected an exponent");
                };
                power = k
                    .try_into()
                    .ok()
                    .filter(|&k: &usize| k <= 1 << 16)
                    .ok_or_else(|| (col, "exponent too large".to_string()))?;
            }
            letters.extend(std::iter::repeat_n(letter, power));
            if !self.eat('*') {
                break;
            }
        }
        let w = self.alphabet.word(letters).map_err(|e| (self.col(), e.to_string()))?;
        Ok((w, coeff))
    }
}

/// Parses a polynomial. Errors carry a 1-based char column within `text`.
pub fn parse_poly(text: &str, alphabet: &Alphabet) -> Result<NcPoly, (usize, String)> {
    let mut parser = PolyParser {
        toks: lex(text)?,
        pos: 0,
        end: text.chars().count() + 1,
        alphabet,
    };
    let p = parser.poly()?;
    if parser.pos != parser.toks.len() {
        return parser.fail("unexpected token");
    }
    Ok(p)
}

/// Parses a polynomial or an equation `lhs = rhs`, returning `lhs − rhs`.
pub fn parse_relation(text: &str, alphabet: &Alphabet) -> Result<NcPoly, (usize, String)> {
    match text.find('=') {
        None => parse_poly(text, alphabet),
        Some(eq) => {
            let shift = text[..eq + 1].chars().count();
            let lhs = parse_poly(&text[..eq], alphabet)?;
            let rhs = parse_poly(&text[eq + 1..], alphabet).map_err(|(c, m)| (c + shift, m))?;
            Ok(&lhs - &rhs)
        }
    }
}

/// One line of a relation list `name: lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListedRelation {
    pub line: usize,
    pub name: String,
    pub text: String,
    pub relation: Result<NcPoly, ParseError>,
}

/// Parses a relation list line by line. A malformed line yields an error
/// entry and does not stop the parse.
pub fn parse_relation_list(text: &str, alphabet: &Alphabet) -> Vec<ListedRelation> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let line_no = i + 1;
        let (name, body, offset) = match split_key(line) {
            Some((k, rest, offset)) => (k.to_string(), rest, offset),
            None => (format!("line {line_no}"), line, 0),
        };
        let relation = parse_relation(body, alphabet).map_err(|(c, m)| ParseError {
            line: line_no,
            column: offset + c,
            message: m,
        });
        out.push(ListedRelation {
            line: line_no,
            name,
            text: body.trim().to_string(),
            relation,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use proptest::prelude::*;

    const U_TEXT: &str = "\
# the enveloping algebra
name: U
generators: x:1 y:1
order: deglex x < y
relator: x^3*y - 3*x^2*y*x + 3*x*y*x^2 - y*x^3
relator: y^3*x - 3*y^2*x*y + 3*y*x*y^2 - x*y^3
";

    #[test]
    fn parses_the_first_relator() {
        let parsed = parse_presentation(U_TEXT).unwrap();
        let p = parsed.presentation;
        let a = p.alphabet();
        let f1: NcPoly = [(1, "xxxy"), (-3, "xxyx"), (3, "xyxx"), (-1, "yxxx")]
            .iter()
            .map(|&(c, w)| (a.parse_compact(w).unwrap(), int(c)))
            .collect();
        assert_eq!(p.relators()[0], f1);
        assert_eq!(p.name(), Some("U"));
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn parses_the_monoid_relators_with_shortlex() {
        let text = "generators: a:1 b:1 c:1\norder: shortlex a < b < c\n\
                    relator: b^2*a = a*b^2\nrelator: b^2*c = a*c*a\nrelator: a*c*c = 0\n\
                    relator: a*b*a\nrelator: a*b*c\nrelator: c*b*a\nrelator: c*b*c\n";
        let p = parse_presentation(text).unwrap().presentation;
        assert_eq!(p.order().kind(), OrderKind::Shortlex);
        assert_eq!(p.relators().len(), 7);
        let a = p.alphabet();
        assert_eq!(
            p.relators()[0],
            &NcPoly::word(a.parse_compact("bba").unwrap()) - &NcPoly::word(a.parse_compact("abb").unwrap())
        );
    }

    #[test]
    fn error_positions() {
        let e = parse_presentation("generators:\n").unwrap_err();
        assert_eq!((e.line, e.message.as_str()), (1, "no generators listed"));
        let e = parse_presentation("generators: x y\nrelator: x*z\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        assert!(e.message.contains("unknown generator"));
        let e = parse_presentation("generators: x\nrelator: 2/0*x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
        let e = parse_presentation("relator: x\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_presentation("generators: x y\norder: deglex x\n").unwrap_err();
        assert!(e.message.contains("every generator"));
        let e = parse_presentation("generators: x:0\n").unwrap_err();
        assert_eq!(e.column, 13);
        assert!(parse_presentation("generators: x\nrelator: x +\n").is_err());
        assert!(parse_presentation("generators: x\nrelator: x x\n").is_err());
    }

    #[test]
    fn zero_relator_warns() {
        let parsed = parse_presentation("generators: x y\nrelator: x*y - x*y\n").unwrap();
        assert!(parsed.presentation.relators().is_empty());
        assert_eq!(parsed.warnings.len(), 1);
        assert_eq!(parsed.warnings[0].line, 2);
    }

    #[test]
    fn order_line_sets_precedence() {
        let p = parse_presentation("generators: x y\norder: deglex y<x\n").unwrap().presentation;
        assert_eq!(p.alphabet().letter("y"), Some(0));
        assert_eq!(p.to_string(), "generators: y:1 x:1\norder: deglex y < x\n");
    }

    #[test]
    fn relation_lists_continue_past_errors() {
        let a = Alphabet::uniform(&["X1", "X2"]).unwrap();
        let list = parse_relation_list("1: X1*X2 = 2*X2^2\n# note\n2: X1*X3 = 0\n3: 1/2*X1\n", &a);
        assert_eq!(list.len(), 3);
        assert!(list[0].relation.is_ok());
        let err = list[1].relation.as_ref().unwrap_err();
        assert_eq!((err.line, err.column), (3, 7));
        assert_eq!(list[2].name, "3");
        assert_eq!(list[2].text, "1/2*X1");
    }

    #[test]
    fn round_trip_of_u() {
        let p = parse_presentation(U_TEXT).unwrap().presentation;
        assert_eq!(parse_presentation(&p.to_string()).unwrap().presentation, p);
    }

    fn arb_presentation() -> impl Strategy<Value = Presentation> {
        let gens = proptest::collection::vec(("[a-z][a-z0-9_]{0,3}", 1u32..4), 1..5);
        (gens, any::<bool>(), proptest::option::of("[A-Za-z][A-Za-z0-9 ]{0,8}[A-Za-z0-9]"))
            .prop_flat_map(|(gens, shortlex, name)| {
                let mut seen = std::collections::HashSet::new();
                let gens: Vec<(String, u32)> = gens.into_iter().filter(|(n, _)| seen.insert(n.clone())).collect();
                let n = gens.len() as u16;
                let term = (proptest::collection::vec(0..n, 0..5), -20i64..20, 1i64..5);
                let relators = proptest::collection::vec(proptest::collection::vec(term, 1..4), 0..4);
                (Just(gens), Just(shortlex), Just(name), relators)
            })
            .prop_map(|(gens, shortlex, name, relators)| {
                let alphabet = Alphabet::weighted(&gens).unwrap();
                let kind = if shortlex { OrderKind::Shortlex } else { OrderKind::Deglex };
                let relators = relators
                    .into_iter()
                    .map(|terms| {
                        terms
                            .into_iter()
                            .map(|(w, p, q)| (alphabet.word(w).unwrap(), Scalar::new(p.into(), q.into())))
                            .collect::<NcPoly>()
                    })
                    .filter(|p| !p.is_zero())
                    .collect();
                Presentation::new(name, MonomialOrder::new(kind, alphabet), relators)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn print_then_parse_is_identity(p in arb_presentation()) {
            let text = p.to_string();
            let back = parse_presentation(&text).unwrap();
            prop_assert_eq!(back.presentation, p);
        }
    }
}
