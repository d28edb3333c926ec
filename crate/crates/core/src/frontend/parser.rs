//! Recursive-descent parsers. Precedence, loosest first: `<->`, `->`
//! (right-associative), `|`, `&`, then unary operators and binders.

use std::collections::BTreeSet;

use super::lexer::{lex, Tok};
use crate::error::{ParseError, SourceSpan};
use crate::formula::{AdqbfInstance, Block, BlockKind, FuncSymbol, ModalFormula, PropFormula, PropVar, QuantVar, So2Formula, TeamFormula};
use crate::table::MAX_ARITY;

type PResult<T> = std::result::Result<T, ParseError>;

pub(crate) struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    end: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> PResult<Self> {
        Ok(Parser { toks: lex(text)?, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    fn span(&self) -> SourceSpan {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(SourceSpan::point(self.end))
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].1.end
        }
    }

    fn bump(&mut self) -> Option<(Tok, SourceSpan)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::syntax(self.span(), format!("expected {wanted}, found {}", t.describe())),
            None => ParseError::syntax(self.span(), format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, t: &Tok) -> PResult<SourceSpan> {
        let span = self.span();
        if self.eat(t) {
            Ok(span)
        } else {
            Err(self.unexpected(&t.describe()))
        }
    }

    fn name(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let n = n.clone();
                let span = self.span();
                self.pos += 1;
                Ok((n, span))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub(crate) fn finish(&self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn is_name(&self, k: usize, s: &str) -> bool {
        matches!(self.peek_at(k), Some(Tok::Name(n)) if n == s)
    }

    fn at_binder(&self, letters: &[&str]) -> bool {
        letters.iter().any(|l| self.is_name(0, l)) && matches!(self.peek_at(1), Some(Tok::Name(_)))
    }

    fn names_until(&mut self, stop: &[Tok]) -> PResult<Vec<(String, SourceSpan)>> {
        let mut out = Vec::new();
        while !self.peek().is_some_and(|t| stop.contains(t)) {
            if !out.is_empty() {
                self.eat(&Tok::Comma);
            }
            out.push(self.name("a variable")?);
        }
        Ok(out)
    }
}

/// One concrete syntax: its unary level and how binary connectives build.
trait Syntax {
    type F;
    fn unary(&mut self, p: &mut Parser) -> PResult<Self::F>;
    fn and(&self, a: Self::F, b: Self::F) -> Self::F;
    fn or(&self, a: Self::F, b: Self::F) -> Self::F;
    fn implies(&self, _a: Self::F, _b: Self::F, at: SourceSpan) -> PResult<Self::F> {
        Err(ParseError::syntax(at, "`->` is not available in this logic"))
    }
    fn iff(&self, _a: Self::F, _b: Self::F, at: SourceSpan) -> PResult<Self::F> {
        Err(ParseError::syntax(at, "`<->` is not available in this logic"))
    }
}

fn formula<S: Syntax>(p: &mut Parser, s: &mut S) -> PResult<S::F> {
    let mut a = implication(p, s)?;
    loop {
        let at = p.span();
        if !p.eat(&Tok::Iff) {
            return Ok(a);
        }
        let b = implication(p, s)?;
        a = s.iff(a, b, at)?;
    }
}

fn implication<S: Syntax>(p: &mut Parser, s: &mut S) -> PResult<S::F> {
    let a = disjunction(p, s)?;
    let at = p.span();
    if p.eat(&Tok::Arrow) {
        let b = implication(p, s)?;
        s.implies(a, b, at)
    } else {
        Ok(a)
    }
}

fn disjunction<S: Syntax>(p: &mut Parser, s: &mut S) -> PResult<S::F> {
    let mut a = conjunction(p, s)?;
    while p.eat(&Tok::Bar) {
        let b = conjunction(p, s)?;
        a = s.or(a, b);
    }
    Ok(a)
}

fn conjunction<S: Syntax>(p: &mut Parser, s: &mut S) -> PResult<S::F> {
    let mut a = s.unary(p)?;
    while p.eat(&Tok::Amp) {
        let b = s.unary(p)?;
        a = s.and(a, b);
    }
    Ok(a)
}

fn parenthesized<S: Syntax>(p: &mut Parser, s: &mut S) -> PResult<S::F> {
    p.expect(&Tok::LParen)?;
    let f = formula(p, s)?;
    p.expect(&Tok::RParen)?;
    Ok(f)
}

fn whole<S: Syntax>(text: &str, s: &mut S) -> PResult<S::F> {
    let mut p = Parser::new(text)?;
    let f = formula(&mut p, s)?;
    p.finish()?;
    Ok(f)
}

// ---- SO₂ ----

#[derive(Default)]
struct So2Syntax {
    scope: Vec<FuncSymbol>,
}

impl So2Syntax {
    fn check_use(&self, name: &str, arity: usize, span: SourceSpan) -> PResult<()> {
        match self.scope.iter().rev().find(|f| f.name() == name) {
            Some(f) if f.arity() != arity => {
                Err(ParseError::arity(span, format!("`{name}` is bound with arity {} but used with {arity} arguments", f.arity())))
            }
            _ => Ok(()),
        }
    }
}

impl Syntax for So2Syntax {
    type F = So2Formula;

    fn unary(&mut self, p: &mut Parser) -> PResult<So2Formula> {
        if p.eat(&Tok::Minus) {
            return Ok(So2Formula::not(self.unary(p)?));
        }
        if p.at_binder(&["E", "A"]) {
            let (q, _) = p.name("a quantifier")?;
            let (name, _) = p.name("a bound symbol")?;
            let mut arity = 0;
            if p.eat(&Tok::Slash) {
                let (k, kspan) = p.name("an arity")?;
                arity = k.parse().map_err(|_| ParseError::syntax(kspan, format!("`{k}` is not an arity")))?;
                if arity > MAX_ARITY {
                    return Err(ParseError::arity(kspan, format!("arity {arity} exceeds the maximum {MAX_ARITY}")));
                }
            }
            p.expect(&Tok::Dot)?;
            let f = FuncSymbol::new(&name, arity);
            self.scope.push(f.clone());
            let body = self.unary(p);
            self.scope.pop();
            let body = body?;
            return Ok(if q == "E" { So2Formula::exists(f, body) } else { So2Formula::forall(f, body) });
        }
        if p.peek() == Some(&Tok::LParen) {
            return parenthesized(p, self);
        }
        let (name, span) = p.name("a formula")?;
        let mut args = Vec::new();
        if p.eat(&Tok::LParen) {
            if !p.eat(&Tok::RParen) {
                loop {
                    args.push(formula(p, self)?);
                    if p.eat(&Tok::RParen) {
                        break;
                    }
                    p.expect(&Tok::Comma)?;
                }
            }
        }
        let span = SourceSpan::new(span.begin, p.prev_end());
        if args.len() > MAX_ARITY {
            return Err(ParseError::arity(span, format!("{} arguments exceed the maximum arity {MAX_ARITY}", args.len())));
        }
        self.check_use(&name, args.len(), span)?;
        Ok(So2Formula::apply(FuncSymbol::new(name, args.len()), args))
    }

    fn and(&self, a: So2Formula, b: So2Formula) -> So2Formula {
        So2Formula::and(a, b)
    }

    fn or(&self, a: So2Formula, b: So2Formula) -> So2Formula {
        So2Formula::or(a, b)
    }

    fn implies(&self, a: So2Formula, b: So2Formula, _: SourceSpan) -> PResult<So2Formula> {
        Ok(So2Formula::implies(a, b))
    }

    fn iff(&self, a: So2Formula, b: So2Formula, _: SourceSpan) -> PResult<So2Formula> {
        Ok(So2Formula::iff(a, b))
    }
}

pub fn parse_so2(text: &str) -> PResult<So2Formula> {
    whole(text, &mut So2Syntax::default())
}

// ---- classical propositional ----

struct PropSyntax;

impl Syntax for PropSyntax {
    type F = PropFormula;

    fn unary(&mut self, p: &mut Parser) -> PResult<PropFormula> {
        if p.eat(&Tok::Minus) {
            if let Some(Tok::Name(_)) = p.peek() {
                let (n, _) = p.name("a variable")?;
                return Ok(PropFormula::neg(PropVar::new(n)));
            }
            return Ok(PropFormula::not(self.unary(p)?));
        }
        if p.peek() == Some(&Tok::LParen) {
            return parenthesized(p, self);
        }
        let (n, _) = p.name("a formula")?;
        Ok(PropFormula::pos(PropVar::new(n)))
    }

    fn and(&self, a: PropFormula, b: PropFormula) -> PropFormula {
        PropFormula::and(a, b)
    }

    fn or(&self, a: PropFormula, b: PropFormula) -> PropFormula {
        PropFormula::or(a, b)
    }

    fn implies(&self, a: PropFormula, b: PropFormula, _: SourceSpan) -> PResult<PropFormula> {
        Ok(PropFormula::implies(a, b))
    }

    fn iff(&self, a: PropFormula, b: PropFormula, _: SourceSpan) -> PResult<PropFormula> {
        Ok(PropFormula::iff(a, b))
    }
}

pub fn parse_prop(text: &str) -> PResult<PropFormula> {
    whole(text, &mut PropSyntax)
}

// ---- atoms shared by team and modal syntax ----

fn var_list(p: &mut Parser, stop: &[Tok]) -> PResult<Vec<PropVar>> {
    Ok(p.names_until(stop)?.into_iter().map(|(n, _)| PropVar::new(n)).collect())
}

/// `inc(p̄ ; q̄)`, or `inc(p̄ q̄)` split in half. The name is consumed.
fn inc_atom(p: &mut Parser, start: SourceSpan) -> PResult<(Vec<PropVar>, Vec<PropVar>)> {
    p.expect(&Tok::LParen)?;
    let lhs = var_list(p, &[Tok::Semi, Tok::RParen])?;
    let (lhs, rhs) = if p.eat(&Tok::Semi) {
        (lhs, var_list(p, &[Tok::RParen])?)
    } else if lhs.len() % 2 == 0 {
        let rhs = lhs[lhs.len() / 2..].to_vec();
        (lhs[..lhs.len() / 2].to_vec(), rhs)
    } else {
        return Err(ParseError::arity(SourceSpan::new(start.begin, p.span().end), "inclusion atom sides differ in length"));
    };
    p.expect(&Tok::RParen)?;
    if lhs.len() != rhs.len() {
        return Err(ParseError::arity(SourceSpan::new(start.begin, p.prev_end()), "inclusion atom sides differ in length"));
    }
    Ok((lhs, rhs))
}

// ---- team logic ----

struct TeamSyntax;

impl Syntax for TeamSyntax {
    type F = TeamFormula;

    fn unary(&mut self, p: &mut Parser) -> PResult<TeamFormula> {
        if p.eat(&Tok::Tilde) {
            return Ok(TeamFormula::tilde(self.unary(p)?));
        }
        if p.eat(&Tok::Minus) {
            let (n, _) = p.name("a variable after `-`")?;
            return Ok(TeamFormula::neg(PropVar::new(n)));
        }
        if p.at_binder(&["E", "A", "U"]) {
            let (q, _) = p.name("a quantifier")?;
            let (v, _) = p.name("a variable")?;
            p.expect(&Tok::Dot)?;
            let body = self.unary(p)?;
            let v = PropVar::new(v);
            return Ok(match q.as_str() {
                "E" => TeamFormula::exists(v, body),
                "A" => TeamFormula::forall(v, body),
                _ => TeamFormula::union(v, body),
            });
        }
        if p.peek() == Some(&Tok::LParen) {
            return parenthesized(p, self);
        }
        let start = p.span();
        if p.is_name(0, "dep") && p.peek_at(1) == Some(&Tok::LParen) {
            p.bump();
            p.expect(&Tok::LParen)?;
            let mut ante = var_list(p, &[Tok::Semi, Tok::RParen])?;
            let q = if p.eat(&Tok::Semi) {
                let (q, _) = p.name("the consequent")?;
                PropVar::new(q)
            } else {
                ante.pop().ok_or_else(|| ParseError::arity(SourceSpan::new(start.begin, p.span().end), "dependence atom without variables"))?
            };
            p.expect(&Tok::RParen)?;
            return Ok(TeamFormula::dep(ante, q));
        }
        if p.is_name(0, "inc") && p.peek_at(1) == Some(&Tok::LParen) {
            p.bump();
            let (l, r) = inc_atom(p, start)?;
            return Ok(TeamFormula::inc(l, r));
        }
        if p.is_name(0, "gda") && p.peek_at(1) == Some(&Tok::Colon) {
            p.bump();
            p.bump();
            let (name, _) = p.name("an atom name")?;
            p.expect(&Tok::LParen)?;
            let args = var_list(p, &[Tok::RParen])?;
            p.expect(&Tok::RParen)?;
            return Ok(TeamFormula::gda(name, args));
        }
        let (n, _) = p.name("a formula")?;
        Ok(TeamFormula::pos(PropVar::new(n)))
    }

    fn and(&self, a: TeamFormula, b: TeamFormula) -> TeamFormula {
        TeamFormula::and(a, b)
    }

    fn or(&self, a: TeamFormula, b: TeamFormula) -> TeamFormula {
        TeamFormula::or(a, b)
    }
}

pub fn parse_team(text: &str) -> PResult<TeamFormula> {
    whole(text, &mut TeamSyntax)
}

// ---- modal inclusion logic ----

struct ModalSyntax;

impl Syntax for ModalSyntax {
    type F = ModalFormula;

    fn unary(&mut self, p: &mut Parser) -> PResult<ModalFormula> {
        if p.eat(&Tok::Diamond) {
            return Ok(ModalFormula::diamond(self.unary(p)?));
        }
        if p.eat(&Tok::Boxed) {
            return Ok(ModalFormula::boxed(self.unary(p)?));
        }
        if p.eat(&Tok::Minus) {
            let (n, _) = p.name("a variable after `-`")?;
            return Ok(ModalFormula::neg(PropVar::new(n)));
        }
        if p.peek() == Some(&Tok::LParen) {
            return parenthesized(p, self);
        }
        let start = p.span();
        if p.is_name(0, "inc") && p.peek_at(1) == Some(&Tok::LParen) {
            p.bump();
            let (l, r) = inc_atom(p, start)?;
            return Ok(ModalFormula::inc(l, r));
        }
        let (n, _) = p.name("a formula")?;
        Ok(ModalFormula::pos(PropVar::new(n)))
    }

    fn and(&self, a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::and(a, b)
    }

    fn or(&self, a: ModalFormula, b: ModalFormula) -> ModalFormula {
        ModalFormula::or(a, b)
    }
}

pub fn parse_modal(text: &str) -> PResult<ModalFormula> {
    whole(text, &mut ModalSyntax)
}

// ---- ADQBF instances ----

/// `A p̄ ; K v{deps} … ; matrix`. A kind letter `E` or `U` opens a block;
/// consecutive letters of the same kind extend the block.
pub fn parse_adqbf(text: &str) -> PResult<AdqbfInstance> {
    let mut p = Parser::new(text)?;
    let start = p.span();
    if !p.is_name(0, "A") {
        return Err(p.unexpected("`A` opening the universal prefix"));
    }
    p.bump();
    let mut seen = BTreeSet::new();
    let mut universals = Vec::new();
    for (n, span) in p.names_until(&[Tok::Semi])? {
        if !seen.insert(n.clone()) {
            return Err(ParseError::duplicate(span, n));
        }
        universals.push(PropVar::new(n));
    }
    p.expect(&Tok::Semi)?;
    let mut blocks: Vec<Block> = Vec::new();
    while p.peek() != Some(&Tok::Semi) {
        let (n, span) = p.name("a block letter or variable")?;
        if (n == "E" || n == "U") && p.peek() != Some(&Tok::LBrace) {
            let kind = if n == "E" { BlockKind::Exists } else { BlockKind::Union };
            if blocks.last().map(|b| b.kind) != Some(kind) {
                blocks.push(Block { kind, vars: Vec::new() });
            }
            continue;
        }
        let block = blocks.last_mut().ok_or_else(|| ParseError::syntax(span, "a block variable needs a preceding `E` or `U`"))?;
        if !seen.insert(n.clone()) {
            return Err(ParseError::duplicate(span, n));
        }
        let mut deps = Vec::new();
        if p.eat(&Tok::LBrace) {
            for (d, dspan) in p.names_until(&[Tok::RBrace])? {
                let d = PropVar::new(d);
                if !universals.contains(&d) {
                    return Err(ParseError::syntax(dspan, format!("dependency `{d}` is not a universal variable")));
                }
                deps.push(d);
            }
            p.expect(&Tok::RBrace)?;
        }
        block.vars.push(QuantVar { var: PropVar::new(n), deps });
        p.eat(&Tok::Comma);
    }
    p.expect(&Tok::Semi)?;
    let mstart = p.span();
    let matrix = formula(&mut p, &mut PropSyntax)?;
    p.finish()?;
    let mspan = SourceSpan::new(mstart.begin, p.prev_end());
    if let Some(v) = matrix.vars().into_iter().find(|v| !seen.contains(v.name())) {
        return Err(ParseError::syntax(mspan, format!("matrix variable `{v}` is not quantified")));
    }
    AdqbfInstance::new(universals, blocks, matrix)
        .map_err(|e| ParseError::syntax(SourceSpan::new(start.begin, p.prev_end()), e.to_string()))
}
