//! Recursive-descent parser from tokens to the surface tree.
//!
//! Errors do not abort the file: the parser records a diagnostic and
//! resynchronizes at the next declaration keyword at brace depth zero,
//! so one bad declaration yields one primary error and later
//! declarations still get parsed.

use crate::diag::{Diagnostic, SourceSpan};
use crate::lexer::{Token, TokenKind};
use crate::surface::*;

/// Hard bound on formula, term, and block nesting. Deep enough for any
/// sane script, shallow enough that adversarial input cannot overflow
/// the stack even in unoptimized builds with small thread stacks.
const MAX_DEPTH: u32 = 64;

const DECL_WORDS: [&str; 10] = [
    "sort", "pred", "fn", "const", "axiom", "schema", "lemma", "proof", "sequent", "derive",
];

pub(crate) struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    depth: u32,
    pub diags: Vec<Diagnostic>,
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Parser {
            toks,
            pos: 0,
            depth: 0,
            diags: Vec::new(),
        }
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    /// For inputs that are a single formula rather than a document.
    pub fn expect_eof(&mut self) {
        if !self.at(TokenKind::Eof) {
            let found = Self::describe(self.peek());
            self.err_here("syntax", format!("expected end of input, found {found}"));
        }
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        t
    }

    fn at(&self, kind: TokenKind) -> bool {
        self.peek().kind == kind
    }

    fn at_word(&self, w: &str) -> bool {
        let t = self.peek();
        t.kind == TokenKind::Ident && t.text == w
    }

    fn describe(t: &Token) -> String {
        match t.kind {
            TokenKind::Eof => "end of input".to_string(),
            TokenKind::Ident => format!("`{}`", t.text),
            _ => format!("`{}`", t.text),
        }
    }

    fn err_here(&mut self, code: &'static str, message: impl Into<String>) {
        let span = self.peek().span.clone();
        self.diags.push(Diagnostic::error(span, code, message));
    }

    fn err_at(&mut self, span: SourceSpan, code: &'static str, message: impl Into<String>) {
        self.diags.push(Diagnostic::error(span, code, message));
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> Result<Token, ()> {
        if self.at(kind) {
            Ok(self.bump())
        } else {
            let found = Self::describe(self.peek());
            self.err_here("syntax", format!("expected {what}, found {found}"));
            Err(())
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<Token, ()> {
        if self.at_word(w) {
            Ok(self.bump())
        } else {
            let found = Self::describe(self.peek());
            self.err_here("syntax", format!("expected `{w}`, found {found}"));
            Err(())
        }
    }

    fn ident(&mut self, what: &str) -> Result<SName, ()> {
        if self.at(TokenKind::Ident) {
            let t = self.bump();
            Ok(SName {
                text: t.text,
                span: t.span,
            })
        } else {
            let found = Self::describe(self.peek());
            self.err_here("syntax", format!("expected {what}, found {found}"));
            Err(())
        }
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Self) -> Result<T, ()>) -> Result<T, ()> {
        if self.depth >= MAX_DEPTH {
            self.err_here("nesting", "nesting exceeds the supported depth");
            return Err(());
        }
        self.depth += 1;
        let r = f(self);
        self.depth -= 1;
        r
    }

    // ------------------------------------------------------------------
    // Formulas and terms

    pub fn formula(&mut self) -> Result<SFormula, ()> {
        let left = self.or_formula()?;
        if self.at(TokenKind::Arrow) {
            self.bump();
            let right = self.nested(|p| p.formula())?;
            let span = left.span.to(&right.span);
            return Ok(SFormula {
                kind: SFormulaKind::Implies(Box::new(left), Box::new(right)),
                span,
            });
        }
        Ok(left)
    }

    fn or_formula(&mut self) -> Result<SFormula, ()> {
        let mut f = self.and_formula()?;
        while self.at(TokenKind::Pipe) {
            self.bump();
            let r = self.and_formula()?;
            let span = f.span.to(&r.span);
            f = SFormula {
                kind: SFormulaKind::Or(Box::new(f), Box::new(r)),
                span,
            };
        }
        Ok(f)
    }

    fn and_formula(&mut self) -> Result<SFormula, ()> {
        let mut f = self.unary_formula()?;
        while self.at(TokenKind::Amp) {
            self.bump();
            let r = self.unary_formula()?;
            let span = f.span.to(&r.span);
            f = SFormula {
                kind: SFormulaKind::And(Box::new(f), Box::new(r)),
                span,
            };
        }
        Ok(f)
    }

    fn unary_formula(&mut self) -> Result<SFormula, ()> {
        if self.at(TokenKind::Tilde) {
            let t = self.bump();
            let inner = self.nested(|p| p.unary_formula())?;
            let span = t.span.to(&inner.span);
            return Ok(SFormula {
                kind: SFormulaKind::Not(Box::new(inner)),
                span,
            });
        }
        if self.at_word("all") || self.at_word("ex") {
            return self.quantified();
        }
        self.atomic_formula()
    }

    /// A quantifier's body extends as far right as possible, to the end
    /// of the enclosing group.
    fn quantified(&mut self) -> Result<SFormula, ()> {
        let kw = self.bump();
        let exists = kw.text == "ex";
        let var = self.ident("a binder variable")?;
        let sort = if self.at(TokenKind::Colon) {
            self.bump();
            Some(self.ident("a sort name")?)
        } else {
            None
        };
        self.expect(TokenKind::Dot, "`.` after the binder")?;
        let body = self.nested(|p| p.formula())?;
        let span = kw.span.to(&body.span);
        return Ok(SFormula {
            kind: SFormulaKind::Quant {
                exists,
                var,
                sort,
                body: Box::new(body),
            },
            span,
        });
    }

    fn atomic_formula(&mut self) -> Result<SFormula, ()> {
        if self.at_word("false") {
            let t = self.bump();
            return Ok(SFormula {
                kind: SFormulaKind::False,
                span: t.span,
            });
        }
        if self.at(TokenKind::LParen) {
            let open = self.bump();
            let inner = self.nested(|p| p.formula())?;
            if self.at(TokenKind::RParen) {
                let close = self.bump();
                let span = open.span.to(&close.span);
                return Ok(SFormula {
                    kind: inner.kind,
                    span,
                });
            }
            self.err_at(open.span, "syntax", "unclosed parenthesis");
            return Err(());
        }
        if self.at(TokenKind::Ident) {
            let name = self.ident("a formula")?;
            let args = if self.at(TokenKind::LParen) {
                self.paren_terms()?
            } else {
                Vec::new()
            };
            if self.at(TokenKind::Eq) || self.at(TokenKind::Neq) {
                let negated = self.at(TokenKind::Neq);
                self.bump();
                let left_span = match args.last() {
                    Some(a) => name.span.to(&a.span),
                    None => name.span.clone(),
                };
                let left = STerm {
                    span: left_span,
                    name,
                    args,
                };
                let right = self.term()?;
                let span = left.span.to(&right.span);
                return Ok(SFormula {
                    kind: SFormulaKind::Eq {
                        left,
                        right,
                        negated,
                    },
                    span,
                });
            }
            let span = match args.last() {
                Some(a) => name.span.to(&a.span),
                None => name.span.clone(),
            };
            return Ok(SFormula {
                kind: SFormulaKind::Atom { name, args },
                span,
            });
        }
        let found = Self::describe(self.peek());
        self.err_here("syntax", format!("expected a formula, found {found}"));
        Err(())
    }

    fn paren_terms(&mut self) -> Result<Vec<STerm>, ()> {
        let open = self.bump();
        let mut args = Vec::new();
        if self.at(TokenKind::RParen) {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.nested(|p| p.term())?);
            if self.at(TokenKind::Comma) {
                self.bump();
                continue;
            }
            if self.at(TokenKind::RParen) {
                self.bump();
                return Ok(args);
            }
            self.err_at(open.span, "syntax", "unclosed parenthesis");
            return Err(());
        }
    }

    pub fn term(&mut self) -> Result<STerm, ()> {
        let name = self.ident("a term")?;
        let args = if self.at(TokenKind::LParen) {
            self.paren_terms()?
        } else {
            Vec::new()
        };
        let span = match args.last() {
            Some(a) => name.span.to(&a.span),
            None => name.span.clone(),
        };
        Ok(STerm { name, args, span })
    }

    // ------------------------------------------------------------------
    // Proof blocks

    fn block(&mut self) -> Result<SBlock, ()> {
        let open = self.expect(TokenKind::LBrace, "`{`")?;
        self.nested(|p| p.block_body(open.span))
    }

    fn block_body(&mut self, open: SourceSpan) -> Result<SBlock, ()> {
        let mut assume = None;
        let mut fix = None;
        if self.at_word("assume") {
            self.bump();
            let label = self.ident("a hypothesis label")?;
            self.expect(TokenKind::Colon, "`:` after the hypothesis label")?;
            let f = self.formula()?;
            self.expect(TokenKind::Semi, "`;` after the hypothesis")?;
            assume = Some((label, f));
        }
        if self.at_word("fix") {
            self.bump();
            let var = self.ident("a variable name")?;
            self.expect(TokenKind::Colon, "`:` after the fixed variable")?;
            let sort = self.ident("a sort name")?;
            self.expect(TokenKind::Semi, "`;` after the fixed variable")?;
            fix = Some((var, sort));
        }
        let mut items = Vec::new();
        loop {
            if self.at(TokenKind::RBrace) {
                let close = self.bump();
                let span = open.to(&close.span);
                return Ok(SBlock {
                    assume,
                    fix,
                    items,
                    span,
                });
            }
            if self.at(TokenKind::LBrace) {
                items.push(SItem::Block(self.block()?));
                continue;
            }
            if self.at_word("assume") || self.at_word("fix") {
                self.err_here(
                    "syntax",
                    "assume and fix may appear only at the start of a block",
                );
                return Err(());
            }
            if self.at(TokenKind::Ident) {
                items.push(SItem::Line(self.line()?));
                continue;
            }
            if self.at(TokenKind::Eof) {
                self.err_at(open, "syntax", "unclosed block: expected `}`");
                return Err(());
            }
            let found = Self::describe(self.peek());
            self.err_here(
                "syntax",
                format!("expected a line, a nested block, or `}}`, found {found}"),
            );
            return Err(());
        }
    }

    fn line(&mut self) -> Result<SLine, ()> {
        let label = self.ident("a line label")?;
        self.expect(TokenKind::Colon, "`:` after the line label")?;
        let formula = self.formula()?;
        self.expect_word("by")?;
        let rule = self.rule()?;
        self.expect(TokenKind::Semi, "`;` after the rule")?;
        Ok(SLine {
            label,
            formula,
            rule,
        })
    }

    fn rule(&mut self) -> Result<SRule, ()> {
        let name = self.ident("a rule name")?;
        match name.text.as_str() {
            "axiom" => Ok(SRule::Axiom(self.ident("an axiom name")?)),
            "lemma" => Ok(SRule::Lemma(self.ident("a lemma name")?)),
            "schema" => {
                let schema = self.ident("a schema name")?;
                let mut args = Vec::new();
                if self.at(TokenKind::LBracket) {
                    let open = self.bump();
                    if self.at(TokenKind::RBracket) {
                        self.bump();
                    } else {
                        loop {
                            args.push(self.formula()?);
                            if self.at(TokenKind::Comma) {
                                self.bump();
                                continue;
                            }
                            if self.at(TokenKind::RBracket) {
                                self.bump();
                                break;
                            }
                            self.err_at(open.span, "syntax", "unclosed bracket");
                            return Err(());
                        }
                    }
                }
                Ok(SRule::Schema { name: schema, args })
            }
            "all_e" | "ex_i" => {
                let label = self.ident("a citation")?;
                let open = self.expect(TokenKind::LBracket, "`[` before the witness term")?;
                let term = self.term()?;
                if self.at(TokenKind::RBracket) {
                    self.bump();
                } else {
                    self.err_at(open.span, "syntax", "unclosed bracket");
                    return Err(());
                }
                Ok(SRule::WithTerm { name, label, term })
            }
            _ => {
                let mut labels = Vec::new();
                while self.at(TokenKind::Ident) {
                    labels.push(self.ident("a citation")?);
                }
                Ok(SRule::Labels { name, labels })
            }
        }
    }

    // ------------------------------------------------------------------
    // Declarations

    pub fn document(&mut self) -> Vec<SDecl> {
        let mut decls = Vec::new();
        while !self.at(TokenKind::Eof) {
            let start = self.pos;
            match self.decl() {
                Ok(d) => decls.push(d),
                Err(()) => {
                    if self.pos == start {
                        self.bump();
                    }
                    self.recover();
                }
            }
        }
        decls
    }

    /// Skip to the next declaration keyword at brace depth zero. A
    /// keyword right after `by` is a rule head, not a declaration.
    fn recover(&mut self) {
        let mut depth: u32 = 0;
        let mut prev = String::new();
        loop {
            let t = self.peek();
            match t.kind {
                TokenKind::Eof => return,
                TokenKind::LBrace => depth += 1,
                TokenKind::RBrace => depth = depth.saturating_sub(1),
                TokenKind::Ident
                    if depth == 0 && prev != "by" && DECL_WORDS.contains(&t.text.as_str()) =>
                {
                    return;
                }
                _ => {}
            }
            prev = self.bump().text;
        }
    }

    fn decl(&mut self) -> Result<SDecl, ()> {
        let t = self.peek().clone();
        if t.kind != TokenKind::Ident {
            let found = Self::describe(&t);
            self.err_here("syntax", format!("expected a declaration, found {found}"));
            return Err(());
        }
        match t.text.as_str() {
            "sort" => {
                self.bump();
                let name = self.ident("a sort name")?;
                let semi = self.expect(TokenKind::Semi, "`;` after the sort name")?;
                Ok(SDecl {
                    kind: SDeclKind::Sort { name },
                    span: t.span.to(&semi.span),
                })
            }
            "pred" => {
                self.bump();
                let name = self.ident("a predicate name")?;
                let args = if self.at(TokenKind::LParen) {
                    self.sort_list()?
                } else {
                    Vec::new()
                };
                let semi = self.expect(TokenKind::Semi, "`;` after the declaration")?;
                Ok(SDecl {
                    kind: SDeclKind::Pred { name, args },
                    span: t.span.to(&semi.span),
                })
            }
            "fn" => {
                self.bump();
                let name = self.ident("a function name")?;
                if !self.at(TokenKind::LParen) {
                    self.err_here("syntax", "expected `(` after the function name");
                    return Err(());
                }
                let args = self.sort_list()?;
                self.expect(TokenKind::Arrow, "`->` before the result sort")?;
                let result = self.ident("a result sort")?;
                let semi = self.expect(TokenKind::Semi, "`;` after the declaration")?;
                Ok(SDecl {
                    kind: SDeclKind::Fn { name, args, result },
                    span: t.span.to(&semi.span),
                })
            }
            "const" => {
                self.bump();
                let name = self.ident("a constant name")?;
                self.expect(TokenKind::Colon, "`:` after the constant name")?;
                let sort = self.ident("a sort name")?;
                let semi = self.expect(TokenKind::Semi, "`;` after the declaration")?;
                Ok(SDecl {
                    kind: SDeclKind::Const { name, sort },
                    span: t.span.to(&semi.span),
                })
            }
            "axiom" => {
                self.bump();
                let name = self.ident("an axiom name")?;
                self.expect(TokenKind::Colon, "`:` after the axiom name")?;
                let formula = self.formula()?;
                let semi = self.expect(TokenKind::Semi, "`;` after the axiom")?;
                Ok(SDecl {
                    kind: SDeclKind::Axiom { name, formula },
                    span: t.span.to(&semi.span),
                })
            }
            "schema" => {
                self.bump();
                let name = self.ident("a schema name")?;
                self.expect(TokenKind::LBracket, "`[` before the parameter list")?;
                let params = self.param_list()?;
                self.expect(TokenKind::Colon, "`:` after the parameter list")?;
                let template = self.formula()?;
                if self.at(TokenKind::LBrace) {
                    let body = self.block()?;
                    let span = t.span.to(&body.span);
                    return Ok(SDecl {
                        kind: SDeclKind::Schema {
                            name,
                            params,
                            template,
                            body: Some(body),
                        },
                        span,
                    });
                }
                let semi =
                    self.expect(TokenKind::Semi, "`;` or a proof block after the template")?;
                Ok(SDecl {
                    kind: SDeclKind::Schema {
                        name,
                        params,
                        template,
                        body: None,
                    },
                    span: t.span.to(&semi.span),
                })
            }
            "lemma" | "proof" => {
                self.bump();
                let name = self.ident("a name")?;
                self.expect(TokenKind::Colon, "`:` after the name")?;
                let goal = self.formula()?;
                let body = self.block()?;
                let span = t.span.to(&body.span);
                let kind = if t.text == "lemma" {
                    SDeclKind::Lemma { name, goal, body }
                } else {
                    SDeclKind::Proof { name, goal, body }
                };
                Ok(SDecl { kind, span })
            }
            "sequent" => {
                self.bump();
                let name = self.ident("a sequent name")?;
                self.expect(TokenKind::Colon, "`:` after the sequent name")?;
                let (premises, conclusion) = self.sequent_body()?;
                let semi = self.expect(TokenKind::Semi, "`;` after the sequent")?;
                Ok(SDecl {
                    kind: SDeclKind::Sequent {
                        name,
                        premises,
                        conclusion,
                    },
                    span: t.span.to(&semi.span),
                })
            }
            "derive" => {
                self.bump();
                let name = self.ident("a derivation name")?;
                self.expect(TokenKind::LBrace, "`{` before the steps")?;
                let mut steps = Vec::new();
                while !self.at(TokenKind::RBrace) {
                    if self.at(TokenKind::Eof) {
                        self.err_here("syntax", "unclosed derivation: expected `}`");
                        return Err(());
                    }
                    steps.push(self.step()?);
                }
                let close = self.bump();
                Ok(SDecl {
                    kind: SDeclKind::Derive { name, steps },
                    span: t.span.to(&close.span),
                })
            }
            other => {
                self.err_here(
                    "syntax",
                    format!("expected a declaration keyword, found `{other}`"),
                );
                Err(())
            }
        }
    }

    fn sort_list(&mut self) -> Result<Vec<SName>, ()> {
        let open = self.bump();
        let mut out = Vec::new();
        if self.at(TokenKind::RParen) {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.ident("a sort name")?);
            if self.at(TokenKind::Comma) {
                self.bump();
                continue;
            }
            if self.at(TokenKind::RParen) {
                self.bump();
                return Ok(out);
            }
            self.err_at(open.span, "syntax", "unclosed parenthesis");
            return Err(());
        }
    }

    fn param_list(&mut self) -> Result<Vec<SParam>, ()> {
        let mut out = Vec::new();
        if self.at(TokenKind::RBracket) {
            self.bump();
            return Ok(out);
        }
        loop {
            let name = self.ident("a parameter name")?;
            self.expect(TokenKind::Colon, "`:` after the parameter name")?;
            let kind = if self.at_word("formula") {
                self.bump();
                SParamKind::Formula
            } else if self.at_word("term") {
                self.bump();
                SParamKind::Term(self.ident("a sort name")?)
            } else {
                let found = Self::describe(self.peek());
                self.err_here(
                    "syntax",
                    format!("expected `formula` or `term`, found {found}"),
                );
                return Err(());
            };
            out.push(SParam { name, kind });
            if self.at(TokenKind::Comma) {
                self.bump();
                continue;
            }
            self.expect(TokenKind::RBracket, "`]` after the parameters")?;
            return Ok(out);
        }
    }

    fn sequent_body(&mut self) -> Result<(Vec<SFormula>, SFormula), ()> {
        let mut premises = Vec::new();
        if !self.at(TokenKind::Turnstile) {
            loop {
                premises.push(self.formula()?);
                if self.at(TokenKind::Comma) {
                    self.bump();
                    continue;
                }
                break;
            }
        }
        self.expect(TokenKind::Turnstile, "`|-` between premises and conclusion")?;
        let conclusion = self.formula()?;
        Ok((premises, conclusion))
    }

    fn step(&mut self) -> Result<SStep, ()> {
        let label = self.ident("a step label")?;
        self.expect(TokenKind::Colon, "`:` after the step label")?;
        let (premises, conclusion) = self.sequent_body()?;
        self.expect_word("by")?;
        let rule_name = self.ident("a step rule")?;
        let rule = match rule_name.text.as_str() {
            "base" => SStepRule::Base(self.ident("a base sequent name")?),
            "indem" => SStepRule::Indem,
            "cut" => {
                let target = self.ident("the step to cut into")?;
                let source = self.ident("the step supplying the premise")?;
                let pos_tok = self.ident("a premise position")?;
                let position = match pos_tok.text.parse::<usize>() {
                    Ok(n) => n,
                    Err(_) => {
                        self.err_at(
                            pos_tok.span,
                            "syntax",
                            "the cut position must be a 1-based number",
                        );
                        return Err(());
                    }
                };
                SStepRule::Cut {
                    target,
                    source,
                    position,
                }
            }
            other => {
                self.err_at(
                    rule_name.span,
                    "syntax",
                    format!("expected `base`, `indem`, or `cut`, found `{other}`"),
                );
                return Err(());
            }
        };
        self.expect(TokenKind::Semi, "`;` after the step")?;
        Ok(SStep {
            label,
            premises,
            conclusion,
            rule,
        })
    }
}
