use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};

/// Group operations for evaluating words; the E6 model needs its
/// parabolic as context, so this is not a trait on the element type.
pub trait GroupOps<G> {
    fn mul(&self, g: &G, h: &G) -> G;
    fn inv(&self, g: &G) -> G;
    fn identity(&self) -> G;
    fn same(&self, g: &G, h: &G) -> bool;
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Word {
    Gen(usize),
    Pow(Box<Word>, i64),
    Seq(Vec<Word>),
}

/// A relation `lhs = rhs` between words; a bare relator has `rhs = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: String,
    lhs: Word,
    rhs: Word,
}

/// Generator names and relations. Words are written as space-separated
/// generators with optional `^k` exponents, parenthesised subwords and
/// commutators `[x, y] = x y x^-1 y^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePresentation {
    gens: Vec<String>,
    relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

impl FinitePresentation {
    pub fn new(gens: &[&str], relations: &[&str]) -> Result<Self> {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let relations = relations
            .iter()
            .map(|r| {
                let (l, rhs) = match r.split_once('=') {
                    Some((l, rhs)) => (l, rhs.trim()),
                    None => (*r, "1"),
                };
                Ok(Relation {
                    text: r.to_string(),
                    lhs: parse_word(&gens, l)?,
                    rhs: parse_word(&gens, rhs)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FinitePresentation { gens, relations })
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Checks every relation under the assignment `gens[i] ↦ images[i]`.
    pub fn check<G, O: GroupOps<G>>(&self, ops: &O, images: &[G]) -> Result<Vec<RelationCheck>> {
        if images.len() != self.gens.len() {
            return Err(EngineError::Parse(format!(
                "{} images for {} generators",
                images.len(),
                self.gens.len()
            )));
        }
        Ok(self
            .relations
            .iter()
            .map(|r| RelationCheck {
                relation: r.text.clone(),
                holds: ops.same(&eval(&r.lhs, ops, images), &eval(&r.rhs, ops, images)),
            })
            .collect())
    }

    /// Like [`check`](Self::check) but fails on the first broken relation.
    pub fn verify<G, O: GroupOps<G>>(&self, ops: &O, images: &[G]) -> Result<()> {
        match self.check(ops, images)?.into_iter().find(|c| !c.holds) {
            Some(c) => Err(EngineError::Relator(c.relation)),
            None => Ok(()),
        }
    }
}

fn eval<G, O: GroupOps<G>>(w: &Word, ops: &O, images: &[G]) -> G {
    match w {
        Word::Gen(i) => ops.mul(&ops.identity(), &images[*i]),
        Word::Seq(ws) => ws
            .iter()
            .fold(ops.identity(), |acc, x| ops.mul(&acc, &eval(x, ops, images))),
        Word::Pow(x, k) => {
            let g = eval(x, ops, images);
            let g = if *k < 0 { ops.inv(&g) } else { g };
            (0..k.unsigned_abs()).fold(ops.identity(), |acc, _| ops.mul(&acc, &g))
        }
    }
}

fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' | '[' | ']' | ',' | '^' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_word(gens: &[String], s: &str) -> Result<Word> {
    let toks = tokenize(s);
    let mut pos = 0;
    let w = parse_seq(gens, &toks, &mut pos)?;
    if pos != toks.len() {
        return Err(EngineError::Parse(format!("trailing `{}` in `{s}`", toks[pos])));
    }
    Ok(w)
}

fn parse_seq(gens: &[String], toks: &[String], pos: &mut usize) -> Result<Word> {
    let mut items = Vec::new();
    while *pos < toks.len() && ![")", "]", ","].contains(&toks[*pos].as_str()) {
        let atom = match toks[*pos].as_str() {
            "(" => {
                *pos += 1;
                let w = parse_seq(gens, toks, pos)?;
                expect(toks, pos, ")")?;
                w
            }
            "[" => {
                *pos += 1;
                let x = parse_seq(gens, toks, pos)?;
                expect(toks, pos, ",")?;
                let y = parse_seq(gens, toks, pos)?;
                expect(toks, pos, "]")?;
                Word::Seq(vec![
                    x.clone(),
                    y.clone(),
                    Word::Pow(Box::new(x), -1),
                    Word::Pow(Box::new(y), -1),
                ])
            }
            "1" => {
                *pos += 1;
                Word::Seq(Vec::new())
            }
            name => {
                let i = gens
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| EngineError::Parse(format!("unknown generator `{name}`")))?;
                *pos += 1;
                Word::Gen(i)
            }
        };
        let atom = if toks.get(*pos).map(String::as_str) == Some("^") {
            *pos += 1;
            let k: i64 = toks
                .get(*pos)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| EngineError::Parse("bad exponent".into()))?;
            *pos += 1;
            Word::Pow(Box::new(atom), k)
        } else {
            atom
        };
        items.push(atom);
    }
    Ok(Word::Seq(items))
}

fn expect(toks: &[String], pos: &mut usize, t: &str) -> Result<()> {
    if toks.get(*pos).map(String::as_str) != Some(t) {
        return Err(EngineError::Parse(format!("expected `{t}`")));
    }
    *pos += 1;
    Ok(())
}
