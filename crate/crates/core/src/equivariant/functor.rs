//! Words in `⊕`, `⊗` and `Λ^k` (k ≥ 1) applied to a representation.
//!
//! Syntax: `V`, `0`, `lambdaK(w)`, `tensor(w, w)`, `sum(w, w)`. `ΛK(w)` is
//! accepted for `lambdaK(w)`.

use std::fmt;

use super::rep::GRep;
use crate::error::{Error, Result};
use crate::linalg::binomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorWord {
    Id,
    Zero,
    Lambda(usize, Box<FunctorWord>),
    Tensor(Box<FunctorWord>, Box<FunctorWord>),
    Sum(Box<FunctorWord>, Box<FunctorWord>),
}

impl FunctorWord {
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser {
            chars: s.chars().collect(),
            pos: 0,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(w)
    }

    /// Evaluates the word with the diagonal action.
    pub fn apply(&self, v: &GRep) -> Result<GRep> {
        Ok(match self {
            FunctorWord::Id => v.clone(),
            FunctorWord::Zero => GRep::zero(v.group().clone(), v.ring()),
            FunctorWord::Lambda(k, w) => w.apply(v)?.exterior_rep(*k),
            FunctorWord::Tensor(a, b) => a.apply(v)?.tensor_rep(&b.apply(v)?)?,
            FunctorWord::Sum(a, b) => a.apply(v)?.direct_sum(&b.apply(v)?)?,
        })
    }

    /// Rank of the result on a rank-`n` input.
    pub fn rank(&self, n: usize) -> usize {
        match self {
            FunctorWord::Id => n,
            FunctorWord::Zero => 0,
            FunctorWord::Lambda(k, w) => binomial(w.rank(n), *k),
            FunctorWord::Tensor(a, b) => a.rank(n) * b.rank(n),
            FunctorWord::Sum(a, b) => a.rank(n) + b.rank(n),
        }
    }
}

impl fmt::Display for FunctorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorWord::Id => write!(f, "V"),
            FunctorWord::Zero => write!(f, "0"),
            FunctorWord::Lambda(k, w) => write!(f, "lambda{k}({w})"),
            FunctorWord::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            FunctorWord::Sum(a, b) => write!(f, "sum({a}, {b})"),
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, what: &str) -> Error {
        Error::MalformedWord(format!("{what} at position {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_alphabetic() || *c == '^') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("expected an exponent"))
    }

    fn word(&mut self) -> Result<FunctorWord> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&'0') {
            self.pos += 1;
            return Ok(FunctorWord::Zero);
        }
        let start = self.pos;
        let name = self.ident();
        match name.trim_end_matches('^') {
            "V" => Ok(FunctorWord::Id),
            "lambda" | "Λ" => {
                let k = self.number()?;
                if k == 0 {
                    self.pos = start;
                    return Err(self.error("lambda0 is not allowed"));
                }
                self.eat('(')?;
                let w = self.word()?;
                self.eat(')')?;
                Ok(FunctorWord::Lambda(k, Box::new(w)))
            }
            op @ ("tensor" | "sum") => {
                self.eat('(')?;
                let a = self.word()?;
                self.eat(',')?;
                let b = self.word()?;
                self.eat(')')?;
                Ok(if op == "tensor" {
                    FunctorWord::Tensor(Box::new(a), Box::new(b))
                } else {
                    FunctorWord::Sum(Box::new(a), Box::new(b))
                })
            }
            _ => {
                self.pos = start;
                Err(self.error("expected V, 0, lambdaK, tensor or sum"))
            }
        }
    }
}

/// Parses and applies a word.
pub fn apply_polynomial_functor(word: &str, v: &GRep) -> Result<GRep> {
    FunctorWord::parse(word)?.apply(v)
}
