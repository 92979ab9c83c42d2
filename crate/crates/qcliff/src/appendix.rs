//! Diff of the published expansion of the four correction terms of
//! `ψ_B ∘_B f_B` against the engine.
//!
//! Each printed line is `±γ_S [expression]`, an expression in the
//! coefficients `h^S` of `ψ`, `p` (its pseudoscalar coefficient), `s` (the
//! scalar part of `ψ(A)`), an undefined `b`, and the entries `A_{μν}`. Lines
//! are parsed where the typography is unambiguous; each parsed line is
//! evaluated at random rational points and compared with the engine's
//! coefficient of `γ_S` in `−4ι·term`. Nothing here is asserted: the output
//! is a report.

use num_complex::Complex;
use num_traits::{One, Zero};
use qcliff_core::blade::Blade;
use qcliff_core::quantum::{build_b_element, decompose_b_spinor, idempotent_f_b};
use qcliff_core::deformation::QuantumClifford;
use qcliff_core::{AntisymmetricForm, Exact, Multivector, Real};
use serde::Serialize;

use crate::sampling::{random_a_exact, random_dense_multivector, rng_for};

/// One printed line: term letter, sign in front of `γ_S`, the blade label as
/// printed (`""` for the scalar), and the bracketed expression.
#[derive(Clone, Copy, Debug)]
pub struct Line {
    pub term: char,
    pub sign: i8,
    pub blade: &'static str,
    pub text: &'static str,
}

/// Index into `decompose_b_spinor`'s output for each printed term label:
/// `a` is `ψ(A)∘f(A)`, `b` is `ψ(A)∘f`, `c` is `ψ∘f` and `d` is `ψ∘f(A)`.
pub fn term_index(term: char) -> usize {
    match term {
        'a' => 3,
        'b' => 1,
        'c' => 0,
        _ => 2,
    }
}

pub const LINES: &[Line] = &[
    Line { term: 'a', sign: 1, blade: "", text: r"(p[h^{013}(A_{01}(A_{01}A_{32}+A_{20}A_{31}+A_{12}A_{30})+A_{12}A_{13}+A_{03}A_{20})+h^{023}(A_{02}(A_{01}A_{32}+A_{20}A_{31}+A_{12}A_{30}+2A_{30})+A_{12}A_{13})+h^{123}(A_{12}(A_{01}A_{32}+A_{20}A_{31}+A_{12}A_{30})-A_{23}A_{20}-A_{31}A_{01})+h^{012}(A_{10}A_{01}+A_{20}A_{02}+A_{12}A_{12})])" },
    Line { term: 'a', sign: 1, blade: "0", text: r"[p(A_{13}A_{01}-A_{23}A_{20}+2A_{12}A_{12}A_{13}+A_{23}A_{20}A_{12}+A_{23}A_{01}A_{12})+sA_{12}]" },
    Line { term: 'a', sign: 1, blade: "1", text: r"[p(A_{12}A_{13}-A_{12}A_{23}-A_{03}A_{01}+A_{01}A_{20}A_{32}+A_{01}A_{20}A_{13}+A_{02}A_{12}A_{03}+A_{03}A_{12}A_{21}+A_{23}A_{01}A_{10})+sA_{01}]" },
    Line { term: 'a', sign: 1, blade: "2", text: r"[p(A_{03}A_{20}+A_{01}A_{01}A_{32}+A_{13}A_{01}A_{02}+A_{13}A_{20}A_{02})+sA_{02}]" },
    Line { term: 'a', sign: 1, blade: "3", text: r"[p(A_{01}A_{01}+A_{02}A_{02}+A_{02}A_{12}A_{13}+A_{12}A_{20}A_{10}+A_{02}A_{20}A_{12}+A_{01}A_{12}A_{13})]" },
    Line { term: 'a', sign: 1, blade: "01", text: r"[p(h^{013}(A_{13}A_{20}+A_{21}A_{30})+h^{023}(A_{03}A_{12}+A_{13}A_{20})-h^{123}A_{23}A_{12})]" },
    Line { term: 'a', sign: 1, blade: "02", text: r"[p(h^{013}A_{13}A_{01}+h^{023}A_{13}A_{01}+h^{123}A_{13}A_{21})]" },
    Line { term: 'a', sign: 1, blade: "03", text: r"[p(h^{013}A_{01}A_{12}+h^{023}A_{02}A_{12}+h^{123}A_{12}A_{21})]" },
    Line { term: 'a', sign: 1, blade: "12", text: r"[p(h^{013}A_{01}A_{30}+h^{023}A_{30}A_{01}+h^{123}(A_{13}A_{20}+A_{23}A_{01}))]" },
    Line { term: 'a', sign: 1, blade: "31", text: r"[p(h^{013}A_{01}A_{20}+h^{023}A_{01}A_{20}+h^{123}A_{12}A_{20})]" },
    Line { term: 'a', sign: 1, blade: "23", text: r"[p(h^{013}A_{01}A_{10}+h^{023}A_{01}A_{20}+h^{123}A_{12}A_{10})]" },
    Line { term: 'a', sign: 1, blade: "023", text: r"A_{12}A_{01}" },
    Line { term: 'a', sign: 1, blade: "031", text: r"(A_{01}A_{12}+A_{12}A_{20}+A_{23}A_{01})" },
    Line { term: 'a', sign: 1, blade: "012", text: r"(A_{03}A_{12}+A_{13}A_{20}))" },
    Line { term: 'b', sign: 1, blade: "", text: r"[h^{023}(A_{03}+A_{02})+h^{123}A_{23}+h^{012}A_{01}+h^3A_{01}A_{32}+h^3(A_{20}A_{31}+A_{03}A_{21})+h^0A_{12}+h^2A_{01}+h^1A_{02}]" },
    Line { term: 'b', sign: 1, blade: "0", text: r"[h^{01}(A_{01}+A_{20})A_{12}+A_{20})+h^{02}(A_{10}+A_{12}A_{20})+h^{03}(A_{01}{32}+A_{20}A_{32}+A_{12}A_{30})+bA_{12}+p(A_{12}+A_{20}A_{13}+A_{10}(A_{23}+A_{13})+A_{30}A_{12})]" },
    Line { term: 'b', sign: 1, blade: "1", text: r"[h^{01}(A_{20}(A_{01}+A_{02})+A_{12}(A_{10}+1))+bA_{20}+h^{12}((A_{12}+A_{02})A_{20}-A_{01})A_{01}+h^{13}(A_{32}(A_{01}+A_{20})+A_{12}A_{30})]" },
    Line { term: 'b', sign: 1, blade: "2", text: r"[h^{02}A_{21}+h^{12}A_{20}+h^{23}(A_{01}A_{32}+A_{12}A_{31}+A_{20}A_{32}+bA_{01}+p(A_{12}A_{31}+2A_{02}(A_{01}A_{31}+A_{21}A_{30})+A_{20}A_{20}))]" },
    Line { term: 'b', sign: 1, blade: "3", text: r"[p(-A_{01}A_{01}-A_{02}A_{02}+A_{12}A_{12})+h^{03}A_{21})+h^{13}(A_{01}A_{21}+A_{20})+h^{23}A_{12}(A_{02}+A_{01}A_{13}))]" },
    Line { term: 'b', sign: 1, blade: "01", text: r"[(h^{013}(A_{31}A_{20}+A_{12}A_{30}+A_{32}A_{01})-h^{013}(A_{03}A_{12}+2A_{13}A_{20})+h^{123}A_{23}(A_{12}+A_{02})+h^0A_{20}+h^1A_{21})]" },
    Line { term: 'b', sign: 1, blade: "02", text: r"[(h^{013}A_{31}A_{01}+h^{023}(A_{32}A_{01}+A_{20}A_{31}+A_{30}A_{12})+h^{123}A_{32}A_{01}+h^{012}A_{21}A_{01}+(h^0+h^2)A_{01})]" },
    Line { term: 'b', sign: 1, blade: "03", text: r"[2h^{012}A_{20}+h^3A_{12}]" },
    Line { term: 'b', sign: 1, blade: "12", text: r"[(h^1A_{01}+h^2A_{02}+h^{012}A_{12}+h^{023}(A_{13}A_{01}+A_{03}A_{20})+h^{123}A_{30}A_{01}+h^{123}(A_{30}A_{12}+A_{20}A_{31}))]" },
    Line { term: 'b', sign: -1, blade: "31", text: r"[(h^{013}A_{01}A_{20}+h^{012}A_{01}A_{20}+h^{123}A_{01})]" },
    Line { term: 'b', sign: 1, blade: "23", text: r"[(h^{023}A_{12}+h^{123}(A_{10}A_{12}+A_{20}+A_{02}A_{01})+h^{3}A_{10})]" },
    Line { term: 'b', sign: 1, blade: "023", text: r"(h^{03}A_{10}+h^{23}A_{12}+p(A_{20}A_{12}+A_{02}+A_{21}A_{10}))" },
    Line { term: 'b', sign: 1, blade: "013", text: r"[p(2A_{20}A_{02}+A_{01})+h^{03}A_{02}+h^{13}A_{12}]" },
    Line { term: 'b', sign: 1, blade: "012", text: r"[h^{01}A_{01}+h^{02}A_{02}+h^{12}A_{12}+p(A_{02}A_{23}+A_{13}A_{20}+A_{21}A_{20})]" },
    Line { term: 'b', sign: 1, blade: "123", text: r"[p(A_{21}+A_{20}A_{20})+h^{23}A_{20}+h^{13}A_{10}]" },
    Line { term: 'b', sign: 1, blade: "0123", text: r"(h^{013}A_{10}+h^{023}A_{20}+h^{123}A_{12})" },
    Line { term: 'c', sign: 1, blade: "", text: r"[h^{012}(A_{21}A_{12}-1)+h^{013}A_{31}A_{02}+h^{023}A_{31}+h^{123}(A_{30}-A_{32}A_{20})+p(A_{02}(A_{23}+A_{13}+A_{01}A_{12})+A_{01}(A_{32}+A_{31})+(A_{21}-1)A_{03}))]" },
    Line { term: 'c', sign: 1, blade: "0", text: r"[h^{01}(A_{21}A_{01}+A_{02}+A_{10}))+h^{02}(A_{21}A_{20}+A_{01}+A_{20})+h^{03}(A_{02}{31}+A_{23}A_{01}+A_{30})+h^{31}(A_{21}A_{31}+A_{23}))+p(A_{30}A_{20}+A_{32}A_{01}+A_{21}A_{20}A_{13}+A_{30}A_{21}A_{12}+A_{30}A_{20}+A_{32}A_{01}+A_{21}A_{12}(A_{02}+A_{30})+h^{023}A_{23}A_{21})+h^{12}(A_{21}A_{12}-1)+h^{23}(A_{31}-A_{32}A_{21})]" },
    Line { term: 'c', sign: 1, blade: "1", text: r"[h^{01}(A_{20}A_{10}+A_{12}+2))+h^{02}(A_{20}A_{02}-1)+h^{03}(A_{32}-A_{30}A_{02})+h^{31}(A_{01}A_{32}+A_{12}A_{30}+A_{30}))+h^{12}(A_{20}A_{12}+A_{01}+A_{02})+h^{23}(A_{30}+A_{32}A_{20})+p(A_{32}A_{01}A_{02}+A_{30}A_{20}A_{12})]" },
    Line { term: 'c', sign: 1, blade: "2", text: r"[h^{01}(A_{10}A_{01}-1)+h^{02}(A_{20}A_{01}+A_{12}+2)+h^{03}(A_{30}A_{01}+A_{13})+h^{31}(A_{10}A_{31}+A_{30}))+h^{12}(A_{10}A_{12}+A_{02})+h^{23}(A_{30}A_{21}+A_{31}A_{20})+p(A_{01}(A_{12}A_{30}+A_{32}A_{10})+A_{23})]" },
    Line { term: 'c', sign: 1, blade: "3", text: r"[h^{123}A_{23}+2h^{03}+2h^{13}A_{10}+2h^{23}A_{20}+pA_{20}]" },
    Line { term: 'c', sign: 1, blade: "03", text: r"[h^{123}A_{32}]" },
    Line { term: 'c', sign: 1, blade: "01", text: r"[(h^{013}(A_{03}A_{12})+h^{012}A_{03}A_{12}+h^{123}(A_{13}+A_{23}A_{12})+h^{023}A_{30}+p(A_{20}(A_{32}A_{10}+A_{31}A_{20})+A_{31}+A_{12}A_{23}))]" },
    Line { term: 'c', sign: 1, blade: "02", text: r"[h^{013}A_{03}+h^{012}A_{10}+h^{123}A_{32}+h^{023}(A_{30}A_{21}+A_{23}A_{01}+A_{13}A_{20})+p(A_{10}(A_{32}A_{10}+A_{31}A_{20})+A_{23})]" },
    Line { term: 'c', sign: 1, blade: "12", text: r"[h^{012}(A_{21}+A_{02}A_{01})+h^{023}A_{32}+h^{123}A_{30}(A_{21}+A_{10})+h^{013}(A_{31}+A_{03}A_{10})+p(A_{30}A_{12}+A_{23}A_{10}+A_{13}A_{20})]" },
    Line { term: 'c', sign: 1, blade: "31", text: r"[h^{013}A_{12}+pA_{02}A_{21}]" },
    Line { term: 'c', sign: 1, blade: "012", text: r"[h^{01}A_{01}+h^{02}A_{02}+h^{12}A_{12}+p(A_{02}A_{23}+A_{13}A_{20}+A_{21}A_{20})]" },
    Line { term: 'c', sign: 1, blade: "023", text: r"(h^{03}A_{10}+h^{31}+h^{23}A_{12}+p(A_{10}A_{12}+A_{02}+A_{21}A_{01}))" },
    Line { term: 'c', sign: 1, blade: "013", text: r"[p(A_{20}A_{21}+A_{10})+h^{03}A_{20}-h^{23}+h^{31}A_{12}]" },
    Line { term: 'c', sign: 1, blade: "123", text: r"[p(A_{21}(A_{30}+A_{32})+A_{10}A_{32})+h^{23}A_{02}+h^{31}A_{10}]" },
    Line { term: 'c', sign: 1, blade: "0123", text: r"(h^{023}A_{02}+h^{123}A_{12})" },
    Line { term: 'd', sign: 1, blade: "", text: r"[h^{0}A_{12}+h^2A_{10}+h^1A_{02}]" },
    Line { term: 'd', sign: 1, blade: "0", text: r"[h^{01}(A_{12}A_{01}+A_{02}A_{21}+A_{20}))+h^{02}(A_{10}+A_{12}A_{20})+h^{03}(A_{01}A_{32}+A_{23}A_{02}+A_{12}A_{30})+bA_{12}+pA_{12}(A_{20}A_{13}+A_{32}A_{01}+A_{30}A_{12}+A_{10}A_{13})]" },
    Line { term: 'd', sign: 1, blade: "1", text: r"[h^{01}(A_{20}(A_{01}+A_{02})+A_{12}(A_{01}+1))+h^{12}(A_{10}+A_{02}A_{20}+A_{12}A_{20})+h^{13}(A_{01}A_{32}+A_{23}A_{02}+A_{12}A_{30})+bA_{20}+p(A_{12}A_{23}+A_{10}A_{30}+A_{02}A_{01}A_{23})]" },
    Line { term: 'd', sign: 1, blade: "2", text: r"[h^{02}A_{21}+h^{12}A_{20}+h^{23}(A_{12}A_{30}+A_{32}A_{01}+A_{20}A_{32})+p(A_{20}(2A_{10}A_{31}+2A_{12}A_{30}+A_{20})+A_{12}A_{31})]" },
    Line { term: 'd', sign: 1, blade: "3", text: r"[A_{20}A_{02}+A_{10}A_{01}+A_{12}A_{12}+h^{03}A_{21})+h^{13}(A_{20}+A_{01}A_{21})+h^{23}A_{01}]" },
    Line { term: 'd', sign: 1, blade: "03", text: r"[h^{012}A_{20}]" },
    Line { term: 'd', sign: 1, blade: "01", text: r"[(h^{013}(A_{03}A_{12}+A_{31}A_{20})+h^{123}A_{23}(A_{12}+A_{02})+h^{012}(A_{10}+A_{20}A_{21})+h^{013}A_{32}A_{01}+h^0A_{20}+h^1A_{21})]" },
    Line { term: 'd', sign: 1, blade: "02", text: r"[(h^{013}A_{01}A_{31}+h^{123}A_{32}A_{01}+h^{012}(A_{20}+A_{21}A_{01})+h^{023}(A_{23}A_{01}+A_{20}A_{31}+A_{30}A_{12})+h^0A_{01}+h^2A_{01})]" },
    Line { term: 'd', sign: 1, blade: "12", text: r"[(h^{013}A_{01}A_{31}+h^{123}(A_{20}A_{31}+A_{30}A_{12}+A_{32}A_{01})+h^{023}(A_{13}A_{01}+A_{03}A_{20})+h^1A_{01}+h^2A_{02})]" },
    Line { term: 'd', sign: 1, blade: "13", text: r"[h^{013}A_{12}+h^{123}A_{01}+h^{013}A_{02}+h^3A_{02}]" },
    Line { term: 'd', sign: 1, blade: "23", text: r"[h^{123}(A_{01}(A_{02}+A_{21})+A_{20})+h^{023}A_{12}]" },
];

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Open,
    Close,
    Num(i64),
    H(Vec<usize>),
    A(usize, usize),
    P,
    S,
    B,
}

fn digits(s: &[char]) -> Option<Vec<usize>> {
    s.iter().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
}

fn lex(text: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    // `{...}` after `h^` / `A_`, or a single digit
    let index = |i: &mut usize| -> Result<Vec<usize>, String> {
        if chars.get(*i) == Some(&'{') {
            let close = chars[*i..].iter().position(|&c| c == '}').ok_or("unclosed index brace")? + *i;
            let d = digits(&chars[*i + 1..close]).ok_or("non-digit index")?;
            *i = close + 1;
            Ok(d)
        } else {
            let d = chars.get(*i).and_then(|c| c.to_digit(10)).ok_or("missing index")?;
            *i += 1;
            Ok(vec![d as usize])
        }
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '(' | '[' => out.push(Token::Open),
            ')' | ']' => out.push(Token::Close),
            'p' => out.push(Token::P),
            's' => out.push(Token::S),
            'b' => out.push(Token::B),
            '{' => return Err("stray brace group".into()),
            'h' => {
                if chars.get(i + 1) != Some(&'^') {
                    return Err("bare h".into());
                }
                i += 2;
                out.push(Token::H(index(&mut i)?));
                continue;
            }
            'A' => {
                if chars.get(i + 1) != Some(&'_') {
                    return Err("bare A".into());
                }
                i += 2;
                let d = index(&mut i)?;
                if d.len() != 2 || d.iter().any(|&k| k > 3) {
                    return Err(format!("A index {d:?}"));
                }
                out.push(Token::A(d[0], d[1]));
                continue;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Num(s.parse().map_err(|_| "number")?));
                continue;
            }
            other => return Err(format!("unexpected {other:?}")),
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(i64),
    H(Vec<usize>),
    A(usize, usize),
    P,
    S,
    B,
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn sum(&mut self) -> Result<Expr, String> {
        let mut terms = Vec::new();
        let mut negative = false;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    negative = !negative;
                }
                _ => {}
            }
            terms.push((negative, self.product()?));
            negative = false;
            match self.peek() {
                Some(Token::Plus) | Some(Token::Minus) => {}
                _ => return Ok(Expr::Sum(terms)),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, String> {
        let mut factors = Vec::new();
        while let Some(t) = self.peek().cloned() {
            let f = match t {
                Token::Num(n) => Expr::Num(n),
                Token::H(d) => Expr::H(d),
                Token::A(i, j) => Expr::A(i, j),
                Token::P => Expr::P,
                Token::S => Expr::S,
                Token::B => Expr::B,
                Token::Open => {
                    self.pos += 1;
                    let inner = self.sum()?;
                    if self.peek() != Some(&Token::Close) {
                        return Err("unbalanced brackets".into());
                    }
                    inner
                }
                _ => break,
            };
            self.pos += 1;
            factors.push(f);
        }
        if factors.is_empty() {
            return Err("empty factor".into());
        }
        Ok(Expr::Product(factors))
    }
}

fn parse(text: &str) -> Result<Expr, String> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err("unbalanced brackets".into());
    }
    Ok(e)
}

/// Values of the symbols at one sample point.
struct Point {
    h: Multivector<Exact>,
    a: AntisymmetricForm<Exact>,
    s: Complex<Exact>,
}

/// Evaluates; `b` is read as the scalar coefficient of `ψ`, the one
/// coefficient the printed lines never name otherwise.
fn eval(e: &Expr, pt: &Point, notes: &mut Vec<&'static str>) -> Complex<Exact> {
    match e {
        Expr::Num(n) => Complex::new(Exact::from_i64(*n), Exact::zero()),
        Expr::H(d) => match Blade::from_indices(d) {
            Ok(Some((sign, b))) => pt.h.get(b) * Exact::from_i64(sign as i64),
            _ => {
                notes.push("repeated or invalid h index read as 0");
                Complex::zero()
            }
        },
        Expr::A(i, j) => Complex::new(qcliff_core::BilinearForm::entry(&pt.a, *i, *j), Exact::zero()),
        Expr::P => pt.h.get(Blade::PSEUDOSCALAR),
        Expr::S => pt.s.clone(),
        Expr::B => {
            notes.push("b read as the scalar coefficient of ψ");
            pt.h.get(Blade::SCALAR)
        }
        Expr::Sum(ts) => ts.iter().fold(Complex::zero(), |acc, (neg, t)| {
            let v = eval(t, pt, notes);
            if *neg { acc - v } else { acc + v }
        }),
        Expr::Product(fs) => fs.iter().fold(Complex::one(), |acc, f| acc * eval(f, pt, notes)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Negated,
    /// Some orders in `A` agree, others do not.
    PartialMatch,
    Mismatch,
    Unparseable,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineReport {
    pub term: char,
    pub blade: String,
    pub text: &'static str,
    pub verdict: Verdict,
    /// Parse failure reason, if any.
    pub reason: Option<String>,
    /// Orders in `A` (at any sample point) where the two sides agree and at
    /// least one is nonzero.
    pub agreeing_orders: Vec<usize>,
    /// Orders in `A` where the two sides differ.
    pub differing_orders: Vec<usize>,
    /// Orders in `A` present on each side.
    pub printed_orders: Vec<usize>,
    pub engine_orders: Vec<usize>,
    /// Other terms whose coefficient this line matches exactly.
    pub matches_other_terms: Vec<char>,
    pub notes: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixReport {
    pub seed: u64,
    pub points: usize,
    pub lines: Vec<LineReport>,
    pub parsed: usize,
    pub matched: usize,
    pub partial: usize,
    /// Parsed lines whose orders in `A` are those of the engine.
    pub same_orders: usize,
    pub unparseable: usize,
}

/// Largest order in `A` of any coefficient on either side is well below this.
const ORDERS: usize = 10;

type Poly = Vec<Complex<Exact>>;

/// Coefficients in `t` of the polynomial taking `values[k]` at `t = k`.
fn interpolate(values: &[Complex<Exact>]) -> Poly {
    let n = values.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (dd[k].clone() - dd[k - 1].clone()) * Exact::ratio(1, level as i64);
        }
    }
    let mut poly: Poly = vec![dd[n - 1].clone()];
    for k in (0..n - 1).rev() {
        // poly * (t - k) + dd[k]
        let mut next = vec![Complex::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d + 1] = next[d + 1].clone() + c.clone();
            next[d] = next[d].clone() - c.clone() * Exact::from_i64(k as i64);
        }
        next[0] = next[0].clone() + dd[k].clone();
        poly = next;
    }
    poly
}

/// One base point `(h, A)` with `A` scaled by `t = 0..=ORDERS`.
struct Ray {
    points: Vec<Point>,
    parts: Vec<[Multivector<Exact>; 4]>,
}

fn sample_rays(seed: u64, n: usize) -> Vec<Ray> {
    let minus_4i = Complex::new(Exact::zero(), Exact::from_i64(-4));
    (0..n)
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            let h = random_dense_multivector(&mut rng, false);
            let a0 = random_a_exact(&mut rng);
            let mut ray = Ray { points: Vec::new(), parts: Vec::new() };
            for t in 0..=ORDERS {
                let a = AntisymmetricForm::from_upper(a0.upper().map(|x| x * Exact::from_i64(t as i64)));
                let qc = QuantumClifford::minkowski_plus(a.clone());
                let fb = idempotent_f_b(qc.b_engine());
                let bs = build_b_element(&h, &a);
                ray.parts.push(decompose_b_spinor(qc.b_engine(), &bs, &fb).map(|x| x.scale(&minus_4i)));
                ray.points.push(Point { h: h.clone(), a, s: bs.s.clone() });
            }
            ray
        })
        .collect()
}

/// Engine coefficient of the printed blade (label order may be non-canonical).
fn engine_value(parts: &[Multivector<Exact>; 4], term: usize, label: &str) -> Complex<Exact> {
    let idx: Vec<usize> = label.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect();
    match Blade::from_indices(&idx) {
        Ok(Some((sign, b))) => parts[term].get(b) * Exact::from_i64(sign as i64),
        _ => Complex::zero(),
    }
}

/// Orders with a nonzero coefficient in any of the polynomials.
fn orders(polys: &[Poly]) -> Vec<usize> {
    (0..=ORDERS).filter(|&d| polys.iter().any(|p| !p[d].is_zero())).collect()
}

/// Compares two sets of per-ray polynomials order by order.
fn compare_orders(lhs: &[Poly], rhs: &[Poly]) -> (Vec<usize>, Vec<usize>) {
    let mut agree = Vec::new();
    let mut differ = Vec::new();
    for d in 0..=ORDERS {
        let mut nonzero = false;
        let mut equal = true;
        for (l, r) in lhs.iter().zip(rhs) {
            nonzero |= !l[d].is_zero() || !r[d].is_zero();
            equal &= l[d] == r[d];
        }
        if !equal {
            differ.push(d);
        } else if nonzero {
            agree.push(d);
        }
    }
    (agree, differ)
}

pub fn diff(seed: u64, points: usize) -> AppendixReport {
    let rays = sample_rays(seed, points);
    let mut lines = Vec::new();
    for line in LINES {
        let mut report = LineReport {
            term: line.term,
            blade: if line.blade.is_empty() { "1".into() } else { format!("γ{}", line.blade) },
            text: line.text,
            verdict: Verdict::Unparseable,
            reason: None,
            agreeing_orders: Vec::new(),
            differing_orders: Vec::new(),
            printed_orders: Vec::new(),
            engine_orders: Vec::new(),
            matches_other_terms: Vec::new(),
            notes: Vec::new(),
        };
        let expr = match parse(line.text) {
            Ok(e) => e,
            Err(r) => {
                report.reason = Some(r);
                lines.push(report);
                continue;
            }
        };
        let mut notes = Vec::new();
        let sign = Exact::from_i64(line.sign as i64);
        let mut printed: Vec<Poly> = Vec::new();
        let mut engine: [Vec<Poly>; 4] = Default::default();
        for ray in &rays {
            let vals: Vec<_> = ray.points.iter().map(|pt| eval(&expr, pt, &mut notes) * sign.clone()).collect();
            printed.push(interpolate(&vals));
            for (t, slot) in engine.iter_mut().enumerate() {
                let vals: Vec<_> = ray.parts.iter().map(|p| engine_value(p, t, line.blade)).collect();
                slot.push(interpolate(&vals));
            }
        }
        notes.sort_unstable();
        notes.dedup();
        let own = &engine[term_index(line.term)];
        let negated: Vec<Poly> = own.iter().map(|p| p.iter().map(|c| -c.clone()).collect()).collect();
        let (agree, differ) = compare_orders(&printed, own);
        report.verdict = if differ.is_empty() {
            Verdict::Match
        } else if printed == negated {
            Verdict::Negated
        } else if !agree.is_empty() {
            Verdict::PartialMatch
        } else {
            Verdict::Mismatch
        };
        report.agreeing_orders = agree;
        report.differing_orders = differ;
        report.printed_orders = orders(&printed);
        report.engine_orders = orders(own);
        for t in ['a', 'b', 'c', 'd'] {
            if t != line.term && printed == engine[term_index(t)] {
                report.matches_other_terms.push(t);
            }
        }
        report.notes = notes;
        lines.push(report);
    }
    let count = |v: Verdict| lines.iter().filter(|l| l.verdict == v).count();
    let (matched, partial, unparseable) = (count(Verdict::Match), count(Verdict::PartialMatch), count(Verdict::Unparseable));
    let same_orders =
        lines.iter().filter(|l| l.verdict != Verdict::Unparseable && l.printed_orders == l.engine_orders).count();
    AppendixReport { seed, points, parsed: lines.len() - unparseable, matched, partial, same_orders, unparseable, lines }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parser_accepts_and_rejects() {
        assert!(parse("h^{01}(A_{01}+A_{20})+2p").is_ok());
        assert!(parse("[h^3A_{12}]").is_ok());
        assert!(parse("A_{01}{32}").is_err());
        assert!(parse("(A_{01}+A_{02}))").is_err());
        assert!(parse("(A_{01}").is_err());
        assert!(parse("A_{0}").is_err());
    }

    #[test]
    fn evaluation() {
        let pt = Point {
            h: Multivector::from_terms([(Blade::new(0b0011).unwrap(), Complex::new(Exact::from_i64(2), Exact::zero()))]),
            a: AntisymmetricForm::from_upper([Exact::from_i64(3), Exact::zero(), Exact::zero(), Exact::zero(), Exact::zero(), Exact::zero()]),
            s: Complex::zero(),
        };
        let mut notes = Vec::new();
        // h^{10} = -h^{01} = -2, A_{10} = -3
        let v = eval(&parse("h^{10}A_{10}+1").unwrap(), &pt, &mut notes);
        assert_eq!(v, Complex::new(Exact::from_i64(7), Exact::zero()));
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let c = |n: i64| Complex::new(Exact::from_i64(n), Exact::zero());
        // 2 - 3t + t^3
        let vals: Vec<_> = (0..6).map(|t: i64| c(2 - 3 * t + t * t * t)).collect();
        assert_eq!(interpolate(&vals), vec![c(2), c(-3), c(0), c(1), c(0), c(0)]);
    }

    #[test]
    fn every_line_is_reported() {
        let r = diff(1, 2);
        assert_eq!(r.lines.len(), LINES.len());
        assert!(r.unparseable > 0);
    }
}
