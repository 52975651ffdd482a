//! Line-oriented text format for codes.
//!
//! ```text
//! msrd-code 1
//! field p=3 e=1 m=2 submod=0,1 extmod=1,0,1
//! profile (2,2) (2,2)
//! meta construction=lrs
//! partition 2 2
//! generator 2
//! 1 3 1 3
//! 1 6 4 7
//! ```
//!
//! A GF(q)-linear code replaces the last three lines by `basis <k>` and `k`
//! tuples separated by blank lines; each block is `m_i` lines of `n_i`
//! element codes and blocks are separated by a `;` line. `field` may carry
//! `gamma=<codes>` for a non-polynomial basis; `meta` lines are optional
//! `key=value` pairs kept verbatim.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::codes::{FqLinearCode, FqmLinearCode};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::sumrank::{BlockProfile, LengthPartition, Matrix, MatrixTuple};

pub const HEADER: &str = "msrd-code 1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeBody {
    Generator(FqmLinearCode),
    Basis(FqLinearCode),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub body: CodeBody,
    pub meta: Vec<(String, String)>,
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>, sep: &str) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl CodeFile {
    pub fn generator(code: FqmLinearCode) -> Self {
        CodeFile {
            body: CodeBody::Generator(code),
            meta: Vec::new(),
        }
    }

    pub fn basis(code: FqLinearCode) -> Self {
        CodeFile {
            body: CodeBody::Basis(code),
            meta: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        match &self.body {
            CodeBody::Generator(c) => c.tower(),
            CodeBody::Basis(c) => c.tower(),
        }
    }

    /// The GF(q)-linear view, converting a generator body if needed.
    pub fn fq_linear(&self) -> FqLinearCode {
        match &self.body {
            CodeBody::Generator(c) => c.to_fq_linear(),
            CodeBody::Basis(c) => c.clone(),
        }
    }

    pub fn serialize(&self) -> String {
        let tw = self.tower();
        let mut out = String::new();
        writeln!(out, "{HEADER}").unwrap();
        write!(
            out,
            "field p={} e={} m={} submod={} extmod={}",
            tw.p(),
            tw.e(),
            tw.m(),
            join(tw.sub_modulus(), ","),
            join(tw.ext_modulus(), ",")
        )
        .unwrap();
        if !tw.has_polynomial_basis() {
            write!(out, " gamma={}", join(tw.gamma().iter().map(|g| g.code()), ",")).unwrap();
        }
        out.push('\n');
        let profile = match &self.body {
            CodeBody::Generator(c) => c.profile(),
            CodeBody::Basis(c) => c.profile().clone(),
        };
        writeln!(out, "profile {profile}").unwrap();
        for (k, v) in &self.meta {
            writeln!(out, "meta {k}={v}").unwrap();
        }
        match &self.body {
            CodeBody::Generator(c) => {
                writeln!(out, "partition {}", join(c.partition().parts(), " ")).unwrap();
                writeln!(out, "generator {}", c.dim()).unwrap();
                for row in c.genmat() {
                    writeln!(out, "{}", join(row.iter().map(|x| x.code()), " ")).unwrap();
                }
            }
            CodeBody::Basis(c) => {
                writeln!(out, "basis {}", c.dim()).unwrap();
                for (i, b) in c.basis().iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    for (j, blk) in b.blocks().iter().enumerate() {
                        if j > 0 {
                            out.push_str(";\n");
                        }
                        for r in 0..blk.rows() {
                            writeln!(out, "{}", join(blk.row(r), " ")).unwrap();
                        }
                    }
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<CodeFile> {
        Parser::new(text).file()
    }
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| perr(line, format!("bad number {s:?}")))
}

fn parse_list(line: usize, s: &str, sep: char) -> Result<Vec<u32>> {
    s.split(sep).filter(|x| !x.is_empty()).map(|x| parse_num(line, x)).collect()
}

/// `(m,n) (m,n) ...`
pub fn parse_profile(s: &str) -> std::result::Result<Vec<(usize, usize)>, String> {
    s.split_whitespace()
        .map(|tok| {
            let inner = tok
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| format!("bad block {tok:?}"))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| format!("bad block {tok:?}"))?;
            let a = a.trim().parse().map_err(|_| format!("bad block {tok:?}"))?;
            let b = b.trim().parse().map_err(|_| format!("bad block {tok:?}"))?;
            Ok((a, b))
        })
        .collect()
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            lines: text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end())).collect(),
            pos: 0,
        }
    }

    fn last_line(&self) -> usize {
        self.lines.len() + 1
    }

    fn next(&mut self) -> Result<(usize, &'a str)> {
        let item = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| perr(self.last_line(), "unexpected end of file"))?;
        self.pos += 1;
        Ok(item)
    }

    fn keyword(&mut self, kw: &str) -> Result<(usize, &'a str)> {
        let (ln, l) = self.next()?;
        match l.strip_prefix(kw).and_then(|r| r.strip_prefix(' ')) {
            Some(rest) => Ok((ln, rest)),
            None => Err(perr(ln, format!("expected `{kw}`"))),
        }
    }

    fn file(&mut self) -> Result<CodeFile> {
        let (ln, l) = self.next()?;
        if l != HEADER {
            return Err(perr(ln, format!("expected `{HEADER}`")));
        }
        let tower = Arc::new(self.field()?);
        let (ln, rest) = self.keyword("profile")?;
        let profile = BlockProfile::new(parse_profile(rest).map_err(|e| perr(ln, e))?)
            .map_err(|e| perr(ln, e.to_string()))?;
        let mut meta = Vec::new();
        while self.lines.get(self.pos).is_some_and(|(_, l)| l.starts_with("meta ")) {
            let (ln, rest) = self.keyword("meta")?;
            let (k, v) = rest.split_once('=').ok_or_else(|| perr(ln, "meta needs key=value"))?;
            meta.push((k.to_string(), v.to_string()));
        }
        let (ln, l) = self.next()?;
        let body = if let Some(rest) = l.strip_prefix("partition ") {
            let parts: Vec<usize> = rest.split_whitespace().map(|x| parse_num(ln, x)).collect::<Result<_>>()?;
            let partition = LengthPartition::new(parts, tower.m()).map_err(|e| perr(ln, e.to_string()))?;
            if partition.profile() != profile {
                return Err(perr(ln, "partition does not match profile"));
            }
            let (ln, rest) = self.keyword("generator")?;
            let k: usize = parse_num(ln, rest)?;
            let mut genmat = Vec::with_capacity(k);
            for _ in 0..k {
                let (ln, l) = self.next()?;
                let row = l
                    .split_whitespace()
                    .map(|x| tower.element(parse_num(ln, x)?).map_err(|e| perr(ln, e.to_string())))
                    .collect::<Result<Vec<FieldElement>>>()?;
                genmat.push(row);
            }
            CodeBody::Generator(
                FqmLinearCode::new(tower.clone(), partition, genmat).map_err(|e| perr(ln, e.to_string()))?,
            )
        } else if let Some(rest) = l.strip_prefix("basis ") {
            let k: usize = parse_num(ln, rest)?;
            let mut basis = Vec::with_capacity(k);
            for i in 0..k {
                if i > 0 {
                    let (ln, l) = self.next()?;
                    if !l.is_empty() {
                        return Err(perr(ln, "expected a blank line between tuples"));
                    }
                }
                basis.push(self.tuple(&profile, tower.q())?);
            }
            CodeBody::Basis(
                FqLinearCode::new(tower.clone(), profile, basis).map_err(|e| perr(ln, e.to_string()))?,
            )
        } else {
            return Err(perr(ln, "expected `partition` or `basis`"));
        };
        if let Some((ln, l)) = self.lines[self.pos..].iter().find(|(_, l)| !l.trim().is_empty()) {
            return Err(perr(*ln, format!("trailing content {l:?}")));
        }
        Ok(CodeFile { body, meta })
    }

    fn field(&mut self) -> Result<FieldTower> {
        let (ln, rest) = self.keyword("field")?;
        let mut p = None;
        let mut e = None;
        let mut m = None;
        let mut sub = None;
        let mut ext = None;
        let mut gamma = None;
        for tok in rest.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| perr(ln, format!("bad field entry {tok:?}")))?;
            match k {
                "p" => p = Some(parse_num::<u32>(ln, v)?),
                "e" => e = Some(parse_num::<u32>(ln, v)?),
                "m" => m = Some(parse_num::<usize>(ln, v)?),
                "submod" => sub = Some(parse_list(ln, v, ',')?),
                "extmod" => ext = Some(parse_list(ln, v, ',')?),
                "gamma" => gamma = Some(parse_list(ln, v, ',')?),
                _ => return Err(perr(ln, format!("unknown field key {k:?}"))),
            }
        }
        let missing = |name: &str| perr(ln, format!("field line lacks {name}"));
        let tower = FieldTower::with_moduli(
            p.ok_or_else(|| missing("p"))?,
            e.ok_or_else(|| missing("e"))?,
            m.ok_or_else(|| missing("m"))?,
            sub.ok_or_else(|| missing("submod"))?,
            ext.ok_or_else(|| missing("extmod"))?,
        )
        .map_err(|err| perr(ln, err.to_string()))?;
        match gamma {
            None => Ok(tower),
            Some(g) => {
                let g = g
                    .into_iter()
                    .map(|c| tower.element(c as u64))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|err| perr(ln, err.to_string()))?;
                tower.with_basis(g).map_err(|err| perr(ln, err.to_string()))
            }
        }
    }

    fn tuple(&mut self, profile: &BlockProfile, q: u32) -> Result<MatrixTuple> {
        let mut blocks = Vec::with_capacity(profile.len());
        for (j, &(m, n)) in profile.blocks().iter().enumerate() {
            if j > 0 {
                let (ln, l) = self.next()?;
                if l.trim() != ";" {
                    return Err(perr(ln, "expected `;` between blocks"));
                }
            }
            let mut rows = Vec::with_capacity(m);
            for _ in 0..m {
                let (ln, l) = self.next()?;
                let row: Vec<u32> = l.split_whitespace().map(|x| parse_num(ln, x)).collect::<Result<_>>()?;
                if row.len() != n {
                    return Err(perr(ln, format!("expected {n} entries, got {}", row.len())));
                }
                if let Some(&x) = row.iter().find(|&&x| x >= q) {
                    return Err(perr(ln, format!("element code {x} out of range for q = {q}")));
                }
                rows.push(row);
            }
            blocks.push(Matrix::from_rows(rows));
        }
        Ok(MatrixTuple::new(blocks))
    }
}
