//! Plain-text instance formats.
//!
//! Every format ignores blank lines and `#` comments. Rationals are written
//! as `-3/7` or `2`. Vectors are either space-separated coordinates or a
//! parenthesized, comma-separated literal such as `(1/2, 0, -1)`.
//!
//! Cone files:
//!
//! ```text
//! dim 2
//! vrep            # or: hrep, or: union K
//! 1 0
//! 0 1
//! ```
//!
//! A `union K` header is followed by `K` blocks, each `part M` and `M`
//! generator lines.
//!
//! Family files: `dim N`, then either `wholespace` or `family M` followed by
//! `M` blocks `set S` with `S` vector lines.
//!
//! System files: `dim N`, then one row per line, `GE`, `GT` or `EQ`
//! followed by the coefficients, meaning `<row, y> >= 0`, `> 0` or `= 0`.
//!
//! Relation files: `lotteries m` or `acts omega m`, then lines
//! `pref: <object> | <object>` and `npref: <object> | <object>`. A lottery
//! is a vector literal; an act is its state rows separated by `;`.

use std::fmt::Write as _;

use crate::cone::{ConeH, ConeV, UnionConeV};
use crate::decision::{Act, Ground, Lottery, PreferenceData};
use crate::error::{Error, Result};
use crate::family::RepFamily;
use crate::feasibility::{LinIneqSystem, Relation};
use crate::linalg::{parse_rational, Vector};

/// Significant lines with their 1-based line numbers.
fn lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { lines: lines(text), pos: 0 }
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |(n, _)| *n)
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let item = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| Error::parse(self.last_line(), format!("unexpected end of input, expected {what}")))?;
        self.pos += 1;
        Ok(item)
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some((n, l)) => Err(Error::parse(n, format!("unexpected trailing line {l:?}"))),
        }
    }

    fn keyword_count(&mut self, keyword: &str) -> Result<(usize, usize)> {
        let (n, l) = self.next(&format!("\"{keyword} <count>\""))?;
        Ok((n, parse_keyword_count(n, l, keyword)?))
    }

    fn vector(&mut self, dim: usize) -> Result<Vector> {
        let (n, l) = self.next("a vector line")?;
        let v = parse_vector_at(n, l)?;
        if v.dim() != dim {
            return Err(Error::parse(n, format!("expected {dim} coordinates, found {}", v.dim())));
        }
        Ok(v)
    }
}

fn parse_keyword_count(line: usize, text: &str, keyword: &str) -> Result<usize> {
    let mut words = text.split_whitespace();
    if words.next() != Some(keyword) {
        return Err(Error::parse(line, format!("expected \"{keyword} <count>\", found {text:?}")));
    }
    let count = words
        .next()
        .and_then(|w| w.parse::<usize>().ok())
        .ok_or_else(|| Error::parse(line, format!("\"{keyword}\" needs a nonnegative integer")))?;
    if words.next().is_some() {
        return Err(Error::parse(line, format!("trailing text after \"{keyword} {count}\"")));
    }
    Ok(count)
}

fn parse_dim(cur: &mut Cursor<'_>) -> Result<usize> {
    let (n, dim) = cur.keyword_count("dim")?;
    if dim == 0 {
        return Err(Error::parse(n, "dimension must be positive"));
    }
    Ok(dim)
}

fn parse_vector_at(line: usize, text: &str) -> Result<Vector> {
    let t = text.trim();
    let inner = match (t.strip_prefix('('), t.ends_with(')')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => t,
        _ => return Err(Error::parse(line, format!("unbalanced parentheses in {t:?}"))),
    };
    let tokens: Vec<&str> = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if tokens.is_empty() {
        return Err(Error::parse(line, "empty vector"));
    }
    tokens
        .iter()
        .map(|tok| parse_rational(tok).ok_or_else(|| Error::parse(line, format!("bad rational {tok:?}"))))
        .collect::<Result<Vec<_>>>()
        .map(Vector::new)
}

/// Parses a single vector literal such as `(1, 0, -1/2)` or `1 0 -1/2`.
pub fn parse_vector(text: &str) -> Result<Vector> {
    parse_vector_at(1, text)
}

/// One vector per line, all of the same dimension.
pub fn parse_vector_list(text: &str) -> Result<Vec<Vector>> {
    let mut out: Vec<Vector> = Vec::new();
    for (n, l) in lines(text) {
        let v = parse_vector_at(n, l)?;
        if let Some(first) = out.first() {
            if first.dim() != v.dim() {
                return Err(Error::parse(n, format!("expected {} coordinates, found {}", first.dim(), v.dim())));
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Coordinates separated by single spaces, the line format of instance files.
pub fn vector_line(v: &Vector) -> String {
    v.coords().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// A cone as read from a file: generators, halfspace normals, or a union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeFile {
    V(ConeV),
    H(ConeH),
    Union(UnionConeV),
}

impl ConeFile {
    pub fn dim(&self) -> usize {
        match self {
            ConeFile::V(c) => c.dim(),
            ConeFile::H(c) => c.dim(),
            ConeFile::Union(c) => c.dim(),
        }
    }

    /// The convex cone described, in generator form. A union qualifies only
    /// when it has a single part.
    pub fn to_v(&self) -> Result<ConeV> {
        match self {
            ConeFile::V(c) => Ok(c.clone()),
            ConeFile::H(c) => Ok(c.to_v()),
            ConeFile::Union(u) if u.parts().len() == 1 => Ok(u.parts()[0].clone()),
            ConeFile::Union(_) => Err(Error::precondition(
                "convex cone input",
                "this operation needs a single convex cone, not a union",
            )),
        }
    }

    pub fn to_h(&self) -> Result<ConeH> {
        match self {
            ConeFile::H(c) => Ok(c.clone()),
            other => Ok(other.to_v()?.to_h()),
        }
    }

    pub fn to_union(&self) -> Result<UnionConeV> {
        match self {
            ConeFile::Union(u) => Ok(u.clone()),
            other => UnionConeV::new(other.dim(), vec![other.to_v()?]),
        }
    }
}

pub fn parse_cone(text: &str) -> Result<ConeFile> {
    let mut cur = Cursor::new(text);
    let dim = parse_dim(&mut cur)?;
    let (n, kind) = cur.next("\"vrep\", \"hrep\" or \"union K\"")?;
    let file = match kind {
        "vrep" | "hrep" => {
            let mut vs = Vec::new();
            while cur.peek().is_some() {
                vs.push(cur.vector(dim)?);
            }
            if kind == "vrep" {
                ConeFile::V(ConeV::new(dim, vs)?)
            } else {
                ConeFile::H(ConeH::new(dim, vs)?)
            }
        }
        _ => {
            let k = parse_keyword_count(n, kind, "union")?;
            let mut parts = Vec::with_capacity(k);
            for _ in 0..k {
                let (_, m) = cur.keyword_count("part")?;
                let gens = (0..m).map(|_| cur.vector(dim)).collect::<Result<Vec<_>>>()?;
                parts.push(ConeV::new(dim, gens)?);
            }
            ConeFile::Union(UnionConeV::new(dim, parts).map_err(|e| Error::parse(n, e.to_string()))?)
        }
    };
    cur.finish()?;
    Ok(file)
}

pub fn write_cone(cone: &ConeFile) -> String {
    let mut out = format!("dim {}\n", cone.dim());
    match cone {
        ConeFile::V(c) => {
            out.push_str("vrep\n");
            push_lines(&mut out, c.generators());
        }
        ConeFile::H(c) => {
            out.push_str("hrep\n");
            push_lines(&mut out, c.normals());
        }
        ConeFile::Union(u) => {
            let _ = writeln!(out, "union {}", u.parts().len());
            for p in u.parts() {
                let _ = writeln!(out, "part {}", p.generators().len());
                push_lines(&mut out, p.generators());
            }
        }
    }
    out
}

fn push_lines(out: &mut String, vs: &[Vector]) {
    for v in vs {
        out.push_str(&vector_line(v));
        out.push('\n');
    }
}

pub fn parse_family(text: &str) -> Result<RepFamily> {
    let mut cur = Cursor::new(text);
    let dim = parse_dim(&mut cur)?;
    if let Some((_, "wholespace")) = cur.peek() {
        cur.next("wholespace")?;
        cur.finish()?;
        return Ok(RepFamily::whole_space(dim));
    }
    let (n, m) = cur.keyword_count("family")?;
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let (_, s) = cur.keyword_count("set")?;
        sets.push((0..s).map(|_| cur.vector(dim)).collect::<Result<Vec<_>>>()?);
    }
    cur.finish()?;
    RepFamily::new(dim, sets).map_err(|e| Error::parse(n, e.to_string()))
}

pub fn write_family(family: &RepFamily) -> String {
    let mut out = format!("dim {}\n", family.dim());
    if family.is_whole_space() {
        out.push_str("wholespace\n");
        return out;
    }
    let _ = writeln!(out, "family {}", family.sets().len());
    for set in family.sets() {
        let _ = writeln!(out, "set {}", set.len());
        push_lines(&mut out, set);
    }
    out
}

pub fn parse_system(text: &str) -> Result<LinIneqSystem> {
    let mut cur = Cursor::new(text);
    let dim = parse_dim(&mut cur)?;
    let mut sys = LinIneqSystem::empty(dim);
    while let Some((n, l)) = cur.peek() {
        cur.pos += 1;
        let (tag, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rel = match tag {
            "GE" => Relation::Ge,
            "GT" => Relation::Gt,
            "EQ" => Relation::Eq,
            _ => return Err(Error::parse(n, format!("expected GE, GT or EQ, found {tag:?}"))),
        };
        let row = parse_vector_at(n, rest)?;
        if row.dim() != dim {
            return Err(Error::parse(n, format!("expected {dim} coordinates, found {}", row.dim())));
        }
        sys.push(row, rel)?;
    }
    Ok(sys)
}

pub fn write_system(sys: &LinIneqSystem) -> String {
    let mut out = format!("dim {}\n", sys.dim());
    for (row, rel) in sys.rows() {
        let _ = writeln!(out, "{rel} {}", vector_line(row));
    }
    out
}

fn parse_lottery_at(line: usize, text: &str, m: usize) -> Result<Lottery> {
    let v = parse_vector_at(line, text)?;
    if v.dim() != m {
        return Err(Error::parse(line, format!("expected a lottery on {m} outcomes, found {}", v.dim())));
    }
    Lottery::new(v.into_coords()).map_err(|e| Error::parse(line, e.to_string()))
}

fn parse_act_at(line: usize, text: &str, omega_count: usize, m: usize) -> Result<Act> {
    let rows = text
        .split(';')
        .map(|r| parse_lottery_at(line, r, m))
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != omega_count {
        return Err(Error::parse(line, format!("expected {omega_count} state rows, found {}", rows.len())));
    }
    Act::new(rows).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parses a lottery literal such as `(1/2, 1/4, 1/4)`.
pub fn parse_lottery(text: &str, m: usize) -> Result<Lottery> {
    parse_lottery_at(1, text, m)
}

/// Parses an act literal: state rows separated by `;`.
pub fn parse_act(text: &str, omega_count: usize, m: usize) -> Result<Act> {
    parse_act_at(1, text, omega_count, m)
}

pub fn parse_relation(text: &str) -> Result<PreferenceData> {
    let mut cur = Cursor::new(text);
    let (n, header) = cur.next("\"lotteries m\" or \"acts omega m\"")?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let count = |w: &str| {
        w.parse::<usize>()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| Error::parse(n, format!("expected a positive integer, found {w:?}")))
    };
    let mut data = match words.as_slice() {
        ["lotteries", m] => PreferenceData::lotteries(count(m)?),
        ["acts", omega, m] => PreferenceData::acts(count(omega)?, count(m)?),
        _ => return Err(Error::parse(n, format!("bad relation header {header:?}"))),
    };
    while let Some((n, l)) = cur.peek() {
        cur.pos += 1;
        let (asserted, rest) = if let Some(rest) = l.strip_prefix("pref:") {
            (true, rest)
        } else if let Some(rest) = l.strip_prefix("npref:") {
            (false, rest)
        } else {
            return Err(Error::parse(n, format!("expected \"pref:\" or \"npref:\", found {l:?}")));
        };
        let Some((lhs, rhs)) = rest.split_once('|') else {
            return Err(Error::parse(n, "expected \"<object> | <object>\""));
        };
        let at = |e: Error| Error::parse(n, e.to_string());
        match data.ground() {
            Ground::Lotteries { m } => {
                let (p, q) = (parse_lottery_at(n, lhs, m)?, parse_lottery_at(n, rhs, m)?);
                if asserted { data.prefer(&p, &q) } else { data.deny(&p, &q) }.map_err(at)?;
            }
            Ground::Acts { omega_count, m } => {
                let (f, g) = (parse_act_at(n, lhs, omega_count, m)?, parse_act_at(n, rhs, omega_count, m)?);
                if asserted { data.prefer_act(&f, &g) } else { data.deny_act(&f, &g) }.map_err(at)?;
            }
        }
    }
    Ok(data)
}

fn object_literal(v: &Vector, ground: Ground) -> String {
    match ground {
        Ground::Lotteries { .. } => v.to_string(),
        Ground::Acts { m, .. } => v
            .coords()
            .chunks(m)
            .map(|row| Vector::new(row.to_vec()).to_string())
            .collect::<Vec<_>>()
            .join("; "),
    }
}

pub fn write_relation(data: &PreferenceData) -> String {
    let mut out = match data.ground() {
        Ground::Lotteries { m } => format!("lotteries {m}\n"),
        Ground::Acts { omega_count, m } => format!("acts {omega_count} {m}\n"),
    };
    for (tag, pairs) in [("pref", data.asserted()), ("npref", data.denied())] {
        for (a, b) in pairs {
            let _ = writeln!(
                out,
                "{tag}: {} | {}",
                object_literal(a, data.ground()),
                object_literal(b, data.ground())
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use proptest::prelude::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn vector_literals() {
        assert_eq!(parse_vector("(1, 0, -1/2)").unwrap(), Vector::new(vec![rat(1, 1), rat(0, 1), rat(-1, 2)]));
        assert_eq!(parse_vector("1 0").unwrap(), v(&[1, 0]));
        assert_eq!(parse_vector("(1,0)").unwrap(), v(&[1, 0]));
        assert!(parse_vector("(1, 0").is_err());
        assert!(parse_vector("1 x").is_err());
        assert!(parse_vector("()").is_err());
        assert!(parse_vector("1/0").is_err());
    }

    #[test]
    fn cone_files() {
        let c = parse_cone("# orthant\ndim 2\nvrep\n1 0\n0 1\n").unwrap();
        assert_eq!(c, ConeFile::V(ConeV::new(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap()));
        let h = parse_cone("dim 2\nhrep\n1 1\n").unwrap();
        assert!(matches!(h, ConeFile::H(_)));
        let u = parse_cone("dim 2\nunion 2\npart 1\n1 0\npart 1\n0 1\n").unwrap();
        assert_eq!(u.to_union().unwrap().parts().len(), 2);
        assert!(u.to_v().is_err());
    }

    #[test]
    fn cone_parse_errors_carry_lines() {
        let err = parse_cone("dim 2\nvrep\n1 0\n1 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_cone("dim 2\nweird\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_cone("dim 2\nunion 2\npart 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(matches!(parse_cone("").unwrap_err(), Error::Parse { line: 1, .. }));
    }

    #[test]
    fn family_files() {
        let f = parse_family("dim 2\nfamily 2\nset 2\n1 0\n-1 0\nset 1\n0 1\n").unwrap();
        assert_eq!(f.sets().len(), 2);
        assert!(parse_family("dim 3\nwholespace\n").unwrap().is_whole_space());
        assert!(parse_family("dim 2\nfamily 1\nset 0\n").unwrap().is_whole_space());
        assert!(parse_family("dim 2\nfamily 2\nset 0\nset 1\n1 0\n").is_err());
    }

    #[test]
    fn system_files() {
        let sys = parse_system("dim 2\nGT -1 0\nGE 1 1\nEQ 0 1/2\n").unwrap();
        assert_eq!(sys.rows().len(), 3);
        assert_eq!(parse_system(&write_system(&sys)).unwrap(), sys);
        assert!(matches!(parse_system("dim 2\nLT 1 0\n").unwrap_err(), Error::Parse { line: 2, .. }));
    }

    #[test]
    fn relation_files() {
        let text = "lotteries 3\npref: (1, 0, 0) | (0, 1, 0)\npref: (0, 1, 0) | (0, 0, 1)\nnpref: (0,0,1) | (1/2, 1/4, 1/4)\n";
        let data = parse_relation(text).unwrap();
        assert_eq!(data.asserted().len(), 2);
        assert_eq!(data.denied().len(), 1);
        assert_eq!(parse_relation(&write_relation(&data)).unwrap(), data);

        let acts = "acts 2 2\npref: (1, 0); (0, 1) | (0, 1); (1, 0)\n";
        let data = parse_relation(acts).unwrap();
        assert_eq!(data.asserted()[0].0, v(&[1, 0, 0, 1]));
        assert_eq!(parse_relation(&write_relation(&data)).unwrap(), data);

        let err = parse_relation("lotteries 2\npref: (1, 1) | (0, 1)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_relation("acts 2 2\npref: (1, 0) | (0, 1)\n").is_err());
    }

    fn arb_vectors(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vector>> {
        prop::collection::vec(
            prop::collection::vec((-9i64..=9, 1i64..=4), dim)
                .prop_map(|c| Vector::new(c.into_iter().map(|(p, q)| rat(p, q)).collect())),
            1..=max,
        )
    }

    proptest! {
        #[test]
        fn cone_and_family_round_trip(
            (dim, gens) in (1usize..=4).prop_flat_map(|d| (Just(d), arb_vectors(d, 5))),
            chunk in 1usize..=3,
        ) {
            let cone = ConeFile::V(ConeV::new(dim, gens.clone()).unwrap());
            prop_assert_eq!(parse_cone(&write_cone(&cone)).unwrap(), cone);
            let h = ConeFile::H(ConeH::new(dim, gens.clone()).unwrap());
            prop_assert_eq!(parse_cone(&write_cone(&h)).unwrap(), h);
            let u = ConeFile::Union(UnionConeV::new(
                dim,
                gens.chunks(chunk).map(|c| ConeV::new(dim, c.to_vec()).unwrap()).collect(),
            ).unwrap());
            prop_assert_eq!(parse_cone(&write_cone(&u)).unwrap(), u);
            let family = RepFamily::new(dim, gens.chunks(chunk).map(<[Vector]>::to_vec).collect()).unwrap();
            prop_assert_eq!(parse_family(&write_family(&family)).unwrap(), family);
        }

        #[test]
        fn vector_round_trip(vs in arb_vectors(3, 1)) {
            let x = &vs[0];
            prop_assert_eq!(&parse_vector(&x.to_string()).unwrap(), x);
            prop_assert_eq!(&parse_vector(&vector_line(x)).unwrap(), x);
        }
    }
}
