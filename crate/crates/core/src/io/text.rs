use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use super::Document;
use crate::algebra::FinEffectAlgebra;
use crate::interval::{RationalChain, RationalScalar};
use crate::monoid::FinEffectMonoid;
use crate::omp::OrthoPoset;
use crate::poset::FinBoundedPoset;
use crate::{ElemId, Error, Result};

const HEADERS: [&str; 6] = ["poset", "omp", "effectalgebra", "effectmonoid", "map", "rchain"];

fn parse_error(line: usize, token: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        token: token.to_string(),
        message: message.into(),
    }
}

struct Line<'a> {
    no: usize,
    tokens: Vec<&'a str>,
}

impl<'a> Line<'a> {
    fn keyword(&self) -> &'a str {
        self.tokens[0]
    }

    fn expect_args(&self, n: usize) -> Result<&[&'a str]> {
        let args = &self.tokens[1..];
        if args.len() != n {
            let tok = args.get(n).or(args.last()).unwrap_or(&self.tokens[0]);
            return Err(parse_error(
                self.no,
                tok,
                format!("`{}` takes {n} argument(s), found {}", self.keyword(), args.len()),
            ));
        }
        Ok(args)
    }
}

struct Section<'a> {
    header: Line<'a>,
    body: Vec<Line<'a>>,
}

impl<'a> Section<'a> {
    fn kind(&self) -> &'a str {
        self.header.keyword()
    }

    fn name(&self) -> &'a str {
        self.header.tokens[1]
    }

    fn reject_unknown(&self, allowed: &[&str]) -> Result<()> {
        match self.body.iter().find(|l| !allowed.contains(&l.keyword())) {
            Some(l) => Err(parse_error(
                l.no,
                l.keyword(),
                format!("`{}` is not a field of `{}`", l.keyword(), self.kind()),
            )),
            None => Ok(()),
        }
    }

    fn lines(&self, key: &'a str) -> impl Iterator<Item = &Line<'a>> + '_ {
        self.body.iter().filter(move |l| l.keyword() == key)
    }

    fn single(&self, key: &'a str) -> Result<Option<&Line<'a>>> {
        let mut it = self.lines(key);
        let first = it.next();
        if let Some(dup) = it.next() {
            return Err(parse_error(dup.no, key, format!("duplicate `{key}`")));
        }
        Ok(first)
    }

    fn required(&self, key: &'a str) -> Result<&Line<'a>> {
        self.single(key)?.ok_or_else(|| {
            parse_error(
                self.header.no,
                self.name(),
                format!("{} `{}` is missing the `{key}` field", self.kind(), self.name()),
            )
        })
    }
}

struct Carrier {
    labels: Vec<String>,
    index: HashMap<String, ElemId>,
}

impl Carrier {
    fn read(sec: &Section) -> Result<Self> {
        let line = sec.required("elements")?;
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        for &tok in &line.tokens[1..] {
            if index.insert(tok.to_string(), labels.len()).is_some() {
                return Err(parse_error(line.no, tok, "duplicate element"));
            }
            labels.push(tok.to_string());
        }
        if labels.is_empty() {
            return Err(parse_error(line.no, "elements", "no elements listed"));
        }
        Ok(Carrier { labels, index })
    }

    fn id(&self, line: &Line, tok: &str) -> Result<ElemId> {
        self.index
            .get(tok)
            .copied()
            .ok_or_else(|| parse_error(line.no, tok, "unknown element"))
    }

    fn ids<const N: usize>(&self, line: &Line) -> Result<[ElemId; N]> {
        let args = line.expect_args(N)?;
        let mut out = [0; N];
        for (slot, tok) in out.iter_mut().zip(args) {
            *slot = self.id(line, tok)?;
        }
        Ok(out)
    }

    fn element(&self, sec: &Section, key: &'static str) -> Result<ElemId> {
        let [x] = self.ids::<1>(sec.required(key)?)?;
        Ok(x)
    }

    fn size(&self) -> usize {
        self.labels.len()
    }
}

/// A binary table filled from explicit lines, rejecting conflicting definitions.
struct Table {
    n: usize,
    cells: Vec<Option<(ElemId, usize)>>,
}

impl Table {
    fn new(n: usize) -> Self {
        Table {
            n,
            cells: vec![None; n * n],
        }
    }

    fn get(&self, x: ElemId, y: ElemId) -> Option<ElemId> {
        self.cells[x * self.n + y].map(|(v, _)| v)
    }

    /// `line == 0` marks an implied entry.
    fn set(&mut self, x: ElemId, y: ElemId, v: ElemId, line: usize, token: &str, explicit: bool) -> Result<()> {
        let cell = &mut self.cells[x * self.n + y];
        match *cell {
            None => {
                *cell = Some((v, line));
                Ok(())
            }
            Some((old, _)) if old != v => Err(parse_error(line, token, "conflicts with an earlier definition")),
            Some((_, prev)) if explicit && prev == line => Ok(()),
            Some(_) if explicit => Err(parse_error(line, token, "duplicate definition")),
            Some(_) => Ok(()),
        }
    }
}

fn read_poset(sec: &Section, carrier: &Carrier) -> Result<FinBoundedPoset> {
    let bottom = carrier.element(sec, "bottom")?;
    let top = carrier.element(sec, "top")?;
    let mut seen = HashSet::new();
    let mut covers = Vec::new();
    for line in sec.lines("cover") {
        let [x, y] = carrier.ids::<2>(line)?;
        if !seen.insert((x, y)) {
            return Err(parse_error(line.no, line.tokens[1], "duplicate cover"));
        }
        covers.push((x, y));
    }
    FinBoundedPoset::from_covers(carrier.labels.clone(), &covers, bottom, top)
}

/// Explicit `perp` lines plus the implied `zero ↔ one`.
fn read_perp(sec: &Section, carrier: &Carrier, zero: ElemId, one: ElemId) -> Result<Vec<Option<ElemId>>> {
    let mut perp = vec![None; carrier.size()];
    perp[zero] = Some(one);
    perp[one] = Some(zero);
    let mut explicit = HashSet::new();
    for line in sec.lines("perp") {
        let [x, y] = carrier.ids::<2>(line)?;
        if !explicit.insert(x) || (x != y && !explicit.insert(y)) {
            return Err(parse_error(line.no, line.tokens[1], "duplicate `perp`"));
        }
        for (a, b) in [(x, y), (y, x)] {
            match perp[a] {
                Some(old) if old != b => {
                    return Err(parse_error(line.no, line.tokens[1], "conflicting complement"));
                }
                _ => perp[a] = Some(b),
            }
        }
    }
    Ok(perp)
}

fn read_omp(sec: &Section, carrier: &Carrier) -> Result<OrthoPoset> {
    let poset = read_poset(sec, carrier)?;
    let perp = read_perp(sec, carrier, poset.bottom(), poset.top())?;
    let perp = complete(sec, carrier, perp)?;
    OrthoPoset::new(Arc::new(poset), perp)
}

fn complete(sec: &Section, carrier: &Carrier, perp: Vec<Option<ElemId>>) -> Result<Vec<ElemId>> {
    perp.iter()
        .enumerate()
        .map(|(x, p)| {
            p.ok_or_else(|| {
                parse_error(
                    sec.header.no,
                    &carrier.labels[x],
                    format!("no `perp` line for `{}`", carrier.labels[x]),
                )
            })
        })
        .collect()
}

fn read_effect_algebra(sec: &Section, carrier: &Carrier) -> Result<FinEffectAlgebra> {
    let n = carrier.size();
    let zero = carrier.element(sec, "zero")?;
    let one = carrier.element(sec, "one")?;
    let mut table = Table::new(n);
    let mut explicit = Vec::new();
    for line in sec.lines("sum") {
        let [x, y, z] = carrier.ids::<3>(line)?;
        table.set(x, y, z, line.no, line.tokens[1], true)?;
        explicit.push((x, y, z, line.no, line.tokens[1]));
    }
    for &(x, y, z, no, tok) in &explicit {
        table.set(y, x, z, no, tok, false)?;
    }
    for x in 0..n {
        let tok = carrier.labels[x].as_str();
        let no = sec.header.no;
        if table.get(zero, x).is_some_and(|v| v != x) || table.get(x, zero).is_some_and(|v| v != x) {
            let line = explicit
                .iter()
                .find(|&&(a, b, _, _, _)| (a == zero && b == x) || (a == x && b == zero))
                .map_or(no, |e| e.3);
            return Err(parse_error(line, tok, "sum with zero must be the other summand"));
        }
        table.set(zero, x, x, no, tok, false)?;
        table.set(x, zero, x, no, tok, false)?;
    }
    let sum: Vec<Option<ElemId>> = (0..n * n).map(|i| table.get(i / n, i % n)).collect();
    let mut perp = read_perp(sec, carrier, zero, one)?;
    for (x, slot) in perp.iter_mut().enumerate() {
        if slot.is_none() {
            let mut candidates = (0..n).filter(|&y| sum[x * n + y] == Some(one));
            if let (Some(y), None) = (candidates.next(), candidates.next()) {
                *slot = Some(y);
            }
        }
    }
    let perp = complete(sec, carrier, perp)?;
    FinEffectAlgebra::new(carrier.labels.clone(), zero, one, sum, perp)
}

fn read_effect_monoid(sec: &Section, carrier: &Carrier) -> Result<FinEffectMonoid> {
    let ea = read_effect_algebra(sec, carrier)?;
    let n = ea.size();
    let (zero, one) = (ea.zero_id(), ea.one_id());
    let mut table = Table::new(n);
    for line in sec.lines("mul") {
        let [x, y, z] = carrier.ids::<3>(line)?;
        table.set(x, y, z, line.no, line.tokens[1], true)?;
    }
    let no = sec.header.no;
    for x in 0..n {
        let tok = carrier.labels[x].as_str();
        table.set(zero, x, zero, no, tok, false)?;
        table.set(x, zero, zero, no, tok, false)?;
        table.set(one, x, x, no, tok, false)?;
        table.set(x, one, x, no, tok, false)?;
    }
    let mut mul = Vec::with_capacity(n * n);
    for i in 0..n * n {
        let (x, y) = (i / n, i % n);
        mul.push(table.get(x, y).ok_or_else(|| {
            let product = format!("{}·{}", carrier.labels[x], carrier.labels[y]);
            parse_error(no, &product, format!("missing `mul` line for {product}"))
        })?);
    }
    FinEffectMonoid::new(ea, mul)
}

fn read_map(sec: &Section) -> Result<Document> {
    let mut pairs = Vec::new();
    let mut seen = HashSet::new();
    for line in sec.lines("send") {
        let args = line.expect_args(2)?;
        if !seen.insert(args[0]) {
            return Err(parse_error(line.no, args[0], "element sent twice"));
        }
        pairs.push((args[0].to_string(), args[1].to_string()));
    }
    Ok(Document::Map {
        name: sec.name().to_string(),
        from: sec.header.tokens[2].to_string(),
        to: sec.header.tokens[3].to_string(),
        pairs,
    })
}

fn read_rchain(sec: &Section) -> Result<RationalChain> {
    let line = sec.required("points")?;
    let points = line.tokens[1..]
        .iter()
        .map(|tok| {
            tok.parse::<RationalScalar>()
                .map_err(|e| parse_error(line.no, tok, e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    RationalChain::new(points).map_err(|e| parse_error(line.no, "points", e.to_string()))
}

fn read_section(sec: &Section) -> Result<Document> {
    let name = sec.name().to_string();
    const POSET: [&str; 4] = ["elements", "bottom", "top", "cover"];
    const EA: [&str; 5] = ["elements", "zero", "one", "sum", "perp"];
    Ok(match sec.kind() {
        "poset" => {
            sec.reject_unknown(&POSET)?;
            let carrier = Carrier::read(sec)?;
            Document::Poset {
                name,
                poset: read_poset(sec, &carrier)?,
            }
        }
        "omp" => {
            sec.reject_unknown(&["elements", "bottom", "top", "cover", "perp"])?;
            let carrier = Carrier::read(sec)?;
            Document::Omp {
                name,
                omp: read_omp(sec, &carrier)?,
            }
        }
        "effectalgebra" => {
            sec.reject_unknown(&EA)?;
            let carrier = Carrier::read(sec)?;
            Document::EffectAlgebra {
                name,
                ea: read_effect_algebra(sec, &carrier)?,
            }
        }
        "effectmonoid" => {
            sec.reject_unknown(&["elements", "zero", "one", "sum", "perp", "mul"])?;
            let carrier = Carrier::read(sec)?;
            Document::EffectMonoid {
                name,
                monoid: read_effect_monoid(sec, &carrier)?,
            }
        }
        "map" => {
            sec.reject_unknown(&["send"])?;
            read_map(sec)?
        }
        "rchain" => {
            sec.reject_unknown(&["points"])?;
            Document::RChain {
                name,
                chain: read_rchain(sec)?,
            }
        }
        other => unreachable!("header `{other}` was already checked"),
    })
}

/// Reads every document in `text`. Comments start at `#`.
pub fn parse(text: &str) -> Result<Vec<Document>> {
    let mut sections: Vec<Section> = Vec::new();
    let mut names: HashSet<&str> = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let line = Line { no: i + 1, tokens };
        if HEADERS.contains(&line.keyword()) {
            let arity = if line.keyword() == "map" { 3 } else { 1 };
            line.expect_args(arity)?;
            if !names.insert(line.tokens[1]) {
                return Err(parse_error(line.no, line.tokens[1], "duplicate structure name"));
            }
            sections.push(Section {
                header: line,
                body: Vec::new(),
            });
        } else {
            match sections.last_mut() {
                Some(sec) => sec.body.push(line),
                None => {
                    return Err(parse_error(
                        line.no,
                        line.keyword(),
                        "expected a header (poset, omp, effectalgebra, effectmonoid, map, rchain)",
                    ))
                }
            }
        }
    }
    sections.iter().map(read_section).collect()
}

/// Reads a text that must hold exactly one document.
pub fn parse_one(text: &str) -> Result<Document> {
    let mut docs = parse(text)?;
    match docs.len() {
        1 => Ok(docs.remove(0)),
        0 => Err(parse_error(1, "", "no document found")),
        k => Err(parse_error(1, docs[1].name(), format!("expected one document, found {k}"))),
    }
}

fn write_poset_body(s: &mut String, p: &FinBoundedPoset) {
    let _ = writeln!(s, "elements {}", p.labels().join(" "));
    let _ = writeln!(s, "bottom {}", p.label(p.bottom()));
    let _ = writeln!(s, "top {}", p.label(p.top()));
    let mut covers = p.hasse_covers();
    covers.sort_unstable();
    for (x, y) in covers {
        let _ = writeln!(s, "cover {} {}", p.label(x), p.label(y));
    }
}

fn write_perp(s: &mut String, perp: &[ElemId], labels: &[String], skip: [ElemId; 2]) {
    for (x, &y) in perp.iter().enumerate() {
        if x <= y && !skip.contains(&x) {
            let _ = writeln!(s, "perp {} {}", labels[x], labels[y]);
        }
    }
}

fn write_ea_body(s: &mut String, e: &FinEffectAlgebra) {
    let labels = e.labels();
    let _ = writeln!(s, "elements {}", labels.join(" "));
    let (zero, one) = (e.zero_id(), e.one_id());
    let _ = writeln!(s, "zero {}", labels[zero]);
    let _ = writeln!(s, "one {}", labels[one]);
    for x in e.elements().filter(|&x| x != zero) {
        for y in (x..e.size()).filter(|&y| y != zero) {
            if let Some(z) = e.sum_id(x, y) {
                let _ = writeln!(s, "sum {} {} {}", labels[x], labels[y], labels[z]);
            }
        }
    }
    write_perp(s, e.perp_table(), labels, [zero, one]);
}

/// Canonical text: fixed field order, table lines sorted by element id,
/// implied entries omitted, comments dropped.
pub fn serialize(doc: &Document) -> String {
    let mut s = String::new();
    match doc {
        Document::Poset { name, poset } => {
            let _ = writeln!(s, "poset {name}");
            write_poset_body(&mut s, poset);
        }
        Document::Omp { name, omp } => {
            let p = omp.poset();
            let _ = writeln!(s, "omp {name}");
            write_poset_body(&mut s, p);
            write_perp(&mut s, omp.perp_table(), p.labels(), [p.bottom(), p.top()]);
        }
        Document::EffectAlgebra { name, ea } => {
            let _ = writeln!(s, "effectalgebra {name}");
            write_ea_body(&mut s, ea);
        }
        Document::EffectMonoid { name, monoid } => {
            let e = monoid.ea();
            let _ = writeln!(s, "effectmonoid {name}");
            write_ea_body(&mut s, e);
            let trivial = [e.zero_id(), e.one_id()];
            for x in e.elements().filter(|x| !trivial.contains(x)) {
                for y in e.elements().filter(|y| !trivial.contains(y)) {
                    let z = monoid.mul_id(x, y);
                    let _ = writeln!(s, "mul {} {} {}", e.label(x), e.label(y), e.label(z));
                }
            }
        }
        Document::Map {
            name,
            from,
            to,
            pairs,
        } => {
            let _ = writeln!(s, "map {name} {from} {to}");
            let sorted: BTreeMap<&str, &str> =
                pairs.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
            for (x, y) in sorted {
                let _ = writeln!(s, "send {x} {y}");
            }
        }
        Document::RChain { name, chain } => {
            let _ = writeln!(s, "rchain {name}");
            let points: Vec<String> = chain.points().iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "points {}", points.join(" "));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_effect_algebra;
    use crate::report::Law;

    const CHAIN: &str = "\
# a chain, written loosely
poset c3
elements 0 m 1
top 1
bottom 0
cover m 1   # upper
cover 0 m
";

    #[test]
    fn chain_round_trip() {
        let doc = parse_one(CHAIN).unwrap();
        let canon = serialize(&doc);
        assert_eq!(canon, "poset c3\nelements 0 m 1\nbottom 0\ntop 1\ncover 0 m\ncover m 1\n");
        assert_eq!(serialize(&parse_one(&canon).unwrap()), canon);
        assert_eq!(parse_one(&canon).unwrap(), doc);
    }

    #[test]
    fn implicit_sums_give_the_three_element_algebra() {
        let doc = parse_one("effectalgebra e3\nelements 0 h 1\nzero 0\none 1\nsum h h 1\n").unwrap();
        let Document::EffectAlgebra { ea, .. } = doc else { panic!() };
        assert!(check_effect_algebra(&ea).passed());
        assert!(ea.is_isomorphic(&FinEffectAlgebra::three()));
        assert_eq!(ea.perp_id(1), 1);
    }

    #[test]
    fn positivity_failure_is_parsed_not_rejected() {
        let text = "effectalgebra bad\nelements 0 h 1\nzero 0\none 1\nsum h h 1\nsum h 1 1\nperp h h\n";
        let Document::EffectAlgebra { ea, .. } = parse_one(text).unwrap() else { panic!() };
        let r = check_effect_algebra(&ea);
        assert!(r.violates(Law::Positivity));
    }

    #[test]
    fn missing_top_names_the_field() {
        let err = parse("poset p\nelements 0 1\nbottom 0\ncover 0 1\n").unwrap_err();
        match err {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 1);
                assert!(message.contains("`top`"), "{message}");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn malformed_inputs_carry_position() {
        let cases = [
            ("poset p\nelements 0 0\n", 2, "0"),
            ("poset p\nelements 0 1\nbottom 0\ntop 1\ncover 0 x\n", 5, "x"),
            ("poset p\nelements 0 1\nbottom 0\nbottom 0\ntop 1\n", 4, "bottom"),
            ("elements 0 1\n", 1, "elements"),
            ("poset p\nelements 0 1\nbottom 0\ntop 1\nwat 0\n", 5, "wat"),
            ("rchain r\npoints 0 1/2 1/3\n", 2, "points"),
            ("poset p\nelements 0\nbottom 0\ntop 0\nposet p\n", 5, "p"),
            ("effectalgebra e\nelements 0 h 1\nzero 0\none 1\nsum h h 1\nsum h h 1\n", 6, "h"),
            ("effectalgebra e\nelements 0 h 1\nzero 0\none 1\nsum h 0 1\n", 5, "h"),
        ];
        for (text, want_line, want_token) in cases {
            match parse(text) {
                Err(Error::Parse { line, token, .. }) => {
                    assert_eq!((line, token.as_str()), (want_line, want_token), "{text}");
                }
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn monoid_requires_every_nontrivial_product() {
        let head = "effectmonoid b2\nelements 0 a b 1\nzero 0\none 1\nsum a b 1\n";
        let err = parse(head).unwrap_err();
        assert!(matches!(err, Error::Parse { ref token, .. } if token == "a·a"), "{err}");
        let full = format!("{head}mul a a a\nmul a b 0\nmul b a 0\nmul b b b\n");
        let Document::EffectMonoid { monoid, .. } = parse_one(&full).unwrap() else { panic!() };
        assert!(monoid.is_isomorphic(&FinEffectMonoid::boolean(2)));
        assert_eq!(serialize(&parse_one(&serialize(&parse_one(&full).unwrap())).unwrap()), {
            serialize(&parse_one(&full).unwrap())
        });
    }

    #[test]
    fn maps_and_rational_chains() {
        let docs = parse("map f P A\nsend 1 1\nsend 0 0\nrchain s\npoints 0 1/3 1/2 1\n").unwrap();
        assert_eq!(serialize(&docs[0]), "map f P A\nsend 0 0\nsend 1 1\n");
        assert_eq!(serialize(&docs[1]), "rchain s\npoints 0 1/3 1/2 1\n");
    }
}
