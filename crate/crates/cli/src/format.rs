//! Text formats for k-graphs, cocycles and covering maps.
//!
//! All three are line oriented; `#` starts a comment. Files written by this
//! crate begin with [`GENERATED_HEADER`], which also admits the `@` used in
//! product vertex and edge names.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use kgraph::{
    check_covering, validate_kgraph, Cocycle, CoveringMap, EdgeSpec, GroupPresentation, GroupWord, KGraph,
    Skeleton, SquareTable,
};
use thiserror::Error;

pub const GENERATED_HEADER: &str = "# generated by kgraph";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("ParseError: {origin}:{line}: {message}")]
    Parse { origin: String, line: usize, message: String },

    #[error("IoError: {path}: {message}")]
    Io { path: String, message: String },
}

/// A parse failure before any origin is attached.
type Located = (usize, String);

fn at(line: usize, message: impl Into<String>) -> Located {
    (line, message.into())
}

fn locate(origin: &str) -> impl Fn(Located) -> FormatError + '_ {
    move |(line, message)| FormatError::Parse { origin: origin.to_string(), line, message }
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path)
        .map_err(|e| FormatError::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|e| FormatError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Non-comment lines as `(line number, tokens)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn generated(text: &str) -> bool {
    text.lines().next().is_some_and(|l| l.trim_end() == GENERATED_HEADER)
}

fn check_id(id: &str, allow_at: bool, line: usize) -> Result<(), Located> {
    let ok = !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || (allow_at && c == '@'));
    if ok {
        Ok(())
    } else {
        Err(at(line, format!("invalid id {id:?}")))
    }
}

fn parse_number<T: std::str::FromStr>(token: &str, line: usize) -> Result<T, Located> {
    token.parse().map_err(|_| at(line, format!("expected a number, found {token:?}")))
}

/// Parses a k-graph file into unvalidated parts.
pub fn parse_kgraph(text: &str, origin: &str) -> Result<(Skeleton, SquareTable), FormatError> {
    parse_kgraph_inner(text).map_err(locate(origin))
}

fn parse_kgraph_inner(text: &str) -> Result<(Skeleton, SquareTable), Located> {
    let allow_at = generated(text);
    let mut k = None;
    let mut skeleton = Skeleton::default();
    let mut squares = SquareTable::default();
    let mut square_lines = Vec::new();
    for (line, t) in lines(text) {
        match (t[0], t.len()) {
            ("kgraph", 2) => {
                if k.is_some() {
                    return Err(at(line, "duplicate kgraph directive"));
                }
                let n: usize = parse_number(t[1], line)?;
                if n == 0 {
                    return Err(at(line, "k must be at least 1"));
                }
                k = Some(n);
            }
            ("vertex", 2) => {
                check_id(t[1], allow_at, line)?;
                skeleton.vertices.push(t[1].to_string());
            }
            ("edge", 5) => {
                for id in [t[1], t[3], t[4]] {
                    check_id(id, allow_at, line)?;
                }
                let color = parse_number(t[2], line)?;
                skeleton.edges.push(EdgeSpec::new(t[1], color, t[3], t[4]));
            }
            ("square", 5) => {
                for id in &t[1..] {
                    check_id(id, allow_at, line)?;
                }
                squares.squares.push([t[1], t[2], t[3], t[4]].map(String::from));
                square_lines.push(line);
            }
            (word, _) => return Err(at(line, format!("unrecognized directive {word:?} with {} fields", t.len()))),
        }
        if k.is_none() {
            return Err(at(line, "file must start with a kgraph directive"));
        }
    }
    skeleton.k = k.ok_or_else(|| at(0, "missing kgraph directive"))?;
    // squares are written with the lower color first; the reverse is refused
    let color = |id: &str| skeleton.edges.iter().find(|e| e.id == id).map(|e| e.color);
    for (sq, &line) in squares.squares.iter().zip(&square_lines) {
        if let (Some(ce), Some(cf)) = (color(&sq[0]), color(&sq[1])) {
            if ce > cf {
                return Err(at(line, format!("square {} {} lists the higher color first", sq[0], sq[1])));
            }
        }
    }
    Ok((skeleton, squares))
}

/// Canonical text: vertices, edges and squares sorted by id.
pub fn write_kgraph(g: &KGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{GENERATED_HEADER}").unwrap();
    writeln!(out, "kgraph {}", g.k()).unwrap();
    for v in g.vertex_names() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "edge {} {} {} {}", e.id, e.color, g.vertex_name(e.source), g.vertex_name(e.range)).unwrap();
    }
    let mut squares: Vec<Vec<String>> = g.squares().iter().map(|sq| g.square_names(sq)).collect();
    squares.sort();
    for s in squares {
        writeln!(out, "square {}", s.join(" ")).unwrap();
    }
    out
}

/// Parses and validates a k-graph file from disk.
pub fn load_kgraph(path: &Path) -> Result<Result<KGraph, kgraph::Error>, FormatError> {
    let text = read_file(path)?;
    let (skeleton, squares) = parse_kgraph(&text, &path.display().to_string())?;
    Ok(validate_kgraph(&skeleton, &squares))
}

/// Parses a cocycle file against the edges of `g`.
pub fn parse_cocycle(text: &str, g: &KGraph, origin: &str) -> Result<Cocycle, FormatError> {
    parse_cocycle_inner(text, g).map_err(locate(origin))
}

enum Target {
    Group { generators: Vec<String>, relators: Vec<GroupWord> },
    Abelian { rank: usize, moduli: Option<Vec<u64>> },
}

fn parse_vector(token: &str, rank: usize, line: usize) -> Result<Vec<i64>, Located> {
    let inner = token
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| at(line, format!("expected a vector like (1,0), found {token:?}")))?;
    let v: Vec<i64> = if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(|x| parse_number(x.trim(), line)).collect::<Result<_, _>>()?
    };
    if v.len() != rank {
        return Err(at(line, format!("vector {token} should have {rank} entries")));
    }
    Ok(v)
}

fn parse_cocycle_inner(text: &str, g: &KGraph) -> Result<Cocycle, Located> {
    let allow_at = generated(text);
    let mut target: Option<Target> = None;
    let mut raw: BTreeMap<usize, (usize, Vec<String>)> = BTreeMap::new();
    for (line, t) in lines(text) {
        match t[0] {
            "group" => {
                if target.is_some() {
                    return Err(at(line, "target declared twice"));
                }
                for name in &t[1..] {
                    check_id(name, allow_at, line)?;
                    if *name == "1" {
                        return Err(at(line, "1 is reserved for the identity"));
                    }
                }
                target = Some(Target::Group { generators: t[1..].iter().map(|s| s.to_string()).collect(), relators: Vec::new() });
            }
            "relator" => match &mut target {
                Some(Target::Group { generators, relators }) => {
                    let w = GroupWord::parse(&t[1..].join(" "), generators).map_err(|e| at(line, e.to_string()))?;
                    relators.push(w);
                }
                _ => return Err(at(line, "relator needs a preceding group directive")),
            },
            "target" => {
                if target.is_some() {
                    return Err(at(line, "target declared twice"));
                }
                let rank: usize = t
                    .get(1)
                    .and_then(|z| z.strip_prefix("Z^"))
                    .ok_or_else(|| at(line, "expected target Z^k [mod m1 ... mk]"))
                    .and_then(|r| parse_number(r, line))?;
                let moduli = match t.get(2) {
                    None => None,
                    Some(&"mod") => {
                        let m: Vec<u64> = t[3..].iter().map(|x| parse_number(x, line)).collect::<Result<_, _>>()?;
                        if m.len() != rank || m.contains(&0) {
                            return Err(at(line, format!("expected {rank} positive moduli")));
                        }
                        Some(m)
                    }
                    Some(other) => return Err(at(line, format!("unexpected {other:?}"))),
                };
                target = Some(Target::Abelian { rank, moduli });
            }
            "eta" => {
                if t.len() < 3 {
                    return Err(at(line, "eta needs an edge and a value"));
                }
                let e = g.edge_by_name(t[1]).map_err(|_| at(line, format!("unknown edge {}", t[1])))?;
                if raw.insert(e.0, (line, t[2..].iter().map(|s| s.to_string()).collect())).is_some() {
                    return Err(at(line, format!("edge {} assigned twice", t[1])));
                }
            }
            other => return Err(at(line, format!("unrecognized directive {other:?}"))),
        }
    }
    let target = target.ok_or_else(|| at(0, "missing group or target directive"))?;
    if let Some(e) = g.edge_ids().find(|e| !raw.contains_key(&e.0)) {
        return Err(at(0, format!("edge {} has no eta value", g.edge(e).id)));
    }
    match target {
        Target::Group { generators, relators } => {
            let mut values = Vec::new();
            for (line, tokens) in raw.values() {
                values.push(GroupWord::parse(&tokens.join(" "), &generators).map_err(|e| at(*line, e.to_string()))?);
            }
            let group = GroupPresentation::new(generators, relators).map_err(|e| at(0, e.to_string()))?;
            Ok(Cocycle::Presented { group, values })
        }
        Target::Abelian { rank, moduli } => {
            let mut values = Vec::new();
            for (line, tokens) in raw.values() {
                values.push(parse_vector(&tokens.concat(), rank, *line)?);
            }
            if values.is_empty() {
                return Ok(Cocycle::Abelian { moduli, values });
            }
            Cocycle::abelian(moduli, values).map_err(|e| at(0, e.to_string()))
        }
    }
}

pub fn write_cocycle(c: &Cocycle, g: &KGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{GENERATED_HEADER}").unwrap();
    match c {
        Cocycle::Presented { group, values } => {
            writeln!(out, "group {}", group.generators.join(" ")).unwrap();
            for r in &group.relators {
                writeln!(out, "relator {}", r.display(&group.generators)).unwrap();
            }
            for (e, w) in g.edges().iter().zip(values) {
                writeln!(out, "eta {} {}", e.id, w.display(&group.generators)).unwrap();
            }
        }
        Cocycle::Abelian { moduli, values } => {
            let rank = moduli.as_ref().map_or_else(|| values.first().map_or(0, Vec::len), Vec::len);
            match moduli {
                Some(m) => {
                    let m: Vec<String> = m.iter().map(u64::to_string).collect();
                    writeln!(out, "target Z^{rank} mod {}", m.join(" ")).unwrap();
                }
                None => writeln!(out, "target Z^{rank}").unwrap(),
            }
            for (e, v) in g.edges().iter().zip(values) {
                let v: Vec<String> = v.iter().map(i64::to_string).collect();
                writeln!(out, "eta {} ({})", e.id, v.join(",")).unwrap();
            }
        }
    }
    out
}

/// A parsed cover file; paths are as written, relative to the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    pub domain: String,
    pub codomain: String,
    pub vmap: Vec<(String, String)>,
    pub emap: Vec<(String, String)>,
}

pub fn parse_cover(text: &str, origin: &str) -> Result<CoverSpec, FormatError> {
    parse_cover_inner(text).map_err(locate(origin))
}

fn parse_cover_inner(text: &str) -> Result<CoverSpec, Located> {
    let allow_at = generated(text);
    let mut files = None;
    let mut vmap = Vec::new();
    let mut emap = Vec::new();
    for (line, t) in lines(text) {
        match (t[0], t.len()) {
            ("cover", 3) => {
                if files.replace((t[1].to_string(), t[2].to_string())).is_some() {
                    return Err(at(line, "duplicate cover directive"));
                }
            }
            ("vmap", 3) | ("emap", 3) => {
                check_id(t[1], allow_at, line)?;
                check_id(t[2], allow_at, line)?;
                let pair = (t[1].to_string(), t[2].to_string());
                if t[0] == "vmap" {
                    vmap.push(pair);
                } else {
                    emap.push(pair);
                }
            }
            (word, _) => return Err(at(line, format!("unrecognized directive {word:?} with {} fields", t.len()))),
        }
    }
    let (domain, codomain) = files.ok_or_else(|| at(0, "missing cover directive"))?;
    Ok(CoverSpec { domain, codomain, vmap, emap })
}

pub fn write_cover(p: &CoveringMap, domain_file: &str, codomain_file: &str) -> String {
    let mut out = String::new();
    writeln!(out, "{GENERATED_HEADER}").unwrap();
    writeln!(out, "cover {domain_file} {codomain_file}").unwrap();
    let (s, t) = (p.domain(), p.codomain());
    for w in s.vertex_ids() {
        writeln!(out, "vmap {} {}", s.vertex_name(w), t.vertex_name(p.vertex_image(w))).unwrap();
    }
    for e in s.edge_ids() {
        writeln!(out, "emap {} {}", s.edge(e).id, t.edge(p.edge_image(e)).id).unwrap();
    }
    out
}

/// A cover file loaded together with the graphs it names.
#[derive(Debug, Clone)]
pub struct LoadedCover {
    pub covering: CoveringMap,
    pub domain_path: PathBuf,
    pub codomain_path: PathBuf,
}

/// Reads a cover file and both graph files; parse problems are the outer
/// error, domain errors the inner one.
pub fn load_cover(path: &Path) -> Result<Result<LoadedCover, kgraph::Error>, FormatError> {
    let origin = path.display().to_string();
    let parsed = parse_cover(&read_file(path)?, &origin)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let domain_path = dir.join(&parsed.domain);
    let codomain_path = dir.join(&parsed.codomain);
    let domain = match load_kgraph(&domain_path)? {
        Ok(g) => Arc::new(g),
        Err(e) => return Ok(Err(e)),
    };
    let codomain = match load_kgraph(&codomain_path)? {
        Ok(g) => Arc::new(g),
        Err(e) => return Ok(Err(e)),
    };
    let build = || -> Result<CoveringMap, kgraph::Error> {
        let mut vmap = vec![None; domain.vertex_count()];
        for (a, b) in &parsed.vmap {
            let slot = &mut vmap[domain.vertex(a)?.0];
            if slot.replace(codomain.vertex(b)?).is_some() {
                return Err(kgraph::Error::Malformed(format!("vertex {a} mapped twice")));
            }
        }
        let mut emap = vec![None; domain.edge_count()];
        for (a, b) in &parsed.emap {
            let slot = &mut emap[domain.edge_by_name(a)?.0];
            if slot.replace(codomain.edge_by_name(b)?).is_some() {
                return Err(kgraph::Error::Malformed(format!("edge {a} mapped twice")));
            }
        }
        let missing = |what: &str| kgraph::Error::Malformed(format!("{what} map is not total"));
        let vmap = vmap.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| missing("vertex"))?;
        let emap = emap.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| missing("edge"))?;
        check_covering(domain.clone(), codomain.clone(), vmap, emap)
    };
    Ok(build().map(|covering| LoadedCover { covering, domain_path, codomain_path }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use kgraph::fixtures;

    #[test]
    fn kgraph_text_round_trip() {
        for g in [fixtures::t2(), fixtures::q2(), fixtures::ff2(), fixtures::c3_three_graph()] {
            let text = write_kgraph(&g);
            let (s, q) = parse_kgraph(&text, "mem").unwrap();
            let h = validate_kgraph(&s, &q).unwrap();
            assert_eq!(h, g);
            assert_eq!(write_kgraph(&h), text);
        }
    }

    #[test]
    fn ids_and_directives_are_checked() {
        let bad_id = "kgraph 1\nvertex v@0\n";
        assert!(parse_kgraph(bad_id, "mem").is_err());
        let ok = format!("{GENERATED_HEADER}\nkgraph 1\nvertex v@0\n");
        assert!(parse_kgraph(&ok, "mem").is_ok());
        let err = parse_kgraph("kgraph 0\n", "mem").unwrap_err();
        assert!(err.to_string().starts_with("ParseError: mem:1:"));
        assert!(parse_kgraph("vertex v\n", "mem").is_err());
        assert!(parse_kgraph("kgraph 1\nedge e x v v\n", "mem").is_err());
        let reversed = "kgraph 2\nvertex v\nedge e 1 v v\nedge f 2 v v\nsquare f e e f\n";
        let err = parse_kgraph(reversed, "mem").unwrap_err();
        assert!(err.to_string().starts_with("ParseError: mem:5:"), "{err}");
        let commented = "# a loop\nkgraph 1 # rank\nvertex v\nedge e 1 v v # the loop\n";
        let (s, _) = parse_kgraph(commented, "mem").unwrap();
        assert_eq!(s.edges.len(), 1);
    }

    #[test]
    fn cocycle_text_round_trip() {
        let t2 = fixtures::t2();
        let c = parse_cocycle("target Z^2 mod 2 1\neta e (1,0)\neta f (0,0)\n", &t2, "mem").unwrap();
        assert_eq!(c, Cocycle::abelian(Some(vec![2, 1]), vec![vec![1, 0], vec![0, 0]]).unwrap());
        assert_eq!(parse_cocycle(&write_cocycle(&c, &t2), &t2, "mem").unwrap(), c);

        let text = "group r s\nrelator r^3\nrelator s^2\nrelator s r s r\neta e r\neta f s^-1 r^2\n";
        let c = parse_cocycle(text, &t2, "mem").unwrap();
        assert_eq!(parse_cocycle(&write_cocycle(&c, &t2), &t2, "mem").unwrap(), c);

        assert!(parse_cocycle("target Z^1\neta e (1)\n", &t2, "mem").is_err(), "f unassigned");
        assert!(parse_cocycle("group a\neta e b\neta f a\n", &t2, "mem").is_err());
        assert!(parse_cocycle("group 1\neta e 1\neta f 1\n", &t2, "mem").is_err());
    }

    #[test]
    fn cover_text_round_trip() {
        let parsed = parse_cover("cover a.kg b.kg\nvmap x y\nemap e f\n", "mem").unwrap();
        assert_eq!(parsed.domain, "a.kg");
        assert_eq!(parsed.vmap, vec![("x".to_string(), "y".to_string())]);
        assert!(parse_cover("vmap x y\n", "mem").is_err());
    }
}
