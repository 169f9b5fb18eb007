//! Command-line front end: every pipeline of the `kgraph` library over the
//! text formats in [`format`].
//!
//! Exit codes: 0 on success, 1 on a domain error (printed as
//! `ErrorName: witness`), 2 on parse, I/O or usage errors.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use kgraph::{
    are_isomorphic_coverings, canonical_cocycle, classify_coverings, covering_morphism, deck_group,
    fundamental_group, gross_tucker, is_ktree, quotient_covering, relative_skew_product, skew_product,
    spanning_tree, stabilizer_subgroup, universal_cover, Cocycle, CoveringMap, CoveringMorphism,
    FiniteGroupRealization, GroupWord, KGraph, SubgroupData, VertexId,
};
use thiserror::Error;

use format::{FormatError, LoadedCover};

#[derive(Debug, Parser)]
#[command(name = "kgraph", about = "Coverings, fundamental groups and skew products of finite k-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Base vertex; defaults to the least vertex id.
    #[arg(long, global = true)]
    base: Option<String>,

    /// Budget of live cosets for every enumeration.
    #[arg(long, global = true, default_value_t = 10000)]
    max_cosets: usize,

    /// Directory for written files [default: .].
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also write proof.txt with the cross-checks performed.
    #[arg(long, global = true)]
    emit_proof: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a k-graph file.
    Validate { graph: PathBuf },
    /// Print a presentation of the fundamental group.
    Pi1 {
        graph: PathBuf,
        /// Print the presentation before tree elimination.
        #[arg(long)]
        full: bool,
    },
    /// Print the canonical cocycle into the fundamental group.
    CocycleCanonical { graph: PathBuf },
    /// Connected coverings with at most `--sheets` sheets, up to isomorphism.
    Classify {
        graph: PathBuf,
        #[arg(long)]
        sheets: usize,
    },
    /// Skew product by a cocycle into a finite group.
    Skew { graph: PathBuf, cocycle: PathBuf },
    /// Relative skew product by the subgroup generated by `--subgroup` words.
    Rskew {
        graph: PathBuf,
        /// Cocycle file; defaults to the canonical cocycle at `--base`.
        #[arg(long)]
        cocycle: Option<PathBuf>,
        #[arg(long = "subgroup")]
        subgroup: Vec<String>,
    },
    /// Quotient of a covering's domain by its deck group.
    Quotient { cover: PathBuf },
    /// Validate a cover file against its graphs.
    CheckCover { cover: PathBuf },
    /// Deck transformation group of a covering.
    Deck { cover: PathBuf },
    /// Stabilizer of the domain vertex `--base` in the fundamental group of the base.
    Stabilizer { cover: PathBuf },
    /// Recover the domain of a covering as a skew product by its deck group.
    GrossTucker { cover: PathBuf },
    /// Universal cover, when the fundamental group enumerates within budget.
    UniversalCover { graph: PathBuf },
    /// Decide whether a k-graph is a k-tree: yes, no or unknown.
    IsTree { graph: PathBuf },
    /// The covering morphism sending `--base` to `--to`, if any.
    Morphism {
        from: PathBuf,
        to_cover: PathBuf,
        #[arg(long)]
        to: String,
    },
    /// Decide whether two coverings are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] kgraph::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
}

type CliResult<T> = Result<T, CliError>;

/// Runs the command line and returns the exit code, writing to the
/// process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let mut report = String::new();
    let result = dispatch(&cli, &mut report);
    let _ = out.write_all(report.as_bytes());
    match result {
        Ok(()) => 0,
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "{e}");
            1
        }
        Err(CliError::Format(e)) => {
            let _ = writeln!(err, "{e}");
            2
        }
    }
}

fn graph(path: &Path) -> CliResult<KGraph> {
    Ok(format::load_kgraph(path)??)
}

fn cover(path: &Path) -> CliResult<LoadedCover> {
    Ok(format::load_cover(path)??)
}

fn base_vertex(cli: &Cli, g: &KGraph) -> CliResult<VertexId> {
    match &cli.base {
        Some(name) => Ok(g.vertex(name)?),
        None if g.vertex_count() > 0 => Ok(VertexId(0)),
        None => Err(kgraph::Error::Malformed("graph has no vertices".into()).into()),
    }
}

fn write_out(cli: &Cli, name: &str, text: &str) -> CliResult<()> {
    let dir = cli.out.as_deref().unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)
        .map_err(|e| FormatError::Io { path: dir.display().to_string(), message: e.to_string() })?;
    Ok(format::write_file(&dir.join(name), text)?)
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn summary(g: &KGraph) -> String {
    format!(
        "{}, {}, {}",
        plural(g.vertex_count(), "vertex", "vertices"),
        plural(g.edge_count(), "edge", "edges"),
        plural(g.squares().len(), "square", "squares")
    )
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> CliResult<()> {
    match &cli.command {
        Command::Validate { graph: path } => {
            let g = graph(path)?;
            writeln!(out, "valid {}-graph: {}", g.k(), summary(&g)).unwrap();
        }
        Command::Pi1 { graph: path, full } => {
            let g = graph(path)?;
            let x = base_vertex(cli, &g)?;
            let fg = fundamental_group(&g, x)?;
            let tree = spanning_tree(&g, x)?;
            writeln!(out, "base {}", g.vertex_name(x)).unwrap();
            writeln!(out, "tree edges: {}", g.edge_names(&tree.tree_edges).join(" ")).unwrap();
            writeln!(out, "presentation: {}", fg.presentation).unwrap();
            if *full {
                writeln!(out, "full presentation: {}", kgraph::fundamental::full_presentation(&g, x)?).unwrap();
            }
            writeln!(out, "abelianization: {}", fg.presentation.abelianization()).unwrap();
        }
        Command::CocycleCanonical { graph: path } => {
            let g = graph(path)?;
            let x = base_vertex(cli, &g)?;
            let text = format::write_cocycle(&canonical_cocycle(&g, x)?, &g);
            out.push_str(&text);
            if cli.out.is_some() {
                write_out(cli, "canonical.cocycle", &text)?;
            }
        }
        Command::Classify { graph: path, sheets } => classify(cli, path, *sheets, out)?,
        Command::Skew { graph: path, cocycle } => skew(cli, path, cocycle, out)?,
        Command::Rskew { graph: path, cocycle, subgroup } => rskew(cli, path, cocycle.as_deref(), subgroup, out)?,
        Command::Quotient { cover: path } => {
            let c = cover(path)?;
            let deck = deck_group(&c.covering)?;
            let (q, induced) = quotient_covering(&c.covering, &deck.elements)?;
            write_out(cli, "domain.kg", &format::write_kgraph(c.covering.domain()))?;
            write_out(cli, "base.kg", &format::write_kgraph(c.covering.codomain()))?;
            write_out(cli, "quotient.kg", &format::write_kgraph(&q.quotient))?;
            write_out(cli, "orbit.cover", &format::write_cover(&q.orbit_map, "domain.kg", "quotient.kg"))?;
            write_out(cli, "induced.cover", &format::write_cover(&induced, "quotient.kg", "base.kg"))?;
            writeln!(out, "quotient by deck group of order {}: {}", deck.order(), summary(&q.quotient)).unwrap();
            writeln!(out, "induced covering: {}", plural(induced.sheets().unwrap_or(0), "sheet", "sheets")).unwrap();
        }
        Command::CheckCover { cover: path } => {
            let c = cover(path)?;
            let p = &c.covering;
            let sheets = match p.sheets() {
                Some(n) => plural(n, "sheet", "sheets"),
                None => "fibers of unequal size".into(),
            };
            let connected = if p.domain().is_connected() { "connected" } else { "disconnected" };
            writeln!(out, "valid covering: {sheets}, {connected}").unwrap();
        }
        Command::Deck { cover: path } => {
            let c = cover(path)?;
            let p = &c.covering;
            let deck = deck_group(p)?;
            writeln!(
                out,
                "deck group of order {} on fibers of size {}; normal covering: {}",
                deck.order(),
                deck.fiber_size,
                yes_no(deck.is_transitive())
            )
            .unwrap();
            let s = p.domain();
            for (i, a) in deck.elements.iter().enumerate() {
                let moves: Vec<String> =
                    s.vertex_ids().map(|w| format!("{}->{}", s.vertex_name(w), s.vertex_name(a.vertices[w.0]))).collect();
                writeln!(out, "d{i}: {}", moves.join(" ")).unwrap();
            }
            for row in deck.cayley_table() {
                let row: Vec<String> = row.iter().map(|j| format!("d{j}")).collect();
                writeln!(out, "table: {}", row.join(" ")).unwrap();
            }
        }
        Command::Stabilizer { cover: path } => {
            let c = cover(path)?;
            let p = &c.covering;
            let v = base_vertex(cli, p.domain())?;
            let stab = stabilizer_subgroup(p, v)?;
            let table = stab.table.as_ref().expect("stabilizers carry their table");
            let names = &stab.ambient.generators;
            writeln!(
                out,
                "stabilizer of {} in pi1 at {}: index {}, normal: {}",
                p.domain().vertex_name(v),
                p.codomain().vertex_name(p.vertex_image(v)),
                table.index(),
                yes_no(table.is_normal())
            )
            .unwrap();
            writeln!(out, "ambient: {}", stab.ambient).unwrap();
            let gens: Vec<String> = stab.generators.iter().map(|w| w.display(names).to_string()).collect();
            writeln!(out, "generators: {}", if gens.is_empty() { "none".into() } else { gens.join(", ") }).unwrap();
        }
        Command::GrossTucker { cover: path } => gross_tucker_cmd(cli, path, out)?,
        Command::UniversalCover { graph: path } => {
            let g = Arc::new(graph(path)?);
            let x = base_vertex(cli, &g)?;
            let u = universal_cover(&g, x, cli.max_cosets)?;
            let tree = is_ktree(&u.product, cli.max_cosets)?;
            write_out(cli, "base.kg", &format::write_kgraph(&g))?;
            write_out(cli, "universal.kg", &format::write_kgraph(&u.product))?;
            write_out(cli, "universal.cover", &format::write_cover(&u.covering, "universal.kg", "base.kg"))?;
            writeln!(
                out,
                "universal cover: {}, {}; k-tree: {tree}",
                plural(u.covering.sheets().unwrap_or(0), "sheet", "sheets"),
                summary(&u.product)
            )
            .unwrap();
            if cli.emit_proof {
                let mut proof = String::new();
                for w in u.product.vertex_ids() {
                    let s = stabilizer_subgroup(&u.covering, w)?;
                    let index = s.table.as_ref().unwrap().index();
                    if index != u.covering.sheets().unwrap_or(0) {
                        return Err(kgraph::Error::CrossCheckFailed(format!(
                            "stabilizer of {} is not trivial",
                            u.product.vertex_name(w)
                        ))
                        .into());
                    }
                    writeln!(proof, "stabilizer of {} has index {index} = group order: trivial", u.product.vertex_name(w))
                        .unwrap();
                }
                writeln!(proof, "k-tree: {tree}").unwrap();
                write_out(cli, "proof.txt", &proof)?;
            }
        }
        Command::IsTree { graph: path } => {
            let g = graph(path)?;
            writeln!(out, "k-tree: {}", is_ktree(&g, cli.max_cosets)?).unwrap();
        }
        Command::Morphism { from, to_cover, to } => {
            let (p, q) = (cover(from)?, cover(to_cover)?);
            let v = base_vertex(cli, p.covering.domain())?;
            let u = q.covering.domain().vertex(to)?;
            match covering_morphism(&p.covering, &q.covering, v, u)? {
                Some(m) => {
                    writeln!(out, "morphism exists").unwrap();
                    print_morphism(out, &p.covering, &q.covering, &m);
                }
                None => writeln!(out, "no morphism").unwrap(),
            }
        }
        Command::Iso { first, second } => {
            let (p, q) = (cover(first)?, cover(second)?);
            match are_isomorphic_coverings(&p.covering, &q.covering)? {
                Some(m) => {
                    writeln!(out, "isomorphic").unwrap();
                    print_morphism(out, &p.covering, &q.covering, &m);
                }
                None => writeln!(out, "not isomorphic").unwrap(),
            }
        }
    }
    Ok(())
}

fn print_morphism(out: &mut String, p: &CoveringMap, q: &CoveringMap, m: &CoveringMorphism) {
    let (s, t) = (p.domain(), q.domain());
    for w in s.vertex_ids() {
        writeln!(out, "vmap {} {}", s.vertex_name(w), t.vertex_name(m.vertices[w.0])).unwrap();
    }
    for e in s.edge_ids() {
        writeln!(out, "emap {} {}", s.edge(e).id, t.edge(m.edges[e.0]).id).unwrap();
    }
}

fn classify(cli: &Cli, path: &Path, sheets: usize, out: &mut String) -> CliResult<()> {
    let g = graph(path)?;
    let x = base_vertex(cli, &g)?;
    let fg = fundamental_group(&g, x)?;
    let list = classify_coverings(&g, x, sheets)?;
    write_out(cli, "base.kg", &format::write_kgraph(&g))?;
    let mut proof = String::new();
    let names = &fg.presentation.generators;
    for (i, c) in list.iter().enumerate() {
        let n = i + 1;
        let p = &c.covering;
        let deck = deck_group(p)?;
        if deck.order() != c.table.normalizer_order() {
            return Err(kgraph::Error::CrossCheckFailed(format!(
                "cover_{n}: deck group order {} differs from normalizer order {}",
                deck.order(),
                c.table.normalizer_order()
            ))
            .into());
        }
        write_out(cli, &format!("cover_{n}.kg"), &format::write_kgraph(p.domain()))?;
        write_out(cli, &format!("cover_{n}.cover"), &format::write_cover(p, &format!("cover_{n}.kg"), "base.kg"))?;
        let gens: Vec<String> = c.table.schreier_generators().iter().map(|w| w.display(names).to_string()).collect();
        writeln!(
            out,
            "cover_{n}: {}, {}; subgroup <{}>; deck group order {}; normal: {}",
            plural(c.table.index(), "sheet", "sheets"),
            summary(p.domain()),
            gens.join(", "),
            deck.order(),
            yes_no(c.table.is_normal())
        )
        .unwrap();
        writeln!(
            proof,
            "cover_{n}: stabilizer of {} acts on the fiber as the defining coset table (index {})",
            p.domain().vertex_name(c.basepoint),
            c.table.index()
        )
        .unwrap();
        writeln!(proof, "cover_{n}: deck group order {} = normalizer order {}", deck.order(), c.table.normalizer_order())
            .unwrap();
    }
    writeln!(proof, "pairwise non-isomorphic: {} coverings", list.len()).unwrap();
    writeln!(out, "{} connected coverings up to isomorphism", list.len()).unwrap();
    if cli.emit_proof {
        write_out(cli, "proof.txt", &proof)?;
    }
    Ok(())
}

fn realization(c: &Cocycle, max_cosets: usize) -> CliResult<FiniteGroupRealization> {
    match c {
        Cocycle::Presented { group, .. } => Ok(FiniteGroupRealization::from_presentation(group, max_cosets)?),
        Cocycle::Abelian { moduli: Some(m), .. } => Ok(FiniteGroupRealization::finite_abelian(m)?),
        Cocycle::Abelian { moduli: None, .. } => {
            Err(kgraph::Error::TargetMismatch("skew products need a finite target; give moduli".into()).into())
        }
    }
}

fn load_cocycle(path: &Path, g: &KGraph) -> CliResult<Cocycle> {
    let text = format::read_file(path)?;
    Ok(format::parse_cocycle(&text, g, &path.display().to_string())?)
}

fn skew(cli: &Cli, path: &Path, cocycle: &Path, out: &mut String) -> CliResult<()> {
    let g = Arc::new(graph(path)?);
    let c = load_cocycle(cocycle, &g)?;
    let r = realization(&c, cli.max_cosets)?;
    let sp = skew_product(&g, &c, &r)?;
    write_out(cli, "base.kg", &format::write_kgraph(&g))?;
    write_out(cli, "skew.kg", &format::write_kgraph(&sp.product))?;
    write_out(cli, "skew.cover", &format::write_cover(&sp.covering, "skew.kg", "base.kg"))?;
    writeln!(
        out,
        "skew product by a group of order {}: {}; connected: {}",
        r.order(),
        summary(&sp.product),
        yes_no(sp.product.is_connected())
    )
    .unwrap();
    Ok(())
}

fn rskew(cli: &Cli, path: &Path, cocycle: Option<&Path>, subgroup: &[String], out: &mut String) -> CliResult<()> {
    let g = Arc::new(graph(path)?);
    let c = match cocycle {
        Some(f) => load_cocycle(f, &g)?.to_presented(),
        None => canonical_cocycle(&g, base_vertex(cli, &g)?)?,
    };
    let Cocycle::Presented { group, .. } = &c else { unreachable!("converted above") };
    let generators = subgroup
        .iter()
        .map(|w| {
            GroupWord::parse(w, &group.generators).map_err(|e| FormatError::Parse {
                origin: "--subgroup".into(),
                line: 0,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let h = SubgroupData { ambient: group.clone(), generators, table: None };
    let sp = relative_skew_product(&g, &c, &h, cli.max_cosets)?;
    write_out(cli, "base.kg", &format::write_kgraph(&g))?;
    write_out(cli, "rskew.kg", &format::write_kgraph(&sp.product))?;
    write_out(cli, "rskew.cover", &format::write_cover(&sp.covering, "rskew.kg", "base.kg"))?;
    let index = sp.table.as_ref().map_or(0, |t| t.index());
    writeln!(
        out,
        "relative skew product of index {index}: {}; connected: {}; quotient action attached: {}",
        summary(&sp.product),
        yes_no(sp.product.is_connected()),
        yes_no(sp.action.is_some())
    )
    .unwrap();
    Ok(())
}

fn gross_tucker_cmd(cli: &Cli, path: &Path, out: &mut String) -> CliResult<()> {
    let c = cover(path)?;
    let p = &c.covering;
    let deck = deck_group(p)?;
    let (group, mapping) = FiniteGroupRealization::from_cayley_table(&deck.cayley_table())?;
    let mut action = deck.elements.clone();
    for (i, a) in deck.elements.iter().enumerate() {
        action[mapping[i]] = a.clone();
    }
    let omega = p.domain().clone();
    let gt = gross_tucker(&omega, &action, &group)?;
    let lambda = &gt.quotient.quotient;
    write_out(cli, "domain.kg", &format::write_kgraph(&omega))?;
    write_out(cli, "quotient.kg", &format::write_kgraph(lambda))?;
    write_out(cli, "orbit.cover", &format::write_cover(&gt.quotient.orbit_map, "domain.kg", "quotient.kg"))?;
    write_out(cli, "gt.cocycle", &format::write_cocycle(&gt.cocycle, lambda))?;
    write_out(cli, "skew.kg", &format::write_kgraph(&gt.skew.product))?;
    write_out(cli, "skew.cover", &format::write_cover(&gt.skew.covering, "skew.kg", "quotient.kg"))?;
    writeln!(
        out,
        "free action of the deck group (order {}) recovered as a skew product over a quotient with {}",
        group.order(),
        summary(lambda)
    )
    .unwrap();
    if cli.emit_proof {
        let mut proof = String::new();
        writeln!(proof, "cross-section: least vertex of each orbit").unwrap();
        writeln!(proof, "isomorphism skew.kg -> domain.kg over quotient.kg is bijective").unwrap();
        let (s, t) = (&gt.skew.product, &omega);
        for w in s.vertex_ids() {
            writeln!(proof, "vmap {} {}", s.vertex_name(w), t.vertex_name(gt.isomorphism.vertices[w.0])).unwrap();
        }
        write_out(cli, "proof.txt", &proof)?;
    }
    Ok(())
}
