#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use kgraph::{
    action_to_covering, are_isomorphic_coverings, covering_to_action, is_transitive, CoveringMap, CoveringMorphism,
    GroupoidAction, KGraph,
};
use kgraph_cli::format;

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<S: AsRef<str>>(args: &[S]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kgraph").chain(args.iter().map(AsRef::as_ref));
    let code = kgraph_cli::run_with(argv, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

/// Runs with `--out dir` appended.
pub fn run_in<S: AsRef<str>>(dir: &Path, args: &[S]) -> Run {
    let mut all: Vec<String> = args.iter().map(|a| a.as_ref().to_string()).collect();
    all.push("--out".into());
    all.push(dir.display().to_string());
    run(&all)
}

pub fn path(p: &Path) -> String {
    p.display().to_string()
}

pub fn load_graph(p: &Path) -> KGraph {
    format::load_kgraph(p).unwrap().unwrap()
}

pub fn load_cover(p: &Path) -> CoveringMap {
    format::load_cover(p).unwrap().unwrap().covering
}

/// Permutations of each edge on the fibers, for a one-vertex base.
pub fn monodromy(p: &CoveringMap) -> Vec<Vec<usize>> {
    let a = covering_to_action(p);
    let base = a.base();
    assert_eq!(base.vertex_count(), 1);
    let n = a.fiber(base.vertex_ids().next().unwrap()).len();
    base.edge_ids().map(|e| (0..n).map(|i| a.apply(e, i)).collect()).collect()
}

/// Round trip covering -> action -> covering, with the explicit map
/// `w -> p(w)@w` checked to be an isomorphism of coverings.
pub fn round_trip_a(p: &CoveringMap) -> Result<(), String> {
    let q = action_to_covering(&covering_to_action(p)).map_err(|e| e.to_string())?;
    let (s, t) = (p.domain(), q.domain());
    let mut vmap = Vec::new();
    for w in s.vertex_ids() {
        let name = format!("{}@{}", p.codomain().vertex_name(p.vertex_image(w)), s.vertex_name(w));
        vmap.push(t.vertex(&name).map_err(|e| e.to_string())?);
    }
    let mut emap = Vec::new();
    for e in s.edge_ids() {
        let a = p.codomain().edge(p.edge_image(e));
        let name = format!("{}@{}", a.id, s.vertex_name(s.edge(e).source));
        emap.push(t.edge_by_name(&name).map_err(|e| e.to_string())?);
    }
    let m = CoveringMorphism::new(p, &q, vmap, emap).map_err(|e| e.to_string())?;
    if !m.is_bijective() {
        return Err("round trip A map is not bijective".into());
    }
    if are_isomorphic_coverings(p, &q).map_err(|e| e.to_string())?.is_none() {
        return Err("round trip A coverings are not isomorphic".into());
    }
    Ok(())
}

/// Round trip action -> covering -> action: fibers come back renamed
/// `x@v` and every edge permutes them the same way.
pub fn round_trip_b(a: &GroupoidAction) -> Result<(), String> {
    let p = action_to_covering(a).map_err(|e| e.to_string())?;
    let back = covering_to_action(&p);
    let base = a.base();
    for x in base.vertex_ids() {
        let renamed: BTreeSet<String> = a.fiber(x).iter().map(|v| format!("{}@{v}", base.vertex_name(x))).collect();
        let got: BTreeSet<String> = back.fiber(x).iter().cloned().collect();
        if got != renamed {
            return Err(format!("fiber over {} changed", base.vertex_name(x)));
        }
    }
    for e in base.edge_ids() {
        let edge = base.edge(e);
        for (i, v) in a.fiber(edge.source).iter().enumerate() {
            let want = format!("{}@{}", base.vertex_name(edge.range), a.fiber(edge.range)[a.apply(e, i)]);
            let from = format!("{}@{v}", base.vertex_name(edge.source));
            let j = back.fiber(edge.source).iter().position(|n| *n == from).unwrap();
            if back.fiber(edge.range)[back.apply(e, j)] != want {
                return Err(format!("edge {} acts differently on {v}", edge.id));
            }
        }
    }
    if p.domain().is_connected() != is_transitive(a) {
        return Err("connectivity and transitivity disagree".into());
    }
    Ok(())
}

/// A one-vertex action from edge permutations.
pub fn action(base: &Arc<KGraph>, perms: &[Vec<usize>]) -> kgraph::Result<GroupoidAction> {
    let n = perms.first().map_or(1, Vec::len);
    let fiber: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    GroupoidAction::new(base.clone(), vec![fiber], perms.to_vec())
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // apply p, then q
    p.iter().map(|&i| q[i]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// Least conjugate of a tuple of permutations under relabeling.
pub fn conjugacy_class(perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = perms.first().map_or(0, Vec::len);
    permutations(n)
        .iter()
        .map(|pi| perms.iter().map(|s| compose(&compose(&invert(pi), s), pi)).collect::<Vec<_>>())
        .min()
        .unwrap()
}

pub fn transitive(perms: &[Vec<usize>]) -> bool {
    let n = perms.first().map_or(1, Vec::len);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for s in perms {
            for j in [s[i], invert(s)[i]] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// Conjugacy classes of transitive one-vertex actions of `gens` edges on
/// `n` points whose permutations satisfy `ok`.
pub fn brute_force_classes(gens: usize, n: usize, ok: impl Fn(&[Vec<usize>]) -> bool) -> BTreeSet<Vec<Vec<usize>>> {
    let all = permutations(n);
    let mut classes = BTreeSet::new();
    let mut idx = vec![0usize; gens];
    loop {
        let perms: Vec<Vec<usize>> = idx.iter().map(|&i| all[i].clone()).collect();
        if transitive(&perms) && ok(&perms) {
            classes.insert(conjugacy_class(&perms));
        }
        let mut i = 0;
        while i < gens {
            idx[i] += 1;
            if idx[i] < all.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == gens {
            return classes;
        }
    }
}

/// Order of the centralizer of the permutations in the symmetric group.
pub fn centralizer_order(perms: &[Vec<usize>]) -> usize {
    let n = perms.first().map_or(0, Vec::len);
    permutations(n).iter().filter(|c| perms.iter().all(|s| compose(s, c) == compose(c, s))).count()
}

/// Every file in `dir`, sorted, as `(name, bytes)`.
pub fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    files.sort();
    files
}
