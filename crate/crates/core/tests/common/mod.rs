#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use itertools::Itertools;

use hypop::graphs::{Graph, GraphFile};
use hypop::hypergraph::{Hypergraph, HypergraphFile};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn json_files(sub: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fs::read_dir(corpus_dir().join(sub))
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

pub fn graph_file(id: &str) -> GraphFile {
    let text = fs::read_to_string(corpus_dir().join("graphs").join(format!("{id}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn graph(id: &str) -> Graph {
    Graph::from_file(&graph_file(id)).unwrap()
}

/// Every corpus graph, by file stem.
pub fn graphs() -> Vec<(String, Graph)> {
    json_files("graphs")
        .into_iter()
        .map(|(id, text)| {
            let file: GraphFile = serde_json::from_str(&text).unwrap();
            (id, Graph::from_file(&file).unwrap())
        })
        .collect()
}

/// Every corpus hypergraph file, by file stem.
pub fn hypergraphs() -> Vec<(String, Hypergraph)> {
    json_files("hypergraphs")
        .into_iter()
        .map(|(id, text)| {
            let file: HypergraphFile = serde_json::from_str(&text).unwrap();
            (id, file.build().unwrap().0)
        })
        .collect()
}

/// Hypergraph files plus the incidence hypergraph of every corpus graph
/// with at least one edge.
pub fn all_hypergraphs() -> Vec<(String, Hypergraph)> {
    let mut out = hypergraphs();
    for (id, g) in graphs() {
        if g.edge_count() > 0 {
            out.push((format!("H({id})"), g.incidence_hypergraph().unwrap()));
        }
    }
    out
}

/// Strongly rooted trees with `edges` internal edges: every parent
/// precedes its children, the outgoing flag comes first, and child flags
/// appear in every order. With `leaves`, each vertex also carries a leg.
#[allow(clippy::needless_range_loop)]
pub fn strongly_rooted_trees(edges: usize, leaves: bool) -> Vec<Graph> {
    let n = edges + 1;
    let mut out = vec![];
    let mut parents = vec![0usize; n];
    fn parent_choices(i: usize, n: usize, parents: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if i == n {
            f(parents);
            return;
        }
        for p in 0..i {
            parents[i] = p;
            parent_choices(i + 1, n, parents, f);
        }
    }
    parent_choices(1, n, &mut parents, &mut |parents| {
        let children: Vec<Vec<usize>> = (0..n).map(|v| (1..n).filter(|&c| parents[c] == v).collect()).collect();
        let mut orders: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for kids in &children {
            let perms: Vec<Vec<usize>> = kids.iter().copied().permutations(kids.len()).collect();
            orders = orders
                .into_iter()
                .flat_map(|acc| {
                    perms.iter().map(move |p| {
                        let mut a = acc.clone();
                        a.push(p.clone());
                        a
                    })
                })
                .collect();
        }
        for order in orders {
            let mut file = GraphFile::default();
            let mut legs = vec!["r".to_string()];
            for v in 0..n {
                let name = (v + 1).to_string();
                let mut flags = vec![if v == 0 { "r".to_string() } else { format!("up{v}") }];
                flags.extend(order[v].iter().map(|c| format!("down{c}")));
                if leaves {
                    flags.push(format!("l{v}"));
                    legs.push(format!("l{v}"));
                }
                file.vertices.push(name.clone());
                file.flags.insert(name, flags);
            }
            for c in 1..n {
                file.involution.push([format!("down{c}"), format!("up{c}")]);
            }
            file.legs = legs;
            out.push(Graph::from_file(&file).unwrap());
        }
    });
    out
}
