#![allow(dead_code)]

use parahom::complex::{SimplicialComplex, VertexFunction};
use parahom::value::{ratio, Value};
use proptest::prelude::*;

/// Flag complex of the graph `edges` on `n` vertices, truncated at `max_dim`.
pub fn flag_complex(n: usize, edges: &[(usize, usize)], max_dim: usize) -> SimplicialComplex {
    let mut adjacent = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adjacent[u][v] = true;
        adjacent[v][u] = true;
    }
    let mut all: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut frontier = all.clone();
    for _ in 0..max_dim {
        let next: Vec<Vec<usize>> = frontier
            .iter()
            .flat_map(|s| {
                let last = *s.last().unwrap();
                (last + 1..n)
                    .filter(|&w| s.iter().all(|&u| adjacent[u][w]))
                    .map(|w| {
                        let mut t = s.clone();
                        t.push(w);
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        all.extend(next.iter().cloned());
        frontier = next;
    }
    SimplicialComplex::new(n, all).unwrap()
}

/// Small exact values with frequent ties.
pub fn value() -> impl Strategy<Value = Value> {
    (-4i64..=4, prop::sample::select(vec![1i64, 2, 3])).prop_map(|(k, q)| ratio(k, q))
}

/// A random flag complex with at most `max_vertices` vertices and dimension
/// at most `max_dim`, with a random function.
pub fn complex_with_function(
    max_vertices: usize,
    max_dim: usize,
) -> impl Strategy<Value = (SimplicialComplex, VertexFunction)> {
    (1..=max_vertices, 0..=max_dim).prop_flat_map(|(n, d)| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let count = pairs.len();
        (
            prop::collection::vec(any::<bool>(), count),
            prop::collection::vec(value(), n),
        )
            .prop_map(move |(mask, values)| {
                let edges: Vec<_> = pairs
                    .iter()
                    .zip(&mask)
                    .filter(|(_, &m)| m)
                    .map(|(&e, _)| e)
                    .collect();
                (flag_complex(n, &edges, d), VertexFunction::new(values))
            })
    })
}
