use std::collections::BTreeSet;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use shed_core::complex::SimplicialComplex;
use shed_core::decomp::{decide, Mode, SearchOptions};
use shed_core::face::Face;

fn random_pure_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let n: usize = rng.gen_range(4..=10);
    let dim: usize = rng.gen_range(1..=(n - 2).min(4));
    let size = dim + 1;
    let want: usize = rng.gen_range(2..=(3 * n).min(40));
    let mut facets: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let mut vertices: Vec<usize> = (0..n).collect();
    for _ in 0..want * 4 {
        if facets.len() >= want {
            break;
        }
        vertices.shuffle(rng);
        let mut f: Vec<usize> = vertices[..size].to_vec();
        f.sort();
        facets.insert(f);
    }
    let lists: Vec<Vec<String>> = facets
        .into_iter()
        .map(|f| f.into_iter().map(|v| format!("x{v}")).collect())
        .collect();
    SimplicialComplex::from_facets(&lists).unwrap().0
}

fn naive_decide(c: &SimplicialComplex, k: i32, mode: Mode) -> bool {
    if !c.is_pure() {
        return false;
    }
    if c.is_simplex() {
        return true;
    }
    let d = c.dim();
    let mut candidates: BTreeSet<Face> = BTreeSet::new();
    for facet in c.facets() {
        let vs = facet.vertices();
        for mask in 1u64..(1 << vs.len()) {
            if mask.count_ones() as i32 > k + 1 {
                continue;
            }
            let members = vs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v);
            candidates.insert(Face::from_vertices(c.num_vertices(), members));
        }
    }
    for tau in candidates {
        let del = c.deletion(&tau);
        if del.dim() != d || !naive_decide(&del, k, mode) {
            continue;
        }
        if mode == Mode::Strong {
            let link = c.link(&tau).expect("tau is a face");
            if link.dim() != d - tau.len() as i32 || !naive_decide(&link, k, mode) {
                continue;
            }
        }
        return true;
    }
    false
}

#[test]
fn profile_positive_directed_and_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD6);
    let corpus: Vec<SimplicialComplex> = (0..200).map(|_| random_pure_complex(&mut rng)).collect();
    let default = SearchOptions::default();

    // Positive-directed monotonicity: run k+1 only when k was true.
    let total = Instant::now();
    let mut positives = 0;
    let mut k1_total = std::time::Duration::ZERO;
    let mut k2_total = std::time::Duration::ZERO;
    for (i, c) in corpus.iter().enumerate() {
        for mode in [Mode::Strong, Mode::Weak] {
            let d0 = decide(c, 0, mode, &default).unwrap();
            if !d0.result {
                continue;
            }
            positives += 1;
            for k in 1..=c.dim().min(2) {
                let t = Instant::now();
                let dk = decide(c, k, mode, &default).unwrap();
                let el = t.elapsed();
                if k == 1 {
                    k1_total += el;
                } else {
                    k2_total += el;
                }
                assert!(dk.result, "monotonicity violated at corpus[{i}] k={k}");
                if el.as_millis() > 300 {
                    println!(
                        "corpus[{i}] {mode:?} k={k}: n={} facets={} {}ms nodes={}",
                        c.num_vertices(),
                        c.num_facets(),
                        el.as_millis(),
                        dk.nodes_explored
                    );
                }
            }
        }
    }
    println!(
        "positive-directed total ({positives} positive runs): {:?} (k1 {k1_total:?}, k2 {k2_total:?})",
        total.elapsed()
    );

    // Small members: full library-vs-naive cross-check at k = 1.
    let total = Instant::now();
    let mut small = 0;
    for c in corpus.iter().filter(|c| c.num_vertices() <= 6 && c.dim() >= 1) {
        small += 1;
        for mode in [Mode::Strong, Mode::Weak] {
            let lib = decide(c, 1, mode, &default).unwrap();
            assert_eq!(lib.result, naive_decide(c, 1, mode));
        }
    }
    println!("small-member k=1 cross-check ({small} members): {:?}", total.elapsed());
}
