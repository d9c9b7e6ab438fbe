//! Closed-form generators for two families of polar complexes of 2 x n
//! transportation polytopes, together with the explicit witness facets used
//! to show they are not weakly vertex-decomposable, and the column symmetry
//! they carry.
//!
//! `delta_even(m)` is the polar complex of P((2m+1, 2m+1), (2, ..., 2)) with
//! 2m+1 columns; `delta_odd(m)` the polar complex of
//! P((2m-1, 2m+1), (2, ..., 2)) with 2m columns. Both are generated here
//! combinatorially, never through the transport module, so comparing the two
//! routes is a genuine cross-check of independent code paths.

use serde::{Deserialize, Serialize};

use crate::complex::{for_each_combination, SimplicialComplex};
use crate::decomp::LabelPermutation;
use crate::error::{Error, Result};
use crate::face::Face;
use crate::transport::Margins;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A family member: parity selects the margin pattern, m >= 3 the size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub parity: Parity,
    pub m: u32,
}

impl FamilySpec {
    pub fn new(parity: Parity, m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::FamilyParameter(m));
        }
        Ok(FamilySpec { parity, m })
    }

    /// The margins of the underlying transportation polytope.
    pub fn margins(&self) -> Margins {
        let m = self.m as i64;
        let (rows, n) = match self.parity {
            Parity::Even => (vec![2 * m + 1, 2 * m + 1], 2 * m + 1),
            Parity::Odd => (vec![2 * m - 1, 2 * m + 1], 2 * m),
        };
        Margins::new(rows, vec![2; n as usize]).expect("family margins are valid")
    }

    pub fn generate(&self) -> SimplicialComplex {
        match self.parity {
            Parity::Even => delta_even(self.m).expect("validated m"),
            Parity::Odd => delta_odd(self.m).expect("validated m"),
        }
    }
}

/// Labels u1..un then v1..vn; u_j is vertex j-1, v_j is vertex n+j-1.
fn uv_labels(n: usize) -> Vec<String> {
    (1..=n)
        .map(|j| format!("u{j}"))
        .chain((1..=n).map(|j| format!("v{j}")))
        .collect()
}

/// Facets A union B with A from the u-side, B from the v-side, column
/// indices disjoint, |A| = size_a, |B| = size_b.
fn column_disjoint_facets(n: usize, size_a: usize, size_b: usize) -> Vec<Face> {
    let universe = 2 * n;
    let cols: Vec<u32> = (0..n as u32).collect();
    let mut facets = Vec::new();
    for_each_combination(&cols, size_a, &mut |a_cols| {
        let rest: Vec<u32> = cols.iter().copied().filter(|c| !a_cols.contains(c)).collect();
        for_each_combination(&rest, size_b, &mut |b_cols| {
            let face = Face::from_vertices(
                universe,
                a_cols
                    .iter()
                    .copied()
                    .chain(b_cols.iter().map(|&c| n as u32 + c)),
            );
            facets.push(face);
        });
    });
    facets
}

/// The pure (2m-1)-dimensional complex on vertices u1..u_{2m+1},
/// v1..v_{2m+1} whose facets are the sets A union B with A from the u-side,
/// B from the v-side, |A| = |B| = m, and no column contributing both u_j and
/// v_j. It has C(2m+1, m) * (m+1) facets.
pub fn delta_even(m: u32) -> Result<SimplicialComplex> {
    if m < 3 {
        return Err(Error::FamilyParameter(m));
    }
    let m = m as usize;
    let n = 2 * m + 1;
    let facets = column_disjoint_facets(n, m, m);
    let (complex, dropped) = SimplicialComplex::from_parts(uv_labels(n), facets);
    debug_assert_eq!(dropped, 0);
    Ok(complex)
}

/// The odd companion on vertices u1..u_{2m}, v1..v_{2m}: facets are
/// column-disjoint A union B with |A| = m, |B| = m-1, giving a pure
/// (2m-2)-dimensional complex with C(2m, m) * m facets.
///
/// This characterization is validated against the transport-module polar
/// complex for m = 3 and 4 in the acceptance suite before being trusted for
/// larger m.
pub fn delta_odd(m: u32) -> Result<SimplicialComplex> {
    if m < 3 {
        return Err(Error::FamilyParameter(m));
    }
    let m = m as usize;
    let n = 2 * m;
    let facets = column_disjoint_facets(n, m, m - 1);
    let (complex, dropped) = SimplicialComplex::from_parts(uv_labels(n), facets);
    debug_assert_eq!(dropped, 0);
    Ok(complex)
}

/// The explicit facets of `delta_even(m)` used in the impurity arguments.
///
/// * `f`  = {u1, u3, ..., u_{m+1}, v_{m+2}, ..., v_{2m+1}}
/// * `f_prime` = {u2, u3, ..., u_{m+1}, v_{m+2}, ..., v_{2m+1}}
/// * `g`  = {v2, ..., v_{m+1}, u_{m+2}, ..., u_{2m+1}}
/// * `g_prime(v_j)` = {v1, ..., v_{m+1}, u_{m+2}, ..., u_{2m+1}} - {v_j}
///   for the designated columns j = 1, 2, 3.
///
/// `f` and `f_prime` are the only facets containing their common
/// (2m-2)-face `f - {u1}`, so deleting u1 and u2 leaves that face maximal
/// and the complex impure, while `g` (resp. every `g_prime`) keeps the
/// deleted complex at full dimension.
#[derive(Clone, Debug)]
pub struct ProofWitnesses {
    pub f: Face,
    pub f_prime: Face,
    pub g: Face,
    /// (column index j, facet) for j = 1, 2, 3.
    pub g_prime: Vec<(u32, Face)>,
}

pub fn proof_witnesses(m: u32) -> Result<ProofWitnesses> {
    if m < 3 {
        return Err(Error::FamilyParameter(m));
    }
    let n = (2 * m + 1) as usize;
    let universe = 2 * n;
    let u = |j: u32| j - 1; // u_j, 1-based column j
    let v = |j: u32| n as u32 + j - 1; // v_j

    let f = Face::from_vertices(
        universe,
        std::iter::once(u(1))
            .chain((3..=m + 1).map(u))
            .chain((m + 2..=2 * m + 1).map(v)),
    );
    let f_prime = Face::from_vertices(
        universe,
        (2..=m + 1).map(u).chain((m + 2..=2 * m + 1).map(v)),
    );
    let g = Face::from_vertices(
        universe,
        (2..=m + 1).map(v).chain((m + 2..=2 * m + 1).map(u)),
    );
    let g_prime = (1..=3)
        .map(|j| {
            let face = Face::from_vertices(
                universe,
                (1..=m + 1)
                    .filter(|&i| i != j)
                    .map(v)
                    .chain((m + 2..=2 * m + 1).map(u)),
            );
            (j, face)
        })
        .collect();
    Ok(ProofWitnesses {
        f,
        f_prime,
        g,
        g_prime,
    })
}

/// Generators of the column symmetry: the symmetric group on columns acts by
/// permuting the indices of u_j and v_j simultaneously. Returns the
/// transposition (1 2) and the full n-cycle.
pub fn column_symmetry_generators(n: usize) -> Vec<LabelPermutation> {
    let swap = LabelPermutation::from_pairs([
        ("u1".to_string(), "u2".to_string()),
        ("u2".to_string(), "u1".to_string()),
        ("v1".to_string(), "v2".to_string()),
        ("v2".to_string(), "v1".to_string()),
    ])
    .expect("transposition is a permutation");
    let mut cycle_pairs = Vec::with_capacity(2 * n);
    for j in 1..=n {
        let next = if j == n { 1 } else { j + 1 };
        cycle_pairs.push((format!("u{j}"), format!("u{next}")));
        cycle_pairs.push((format!("v{j}"), format!("v{next}")));
    }
    let cycle = LabelPermutation::from_pairs(cycle_pairs).expect("cycle is a permutation");
    vec![swap, cycle]
}

/// Detects the u1..un / v1..vn labeling and returns the column symmetry
/// generators if the complex carries it.
pub fn column_symmetry_for(c: &SimplicialComplex) -> Option<Vec<LabelPermutation>> {
    let total = c.num_vertices();
    if total < 4 || total % 2 != 0 {
        return None;
    }
    let n = total / 2;
    let mut expected: Vec<String> = uv_labels(n);
    expected.sort();
    let mut actual: Vec<String> = c.labels().to_vec();
    actual.sort();
    (expected == actual).then(|| column_symmetry_generators(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::binomial;

    #[test]
    fn delta_even_shape() {
        let c = delta_even(3).unwrap();
        assert_eq!(c.num_vertices(), 14);
        assert_eq!(c.num_facets(), 140);
        assert!(c.is_pure());
        assert_eq!(c.dim(), 5);

        for m in [3u32, 4] {
            let c = delta_even(m).unwrap();
            assert_eq!(c.num_vertices(), (4 * m + 2) as usize);
            assert_eq!(
                c.num_facets() as u64,
                binomial((2 * m + 1) as u64, m as u64) * (m as u64 + 1)
            );
            assert!(c.is_pure());
            assert_eq!(c.dim(), (2 * m - 1) as i32);
        }

        assert_eq!(delta_even(2).unwrap_err(), Error::FamilyParameter(2));
    }

    #[test]
    fn delta_even_contains_the_stated_facets() {
        let c = delta_even(3).unwrap();
        let f = c
            .face_from_labels(&["u1", "u3", "u4", "v5", "v6", "v7"])
            .unwrap();
        assert!(c.contains_facet(&f));

        // |A| = 4 > m is not even a face.
        let not_face = c
            .face_from_labels(&["u1", "u2", "u3", "u4", "v6", "v7"])
            .unwrap();
        assert!(!c.is_face(&not_face));

        // No facet uses both u_j and v_j.
        let uv = c.face_from_labels(&["u2", "v2"]).unwrap();
        assert!(!c.is_face(&uv));
    }

    #[test]
    fn delta_odd_shape() {
        let c = delta_odd(3).unwrap();
        assert_eq!(c.num_vertices(), 12);
        assert_eq!(c.num_facets(), 60);
        assert!(c.is_pure());
        assert_eq!(c.dim(), 4);
        for facet in c.facets() {
            assert_eq!(facet.len(), 5);
        }
        let uv = c.face_from_labels(&["u2", "v2"]).unwrap();
        assert!(!c.is_face(&uv));

        let c = delta_odd(4).unwrap();
        assert_eq!(c.num_vertices(), 16);
        assert_eq!(c.num_facets(), 280);
        assert_eq!(c.dim(), 6);

        assert_eq!(delta_odd(2).unwrap_err(), Error::FamilyParameter(2));
    }

    #[test]
    fn witnesses_are_facets_with_the_stated_intersection() {
        for m in [3u32, 4] {
            let c = delta_even(m).unwrap();
            let w = proof_witnesses(m).unwrap();
            assert!(c.contains_facet(&w.f));
            assert!(c.contains_facet(&w.f_prime));
            assert!(c.contains_facet(&w.g));
            for (_, gp) in &w.g_prime {
                assert!(c.contains_facet(gp));
            }

            // F and F' meet in F - {u1} = F' - {u2}, a (2m-2)-face.
            let u1 = c.face_from_labels(&["u1"]).unwrap();
            let u2 = c.face_from_labels(&["u2"]).unwrap();
            let common = w.f.minus(&u1);
            assert_eq!(common, w.f_prime.minus(&u2));
            assert_eq!(common.dim(), (2 * m - 2) as i32);
        }
    }

    #[test]
    fn witness_face_at_m3() {
        let c = delta_even(3).unwrap();
        let w = proof_witnesses(3).unwrap();
        assert_eq!(
            c.face_labels(&w.f),
            vec!["u1", "u3", "u4", "v5", "v6", "v7"]
        );
        assert_eq!(
            c.face_labels(&w.g),
            vec!["u5", "u6", "u7", "v2", "v3", "v4"]
        );
    }

    #[test]
    fn f_and_f_prime_are_the_only_facets_over_their_intersection() {
        for m in [3u32, 4] {
            let c = delta_even(m).unwrap();
            let w = proof_witnesses(m).unwrap();
            let u1 = c.face_from_labels(&["u1"]).unwrap();
            let common = w.f.minus(&u1);
            let containing: Vec<&Face> = c
                .facets()
                .iter()
                .filter(|x| common.is_subset(x))
                .collect();
            assert_eq!(containing.len(), 2);
            assert!(containing.contains(&&w.f));
            assert!(containing.contains(&&w.f_prime));
        }
    }

    #[test]
    fn deleting_u1_u2_leaves_the_common_face_maximal() {
        let c = delta_even(3).unwrap();
        let w = proof_witnesses(3).unwrap();
        let u1 = c.face_from_labels(&["u1"]).unwrap();
        // Deletion re-indexes vertices, so look u2 up again by label.
        let d1 = c.deletion(&u1);
        let u2 = d1.face_from_labels(&["u2"]).unwrap();
        let gamma = d1.deletion(&u2);
        assert!(!gamma.is_pure());
        assert_eq!(gamma.dim(), 5, "G keeps the deletion at full dimension");
        // F - {u1} survives as a facet of sub-maximal dimension.
        let common_labels = c.face_labels(&w.f.minus(&u1));
        let common = gamma.face_from_labels(&common_labels).unwrap();
        assert!(gamma.contains_facet(&common));
        assert_eq!(common.dim(), 4);
    }

    #[test]
    fn symmetry_generators_fix_the_families() {
        let c = delta_even(3).unwrap();
        let gens = column_symmetry_for(&c).unwrap();
        assert_eq!(gens.len(), 2);
        // Applying a generator to every facet permutes the facet set.
        for g in &gens {
            let mut lists: Vec<Vec<String>> = c
                .facets()
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|v| g.image(c.label(v)).to_string())
                        .collect::<Vec<_>>()
                })
                .collect();
            lists.sort();
            let (image, _) = SimplicialComplex::from_facets(&lists).unwrap();
            assert_eq!(image.canonical_key(), c.canonical_key());
        }

        assert!(column_symmetry_for(&delta_odd(3).unwrap()).is_some());
        let other = SimplicialComplex::from_facets(&[vec!["a", "b"]]).unwrap().0;
        assert!(column_symmetry_for(&other).is_none());
    }
}
