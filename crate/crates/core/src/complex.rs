use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::face::{Face, VertexId};

/// A pure-or-impure simplicial complex given by its vertex label table and
/// its inclusion-maximal faces.
///
/// The facet list is the whole representation: the downward closure is never
/// materialized, and every face query runs against the facets. Complexes are
/// immutable after construction; `link` and `deletion` return new complexes
/// whose vertex universe is re-indexed compactly (the label table keeps the
/// original names).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    /// Sorted lexicographically, duplicate-free, inclusion-maximal, nonempty
    /// list. The complex consisting of the empty face alone (the
    /// (-1)-simplex) is represented as a single empty facet over zero
    /// vertices.
    facets: Vec<Face>,
    /// max facet cardinality - 1
    dim: i32,
    /// min facet cardinality - 1; pure iff min_dim == dim
    min_dim: i32,
}

/// Key for exact (not isomorphism-aware) complex identity: two complexes get
/// equal keys iff they have identical facet sets over identical vertex label
/// sets. Used for memoization of subcomplex recurrences within a search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(String);

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'+' || b == b'-')
}

impl SimplicialComplex {
    /// Builds a complex from facet label lists. Labels are interned in
    /// first-appearance order; duplicate facets are merged and faces
    /// contained in other faces are dropped. Returns the complex together
    /// with the number of dropped (strictly contained) input faces.
    pub fn from_facets<S: AsRef<str>>(facet_lists: &[Vec<S>]) -> Result<(Self, usize)> {
        if facet_lists.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut labels: Vec<String> = Vec::new();
        let mut index: std::collections::HashMap<String, VertexId> =
            std::collections::HashMap::new();
        let mut raw: Vec<Vec<VertexId>> = Vec::with_capacity(facet_lists.len());
        for list in facet_lists {
            if list.is_empty() {
                return Err(Error::EmptyFacet);
            }
            let mut ids = Vec::with_capacity(list.len());
            for s in list {
                let s = s.as_ref();
                if !valid_label(s) {
                    return Err(Error::InvalidLabel(s.to_string()));
                }
                let id = *index.entry(s.to_string()).or_insert_with(|| {
                    labels.push(s.to_string());
                    (labels.len() - 1) as VertexId
                });
                if ids.contains(&id) {
                    return Err(Error::DuplicateLabel(s.to_string()));
                }
                ids.push(id);
            }
            raw.push(ids);
        }
        let universe = labels.len();
        let faces: Vec<Face> = raw
            .into_iter()
            .map(|ids| Face::from_vertices(universe, ids))
            .collect();
        Ok(Self::from_parts(labels, faces))
    }

    /// Builds a complex from an explicit label table and a face list, keeping
    /// the label table order. Duplicates are merged, non-maximal faces are
    /// dropped and counted, and facets are sorted. Vertices that end up
    /// unused are NOT compacted away here; callers that need compaction use
    /// [`Self::compacted`].
    pub(crate) fn from_parts(labels: Vec<String>, faces: Vec<Face>) -> (Self, usize) {
        let deduped: BTreeSet<Face> = faces.into_iter().collect();
        let n_in = deduped.len();
        // Keep faces not strictly contained in another.
        let mut kept: Vec<Face> = Vec::with_capacity(n_in);
        let all: Vec<Face> = deduped.into_iter().collect();
        'outer: for f in &all {
            for g in &all {
                if f != g && f.is_subset(g) {
                    continue 'outer;
                }
            }
            kept.push(f.clone());
        }
        let dropped = n_in - kept.len();
        kept.sort();
        let dim = kept.iter().map(|f| f.dim()).max().unwrap_or(-1);
        let min_dim = kept.iter().map(|f| f.dim()).min().unwrap_or(-1);
        debug_assert!(!kept.is_empty(), "complex must have at least one facet");
        (
            SimplicialComplex {
                labels,
                facets: kept,
                dim,
                min_dim,
            },
            dropped,
        )
    }

    /// Re-indexes onto the vertices that actually appear in `faces`,
    /// restricting `labels` accordingly, and builds the complex.
    fn compacted(labels: &[String], faces: Vec<Face>) -> Self {
        let mut used: BTreeSet<VertexId> = BTreeSet::new();
        for f in &faces {
            used.extend(f.iter());
        }
        let new_universe = used.len();
        let mut remap = vec![u32::MAX; labels.len()];
        let mut new_labels = Vec::with_capacity(new_universe);
        for (new, old) in used.iter().enumerate() {
            remap[*old as usize] = new as u32;
            new_labels.push(labels[*old as usize].clone());
        }
        let faces = faces
            .into_iter()
            .map(|f| Face::from_vertices(new_universe, f.iter().map(|v| remap[v as usize])))
            .collect();
        Self::from_parts(new_labels, faces).0
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as VertexId)
    }

    /// Builds a face of this complex from labels. Errors if a label is
    /// unknown or repeated. The result is not required to be a face of the
    /// complex; use [`Self::is_face`] to check.
    pub fn face_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        let mut f = Face::empty(self.num_vertices());
        for s in labels {
            let s = s.as_ref();
            let v = self
                .vertex_by_label(s)
                .ok_or_else(|| Error::InvalidLabel(s.to_string()))?;
            if f.contains(v) {
                return Err(Error::DuplicateLabel(s.to_string()));
            }
            f.insert(v);
        }
        Ok(f)
    }

    pub fn face_labels(&self, f: &Face) -> Vec<String> {
        let mut ls: Vec<String> = f.iter().map(|v| self.labels[v as usize].clone()).collect();
        ls.sort();
        ls
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// dim(Delta) = max facet dimension; -1 for the (-1)-simplex.
    pub fn dim(&self) -> i32 {
        self.dim
    }

    /// True iff all facets have the same dimension.
    pub fn is_pure(&self) -> bool {
        self.min_dim == self.dim
    }

    /// Some facet of sub-maximal dimension, if the complex is impure.
    pub fn impurity_witness(&self) -> Option<&Face> {
        if self.is_pure() {
            None
        } else {
            self.facets.iter().find(|f| f.dim() < self.dim)
        }
    }

    /// True iff the complex has exactly one facet (it is a simplex, possibly
    /// the (-1)-simplex).
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// True iff `f` is a face of the complex, i.e. a subset of some facet.
    pub fn is_face(&self, f: &Face) -> bool {
        self.facets.iter().any(|x| f.is_subset(x))
    }

    pub fn contains_facet(&self, f: &Face) -> bool {
        self.facets.binary_search(f).is_ok()
    }

    /// The link of `f`: all faces disjoint from `f` whose union with `f` is a
    /// face. Errors if `f` is not a face. The result is re-indexed onto its
    /// own vertex set.
    pub fn link(&self, f: &Face) -> Result<SimplicialComplex> {
        if !self.is_face(f) {
            return Err(Error::NotAFace);
        }
        // Facets of the link are exactly X \ f for facets X containing f;
        // they are pairwise incomparable because X -> X \ f preserves
        // inclusion both ways.
        let faces: Vec<Face> = self
            .facets
            .iter()
            .filter(|x| f.is_subset(x))
            .map(|x| x.minus(f))
            .collect();
        Ok(Self::compacted(&self.labels, faces))
    }

    /// The deletion (antistar) of `f`: the maximal faces of the complex that
    /// do not contain `f`. Deleting a non-face is a no-op. The empty face is
    /// contained in every face, so it is treated as not removable and the
    /// complex is returned unchanged.
    pub fn deletion(&self, f: &Face) -> SimplicialComplex {
        if f.is_empty() || !self.is_face(f) {
            return self.clone();
        }
        let mut candidates: Vec<Face> = Vec::with_capacity(self.facets.len());
        for x in &self.facets {
            if f.is_subset(x) {
                // Maximal subsets of x avoiding f: drop one vertex of f.
                for w in f.iter() {
                    candidates.push(x.without(w));
                }
            } else {
                candidates.push(x.clone());
            }
        }
        Self::compacted(&self.labels, candidates)
    }

    /// All faces of dimension `k`, deduplicated and sorted lexicographically
    /// by their label sequence, for -1 <= k <= dim.
    pub fn faces_of_dim(&self, k: i32) -> Result<Vec<Face>> {
        if k < -1 || k > self.dim {
            return Err(Error::DimOutOfRange { k, dim: self.dim });
        }
        if k == -1 {
            return Ok(vec![Face::empty(self.num_vertices())]);
        }
        let size = (k + 1) as usize;
        let mut out: BTreeSet<Face> = BTreeSet::new();
        let universe = self.num_vertices();
        for facet in &self.facets {
            let vs = facet.vertices();
            if vs.len() < size {
                continue;
            }
            for_each_combination(&vs, size, &mut |combo| {
                out.insert(Face::from_vertices(universe, combo.iter().copied()));
            });
        }
        Ok(self.label_sorted(out))
    }

    /// f_k: the number of k-dimensional faces.
    pub fn f_k(&self, k: i32) -> Result<usize> {
        Ok(self.faces_of_dim(k)?.len())
    }

    /// All nonempty faces of dimension at most `k`, sorted lexicographically
    /// by their label sequence. This is the candidate enumeration order of
    /// the decomposability searches, so it is independent of vertex
    /// numbering.
    pub fn faces_up_to_dim(&self, k: i32) -> Vec<Face> {
        let mut out: BTreeSet<Face> = BTreeSet::new();
        let universe = self.num_vertices();
        let max_size = (k.min(self.dim) + 1).max(0) as usize;
        for facet in &self.facets {
            let vs = facet.vertices();
            for size in 1..=max_size.min(vs.len()) {
                for_each_combination(&vs, size, &mut |combo| {
                    out.insert(Face::from_vertices(universe, combo.iter().copied()));
                });
            }
        }
        self.label_sorted(out)
    }

    fn label_sorted(&self, faces: BTreeSet<Face>) -> Vec<Face> {
        let mut keyed: Vec<(Vec<String>, Face)> = faces
            .into_iter()
            .map(|f| (self.face_labels(&f), f))
            .collect();
        keyed.sort();
        keyed.into_iter().map(|(_, f)| f).collect()
    }

    /// The canonical text form: one facet per line, labels within a facet
    /// sorted, facets sorted lexicographically by their label sequence. This
    /// is also the payload of the `.cplx` serialization.
    pub fn canonical_form(&self) -> String {
        let mut lines: Vec<String> = self
            .facets
            .iter()
            .map(|f| self.face_labels(f).join(" "))
            .collect();
        lines.sort();
        lines.join("\n")
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey(self.canonical_form())
    }

    /// The facet-ridge graph of a pure complex: nodes are facet indices,
    /// edges join facets sharing a codimension-one face.
    pub fn ridge_graph(&self) -> Result<FacetGraph> {
        if !self.is_pure() {
            return Err(Error::ImpureComplex);
        }
        let n = self.facets.len();
        let mut adjacency = vec![Vec::new(); n];
        let facet_size = (self.dim + 1) as usize;
        for i in 0..n {
            for j in (i + 1)..n {
                if facet_size > 0
                    && self.facets[i].intersection_len(&self.facets[j]) == facet_size - 1
                {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        Ok(FacetGraph { adjacency })
    }

    /// All-pairs facet-ridge diameter by breadth-first search from every
    /// facet. Errors if the complex is impure; a disconnected complex yields
    /// `diameter: None`.
    pub fn diameter(&self) -> Result<DiameterReport> {
        let graph = self.ridge_graph()?;
        let n = graph.num_nodes();
        let mut best: Option<(usize, (usize, usize))> = None;
        for src in 0..n {
            let dist = graph.bfs_distances(src);
            for (j, d) in dist.iter().enumerate() {
                match d {
                    None => {
                        return Ok(DiameterReport {
                            diameter: None,
                            num_vertices: self.num_vertices(),
                            dim: self.dim,
                            eccentric_pair: None,
                        });
                    }
                    Some(d) => {
                        if best.map_or(true, |(b, _)| *d > b) {
                            best = Some((*d, (src, j)));
                        }
                    }
                }
            }
        }
        let (diameter, (i, j)) = best.expect("nonempty complex has at least one facet");
        Ok(DiameterReport {
            diameter: Some(diameter),
            num_vertices: self.num_vertices(),
            dim: self.dim,
            eccentric_pair: Some((self.facets[i].clone(), self.facets[j].clone())),
        })
    }
}

/// Facet adjacency of a pure complex; node `i` is facet `i` of the owning
/// complex's facet list.
#[derive(Clone, Debug)]
pub struct FacetGraph {
    adjacency: Vec<Vec<usize>>,
}

impl FacetGraph {
    pub fn num_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adjacency.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::new();
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    pub fn distance(&self, i: usize, j: usize) -> Option<usize> {
        self.bfs_distances(i)[j]
    }
}

/// Result of a diameter computation.
#[derive(Clone, Debug)]
pub struct DiameterReport {
    /// `None` marks a disconnected facet-ridge graph.
    pub diameter: Option<usize>,
    /// f_0 of the complex.
    pub num_vertices: usize,
    pub dim: i32,
    /// A pair of facets realizing the diameter; absent if disconnected.
    pub eccentric_pair: Option<(Face, Face)>,
}

/// Calls `f` on every `size`-subset of `items`, in lexicographic order.
pub(crate) fn for_each_combination<T: Copy>(items: &[T], size: usize, f: &mut impl FnMut(&[T])) {
    if size > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    loop {
        f(&buf);
        // Advance the combination indices.
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + items.len() - size {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..size {
            idx[j] = idx[j - 1] + 1;
        }
        for (b, &i) in buf.iter_mut().zip(idx.iter()) {
            *b = items[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cplx(lists: &[&[&str]]) -> SimplicialComplex {
        let lists: Vec<Vec<String>> = lists
            .iter()
            .map(|l| l.iter().map(|s| s.to_string()).collect())
            .collect();
        SimplicialComplex::from_facets(&lists).unwrap().0
    }

    #[test]
    fn from_facets_basics() {
        let (c, dropped) =
            SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["b", "c"]]).unwrap();
        assert_eq!(dropped, 0);
        assert_eq!(c.num_vertices(), 3);
        assert_eq!(c.facets().len(), 2);
        assert_eq!(c.labels(), &["a", "b", "c"]);
        assert_eq!(
            c.facets()[0].vertices(),
            vec![0, 1],
            "labels interned in first-appearance order"
        );
    }

    #[test]
    fn from_facets_maximality() {
        let (c, dropped) = SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["a"]]).unwrap();
        assert_eq!(dropped, 1);
        assert_eq!(c.facets().len(), 1);
    }

    #[test]
    fn from_facets_errors() {
        assert_eq!(
            SimplicialComplex::from_facets::<&str>(&[]).unwrap_err(),
            Error::EmptyComplex
        );
        assert_eq!(
            SimplicialComplex::from_facets(&[vec!["a", "a"]]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert!(matches!(
            SimplicialComplex::from_facets(&[vec!["a b"]]).unwrap_err(),
            Error::InvalidLabel(_)
        ));
        assert_eq!(
            SimplicialComplex::from_facets(&[Vec::<&str>::new()]).unwrap_err(),
            Error::EmptyFacet
        );
    }

    #[test]
    fn purity() {
        let c = cplx(&[&["a", "b"], &["b", "c"], &["c", "d"]]);
        assert!(c.is_pure());
        assert!(c.impurity_witness().is_none());

        let c = cplx(&[&["a", "b"], &["c"]]);
        assert!(!c.is_pure());
        let w = c.impurity_witness().unwrap();
        assert_eq!(c.face_labels(w), vec!["c"]);
    }

    #[test]
    fn link_examples() {
        // Link of the empty face is the complex itself.
        let c = cplx(&[&["a", "b"], &["b", "c"]]);
        let empty = Face::empty(c.num_vertices());
        let l = c.link(&empty).unwrap();
        assert_eq!(l.canonical_key(), c.canonical_key());

        // Boundary of a triangle: link of a vertex is the two opposite
        // vertices.
        let c = cplx(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        let a = c.face_from_labels(&["a"]).unwrap();
        let l = c.link(&a).unwrap();
        assert_eq!(l.num_facets(), 2);
        assert_eq!(l.dim(), 0);
        assert_eq!(l.canonical_form(), "b\nc");

        // Not a face.
        let bad = c.face_from_labels(&["a", "b", "c"]).unwrap();
        assert_eq!(c.link(&bad).unwrap_err(), Error::NotAFace);
    }

    #[test]
    fn link_of_facet_is_minus_one_simplex() {
        let c = cplx(&[&["a", "b", "c"]]);
        let f = c.face_from_labels(&["a", "b", "c"]).unwrap();
        let l = c.link(&f).unwrap();
        assert_eq!(l.dim(), -1);
        assert!(l.is_simplex());
        assert_eq!(l.num_vertices(), 0);
    }

    #[test]
    fn deletion_examples() {
        let c = cplx(&[&["a", "b"], &["b", "c"]]);
        let v = c.face_from_labels(&["c"]).unwrap();
        let d = c.deletion(&v);
        assert_eq!(d.canonical_form(), "a b");

        let c = cplx(&[&["a", "b", "c"]]);
        let v = c.face_from_labels(&["a"]).unwrap();
        let d = c.deletion(&v);
        assert_eq!(d.canonical_form(), "b c");

        // Deleting a non-face is a no-op.
        let c = cplx(&[&["a", "b"], &["b", "c"]]);
        let ac = c.face_from_labels(&["a", "c"]).unwrap();
        assert_eq!(c.deletion(&ac).canonical_key(), c.canonical_key());
    }

    #[test]
    fn deletion_of_edge_keeps_endpoints() {
        let c = cplx(&[&["a", "b", "c"]]);
        let ab = c.face_from_labels(&["a", "b"]).unwrap();
        let d = c.deletion(&ab);
        assert_eq!(d.canonical_form(), "a c\nb c");
    }

    #[test]
    fn faces_of_dim_examples() {
        let c = cplx(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        assert_eq!(c.f_k(0).unwrap(), 3);
        assert_eq!(c.f_k(1).unwrap(), 3);
        assert_eq!(c.f_k(-1).unwrap(), 1);
        assert!(matches!(
            c.faces_of_dim(2),
            Err(Error::DimOutOfRange { .. })
        ));
        assert!(matches!(
            c.faces_of_dim(-2),
            Err(Error::DimOutOfRange { .. })
        ));
    }

    #[test]
    fn simplex_checks() {
        assert!(cplx(&[&["a", "b", "c"]]).is_simplex());
        assert!(!cplx(&[&["a", "b"], &["b", "c"]]).is_simplex());
    }

    #[test]
    fn ridge_graph_examples() {
        // Boundary of a triangle: 3-cycle.
        let c = cplx(&[&["a", "b"], &["b", "c"], &["c", "a"]]);
        let g = c.ridge_graph().unwrap();
        assert_eq!(g.num_nodes(), 3);
        assert_eq!(g.num_edges(), 3);

        // Boundary of a tetrahedron: K4.
        let c = cplx(&[&["a", "b", "c"], &["a", "b", "d"], &["a", "c", "d"], &["b", "c", "d"]]);
        let g = c.ridge_graph().unwrap();
        assert_eq!(g.num_edges(), 6);

        // Impure complex is rejected.
        let c = cplx(&[&["a", "b"], &["c"]]);
        assert_eq!(c.ridge_graph().unwrap_err(), Error::ImpureComplex);
    }

    #[test]
    fn diameter_examples() {
        // Boundary of the d-simplex has diameter 1.
        for d in 2..=5 {
            let labels: Vec<String> = (0..=d).map(|i| format!("x{i}")).collect();
            let mut lists = Vec::new();
            for skip in 0..=d {
                lists.push(
                    labels
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, l)| l.clone())
                        .collect::<Vec<_>>(),
                );
            }
            let (c, _) = SimplicialComplex::from_facets(&lists).unwrap();
            let rep = c.diameter().unwrap();
            assert_eq!(rep.diameter, Some(1));
        }

        // 4-cycle has diameter 2.
        let c = cplx(&[&["a", "b"], &["b", "c"], &["c", "d"], &["d", "a"]]);
        let rep = c.diameter().unwrap();
        assert_eq!(rep.diameter, Some(2));
        let (f, g) = rep.eccentric_pair.unwrap();
        let graph = c.ridge_graph().unwrap();
        let i = c.facets().iter().position(|x| *x == f).unwrap();
        let j = c.facets().iter().position(|x| *x == g).unwrap();
        assert_eq!(graph.distance(i, j), Some(2));
        assert_eq!(graph.distance(j, i), Some(2));

        // Two disjoint edges: disconnected.
        let c = cplx(&[&["a", "b"], &["c", "d"]]);
        let rep = c.diameter().unwrap();
        assert_eq!(rep.diameter, None);
        assert!(rep.eccentric_pair.is_none());
    }

    #[test]
    fn canonical_key_examples() {
        let c = cplx(&[&["b", "a"], &["c", "b"]]);
        // Reconstruction from the complex's own facet list yields an equal
        // key even though interning order may differ.
        let lists: Vec<Vec<String>> = c.facets().iter().map(|f| c.face_labels(f)).collect();
        let (c2, _) = SimplicialComplex::from_facets(&lists).unwrap();
        assert_eq!(c.canonical_key(), c2.canonical_key());

        assert_ne!(
            cplx(&[&["a", "b"]]).canonical_key(),
            cplx(&[&["a", "c"]]).canonical_key()
        );

        let v = c.face_from_labels(&["c"]).unwrap();
        assert_eq!(
            c.deletion(&v).canonical_key(),
            c.deletion(&v).canonical_key()
        );
    }

    #[test]
    fn wide_universe_fallback() {
        // A path on 130 vertices exercises the ordered-set face fallback.
        let labels: Vec<String> = (0..130).map(|i| format!("p{i}")).collect();
        let lists: Vec<Vec<String>> = (0..129)
            .map(|i| vec![labels[i].clone(), labels[i + 1].clone()])
            .collect();
        let (c, _) = SimplicialComplex::from_facets(&lists).unwrap();
        assert_eq!(c.num_vertices(), 130);
        assert!(matches!(c.facets()[0], Face::Wide(_)));
        assert!(c.is_pure());
        let rep = c.diameter().unwrap();
        assert_eq!(rep.diameter, Some(128));

        // Deleting down into bitmask range switches representation.
        let v = c.face_from_labels(&["p129"]).unwrap();
        let d = c.deletion(&v);
        assert_eq!(d.num_vertices(), 129);
        assert!(matches!(d.facets()[0], Face::Wide(_)));
        let v = d.face_from_labels(&["p128"]).unwrap();
        let d = d.deletion(&v);
        assert_eq!(d.num_vertices(), 128);
        assert!(matches!(d.facets()[0], Face::Bits(_)));
        assert_eq!(d.diameter().unwrap().diameter, Some(126));
    }

    #[test]
    fn combination_enumeration() {
        let mut seen = Vec::new();
        for_each_combination(&[1, 2, 3, 4], 2, &mut |c| seen.push(c.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        let mut seen = Vec::new();
        for_each_combination(&[1, 2], 3, &mut |c| seen.push(c.to_vec()));
        assert!(seen.is_empty());
        let mut seen = Vec::new();
        for_each_combination(&[1, 2], 2, &mut |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![1, 2]]);
    }
}
