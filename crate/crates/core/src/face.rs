use std::cmp::Ordering;
use std::collections::BTreeSet;

/// Index of a vertex inside the label table of the owning complex.
pub type VertexId = u32;

/// Width of the bitmask representation. Complexes with at most this many
/// vertices store faces as a single `u128`; larger universes fall back to an
/// ordered set.
pub const BITS_UNIVERSE: usize = 128;

/// A face: a finite, duplicate-free set of vertex indices.
///
/// The empty face is a legal face of every nonempty complex and has
/// dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    /// Bitmask over a universe of at most [`BITS_UNIVERSE`] vertices.
    Bits(u128),
    /// Ordered-set fallback for larger universes.
    Wide(BTreeSet<VertexId>),
}

impl Face {
    /// The empty face in the representation suitable for `universe` vertices.
    pub fn empty(universe: usize) -> Self {
        if universe <= BITS_UNIVERSE {
            Face::Bits(0)
        } else {
            Face::Wide(BTreeSet::new())
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = VertexId>>(universe: usize, vs: I) -> Self {
        let mut f = Face::empty(universe);
        for v in vs {
            f.insert(v);
        }
        f
    }

    pub fn insert(&mut self, v: VertexId) {
        match self {
            Face::Bits(b) => {
                debug_assert!((v as usize) < BITS_UNIVERSE);
                *b |= 1u128 << v;
            }
            Face::Wide(s) => {
                s.insert(v);
            }
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match self {
            Face::Bits(b) => (v as usize) < BITS_UNIVERSE && (b >> v) & 1 == 1,
            Face::Wide(s) => s.contains(&v),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Face::Bits(b) => b.count_ones() as usize,
            Face::Wide(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Face::Bits(b) => *b == 0,
            Face::Wide(s) => s.is_empty(),
        }
    }

    /// dim(F) = |F| - 1; the empty face has dimension -1.
    pub fn dim(&self) -> i32 {
        self.len() as i32 - 1
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        match (self, other) {
            (Face::Bits(a), Face::Bits(b)) => a & !b == 0,
            (Face::Wide(a), Face::Wide(b)) => a.is_subset(b),
            _ => mixed(),
        }
    }

    pub fn intersection_len(&self, other: &Face) -> usize {
        match (self, other) {
            (Face::Bits(a), Face::Bits(b)) => (a & b).count_ones() as usize,
            (Face::Wide(a), Face::Wide(b)) => a.intersection(b).count(),
            _ => mixed(),
        }
    }

    pub fn union(&self, other: &Face) -> Face {
        match (self, other) {
            (Face::Bits(a), Face::Bits(b)) => Face::Bits(a | b),
            (Face::Wide(a), Face::Wide(b)) => Face::Wide(a.union(b).copied().collect()),
            _ => mixed(),
        }
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &Face) -> Face {
        match (self, other) {
            (Face::Bits(a), Face::Bits(b)) => Face::Bits(a & !b),
            (Face::Wide(a), Face::Wide(b)) => Face::Wide(a.difference(b).copied().collect()),
            _ => mixed(),
        }
    }

    pub fn without(&self, v: VertexId) -> Face {
        match self {
            Face::Bits(b) => Face::Bits(b & !(1u128 << v)),
            Face::Wide(s) => {
                let mut s = s.clone();
                s.remove(&v);
                Face::Wide(s)
            }
        }
    }

    /// Vertices in increasing order.
    pub fn iter(&self) -> FaceIter<'_> {
        match self {
            Face::Bits(b) => FaceIter::Bits(*b),
            Face::Wide(s) => FaceIter::Wide(s.iter()),
        }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

#[cold]
fn mixed() -> ! {
    panic!("mixed face representations: faces belong to complexes of different widths")
}

pub enum FaceIter<'a> {
    Bits(u128),
    Wide(std::collections::btree_set::Iter<'a, VertexId>),
}

impl Iterator for FaceIter<'_> {
    type Item = VertexId;
    fn next(&mut self) -> Option<VertexId> {
        match self {
            FaceIter::Bits(b) => {
                if *b == 0 {
                    None
                } else {
                    let v = b.trailing_zeros();
                    *b &= *b - 1;
                    Some(v)
                }
            }
            FaceIter::Wide(it) => it.next().copied(),
        }
    }
}

/// Faces compare lexicographically by their increasing vertex sequence, so
/// `{a} < {a,b} < {b}`. This is the order used for deterministic candidate
/// enumeration and serialization of same-universe faces.
impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
