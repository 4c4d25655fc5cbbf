use crate::error::{Error, Result};

/// An equivalence relation on `0..size` in canonical form: each element maps
/// to the smallest element of its block. Whether it is actually a congruence
/// of a given structure is checked by [`crate::structure::Structure::check_congruence`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    size: usize,
    block_of: Vec<usize>,
}

impl Congruence {
    /// The identity relation `0_A`.
    pub fn identity(size: usize) -> Self {
        Congruence {
            size,
            block_of: (0..size).collect(),
        }
    }

    /// The full relation `1_A`.
    pub fn full(size: usize) -> Self {
        Congruence {
            size,
            block_of: vec![0; size.max(1)],
        }
    }

    /// Build from an arbitrary element-to-class map, canonicalizing
    /// representatives to block minima.
    pub fn from_classes(classes: &[usize]) -> Self {
        let size = classes.len();
        let mut min_of_class = std::collections::HashMap::new();
        for (x, &c) in classes.iter().enumerate() {
            min_of_class.entry(c).or_insert(x);
        }
        let block_of = classes.iter().map(|c| min_of_class[c]).collect();
        Congruence { size, block_of }
    }

    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut classes = vec![usize::MAX; size];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= size || classes[x] != usize::MAX {
                    return Err(Error::BadTable {
                        symbol: String::new(),
                        msg: "blocks must partition the domain".into(),
                    });
                }
                classes[x] = i;
            }
        }
        if classes.iter().any(|&c| c == usize::MAX) {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: "blocks must cover the domain".into(),
            });
        }
        Ok(Congruence::from_classes(&classes))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rep(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Block representatives in increasing order.
    pub fn reps(&self) -> Vec<usize> {
        let mut rs: Vec<usize> = (0..self.size).filter(|&x| self.block_of[x] == x).collect();
        rs.sort_unstable();
        rs
    }

    pub fn block_count(&self) -> usize {
        self.reps().len()
    }

    /// The block of `x`, sorted.
    pub fn block(&self, x: usize) -> Vec<usize> {
        let r = self.rep(x);
        (0..self.size).filter(|&y| self.block_of[y] == r).collect()
    }

    /// Blocks in order of their representatives.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.reps().iter().map(|&r| self.block(r)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.block_of.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_full(&self) -> bool {
        self.block_of.iter().all(|&r| r == 0)
    }

    /// Refinement order: self ⊆ other as relations.
    pub fn leq(&self, other: &Congruence) -> bool {
        (0..self.size).all(|x| other.related(x, self.rep(x)))
    }

    /// Meet (intersection) of two equivalence relations.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        assert_eq!(self.size, other.size);
        let mut key_to_class = std::collections::HashMap::new();
        let mut classes = Vec::with_capacity(self.size);
        for x in 0..self.size {
            let key = (self.rep(x), other.rep(x));
            let next = key_to_class.len();
            classes.push(*key_to_class.entry(key).or_insert(next));
        }
        Congruence::from_classes(&classes)
    }

    /// All unordered related pairs (x, y) with x < y.
    pub fn nontrivial_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size {
            for y in (x + 1)..self.size {
                if self.related(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Render as sorted blocks, e.g. `{0,1}{2}`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for b in self.blocks() {
            s.push('{');
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(&x.to_string());
            }
            s.push('}');
        }
        s
    }
}

/// Union-find over `0..n`, used by congruence generation.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Union two classes; returns true if they were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // keep the smaller element as root so canonical form falls out
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    pub fn to_congruence(&mut self) -> Congruence {
        let n = self.parent.len();
        let classes: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Congruence::from_classes(&classes)
    }
}
