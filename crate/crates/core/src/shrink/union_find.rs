use alloc::vec::Vec;

/// Disjoint sets where each member records whether it sits on the same shore
/// as its parent (`false`) or the opposite one (`true`).
///
/// Parities compose by XOR along the path to the root. Roots are chosen by the
/// caller, so there is no union by rank; path compression alone keeps finds cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl SignedUnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            parity: alloc::vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn is_root(&self, x: usize) -> bool {
        self.parent[x] == x
    }

    /// Root of `x` and the parity of `x` relative to it, compressing the path.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let (root, parity) = self.root_of(x);
        // Second pass: point every node on the path straight at the root.
        let mut node = x;
        let mut acc = parity;
        while self.parent[node] != node {
            let next = self.parent[node];
            let own = self.parity[node];
            self.parent[node] = root;
            self.parity[node] = acc;
            acc ^= own;
            node = next;
        }
        (root, parity)
    }

    /// Like [`SignedUnionFind::find`] without mutating.
    pub fn root_of(&self, mut x: usize) -> (usize, bool) {
        let mut parity = false;
        while self.parent[x] != x {
            parity ^= self.parity[x];
            x = self.parent[x];
        }
        (x, parity)
    }

    /// Hangs root `child` below root `parent` with the given relative parity.
    pub fn attach(&mut self, child: usize, parent: usize, opposite: bool) {
        debug_assert!(self.is_root(child) && self.is_root(parent) && child != parent);
        self.parent[child] = parent;
        self.parity[child] = opposite;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parities_compose_and_survive_compression() {
        let mut uf = SignedUnionFind::new(4);
        uf.attach(0, 1, true);
        uf.attach(1, 2, true);
        uf.attach(2, 3, false);
        assert_eq!(uf.root_of(0), (3, false));
        assert_eq!(uf.root_of(1), (3, true));
        assert_eq!(uf.find(0), (3, false));
        assert_eq!(uf.root_of(1), (3, true));
        assert_eq!(uf.root_of(2), (3, false));
        assert!(uf.is_root(3));
        // Compression points 0 straight at the root with the composed parity.
        assert_eq!(uf.parent[0], 3);
        assert!(!uf.parity[0]);
    }
}
