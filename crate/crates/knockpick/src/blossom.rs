//! Maximum-cardinality matching on general undirected graphs.
//!
//! Edmonds' blossom method: grow an alternating tree from each free vertex
//! with BFS, contract odd cycles (blossoms) onto their base vertex, and
//! augment along the tree path when another free vertex is reached. Runs in
//! O(V^3); vertices are processed in index order, so results are
//! deterministic for a fixed adjacency layout.

const NONE: usize = usize::MAX;

/// Computes a maximum matching of the graph given as adjacency lists over
/// vertices `0..n`. Lists must be symmetric and free of self-loops.
/// Returns the matched partner of each vertex.
pub fn maximum_matching(n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    assert_eq!(adj.len(), n, "adjacency list count must match vertex count");
    let mut m = Matcher {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        blossom: vec![false; n],
        queue: Vec::with_capacity(n),
    };
    // Greedy seeding in index order; augmentation settles the rest.
    for (v, neighbors) in adj.iter().enumerate() {
        if m.mate[v] == NONE {
            if let Some(&u) = neighbors.iter().find(|&&u| m.mate[u] == NONE) {
                m.mate[v] = u;
                m.mate[u] = v;
            }
        }
    }
    for v in 0..n {
        if m.mate[v] == NONE {
            if let Some(end) = m.find_augmenting_path(v) {
                m.augment(end);
            }
        }
    }
    m.mate
        .into_iter()
        .map(|u| (u != NONE).then_some(u))
        .collect()
}

struct Matcher<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    /// Tree parent, assigned to odd-level vertices.
    parent: Vec<usize>,
    /// Base vertex of the contracted blossom each vertex currently lies in.
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl Matcher<'_> {
    /// BFS from `root`, contracting blossoms on the fly. Returns the exposed
    /// endpoint of an augmenting path, if one exists.
    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // `to` is an even vertex already in the tree: odd cycle.
                    let cur_base = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur_base, to);
                    self.mark_path(to, cur_base, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur_base;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let w = self.mate[to];
                    self.used[w] = true;
                    self.queue.push(w);
                }
            }
        }
        None
    }

    /// Lowest common ancestor of the blossom bases of `a` and `b` in the
    /// alternating tree.
    fn lca(&self, a: usize, b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        let mut v = a;
        loop {
            v = self.base[v];
            seen[v] = true;
            if self.mate[v] == NONE {
                break; // reached the root
            }
            v = self.parent[self.mate[v]];
        }
        let mut v = b;
        loop {
            v = self.base[v];
            if seen[v] {
                return v;
            }
            v = self.parent[self.mate[v]];
        }
    }

    /// Walks from `v` down to the blossom base `b`, marking traversed bases
    /// and rethreading parents so the cycle can be traversed both ways.
    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Flips matched/unmatched edges along the tree path ending at `v`.
    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}
