//! Simple undirected graphs: generators, operations, and text formats.
//!
//! Adjacency is stored twice, both built once at construction and immutable
//! afterwards: bitset rows for the combinatorial searches, and a dense 0/1
//! symmetric matrix for the linear algebra. Vertices are always 0..n-1;
//! every generator documents its labeling so seeded outputs are reproducible
//! bit for bit.

use crate::bitset::{words_for, Bits};
use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;
use crate::rng::SplitMix64;

/// Largest n accepted by `canonical_code` (n! permutations are enumerated).
pub const CANONICAL_CODE_MAX_N: usize = 9;

/// An immutable simple undirected graph.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    m: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    dense: SymmetricMatrix,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph by asking `f(i, j)` for every pair i < j.
    fn build(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Graph {
        let wpr = words_for(n);
        let mut bits = vec![0u64; n * wpr];
        let mut m = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if f(i, j) {
                    bits[i * wpr + j / 64] |= 1 << (j % 64);
                    bits[j * wpr + i / 64] |= 1 << (i % 64);
                    m += 1;
                }
            }
        }
        let dense = SymmetricMatrix::from_fn(n, |i, j| {
            if i != j && bits[i * wpr + j / 64] >> (j % 64) & 1 == 1 {
                1.0
            } else {
                0.0
            }
        });
        Graph { n, m, words_per_row: wpr, bits, dense }
    }

    /// Builds from an explicit edge list. Rejects out-of-range endpoints,
    /// self-loops, and duplicate edges (in either orientation).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut seen = vec![false; n * n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            let key = u.min(v) * n + u.max(v);
            if seen[key] {
                return Err(Error::invalid(format!("duplicate edge ({u},{v})")));
            }
            seen[key] = true;
        }
        Ok(Graph::build(n, |i, j| seen[i * n + j]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        u != v && self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    /// Bitset words of vertex u's neighborhood row.
    pub fn row_words(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words_per_row..(u + 1) * self.words_per_row]
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        Bits::from_words(self.n, self.row_words(u).to_vec()).to_vec()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row_words(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    /// Edges in ascending (u, v) order with u < v.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency(&self) -> &SymmetricMatrix {
        &self.dense
    }

    // ----- operations -----

    pub fn complement(&self) -> Graph {
        Graph::build(self.n, |i, j| !self.has_edge(i, j))
    }

    /// Induced subgraph on `s`; vertex k of the result is `s[k]`. The indices
    /// must be in range and pairwise distinct, and `s` must be nonempty.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Graph> {
        if s.is_empty() {
            return Err(Error::invalid("induced subgraph on empty vertex set"));
        }
        let mut seen = vec![false; self.n];
        for &v in s {
            if v >= self.n {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
            if seen[v] {
                return Err(Error::invalid(format!("duplicate vertex {v} in subset")));
            }
            seen[v] = true;
        }
        Ok(Graph::build(s.len(), |i, j| self.has_edge(s[i], s[j])))
    }

    /// Join: disjoint union plus all edges across. Vertices of `other` are
    /// shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let n1 = self.n;
        Graph::build(n1 + other.n, |i, j| {
            if j < n1 {
                self.has_edge(i, j)
            } else if i >= n1 {
                other.has_edge(i - n1, j - n1)
            } else {
                true
            }
        })
    }

    /// Strong product; vertex (a, b) gets index `a * other.n() + b`.
    pub fn strong_product(&self, other: &Graph) -> Graph {
        let n2 = other.n;
        Graph::build(self.n * n2, |x, y| {
            let (a1, b1) = (x / n2, x % n2);
            let (a2, b2) = (y / n2, y % n2);
            let a_ok = a1 == a2 || self.has_edge(a1, a2);
            let b_ok = b1 == b2 || other.has_edge(b1, b2);
            a_ok && b_ok
        })
    }

    /// Adds a twin of `v`: a new vertex (index n) adjacent to `v` and to all
    /// of `v`'s neighbors.
    pub fn replicate_vertex(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(Error::invalid(format!("vertex {v} out of range")));
        }
        let n = self.n;
        Ok(Graph::build(n + 1, |i, j| {
            if j < n {
                self.has_edge(i, j)
            } else {
                i == v || self.has_edge(i, v)
            }
        }))
    }

    /// Mycielskian. For input vertices v_0..v_{n-1}: the result keeps them as
    /// 0..n-1, adds shadows u_i = n + i (u_i adjacent to the neighbors of
    /// v_i), and an apex w = 2n adjacent to every shadow.
    pub fn mycielskian(&self) -> Graph {
        let n = self.n;
        let w = 2 * n;
        Graph::build(2 * n + 1, |i, j| {
            let (i, j) = (i.min(j), i.max(j));
            if j < n {
                self.has_edge(i, j)
            } else if j < w {
                i < n && self.has_edge(i, j - n)
            } else {
                (n..w).contains(&i)
            }
        })
    }

    /// Connected components, each sorted ascending; components ordered by
    /// their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Two-coloring if the graph is bipartite: (side of vertex 0's class,
    /// other side), both sorted. None if an odd cycle exists.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color = vec![usize::MAX; self.n];
        for start in 0..self.n {
            if color[start] != usize::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if color[v] == usize::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| color[v] == 0).collect();
        let b = (0..self.n).filter(|&v| color[v] == 1).collect();
        Some((a, b))
    }

    /// The parts if the graph is complete multipartite (equivalently, its
    /// complement is a disjoint union of cliques), sorted by smallest member.
    pub fn complete_multipartite_parts(&self) -> Option<Vec<Vec<usize>>> {
        let co = self.complement();
        let comps = co.connected_components();
        for comp in &comps {
            for (ai, &a) in comp.iter().enumerate() {
                for &b in &comp[ai + 1..] {
                    if !co.has_edge(a, b) {
                        return None;
                    }
                }
            }
        }
        Some(comps)
    }

    // ----- generators -----

    pub fn complete(n: usize) -> Graph {
        Graph::build(n, |_, _| true)
    }

    pub fn empty(n: usize) -> Graph {
        Graph::build(n, |_, _| false)
    }

    /// Cycle 0-1-...-(n-1)-0. Requires n >= 3.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::invalid("cycle needs at least 3 vertices"));
        }
        Ok(Graph::build(n, |i, j| j == i + 1 || (i == 0 && j == n - 1)))
    }

    /// Path 0-1-...-(n-1) on n vertices (n - 1 edges). Requires n >= 1.
    pub fn path(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::invalid("path needs at least 1 vertex"));
        }
        Ok(Graph::build(n, |i, j| j == i + 1))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::build(a + b, |i, j| i < a && j >= a)
    }

    /// Complete multipartite graph; part k occupies the next `sizes[k]`
    /// consecutive indices. Requires at least one part, all sizes >= 1.
    pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
        if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
            return Err(Error::invalid("part sizes must be nonempty and positive"));
        }
        let n: usize = sizes.iter().sum();
        let mut part = vec![0usize; n];
        let mut v = 0;
        for (k, &s) in sizes.iter().enumerate() {
            for _ in 0..s {
                part[v] = k;
                v += 1;
            }
        }
        Ok(Graph::build(n, |i, j| part[i] != part[j]))
    }

    /// k-th power of the n-cycle: i ~ j iff their circular distance is at
    /// most k. Requires n >= 3, k >= 1.
    pub fn cycle_power(n: usize, k: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::invalid("cycle power needs at least 3 vertices"));
        }
        if k == 0 {
            return Err(Error::invalid("cycle power needs k >= 1"));
        }
        Ok(Graph::build(n, |i, j| {
            let d = (j - i).min(n - (j - i));
            d <= k
        }))
    }

    /// Paley graph on q vertices (q prime, q = 1 mod 4): x ~ y iff x - y is
    /// a nonzero quadratic residue mod q.
    pub fn paley(q: usize) -> Result<Graph> {
        if q < 5 || !is_prime(q) || q % 4 != 1 {
            return Err(Error::invalid(format!(
                "paley graph needs a prime q = 1 (mod 4), got {q}"
            )));
        }
        let mut residue = vec![false; q];
        for x in 1..q {
            residue[x * x % q] = true;
        }
        Ok(Graph::build(q, |i, j| residue[(j - i) % q]))
    }

    /// Iterated Mycielskian M_k: M_2 = K_2, M_{j+1} = mycielskian(M_j).
    /// M_3 is the 5-cycle, M_4 the 11-vertex Grotzsch graph. Requires k >= 2.
    pub fn mycielski(k: usize) -> Result<Graph> {
        if k < 2 {
            return Err(Error::invalid("mycielski graphs start at k = 2"));
        }
        let mut g = Graph::complete(2);
        for _ in 2..k {
            g = g.mycielskian();
        }
        Ok(g)
    }

    /// Erdos-Renyi G(n, p), reproducible from the seed: one SplitMix64 draw
    /// per pair (i, j) with i < j in row-major order, edge iff draw < p.
    pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!("edge probability {p} outside [0,1]")));
        }
        let mut rng = SplitMix64::new(seed);
        Ok(Graph::build(n, |_, _| rng.next_f64() < p))
    }

    /// Odd hole C_{2k+1} (k >= 2, so length >= 5).
    pub fn odd_hole(k: usize) -> Result<Graph> {
        if k < 2 {
            return Err(Error::invalid("odd hole needs k >= 2 (length >= 5)"));
        }
        Graph::cycle(2 * k + 1)
    }

    /// Odd antihole: complement of C_{2k+1} (k >= 2).
    pub fn odd_antihole(k: usize) -> Result<Graph> {
        Ok(Graph::odd_hole(k)?.complement())
    }

    /// Hamming distance graph on binary d-tuples: vertices are the integers
    /// 0..2^d read as bitmasks, i ~ j iff their Hamming distance is >= t.
    /// Requires 1 <= d <= 10 (the vertex count is 2^d).
    pub fn hamming_distance(d: usize, t: usize) -> Result<Graph> {
        if d == 0 || d > 10 {
            return Err(Error::invalid("hamming distance graph needs 1 <= d <= 10"));
        }
        let n = 1usize << d;
        Ok(Graph::build(n, |i, j| (i ^ j).count_ones() as usize >= t))
    }

    // ----- canonical form -----

    /// Canonical code: the minimum over all vertex permutations of the
    /// upper-triangle edge bitmask (row-major pair order). Two graphs on the
    /// same vertex count are isomorphic iff their codes agree. Enumerates all
    /// n! permutations, so n is capped at `CANONICAL_CODE_MAX_N`.
    pub fn canonical_code(&self) -> Result<u64> {
        let n = self.n;
        if n > CANONICAL_CODE_MAX_N {
            return Err(Error::limit(format!(
                "canonical code enumerates n! permutations; n={n} exceeds {CANONICAL_CODE_MAX_N}"
            )));
        }
        if n < 2 {
            return Ok(0);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut code = 0u64;
            let mut bit = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if self.has_edge(p[i], p[j]) {
                        code |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            best = best.min(code);
        });
        Ok(best)
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ----- text formats -----

/// Parses the edge-list format: optional `#` comments, a header line `n m`,
/// then m lines `i j` (0-indexed endpoints in any order).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut tokens = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        tokens.extend(line.split_whitespace().map(str::to_owned));
    }
    let mut it = tokens.iter();
    let mut next_usize = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad {what}: {tok:?}")))
    };
    let n = next_usize("vertex count")?;
    let m = next_usize("edge count")?;
    let mut edges = Vec::with_capacity(m);
    for k in 0..m {
        let u = next_usize(&format!("edge {k} endpoint"))?;
        let v = next_usize(&format!("edge {k} endpoint"))?;
        edges.push((u, v));
    }
    if it.next().is_some() {
        return Err(Error::Parse("trailing tokens after edge list".into()));
    }
    Graph::from_edges(n, &edges).map_err(|e| Error::Parse(e.to_string()))
}

/// Writes the edge-list format with a `n m` header and one `i j` line per
/// edge (i < j, ascending).
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Graphviz DOT export (undirected, default styling, isolated vertices
/// listed explicitly).
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph g {\n");
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
