//! Directed multigraph used as the backing structure of every presentation.
//!
//! States and edges are indexed densely; algorithms here are the graph-level
//! workhorses: strong connectivity, cyclic period, phase classes and
//! primitivity indices.

use std::collections::VecDeque;

/// A directed multigraph. Parallel edges and self-loops are allowed; both are
/// needed (adjacency matrices with entries above 1 occur in the fixtures).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    state_count: usize,
    /// `(src, dst)` per edge, indexed by edge id.
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(state_count: usize, edge_list: &[(usize, usize)]) -> Self {
        let mut out = vec![Vec::new(); state_count];
        let mut inc = vec![Vec::new(); state_count];
        for (i, &(s, d)) in edge_list.iter().enumerate() {
            assert!(s < state_count && d < state_count, "edge endpoint out of range");
            out[s].push(i);
            inc[d].push(i);
        }
        Digraph { state_count, edges: edge_list.to_vec(), out, inc }
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn src(&self, e: usize) -> usize {
        self.edges[e].0
    }

    pub fn dst(&self, e: usize) -> usize {
        self.edges[e].1
    }

    pub fn out_edges(&self, s: usize) -> &[usize] {
        &self.out[s]
    }

    pub fn in_edges(&self, s: usize) -> &[usize] {
        &self.inc[s]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge-reversed copy, keeping edge ids.
    pub fn reversed(&self) -> Digraph {
        let rev: Vec<(usize, usize)> = self.edges.iter().map(|&(s, d)| (d, s)).collect();
        Digraph::new(self.state_count, &rev)
    }

    /// States lacking an incoming or outgoing edge, computed iteratively:
    /// removing a state may strand its neighbours. Returns the set of states
    /// that survive.
    pub fn essential_states(&self) -> Vec<bool> {
        let mut alive_edge = vec![true; self.edges.len()];
        let mut alive = vec![true; self.state_count];
        let mut outdeg: Vec<usize> = self.out.iter().map(|v| v.len()).collect();
        let mut indeg: Vec<usize> = self.inc.iter().map(|v| v.len()).collect();
        let mut queue: VecDeque<usize> =
            (0..self.state_count).filter(|&s| outdeg[s] == 0 || indeg[s] == 0).collect();
        while let Some(s) = queue.pop_front() {
            if !alive[s] {
                continue;
            }
            alive[s] = false;
            for &e in &self.out[s] {
                if alive_edge[e] {
                    alive_edge[e] = false;
                    let d = self.dst(e);
                    indeg[d] -= 1;
                    if alive[d] && indeg[d] == 0 {
                        queue.push_back(d);
                    }
                }
            }
            for &e in &self.inc[s] {
                if alive_edge[e] {
                    alive_edge[e] = false;
                    let sr = self.src(e);
                    outdeg[sr] -= 1;
                    if alive[sr] && outdeg[sr] == 0 {
                        queue.push_back(sr);
                    }
                }
            }
        }
        alive
    }

    /// Strongly connected components in reverse topological order
    /// (Tarjan, iterative). Returns `(component index per state, count)`.
    pub fn sccs(&self) -> (Vec<usize>, usize) {
        let n = self.state_count;
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut comp = vec![usize::MAX; n];
        let mut next_index = 0usize;
        let mut comp_count = 0usize;

        // Explicit DFS stack: (state, next out-edge position).
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut dfs: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&mut (v, ref mut ei)) = dfs.last_mut() {
                if *ei == 0 {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                if *ei < self.out[v].len() {
                    let e = self.out[v][*ei];
                    *ei += 1;
                    let w = self.dst(e);
                    if index[w] == usize::MAX {
                        dfs.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = comp_count;
                            if w == v {
                                break;
                            }
                        }
                        comp_count += 1;
                    }
                    dfs.pop();
                    if let Some(&mut (u, _)) = dfs.last_mut() {
                        low[u] = low[u].min(low[v]);
                    }
                }
            }
        }
        (comp, comp_count)
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.state_count == 0 {
            return false;
        }
        let (_, c) = self.sccs();
        c == 1
    }

    /// gcd of cycle lengths (the cyclic period) of a strongly connected graph.
    /// Computed from BFS level discrepancies; any cycle forces at least one
    /// edge whose level jump differs from +1, so `g > 0` whenever the graph
    /// is strongly connected with at least one edge. Returns 0 otherwise.
    pub fn period(&self) -> usize {
        if self.state_count == 0 || self.edges.is_empty() {
            return 0;
        }
        let mut level = vec![usize::MAX; self.state_count];
        let mut g: usize = 0;
        level[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for &e in &self.out[s] {
                let d = self.dst(e);
                if level[d] == usize::MAX {
                    level[d] = level[s] + 1;
                    queue.push_back(d);
                } else {
                    let diff = (level[s] + 1).abs_diff(level[d]);
                    g = gcd(g, diff);
                }
            }
        }
        g
    }

    /// Phase classes `A_0..A_{p-1}` of a strongly connected graph: states are
    /// labelled so every edge goes from class `i` to class `i+1 mod p`.
    /// The class containing state 0 is `A_0`.
    pub fn phase_classes(&self) -> (usize, Vec<usize>) {
        let p = self.period();
        if p == 0 {
            return (0, vec![]);
        }
        let mut phase = vec![usize::MAX; self.state_count];
        phase[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for &e in &self.out[s] {
                let d = self.dst(e);
                if phase[d] == usize::MAX {
                    phase[d] = (phase[s] + 1) % p;
                    queue.push_back(d);
                }
            }
            for &e in &self.inc[s] {
                let sr = self.src(e);
                if phase[sr] == usize::MAX {
                    phase[sr] = (phase[s] + p - 1) % p;
                    queue.push_back(sr);
                }
            }
        }
        (p, phase)
    }

    /// Boolean reachability: `reach[i][j]` = path of length >= 1 from i to j.
    pub fn reachable(&self) -> Vec<Vec<bool>> {
        let n = self.state_count;
        let mut reach = vec![vec![false; n]; n];
        for s in 0..n {
            let mut queue = VecDeque::new();
            for &e in &self.out[s] {
                if !reach[s][self.dst(e)] {
                    reach[s][self.dst(e)] = true;
                    queue.push_back(self.dst(e));
                }
            }
            while let Some(v) = queue.pop_front() {
                for &e in &self.out[v] {
                    let d = self.dst(e);
                    if !reach[s][d] {
                        reach[s][d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
        reach
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn essential_removes_sink_chain() {
        // a -> b -> c plus a 2-cycle d <-> e; the chain has no cycle.
        let g = Digraph::new(5, &[(0, 1), (1, 2), (3, 4), (4, 3)]);
        let alive = g.essential_states();
        assert_eq!(alive, vec![false, false, false, true, true]);
    }

    #[test]
    fn scc_and_period() {
        // 2-cycle: period 2.
        let g = Digraph::new(2, &[(0, 1), (1, 0)]);
        assert!(g.is_strongly_connected());
        assert_eq!(g.period(), 2);
        let (p, phase) = g.phase_classes();
        assert_eq!(p, 2);
        assert_ne!(phase[0], phase[1]);

        // Fibonacci graph: period 1.
        let g = Digraph::new(2, &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(g.period(), 1);

        // 3-cycle.
        let g = Digraph::new(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(g.period(), 3);

        // Example with parallel edges, period 2: [[0,2],[2,0]].
        let g = Digraph::new(2, &[(0, 1), (0, 1), (1, 0), (1, 0)]);
        assert_eq!(g.period(), 2);
    }

    #[test]
    fn reachability() {
        let g = Digraph::new(3, &[(0, 1), (1, 2)]);
        let r = g.reachable();
        assert!(r[0][2]);
        assert!(!r[2][0]);
        assert!(!r[0][0]);
    }
}
