//! Small undirected-graph routines: biconnected blocks, connected components
//! after edge removal, and cycle search.

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// A single edge lying on no cycle.
    Bridge,
    /// A simple cycle: as many edges as vertices.
    Cycle,
    /// Any other biconnected block; some edge lies on two cycles.
    Complex,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    pub kind: BlockKind,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        Graph { n, edges, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Biconnected blocks (Tarjan, iterative). Isolated vertices belong to
    /// no block.
    pub fn blocks(&self) -> Vec<Block> {
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; self.n];
        let mut low = vec![0; self.n];
        let mut timer = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut blocks = Vec::new();
        for s in 0..self.n {
            if disc[s] != UNSEEN {
                continue;
            }
            disc[s] = timer;
            low[s] = timer;
            timer += 1;
            let mut frames: Vec<(usize, Option<usize>, usize)> = vec![(s, None, 0)];
            while let Some(frame) = frames.last_mut() {
                let (v, parent_edge) = (frame.0, frame.1);
                if frame.2 < self.adj[v].len() {
                    let (w, e) = self.adj[v][frame.2];
                    frame.2 += 1;
                    if Some(e) == parent_edge {
                        continue;
                    }
                    if disc[w] == UNSEEN {
                        edge_stack.push(e);
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        frames.push((w, Some(e), 0));
                    } else if disc[w] < disc[v] {
                        low[v] = low[v].min(disc[w]);
                        edge_stack.push(e);
                    }
                } else {
                    frames.pop();
                    if let (Some(parent), Some(pe)) = (frames.last(), parent_edge) {
                        let u = parent.0;
                        low[u] = low[u].min(low[v]);
                        if low[v] >= disc[u] {
                            let mut edges = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                edges.push(e);
                                if e == pe {
                                    break;
                                }
                            }
                            blocks.push(self.make_block(edges));
                        }
                    }
                }
            }
        }
        blocks
    }

    fn make_block(&self, mut edges: Vec<usize>) -> Block {
        edges.sort_unstable();
        let mut vertices: Vec<usize> = edges
            .iter()
            .flat_map(|&e| [self.edges[e].0, self.edges[e].1])
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let kind = if edges.len() == 1 {
            BlockKind::Bridge
        } else if edges.len() == vertices.len() {
            BlockKind::Cycle
        } else {
            BlockKind::Complex
        };
        Block { edges, vertices, kind }
    }

    /// Vertex sets of the connected components once `removed` edges are
    /// deleted; each set sorted, sets ordered by smallest vertex.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut queue = vec![s];
            while let Some(v) = queue.pop() {
                for &(w, e) in &self.adj[v] {
                    if comp[w] == usize::MAX && !removed.contains(&e) {
                        comp[w] = id;
                        members.push(w);
                        queue.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[]).len() <= 1
    }

    /// Up to `limit` distinct cycles through edge `e`, each as a vertex
    /// sequence starting with the edge's endpoints. Search is restricted to
    /// the edges in `allowed`.
    pub fn cycles_through(&self, e: usize, allowed: &[usize], limit: usize) -> Vec<Vec<usize>> {
        let (u, v) = self.edges[e];
        let mut found = Vec::new();
        let mut path = vec![v];
        let mut on_path = vec![false; self.n];
        on_path[v] = true;
        // Paths from v back to u avoiding e close a cycle.
        fn dfs(
            g: &Graph,
            target: usize,
            skip: usize,
            allowed: &[usize],
            limit: usize,
            path: &mut Vec<usize>,
            on_path: &mut [bool],
            found: &mut Vec<Vec<usize>>,
        ) {
            if found.len() >= limit {
                return;
            }
            let x = *path.last().expect("nonempty path");
            for &(w, f) in &g.adj[x] {
                if f == skip || !allowed.contains(&f) {
                    continue;
                }
                if w == target {
                    let mut cycle = vec![target];
                    cycle.extend(path.iter().copied());
                    found.push(cycle);
                    if found.len() >= limit {
                        return;
                    }
                } else if !on_path[w] {
                    on_path[w] = true;
                    path.push(w);
                    dfs(g, target, skip, allowed, limit, path, on_path, found);
                    path.pop();
                    on_path[w] = false;
                }
            }
        }
        dfs(self, u, e, allowed, limit, &mut path, &mut on_path, &mut found);
        found
    }
}
