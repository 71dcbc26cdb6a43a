//! Depth-first construction of perfect matchings on labeled half-edges.
//!
//! The lowest unpaired half-edge is always paired next, so every matching
//! is produced exactly once. With pruning on, a pairing is rejected as soon
//! as it would raise the genus or close off a component while others
//! remain open; both properties are monotone along a branch, so every
//! surviving leaf is planar and connected with the legs cut off.

use rayon::prelude::*;

use super::fatgraph::{standard_rotation, FatGraph, UNMATCHED};
use super::OracleError;

pub(crate) type Accept<'a> = &'a (dyn Fn(&FatGraph) -> bool + Sync);

/// Connectivity nodes: one per internal vertex, then one per leg. Keeping
/// legs apart makes "connected" mean connected after amputation; the
/// `leg` flag recovers components of the full graph, where all legs meet
/// at the root.
#[derive(Clone)]
struct State {
    graph: FatGraph,
    // rotation ∘ matching, with unpaired half-edges as fixed points of the matching
    phi: Vec<usize>,
    parent: Vec<usize>,
    size: Vec<usize>,
    open: Vec<usize>,
    leg: Vec<bool>,
    components: usize,
}

enum Undo {
    Within { root: usize },
    Merged { child: usize, root: usize, child_open: usize, root_leg: bool },
}

impl State {
    fn new(n_vertices: usize, n_external: usize) -> Self {
        let rotation = standard_rotation(n_vertices, n_external);
        let total = rotation.len();
        let graph = FatGraph::from_parts_unchecked(n_vertices, n_external, rotation.clone(), vec![UNMATCHED; total]);
        let nodes = n_vertices + n_external;
        let mut open = vec![4; n_vertices];
        open.resize(nodes, 1);
        let leg = (0..nodes).map(|v| v >= n_vertices).collect();
        State { graph, phi: rotation, parent: (0..nodes).collect(), size: vec![1; nodes], open, leg, components: nodes }
    }

    fn total(&self) -> usize {
        self.phi.len()
    }

    fn node_of(&self, h: usize) -> usize {
        let n = self.graph.n_vertices();
        if h < 4 * n {
            h / 4
        } else {
            h - 3 * n
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn same_face(&self, a: usize, b: usize) -> bool {
        let mut h = self.phi[a];
        while h != a {
            if h == b {
                return true;
            }
            h = self.phi[h];
        }
        false
    }

    fn allowed(&self, h: usize, p: usize, prune: bool) -> bool {
        if !prune {
            return true;
        }
        let (ra, rb) = (self.find(self.node_of(h)), self.find(self.node_of(p)));
        let same_component = ra == rb || self.leg[ra] && self.leg[rb];
        if same_component && !self.same_face(h, p) {
            return false;
        }
        let (open, components) = if ra == rb {
            (self.open[ra] - 2, self.components)
        } else {
            (self.open[ra] + self.open[rb] - 2, self.components - 1)
        };
        open > 0 || components == 1
    }

    fn apply(&mut self, h: usize, p: usize) -> Undo {
        let m = self.graph.matching_mut();
        m[h] = p;
        m[p] = h;
        self.phi.swap(h, p);
        let (ra, rb) = (self.find(self.node_of(h)), self.find(self.node_of(p)));
        if ra == rb {
            self.open[ra] -= 2;
            return Undo::Within { root: ra };
        }
        let (child, root) = if self.size[ra] < self.size[rb] { (ra, rb) } else { (rb, ra) };
        let child_open = self.open[child];
        let root_leg = self.leg[root];
        self.parent[child] = root;
        self.size[root] += self.size[child];
        self.open[root] = self.open[root] + child_open - 2;
        self.leg[root] |= self.leg[child];
        self.components -= 1;
        Undo::Merged { child, root, child_open, root_leg }
    }

    fn undo(&mut self, h: usize, p: usize, undo: Undo) {
        let m = self.graph.matching_mut();
        m[h] = UNMATCHED;
        m[p] = UNMATCHED;
        self.phi.swap(h, p);
        match undo {
            Undo::Within { root } => self.open[root] += 2,
            Undo::Merged { child, root, child_open, root_leg } => {
                self.open[root] = self.open[root] + 2 - child_open;
                self.size[root] -= self.size[child];
                self.leg[root] = root_leg;
                self.parent[child] = child;
                self.components += 1;
            }
        }
    }

    fn next_unmatched(&self, from: usize) -> Option<usize> {
        (from..self.total()).find(|&h| self.graph.matching()[h] == UNMATCHED)
    }

    fn partners(&self, h: usize, prune: bool) -> Vec<usize> {
        (0..self.total())
            .filter(|&p| p != h && self.graph.matching()[p] == UNMATCHED && self.allowed(h, p, prune))
            .collect()
    }

    fn descend(&mut self, prune: bool, accept: Accept) -> u64 {
        let Some(h) = self.next_unmatched(0) else {
            return u64::from(accept(&self.graph));
        };
        let mut count = 0;
        for p in h + 1..self.total() {
            if self.graph.matching()[p] != UNMATCHED || !self.allowed(h, p, prune) {
                continue;
            }
            let undo = self.apply(h, p);
            count += self.descend(prune, accept);
            self.undo(h, p, undo);
        }
        count
    }
}

/// First pairings with multiplicities. Relabeling vertices and turning
/// their half-edges is a symmetry of every predicate, so pairings in the
/// same orbit contribute equally and only one representative is searched.
fn first_moves(n_vertices: usize, n_external: usize, symmetric: bool) -> Vec<(usize, usize, u64)> {
    let total = 4 * n_vertices + n_external;
    if total == 0 {
        return Vec::new();
    }
    let n = n_vertices as u64;
    match (symmetric, n_external, n_vertices) {
        (true, 0, _) => {
            let mut moves = vec![(0, 1, 1), (0, 2, 1), (0, 3, 1)];
            if n_vertices > 1 {
                moves.push((0, 4, 4 * (n - 1)));
            }
            moves
        }
        (true, _, 1..) => vec![(4 * n_vertices, 0, 4 * n)],
        _ => (1..total).map(|p| (0, p, 1)).collect(),
    }
}

/// Number of matchings accepted by `accept`, split across `workers`
/// threads by the first two pairings.
pub(crate) fn count_matchings(
    n_vertices: usize,
    n_external: usize,
    prune: bool,
    symmetric: bool,
    workers: usize,
    accept: Accept,
) -> Result<u64, OracleError> {
    let root = State::new(n_vertices, n_external);
    if root.total() == 0 {
        return Ok(u64::from(accept(&root.graph)));
    }
    let mut tasks: Vec<(State, u64)> = Vec::new();
    for (h, p, weight) in first_moves(n_vertices, n_external, symmetric) {
        if !root.allowed(h, p, prune) {
            continue;
        }
        let mut state = root.clone();
        state.apply(h, p);
        match state.next_unmatched(0) {
            None => tasks.push((state, weight)),
            Some(h2) => {
                for p2 in state.partners(h2, prune).into_iter().filter(|&p2| p2 > h2) {
                    let mut next = state.clone();
                    next.apply(h2, p2);
                    tasks.push((next, weight));
                }
            }
        }
    }
    let run = |(state, weight): &(State, u64)| weight * state.clone().descend(prune, accept);
    if workers <= 1 {
        return Ok(tasks.iter().map(run).sum());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| OracleError::ThreadPool(e.to_string()))?;
    Ok(pool.install(|| tasks.par_iter().map(run).sum()))
}
