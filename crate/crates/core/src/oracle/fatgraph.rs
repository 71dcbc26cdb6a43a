use super::OracleError;

/// Sentinel for a half-edge not yet paired during enumeration.
pub(crate) const UNMATCHED: usize = usize::MAX;

/// Which 2+2 split of the four legs a two-edge cut would realize.
///
/// Legs are numbered NW, NE, SE, SW in cyclic order around the outer
/// face. A horizontal sum separates `{NW, SW} | {NE, SE}`, a vertical sum
/// separates `{NW, NE} | {SW, SE}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Channel {
    Horizontal,
    Vertical,
}

impl Channel {
    /// Leg indices on one side of the cut.
    fn side(self) -> [usize; 2] {
        match self {
            Channel::Horizontal => [0, 3],
            Channel::Vertical => [0, 1],
        }
    }
}

/// A labeled 4-valent fat graph.
///
/// Internal vertex `v` owns half-edges `4v .. 4v+4` in counterclockwise
/// order. External legs, when present, are half-edges `4n .. 4n+k` on a
/// single root vertex whose rotation is the boundary cycle of the legs.
/// Faces are the cycles of `rotation ∘ matching`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FatGraph {
    n_vertices: usize,
    n_external: usize,
    rotation: Vec<usize>,
    matching: Vec<usize>,
}

pub(crate) fn standard_rotation(n_vertices: usize, n_external: usize) -> Vec<usize> {
    let mut rotation: Vec<usize> = (0..4 * n_vertices).map(|h| 4 * (h / 4) + (h + 1) % 4).collect();
    let base = 4 * n_vertices;
    rotation.extend((0..n_external).map(|i| base + (i + 1) % n_external));
    rotation
}

impl FatGraph {
    /// A graph with the standard rotation. `matching` must be a fixed-point
    /// free involution on all `4 n_vertices + n_external` half-edges.
    pub fn new(n_vertices: usize, n_external: usize, matching: Vec<usize>) -> Result<Self, OracleError> {
        let total = 4 * n_vertices + n_external;
        if matching.len() != total {
            return Err(OracleError::MalformedGraph("matching length"));
        }
        for (h, &p) in matching.iter().enumerate() {
            if p >= total || p == h || matching[p] != h {
                return Err(OracleError::MalformedGraph("matching is not a perfect matching"));
            }
        }
        Ok(FatGraph { n_vertices, n_external, rotation: standard_rotation(n_vertices, n_external), matching })
    }

    /// Builds from a list of paired half-edges.
    pub fn from_pairs(n_vertices: usize, n_external: usize, pairs: &[(usize, usize)]) -> Result<Self, OracleError> {
        let total = 4 * n_vertices + n_external;
        let mut matching = vec![UNMATCHED; total];
        for &(a, b) in pairs {
            if a >= total || b >= total || matching[a] != UNMATCHED || matching[b] != UNMATCHED {
                return Err(OracleError::MalformedGraph("pairs overlap or are out of range"));
            }
            matching[a] = b;
            matching[b] = a;
        }
        Self::new(n_vertices, n_external, matching)
    }

    pub(crate) fn from_parts_unchecked(n_vertices: usize, n_external: usize, rotation: Vec<usize>, matching: Vec<usize>) -> Self {
        FatGraph { n_vertices, n_external, rotation, matching }
    }

    pub(crate) fn matching_mut(&mut self) -> &mut [usize] {
        &mut self.matching
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_external(&self) -> usize {
        self.n_external
    }

    pub fn matching(&self) -> &[usize] {
        &self.matching
    }

    pub fn n_half_edges(&self) -> usize {
        self.matching.len()
    }

    /// Vertex owning a half-edge; the root vertex has index `n_vertices`.
    pub fn vertex_of(&self, h: usize) -> usize {
        (h / 4).min(self.n_vertices)
    }

    fn vertex_count(&self) -> usize {
        self.n_vertices + usize::from(self.n_external > 0)
    }

    pub fn face_count(&self) -> usize {
        let total = self.n_half_edges();
        let mut seen = vec![false; total];
        let mut faces = 0;
        for start in 0..total {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = self.rotation[self.matching[h]];
            }
        }
        faces
    }

    fn component_labels(&self, include_root: bool) -> Vec<usize> {
        let nv = self.vertex_count();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for h in 0..self.n_half_edges() {
            let (a, b) = (self.vertex_of(h), self.vertex_of(self.matching[h]));
            if !include_root && (a == self.n_vertices || b == self.n_vertices) {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        (0..nv).map(|v| find(&mut parent, v)).collect()
    }

    fn count_distinct(labels: &[usize]) -> usize {
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len()
    }

    pub fn component_count(&self) -> usize {
        Self::count_distinct(&self.component_labels(true))
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Connectivity once the external legs are cut off: the internal
    /// vertices form one component and no leg is paired with another leg.
    /// Graphs without internal vertices fall back to plain connectivity.
    pub fn is_connected_amputated(&self) -> bool {
        if self.n_vertices == 0 || self.n_external == 0 {
            return self.is_connected();
        }
        let root = self.n_vertices;
        let legs_on_internal = (4 * root..self.n_half_edges()).all(|h| self.vertex_of(self.matching[h]) != root);
        let labels = self.component_labels(false);
        legs_on_internal && Self::count_distinct(&labels[..root]) == 1
    }

    /// Sum of the genera of the components: `(2c - V + E - F) / 2`.
    pub fn genus(&self) -> usize {
        let c = self.component_count() as isize;
        let v = self.vertex_count() as isize;
        let e = (self.n_half_edges() / 2) as isize;
        let f = self.face_count() as isize;
        let twice = 2 * c - v + e - f;
        debug_assert!(twice >= 0 && twice % 2 == 0);
        (twice / 2) as usize
    }

    /// Number of pairings joining a vertex in `set` to one outside it
    /// (the root always counts as outside).
    fn boundary_size(&self, set: u64) -> usize {
        let inside = |v: usize| v < self.n_vertices && set >> v & 1 == 1;
        (0..self.n_half_edges())
            .filter(|&h| inside(self.vertex_of(h)) && !inside(self.vertex_of(self.matching[h])))
            .count()
    }

    /// True when some proper set of internal vertices hangs off the rest
    /// by one or two propagators: a tadpole or a self-energy insertion.
    pub fn has_self_energy(&self) -> bool {
        let n = self.n_vertices;
        assert!(n < 64, "subset enumeration limited to 63 vertices");
        let full = (1u64 << n) - 1;
        (1..full).any(|set| matches!(self.boundary_size(set), 1 | 2))
    }

    /// True when no two internal propagators separate the legs according
    /// to `channel`. Graphs without four legs are vacuously irreducible.
    pub fn is_2pi_channel(&self, channel: Channel) -> bool {
        let n = self.n_vertices;
        if self.n_external != 4 || n < 2 {
            return true;
        }
        assert!(n < 64, "subset enumeration limited to 63 vertices");
        let root = n;
        let leg_vertex: Vec<usize> = (0..4).map(|i| self.vertex_of(self.matching[4 * root + i])).collect();
        if leg_vertex.contains(&root) {
            return true;
        }
        let [a, b] = channel.side();
        let full = (1u64 << n) - 1;
        !(1..full).any(|set| {
            let side_of = |leg: usize| set >> leg_vertex[leg] & 1 == 1;
            let legs_match = (0..4).all(|leg| side_of(leg) == (leg == a || leg == b));
            legs_match && self.internal_cut(set) == 2
        })
    }

    /// Internal propagators between `set` and its complement.
    fn internal_cut(&self, set: u64) -> usize {
        let n = self.n_vertices;
        (0..4 * n)
            .filter(|&h| {
                let other = self.vertex_of(self.matching[h]);
                other < n && set >> self.vertex_of(h) & 1 == 1 && set >> other & 1 == 0
            })
            .count()
    }

    /// Relabels internal vertices by `perm` and turns vertex `v`'s half-edge
    /// labels by `shift[v]` steps, preserving every cyclic order.
    pub fn relabel(&self, perm: &[usize], shift: &[usize]) -> FatGraph {
        let n = self.n_vertices;
        assert_eq!(perm.len(), n);
        assert_eq!(shift.len(), n);
        let map = |h: usize| {
            if h < 4 * n {
                let v = h / 4;
                4 * perm[v] + (h % 4 + shift[v]) % 4
            } else {
                h
            }
        };
        let mut matching = vec![UNMATCHED; self.n_half_edges()];
        for h in 0..self.n_half_edges() {
            matching[map(h)] = map(self.matching[h]);
        }
        FatGraph { n_vertices: n, n_external: self.n_external, rotation: self.rotation.clone(), matching }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_vertex_genus() {
        let planar = FatGraph::from_pairs(1, 0, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(planar.face_count(), 3);
        assert_eq!(planar.genus(), 0);
        let torus = FatGraph::from_pairs(1, 0, &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(torus.face_count(), 1);
        assert_eq!(torus.genus(), 1);
    }

    #[test]
    fn disjoint_union_is_disconnected() {
        let g = FatGraph::from_pairs(2, 0, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.component_count(), 2);
        assert_eq!(g.genus(), 0);
    }

    #[test]
    fn malformed_matchings_rejected() {
        assert!(FatGraph::new(1, 0, vec![1, 0, 3]).is_err());
        assert!(FatGraph::new(1, 0, vec![0, 2, 1, 3]).is_err());
        assert!(FatGraph::from_pairs(1, 0, &[(0, 1), (1, 2)]).is_err());
    }

    #[test]
    fn single_vertex_tangle() {
        // Legs NW, NE, SE, SW = 4..8 attached in reverse to keep the map planar.
        let t = FatGraph::from_pairs(1, 4, &[(4, 3), (5, 2), (6, 1), (7, 0)]).unwrap();
        assert_eq!(t.genus(), 0);
        assert!(t.is_connected_amputated());
        assert!(!t.has_self_energy());
        assert!(t.is_2pi_channel(Channel::Horizontal) && t.is_2pi_channel(Channel::Vertical));
    }

    #[test]
    fn horizontal_sum_of_two_vertices() {
        // Vertex 0 carries NW and SW, vertex 1 carries NE and SE.
        // Half-edges: vertex 0 is 0..4, vertex 1 is 4..8, legs 8..12.
        let t = FatGraph::from_pairs(2, 4, &[(8, 3), (11, 0), (2, 7), (1, 4), (9, 6), (10, 5)]).unwrap();
        assert_eq!(t.genus(), 0);
        assert!(t.is_connected_amputated());
        assert!(!t.has_self_energy());
        assert!(!t.is_2pi_channel(Channel::Horizontal));
        assert!(t.is_2pi_channel(Channel::Vertical));
    }

    #[test]
    fn self_energy_on_a_leg() {
        // Vertex 1 has a loop and sits on the NE leg of vertex 0.
        let t = FatGraph::from_pairs(2, 4, &[(8, 3), (9, 4), (5, 6), (7, 2), (10, 1), (11, 0)]).unwrap();
        assert!(t.has_self_energy());
    }

    #[test]
    fn relabeling_preserves_faces() {
        let t = FatGraph::from_pairs(2, 4, &[(8, 3), (11, 0), (2, 7), (1, 4), (9, 6), (10, 5)]).unwrap();
        let r = t.relabel(&[1, 0], &[3, 2]);
        assert_eq!(r.face_count(), t.face_count());
        assert_eq!(r.genus(), t.genus());
    }
}
