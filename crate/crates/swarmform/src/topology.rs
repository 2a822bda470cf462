//! Control-topology construction: nearest-neighbor link selection for
//! dispersion, greedy pairing and pair-chaining for line formation, and
//! sensing-range connectivity analysis.
//!
//! Everything here is a pure function of the world snapshot. Distances are
//! compared squared, ties always break toward smaller ids (or lexicographic
//! id/index pairs), and a `range` of `None` means unlimited sensing; the
//! range boundary is inclusive.

use serde::{Deserialize, Serialize};

use crate::dynamics::{LinkSet, SpringLink, World};
use crate::vec2::Vec2;

/// An unordered matched couple; normalized so `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pair {
    pub a: usize,
    pub b: usize,
}

impl Pair {
    pub fn new(x: usize, y: usize) -> Self {
        assert!(x != y, "a pair must join two distinct agents");
        if x < y { Pair { a: x, b: y } } else { Pair { a: y, b: x } }
    }

    pub fn contains(&self, id: usize) -> bool {
        self.a == id || self.b == id
    }
}

/// Pairs plus the undirected chain edges between them. Edges are stored
/// once as `(p, q)` with `p < q`, indexing into `pairs`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PairGraph {
    pub pairs: Vec<Pair>,
    pub edges: Vec<(usize, usize)>,
}

impl PairGraph {
    pub fn degree(&self, idx: usize) -> usize {
        self.edges.iter().filter(|&&(p, q)| p == idx || q == idx).count()
    }

    /// Pair indices adjacent to `idx`, ascending.
    pub fn neighbors(&self, idx: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(p, q)| {
                if p == idx {
                    Some(q)
                } else if q == idx {
                    Some(p)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Number of path components. The construction is acyclic, so this is
    /// just nodes minus edges.
    pub fn component_count(&self) -> usize {
        self.pairs.len() - self.edges.len()
    }

    /// True when every pair lies on one connected path.
    pub fn is_single_path(&self) -> bool {
        !self.pairs.is_empty() && self.component_count() == 1
    }
}

/// Midpoint of a pair's two members.
pub fn pair_centroid(world: &World, pair: &Pair) -> Vec2 {
    (world.agents[pair.a].position + world.agents[pair.b].position) * 0.5
}

fn in_range(range: Option<f64>, dist_sq: f64) -> bool {
    match range {
        None => true,
        Some(r) => dist_sq <= r * r,
    }
}

/// Minimal union-find with path halving; used for cycle detection and
/// component labeling.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when the two were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Ids of every agent within sensing range of `i`, nearest first (ties by
/// smaller id). `i` itself is excluded.
pub fn neighbors_within_range(world: &World, i: usize, range: Option<f64>) -> Vec<usize> {
    let origin = world.agents[i].position;
    let mut found: Vec<(f64, usize)> = world
        .agents
        .iter()
        .filter(|a| a.id != i)
        .map(|a| ((a.position - origin).norm_sq(), a.id))
        .filter(|&(d2, _)| in_range(range, d2))
        .collect();
    found.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    found.into_iter().map(|(_, id)| id).collect()
}

/// The first `k` entries of [`neighbors_within_range`]; shorter when fewer
/// neighbors are in range.
pub fn k_nearest(world: &World, i: usize, k: usize, range: Option<f64>) -> Vec<usize> {
    let mut ids = neighbors_within_range(world, i, range);
    ids.truncate(k);
    ids
}

/// One directed link from every agent to each of its `k` nearest in-range
/// neighbors, all at rest length `l_d`. Selection is one-sided, so the link
/// set may be asymmetric.
pub fn dispersion_links(
    world: &World,
    l_d: f64,
    k: usize,
    range: Option<f64>,
    gain_k: f64,
    gain_b: f64,
) -> LinkSet {
    let mut links = LinkSet::new();
    for agent in &world.agents {
        for j in k_nearest(world, agent.id, k, range) {
            links.push(SpringLink::new(agent.id, j, l_d, gain_k, gain_b));
        }
    }
    links
}

/// Globally-greedy nearest-first matching: repeatedly match the closest
/// unmatched in-range couple (ties by smaller id pair) until nothing
/// matchable remains. Returns the pairs in match order plus the unmatched
/// leftovers ascending — one agent for odd `n` under unlimited range,
/// possibly more when limited range strands agents.
pub fn greedy_pairing(world: &World, range: Option<f64>) -> (Vec<Pair>, Vec<usize>) {
    let n = world.len();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let d2 = (world.agents[i].position - world.agents[j].position).norm_sq();
            if in_range(range, d2) {
                candidates.push((d2, i, j));
            }
        }
    }
    candidates.sort_by(|x, y| {
        x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2))
    });

    let mut matched = vec![false; n];
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        if !matched[i] && !matched[j] {
            matched[i] = true;
            matched[j] = true;
            pairs.push(Pair::new(i, j));
        }
    }
    let leftovers = (0..n).filter(|&i| !matched[i]).collect();
    (pairs, leftovers)
}

/// Chains pairs into a path forest: candidate edges between every two pairs
/// whose centroids are in range are inserted nearest-first (ties by smaller
/// index pair), skipping any edge that would push a node past degree 2 or
/// close a cycle. Under unlimited range the result is a single path.
pub fn pair_graph(world: &World, pairs: &[Pair], range: Option<f64>) -> PairGraph {
    let centroids: Vec<Vec2> = pairs.iter().map(|p| pair_centroid(world, p)).collect();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for p in 0..pairs.len() {
        for q in (p + 1)..pairs.len() {
            let d2 = (centroids[p] - centroids[q]).norm_sq();
            if in_range(range, d2) {
                candidates.push((d2, p, q));
            }
        }
    }
    candidates.sort_by(|x, y| {
        x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2))
    });

    let mut degree = vec![0usize; pairs.len()];
    let mut uf = UnionFind::new(pairs.len());
    let mut edges = Vec::new();
    for (_, p, q) in candidates {
        if degree[p] < 2 && degree[q] < 2 && uf.union(p, q) {
            degree[p] += 1;
            degree[q] += 1;
            edges.push((p, q));
        }
    }
    PairGraph { pairs: pairs.to_vec(), edges }
}

/// Emits the line-formation link set: mirrored intra-pair links at rest
/// `epsilon`, then, per chain edge, mirrored cross links between all four
/// member combinations at rest `l_d`.
pub fn line_links(
    world: &World,
    graph: &PairGraph,
    epsilon: f64,
    l_d: f64,
    gain_k: f64,
    gain_b: f64,
) -> LinkSet {
    let _ = world; // geometry-independent; kept for signature symmetry
    let mut links = LinkSet::new();
    for pair in &graph.pairs {
        links.push_mirrored(pair.a, pair.b, epsilon, gain_k, gain_b);
    }
    for &(p, q) in &graph.edges {
        let (lhs, rhs) = (&graph.pairs[p], &graph.pairs[q]);
        for u in [lhs.a, lhs.b] {
            for v in [rhs.a, rhs.b] {
                links.push_mirrored(u, v, l_d, gain_k, gain_b);
            }
        }
    }
    links
}

/// Designates one interim leader per end of a fully-connected chain: the
/// member of each end pair farther from the adjacent pair's centroid (ties
/// by smaller id). Returns `None` unless the graph is a single path of at
/// least two pairs.
pub fn chain_endpoints(world: &World, graph: &PairGraph) -> Option<(usize, usize)> {
    if graph.pairs.len() < 2 || !graph.is_single_path() {
        return None;
    }
    let ends: Vec<usize> =
        (0..graph.pairs.len()).filter(|&idx| graph.degree(idx) == 1).collect();
    debug_assert_eq!(ends.len(), 2, "a path has exactly two degree-1 nodes");

    let mut leaders = ends.iter().map(|&end| {
        let adjacent = graph.neighbors(end)[0];
        let anchor = pair_centroid(world, &graph.pairs[adjacent]);
        let pair = &graph.pairs[end];
        let da = (world.agents[pair.a].position - anchor).norm_sq();
        let db = (world.agents[pair.b].position - anchor).norm_sq();
        // Strictly farther wins; the tie goes to `a`, the smaller id.
        if db > da { pair.b } else { pair.a }
    });
    Some((leaders.next().unwrap(), leaders.next().unwrap()))
}

/// Connected components of the undirected proximity graph
/// `{(i, j) : ‖x_i − x_j‖ ≤ range}`. Components are sorted by smallest
/// member id, members ascending.
pub fn connected_components(world: &World, range: Option<f64>) -> Vec<Vec<usize>> {
    let n = world.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d2 = (world.agents[i].position - world.agents[j].position).norm_sq();
            if in_range(range, d2) {
                uf.union(i, j);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; n];
    for i in 0..n {
        let root = uf.find(i);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot_of_root[root]].push(i);
    }
    // Ascending first-member order falls out of the id scan above.
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{seeded, u01};

    fn line_world(xs: &[f64]) -> World {
        World::from_positions(&xs.iter().map(|&x| Vec2::new(x, 0.0)).collect::<Vec<_>>())
    }

    fn scatter(n: usize, extent: f64, seed: u64) -> World {
        let mut rng = seeded(seed);
        let positions: Vec<Vec2> = (0..n)
            .map(|_| Vec2::new(u01(&mut rng) * extent, u01(&mut rng) * extent))
            .collect();
        World::from_positions(&positions)
    }

    #[test]
    fn no_neighbors_in_singleton_world() {
        let world = line_world(&[0.0]);
        assert!(neighbors_within_range(&world, 0, None).is_empty());
    }

    #[test]
    fn range_boundary_is_inclusive() {
        let world = line_world(&[0.0, 10.0, 25.0]);
        assert_eq!(neighbors_within_range(&world, 1, Some(15.0)), vec![0, 2]);
        assert_eq!(neighbors_within_range(&world, 1, Some(9.0)), Vec::<usize>::new());
    }

    #[test]
    fn square_corner_sees_all_three_nearest_first() {
        let world = World::from_positions(&[
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 1.0),
        ]);
        // Two neighbors tie at distance 1; the smaller id comes first.
        assert_eq!(k_nearest(&world, 0, 3, None), vec![1, 2, 3]);
        assert_eq!(k_nearest(&world, 3, 2, None), vec![1, 2]);
    }

    #[test]
    fn k_nearest_is_prefix_of_range_query() {
        let world = scatter(50, 100.0, 11);
        for i in 0..world.len() {
            let all = neighbors_within_range(&world, i, None);
            let top = k_nearest(&world, i, 3, None);
            assert_eq!(top, all[..3]);
            let limited = neighbors_within_range(&world, i, Some(40.0));
            assert_eq!(
                k_nearest(&world, i, 3, Some(40.0)),
                limited[..limited.len().min(3)]
            );
        }
    }

    #[test]
    fn k_nearest_matches_exhaustive_sort() {
        let world = scatter(50, 60.0, 5);
        for i in 0..world.len() {
            let mut oracle: Vec<(f64, usize)> = (0..world.len())
                .filter(|&j| j != i)
                .map(|j| ((world.agents[j].position - world.agents[i].position).norm(), j))
                .collect();
            oracle.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            let want: Vec<usize> = oracle.iter().take(3).map(|&(_, id)| id).collect();
            assert_eq!(k_nearest(&world, i, 3, None), want);
        }
    }

    #[test]
    fn two_agents_link_both_ways() {
        let world = line_world(&[0.0, 4.0]);
        let links = dispersion_links(&world, 10.0, 3, None, 0.01, 0.2);
        assert_eq!(links.len(), 2);
        assert_eq!((links.links[0].from, links.links[0].to), (0, 1));
        assert_eq!((links.links[1].from, links.links[1].to), (1, 0));
    }

    #[test]
    fn four_agents_fully_linked() {
        let world = scatter(4, 10.0, 2);
        let links = dispersion_links(&world, 7.5, 3, None, 0.01, 0.2);
        assert_eq!(links.len(), 12);
        assert!(links.iter().all(|l| l.rest_length == 7.5));
    }

    #[test]
    fn dispersion_links_respect_range_and_degree() {
        let world = scatter(50, 100.0, 8);
        let links = dispersion_links(&world, 10.0, 3, Some(40.0), 0.01, 0.2);
        let mut seen = std::collections::HashSet::new();
        for link in links.iter() {
            let gap = (world.agents[link.from].position - world.agents[link.to].position).norm();
            assert!(gap <= 40.0);
            assert!(seen.insert((link.from, link.to)), "duplicate link");
        }
        for i in 0..world.len() {
            assert!(links.iter().filter(|l| l.from == i).count() <= 3);
        }
    }

    #[test]
    fn pairing_picks_nearest_couples() {
        let world = line_world(&[0.0, 1.0, 10.0, 11.0]);
        let (pairs, leftovers) = greedy_pairing(&world, None);
        assert_eq!(pairs, vec![Pair::new(0, 1), Pair::new(2, 3)]);
        assert!(leftovers.is_empty());
    }

    #[test]
    fn two_agents_form_one_pair() {
        let world = line_world(&[3.0, 5.0]);
        let (pairs, leftovers) = greedy_pairing(&world, None);
        assert_eq!(pairs, vec![Pair::new(0, 1)]);
        assert!(leftovers.is_empty());
    }

    #[test]
    fn odd_agent_is_left_over() {
        let world = line_world(&[0.0, 1.0, 5.0]);
        let (pairs, leftovers) = greedy_pairing(&world, None);
        assert_eq!(pairs, vec![Pair::new(0, 1)]);
        assert_eq!(leftovers, vec![2]);
    }

    #[test]
    fn pairing_matches_rescan_oracle() {
        // Alternative mechanism: rescan the full distance matrix for the
        // global minimum among unmatched agents each round.
        let world = scatter(9, 50.0, 4);
        let mut matched = vec![false; 9];
        let mut expected = Vec::new();
        loop {
            let mut best: Option<(f64, usize, usize)> = None;
            for i in 0..9 {
                for j in (i + 1)..9 {
                    if matched[i] || matched[j] {
                        continue;
                    }
                    let d2 =
                        (world.agents[i].position - world.agents[j].position).norm_sq();
                    if best.is_none() || d2 < best.unwrap().0 {
                        best = Some((d2, i, j));
                    }
                }
            }
            match best {
                Some((_, i, j)) => {
                    matched[i] = true;
                    matched[j] = true;
                    expected.push(Pair::new(i, j));
                }
                None => break,
            }
        }
        let (pairs, leftovers) = greedy_pairing(&world, None);
        assert_eq!(pairs, expected);
        assert_eq!(leftovers.len(), 1);
        assert!(!matched[leftovers[0]]);
    }

    /// Pairs with members straddling each requested centroid.
    fn pairs_at(centroids: &[(f64, f64)]) -> (World, Vec<Pair>) {
        let mut positions = Vec::new();
        for &(cx, cy) in centroids {
            positions.push(Vec2::new(cx - 0.1, cy));
            positions.push(Vec2::new(cx + 0.1, cy));
        }
        let world = World::from_positions(&positions);
        let pairs = (0..centroids.len()).map(|i| Pair::new(2 * i, 2 * i + 1)).collect();
        (world, pairs)
    }

    #[test]
    fn three_pairs_chain_in_centroid_order() {
        let (world, pairs) = pairs_at(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]);
        let graph = pair_graph(&world, &pairs, None);
        assert_eq!(graph.edges, vec![(0, 1), (1, 2)]);
        assert!(graph.is_single_path());
    }

    #[test]
    fn square_of_pairs_yields_three_edge_path() {
        let (world, pairs) = pairs_at(&[(0.0, 0.0), (10.0, 0.0), (0.0, 10.0), (10.0, 10.0)]);
        let graph = pair_graph(&world, &pairs, None);
        assert_eq!(graph.edges.len(), 3);
        assert!(graph.is_single_path());
        for idx in 0..4 {
            assert!(graph.degree(idx) <= 2);
        }
    }

    #[test]
    fn random_pair_graphs_are_path_forests() {
        for seed in 0..20 {
            let world = scatter(14, 80.0, 100 + seed);
            let (pairs, _) = greedy_pairing(&world, None);
            let graph = pair_graph(&world, &pairs, None);
            // Acyclic by union-find construction, so components = n − m;
            // unlimited range must give a single path.
            assert!(graph.is_single_path());
            for idx in 0..graph.pairs.len() {
                assert!(graph.degree(idx) <= 2);
            }
        }
    }

    #[test]
    fn limited_range_can_split_the_chain() {
        let (world, pairs) = pairs_at(&[(0.0, 0.0), (1.0, 0.0), (50.0, 0.0), (51.0, 0.0)]);
        let graph = pair_graph(&world, &pairs, Some(5.0));
        assert_eq!(graph.edges, vec![(0, 1), (2, 3)]);
        assert_eq!(graph.component_count(), 2);
        assert!(!graph.is_single_path());
    }

    #[test]
    fn single_pair_emits_two_intra_links() {
        let (world, pairs) = pairs_at(&[(2.0, 3.0)]);
        let graph = pair_graph(&world, &pairs, None);
        let links = line_links(&world, &graph, 0.5, 10.0, 0.01, 0.2);
        assert_eq!(links.len(), 2);
        assert!(links.iter().all(|l| l.rest_length == 0.5));
    }

    #[test]
    fn connected_pairs_emit_intra_and_cross_links() {
        let (world, pairs) = pairs_at(&[(0.0, 0.0), (10.0, 0.0)]);
        let graph = pair_graph(&world, &pairs, None);
        let links = line_links(&world, &graph, 0.5, 10.0, 0.01, 0.2);
        assert_eq!(links.len(), 12);
        let intra = links.iter().filter(|l| l.rest_length == 0.5).count();
        let cross = links.iter().filter(|l| l.rest_length == 10.0).count();
        assert_eq!((intra, cross), (4, 8));
    }

    #[test]
    fn endpoints_are_the_extreme_members() {
        let (world, pairs) = pairs_at(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)]);
        let graph = pair_graph(&world, &pairs, None);
        // Outermost members: id 0 at x = −0.1 and id 5 at x = 3.1.
        assert_eq!(chain_endpoints(&world, &graph), Some((0, 5)));
    }

    #[test]
    fn no_endpoints_without_a_single_path() {
        let (world, pairs) = pairs_at(&[(0.0, 0.0), (50.0, 0.0)]);
        let split = pair_graph(&world, &pairs, Some(5.0));
        assert_eq!(chain_endpoints(&world, &split), None);

        let (world, pairs) = pairs_at(&[(0.0, 0.0)]);
        let single = pair_graph(&world, &pairs, None);
        assert_eq!(chain_endpoints(&world, &single), None);
    }

    #[test]
    fn hub_world_is_one_component() {
        let world = World::from_positions(&[
            Vec2::new(0.0, 0.0),
            Vec2::new(3.0, 0.0),
            Vec2::new(0.0, 3.0),
            Vec2::new(-3.0, 0.0),
        ]);
        assert_eq!(connected_components(&world, Some(4.0)).len(), 1);
    }

    #[test]
    fn distant_clusters_split() {
        let world = line_world(&[0.0, 1.0, 100.0, 101.0]);
        let components = connected_components(&world, Some(10.0));
        assert_eq!(components, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn components_match_bfs_oracle() {
        let world = scatter(20, 60.0, 13);
        let range = 15.0;
        // Breadth-first flood fill as the independent implementation.
        let mut label = vec![usize::MAX; 20];
        let mut next = 0;
        for start in 0..20 {
            if label[start] != usize::MAX {
                continue;
            }
            let mut queue = std::collections::VecDeque::from([start]);
            label[start] = next;
            while let Some(i) = queue.pop_front() {
                for j in 0..20 {
                    if label[j] == usize::MAX
                        && (world.agents[i].position - world.agents[j].position).norm()
                            <= range
                    {
                        label[j] = next;
                        queue.push_back(j);
                    }
                }
            }
            next += 1;
        }
        let components = connected_components(&world, Some(range));
        assert_eq!(components.len(), next);
        for group in &components {
            let tag = label[group[0]];
            assert!(group.iter().all(|&id| label[id] == tag));
        }
        let total: usize = components.iter().map(|g| g.len()).sum();
        assert_eq!(total, 20);
    }

    #[test]
    fn component_count_never_increases_with_range() {
        let world = scatter(30, 100.0, 21);
        let mut last = usize::MAX;
        for range in [5.0, 10.0, 20.0, 40.0, 80.0, 200.0] {
            let count = connected_components(&world, Some(range)).len();
            assert!(count <= last);
            last = count;
        }
        assert_eq!(connected_components(&world, None).len(), 1);
    }
}
