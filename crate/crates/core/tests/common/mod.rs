#![allow(dead_code)]

use girth8::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Shortest cycle by iterative deepening over simple paths closing each edge.
/// Deliberately shares nothing with the BFS implementation.
pub fn brute_force_girth(g: &Graph) -> Option<u32> {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for len in 3..=n {
        for &(u, v) in &edges {
            let mut on_path = vec![false; n];
            on_path[u] = true;
            on_path[v] = true;
            if closes(g, v, u, 1, len, &mut on_path) {
                return Some(len as u32);
            }
        }
    }
    None
}

// Can the path ending at `cur`, `walked` edges long, be closed at `goal` with
// exactly `target` edges in total, using only unmarked vertices?
fn closes(
    g: &Graph,
    cur: usize,
    goal: usize,
    walked: usize,
    target: usize,
    on_path: &mut [bool],
) -> bool {
    for &w in g.neighbors(cur) {
        let w = w as usize;
        if w == goal {
            if walked + 1 == target && walked >= 2 {
                return true;
            }
            continue;
        }
        if on_path[w] || walked + 1 >= target {
            continue;
        }
        on_path[w] = true;
        let hit = closes(g, w, goal, walked + 1, target, on_path);
        on_path[w] = false;
        if hit {
            return true;
        }
    }
    false
}

fn bfs_dist(adj: &[Vec<usize>], s: usize, limit: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; adj.len()];
    d[s] = 0;
    let mut q = std::collections::VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        if d[u] >= limit {
            continue;
        }
        for &w in &adj[u] {
            if d[w] == usize::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Random graph built by adding edges only between vertices at distance at
/// least `min_girth - 1`, so every cycle has length `>= min_girth`.
pub fn random_girth_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    min_girth: usize,
    attempts: usize,
) -> Graph {
    let mut adj = vec![Vec::new(); n];
    for _ in 0..attempts {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || adj[u].contains(&v) {
            continue;
        }
        if bfs_dist(&adj, u, min_girth)[v] >= min_girth - 1 {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let edges = (0..n).flat_map(|u| adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)));
    Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let edges: Vec<_> = (1..n)
        .map(|i| (order[rng.gen_range(0..i)], order[i]))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// The fifty mixed-girth graphs used for the oracle comparison.
pub fn oracle_corpus(seed: u64) -> Vec<Graph> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..8 {
        let n = rng.gen_range(2..=200);
        out.push(random_tree(&mut rng, n));
        if i % 2 == 0 {
            // forest: drop one edge
            let g = random_tree(&mut rng, n.max(3));
            let edges: Vec<_> = g.edges().skip(1).collect();
            out.push(Graph::from_edges(g.order(), edges).unwrap());
        }
    }
    for _ in 0..8 {
        let n = rng.gen_range(10..=120);
        let p = rng.gen_range(0.03..0.3);
        out.push(random_gnp(&mut rng, n, p));
    }
    while out.len() < 50 {
        let n = rng.gen_range(20..=200);
        let g = rng.gen_range(4..=10);
        out.push(random_girth_graph(&mut rng, n, g, 3 * n));
    }
    out
}

/// Polynomial-basis product of field indices, reduced by `modulus`, computed
/// with plain coefficient vectors.
pub fn poly_mul_oracle(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let n = modulus.len() - 1;
    let digits = |mut x: u32| {
        let mut d = vec![0u32; n];
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u32; 2 * n];
    for i in 0..n {
        for j in 0..n {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for deg in (n..2 * n).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let k = deg - n + i;
            prod[k] = (prod[k] + p * p - c * m % p) % p;
        }
    }
    prod[..n].iter().rev().fold(0, |acc, &c| acc * p + c)
}
