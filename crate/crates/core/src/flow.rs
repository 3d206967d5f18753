//! Exact solver for the per-day flexible-adjustment recourse.
//!
//! Substituting the balance equalities eliminates `o` and `u`:
//!
//! ```text
//! cost = Σ_k c^o_k·cap_k + Σ_l c^u_l·D_l − Σ_{k,l∈R_k} w_kl·y_kl,
//! w_kl = c^u_l + c^o_k − c_kl
//! ```
//!
//! subject to row sums `≤ cap_k` and column sums `≤ D_l`. Maximizing the
//! weighted flow is a bipartite transportation problem, solved here by
//! successive shortest paths with Bellman-Ford on the residual graph. Only
//! positive-weight arcs are ever useful, so the economic condition keeps every
//! arc active.

const EPS: f64 = 1e-12;

/// Optimal allocation of one day.
#[derive(Debug, Clone, PartialEq)]
pub struct DayRecourse {
    pub cost: f64,
    /// `y[k][l]`, zero when `l ∉ R_k`.
    pub y: Vec<Vec<f64>>,
    pub over: Vec<f64>,
    pub under: Vec<f64>,
}

struct Edge {
    to: usize,
    cap: f64,
    cost: f64,
}

struct Graph {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    fn new(n: usize) -> Self {
        Graph {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: f64, cost: f64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.edges.push(Edge { to: from, cap: 0.0, cost: -cost });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }
}

/// Solve one day's recourse.
///
/// `skills[k]` lists services of type `k`; `alloc[k][l]`, `over[k]`,
/// `under[l]` are the day's costs; `cap[k] = x_k·h_k`; `demand[l] = d·s`.
pub fn solve_day(
    skills: &[Vec<usize>],
    alloc: &[Vec<f64>],
    over: &[f64],
    under: &[f64],
    cap: &[f64],
    demand: &[f64],
) -> DayRecourse {
    let nk = cap.len();
    let nl = demand.len();
    let source = nk + nl;
    let sink = source + 1;
    let mut g = Graph::new(nk + nl + 2);
    for (k, &c) in cap.iter().enumerate() {
        g.add(source, k, c.max(0.0), 0.0);
    }
    for (l, &d) in demand.iter().enumerate() {
        g.add(nk + l, sink, d.max(0.0), 0.0);
    }
    let mut arcs = Vec::new();
    for (k, r) in skills.iter().enumerate() {
        for &l in r {
            let w = under[l] + over[k] - alloc[k][l];
            if w > EPS {
                let id = g.add(k, nk + l, f64::INFINITY, -w);
                arcs.push((k, l, id));
            }
        }
    }

    let n = nk + nl + 2;
    loop {
        let mut dist = vec![f64::INFINITY; n];
        let mut prev: Vec<Option<usize>> = vec![None; n];
        dist[source] = 0.0;
        for _ in 0..n {
            let mut changed = false;
            for u in 0..n {
                if dist[u] == f64::INFINITY {
                    continue;
                }
                for &e in &g.adj[u] {
                    let edge = &g.edges[e];
                    if edge.cap > EPS && dist[u] + edge.cost < dist[edge.to] - EPS {
                        dist[edge.to] = dist[u] + edge.cost;
                        prev[edge.to] = Some(e);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if !(dist[sink] < -EPS) {
            break;
        }
        let mut push = f64::INFINITY;
        let mut v = sink;
        while let Some(e) = prev[v] {
            push = push.min(g.edges[e].cap);
            v = g.edges[e ^ 1].to;
        }
        if !(push > EPS) || push.is_infinite() {
            break;
        }
        let mut v = sink;
        while let Some(e) = prev[v] {
            g.edges[e].cap -= push;
            g.edges[e ^ 1].cap += push;
            v = g.edges[e ^ 1].to;
        }
    }

    let mut y = vec![vec![0.0; nl]; nk];
    for &(k, l, id) in &arcs {
        y[k][l] = g.edges[id ^ 1].cap;
    }
    let mut cost = 0.0;
    let mut o = vec![0.0; nk];
    let mut u = vec![0.0; nl];
    for k in 0..nk {
        let used: f64 = y[k].iter().sum();
        o[k] = (cap[k] - used).max(0.0);
        cost += over[k] * o[k];
        for &l in &skills[k] {
            cost += alloc[k][l] * y[k][l];
        }
    }
    for l in 0..nl {
        let served: f64 = (0..nk).map(|k| y[k][l]).sum();
        u[l] = (demand[l] - served).max(0.0);
        cost += under[l] * u[l];
    }
    DayRecourse {
        cost,
        y,
        over: o,
        under: u,
    }
}
