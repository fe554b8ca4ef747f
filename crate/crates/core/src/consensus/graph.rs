use std::collections::{BTreeSet, VecDeque};
use std::path::Path;

use crate::ids::AgentId;
use crate::{Error, Result};

/// Undirected, connected communication graph over agents `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommGraph {
    adjacency: Vec<BTreeSet<usize>>,
    diameter: usize,
}

impl CommGraph {
    /// Builds a graph from undirected edges; rejects self-loops, unknown
    /// endpoints and disconnected graphs.
    pub fn from_edges(n_agents: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n_agents == 0 {
            return Err(Error::Graph("graph needs at least one agent".into()));
        }
        let mut adjacency = vec![BTreeSet::new(); n_agents];
        for &(a, b) in edges {
            if a >= n_agents || b >= n_agents {
                return Err(Error::Graph(format!("edge ({a}, {b}) references an agent outside 0..{n_agents}")));
            }
            if a == b {
                return Err(Error::Graph(format!("self-loop on agent {a}")));
            }
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        let mut diameter = 0;
        for src in 0..n_agents {
            let dist = bfs(&adjacency, src);
            if let Some(unreached) = dist.iter().position(Option::is_none) {
                return Err(Error::Graph(format!(
                    "graph is disconnected: agent {unreached} unreachable from agent {src}"
                )));
            }
            diameter = diameter.max(dist.into_iter().flatten().max().unwrap_or(0));
        }
        Ok(Self { adjacency, diameter })
    }

    pub fn complete(n_agents: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n_agents)
            .flat_map(|a| (a + 1..n_agents).map(move |b| (a, b)))
            .collect();
        Self::from_edges(n_agents, &edges)
    }

    pub fn line(n_agents: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n_agents).map(|a| (a - 1, a)).collect();
        Self::from_edges(n_agents, &edges)
    }

    pub fn ring(n_agents: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n_agents).map(|a| (a - 1, a)).collect();
        if n_agents > 2 {
            edges.push((n_agents - 1, 0));
        }
        Self::from_edges(n_agents, &edges)
    }

    /// Reads an edge list: one `a b` pair per line, `#` comments allowed.
    pub fn load(path: &Path, n_agents: usize) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let ends: Vec<_> = line.split_whitespace().map(str::parse::<usize>).collect();
            match ends.as_slice() {
                [Ok(a), Ok(b)] => edges.push((*a, *b)),
                _ => {
                    return Err(Error::Parse(format!(
                        "{}:{}: expected two agent ids, got {line:?}",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }
        Self::from_edges(n_agents, &edges)
    }

    pub fn n_agents(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbours(&self, agent: AgentId) -> impl Iterator<Item = AgentId> + '_ {
        self.adjacency[agent.0].iter().map(|&b| AgentId(b))
    }

    pub fn degree(&self, agent: AgentId) -> usize {
        self.adjacency[agent.0].len()
    }

    pub fn n_edges(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Directed links: two per undirected edge.
    pub fn n_links(&self) -> usize {
        2 * self.n_edges()
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }
}

fn bfs(adjacency: &[BTreeSet<usize>], src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adjacency.len()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued nodes have a distance");
        for &v in &adjacency[u] {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}
