//! Dinic's maximum flow over any exact ordered value type.

use std::collections::VecDeque;
use std::ops::{Add, Sub};

use num_traits::Zero;

pub trait Capacity: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}

impl<T> Capacity for T where T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T> {}

#[derive(Clone, Debug)]
struct Arc<T> {
    to: usize,
    cap: T,
    rev: usize,
}

#[derive(Clone, Debug)]
pub struct FlowNetwork<T> {
    adj: Vec<Vec<Arc<T>>>,
    source: usize,
    sink: usize,
}

impl<T: Capacity> FlowNetwork<T> {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < nodes && sink < nodes && source != sink);
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            source,
            sink,
        }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    /// Adds an arc `from -> to`. Capacities must be non-negative.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: T) {
        assert!(cap >= T::zero(), "negative capacity");
        let rev_from = self.adj[to].len() + usize::from(from == to);
        let rev_to = self.adj[from].len();
        self.adj[from].push(Arc {
            to,
            cap,
            rev: rev_from,
        });
        self.adj[to].push(Arc {
            to: from,
            cap: T::zero(),
            rev: rev_to,
        });
    }

    /// Runs Dinic's algorithm and returns the flow value. The network keeps
    /// the residual capacities afterwards.
    pub fn max_flow(&mut self) -> T {
        let mut total = T::zero();
        loop {
            let Some(level) = self.levels() else {
                return total;
            };
            let mut next = vec![0usize; self.adj.len()];
            loop {
                let pushed = self.augment(&level, &mut next);
                if pushed.is_zero() {
                    break;
                }
                total = total + pushed;
            }
        }
    }

    /// Nodes reachable from the source in the residual network. After
    /// [`FlowNetwork::max_flow`] this is the source side of a minimum cut.
    pub fn source_side(&self) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([self.source]);
        seen[self.source] = true;
        while let Some(u) = queue.pop_front() {
            for a in &self.adj[u] {
                if !seen[a.to] && a.cap > T::zero() {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        seen
    }

    fn levels(&self) -> Option<Vec<usize>> {
        let mut level = vec![usize::MAX; self.adj.len()];
        level[self.source] = 0;
        let mut queue = VecDeque::from([self.source]);
        while let Some(u) = queue.pop_front() {
            for a in &self.adj[u] {
                if level[a.to] == usize::MAX && a.cap > T::zero() {
                    level[a.to] = level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        (level[self.sink] != usize::MAX).then_some(level)
    }

    /// One blocking-flow augmentation along a shortest path; zero when none.
    fn augment(&mut self, level: &[usize], next: &mut [usize]) -> T {
        // Iterative DFS: `path` holds (node, arc index) pairs.
        let mut path: Vec<(usize, usize)> = Vec::new();
        let mut u = self.source;
        loop {
            if u == self.sink {
                let mut bottleneck = self.adj[path[0].0][path[0].1].cap.clone();
                for &(v, i) in &path[1..] {
                    let c = &self.adj[v][i].cap;
                    if *c < bottleneck {
                        bottleneck = c.clone();
                    }
                }
                for &(v, i) in &path {
                    let a = &mut self.adj[v][i];
                    a.cap = a.cap.clone() - bottleneck.clone();
                    let (to, rev) = (a.to, a.rev);
                    let b = &mut self.adj[to][rev];
                    b.cap = b.cap.clone() + bottleneck.clone();
                }
                return bottleneck;
            }
            let mut advanced = false;
            while next[u] < self.adj[u].len() {
                let a = &self.adj[u][next[u]];
                if a.cap > T::zero() && level[a.to] == level[u] + 1 {
                    path.push((u, next[u]));
                    u = a.to;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if !advanced {
                match path.pop() {
                    Some((prev, _)) => {
                        // Dead end: retire the arc that led here.
                        next[prev] += 1;
                        u = prev;
                    }
                    None => return T::zero(),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, Rational};

    #[test]
    fn classic_network() {
        // CLRS figure 26.1, max flow 23.
        let mut g = FlowNetwork::<i64>::new(6, 0, 5);
        for &(u, v, c) in &[
            (0, 1, 16),
            (0, 2, 13),
            (1, 3, 12),
            (2, 1, 4),
            (2, 4, 14),
            (3, 2, 9),
            (3, 5, 20),
            (4, 3, 7),
            (4, 5, 4),
        ] {
            g.add_arc(u, v, c);
        }
        assert_eq!(g.max_flow(), 23);
        let side = g.source_side();
        assert!(side[0] && !side[5]);
    }

    #[test]
    fn rational_capacities_cut_equals_flow() {
        let mut g = FlowNetwork::<Rational>::new(4, 0, 3);
        g.add_arc(0, 1, rat(1, 3));
        g.add_arc(0, 2, rat(1, 2));
        g.add_arc(1, 3, rat(1, 2));
        g.add_arc(2, 3, rat(1, 7));
        g.add_arc(1, 2, rat(5, 1));
        assert_eq!(g.max_flow(), rat(1, 3) + rat(1, 7));
    }
}
