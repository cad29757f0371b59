//! Hamiltonian cycles and paths by backtracking.
//!
//! A partial path is abandoned when the unvisited vertices (plus the current
//! end) stop being connected, or when too many of them have fewer than two
//! usable neighbors left.

use crate::graph::{Graph, Vertex};
use crate::nonsep::{Certificate, SearchStats, Witness};

use super::{bit, bits, connected_mask, Budget, Flow, Masks, SearchConfig, SearchError};

/// Endpoint constraints for a Hamiltonian path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchors {
    Free,
    Start(Vertex),
    Pair(Vertex, Vertex),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Cycle(Vertex),
    AnyEnd,
    End(Vertex),
}

struct Ham<'a> {
    m: &'a Masks,
    budget: Budget,
    path: Vec<Vertex>,
    visited: u128,
    target: Target,
}

impl Ham<'_> {
    fn run(&mut self, start: Vertex) -> Flow {
        self.path.push(start);
        self.visited |= bit(start);
        let r = self.extend();
        if r != Flow::Found {
            self.path.pop();
            self.visited &= !bit(start);
        }
        r
    }

    fn extend(&mut self) -> Flow {
        if !self.budget.tick() {
            return Flow::OutOfBudget;
        }
        let m = self.m;
        let cur = *self.path.last().unwrap();
        let rest = m.all & !self.visited;
        if rest == 0 {
            self.budget.stats.trees += 1;
            let ok = match self.target {
                Target::Cycle(s) => m.nbr[cur] & bit(s) != 0,
                Target::AnyEnd => true,
                Target::End(v) => cur == v,
            };
            return if ok { Flow::Found } else { Flow::Continue };
        }
        if !self.feasible(cur, rest) {
            self.budget.stats.prunes += 1;
            return Flow::Continue;
        }
        let mut next = m.nbr[cur] & rest;
        if let Target::End(v) = self.target {
            if rest != bit(v) {
                next &= !bit(v);
            }
        }
        for y in m.ordered(next).collect::<Vec<_>>() {
            self.path.push(y);
            self.visited |= bit(y);
            let r = self.extend();
            if r != Flow::Continue {
                return r;
            }
            self.path.pop();
            self.visited &= !bit(y);
        }
        Flow::Continue
    }

    fn feasible(&self, cur: Vertex, rest: u128) -> bool {
        let m = self.m;
        let open = match self.target {
            Target::Cycle(s) => rest | bit(cur) | bit(s),
            Target::AnyEnd | Target::End(_) => rest | bit(cur),
        };
        if !connected_mask(&m.nbr, open) {
            return false;
        }
        // vertices that can only be a path end
        let mut ends = 0;
        for x in bits(rest) {
            let avail = (m.nbr[x] & open & !bit(x)).count_ones();
            let needed = match self.target {
                Target::End(v) if x == v => 1,
                _ => 2,
            };
            if avail == 0 {
                return false;
            }
            if avail < needed {
                ends += 1;
            }
        }
        match self.target {
            Target::AnyEnd => ends <= 1,
            _ => ends == 0,
        }
    }
}

fn finish(ham: Ham<'_>, r: Flow, cfg: &SearchConfig, witness: impl FnOnce(Vec<Vertex>) -> Witness) -> Certificate {
    let stats = if cfg.record_stats {
        ham.budget.stats
    } else {
        SearchStats::default()
    };
    match r {
        Flow::Found => Certificate::holds(witness(ham.path)),
        Flow::Continue => Certificate::fails(Witness::Exhausted { stats }),
        Flow::OutOfBudget => Certificate::inconclusive(stats),
    }
}

/// Hamiltonian cycle, or exhaustion. Graphs with fewer than three vertices have none.
pub fn find_hamiltonian_cycle(g: &Graph, cfg: &SearchConfig) -> Result<Certificate, SearchError> {
    let m = Masks::new(g, cfg.order)?;
    let n = g.n();
    let mut ham = Ham {
        m: &m,
        budget: Budget::new(cfg),
        path: Vec::with_capacity(n),
        visited: 0,
        target: Target::Cycle(0),
    };
    if n < 3 || (0..n).any(|v| g.degree(v) < 2) {
        return Ok(finish(ham, Flow::Continue, cfg, |_| unreachable!()));
    }
    // every vertex lies on the cycle; start at a least-degree one
    let start = (0..n).min_by_key(|&v| (g.degree(v), m.rank[v])).unwrap();
    ham.target = Target::Cycle(start);
    let r = ham.run(start);
    Ok(finish(ham, r, cfg, |cycle| Witness::HamiltonianCycle { cycle }))
}

/// Hamiltonian path, optionally with a fixed start or fixed ends.
pub fn find_hamiltonian_path(
    g: &Graph,
    anchors: Anchors,
    cfg: &SearchConfig,
) -> Result<Certificate, SearchError> {
    let m = Masks::new(g, cfg.order)?;
    let n = g.n();
    let check = |v: Vertex| {
        if v >= n {
            Err(SearchError::BadAnchors(format!("vertex {v} out of range")))
        } else {
            Ok(())
        }
    };
    let mut ham = Ham {
        m: &m,
        budget: Budget::new(cfg),
        path: Vec::with_capacity(n),
        visited: 0,
        target: Target::AnyEnd,
    };
    let r = match anchors {
        Anchors::Pair(u, v) => {
            check(u)?;
            check(v)?;
            if u == v {
                return Err(SearchError::BadAnchors("identical endpoints".into()));
            }
            ham.target = Target::End(v);
            ham.run(u)
        }
        Anchors::Start(u) => {
            check(u)?;
            ham.run(u)
        }
        Anchors::Free => {
            if n == 0 {
                return Err(SearchError::TooSmall { need: 1, got: 0 });
            }
            let mut r = Flow::Continue;
            for s in m.order.clone() {
                r = ham.run(s);
                if r != Flow::Continue {
                    break;
                }
            }
            r
        }
    };
    Ok(finish(ham, r, cfg, |path| Witness::HamiltonianPath { path }))
}

/// Convenience: whether `g` has a Hamiltonian `u`–`v` path (unlimited budget).
pub fn has_hamiltonian_uv_path(g: &Graph, u: Vertex, v: Vertex) -> Result<bool, SearchError> {
    let cert = find_hamiltonian_path(g, Anchors::Pair(u, v), &SearchConfig::default())?;
    Ok(cert.is_holds())
}
