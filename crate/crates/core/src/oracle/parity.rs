//! Max-parity games with a recursive Zielonka solver.
//!
//! Player 0 (even) wins a play iff the largest priority seen infinitely
//! often is even.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub struct ParityGame {
    owner: Vec<u8>,
    priority: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

/// Winning regions and positional winning strategies.
///
/// `strategy[v]` is the move of `owner(v)` at `v` when `v` is won by its owner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<u8>,
    pub strategy: Vec<Option<usize>>,
}

impl ParityGame {
    pub fn new() -> Self {
        ParityGame {
            owner: Vec::new(),
            priority: Vec::new(),
            succ: Vec::new(),
            pred: Vec::new(),
        }
    }

    pub fn add_vertex(&mut self, owner: u8, priority: u32) -> usize {
        assert!(owner < 2);
        self.owner.push(owner);
        self.priority.push(priority);
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
            self.pred[to].push(from);
        }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn owner(&self, v: usize) -> u8 {
        self.owner[v]
    }

    pub fn priority(&self, v: usize) -> u32 {
        self.priority[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    /// Solves the game. Panics if some vertex has no move.
    pub fn solve(&self) -> Solution {
        assert!(
            self.succ.iter().all(|s| !s.is_empty()),
            "every position needs a move"
        );
        let n = self.len();
        let mut winner = vec![0; n];
        let mut strategy = vec![None; n];
        let all = vec![true; n];
        self.zielonka(&all, &mut winner, &mut strategy);
        Solution { winner, strategy }
    }

    /// Attractor of `target` for `player` inside `mask`, with the attracting
    /// moves recorded in `strategy`.
    fn attractor(
        &self,
        mask: &[bool],
        target: &[usize],
        player: u8,
        strategy: &mut [Option<usize>],
    ) -> Vec<bool> {
        let n = self.len();
        let mut inside = vec![false; n];
        let mut count: Vec<usize> = (0..n)
            .map(|v| self.succ[v].iter().filter(|&&w| mask[w]).count())
            .collect();
        let mut queue = VecDeque::new();
        for &t in target {
            if !inside[t] {
                inside[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &v in &self.pred[w] {
                if !mask[v] || inside[v] {
                    continue;
                }
                if self.owner[v] == player {
                    inside[v] = true;
                    strategy[v] = Some(w);
                    queue.push_back(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        inside[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        inside
    }

    /// Solves the subgame on `mask`, writing winners and strategies for its
    /// vertices.
    fn zielonka(&self, mask: &[bool], winner: &mut [u8], strategy: &mut [Option<usize>]) {
        let verts: Vec<usize> = (0..self.len()).filter(|&v| mask[v]).collect();
        let Some(d) = verts.iter().map(|&v| self.priority[v]).max() else {
            return;
        };
        let i = (d % 2) as u8;
        let top: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|&v| self.priority[v] == d)
            .collect();

        let mut attr_strat = vec![None; self.len()];
        let a = self.attractor(mask, &top, i, &mut attr_strat);
        let rest: Vec<bool> = (0..self.len()).map(|v| mask[v] && !a[v]).collect();
        let mut sub_winner = winner.to_vec();
        let mut sub_strat = strategy.to_vec();
        self.zielonka(&rest, &mut sub_winner, &mut sub_strat);

        let opponent_wins: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|&v| rest[v] && sub_winner[v] != i)
            .collect();

        if opponent_wins.is_empty() {
            for &v in &verts {
                winner[v] = i;
                if self.owner[v] != i {
                    continue;
                }
                strategy[v] = if rest[v] {
                    sub_strat[v]
                } else if self.priority[v] == d && attr_strat[v].is_none() {
                    self.succ[v].iter().copied().find(|&w| mask[w])
                } else {
                    attr_strat[v]
                };
            }
            return;
        }

        let mut b_strat = vec![None; self.len()];
        let b = self.attractor(mask, &opponent_wins, 1 - i, &mut b_strat);
        let rest2: Vec<bool> = (0..self.len()).map(|v| mask[v] && !b[v]).collect();
        self.zielonka(&rest2, winner, strategy);
        for &v in &verts {
            if !b[v] {
                continue;
            }
            winner[v] = 1 - i;
            if self.owner[v] == 1 - i {
                strategy[v] = if rest[v] && sub_winner[v] != i {
                    sub_strat[v]
                } else {
                    b_strat[v]
                };
            }
        }
    }
}

impl Default for ParityGame {
    fn default() -> Self {
        ParityGame::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game(verts: &[(u8, u32)], edges: &[(usize, usize)]) -> ParityGame {
        let mut g = ParityGame::new();
        for &(o, p) in verts {
            g.add_vertex(o, p);
        }
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Follows both players' strategies from `v` (opponent moves are tried
    /// exhaustively) and checks every reachable cycle is won by `winner`.
    fn strategy_is_winning(g: &ParityGame, sol: &Solution, v: usize) -> bool {
        let w = sol.winner[v];
        // restrict: winner's vertices use the strategy, the opponent's keep all moves
        let n = g.len();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|u| {
                if g.owner(u) == w {
                    sol.strategy[u].into_iter().collect()
                } else {
                    g.successors(u).to_vec()
                }
            })
            .collect();
        let mut seen = vec![false; n];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            if sol.winner[u] != w || adj[u].is_empty() {
                return false;
            }
            for &x in &adj[u] {
                if !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        // every cycle in the restricted reachable graph must have a max priority of parity w:
        // for each priority p of the wrong parity, the subgraph of priorities <= p must
        // have no cycle through a vertex of priority p
        for p in (0..=g.priority.iter().copied().max().unwrap_or(0)).filter(|p| p % 2 != w as u32) {
            let keep: Vec<bool> = (0..n).map(|u| seen[u] && g.priority(u) <= p).collect();
            let sub: Vec<Vec<usize>> = (0..n)
                .map(|u| {
                    if keep[u] {
                        adj[u].iter().copied().filter(|&x| keep[x]).collect()
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            for c in crate::structure::sccs(&sub) {
                if crate::structure::is_nontrivial(&sub, &c)
                    && c.iter().any(|&u| keep[u] && g.priority(u) == p)
                {
                    return false;
                }
            }
        }
        true
    }

    fn check(g: &ParityGame, expected: &[u8]) {
        let sol = g.solve();
        assert_eq!(sol.winner, expected);
        for v in 0..g.len() {
            assert!(strategy_is_winning(g, &sol, v), "vertex {v}");
        }
    }

    #[test]
    fn single_loops() {
        check(&game(&[(0, 0)], &[(0, 0)]), &[0]);
        check(&game(&[(0, 1)], &[(0, 0)]), &[1]);
        check(&game(&[(1, 2)], &[(0, 0)]), &[0]);
    }

    #[test]
    fn pure_buchi() {
        // priorities {0, 2}: every play is won by player 0
        let g = game(&[(1, 0), (0, 2), (1, 0)], &[(0, 0), (0, 1), (1, 0), (2, 1), (2, 2)]);
        check(&g, &[0, 0, 0]);
        // priorities {1, 2}: player 0 must see 2 infinitely often, and
        // player 1 at 0 can stay on its odd self-loop
        let g = game(&[(1, 1), (0, 2), (0, 1)], &[(0, 0), (0, 1), (1, 0), (2, 1), (2, 2)]);
        check(&g, &[1, 1, 1]);
        let g = game(&[(0, 1), (0, 2), (0, 1)], &[(0, 0), (0, 1), (1, 0), (2, 1), (2, 2)]);
        check(&g, &[0, 0, 0]);
    }

    #[test]
    fn pure_cobuchi() {
        // priority 1 at vertex 1; player 1 owns 0 and can loop through 1 forever
        let g = game(&[(1, 0), (0, 1), (0, 0)], &[(0, 1), (0, 2), (1, 0), (2, 2)]);
        check(&g, &[1, 1, 0]);
        // same arena owned by player 0 avoids 1
        let g = game(&[(0, 0), (0, 1), (0, 0)], &[(0, 1), (0, 2), (1, 0), (2, 2)]);
        check(&g, &[0, 0, 0]);
    }

    #[test]
    fn three_priorities() {
        // 0 (p0, owner 1) -> 1 (p1) or 2 (p2); 1 -> 0; 2 -> 0
        let g = game(&[(1, 0), (0, 1), (0, 2)], &[(0, 1), (0, 2), (1, 0), (2, 0)]);
        check(&g, &[1, 1, 1]);
        let g = game(&[(0, 0), (0, 1), (0, 2)], &[(0, 1), (0, 2), (1, 0), (2, 0)]);
        check(&g, &[0, 0, 0]);
        // player 1 chooses, but 1 also forces through 2
        let g = game(
            &[(1, 0), (0, 1), (0, 2), (1, 0)],
            &[(0, 1), (0, 3), (1, 2), (2, 0), (3, 3)],
        );
        check(&g, &[0, 0, 0, 0]);
    }

    #[test]
    fn eight_positions() {
        // two disjoint halves joined by a player-1 choice
        let g = game(
            &[(1, 0), (0, 1), (0, 0), (0, 3), (1, 2), (0, 0), (0, 4), (1, 1)],
            &[
                (0, 1),
                (0, 4),
                (1, 2),
                (2, 1),
                (2, 0),
                (3, 4),
                (4, 3),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 6),
                (7, 5),
            ],
        );
        let sol = g.solve();
        for v in 0..g.len() {
            assert!(strategy_is_winning(&g, &sol, v), "vertex {v}");
        }
        // {5, 6, 7}: every cycle passes 6 (priority 4)
        assert_eq!(&sol.winner[5..], &[0, 0, 0]);
        // 3 <-> 4 loop has max 3 but 4's owner (1) can stay there
        assert_eq!(sol.winner[3], 1);
        assert_eq!(sol.winner[0], 1);
    }
}
