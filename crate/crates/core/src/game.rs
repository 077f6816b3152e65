//! Max-parity games solved with Zielonka's recursive algorithm, and the two
//! analyses of deterministic tree automata built on top: per-state emptiness
//! (pruning) and rejecting-cycle search.

use std::ops::Not;

use crate::error::{Error, Result};
use crate::graph::{self, Parity};
use crate::tree::{ParityTreeAutomaton, TreeWitness};
use crate::word::StateId;

/// The two players. `Output` wins plays whose maximal color seen infinitely
/// often is even, `Input` wins the others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Output,
    Input,
}

impl Player {
    pub fn of_color(color: u32) -> Player {
        if color.is_multiple_of(2) {
            Player::Output
        } else {
            Player::Input
        }
    }

    fn index(self) -> usize {
        match self {
            Player::Output => 0,
            Player::Input => 1,
        }
    }
}

impl Not for Player {
    type Output = Player;

    fn not(self) -> Player {
        match self {
            Player::Output => Player::Input,
            Player::Input => Player::Output,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    color: Vec<u32>,
    succ: Vec<Vec<usize>>,
}

impl ParityGame {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, owner: Player, color: u32) -> usize {
        self.owner.push(owner);
        self.color.push(color);
        self.succ.push(Vec::new());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        assert!(to < self.num_vertices(), "edge target out of range");
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn color(&self, v: usize) -> u32 {
        self.color[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn is_total(&self) -> bool {
        self.succ.iter().all(|s| !s.is_empty())
    }

    /// Sends every dead end to a sink won by the opponent of its owner: a
    /// player who cannot move loses.
    pub fn totalize(&mut self) {
        let mut sinks: [Option<usize>; 2] = [None, None];
        for v in 0..self.num_vertices() {
            if !self.succ[v].is_empty() {
                continue;
            }
            let loser = self.owner[v];
            let sink = match sinks[loser.index()] {
                Some(s) => s,
                None => {
                    // color 1 is won by Input, color 0 by Output
                    let color = if loser == Player::Output { 1 } else { 0 };
                    let s = self.add_vertex(!loser, color);
                    self.succ[s].push(s);
                    sinks[loser.index()] = Some(s);
                    s
                }
            };
            self.succ[v].push(sink);
        }
    }
}

/// Winning regions and memoryless strategies. `strategy[v]` is the move of
/// the owner of `v`; it is winning whenever `v` lies in its owner's region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub strategy: Vec<usize>,
}

impl Solution {
    pub fn region(&self, player: Player) -> Vec<bool> {
        self.winner.iter().map(|&w| w == player).collect()
    }
}

struct Zielonka<'a> {
    game: &'a ParityGame,
    pred: Vec<Vec<usize>>,
    strategy: Vec<usize>,
}

impl Zielonka<'_> {
    fn attractor(&mut self, mask: &[bool], target: &[bool], player: Player) -> Vec<bool> {
        let n = self.game.num_vertices();
        let mut attr = vec![false; n];
        let mut remaining = vec![usize::MAX; n];
        let mut queue = Vec::new();
        for v in (0..n).filter(|&v| mask[v] && target[v]) {
            attr[v] = true;
            queue.push(v);
        }
        while let Some(w) = queue.pop() {
            for i in 0..self.pred[w].len() {
                let v = self.pred[w][i];
                if !mask[v] || attr[v] {
                    continue;
                }
                if self.game.owner[v] == player {
                    attr[v] = true;
                    self.strategy[v] = w;
                    queue.push(v);
                } else {
                    if remaining[v] == usize::MAX {
                        remaining[v] = self.game.succ[v].iter().filter(|&&s| mask[s]).count();
                    }
                    remaining[v] -= 1;
                    if remaining[v] == 0 {
                        attr[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        attr
    }

    fn solve(&mut self, mask: &[bool]) -> [Vec<bool>; 2] {
        let n = self.game.num_vertices();
        let Some(top) = (0..n)
            .filter(|&v| mask[v])
            .map(|v| self.game.color[v])
            .max()
        else {
            return [vec![false; n], vec![false; n]];
        };
        let p = Player::of_color(top);
        let target: Vec<bool> = (0..n)
            .map(|v| mask[v] && self.game.color[v] == top)
            .collect();
        for v in (0..n).filter(|&v| target[v] && self.game.owner[v] == p) {
            self.strategy[v] = *self.game.succ[v]
                .iter()
                .find(|&&s| mask[s])
                .expect("subgames are total");
        }
        let a = self.attractor(mask, &target, p);
        let rest: Vec<bool> = (0..n).map(|v| mask[v] && !a[v]).collect();
        let sub = self.solve(&rest);
        if !sub[(!p).index()].iter().any(|&b| b) {
            let mut won = [vec![false; n], vec![false; n]];
            won[p.index()] = mask.to_vec();
            return won;
        }
        let b = self.attractor(mask, &sub[(!p).index()], !p);
        let rest2: Vec<bool> = (0..n).map(|v| mask[v] && !b[v]).collect();
        let mut won = self.solve(&rest2);
        for v in (0..n).filter(|&v| b[v]) {
            won[(!p).index()][v] = true;
        }
        won
    }
}

/// Solves a total parity game (dead ends must be removed first, see
/// [`ParityGame::totalize`]).
pub fn solve(game: &ParityGame) -> Solution {
    assert!(game.is_total(), "parity game must be total");
    let n = game.num_vertices();
    let mut pred = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &game.succ[v] {
            pred[w].push(v);
        }
    }
    let mut z = Zielonka {
        game,
        pred,
        strategy: (0..n).map(|v| game.succ[v][0]).collect(),
    };
    let won = z.solve(&vec![true; n]);
    let winner = (0..n)
        .map(|v| {
            if won[0][v] {
                Player::Output
            } else {
                Player::Input
            }
        })
        .collect();
    Solution {
        winner,
        strategy: z.strategy,
    }
}

/// Checks a solution independently of the solver: both regions must be
/// closed under the winner's strategy and all opponent moves, and the graph
/// restricted that way may contain no cycle won by the opponent.
pub fn verify_solution(game: &ParityGame, solution: &Solution) -> bool {
    let n = game.num_vertices();
    if solution.winner.len() != n || solution.strategy.len() != n {
        return false;
    }
    for p in [Player::Output, Player::Input] {
        let region = solution.region(p);
        let mut adj = vec![Vec::new(); n];
        for v in (0..n).filter(|&v| region[v]) {
            if game.owner[v] == p {
                let s = solution.strategy[v];
                if !game.succ[v].contains(&s) || !region[s] {
                    return false;
                }
                adj[v].push(s);
            } else {
                if game.succ[v].iter().any(|&s| !region[s]) {
                    return false;
                }
                adj[v] = game.succ[v].clone();
            }
        }
        let losing = match p {
            Player::Output => Parity::Odd,
            Player::Input => Parity::Even,
        };
        if graph::find_parity_cycle(&adj, &game.color, Some(&region), losing).is_some() {
            return false;
        }
    }
    true
}

/// The emptiness game of a tree automaton: Output picks a transition from a
/// state vertex (which carries the state's color), Input picks a direction
/// from the transition vertex (color 0). Vertex `q` is the state `q`.
pub fn emptiness_game(tree: &ParityTreeAutomaton) -> ParityGame {
    let mut g = ParityGame::new();
    for q in 0..tree.num_states() {
        g.add_vertex(Player::Output, tree.color(q));
    }
    for q in 0..tree.num_states() {
        for t in tree.transitions(q) {
            let v = g.add_vertex(Player::Input, 0);
            g.add_edge(q, v);
            for &target in &t.targets {
                g.add_edge(v, target);
            }
        }
    }
    g.totalize();
    g
}

/// `result[q]` holds iff the tree language of `q` is nonempty.
pub fn nonempty_states(tree: &ParityTreeAutomaton) -> Vec<bool> {
    let game = emptiness_game(tree);
    let solution = solve(&game);
    (0..tree.num_states())
        .map(|q| solution.winner[q] == Player::Output)
        .collect()
}

/// Result of pruning a tree automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruned {
    /// Reachable states with nonempty language. When the initial state itself
    /// is empty this is [`ParityTreeAutomaton::empty`].
    pub automaton: ParityTreeAutomaton,
    /// Original states whose language is empty.
    pub empty_states: Vec<StateId>,
    /// Original states with nonempty language that became unreachable.
    pub unreachable_states: Vec<StateId>,
    /// `origin[q]` is the original id of pruned state `q`.
    pub origin: Vec<StateId>,
}

impl Pruned {
    pub fn is_empty_language(&self) -> bool {
        self.origin.is_empty()
    }
}

/// Removes empty-language states (with every transition that can reach one)
/// and then unreachable states, repeating until nothing changes.
pub fn prune(tree: &ParityTreeAutomaton) -> Pruned {
    let mut current = tree.clone();
    let mut origin: Vec<StateId> = (0..tree.num_states()).collect();
    let mut empty_states = Vec::new();
    let mut unreachable_states = Vec::new();
    loop {
        let live = nonempty_states(&current);
        if !live[current.initial()] {
            empty_states.extend(origin.iter().copied());
            empty_states.sort_unstable();
            empty_states.dedup();
            return Pruned {
                automaton: ParityTreeAutomaton::empty(tree.signature().clone()),
                empty_states,
                unreachable_states: Vec::new(),
                origin: Vec::new(),
            };
        }
        let without_empty = current.restrict(&live);
        let kept: Vec<StateId> = (0..current.num_states()).filter(|&q| live[q]).collect();
        empty_states.extend(
            (0..current.num_states())
                .filter(|&q| !live[q])
                .map(|q| origin[q]),
        );
        let origin_live: Vec<StateId> = kept.iter().map(|&q| origin[q]).collect();

        let reach = without_empty.reachable_states();
        let trimmed = without_empty.restrict(&reach);
        unreachable_states.extend(
            (0..without_empty.num_states())
                .filter(|&q| !reach[q])
                .map(|q| origin_live[q]),
        );
        let next_origin: Vec<StateId> = (0..without_empty.num_states())
            .filter(|&q| reach[q])
            .map(|q| origin_live[q])
            .collect();

        let changed = next_origin.len() != origin.len();
        current = trimmed;
        origin = next_origin;
        if !changed {
            empty_states.sort_unstable();
            unreachable_states.sort_unstable();
            return Pruned {
                automaton: current,
                empty_states,
                unreachable_states,
                origin,
            };
        }
    }
}

/// Searches a pruned tree automaton for a reachable cycle whose maximal color
/// is odd. For each odd color `k` the subgraph of states with color `<= k` is
/// split into SCCs; a nontrivial SCC containing a color-`k` state yields the
/// cycle, and a shortest path from the initial state yields the stem.
pub fn has_rejecting_cycle(tree: &ParityTreeAutomaton) -> Result<Option<TreeWitness>> {
    let live = nonempty_states(tree);
    if let Some(q) = live.iter().position(|&l| !l) {
        return Err(Error::NotPruned(q));
    }
    let adj = tree.state_graph();
    let reach = graph::reachable(&adj, &[tree.initial()], None);
    let Some(cycle) = graph::find_parity_cycle(&adj, tree.colors(), Some(&reach), Parity::Odd)
    else {
        return Ok(None);
    };
    let anchor = cycle[0];
    let stem = graph::shortest_path_from(&adj, &[tree.initial()], anchor, None)
        .expect("anchor is reachable");
    let steps = |path: &[StateId]| -> Vec<(StateId, u32, u32)> {
        path.windows(2)
            .map(|w| {
                let (y, x) = tree.edge(w[0], w[1]).expect("path follows edges");
                (w[0], y, x)
            })
            .collect()
    };
    Ok(Some(TreeWitness {
        stem: steps(&stem),
        cycle: steps(&cycle),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Signature;

    #[test]
    fn single_vertex_games() {
        let mut g = ParityGame::new();
        let v = g.add_vertex(Player::Output, 2);
        g.add_edge(v, v);
        assert_eq!(solve(&g).winner, vec![Player::Output]);

        let mut g = ParityGame::new();
        let v = g.add_vertex(Player::Output, 1);
        g.add_edge(v, v);
        assert_eq!(solve(&g).winner, vec![Player::Input]);
    }

    #[test]
    fn three_vertex_choice() {
        // v0 (Output, 1) -> v1 (Input, 2) -> v0 ; v0 -> v2 (Output, 1) self-loop
        let mut g = ParityGame::new();
        let v0 = g.add_vertex(Player::Output, 1);
        let v1 = g.add_vertex(Player::Input, 2);
        let v2 = g.add_vertex(Player::Output, 1);
        g.add_edge(v0, v1);
        g.add_edge(v0, v2);
        g.add_edge(v1, v0);
        g.add_edge(v2, v2);
        let s = solve(&g);
        assert_eq!(
            s.winner,
            vec![Player::Output, Player::Output, Player::Input]
        );
        assert_eq!(s.strategy[v0], v1);
        assert!(verify_solution(&g, &s));
    }

    #[test]
    fn brute_force_three_vertex_choice() {
        // the two memoryless Output strategies at v0: only v1 wins
        let outcomes: Vec<bool> = [1usize, 2]
            .iter()
            .map(|&choice| {
                // v0 -> choice; v1 -> v0; v2 -> v2
                let cycle_max = if choice == 1 { 2 } else { 1 };
                cycle_max % 2 == 0
            })
            .collect();
        assert_eq!(outcomes, vec![true, false]);
    }

    #[test]
    fn totalize_makes_stuck_owner_lose() {
        let mut g = ParityGame::new();
        let a = g.add_vertex(Player::Output, 2);
        let b = g.add_vertex(Player::Input, 1);
        g.totalize();
        let s = solve(&g);
        assert_eq!(s.winner[a], Player::Input);
        assert_eq!(s.winner[b], Player::Output);
        assert!(verify_solution(&g, &s));
    }

    #[test]
    fn emptiness_of_trivial_automata() {
        let sig = Signature::new(&["c"], &["b"]).unwrap();
        let mut t = ParityTreeAutomaton::new(sig.clone(), vec![0], 0);
        t.add_transition(0, 0, vec![0, 0]);
        assert_eq!(nonempty_states(&t), vec![true]);
        assert_eq!(has_rejecting_cycle(&t).unwrap(), None);

        assert_eq!(
            nonempty_states(&ParityTreeAutomaton::empty(sig)),
            vec![false]
        );
    }

    #[test]
    fn unpruned_input_is_rejected() {
        let sig = Signature::new(&["c"], &["b"]).unwrap();
        let mut t = ParityTreeAutomaton::new(sig, vec![0, 1], 0);
        t.add_transition(0, 0, vec![0, 0]);
        t.add_transition(0, 1, vec![1, 0]);
        t.add_transition(1, 0, vec![1, 1]);
        assert_eq!(has_rejecting_cycle(&t), Err(Error::NotPruned(1)));
        let p = prune(&t);
        assert_eq!(p.empty_states, vec![1]);
        assert_eq!(p.automaton.num_states(), 1);
        assert_eq!(p.automaton.num_transitions(), 1);
    }
}
