//! Small explicit-graph utilities shared by the automata and game code.
//!
//! Graphs are adjacency lists; an optional node mask restricts every query to
//! an induced subgraph.

use std::collections::VecDeque;

#[inline]
fn allowed(mask: Option<&[bool]>, v: usize) -> bool {
    mask.is_none_or(|m| m[v])
}

/// Nodes reachable from `starts` inside the mask.
pub(crate) fn reachable(adj: &[Vec<usize>], starts: &[usize], mask: Option<&[bool]>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = Vec::new();
    for &s in starts {
        if allowed(mask, s) && !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if allowed(mask, w) && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Nodes that can reach some node in `targets` inside the mask.
pub(crate) fn backward_reachable(
    adj: &[Vec<usize>],
    targets: &[bool],
    mask: Option<&[bool]>,
) -> Vec<bool> {
    let mut pred = vec![Vec::new(); adj.len()];
    for (v, succ) in adj.iter().enumerate() {
        for &w in succ {
            pred[w].push(v);
        }
    }
    let starts: Vec<usize> = (0..adj.len())
        .filter(|&v| targets[v] && allowed(mask, v))
        .collect();
    reachable(&pred, &starts, mask)
}

/// Strongly connected components of the masked subgraph (iterative Tarjan).
pub(crate) fn sccs(adj: &[Vec<usize>], mask: Option<&[bool]>) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    // (node, next successor offset)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED || !allowed(mask, root) {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if !allowed(mask, w) {
                    continue;
                }
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Shortest node path `from -> ... -> to` using at least one edge, inside the
/// mask. For `from == to` this is a shortest cycle through `from`.
pub(crate) fn shortest_path(
    adj: &[Vec<usize>],
    from: usize,
    to: usize,
    mask: Option<&[bool]>,
) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &w in &adj[from] {
        if allowed(mask, w) && !seen[w] {
            seen[w] = true;
            parent[w] = from;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            loop {
                cur = parent[cur];
                path.push(cur);
                if cur == from {
                    break;
                }
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[v] {
            if allowed(mask, w) && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Shortest node path from any of `starts` to `to` (possibly of length zero).
pub(crate) fn shortest_path_from(
    adj: &[Vec<usize>],
    starts: &[usize],
    to: usize,
    mask: Option<&[bool]>,
) -> Option<Vec<usize>> {
    if starts.contains(&to) {
        return Some(vec![to]);
    }
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in starts {
        if allowed(mask, s) && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if allowed(mask, w) && !seen[w] {
                seen[w] = true;
                parent[w] = v;
                if w == to {
                    let mut path = vec![to];
                    let mut cur = to;
                    while parent[cur] != usize::MAX {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
    }
    None
}

/// Parity of the maximal color on a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub(crate) fn of(color: u32) -> Parity {
        if color.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Searches the masked subgraph for a cycle whose maximal color has the
/// requested parity. For each candidate color `k` the subgraph of nodes with
/// color `<= k` is split into SCCs; a nontrivial SCC containing a color-`k`
/// node yields the cycle. Returns the cycle as `[v, ..., v]`.
pub(crate) fn find_parity_cycle(
    adj: &[Vec<usize>],
    colors: &[u32],
    mask: Option<&[bool]>,
    parity: Parity,
) -> Option<Vec<usize>> {
    let mut candidates: Vec<u32> = (0..adj.len())
        .filter(|&v| allowed(mask, v))
        .map(|v| colors[v])
        .filter(|&c| Parity::of(c) == parity)
        .collect();
    candidates.sort_unstable();
    candidates.dedup();

    for k in candidates {
        let sub: Vec<bool> = (0..adj.len())
            .map(|v| allowed(mask, v) && colors[v] <= k)
            .collect();
        for comp in sccs(adj, Some(&sub)) {
            let anchor = comp.iter().copied().filter(|&v| colors[v] == k).min();
            let Some(anchor) = anchor else { continue };
            if comp.len() == 1 && !adj[anchor].contains(&anchor) {
                continue;
            }
            let mut in_comp = vec![false; adj.len()];
            for &v in &comp {
                in_comp[v] = true;
            }
            let cycle = shortest_path(adj, anchor, anchor, Some(&in_comp))
                .expect("nontrivial SCC has a cycle through each member");
            return Some(cycle);
        }
    }
    None
}
