/// Maximum bipartite matching by augmenting paths. `adj[u]` lists the right
/// vertices adjacent to left vertex `u`, tried in the given order.
/// Returns `mate[u]` for every left vertex.
pub fn maximum_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right];
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(u, adj, &mut owner, &mut seen);
    }
    let mut mate = vec![None; adj.len()];
    for (v, o) in owner.iter().enumerate() {
        if let Some(u) = *o {
            mate[u] = Some(v);
        }
    }
    mate
}

fn augment(u: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if owner[v].is_none_or(|w| augment(w, adj, owner, seen)) {
            owner[v] = Some(u);
            return true;
        }
    }
    false
}
