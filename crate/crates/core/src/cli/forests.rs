//! Brute-force forests on labelled vertices, graded by inversions.
//!
//! Each tree is rooted at its largest vertex; an inversion is a pair `i > j`
//! with `i` an ancestor of `j`.

/// `counts[m]` = number of forests on `1..=n` with `m` inversions.
pub fn inversion_distribution(n: usize) -> Vec<u64> {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut counts = vec![0u64; n * n.saturating_sub(1) / 2 + 1];
    for mask in 0u32..1 << edges.len() {
        let chosen: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        if let Some(inv) = inversions(n, &chosen) {
            counts[inv] += 1;
        }
    }
    counts
}

/// Inversions of the forest with the given edges, or `None` if they contain
/// a cycle.
pub fn inversions(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut component: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    let mut adjacent = vec![Vec::new(); n];
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut component, a), find(&mut component, b));
        if ra == rb {
            return None;
        }
        component[ra] = rb;
        adjacent[a].push(b);
        adjacent[b].push(a);
    }
    let mut visited = vec![false; n];
    let mut total = 0;
    for root in (0..n).rev() {
        if visited[root] {
            continue;
        }
        // depth-first with the current ancestor chain
        let mut stack = vec![(root, usize::MAX, 0usize)];
        let mut chain: Vec<usize> = Vec::new();
        while let Some((v, parent, depth)) = stack.pop() {
            chain.truncate(depth);
            visited[v] = true;
            total += chain.iter().filter(|&&a| a > v).count();
            chain.push(v);
            for &w in &adjacent[v] {
                if w != parent {
                    stack.push((w, v, depth + 1));
                }
            }
        }
    }
    Some(total)
}
