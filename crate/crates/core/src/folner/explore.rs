use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::Witness;
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupSpec};

struct Node {
    element: GroupElement,
    /// usize::MAX for sources.
    parent: usize,
    generator: usize,
    depth: usize,
    inside: bool,
}

/// The part of sources·S^depth reachable without passing through elements
/// rejected by the predicate, with a shortest word for each element.
pub(crate) struct Ball {
    nodes: Vec<Node>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn inside(&self, i: usize) -> bool {
        self.nodes[i].inside
    }

    pub fn depth(&self, i: usize) -> usize {
        self.nodes[i].depth
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.nodes[i].element
    }

    pub fn witness(&self, i: usize) -> Witness {
        let mut word = Vec::new();
        let mut j = i;
        while self.nodes[j].parent != usize::MAX {
            word.push(self.nodes[j].generator);
            j = self.nodes[j].parent;
        }
        word.reverse();
        Witness { source: self.nodes[j].element.clone(), word, element: self.nodes[i].element.clone() }
    }
}

/// Breadth-first search from `sources` by right multiplication with `gens`.
///
/// Elements failing `inside` are recorded but not expanded. The search is
/// deterministic: frontiers are expanded in parallel but merged in order.
pub(crate) fn explore(
    group: &GroupSpec,
    gens: &[GroupElement],
    sources: Vec<GroupElement>,
    depth: usize,
    inside: &(dyn Fn(&GroupElement) -> bool + Sync),
    budget: usize,
    threads: usize,
) -> Result<Ball> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::argument(format!("thread pool: {e}")))?;
    pool.install(|| {
        let mut index: FxHashMap<GroupElement, usize> = FxHashMap::default();
        let mut nodes: Vec<Node> = Vec::new();
        let mut add = |nodes: &mut Vec<Node>, element: GroupElement, parent: usize, generator: usize, d: usize| -> Result<bool> {
            if index.contains_key(&element) {
                return Ok(false);
            }
            if nodes.len() >= budget {
                return Err(Error::Budget { budget, reached: nodes.len() + 1 });
            }
            index.insert(element.clone(), nodes.len());
            nodes.push(Node { element, parent, generator, depth: d, inside: false });
            Ok(true)
        };
        for s in sources {
            add(&mut nodes, s, usize::MAX, 0, 0)?;
        }
        nodes.par_iter_mut().for_each(|n| n.inside = inside(&n.element));
        let mut level = 0..nodes.len();
        for d in 1..=depth {
            let expand: Vec<usize> = level.clone().filter(|&i| nodes[i].inside).collect();
            let found: Vec<Vec<(GroupElement, usize, usize)>> = expand
                .par_iter()
                .map(|&i| {
                    gens.iter()
                        .enumerate()
                        .map(|(k, g)| (group.multiply_unchecked(&nodes[i].element, g), i, k))
                        .collect()
                })
                .collect();
            let start = nodes.len();
            for (e, parent, k) in found.into_iter().flatten() {
                add(&mut nodes, e, parent, k, d)?;
            }
            nodes[start..].par_iter_mut().for_each(|n| n.inside = inside(&n.element));
            level = start..nodes.len();
            if level.is_empty() {
                break;
            }
        }
        Ok(Ball { nodes })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ExponentVector;

    #[test]
    fn balls_in_the_plane() {
        let g = GroupSpec::free_abelian(2).unwrap();
        let b = explore(&g, &g.generators(), vec![g.identity()], 3, &|_| true, 1000, 1).unwrap();
        // |x| + |y| ≤ 3 has 2·3² + 2·3 + 1 = 25 points.
        assert_eq!(b.len(), 25);
        let far = (0..b.len()).find(|&i| b.depth(i) == 3).unwrap();
        assert_eq!(b.witness(far).word.len(), 3);
        let stop = |x: &GroupElement| matches!(x, GroupElement::Abelian(v) if v.max_norm() == 0);
        let b = explore(&g, &g.generators(), vec![g.identity()], 3, &stop, 1000, 2).unwrap();
        assert_eq!(b.len(), 5);
        assert!(matches!(
            explore(&g, &g.generators(), vec![GroupElement::Abelian(ExponentVector::zero(2))], 3, &|_| true, 10, 1),
            Err(Error::Budget { .. })
        ));
    }
}
