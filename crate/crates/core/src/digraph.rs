//! The digraph `D(A)` of a 0-1 matrix: arc `(i, j)` iff `A(i, j) = 1`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::matrix01::{ExactMatrix, Matrix01};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

/// Classification of a strongly connected component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    /// A single vertex without a self-loop.
    TrivialAcyclic,
    /// A directed cycle through every vertex of the component; a looped
    /// vertex is `Cycle(1)`.
    Cycle(usize),
    NonCycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Vertices in ascending order.
    pub vertices: Vec<usize>,
    pub kind: ComponentKind,
}

/// Strongly connected components in reverse-topological order: every arc
/// leaving a component points to a component listed earlier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccReport {
    pub components: Vec<Component>,
    /// `component_of[v]` is the position of `v`'s component in `components`.
    pub component_of: Vec<usize>,
}

impl Digraph {
    pub fn from_matrix(a: &Matrix01) -> Self {
        let n = a.n();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, succ) in out.iter_mut().enumerate() {
            for j in a.row_ones(i) {
                succ.push(j);
                inc[j].push(i);
            }
        }
        Digraph { out, inc }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn sccs(&self) -> SccReport {
        let raw = self.tarjan();
        let n = self.n();
        let mut raw_of = vec![0; n];
        for (c, vs) in raw.iter().enumerate() {
            for &v in vs {
                raw_of[v] = c;
            }
        }

        // Re-order: a component is ready once every component it points to
        // is placed; among ready ones take the smallest vertex.
        let count = raw.len();
        let mut pending_out = vec![0usize; count];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); count];
        for u in 0..n {
            for &v in &self.out[u] {
                let (cu, cv) = (raw_of[u], raw_of[v]);
                if cu != cv {
                    pending_out[cu] += 1;
                    preds[cv].push(cu);
                }
            }
        }
        let min_vertex: Vec<usize> = raw.iter().map(|vs| vs[0]).collect();
        let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..count)
            .filter(|&c| pending_out[c] == 0)
            .map(|c| Reverse((min_vertex[c], c)))
            .collect();
        let mut components = Vec::with_capacity(count);
        let mut component_of = vec![0; n];
        while let Some(Reverse((_, c))) = ready.pop() {
            for &v in &raw[c] {
                component_of[v] = components.len();
            }
            components.push(Component {
                kind: self.classify(&raw[c], &raw_of),
                vertices: raw[c].clone(),
            });
            for &p in &preds[c] {
                pending_out[p] -= 1;
                if pending_out[p] == 0 {
                    ready.push(Reverse((min_vertex[p], p)));
                }
            }
        }
        SccReport {
            components,
            component_of,
        }
    }

    fn classify(&self, vertices: &[usize], comp: &[usize]) -> ComponentKind {
        let c = comp[vertices[0]];
        let inside = |v: &usize| comp[*v] == c;
        if vertices.len() == 1 {
            let v = vertices[0];
            return if self.has_arc(v, v) {
                ComponentKind::Cycle(1)
            } else {
                ComponentKind::TrivialAcyclic
            };
        }
        // Strongly connected with every in/out degree 1 inside is a single cycle.
        let simple = vertices.iter().all(|&v| {
            self.out[v].iter().filter(|w| inside(w)).count() == 1
                && self.inc[v].iter().filter(|w| inside(w)).count() == 1
        });
        if simple {
            ComponentKind::Cycle(vertices.len())
        } else {
            ComponentKind::NonCycle
        }
    }

    /// Iterative Tarjan; each component's vertices sorted ascending.
    fn tarjan(&self) -> Vec<Vec<usize>> {
        const UNSEEN: usize = usize::MAX;
        let n = self.n();
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut next_index = 0;
        let mut out = Vec::new();
        // (vertex, next neighbour position)
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            call.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if let Some(&w) = self.out[v].get(*pos) {
                    *pos += 1;
                    if index[w] == UNSEEN {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
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
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
        out
    }

    /// Exact number of directed walks of length `len` between every pair,
    /// by a per-source dynamic program over walk length.
    pub fn count_walks(&self, len: u64) -> Result<ExactMatrix> {
        let n = self.n();
        let mut result = ExactMatrix::zeros(n, n);
        for source in 0..n {
            let mut counts = vec![0u64; n];
            counts[source] = 1;
            for _ in 0..len {
                let mut next = vec![0u64; n];
                for (v, &c) in counts.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for &w in &self.out[v] {
                        next[w] = next[w].checked_add(c).ok_or(Error::Overflow)?;
                    }
                }
                counts = next;
            }
            for (j, &c) in counts.iter().enumerate() {
                result.set(source, j, c);
            }
        }
        Ok(result)
    }

    /// True iff some vertex of `from` reaches some vertex of `to` along a
    /// directed path of length at least 1.
    pub fn has_path(&self, from: &[usize], to: &[usize]) -> bool {
        let n = self.n();
        let mut target = vec![false; n];
        for &t in to {
            target[t] = true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &f in from {
            for &w in &self.out[f] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            if target[v] {
                return true;
            }
            for &w in &self.out[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

impl From<&Matrix01> for Digraph {
    fn from(a: &Matrix01) -> Self {
        Digraph::from_matrix(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(rows: &[&[u8]]) -> Digraph {
        Digraph::from_matrix(&Matrix01::from_rows(rows).unwrap())
    }

    #[test]
    fn scc_examples() {
        let r = Digraph::from_matrix(&Matrix01::cycle(3)).sccs();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].vertices, vec![0, 1, 2]);
        assert_eq!(r.components[0].kind, ComponentKind::Cycle(3));

        let r = d(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]).sccs();
        assert_eq!(r.components.len(), 3);
        assert!(r
            .components
            .iter()
            .all(|c| c.kind == ComponentKind::TrivialAcyclic && c.vertices.len() == 1));
        // sinks first
        let order: Vec<usize> = r.components.iter().map(|c| c.vertices[0]).collect();
        assert_eq!(order, vec![2, 1, 0]);

        let r = d(&[&[1, 1], &[1, 1]]).sccs();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].kind, ComponentKind::NonCycle);
    }

    #[test]
    fn self_loop_is_one_cycle() {
        let r = d(&[&[1]]).sccs();
        assert_eq!(r.components[0].kind, ComponentKind::Cycle(1));
        let r = d(&[&[0]]).sccs();
        assert_eq!(r.components[0].kind, ComponentKind::TrivialAcyclic);
    }

    #[test]
    fn chord_makes_component_non_cycle() {
        // 0->1->2->0 plus chord 0->2
        let r = d(&[&[0, 1, 1], &[0, 0, 1], &[1, 0, 0]]).sccs();
        assert_eq!(r.components[0].kind, ComponentKind::NonCycle);
    }

    #[test]
    fn order_ties_break_by_smallest_vertex() {
        // two isolated loops then an isolated vertex: all mutually incomparable
        let r = d(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]).sccs();
        let order: Vec<usize> = r.components.iter().map(|c| c.vertices[0]).collect();
        assert_eq!(order, vec![0, 1, 2]);
        assert_eq!(r.component_of, vec![0, 1, 2]);
    }

    #[test]
    fn walk_examples() {
        let g = d(&[&[0, 1, 0], &[1, 1, 0], &[0, 1, 1]]);
        let w1 = g.count_walks(1).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| w1.get(i, j) == g.has_arc(i, j) as u64)));

        let w = Digraph::from_matrix(&Matrix01::cycle(3))
            .count_walks(3)
            .unwrap();
        assert_eq!(w, ExactMatrix::identity(3));

        // two walks per pair: through vertex 0 or vertex 1
        let w = d(&[&[1, 1], &[1, 1]]).count_walks(2).unwrap();
        assert_eq!(w, ExactMatrix::from_fn(2, 2, |_, _| 2));
    }

    #[test]
    fn walk_overflow_is_an_error() {
        let g = Digraph::from_matrix(&Matrix01::all_ones(4));
        assert_eq!(g.count_walks(40), Err(Error::Overflow));
    }

    #[test]
    fn path_examples() {
        // C_2 ⊕ C_1
        let g = d(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(!g.has_path(&[0, 1], &[2]));
        assert!(d(&[&[0, 1], &[0, 0]]).has_path(&[0], &[1]));
        assert!(!g.has_path(&[], &[0, 1, 2]));
        // length >= 1: a vertex without a loop does not reach itself
        assert!(!d(&[&[0, 1], &[0, 0]]).has_path(&[0], &[0]));
        assert!(g.has_path(&[0], &[0]));
    }
}
