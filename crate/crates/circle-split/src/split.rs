use graph_core::Graph;

use crate::CircleError;

/// `a` and `b` are completely joined; `a_rest` and `b_rest` see nothing across.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub a_rest: Vec<usize>,
    pub b_rest: Vec<usize>,
}

impl Split {
    pub fn side_one(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.a.iter().chain(&self.a_rest).copied().collect();
        s.sort_unstable();
        s
    }

    pub fn side_two(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.b.iter().chain(&self.b_rest).copied().collect();
        s.sort_unstable();
        s
    }

    /// Checks the split conditions against `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let one = self.side_one();
        let two = self.side_two();
        if one.len() < 2 || two.len() < 2 || one.len() + two.len() != g.n() {
            return false;
        }
        let in_a = |v: &usize| self.a.contains(v);
        let in_b = |v: &usize| self.b.contains(v);
        one.iter().all(|u| two.iter().all(|v| g.has_edge(*u, *v) == (in_a(u) && in_b(v))))
    }
}

/// Smallest side containing `seeds` for a split in which `a` is joined to
/// `b`, or `None` if the closure swallows `b`.
fn closure(g: &Graph, a: usize, b: usize, seeds: &[usize]) -> Option<Vec<bool>> {
    let n = g.n();
    let mut inside = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    for &s in seeds {
        if !inside[s] {
            inside[s] = true;
            stack.push(s);
        }
    }
    let a_nb: Vec<bool> = (0..n).map(|v| g.has_edge(a, v)).collect();
    while let Some(u) = stack.pop() {
        // Members joined to b must see exactly a's outside neighbours; others see none.
        let forced: Vec<usize> = if g.has_edge(u, b) {
            (0..n).filter(|&v| v != u && v != a && g.has_edge(u, v) != a_nb[v]).collect()
        } else {
            g.neighbors(u).to_vec()
        };
        for v in forced {
            if v == b {
                return None;
            }
            if !inside[v] {
                inside[v] = true;
                stack.push(v);
            }
        }
    }
    Some(inside)
}

/// Finds a split, trying each ordered edge `(a, b)` across and each second
/// vertex on `a`'s side. Returns `None` for graphs without splits.
pub fn find_split(g: &Graph) -> Result<Option<Split>, CircleError> {
    if !g.is_connected() {
        return Err(CircleError::Disconnected);
    }
    let n = g.n();
    if n < 4 {
        return Ok(None);
    }
    for a in 0..n {
        for &b in g.neighbors(a) {
            for x in 0..n {
                if x == a || x == b {
                    continue;
                }
                let Some(inside) = closure(g, a, b, &[a, x]) else { continue };
                if inside.iter().filter(|&&i| !i).count() < 2 {
                    continue;
                }
                let (mut split_a, mut a_rest, mut split_b, mut b_rest) = (vec![], vec![], vec![], vec![]);
                for v in 0..n {
                    let across = g.neighbors(v).iter().any(|&u| inside[u] != inside[v]);
                    match (inside[v], across) {
                        (true, true) => split_a.push(v),
                        (true, false) => a_rest.push(v),
                        (false, true) => split_b.push(v),
                        (false, false) => b_rest.push(v),
                    }
                }
                return Ok(Some(Split { a: split_a, b: split_b, a_rest, b_rest }));
            }
        }
    }
    Ok(None)
}
