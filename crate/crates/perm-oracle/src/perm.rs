//! Permutations as image vectors: `p[x]` is the image of `x`.

/// A bijection on `0..n`, stored as its image vector.
pub type Permutation = Vec<usize>;

pub fn identity(n: usize) -> Permutation {
    (0..n).collect()
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// `(a ∘ b)(x) = a(b(x))`: apply `b` first.
pub fn compose(a: &[usize], b: &[usize]) -> Permutation {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &[usize]) -> Permutation {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
    let mut p = identity(n);
    p.swap(a, b);
    p
}

/// Disjoint cycles of length at least two, each starting at its least point.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut c = vec![s];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            seen[x] = true;
            c.push(x);
            x = p[x];
        }
        out.push(c);
    }
    out
}

/// Order of `p` as a group element: the lcm of its cycle lengths.
pub fn element_order(p: &[usize]) -> u64 {
    cycles(p).iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Builds a permutation of degree `n` from cycles, e.g. `&[&[0, 1, 2, 3]]`.
pub fn from_cycles(n: usize, cs: &[&[usize]]) -> Permutation {
    let mut p = identity(n);
    for c in cs {
        for i in 0..c.len() {
            p[c[i]] = c[(i + 1) % c.len()];
        }
    }
    p
}
