use std::fmt;

use crate::GroupTerm;

/// Runs of equal adjacent factors as `(factor, count)`.
fn runs(fs: &[GroupTerm]) -> Vec<(&GroupTerm, usize)> {
    let mut out: Vec<(&GroupTerm, usize)> = Vec::new();
    for f in fs {
        match out.last_mut() {
            Some((g, c)) if *g == f => *c += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}

/// Text of `t` safe to follow with `^k` or to use as a wreath base.
fn atom(t: &GroupTerm) -> String {
    match t {
        GroupTerm::Wreath { .. } => format!("({t})"),
        GroupTerm::Direct { fs } if runs(fs).len() == 1 => format!("({t})"),
        _ => t.to_string(),
    }
}

fn power(t: &GroupTerm, k: u64) -> String {
    if k == 1 {
        t.to_string()
    } else {
        format!("{}^{k}", atom(t))
    }
}

impl fmt::Display for GroupTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTerm::Trivial => write!(f, "1"),
            GroupTerm::Sym { k } => write!(f, "S{k}"),
            GroupTerm::Cyc { k } => write!(f, "Z{k}"),
            GroupTerm::Dih { k } => write!(f, "D{k}"),
            GroupTerm::Direct { fs } => {
                let parts: Vec<String> = runs(fs).into_iter().map(|(t, c)| power(t, c as u64)).collect();
                if parts.len() == 1 {
                    write!(f, "{}", parts[0])
                } else {
                    write!(f, "({})", parts.join(" × "))
                }
            }
            GroupTerm::Wreath { base, top } => write!(f, "{} ≀ {}", atom(base), top),
            GroupTerm::Semidirect { orbits, top } => {
                let parts: Vec<String> = orbits.iter().map(|o| power(&o.f, o.m)).collect();
                let inner = if parts.len() == 1 { parts[0].clone() } else { format!("({})", parts.join(" × ")) };
                write!(f, "({inner} ⋊ {top})")
            }
        }
    }
}
