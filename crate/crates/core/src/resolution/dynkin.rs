//! Recognition of Dynkin and extended Dynkin diagrams from intersection data.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{ResolutionError, ResolutionReport};

/// Configuration type of a set of curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DynkinLabel {
    A(usize),
    D(usize),
    E(usize),
    /// Cycle of `n + 1` curves; for `n = 1`, two curves meeting transversally twice.
    AffineA(usize),
    /// Two curves meeting at a single point with intersection number 2.
    AffineA1Star,
    AffineD(usize),
    AffineE(usize),
    Unrecognized,
}

impl DynkinLabel {
    /// Kodaira symbol of a fibre with this configuration, for extended diagrams.
    pub fn kodaira(&self) -> Option<String> {
        Some(match self {
            DynkinLabel::AffineA(n) => format!("I{}", n + 1),
            DynkinLabel::AffineA1Star => "III".into(),
            DynkinLabel::AffineD(n) => format!("I{}*", n - 4),
            DynkinLabel::AffineE(6) => "IV*".into(),
            DynkinLabel::AffineE(7) => "III*".into(),
            DynkinLabel::AffineE(8) => "II*".into(),
            _ => return None,
        })
    }
}

impl fmt::Display for DynkinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinLabel::A(n) => write!(f, "A{n}"),
            DynkinLabel::D(n) => write!(f, "D{n}"),
            DynkinLabel::E(n) => write!(f, "E{n}"),
            DynkinLabel::AffineA(n) => write!(f, "Ã{n}"),
            DynkinLabel::AffineA1Star => write!(f, "Ã1*"),
            DynkinLabel::AffineD(n) => write!(f, "D̃{n}"),
            DynkinLabel::AffineE(n) => write!(f, "Ẽ{n}"),
            DynkinLabel::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

impl Serialize for DynkinLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Lengths of the paths leaving `center`, in nodes.
fn arms(adj: &[Vec<usize>], center: usize) -> Vec<usize> {
    let mut out: Vec<usize> = adj[center]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            while let Some(&next) = adj[cur].iter().find(|&&n| n != prev) {
                if adj[cur].len() != 2 {
                    break;
                }
                (prev, cur, len) = (cur, next, len + 1);
            }
            len
        })
        .collect();
    out.sort_unstable();
    out
}

fn connected(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Matches the configuration of the named curves against the ADE diagrams
/// and their extensions. All curves must be `(-2)`-curves.
pub fn dynkin_type(r: &ResolutionReport, names: &[&str]) -> Result<DynkinLabel, ResolutionError> {
    let m = r.intersection_matrix(names)?;
    let n = names.len();
    if n == 0 || (0..n).any(|i| m[i][i] != -2) {
        return Ok(DynkinLabel::Unrecognized);
    }
    if n == 2 && m[0][1] == 2 {
        return Ok(match r.meeting_points(names[0], names[1])? {
            1 => DynkinLabel::AffineA1Star,
            2 => DynkinLabel::AffineA(1),
            _ => DynkinLabel::Unrecognized,
        });
    }
    let mut adj = vec![Vec::new(); n];
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            match m[i][j] {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                    edges += 1;
                }
                _ => return Ok(DynkinLabel::Unrecognized),
            }
        }
    }
    if !connected(&adj) {
        return Ok(DynkinLabel::Unrecognized);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() > 2).collect();
    if edges == n {
        let cycle = adj.iter().all(|a| a.len() == 2);
        return Ok(if cycle && n >= 3 { DynkinLabel::AffineA(n - 1) } else { DynkinLabel::Unrecognized });
    }
    if edges != n - 1 {
        return Ok(DynkinLabel::Unrecognized);
    }
    Ok(match branch.as_slice() {
        [] => DynkinLabel::A(n),
        [c] => match arms(&adj, *c).as_slice() {
            [1, 1, k] => DynkinLabel::D(k + 3),
            [1, 2, 2] => DynkinLabel::E(6),
            [1, 2, 3] => DynkinLabel::E(7),
            [1, 2, 4] => DynkinLabel::E(8),
            [2, 2, 2] => DynkinLabel::AffineE(6),
            [1, 3, 3] => DynkinLabel::AffineE(7),
            [1, 2, 5] => DynkinLabel::AffineE(8),
            [1, 1, 1, 1] => DynkinLabel::AffineD(4),
            _ => DynkinLabel::Unrecognized,
        },
        [a, b] if adj[*a].len() == 3 && adj[*b].len() == 3 => {
            let short = |v: usize| arms(&adj, v).iter().filter(|&&l| l == 1).count();
            if short(*a) >= 2 && short(*b) >= 2 {
                DynkinLabel::AffineD(n - 1)
            } else {
                DynkinLabel::Unrecognized
            }
        }
        _ => DynkinLabel::Unrecognized,
    })
}
