//! Dedekind–MacNeille completion of finite posets.
//!
//! The completion consists of the cuts `A = lower(upper(A))`, ordered by
//! inclusion, with `φ(x) = ↓x` as the embedding. For a finite poset the cuts
//! are exactly the intersections of principal down-sets together with the
//! whole carrier, which is how they are enumerated here.

use std::collections::BTreeSet;

use rand::Rng;
use thiserror::Error;

use super::FiniteResiduatedLattice;

/// A finite partial order over named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<bool>,
}

/// A relation that is not a partial order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("`{0}` and `{1}` are mutually below each other")]
    NotAntisymmetric(String, String),
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of the given pairs.
    pub fn new(names: Vec<String>, pairs: &[(String, String)]) -> Result<Self, PosetError> {
        let n = names.len();
        let id = |s: &str| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| PosetError::UnknownElement(s.into()))
        };
        let mut leq = vec![false; n * n];
        for (a, b) in pairs {
            let (a, b) = (id(a)?, id(b)?);
            leq[a * n + b] = true;
        }
        Self::from_matrix(names, leq)
    }

    /// Builds from an `n × n` relation matrix, closing it reflexively and transitively.
    pub fn from_matrix(names: Vec<String>, mut leq: Vec<bool>) -> Result<Self, PosetError> {
        let n = names.len();
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(PosetError::NotAntisymmetric(
                        names[a].clone(),
                        names[b].clone(),
                    ));
                }
            }
        }
        Ok(FinitePoset { names, leq })
    }

    /// The order part of a lattice.
    pub fn of_lattice(l: &FiniteResiduatedLattice) -> Self {
        let n = l.size();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = l.leq(a, b);
            }
        }
        FinitePoset {
            names: l.element_names().to_vec(),
            leq,
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.names.len() + b]
    }

    /// Least upper bound of a set, if one exists.
    pub fn join_of(&self, set: &[usize]) -> Option<usize> {
        let ups: Vec<usize> = (0..self.size())
            .filter(|&u| set.iter().all(|&x| self.leq(x, u)))
            .collect();
        ups.iter()
            .copied()
            .find(|&m| ups.iter().all(|&u| self.leq(m, u)))
    }

    /// Greatest lower bound of a set, if one exists.
    pub fn meet_of(&self, set: &[usize]) -> Option<usize> {
        let lows: Vec<usize> = (0..self.size())
            .filter(|&u| set.iter().all(|&x| self.leq(u, x)))
            .collect();
        lows.iter()
            .copied()
            .find(|&m| lows.iter().all(|&u| self.leq(u, m)))
    }

    /// True when every pair (hence every subset, by finiteness and the
    /// presence of the empty meet and join) has a meet and a join.
    pub fn is_lattice(&self) -> bool {
        let n = self.size();
        if self.join_of(&[]).is_none() || self.meet_of(&[]).is_none() {
            return false;
        }
        (0..n).all(|a| {
            (0..n).all(|b| self.join_of(&[a, b]).is_some() && self.meet_of(&[a, b]).is_some())
        })
    }
}

/// The completion together with its embedding.
#[derive(Debug, Clone)]
pub struct Completion {
    /// Each cut as a membership vector over the source poset.
    pub cuts: Vec<Vec<bool>>,
    /// Inclusion order of the cuts.
    pub order: FinitePoset,
    /// `embedding[x]` is the index of the cut `↓x`.
    pub embedding: Vec<usize>,
}

impl Completion {
    pub fn size(&self) -> usize {
        self.cuts.len()
    }

    /// `φ` preserves and reflects the order.
    pub fn embedding_is_order_embedding(&self, p: &FinitePoset) -> bool {
        (0..p.size()).all(|a| {
            (0..p.size())
                .all(|b| p.leq(a, b) == self.order.leq(self.embedding[a], self.embedding[b]))
        })
    }

    /// Every element is the join of the embedded elements below it.
    pub fn join_dense(&self) -> bool {
        (0..self.size()).all(|c| {
            let below: Vec<usize> = self
                .embedding
                .iter()
                .copied()
                .filter(|&e| self.order.leq(e, c))
                .collect();
            self.order.join_of(&below) == Some(c)
        })
    }

    /// Every element is the meet of the embedded elements above it.
    pub fn meet_dense(&self) -> bool {
        (0..self.size()).all(|c| {
            let above: Vec<usize> = self
                .embedding
                .iter()
                .copied()
                .filter(|&e| self.order.leq(c, e))
                .collect();
            self.order.meet_of(&above) == Some(c)
        })
    }
}

fn cut_name(p: &FinitePoset, cut: &[bool]) -> String {
    let members: Vec<&str> = (0..p.size())
        .filter(|&i| cut[i])
        .map(|i| p.names[i].as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// The Dedekind–MacNeille completion of `p`.
pub fn dm_completion(p: &FinitePoset) -> Completion {
    let n = p.size();
    let principal: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| p.leq(y, x)).collect())
        .collect();
    let mut cuts: BTreeSet<Vec<bool>> = BTreeSet::new();
    cuts.insert(vec![true; n]);
    let mut frontier: Vec<Vec<bool>> = vec![vec![true; n]];
    while let Some(c) = frontier.pop() {
        for d in &principal {
            let meet: Vec<bool> = c.iter().zip(d).map(|(a, b)| *a && *b).collect();
            if cuts.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    let mut cuts: Vec<Vec<bool>> = cuts.into_iter().collect();
    cuts.sort_by_key(|c| (c.iter().filter(|b| **b).count(), c.clone()));
    let m = cuts.len();
    let mut leq = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            leq[i * m + j] = cuts[i].iter().zip(&cuts[j]).all(|(a, b)| !*a || *b);
        }
    }
    let names: Vec<String> = cuts.iter().map(|c| cut_name(p, c)).collect();
    let order = FinitePoset { names, leq };
    let embedding = principal
        .iter()
        .map(|d| {
            cuts.iter()
                .position(|c| c == d)
                .expect("principal ideal is a cut")
        })
        .collect();
    Completion {
        cuts,
        order,
        embedding,
    }
}

/// Backtracking search for an order isomorphism.
pub fn order_isomorphic(a: &FinitePoset, b: &FinitePoset) -> bool {
    let n = a.size();
    if n != b.size() {
        return false;
    }
    let sig = |p: &FinitePoset, x: usize| {
        let down = (0..p.size()).filter(|&y| p.leq(y, x)).count();
        let up = (0..p.size()).filter(|&y| p.leq(x, y)).count();
        (down, up)
    };
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        a: &FinitePoset,
        b: &FinitePoset,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        sig: &dyn Fn(&FinitePoset, usize) -> (usize, usize),
    ) -> bool {
        if i == a.size() {
            return true;
        }
        for y in 0..b.size() {
            if used[y] || sig(a, i) != sig(b, y) {
                continue;
            }
            let consistent =
                (0..i).all(|k| a.leq(k, i) == b.leq(map[k], y) && a.leq(i, k) == b.leq(y, map[k]));
            if consistent {
                map[i] = y;
                used[y] = true;
                if go(i + 1, a, b, map, used, sig) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
    go(0, a, b, &mut map, &mut used, &sig)
}

/// A random poset on `n` elements: each pair `i < j` is related with
/// probability `density`, then the transitive closure is taken.
pub fn random_poset<R: Rng>(n: usize, density: f64, rng: &mut R) -> FinitePoset {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                leq[i * n + j] = true;
            }
        }
    }
    FinitePoset::from_matrix(names, leq).expect("upper-triangular relations are antisymmetric")
}

#[cfg(test)]
mod tests {
    use super::super::{make_builtin, Family};
    use super::*;

    fn antichain(n: usize) -> FinitePoset {
        FinitePoset::new((0..n).map(|i| format!("x{i}")).collect(), &[]).unwrap()
    }

    #[test]
    fn two_antichain_gains_bottom_and_top() {
        let p = antichain(2);
        let c = dm_completion(&p);
        assert_eq!(c.size(), 4);
        assert!(c.order.is_lattice());
        assert!(c.embedding_is_order_embedding(&p));
        assert!(c.join_dense() && c.meet_dense());
    }

    #[test]
    fn chain_is_already_complete() {
        let names: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let p =
            FinitePoset::new(names, &[("a".into(), "b".into()), ("b".into(), "c".into())]).unwrap();
        let c = dm_completion(&p);
        assert!(order_isomorphic(&c.order, &p));
    }

    #[test]
    fn lattice_completes_to_itself() {
        let l = make_builtin(Family::Boolean, 3).unwrap();
        let p = FinitePoset::of_lattice(&l);
        assert!(order_isomorphic(&dm_completion(&p).order, &p));
    }

    #[test]
    fn cycles_are_rejected() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let r = FinitePoset::new(names, &[("a".into(), "b".into()), ("b".into(), "a".into())]);
        assert!(matches!(r, Err(PosetError::NotAntisymmetric(..))));
    }
}
