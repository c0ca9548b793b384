//! Finitely generated abelian grading groups `Z_{q1} x ... x Z_{qk} x Z^r`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("cannot parse group `{0}`")]
    BadGroup(String),
    #[error("cannot parse group element `{0}`")]
    BadElement(String),
    #[error("element has {got} coordinates, group has {want}")]
    Arity { got: usize, want: usize },
}

/// Cyclic factors; an order of `0` stands for an infinite cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Group {
    orders: Vec<u64>,
}

/// Coordinates of an element, already reduced modulo the finite orders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Vec<i64>);

impl Group {
    pub fn trivial() -> Self {
        Group { orders: Vec::new() }
    }

    /// `Z_q`; `q = 0` gives `Z`.
    pub fn cyclic(q: u64) -> Self {
        Group { orders: alloc::vec![q] }
    }

    pub fn integers() -> Self {
        Self::cyclic(0)
    }

    pub fn product(orders: &[u64]) -> Self {
        Group { orders: orders.iter().copied().filter(|&o| o != 1).collect() }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// The order of the single cyclic factor, if the group is cyclic and nontrivial.
    pub fn cyclic_order(&self) -> Option<u64> {
        match self.orders.as_slice() {
            [q] => Some(*q),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(alloc::vec![0; self.orders.len()])
    }

    pub fn elem(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.orders.len() {
            return Err(GroupError::Arity { got: coords.len(), want: self.orders.len() });
        }
        Ok(self.normalize(GroupElement(coords.to_vec())))
    }

    /// Element of a cyclic group from an integer; panics on non-cyclic groups.
    pub fn of(&self, k: i64) -> GroupElement {
        assert_eq!(self.rank(), 1, "Group::of needs a cyclic group");
        self.normalize(GroupElement(alloc::vec![k]))
    }

    fn normalize(&self, mut g: GroupElement) -> GroupElement {
        for (c, &o) in g.0.iter_mut().zip(&self.orders) {
            if o != 0 {
                *c = c.rem_euclid(o as i64);
            }
        }
        g
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len()
            && g.0.iter().zip(&self.orders).all(|(&c, &o)| o == 0 || (0..o as i64).contains(&c))
    }

    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.normalize(GroupElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        self.normalize(GroupElement(a.0.iter().map(|x| -x).collect()))
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items.into_iter().fold(self.identity(), |acc, g| self.op(&acc, g))
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        self.normalize(GroupElement(a.0.iter().map(|x| x * k).collect()))
    }

    pub fn parse_elem(&self, s: &str) -> Result<GroupElement, GroupError> {
        let t = s.trim();
        let bad = || GroupError::BadElement(t.to_string());
        let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
        if inner.trim().is_empty() || inner.trim() == "e" {
            return self.elem(&[]);
        }
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        self.elem(&coords)
    }
}

impl GroupElement {
    /// Raw coordinates; callers must already have reduced them.
    pub fn from_coords(coords: &[i64]) -> Self {
        GroupElement(coords.to_vec())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .orders
            .iter()
            .map(|&o| if o == 0 { "Z".to_string() } else { alloc::format!("Z{o}") })
            .collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for Group {
    type Err = GroupError;

    /// `1`, `Z`, `Z3`, `Z2xZ2`, `ZxZ`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "1" {
            return Ok(Group::trivial());
        }
        let mut orders = Vec::new();
        for part in t.split('x') {
            let part = part.trim();
            let rest = part.strip_prefix('Z').ok_or_else(|| GroupError::BadGroup(t.to_string()))?;
            if rest.is_empty() {
                orders.push(0);
            } else {
                let q: u64 = rest.parse().map_err(|_| GroupError::BadGroup(t.to_string()))?;
                if q == 0 {
                    return Err(GroupError::BadGroup(t.to_string()));
                }
                orders.push(q);
            }
        }
        Ok(Group::product(&orders))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [] => f.write_str("e"),
            [x] => write!(f, "{x}"),
            xs => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_arithmetic() {
        let z3 = Group::cyclic(3);
        let a = z3.of(2);
        assert_eq!(z3.op(&a, &a), z3.of(1));
        assert!(z3.op(&a, &z3.of(1)).is_identity());
        assert_eq!(z3.inverse(&a), z3.of(1));
        assert!(z3.contains(&z3.of(-1)));
    }

    #[test]
    fn mixed_group() {
        let g: Group = "Z2xZ".parse().unwrap();
        let a = g.elem(&[1, 5]).unwrap();
        let b = g.elem(&[1, -5]).unwrap();
        assert!(g.op(&a, &b).is_identity());
        assert_eq!(a.to_string(), "(1,5)");
        assert_eq!(g.to_string(), "Z2xZ");
        assert_eq!(g.parse_elem("(3, 2)").unwrap(), g.elem(&[1, 2]).unwrap());
        assert!(g.elem(&[1]).is_err());
    }

    #[test]
    fn trivial_group() {
        let t: Group = "1".parse().unwrap();
        assert!(t.is_trivial());
        assert!(t.identity().is_identity());
        assert_eq!(Group::product(&[1, 1]), Group::trivial());
        assert!("Z0".parse::<Group>().is_err());
    }
}
