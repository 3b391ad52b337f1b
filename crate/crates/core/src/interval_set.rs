//! Finite unions of rational intervals with open or closed ends.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::rational::{self, Q};

/// One interval; degenerate `[a,a]` is a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational::serde_q")]
    pub lo: Q,
    #[serde(with = "rational::serde_q")]
    pub hi: Q,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: Q, hi: Q) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: Q, hi: Q) -> Self {
        Interval { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn point(x: Q) -> Self {
        Interval::closed(x.clone(), x)
    }

    pub fn new(lo: Q, hi: Q, lo_closed: bool, hi_closed: bool) -> Self {
        Interval { lo, hi, lo_closed, hi_closed }
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Less => false,
        }
    }

    pub fn contains(&self, x: &Q) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval { lo, hi, lo_closed, hi_closed }
    }

    /// A point strictly inside when the interval has positive length, else the point itself.
    pub fn representative(&self) -> Q {
        if self.lo == self.hi {
            self.lo.clone()
        } else {
            (&self.lo + &self.hi) * rational::half()
        }
    }
}

/// Normalized union: sorted, pairwise disjoint and non-touching, no empty members.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_interval(iv: Interval) -> Self {
        Self::from_parts(vec![iv])
    }

    pub fn from_parts(parts: Vec<Interval>) -> Self {
        let mut parts: Vec<Interval> = parts.into_iter().filter(|p| !p.is_empty()).collect();
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(last) = out.last_mut() {
                let joins = match p.lo.cmp(&last.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => p.lo_closed || last.hi_closed,
                    Ordering::Greater => false,
                };
                if joins {
                    match p.hi.cmp(&last.hi) {
                        Ordering::Greater => {
                            last.hi = p.hi;
                            last.hi_closed = p.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= p.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(p);
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.parts.clone();
        all.extend(other.parts.iter().cloned());
        IntervalSet::from_parts(all)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                let c = a.intersect(b);
                if !c.is_empty() {
                    out.push(c);
                }
            }
        }
        IntervalSet::from_parts(out)
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        &self.intersection(other) == self
    }

    pub fn closure(&self) -> IntervalSet {
        IntervalSet::from_parts(
            self.parts
                .iter()
                .map(|p| Interval::closed(p.lo.clone(), p.hi.clone()))
                .collect(),
        )
    }

    pub fn is_closed(&self) -> bool {
        self.parts.iter().all(|p| p.lo_closed && p.hi_closed)
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        self.parts.len()
    }

    pub fn min(&self) -> Option<&Q> {
        self.parts.first().map(|p| &p.lo)
    }

    pub fn max(&self) -> Option<&Q> {
        self.parts.last().map(|p| &p.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn merges_touching_parts() {
        let s = IntervalSet::from_parts(vec![
            Interval::new(int(0), int(1), true, false),
            Interval::new(int(1), int(2), true, true),
            Interval::open(int(3), int(4)),
        ]);
        assert_eq!(s.components(), 2);
        assert!(s.contains(&int(1)));
        assert!(!s.contains(&int(3)));
    }

    #[test]
    fn open_ends_do_not_join() {
        let s = IntervalSet::from_parts(vec![
            Interval::open(int(0), int(1)),
            Interval::open(int(1), int(2)),
        ]);
        assert_eq!(s.components(), 2);
        assert_eq!(s.closure().components(), 1);
    }

    #[test]
    fn intersection_and_subset() {
        let a = IntervalSet::from_interval(Interval::closed(int(0), int(2)));
        let b = IntervalSet::from_interval(Interval::open(int(1), int(3)));
        let c = a.intersection(&b);
        assert_eq!(c.parts(), &[Interval::new(int(1), int(2), false, true)]);
        assert!(c.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(c.contains(&ratio(3, 2)));
    }
}
