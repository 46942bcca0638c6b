//! Small union-find used for finite-set colimits (presheaf pushouts and
//! latching objects).  Class representatives are canonical: the minimum
//! element index of each class.

use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Union keeping the smaller index as root, so representatives are
    /// deterministic regardless of merge order.
    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
    }

    /// Representatives in ascending order plus, for each element, the
    /// position of its class in that list.
    pub fn classes(&mut self) -> (Vec<usize>, Vec<usize>) {
        let n = self.len();
        let mut reps = Vec::new();
        let mut class_of = alloc::vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            if r == x {
                class_of[x] = reps.len();
                reps.push(x);
            }
        }
        for x in 0..n {
            let r = self.find(x);
            class_of[x] = class_of[r];
        }
        (reps, class_of)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives_are_minimal() {
        let mut uf = UnionFind::new(6);
        uf.union(4, 2);
        uf.union(2, 5);
        uf.union(0, 1);
        let (reps, class_of) = uf.classes();
        assert_eq!(reps, alloc::vec![0, 2, 3]);
        assert_eq!(class_of[4], 1);
        assert_eq!(class_of[5], 1);
        assert_eq!(class_of[1], 0);
        assert_eq!(class_of[3], 2);
    }
}
