//! Block systems of transitive groups.

use super::group::PermGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// A nontrivial block system; blocks are sorted, the first contains 0.
    Imprimitive(Vec<Vec<u32>>),
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> Option<(u32, u32)> {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return None;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        Some((a, b))
    }
}

/// Finest block system in which all points of `seed` share a block.
pub fn block_system_joining(degree: usize, gens: &[Perm], seed: &[u32]) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::new(degree);
    let mut queue: Vec<(u32, u32)> = Vec::new();
    for &x in seed.iter().skip(1) {
        if let Some(pair) = uf.union(seed[0], x) {
            queue.push(pair);
        }
    }
    while let Some((a, b)) = queue.pop() {
        for g in gens {
            if let Some(pair) = uf.union(g.apply(a), g.apply(b)) {
                queue.push(pair);
            }
        }
    }
    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut slot = vec![usize::MAX; degree];
    for x in 0..degree as u32 {
        let r = uf.find(x) as usize;
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(x);
    }
    classes
}

/// Primitivity test. When imprimitive, the returned system has a block
/// containing 0 that is maximal among proper blocks, so the system is as
/// coarse as possible.
pub fn is_primitive(g: &PermGroup) -> Result<Primitivity> {
    let n = g.degree();
    if !g.is_transitive() {
        return Err(Error::Precondition("group is not transitive".into()));
    }
    if n <= 2 {
        return Ok(Primitivity::Primitive);
    }
    let mut block: Option<Vec<u32>> = None;
    for x in 1..n as u32 {
        let sys = block_system_joining(n, g.gens(), &[0, x]);
        if sys.len() > 1 {
            block = Some(sys[0].clone());
            break;
        }
    }
    let Some(mut b) = block else {
        return Ok(Primitivity::Primitive);
    };
    loop {
        let mut grown = false;
        let mut in_b = vec![false; n];
        for &x in &b {
            in_b[x as usize] = true;
        }
        for y in 0..n as u32 {
            if in_b[y as usize] {
                continue;
            }
            let mut seed = b.clone();
            seed.push(y);
            let sys = block_system_joining(n, g.gens(), &seed);
            if sys.len() > 1 {
                b = sys[0].clone();
                grown = true;
                break;
            }
        }
        if !grown {
            break;
        }
    }
    let sys = block_system_joining(n, g.gens(), &b);
    Ok(Primitivity::Imprimitive(sys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::coset_action;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse(s, n).unwrap()
    }

    #[test]
    fn natural_a5_is_primitive() {
        let a5 = PermGroup::new(5, vec![p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)]);
        assert_eq!(is_primitive(&a5).unwrap(), Primitivity::Primitive);
    }

    #[test]
    fn s4_on_cosets_of_c4() {
        let s4 = PermGroup::new(4, vec![p("(1,2)", 4), p("(1,2,3,4)", 4)]);
        let c4 = s4.subgroup(vec![p("(1,2,3,4)", 4)]);
        let act = coset_action(&s4, &c4).unwrap();
        let img = act.image_group(1);
        match is_primitive(&img).unwrap() {
            Primitivity::Imprimitive(sys) => {
                assert!(sys.iter().all(|b| b.len() == 2));
                assert_eq!(sys.len(), 3);
            }
            other => panic!("expected blocks, got {other:?}"),
        }
    }

    #[test]
    fn intransitive_is_rejected() {
        let g = PermGroup::new(4, vec![p("(1,2)", 4)]);
        assert!(is_primitive(&g).is_err());
    }
}
