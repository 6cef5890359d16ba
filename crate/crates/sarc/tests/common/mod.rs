//! Brute-force group arithmetic shared by the oracle tests. Nothing here
//! goes through the library's subgroup or stabiliser-chain code beyond
//! listing the elements once.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use sarc::permgroup::{Perm, PermGroup};

pub type Set = Vec<u64>;

pub fn set_has(s: &Set, i: u32) -> bool {
    s[i as usize / 64] >> (i % 64) & 1 == 1
}

pub fn set_add(s: &mut Set, i: u32) {
    s[i as usize / 64] |= 1 << (i % 64);
}

pub fn set_len(s: &Set) -> usize {
    s.iter().map(|w| w.count_ones() as usize).sum()
}

pub fn set_meet(a: &Set, b: &Set) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

pub fn set_members(s: &Set) -> Vec<u32> {
    (0..s.len() as u32 * 64).filter(|&i| set_has(s, i)).collect()
}

/// Full multiplication table of a small group.
pub struct Table {
    pub elems: Vec<Perm>,
    pub mul: Vec<u32>,
    pub inv: Vec<u32>,
    pub index: HashMap<Vec<u32>, u32>,
    pub n: usize,
}

impl Table {
    pub fn new(g: &PermGroup) -> Table {
        let elems = g.elements();
        let n = elems.len();
        let index: HashMap<Vec<u32>, u32> =
            elems.iter().enumerate().map(|(i, p)| (p.images().to_vec(), i as u32)).collect();
        assert_eq!(index.len(), n, "duplicate elements");
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[elems[a].mul(&elems[b]).images()];
            }
        }
        let inv = elems.iter().map(|p| index[p.inv().images()]).collect();
        Table { elems, mul, inv, index, n }
    }

    /// The elements of a subgroup given by generators.
    pub fn set_of(&self, h: &PermGroup) -> Set {
        let gens: Vec<u32> = h.gens().iter().map(|p| self.index[p.images()]).collect();
        self.closure(&gens)
    }

    pub fn m(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    pub fn identity(&self) -> u32 {
        (0..self.n as u32).find(|&i| self.elems[i as usize].is_identity()).unwrap()
    }

    pub fn empty(&self) -> Set {
        vec![0; self.n.div_ceil(64)]
    }

    pub fn elem_order(&self, a: u32) -> usize {
        let e = self.identity();
        let (mut x, mut k) = (a, 1);
        while x != e {
            x = self.m(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, by breadth-first right multiplication.
    pub fn closure(&self, gens: &[u32]) -> Set {
        let mut s = self.empty();
        let e = self.identity();
        set_add(&mut s, e);
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.m(x, g);
                if !set_has(&s, y) {
                    set_add(&mut s, y);
                    queue.push_back(y);
                }
            }
        }
        s
    }

    pub fn conjugate(&self, s: &Set, g: u32) -> Set {
        let gi = self.inv[g as usize];
        let mut out = self.empty();
        for x in set_members(s) {
            set_add(&mut out, self.m(self.m(gi, x), g));
        }
        out
    }

    /// Every conjugate of `s`, without repeats.
    pub fn conjugates(&self, s: &Set) -> Vec<Set> {
        let mut seen = HashSet::new();
        (0..self.n as u32).map(|g| self.conjugate(s, g)).filter(|c| seen.insert(c.clone())).collect()
    }

    /// Every subgroup: closures of all subsets of size at most 2, then
    /// joins with single elements until nothing new appears.
    pub fn all_subgroups(&self) -> HashSet<Set> {
        let n = self.n as u32;
        let mut found: HashSet<Set> = HashSet::new();
        for a in 0..n {
            for b in a..n {
                found.insert(self.closure(&[a, b]));
            }
        }
        let mut frontier: Vec<Set> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                let mut gens = set_members(h);
                for x in 0..n {
                    if set_has(h, x) {
                        continue;
                    }
                    gens.push(x);
                    let k = self.closure(&gens);
                    gens.pop();
                    if found.insert(k.clone()) {
                        next.push(k);
                    }
                }
            }
            frontier = next;
        }
        found
    }

    /// A generating set of the subgroup `s` of smallest size found greedily
    /// over element pairs and triples, else all elements.
    fn small_generators(&self, s: &Set) -> Vec<u32> {
        let mem = set_members(s);
        let target = mem.len();
        for &a in &mem {
            if set_len(&self.closure(&[a])) == target {
                return vec![a];
            }
        }
        for (i, &a) in mem.iter().enumerate() {
            for &b in &mem[i + 1..] {
                if set_len(&self.closure(&[a, b])) == target {
                    return vec![a, b];
                }
            }
        }
        for (i, &a) in mem.iter().enumerate() {
            for (j, &b) in mem.iter().enumerate().skip(i + 1) {
                for &c in &mem[j + 1..] {
                    if set_len(&self.closure(&[a, b, c])) == target {
                        return vec![a, b, c];
                    }
                }
            }
        }
        mem
    }

    /// Whether gens ↦ imgs extends to an isomorphism from ⟨gens⟩ onto a
    /// group of the same order.
    fn extends(&self, gens: &[u32], imgs: &[u32], order: usize) -> bool {
        let e = self.identity();
        let mut map: HashMap<u32, u32> = HashMap::from([(e, e)]);
        let mut used: HashSet<u32> = HashSet::from([e]);
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            let fx = map[&x];
            for (&g, &h) in gens.iter().zip(imgs) {
                let y = self.m(x, g);
                let fy = self.m(fx, h);
                match map.get(&y) {
                    Some(&z) if z != fy => return false,
                    Some(_) => {}
                    None => {
                        if !used.insert(fy) {
                            return false;
                        }
                        map.insert(y, fy);
                        queue.push_back(y);
                    }
                }
            }
        }
        map.len() == order
    }

    /// Brute-force isomorphism test for two subgroups of this group.
    pub fn isomorphic(&self, a: &Set, b: &Set) -> bool {
        let order = set_len(a);
        if order != set_len(b) {
            return false;
        }
        let gens = self.small_generators(a);
        let want: Vec<usize> = gens.iter().map(|&g| self.elem_order(g)).collect();
        let bm = set_members(b);
        let choices: Vec<Vec<u32>> =
            want.iter().map(|&o| bm.iter().copied().filter(|&x| self.elem_order(x) == o).collect()).collect();
        let mut pick = vec![0usize; gens.len()];
        if choices.iter().any(|c| c.is_empty()) {
            return false;
        }
        loop {
            let imgs: Vec<u32> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            if self.extends(&gens, &imgs, order) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == pick.len() {
                    return false;
                }
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }
}
