//! Orbitals of transitive groups, and the p-part test on valencies.

use std::thread;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::coset::CosetDigraph;
use crate::error::{Error, Result};
use crate::numth::factorize;
use crate::permgroup::{transporter, CosetAction, Perm, PermGroup};

/// Some element swapping u and v, if one exists.
pub fn is_self_paired(g: &PermGroup, u: u32, v: u32) -> Result<Option<Perm>> {
    if u == v {
        return Err(Error::InvalidArgument("u and v must differ".into()));
    }
    Ok(transporter(g, &[u, v], &[v, u]))
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbital {
    /// The orbital of (0, w).
    pub representative: (u32, u32),
    pub suborbit_size: usize,
    pub self_paired: bool,
    /// Index of the orbital of (w, 0) in the scan.
    pub paired_with: usize,
    /// An element swapping 0 and w.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Every non-diagonal orbital of a transitive group, through the suborbits
/// of the stabiliser of point 0.
pub fn self_paired_scan(g: &PermGroup, cap: usize, threads: usize) -> Result<Vec<Orbital>> {
    if g.degree() > cap {
        return Err(Error::ResourceLimit(format!("degree {} exceeds cap {cap}", g.degree())));
    }
    if !g.is_transitive() {
        return Err(Error::Precondition("group is not transitive".into()));
    }
    let stab = g.pointwise_stabilizer(&[0]);
    let mut suborbits = stab.orbits();
    suborbits.retain(|o| o != &[0]);
    suborbits.sort_by_key(|o| o.iter().copied().min());
    let mut which = vec![usize::MAX; g.degree()];
    for (i, o) in suborbits.iter().enumerate() {
        for &x in o {
            which[x as usize] = i;
        }
    }
    let reps: Vec<u32> = suborbits.iter().map(|o| *o.iter().min().unwrap()).collect();
    let scan = |w: u32| -> (usize, Option<Perm>) {
        let back = transporter(g, &[w], &[0]).expect("transitive");
        (which[back.apply(0) as usize], transporter(g, &[0, w], &[w, 0]))
    };
    let _ = g.chain();
    let results: Vec<(usize, Option<Perm>)> = if threads <= 1 || reps.len() < 2 {
        reps.iter().map(|&w| scan(w)).collect()
    } else {
        let chunk = reps.len().div_ceil(threads);
        thread::scope(|s| {
            let handles: Vec<_> =
                reps.chunks(chunk).map(|c| s.spawn(move || c.iter().map(|&w| scan(w)).collect::<Vec<_>>())).collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    Ok(reps
        .iter()
        .zip(results)
        .enumerate()
        .map(|(i, (&w, (paired_with, witness)))| {
            debug_assert_eq!(paired_with == i, witness.is_some());
            Orbital {
                representative: (0, w),
                suborbit_size: suborbits[i].len(),
                self_paired: paired_with == i,
                paired_with,
                witness: witness.map(|x| x.to_string()),
            }
        })
        .collect())
}

/// Cos(G, H, g) for one g in each non-self-paired orbital of G on the
/// cosets of H: every G-arc-transitive digraph with vertex stabiliser H.
pub fn orbital_digraphs(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<Vec<CosetDigraph>> {
    let action = CosetAction::new(g, h, cap)?;
    let image = action.image_group(g.seed());
    self_paired_scan(&image, cap, 1)?
        .into_iter()
        .filter(|o| !o.self_paired)
        .map(|o| CosetDigraph::new(g, h, &action.reps()[o.representative.1 as usize], cap))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeVerdict {
    pub prime: String,
    pub stabiliser_part: String,
    pub valency_part: String,
    /// (valency p-part)^s.
    pub required: String,
    pub pass: bool,
}

/// For each p dividing |G_v|: |G_v|_p ≥ (γ_p)^s. A failure rules out
/// s-arc-transitivity.
pub fn p_part_verdicts(stabiliser_order: &BigUint, valency: &BigUint, s: u32) -> Vec<PrimeVerdict> {
    factorize(stabiliser_order)
        .into_iter()
        .map(|(p, e)| {
            let mut gamma_p = BigUint::one();
            let mut rest = valency.clone();
            while !rest.is_zero() && (&rest % &p).is_zero() {
                rest /= &p;
                gamma_p *= &p;
            }
            let stab_p = p.pow(e);
            let required = gamma_p.pow(s);
            PrimeVerdict {
                prime: p.to_string(),
                stabiliser_part: stab_p.to_string(),
                valency_part: gamma_p.to_string(),
                required: required.to_string(),
                pass: stab_p >= required,
            }
        })
        .collect()
}

/// ∏ p^(e_p − ⌊e_p/s⌋) over |G_v| = ∏ p^e_p: a divisor of |G_uv| whenever
/// the p-part test passes at s, since |G_v| = γ·|G_uv| and γ_p^s ≤ |G_v|_p.
pub fn arc_stabiliser_divisor(stabiliser_order: &BigUint, s: u32) -> BigUint {
    factorize(stabiliser_order).into_iter().map(|(p, e)| p.pow(e - e / s)).product()
}

impl CosetDigraph {
    pub fn valency_p_part_check(&self, s: u32) -> Vec<PrimeVerdict> {
        p_part_verdicts(&self.vertex_stabiliser_order(), &BigUint::from(self.valency()), s)
    }

    /// Orbitals of the induced group, scanned from vertex 0.
    pub fn orbitals(&self, threads: usize) -> Result<Vec<Orbital>> {
        self_paired_scan(self.image_group(), usize::MAX, threads)
    }

    /// Index of the orbital holding the base arc in `orbitals`.
    pub fn base_orbital(&self, orbitals: &[Orbital]) -> Option<usize> {
        let (_, v) = self.base_arc();
        let stab = self.image_group().pointwise_stabilizer(&[0]);
        let orbit = stab.orbit(v);
        orbitals.iter().position(|o| orbit.contains(&o.representative.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{construct, GroupSpec};

    #[test]
    fn regular_c3_is_not_self_paired() {
        let g = construct(&GroupSpec::Cyc(3)).unwrap();
        assert!(is_self_paired(&g, 0, 1).unwrap().is_none());
    }

    #[test]
    fn symmetric_groups_have_one_orbital() {
        for n in 3..=6 {
            let g = construct(&GroupSpec::Sym(n)).unwrap();
            let o = self_paired_scan(&g, 100, 1).unwrap();
            assert_eq!(o.len(), 1);
            assert!(o[0].self_paired);
        }
    }

    #[test]
    fn frobenius21_has_two_paired_orbitals() {
        let g = construct(&GroupSpec::Metacyclic { n: 7, r: 2, m: 3 }).unwrap();
        let o = self_paired_scan(&g, 100, 2).unwrap();
        assert_eq!(o.len(), 2);
        assert!(o.iter().all(|x| !x.self_paired));
        assert_eq!((o[0].paired_with, o[1].paired_with), (1, 0));
    }

    #[test]
    fn p_part_arithmetic() {
        let v = p_part_verdicts(&BigUint::from(24u32), &BigUint::from(6u32), 3);
        let pass: Vec<(String, bool)> = v.into_iter().map(|x| (x.prime, x.pass)).collect();
        assert_eq!(pass, vec![("2".into(), true), ("3".into(), false)]);
    }

    #[test]
    fn arc_stabiliser_divisor_example() {
        let gv = BigUint::from(2u32).pow(21) * BigUint::from(3u32).pow(8) * BigUint::from(5u32);
        let want = BigUint::from(2u32).pow(14) * BigUint::from(3u32).pow(6) * BigUint::from(5u32);
        assert_eq!(arc_stabiliser_divisor(&gv, 3), want);
    }
}
