//! Subgroup lattice up to conjugacy, by layered generation: seed with the
//! trivial subgroup, extend each known subgroup class by one generator at a
//! time, and deduplicate by conjugacy. Every subgroup arises along a chain
//! H_0 = 1 < H_1 < ... < H_k with each step one-generator, so the search is
//! complete up to conjugacy when the budget suffices.

use crate::bitset::BitSet;
use crate::perm::{small_generating_set, PermGroup};
use std::collections::HashMap;

/// A conjugacy class of subgroups, represented by its canonical member
/// (minimal element bitset over the conjugation orbit).
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Generator element ids of the representative subgroup.
    pub gens: Vec<usize>,
    /// Element ids of the representative subgroup.
    pub elems: BitSet,
    pub order: usize,
    /// Number of conjugate subgroups in the class.
    pub length: usize,
    pub is_normal: bool,
    pub is_cyclic: bool,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    pub classes: Vec<SubgroupClass>,
    /// False when the node budget ran out; the list is then sound but
    /// possibly incomplete, and downstream decisions must degrade to
    /// "undecided" rather than "fails".
    pub complete: bool,
    /// Number of closure computations performed.
    pub nodes_used: usize,
}

impl Lattice {
    pub fn class_of_set(&self, g: &PermGroup, set: &BitSet) -> Option<usize> {
        let canon = canonical_conjugate(g, set).0;
        self.classes.iter().position(|c| canonical_conjugate(g, &c.elems).0 == canon)
    }
}

/// Canonical representative of the conjugacy orbit of a subgroup element-set,
/// together with the orbit size.
pub fn canonical_conjugate(g: &PermGroup, set: &BitSet) -> (BitSet, usize) {
    let gen_ids: Vec<usize> = g.gens.iter().map(|p| g.id_of(p).unwrap()).collect();
    let mut orbit: Vec<BitSet> = vec![set.clone()];
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    seen.insert(set.clone(), ());
    let mut qi = 0;
    while qi < orbit.len() {
        let cur = orbit[qi].clone();
        qi += 1;
        for &gid in &gen_ids {
            let mut img = BitSet::new(g.order());
            for x in cur.iter() {
                img.insert(g.mul(g.mul(gid, x), g.inv(gid)));
            }
            if !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                orbit.push(img);
            }
        }
    }
    let size = orbit.len();
    (orbit.into_iter().min().unwrap(), size)
}

/// All subgroups of `g` up to conjugacy, within a closure-count budget.
pub fn subgroups_up_to_conjugacy(g: &PermGroup, budget: usize) -> Lattice {
    let n = g.order();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    let mut canon_index: HashMap<BitSet, usize> = HashMap::new();
    let mut nodes_used = 0usize;
    let mut complete = true;

    let mut trivial = BitSet::new(n);
    trivial.insert(0);
    let (tc, tl) = canonical_conjugate(g, &trivial);
    canon_index.insert(tc, 0);
    classes.push(SubgroupClass {
        gens: vec![],
        elems: trivial,
        order: 1,
        length: tl,
        is_normal: true,
        is_cyclic: true,
    });

    let mut head = 0;
    'layers: while head < classes.len() {
        let h = classes[head].clone();
        head += 1;
        if h.order == n {
            continue;
        }
        // Extensions <H, x>; x ranges over double-coset representatives.
        let mut covered = h.elems.clone();
        for x in 0..n {
            if covered.contains(x) {
                continue;
            }
            if nodes_used >= budget {
                complete = false;
                break 'layers;
            }
            nodes_used += 1;
            let mut gens = h.gens.clone();
            gens.push(x);
            let k = g.subgroup_closure(&gens);
            // Mark the double coset H x H: <H, x'> = <H, x> for x' = h1 x h2.
            for h1 in h.elems.iter() {
                let h1x = g.mul(h1, x);
                for h2 in h.elems.iter() {
                    covered.insert(g.mul(h1x, h2));
                }
            }
            let (canon, length) = canonical_conjugate(g, &k);
            if !canon_index.contains_key(&canon) {
                let order = k.count();
                let is_normal = length == 1;
                let is_cyclic = k.iter().any(|e| g.element_order(e) == order);
                canon_index.insert(canon, classes.len());
                classes.push(SubgroupClass {
                    gens: small_generating_set(g, &k),
                    elems: k,
                    order,
                    length,
                    is_normal,
                    is_cyclic,
                });
            }
        }
    }
    classes.sort_by(|a, b| (a.order, &a.elems).cmp(&(b.order, &b.elems)));
    Lattice { classes, complete, nodes_used }
}

/// Brute-force subgroup enumeration: repeatedly close known subgroups with
/// every group element until no new subgroup appears. Exponentially slower
/// than the lattice search (no conjugacy dedup, no coset pruning); used as an
/// independent test oracle for small groups.
pub fn all_subgroups_brute(g: &PermGroup) -> Vec<BitSet> {
    let n = g.order();
    let mut subs: HashMap<BitSet, Vec<usize>> = HashMap::new();
    let mut trivial = BitSet::new(n);
    trivial.insert(0);
    subs.insert(trivial, vec![]);
    let mut frontier: Vec<(BitSet, Vec<usize>)> =
        subs.iter().map(|(s, gens)| (s.clone(), gens.clone())).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (set, gens) in frontier {
            for x in 0..n {
                if set.contains(x) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let k = g.subgroup_closure(&g2);
                if !subs.contains_key(&k) {
                    subs.insert(k.clone(), g2.clone());
                    next.push((k, g2));
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<BitSet> = subs.into_keys().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use std::collections::HashSet;

    fn sym(n: usize) -> PermGroup {
        let cycle = Perm::from_images((0..n as u16).map(|i| (i + 1) % n as u16).collect());
        let mut tr: Vec<u16> = (0..n as u16).collect();
        tr.swap(0, 1);
        PermGroup::generate(n, vec![Perm::from_images(tr), cycle], 10_000).unwrap()
    }

    fn cyclic(n: usize) -> PermGroup {
        let cycle = Perm::from_images((0..n as u16).map(|i| (i + 1) % n as u16).collect());
        PermGroup::generate(n, vec![cycle], 10_000).unwrap()
    }

    #[test]
    fn s3_lattice() {
        let g = sym(3);
        let lat = subgroups_up_to_conjugacy(&g, 1_000_000);
        assert!(lat.complete);
        let profile: Vec<(usize, usize)> =
            lat.classes.iter().map(|c| (c.order, c.length)).collect();
        assert_eq!(profile, vec![(1, 1), (2, 3), (3, 1), (6, 1)]);
    }

    #[test]
    fn c4_lattice() {
        let g = cyclic(4);
        let lat = subgroups_up_to_conjugacy(&g, 1_000_000);
        assert!(lat.complete);
        assert_eq!(lat.classes.len(), 3);
        assert!(lat.classes.iter().all(|c| c.is_cyclic && c.is_normal));
    }

    #[test]
    fn s4_lattice_vs_brute() {
        let g = sym(4);
        let lat = subgroups_up_to_conjugacy(&g, 1_000_000);
        assert!(lat.complete);
        assert_eq!(lat.classes.len(), 11);
        // Total subgroup count over all classes matches brute force.
        let brute = all_subgroups_brute(&g);
        assert_eq!(brute.len(), 30);
        assert_eq!(lat.classes.iter().map(|c| c.length).sum::<usize>(), 30);
        // Each brute subgroup is conjugate to exactly one class rep.
        let canon_reps: HashSet<BitSet> =
            lat.classes.iter().map(|c| canonical_conjugate(&g, &c.elems).0).collect();
        assert_eq!(canon_reps.len(), 11);
        for s in &brute {
            assert!(canon_reps.contains(&canonical_conjugate(&g, s).0));
        }
        // Lagrange + normality flags.
        for c in &lat.classes {
            assert_eq!(24 % c.order, 0);
            assert_eq!(c.is_normal, g.is_normal(&c.elems));
        }
    }

    #[test]
    fn a4_and_d4_lattices_vs_brute() {
        // A4 inside S4.
        let g = sym(4);
        let a4gens: Vec<Perm> =
            vec![Perm::parse("(1,2,3)", 4).unwrap(), Perm::parse("(1,2)(3,4)", 4).unwrap()];
        let a4 = PermGroup::generate(4, a4gens, 100).unwrap();
        assert_eq!(a4.order(), 12);
        let lat = subgroups_up_to_conjugacy(&a4, 1_000_000);
        assert_eq!(lat.classes.iter().map(|c| c.length).sum::<usize>(), all_subgroups_brute(&a4).len());
        assert_eq!(lat.classes.len(), 5); // 1, C2, C3, V4, A4
        let _ = g;
    }

    #[test]
    fn budget_gives_partial() {
        let g = sym(4);
        let lat = subgroups_up_to_conjugacy(&g, 3);
        assert!(!lat.complete);
        assert!(lat.classes.len() < 11);
        for c in &lat.classes {
            assert_eq!(c.elems.count(), c.order);
        }
    }

    #[test]
    fn s5_lattice_count() {
        let g = sym(5);
        let lat = subgroups_up_to_conjugacy(&g, 1_000_000);
        assert!(lat.complete);
        // 19 conjugacy classes of subgroups of S5.
        assert_eq!(lat.classes.len(), 19);
        let total: usize = lat.classes.iter().map(|c| c.length).sum();
        assert_eq!(total, 156);
    }
}
