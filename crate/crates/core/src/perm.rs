//! Permutations in cycle notation and finite permutation groups with full
//! element enumeration, conjugacy classes, and assorted structure queries.

use crate::bitset::BitSet;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("cycle notation parse error: {0}")]
    Parse(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("repeated point {0} in cycle notation")]
    RepeatedPoint(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("element not in group")]
    NotInGroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("degree is not prime")]
    NotPrimeDegree,
}

/// A permutation of {0, .., degree-1}, stored as its image vector.
/// Cycle notation I/O is 1-based, e.g. "(1,2,3)(4,5)".
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    img: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { img: (0..degree as u16).collect() }
    }

    pub fn from_images(img: Vec<u16>) -> Self {
        debug_assert!({
            let mut seen = vec![false; img.len()];
            img.iter().all(|&i| {
                let ok = (i as usize) < img.len() && !seen[i as usize];
                if ok {
                    seen[i as usize] = true;
                }
                ok
            })
        });
        Perm { img }
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.img
    }

    /// Parse 1-based cycle notation such as "(1,2,3)(4,5)" or "(1 2 3)".
    /// "()" and the empty string denote the identity.
    pub fn parse(s: &str, degree: usize) -> Result<Self, PermError> {
        let mut img: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Perm { img });
        }
        // Scan parenthesized cycles; commas/whitespace between cycles are
        // allowed, so "(1,2),(3,4)" and "(1 2)(3 4)" both parse.
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            if !rest.starts_with('(') {
                return Err(PermError::Parse(format!("expected '(' in {s:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| PermError::Parse(format!("unbalanced parentheses in {s:?}")))?;
            let pts: Result<Vec<usize>, _> = rest[1..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| PermError::Parse(format!("bad point {t:?}"))))
                .collect();
            cycles.push(pts?);
            rest = &rest[close + 1..];
        }
        for pts in cycles {
            for &p in &pts {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if moved[p - 1] {
                    return Err(PermError::RepeatedPoint(p));
                }
                moved[p - 1] = true;
            }
            for i in 0..pts.len() {
                img[pts[i] - 1] = (pts[(i + 1) % pts.len()] - 1) as u16;
            }
        }
        Ok(Perm { img })
    }

    /// Cycle notation, 1-based, fixed points omitted; identity prints as "()".
    pub fn to_cycles(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            loop {
                seen[x] = true;
                if x != start {
                    out.push(',');
                }
                out.push_str(&(x + 1).to_string());
                x = self.apply(x);
                if x == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Composition: (a * b)(x) = a(b(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u16; self.degree()];
        for (x, &y) in self.img.iter().enumerate() {
            img[y as usize] = x as u16;
        }
        Perm { img }
    }

    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        // g * self * g^{-1}
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            loop {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
                if x == start {
                    break;
                }
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        self.cycle_lengths().into_iter().fold(1, num_integer::lcm)
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycle_lengths().iter().map(|l| l - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    pub fn orbit_count(&self) -> usize {
        self.cycle_lengths().len()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles())
    }
}

/// A conjugacy class of a `PermGroup`, in the group's canonical class order:
/// classes sorted by (representative element order, class size, minimal
/// element id). The identity class is always class 0.
#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Element id of the minimal member.
    pub rep: usize,
    pub size: usize,
    /// Order of the representative element.
    pub order: usize,
    /// All member element ids, sorted.
    pub members: Vec<usize>,
}

/// A finite permutation group with its elements fully enumerated.
///
/// Element ids are BFS discovery order over words in the generators
/// (deterministic for fixed generators); element 0 is the identity.
pub struct PermGroup {
    pub degree: usize,
    pub gens: Vec<Perm>,
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverse_ids: Vec<usize>,
    element_orders: Vec<usize>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

impl PermGroup {
    /// Generate the full element list by breadth-first closure of the
    /// generators, with a hard cap on the order.
    pub fn generate(degree: usize, gens: Vec<Perm>, cap: usize) -> Result<Self, PermError> {
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(g.degree(), degree));
            }
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut head = 0;
        while head < elements.len() {
            let cur = elements[head].clone();
            head += 1;
            for g in &gens {
                let prod = g.compose(&cur);
                if !index.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(PermError::OrderCapExceeded { cap });
                    }
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                }
            }
        }

        let inverse_ids: Vec<usize> =
            elements.iter().map(|e| index[&e.inverse()]).collect();
        let element_orders: Vec<usize> = elements.iter().map(|e| e.order()).collect();

        // Conjugacy classes: orbits under conjugation by the generators.
        let n = elements.len();
        let mut class_raw = vec![usize::MAX; n];
        let mut raw_classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_raw[start] != usize::MAX {
                continue;
            }
            let cid = raw_classes.len();
            let mut members = vec![start];
            class_raw[start] = cid;
            let mut qi = 0;
            while qi < members.len() {
                let x = elements[members[qi]].clone();
                qi += 1;
                for g in &gens {
                    let y = x.conjugate_by(g);
                    let yid = index[&y];
                    if class_raw[yid] == usize::MAX {
                        class_raw[yid] = cid;
                        members.push(yid);
                    }
                }
            }
            members.sort_unstable();
            raw_classes.push(members);
        }
        let mut order: Vec<usize> = (0..raw_classes.len()).collect();
        order.sort_by_key(|&c| {
            let m = &raw_classes[c];
            (element_orders[m[0]], m.len(), m[0])
        });
        let mut classes = Vec::with_capacity(raw_classes.len());
        let mut class_of = vec![0usize; n];
        for (new_id, &c) in order.iter().enumerate() {
            let members = raw_classes[c].clone();
            for &m in &members {
                class_of[m] = new_id;
            }
            classes.push(ConjClass {
                rep: members[0],
                size: members.len(),
                order: element_orders[members[0]],
                members,
            });
        }

        Ok(PermGroup { degree, gens, elements, index, inverse_ids, element_orders, classes, class_of })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn id_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse_ids[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, elem: usize) -> usize {
        self.class_of[elem]
    }

    /// Class containing rep(class)^k.
    pub fn class_power(&self, class: usize, k: usize) -> usize {
        let rep = &self.elements[self.classes[class].rep];
        self.class_of[self.index[&rep.pow(k)]]
    }

    /// Class of the inverses of members of `class`.
    pub fn class_inverse(&self, class: usize) -> usize {
        self.class_of[self.inverse_ids[self.classes[class].rep]]
    }

    pub fn exponent(&self) -> usize {
        self.classes.iter().fold(1, |e, c| num_integer::lcm(e, c.order))
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    /// Power of an element by id.
    pub fn elem_pow(&self, a: usize, k: usize) -> usize {
        self.index[&self.elements[a].pow(k)]
    }

    /// Smallest subgroup (as a bitset of element ids) containing `seed_gens`.
    pub fn subgroup_closure(&self, seed_gens: &[usize]) -> BitSet {
        let n = self.order();
        let mut set = BitSet::new(n);
        set.insert(0);
        let mut queue = vec![0usize];
        let mut qi = 0;
        while qi < queue.len() {
            let cur = queue[qi];
            qi += 1;
            for &g in seed_gens {
                let prod = self.mul(g, cur);
                if set.insert(prod) {
                    queue.push(prod);
                }
            }
        }
        set
    }

    /// Normal closure of the subgroup generated by `seeds`.
    pub fn normal_closure(&self, seeds: &[usize]) -> BitSet {
        let mut gens: Vec<usize> = seeds.to_vec();
        let mut set = self.subgroup_closure(&gens);
        loop {
            let mut grew = false;
            let members: Vec<usize> = set.iter().collect();
            'outer: for &x in &members {
                for g in 0..self.gens.len() {
                    let gid = self.id_of(&self.gens[g]).unwrap();
                    let c = self.mul(self.mul(gid, x), self.inv(gid));
                    if !set.contains(c) {
                        gens.push(c);
                        set = self.subgroup_closure(&gens);
                        grew = true;
                        break 'outer;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    /// Is the subgroup (given as an element bitset) normal in the whole group?
    pub fn is_normal(&self, set: &BitSet) -> bool {
        let gen_ids: Vec<usize> = self.gens.iter().map(|g| self.id_of(g).unwrap()).collect();
        for x in set.iter() {
            for &g in &gen_ids {
                if !set.contains(self.mul(self.mul(g, x), self.inv(g))) {
                    return false;
                }
            }
        }
        true
    }

    /// All normal subgroups, as element bitsets, sorted by (order, set).
    /// Computed from normal closures of classes, closed under joins.
    pub fn normal_subgroups(&self) -> Vec<BitSet> {
        let mut found: Vec<BitSet> = Vec::new();
        let push = |s: BitSet, found: &mut Vec<BitSet>| {
            if !found.contains(&s) {
                found.push(s);
            }
        };
        let mut trivial = BitSet::new(self.order());
        trivial.insert(0);
        push(trivial, &mut found);
        for c in &self.classes {
            push(self.normal_closure(&[c.rep]), &mut found);
        }
        // Close under joins.
        loop {
            let mut grew = false;
            let snapshot = found.clone();
            for i in 0..snapshot.len() {
                for j in (i + 1)..snapshot.len() {
                    let mut seeds: Vec<usize> = snapshot[i].iter().collect();
                    seeds.extend(snapshot[j].iter());
                    // Join of normal subgroups N1 N2 is just the product set,
                    // but the subgroup closure of the union is the same thing.
                    if snapshot[i].is_subset(&snapshot[j]) || snapshot[j].is_subset(&snapshot[i]) {
                        continue;
                    }
                    let join = self.subgroup_closure(&seeds);
                    if !found.contains(&join) {
                        found.push(join);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        found.sort_by_key(|s| (s.count(), s.clone()));
        found
    }

    /// Minimal nontrivial normal subgroups.
    pub fn minimal_normal_subgroups(&self) -> Vec<BitSet> {
        let normals = self.normal_subgroups();
        let nontrivial: Vec<&BitSet> = normals.iter().filter(|s| s.count() > 1).collect();
        nontrivial
            .iter()
            .filter(|s| {
                !nontrivial.iter().any(|t| t.count() > 1 && t.count() < s.count() && t.is_subset(s))
            })
            .map(|s| (*s).clone())
            .collect()
    }

    /// Derived subgroup of a subgroup given by generators (element ids):
    /// closure of commutators under conjugation by the subgroup.
    pub fn derived_subgroup_of(&self, sub_gens: &[usize], sub_set: &BitSet) -> BitSet {
        let mut gens: Vec<usize> = Vec::new();
        for &a in sub_gens {
            for &b in sub_gens {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                if c != 0 && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        let mut set = self.subgroup_closure(&gens);
        // Normal closure within the subgroup.
        loop {
            let mut grew = false;
            let members: Vec<usize> = set.iter().collect();
            'outer: for &x in &members {
                for &g in sub_gens {
                    let c = self.mul(self.mul(g, x), self.inv(g));
                    if !set.contains(c) {
                        gens.push(c);
                        set = self.subgroup_closure(&gens);
                        grew = true;
                        break 'outer;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        debug_assert!(set.is_subset(sub_set));
        set
    }

    /// Is the subgroup given by (generators, element set) solvable?
    pub fn is_solvable_subgroup(&self, sub_gens: &[usize], sub_set: &BitSet) -> bool {
        let mut gens: Vec<usize> = sub_gens.to_vec();
        let mut set = sub_set.clone();
        loop {
            let derived = self.derived_subgroup_of(&gens, &set);
            let dc = derived.count();
            if dc == 1 {
                return true;
            }
            if dc == set.count() {
                return false;
            }
            gens = small_generating_set(self, &derived);
            set = derived;
        }
    }

    /// The set of element ids fixing the given point (as permutations).
    pub fn point_stabilizer(&self, point: usize) -> BitSet {
        let mut set = BitSet::new(self.order());
        for (i, e) in self.elements.iter().enumerate() {
            if e.apply(point) == point {
                set.insert(i);
            }
        }
        set
    }

    /// For a transitive group of prime degree with subgroup N (element set):
    /// does the point stabilizer H of point 0 satisfy [H : H∩N] = [G : N]?
    pub fn stabilizer_index_check(&self, n_set: &BitSet) -> Result<bool, PermError> {
        if !self.is_transitive() {
            return Err(PermError::NotTransitive);
        }
        let p = self.degree;
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(PermError::NotPrimeDegree);
        }
        let h = self.point_stabilizer(0);
        let h_order = h.count();
        let meet = h.iter().filter(|&x| n_set.contains(x)).count();
        Ok(h_order * n_set.count() == meet * self.order())
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut qi = 0;
        while qi < queue.len() {
            let x = queue[qi];
            qi += 1;
            for g in &self.gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Number of orbits of the cyclic group generated by element `a` on points.
    pub fn orbit_count_of_element(&self, a: usize) -> usize {
        self.elements[a].orbit_count()
    }

    /// Quotient by a normal subgroup: the action on left cosets, as a new
    /// permutation group of degree [G:N], together with the map sending each
    /// element id of G to its image element id in the quotient.
    pub fn quotient(&self, normal: &BitSet, cap: usize) -> Result<(PermGroup, Vec<usize>), PermError> {
        if !self.is_normal(normal) {
            return Err(PermError::NotNormal);
        }
        let n = self.order();
        // Coset ids in order of minimal member.
        let mut coset_of = vec![usize::MAX; n];
        let mut num_cosets = 0;
        for e in 0..n {
            if coset_of[e] != usize::MAX {
                continue;
            }
            for m in normal.iter() {
                coset_of[self.mul(e, m)] = num_cosets;
            }
            num_cosets += 1;
        }
        let mut coset_rep = vec![usize::MAX; num_cosets];
        for e in (0..n).rev() {
            coset_rep[coset_of[e]] = e;
        }
        // coset_rep holds the minimal member since we iterate downward.
        let images: Vec<Perm> = self
            .gens
            .iter()
            .map(|g| {
                let gid = self.id_of(g).unwrap();
                Perm::from_images(
                    (0..num_cosets)
                        .map(|c| coset_of[self.mul(gid, coset_rep[c])] as u16)
                        .collect(),
                )
            })
            .collect();
        let q = PermGroup::generate(num_cosets, images, cap)?;
        debug_assert_eq!(q.order(), n / normal.count());
        let elem_map: Vec<usize> = (0..n)
            .map(|e| {
                let img = Perm::from_images(
                    (0..num_cosets)
                        .map(|c| coset_of[self.mul(e, coset_rep[c])] as u16)
                        .collect(),
                );
                q.id_of(&img).unwrap()
            })
            .collect();
        Ok((q, elem_map))
    }

    /// Map each conjugacy class of G to the class of its image in G/N.
    pub fn quotient_class_map(&self, normal: &BitSet, cap: usize) -> Result<(PermGroup, Vec<usize>), PermError> {
        let (q, elem_map) = self.quotient(normal, cap)?;
        let map = self.classes.iter().map(|c| q.class_of(elem_map[c.rep])).collect();
        Ok((q, map))
    }

    /// View a subgroup (generators as element ids) as a `PermGroup` in its own
    /// right (same degree), with the map from its element ids back to ours.
    pub fn subgroup_as_group(&self, sub_gens: &[usize]) -> (PermGroup, Vec<usize>) {
        let gens: Vec<Perm> = sub_gens.iter().map(|&g| self.elements[g].clone()).collect();
        let h = PermGroup::generate(self.degree, gens, self.order() + 1).unwrap();
        let map = h.elements.iter().map(|e| self.id_of(e).expect("subgroup element in parent")).collect();
        (h, map)
    }
}

/// Greedy small generating set for a subgroup given by its element bitset.
pub fn small_generating_set(g: &PermGroup, set: &BitSet) -> Vec<usize> {
    let target = set.count();
    if target == 1 {
        return vec![];
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut cur = BitSet::new(g.order());
    cur.insert(0);
    // Prefer high-order elements to keep the generating set short.
    let mut members: Vec<usize> = set.iter().collect();
    members.sort_by_key(|&m| (std::cmp::Reverse(g.element_order(m)), m));
    for &m in &members {
        if cur.contains(m) {
            continue;
        }
        gens.push(m);
        cur = g.subgroup_closure(&gens);
        if cur.count() == target {
            break;
        }
    }
    debug_assert_eq!(cur.count(), target);
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> PermGroup {
        // S_n from a transposition and an n-cycle.
        let cycle = Perm::from_images((0..n as u16).map(|i| (i + 1) % n as u16).collect());
        let mut tr: Vec<u16> = (0..n as u16).collect();
        tr.swap(0, 1);
        PermGroup::generate(n, vec![Perm::from_images(tr), cycle], 10_000).unwrap()
    }

    #[test]
    fn parse_roundtrip() {
        let p = Perm::parse("(1,2,3)(4,5)", 6).unwrap();
        assert_eq!(p.to_cycles(), "(1,2,3)(4,5)");
        assert_eq!(p.order(), 6);
        assert_eq!(p.sign(), -1);
        let q = Perm::parse("(1 2 3)(4 5)", 6).unwrap();
        assert_eq!(p, q);
        assert!(Perm::parse("(1,7)", 6).is_err());
        assert!(Perm::parse("(1,1)", 6).is_err());
        assert_eq!(Perm::parse("()", 4).unwrap(), Perm::identity(4));
    }

    #[test]
    fn s5_classes() {
        let g = s(5);
        assert_eq!(g.order(), 120);
        assert_eq!(g.num_classes(), 7);
        let mut sizes: Vec<usize> = g.classes().iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 10, 15, 20, 20, 24, 30]);
        assert_eq!(g.classes()[0].size, 1);
        assert_eq!(g.exponent(), 60);
    }

    #[test]
    fn s4_structure() {
        let g = s(4);
        assert_eq!(g.order(), 24);
        assert_eq!(g.num_classes(), 5);
        let normals = g.normal_subgroups();
        let orders: Vec<usize> = normals.iter().map(|s| s.count()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let minimal = g.minimal_normal_subgroups();
        assert_eq!(minimal.len(), 1);
        assert_eq!(minimal[0].count(), 4);
        assert!(g.is_solvable_subgroup(
            &g.gens.iter().map(|p| g.id_of(p).unwrap()).collect::<Vec<_>>(),
            &(0..24).collect::<BitSet>()
        ));
    }

    #[test]
    fn a5_simple_not_solvable() {
        let g = s(5);
        // A5 = derived subgroup of S5.
        let gen_ids: Vec<usize> = g.gens.iter().map(|p| g.id_of(p).unwrap()).collect();
        let full: BitSet = (0..120).collect();
        let a5 = g.derived_subgroup_of(&gen_ids, &full);
        assert_eq!(a5.count(), 60);
        let a5_gens = small_generating_set(&g, &a5);
        assert!(!g.is_solvable_subgroup(&a5_gens, &a5));
        let normals = g.normal_subgroups();
        assert_eq!(normals.iter().map(|s| s.count()).collect::<Vec<_>>(), vec![1, 60, 120]);
    }

    #[test]
    fn quotient_s4_by_v4() {
        let g = s(4);
        let v4 = &g.minimal_normal_subgroups()[0];
        let (q, class_map) = g.quotient_class_map(v4, 100).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.num_classes(), 3);
        assert_eq!(class_map.len(), 5);
        // Identity class maps to identity class.
        assert_eq!(class_map[0], 0);
        // The double-transposition class lies in V4; maps to the identity class.
        let dt = g
            .classes()
            .iter()
            .position(|c| c.order == 2 && c.size == 3)
            .unwrap();
        assert_eq!(class_map[dt], 0);
    }

    #[test]
    fn cap_enforced() {
        let cycle = Perm::from_images((0..8u16).map(|i| (i + 1) % 8).collect());
        let mut tr: Vec<u16> = (0..8).collect();
        tr.swap(0, 1);
        let r = PermGroup::generate(8, vec![Perm::from_images(tr), cycle], 1000);
        assert!(matches!(r, Err(PermError::OrderCapExceeded { cap: 1000 })));
    }

    #[test]
    fn class_power_map() {
        let g = s(5);
        // Squaring a 4-cycle lands in the (2,2) class.
        let c4 = g.classes().iter().position(|c| c.order == 4).unwrap();
        let sq = g.class_power(c4, 2);
        assert_eq!(g.classes()[sq].order, 2);
        assert_eq!(g.classes()[sq].size, 15);
        // 5-cycles: inverse class is itself in S5.
        let c5 = g.classes().iter().position(|c| c.order == 5).unwrap();
        assert_eq!(g.class_inverse(c5), c5);
    }

    #[test]
    fn point_stabilizer_s5() {
        let g = s(5);
        let st = g.point_stabilizer(0);
        assert_eq!(st.count(), 24);
        assert!(g.is_transitive());
    }

    #[test]
    fn stabilizer_index_prime_degree() {
        // S5 natural with N = A5
        let g = s(5);
        let a5 = g
            .normal_subgroups()
            .into_iter()
            .find(|s| s.count() == 60)
            .unwrap();
        assert!(g.stabilizer_index_check(&a5).unwrap());
        // D5 inside S5 with N = C5
        let d5 = PermGroup::generate(
            5,
            vec![Perm::parse("(1,2,3,4,5)", 5).unwrap(), Perm::parse("(2,5)(3,4)", 5).unwrap()],
            100,
        )
        .unwrap();
        let c5 = d5
            .normal_subgroups()
            .into_iter()
            .find(|s| s.count() == 5)
            .unwrap();
        assert!(d5.stabilizer_index_check(&c5).unwrap());
        // C7 acting regularly, N = C7: both indices 1
        let c7 = PermGroup::generate(7, vec![Perm::parse("(1,2,3,4,5,6,7)", 7).unwrap()], 100)
            .unwrap();
        let full: BitSet = {
            let mut b = BitSet::new(7);
            for i in 0..7 {
                b.insert(i);
            }
            b
        };
        assert!(c7.stabilizer_index_check(&full).unwrap());
        // errors
        let s4 = s(4);
        let v4 = s4
            .normal_subgroups()
            .into_iter()
            .find(|s| s.count() == 4)
            .unwrap();
        assert!(matches!(
            s4.stabilizer_index_check(&v4),
            Err(PermError::NotPrimeDegree)
        ));
        let fix = PermGroup::generate(3, vec![Perm::parse("(1,2)", 3).unwrap()], 100).unwrap();
        let triv = {
            let mut b = BitSet::new(2);
            b.insert(0);
            b
        };
        assert!(matches!(
            fix.stabilizer_index_check(&triv),
            Err(PermError::NotTransitive)
        ));
    }

    #[test]
    fn prime_degree_unique_minimal_invariant() {
        // transitive groups of prime degree: unique minimal normal subgroup
        // and the stabilizer index identity holds.
        let cases: Vec<PermGroup> = vec![
            s(5),
            crate::smallgroups::alternating(5, 100).unwrap(),
            PermGroup::generate(
                5,
                vec![
                    Perm::parse("(1,2,3,4,5)", 5).unwrap(),
                    Perm::parse("(2,3,5,4)", 5).unwrap(),
                ],
                100,
            )
            .unwrap(), // F20
            crate::smallgroups::frobenius(7, 3, 100).unwrap(),
            crate::smallgroups::psl32(1000).unwrap(),
            s(7),
            PermGroup::generate(11, vec![Perm::parse("(1,2,3,4,5,6,7,8,9,10,11)", 11).unwrap()], 100)
                .unwrap(),
            PermGroup::generate(
                13,
                vec![
                    Perm::parse("(1,2,3,4,5,6,7,8,9,10,11,12,13)", 13).unwrap(),
                    Perm::parse("(2,3,5,9,4,7,13,12,10,6,11,8)", 13).unwrap(),
                ],
                200,
            )
            .unwrap(), // F156 = C13 ⋊ C12 (2 is a primitive root mod 13)
        ];
        for g in &cases {
            assert!(g.is_transitive());
            let minimal = g.minimal_normal_subgroups();
            assert_eq!(minimal.len(), 1, "degree {}", g.degree);
            assert!(g.stabilizer_index_check(&minimal[0]).unwrap());
        }
    }
}
