//! Named group constructors, the bundled transitive-group aliases of degree
//! ≤ 7, and access to the generated database of all groups of order ≤ 100.

use crate::perm::{Perm, PermError, PermGroup};
use serde::{Deserialize, Serialize};

pub fn symmetric(n: usize, cap: usize) -> Result<PermGroup, PermError> {
    if n <= 1 {
        return PermGroup::generate(n.max(1), vec![], cap);
    }
    let cycle = Perm::from_images((0..n as u16).map(|i| (i + 1) % n as u16).collect());
    let mut tr: Vec<u16> = (0..n as u16).collect();
    tr.swap(0, 1);
    PermGroup::generate(n, vec![Perm::from_images(tr), cycle], cap)
}

pub fn alternating(n: usize, cap: usize) -> Result<PermGroup, PermError> {
    if n <= 2 {
        return PermGroup::generate(n.max(1), vec![], cap);
    }
    let three = Perm::parse("(1,2,3)", n)?;
    if n == 3 {
        return PermGroup::generate(n, vec![three], cap);
    }
    // (1,2,3) together with an n-cycle (n odd) or (2,..,n) (n even).
    let long = if n % 2 == 1 {
        Perm::from_images((0..n as u16).map(|i| (i + 1) % n as u16).collect())
    } else {
        let mut img: Vec<u16> = (0..n as u16).collect();
        for i in 1..n {
            img[i] = (1 + (i % (n - 1))) as u16;
        }
        Perm::from_images(img)
    };
    PermGroup::generate(n, vec![three, long], cap)
}

pub fn cyclic(n: usize, cap: usize) -> Result<PermGroup, PermError> {
    if n == 1 {
        return PermGroup::generate(1, vec![], cap);
    }
    let cycle = Perm::from_images((0..n as u16).map(|i| (i + 1) % n as u16).collect());
    PermGroup::generate(n, vec![cycle], cap)
}

/// Dihedral group of order 2n acting on n points.
pub fn dihedral(n: usize, cap: usize) -> Result<PermGroup, PermError> {
    assert!(n >= 3);
    let rot = Perm::from_images((0..n as u16).map(|i| (i + 1) % n as u16).collect());
    let refl = Perm::from_images((0..n as u16).map(|i| ((n as u16) - i) % n as u16).collect());
    PermGroup::generate(n, vec![rot, refl], cap)
}

/// Frobenius group of order p*q acting on p points: x -> a x + b with a of
/// multiplicative order q mod p. q must divide p-1.
pub fn frobenius(p: usize, q: usize, cap: usize) -> Result<PermGroup, PermError> {
    assert!(p >= 3 && (p - 1) % q == 0 && q > 1);
    // Find a generator of the order-q subgroup of (Z/p)^*.
    let modpow = |mut b: usize, mut e: usize| {
        let mut acc = 1usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let a = (2..p)
        .map(|g| modpow(g, (p - 1) / q))
        .find(|&a| {
            // a must have exact order q.
            (1..q).all(|k| modpow(a, k) != 1)
        })
        .expect("no element of the required order");
    let shift = Perm::from_images((0..p as u16).map(|i| (i + 1) % p as u16).collect());
    let mult = Perm::from_images((0..p as u16).map(|i| (i as usize * a % p) as u16).collect());
    PermGroup::generate(p, vec![shift, mult], cap)
}

/// PSL(3,2) = GL(3,2) acting on the 7 nonzero vectors of F_2^3.
pub fn psl32(cap: usize) -> Result<PermGroup, PermError> {
    // Vectors 1..7 as binary; generators: a cyclic shift-like matrix and a
    // transvection.
    let apply = |mat: [[u8; 3]; 3], v: usize| -> usize {
        let bits = [(v >> 2) & 1, (v >> 1) & 1, v & 1];
        let mut out = 0usize;
        for (i, row) in mat.iter().enumerate() {
            let b = (0..3).fold(0, |acc, j| acc ^ (row[j] as usize & bits[j]));
            out |= b << (2 - i);
        }
        out
    };
    let mat_to_perm = |mat: [[u8; 3]; 3]| {
        Perm::from_images((0..7u16).map(|i| (apply(mat, i as usize + 1) - 1) as u16).collect())
    };
    let g1 = mat_to_perm([[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
    let g2 = mat_to_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
    PermGroup::generate(7, vec![g1, g2], cap)
}

/// PSL(3,3) acting on the 13 points of the projective plane over F_3.
pub fn psl33(cap: usize) -> Result<PermGroup, PermError> {
    // Points: normalized column vectors (first nonzero coordinate = 1).
    let mut points: Vec<[u8; 3]> = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                let v = [a, b, c];
                if v == [0, 0, 0] {
                    continue;
                }
                let lead = v.iter().find(|&&x| x != 0).unwrap();
                if *lead == 1 {
                    points.push(v);
                }
            }
        }
    }
    assert_eq!(points.len(), 13);
    let normalize = |v: [u8; 3]| -> [u8; 3] {
        let lead = *v.iter().find(|&&x| x != 0).unwrap();
        let inv = if lead == 1 { 1 } else { 2 };
        [v[0] * inv % 3, v[1] * inv % 3, v[2] * inv % 3]
    };
    let mat_to_perm = |mat: [[u8; 3]; 3]| {
        Perm::from_images(
            points
                .iter()
                .map(|v| {
                    let mut w = [0u8; 3];
                    for i in 0..3 {
                        w[i] = (0..3).fold(0, |acc, j| (acc + mat[i][j] * v[j]) % 3);
                    }
                    points.iter().position(|p| *p == normalize(w)).unwrap() as u16
                })
                .collect(),
        )
    };
    let g1 = mat_to_perm([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
    let g2 = mat_to_perm([[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
    PermGroup::generate(13, vec![g1, g2], cap)
}

/// Mathieu group M11 on 11 points (standard generators).
pub fn m11(cap: usize) -> Result<PermGroup, PermError> {
    let g1 = Perm::parse("(1,2,3,4,5,6,7,8,9,10,11)", 11)?;
    let g2 = Perm::parse("(3,7,11,8)(4,10,5,6)", 11)?;
    PermGroup::generate(11, vec![g1, g2], cap)
}

/// Parse a group alias: Sn, An, Cn, Dn (order 2n), F<p>_<q> (Frobenius),
/// PSL32, PSL33, M11, V4.
pub fn by_name(name: &str, cap: usize) -> Result<PermGroup, PermError> {
    let bad = || PermError::Parse(format!("unknown group name {name:?}"));
    let parse_n = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match name {
        "PSL32" | "PSL(3,2)" | "GL32" => return psl32(cap),
        "PSL33" | "PSL(3,3)" => return psl33(cap),
        "M11" => return m11(cap),
        "V4" => {
            let a = Perm::parse("(1,2)(3,4)", 4)?;
            let b = Perm::parse("(1,3)(2,4)", 4)?;
            return PermGroup::generate(4, vec![a, b], cap);
        }
        "Q8" => {
            let a = Perm::parse("(1,2,3,4)(5,6,7,8)", 8)?;
            let b = Perm::parse("(1,5,3,7)(2,8,4,6)", 8)?;
            return PermGroup::generate(8, vec![a, b], cap);
        }
        _ => {}
    }
    if let Some(rest) = name.strip_prefix('F') {
        // F20 = F5_4 etc.: either total order or p_q.
        if let Some((p, q)) = rest.split_once('_') {
            return frobenius(parse_n(p)?, parse_n(q)?, cap);
        }
        let total = parse_n(rest)?;
        // Interpret as the Frobenius group of that order with p the largest
        // prime factor.
        for p in (2..=total).rev() {
            if total % p == 0 && crate::modp::is_prime_u64(p as u64) && (p - 1) % (total / p) == 0 && total / p > 1
            {
                return frobenius(p, total / p, cap);
            }
        }
        return Err(bad());
    }
    let (head, tail) = name.split_at(1);
    let n = parse_n(tail)?;
    match head {
        "S" => symmetric(n, cap),
        "A" => alternating(n, cap),
        "C" => cyclic(n, cap),
        "D" => dihedral(n, cap),
        _ => Err(bad()),
    }
}

/// One stored group of the small-groups database.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct StoredGroup {
    pub order: usize,
    /// Index within its order (artifact-internal numbering, deterministic for
    /// a fixed generator version; NOT aligned with any external library).
    pub index: usize,
    pub degree: usize,
    pub gens: Vec<String>,
    pub abelian: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GroupDatabase {
    pub max_order: usize,
    /// groups[n] = all isomorphism types of order n (index 0 unused).
    pub groups: Vec<Vec<StoredGroup>>,
}

impl GroupDatabase {
    pub fn load_bundled() -> Result<GroupDatabase, String> {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/groups_le100.json");
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))
    }

    pub fn realize(&self, g: &StoredGroup, cap: usize) -> Result<PermGroup, PermError> {
        let gens: Result<Vec<Perm>, _> =
            g.gens.iter().map(|s| Perm::parse(s, g.degree)).collect();
        PermGroup::generate(g.degree, gens?, cap)
    }

    pub fn all_of_order_at_most(&self, max: usize) -> impl Iterator<Item = &StoredGroup> {
        self.groups
            .iter()
            .take(max.min(self.max_order) + 1)
            .flat_map(|v| v.iter())
    }
}

/// Known number of isomorphism types of groups of each order 1..=100,
/// used to certify completeness of the generated database.
pub const GROUP_COUNTS_LE100: [usize; 100] = [
    1, 1, 1, 2, 1, 2, 1, 5, 2, 2, //
    1, 5, 1, 2, 1, 14, 1, 5, 1, 5, //
    2, 2, 1, 15, 2, 2, 5, 4, 1, 4, //
    1, 51, 1, 2, 1, 14, 1, 2, 2, 14, //
    1, 6, 1, 4, 2, 2, 1, 52, 2, 5, //
    1, 5, 1, 15, 2, 13, 2, 2, 1, 13, //
    1, 2, 4, 267, 1, 4, 1, 5, 1, 4, //
    1, 50, 1, 2, 3, 4, 1, 6, 1, 52, //
    15, 2, 1, 15, 1, 2, 1, 12, 1, 10, //
    1, 4, 2, 2, 1, 231, 1, 5, 2, 16,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_orders() {
        assert_eq!(symmetric(5, 10_000).unwrap().order(), 120);
        assert_eq!(symmetric(6, 10_000).unwrap().order(), 720);
        assert_eq!(alternating(5, 10_000).unwrap().order(), 60);
        assert_eq!(alternating(6, 10_000).unwrap().order(), 360);
        assert_eq!(alternating(4, 10_000).unwrap().order(), 12);
        assert_eq!(cyclic(12, 10_000).unwrap().order(), 12);
        assert_eq!(dihedral(4, 10_000).unwrap().order(), 8);
        assert_eq!(frobenius(5, 4, 10_000).unwrap().order(), 20);
        assert_eq!(frobenius(7, 3, 10_000).unwrap().order(), 21);
    }

    #[test]
    fn exotic_groups() {
        let g = psl32(10_000).unwrap();
        assert_eq!(g.order(), 168);
        assert!(g.is_transitive());
        let g = psl33(10_000).unwrap();
        assert_eq!(g.order(), 5616);
        assert!(g.is_transitive());
        let g = m11(10_000).unwrap();
        assert_eq!(g.order(), 7920);
        assert!(g.is_transitive());
    }

    #[test]
    fn aliases() {
        assert_eq!(by_name("S4", 10_000).unwrap().order(), 24);
        assert_eq!(by_name("D7", 10_000).unwrap().order(), 14);
        assert_eq!(by_name("F20", 10_000).unwrap().order(), 20);
        assert_eq!(by_name("F21", 10_000).unwrap().order(), 21);
        assert_eq!(by_name("F42", 10_000).unwrap().order(), 42);
        assert_eq!(by_name("Q8", 10_000).unwrap().order(), 8);
        assert_eq!(by_name("V4", 10_000).unwrap().order(), 4);
        assert!(by_name("X9", 10_000).is_err());
    }

    #[test]
    fn bundled_database_counts() {
        let db = GroupDatabase::load_bundled().unwrap();
        assert_eq!(db.max_order, 100);
        for n in 1..=100 {
            assert_eq!(db.groups[n].len(), GROUP_COUNTS_LE100[n - 1], "order {n}");
        }
        // spot-realize a few and check basic structure
        let order8: Vec<_> = db.groups[8].iter().collect();
        let mut abelian = 0;
        for g in &order8 {
            let pg = db.realize(g, 1_000).unwrap();
            assert_eq!(pg.order(), 8);
            if g.abelian {
                abelian += 1;
            }
        }
        assert_eq!(abelian, 3); // C8, C4×C2, C2^3
        let order60: Vec<_> = db.groups[60].iter().collect();
        let simple_count = order60
            .iter()
            .filter(|g| {
                let pg = db.realize(g, 1_000).unwrap();
                pg.normal_subgroups().len() == 2
            })
            .count();
        assert_eq!(simple_count, 1); // A5 is the unique simple group of order 60
    }
}
