//! Exact character tables by the Burnside–Dixon method: diagonalize the
//! class-multiplication matrices over F_p (p ≡ 1 mod exponent, p > 2|G|) and
//! lift eigenvector entries to exact cyclotomic values through discrete
//! logarithms of roots of unity.

use crate::cyclo::{rational_from_string, rational_to_string, Cyclotomic};
use crate::modp::{dixon_prime, poly_roots_scan, Fp, MatFp};
use crate::perm::{PermError, PermGroup};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CharError {
    #[error("class function belongs to a different group (lengths {0} vs {1})")]
    GroupMismatch(usize, usize),
    #[error("inner product of characters must be rational; got a non-rational value (table bug)")]
    NonRationalInnerProduct,
    #[error("class function is not a genuine character")]
    NotACharacter,
    #[error("character is not irreducible")]
    NotIrreducible,
    #[error("subgroup element not contained in parent group")]
    NotSubgroup,
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A class function: one cyclotomic value per conjugacy class, in the
/// group's canonical class order.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn from_rationals(vals: Vec<BigRational>, conductor: u32) -> Self {
        ClassFunction {
            values: vals.into_iter().map(|q| Cyclotomic::from_rational(q, conductor)).collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|v| v.scale(q)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// A virtual character: an exact rational multiplicity vector over the
/// irreducibles of a fixed table.
#[derive(Clone, Debug, PartialEq)]
pub struct VirtualCharacter {
    pub mults: Vec<BigRational>,
}

impl VirtualCharacter {
    pub fn to_class_function(&self, t: &CharacterTable) -> ClassFunction {
        t.from_mults(&self.mults)
    }

    pub fn from_class_function(t: &CharacterTable, f: &ClassFunction) -> Result<Self, CharError> {
        Ok(VirtualCharacter { mults: t.decompose(f)? })
    }

    pub fn is_genuine_character(&self) -> bool {
        self.mults.iter().all(|m| m.is_integer() && !m.is_negative())
    }

    pub fn dimension(&self, t: &CharacterTable) -> BigRational {
        self.mults
            .iter()
            .zip(&t.degrees)
            .map(|(m, &d)| m * BigRational::from_integer((d as i64).into()))
            .sum()
    }
}

/// A subgroup realized as a permutation group of its own, with translation
/// maps to and from the parent group's element ids.
pub struct SubgroupGroup {
    pub group: PermGroup,
    /// subgroup element id -> parent element id
    pub to_parent: Vec<usize>,
    /// parent element id -> subgroup element id (usize::MAX if absent)
    pub from_parent: Vec<usize>,
}

impl SubgroupGroup {
    pub fn from_gens(parent: &PermGroup, sub_gens: &[usize]) -> SubgroupGroup {
        let (group, to_parent) = parent.subgroup_as_group(sub_gens);
        let mut from_parent = vec![usize::MAX; parent.order()];
        for (sid, &pid) in to_parent.iter().enumerate() {
            from_parent[pid] = sid;
        }
        SubgroupGroup { group, to_parent, from_parent }
    }

    pub fn contains_parent_elem(&self, pid: usize) -> bool {
        self.from_parent[pid] != usize::MAX
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group_order: usize,
    pub conductor: u32,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    /// Class of the inverses of each class.
    pub inverse_classes: Vec<usize>,
    /// power_map[k][j] = class of rep(k)^j, for j in 0..exponent.
    pub power_map: Vec<Vec<usize>>,
    pub irreducibles: Vec<ClassFunction>,
    pub degrees: Vec<usize>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn trivial_character(&self) -> ClassFunction {
        ClassFunction::from_rationals(
            vec![BigRational::one(); self.num_classes()],
            self.conductor,
        )
    }

    pub fn regular_character(&self) -> ClassFunction {
        let mut vals = vec![BigRational::zero(); self.num_classes()];
        vals[0] = BigRational::from_integer((self.group_order as i64).into());
        ClassFunction::from_rationals(vals, self.conductor)
    }

    /// ⟨f1, f2⟩ = (1/|G|) Σ_k |C_k| f1(k) conj(f2(k)), exact.
    pub fn inner_product(&self, f1: &ClassFunction, f2: &ClassFunction) -> Result<Cyclotomic, CharError> {
        if f1.values.len() != self.num_classes() || f2.values.len() != self.num_classes() {
            return Err(CharError::GroupMismatch(f1.values.len(), f2.values.len()));
        }
        let mut acc = Cyclotomic::zero(self.conductor);
        for k in 0..self.num_classes() {
            let term = f1.values[k].mul(&f2.values[k].conj());
            acc = acc.add(&term.scale(&BigRational::from_integer((self.class_sizes[k] as i64).into())));
        }
        Ok(acc.scale(&BigRational::new(1.into(), (self.group_order as i64).into())))
    }

    /// Inner product that must come out rational (characters are
    /// Galois-stable pairs); a non-rational result is a hard error.
    pub fn inner_product_rational(&self, f1: &ClassFunction, f2: &ClassFunction) -> Result<BigRational, CharError> {
        self.inner_product(f1, f2)?
            .to_rational()
            .ok_or(CharError::NonRationalInnerProduct)
    }

    /// Decompose a class function into irreducible multiplicities.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<BigRational>, CharError> {
        self.irreducibles
            .iter()
            .map(|chi| self.inner_product_rational(f, chi))
            .collect()
    }

    /// Build a class function from multiplicities over Irr(G).
    pub fn from_mults(&self, mults: &[BigRational]) -> ClassFunction {
        let mut acc = ClassFunction {
            values: vec![Cyclotomic::zero(self.conductor); self.num_classes()],
        };
        for (chi, m) in self.irreducibles.iter().zip(mults) {
            if !m.is_zero() {
                acc = acc.add(&chi.scale(m));
            }
        }
        acc
    }

    /// Element ids of ker χ = {g : χ(g) = χ(1)} in the given group (which
    /// must be the group this table belongs to).
    pub fn kernel_of_character(&self, g: &PermGroup, chi: &ClassFunction) -> Result<crate::bitset::BitSet, CharError> {
        // Genuine character: non-negative integer multiplicities.
        for m in self.decompose(chi)? {
            if !m.is_integer() || m.is_negative() {
                return Err(CharError::NotACharacter);
            }
        }
        let mut set = crate::bitset::BitSet::new(g.order());
        for (k, c) in g.classes().iter().enumerate() {
            if chi.values[k].eq_value(&chi.values[0]) {
                for &m in &c.members {
                    set.insert(m);
                }
            }
        }
        Ok(set)
    }

    /// Kernel as a set of class ids (no group needed).
    pub fn kernel_classes(&self, chi: &ClassFunction) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&k| chi.values[k].eq_value(&chi.values[0]))
            .collect()
    }

    /// det(1 − ρ(g) T) ∈ Q(ζ)[T] for an irreducible ρ, via Newton's
    /// identities from the power sums p_j = χ(g^j).
    pub fn char_poly_of_element(&self, chi_index: usize, class: usize) -> Vec<Cyclotomic> {
        let chi = &self.irreducibles[chi_index];
        let d = self.degrees[chi_index];
        let e = self.power_map[0].len();
        // Power sums p_j, j = 1..d.
        let p: Vec<Cyclotomic> = (1..=d)
            .map(|j| chi.values[self.power_map[class][j % e]].clone())
            .collect();
        // Newton: i*e_i = Σ_{j=1..i} (-1)^{j-1} e_{i-j} p_j.
        let mut es: Vec<Cyclotomic> = vec![Cyclotomic::from_integer(1, self.conductor)];
        for i in 1..=d {
            let mut acc = Cyclotomic::zero(self.conductor);
            for j in 1..=i {
                let term = es[i - j].mul(&p[j - 1]);
                if j % 2 == 1 {
                    acc = acc.add(&term);
                } else {
                    acc = acc.sub(&term);
                }
            }
            es.push(acc.scale(&BigRational::new(1.into(), (i as i64).into())));
        }
        // det(1 - ρ(g)T) = Σ (-1)^i e_i T^i.
        let coeffs: Vec<Cyclotomic> = es
            .into_iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c } else { c.neg() })
            .collect();
        // Coefficients are algebraic integers: integer coordinates.
        debug_assert!(coeffs
            .iter()
            .all(|c| c.coeffs.iter().all(|q| q.is_integer())));
        coeffs
    }
}

/// Compute the character table of a group.
pub fn character_table(g: &PermGroup) -> CharacterTable {
    let r = g.num_classes();
    let n = g.order();
    let e = g.exponent() as u64;
    let p = dixon_prime(e, (2 * n as u64).max(e).max(r as u64));
    let f = Fp::new(p);

    let class_sizes: Vec<usize> = g.classes().iter().map(|c| c.size).collect();
    let class_orders: Vec<usize> = g.classes().iter().map(|c| c.order).collect();
    let inverse_classes: Vec<usize> = (0..r).map(|k| g.class_inverse(k)).collect();
    let power_map: Vec<Vec<usize>> =
        (0..r).map(|k| (0..e as usize).map(|j| g.class_power(k, j)).collect()).collect();

    // Class multiplication coefficients: a[i][j][k] = #{x in C_i : x^{-1} z_k in C_j}
    // for a fixed representative z_k of C_k; M_i w = ω_i w for the central
    // character vector w = (ω_k).
    let mut mats: Vec<MatFp> = (0..r).map(|_| MatFp::zero(r, r)).collect();
    for k in 0..r {
        let z = g.classes()[k].rep;
        for i in 0..r {
            for &x in &g.classes()[i].members {
                let j = g.class_of(g.mul(g.inv(x), z));
                let cur = mats[i].at(j, k);
                mats[i].set(j, k, cur + 1);
            }
        }
    }
    for m in mats.iter_mut() {
        for v in m.a.iter_mut() {
            *v %= p;
        }
    }

    // Simultaneous diagonalization: split the common eigenspaces one class
    // matrix at a time.
    let mut subspaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for mi in 1..r {
        if subspaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in subspaces.into_iter() {
            let k = basis.len();
            if k == 1 {
                next.push(basis);
                continue;
            }
            // Restriction A of M on span(basis): M B = B A.
            let a = restrict_matrix(&mats[mi], &basis, f);
            let cp = a.charpoly(f);
            let roots = poly_roots_scan(&cp, f);
            let mut total = 0;
            for lam in roots {
                // Nullspace of (A - lam I).
                let mut am = a.clone();
                for i in 0..k {
                    am.set(i, i, f.sub(am.at(i, i), lam));
                }
                let ns = am.nullspace(f);
                if ns.is_empty() {
                    continue;
                }
                total += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|coef| {
                        let mut v = vec![0u64; r];
                        for (bi, b) in basis.iter().enumerate() {
                            for t in 0..r {
                                v[t] = f.add(v[t], f.mul(coef[bi], b[t]));
                            }
                        }
                        v
                    })
                    .collect();
                next.push(sub);
            }
            assert_eq!(total, k, "class matrix failed to split over F_p");
        }
        subspaces = next;
    }
    assert!(
        subspaces.iter().all(|s| s.len() == 1),
        "class matrices did not fully split; table construction bug"
    );

    // Central characters ω_k = |C_k| χ(g_k) / χ(1), normalized at identity.
    let mut omegas: Vec<Vec<u64>> = Vec::with_capacity(r);
    for s in subspaces {
        let w = &s[0];
        assert_ne!(w[0] % p, 0, "eigenvector with vanishing identity coordinate");
        let scale = f.inv(w[0]);
        omegas.push(w.iter().map(|&x| f.mul(x, scale)).collect());
    }

    // Degrees: d^2 = |G| / Σ_k ω_k ω_{k*} / |C_k|.
    let n_mod = (n as u64) % p;
    let mut degrees_raw: Vec<usize> = Vec::with_capacity(r);
    for w in &omegas {
        let mut s = 0u64;
        for k in 0..r {
            let t = f.mul(w[k], w[inverse_classes[k]]);
            s = f.add(s, f.mul(t, f.inv(class_sizes[k] as u64 % p)));
        }
        let d2 = f.mul(n_mod, f.inv(s));
        let d = (1..=n).find(|&d| f.mul(d as u64 % p, d as u64 % p) == d2);
        degrees_raw.push(d.expect("no integer degree matches d^2 mod p"));
    }

    // Lift to exact cyclotomic values. Fix a primitive e-th root z in F_p;
    // the lift is the table under the embedding ζ_e ↦ z (any choice yields
    // the same complete set of irreducibles).
    let z = f.pow(f.primitive_root(), (p - 1) / e);
    let conductor = e as u32;
    let mut irreducibles: Vec<ClassFunction> = Vec::with_capacity(r);
    for (w, &d) in omegas.iter().zip(&degrees_raw) {
        let chi_mod = |k: usize| -> u64 {
            f.mul(d as u64 % p, f.mul(w[k], f.inv(class_sizes[k] as u64 % p)))
        };
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let h = class_orders[k] as u64;
            let zh = f.pow(z, e / h); // primitive h-th root
            let hinv = f.inv(h % p);
            let mut val = Cyclotomic::zero(conductor);
            let mut total = 0u64;
            for v in 0..h {
                // multiplicity of eigenvalue ζ_h^v in ρ(g_k)
                let mut s = 0u64;
                for j in 0..h {
                    let x = chi_mod(power_map[k][j as usize]);
                    s = f.add(s, f.mul(x, f.pow(zh, (h - v) % h * j % h)));
                }
                let m = f.mul(s, hinv);
                assert!(m <= d as u64, "eigenvalue multiplicity {m} exceeds degree {d}");
                total += m;
                if m > 0 {
                    let root = Cyclotomic::root_of_unity(conductor, (e / h * v) as i64);
                    val = val.add(&root.scale(&BigRational::from_integer((m as i64).into())));
                }
            }
            assert_eq!(total, d as u64, "eigenvalue multiplicities do not sum to the degree");
            values.push(val);
        }
        irreducibles.push(ClassFunction { values });
    }

    // Canonical ordering: by degree, then lexicographically on values.
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| {
        degrees_raw[a].cmp(&degrees_raw[b]).then_with(|| {
            for k in 0..r {
                let ka = irreducibles[a].values[k].cmp_key();
                let kb = irreducibles[b].values[k].cmp_key();
                match ka.partial_cmp(&kb).unwrap() {
                    std::cmp::Ordering::Equal => continue,
                    o => return o,
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    let irreducibles: Vec<ClassFunction> = order.iter().map(|&i| irreducibles[i].clone()).collect();
    let degrees: Vec<usize> = order.iter().map(|&i| degrees_raw[i]).collect();

    assert_eq!(degrees.iter().map(|d| d * d).sum::<usize>(), n, "Σ deg² = |G| violated");

    CharacterTable {
        group_order: n,
        conductor,
        class_sizes,
        class_orders,
        inverse_classes,
        power_map,
        irreducibles,
        degrees,
    }
}

fn restrict_matrix(m: &MatFp, basis: &[Vec<u64>], f: Fp) -> MatFp {
    let r = basis[0].len();
    let k = basis.len();
    // Columns of B are basis vectors; solve B A = M B by elimination on [B | MB].
    let mut aug = MatFp::zero(r, 2 * k);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..r {
            aug.set(i, j, b[i]);
        }
        // (M b)_i
        for i in 0..r {
            let mut s = 0u64;
            for t in 0..r {
                s = f.add(s, f.mul(m.at(i, t), b[t]));
            }
            aug.set(i, k + j, s);
        }
    }
    // Row reduce the left block.
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let piv = (row..r).find(|&i| aug.at(i, col) != 0).expect("basis not independent");
        for j2 in 0..2 * k {
            let t = aug.at(row, j2);
            aug.set(row, j2, aug.at(piv, j2));
            aug.set(piv, j2, t);
        }
        let inv = f.inv(aug.at(row, col));
        for j2 in 0..2 * k {
            aug.set(row, j2, f.mul(aug.at(row, j2), inv));
        }
        for i in 0..r {
            if i != row && aug.at(i, col) != 0 {
                let factor = aug.at(i, col);
                for j2 in 0..2 * k {
                    let t = f.sub(aug.at(i, j2), f.mul(factor, aug.at(row, j2)));
                    aug.set(i, j2, t);
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    let mut a = MatFp::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            a.set(i, j, aug.at(i, k + j));
        }
    }
    a
}

/// Verify both orthogonality relations exactly. Cost is O(r^3) cyclotomic
/// multiplications; intended for tests and post-construction audits.
pub fn verify_orthogonality(t: &CharacterTable) -> Result<(), CharError> {
    let r = t.num_classes();
    for i in 0..r {
        for j in i..r {
            let ip = t.inner_product_rational(&t.irreducibles[i], &t.irreducibles[j])?;
            let expected = if i == j { BigRational::one() } else { BigRational::zero() };
            if ip != expected {
                return Err(CharError::NonRationalInnerProduct);
            }
        }
    }
    // Column orthogonality: Σ_χ χ(k) conj(χ(l)) = δ_kl |G| / |C_k|.
    for k in 0..r {
        for l in k..r {
            let mut acc = Cyclotomic::zero(t.conductor);
            for chi in &t.irreducibles {
                acc = acc.add(&chi.values[k].mul(&chi.values[l].conj()));
            }
            let expected = if k == l {
                Cyclotomic::from_rational(
                    BigRational::new((t.group_order as i64).into(), (t.class_sizes[k] as i64).into()),
                    t.conductor,
                )
            } else {
                Cyclotomic::zero(t.conductor)
            };
            if !acc.eq_value(&expected) {
                return Err(CharError::NonRationalInnerProduct);
            }
        }
    }
    Ok(())
}

/// (Ind_H^G χ)(g) = (|C_G(g)|/|H|) Σ_{y ∈ C(g) ∩ H} χ(y).
pub fn induce(g: &PermGroup, h: &SubgroupGroup, chi: &ClassFunction) -> ClassFunction {
    let values = g
        .classes()
        .iter()
        .map(|c| {
            let mut acc: Option<Cyclotomic> = None;
            for &y in &c.members {
                let sid = h.from_parent[y];
                if sid == usize::MAX {
                    continue;
                }
                let v = &chi.values[h.group.class_of(sid)];
                acc = Some(match acc {
                    None => v.clone(),
                    Some(a) => a.add(v),
                });
            }
            let centralizer = BigRational::new(
                (g.order() as i64).into(),
                (c.size as i64).into(),
            );
            let scale = centralizer / BigRational::from_integer((h.group.order() as i64).into());
            match acc {
                None => Cyclotomic::zero(chi.values[0].conductor),
                Some(a) => a.scale(&scale),
            }
        })
        .collect();
    ClassFunction { values }
}

/// Restriction of a class function on G to the subgroup H.
pub fn restrict(g: &PermGroup, h: &SubgroupGroup, chi: &ClassFunction) -> ClassFunction {
    let values = h
        .group
        .classes()
        .iter()
        .map(|c| chi.values[g.class_of(h.to_parent[c.rep])].clone())
        .collect();
    ClassFunction { values }
}

/// The one-dimensional characters of H, as pullbacks of the character table
/// of the abelianization H/[H,H].
pub fn one_dim_characters(h: &PermGroup) -> Vec<ClassFunction> {
    let gen_ids: Vec<usize> = h.gens.iter().map(|p| h.id_of(p).unwrap()).collect();
    let full: crate::bitset::BitSet = {
        let mut s = crate::bitset::BitSet::new(h.order());
        for i in 0..h.order() {
            s.insert(i);
        }
        s
    };
    let derived = h.derived_subgroup_of(&gen_ids, &full);
    let (q, elem_map) = h.quotient(&derived, h.order() + 1).expect("derived subgroup is normal");
    let qt = character_table(&q);
    debug_assert!(qt.degrees.iter().all(|&d| d == 1));
    qt.irreducibles
        .iter()
        .map(|chi| ClassFunction {
            values: h
                .classes()
                .iter()
                .map(|c| chi.values[q.class_of(elem_map[c.rep])].clone())
                .collect(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Fast exact product check for the regular-character identity.

/// Π over ρ ∈ Irr(G) of det(1 − ρ(g)T)^{deg ρ} = (1 − T^{ord g})^{|G|/ord g}.
/// Exact integer cyclotomic arithmetic with i128 coordinates (overflow
/// checked); feasible for every group of order ≤ 100.
pub fn regular_charpoly_identity_holds(t: &CharacterTable, class: usize) -> bool {
    let ctx = crate::cyclo::context(t.conductor);
    let phi = ctx.phi;
    let to_int = |c: &Cyclotomic| -> Vec<i128> {
        c.embed(t.conductor)
            .coeffs
            .iter()
            .map(|q| {
                assert!(q.is_integer());
                let s = q.numer().to_string();
                s.parse::<i128>().expect("coefficient exceeds i128")
            })
            .collect()
    };
    // Reduction rows as i128.
    let row_i128 = |j: usize| -> Vec<i128> {
        ctx.power_basis_row(j).iter().map(|b| {
            b.to_string().parse::<i128>().expect("reduction row exceeds i128")
        }).collect()
    };
    let mul_coeff = |a: &[i128], b: &[i128]| -> Vec<i128> {
        let mut conv = vec![0i128; 2 * phi - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    conv[i + j] = conv[i + j].checked_add(x.checked_mul(y).unwrap()).unwrap();
                }
            }
        }
        let mut out = vec![0i128; phi];
        for (j, c) in conv.into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            if j < phi {
                out[j] = out[j].checked_add(c).unwrap();
            } else {
                for (k, b) in row_i128(j).iter().enumerate() {
                    if *b != 0 {
                        out[k] = out[k].checked_add(c.checked_mul(*b).unwrap()).unwrap();
                    }
                }
            }
        }
        out
    };
    // Accumulate the product polynomial in T, coefficients in Z[ζ].
    let mut prod: Vec<Vec<i128>> = vec![{
        let mut v = vec![0i128; phi];
        v[0] = 1;
        v
    }];
    for (idx, &d) in t.degrees.iter().enumerate() {
        let factor: Vec<Vec<i128>> =
            t.char_poly_of_element(idx, class).iter().map(|c| to_int(c)).collect();
        for _ in 0..d {
            let mut next = vec![vec![0i128; phi]; prod.len() + factor.len() - 1];
            for (i, a) in prod.iter().enumerate() {
                if a.iter().all(|&x| x == 0) {
                    continue;
                }
                for (j, b) in factor.iter().enumerate() {
                    if b.iter().all(|&x| x == 0) {
                        continue;
                    }
                    let m = mul_coeff(a, b);
                    for (k, v) in m.into_iter().enumerate() {
                        next[i + j][k] = next[i + j][k].checked_add(v).unwrap();
                    }
                }
            }
            prod = next;
        }
    }
    // Expected: (1 - T^h)^{|G|/h}.
    let h = t.class_orders[class];
    let reps = t.group_order / h;
    let mut expect: Vec<i128> = vec![0; h * reps + 1];
    // binomial expansion with alternating signs
    let mut binom: i128 = 1;
    for k in 0..=reps {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        expect[k * h] = sign * binom;
        binom = binom * (reps as i128 - k as i128) / (k as i128 + 1);
    }
    if prod.len() != expect.len() {
        return false;
    }
    prod.iter().enumerate().all(|(i, c)| {
        c[0] == expect[i] && c[1..].iter().all(|&x| x == 0)
    })
}

// ---------------------------------------------------------------------------
// JSON serialization

#[derive(Serialize, Deserialize)]
pub struct TableJson {
    pub group_order: usize,
    pub conductor: u32,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub inverse_classes: Vec<usize>,
    pub power_map: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    /// values[i][k] = coordinates of χ_i(g_k), rationals as "p/q" strings.
    pub values: Vec<Vec<Vec<String>>>,
}

impl CharacterTable {
    pub fn to_json(&self) -> TableJson {
        TableJson {
            group_order: self.group_order,
            conductor: self.conductor,
            class_sizes: self.class_sizes.clone(),
            class_orders: self.class_orders.clone(),
            inverse_classes: self.inverse_classes.clone(),
            power_map: self.power_map.clone(),
            degrees: self.degrees.clone(),
            values: self
                .irreducibles
                .iter()
                .map(|chi| {
                    chi.values
                        .iter()
                        .map(|v| v.coeffs.iter().map(rational_to_string).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(j: &TableJson) -> Option<CharacterTable> {
        let irreducibles = j
            .values
            .iter()
            .map(|chi| {
                let values = chi
                    .iter()
                    .map(|v| {
                        let coeffs: Option<Vec<BigRational>> =
                            v.iter().map(|s| rational_from_string(s)).collect();
                        Some(Cyclotomic { conductor: j.conductor, coeffs: coeffs? })
                    })
                    .collect::<Option<Vec<_>>>()?;
                Some(ClassFunction { values })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(CharacterTable {
            group_order: j.group_order,
            conductor: j.conductor,
            class_sizes: j.class_sizes.clone(),
            class_orders: j.class_orders.clone(),
            inverse_classes: j.inverse_classes.clone(),
            power_map: j.power_map.clone(),
            irreducibles,
            degrees: j.degrees.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallgroups::{alternating, by_name, cyclic, dihedral, symmetric};

    #[test]
    fn c2_table() {
        let g = cyclic(2, 100).unwrap();
        let t = character_table(&g);
        assert_eq!(t.degrees, vec![1, 1]);
        verify_orthogonality(&t).unwrap();
    }

    #[test]
    fn s4_degrees() {
        let g = symmetric(4, 100).unwrap();
        let t = character_table(&g);
        let mut d = t.degrees.clone();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 2, 3, 3]);
        verify_orthogonality(&t).unwrap();
    }

    #[test]
    fn s5_degrees_and_orthogonality() {
        let g = symmetric(5, 1000).unwrap();
        let t = character_table(&g);
        let mut d = t.degrees.clone();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 4, 4, 5, 5, 6]);
        verify_orthogonality(&t).unwrap();
    }

    #[test]
    fn a5_and_d4_tables() {
        let g = alternating(5, 1000).unwrap();
        let t = character_table(&g);
        let mut d = t.degrees.clone();
        d.sort_unstable();
        assert_eq!(d, vec![1, 3, 3, 4, 5]);
        verify_orthogonality(&t).unwrap();

        let g = dihedral(4, 100).unwrap();
        let t = character_table(&g);
        let mut d = t.degrees.clone();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 2]);
        verify_orthogonality(&t).unwrap();
    }

    #[test]
    fn q8_table_exact_values() {
        let g = by_name("Q8", 100).unwrap();
        let t = character_table(&g);
        let mut d = t.degrees.clone();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 2]);
        verify_orthogonality(&t).unwrap();
        // The 2-dim character takes value -2 at the central involution.
        let two = t.degrees.iter().position(|&d| d == 2).unwrap();
        let central = (0..t.num_classes())
            .find(|&k| t.class_orders[k] == 2)
            .unwrap();
        assert!(t.irreducibles[two].values[central]
            .eq_value(&Cyclotomic::from_integer(-2, t.conductor)));
    }

    #[test]
    fn regular_decomposes_by_degrees() {
        let g = symmetric(4, 100).unwrap();
        let t = character_table(&g);
        let reg = t.regular_character();
        let mults = t.decompose(&reg).unwrap();
        for (m, &d) in mults.iter().zip(&t.degrees) {
            assert_eq!(*m, BigRational::from_integer((d as i64).into()));
        }
    }

    #[test]
    fn kernel_of_sign_is_a5() {
        let g = symmetric(5, 1000).unwrap();
        let t = character_table(&g);
        // sgn: the degree-1 character that is not trivial.
        let sgn = (0..t.irreducibles.len())
            .find(|&i| t.degrees[i] == 1 && !t.irreducibles[i].values.iter().all(|v| v.eq_value(&Cyclotomic::from_integer(1, t.conductor))))
            .unwrap();
        let ker = t.kernel_of_character(&g, &t.irreducibles[sgn]).unwrap();
        assert_eq!(ker.count(), 60);
        // trivial character: kernel = G.
        let ker = t.kernel_of_character(&g, &t.trivial_character()).unwrap();
        assert_eq!(ker.count(), 120);
    }

    #[test]
    fn induce_trivial_from_trivial_subgroup_is_regular() {
        let g = symmetric(4, 100).unwrap();
        let t = character_table(&g);
        let h = SubgroupGroup::from_gens(&g, &[]);
        assert_eq!(h.group.order(), 1);
        let chi = ClassFunction::from_rationals(vec![BigRational::one()], 1);
        let ind = induce(&g, &h, &chi);
        let reg = t.regular_character();
        for (a, b) in ind.values.iter().zip(&reg.values) {
            assert!(a.eq_value(b));
        }
    }

    #[test]
    fn frobenius_reciprocity_s4_c4() {
        let g = symmetric(4, 100).unwrap();
        let t = character_table(&g);
        // H = <(1,2,3,4)>
        let c4 = g.id_of(&crate::perm::Perm::parse("(1,2,3,4)", 4).unwrap()).unwrap();
        let h = SubgroupGroup::from_gens(&g, &[c4]);
        assert_eq!(h.group.order(), 4);
        let ht = character_table(&h.group);
        for chi in &ht.irreducibles {
            let ind = induce(&g, &h, chi);
            for (ri, rho) in t.irreducibles.iter().enumerate() {
                let lhs = t.inner_product_rational(&ind, rho).unwrap();
                let res = restrict(&g, &h, rho);
                let rhs = ht.inner_product_rational(chi, &res).unwrap();
                assert_eq!(lhs, rhs, "reciprocity failed at irreducible {ri}");
                assert!(lhs.is_integer() && !lhs.is_negative());
            }
        }
    }

    #[test]
    fn one_dim_characters_counts() {
        let d4 = dihedral(4, 100).unwrap();
        assert_eq!(one_dim_characters(&d4).len(), 4);
        let a5 = alternating(5, 1000).unwrap();
        assert_eq!(one_dim_characters(&a5).len(), 1);
        let c6 = cyclic(6, 100).unwrap();
        let chars = one_dim_characters(&c6);
        assert_eq!(chars.len(), 6);
        // Each is multiplicative of degree 1.
        for chi in &chars {
            assert!(chi.values[0].eq_value(&Cyclotomic::from_integer(1, chi.values[0].conductor)));
        }
    }

    #[test]
    fn char_poly_examples() {
        let g = symmetric(5, 1000).unwrap();
        let t = character_table(&g);
        // trivial character, any g: 1 - T.
        let triv = (0..7)
            .find(|&i| t.degrees[i] == 1 && t.irreducibles[i].values.iter().all(|v| v.eq_value(&Cyclotomic::from_integer(1, t.conductor))))
            .unwrap();
        let cp = t.char_poly_of_element(triv, 3);
        assert_eq!(cp.len(), 2);
        assert!(cp[0].eq_value(&Cyclotomic::from_integer(1, t.conductor)));
        assert!(cp[1].eq_value(&Cyclotomic::from_integer(-1, t.conductor)));
        // sgn at a transposition: 1 + T.
        let sgn = (0..7).find(|&i| t.degrees[i] == 1 && i != triv).unwrap();
        let transposition = (0..7)
            .find(|&k| t.class_orders[k] == 2 && t.class_sizes[k] == 10)
            .unwrap();
        let cp = t.char_poly_of_element(sgn, transposition);
        assert!(cp[1].eq_value(&Cyclotomic::from_integer(1, t.conductor)));
        // rho4 at identity: (1-T)^4 => constant 1, linear -4.
        let rho4 = (0..7).find(|&i| t.degrees[i] == 4).unwrap();
        let cp = t.char_poly_of_element(rho4, 0);
        assert_eq!(cp.len(), 5);
        assert!(cp[1].eq_value(&Cyclotomic::from_integer(-4, t.conductor)));
        assert!(cp[4].eq_value(&Cyclotomic::from_integer(1, t.conductor)));
    }

    #[test]
    fn regular_identity_small_groups() {
        for name in ["C6", "S4", "D4", "Q8", "A4"] {
            let g = by_name(name, 1000).unwrap();
            let t = character_table(&g);
            for k in 0..t.num_classes() {
                assert!(regular_charpoly_identity_holds(&t, k), "{name} class {k}");
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = symmetric(4, 100).unwrap();
        let t = character_table(&g);
        let j = t.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let j2: TableJson = serde_json::from_str(&text).unwrap();
        let t2 = CharacterTable::from_json(&j2).unwrap();
        assert_eq!(t.degrees, t2.degrees);
        for (a, b) in t.irreducibles.iter().zip(&t2.irreducibles) {
            for (x, y) in a.values.iter().zip(&b.values) {
                assert!(x.eq_value(y));
            }
        }
    }
}
