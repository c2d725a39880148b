//! Arithmetic and linear algebra over F_p (p < 2^31), supporting the
//! Dixon modular computation of character tables.

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }
    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    /// A generator of the multiplicative group (p must be prime).
    pub fn primitive_root(&self) -> u64 {
        let phi = self.p - 1;
        let mut fac = Vec::new();
        let mut m = phi;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                fac.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            fac.push(m);
        }
        'outer: for g in 2..self.p {
            for &q in &fac {
                if self.pow(g, phi / q) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("no primitive root found; p not prime?")
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p with p ≡ 1 (mod modulus) and p > lower.
pub fn dixon_prime(modulus: u64, lower: u64) -> u64 {
    let mut p = lower / modulus * modulus + 1;
    while p <= lower || !is_prime_u64(p) {
        p += modulus;
    }
    p
}

/// Dense matrix over F_p, row-major.
#[derive(Clone, Debug)]
pub struct MatFp {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u64>,
}

impl MatFp {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatFp { rows, cols, a: vec![0; rows * cols] }
    }
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.cols + j] = v;
    }
    pub fn mul(&self, other: &MatFp, f: Fp) -> MatFp {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = MatFp::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self.at(i, k);
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.add(out.at(i, j), f.mul(v, other.at(k, j)));
                    out.set(i, j, t);
                }
            }
        }
        out
    }

    /// Basis of the right nullspace, as column vectors.
    pub fn nullspace(&self, f: Fp) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut pivot_col_of_row = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let piv = (r..rows).find(|&i| m.at(i, c) != 0);
            let Some(piv) = piv else { continue };
            for j in 0..cols {
                let t = m.at(r, j);
                m.set(r, j, m.at(piv, j));
                m.set(piv, j, t);
            }
            let inv = f.inv(m.at(r, c));
            for j in 0..cols {
                m.set(r, j, f.mul(m.at(r, j), inv));
            }
            for i in 0..rows {
                if i != r && m.at(i, c) != 0 {
                    let factor = m.at(i, c);
                    for j in 0..cols {
                        let t = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
                        m.set(i, j, t);
                    }
                }
            }
            pivot_col_of_row.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
        let mut basis = Vec::new();
        for c in 0..cols {
            if pivot_cols.contains(&c) {
                continue;
            }
            let mut v = vec![0u64; cols];
            v[c] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(m.at(row, c));
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial (monic, coefficients low to high) via
    /// reduction to upper Hessenberg form by similarity transforms.
    pub fn charpoly(&self, f: Fp) -> Vec<u64> {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let piv = ((j + 1)..n).find(|&i| h.at(i, j) != 0);
            let Some(piv) = piv else { continue };
            if piv != j + 1 {
                for c in 0..n {
                    let t = h.at(j + 1, c);
                    h.set(j + 1, c, h.at(piv, c));
                    h.set(piv, c, t);
                }
                for r in 0..n {
                    let t = h.at(r, j + 1);
                    h.set(r, j + 1, h.at(r, piv));
                    h.set(r, piv, t);
                }
            }
            let inv = f.inv(h.at(j + 1, j));
            for i in (j + 2)..n {
                let factor = f.mul(h.at(i, j), inv);
                if factor == 0 {
                    continue;
                }
                for c in 0..n {
                    let t = f.sub(h.at(i, c), f.mul(factor, h.at(j + 1, c)));
                    h.set(i, c, t);
                }
                for r in 0..n {
                    let t = f.add(h.at(r, j + 1), f.mul(factor, h.at(r, i)));
                    h.set(r, j + 1, t);
                }
            }
        }
        // det(xI - H) for Hessenberg H by the leading-minor recurrence.
        let mut p: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            // (x - h[m-1][m-1]) * p_{m-1}
            let mut cur = poly_mul_linear(&p[m - 1], f.neg(h.at(m - 1, m - 1)), f);
            // minus sum over k of h[m-1-k][m-1] * prod subdiag * p_{m-1-k}
            let mut subprod = 1u64;
            for k in 1..m {
                subprod = f.mul(subprod, h.at(m - k, m - k - 1));
                if subprod == 0 {
                    break;
                }
                let coef = f.mul(h.at(m - 1 - k, m - 1), subprod);
                if coef == 0 {
                    continue;
                }
                for (i, &c) in p[m - 1 - k].iter().enumerate() {
                    cur[i] = f.sub(cur[i], f.mul(coef, c));
                }
            }
            p.push(cur);
        }
        p.pop().unwrap()
    }
}

/// p(x) * (x + c)
fn poly_mul_linear(p: &[u64], c: u64, f: Fp) -> Vec<u64> {
    let mut out = vec![0u64; p.len() + 1];
    for (i, &a) in p.iter().enumerate() {
        out[i + 1] = f.add(out[i + 1], a);
        out[i] = f.add(out[i], f.mul(c, a));
    }
    out
}

pub fn poly_eval(p: &[u64], x: u64, f: Fp) -> u64 {
    let mut acc = 0u64;
    for &c in p.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

/// All roots in F_p of a polynomial, by exhaustive scan (p is small here).
pub fn poly_roots_scan(p: &[u64], f: Fp) -> Vec<u64> {
    (0..f.p).filter(|&x| poly_eval(p, x, f) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let f = Fp::new(101);
        assert_eq!(f.mul(f.inv(37), 37), 1);
        let g = f.primitive_root();
        assert_eq!(f.pow(g, 100), 1);
        assert_ne!(f.pow(g, 50), 1);
        assert_ne!(f.pow(g, 20), 1);
    }

    #[test]
    fn dixon_prime_search() {
        assert_eq!(dixon_prime(60, 240), 241);
        // 301 = 7*43 and 361 = 19^2, so the next one after 241 is 421.
        assert_eq!(dixon_prime(60, 241), 421);
        assert_eq!(dixon_prime(1, 2), 3);
    }

    #[test]
    fn charpoly_and_roots() {
        let f = Fp::new(97);
        // diag(2,3,5) + a nilpotent part; eigenvalues 2,3,5.
        let mut m = MatFp::zero(3, 3);
        m.set(0, 0, 2);
        m.set(1, 1, 3);
        m.set(2, 2, 5);
        m.set(0, 1, 7);
        m.set(0, 2, 11);
        let cp = m.charpoly(f);
        // (x-2)(x-3)(x-5) = x^3 - 10x^2 + 31x - 30
        assert_eq!(cp, vec![97 - 30, 31, 97 - 10, 1]);
        let mut roots = poly_roots_scan(&cp, f);
        roots.sort_unstable();
        assert_eq!(roots, vec![2, 3, 5]);
    }

    #[test]
    fn nullspace_rank() {
        let f = Fp::new(97);
        let mut m = MatFp::zero(2, 3);
        // rows (1,2,3) and (2,4,6): rank 1, nullity 2
        for (j, v) in [1u64, 2, 3].iter().enumerate() {
            m.set(0, j, *v);
            m.set(1, j, 2 * *v);
        }
        let ns = m.nullspace(f);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = (0..3).fold(0, |acc, j| f.add(acc, f.mul(m.at(0, j), v[j])));
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn charpoly_random_vs_trace_det() {
        let f = Fp::new(211);
        let mut m = MatFp::zero(4, 4);
        let vals = [3u64, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3];
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, vals[i * 4 + j]);
            }
        }
        let cp = m.charpoly(f);
        assert_eq!(cp.len(), 5);
        assert_eq!(cp[4], 1);
        // coefficient of x^3 is -trace
        let trace = f.add(f.add(3, 9), f.add(5, 3));
        assert_eq!(cp[3], f.neg(trace));
        // Verify Cayley-Hamilton: p(M) = 0.
        let mut acc = MatFp::zero(4, 4);
        let mut pw = MatFp::zero(4, 4);
        for i in 0..4 {
            pw.set(i, i, 1);
        }
        for &c in cp.iter() {
            for i in 0..4 {
                for j in 0..4 {
                    let t = f.add(acc.at(i, j), f.mul(c, pw.at(i, j)));
                    acc.set(i, j, t);
                }
            }
            pw = pw.mul(&m, f);
        }
        assert!(acc.a.iter().all(|&x| x == 0));
    }
}
