//! Exact arithmetic in cyclotomic fields Q(ζ_m): rational coordinate vectors
//! over the power basis ζ_m^0, …, ζ_m^{φ(m)−1}, reduced modulo the m-th
//! cyclotomic polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

/// Per-conductor data: Φ_m and a table expressing ζ^j in the power basis.
pub struct CycloContext {
    pub m: u32,
    pub phi: usize,
    /// Coefficients of Φ_m, low to high, monic of degree phi.
    pub cyclotomic_poly: Vec<BigInt>,
    /// For j in 0..table_len, the coordinates of ζ_m^j (integer vectors).
    power_table: Vec<Vec<BigInt>>,
}

static CONTEXTS: RwLock<Option<HashMap<u32, Arc<CycloContext>>>> = RwLock::new(None);

pub fn context(m: u32) -> Arc<CycloContext> {
    assert!(m >= 1);
    {
        let guard = CONTEXTS.read().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(c) = map.get(&m) {
                return c.clone();
            }
        }
    }
    let ctx = Arc::new(CycloContext::build(m));
    let mut guard = CONTEXTS.write().unwrap();
    guard.get_or_insert_with(HashMap::new).insert(m, ctx.clone());
    ctx
}

/// x^n - 1 divided exactly by `div` (monic), over BigInt.
fn poly_div_exact(mut num: Vec<BigInt>, div: &[BigInt]) -> Vec<BigInt> {
    let dn = div.len() - 1;
    debug_assert!(div[dn].is_one());
    let qn = num.len() - 1 - dn;
    let mut q = vec![BigInt::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = num[i + dn].clone();
        q[i] = c.clone();
        if !c.is_zero() {
            for (k, d) in div.iter().enumerate() {
                num[i + k] -= &c * d;
            }
        }
    }
    debug_assert!(num.iter().all(|c| c.is_zero()));
    q
}

fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    // x^m - 1 divided by all Φ_d for proper divisors d of m.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut quot = num;
    for d in 1..m {
        if m % d == 0 {
            let phid = cyclotomic_polynomial(d);
            quot = poly_div_exact(quot, &phid);
        }
    }
    quot
}

impl CycloContext {
    fn build(m: u32) -> CycloContext {
        let phim = cyclotomic_polynomial(m);
        let phi = phim.len() - 1;
        // ζ^j for j beyond phi-1 via x^phi = -(lower part of Φ).
        let table_len = (m as usize).max(2 * phi) + phi + 1;
        let mut power_table: Vec<Vec<BigInt>> = Vec::with_capacity(table_len);
        for j in 0..phi.min(table_len) {
            let mut v = vec![BigInt::zero(); phi];
            v[j] = BigInt::one();
            power_table.push(v);
        }
        for j in phi..table_len {
            // x^j = x * x^{j-1}; shift then reduce the overflow coefficient.
            let prev = &power_table[j - 1];
            let mut v = vec![BigInt::zero(); phi];
            for k in 1..phi {
                v[k] = prev[k - 1].clone();
            }
            let top = prev[phi - 1].clone();
            if !top.is_zero() {
                for k in 0..phi {
                    v[k] -= &top * &phim[k];
                }
            }
            power_table.push(v);
        }
        CycloContext { m, phi, cyclotomic_poly: phim, power_table }
    }

    pub fn power_basis_row(&self, j: usize) -> &[BigInt] {
        &self.power_table[j % self.m as usize]
    }
}

/// An element of Q(ζ_m).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    pub conductor: u32,
    pub coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        let ctx = context(m);
        Cyclotomic { conductor: m, coeffs: vec![BigRational::zero(); ctx.phi] }
    }

    pub fn from_rational(q: BigRational, m: u32) -> Self {
        let mut z = Cyclotomic::zero(m);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(n: i64, m: u32) -> Self {
        Cyclotomic::from_rational(BigRational::from_integer(n.into()), m)
    }

    /// ζ_m^k.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let ctx = context(m);
        let k = k.rem_euclid(m as i64) as usize;
        let coeffs = ctx
            .power_basis_row(k)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Cyclotomic { conductor: m, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.to_rational().map(|q| q.is_integer()).unwrap_or(false)
    }

    /// Embed into Q(ζ_{m2}) where conductor | m2.
    pub fn embed(&self, m2: u32) -> Cyclotomic {
        assert_eq!(m2 % self.conductor, 0, "embed requires conductor | target");
        if m2 == self.conductor {
            return self.clone();
        }
        let step = (m2 / self.conductor) as usize;
        let ctx2 = context(m2);
        let mut out = Cyclotomic::zero(m2);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, b) in ctx2.power_basis_row(j * step).iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[k] += c * BigRational::from_integer(b.clone());
                }
            }
        }
        out
    }

    fn harmonized(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        if a.conductor == b.conductor {
            (a.clone(), b.clone())
        } else {
            let m = num_integer::lcm(a.conductor, b.conductor);
            (a.embed(m), b.embed(m))
        }
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Self::harmonized(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Self::harmonized(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Cyclotomic {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c = -c.clone();
        }
        a
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        let mut a = self.clone();
        for c in a.coeffs.iter_mut() {
            *c *= q;
        }
        a
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Self::harmonized(self, other);
        let ctx = context(a.conductor);
        let phi = ctx.phi;
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out = Cyclotomic::zero(a.conductor);
        for (j, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < phi {
                out.coeffs[j] += c;
            } else {
                for (k, b) in ctx.power_table[j].iter().enumerate() {
                    if !b.is_zero() {
                        out.coeffs[k] += &c * BigRational::from_integer(b.clone());
                    }
                }
            }
        }
        out
    }

    /// Galois map ζ ↦ ζ^k (requires gcd(k, m) = 1).
    pub fn galois(&self, k: i64) -> Cyclotomic {
        let m = self.conductor;
        let k = k.rem_euclid(m as i64) as u32;
        assert_eq!(num_integer::gcd(k, m), 1, "galois exponent must be coprime to conductor");
        let ctx = context(m);
        let mut out = Cyclotomic::zero(m);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = (j as u64 * k as u64 % m as u64) as usize;
            for (t, b) in ctx.power_basis_row(idx).iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[t] += c * BigRational::from_integer(b.clone());
                }
            }
        }
        out
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Cyclotomic {
        if self.conductor <= 2 {
            self.clone()
        } else {
            self.galois(self.conductor as i64 - 1)
        }
    }

    pub fn eq_value(&self, other: &Cyclotomic) -> bool {
        let (a, b) = Self::harmonized(self, other);
        a.coeffs == b.coeffs
    }

    /// Deterministic total order on values within a fixed conductor.
    pub fn cmp_key(&self) -> Vec<BigRational> {
        self.coeffs.clone()
    }

    /// Approximate complex value (for display only, never for decisions).
    pub fn approx(&self) -> (f64, f64) {
        use std::f64::consts::TAU;
        let m = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = rational_to_f64(c);
            re += v * (TAU * j as f64 / m).cos();
            im += v * (TAU * j as f64 / m).sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.eq_value(other)
    }
}
impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                if j == 0 {
                    format!("{c}")
                } else if c.is_one() {
                    format!("z{}^{j}", self.conductor)
                } else {
                    format!("{c}*z{}^{j}", self.conductor)
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    let num = q.numer();
    let den = q.denom();
    // Good enough for display and the analytic module's inputs.
    let fnum: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let fden: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    fnum / fden
}

/// Serialize a rational as "p/q" (or "p" when the denominator is 1).
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_from_string(s: &str) -> Option<BigRational> {
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts.next()?.trim().parse().ok()?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Euler's totient, by trial factorization.
pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}
