use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::cx::Cx;
use crate::numcore::arith::{divisors, factorize, gcd, lcm, pow_mod};

/// Generators of (Z/q)^× with their orders, in canonical order: odd primes
/// ascending with their smallest primitive root, and for 2^k the pair -1, 5.
#[derive(Debug)]
pub struct UnitGroup {
    pub modulus: u64,
    pub gens: Vec<(u64, u64)>,
    pub exponent: u64,
    /// Exponent vector of each unit, `None` for non-units.
    dlog: Vec<Option<Vec<u64>>>,
}

impl UnitGroup {
    fn build(q: u64) -> UnitGroup {
        let mut gens = Vec::new();
        for (p, k) in factorize(q) {
            let pk = p.pow(k);
            let rest = q / pk;
            let mut local: Vec<(u64, u64)> = Vec::new();
            if p == 2 {
                if k >= 2 {
                    local.push((pk - 1, 2));
                }
                if k >= 3 {
                    local.push((5, pk / 4));
                }
            } else {
                let phi = pk / p * (p - 1);
                local.push((primitive_root(p, k), phi));
            }
            for (g, n) in local {
                gens.push((crt_lift(g, pk, rest), n));
            }
        }
        let exponent = gens.iter().fold(1, |e, &(_, n)| lcm(e, n));
        let mut dlog = vec![None; q as usize];
        let radices: Vec<u64> = gens.iter().map(|&(_, n)| n).collect();
        let total: u64 = radices.iter().product();
        for idx in 0..total {
            let x = mixed_radix(idx, &radices);
            let mut v = 1 % q;
            for (&(g, _), &e) in gens.iter().zip(&x) {
                v = v * pow_mod(g, e, q) % q;
            }
            dlog[v as usize] = Some(x);
        }
        UnitGroup { modulus: q, gens, exponent, dlog }
    }

    pub fn order(&self) -> u64 {
        self.gens.iter().map(|&(_, n)| n).product()
    }

    pub fn dlog(&self, n: u64) -> Option<&[u64]> {
        self.dlog[(n % self.modulus) as usize].as_deref()
    }
}

fn mixed_radix(mut idx: u64, radices: &[u64]) -> Vec<u64> {
    let mut x = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        x[i] = idx % radices[i];
        idx /= radices[i];
    }
    x
}

/// Smallest g that generates (Z/p^k)^× for odd p.
fn primitive_root(p: u64, k: u32) -> u64 {
    let pk = p.pow(k);
    let phi = pk / p * (p - 1);
    let fs: Vec<u64> = factorize(phi).into_iter().map(|(f, _)| f).collect();
    (2..pk)
        .find(|&g| gcd(g, p) == 1 && fs.iter().all(|&f| pow_mod(g, phi / f, pk) != 1))
        .expect("odd prime powers are cyclic")
}

/// x with x ≡ g (mod pk) and x ≡ 1 (mod rest).
fn crt_lift(g: u64, pk: u64, rest: u64) -> u64 {
    let q = pk * rest;
    (0..rest).map(|t| g + t * pk).find(|&x| x % rest == 1 % rest).unwrap_or(g) % q
}

pub fn unit_group(q: u64) -> Arc<UnitGroup> {
    static C: OnceLock<Mutex<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();
    assert!(q >= 1, "modulus must be positive");
    let m = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = m.lock().expect("unit group cache").get(&q) {
        return g.clone();
    }
    let g = Arc::new(UnitGroup::build(q));
    m.lock().expect("unit group cache").entry(q).or_insert(g).clone()
}

/// A Dirichlet character mod q. Values are stored exactly as angles:
/// χ(n) = exp(2πi · angle(n) / e) with e the exponent of (Z/q)^×.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    exponent: u64,
    angles: Arc<Vec<Option<u64>>>,
    label: u64,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[{}:{}]", self.modulus, self.label)
    }
}

impl DirichletCharacter {
    /// Character with exponent vector `c` over the canonical generators.
    pub fn from_exponents(q: u64, c: &[u64]) -> DirichletCharacter {
        let g = unit_group(q);
        assert_eq!(c.len(), g.gens.len(), "exponent vector length");
        let e = g.exponent;
        let angles = (0..q)
            .map(|n| {
                g.dlog(n).map(|x| {
                    let mut a = 0;
                    for ((&ci, &xi), &(_, ni)) in c.iter().zip(x).zip(&g.gens) {
                        a = (a + ci * xi % ni * (e / ni)) % e;
                    }
                    a
                })
            })
            .collect();
        let label = c.iter().zip(&g.gens).fold(0, |acc, (&ci, &(_, ni))| acc * ni + ci % ni);
        DirichletCharacter { modulus: q, exponent: e, angles: Arc::new(angles), label }
    }

    /// Builds a character from exact angles given as fractions of a full turn
    /// (`num/den`); the exponent vector and label are recovered.
    pub fn from_turns(q: u64, f: impl Fn(u64) -> Option<(u64, u64)>) -> DirichletCharacter {
        let g = unit_group(q);
        let c: Vec<u64> = g
            .gens
            .iter()
            .map(|&(gen, n)| {
                let (num, den) = f(gen).expect("generator is a unit");
                assert_eq!(num * n % den, 0, "value is not an n-th root of unity");
                num * n / den % n
            })
            .collect();
        let chi = Self::from_exponents(q, &c);
        debug_assert!((0..q).all(|a| {
            let want = f(a).map(|(num, den)| num * chi.exponent / den % chi.exponent);
            chi.angle(a) == want
        }));
        chi
    }

    pub fn principal(q: u64) -> DirichletCharacter {
        let n = unit_group(q).gens.len();
        Self::from_exponents(q, &vec![0; n])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self) -> u64 {
        self.label
    }

    /// Exponent e of (Z/q)^×; every value is an e-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Angle numerator over `exponent()`, or `None` when gcd(n, q) > 1.
    pub fn angle(&self, n: u64) -> Option<u64> {
        self.angles[(n % self.modulus) as usize]
    }

    pub fn angle_i64(&self, n: i64) -> Option<u64> {
        self.angle(n.rem_euclid(self.modulus as i64) as u64)
    }

    /// (num, den) in lowest terms with χ(n) = exp(2πi num/den).
    pub fn turns(&self, n: u64) -> Option<(u64, u64)> {
        self.angle(n).map(|a| {
            let g = gcd(a, self.exponent);
            (a / g, self.exponent / g)
        })
    }

    pub fn value(&self, n: u64, prec: u32) -> Cx {
        match self.angle(n) {
            None => Cx::zero(prec),
            Some(a) => root_of_unity(a, self.exponent, prec),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.angles.iter().all(|a| matches!(a, None | Some(0)))
    }

    /// All values real (±1 or 0).
    pub fn is_real(&self) -> bool {
        self.angles.iter().flatten().all(|&a| 2 * a % self.exponent == 0)
    }

    /// v with χ(-1) = (-1)^v.
    pub fn parity(&self) -> u32 {
        match self.angle_i64(-1) {
            Some(0) | None => 0,
            Some(_) => 1,
        }
    }

    pub fn conj(&self) -> DirichletCharacter {
        let e = self.exponent;
        let angles = self.angles.iter().map(|a| a.map(|a| (e - a) % e)).collect();
        let g = unit_group(self.modulus);
        let mut c: Vec<u64> = Vec::new();
        let mut rest = self.label;
        for &(_, n) in g.gens.iter().rev() {
            c.push(rest % n);
            rest /= n;
        }
        c.reverse();
        let label = c.iter().zip(&g.gens).fold(0, |acc, (&ci, &(_, n))| acc * n + (n - ci) % n);
        DirichletCharacter { modulus: self.modulus, exponent: e, angles: Arc::new(angles), label }
    }

    /// Smallest d | q such that χ is trivial on units ≡ 1 (mod d).
    pub fn conductor(&self) -> u64 {
        let q = self.modulus;
        divisors(q)
            .into_iter()
            .find(|&d| (1..q).step_by(d as usize).all(|n| matches!(self.angle(n), None | Some(0))))
            .unwrap_or(q)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character inducing χ.
    pub fn primitive(&self) -> DirichletCharacter {
        let f = self.conductor();
        if f == self.modulus {
            return self.clone();
        }
        let q = self.modulus;
        DirichletCharacter::from_turns(f, |n| {
            if gcd(n, f) != 1 {
                return None;
            }
            let m = (0..q).map(|t| n + t * f).find(|&m| gcd(m, q) == 1)?;
            self.turns(m)
        })
    }

    /// Pointwise product with a character of possibly different modulus,
    /// taken modulo lcm of the moduli (and `extra`, for an extra principal factor).
    pub fn product(&self, other: &DirichletCharacter, extra: u64) -> DirichletCharacter {
        let m = lcm(lcm(self.modulus, other.modulus), extra.max(1));
        DirichletCharacter::from_turns(m, |n| {
            if gcd(n, m) != 1 {
                return None;
            }
            let (a1, d1) = self.turns(n)?;
            let (a2, d2) = other.turns(n)?;
            let d = lcm(d1, d2);
            Some(((a1 * (d / d1) + a2 * (d / d2)) % d, d))
        })
    }

    /// Exact certificate that Σ_{a mod q} χ(a) = 0: the multiset of angles is
    /// invariant under the shift by some χ(b) ≠ 1, so S = χ(b)·S.
    pub fn sum_over_residues_is_zero(&self) -> bool {
        let e = self.exponent as usize;
        let mut counts = vec![0u64; e];
        for a in self.angles.iter().flatten() {
            counts[*a as usize] += 1;
        }
        let Some(shift) = self.angles.iter().flatten().copied().find(|&a| a != 0) else {
            return false;
        };
        (0..e).all(|a| counts[a] == counts[(a + shift as usize) % e])
    }
}

/// exp(2πi a/e), with the eight points on the axes and diagonals exact.
pub fn root_of_unity(a: u64, e: u64, prec: u32) -> Cx {
    let a = a % e;
    if a == 0 {
        return Cx::one(prec);
    }
    if 2 * a == e {
        return Cx::from_i64(prec, -1);
    }
    if 4 * a == e {
        return Cx::i(prec);
    }
    if 4 * a == 3 * e {
        return Cx::i(prec).neg_ref();
    }
    Cx::expi2pi(&(Float::with_val(prec, a) / Float::with_val(prec, e)))
}

/// All φ(q) characters mod q in canonical label order.
pub fn enumerate_characters(q: u64) -> Vec<DirichletCharacter> {
    let g = unit_group(q);
    let radices: Vec<u64> = g.gens.iter().map(|&(_, n)| n).collect();
    (0..g.order()).map(|idx| DirichletCharacter::from_exponents(q, &mixed_radix(idx, &radices))).collect()
}

pub fn primitive_characters(q: u64) -> Vec<DirichletCharacter> {
    enumerate_characters(q).into_iter().filter(|c| c.is_primitive()).collect()
}

/// χ₁χ₂ω_{m₁m₂} as a character mod lcm(q₁, q₂, m₁m₂).
pub fn combine(chi1: &DirichletCharacter, chi2: &DirichletCharacter, m1: u64, m2: u64) -> DirichletCharacter {
    chi1.product(chi2, m1 * m2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::arith::euler_phi;

    #[test]
    fn counts_and_orthogonality() {
        for q in 1..=60 {
            let cs = enumerate_characters(q);
            assert_eq!(cs.len() as u64, euler_phi(q));
            for (i, c) in cs.iter().enumerate() {
                assert_eq!(c.label(), i as u64);
                assert_eq!(c.angle(1), Some(0));
                if !c.is_principal() {
                    // Σ χ(a) computed in floating point as an independent check.
                    let p = 64;
                    let mut s = Cx::zero(p);
                    for a in 0..q {
                        s += c.value(a, p);
                    }
                    assert!(s.abs_f64() < 1e-12, "q={q} {c:?}");
                    assert!(c.sum_over_residues_is_zero());
                }
            }
            assert_eq!(cs.iter().filter(|c| c.is_principal()).count(), 1);
        }
    }

    #[test]
    fn multiplicativity() {
        for q in [5u64, 8, 12, 21, 36] {
            for c in enumerate_characters(q) {
                for a in 0..q {
                    for b in 0..q {
                        let ab = match (c.angle(a), c.angle(b)) {
                            (Some(x), Some(y)) => Some((x + y) % c.exponent()),
                            _ => None,
                        };
                        assert_eq!(c.angle(a * b % q), ab);
                    }
                }
            }
        }
    }

    #[test]
    fn small_moduli() {
        assert_eq!(enumerate_characters(1).len(), 1);
        let c4 = enumerate_characters(4);
        assert_eq!(c4.len(), 2);
        let chi4 = &c4[1];
        assert_eq!(chi4.turns(3), Some((1, 2)));
        assert_eq!(chi4.conductor(), 4);
        assert_eq!(chi4.parity(), 1);
        assert_eq!(unit_group(5).gens, vec![(2, 4)]);
        assert_eq!(DirichletCharacter::principal(6).conductor(), 1);
        assert_eq!(DirichletCharacter::principal(6).parity(), 0);
        let c8 = enumerate_characters(8)
            .into_iter()
            .find(|c| c.turns(3) == Some((1, 2)) && c.turns(5) == Some((1, 2)))
            .unwrap();
        assert_eq!(c8.conductor(), 8);
    }

    #[test]
    fn primitive_counts() {
        // Number of primitive characters mod q is multiplicative with
        // p -> p-2, p^k -> p^{k-2}(p-1)^2 (k >= 2).
        let oracle = |q: u64| -> u64 {
            factorize(q)
                .into_iter()
                .map(|(p, k)| if k == 1 { p - 2 } else { p.pow(k - 2) * (p - 1) * (p - 1) })
                .product()
        };
        for q in 1..=80 {
            assert_eq!(primitive_characters(q).len() as u64, oracle(q), "q={q}");
        }
    }

    #[test]
    fn inducing_character_agrees() {
        for q in [12u64, 20, 45] {
            for c in enumerate_characters(q) {
                let p = c.primitive();
                assert!(p.is_primitive());
                for n in 0..q {
                    if gcd(n, q) == 1 {
                        assert_eq!(c.turns(n), p.turns(n % p.modulus()));
                    }
                }
            }
        }
    }

    #[test]
    fn combine_examples() {
        let one = DirichletCharacter::principal(1);
        assert_eq!(combine(&one, &one, 1, 1).modulus(), 1);
        let w2 = combine(&one, &one, 1, 2);
        assert_eq!(w2.modulus(), 2);
        assert!(w2.is_principal());
        let chi4 = enumerate_characters(4)[1].clone();
        let c = combine(&chi4, &one, 1, 3);
        assert_eq!(c.modulus(), 12);
        for n in [0u64, 2, 3, 4, 6, 9] {
            assert_eq!(c.angle(n), None);
        }
        assert_eq!(c.turns(7), Some((1, 2)));
        assert_eq!(c.conductor(), 4);
    }

    #[test]
    fn conj_label_roundtrip() {
        for q in [7u64, 15, 16] {
            for c in enumerate_characters(q) {
                let d = c.conj();
                let want = enumerate_characters(q).into_iter().find(|x| x.angles == d.angles).unwrap();
                assert_eq!(d.label(), want.label());
                assert_eq!(d.conj(), c);
            }
        }
    }
}
