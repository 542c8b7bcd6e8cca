//! Exact zero/pole bookkeeping at rational points.
//!
//! A meromorphic function is described as a formal product of atoms raised
//! to rational exponents; its order at a rational point is the weighted sum
//! of the atoms' orders, which must come out integral.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::multigamma::{pole_order, MultiGammaOrder};

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

#[derive(Debug, Clone)]
pub enum Atom {
    /// Γ_level(a s + b), a > 0.
    Gamma { level: MultiGammaOrder, a: Q, b: Q },
    /// L(a s + b, χ), a > 0.
    L { chi: DirichletCharacter, a: Q, b: Q },
    /// ∏_{m≥1} L(a s + b + step·m, χ).
    LInf { chi: DirichletCharacter, a: Q, b: Q, step: i64 },
    /// s - c.
    Linear { c: Q },
    /// Ξ(s) at real points: the λ₀ = 0 zeros at s = 0 and s = 1.
    Xi,
    /// ∏_{m≥1} Ξ(s + l m)^{-1}.
    XiInf { l: i64 },
}

/// Order of L(u, χ) at a rational u: the pole of ζ, trivial zeros of the
/// primitive character, and zeros at u = 0 of the missing Euler factors.
pub fn l_order(chi: &DirichletCharacter, u: Q) -> i64 {
    if !u.is_integer() {
        return 0;
    }
    let n = u.to_integer();
    let prim = chi.primitive();
    let zeta = prim.modulus() == 1;
    if zeta && n == 1 {
        return -1;
    }
    let v = prim.parity() as i64;
    let mut ord = 0;
    if n <= -v && (n - v) % 2 == 0 && !(zeta && n == 0) {
        ord += 1;
    }
    if n == 0 {
        for (p, _) in crate::numcore::arith::factorize(chi.modulus()) {
            if prim.modulus() % p != 0 && prim.angle(p) == Some(0) {
                ord += 1;
            }
        }
    }
    ord
}

impl Atom {
    pub fn order_at(&self, s0: Q) -> i64 {
        match self {
            Atom::Gamma { level, a, b } => -(pole_order(*level, a * s0 + b) as i64),
            Atom::L { chi, a, b } => l_order(chi, a * s0 + b),
            Atom::LInf { chi, a, b, step } => {
                let u = a * s0 + b;
                if !u.is_integer() {
                    return 0;
                }
                (1..).map(|m| u + step * m).take_while(|w| *w <= q(1, 1)).map(|w| l_order(chi, w)).sum()
            }
            Atom::Linear { c } => (s0 == *c) as i64,
            Atom::Xi => (s0 == q(0, 1) || s0 == q(1, 1)) as i64,
            Atom::XiInf { l } => {
                let hits = (1..).map(|m| s0 + l * m).take_while(|w| *w <= q(1, 1));
                -(hits.filter(|w| *w == q(0, 1) || *w == q(1, 1)).count() as i64)
            }
        }
    }

    /// Every point of [lo, hi] where the atom can have a zero or pole.
    pub fn candidates(&self, lo: Q, hi: Q) -> Vec<Q> {
        let mut out = Vec::new();
        let mut push = |s: Q| {
            if s >= lo && s <= hi {
                out.push(s);
            }
        };
        // Points a s + b = u for integers u ≤ top, walking down to lo.
        let ladder = |a: Q, b: Q, top: i64, push: &mut dyn FnMut(Q)| {
            assert!(a > q(0, 1), "atoms take positive slopes");
            let mut u = top;
            loop {
                let s = (Q::from_integer(u) - b) / a;
                if s < lo {
                    break;
                }
                push(s);
                u -= 1;
            }
        };
        match self {
            Atom::Gamma { a, b, .. } => ladder(*a, *b, 0, &mut push),
            Atom::L { a, b, .. } => ladder(*a, *b, 1, &mut push),
            Atom::LInf { a, b, step, .. } => ladder(*a, *b, 1 - step, &mut push),
            Atom::Linear { c } => push(*c),
            Atom::Xi => {
                push(q(0, 1));
                push(q(1, 1));
            }
            Atom::XiInf { l } => ladder(q(*l, 1), q(0, 1), 1 - l, &mut push),
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Term {
    pub label: &'static str,
    pub exponent: Q,
    pub atom: Atom,
}

/// Σ exponent · log(atom).
#[derive(Debug, Clone, Default)]
pub struct Divisor {
    pub terms: Vec<Term>,
}

impl Divisor {
    pub fn push(&mut self, label: &'static str, exponent: Q, atom: Atom) {
        if exponent != q(0, 1) {
            self.terms.push(Term { label, exponent, atom });
        }
    }

    /// Total order and per-label contributions (labels in first-seen order).
    pub fn order_at(&self, s0: Q) -> (Q, Vec<(&'static str, Q)>) {
        let mut parts: Vec<(&'static str, Q)> = Vec::new();
        for t in &self.terms {
            let c = t.exponent * t.atom.order_at(s0);
            match parts.iter_mut().find(|(l, _)| *l == t.label) {
                Some(slot) => slot.1 += c,
                None => parts.push((t.label, c)),
            }
        }
        (parts.iter().map(|p| p.1).sum(), parts)
    }

    pub fn catalog(&self, lo: Q, hi: Q) -> Result<Vec<DivisorEntry>> {
        let pts: BTreeSet<Q> = self.terms.iter().flat_map(|t| t.atom.candidates(lo, hi)).collect();
        let mut out = Vec::new();
        for s0 in pts {
            let (total, parts) = self.order_at(s0);
            if !total.is_integer() {
                return Err(Error::Domain(format!("non-integral order {total} at s = {s0}")));
            }
            if total != q(0, 1) {
                out.push(DivisorEntry {
                    location: Location::Point(s0),
                    order: total.to_integer(),
                    breakdown: parts.into_iter().filter(|p| p.1 != q(0, 1)).collect(),
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyTag {
    /// s = ρ/2 - step·m (m ≥ m_min), ρ a nontrivial zero of L(s, χ).
    NontrivialLHalf { chi: String, step: i64, m_min: i64 },
    /// s = 1/2 - step·m ± i r_n (m ≥ m_min, n ≥ n_min).
    Spectral { step: i64, m_min: i64, n_min: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Point(Q),
    Family(FamilyTag),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Point(s) => write!(f, "{s}"),
            Location::Family(FamilyTag::NontrivialLHalf { chi, step, m_min }) => {
                if *m_min == 0 && *step == 0 {
                    write!(f, "rho/2 [rho zero of L(s,{chi})]")
                } else {
                    write!(f, "rho/2-{step}m (m>={m_min}) [rho zero of L(s,{chi})]")
                }
            }
            Location::Family(FamilyTag::Spectral { step, m_min, n_min }) => {
                if *m_min == 0 && *step == 0 {
                    write!(f, "1/2+-i*r_n (n>={n_min})")
                } else {
                    write!(f, "1/2-{step}m+-i*r_n (m>={m_min}, n>={n_min})")
                }
            }
        }
    }
}

/// One zero (order > 0) or pole (order < 0). Family entries carry the order
/// of a single member, counted once per zero of the underlying data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorEntry {
    pub location: Location,
    pub order: i64,
    pub breakdown: Vec<(&'static str, Q)>,
}

impl DivisorEntry {
    pub fn family(tag: FamilyTag, order: i64) -> DivisorEntry {
        DivisorEntry { location: Location::Family(tag), order, breakdown: Vec::new() }
    }

    pub fn point(&self) -> Option<Q> {
        match self.location {
            Location::Point(s) => Some(s),
            Location::Family(_) => None,
        }
    }

    pub fn breakdown_string(&self) -> String {
        self.breakdown.iter().map(|(l, c)| format!("{l}:{c}")).collect::<Vec<_>>().join(";")
    }
}
