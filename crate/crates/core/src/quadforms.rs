//! Binary quadratic forms `s·x² + t·xy + δ·y²`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{RingDescriptor, RingValue};

/// Largest modulus accepted by the enumeration routines.
pub const MAX_ENUM_MODULUS: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    s: RingValue,
    t: RingValue,
    delta: RingValue,
}

/// `value = s·r1² + t·r1·r2 + δ·r2²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub r1: RingValue,
    pub r2: RingValue,
    pub value: RingValue,
}

impl QuadForm {
    pub fn new(s: RingValue, t: RingValue, delta: RingValue) -> Result<Self> {
        s.check_same(&t)?;
        s.check_same(&delta)?;
        Ok(QuadForm { s, t, delta })
    }

    pub fn from_ints(ring: &RingDescriptor, s: i64, t: i64, delta: i64) -> Self {
        QuadForm {
            s: ring.int(s),
            t: ring.int(t),
            delta: ring.int(delta),
        }
    }

    /// `p·x² + q·y²`.
    pub fn diagonal(p: RingValue, q: RingValue) -> Result<Self> {
        let zero = p.descriptor().zero();
        QuadForm::new(p, zero, q)
    }

    pub fn s(&self) -> &RingValue {
        &self.s
    }
    pub fn t(&self) -> &RingValue {
        &self.t
    }
    pub fn delta(&self) -> &RingValue {
        &self.delta
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.s.descriptor()
    }

    pub fn eval(&self, r1: &RingValue, r2: &RingValue) -> Result<RingValue> {
        self.s.check_same(r1)?;
        self.s.check_same(r2)?;
        Ok(&(&(&self.s * &r1.square()) + &(&self.t * &(r1 * r2))) + &(&self.delta * &r2.square()))
    }

    /// `t² − 4sδ`.
    pub fn discriminant(&self) -> RingValue {
        &self.t.square() - &(&self.s * &self.delta).scale(4)
    }

    pub fn represent(&self, r1: RingValue, r2: RingValue) -> Result<Representation> {
        let value = self.eval(&r1, &r2)?;
        Ok(Representation { r1, r2, value })
    }

    pub fn verifies(&self, rep: &Representation) -> bool {
        self.eval(&rep.r1, &rep.r2).is_ok_and(|v| v == rep.value)
    }
}

pub fn eval_form(f: &QuadForm, r1: &RingValue, r2: &RingValue) -> Result<RingValue> {
    f.eval(r1, r2)
}

/// `t² − 4δ`, the discriminant of `x² + t·xy + δ·y²`.
pub fn discriminant(t: &RingValue, delta: &RingValue) -> Result<RingValue> {
    t.check_same(delta)?;
    Ok(&t.square() - &delta.scale(4))
}

fn enum_modulus(ring: &RingDescriptor) -> Result<u64> {
    match ring {
        RingDescriptor::Modular(n) if *n <= MAX_ENUM_MODULUS => Ok(*n),
        RingDescriptor::Modular(n) => Err(Error::ModulusTooLarge(*n)),
        other => Err(Error::WrongRing {
            expected: "Z/n",
            found: other.clone(),
        }),
    }
}

fn residue(v: &RingValue) -> u64 {
    match v {
        RingValue::Mod { value, .. } => *value,
        _ => unreachable!("modular value expected"),
    }
}

/// Image of `(ℤ/n)²` under `f`, by enumerating all `n²` pairs.
pub fn value_set_mod(f: &QuadForm) -> Result<BTreeSet<u64>> {
    let ring = f.descriptor();
    let n = enum_modulus(&ring)?;
    let elems: Vec<RingValue> = (0..n).map(|k| ring.int(k as i64)).collect();
    let mut out = BTreeSet::new();
    for r1 in &elems {
        for r2 in &elems {
            out.insert(residue(&f.eval(r1, r2)?));
        }
    }
    Ok(out)
}

/// Whether `c mod n` lies in the value set of `p·x² + q·y²` over `ℤ/n`.
pub fn representable_mod(p: &BigInt, q: &BigInt, c: &BigInt, n: u64) -> Result<bool> {
    if n > MAX_ENUM_MODULUS {
        return Err(Error::ModulusTooLarge(n));
    }
    let ring = RingDescriptor::modular(n)?;
    let f = QuadForm::diagonal(ring.from_bigint(p), ring.from_bigint(q))?;
    Ok(value_set_mod(&f)?.contains(&residue(&ring.from_bigint(c))))
}

/// Result of a bounded representation search over ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub found: Option<Representation>,
    /// True only when the box provably contains every solution and none was found.
    pub proved_absent: bool,
    /// `(|r1| bound, |r2| bound)` implied by positive definiteness, when applicable.
    pub analytic_bounds: Option<(BigInt, BigInt)>,
}

/// `0, 1, −1, 2, −2, …` up to `±limit`.
fn zigzag_values(limit: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=limit).flat_map(|k| [k, -k]))
}

/// Searches `|r1|, |r2| ≤ bound` for `f(r1, r2) = c`.
///
/// Points are visited in increasing `(|r1| + |r2|, z(r1), z(r2))` where `z`
/// ranks integers as `0, 1, −1, 2, −2, …`; the first hit is returned. For a
/// positive definite form the box is clipped to the analytic bounds, and an
/// exhausted search whose bounds fit inside `bound` is a proof of absence.
pub fn search_representation(f: &QuadForm, c: &BigInt, bound: u64) -> Result<SearchOutcome> {
    if f.descriptor() != RingDescriptor::Integers {
        return Err(Error::WrongRing {
            expected: "Z",
            found: f.descriptor(),
        });
    }
    if bound == 0 {
        return Err(Error::precondition("bound must be at least 1"));
    }
    let bound = i64::try_from(bound).map_err(|_| Error::precondition("bound too large"))?;
    let (s, t, delta) = (
        f.s.as_integer().unwrap(),
        f.t.as_integer().unwrap(),
        f.delta.as_integer().unwrap(),
    );
    let d = BigInt::from(4) * s * delta - t * t;
    let definite = s.is_positive() && d.is_positive();

    let mut lim1 = bound;
    let mut lim2 = bound;
    let mut analytic = None;
    let mut covered = false;
    if definite {
        if c.is_negative() {
            return Ok(SearchOutcome {
                found: None,
                proved_absent: true,
                analytic_bounds: Some((BigInt::zero(), BigInt::zero())),
            });
        }
        // 4s·f = (2s·r1 + t·r2)² + D·r2², symmetrically for r1
        let a2 = (BigInt::from(4) * s * c / &d).sqrt();
        let a1 = (BigInt::from(4) * delta * c / &d).sqrt();
        let fits = |a: &BigInt| a <= &BigInt::from(bound);
        covered = fits(&a1) && fits(&a2);
        lim1 = lim1.min(a1.to_i64().unwrap_or(i64::MAX));
        lim2 = lim2.min(a2.to_i64().unwrap_or(i64::MAX));
        analytic = Some((a1, a2));
    }

    let target = RingValue::Int(c.clone());
    // iteration order is exactly the scan key, so the first hit is minimal
    for total in 0..=(lim1 + lim2) {
        for r1 in zigzag_values(lim1.min(total)) {
            let rest = total - r1.abs();
            if rest > lim2 {
                continue;
            }
            let cands: &[i64] = if rest == 0 { &[0] } else { &[rest, -rest] };
            for &r2 in cands {
                let rep = f.represent(RingValue::int(r1), RingValue::int(r2))?;
                if rep.value == target {
                    return Ok(SearchOutcome {
                        found: Some(rep),
                        proved_absent: false,
                        analytic_bounds: analytic,
                    });
                }
            }
        }
    }
    Ok(SearchOutcome {
        found: None,
        proved_absent: covered,
        analytic_bounds: analytic,
    })
}

/// The three value sets `4·V[1,t,δ]`, `V[1,−Δ]`, `V[1,t,δ]` over `ℤ/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSets {
    pub scaled_inner: BTreeSet<u64>,
    pub middle: BTreeSet<u64>,
    pub outer: BTreeSet<u64>,
}

impl ChainSets {
    pub fn chain_holds(&self) -> bool {
        self.scaled_inner.is_subset(&self.middle) && self.middle.is_subset(&self.outer)
    }

    pub fn outer_equal(&self) -> bool {
        self.middle == self.outer
    }
}

pub fn inclusion_chain_sets(t: &BigInt, delta: &BigInt, n: u64) -> Result<ChainSets> {
    if n > MAX_ENUM_MODULUS {
        return Err(Error::ModulusTooLarge(n));
    }
    let ring = RingDescriptor::modular(n)?;
    let (tv, dv) = (ring.from_bigint(t), ring.from_bigint(delta));
    let disc = discriminant(&tv, &dv)?;
    let outer = value_set_mod(&QuadForm::new(ring.one(), tv, dv)?)?;
    let middle = value_set_mod(&QuadForm::new(ring.one(), ring.zero(), -&disc)?)?;
    let scaled_inner = outer.iter().map(|v| (4 * v) % n).collect();
    Ok(ChainSets {
        scaled_inner,
        middle,
        outer,
    })
}

/// `4·V[1,t,δ] ⊆ V[1,−Δ] ⊆ V[1,t,δ]` over `ℤ/n`.
pub fn inclusion_chain_check_mod(t: &BigInt, delta: &BigInt, n: u64) -> Result<bool> {
    Ok(inclusion_chain_sets(t, delta, n)?.chain_holds())
}
