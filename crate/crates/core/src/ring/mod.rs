//! Exact commutative rings: big integers, residues mod n, sparse integer
//! polynomials, and the truncated algebra ℤ[x,y]/(x², xy, y²).
//!
//! Every element is a [`RingValue`]; its ring is described by a
//! [`RingDescriptor`]. Binary operations on values from different rings are
//! errors through the `checked_*` methods and panics through the operator
//! impls, which are meant for code that already knows both sides agree.

mod poly;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub use poly::{Monomial, Poly};

use crate::error::{Error, Result};

/// Which ring a value lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Integers,
    Modular(u64),
    Polynomial(Arc<[String]>),
    NilPlane,
}

impl RingDescriptor {
    pub fn modular(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(RingDescriptor::Modular(n))
    }

    pub fn polynomial<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidVariables("empty variable list".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in names {
            let n = n.as_ref();
            if n.is_empty() || !text::is_identifier(n) {
                return Err(Error::InvalidVariables(format!("bad name `{n}`")));
            }
            if !seen.insert(n) {
                return Err(Error::InvalidVariables(format!("duplicate name `{n}`")));
            }
        }
        Ok(RingDescriptor::Polynomial(
            names.iter().map(|s| s.as_ref().to_string()).collect(),
        ))
    }

    pub fn zero(&self) -> RingValue {
        self.int(0)
    }

    pub fn one(&self) -> RingValue {
        self.int(1)
    }

    pub fn int(&self, k: i64) -> RingValue {
        self.from_bigint(&BigInt::from(k))
    }

    /// Image of an integer under the canonical map ℤ → ring.
    pub fn from_bigint(&self, k: &BigInt) -> RingValue {
        match self {
            RingDescriptor::Integers => RingValue::Int(k.clone()),
            RingDescriptor::Modular(n) => {
                let r = k.mod_floor(&BigInt::from(*n));
                RingValue::Mod {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: *n,
                }
            }
            RingDescriptor::Polynomial(vars) => {
                RingValue::Poly(Poly::constant(vars.clone(), k.clone()))
            }
            RingDescriptor::NilPlane => RingValue::Nil([k.clone(), BigInt::zero(), BigInt::zero()]),
        }
    }

    /// Named generator: a polynomial variable, or `x`/`y` in the nil plane.
    pub fn generator(&self, name: &str) -> Result<RingValue> {
        match self {
            RingDescriptor::Polynomial(vars) => vars
                .iter()
                .position(|v| v == name)
                .map(|i| RingValue::Poly(Poly::var(vars.clone(), i)))
                .ok_or_else(|| Error::MissingVariable(name.to_string())),
            RingDescriptor::NilPlane => match name {
                "x" => Ok(RingValue::nil(0, 1, 0)),
                "y" => Ok(RingValue::nil(0, 0, 1)),
                _ => Err(Error::MissingVariable(name.to_string())),
            },
            _ => Err(Error::MissingVariable(name.to_string())),
        }
    }

    /// Parses the canonical text form (see [`RingValue`]'s `Display`).
    pub fn parse(&self, input: &str) -> Result<RingValue> {
        text::parse(self, input)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Modular(n) => write!(f, "Z/{n}"),
            RingDescriptor::Polynomial(vars) => write!(f, "Z[{}]", vars.join(",")),
            RingDescriptor::NilPlane => write!(f, "Z[x,y]/(x^2,xy,y^2)"),
        }
    }
}

/// An element of one of the concrete rings. Payloads are always canonical:
/// residues lie in `[0, n)`, polynomials store no zero terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingValue {
    Int(BigInt),
    Mod {
        value: u64,
        modulus: u64,
    },
    Poly(Poly),
    /// `c0 + c1·x + c2·y` with `x² = xy = y² = 0`.
    Nil([BigInt; 3]),
}

impl RingValue {
    pub fn int(k: i64) -> Self {
        RingValue::Int(BigInt::from(k))
    }

    pub fn nil(c0: i64, c1: i64, c2: i64) -> Self {
        RingValue::Nil([c0.into(), c1.into(), c2.into()])
    }

    pub fn descriptor(&self) -> RingDescriptor {
        match self {
            RingValue::Int(_) => RingDescriptor::Integers,
            RingValue::Mod { modulus, .. } => RingDescriptor::Modular(*modulus),
            RingValue::Poly(p) => RingDescriptor::Polynomial(p.vars().clone()),
            RingValue::Nil(_) => RingDescriptor::NilPlane,
        }
    }

    pub fn same_ring(&self, other: &RingValue) -> bool {
        match (self, other) {
            (RingValue::Int(_), RingValue::Int(_)) | (RingValue::Nil(_), RingValue::Nil(_)) => true,
            (RingValue::Mod { modulus: a, .. }, RingValue::Mod { modulus: b, .. }) => a == b,
            (RingValue::Poly(a), RingValue::Poly(b)) => {
                Arc::ptr_eq(a.vars(), b.vars()) || a.vars() == b.vars()
            }
            _ => false,
        }
    }

    pub(crate) fn check_same(&self, other: &RingValue) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch {
                left: self.descriptor(),
                right: other.descriptor(),
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingValue::Int(a) => a.is_zero(),
            RingValue::Mod { value, .. } => *value == 0,
            RingValue::Poly(p) => p.is_zero(),
            RingValue::Nil(c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.descriptor().one()
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            RingValue::Int(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            RingValue::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Number of stored terms; nonzero scalars count as one term.
    pub fn term_count(&self) -> usize {
        match self {
            RingValue::Poly(p) => p.num_terms(),
            RingValue::Nil(c) => c.iter().filter(|x| !x.is_zero()).count(),
            other => usize::from(!other.is_zero()),
        }
    }

    pub fn checked_add(&self, other: &RingValue) -> Result<RingValue> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int(a + b),
            (RingValue::Mod { value: a, modulus }, RingValue::Mod { value: b, .. }) => {
                RingValue::Mod {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            (RingValue::Poly(a), RingValue::Poly(b)) => RingValue::Poly(a.add(b)),
            (RingValue::Nil(a), RingValue::Nil(b)) => {
                RingValue::Nil([&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]])
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &RingValue) -> Result<RingValue> {
        self.check_same(other)?;
        self.checked_add(&other.neg_value())
    }

    pub fn checked_mul(&self, other: &RingValue) -> Result<RingValue> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (RingValue::Int(a), RingValue::Int(b)) => RingValue::Int(a * b),
            (RingValue::Mod { value: a, modulus }, RingValue::Mod { value: b, .. }) => {
                RingValue::Mod {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            (RingValue::Poly(a), RingValue::Poly(b)) => RingValue::Poly(a.mul(b)),
            (RingValue::Nil(a), RingValue::Nil(b)) => RingValue::Nil([
                &a[0] * &b[0],
                &a[0] * &b[1] + &a[1] * &b[0],
                &a[0] * &b[2] + &a[2] * &b[0],
            ]),
            _ => unreachable!(),
        })
    }

    fn neg_value(&self) -> RingValue {
        match self {
            RingValue::Int(a) => RingValue::Int(-a),
            RingValue::Mod { value, modulus } => RingValue::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            RingValue::Poly(p) => RingValue::Poly(p.neg()),
            RingValue::Nil(c) => RingValue::Nil([-&c[0], -&c[1], -&c[2]]),
        }
    }

    pub fn pow(&self, mut e: u32) -> RingValue {
        let mut base = self.clone();
        let mut acc = self.descriptor().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn square(&self) -> RingValue {
        self * self
    }

    /// Multiplication by an integer constant.
    pub fn scale(&self, k: i64) -> RingValue {
        match self {
            RingValue::Poly(p) => RingValue::Poly(p.scale(&BigInt::from(k))),
            _ => self * &self.descriptor().int(k),
        }
    }

    /// Evaluates a polynomial by substituting a value for each of its
    /// variables. Variables that do not occur in `self` may be left unbound;
    /// all bound values must share one ring, which is the result's ring.
    pub fn substitute(&self, assignment: &BTreeMap<String, RingValue>) -> Result<RingValue> {
        let p = match self {
            RingValue::Poly(p) => p,
            other => {
                return Err(Error::WrongRing {
                    expected: "a polynomial ring",
                    found: other.descriptor(),
                })
            }
        };
        let mut values = assignment.values();
        let target = match values.next() {
            Some(v) => v.descriptor(),
            None => {
                return match p.support().first() {
                    Some(&i) => Err(Error::MissingVariable(p.vars()[i].clone())),
                    None => Err(Error::precondition("empty assignment has no target ring")),
                }
            }
        };
        for v in assignment.values() {
            if v.descriptor() != target {
                return Err(Error::DescriptorMismatch {
                    left: target,
                    right: v.descriptor(),
                });
            }
        }
        let support = p.support();
        let mut bound: Vec<Option<&RingValue>> = vec![None; p.vars().len()];
        for &i in &support {
            let name = &p.vars()[i];
            bound[i] = Some(
                assignment
                    .get(name)
                    .ok_or_else(|| Error::MissingVariable(name.clone()))?,
            );
        }
        // powers[i][k] = value_i^k, grown on demand
        let mut powers: Vec<Vec<RingValue>> = bound
            .iter()
            .map(|b| match b {
                Some(v) => vec![target.one(), (*v).clone()],
                None => vec![target.one()],
            })
            .collect();
        let mut acc = target.zero();
        for (m, c) in p.terms() {
            let mut term = target.from_bigint(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &powers[i][1];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Exact quotient by a nonzero integer, when it exists.
    pub fn div_exact_int(&self, d: &BigInt) -> Option<RingValue> {
        if d.is_zero() {
            return None;
        }
        match self {
            RingValue::Int(a) => {
                let (q, r) = a.div_rem(d);
                r.is_zero().then_some(RingValue::Int(q))
            }
            _ => None,
        }
    }

    /// Sign of an integer value; `None` outside ℤ.
    pub fn signum(&self) -> Option<i8> {
        self.as_integer().map(|a| {
            if a.is_positive() {
                1
            } else if a.is_negative() {
                -1
            } else {
                0
            }
        })
    }
}

/// Free-function form of [`RingValue::substitute`].
pub fn poly_substitute(
    p: &RingValue,
    assignment: &BTreeMap<String, RingValue>,
) -> Result<RingValue> {
    p.substitute(assignment)
}

impl From<BigInt> for RingValue {
    fn from(a: BigInt) -> Self {
        RingValue::Int(a)
    }
}

impl From<i64> for RingValue {
    fn from(a: i64) -> Self {
        RingValue::int(a)
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

fn expect_same<T>(r: Result<T>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("{e}"),
    }
}

impl Add for &RingValue {
    type Output = RingValue;
    fn add(self, rhs: &RingValue) -> RingValue {
        expect_same(self.checked_add(rhs))
    }
}

impl Sub for &RingValue {
    type Output = RingValue;
    fn sub(self, rhs: &RingValue) -> RingValue {
        expect_same(self.checked_sub(rhs))
    }
}

impl Mul for &RingValue {
    type Output = RingValue;
    fn mul(self, rhs: &RingValue) -> RingValue {
        expect_same(self.checked_mul(rhs))
    }
}

impl Neg for &RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        self.neg_value()
    }
}

impl Add for RingValue {
    type Output = RingValue;
    fn add(self, rhs: RingValue) -> RingValue {
        &self + &rhs
    }
}

impl Sub for RingValue {
    type Output = RingValue;
    fn sub(self, rhs: RingValue) -> RingValue {
        &self - &rhs
    }
}

impl Mul for RingValue {
    type Output = RingValue;
    fn mul(self, rhs: RingValue) -> RingValue {
        &self * &rhs
    }
}

impl Neg for RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        self.neg_value()
    }
}
