//! Commutator witnesses for quadratic-form values, the factorization
//! construction for `A = [[0,q],[−p,0]]`, and the conic-to-surface map.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mat2::{Mat2, QTraceContext};
use crate::quadforms::{QuadForm, Representation, MAX_ENUM_MODULUS};
use crate::ring::{RingDescriptor, RingValue};

/// `u² + t·u·v + δ·v² = certified_value = −c²·det[X,Y]`, with `c` the
/// (2,1) entry of `X`, `t = tr X`, `δ = det X`, `u = α − a·β`, `v = β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormWitness {
    pub u: RingValue,
    pub v: RingValue,
    pub c: RingValue,
    pub t: RingValue,
    pub delta: RingValue,
    pub alpha: RingValue,
    pub beta: RingValue,
    pub certified_value: RingValue,
}

impl NormWitness {
    pub fn form_value(&self) -> RingValue {
        &(&self.u.square() + &(&self.t * &(&self.u * &self.v))) + &(&self.delta * &self.v.square())
    }
}

/// Companion matrix `X = [[0,−δ],[1,t]]` and `Y = [[y,−x],[0,0]]`, so that
/// `−det[X,Y] = x² + t·xy + δ·y²`.
pub fn taussky_construct(
    t: &RingValue,
    delta: &RingValue,
    x: &RingValue,
    y: &RingValue,
) -> Result<(Mat2, Mat2)> {
    let ring = t.descriptor();
    let xm = Mat2::new(ring.zero(), -delta, ring.one(), t.clone())?;
    let ym = Mat2::new(y.clone(), -x, ring.zero(), ring.zero())?;
    Ok((xm, ym))
}

pub fn extract_norm_witness(x: &Mat2, y: &Mat2) -> Result<NormWitness> {
    let dc = x.commutator(y)?.det();
    let yn = y.normalize_corner();
    let [a, b, c, d] = x.entries();
    let (e, f, g) = (yn.m11(), yn.m12(), yn.m21());
    let alpha = -&(&(&c.square() * f) - &(c * &(b * g)));
    let beta = &(c * e) + &(g * &(d - a));
    let w = NormWitness {
        u: &alpha - &(a * &beta),
        v: beta.clone(),
        c: c.clone(),
        t: x.trace(),
        delta: x.det(),
        alpha,
        beta,
        certified_value: -&(&c.square() * &dc),
    };
    if w.form_value() != w.certified_value {
        return Err(Error::InvalidWitness(format!(
            "u^2 + t u v + delta v^2 = {} but -c^2 det[X,Y] = {}",
            w.form_value(),
            w.certified_value
        )));
    }
    Ok(w)
}

/// `(u0, v0) = (2u + t·v, v)`, satisfying `u0² − Δ·v0² = 4·certified_value`.
pub fn to_discriminant_witness(w: &NormWitness) -> (RingValue, RingValue) {
    (&w.u.scale(2) + &(&w.t * &w.v), w.v.clone())
}

/// For traceless `X = [[a,b],[c,−a]]`, `Y = [[e,f],[g,−e]]`: returns `(P, Q)`
/// with `−c²·det[X,Y] = P² − Δ·Q²` and `Δ = 4(a² + bc)`.
pub fn traceless_pq(x: &Mat2, y: &Mat2) -> Result<(RingValue, RingValue)> {
    x.checked_mul(y)?;
    if !x.trace().is_zero() || !y.trace().is_zero() {
        return Err(Error::precondition("X and Y must both be traceless"));
    }
    let (a, b, c) = (x.m11(), x.m12(), x.m21());
    let (e, f, g) = (y.m11(), y.m12(), y.m21());
    let q = &(a * g) - &(c * e);
    let p = &(&a.scale(2) * &q) + &(c * &(&(b * g) - &(c * f)));
    Ok((p, q))
}

/// `(b·y − c·x)² − b·c·w²` for `X = [[a,b],[c,a]]` and `Y − y22·I = [[w,x],[y,0]]`;
/// equals `−det[X,Y]`.
pub fn constant_diagonal_value(x: &Mat2, y: &Mat2) -> Result<RingValue> {
    x.checked_mul(y)?;
    if x.m11() != x.m22() {
        return Err(Error::precondition("X must have equal diagonal entries"));
    }
    let (b, c) = (x.m12(), x.m21());
    let yn = y.normalize_corner();
    let (w, xx, yy) = (yn.m11(), yn.m12(), yn.m21());
    Ok(&(&(b * yy) - &(c * xx)).square() - &(&(b * c) * &w.square()))
}

fn all_matrices(ring: &RingDescriptor, n: u64) -> impl Iterator<Item = Mat2> + '_ {
    (0..n.pow(4)).map(move |k| {
        let e = |i: u32| ring.int(((k / n.pow(i)) % n) as i64);
        Mat2::new(e(0), e(1), e(2), e(3)).expect("one ring")
    })
}

fn residue(v: &RingValue) -> u64 {
    match v {
        RingValue::Mod { value, .. } => *value,
        _ => unreachable!("modular value expected"),
    }
}

/// `{−det[X,Y] : Y ∈ M₂(ℤ/n)}` for `X = [[a,b],[c,a]]`, by full enumeration.
pub fn constant_diagonal_value_set_mod(a: i64, b: i64, c: i64, n: u64) -> Result<BTreeSet<u64>> {
    if n > MAX_ENUM_MODULUS {
        return Err(Error::ModulusTooLarge(n));
    }
    let ring = RingDescriptor::modular(n)?;
    let x = Mat2::from_ints(&ring, [[a, b], [c, a]]);
    let mut out = BTreeSet::new();
    for y in all_matrices(&ring, n) {
        let v = constant_diagonal_value(&x, &y)?;
        debug_assert_eq!(v, -&x.commutator(&y)?.det());
        out.insert(residue(&v));
    }
    Ok(out)
}

/// Certificate that `c ∈ V[p,q]` implies the factorization conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationWitness {
    pub p: RingValue,
    pub q: RingValue,
    pub c: RingValue,
    pub r: RingValue,
    pub s: RingValue,
    pub x: Mat2,
    pub y: Mat2,
    pub x1: Mat2,
    pub y1: Mat2,
    /// `[[0,q],[−p,0]]`.
    pub a: Mat2,
}

fn factor_target(p: &RingValue, q: &RingValue) -> Mat2 {
    let zero = p.descriptor().zero();
    Mat2::new(zero.clone(), q.clone(), -p, zero).expect("one ring")
}

/// Checks the four factorization conditions `XY = cA`, `det X = c·dx`,
/// `det Y = c·dy`, `det[X,Y] = −c²`.
fn check_factorization(
    name: &str,
    x: &Mat2,
    y: &Mat2,
    c: &RingValue,
    ca: &Mat2,
    dx: &RingValue,
    dy: &RingValue,
) -> Result<()> {
    let fail = |what: &str| Err(Error::InvalidWitness(format!("{name}: {what}")));
    if &x.checked_mul(y)? != ca {
        return fail("product is not c*A");
    }
    if x.det() != c * dx {
        return fail("wrong determinant of first factor");
    }
    if y.det() != c * dy {
        return fail("wrong determinant of second factor");
    }
    if x.commutator(y)?.det() != -&c.square() {
        return fail("commutator determinant is not -c^2");
    }
    Ok(())
}

impl FactorizationWitness {
    /// Re-checks every invariant by direct matrix arithmetic.
    pub fn verify(&self) -> Result<()> {
        let (p, q, c) = (&self.p, &self.q, &self.c);
        if &(&(p * &self.r.square()) + &(q * &self.s.square())) != c {
            return Err(Error::InvalidWitness("c != p r^2 + q s^2".into()));
        }
        if self.a != factor_target(p, q) {
            return Err(Error::InvalidWitness("A != [[0,q],[-p,0]]".into()));
        }
        let ca = self.a.scale(c);
        check_factorization("(X, Y)", &self.x, &self.y, c, &ca, p, q)?;
        check_factorization("(X1, Y1)", &self.x1, &self.y1, c, &ca, q, p)
    }
}

fn check_conic(
    p: &RingValue,
    q: &RingValue,
    c: &RingValue,
    r: &RingValue,
    s: &RingValue,
) -> Result<()> {
    for v in [q, c, r, s] {
        p.check_same(v)?;
    }
    let lhs = &(p * &r.square()) + &(q * &s.square());
    if &lhs != c {
        return Err(Error::precondition(format!(
            "conic constraint violated: p r^2 + q s^2 = {lhs}, expected c = {c}"
        )));
    }
    Ok(())
}

/// `X = [[s+pr, r−qs],[ps, pr]]`, `Y = [[r−qs, qr],[−(s+pr), −qs]]`,
/// `X1 = Y′`, `Y1 = −X′`.
pub fn factor_construct(
    p: &RingValue,
    q: &RingValue,
    c: &RingValue,
    r: &RingValue,
    s: &RingValue,
) -> Result<FactorizationWitness> {
    check_conic(p, q, c, r, s)?;
    let a = s + &(p * r);
    let b = r - &(q * s);
    let x = Mat2::new(a.clone(), b.clone(), p * s, p * r)?;
    let y = Mat2::new(b, q * r, -&a, -&(q * s))?;
    let w = FactorizationWitness {
        p: p.clone(),
        q: q.clone(),
        c: c.clone(),
        r: r.clone(),
        s: s.clone(),
        x1: y.adjoint(),
        y1: -&x.adjoint(),
        x,
        y,
        a: factor_target(p, q),
    };
    w.verify()?;
    Ok(w)
}

/// Recovers `(r, s) = (str X1, str Y1)` with `p·r² + q·s² = c` from factors
/// satisfying `X1·Y1 = cA`, `det X1 = cq`, `det Y1 = cp`, `det[X1,Y1] = −c²`.
///
/// `c` must be cancellable: nonzero over ℤ, a unit over ℤ/n.
pub fn extract_representation(
    x1: &Mat2,
    y1: &Mat2,
    p: &RingValue,
    q: &RingValue,
    c: &RingValue,
) -> Result<Representation> {
    for v in [q, c] {
        p.check_same(v)?;
    }
    x1.checked_mul(y1)?;
    p.check_same(x1.m11())?;
    match c {
        RingValue::Int(k) if k.is_zero() => {
            return Err(Error::precondition(
                "c must be nonzero (a non zero-divisor)",
            ))
        }
        RingValue::Int(_) => {}
        RingValue::Mod { value, modulus } => {
            if value.gcd(modulus) != 1 {
                return Err(Error::precondition(format!(
                    "c = {value} is not a unit modulo {modulus}"
                )));
            }
        }
        other => {
            return Err(Error::WrongRing {
                expected: "Z or Z/n",
                found: other.descriptor(),
            })
        }
    }
    let ca = factor_target(p, q).scale(c);
    check_factorization("(X1, Y1)", x1, y1, c, &ca, q, p).map_err(|e| match e {
        Error::InvalidWitness(m) => Error::precondition(m),
        other => other,
    })?;
    let r = x1.supertrace();
    let s = y1.supertrace();
    let rep = QuadForm::diagonal(p.clone(), q.clone())?.represent(r, s)?;
    // c·(c − p r² − q s²) = 0 and c cancels
    if &rep.value != c {
        return Err(Error::InvalidWitness(format!(
            "recovered p r^2 + q s^2 = {}, expected {c}",
            rep.value
        )));
    }
    Ok(rep)
}

/// Point `(x, y, z)` of affine 3-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePoint {
    pub x: RingValue,
    pub y: RingValue,
    pub z: RingValue,
}

impl SurfacePoint {
    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        SurfacePoint {
            x: RingValue::int(x),
            y: RingValue::int(y),
            z: RingValue::int(z),
        }
    }

    /// `p·x + q·y`.
    pub fn plane_value(&self, p: &RingValue, q: &RingValue) -> RingValue {
        &(p * &self.x) + &(q * &self.y)
    }

    /// `x·y − z²`.
    pub fn quadric_value(&self) -> RingValue {
        &(&self.x * &self.y) - &self.z.square()
    }

    /// On `p·x + q·y = −c` and `x·y − z² = −c²`.
    pub fn on_plane_and_quadric(&self, p: &RingValue, q: &RingValue, c: &RingValue) -> bool {
        self.plane_value(p, q) == -c && self.quadric_value() == -&c.square()
    }

    pub fn negate_xy(&self) -> SurfacePoint {
        SurfacePoint {
            x: -&self.x,
            y: -&self.y,
            z: self.z.clone(),
        }
    }
}

/// `f(r,s) = (r(2qs − r), −s(2pr + s), rs + pr² − qs²)` on `pr² + qs² = c`.
pub fn curve_map(
    p: &RingValue,
    q: &RingValue,
    c: &RingValue,
    r: &RingValue,
    s: &RingValue,
) -> Result<SurfacePoint> {
    check_conic(p, q, c, r, s)?;
    let pt = SurfacePoint {
        x: r * &(&(q * s).scale(2) - r),
        y: -&(s * &(&(p * r).scale(2) + s)),
        z: &(&(r * s) + &(p * &r.square())) - &(q * &s.square()),
    };
    if !pt.on_plane_and_quadric(p, q, c) {
        return Err(Error::InvalidWitness(
            "image point is off the surfaces".into(),
        ));
    }
    Ok(pt)
}

/// `a ≡ b (mod m)` over ℤ; modulus zero means equality.
pub fn congruent(a: &BigInt, b: &BigInt, m: &BigInt) -> bool {
    if m.is_zero() {
        a == b
    } else {
        (a - b).mod_floor(m).is_zero()
    }
}

/// The four congruences satisfied by an integer image point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceReport {
    /// `x ≡ −r² (mod 2q)`
    pub x_mod_2q: bool,
    /// `y ≡ −s² (mod 2p)`
    pub y_mod_2p: bool,
    /// `z ≡ c (mod s)`
    pub z_mod_s: bool,
    /// `z ≡ −c (mod r)`
    pub z_mod_r: bool,
}

impl CongruenceReport {
    pub fn all(&self) -> bool {
        self.x_mod_2q && self.y_mod_2p && self.z_mod_s && self.z_mod_r
    }
}

fn int_of(v: &RingValue, what: &str) -> Result<BigInt> {
    v.as_integer().cloned().ok_or_else(|| {
        Error::precondition(format!("{what} must be an integer, got {}", v.descriptor()))
    })
}

pub fn congruence_report(
    p: &RingValue,
    q: &RingValue,
    c: &RingValue,
    r: &RingValue,
    s: &RingValue,
    pt: &SurfacePoint,
) -> Result<CongruenceReport> {
    let [p, q, c, r, s, x, y, z] =
        [p, q, c, r, s, &pt.x, &pt.y, &pt.z].map(|v| int_of(v, "congruence input"));
    let (p, q, c, r, s, x, y, z) = (p?, q?, c?, r?, s?, x?, y?, z?);
    Ok(CongruenceReport {
        x_mod_2q: congruent(&x, &-(&r * &r), &(&q * 2)),
        y_mod_2p: congruent(&y, &-(&s * &s), &(&p * 2)),
        z_mod_s: congruent(&z, &c, &s),
        z_mod_r: congruent(&z, &-&c, &r),
    })
}

/// Largest `|m|` whose divisors are computed by trial division.
pub const MAX_FACTOR_INPUT: u64 = 100_000_000_000_000;

/// Width of the box scanned when a congruence gives no divisor constraint.
pub const PREIMAGE_FALLBACK_BOUND: i64 = 10_000;

/// Positive and negative divisors of a nonzero integer, ascending.
fn signed_divisors(m: &BigInt) -> Result<Vec<BigInt>> {
    let m = m
        .abs()
        .to_u64()
        .filter(|v| *v <= MAX_FACTOR_INPUT)
        .ok_or_else(|| {
            Error::precondition(format!("{m} is too large to factor by trial division"))
        })?;
    let mut pos = Vec::new();
    let mut k = 1u64;
    while k * k <= m {
        if m % k == 0 {
            pos.push(k);
            if k * k != m {
                pos.push(m / k);
            }
        }
        k += 1;
    }
    let mut out: Vec<BigInt> = pos
        .iter()
        .flat_map(|&d| [BigInt::from(d), -BigInt::from(d)])
        .collect();
    out.sort();
    Ok(out)
}

/// Conic points `(r, s)` with `f(r, s) = pt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageResult {
    /// Sorted ascending.
    pub points: Vec<(BigInt, BigInt)>,
    /// True when the search fell back to a bounded scan and may be incomplete.
    pub bounded: bool,
}

pub fn preimage_search(
    p: &BigInt,
    q: &BigInt,
    c: &BigInt,
    pt: &SurfacePoint,
) -> Result<PreimageResult> {
    let z = int_of(&pt.z, "z")?;
    let [pv, qv, cv] = [p, q, c].map(|v| RingValue::Int(v.clone()));
    let mut found = BTreeSet::new();
    let mut consider = |r: &BigInt, s: &BigInt| -> Result<()> {
        let (rv, sv) = (RingValue::Int(r.clone()), RingValue::Int(s.clone()));
        if &(p * r * r + q * s * s) == c && curve_map(&pv, &qv, &cv, &rv, &sv)? == *pt {
            found.insert((r.clone(), s.clone()));
        }
        Ok(())
    };
    let zmc = &z - c;
    let zpc = &z + c;
    if !zmc.is_zero() && !zpc.is_zero() {
        // z ≡ c (mod s) and z ≡ −c (mod r), so s | z − c and r | z + c
        let ss = signed_divisors(&zmc)?;
        let rs = signed_divisors(&zpc)?;
        for r in &rs {
            for s in &ss {
                consider(r, s)?;
            }
        }
        return Ok(PreimageResult {
            points: found.into_iter().collect(),
            bounded: false,
        });
    }
    let bound = PREIMAGE_FALLBACK_BOUND;
    if !q.is_zero() {
        for r in -bound..=bound {
            let r = BigInt::from(r);
            let (quo, rem) = (c - p * &r * &r).div_rem(q);
            if rem.is_zero() && !quo.is_negative() {
                let s = quo.sqrt();
                if &s * &s == quo {
                    consider(&r, &s)?;
                    consider(&r, &-&s)?;
                }
            }
        }
    } else if !p.is_zero() {
        for s in -bound..=bound {
            let s = BigInt::from(s);
            let (quo, rem) = c.div_rem(p);
            if rem.is_zero() && !quo.is_negative() {
                let r = quo.sqrt();
                if &r * &r == quo {
                    consider(&r, &s)?;
                    consider(&-&r, &s)?;
                }
            }
        }
    } else {
        // p = q = 0: f(r, s) = (−r², −s², rs)
        let (x, y) = (int_of(&pt.x, "x")?, int_of(&pt.y, "y")?);
        if !x.is_positive() && !y.is_positive() {
            let (r, s) = ((-x).sqrt(), (-y).sqrt());
            for (r, s) in [(&r, &s), (&r, &-&s), (&-&r, &s), (&-&r, &-&s)] {
                consider(r, s)?;
            }
        }
        return Ok(PreimageResult {
            points: found.into_iter().collect(),
            bounded: false,
        });
    }
    Ok(PreimageResult {
        points: found.into_iter().collect(),
        bounded: true,
    })
}

/// `(x, y, z)` on `px + qy = −c`, `xy − z² = −c²`, and `(−x, −y, z)` on
/// `px + qy = c`, `xy − z² = −c²`.
pub fn corollary_6_17_witnesses(
    p: &RingValue,
    q: &RingValue,
    c: &RingValue,
    r: &RingValue,
    s: &RingValue,
) -> Result<(SurfacePoint, SurfacePoint)> {
    let first = curve_map(p, q, c, r, s)?;
    let second = first.negate_xy();
    if second.plane_value(p, q) != *c || second.quadric_value() != -&c.square() {
        return Err(Error::InvalidWitness(
            "second triple is off the surfaces".into(),
        ));
    }
    Ok((first, second))
}

/// Integer points with `p·x + q·y = plane` and `x·y − z² = quadric`, `|y| ≤ bound`,
/// `z ≥ 0`; sorted by `y`.
pub fn plane_quadric_search(
    p: &BigInt,
    q: &BigInt,
    plane: &BigInt,
    quadric: &BigInt,
    bound: i64,
) -> Result<Vec<SurfacePoint>> {
    if p.is_zero() {
        return Err(Error::precondition("p must be nonzero"));
    }
    let mut out = Vec::new();
    for y in -bound..=bound {
        let y = BigInt::from(y);
        let (x, rem) = (plane - q * &y).div_rem(p);
        if !rem.is_zero() {
            continue;
        }
        let z2 = &x * &y - quadric;
        if z2.is_negative() {
            continue;
        }
        let z = z2.sqrt();
        if &z * &z == z2 {
            out.push(SurfacePoint {
                x: RingValue::Int(x),
                y: RingValue::Int(y),
                z: RingValue::Int(z),
            });
        }
    }
    Ok(out)
}

fn is_sum_of_two_squares(m: &BigInt) -> bool {
    if m.is_negative() {
        return false;
    }
    let mut a = BigInt::zero();
    while &a * &a <= *m {
        let rest = m - &a * &a;
        let b = rest.sqrt();
        if &b * &b == rest {
            return true;
        }
        a += 1;
    }
    false
}

/// Membership in `V[y,y]` over the nil plane. Every value `y·r² + y·s²`
/// equals `(r0² + s0²)·y`, so the members are `m·y` with `m` a sum of two
/// squares.
pub fn nil_in_vyy(c: &RingValue) -> Result<bool> {
    match c {
        RingValue::Nil([c0, c1, c2]) => {
            Ok(c0.is_zero() && c1.is_zero() && is_sum_of_two_squares(c2))
        }
        other => Err(Error::WrongRing {
            expected: "the nil plane",
            found: other.descriptor(),
        }),
    }
}

/// Over the nil plane with `c = x`, `p = q = y`: the zero matrices satisfy
/// every factorization condition, yet `c ∉ V[p,q]`.
pub fn nilplane_counterexample_check() -> bool {
    let ring = RingDescriptor::NilPlane;
    let c = RingValue::nil(0, 1, 0);
    let p = RingValue::nil(0, 0, 1);
    let q = p.clone();
    let zero = Mat2::zero(&ring);
    let ca = factor_target(&p, &q).scale(&c);
    let conditions = check_factorization("(X, Y)", &zero, &zero, &c, &ca, &p, &q).is_ok()
        && check_factorization("(X1, Y1)", &zero, &zero, &c, &ca, &q, &p).is_ok();
    // every p·r² + q·s² has zero x-coefficient
    conditions && nil_in_vyy(&c) == Ok(false)
}

/// Over `𝔽_p`: `X` is scalar iff `δτ′² + δ′τ² + tr(XY)τ′τ = str(XY)·str(YX)`
/// for every `Y` (τ, τ′ the supertraces). Returns whether this holds for all `X`.
pub fn scalar_characterization_check(prime: u64) -> Result<bool> {
    if ![2, 3, 5].contains(&prime) {
        return Err(Error::precondition(format!(
            "prime must be 2, 3 or 5, got {prime}"
        )));
    }
    let ring = RingDescriptor::modular(prime)?;
    let ctx = QTraceContext::new(ring.int(-1));
    let ys: Vec<Mat2> = all_matrices(&ring, prime).collect();
    let holds = |x: &Mat2, y: &Mat2| {
        let xy = x * y;
        let yx = y * x;
        let (tau, tau_p) = (x.qtrace(&ctx), y.qtrace(&ctx));
        let lhs = &(&(&x.det() * &tau_p.square()) + &(&y.det() * &tau.square()))
            + &(&xy.trace() * &(&tau_p * &tau));
        lhs == &xy.supertrace() * &yx.supertrace()
    };
    for x in &ys {
        let universal = ys.iter().all(|y| holds(x, y));
        if universal != x.is_scalar() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: RingDescriptor = RingDescriptor::Integers;

    fn i(k: i64) -> RingValue {
        RingValue::int(k)
    }

    fn m(rows: [[i64; 2]; 2]) -> Mat2 {
        Mat2::from_ints(&Z, rows)
    }

    #[test]
    fn taussky_values() {
        let (x, y) = taussky_construct(&i(0), &i(0), &i(3), &i(0)).unwrap();
        assert_eq!(-&x.commutator(&y).unwrap().det(), i(9));
        let (x, y) = taussky_construct(&i(1), &i(8), &i(-36), &i(-5)).unwrap();
        assert_eq!(-&x.commutator(&y).unwrap().det(), i(1676));
        let r = RingDescriptor::polynomial(&["t", "delta", "x", "y"]).unwrap();
        let g = |n: &str| r.generator(n).unwrap();
        let (x, y) = taussky_construct(&g("t"), &g("delta"), &g("x"), &g("y")).unwrap();
        assert_eq!(
            -&x.commutator(&y).unwrap().det(),
            r.parse("x^2 + t*x*y + delta*y^2").unwrap()
        );
    }

    #[test]
    fn sample_norm_witness() {
        let w = extract_norm_witness(&m([[0, 4], [-2, 1]]), &m([[4, 3], [3, 0]])).unwrap();
        assert_eq!((w.alpha.clone(), w.beta.clone()), (i(-36), i(-5)));
        assert_eq!((w.u.clone(), w.v.clone()), (i(-36), i(-5)));
        assert_eq!(w.certified_value, i(1676));
        assert_eq!((w.t.clone(), w.delta.clone()), (i(1), i(8)));
        let (u0, v0) = to_discriminant_witness(&w);
        assert_eq!((u0.clone(), v0.clone()), (i(-77), i(-5)));
        assert_eq!(&u0.square() + &(&i(31) * &v0.square()), i(6704));
    }

    #[test]
    fn norm_witness_with_zero_corner_entry() {
        let w = extract_norm_witness(&m([[2, 5], [0, -1]]), &m([[1, 7], [3, 4]])).unwrap();
        assert!(w.certified_value.is_zero());
        assert_eq!(w.u, -&(&i(2) * &w.beta));
        let zero = to_discriminant_witness(&NormWitness {
            u: i(0),
            v: i(0),
            ..w
        });
        assert_eq!(zero, (i(0), i(0)));
    }

    #[test]
    fn traceless_sample() {
        let x = m([[0, 1], [1, 0]]);
        let y = m([[1, 0], [0, -1]]);
        let (p, q) = traceless_pq(&x, &y).unwrap();
        assert_eq!((p.clone(), q.clone()), (i(0), i(-1)));
        let disc = i(4);
        let lhs = -&x.commutator(&y).unwrap().det();
        assert_eq!(lhs, &p.square() - &(&disc * &q.square()));
        let (p, q) = traceless_pq(&x, &x).unwrap();
        assert_eq!(p.square(), &disc * &q.square());
        assert!(traceless_pq(&m([[1, 0], [0, 0]]), &y).is_err());
    }

    #[test]
    fn constant_diagonal_cases() {
        let scalar = m([[3, 0], [0, 3]]);
        assert!(constant_diagonal_value(&scalar, &m([[1, 2], [3, 4]]))
            .unwrap()
            .is_zero());
        let x = m([[2, 3], [-5, 2]]);
        let y = m([[7, -1], [4, 9]]);
        assert_eq!(
            constant_diagonal_value(&x, &y).unwrap(),
            -&x.commutator(&y).unwrap().det()
        );
        assert!(constant_diagonal_value(&m([[1, 0], [0, 2]]), &y).is_err());
    }

    #[test]
    fn constant_diagonal_set_matches_value_set() {
        let z3 = RingDescriptor::modular(3).unwrap();
        for c in 0..3 {
            let got = constant_diagonal_value_set_mod(0, 1, c, 3).unwrap();
            let want =
                crate::quadforms::value_set_mod(&QuadForm::from_ints(&z3, 1, 0, -c)).unwrap();
            assert_eq!(got, want, "c = {c}");
        }
    }

    #[test]
    fn factorization_sample() {
        let w = factor_construct(&i(-3), &i(8), &i(5), &i(1), &i(1)).unwrap();
        assert_eq!(w.x, m([[-2, -7], [-3, -3]]));
        assert_eq!(w.y, m([[-7, 8], [2, -8]]));
        assert_eq!(&w.x * &w.y, m([[0, 40], [15, 0]]));
        assert_eq!(w.x.commutator(&w.y).unwrap().det(), i(-25));
        let rep = extract_representation(&w.x1, &w.y1, &w.p, &w.q, &w.c).unwrap();
        assert_eq!((rep.r1, rep.r2, rep.value), (i(-1), i(1), i(5)));
    }

    #[test]
    fn unit_circle_point() {
        let w = factor_construct(&i(1), &i(1), &i(1), &i(1), &i(0)).unwrap();
        assert_eq!((w.x.det(), w.y.det()), (i(1), i(1)));
        assert_eq!(w.x.commutator(&w.y).unwrap().det(), i(-1));
        let rep = extract_representation(&w.x1, &w.y1, &i(1), &i(1), &i(1)).unwrap();
        assert_eq!(&rep.r1.square() + &rep.r2.square(), i(1));
    }

    #[test]
    fn conic_violation_rejected() {
        assert!(factor_construct(&i(-3), &i(8), &i(6), &i(1), &i(1)).is_err());
        assert!(curve_map(&i(-3), &i(8), &i(6), &i(1), &i(1)).is_err());
    }

    #[test]
    fn zero_c_rejected() {
        let w = factor_construct(&i(1), &i(-1), &i(0), &i(2), &i(2)).unwrap();
        assert!(matches!(
            extract_representation(&w.x1, &w.y1, &i(1), &i(-1), &i(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn modular_extraction_needs_unit() {
        let z7 = RingDescriptor::modular(7).unwrap();
        let (p, q, r, s) = (z7.int(3), z7.int(5), z7.int(2), z7.int(1));
        let c = &(&p * &r.square()) + &(&q * &s.square());
        let w = factor_construct(&p, &q, &c, &r, &s).unwrap();
        let rep = extract_representation(&w.x1, &w.y1, &p, &q, &c).unwrap();
        assert_eq!(rep.value, c);
        let z6 = RingDescriptor::modular(6).unwrap();
        let (p, q, r, s) = (z6.int(1), z6.int(1), z6.int(1), z6.int(1));
        let c = z6.int(2);
        let w = factor_construct(&p, &q, &c, &r, &s).unwrap();
        assert!(extract_representation(&w.x1, &w.y1, &p, &q, &c).is_err());
    }

    #[test]
    fn curve_images() {
        let f = |r: i64, s: i64| curve_map(&i(-3), &i(8), &i(5), &i(r), &i(s)).unwrap();
        assert_eq!(f(1, 1), SurfacePoint::from_ints(15, 5, -10));
        assert_eq!(f(-1, -1), SurfacePoint::from_ints(15, 5, -10));
        assert_eq!(f(1, -1), SurfacePoint::from_ints(-17, -7, -12));
        assert_eq!(f(3, 2), SurfacePoint::from_ints(87, 32, -53));
        assert_eq!(f(-3, 2), SurfacePoint::from_ints(-105, -40, -65));
        let rep = congruence_report(&i(-3), &i(8), &i(5), &i(3), &i(2), &f(3, 2)).unwrap();
        assert!(rep.all());
    }

    #[test]
    fn congruence_mod_zero_is_equality() {
        assert!(congruent(
            &BigInt::from(4),
            &BigInt::from(4),
            &BigInt::zero()
        ));
        assert!(!congruent(
            &BigInt::from(4),
            &BigInt::from(5),
            &BigInt::zero()
        ));
        assert!(congruent(
            &BigInt::from(-3),
            &BigInt::from(7),
            &BigInt::from(5)
        ));
    }

    #[test]
    fn preimages() {
        let (p, q, c) = (BigInt::from(-3), BigInt::from(8), BigInt::from(5));
        let pre = |x, y, z| preimage_search(&p, &q, &c, &SurfacePoint::from_ints(x, y, z)).unwrap();
        let none = pre(15, 5, 10);
        assert!(none.points.is_empty() && !none.bounded);
        let big = |a: i64, b: i64| (BigInt::from(a), BigInt::from(b));
        assert_eq!(pre(15, 5, -10).points, vec![big(-1, -1), big(1, 1)]);
        assert_eq!(pre(87, 32, -53).points, vec![big(-3, -2), big(3, 2)]);
    }

    #[test]
    fn preimage_fallback_is_flagged() {
        // z = c: point f(r, 0) with p r^2 = c
        let (p, q, c) = (BigInt::from(1), BigInt::from(1), BigInt::from(1));
        let pt = curve_map(&i(1), &i(1), &i(1), &i(1), &i(0)).unwrap();
        assert_eq!(pt.z, i(1));
        let res = preimage_search(&p, &q, &c, &pt).unwrap();
        assert!(res.bounded);
        assert!(res.points.contains(&(BigInt::from(1), BigInt::zero())));
    }

    #[test]
    fn corollary_triples() {
        let (a, b) = corollary_6_17_witnesses(&i(-3), &i(8), &i(5), &i(3), &i(2)).unwrap();
        assert!(a.on_plane_and_quadric(&i(-3), &i(8), &i(5)));
        assert_eq!(b.plane_value(&i(-3), &i(8)), i(5));
        let c = SurfacePoint::from_ints(5, 3, 4);
        assert!(c.on_plane_and_quadric(&i(-8), &i(13), &i(1)));
        for p in 2..20 {
            let t = SurfacePoint::from_ints(1, -1, 0);
            assert!(t.on_plane_and_quadric(&i(p), &i(p + 1), &i(1)));
        }
    }

    #[test]
    fn plane_quadric_finds_known_point() {
        let pts = plane_quadric_search(
            &BigInt::from(-8),
            &BigInt::from(13),
            &BigInt::from(-1),
            &BigInt::from(-1),
            10,
        )
        .unwrap();
        assert!(pts.contains(&SurfacePoint::from_ints(5, 3, 4)));
    }

    #[test]
    fn nil_plane_membership() {
        assert!(nilplane_counterexample_check());
        assert!(nil_in_vyy(&RingValue::nil(0, 0, 1)).unwrap());
        assert!(!nil_in_vyy(&RingValue::nil(1, 0, 0)).unwrap());
        assert!(!nil_in_vyy(&RingValue::nil(0, 0, 3)).unwrap());
        assert!(nil_in_vyy(&RingValue::nil(0, 0, 5)).unwrap());
        assert!(nil_in_vyy(&i(0)).is_err());
    }

    #[test]
    fn small_dichotomy() {
        assert!(scalar_characterization_check(2).unwrap());
        assert!(scalar_characterization_check(3).unwrap());
        assert!(scalar_characterization_check(7).is_err());
    }
}
