//! 2×2 matrices over a single ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::{RingDescriptor, RingValue};

/// A 2×2 matrix whose four entries share one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    m: [RingValue; 4],
}

/// The deformation parameter `q` together with the quantum integer `[2] = 1 + q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTraceContext {
    q: RingValue,
    two: RingValue,
}

impl QTraceContext {
    pub fn new(q: RingValue) -> Self {
        let two = &q.descriptor().one() + &q;
        QTraceContext { q, two }
    }

    pub fn q(&self) -> &RingValue {
        &self.q
    }

    /// `[2] = 1 + q`.
    pub fn two(&self) -> &RingValue {
        &self.two
    }
}

impl Mat2 {
    pub fn new(m11: RingValue, m12: RingValue, m21: RingValue, m22: RingValue) -> Result<Self> {
        for other in [&m12, &m21, &m22] {
            m11.check_same(other)?;
        }
        Ok(Mat2 {
            m: [m11, m12, m21, m22],
        })
    }

    pub fn from_ints(ring: &RingDescriptor, rows: [[i64; 2]; 2]) -> Self {
        Mat2 {
            m: [
                ring.int(rows[0][0]),
                ring.int(rows[0][1]),
                ring.int(rows[1][0]),
                ring.int(rows[1][1]),
            ],
        }
    }

    pub fn identity(ring: &RingDescriptor) -> Self {
        Mat2::scalar(ring.one())
    }

    pub fn zero(ring: &RingDescriptor) -> Self {
        Mat2::scalar(ring.zero())
    }

    pub fn scalar(v: RingValue) -> Self {
        let z = v.descriptor().zero();
        Mat2 {
            m: [v.clone(), z.clone(), z, v],
        }
    }

    /// Parses `[[m11,m12],[m21,m22]]` with entries in the given ring.
    pub fn parse(ring: &RingDescriptor, input: &str) -> Result<Self> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("[[")
            .and_then(|s| s.strip_suffix("]]"))
            .ok_or_else(|| Error::parse(input, "expected [[m11,m12],[m21,m22]]"))?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(Error::parse(input, "expected two rows"));
        }
        let mut entries = Vec::with_capacity(4);
        for row in rows {
            let cells = split_top_level(row);
            if cells.len() != 2 {
                return Err(Error::parse(input, "expected two entries per row"));
            }
            for cell in cells {
                entries.push(ring.parse(cell)?);
            }
        }
        let [m11, m12, m21, m22]: [RingValue; 4] = entries.try_into().expect("four entries");
        Ok(Mat2 {
            m: [m11, m12, m21, m22],
        })
    }

    pub fn m11(&self) -> &RingValue {
        &self.m[0]
    }
    pub fn m12(&self) -> &RingValue {
        &self.m[1]
    }
    pub fn m21(&self) -> &RingValue {
        &self.m[2]
    }
    pub fn m22(&self) -> &RingValue {
        &self.m[3]
    }

    pub fn entries(&self) -> &[RingValue; 4] {
        &self.m
    }

    pub fn rows(&self) -> [[&RingValue; 2]; 2] {
        [[&self.m[0], &self.m[1]], [&self.m[2], &self.m[3]]]
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.m[0].descriptor()
    }

    fn check_same(&self, other: &Mat2) -> Result<()> {
        self.m[0].check_same(&other.m[0])
    }

    pub fn checked_mul(&self, other: &Mat2) -> Result<Mat2> {
        self.check_same(other)?;
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Ok(Mat2 {
            m: [
                &(a * e) + &(b * g),
                &(a * f) + &(b * h),
                &(c * e) + &(d * g),
                &(c * f) + &(d * h),
            ],
        })
    }

    pub fn checked_add(&self, other: &Mat2) -> Result<Mat2> {
        self.check_same(other)?;
        Ok(self.zip(other, |x, y| x + y))
    }

    pub fn checked_sub(&self, other: &Mat2) -> Result<Mat2> {
        self.check_same(other)?;
        Ok(self.zip(other, |x, y| x - y))
    }

    fn zip(&self, other: &Mat2, f: impl Fn(&RingValue, &RingValue) -> RingValue) -> Mat2 {
        Mat2 {
            m: std::array::from_fn(|i| f(&self.m[i], &other.m[i])),
        }
    }

    fn map(&self, f: impl Fn(&RingValue) -> RingValue) -> Mat2 {
        Mat2 {
            m: std::array::from_fn(|i| f(&self.m[i])),
        }
    }

    /// `XY − YX`.
    pub fn commutator(&self, other: &Mat2) -> Result<Mat2> {
        self.checked_mul(other)?
            .checked_sub(&other.checked_mul(self)?)
    }

    pub fn scale(&self, k: &RingValue) -> Mat2 {
        self.map(|x| x * k)
    }

    pub fn det(&self) -> RingValue {
        let [a, b, c, d] = &self.m;
        &(a * d) - &(b * c)
    }

    pub fn trace(&self) -> RingValue {
        &self.m[0] + &self.m[3]
    }

    /// `m11 + q·m22`.
    pub fn qtrace(&self, ctx: &QTraceContext) -> RingValue {
        &self.m[0] + &(ctx.q() * &self.m[3])
    }

    /// `m11 − m22`.
    pub fn supertrace(&self) -> RingValue {
        &self.m[0] - &self.m[3]
    }

    /// Classical adjoint `[[d, −b], [−c, a]]`.
    pub fn adjoint(&self) -> Mat2 {
        let [a, b, c, d] = &self.m;
        Mat2 {
            m: [d.clone(), -b, -c, a.clone()],
        }
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Mat2) -> Result<Mat2> {
        self.check_same(other)?;
        Ok(self.zip(other, |x, y| x * y))
    }

    /// `M² − tr(M)·M + det(M)·I`, which vanishes for every `M`.
    pub fn cayley_hamilton_residual(&self) -> Mat2 {
        let sq = self * self;
        let t = self.scale(&self.trace());
        let d = Mat2::scalar(self.det());
        &(&sq - &t) + &d
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(RingValue::is_zero)
    }

    pub fn is_scalar(&self) -> bool {
        self.m[1].is_zero() && self.m[2].is_zero() && self.m[0] == self.m[3]
    }

    /// Subtracts `m22·I` so the (2,2) entry becomes zero; commutators with
    /// any other matrix are unchanged.
    pub fn normalize_corner(&self) -> Mat2 {
        self - &Mat2::scalar(self.m[3].clone())
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

fn expect<T>(r: Result<T>) -> T {
    r.unwrap_or_else(|e| panic!("{e}"))
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        expect(self.checked_mul(rhs))
    }
}

impl Add for &Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &Mat2) -> Mat2 {
        expect(self.checked_add(rhs))
    }
}

impl Sub for &Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &Mat2) -> Mat2 {
        expect(self.checked_sub(rhs))
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.map(|x| -x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: RingDescriptor = RingDescriptor::Integers;

    fn m(rows: [[i64; 2]; 2]) -> Mat2 {
        Mat2::from_ints(&Z, rows)
    }

    fn generic() -> (RingDescriptor, Mat2) {
        let r = RingDescriptor::polynomial(&["a", "b", "c", "d"]).unwrap();
        let g = |n: &str| r.generator(n).unwrap();
        let x = Mat2::new(g("a"), g("b"), g("c"), g("d")).unwrap();
        (r, x)
    }

    #[test]
    fn product_of_sample_pair() {
        assert_eq!(
            &m([[0, 4], [-2, 1]]) * &m([[4, 3], [3, 0]]),
            m([[12, 0], [-5, -6]])
        );
        let x = m([[0, 4], [-2, 1]]);
        assert_eq!(&x * &Mat2::identity(&Z), x);
    }

    #[test]
    fn factorization_sample_product() {
        let x = m([[-2, -7], [-3, -3]]);
        let y = m([[-7, 8], [2, -8]]);
        let xy = &x * &y;
        assert_eq!(xy, m([[0, 40], [15, 0]]));
        assert_eq!(xy, m([[0, 8], [3, 0]]).scale(&RingValue::int(5)));
    }

    #[test]
    fn commutator_of_sample_pair() {
        let c = m([[0, 4], [-2, 1]])
            .commutator(&m([[4, 3], [3, 0]]))
            .unwrap();
        assert_eq!(c, m([[18, -19], [-5, -18]]));
        assert_eq!(c.det(), RingValue::int(-419));
        assert!(c.trace().is_zero());
        assert_eq!(&c * &c, Mat2::scalar(RingValue::int(419)));
        let x = m([[3, 1], [4, 1]]);
        assert!(x.commutator(&x).unwrap().is_zero());
    }

    #[test]
    fn determinant_cases() {
        assert_eq!(Mat2::identity(&Z).det(), RingValue::int(1));
        assert_eq!(m([[0, 4], [-2, 1]]).det(), RingValue::int(8));
        let (r, x) = generic();
        assert_eq!(x.det(), r.parse("a*d - b*c").unwrap());
    }

    #[test]
    fn trace_variants() {
        let r = RingDescriptor::polynomial(&["q", "a", "b", "c", "d"]).unwrap();
        let g = |n: &str| r.generator(n).unwrap();
        let ctx = QTraceContext::new(g("q"));
        assert_eq!(ctx.two(), &r.parse("1 + q").unwrap());
        let x = Mat2::new(-&(&g("q") * &g("d")), g("b"), g("c"), g("d")).unwrap();
        assert!(x.qtrace(&ctx).is_zero());
        let cd = Mat2::new(g("a"), g("b"), g("c"), g("a")).unwrap();
        assert!(cd.supertrace().is_zero());
        // a − pr = s for the factorization matrix at p=−3, r=s=1
        assert_eq!(m([[-2, -7], [-3, -3]]).supertrace(), RingValue::int(1));
    }

    #[test]
    fn adjoint_cases() {
        assert_eq!(Mat2::identity(&Z).adjoint(), Mat2::identity(&Z));
        let (r, x) = generic();
        assert_eq!(x.adjoint(), Mat2::parse(&r, "[[d,-b],[-c,a]]").unwrap());
        assert_eq!(&x * &x.adjoint(), Mat2::scalar(x.det()));
        assert_eq!(&x + &x.adjoint(), Mat2::scalar(x.trace()));
    }

    #[test]
    fn generic_cayley_hamilton() {
        let (_, x) = generic();
        assert!(x.cayley_hamilton_residual().is_zero());
    }

    #[test]
    fn parse_and_display() {
        let x = Mat2::parse(&Z, "[[0, 4], [-2, 1]]").unwrap();
        assert_eq!(x, m([[0, 4], [-2, 1]]));
        assert_eq!(x.to_string(), "[[0,4],[-2,1]]");
        assert!(Mat2::parse(&Z, "[[1,2],[3]]").is_err());
        assert!(Mat2::parse(&Z, "[1,2,3,4]").is_err());
        let r = RingDescriptor::polynomial(&["a", "b"]).unwrap();
        let y = Mat2::parse(&r, "[[a*b, (a+b)^2], [0, -a]]").unwrap();
        assert_eq!(y.m12(), &r.parse("a^2 + 2*a*b + b^2").unwrap());
    }

    #[test]
    fn mixed_entries_rejected() {
        let z5 = RingDescriptor::modular(5).unwrap();
        assert!(Mat2::new(Z.one(), Z.one(), z5.one(), Z.one()).is_err());
        assert!(m([[1, 0], [0, 1]])
            .checked_mul(&Mat2::identity(&z5))
            .is_err());
        assert!(m([[1, 0], [0, 1]])
            .commutator(&Mat2::identity(&z5))
            .is_err());
    }

    #[test]
    fn normalize_corner_keeps_commutator() {
        let x = m([[1, 2], [3, 4]]);
        let y = m([[5, 6], [7, 8]]);
        let yn = y.normalize_corner();
        assert!(yn.m22().is_zero());
        assert_eq!(x.commutator(&y).unwrap(), x.commutator(&yn).unwrap());
    }
}
