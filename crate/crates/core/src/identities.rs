//! Catalog of commutator-determinant identities.
//!
//! Every identity is a list of equations built from named symbols. The same
//! builder runs over generic polynomials (a proof: every `lhs − rhs` expands
//! to zero) or over concrete bindings in any ring (a two-sided evaluation).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mat2::{Mat2, QTraceContext};
use crate::norms;
use crate::ring::{RingDescriptor, RingValue};

/// Symbol name → value, all in one ring.
pub type Bindings = BTreeMap<String, RingValue>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityId {
    I2_2,
    I2_5,
    I2_7,
    I2_8,
    I3_2,
    I3_5,
    I4_2,
    I4_3,
    I4_5,
    I4_4X,
    I4_9,
    I4_13,
    I4_15,
    I4_16,
    I5_8,
    I5_9,
    I5_14,
    I6_6,
    I6_10,
}

const GENERIC: &[&str] = &["a", "b", "c", "d", "e", "f", "g", "h"];
const GENERIC_Q: &[&str] = &["q", "a", "b", "c", "d", "e", "f", "g", "h"];
const CONIC: &[&str] = &["p", "q", "r", "s"];

impl IdentityId {
    pub const ALL: [IdentityId; 19] = [
        IdentityId::I2_2,
        IdentityId::I2_5,
        IdentityId::I2_7,
        IdentityId::I2_8,
        IdentityId::I3_2,
        IdentityId::I3_5,
        IdentityId::I4_2,
        IdentityId::I4_3,
        IdentityId::I4_5,
        IdentityId::I4_4X,
        IdentityId::I4_9,
        IdentityId::I4_13,
        IdentityId::I4_15,
        IdentityId::I4_16,
        IdentityId::I5_8,
        IdentityId::I5_9,
        IdentityId::I5_14,
        IdentityId::I6_6,
        IdentityId::I6_10,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            IdentityId::I2_2 => "I_2_2",
            IdentityId::I2_5 => "I_2_5",
            IdentityId::I2_7 => "I_2_7",
            IdentityId::I2_8 => "I_2_8",
            IdentityId::I3_2 => "I_3_2",
            IdentityId::I3_5 => "I_3_5",
            IdentityId::I4_2 => "I_4_2",
            IdentityId::I4_3 => "I_4_3",
            IdentityId::I4_5 => "I_4_5",
            IdentityId::I4_4X => "I_4_4X",
            IdentityId::I4_9 => "I_4_9",
            IdentityId::I4_13 => "I_4_13",
            IdentityId::I4_15 => "I_4_15",
            IdentityId::I4_16 => "I_4_16",
            IdentityId::I5_8 => "I_5_8",
            IdentityId::I5_9 => "I_5_9",
            IdentityId::I5_14 => "I_5_14",
            IdentityId::I6_6 => "I_6_6",
            IdentityId::I6_10 => "I_6_10",
        }
    }

    /// Free symbols, in the variable order used for the generic ring.
    pub fn symbols(self) -> &'static [&'static str] {
        match self {
            IdentityId::I2_2
            | IdentityId::I2_5
            | IdentityId::I2_7
            | IdentityId::I2_8
            | IdentityId::I4_3
            | IdentityId::I4_5
            | IdentityId::I4_4X
            | IdentityId::I4_16
            | IdentityId::I5_14 => GENERIC,
            IdentityId::I4_2 | IdentityId::I4_13 => GENERIC_Q,
            IdentityId::I3_2 => &["a", "b", "c", "e", "f", "g"],
            IdentityId::I3_5 => &["q", "b", "c", "d", "f", "g", "h"],
            IdentityId::I4_15 => &["q", "a", "b", "c", "e", "f", "g"],
            IdentityId::I4_9 => &["a", "b", "c", "d"],
            IdentityId::I5_8 => &["w", "z", "t", "delta"],
            IdentityId::I5_9 => &["x", "y", "t", "delta"],
            IdentityId::I6_6 | IdentityId::I6_10 => CONIC,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            IdentityId::I2_2 => "det[X,Y] = tr(X^2 Y^2) - tr((XY)^2)",
            IdentityId::I2_5 => "det(A - B) = det A + det B - tr(A B')",
            IdentityId::I2_7 => "det[X,Y] = 2 det X det Y - tr(X Y X' Y')",
            IdentityId::I2_8 => "tr(XY)^2 = tr(X^2 Y^2) + tr(X Y X' Y')",
            IdentityId::I3_2 => "traceless X, Y: det[X,Y] = 4 det(XY) - tr(XY)^2",
            IdentityId::I3_5 => "q-traceless X, Y: q det[X,Y] = [2]^2 det(XY) - tr_q(XY) tr_q(YX)",
            IdentityId::I4_2 => "q-trace determinantal formula for q det[X,Y]",
            IdentityId::I4_3 => "trace version: det[X,Y] in terms of det, tr and tr(XY)",
            IdentityId::I4_5 => "supertrace version: -det[X,Y] in terms of det, str and tr(XY)",
            IdentityId::I4_4X => "trace-only formula for det[X,Y], doubled",
            IdentityId::I4_9 => "(ac - bd)^2 = ab(c - d)^2 + cd(a - b)^2 + (ac + bd)(a - b)(c - d)",
            IdentityId::I4_13 => "tr_q(XY) + tr_q(YX) - t' tau - t tau' = [2](tr(XY) - t t')",
            IdentityId::I4_15 => "traceless X, Y: tr_q(XY) + tr_q(YX) = [2] tr(XY)",
            IdentityId::I4_16 => "str(XY) + str(YX) = tr X str Y + tr Y str X = 2 str(X*Y)",
            IdentityId::I5_8 => {
                "w^2 - (t^2 - 4 delta) z^2 = (w - tz)^2 + t(w - tz)(2z) + delta(2z)^2"
            }
            IdentityId::I5_9 => "4(x^2 + txy + delta y^2) = (2x + ty)^2 - (t^2 - 4 delta) y^2",
            IdentityId::I5_14 => {
                "-c^2 det[X,Y] as a value of x^2 + txy + delta y^2 and of x^2 - Delta y^2"
            }
            IdentityId::I6_6 => "factorization XY = cA with det[X,Y] = -c^2 on pr^2 + qs^2 = c",
            IdentityId::I6_10 => "conic point maps onto px + qy = -c and xy - z^2 = -c^2",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::parse(s, "unknown identity tag"))
    }
}

/// One side-by-side equation of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub label: String,
    pub lhs: RingValue,
    pub rhs: RingValue,
}

impl Equation {
    fn new(label: impl Into<String>, lhs: RingValue, rhs: RingValue) -> Self {
        Equation {
            label: label.into(),
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn residual(&self) -> RingValue {
        &self.lhs - &self.rhs
    }
}

/// Result of expanding every `lhs − rhs` of an identity over ℤ[symbols].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    /// First nonzero residual, or zero when the identity holds.
    pub residual: RingValue,
    pub holds: bool,
    pub equations: usize,
    pub term_count_lhs: usize,
    pub term_count_rhs: usize,
}

/// Symbol lookup over one ring.
struct Env<'a> {
    bindings: &'a Bindings,
    ring: RingDescriptor,
}

impl<'a> Env<'a> {
    fn new(id: IdentityId, bindings: &'a Bindings) -> Result<Self> {
        let mut ring = None;
        for name in id.symbols() {
            let v = bindings
                .get(*name)
                .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
            match &ring {
                None => ring = Some(v.descriptor()),
                Some(r) if *r != v.descriptor() => {
                    return Err(Error::DescriptorMismatch {
                        left: r.clone(),
                        right: v.descriptor(),
                    })
                }
                Some(_) => {}
            }
        }
        Ok(Env {
            bindings,
            ring: ring.expect("every identity has symbols"),
        })
    }

    fn get(&self, name: &str) -> RingValue {
        self.bindings[name].clone()
    }

    fn int(&self, k: i64) -> RingValue {
        self.ring.int(k)
    }

    fn mat(&self, names: [&str; 4]) -> Mat2 {
        let [a, b, c, d] = names.map(|n| self.get(n));
        Mat2::new(a, b, c, d).expect("one ring")
    }

    fn generic_pair(&self) -> (Mat2, Mat2) {
        (
            self.mat(["a", "b", "c", "d"]),
            self.mat(["e", "f", "g", "h"]),
        )
    }
}

/// Determinants, traces and q-traces of a pair, named as in the formulas.
struct PairData {
    delta: RingValue,
    delta_p: RingValue,
    t: RingValue,
    t_p: RingValue,
    tau: RingValue,
    tau_p: RingValue,
    sigma: RingValue,
    sigma_p: RingValue,
    tr_xy: RingValue,
    det_comm: RingValue,
}

impl PairData {
    fn new(x: &Mat2, y: &Mat2, ctx: &QTraceContext) -> Self {
        let xy = x * y;
        let yx = y * x;
        PairData {
            delta: x.det(),
            delta_p: y.det(),
            t: x.trace(),
            t_p: y.trace(),
            tau: x.qtrace(ctx),
            tau_p: y.qtrace(ctx),
            sigma: xy.qtrace(ctx),
            sigma_p: yx.qtrace(ctx),
            tr_xy: xy.trace(),
            det_comm: (&xy - &yx).det(),
        }
    }

    /// `δτ′² + δ′τ² + tr(XY)τ′τ`.
    fn tau_form(&self) -> RingValue {
        &(&(&self.delta * &self.tau_p.square()) + &(&self.delta_p * &self.tau.square()))
            + &(&self.tr_xy * &(&self.tau_p * &self.tau))
    }
}

fn mat_equations(label: &str, m: &Mat2, n: &Mat2) -> Vec<Equation> {
    const POS: [&str; 4] = ["11", "12", "21", "22"];
    m.entries()
        .iter()
        .zip(n.entries())
        .zip(POS)
        .map(|((a, b), pos)| Equation::new(format!("{label} [{pos}]"), a.clone(), b.clone()))
        .collect()
}

/// Evaluates both sides of every equation of `id` under `bindings`.
pub fn eval_identity(id: IdentityId, bindings: &Bindings) -> Result<Vec<Equation>> {
    let env = Env::new(id, bindings)?;
    build(id, &env)
}

fn build(id: IdentityId, env: &Env) -> Result<Vec<Equation>> {
    let tr = |m: &Mat2| m.trace();
    let eqs = match id {
        IdentityId::I2_2 => {
            let (x, y) = env.generic_pair();
            let xy = &x * &y;
            let x2y2 = &(&x * &x) * &(&y * &y);
            vec![Equation::new(
                "det[X,Y] = tr(X^2 Y^2) - tr((XY)^2)",
                x.commutator(&y)?.det(),
                &tr(&x2y2) - &tr(&(&xy * &xy)),
            )]
        }
        IdentityId::I2_5 => {
            let (a, b) = env.generic_pair();
            vec![Equation::new(
                "det(A - B) = det A + det B - tr(A B')",
                (&a - &b).det(),
                &(&a.det() + &b.det()) - &tr(&(&a * &b.adjoint())),
            )]
        }
        IdentityId::I2_7 => {
            let (x, y) = env.generic_pair();
            let xyxy = &(&x * &y) * &(&x.adjoint() * &y.adjoint());
            vec![Equation::new(
                "det[X,Y] = 2 det X det Y - tr(X Y X' Y')",
                x.commutator(&y)?.det(),
                &(&env.int(2) * &(&x.det() * &y.det())) - &tr(&xyxy),
            )]
        }
        IdentityId::I2_8 => {
            let (x, y) = env.generic_pair();
            let xyxy = &(&x * &y) * &(&x.adjoint() * &y.adjoint());
            let x2y2 = &(&x * &x) * &(&y * &y);
            vec![Equation::new(
                "tr(XY)^2 = tr(X^2 Y^2) + tr(X Y X' Y')",
                tr(&(&x * &y)).square(),
                &tr(&x2y2) + &tr(&xyxy),
            )]
        }
        IdentityId::I3_2 => {
            let (a, b, c, e, f, g) = (
                env.get("a"),
                env.get("b"),
                env.get("c"),
                env.get("e"),
                env.get("f"),
                env.get("g"),
            );
            let x = Mat2::new(a.clone(), b, c, -&a)?;
            let y = Mat2::new(e.clone(), f, g, -&e)?;
            let xy = &x * &y;
            vec![Equation::new(
                "det[X,Y] = 4 det(XY) - tr(XY)^2",
                x.commutator(&y)?.det(),
                &(&env.int(4) * &xy.det()) - &xy.trace().square(),
            )]
        }
        IdentityId::I3_5 => {
            let q = env.get("q");
            let ctx = QTraceContext::new(q.clone());
            let x = Mat2::new(
                -&(&q * &env.get("d")),
                env.get("b"),
                env.get("c"),
                env.get("d"),
            )?;
            let y = Mat2::new(
                -&(&q * &env.get("h")),
                env.get("f"),
                env.get("g"),
                env.get("h"),
            )?;
            let xy = &x * &y;
            let yx = &y * &x;
            let lhs = &q * &x.commutator(&y)?.det();
            let cross = &xy.qtrace(&ctx) * &yx.qtrace(&ctx);
            vec![
                Equation::new(
                    "q det[X,Y] = [2]^2 det(XY) - tr_q(XY) tr_q(YX)",
                    lhs.clone(),
                    &(&ctx.two().square() * &xy.det()) - &cross,
                ),
                Equation::new(
                    "q det[X,Y] = tr_q(X^2) tr_q(Y^2) - tr_q(XY) tr_q(YX)",
                    lhs,
                    &(&(&x * &x).qtrace(&ctx) * &(&y * &y).qtrace(&ctx)) - &cross,
                ),
            ]
        }
        IdentityId::I4_2 => {
            let (x, y) = env.generic_pair();
            let q = env.get("q");
            let ctx = QTraceContext::new(q.clone());
            let d = PairData::new(&x, &y, &ctx);
            let two = ctx.two();
            let rhs = &(&(&two.square() * &(&d.delta_p * &d.delta))
                - &(two
                    * &(&(&d.delta * &(&d.t_p * &d.tau_p)) + &(&d.delta_p * &(&d.t * &d.tau)))))
                + &(&d.tau_form() - &(&d.sigma_p * &d.sigma));
            vec![Equation::new(
                "q-trace determinantal formula",
                &q * &d.det_comm,
                rhs,
            )]
        }
        IdentityId::I4_3 => {
            let (x, y) = env.generic_pair();
            let d = PairData::new(&x, &y, &QTraceContext::new(env.int(1)));
            let rhs = &(&(&(&(&env.int(4) * &(&d.delta_p * &d.delta)) - &d.tr_xy.square())
                - &(&d.delta * &d.t_p.square()))
                - &(&d.delta_p * &d.t.square()))
                + &(&d.tr_xy * &(&d.t_p * &d.t));
            vec![Equation::new(
                "trace determinantal formula",
                d.det_comm,
                rhs,
            )]
        }
        IdentityId::I4_5 => {
            let (x, y) = env.generic_pair();
            let d = PairData::new(&x, &y, &QTraceContext::new(env.int(-1)));
            vec![Equation::new(
                "supertrace determinantal formula",
                -&d.det_comm,
                &d.tau_form() - &(&d.sigma * &d.sigma_p),
            )]
        }
        IdentityId::I4_4X => {
            let (x, y) = env.generic_pair();
            let (t, t_p) = (x.trace(), y.trace());
            let (tx2, ty2) = ((&x * &x).trace(), (&y * &y).trace());
            let trxy = (&x * &y).trace();
            let two = env.int(2);
            let rhs = &(&(&(&two * &(&tx2 * &ty2)) - &(&two * &trxy.square()))
                - &(&(&tx2 * &t_p.square()) + &(&ty2 * &t.square())))
                + &(&two * &(&trxy * &(&t_p * &t)));
            vec![Equation::new(
                "2 det[X,Y] = trace-only formula times 2",
                &two * &x.commutator(&y)?.det(),
                rhs,
            )]
        }
        IdentityId::I4_9 => {
            let (a, b, c, d) = (env.get("a"), env.get("b"), env.get("c"), env.get("d"));
            let tau = &a - &b;
            let tau_p = &c - &d;
            let ac = &a * &c;
            let bd = &b * &d;
            let mixed = &(&ac + &bd) * &(&tau * &tau_p);
            let quartic =
                &(&(&(&a * &b) * &tau_p.square()) + &(&(&c * &d) * &tau.square())) + &mixed;
            vec![
                Equation::new("(ac - bd)^2 quartic", (&ac - &bd).square(), quartic.clone()),
                Equation::new(
                    "(c tau + b tau')^2 quartic",
                    (&(&c * &tau) + &(&b * &tau_p)).square(),
                    quartic,
                ),
            ]
        }
        IdentityId::I4_13 => {
            let (x, y) = env.generic_pair();
            let ctx = QTraceContext::new(env.get("q"));
            let d = PairData::new(&x, &y, &ctx);
            vec![Equation::new(
                "sigma + sigma' - t' tau - t tau' = [2](tr(XY) - t' t)",
                &(&(&d.sigma + &d.sigma_p) - &(&d.t_p * &d.tau)) - &(&d.t * &d.tau_p),
                ctx.two() * &(&d.tr_xy - &(&d.t_p * &d.t)),
            )]
        }
        IdentityId::I4_15 => {
            let ctx = QTraceContext::new(env.get("q"));
            let a = env.get("a");
            let e = env.get("e");
            let x = Mat2::new(a.clone(), env.get("b"), env.get("c"), -&a)?;
            let y = Mat2::new(e.clone(), env.get("f"), env.get("g"), -&e)?;
            let xy = &x * &y;
            vec![Equation::new(
                "tr_q(XY) + tr_q(YX) = [2] tr(XY)",
                &xy.qtrace(&ctx) + &(&y * &x).qtrace(&ctx),
                ctx.two() * &xy.trace(),
            )]
        }
        IdentityId::I4_16 => {
            let (x, y) = env.generic_pair();
            let lhs = &(&x * &y).supertrace() + &(&y * &x).supertrace();
            vec![
                Equation::new(
                    "str(XY) + str(YX) = tr X str Y + tr Y str X",
                    lhs.clone(),
                    &(&x.trace() * &y.supertrace()) + &(&y.trace() * &x.supertrace()),
                ),
                Equation::new(
                    "str(XY) + str(YX) = 2 str(X*Y)",
                    lhs,
                    &env.int(2) * &x.hadamard(&y)?.supertrace(),
                ),
            ]
        }
        IdentityId::I5_8 => {
            let (w, z, t, delta) = (env.get("w"), env.get("z"), env.get("t"), env.get("delta"));
            let disc = &t.square() - &(&env.int(4) * &delta);
            let m = &w - &(&t * &z);
            let z2 = &env.int(2) * &z;
            vec![Equation::new(
                "w^2 - Delta z^2 = x^2 + t x y + delta y^2 at (w - tz, 2z)",
                &w.square() - &(&disc * &z.square()),
                &(&m.square() + &(&t * &(&m * &z2))) + &(&delta * &z2.square()),
            )]
        }
        IdentityId::I5_9 => {
            let (x, y, t, delta) = (env.get("x"), env.get("y"), env.get("t"), env.get("delta"));
            let disc = &t.square() - &(&env.int(4) * &delta);
            let form = &(&x.square() + &(&t * &(&x * &y))) + &(&delta * &y.square());
            vec![Equation::new(
                "4(x^2 + txy + delta y^2) = (2x + ty)^2 - Delta y^2",
                &env.int(4) * &form,
                &(&(&env.int(2) * &x) + &(&t * &y)).square() - &(&disc * &y.square()),
            )]
        }
        IdentityId::I5_14 => build_norm_witness(env)?,
        IdentityId::I6_6 => build_factorization(env)?,
        IdentityId::I6_10 => build_curve(env)?,
    };
    Ok(eqs)
}

fn build_norm_witness(env: &Env) -> Result<Vec<Equation>> {
    let (a, b, c, d) = (env.get("a"), env.get("b"), env.get("c"), env.get("d"));
    let (e, f, g, h) = (env.get("e"), env.get("f"), env.get("g"), env.get("h"));
    let c2 = c.square();
    let mut eqs = Vec::new();

    // traceless pair and the explicit P, Q
    let x0 = Mat2::new(a.clone(), b.clone(), c.clone(), -&a)?;
    let y0 = Mat2::new(e.clone(), f.clone(), g.clone(), -&e)?;
    let (p, q) = norms::traceless_pq(&x0, &y0)?;
    let disc = &env.int(-4) * &x0.det();
    eqs.push(Equation::new(
        "traceless: -c^2 det[X,Y] = P^2 - Delta Q^2",
        -&(&c2 * &x0.commutator(&y0)?.det()),
        &p.square() - &(&disc * &q.square()),
    ));

    // X2 = [[0,b],[c,d-a]] against Y shifted to a zero (2,2) entry
    let x = Mat2::new(a.clone(), b.clone(), c.clone(), d.clone())?;
    let y = Mat2::new(e.clone(), f.clone(), g.clone(), h.clone())?;
    let yn = y.normalize_corner();
    let dma = &d - &a;
    let x2 = Mat2::new(env.int(0), b.clone(), c.clone(), dma.clone())?;
    let (en, fn_, gn) = (yn.m11().clone(), yn.m12().clone(), yn.m21().clone());
    let alpha = -&(&(&c2 * &fn_) - &(&c * &(&b * &gn)));
    let beta = &(&c * &en) + &(&gn * &dma);
    eqs.push(Equation::new(
        "-c^2 det[X2,Y] = alpha^2 + (d - a) alpha beta - bc beta^2",
        -&(&c2 * &x2.commutator(&yn)?.det()),
        &(&alpha.square() + &(&dma * &(&alpha * &beta))) - &(&(&b * &c) * &beta.square()),
    ));
    eqs.push(Equation::new(
        "[X2,Y] = [X,Y]",
        x2.commutator(&yn)?.det(),
        x.commutator(&y)?.det(),
    ));

    let w = norms::extract_norm_witness(&x, &y)?;
    let target = -&(&c2 * &x.commutator(&y)?.det());
    eqs.push(Equation::new(
        "extracted witness: u^2 + t u v + delta v^2 = -c^2 det[X,Y]",
        &(&w.u.square() + &(&w.t * &(&w.u * &w.v))) + &(&w.delta * &w.v.square()),
        target.clone(),
    ));
    let (u0, v0) = norms::to_discriminant_witness(&w);
    let big_disc = &w.t.square() - &(&env.int(4) * &w.delta);
    eqs.push(Equation::new(
        "discriminant witness: u0^2 - Delta v0^2 = -4 c^2 det[X,Y]",
        &u0.square() - &(&big_disc * &v0.square()),
        &env.int(4) * &target,
    ));
    Ok(eqs)
}

/// `(c, a, b, X, Y)` of the factorization construction with `c := pr² + qs²`.
fn conic_matrices(env: &Env) -> Result<(RingValue, RingValue, RingValue, Mat2, Mat2)> {
    let (p, q, r, s) = (env.get("p"), env.get("q"), env.get("r"), env.get("s"));
    let c = &(&p * &r.square()) + &(&q * &s.square());
    let a = &s + &(&p * &r);
    let b = &r - &(&q * &s);
    let x = Mat2::new(a.clone(), b.clone(), &p * &s, &p * &r)?;
    let y = Mat2::new(b.clone(), &q * &r, -&a, -&(&q * &s))?;
    Ok((c, a, b, x, y))
}

fn build_factorization(env: &Env) -> Result<Vec<Equation>> {
    let (p, q, r, s) = (env.get("p"), env.get("q"), env.get("r"), env.get("s"));
    let (c, a, b, x, y) = conic_matrices(env)?;
    let z = env.int(0);
    let ca = Mat2::new(z.clone(), &c * &q, -&(&c * &p), z)?;
    let x1 = y.adjoint();
    let y1 = -&x.adjoint();
    let c2 = c.square();

    let mut eqs = vec![Equation::new(
        "ar - bs = c",
        &(&a * &r) - &(&b * &s),
        c.clone(),
    )];
    eqs.extend(mat_equations("XY = cA", &(&x * &y), &ca));
    eqs.push(Equation::new("det X = cp", x.det(), &c * &p));
    eqs.push(Equation::new("det Y = cq", y.det(), &c * &q));
    eqs.push(Equation::new("str X = s", x.supertrace(), s.clone()));
    eqs.push(Equation::new("str Y = r", y.supertrace(), r.clone()));
    let dc = x.commutator(&y)?.det();
    eqs.push(Equation::new(
        "det[X,Y] = -(cp) r^2 - (cq) s^2",
        dc.clone(),
        -&(&(&(&c * &p) * &r.square()) + &(&(&c * &q) * &s.square())),
    ));
    eqs.push(Equation::new("det[X,Y] = -c^2", dc, -&c2));
    eqs.extend(mat_equations("X1 Y1 = cA", &(&x1 * &y1), &ca));
    eqs.push(Equation::new("det X1 = cq", x1.det(), &c * &q));
    eqs.push(Equation::new("det Y1 = cp", y1.det(), &c * &p));
    eqs.push(Equation::new(
        "det[X1,Y1] = -c^2",
        x1.commutator(&y1)?.det(),
        -&c2,
    ));

    let w = norms::factor_construct(&p, &q, &c, &r, &s)?;
    eqs.extend(mat_equations("factor_construct X", &w.x, &x));
    eqs.extend(mat_equations("factor_construct Y", &w.y, &y));
    Ok(eqs)
}

fn build_curve(env: &Env) -> Result<Vec<Equation>> {
    let (p, q, r, s) = (env.get("p"), env.get("q"), env.get("r"), env.get("s"));
    let (c, a, b, x, y) = conic_matrices(env)?;
    let two = env.int(2);
    let px = &r * &(&(&two * &(&q * &s)) - &r);
    let py = -&(&s * &(&(&two * &(&p * &r)) + &s));
    let pz = &(&(&r * &s) + &(&p * &r.square())) - &(&q * &s.square());

    let m = x.commutator(&y)?;
    let expected = Mat2::new(-&pz, px.clone(), -&py, pz.clone())?;
    let mut eqs = mat_equations("[X,Y] = [[-z,x],[-y,z]]", &m, &expected);
    eqs.push(Equation::new(
        "x = q^2 s^2 - b^2",
        px.clone(),
        &(&q.square() * &s.square()) - &b.square(),
    ));
    eqs.push(Equation::new(
        "y = p^2 r^2 - a^2",
        py.clone(),
        &(&p.square() * &r.square()) - &a.square(),
    ));
    eqs.push(Equation::new(
        "z = ab + pqrs",
        pz.clone(),
        &(&a * &b) + &(&(&p * &q) * &(&r * &s)),
    ));
    eqs.push(Equation::new(
        "px + qy = -c",
        &(&p * &px) + &(&q * &py),
        -&c,
    ));
    eqs.push(Equation::new(
        "xy - z^2 = -c^2",
        &(&px * &py) - &pz.square(),
        -&c.square(),
    ));
    eqs.push(Equation::new(
        "z = s(r - 2qs) + c",
        pz.clone(),
        &(&s * &(&r - &(&two * &(&q * &s)))) + &c,
    ));
    eqs.push(Equation::new(
        "z = r(s + 2pr) - c",
        pz.clone(),
        &(&r * &(&s + &(&two * &(&p * &r)))) - &c,
    ));

    let pt = norms::curve_map(&p, &q, &c, &r, &s)?;
    let neg = norms::curve_map(&p, &q, &c, &-&r, &-&s)?;
    eqs.push(Equation::new("curve_map x", pt.x.clone(), px));
    eqs.push(Equation::new("curve_map y", pt.y.clone(), py));
    eqs.push(Equation::new("curve_map z", pt.z.clone(), pz));
    eqs.push(Equation::new("f(-r,-s) x", neg.x, pt.x));
    eqs.push(Equation::new("f(-r,-s) y", neg.y, pt.y));
    eqs.push(Equation::new("f(-r,-s) z", neg.z, pt.z));
    Ok(eqs)
}

/// The generic polynomial ring of an identity and its symbols bound to generators.
pub fn generic_bindings(id: IdentityId) -> (RingDescriptor, Bindings) {
    let ring = RingDescriptor::polynomial(id.symbols()).expect("valid symbol list");
    let bindings = id
        .symbols()
        .iter()
        .map(|n| (n.to_string(), ring.generator(n).expect("generator")))
        .collect();
    (ring, bindings)
}

/// Expands every equation of `id` over ℤ[symbols] and reports the residual.
pub fn prove_identity(id: IdentityId) -> IdentityReport {
    let (ring, bindings) = generic_bindings(id);
    let eqs = eval_identity(id, &bindings).expect("generic bindings cover every symbol");
    report_from(id, &ring, &eqs)
}

pub(crate) fn report_from(
    id: IdentityId,
    ring: &RingDescriptor,
    eqs: &[Equation],
) -> IdentityReport {
    let residual = eqs
        .iter()
        .map(Equation::residual)
        .find(|r| !r.is_zero())
        .unwrap_or_else(|| ring.zero());
    IdentityReport {
        id,
        holds: residual.is_zero(),
        residual,
        equations: eqs.len(),
        term_count_lhs: eqs.iter().map(|e| e.lhs.term_count()).sum(),
        term_count_rhs: eqs.iter().map(|e| e.rhs.term_count()).sum(),
    }
}

/// The three special cases of the supertrace formula; returns `(lhs, rhs)`.
pub fn corollary_4_7_eval(case: u8, x: &Mat2, y: &Mat2) -> Result<(RingValue, RingValue)> {
    let ring = x.descriptor();
    let xy = x.checked_mul(y)?;
    let yx = y * x;
    let d = PairData::new(x, y, &QTraceContext::new(ring.int(-1)));
    match case {
        1 => {
            if !(xy.m11().is_zero() && xy.m22().is_zero()) {
                return Err(Error::precondition(
                    "case 1 requires XY to have a zero diagonal",
                ));
            }
            Ok((
                -&d.det_comm,
                &(&d.delta * &d.tau_p.square()) + &(&d.delta_p * &d.tau.square()),
            ))
        }
        2 => {
            if x.m11() != x.m22() {
                return Err(Error::precondition(
                    "case 2 requires X to have a constant diagonal",
                ));
            }
            Ok((
                -&d.det_comm,
                &(&d.delta * &d.tau_p.square()) - &(&xy.supertrace() * &yx.supertrace()),
            ))
        }
        3 => {
            if xy != yx {
                return Err(Error::precondition("case 3 requires XY = YX"));
            }
            Ok((xy.supertrace().square(), d.tau_form()))
        }
        other => Err(Error::precondition(format!(
            "case must be 1, 2 or 3, got {other}"
        ))),
    }
}

/// For integer `X`, `Y` of determinant zero: whether `tr(XY)` divides
/// `det[X,Y]` (zero divides only zero).
pub fn remark_4_4b_divisibility_check(x: &Mat2, y: &Mat2) -> Result<bool> {
    if x.descriptor() != RingDescriptor::Integers {
        return Err(Error::WrongRing {
            expected: "Z",
            found: x.descriptor(),
        });
    }
    if !x.det().is_zero() || !y.det().is_zero() {
        return Err(Error::precondition("requires det X = det Y = 0"));
    }
    let t = x.checked_mul(y)?.trace();
    let dc = x.commutator(y)?.det();
    let t = t.as_integer().expect("integer");
    Ok(if t == &0.into() {
        dc.is_zero()
    } else {
        dc.div_exact_int(t).is_some()
    })
}
