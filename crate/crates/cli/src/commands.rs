use std::fmt::Write as _;

use commdet_core::norms::{
    congruence_report, curve_map, extract_norm_witness, factor_construct, preimage_search,
    to_discriminant_witness, SurfacePoint,
};
use commdet_core::quadforms::{search_representation, value_set_mod};
use commdet_core::{
    prove_identity, Error, IdentityId, IdentityReport, Mat2, QuadForm, RingDescriptor, RingValue,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::render::{self, int, mat, ring};
use crate::{
    examples, Command, CurveArgs, FactorArgs, Format, NormWitnessArgs, Outcome, PreimageArgs,
    RepresentArgs, ValuesModArgs, VerifyArgs, EXIT_MATH, EXIT_OK, EXIT_USAGE,
};

const Z: RingDescriptor = RingDescriptor::Integers;

/// A handler either renders a document with an exit code or fails with a
/// library error.
type Handled = Result<(i32, String), Error>;

pub fn dispatch(cmd: &Command, format: Format) -> Outcome {
    let handled = match cmd {
        Command::Verify(a) => Ok(verify(a, format)),
        Command::Represent(a) => represent(a, format),
        Command::Factor(a) => factor(a, format),
        Command::Curve(a) => curve(a, format),
        Command::Preimage(a) => preimage(a, format),
        Command::NormWitness(a) => norm_witness(a, format),
        Command::ValuesMod(a) => values_mod(a, format),
        Command::Examples => Ok(examples::render(format)),
    };
    match handled {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: error_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Failed certificates are mathematical failures; everything else is bad input.
fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidWitness(_) => EXIT_MATH,
        _ => EXIT_USAGE,
    }
}

fn certify(ok: bool, what: &str) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidWitness(format!("{what} failed to re-verify")))
    }
}

fn zi(k: &BigInt) -> RingValue {
    RingValue::Int(k.clone())
}

fn verify(a: &VerifyArgs, format: Format) -> (i32, String) {
    let ids: Vec<IdentityId> = match a.identity {
        Some(id) => vec![id],
        None => IdentityId::ALL.to_vec(),
    };
    let reports: Vec<IdentityReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = ids
            .iter()
            .map(|&id| scope.spawn(move || prove_identity(id)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("proof thread"))
            .collect()
    });
    let mut out = String::new();
    for r in &reports {
        let residual_terms = r.residual.term_count();
        match format {
            Format::Json => {
                let line =
                    json!({"id": r.id.tag(), "holds": r.holds, "residual_terms": residual_terms});
                writeln!(out, "{line}").unwrap();
            }
            Format::Text => {
                let verdict = if r.holds { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{verdict} {} residual_terms={residual_terms} ({})",
                    r.id.tag(),
                    r.id.description()
                )
                .unwrap();
            }
        }
    }
    let code = if reports.iter().all(|r| r.holds) {
        EXIT_OK
    } else {
        EXIT_MATH
    };
    (code, out)
}

fn represent(a: &RepresentArgs, format: Format) -> Handled {
    let zero = BigInt::from(0);
    let t = a.t.as_ref().unwrap_or(&zero);
    let delta = a
        .delta
        .as_ref()
        .or(a.q.as_ref())
        .expect("clap requires --q or --delta");
    let f = QuadForm::new(zi(&a.p), zi(t), zi(delta))?;
    let outcome = search_representation(&f, &a.c, a.bound)?;
    if let Some(rep) = &outcome.found {
        certify(
            f.verifies(rep) && rep.value.as_integer() == Some(&a.c),
            "representation",
        )?;
    }
    let (r1, r2) = match &outcome.found {
        Some(rep) => (ring(&rep.r1), ring(&rep.r2)),
        None => (Value::Null, Value::Null),
    };
    let bounds = match &outcome.analytic_bounds {
        Some((b1, b2)) => json!([int(b1), int(b2)]),
        None => Value::Null,
    };
    let doc = json!({
        "form": {"s": int(&a.p), "t": int(t), "delta": int(delta)},
        "c": int(&a.c),
        "bound": a.bound,
        "found": outcome.found.is_some(),
        "r1": r1,
        "r2": r2,
        "proved_absent": outcome.proved_absent,
        "analytic_bounds": bounds,
    });
    Ok((EXIT_OK, render::document(&doc, format)))
}

fn factor(a: &FactorArgs, format: Format) -> Handled {
    let (r, s) = match (&a.r, &a.s) {
        (Some(r), Some(s)) => (r.clone(), s.clone()),
        _ => {
            let f = QuadForm::diagonal(zi(&a.p), zi(&a.q))?;
            let outcome = search_representation(&f, &a.c, a.bound)?;
            match outcome.found {
                Some(rep) => (
                    rep.r1.as_integer().expect("integer").clone(),
                    rep.r2.as_integer().expect("integer").clone(),
                ),
                None => {
                    let doc = json!({
                        "p": int(&a.p),
                        "q": int(&a.q),
                        "c": int(&a.c),
                        "found": false,
                        "proved_absent": outcome.proved_absent,
                    });
                    return Ok((EXIT_OK, render::document(&doc, format)));
                }
            }
        }
    };
    let w = factor_construct(&zi(&a.p), &zi(&a.q), &zi(&a.c), &zi(&r), &zi(&s))?;
    w.verify()?;
    let doc = json!({
        "p": ring(&w.p),
        "q": ring(&w.q),
        "c": ring(&w.c),
        "found": true,
        "r": ring(&w.r),
        "s": ring(&w.s),
        "X": mat(&w.x),
        "Y": mat(&w.y),
        "X1": mat(&w.x1),
        "Y1": mat(&w.y1),
        "A": mat(&w.a),
        "det_commutator": ring(&w.x.commutator(&w.y)?.det()),
        "verified": true,
    });
    Ok((EXIT_OK, render::document(&doc, format)))
}

fn curve(a: &CurveArgs, format: Format) -> Handled {
    let [p, q, c, r, s] = [&a.p, &a.q, &a.c, &a.r, &a.s].map(zi);
    let pt = curve_map(&p, &q, &c, &r, &s)?;
    certify(
        curve_map(&p, &q, &c, &-&r, &-&s)? == pt,
        "evenness f(-r,-s) = f(r,s)",
    )?;
    let cong = congruence_report(&p, &q, &c, &r, &s, &pt)?;
    certify(cong.all(), "congruence report")?;
    let doc = json!({
        "x": ring(&pt.x),
        "y": ring(&pt.y),
        "z": ring(&pt.z),
        "plane_value": ring(&pt.plane_value(&p, &q)),
        "quadric_value": ring(&pt.quadric_value()),
        "congruences": {
            "x_mod_2q": cong.x_mod_2q,
            "y_mod_2p": cong.y_mod_2p,
            "z_mod_s": cong.z_mod_s,
            "z_mod_r": cong.z_mod_r,
        },
    });
    Ok((EXIT_OK, render::document(&doc, format)))
}

fn preimage(a: &PreimageArgs, format: Format) -> Handled {
    let pt = SurfacePoint {
        x: zi(&a.x),
        y: zi(&a.y),
        z: zi(&a.z),
    };
    let res = preimage_search(&a.p, &a.q, &a.c, &pt)?;
    let [p, q, c] = [&a.p, &a.q, &a.c].map(zi);
    for (r, s) in &res.points {
        certify(
            curve_map(&p, &q, &c, &zi(r), &zi(s))? == pt,
            "preimage point",
        )?;
    }
    let points: Vec<Value> = res
        .points
        .iter()
        .map(|(r, s)| json!([int(r), int(s)]))
        .collect();
    let doc = json!({"points": points, "bounded": res.bounded});
    Ok((EXIT_OK, render::document(&doc, format)))
}

fn parse_matrix(s: &str) -> Result<Mat2, Error> {
    Mat2::parse(&Z, &s.replace('_', ""))
}

fn norm_witness(a: &NormWitnessArgs, format: Format) -> Handled {
    let (x, y) = (parse_matrix(&a.x)?, parse_matrix(&a.y)?);
    let w = extract_norm_witness(&x, &y)?;
    let dc = x.commutator(&y)?.det();
    certify(w.form_value() == w.certified_value, "norm witness")?;
    certify(
        w.certified_value == -&(&w.c.square() * &dc),
        "certified value",
    )?;
    let (u0, v0) = to_discriminant_witness(&w);
    let disc = &w.t.square() - &w.delta.scale(4);
    let disc_value = &u0.square() - &(&disc * &v0.square());
    certify(
        disc_value == w.certified_value.scale(4),
        "discriminant witness",
    )?;
    let doc = json!({
        "X": mat(&x),
        "Y": mat(&y),
        "det_commutator": ring(&dc),
        "c": ring(&w.c),
        "t": ring(&w.t),
        "delta": ring(&w.delta),
        "alpha": ring(&w.alpha),
        "beta": ring(&w.beta),
        "u": ring(&w.u),
        "v": ring(&w.v),
        "certified_value": ring(&w.certified_value),
        "discriminant": ring(&disc),
        "discriminant_witness": [ring(&u0), ring(&v0)],
        "discriminant_value": ring(&disc_value),
    });
    Ok((EXIT_OK, render::document(&doc, format)))
}

fn values_mod(a: &ValuesModArgs, format: Format) -> Handled {
    let rn = RingDescriptor::modular(a.n)?;
    let f = QuadForm::new(
        rn.from_bigint(&a.s),
        rn.from_bigint(&a.t),
        rn.from_bigint(&a.delta),
    )?;
    let values = value_set_mod(&f)?;
    let doc = json!({
        "form": {"s": int(&a.s), "t": int(&a.t), "delta": int(&a.delta)},
        "n": a.n,
        "values": values.into_iter().collect::<Vec<u64>>(),
    });
    Ok((EXIT_OK, render::document(&doc, format)))
}
