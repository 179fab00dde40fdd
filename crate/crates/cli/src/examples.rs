//! Replay of the worked numeric examples. Only the published expectations
//! are hardcoded here; derived values are checked by the test suites.

use std::fmt::Write as _;

use commdet_core::norms::{
    corollary_6_17_witnesses, curve_map, extract_norm_witness, nilplane_counterexample_check,
    preimage_search, to_discriminant_witness, SurfacePoint,
};
use commdet_core::quadforms::{discriminant, eval_form, representable_mod, search_representation};
use commdet_core::{Error, Mat2, QuadForm, RingDescriptor, RingValue};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::render::{int, ring};
use crate::{Format, EXIT_MATH, EXIT_OK};

const Z: RingDescriptor = RingDescriptor::Integers;

/// `pass` holds exactly when `expected == computed`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleEntry {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

fn entry(name: &str, expected: Value, computed: Result<Value, Error>) -> ExampleEntry {
    let computed = computed.unwrap_or_else(|e| json!({ "error": e.to_string() }));
    ExampleEntry {
        name: name.to_string(),
        pass: expected == computed,
        expected,
        computed,
    }
}

fn big(s: &str) -> BigInt {
    s.parse().expect("decimal literal")
}

fn zi(k: i64) -> RingValue {
    RingValue::int(k)
}

fn point(pt: &SurfacePoint) -> Value {
    json!([ring(&pt.x), ring(&pt.y), ring(&pt.z)])
}

fn sample_pair() -> (Mat2, Mat2) {
    (
        Mat2::from_ints(&Z, [[0, 4], [-2, 1]]),
        Mat2::from_ints(&Z, [[4, 3], [3, 0]]),
    )
}

fn search(p: i64, q: i64, c: i64) -> Result<commdet_core::SearchOutcome, Error> {
    search_representation(&QuadForm::from_ints(&Z, p, 0, q), &BigInt::from(c), 1000)
}

fn curve_point(r: i64, s: i64) -> Result<Value, Error> {
    curve_map(&zi(-3), &zi(8), &zi(5), &zi(r), &zi(s)).map(|pt| point(&pt))
}

fn surface_values(p: i64, q: i64, pt: SurfacePoint) -> Value {
    json!([
        ring(&pt.plane_value(&zi(p), &zi(q))),
        ring(&pt.quadric_value())
    ])
}

/// Every ledger entry, in a fixed order.
pub fn ledger() -> Vec<ExampleEntry> {
    let (x, y) = sample_pair();
    let witness = extract_norm_witness(&x, &y);
    let (large_r, large_s) = (big("264638639242"), big("196660308201"));
    vec![
        entry(
            "remark_5_4_det",
            json!(419),
            x.commutator(&y).map(|k| ring(&-&k.det())),
        ),
        entry(
            "discriminant_t1_delta8",
            json!(-31),
            discriminant(&zi(1), &zi(8)).map(|d| ring(&d)),
        ),
        entry(
            "x2_plus_31y2_represents_6704",
            json!([77, 5]),
            search(1, 31, 6704).map(|o| match o.found {
                Some(rep) => json!([ring(&rep.r1), ring(&rep.r2)]),
                None => Value::Null,
            }),
        ),
        entry(
            "x2_plus_31y2_omits_1676",
            json!({"proved_absent": true, "y_bound": 7}),
            search(1, 31, 1676).map(|o| {
                json!({
                    "proved_absent": o.proved_absent,
                    "y_bound": o.analytic_bounds.map(|(_, b)| int(&b)),
                })
            }),
        ),
        entry(
            "norm_witness_alpha_beta",
            json!([-36, -5]),
            witness
                .clone()
                .map(|w| json!([ring(&w.alpha), ring(&w.beta)])),
        ),
        entry(
            "norm_witness_value",
            json!(1676),
            eval_form(&QuadForm::from_ints(&Z, 1, 1, 8), &zi(-36), &zi(-5)).map(|v| ring(&v)),
        ),
        entry(
            "discriminant_witness",
            json!([-77, -5]),
            witness.map(|w| {
                let (u0, v0) = to_discriminant_witness(&w);
                json!([ring(&u0), ring(&v0)])
            }),
        ),
        entry(
            "discriminant_witness_value",
            json!(6704),
            eval_form(&QuadForm::from_ints(&Z, 1, 0, 31), &zi(77), &zi(5)).map(|v| ring(&v)),
        ),
        entry("curve_image_1_1", json!([15, 5, -10]), curve_point(1, 1)),
        entry(
            "curve_image_m1_m1",
            json!([15, 5, -10]),
            curve_point(-1, -1),
        ),
        entry(
            "curve_image_1_m1",
            json!([-17, -7, -12]),
            curve_point(1, -1),
        ),
        entry(
            "curve_image_m1_1",
            json!([-17, -7, -12]),
            curve_point(-1, 1),
        ),
        entry("curve_image_3_2", json!([87, 32, -53]), curve_point(3, 2)),
        entry(
            "curve_image_m3_2",
            json!([-105, -40, -65]),
            curve_point(-3, 2),
        ),
        entry(
            "point_15_5_10_outside_image",
            json!({"points": [], "bounded": false}),
            preimage_search(
                &BigInt::from(-3),
                &BigInt::from(8),
                &BigInt::from(5),
                &SurfacePoint::from_ints(15, 5, 10),
            )
            .map(|res| {
                let points: Vec<Value> = res
                    .points
                    .iter()
                    .map(|(r, s)| json!([int(r), int(s)]))
                    .collect();
                json!({"points": points, "bounded": res.bounded})
            }),
        ),
        entry(
            "small_pair_minus4_13",
            json!(1),
            eval_form(&QuadForm::from_ints(&Z, -4, 0, 13), &zi(9), &zi(5)).map(|v| ring(&v)),
        ),
        entry(
            "large_pair_37_minus67",
            json!(1),
            eval_form(
                &QuadForm::from_ints(&Z, 37, 0, -67),
                &RingValue::Int(large_r.clone()),
                &RingValue::Int(large_s.clone()),
            )
            .map(|v| ring(&v)),
        ),
        entry(
            "large_triple_has_19_digits",
            json!(true),
            corollary_6_17_witnesses(
                &zi(37),
                &zi(-67),
                &zi(1),
                &RingValue::Int(large_r),
                &RingValue::Int(large_s),
            )
            .map(|(_, second)| {
                let digits = |v: &RingValue| {
                    v.as_integer()
                        .map_or(0, |k| k.magnitude().to_string().len())
                };
                json!([&second.x, &second.y, &second.z]
                    .iter()
                    .all(|v| digits(v) >= 19))
            }),
        ),
        entry(
            "triple_5_3_4_on_surfaces",
            json!([-1, -1]),
            Ok(surface_values(-8, 13, SurfacePoint::from_ints(5, 3, 4))),
        ),
        entry(
            "minus8_13_misses_plus_minus_1_mod_8",
            json!([false, false]),
            [1, -1]
                .map(|c| {
                    representable_mod(&BigInt::from(-8), &BigInt::from(13), &BigInt::from(c), 8)
                })
                .into_iter()
                .collect::<Result<Vec<bool>, Error>>()
                .map(|v| json!(v)),
        ),
        entry(
            "triple_1_m1_0_on_surfaces",
            json!([-1, -1]),
            Ok(surface_values(2, 3, SurfacePoint::from_ints(1, -1, 0))),
        ),
        entry(
            "nilplane_counterexample",
            json!(true),
            Ok(json!(nilplane_counterexample_check())),
        ),
    ]
}

/// One entry per line inside a JSON array.
pub fn render(format: Format) -> (i32, String) {
    let entries = ledger();
    let mut out = String::new();
    match format {
        Format::Json => {
            let lines: Vec<String> = entries
                .iter()
                .map(|e| serde_json::to_string(e).expect("serializable"))
                .collect();
            writeln!(out, "[\n{}\n]", lines.join(",\n")).unwrap();
        }
        Format::Text => {
            for e in &entries {
                let verdict = if e.pass { "PASS" } else { "FAIL" };
                writeln!(
                    out,
                    "{verdict} {} expected={} computed={}",
                    e.name, e.expected, e.computed
                )
                .unwrap();
            }
        }
    }
    let code = if entries.iter().all(|e| e.pass) {
        EXIT_OK
    } else {
        EXIT_MATH
    };
    (code, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_passes() {
        for e in ledger() {
            assert!(
                e.pass,
                "{}: expected {} computed {}",
                e.name, e.expected, e.computed
            );
        }
    }

    #[test]
    fn mandated_entry_shape() {
        let (code, out) = render(Format::Json);
        assert_eq!(code, EXIT_OK);
        assert!(
            out.contains(r#"{"name":"remark_5_4_det","expected":419,"computed":419,"pass":true}"#)
        );
        let parsed: Vec<ExampleEntry> = serde_json::from_str::<Vec<Value>>(&out)
            .unwrap()
            .into_iter()
            .map(|v| ExampleEntry {
                name: v["name"].as_str().unwrap().to_string(),
                expected: v["expected"].clone(),
                computed: v["computed"].clone(),
                pass: v["pass"].as_bool().unwrap(),
            })
            .collect();
        assert_eq!(parsed, ledger());
    }

    #[test]
    fn mismatch_is_reported() {
        let e = entry("x", json!(1), Ok(json!(2)));
        assert!(!e.pass);
        let e = entry("x", json!(1), Err(Error::InvalidWitness("bad".into())));
        assert!(!e.pass);
        assert_eq!(e.computed, json!({"error": "witness check failed: bad"}));
    }
}
