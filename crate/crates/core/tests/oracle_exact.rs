//! Frozen exact-arithmetic reference values. Every rational here was
//! produced by an independent generator; the library must reproduce each
//! one bit for bit.

use std::str::FromStr;

use b2dunkl::algebra::{dunkl, laplacian};
use b2dunkl::forms::{exp_half_laplacian, laguerre_element, pair_gauss, pair_tau};
use b2dunkl::harmonic::{basis_rows, norm_pi, project_harmonic, radical_indices};
use b2dunkl::kernel::kernel_e_rows;
use b2dunkl::{Params, Q, VPoly};
use num_complex::Complex;
use num_traits::{One, Zero};
use serde_json::Value;

fn fixture() -> Value {
    serde_json::from_str(include_str!("data/exact_oracle.json")).expect("fixture parses")
}

fn rat(v: &Value) -> Q {
    Q::from_str(v.as_str().expect("rational string")).expect("rational parses")
}

fn poly(v: &Value) -> VPoly {
    serde_json::from_value(v.clone()).expect("polynomial parses")
}

fn param_set(fx: &Value, idx: usize) -> Params {
    let p = &fx["param_sets"][idx];
    Params::new(rat(&p[0]), rat(&p[1]))
}

#[test]
fn closed_form_norms_match_fixture() {
    let fx = fixture();
    let tables = fx["nu_tables"].as_array().unwrap();
    assert_eq!(tables.len(), 3);
    for (si, table) in tables.iter().enumerate() {
        let params = param_set(&fx, si);
        let rows = table.as_array().unwrap();
        assert_eq!(rows.len(), 42);
        for row in rows {
            let n = row["n"].as_u64().unwrap() as u32;
            let i = row["i"].as_u64().unwrap() as u8;
            assert_eq!(
                norm_pi(n, i, &params),
                rat(&row["nu"]),
                "set {si} n={n} i={i}"
            );
        }
    }
}

#[test]
fn basis_polynomials_match_fixture() {
    let fx = fixture();
    let params = param_set(&fx, 0);
    let rows = basis_rows(5, &params);
    for i in 0..4usize {
        assert_eq!(rows[2][i], poly(&fx["basis_n2"][i]), "n=2 i={}", i + 1);
        assert_eq!(rows[3][i], poly(&fx["basis_n3"][i]), "n=3 i={}", i + 1);
    }
    assert_eq!(rows[5][2], poly(&fx["basis_n5_i3"]));
}

#[test]
fn dunkl_examples_match_fixture() {
    let fx = fixture();
    let params = param_set(&fx, 0);
    for ex in fx["dunkl_examples"].as_array().unwrap() {
        let axis = ex["axis"].as_u64().unwrap() as usize;
        let input = poly(&ex["input"]);
        let expect = poly(&ex["output"]);
        assert_eq!(dunkl(axis, &input, &params), expect, "axis {axis}");
    }
}

#[test]
fn pairing_examples_match_fixture() {
    let fx = fixture();
    let params = param_set(&fx, 0);
    let rows = basis_rows(1, &params);
    let ex = fx["pair_tau_examples"].as_array().unwrap();
    assert_eq!(
        pair_tau(&rows[1][1], &rows[1][1], &params),
        rat(&ex[0]["value"])
    );
    assert_eq!(
        pair_tau(&rows[1][0], &rows[1][2], &params),
        rat(&ex[1]["value"])
    );
    let xp = rows[1][0].mul_rsq_pow(1);
    assert_eq!(pair_tau(&xp, &xp, &params), rat(&ex[2]["value"]));
}

#[test]
fn gaussian_pairings_match_fixture() {
    let fx = fixture();
    for table in fx["gauss_tables"].as_array().unwrap() {
        let params = Params::new(rat(&table["k0"]), rat(&table["k1"]));
        let rows = basis_rows(4, &params);
        for row in table["rows"].as_array().unwrap() {
            let n = row["n"].as_u64().unwrap() as u32;
            let i = row["i"].as_u64().unwrap() as usize;
            let p = &rows[n as usize][i - 1];
            let xp = p.mul_rsq_pow(1);
            assert_eq!(pair_gauss(p, p, &params), rat(&row["nu_g_p"]), "n={n} i={i}");
            assert_eq!(pair_gauss(&xp, &xp, &params), rat(&row["nu_g_xp"]));
            assert_eq!(pair_gauss(p, &xp, &params), rat(&row["nu_g_cross"]));
        }
    }
}

#[test]
fn unit_circle_complex_values_match_fixture() {
    // p_{n,i}(1, i) for n <= 12: the values collapse to scaled fourth
    // roots, independent of the parameters.
    let fx = fixture();
    let params = param_set(&fx, 0);
    let rows = basis_rows(12, &params);
    let x = [
        Complex::new(Q::one(), Q::zero()),
        Complex::new(Q::zero(), Q::one()),
    ];
    for entry in fx["eval_1i"].as_array().unwrap() {
        let n = entry["n"].as_u64().unwrap() as usize;
        for (i, want) in entry["values"].as_array().unwrap().iter().enumerate() {
            let got = rows[n][i].eval_complex(&x);
            assert_eq!(got[0].re, rat(&want[0]), "n={n} i={} re1", i + 1);
            assert_eq!(got[0].im, rat(&want[1]), "n={n} i={} im1", i + 1);
            assert_eq!(got[1].re, rat(&want[2]), "n={n} i={} re2", i + 1);
            assert_eq!(got[1].im, rat(&want[3]), "n={n} i={} im2", i + 1);
        }
    }
}

#[test]
fn laplacian_and_exponential_match_fixture() {
    let fx = fixture();
    let params = param_set(&fx, 0);
    let ex = &fx["deltaF_example"];
    let input = poly(&ex["input"]);
    assert_eq!(laplacian(&input, &params), poly(&ex["laplacian"]));
    assert_eq!(
        exp_half_laplacian(&input, &params, false),
        poly(&ex["exp_half"])
    );
}

#[test]
fn harmonic_projection_matches_fixture() {
    let fx = fixture();
    let params = param_set(&fx, 0);
    let input = VPoly::monomial(2, 0, [Q::one(), Q::zero()]);
    let projected = project_harmonic(&input, &params).unwrap();
    assert_eq!(projected, poly(&fx["project_harmonic_x1sq_t1"]));
    assert!(laplacian(&projected, &params).is_zero());
    // The radial square of a constant projects to zero.
    let radial = VPoly::t1().mul_rsq_pow(1);
    assert!(project_harmonic(&radial, &params).unwrap().is_zero());
}

#[test]
fn laguerre_elements_match_fixture() {
    let fx = fixture();
    let params = param_set(&fx, 0);
    for entry in fx["laguerre"].as_array().unwrap() {
        let m = entry["m"].as_u64().unwrap() as u32;
        let n = entry["n"].as_u64().unwrap() as u32;
        let i = entry["i"].as_u64().unwrap() as u8;
        let elem = laguerre_element(m, n, i, &params);
        assert_eq!(elem.poly, poly(&entry["poly"]), "m={m} n={n} i={i}");
        assert_eq!(elem.nu_g, rat(&entry["nu_g"]));
    }
}

#[test]
fn kernel_rows_match_fixture() {
    let fx = fixture();
    let params = param_set(&fx, 0);
    let ke = &fx["kernel_e3"];
    let y = [rat(&ke["y"][0]), rat(&ke["y"][1])];
    let rows = kernel_e_rows(3, &y, &params).unwrap();
    assert_eq!(rows[0], poly(&ke["rows"][0]));
    assert_eq!(rows[1], poly(&ke["rows"][1]));
}

#[test]
fn radical_indices_match_fixture() {
    let fx = fixture();
    let params = Params::from_fracs((0, 1), (-1, 2));
    let got = radical_indices(&params, 6);
    let want: Vec<(u32, u8)> = fx["radical_k0_0_k1_neg_half"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p[0].as_u64().unwrap() as u32,
                p[1].as_u64().unwrap() as u8,
            )
        })
        .collect();
    assert_eq!(got, want);
}
