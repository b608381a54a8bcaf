use std::ffi::{CStr, CString};
use std::fs;
use std::ptr;

use libc::c_char;
use parstab_ffi::*;

fn data(name: &str) -> CString {
    let path = format!("{}/../core/data/{name}", env!("CARGO_MANIFEST_DIR"));
    CString::new(fs::read_to_string(path).unwrap()).unwrap()
}

fn last_error() -> String {
    let p = parstab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn cover(name: &str) -> *mut ParstabCover {
    let json = data(name);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { parstab_cover_from_json(json.as_ptr(), &mut out) },
        ParstabStatus::Ok
    );
    assert!(!out.is_null());
    out
}

fn orbifold(name: &str) -> *mut ParstabOrbifold {
    let json = data(name);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { parstab_orbifold_from_json(json.as_ptr(), &mut out) },
        ParstabStatus::Ok
    );
    out
}

fn take_json(s: *mut c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { parstab_string_free(s) };
    v
}

#[test]
fn cover_handle_reports_degree_and_genus() {
    let c = cover("hyperelliptic4.json");
    let mut g = 99;
    unsafe {
        assert_eq!(parstab_cover_degree(c), 2);
        assert_eq!(parstab_cover_genus(c, &mut g), ParstabStatus::Ok);
        parstab_cover_free(c);
    }
    assert_eq!(g, 1);
    assert!(parstab_last_error().is_null());
}

#[test]
fn verdicts_match_library() {
    let c = cover("cyclic6.json");
    let preserving = orbifold("marks_2_3.json");
    let obstructing = orbifold("marks_2_2.json");
    let mut v = ParstabVerdict::default();
    unsafe {
        assert_eq!(
            parstab_stability_verdict(c, preserving, 16, &mut v),
            ParstabStatus::Ok
        );
        assert_eq!(
            v,
            ParstabVerdict {
                preserved: true,
                rank: 1,
                witness_degree: 0
            }
        );

        assert_eq!(
            parstab_stability_verdict(c, obstructing, 16, &mut v),
            ParstabStatus::Ok
        );
        assert!(!v.preserved);
        assert_eq!(v.rank, 2);
        assert_eq!(v.witness_degree, 2);

        let mut rank = 0;
        assert_eq!(
            parstab_rank_of_f(c, obstructing, 16, &mut rank),
            ParstabStatus::Ok
        );
        assert_eq!(rank, 2);

        let mut gr1 = true;
        assert_eq!(
            parstab_gr1_hypothesis_holds(c, preserving, &mut gr1),
            ParstabStatus::Ok
        );
        assert!(!gr1);

        parstab_orbifold_free(preserving);
        parstab_orbifold_free(obstructing);
        parstab_cover_free(c);
    }
}

#[test]
fn unramified_cover_with_empty_orbifold_has_full_rank() {
    let c = cover("unramified3_genus1.json");
    let o = parstab_orbifold_empty();
    let mut v = ParstabVerdict::default();
    unsafe {
        assert_eq!(
            parstab_stability_verdict(c, o, 16, &mut v),
            ParstabStatus::Ok
        );
        parstab_orbifold_free(o);
        parstab_cover_free(c);
    }
    assert_eq!(
        v,
        ParstabVerdict {
            preserved: false,
            rank: 3,
            witness_degree: 3
        }
    );
}

#[test]
fn json_reports() {
    let c = cover("cyclic6.json");
    let o = orbifold("marks_2_2.json");
    let bundle = data("split_two.json");
    let (mut a, mut d, mut p) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(
            parstab_analyze_json(c, o, 16, true, &mut a),
            ParstabStatus::Ok
        );
        assert_eq!(parstab_direct_image_json(c, &mut d), ParstabStatus::Ok);
        assert_eq!(
            parstab_pullback_json(c, bundle.as_ptr(), &mut p),
            ParstabStatus::Ok
        );
    }
    let a = take_json(a);
    assert_eq!(a["verdict"], "NOT_PRESERVED");
    assert_eq!(a["rank_of_f"], 2);
    assert_eq!(a["block_systems"].as_array().unwrap().len(), 4);
    let d = take_json(d);
    assert_eq!(d["par_deg_is_zero"], true);
    assert_eq!(d["self_dual"], true);
    let p = take_json(p);
    assert_eq!(p["identity_holds"], true);
    assert_eq!(p["degree"], 6);
    unsafe {
        parstab_orbifold_free(o);
        parstab_cover_free(c);
    }
}

#[test]
fn invalid_cover_sets_status_and_message() {
    let json = data("single_transposition.json");
    let mut out = ptr::null_mut();
    let status = unsafe { parstab_cover_from_json(json.as_ptr(), &mut out) };
    assert_eq!(status, ParstabStatus::Invalid);
    assert!(out.is_null());
    assert!(last_error().contains("product relation"));
}

#[test]
fn malformed_documents_are_parse_errors() {
    let mut out = ptr::null_mut();
    let garbage = CString::new("{ \"degree\": ").unwrap();
    assert_eq!(
        unsafe { parstab_cover_from_json(garbage.as_ptr(), &mut out) },
        ParstabStatus::Parse
    );
    let repeated = data("repeated_index.json");
    assert_eq!(
        unsafe { parstab_cover_from_json(repeated.as_ptr(), &mut out) },
        ParstabStatus::Parse
    );
    assert!(out.is_null());

    let mut o = ptr::null_mut();
    let bad_order = CString::new(r#"{ "marked": [ { "point": "0", "N": 0 } ] }"#).unwrap();
    assert_eq!(
        unsafe { parstab_orbifold_from_json(bad_order.as_ptr(), &mut o) },
        ParstabStatus::Invalid
    );
}

#[test]
fn degree_cap_is_reported() {
    let c = cover("cyclic6.json");
    let o = parstab_orbifold_empty();
    let mut rank = 0;
    let status = unsafe { parstab_rank_of_f(c, o, 4, &mut rank) };
    assert_eq!(status, ParstabStatus::CapExceeded);
    assert!(last_error().contains('4'));
    unsafe {
        parstab_orbifold_free(o);
        parstab_cover_free(c);
    }
}

#[test]
fn null_pointers_are_rejected() {
    let mut rank = 0;
    let o = parstab_orbifold_empty();
    unsafe {
        assert_eq!(
            parstab_rank_of_f(ptr::null(), o, 16, &mut rank),
            ParstabStatus::NullPointer
        );
        assert!(last_error().contains("cover"));
        let mut out = ptr::null_mut();
        assert_eq!(
            parstab_cover_from_json(ptr::null(), &mut out),
            ParstabStatus::NullPointer
        );
        assert_eq!(parstab_cover_degree(ptr::null()), 0);
        parstab_cover_free(ptr::null_mut());
        parstab_string_free(ptr::null_mut());
        parstab_orbifold_free(o);
    }
}

#[test]
fn success_clears_previous_error() {
    let mut out = ptr::null_mut();
    unsafe { parstab_cover_from_json(ptr::null(), &mut out) };
    assert!(!parstab_last_error().is_null());
    let c = cover("double_0_infty.json");
    let mut g = 5;
    unsafe {
        assert_eq!(parstab_cover_genus(c, &mut g), ParstabStatus::Ok);
        parstab_cover_free(c);
    }
    assert_eq!(g, 0);
    assert!(parstab_last_error().is_null());
}
