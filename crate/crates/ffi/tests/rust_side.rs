use std::ffi::{CStr, CString};
use std::ptr;

use adhm_ffi::*;

fn fixture(name: &str) -> CString {
    let p = format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read_to_string(p).unwrap()).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(adhm_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn round_trip_and_verify() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(adhm_datum_from_json(fixture("sp_k1.json").as_ptr(), &mut d), AdhmStatus::Ok);
        let mut regular = false;
        assert_eq!(adhm_datum_is_regular(d, &mut regular), AdhmStatus::Ok);
        assert!(regular);
        let mut s = ptr::null_mut();
        assert_eq!(adhm_datum_to_json(d, &mut s), AdhmStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(adhm_datum_from_json(s, &mut back), AdhmStatus::Ok);
        adhm_string_free(s);
        let mut ok = false;
        let mut report = ptr::null_mut();
        assert_eq!(adhm_datum_verify(back, &mut ok, &mut report), AdhmStatus::Ok);
        assert!(ok);
        let r: serde_json::Value = serde_json::from_str(CStr::from_ptr(report).to_str().unwrap()).unwrap();
        assert_eq!(r["moment_map_zero"], true);
        adhm_string_free(report);
        adhm_datum_free(back);
        adhm_datum_free(d);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(adhm_datum_from_json(fixture("malformed.json").as_ptr(), &mut d), AdhmStatus::Parse);
        assert!(d.is_null());
        assert!(last_error().contains("parse"));
        assert_eq!(adhm_datum_from_json(ptr::null(), &mut d), AdhmStatus::NullPointer);

        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(adhm_datum_from_json(fixture("gl_k2_a.json").as_ptr(), &mut a), AdhmStatus::Ok);
        assert_eq!(adhm_datum_from_json(fixture("gl_k2_overlap.json").as_ptr(), &mut b), AdhmStatus::Ok);
        let inputs = [a as *const AdhmDatum, b as *const AdhmDatum];
        let verb = CString::new("tensor").unwrap();
        let (mut out, mut ok) = (ptr::null_mut(), false);
        assert_eq!(adhm_product(verb.as_ptr(), inputs.as_ptr(), 2, 0, &mut out, &mut ok), AdhmStatus::CommonEigenvalue);
        assert!(out.is_null());

        let mut n = 0;
        assert_eq!(adhm_count_so3(4, 3, 1, false, &mut n), AdhmStatus::Unsupported);
        assert_eq!(adhm_count_homw(0, 3, 2, &mut n), AdhmStatus::Ok);
        assert_eq!(n, 33);
        assert!(last_error().is_empty());
        adhm_datum_free(a);
        adhm_datum_free(b);
    }
}

#[test]
fn so6_through_handles() {
    unsafe {
        let mut x = ptr::null_mut();
        assert_eq!(adhm_datum_from_json(fixture("gl_k1_w4.json").as_ptr(), &mut x), AdhmStatus::Ok);
        let verb = CString::new("so6").unwrap();
        let inputs = [x as *const AdhmDatum];
        let (mut out, mut ok) = (ptr::null_mut(), false);
        assert_eq!(adhm_product(verb.as_ptr(), inputs.as_ptr(), 1, 3, &mut out, &mut ok), AdhmStatus::Ok);
        assert!(ok);
        let (mut dv, mut dw) = (0, 0);
        assert_eq!(adhm_datum_dims(out, &mut dv, &mut dw), AdhmStatus::Ok);
        assert_eq!((dv, dw), (2, 6));
        adhm_datum_free(out);
        adhm_datum_free(x);
    }
}
