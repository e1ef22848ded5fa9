use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use entcat_ffi::*;

fn parse(s: &str) -> *mut EntcatVector {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { entcat_vector_parse(c.as_ptr(), false, &mut out) };
    assert_eq!(st, EntcatStatus::Ok, "{s}");
    out
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { entcat_string_free(s) };
    owned
}

fn last_error() -> String {
    let p = entcat_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn parse_round_trip_and_free() {
    let v = parse("0.4, 0.4, 0.1, 0.1");
    unsafe {
        assert_eq!(entcat_vector_len(v), 4);
        assert_eq!(take(entcat_vector_to_string(v)), "2/5,2/5,1/10,1/10");
        entcat_vector_free(v);
        entcat_vector_free(ptr::null_mut());
        assert_eq!(entcat_vector_len(ptr::null()), 0);
        assert!(entcat_vector_to_string(ptr::null()).is_null());
    }
}

#[test]
fn invalid_input_sets_status_and_message() {
    let c = CString::new("0.5,0.4").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { entcat_vector_parse(c.as_ptr(), false, &mut out) };
    assert_eq!(st, EntcatStatus::InvalidInput);
    assert!(out.is_null());
    assert!(last_error().contains("9/10"), "{}", last_error());

    let st = unsafe { entcat_vector_parse(c.as_ptr(), true, &mut out) };
    assert_eq!(st, EntcatStatus::Ok);
    assert!(entcat_last_error().is_null());
    unsafe { entcat_vector_free(out) };
}

#[test]
fn null_pointers_are_reported() {
    let mut flag = false;
    let st = unsafe { entcat_majorizes(ptr::null(), ptr::null(), &mut flag) };
    assert_eq!(st, EntcatStatus::NullPointer);
    let st = unsafe { entcat_vector_parse(ptr::null(), false, ptr::null_mut()) };
    assert_eq!(st, EntcatStatus::NullPointer);
}

#[test]
fn catalyzed_pair_through_the_abi() {
    let psi = parse("0.4,0.4,0.1,0.1");
    let phi = parse("0.5,0.25,0.25");
    let cat = parse("0.6,0.4");
    unsafe {
        let mut flag = true;
        assert_eq!(entcat_majorizes(psi, phi, &mut flag), EntcatStatus::Ok);
        assert!(!flag);
        assert_eq!(
            entcat_is_catalyst(cat, psi, phi, 1, &mut flag),
            EntcatStatus::Ok
        );
        assert!(flag);
        let mut m = 99;
        assert_eq!(
            entcat_min_catalyst_copies(cat, psi, phi, 4, &mut m),
            EntcatStatus::Ok
        );
        assert_eq!(m, 1);

        let mut frac = ptr::null_mut();
        assert_eq!(
            entcat_pmax(psi, phi, 1, ptr::null(), 0, &mut frac),
            EntcatStatus::Ok
        );
        assert_eq!(take(frac), "4/5");
        assert_eq!(
            entcat_pmax(psi, phi, 1, cat, 1, &mut frac),
            EntcatStatus::Ok
        );
        assert_eq!(take(frac), "1");

        let mut json = ptr::null_mut();
        let st = entcat_search_json(psi, phi, 2, 10, 1, ptr::null(), 0, &mut json);
        assert_eq!(st, EntcatStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        let hits = v["hits"].as_array().unwrap();
        assert!(!hits.is_empty());
        assert!(hits.iter().any(|h| h["catalyst"] == "3/5,2/5"), "{v}");

        for p in [psi, phi, cat] {
            entcat_vector_free(p);
        }
    }
}

#[test]
fn mlocc_tensor_power_and_bounds() {
    let psi = parse("0.4,0.4,0.1,0.1");
    let phi = parse("0.5,0.25,0.22,0.03");
    unsafe {
        let mut k = 0;
        assert_eq!(
            entcat_mlocc_threshold(psi, phi, 12, &mut k),
            EntcatStatus::Ok
        );
        assert_eq!(k, 5);

        let mut sq = ptr::null_mut();
        assert_eq!(entcat_vector_power(psi, 2, &mut sq), EntcatStatus::Ok);
        let mut t = ptr::null_mut();
        assert_eq!(entcat_vector_tensor(psi, psi, &mut t), EntcatStatus::Ok);
        assert_eq!(
            take(entcat_vector_to_string(sq)),
            take(entcat_vector_to_string(t))
        );
        assert_eq!(entcat_vector_len(sq), 16);

        let three = parse("0.5,0.25,0.25");
        let (mut lo, mut hi) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(
            entcat_bounds(psi, three, 2, &mut lo, &mut hi),
            EntcatStatus::DimensionMismatch
        );
        let phi4 = parse("0.5,0.25,0.2,0.05");
        assert_eq!(
            entcat_bounds(psi, phi4, 2, &mut lo, &mut hi),
            EntcatStatus::Ok
        );
        let (lo, hi) = (take(lo), take(hi));
        assert!(!lo.is_empty() && !hi.is_empty());

        for p in [psi, phi, sq, t, phi4, three] {
            entcat_vector_free(p);
        }
    }
}

#[test]
fn tradeoff_json_matches_known_rows() {
    let psi = parse("0.4,0.4,0.1,0.1");
    let phi = parse("0.5,0.25,0.2,0.05");
    let cat = parse("0.6,0.4");
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(
            entcat_tradeoff_json(psi, phi, cat, 3, 12, &mut json),
            EntcatStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        let text = v.to_string();
        assert!(text.contains("\"min_catalyst_copies\":11"), "{text}");
        for p in [psi, phi, cat] {
            entcat_vector_free(p);
        }
    }
}

#[test]
fn no_search_needed_is_distinct() {
    let psi = parse("0.5,0.5");
    let phi = parse("1");
    unsafe {
        let mut json = ptr::null_mut();
        let st = entcat_search_json(psi, phi, 2, 4, 1, ptr::null(), 0, &mut json);
        assert_eq!(st, EntcatStatus::NoSearchNeeded);
        assert!(json.is_null());
        entcat_vector_free(psi);
        entcat_vector_free(phi);
    }
}

#[test]
fn c_program_links_against_header_and_staticlib() {
    let Some(cc) = ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler available; skipping");
        return;
    };
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libentcat_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("entcat_smoke_{}", std::process::id()));
    let status = Command::new(cc)
        .arg(crate_dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
