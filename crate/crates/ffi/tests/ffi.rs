use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use kmp_ffi::*;

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { kmp_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(kmp_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn cartan(json: &str) -> *mut KmpCartan {
    let src = CString::new(json).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { kmp_cartan_from_json(src.as_ptr(), &mut a) }, KmpStatus::Ok);
    a
}

#[test]
fn poincare_round_trip() {
    let a = cartan(r#"{"cartan": [[2,-1,-1,0],[-1,2,-1,0],[-1,-1,2,-1],[0,0,-3,2]]}"#);
    assert_eq!(unsafe { kmp_cartan_rank(a) }, 4);
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { kmp_poincare(a, &mut p) }, KmpStatus::Ok);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { kmp_ratfunc_to_json(p, &mut s) }, KmpStatus::Ok);
    let json = take_string(s);
    assert_eq!(
        json,
        r#"{"den":["1","-2","0","1","-1","-1","2"],"num":["1","2","2","2","2","2","1"]}"#
    );

    let src = CString::new(json.clone()).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { kmp_ratfunc_from_json(src.as_ptr(), &mut back) }, KmpStatus::Ok);
    let mut s2 = ptr::null_mut();
    unsafe { kmp_ratfunc_to_json(back, &mut s2) };
    assert_eq!(take_string(s2), json);

    let (mut d, mut z) = (-7i64, true);
    assert_eq!(unsafe { kmp_ratfunc_degree(p, &mut d, &mut z) }, KmpStatus::Ok);
    assert_eq!((d, z), (0, false));

    let mut ser = ptr::null_mut();
    assert_eq!(unsafe { kmp_ratfunc_series(p, 4, &mut ser) }, KmpStatus::Ok);
    assert_eq!(take_string(ser), r#"["1","4","10","21","41"]"#);

    let mut counts = [0u64; 16];
    let (mut written, mut truncated) = (0usize, true);
    let st = unsafe {
        kmp_weyl_counts(
            a,
            4,
            1_000_000,
            counts.as_mut_ptr(),
            counts.len(),
            &mut written,
            &mut truncated,
        )
    };
    assert_eq!(st, KmpStatus::Ok);
    assert_eq!(&counts[..written], &[1, 4, 10, 21, 41]);
    assert!(!truncated);

    let st = unsafe { kmp_weyl_counts(a, 4, 1_000_000, counts.as_mut_ptr(), 2, &mut written, &mut truncated) };
    assert_eq!(st, KmpStatus::BufferTooSmall);
    assert_eq!(written, 5);

    unsafe {
        kmp_ratfunc_free(back);
        kmp_ratfunc_free(p);
        kmp_cartan_free(a);
    }
}

#[test]
fn eval_and_reports() {
    let entries = [2i64, -1, -1, 2];
    let mut a = ptr::null_mut();
    assert_eq!(
        unsafe { kmp_cartan_from_entries(2, entries.as_ptr(), &mut a) },
        KmpStatus::Ok
    );
    let mut p = ptr::null_mut();
    unsafe { kmp_poincare(a, &mut p) };
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { kmp_ratfunc_eval(p, 2, 1, &mut v) }, KmpStatus::Ok);
    assert_eq!(take_string(v), "21");
    assert_eq!(unsafe { kmp_ratfunc_eval(p, 1, 0, &mut v) }, KmpStatus::Arithmetic);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { kmp_classify_json(a, &mut s) }, KmpStatus::Ok);
    assert!(take_string(s).contains(r#""label":"A2""#));
    assert_eq!(unsafe { kmp_indices_json(a, 10, &mut s) }, KmpStatus::Ok);
    assert_eq!(take_string(s), r#"{"2":"1","3":"-1"}"#);
    assert_eq!(unsafe { kmp_clr_json(a, &mut s) }, KmpStatus::Precondition);
    assert_eq!(last_error(), "conjecture scope excludes finite type");

    let h = cartan(r#"{"cartan": [[2,-1,-1],[-4,2,-1],[-1,-1,2]]}"#);
    assert_eq!(unsafe { kmp_clr_json(h, &mut s) }, KmpStatus::Ok);
    let clr = take_string(s);
    assert!(clr.contains(r#""K1":-1"#) && clr.contains(r#""degree":1"#), "{clr}");
    assert_eq!(unsafe { kmp_kac_json(h, 8, &mut s) }, KmpStatus::Ok);
    assert!(take_string(s).contains(r#""epsilon":0"#));
    assert_eq!(unsafe { kmp_poincare_json(h, &mut s) }, KmpStatus::Ok);
    assert!(take_string(s).contains("lcm_numerator"));

    unsafe {
        kmp_ratfunc_free(p);
        kmp_cartan_free(a);
        kmp_cartan_free(h);
    }
}

#[test]
fn errors_are_reported() {
    let mut a = ptr::null_mut();
    assert_eq!(
        unsafe { kmp_cartan_from_json(ptr::null(), &mut a) },
        KmpStatus::NullPointer
    );
    let bad = CString::new(r#"{"cartan": [[2,0],[-1,2]]}"#).unwrap();
    assert_eq!(
        unsafe { kmp_cartan_from_json(bad.as_ptr(), &mut a) },
        KmpStatus::InvalidMatrix
    );
    assert_eq!(last_error(), "invalid Cartan matrix: a[1][2] = 0 but a[2][1] = -1");
    let junk = CString::new("{").unwrap();
    assert_eq!(unsafe { kmp_cartan_from_json(junk.as_ptr(), &mut a) }, KmpStatus::Parse);
    let n = 17;
    let mut entries = vec![0i64; n * n];
    for i in 0..n {
        entries[i * n + i] = 2;
        if i + 1 < n {
            entries[i * n + i + 1] = -1;
            entries[(i + 1) * n + i] = -1;
        }
    }
    let mut big = ptr::null_mut();
    assert_eq!(
        unsafe { kmp_cartan_from_entries(n, entries.as_ptr(), &mut big) },
        KmpStatus::Ok
    );
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { kmp_poincare(big, &mut p) }, KmpStatus::RankLimit);
    assert!(p.is_null());
    unsafe { kmp_cartan_free(big) };
    assert_eq!(unsafe { kmp_poincare(ptr::null(), &mut p) }, KmpStatus::NullPointer);
    unsafe {
        kmp_cartan_free(ptr::null_mut());
        kmp_string_free(ptr::null_mut());
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn have_cc() -> bool {
    Command::new("cc")
        .arg("--version")
        .output()
        .is_ok_and(|o| o.status.success())
}

#[test]
fn header_compiles_as_c_and_cpp() {
    if !have_cc() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let header = crate_dir().join("include/kmp.h");
    for lang in ["c", "c++"] {
        let out = Command::new("cc")
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(&header)
            .output()
            .unwrap();
        assert!(out.status.success(), "{lang}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

fn static_lib() -> Option<PathBuf> {
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| crate_dir().join("../../target"));
    let exe = std::env::current_exe().ok()?;
    // tests run from target/<profile>/deps
    let profile_dir = exe.parent()?.parent()?.to_path_buf();
    [profile_dir, target.join("debug")]
        .into_iter()
        .map(|d| d.join("libkmp_ffi.a"))
        .find(|p| p.exists())
}

#[test]
fn c_program_links_and_runs() {
    if !have_cc() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let Some(lib) = static_lib() else {
        eprintln!("skipping: static library not built");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "kmp.h"
int main(void) {
    KmpCartan *a = NULL;
    KmpRatFunc *p = NULL;
    char *s = NULL;
    if (kmp_cartan_from_json("{\"cartan\": [[2,-1],[-1,2]]}", &a) != KMP_STATUS_OK) return 1;
    if (kmp_poincare(a, &p) != KMP_STATUS_OK) return 2;
    if (kmp_ratfunc_to_json(p, &s) != KMP_STATUS_OK) return 3;
    int ok = strcmp(s, "{\"den\":[\"1\"],\"num\":[\"1\",\"2\",\"2\",\"1\"]}") == 0;
    kmp_string_free(s);
    kmp_ratfunc_free(p);
    kmp_cartan_free(a);
    if (kmp_cartan_from_json("[", &a) != KMP_STATUS_PARSE) return 4;
    printf("%s\n", ok ? "ok" : "mismatch");
    return ok ? 0 : 5;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("driver");
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
