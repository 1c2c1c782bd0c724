use std::ffi::{CStr, CString};
use std::ptr;

use acl_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(acl_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn lattice(spec: &str) -> *mut AclLattice {
    let mut l = ptr::null_mut();
    assert_eq!(
        unsafe { acl_lattice_new(c(spec).as_ptr(), &mut l) },
        AclStatus::Ok
    );
    l
}

#[test]
fn lattice_handles_and_errors() {
    let l = lattice("luk:4");
    assert_eq!(unsafe { acl_lattice_size(l) }, 4);
    unsafe { acl_lattice_free(l) };
    let mut bad = ptr::null_mut();
    assert_eq!(
        unsafe { acl_lattice_new(c("bool:9").as_ptr(), &mut bad) },
        AclStatus::LatticeError
    );
    assert!(last_error().contains("size"));
    assert_eq!(
        unsafe { acl_lattice_new(c("nope:2").as_ptr(), &mut bad) },
        AclStatus::ParseError
    );
    assert_eq!(
        unsafe { acl_lattice_new(ptr::null(), &mut bad) },
        AclStatus::NullPointer
    );
    assert!(bad.is_null());
}

#[test]
fn evaluation_round_trips_through_literals() {
    let l = lattice("luk:3");
    let mut a = ptr::null_mut();
    assert_eq!(
        unsafe { acl_step_parse(l, c("step(1/2=0,1=1)").as_ptr(), &mut a) },
        AclStatus::Ok
    );
    let names = [c("a")];
    let name_ptrs = [names[0].as_ptr()];
    let values = [a as *const AclStep];
    let mut r = ptr::null_mut();
    let status = unsafe {
        acl_eval(
            l,
            c("a + a").as_ptr(),
            name_ptrs.as_ptr(),
            values.as_ptr(),
            1,
            &mut r,
        )
    };
    assert_eq!(status, AclStatus::Ok);
    let mut leq = false;
    assert_eq!(unsafe { acl_step_leq(a, r, &mut leq) }, AclStatus::Ok);
    assert!(leq);
    let s = unsafe { acl_step_to_string(a) };
    assert_eq!(
        unsafe { CStr::from_ptr(s) }.to_str().unwrap(),
        "step(1/2=0,1=1)"
    );
    unsafe {
        acl_string_free(s);
        acl_step_free(a);
        acl_step_free(r);
        acl_lattice_free(l);
    }
}

#[test]
fn validity_with_witness() {
    let l = lattice("luk:3");
    let mut w = ptr::null_mut();
    let status = unsafe {
        acl_sequent_valid(
            l,
            c("cflew").as_ptr(),
            c("2 a |- a + a").as_ptr(),
            2,
            200,
            0,
            &mut w,
        )
    };
    assert_eq!(status, AclStatus::Negative);
    assert!(unsafe { CStr::from_ptr(w) }
        .to_str()
        .unwrap()
        .starts_with("a = step("));
    unsafe { acl_string_free(w) };
    let status = unsafe {
        acl_sequent_valid(
            l,
            c("cflew").as_ptr(),
            c("a |- a").as_ptr(),
            2,
            50,
            0,
            &mut w,
        )
    };
    assert_eq!(status, AclStatus::Ok);
    assert!(w.is_null());
    unsafe { acl_lattice_free(l) };
}

#[test]
fn prove_then_check() {
    let mut proof = ptr::null_mut();
    let status = unsafe {
        acl_prove(
            c("ljk").as_ptr(),
            c("2 a |- a + a").as_ptr(),
            8,
            2,
            false,
            &mut proof,
        )
    };
    assert_eq!(status, AclStatus::Ok);
    let status = unsafe { acl_check_proof(c("ljk").as_ptr(), proof, 2, false) };
    assert_eq!(status, AclStatus::Ok);
    unsafe { acl_string_free(proof) };
    let status =
        unsafe { acl_check_proof(c("ljk").as_ptr(), c("(Id \"a |- b\")").as_ptr(), 2, false) };
    assert_eq!(status, AclStatus::Negative);
    assert!(!last_error().is_empty());
    let status = unsafe {
        acl_prove(
            c("gl").as_ptr(),
            c("a |- b").as_ptr(),
            4,
            1,
            false,
            &mut proof,
        )
    };
    assert_eq!(status, AclStatus::Negative);
    assert!(proof.is_null());
    assert_eq!(last_error(), "n_max_exhausted");
}

#[test]
fn header_declares_the_interface() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/acl.h")).unwrap();
    for name in [
        "acl_lattice_new",
        "acl_prove",
        "acl_check_proof",
        "AclStatus",
        "ACL_STATUS_NEGATIVE",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
