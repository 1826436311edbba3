//! Exercises the library through its C calling convention.

use defext_capi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn make_theory(text: &str) -> *mut DefextTheory {
    let mut theory: *mut DefextTheory = ptr::null_mut();
    let text = CString::new(text).unwrap();
    let status = unsafe { defext_theory_from_text(text.as_ptr(), &mut theory) };
    assert_eq!(status, DefextStatus::Ok);
    assert!(!theory.is_null());
    theory
}

fn default_params() -> DefextParams {
    let mut params = std::mem::MaybeUninit::<DefextParams>::uninit();
    assert_eq!(unsafe { defext_params_default(params.as_mut_ptr()) }, DefextStatus::Ok);
    unsafe { params.assume_init() }
}

#[test]
fn solve_through_the_c_surface() {
    let theory = make_theory("W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.");
    let mut params = default_params();
    params.population_size = 30;
    params.max_generations = 100;
    params.seed = 5;
    params.trials = 2;

    let mut report: *mut DefextReport = ptr::null_mut();
    let status = unsafe { defext_solve(theory, &params, &mut report) };
    assert_eq!(status, DefextStatus::Ok);
    assert!(unsafe { defext_report_found(report) });
    assert_eq!(unsafe { defext_report_successes(report) }, 2);

    let mut ng = 0.0f64;
    assert!(unsafe { defext_report_ng_mean(report, &mut ng) });
    assert!(ng >= 1.0);

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(unsafe { defext_report_json(report, &mut json) }, DefextStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
    let value: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(value["successes"], 2);
    assert_eq!(value["extension"]["generating_default_ids"], serde_json::json!([0, 2]));
    unsafe { defext_string_free(json) };

    unsafe { defext_report_free(report) };
    unsafe { defext_theory_free(theory) };
}

#[test]
fn people_and_hamilton_constructors() {
    let mut theory: *mut DefextTheory = ptr::null_mut();
    let variant = CString::new("woman").unwrap();
    assert_eq!(
        unsafe { defext_theory_people(variant.as_ptr(), &mut theory) },
        DefextStatus::Ok
    );
    assert_eq!(unsafe { defext_theory_default_count(theory) }, 39);
    unsafe { defext_theory_free(theory) };

    let bogus = CString::new("nobody").unwrap();
    assert_eq!(
        unsafe { defext_theory_people(bogus.as_ptr(), &mut theory) },
        DefextStatus::InvalidArgument
    );

    let edges: [u64; 6] = [0, 1, 1, 2, 2, 0];
    let mut ham: *mut DefextTheory = ptr::null_mut();
    assert_eq!(
        unsafe { defext_theory_hamilton(3, edges.as_ptr(), 3, &mut ham) },
        DefextStatus::Ok
    );
    let mut count = 0u64;
    assert_eq!(unsafe { defext_oracle_count(ham, &mut count) }, DefextStatus::Ok);
    assert_eq!(count, 1);
    unsafe { defext_theory_free(ham) };
}

#[test]
fn verify_through_the_c_surface() {
    let theory = make_theory("W:\nD: a : c / b. b : c / a.");
    let mut certified = true;
    let bits = CString::new("1010").unwrap();
    assert_eq!(
        unsafe { defext_verify(theory, bits.as_ptr(), &mut certified) },
        DefextStatus::Ok
    );
    assert!(!certified, "the ungrounded candidate must be rejected");

    let empty = CString::new("0000").unwrap();
    assert_eq!(
        unsafe { defext_verify(theory, empty.as_ptr(), &mut certified) },
        DefextStatus::Ok
    );
    assert!(certified, "the empty generating set is the real extension");
    unsafe { defext_theory_free(theory) };
}

#[test]
fn null_arguments_are_rejected() {
    let mut report: *mut DefextReport = ptr::null_mut();
    let params = default_params();
    assert_eq!(
        unsafe { defext_solve(ptr::null(), &params, &mut report) },
        DefextStatus::NullArgument
    );
    let msg = defext_last_error_message();
    assert!(!msg.is_null());
    unsafe { defext_string_free(msg) };
    assert_eq!(
        unsafe { defext_theory_from_text(ptr::null(), ptr::null_mut()) },
        DefextStatus::NullArgument
    );
}

#[test]
fn invalid_params_are_rejected() {
    let theory = make_theory("W: a.\nD:");
    let mut params = default_params();
    params.mutation_probability = 2.0;
    let mut report: *mut DefextReport = ptr::null_mut();
    assert_eq!(
        unsafe { defext_solve(theory, &params, &mut report) },
        DefextStatus::InvalidArgument
    );
    unsafe { defext_theory_free(theory) };
}
