//! C ABI over the default-logic extension search: opaque handles, status
//! codes, and JSON reports. Every function is callable from plain C; the
//! generated header lives in `include/defext.h`.
//!
//! Conventions:
//! - Handles returned through out-pointers are owned by the caller and
//!   released with the matching `*_free` function.
//! - Strings returned through out-pointers are NUL-terminated, owned by the
//!   caller, and released with [`defext_string_free`].
//! - On any status other than `DEFEXT_STATUS_OK`,
//!   [`defext_last_error_message`] returns a description of the failure.

use defext::candidate::{Chromosome, Representation};
use defext::ga::GAParams;
use defext::problems::{generate_hamilton, generate_people, PeopleVariant};
use defext::runner;
use defext::theory::parse_theory;
use defext::PreprocessedTheory;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Outcome of a C API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DefextStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Theory or chromosome text failed to parse.
    ParseError = 3,
    /// A parameter value is out of range.
    InvalidArgument = 4,
    /// The theory is too large for exhaustive enumeration.
    BoundExceeded = 5,
    /// An internal invariant failed.
    InternalError = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(status: DefextStatus, message: impl Into<String>) -> DefextStatus {
    let message = CString::new(message.into()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    status
}

fn guard(f: impl FnOnce() -> DefextStatus) -> DefextStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => set_error(DefextStatus::InternalError, "internal panic"),
    }
}

/// A preprocessed default theory ready for solving (opaque).
pub struct DefextTheory {
    pre: PreprocessedTheory,
    label: String,
}

/// An aggregate report over one or more search trials (opaque).
pub struct DefextReport {
    aggregate: runner::TrialAggregate,
}

/// Search parameters. Obtain defaults from [`defext_params_default`].
#[repr(C)]
#[derive(Clone, Copy)]
pub struct DefextParams {
    pub population_size: u64,
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    pub max_generations: u32,
    pub seed: u64,
    pub rank_levels: u32,
    /// Restrict crossover cuts to gene boundaries.
    pub boundary_crossover: bool,
    /// Encode one bit per default instead of a two-bit gene.
    pub one_bit_genes: bool,
    /// Independent searches; per-trial seeds derive from `seed`.
    pub trials: u32,
}

impl DefextParams {
    fn to_ga(self) -> GAParams {
        GAParams {
            p_size: self.population_size as usize,
            p_c: self.crossover_probability,
            p_m: self.mutation_probability,
            max_generations: self.max_generations,
            rng_seed: self.seed,
            rank_levels: self.rank_levels,
            boundary_crossover: self.boundary_crossover,
            representation: if self.one_bit_genes {
                Representation::OneBit
            } else {
                Representation::TwoBit
            },
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, DefextStatus> {
    if ptr.is_null() {
        return Err(set_error(DefextStatus::NullArgument, "string argument is NULL"));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| set_error(DefextStatus::InvalidUtf8, "string argument is not UTF-8"))
}

fn give_theory(out: *mut *mut DefextTheory, theory: DefextTheory) -> DefextStatus {
    unsafe { *out = Box::into_raw(Box::new(theory)) };
    DefextStatus::Ok
}

/// Fills `out` with the library's default parameters (one trial).
///
/// # Safety
/// `out` must point to writable memory for one `DefextParams`.
#[no_mangle]
pub unsafe extern "C" fn defext_params_default(out: *mut DefextParams) -> DefextStatus {
    if out.is_null() {
        return set_error(DefextStatus::NullArgument, "out pointer is NULL");
    }
    let d = GAParams::default();
    unsafe {
        *out = DefextParams {
            population_size: d.p_size as u64,
            crossover_probability: d.p_c,
            mutation_probability: d.p_m,
            max_generations: d.max_generations,
            seed: d.rng_seed,
            rank_levels: d.rank_levels,
            boundary_crossover: d.boundary_crossover,
            one_bit_genes: false,
            trials: 1,
        };
    }
    DefextStatus::Ok
}

/// Parses a theory from text (see the README for the format).
///
/// # Safety
/// `text` must point to a NUL-terminated string and `out` to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn defext_theory_from_text(
    text: *const c_char,
    out: *mut *mut DefextTheory,
) -> DefextStatus {
    guard(|| {
        if out.is_null() {
            return set_error(DefextStatus::NullArgument, "out pointer is NULL");
        }
        let text = match unsafe { read_str(text) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_theory(text) {
            Ok(theory) => give_theory(
                out,
                DefextTheory {
                    pre: PreprocessedTheory::new(theory),
                    label: "text".to_string(),
                },
            ),
            Err(e) => set_error(DefextStatus::ParseError, e.to_string()),
        }
    })
}

/// Builds a taxonomy benchmark theory; `variant` is one of `boy`, `girl`,
/// `man`, `woman`, `man-student`, `woman-student`.
///
/// # Safety
/// `variant` must point to a NUL-terminated string and `out` to a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn defext_theory_people(
    variant: *const c_char,
    out: *mut *mut DefextTheory,
) -> DefextStatus {
    guard(|| {
        if out.is_null() {
            return set_error(DefextStatus::NullArgument, "out pointer is NULL");
        }
        let name = match unsafe { read_str(variant) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match name.parse::<PeopleVariant>() {
            Ok(v) => give_theory(
                out,
                DefextTheory {
                    pre: PreprocessedTheory::new(generate_people(v)),
                    label: format!("people({v})"),
                },
            ),
            Err(e) => set_error(DefextStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Builds a Hamiltonian-cycle theory over `n` vertices from `edge_count`
/// directed edges given as `(from, to)` pairs in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable `uint64_t` values laid
/// out as from/to pairs, and `out` to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn defext_theory_hamilton(
    n: u64,
    edges: *const u64,
    edge_count: u64,
    out: *mut *mut DefextTheory,
) -> DefextStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return set_error(DefextStatus::NullArgument, "pointer argument is NULL");
        }
        let pairs: Vec<(usize, usize)> = (0..edge_count as usize)
            .map(|i| unsafe {
                (
                    *edges.add(2 * i) as usize,
                    *edges.add(2 * i + 1) as usize,
                )
            })
            .collect();
        match generate_hamilton(n as usize, &pairs) {
            Ok(inst) => give_theory(
                out,
                DefextTheory {
                    pre: PreprocessedTheory::new(inst.theory),
                    label: format!("hamilton({n})"),
                },
            ),
            Err(e) => set_error(DefextStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Total number of defaults in the theory.
///
/// # Safety
/// `theory` must be a live handle from a `defext_theory_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn defext_theory_default_count(theory: *const DefextTheory) -> u64 {
    if theory.is_null() {
        return 0;
    }
    unsafe { &*theory }.pre.base().defaults.len() as u64
}

/// Number of chromosome-encoded defaults (self-blocking ones are excluded).
///
/// # Safety
/// `theory` must be a live handle from a `defext_theory_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn defext_theory_encoded_count(theory: *const DefextTheory) -> u64 {
    if theory.is_null() {
        return 0;
    }
    unsafe { &*theory }.pre.encoded().len() as u64
}

/// Releases a theory handle; NULL is ignored.
///
/// # Safety
/// `theory` must be NULL or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn defext_theory_free(theory: *mut DefextTheory) {
    if !theory.is_null() {
        drop(unsafe { Box::from_raw(theory) });
    }
}

/// Runs the genetic search (`params.trials` independent trials) and returns
/// a report handle.
///
/// # Safety
/// `theory` must be a live handle; `params` and `out` must be readable and
/// writable respectively.
#[no_mangle]
pub unsafe extern "C" fn defext_solve(
    theory: *const DefextTheory,
    params: *const DefextParams,
    out: *mut *mut DefextReport,
) -> DefextStatus {
    guard(|| {
        if theory.is_null() || params.is_null() || out.is_null() {
            return set_error(DefextStatus::NullArgument, "pointer argument is NULL");
        }
        let theory = unsafe { &*theory };
        let params = unsafe { *params };
        let ga = params.to_ga();
        if let Err(e) = ga.validate() {
            return set_error(DefextStatus::InvalidArgument, e.to_string());
        }
        let aggregate = runner::run(&theory.pre, &theory.label, &ga, params.trials);
        unsafe { *out = Box::into_raw(Box::new(DefextReport { aggregate })) };
        DefextStatus::Ok
    })
}

/// True iff at least one trial found a certified extension (or the facts
/// were inconsistent, which short-circuits to the trivial extension).
///
/// # Safety
/// `report` must be a live handle from [`defext_solve`].
#[no_mangle]
pub unsafe extern "C" fn defext_report_found(report: *const DefextReport) -> bool {
    if report.is_null() {
        return false;
    }
    let agg = &unsafe { &*report }.aggregate;
    agg.w_inconsistent || agg.successes > 0
}

/// Number of successful trials.
///
/// # Safety
/// `report` must be a live handle from [`defext_solve`].
#[no_mangle]
pub unsafe extern "C" fn defext_report_successes(report: *const DefextReport) -> u32 {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }.aggregate.successes
}

/// Mean generations over successful trials; false when no trial succeeded.
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn defext_report_ng_mean(
    report: *const DefextReport,
    out: *mut f64,
) -> bool {
    if report.is_null() || out.is_null() {
        return false;
    }
    match unsafe { &*report }.aggregate.ng_mean {
        Some(ng) => {
            unsafe { *out = ng };
            true
        }
        None => false,
    }
}

/// Serializes the full report as JSON.
///
/// # Safety
/// `report` must be a live handle and `out` a writable pointer slot; free
/// the string with [`defext_string_free`].
#[no_mangle]
pub unsafe extern "C" fn defext_report_json(
    report: *const DefextReport,
    out: *mut *mut c_char,
) -> DefextStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return set_error(DefextStatus::NullArgument, "pointer argument is NULL");
        }
        let json = serde_json::to_string_pretty(&unsafe { &*report }.aggregate)
            .expect("report serializes");
        let cstring = CString::new(json).expect("JSON has no NUL bytes");
        unsafe { *out = cstring.into_raw() };
        DefextStatus::Ok
    })
}

/// Releases a report handle; NULL is ignored.
///
/// # Safety
/// `report` must be NULL or a live handle, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn defext_report_free(report: *mut DefextReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Verifies one chromosome (a 0/1 string, two bits per encoded default)
/// against the theory; `certified` receives the verdict.
///
/// # Safety
/// `theory` must be a live handle, `chromosome` a NUL-terminated string,
/// `certified` writable.
#[no_mangle]
pub unsafe extern "C" fn defext_verify(
    theory: *const DefextTheory,
    chromosome: *const c_char,
    certified: *mut bool,
) -> DefextStatus {
    guard(|| {
        if theory.is_null() || certified.is_null() {
            return set_error(DefextStatus::NullArgument, "pointer argument is NULL");
        }
        let text = match unsafe { read_str(chromosome) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let chrom: Chromosome = match text.parse() {
            Ok(c) => c,
            Err(e) => return set_error(DefextStatus::ParseError, format!("{e}")),
        };
        let theory = unsafe { &*theory };
        match runner::run_verify(&theory.pre, &theory.label, &chrom, Representation::TwoBit) {
            Ok(report) => {
                unsafe { *certified = report.certified };
                DefextStatus::Ok
            }
            Err(e) => set_error(DefextStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Exhaustively counts the theory's extensions (at most 16 defaults).
///
/// # Safety
/// `theory` must be a live handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn defext_oracle_count(
    theory: *const DefextTheory,
    count: *mut u64,
) -> DefextStatus {
    guard(|| {
        if theory.is_null() || count.is_null() {
            return set_error(DefextStatus::NullArgument, "pointer argument is NULL");
        }
        let theory = unsafe { &*theory };
        match runner::run_oracle(theory.pre.base(), &theory.label) {
            Ok(report) => {
                unsafe { *count = report.extension_count as u64 };
                DefextStatus::Ok
            }
            Err(e) => set_error(DefextStatus::BoundExceeded, e.to_string()),
        }
    })
}

/// Releases a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, and must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn defext_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Returns a copy of the last error message on this thread, or NULL if none;
/// free it with [`defext_string_free`].
#[no_mangle]
pub extern "C" fn defext_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|m| m.clone().into_raw())
            .unwrap_or(std::ptr::null_mut())
    })
}
