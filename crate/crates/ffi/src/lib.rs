//! C interface to `qlab`.
//!
//! Texts live behind an opaque [`QlabText`] handle. Every call returns a
//! [`QlabStatus`]; results go through out-pointers. Array results follow the
//! usual two-call pattern: the required count is always written, and the
//! buffer is filled only when it is large enough.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qlab::covers::CoverAlgorithm;
use qlab::partial_covers::{partial_covers_for_alpha, Cst};
use qlab::seeds::SeedAlgorithm;
use qlab::{QlabError, Text};

/// Opaque text handle.
pub struct QlabText {
    text: Text,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlabStatus {
    Ok = 0,
    NullPointer = 1,
    EmptyText = 2,
    InvalidArgument = 3,
    OutOfRange = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

/// Values for the `algorithm` argument of the cover functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlabCoverAlgorithm {
    Folk = 0,
    Afi = 1,
    Bres = 2,
    Ms = 3,
    MsStatic = 4,
}

/// Values for the `algorithm` argument of the seed functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlabSeedAlgorithm {
    Imp = 0,
    KkrrwS = 1,
    Kkrrw = 2,
}

/// Substrings `T[i, j]` for `j` in `j1..=j2`, 1-based. When `reversed` is
/// nonzero the positions refer to the reversed text.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QlabPackage {
    pub i: usize,
    pub j1: usize,
    pub j2: usize,
    pub reversed: u8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QlabPartialCover {
    pub alpha: usize,
    pub length: usize,
    pub witness_start: usize,
    pub coverage: usize,
}

fn status_of(e: &QlabError) -> QlabStatus {
    match e {
        QlabError::EmptyText | QlabError::EmptyPattern => QlabStatus::EmptyText,
        QlabError::OutOfRange { .. } | QlabError::PatternTooLong { .. } => QlabStatus::OutOfRange,
        _ => QlabStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> QlabStatus) -> QlabStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QlabStatus::Internal)
}

// Algorithms cross the boundary as plain integers: an out-of-range value in
// a Rust enum would be undefined behaviour.
fn cover_alg(a: u32) -> Option<CoverAlgorithm> {
    Some(match a {
        x if x == QlabCoverAlgorithm::Folk as u32 => CoverAlgorithm::Folk,
        x if x == QlabCoverAlgorithm::Afi as u32 => CoverAlgorithm::Afi,
        x if x == QlabCoverAlgorithm::Bres as u32 => CoverAlgorithm::Bres,
        x if x == QlabCoverAlgorithm::Ms as u32 => CoverAlgorithm::Ms,
        x if x == QlabCoverAlgorithm::MsStatic as u32 => CoverAlgorithm::MsStatic,
        _ => return None,
    })
}

fn seed_alg(a: u32) -> Option<SeedAlgorithm> {
    Some(match a {
        x if x == QlabSeedAlgorithm::Imp as u32 => SeedAlgorithm::Imp,
        x if x == QlabSeedAlgorithm::KkrrwS as u32 => SeedAlgorithm::KkrrwS,
        x if x == QlabSeedAlgorithm::Kkrrw as u32 => SeedAlgorithm::Kkrrw,
        _ => return None,
    })
}

/// Writes `items` into `buf` if `cap` suffices; always stores the count.
///
/// # Safety
/// `buf` must be valid for `cap` writes when `cap > 0`.
unsafe fn fill<T: Copy>(items: &[T], buf: *mut T, cap: usize, out_count: *mut usize) -> QlabStatus {
    *out_count = items.len();
    if items.len() > cap {
        return QlabStatus::BufferTooSmall;
    }
    if !items.is_empty() {
        if buf.is_null() {
            return QlabStatus::NullPointer;
        }
        ptr::copy_nonoverlapping(items.as_ptr(), buf, items.len());
    }
    QlabStatus::Ok
}

/// Copies `len` bytes into a new text.
///
/// # Safety
/// `bytes` must be valid for `len` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qlab_text_new(
    bytes: *const u8,
    len: usize,
    out: *mut *mut QlabText,
) -> QlabStatus {
    if out.is_null() || (bytes.is_null() && len > 0) {
        return QlabStatus::NullPointer;
    }
    *out = ptr::null_mut();
    guard(|| {
        let data = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(bytes, len).to_vec()
        };
        match Text::new(data) {
            Ok(text) => {
                *out = Box::into_raw(Box::new(QlabText { text }));
                QlabStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a text; null is ignored.
///
/// # Safety
/// `text` must come from [`qlab_text_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qlab_text_free(text: *mut QlabText) {
    if !text.is_null() {
        drop(Box::from_raw(text));
    }
}

/// Length of the text, 0 for null.
///
/// # Safety
/// `text` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qlab_text_len(text: *const QlabText) -> usize {
    text.as_ref().map_or(0, |t| t.text.len())
}

/// # Safety
/// `text` must be a live handle and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn qlab_shortest_cover(
    text: *const QlabText,
    algorithm: u32,
    out_len: *mut usize,
) -> QlabStatus {
    let (Some(t), false) = (text.as_ref(), out_len.is_null()) else {
        return QlabStatus::NullPointer;
    };
    let Some(alg) = cover_alg(algorithm) else {
        return QlabStatus::InvalidArgument;
    };
    guard(|| {
        *out_len = alg.run(&t.text).shortest_len;
        QlabStatus::Ok
    })
}

/// Lengths of all covers in increasing order.
///
/// # Safety
/// `buf` must be valid for `cap` writes; `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn qlab_all_covers(
    text: *const QlabText,
    buf: *mut usize,
    cap: usize,
    out_count: *mut usize,
) -> QlabStatus {
    let (Some(t), false) = (text.as_ref(), out_count.is_null()) else {
        return QlabStatus::NullPointer;
    };
    guard(|| {
        let all = CoverAlgorithm::Ms
            .run(&t.text)
            .all_cover_lens
            .expect("ms lists all covers");
        fill(&all, buf, cap, out_count)
    })
}

/// Number of distinct seeds and the shortest seed length.
///
/// # Safety
/// `text` must be a live handle; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn qlab_seed_count(
    text: *const QlabText,
    algorithm: u32,
    out_count: *mut usize,
    out_shortest: *mut usize,
) -> QlabStatus {
    let (Some(t), false, false) = (text.as_ref(), out_count.is_null(), out_shortest.is_null())
    else {
        return QlabStatus::NullPointer;
    };
    let Some(alg) = seed_alg(algorithm) else {
        return QlabStatus::InvalidArgument;
    };
    guard(|| {
        let r = alg.run(&t.text);
        *out_count = r.count;
        *out_shortest = r.shortest_len.unwrap_or(0);
        QlabStatus::Ok
    })
}

/// All seeds as packages.
///
/// # Safety
/// `buf` must be valid for `cap` writes; `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn qlab_seed_packages(
    text: *const QlabText,
    algorithm: u32,
    buf: *mut QlabPackage,
    cap: usize,
    out_count: *mut usize,
) -> QlabStatus {
    let (Some(t), false) = (text.as_ref(), out_count.is_null()) else {
        return QlabStatus::NullPointer;
    };
    let Some(alg) = seed_alg(algorithm) else {
        return QlabStatus::InvalidArgument;
    };
    guard(|| {
        let pkgs: Vec<QlabPackage> = alg
            .run(&t.text)
            .packages
            .iter()
            .map(|p| QlabPackage {
                i: p.i,
                j1: p.j1,
                j2: p.j2,
                reversed: p.reversed as u8,
            })
            .collect();
        fill(&pkgs, buf, cap, out_count)
    })
}

/// Shortest substring covering at least `alpha` positions.
///
/// # Safety
/// `text` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qlab_partial_cover(
    text: *const QlabText,
    alpha: usize,
    out: *mut QlabPartialCover,
) -> QlabStatus {
    let (Some(t), false) = (text.as_ref(), out.is_null()) else {
        return QlabStatus::NullPointer;
    };
    guard(
        || match partial_covers_for_alpha(&Cst::build(&t.text), alpha) {
            Ok(a) => {
                let w = a.hits[0];
                *out = QlabPartialCover {
                    alpha,
                    length: a.length,
                    witness_start: w.start,
                    coverage: w.coverage,
                };
                QlabStatus::Ok
            }
            Err(e) => status_of(&e),
        },
    )
}

/// Static description of a status code; unknown codes get a generic text.
#[no_mangle]
pub extern "C" fn qlab_status_message(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer argument",
        2 => c"empty text",
        3 => c"invalid argument",
        4 => c"argument out of range",
        5 => c"buffer too small",
        6 => c"internal error",
        _ => c"unknown status",
    };
    s.as_ptr()
}

#[no_mangle]
pub extern "C" fn qlab_version() -> *const c_char {
    const V: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version string"),
        };
    V.as_ptr()
}
