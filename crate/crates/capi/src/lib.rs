//! C ABI for the purecubic library.
//!
//! Conventions: every function returns a `PcStatus`; results come back
//! through out-pointers. Strings are NUL-terminated UTF-8. The finite
//! field is held behind an opaque handle created with `pc_fq_new` and
//! released with `pc_fq_free`. All functions are panic-safe: a Rust panic
//! is caught and reported as `PC_STATUS_INTERNAL_ERROR`.

use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use purecubic::census_ff;
use purecubic::cubic_ff::{
    decide_monogenic_ff, integral_basis_ff, FFVerdict, PureCubicFF,
};
use purecubic::cubic_field_z;
use purecubic::ff_arith::{format_poly, parse_poly, FqConfig};
use purecubic::int_arith::CubeFreeInt;
use purecubic::thue_z::{self, SearchConfig, VerdictZ};

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum PcStatus {
    PC_STATUS_OK = 0,
    PC_STATUS_INVALID_INPUT = 1,
    PC_STATUS_UNDETERMINED = 2,
    PC_STATUS_BUDGET_EXCEEDED = 3,
    PC_STATUS_BUFFER_TOO_SMALL = 4,
    PC_STATUS_NULL_POINTER = 5,
    PC_STATUS_INTERNAL_ERROR = 6,
}

use PcStatus::*;

/// Verdict discriminants for the integer decision.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum PcVerdictKind {
    PC_VERDICT_MONOGENIC = 0,
    PC_VERDICT_NOT_MONOGENIC = 1,
    PC_VERDICT_UNDETERMINED = 2,
}

/// Result of deciding Q(cbrt(k^2 m)). Fields are meaningful according to
/// `kind`: (x, y) for a monogenic witness, `modulus` for an obstruction,
/// `height` for an exhausted search.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PcVerdictZ {
    pub kind: PcVerdictKind,
    pub x: i64,
    pub y: i64,
    pub modulus: u64,
    pub height: u64,
}

/// Opaque finite-field handle.
pub struct PcFqCtx {
    cfg: FqConfig,
}

fn write_str(out: *mut c_char, out_len: usize, text: &str) -> PcStatus {
    if out.is_null() {
        return PC_STATUS_NULL_POINTER;
    }
    let Ok(cstr) = CString::new(text) else {
        return PC_STATUS_INTERNAL_ERROR;
    };
    let bytes = cstr.as_bytes_with_nul();
    if bytes.len() > out_len {
        return PC_STATUS_BUFFER_TOO_SMALL;
    }
    // SAFETY: caller guarantees `out` points to at least `out_len` bytes
    unsafe {
        ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, out, bytes.len());
    }
    PC_STATUS_OK
}

fn read_str<'a>(input: *const c_char) -> Result<&'a str, PcStatus> {
    if input.is_null() {
        return Err(PC_STATUS_NULL_POINTER);
    }
    // SAFETY: caller guarantees a NUL-terminated string
    unsafe { CStr::from_ptr(input) }
        .to_str()
        .map_err(|_| PC_STATUS_INVALID_INPUT)
}

fn guarded(f: impl FnOnce() -> PcStatus) -> PcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => PC_STATUS_INTERNAL_ERROR,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Decides monogenicity of Q(cbrt(k^2 m)) with the default search
/// configuration. Returns PC_STATUS_UNDETERMINED (with the height in the
/// verdict) when neither a witness nor an obstruction was found.
#[no_mangle]
pub extern "C" fn pc_decide_z(k: u64, m: u64, out: *mut PcVerdictZ) -> PcStatus {
    guarded(|| {
        if out.is_null() {
            return PC_STATUS_NULL_POINTER;
        }
        let config = SearchConfig::default();
        let verdict = match thue_z::decide_monogenic(k, m, &config) {
            Ok(v) => v,
            Err(_) => return PC_STATUS_INVALID_INPUT,
        };
        let c_verdict = match verdict {
            VerdictZ::Monogenic { x, y } => PcVerdictZ {
                kind: PcVerdictKind::PC_VERDICT_MONOGENIC,
                x,
                y,
                modulus: 0,
                height: 0,
            },
            VerdictZ::NotMonogenic { modulus } => PcVerdictZ {
                kind: PcVerdictKind::PC_VERDICT_NOT_MONOGENIC,
                x: 0,
                y: 0,
                modulus,
                height: 0,
            },
            VerdictZ::Undetermined { height } => PcVerdictZ {
                kind: PcVerdictKind::PC_VERDICT_UNDETERMINED,
                x: 0,
                y: 0,
                modulus: 0,
                height,
            },
        };
        // SAFETY: out checked non-null above
        unsafe { *out = c_verdict };
        match c_verdict.kind {
            PcVerdictKind::PC_VERDICT_UNDETERMINED => PC_STATUS_UNDETERMINED,
            _ => PC_STATUS_OK,
        }
    })
}

/// Renders the integral basis of Q(cbrt(n)) into `out`.
#[no_mangle]
pub extern "C" fn pc_basis_z(n: u64, out: *mut c_char, out_len: usize) -> PcStatus {
    guarded(|| {
        let field = match CubeFreeInt::from_n(n) {
            Ok(f) => f,
            Err(_) => return PC_STATUS_INVALID_INPUT,
        };
        let basis = match cubic_field_z::integral_basis(&field) {
            Ok(b) => b,
            Err(_) => return PC_STATUS_INTERNAL_ERROR,
        };
        write_str(out, out_len, &basis.display(&field))
    })
}

/// Creates an F_q handle for q = p^e. The handle must be released with
/// `pc_fq_free`.
#[no_mangle]
pub extern "C" fn pc_fq_new(p: u64, e: u32, out: *mut *mut PcFqCtx) -> PcStatus {
    guarded(|| {
        if out.is_null() {
            return PC_STATUS_NULL_POINTER;
        }
        match FqConfig::new(p, e) {
            Ok(cfg) => {
                let handle = Box::new(PcFqCtx { cfg });
                // SAFETY: out checked non-null above
                unsafe { *out = Box::into_raw(handle) };
                PC_STATUS_OK
            }
            Err(_) => PC_STATUS_INVALID_INPUT,
        }
    })
}

/// Releases a handle from `pc_fq_new`. NULL is accepted and ignored.
#[no_mangle]
pub extern "C" fn pc_fq_free(ctx: *mut PcFqCtx) {
    if !ctx.is_null() {
        // SAFETY: pointer came from Box::into_raw in pc_fq_new
        unsafe { drop(Box::from_raw(ctx)) };
    }
}

fn ctx_ref<'a>(ctx: *const PcFqCtx) -> Result<&'a PcFqCtx, PcStatus> {
    if ctx.is_null() {
        return Err(PC_STATUS_NULL_POINTER);
    }
    // SAFETY: caller keeps the handle alive for the duration of the call
    Ok(unsafe { &*ctx })
}

/// Decides monogenicity of F_q(t, cbrt(g^2 h)) by complete search.
/// `g_text` and `h_text` use the same grammar as the CLI (`t^2+t+1` or a
/// `[c0,c1,...]` coefficient list). On a monogenic verdict the witness is
/// rendered into `x_out`/`y_out` and `alpha_out` is set; otherwise
/// `is_monogenic_out` is 0 and the buffers hold empty strings.
#[no_mangle]
pub extern "C" fn pc_decide_ff(
    ctx: *const PcFqCtx,
    g_text: *const c_char,
    h_text: *const c_char,
    is_monogenic_out: *mut i32,
    x_out: *mut c_char,
    x_out_len: usize,
    y_out: *mut c_char,
    y_out_len: usize,
    alpha_out: *mut u64,
) -> PcStatus {
    guarded(|| {
        let ctx = match ctx_ref(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if is_monogenic_out.is_null() || alpha_out.is_null() {
            return PC_STATUS_NULL_POINTER;
        }
        let (g_str, h_str) = match (read_str(g_text), read_str(h_text)) {
            (Ok(g), Ok(h)) => (g, h),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let cfg = &ctx.cfg;
        let g = match parse_poly(g_str, cfg) {
            Ok(p) => p,
            Err(_) => return PC_STATUS_INVALID_INPUT,
        };
        let h = match parse_poly(h_str, cfg) {
            Ok(p) => p,
            Err(_) => return PC_STATUS_INVALID_INPUT,
        };
        let field = match PureCubicFF::new(cfg.clone(), g, h) {
            Ok(f) => f,
            Err(_) => return PC_STATUS_INVALID_INPUT,
        };
        let verdict = match decide_monogenic_ff(&field) {
            Ok(v) => v,
            Err(_) => return PC_STATUS_INTERNAL_ERROR,
        };
        match verdict {
            FFVerdict::Monogenic { x, y, alpha } => {
                let status = write_str(x_out, x_out_len, &format_poly(&x, cfg));
                if status != PC_STATUS_OK {
                    return status;
                }
                let status = write_str(y_out, y_out_len, &format_poly(&y, cfg));
                if status != PC_STATUS_OK {
                    return status;
                }
                // SAFETY: checked non-null above
                unsafe {
                    *is_monogenic_out = 1;
                    *alpha_out = alpha;
                }
            }
            FFVerdict::NotMonogenic => {
                let status = write_str(x_out, x_out_len, "");
                if status != PC_STATUS_OK {
                    return status;
                }
                let status = write_str(y_out, y_out_len, "");
                if status != PC_STATUS_OK {
                    return status;
                }
                // SAFETY: checked non-null above
                unsafe {
                    *is_monogenic_out = 0;
                    *alpha_out = 0;
                }
            }
        }
        PC_STATUS_OK
    })
}

/// Renders the integral basis of F_q(t, cbrt(f)) into `out`.
#[no_mangle]
pub extern "C" fn pc_basis_ff(
    ctx: *const PcFqCtx,
    f_text: *const c_char,
    out: *mut c_char,
    out_len: usize,
) -> PcStatus {
    guarded(|| {
        let ctx = match ctx_ref(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let f_str = match read_str(f_text) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let cfg = &ctx.cfg;
        let f = match parse_poly(f_str, cfg) {
            Ok(p) => p,
            Err(_) => return PC_STATUS_INVALID_INPUT,
        };
        let field = match PureCubicFF::from_f(cfg.clone(), &f) {
            Ok(f) => f,
            Err(_) => return PC_STATUS_INVALID_INPUT,
        };
        write_str(out, out_len, &integral_basis_ff(&field).display(cfg))
    })
}

/// Exact maximum of omega(P) over deg P <= n.
#[no_mangle]
pub extern "C" fn pc_omega_max(ctx: *const PcFqCtx, n: u64, out: *mut u64) -> PcStatus {
    guarded(|| {
        let ctx = match ctx_ref(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out.is_null() {
            return PC_STATUS_NULL_POINTER;
        }
        if n == 0 {
            return PC_STATUS_INVALID_INPUT;
        }
        let value = census_ff::omega_max(&ctx.cfg, n as usize);
        // SAFETY: checked non-null above
        unsafe { *out = value };
        PC_STATUS_OK
    })
}

/// Exact sum of 3^omega(P) over monic P of degree n, as a 128-bit value
/// split into high and low 64-bit halves. `budget` caps the number of
/// polynomials scanned (0 means the default).
#[no_mangle]
pub extern "C" fn pc_omega_sum(
    ctx: *const PcFqCtx,
    n: u64,
    budget: u64,
    out_hi: *mut u64,
    out_lo: *mut u64,
) -> PcStatus {
    guarded(|| {
        let ctx = match ctx_ref(ctx) {
            Ok(c) => c,
            Err(s) => return s,
        };
        if out_hi.is_null() || out_lo.is_null() {
            return PC_STATUS_NULL_POINTER;
        }
        let budget = if budget == 0 {
            census_ff::DEFAULT_FF_BUDGET
        } else {
            budget
        };
        match census_ff::omega_sum(&ctx.cfg, n as usize, budget) {
            Ok(value) => {
                // SAFETY: checked non-null above
                unsafe {
                    *out_hi = (value >> 64) as u64;
                    *out_lo = value as u64;
                }
                PC_STATUS_OK
            }
            Err(census_ff::CensusFfError::BudgetExceeded { .. }) => PC_STATUS_BUDGET_EXCEEDED,
            Err(_) => PC_STATUS_INVALID_INPUT,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn version_is_nul_terminated() {
        let v = pc_version();
        let text = unsafe { CStr::from_ptr(v) }.to_str().unwrap();
        assert_eq!(text, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn decide_z_round_trip() {
        let mut verdict = PcVerdictZ {
            kind: PcVerdictKind::PC_VERDICT_UNDETERMINED,
            x: 0,
            y: 0,
            modulus: 0,
            height: 0,
        };
        assert_eq!(pc_decide_z(2, 15, &mut verdict), PC_STATUS_OK);
        assert_eq!(verdict.kind, PcVerdictKind::PC_VERDICT_MONOGENIC);
        assert_eq!((verdict.x, verdict.y), (2, 1));

        assert_eq!(pc_decide_z(2, 21, &mut verdict), PC_STATUS_OK);
        assert_eq!(verdict.kind, PcVerdictKind::PC_VERDICT_NOT_MONOGENIC);
        assert_eq!(verdict.modulus, 7);

        // k = m = 12 shares a factor: invalid
        assert_eq!(pc_decide_z(12, 12, &mut verdict), PC_STATUS_INVALID_INPUT);
        assert_eq!(pc_decide_z(2, 15, ptr::null_mut()), PC_STATUS_NULL_POINTER);
    }

    #[test]
    fn basis_z_writes_string() {
        let mut buf = [0 as c_char; 64];
        assert_eq!(pc_basis_z(10, buf.as_mut_ptr(), buf.len()), PC_STATUS_OK);
        let text = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap();
        assert_eq!(text, "1, a, (1+a+a^2)/3");
        // a 4-byte buffer cannot hold the rendering
        assert_eq!(
            pc_basis_z(10, buf.as_mut_ptr(), 4),
            PC_STATUS_BUFFER_TOO_SMALL
        );
        assert_eq!(pc_basis_z(8, buf.as_mut_ptr(), buf.len()), PC_STATUS_INVALID_INPUT);
    }

    #[test]
    fn ff_handle_lifecycle() {
        let mut ctx: *mut PcFqCtx = ptr::null_mut();
        assert_eq!(pc_fq_new(2, 1, &mut ctx), PC_STATUS_OK);
        assert!(!ctx.is_null());

        let g = CString::new("t").unwrap();
        let h = CString::new("t^2+t+1").unwrap();
        let mut is_monogenic = -1;
        let mut x_buf = [0 as c_char; 64];
        let mut y_buf = [0 as c_char; 64];
        let mut alpha = 0u64;
        let status = pc_decide_ff(
            ctx,
            g.as_ptr(),
            h.as_ptr(),
            &mut is_monogenic,
            x_buf.as_mut_ptr(),
            x_buf.len(),
            y_buf.as_mut_ptr(),
            y_buf.len(),
            &mut alpha,
        );
        assert_eq!(status, PC_STATUS_OK);
        assert_eq!(is_monogenic, 0);

        let h2 = CString::new("t+1").unwrap();
        let status = pc_decide_ff(
            ctx,
            g.as_ptr(),
            h2.as_ptr(),
            &mut is_monogenic,
            x_buf.as_mut_ptr(),
            x_buf.len(),
            y_buf.as_mut_ptr(),
            y_buf.len(),
            &mut alpha,
        );
        assert_eq!(status, PC_STATUS_OK);
        assert_eq!(is_monogenic, 1);
        let x = unsafe { CStr::from_ptr(x_buf.as_ptr()) }.to_str().unwrap();
        let y = unsafe { CStr::from_ptr(y_buf.as_ptr()) }.to_str().unwrap();
        assert_eq!((x, y, alpha), ("1", "1", 1));

        let mut basis_buf = [0 as c_char; 64];
        let f = CString::new("t^2*(t+1)").unwrap();
        assert_eq!(
            pc_basis_ff(ctx, f.as_ptr(), basis_buf.as_mut_ptr(), basis_buf.len()),
            PC_STATUS_OK
        );
        let text = unsafe { CStr::from_ptr(basis_buf.as_ptr()) }.to_str().unwrap();
        assert_eq!(text, "1, a, a^2/t");

        let mut omega = 0u64;
        assert_eq!(pc_omega_max(ctx, 4, &mut omega), PC_STATUS_OK);
        assert_eq!(omega, 3);

        let (mut hi, mut lo) = (1u64, 0u64);
        assert_eq!(pc_omega_sum(ctx, 1, 0, &mut hi, &mut lo), PC_STATUS_OK);
        assert_eq!((hi, lo), (0, 6));
        assert_eq!(
            pc_omega_sum(ctx, 40, 10, &mut hi, &mut lo),
            PC_STATUS_BUDGET_EXCEEDED
        );

        pc_fq_free(ctx);
        pc_fq_free(ptr::null_mut());
    }

    #[test]
    fn char_3_field_rejected_for_cubic_ops() {
        let mut ctx: *mut PcFqCtx = ptr::null_mut();
        assert_eq!(pc_fq_new(3, 1, &mut ctx), PC_STATUS_OK);
        let g = CString::new("t").unwrap();
        let h = CString::new("t+1").unwrap();
        let mut is_monogenic = -1;
        let mut x_buf = [0 as c_char; 8];
        let mut y_buf = [0 as c_char; 8];
        let mut alpha = 0u64;
        let status = pc_decide_ff(
            ctx,
            g.as_ptr(),
            h.as_ptr(),
            &mut is_monogenic,
            x_buf.as_mut_ptr(),
            x_buf.len(),
            y_buf.as_mut_ptr(),
            y_buf.len(),
            &mut alpha,
        );
        assert_eq!(status, PC_STATUS_INVALID_INPUT);
        // but the omega machinery still works over F_3
        let mut omega = 0u64;
        assert_eq!(pc_omega_max(ctx, 2, &mut omega), PC_STATUS_OK);
        assert_eq!(omega, 2);
        pc_fq_free(ctx);
    }
}
