//! C ABI over the `ioncollide` engine.
//!
//! Every function returns an [`IcStatus`]; on failure the message is
//! available from [`ic_last_error_message`] on the same thread. Trap
//! configurations are opaque handles released with [`ic_trap_free`], and
//! strings handed out by the library are released with [`ic_string_free`].
//! Panics never cross the boundary; they surface as `IC_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ioncollide::coupling::{
    classical_direct_interaction, coupling_asymptotic, design_point_alpha1,
    level_shifts_quadrature, restriction_product, CouplingResult, Method, QuadratureSettings,
};
use ioncollide::gate::synthesize_gate;
use ioncollide::potential::{alpha, v_eff, EffectivePotentialParams};
use ioncollide::schedule::{route_remote_gate, TrapArray};
use ioncollide::species::{lookup_species, IonSpecies};
use ioncollide::trap::TrapConfig;
use ioncollide::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownSpecies = 3,
    InvalidRegime = 4,
    NonConvergence = 5,
    ResourceLimit = 6,
    GateStructure = 7,
    Panic = 8,
    Other = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcMethod {
    Quadrature = 0,
    Asymptotic = 1,
    Classical = 2,
}

/// Opaque trap handle.
pub struct IcTrapConfig {
    inner: TrapConfig,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct IcTrapParams {
    pub omega_z: f64,
    pub omega_xy: f64,
    pub omega_perp: f64,
    pub length: f64,
    pub z0: f64,
    pub alpha: f64,
    pub mass: f64,
    pub charge: f64,
}

/// Energies in J.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct IcCoupling {
    pub v_plus: f64,
    pub v_minus: f64,
    pub exchange_j: f64,
    pub direct_u: f64,
    pub interference_a: f64,
    pub method: IcMethod,
    pub warning_count: u32,
}

/// Gate matrix in row-major order over the basis dd, du, ud, uu.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct IcGate {
    pub t_g: f64,
    pub theta: f64,
    pub theta_half_sum: f64,
    pub n_collisions: f64,
    pub matrix_re: [f64; 16],
    pub matrix_im: [f64; 16],
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> IcStatus {
    match e {
        Error::InvalidParameter { .. }
        | Error::UnknownQubit(_)
        | Error::SameTrap(..)
        | Error::Config(_)
        | Error::ZeroCoupling(_)
        | Error::ZeroDrive => IcStatus::InvalidArgument,
        Error::UnknownSpecies { .. } => IcStatus::UnknownSpecies,
        Error::InvalidRegime(_) | Error::DegenerateOverlap { .. } | Error::OffResonance { .. } => {
            IcStatus::InvalidRegime
        }
        Error::NonConvergence { .. } => IcStatus::NonConvergence,
        Error::ResourceLimit(_) => IcStatus::ResourceLimit,
        Error::GateStructure { .. } => IcStatus::GateStructure,
    }
}

struct Fail(IcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(IcStatus::NullPointer, format!("`{what}` is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> IcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            IcStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            IcStatus::Panic
        }
    }
}

unsafe fn species_arg(name: *const c_char) -> Result<IonSpecies, Fail> {
    if name.is_null() {
        return Err(null("species"));
    }
    let s = CStr::from_ptr(name).to_str().map_err(|_| {
        Fail(
            IcStatus::InvalidArgument,
            "species name is not UTF-8".into(),
        )
    })?;
    Ok(lookup_species(s)?)
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn trap_ref<'a>(cfg: *const IcTrapConfig) -> Result<&'a TrapConfig, Fail> {
    cfg.as_ref().map(|c| &c.inner).ok_or_else(|| null("cfg"))
}

fn boxed(cfg: TrapConfig) -> *mut IcTrapConfig {
    Box::into_raw(Box::new(IcTrapConfig { inner: cfg }))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn ic_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `species` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_trap_new(
    species: *const c_char,
    omega_z: f64,
    omega_xy: f64,
    length: f64,
    out: *mut *mut IcTrapConfig,
) -> IcStatus {
    guard(|| {
        let cfg = TrapConfig::new(species_arg(species)?, omega_z, omega_xy, length)?;
        write_out(out, boxed(cfg), "out")
    })
}

/// Trap at the alpha = 1 design point for `omega_xy` and `omega_perp`.
///
/// # Safety
/// As for [`ic_trap_new`].
#[no_mangle]
pub unsafe extern "C" fn ic_design_point(
    species: *const c_char,
    omega_xy: f64,
    omega_perp: f64,
    out: *mut *mut IcTrapConfig,
) -> IcStatus {
    guard(|| {
        let cfg = design_point_alpha1(&species_arg(species)?, omega_xy, omega_perp)?;
        write_out(out, boxed(cfg), "out")
    })
}

/// # Safety
/// `cfg` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ic_trap_free(cfg: *mut IcTrapConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_trap_params(
    cfg: *const IcTrapConfig,
    out: *mut IcTrapParams,
) -> IcStatus {
    guard(|| {
        let c = trap_ref(cfg)?;
        let p = IcTrapParams {
            omega_z: c.omega_z,
            omega_xy: c.omega_xy,
            omega_perp: c.omega_perp(),
            length: c.length,
            z0: c.z0(),
            alpha: alpha(c),
            mass: c.species.mass,
            charge: c.species.charge,
        };
        write_out(out, p, "out")
    })
}

fn to_ffi(r: &CouplingResult) -> IcCoupling {
    IcCoupling {
        v_plus: r.v_plus,
        v_minus: r.v_minus,
        exchange_j: r.exchange_j,
        direct_u: r.direct_u,
        interference_a: r.interference_a,
        method: match r.method {
            Method::Quadrature => IcMethod::Quadrature,
            Method::Asymptotic => IcMethod::Asymptotic,
            Method::Classical => IcMethod::Classical,
        },
        warning_count: r.warnings.len() as u32,
    }
}

/// Level shifts with default quadrature settings.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_coupling(
    cfg: *const IcTrapConfig,
    method: IcMethod,
    out: *mut IcCoupling,
) -> IcStatus {
    guard(|| {
        let c = trap_ref(cfg)?;
        let r = match method {
            IcMethod::Quadrature => level_shifts_quadrature(c, &QuadratureSettings::default())?,
            IcMethod::Asymptotic => coupling_asymptotic(c)?,
            IcMethod::Classical => classical_direct_interaction(c)?,
        };
        write_out(out, to_ffi(&r), "out")
    })
}

/// `omega_perp J` at alpha = 1, in J.
///
/// # Safety
/// `species` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_restriction_product(
    species: *const c_char,
    omega_xy: f64,
    out: *mut f64,
) -> IcStatus {
    guard(|| {
        let v = restriction_product(&species_arg(species)?, omega_xy)?;
        write_out(out, v, "out")
    })
}

/// Effective interaction energy (J) at separation `r_z` (m).
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_v_eff(cfg: *const IcTrapConfig, r_z: f64, out: *mut f64) -> IcStatus {
    guard(|| {
        let params = EffectivePotentialParams::from_trap(trap_ref(cfg)?);
        write_out(out, v_eff(&params, r_z)?, "out")
    })
}

/// Collision gate for energies `e0`, `u`, `j` (J).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ic_gate(
    e0: f64,
    u: f64,
    j: f64,
    omega_z: f64,
    out: *mut IcGate,
) -> IcStatus {
    guard(|| {
        let g = synthesize_gate(e0, u, j, omega_z)?;
        let mut re = [0.0; 16];
        let mut im = [0.0; 16];
        for (r, row) in g.matrix.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                re[4 * r + c] = z.re;
                im[4 * r + c] = z.im;
            }
        }
        let v = IcGate {
            t_g: g.t_g,
            theta: g.theta,
            theta_half_sum: g.theta_half_sum,
            n_collisions: g.n_collisions,
            matrix_re: re,
            matrix_im: im,
        };
        write_out(out, v, "out")
    })
}

/// Schedule text for a remote sqrt(SWAP) between traps `a` and `b` of an
/// `n_traps` array holding `q0 .. q{n-1}`. Free the string with
/// [`ic_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ic_route_schedule(
    n_traps: u32,
    a: u32,
    b: u32,
    t_g: f64,
    omega_z: f64,
    out: *mut *mut c_char,
) -> IcStatus {
    guard(|| {
        let array = TrapArray::with_count(n_traps as usize, 1.0)?;
        let s = route_remote_gate(&array, &format!("q{a}"), &format!("q{b}"), t_g, omega_z)?;
        let text = CString::new(s.to_text())
            .map_err(|_| Fail(IcStatus::Other, "schedule text contains NUL".into()))?;
        write_out(out, text.into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
