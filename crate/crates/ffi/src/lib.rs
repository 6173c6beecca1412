//! C ABI for the geofrechet library.
//!
//! Polygons and curves are passed as opaque handles created from flat
//! `x0, y0, x1, y1, ...` coordinate arrays. Every call returns a
//! [`GfStatus`]; on failure a message is available from
//! [`gf_last_error_message`] on the same thread. A null space handle selects
//! the Euclidean leash wherever a space is accepted.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use geofrechet::freespace;
use geofrechet::geometry::validate_polygon;
use geofrechet::hausdorff::{hausdorff, PointSet};
use geofrechet::optimize::{frechet, FrechetOptions};
use geofrechet::{Error, Euclidean, GeodesicSpace, Point, PolygonalCurve};

/// Result code of every `gf_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// The polygon is degenerate, self-intersecting or too small.
    InvalidPolygon = 2,
    /// A curve or point set is empty, non-finite or has repeated vertices.
    InvalidCurve = 3,
    /// A point or segment lies outside the polygon.
    OutsidePolygon = 4,
    /// A scalar argument is out of range.
    InvalidArgument = 5,
    /// The optimizer gave up; see the error message.
    OptimizerFailure = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// Opaque polygon together with its triangulation.
pub struct GfSpace(GeodesicSpace);

/// Opaque polygonal curve.
pub struct GfCurve(PolygonalCurve);

/// Summary of one Fréchet optimization.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GfFrechetResult {
    pub epsilon_star: f64,
    pub iterations: usize,
    pub decision_calls: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> GfStatus {
    match err {
        Error::TooFewVertices(_) | Error::SelfIntersecting(..) | Error::DegenerateArea => {
            GfStatus::InvalidPolygon
        }
        Error::NonFinite(_) | Error::EmptyCurve | Error::DuplicateVertex(_) | Error::EmptyInput => {
            GfStatus::InvalidCurve
        }
        Error::PointOutsidePolygon(_) | Error::SegmentOutsidePolygon(..) => {
            GfStatus::OutsidePolygon
        }
        Error::NegativeEpsilon(_) => GfStatus::InvalidArgument,
        Error::MonotonicityViolation(_) | Error::EmptySlab | Error::NonTermination(_) => {
            GfStatus::OptimizerFailure
        }
    }
}

struct Fail(GfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(GfStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, storing its output in `out` and translating errors and panics.
fn guard<T>(out: *mut T, f: impl FnOnce() -> Result<T, Fail>) -> GfStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return GfStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: checked non-null above; the caller owns the slot.
            unsafe { out.write(v) };
            set_error("");
            GfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GfStatus::Panic
        }
    }
}

/// # Safety
/// `xy` must point to `2 * n` readable doubles, or be null.
unsafe fn points(xy: *const f64, n: usize, what: &str) -> Result<Vec<Point>, Fail> {
    if xy.is_null() {
        return if n == 0 {
            Ok(Vec::new())
        } else {
            Err(null(what))
        };
    }
    let len = n.checked_mul(2).ok_or_else(|| {
        Fail(
            GfStatus::InvalidArgument,
            format!("{what}: length overflow"),
        )
    })?;
    let flat: &[f64] = std::slice::from_raw_parts(xy, len);
    Ok(flat
        .chunks_exact(2)
        .map(|c| Point::new(c[0], c[1]))
        .collect())
}

unsafe fn space_ref<'a>(space: *const GfSpace) -> Option<&'a GeodesicSpace> {
    space.as_ref().map(|s| &s.0)
}

unsafe fn curve_ref<'a>(c: *const GfCurve, what: &str) -> Result<&'a PolygonalCurve, Fail> {
    c.as_ref().map(|c| &c.0).ok_or_else(|| null(what))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next `gf_*` call on the thread.
#[no_mangle]
pub extern "C" fn gf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a polygon from `n` vertices in either orientation.
///
/// # Safety
/// `xy` must point to `2 * n` doubles and `out` to a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn gf_space_new(
    xy: *const f64,
    n: usize,
    out: *mut *mut GfSpace,
) -> GfStatus {
    guard(out, || {
        let pts = points(xy, n, "polygon coordinates")?;
        let poly = validate_polygon(&pts)?;
        Ok(Box::into_raw(Box::new(GfSpace(GeodesicSpace::new(poly)))))
    })
}

/// Releases a polygon handle. Null is ignored.
///
/// # Safety
/// `space` must come from [`gf_space_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gf_space_free(space: *mut GfSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Builds a curve from `n >= 1` vertices.
///
/// # Safety
/// `xy` must point to `2 * n` doubles and `out` to a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn gf_curve_new(
    xy: *const f64,
    n: usize,
    out: *mut *mut GfCurve,
) -> GfStatus {
    guard(out, || {
        let pts = points(xy, n, "curve coordinates")?;
        Ok(Box::into_raw(Box::new(GfCurve(PolygonalCurve::new(pts)?))))
    })
}

/// Releases a curve handle. Null is ignored.
///
/// # Safety
/// `curve` must come from [`gf_curve_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gf_curve_free(curve: *mut GfCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Length of the shortest path from `(ax, ay)` to `(bx, by)` inside the
/// polygon.
///
/// # Safety
/// `space` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf_shortest_path_length(
    space: *const GfSpace,
    ax: f64,
    ay: f64,
    bx: f64,
    by: f64,
    out: *mut f64,
) -> GfStatus {
    guard(out, || {
        let s = space_ref(space).ok_or_else(|| null("space"))?;
        Ok(s.distance(Point::new(ax, ay), Point::new(bx, by))?)
    })
}

/// Whether the Fréchet distance of `a` and `b` is at most `eps`.
///
/// # Safety
/// Handles must be live (`space` may be null) and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf_decide(
    space: *const GfSpace,
    a: *const GfCurve,
    b: *const GfCurve,
    eps: f64,
    out: *mut bool,
) -> GfStatus {
    guard(out, || {
        let (a, b) = (curve_ref(a, "curve a")?, curve_ref(b, "curve b")?);
        Ok(match space_ref(space) {
            Some(s) => freespace::decide(s, a, b, eps)?,
            None => freespace::decide(&Euclidean, a, b, eps)?,
        })
    })
}

/// Fréchet distance of `a` and `b`. `tol` is the root tolerance of the
/// optimizer; pass 0 for the default.
///
/// # Safety
/// Handles must be live (`space` may be null) and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gf_frechet(
    space: *const GfSpace,
    a: *const GfCurve,
    b: *const GfCurve,
    seed: u64,
    tol: f64,
    out: *mut GfFrechetResult,
) -> GfStatus {
    guard(out, || {
        let (a, b) = (curve_ref(a, "curve a")?, curve_ref(b, "curve b")?);
        let mut opts = FrechetOptions {
            seed,
            ..Default::default()
        };
        if tol != 0.0 {
            if !(tol > 0.0 && tol < 1e-3) {
                return Err(Fail(
                    GfStatus::InvalidArgument,
                    format!("tolerance {tol} outside (0, 1e-3)"),
                ));
            }
            opts.tol = tol;
        }
        let r = match space_ref(space) {
            Some(s) => frechet(s, a, b, opts)?,
            None => frechet(&Euclidean, a, b, opts)?,
        };
        Ok(GfFrechetResult {
            epsilon_star: r.epsilon_star,
            iterations: r.iterations,
            decision_calls: r.decision_calls,
        })
    })
}

/// Hausdorff distance between the point sets `xy_a` (`na` points) and
/// `xy_b` (`nb` points).
///
/// # Safety
/// `space` may be null or live; arrays must hold `2 * na` and `2 * nb`
/// doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gf_hausdorff(
    space: *const GfSpace,
    xy_a: *const f64,
    na: usize,
    xy_b: *const f64,
    nb: usize,
    out: *mut f64,
) -> GfStatus {
    guard(out, || {
        let pa = points(xy_a, na, "set a")?;
        let pb = points(xy_b, nb, "set b")?;
        Ok(match space_ref(space) {
            Some(s) => hausdorff(s, &PointSet::new(s, pa)?, &PointSet::new(s, pb)?)?,
            None => hausdorff(
                &Euclidean,
                &PointSet::unbounded(pa)?,
                &PointSet::unbounded(pb)?,
            )?,
        })
    })
}
