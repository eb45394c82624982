//! Bracketed scalar root finding and unimodal minimization.

/// Brent's method on a bracket with `f(a)` and `f(b)` of opposite sign (or zero).
///
/// Returns the final bracket `(lo, hi)` ordered so that `f(lo)` has the sign of
/// the original `f(a)`; the bracket width is at most `xtol` unless an exact zero
/// was hit.
pub fn brent_bracket<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    xtol: f64,
    max_iter: usize,
) -> (f64, f64) {
    let side_a = fa <= 0.0;
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    if fa == 0.0 {
        return (a, a);
    }
    if fb == 0.0 {
        return (b, b);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            break;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    if fb == 0.0 {
        return (b, b);
    }
    if (fb > 0.0) == (fc > 0.0) {
        c = a;
    }
    // b and c bracket the root
    let (x_neg, x_pos) = if fb <= 0.0 { (b, c) } else { (c, b) };
    if side_a {
        (x_neg, x_pos)
    } else {
        (x_pos, x_neg)
    }
}

/// Largest `s` in `[lo, hi]` where the monotone predicate still holds
/// (`pred(lo)` true, `pred(hi)` false). Returns `(last_true, first_false)`.
pub fn bisect_predicate<P: FnMut(f64) -> bool>(
    mut pred: P,
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
) -> (f64, f64) {
    while (hi - lo).abs() > xtol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > xtol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cube_root() {
        let f = |x: f64| x * x * x - 2.0;
        let (lo, hi) = brent_bracket(f, 0.0, 2.0, f(0.0), f(2.0), 1e-14, 200);
        assert!(f(lo) <= 0.0 && f(hi) >= 0.0);
        assert!((lo - 2f64.cbrt()).abs() < 1e-13);
    }

    #[test]
    fn brent_keeps_orientation() {
        let f = |x: f64| 1.0 - x;
        let (lo, hi) = brent_bracket(f, 0.0, 3.0, f(0.0), f(3.0), 1e-12, 200);
        assert!(f(lo) >= 0.0 && f(hi) <= 0.0);
        assert!((lo - 1.0).abs() < 1e-11);
    }

    #[test]
    fn golden_section_on_abs() {
        let (x, fx) = golden_min(|x| (x - 0.3).abs(), -2.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-11 && fx < 1e-11);
    }

    #[test]
    fn predicate_bisection() {
        let (lo, hi) = bisect_predicate(|s| s <= 0.75, 0.0, 1.0, 1e-12);
        assert!(lo <= 0.75 && hi > 0.75 && hi - lo <= 1e-12);
    }
}
