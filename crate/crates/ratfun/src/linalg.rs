//! Thin wrappers around the dense complex kernels (SVD, Schur, pivoted QR).

use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

static SVD_CALLS: AtomicU64 = AtomicU64::new(0);

/// Number of SVD factorizations performed so far in this process. The greedy
/// barycentric loop pays one per iteration; the Thiele loop pays none.
pub fn svd_call_count() -> u64 {
    SVD_CALLS.load(Ordering::Relaxed)
}

/// Right singular vector belonging to the smallest singular value, unit 2-norm.
pub fn min_right_singular_vector(a: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let (m, n) = a.shape();
    debug_assert!(m >= n && n >= 1);
    SVD_CALLS.fetch_add(1, Ordering::Relaxed);
    let svd = a
        .clone()
        .try_svd(false, true, f64::EPSILON, 0)
        .ok_or(Error::SvdFailure)?;
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .ok_or(Error::SvdFailure)?;
    let v_t = svd.v_t.as_ref().ok_or(Error::SvdFailure)?;
    let mut w: Vec<Complex64> = v_t.row(k).iter().map(|c| c.conj()).collect();
    let norm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for c in &mut w {
            *c /= norm;
        }
    }
    Ok(w)
}

/// Eigenvalues of a general complex matrix.
///
/// The matrix is balanced (power-of-two diagonal similarity, exact in
/// floating point), reduced to upper Hessenberg form, and iterated to Schur
/// form by the single-shift QR algorithm with Wilkinson shifts. Deflation
/// uses the neighbor-relative criterion, so graded spectra spanning many
/// orders of magnitude still converge.
pub fn eigenvalues(mut a: DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![a[(0, 0)]]);
    }
    balance(&mut a);
    let h = if n == 2 { a } else { a.hessenberg().unpack_h() };
    hessenberg_eigenvalues(h)
}

/// Roots of `lambda^2 - (a + d) lambda + (ad - bc)`, the eigenvalues of the
/// 2x2 block `[[a, b], [c, d]]`, with the subtraction arranged to avoid
/// cancellation.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = 0.5 * (a + d);
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    let l1 = if (half_tr + disc).norm() >= (half_tr - disc).norm() {
        half_tr + disc
    } else {
        half_tr - disc
    };
    let l2 = if l1.norm() > 0.0 { det / l1 } else { half_tr - disc };
    (l1, l2)
}

/// Complex Givens rotation `G = [[c, s], [-conj(s), c]]` with real `c`
/// such that `G [x; y] = [r; 0]`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let xn = x.norm();
    let yn = y.norm();
    if yn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if xn == 0.0 {
        return (0.0, y.conj() / yn);
    }
    let rho = xn.hypot(yn);
    (xn / rho, (x / xn) * y.conj() / rho)
}

fn hessenberg_eigenvalues(mut h: DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    let eps = f64::EPSILON;
    let hnorm: f64 = h.iter().map(|c| c.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n; // active block is rows/cols 0..hi
    let mut stalled = 0usize;
    let mut budget = 60 * n + 200;

    while hi > 0 {
        // deflate negligible subdiagonals at the bottom of the active block
        let mut lo = hi - 1;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s == 0.0 { hnorm } else { s };
            if h[(lo, lo - 1)].norm() <= eps * s {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eigs.push(h[(hi - 1, hi - 1)]);
            hi -= 1;
            stalled = 0;
            continue;
        }
        if lo == hi - 2 {
            let (l1, l2) = eig2(
                h[(hi - 2, hi - 2)],
                h[(hi - 2, hi - 1)],
                h[(hi - 1, hi - 2)],
                h[(hi - 1, hi - 1)],
            );
            eigs.push(l1);
            eigs.push(l2);
            hi -= 2;
            stalled = 0;
            continue;
        }

        if budget == 0 {
            return Err(Error::EigenFailure);
        }
        budget -= 1;

        // Wilkinson shift: the eigenvalue of the trailing 2x2 closest to the
        // corner entry; an exceptional shift breaks rare stall cycles
        let corner = h[(hi - 1, hi - 1)];
        let mu = if stalled > 0 && stalled % 12 == 0 {
            corner + Complex64::new(1.5 * h[(hi - 1, hi - 2)].norm(), 0.0)
        } else {
            let (l1, l2) = eig2(
                h[(hi - 2, hi - 2)],
                h[(hi - 2, hi - 1)],
                h[(hi - 1, hi - 2)],
                h[(hi - 1, hi - 1)],
            );
            if (l1 - corner).norm() <= (l2 - corner).norm() {
                l1
            } else {
                l2
            }
        };
        stalled += 1;

        // implicit single-shift QR sweep on the active block
        let mut x = h[(lo, lo)] - mu;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi - 1 {
            let (c, s) = givens(x, y);
            let cs = Complex64::new(c, 0.0);
            let col_start = if k == lo { lo } else { k - 1 };
            for j in col_start..hi {
                let t1 = h[(k, j)];
                let t2 = h[(k + 1, j)];
                h[(k, j)] = cs * t1 + s * t2;
                h[(k + 1, j)] = -s.conj() * t1 + cs * t2;
            }
            let row_end = (k + 2).min(hi - 1);
            for i in lo..=row_end {
                let t1 = h[(i, k)];
                let t2 = h[(i, k + 1)];
                h[(i, k)] = cs * t1 + s.conj() * t2;
                h[(i, k + 1)] = -s * t1 + cs * t2;
            }
            if k + 2 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    Ok(eigs)
}

/// Osborne balancing with power-of-two factors: rescales `a <- D^-1 A D`
/// until every row and column have comparable 1-norms.
fn balance(a: &mut DMatrix<Complex64>) {
    let n = a.nrows();
    for _ in 0..20 {
        let mut converged = true;
        for i in 0..n {
            let mut row = 0.0;
            let mut col = 0.0;
            for j in 0..n {
                if j != i {
                    row += a[(i, j)].norm();
                    col += a[(j, i)].norm();
                }
            }
            if row == 0.0 || col == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let mut c = col;
            let r = row;
            while c < r / 2.0 {
                c *= 2.0;
                f *= 2.0;
            }
            while c >= r * 2.0 {
                c /= 2.0;
                f /= 2.0;
            }
            if f != 1.0 && (c + r) < 0.95 * (col + row) {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= inv;
                    a[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Least-squares solution of `a x = b` by column-pivoted QR.
///
/// Returns the coefficient vector together with a condition estimate taken
/// from the ratio of extreme diagonal entries of `R`.
pub fn lstsq_colpiv(a: &DMatrix<Complex64>, b: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let (m, n) = a.shape();
    debug_assert!(m >= n && m == b.len());
    let qr = a.clone().col_piv_qr();
    let q = qr.q();
    let r = qr.r();
    let rdiag: Vec<f64> = (0..n).map(|i| r[(i, i)].norm()).collect();
    let rmax = rdiag.iter().cloned().fold(0.0, f64::max);
    let rmin = rdiag.iter().cloned().fold(f64::INFINITY, f64::min);
    let cond = if rmin > 0.0 { rmax / rmin } else { f64::INFINITY };

    let bv = DVector::from_column_slice(b);
    let mut x = (q.adjoint() * bv).rows(0, n).into_owned();
    if !r
        .view((0, 0), (n, n))
        .clone_owned()
        .solve_upper_triangular_mut(&mut x)
    {
        return Err(Error::SvdFailure);
    }
    qr.p().inv_permute_rows(&mut x);
    Ok((x.iter().copied().collect(), cond))
}
