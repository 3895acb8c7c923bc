//! Hermite and Smith normal forms over the integers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{ext_gcd, Q, Z};
use crate::error::{Error, Result};
use crate::matrix::{QMatrix, ZMatrix};

/// Row-style Hermite normal form of an integer matrix.
#[derive(Clone, Debug)]
pub struct Hnf {
    /// Nonzero rows of the normal form (pivots positive, entries above a
    /// pivot reduced into `[0, pivot)`).
    pub h: ZMatrix,
    /// Unimodular `U` with `U * A = [h; 0]`.
    pub transform: ZMatrix,
    pub pivots: Vec<usize>,
}

fn combine_rows(a: &mut ZMatrix, i: usize, j: usize, s: &Z, t: &Z, u: &Z, v: &Z) {
    // (row_i, row_j) <- (s row_i + t row_j, u row_i + v row_j)
    for c in 0..a.ncols() {
        let x = a[(i, c)].clone();
        let y = a[(j, c)].clone();
        if x.is_zero() && y.is_zero() {
            continue;
        }
        a[(i, c)] = s * &x + t * &y;
        a[(j, c)] = u * &x + v * &y;
    }
}

fn add_row_multiple(a: &mut ZMatrix, target: usize, src: usize, f: &Z) {
    if f.is_zero() {
        return;
    }
    for c in 0..a.ncols() {
        if !a[(src, c)].is_zero() {
            let v = &a[(target, c)] + f * &a[(src, c)];
            a[(target, c)] = v;
        }
    }
}

fn negate_row(a: &mut ZMatrix, i: usize) {
    for c in 0..a.ncols() {
        let v = -a[(i, c)].clone();
        a[(i, c)] = v;
    }
}

/// Hermite normal form of the row lattice of `a`, with transform.
pub fn hnf_integer(a: &ZMatrix) -> Hnf {
    let (r, n) = (a.nrows(), a.ncols());
    let mut h = a.clone();
    let mut u = ZMatrix::identity(r);
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        if row == r {
            break;
        }
        for i in row + 1..r {
            if h[(i, col)].is_zero() {
                continue;
            }
            if h[(row, col)].is_zero() {
                h.swap_rows(row, i);
                u.swap_rows(row, i);
                continue;
            }
            let (g, s, t) = ext_gcd(&h[(row, col)], &h[(i, col)]);
            let a0 = &h[(row, col)] / &g;
            let b0 = &h[(i, col)] / &g;
            let (nb, a1) = (-b0, a0);
            combine_rows(&mut h, row, i, &s, &t, &nb, &a1);
            combine_rows(&mut u, row, i, &s, &t, &nb, &a1);
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            negate_row(&mut h, row);
            negate_row(&mut u, row);
        }
        let p = h[(row, col)].clone();
        for k in 0..row {
            let f = -h[(k, col)].div_floor(&p);
            add_row_multiple(&mut h, k, row, &f);
            add_row_multiple(&mut u, k, row, &f);
        }
        pivots.push(col);
        row += 1;
    }
    let h = h.select_rows(&(0..row).collect::<Vec<_>>());
    Hnf { h, transform: u, pivots }
}

/// Canonical basis (HNF rows) of the Z-span of the rows of a rational matrix.
pub fn lattice_basis(gens: &QMatrix) -> QMatrix {
    let (d, z) = gens.clear_denominators();
    let hn = hnf_integer(&z);
    let dq = Q::from_integer(d);
    hn.h.map(|x| Q::from_integer(x.clone()) / &dq)
}

/// HNF of a full-row-rank rational matrix; errors on rank deficiency.
pub fn hnf(a: &QMatrix) -> Result<QMatrix> {
    let b = lattice_basis(a);
    if b.nrows() != a.nrows() {
        return Err(Error::Singular);
    }
    Ok(b)
}

/// Smith normal form `U * A * V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diagonal: Vec<Z>,
    pub u: ZMatrix,
    pub v: ZMatrix,
}

fn swap_cols(a: &mut ZMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.nrows() {
        let x = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = x;
    }
}

fn add_col_multiple(a: &mut ZMatrix, target: usize, src: usize, f: &Z) {
    if f.is_zero() {
        return;
    }
    for r in 0..a.nrows() {
        if !a[(r, src)].is_zero() {
            let v = &a[(r, target)] + f * &a[(r, src)];
            a[(r, target)] = v;
        }
    }
}

/// Smith normal form of an integer matrix. The diagonal has
/// `min(rows, cols)` entries, nonnegative, each dividing the next.
pub fn snf(a: &ZMatrix) -> Snf {
    let (r, c) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = ZMatrix::identity(r);
    let mut v = ZMatrix::identity(c);
    let k = r.min(c);
    for t in 0..k {
        loop {
            // smallest nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);
            let p = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if !d[(i, t)].is_zero() {
                    let f = -d[(i, t)].div_floor(&p);
                    add_row_multiple(&mut d, i, t, &f);
                    add_row_multiple(&mut u, i, t, &f);
                    clean &= d[(i, t)].is_zero();
                }
            }
            for j in t + 1..c {
                if !d[(t, j)].is_zero() {
                    let f = -d[(t, j)].div_floor(&p);
                    add_col_multiple(&mut d, j, t, &f);
                    add_col_multiple(&mut v, j, t, &f);
                    clean &= d[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[(i, j)] % &p).is_zero());
            match bad {
                Some((i, _)) => {
                    add_row_multiple(&mut d, t, i, &Z::one());
                    add_row_multiple(&mut u, t, i, &Z::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    let diagonal = (0..k).map(|i| d[(i, i)].clone()).collect();
    Snf { diagonal, u, v }
}

/// Z-basis (rows) of the integer left kernel `{x in Z^r : x * a = 0}`.
pub fn integer_left_kernel(a: &ZMatrix) -> ZMatrix {
    let hn = hnf_integer(a);
    let rank = hn.h.nrows();
    hn.transform
        .select_rows(&(rank..a.nrows()).collect::<Vec<_>>())
}

/// Saturated integer basis of the left kernel of a rational matrix.
pub fn integer_left_kernel_q(a: &QMatrix) -> ZMatrix {
    let (_, z) = a.clear_denominators();
    let k = integer_left_kernel(&z);
    // the transform rows span the saturated kernel already; normalise
    let b = lattice_basis(&k.to_q());
    b.to_z().expect("integer kernel basis")
}
