//! Small-rank b-symmetric and b-alternating endomorphisms: symmetric
//! squares, alternating tensors, and their decompositions.
//!
//! For a column x, the b-symmetric square x (x)_b x maps y to b(x,y) x; its
//! matrix is x x^T S. For columns x, y the b-alternating tensor x /\_b y is
//! (x y^T + y x^T) S. Every rank-1 b-symmetric map is a scaled symmetric
//! square, and every b-symmetric map that kills an isotropic x and sends
//! {x}^perp into Fx splits as alpha x(x)x + x/\y with y in {x}^perp.

use crate::field::FieldElement;
use crate::form::BilinearForm;
use crate::matrix::Matrix;
use crate::{Error, Result};

/// Matrix of the b-symmetric square of x: x x^T S. Rank 1 iff x != 0, and
/// its trace is Q(x).
pub fn sym_square(form: &BilinearForm, x: &Matrix) -> Result<Matrix> {
    check_column(form, x)?;
    x.mul(&x.transpose())?.mul(form.gram())
}

/// Matrix of the b-alternating tensor of x and y: (x y^T + y x^T) S.
/// Zero iff x, y are linearly dependent; otherwise rank 2 with range
/// spanned by x and y.
pub fn alt_tensor(form: &BilinearForm, x: &Matrix, y: &Matrix) -> Result<Matrix> {
    check_column(form, x)?;
    check_column(form, y)?;
    let outer = x.mul(&y.transpose())?.add(&y.mul(&x.transpose())?)?;
    outer.mul(form.gram())
}

/// Writes a rank-1 b-symmetric matrix as alpha * sym_square(x), with the
/// witness x normalized so its leading nonzero coordinate is 1.
pub fn rank_one_decompose(form: &BilinearForm, m: &Matrix) -> Result<(FieldElement, Matrix)> {
    let field = form.field();
    if !form.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    if !form.gram().mul(m)?.is_symmetric()? {
        return Err(Error::NotBSymmetric);
    }
    let rank = m.rank();
    if rank != 1 {
        return Err(Error::WrongRank(format!("expected rank 1, got {rank}")));
    }
    // The range is spanned by any nonzero column.
    let j0 = (0..m.cols())
        .find(|&j| !m.column(j).is_zero())
        .expect("rank 1 matrix has a nonzero column");
    let x0 = m.column(j0);
    let lead = (0..x0.rows()).find(|&i| !x0.get(i, 0).is_zero()).expect("nonzero column");
    let x = x0.scale(field.inv(x0.get(lead, 0))?);
    // With x[lead] = 1, row `lead` of m equals alpha * x^T S.
    let xts = x.transpose().mul(form.gram())?;
    let j1 = (0..xts.cols())
        .find(|&j| !xts.get(0, j).is_zero())
        .ok_or(Error::Degenerate)?;
    let alpha = field.div(m.get(lead, j1), xts.get(0, j1))?;
    if sym_square(form, &x)?.scale(alpha) != *m {
        return Err(Error::NotBSymmetric);
    }
    Ok((alpha, x))
}

/// Splits a b-symmetric matrix that vanishes at the isotropic x and maps
/// {x}^perp into Fx as alpha * sym_square(x) + alt_tensor(x, y) with y in
/// {x}^perp. The returned y is reduced so its coordinate at the leading
/// index of x is zero, which pins it down inside its coset of Fx.
pub fn small_rank_decompose(
    form: &BilinearForm,
    m: &Matrix,
    x: &Matrix,
) -> Result<(FieldElement, Matrix)> {
    let field = form.field();
    let n = form.n();
    check_column(form, x)?;
    if x.is_zero() {
        return Err(Error::PreconditionFailed("x must be nonzero".into()));
    }
    if !form.quad_eval(x)?.is_zero() {
        return Err(Error::PreconditionFailed("x must be isotropic".into()));
    }
    if !form.is_nondegenerate() {
        return Err(Error::PreconditionFailed("form must be non-degenerate".into()));
    }
    if !form.gram().mul(m)?.is_symmetric()? {
        return Err(Error::PreconditionFailed("matrix must be b-symmetric".into()));
    }
    if !m.mul(x)?.is_zero() {
        return Err(Error::PreconditionFailed("matrix must vanish at x".into()));
    }
    for h in form.orth_complement(std::slice::from_ref(x))? {
        let image = m.mul(&h)?;
        if !crate::matrix::span_contains(x, &image)? {
            return Err(Error::PreconditionFailed(
                "matrix must map the orthogonal of x into the line of x".into(),
            ));
        }
    }

    // Solve m = alpha * x(x)x + x/\y linearly in (alpha, y), with the extra
    // row b(x, y) = 0 keeping y inside {x}^perp.
    let mut columns = Vec::with_capacity(1 + n);
    columns.push(sym_square(form, x)?.vectorize());
    for j in 0..n {
        let e = Matrix::unit_column(field, n, j);
        columns.push(alt_tensor(form, x, &e)?.vectorize());
    }
    let top = Matrix::hstack(field, n * n, &columns)?;
    let mut perp_row = Matrix::zero(field, 1, 1 + n);
    let xts = x.transpose().mul(form.gram())?;
    for j in 0..n {
        perp_row.set(0, 1 + j, xts.get(0, j));
    }
    let system = Matrix::vstack(field, 1 + n, &[top, perp_row])?;
    let mut rhs = m.vectorize();
    rhs = Matrix::vstack(field, 1, &[rhs, Matrix::zero(field, 1, 1)])?;
    let solution = system
        .solve(&rhs)?
        .ok_or_else(|| Error::PreconditionFailed("no tensor decomposition exists".into()))?;
    let alpha = solution.get(0, 0);
    let mut y = solution.submatrix(1, 1 + n, 0, 1);
    // Canonicalize y modulo Fx: zero its coordinate at the lead of x.
    let lead = (0..n).find(|&i| !x.get(i, 0).is_zero()).expect("x nonzero");
    let c = field.div(y.get(lead, 0), x.get(lead, 0))?;
    y.add_in_place(&x.scale(c))?;

    let rebuilt = sym_square(form, x)?.scale(alpha).add(&alt_tensor(form, x, &y)?)?;
    if rebuilt != *m {
        return Err(Error::Internal("tensor decomposition failed to reconstruct".into()));
    }
    Ok((alpha, y))
}

fn check_column(form: &BilinearForm, x: &Matrix) -> Result<()> {
    if x.field() != form.field() {
        return Err(Error::FieldMismatch);
    }
    if x.rows() != form.n() || x.cols() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "expected {}x1 column, got {}x{}",
            form.n(),
            x.rows(),
            x.cols()
        )));
    }
    Ok(())
}
