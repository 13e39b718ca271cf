//! Symmetric bilinear forms over GF(2^k): validation, the quadratic form Q,
//! radical, Ker Q, SKer Q, orthogonal complements, normal bases, Witt index,
//! and the a-transform.
//!
//! A form is stored by its symmetric Gram matrix S; b(x, y) = x^T S y and
//! Q(x) = b(x, x). In characteristic 2, Q is additive and Ker Q is a linear
//! subspace. Over a finite (hence perfect) field the square root map stays
//! inside the field, which makes sqrt(Q(x)) a linear functional of x: Ker Q
//! is the kernel of the row of entrywise square roots of the diagonal of S.

use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{column_span_basis, Matrix};
use crate::{Error, Result};

/// Default node budget for the brute-force Witt index search.
pub const DEFAULT_WITT_BUDGET: u64 = 1_000_000;

/// A symmetric bilinear form, with cached validity flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
    alternating: bool,
    rank: usize,
}

impl BilinearForm {
    /// Validates the Gram matrix and caches the alternating flag.
    pub fn new(gram: Matrix) -> Result<BilinearForm> {
        if !gram.is_symmetric()? {
            return Err(Error::NotSymmetric);
        }
        let alternating = gram.is_alternating()?;
        let rank = gram.rank();
        Ok(BilinearForm { gram, alternating, rank })
    }

    pub fn identity(field: FieldSpec, n: usize) -> BilinearForm {
        BilinearForm::new(Matrix::identity(field, n)).expect("identity gram is symmetric")
    }

    /// The hyperbolic form H_{2m} with Gram [[0, I_m], [I_m, 0]].
    pub fn hyperbolic(field: FieldSpec, m: usize) -> BilinearForm {
        let mut gram = Matrix::zero(field, 2 * m, 2 * m);
        for i in 0..m {
            gram.set(i, m + i, FieldElement::ONE);
            gram.set(m + i, i, FieldElement::ONE);
        }
        BilinearForm::new(gram).expect("hyperbolic gram is symmetric")
    }

    pub fn field(&self) -> FieldSpec {
        self.gram.field()
    }

    pub fn n(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank == self.n()
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        Ok(())
    }

    fn check_column(&self, x: &Matrix) -> Result<()> {
        if x.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if x.rows() != self.n() || x.cols() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "expected {}x1 column, got {}x{}",
                self.n(),
                x.rows(),
                x.cols()
            )));
        }
        Ok(())
    }

    /// b(x, y) = x^T S y.
    pub fn eval(&self, x: &Matrix, y: &Matrix) -> Result<FieldElement> {
        self.check_column(x)?;
        self.check_column(y)?;
        Ok(x.transpose().mul(&self.gram.mul(y)?)?.get(0, 0))
    }

    /// Q(x) = b(x, x).
    pub fn quad_eval(&self, x: &Matrix) -> Result<FieldElement> {
        self.eval(x, x)
    }

    /// Canonical basis of Rad(b) = V^perp, the kernel of S.
    pub fn radical(&self) -> Vec<Matrix> {
        self.gram.kernel_basis()
    }

    /// Non-degenerate form induced on a complement of the radical, plus the
    /// projection matrix taking old coordinates to the new ones.
    pub fn reduce_by_radical(&self) -> (BilinearForm, Matrix) {
        let field = self.field();
        let n = self.n();
        let rad = self.radical();
        let r = rad.len();
        // Greedily extend the radical to a full basis by standard vectors;
        // the chosen standard vectors span a complement.
        let mut chosen = rad.clone();
        let mut complement = Vec::new();
        for i in 0..n {
            if chosen.len() == n {
                break;
            }
            let e = Matrix::unit_column(field, n, i);
            let mut trial = chosen.clone();
            trial.push(e.clone());
            let stacked = Matrix::hstack(field, n, &trial).expect("same shapes");
            if stacked.rank() == trial.len() {
                chosen = trial;
                complement.push(e);
            }
        }
        let c = Matrix::hstack(field, n, &complement).expect("same shapes");
        let reduced_gram = c.transpose().mul(&self.gram).expect("shape").mul(&c).expect("shape");
        let rad_block = Matrix::hstack(field, n, &rad).expect("same shapes");
        let full = Matrix::hstack(field, n, &[c, rad_block]).expect("same shapes");
        let projection =
            full.inverse().expect("complement plus radical is a basis").submatrix(0, n - r, 0, n);
        let reduced = BilinearForm::new(reduced_gram).expect("congruences preserve symmetry");
        (reduced, projection)
    }

    /// The row whose kernel is Ker Q: entrywise square roots of the diagonal
    /// of S, as a 1 x n matrix. sqrt(Q(x)) equals this row times x.
    fn sqrt_diag_row(&self) -> Matrix {
        let field = self.field();
        Matrix::from_fn(field, 1, self.n(), |_, j| field.sqrt(self.gram.get(j, j)))
    }

    /// Canonical basis of Ker Q = {x : Q(x) = 0}.
    pub fn ker_q(&self) -> Vec<Matrix> {
        let basis = self.sqrt_diag_row().kernel_basis();
        debug_assert!(basis.iter().all(|v| self.quad_eval(v).expect("valid column").is_zero()));
        basis
    }

    /// Canonical basis of the b-orthogonal complement of the span of the
    /// given columns. For an empty subspace this is the whole space.
    pub fn orth_complement(&self, subspace: &[Matrix]) -> Result<Vec<Matrix>> {
        for v in subspace {
            self.check_column(v)?;
        }
        let u = Matrix::hstack(self.field(), self.n(), subspace)?;
        Ok(u.transpose().mul(&self.gram)?.kernel_basis())
    }

    fn sker_q_basis(&self) -> Vec<Matrix> {
        let field = self.field();
        let n = self.n();
        let ker = self.ker_q();
        let k = Matrix::hstack(field, n, &ker).expect("same shapes");
        let constraints = Matrix::vstack(
            field,
            n,
            &[self.sqrt_diag_row(), k.transpose().mul(&self.gram).expect("shape")],
        )
        .expect("same widths");
        constraints.kernel_basis()
    }

    /// Canonical basis of SKer Q = Ker Q intersected with (Ker Q)^perp.
    pub fn sker_q(&self) -> Result<Vec<Matrix>> {
        self.require_nondegenerate()?;
        Ok(self.sker_q_basis())
    }

    /// S_a = S + d d^T where d is the column of square roots of the diagonal.
    /// Always alternating; equals S when S is alternating.
    pub fn a_transform(&self) -> Matrix {
        let d = self.sqrt_diag_row().transpose();
        let outer = d.mul(&d.transpose()).expect("shape");
        let sa = self.gram.add(&outer).expect("same shape");
        debug_assert!(sa.is_alternating().expect("square"));
        sa
    }

    /// Computes a normal basis: a congruence witness P with P^T S P in the
    /// block shape anisotropic-diagonal + q-blocks + hyperbolic.
    ///
    /// The algorithm splits off anisotropic vectors (rescaled so Q = 1),
    /// extracts hyperbolic pairs from the remaining alternating part by
    /// symplectic pivoting, then merges the collected <1> summands:
    ///   R1: <1> perp <1>       -> q-block [[0,1],[1,1]]  via (v1+v2, v2)
    ///   R2: <1> perp q-block   -> <1> perp H_2           via (u+f1, f1, u+f2)
    /// Over a finite field this terminates with p + q <= 1. The returned
    /// data is checked against the form entry-for-entry before returning.
    pub fn normal_basis(&self) -> Result<NormalBasisData> {
        self.require_nondegenerate()?;
        let field = self.field();
        let n = self.n();

        let mut ones: Vec<Matrix> = Vec::new();
        let mut hyper: Vec<(Matrix, Matrix)> = Vec::new();
        let mut rest: Vec<Matrix> = (0..n).map(|i| Matrix::unit_column(field, n, i)).collect();

        // Split off anisotropic vectors, rescaled to Q = 1.
        loop {
            let found =
                rest.iter().position(|v| !self.quad_eval(v).expect("valid column").is_zero());
            let Some(i) = found else { break };
            let v = rest.remove(i);
            let scale = field.inv(field.sqrt(self.quad_eval(&v)?))?;
            let v = v.scale(scale);
            debug_assert_eq!(self.quad_eval(&v)?, FieldElement::ONE);
            for w in &mut rest {
                let c = self.eval(w, &v)?;
                w.add_in_place(&v.scale(c))?;
            }
            ones.push(v);
        }

        // The remaining restriction is alternating and non-degenerate:
        // extract hyperbolic pairs by the standard symplectic pivot.
        while !rest.is_empty() {
            let mut pair = None;
            'outer: for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    if !self.eval(&rest[i], &rest[j])?.is_zero() {
                        pair = Some((i, j));
                        break 'outer;
                    }
                }
            }
            let (i, j) =
                pair.ok_or_else(|| Error::Internal("alternating residue is degenerate".into()))?;
            let u = rest.remove(i);
            let w = rest.remove(j - 1);
            let w = w.scale(field.inv(self.eval(&u, &w)?)?);
            for z in &mut rest {
                let cu = self.eval(z, &w)?;
                let cw = self.eval(z, &u)?;
                z.add_in_place(&u.scale(cu))?;
                z.add_in_place(&w.scale(cw))?;
            }
            debug_assert_eq!(self.eval(&u, &w)?, FieldElement::ONE);
            hyper.push((u, w));
        }

        // Merge <1> summands until at most one of {<1>, q-block} remains.
        let mut qblock: Option<(Matrix, Matrix)> = None;
        loop {
            if let Some((f1, f2)) = qblock.take() {
                if let Some(u) = ones.pop() {
                    // R2: (u, f1, f2) -> <1> on u+f1, hyperbolic pair (f1, u+f2)
                    let new_one = u.add(&f1)?;
                    let second = u.add(&f2)?;
                    debug_assert_eq!(self.quad_eval(&new_one)?, FieldElement::ONE);
                    debug_assert!(self.quad_eval(&second)?.is_zero());
                    debug_assert_eq!(self.eval(&f1, &second)?, FieldElement::ONE);
                    hyper.push((f1, second));
                    ones.push(new_one);
                } else {
                    qblock = Some((f1, f2));
                    break;
                }
            } else if ones.len() >= 2 {
                // R1: (v1, v2) -> q-block basis (v1+v2, v2), Gram [[0,1],[1,1]]
                let v2 = ones.pop().expect("len checked");
                let v1 = ones.pop().expect("len checked");
                let f1 = v1.add(&v2)?;
                debug_assert!(self.quad_eval(&f1)?.is_zero());
                debug_assert_eq!(self.eval(&f1, &v2)?, FieldElement::ONE);
                qblock = Some((f1, v2));
            } else {
                break;
            }
        }

        let p_count = ones.len();
        let q_count = usize::from(qblock.is_some());
        let m_count = hyper.len();
        let mut columns = ones;
        if let Some((f1, f2)) = qblock {
            columns.push(f1);
            columns.push(f2);
        }
        columns.extend(hyper.iter().map(|(u, _)| u.clone()));
        columns.extend(hyper.iter().map(|(_, w)| w.clone()));
        let basis_change = Matrix::hstack(field, n, &columns)?;
        let diag_values = vec![FieldElement::ONE; p_count + q_count];
        let data = NormalBasisData::new(p_count, q_count, m_count, diag_values, basis_change)?;
        data.verify_against(self)?;
        Ok(data)
    }

    /// nu(b) = q + m, read off the normal basis.
    pub fn witt_index(&self) -> Result<usize> {
        Ok(self.normal_basis()?.nu())
    }

    /// Independent Witt index oracle: depth-first search for a maximum
    /// totally singular subspace, enumerating each subspace exactly once
    /// through reduced-echelon bases. `budget` bounds the number of
    /// candidate vectors examined.
    pub fn witt_index_bruteforce(&self, budget: u64) -> Result<usize> {
        let mut search = WittSearch { form: self, budget, nodes: 0, best: 0 };
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        search.dfs(&mut basis, &mut pivots, self.n())?;
        Ok(search.best)
    }

    /// The invariant bundle. For degenerate forms, the Witt index counts the
    /// radical (which is totally singular) plus the index of the reduced
    /// form, and SKer Q is computed straight from its definition.
    pub fn invariants(&self) -> FormInvariants {
        let dim_ker_q = self.ker_q().len();
        let dim_sker_q = self.sker_q_basis().len();
        let witt_index = if self.is_nondegenerate() {
            self.normal_basis().expect("non-degenerate").nu()
        } else {
            let rad_dim = self.n() - self.rank;
            let (reduced, _) = self.reduce_by_radical();
            rad_dim + reduced.normal_basis().expect("reduction is non-degenerate").nu()
        };
        FormInvariants {
            n: self.n(),
            rank: self.rank,
            witt_index,
            dim_ker_q,
            dim_sker_q,
            alternating: self.alternating,
        }
    }
}

struct WittSearch<'a> {
    form: &'a BilinearForm,
    budget: u64,
    nodes: u64,
    best: usize,
}

impl WittSearch<'_> {
    /// Extends the current totally singular basis by every vector in reduced
    /// echelon position with leading entry above `min_pivot`.
    fn dfs(
        &mut self,
        basis: &mut Vec<Matrix>,
        pivots: &mut Vec<usize>,
        min_pivot: usize,
    ) -> Result<()> {
        let field = self.form.field();
        let n = self.form.n();
        for pivot in 0..min_pivot {
            let free: Vec<usize> = (pivot + 1..n).filter(|i| !pivots.contains(i)).collect();
            let Some(assignments) = field.size().checked_pow(free.len() as u32) else {
                return Err(Error::BudgetExceeded);
            };
            for counter in 0..assignments {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::BudgetExceeded);
                }
                let mut v = Matrix::unit_column(field, n, pivot);
                let mut c = counter;
                for &idx in &free {
                    v.set(idx, 0, FieldElement((c % field.size()) as u16));
                    c /= field.size();
                }
                if !self.form.quad_eval(&v)?.is_zero() {
                    continue;
                }
                let mut orthogonal = true;
                for u in basis.iter() {
                    if !self.form.eval(u, &v)?.is_zero() {
                        orthogonal = false;
                        break;
                    }
                }
                if !orthogonal {
                    continue;
                }
                basis.push(v);
                pivots.push(pivot);
                self.best = self.best.max(basis.len());
                self.dfs(basis, pivots, pivot)?;
                basis.pop();
                pivots.pop();
            }
        }
        Ok(())
    }
}

/// Witness for the normal-basis shape of a form: invariants (p, q, m), the
/// per-block diagonal values a_1..a_{p+q}, and the congruence P with
/// P^T S P equal to the block Gram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalBasisData {
    p_count: usize,
    q_count: usize,
    m_count: usize,
    diag_values: Vec<FieldElement>,
    basis_change: Matrix,
}

impl NormalBasisData {
    pub fn new(
        p_count: usize,
        q_count: usize,
        m_count: usize,
        diag_values: Vec<FieldElement>,
        basis_change: Matrix,
    ) -> Result<NormalBasisData> {
        let n = p_count + 2 * q_count + 2 * m_count;
        if basis_change.rows() != n || basis_change.cols() != n {
            return Err(Error::ShapeMismatch(format!(
                "basis change must be {n}x{n} for (p,q,m)=({p_count},{q_count},{m_count})"
            )));
        }
        if diag_values.len() != p_count + q_count {
            return Err(Error::BadInput(format!(
                "expected {} diagonal values, got {}",
                p_count + q_count,
                diag_values.len()
            )));
        }
        if diag_values.iter().any(|a| a.is_zero()) {
            return Err(Error::BadInput("diagonal values must be nonzero".into()));
        }
        Ok(NormalBasisData { p_count, q_count, m_count, diag_values, basis_change })
    }

    pub fn p_count(&self) -> usize {
        self.p_count
    }

    pub fn q_count(&self) -> usize {
        self.q_count
    }

    pub fn m_count(&self) -> usize {
        self.m_count
    }

    pub fn diag_values(&self) -> &[FieldElement] {
        &self.diag_values
    }

    pub fn basis_change(&self) -> &Matrix {
        &self.basis_change
    }

    pub fn n(&self) -> usize {
        self.p_count + 2 * self.q_count + 2 * self.m_count
    }

    /// Witt index q + m.
    pub fn nu(&self) -> usize {
        self.q_count + self.m_count
    }

    /// The expected block Gram: Diag(a_1..a_p) + q-blocks + hyperbolic.
    pub fn normal_gram(&self, field: FieldSpec) -> Matrix {
        let (p, q, m) = (self.p_count, self.q_count, self.m_count);
        let n = self.n();
        let mut g = Matrix::zero(field, n, n);
        for i in 0..p {
            g.set(i, i, self.diag_values[i]);
        }
        for i in 0..q {
            g.set(p + i, p + q + i, FieldElement::ONE);
            g.set(p + q + i, p + i, FieldElement::ONE);
            g.set(p + q + i, p + q + i, self.diag_values[p + i]);
        }
        for i in 0..m {
            g.set(p + 2 * q + i, p + 2 * q + m + i, FieldElement::ONE);
            g.set(p + 2 * q + m + i, p + 2 * q + i, FieldElement::ONE);
        }
        g
    }

    /// Checks P invertible and P^T S P equal to the block Gram, bit-exactly.
    pub fn verify_against(&self, form: &BilinearForm) -> Result<()> {
        if self.n() != form.n() {
            return Err(Error::ShapeMismatch(format!(
                "normal data is for dimension {}, form has {}",
                self.n(),
                form.n()
            )));
        }
        if self.basis_change.rank() != self.n() {
            return Err(Error::Singular);
        }
        let congruent =
            self.basis_change.transpose().mul(form.gram())?.mul(&self.basis_change)?;
        if congruent != self.normal_gram(form.field()) {
            return Err(Error::Internal(
                "P^T S P does not match the declared normal shape".into(),
            ));
        }
        Ok(())
    }
}

/// Aggregated classification quantities of a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormInvariants {
    pub n: usize,
    pub rank: usize,
    pub witt_index: usize,
    pub dim_ker_q: usize,
    pub dim_sker_q: usize,
    pub alternating: bool,
}

/// Orthogonal direct sum: block-diagonal Gram.
pub fn orthogonal_sum(forms: &[BilinearForm]) -> Result<BilinearForm> {
    let field = forms.first().map(BilinearForm::field).unwrap_or_else(FieldSpec::gf2);
    let n: usize = forms.iter().map(BilinearForm::n).sum();
    let mut gram = Matrix::zero(field, n, n);
    let mut offset = 0;
    for f in forms {
        if f.field() != field {
            return Err(Error::FieldMismatch);
        }
        for i in 0..f.n() {
            for j in 0..f.n() {
                gram.set(offset + i, offset + j, f.gram().get(i, j));
            }
        }
        offset += f.n();
    }
    BilinearForm::new(gram)
}

/// Canonical span equality, for comparing kernel-style bases.
pub fn same_span(field: FieldSpec, n: usize, a: &[Matrix], b: &[Matrix]) -> Result<bool> {
    Ok(column_span_basis(field, n, a)? == column_span_basis(field, n, b)?)
}
