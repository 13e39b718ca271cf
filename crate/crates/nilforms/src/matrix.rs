//! Exact dense matrices over GF(2^k) with rank/kernel/characteristic
//! polynomial/nilpotency primitives.
//!
//! GF(2) matrices pack each row into machine words so that the exhaustive
//! verification oracles can grind through millions of products; larger
//! fields use an unpacked entry array. Matrices are values: every operation
//! returns a fresh matrix.

use crate::field::{FieldElement, FieldSpec};
use crate::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Storage {
    /// GF(2): row-major words, `words_per_row` words per row, unused high
    /// bits of the last word kept zero.
    Packed { words_per_row: usize, words: Vec<u64> },
    /// Row-major element bits.
    Dense(Vec<u16>),
}

/// Exact dense matrix over a fixed [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        let storage = if field.is_gf2() {
            let wpr = cols.div_ceil(64);
            Storage::Packed { words_per_row: wpr, words: vec![0; rows * wpr] }
        } else {
            Storage::Dense(vec![0; rows * cols])
        };
        Matrix { field, rows, cols, storage }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Builds a matrix from row-major nested entry lists of decimal bit
    /// representations, validating every entry against the field.
    pub fn from_rows(field: FieldSpec, entries: &[Vec<u64>]) -> Result<Matrix> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        for row in entries {
            if row.len() != cols {
                return Err(Error::ShapeMismatch("ragged entry rows".into()));
            }
        }
        let mut m = Matrix::zero(field, rows, cols);
        for (i, row) in entries.iter().enumerate() {
            for (j, &bits) in row.iter().enumerate() {
                m.set(i, j, field.element(bits)?);
            }
        }
        Ok(m)
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Matrix {
        let mut m = Matrix::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Standard basis column e_i of F^n.
    pub fn unit_column(field: FieldSpec, n: usize, i: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, 1);
        m.set(i, 0, FieldElement::ONE);
        m
    }

    /// Elementary matrix E_{ij} of the given shape.
    pub fn unit_matrix(field: FieldSpec, rows: usize, cols: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zero(field, rows, cols);
        m.set(i, j, FieldElement::ONE);
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        debug_assert!(i < self.rows && j < self.cols);
        match &self.storage {
            Storage::Packed { words_per_row, words } => {
                let w = words[i * words_per_row + j / 64];
                FieldElement(((w >> (j % 64)) & 1) as u16)
            }
            Storage::Dense(v) => FieldElement(v[i * self.cols + j]),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: FieldElement) {
        debug_assert!(i < self.rows && j < self.cols);
        match &mut self.storage {
            Storage::Packed { words_per_row, words } => {
                let idx = i * *words_per_row + j / 64;
                let mask = 1u64 << (j % 64);
                if value.is_zero() {
                    words[idx] &= !mask;
                } else {
                    words[idx] |= mask;
                }
            }
            Storage::Dense(v) => v[i * self.cols + j] = value.bits(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Packed { words, .. } => words.iter().all(|&w| w == 0),
            Storage::Dense(v) => v.iter().all(|&e| e == 0),
        }
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Entrywise sum; xor of representations.
    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        let mut out = self.clone();
        out.add_in_place(other)?;
        Ok(out)
    }

    pub fn add_in_place(&mut self, other: &Matrix) -> Result<()> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        match (&mut self.storage, &other.storage) {
            (Storage::Packed { words, .. }, Storage::Packed { words: ws, .. }) => {
                for (a, b) in words.iter_mut().zip(ws) {
                    *a ^= b;
                }
            }
            (Storage::Dense(v), Storage::Dense(w)) => {
                for (a, b) in v.iter_mut().zip(w) {
                    *a ^= b;
                }
            }
            _ => unreachable!("storage kind is determined by the field"),
        }
        Ok(())
    }

    pub fn scale(&self, c: FieldElement) -> Matrix {
        if c == FieldElement::ONE {
            return self.clone();
        }
        if c.is_zero() {
            return Matrix::zero(self.field, self.rows, self.cols);
        }
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self.field.mul(self.get(i, j), c))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        match (&self.storage, &other.storage, &mut out.storage) {
            (
                Storage::Packed { words_per_row: awpr, words: aw },
                Storage::Packed { words_per_row: bwpr, words: bw },
                Storage::Packed { words_per_row: owpr, words: ow },
            ) => {
                let (awpr, bwpr, owpr) = (*awpr, *bwpr, *owpr);
                for i in 0..self.rows {
                    let arow = &aw[i * awpr..(i + 1) * awpr];
                    let orow = &mut ow[i * owpr..(i + 1) * owpr];
                    for (wi, &word) in arow.iter().enumerate() {
                        let mut bits = word;
                        while bits != 0 {
                            let j = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            let brow = &bw[j * bwpr..(j + 1) * bwpr];
                            for (o, &b) in orow.iter_mut().zip(brow) {
                                *o ^= b;
                            }
                        }
                    }
                }
            }
            _ => {
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = self.get(i, k);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..other.cols {
                            let prod = self.field.mul(a, other.get(k, j));
                            out.set(i, j, self.field.add(out.get(i, j), prod));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Result<FieldElement> {
        self.require_square()?;
        let mut t = FieldElement::ZERO;
        for i in 0..self.rows {
            t = self.field.add(t, self.get(i, i));
        }
        Ok(t)
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> Result<bool> {
        self.require_square()?;
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Symmetric with zero diagonal; the alternating criterion in
    /// characteristic 2.
    pub fn is_alternating(&self) -> Result<bool> {
        if !self.is_symmetric()? {
            return Ok(false);
        }
        Ok((0..self.rows).all(|i| self.get(i, i).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        match &mut self.storage {
            Storage::Packed { words_per_row, words } => {
                for k in 0..*words_per_row {
                    words.swap(a * *words_per_row + k, b * *words_per_row + k);
                }
            }
            Storage::Dense(v) => {
                for j in 0..cols {
                    v.swap(a * cols + j, b * cols + j);
                }
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: FieldElement) {
        if c == FieldElement::ONE {
            return;
        }
        for j in 0..self.cols {
            let v = self.field.mul(self.get(r, j), c);
            self.set(r, j, v);
        }
    }

    /// row_target += c * row_source. Addition equals subtraction here.
    fn axpy_row(&mut self, target: usize, source: usize, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        debug_assert_ne!(target, source);
        let cols = self.cols;
        let field = self.field;
        match &mut self.storage {
            Storage::Packed { words_per_row, words } => {
                let wpr = *words_per_row;
                let (head, tail) = words.split_at_mut(target.max(source) * wpr);
                let lo = target.min(source) * wpr;
                let (t, s) = if source > target {
                    (&mut head[lo..lo + wpr], &tail[..wpr])
                } else {
                    (&mut tail[..wpr], &head[lo..lo + wpr])
                };
                for (a, b) in t.iter_mut().zip(s) {
                    *a ^= b;
                }
            }
            Storage::Dense(v) => {
                for j in 0..cols {
                    let add = field.mul(c, FieldElement(v[source * cols + j]));
                    v[target * cols + j] = field.add(FieldElement(v[target * cols + j]), add).bits();
                }
            }
        }
    }

    /// Row-reduced echelon form together with the pivot columns in order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot = match (row..m.rows).find(|&r| !m.get(r, col).is_zero()) {
                Some(p) => p,
                None => continue,
            };
            m.swap_rows(pivot, row);
            let inv = m.field.inv(m.get(row, col)).expect("pivot is nonzero");
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row {
                    let f = m.get(r, col);
                    m.axpy_row(r, row, f);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right kernel, one column matrix per basis
    /// vector, in reduced echelon form (identity pattern on the free
    /// coordinates, free coordinates ascending).
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for (free, _) in is_pivot.iter().enumerate().filter(|(_, &p)| !p) {
            let mut v = Matrix::zero(self.field, self.cols, 1);
            v.set(free, 0, FieldElement::ONE);
            for (row, &pc) in pivots.iter().enumerate() {
                v.set(pc, 0, r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Any solution of `self * x = rhs`, or `None` when inconsistent.
    /// Accepts a multi-column right-hand side and solves them jointly.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        self.check_same_field(rhs)?;
        if rhs.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve {}x{} against rhs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let aug = Matrix::hstack(self.field, self.rows, &[self.clone(), rhs.clone()])?;
        let (r, pivots) = aug.rref();
        let mut x = Matrix::zero(self.field, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            if pc >= self.cols {
                return Ok(None); // pivot in the augmented block: inconsistent
            }
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(row, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let id = Matrix::identity(self.field, self.rows);
        match self.solve(&id)? {
            Some(inv) if self.rank() == self.rows => Ok(inv),
            _ => Err(Error::Singular),
        }
    }

    /// Exact characteristic polynomial det(t*I - self): reduction to upper
    /// Hessenberg form by similarity, then the standard recurrence on
    /// leading principal minors. Signs are immaterial in characteristic 2.
    pub fn charpoly(&self) -> Result<Polynomial> {
        self.require_square()?;
        let n = self.rows;
        let f = self.field;
        if n == 0 {
            return Ok(Polynomial::one(f));
        }
        let mut h: Vec<Vec<FieldElement>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect();
        for j in 0..n.saturating_sub(2) {
            let pivot = match (j + 1..n).find(|&r| !h[r][j].is_zero()) {
                Some(p) => p,
                None => continue,
            };
            if pivot != j + 1 {
                h.swap(pivot, j + 1);
                for row in h.iter_mut() {
                    row.swap(pivot, j + 1);
                }
            }
            let pivinv = f.inv(h[j + 1][j]).expect("pivot is nonzero");
            for r in j + 2..n {
                if h[r][j].is_zero() {
                    continue;
                }
                let factor = f.mul(h[r][j], pivinv);
                for c in 0..n {
                    let v = f.add(h[r][c], f.mul(factor, h[j + 1][c]));
                    h[r][c] = v;
                }
                for row in h.iter_mut() {
                    let v = f.add(row[j + 1], f.mul(factor, row[r]));
                    row[j + 1] = v;
                }
            }
        }
        let mut minors = vec![Polynomial::one(f)];
        for i in 1..=n {
            let mut di = minors[i - 1].mul_linear(h[i - 1][i - 1]);
            let mut subdiag = FieldElement::ONE;
            for k in (1..i).rev() {
                subdiag = f.mul(subdiag, h[k][k - 1]);
                if subdiag.is_zero() {
                    break;
                }
                let coeff = f.mul(h[k - 1][i - 1], subdiag);
                if !coeff.is_zero() {
                    di = di.add(&minors[k - 1].scale(coeff));
                }
            }
            minors.push(di);
        }
        Ok(minors.pop().expect("n >= 1"))
    }

    /// True iff self^n = 0, by repeated squaring. Agrees with
    /// `charpoly() == t^n`.
    pub fn is_nilpotent(&self) -> Result<bool> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(true);
        }
        let mut a = self.clone();
        let mut pow = 1usize;
        while pow < n {
            if a.is_zero() {
                return Ok(true);
            }
            a = a.mul(&a)?;
            pow *= 2;
        }
        Ok(a.is_zero())
    }

    pub fn hstack(field: FieldSpec, rows: usize, mats: &[Matrix]) -> Result<Matrix> {
        let mut cols = 0;
        for m in mats {
            if m.field != field {
                return Err(Error::FieldMismatch);
            }
            if m.rows != rows {
                return Err(Error::ShapeMismatch("hstack row mismatch".into()));
            }
            cols += m.cols;
        }
        let mut out = Matrix::zero(field, rows, cols);
        let mut offset = 0;
        for m in mats {
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, offset + j, m.get(i, j));
                }
            }
            offset += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(field: FieldSpec, cols: usize, mats: &[Matrix]) -> Result<Matrix> {
        let mut rows = 0;
        for m in mats {
            if m.field != field {
                return Err(Error::FieldMismatch);
            }
            if m.cols != cols {
                return Err(Error::ShapeMismatch("vstack column mismatch".into()));
            }
            rows += m.rows;
        }
        let mut out = Matrix::zero(field, rows, cols);
        let mut offset = 0;
        for m in mats {
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(offset + i, j, m.get(i, j));
                }
            }
            offset += m.rows;
        }
        Ok(out)
    }

    /// Assembles a block matrix; block (i, j) must have as many rows as the
    /// first block of its row and as many columns as the first block of its
    /// column.
    pub fn from_blocks(field: FieldSpec, blocks: &[Vec<Matrix>]) -> Result<Matrix> {
        let row_strips: Vec<Matrix> = blocks
            .iter()
            .map(|strip| {
                let rows = strip.first().map_or(0, Matrix::rows);
                Matrix::hstack(field, rows, strip)
            })
            .collect::<Result<_>>()?;
        let cols = row_strips.first().map_or(0, Matrix::cols);
        Matrix::vstack(field, cols, &row_strips)
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.submatrix(0, self.rows, j, j + 1)
    }

    pub fn columns(&self) -> Vec<Matrix> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// The matrix flattened row-major into a single column of length
    /// rows*cols; used for treating matrices as vectors.
    pub fn vectorize(&self) -> Matrix {
        let mut v = Matrix::zero(self.field, self.rows * self.cols, 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                v.set(i * self.cols + j, 0, self.get(i, j));
            }
        }
        v
    }

    /// Row-major nested entry lists of decimal bit representations; the
    /// external text form of a matrix.
    pub fn to_entries(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).bits() as u64).collect())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Canonical basis of the column space: reduced echelon columns with
/// ascending leading-entry rows. Two column lists span the same subspace
/// iff this returns equal matrices.
pub fn column_span_basis(field: FieldSpec, n: usize, cols: &[Matrix]) -> Result<Matrix> {
    let stacked = Matrix::hstack(field, n, cols)?;
    let (r, pivots) = stacked.transpose().rref();
    Ok(r.submatrix(0, pivots.len(), 0, n).transpose())
}

/// Whether column vector `v` lies in the span of the columns of `basis`.
pub fn span_contains(basis: &Matrix, v: &Matrix) -> Result<bool> {
    Ok(basis.solve(v)?.is_some())
}

/// Polynomial over a field, little-endian coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec) -> Polynomial {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Polynomial {
        Polynomial { field, coeffs: vec![FieldElement::ONE] }
    }

    /// t^n.
    pub fn t_power(field: FieldSpec, n: usize) -> Polynomial {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[n] = FieldElement::ONE;
        Polynomial { field, coeffs }
    }

    pub fn from_coeffs(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Polynomial {
        while coeffs.last() == Some(&FieldElement::ZERO) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FieldElement::ONE)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![FieldElement::ZERO; len];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or_default();
            let b = other.coeffs.get(i).copied().unwrap_or_default();
            *c = self.field.add(a, b);
        }
        Polynomial::from_coeffs(self.field, coeffs)
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        Polynomial::from_coeffs(
            self.field,
            self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        )
    }

    /// self * (t + c).
    pub fn mul_linear(&self, c: FieldElement) -> Polynomial {
        let mut coeffs = vec![FieldElement::ZERO; self.coeffs.len() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = self.field.add(coeffs[i + 1], a);
            coeffs[i] = self.field.add(coeffs[i], self.field.mul(a, c));
        }
        Polynomial::from_coeffs(self.field, coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.bits()) {
                (0, b) => write!(f, "{b}")?,
                (1, 1) => write!(f, "t")?,
                (1, b) => write!(f, "{b}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                (_, b) => write!(f, "{b}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gf2() -> FieldSpec {
        FieldSpec::gf2()
    }

    fn gf4() -> FieldSpec {
        FieldSpec::new(2, 7).unwrap()
    }

    fn m(field: FieldSpec, entries: &[&[u64]]) -> Matrix {
        let rows: Vec<Vec<u64>> = entries.iter().map(|r| r.to_vec()).collect();
        Matrix::from_rows(field, &rows).unwrap()
    }

    fn h2(field: FieldSpec) -> Matrix {
        m(field, &[&[0, 1], &[1, 0]])
    }

    fn random_matrix(field: FieldSpec, rows: usize, cols: usize, rng: &mut StdRng) -> Matrix {
        Matrix::from_fn(field, rows, cols, |_, _| {
            FieldElement(rng.gen_range(0..field.size()) as u16)
        })
    }

    fn random_invertible(field: FieldSpec, n: usize, rng: &mut StdRng) -> Matrix {
        loop {
            let p = random_matrix(field, n, n, rng);
            if p.rank() == n {
                return p;
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        let j = m(gf2(), &[&[0, 1], &[0, 0]]);
        assert!(j.mul(&j).unwrap().is_zero());
        let a = m(gf2(), &[&[1, 0], &[1, 1]]);
        assert!(a.add(&a).unwrap().is_zero());
        assert_eq!(h2(gf2()).transpose(), h2(gf2()));
    }

    #[test]
    fn shape_and_field_errors() {
        let a = Matrix::zero(gf2(), 2, 3);
        let b = Matrix::zero(gf2(), 2, 2);
        assert!(matches!(a.add(&b), Err(Error::ShapeMismatch(_))));
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch(_))));
        let c = Matrix::zero(gf4(), 2, 3);
        assert!(matches!(a.add(&c), Err(Error::FieldMismatch)));
        assert!(matches!(a.trace(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn rank_kernel_inverse_examples() {
        assert_eq!(Matrix::identity(gf2(), 3).rank(), 3);
        let k = m(gf2(), &[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_entries(), vec![vec![1], vec![1]]);
        // Oracle: H_2 * H_2 = I_2, so H_2 is its own inverse.
        let h = h2(gf2());
        assert_eq!(h.mul(&h).unwrap(), Matrix::identity(gf2(), 2));
        assert_eq!(h.inverse().unwrap(), h);
        let sing = m(gf2(), &[&[1, 1], &[1, 1]]);
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn solve_examples() {
        let a = m(gf2(), &[&[1, 1, 0], &[0, 1, 1]]);
        let y = m(gf2(), &[&[1], &[0]]);
        let x = a.solve(&y).unwrap().unwrap();
        assert_eq!(a.mul(&x).unwrap(), y);
        // Inconsistent system.
        let b = m(gf2(), &[&[1, 1], &[1, 1]]);
        let z = m(gf2(), &[&[1], &[0]]);
        assert!(b.solve(&z).unwrap().is_none());
    }

    #[test]
    fn charpoly_examples() {
        let j = m(gf2(), &[&[0, 1], &[0, 0]]);
        assert_eq!(j.charpoly().unwrap(), Polynomial::t_power(gf2(), 2));
        let i2 = Matrix::identity(gf2(), 2);
        // (t+1)^2 = t^2 + 1 in characteristic 2
        assert_eq!(
            i2.charpoly().unwrap(),
            Polynomial::from_coeffs(gf2(), vec![FieldElement(1), FieldElement(0), FieldElement(1)])
        );
        // Oracle: 2x2 determinant expansion of t*I - H_2 gives t^2 - 1 = t^2 + 1.
        assert_eq!(
            h2(gf2()).charpoly().unwrap(),
            Polynomial::from_coeffs(gf2(), vec![FieldElement(1), FieldElement(0), FieldElement(1)])
        );
    }

    #[test]
    fn nilpotency_examples() {
        let strict = m(gf2(), &[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        assert!(strict.is_nilpotent().unwrap());
        assert!(!Matrix::identity(gf2(), 1).is_nilpotent().unwrap());
        // Oracle: direct cubing.
        let mx = m(gf2(), &[&[0, 0, 1], &[1, 0, 0], &[0, 0, 0]]);
        let cube = mx.mul(&mx).unwrap().mul(&mx).unwrap();
        assert!(cube.is_zero());
        assert!(mx.is_nilpotent().unwrap());
    }

    #[test]
    fn symmetry_predicates() {
        assert!(h2(gf2()).is_symmetric().unwrap());
        assert!(h2(gf2()).is_alternating().unwrap());
        let i2 = Matrix::identity(gf2(), 2);
        assert!(i2.is_symmetric().unwrap());
        assert!(!i2.is_alternating().unwrap());
        assert!(!m(gf2(), &[&[0, 1], &[0, 0]]).is_symmetric().unwrap());
    }

    #[test]
    fn packed_mul_matches_schoolbook() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let r = rng.gen_range(1..8);
            let k = rng.gen_range(1..8);
            let c = rng.gen_range(1..8);
            let a = random_matrix(gf2(), r, k, &mut rng);
            let b = random_matrix(gf2(), k, c, &mut rng);
            let fast = a.mul(&b).unwrap();
            let slow = Matrix::from_fn(gf2(), r, c, |i, j| {
                let mut acc = FieldElement::ZERO;
                for t in 0..k {
                    acc = gf2().add(acc, gf2().mul(a.get(i, t), b.get(t, j)));
                }
                acc
            });
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn nilpotent_iff_charpoly_is_t_n() {
        let mut rng = StdRng::seed_from_u64(11);
        for field in [gf2(), gf4()] {
            for _ in 0..200 {
                let n = rng.gen_range(1..=6);
                let a = random_matrix(field, n, n, &mut rng);
                let by_power = a.is_nilpotent().unwrap();
                let by_charpoly = a.charpoly().unwrap() == Polynomial::t_power(field, n);
                assert_eq!(by_power, by_charpoly, "disagreement on\n{a}");
            }
        }
    }

    #[test]
    fn rank_of_transpose() {
        let mut rng = StdRng::seed_from_u64(13);
        for field in [gf2(), gf4()] {
            for _ in 0..100 {
                let r = rng.gen_range(0..6);
                let c = rng.gen_range(0..6);
                let a = random_matrix(field, r, c, &mut rng);
                assert_eq!(a.rank(), a.transpose().rank());
            }
        }
    }

    #[test]
    fn inverse_round_trip_and_charpoly_similarity() {
        let mut rng = StdRng::seed_from_u64(17);
        for field in [gf2(), gf4()] {
            for _ in 0..50 {
                let n = rng.gen_range(1..=5);
                let a = random_matrix(field, n, n, &mut rng);
                let p = random_invertible(field, n, &mut rng);
                let pinv = p.inverse().unwrap();
                assert_eq!(pinv.mul(&p).unwrap(), Matrix::identity(field, n));
                let conj = pinv.mul(&a).unwrap().mul(&p).unwrap();
                assert_eq!(conj.charpoly().unwrap(), a.charpoly().unwrap());
            }
        }
    }

    #[test]
    fn kernel_dimension_complements_rank() {
        let mut rng = StdRng::seed_from_u64(19);
        for field in [gf2(), gf4()] {
            for _ in 0..100 {
                let r = rng.gen_range(0..6);
                let c = rng.gen_range(0..6);
                let a = random_matrix(field, r, c, &mut rng);
                let kernel = a.kernel_basis();
                assert_eq!(a.rank() + kernel.len(), c);
                for v in &kernel {
                    assert!(a.mul(v).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn charpoly_is_monic_of_degree_n() {
        let mut rng = StdRng::seed_from_u64(23);
        for field in [gf2(), gf4()] {
            for _ in 0..50 {
                let n = rng.gen_range(1..=6);
                let a = random_matrix(field, n, n, &mut rng);
                let p = a.charpoly().unwrap();
                assert_eq!(p.degree(), Some(n));
                assert!(p.is_monic());
            }
        }
    }

    #[test]
    fn polynomial_display() {
        let p = Polynomial::from_coeffs(gf4(), vec![FieldElement(1), FieldElement(2), FieldElement(1)]);
        assert_eq!(p.to_string(), "t^2 + 2*t + 1");
        assert_eq!(Polynomial::zero(gf2()).to_string(), "0");
    }
}
