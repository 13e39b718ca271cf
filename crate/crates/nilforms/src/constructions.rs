//! Builders for the extremal nilpotent matrix spaces attached to a
//! non-degenerate symmetric bilinear form.
//!
//! Working in permuted normal coordinates where the Gram is
//!
//! ```text
//!     [ 0    0    I  ]            nu = q + m,  Delta = Diag(a_1..a_p),
//! S = [ 0  Delta  0  ]            Theta = Diag(a_{p+1}..a_{p+q}, 0..0)
//!     [ I    0  Theta ]
//! ```
//!
//! the S-symmetric matrices leaving the first block invariant are exactly
//!
//! ```text
//!     [ A  (Delta E)^T  Theta A^T + J ]
//! M = [ 0       0             E      ]
//!     [ 0       0            A^T     ]
//! ```
//!
//! with A strictly upper triangular, E arbitrary, and J symmetric
//! (alternating J gives the S-alternating ones). All such M are nilpotent,
//! which yields spaces of dimension nu(n - nu) and nu(n - nu - 1). For odd
//! n there is a larger b-alternating space: bordering an invertible
//! alternating block A by [[0, X^T A^T], [X, M]] preserves nilpotency
//! exactly when M is A-alternating, and stacking that trick inside the
//! block shape above gives dimension nu(n - nu) - q.

use crate::field::{FieldElement, FieldSpec};
use crate::form::{BilinearForm, NormalBasisData};
use crate::matrix::Matrix;
use crate::{Error, Result};

/// Which compatibility a space's elements have with the form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    /// S * M symmetric.
    BSymmetric,
    /// S * M alternating.
    BAlternating,
}

impl SpaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::BSymmetric => "sym",
            SpaceKind::BAlternating => "alt",
        }
    }

    pub fn parse(text: &str) -> Result<SpaceKind> {
        match text {
            "sym" => Ok(SpaceKind::BSymmetric),
            "alt" => Ok(SpaceKind::BAlternating),
            other => Err(Error::Parse(format!("unknown kind {other:?}, expected sym|alt"))),
        }
    }

    /// The predicate a member matrix must satisfy.
    pub fn matches(self, form: &BilinearForm, m: &Matrix) -> Result<bool> {
        let sm = form.gram().mul(m)?;
        match self {
            SpaceKind::BSymmetric => sm.is_symmetric(),
            SpaceKind::BAlternating => sm.is_alternating(),
        }
    }
}

/// Whether constructed bases are reported in the caller's original
/// coordinates or left in the construction's block coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Coords {
    #[default]
    Original,
    Normal,
}

/// A linear space of matrices over a fixed form, tagged b-symmetric or
/// b-alternating. Construction re-validates every invariant: basis elements
/// are square of matching dimension, linearly independent, and satisfy the
/// kind predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSpace {
    form: BilinearForm,
    kind: SpaceKind,
    basis: Vec<Matrix>,
}

impl MatrixSpace {
    pub fn new(form: BilinearForm, kind: SpaceKind, basis: Vec<Matrix>) -> Result<MatrixSpace> {
        let n = form.n();
        for (i, m) in basis.iter().enumerate() {
            if m.field() != form.field() {
                return Err(Error::FieldMismatch);
            }
            if m.rows() != n || m.cols() != n {
                return Err(Error::ShapeMismatch(format!(
                    "basis element {i} is {}x{}, ambient dimension is {n}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !kind.matches(&form, m)? {
                return Err(Error::BadInput(format!(
                    "basis element {i} is not b-{}",
                    match kind {
                        SpaceKind::BSymmetric => "symmetric",
                        SpaceKind::BAlternating => "alternating",
                    }
                )));
            }
        }
        let space = MatrixSpace { form, kind, basis };
        if space.vectorized_basis()?.rank() != space.dimension() {
            return Err(Error::BadInput("basis matrices are linearly dependent".into()));
        }
        Ok(space)
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn field(&self) -> FieldSpec {
        self.form.field()
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn gram(&self) -> &Matrix {
        self.form.gram()
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis matrices flattened into the columns of an (n^2 x dim) matrix.
    pub fn vectorized_basis(&self) -> Result<Matrix> {
        let cols: Vec<Matrix> = self.basis.iter().map(Matrix::vectorize).collect();
        Matrix::hstack(self.field(), self.n() * self.n(), &cols)
    }

    /// The combination sum_i coeffs[i] * basis[i].
    pub fn element(&self, coeffs: &[FieldElement]) -> Result<Matrix> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for dimension {}",
                coeffs.len(),
                self.basis.len()
            )));
        }
        let mut acc = Matrix::zero(self.field(), self.n(), self.n());
        for (c, m) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc.add_in_place(&m.scale(*c))?;
            }
        }
        Ok(acc)
    }
}

/// The bordered matrix [[0, X^T A^T], [X, M]] of the extension trick.
/// Requires A alternating and invertible and M A-symmetric; when M is
/// A-alternating and nilpotent the result is (I_1 + A)-alternating and
/// nilpotent for every X.
pub fn extend_alternating(a: &Matrix, m: &Matrix, x: &Matrix) -> Result<Matrix> {
    let field = a.field();
    let n = a.rows();
    if !a.is_alternating()? {
        return Err(Error::BadInput("bordered block must be alternating".into()));
    }
    if a.rank() != n {
        return Err(Error::BadInput("bordered block must be invertible".into()));
    }
    if m.field() != field || x.field() != field {
        return Err(Error::FieldMismatch);
    }
    if m.rows() != n || m.cols() != n || x.rows() != n || x.cols() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "expected {n}x{n} matrix and {n}x1 column, got {}x{} and {}x{}",
            m.rows(),
            m.cols(),
            x.rows(),
            x.cols()
        )));
    }
    if !a.mul(m)?.is_symmetric()? {
        return Err(Error::BadInput("inner matrix must be A-symmetric".into()));
    }
    let top_right = x.transpose().mul(&a.transpose())?;
    Matrix::from_blocks(
        field,
        &[
            vec![Matrix::zero(field, 1, 1), top_right],
            vec![x.clone(), m.clone()],
        ],
    )
}

/// Shared skeleton of the two block constructions: assembles generators
/// [[A, (Delta E)^T, Theta A^T + J], [0, N, E], [0, 0, A^T]] over the Gram
/// [[0,0,I],[0,Delta,0],[I,0,Theta]], in the fixed order A-part, N-part,
/// E-part, J-part.
struct BlockPlan {
    field: FieldSpec,
    outer: usize,
    delta: Matrix,
    theta: Matrix,
}

impl BlockPlan {
    fn gram(&self) -> Result<Matrix> {
        let f = self.field;
        let (v, p) = (self.outer, self.delta.rows());
        Matrix::from_blocks(
            f,
            &[
                vec![Matrix::zero(f, v, v), Matrix::zero(f, v, p), Matrix::identity(f, v)],
                vec![Matrix::zero(f, p, v), self.delta.clone(), Matrix::zero(f, p, v)],
                vec![Matrix::identity(f, v), Matrix::zero(f, v, p), self.theta.clone()],
            ],
        )
    }

    fn assemble(&self, a: &Matrix, inner: &Matrix, e: &Matrix, j: &Matrix) -> Result<Matrix> {
        let f = self.field;
        let (v, p) = (self.outer, self.delta.rows());
        let top_right = self.theta.mul(&a.transpose())?.add(j)?;
        let top_mid = self.delta.mul(e)?.transpose();
        Matrix::from_blocks(
            f,
            &[
                vec![a.clone(), top_mid, top_right],
                vec![Matrix::zero(f, p, v), inner.clone(), e.clone()],
                vec![Matrix::zero(f, v, v), Matrix::zero(f, v, p), a.transpose()],
            ],
        )
    }

    /// All generators for the given inner basis and J family.
    fn generators(&self, inner_basis: &[Matrix], alternating_j: bool) -> Result<Vec<Matrix>> {
        let f = self.field;
        let (v, p) = (self.outer, self.delta.rows());
        let a0 = Matrix::zero(f, v, v);
        let n0 = Matrix::zero(f, p, p);
        let e0 = Matrix::zero(f, p, v);
        let j0 = Matrix::zero(f, v, v);
        let mut basis = Vec::new();
        for i in 0..v {
            for j in i + 1..v {
                let a = Matrix::unit_matrix(f, v, v, i, j);
                basis.push(self.assemble(&a, &n0, &e0, &j0)?);
            }
        }
        for inner in inner_basis {
            basis.push(self.assemble(&a0, inner, &e0, &j0)?);
        }
        for k in 0..p {
            for l in 0..v {
                let e = Matrix::unit_matrix(f, p, v, k, l);
                basis.push(self.assemble(&a0, &n0, &e, &j0)?);
            }
        }
        for i in 0..v {
            for j in i..v {
                if i == j {
                    if alternating_j {
                        continue;
                    }
                    basis.push(self.assemble(&a0, &n0, &e0, &Matrix::unit_matrix(f, v, v, i, i))?);
                } else {
                    let sym = Matrix::unit_matrix(f, v, v, i, j)
                        .add(&Matrix::unit_matrix(f, v, v, j, i))?;
                    basis.push(self.assemble(&a0, &n0, &e0, &sym)?);
                }
            }
        }
        Ok(basis)
    }
}

fn validated_space(
    gram: Matrix,
    kind: SpaceKind,
    basis: Vec<Matrix>,
    expected_dim: usize,
) -> Result<MatrixSpace> {
    for (i, m) in basis.iter().enumerate() {
        if !m.is_nilpotent()? {
            return Err(Error::Internal(format!("constructed basis element {i} is not nilpotent")));
        }
    }
    let space = MatrixSpace::new(BilinearForm::new(gram)?, kind, basis)?;
    if space.dimension() != expected_dim {
        return Err(Error::Internal(format!(
            "constructed dimension {} does not match the formula value {expected_dim}",
            space.dimension()
        )));
    }
    Ok(space)
}

fn permutation_matrix(field: FieldSpec, order: &[usize]) -> Matrix {
    let n = order.len();
    let mut p = Matrix::zero(field, n, n);
    for (j, &i) in order.iter().enumerate() {
        p.set(i, j, FieldElement::ONE);
    }
    p
}

/// Validates the normal data against the Gram and returns the combined
/// change of basis R = P * Pi for the block permutation `order`, together
/// with the permuted Gram Pi^T N Pi.
fn permuted_setup(
    nb: &NormalBasisData,
    gram_original: &Matrix,
    order: &[usize],
) -> Result<(BilinearForm, Matrix, Matrix)> {
    let form = BilinearForm::new(gram_original.clone())?;
    if !form.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    nb.verify_against(&form).map_err(|e| match e {
        Error::Internal(_) => {
            Error::BadInput("normal data does not match the given gram".into())
        }
        other => other,
    })?;
    let pi = permutation_matrix(form.field(), order);
    let r = nb.basis_change().mul(&pi)?;
    let normal = nb.normal_gram(form.field());
    let permuted_gram = pi.transpose().mul(&normal)?.mul(&pi)?;
    Ok((form, r, permuted_gram))
}

fn into_coords(
    space_blocks: MatrixSpace,
    form: &BilinearForm,
    r: &Matrix,
    coords: Coords,
) -> Result<MatrixSpace> {
    match coords {
        Coords::Normal => Ok(space_blocks),
        Coords::Original => {
            let moved = change_basis(&space_blocks, &r.inverse()?)?;
            if moved.gram() != form.gram() {
                return Err(Error::Internal("change of basis did not restore the gram".into()));
            }
            Ok(moved)
        }
    }
}

/// The block-triangular space over a non-degenerate form described by its
/// normal data: dimension nu(n - nu) for the b-symmetric kind,
/// nu(n - nu - 1) for the b-alternating kind. Every element is strictly
/// block triangular, hence nilpotent. With `Coords::Original`, the basis is
/// conjugated back into the caller's coordinates.
pub fn construct_general(
    nb: &NormalBasisData,
    gram_original: &Matrix,
    kind: SpaceKind,
    coords: Coords,
) -> Result<MatrixSpace> {
    let field = gram_original.field();
    let (p, q, m) = (nb.p_count(), nb.q_count(), nb.m_count());
    let (n, nu) = (nb.n(), nb.nu());
    // Permuted basis: q-block firsts, hyperbolic firsts, anisotropic,
    // q-block seconds, hyperbolic seconds.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    order.extend(p..p + q);
    order.extend(p + 2 * q..p + 2 * q + m);
    order.extend(0..p);
    order.extend(p + q..p + 2 * q);
    order.extend(p + 2 * q + m..n);
    let (form, r, gram_c) = permuted_setup(nb, gram_original, &order)?;

    let delta = Matrix::from_fn(field, p, p, |i, j| {
        if i == j { nb.diag_values()[i] } else { FieldElement::ZERO }
    });
    let theta = Matrix::from_fn(field, nu, nu, |i, j| {
        if i == j && i < q { nb.diag_values()[p + i] } else { FieldElement::ZERO }
    });
    let plan = BlockPlan { field, outer: nu, delta, theta };
    if plan.gram()? != gram_c {
        return Err(Error::Internal("permuted gram does not have the block shape".into()));
    }
    let basis = plan.generators(&[], kind == SpaceKind::BAlternating)?;
    let expected = match kind {
        SpaceKind::BSymmetric => nu * (n - nu),
        SpaceKind::BAlternating => nu * (n - nu) - nu,
    };
    let space = validated_space(gram_c, kind, basis, expected)?;
    into_coords(space, &form, &r, coords)
}

/// The bordered space over I_1 + H_{2m}: the alternating block space of
/// H_{2m} extended by all borders [[0, (AX)^T], [X, M]]. Dimension
/// m(m + 1), every element nilpotent, none of it flag-certifiable for
/// m >= 1.
pub fn construct_special_odd(m_count: usize, field: FieldSpec) -> MatrixSpace {
    let hyperbolic = BilinearForm::hyperbolic(field, m_count);
    let inner_nb = NormalBasisData::new(
        0,
        0,
        m_count,
        Vec::new(),
        Matrix::identity(field, 2 * m_count),
    )
    .expect("hyperbolic normal data is consistent");
    let inner = construct_general(
        &inner_nb,
        hyperbolic.gram(),
        SpaceKind::BAlternating,
        Coords::Original,
    )
    .expect("hyperbolic gram is non-degenerate");

    let a = hyperbolic.gram();
    let mut basis = Vec::new();
    let zero_x = Matrix::zero(field, 2 * m_count, 1);
    for m in inner.basis() {
        basis.push(extend_alternating(a, m, &zero_x).expect("inner elements are A-symmetric"));
    }
    let zero_m = Matrix::zero(field, 2 * m_count, 2 * m_count);
    for j in 0..2 * m_count {
        let x = Matrix::unit_column(field, 2 * m_count, j);
        basis.push(extend_alternating(a, &zero_m, &x).expect("zero is A-symmetric"));
    }

    let gram = orthogonal_one_plus(a);
    validated_space(gram, SpaceKind::BAlternating, basis, m_count * (m_count + 1))
        .expect("bordered construction satisfies its postconditions")
}

fn orthogonal_one_plus(a: &Matrix) -> Matrix {
    let field = a.field();
    let n = a.rows();
    let mut gram = Matrix::zero(field, n + 1, n + 1);
    gram.set(0, 0, FieldElement::ONE);
    for i in 0..n {
        for j in 0..n {
            gram.set(1 + i, 1 + j, a.get(i, j));
        }
    }
    gram
}

/// The odd-dimensional b-alternating space of dimension nu(n - nu) - q,
/// for normal data with p = 1 (that is, n = 2 nu + 1): the block shape of
/// `construct_general` with the middle zero block replaced by the bordered
/// space of the Delta block. A scalar a_1 != 1 is absorbed by rescaling the
/// bordered basis, which leaves the alternating predicate intact because
/// scaling the form does not change it.
pub fn construct_general_odd(
    nb: &NormalBasisData,
    gram_original: &Matrix,
    coords: Coords,
) -> Result<MatrixSpace> {
    if nb.p_count() != 1 {
        return Err(Error::WrongShape(format!(
            "construction requires p = 1, normal data has p = {}",
            nb.p_count()
        )));
    }
    let field = gram_original.field();
    let (q, m) = (nb.q_count(), nb.m_count());
    let (n, nu) = (nb.n(), nb.nu());
    let alpha = nb.diag_values()[0];
    // Permuted basis: q-block firsts, anisotropic, hyperbolic (both
    // halves), q-block seconds. The middle block carries Diag(a_1) + H_2m.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    order.extend(1..1 + q);
    order.push(0);
    order.extend(1 + 2 * q..n);
    order.extend(1 + q..1 + 2 * q);
    let (form, r, gram_c) = permuted_setup(nb, gram_original, &order)?;

    let special = construct_special_odd(m, field);
    let inner_basis: Vec<Matrix> = if alpha == FieldElement::ONE {
        special.basis().to_vec()
    } else {
        // Basis rescaling (1, .., 1, alpha, .., alpha) turns the bordered
        // space for I_1 + H_2m into one for Diag(alpha) + H_2m.
        let scale = Matrix::from_fn(field, 2 * m + 1, 2 * m + 1, |i, j| {
            if i != j {
                FieldElement::ZERO
            } else if i > m {
                alpha
            } else {
                FieldElement::ONE
            }
        });
        let scale_inv = scale.inverse()?;
        special
            .basis()
            .iter()
            .map(|b| scale.mul(b)?.mul(&scale_inv))
            .collect::<Result<_>>()?
    };

    let delta = {
        let mut d = orthogonal_one_plus(BilinearForm::hyperbolic(field, m).gram());
        d.set(0, 0, alpha);
        d
    };
    let theta = Matrix::from_fn(field, q, q, |i, j| {
        if i == j { nb.diag_values()[1 + i] } else { FieldElement::ZERO }
    });
    let plan = BlockPlan { field, outer: q, delta, theta };
    if plan.gram()? != gram_c {
        return Err(Error::Internal("permuted gram does not have the block shape".into()));
    }
    let basis = plan.generators(&inner_basis, true)?;
    let expected = q * (q.saturating_sub(1)) + q * (n - 2 * q) + m * (m + 1);
    debug_assert_eq!(expected, nu * (n - nu) - q);
    let space = validated_space(gram_c, SpaceKind::BAlternating, basis, expected)?;
    into_coords(space, &form, &r, coords)
}

/// Conjugates a space into new coordinates: gram becomes P^T S P and each
/// basis matrix becomes P^-1 M P. Kind, dimension, and nilpotency of every
/// element are preserved.
pub fn change_basis(space: &MatrixSpace, p: &Matrix) -> Result<MatrixSpace> {
    if p.field() != space.field() {
        return Err(Error::FieldMismatch);
    }
    if p.rows() != space.n() || p.cols() != space.n() {
        return Err(Error::ShapeMismatch(format!(
            "change of basis must be {0}x{0}",
            space.n()
        )));
    }
    let p_inv = p.inverse()?;
    let gram = p.transpose().mul(space.gram())?.mul(p)?;
    let basis = space
        .basis()
        .iter()
        .map(|m| p_inv.mul(m)?.mul(p))
        .collect::<Result<Vec<_>>>()?;
    MatrixSpace::new(BilinearForm::new(gram)?, space.kind(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::same_span;
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

    fn hyperbolic_nb(field: FieldSpec, m_count: usize) -> NormalBasisData {
        NormalBasisData::new(0, 0, m_count, vec![], Matrix::identity(field, 2 * m_count)).unwrap()
    }

    fn all_combinations(space: &MatrixSpace) -> Vec<Matrix> {
        let q = space.field().size();
        let d = space.dimension() as u32;
        (1..q.pow(d))
            .map(|mut idx| {
                let coeffs: Vec<FieldElement> = (0..d)
                    .map(|_| {
                        let c = FieldElement((idx % q) as u16);
                        idx /= q;
                        c
                    })
                    .collect();
                space.element(&coeffs).unwrap()
            })
            .collect()
    }

    #[test]
    fn general_construction_dimensions() {
        let h4 = BilinearForm::hyperbolic(gf2(), 2);
        let nb = hyperbolic_nb(gf2(), 2);
        let sym =
            construct_general(&nb, h4.gram(), SpaceKind::BSymmetric, Coords::Original).unwrap();
        assert_eq!(sym.dimension(), 4);
        let alt =
            construct_general(&nb, h4.gram(), SpaceKind::BAlternating, Coords::Original).unwrap();
        assert_eq!(alt.dimension(), 2);

        // Non-isotropic form: nu = 0 gives the zero space.
        let aniso = BilinearForm::identity(gf2(), 1);
        let nb = aniso.normal_basis().unwrap();
        let sym =
            construct_general(&nb, aniso.gram(), SpaceKind::BSymmetric, Coords::Original).unwrap();
        assert_eq!(sym.dimension(), 0);
    }

    #[test]
    fn general_construction_in_original_coordinates() {
        let mut rng = StdRng::seed_from_u64(67);
        for field in [gf2(), gf4()] {
            for n in 1..=5usize {
                for _ in 0..5 {
                    let form = random_nondegenerate(field, n, &mut rng);
                    let nb = form.normal_basis().unwrap();
                    for kind in [SpaceKind::BSymmetric, SpaceKind::BAlternating] {
                        let space =
                            construct_general(&nb, form.gram(), kind, Coords::Original).unwrap();
                        assert_eq!(space.gram(), form.gram());
                        let nu = nb.nu();
                        let expected = match kind {
                            SpaceKind::BSymmetric => nu * (n - nu),
                            SpaceKind::BAlternating => nu * (n - nu) - nu,
                        };
                        assert_eq!(space.dimension(), expected);
                        for b in space.basis() {
                            assert!(b.is_nilpotent().unwrap());
                        }
                    }
                }
            }
        }
    }

    fn random_nondegenerate(field: FieldSpec, n: usize, rng: &mut StdRng) -> BilinearForm {
        loop {
            let mut g = Matrix::zero(field, n, n);
            for i in 0..n {
                for j in i..n {
                    let e = FieldElement(rng.gen_range(0..field.size()) as u16);
                    g.set(i, j, e);
                    g.set(j, i, e);
                }
            }
            if g.rank() == n {
                return BilinearForm::new(g).unwrap();
            }
        }
    }

    #[test]
    fn extend_alternating_examples() {
        let h2 = BilinearForm::hyperbolic(gf2(), 1);
        let zero = Matrix::zero(gf2(), 2, 2);
        let e1 = Matrix::unit_column(gf2(), 2, 0);
        let ext = extend_alternating(h2.gram(), &zero, &e1).unwrap();
        assert_eq!(ext, m(gf2(), &[&[0, 0, 1], &[1, 0, 0], &[0, 0, 0]]));
        assert!(ext.is_nilpotent().unwrap());

        // X = 0 borders block-diagonally: nilpotent iff M is.
        let x0 = Matrix::zero(gf2(), 2, 1);
        let nilp = m(gf2(), &[&[0, 1], &[0, 0]]);
        assert!(extend_alternating(h2.gram(), &nilp, &x0).unwrap().is_nilpotent().unwrap());
        let id = Matrix::identity(gf2(), 2);
        assert!(!extend_alternating(h2.gram(), &id, &x0).unwrap().is_nilpotent().unwrap());

        // Bad inputs are rejected.
        let not_alt = Matrix::identity(gf2(), 2);
        assert!(matches!(
            extend_alternating(&not_alt, &zero, &e1),
            Err(Error::BadInput(_))
        ));
        let not_sym = m(gf2(), &[&[1, 0], &[0, 0]]);
        assert!(matches!(
            extend_alternating(h2.gram(), &not_sym, &e1),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn extension_lemma_equivalence_at_n2() {
        // Over H_2, some A-symmetric nilpotent M that is not A-alternating
        // has a border X making M_X non-nilpotent, while A-alternating
        // nilpotent M keeps every border nilpotent.
        let h2 = BilinearForm::hyperbolic(gf2(), 1);
        let a = h2.gram();
        let mut saw_non_alternating_witness = false;
        for bits in 0..16u64 {
            let cand = m(
                gf2(),
                &[&[bits & 1, (bits >> 1) & 1], &[(bits >> 2) & 1, (bits >> 3) & 1]],
            );
            let asym = a.mul(&cand).unwrap().is_symmetric().unwrap();
            if !asym || !cand.is_nilpotent().unwrap() {
                continue;
            }
            let aalt = a.mul(&cand).unwrap().is_alternating().unwrap();
            let mut all_nilpotent = true;
            for xbits in 0..4u64 {
                let x = m(gf2(), &[&[xbits & 1], &[(xbits >> 1) & 1]]);
                let ext = extend_alternating(a, &cand, &x).unwrap();
                all_nilpotent &= ext.is_nilpotent().unwrap();
            }
            assert_eq!(aalt, all_nilpotent, "extension lemma at {cand}");
            if !aalt {
                saw_non_alternating_witness = true;
            }
        }
        assert!(saw_non_alternating_witness, "enumeration covered the interesting case");
    }

    #[test]
    fn special_odd_dimensions() {
        assert_eq!(construct_special_odd(0, gf2()).dimension(), 0);
        let v1 = construct_special_odd(1, gf2());
        assert_eq!(v1.dimension(), 2);
        assert_eq!(v1.n(), 3);
        let v2 = construct_special_odd(2, gf2());
        assert_eq!(v2.dimension(), 6);
        assert_eq!(v2.n(), 5);
    }

    #[test]
    fn special_odd_combinations_all_nilpotent() {
        for field in [gf2(), gf4()] {
            for m_count in 0..=2usize {
                let space = construct_special_odd(m_count, field);
                if space.field().size().pow(space.dimension() as u32) > 10_000_000 {
                    continue;
                }
                for combo in all_combinations(&space) {
                    assert!(combo.is_nilpotent().unwrap());
                }
            }
        }
    }

    #[test]
    fn general_odd_construction() {
        // q = 0, m = 1: coincides with the bordered space over the same gram.
        let special = construct_special_odd(1, gf2());
        let nb = NormalBasisData::new(
            1,
            0,
            1,
            vec![FieldElement::ONE],
            Matrix::identity(gf2(), 3),
        )
        .unwrap();
        let general = construct_general_odd(&nb, special.gram(), Coords::Original).unwrap();
        assert_eq!(general.dimension(), 2);
        assert!(same_span(
            gf2(),
            9,
            &general.basis().iter().map(Matrix::vectorize).collect::<Vec<_>>(),
            &special.basis().iter().map(Matrix::vectorize).collect::<Vec<_>>()
        )
        .unwrap());

        // (p, q, m) = (1, 1, 1): dimension 5 over the shape gram itself.
        let nb = NormalBasisData::new(
            1,
            1,
            1,
            vec![FieldElement::ONE; 2],
            Matrix::identity(gf2(), 5),
        )
        .unwrap();
        let gram = nb.normal_gram(gf2());
        let space = construct_general_odd(&nb, &gram, Coords::Original).unwrap();
        assert_eq!(space.dimension(), 5);
        for combo in all_combinations(&space) {
            assert!(combo.is_nilpotent().unwrap());
        }

        // n = 1 gives the zero space.
        let nb =
            NormalBasisData::new(1, 0, 0, vec![FieldElement::ONE], Matrix::identity(gf2(), 1))
                .unwrap();
        let space = construct_general_odd(&nb, &nb.normal_gram(gf2()), Coords::Original).unwrap();
        assert_eq!(space.dimension(), 0);

        // p != 1 is rejected.
        let nb = hyperbolic_nb(gf2(), 1);
        assert!(matches!(
            construct_general_odd(&nb, BilinearForm::hyperbolic(gf2(), 1).gram(), Coords::Original),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn general_odd_with_nontrivial_scalar_over_gf4() {
        let omega = FieldElement(2);
        let nb =
            NormalBasisData::new(1, 0, 1, vec![omega], Matrix::identity(gf4(), 3)).unwrap();
        let gram = nb.normal_gram(gf4());
        assert_eq!(gram.get(0, 0), omega);
        let space = construct_general_odd(&nb, &gram, Coords::Original).unwrap();
        assert_eq!(space.dimension(), 2);
        for combo in all_combinations(&space) {
            assert!(combo.is_nilpotent().unwrap());
        }
    }

    #[test]
    fn change_basis_round_trip() {
        let mut rng = StdRng::seed_from_u64(71);
        let h4 = BilinearForm::hyperbolic(gf2(), 2);
        let nb = hyperbolic_nb(gf2(), 2);
        let space =
            construct_general(&nb, h4.gram(), SpaceKind::BSymmetric, Coords::Original).unwrap();

        let id = Matrix::identity(gf2(), 4);
        let same = change_basis(&space, &id).unwrap();
        assert_eq!(same.basis(), space.basis());

        for _ in 0..10 {
            let p = loop {
                let cand = Matrix::from_fn(gf2(), 4, 4, |_, _| {
                    FieldElement(rng.gen_range(0..2) as u16)
                });
                if cand.rank() == 4 {
                    break cand;
                }
            };
            let moved = change_basis(&space, &p).unwrap();
            assert_eq!(moved.dimension(), space.dimension());
            for b in moved.basis() {
                assert!(b.is_nilpotent().unwrap());
            }
            let back = change_basis(&moved, &p.inverse().unwrap()).unwrap();
            assert_eq!(back.basis(), space.basis());
        }

        let singular = Matrix::zero(gf2(), 4, 4);
        assert!(matches!(change_basis(&space, &singular), Err(Error::Singular)));
    }

    #[test]
    fn normal_coordinates_option() {
        let mut rng = StdRng::seed_from_u64(73);
        let form = random_nondegenerate(gf2(), 4, &mut rng);
        let nb = form.normal_basis().unwrap();
        let normal =
            construct_general(&nb, form.gram(), SpaceKind::BSymmetric, Coords::Normal).unwrap();
        // In block coordinates the gram is the permuted normal gram, not the
        // original one, and every generator kills the leading nu-block flag.
        assert_ne!(normal.gram(), form.gram());
        let nu = nb.nu();
        for b in normal.basis() {
            assert!(b.is_nilpotent().unwrap());
            for i in nu..4 {
                for j in 0..nu {
                    assert!(b.get(i, j).is_zero(), "lower-left block must vanish");
                }
            }
        }
        let original =
            construct_general(&nb, form.gram(), SpaceKind::BSymmetric, Coords::Original).unwrap();
        assert_eq!(original.gram(), form.gram());
    }

    #[test]
    fn full_pipeline_over_gf8() {
        // Nothing in the classification/construction path is special to
        // k <= 2; exercise GF(8) end to end.
        let gf8 = FieldSpec::with_default_modulus(3).unwrap();
        let mut rng = StdRng::seed_from_u64(79);
        for n in 1..=4usize {
            let form = random_nondegenerate(gf8, n, &mut rng);
            let nb = form.normal_basis().unwrap();
            assert!(nb.p_count() + nb.q_count() <= 1);
            for kind in [SpaceKind::BSymmetric, SpaceKind::BAlternating] {
                let space = construct_general(&nb, form.gram(), kind, Coords::Original).unwrap();
                let expected = match kind {
                    SpaceKind::BSymmetric => nb.nu() * (n - nb.nu()),
                    SpaceKind::BAlternating => nb.nu() * (n - nb.nu()) - nb.nu(),
                };
                assert_eq!(space.dimension(), expected);
                if 8u64.pow(space.dimension() as u32) <= 1 << 12 {
                    for combo in all_combinations(&space) {
                        assert!(combo.is_nilpotent().unwrap());
                    }
                }
            }
            if nb.p_count() == 1 {
                let odd = construct_general_odd(&nb, form.gram(), Coords::Original).unwrap();
                assert_eq!(odd.dimension(), nb.nu() * (n - nb.nu()) - nb.q_count());
            }
        }
    }

    #[test]
    fn space_rejects_bad_bases() {
        let i2 = BilinearForm::identity(gf2(), 2);
        let not_bsym = m(gf2(), &[&[0, 1], &[0, 0]]);
        assert!(matches!(
            MatrixSpace::new(i2.clone(), SpaceKind::BSymmetric, vec![not_bsym]),
            Err(Error::BadInput(_))
        ));
        let dup = Matrix::identity(gf2(), 2);
        assert!(matches!(
            MatrixSpace::new(i2, SpaceKind::BSymmetric, vec![dup.clone(), dup]),
            Err(Error::BadInput(_))
        ));
    }
}
