//! The EKL form on the local algebra: socle element, a functional taking the
//! value 1 on it, and the resulting Gram matrix.

use crate::error::{Error, Result};
use crate::fields::FieldElement;
use crate::gw::SymmetricForm;
use crate::poly::{determinant, jacobian_det, linear_splitting, Polynomial};
use crate::standard_basis::{standard_basis, LocalAlgebra};

/// Normal form of `E = det(a_ij)` for the telescoping splitting of `f`.
pub fn socle_element(f: &[Polynomial], a: &LocalAlgebra) -> Result<Polynomial> {
    socle_element_from(a, &linear_splitting(f))
}

/// Normal form of `det(a_ij)` for a caller-supplied splitting.
pub fn socle_element_from(a: &LocalAlgebra, splitting: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let e = a.normal_form(&determinant(a.ring(), splitting)?)?;
    if e.is_zero() {
        return Err(Error::InternalContradiction(
            "the socle element reduced to zero at an isolated zero".into(),
        ));
    }
    Ok(e)
}

/// Normal form of the Jacobian determinant.
pub fn jacobian_element(f: &[Polynomial], a: &LocalAlgebra) -> Result<Polynomial> {
    a.normal_form(&jacobian_det(f)?)
}

/// The functional `c^{-1} * (coefficient of m)` for a staircase monomial `m`
/// occurring in `E` with coefficient `c`, as a coordinate vector.
fn coefficient_functional(
    a: &LocalAlgebra,
    e_coords: &[FieldElement],
    k: usize,
) -> Result<Vec<FieldElement>> {
    let ctx = a.ring().context();
    let mut phi = vec![ctx.zero(); a.dimension()];
    phi[k] = e_coords[k].inv()?;
    Ok(phi)
}

/// The functional attached to the largest staircase monomial of `E` in the
/// local order (the first nonzero coordinate, as the staircase is sorted).
pub fn choose_functional(a: &LocalAlgebra, e_nf: &Polynomial) -> Result<Vec<FieldElement>> {
    let coords = a.coordinates_of_reduced(e_nf)?;
    let k = coords
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::ZeroElement)?;
    coefficient_functional(a, &coords, k)
}

/// One functional per staircase monomial with a nonzero coefficient in `E`.
pub fn alternate_functionals(
    a: &LocalAlgebra,
    e_nf: &Polynomial,
) -> Result<Vec<Vec<FieldElement>>> {
    let coords = a.coordinates_of_reduced(e_nf)?;
    (0..coords.len())
        .filter(|&k| !coords[k].is_zero())
        .map(|k| coefficient_functional(a, &coords, k))
        .collect()
}

fn apply(phi: &[FieldElement], coords: &[FieldElement]) -> FieldElement {
    let zero = coords[0].zero_like();
    phi.iter().zip(coords).fold(zero, |acc, (p, c)| acc + p * c)
}

/// `G_kl = phi(NF(B_k * B_l))` on the staircase basis.
pub fn gram_matrix(a: &LocalAlgebra, phi: &[FieldElement]) -> Result<SymmetricForm> {
    let ctx = a.ring().context();
    let d = a.dimension();
    let mut g = vec![vec![ctx.zero(); d]; d];
    for k in 0..d {
        for l in k..d {
            let prod = &a.staircase_polynomial(k) * &a.staircase_polynomial(l);
            let v = apply(phi, &a.coordinates(&prod)?);
            g[k][l] = v.clone();
            g[l][k] = v;
        }
    }
    let form = SymmetricForm::new(ctx, g)?;
    if !form.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    Ok(form)
}

/// All intermediate data of one EKL computation at the origin.
#[derive(Clone, Debug)]
pub struct EklComputation {
    pub algebra: LocalAlgebra,
    pub e_normal_form: Polynomial,
    pub phi: Vec<FieldElement>,
    pub gram: SymmetricForm,
}

impl EklComputation {
    /// Runs the pipeline for `f` with an isolated zero at the origin.
    pub fn at_origin(f: &[Polynomial]) -> Result<Self> {
        check_square(f)?;
        if f.iter().any(|p| !p.constant_term().is_zero()) {
            return Err(Error::NotInFiber);
        }
        let algebra = standard_basis(f)?;
        let e_normal_form = socle_element(f, &algebra)?;
        let phi = choose_functional(&algebra, &e_normal_form)?;
        let gram = gram_matrix(&algebra, &phi)?;
        Ok(EklComputation {
            algebra,
            e_normal_form,
            phi,
            gram,
        })
    }

    /// Staircase coordinates of `NF(E)`.
    pub fn e_coordinates(&self) -> Result<Vec<FieldElement>> {
        self.algebra.coordinates_of_reduced(&self.e_normal_form)
    }
}

fn check_square(f: &[Polynomial]) -> Result<()> {
    let n = f.first().map(|p| p.nvars()).ok_or(Error::ZeroIdealInput)?;
    if f.len() != n {
        return Err(Error::InvalidInput(format!(
            "{} equations in {n} variables",
            f.len()
        )));
    }
    Ok(())
}

/// The translated system `f(x + a) - f(a)`, or `f(x + a) - y` when a target
/// value is given (which must equal `f(a)`).
pub fn recentre(
    f: &[Polynomial],
    a: &[FieldElement],
    y: Option<&[FieldElement]>,
) -> Result<Vec<Polynomial>> {
    check_square(f)?;
    let ctx = f[0].context();
    if let Some(y) = y {
        if y.len() != f.len() {
            return Err(Error::InvalidInput(format!(
                "target has {} coordinates, expected {}",
                y.len(),
                f.len()
            )));
        }
    }
    f.iter()
        .enumerate()
        .map(|(i, fi)| {
            let value = fi.evaluate_at(a)?;
            if let Some(y) = y {
                if value != ctx.coerce(&y[i])? {
                    return Err(Error::NotInFiber);
                }
            }
            let shifted = fi.translate(a)?;
            Ok(&shifted - &Polynomial::constant(fi.ring(), value))
        })
        .collect()
}

/// The EKL class `w_x(f)` at a rational point `x`, as a Gram matrix. When
/// `y` is given, `f(x) = y` is checked; otherwise `y = f(x)`.
pub fn ekl_class(
    f: &[Polynomial],
    x: &[FieldElement],
    y: Option<&[FieldElement]>,
) -> Result<SymmetricForm> {
    Ok(EklComputation::at_origin(&recentre(f, x, y)?)?.gram)
}
