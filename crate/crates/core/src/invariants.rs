//! Invariant theory of finite matrix groups acting on polynomials by
//! f ↦ f∘g (right action).
//!
//! Dimensions of semi-invariant spaces come from averaging the complete
//! homogeneous symmetric function h_d of the eigenvalues of each element,
//! obtained from the power sums tr(g^k) by Newton's identities. The trace on
//! the explicit monomial basis is kept as an independent cross-check.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactfield::{Cyclo, Rational};
use crate::linalg::{nullspace, Matrix};
use crate::matgroup::catalogue::generator_ratios;
use crate::matgroup::{closure, FiniteMatrixGroup, GMatrix, LinearCharacter, DEFAULT_CAP};
use crate::multipoly::{monomials_of_degree, Monomial, Poly, PolyError};

pub const MONOMIAL_CAP: usize = 10000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{count} monomials exceed the cap of {cap}")]
    TooManyMonomials { count: usize, cap: usize },
    #[error("averaged trace {0} is not a nonnegative integer")]
    NonIntegral(String),
    #[error("character does not belong to this group")]
    ForeignCharacter,
}

/// f∘g.
pub fn act(g: &Matrix, f: &Poly) -> Result<Poly, PolyError> {
    f.substitute_linear(g)
}

fn linear_view(g: &FiniteMatrixGroup) -> std::borrow::Cow<'_, FiniteMatrixGroup> {
    if g.is_projective() {
        let gens: Vec<GMatrix> = g.generators().into_iter().map(|m| GMatrix::unlabeled(m).expect("invertible")).collect();
        std::borrow::Cow::Owned(closure(&gens, DEFAULT_CAP).expect("finite linear closure"))
    } else {
        std::borrow::Cow::Borrowed(g)
    }
}

/// The character χ with f∘g = χ(g)·f for every g, if f is semi-invariant.
///
/// Semi-invariance is tested on the generators; the values are then extended
/// along the Cayley table, which certifies that they define a character on
/// every element. For a projective group the character lives on the linear
/// closure of its generator matrices.
pub fn curve_character(f: &Poly, g: &FiniteMatrixGroup) -> Option<LinearCharacter> {
    if f.is_zero() {
        return None;
    }
    let lin = linear_view(g);
    let ratios = generator_ratios(f, &lin.generators())?;
    lin.character_from_values(&ratios)
}

/// (1/|G|) Σ_g χ(g)⁻¹ · (f∘g).
pub fn reynolds(f: &Poly, g: &FiniteMatrixGroup, chi: &LinearCharacter) -> Result<Poly, InvariantError> {
    if g.is_projective() {
        return Err(InvariantError::ForeignCharacter);
    }
    let n = f.nvars();
    let terms: Vec<Poly> = (0..g.order())
        .into_par_iter()
        .map(|i| act(g.element(i), f).map(|h| h.scale(&chi.inverse_value(i))))
        .collect::<Result<_, _>>()?;
    let sum = terms.iter().fold(Poly::zero(n), |acc, t| acc.add(t));
    Ok(sum.scale(&Cyclo::from_frac(1, g.order() as i64)))
}

/// h_d of the eigenvalues from the power sums p_1..p_d (Newton's identities).
pub fn complete_homogeneous(power_sums: &[Cyclo], d: usize) -> Cyclo {
    let mut h = vec![Cyclo::one()];
    for k in 1..=d {
        let mut acc = Cyclo::zero();
        for i in 1..=k {
            acc = acc + &power_sums[i - 1] * &h[k - i];
        }
        h.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
    }
    h[d].clone()
}

/// Trace of g on degree-d forms, via Newton's identities.
pub fn trace_on_forms(g: &Matrix, d: usize) -> Cyclo {
    let mut p = Vec::with_capacity(d);
    let mut gk = g.clone();
    for _ in 0..d {
        p.push(gk.trace());
        gk = gk.mul(g);
    }
    complete_homogeneous(&p, d)
}

/// Trace of f ↦ f∘g on the explicit basis of degree-d monomials.
pub fn monomial_trace(g: &Matrix, d: u32) -> Result<Cyclo, PolyError> {
    let n = g.rows();
    let mut tr = Cyclo::zero();
    for m in monomials_of_degree(n, d) {
        let img = Poly::monomial(m.clone(), Cyclo::one()).substitute_linear(g)?;
        tr = tr + img.coeff(&m);
    }
    Ok(tr)
}

fn as_nonnegative_integer(c: &Cyclo) -> Result<usize, InvariantError> {
    let r = c.as_rational().ok_or_else(|| InvariantError::NonIntegral(c.to_string()))?;
    if !r.is_integer() || r.is_negative() {
        return Err(InvariantError::NonIntegral(c.to_string()));
    }
    r.to_integer().try_into().map_err(|_| InvariantError::NonIntegral(c.to_string()))
}

/// Dimension of the χ-semi-invariant degree-d forms.
pub fn invariant_dimension(g: &FiniteMatrixGroup, d: usize, chi: &LinearCharacter) -> Result<usize, InvariantError> {
    if g.is_projective() {
        return Err(InvariantError::ForeignCharacter);
    }
    // Power sums tr(g^k) are read off the Cayley table instead of
    // recomputing matrix powers.
    let traces: Vec<Cyclo> = g.elements().iter().map(Matrix::trace).collect();
    let terms: Vec<Cyclo> = (0..g.order())
        .into_par_iter()
        .map(|i| {
            let mut p = Vec::with_capacity(d);
            let mut x = i;
            for _ in 0..d {
                p.push(traces[x].clone());
                x = g.mul(x, i);
            }
            &complete_homogeneous(&p, d) * &chi.inverse_value(i)
        })
        .collect();
    let total: Cyclo = terms.into_iter().sum();
    as_nonnegative_integer(&total.scale(&Rational::new(BigInt::one(), BigInt::from(g.order()))))
}

/// The same dimension computed from explicit monomial-basis traces.
pub fn invariant_dimension_by_monomials(g: &FiniteMatrixGroup, d: u32, chi: &LinearCharacter) -> Result<usize, InvariantError> {
    let terms: Vec<Cyclo> = (0..g.order())
        .into_par_iter()
        .map(|i| monomial_trace(g.element(i), d).map(|t| &t * &chi.inverse_value(i)))
        .collect::<Result<_, _>>()?;
    let total: Cyclo = terms.into_iter().sum();
    as_nonnegative_integer(&total.scale(&Rational::new(BigInt::one(), BigInt::from(g.order()))))
}

/// A basis of semi-invariant forms of one degree for one character.
#[derive(Clone, Debug)]
pub struct InvariantSpace {
    pub degree: u32,
    pub character: LinearCharacter,
    pub basis: Vec<Poly>,
}

impl InvariantSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        if f.is_zero() {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let monos = self.monomials();
        let mut rows: Vec<Vec<Cyclo>> = self.basis.iter().map(|b| coefficient_row(b, &monos)).collect();
        let r0 = Matrix::from_rows(rows.clone()).rank();
        rows.push(coefficient_row(f, &monos));
        Matrix::from_rows(rows).rank() == r0
    }

    fn monomials(&self) -> Vec<Monomial> {
        let n = self.basis.first().map_or(0, Poly::nvars);
        monomials_of_degree(n, self.degree)
    }
}

fn coefficient_row(f: &Poly, monos: &[Monomial]) -> Vec<Cyclo> {
    monos.iter().map(|m| f.coeff(m)).collect()
}

/// Kernel of the stacked maps (f ↦ f∘s − χ(s)f) over the generators s,
/// returned as a reduced row echelon basis over the monomials.
pub fn invariant_basis(g: &FiniteMatrixGroup, d: u32, chi: &LinearCharacter) -> Result<InvariantSpace, InvariantError> {
    let n = g.size();
    let monos = monomials_of_degree(n, d);
    if monos.len() > MONOMIAL_CAP {
        return Err(InvariantError::TooManyMonomials { count: monos.len(), cap: MONOMIAL_CAP });
    }
    let k = monos.len();
    let gens = linear_view(g).generators();
    let values = chi.generator_values();
    if values.len() != gens.len() {
        return Err(InvariantError::ForeignCharacter);
    }
    let pos: std::collections::HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows: Vec<Vec<Cyclo>> = Vec::new();
    for (s, c) in gens.iter().zip(&values) {
        // column j holds the image of monomial j
        let mut block = vec![vec![Cyclo::zero(); k]; k];
        for (j, m) in monos.iter().enumerate() {
            let img = Poly::monomial(m.clone(), Cyclo::one()).substitute_linear(s)?;
            for (mm, cc) in img.terms() {
                block[pos[mm]][j] = cc.clone();
            }
            block[j][j] = &block[j][j] - c;
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
    let kernel = nullspace(rows, k);
    let basis = if kernel.is_empty() {
        Vec::new()
    } else {
        let (r, piv) = Matrix::from_rows(kernel).rref();
        (0..piv.len())
            .map(|i| Poly::from_terms(n, monos.iter().cloned().zip(r.row(i).iter().cloned())))
            .collect()
    };
    Ok(InvariantSpace { degree: d, character: chi.clone(), basis })
}

/// Monomials of the given block degrees whose weighted exponent sum is
/// divisible by `modulus`. `blocks` lists (variable indices, degree) pairs;
/// the output is sorted from the largest monomial down.
pub fn torus_invariant_monomials(weights: &[u32], modulus: u32, blocks: &[(Vec<usize>, u32)]) -> Vec<Monomial> {
    let n = weights.len();
    let mut partial: Vec<Vec<u32>> = vec![vec![0; n]];
    for (vars, deg) in blocks {
        let mut next = Vec::new();
        for base in &partial {
            for m in monomials_of_degree(vars.len(), *deg) {
                let mut e = base.clone();
                for (v, x) in vars.iter().zip(&m.0) {
                    e[*v] += x;
                }
                next.push(e);
            }
        }
        partial = next;
    }
    let mut out: Vec<Monomial> = partial
        .into_iter()
        .filter(|e| e.iter().zip(weights).map(|(a, w)| a * w).sum::<u32>() % modulus.max(1) == 0)
        .map(Monomial)
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{closure, GMatrix};

    fn klein() -> Poly {
        Poly::parse(3, "x1^3*x2 + x2^3*x3 + x3^3*x1").unwrap()
    }

    fn sign_group() -> FiniteMatrixGroup {
        closure(&[GMatrix::unlabeled(Matrix::from_ints(&[&[-1, 0], &[0, 1]])).unwrap()], 10).unwrap()
    }

    #[test]
    fn action_on_klein() {
        let d = Matrix::diagonal(&[Cyclo::root_of_unity(7, 4), Cyclo::root_of_unity(7, 2), Cyclo::root_of_unity(7, 1)]);
        assert_eq!(act(&d, &klein()).unwrap(), klein());
        let spec_diag = Matrix::diagonal(&[Cyclo::root_of_unity(7, 1), Cyclo::root_of_unity(7, 2), Cyclo::root_of_unity(7, 4)]);
        assert_ne!(act(&spec_diag, &klein()).unwrap().proportionality(&klein()), Some(Cyclo::one()));
    }

    #[test]
    fn sign_character() {
        let g = sign_group();
        let x1 = Poly::var(2, 0);
        let chi = curve_character(&x1, &g).unwrap();
        assert_eq!(chi.generator_values(), vec![Cyclo::from_int(-1)]);
        let triv = LinearCharacter::trivial(&g);
        assert!(reynolds(&x1, &g, &triv).unwrap().is_zero());
        assert_eq!(reynolds(&x1, &g, &chi).unwrap(), x1);
    }

    #[test]
    fn dimensions_agree() {
        let g = sign_group();
        let triv = LinearCharacter::trivial(&g);
        for d in 0..6u32 {
            let a = invariant_dimension(&g, d as usize, &triv).unwrap();
            let b = invariant_dimension_by_monomials(&g, d, &triv).unwrap();
            let c = invariant_basis(&g, d, &triv).unwrap().dimension();
            assert_eq!((a, b), (c, c));
        }
        let id = closure(&[GMatrix::unlabeled(Matrix::identity(3)).unwrap()], 2).unwrap();
        let t = LinearCharacter::trivial(&id);
        assert_eq!(invariant_basis(&id, 2, &t).unwrap().dimension(), 6);
        assert_eq!(invariant_dimension(&id, 0, &t).unwrap(), 1);
    }

    #[test]
    fn torus_monomials() {
        let all = torus_invariant_monomials(&[0, 0], 1, &[(vec![0, 1], 2)]);
        assert_eq!(all.len(), 3);
        let t = torus_invariant_monomials(&[1, 0, 1, 0], 3, &[(vec![0, 1], 4), (vec![2, 3], 4)]);
        assert_eq!(t.len(), 8);
        assert_eq!(t[0], Monomial(vec![4, 0, 2, 2]));
        let f = torus_invariant_monomials(&[1, 0, 1, 0], 5, &[(vec![0, 1], 4), (vec![2, 3], 4)]);
        assert_eq!(f.len(), 5);
        assert!(f.contains(&Monomial(vec![0, 4, 0, 4])));
    }

    #[test]
    fn newton_matches_monomial_trace() {
        let g = Matrix::from_rows(vec![
            vec![Cyclo::zero(), Cyclo::one(), Cyclo::zero()],
            vec![Cyclo::zero(), Cyclo::zero(), Cyclo::root_of_unity(3, 1)],
            vec![Cyclo::from_int(-1), Cyclo::zero(), Cyclo::zero()],
        ]);
        for d in 0..7 {
            assert_eq!(trace_on_forms(&g, d), monomial_trace(&g, d as u32).unwrap());
        }
    }
}
