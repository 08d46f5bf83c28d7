//! The group law on a nilpotent Lie algebra in exponential coordinates.
//!
//! A [`BchGroup`] is the simply connected group `(𝔤, ·)` whose product is the
//! Baker–Campbell–Hausdorff series, truncated at the nilpotency class. The
//! series is expanded with Dynkin's formula into right-nested brackets of
//! words in two letters; exact coefficients are tabulated once through
//! [`MAX_DYNKIN_DEGREE`].

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{vecops, Matrix, Polynomial};
use crate::liealg::{Functional, Lattice, LieAlgebra, Vector};
use crate::scalar::Scalar;

/// Highest commutator degree with tabulated Dynkin coefficients.
pub const MAX_DYNKIN_DEGREE: usize = 6;

/// `exp(v)` recorded by its exponential coordinates `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement<S>(pub Vec<S>);

impl<S: Scalar> GroupElement<S> {
    pub fn identity(dim: usize) -> Self {
        Self(vec![S::zero(); dim])
    }

    pub fn exp(v: &Vector<S>) -> Self {
        Self(v.0.clone())
    }

    pub fn log(&self) -> Vector<S> {
        Vector(self.0.clone())
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Self(vecops::neg(&self.0))
    }

    pub fn is_identity(&self) -> bool {
        vecops::is_zero(&self.0)
    }
}

/// `exp(t·direction)` with `t` a free parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicGroupElement<S> {
    pub direction: Vec<S>,
    pub parameter: String,
}

/// A word in the letters `x` (false) and `y` (true) with its Dynkin
/// coefficient; the word stands for `[w₁,[w₂,[…,w_m]]]`.
type Word = (Vec<bool>, BigRational);

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Dynkin's expansion of `log(e^x e^y)` grouped by word, words of length up
/// to [`MAX_DYNKIN_DEGREE`], zero coefficients and trivially vanishing words
/// (last two letters equal) removed.
fn dynkin_words() -> &'static [Word] {
    static WORDS: OnceLock<Vec<Word>> = OnceLock::new();
    WORDS.get_or_init(|| {
        let max = MAX_DYNKIN_DEGREE;
        let mut acc: BTreeMap<Vec<bool>, BigRational> = BTreeMap::new();
        // every nonempty (r, s) block of total size ≤ max
        let blocks: Vec<(usize, usize)> = (0..=max)
            .flat_map(|r| (0..=max - r).map(move |s| (r, s)))
            .filter(|&(r, s)| r + s > 0)
            .collect();
        let mut stack: Vec<Vec<(usize, usize)>> = blocks.iter().map(|&b| vec![b]).collect();
        while let Some(seq) = stack.pop() {
            let degree: usize = seq.iter().map(|(r, s)| r + s).sum();
            let n = seq.len();
            let mut word = Vec::with_capacity(degree);
            let mut denom = BigInt::from(n) * BigInt::from(degree);
            for &(r, s) in &seq {
                word.extend(std::iter::repeat(false).take(r));
                word.extend(std::iter::repeat(true).take(s));
                denom *= factorial(r) * factorial(s);
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let coeff = BigRational::new(BigInt::from(sign), denom);
            let slot = acc.entry(word).or_insert_with(BigRational::zero);
            *slot += coeff;
            for &b in &blocks {
                if degree + b.0 + b.1 <= max {
                    let mut next = seq.clone();
                    next.push(b);
                    stack.push(next);
                }
            }
        }
        acc.into_iter()
            .filter(|(w, c)| !c.is_zero() && (w.len() < 2 || w[w.len() - 1] != w[w.len() - 2]))
            .collect()
    })
}

fn to_scalar<S: Scalar>(q: &BigRational) -> S {
    let n = q.numer().to_i64().expect("Dynkin numerator fits in i64");
    let d = q.denom().to_i64().expect("Dynkin denominator fits in i64");
    S::from_frac(n, d)
}

/// The simply connected nilpotent group of a Lie algebra, in exponential
/// coordinates.
#[derive(Clone, Debug)]
pub struct BchGroup<S> {
    algebra: Arc<LieAlgebra<S>>,
    words: Vec<(Vec<bool>, S)>,
}

impl<S: Scalar> BchGroup<S> {
    pub fn new(algebra: Arc<LieAlgebra<S>>) -> Result<Self> {
        let class = algebra.nilpotency_class();
        if class > MAX_DYNKIN_DEGREE {
            return Err(Error::ClassTooHigh {
                class,
                bound: MAX_DYNKIN_DEGREE,
            });
        }
        let words = dynkin_words()
            .iter()
            .filter(|(w, _)| w.len() <= class.max(1))
            .map(|(w, c)| (w.clone(), to_scalar(c)))
            .collect();
        Ok(Self { algebra, words })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra<S>> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn identity(&self) -> GroupElement<S> {
        GroupElement::identity(self.dim())
    }

    fn check(&self, g: &GroupElement<S>) -> Result<()> {
        if g.0.len() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// `log(exp x · exp y)`.
    pub fn multiply(&self, x: &GroupElement<S>, y: &GroupElement<S>) -> Result<GroupElement<S>> {
        self.check(x)?;
        self.check(y)?;
        let mut out = vec![S::zero(); self.dim()];
        for (word, coeff) in &self.words {
            let letter = |b: bool| if b { &y.0 } else { &x.0 };
            let mut acc = letter(word[word.len() - 1]).clone();
            for &b in word[..word.len() - 1].iter().rev() {
                if vecops::is_zero(&acc) {
                    break;
                }
                acc = self.algebra.bracket_coords(letter(b), &acc);
            }
            vecops::axpy(&mut out, coeff, &acc);
        }
        Ok(GroupElement(out))
    }

    pub fn product(&self, factors: &[GroupElement<S>]) -> Result<GroupElement<S>> {
        factors
            .iter()
            .try_fold(self.identity(), |acc, g| self.multiply(&acc, g))
    }

    /// `Ad(exp v) = Σ_k (ad v)^k / k!`, a finite sum.
    pub fn adjoint_matrix(&self, g: &GroupElement<S>) -> Result<Matrix<S>> {
        self.check(g)?;
        Ok(exp_nilpotent(&self.algebra.ad_matrix(&g.0)))
    }

    /// `Ad*(g)ξ = ξ ∘ Ad(g⁻¹)`.
    pub fn coadjoint_apply(&self, g: &GroupElement<S>, xi: &Functional<S>) -> Result<Functional<S>> {
        self.check(g)?;
        if xi.dim() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let ad_inverse = self.adjoint_matrix(&g.inverse())?;
        Ok(Functional(ad_inverse.transpose_mul_vec(&xi.0)))
    }

    /// `Ad*(exp(t·direction))` applied to a functional whose coordinates are
    /// polynomials; the result is polynomial in `t` of degree at most the
    /// nilpotency class.
    pub fn coadjoint_symbolic(
        &self,
        element: &SymbolicGroupElement<S>,
        xi: &[Polynomial<S>],
    ) -> Result<Vec<Polynomial<S>>> {
        let n = self.dim();
        if element.direction.len() != n || xi.len() != n {
            return Err(Error::AlgebraMismatch);
        }
        let ad = self.algebra.ad_matrix(&element.direction);
        // Ad(exp(−tY)) = Σ_m (−t)^m/m! (ad Y)^m
        let mut entries: Vec<Vec<Polynomial<S>>> = vec![vec![Polynomial::zero(); n]; n];
        let mut power: Matrix<S> = Matrix::identity(n);
        let mut m: u32 = 0;
        let mut scale = S::one();
        while !power.is_zero() {
            for (k, row) in entries.iter_mut().enumerate() {
                for (i, slot) in row.iter_mut().enumerate() {
                    let c = power.get(k, i);
                    if !c.is_zero() {
                        let term = Polynomial::monomial(
                            scale.clone() * c.clone(),
                            &[(element.parameter.as_str(), m)],
                        );
                        *slot = &*slot + &term;
                    }
                }
            }
            m += 1;
            power = power.mul(&ad);
            scale = -scale / S::from_int(i64::from(m));
        }
        Ok((0..n)
            .map(|i| {
                (0..n).fold(Polynomial::zero(), |acc, k| &acc + &(&xi[k] * &entries[k][i]))
            })
            .collect())
    }

    /// Convenience form of [`Self::coadjoint_symbolic`] for a constant
    /// functional and the basis direction `e_j`.
    pub fn coadjoint_symbolic_basis(
        &self,
        j: usize,
        xi: &Functional<S>,
        parameter: &str,
    ) -> Result<Vec<Polynomial<S>>> {
        if j >= self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let constant: Vec<Polynomial<S>> = xi.0.iter().cloned().map(Polynomial::constant).collect();
        self.coadjoint_symbolic(
            &SymbolicGroupElement {
                direction: vecops::unit(self.dim(), j),
                parameter: parameter.to_string(),
            },
            &constant,
        )
    }

    /// Whether `g` and `h` agree in `G/Γ`, i.e. `g⁻¹h ∈ Γ`. Elements are
    /// never reduced to a fundamental domain.
    pub fn congruent_mod(
        &self,
        g: &GroupElement<S>,
        h: &GroupElement<S>,
        lattice: &Lattice<S>,
    ) -> Result<bool> {
        let diff = self.multiply(&g.inverse(), h)?;
        Ok(lattice.contains(&diff.0))
    }
}

/// `exp(A)` for nilpotent `A`.
pub fn exp_nilpotent<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    let n = a.rows();
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    let mut k = 1;
    loop {
        term = term.mul(a).scale(&(S::one() / S::from_int(k)));
        if term.is_zero() {
            return sum;
        }
        sum = sum.add(&term);
        k += 1;
        assert!(k as usize <= n + 1, "matrix is not nilpotent");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Assignment;
    use crate::liealg::catalog;
    use crate::Rational;

    type Q = Rational;

    fn group(name: &str) -> BchGroup<Q> {
        BchGroup::new(Arc::new(catalog::by_name(name).unwrap())).unwrap()
    }

    fn g(c: &[i64]) -> GroupElement<Q> {
        GroupElement(c.iter().map(|&x| Q::from_int(x)).collect())
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    #[test]
    fn low_degree_coefficients() {
        let words = dynkin_words();
        let find = |w: &[bool]| words.iter().find(|(x, _)| x == w).map(|(_, c)| c.clone());
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(find(&[false]), Some(r(1, 1)));
        assert_eq!(find(&[true]), Some(r(1, 1)));
        // [x,y] and [y,x] both appear; only their difference is meaningful
        let xy = find(&[false, true]).unwrap() - find(&[true, false]).unwrap();
        assert_eq!(xy, r(1, 2));
    }

    #[test]
    fn abelian_product_is_sum() {
        let grp = group("abelian3");
        assert_eq!(grp.multiply(&g(&[1, 2, 3]), &g(&[4, 5, 6])).unwrap(), g(&[5, 7, 9]));
    }

    #[test]
    fn filiform_basis_product() {
        let grp = group("filiform4");
        let prod = grp.multiply(&g(&[1, 0, 0, 0]), &g(&[0, 1, 0, 0])).unwrap();
        assert_eq!(prod.0, vec![q(1, 1), q(1, 1), q(1, 2), q(1, 12)]);
    }

    #[test]
    fn inverse_and_identity() {
        let grp = group("filiform5");
        let x = g(&[1, -2, 3, 1, 2]);
        assert!(grp.multiply(&x, &x.inverse()).unwrap().is_identity());
        assert_eq!(grp.multiply(&grp.identity(), &x).unwrap(), x);
        assert_eq!(grp.multiply(&x, &grp.identity()).unwrap(), x);
    }

    #[test]
    fn class_bound_enforced() {
        let f8 = Arc::new(catalog::filiform::<Q>(8).unwrap());
        assert_eq!(
            BchGroup::new(f8).unwrap_err(),
            Error::ClassTooHigh { class: 7, bound: 6 }
        );
        assert!(BchGroup::new(Arc::new(catalog::filiform::<Q>(7).unwrap())).is_ok());
    }

    #[test]
    fn heisenberg_adjoint() {
        let grp = group("heisenberg3");
        let (a, b, c) = (q(2, 1), q(-3, 1), q(5, 1));
        let ad = grp.adjoint_matrix(&GroupElement(vec![a.clone(), b.clone(), c])).unwrap();
        let mut expected = Matrix::identity(3);
        expected.set(2, 0, -b);
        expected.set(2, 1, a);
        assert_eq!(ad, expected);
        assert_eq!(grp.adjoint_matrix(&grp.identity()).unwrap(), Matrix::identity(3));
        assert_eq!(
            group("abelian4").adjoint_matrix(&g(&[1, 2, 3, 4])).unwrap(),
            Matrix::identity(4)
        );
    }

    #[test]
    fn heisenberg_coadjoint() {
        let grp = group("heisenberg3");
        let xi = Functional::from_ints(&[0, 0, 1]);
        assert_eq!(
            grp.coadjoint_apply(&g(&[1, 0, 0]), &xi).unwrap(),
            Functional::from_ints(&[0, -1, 1])
        );
        assert_eq!(grp.coadjoint_apply(&grp.identity(), &xi).unwrap(), xi);
    }

    #[test]
    fn heisenberg_symbolic_flows() {
        let grp = group("heisenberg3");
        let xi: Vec<Polynomial<Q>> = ["a", "b", "z"].iter().map(|v| Polynomial::var(v)).collect();
        let t = Polynomial::<Q>::var("t");
        let flow = |dir: Vec<Q>| {
            grp.coadjoint_symbolic(
                &SymbolicGroupElement {
                    direction: dir,
                    parameter: "t".into(),
                },
                &xi,
            )
            .unwrap()
        };
        let e1 = flow(vecops::unit(3, 0));
        assert_eq!(e1[0], xi[0]);
        assert_eq!(e1[1], &xi[1] - &(&t * &xi[2]));
        assert_eq!(e1[2], xi[2]);
        let e2 = flow(vecops::unit(3, 1));
        assert_eq!(e2[0], &xi[0] + &(&t * &xi[2]));
        assert_eq!(e2[1], xi[1]);
    }

    #[test]
    fn symbolic_matches_numeric() {
        let grp = group("filiform5");
        let xi = Functional(vec![q(1, 2), q(-1, 1), q(2, 3), q(3, 1), q(-5, 4)]);
        for j in 0..5 {
            let polys = grp.coadjoint_symbolic_basis(j, &xi, "t").unwrap();
            for t in [1, 2, 3, -1] {
                let t = q(t, 1);
                let mut a = Assignment::new();
                a.insert("t".to_string(), t.clone());
                let evaluated: Vec<Q> = polys.iter().map(|p| p.eval(&a).unwrap()).collect();
                let direct = grp
                    .coadjoint_apply(&GroupElement(vecops::scale(&t, &vecops::unit(5, j))), &xi)
                    .unwrap();
                assert_eq!(evaluated, direct.0);
            }
        }
    }

    #[test]
    fn congruence_modulo_central_lattice() {
        let grp = group("heisenberg3");
        let h3 = grp.algebra().clone();
        let lattice = Lattice::new(&h3, vec![vecops::unit(3, 2)]).unwrap();
        let x = g(&[1, 2, 0]);
        let shifted = grp.multiply(&x, &g(&[0, 0, 3])).unwrap();
        assert!(grp.congruent_mod(&x, &shifted, &lattice).unwrap());
        let off = grp.multiply(&x, &GroupElement(vec![q(0, 1), q(0, 1), q(1, 2)])).unwrap();
        assert!(!grp.congruent_mod(&x, &off, &lattice).unwrap());
    }
}
