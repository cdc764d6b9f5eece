//! Axiom checks for a comultiplication `δ : A → A ⊗ A`.
//!
//! | tag | equation |
//! |-----|----------|
//! | A   | `(id ⊗ δ) ∘ δ = (δ ⊗ id) ∘ δ` |
//! | U   | `(id ⊗ ε) ∘ δ = id` |
//! | C   | `σ ∘ δ = δ` |
//! | M   | `δ† ∘ δ = id` |
//! | F   | `δ ∘ δ† = (δ† ⊗ id) ∘ (id ⊗ δ)` |
//! | Fp  | `(δ† ⊗ id) ∘ (id ⊗ δ) = (id ⊗ δ†) ∘ (δ ⊗ id)` |
//! | H   | `μ ∘ (a* ⊗ id) = (a† ⊗ id) ∘ μ†` for every point `a` |
//!
//! Every check builds both sides as matrices and compares them entrywise;
//! a failing verdict carries the first differing entry in row-major order.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matcat::{compose, symmetry, tensor, Mor, Obj};
use crate::semiring::{Kind, Scalar, ScalarDomain};
use crate::DEFAULT_SEED;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    A,
    U,
    C,
    M,
    F,
    Fp,
    H,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [Axiom::A, Axiom::U, Axiom::C, Axiom::M, Axiom::F, Axiom::Fp, Axiom::H];

    pub fn tag(self) -> &'static str {
        match self {
            Axiom::A => "A",
            Axiom::U => "U",
            Axiom::C => "C",
            Axiom::M => "M",
            Axiom::F => "F",
            Axiom::Fp => "Fp",
            Axiom::H => "H",
        }
    }

    /// Parses a comma separated list such as `A,C,M,F`.
    pub fn parse_list(s: &str) -> Result<Vec<Axiom>> {
        let mut out: Vec<Axiom> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Axiom> {
        Ok(match s {
            "A" => Axiom::A,
            "U" => Axiom::U,
            "C" => Axiom::C,
            "M" => Axiom::M,
            "F" => Axiom::F,
            "Fp" | "F'" => Axiom::Fp,
            "H" => Axiom::H,
            other => return Err(Error::UnknownAxiom(other.to_string())),
        })
    }
}

/// A carrier with a comultiplication and an optional counit. The
/// multiplication is always `δ†` and never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraCandidate {
    carrier: Obj,
    delta: Mor,
    epsilon: Option<Mor>,
}

impl AlgebraCandidate {
    /// `delta` must be `n² × n` and `epsilon`, if given, `1 × n`.
    pub fn new(delta: Mor, epsilon: Option<Mor>) -> Result<Self> {
        let n = delta.cols();
        if delta.rows() != n * n {
            return Err(Error::Shape(format!(
                "delta has {} rows, expected n² = {}",
                delta.rows(),
                n * n
            )));
        }
        let carrier = if delta.dom().dims().len() == 1 {
            delta.dom().clone()
        } else {
            Obj::new(n)
        };
        let pair = Obj::from_dims(vec![n, n])?;
        let delta = delta.reshape(carrier.clone(), pair)?;
        let epsilon = match epsilon {
            Some(e) => {
                if e.rows() != 1 || e.cols() != n {
                    return Err(Error::Shape(format!(
                        "epsilon is {}x{}, expected 1x{n}",
                        e.rows(),
                        e.cols()
                    )));
                }
                if e.domain().kind != delta.domain().kind {
                    return Err(Error::DomainMismatch {
                        left: delta.domain().kind,
                        right: e.domain().kind,
                    });
                }
                Some(e.reshape(carrier.clone(), Obj::unit())?.with_domain(delta.domain()))
            }
            None => None,
        };
        Ok(AlgebraCandidate {
            carrier,
            delta,
            epsilon,
        })
    }

    pub fn n(&self) -> usize {
        self.carrier.total()
    }

    pub fn carrier(&self) -> &Obj {
        &self.carrier
    }

    pub fn domain(&self) -> ScalarDomain {
        self.delta.domain()
    }

    pub fn delta(&self) -> &Mor {
        &self.delta
    }

    pub fn epsilon(&self) -> Option<&Mor> {
        self.epsilon.as_ref()
    }

    pub fn mu(&self) -> Mor {
        self.delta.dagger()
    }

    pub fn with_epsilon(self, epsilon: Option<Mor>) -> Result<Self> {
        AlgebraCandidate::new(self.delta, epsilon)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        self.carrier = Obj::new(self.n()).with_labels(labels)?;
        let pair = self.delta.cod().clone();
        self.delta = self.delta.reshape(self.carrier.clone(), pair)?;
        if let Some(e) = self.epsilon.take() {
            self.epsilon = Some(e.reshape(self.carrier.clone(), Obj::unit())?);
        }
        Ok(self)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        let d = self.domain().with_tolerance(tolerance);
        self.delta = self.delta.with_domain(d);
        self.epsilon = self.epsilon.map(|e| e.with_domain(d));
        self
    }

    pub fn identity(&self) -> Mor {
        Mor::identity(&self.carrier, self.domain())
    }

    pub fn basis_point(&self, j: usize) -> Mor {
        Mor::point(&self.carrier, j, self.domain())
    }

    /// `δ[(i, j)][k]`, the coefficient of `e_i ⊗ e_j` in `δ(e_k)`.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.delta.get(i * self.n() + j, k)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
    /// Basis point at which an (H) check failed.
    pub point: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub axiom: Axiom,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn from_sides(axiom: Axiom, lhs: &Mor, rhs: &Mor) -> Result<Verdict> {
        Ok(match lhs.first_difference(rhs)? {
            None => Verdict {
                axiom,
                pass: true,
                witness: None,
            },
            Some((row, col, l, r)) => Verdict {
                axiom,
                pass: false,
                witness: Some(Witness {
                    row,
                    col,
                    lhs: l,
                    rhs: r,
                    point: None,
                }),
            },
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{} pass", self.axiom),
            Some(w) => {
                write!(
                    f,
                    "{} fail at ({}, {}): lhs={} rhs={}",
                    self.axiom, w.row, w.col, w.lhs, w.rhs
                )?;
                if let Some(p) = w.point {
                    write!(f, " for basis point {p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Both sides of the equation for `axiom`.
pub fn axiom_sides(cand: &AlgebraCandidate, axiom: Axiom) -> Result<(Mor, Mor)> {
    let d = cand.delta();
    let id = cand.identity();
    let dom = cand.domain();
    let n = cand.n();
    Ok(match axiom {
        Axiom::A => (compose(&tensor(&id, d)?, d)?, compose(&tensor(d, &id)?, d)?),
        Axiom::U => {
            let eps = cand.epsilon().ok_or(Error::MissingCounit)?;
            (compose(&tensor(&id, eps)?, d)?, id)
        }
        Axiom::C => (compose(&symmetry(n, n, dom), d)?, d.clone()),
        Axiom::M => (compose(&d.dagger(), d)?, id),
        Axiom::F => {
            let mu = d.dagger();
            (compose(d, &mu)?, compose(&tensor(&mu, &id)?, &tensor(&id, d)?)?)
        }
        Axiom::Fp => {
            let mu = d.dagger();
            (
                compose(&tensor(&mu, &id)?, &tensor(&id, d)?)?,
                compose(&tensor(&id, &mu)?, &tensor(d, &id)?)?,
            )
        }
        Axiom::H => return Err(Error::HNeedsStar),
    })
}

pub fn check_axiom(cand: &AlgebraCandidate, axiom: Axiom) -> Result<Verdict> {
    let (lhs, rhs) = axiom_sides(cand, axiom)?;
    Verdict::from_sides(axiom, &lhs, &rhs)
}

/// Convenience: does the candidate pass every listed axiom? (H) is decided
/// by [`solve_star`].
pub fn passes_all(cand: &AlgebraCandidate, axioms: &[Axiom]) -> Result<bool> {
    for &ax in axioms {
        let ok = match ax {
            Axiom::H => solve_star(cand).is_ok(),
            Axiom::U => match cand.epsilon() {
                Some(_) => check_axiom(cand, ax)?.pass,
                None => solve_counit(cand).is_some(),
            },
            _ => check_axiom(cand, ax)?.pass,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `R(a) = μ ∘ (id ⊗ a)`, left multiplication by the point `a`.
pub fn regular_representation(cand: &AlgebraCandidate, a: &Mor) -> Result<Mor> {
    let a = as_point(cand, a)?;
    compose(&cand.mu(), &tensor(&cand.identity(), &a)?)
}

fn as_point(cand: &AlgebraCandidate, a: &Mor) -> Result<Mor> {
    if a.rows() != cand.n() || a.cols() != 1 {
        return Err(Error::Shape(format!(
            "point must be {}x1, got {}x{}",
            cand.n(),
            a.rows(),
            a.cols()
        )));
    }
    a.clone().reshape(Obj::unit(), cand.carrier().clone())
}

/// The two sides of (H) at a point `a` with proposed `a*`:
/// `μ ∘ (a* ⊗ id)` and `(a† ⊗ id) ∘ δ`.
pub fn h_sides(cand: &AlgebraCandidate, a: &Mor, a_star: &Mor) -> Result<(Mor, Mor)> {
    let a = as_point(cand, a)?;
    let a_star = as_point(cand, a_star)?;
    let id = cand.identity();
    let lhs = compose(&cand.mu(), &tensor(&a_star, &id)?)?;
    let rhs = compose(&tensor(&a.dagger(), &id)?, cand.delta())?;
    Ok((lhs, rhs))
}

/// Values of the star operation on basis points, column `j` holding
/// `star(e_j)`. Over ℂ the operation is the conjugate-linear extension
/// `Σ α_j e_j ↦ Σ ᾱ_j star(e_j)`; in the lattice domains it is the
/// join-preserving extension.
#[derive(Clone, Debug, PartialEq)]
pub struct StarMap {
    pub matrix: Mor,
}

impl StarMap {
    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// `a*` for an arbitrary point.
    pub fn apply(&self, a: &Mor) -> Result<Mor> {
        let a = match a.as_complex() {
            Some(v) => {
                let v = v.iter().map(|z| z.conj()).collect();
                Mor::from_complex(a.dom().clone(), a.cod().clone(), a.domain(), v)?
            }
            None => a.clone(),
        };
        let a = a.reshape(Obj::unit(), self.matrix.dom().clone())?;
        compose(&self.matrix, &a)
    }

    /// `star(e_j)` as a point.
    pub fn column(&self, j: usize) -> Mor {
        let n = self.n();
        let m = &self.matrix;
        Mor::from_fn(Obj::unit(), m.cod().clone(), m.domain(), |r, _| m.get(r, j))
            .expect("column of a valid matrix")
            .reshape(Obj::unit(), Obj::new(n))
            .expect("same total")
    }
}

/// Verifies (H) on every basis point.
pub fn check_h(cand: &AlgebraCandidate, star: &StarMap) -> Result<Verdict> {
    let n = cand.n();
    if star.matrix.rows() != n || star.matrix.cols() != n {
        return Err(Error::Shape(format!(
            "star map is {}x{}, expected {n}x{n}",
            star.matrix.rows(),
            star.matrix.cols()
        )));
    }
    for j in 0..n {
        let (lhs, rhs) = h_sides(cand, &cand.basis_point(j), &star.column(j))?;
        let mut v = Verdict::from_sides(Axiom::H, &lhs, &rhs)?;
        if let Some(w) = v.witness.as_mut() {
            w.point = Some(j);
            return Ok(v);
        }
    }
    Ok(Verdict {
        axiom: Axiom::H,
        pass: true,
        witness: None,
    })
}

/// Star obtained from a counit: `a* = (a† ⊗ id) ∘ δ ∘ ε†`.
pub fn derive_star_from_counit(cand: &AlgebraCandidate) -> Result<StarMap> {
    let eps = cand.epsilon().ok_or(Error::MissingCounit)?;
    let eta = compose(cand.delta(), &eps.dagger())?;
    let n = cand.n();
    let matrix = Mor::from_fn(cand.carrier().clone(), cand.carrier().clone(), cand.domain(), |q, j| {
        eta.get(j * n + q, 0)
    })?;
    Ok(StarMap { matrix })
}

/// No point `x` solves (H) for the basis point `basis_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoStar {
    pub basis_index: usize,
}

impl fmt::Display for NoStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no star for basis index {}", self.basis_index)
    }
}

/// Number of pseudorandom points on which an approximate star is re-checked.
pub const STAR_RANDOM_POINTS: usize = 20;

/// Solves (H) one basis point at a time.
///
/// For `e_j` the unknown `x = star(e_j)` enters (H) linearly:
/// `Σ_p conj(δ[(p,l)][k]) x_p = δ[(j,k)][l]` for all `k, l`. Complex and
/// nonnegative real candidates use least squares; the lattice domains use
/// the greatest solution of the sup-linear system (residuation), which
/// exists exactly when any solution does.
pub fn solve_star(cand: &AlgebraCandidate) -> std::result::Result<StarMap, NoStar> {
    let n = cand.n();
    let dom = cand.domain();
    // coefficient of x_p in entry (k, l) of the left side
    let coeff = |k: usize, l: usize, p: usize| dom.involve(cand.coeff(p, l, k));
    let target = |j: usize, k: usize, l: usize| cand.coeff(j, k, l);

    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let sol = if dom.kind.is_lattice() {
            solve_sup_linear(
                dom,
                n,
                n * n,
                |row, p| coeff(row / n, row % n, p),
                |row| target(j, row / n, row % n),
            )
        } else {
            solve_least_squares(
                dom,
                n,
                n * n,
                |row, p| coeff(row / n, row % n, p),
                |row| target(j, row / n, row % n),
            )
        };
        match sol {
            Some(x) => columns.push(x),
            None => return Err(NoStar { basis_index: j }),
        }
    }
    let matrix = Mor::from_fn(cand.carrier().clone(), cand.carrier().clone(), dom, |r, c| {
        columns[c][r]
    })
    .map_err(|_| NoStar { basis_index: 0 })?;
    let star = StarMap { matrix };

    match check_h(cand, &star) {
        Ok(v) if v.pass => {}
        Ok(v) => {
            return Err(NoStar {
                basis_index: v.witness.and_then(|w| w.point).unwrap_or(0),
            })
        }
        Err(_) => return Err(NoStar { basis_index: 0 }),
    }
    if !dom.kind.is_lattice() && !star_holds_on_random_points(cand, &star, DEFAULT_SEED) {
        return Err(NoStar { basis_index: 0 });
    }
    Ok(star)
}

/// Re-checks (H) on fixed-seed pseudorandom points (complex coefficients, or
/// nonnegative ones for the real domain).
pub fn star_holds_on_random_points(cand: &AlgebraCandidate, star: &StarMap, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cand.n();
    let dom = cand.domain();
    (0..STAR_RANDOM_POINTS).all(|_| {
        let a = match dom.kind {
            Kind::Complex => {
                let v = (0..n)
                    .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect();
                Mor::from_complex(Obj::unit(), cand.carrier().clone(), dom, v)
            }
            _ => {
                let v = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
                Mor::from_reals(Obj::unit(), cand.carrier().clone(), dom, v)
            }
        };
        let Ok(a) = a else { return false };
        let Ok(a_star) = star.apply(&a) else { return false };
        match h_sides(cand, &a, &a_star) {
            Ok((l, r)) => l.approx_eq(&r),
            Err(_) => false,
        }
    })
}

/// Finds `ε` with `(id ⊗ ε) ∘ δ = id`, i.e. `Σ_j ε_j δ[(i,j)][k] = [i = k]`.
pub fn solve_counit(cand: &AlgebraCandidate) -> Option<Mor> {
    let n = cand.n();
    let dom = cand.domain();
    let one = dom.one();
    let zero = dom.zero();
    let coeff = |row: usize, j: usize| cand.coeff(row / n, j, row % n);
    let target = |row: usize| if row / n == row % n { one } else { zero };
    let eps = if dom.kind.is_lattice() {
        solve_sup_linear(dom, n, n * n, coeff, target)?
    } else {
        solve_least_squares(dom, n, n * n, coeff, target)?
    };
    let eps = Mor::from_scalars(cand.carrier().clone(), Obj::unit(), dom, eps).ok()?;
    let with = cand.clone().with_epsilon(Some(eps.clone())).ok()?;
    match check_axiom(&with, Axiom::U) {
        Ok(v) if v.pass => Some(eps),
        _ => None,
    }
}

/// Greatest solution of `sup_p a[row][p] · x_p = b[row]` over a lattice
/// domain, if it solves the system.
fn solve_sup_linear(
    dom: ScalarDomain,
    unknowns: usize,
    rows: usize,
    a: impl Fn(usize, usize) -> Scalar,
    b: impl Fn(usize) -> Scalar,
) -> Option<Vec<Scalar>> {
    let x: Vec<Scalar> = match dom.kind {
        Kind::Boolean => (0..unknowns)
            .map(|p| Scalar::Bool((0..rows).all(|r| a(r, p).is_zero() || !b(r).is_zero())))
            .collect(),
        _ => (0..unknowns)
            .map(|p| {
                let bound = (0..rows)
                    .filter(|&r| !a(r, p).is_zero())
                    .map(|r| residual(b(r).magnitude(), a(r, p).magnitude()))
                    .fold(f64::INFINITY, f64::min);
                // a column with no nonzero entry is unconstrained; keep it at 0
                let bound = if (0..rows).all(|r| a(r, p).is_zero()) {
                    0.0
                } else {
                    bound
                };
                Scalar::Real(bound)
            })
            .collect(),
    };
    let ok = (0..rows).all(|r| {
        let lhs = (0..unknowns).fold(dom.zero(), |acc, p| {
            dom.add(acc, dom.mul(a(r, p), x[p]).expect("in domain"))
                .expect("in domain")
        });
        dom.scalar_eq(lhs, b(r))
    });
    ok.then_some(x)
}

/// Largest `x` with `x · m ≤ r`, for `m > 0`.
fn residual(r: f64, m: f64) -> f64 {
    if r.is_infinite() {
        f64::INFINITY
    } else if m.is_infinite() {
        0.0
    } else {
        r / m
    }
}

/// Least-squares solution of `A x = b`, accepted only if the residual is
/// within tolerance. Nonnegative real solutions must be real and ≥ 0.
fn solve_least_squares(
    dom: ScalarDomain,
    unknowns: usize,
    rows: usize,
    a: impl Fn(usize, usize) -> Scalar,
    b: impl Fn(usize) -> Scalar,
) -> Option<Vec<Scalar>> {
    let to_c = |s: Scalar| match s {
        Scalar::Complex(z) => z,
        Scalar::Real(x) => Complex64::new(x, 0.0),
        Scalar::Bool(v) => Complex64::new(f64::from(u8::from(v)), 0.0),
    };
    let am = DMatrix::from_fn(rows, unknowns, |r, p| to_c(a(r, p)));
    let bv = DVector::from_fn(rows, |r, _| to_c(b(r)));
    let x = least_squares(&am, &bv)?;
    let tol = dom.tolerance;
    let scale = 1f64.max(bv.camax()).max(am.camax());
    if (&am * &x - &bv).camax() > tol * scale {
        return None;
    }
    match dom.kind {
        Kind::Complex => Some(x.iter().map(|z| Scalar::Complex(*z)).collect()),
        _ => x
            .iter()
            .map(|z| (z.im.abs() <= tol * scale && z.re >= -tol * scale).then(|| Scalar::Real(z.re.max(0.0))))
            .collect(),
    }
}

pub(crate) fn least_squares(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> Option<DVector<Complex64>> {
    let svd = a.clone().svd(true, true);
    let cutoff = 1e-12 * svd.singular_values.max().max(1.0);
    svd.solve(b, cutoff).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{counterexample, from_basis, group_algebra, GroupSpec};

    fn z2_rel() -> AlgebraCandidate {
        group_algebra(&"Z2".parse::<GroupSpec>().unwrap(), ScalarDomain::boolean()).unwrap()
    }

    #[test]
    fn basis_algebra_on_c2_passes_the_frobenius_axioms() {
        let cand = from_basis(2);
        for ax in [Axiom::A, Axiom::C, Axiom::M, Axiom::F, Axiom::Fp, Axiom::U] {
            assert!(check_axiom(&cand, ax).unwrap().pass, "{ax}");
        }
    }

    #[test]
    fn zero_delta_fails_m_on_the_diagonal() {
        let cand = counterexample("zero_delta").unwrap();
        let v = check_axiom(&cand, Axiom::M).unwrap();
        assert!(!v.pass);
        let w = v.witness.unwrap();
        assert_eq!((w.row, w.col), (0, 0));
    }

    /// Oracle: evaluate both sides of (F) entrywise straight from the
    /// multiplication table of `min` on {0, 1}, without matrices.
    #[test]
    fn min_semilattice_fails_only_f() {
        let min = |a: usize, b: usize| a.min(b);
        let mut oracle_diff = Vec::new();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for (c, d) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                // δδ†: (c,d) ↦ (a,b) iff min(a,b) = min(c,d)
                let lhs = min(a, b) == min(c, d);
                // (μ ⊗ id)(id ⊗ δ): (c,d) ↦ (c·x, y) with min(x,y) = d
                let rhs = (0..2).any(|x| (0..2).any(|y| min(x, y) == d && min(c, x) == a && y == b));
                if lhs != rhs {
                    oracle_diff.push((a * 2 + b, c * 2 + d));
                }
            }
        }
        assert!(!oracle_diff.is_empty());

        let cand = counterexample("min_semilattice_rel").unwrap();
        for ax in [Axiom::A, Axiom::C, Axiom::M] {
            assert!(check_axiom(&cand, ax).unwrap().pass, "{ax}");
        }
        let v = check_axiom(&cand, Axiom::F).unwrap();
        assert!(!v.pass);
        let w = v.witness.unwrap();
        assert_eq!((w.row, w.col), oracle_diff[0]);
    }

    #[test]
    fn u_without_counit_is_an_error() {
        let cand = z2_rel();
        let bare = cand.with_epsilon(None).unwrap();
        assert!(matches!(check_axiom(&bare, Axiom::U), Err(Error::MissingCounit)));
        assert!(matches!(check_axiom(&bare, Axiom::H), Err(Error::HNeedsStar)));
    }

    #[test]
    fn regular_representation_examples() {
        let cand = from_basis(3);
        let r = regular_representation(&cand, &cand.basis_point(0)).unwrap();
        let mut expected = [Complex64::new(0.0, 0.0); 9];
        expected[0] = Complex64::new(1.0, 0.0);
        assert_eq!(r.as_complex().unwrap(), &expected[..]);

        let zero = Mor::zero(Obj::unit(), Obj::new(3), ScalarDomain::complex());
        let r0 = regular_representation(&cand, &zero).unwrap();
        assert!(r0.as_complex().unwrap().iter().all(|z| z.norm() == 0.0));

        assert!(matches!(
            regular_representation(&cand, &Mor::zero(Obj::unit(), Obj::new(2), ScalarDomain::complex())),
            Err(Error::Shape(_))
        ));
    }

    /// δ(k) = (1/√2) Σ_{gh=k} |g⟩|h⟩ gives μ(g ⊗ h) = (1/√2)|gh⟩, so R(|g⟩)
    /// is the permutation of g scaled by 1/√2.
    #[test]
    fn regular_representation_of_group_algebra() {
        let cand = group_algebra(&"Z2".parse().unwrap(), ScalarDomain::complex()).unwrap();
        let w = 1.0 / 2f64.sqrt();
        let r = regular_representation(&cand, &cand.basis_point(1)).unwrap();
        let got: Vec<f64> = r.as_complex().unwrap().iter().map(|z| z.re).collect();
        let expected = [0.0, w, w, 0.0];
        for (g, e) in got.iter().zip(expected) {
            assert!((g - e).abs() < 1e-12);
        }
    }

    #[test]
    fn counit_examples() {
        let eps = solve_counit(&from_basis(4).with_epsilon(None).unwrap()).unwrap();
        for j in 0..4 {
            assert!(ScalarDomain::complex().scalar_eq(eps.get(0, j), ScalarDomain::complex().one()));
        }

        let bare = z2_rel().with_epsilon(None).unwrap();
        let eps = solve_counit(&bare).unwrap();
        assert_eq!(eps.as_bools().unwrap(), &[true, false]);

        let zero = Mor::zero(
            Obj::new(1),
            Obj::from_dims(vec![1, 1]).unwrap(),
            ScalarDomain::complex(),
        );
        assert!(solve_counit(&AlgebraCandidate::new(zero, None).unwrap()).is_none());
    }

    /// Oracle: brute force over all 2ⁿ subsets for every basis point.
    fn exhaustive_boolean_star_exists(cand: &AlgebraCandidate) -> bool {
        let n = cand.n();
        (0..n).all(|j| {
            (0u32..1 << n).any(|mask| {
                let x =
                    Mor::from_bools(Obj::unit(), Obj::new(n), (0..n).map(|p| mask >> p & 1 == 1).collect()).unwrap();
                let (l, r) = h_sides(cand, &cand.basis_point(j), &x).unwrap();
                l == r
            })
        })
    }

    #[test]
    fn star_examples() {
        let star = solve_star(&from_basis(3)).unwrap();
        assert!(star
            .matrix
            .approx_eq(&Mor::identity(&Obj::new(3), ScalarDomain::complex())));

        let z3 = group_algebra(&"Z3".parse().unwrap(), ScalarDomain::boolean()).unwrap();
        let star = solve_star(&z3).unwrap();
        // inverse in Z3 with mixed-radix labels: 0 ↦ 0, 1 ↦ 2, 2 ↦ 1
        for (j, inv) in [(0, 0), (1, 2), (2, 1)] {
            assert_eq!(star.matrix.get(inv, j), Scalar::Bool(true));
        }

        let semi = counterexample("min_semilattice_rel").unwrap();
        assert!(!exhaustive_boolean_star_exists(&semi));
        assert!(solve_star(&semi).is_err());
        assert!(exhaustive_boolean_star_exists(&z3));
    }

    #[test]
    fn check_h_examples() {
        let cand = from_basis(2);
        let id = StarMap {
            matrix: Mor::identity(&Obj::new(2), ScalarDomain::complex()),
        };
        assert!(check_h(&cand, &id).unwrap().pass);

        // swapped star: at e_0, μ(e_1 ⊗ id) = |1⟩⟨1| but (e_0† ⊗ id)δ = |0⟩⟨0|
        let swap = StarMap {
            matrix: Mor::from_fn(Obj::new(2), Obj::new(2), ScalarDomain::complex(), |r, c| {
                if r != c {
                    ScalarDomain::complex().one()
                } else {
                    ScalarDomain::complex().zero()
                }
            })
            .unwrap(),
        };
        let v = check_h(&cand, &swap).unwrap();
        assert!(!v.pass);
        let w = v.witness.unwrap();
        assert_eq!(w.point, Some(0));
        assert_eq!((w.row, w.col), (0, 0));

        let z2 = z2_rel();
        let inv = StarMap {
            matrix: Mor::identity(&Obj::new(2), ScalarDomain::boolean()),
        };
        assert!(check_h(&z2, &inv).unwrap().pass);
        let wrong = StarMap {
            matrix: Mor::identity(&Obj::new(3), ScalarDomain::boolean()),
        };
        assert!(check_h(&z2, &wrong).is_err());
    }

    #[test]
    fn derived_star_examples() {
        let star = derive_star_from_counit(&from_basis(3)).unwrap();
        assert!(star
            .matrix
            .approx_eq(&Mor::identity(&Obj::new(3), ScalarDomain::complex())));

        // ℂ[Z2]: ε = √2 ⟨e|, δ ∘ ε† = |ee⟩ + |gg⟩, so star(g) = g.
        let cz2 = group_algebra(&"Z2".parse().unwrap(), ScalarDomain::complex()).unwrap();
        let star = derive_star_from_counit(&cz2).unwrap();
        assert!(star
            .matrix
            .approx_eq(&Mor::identity(&Obj::new(2), ScalarDomain::complex())));
        assert!(check_h(&cz2, &star).unwrap().pass);

        assert!(matches!(
            derive_star_from_counit(&cz2.clone().with_epsilon(None).unwrap()),
            Err(Error::MissingCounit)
        ));
    }

    #[test]
    fn verdicts_are_deterministic() {
        let cand = counterexample("min_semilattice_rel").unwrap();
        for ax in [Axiom::A, Axiom::C, Axiom::M, Axiom::F, Axiom::Fp] {
            assert_eq!(check_axiom(&cand, ax).unwrap(), check_axiom(&cand, ax).unwrap());
        }
    }

    #[test]
    fn axiom_tags_parse() {
        assert_eq!(
            Axiom::parse_list("M,A, F',C").unwrap(),
            vec![Axiom::A, Axiom::C, Axiom::M, Axiom::Fp]
        );
        assert!(Axiom::parse_list("A,X").is_err());
    }
}
