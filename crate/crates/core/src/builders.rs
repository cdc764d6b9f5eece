//! Reference algebras: basis algebras, normalized group algebras, disjoint
//! unions of groups in Rel, weighted variants and named counterexamples.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::AlgebraCandidate;
use crate::error::{Error, Result};
use crate::matcat::{Mor, Obj};
use crate::semiring::{Kind, Scalar, ScalarDomain};

/// A finite group given by its cyclic factors, or the symmetric group S₃.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// `Z_{k1} × Z_{k2} × …`; elements are mixed-radix digit tuples, so
    /// `(x, y)` in `Z_a × Z_b` has index `x·b + y` and the identity is 0.
    Cyclic(Vec<usize>),
    S3,
}

impl GroupSpec {
    pub fn cyclic(order: usize) -> GroupSpec {
        GroupSpec::Cyclic(vec![order])
    }

    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(f) => f.iter().product(),
            GroupSpec::S3 => 6,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, GroupSpec::Cyclic(_))
    }

    pub fn table(&self) -> GroupTable {
        match self {
            GroupSpec::Cyclic(factors) => {
                let order = self.order();
                let digits = |mut x: usize| {
                    let mut d = vec![0; factors.len()];
                    for (slot, &k) in d.iter_mut().zip(factors).rev() {
                        *slot = x % k;
                        x /= k;
                    }
                    d
                };
                let encode = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (x, k)| acc * k + x);
                let mul = (0..order)
                    .map(|a| {
                        (0..order)
                            .map(|b| {
                                let (da, db) = (digits(a), digits(b));
                                let sum: Vec<usize> =
                                    da.iter().zip(&db).zip(factors).map(|((x, y), k)| (x + y) % k).collect();
                                encode(&sum)
                            })
                            .collect()
                    })
                    .collect();
                GroupTable { mul, identity: 0 }
            }
            GroupSpec::S3 => {
                let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
                let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
                let mul = (0..6)
                    .map(|a| {
                        (0..6)
                            .map(|b| {
                                let (p, q) = (perms[a], perms[b]);
                                index([p[q[0]], p[q[1]], p[q[2]]])
                            })
                            .collect()
                    })
                    .collect();
                GroupTable { mul, identity: 0 }
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// `"Z2xZ3"`, `"Z4"`, `"Z1"` (trivial) or `"S3"`.
    fn from_str(s: &str) -> Result<GroupSpec> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("S3") {
            return Ok(GroupSpec::S3);
        }
        if s.eq_ignore_ascii_case("trivial") {
            return Ok(GroupSpec::cyclic(1));
        }
        let factors = s
            .split(['x', 'X', '*'])
            .map(|f| {
                f.trim()
                    .strip_prefix(['Z', 'z'])
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::GroupSpec(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec::Cyclic(factors))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::S3 => f.write_str("S3"),
            GroupSpec::Cyclic(fs) => {
                let parts: Vec<String> = fs.iter().map(|k| format!("Z{k}")).collect();
                f.write_str(&parts.join("x"))
            }
        }
    }
}

/// A Cayley table on `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub mul: Vec<Vec<usize>>,
    pub identity: usize,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.mul.len()
    }

    /// The table transported along `perm` (old element `g` becomes `perm[g]`).
    pub fn relabel(&self, perm: &[usize]) -> GroupTable {
        let n = self.order();
        let mut mul = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                mul[perm[a]][perm[b]] = perm[self.mul[a][b]];
            }
        }
        GroupTable {
            mul,
            identity: perm[self.identity],
        }
    }
}

/// `δ(e_i) = e_i ⊗ e_i` over ℂ, with `ε` the all-ones row.
pub fn from_basis(n: usize) -> AlgebraCandidate {
    from_basis_in(n, ScalarDomain::complex())
}

/// The copying algebra of the standard basis over any domain.
pub fn from_basis_in(n: usize, domain: ScalarDomain) -> AlgebraCandidate {
    assert!(n >= 1);
    let carrier = Obj::new(n);
    let pair = Obj::from_dims(vec![n, n]).expect("positive dims");
    let (one, zero) = (domain.one(), domain.zero());
    let delta = Mor::from_fn(
        carrier.clone(),
        pair,
        domain,
        |r, k| if r == k * n + k { one } else { zero },
    )
    .expect("valid scalars");
    let eps = Mor::from_fn(carrier, Obj::unit(), domain, |_, _| one).expect("valid scalars");
    AlgebraCandidate::new(delta, Some(eps)).expect("consistent shapes")
}

/// Group algebra `δ(k) = w · Σ_{gh=k} |g⟩ ⊗ |h⟩` with counit `(1/w)·⟨e|`.
///
/// The weight is the one forced by (M): `w = 1/√|G|` over ℂ and the
/// nonnegative reals, `w = 1` in Rel and in the quantale.
pub fn group_algebra(spec: &GroupSpec, domain: ScalarDomain) -> Result<AlgebraCandidate> {
    let w = match domain.kind {
        Kind::Boolean | Kind::Quantale => 1.0,
        Kind::Complex | Kind::NonnegReal => 1.0 / (spec.order() as f64).sqrt(),
    };
    group_algebra_weighted(spec, domain, w)
}

/// Group algebra with an arbitrary positive weight on every nonzero entry.
pub fn group_algebra_weighted(spec: &GroupSpec, domain: ScalarDomain, weight: f64) -> Result<AlgebraCandidate> {
    if !spec.is_abelian() && domain.kind != Kind::Boolean {
        return Err(Error::Nonabelian(spec.to_string()));
    }
    table_algebra(&spec.table(), domain, weight)
}

/// Algebra of an arbitrary group table with uniform weight.
pub fn table_algebra(table: &GroupTable, domain: ScalarDomain, weight: f64) -> Result<AlgebraCandidate> {
    let n = table.order();
    let w = domain.check(domain.from_real(weight))?;
    let zero = domain.zero();
    let delta = Mor::from_fn(Obj::new(n), Obj::from_dims(vec![n, n])?, domain, |r, k| {
        if table.mul[r / n][r % n] == k {
            w
        } else {
            zero
        }
    })?;
    let unit = domain.from_real(if weight == 0.0 { 0.0 } else { 1.0 / weight });
    let eps = Mor::from_fn(Obj::new(n), Obj::unit(), domain, |_, c| {
        if c == table.identity {
            unit
        } else {
            zero
        }
    })?;
    AlgebraCandidate::new(delta, Some(eps))
}

/// Block-diagonal sum of two candidates over the same semiring. The counit
/// is kept only if both summands have one.
pub fn direct_sum(a: &AlgebraCandidate, b: &AlgebraCandidate) -> Result<AlgebraCandidate> {
    let domain = a.domain();
    if domain.kind != b.domain().kind {
        return Err(Error::DomainMismatch {
            left: domain.kind,
            right: b.domain().kind,
        });
    }
    let (na, nb) = (a.n(), b.n());
    let n = na + nb;
    let zero = domain.zero();
    let delta = Mor::from_fn(Obj::new(n), Obj::from_dims(vec![n, n])?, domain, |r, k| {
        let (i, j) = (r / n, r % n);
        if i < na && j < na && k < na {
            a.coeff(i, j, k)
        } else if i >= na && j >= na && k >= na {
            b.coeff(i - na, j - na, k - na)
        } else {
            zero
        }
    })?;
    let eps = match (a.epsilon(), b.epsilon()) {
        (Some(ea), Some(eb)) => Some(Mor::from_fn(Obj::new(n), Obj::unit(), domain, |_, c| {
            if c < na {
                ea.get(0, c)
            } else {
                eb.get(0, c - na)
            }
        })?),
        _ => None,
    };
    AlgebraCandidate::new(delta, eps)
}

/// Disjoint union of abelian group relations in Rel.
pub fn disjoint_groups_rel(specs: &[GroupSpec]) -> Result<AlgebraCandidate> {
    let (first, rest) = specs.split_first().ok_or(Error::EmptySpecList)?;
    if let Some(bad) = specs.iter().find(|s| !s.is_abelian()) {
        return Err(Error::Nonabelian(bad.to_string()));
    }
    let mut acc = group_algebra(first, ScalarDomain::boolean())?;
    for s in rest {
        acc = direct_sum(&acc, &group_algebra(s, ScalarDomain::boolean())?)?;
    }
    Ok(acc)
}

/// Parses `"Z2+Z3"` into a list of group specs.
pub fn parse_group_list(s: &str) -> Result<Vec<GroupSpec>> {
    s.split('+').map(str::parse).collect()
}

/// Boolean candidate whose multiplication is the given partial operation:
/// `table[i * n + j] = Some(k)` means `(i, j) ∇ k`.
pub fn from_partial_op(n: usize, table: &[Option<usize>]) -> AlgebraCandidate {
    debug_assert_eq!(table.len(), n * n);
    let mut bits = vec![false; n * n * n];
    for (r, cell) in table.iter().enumerate() {
        if let Some(k) = cell {
            bits[r * n + k] = true;
        }
    }
    let delta = Mor::from_bools(Obj::new(n), Obj::from_dims(vec![n, n]).expect("n ≥ 1"), bits).expect("n³ entries");
    AlgebraCandidate::new(delta, None).expect("n² × n")
}

pub const COUNTEREXAMPLES: [&str; 4] = ["s3_rel", "min_semilattice_rel", "unnormalized_conv_c", "zero_delta"];

/// Named candidates that violate specific axioms.
///
/// * `s3_rel`: the group relation of S₃, failing only (C).
/// * `min_semilattice_rel`: `∇ = min` on {0, 1}, failing (F) and, being commutative, (Fp).
/// * `unnormalized_conv_c`: ℂ[Z₂] with weight 1, failing (M) since `δ†δ = 2·id`.
/// * `zero_delta`: the zero comultiplication on ℂ², failing (M).
pub fn counterexample(name: &str) -> Result<AlgebraCandidate> {
    match name {
        "s3_rel" => group_algebra(&GroupSpec::S3, ScalarDomain::boolean()),
        "min_semilattice_rel" => Ok(from_partial_op(2, &[Some(0), Some(0), Some(0), Some(1)])),
        "unnormalized_conv_c" => group_algebra_weighted(&GroupSpec::cyclic(2), ScalarDomain::complex(), 1.0),
        "zero_delta" => {
            let delta = Mor::zero(Obj::new(2), Obj::from_dims(vec![2, 2])?, ScalarDomain::complex());
            AlgebraCandidate::new(delta, None)
        }
        other => Err(Error::UnknownCounterexample(other.to_string())),
    }
}

/// Transports a complex candidate along a unitary: `δ ↦ (U ⊗ U) δ U†`,
/// `ε ↦ ε U†`. All axioms are preserved.
pub fn transport(cand: &AlgebraCandidate, u: &DMatrix<Complex64>) -> Result<AlgebraCandidate> {
    if cand.domain().kind != Kind::Complex {
        return Err(Error::WrongSemiring {
            expected: "complex",
            found: cand.domain().kind,
        });
    }
    let n = cand.n();
    let uu = u.kronecker(u);
    let ud = u.adjoint();
    let d = uu * cand.delta().to_complex_matrix() * &ud;
    let domain = cand.domain();
    let delta = Mor::from_complex(Obj::new(n), Obj::from_dims(vec![n, n])?, domain, row_major(&d))?;
    let eps = match cand.epsilon() {
        Some(e) => {
            let m = e.to_complex_matrix() * &ud;
            Some(Mor::from_complex(Obj::new(n), Obj::unit(), domain, row_major(&m))?)
        }
        None => None,
    };
    AlgebraCandidate::new(delta, eps)
}

pub(crate) fn row_major(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(m.len());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            out.push(m[(r, c)]);
        }
    }
    out
}

fn random_gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// A Haar-ish random unitary from the QR factorization of a random matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
    random_gaussian_matrix(rng, n, n).qr().q()
}

/// Fixed-seed complex test candidates, all satisfying (M):
/// a third are random isometries `ℂⁿ → ℂⁿ ⊗ ℂⁿ` (the orthonormalized
/// columns of a random matrix), a third are basis algebras of random
/// orthonormal bases, and a third are abelian group algebras transported
/// along random unitaries. None carries a counit.
pub fn random_complex_candidates(count: usize, seed: u64) -> Vec<AlgebraCandidate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = ["Z2", "Z3", "Z4", "Z2xZ2"];
    (0..count)
        .map(|i| {
            let cand = match i % 3 {
                0 => {
                    let n = rng.random_range(1..=3);
                    let q = random_gaussian_matrix(&mut rng, n * n, n).qr().q();
                    let delta = Mor::from_complex(
                        Obj::new(n),
                        Obj::from_dims(vec![n, n]).unwrap(),
                        ScalarDomain::complex(),
                        row_major(&q),
                    )
                    .unwrap();
                    AlgebraCandidate::new(delta, None).unwrap()
                }
                1 => {
                    let n = rng.random_range(1..=4);
                    let u = random_unitary(&mut rng, n);
                    transport(&from_basis(n), &u).unwrap()
                }
                _ => {
                    let g: GroupSpec = groups[rng.random_range(0..groups.len())].parse().unwrap();
                    let base = group_algebra(&g, ScalarDomain::complex()).unwrap();
                    let u = random_unitary(&mut rng, g.order());
                    transport(&base, &u).unwrap()
                }
            };
            cand.with_epsilon(None).unwrap()
        })
        .collect()
}

/// The scalar stored at `δ[(i, j)][k]` as a real weight (complex parts dropped).
pub fn weight_at(cand: &AlgebraCandidate, i: usize, j: usize, k: usize) -> f64 {
    match cand.coeff(i, j, k) {
        Scalar::Bool(b) => f64::from(u8::from(b)),
        Scalar::Complex(z) => z.re,
        Scalar::Real(x) => x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_axiom, solve_star, Axiom};

    const PROFILE_AXIOMS: [Axiom; 6] = [Axiom::A, Axiom::U, Axiom::C, Axiom::M, Axiom::F, Axiom::Fp];

    fn failing(cand: &AlgebraCandidate) -> Vec<Axiom> {
        PROFILE_AXIOMS
            .into_iter()
            .filter(|&ax| ax != Axiom::U || cand.epsilon().is_some())
            .filter(|&ax| !check_axiom(cand, ax).unwrap().pass)
            .collect()
    }

    #[test]
    fn group_spec_parsing() {
        assert_eq!("Z2xZ3".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(vec![2, 3]));
        assert_eq!("S3".parse::<GroupSpec>().unwrap(), GroupSpec::S3);
        assert!("Z0".parse::<GroupSpec>().is_err());
        assert!("Q8".parse::<GroupSpec>().is_err());
        assert_eq!(parse_group_list("Z2+Z3").unwrap().len(), 2);
        assert_eq!(GroupSpec::Cyclic(vec![2, 2]).to_string(), "Z2xZ2");
    }

    #[test]
    fn tables_are_groups() {
        for spec in ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z2xZ3", "S3"] {
            let t = spec.parse::<GroupSpec>().unwrap().table();
            let n = t.order();
            for a in 0..n {
                assert_eq!(t.mul[t.identity][a], a);
                assert!((0..n).any(|b| t.mul[a][b] == t.identity));
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(t.mul[t.mul[a][b]][c], t.mul[a][t.mul[b][c]]);
                    }
                }
            }
        }
        let s3 = GroupSpec::S3.table();
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul[a][b] != s3.mul[b][a])));
    }

    #[test]
    fn basis_algebra_shapes() {
        let c2 = from_basis(2);
        let one = ScalarDomain::complex().one();
        assert_eq!(c2.delta().get(0, 0), one);
        assert_eq!(c2.delta().get(3, 1), one);
        assert!(c2.delta().get(1, 0).is_zero() && c2.delta().get(2, 1).is_zero());

        let c1 = from_basis(1);
        assert_eq!(c1.delta().get(0, 0), one);
        assert_eq!(c1.epsilon().unwrap().get(0, 0), one);

        let c3 = from_basis(3);
        assert!(failing(&c3).is_empty());
        assert!(solve_star(&c3).is_ok());
    }

    /// Direct expansion for ℂ[Z₂]: δ(e) = w(|ee⟩ + |gg⟩), δ(g) = w(|eg⟩ + |ge⟩).
    #[test]
    fn complex_z2_matrix() {
        let cand = group_algebra(&GroupSpec::cyclic(2), ScalarDomain::complex()).unwrap();
        let w = 1.0 / 2f64.sqrt();
        let expected = [[w, 0.0], [0.0, w], [0.0, w], [w, 0.0]];
        for (r, row) in expected.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert!((weight_at(&cand, r / 2, r % 2, k) - v).abs() < 1e-15);
            }
        }
        assert!(failing(&cand).is_empty());
    }

    #[test]
    fn advertised_profiles() {
        let table: Vec<(AlgebraCandidate, Vec<Axiom>)> = vec![
            (from_basis(4), vec![]),
            (
                group_algebra(&"Z2xZ2".parse().unwrap(), ScalarDomain::complex()).unwrap(),
                vec![],
            ),
            (
                group_algebra(&"Z3".parse().unwrap(), ScalarDomain::boolean()).unwrap(),
                vec![],
            ),
            (
                group_algebra(&"Z4".parse().unwrap(), ScalarDomain::nonneg_real()).unwrap(),
                vec![],
            ),
            (
                group_algebra(&"Z3".parse().unwrap(), ScalarDomain::quantale()).unwrap(),
                vec![],
            ),
            (
                disjoint_groups_rel(&parse_group_list("Z2+Z3").unwrap()).unwrap(),
                vec![],
            ),
            (counterexample("s3_rel").unwrap(), vec![Axiom::C]),
            (
                counterexample("min_semilattice_rel").unwrap(),
                vec![Axiom::F, Axiom::Fp],
            ),
            (counterexample("unnormalized_conv_c").unwrap(), vec![Axiom::M]),
        ];
        for (cand, expected) in table {
            assert_eq!(failing(&cand), expected);
        }
        let zero = counterexample("zero_delta").unwrap();
        assert!(!check_axiom(&zero, Axiom::M).unwrap().pass);
    }

    #[test]
    fn s3_admits_a_star() {
        let s3 = counterexample("s3_rel").unwrap();
        let star = solve_star(&s3).unwrap();
        let t = GroupSpec::S3.table();
        for g in 0..6 {
            let inv = (0..6).find(|&h| t.mul[g][h] == t.identity).unwrap();
            assert_eq!(star.matrix.get(inv, g), Scalar::Bool(true));
        }
    }

    #[test]
    fn builder_errors() {
        assert!(matches!(
            group_algebra(&GroupSpec::S3, ScalarDomain::complex()),
            Err(Error::Nonabelian(_))
        ));
        assert!(matches!(disjoint_groups_rel(&[]), Err(Error::EmptySpecList)));
        assert!(matches!(
            disjoint_groups_rel(&[GroupSpec::S3]),
            Err(Error::Nonabelian(_))
        ));
        assert!(matches!(counterexample("hopf"), Err(Error::UnknownCounterexample(_))));
    }

    #[test]
    fn trivial_disjoint_union_is_diagonal() {
        let c = disjoint_groups_rel(&[GroupSpec::cyclic(1), GroupSpec::cyclic(1)]).unwrap();
        assert_eq!(c.delta(), from_basis_in(2, ScalarDomain::boolean()).delta());
    }

    #[test]
    fn random_candidates_satisfy_m() {
        let cands = random_complex_candidates(30, crate::DEFAULT_SEED);
        assert_eq!(cands.len(), 30);
        for c in &cands {
            assert!(check_axiom(c, Axiom::M).unwrap().pass);
        }
        assert_eq!(cands, random_complex_candidates(30, crate::DEFAULT_SEED));
    }
}
