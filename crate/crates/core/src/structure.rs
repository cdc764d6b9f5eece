//! Structure recovery.
//!
//! Over ℂ the copyable points `δ(c) = c ⊗ c` of a Frobenius algebra form an
//! orthonormal basis, and each spans a one-dimensional summand. In Rel the
//! multiplication `∇ = Δ†` splits the carrier into abelian groups; over the
//! quantale and the nonnegative reals the same split holds for the boolean
//! reduct and the weights are then pinned down per summand.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::{AlgebraCandidate, StarMap};
use crate::builders::row_major;
use crate::error::{Error, Result};
use crate::matcat::{Mor, Obj};
use crate::semiring::{Kind, Scalar, ScalarDomain};
use crate::DEFAULT_SEED;

/// Eigenvalues closer than this are treated as one cluster.
pub const CLUSTER_THRESHOLD: f64 = 1e-6;
/// Random combinations tried before giving up on an ambiguous spectrum.
pub const MAX_ATTEMPTS: usize = 5;

/// One summand of a decomposition.
///
/// In Rel and the weighted domains `elements` are carrier indices and the
/// table is the group law on them. Over ℂ every summand is the
/// one-dimensional algebra spanned by a copyable point; `elements` then holds
/// that point's position in [`Decomposition::copyables`].
#[derive(Clone, Debug, PartialEq)]
pub struct Summand {
    pub elements: Vec<usize>,
    /// `group_table[a][b]` is the product of `elements[a]` and `elements[b]`,
    /// as an element (not a position).
    pub group_table: Vec<Vec<usize>>,
    pub identity: usize,
    /// `inverses[a]` is the inverse of `elements[a]`.
    pub inverses: Vec<usize>,
    pub weight: Scalar,
}

impl Summand {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn position(&self, element: usize) -> usize {
        self.elements
            .iter()
            .position(|&e| e == element)
            .expect("element of summand")
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.group_table[self.position(a)][self.position(b)]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CopyableSet {
    pub points: Vec<Vec<Complex64>>,
    /// Largest entrywise deviation of the Gram matrix from the identity.
    pub gram_residual: f64,
    /// Seed of the random combination that separated the spectrum.
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Dimension of the complement of the copyable span (complex only).
    pub radical_dim: usize,
    pub copyables: Option<CopyableSet>,
}

impl Decomposition {
    /// Sorted summand orders, an isomorphism invariant.
    pub fn profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.summands.iter().map(Summand::order).collect();
        p.sort_unstable();
        p
    }

    /// Why this is not a full decomposition, if it is not.
    pub fn anomaly(&self, tolerance: f64) -> Option<String> {
        if self.radical_dim > 0 {
            return Some(format!(
                "radical_dim = {}: the copyables do not span the carrier",
                self.radical_dim
            ));
        }
        match &self.copyables {
            Some(c) if c.gram_residual > tolerance => Some(format!(
                "copyables are not orthonormal: Gram residual {:e} > {:e}",
                c.gram_residual, tolerance
            )),
            _ => None,
        }
    }

    /// Rebuilds the boolean relation `Δ` from the summand tables.
    pub fn to_relation(&self, n: usize) -> Result<Mor> {
        let mut bits = vec![false; n * n * n];
        for s in &self.summands {
            for (ia, &a) in s.elements.iter().enumerate() {
                for (ib, &b) in s.elements.iter().enumerate() {
                    let c = s.group_table[ia][ib];
                    bits[(a * n + b) * n + c] = true;
                }
            }
        }
        Mor::from_bools(Obj::new(n), Obj::from_dims(vec![n, n])?, bits)
    }

    /// The star operation the decomposition induces: inverses on group
    /// summands, coordinate conjugation in the copyable basis over ℂ.
    pub fn induced_star(&self, cand: &AlgebraCandidate) -> Result<StarMap> {
        let n = cand.n();
        let dom = cand.domain();
        let matrix = match (&self.copyables, dom.kind) {
            (Some(c), Kind::Complex) => {
                // a = Σ_k ⟨c_k|a⟩ c_k ↦ Σ_k conj⟨c_k|a⟩ c_k, so star(e_j) = Σ_k (c_k)_j c_k
                let mut m = DMatrix::<Complex64>::zeros(n, n);
                for p in &c.points {
                    let v = DVector::from_column_slice(p);
                    m += &v * v.transpose();
                }
                Mor::from_complex(Obj::new(n), Obj::new(n), dom, row_major(&m))?
            }
            _ => {
                let mut inv = vec![usize::MAX; n];
                for s in &self.summands {
                    for (&a, &b) in s.elements.iter().zip(&s.inverses) {
                        inv[a] = b;
                    }
                }
                let (one, zero) = (dom.one(), dom.zero());
                Mor::from_fn(
                    Obj::new(n),
                    Obj::new(n),
                    dom,
                    |r, c| if inv[c] == r { one } else { zero },
                )?
            }
        };
        Ok(StarMap {
            matrix: matrix.reshape(cand.carrier().clone(), cand.carrier().clone())?,
        })
    }
}

fn require(cand: &AlgebraCandidate, kinds: &[Kind], expected: &'static str) -> Result<()> {
    if kinds.contains(&cand.domain().kind) {
        Ok(())
    } else {
        Err(Error::WrongSemiring {
            expected,
            found: cand.domain().kind,
        })
    }
}

fn complex_delta(cand: &AlgebraCandidate) -> DMatrix<Complex64> {
    cand.delta().to_complex_matrix()
}

/// Left multiplication operators `L_i = R(e_i)`, `L_i[k][l] = conj δ[(l,i)][k]`.
fn multiplication_operators(cand: &AlgebraCandidate) -> Vec<DMatrix<Complex64>> {
    let n = cand.n();
    let d = complex_delta(cand);
    (0..n)
        .map(|i| DMatrix::from_fn(n, n, |k, l| d[(l * n + i, k)].conj()))
        .collect()
}

/// Copyable points of a commutative complex candidate.
///
/// The multiplication operators commute, so a random combination `L_v`
/// separates their joint eigenspaces. Each one-dimensional eigenspace
/// spanned by a unit `u` gives the candidate `c = ⟨u ⊗ u, δ(u)⟩ · u`, the
/// unique multiple of `u` that could satisfy `δ(c) = c ⊗ c`; candidates
/// failing that equation are dropped. A cluster of eigenvalues whose
/// eigenspace is more than one-dimensional but on which some `L_i` is not
/// scalar means the combination was unlucky, and a new seed is tried.
pub fn copyables_complex(cand: &AlgebraCandidate) -> Result<CopyableSet> {
    copyables_complex_seeded(cand, DEFAULT_SEED)
}

pub fn copyables_complex_seeded(cand: &AlgebraCandidate, seed: u64) -> Result<CopyableSet> {
    require(cand, &[Kind::Complex], "complex")?;
    let n = cand.n();
    let ops = multiplication_operators(cand);
    let scale = ops.iter().map(|m| m.camax()).fold(1.0, f64::max);
    let d = complex_delta(cand);

    let mut last_seed = seed;
    for attempt in 0..MAX_ATTEMPTS {
        let s = seed.wrapping_add(attempt as u64);
        last_seed = s;
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let mut lv = DMatrix::<Complex64>::zeros(n, n);
        for op in &ops {
            let coef = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            lv += op * coef;
        }
        let Some(directions) = joint_eigenvectors(&lv, &ops, scale) else {
            continue;
        };
        let tol = cand.domain().tolerance;
        let mut points: Vec<Vec<Complex64>> = directions
            .into_iter()
            .filter_map(|u| {
                let du = &d * &u;
                let uu = u.kronecker(&u);
                let s = uu.dotc(&du);
                if s.norm() <= tol {
                    return None;
                }
                let c = u * s;
                let residual = (&d * &c - c.kronecker(&c)).camax();
                (residual <= tol * 1f64.max(c.camax() * c.camax())).then(|| c.iter().copied().collect())
            })
            .collect();
        points.sort_by_key(|p| rounded_key(p));
        points.dedup_by(|a, b| rounded_key(a) == rounded_key(b));
        let gram_residual = gram_residual(&points);
        return Ok(CopyableSet {
            points,
            gram_residual,
            seed: s,
        });
    }
    Err(Error::DegenerateSpectrum {
        attempts: MAX_ATTEMPTS,
        seed: last_seed,
    })
}

fn rounded_key(p: &[Complex64]) -> Vec<(i64, i64)> {
    let r = |x: f64| {
        let v = (x * 1e6).round() as i64;
        if v == 0 {
            0
        } else {
            v
        }
    };
    p.iter().map(|z| (r(z.re), r(z.im))).collect()
}

/// Largest entrywise deviation of `⟨c_i, c_j⟩` from `δ_ij`.
pub fn gram_residual(points: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((ip - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Unit joint eigenvectors of the commuting family, one per nondegenerate
/// joint eigenspace. `None` if the combination failed to separate.
fn joint_eigenvectors(
    lv: &DMatrix<Complex64>,
    ops: &[DMatrix<Complex64>],
    scale: f64,
) -> Option<Vec<DVector<Complex64>>> {
    let n = lv.nrows();
    let (_, t) = lv.clone().schur().unpack();
    let eig: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();

    // single-linkage clustering
    let mut cluster: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..i {
            if (eig[i] - eig[j]).norm() <= CLUSTER_THRESHOLD * scale {
                let (a, b) = (cluster[i], cluster[j]);
                for c in cluster.iter_mut() {
                    if *c == a {
                        *c = b;
                    }
                }
            }
        }
    }
    let ids: BTreeSet<usize> = cluster.iter().copied().collect();

    let mut out = Vec::new();
    for id in ids {
        let members: Vec<usize> = (0..n).filter(|&i| cluster[i] == id).collect();
        let lambda = members.iter().map(|&i| eig[i]).sum::<Complex64>() / members.len() as f64;
        let shifted = lv - DMatrix::<Complex64>::identity(n, n) * lambda;
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.expect("requested");
        let sv = &svd.singular_values;
        let mut order: Vec<usize> = (0..sv.len()).collect();
        order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
        // geometric multiplicity: singular values at the cluster's scale
        let null_cut = (CLUSTER_THRESHOLD * scale).max(1e-10);
        let geo = order
            .iter()
            .filter(|&&i| sv[i] <= null_cut)
            .count()
            .max(1)
            .min(members.len());
        let basis: Vec<DVector<Complex64>> = order[..geo].iter().map(|&i| vt.row(i).adjoint().into_owned()).collect();
        if geo == 1 {
            out.push(basis.into_iter().next().unwrap());
            continue;
        }
        let w = DMatrix::from_columns(&basis);
        let scalar_on_w = ops.iter().all(|op| {
            let restricted = w.adjoint() * op * &w;
            let mean = restricted.trace() / geo as f64;
            let dev = restricted - DMatrix::<Complex64>::identity(geo, geo) * mean;
            dev.camax() <= CLUSTER_THRESHOLD * scale
        });
        if !scalar_on_w {
            return None;
        }
        // a degenerate joint eigenspace holds no distinguished direction
    }
    Some(out)
}

/// Equivalence classes of `x ∼ y ⇔ xy is defined` for a boolean candidate.
pub fn rel_similarity(cand: &AlgebraCandidate) -> Result<Vec<Vec<usize>>> {
    require(cand, &[Kind::Boolean], "bool")?;
    let n = cand.n();
    let defined: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| (0..n).any(|z| !cand.coeff(x, y, z).is_zero())).collect())
        .collect();
    let fail = |property, left, right| Error::Similarity {
        relation: "∼",
        property,
        left,
        right,
    };
    for x in 0..n {
        if !defined[x][x] {
            return Err(fail("reflexivity", x, x));
        }
        for y in 0..n {
            if defined[x][y] != defined[y][x] {
                return Err(fail("symmetry", x, y));
            }
            for z in 0..n {
                if defined[x][y] && defined[y][z] && !defined[x][z] {
                    return Err(fail("transitivity", x, z));
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&y| defined[x][y]).collect();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class);
    }
    Ok(classes)
}

/// Splits a boolean Frobenius algebra into commutative groups.
pub fn rel_decompose(cand: &AlgebraCandidate) -> Result<Decomposition> {
    let classes = rel_similarity(cand)?;
    let n = cand.n();
    let summands = classes
        .into_iter()
        .map(|class| {
            let not_group = |element: usize, reason: String| Error::NotAGroup { element, reason };
            let m = class.len();
            let mut table = vec![vec![0; m]; m];
            for (ia, &a) in class.iter().enumerate() {
                for (ib, &b) in class.iter().enumerate() {
                    let products: Vec<usize> = (0..n).filter(|&z| !cand.coeff(a, b, z).is_zero()).collect();
                    match products[..] {
                        [c] if class.contains(&c) => table[ia][ib] = c,
                        [c] => return Err(not_group(a, format!("{a}·{b} = {c} leaves the class"))),
                        [] => return Err(not_group(a, format!("{a}·{b} undefined"))),
                        _ => return Err(not_group(a, format!("{a}·{b} has several values {products:?}"))),
                    }
                }
            }
            let pos = |x: usize| class.iter().position(|&e| e == x).unwrap();
            let mul = |a: usize, b: usize| table[pos(a)][pos(b)];
            for &a in &class {
                for &b in &class {
                    if mul(a, b) != mul(b, a) {
                        return Err(not_group(a, format!("{a}·{b} ≠ {b}·{a}")));
                    }
                    for &c in &class {
                        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                            return Err(not_group(a, format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                        }
                    }
                }
                // Huntington: aS = S (and Sa = S by commutativity)
                let row: BTreeSet<usize> = class.iter().map(|&b| mul(a, b)).collect();
                if row.len() != m {
                    return Err(not_group(a, format!("{a}·S ≠ S")));
                }
            }
            let identity = *class
                .iter()
                .find(|&&e| class.iter().all(|&x| mul(e, x) == x))
                .ok_or_else(|| not_group(class[0], "no identity".into()))?;
            let inverses = class
                .iter()
                .map(|&a| {
                    class
                        .iter()
                        .copied()
                        .find(|&b| mul(a, b) == identity)
                        .ok_or_else(|| not_group(a, "no inverse".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Summand {
                elements: class,
                group_table: table,
                identity,
                inverses,
                weight: Scalar::Bool(true),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        summands,
        radical_dim: 0,
        copyables: None,
    })
}

/// Decomposes a quantale- or nonnegative-real-valued Frobenius algebra.
///
/// The boolean reduct (nonzero ↦ 1) is split into groups, then every nonzero
/// entry is checked against the weight forced by (M) and (F): in the
/// quantale `q² = 1`, so `q = 1`; over the nonnegative reals `1/√d` for a
/// summand of order `d`.
pub fn weighted_decompose(cand: &AlgebraCandidate) -> Result<Decomposition> {
    require(
        cand,
        &[Kind::Quantale, Kind::NonnegReal],
        "quantale_ext_nonneg_real or nonneg_real",
    )?;
    let dom = cand.domain();
    let n = cand.n();
    let reduct = AlgebraCandidate::new(cand.delta().boolean_reduct(), None)?;
    let mut dec = rel_decompose(&reduct)?;
    for s in &mut dec.summands {
        let d = s.order();
        let expected = match dom.kind {
            Kind::Quantale => 1.0,
            _ => 1.0 / (d as f64).sqrt(),
        };
        for (ia, &a) in s.elements.iter().enumerate() {
            for (ib, &b) in s.elements.iter().enumerate() {
                let c = s.group_table[ia][ib];
                let q = cand.coeff(a, b, c);
                let ok = match dom.kind {
                    Kind::Quantale => dom.scalar_eq(dom.mul(q, q)?, dom.one()),
                    _ => dom.scalar_eq(q, Scalar::Real(expected)),
                };
                if !ok {
                    return Err(Error::WeightViolation {
                        row: a * n + b,
                        col: c,
                        value: q.magnitude(),
                        expected,
                        order: d,
                    });
                }
            }
        }
        s.weight = cand.coeff(s.identity, s.identity, s.identity);
    }
    Ok(dec)
}

/// Splits a complex candidate into one-dimensional summands spanned by its
/// copyable points; whatever they do not span is reported as `radical_dim`.
pub fn hilb_decompose(cand: &AlgebraCandidate) -> Result<Decomposition> {
    Ok(hilb_decompose_with(cand, copyables_complex(cand)?))
}

/// As [`hilb_decompose`], from copyables already found.
pub fn hilb_decompose_with(cand: &AlgebraCandidate, copyables: CopyableSet) -> Decomposition {
    let count = copyables.points.len();
    let one = ScalarDomain::complex().one();
    let summands = (0..count)
        .map(|k| Summand {
            elements: vec![k],
            group_table: vec![vec![k]],
            identity: k,
            inverses: vec![k],
            weight: one,
        })
        .collect();
    Decomposition {
        summands,
        radical_dim: cand.n() - count,
        copyables: Some(copyables),
    }
}

/// Picks the decomposition matching the candidate's semiring.
pub fn decompose(cand: &AlgebraCandidate) -> Result<Decomposition> {
    match cand.domain().kind {
        Kind::Boolean => rel_decompose(cand),
        Kind::Complex => hilb_decompose(cand),
        Kind::NonnegReal | Kind::Quantale => weighted_decompose(cand),
    }
}

/// Numerical rank of the matrix whose columns are the copyable points.
pub fn copyable_rank(points: &[Vec<Complex64>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let n = points[0].len();
    let m = DMatrix::from_fn(n, points.len(), |r, c| points[c][r]);
    m.rank(1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_h, solve_star};
    use crate::builders::{
        counterexample, direct_sum, disjoint_groups_rel, from_basis, group_algebra, group_algebra_weighted,
        parse_group_list, GroupSpec,
    };

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-9)
    }

    #[test]
    fn basis_copyables_are_the_standard_basis() {
        let set = copyables_complex(&from_basis(3)).unwrap();
        assert_eq!(set.points.len(), 3);
        // sorted lexicographically: e_2 < e_1 < e_0 coordinatewise
        let e = |i: usize| (0..3).map(|j| c(f64::from(u8::from(i == j)), 0.0)).collect::<Vec<_>>();
        assert!(close(&set.points[0], &e(2)));
        assert!(close(&set.points[2], &e(0)));
        assert!(set.gram_residual < 1e-12);
    }

    /// Closed form: with c = (x, y), c ⊗ c = (x², xy, xy, y²) and
    /// δ(c) = w(x, y, y, x), so x² = y² = wx and xy = wy, giving x = w, y = ±w.
    #[test]
    fn z2_copyables_match_the_closed_form() {
        let cand = group_algebra(&GroupSpec::cyclic(2), ScalarDomain::complex()).unwrap();
        let w = 1.0 / 2f64.sqrt();
        let expected = [vec![c(w, 0.0), c(-w, 0.0)], vec![c(w, 0.0), c(w, 0.0)]];
        let set = copyables_complex(&cand).unwrap();
        assert_eq!(set.points.len(), 2);
        for (got, want) in set.points.iter().zip(&expected) {
            assert!(close(got, want), "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn zero_block_counts_as_radical() {
        let zero = AlgebraCandidate::new(
            Mor::zero(
                Obj::new(2),
                Obj::from_dims(vec![2, 2]).unwrap(),
                ScalarDomain::complex(),
            ),
            None,
        )
        .unwrap();
        let cand = direct_sum(&from_basis(1), &zero).unwrap();
        let dec = hilb_decompose(&cand).unwrap();
        assert_eq!(dec.summands.len(), 1);
        assert_eq!(dec.radical_dim, 2);
        assert!(dec.anomaly(1e-9).is_some());

        let only_zero = hilb_decompose(&counterexample("zero_delta").unwrap()).unwrap();
        assert_eq!(only_zero.radical_dim, 2);
    }

    #[test]
    fn similarity_classes() {
        let z2z3 = disjoint_groups_rel(&parse_group_list("Z2+Z3").unwrap()).unwrap();
        assert_eq!(rel_similarity(&z2z3).unwrap(), vec![vec![0, 1], vec![2, 3, 4]]);
        let z4 = group_algebra(&GroupSpec::cyclic(4), ScalarDomain::boolean()).unwrap();
        assert_eq!(rel_similarity(&z4).unwrap(), vec![vec![0, 1, 2, 3]]);
        let triv = disjoint_groups_rel(&parse_group_list("Z1+Z1").unwrap()).unwrap();
        assert_eq!(rel_similarity(&triv).unwrap(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn similarity_rejects_non_frobenius_input() {
        // ∇ = min on {0,1} is total, so ∼ is fine; drop 1·1 to break reflexivity
        let cand = crate::builders::from_partial_op(2, &[Some(0), Some(0), Some(0), None]);
        assert!(matches!(
            rel_similarity(&cand),
            Err(Error::Similarity {
                property: "reflexivity",
                left: 1,
                ..
            })
        ));
        assert!(matches!(
            rel_similarity(&from_basis(2)),
            Err(Error::WrongSemiring { .. })
        ));
    }

    #[test]
    fn rel_decompositions() {
        let z2 = group_algebra(&GroupSpec::cyclic(2), ScalarDomain::boolean()).unwrap();
        let dec = rel_decompose(&z2).unwrap();
        assert_eq!(dec.summands.len(), 1);
        assert_eq!(dec.summands[0].group_table, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(dec.summands[0].identity, 0);

        let z2z3 = disjoint_groups_rel(&parse_group_list("Z2+Z3").unwrap()).unwrap();
        assert_eq!(rel_decompose(&z2z3).unwrap().profile(), vec![2, 3]);

        let v4 = disjoint_groups_rel(&["Z2xZ2".parse().unwrap()]).unwrap();
        let dec = rel_decompose(&v4).unwrap();
        let s = &dec.summands[0];
        assert_eq!(s.identity, 0);
        assert_eq!(s.inverses, s.elements);
    }

    #[test]
    fn semilattice_is_not_a_group() {
        let semi = counterexample("min_semilattice_rel").unwrap();
        assert!(matches!(rel_decompose(&semi), Err(Error::NotAGroup { .. })));
    }

    #[test]
    fn rel_round_trip() {
        let cand = disjoint_groups_rel(&parse_group_list("Z2+Z1+Z3").unwrap()).unwrap();
        let dec = rel_decompose(&cand).unwrap();
        assert_eq!(&dec.to_relation(cand.n()).unwrap(), cand.delta());
    }

    #[test]
    fn weighted_examples() {
        let z2 = group_algebra(&GroupSpec::cyclic(2), ScalarDomain::nonneg_real()).unwrap();
        let dec = weighted_decompose(&z2).unwrap();
        assert_eq!(dec.summands.len(), 1);
        assert!((dec.summands[0].weight.magnitude() - 1.0 / 2f64.sqrt()).abs() < 1e-12);

        let z3 = group_algebra(&GroupSpec::cyclic(3), ScalarDomain::quantale()).unwrap();
        let dec = weighted_decompose(&z3).unwrap();
        assert_eq!(dec.summands[0].weight, Scalar::Real(1.0));

        let heavy = group_algebra_weighted(&GroupSpec::cyclic(2), ScalarDomain::nonneg_real(), 1.0).unwrap();
        let err = weighted_decompose(&heavy).unwrap_err();
        assert!(matches!(err, Error::WeightViolation { order: 2, .. }));
        assert!(err.to_string().starts_with("(M) violated"));
    }

    #[test]
    fn hilb_decompositions() {
        let dec = hilb_decompose(&from_basis(5)).unwrap();
        assert_eq!(dec.summands.len(), 5);
        assert_eq!(dec.radical_dim, 0);
        assert!(dec.anomaly(1e-9).is_none());

        let z4 = hilb_decompose(&group_algebra(&GroupSpec::cyclic(4), ScalarDomain::complex()).unwrap()).unwrap();
        let v4 = hilb_decompose(&group_algebra(&"Z2xZ2".parse().unwrap(), ScalarDomain::complex()).unwrap()).unwrap();
        assert_eq!(z4.profile(), vec![1, 1, 1, 1]);
        assert_eq!(z4.profile(), v4.profile());
        assert_eq!(z4.radical_dim, 0);
    }

    /// The vectors (i^{kg} / 2)_g, one per character of Z₄, checked to be
    /// copyable by evaluating δ(c) = c ⊗ c directly.
    #[test]
    fn z4_characters_are_copyable() {
        let cand = group_algebra(&GroupSpec::cyclic(4), ScalarDomain::complex()).unwrap();
        let d = cand.delta().to_complex_matrix();
        let i = c(0.0, 1.0);
        let mut expected: Vec<Vec<Complex64>> = (0..4u32)
            .map(|k| (0..4u32).map(|g| i.powu(k * g) * 0.5).collect())
            .collect();
        for v in &expected {
            let cv = DVector::from_column_slice(v);
            assert!((&d * &cv - cv.kronecker(&cv)).camax() < 1e-12);
        }
        expected.sort_by_key(|p| rounded_key(p));
        let got = copyables_complex(&cand).unwrap();
        assert_eq!(got.points.len(), 4);
        for (g, e) in got.points.iter().zip(&expected) {
            assert!(close(g, e));
        }
    }

    #[test]
    fn decomposition_star_agrees_with_solved_star() {
        let cases = vec![
            group_algebra(&GroupSpec::cyclic(3), ScalarDomain::complex()).unwrap(),
            group_algebra(&GroupSpec::cyclic(4), ScalarDomain::boolean()).unwrap(),
            disjoint_groups_rel(&parse_group_list("Z2+Z3").unwrap()).unwrap(),
            group_algebra(&"Z2xZ2".parse().unwrap(), ScalarDomain::nonneg_real()).unwrap(),
        ];
        for cand in cases {
            let dec = decompose(&cand).unwrap();
            let induced = dec.induced_star(&cand).unwrap();
            assert!(check_h(&cand, &induced).unwrap().pass);
            let solved = solve_star(&cand).unwrap();
            assert!(solved.matrix.approx_eq(&induced.matrix));
        }
    }

    #[test]
    fn wrong_semirings_are_rejected() {
        let b = group_algebra(&GroupSpec::cyclic(2), ScalarDomain::boolean()).unwrap();
        assert!(matches!(copyables_complex(&b), Err(Error::WrongSemiring { .. })));
        assert!(matches!(weighted_decompose(&b), Err(Error::WrongSemiring { .. })));
    }
}
