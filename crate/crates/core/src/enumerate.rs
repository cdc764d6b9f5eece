//! Exhaustive search over small carriers in Rel and PInj.
//!
//! Boolean comultiplications are generated from their transposes, the
//! multiplications `∇ = Δ†`. Only commutative partial operations are produced,
//! one choice in `{undefined, 0, .., n−1}` per unordered pair, which keeps the
//! space at `(n+1)^(n(n+1)/2)` tables. The classification oracle is
//! [`catalogue`], built independently from group tables.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::axioms::{passes_all, AlgebraCandidate, Axiom};
use crate::builders::{from_partial_op, GroupSpec, GroupTable};
use crate::error::{Error, Result};
use crate::matcat::{Mor, Obj};
use crate::semiring::Kind;

pub const MAX_SIZE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Rel,
    PInj,
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Category> {
        match s.to_ascii_lowercase().as_str() {
            "rel" => Ok(Category::Rel),
            "pinj" => Ok(Category::PInj),
            _ => Err(Error::Format(format!("unknown category {s:?} (expected rel or pinj)"))),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Rel => "rel",
            Category::PInj => "pinj",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub category: Category,
    pub size: usize,
    pub axioms: Vec<Axiom>,
    pub up_to_iso: bool,
}

impl EnumSpec {
    /// Frobenius algebras in Rel: `{A, C, M, F}`.
    pub fn rel(size: usize) -> EnumSpec {
        EnumSpec {
            category: Category::Rel,
            size,
            axioms: vec![Axiom::A, Axiom::C, Axiom::M, Axiom::F],
            up_to_iso: false,
        }
    }

    /// H*-algebras in PInj: `{A, C, M, F, H}`.
    pub fn pinj(size: usize) -> EnumSpec {
        EnumSpec {
            category: Category::PInj,
            size,
            axioms: vec![Axiom::A, Axiom::C, Axiom::M, Axiom::F, Axiom::H],
            up_to_iso: false,
        }
    }

    pub fn with_axioms(mut self, axioms: &[Axiom]) -> EnumSpec {
        self.axioms = axioms.to_vec();
        self
    }
}

fn check_size(n: usize) -> Result<()> {
    if (1..=MAX_SIZE).contains(&n) {
        Ok(())
    } else {
        Err(Error::SizeOutOfRange(n))
    }
}

/// Axioms in the order they are tried: cheap and selective ones first.
fn filter_order(axioms: &[Axiom]) -> Vec<Axiom> {
    const ORDER: [Axiom; 7] = [Axiom::M, Axiom::C, Axiom::A, Axiom::F, Axiom::Fp, Axiom::U, Axiom::H];
    ORDER.into_iter().filter(|a| axioms.contains(a)).collect()
}

/// Row-major bits of a boolean `Δ`.
pub fn relation_bits(cand: &AlgebraCandidate) -> Vec<bool> {
    match cand.delta().as_bools() {
        Some(b) => b.to_vec(),
        None => cand.delta().boolean_reduct().as_bools().expect("boolean").to_vec(),
    }
}

fn sort_canonically(cands: &mut [AlgebraCandidate]) {
    cands.sort_by_cached_key(relation_bits);
}

/// Runs the search an [`EnumSpec`] describes.
pub fn enumerate(spec: &EnumSpec) -> Result<Vec<AlgebraCandidate>> {
    enumerate_with_progress(spec, &|_, _| {})
}

/// As [`enumerate`], calling `progress(done, total)` as chunks of the search
/// space complete.
pub fn enumerate_with_progress(
    spec: &EnumSpec,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<Vec<AlgebraCandidate>> {
    let found = match spec.category {
        Category::Rel => enumerate_rel_inner(spec, progress)?,
        Category::PInj => enumerate_pinj_with(spec.size, &spec.axioms)?,
    };
    if spec.up_to_iso {
        Ok(iso_classes(&found)?.into_iter().map(|c| c.representative).collect())
    } else {
        Ok(found)
    }
}

/// Commutative partial operations on `0..n` whose `Δ = ∇†` passes every
/// axiom in `spec.axioms`, sorted by relation bits.
///
/// When (M) is requested, tables that are not surjective are skipped before
/// any axiom is evaluated: for a single-valued `∇`, `δ†δ = id` says exactly
/// that every element is a product.
pub fn enumerate_rel(spec: &EnumSpec) -> Result<Vec<AlgebraCandidate>> {
    enumerate_rel_inner(spec, &|_, _| {})
}

fn enumerate_rel_inner(spec: &EnumSpec, progress: &(dyn Fn(usize, usize) + Sync)) -> Result<Vec<AlgebraCandidate>> {
    if spec.category != Category::Rel {
        return Err(Error::Format("enumerate_rel needs category rel".into()));
    }
    let n = spec.size;
    check_size(n)?;
    let axioms = filter_order(&spec.axioms);
    let need_surjective = axioms.contains(&Axiom::M);
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let choices = n + 1; // value n means undefined
    let first_values: Vec<usize> = (0..choices).collect();
    let done = AtomicUsize::new(0);

    let chunks: Vec<Result<Vec<AlgebraCandidate>>> = first_values
        .par_iter()
        .map(|&first| {
            let mut out = Vec::new();
            let mut assignment = vec![0usize; cells.len()];
            assignment[0] = first;
            let mut table = vec![None; n * n];
            loop {
                for (&(i, j), &v) in cells.iter().zip(&assignment) {
                    let cell = (v < n).then_some(v);
                    table[i * n + j] = cell;
                    table[j * n + i] = cell;
                }
                let surjective = || {
                    let mut hit = 0u32;
                    for &v in &assignment {
                        if v < n {
                            hit |= 1 << v;
                        }
                    }
                    hit == (1u32 << n) - 1
                };
                if !need_surjective || surjective() {
                    let cand = from_partial_op(n, &table);
                    if passes_all(&cand, &axioms)? {
                        out.push(cand);
                    }
                }
                // odometer over cells 1..
                let mut pos = cells.len();
                loop {
                    if pos == 1 {
                        let d = done.fetch_add(1, Ordering::Relaxed) + 1;
                        progress(d, choices);
                        return Ok(out);
                    }
                    pos -= 1;
                    assignment[pos] += 1;
                    if assignment[pos] < choices {
                        break;
                    }
                    assignment[pos] = 0;
                }
            }
        })
        .collect();

    let mut all = Vec::new();
    for chunk in chunks {
        all.extend(chunk?);
    }
    sort_canonically(&mut all);
    Ok(all)
}

/// H*-algebras in PInj of size `n`, filtered by `{A, C, M, F, H}`.
pub fn enumerate_pinj(n: usize) -> Result<Vec<AlgebraCandidate>> {
    enumerate_pinj_with(n, &EnumSpec::pinj(n).axioms)
}

/// Every `Δ` whose matrix and transpose are both single-valued: each element
/// goes to at most one pair, and distinct elements to distinct pairs.
pub fn enumerate_pinj_with(n: usize, axioms: &[Axiom]) -> Result<Vec<AlgebraCandidate>> {
    check_size(n)?;
    let axioms = filter_order(axioms);
    let pairs = n * n;
    let mut out = Vec::new();
    // image[a] = pairs means a ↦ nothing
    let mut image = vec![0usize; n];
    loop {
        let mut used = vec![false; pairs];
        let injective = image
            .iter()
            .all(|&p| p == pairs || !std::mem::replace(&mut used[p], true));
        if injective {
            let mut bits = vec![false; pairs * n];
            for (a, &p) in image.iter().enumerate() {
                if p < pairs {
                    bits[p * n + a] = true;
                }
            }
            let delta = Mor::from_bools(Obj::new(n), Obj::from_dims(vec![n, n])?, bits)?;
            let cand = AlgebraCandidate::new(delta, None)?;
            if passes_all(&cand, &axioms)? {
                out.push(cand);
            }
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                sort_canonically(&mut out);
                return Ok(out);
            }
            pos -= 1;
            image[pos] += 1;
            if image[pos] <= pairs {
                break;
            }
            image[pos] = 0;
        }
    }
}

/// The diagonal `δ(a) = (a, a)` on `n` points.
pub fn diagonal(n: usize) -> AlgebraCandidate {
    let table: Vec<Option<usize>> = (0..n * n).map(|r| (r / n == r % n).then_some(r / n)).collect();
    from_partial_op(n, &table)
}

/// One realization of a disjoint union of abelian groups on `0..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogueEntry {
    pub blocks: Vec<Vec<usize>>,
    pub groups: Vec<GroupSpec>,
    /// `identities[b]` is the identity element of `blocks[b]`.
    pub identities: Vec<usize>,
    pub candidate: AlgebraCandidate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Catalogue {
    pub n: usize,
    /// Sorted by relation bits, one entry per distinct relation.
    pub entries: Vec<CatalogueEntry>,
}

impl Catalogue {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn relations(&self) -> BTreeSet<Vec<bool>> {
        self.entries.iter().map(|e| relation_bits(&e.candidate)).collect()
    }

    /// Relations found but not catalogued, and catalogued but not found.
    pub fn diff(&self, found: &[AlgebraCandidate]) -> CatalogueDiff {
        diff_relations(&self.relations(), found)
    }

    /// Canonical representatives of the entries' isomorphism classes.
    pub fn iso_representatives(&self) -> Result<BTreeSet<Vec<bool>>> {
        let cands: Vec<AlgebraCandidate> = self.entries.iter().map(|e| e.candidate.clone()).collect();
        Ok(iso_classes(&cands)?
            .iter()
            .map(|c| relation_bits(&c.representative))
            .collect())
    }
}

pub fn diff_relations(expected: &BTreeSet<Vec<bool>>, found: &[AlgebraCandidate]) -> CatalogueDiff {
    let theirs: BTreeSet<Vec<bool>> = found.iter().map(relation_bits).collect();
    CatalogueDiff {
        extra: theirs.difference(expected).cloned().collect(),
        missing: expected.difference(&theirs).cloned().collect(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogueDiff {
    pub extra: Vec<Vec<bool>>,
    pub missing: Vec<Vec<bool>>,
}

impl CatalogueDiff {
    pub fn is_empty(&self) -> bool {
        self.extra.is_empty() && self.missing.is_empty()
    }
}

/// Abelian groups of order `m` for `m ≤ 4`.
fn abelian_groups(m: usize) -> Vec<GroupSpec> {
    match m {
        1 => vec![GroupSpec::cyclic(1)],
        2 => vec![GroupSpec::cyclic(2)],
        3 => vec![GroupSpec::cyclic(3)],
        4 => vec![GroupSpec::cyclic(4), GroupSpec::Cyclic(vec![2, 2])],
        _ => Vec::new(),
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(x: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if x == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(x);
            go(x + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![x]);
        go(x + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// A group law on one block: `(group, labeling)` where `labeling[g]` is the
/// carrier element standing for group element `g`.
struct BlockLaw {
    spec: GroupSpec,
    table: GroupTable,
    labeling: Vec<usize>,
}

/// Every disjoint union of abelian groups on `0..n`, each relation once.
///
/// Built from set partitions and group tables under all labelings, with no
/// reference to the axioms; it serves as the oracle for [`enumerate_rel`].
pub fn catalogue(n: usize) -> Result<Catalogue> {
    check_size(n)?;
    let mut seen = BTreeMap::new();
    for blocks in set_partitions(n) {
        let laws: Vec<Vec<BlockLaw>> = blocks
            .iter()
            .map(|block| {
                abelian_groups(block.len())
                    .into_iter()
                    .flat_map(|spec| {
                        let table = spec.table();
                        permutations(block.len()).into_iter().map(move |p| BlockLaw {
                            spec: spec.clone(),
                            table: table.clone(),
                            labeling: p.iter().map(|&i| block[i]).collect(),
                        })
                    })
                    .collect()
            })
            .collect();
        let mut pick = vec![0usize; blocks.len()];
        'tables: loop {
            let mut bits = vec![false; n * n * n];
            for (b, &choice) in pick.iter().enumerate() {
                let law = &laws[b][choice];
                for (x, &a) in law.labeling.iter().enumerate() {
                    for (y, &c) in law.labeling.iter().enumerate() {
                        let z = law.labeling[law.table.mul[x][y]];
                        bits[(a * n + c) * n + z] = true;
                    }
                }
            }
            if let Entry::Vacant(slot) = seen.entry(bits) {
                let entry = CatalogueEntry {
                    blocks: blocks.clone(),
                    groups: pick.iter().enumerate().map(|(b, &c)| laws[b][c].spec.clone()).collect(),
                    identities: pick
                        .iter()
                        .enumerate()
                        .map(|(b, &c)| laws[b][c].labeling[laws[b][c].table.identity])
                        .collect(),
                    candidate: AlgebraCandidate::new(
                        Mor::from_bools(Obj::new(n), Obj::from_dims(vec![n, n])?, slot.key().clone())?,
                        None,
                    )?,
                };
                slot.insert(entry);
            }
            let mut b = blocks.len();
            loop {
                if b == 0 {
                    break 'tables;
                }
                b -= 1;
                pick[b] += 1;
                if pick[b] < laws[b].len() {
                    break;
                }
                pick[b] = 0;
            }
        }
    }
    Ok(Catalogue {
        n,
        entries: seen.into_values().collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoClass {
    /// The member whose relation, after relabeling, is lexicographically least.
    pub representative: AlgebraCandidate,
    /// Indices into the input list.
    pub members: Vec<usize>,
}

/// `(P ⊗ P) ∘ Δ ∘ P†` for the permutation `x ↦ perm[x]`.
pub fn relabel(cand: &AlgebraCandidate, perm: &[usize]) -> Result<AlgebraCandidate> {
    let n = cand.n();
    let bits = relation_bits(cand);
    let mut out = vec![false; bits.len()];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bits[(a * n + b) * n + c] {
                    out[(perm[a] * n + perm[b]) * n + perm[c]] = true;
                }
            }
        }
    }
    AlgebraCandidate::new(Mor::from_bools(Obj::new(n), Obj::from_dims(vec![n, n])?, out)?, None)
}

/// Groups boolean candidates of one size under relabeling of the carrier.
/// Classes come out sorted by representative.
pub fn iso_classes(cands: &[AlgebraCandidate]) -> Result<Vec<IsoClass>> {
    let Some(first) = cands.first() else {
        return Ok(Vec::new());
    };
    let n = first.n();
    if cands.iter().any(|c| c.n() != n) {
        return Err(Error::MixedSizes);
    }
    if let Some(c) = cands.iter().find(|c| c.domain().kind != Kind::Boolean) {
        return Err(Error::WrongSemiring {
            expected: "bool",
            found: c.domain().kind,
        });
    }
    check_size(n)?;
    let perms = permutations(n);
    let mut classes: BTreeMap<Vec<bool>, IsoClass> = BTreeMap::new();
    for (idx, cand) in cands.iter().enumerate() {
        let mut best: Option<(Vec<bool>, AlgebraCandidate)> = None;
        for p in &perms {
            let moved = relabel(cand, p)?;
            let key = relation_bits(&moved);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, moved));
            }
        }
        let (key, representative) = best.expect("n ≥ 1");
        classes
            .entry(key)
            .or_insert_with(|| IsoClass {
                representative,
                members: Vec::new(),
            })
            .members
            .push(idx);
    }
    Ok(classes.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_axiom;
    use crate::builders::{counterexample, group_algebra};
    use crate::semiring::ScalarDomain;

    #[test]
    fn set_partitions_are_bell_numbers() {
        let bell: Vec<usize> = (1..=5).map(|n| set_partitions(n).len()).collect();
        assert_eq!(bell, vec![1, 2, 5, 15, 52]);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            enumerate_rel(&EnumSpec::rel(0)),
            Err(Error::SizeOutOfRange(0))
        ));
        assert!(matches!(
            enumerate_rel(&EnumSpec::rel(5)),
            Err(Error::SizeOutOfRange(5))
        ));
        assert!(matches!(catalogue(5), Err(Error::SizeOutOfRange(5))));
        assert!(matches!(enumerate_pinj(0), Err(Error::SizeOutOfRange(0))));
    }

    #[test]
    fn single_point() {
        let found = enumerate_rel(&EnumSpec::rel(1)).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(relation_bits(&found[0]), vec![true]);
        assert_eq!(catalogue(1).unwrap().len(), 1);
    }

    /// Hand count for n = 2: {0},{1} as two trivial groups is the diagonal;
    /// Z₂ with identity 0 has 0·0=0, 0·1=1, 1·1=0; with identity 1 the roles
    /// swap. Three relations.
    #[test]
    fn two_points_by_hand() {
        let rel = |ops: [Option<usize>; 4]| relation_bits(&from_partial_op(2, &ops));
        let expected: BTreeSet<Vec<bool>> = [
            rel([Some(0), None, None, Some(1)]),
            rel([Some(0), Some(1), Some(1), Some(0)]),
            rel([Some(1), Some(0), Some(0), Some(1)]),
        ]
        .into_iter()
        .collect();
        assert_eq!(catalogue(2).unwrap().relations(), expected);
        let found: BTreeSet<Vec<bool>> = enumerate_rel(&EnumSpec::rel(2))
            .unwrap()
            .iter()
            .map(relation_bits)
            .collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn dropping_frobenius_admits_the_semilattice() {
        let with_f = enumerate_rel(&EnumSpec::rel(2)).unwrap();
        let without = enumerate_rel(&EnumSpec::rel(2).with_axioms(&[Axiom::A, Axiom::C, Axiom::M])).unwrap();
        assert!(without.len() > with_f.len());
        let semi = relation_bits(&counterexample("min_semilattice_rel").unwrap());
        assert!(without.iter().any(|c| relation_bits(c) == semi));
    }

    #[test]
    fn catalogue_entries_are_frobenius() {
        for n in 1..=3 {
            for e in catalogue(n).unwrap().entries {
                for ax in [Axiom::A, Axiom::C, Axiom::M, Axiom::F] {
                    assert!(check_axiom(&e.candidate, ax).unwrap().pass, "{ax:?} on {:?}", e.blocks);
                }
            }
        }
    }

    /// Labeled disjoint unions of abelian groups. For three points: one way
    /// as singletons, 3 pairings times 2 identity placements for Z₂, and
    /// 3!/|Aut Z₃| = 3 labelings of Z₃, so 10 in all.
    #[test]
    fn catalogue_sizes() {
        let sizes: Vec<usize> = (1..=3).map(|n| catalogue(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 3, 10]);
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_rel(&EnumSpec::rel(3)).unwrap();
        let b = enumerate_rel(&EnumSpec::rel(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn pinj_examples() {
        for n in 1..=3 {
            let found = enumerate_pinj(n).unwrap();
            assert_eq!(found.len(), 1);
            assert_eq!(found[0], diagonal(n));
        }
        let loose = enumerate_pinj_with(2, &[Axiom::M, Axiom::C]).unwrap();
        assert!(loose.len() > 1);
    }

    #[test]
    fn iso_class_examples() {
        let cat2 = catalogue(2).unwrap();
        let z2s: Vec<AlgebraCandidate> = cat2
            .entries
            .iter()
            .filter(|e| e.blocks.len() == 1)
            .map(|e| e.candidate.clone())
            .collect();
        assert_eq!(z2s.len(), 2);
        assert_eq!(iso_classes(&z2s).unwrap().len(), 1);

        let z4 = group_algebra(&GroupSpec::cyclic(4), ScalarDomain::boolean()).unwrap();
        let v4 = group_algebra(&"Z2xZ2".parse().unwrap(), ScalarDomain::boolean()).unwrap();
        assert_eq!(iso_classes(&[z4.clone(), v4]).unwrap().len(), 2);
        let single = iso_classes(&[z4]).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].members, vec![0]);

        assert!(matches!(
            iso_classes(&[diagonal(2), diagonal(3)]),
            Err(Error::MixedSizes)
        ));
    }

    /// Up to isomorphism, size 3 has: three points, a point beside Z₂, and Z₃.
    #[test]
    fn three_points_up_to_iso() {
        let spec = EnumSpec {
            up_to_iso: true,
            ..EnumSpec::rel(3)
        };
        assert_eq!(enumerate(&spec).unwrap().len(), 3);
    }
}
