//! Chain-level transgression from base cochains to crossed-product cochains.
//!
//! Two routes produce the same family of maps C^p(G) -> C^{p-1}(N⋊G):
//!
//! 1. a staged pipeline: tag a (p-1)-simplex of the crossed product with the
//!    integer 1, expand along the (1,p-1)-shuffles into p-simplices of the
//!    product with the symbolic integers, push through the functorial twist
//!    rho and the projection pi;
//! 2. closed insertion formulas f_i and (index-shifted) f~_i that splice the
//!    conjugated loop phi(x)^{g_1...g_k} into the base chain.
//!
//! The module implements both and exposes exhaustive comparisons: the staged
//! pipeline equals the closed formula, the two index conventions agree up to
//! one global sign, and the summed map is a cochain map up to one measured
//! global sign. All signs are measured from the data, never assumed.

use crate::cohomology::{coboundary_matrix, cohomology, CohomologyGroup, CohomologySpace};
use crate::crossed::{flatten, pi, rho, CrossedModule, CrossedProduct, FlatTuple};
use crate::error::Result;
use crate::matrix::IntMatrix;
use crate::nerve::{degeneracy, NerveLevel, NerveTuple};
use crate::report::Report;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Which family of insertion maps indexes the transgression sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// sum_{i=0}^{p-1} (-1)^i pullback along f~_i
    Tilde,
    /// sum_{i=1}^{p} (-1)^i pullback along f_i
    F,
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Convention::Tilde => write!(f, "tilde"),
            Convention::F => write!(f, "f"),
        }
    }
}

/* ---------- shuffles ---------- */

/// A (1, p-1)-shuffle, determined by the slot i the single jump lands in.
/// The sign is the parity of the permutation, computed by counting
/// inversions rather than assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shuffle {
    pub p: usize,
    pub i: usize,
    pub sign: i8,
}

fn permutation_sign(one_line: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for a in 0..one_line.len() {
        for b in a + 1..one_line.len() {
            if one_line[a] > one_line[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All p shuffles of type (1, p-1) with their parity signs.
pub fn shuffles(p: usize) -> Vec<Shuffle> {
    (1..=p)
        .map(|i| {
            // one-line image: 1 -> i, the block 2..p fills the rest in order
            let mut line = Vec::with_capacity(p);
            line.push(i);
            line.extend((1..p).map(|k| if k < i { k } else { k + 1 }));
            Shuffle { p, i, sign: permutation_sign(&line) }
        })
        .collect()
}

/* ---------- the staged pipeline ---------- */

/// A nerve tuple of the crossed product tagged with one symbolic integer,
/// the image of iota.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedTuple {
    pub tag: BigInt,
    pub tuple: NerveTuple,
}

/// Tag a crossed-product simplex with the integer 1.
pub fn iota(t: &NerveTuple) -> TaggedTuple {
    TaggedTuple { tag: BigInt::one(), tuple: t.clone() }
}

/// A p-simplex of the nerve of the product with the symbolic integers: one
/// integer tag per chain entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSimplex {
    pub tags: Vec<BigInt>,
    pub chain: NerveTuple,
}

/// The i-th shuffle summand: the tag becomes the single nonzero entry in
/// slot i of the integer chain, and the crossed-product side gains the unit
/// arrow that the slot-(i-1) degeneracy inserts.
pub fn em_summand(cp: &CrossedProduct, i: usize, tagged: &TaggedTuple) -> ProductSimplex {
    let p = tagged.tuple.level() + 1;
    assert!((1..=p).contains(&i), "shuffle slot {i} out of range at level {p}");
    let mut tags = vec![BigInt::zero(); p];
    tags[i - 1] = tagged.tag.clone();
    let chain = degeneracy(&cp.groupoid, &tagged.tuple, i - 1);
    ProductSimplex { tags, chain }
}

/// The full Eilenberg-MacLane expansion: all p summands with parity signs.
pub fn em_map(cp: &CrossedProduct, tagged: &TaggedTuple) -> Vec<(i8, ProductSimplex)> {
    let p = tagged.tuple.level() + 1;
    shuffles(p).into_iter().map(|s| (s.sign, em_summand(cp, s.i, tagged))).collect()
}

/// Push a product simplex through rho entrywise, landing back in the nerve
/// of the crossed product.
pub fn rho_image(cm: &CrossedModule, cp: &CrossedProduct, s: &ProductSimplex) -> NerveTuple {
    let entries = s.chain.entries();
    assert_eq!(entries.len(), s.tags.len(), "tags match the chain length");
    NerveTuple::Chain(
        entries.iter().zip(&s.tags).map(|(&z, k)| rho(cm, cp, k, z)).collect(),
    )
}

/// Project a crossed-product chain to the base entrywise.
pub fn pi_image(cp: &CrossedProduct, t: &NerveTuple) -> NerveTuple {
    NerveTuple::Chain(t.entries().iter().map(|&z| pi(cp, z)).collect())
}

/// Every stage of the composite pi ∘ rho ∘ (shuffle summand) ∘ iota on one
/// input, kept for inspection and for testing against the closed formula.
#[derive(Debug, Clone)]
pub struct PipelineTrace {
    pub input: NerveTuple,
    pub tagged: TaggedTuple,
    pub shuffled: ProductSimplex,
    pub twisted: NerveTuple,
    pub output: NerveTuple,
}

pub fn pipeline(
    cm: &CrossedModule,
    cp: &CrossedProduct,
    i: usize,
    t: &NerveTuple,
) -> PipelineTrace {
    let tagged = iota(t);
    let shuffled = em_summand(cp, i, &tagged);
    let twisted = rho_image(cm, cp, &shuffled);
    let output = pi_image(cp, &twisted);
    PipelineTrace { input: t.clone(), tagged, shuffled, twisted, output }
}

/* ---------- closed insertion formulas ---------- */

/// f_i for 1 <= i <= p: splice phi(x)^{g_1...g_{i-1}} in before g_i.
pub fn f_map(cm: &CrossedModule, i: usize, flat: &FlatTuple) -> NerveTuple {
    let p = flat.level() + 1;
    assert!((1..=p).contains(&i), "insertion slot {i} out of range at level {p}");
    let g = &cm.base;
    let mut conj = cm.phi(flat.x);
    if i >= 2 {
        let mut h = flat.chain[0];
        for &gj in &flat.chain[1..i - 1] {
            h = g.compose(h, gj).expect("chain prefixes compose");
        }
        conj = g.conjugate(conj, h);
    }
    let mut out = Vec::with_capacity(p);
    out.extend_from_slice(&flat.chain[..i - 1]);
    out.push(conj);
    out.extend_from_slice(&flat.chain[i - 1..]);
    debug_assert!(out.windows(2).all(|w| g.src(w[0]) == g.tgt(w[1])));
    NerveTuple::Chain(out)
}

/// f~_i for 0 <= i <= p-1: splice phi(x)^{g_1...g_i} in after g_i.
pub fn f_tilde_map(cm: &CrossedModule, i: usize, flat: &FlatTuple) -> NerveTuple {
    let p = flat.level() + 1;
    assert!(i <= p - 1, "insertion slot {i} out of range at level {p}");
    let g = &cm.base;
    let mut conj = cm.phi(flat.x);
    if i >= 1 {
        let mut h = flat.chain[0];
        for &gj in &flat.chain[1..i] {
            h = g.compose(h, gj).expect("chain prefixes compose");
        }
        conj = g.conjugate(conj, h);
    }
    let mut out = Vec::with_capacity(p);
    out.extend_from_slice(&flat.chain[..i]);
    out.push(conj);
    out.extend_from_slice(&flat.chain[i..]);
    debug_assert!(out.windows(2).all(|w| g.src(w[0]) == g.tgt(w[1])));
    NerveTuple::Chain(out)
}

/* ---------- the transgression matrix ---------- */

/// Matrix of T1: C^p(base) -> C^{p-1}(crossed product) under the chosen
/// convention. Rows are indexed by the crossed product's level-(p-1) cells,
/// columns by the base's level-p cells, both in canonical order.
pub fn transgression_matrix(
    cm: &CrossedModule,
    cp: &CrossedProduct,
    p: usize,
    convention: Convention,
    max_cells: u64,
) -> Result<IntMatrix> {
    assert!(p >= 1, "transgression starts at level 1");
    let base_level = NerveLevel::build(&cm.base, p, max_cells)?;
    let prod_level = NerveLevel::build(&cp.groupoid, p - 1, max_cells)?;
    let mut m = IntMatrix::zeros(prod_level.len(), base_level.len());
    for (row, t) in prod_level.tuples.iter().enumerate() {
        let flat = flatten(cm, cp, t);
        match convention {
            Convention::Tilde => {
                for i in 0..p {
                    let image = f_tilde_map(cm, i, &flat);
                    let col = base_level
                        .index_of(&image)
                        .expect("insertion images are nerve cells");
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    m.add_at(row, col, &sign);
                }
            }
            Convention::F => {
                for i in 1..=p {
                    let image = f_map(cm, i, &flat);
                    let col = base_level
                        .index_of(&image)
                        .expect("insertion images are nerve cells");
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    m.add_at(row, col, &sign);
                }
            }
        }
    }
    Ok(m)
}

/// Apply T1 to a base p-cochain given as a coordinate vector.
pub fn transgress_cochain(matrix: &IntMatrix, cochain: &[BigInt]) -> Vec<BigInt> {
    matrix.mul_vec(cochain)
}

/* ---------- comparisons ---------- */

/// Exhaustive check that the staged pipeline equals the closed formula and
/// that the index-shifted families coincide, for all levels up to pmax.
pub fn pipeline_vs_closed_check(
    cm: &CrossedModule,
    cp: &CrossedProduct,
    pmax: usize,
    max_cells: u64,
) -> Result<Report> {
    let mut r = Report::new(format!("staged pipeline against closed formulas up to level {pmax}"));
    r.law("pipeline output equals the closed formula f_i");
    r.law("index shift: f~_{i-1} = f_i");
    r.law("integer side of each shuffle summand is the degenerate unit chain");
    for p in 1..=pmax {
        let prod_level = NerveLevel::build(&cp.groupoid, p - 1, max_cells)?;
        for t in &prod_level.tuples {
            let flat = flatten(cm, cp, t);
            for i in 1..=p {
                let staged = pipeline(cm, cp, i, t);
                let closed = f_map(cm, i, &flat);
                if staged.output != closed {
                    r.violation(
                        "pipeline output equals the closed formula f_i",
                        format!(
                            "i = {i}, input {}: staged {} vs closed {}",
                            t.display(&cp.groupoid),
                            staged.output.display(&cm.base),
                            closed.display(&cm.base)
                        ),
                    );
                }
                let shifted = f_tilde_map(cm, i - 1, &flat);
                if shifted != closed {
                    r.violation(
                        "index shift: f~_{i-1} = f_i",
                        format!("i = {i}, input {}", t.display(&cp.groupoid)),
                    );
                }
                let expect_tags: Vec<BigInt> = (1..=p)
                    .map(|slot| if slot == i { BigInt::one() } else { BigInt::zero() })
                    .collect();
                if staged.shuffled.tags != expect_tags {
                    r.violation(
                        "integer side of each shuffle summand is the degenerate unit chain",
                        format!("i = {i}, input {}", t.display(&cp.groupoid)),
                    );
                }
            }
        }
    }
    Ok(r)
}

/// Measured pointwise relation between the two T1 conventions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConventionRelation {
    /// f = -(tilde) on every cochain
    AlwaysOpposite,
    /// f = +(tilde) on every cochain
    AlwaysEqual,
    Mixed { witness: String },
}

impl std::fmt::Display for ConventionRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConventionRelation::AlwaysOpposite => write!(f, "f = -(tilde)"),
            ConventionRelation::AlwaysEqual => write!(f, "f = +(tilde)"),
            ConventionRelation::Mixed { witness } => {
                write!(f, "f differs from ±(tilde): {witness}")
            }
        }
    }
}

/// Compare the two convention matrices for every level 1..=pmax.
pub fn convention_relation(
    cm: &CrossedModule,
    cp: &CrossedProduct,
    pmax: usize,
    max_cells: u64,
) -> Result<ConventionRelation> {
    let mut all_equal = true;
    let mut all_opposite = true;
    for p in 1..=pmax {
        let tilde = transgression_matrix(cm, cp, p, Convention::Tilde, max_cells)?;
        let f = transgression_matrix(cm, cp, p, Convention::F, max_cells)?;
        let neg_tilde = tilde.scale(-1);
        if f != tilde {
            all_equal = false;
        }
        if f != neg_tilde {
            all_opposite = false;
        }
        if !all_equal && !all_opposite {
            return Ok(ConventionRelation::Mixed {
                witness: format!("level {p}: the matrices differ by more than a global sign"),
            });
        }
    }
    // a nonzero matrix at any level forces exactly one of the two
    if all_opposite {
        Ok(ConventionRelation::AlwaysOpposite)
    } else {
        Ok(ConventionRelation::AlwaysEqual)
    }
}

/// Verdict for the cochain-map law at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelSign {
    Plus,
    Minus,
    /// Both sides vanish, so the level constrains nothing.
    Both,
    Neither { witness: String },
}

#[derive(Debug, Clone)]
pub struct CochainMapCheck {
    pub convention: Convention,
    /// (p, verdict) for the law T1 ∘ d = s · d ∘ T1 out of level p.
    pub per_level: Vec<(usize, LevelSign)>,
    /// The single consistent sign, when one exists.
    pub global_sign: Option<i8>,
}

impl CochainMapCheck {
    pub fn holds(&self) -> bool {
        self.global_sign.is_some()
    }
}

/// Measure the global sign s with T1(d c) = s · d(T1 c) for every basis
/// cochain (equivalently, as matrices) at levels 1..pmax.
pub fn cochain_map_check(
    cm: &CrossedModule,
    cp: &CrossedProduct,
    pmax: usize,
    convention: Convention,
    max_cells: u64,
) -> Result<CochainMapCheck> {
    assert!(pmax >= 2, "the cochain-map law needs two adjacent transgressions");
    let g = &cm.base;
    let lam = &cp.groupoid;
    let mut per_level = Vec::new();
    for p in 1..pmax {
        let t_here = transgression_matrix(cm, cp, p, convention, max_cells)?;
        let t_up = transgression_matrix(cm, cp, p + 1, convention, max_cells)?;
        let base_p = NerveLevel::build(g, p, max_cells)?;
        let base_up = NerveLevel::build(g, p + 1, max_cells)?;
        let d_base = coboundary_matrix(g, &base_p, &base_up);
        let prod_lo = NerveLevel::build(lam, p - 1, max_cells)?;
        let prod_hi = NerveLevel::build(lam, p, max_cells)?;
        let d_prod = coboundary_matrix(lam, &prod_lo, &prod_hi);

        let lhs = t_up.mul(&d_base);
        let rhs = d_prod.mul(&t_here);
        let plus = lhs == rhs;
        let minus = lhs == rhs.scale(-1);
        let verdict = match (plus, minus) {
            (true, true) => LevelSign::Both,
            (true, false) => LevelSign::Plus,
            (false, true) => LevelSign::Minus,
            (false, false) => {
                let mut witness = String::from("no single sign");
                'outer: for i in 0..lhs.rows() {
                    for j in 0..lhs.cols() {
                        let a = lhs.get(i, j);
                        let b = rhs.get(i, j);
                        if a != b && *a != -b {
                            witness = format!(
                                "entry ({}, {}): T1∘d gives {a}, d∘T1 gives {b}",
                                prod_hi.tuple(i).display(lam),
                                base_p.tuple(j).display(g)
                            );
                            break 'outer;
                        }
                    }
                }
                LevelSign::Neither { witness }
            }
        };
        per_level.push((p, verdict));
    }

    let mut global: Option<i8> = None;
    let mut consistent = true;
    for (_, v) in &per_level {
        let s = match v {
            LevelSign::Plus => Some(1),
            LevelSign::Minus => Some(-1),
            LevelSign::Both => None,
            LevelSign::Neither { .. } => {
                consistent = false;
                None
            }
        };
        if let Some(s) = s {
            match global {
                None => global = Some(s),
                Some(prev) if prev != s => consistent = false,
                _ => {}
            }
        }
    }
    // every level Both leaves the sign unconstrained; report +1 then
    let global_sign = if consistent { Some(global.unwrap_or(1)) } else { None };
    Ok(CochainMapCheck { convention, per_level, global_sign })
}

/* ---------- class-level transgression ---------- */

#[derive(Debug, Clone)]
pub struct TransgressedClass {
    /// The T1 image, a cochain on the crossed product's level p-1.
    pub image: Vec<BigInt>,
    /// Its class coordinates in H^{p-1} of the crossed product.
    pub class_coords: Vec<BigInt>,
    pub group: CohomologyGroup,
}

/// Transgress a p-cocycle on the base to a class in H^{p-1} of the crossed
/// product: check the input is a cocycle, apply T1, check the image is a
/// cocycle, and read off normal-form coordinates.
pub fn transgress_class(
    cm: &CrossedModule,
    cp: &CrossedProduct,
    p: usize,
    cocycle: &[BigInt],
    convention: Convention,
    max_cells: u64,
) -> Result<TransgressedClass> {
    let base_space = cohomology(&cm.base, p, max_cells)?;
    let prod_space = cohomology(&cp.groupoid, p - 1, max_cells)?;
    let matrix = transgression_matrix(cm, cp, p, convention, max_cells)?;
    transgress_class_with(&base_space, &prod_space, &matrix, cocycle)
}

/// The same map with the cohomology spaces and the T1 matrix precomputed,
/// for callers transgressing many cocycles of the same level.
pub fn transgress_class_with(
    base_space: &CohomologySpace,
    prod_space: &CohomologySpace,
    matrix: &IntMatrix,
    cocycle: &[BigInt],
) -> Result<TransgressedClass> {
    base_space.check_cocycle(cocycle)?;
    let image = transgress_cochain(matrix, cocycle);
    prod_space
        .check_cocycle(&image)
        .expect("the transgression of a cocycle is a cocycle");
    let class_coords = prod_space.class_coords(&image)?;
    Ok(TransgressedClass { image, class_coords, group: prod_space.group().clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::{crossed_product, identity_cm, inertia_cm, trivial_cm, unflatten};
    use crate::groupoid::{cyclic, direct_product, pair};

    const CAP: u64 = 1_000_000;

    fn z3_setup() -> (CrossedModule, CrossedProduct) {
        let cm = identity_cm(&cyclic(3));
        let cp = crossed_product(&cm);
        (cm, cp)
    }

    #[test]
    fn regression_transgressed_generators_of_small_cyclic_modules() {
        // recorded values from the first computation; the p = 2 images
        // vanish identically because the normal-form generators happen to
        // be symmetric cochains and the tilde sum antisymmetrizes over
        // abelian identity modules
        let cm = identity_cm(&cyclic(2));
        let cp = crossed_product(&cm);
        let space = cohomology(&cm.base, 2, CAP).unwrap();
        let gen = space.generator_cocycle(0);
        let as_i64: Vec<i64> = gen.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(as_i64, vec![0, 0, 0, 1], "indicator of (r1,r1)");
        let out = transgress_class(&cm, &cp, 2, &gen, Convention::Tilde, CAP).unwrap();
        assert!(out.image.iter().all(|x| x.is_zero()));
        assert_eq!(out.group.to_string(), "0");
        assert!(out.class_coords.is_empty());

        let cm = identity_cm(&cyclic(3));
        let cp = crossed_product(&cm);
        let space = cohomology(&cm.base, 2, CAP).unwrap();
        let gen = space.generator_cocycle(0);
        let as_i64: Vec<i64> = gen.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(as_i64, vec![0, 0, 0, 0, -1, 0, 0, 0, 1]);
        let out = transgress_class(&cm, &cp, 2, &gen, Convention::Tilde, CAP).unwrap();
        assert!(out.image.iter().all(|x| x.is_zero()));
        assert!(out.class_coords.is_empty());
    }

    #[test]
    fn shuffle_signs_follow_parity() {
        let s1 = shuffles(1);
        assert_eq!((s1[0].i, s1[0].sign), (1, 1));
        let s3: Vec<i8> = shuffles(3).iter().map(|s| s.sign).collect();
        assert_eq!(s3, vec![1, -1, 1]);
        for p in 1..=6 {
            for s in shuffles(p) {
                let expect = if (s.i - 1) % 2 == 0 { 1 } else { -1 };
                assert_eq!(s.sign, expect, "parity of the jump to slot {}", s.i);
            }
        }
    }

    #[test]
    fn iota_tags_with_one_and_keeps_the_tuple() {
        let (_, cp) = z3_setup();
        let level = NerveLevel::build(&cp.groupoid, 1, CAP).unwrap();
        for t in &level.tuples {
            let tagged = iota(t);
            assert!(tagged.tag.is_one());
            assert_eq!(&tagged.tuple, t);
        }
    }

    // independent model of the integer-side degeneracies: the nerve of the
    // integers has chains of integers, units are 0, and slots follow the
    // same convention as the groupoid nerve
    fn z_nerve_degeneracy(chain: &[i64], slot: usize) -> Vec<i64> {
        let mut out = Vec::with_capacity(chain.len() + 1);
        if slot == 0 {
            out.push(0);
            out.extend_from_slice(chain);
        } else {
            out.extend_from_slice(&chain[..slot]);
            out.push(0);
            out.extend_from_slice(&chain[slot..]);
        }
        out
    }

    #[test]
    fn integer_side_matches_a_hand_coded_degeneracy_composite() {
        let (_, cp) = z3_setup();
        for p in 1..=4usize {
            let level = NerveLevel::build(&cp.groupoid, p - 1, CAP).unwrap();
            let t = &level.tuples[0];
            for i in 1..=p {
                // sigma_j for ascending j in {1..p} \ {i}, applied in order,
                // written 0-indexed
                let mut z_chain = vec![1i64];
                for j in 0..p {
                    if j != i - 1 {
                        z_chain = z_nerve_degeneracy(&z_chain, j);
                    }
                }
                let summand = em_summand(&cp, i, &iota(t));
                let tags: Vec<i64> = summand
                    .tags
                    .iter()
                    .map(|x| i64::try_from(x).expect("small tags"))
                    .collect();
                assert_eq!(tags, z_chain, "p = {p}, i = {i}");
            }
        }
    }

    #[test]
    fn em_summand_inserts_the_unit_at_the_shuffle_slot() {
        // p = 3, i = 2: pattern (0,1,0) and the unit spliced in after g_1
        let (cm, cp) = z3_setup();
        let level = NerveLevel::build(&cp.groupoid, 2, CAP).unwrap();
        for t in &level.tuples {
            let summand = em_summand(&cp, 2, &iota(t));
            assert_eq!(
                summand.tags,
                vec![BigInt::zero(), BigInt::one(), BigInt::zero()]
            );
            let flat_in = flatten(&cm, &cp, t);
            let flat_out = flatten(&cm, &cp, &summand.chain);
            assert_eq!(flat_out.x, flat_in.x);
            assert_eq!(flat_out.chain[0], flat_in.chain[0]);
            let mid = flat_out.chain[1];
            assert_eq!(mid, cm.base.unit(cm.base.src(flat_in.chain[0])));
            assert_eq!(flat_out.chain[2], flat_in.chain[1]);
        }
    }

    #[test]
    fn em_map_has_p_summands_with_alternating_signs() {
        let (_, cp) = z3_setup();
        for p in 1..=3usize {
            let level = NerveLevel::build(&cp.groupoid, p - 1, CAP).unwrap();
            let expansion = em_map(&cp, &iota(&level.tuples[0]));
            assert_eq!(expansion.len(), p);
            for (k, (sign, _)) in expansion.iter().enumerate() {
                assert_eq!(*sign, if k % 2 == 0 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn pipeline_equals_closed_formula_on_small_modules() {
        let (cm, cp) = z3_setup();
        let report = pipeline_vs_closed_check(&cm, &cp, 4, CAP).unwrap();
        assert!(report.is_valid(), "{report}");

        let tcm = trivial_cm(&pair(2));
        let tcp = crossed_product(&tcm);
        let report = pipeline_vs_closed_check(&tcm, &tcp, 3, CAP).unwrap();
        assert!(report.is_valid(), "{report}");

        let two = direct_product(&cyclic(2), &pair(2));
        let icm = inertia_cm(&two);
        let icp = crossed_product(&icm);
        let report = pipeline_vs_closed_check(&icm, &icp, 3, CAP).unwrap();
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn f_tilde_at_zero_prepends_phi() {
        let (cm, cp) = z3_setup();
        let level = NerveLevel::build(&cp.groupoid, 1, CAP).unwrap();
        for t in &level.tuples {
            let flat = flatten(&cm, &cp, t);
            let image = f_tilde_map(&cm, 0, &flat);
            let entries = image.entries();
            assert_eq!(entries[0], cm.phi(flat.x));
            assert_eq!(entries[1], flat.chain[0]);
        }
    }

    #[test]
    fn trivial_fibers_insert_unit_arrows() {
        let cm = trivial_cm(&pair(2));
        let cp = crossed_product(&cm);
        let level = NerveLevel::build(&cp.groupoid, 1, CAP).unwrap();
        for t in &level.tuples {
            let flat = flatten(&cm, &cp, t);
            for i in 1..=2usize {
                let image = f_map(&cm, i, &flat);
                let inserted = image.entries()[i - 1];
                assert!(cm.base.is_loop(inserted));
                assert_eq!(inserted, cm.base.unit(cm.base.src(inserted)));
            }
        }
    }

    #[test]
    fn level_one_transgression_reads_phi_under_tilde() {
        let (cm, cp) = z3_setup();
        let m = transgression_matrix(&cm, &cp, 1, Convention::Tilde, CAP).unwrap();
        // rows: the 3 objects of the crossed product; cols: the 3 loops of
        // the base; (T1 c)(x) = c(phi(x)) so each row has one +1
        assert_eq!((m.rows(), m.cols()), (3, 3));
        let base_level = NerveLevel::build(&cm.base, 1, CAP).unwrap();
        let prod_level = NerveLevel::build(&cp.groupoid, 0, CAP).unwrap();
        for (row, t) in prod_level.tuples.iter().enumerate() {
            let flat = flatten(&cm, &cp, t);
            let expect_col = base_level
                .index_of(&NerveTuple::Chain(vec![cm.phi(flat.x)]))
                .unwrap();
            for col in 0..3 {
                let want = if col == expect_col { BigInt::one() } else { BigInt::zero() };
                assert_eq!(*m.get(row, col), want);
            }
        }
    }

    #[test]
    fn conventions_are_exact_negatives_of_each_other() {
        let (cm, cp) = z3_setup();
        let relation = convention_relation(&cm, &cp, 3, CAP).unwrap();
        assert_eq!(relation, ConventionRelation::AlwaysOpposite);
        assert_eq!(relation.to_string(), "f = -(tilde)");

        let tcm = trivial_cm(&pair(2));
        let tcp = crossed_product(&tcm);
        let relation = convention_relation(&tcm, &tcp, 3, CAP).unwrap();
        assert_eq!(relation, ConventionRelation::AlwaysOpposite);
    }

    #[test]
    fn transgression_is_a_cochain_map_with_one_measured_sign() {
        let cm = identity_cm(&cyclic(2));
        let cp = crossed_product(&cm);
        for convention in [Convention::Tilde, Convention::F] {
            let check = cochain_map_check(&cm, &cp, 4, convention, CAP).unwrap();
            assert!(check.holds(), "{:?}", check.per_level);
            assert_eq!(check.global_sign, Some(-1), "measured sign under {convention}");
        }
    }

    #[test]
    fn cochain_map_sign_is_stable_across_modules() {
        let modules = [
            identity_cm(&cyclic(3)),
            trivial_cm(&pair(2)),
            inertia_cm(&direct_product(&cyclic(2), &pair(2))),
        ];
        for cm in &modules {
            let cp = crossed_product(cm);
            let check = cochain_map_check(cm, &cp, 3, Convention::Tilde, CAP).unwrap();
            assert!(check.holds(), "{:?}", check.per_level);
            assert_eq!(check.global_sign, Some(-1));
        }
    }

    #[test]
    fn transgressing_zero_gives_the_zero_class() {
        let (cm, cp) = z3_setup();
        let base_level = NerveLevel::build(&cm.base, 2, CAP).unwrap();
        let zero = vec![BigInt::zero(); base_level.len()];
        let out = transgress_class(&cm, &cp, 2, &zero, Convention::Tilde, CAP).unwrap();
        assert!(out.image.iter().all(|x| x.is_zero()));
        assert!(out.class_coords.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn transgression_sends_coboundaries_to_coboundaries() {
        let (cm, cp) = z3_setup();
        for p in 2..=3usize {
            let lo = NerveLevel::build(&cm.base, p - 1, CAP).unwrap();
            let hi = NerveLevel::build(&cm.base, p, CAP).unwrap();
            let d = coboundary_matrix(&cm.base, &lo, &hi);
            for j in 0..lo.len() {
                let mut basis = vec![BigInt::zero(); lo.len()];
                basis[j] = BigInt::one();
                let cob = d.mul_vec(&basis);
                let out = transgress_class(&cm, &cp, p, &cob, Convention::Tilde, CAP).unwrap();
                assert!(
                    out.class_coords.iter().all(|x| x.is_zero()),
                    "coboundary of basis {j} transgressed to a nonzero class at p = {p}"
                );
            }
        }
    }

    #[test]
    fn non_cocycles_are_rejected() {
        let (cm, cp) = z3_setup();
        let base_level = NerveLevel::build(&cm.base, 2, CAP).unwrap();
        let mut not_cocycle = vec![BigInt::zero(); base_level.len()];
        not_cocycle[0] = BigInt::one();
        // the indicator of (r0, r0) is not closed in the bar complex
        let err = transgress_class(&cm, &cp, 2, &not_cocycle, Convention::Tilde, CAP);
        assert!(matches!(err, Err(crate::error::Error::NotACocycle(_))));
    }

    #[test]
    fn flat_and_unflat_inputs_give_the_same_matrix_rows() {
        // the matrix is defined on nerve cells; flattening is internal
        let (cm, cp) = z3_setup();
        let m = transgression_matrix(&cm, &cp, 2, Convention::Tilde, CAP).unwrap();
        let prod_level = NerveLevel::build(&cp.groupoid, 1, CAP).unwrap();
        let base_level = NerveLevel::build(&cm.base, 2, CAP).unwrap();
        for (row, t) in prod_level.tuples.iter().enumerate() {
            let flat = flatten(&cm, &cp, t);
            let again = unflatten(&cm, &cp, &flat);
            assert_eq!(&again, t);
            let mut expect = vec![BigInt::zero(); base_level.len()];
            for i in 0..2usize {
                let col = base_level.index_of(&f_tilde_map(&cm, i, &flat)).unwrap();
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                expect[col] += sign;
            }
            for col in 0..base_level.len() {
                assert_eq!(m.get(row, col), &expect[col]);
            }
        }
    }
}
