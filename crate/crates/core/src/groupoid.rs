//! Finite groupoids with explicit composition tables.
//!
//! Composition is written right to left: `compose(a, b)` means "a after b"
//! and is defined exactly when `src(a) == tgt(b)`. Chains `(g_1, ..., g_p)`
//! are therefore composable when `src(g_i) == tgt(g_{i+1})`.
//!
//! Object and arrow identifiers are opaque strings; both tables are kept
//! sorted by id so that every derived enumeration (nerve levels, cochain
//! bases, reports) is deterministic.

use crate::error::{Error, Result};
use crate::report::Report;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arr(pub u32);

#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    object_ids: Vec<String>,
    arrow_ids: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    compose: HashMap<(Arr, Arr), Arr>,
    units: Vec<Option<Arr>>,
    inverses: Vec<Option<Arr>>,
    by_target: Vec<Vec<Arr>>,
    by_source: Vec<Vec<Arr>>,
}

impl FiniteGroupoid {
    /// Assemble a groupoid from raw tables. Identifier problems (duplicates,
    /// unknown references, contradictory compose entries) are rejected here;
    /// violations of the groupoid laws are left for [`validate_groupoid`],
    /// which reports them all with witnesses.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<(String, String, String)>,
        compose: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let mut object_ids = objects;
        object_ids.sort();
        if object_ids.windows(2).any(|w| w[0] == w[1]) {
            let dup = object_ids.windows(2).find(|w| w[0] == w[1]).unwrap();
            return Err(Error::Invalid(format!("duplicate object id {}", dup[0])));
        }
        let object_ix: HashMap<&str, Obj> = object_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), Obj(i as u32)))
            .collect();

        let mut sorted_arrows = arrows;
        sorted_arrows.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = sorted_arrows.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid(format!("duplicate arrow id {}", w[0].0)));
        }
        let mut arrow_ids = Vec::with_capacity(sorted_arrows.len());
        let mut src = Vec::with_capacity(sorted_arrows.len());
        let mut tgt = Vec::with_capacity(sorted_arrows.len());
        for (id, s, t) in &sorted_arrows {
            let s = *object_ix
                .get(s.as_str())
                .ok_or_else(|| Error::Invalid(format!("arrow {id}: unknown source object {s}")))?;
            let t = *object_ix
                .get(t.as_str())
                .ok_or_else(|| Error::Invalid(format!("arrow {id}: unknown target object {t}")))?;
            arrow_ids.push(id.clone());
            src.push(s);
            tgt.push(t);
        }
        let arrow_ix: HashMap<&str, Arr> = arrow_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), Arr(i as u32)))
            .collect();

        let mut table = HashMap::with_capacity(compose.len());
        for (a, b, c) in &compose {
            let look = |id: &str| {
                arrow_ix
                    .get(id)
                    .copied()
                    .ok_or_else(|| Error::Invalid(format!("compose entry mentions unknown arrow {id}")))
            };
            let (a, b, c) = (look(a)?, look(b)?, look(c)?);
            if let Some(prev) = table.insert((a, b), c) {
                if prev != c {
                    return Err(Error::Invalid(format!(
                        "compose({}, {}) defined twice with different results",
                        arrow_ids[a.0 as usize], arrow_ids[b.0 as usize]
                    )));
                }
            }
        }

        let n_obj = object_ids.len();
        let n_arr = arrow_ids.len();
        let mut by_target = vec![Vec::new(); n_obj];
        let mut by_source = vec![Vec::new(); n_obj];
        for i in 0..n_arr {
            by_target[tgt[i].0 as usize].push(Arr(i as u32));
            by_source[src[i].0 as usize].push(Arr(i as u32));
        }

        let mut g = FiniteGroupoid {
            object_ids,
            arrow_ids,
            src,
            tgt,
            compose: table,
            units: vec![None; n_obj],
            inverses: vec![None; n_arr],
            by_target,
            by_source,
        };
        g.derive_units_and_inverses();
        Ok(g)
    }

    fn derive_units_and_inverses(&mut self) {
        for o in self.objects() {
            let candidate = self.loops_at(o).find(|&u| {
                self.by_target[o.0 as usize]
                    .iter()
                    .all(|&b| self.compose(u, b) == Some(b))
                    && self.by_source[o.0 as usize]
                        .iter()
                        .all(|&a| self.compose(a, u) == Some(a))
            });
            self.units[o.0 as usize] = candidate;
        }
        for a in self.arrows() {
            let left = self.units[self.tgt(a).0 as usize];
            let right = self.units[self.src(a).0 as usize];
            let (Some(left), Some(right)) = (left, right) else { continue };
            self.inverses[a.0 as usize] = self
                .arrows()
                .find(|&b| self.compose(a, b) == Some(left) && self.compose(b, a) == Some(right));
        }
    }

    pub fn n_objects(&self) -> usize {
        self.object_ids.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrow_ids.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> {
        (0..self.object_ids.len() as u32).map(Obj)
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arr> {
        (0..self.arrow_ids.len() as u32).map(Arr)
    }

    pub fn oid(&self, o: Obj) -> &str {
        &self.object_ids[o.0 as usize]
    }

    pub fn aid(&self, a: Arr) -> &str {
        &self.arrow_ids[a.0 as usize]
    }

    pub fn object_ix(&self, id: &str) -> Option<Obj> {
        self.object_ids.binary_search_by(|x| x.as_str().cmp(id)).ok().map(|i| Obj(i as u32))
    }

    pub fn arrow_ix(&self, id: &str) -> Option<Arr> {
        self.arrow_ids.binary_search_by(|x| x.as_str().cmp(id)).ok().map(|i| Arr(i as u32))
    }

    pub fn src(&self, a: Arr) -> Obj {
        self.src[a.0 as usize]
    }

    pub fn tgt(&self, a: Arr) -> Obj {
        self.tgt[a.0 as usize]
    }

    /// `a` after `b`; `None` when `src(a) != tgt(b)` or the table lacks the
    /// entry (the validator reports the latter as a totality violation).
    pub fn compose(&self, a: Arr, b: Arr) -> Option<Arr> {
        self.compose.get(&(a, b)).copied()
    }

    pub fn try_unit(&self, o: Obj) -> Option<Arr> {
        self.units[o.0 as usize]
    }

    /// Unit arrow at `o`. Panics when the table admits none; validate first.
    pub fn unit(&self, o: Obj) -> Arr {
        self.try_unit(o)
            .unwrap_or_else(|| panic!("object {} has no unit arrow", self.oid(o)))
    }

    pub fn try_inverse(&self, a: Arr) -> Option<Arr> {
        self.inverses[a.0 as usize]
    }

    /// Inverse arrow. Panics when the table admits none; validate first.
    pub fn inverse(&self, a: Arr) -> Arr {
        self.try_inverse(a)
            .unwrap_or_else(|| panic!("arrow {} has no inverse", self.aid(a)))
    }

    pub fn arrows_with_target(&self, o: Obj) -> &[Arr] {
        &self.by_target[o.0 as usize]
    }

    pub fn arrows_with_source(&self, o: Obj) -> &[Arr] {
        &self.by_source[o.0 as usize]
    }

    pub fn is_loop(&self, a: Arr) -> bool {
        self.src(a) == self.tgt(a)
    }

    pub fn loops_at(&self, o: Obj) -> impl Iterator<Item = Arr> + '_ {
        self.by_target[o.0 as usize].iter().copied().filter(move |&a| self.src(a) == o)
    }

    /// Conjugate `a^g = g^{-1} a g`, defined when `a` is a loop at `tgt(g)`.
    pub fn conjugate(&self, a: Arr, g: Arr) -> Arr {
        debug_assert!(self.is_loop(a) && self.tgt(a) == self.tgt(g));
        let ag = self.compose(a, g).expect("conjugate: a∘g");
        self.compose(self.inverse(g), ag).expect("conjugate: g⁻¹∘(a∘g)")
    }

    /// Order of a loop under composition.
    pub fn loop_order(&self, a: Arr) -> u64 {
        assert!(self.is_loop(a), "loop_order of a non-loop arrow {}", self.aid(a));
        let unit = self.unit(self.src(a));
        let mut cur = a;
        let mut n = 1;
        while cur != unit {
            cur = self.compose(a, cur).expect("loop power stays composable");
            n += 1;
            assert!(n as usize <= self.n_arrows() + 1, "loop power never reached the unit");
        }
        n
    }

    /// `a^k` for a loop `a` and any integer `k`, reduced through the loop's
    /// order so arbitrary-precision exponents stay exact.
    pub fn power(&self, a: Arr, k: &BigInt) -> Arr {
        let order = BigInt::from(self.loop_order(a));
        let e = k.mod_floor(&order).to_u64().expect("reduced exponent fits");
        let mut cur = self.unit(self.src(a));
        for _ in 0..e {
            cur = self.compose(a, cur).expect("loop power stays composable");
        }
        cur
    }

    /// Component index per object, by union over arrows.
    pub fn components(&self) -> Vec<usize> {
        let n = self.n_objects();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for a in self.arrows() {
            let (s, t) = (self.src(a).0 as usize, self.tgt(a).0 as usize);
            let (rs, rt) = (find(&mut parent, s), find(&mut parent, t));
            parent[rs.max(rt)] = rs.min(rt);
        }
        let mut label = BTreeMap::new();
        (0..n)
            .map(|i| {
                let r = find(&mut parent, i);
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect()
    }

    /// Same structure under renamed ids; used to test that computed
    /// invariants do not depend on labels.
    pub fn relabel(
        &self,
        mut object_name: impl FnMut(&str) -> String,
        mut arrow_name: impl FnMut(&str) -> String,
    ) -> Result<FiniteGroupoid> {
        let objects = self.object_ids.iter().map(|o| object_name(o)).collect();
        let arrows = self
            .arrows()
            .map(|a| {
                (
                    arrow_name(self.aid(a)),
                    object_name(self.oid(self.src(a))),
                    object_name(self.oid(self.tgt(a))),
                )
            })
            .collect();
        let compose = self
            .compose
            .iter()
            .map(|(&(a, b), &c)| {
                (arrow_name(self.aid(a)), arrow_name(self.aid(b)), arrow_name(self.aid(c)))
            })
            .collect();
        FiniteGroupoid::from_parts(objects, arrows, compose)
    }
}

/* ---------- builders ---------- */

/// Cyclic group of order n as a one-object groupoid; arrow `r<k>` is the
/// k-th power of the generator.
pub fn cyclic(n: u32) -> FiniteGroupoid {
    assert!(n >= 1);
    let objects = vec!["o".to_string()];
    let arrows = (0..n).map(|k| (format!("r{k}"), "o".to_string(), "o".to_string())).collect();
    let mut compose = Vec::new();
    for a in 0..n {
        for b in 0..n {
            compose.push((format!("r{a}"), format!("r{b}"), format!("r{}", (a + b) % n)));
        }
    }
    FiniteGroupoid::from_parts(objects, arrows, compose).expect("cyclic tables are well formed")
}

/// Symmetric group S_n as a one-object groupoid. Arrows are named by their
/// one-line image word, e.g. `p102` swaps 0 and 1 in S_3.
pub fn symmetric(n: u32) -> FiniteGroupoid {
    assert!((1..=6).contains(&n), "symmetric n supported for 1 <= n <= 6");
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for slot in 0..n {
                let mut q = p.clone();
                q.insert(slot, n - 1);
                out.push(q);
            }
        }
        out
    }
    let name = |p: &[usize]| -> String {
        let word: String = p.iter().map(|d| d.to_string()).collect();
        format!("p{word}")
    };
    let all = perms(n as usize);
    let objects = vec!["o".to_string()];
    let arrows = all.iter().map(|p| (name(p), "o".to_string(), "o".to_string())).collect();
    let mut compose = Vec::new();
    for a in &all {
        for b in &all {
            let ab: Vec<usize> = (0..n as usize).map(|i| a[b[i]]).collect();
            compose.push((name(a), name(b), name(&ab)));
        }
    }
    FiniteGroupoid::from_parts(objects, arrows, compose).expect("symmetric tables are well formed")
}

/// Pair groupoid on n objects: exactly one arrow `a<i>_<j> : x<j> -> x<i>`
/// between any two objects.
pub fn pair(n: u32) -> FiniteGroupoid {
    assert!(n >= 1);
    let objects = (0..n).map(|i| format!("x{i}")).collect();
    let mut arrows = Vec::new();
    let mut compose = Vec::new();
    for i in 0..n {
        for j in 0..n {
            arrows.push((format!("a{i}_{j}"), format!("x{j}"), format!("x{i}")));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                compose.push((format!("a{i}_{j}"), format!("a{j}_{k}"), format!("a{i}_{k}")));
            }
        }
    }
    FiniteGroupoid::from_parts(objects, arrows, compose).expect("pair tables are well formed")
}

/// Disjoint union; ids from part k get the prefix "k:".
pub fn disjoint_union(parts: &[&FiniteGroupoid]) -> FiniteGroupoid {
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let mut compose = Vec::new();
    for (k, g) in parts.iter().enumerate() {
        let tag = |id: &str| format!("{k}:{id}");
        for o in g.objects() {
            objects.push(tag(g.oid(o)));
        }
        for a in g.arrows() {
            arrows.push((tag(g.aid(a)), tag(g.oid(g.src(a))), tag(g.oid(g.tgt(a)))));
        }
        for (&(a, b), &c) in &g.compose {
            compose.push((tag(g.aid(a)), tag(g.aid(b)), tag(g.aid(c))));
        }
    }
    FiniteGroupoid::from_parts(objects, arrows, compose).expect("union of well-formed tables")
}

/// Direct product; ids are "<left>|<right>".
pub fn direct_product(a: &FiniteGroupoid, b: &FiniteGroupoid) -> FiniteGroupoid {
    let tag = |x: &str, y: &str| format!("{x}|{y}");
    let mut objects = Vec::new();
    for oa in a.objects() {
        for ob in b.objects() {
            objects.push(tag(a.oid(oa), b.oid(ob)));
        }
    }
    let mut arrows = Vec::new();
    for fa in a.arrows() {
        for fb in b.arrows() {
            arrows.push((
                tag(a.aid(fa), b.aid(fb)),
                tag(a.oid(a.src(fa)), b.oid(b.src(fb))),
                tag(a.oid(a.tgt(fa)), b.oid(b.tgt(fb))),
            ));
        }
    }
    let mut compose = Vec::new();
    for (&(fa, ga), &ha) in &a.compose {
        for (&(fb, gb), &hb) in &b.compose {
            compose.push((
                tag(a.aid(fa), b.aid(fb)),
                tag(a.aid(ga), b.aid(gb)),
                tag(a.aid(ha), b.aid(hb)),
            ));
        }
    }
    FiniteGroupoid::from_parts(objects, arrows, compose).expect("product of well-formed tables")
}

/* ---------- validation ---------- */

/// Check every groupoid law exhaustively and report all violations with
/// concrete witnesses.
pub fn validate_groupoid(g: &FiniteGroupoid) -> Report {
    let mut r = Report::new(format!(
        "groupoid ({} objects, {} arrows)",
        g.n_objects(),
        g.n_arrows()
    ));

    r.law("composability domain");
    let mut keys: Vec<(Arr, Arr)> = g.compose.keys().copied().collect();
    keys.sort();
    for &(a, b) in &keys {
        if g.src(a) != g.tgt(b) {
            r.violation(
                "composability domain",
                format!(
                    "compose({}, {}) is defined but src({}) = {} != {} = tgt({})",
                    g.aid(a),
                    g.aid(b),
                    g.aid(a),
                    g.oid(g.src(a)),
                    g.oid(g.tgt(b)),
                    g.aid(b)
                ),
            );
        }
    }

    r.law("composability totality");
    for a in g.arrows() {
        for &b in g.arrows_with_target(g.src(a)) {
            if g.compose(a, b).is_none() {
                r.violation(
                    "composability totality",
                    format!("compose({}, {}) is undefined but composable", g.aid(a), g.aid(b)),
                );
            }
        }
    }

    r.law("composite endpoints");
    for &(a, b) in &keys {
        let Some(c) = g.compose(a, b) else { continue };
        if g.src(a) != g.tgt(b) {
            continue; // already reported under the domain law
        }
        if g.src(c) != g.src(b) || g.tgt(c) != g.tgt(a) {
            r.violation(
                "composite endpoints",
                format!(
                    "{}∘{} = {} has endpoints {} -> {}, expected {} -> {}",
                    g.aid(a),
                    g.aid(b),
                    g.aid(c),
                    g.oid(g.src(c)),
                    g.oid(g.tgt(c)),
                    g.oid(g.src(b)),
                    g.oid(g.tgt(a))
                ),
            );
        }
    }

    r.law("associativity");
    for &(a, b) in &keys {
        if g.src(a) != g.tgt(b) {
            continue;
        }
        for &c in g.arrows_with_target(g.src(b)) {
            let left = g.compose(a, b).and_then(|ab| g.compose(ab, c));
            let right = g.compose(b, c).and_then(|bc| g.compose(a, bc));
            if let (Some(l), Some(rr)) = (left, right) {
                if l != rr {
                    r.violation(
                        "associativity",
                        format!(
                            "({}∘{})∘{} = {} but {}∘({}∘{}) = {}",
                            g.aid(a),
                            g.aid(b),
                            g.aid(c),
                            g.aid(l),
                            g.aid(a),
                            g.aid(b),
                            g.aid(c),
                            g.aid(rr)
                        ),
                    );
                }
            }
        }
    }

    r.law("unit existence");
    for o in g.objects() {
        if g.try_unit(o).is_none() {
            r.violation(
                "unit existence",
                format!("object {} has no two-sided unit arrow", g.oid(o)),
            );
        }
    }

    r.law("inverse existence");
    for a in g.arrows() {
        if g.try_unit(g.src(a)).is_none() || g.try_unit(g.tgt(a)).is_none() {
            continue; // reported as missing units already
        }
        if g.try_inverse(a).is_none() {
            r.violation(
                "inverse existence",
                format!("arrow {} has no two-sided inverse", g.aid(a)),
            );
        }
    }

    r
}

/* ---------- loop space and inertia ---------- */

/// All loops of g (arrows with equal source and target), in id order.
pub fn loop_space(g: &FiniteGroupoid) -> Vec<Arr> {
    g.arrows().filter(|&a| g.is_loop(a)).collect()
}

fn pair_id(g: &FiniteGroupoid, x_id: &str, garr: Arr) -> String {
    format!("({},{})", x_id, g.aid(garr))
}

/// The inertia groupoid of g: objects are the loops of g, an arrow (a, g)
/// exists for each loop a and base arrow g with tgt(g) at a's object, with
/// source the conjugate a^g, target a, and (a, g)(a^g, h) = (a, gh).
pub struct Inertia {
    pub groupoid: FiniteGroupoid,
    /// Base loop per inertia object, aligned with the object table.
    pub object_loop: Vec<Arr>,
    /// Base (loop, arrow) per inertia arrow, aligned with the arrow table.
    pub arrow_pair: Vec<(Arr, Arr)>,
    pair_ix: HashMap<(Arr, Arr), Arr>,
}

pub fn inertia_groupoid(g: &FiniteGroupoid) -> Inertia {
    let loops = loop_space(g);
    let objects: Vec<String> = loops.iter().map(|&a| g.aid(a).to_string()).collect();

    let mut arrows = Vec::new();
    let mut raw_pairs = Vec::new();
    for &a in &loops {
        let base = g.tgt(a);
        for &garr in g.arrows_with_target(base) {
            let conj = g.conjugate(a, garr);
            arrows.push((
                pair_id(g, g.aid(a), garr),
                g.aid(conj).to_string(),
                g.aid(a).to_string(),
            ));
            raw_pairs.push((a, garr));
        }
    }

    let mut compose = Vec::new();
    for &(a, p) in &raw_pairs {
        let conj = g.conjugate(a, p);
        for &q in g.arrows_with_target(g.src(p)) {
            // (a, p) ∘ (a^p, q) = (a, p∘q)
            let pq = g.compose(p, q).expect("base arrows compose");
            compose.push((
                pair_id(g, g.aid(a), p),
                pair_id(g, g.aid(conj), q),
                pair_id(g, g.aid(a), pq),
            ));
        }
    }

    let groupoid = FiniteGroupoid::from_parts(objects, arrows, compose)
        .expect("inertia tables are well formed");
    let mut object_loop = vec![loops[0]; groupoid.n_objects()];
    for &a in &loops {
        let o = groupoid.object_ix(g.aid(a)).expect("inertia object id");
        object_loop[o.0 as usize] = a;
    }
    let mut arrow_pair = vec![(loops[0], loops[0]); groupoid.n_arrows()];
    let mut pair_ix = HashMap::new();
    for &(a, p) in &raw_pairs {
        let ix = groupoid.arrow_ix(&pair_id(g, g.aid(a), p)).expect("inertia arrow id");
        arrow_pair[ix.0 as usize] = (a, p);
        pair_ix.insert((a, p), ix);
    }
    Inertia { groupoid, object_loop, arrow_pair, pair_ix }
}

impl Inertia {
    pub fn pair_arrow(&self, a: Arr, p: Arr) -> Option<Arr> {
        self.pair_ix.get(&(a, p)).copied()
    }
}

/// The integers act on inertia arrows by k · (a, g) = (a, a^k ∘ g).
pub fn z_action_on_inertia_arrow(
    base: &FiniteGroupoid,
    inertia: &Inertia,
    k: &BigInt,
    arrow: Arr,
) -> Arr {
    let (a, garr) = inertia.arrow_pair[arrow.0 as usize];
    let ak = base.power(a, k);
    let composed = base.compose(ak, garr).expect("a^k ∘ g composable");
    inertia.pair_arrow(a, composed).expect("twisted arrow exists")
}

/// A composable pair of inertia arrows on which some k in the window fails
/// k·(pq) = (k·p)(k·q), witnessing that the integer action does not act by
/// functors.
#[derive(Debug, Clone)]
pub struct ActionFunctorialityFailure {
    pub k: BigInt,
    pub p: Arr,
    pub q: Arr,
    pub twisted_product: Arr,
    pub product_twisted: Arr,
}

pub fn find_action_functoriality_failure(
    base: &FiniteGroupoid,
    inertia: &Inertia,
    window: i64,
) -> Option<ActionFunctorialityFailure> {
    let lam = &inertia.groupoid;
    for k in -window..=window {
        if k == 0 {
            continue;
        }
        let k = BigInt::from(k);
        for p in lam.arrows() {
            for &q in lam.arrows_with_target(lam.src(p)) {
                let pq = lam.compose(p, q).expect("inertia compose total");
                let lhs = z_action_on_inertia_arrow(base, inertia, &k, pq);
                let kp = z_action_on_inertia_arrow(base, inertia, &k, p);
                let kq = z_action_on_inertia_arrow(base, inertia, &k, q);
                let rhs = lam.compose(kp, kq).expect("twisted pair stays composable");
                if lhs != rhs {
                    return Some(ActionFunctorialityFailure {
                        k,
                        p,
                        q,
                        twisted_product: lhs,
                        product_twisted: rhs,
                    });
                }
            }
        }
    }
    None
}

/// Window check that k · (a, g) is a well-behaved integer action:
/// 0 acts as the identity and increments compose additively.
pub fn z_action_window_check(base: &FiniteGroupoid, inertia: &Inertia, window: i64) -> Report {
    let mut r = Report::new("integer action on inertia arrows");
    r.law("zero acts as identity");
    for arrow in inertia.groupoid.arrows() {
        if z_action_on_inertia_arrow(base, inertia, &BigInt::zero(), arrow) != arrow {
            r.violation(
                "zero acts as identity",
                format!("0 · {} moved", inertia.groupoid.aid(arrow)),
            );
        }
    }
    r.law("additivity over the window");
    for k in -window..=window {
        for l in -window..=window {
            let (bk, bl, bkl) = (BigInt::from(k), BigInt::from(l), BigInt::from(k + l));
            for arrow in inertia.groupoid.arrows() {
                let step = z_action_on_inertia_arrow(base, inertia, &bk, arrow);
                let two = z_action_on_inertia_arrow(base, inertia, &bl, step);
                let direct = z_action_on_inertia_arrow(base, inertia, &bkl, arrow);
                if two != direct {
                    r.violation(
                        "additivity over the window",
                        format!(
                            "({l} · ({k} · {a})) != ({} · {a})",
                            k + l,
                            a = inertia.groupoid.aid(arrow)
                        ),
                    );
                }
            }
        }
    }
    r
}

/* ---------- functors from the integers ---------- */

/// A functor from the integers (one object, addition) into g, recorded by
/// the image of the generator 1; it must be a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZFunctor {
    pub generator_image: Arr,
}

impl ZFunctor {
    pub fn eval(&self, g: &FiniteGroupoid, k: &BigInt) -> Arr {
        g.power(self.generator_image, k)
    }
}

pub fn loop_to_functor(g: &FiniteGroupoid, a: Arr) -> ZFunctor {
    assert!(g.is_loop(a), "only loops induce functors from the integers");
    ZFunctor { generator_image: a }
}

pub fn functor_to_loop(f: &ZFunctor) -> Arr {
    f.generator_image
}

/// The loops of g are in bijection with functors from the integers:
/// round-trips are identities and each candidate functor satisfies the
/// homomorphism law over the window.
pub fn hom_z_bijection_check(g: &FiniteGroupoid, window: i64) -> Report {
    let mut r = Report::new("loops versus functors from the integers");
    r.law("round trip loop -> functor -> loop");
    r.law("functor sends 0 to the unit");
    r.law("functor homomorphism over the window");
    for a in loop_space(g) {
        let f = loop_to_functor(g, a);
        if functor_to_loop(&f) != a {
            r.violation("round trip loop -> functor -> loop", g.aid(a).to_string());
        }
        if f.eval(g, &BigInt::zero()) != g.unit(g.src(a)) {
            r.violation("functor sends 0 to the unit", g.aid(a).to_string());
        }
        for k in -window..=window {
            for l in -window..=window {
                let prod = g
                    .compose(f.eval(g, &BigInt::from(k)), f.eval(g, &BigInt::from(l)))
                    .expect("loop powers compose");
                if prod != f.eval(g, &BigInt::from(k + l)) {
                    r.violation(
                        "functor homomorphism over the window",
                        format!("loop {}: alpha({k})∘alpha({l}) != alpha({})", g.aid(a), k + l),
                    );
                }
            }
        }
    }
    r
}

/* ---------- product with the symbolic integers ---------- */

/// Arrow of Z x G: an integer tag (never enumerated, only carried) and an
/// arrow of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductElement {
    pub k: BigInt,
    pub arrow: Arr,
}

/// The product groupoid Z x G with the integer factor kept symbolic.
pub struct ZProduct<'g> {
    pub g: &'g FiniteGroupoid,
}

impl<'g> ZProduct<'g> {
    pub fn new(g: &'g FiniteGroupoid) -> Self {
        ZProduct { g }
    }

    pub fn src(&self, p: &ProductElement) -> Obj {
        self.g.src(p.arrow)
    }

    pub fn tgt(&self, p: &ProductElement) -> Obj {
        self.g.tgt(p.arrow)
    }

    pub fn compose(&self, p: &ProductElement, q: &ProductElement) -> Option<ProductElement> {
        let arrow = self.g.compose(p.arrow, q.arrow)?;
        Some(ProductElement { k: &p.k + &q.k, arrow })
    }

    pub fn unit(&self, o: Obj) -> ProductElement {
        ProductElement { k: BigInt::zero(), arrow: self.g.unit(o) }
    }

    pub fn inverse(&self, p: &ProductElement) -> ProductElement {
        ProductElement { k: -&p.k, arrow: self.g.inverse(p.arrow) }
    }

    /// Exhaustive unit, inverse, and associativity laws with integer tags
    /// drawn from the window.
    pub fn axioms_window_check(&self, window: i64) -> Report {
        let g = self.g;
        let mut r = Report::new("product with the symbolic integers");
        r.law("unit laws");
        r.law("inverse laws");
        r.law("associativity");
        let tags: Vec<BigInt> = (-window..=window).map(BigInt::from).collect();
        for k in &tags {
            for a in g.arrows() {
                let p = ProductElement { k: k.clone(), arrow: a };
                let left = self.compose(&self.unit(self.tgt(&p)), &p);
                let right = self.compose(&p, &self.unit(self.src(&p)));
                if left.as_ref() != Some(&p) || right.as_ref() != Some(&p) {
                    r.violation("unit laws", format!("({k}, {})", g.aid(a)));
                }
                let inv = self.inverse(&p);
                if self.compose(&p, &inv) != Some(self.unit(self.tgt(&p)))
                    || self.compose(&inv, &p) != Some(self.unit(self.src(&p)))
                {
                    r.violation("inverse laws", format!("({k}, {})", g.aid(a)));
                }
            }
        }
        for k in &tags {
            for l in &tags {
                for m in &tags {
                    for a in g.arrows() {
                        for &b in g.arrows_with_target(g.src(a)) {
                            for &c in g.arrows_with_target(g.src(b)) {
                                let p = ProductElement { k: k.clone(), arrow: a };
                                let q = ProductElement { k: l.clone(), arrow: b };
                                let s = ProductElement { k: m.clone(), arrow: c };
                                let pq_s = self
                                    .compose(&self.compose(&p, &q).unwrap(), &s)
                                    .unwrap();
                                let p_qs = self
                                    .compose(&p, &self.compose(&q, &s).unwrap())
                                    .unwrap();
                                if pq_s != p_qs {
                                    r.violation(
                                        "associativity",
                                        format!(
                                            "({k},{}) ({l},{}) ({m},{})",
                                            g.aid(a),
                                            g.aid(b),
                                            g.aid(c)
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        r
    }
}

/* ---------- tests ---------- */
