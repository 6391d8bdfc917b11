//! Crossed modules of groupoids and their crossed products.
//!
//! A crossed module here is a bundle of groups N over the objects of a base
//! groupoid G, a map phi sending each fiber element to a loop at its object,
//! and a right action x^g of base arrows on fiber elements (pulling fibers
//! back along g, from tgt(g) to src(g)). The validator checks the bundle
//! laws by viewing N as a groupoid with equal source and target, then the
//! action laws, equivariance phi(x^g) = g^{-1} phi(x) g, and the Peiffer
//! law x^{phi(y)} = y^{-1} x y.
//!
//! The crossed product has the fiber elements as objects and arrows (x, g)
//! with src x^g and tgt x, composing as (x, g)(x^g, h) = (x, gh). For the
//! loop bundle with conjugation this is exactly the inertia groupoid.

use crate::error::{Error, Result};
use crate::groupoid::{Arr, FiniteGroupoid, Obj};
use crate::nerve::NerveTuple;
use crate::report::Report;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NElem(pub u32);

#[derive(Debug, Clone)]
pub struct CrossedModule {
    pub base: FiniteGroupoid,
    n_ids: Vec<String>,
    n_obj: Vec<Obj>,
    n_mul: HashMap<(NElem, NElem), NElem>,
    n_units: Vec<Option<NElem>>,
    n_invs: Vec<Option<NElem>>,
    phi: Vec<Arr>,
    action: HashMap<(NElem, Arr), NElem>,
    by_object: Vec<Vec<NElem>>,
}

impl CrossedModule {
    /// Assemble from raw tables: elements as (id, object id), fiber products
    /// as (x, y, xy), phi as (x, arrow id), action as (x, g, result).
    /// Identifier problems are rejected here; law violations are left to
    /// [`validate_crossed_module`]. phi must be total.
    pub fn from_parts(
        base: FiniteGroupoid,
        elems: Vec<(String, String)>,
        mul: Vec<(String, String, String)>,
        phi: Vec<(String, String)>,
        action: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let mut sorted = elems;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid(format!("duplicate fiber element id {}", w[0].0)));
        }
        let mut n_ids = Vec::with_capacity(sorted.len());
        let mut n_obj = Vec::with_capacity(sorted.len());
        for (id, obj) in &sorted {
            let o = base
                .object_ix(obj)
                .ok_or_else(|| Error::Invalid(format!("element {id}: unknown object {obj}")))?;
            n_ids.push(id.clone());
            n_obj.push(o);
        }
        let ix = |id: &str| -> Result<NElem> {
            n_ids
                .binary_search_by(|x| x.as_str().cmp(id))
                .map(|i| NElem(i as u32))
                .map_err(|_| Error::Invalid(format!("unknown fiber element {id}")))
        };

        let mut n_mul = HashMap::with_capacity(mul.len());
        for (x, y, z) in &mul {
            let (x, y, z) = (ix(x)?, ix(y)?, ix(z)?);
            if let Some(prev) = n_mul.insert((x, y), z) {
                if prev != z {
                    return Err(Error::Invalid(format!(
                        "fiber product ({}, {}) defined twice with different results",
                        n_ids[x.0 as usize], n_ids[y.0 as usize]
                    )));
                }
            }
        }

        let mut phi_map: Vec<Option<Arr>> = vec![None; n_ids.len()];
        for (x, g) in &phi {
            let xi = ix(x)?;
            let a = base
                .arrow_ix(g)
                .ok_or_else(|| Error::Invalid(format!("phi({x}): unknown arrow {g}")))?;
            if let Some(prev) = phi_map[xi.0 as usize] {
                if prev != a {
                    return Err(Error::Invalid(format!("phi({x}) defined twice")));
                }
            }
            phi_map[xi.0 as usize] = Some(a);
        }
        let phi = phi_map
            .into_iter()
            .enumerate()
            .map(|(i, a)| a.ok_or_else(|| Error::Invalid(format!("phi missing for {}", n_ids[i]))))
            .collect::<Result<Vec<Arr>>>()?;

        let mut action_map = HashMap::with_capacity(action.len());
        for (x, g, y) in &action {
            let xi = ix(x)?;
            let a = base
                .arrow_ix(g)
                .ok_or_else(|| Error::Invalid(format!("action ({x}, {g}): unknown arrow {g}")))?;
            let yi = ix(y)?;
            if let Some(prev) = action_map.insert((xi, a), yi) {
                if prev != yi {
                    return Err(Error::Invalid(format!(
                        "action ({x}, {g}) defined twice with different results"
                    )));
                }
            }
        }

        let mut by_object = vec![Vec::new(); base.n_objects()];
        for (i, &o) in n_obj.iter().enumerate() {
            by_object[o.0 as usize].push(NElem(i as u32));
        }

        let mut cm = CrossedModule {
            base,
            n_ids,
            n_obj,
            n_mul,
            n_units: Vec::new(),
            n_invs: Vec::new(),
            phi,
            action: action_map,
            by_object,
        };
        cm.derive_units_and_inverses();
        Ok(cm)
    }

    fn derive_units_and_inverses(&mut self) {
        self.n_units = vec![None; self.base.n_objects()];
        for o in self.base.objects() {
            let fiber = &self.by_object[o.0 as usize];
            self.n_units[o.0 as usize] = fiber
                .iter()
                .copied()
                .find(|&u| {
                    fiber.iter().all(|&x| self.mul(u, x) == Some(x) && self.mul(x, u) == Some(x))
                });
        }
        self.n_invs = vec![None; self.n_ids.len()];
        for x in self.n_elems() {
            let Some(unit) = self.n_units[self.object_of(x).0 as usize] else { continue };
            self.n_invs[x.0 as usize] = self.by_object[self.object_of(x).0 as usize]
                .iter()
                .copied()
                .find(|&y| self.mul(x, y) == Some(unit) && self.mul(y, x) == Some(unit));
        }
    }

    pub fn n_len(&self) -> usize {
        self.n_ids.len()
    }

    pub fn n_elems(&self) -> impl Iterator<Item = NElem> {
        (0..self.n_ids.len() as u32).map(NElem)
    }

    pub fn n_id(&self, x: NElem) -> &str {
        &self.n_ids[x.0 as usize]
    }

    pub fn n_ix(&self, id: &str) -> Option<NElem> {
        self.n_ids.binary_search_by(|x| x.as_str().cmp(id)).ok().map(|i| NElem(i as u32))
    }

    /// The object the element sits over.
    pub fn object_of(&self, x: NElem) -> Obj {
        self.n_obj[x.0 as usize]
    }

    pub fn fiber(&self, o: Obj) -> &[NElem] {
        &self.by_object[o.0 as usize]
    }

    pub fn mul(&self, x: NElem, y: NElem) -> Option<NElem> {
        self.n_mul.get(&(x, y)).copied()
    }

    pub fn try_n_unit(&self, o: Obj) -> Option<NElem> {
        self.n_units[o.0 as usize]
    }

    pub fn n_unit(&self, o: Obj) -> NElem {
        self.try_n_unit(o)
            .unwrap_or_else(|| panic!("fiber over {} has no unit", self.base.oid(o)))
    }

    pub fn try_n_inverse(&self, x: NElem) -> Option<NElem> {
        self.n_invs[x.0 as usize]
    }

    pub fn n_inverse(&self, x: NElem) -> NElem {
        self.try_n_inverse(x)
            .unwrap_or_else(|| panic!("fiber element {} has no inverse", self.n_id(x)))
    }

    pub fn phi(&self, x: NElem) -> Arr {
        self.phi[x.0 as usize]
    }

    /// x^g; defined when the element sits over tgt(g).
    pub fn act(&self, x: NElem, g: Arr) -> Option<NElem> {
        self.action.get(&(x, g)).copied()
    }

    pub fn n_order(&self, x: NElem) -> u64 {
        let unit = self.n_unit(self.object_of(x));
        let mut cur = x;
        let mut n = 1;
        while cur != unit {
            cur = self.mul(x, cur).expect("fiber powers stay defined");
            n += 1;
            assert!(n as usize <= self.n_len() + 1, "fiber power never reached the unit");
        }
        n
    }

    /// x^k for any integer k, reduced through the element's order.
    pub fn n_power(&self, x: NElem, k: &BigInt) -> NElem {
        let order = BigInt::from(self.n_order(x));
        let e = k.mod_floor(&order).to_u64().expect("reduced exponent fits");
        let mut cur = self.n_unit(self.object_of(x));
        for _ in 0..e {
            cur = self.mul(x, cur).expect("fiber powers stay defined");
        }
        cur
    }

    /// N viewed as a groupoid whose arrows are the fiber elements, each a
    /// loop at its object. Lets the groupoid validator check the bundle laws.
    pub fn bundle_groupoid(&self) -> FiniteGroupoid {
        let objects = self.base.objects().map(|o| self.base.oid(o).to_string()).collect();
        let arrows = self
            .n_elems()
            .map(|x| {
                let o = self.base.oid(self.object_of(x)).to_string();
                (self.n_id(x).to_string(), o.clone(), o)
            })
            .collect();
        let compose = self
            .n_mul
            .iter()
            .map(|(&(x, y), &z)| {
                (self.n_id(x).to_string(), self.n_id(y).to_string(), self.n_id(z).to_string())
            })
            .collect();
        FiniteGroupoid::from_parts(objects, arrows, compose)
            .expect("bundle ids mirror validated tables")
    }
}

/* ---------- validation ---------- */

/// Check the bundle, action, equivariance, and Peiffer laws exhaustively.
pub fn validate_crossed_module(cm: &CrossedModule) -> Report {
    let mut r = Report::new(format!(
        "crossed module ({} fiber element(s) over {} object(s))",
        cm.n_len(),
        cm.base.n_objects()
    ));

    let bundle = cm.bundle_groupoid();
    r.absorb("fiber bundle", crate::groupoid::validate_groupoid(&bundle));

    let g = &cm.base;

    r.law("action domain");
    let mut keys: Vec<(NElem, Arr)> = cm.action.keys().copied().collect();
    keys.sort();
    for &(x, garr) in &keys {
        if cm.object_of(x) != g.tgt(garr) {
            r.violation(
                "action domain",
                format!(
                    "{}^{} is defined but the element sits over {}, not tgt = {}",
                    cm.n_id(x),
                    g.aid(garr),
                    g.oid(cm.object_of(x)),
                    g.oid(g.tgt(garr))
                ),
            );
        }
    }

    r.law("action totality");
    r.law("action lands over the source");
    for x in cm.n_elems() {
        for &garr in g.arrows_with_target(cm.object_of(x)) {
            match cm.act(x, garr) {
                None => r.violation(
                    "action totality",
                    format!("{}^{} is undefined", cm.n_id(x), g.aid(garr)),
                ),
                Some(y) => {
                    if cm.object_of(y) != g.src(garr) {
                        r.violation(
                            "action lands over the source",
                            format!(
                                "{}^{} = {} sits over {}, expected {}",
                                cm.n_id(x),
                                g.aid(garr),
                                cm.n_id(y),
                                g.oid(cm.object_of(y)),
                                g.oid(g.src(garr))
                            ),
                        );
                    }
                }
            }
        }
    }

    // the remaining laws build on derived units and inverses; skip them when
    // the bundle is already broken rather than cascade panics
    if !r.is_valid() {
        return r;
    }

    r.law("unit arrows act trivially");
    for x in cm.n_elems() {
        let u = g.unit(cm.object_of(x));
        if cm.act(x, u) != Some(x) {
            r.violation(
                "unit arrows act trivially",
                format!("{}^{} != {}", cm.n_id(x), g.aid(u), cm.n_id(x)),
            );
        }
    }

    r.law("action is functorial: x^(g∘h) = (x^g)^h");
    for x in cm.n_elems() {
        for &garr in g.arrows_with_target(cm.object_of(x)) {
            for &h in g.arrows_with_target(g.src(garr)) {
                let gh = g.compose(garr, h).expect("base arrows compose");
                let stepped = cm.act(x, garr).and_then(|y| cm.act(y, h));
                let direct = cm.act(x, gh);
                if stepped != direct {
                    r.violation(
                        "action is functorial: x^(g∘h) = (x^g)^h",
                        format!("x = {}, g = {}, h = {}", cm.n_id(x), g.aid(garr), g.aid(h)),
                    );
                }
            }
        }
    }

    r.law("action by automorphisms");
    for o in g.objects() {
        for &garr in g.arrows_with_target(o) {
            let u = cm.n_unit(o);
            if cm.act(u, garr) != Some(cm.n_unit(g.src(garr))) {
                r.violation(
                    "action by automorphisms",
                    format!("unit over {} moved under {}", g.oid(o), g.aid(garr)),
                );
            }
            for &x in cm.fiber(o) {
                for &y in cm.fiber(o) {
                    let xy = cm.mul(x, y).expect("fiber product total");
                    let lhs = cm.act(xy, garr);
                    let rhs = cm
                        .act(x, garr)
                        .zip(cm.act(y, garr))
                        .and_then(|(a, b)| cm.mul(a, b));
                    if lhs != rhs {
                        r.violation(
                            "action by automorphisms",
                            format!(
                                "({} {})^{} != {}^{} {}^{}",
                                cm.n_id(x),
                                cm.n_id(y),
                                g.aid(garr),
                                cm.n_id(x),
                                g.aid(garr),
                                cm.n_id(y),
                                g.aid(garr)
                            ),
                        );
                    }
                }
            }
        }
    }

    r.law("phi lands in loops at the element's object");
    for x in cm.n_elems() {
        let p = cm.phi(x);
        if g.src(p) != cm.object_of(x) || g.tgt(p) != cm.object_of(x) {
            r.violation(
                "phi lands in loops at the element's object",
                format!(
                    "phi({}) = {} is {} -> {}, element sits over {}",
                    cm.n_id(x),
                    g.aid(p),
                    g.oid(g.src(p)),
                    g.oid(g.tgt(p)),
                    g.oid(cm.object_of(x))
                ),
            );
        }
    }
    // equivariance and the Peiffer law compose and conjugate through phi, so
    // they only make sense once phi is known to land in loops
    let phi_lands_in_loops = !r
        .violations
        .iter()
        .any(|v| v.law == "phi lands in loops at the element's object");

    r.law("phi is a homomorphism");
    for o in g.objects() {
        if cm.phi(cm.n_unit(o)) != g.unit(o) {
            r.violation(
                "phi is a homomorphism",
                format!("phi of the unit over {} is not the unit arrow", g.oid(o)),
            );
        }
        for &x in cm.fiber(o) {
            for &y in cm.fiber(o) {
                let xy = cm.mul(x, y).expect("fiber product total");
                if Some(cm.phi(xy)) != g.compose(cm.phi(x), cm.phi(y)) {
                    r.violation(
                        "phi is a homomorphism",
                        format!("phi({} {}) != phi({}) phi({})",
                            cm.n_id(x), cm.n_id(y), cm.n_id(x), cm.n_id(y)),
                    );
                }
            }
        }
    }

    if !phi_lands_in_loops {
        return r;
    }

    r.law("equivariance: phi(x^g) = g^{-1} phi(x) g");
    for x in cm.n_elems() {
        for &garr in g.arrows_with_target(cm.object_of(x)) {
            let y = cm.act(x, garr).expect("action total");
            if cm.phi(y) != g.conjugate(cm.phi(x), garr) {
                r.violation(
                    "equivariance: phi(x^g) = g^{-1} phi(x) g",
                    format!("x = {}, g = {}", cm.n_id(x), g.aid(garr)),
                );
            }
        }
    }

    r.law("Peiffer law: x^phi(y) = y^{-1} x y");
    for o in g.objects() {
        for &x in cm.fiber(o) {
            for &y in cm.fiber(o) {
                let lhs = cm.act(x, cm.phi(y)).expect("action total");
                let yinv = cm.n_inverse(y);
                let rhs = cm
                    .mul(cm.mul(yinv, x).expect("fiber product total"), y)
                    .expect("fiber product total");
                if lhs != rhs {
                    r.violation(
                        "Peiffer law: x^phi(y) = y^{-1} x y",
                        format!("x = {}, y = {}", cm.n_id(x), cm.n_id(y)),
                    );
                }
            }
        }
    }

    r
}

/* ---------- constructors ---------- */

/// The loop bundle of g with phi the inclusion and the conjugation action.
/// Its crossed product is the inertia groupoid.
pub fn inertia_cm(g: &FiniteGroupoid) -> CrossedModule {
    let loops = crate::groupoid::loop_space(g);
    let elems = loops
        .iter()
        .map(|&a| (g.aid(a).to_string(), g.oid(g.src(a)).to_string()))
        .collect();
    let mut mul = Vec::new();
    for &a in &loops {
        for &b in &loops {
            if g.src(a) == g.src(b) {
                let c = g.compose(a, b).expect("loops at one object compose");
                mul.push((g.aid(a).to_string(), g.aid(b).to_string(), g.aid(c).to_string()));
            }
        }
    }
    let phi = loops.iter().map(|&a| (g.aid(a).to_string(), g.aid(a).to_string())).collect();
    let mut action = Vec::new();
    for &a in &loops {
        for &garr in g.arrows_with_target(g.src(a)) {
            let conj = g.conjugate(a, garr);
            action.push((g.aid(a).to_string(), g.aid(garr).to_string(), g.aid(conj).to_string()));
        }
    }
    CrossedModule::from_parts(g.clone(), elems, mul, phi, action)
        .expect("loop bundle tables are well formed")
}

/// The identity crossed module of a bundle of groups: N = G itself. Panics
/// when g has a non-loop arrow.
pub fn identity_cm(g: &FiniteGroupoid) -> CrossedModule {
    assert!(
        g.arrows().all(|a| g.is_loop(a)),
        "identity crossed module needs a bundle of groups"
    );
    inertia_cm(g)
}

/// The trivial crossed module: one fiber element e:<object> per object,
/// phi the unit, the action moving units along arrows.
pub fn trivial_cm(g: &FiniteGroupoid) -> CrossedModule {
    let eid = |o: Obj| format!("e:{}", g.oid(o));
    let elems = g.objects().map(|o| (eid(o), g.oid(o).to_string())).collect();
    let mul = g.objects().map(|o| (eid(o), eid(o), eid(o))).collect();
    let phi = g.objects().map(|o| (eid(o), g.aid(g.unit(o)).to_string())).collect();
    let action = g
        .arrows()
        .map(|a| (eid(g.tgt(a)), g.aid(a).to_string(), eid(g.src(a))))
        .collect();
    CrossedModule::from_parts(g.clone(), elems, mul, phi, action)
        .expect("trivial tables are well formed")
}

/* ---------- crossed product ---------- */

/// The crossed product groupoid together with the decoding tables back into
/// the crossed module.
pub struct CrossedProduct {
    pub groupoid: FiniteGroupoid,
    /// Fiber element per product object, aligned with the object table.
    pub object_elem: Vec<NElem>,
    /// (x, g) per product arrow, aligned with the arrow table.
    pub arrow_pair: Vec<(NElem, Arr)>,
    pair_ix: HashMap<(NElem, Arr), Arr>,
}

fn pair_id(cm: &CrossedModule, x: NElem, g: Arr) -> String {
    format!("({},{})", cm.n_id(x), cm.base.aid(g))
}

pub fn crossed_product(cm: &CrossedModule) -> CrossedProduct {
    let g = &cm.base;
    let objects: Vec<String> = cm.n_elems().map(|x| cm.n_id(x).to_string()).collect();

    let mut arrows = Vec::new();
    let mut raw_pairs = Vec::new();
    for x in cm.n_elems() {
        for &garr in g.arrows_with_target(cm.object_of(x)) {
            let src = cm.act(x, garr).expect("action total on a validated module");
            arrows.push((
                pair_id(cm, x, garr),
                cm.n_id(src).to_string(),
                cm.n_id(x).to_string(),
            ));
            raw_pairs.push((x, garr));
        }
    }

    let mut compose = Vec::new();
    for &(x, p) in &raw_pairs {
        let xp = cm.act(x, p).expect("action total");
        for &q in g.arrows_with_target(g.src(p)) {
            // (x, p) ∘ (x^p, q) = (x, p∘q)
            let pq = g.compose(p, q).expect("base arrows compose");
            compose.push((pair_id(cm, x, p), pair_id(cm, xp, q), pair_id(cm, x, pq)));
        }
    }

    let groupoid = FiniteGroupoid::from_parts(objects, arrows, compose)
        .expect("crossed product tables are well formed");
    let mut object_elem = vec![NElem(0); groupoid.n_objects()];
    for x in cm.n_elems() {
        let o = groupoid.object_ix(cm.n_id(x)).expect("product object id");
        object_elem[o.0 as usize] = x;
    }
    let mut arrow_pair = vec![(NElem(0), Arr(0)); groupoid.n_arrows()];
    let mut pair_ix = HashMap::new();
    for &(x, p) in &raw_pairs {
        let a = groupoid.arrow_ix(&pair_id(cm, x, p)).expect("product arrow id");
        arrow_pair[a.0 as usize] = (x, p);
        pair_ix.insert((x, p), a);
    }
    CrossedProduct { groupoid, object_elem, arrow_pair, pair_ix }
}

impl CrossedProduct {
    pub fn pair_arrow(&self, x: NElem, g: Arr) -> Option<Arr> {
        self.pair_ix.get(&(x, g)).copied()
    }
}

/* ---------- flattened nerve tuples ---------- */

/// A nerve tuple of the crossed product in flat form: the leading fiber
/// element plus the base chain. The intermediate fiber elements are forced
/// by x_{i+1} = x_i^{g_i}, so this form is lossless.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatTuple {
    pub x: NElem,
    pub chain: Vec<Arr>,
}

impl FlatTuple {
    pub fn level(&self) -> usize {
        self.chain.len()
    }
}

pub fn flatten(cm: &CrossedModule, cp: &CrossedProduct, t: &NerveTuple) -> FlatTuple {
    match t {
        NerveTuple::Vertex(o) => FlatTuple { x: cp.object_elem[o.0 as usize], chain: Vec::new() },
        NerveTuple::Chain(entries) => {
            let (x0, _) = cp.arrow_pair[entries[0].0 as usize];
            let mut x = x0;
            let mut chain = Vec::with_capacity(entries.len());
            for &e in entries {
                let (xi, gi) = cp.arrow_pair[e.0 as usize];
                assert_eq!(xi, x, "chain fiber elements follow the action");
                chain.push(gi);
                x = cm.act(xi, gi).expect("action total");
            }
            FlatTuple { x: x0, chain }
        }
    }
}

pub fn unflatten(cm: &CrossedModule, cp: &CrossedProduct, flat: &FlatTuple) -> NerveTuple {
    if flat.chain.is_empty() {
        let o = cp
            .groupoid
            .object_ix(cm.n_id(flat.x))
            .expect("fiber element names a product object");
        return NerveTuple::Vertex(o);
    }
    let mut x = flat.x;
    let mut entries = Vec::with_capacity(flat.chain.len());
    for &gi in &flat.chain {
        let arrow = cp.pair_arrow(x, gi).expect("pair exists over the chain");
        entries.push(arrow);
        x = cm.act(x, gi).expect("action total");
    }
    NerveTuple::Chain(entries)
}

/* ---------- the functorial twist rho and the projection pi ---------- */

/// rho(k, (x, g)) = (x, phi(x^k) ∘ g): the integer k acts through the fiber
/// power and phi. Unlike the naive twist this is a functor from the product
/// with the symbolic integers, which `rho_window_check` verifies.
pub fn rho(cm: &CrossedModule, cp: &CrossedProduct, k: &BigInt, arrow: Arr) -> Arr {
    let (x, garr) = cp.arrow_pair[arrow.0 as usize];
    let xk = cm.n_power(x, k);
    let twisted = cm
        .base
        .compose(cm.phi(xk), garr)
        .expect("phi(x^k) is a loop at tgt(g)");
    cp.pair_arrow(x, twisted).expect("twisted pair exists")
}

/// pi(x, g) = g, a functor from the crossed product to the base.
pub fn pi(cp: &CrossedProduct, arrow: Arr) -> Arr {
    cp.arrow_pair[arrow.0 as usize].1
}

/// Window checks: rho(0) is the identity, rho is additive in k, rho is a
/// functor on composable pairs (unit preservation at k = 0 and the
/// composition law with split tags), and pi ∘ rho = phi(x^k) ∘ pi.
pub fn rho_window_check(cm: &CrossedModule, cp: &CrossedProduct, window: i64) -> Report {
    let mut r = Report::new("functorial integer twist on the crossed product");
    let lam = &cp.groupoid;

    r.law("rho(0) is the identity");
    for a in lam.arrows() {
        if rho(cm, cp, &BigInt::zero(), a) != a {
            r.violation("rho(0) is the identity", lam.aid(a).to_string());
        }
    }

    r.law("rho is additive in the integer");
    for k in -window..=window {
        for l in -window..=window {
            let (bk, bl, bkl) = (BigInt::from(k), BigInt::from(l), BigInt::from(k + l));
            for a in lam.arrows() {
                if rho(cm, cp, &bk, rho(cm, cp, &bl, a)) != rho(cm, cp, &bkl, a) {
                    r.violation(
                        "rho is additive in the integer",
                        format!("k = {k}, l = {l}, arrow {}", lam.aid(a)),
                    );
                }
            }
        }
    }

    r.law("rho is a functor on composable pairs");
    for k in -window..=window {
        for l in -window..=window {
            let (bk, bl, bkl) = (BigInt::from(k), BigInt::from(l), BigInt::from(k + l));
            for p in lam.arrows() {
                for &q in lam.arrows_with_target(lam.src(p)) {
                    let pq = lam.compose(p, q).expect("product compose total");
                    let lhs = rho(cm, cp, &bkl, pq);
                    let rhs = lam
                        .compose(rho(cm, cp, &bk, p), rho(cm, cp, &bl, q))
                        .expect("twisted pair stays composable");
                    if lhs != rhs {
                        r.violation(
                            "rho is a functor on composable pairs",
                            format!("k = {k}, l = {l}, pair {} {}", lam.aid(p), lam.aid(q)),
                        );
                    }
                }
            }
        }
    }

    r.law("pi is a functor");
    for p in lam.arrows() {
        for &q in lam.arrows_with_target(lam.src(p)) {
            let pq = lam.compose(p, q).expect("product compose total");
            if Some(pi(cp, pq)) != cm.base.compose(pi(cp, p), pi(cp, q)) {
                r.violation("pi is a functor", format!("{} {}", lam.aid(p), lam.aid(q)));
            }
        }
    }

    r.law("pi after rho twists by phi(x^k)");
    for k in -window..=window {
        let bk = BigInt::from(k);
        for a in lam.arrows() {
            let (x, garr) = cp.arrow_pair[a.0 as usize];
            let expected = cm.base.compose(cm.phi(cm.n_power(x, &bk)), garr);
            if Some(pi(cp, rho(cm, cp, &bk, a))) != expected {
                r.violation(
                    "pi after rho twists by phi(x^k)",
                    format!("k = {k}, arrow {}", lam.aid(a)),
                );
            }
        }
    }

    r
}
