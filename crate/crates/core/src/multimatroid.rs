//! Carriers, subtransversals and multimatroids.
//!
//! Elements are numbered globally: class `c` occupies the indices
//! `offset(c) .. offset(c) + size(c)`, slot by slot. A set of elements is a `u64`
//! mask, so a carrier has at most 64 elements. Every algorithm goes through the
//! rank oracle [`Multimatroid::rank`], which is backed either by a sheltering
//! matroid on the whole ground set or by an explicit circuit list.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::bits::{iter_bits, low_mask, pdep, pext, sort_lex};
use crate::matroid::Matroid;
use crate::{exec, limits, Error, Result};

pub const SLOT_NAMES: [char; 4] = ['a', 'b', 'c', 'd'];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Carrier {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl Carrier {
    pub fn new(sizes: Vec<usize>) -> Result<Carrier> {
        if sizes.contains(&0) {
            return Err(Error::Invalid("skew classes must be nonempty".into()));
        }
        limits::check("carrier elements", sizes.iter().sum(), 64)?;
        let offsets = sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        Ok(Carrier { sizes, offsets })
    }

    /// The (ℓ, k)-carrier.
    pub fn uniform(order: usize, k: usize) -> Result<Carrier> {
        Carrier::new(vec![k; order])
    }

    pub fn order(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn max_class_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn all(&self) -> u64 {
        low_mask(self.total())
    }

    pub fn elem(&self, class: usize, slot: usize) -> usize {
        debug_assert!(slot < self.sizes[class]);
        self.offsets[class] + slot
    }

    pub fn class_of(&self, e: usize) -> usize {
        self.offsets.partition_point(|&o| o <= e) - 1
    }

    pub fn slot_of(&self, e: usize) -> usize {
        e - self.offsets[self.class_of(e)]
    }

    pub fn class_mask(&self, c: usize) -> u64 {
        low_mask(self.sizes[c]) << self.offsets[c]
    }

    /// Union of the classes selected by the bits of `classes`.
    pub fn union_of_classes(&self, classes: u64) -> u64 {
        iter_bits(classes).fold(0, |m, c| m | self.class_mask(c))
    }

    /// Classes meeting `x`, as a class mask.
    pub fn classes_touched(&self, x: u64) -> u64 {
        (0..self.order()).filter(|&c| x & self.class_mask(c) != 0).fold(0, |m, c| m | 1 << c)
    }

    /// Sc(W): the classes containing at least two elements of `w`.
    pub fn sc(&self, w: u64) -> u64 {
        (0..self.order()).filter(|&c| (w & self.class_mask(c)).count_ones() >= 2).fold(0, |m, c| m | 1 << c)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.sizes.iter().all(|&s| s >= 2)
    }

    pub fn is_subtransversal(&self, x: u64) -> bool {
        x & !self.all() == 0 && self.sc(x) == 0
    }

    pub fn is_transversal(&self, x: u64) -> bool {
        self.is_subtransversal(x) && x.count_ones() as usize == self.order()
    }

    /// The union of whole classes selected by `x`, if `x` is one.
    pub fn is_class_union(&self, x: u64) -> bool {
        self.union_of_classes(self.classes_touched(x)) == x
    }

    pub fn transversal_count(&self) -> u64 {
        self.sizes.iter().map(|&s| s as u64).product()
    }

    /// Transversals in mixed radix with class 0 most significant, which is lexicographic order.
    pub fn transversal(&self, mut idx: u64) -> u64 {
        let mut m = 0;
        for c in (0..self.order()).rev() {
            let k = self.sizes[c] as u64;
            m |= 1 << (self.offsets[c] as u64 + idx % k);
            idx /= k;
        }
        m
    }

    pub fn transversals(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.transversal_count()).map(move |i| self.transversal(i))
    }

    pub fn subtransversal_count(&self) -> u64 {
        self.sizes.iter().map(|&s| s as u64 + 1).product()
    }

    /// Subtransversals in base (size + 1), digit 0 meaning the class is skipped.
    pub fn subtransversal(&self, mut idx: u64) -> u64 {
        let mut m = 0;
        for c in (0..self.order()).rev() {
            let k = self.sizes[c] as u64 + 1;
            let d = idx % k;
            if d > 0 {
                m |= 1 << (self.offsets[c] as u64 + d - 1);
            }
            idx /= k;
        }
        m
    }

    pub fn subtransversals(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.subtransversal_count()).map(move |i| self.subtransversal(i))
    }

    /// Number of transversals of all classes but `c`.
    pub fn near_transversal_count(&self, c: usize) -> u64 {
        self.transversal_count() / self.sizes[c] as u64
    }

    /// The `idx`-th transversal of the classes other than `c`.
    pub fn near_transversal(&self, c: usize, mut idx: u64) -> u64 {
        let mut m = 0;
        for d in (0..self.order()).rev().filter(|&d| d != c) {
            let k = self.sizes[d] as u64;
            m |= 1 << (self.offsets[d] as u64 + idx % k);
            idx /= k;
        }
        m
    }

    /// Carrier of the elements in `keep`, with classes renumbered in order.
    pub fn restrict(&self, keep: u64) -> Carrier {
        let sizes = (0..self.order())
            .map(|c| (keep & self.class_mask(c)).count_ones() as usize)
            .filter(|&s| s > 0)
            .collect();
        Carrier::new(sizes).expect("restriction of a valid carrier")
    }

    pub fn elem_label(&self, e: usize) -> String {
        format!("{}{}", self.class_of(e), SLOT_NAMES[self.slot_of(e)])
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.total()).map(|e| self.elem_label(e)).collect()
    }

    pub fn format_set(&self, x: u64) -> String {
        let parts: Vec<String> = iter_bits(x).map(|e| self.elem_label(e)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MmRealization {
    /// Sheltered by a matroid on the whole ground set, indexed globally.
    Sheltered(Matroid),
    /// Explicit circuits, in canonical order.
    Circuits(Vec<u64>),
}

#[derive(Clone)]
pub struct Multimatroid {
    carrier: Carrier,
    real: MmRealization,
    circuit_cache: OnceLock<Vec<u64>>,
}

impl fmt::Debug for Multimatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multimatroid")
            .field("sizes", &self.carrier.sizes)
            .field("realization", &self.real)
            .finish()
    }
}

/// Witness for a failed multimatroid check: near-transversal S and two elements
/// of the missing class that both change the nullity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultimatroidViolation {
    pub s: u64,
    pub x1: usize,
    pub x2: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TightViolation {
    NotMultimatroid(MultimatroidViolation),
    /// Near-transversal whose missing class has no element raising the nullity.
    NoCircuit { s: u64 },
}

/// Class and slot bijection from one carrier onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub class_map: Vec<usize>,
    pub slot_maps: Vec<Vec<usize>>,
}

impl Isomorphism {
    pub fn map_element(&self, from: &Carrier, to: &Carrier, e: usize) -> usize {
        let c = from.class_of(e);
        to.elem(self.class_map[c], self.slot_maps[c][from.slot_of(e)])
    }

    pub fn map_set(&self, from: &Carrier, to: &Carrier, x: u64) -> u64 {
        iter_bits(x).fold(0, |m, e| m | 1 << self.map_element(from, to, e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RestrictMode {
    Restrict,
    Delete,
}

/// Minimal sets `S` with `rank(S) < |S|` among the subtransversals.
fn circuits_of_rank_fn<F>(carrier: &Carrier, rank: F) -> Vec<u64>
where
    F: Fn(u64) -> usize + Sync + Send,
{
    let subs: Vec<u64> = exec::filter_range(carrier.subtransversal_count(), |i| {
        let s = carrier.subtransversal(i);
        let size = s.count_ones() as usize;
        s != 0 && rank(s) + 1 == size && iter_bits(s).all(|e| rank(s & !(1 << e)) + 1 == size)
    });
    let mut out: Vec<u64> = subs.into_iter().map(|i| carrier.subtransversal(i)).collect();
    sort_lex(&mut out);
    out
}

fn xor_span(gens: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &g in gens {
        let r = basis.iter().fold(g, |v, &b| v.min(v ^ b));
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    (0..1u64 << basis.len()).map(|c| iter_bits(c).fold(0, |s, k| s ^ basis[k])).collect()
}

impl Multimatroid {
    pub fn sheltered(carrier: Carrier, m: Matroid) -> Result<Multimatroid> {
        if m.len() != carrier.total() {
            return Err(Error::CarrierMismatch(format!(
                "sheltering matroid has {} elements, carrier has {}",
                m.len(),
                carrier.total()
            )));
        }
        Ok(Multimatroid { carrier, real: MmRealization::Sheltered(m), circuit_cache: OnceLock::new() })
    }

    /// A semi-multimatroid from its circuits; the matroid axioms are checked per transversal.
    pub fn from_circuits(carrier: Carrier, circuits: Vec<u64>) -> Result<Multimatroid> {
        let mut circuits = circuits;
        sort_lex(&mut circuits);
        circuits.dedup();
        for &c in &circuits {
            if c == 0 || !carrier.is_subtransversal(c) {
                return Err(Error::Invalid(format!("circuit {} is not a nonempty subtransversal", carrier.format_set(c))));
            }
        }
        for (i, &a) in circuits.iter().enumerate() {
            for &b in &circuits[i + 1..] {
                if a & b == a || a & b == b {
                    return Err(Error::Invalid("circuits do not form an antichain".into()));
                }
                if carrier.is_subtransversal(a | b) {
                    for e in iter_bits(a & b) {
                        let rest = (a | b) & !(1 << e);
                        if !circuits.iter().any(|&c| c & !rest == 0) {
                            return Err(Error::Invalid("circuit elimination fails inside a transversal".into()));
                        }
                    }
                }
            }
        }
        Ok(Multimatroid { carrier, real: MmRealization::Circuits(circuits), circuit_cache: OnceLock::new() })
    }

    /// The multimatroid with rank function `rank` on subtransversals, stored by circuits.
    pub fn from_rank_fn<F>(carrier: Carrier, rank: F) -> Result<Multimatroid>
    where
        F: Fn(u64) -> usize + Sync + Send,
    {
        check_enumerable(&carrier)?;
        let circuits = circuits_of_rank_fn(&carrier, rank);
        Ok(Multimatroid { carrier, real: MmRealization::Circuits(circuits), circuit_cache: OnceLock::new() })
    }

    pub fn empty() -> Multimatroid {
        Multimatroid::from_circuits(Carrier::new(vec![]).expect("empty carrier"), vec![]).expect("empty")
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    pub fn realization(&self) -> &MmRealization {
        &self.real
    }

    pub fn sheltering_matroid(&self) -> Option<&Matroid> {
        match &self.real {
            MmRealization::Sheltered(m) => Some(m),
            MmRealization::Circuits(_) => None,
        }
    }

    /// Rank of a subtransversal; no validity check.
    pub fn rank(&self, s: u64) -> usize {
        debug_assert!(self.carrier.is_subtransversal(s));
        match &self.real {
            MmRealization::Sheltered(m) => m.rank(s),
            MmRealization::Circuits(circuits) => {
                let mut ind = 0u64;
                for e in iter_bits(s) {
                    let with = ind | 1 << e;
                    if !circuits.iter().any(|&c| c & !with == 0) {
                        ind = with;
                    }
                }
                ind.count_ones() as usize
            }
        }
    }

    pub fn nullity(&self, s: u64) -> usize {
        s.count_ones() as usize - self.rank(s)
    }

    pub fn rank_checked(&self, s: u64) -> Result<usize> {
        if !self.carrier.is_subtransversal(s) {
            return Err(Error::NotSubtransversal);
        }
        Ok(self.rank(s))
    }

    pub fn nullity_checked(&self, s: u64) -> Result<usize> {
        Ok(s.count_ones() as usize - self.rank_checked(s)?)
    }

    pub fn circuits(&self) -> Result<&[u64]> {
        if let MmRealization::Circuits(c) = &self.real {
            return Ok(c);
        }
        if let Some(c) = self.circuit_cache.get() {
            return Ok(c);
        }
        check_enumerable(&self.carrier)?;
        let c = circuits_of_rank_fn(&self.carrier, |s| self.rank(s));
        Ok(self.circuit_cache.get_or_init(|| c))
    }

    /// Maximal independent subtransversals, in canonical order.
    pub fn bases(&self) -> Result<Vec<u64>> {
        check_enumerable(&self.carrier)?;
        let car = &self.carrier;
        let hits = exec::filter_range(car.subtransversal_count(), |i| {
            let s = car.subtransversal(i);
            self.nullity(s) == 0
                && (0..car.order())
                    .filter(|&c| s & car.class_mask(c) == 0)
                    .all(|c| iter_bits(car.class_mask(c)).all(|x| self.nullity(s | 1 << x) > 0))
        });
        let mut out: Vec<u64> = hits.into_iter().map(|i| car.subtransversal(i)).collect();
        sort_lex(&mut out);
        Ok(out)
    }

    /// Transversals of nullity zero, in canonical order.
    pub fn transversal_bases(&self) -> Vec<u64> {
        let car = &self.carrier;
        exec::filter_range(car.transversal_count(), |i| self.nullity(car.transversal(i)) == 0)
            .into_iter()
            .map(|i| car.transversal(i))
            .collect()
    }

    pub fn restrict(&self, keep: u64) -> Result<Multimatroid> {
        if keep & !self.carrier.all() != 0 {
            let stray = (keep & !self.carrier.all()).trailing_zeros();
            return Err(Error::UnknownElement(format!("element index {stray}")));
        }
        let carrier = self.carrier.restrict(keep);
        let real = match &self.real {
            MmRealization::Sheltered(m) => {
                MmRealization::Sheltered(m.restrict(keep)?.with_labels(carrier.labels())?)
            }
            MmRealization::Circuits(cs) => {
                let mut v: Vec<u64> = cs.iter().filter(|&&c| c & keep == c).map(|&c| pext(c, keep)).collect();
                sort_lex(&mut v);
                MmRealization::Circuits(v)
            }
        };
        Ok(Multimatroid { carrier, real, circuit_cache: OnceLock::new() })
    }

    pub fn delete(&self, x: u64) -> Result<Multimatroid> {
        if x & !self.carrier.all() != 0 {
            return Err(Error::UnknownElement(format!("element index {}", (x & !self.carrier.all()).trailing_zeros())));
        }
        self.restrict(self.carrier.all() & !x)
    }

    pub fn restrict_delete(&self, x: u64, mode: RestrictMode) -> Result<Multimatroid> {
        match mode {
            RestrictMode::Restrict => self.restrict(x),
            RestrictMode::Delete => self.delete(x),
        }
    }

    /// Z|X: classes disjoint from X survive, with r'(S) = r(S ∪ X) − r(X).
    pub fn minor(&self, x: u64) -> Result<Multimatroid> {
        if !self.carrier.is_subtransversal(x) {
            return Err(Error::NotSubtransversal);
        }
        let touched = self.carrier.union_of_classes(self.carrier.classes_touched(x));
        let keep = self.carrier.all() & !touched;
        let carrier = self.carrier.restrict(keep);
        match &self.real {
            MmRealization::Sheltered(m) => {
                let minor = m.minor(x, touched & !x)?.with_labels(carrier.labels())?;
                Multimatroid::sheltered(carrier, minor)
            }
            MmRealization::Circuits(_) => {
                let rx = self.rank(x);
                Multimatroid::from_rank_fn(carrier, |s| self.rank(pdep(s, keep) | x) - rx)
            }
        }
    }

    /// Global indices that survive in `minor(x)`, in order.
    pub fn minor_kept(&self, x: u64) -> u64 {
        self.carrier.all() & !self.carrier.union_of_classes(self.carrier.classes_touched(x))
    }

    /// Condition: at most one x ∈ ω changes the nullity of a near-transversal S.
    /// Cross-checked against the circuit form: every order-one minor has at most one circuit.
    pub fn is_multimatroid(&self) -> Result<Option<MultimatroidViolation>> {
        check_enumerable(&self.carrier)?;
        let by_rank = self.scan_near_transversals(|s, class| {
            let n = self.nullity(s);
            let mut moving = iter_bits(class).filter(|&x| self.nullity(s | 1 << x) != n);
            match (moving.next(), moving.next()) {
                (Some(x1), Some(x2)) => Some(MultimatroidViolation { s, x1, x2 }),
                _ => None,
            }
        });
        let circuits = self.circuits()?;
        let by_circuits = self.scan_near_transversals(|s, class| {
            let mut loops = self.minor_loops(circuits, s, class);
            match (loops.next(), loops.next()) {
                (Some(x1), Some(x2)) => Some(MultimatroidViolation { s, x1, x2 }),
                _ => None,
            }
        });
        if by_rank.is_some() != by_circuits.is_some() {
            return Err(Error::InternalInconsistency(format!(
                "multimatroid conditions disagree (rank: {by_rank:?}, circuits: {by_circuits:?})"
            )));
        }
        Ok(by_rank)
    }

    /// The defining condition: no union of two circuits contains exactly one skew pair.
    pub fn is_multimatroid_by_definition(&self) -> Result<bool> {
        let cs = self.circuits()?;
        Ok(cs.iter().enumerate().all(|(i, &a)| {
            cs[i + 1..].iter().all(|&b| {
                let u = a | b;
                let pairs: u32 = (0..self.order())
                    .map(|c| {
                        let k = (u & self.carrier.class_mask(c)).count_ones();
                        k * k.saturating_sub(1) / 2
                    })
                    .sum();
                pairs != 1
            })
        }))
    }

    /// Tightness: exactly one element of each missing class raises the nullity of a
    /// near-transversal. Cross-checked against "every order-one minor has a circuit".
    pub fn is_tight(&self) -> Result<Option<TightViolation>> {
        if let Some(v) = self.is_multimatroid()? {
            return Ok(Some(TightViolation::NotMultimatroid(v)));
        }
        let by_rank = self.scan_near_transversals(|s, class| {
            let n = self.nullity(s);
            let raising = iter_bits(class).filter(|&x| self.nullity(s | 1 << x) == n + 1).count();
            (raising != 1).then_some(s)
        });
        let circuits = self.circuits()?;
        let by_circuits =
            self.scan_near_transversals(|s, class| self.minor_loops(circuits, s, class).next().is_none().then_some(s));
        if by_rank != by_circuits {
            return Err(Error::InternalInconsistency(format!(
                "tightness conditions disagree (rank: {by_rank:?}, circuits: {by_circuits:?})"
            )));
        }
        Ok(by_rank.map(|s| TightViolation::NoCircuit { s }))
    }

    pub fn tight(&self) -> Result<bool> {
        Ok(self.is_tight()?.is_none())
    }

    /// Elements x of `class` with some circuit C, x ∈ C ⊆ S ∪ {x}: the loops of Z|S.
    fn minor_loops<'a>(&'a self, circuits: &'a [u64], s: u64, class: u64) -> impl Iterator<Item = usize> + 'a {
        iter_bits(class).filter(move |&x| {
            let with = s | 1 << x;
            circuits.iter().any(|&c| c >> x & 1 == 1 && c & with == c)
        })
    }

    /// First hit over all near-transversals, by class then canonical index.
    fn scan_near_transversals<T, F>(&self, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64, u64) -> Option<T> + Sync + Send,
    {
        let car = &self.carrier;
        (0..car.order()).find_map(|c| {
            exec::find_first(car.near_transversal_count(c), |i| f(car.near_transversal(c, i), car.class_mask(c)))
        })
    }

    /// Isomorphism onto `other` preserving skew classes and circuits, if one exists.
    pub fn isomorphic(&self, other: &Multimatroid) -> Result<Option<Isomorphism>> {
        for z in [self, other] {
            limits::check_order("isomorphism order", z.order(), limits::ISO_ORDER)?;
            limits::check("isomorphism class size", z.carrier.max_class_size(), limits::ISO_CLASS_SIZE)?;
        }
        let (a, b) = (&self.carrier, &other.carrier);
        let mut sa = a.sizes.clone();
        let mut sb = b.sizes.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        let (ca, cb) = (self.circuits()?, other.circuits()?);
        if sa != sb || ca.len() != cb.len() {
            return Ok(None);
        }
        let profile = |cs: &[u64]| {
            let mut v: Vec<u32> = cs.iter().map(|c| c.count_ones()).collect();
            v.sort_unstable();
            v
        };
        if profile(ca) != profile(cb) {
            return Ok(None);
        }
        let set_b: HashSet<u64> = cb.iter().copied().collect();
        let set_a: HashSet<u64> = ca.iter().copied().collect();
        let mut search = IsoSearch {
            a,
            b,
            ca,
            cb,
            set_a: &set_a,
            set_b: &set_b,
            class_map: vec![usize::MAX; a.order()],
            slot_maps: vec![Vec::new(); a.order()],
            used: vec![false; b.order()],
        };
        Ok(search.run(0).then_some(Isomorphism { class_map: search.class_map, slot_maps: search.slot_maps }))
    }

    pub fn sum_subtransversals(&self, x: u64, y: u64) -> Result<u64> {
        sum_subtransversals(&self.carrier, x, y)
    }

    /// Cycle space: for every transversal T, the symmetric-difference span of the
    /// circuits inside T; deduplicated and sorted.
    pub fn cycle_space(&self) -> Result<Vec<u64>> {
        limits::check_order("cycle space order", self.order(), limits::CYCLE_SPACE_ORDER)?;
        let circuits = self.circuits()?;
        let car = &self.carrier;
        let per_t: Vec<Vec<u64>> = exec::map_range(car.transversal_count(), |i| {
            let t = car.transversal(i);
            let inside: Vec<u64> = circuits.iter().copied().filter(|&c| c & t == c).collect();
            xor_span(&inside)
        });
        let mut all: Vec<u64> = per_t.into_iter().flatten().collect::<HashSet<_>>().into_iter().collect();
        sort_lex(&mut all);
        Ok(all)
    }

    /// Same carrier and same circuits.
    pub fn same_as(&self, other: &Multimatroid) -> Result<bool> {
        Ok(self.carrier == other.carrier && self.circuits()? == other.circuits()?)
    }

    /// Same carrier and the same rank on every transversal.
    pub fn same_on_transversals(&self, other: &Multimatroid) -> bool {
        self.carrier == other.carrier
            && exec::all(self.carrier.transversal_count(), |i| {
                let t = self.carrier.transversal(i);
                self.rank(t) == other.rank(t)
            })
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.carrier.is_nondegenerate()
    }

    /// A copy whose realization is the explicit circuit list.
    pub fn to_circuit_form(&self) -> Result<Multimatroid> {
        let cs = self.circuits()?.to_vec();
        Ok(Multimatroid { carrier: self.carrier.clone(), real: MmRealization::Circuits(cs), circuit_cache: OnceLock::new() })
    }

    /// Reorders the slots of every class: new slot `j` of class `c` is old slot `perm[c][j]`.
    pub fn permute_slots(&self, perm: &[Vec<usize>]) -> Result<Multimatroid> {
        let car = &self.carrier;
        if perm.len() != car.order() {
            return Err(Error::CarrierMismatch("one permutation per class is needed".into()));
        }
        let new_of_old: Vec<usize> = (0..car.total())
            .map(|e| {
                let c = car.class_of(e);
                car.elem(c, perm[c].iter().position(|&s| s == car.slot_of(e)).expect("permutation"))
            })
            .collect();
        let map = |x: u64| iter_bits(x).fold(0u64, |m, e| m | 1 << new_of_old[e]);
        match &self.real {
            MmRealization::Circuits(cs) => Multimatroid::from_circuits(car.clone(), cs.iter().map(|&c| map(c)).collect()),
            MmRealization::Sheltered(m) => {
                let mut cols = vec![Default::default(); car.total()];
                let crate::matroid::Realization::Linear { field, rows, cols: old } = m.realization() else {
                    let cs = m.circuits()?.into_iter().map(map).collect();
                    return Multimatroid::sheltered(car.clone(), Matroid::from_circuits(car.labels(), cs)?);
                };
                for (e, c) in old.iter().enumerate() {
                    cols[new_of_old[e]] = *c;
                }
                Multimatroid::sheltered(car.clone(), Matroid::from_columns(*field, *rows, cols, car.labels())?)
            }
        }
    }
}

fn check_enumerable(carrier: &Carrier) -> Result<()> {
    limits::check_order("multimatroid order", carrier.order(), limits::MM_ORDER)?;
    limits::check("skew class size", carrier.max_class_size(), limits::MM_CLASS_SIZE)
}

struct IsoSearch<'a> {
    a: &'a Carrier,
    b: &'a Carrier,
    ca: &'a [u64],
    cb: &'a [u64],
    set_a: &'a HashSet<u64>,
    set_b: &'a HashSet<u64>,
    class_map: Vec<usize>,
    slot_maps: Vec<Vec<usize>>,
    used: Vec<bool>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

impl IsoSearch<'_> {
    fn run(&mut self, c: usize) -> bool {
        if c == self.a.order() {
            return true;
        }
        for d in 0..self.b.order() {
            if self.used[d] || self.b.size(d) != self.a.size(c) {
                continue;
            }
            for perm in permutations(self.a.size(c)) {
                self.class_map[c] = d;
                self.slot_maps[c] = perm;
                self.used[d] = true;
                if self.consistent(c) && self.run(c + 1) {
                    return true;
                }
                self.used[d] = false;
            }
        }
        self.class_map[c] = usize::MAX;
        false
    }

    fn map_a(&self, x: u64) -> u64 {
        iter_bits(x).fold(0, |m, e| {
            let c = self.a.class_of(e);
            m | 1 << self.b.elem(self.class_map[c], self.slot_maps[c][self.a.slot_of(e)])
        })
    }

    fn map_b(&self, y: u64, inverse_class: &[usize]) -> u64 {
        iter_bits(y).fold(0, |m, e| {
            let d = self.b.class_of(e);
            let c = inverse_class[d];
            let s = self.slot_maps[c].iter().position(|&t| t == self.b.slot_of(e)).expect("slot bijection");
            m | 1 << self.a.elem(c, s)
        })
    }

    /// Circuits living in the classes assigned so far, and touching class `last`, match.
    fn consistent(&self, last: usize) -> bool {
        let dom = self.a.union_of_classes(low_mask(last + 1));
        let last_a = self.a.class_mask(last);
        if !self.ca.iter().filter(|&&x| x & dom == x && x & last_a != 0).all(|&x| self.set_b.contains(&self.map_a(x))) {
            return false;
        }
        let mut inverse = vec![usize::MAX; self.b.order()];
        for c in 0..=last {
            inverse[self.class_map[c]] = c;
        }
        let img = self.b.union_of_classes((0..=last).fold(0, |m, c| m | 1 << self.class_map[c]));
        let last_b = self.b.class_mask(self.class_map[last]);
        self.cb
            .iter()
            .filter(|&&y| y & img == y && y & last_b != 0)
            .all(|&y| self.set_a.contains(&self.map_b(y, &inverse)))
    }
}

/// X + Y = X Δ Y Δ ∪Sc(X Δ Y) on a carrier whose classes all have three elements.
pub fn sum_subtransversals(carrier: &Carrier, x: u64, y: u64) -> Result<u64> {
    if carrier.sizes().iter().any(|&s| s != 3) {
        return Err(Error::NotTriple);
    }
    if !carrier.is_subtransversal(x) || !carrier.is_subtransversal(y) {
        return Err(Error::NotSubtransversal);
    }
    let d = x ^ y;
    Ok(d ^ carrier.union_of_classes(carrier.sc(d)))
}

/// The free sum of matroids on a common ground set: class e holds (e, 0), (e, 1), ...
pub fn free_sum(matroids: &[Matroid]) -> Result<Multimatroid> {
    let first = matroids.first().ok_or_else(|| Error::Invalid("free sum of no matroids".into()))?;
    let n = first.len();
    let k = matroids.len();
    // Position of each label of the first matroid in each of the others.
    let mut maps = Vec::with_capacity(k);
    for m in matroids {
        if m.len() != n {
            return Err(Error::GroundMismatch);
        }
        let map: Vec<usize> =
            first.labels().iter().map(|l| m.index_of(l).map_err(|_| Error::GroundMismatch)).collect::<Result<_>>()?;
        maps.push(map);
    }
    let carrier = Carrier::uniform(n, k)?;
    let all_linear = matroids.iter().all(|m| m.field().is_some());
    let sheltering = if all_linear {
        let field = matroids.iter().filter_map(Matroid::field).max().expect("nonempty");
        let mut cols = vec![crate::algebra::ColVec::default(); n * k];
        let mut row_off = 0;
        for (i, m) in matroids.iter().enumerate() {
            let crate::matroid::Realization::Linear { rows, cols: mc, .. } = m.realization() else { unreachable!() };
            for e in 0..n {
                cols[carrier.elem(e, i)] = mc[maps[i][e]].shifted(row_off);
            }
            row_off += rows;
        }
        limits::check("matrix rows", row_off, 64)?;
        Matroid::from_columns(field, row_off, cols, carrier.labels())?
    } else {
        let mut circuits = Vec::new();
        for (i, m) in matroids.iter().enumerate() {
            let back: Vec<usize> = (0..n).map(|j| maps[i].iter().position(|&p| p == j).expect("bijection")).collect();
            for c in m.circuits()? {
                circuits.push(iter_bits(c).fold(0u64, |s, j| s | 1 << carrier.elem(back[j], i)));
            }
        }
        Matroid::from_circuits(carrier.labels(), circuits)?
    };
    Multimatroid::sheltered(carrier, sheltering)
}

/// 𝒵_M = free_sum(M*, M): slot 0 of class e carries e in M*, slot 1 carries e in M.
pub fn zm(m: &Matroid) -> Result<Multimatroid> {
    let m = if m.field().is_some() && m.standard_form_basis().is_none() { m.to_standard_form()? } else { m.clone() };
    free_sum(&[m.dual()?, m])
}
