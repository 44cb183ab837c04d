//! Excluded-minor fixtures (S₁…S₅, ℋ₃,₃), minor scans, strongly binary
//! reconstruction, classification of tight 3-matroids, the tight-extension
//! search and the basis-parity statements.

use crate::algebra::{gf2_rank_words, Field, FieldMatrix, Gf4};
use crate::bits::{iter_bits, low_mask, sort_lex};
use crate::isotropic::{h33_matrix, isotropic_multimatroid, u24_matrix, z_quaternary, Graph};
use crate::matroid::Matroid;
use crate::multimatroid::{zm, Carrier, Isomorphism, Multimatroid};
use crate::orienting::skew_pairs;
use crate::{exec, limits, Error, Result};

/// A named catalogue entry.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub multimatroid: Multimatroid,
}

pub const FIXTURE_NAMES: [&str; 8] = ["S1", "S2", "S3", "S4", "S5", "H33", "ZU24", "ZU24_3"];

// Circuits written as in the excluded-minor list: classes 1-based, slots a/b.
const S1: &[&str] = &["1a 2b 3b", "1b 2a 3b", "1b 2b 3a"];
const S2: &[&str] = &["1a 2a 3a"];
const S3: &[&str] = &["1a 2a 3a", "1b 2b 3b"];
const S4: &[&str] = &[
    "1a 2b 3b 4b",
    "1b 2a 3b 4b",
    "1b 2b 3a 4b",
    "1b 2b 3b 4a",
    "1a 2a 3a",
    "1a 2a 4a",
    "1a 3a 4a",
    "2a 3a 4a",
];
const S5: &[&str] = &["2a 3a 4a", "1a 3a 4a", "1a 2a 4a", "1a 2a 3a", "2b 3b 4b", "1b 3b 4b", "1b 2b 4b", "1b 2b 3b"];

fn two_matroid(order: usize, circuits: &[&str]) -> Multimatroid {
    let car = Carrier::uniform(order, 2).expect("small carrier");
    let cs = circuits
        .iter()
        .map(|c| {
            c.split_whitespace().fold(0u64, |m, tok| {
                let (num, slot) = tok.split_at(tok.len() - 1);
                let class: usize = num.parse::<usize>().expect("class number") - 1;
                m | 1 << car.elem(class, if slot == "a" { 0 } else { 1 })
            })
        })
        .collect();
    Multimatroid::from_circuits(car, cs).expect("valid fixture")
}

pub fn s1() -> Multimatroid {
    two_matroid(3, S1)
}
pub fn s2() -> Multimatroid {
    two_matroid(3, S2)
}
pub fn s3() -> Multimatroid {
    two_matroid(3, S3)
}
pub fn s4() -> Multimatroid {
    two_matroid(4, S4)
}
pub fn s5() -> Multimatroid {
    two_matroid(4, S5)
}

pub fn h33() -> Multimatroid {
    isotropic_multimatroid(&h33_matrix()).expect("ℋ₃,₃ builds").multimatroid
}

fn u24() -> Matroid {
    Matroid::from_matrix(&u24_matrix(), None).expect("U₂,₄ representation")
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let (name, multimatroid) = match name {
        "S1" => ("S1", s1()),
        "S2" => ("S2", s2()),
        "S3" => ("S3", s3()),
        "S4" => ("S4", s4()),
        "S5" => ("S5", s5()),
        "H33" => ("H33", h33()),
        "ZU24" => ("ZU24", zm(&u24())?),
        "ZU24_3" => ("ZU24_3", z_quaternary(&u24())?.multimatroid),
        _ => return Err(Error::Invalid(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", ")))),
    };
    Ok(Fixture { name, multimatroid })
}

pub fn catalog() -> Result<Vec<Fixture>> {
    FIXTURE_NAMES.iter().map(|n| fixture(n)).collect()
}

/// Z|X ≅ P for some subtransversal X; the lexicographically first X wins.
pub fn has_minor(z: &Multimatroid, p: &Multimatroid) -> Result<Option<(u64, Isomorphism)>> {
    limits::check_order("minor scan order", z.order(), limits::MINOR_SCAN_ORDER)?;
    if p.order() > z.order() {
        return Ok(None);
    }
    let car = z.carrier();
    let size = z.order() - p.order();
    let mut want: Vec<usize> = p.carrier().sizes().to_vec();
    want.sort_unstable();
    let mut candidates: Vec<u64> = (0..car.subtransversal_count())
        .map(|i| car.subtransversal(i))
        .filter(|x| x.count_ones() as usize == size)
        .filter(|&x| {
            let mut left: Vec<usize> =
                (0..car.order()).filter(|&c| x & car.class_mask(c) == 0).map(|c| car.size(c)).collect();
            left.sort_unstable();
            left == want
        })
        .collect();
    sort_lex(&mut candidates);
    let hits = exec::map_range(candidates.len() as u64, |i| -> Result<Option<Isomorphism>> {
        z.minor(candidates[i as usize])?.isomorphic(p)
    });
    for (x, hit) in candidates.into_iter().zip(hits) {
        if let Some(iso) = hit? {
            return Ok(Some((x, iso)));
        }
    }
    Ok(None)
}

/// A 2-matroid sheltered by (I | A): the I columns sit on `t1`, the A columns on its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StronglyBinary {
    pub t1: u64,
    pub a: FieldMatrix,
}

fn check_two_matroid(z: &Multimatroid) -> Result<()> {
    if !z.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    if z.carrier().sizes().iter().any(|&s| s != 2) {
        return Err(Error::CarrierMismatch("a 2-matroid is required".into()));
    }
    Ok(())
}

/// Reconstructs a symmetric GF(2) matrix A from the bases of Z and verifies it
/// on every transversal; `None` when no such A exists.
pub fn is_strongly_binary(z: &Multimatroid) -> Result<Option<StronglyBinary>> {
    check_two_matroid(z)?;
    limits::check_order("strongly binary order", z.order(), limits::STRONGLY_BINARY_ORDER)?;
    let car = z.carrier();
    let n = z.order();
    let t1 = (0..car.transversal_count()).map(|i| car.transversal(i)).find(|&t| z.nullity(t) == 0).ok_or(Error::NoBasis)?;
    // Transversal T₁ with the classes of X swapped to the other element.
    let swapped = |x: u64| iter_bits(x).fold(t1, |t, v| t ^ car.class_mask(v));
    let is_basis = |x: u64| z.nullity(swapped(x)) == 0;
    let mut g = Graph::empty(n);
    let diag: Vec<bool> = (0..n).map(|v| is_basis(1 << v)).collect();
    let mut edges = Vec::new();
    for (v, &d) in diag.iter().enumerate() {
        if d {
            edges.push((v, v));
        }
        for u in v + 1..n {
            // det of the 2×2 principal submatrix: a_uu a_vv + a_uv.
            if is_basis(1 << u | 1 << v) != (diag[u] && d) {
                edges.push((u, v));
            }
        }
    }
    if !edges.is_empty() {
        g = Graph::from_edges(n, &edges)?;
    }
    let ok = exec::all(1 << n, |x| g.nullity_of(x, 0) == z.nullity(swapped(x)));
    Ok(ok.then(|| StronglyBinary { t1, a: g.adjacency_matrix() }))
}

/// A GF(2) matrix whose column e shelters element e of Z, if one exists.
/// Searches all [I_r | D] containing a fixed basis of Z among the identity columns.
pub fn binary_sheltering(z: &Multimatroid) -> Result<Option<FieldMatrix>> {
    let car = z.carrier();
    limits::check("sheltering search elements", car.total(), 8)?;
    let total = car.total();
    let bases = z.bases()?;
    let b = *bases.first().ok_or(Error::NoBasis)?;
    let rho = b.count_ones() as usize;
    let mut checks: Vec<(u64, usize)> =
        (0..car.subtransversal_count()).map(|i| car.subtransversal(i)).map(|s| (s, z.rank(s))).collect();
    checks.sort_by_key(|&(s, _)| (s.count_ones(), s));
    let others: Vec<usize> = iter_bits(car.all() & !b).collect();
    for r in rho..=total {
        for extra in 0..1u64 << others.len() {
            if extra.count_ones() as usize != r - rho {
                continue;
            }
            let mut cols = vec![0u64; total];
            let unit_elems = b | iter_bits(extra).fold(0u64, |m, i| m | 1 << others[i]);
            for (row, e) in iter_bits(unit_elems).enumerate() {
                cols[e] = 1 << row;
            }
            let free: Vec<usize> = iter_bits(car.all() & !unit_elems).collect();
            let bits = r * free.len();
            if bits >= 40 {
                return Err(Error::TooLarge { what: "sheltering search space", size: bits, bound: 40 });
            }
            let found = exec::find_first(1u64 << bits, |code| {
                let mut cols = cols.clone();
                for (k, &e) in free.iter().enumerate() {
                    cols[e] = code >> (k * r) & low_mask(r);
                }
                checks
                    .iter()
                    .all(|&(s, rank)| gf2_rank_words(iter_bits(s).map(|e| cols[e]).collect()) == rank)
                    .then_some(cols)
            });
            if let Some(cols) = found {
                let mut m = FieldMatrix::zeros(Field::Gf2, r, total);
                for (e, &c) in cols.iter().enumerate() {
                    for i in iter_bits(c) {
                        m.set(i, e, Gf4::ONE);
                    }
                }
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

/// First pair of circuits (in canonical order) whose union holds a number of
/// skew pairs satisfying `bad`.
pub fn circuit_pair_where(z: &Multimatroid, bad: impl Fn(usize) -> bool) -> Result<Option<(u64, u64)>> {
    let cs = z.circuits()?;
    let car = z.carrier();
    for (i, &a) in cs.iter().enumerate() {
        for &b in &cs[i..] {
            if bad(skew_pairs(car, a | b)) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// The five equivalent statements for a tight 2-matroid, in order: binary,
/// strongly binary, even skew pairs in circuit unions, never exactly three,
/// no S₄ or S₅ minor.
pub fn binary_tight2_statements(z: &Multimatroid) -> Result<[bool; 5]> {
    check_two_matroid(z)?;
    Ok([
        binary_sheltering(z)?.is_some(),
        is_strongly_binary(z)?.is_some(),
        circuit_pair_where(z, |k| k % 2 == 1)?.is_none(),
        circuit_pair_where(z, |k| k == 3)?.is_none(),
        has_minor(z, &s4())?.is_none() && has_minor(z, &s5())?.is_none(),
    ])
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub binary: bool,
    /// Transversal T and the matrix certifying that Z − T is strongly binary.
    pub strongly_binary: Option<(u64, StronglyBinary)>,
    /// Subtransversal X with Z|X ≅ ℋ₃,₃.
    pub h33_minor: Option<u64>,
    /// Circuits whose union holds an odd number of skew pairs.
    pub odd_pair: Option<(u64, u64)>,
}

/// Decides whether a tight 3-matroid is binary by three independent tests that must agree.
pub fn classify_binary_tight3(z: &Multimatroid) -> Result<Classification> {
    limits::check_order("classification order", z.order(), limits::CLASSIFY_ORDER)?;
    if z.carrier().sizes().iter().any(|&s| s != 3) {
        return Err(Error::NotTriple);
    }
    if !z.tight()? {
        return Err(Error::NotTight);
    }
    let car = z.carrier();
    let t = car.transversal(0);
    let strongly = is_strongly_binary(&z.delete(t)?)?.map(|sb| (t, sb));
    let h33_minor = has_minor(z, &h33())?.map(|(x, _)| x);
    let odd_pair = circuit_pair_where(z, |k| k % 2 == 1)?;
    let verdicts = [strongly.is_some(), h33_minor.is_none(), odd_pair.is_none()];
    if verdicts.iter().any(|&v| v != verdicts[0]) {
        return Err(Error::InternalInconsistency(format!(
            "binary tests disagree: strongly binary {}, no ℋ₃,₃ minor {}, even skew pairs {}",
            verdicts[0], verdicts[1], verdicts[2]
        )));
    }
    Ok(Classification { binary: verdicts[0], strongly_binary: strongly, h33_minor, odd_pair })
}

/// Rank-function search for the tight 3-matroid Z′ with Z′ − T₃ = Z, where the
/// new slot 2 of every class forms T₃. Returns the unique solution, if any.
pub fn tight_extension_search(z: &Multimatroid) -> Result<Option<Multimatroid>> {
    check_two_matroid(z)?;
    limits::check_order("tight extension order", z.order(), limits::EXTENSION_ORDER)?;
    let mut search = ExtensionSearch::new(z)?;
    search.run(0);
    match search.solutions.len() {
        0 => Ok(None),
        1 => {
            let ranks = search.solutions.pop().expect("one solution");
            let car3 = search.car3.clone();
            let codes = search.code_of_mask_fn();
            Ok(Some(Multimatroid::from_rank_fn(car3, move |s| ranks[codes(s)] as usize)?))
        }
        _ => Err(Error::InternalInconsistency("tight extension is not unique".into())),
    }
}

/// Subtransversals of the 3-lifted carrier are coded in base 4, one digit per
/// class: 0 for absent, 1 + slot otherwise.
struct ExtensionSearch {
    ell: usize,
    car3: Carrier,
    rank: Vec<i8>,
    /// Codes with a new-slot element, in assignment order.
    unknown: Vec<usize>,
    solutions: Vec<Vec<i8>>,
}

impl ExtensionSearch {
    fn new(z: &Multimatroid) -> Result<ExtensionSearch> {
        let ell = z.order();
        let car3 = Carrier::uniform(ell, 3)?;
        let count = 1usize << (2 * ell);
        let mut rank = vec![-1i8; count];
        let mut unknown = Vec::new();
        for code in 0..count {
            let digits = Self::digits_of(ell, code);
            if digits.contains(&3) {
                unknown.push(code);
            } else {
                let s = digits
                    .iter()
                    .enumerate()
                    .filter(|(_, &d)| d > 0)
                    .fold(0u64, |m, (c, &d)| m | 1 << z.carrier().elem(c, d - 1));
                rank[code] = z.rank(s) as i8;
            }
        }
        // Numeric order lists every subset before its supersets and keeps
        // siblings close, so constraints close early.
        Ok(ExtensionSearch { ell, car3, rank, unknown, solutions: Vec::new() })
    }

    fn digits_of(ell: usize, code: usize) -> Vec<usize> {
        (0..ell).map(|c| code >> (2 * c) & 3).collect()
    }

    fn code_of_mask_fn(&self) -> impl Fn(u64) -> usize + Send + Sync + 'static {
        let car = self.car3.clone();
        move |s| iter_bits(s).fold(0usize, |code, e| code | (car.slot_of(e) + 1) << (2 * car.class_of(e)))
    }

    fn members(&self, code: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.ell).filter_map(move |c| match code >> (2 * c) & 3 {
            0 => None,
            d => Some((c, d)),
        })
    }

    fn without(code: usize, class: usize) -> usize {
        code & !(3 << (2 * class))
    }

    fn size(&self, code: usize) -> i8 {
        self.members(code).count() as i8
    }

    fn nullity(&self, code: usize) -> i8 {
        self.size(code) - self.rank[code]
    }

    /// Checks every constraint whose codes are all assigned and that involves `code`.
    fn consistent(&self, code: usize) -> bool {
        let r = self.rank[code];
        let members: Vec<(usize, usize)> = self.members(code).collect();
        // Submodularity on the squares below `code`.
        for (i, &(cx, _)) in members.iter().enumerate() {
            for &(cy, _) in &members[i + 1..] {
                let (sx, sy) = (Self::without(code, cx), Self::without(code, cy));
                let sxy = Self::without(sx, cy);
                if r + self.rank[sxy] > self.rank[sx] + self.rank[sy] {
                    return false;
                }
            }
        }
        // Nullity conditions on the sibling sets S ∪ {x}, x ∈ ω.
        for &(c, _) in &members {
            let base = Self::without(code, c);
            let sibs: Vec<usize> = (1..=3).map(|d| base | d << (2 * c)).collect();
            if sibs.iter().any(|&s| self.rank[s] < 0) {
                continue;
            }
            let n0 = self.nullity(base);
            let changing = sibs.iter().filter(|&&s| self.nullity(s) != n0).count();
            if changing > 1 {
                return false;
            }
            if members.len() == self.ell && changing != 1 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, i: usize) {
        if self.solutions.len() > 1 {
            return;
        }
        if i == self.unknown.len() {
            self.solutions.push(self.rank.clone());
            return;
        }
        let code = self.unknown[i];
        let members: Vec<(usize, usize)> = self.members(code).collect();
        let below: Vec<i8> = members.iter().map(|&(c, _)| self.rank[Self::without(code, c)]).collect();
        let lo = *below.iter().max().expect("nonempty");
        let hi = (below.iter().min().expect("nonempty") + 1).min(members.len() as i8);
        for v in lo..=hi {
            self.rank[code] = v;
            if self.consistent(code) {
                self.run(i + 1);
            }
        }
        self.rank[code] = -1;
    }
}

/// Bases of a tight k-matroid with k odd, for the parity statements.
pub struct BasisParity {
    carrier: Carrier,
    bases: Vec<u64>,
}

impl BasisParity {
    pub fn new(z: &Multimatroid) -> Result<BasisParity> {
        limits::check_order("basis parity order", z.order(), limits::BASIS_PARITY_ORDER)?;
        let sizes = z.carrier().sizes();
        if sizes.iter().any(|&s| s != sizes[0] || s < 3 || s % 2 == 0) {
            return Err(Error::CarrierMismatch("basis parity needs a k-matroid with k odd and at least 3".into()));
        }
        if !z.tight()? {
            return Err(Error::NotTight);
        }
        Ok(BasisParity { carrier: z.carrier().clone(), bases: z.transversal_bases() })
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    /// Number of bases of Z inside X.
    pub fn bases_in(&self, x: u64) -> usize {
        self.bases.iter().filter(|&&b| b & x == b).count()
    }

    /// (b₁, b₂): bases of Z inside X and inside X Δ Y; their parities must agree.
    pub fn counts(&self, x: u64, y: u64) -> Result<(usize, usize)> {
        if !self.carrier.is_class_union(y) {
            return Err(Error::NotClassUnion);
        }
        let (b1, b2) = (self.bases_in(x), self.bases_in(x ^ y));
        if b1 % 2 != b2 % 2 {
            return Err(Error::InternalInconsistency(format!("basis counts {b1} and {b2} differ in parity")));
        }
        Ok((b1, b2))
    }
}

pub fn basis_parity(z: &Multimatroid, x: u64, y: u64) -> Result<(usize, usize)> {
    BasisParity::new(z)?.counts(x, y)
}

/// Basis exchange: for bases T, T′ and a skew pair p ⊆ T Δ T′ there is a skew
/// pair q ⊆ T Δ T′ with T′ Δ (p ∪ q) a basis. Returns a failing (T, T′, p).
pub fn basis_exchange_violation(z: &Multimatroid) -> Result<Option<(u64, u64, u64)>> {
    if !z.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let car = z.carrier();
    let bases = z.transversal_bases();
    let mut sorted = bases.clone();
    sorted.sort_unstable();
    let is_basis = |t: u64| sorted.binary_search(&t).is_ok();
    for &t in &bases {
        for &t2 in &bases {
            let d = t ^ t2;
            let pairs: Vec<u64> = (0..car.order()).map(|c| d & car.class_mask(c)).filter(|&p| p != 0).collect();
            for &p in &pairs {
                if !pairs.iter().any(|&q| is_basis(t2 ^ (p | q))) {
                    return Ok(Some((t, t2, p)));
                }
            }
        }
    }
    Ok(None)
}
