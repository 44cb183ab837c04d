//! Ordinary matroids, either represented over GF(2)/GF(4) or given by circuits.
//!
//! Subsets of the ground set are `u64` masks over element indices, so a matroid
//! has at most 64 elements; enumeration-heavy operations impose tighter bounds
//! from [`crate::limits`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{ColBasis, ColVec, Field, FieldMatrix, Gf4};
use crate::bits::{iter_bits, low_mask, pext, sort_lex, submasks};
use crate::{exec, limits, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    /// Columns of a matrix with `rows` rows.
    Linear { field: Field, rows: usize, cols: Vec<ColVec> },
    /// The circuit family, sorted in canonical order.
    Circuits(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    labels: Vec<String>,
    repr: Realization,
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_labels(labels: &[String]) -> Result<()> {
    limits::check("matroid ground set", labels.len(), 64)?;
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Invalid(format!("duplicate label {l}")));
        }
    }
    Ok(())
}

/// Minimal sets `X` with `rank(X) < |X|`, in canonical order.
fn circuits_from_rank<F>(n: usize, rank: F) -> Vec<u64>
where
    F: Fn(u64) -> usize + Sync + Send,
{
    let mut out = exec::filter_range(1 << n, |x| {
        let size = x.count_ones() as usize;
        x != 0 && rank(x) + 1 == size && iter_bits(x).all(|e| rank(x & !(1 << e)) + 1 == size)
    });
    sort_lex(&mut out);
    out
}

impl Matroid {
    pub fn from_matrix(m: &FieldMatrix, labels: Option<Vec<String>>) -> Result<Matroid> {
        let labels = labels.unwrap_or_else(|| default_labels(m.cols()));
        if labels.len() != m.cols() {
            return Err(Error::Invalid("label count differs from column count".into()));
        }
        check_labels(&labels)?;
        Ok(Matroid {
            labels,
            repr: Realization::Linear { field: m.field(), rows: m.rows(), cols: m.columns()? },
        })
    }

    /// Wraps packed columns of height `rows` (at most 64).
    pub fn from_columns(field: Field, rows: usize, cols: Vec<ColVec>, labels: Vec<String>) -> Result<Matroid> {
        if labels.len() != cols.len() {
            return Err(Error::Invalid("label count differs from column count".into()));
        }
        check_labels(&labels)?;
        limits::check("matrix rows", rows, 64)?;
        Ok(Matroid { labels, repr: Realization::Linear { field, rows, cols } })
    }

    /// Builds from a circuit family; the axioms are checked when the ground set is small.
    pub fn from_circuits(labels: Vec<String>, circuits: Vec<u64>) -> Result<Matroid> {
        check_labels(&labels)?;
        let ground = low_mask(labels.len());
        let mut circuits = circuits;
        sort_lex(&mut circuits);
        circuits.dedup();
        for &c in &circuits {
            if c == 0 || c & !ground != 0 {
                return Err(Error::Invalid("circuit is empty or leaves the ground set".into()));
            }
        }
        for (i, &a) in circuits.iter().enumerate() {
            for &b in &circuits[i + 1..] {
                if a & b == a || a & b == b {
                    return Err(Error::Invalid("circuits do not form an antichain".into()));
                }
            }
        }
        if labels.len() <= limits::CIRCUIT_LIST_CHECK {
            for (i, &a) in circuits.iter().enumerate() {
                for &b in &circuits[i + 1..] {
                    for e in iter_bits(a & b) {
                        let rest = (a | b) & !(1 << e);
                        if !circuits.iter().any(|&c| c & !rest == 0) {
                            return Err(Error::Invalid("circuit elimination fails".into()));
                        }
                    }
                }
            }
        }
        Ok(Matroid { labels, repr: Realization::Circuits(circuits) })
    }

    /// The matroid whose rank function is `rank`, stored by its circuits.
    pub fn from_rank_fn<F>(labels: Vec<String>, rank: F) -> Result<Matroid>
    where
        F: Fn(u64) -> usize + Sync + Send,
    {
        check_labels(&labels)?;
        limits::check("matroid elements", labels.len(), limits::MATROID_ELEMENTS)?;
        let circuits = circuits_from_rank(labels.len(), rank);
        Ok(Matroid { labels, repr: Realization::Circuits(circuits) })
    }

    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        limits::check("matroid elements", n, limits::MATROID_ELEMENTS)?;
        let circuits = if r < n {
            (0..1u64 << n).filter(|x| x.count_ones() as usize == r + 1).collect()
        } else {
            Vec::new()
        };
        Matroid::from_circuits(default_labels(n), circuits)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Matroid> {
        if labels.len() != self.len() {
            return Err(Error::Invalid("label count differs from ground set size".into()));
        }
        check_labels(&labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn realization(&self) -> &Realization {
        &self.repr
    }

    pub fn ground(&self) -> u64 {
        low_mask(self.len())
    }

    pub fn field(&self) -> Option<Field> {
        match &self.repr {
            Realization::Linear { field, .. } => Some(*field),
            Realization::Circuits(_) => None,
        }
    }

    pub fn matrix(&self) -> Result<FieldMatrix> {
        match &self.repr {
            Realization::Linear { field, rows, cols } => Ok(FieldMatrix::from_columns(*field, *rows, cols)),
            Realization::Circuits(_) => Err(Error::NotRepresented),
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn mask_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        labels.iter().try_fold(0, |m, l| Ok(m | 1 << self.index_of(l.as_ref())?))
    }

    pub fn rank(&self, x: u64) -> usize {
        debug_assert_eq!(x & !self.ground(), 0);
        match &self.repr {
            Realization::Linear { cols, .. } => {
                let mut basis = ColBasis::new();
                for e in iter_bits(x) {
                    basis.insert(cols[e]);
                }
                basis.rank()
            }
            Realization::Circuits(circuits) => {
                // Greedy: add each element unless it closes a circuit.
                let mut ind = 0u64;
                for e in iter_bits(x) {
                    let with = ind | 1 << e;
                    if !circuits.iter().any(|&c| c & !with == 0) {
                        ind = with;
                    }
                }
                ind.count_ones() as usize
            }
        }
    }

    pub fn rank_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        Ok(self.rank(self.mask_of_labels(labels)?))
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    pub fn nullity(&self, x: u64) -> usize {
        x.count_ones() as usize - self.rank(x)
    }

    pub fn is_independent(&self, x: u64) -> bool {
        self.nullity(x) == 0
    }

    pub fn closure(&self, x: u64) -> u64 {
        let r = self.rank(x);
        iter_bits(self.ground() & !x).filter(|&e| self.rank(x | 1 << e) == r).fold(x, |m, e| m | 1 << e)
    }

    pub fn circuits(&self) -> Result<Vec<u64>> {
        match &self.repr {
            Realization::Circuits(c) => Ok(c.clone()),
            Realization::Linear { .. } => {
                limits::check("matroid elements", self.len(), limits::MATROID_ELEMENTS)?;
                Ok(circuits_from_rank(self.len(), |x| self.rank(x)))
            }
        }
    }

    pub fn bases(&self) -> Result<Vec<u64>> {
        limits::check("matroid elements", self.len(), limits::MATROID_ELEMENTS)?;
        let r = self.full_rank();
        let mut out =
            exec::filter_range(1 << self.len(), |x| x.count_ones() as usize == r && self.is_independent(x));
        sort_lex(&mut out);
        Ok(out)
    }

    /// The basis that is least in lexicographic order (the greedy basis).
    pub fn lex_least_basis(&self) -> u64 {
        iter_bits(self.ground()).fold(0, |b, e| if self.is_independent(b | 1 << e) { b | 1 << e } else { b })
    }

    /// Positions of the identity block if the matrix is in standard form:
    /// one row per rank, and each unit vector occurs as a column.
    pub fn standard_form_basis(&self) -> Option<Vec<usize>> {
        let Realization::Linear { rows, cols, .. } = &self.repr else { return None };
        if *rows != self.full_rank() {
            return None;
        }
        (0..*rows).map(|i| cols.iter().position(|c| *c == ColVec::unit(i))).collect()
    }

    /// Row-reduces so that the lexicographically least basis becomes the identity block.
    pub fn to_standard_form(&self) -> Result<Matroid> {
        let Realization::Linear { field, .. } = &self.repr else { return Err(Error::NotRepresented) };
        let b = self.lex_least_basis();
        let m = self.matrix()?;
        let order: Vec<usize> = iter_bits(b).chain(iter_bits(self.ground() & !b)).collect();
        let (reduced, pivots) = m.select_columns(&order).rref();
        debug_assert_eq!(pivots, (0..pivots.len()).collect::<Vec<_>>());
        let r = pivots.len();
        let kept = reduced.select_rows(&(0..r).collect::<Vec<_>>());
        let mut cols = vec![ColVec::default(); self.len()];
        for (k, &e) in order.iter().enumerate() {
            cols[e] = kept.column(k);
        }
        Ok(Matroid { labels: self.labels.clone(), repr: Realization::Linear { field: *field, rows: r, cols } })
    }

    pub fn dual(&self) -> Result<Matroid> {
        match &self.repr {
            Realization::Linear { field, cols, .. } => {
                let basis = self.standard_form_basis().ok_or(Error::NotStandardForm)?;
                let basis_mask = basis.iter().fold(0u64, |m, &e| m | 1 << e);
                let others: Vec<usize> = iter_bits(self.ground() & !basis_mask).collect();
                // (I | A) dualizes to (Aᵀ | I): char 2, so no sign.
                let mut dual_cols = vec![ColVec::default(); self.len()];
                for (j, &e) in others.iter().enumerate() {
                    dual_cols[e] = ColVec::unit(j);
                }
                for (i, &b) in basis.iter().enumerate() {
                    let mut c = ColVec::default();
                    for (j, &e) in others.iter().enumerate() {
                        c.set(j, cols[e].get(i));
                    }
                    dual_cols[b] = c;
                }
                Ok(Matroid {
                    labels: self.labels.clone(),
                    repr: Realization::Linear { field: *field, rows: others.len(), cols: dual_cols },
                })
            }
            Realization::Circuits(_) => {
                let (g, r) = (self.ground(), self.full_rank());
                Matroid::from_rank_fn(self.labels.clone(), |x| {
                    x.count_ones() as usize + self.rank(g & !x) - r
                })
            }
        }
    }

    pub fn minor(&self, contract: u64, delete: u64) -> Result<Matroid> {
        if contract & delete != 0 {
            return Err(Error::OverlappingSets);
        }
        if (contract | delete) & !self.ground() != 0 {
            return Err(Error::Invalid("minor sets leave the ground set".into()));
        }
        let keep = self.ground() & !(contract | delete);
        let labels: Vec<String> = iter_bits(keep).map(|e| self.labels[e].clone()).collect();
        match &self.repr {
            Realization::Linear { field, rows, cols } => {
                let mut span = ColBasis::new();
                for e in iter_bits(contract) {
                    span.insert(cols[e]);
                }
                let free_rows = low_mask(*rows) & !span.pivot_rows();
                let new_cols = iter_bits(keep).map(|e| span.reduce(cols[e]).compress(free_rows)).collect();
                Ok(Matroid {
                    labels,
                    repr: Realization::Linear { field: *field, rows: free_rows.count_ones() as usize, cols: new_cols },
                })
            }
            Realization::Circuits(_) => {
                let rc = self.rank(contract);
                Matroid::from_rank_fn(labels, |x| self.rank(crate::bits::pdep(x, keep) | contract) - rc)
            }
        }
    }

    pub fn minor_labels<S: AsRef<str>>(&self, contract: &[S], delete: &[S]) -> Result<Matroid> {
        self.minor(self.mask_of_labels(contract)?, self.mask_of_labels(delete)?)
    }

    pub fn restrict(&self, keep: u64) -> Result<Matroid> {
        self.minor(0, self.ground() & !keep)
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        if let Some(l) = self.labels.iter().find(|l| other.labels.contains(l)) {
            return Err(Error::LabelCollision(l.clone()));
        }
        let labels: Vec<String> = self.labels.iter().chain(&other.labels).cloned().collect();
        check_labels(&labels)?;
        let n1 = self.len();
        match (&self.repr, &other.repr) {
            (
                Realization::Linear { field: f1, rows: r1, cols: c1 },
                Realization::Linear { field: f2, rows: r2, cols: c2 },
            ) => {
                limits::check("matrix rows", r1 + r2, 64)?;
                let cols = c1.iter().copied().chain(c2.iter().map(|c| c.shifted(*r1))).collect();
                Ok(Matroid { labels, repr: Realization::Linear { field: f1.join(*f2), rows: r1 + r2, cols } })
            }
            _ => {
                let circuits =
                    self.circuits()?.into_iter().chain(other.circuits()?.into_iter().map(|c| c << n1)).collect();
                Matroid::from_circuits(labels, circuits)
            }
        }
    }

    /// Circuits of `other`, re-indexed onto this matroid's labels.
    fn circuits_on_my_labels(&self, other: &Matroid) -> Result<Vec<u64>> {
        if self.len() != other.len() || other.labels.iter().any(|l| !self.labels.contains(l)) {
            return Err(Error::GroundMismatch);
        }
        let map: Vec<usize> = other.labels.iter().map(|l| self.index_of(l)).collect::<Result<_>>()?;
        Ok(other.circuits()?.into_iter().map(|c| iter_bits(c).fold(0, |m, e| m | 1 << map[e])).collect())
    }

    /// Every circuit of one meets every circuit of the other in other than one element.
    pub fn orthogonal(&self, other: &Matroid) -> Result<bool> {
        let theirs = self.circuits_on_my_labels(other)?;
        let mine = self.circuits()?;
        Ok(mine.iter().all(|&c| theirs.iter().all(|&d| (c & d).count_ones() != 1)))
    }

    /// A GF(2) matrix with the same matroid, if the representation is binary.
    fn binary_matrix(&self) -> Result<FieldMatrix> {
        let m = self.matrix().map_err(|_| Error::NotBinary)?;
        if m.to_rows().iter().flatten().any(|v| !Field::Gf2.contains(*v)) {
            return Err(Error::NotBinary);
        }
        let rows = m.to_rows();
        Ok(FieldMatrix::from_rows(Field::Gf2, &rows).unwrap_or_else(|_| FieldMatrix::zeros(Field::Gf2, 0, 0)))
    }

    /// All cycles (supports of kernel vectors), in canonical order.
    pub fn cycle_space(&self) -> Result<Vec<u64>> {
        limits::check("cycle space columns", self.len(), limits::CYCLE_SPACE_COLUMNS)?;
        let m = self.binary_matrix()?;
        let m = if m.rows() == 0 { FieldMatrix::zeros(Field::Gf2, 1, self.len()) } else { m };
        let gens: Vec<u64> = m
            .null_space()
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).fold(0, |s, (j, _)| s | 1 << j))
            .collect();
        let mut out: Vec<u64> = (0..1u64 << gens.len())
            .map(|c| iter_bits(c).fold(0, |s, k| s ^ gens[k]))
            .collect();
        sort_lex(&mut out);
        Ok(out)
    }

    /// Peels circuits off `x` one at a time; true when nothing independent remains.
    pub fn is_disjoint_union_of_circuits(&self, mut x: u64) -> bool {
        while x != 0 {
            if self.is_independent(x) {
                return false;
            }
            let mut c = x;
            for e in iter_bits(x) {
                if !self.is_independent(c & !(1 << e)) {
                    c &= !(1 << e);
                }
            }
            x &= !c;
        }
        true
    }

    /// Searches for a GF(2) matrix (I | D) with the lex-least basis as identity.
    pub fn binary_representation(&self) -> Result<Option<FieldMatrix>> {
        limits::check("representability search elements", self.len(), 8)?;
        let b = self.lex_least_basis();
        let r = b.count_ones() as usize;
        let others: Vec<usize> = iter_bits(self.ground() & !b).collect();
        let bases = self.bases()?;
        let cells = r * others.len();
        let found = exec::find_first(1 << cells, |d| {
            let mut cols = vec![ColVec::default(); self.len()];
            for (i, e) in iter_bits(b).enumerate() {
                cols[e] = ColVec::unit(i);
            }
            for (j, &e) in others.iter().enumerate() {
                cols[e] = ColVec { lo: (d >> (j * r)) & low_mask(r), hi: 0 };
            }
            let cand = Matroid {
                labels: self.labels.clone(),
                repr: Realization::Linear { field: Field::Gf2, rows: r, cols },
            };
            (cand.bases().ok()? == bases).then(|| cand.matrix().ok()).flatten()
        });
        Ok(found)
    }

    /// T(M; x, y) by deletion and contraction in index order.
    pub fn tutte(&self, x: &BigRational, y: &BigRational) -> Result<BigRational> {
        limits::check("matroid elements", self.len(), limits::MATROID_ELEMENTS)?;
        let mut memo = HashMap::new();
        Ok(self.tutte_rec(0, 0, x, y, &mut memo))
    }

    // The minor on elements k.. after contracting `c` depends only on cl(c).
    fn tutte_rec(
        &self,
        k: usize,
        c: u64,
        x: &BigRational,
        y: &BigRational,
        memo: &mut HashMap<(usize, u64), BigRational>,
    ) -> BigRational {
        if k == self.len() {
            return BigRational::one();
        }
        let key = (k, self.closure(c));
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let rest = self.ground() & !low_mask(k);
        let rc = self.rank(c);
        let is_loop = self.rank(c | 1 << k) == rc;
        let is_coloop = self.rank(c | (rest & !(1 << k))) < self.rank(c | rest);
        let v = if is_loop {
            y * self.tutte_rec(k + 1, c, x, y, memo)
        } else if is_coloop {
            x * self.tutte_rec(k + 1, c | 1 << k, x, y, memo)
        } else {
            self.tutte_rec(k + 1, c, x, y, memo) + self.tutte_rec(k + 1, c | 1 << k, x, y, memo)
        };
        memo.insert(key, v.clone());
        v
    }
}

/// Rank-generating definition of T(M; x, y); exponential, used as an oracle.
pub fn tutte_by_subsets(m: &Matroid, x: &BigRational, y: &BigRational) -> BigRational {
    let r = m.full_rank() as i32;
    let (xm, ym) = (x - BigRational::one(), y - BigRational::one());
    submasks(m.ground()).fold(BigRational::zero(), |acc, a| {
        let ra = m.rank(a) as i32;
        acc + num_traits::pow(xm.clone(), (r - ra) as usize) * num_traits::pow(ym.clone(), a.count_ones() as usize - ra as usize)
    })
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Convenience constructor for GF(2) matrices from 0/1 rows.
pub fn gf2_matrix(rows: &[&[u8]]) -> FieldMatrix {
    let rows: Vec<Vec<Gf4>> =
        rows.iter().map(|r| r.iter().map(|&v| if v == 0 { Gf4::ZERO } else { Gf4::ONE }).collect()).collect();
    FieldMatrix::from_rows(Field::Gf2, &rows).expect("0/1 entries")
}

/// Restricts a set given over an enlarged ground set to the kept positions.
pub fn compress_set(x: u64, keep: u64) -> u64 {
    pext(x, keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn labels(n: usize) -> Vec<String> {
        default_labels(n)
    }

    fn bases_oracle(m: &Matroid) -> Vec<u64> {
        m.bases().unwrap()
    }

    fn random_standard_form(rng: &mut ChaCha8Rng, n: usize) -> Matroid {
        let r = rng.gen_range(0..=n);
        let mut m = FieldMatrix::zeros(Field::Gf2, r, n);
        for i in 0..r {
            m.set(i, i, Gf4::ONE);
            for j in r..n {
                if rng.gen_bool(0.5) {
                    m.set(i, j, Gf4::ONE);
                }
            }
        }
        Matroid::from_matrix(&m, None).unwrap()
    }

    fn u24_gf4() -> Matroid {
        let m = FieldMatrix::parse_gfmat("field 4\n2 4\n1 0 1 1\n0 1 1 a\n").unwrap();
        Matroid::from_matrix(&m, None).unwrap()
    }

    #[test]
    fn ranks() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.rank(0), 0);
        assert_eq!(u24.full_rank(), 2);
        // (I₃ | A) for the path 0-1-2.
        let m = gf2_matrix(&[&[1, 0, 0, 0, 1, 0], &[0, 1, 0, 1, 0, 1], &[0, 0, 1, 0, 1, 0]]);
        let m = Matroid::from_matrix(&m, None).unwrap();
        assert_eq!(m.full_rank(), 3);
        assert_eq!(m.rank_of(&["3", "5"]).unwrap(), 1);
        assert!(matches!(m.rank_of(&["x"]), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn circuit_examples() {
        let free = Matroid::from_matrix(&FieldMatrix::identity(Field::Gf2, 3), None).unwrap();
        assert!(free.circuits().unwrap().is_empty());
        let lp = Matroid::from_matrix(&FieldMatrix::zeros(Field::Gf2, 1, 1), None).unwrap();
        assert_eq!(lp.circuits().unwrap(), vec![1]);
        assert_eq!(Matroid::uniform(2, 4).unwrap().circuits().unwrap(), vec![0b0111, 0b1011, 0b1101, 0b1110]);
        assert_eq!(u24_gf4().circuits().unwrap(), vec![0b0111, 0b1011, 0b1101, 0b1110]);
    }

    #[test]
    fn circuit_list_validation() {
        assert!(Matroid::from_circuits(labels(3), vec![0b011, 0b001]).is_err());
        // {0,1} and {1,2}: elimination on 1 needs a circuit inside {0,2}.
        assert!(Matroid::from_circuits(labels(3), vec![0b011, 0b110]).is_err());
        assert!(Matroid::from_circuits(labels(3), vec![0b011, 0b110, 0b101]).is_ok());
    }

    #[test]
    fn duals() {
        let free2 = Matroid::from_matrix(&FieldMatrix::identity(Field::Gf2, 2), None).unwrap();
        let d = free2.dual().unwrap();
        assert_eq!(d.circuits().unwrap(), vec![0b01, 0b10]);
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.dual().unwrap().circuits().unwrap(), u.circuits().unwrap());
        assert_eq!(u24_gf4().dual().unwrap().bases().unwrap(), u.bases().unwrap());
        let bent = gf2_matrix(&[&[1, 1], &[0, 1]]);
        assert_eq!(Matroid::from_matrix(&bent, None).unwrap().dual(), Err(Error::NotStandardForm));
    }

    #[test]
    fn dual_is_an_involution_and_complements_bases() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = rng.gen_range(1..=6);
            let m = random_standard_form(&mut rng, n);
            let d = m.dual().unwrap();
            let mut comp: Vec<u64> = bases_oracle(&m).iter().map(|b| m.ground() & !b).collect();
            sort_lex(&mut comp);
            assert_eq!(bases_oracle(&d), comp);
            assert_eq!(bases_oracle(&d.dual().unwrap()), bases_oracle(&m));
        }
    }

    #[test]
    fn standard_form_keeps_the_matroid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (r, n) = (rng.gen_range(1..4), rng.gen_range(1..7));
            let mut m = FieldMatrix::zeros(Field::Gf4, r, n);
            for i in 0..r {
                for j in 0..n {
                    m.set(i, j, Gf4::ALL[rng.gen_range(0..4)]);
                }
            }
            let mat = Matroid::from_matrix(&m, None).unwrap();
            let sf = mat.to_standard_form().unwrap();
            assert!(sf.standard_form_basis().is_some());
            assert_eq!(bases_oracle(&sf), bases_oracle(&mat));
        }
    }

    #[test]
    fn minors() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.minor(0, 0).unwrap(), u);
        let c = u.minor(1, 0).unwrap();
        assert_eq!(c.circuits().unwrap(), Matroid::uniform(1, 3).unwrap().circuits().unwrap());
        assert_eq!(c.labels(), &["1", "2", "3"]);
        assert_eq!(u.minor(1, 1), Err(Error::OverlappingSets));
        let lin = u24_gf4().minor(1, 0).unwrap();
        assert_eq!(lin.circuits().unwrap(), c.circuits().unwrap());
    }

    #[test]
    fn contraction_nullity_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let n = rng.gen_range(2..=7);
            let m = random_standard_form(&mut rng, n);
            let x = rng.gen_range(0..1u64 << n);
            let minor = m.minor(x, 0).unwrap();
            let keep = m.ground() & !x;
            for y in submasks(minor.ground()) {
                let y_old = crate::bits::pdep(y, keep);
                assert_eq!(minor.nullity(y), m.nullity(x | y_old) - m.nullity(x));
            }
            let as_circuits = Matroid::from_circuits(m.labels().to_vec(), m.circuits().unwrap()).unwrap();
            assert_eq!(as_circuits.minor(x, 0).unwrap().circuits().unwrap(), minor.circuits().unwrap());
        }
    }

    #[test]
    fn direct_sums() {
        let lp = Matroid::from_matrix(&FieldMatrix::zeros(Field::Gf2, 1, 1), Some(vec!["l".into()])).unwrap();
        let cl = Matroid::from_matrix(&FieldMatrix::identity(Field::Gf2, 1), Some(vec!["c".into()])).unwrap();
        let s = lp.direct_sum(&cl).unwrap();
        assert_eq!(s.full_rank(), 1);
        assert_eq!(s.circuits().unwrap(), vec![0b01]);
        let empty = Matroid::from_circuits(vec![], vec![]).unwrap();
        assert_eq!(cl.direct_sum(&empty).unwrap().circuits().unwrap(), cl.circuits().unwrap());
        assert!(matches!(cl.direct_sum(&cl), Err(Error::LabelCollision(_))));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random_standard_form(&mut rng, 4);
            let b = random_standard_form(&mut rng, 3)
                .with_labels(vec!["x".into(), "y".into(), "z".into()])
                .unwrap();
            let s = a.direct_sum(&b).unwrap();
            assert_eq!(s.full_rank(), a.full_rank() + b.full_rank());
            let mixed = a.direct_sum(&Matroid::from_circuits(b.labels().to_vec(), b.circuits().unwrap()).unwrap());
            assert_eq!(mixed.unwrap().circuits().unwrap(), s.circuits().unwrap());
        }
    }

    #[test]
    fn orthogonality() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let m = random_standard_form(&mut rng, 5);
            assert!(m.orthogonal(&m.dual().unwrap()).unwrap());
        }
        let coloop = Matroid::from_matrix(&FieldMatrix::identity(Field::Gf2, 1), None).unwrap();
        assert!(coloop.orthogonal(&coloop).unwrap());
        let loop_coloop = Matroid::from_circuits(labels(2), vec![0b01]).unwrap();
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert!(!loop_coloop.orthogonal(&u12).unwrap());
        assert_eq!(u12.orthogonal(&coloop), Err(Error::GroundMismatch));
    }

    #[test]
    fn cycle_spaces() {
        let free = Matroid::from_matrix(&FieldMatrix::identity(Field::Gf2, 3), None).unwrap();
        assert_eq!(free.cycle_space().unwrap(), vec![0]);
        let tri = Matroid::from_matrix(&gf2_matrix(&[&[1, 0, 1], &[0, 1, 1]]), None).unwrap();
        assert_eq!(tri.cycle_space().unwrap(), vec![0, 0b111]);
        assert_eq!(u24_gf4().cycle_space(), Err(Error::NotBinary));
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let n = rng.gen_range(1..=7);
            let m = random_standard_form(&mut rng, n);
            let cs = m.cycle_space().unwrap();
            assert_eq!(cs.len(), 1 << m.nullity(m.ground()));
            assert!(cs.iter().all(|&c| m.is_disjoint_union_of_circuits(c)));
        }
    }

    #[test]
    fn binary_circuit_cocircuit_parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let n = rng.gen_range(1..=7);
            let m = random_standard_form(&mut rng, n);
            let co = m.dual().unwrap().circuits().unwrap();
            for c in m.circuits().unwrap() {
                assert!(co.iter().all(|d| (c & d).count_ones() % 2 == 0));
            }
        }
    }

    #[test]
    fn binary_iff_no_triple_intersection() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut catalog = vec![Matroid::uniform(2, 4).unwrap(), Matroid::uniform(2, 5).unwrap(), Matroid::uniform(3, 6).unwrap()];
        for _ in 0..10 {
            let n = rng.gen_range(1..=6);
            catalog.push(random_standard_form(&mut rng, n));
        }
        for m in catalog {
            let co = m.dual().unwrap().circuits().unwrap();
            let parity = m.circuits().unwrap().iter().all(|c| co.iter().all(|d| (c & d).count_ones() != 3));
            assert_eq!(parity, m.binary_representation().unwrap().is_some());
        }
    }

    #[test]
    fn tutte_examples() {
        let (m1, two) = (rational(-1), rational(2));
        let empty = Matroid::from_circuits(vec![], vec![]).unwrap();
        assert_eq!(empty.tutte(&two, &m1).unwrap(), rational(1));
        let coloop = Matroid::from_matrix(&FieldMatrix::identity(Field::Gf2, 1), None).unwrap();
        assert_eq!(coloop.tutte(&rational(7), &rational(7)).unwrap(), rational(7));
        assert_eq!(Matroid::uniform(2, 4).unwrap().tutte(&m1, &m1).unwrap(), rational(-2));
    }

    proptest! {
        #[test]
        fn tutte_matches_rank_generating_sum(seed in 0u64..1000, x in -3i64..4, y in -3i64..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(0..=7);
            let m = random_standard_form(&mut rng, n);
            let (x, y) = (rational(x), rational(y));
            prop_assert_eq!(m.tutte(&x, &y).unwrap(), tutte_by_subsets(&m, &x, &y));
        }
    }
}
