//! Exact linear algebra over GF(2) and GF(4).
//!
//! GF(4) = {0, 1, a, b} with a² = a + 1 = b. An element is stored as two bits:
//! the constant coefficient (the `lo` plane) and the coefficient of `a` (the `hi`
//! plane). GF(2) matrices simply keep the `hi` plane zero, so both fields share
//! one packed layout and addition is XOR on both planes.

use std::fmt;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Gf2,
    Gf4,
}

impl Field {
    pub fn order(self) -> u8 {
        match self {
            Field::Gf2 => 2,
            Field::Gf4 => 4,
        }
    }

    pub fn from_order(q: u64) -> Result<Field> {
        match q {
            2 => Ok(Field::Gf2),
            4 => Ok(Field::Gf4),
            _ => Err(Error::Parse(format!("unsupported field order {q}"))),
        }
    }

    pub fn contains(self, x: Gf4) -> bool {
        self == Field::Gf4 || x.0 < 2
    }

    /// Smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        self.max(other)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

const MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const A: Gf4 = Gf4(2);
    pub const B: Gf4 = Gf4(3);
    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::A, Gf4::B];

    pub fn from_bits(lo: u64, hi: u64) -> Gf4 {
        Gf4(((lo & 1) | ((hi & 1) << 1)) as u8)
    }

    pub fn lo(self) -> u64 {
        (self.0 & 1) as u64
    }

    pub fn hi(self) -> u64 {
        (self.0 >> 1) as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The non-trivial field automorphism: fixes 0 and 1, swaps a and b.
    pub fn conj(self) -> Gf4 {
        match self.0 {
            2 => Gf4::B,
            3 => Gf4::A,
            _ => self,
        }
    }

    pub fn recip(self) -> Option<Gf4> {
        match self.0 {
            0 => None,
            1 => Some(Gf4::ONE),
            2 => Some(Gf4::B),
            _ => Some(Gf4::A),
        }
    }

    pub fn symbol(self) -> char {
        ['0', '1', 'a', 'b'][self.0 as usize]
    }

    pub fn parse(s: &str) -> Option<Gf4> {
        match s {
            "0" => Some(Gf4::ZERO),
            "1" => Some(Gf4::ONE),
            "a" => Some(Gf4::A),
            "b" => Some(Gf4::B),
            _ => None,
        }
    }
}

impl std::ops::Add for Gf4 {
    type Output = Gf4;
    // Characteristic 2: addition is XOR of the coordinate bits.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, o: Gf4) -> Gf4 {
        Gf4(self.0 ^ o.0)
    }
}

impl std::ops::Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, o: Gf4) -> Gf4 {
        Gf4(MUL[self.0 as usize][o.0 as usize])
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Multiplies every entry of a packed word pair by `s`.
#[inline]
fn scale_planes(s: Gf4, lo: u64, hi: u64) -> (u64, u64) {
    match s.0 {
        0 => (0, 0),
        1 => (lo, hi),
        // a(l + h·a) = h + (l + h)a
        2 => (hi, lo ^ hi),
        // b(l + h·a) = (l + h) + l·a
        _ => (lo ^ hi, lo),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    pub field: Field,
    pub value: Gf4,
}

impl FieldScalar {
    pub fn new(field: Field, value: Gf4) -> Result<FieldScalar> {
        if field.contains(value) {
            Ok(FieldScalar { field, value })
        } else {
            Err(Error::FieldMismatch(Field::Gf4, field))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    InvAutomorphism,
}

pub fn field_arith(op: ArithOp, x: FieldScalar, y: Option<FieldScalar>) -> Result<FieldScalar> {
    let binary = |y: Option<FieldScalar>| -> Result<FieldScalar> {
        let y = y.ok_or_else(|| Error::Invalid("binary operation needs two operands".into()))?;
        if y.field != x.field {
            return Err(Error::FieldMismatch(x.field, y.field));
        }
        Ok(y)
    };
    let value = match op {
        ArithOp::Add => x.value + binary(y)?.value,
        ArithOp::Mul => x.value * binary(y)?.value,
        ArithOp::InvAutomorphism => x.value.conj(),
    };
    Ok(FieldScalar { field: x.field, value })
}

/// A column of at most 64 entries, packed into two bit planes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ColVec {
    pub lo: u64,
    pub hi: u64,
}

impl ColVec {
    pub fn unit(i: usize) -> ColVec {
        ColVec { lo: 1 << i, hi: 0 }
    }

    pub fn get(&self, i: usize) -> Gf4 {
        Gf4::from_bits(self.lo >> i, self.hi >> i)
    }

    pub fn set(&mut self, i: usize, v: Gf4) {
        let m = 1u64 << i;
        self.lo = (self.lo & !m) | (v.lo() << i);
        self.hi = (self.hi & !m) | (v.hi() << i);
    }

    pub fn is_zero(&self) -> bool {
        self.lo | self.hi == 0
    }

    pub fn support(&self) -> u64 {
        self.lo | self.hi
    }

    pub fn scale(self, s: Gf4) -> ColVec {
        let (lo, hi) = scale_planes(s, self.lo, self.hi);
        ColVec { lo, hi }
    }

    pub fn conj(self) -> ColVec {
        // conj(l + h·a) = (l + h) + h·a
        ColVec { lo: self.lo ^ self.hi, hi: self.hi }
    }

    /// Shifts the entries down by `offset` rows (block-diagonal placement).
    pub fn shifted(self, offset: usize) -> ColVec {
        ColVec { lo: self.lo << offset, hi: self.hi << offset }
    }

    /// Keeps the rows selected by `rows`, renumbered consecutively.
    pub fn compress(self, rows: u64) -> ColVec {
        ColVec { lo: crate::bits::pext(self.lo, rows), hi: crate::bits::pext(self.hi, rows) }
    }
}

impl std::ops::Add for ColVec {
    type Output = ColVec;
    fn add(self, o: ColVec) -> ColVec {
        ColVec { lo: self.lo ^ o.lo, hi: self.hi ^ o.hi }
    }
}

/// Incrementally built echelon basis of a column space.
///
/// Each stored vector is normalized to 1 at its pivot row and is zero at the
/// pivots of all earlier vectors, so one forward pass reduces a new column.
#[derive(Clone, Debug, Default)]
pub struct ColBasis {
    vecs: Vec<(u32, ColVec)>,
}

impl ColBasis {
    pub fn new() -> ColBasis {
        ColBasis { vecs: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.vecs.len()
    }

    /// The canonical representative of `v` modulo the span: zero at every pivot.
    pub fn reduce(&self, mut v: ColVec) -> ColVec {
        for &(p, b) in &self.vecs {
            let c = v.get(p as usize);
            if !c.is_zero() {
                v = v + b.scale(c);
            }
        }
        v
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: ColVec) -> bool {
        let w = self.reduce(v);
        if w.is_zero() {
            return false;
        }
        let p = w.support().trailing_zeros();
        let c = w.get(p as usize);
        self.vecs.push((p, w.scale(c.recip().expect("nonzero pivot"))));
        true
    }

    pub fn pivot_rows(&self) -> u64 {
        self.vecs.iter().fold(0, |m, &(p, _)| m | 1 << p)
    }
}

pub fn rank_of_columns<I: IntoIterator<Item = ColVec>>(cols: I) -> usize {
    let mut basis = ColBasis::new();
    cols.into_iter().filter(|&c| basis.insert(c)).count()
}

/// Rank over GF(2) of the rows given as bit masks.
pub fn gf2_rank_words(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    while let Some(pos) = rows.iter().position(|&r| r != 0) {
        let pivot = rows.swap_remove(pos);
        let low = pivot & pivot.wrapping_neg();
        for r in rows.iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Dense matrix over GF(2) or GF(4), rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    words: usize,
    lo: Vec<u64>,
    hi: Vec<u64>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMatrix({}, {}x{})", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "\n  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> FieldMatrix {
        let words = cols.div_ceil(64).max(1);
        FieldMatrix { field, rows, cols, words, lo: vec![0; rows * words], hi: vec![0; rows * words] }
    }

    pub fn identity(field: Field, n: usize) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Gf4::ONE);
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<Gf4>]) -> Result<FieldMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = FieldMatrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Invalid("ragged matrix rows".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if !field.contains(v) {
                    return Err(Error::FieldMismatch(Field::Gf4, field));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from columns of height `rows` (at most 64).
    pub fn from_columns(field: Field, rows: usize, cols: &[ColVec]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c.get(i));
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Gf4 {
        let w = i * self.words + j / 64;
        Gf4::from_bits(self.lo[w] >> (j % 64), self.hi[w] >> (j % 64))
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Gf4) {
        debug_assert!(self.field.contains(v));
        let w = i * self.words + j / 64;
        let b = j % 64;
        self.lo[w] = (self.lo[w] & !(1 << b)) | (v.lo() << b);
        self.hi[w] = (self.hi[w] & !(1 << b)) | (v.hi() << b);
    }

    pub fn row(&self, i: usize) -> Vec<Gf4> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Gf4>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Column `j` as a packed vector; requires at most 64 rows.
    pub fn column(&self, j: usize) -> ColVec {
        assert!(self.rows <= 64, "column packing needs at most 64 rows");
        let mut c = ColVec::default();
        for i in 0..self.rows {
            c.set(i, self.get(i, j));
        }
        c
    }

    pub fn columns(&self) -> Result<Vec<ColVec>> {
        crate::limits::check("matrix rows", self.rows, 64)?;
        Ok((0..self.cols).map(|j| self.column(j)).collect())
    }

    /// Same entries viewed over a larger field.
    pub fn lifted(&self, field: Field) -> FieldMatrix {
        let mut m = self.clone();
        m.field = self.field.join(field);
        m
    }

    fn same_shape_field(&self, other: &FieldMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Invalid("matrix shapes differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.same_shape_field(other)?;
        let mut m = self.clone();
        m.lo.iter_mut().zip(&other.lo).for_each(|(a, b)| *a ^= b);
        m.hi.iter_mut().zip(&other.hi).for_each(|(a, b)| *a ^= b);
        Ok(m)
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise field automorphism (the identity over GF(2)).
    pub fn conj(&self) -> FieldMatrix {
        let mut m = self.clone();
        m.lo.iter_mut().zip(&self.hi).for_each(|(l, h)| *l ^= h);
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// inv(Aᵀ) = A.
    pub fn is_inv_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose().conj()
    }

    pub fn hstack(blocks: &[&FieldMatrix]) -> Result<FieldMatrix> {
        let first = blocks.first().ok_or_else(|| Error::Invalid("nothing to stack".into()))?;
        let field = blocks.iter().fold(first.field, |f, b| f.join(b.field));
        let rows = first.rows;
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::Invalid("blocks have different heights".into()));
        }
        let mut m = FieldMatrix::zeros(field, rows, blocks.iter().map(|b| b.cols).sum());
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    m.set(i, off + j, b.get(i, j));
                }
            }
            off += b.cols;
        }
        Ok(m)
    }

    pub fn select_columns(&self, cols: &[usize]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            let (src, dst) = (i * self.words, k * m.words);
            m.lo[dst..dst + m.words].copy_from_slice(&self.lo[src..src + self.words]);
            m.hi[dst..dst + m.words].copy_from_slice(&self.hi[src..src + self.words]);
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.lo.swap(a * self.words + k, b * self.words + k);
            self.hi.swap(a * self.words + k, b * self.words + k);
        }
    }

    pub fn scale_row(&mut self, i: usize, s: Gf4) {
        for k in i * self.words..(i + 1) * self.words {
            (self.lo[k], self.hi[k]) = scale_planes(s, self.lo[k], self.hi[k]);
        }
    }

    /// row[dst] += s · row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, s: Gf4) {
        for k in 0..self.words {
            let (l, h) = scale_planes(s, self.lo[src * self.words + k], self.hi[src * self.words + k]);
            self.lo[dst * self.words + k] ^= l;
            self.hi[dst * self.words + k] ^= h;
        }
    }

    /// Reduced row echelon form and the pivot columns, ascending.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(p, r);
            m.scale_row(r, m.get(r, c).recip().expect("nonzero pivot"));
            for i in 0..m.rows {
                let e = m.get(i, c);
                if i != r && !e.is_zero() {
                    m.add_row_multiple(i, r, e);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Canonical basis of the right kernel: one vector per free column, in
    /// ascending order, with a 1 at that free column and zeros at the others.
    pub fn null_space(&self) -> Vec<Vec<Gf4>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        pivots.iter().for_each(|&p| is_pivot[p] = true);
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Gf4::ZERO; self.cols];
                v[f] = Gf4::ONE;
                // Characteristic 2: -x = x.
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Gf4]) -> Vec<Gf4> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Gf4::ZERO, |acc, j| acc + self.get(i, j) * v[j]))
            .collect()
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid("inner dimensions differ".into()));
        }
        let field = self.field.join(other.field);
        let mut m = FieldMatrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s = (0..self.cols).fold(Gf4::ZERO, |acc, k| acc + self.get(i, k) * other.get(k, j));
                m.set(i, j, s);
            }
        }
        Ok(m)
    }

    pub fn parse_gfmat(text: &str) -> Result<FieldMatrix> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let bad = |msg: &str| Error::Parse(format!("gfmat: {msg}"));
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let q = header
            .strip_prefix("field")
            .and_then(|r| r.trim().parse::<u64>().ok())
            .ok_or_else(|| bad("first line must be `field 2` or `field 4`"))?;
        let field = Field::from_order(q)?;
        let dims: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing dimensions"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad dimension")))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else { return Err(bad("dimension line must be `<rows> <cols>`")) };
        let mut m = FieldMatrix::zeros(field, rows, cols);
        for i in 0..rows {
            let line = lines.next().ok_or_else(|| bad("too few rows"))?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(bad(&format!("row {i} has {} entries, expected {cols}", entries.len())));
            }
            for (j, t) in entries.into_iter().enumerate() {
                let v = Gf4::parse(t).ok_or_else(|| bad(&format!("bad entry {t:?}")))?;
                if !field.contains(v) {
                    return Err(bad(&format!("entry {t} is not in {field}")));
                }
                m.set(i, j, v);
            }
        }
        if lines.next().is_some() {
            return Err(bad("trailing rows"));
        }
        Ok(m)
    }

    pub fn row_string(&self, i: usize) -> String {
        self.row(i).iter().map(|v| v.symbol().to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn to_gfmat(&self) -> String {
        let mut s = format!("field {}\n{} {}\n", self.field.order(), self.rows, self.cols);
        for i in 0..self.rows {
            s.push_str(&self.row_string(i));
            s.push('\n');
        }
        s
    }
}
