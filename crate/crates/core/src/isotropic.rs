//! Graphs, isotropic matroids (I | A | A+I) and the tight 3-matroids they shelter.
//!
//! Vertex `v` of a graph, or row `v` of `A`, becomes skew class `v`; its slots
//! 0, 1, 2 carry the columns of the blocks I, A and A+I, i.e. φ₁, φ₂, φ₃.

use crate::algebra::{gf2_rank_words, ColVec, Field, FieldMatrix, Gf4};
use crate::bits::{iter_bits, low_mask, pext, sort_lex};
use crate::matroid::Matroid;
use crate::multimatroid::{Carrier, Multimatroid};
use crate::{exec, limits, Error, Result};

/// Graph with loops allowed and no parallel edges. `adj[v]` has bit `u` set
/// when u and v are adjacent; bit `v` of `adj[v]` is a loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        assert!(n <= 64, "at most 64 vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        limits::check("graph vertices", n, 64)?;
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge {u}-{v} leaves the vertex set 0..{n}")));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = low_mask(n) & !(1 << v);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    /// Graph from the bits of `code` over the pairs u < v in lexicographic order.
    pub fn from_code(n: usize, code: u64) -> Graph {
        let mut g = Graph::empty(n);
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if code >> k & 1 == 1 {
                    g.adj[u] |= 1 << v;
                    g.adj[v] |= 1 << u;
                }
                k += 1;
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.adj[v] >> v & 1 == 1)
    }

    pub fn loops(&self) -> u64 {
        (0..self.n).filter(|&v| self.adj[v] >> v & 1 == 1).fold(0, |m, v| m | 1 << v)
    }

    /// Sorted edge list with u ≤ v.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| iter_bits(self.adj[u] >> u).map(move |d| (u, u + d))).collect()
    }

    pub fn adjacency_matrix(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(Field::Gf2, self.n, self.n);
        for u in 0..self.n {
            for v in iter_bits(self.adj[u]) {
                m.set(u, v, Gf4::ONE);
            }
        }
        m
    }

    /// G + Y: loops toggled at the vertices of `y`.
    pub fn toggle_loops(&self, y: u64) -> Graph {
        let mut g = self.clone();
        for v in iter_bits(y) {
            g.adj[v] ^= 1 << v;
        }
        g
    }

    /// G[X], with the vertices of X renumbered in order.
    pub fn induced(&self, x: u64) -> Graph {
        Graph { n: x.count_ones() as usize, adj: iter_bits(x).map(|v| pext(self.adj[v], x)).collect() }
    }

    /// n(A(G+Y[X])) without building the subgraph; `y` is read relative to V.
    pub fn nullity_of(&self, x: u64, y: u64) -> usize {
        let rows: Vec<u64> = iter_bits(x).map(|v| (self.adj[v] ^ (y & 1 << v)) & x).collect();
        x.count_ones() as usize - gf2_rank_words(rows)
    }

    /// Vertices outside X with an odd / even number of neighbours in X.
    pub fn neighborhood_parity(&self, x: u64) -> (u64, u64) {
        let outside = self.vertices() & !x;
        let odd = iter_bits(outside).filter(|&v| (self.adj[v] & x).count_ones() % 2 == 1).fold(0, |m, v| m | 1 << v);
        (odd, outside & !odd)
    }

    pub fn parse(text: &str) -> Result<Graph> {
        let bad = |msg: String| Error::Parse(format!("graph: {msg}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| bad("empty input".into()))?
            .parse()
            .map_err(|_| bad("first line must be the vertex count".into()))?;
        if n > 64 {
            return Err(bad(format!("{n} vertices exceed the limit of 64")));
        }
        let mut edges = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = parts[..] else { return Err(bad(format!("edge line {line:?} must be `<u> <v>`"))) };
            let parse = |t: &str| t.parse::<usize>().map_err(|_| bad(format!("bad vertex {t:?}")));
            let (u, v) = (parse(u)?, parse(v)?);
            if u >= n || v >= n {
                return Err(bad(format!("vertex out of range in {line:?}")));
            }
            edges.push((u, v));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// X ⊆ V with G[X] Eulerian (every vertex of X has an even number of neighbours in X).
pub fn eulerian_subsets(g: &Graph) -> Result<Vec<u64>> {
    if g.has_loops() {
        return Err(Error::HasLoops);
    }
    limits::check_order("graph vertices", g.n(), limits::EULERIAN_VERTICES)?;
    let mut out =
        exec::filter_range(1 << g.n(), |x| iter_bits(x).all(|v| (g.neighbors(v) & x).count_ones().is_multiple_of(2)));
    sort_lex(&mut out);
    Ok(out)
}

pub fn neighborhood_parity(g: &Graph, x: u64) -> (u64, u64) {
    g.neighborhood_parity(x)
}

/// Everything produced by an isotropic construction.
#[derive(Clone, Debug)]
pub struct IsotropicBuild {
    pub field: Field,
    /// The V × V source matrix.
    pub a: FieldMatrix,
    /// The isotropic matroid (I | A | A+I), blocks side by side.
    pub matrix: FieldMatrix,
    pub multimatroid: Multimatroid,
    /// Global element masks of the elements carrying the columns of I, A and A+I.
    pub blocks: [u64; 3],
}

impl IsotropicBuild {
    pub fn order(&self) -> usize {
        self.a.rows()
    }

    /// φᵢ(X) for i ∈ {1, 2, 3}.
    pub fn phi(&self, i: usize, x: u64) -> u64 {
        let blk = self.blocks[i - 1];
        let car = self.multimatroid.carrier();
        iter_bits(x).fold(0, |m, v| m | (blk & car.class_mask(v)))
    }
}

fn check_source(a: &FieldMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Invalid("source matrix must be square".into()));
    }
    match a.field() {
        Field::Gf2 if !a.is_symmetric() => Err(Error::NotSymmetric),
        Field::Gf4 if !a.is_inv_symmetric() => Err(Error::NotInvSymmetric),
        _ => Ok(()),
    }
}

/// Sheltering columns in global element order, with `slot_of_block[v][i]` giving
/// the slot that block i occupies in class v.
fn build(a: &FieldMatrix, slot_of_block: &[[usize; 3]]) -> Result<IsotropicBuild> {
    let n = a.rows();
    limits::check("isotropic order", 3 * n, 64)?;
    let id = FieldMatrix::identity(a.field(), n);
    let a_plus_i = a.add(&id)?;
    let matrix = FieldMatrix::hstack(&[&id, a, &a_plus_i])?;
    let carrier = Carrier::uniform(n, 3)?;
    let mut cols = vec![ColVec::default(); 3 * n];
    let mut blocks = [0u64; 3];
    for v in 0..n {
        for (i, blk) in blocks.iter_mut().enumerate() {
            let e = carrier.elem(v, slot_of_block[v][i]);
            cols[e] = matrix.column(i * n + v);
            *blk |= 1 << e;
        }
    }
    let m = Matroid::from_columns(a.field(), n, cols, carrier.labels())?;
    let multimatroid = Multimatroid::sheltered(carrier, m)?;
    if n <= limits::VALIDATE_ORDER {
        if let Some(v) = multimatroid.is_multimatroid()? {
            return Err(Error::ConstructionMismatch(format!("isotropic build is not a multimatroid: {v:?}")));
        }
        if let Some(v) = multimatroid.is_tight()? {
            return Err(Error::ConstructionMismatch(format!("isotropic build is not tight: {v:?}")));
        }
    }
    Ok(IsotropicBuild { field: a.field(), a: a.clone(), matrix, multimatroid, blocks })
}

/// 𝒵_A for a symmetric GF(2) or inv-symmetric GF(4) matrix A.
pub fn isotropic_multimatroid(a: &FieldMatrix) -> Result<IsotropicBuild> {
    check_source(a)?;
    build(a, &vec![[0, 1, 2]; a.rows()])
}

/// 𝒵_G := 𝒵_{A(G)}.
pub fn z_graph(g: &Graph) -> Result<IsotropicBuild> {
    isotropic_multimatroid(&g.adjacency_matrix())
}

impl IsotropicBuild {
    /// 𝒵 of A with its diagonal cleared. Clearing A[v][v] = 1 exchanges the A and
    /// A+I columns of class v, so the result is this multimatroid with slots 1
    /// and 2 swapped in those classes.
    pub fn normalized(&self) -> Result<IsotropicBuild> {
        let mut a = self.a.clone();
        for v in 0..self.order() {
            a.set(v, v, Gf4::ZERO);
        }
        isotropic_multimatroid(&a)
    }
}

/// The tight 3-matroid 𝒵_{M,3} with 𝒵_{M,3} − T₃ = 𝒵_M, built from
/// A = [[0, B], [inv(Bᵀ), 0]] for the standard form (I | B) of M.
///
/// The slots of basis classes are arranged so that slot 0 is the M* side and
/// slot 1 the M side, matching [`crate::multimatroid::zm`]; slot 2 is T₃.
pub fn z_quaternary(m: &Matroid) -> Result<IsotropicBuild> {
    let sf = m.to_standard_form()?;
    let basis = sf.standard_form_basis().ok_or(Error::NotStandardForm)?;
    let n = sf.len();
    let field = sf.field().expect("represented");
    let cols = sf.matrix()?;
    let basis_mask = basis.iter().fold(0u64, |s, &b| s | 1 << b);
    let others: Vec<usize> = iter_bits(low_mask(n) & !basis_mask).collect();
    let mut a = FieldMatrix::zeros(field, n, n);
    for (i, &b) in basis.iter().enumerate() {
        for &e in &others {
            let x = cols.get(i, e);
            a.set(b, e, x);
            a.set(e, b, x.conj());
        }
    }
    // In class b, the I column realizes b in M and the A column realizes b in M*.
    let slots: Vec<[usize; 3]> =
        (0..n).map(|v| if basis_mask >> v & 1 == 1 { [1, 0, 2] } else { [0, 1, 2] }).collect();
    check_source(&a)?;
    let built = build(&a, &slots)?;
    let target = crate::multimatroid::zm(&sf)?;
    let minus_t3 = built.multimatroid.delete(built.blocks[2])?;
    let agree = exec::all(target.carrier().subtransversal_count(), |i| {
        let s = target.carrier().subtransversal(i);
        minus_t3.rank(s) == target.rank(s)
    });
    if !agree {
        return Err(Error::ConstructionMismatch("𝒵_A − T₃ differs from 𝒵_M".into()));
    }
    Ok(built)
}

/// Nullity of the T₃ block of 𝒵_{M,3}, i.e. n − rank(A + I).
pub fn bicycle_dimension(m: &Matroid) -> Result<usize> {
    let b = z_quaternary(m)?;
    Ok(b.multimatroid.nullity(b.blocks[2]))
}

/// Ort(𝒵_G) assembled from the Eulerian subsets: φ₁(X) ∪ φ₂(odd(X)) ∪ φ₃(even(X)).
pub fn ort_via_eulerian(g: &Graph) -> Result<Vec<u64>> {
    limits::check_order("graph vertices", g.n(), limits::ORT_EULERIAN_VERTICES)?;
    let car = Carrier::uniform(g.n(), 3)?;
    let mut out: Vec<u64> = eulerian_subsets(g)?
        .into_iter()
        .map(|x| {
            let (odd, even) = g.neighborhood_parity(x);
            let pick = |set: u64, slot: usize| iter_bits(set).fold(0u64, |m, v| m | 1 << car.elem(v, slot));
            pick(x, 0) | pick(odd, 1) | pick(even, 2)
        })
        .collect();
    sort_lex(&mut out);
    Ok(out)
}

/// Cycle space of 𝒵_G − φ₃(V) per the Eulerian description, as masks over the
/// (|V|, 2) carrier: φ₂(X) ∪ φ₁(odd(X)).
pub fn cycle_space_via_eulerian(g: &Graph) -> Result<Vec<u64>> {
    let car = Carrier::uniform(g.n(), 2)?;
    let mut out: Vec<u64> = eulerian_subsets(g)?
        .into_iter()
        .map(|x| {
            let (odd, _) = g.neighborhood_parity(x);
            iter_bits(x).fold(0u64, |m, v| m | 1 << car.elem(v, 1))
                | iter_bits(odd).fold(0u64, |m, v| m | 1 << car.elem(v, 0))
        })
        .collect();
    sort_lex(&mut out);
    Ok(out)
}

/// Splits a transversal of 𝒵_G into the vertex sets (X₁, X₂, X₃) of its slots.
pub fn split_transversal(car: &Carrier, t: u64) -> Result<[u64; 3]> {
    if !car.is_transversal(t) || car.sizes().iter().any(|&s| s != 3) {
        return Err(Error::NotTransversal);
    }
    let mut parts = [0u64; 3];
    for e in iter_bits(t) {
        parts[car.slot_of(e)] |= 1 << car.class_of(e);
    }
    Ok(parts)
}

/// n(A(G+X₃[X₂ ∪ X₃])), checked against the multimatroid nullity of T in 𝒵_G.
pub fn graph_nullity_bridge(g: &Graph, zg: &Multimatroid, t: u64) -> Result<usize> {
    let [_, x2, x3] = split_transversal(zg.carrier(), t)?;
    let graph_side = g.nullity_of(x2 | x3, x3);
    let mm_side = zg.nullity(t);
    if graph_side != mm_side {
        return Err(Error::InternalInconsistency(format!(
            "graph nullity {graph_side} differs from multimatroid nullity {mm_side}"
        )));
    }
    Ok(graph_side)
}

/// The ℋ₃,₃ source matrix.
pub fn h33_matrix() -> FieldMatrix {
    FieldMatrix::parse_gfmat("field 4\n3 3\n0 1 a\n1 0 1\nb 1 0\n").expect("valid literal")
}

/// A′, whose 𝒵 is isomorphic to 𝒵_{U₂,₄,3}.
pub fn u24_block_matrix() -> FieldMatrix {
    FieldMatrix::parse_gfmat("field 4\n4 4\n0 0 a b\n0 0 b a\nb a 0 0\na b 0 0\n").expect("valid literal")
}

/// A GF(4) representation of U₂,₄ in standard form.
pub fn u24_matrix() -> FieldMatrix {
    FieldMatrix::parse_gfmat("field 4\n2 4\n1 0 1 1\n0 1 1 a\n").expect("valid literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{gf2_matrix, rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, loops: bool) -> Graph {
        let mut g = Graph::from_code(n, rng.gen_range(0..1u64 << (n * (n - 1) / 2)));
        if loops {
            g = g.toggle_loops(rng.gen_range(0..1u64 << n));
        }
        g
    }

    fn random_inv_symmetric(rng: &mut ChaCha8Rng, n: usize) -> FieldMatrix {
        let mut a = FieldMatrix::zeros(Field::Gf4, n, n);
        for i in 0..n {
            a.set(i, i, Gf4::ALL[rng.gen_range(0..2)]);
            for j in i + 1..n {
                let x = Gf4::ALL[rng.gen_range(0..4)];
                a.set(i, j, x);
                a.set(j, i, x.conj());
            }
        }
        a
    }

    #[test]
    fn graph_text_format() {
        let g = Graph::parse("3\n2 1\n0 1\n1 2\n# comment\n1 1\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 1), (1, 2)]);
        assert_eq!(g.to_text(), "3\n0 1\n1 1\n1 2\n");
        assert!(matches!(Graph::parse("2\n0 2\n"), Err(Error::Parse(_))));
        assert!(matches!(Graph::parse("x\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian_subsets(&Graph::complete(2)).unwrap(), vec![0, 0b01, 0b10]);
        assert_eq!(eulerian_subsets(&Graph::complete(3)).unwrap().len(), 5);
        assert_eq!(eulerian_subsets(&Graph::empty(4)).unwrap().len(), 16);
        assert_eq!(eulerian_subsets(&Graph::empty(1).toggle_loops(1)), Err(Error::HasLoops));
    }

    #[test]
    fn parity_partition() {
        let g = Graph::complete(2);
        assert_eq!(g.neighborhood_parity(0), (0, 0b11));
        assert_eq!(g.neighborhood_parity(0b01), (0b10, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 6, true);
            let x = rng.gen_range(0..64u64);
            let (odd, even) = g.neighborhood_parity(x);
            assert_eq!(odd & even, 0);
            assert_eq!(odd | even, g.vertices() & !x);
        }
    }

    #[test]
    fn source_checks() {
        let bad = gf2_matrix(&[&[0, 1], &[0, 0]]);
        assert_eq!(isotropic_multimatroid(&bad).unwrap_err(), Error::NotSymmetric);
        let not_inv = FieldMatrix::parse_gfmat("field 4\n2 2\n0 a\na 0\n").unwrap();
        assert_eq!(isotropic_multimatroid(&not_inv).unwrap_err(), Error::NotInvSymmetric);
    }

    #[test]
    fn h33_build() {
        let b = isotropic_multimatroid(&h33_matrix()).unwrap();
        assert_eq!(b.a.rank(), 3);
        assert_eq!(b.matrix.rank(), 3);
        assert_eq!(b.matrix.cols(), 9);
        let z = &b.multimatroid;
        assert!(z.circuits().unwrap().iter().all(|&c| z.carrier().is_transversal(c)));
    }

    #[test]
    fn zero_matrix_gives_all_eulerian() {
        for n in 1..=4 {
            let g = Graph::empty(n);
            let b = z_graph(&g).unwrap();
            assert_eq!(ort_via_eulerian(&g).unwrap().len(), 1 << n);
            // Each class: the A column is a loop, the I and A+I columns coincide.
            for v in 0..n {
                assert_eq!(b.multimatroid.nullity(1 << b.multimatroid.carrier().elem(v, 1)), 1);
            }
        }
    }

    #[test]
    fn inv_symmetric_builds_are_tight() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..25 {
            let n = rng.gen_range(1..=4);
            // build() itself rejects non-tight results.
            let b = isotropic_multimatroid(&random_inv_symmetric(&mut rng, n)).unwrap();
            let norm = b.normalized().unwrap();
            assert!((0..n).all(|v| norm.a.get(v, v).is_zero()));
            assert!(norm.multimatroid.same_as(&b.multimatroid.permute_slots(
                &(0..n).map(|v| if b.a.get(v, v) == Gf4::ONE { vec![0, 2, 1] } else { vec![0, 1, 2] }).collect::<Vec<_>>()
            ).unwrap()).unwrap());
        }
    }

    #[test]
    fn tight_iff_zero_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let g = random_graph(&mut rng, n, true);
            let b = z_graph(&g).unwrap();
            let two = b.multimatroid.delete(b.blocks[2]).unwrap();
            assert_eq!(two.tight().unwrap(), !g.has_loops());
        }
    }

    #[test]
    fn u24_block_matrix_matches_z_quaternary() {
        let zq = z_quaternary(&Matroid::from_matrix(&u24_matrix(), None).unwrap()).unwrap();
        let za = isotropic_multimatroid(&u24_block_matrix()).unwrap();
        assert!(zq.multimatroid.isomorphic(&za.multimatroid).unwrap().is_some());
    }

    #[test]
    fn z_quaternary_small_cases() {
        let u11 = Matroid::from_matrix(&FieldMatrix::identity(Field::Gf2, 1), None).unwrap();
        let b = z_quaternary(&u11).unwrap();
        let two = b.multimatroid.delete(b.blocks[2]).unwrap();
        // slot 0 is the M* side: a loop; slot 1 is the coloop of M.
        assert_eq!(two.nullity(0b01), 1);
        assert_eq!(two.nullity(0b10), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let m = {
                let r = rng.gen_range(1..=2);
                let n = rng.gen_range(r..=4);
                let mut mat = FieldMatrix::zeros(Field::Gf4, r, n);
                for i in 0..r {
                    for j in 0..n {
                        mat.set(i, j, Gf4::ALL[rng.gen_range(0..4)]);
                    }
                }
                Matroid::from_matrix(&mat, None).unwrap()
            };
            let z3 = z_quaternary(&m).unwrap();
            let sf_basis = m.lex_least_basis();
            // Z_{M,3}|u for u in T₁ (the M* side) matches Z_{M\u,3}.
            for e in 0..m.len() {
                let u = 1 << z3.multimatroid.carrier().elem(e, 0);
                let lhs = z3.multimatroid.minor(u).unwrap();
                let rhs = z_quaternary(&m.minor(0, 1 << e).unwrap()).unwrap();
                assert!(lhs.isomorphic(&rhs.multimatroid).unwrap().is_some(), "element {e}, basis {sf_basis:b}");
            }
        }
    }

    #[test]
    fn bicycle_dimension_and_tutte() {
        let u24 = Matroid::from_matrix(&u24_matrix(), None).unwrap();
        assert_eq!(bicycle_dimension(&u24).unwrap(), 1);
        for n in 1..=4 {
            let free = Matroid::from_matrix(&FieldMatrix::identity(Field::Gf2, n), None).unwrap();
            let d = bicycle_dimension(&free).unwrap();
            let t = free.tutte(&rational(-1), &rational(-1)).unwrap();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(t, rational(sign * (-2i64).pow(d as u32)));
        }
    }

    #[test]
    fn ort_from_eulerian_k2() {
        let ort = ort_via_eulerian(&Graph::complete(2)).unwrap();
        assert_eq!(ort.len(), 3);
        // φ₃(V) is always orienting for simple graphs.
        let car = Carrier::uniform(2, 3).unwrap();
        assert!(ort.contains(&(1 << car.elem(0, 2) | 1 << car.elem(1, 2))));
    }

    #[test]
    fn nullity_bridge_on_random_transversals() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let g = random_graph(&mut rng, n, true);
            let b = z_graph(&g).unwrap();
            let z = &b.multimatroid;
            assert_eq!(graph_nullity_bridge(&g, z, b.blocks[0]).unwrap(), 0);
            assert_eq!(graph_nullity_bridge(&g, z, b.blocks[1]).unwrap(), g.adjacency_matrix().nullity());
            for _ in 0..10 {
                let t = z.carrier().transversal(rng.gen_range(0..z.carrier().transversal_count()));
                graph_nullity_bridge(&g, z, t).unwrap();
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn graph_and_multimatroid_nullities_agree(n in 1usize..=5, code in 0u64..1 << 10, loops in 0u64..32, t in 0u64..243) {
            let g = Graph::from_code(n, code & low_mask(n * (n - 1) / 2)).toggle_loops(loops & low_mask(n));
            let zg = z_graph(&g).unwrap().multimatroid;
            let t = zg.carrier().transversal(t % zg.carrier().transversal_count());
            proptest::prop_assert!(graph_nullity_bridge(&g, &zg, t).is_ok());
        }
    }
}
