//! Orienting transversals: Ort(Z), the sets 𝓔_T, the coset description over
//! binary tight 3-matroids, and the evaluation identities built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bits::{iter_bits, pdep, sort_lex, submasks};
use crate::multimatroid::{sum_subtransversals, Carrier, Multimatroid};
use crate::polynomials::{format_rational, q1, transition_eval};
use crate::{exec, limits, Error, Result};

/// Number of skew pairs contained in `w`.
pub fn skew_pairs(car: &Carrier, w: u64) -> usize {
    (0..car.order())
        .map(|c| {
            let k = (w & car.class_mask(c)).count_ones() as usize;
            k * k.saturating_sub(1) / 2
        })
        .sum()
}

fn check(z: &Multimatroid) -> Result<()> {
    if !z.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    limits::check_order("orienting order", z.order(), limits::ORT_ORDER)?;
    limits::check("skew class size", z.carrier().max_class_size(), limits::MM_CLASS_SIZE)
}

/// Is Z − T tight? The definition, via the full tightness check of Z − T.
pub fn is_orienting_by_definition(z: &Multimatroid, t: u64) -> Result<bool> {
    if !z.carrier().is_transversal(t) {
        return Err(Error::NotTransversal);
    }
    z.delete(t)?.tight()
}

/// Ort(Z) = { T : Z − T is tight }, in canonical order.
pub fn ort(z: &Multimatroid) -> Result<Vec<u64>> {
    check(z)?;
    let car = z.carrier();
    let flags = exec::map_range(car.transversal_count(), |i| is_orienting_by_definition(z, car.transversal(i)));
    let mut out = Vec::new();
    for (i, f) in flags.into_iter().enumerate() {
        if f? {
            out.push(car.transversal(i as u64));
        }
    }
    sort_lex(&mut out);
    Ok(out)
}

/// 𝓔_T: orienting transversals disjoint from T.
pub fn e_t(z: &Multimatroid, t: u64) -> Result<Vec<u64>> {
    if !z.carrier().is_transversal(t) {
        return Err(Error::NotTransversal);
    }
    Ok(ort(z)?.into_iter().filter(|&y| y & t == 0).collect())
}

/// For tight Z: T is orienting iff no circuit meets T in exactly one element.
pub fn is_orienting(z: &Multimatroid, t: u64) -> Result<bool> {
    if !z.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    if !z.carrier().is_transversal(t) {
        return Err(Error::NotTransversal);
    }
    if !z.tight()? {
        return Err(Error::NotTight);
    }
    Ok(circuit_test(z.circuits()?, t))
}

pub fn circuit_test(circuits: &[u64], t: u64) -> bool {
    circuits.iter().all(|&c| (c & t).count_ones() != 1)
}

/// For binary tight 3-matroids: T is orienting iff every cycle meets T evenly.
pub fn cycle_test(cycles: &[u64], t: u64) -> bool {
    cycles.iter().all(|&c| (c & t).count_ones().is_multiple_of(2))
}

/// Ort(Z) = T₀ + 𝒞𝒮(Z − T₀) for a binary tight 3-matroid and a known T₀ ∈ Ort(Z).
pub fn ort_fast(z: &Multimatroid, t0: u64) -> Result<Vec<u64>> {
    if !is_orienting_by_definition(z, t0)? {
        return Err(Error::NotOrienting);
    }
    let car = z.carrier();
    let keep = car.all() & !t0;
    let cycles = z.delete(t0)?.cycle_space()?;
    let mut out = cycles
        .into_iter()
        .map(|c| sum_subtransversals(car, t0, pdep(c, keep)))
        .collect::<Result<Vec<_>>>()?;
    sort_lex(&mut out);
    Ok(out)
}

/// 𝒞𝒮(Z[T]) in global indices: the symmetric-difference span of the circuits inside T.
pub fn cycles_within(z: &Multimatroid, t: u64) -> Result<Vec<u64>> {
    let inside: Vec<u64> = z.circuits()?.iter().copied().filter(|&c| c & t == c).collect();
    let mut basis: Vec<u64> = Vec::new();
    for mut c in inside {
        for &b in &basis {
            c = c.min(c ^ b);
        }
        if c != 0 {
            basis.push(c);
        }
    }
    let mut span: Vec<u64> = (0..1u64 << basis.len()).map(|m| iter_bits(m).fold(0, |s, k| s ^ basis[k])).collect();
    sort_lex(&mut span);
    Ok(span)
}

/// Checks that Z is a binary tight 3-matroid: every class has three elements,
/// Z is tight, and every union of two circuits holds an even number of skew pairs.
pub fn validate_binary_tight3(z: &Multimatroid) -> Result<()> {
    let car = z.carrier();
    if car.sizes().iter().any(|&s| s != 3) {
        return Err(Error::NotBinaryTight3("every skew class must have three elements".into()));
    }
    if !z.tight()? {
        return Err(Error::NotBinaryTight3("not tight".into()));
    }
    let cs = z.circuits()?;
    for (i, &a) in cs.iter().enumerate() {
        for &b in &cs[i..] {
            if skew_pairs(car, a | b) % 2 == 1 {
                return Err(Error::NotBinaryTight3(format!(
                    "circuits {} and {} span an odd number of skew pairs",
                    car.format_set(a),
                    car.format_set(b)
                )));
            }
        }
    }
    Ok(())
}

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: BigRational,
    pub rhs: BigRational,
    /// The odd factor k, where the identity has one.
    pub k: Option<BigInt>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EvalReport {
    pub checks: Vec<IdentityCheck>,
}

impl EvalReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn record(&mut self, name: impl Into<String>, lhs: BigRational, rhs: BigRational) {
        let pass = lhs == rhs;
        self.checks.push(IdentityCheck { name: name.into(), lhs, rhs, k: None, pass });
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "pass": self.all_pass(),
            "checks": self.checks.iter().map(|c| {
                let mut o = json!({
                    "name": c.name,
                    "lhs": format_rational(&c.lhs),
                    "rhs": format_rational(&c.rhs),
                    "pass": c.pass,
                });
                if let Some(k) = &c.k {
                    o["k"] = json!(k.to_string());
                }
                o
            }).collect::<Vec<_>>(),
        })
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=4))))
        .collect()
}

/// Evaluates both sides of the evaluation identities for a binary tight
/// 3-matroid Z and a transversal T. `seed` drives the random weights.
pub fn eval_suite(z: &Multimatroid, t: u64, seed: u64) -> Result<EvalReport> {
    limits::check_order("evaluation order", z.order(), limits::EVAL_ORDER)?;
    validate_binary_tight3(z)?;
    let car = z.carrier();
    if !car.is_transversal(t) {
        return Err(Error::NotTransversal);
    }
    let ell = z.order();
    let orts = ort(z)?;
    let q = q1(z)?;
    let q_minus = q1(&z.delete(t)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = EvalReport::default();

    // Statement 1 for l = 1, 2.
    let x = random_weights(&mut rng, car.total());
    let class_sum = |avoid: u64| -> BigRational {
        (0..ell).fold(BigRational::one(), |acc, c| {
            acc * iter_bits(car.class_mask(c) & !avoid).fold(BigRational::zero(), |s, v| s + &x[v])
        })
    };
    let rhs1: BigRational = orts.iter().map(|&y| class_sum(y)).sum();
    report.record("stmt1 l=1", transition_eval(z, &x, &int(2))?, rhs1);
    let rhs2: BigRational = orts.iter().flat_map(|&y1| orts.iter().map(move |&y2| y1 | y2)).map(class_sum).sum();
    report.record("stmt1 l=2", transition_eval(z, &x, &int(4))?, rhs2);

    // Statement 2.
    let x2 = random_weights(&mut rng, car.total());
    let rhs: BigRational = orts
        .iter()
        .map(|&y| {
            iter_bits(y).fold(BigRational::one(), |acc, u| {
                let others = car.class_mask(car.class_of(u)) & !(1 << u);
                acc * iter_bits(others).fold(BigRational::zero(), |s, v| s + &x2[v])
            })
        })
        .sum();
    report.record("stmt2", transition_eval(z, &x2, &int(2))?, rhs);

    // Statement 3.
    let q_at = |p: &crate::polynomials::IntPoly, y: i64| BigRational::from_integer(p.eval(&BigInt::from(y)));
    report.record("stmt3", q_at(&q, 2), int(orts.len() as i64) * pow2(ell));

    // Statement 4.
    let rhs: BigRational = orts.iter().map(|&y| pow2((y & t).count_ones() as usize)).sum();
    report.record("stmt4", q_at(&q_minus, 2), rhs);

    // Statements 5 and 6 share the minors Z|F.
    let n_t = z.nullity(t);
    let r_t = z.rank(t);
    let mut s5 = BigRational::zero();
    let mut k = BigInt::zero();
    for f in submasks(t) {
        let ort_f = BigInt::from(ort(&z.minor(f)?)?.len());
        let sign = if f.count_ones() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let r_f = z.rank(f);
        s5 += BigRational::from_integer(&sign * &ort_f) * pow2(t.count_ones() as usize - r_f);
        k += sign * ort_f * (BigInt::one() << (r_t - r_f));
    }
    report.record("stmt5", q_at(&q_minus, 2), s5);
    let k_rat = BigRational::from_integer(k.clone());
    let lhs = q_at(&q_minus, 2);
    let at_minus2 = q_at(&q_minus, -2);
    let pass = lhs == &k_rat * pow2(n_t) && lhs == &k_rat * at_minus2.abs() && k.is_odd();
    report.checks.push(IdentityCheck { name: "stmt6".into(), lhs, rhs: &k_rat * pow2(n_t), k: Some(k), pass });

    // Statement 7.
    let rhs: BigRational =
        orts.iter().flat_map(|&y1| orts.iter().map(move |&y2| pow2((y1 & y2).count_ones() as usize))).sum();
    report.record("stmt7", q_at(&q, 4), rhs);

    // Statement 8.
    let sign = if ell.is_multiple_of(2) { int(1) } else { int(-1) };
    let rhs: BigRational = orts.iter().map(|&y| num_traits::pow(int(-2), z.nullity(y))).sum::<BigRational>() * sign.clone();
    report.record("stmt8", q_at(&q, -4), rhs);

    // Q(Z; x⃗, y) = Σ_{Y ∈ Ort} Q(Z − Y; x⃗, y/2) at five even y.
    let x3 = random_weights(&mut rng, car.total());
    for _ in 0..5 {
        let y = int(2 * rng.gen_range(-5i64..=5));
        let half = &y / int(2);
        let mut rhs = BigRational::zero();
        for &ot in &orts {
            let keep = car.all() & !ot;
            let xs: Vec<BigRational> = iter_bits(keep).map(|e| x3[e].clone()).collect();
            rhs += transition_eval(&z.delete(ot)?, &xs, &half)?;
        }
        report.record(format!("decomposition y={y}"), transition_eval(z, &x3, &y)?, rhs);
    }

    // Q₁(Z − T; −2) = (−1)^ℓ (−2)^{n_Z(T)}.
    report.record("restricted y=-2", at_minus2, sign * num_traits::pow(int(-2), n_t));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotropic::{h33_matrix, isotropic_multimatroid, ort_via_eulerian, z_graph, z_quaternary, Graph};
    use crate::matroid::Matroid;
    use crate::multimatroid::zm;
    use crate::polynomials::q1;

    fn small_graphs(max_n: usize) -> impl Iterator<Item = Graph> {
        (1..=max_n).flat_map(|n| (0..1u64 << (n * (n - 1) / 2)).map(move |c| Graph::from_code(n, c)))
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(ort(&Multimatroid::empty()).unwrap(), vec![0]);
        let h = isotropic_multimatroid(&h33_matrix()).unwrap().multimatroid;
        assert!(ort(&h).unwrap().is_empty());
        let t = h.carrier().transversal(5);
        assert!(e_t(&h, t).unwrap().is_empty());
        let z3 = z_quaternary(&Matroid::from_matrix(&crate::isotropic::u24_matrix(), None).unwrap()).unwrap();
        assert!(ort(&z3.multimatroid).unwrap().contains(&z3.blocks[2]));
    }

    #[test]
    fn k2_has_three_orienting_transversals() {
        let g = Graph::complete(2);
        let b = z_graph(&g).unwrap();
        let o = ort(&b.multimatroid).unwrap();
        assert_eq!(o.len(), 3);
        assert_eq!(o, ort_via_eulerian(&g).unwrap());
        assert_eq!(q1(&b.multimatroid).unwrap().eval(&BigInt::from(2)), BigInt::from(12));
    }

    #[test]
    fn three_tests_agree_on_small_graphs() {
        for g in small_graphs(4) {
            let b = z_graph(&g).unwrap();
            let z = &b.multimatroid;
            let cycles = z.cycle_space().unwrap();
            let circuits = z.circuits().unwrap();
            let orts = ort(z).unwrap();
            for t in z.carrier().transversals() {
                let by_def = orts.contains(&t);
                assert_eq!(circuit_test(circuits, t), by_def);
                assert_eq!(cycle_test(&cycles, t), by_def);
            }
            assert!(is_orienting(z, b.blocks[2]).unwrap());
            assert_eq!(ort_fast(z, b.blocks[2]).unwrap(), orts);
        }
    }

    #[test]
    fn is_orienting_requires_tightness() {
        let g = Graph::empty(1).toggle_loops(1);
        let b = z_graph(&g).unwrap();
        let two = b.multimatroid.delete(b.blocks[2]).unwrap();
        // A 2-matroid whose only class is a loop pair is not tight.
        assert_eq!(is_orienting(&two, 0b01), Err(Error::NotTight));
        assert_eq!(ort_fast(&b.multimatroid, b.blocks[2]), Err(Error::NotOrienting));
    }

    #[test]
    fn e_t_counts_cosets_and_splits() {
        for g in small_graphs(3) {
            let z = z_graph(&g).unwrap().multimatroid;
            let orts = ort(&z).unwrap();
            let car = z.carrier();
            for t in car.transversals() {
                let e = e_t(&z, t).unwrap();
                assert_eq!(e.len(), 1 << z.nullity(t));
                if z.nullity(t) == 0 {
                    assert_eq!(e.len(), 1);
                }
                // Coset structure: 𝓔_T = T′ + 𝒞𝒮(Z[T]).
                let coset: Vec<u64> = {
                    let mut v: Vec<u64> = cycles_within(&z, t)
                        .unwrap()
                        .into_iter()
                        .map(|c| sum_subtransversals(car, e[0], c).unwrap())
                        .collect();
                    sort_lex(&mut v);
                    v
                };
                assert_eq!(coset, e);
                // Splitting along the two skew pairs at an element of a circuit.
                for x in iter_bits(t) {
                    let others: Vec<usize> =
                        iter_bits(car.class_mask(car.class_of(x)) & !(1 << x)).collect();
                    let (t1, t2) = (t ^ (1 << x | 1 << others[0]), t ^ (1 << x | 1 << others[1]));
                    let n = z.nullity(t);
                    if n > 0 && z.nullity(t1) == n - 1 && z.nullity(t2) == n - 1 {
                        let (e1, e2) = (e_t(&z, t1).unwrap(), e_t(&z, t2).unwrap());
                        assert!(e1.iter().all(|y| !e2.contains(y)));
                        let mut u: Vec<u64> = e1.into_iter().chain(e2).collect();
                        sort_lex(&mut u);
                        assert_eq!(u, e);
                    }
                }
            }
            // Orienting iff every order-one minor avoiding T has a circuit avoiding T.
            for t in car.transversals() {
                let expected = orts.contains(&t);
                let got = (0..car.order()).all(|c| {
                    (0..car.near_transversal_count(c)).map(|i| car.near_transversal(c, i)).filter(|s| s & t == 0).all(|s| {
                        let minor = z.minor(s).unwrap();
                        let kept = z.minor_kept(s);
                        minor.circuits().unwrap().iter().any(|&cc| pdep(cc, kept) & t == 0)
                    })
                });
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn singular_classes_scale_ort() {
        // Edgeless vertices are singular in 𝒵_G: the A column is zero.
        for g in small_graphs(3) {
            let b = z_graph(&g).unwrap();
            let z = &b.multimatroid;
            for v in 0..g.n() {
                if g.neighbors(v) != 0 {
                    continue;
                }
                let u = z.carrier().elem(v, 1);
                assert_eq!(z.nullity(1 << u), 1);
                let rest = z.delete(z.carrier().class_mask(v)).unwrap();
                let expect = 2 * ort(&rest).unwrap().len();
                assert_eq!(ort(z).unwrap().len(), expect);
            }
        }
    }

    #[test]
    fn bases_have_a_disjoint_orienting_transversal_iff_tight() {
        for g in small_graphs(3) {
            let z = z_graph(&g).unwrap().multimatroid;
            let orts = ort(&z).unwrap();
            assert!(z.transversal_bases().iter().all(|&b| orts.iter().any(|&y| y & b == 0)));
        }
        // One class of three parallel non-loops: a binary 3-matroid that is not tight.
        let m = Matroid::from_matrix(&crate::matroid::gf2_matrix(&[&[1, 1, 1]]), None).unwrap();
        let z = Multimatroid::sheltered(Carrier::uniform(1, 3).unwrap(), m).unwrap();
        assert!(!z.tight().unwrap());
        let orts = ort(&z).unwrap();
        assert!(z.transversal_bases().iter().any(|&b| !orts.iter().any(|&y| y & b == 0)));
    }

    #[test]
    fn eval_suite_on_small_graphs() {
        for g in small_graphs(3) {
            let b = z_graph(&g).unwrap();
            for t in b.multimatroid.carrier().transversals() {
                let r = eval_suite(&b.multimatroid, t, t).unwrap();
                assert!(r.all_pass(), "{:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
            }
        }
        let k2 = z_graph(&Graph::complete(2)).unwrap();
        let r = eval_suite(&k2.multimatroid, k2.blocks[2], 1).unwrap();
        let s6 = r.checks.iter().find(|c| c.name == "stmt6").unwrap();
        assert!(s6.k.as_ref().unwrap().is_odd());
        assert_eq!(r.to_json()["pass"], json!(true));
    }

    #[test]
    fn eval_suite_rejects_non_binary() {
        let h = isotropic_multimatroid(&h33_matrix()).unwrap().multimatroid;
        assert!(matches!(eval_suite(&h, h.carrier().transversal(0), 0), Err(Error::NotBinaryTight3(_))));
        let z2 = zm(&Matroid::uniform(1, 2).unwrap()).unwrap();
        assert!(matches!(eval_suite(&z2, z2.carrier().transversal(0), 0), Err(Error::NotBinaryTight3(_))));
    }

    proptest::proptest! {
        #[test]
        fn e_t_has_two_to_the_nullity_elements(n in 1usize..=4, code in 0u64..64, t in 0u64..81) {
            let g = Graph::from_code(n, code & crate::bits::low_mask(n * (n - 1) / 2));
            let z = z_graph(&g).unwrap().multimatroid;
            let t = z.carrier().transversal(t % z.carrier().transversal_count());
            proptest::prop_assert_eq!(e_t(&z, t).unwrap().len(), 1 << z.nullity(t));
        }
    }
}
