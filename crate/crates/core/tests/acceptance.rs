//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use steinberg::algebra::AlgebraElement;
use steinberg::equivariant::{
    enumerate_homs, frattini_family, hom_partition_check, make_pgroup, theorem15_graded_check,
    GroupSpec, PGroup, VectorGroup,
};
use steinberg::flag::{
    cycle_check, prop10_check, unipotent_fixed_check, ComplexMode, OrderComplex,
};
use steinberg::linalg::{bruhat_factor, p_subgroups_up_to_conjugacy, GfMatrix, Prime};
use steinberg::module::PermutationModule;
use steinberg::ring::{Integers, LocalRationals, Ring};
use steinberg::steinberg::{
    product_identity_check, product_scalar, retraction_check, steinberg_idempotent, summand,
    IdempotentKind,
};
use steinberg::torus::{lemma17_rank_check, CoefficientFunctor, Duality};
use steinberg::verify::{suite, RunOptions, SuiteLevel};

// every identity is exact; only wall-clock budgets carry a tolerance
const IDEMPOTENT_BUDGET: Duration = Duration::from_secs(30);
const BUILDING_BUDGET: Duration = Duration::from_secs(300);
const SPLITTING_BUDGET: Duration = Duration::from_secs(600);

type Outcome = Result<String, String>;

fn p(v: u32) -> Prime {
    Prime::new(v).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn det(m: &[Vec<i64>], q: i64) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0].rem_euclid(q),
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| [&r[..c], &r[c + 1..]].concat())
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor, q)
            })
            .sum::<i64>()
            .rem_euclid(q),
    }
}

/// Every invertible `n × n` matrix over `F_q`, by determinant.
fn general_linear(n: usize, q: u32) -> Vec<Vec<Vec<i64>>> {
    let q = q as i64;
    let total = q.pow((n * n) as u32);
    (0..total)
        .map(|code| {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| code / q.pow((r * n + c) as u32) % q)
                        .collect()
                })
                .collect()
        })
        .filter(|m: &Vec<Vec<i64>>| det(m, q) != 0)
        .collect()
}

fn to_gf(m: &[Vec<i64>], q: u32) -> GfMatrix {
    let rows: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    GfMatrix::from_rows(p(q), &rows).unwrap()
}

fn entries(m: &GfMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c) as i64).collect())
        .collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>], q: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum::<i64>().rem_euclid(q))
                .collect()
        })
        .collect()
}

fn is_upper(m: &[Vec<i64>]) -> bool {
    (0..m.len()).all(|r| (0..r).all(|c| m[r][c] == 0) && m[r][r] != 0)
}

fn is_permutation(m: &[Vec<i64>]) -> bool {
    m.iter()
        .all(|r| r.iter().filter(|&&x| x == 1).count() == 1 && r.iter().all(|&x| x == 0 || x == 1))
        && (0..m.len()).all(|c| m.iter().filter(|r| r[c] == 1).count() == 1)
}

/// `∏_{i=1}^n (p^i − 1)`.
fn c_n(n: usize, q: u32) -> BigInt {
    (1..=n as u32).map(|i| BigInt::from(q).pow(i) - 1).product()
}

fn choose2(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// `(-1)^σ` for a permutation matrix, by counting inversions of the column-to-row map.
fn sign(m: &[Vec<i64>]) -> i64 {
    let image: Vec<usize> = (0..m.len())
        .map(|c| (0..m.len()).find(|&r| m[r][c] == 1).unwrap())
        .collect();
    let inversions = (0..image.len())
        .flat_map(|a| (a + 1..image.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| image[a] > image[b])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Σ̄_n B̄_n` assembled from brute-force enumerations.
fn sigma_b<R: Ring>(ring: &R, n: usize, q: u32) -> AlgebraElement<R> {
    let gl = general_linear(n, q);
    let perms: Vec<&Vec<Vec<i64>>> = gl.iter().filter(|m| is_permutation(m)).collect();
    let borel: Vec<&Vec<Vec<i64>>> = gl.iter().filter(|m| is_upper(m)).collect();
    let terms = perms
        .iter()
        .flat_map(|s| {
            borel
                .iter()
                .map(move |b| (to_gf(&matmul(s, b, q as i64), q), ring.from_int(sign(s))))
        })
        .collect::<Vec<_>>();
    AlgebraElement::from_terms(ring, n, p(q), terms).unwrap()
}

const SMALL: [(usize, u32); 6] = [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3), (3, 2)];
const BLOCKS: [(usize, usize, u32); 4] = [(1, 1, 2), (1, 1, 3), (1, 2, 2), (2, 1, 2)];

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (n, q) in SMALL {
        let ring = LocalRationals::new(p(q));
        let e = steinberg_idempotent(&ring, n, p(q)).map_err(|e| e.to_string())?;
        ensure(e.mul(&e).unwrap() == e, || {
            format!("e_{n}^2 != e_{n} at p = {q}")
        })?;
        let scaled = e.scale(&ring.from_bigint(&c_n(n, q)));
        ensure(scaled == sigma_b(&ring, n, q), || {
            format!("c_n e_n differs from the brute-force sum at ({n}, {q})")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < IDEMPOTENT_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("6 cases, {:.1} s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    for (n, q) in SMALL {
        let x = sigma_b(&Integers, n, q);
        let lhs = x.mul(&x).unwrap();
        ensure(lhs == x.scale(&c_n(n, q)), || {
            format!("fails at ({n}, {q})")
        })?;
    }
    Ok("6 cases".into())
}

fn criterion_3() -> Outcome {
    let mut ranks = Vec::new();
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        let regular = PermutationModule::regular(n, p(q));
        let rank = summand(
            &LocalRationals::new(p(q)),
            &IdempotentKind::Steinberg,
            &regular,
        )
        .unwrap()
        .rank;
        ranks.push(rank);
    }
    ensure(ranks == [2, 3, 8], || format!("ranks {ranks:?}"))?;
    Ok(format!("ranks {ranks:?}"))
}

fn criterion_4() -> Outcome {
    let mut scalars = Vec::new();
    for (i, j, q) in BLOCKS {
        product_identity_check(i, j, p(q)).map_err(|e| e.to_string())?;
        let s = product_scalar(i, j, p(q));
        ensure(s == c_n(i + j, q) / (c_n(i, q) * c_n(j, q)), || {
            format!("scalar {s} at ({i}, {j}, {q})")
        })?;
        scalars.push(s.to_string());
    }
    ensure(scalars == ["3", "4", "7", "7"], || {
        format!("scalars {scalars:?}")
    })?;
    Ok(format!("scalars {}", scalars.join(", ")))
}

fn criterion_5() -> Outcome {
    for (i, j, q) in BLOCKS {
        let regular = PermutationModule::regular(i + j, p(q));
        retraction_check(&LocalRationals::new(p(q)), i, j, &regular).map_err(|e| e.to_string())?;
    }
    Ok("4 cases on regular modules".into())
}

fn criterion_6() -> Outcome {
    let mut ranks = Vec::new();
    let mut slowest = Duration::ZERO;
    for (n, q) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (4, 2)] {
        let start = Instant::now();
        let h = OrderComplex::build(ComplexMode::B, n, p(q))
            .unwrap()
            .homology(true)
            .unwrap();
        slowest = slowest.max(start.elapsed());
        let expected = (q as usize).pow(choose2(n));
        ensure(h.is_concentrated(n as i64 - 2, expected), || {
            format!("({n}, {q}): {:?}", h.nonzero())
        })?;
        ranks.push(h.rank(n as i64 - 2));
    }
    // the plane over F_3 is four points: a wedge of three 0-spheres
    ensure(ranks[1] == 3, || "rank at (2, 3)".into())?;
    ensure(slowest < BUILDING_BUDGET, || {
        format!("slowest case took {slowest:?}")
    })?;
    Ok(format!(
        "ranks {ranks:?}, torsion-free, slowest {:.1} s",
        slowest.as_secs_f64()
    ))
}

fn criterion_7() -> Outcome {
    let mut ranks = Vec::new();
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        let w = cycle_check(n, p(q)).map_err(|e| e.to_string())?;
        let rank = w["span_rank"]
            .as_u64()
            .or_else(|| w["rank"].as_u64())
            .unwrap_or(0);
        ensure(rank == (q as u64).pow(choose2(n)), || {
            format!("span rank {rank} at ({n}, {q})")
        })?;
        ranks.push(rank);
    }
    Ok(format!("span ranks {ranks:?}"))
}

fn criterion_8() -> Outcome {
    for (n, i, q) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 2, 2)] {
        prop10_check(n, i, p(q)).map_err(|e| e.to_string())?;
    }
    Ok("4 cases".into())
}

fn criterion_9() -> Outcome {
    let mut total = 0;
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        for m in general_linear(n, q) {
            let f = bruhat_factor(&to_gf(&m, q)).map_err(|e| e.to_string())?;
            let (a, s, b) = (
                entries(&f.left),
                entries(&f.permutation_matrix()),
                entries(&f.right),
            );
            ensure(is_upper(&a) && is_upper(&b) && is_permutation(&s), || {
                format!("bad factors for {m:?}")
            })?;
            let back = matmul(&matmul(&a, &s, q as i64), &b, q as i64);
            ensure(back == m, || format!("a σ b != {m:?}"))?;
            total += 1;
        }
    }
    ensure(total == 6 + 48 + 168, || format!("{total} elements"))?;
    Ok(format!("{total} elements reconstructed"))
}

fn fixed_vectors(gens: &[GfMatrix], n: usize, q: u32) -> usize {
    let q = q as usize;
    (0..q.pow(n as u32))
        .filter(|code| {
            let v: Vec<u8> = (0..n).map(|i| (code / q.pow(i as u32) % q) as u8).collect();
            gens.iter().all(|g| g.apply(&v) == v)
        })
        .count()
}

fn criterion_10() -> Outcome {
    let mut classes = Vec::new();
    for (n, q) in [(2, 2), (2, 3), (3, 2)] {
        let subgroups = p_subgroups_up_to_conjugacy(n, p(q)).map_err(|e| e.to_string())?;
        for u in &subgroups {
            unipotent_fixed_check(u).map_err(|e| e.to_string())?;
            let fixed = fixed_vectors(&u.generators(), n, q);
            ensure(fixed > 1 && fixed < (q as usize).pow(n as u32), || {
                format!("{fixed} fixed vectors")
            })?;
        }
        classes.push(subgroups.len());
    }
    Ok(format!("classes per group {classes:?}"))
}

/// Homomorphisms `G → F_p` by backtracking over element values against the whole table.
fn characters(g: &PGroup, q: u32) -> usize {
    fn go(g: &PGroup, q: u8, values: &mut Vec<u8>) -> usize {
        let k = values.len();
        let consistent = (0..k).all(|a| {
            (0..k).all(|b| {
                let ab = g.mul(a, b);
                ab >= k || values[ab] == (values[a] + values[b]) % q
            })
        });
        if !consistent {
            return 0;
        }
        if k == g.order() {
            return 1;
        }
        (0..q)
            .map(|v| {
                values.push(v);
                let count = go(g, q, values);
                values.pop();
                count
            })
            .sum()
    }
    go(g, q as u8, &mut Vec::new())
}

fn stiefel_size(n: usize, d: usize, q: u64) -> u64 {
    (0..d as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

fn criterion_11() -> Outcome {
    let cases: [(&str, u32, usize); 8] = [
        ("C4", 2, 3),
        ("C2^2", 2, 3),
        ("C2xC4", 2, 3),
        ("Q8", 2, 3),
        ("D8", 2, 3),
        ("C9", 3, 2),
        ("C3^2", 3, 2),
        ("Heis3", 3, 2),
    ];
    let mut checked = 0;
    for (name, q, max_n) in cases {
        let g = make_pgroup(&name.parse::<GroupSpec>().unwrap()).unwrap();
        let per_coordinate = characters(&g, q) as u64;
        let family = frattini_family(&g).map_err(|e| e.to_string())?;
        for n in 1..=max_n {
            let homs = per_coordinate.pow(n as u32);
            let enumerated = enumerate_homs(&g, &VectorGroup { n, p: p(q) }).len() as u64;
            let stiefel: u64 = family
                .members()
                .iter()
                .map(|m| stiefel_size(n, m.d, q as u64))
                .sum();
            ensure(homs == enumerated && homs == stiefel, || {
                format!("{name}, n = {n}: oracle {homs}, enumerated {enumerated}, Stiefel sum {stiefel}")
            })?;
            let w = hom_partition_check(&g, n, p(q)).map_err(|e| e.to_string())?;
            ensure(w["homs"] == homs, || {
                format!("{name}, n = {n}: report {}", w["homs"])
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (group, n) pairs"))
}

fn criterion_12() -> Outcome {
    let functors = [
        CoefficientFunctor::Sphere,
        CoefficientFunctor::Torus(Duality::Homology),
        CoefficientFunctor::Torus(Duality::PlainSubstitution),
    ];
    let mut count = 0;
    for (n, d, q) in [(1, 1, 2), (2, 1, 2), (2, 2, 2), (2, 1, 3)] {
        for f in functors {
            lemma17_rank_check(n, d, p(q), f, 4)
                .map_err(|e| format!("({n}, {d}, {q}) {f}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (case, functor) pairs through degree 4"))
}

fn criterion_13() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (name, n, q, d) in [
        ("C2", 2, 2, 4),
        ("C4", 2, 2, 4),
        ("C2^2", 2, 2, 4),
        ("C3", 1, 3, 4),
    ] {
        let g = make_pgroup(&name.parse::<GroupSpec>().unwrap()).unwrap();
        let w = theorem15_graded_check(&g, n, p(q), d).map_err(|e| format!("{name}: {e}"))?;
        for (_, report) in w["conventions"].as_object().unwrap() {
            ensure(report["aggregate"]["equal"] == true, || {
                format!("{name}: aggregate")
            })?;
            count += report["table"].as_array().map_or(0, Vec::len);
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < SPLITTING_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{count} (subgroup, convention) rows, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_14() -> Outcome {
    let render = |threads| {
        let reports = suite(SuiteLevel::Quick, Some(threads), RunOptions::default())
            .map_err(|e| e.to_string())?;
        serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())
    };
    let first = render(1)?;
    let again = render(1)?;
    let wide = render(8)?;
    ensure(first == again, || "two single-threaded runs differ".into())?;
    ensure(first == wide, || "1 and 8 threads differ".into())?;
    Ok(format!(
        "{} bytes, identical across runs and thread counts",
        first.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("idempotency of e_n over Z_(p)", criterion_1),
        ("Σ̄B̄Σ̄B̄ = c_n Σ̄B̄", criterion_2),
        ("rank of e_n on the regular module", criterion_3),
        ("product identity and its scalars", criterion_4),
        ("retraction is the identity on e_{i+j}M", criterion_5),
        ("building homology is a wedge of spheres", criterion_6),
        ("Steinberg cycles span top homology", criterion_7),
        ("join with the complement is an equivalence", criterion_8),
        ("Bruhat factorization", criterion_9),
        ("p-subgroup fixed subposets are contractible", criterion_10),
        ("Hom(G, F_p^n) splits into Stiefel sets", criterion_11),
        ("Stiefel summand graded ranks", criterion_12),
        ("graded splitting per subgroup and in total", criterion_13),
        ("quick suite is deterministic", criterion_14),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
