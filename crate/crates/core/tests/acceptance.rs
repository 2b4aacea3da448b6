//! Acceptance criteria, one line per criterion. Exits non-zero on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{kummer, qpoly, random_v_delta, witness};
use eds_core::algebra::{
    squarefree_decompose, Field, FunctionField, Poly, PrimeField, RatFunc, Rationals,
};
use eds_core::eds::{compare_routes, dn_denominator_route, dn_psi_route, scan_m, Divisor};
use eds_core::families::{geography, geography_search, nodal_gm_coordinate, random_nodal_input};
use eds_core::heights::height_with_corrections;
use eds_core::weierstrass::local::bad_fibers;
use eds_core::weierstrass::{
    invariants_of, minimality_gap, psi_symbolic, KodairaType, NormalizedTriple, SymPoly,
    Weierstrass,
};
use eds_core::EdsError;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: EdsError) -> String {
    e.to_string()
}

fn kummer_verification() -> Outcome {
    let fam = kummer(&Rationals);
    let mut degrees = Vec::new();
    for n in 2..=10u64 {
        let dn = dn_denominator_route(&fam.model, &fam.point, n, fam.d).map_err(err)?;
        let n2 = (n * n) as i64;
        let want = if n % 2 == 1 {
            (n2 - 1) / 2
        } else {
            (n2 - 4) / 2
        };
        ensure(dn.degree() == want, || {
            format!("deg D_{n} = {} != {want}", dn.degree())
        })?;
        let g = eds_core::eds::gcd_degree(&dn.finite_poly());
        ensure(dn.is_reduced() && g.degree == 0, || {
            format!("D_{n} = {dn} is not reduced")
        })?;
        degrees.push(dn.degree());
    }
    for (place, ty) in bad_fibers(&fam.model).map_err(err)? {
        ensure(ty == KodairaType::I0Star, || {
            format!("fiber {ty} at {place}")
        })?;
    }
    let h = height_with_corrections(&fam.model, &fam.point, fam.d).map_err(err)?;
    ensure(h.ht == BigRational::one(), || format!("ht(P) = {}", h.ht))?;
    Ok(format!("deg D_2..D_10 = {degrees:?}, all I0*, ht(P) = 1"))
}

fn v_delta_triples<F: Field>(field: &F, per_degree: usize, seed: u64) -> Vec<NormalizedTriple<F>> {
    let mut triples = vec![witness(field, 1)];
    for d in [1, 2] {
        triples.extend(random_v_delta(field, d, per_degree, seed + d as u64));
    }
    triples
}

fn degree_law<F: Field>(triples: &[NormalizedTriple<F>], n_max: u64) -> Result<usize, String> {
    let p = triples[0].field().characteristic();
    let mut checked = 0;
    for t in triples {
        let (model, pt, d) = (t.model(), t.point(), t.d as i64);
        for n in (1..=n_max).filter(|n| p == 0 || n % p != 0) {
            let dn = dn_denominator_route(&model, &pt, n, d).map_err(err)?;
            let want = d * ((n * n) as i64 - 1);
            ensure(dn.degree() == want, || {
                format!("{t:?}: deg D_{n} = {} != {want}", dn.degree())
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn line_degree_law() -> Outcome {
    let f = PrimeField::new(101).unwrap();
    let w = witness(&Rationals, 1);
    let checked_q = degree_law(std::slice::from_ref(&w), 8)?;
    let triples = v_delta_triples(&f, 10, 2024);
    let checked = degree_law(&triples, 8)?;
    Ok(format!(
        "witness over Q ({checked_q} indices) and {} triples over F_101 with d in {{1,2}} ({checked} indices)",
        triples.len()
    ))
}

fn routes_agree<F: Field>(
    triples: &[NormalizedTriple<F>],
    n_max: u64,
) -> Result<(usize, usize), String> {
    let mut compared = 0;
    let mut bad_place_discrepancies = 0;
    for t in triples {
        for c in compare_routes(t, n_max).map_err(err)? {
            ensure(c.agree_at_good_places, || {
                format!(
                    "{t:?}, n = {}: psi {} vs denominator {}",
                    c.n, c.psi, c.denominator
                )
            })?;
            if !c.bad_place_difference.is_zero() {
                bad_place_discrepancies += 1;
            }
            compared += 1;
        }
    }
    Ok((compared, bad_place_discrepancies))
}

fn max_gcd_degree<F: Field>(triples: &[NormalizedTriple<F>], n_max: u64) -> Result<i64, String> {
    let mut worst = 0;
    for t in triples {
        let scan = scan_m(&t.model(), &t.point(), t.d as i64, n_max).map_err(err)?;
        for r in &scan.records {
            worst = worst.max(r.gcd_degree.degree);
        }
    }
    Ok(worst)
}

fn line_route_equivalence() -> Outcome {
    let f = PrimeField::new(101).unwrap();
    let (cq, _) = routes_agree(&[witness(&Rationals, 1)], 8)?;
    let triples = v_delta_triples(&f, 10, 2024);
    let (cf, bad) = routes_agree(&triples, 8)?;
    let worst = max_gcd_degree(&triples, 10)?;
    Ok(format!(
        "{} comparisons agree at good places; {bad} with recorded bad-place differences; max gcdDegree for n <= 10 is {worst}",
        cq + cf
    ))
}

fn divisibility_structure<F: Field>(
    name: &str,
    model: &eds_core::weierstrass::WeierstrassModel<F>,
    p: &eds_core::weierstrass::Point<RatFunc<F>>,
    d: i64,
) -> Result<String, String> {
    let scan = scan_m(model, p, d, 12).map_err(err)?;
    ensure(scan.divisibility_failures.is_empty(), || {
        format!(
            "{name}: D_m does not divide D_n for {:?}",
            scan.divisibility_failures
        )
    })?;
    ensure(
        scan.records.iter().all(|r| r.dn_prime.is_effective()),
        || format!("{name}: negative new part"),
    )?;
    ensure(scan.disjoint(), || {
        format!("{name}: overlapping new parts {:?}", scan.overlapping)
    })?;
    Ok(format!(
        "{name}: ok (M = {:?}, skipped {:?})",
        scan.m, scan.skipped
    ))
}

fn line_divisibility() -> Outcome {
    let k = kummer(&Rationals);
    let w = witness(&Rationals, 1);
    let a = divisibility_structure("Kummer", &k.model, &k.point, k.d)?;
    let b = divisibility_structure("witness", &w.model(), &w.point(), 1)?;
    Ok(format!("{a}; {b}"))
}

fn sym(terms: &[(i64, [u32; 3])]) -> SymPoly {
    SymPoly::from_terms(terms)
}

fn line_goldens() -> Outcome {
    let q = Rationals;
    let k = FunctionField::new(q);
    let t = RatFunc::t(&q);
    let c = |v: i64| RatFunc::from_i64(&q, v);
    let a2 = &c(3) * &t.pow(-2);
    let a3 = &c(2) * &t.pow(-3);
    let a4 = &(&c(3) * &t.pow(-4)) + &t.pow(2);
    let inv = invariants_of(&k, &a2, &a3, &a4);
    ensure(inv.c4 == RatFunc::from_poly(qpoly(&[0, 0, -48])), || {
        format!("c4 = {}", inv.c4)
    })?;
    ensure(inv.c6 == c(864), || format!("c6 = {}", inv.c6))?;
    let model = Weierstrass::normalized(&k, a2, a3, a4).map_err(err)?;
    let gap = minimality_gap(&model).map_err(err)?;
    let at_zero = Divisor::from_layers(&q, vec![(qpoly(&[0, 1]), 1)], 0);
    ensure(gap.gap == at_zero, || format!("gap = {}", gap.gap))?;
    ensure(gap.d == at_zero.add(&Divisor::infinity(&q, 1)), || {
        format!("D = {}", gap.d)
    })?;
    ensure(gap.d_prime == Divisor::infinity(&q, 1), || {
        format!("D' = {}", gap.d_prime)
    })?;

    let psi = psi_symbolic(4);
    ensure(psi[2] == sym(&[(1, [0, 1, 0])]), || {
        format!("psi_2 = {}", psi[2])
    })?;
    ensure(psi[3] == sym(&[(1, [1, 2, 0]), (-1, [0, 0, 2])]), || {
        format!("psi_3 = {}", psi[3])
    })?;
    let psi4 = sym(&[(2, [1, 3, 1]), (-2, [0, 1, 3]), (-1, [0, 5, 0])]);
    ensure(psi[4] == psi4, || format!("psi_4 = {}", psi[4]))?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..50 {
        let (a2, a3, a4) = random_nodal_input(&q, &mut rng, 12);
        let data = nodal_gm_coordinate(&q, &a2, &a3, &a4).map_err(err)?;
        let two_y = q.add(&q.mul(&q.from_i64(2), &data.node_y), &a3);
        let x = &data.node_x;
        let slope = q.add(
            &q.add(
                &q.mul(&q.from_i64(3), &q.mul(x, x)),
                &q.mul(&q.from_i64(2), &q.mul(&a2, x)),
            ),
            &a4,
        );
        ensure(q.is_zero(&two_y) && q.is_zero(&slope), || {
            format!("input {i}: Q is not the node")
        })?;
        let ext = &data.ext;
        let product = ext.mul(&data.coordinate, &ext.conj(&data.coordinate));
        ensure(ext.is_one(&product), || {
            format!("input {i}: inversion identity fails")
        })?;
    }
    Ok("c4 = -48*t^2, c6 = 864, D - D' = (t = 0); psi_2..psi_4 match; 50 nodal inputs invert under gamma -> -gamma".into())
}

fn line_geography() -> Outcome {
    let mut notes = Vec::new();
    for g in 0..=2u64 {
        for n in 2..=30 {
            let r = geography(g, n).map_err(err)?;
            let a = BigRational::from_integer(r.a.clone());
            let alpha = -(&a - BigRational::from_integer(2.into())) / (&a - BigRational::one());
            ensure(r.alpha == alpha && r.log_terminal(), || {
                format!("alpha = {} at g={g}, n={n}", r.alpha)
            })?;
            ensure(r.pg == g, || format!("pg = {}", r.pg))?;
        }
        let r = geography(g, 100).map_err(err)?;
        let ratio = (&r.kx2 / BigRational::from_integer(BigInt::from(r.d * 100 * 100)))
            .to_f64()
            .unwrap();
        ensure((ratio - 1.0).abs() <= 0.05, || {
            format!("K^2/(dn^2) = {ratio} at g = {g}")
        })?;
        for big_n in [10i64, 1000, 1_000_000] {
            let target = BigInt::from(big_n);
            let (n, r) = geography_search(g, &target).map_err(err)?;
            let t = BigRational::from_integer(target.clone());
            ensure(r.ample_certified && r.kx2 > t, || {
                format!("search({g}, {big_n}) = {n} fails its predicate")
            })?;
            if n > 5 {
                let prev = geography(g, n - 1).map_err(err)?;
                ensure(!(prev.ample_certified && prev.kx2 > t), || {
                    format!("search({g}, {big_n}) = {n} not minimal")
                })?;
            }
            notes.push(format!("g={g},N={big_n}:n={n}"));
        }
    }
    Ok(notes.join(" "))
}

fn line_torsion() -> Outcome {
    let q = Rationals;
    let w = NormalizedTriple::new(qpoly(&[]), qpoly(&[0, 1]), qpoly(&[]), 1).map_err(err)?;
    let psi = dn_psi_route(&w, 3);
    ensure(psi == Err(EdsError::TorsionSection { order: 3 }), || {
        format!("psi route: {psi:?}")
    })?;
    let den = dn_denominator_route(&w.model(), &w.point(), 3, 1);
    ensure(den == Err(EdsError::TorsionSection { order: 3 }), || {
        format!("denominator route: {den:?}")
    })?;
    let k = FunctionField::new(q);
    let psi3 = psi_symbolic(3)[3].eval(&k, &k.zero(), &k.t(), &k.zero());
    ensure(psi3.is_zero(), || format!("psi_3(0, t, 0) = {psi3}"))?;
    Ok("TorsionSectionError(order 3) from both routes; psi_3(0,t,0) = 0".into())
}

fn perfect_powers(p: u64) -> Result<(), String> {
    let f = PrimeField::new(p).unwrap();
    let g = Poly::from_ints(&f, &[2, 0, 1]);
    let h = Poly::from_ints(&f, &[1, 1]);
    let k = Poly::from_ints(&f, &[3, 1, 0, 1]);
    let target = &(&g.pow(p as u32) * &h.pow(p as u32 + 1)) * &k;
    let dec = squarefree_decompose(&target).map_err(|e| e.to_string())?;
    ensure(dec.reconstruct(&f) == target, || {
        format!("F_{p}: reconstruction failed")
    })?;
    ensure(
        dec.factors
            .iter()
            .all(|(g, _)| g.gcd(&g.derivative()).is_constant()),
        || format!("F_{p}: non-squarefree layer"),
    )?;
    let mults: Vec<usize> = dec.factors.iter().map(|(_, m)| *m).collect();
    ensure(
        mults.contains(&(p as usize)) && mults.contains(&(p as usize + 1)),
        || format!("F_{p}: multiplicities {mults:?}"),
    )?;
    Ok(())
}

fn line_char_p() -> Outcome {
    let mut notes = Vec::new();
    for p in [5u64, 7] {
        let f = PrimeField::new(p).unwrap();
        let triples = v_delta_triples(&f, 5, 77 + p);
        let checked = degree_law(&triples, 8)?;
        let (compared, _) = routes_agree(&triples, 8)?;
        let w = &triples[0];
        let k = kummer(&f);
        let a = divisibility_structure("witness", &w.model(), &w.point(), 1)?;
        let b = divisibility_structure("Kummer", &k.model, &k.point, k.d)?;
        let scan = scan_m(&w.model(), &w.point(), 1, 12).map_err(err)?;
        let want: Vec<u64> = (1..=12).filter(|n| n % p == 0).collect();
        ensure(scan.skipped == want, || {
            format!("F_{p}: skipped {:?}", scan.skipped)
        })?;
        perfect_powers(p)?;
        notes.push(format!(
            "F_{p}: {checked} degrees, {compared} route comparisons, {a}, {b}"
        ));
    }
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 8] = [
        (
            "Kummer verification",
            kummer_verification,
            Some(Duration::from_secs(60)),
        ),
        (
            "degree law on V_Delta",
            line_degree_law,
            Some(Duration::from_secs(60)),
        ),
        ("route equivalence", line_route_equivalence, None),
        ("divisibility-sequence structure", line_divisibility, None),
        ("golden values", line_goldens, None),
        ("geography", line_geography, Some(Duration::from_secs(5))),
        ("torsion detection", line_torsion, None),
        ("characteristic p", line_char_p, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if budget.is_some_and(|b| elapsed > b) => {
                Err(format!("took {elapsed:.1?}, budget {budget:?}; {detail}"))
            }
            o => o,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {} ({name}): PASS [{elapsed:.2?}] {detail}",
                i + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {} ({name}): FAIL [{elapsed:.2?}] {detail}",
                    i + 1
                );
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
