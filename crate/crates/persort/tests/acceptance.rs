//! End-to-end acceptance gate.
//!
//! Each criterion runs independently and prints one pass/fail line; the test
//! fails only after every criterion has reported. Tolerances come from the
//! pinned `tolerances.toml`. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines on success.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use persort::analytics::{
    commuting_count, count_by_prime_vertices, enumerate_shapes, internal_vertex_series,
    monte_carlo_commuting_stats, monte_carlo_random_perm_stats, pathlength_series,
    schroder_asymptotic, schroder_asymptotic_rounded, schroder_numbers, theoretical_predictions,
    twin_tv_distance, Tolerances,
};
use persort::commuting::{is_commuting, reversal_profile, CommutingSampler};
use persort::perfect::{
    assign_forced_signs, brute_force_perfect_oracle, parsimonious_perfect_scenario,
    scenario_for_assignment, validate_perfect,
};
use persort::sit::Sign;
use persort::sorter::{bfs_distance, distance_to_target, sort_to_target, SortTarget};
use persort::{build_sit, tree_to_permutation, SignedPermutation, SortClass};

fn p(s: &str) -> SignedPermutation {
    s.parse().unwrap()
}

/// Every signed permutation of size `n`.
fn all_signed(n: usize) -> Vec<SignedPermutation> {
    fn perms(pool: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pool.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..pool.len() {
            let v = pool.remove(i);
            cur.push(v);
            perms(pool, cur, out);
            cur.pop();
            pool.insert(i, v);
        }
    }
    let mut unsigned = Vec::new();
    perms(&mut (1..=n as u32).collect(), &mut Vec::new(), &mut unsigned);
    let mut out = Vec::new();
    for u in unsigned {
        for mask in 0..1u32 << n {
            let vals = u
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> i & 1 == 1 { -(v as i32) } else { v as i32 })
                .collect();
            out.push(SignedPermutation::new(vals).unwrap());
        }
    }
    out
}

fn run(
    name: &str,
    budget: Duration,
    ok: &mut bool,
    f: impl FnOnce() -> Result<(), String>,
) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let failure = match outcome {
        Ok(Ok(())) if elapsed <= budget => None,
        Ok(Ok(())) => Some(format!("over budget ({elapsed:.1?} > {budget:.1?})")),
        Ok(Err(msg)) => Some(msg),
        Err(panic) => Some(
            panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()),
        ),
    };
    match failure {
        None => eprintln!("pass  {name}  ({elapsed:.1?})"),
        Some(msg) => {
            *ok = false;
            eprintln!("FAIL  {name}  ({elapsed:.1?}): {msg}");
        }
    }
}

fn require(cond: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn acceptance_gate() {
    let tol = Tolerances::pinned();
    let mut ok = true;
    let sec = Duration::from_secs;

    run("01 hard fixture: perfect length 14, both sign choices", sec(1), &mut ok, || {
        let sigma = p("1 -8 4 2 -5 3 9 -6 7 12 10 -14 13 -11 15 -17 16 18");
        let r = parsimonious_perfect_scenario(&sigma).map_err(|e| e.to_string())?;
        require(r.length == 14, || format!("length {}", r.length))?;
        require(r.prime_count == 3, || format!("primes {}", r.prime_count))?;
        require(validate_perfect(&sigma, &r.scenario), || "not perfect".into())?;
        let st = assign_forced_signs(&build_sit(&sigma), &sigma);
        require(st.unassigned_primes().len() == 1, || "free primes".into())?;
        let plus = scenario_for_assignment(&st, &sigma, &[Sign::Plus]).map_err(|e| e.to_string())?;
        let minus =
            scenario_for_assignment(&st, &sigma, &[Sign::Minus]).map_err(|e| e.to_string())?;
        require(plus.len() == 15 && minus.len() == 14, || {
            format!("plus {} minus {}", plus.len(), minus.len())
        })
    });

    run("02 perfect scenarios match the brute-force oracle", sec(300), &mut ok, || {
        for sigma in all_signed(4) {
            let got = parsimonious_perfect_scenario(&sigma).map_err(|e| e.to_string())?;
            let want = brute_force_perfect_oracle(&sigma, 6).map_err(|e| e.to_string())?;
            require(got.length == want && validate_perfect(&sigma, &got.scenario), || {
                format!("{sigma}: got {} oracle {want}", got.length)
            })?;
        }
        for n in [5, 6] {
            for trial in 0..500u64 {
                let sigma = SignedPermutation::random(n, 1000 * n as u64 + trial).unwrap();
                let got = parsimonious_perfect_scenario(&sigma).map_err(|e| e.to_string())?;
                let want = brute_force_perfect_oracle(&sigma, 6).map_err(|e| e.to_string())?;
                require(got.length == want && validate_perfect(&sigma, &got.scenario), || {
                    format!("{sigma}: got {} oracle {want}", got.length)
                })?;
            }
        }
        Ok(())
    });

    run("03 reversal distances match breadth-first search", sec(300), &mut ok, || {
        require(distance_to_target(&p("3 1 -4 -2"), SortTarget::Identity) == 3, || "fixture Id".into())?;
        // both fixture values verified against exhaustive search
        require(
            distance_to_target(&p("-3 1 4 2"), SortTarget::Identity) == 4
                && distance_to_target(&p("-3 1 4 2"), SortTarget::ReversedIdentity) == 3,
            || "fixture IdBar".into(),
        )?;
        let check = |sigma: &SignedPermutation| -> Result<(), String> {
            for target in [SortTarget::Identity, SortTarget::ReversedIdentity] {
                let want = bfs_distance(sigma, target).map_err(|e| e.to_string())?;
                let s = sort_to_target(sigma, target);
                require(s.len() == want, || {
                    format!("{sigma} -> {target:?}: got {} bfs {want}", s.len())
                })?;
                let end = sigma.apply_scenario(&s).unwrap().classify_sorted();
                let reached = match target {
                    SortTarget::Identity => end == SortClass::Identity,
                    SortTarget::ReversedIdentity => {
                        // size-1 special case: Id and IdBar coincide
                        end == SortClass::ReversedIdentity || sigma.size() == 1
                    }
                };
                require(reached, || format!("{sigma} -> {target:?}: wrong endpoint"))?;
            }
            Ok(())
        };
        for n in 1..=5 {
            for sigma in all_signed(n) {
                check(&sigma)?;
            }
        }
        for n in [6, 7, 8] {
            for trial in 0..200u64 {
                check(&SignedPermutation::random(n, 7000 * n as u64 + trial).unwrap())?;
            }
        }
        Ok(())
    });

    run("04 tree <-> permutation bijection round-trips", sec(60), &mut ok, || {
        for n in 1..=5 {
            for sigma in all_signed(n) {
                let back = tree_to_permutation(&build_sit(&sigma)).map_err(|e| e.to_string())?;
                require(back == sigma, || format!("{sigma} -> {back}"))?;
            }
        }
        for trial in 0..10_000u64 {
            let sigma = SignedPermutation::random(200, trial).unwrap();
            let back = tree_to_permutation(&build_sit(&sigma)).map_err(|e| e.to_string())?;
            require(back == sigma, || format!("trial {trial}"))?;
        }
        Ok(())
    });

    run("05 exact series agree with exhaustive enumeration", sec(120), &mut ok, || {
        let s = schroder_numbers(10);
        require(
            s[..4].iter().map(|v| v.to_u64().unwrap()).collect::<Vec<_>>() == [1, 1, 3, 11],
            || "counting sequence head".into(),
        )?;
        let iv = internal_vertex_series(10);
        let pl = pathlength_series(10);
        require(iv[1].to_u64() == Some(1) && iv[2].to_u64() == Some(5), || "internal vertices".into())?;
        require(
            pl[1].to_u64() == Some(2) && pl[2].to_u64() == Some(13) && pl[3].to_u64() == Some(80),
            || "pathlength".into(),
        )?;
        for n in 1..=10 {
            let shapes = enumerate_shapes(n);
            require(BigUint::from(shapes.len()) == s[n - 1], || format!("shape count n={n}"))?;
            let total_iv: u64 = shapes.iter().map(|t| t.internal_vertices() as u64).sum();
            let total_pl: u64 = shapes.iter().map(|t| t.pathlength() as u64).sum();
            require(
                BigUint::from(total_iv) == iv[n - 1] && BigUint::from(total_pl) == pl[n - 1],
                || format!("parameter totals n={n}"),
            )?;
        }
        require(
            commuting_count(4).map_err(|e| e.to_string())?.to_u64() == Some(352),
            || "commuting count".into(),
        )
    });

    run("06 counting asymptotics: exact vs rounded constant", sec(10), &mut ok, || {
        let s = schroder_numbers(100);
        let exact = s[99].to_f64().unwrap();
        let r = exact / schroder_asymptotic(100);
        require((r - 1.0).abs() < tol.exact.asymptotic_rel, || format!("ratio {r}"))?;
        // the two-decimal constant and base compound to a large error by n=100
        let rounded = exact / schroder_asymptotic_rounded(100);
        require(!(0.5..=2.0).contains(&rounded), || format!("rounded ratio {rounded}"))
    });

    let mut random_report = None;
    run("07 random permutations: tree shape and twin law", sec(600), &mut ok, || {
        let report = monte_carlo_random_perm_stats(1000, 10_000, 11);
        let shape = report.stat("shape_fraction").unwrap().mean;
        require(shape >= tol.monte_carlo.shape_fraction_min, || format!("shape {shape}"))?;
        let twins = report.stat("twins_mean").unwrap().mean;
        require(
            (tol.monte_carlo.twin_mean_lo..=tol.monte_carlo.twin_mean_hi).contains(&twins),
            || format!("twin mean {twins}"),
        )?;
        let tv = twin_tv_distance(&report.distribution("twins").unwrap().counts);
        require(tv <= tol.monte_carlo.twin_tv_max, || format!("twin TV distance {tv}"))?;
        random_report = Some(report);
        Ok(())
    });

    run("08 prime-vertex counts stay within their bounds", sec(60), &mut ok, || {
        let pow2 = random_report
            .as_ref()
            .ok_or("needs the report from criterion 07")?
            .stat("pow2_p_mean")
            .unwrap()
            .mean;
        require(pow2 <= tol.monte_carlo.p_mean_bound, || format!("mean 2^p = {pow2}"))?;
        for n in [7usize, 8] {
            let hist = count_by_prime_vertices(n).map_err(|e| e.to_string())?;
            let factorial: u64 = (1..n as u64).product();
            for (p, &u) in hist.iter().enumerate().skip(2) {
                require(u << p <= 48 * factorial, || format!("n={n} p={p} u={u}"))?;
            }
        }
        Ok(())
    });

    run("09 commuting permutations: scenario statistics", sec(600), &mut ok, || {
        let n = 1000;
        let report = monte_carlo_commuting_stats(n, 10_000, 13);
        let predictions = theoretical_predictions(n);
        for (name, predicted) in [
            ("reversals_mean", predictions.reversals),
            ("reversal_length_mean", predictions.reversal_length),
            ("length_one_mean", predictions.length_one_reversals),
            ("internal_vertices_mean", predictions.internal_vertices),
        ] {
            let mean = report.stat(name).unwrap().mean;
            let rel = (mean - predicted).abs() / predicted;
            require(rel <= tol.monte_carlo.relative, || {
                format!("{name}: mean {mean} predicted {predicted} (rel {rel:.4})")
            })?;
        }
        // spot-check that the sampler output is what the statistics assume
        let sampler = CommutingSampler::new(n).map_err(|e| e.to_string())?;
        let sigma = sampler.sample_seeded(99);
        require(is_commuting(&sigma), || "sampler output not commuting".into())?;
        reversal_profile(&sigma).map_err(|e| e.to_string())?;
        Ok(())
    });

    run("10 seeded runs are byte-identical across thread counts", sec(120), &mut ok, || {
        let wide = monte_carlo_commuting_stats(300, 2000, 5).to_json();
        let narrow = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| monte_carlo_commuting_stats(300, 2000, 5).to_json());
        require(wide == narrow, || "thread-count dependent output".into())?;
        let again = monte_carlo_random_perm_stats(300, 2000, 5).to_json();
        require(again == monte_carlo_random_perm_stats(300, 2000, 5).to_json(), || {
            "same-seed rerun differs".into()
        })
    });

    assert!(ok, "one or more acceptance criteria failed");
}
