//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use posit_core::gadgets::certify;
use posit_core::games::{random_arena, solve_game, verify_strategy, ArenaParams, Game};
use posit_core::positionality::{check_property1, check_property2, check_property3, verify_order_laws};
use posit_core::reduction::reduce_to_positional;
use posit_core::{check_positional, fixtures, Dpa, FiniteWord, LassoWord, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOM_LASSOS: usize = 1000;
const REDUCTION_ARENAS: u64 = 100;
const REDUCTION_MAX_VERTICES: usize = 5;
const REDUCTION_MAX_OUT_DEGREE: usize = 3;
const ORDER_SAMPLES: usize = 500;
const ORACLE_MAX_LEN: usize = 3;
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn posit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_posit"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn lasso(a: &Dpa, s: &str) -> LassoWord {
    LassoWord::parse(s, a.alphabet()).unwrap()
}

/// Whether the periodic part of `period^ω` contains, infinitely often, a
/// factor `x c* x`.
fn recurring_factor(period: &[char], x: char) -> bool {
    let n = period.len();
    let z: Vec<char> = period.iter().cycle().take(3 * n).copied().collect();
    (0..n).filter(|&i| z[i] == x).any(|i| {
        let mut j = i + 1;
        while j < z.len() && z[j] == 'c' {
            j += 1;
        }
        j < z.len() && z[j] == x
    })
}

fn criterion1() -> Outcome {
    let a = fixtures::ex3();
    if !check_positional(&a).map_err(|e| e.to_string())?.positional {
        return Err("EX3 is reported not positional".into());
    }
    let (code, out) = posit(&["check", fixture_path("ex3.dpa").to_str().unwrap()]);
    if code != 0 || out.trim() != "positional" {
        return Err(format!("`posit check ex3.dpa` gave exit {code}: {out}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let letters = ['a', 'b', 'c'];
    let mut disagreements = 0;
    let mut accepted = 0;
    for _ in 0..RANDOM_LASSOS {
        let plen = rng.gen_range(0..=4);
        let qlen = rng.gen_range(1..=6);
        let prefix: String = (0..plen).map(|_| letters[rng.gen_range(0..3)]).collect();
        let period: Vec<char> = (0..qlen).map(|_| letters[rng.gen_range(0..3)]).collect();
        let text = format!("{prefix}:{}", period.iter().collect::<String>());
        let direct = recurring_factor(&period, 'a') && !recurring_factor(&period, 'b');
        let ours = a.member(&lasso(&a, &text)).map_err(|e| e.to_string())?;
        accepted += ours as usize;
        if direct != ours {
            disagreements += 1;
        }
    }
    if disagreements != 0 {
        return Err(format!("{disagreements}/{RANDOM_LASSOS} membership disagreements"));
    }
    Ok(format!("positional; {RANDOM_LASSOS} lassos, 0 disagreements ({accepted} accepted)"))
}

fn criterion2() -> Outcome {
    let game = Game::new(fixtures::w2game(), fixtures::w2()).map_err(|e| e.to_string())?;
    let sol = solve_game(&game).map_err(|e| e.to_string())?;
    if sol.region != vec![0, 1] {
        return Err(format!("region {:?}", sol.region));
    }
    if !verify_strategy(&game, &sol.strategy, &sol.initial).map_err(|e| e.to_string())? {
        return Err("strategy fails verification".into());
    }
    Ok(format!(
        "region = {{u, center}}, strategy with memory {} verified",
        sol.strategy.memory()
    ))
}

/// Checks the defining implication of the failed property on the witness.
fn witness_refutes(a: &Dpa, w: &Witness) -> Result<bool, String> {
    let m = |u: &FiniteWord, x: &LassoWord| a.member(&x.prepend(u)).map_err(|e| e.to_string());
    let omega = |v: &FiniteWord| LassoWord::omega(v.clone()).unwrap();
    Ok(match w {
        Witness::One(x) => {
            m(&x.u, &x.w)? && m(&x.u_prime, &x.w_prime)? && !m(&x.u, &x.w_prime)? && !m(&x.u_prime, &x.w)?
        }
        Witness::Two(x) => {
            m(&x.u.concat(&x.v), &x.w)? && !m(&x.u, &omega(&x.v))? && !m(&x.u, &x.w)?
        }
        Witness::Three(x) => {
            m(&x.u, &omega(&x.v.concat(&x.v_prime)))? && !m(&x.u, &omega(&x.v))? && !m(&x.u, &omega(&x.v_prime))?
        }
    })
}

fn criterion3() -> Outcome {
    for name in ["buchi_a", "fin_a", "rabin"] {
        let a = fixtures::all().into_iter().find(|(n, _)| *n == name).unwrap().1;
        if !check_positional(&a).map_err(|e| e.to_string())?.positional {
            return Err(format!("{name} reported not positional"));
        }
    }
    let mut found = Vec::new();
    for (name, a, expected) in fixtures::non_positional() {
        let v = check_positional(&a).map_err(|e| e.to_string())?;
        if v.positional || v.failed_property != Some(expected) {
            return Err(format!("{name}: expected property {expected}, got {:?}", v.failed_property));
        }
        let w = v.witness.ok_or(format!("{name}: no witness"))?;
        if !witness_refutes(&a, &w)? {
            return Err(format!("{name}: witness {w} does not refute property {expected}"));
        }
        found.push(format!("{name}:P{expected}"));
    }
    Ok(format!("buchi_a fin_a rabin positional; {} with self-certifying witnesses", found.join(" ")))
}

fn criterion4() -> Outcome {
    let mut certified = 0;
    let total = fixtures::non_positional().len();
    for (name, a, _) in fixtures::non_positional() {
        let w = check_positional(&a).map_err(|e| e.to_string())?.witness.unwrap();
        let cert = certify(&a, &w).map_err(|e| e.to_string())?;
        if !cert.eve_wins {
            return Err(format!("{name}: Eve does not win the gadget"));
        }
        if cert.positional.is_some() {
            return Err(format!("{name}: a positional strategy wins the gadget"));
        }
        certified += 1;
    }
    Ok(format!("{certified}/{total} gadgets certified"))
}

fn criterion5() -> Outcome {
    let mut merges = 0;
    let mut runs = 0;
    for (name, a) in fixtures::positional() {
        for seed in 0..REDUCTION_ARENAS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let params = ArenaParams {
                vertices: rng.gen_range(1..=REDUCTION_MAX_VERTICES),
                out_degree: REDUCTION_MAX_OUT_DEGREE,
                eve_fraction: 1.0,
            };
            let arena = random_arena(params, a.alphabet(), rng.gen()).map_err(|e| e.to_string())?;
            let game = Game::new(arena, a.clone()).map_err(|e| e.to_string())?;
            let sol = solve_game(&game).map_err(|e| e.to_string())?;
            let inflated = sol.strategy.inflate(2);
            let starts: Vec<usize> = sol.initial.iter().map(|&m| 2 * m).collect();
            for (s, init) in [(&sol.strategy, &sol.initial), (&inflated, &starts)] {
                let r = reduce_to_positional(&game, s, init).map_err(|e| format!("{name} seed {seed}: {e}"))?;
                if !r.strategy.is_positional() {
                    return Err(format!("{name} seed {seed}: result not positional"));
                }
                if r.sizes.windows(2).any(|w| w[1] >= w[0]) {
                    return Err(format!("{name} seed {seed}: memory did not decrease: {:?}", r.sizes));
                }
                if !verify_strategy(&game, &r.strategy, &r.initial).map_err(|e| e.to_string())? {
                    return Err(format!("{name} seed {seed}: verification failed"));
                }
                let covered: Vec<usize> = r.initial.iter().map(|&m| r.strategy.sigma(m)).collect();
                if sol.region.iter().any(|v| !covered.contains(v)) {
                    return Err(format!("{name} seed {seed}: region not covered"));
                }
                merges += r.merges.len();
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} reductions over 4 fixtures x {REDUCTION_ARENAS} arenas, {merges} merges, 0 failures"))
}

fn criterion6() -> Outcome {
    let mut total = 0;
    for (name, a) in fixtures::positional() {
        let r = verify_order_laws(&a, ORDER_SAMPLES, 6).map_err(|e| e.to_string())?;
        if !r.violations.is_empty() {
            return Err(format!("{name}: {} violations, first {:?}", r.violations.len(), r.violations[0]));
        }
        total += r.samples;
    }
    Ok(format!("{total} draws over 4 fixtures, 0 violations"))
}

/// Bitset of the lassos accepted from each state.
fn acceptance_sets(a: &Dpa, lassos: &[LassoWord]) -> Vec<Vec<u64>> {
    (0..a.num_states())
        .map(|q| {
            let mut bits = vec![0u64; lassos.len().div_ceil(64)];
            for (i, w) in lassos.iter().enumerate() {
                if a.member_from(q, w).unwrap() {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect()
}

fn subset(x: &[u64], y: &[u64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a & !b == 0)
}

/// Brute-force violations of the three properties with words and lasso
/// parts of length at most `ORACLE_MAX_LEN`.
fn brute_force(a: &Dpa) -> [bool; 3] {
    let words = a.alphabet().words_up_to(ORACLE_MAX_LEN);
    let nonempty: Vec<&FiniteWord> = words.iter().filter(|w| !w.is_empty()).collect();
    let lassos: Vec<LassoWord> = words
        .iter()
        .flat_map(|p| nonempty.iter().map(move |q| LassoWord::new(p.clone(), (*q).clone()).unwrap()))
        .collect();
    let sets = acceptance_sets(a, &lassos);
    let after = |u: &FiniteWord| a.run_finite(a.initial(), u).unwrap().0;
    let member = |u: &FiniteWord, w: &LassoWord| a.member(&w.prepend(u)).unwrap();
    let omega = |v: &FiniteWord| LassoWord::omega(v.clone()).unwrap();

    // uw, u'w' in L but uw', u'w not: the residual sets are incomparable
    let p1 = words.iter().any(|u| {
        words.iter().any(|u2| {
            let (x, y) = (&sets[after(u)], &sets[after(u2)]);
            !subset(x, y) && !subset(y, x)
        })
    });
    // uvw in L, uv^ω not, uw not: some w accepted after uv but not after u
    let p2 = words.iter().any(|u| {
        nonempty.iter().any(|v| {
            !member(u, &omega(v)) && !subset(&sets[after(&u.concat(v))], &sets[after(u)])
        })
    });
    let p3 = words.iter().any(|u| {
        nonempty.iter().any(|v| {
            !member(u, &omega(v))
                && nonempty
                    .iter()
                    .any(|v2| !member(u, &omega(v2)) && member(u, &omega(&v.concat(v2))))
        })
    });
    [p1, p2, p3]
}

fn criterion7() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (name, a) in fixtures::all() {
        if a.num_states() > 8 {
            return Err(format!("{name} has more than 8 states"));
        }
        let start = Instant::now();
        let violated = brute_force(&a);
        let ours = [
            !check_property1(&a).passed(),
            !check_property2(&a).map_err(|e| e.to_string())?.passed(),
            !check_property3(&a).map_err(|e| e.to_string())?.passed(),
        ];
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        if violated != ours {
            return Err(format!("{name}: brute force {violated:?} vs checker {ours:?}"));
        }
        if elapsed > ORACLE_TIME_LIMIT {
            return Err(format!("{name}: took {elapsed:?}"));
        }
    }
    Ok(format!("8 fixtures x 3 properties agree; slowest fixture {:.2}s", slowest.as_secs_f64()))
}

fn criterion8() -> Outcome {
    let flags = [vec![], vec!["--trials", "100", "--seed", "7", "--max-vertices", "5"]];
    let mut runs = 0;
    for (name, _) in fixtures::all() {
        let path = fixture_path(&format!("{name}.dpa"));
        for f in &flags {
            let mut args = vec!["selftest", path.to_str().unwrap()];
            args.extend(f.iter().copied());
            let (c1, first) = posit(&args);
            let (c2, second) = posit(&args);
            if c1 != 0 || c2 != 0 {
                return Err(format!("{name}: selftest exit codes {c1}, {c2}"));
            }
            if first != second || first.is_empty() {
                return Err(format!("{name} {f:?}: reports differ"));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} selftest configurations byte-identical across two runs, all PASS"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("EX3 positional and membership matches the direct condition", criterion1),
        ("W2GAME won from both vertices with a verified strategy", criterion2),
        ("fixture verdicts and self-certifying witnesses", criterion3),
        ("gadgets won by Eve but not positionally", criterion4),
        ("random Eve-only arenas reduce to verified positional strategies", criterion5),
        ("order laws hold on random draws", criterion6),
        ("property checks agree with bounded brute force", criterion7),
        ("selftest reports are deterministic", criterion8),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!(
                "criterion {}: PASS  {title}: {detail} [{:.2}s]",
                i + 1,
                start.elapsed().as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/8 passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
