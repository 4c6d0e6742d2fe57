//! End-to-end self check of one automaton: certify the counterexample gadget
//! when the language needs memory, otherwise reduce strategies on random
//! Eve-only arenas and sample the order laws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::Dpa;
use crate::error::{Error, Result};
use crate::gadgets::certify;
use crate::games::{find_positional, random_arena, solve_game, verify_strategy, ArenaParams, Game, Strategy};
use crate::positionality::{check_positional_with_cap, sample_order_laws, DEFAULT_MONOID_CAP};
use crate::reduction::{reduce_to_positional, Reduction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestOptions {
    pub trials: usize,
    pub seed: u64,
    pub max_vertices: usize,
    pub max_out_degree: usize,
    pub order_samples: usize,
    pub monoid_cap: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            trials: 50,
            seed: 0,
            max_vertices: 5,
            max_out_degree: 3,
            order_samples: 500,
            monoid_cap: DEFAULT_MONOID_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub lines: Vec<String>,
    pub passed: bool,
    /// Positional-branch statistics: trials that reduced and verified.
    pub trials_ok: usize,
    pub merges: usize,
}

impl SelftestReport {
    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

/// Errors that stop the run are limits and malformed input; everything a
/// trial discovers is reported as a failed line instead.
pub fn selftest(a: &Dpa, opts: &SelftestOptions) -> Result<SelftestReport> {
    let verdict = check_positional_with_cap(a, opts.monoid_cap)?;
    let mut report = SelftestReport {
        lines: Vec::new(),
        passed: true,
        trials_ok: 0,
        merges: 0,
    };
    match verdict.witness {
        Some(witness) => {
            let property = verdict.failed_property.unwrap_or(0);
            report.lines.push(format!("check: not positional (property {property} fails)"));
            report.lines.push(format!("witness: {}", witness.to_json()));
            let cert = certify(a, &witness)?;
            let g = &cert.gadget;
            report.lines.push(format!(
                "gadget: {} vertices, {} edges, start {}",
                g.arena.len(),
                g.arena.num_edges(),
                g.arena.name(g.start)
            ));
            report.lines.push(format!("eve wins from start: {}", yes_no(cert.eve_wins)));
            report
                .lines
                .push(format!("positional winning strategy: {}", if cert.positional.is_some() { "found" } else { "none" }));
            report.passed = cert.holds();
        }
        None => {
            report.lines.push("check: positional".into());
            positional_trials(a, opts, &mut report)?;
            let laws = sample_order_laws(a, opts.order_samples, opts.seed)?;
            report.lines.push(format!(
                "order laws: {} samples, {} violations",
                laws.samples,
                laws.violations.len()
            ));
            for v in &laws.violations {
                report.lines.push(format!(
                    "  violation {:?}: v={} v'={} w={} w2={}",
                    v.law, v.v, v.v_prime, v.w, v.w_other
                ));
            }
            report.passed &= laws.violations.is_empty();
        }
    }
    report
        .lines
        .push(format!("result: {}", if report.passed { "PASS" } else { "FAIL" }));
    Ok(report)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn positional_trials(a: &Dpa, opts: &SelftestOptions, report: &mut SelftestReport) -> Result<()> {
    if opts.max_vertices == 0 || opts.max_out_degree == 0 {
        return Err(Error::PreconditionViolated(
            "random arenas need at least one vertex and one edge per vertex".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for trial in 0..opts.trials {
        let vertices = rng.gen_range(1..=opts.max_vertices);
        let arena_seed: u64 = rng.gen();
        let params = ArenaParams {
            vertices,
            out_degree: opts.max_out_degree,
            eve_fraction: 1.0,
        };
        let arena = random_arena(params, a.alphabet(), arena_seed)?;
        let game = Game::new(arena, a.clone())?;
        match run_trial(&game) {
            Ok(t) => {
                report.trials_ok += 1;
                report.merges += t.merges;
                report.lines.push(format!(
                    "trial {trial}: {vertices} vertices, region {}, memory {} -> 1, {} merges, ok",
                    t.region, t.memory, t.merges
                ));
            }
            Err(e) => {
                report.passed = false;
                report.lines.push(format!("trial {trial}: {vertices} vertices, FAIL: {e}"));
            }
        }
    }
    report.lines.push(format!(
        "trials: {}/{} reduced to verified positional strategies",
        report.trials_ok, opts.trials
    ));
    Ok(())
}

struct TrialStats {
    region: usize,
    memory: usize,
    merges: usize,
}

fn check_reduction(game: &Game, r: &Reduction, region: &[usize]) -> Result<()> {
    let fail = |m: String| Err(Error::PreconditionViolated(m));
    if !r.strategy.is_positional() {
        return fail("reduced strategy still uses memory".into());
    }
    if r.sizes.windows(2).any(|w| w[1] + 1 != w[0]) {
        return fail(format!("memory did not shrink by one per merge: {:?}", r.sizes));
    }
    if !verify_strategy(game, &r.strategy, &r.initial)? {
        return fail("reduced strategy loses".into());
    }
    let covered: Vec<usize> = r.initial.iter().map(|&m| r.strategy.sigma(m)).collect();
    if let Some(v) = region.iter().find(|v| !covered.contains(v)) {
        return fail(format!("region vertex {v} lost its start state"));
    }
    Ok(())
}

fn run_trial(game: &Game) -> Result<TrialStats> {
    let sol = solve_game(game)?;
    if !verify_strategy(game, &sol.strategy, &sol.initial)? {
        return Err(Error::PreconditionViolated("solver strategy loses".into()));
    }
    let direct = reduce_to_positional(game, &sol.strategy, &sol.initial)?;
    check_reduction(game, &direct, &sol.region)?;

    // a counter bit doubles the memory so that merges always happen
    let inflated: Strategy = sol.strategy.inflate(2);
    let starts: Vec<usize> = sol.initial.iter().map(|&m| m * 2).collect();
    let doubled = reduce_to_positional(game, &inflated, &starts)?;
    check_reduction(game, &doubled, &sol.region)?;

    for &v in &sol.region {
        if find_positional(game, v)?.is_none() {
            return Err(Error::PreconditionViolated(format!(
                "no positional strategy wins from `{}`",
                game.arena().name(v)
            )));
        }
    }
    Ok(TrialStats {
        region: sol.region.len(),
        memory: inflated.memory(),
        merges: direct.merges.len() + doubled.merges.len(),
    })
}
