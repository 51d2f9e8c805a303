use std::fmt::Display;

use factorlab::algebra::{self, AlgebraElement, Divisibility};
use factorlab::field::{Field, Fp, Prime, Rationals, Q};
use factorlab::growth;
use factorlab::lenfn::{self, Flavor, LengthFunctionSpec, Triple};
use factorlab::monoid::{self, AtomVerdict, SbnVerdict};
use factorlab::ore::{self, OreConfig};
use factorlab::pi_matrix::{self, Mat2};
use factorlab::poly::BasePoly;
use factorlab::word::{Alphabet, Word};
use factorlab::{embed, group, NormalFormS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{AlgArgs, AlgOp, Cli, Command, GrowthModel, LenfnHost, Outcome, TableFormat};

type Res = Result<Outcome, String>;

fn emit(json_mode: bool, value: Value, text: impl Display) {
    if json_mode {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        println!("{text}");
    }
}

fn emit_ser<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn element(text: &str) -> Result<NormalFormS, String> {
    text.parse().map_err(|e| format!("{e}"))
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Ok
    } else {
        Outcome::Violation
    }
}

fn set_literal(values: impl IntoIterator<Item = u64>) -> String {
    let parts: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn run(cli: &Cli) -> Res {
    let j = cli.json;
    match &cli.command {
        Command::Normalize { word } => normalize(j, word),
        Command::Equal { left, right } => equal(j, left, right),
        Command::Atom { word } => atom(j, word),
        Command::Lengths { word, cap } => lengths(j, word, *cap),
        Command::Accp { depth } => accp(j, *depth),
        Command::InAllSbn { word, probe } => in_all_sbn(j, word, *probe),
        Command::Alg(args) => alg(j, args),
        Command::Growth {
            model,
            depth,
            format,
        } => growth_cmd(j, *model, *depth, *format),
        Command::SkewCheck { config, pairs } => skew_check(j, config, *pairs, cli.seed),
        Command::FiltCheck { pairs } => filt_check(j, *pairs, cli.seed),
        Command::LenfnCheck {
            host,
            samples,
            depth,
            cap,
        } => lenfn_check(j, *host, *samples, *depth, *cap, cli.seed),
        Command::PiDemo { steps, matrix } => pi_demo(j, *steps, matrix),
    }
}

fn normalize(j: bool, word: &str) -> Res {
    let w = monoid::parse_word(word).map_err(|e| e.to_string())?;
    let x = monoid::normalize(&w);
    let g = embed(&w);
    // the group oracle must read the same element back
    let consistent = group::parse_membership(&g).into_option().as_ref() == Some(&x);
    emit(
        j,
        json!({"input": word, "normal_form": x.to_string(), "length": x.len(), "group_element": g.to_string(), "oracles_agree": consistent}),
        &x,
    );
    if !consistent {
        eprintln!("oracle disagreement on `{word}`");
    }
    Ok(outcome(consistent))
}

fn equal(j: bool, left: &str, right: &str) -> Res {
    let u = monoid::parse_word(left).map_err(|e| e.to_string())?;
    let v = monoid::parse_word(right).map_err(|e| e.to_string())?;
    let by_rewriting = monoid::equal(&u, &v);
    let by_group = embed(&u) == embed(&v);
    emit(
        j,
        json!({"left": left, "right": right, "equal": by_rewriting, "oracles_agree": by_rewriting == by_group}),
        by_rewriting,
    );
    if by_rewriting != by_group {
        eprintln!("oracle disagreement: rewriting says {by_rewriting}, group says {by_group}");
    }
    Ok(outcome(by_rewriting == by_group))
}

fn atom(j: bool, word: &str) -> Res {
    let x = element(word)?;
    let verdict = monoid::is_atom(&x);
    let (kind, text, split) = match &verdict {
        AtomVerdict::Unit => ("unit", "unit".to_string(), Value::Null),
        AtomVerdict::Atom => ("atom", "atom".to_string(), Value::Null),
        AtomVerdict::NotAtom { left, right } => (
            "not_atom",
            format!("not an atom: {x} = ({left}) * ({right})"),
            json!([left.to_string(), right.to_string()]),
        ),
    };
    emit(
        j,
        json!({"element": x.to_string(), "verdict": kind, "split": split}),
        text,
    );
    Ok(Outcome::Ok)
}

fn lengths(j: bool, word: &str, cap: Option<u64>) -> Res {
    let x = element(word)?;
    let cap = cap.unwrap_or(x.len() + 8);
    let report = monoid::length_set(&x, cap).map_err(|e| e.to_string())?;
    emit(
        j,
        json!({
            "element": x.to_string(),
            "cap": report.cap,
            "lengths": report.lengths,
            "exhausted": report.exhausted,
            "certificate": report.certificate,
            "words_visited": report.words_visited,
        }),
        set_literal(report.lengths.iter().copied()),
    );
    if !report.exhausted && !j {
        eprintln!("note: lengths up to {cap} are a lower bound; completeness was not certified");
    }
    Ok(Outcome::Ok)
}

fn accp(j: bool, depth: u64) -> Res {
    let witness = match monoid::verify_accp_failure(depth) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("ACCP witness failed: {e}");
            return Ok(Outcome::Violation);
        }
    };
    if j {
        emit_ser(&json!({
            "depth": witness.depth,
            "strict_inclusions": witness.strict_inclusions,
            "chain": witness.chain.iter().map(|l| json!({"generator": l.generator.to_string(), "cofactor": l.cofactor.to_string()})).collect::<Vec<_>>(),
        }));
    } else {
        for (k, pair) in witness.chain.windows(2).enumerate() {
            println!(
                "{k:>3}: ({})S < ({})S   {} = ({}) * {}",
                pair[0].generator,
                pair[1].generator,
                pair[0].generator,
                pair[1].generator,
                pair[0].cofactor
            );
        }
        println!("{} strict inclusions", witness.strict_inclusions);
    }
    Ok(outcome(witness.strict_inclusions == depth))
}

fn in_all_sbn(j: bool, word: &str, probe: Option<u64>) -> Res {
    let x = element(word)?;
    let report = monoid::in_all_sbn(&x, probe);
    let (text, value) = match &report.verdict {
        SbnVerdict::Yes { i, cofactor } => (
            format!("yes: {x} = ({cofactor}) * a^2 * b^{i}"),
            json!({"in_all": true, "i": i, "cofactor": cofactor.to_string()}),
        ),
        SbnVerdict::No { max_n } => (
            format!(
                "no: {x} lies in S b^n only for n <= {max_n} (probe {})",
                report.probe
            ),
            json!({"in_all": false, "max_n": max_n}),
        ),
    };
    let mut value = value;
    value["element"] = json!(x.to_string());
    value["probe"] = json!(report.probe);
    emit(j, value, text);
    Ok(Outcome::Ok)
}

fn alg(j: bool, args: &AlgArgs) -> Res {
    if args.field == "q" {
        alg_over::<Q>(j, &Rationals, &args.op)
    } else {
        let p: u64 = args
            .field
            .parse()
            .map_err(|_| format!("--field must be `q` or a prime, got `{}`", args.field))?;
        let p = Prime::new(p).map_err(|e| e.to_string())?;
        alg_over::<Fp>(j, &p, &args.op)
    }
}

fn alg_over<F: Field>(j: bool, ctx: &F::Ctx, op: &AlgOp) -> Res {
    let parse = |s: &str| AlgebraElement::<F>::parse(ctx, s).map_err(|e| e.to_string());
    match op {
        AlgOp::Add { f, g } => {
            let r = parse(f)?.add(&parse(g)?).map_err(|e| e.to_string())?;
            emit(j, json!({"result": r.to_string()}), r);
        }
        AlgOp::Mul { f, g } => {
            let r = parse(f)?.mul(&parse(g)?).map_err(|e| e.to_string())?;
            emit(j, json!({"result": r.to_string()}), r);
        }
        AlgOp::Deg { f } => {
            let d = parse(f)?.deg_a();
            let text = d.map_or("-inf".to_string(), |d| d.to_string());
            emit(j, json!({"deg_a": d}), text);
        }
        AlgOp::Divides { f, g, cap } => {
            let (f, g) = (parse(f)?, parse(g)?);
            let verdict = algebra::divides_right(&f, &g, *cap).map_err(|e| e.to_string())?;
            let (text, value) = match verdict {
                Divisibility::Yes(h) => (
                    format!("yes: h = {h}"),
                    json!({"verdict": "yes", "h": h.to_string()}),
                ),
                Divisibility::No(reason) => (
                    format!("no ({reason:?})"),
                    json!({"verdict": "no", "reason": format!("{reason:?}")}),
                ),
                Divisibility::Unknown => (
                    format!("unknown: no quotient supported on elements of length <= {cap}"),
                    json!({"verdict": "unknown", "cap": cap}),
                ),
            };
            emit(j, value, text);
        }
    }
    Ok(Outcome::Ok)
}

fn growth_cmd(j: bool, model: GrowthModel, depth: u64, format: TableFormat) -> Res {
    let table = match model {
        GrowthModel::Free => growth::free_monoid(2, depth),
        GrowthModel::FreeCommutative => growth::free_commutative(2, depth),
        GrowthModel::S => growth::s_by_tuples(depth),
        GrowthModel::SWords => growth::s_by_words(depth),
    };
    if j {
        emit_ser(&table);
    } else {
        match format {
            TableFormat::Csv => print!("{}", table.to_csv()),
            TableFormat::Columns => print!("{}", table.to_columns()),
        }
        if let Some(n) = table.truncated_at {
            eprintln!(
                "note: table truncated at n = {n} (budget {})",
                growth::GROWTH_BUDGET
            );
        }
        if let Some(c) = &table.classification {
            eprintln!("classification: {c}");
        }
    }
    Ok(Outcome::Ok)
}

fn skew_check(j: bool, config: &str, pairs: usize, seed: u64) -> Res {
    let config: OreConfig = config.parse().map_err(|e: ore::OreError| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = ore::skew_suite(&config, pairs, seed, &mut rng);
    if j {
        emit_ser(&report);
    } else {
        println!("config: {}", report.config);
        println!("pairs: {}", report.pairs);
        println!(
            "right length violations: {}",
            report.right_length.violations.len()
        );
        println!(
            "leading coefficient law failures: {}",
            report.leading_law_failures
        );
        println!("bound failures: {}", report.bf_bound_failures);
        println!("note: mu = deg_y stands in for max L on K[y]");
        println!("{}", if report.passed() { "PASS" } else { "FAIL" });
    }
    Ok(outcome(report.passed()))
}

fn filt_check(j: bool, pairs: usize, seed: u64) -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = ore::filtration_suite(pairs, seed, &mut rng);
    if j {
        emit_ser(&report);
    } else {
        println!("pairs: {}", report.pairs);
        println!("additivity failures: {}", report.additivity_failures);
        println!(
            "superadditive violations: {}",
            report.superadditive.violations.len()
        );
        println!("{}", if report.passed() { "PASS" } else { "FAIL" });
    }
    Ok(outcome(report.passed()))
}

fn lenfn_check(j: bool, host: LenfnHost, samples: usize, depth: u64, cap: u64, seed: u64) -> Res {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match host {
        LenfnHost::Free => {
            let alphabet = Alphabet::new(["a", "b"]).expect("valid names");
            let word = |rng: &mut ChaCha8Rng| {
                let n = rng.gen_range(0..=6);
                Word::from_letters(&alphabet, (0..n).map(|_| rng.gen_range(0..2)).collect())
            };
            let sample: Vec<_> = (0..samples)
                .map(|_| {
                    let (b, c) = (word(&mut rng), word(&mut rng));
                    Triple::from_factors(b, c).expect("same alphabet")
                })
                .collect();
            contract_suite(j, &lenfn::free_word_length(), &sample)
        }
        LenfnHost::Poly => {
            let sample: Vec<_> = (0..samples)
                .map(|_| {
                    let b = BasePoly::<Q>::random_nonzero(&Rationals, &mut rng, 4);
                    let c = BasePoly::<Q>::random_nonzero(&Rationals, &mut rng, 4);
                    Triple::from_factors(b, c).expect("same field")
                })
                .collect();
            contract_suite(j, &lenfn::poly_degree::<Q>(), &sample)
        }
        LenfnHost::S => s_negative_control(j, depth, cap),
    }
}

/// Runs the declared contract and every weaker one on the same sample.
fn contract_suite<E: lenfn::Host>(
    j: bool,
    spec: &LengthFunctionSpec<E>,
    sample: &[Triple<E>],
) -> Res {
    let mut reports = Vec::new();
    for flavor in [Flavor::Superadditive, Flavor::TwoSided, Flavor::Right] {
        let report =
            lenfn::check_contract(&spec.with_flavor(flavor), sample).map_err(|e| e.to_string())?;
        reports.push(report);
    }
    let ok = reports.iter().all(|r| r.passed());
    if j {
        emit_ser(&json!({"length_function": spec.name, "reports": reports}));
    } else {
        for r in &reports {
            println!(
                "{} ({}): {} samples, {} violations",
                spec.name,
                r.contract,
                r.samples,
                r.violations.len()
            );
        }
        println!("{}", if ok { "PASS" } else { "FAIL" });
    }
    Ok(outcome(ok))
}

/// S has no right length function: every candidate must be refuted by
/// `n = λ(a²) + 1`, and `a²` lies in every power of the nonunits.
fn s_negative_control(j: bool, depth: u64, cap: u64) -> Res {
    let a2 = NormalFormS::a_pow(2);
    let special = LengthFunctionSpec::new(
        "normal-form length, a^2 boosted to 100",
        Flavor::Right,
        move |x: &NormalFormS| if *x == a2 { 100 } else { x.len() },
        lenfn::s_is_unit,
    );
    let candidates = [
        lenfn::s_normal_form_length(),
        lenfn::s_max_length(cap),
        special,
    ];
    let refutations: Vec<_> = candidates.iter().map(lenfn::refute_on_s).collect();
    let all_refuted = refutations
        .iter()
        .all(|r| !r.report.passed() && r.n <= r.bound);
    let witnesses: Vec<_> = (1..=depth)
        .map(|n| {
            let factors = lenfn::nonunit_power_witness(n).expect("n >= 1");
            let ok = factors.iter().all(|f| !f.is_identity())
                && factors
                    .iter()
                    .fold(NormalFormS::identity(), |acc, f| acc.mul(f))
                    == NormalFormS::a_pow(2);
            (n, factors, ok)
        })
        .collect();
    let witnesses_ok = witnesses.iter().all(|w| w.2);
    if j {
        emit_ser(&json!({
            "refutations": candidates.iter().zip(&refutations).map(|(c, r)| json!({"candidate": c.name, "refutation": r})).collect::<Vec<_>>(),
            "nonunit_powers": witnesses.iter().map(|(n, f, ok)| json!({"n": n, "factors": f.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "verified": ok})).collect::<Vec<_>>(),
        }));
    } else {
        for (c, r) in candidates.iter().zip(&refutations) {
            let v = &r.report.violations[0];
            println!(
                "{}: refuted at n = {} (bound {}): a = {}, b = {}, c = {}, lambda = ({}, {}, {})",
                c.name, r.n, r.bound, v.a, v.b, v.c, v.lambda_a, v.lambda_b, v.lambda_c
            );
        }
        for (n, f, ok) in &witnesses {
            let parts: Vec<String> = f.iter().map(|x| format!("({x})")).collect();
            println!(
                "a^2 = {}  [{n} nonunit factors, {}]",
                parts.join(" "),
                if *ok { "ok" } else { "FAILED" }
            );
        }
        println!(
            "{}",
            if all_refuted && witnesses_ok {
                "PASS"
            } else {
                "FAIL"
            }
        );
    }
    Ok(outcome(all_refuted && witnesses_ok))
}

fn pi_demo(j: bool, steps: usize, matrix: &str) -> Res {
    let a: Mat2 = matrix
        .parse()
        .map_err(|e: pi_matrix::PiError| e.to_string())?;
    if !pi_matrix::is_special_form(&a) {
        return Err(format!(
            "`{a}` is not of the form (a, xb; c, xd) with nonzero determinant"
        ));
    }
    match pi_matrix::peel_chain(&a, steps) {
        Ok(chain) => {
            if j {
                emit_ser(&json!({
                    "matrix": a.to_string(),
                    "in_r": pi_matrix::in_r(&a),
                    "steps": chain.iter().map(|s| json!({"step": s.step, "factor": s.matrix.to_string(), "checks_passed": s.passed()})).collect::<Vec<_>>(),
                }));
            } else {
                println!("A_0 = {a}   (in R: {})", pi_matrix::in_r(&a));
                for s in &chain {
                    println!(
                        "A_{} = {}   U*A_{} = A_{}, A = U^{}*A_{}, all checks ok",
                        s.step,
                        s.matrix,
                        s.step,
                        s.step - 1,
                        s.step,
                        s.step
                    );
                }
                println!("U = diag(1, y) is in R, U^-1 = diag(1, y^-1) is not");
                println!("{steps} peeling steps verified");
            }
            Ok(Outcome::Ok)
        }
        Err(e) => {
            eprintln!("{e}");
            Ok(Outcome::Violation)
        }
    }
}
