//! Single-binary command-line surface over the calculus engine.
//!
//! Every subcommand emits a human-readable summary by default and the raw
//! JSON payload with `--json`. Exit codes: 0 success, 1 domain error,
//! 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use charcalc::blowup::{
    main_construction, verify_lem_dva, verify_per_ob, ArrangementRing, GoodFamily,
};
use charcalc::chern::{
    annihilate_schedule, apply_schedule, express_cd_via_steenrod, formal_schedule_context,
    mi_search, steenrod_total_on_class, AdamsCombination, ChernVector, CoefficientSpec,
    FormalPoly, FormalRing, Schedule, ScheduleMode,
};
use charcalc::symfunc::Partition;
use charcalc::toychow::{
    chern_of_line_sum, degree_pairing, is_num_trivial, num_trivial_p_adic,
    steenrod_total_on_ring, ToyChowClass, ToyChowRing,
};
use charcalc::verify::{suite, CheckResult, SUITE_NAMES};
use charcalc::{kappa_bruteforce, kappa_formula, l_power_form, stch_decomposable};
use charcalc::{Error, GradedClass, MPoly, PrimePower};

#[derive(Parser)]
#[command(name = "charcalc", version, about = "characteristic-class calculus")]
struct Cli {
    /// Emit only the JSON payload.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Top-Chern-class coefficient of a partition-indexed class.
    Kappa {
        /// Partition as "i:multiplicity" pairs, e.g. "1:4,3:1".
        #[arg(long)]
        partition: String,
        /// Cross-check the closed form against brute-force expansion.
        #[arg(long)]
        oracle: bool,
    },
    /// Decomposability of c_d through Steenrod images mod p.
    Stch {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        p: u64,
        /// Emit the full decomposition identity.
        #[arg(long)]
        express: bool,
    },
    /// Adams multiplier multiset with power sums 1 at r and 0 at d mod p.
    MiSearch {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        p: u64,
    },
    /// Apply an Adams combination to a Chern vector file.
    Adams {
        /// JSON file holding {p, m, top, classes}.
        #[arg(long)]
        chern: PathBuf,
        /// Comma-separated multipliers, e.g. "1,1,2".
        #[arg(long)]
        multiset: String,
        #[arg(long, default_value_t = 1)]
        reps: u32,
    },
    /// Total Steenrod operation on a partition-indexed class mod p.
    Steenrod {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        p: u64,
        /// Select the P^k component only.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Blow-up arrangement: main construction and identity sweeps.
    Blowup {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dim_cap: Option<u32>,
        /// Also run the exhaustive pairwise and m-fold identity sweeps.
        #[arg(long)]
        verify_all: bool,
    },
    /// Build or apply a degree-by-degree annihilation schedule.
    Schedule {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        adams_only: bool,
        /// Apply the schedule stored in this JSON file to the standard
        /// formal vector (ignores the other parameters).
        #[arg(long)]
        apply: Option<PathBuf>,
    },
    /// Operations in Chow rings of products of projective spaces.
    Toy {
        /// Ring descriptor such as "P2xP1x P1".
        #[arg(long)]
        ring: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
        /// Numerical-triviality check of a class expression.
        #[arg(long)]
        trivial: Option<String>,
        /// Total Steenrod image of a class expression (needs --p).
        #[arg(long)]
        steenrod: Option<String>,
        /// Degree pairing of two class expressions.
        #[arg(long, num_args = 2)]
        pair: Option<Vec<String>>,
        /// Triviality verdicts mod p^1..p^depth (integral class, needs --p).
        #[arg(long)]
        padic: Option<String>,
        /// Chern vector of a sum of line classes (semicolon-separated).
        #[arg(long)]
        lines: Option<String>,
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Run the named property suite (or all of them).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Renders a formal polynomial with generators named by degree (x2, x3, ...).
fn formal_to_string(c: &FormalPoly) -> String {
    let degrees = c.ring().var_degrees();
    let mut parts = Vec::new();
    for (exps, coeff) in c.poly().terms() {
        let mut factors = Vec::new();
        if *coeff != BigInt::from(1) || exps.iter().all(|&e| e == 0) {
            factors.push(coeff.to_string());
        }
        for (i, &e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", degrees[i])),
                _ => factors.push(format!("x{}^{e}", degrees[i])),
            }
        }
        parts.push(factors.join("*"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn poly_to_json(p: &MPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(exps, coeff)| json!({"exps": exps, "coeff": coeff.to_string()}))
        .collect();
    json!(terms)
}

fn poly_from_json(v: &Value, nvars: usize) -> Result<MPoly, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("polynomial payload must be an array".into()))?;
    let mut out = MPoly::zero(nvars);
    for term in arr {
        let exps: Vec<u32> = serde_json::from_value(term["exps"].clone())
            .map_err(|e| Error::Parse(format!("bad exponent list: {e}")))?;
        if exps.len() != nvars {
            return Err(Error::Parse(format!(
                "expected {nvars} exponents, got {}",
                exps.len()
            )));
        }
        let coeff: BigInt = term["coeff"]
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse("bad coefficient".into()))?;
        out.add_term(exps, coeff);
    }
    Ok(out)
}

fn vector_to_json(p: u64, m: u32, v: &ChernVector<FormalPoly>) -> Value {
    json!({
        "p": p,
        "m": m,
        "top": v.classes().len(),
        "classes": v.classes().iter().map(|c| poly_to_json(c.poly())).collect::<Vec<_>>(),
    })
}

fn vector_from_json(v: &Value) -> Result<(u64, u32, FormalRing, ChernVector<FormalPoly>), Error> {
    let p = v["p"]
        .as_u64()
        .ok_or_else(|| Error::Parse("missing p".into()))?;
    let m = v["m"].as_u64().unwrap_or(1) as u32;
    let top = v["top"]
        .as_u64()
        .ok_or_else(|| Error::Parse("missing top".into()))? as usize;
    let pp = PrimePower::new(p, m)?;
    let ring = FormalRing::full(top, CoefficientSpec::Modular(pp));
    let classes = v["classes"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing classes".into()))?;
    if classes.len() != top {
        return Err(Error::Parse(format!(
            "expected {top} classes, got {}",
            classes.len()
        )));
    }
    let classes: Result<Vec<FormalPoly>, Error> = classes
        .iter()
        .map(|c| Ok(ring.wrap(poly_from_json(c, ring.nvars())?)))
        .collect();
    Ok((p, m, ring, ChernVector::new(classes?)))
}

/// Parses class expressions like "2*h1^2*h2 + h3 - 4".
fn parse_class(ring: &ToyChowRing, text: &str) -> Result<ToyChowClass, Error> {
    let mut acc = ring.zero();
    let mut rest = text.trim();
    let mut sign = BigInt::from(1);
    if let Some(stripped) = rest.strip_prefix('-') {
        sign = -sign;
        rest = stripped.trim_start();
    }
    loop {
        let end = rest
            .find(['+', '-'])
            .unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let mut coeff = sign.clone();
        let mut exps = vec![0u32; ring.nvars()];
        for factor in term.split('*') {
            let factor = factor.trim();
            if let Ok(k) = factor.parse::<BigInt>() {
                coeff *= k;
                continue;
            }
            let body = factor
                .strip_prefix('h')
                .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e),
                None => (body, "1"),
            };
            let i: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index in {factor:?}")))?;
            let e: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
            if i == 0 || i > ring.nvars() {
                return Err(Error::Parse(format!(
                    "generator h{i} outside ring with {} factors",
                    ring.nvars()
                )));
            }
            exps[i - 1] += e;
        }
        let mut term_poly = MPoly::zero(ring.nvars());
        term_poly.add_term(exps, coeff);
        acc = acc.add(&ring.wrap(term_poly));
        if tail.is_empty() {
            break;
        }
        sign = if tail.starts_with('-') {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        };
        rest = tail[1..].trim_start();
    }
    Ok(acc)
}

fn check_to_json(c: &CheckResult) -> Value {
    json!({"name": c.name, "pass": c.pass, "detail": c.detail})
}

struct Output {
    payload: Value,
    diagnostics: Vec<String>,
    /// A domain-level failure that should exit 1 even though the command
    /// itself ran (e.g. a failed verification sweep).
    failed: bool,
}

impl Output {
    fn ok(payload: Value, diagnostics: Vec<String>) -> Self {
        Output {
            payload,
            diagnostics,
            failed: false,
        }
    }
}

fn run(cmd: Cmd) -> Result<Output, Error> {
    match cmd {
        Cmd::Kappa { partition, oracle } => {
            let part = Partition::parse(&partition)?;
            let value = kappa_formula(&part)?;
            if oracle {
                let brute = kappa_bruteforce(&part)?;
                if brute != value {
                    return Err(Error::CertificateFailure(format!(
                        "closed form {value} disagrees with brute force {brute}"
                    )));
                }
            }
            Ok(Output::ok(
                json!({"partition": part.to_string(), "kappa": value.to_string(), "oracleChecked": oracle}),
                vec![format!("kappa({part}) = {value}")],
            ))
        }
        Cmd::Stch { d, p, express } => {
            PrimePower::new(p, 1)?;
            if d == 0 {
                return Err(Error::Parse("d must be positive".into()));
            }
            let witness = stch_decomposable(d, p);
            let mut payload = match witness {
                Some(k) => json!({"decomposable": true, "witness": k}),
                None => {
                    let (l, t) = l_power_form(d, p).expect("dichotomy");
                    json!({"decomposable": false, "form": {"l": l, "t": t}})
                }
            };
            let mut diags = vec![match witness {
                Some(k) => format!("c_{d} is decomposable mod {p} (witness k = {k})"),
                None => format!("c_{d} is not decomposable mod {p} (d = l*p^t)"),
            }];
            if express {
                let identity = express_cd_via_steenrod(d, p)?;
                let verified = identity.verify();
                payload["identity"] = json!({
                    "k": identity.k,
                    "alpha": identity.alpha,
                    "alphaInv": identity.alpha_inv,
                    "decomposableTerms": poly_to_json(identity.decomposable.poly()),
                    "verified": verified,
                });
                diags.push(format!(
                    "c_{d} = {}^-1 (P^{}(c_{}) - decomposable), verified: {verified}",
                    identity.alpha,
                    identity.k,
                    d - identity.k * (p - 1)
                ));
            }
            Ok(Output::ok(payload, diags))
        }
        Cmd::MiSearch { r, d, p } => {
            PrimePower::new(p, 1)?;
            let terms = mi_search(r, d, p)?;
            let comb = AdamsCombination::new(terms.clone(), 1);
            let payload = json!({
                "terms": terms,
                "sumAtR": comb.power_sum_mod(r, p),
                "sumAtD": comb.power_sum_mod(d, p),
            });
            Ok(Output::ok(
                payload,
                vec![format!("multipliers {terms:?} solve (r={r}, d={d}) mod {p}")],
            ))
        }
        Cmd::Adams {
            chern,
            multiset,
            reps,
        } => {
            let text = std::fs::read_to_string(&chern)
                .map_err(|e| Error::Parse(format!("{}: {e}", chern.display())))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", chern.display())))?;
            let (p, m, _ring, vector) = vector_from_json(&value)?;
            let terms: Result<Vec<u64>, _> = multiset
                .split(',')
                .map(|t| t.trim().parse::<u64>())
                .collect();
            let terms =
                terms.map_err(|_| Error::Parse(format!("bad multiset {multiset:?}")))?;
            let comb = AdamsCombination::new(terms, reps);
            let result = vector.adams_combination(&comb)?;
            let diags = (1..=result.classes().len())
                .map(|dg| format!("c_{dg} = {}", formal_to_string(&result.class(dg))))
                .collect();
            Ok(Output::ok(vector_to_json(p, m, &result), diags))
        }
        Cmd::Steenrod { partition, p, k } => {
            PrimePower::new(p, 1)?;
            let part = Partition::parse(&partition)?;
            let cap = k.map(|k| part.degree() + k * (p - 1));
            let mut support = steenrod_total_on_class(&part, p, cap);
            if let Some(cap) = cap {
                support.retain(|(mu, _)| mu.degree() == cap);
            }
            let payload: Vec<Value> = support
                .iter()
                .map(|(mu, c)| json!({"partition": mu.to_string(), "coeff": c}))
                .collect();
            let diags = support
                .iter()
                .map(|(mu, c)| format!("{c} * c_({mu})"))
                .collect();
            Ok(Output::ok(json!(payload), diags))
        }
        Cmd::Blowup {
            n,
            dim_cap,
            verify_all,
        } => {
            if n == 0 || n > 4 {
                return Err(Error::RangeExceeded(format!(
                    "ground size {n} outside supported range 1..=4"
                )));
            }
            let mc = main_construction(n, dim_cap)?;
            let mut payload = json!({
                "pullbacks": mc.pullbacks.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
                "b": mc.b.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
                "chernClassesMatch": mc.chern_identities.iter().all(|r| r.pass),
                "cappedTrailingZero": mc.capped_trailing_zero,
            });
            let mut diags = vec![format!(
                "main construction at N={n}: Chern classes match = {}",
                mc.pass()
            )];
            let mut failed = !mc.pass();
            if verify_all {
                let ring = ArrangementRing::new(n);
                let all = GoodFamily::enumerate_all(n);
                let mut pair_failures = 0usize;
                for u in &all {
                    for w in &all {
                        if !verify_per_ob(u, w, &ring)?.pass() {
                            pair_failures += 1;
                        }
                    }
                }
                let principals: Vec<GoodFamily> = (0..n)
                    .map(|i| GoodFamily::principal(n, 1 << i).unwrap())
                    .collect();
                let mfold = verify_lem_dva(&principals, &ring)?.pass();
                payload["sweep"] = json!({
                    "families": all.len(),
                    "pairFailures": pair_failures,
                    "principalCollectionPass": mfold,
                });
                diags.push(format!(
                    "identity sweep: {} families, {} pair failures, principal collection pass = {mfold}",
                    all.len(),
                    pair_failures
                ));
                failed = failed || pair_failures > 0 || !mfold;
            }
            Ok(Output {
                payload,
                diagnostics: diags,
                failed,
            })
        }
        Cmd::Schedule {
            r,
            p,
            m,
            dim,
            adams_only,
            apply,
        } => {
            if let Some(path) = apply {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let schedule: Schedule = serde_json::from_str(&text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let (_, v, ideal) =
                    formal_schedule_context(schedule.r, schedule.p, schedule.m, schedule.dim)?;
                let (final_v, report) = apply_schedule(&v, &schedule, &ideal)?;
                let diags = report
                    .entries
                    .iter()
                    .map(|e| {
                        format!(
                            "degree {}: {} move, in ideal = {}",
                            e.degree, e.move_kind, e.in_ideal
                        )
                    })
                    .chain(std::iter::once(format!(
                        "c_{} preserved = {}",
                        schedule.r, report.c_r_preserved
                    )))
                    .collect();
                Ok(Output::ok(
                    json!({
                        "report": serde_json::to_value(&report).unwrap(),
                        "finalVector": vector_to_json(
                            schedule.p,
                            schedule.m,
                            &final_v
                        ),
                    }),
                    diags,
                ))
            } else {
                let mode = if adams_only {
                    ScheduleMode::AdamsOnly
                } else {
                    ScheduleMode::Full
                };
                let schedule = annihilate_schedule(r, p, m, dim, mode)?;
                let diags = schedule
                    .moves
                    .iter()
                    .map(|mv| format!("degree {}: {:?}", mv.degree, mv.kind))
                    .collect();
                Ok(Output::ok(serde_json::to_value(&schedule).unwrap(), diags))
            }
        }
        Cmd::Toy {
            ring,
            p,
            m,
            trivial,
            steenrod,
            pair,
            padic,
            lines,
            depth,
        } => {
            let coeffs = match p {
                Some(p) => CoefficientSpec::Modular(PrimePower::new(p, m.unwrap_or(1))?),
                None => CoefficientSpec::Integers,
            };
            let actions = [
                trivial.is_some(),
                steenrod.is_some(),
                pair.is_some(),
                padic.is_some(),
                lines.is_some(),
            ]
            .iter()
            .filter(|&&x| x)
            .count();
            if actions != 1 {
                // usage-level problem, surfaced through the parse error code
                return Err(Error::Parse(
                    "exactly one of --trivial, --steenrod, --pair, --padic, --lines is required"
                        .into(),
                ));
            }
            if let Some(expr) = trivial {
                let ring = ToyChowRing::parse(&ring, coeffs)?;
                let class = parse_class(&ring, &expr)?;
                let verdict = is_num_trivial(&class);
                return Ok(Output::ok(
                    json!({"class": class.to_string(), "numericallyTrivial": verdict}),
                    vec![format!("{class} numerically trivial: {verdict}")],
                ));
            }
            if let Some(expr) = steenrod {
                let p = p.ok_or_else(|| Error::Parse("--steenrod needs --p".into()))?;
                let ring = ToyChowRing::parse(&ring, coeffs)?;
                let class = parse_class(&ring, &expr)?;
                let image = steenrod_total_on_ring(&class, p)?;
                return Ok(Output::ok(
                    json!({"image": image.to_string(), "poly": poly_to_json(image.poly())}),
                    vec![format!("P_tot({class}) = {image}")],
                ));
            }
            if let Some(exprs) = pair {
                let ring = ToyChowRing::parse(&ring, coeffs)?;
                let a = parse_class(&ring, &exprs[0])?;
                let b = parse_class(&ring, &exprs[1])?;
                let r = a.homogeneous_degree().ok_or_else(|| {
                    Error::DegreeMismatch("first pairing argument is not homogeneous".into())
                })?;
                let value = degree_pairing(&a, &b, r)?;
                return Ok(Output::ok(
                    json!({"value": value.to_string()}),
                    vec![format!("<{a}, {b}> = {value}")],
                ));
            }
            if let Some(expr) = padic {
                let p = p.ok_or_else(|| Error::Parse("--padic needs --p".into()))?;
                let ring = ToyChowRing::parse(&ring, CoefficientSpec::Integers)?;
                let class = parse_class(&ring, &expr)?;
                let verdicts = num_trivial_p_adic(&class, p, depth)?;
                return Ok(Output::ok(
                    json!({"verdicts": verdicts}),
                    verdicts
                        .iter()
                        .enumerate()
                        .map(|(i, v)| format!("mod {p}^{}: trivial = {v}", i + 1))
                        .collect(),
                ));
            }
            let expr = lines.expect("action counted above");
            let ring = ToyChowRing::parse(&ring, coeffs)?;
            let classes: Result<Vec<ToyChowClass>, Error> = expr
                .split(';')
                .map(|t| parse_class(&ring, t))
                .collect();
            let v = chern_of_line_sum(&ring, &classes?)?;
            let diags = (1..=v.classes().len())
                .map(|d| format!("c_{d} = {}", v.class(d)))
                .collect();
            let payload: Vec<Value> = v
                .classes()
                .iter()
                .map(|c| json!({"class": c.to_string(), "poly": poly_to_json(c.poly())}))
                .collect();
            Ok(Output::ok(json!(payload), diags))
        }
        Cmd::Verify { suite: which } => {
            let checks: Vec<CheckResult> = if which == "all" {
                SUITE_NAMES
                    .iter()
                    .flat_map(|n| suite(n).unwrap())
                    .collect()
            } else {
                suite(&which).ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown suite {which:?}; expected one of {SUITE_NAMES:?} or \"all\""
                    ))
                })?
            };
            let all_pass = checks.iter().all(|c| c.pass);
            let diags = checks
                .iter()
                .map(|c| {
                    format!(
                        "{} — {} ({})",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.detail
                    )
                })
                .collect();
            Ok(Output {
                payload: json!(checks.iter().map(check_to_json).collect::<Vec<_>>()),
                diagnostics: diags,
                failed: !all_pass,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap uses exit code 2 for usage errors and 0 for --help
            e.exit();
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.payload).unwrap());
            } else {
                for line in &out.diagnostics {
                    println!("{line}");
                }
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let payload = json!({
                "status": "error",
                "code": e.code(),
                "message": e.to_string(),
            });
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            ExitCode::from(1)
        }
    }
}
