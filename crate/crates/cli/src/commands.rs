use a3d_core::a3d::{witness_ad, A3d};
use a3d_core::checks::run_suite;
use a3d_core::field::embed;
use a3d_core::oracle::{Oracle, OracleConfig};
use a3d_core::sigma::{build_sigma_tr, substitute_poly_args};
use a3d_core::{
    parse_nc, parse_sigma, CoeffField, Error, FLarge, Field, FiniteField, Gf11, Gf13, Gf3, Gf5, Gf7, Multidegree,
    NcPoly, PrimeField, SigmaPoly, Word, F11, F13, F3, F5, F7, Q,
};
use serde_json::{json, Value};

use crate::report::{Output, EXIT_FAILED_CHECK, EXIT_PRECONDITION};
use crate::{Cli, Command};

type Res = Result<Output, Error>;

/// Calls `$body` with `$f` the exact field of the requested characteristic,
/// `$p` the prime field σ-expressions are read over and `$e` the field the
/// oracle samples from.
macro_rules! dispatch {
    ($c:expr, |$f:ident, $p:ident, $e:ident| $body:expr) => {
        match $c {
            3 => {
                #[allow(dead_code)]
                type $f = F3;
                #[allow(dead_code)]
                type $p = F3;
                #[allow(dead_code)]
                type $e = Gf3;
                $body
            }
            5 => {
                #[allow(dead_code)]
                type $f = F5;
                #[allow(dead_code)]
                type $p = F5;
                #[allow(dead_code)]
                type $e = Gf5;
                $body
            }
            7 => {
                #[allow(dead_code)]
                type $f = F7;
                #[allow(dead_code)]
                type $p = F7;
                #[allow(dead_code)]
                type $e = Gf7;
                $body
            }
            11 => {
                #[allow(dead_code)]
                type $f = F11;
                #[allow(dead_code)]
                type $p = F11;
                #[allow(dead_code)]
                type $e = Gf11;
                $body
            }
            13 => {
                #[allow(dead_code)]
                type $f = F13;
                #[allow(dead_code)]
                type $p = F13;
                #[allow(dead_code)]
                type $e = Gf13;
                $body
            }
            0 => {
                #[allow(dead_code)]
                type $f = Q;
                #[allow(dead_code)]
                type $p = FLarge;
                #[allow(dead_code)]
                type $e = FLarge;
                $body
            }
            2147483647 => {
                #[allow(dead_code)]
                type $f = FLarge;
                #[allow(dead_code)]
                type $p = FLarge;
                #[allow(dead_code)]
                type $e = FLarge;
                $body
            }
            c => Err(match CoeffField::from_characteristic(c) {
                Err(e) => e,
                Ok(_) => Error::UnsupportedCharacteristic(c),
            }),
        }
    };
}

pub fn run(cli: &Cli) -> Res {
    if cli.characteristic == 2 {
        return Err(Error::CharacteristicTwo);
    }
    match &cli.command {
        Command::Check { suite } => check(suite, cli.seed),
        Command::Dmax { .. } | Command::Sigma { .. } => dispatch!(cli.characteristic, |F, P, E| oracle::<P, E>(cli)),
        _ => dispatch!(cli.characteristic, |F, P, E| engine::<F>(cli)),
    }
}

/// The expression argument, for pointing at syntax errors.
pub fn expression_text(cli: &Cli) -> Option<&str> {
    match &cli.command {
        Command::Iszero { expr } => Some(expr),
        Command::Sigma { expr, .. } => expr.as_deref(),
        _ => None,
    }
}

fn engine_for<F: Field>(cli: &Cli, d: usize) -> A3d<F> {
    let e = A3d::new(d);
    match &cli.cache_dir {
        Some(dir) => e.with_cache_dir(dir),
        None => e,
    }
}

fn check_d(d: usize) -> Result<usize, Error> {
    if d == 0 {
        return Err(Error::Precondition("--d must be at least 1".into()));
    }
    Ok(d)
}

fn engine<F: Field>(cli: &Cli) -> Res {
    let field = F::descriptor().to_string();
    match &cli.command {
        Command::Dims { mdeg, maxdeg } => {
            let deltas: Vec<Multidegree> = match (mdeg, maxdeg) {
                (Some(m), None) => {
                    let m: Multidegree = m.parse()?;
                    if let Some(d) = cli.d.filter(|&d| d != m.d()) {
                        return Err(Error::InvalidMultidegree(format!("{m} has {} entries but --d is {d}", m.d())));
                    }
                    vec![m]
                }
                (None, Some(k)) => {
                    let d = check_d(cli.d.unwrap_or(1))?;
                    (1..=*k).flat_map(|s| Multidegree::compositions(d, s)).collect()
                }
                _ => return Err(Error::Precondition("give exactly one of --mdeg and --maxdeg".into())),
            };
            let d = check_d(deltas.first().map_or(cli.d.unwrap_or(1), Multidegree::d))?;
            let e = engine_for::<F>(cli, d);
            let mut rows = Vec::new();
            for delta in &deltas {
                let r = e.report(delta)?;
                rows.push(vec![
                    json!(delta.to_string()),
                    json!(r.ambient.to_string()),
                    json!(r.rank.to_string()),
                    json!(r.quotient),
                ]);
            }
            Ok(Output::new()
                .head("field", field)
                .head("d", d)
                .table(vec!["multidegree", "ambient", "rank", "quotient"], rows))
        }
        Command::Iszero { expr } => {
            let f: NcPoly<F> = parse_nc(expr)?;
            let d = check_d(cli.d.unwrap_or(f.max_index()))?;
            let zero = engine_for::<F>(cli, d).is_zero(&f)?;
            Ok(Output::new().head("field", field).head("d", d).result(if zero { "zero" } else { "nonzero" }))
        }
        Command::Nildeg { cap } => {
            let d = check_d(cli.d.unwrap_or(1))?;
            let s = engine_for::<F>(cli, d).nilpotency_degree(*cap)?;
            Ok(Output::new().head("field", field).head("d", d).head("cap", *cap).result(s))
        }
        Command::Witness { iszero } => {
            let d = check_d(cli.d.unwrap_or(1))?;
            let f: NcPoly<F> = witness_ad(d);
            let delta = f.multidegree(d).ok_or(Error::NotHomogeneous)?;
            let out = Output::new()
                .head("field", field)
                .head("d", d)
                .head("degree", delta.total())
                .head("multidegree", delta.to_string())
                .head("terms", f.len());
            if *iszero {
                let zero = engine_for::<F>(cli, d).is_zero(&f)?;
                Ok(out.head("witness", f.to_string()).result(if zero { "zero" } else { "nonzero" }))
            } else {
                Ok(out.result(f.to_string()))
            }
        }
        Command::Hypothesis { force } => hypothesis::<F>(cli, *force),
        _ => unreachable!("dispatched elsewhere"),
    }
}

fn hypothesis<F: Field>(cli: &Cli, force: bool) -> Res {
    let x = |i: usize| -> NcPoly<F> { NcPoly::word(Word::from_codes(&[2 * (i as u8 - 1)])) };
    let w = |i: usize, j: usize| x(i).pow(2).product(&x(j).pow(2)).product(&x(i)).product(&x(j));
    let f = x(1).pow(2).product(&w(2, 3)).product(&x(1)).product(&w(4, 5)).product(&w(6, 7));
    let delta = f.multidegree(7).ok_or(Error::NotHomogeneous)?;
    let below: u128 = (0..7).filter_map(|i| delta.minus_unit(i + 1)).map(|m| m.word_count()).sum();
    let out = Output::new()
        .head("field", F::descriptor().to_string())
        .head("d", 7)
        .head("expression", f.to_string())
        .head("multidegree", delta.to_string())
        .head("ambient_words", delta.word_count().to_string())
        .head("words_one_degree_below", below.to_string());
    if !force {
        let mut out = out.result("refused: the component is far beyond exact elimination; pass --force to run anyway");
        out.status = EXIT_PRECONDITION;
        return Ok(out);
    }
    let zero = engine_for::<F>(cli, 7).is_zero(&f)?;
    Ok(out.result(if zero { "zero" } else { "nonzero" }))
}

fn oracle<P: PrimeField, E: FiniteField>(cli: &Cli) -> Res {
    let cfg = OracleConfig { seed: cli.seed, samples: cli.samples, ..OracleConfig::default() };
    match &cli.command {
        Command::Dmax { cap } => {
            let d = check_d(cli.d.unwrap_or(1))?;
            let rep = Oracle::<E>::new(d, cfg)?.dmax_scan(*cap)?;
            let rows = rep
                .per_degree
                .iter()
                .map(|v| vec![json!(v.degree), json!(v.generators), json!(v.indecomposable)])
                .collect();
            Ok(Output::new()
                .head("field", rep.field.clone())
                .head("d", d)
                .head("cap", *cap)
                .head("seed", cli.seed)
                .head("error_bound", rep.error_bound)
                .table(vec!["degree", "minimal_generators", "indecomposable"], rows)
                .result(rep.dmax.map_or(Value::from("none"), Value::from)))
        }
        Command::Sigma { t, r, args, expr, decide } => {
            let f: SigmaPoly<P> = match (t, r, expr) {
                (Some(t), Some(r), None) => {
                    let f = build_sigma_tr::<P>(*t, *r);
                    match args {
                        Some(a) => {
                            let polys = a.split(',').map(parse_nc::<P>).collect::<Result<Vec<_>, _>>()?;
                            if polys.len() != 3 {
                                return Err(Error::Arity { kind: "σ_{t,r}", expected: 3, got: polys.len() });
                            }
                            substitute_poly_args(&f, &polys)?
                        }
                        None => f,
                    }
                }
                (None, None, Some(e)) => parse_sigma(e)?,
                _ => return Err(Error::Precondition("give --t and --r, or --expr".into())),
            };
            let out = Output::new().head("field", P::descriptor().to_string()).head("terms", f.len());
            if !decide {
                return Ok(out.result(f.to_string()));
            }
            let d = check_d(cli.d.unwrap_or(f.max_index()))?;
            let delta = f.multidegree(d).ok_or(Error::NotHomogeneous)?;
            let target: SigmaPoly<E> = f.map_coeffs(embed::<P, E>);
            let v = Oracle::<E>::new(d, cfg)?.decomposable(&target, &delta)?;
            Ok(out
                .head("expression", f.to_string())
                .head("multidegree", v.delta.clone())
                .head("oracle_field", v.field.clone())
                .head("seed", cli.seed)
                .head("samples", v.samples)
                .head("rank", v.rank)
                .head("error_bound", v.error_bound)
                .result(if v.verdict { "decomposable" } else { "indecomposable" }))
        }
        _ => unreachable!("dispatched elsewhere"),
    }
}

fn check(suite: &str, seed: u64) -> Res {
    let reports = run_suite(suite, seed)?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let rows = reports
        .iter()
        .map(|r| vec![json!(r.suite), json!(r.name), json!(r.cases), json!(r.failures), json!(r.examples.join("; "))])
        .collect();
    let mut out = Output::new()
        .head("seed", seed)
        .table(vec!["suite", "check", "cases", "failures", "examples"], rows)
        .result(if failed == 0 { "passed".to_string() } else { format!("{failed} checks failed") });
    if failed > 0 {
        out.status = EXIT_FAILED_CHECK;
    }
    Ok(out)
}
