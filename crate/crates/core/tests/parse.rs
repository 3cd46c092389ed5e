use a3d_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gen_letter(rng: &mut ChaCha8Rng) -> String {
    let t = if rng.gen_bool(0.4) { "'" } else { "" };
    format!("x{}{t}", rng.gen_range(1..=3))
}

fn gen_word(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(1..=3);
    let parts: Vec<String> = (0..n)
        .map(|_| {
            let l = gen_letter(rng);
            if rng.gen_bool(0.3) {
                format!("{l}^{}", rng.gen_range(1..=3))
            } else {
                l
            }
        })
        .collect();
    parts.join(if rng.gen_bool(0.5) { " " } else { "*" })
}

fn gen_nc(rng: &mut ChaCha8Rng, depth: usize) -> String {
    let n = rng.gen_range(1..=3);
    let mut s = String::new();
    for i in 0..n {
        let op = if rng.gen_bool(0.5) { "+" } else { "-" };
        if i > 0 || rng.gen_bool(0.3) {
            s.push_str(&format!(" {op} "));
        }
        if rng.gen_bool(0.3) {
            s.push_str(&format!("{}*", rng.gen_range(2..=9)));
        }
        let atom = match rng.gen_range(0..4) {
            0 if depth > 0 => format!("bar({})", gen_nc(rng, depth - 1)),
            1 if depth > 0 => format!("({})^{}", gen_nc(rng, depth - 1), rng.gen_range(1..=2)),
            2 if depth > 0 => format!("({})'", gen_nc(rng, depth - 1)),
            _ => gen_word(rng),
        };
        s.push_str(&atom);
        if rng.gen_bool(0.1) {
            s.push_str("/2");
        }
    }
    s
}

fn gen_sigma(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(1..=3);
    let mut s = String::new();
    for i in 0..n {
        if i > 0 {
            s.push_str(if rng.gen_bool(0.5) { " + " } else { " - " });
        }
        let k = rng.gen_range(1..=2);
        let factors: Vec<String> = (0..k)
            .map(|_| match rng.gen_range(0..4) {
                0 => format!("tr({})", gen_nc(rng, 1)),
                1 => format!("s2({})", gen_word(rng)),
                2 => format!("s3({})", gen_word(rng)),
                _ => format!("st({}, {})", rng.gen_range(1..=5), gen_word(rng)),
            })
            .collect();
        if rng.gen_bool(0.3) {
            s.push_str(&format!("{} ", rng.gen_range(2..=5)));
        }
        s.push_str(&factors.join(" * "));
    }
    s
}

fn round_trip<F: Field>(seed: u64, n: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n {
        let text = if rng.gen_bool(0.5) { gen_nc(&mut rng, 2) } else { gen_sigma(&mut rng) };
        let e = parse_expr::<F>(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
        let shown = e.to_string();
        let back = match &e {
            Expr::Nc(_) => Expr::Nc(parse_nc::<F>(&shown).unwrap_or_else(|err| panic!("{shown}: {err}"))),
            Expr::Sigma(_) => Expr::Sigma(parse_sigma::<F>(&shown).unwrap_or_else(|err| panic!("{shown}: {err}"))),
        };
        assert_eq!(back, e, "{text} -> {shown}");
        assert_eq!(back.to_string(), shown);
    }
}

#[test]
fn round_trip_generated_expressions() {
    round_trip::<F3>(1, 200);
    round_trip::<F7>(2, 150);
    round_trip::<Q>(3, 150);
}

#[test]
fn spec_examples() {
    let w: NcPoly<F3> = parse_nc("x1^2 * x2'").unwrap();
    assert_eq!(w.as_word().unwrap().to_string(), "x1^2*x2'");
    assert!(parse_sigma::<F3>("tr(x1*x2) - tr(x2*x1)").unwrap().is_zero());
    assert_eq!(parse_nc::<F3>("bar(x1)^3").unwrap().len(), 8);
    let s = parse_sigma::<F3>("tr(x1^2 * bar(x1)^2 * x1 * bar(x1))").unwrap();
    assert_eq!(s.multidegree(1), Some(Multidegree::new(vec![6])));
}

#[test]
fn word_grammar_is_shared() {
    for text in ["x1 x2' x1", "x3^2*x1'", "x1x2"] {
        let w: Word = text.parse().unwrap();
        assert_eq!(parse_nc::<F7>(text).unwrap(), NcPoly::word(w));
    }
}

#[test]
fn kinds_are_enforced() {
    assert!(matches!(parse_nc::<F3>("tr(x1)"), Err(Error::Parse { .. })));
    assert!(matches!(parse_sigma::<F3>("x1 x2"), Err(Error::Parse { .. })));
    assert!(matches!(parse_expr::<F3>("tr(x1)'"), Err(Error::Parse { pos: 6, .. })));
    assert!(matches!(parse_expr::<F3>("tr(tr(x1))"), Err(Error::Parse { pos: 3, .. })));
    assert!(matches!(parse_expr::<F3>("st(2 x1)"), Err(Error::Parse { pos: 5, .. })));
}
