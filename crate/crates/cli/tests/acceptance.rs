//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic only.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;

use serde_json::Value;
use strata_core::dr::{dr_cycle, dr_eval, graph_coefficient, weighting_count, DrInput, DrResult};
use strata_core::json::element_from_value;
use strata_core::{
    convert, convert_element, enumerate_graphs, gp_mul_strata, pushforward_psi_forget, AlgebraElement, Context,
    DecoratedStratum, Graph, Mode, Rational, TautExpr,
};
use strata_oracles::algebra::bare_partitions;
use strata_oracles::dr::{coefficient, weightings};
use strata_oracles::graphs::{aut, Plain};
use strata_oracles::lagrange_at_zero;
use strata_oracles::rewrite::forget_vertex;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

fn point(g: u32, n: usize, leg_psi: Vec<u32>, kappa: Vec<u32>) -> DecoratedStratum {
    DecoratedStratum::new(Graph::unit(Some(g), n), vec![], leg_psi, vec![kappa]).unwrap()
}

fn basis(g: Option<u32>, n: usize, max_d: usize) -> Vec<Graph> {
    let mode = if g.is_some() { Mode::Labeled } else { Mode::GenusFree };
    (0..=max_d)
        .flat_map(|d| enumerate_graphs(n, d, g, mode, None).unwrap().iter().map(|c| c.graph().clone()).collect::<Vec<_>>())
        .collect()
}

fn class(g: &Graph) -> AlgebraElement {
    AlgebraElement::class(g).unwrap()
}

fn mul(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    if x.context().mode == Mode::Labeled {
        x.mul(y).unwrap()
    } else {
        x.mul_genus_free(y).unwrap()
    }
}

const LAW_CONTEXTS: [(Option<u32>, usize); 5] = [(Some(1), 1), (Some(1), 2), (Some(2), 0), (None, 1), (None, 2)];

fn criterion_1() -> Outcome {
    let graph = Graph::labeled(vec![1, 0], vec![(0, 1)], vec![1, 0]).unwrap();
    let minus_psi = TautExpr::from_terms(1, 2, [(point(1, 2, vec![1, 0], vec![]), q(-1, 1))]).unwrap();
    ensure(convert(&graph).unwrap() == minus_psi, || "leaf-by-leg example is not -ψ_1".into())?;
    let gf = Graph::genus_free(2, vec![(0, 1)], vec![0]).unwrap();
    let expr = convert_element(&class(&gf).expand_genus_free(1).unwrap()).unwrap();
    let expected = TautExpr::from_terms(
        1,
        1,
        [(point(1, 1, vec![0], vec![1]), q(1, 1)), (point(1, 1, vec![1], vec![]), q(-1, 1))],
    )
    .unwrap();
    ensure(expr == expected, || "genus-one leaf example is not κ₁ - ψ₁".into())?;
    Ok("-ψ_1 and κ₁ - ψ₁ reproduced".into())
}

fn criterion_2() -> Outcome {
    let mut triples = 0;
    for (g, n) in LAW_CONTEXTS {
        let b = basis(g, n, 2);
        let cs: Vec<AlgebraElement> = b.iter().map(class).collect();
        for i in 0..b.len() {
            for j in 0..b.len() {
                if b[i].d() + b[j].d() > 2 {
                    continue;
                }
                let xy = mul(&cs[i], &cs[j]);
                ensure(xy == mul(&cs[j], &cs[i]), || format!("not commutative: {:?} {:?}", b[i], b[j]))?;
                for k in 0..b.len() {
                    if b[i].d() + b[j].d() + b[k].d() <= 2 {
                        ensure(mul(&xy, &cs[k]) == mul(&cs[i], &mul(&cs[j], &cs[k])), || {
                            format!("not associative: {:?} {:?} {:?}", b[i], b[j], b[k])
                        })?;
                        triples += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{triples} triples commute and associate"))
}

fn criterion_3() -> Outcome {
    let mut coeffs = 0;
    for (g, n) in LAW_CONTEXTS {
        let b = basis(g, n, 2);
        for x in &b {
            for y in &b {
                if x.d() + y.d() > 2 {
                    continue;
                }
                let p = mul(&class(x), &class(y));
                ensure(class(x).mul_rescaled(&class(y)).unwrap() == p, || format!("rescaled law differs: {x:?} {y:?}"))?;
                let (px, py) = (Plain::of(x), Plain::of(y));
                for (cf, c) in p.terms() {
                    let pg = Plain::of(cf.graph());
                    let lhs = c * Rational::from_integer(aut(&pg).into());
                    let rhs = Rational::from_integer((aut(&px) * aut(&py) * bare_partitions(&pg, &px, &py)).into());
                    ensure(lhs == rhs, || format!("|Aut| identity fails at {:?}", cf.graph()))?;
                    coeffs += 1;
                }
            }
        }
    }
    Ok(format!("{coeffs} coefficients satisfy |Aut Γ|·coeff = |Aut Γ1|·|Aut Γ2|·c'"))
}

fn criterion_4() -> Outcome {
    let (mut pairs, mut excess) = (0, 0);
    for (g, n) in [(1u32, 2usize), (2, 0)] {
        let stable: Vec<Graph> = basis(Some(g), n, 1).into_iter().filter(|x| x.d() == 1 && x.is_stable()).collect();
        for x in &stable {
            for y in &stable {
                let lhs = convert_element(&class(x).mul(&class(y)).unwrap()).unwrap();
                let rhs = gp_mul_strata(x, y).unwrap();
                ensure(lhs == rhs, || format!("product and excess formula differ on {x:?} {y:?}"))?;
                if x == y && rhs.terms().any(|(s, _)| !s.is_undecorated()) {
                    excess += 1;
                }
                pairs += 1;
            }
        }
    }
    ensure(excess > 0, || "no self-intersection carried the excess factor".into())?;
    Ok(format!("{pairs} pairs agree term by term, {excess} self-intersections with excess ψ terms"))
}

fn monomials(k: usize, max: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in monomials(k - 1, max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut graphs = 0;
    for (g, n) in [(1u32, 2usize), (1, 3), (2, 1), (2, 2)] {
        for graph in basis(Some(g), n, 2) {
            let direct = convert(&graph).unwrap().mul_psi(n).unwrap().forget_pushforward(n).unwrap();
            let via = convert_element(&pushforward_psi_forget(&graph).unwrap()).unwrap();
            ensure(direct == via, || format!("pushforward mismatch on {graph:?}"))?;
            let up = class(&graph).pullback_forget().unwrap();
            let lhs = convert_element(&up).unwrap().mul_psi(n + 1).unwrap().forget_pushforward(n + 1).unwrap();
            let rhs = convert(&graph).unwrap().scale(&q(2 * g as i64 - 2 + n as i64, 1));
            ensure(lhs == rhs, || format!("pullback dilaton mismatch on {graph:?}"))?;
            graphs += 1;
        }
    }
    ensure(graphs >= 10, || format!("only {graphs} graphs sampled"))?;
    let mut monos = 0;
    for (g, n) in [(0u32, 4usize), (0, 5), (1, 2), (1, 3), (2, 1), (2, 2)] {
        for mono in monomials(n, 4) {
            let e = TautExpr::from_terms(g, n, [(point(g, n, mono.clone(), vec![]), q(1, 1))]).unwrap();
            let got = e.forget_pushforward(n).unwrap();
            let mut retained = mono.clone();
            let psi_m = retained.pop().unwrap();
            let expected = TautExpr::from_terms(
                g,
                n - 1,
                forget_vertex(g, psi_m, &retained, &[]).into_iter().map(|((p, k), c)| (point(g, n - 1, p, k), c)),
            )
            .unwrap();
            ensure(got == expected, || format!("rewrite mismatch g={g} n={n} {mono:?}"))?;
            let chi = q(2 * g as i64 - 2 + n as i64 - 1, 1);
            if psi_m == 1 {
                let dilaton = TautExpr::from_terms(g, n - 1, [(point(g, n - 1, retained.clone(), vec![]), chi)]).unwrap();
                ensure(got == dilaton, || format!("dilaton fails g={g} n={n} {mono:?}"))?;
            }
            if psi_m == 0 {
                let mut string = TautExpr::zero(g, n - 1).unwrap();
                for j in 0..n - 1 {
                    if retained[j] > 0 {
                        let mut low = retained.clone();
                        low[j] -= 1;
                        string = string
                            .add(&TautExpr::from_terms(g, n - 1, [(point(g, n - 1, low, vec![]), q(1, 1))]).unwrap())
                            .unwrap();
                    }
                }
                ensure(got == string, || format!("string fails g={g} n={n} {mono:?}"))?;
            }
            monos += 1;
        }
    }
    Ok(format!("{graphs} graphs checked for pushforward and pullback, {monos} monomials for string/dilaton"))
}

fn criterion_6() -> Outcome {
    for (g, a) in [(1u32, vec![0i64]), (1, vec![1, -1]), (2, vec![3, -2, -1]), (0, vec![1, 1, -2]), (2, vec![])] {
        for r in [3u64, 5, 7] {
            let e = dr_eval(&DrInput::new(g, a.clone(), 0, 0), r).unwrap();
            ensure(e == AlgebraElement::unit(Context::genus_free(a.len(), Some(g))), || format!("d=0 not the unit for {a:?}"))?;
        }
    }
    let mut graphs = 0;
    for (n, a) in [(1usize, vec![0i64]), (2, vec![1, -1]), (3, vec![2, 1, -3])] {
        for graph in basis(None, n, 2) {
            for r in [3u64, 5, 7] {
                let brute = weightings(&Plain::of(&graph), &a, r).len() as u64;
                let fast = weighting_count(&graph, &a, r).unwrap();
                ensure(brute == r.pow(graph.h1()) && fast == brute.into(), || format!("count mismatch {graph:?} r={r}"))?;
            }
            graphs += 1;
        }
    }
    Ok(format!("unit at d=0; r^h1 weightings on {graphs} graphs"))
}

fn golden(name: &str) -> (Value, AlgebraElement) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let element = element_from_value(doc["element"].clone()).unwrap();
    (doc, element)
}

fn criterion_7() -> Outcome {
    let lp = Graph::genus_free(1, vec![(0, 0)], vec![0]).unwrap();
    let expected =
        AlgebraElement::from_terms(Context::genus_free(1, Some(1)), [(lp.clone(), q(-1, 24))]).unwrap();
    ensure(dr_cycle(1, &[0]).unwrap().element == expected, || "dr_cycle(1,(0)) differs".into())?;
    let closed: Vec<(i64, Rational)> = [3i64, 5, 7].iter().map(|&r| (r, q(r * r - 1, 12))).collect();
    let brute: Vec<(i64, Rational)> = [3i64, 5, 7].iter().map(|&r| (r, coefficient(&Plain::of(&lp), &[0], r as u64))).collect();
    ensure(closed == brute, || "brute-force loop sums differ from (r²-1)/12".into())?;
    ensure(lagrange_at_zero(&closed) / Rational::from_integer(2.into()) == q(-1, 24), || "closed form".into())?;
    for (g, file) in [(1u32, "dr_cycle_g1_a1_-1.json"), (2, "dr_cycle_g2_a1_-1.json")] {
        let (doc, element) = golden(file);
        let raw_terms = doc["element"]["terms"].as_array().unwrap().len();
        ensure(element.len() == raw_terms, || format!("{file}: golden terms merged on parsing"))?;
        ensure(dr_cycle(g, &[1, -1]).unwrap().element == element, || format!("dr_cycle({g},(1,-1)) differs from {file}"))?;
    }
    Ok("-1/24 loop term, both golden files matched".into())
}

/// Lagrange value at `x` of the polynomial through `points`.
fn lagrange_at(points: &[(i64, Rational)], x: i64) -> Rational {
    let shifted: Vec<(i64, Rational)> = points.iter().map(|(r, y)| (r - x, y.clone())).collect();
    lagrange_at_zero(&shifted)
}

fn check_polynomial(res: &DrResult, a: &[i64], d: usize) -> Result<usize, String> {
    let mut count = 0;
    for (cf, _) in res.element.terms() {
        let samples: Vec<(i64, Rational)> = res
            .r_samples
            .iter()
            .map(|&r| (r as i64, graph_coefficient(cf.graph(), a, r).unwrap()))
            .collect();
        let fit = &samples[..2 * d + 1];
        for (r, y) in &samples[2 * d + 1..] {
            ensure(&lagrange_at(fit, *r) == y, || format!("degree-{} fit misses r={r} on {:?}", 2 * d, cf.graph()))?;
        }
        count += 1;
    }
    Ok(count)
}

fn criterion_8() -> Outcome {
    let mut coeffs = 0;
    for (g, a) in [(1u32, vec![0i64]), (1, vec![1, -1]), (2, vec![1, -1])] {
        let res = dr_cycle(g, &a).unwrap();
        coeffs += check_polynomial(&res, &a, g as usize)?;
    }
    let one = dr_cycle(1, &[1, -1]).unwrap().element;
    let two = dr_cycle(1, &[2, -2]).unwrap().element;
    let zero = dr_cycle(1, &[0, 0]).unwrap().element;
    let four = Rational::from_integer(4.into());
    // true for a polynomial P(a) = a²Q + P(0): P(2) - 4P(1) = -3P(0)
    let shifted = two.sub(&one.scale(&four)).unwrap() == zero.scale(&Rational::from_integer((-3).into()));
    ensure(shifted, || "dr_cycle(1,(2,-2)) - 4 dr_cycle(1,(1,-1)) is not -3 dr_cycle(1,(0,0))".into())?;
    ensure(two == one.scale(&four), || {
        format!(
            "polynomiality holds on {coeffs} coefficients, but dr_cycle(1,(2,-2)) != 4·dr_cycle(1,(1,-1)): \
             the loop coefficient is -1/24 for every a (so the right side has -1/6), since dr_cycle(1,(0,0)) = {} is nonzero",
            describe(&zero)
        )
    })?;
    Ok(format!("{coeffs} coefficients reproduce held-out moduli; homogeneity holds"))
}

fn describe(e: &AlgebraElement) -> String {
    e.terms().map(|(cf, c)| format!("{c}·{:?}", cf.graph().edges())).collect::<Vec<_>>().join(" + ")
}

fn strata(args: &[&str], stdin: Option<&str>, cache: Option<&Path>) -> (Vec<u8>, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_strata"));
    cmd.args(args).env_remove("STRATA_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.arg("--cache-dir").arg(dir);
    }
    cmd.stdin(std::process::Stdio::piped()).stdout(std::process::Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    {
        use std::io::Write;
        let mut pipe = child.stdin.take().unwrap();
        pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_9() -> Outcome {
    let loop_leg = r#"{"vertices":[{"genus":0}],"edges":[[0,0]],"legs":[0]}"#;
    let edge = r#"{"vertices":[{"genus":1},{"genus":1}],"edges":[[0,1]],"legs":[]}"#;
    let requests: Vec<(Vec<&str>, Option<String>)> = vec![
        (vec!["dr", "cycle", "--g", "2", "--a", "1,-1"], None),
        (vec!["dr", "relation", "--g", "1", "--a", "2,-2", "--d", "2"], None),
        (vec!["graphs", "enumerate", "--n", "2", "--d", "2", "--g", "1"], None),
        (vec!["algebra", "mul"], Some(format!("[{loop_leg},{loop_leg}]"))),
        (vec!["taut", "gp-mul"], Some(format!("[{edge},{edge}]"))),
        (vec!["taut", "convert", "--g", "1"], Some(r#"{"vertices":[{"genus":null},{"genus":null}],"edges":[[0,1]],"legs":[0]}"#.into())),
        (vec!["dr", "cycle", "--g", "1", "--a", "1,1"], None),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (args, input) in &requests {
        let input = input.as_deref();
        let (reference, code) = strata(&[args.as_slice(), &["--jobs", "1"]].concat(), input, None);
        ensure(!reference.is_empty(), || format!("no output for {args:?}"))?;
        for jobs in ["1", "4"] {
            let full = [args.as_slice(), &["--jobs", jobs]].concat();
            for cache in [None, Some(dir.path()), Some(dir.path())] {
                let (out, c) = strata(&full, input, cache);
                ensure(out == reference && c == code, || format!("output of {full:?} varies (cache={cache:?})"))?;
            }
        }
    }
    Ok(format!("{} commands byte-identical across --jobs 1/4 and cold/warm cache", requests.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 conversion fidelity", criterion_1),
        ("2 algebra laws", criterion_2),
        ("3 rescaled product", criterion_3),
        ("4 excess intersection product", criterion_4),
        ("5 forgetful maps", criterion_5),
        ("6 DR sanity", criterion_6),
        ("7 DR golden values", criterion_7),
        ("8 polynomiality and homogeneity", criterion_8),
        ("9 CLI determinism", criterion_9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
