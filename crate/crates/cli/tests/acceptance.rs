//! Acceptance suite. Prints one line per criterion; known reds are listed in
//! `KNOWN_RED` and must stay red until the underlying result changes.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use subhankel_core::exact::rational::{frac, int, pow_i64};
use subhankel_core::exact::{parse_poly, Poly, VarContext};
use subhankel_core::legendre::{
    expected_ml_constant, verify_ml_closed_form, verify_ml_pointwise, Direction, WeightPair,
};
use subhankel_core::orthopoly::{self, Family, Identity, PolySequence, SHStatus};
use subhankel_core::report::Status;
use subhankel_core::space::{CharacterWeight, Side, SubHankelSpace, DEFAULT_SEED};
use subhankel_core::weyl::{
    conjecture_a_check, conjecture_a_predicted, conjecture_b_check, dual_context, euler_check,
    ml_of_p1, ml_pointwise_constant, ml_polarization, polarize, PowerExpr,
};

const LIE_BUDGET: Duration = Duration::from_secs(1);
const INFINITESIMAL_BUDGET: Duration = Duration::from_secs(30);
const ML_BUDGET: Duration = Duration::from_secs(300);
const CONJ_A_BUDGET: Duration = Duration::from_secs(120);
const CONJ_A_EXT_BUDGET: Duration = Duration::from_secs(1800);
const GROUP_SAMPLES: usize = 100;
const POINTWISE_SAMPLES: usize = 10;

const KNOWN_RED: &[&str] = &["3b", "4b", "6b", "6y", "8b", "10c"];

struct Line {
    id: &'static str,
    ok: bool,
    text: String,
}

fn space(r: usize) -> SubHankelSpace {
    SubHankelSpace::new(r).unwrap()
}

fn c1() -> (bool, String) {
    let start = Instant::now();
    let ok = (2..=8).all(|r| space(r).verify_structure_constants().passed());
    let t = start.elapsed();
    (
        ok && t < LIE_BUDGET,
        format!("structure constants r=2..8 exact ({t:.2?} < {LIE_BUDGET:?})"),
    )
}

fn c2() -> (bool, String) {
    let s = space(4);
    let inv = s.invariants();
    let q1 = parse_poly(
        "64*z1^3*z5 - 32*z1^2*z2*z4 - 16*z1^2*z3^2 + 24*z1*z2^2*z3 - 5*z2^4",
        s.z_context(),
    )
    .unwrap();
    let p1 = parse_poly(
        "-y1*y5^3 + 2*y2*y5^2*y4 + y3^2*y5^2 - 3*y3*y4^2*y5 + y4^4",
        s.y_context(),
    )
    .unwrap();
    (
        inv.q1 == q1 && inv.p1 == p1,
        "r=4 Q1 and P1 equal the worked expansions coefficient-exactly".into(),
    )
}

/// `(name, poly, weight, side)` with the character weights as stated.
fn stated(s: &SubHankelSpace) -> Vec<(&'static str, Poly, CharacterWeight, Side)> {
    let r = s.r() as i64;
    let inv = s.invariants();
    vec![
        ("P1", inv.p1, CharacterWeight::ints(1, r - 1), Side::Y),
        ("P2", inv.p2, CharacterWeight::ints(0, 1), Side::Y),
        ("Q1", inv.q1, CharacterWeight::ints(1 - r, -1), Side::Z),
        ("Q2", inv.q2, CharacterWeight::ints(1, 0), Side::Z),
    ]
}

fn c3() -> Vec<(&'static str, bool, String)> {
    let start = Instant::now();
    let (mut main, mut q2, mut q2_dual) = (true, true, true);
    for r in 2..=6 {
        let s = space(r);
        for (name, p, w, side) in stated(&s) {
            let ok = s.verify_infinitesimal_invariance(&p, &w, side).passed();
            if name == "Q2" {
                q2 &= ok;
                let alt = CharacterWeight::ints(-1, 0);
                q2_dual &= s.verify_infinitesimal_invariance(&p, &alt, side).passed();
            } else {
                main &= ok;
            }
        }
    }
    let t = start.elapsed();
    vec![
        (
            "3a",
            main && t < INFINITESIMAL_BUDGET,
            format!("infinitesimal invariance P1 (1,r-1), P2 (0,1), Q1 (1-r,-1), r=2..6 ({t:.2?})"),
        ),
        (
            "3b",
            q2,
            format!("infinitesimal invariance Q2 with weight (1,0), r=2..6 [weight (-1,0) holds: {q2_dual}]"),
        ),
    ]
}

fn c4() -> Vec<(&'static str, bool, String)> {
    let (mut main, mut q2, mut q2_dual) = (true, true, true);
    for r in 2..=5 {
        let s = space(r);
        for (name, p, w, side) in stated(&s) {
            let ok = s
                .verify_group_invariance(&p, &w, side, GROUP_SAMPLES, DEFAULT_SEED)
                .passed();
            if name == "Q2" {
                q2 &= ok;
                let alt = CharacterWeight::ints(-1, 0);
                q2_dual &= s
                    .verify_group_invariance(&p, &alt, side, GROUP_SAMPLES, DEFAULT_SEED)
                    .passed();
            } else {
                main &= ok;
            }
        }
    }
    vec![
        (
            "4a",
            main,
            format!("group invariance P1, P2, Q1 at {GROUP_SAMPLES} seeded elements, r=2..5"),
        ),
        (
            "4b",
            q2,
            format!(
                "group invariance Q2 with weight (1,0), r=2..5 [weight (-1,0) holds: {q2_dual}]"
            ),
        ),
    ]
}

fn c5() -> (bool, String) {
    let ok = (2..=6).all(|r| space(r).verify_determinant_characters().passed());
    (ok, "determinant character trace identities r=2..6".into())
}

fn ml_matches(r: usize, direction: Direction) -> (bool, String) {
    let rep = verify_ml_closed_form(&space(r), direction);
    let expected = expected_ml_constant(r);
    let ok = rep
        .constant
        .as_ref()
        .is_some_and(|c| *c == expected || *c == -&expected);
    let shown = rep.constant.map(|c| c.to_string()).unwrap_or("none".into());
    (
        ok,
        format!("r={r} {}: c={shown} vs ±{expected}", direction.as_str()),
    )
}

fn c6() -> Vec<(&'static str, bool, String)> {
    let start = Instant::now();
    let mut parts = Vec::new();
    for direction in [Direction::PToQ, Direction::QToP] {
        let runs: Vec<_> = [3, 4].iter().map(|r| ml_matches(*r, direction)).collect();
        let mut ok = runs.iter().all(|(ok, _)| *ok);
        if direction == Direction::PToQ {
            let c = verify_ml_closed_form(&space(4), direction).constant;
            let example = pow_i64(&int(192), -3);
            ok &= c.is_some_and(|c| c == example || c == -example);
        }
        let text: Vec<_> = runs.into_iter().map(|(_, t)| t).collect();
        parts.push((ok, text.join("; ")));
    }
    let t = start.elapsed();
    let (pq_ok, pq) = parts.remove(0);
    let (qp_ok, qp) = parts.remove(0);
    let (e_pq, e_pq_t) = ml_matches(5, Direction::PToQ);
    let (e_qp, e_qp_t) = ml_matches(5, Direction::QToP);
    vec![
        (
            "6a",
            pq_ok && t < ML_BUDGET,
            format!("ML closed form {pq} ({t:.2?})"),
        ),
        ("6b", qp_ok, format!("ML closed form {qp}")),
        ("6x", e_pq, format!("extended ML closed form {e_pq_t}")),
        ("6y", e_qp, format!("extended ML closed form {e_qp_t}")),
    ]
}

fn c7() -> (bool, String) {
    let mut ok = true;
    let mut seen = Vec::new();
    for r in [3usize, 4] {
        let s = space(r);
        for (s1, s2) in [(1, r as i64 - 1), (2, 1), (-1, 2)] {
            let rep =
                verify_ml_pointwise(&s, WeightPair::new(s1, s2), POINTWISE_SAMPLES, DEFAULT_SEED)
                    .unwrap();
            ok &=
                rep.witness.is_none() && rep.constant.is_some() && rep.samples >= POINTWISE_SAMPLES;
            seen.push(format!(
                "r={r} ({s1},{s2}) c={}",
                rep.constant.map(|c| c.to_string()).unwrap_or("none".into())
            ));
        }
    }
    (
        ok,
        format!(
            "pointwise ML constant at {POINTWISE_SAMPLES} points: {}",
            seen.join(", ")
        ),
    )
}

fn c8() -> Vec<(&'static str, bool, String)> {
    let start = Instant::now();
    let r2 = conjecture_a_check(2).unwrap();
    let classical = {
        let ctx = VarContext::new(["s"]).unwrap();
        parse_poly("s^2 + 5/2*s + 3/2", &ctx).unwrap()
    };
    let r4 = conjecture_a_check(4).unwrap();
    let t = start.elapsed();
    let r3 = conjecture_a_check(3).unwrap();
    let exact = |rep: &subhankel_core::weyl::BFunctionReport| {
        rep.b.as_ref() == Some(&conjecture_a_predicted(rep.r))
    };
    let a_ok = exact(&r2) && r2.b.as_ref() == Some(&classical) && exact(&r4) && t < CONJ_A_BUDGET;
    let start = Instant::now();
    let r5 = conjecture_a_check(5).unwrap();
    let t5 = start.elapsed();
    let show = |rep: &subhankel_core::weyl::BFunctionReport| {
        rep.b
            .as_ref()
            .map(|b| b.to_string())
            .unwrap_or("none".into())
    };
    vec![
        (
            "8a",
            a_ok,
            format!("b-function exact for r=2 (classical (s+1)(s+3/2)) and r=4 ({t:.2?})"),
        ),
        (
            "8b",
            exact(&r3),
            format!(
                "b-function exact for r=3: got {} [{}]",
                show(&r3),
                r3.status
            ),
        ),
        (
            "8x",
            exact(&r5) && t5 < CONJ_A_EXT_BUDGET,
            format!("extended b-function exact for r=5 ({t5:.2?})"),
        ),
    ]
}

fn c9() -> (bool, String) {
    let ok = (2..=5).all(|r| euler_check(r).unwrap().0);
    (ok, "Euler operator gives r(s+1) on K^(s+1), r=2..5".into())
}

const RESOLVED: [Identity; 7] = [
    Identity::ChebT,
    Identity::ChebU,
    Identity::ChebV,
    Identity::Fib,
    Identity::Luc,
    Identity::QuotForm,
    Identity::SumFormSum,
];

const LITERAL: [Identity; 2] = [Identity::FibOnes, Identity::SumFormProduct];

fn c10() -> Vec<(&'static str, bool, String)> {
    let gfib = orthopoly::verify_grid(Identity::GFib, 2..=3, 0..=4)
        .iter()
        .all(|rep| rep.status == SHStatus::Equal);

    let mut table = Vec::new();
    let mut constant_unit = |ids: &[Identity]| {
        let mut ok = true;
        let mut misses = Vec::new();
        for id in ids {
            for r in 2..=5 {
                let grid = orthopoly::verify_grid(*id, [r], 0..=3);
                let c = orthopoly::common_ratio(&grid);
                let unit = c.as_ref().is_some_and(|c| *c == int(1) || *c == int(-1));
                if !unit {
                    misses.push(format!("{id} r={r}"));
                }
                ok &= unit;
                table.push(serde_json::json!({
                    "family": id.name(),
                    "r": r,
                    "ratio": c.map(|c| c.to_string()),
                    "rows": grid.iter().map(|rep| serde_json::json!({
                        "n": rep.n,
                        "status": rep.status.as_str(),
                        "ratio": rep.ratio.as_ref().map(|c| c.to_string()),
                    })).collect::<Vec<_>>(),
                }));
            }
        }
        (ok, misses)
    };
    let (resolved, _) = constant_unit(&RESOLVED);
    let (literal, misses) = constant_unit(&LITERAL);

    let hankel = Family::ALL.iter().all(|f| {
        let mut seq = PolySequence::new(*f);
        (3..=5).all(|r| (0..=3).all(|n| seq.hankel_det(r, n).is_zero()))
    });

    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("orthopoly_ratios.json");
    std::fs::write(&path, serde_json::to_string_pretty(&table).unwrap()).unwrap();
    vec![
        ("10a", gfib, "generalized Fibonacci sub-Hankel identity exact, r=2..3, n=0..4".into()),
        (
            "10b",
            resolved,
            format!(
                "Chebyshev T/U/V, Fibonacci (F_n = GFib_n(x,1)), Lucas, quotient and sum (x^N + y^N) forms: ratio ±1 constant in n=0..3, r=2..5; table {}",
                path.display()
            ),
        ),
        (
            "10c",
            literal,
            format!("identities as printed, Fibonacci with F_0 = F_1 = 1 and sum form (x^N y^N): misses {}", misses.join(", ")),
        ),
        ("10d", hankel, "Hankel determinants vanish for every family, r=3..5, n=0..3".into()),
    ]
}

fn c11() -> (bool, String) {
    let mut ok = true;
    let x = VarContext::new(["x1"]).unwrap();
    let f = parse_poly("x1^2", &x).unwrap();
    let w = dual_context(&x);
    let f_star = PowerExpr::new(&w, frac(1, 4), vec![(Poly::var_at(&w, 0), 2)]);
    let mut cases = vec![(f, f_star, 2u32)];
    for r in [2usize, 3] {
        let s = space(r);
        cases.push((s.invariants().p1, ml_of_p1(&s).unwrap(), r as u32));
    }
    for (f, f_star, d) in cases {
        let big = polarize(&f, 1);
        let big_star = ml_polarization(&f_star, d, 1);
        let prod = ml_pointwise_constant(&big, &big_star, POINTWISE_SAMPLES, DEFAULT_SEED).unwrap();
        ok &= prod.is_constant() && prod.samples >= POINTWISE_SAMPLES;
    }
    (ok, format!("polarized transform passes the pointwise check for x^2 and P1 (r=2,3) at {POINTWISE_SAMPLES} points"))
}

fn c12() -> (bool, String) {
    let rep = conjecture_b_check(3, 1).unwrap();
    let ctx = VarContext::new(["s"]).unwrap();
    let expected = parse_poly("s^3 + 11/2*s^2 + 13/2*s + 2", &ctx).unwrap();
    let ok = match rep.status {
        Status::Unsupported => rep.diagnostic.is_some(),
        _ => rep.b.as_ref() == Some(&expected),
    };
    let shown = rep
        .b
        .as_ref()
        .map(|b| b.to_string())
        .unwrap_or("none".into());
    (
        ok,
        format!(
            "k=1 polarization b-function at r=3: {} b={shown}",
            rep.status
        ),
    )
}

const SUITE: &[&[&str]] = &[
    &["invariants", "-r", "4"],
    &["verify-lie", "-r", "5"],
    &["verify-invariance", "-r", "3"],
    &["verify-ml", "-r", "4"],
    &["verify-ml", "-r", "3", "--us", "2,1"],
    &["verify-bfun", "-r", "3"],
    &["verify-orthopoly"],
    &["polarize", "y1*y3 - y2^2", "-k", "2"],
    &["verify-conjB", "-r", "3", "-k", "1"],
];

fn run_suite() -> Vec<u8> {
    let mut out = Vec::new();
    for args in SUITE {
        let o = Command::new(env!("CARGO_BIN_EXE_subhankel"))
            .args(*args)
            .args(["--format", "json"])
            .output()
            .expect("binary runs");
        out.extend(o.stdout);
    }
    out
}

fn c13() -> (bool, String) {
    let a = run_suite();
    let b = run_suite();
    (
        !a.is_empty() && a == b,
        format!(
            "two default-seed runs of {} commands give identical JSON ({} bytes)",
            SUITE.len(),
            a.len()
        ),
    )
}

fn main() -> ExitCode {
    let mut lines: Vec<Line> = Vec::new();
    let mut push = |id: &'static str, (ok, text): (bool, String)| lines.push(Line { id, ok, text });
    push("1", c1());
    push("2", c2());
    for (id, ok, text) in c3().into_iter().chain(c4()) {
        push(id, (ok, text));
    }
    push("5", c5());
    for (id, ok, text) in c6() {
        push(id, (ok, text));
    }
    push("7", c7());
    for (id, ok, text) in c8() {
        push(id, (ok, text));
    }
    push("9", c9());
    for (id, ok, text) in c10() {
        push(id, (ok, text));
    }
    push("11", c11());
    push("12", c12());
    push("13", c13());

    let mut unexpected = 0;
    for line in &lines {
        let known = KNOWN_RED.contains(&line.id);
        let mark = if line.ok { "PASS" } else { "FAIL" };
        let note = match (known, line.ok) {
            (true, false) => " (known red, see decisions ledger)",
            (true, true) => " (UNEXPECTED: listed as known red)",
            (false, false) => " (UNEXPECTED)",
            _ => "",
        };
        if note.contains("UNEXPECTED") {
            unexpected += 1;
        }
        println!("[{mark}] criterion {:<4} {}{note}", line.id, line.text);
    }
    let passed = lines.iter().filter(|l| l.ok).count();
    println!(
        "acceptance: {passed}/{} lines pass, {unexpected} unexpected",
        lines.len()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
