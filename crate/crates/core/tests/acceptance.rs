//! Acceptance gate: one PASS/FAIL line per criterion, details indented below.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use cyclosim::classifier::{
    decide_similarity, enumerate_unstable, in_rt, induce_closed_form, order_in_rtop,
    restrict_closed_form, rtop_presentation, std_basis, to_coords, Decision, DEFAULT_MAX_PAIRS,
};
use cyclosim::group_ring::{
    legal_gamma_indices, legal_sigma_v_params, reidemeister_quotient, verify_cond_b_unit,
    verify_identity_gamma, verify_identity_v, verify_sigma_v_factorization,
};
use cyclosim::normal::{a_prime_instance, sylow_kernel_test};
use cyclosim::oliver::{oliver_kernel_check, NormTable, OliverStatus};
use cyclosim::rep::{parse_rep, VirtualRep};
use cyclosim::tate::{tate, tate_bruteforce};

const FAST: Duration = Duration::from_secs(1);
const SWEEP: Duration = Duration::from_secs(10);
const SUITE: Duration = Duration::from_secs(120);

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { ok: true, notes: Vec::new() }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn rep(n: u64, s: &str) -> VirtualRep {
    parse_rep(n, s).expect("literal")
}

fn c01() -> Outcome {
    let mut o = Outcome::new();
    let want: [(u32, &[u64]); 2] = [(3, &[4]), (4, &[4, 2, 2])];
    for (r, f) in want {
        let p = rtop_presentation(r).unwrap();
        o.check(p.invariant_factors == f, format!("r={r}: {:?}", p.invariant_factors));
    }
    for r in 5..=7 {
        let p = rtop_presentation(r).unwrap();
        o.check(
            p.matches_expected,
            format!("r={r}: {:?} vs {:?}", p.invariant_factors, p.expected_orders),
        );
    }
    o
}

fn c02() -> Outcome {
    let mut o = Outcome::new();
    for r in 3..=6u32 {
        let want = if r == 3 { 4 } else { 1 << (r - 2) };
        let got = order_in_rtop(&rep(1 << r, "t - t5")).unwrap();
        o.check(got == want, format!("r={r}: order {got}, want {want}"));
    }
    o
}

fn c03() -> Outcome {
    let mut o = Outcome::new();
    for r in [5u32, 6] {
        let n = 1u64 << r;
        let h = 1u64 << (r - 2);
        let x = VirtualRep::difference(n, &[9, (1 + h) as i64], &[1, (9 + h) as i64]);
        let member = in_rt(&x).unwrap().is_some();
        o.check(member, format!("r={r}: {x} not in the lattice (order {})", order_in_rtop(&x).unwrap()));
        let unit = verify_cond_b_unit(r).unwrap();
        o.check(unit.holds, format!("r={r}: unit factorization"));
        let alt = VirtualRep::difference(n, &[9, (1 + 2 * h) as i64], &[1, (9 + 2 * h) as i64]);
        o.note(format!(
            "r={r}: unit factorization {}, shift 2^(r-1) variant in lattice: {}",
            unit.holds,
            in_rt(&alt).unwrap().is_some()
        ));
    }
    o
}

fn c04() -> Outcome {
    let mut o = Outcome::new();
    for q in [3u64, 5] {
        let start = Instant::now();
        o.check(verify_identity_v(q).unwrap().holds, format!("v identity, q={q}"));
        for j in legal_gamma_indices(q) {
            o.check(verify_identity_gamma(q, j).unwrap().holds, format!("gamma identity q={q} j={j}"));
        }
        o.check(start.elapsed() < FAST * (legal_gamma_indices(q).len() as u32 + 1), format!("time q={q}"));
    }
    o.check(verify_sigma_v_factorization(5, 1, 0).unwrap().holds, "factorization r=5 s=1 i=0");
    for (s, i) in legal_sigma_v_params(6) {
        o.check(verify_sigma_v_factorization(6, s, i).unwrap().holds, format!("factorization r=6 s={s} i={i}"));
    }
    o
}

fn c05() -> Outcome {
    let mut o = Outcome::new();
    let (mut total, mut magnitude, mut sign, mut rhs) = (0, 0, 0, 0);
    for r in 4..=6u32 {
        for s in 1..=r - 2 {
            for i in (1..1i64 << (r - s)).step_by(4) {
                for k in 1..=1u64 << s {
                    let rep = a_prime_instance(r, s, i, k).unwrap();
                    total += 1;
                    magnitude += usize::from(rep.magnitude_ok);
                    sign += usize::from(rep.sign_ok);
                    rhs += usize::from(rep.rhs_matches_lhs);
                    if !rep.sign_ok && o.notes.len() < 4 {
                        o.note(format!(
                            "r={r} s={s} i={i} k={k}: lhs = {} mod {}, target {}",
                            rep.lhs_residue, rep.modulus, rep.target_residue
                        ));
                    }
                }
            }
        }
    }
    o.check(magnitude == total, format!("magnitude {magnitude}/{total}"));
    o.check(sign == total, format!("sign (-1)^(k+1) holds in {sign}/{total}"));
    o.note(format!("rhs equals lhs exactly in {rhs}/{total}; magnitude 2^(r+1) holds in {magnitude}/{total}"));
    o
}

fn c06() -> Outcome {
    let mut o = Outcome::new();
    for r in 3..=5u32 {
        let pairs = enumerate_unstable(r, 2, &rep(1 << r, "rminus"), DEFAULT_MAX_PAIRS).unwrap();
        let yes = pairs.iter().filter(|p| p.verdict.decision == Decision::Yes).count();
        o.check(yes == 0, format!("r={r}: {yes} yes verdicts among {}", pairs.len()));
    }
    o
}

fn c07() -> Outcome {
    let mut o = Outcome::new();
    for r in 4..=6u32 {
        let n = 1u64 << r;
        let v1 = VirtualRep::from_weights(n, &[1, 1]);
        let b = (1 + (n / 2)) as i64;
        let v2 = VirtualRep::from_weights(n, &[b, b]);
        let yes = decide_similarity(&v1, &v2, &rep(n, "rminus + rplus")).unwrap();
        o.check(yes.decision == Decision::Yes, format!("r={r} with rminus + rplus: {:?}", yes.decision));
        let no = decide_similarity(&v1, &v2, &rep(n, "rminus")).unwrap();
        o.check(no.decision == Decision::No, format!("r={r} with rminus: {:?}", no.decision));
    }
    o
}

fn c08() -> Outcome {
    let mut o = Outcome::new();
    for r in 4..=8u32 {
        let b = std_basis(r).unwrap();
        let n = b.order();
        for (j, &(s, i)) in b.elements().iter().enumerate() {
            let x = b.element(j);
            let res = to_coords(&x.restrict(n / 2).unwrap()).unwrap();
            o.check(restrict_closed_form(r, s, i).unwrap() == res, format!("Res r={r} s={s} i={i}"));
        }
        let lower = std_basis(r - 1).unwrap();
        for (j, &(s, i)) in lower.elements().iter().enumerate() {
            let ind = to_coords(&lower.element(j).induce()).unwrap();
            o.check(induce_closed_form(r, s + 1, i).unwrap() == ind, format!("Ind r={r} s={} i={i}", s + 1));
        }
    }
    for r in 3..=8u32 {
        // Unimodular: the right number of elements, spanning every t^{5^k} - t.
        let b = std_basis(r).unwrap();
        let n = 1u64 << r;
        o.check(b.len() == (1 << (r - 2)) - 1, format!("basis size r={r}"));
        let mut p = 1u64;
        for _ in 1..1u64 << (r - 2) {
            p = p * 5 % n;
            let x = VirtualRep::difference(n, &[p as i64], &[1]);
            o.check(b.to_coords(&x).is_ok(), format!("t{p} - t outside the span, r={r}"));
        }
    }

    let mut rng = common::rng(8);
    for case in 0..1000 {
        let n = rng.gen_range(1..=64u64);
        let x = common::random_rep(&mut rng, n, 8);
        let mut sum = VirtualRep::zero(n);
        for part in x.split_free_parts().values() {
            sum = sum.add(&part.inflate(n).unwrap()).unwrap();
        }
        o.check(sum == x, format!("reassembly case {case}: {x}"));
    }
    for case in 0..500 {
        let n = rng.gen_range(3..=64u64);
        let len = rng.gen_range(1..=3);
        let (v1, v2) = common::random_equivalent_weights(&mut rng, n, len);
        o.check(
            reidemeister_quotient(n as usize, &v1, &v2).is_ok(),
            format!("torsion unit case {case}: {v1:?} / {v2:?}"),
        );
    }
    let mut yes_cases = 0;
    for case in 0..500 {
        let n = 1u64 << rng.gen_range(3..=6u32);
        let x = common::random_free_zero(&mut rng, n, 3);
        let (pos, neg) = x.weight_lists();
        let signed = |v: Vec<u64>| v.into_iter().map(|a| a as i64).collect::<Vec<_>>();
        let (v1, v2) = (VirtualRep::from_weights(n, &signed(pos)), VirtualRep::from_weights(n, &signed(neg)));
        let w = random_nonneg_w(&mut rng, n);
        let w2 = w.add(&random_nonneg_w(&mut rng, n)).unwrap();
        let before = decide_similarity(&v1, &v2, &w).unwrap().decision;
        let after = decide_similarity(&v1, &v2, &w2).unwrap().decision;
        if before == Decision::Yes {
            yes_cases += 1;
            o.check(after == Decision::Yes, format!("monotonicity case {case}: {x} with {w} then {w2}"));
        }
    }
    o.note(format!("monotonicity exercised on {yes_cases} yes verdicts"));
    o
}

fn random_nonneg_w<R: Rng>(rng: &mut R, n: u64) -> VirtualRep {
    let r = n.trailing_zeros();
    let mut w = VirtualRep::zero(n);
    w.add_irr(cyclosim::rep::Irreducible::RPlus, rng.gen_range(0..=1)).unwrap();
    w.add_irr(cyclosim::rep::Irreducible::RMinus, rng.gen_range(0..=1)).unwrap();
    for k in 2..r {
        if rng.gen_bool(0.4) {
            w.add_weight(1 << (r - k), 1);
        }
    }
    w
}

fn c09() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = common::rng(9);
    for case in 0..200 {
        let m = common::random_c2module(&mut rng, 4096);
        for d in [0u8, 1] {
            let fast = tate(&m, d).unwrap().invariant_factors_u64();
            let slow = tate_bruteforce(&m, d).unwrap();
            o.check(fast == slow, format!("case {case} degree {d}: {fast:?} vs {slow:?}"));
            o.check(fast.iter().all(|&f| f == 2), format!("case {case} degree {d}: not 2-torsion"));
        }
    }
    o
}

fn c10() -> Outcome {
    let mut o = Outcome::new();
    for n in [0u32, 1] {
        let rep = oliver_kernel_check(n, &NormTable).unwrap();
        o.note(format!(
            "n={n}: {:?}, {} elements, {} in induced kernel",
            rep.status, rep.elements, rep.in_induced_kernel
        ));
        o.check(rep.status == OliverStatus::Pass, format!("n={n}: {:?}", rep.status));
    }
    o
}

fn c11() -> Outcome {
    let mut o = Outcome::new();
    for s in ["t - t7", "t5 - t11"] {
        o.check(sylow_kernel_test(&rep(24, s)).unwrap(), format!("{s} not certified"));
    }
    o.check(!sylow_kernel_test(&rep(24, "t - t5")).unwrap(), "t - t5 certified");
    o
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("c01 quotient presentations r=3..7", c01, FAST * 5),
        ("c02 order of t - t5", c02, FAST),
        ("c03 example element and unit factorization", c03, FAST * 2),
        ("c04 unit identity suite", c04, FAST * 40),
        ("c05 congruence sweep r=4..6", c05, SWEEP),
        ("c06 no five-dimensional similarities", c06, SWEEP),
        ("c07 six-dimensional family", c07, FAST),
        ("c08 structural property suites", c08, SUITE),
        ("c09 tate against brute force", c09, SUITE),
        ("c10 norm table kernel check", c10, SWEEP),
        ("c11 sylow detection over C(24)", c11, FAST),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if took > limit {
            out.ok = false;
            out.notes.push(format!("failed: took {took:.2?}, limit {limit:?}"));
        }
        let tag = if out.ok { "PASS" } else { "FAIL" };
        println!("{tag} {name} ({took:.2?})");
        for n in &out.notes {
            println!("     {n}");
        }
        failed += usize::from(!out.ok);
    }
    println!("{} of 11 criteria pass", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
