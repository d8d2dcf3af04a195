//! Acceptance suite: one PASS/FAIL line per criterion. All checks are exact.

use std::time::Instant;

use grassmat::sampling::random_rank1_cases;
use grassmat_core::freetrace::{decode, encode_phi, encode_psi};
use grassmat_core::gmatrix::one_matrix_report;
use grassmat_core::identities::{
    charge7_report, charge_table, deduce_one_matrix_relations, gen_ch, gen_t, rank1_oracle_check, relation_rank,
    verify_identity, verify_identity_at, IdentityKind, IdentitySpec,
};
use grassmat_core::perm::Perm;
use grassmat_core::qindex::{
    andrews_ct_check, dynkin_series_report, free_index_identity_check, hilbert_series_by_rank, invariant_index,
    molien_weyl_index, GeneratorShape, HilbertMode, QSeries, VariableSpec,
};
use grassmat_core::symfun::{antisymmetrizer_ideal_dim, codimension, count_d_good, factorial};
use grassmat_core::{Letter, Q, TraceExpression};
use num_traits::One;
use Letter::{X, Y};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mono(c: i64, traces: &[&[Letter]], outer: &[Letter]) -> TraceExpression {
    let ts: Vec<Vec<Letter>> = traces.iter().map(|w| w.to_vec()).collect();
    TraceExpression::monomial(Q::from_integer(c.into()), &ts, outer)
}

fn sum(parts: &[TraceExpression]) -> TraceExpression {
    parts.iter().fold(TraceExpression::zero(), |a, b| &a + b)
}

fn one_matrix() -> Outcome {
    for n in 1..=3 {
        let r = one_matrix_report(n);
        ensure(r.nonzero_even_traces.is_empty(), || format!("n={n}: tr(xi^2k) != 0 for k in {:?}", r.nonzero_even_traces))?;
        ensure(r.top_power_zero, || format!("n={n}: xi^2n != 0"))?;
        ensure(r.below_top_nonzero, || format!("n={n}: xi^(2n-1) = 0"))?;
        ensure(r.dynkin_residual_zero, || format!("n={n}: odd-power relation residual is nonzero"))?;
    }
    Ok("n = 1, 2, 3".into())
}

fn cayley_hamilton() -> Outcome {
    let mut count = 0;
    for n in 1..=3 {
        for e in 0..=n + 1 {
            let f = n + 1 - e;
            for kind in [IdentityKind::T, IdentityKind::CH] {
                let spec = IdentitySpec::new(kind, e, f, n).map_err(|e| e.to_string())?;
                ensure(verify_identity(&spec).zero, || format!("{spec:?} does not vanish"))?;
                count += 1;
            }
        }
        let t = IdentitySpec::new(IdentityKind::T, 0, n + 1, n).map_err(|e| e.to_string())?;
        ensure(!verify_identity_at(&t, n + 1).zero, || format!("T(0,{}) vanishes at size {}", n + 1, n + 1))?;
    }
    let fermionic_t = sum(&[
        mono(1, &[&[X(1)], &[X(2)], &[X(3)]], &[]),
        mono(-1, &[&[X(1), X(2)], &[X(3)]], &[]),
        mono(-1, &[&[X(1)], &[X(2), X(3)]], &[]),
        mono(1, &[&[X(1), X(3)], &[X(2)]], &[]),
        mono(1, &[&[X(1), X(2), X(3)]], &[]),
        mono(-1, &[&[X(1), X(3), X(2)]], &[]),
    ]);
    let fermionic_ch = sum(&[
        mono(1, &[&[X(1)], &[X(2)]], &[]),
        mono(-1, &[&[X(1), X(2)]], &[]),
        mono(-1, &[&[X(1)]], &[X(2)]),
        mono(1, &[&[X(2)]], &[X(1)]),
        mono(1, &[], &[X(1), X(2)]),
        mono(-1, &[], &[X(2), X(1)]),
    ]);
    let mixed_ch = sum(&[
        mono(1, &[&[Y(1)], &[X(1)]], &[]),
        mono(-1, &[&[Y(1), X(1)]], &[]),
        mono(-1, &[&[Y(1)]], &[X(1)]),
        mono(-1, &[&[X(1)]], &[Y(1)]),
        mono(1, &[], &[Y(1), X(1)]),
        mono(1, &[], &[X(1), Y(1)]),
    ]);
    ensure(gen_t(0, 3, 2).ok() == Some(fermionic_t), || "three-fermion trace relation differs from the printed expansion".into())?;
    ensure(gen_ch(0, 3, 2).ok() == Some(fermionic_ch), || "fermionic CH differs from the printed expansion".into())?;
    ensure(gen_ch(1, 2, 2).ok() == Some(mixed_ch), || "mixed CH differs from the printed expansion".into())?;
    Ok(format!("{count} identities vanish, 3 negative controls, 3 printed expansions"))
}

fn ch_closes_to_t() -> Outcome {
    for n in 0..=3 {
        for e in 0..=n + 1 {
            let f = n + 1 - e;
            let spec = IdentitySpec::new(IdentityKind::CH, e, f, n).map_err(|e| e.to_string())?;
            let closed = (&spec.generate() * &TraceExpression::letter(spec.stripped())).trace();
            ensure(Some(closed) == gen_t(e, f, n).ok(), || format!("tr(CH*{}) != T for e={e} f={f} n={n}", spec.stripped()))?;
        }
    }
    Ok("all e + f = n + 1, n <= 3".into())
}

fn deductions() -> Outcome {
    for n in 2..=3 {
        let r = deduce_one_matrix_relations(n).map_err(|e| e.to_string())?;
        ensure(r.nilpotency_zero, || format!("n={n}: {} does not vanish", r.nilpotency))?;
        ensure(r.trace_relation_zero, || format!("n={n}: {} does not vanish", r.trace_relation))?;
    }
    Ok("n = 2, 3".into())
}

fn combinatorics() -> Outcome {
    let c: Vec<u128> = (1..=6).map(|m| codimension(m, 2)).collect();
    ensure(c == [1, 2, 5, 14, 42, 132], || format!("codimension(m, 2) = {c:?}"))?;
    for m in 1..=7 {
        ensure(count_d_good(m, 3) == codimension(m, 2), || format!("m={m}: 3-good count differs"))?;
        for n in 1..=4 {
            ensure(codimension(m, n) + antisymmetrizer_ideal_dim(m, n) == factorial(m), || format!("m={m} n={n}: c + k != m!"))?;
        }
    }
    for n in 1..=4 {
        ensure(antisymmetrizer_ideal_dim(n + 1, n) == 1, || format!("dim K(n+1, n) != 1 at n={n}"))?;
    }
    Ok("Catalan list, good permutations m <= 7, c + k = m!, dim K(n+1, n) = 1".into())
}

fn rank_codimension() -> Outcome {
    let mut checked = 0;
    for n in 2..=3 {
        for m in 1..=5 {
            let c = codimension(m, n) as usize;
            for e in 0..=m {
                let r = relation_rank(m, e, m - e, n).map_err(|e| e.to_string())?;
                ensure(r.span_dim == c, || format!("m={m} e={e} n={n}: span {} != codimension {c}", r.span_dim))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (m, e, f, n) cases"))
}

fn encoding() -> Outcome {
    for m in 1..=5 {
        for sigma in Perm::all(m) {
            for e in 0..=m {
                let f = m - e;
                let d = decode(&encode_phi(&sigma, e, f), e, f, false).map_err(|e| e.to_string())?;
                ensure(d.sigma == sigma && d.coefficient.is_one(), || format!("phi round trip fails for {sigma:?} e={e}"))?;
                if f >= 1 {
                    let d = decode(&encode_psi(&sigma, e, f), e, f - 1, true).map_err(|e| e.to_string())?;
                    ensure(d.sigma == sigma && d.coefficient.is_one(), || format!("psi round trip fails for {sigma:?} e={e}"))?;
                }
            }
        }
    }
    let s = Perm::from_one_line(&[3, 1, 5, 7, 2, 6, 4]).ok_or("bad permutation")?;
    let examples = [
        (encode_phi(&s, 3, 4), mono(1, &[&[Y(1), Y(3), X(2), Y(2)], &[X(1), X(4)], &[X(3)]], &[])),
        (encode_psi(&s, 3, 4), mono(1, &[&[Y(1), Y(3), X(2), Y(2)], &[X(3)]], &[X(1)])),
        (encode_phi(&s, 4, 3), mono(-1, &[&[Y(1), Y(3), X(1), Y(2)], &[Y(4), X(3)], &[X(2)]], &[])),
        (encode_psi(&s, 4, 3), mono(1, &[&[Y(1), Y(3), X(1), Y(2)], &[X(2)]], &[Y(4)])),
    ];
    let p = Perm::from_cycles(5, &[vec![2, 4, 1], vec![5, 3]]).ok_or("bad permutation")?;
    let more = [
        (encode_phi(&p, 0, 5), mono(1, &[&[X(2), X(4), X(1)], &[X(5), X(3)]], &[])),
        (encode_psi(&p, 0, 5), mono(-1, &[&[X(1), X(2), X(4)]], &[X(3)])),
    ];
    for (k, (got, want)) in examples.iter().chain(&more).enumerate() {
        ensure(got == want, || format!("printed example {k}: got {got}, expected {want}"))?;
    }
    let cases = random_rank1_cases(20_240_601, 100, 5);
    for c in &cases {
        let ok = rank1_oracle_check(&c.sigma, c.e, c.f, c.n).map_err(|e| e.to_string())?;
        ensure(ok, || format!("rank-one oracle fails for {:?} e={} f={} n={}", c.sigma, c.e, c.f, c.n))?;
    }
    Ok("round trips over S_m, m <= 5; 6 printed examples; 100 random rank-one cases".into())
}

fn charge_tables() -> Outcome {
    let rows = charge_table(8, None, false, false).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = rows[2..7].iter().map(|r| r.bosonic.len()).collect();
    ensure(dims == [1, 1, 3, 6, 11], || format!("free dims for charges 3..7: {dims:?}"))?;
    for r in &rows {
        let (b, f) = r.free_dims();
        ensure(b == f, || format!("charge {}: {b} bosonic vs {f} fermionic", r.charge))?;
    }
    let ranked = charge_table(7, Some(3), true, false).map_err(|e| e.to_string())?;
    let r7 = ranked[6].rank_at.ok_or("no ranks")?;
    ensure(r7 == (3, 10, 10), || format!("charge-7 ranks at n = 3: {r7:?}"))?;
    let c7 = charge7_report().map_err(|e| e.to_string())?;
    ensure(c7.x1_pow7_zero, || "t(x1^7) does not vanish".into())?;
    ensure(c7.relation_zero, || format!("{} does not vanish", c7.relation))?;
    ensure(c7.holds(), || format!("charge-7 report fails: {c7:?}"))?;
    Ok("dims 1, 1, 3, 6, 11; parities equal up to charge 8; ranks 10/10 at charge 7".into())
}

fn index_identities() -> Outcome {
    for (n, order) in [(1, 10), (2, 8), (3, 6)] {
        let s = molien_weyl_index(n, order, false).map_err(|e| e.to_string())?;
        ensure(s == QSeries::euler(order), || format!("n={n}: {s}"))?;
    }
    let a = andrews_ct_check(2, 8);
    ensure(a.holds(), || format!("split {} / symmetrized {} / expected {}", a.split, a.symmetrized, a.expected))?;
    let shapes = [
        GeneratorShape::pair(3),
        GeneratorShape::matrix_entries(2, &[1, 2, 3]),
        GeneratorShape { bosonic: vec![1, 1, 2, 5], fermionic: vec![5, 2, 1, 1] },
    ];
    for s in &shapes {
        ensure(free_index_identity_check(s, 10), || format!("free index of {s:?} is not 1"))?;
    }
    for (n, charges) in [(1, &[1, 2, 3][..]), (2, &[1, 2][..]), (3, &[1][..])] {
        ensure(invariant_index(n, charges, charges, 6).is_one(), || format!("matched invariant index at n={n} is not 1"))?;
    }
    Ok("Molien-Weyl (1,10) (2,8) (3,6); Andrews n = 2 order 8; 3 free shapes; 3 matched torus indices".into())
}

fn dynkin_series() -> Outcome {
    let inv = hilbert_series_by_rank(HilbertMode::Invariants, 2, &VariableSpec::single_fermion(), 8, false)
        .map_err(|e| e.to_string())?;
    ensure(inv == QSeries::from_integers(8, &[1, 1, 0, 1, 1]), || format!("invariants: {inv}"))?;
    let r = dynkin_series_report(2).map_err(|e| e.to_string())?;
    ensure(r.free_module_reading_matches(), || format!("equivariants {} vs {}", r.equivariants, r.free_module_reading))?;
    Ok(format!(
        "invariants {}; equivariants {} = {} (free-module reading), literal reading {} does not match",
        r.invariants.polynomial(),
        r.equivariants.polynomial(),
        r.free_module_reading,
        r.literal_reading
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("one-matrix identities", one_matrix),
        ("Cayley-Hamilton suite", cayley_hamilton),
        ("CH/T contract", ch_closes_to_t),
        ("one-matrix deductions", deductions),
        ("combinatorics", combinatorics),
        ("rank = codimension", rank_codimension),
        ("encoding", encoding),
        ("charge table", charge_tables),
        ("index identities", index_identities),
        ("graded dimensions of one fermionic matrix", dynkin_series),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
