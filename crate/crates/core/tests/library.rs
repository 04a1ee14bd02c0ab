//! Library workflows across modules.

use bss_core::algebraic::{alg_eq, alg_nth_root, approximate_with_degree, AlgebraicNumber};
use bss_core::arith::{rat, PrimeSet};
use bss_core::machine::{path_degree_bound, run, symbolic_run, Membership, OracleSpec, RunOptions};
use bss_core::problems::{
    equiv_a2, reduce_q_to_a, reduce_q_to_a_machine, reduce_q_to_a_symbolic, semidecide_root_field, separation_demo,
    shipped_program, A2Direction, Certificate, ProblemId, Reduction, SeparationMode,
};
use bss_core::Error;

#[test]
fn assembly_and_native_reductions_agree() {
    for text in ["5/3", "[-2,0,1]@(1,2)", "[-2,0,0,1]@(1,2)", "[-1,-2,1]@(2,3)"] {
        let x: AlgebraicNumber = text.parse().unwrap();
        let native = reduce_q_to_a(&x, 10_000_000).unwrap();
        let machine = reduce_q_to_a_machine(&x, 100_000_000).unwrap();
        assert_eq!(native.accepted, machine.accepted, "{text}");
        assert_eq!(native.accepted, x.is_rational(), "{text}");
        assert!(machine.replay(100_000_000).unwrap());
    }
}

#[test]
fn transcendental_input_takes_the_reject_branch() {
    let sym = reduce_q_to_a_symbolic(&rat(1, 2), 1_000).unwrap();
    assert!(sym.result.is_halted());
    assert!(!sym.result.is_accepted());
    assert_eq!(sym.path[0].membership, Membership::Out);
}

#[test]
fn reductions_by_name() {
    let x = alg_nth_root(&rat(2, 1), 2).unwrap();
    for name in ["Q<=A", "Q<=A/machine", "SQ<=Q", "Q<=SQ", "A<=2<=A=2", "A=2<=A<=2"] {
        let r: Reduction = name.parse().unwrap();
        assert_eq!(r.to_string(), name);
        let rep = r.run(&x, 100_000_000).unwrap();
        let expected = name.starts_with("A");
        assert_eq!(rep.accepted, expected, "{name}");
    }
    let le = equiv_a2(&alg_nth_root(&rat(2, 1), 3).unwrap(), A2Direction::LeFromEq, 1_000_000).unwrap();
    assert!(!le.accepted);
}

#[test]
fn separation_witness_runs_like_the_shadow() {
    let prog = shipped_program("sep_quotient").unwrap();
    let shadow = rat(7, 2);
    let sym = symbolic_run(&prog, &shadow, &OracleSpec::Rationals, &RunOptions::new(1_000)).unwrap();
    let bound = path_degree_bound(&sym.path, 1);
    let rep = separation_demo(&prog, SeparationMode::Full, &shadow, 1_000).unwrap();
    assert_eq!(rep.degree_bound, bound);
    let again = run(&prog, std::slice::from_ref(&rep.witness), &OracleSpec::Rationals, 1_000).unwrap();
    assert!(again.is_accepted());
    assert_eq!(again.observations, sym.result.observations);
}

#[test]
fn nonhalting_claimed_semidecider_has_no_witness() {
    let prog = bss_core::machine::parse_program("name spin\nmode full\nl: JMP l\n   HALT\n").unwrap();
    let err = separation_demo(&prog, SeparationMode::Full, &rat(1, 2), 200).unwrap_err();
    assert!(err.to_string().contains("no halting path found"));
}

#[test]
fn root_field_search_and_problem_ids() {
    let approx = approximate_with_degree(&rat(1, 3), 2, &rat(1, 100)).unwrap();
    assert_eq!(approx.degree(), 2);
    let x = alg_nth_root(&rat(2, 1), 2).unwrap().add_rational(&rat(1, 3));
    let d = semidecide_root_field(&x, &PrimeSet::from_u64s(&[2]).unwrap(), 5_000_000).unwrap();
    let Some(Certificate::FieldElement { k, coeffs }) = d.certificate else { panic!("{d}") };
    let t = alg_nth_root(&rat(2, 1), k as u32).unwrap();
    let mut sum = AlgebraicNumber::zero();
    for (e, c) in coeffs.iter().enumerate() {
        sum = sum.add(&t.pow(e as u32).scale(c)).unwrap();
    }
    assert!(alg_eq(&sum, &x));
    let id: ProblemId = "ROOTFIELD:2".parse().unwrap();
    assert!(id.contains(&x).unwrap());
    assert!(matches!("nope".parse::<ProblemId>(), Err(Error::UnknownId(_))));
}
