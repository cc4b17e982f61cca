use std::io::Cursor;

use het::checks::{run_check, run_witness, Verdict};
use het::core::energy::{energy_of, EnergyKind};
use het::core::{GSet, GroupSpec};
use het::format::{EnergyJson, SetJson, TupleSetJson};
use het::suite::{read_jsonl, write_jsonl};

#[test]
fn set_json_round_trips() {
    let text = r#"{"group":[4,8],"set":[0,3,17,31]}"#;
    let s: SetJson = serde_json::from_str(text).unwrap();
    let a = s.to_set().unwrap();
    assert_eq!(a.len(), 4);
    assert_eq!(serde_json::to_string(&SetJson::from_set(&a)).unwrap(), text);
}

#[test]
fn out_of_range_elements_are_rejected() {
    let s = SetJson { group: vec![5], set: vec![5] };
    assert!(s.to_set().is_err());
    let bad = SetJson { group: vec![0], set: vec![] };
    assert!(bad.to_set().is_err());
}

#[test]
fn unsorted_input_is_sorted_and_repeats_rejected() {
    let s = SetJson { group: vec![16], set: vec![9, 2, 5] };
    assert_eq!(SetJson::from_set(&s.to_set().unwrap()).set, vec![2, 5, 9]);
    let s = SetJson { group: vec![16], set: vec![9, 2, 2] };
    assert!(s.to_set().is_err());
}

#[test]
fn tuple_json_round_trips() {
    let g = GroupSpec::cyclic(5).unwrap();
    let a = GSet::from_indices(&g, [0, 1]).unwrap();
    let t = het::core::sets::higher_diff(&[a.clone(), a.clone()], &a).unwrap();
    let j = TupleSetJson::from_tuples(&t);
    let back: TupleSetJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(back.to_tuples().unwrap(), t);
    assert_eq!(t.len(), 7);
}

#[test]
fn energy_json_keeps_exact_integers() {
    let g = GroupSpec::cyclic(7).unwrap();
    let a = GSet::from_indices(&g, [0, 1, 2]).unwrap();
    let e = EnergyJson::from_value(&energy_of(&a, EnergyKind::E2).unwrap());
    assert_eq!(serde_json::to_string(&e).unwrap(), r#"{"kind":"E2","value":19}"#);
    let h = EnergyJson::from_value(&energy_of(&a, EnergyKind::Ealpha(1.5)).unwrap());
    let v: serde_json::Value = serde_json::to_value(&h).unwrap();
    assert_eq!(v["kind"], "Ealpha(1.5)");
    assert!(v["value"].is_f64());
}

#[test]
fn reports_round_trip_through_jsonl() {
    let reports: Vec<_> = (0..5).map(|s| run_check("energy_kl_symmetry", s).unwrap()).collect();
    let mut buf = Vec::new();
    write_jsonl(&reports, &mut buf).unwrap();
    let back = read_jsonl(Cursor::new(&buf)).unwrap();
    assert_eq!(back.len(), 5);
    for (a, b) in reports.iter().zip(&back) {
        assert_eq!(a.seed, b.seed);
        assert_eq!(a.lhs, b.lhs);
        assert_eq!(a.ratio, Some(1.0));
        assert_eq!(run_witness(b).unwrap().verdict, Verdict::Pass);
    }
}

#[test]
fn unknown_checks_are_errors() {
    assert!(run_check("no_such_check", 0).is_err());
}
