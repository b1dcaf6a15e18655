use kpower_web::{compose_report, homology_report, power_report};

const TIMES_TWO: &str = "ring Z\ndegree 0 rank 1\ndegree 1 rank 1\nd 1\n2\n";

#[test]
fn homology_of_times_two() {
    assert_eq!(homology_report(TIMES_TWO).unwrap(), "H0 = Z/2\nH1 = 0\n");
}

#[test]
fn square_of_times_two() {
    let out = power_report(TIMES_TWO, 2).unwrap();
    assert!(out.contains("H1 = Z/2"), "{out}");
    assert!(out.starts_with("ring Z\n"));
}

#[test]
fn p22() {
    assert_eq!(compose_report(2, 2).unwrap(), "P_{2,2} = e1*e3 - e4");
    assert!(compose_report(0, 3).is_err());
    assert!(compose_report(4, 3).is_err());
}

#[test]
fn bad_input_is_an_error_string() {
    assert!(homology_report("ring W\n").unwrap_err().starts_with("1:6:"));
    assert!(power_report("nonsense", 2).is_err());
}
