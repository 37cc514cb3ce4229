mod common;

use std::path::PathBuf;

use common::*;
use cyclic_jobshop::schedule::{decode, render_gantt, validate, GanttFormat, OperationPermutation};

/// An optimal (makespan 55) ft06 permutation.
const FT06_OPTIMAL: [usize; 36] = [
    1, 2, 0, 2, 0, 1, 3, 2, 1, 3, 4, 5, 0, 5, 2, 5, 0, 3, 4, 4, 2, 1, 5, 3, 2, 3, 0, 1, 4, 3, 5, 1, 4, 0, 5, 4,
];

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against the committed file; set `UPDATE_GOLDEN=1` to rewrite it.
fn check_golden(name: &str, actual: &[u8]) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from the golden file");
}

#[test]
fn ft06_optimal_gantt() {
    let inst = corpus_instance("ft06");
    let perm = OperationPermutation::new(&inst, FT06_OPTIMAL.to_vec()).unwrap();
    let sched = decode(&inst, &perm).unwrap();
    assert_eq!(sched.makespan, 55);
    assert!(validate(&inst, &sched).is_empty());

    let svg = render_gantt(&sched, GanttFormat::Svg).unwrap();
    assert_eq!(svg, render_gantt(&sched, GanttFormat::Svg).unwrap());
    assert_eq!(String::from_utf8_lossy(&svg).matches(r#"<rect class="op""#).count(), 36);
    check_golden("ft06_optimal.svg", &svg);

    let ascii = render_gantt(&sched, GanttFormat::Ascii).unwrap();
    let text = String::from_utf8(ascii.clone()).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.len() == "M0 |".len() + 55 + 1));
    check_golden("ft06_optimal.txt", &ascii);
}
