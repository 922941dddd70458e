//! Named presentations and codes used across tests, the gallery and the
//! acceptance suite.

use crate::presentation::{EdgeShift, Labeled};
use crate::word::Sym;

/// Golden mean shift, vertex-style presentation: states {0,1}, no 11.
pub fn golden_mean() -> Labeled {
    let shift = EdgeShift::new(
        vec!["0".into(), "1".into()],
        vec![
            ("e00".into(), 0, 0),
            ("e01".into(), 0, 1),
            ("e10".into(), 1, 0),
        ],
    )
    .unwrap();
    Labeled::new(shift, vec![0, 1, 0], vec!["0".into(), "1".into()]).unwrap()
}

/// Full shift on n symbols, single state.
pub fn full_shift(n: usize) -> Labeled {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let edges = names.iter().map(|s| (format!("e{s}"), 0, 0)).collect();
    let shift = EdgeShift::new(vec!["*".into()], edges).unwrap();
    Labeled::new(shift, (0..n as Sym).collect(), names).unwrap()
}

/// Full shift on an explicit alphabet.
pub fn full_shift_on(alphabet: &[&str]) -> Labeled {
    let names: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
    let edges = names.iter().map(|s| (format!("e{s}"), 0, 0)).collect();
    let shift = EdgeShift::new(vec!["*".into()], edges).unwrap();
    Labeled::new(shift, (0..names.len() as Sym).collect(), names).unwrap()
}

/// Even shift: 1s separated by even blocks of 0s; minimal right-resolving
/// presentation with two states.
pub fn even_shift() -> Labeled {
    let shift = EdgeShift::new(
        vec!["A".into(), "B".into()],
        vec![
            ("a1".into(), 0, 0),
            ("a0".into(), 0, 1),
            ("b0".into(), 1, 0),
        ],
    )
    .unwrap();
    Labeled::new(shift, vec![1, 0, 0], vec!["0".into(), "1".into()]).unwrap()
}

/// The period-2 edge shift with adjacency [[0,2],[2,0]]: four edges 1,2
/// from u to v and 3,4 from v to u.
pub fn example_5_6() -> Labeled {
    let shift = EdgeShift::new(
        vec!["u".into(), "v".into()],
        vec![
            ("1".into(), 0, 1),
            ("2".into(), 0, 1),
            ("3".into(), 1, 0),
            ("4".into(), 1, 0),
        ],
    )
    .unwrap();
    shift.selfnamed()
}

/// The two-point orbit {(ab)^inf, (ba)^inf} as a 2-cycle.
pub fn two_cycle() -> Labeled {
    let shift = EdgeShift::new(
        vec!["s".into(), "t".into()],
        vec![("a".into(), 0, 1), ("b".into(), 1, 0)],
    )
    .unwrap();
    shift.selfnamed()
}

/// Single fixed point: one self-loop.
pub fn fixed_point() -> Labeled {
    let shift = EdgeShift::new(vec!["*".into()], vec![("a".into(), 0, 0)]).unwrap();
    shift.selfnamed()
}

/// The strictly sofic shift on {1, 1b, 2, 3} forbidding 1b 2^n 3 for all n
/// ("1b" stands for the barred 1). Two-state right-resolving presentation.
pub fn yoo_domain() -> Labeled {
    let shift = EdgeShift::new(
        vec!["q".into(), "r".into()],
        vec![
            ("q1".into(), 0, 0),
            ("q2".into(), 0, 0),
            ("q3".into(), 0, 0),
            ("q1b".into(), 0, 1),
            ("r2".into(), 1, 1),
            ("r1".into(), 1, 0),
            ("r1b".into(), 1, 1),
        ],
    )
    .unwrap();
    // alphabet order: 1, 1b, 2, 3
    let alphabet = vec!["1".into(), "1b".into(), "2".into(), "3".into()];
    Labeled::new(shift, vec![0, 2, 3, 1, 2, 0, 1], alphabet).unwrap()
}

/// Full 3-shift on {1,2,3}, the codomain of the Yoo example.
pub fn full_3_labels_123() -> Labeled {
    full_shift_on(&["1", "2", "3"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language;

    #[test]
    fn yoo_presentation_language() {
        let x = yoo_domain();
        assert!(x.is_deterministic());
        let w = x.word_from_names(&["1b", "2", "2", "3"]).unwrap();
        assert!(!language::word_in_language(&x, &w));
        let w = x.word_from_names(&["1b", "3"]).unwrap();
        assert!(!language::word_in_language(&x, &w));
        let w = x.word_from_names(&["1b", "2", "2", "1", "3"]).unwrap();
        assert!(language::word_in_language(&x, &w));
        let w = x.word_from_names(&["1", "2", "2", "3"]).unwrap();
        assert!(language::word_in_language(&x, &w));
        let c = language::classify(&x);
        assert!(c.irreducible && c.mixing && !c.sft);
    }
}
