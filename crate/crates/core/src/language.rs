//! Word combinatorics and language-level predicates: enumeration, follower
//! sets, synchronizing words, transition lengths, irreducibility / mixing /
//! finite-type checks, and automaton language comparison.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::gcd;
use crate::matrix::primitivity_index;
use crate::presentation::Labeled;
use crate::word::{Sym, Word};

/// Forward determinization of a labeled presentation by subset construction
/// from the full state set, then merged down to distinct follower languages.
/// States of the reduced automaton are the canonical follower sets.
#[derive(Debug, Clone)]
pub struct FollowerAutomaton {
    /// Representative subset per state (for reports), sorted base-state ids.
    pub subsets: Vec<Vec<usize>>,
    /// trans[state][symbol]
    pub trans: Vec<Vec<Option<usize>>>,
    pub start: usize,
    pub alphabet_len: usize,
}

impl FollowerAutomaton {
    /// Raw subset construction (no merging).
    pub fn determinize(x: &Labeled) -> FollowerAutomaton {
        let g = x.graph();
        let k = x.alphabet.len();
        let full: Vec<usize> = (0..g.state_count()).collect();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut subsets = vec![full.clone()];
        index.insert(full, 0);
        let mut trans: Vec<Vec<Option<usize>>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            while trans.len() <= q {
                trans.push(vec![None; k]);
            }
            let cur = subsets[q].clone();
            for a in 0..k {
                let mut next = BTreeSet::new();
                for &s in &cur {
                    for &e in g.out_edges(s) {
                        if x.label(e) as usize == a {
                            next.insert(g.dst(e));
                        }
                    }
                }
                if next.is_empty() {
                    continue;
                }
                let next: Vec<usize> = next.into_iter().collect();
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next);
                    queue.push_back(subsets.len() - 1);
                    subsets.len() - 1
                });
                trans[q][a] = Some(id);
            }
        }
        while trans.len() < subsets.len() {
            trans.push(vec![None; k]);
        }
        FollowerAutomaton { subsets, trans, start: 0, alphabet_len: k }
    }

    /// Determinize and merge states with identical follower languages
    /// (Moore partition refinement on the partial automaton).
    pub fn reduced(x: &Labeled) -> FollowerAutomaton {
        let raw = Self::determinize(x);
        let n = raw.subsets.len();
        let k = raw.alphabet_len;
        let mut class = vec![0usize; n];
        loop {
            // Signature: per symbol, class of target or MAX for undefined.
            let mut sig_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut next_class = vec![0usize; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                for a in 0..k {
                    sig.push(match raw.trans[q][a] {
                        Some(r) => class[r],
                        None => usize::MAX,
                    });
                }
                let c = sig_index.len();
                next_class[q] = *sig_index.entry(sig).or_insert(c);
            }
            if next_class == class {
                break;
            }
            class = next_class;
        }
        let count = class.iter().max().map(|&m| m + 1).unwrap_or(0);
        let mut subsets = vec![Vec::new(); count];
        let mut trans = vec![vec![None; k]; count];
        for q in 0..n {
            let c = class[q];
            if subsets[c].is_empty() {
                subsets[c] = raw.subsets[q].clone();
                for a in 0..k {
                    trans[c][a] = raw.trans[q][a].map(|r| class[r]);
                }
            }
        }
        FollowerAutomaton { subsets, trans, start: class[raw.start], alphabet_len: k }
    }

    pub fn state_count(&self) -> usize {
        self.subsets.len()
    }

    pub fn step(&self, q: usize, a: Sym) -> Option<usize> {
        self.trans[q][a as usize]
    }

    pub fn run(&self, from: usize, w: &[Sym]) -> Option<usize> {
        let mut q = from;
        for &a in w {
            q = self.step(q, a)?;
        }
        Some(q)
    }
}

/// Membership of a finite word in the presented language. Presentations are
/// kept essential, so readability on the graph is exactly membership.
pub fn word_in_language(x: &Labeled, w: &[Sym]) -> bool {
    let g = x.graph();
    let mut live: BTreeSet<usize> = (0..g.state_count()).collect();
    for &a in w {
        let mut next = BTreeSet::new();
        for &s in &live {
            for &e in g.out_edges(s) {
                if x.label(e) == a {
                    next.insert(g.dst(e));
                }
            }
        }
        if next.is_empty() {
            return false;
        }
        live = next;
    }
    true
}

/// All words of the given length, lexicographic in symbol order.
pub fn enumerate_words(x: &Labeled, n: usize) -> Result<Vec<Word>> {
    let dfa = FollowerAutomaton::determinize(x);
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Word)> = vec![(dfa.start, Vec::new())];
    // Depth-first with reversed symbol pushes keeps lexicographic order.
    while let Some((q, w)) = stack.pop() {
        if w.len() == n {
            out.push(w);
            continue;
        }
        for a in (0..dfa.alphabet_len).rev() {
            if let Some(r) = dfa.trans[q][a] {
                let mut v = w.clone();
                v.push(a as Sym);
                stack.push((r, v));
            }
        }
    }
    Ok(out)
}

/// Exact count of B_n(X), or of B_n^X(a,b) when endpoints are given, plus an
/// optional listing gated by `list_cap`.
pub fn count_words(
    x: &Labeled,
    n: usize,
    endpoints: Option<(Sym, Sym)>,
    list_cap: Option<usize>,
) -> Result<(BigUint, Option<Vec<Word>>)> {
    let dfa = FollowerAutomaton::determinize(x);
    let count = match endpoints {
        None => count_from(&dfa, dfa.start, n, None),
        Some((a, b)) => {
            if n == 0 {
                BigUint::zero()
            } else if n == 1 {
                if a == b && dfa.trans[dfa.start][a as usize].is_some() {
                    BigUint::from(1u32)
                } else {
                    BigUint::zero()
                }
            } else {
                match dfa.trans[dfa.start][a as usize] {
                    None => BigUint::zero(),
                    Some(q) => count_from(&dfa, q, n - 1, Some(b)),
                }
            }
        }
    };
    let listing = match list_cap {
        None => None,
        Some(cap) => {
            let total: usize = count
                .clone()
                .try_into()
                .map_err(|_| Error::CapExceeded { requested: usize::MAX, cap })?;
            if total > cap {
                return Err(Error::CapExceeded { requested: total, cap });
            }
            let mut words = enumerate_words(x, n)?;
            if let Some((a, b)) = endpoints {
                words.retain(|w| w.first() == Some(&a) && w.last() == Some(&b));
            }
            Some(words)
        }
    };
    Ok((count, listing))
}

/// Number of length-`n` words readable from `q`; when `last` is given, only
/// words ending with that symbol.
fn count_from(dfa: &FollowerAutomaton, q: usize, n: usize, last: Option<Sym>) -> BigUint {
    let m = dfa.state_count();
    // cur[r] = number of completions of the remaining length from r.
    let mut cur = vec![BigUint::zero(); m];
    match last {
        None => cur.iter_mut().for_each(|v| *v = BigUint::from(1u32)),
        Some(b) => {
            // Remaining length 1 must read exactly b.
            if n == 0 {
                return BigUint::zero();
            }
            for r in 0..m {
                if dfa.trans[r][b as usize].is_some() {
                    cur[r] = BigUint::from(1u32);
                }
            }
        }
    }
    let steps = if last.is_some() { n - 1 } else { n };
    for _ in 0..steps {
        let mut next = vec![BigUint::zero(); m];
        for r in 0..m {
            let mut acc = BigUint::zero();
            for a in 0..dfa.alphabet_len {
                if let Some(t) = dfa.trans[r][a] {
                    acc += &cur[t];
                }
            }
            next[r] = acc;
        }
        cur = next;
    }
    cur[q].clone()
}

/// Certificate returned by the synchronizing-word check.
#[derive(Debug, Clone)]
pub enum SyncCertificate {
    /// The follower state every occurrence focuses to.
    Focused(Vec<usize>),
    /// (u, v) with uw, wv admissible but uwv not.
    Violation { u: Word, v: Word },
}

/// Decides whether w is synchronizing: every readable occurrence leads the
/// follower automaton to the same state.
pub fn is_synchronizing_word(x: &Labeled, w: &[Sym]) -> Result<(bool, SyncCertificate)> {
    if !word_in_language(x, w) {
        return Err(Error::WordNotInLanguage(x.render_word(w)));
    }
    let dfa = FollowerAutomaton::reduced(x);
    let mut images: BTreeMap<usize, usize> = BTreeMap::new(); // image -> source state
    for q in 0..dfa.state_count() {
        if let Some(r) = dfa.run(q, w) {
            images.entry(r).or_insert(q);
        }
    }
    if images.len() == 1 {
        let r = *images.keys().next().unwrap();
        return Ok((true, SyncCertificate::Focused(dfa.subsets[r].clone())));
    }
    // Build a violating pair: two reachable contexts u1, u2 with different
    // follower states after w; a word v readable from one but not the other
    // then yields (u, v) with uwv inadmissible.
    let contexts = reachable_contexts(&dfa);
    let mut readable: Vec<(Word, usize)> = Vec::new();
    for (q, u) in contexts {
        if let Some(r) = dfa.run(q, w) {
            readable.push((u, r));
        }
    }
    for i in 0..readable.len() {
        for j in 0..readable.len() {
            let (u1, r1) = &readable[i];
            let (_u2, r2) = &readable[j];
            if r1 == r2 {
                continue;
            }
            // Find v readable from r2 but not from r1 (then u1 w v fails).
            if let Some(v) = distinguishing_word(&dfa, *r2, *r1) {
                return Ok((false, SyncCertificate::Violation { u: u1.clone(), v }));
            }
        }
    }
    // Reduced automaton states have distinct follower languages, so a
    // distinguishing word always exists for some ordered pair.
    unreachable!("reduced follower automaton must distinguish distinct states");
}

/// Shortest context word per reachable state, BFS order.
fn reachable_contexts(dfa: &FollowerAutomaton) -> Vec<(usize, Word)> {
    let mut seen = vec![false; dfa.state_count()];
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(dfa.start, Word::new())]);
    seen[dfa.start] = true;
    while let Some((q, w)) = queue.pop_front() {
        out.push((q, w.clone()));
        for a in 0..dfa.alphabet_len {
            if let Some(r) = dfa.trans[q][a] {
                if !seen[r] {
                    seen[r] = true;
                    let mut v = w.clone();
                    v.push(a as Sym);
                    queue.push_back((r, v));
                }
            }
        }
    }
    out
}

/// Shortest word readable from `from` but not from `other`, if any.
fn distinguishing_word(dfa: &FollowerAutomaton, from: usize, other: usize) -> Option<Word> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(Some(from), Some(other), Word::new())]);
    while let Some((p, q, w)) = queue.pop_front() {
        match (p, q) {
            (Some(_), None) => return Some(w),
            (None, _) => continue,
            (Some(p), Some(q)) => {
                if !seen.insert((p, q)) {
                    continue;
                }
                for a in 0..dfa.alphabet_len {
                    let np = dfa.trans[p][a];
                    if np.is_none() {
                        continue;
                    }
                    let nq = dfa.trans[q][a];
                    let mut v = w.clone();
                    v.push(a as Sym);
                    queue.push_back((np, nq, v));
                }
            }
        }
    }
    None
}

/// Shortest word (lexicographic tie-break) of length <= max_len focusing the
/// follower automaton to a single state.
pub fn find_synchronizing_word(x: &Labeled, max_len: usize) -> Result<Option<Word>> {
    let dfa = FollowerAutomaton::reduced(x);
    for len in 1..=max_len {
        // Admissible words of exactly `len`, generated in lexicographic order.
        let mut frontier: Vec<Word> = vec![Word::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &frontier {
                for a in 0..dfa.alphabet_len {
                    let mut v = w.clone();
                    v.push(a as Sym);
                    if word_in_language(x, &v) {
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        for w in frontier {
            let mut images = BTreeSet::new();
            for q in 0..dfa.state_count() {
                if let Some(r) = dfa.run(q, &w) {
                    images.insert(r);
                }
            }
            if images.len() == 1 {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Transition lengths computed on the presentation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionLengths {
    /// Present only when the presentation graph is primitive (mixing case):
    /// least t with A^n entrywise positive for all n >= t.
    pub transition: Option<usize>,
    /// Least n with A^n positive on every same-phase-class pair of states.
    pub weak: Option<usize>,
}

pub fn transition_lengths(x: &Labeled) -> Result<TransitionLengths> {
    let g = x.graph();
    if !g.is_strongly_connected() {
        return Err(Error::NotIrreducible);
    }
    let transition = primitivity_index(g);
    let (p, phase) = g.phase_classes();
    let n = g.state_count();
    let cap = p * ((n.saturating_sub(1)).pow(2) + 1).max(1);
    let mut weak = None;
    // Boolean powers, stepping through n = 1.. cap.
    let mut reach: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for &(s, d) in g.edges() {
        reach[s][d] = true;
    }
    let base = reach.clone();
    let mut step = 1usize;
    loop {
        let ok = (0..n).all(|i| {
            (0..n).all(|j| phase[i] != phase[j] || reach[i][j])
        });
        if ok {
            weak = Some(step);
            break;
        }
        if step >= cap {
            break;
        }
        reach = bool_mat_mul(&reach, &base);
        step += 1;
    }
    Ok(TransitionLengths { transition, weak })
}

fn bool_mat_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    if b[k][j] {
                        out[i][j] = true;
                    }
                }
            }
        }
    }
    out
}

/// m-step bound decision: least m with no two distinct follower states
/// jointly readable on a common m-word, capped at (state count)^2.
pub fn sft_step(x: &Labeled, cap: Option<usize>) -> Option<usize> {
    let dfa = FollowerAutomaton::reduced(x);
    let n = dfa.state_count();
    let cap = cap.unwrap_or(n * n);
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for p in 0..n {
        for q in 0..n {
            if p != q {
                pairs.insert((p, q));
            }
        }
    }
    for m in 0..=cap {
        if pairs.is_empty() {
            return Some(m);
        }
        // D_{m+1} = pairs with a one-symbol step into D_m (both defined,
        // distinct targets).
        let mut next = BTreeSet::new();
        for p in 0..n {
            for q in 0..n {
                if p == q {
                    continue;
                }
                for a in 0..dfa.alphabet_len {
                    if let (Some(rp), Some(rq)) = (dfa.trans[p][a], dfa.trans[q][a]) {
                        if rp != rq && pairs.contains(&(rp, rq)) {
                            next.insert((p, q));
                            break;
                        }
                    }
                }
            }
        }
        pairs = next;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub irreducible: bool,
    pub mixing: bool,
    pub sft: bool,
}

/// Irreducibility, mixing and finite-type-ness of the presented language.
pub fn classify(x: &Labeled) -> Classification {
    let sft = sft_step(x, None).is_some();
    let irreducible = language_irreducible(x);
    let mixing = irreducible && language_period(x) == 1;
    Classification { irreducible, mixing, sft }
}

/// Language-level irreducibility: for every pair of words u, v some uwv is
/// admissible. Checked over end-state subsets (forward) against start-state
/// subsets (backward) with graph reachability.
pub fn language_irreducible(x: &Labeled) -> bool {
    let g = x.graph();
    let fwd = FollowerAutomaton::determinize(x);
    let bwd = FollowerAutomaton::determinize(&reverse_presentation(x));
    let reach = g.reachable();
    // Reflexive closure: empty joining word is allowed.
    let connects = |e: &Vec<usize>, s: &Vec<usize>| -> bool {
        e.iter().any(|&p| s.iter().any(|&q| p == q || reach[p][q]))
    };
    for esub in &fwd.subsets {
        for ssub in &bwd.subsets {
            // bwd subsets are over the reversed graph; same state ids.
            if !connects(esub, ssub) {
                return false;
            }
        }
    }
    true
}

/// gcd of cycle lengths of the terminal part of the reduced follower
/// automaton; per(X) for irreducible sofic presentations.
pub fn language_period(x: &Labeled) -> usize {
    let dfa = FollowerAutomaton::reduced(x);
    // Graph of defined transitions.
    let mut edges = Vec::new();
    for q in 0..dfa.state_count() {
        for a in 0..dfa.alphabet_len {
            if let Some(r) = dfa.trans[q][a] {
                edges.push((q, r));
            }
        }
    }
    let g = crate::graph::Digraph::new(dfa.state_count(), &edges);
    let (comp, count) = g.sccs();
    // Terminal = no edge leaving the component.
    let mut terminal = vec![true; count];
    for &(s, d) in g.edges() {
        if comp[s] != comp[d] {
            terminal[comp[s]] = false;
        }
    }
    let mut per = 0usize;
    for c in 0..count {
        if !terminal[c] {
            continue;
        }
        let states: Vec<usize> = (0..dfa.state_count()).filter(|&q| comp[q] == c).collect();
        if states.is_empty() {
            continue;
        }
        let index: BTreeMap<usize, usize> = states.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let sub_edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|&&(s, d)| comp[s] == c && comp[d] == c)
            .map(|&(s, d)| (index[&s], index[&d]))
            .collect();
        if sub_edges.is_empty() {
            continue;
        }
        let sub = crate::graph::Digraph::new(states.len(), &sub_edges);
        per = gcd(per, sub.period());
    }
    per.max(1)
}

/// Reverse the presentation: reversed edges, same labels. Its language is
/// the reversal of the original language.
pub fn reverse_presentation(x: &Labeled) -> Labeled {
    let g = x.graph();
    let edges: Vec<(String, usize, usize)> = (0..g.edge_count())
        .map(|e| (x.shift.edge_names[e].clone(), g.dst(e), g.src(e)))
        .collect();
    let shift = crate::presentation::EdgeShift::new(x.shift.states.clone(), edges).unwrap();
    Labeled::new(shift, x.labels.clone(), x.alphabet.clone()).unwrap()
}

/// Language equality of two presentations over symbol names, with a shortest
/// witness in the symmetric difference on failure.
pub fn language_equal(x: &Labeled, y: &Labeled) -> (bool, Option<Vec<String>>) {
    let names: BTreeSet<String> =
        x.alphabet.iter().chain(y.alphabet.iter()).cloned().collect();
    let names: Vec<String> = names.into_iter().collect();
    let dx = FollowerAutomaton::determinize(x);
    let dy = FollowerAutomaton::determinize(y);
    let xsym: Vec<Option<Sym>> = names.iter().map(|n| x.sym(n)).collect();
    let ysym: Vec<Option<Sym>> = names.iter().map(|n| y.sym(n)).collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(Some(dx.start), Some(dy.start), Vec::<String>::new())]);
    seen.insert((Some(dx.start), Some(dy.start)));
    while let Some((p, q, w)) = queue.pop_front() {
        for (i, name) in names.iter().enumerate() {
            let np = p.and_then(|p| xsym[i].and_then(|a| dx.trans[p][a as usize]));
            let nq = q.and_then(|q| ysym[i].and_then(|a| dy.trans[q][a as usize]));
            let mut v = w.clone();
            v.push(name.clone());
            match (np, nq) {
                (None, None) => {}
                (Some(_), Some(_)) => {
                    if seen.insert((np, nq)) {
                        queue.push_back((np, nq, v));
                    }
                }
                _ => return (false, Some(v)),
            }
        }
    }
    (true, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn golden_mean_counts() {
        let x = fixtures::golden_mean();
        let (c3, _) = count_words(&x, 3, None, None).unwrap();
        assert_eq!(c3, BigUint::from(5u32));
        // Brute force cross-check at several lengths.
        for n in 1..=8 {
            let brute = crate::word::all_words(2, n)
                .into_iter()
                .filter(|w| !crate::word::contains(w, &[1, 1]))
                .count();
            let (c, _) = count_words(&x, n, None, None).unwrap();
            assert_eq!(c, BigUint::from(brute));
        }
    }

    #[test]
    fn full_shift_counts() {
        let x = fixtures::full_shift(2);
        let (c, _) = count_words(&x, 5, None, None).unwrap();
        assert_eq!(c, BigUint::from(32u32));
    }

    #[test]
    fn endpoint_counts_brute_force() {
        // B_4^X(1,1) on the golden mean: brute force over 16 candidates
        // leaves only 1001.
        let x = fixtures::golden_mean();
        let (c, list) = count_words(&x, 4, Some((1, 1)), Some(100)).unwrap();
        assert_eq!(c, BigUint::from(1u32));
        assert_eq!(list.unwrap(), vec![vec![1, 0, 0, 1]]);
    }

    #[test]
    fn subadditivity_of_counts() {
        for x in [fixtures::golden_mean(), fixtures::even_shift(), fixtures::full_shift(2)] {
            let counts: Vec<BigUint> =
                (0..=8).map(|n| count_words(&x, n, None, None).unwrap().0).collect();
            for m in 1..=4usize {
                for n in 1..=4usize {
                    assert!(counts[m + n] <= &counts[m] * &counts[n]);
                }
            }
        }
    }

    #[test]
    fn synchronizing_words() {
        let gm = fixtures::golden_mean();
        let (yes, _) = is_synchronizing_word(&gm, &[0]).unwrap();
        assert!(yes);

        let even = fixtures::even_shift();
        let one = even.sym("1").unwrap();
        let zero = even.sym("0").unwrap();
        let (yes, _) = is_synchronizing_word(&even, &[one]).unwrap();
        assert!(yes);
        let (no, cert) = is_synchronizing_word(&even, &[zero]).unwrap();
        assert!(!no);
        if let SyncCertificate::Violation { u, v } = cert {
            // uwv must be inadmissible while uw and wv are admissible.
            let mut uw = u.clone();
            uw.push(zero);
            let mut wv = vec![zero];
            wv.extend_from_slice(&v);
            let mut uwv = u.clone();
            uwv.push(zero);
            uwv.extend_from_slice(&v);
            assert!(word_in_language(&even, &uw));
            assert!(word_in_language(&even, &wv));
            assert!(!word_in_language(&even, &uwv));
        } else {
            panic!("expected violation certificate");
        }
    }

    #[test]
    fn shortest_sync_word() {
        let even = fixtures::even_shift();
        assert_eq!(find_synchronizing_word(&even, 4).unwrap(), Some(vec![1]));
        let gm = fixtures::golden_mean();
        assert_eq!(find_synchronizing_word(&gm, 4).unwrap(), Some(vec![0]));
        let full = fixtures::full_shift(2);
        assert_eq!(find_synchronizing_word(&full, 4).unwrap(), Some(vec![0]));
    }

    #[test]
    fn transition_lengths_fixtures() {
        let full = fixtures::full_shift(2);
        let t = transition_lengths(&full).unwrap();
        assert_eq!(t.transition, Some(1));

        let gm = fixtures::golden_mean();
        let t = transition_lengths(&gm).unwrap();
        assert_eq!(t.transition, Some(2));

        let x = fixtures::example_5_6();
        let t = transition_lengths(&x).unwrap();
        assert_eq!(t.transition, None);
        assert_eq!(t.weak, Some(2));
    }

    #[test]
    fn classify_fixtures() {
        let gm = classify(&fixtures::golden_mean());
        assert_eq!(gm, Classification { irreducible: true, mixing: true, sft: true });

        let even = classify(&fixtures::even_shift());
        assert_eq!(even, Classification { irreducible: true, mixing: true, sft: false });

        let ex = classify(&fixtures::example_5_6());
        assert_eq!(ex, Classification { irreducible: true, mixing: false, sft: true });
    }

    #[test]
    fn mixing_joining_brute_force() {
        // For mixing fixtures: all u,v of length 4 joined by some w of each
        // length from transition-1 up to 10.
        for x in [fixtures::golden_mean(), fixtures::full_shift(2)] {
            let t = transition_lengths(&x).unwrap().transition.unwrap();
            let words4 = enumerate_words(&x, 4).unwrap();
            for n in t.saturating_sub(1)..=6 {
                let gaps = enumerate_words(&x, n).unwrap();
                for u in &words4 {
                    for v in &words4 {
                        let ok = gaps.iter().any(|w| {
                            let mut all = u.clone();
                            all.extend_from_slice(w);
                            all.extend_from_slice(v);
                            word_in_language(&x, &all)
                        });
                        assert!(ok, "no join for {u:?} .. {v:?} at gap {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn sft_step_values() {
        assert_eq!(sft_step(&fixtures::full_shift(2), None), Some(0));
        assert_eq!(sft_step(&fixtures::golden_mean(), None), Some(1));
        assert_eq!(sft_step(&fixtures::even_shift(), None), None);
    }

    #[test]
    fn language_equality_witness() {
        let gm = fixtures::golden_mean();
        let full = fixtures::full_shift(2);
        let (eq, wit) = language_equal(&gm, &full);
        assert!(!eq);
        assert_eq!(wit.unwrap(), vec!["1".to_string(), "1".to_string()]);
        let (eq, _) = language_equal(&gm, &gm);
        assert!(eq);
    }
}
