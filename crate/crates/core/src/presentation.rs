//! Presentations of shift spaces: edge shifts, labeled (sofic) presentations,
//! forbidden-word compilations, S-gap shifts and block recodings.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::language;
use crate::word::{Sym, Word};

/// A directed multigraph presenting an SFT: the edge shift of the graph.
/// Edge ids are names carried for documents and reports.
#[derive(Debug, Clone)]
pub struct EdgeShift {
    pub states: Vec<String>,
    pub edge_names: Vec<String>,
    pub graph: Digraph,
}

impl EdgeShift {
    pub fn new(states: Vec<String>, edges: Vec<(String, usize, usize)>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (name, s, d) in &edges {
            if seen.insert(name.clone(), ()).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate edge id {name}")));
            }
            if *s >= states.len() || *d >= states.len() {
                return Err(Error::InvalidPresentation(format!(
                    "edge {name} references a missing state"
                )));
            }
        }
        let pairs: Vec<(usize, usize)> = edges.iter().map(|&(_, s, d)| (s, d)).collect();
        let edge_names = edges.into_iter().map(|(n, _, _)| n).collect();
        let graph = Digraph::new(states.len(), &pairs);
        Ok(EdgeShift { states, edge_names, graph })
    }

    /// Iteratively removes states lacking in- or out-edges. Errors with
    /// `EmptyShift` when nothing survives.
    pub fn trim_essential(&self) -> Result<EdgeShift> {
        let alive = self.graph.essential_states();
        if alive.iter().all(|&a| a) {
            return Ok(self.clone());
        }
        let mut state_map = vec![usize::MAX; self.states.len()];
        let mut states = Vec::new();
        for (i, &a) in alive.iter().enumerate() {
            if a {
                state_map[i] = states.len();
                states.push(self.states[i].clone());
            }
        }
        if states.is_empty() {
            return Err(Error::EmptyShift);
        }
        let mut edges = Vec::new();
        for e in 0..self.graph.edge_count() {
            let (s, d) = (self.graph.src(e), self.graph.dst(e));
            if alive[s] && alive[d] {
                edges.push((self.edge_names[e].clone(), state_map[s], state_map[d]));
            }
        }
        EdgeShift::new(states, edges)
    }

    pub fn is_essential(&self) -> bool {
        self.graph.essential_states().iter().all(|&a| a)
    }

    /// The edge shift as a labeled presentation: each edge labeled by its own
    /// name, so the labeling is injective and the presentation deterministic.
    pub fn selfnamed(&self) -> Labeled {
        Labeled {
            shift: self.clone(),
            labels: (0..self.edge_names.len() as Sym).collect(),
            alphabet: self.edge_names.clone(),
        }
    }
}

/// An edge shift plus an edge labeling: a presentation of a sofic shift.
#[derive(Debug, Clone)]
pub struct Labeled {
    pub shift: EdgeShift,
    /// Per-edge label, an index into `alphabet`.
    pub labels: Vec<Sym>,
    pub alphabet: Vec<String>,
}

impl Labeled {
    pub fn new(shift: EdgeShift, labels: Vec<Sym>, alphabet: Vec<String>) -> Result<Self> {
        if labels.len() != shift.graph.edge_count() {
            return Err(Error::InvalidPresentation("every edge must be labeled".into()));
        }
        if labels.iter().any(|&l| l as usize >= alphabet.len()) {
            return Err(Error::InvalidPresentation("label outside the alphabet".into()));
        }
        Ok(Labeled { shift, labels, alphabet })
    }

    pub fn graph(&self) -> &Digraph {
        &self.shift.graph
    }

    pub fn label(&self, edge: usize) -> Sym {
        self.labels[edge]
    }

    /// True when no state has two out-edges with equal labels
    /// (right-resolving).
    pub fn is_deterministic(&self) -> bool {
        for s in 0..self.graph().state_count() {
            let mut seen = std::collections::BTreeSet::new();
            for &e in self.graph().out_edges(s) {
                if !seen.insert(self.labels[e]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn trim_essential(&self) -> Result<Labeled> {
        let alive = self.graph().essential_states();
        if alive.iter().all(|&a| a) {
            return Ok(self.clone());
        }
        let trimmed = self.shift.trim_essential()?;
        // Re-associate labels by edge name.
        let by_name: BTreeMap<&String, Sym> =
            self.shift.edge_names.iter().zip(self.labels.iter().copied()).collect();
        let labels = trimmed.edge_names.iter().map(|n| by_name[n]).collect();
        Labeled::new(trimmed, labels, self.alphabet.clone())
    }

    pub fn render_word(&self, w: &[Sym]) -> Vec<String> {
        crate::word::render(w, &self.alphabet)
    }

    pub fn sym(&self, name: &str) -> Option<Sym> {
        self.alphabet.iter().position(|a| a == name).map(|i| i as Sym)
    }

    pub fn word_from_names(&self, names: &[&str]) -> Option<Word> {
        names.iter().map(|n| self.sym(n)).collect()
    }
}

/// Finite set of forbidden words over an alphabet.
#[derive(Debug, Clone)]
pub struct ForbiddenWordSpec {
    pub alphabet: Vec<String>,
    pub forbidden: Vec<Word>,
}

impl ForbiddenWordSpec {
    pub fn new(alphabet: Vec<String>, forbidden: Vec<Word>) -> Result<Self> {
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::InvalidPresentation("forbidden word may not be empty".into()));
            }
            if w.iter().any(|&s| s as usize >= alphabet.len()) {
                return Err(Error::InvalidPresentation(
                    "forbidden word uses a symbol outside the alphabet".into(),
                ));
            }
        }
        Ok(ForbiddenWordSpec { alphabet, forbidden })
    }
}

/// Compile a forbidden-word SFT into an essential labeled presentation via
/// the (m-1)-block follower graph, m the maximal forbidden length.
pub fn compile_forbidden(spec: &ForbiddenWordSpec) -> Result<Labeled> {
    let k = spec.alphabet.len();
    let m = spec.forbidden.iter().map(|w| w.len()).max().unwrap_or(1);
    let clean = |w: &[Sym]| -> bool { !spec.forbidden.iter().any(|f| crate::word::contains(w, f)) };

    // States: clean words of length m-1. Edges: clean words of length m.
    let mut states: Vec<Word> = Vec::new();
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    for w in crate::word::all_words(k, m - 1) {
        if clean(&w) {
            index.insert(w.clone(), states.len());
            states.push(w);
        }
    }
    let mut edges: Vec<(String, usize, usize)> = Vec::new();
    let mut label_by_name: BTreeMap<String, Sym> = BTreeMap::new();
    for (w, &si) in &index {
        for a in 0..k as Sym {
            let mut full = w.clone();
            full.push(a);
            if !clean(&full) {
                continue;
            }
            let suffix: Word = full[1..].to_vec();
            if let Some(&di) = index.get(&suffix) {
                let name = format!("e{}", edges.len());
                label_by_name.insert(name.clone(), a);
                edges.push((name, si, di));
            }
        }
    }
    let state_names = states
        .iter()
        .map(|w| {
            if w.is_empty() {
                "·".to_string()
            } else {
                crate::word::render(w, &spec.alphabet).join("")
            }
        })
        .collect();
    let shift = EdgeShift::new(state_names, edges)?.trim_essential()?;
    let labels = shift.edge_names.iter().map(|n| label_by_name[n]).collect();
    Labeled::new(shift, labels, spec.alphabet.clone())
}

/// How an S-gap set is described: an explicit finite set or a named rule
/// consulted through an enumeration bound.
#[derive(Debug, Clone)]
pub enum SGapSet {
    Explicit(Vec<u64>),
    Rule { name: String, member: fn(u64) -> bool },
}

#[derive(Debug, Clone)]
pub struct SGapDescriptor {
    pub set: SGapSet,
    /// Largest gap value consulted when the set is rule based.
    pub bound: u64,
    pub known_sup_gap: Option<u64>,
    pub known_gcd: Option<u64>,
}

impl SGapDescriptor {
    pub fn explicit(mut members: Vec<u64>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::EmptyShift);
        }
        let bound = *members.last().unwrap();
        Ok(SGapDescriptor { set: SGapSet::Explicit(members), bound, known_sup_gap: None, known_gcd: None })
    }

    pub fn rule(name: &str, member: fn(u64) -> bool, bound: u64) -> Self {
        SGapDescriptor {
            set: SGapSet::Rule { name: name.to_string(), member },
            bound,
            known_sup_gap: None,
            known_gcd: None,
        }
    }

    /// Members up to the enumeration bound, sorted.
    pub fn members(&self) -> Vec<u64> {
        match &self.set {
            SGapSet::Explicit(m) => m.clone(),
            SGapSet::Rule { member, .. } => (0..=self.bound).filter(|&n| member(n)).collect(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.set, SGapSet::Explicit(_))
    }
}

/// Presentation of the S-gap shift: cycles of 0-runs returning to the
/// 1-state. Exact for explicit finite S; an inner approximation (flagged by
/// the caller through `is_exact`) for rule-based S truncated at the bound.
pub fn sgap_presentation(s: &SGapDescriptor, truncation: u64) -> Result<Labeled> {
    let members: Vec<u64> = s.members().into_iter().filter(|&n| n <= truncation).collect();
    if members.is_empty() {
        return Err(Error::EmptyShift);
    }
    let max = *members.last().unwrap() as usize;
    // State i = "i more zeros before the next 1". State 0 emits the next 1.
    let states: Vec<String> = (0..=max).map(|i| format!("g{i}")).collect();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    for &n in &members {
        edges.push((format!("one_to_{n}"), 0usize, n as usize));
        labels.push(1u32);
    }
    for i in 1..=max {
        edges.push((format!("zero_{i}"), i, i - 1));
        labels.push(0u32);
    }
    let shift = EdgeShift::new(states, edges)?.trim_essential()?;
    let by_name: BTreeMap<String, Sym> = members
        .iter()
        .map(|&n| (format!("one_to_{n}"), 1u32))
        .chain((1..=max).map(|i| (format!("zero_{i}"), 0u32)))
        .collect();
    let labels = shift.edge_names.iter().map(|n| by_name[n]).collect();
    Labeled::new(shift, labels, vec!["0".into(), "1".into()])
}

/// The N-th higher block presentation together with the recoding.
///
/// For inputs whose language is an SFT with step `<= N` the de Bruijn word
/// graph is used (states are N-blocks). Otherwise the presentation-path
/// construction keeps the language exact for strictly sofic inputs.
pub fn higher_block(x: &Labeled, n: usize) -> Result<(Labeled, crate::codes::BlockCode)> {
    assert!(n >= 1, "block length must be positive");
    let rec = if language::sft_step(x, None).map(|m| m <= n.saturating_sub(1)).unwrap_or(false)
        || n == 1
    {
        block_word_presentation(x, n)?
    } else {
        block_path_presentation(x, n)?
    };
    let code = crate::codes::BlockCode::higher_block_code(x, &rec, n)?;
    Ok((rec, code))
}

/// De Bruijn presentation on N-blocks: states are words of length N, edges
/// are words of length N+1, each edge labeled by its prefix N-block.
pub fn block_word_presentation(x: &Labeled, n: usize) -> Result<Labeled> {
    let blocks = language::enumerate_words(x, n)?;
    let longer = language::enumerate_words(x, n + 1)?;
    let mut index = BTreeMap::new();
    let mut alphabet = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        index.insert(b.clone(), i);
        alphabet.push(x.render_word(b).join(""));
    }
    let states: Vec<String> = alphabet.clone();
    let mut edges = Vec::new();
    for w in &longer {
        let src = index[&w[..n].to_vec()];
        let dst = index[&w[1..].to_vec()];
        edges.push((x.render_word(w).join(""), src, dst));
    }
    let shift = EdgeShift::new(states, edges)?.trim_essential()?;
    let by_name: BTreeMap<String, Sym> = longer
        .iter()
        .map(|w| (x.render_word(w).join(""), index[&w[..n].to_vec()] as Sym))
        .collect();
    let labels = shift.edge_names.iter().map(|nm| by_name[nm]).collect();
    Labeled::new(shift, labels, alphabet)
}

/// Presentation-path construction: states are paths of length N-1 in the
/// base graph, edges are paths of length N labeled by their N-label-word.
/// Exact for every input.
pub fn block_path_presentation(x: &Labeled, n: usize) -> Result<Labeled> {
    let g = x.graph();
    // Enumerate paths of length n-1 (states) and n (edges).
    let mut state_paths: Vec<Vec<usize>> = Vec::new();
    let mut state_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n.saturating_sub(1) {
        let mut next = Vec::new();
        for p in &frontier {
            let outs: Vec<usize> = if let Some(&last) = p.last() {
                g.out_edges(g.dst(last)).to_vec()
            } else {
                (0..g.edge_count()).collect()
            };
            for e in outs {
                let mut q = p.clone();
                q.push(e);
                next.push(q);
            }
        }
        frontier = next;
    }
    for p in frontier {
        state_index.insert(p.clone(), state_paths.len());
        state_paths.push(p);
    }

    // Block symbols: distinct N-label-words.
    let mut alphabet: Vec<String> = Vec::new();
    let mut alpha_index: BTreeMap<Word, Sym> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut edge_label_by_name: BTreeMap<String, Sym> = BTreeMap::new();
    for (p, &si) in &state_index {
        let outs: Vec<usize> = if let Some(&last) = p.last() {
            g.out_edges(g.dst(last)).to_vec()
        } else {
            (0..g.edge_count()).collect()
        };
        for e in outs {
            let mut full = p.clone();
            full.push(e);
            let word: Word = full.iter().map(|&ed| x.label(ed)).collect();
            let sym = *alpha_index.entry(word.clone()).or_insert_with(|| {
                alphabet.push(x.render_word(&word).join(""));
                (alphabet.len() - 1) as Sym
            });
            let dst = state_index[&full[1..].to_vec()];
            let name = format!("p{}", edges.len());
            edge_label_by_name.insert(name.clone(), sym);
            edges.push((name, si, dst));
            labels.push(sym);
        }
    }
    let states = state_paths
        .iter()
        .map(|p| {
            if p.is_empty() {
                "·".into()
            } else {
                p.iter().map(|&e| x.shift.edge_names[e].clone()).collect::<Vec<_>>().join("|")
            }
        })
        .collect();
    let shift = EdgeShift::new(states, edges)?.trim_essential()?;
    let labels = shift.edge_names.iter().map(|nm| edge_label_by_name[nm]).collect();
    Labeled::new(shift, labels, alphabet)
}

/// The p-th higher power presentation and the power recoding
/// `gamma(x)_i = x_{[ip, ip+p-1]}`.
pub fn higher_power(x: &Labeled, p: usize) -> Result<(Labeled, crate::codes::BlockCode)> {
    assert!(p >= 1, "power must be positive");
    let rec = power_presentation(x, p, None)?;
    let code = crate::codes::BlockCode::higher_power_code(x, &rec, p)?;
    Ok((rec, code))
}

/// Power presentation on the base graph: states unchanged, edges are paths
/// of length p labeled by their p-label-word. `phase_filter` optionally
/// restricts start states (used by the cyclic cover).
pub fn power_presentation(x: &Labeled, p: usize, phase_filter: Option<&[bool]>) -> Result<Labeled> {
    let g = x.graph();
    let mut alphabet: Vec<String> = Vec::new();
    let mut alpha_index: BTreeMap<Word, Sym> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut labels_by_name: BTreeMap<String, Sym> = BTreeMap::new();
    let mut labels = Vec::new();

    // Enumerate paths of length p from each admissible start state.
    for s in 0..g.state_count() {
        if let Some(f) = phase_filter {
            if !f[s] {
                continue;
            }
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(s, vec![])];
        while let Some((cur, path)) = stack.pop() {
            if path.len() == p {
                if let Some(f) = phase_filter {
                    if !f[cur] {
                        continue;
                    }
                }
                let word: Word = path.iter().map(|&e| x.label(e)).collect();
                let sym = *alpha_index.entry(word.clone()).or_insert_with(|| {
                    alphabet.push(x.render_word(&word).join(""));
                    (alphabet.len() - 1) as Sym
                });
                let name = format!("q{}", edges.len());
                labels_by_name.insert(name.clone(), sym);
                edges.push((name, s, cur));
                labels.push(sym);
                continue;
            }
            for &e in g.out_edges(cur) {
                let mut q = path.clone();
                q.push(e);
                stack.push((g.dst(e), q));
            }
        }
    }
    let shift = EdgeShift::new(x.shift.states.clone(), edges)?.trim_essential()?;
    let labels = shift.edge_names.iter().map(|nm| labels_by_name[nm]).collect();
    Labeled::new(shift, labels, alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn golden_mean_compiles_to_two_states() {
        let spec = ForbiddenWordSpec::new(vec!["0".into(), "1".into()], vec![vec![1, 1]]).unwrap();
        let x = compile_forbidden(&spec).unwrap();
        assert_eq!(x.graph().state_count(), 2);
        assert_eq!(x.graph().edge_count(), 3);
        assert!(x.is_deterministic());
    }

    #[test]
    fn empty_forbidden_set_gives_full_shift() {
        let spec = ForbiddenWordSpec::new(vec!["a".into()], vec![]).unwrap();
        let x = compile_forbidden(&spec).unwrap();
        assert_eq!(x.graph().state_count(), 1);
        assert_eq!(x.graph().edge_count(), 1);
    }

    #[test]
    fn everything_forbidden_is_empty() {
        let spec =
            ForbiddenWordSpec::new(vec!["a".into()], vec![vec![0]]).unwrap();
        assert!(matches!(compile_forbidden(&spec), Err(Error::EmptyShift)));
    }

    #[test]
    fn trim_is_idempotent_and_rejects_acyclic() {
        let chain = EdgeShift::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![("e0".into(), 0, 1), ("e1".into(), 1, 2)],
        )
        .unwrap();
        assert!(matches!(chain.trim_essential(), Err(Error::EmptyShift)));

        let x = fixtures::golden_mean();
        let t = x.trim_essential().unwrap();
        assert_eq!(t.graph().edge_count(), x.graph().edge_count());
    }

    #[test]
    fn sgap_explicit_small() {
        let s = SGapDescriptor::explicit(vec![1, 2]).unwrap();
        let x = sgap_presentation(&s, 10).unwrap();
        assert_eq!(x.graph().state_count(), 3);
        // 101 and 1001 admissible, 11 and 10001 not.
        assert!(language::word_in_language(&x, &[1, 0, 1]));
        assert!(language::word_in_language(&x, &[1, 0, 0, 1]));
        assert!(!language::word_in_language(&x, &[1, 1]));
        assert!(!language::word_in_language(&x, &[1, 0, 0, 0, 1]));
    }

    #[test]
    fn sgap_zero_only_is_all_ones_loop() {
        let s = SGapDescriptor::explicit(vec![0]).unwrap();
        let x = sgap_presentation(&s, 10).unwrap();
        assert_eq!(x.graph().state_count(), 1);
        assert_eq!(x.graph().edge_count(), 1);
        assert_eq!(x.alphabet[x.labels[0] as usize], "1");
    }

    #[test]
    fn sgap_language_characterization_brute_force() {
        // A word is admissible iff every maximal internal 0-run length lies
        // in S (checked to length 12 per the module contract; 10 here keeps
        // the test fast while still crossing every state).
        let s = SGapDescriptor::explicit(vec![1, 2]).unwrap();
        let x = sgap_presentation(&s, 10).unwrap();
        let in_s = |g: usize| g == 1 || g == 2;
        for len in 1..=10usize {
            for w in crate::word::all_words(2, len) {
                let ones: Vec<usize> = (0..len).filter(|&i| w[i] == 1).collect();
                let mut ok = true;
                // Every gap between consecutive 1s (including gap 0) must
                // lie in S; border 0-runs must extend to a member of S.
                for pair in ones.windows(2) {
                    if !in_s(pair[1] - pair[0] - 1) {
                        ok = false;
                    }
                }
                let (prefix, suffix) = match (ones.first(), ones.last()) {
                    (Some(&f), Some(&l)) => (f, len - 1 - l),
                    _ => (len, len),
                };
                if prefix > 2 || suffix > 2 {
                    ok = false;
                }
                assert_eq!(
                    language::word_in_language(&x, &w),
                    ok,
                    "word {:?} mismatch",
                    w
                );
            }
        }
    }
}
