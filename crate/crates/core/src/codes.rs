//! Sliding block codes: application, 1-block recoding, fiber products,
//! image presentations and surjectivity.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::language;
use crate::presentation::{EdgeShift, Labeled};
use crate::word::{Sym, Word};

/// How the window map is realized. User-supplied codes always carry an
/// explicit table over the admissible windows. Constructed marker codes have
/// windows far too wide to tabulate and evaluate their rule on demand; the
/// phase rule wraps a marker rule for codomains with period above one.
#[derive(Debug, Clone)]
pub enum Rule {
    Table(BTreeMap<Word, Sym>),
    Marker(Box<crate::construct::MarkerRule>),
    Phase(Box<crate::construct::PhaseRule>),
}

/// A block map with memory and anticipation between presentations.
#[derive(Debug, Clone)]
pub struct BlockCode {
    pub domain: Labeled,
    pub codomain: Labeled,
    pub memory: usize,
    pub anticipation: usize,
    pub rule: Rule,
}

impl BlockCode {
    /// Table-backed code. The table must be defined on exactly the
    /// admissible windows; inadmissible windows are errors, not wildcards.
    pub fn new_table(
        domain: Labeled,
        codomain: Labeled,
        memory: usize,
        anticipation: usize,
        table: BTreeMap<Word, Sym>,
    ) -> Result<Self> {
        let window = memory + anticipation + 1;
        let admissible = language::enumerate_words(&domain, window)?;
        for w in &admissible {
            if !table.contains_key(w) {
                return Err(Error::InvalidCode(format!(
                    "window {:?} has no table entry",
                    domain.render_word(w)
                )));
            }
        }
        for (w, &sym) in &table {
            if w.len() != window || !language::word_in_language(&domain, w) {
                return Err(Error::InvalidCode(format!(
                    "table entry {:?} is not an admissible window",
                    domain.render_word(w)
                )));
            }
            if sym as usize >= codomain.alphabet.len() {
                return Err(Error::InvalidCode(format!(
                    "image of {:?} is outside the codomain alphabet",
                    domain.render_word(w)
                )));
            }
        }
        Ok(BlockCode { domain, codomain, memory, anticipation, rule: Rule::Table(table) })
    }

    /// 1-block code from a symbol map.
    pub fn one_block(
        domain: Labeled,
        codomain: Labeled,
        map: &BTreeMap<Sym, Sym>,
    ) -> Result<Self> {
        let table = (0..domain.alphabet.len() as Sym)
            .filter(|a| language::word_in_language(&domain, &[*a]))
            .map(|a| {
                map.get(&a)
                    .map(|&b| (vec![a], b))
                    .ok_or_else(|| Error::InvalidCode(format!("symbol {a} unmapped")))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        BlockCode::new_table(domain, codomain, 0, 0, table)
    }

    pub fn identity(x: &Labeled) -> Self {
        let table = (0..x.alphabet.len() as Sym)
            .filter(|a| language::word_in_language(x, &[*a]))
            .map(|a| (vec![a], a))
            .collect();
        BlockCode {
            domain: x.clone(),
            codomain: x.clone(),
            memory: 0,
            anticipation: 0,
            rule: Rule::Table(table),
        }
    }

    pub fn window(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn is_one_block(&self) -> bool {
        self.memory == 0 && self.anticipation == 0
    }

    /// Image symbol of a single admissible window.
    pub fn eval_window(&self, w: &[Sym]) -> Result<Sym> {
        debug_assert_eq!(w.len(), self.window());
        match &self.rule {
            Rule::Table(t) => t
                .get(w)
                .copied()
                .ok_or_else(|| Error::WordNotInLanguage(self.domain.render_word(w))),
            Rule::Marker(m) => m.eval(w),
            Rule::Phase(p) => p.eval(w),
        }
    }

    /// Central image word: position j of the output reads the window
    /// starting at position j of the input.
    pub fn apply(&self, w: &[Sym]) -> Result<Word> {
        let win = self.window();
        if w.len() < win {
            return Err(Error::TooShort { len: w.len(), window: win });
        }
        if !language::word_in_language(&self.domain, w) {
            return Err(Error::WordNotInLanguage(self.domain.render_word(w)));
        }
        (0..=w.len() - win).map(|j| self.eval_window(&w[j..j + win])).collect()
    }

    /// Symbol map of a 1-block code.
    pub fn symbol_map(&self) -> Result<BTreeMap<Sym, Sym>> {
        if !self.is_one_block() {
            return Err(Error::InvalidCode("not a 1-block code".into()));
        }
        match &self.rule {
            Rule::Table(t) => Ok(t.iter().map(|(w, &s)| (w[0], s)).collect()),
            _ => Err(Error::InvalidCode("computed rules are never 1-block".into())),
        }
    }

    /// Conjugacy code from a presentation onto its N-block presentation:
    /// memory 0, anticipation N-1, each N-window mapped to its block symbol.
    pub fn higher_block_code(x: &Labeled, blocked: &Labeled, n: usize) -> Result<Self> {
        let mut table = BTreeMap::new();
        for w in language::enumerate_words(x, n)? {
            let name = x.render_word(&w).join("");
            let sym = blocked
                .sym(&name)
                .ok_or_else(|| Error::InvalidCode(format!("missing block symbol {name}")))?;
            table.insert(w, sym);
        }
        BlockCode::new_table(x.clone(), blocked.clone(), 0, n - 1, table)
    }

    /// The p-th higher power code gamma(x)_i = x_{[ip, ip+p-1]} realized at
    /// the word level: anticipation p-1, then every p-th output symbol is
    /// meaningful. Word application returns the stride-p contraction.
    pub fn higher_power_code(x: &Labeled, powered: &Labeled, p: usize) -> Result<Self> {
        let mut table = BTreeMap::new();
        for w in language::enumerate_words(x, p)? {
            let name = x.render_word(&w).join("");
            let sym = powered
                .sym(&name)
                .ok_or_else(|| Error::InvalidCode(format!("missing power symbol {name}")))?;
            table.insert(w, sym);
        }
        BlockCode::new_table(x.clone(), powered.clone(), 0, p - 1, table)
    }

}

/// Fiber product of two 1-block codes with a common codomain.
#[derive(Debug, Clone)]
pub struct FiberProduct {
    pub sigma: Labeled,
    pub proj1: BlockCode,
    pub proj2: BlockCode,
}

pub fn fiber_product(phi: &BlockCode, pi: &BlockCode) -> Result<FiberProduct> {
    if !phi.is_one_block() || !pi.is_one_block() {
        return Err(Error::InvalidCode("fiber product requires 1-block codes".into()));
    }
    let phi_map = phi.symbol_map()?;
    let pi_map = pi.symbol_map()?;
    let x = &phi.domain;
    let z = &pi.domain;
    // Common codomain compared by symbol names.
    let img_name = |c: &Labeled, s: Sym| c.alphabet[s as usize].clone();

    let xg = x.graph();
    let zg = z.graph();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut alphabet: Vec<String> = Vec::new();
    let mut alpha_index: BTreeMap<(Sym, Sym), Sym> = BTreeMap::new();
    for ex in 0..xg.edge_count() {
        for ez in 0..zg.edge_count() {
            let (a, c) = (x.label(ex), z.label(ez));
            let ia = phi_map[&a];
            let ic = pi_map[&c];
            if img_name(&phi.codomain, ia) != img_name(&pi.codomain, ic) {
                continue;
            }
            let src = xg.src(ex) * zg.state_count() + zg.src(ez);
            let dst = xg.dst(ex) * zg.state_count() + zg.dst(ez);
            let sym = *alpha_index.entry((a, c)).or_insert_with(|| {
                alphabet.push(format!(
                    "({},{})",
                    x.alphabet[a as usize], z.alphabet[c as usize]
                ));
                (alphabet.len() - 1) as Sym
            });
            edges.push((format!("f{}", edges.len()), src, dst));
            labels.push(sym);
        }
    }
    let states: Vec<String> = (0..xg.state_count() * zg.state_count())
        .map(|i| {
            format!(
                "({},{})",
                x.shift.states[i / zg.state_count()],
                z.shift.states[i % zg.state_count()]
            )
        })
        .collect();
    let label_by_name: BTreeMap<String, Sym> = edges
        .iter()
        .map(|(n, _, _)| n.clone())
        .zip(labels.iter().copied())
        .collect();
    let shift = EdgeShift::new(states, edges)?.trim_essential().map_err(|_| Error::EmptyShift)?;
    let labels: Vec<Sym> = shift.edge_names.iter().map(|n| label_by_name[n]).collect();
    let sigma = Labeled::new(shift, labels, alphabet.clone())?;

    // Projections: pair symbol -> component symbol.
    let mut m1 = BTreeMap::new();
    let mut m2 = BTreeMap::new();
    for ((a, c), &s) in &alpha_index {
        m1.insert(s, *a);
        m2.insert(s, *c);
    }
    let proj1 = BlockCode::one_block(sigma.clone(), x.clone(), &m1)?;
    let proj2 = BlockCode::one_block(sigma.clone(), z.clone(), &m2)?;
    Ok(FiberProduct { sigma, proj1, proj2 })
}

/// Recode to a 1-block code on the higher block presentation; also returns
/// the conjugacy onto the recoded domain.
pub fn recode_one_block(code: &BlockCode) -> Result<(BlockCode, BlockCode)> {
    if code.is_one_block() {
        return Ok((code.clone(), BlockCode::identity(&code.domain)));
    }
    let n = code.window();
    let (blocked, conj) = crate::presentation::higher_block(&code.domain, n)?;
    let mut map = BTreeMap::new();
    for w in language::enumerate_words(&code.domain, n)? {
        let name = code.domain.render_word(&w).join("");
        let sym = blocked
            .sym(&name)
            .ok_or_else(|| Error::InvalidCode(format!("missing block symbol {name}")))?;
        map.insert(sym, code.eval_window(&w)?);
    }
    let one = BlockCode::one_block(blocked, code.codomain.clone(), &map)?;
    Ok((one, conj))
}

/// Labeled presentation of the image of a 1-block code: relabel the domain
/// edges by their images.
pub fn image_presentation(code: &BlockCode) -> Result<Labeled> {
    let map = code.symbol_map()?;
    let x = &code.domain;
    let labels: Vec<Sym> = x.labels.iter().map(|l| map[l]).collect();
    Labeled::new(x.shift.clone(), labels, code.codomain.alphabet.clone())
}

/// Decides whether the (recoded) image language equals B(Y); on failure the
/// witness is a shortest word in the symmetric difference.
pub fn is_factor_onto(code: &BlockCode, y: &Labeled) -> Result<(bool, Option<Vec<String>>)> {
    let one = if code.is_one_block() {
        code.clone()
    } else {
        recode_one_block(code)?.0
    };
    let image = image_presentation(&one)?;
    Ok(language::language_equal(&image, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// The canonical cover of the even shift: golden-mean edge shift onto
    /// the even shift, 1-block.
    pub fn even_cover() -> BlockCode {
        let domain = fixtures::golden_mean().shift.selfnamed();
        let codomain = fixtures::even_shift();
        // e00 -> 1, e01 -> 0, e10 -> 0: 1s at state 0, 0s crossing.
        // Alphabet of domain: e00, e01, e10 in EdgeShift order.
        let map: BTreeMap<Sym, Sym> = [(0, 1), (1, 0), (2, 0)]
            .into_iter()
            .map(|(a, b)| {
                let zero = codomain.sym("0").unwrap();
                let one = codomain.sym("1").unwrap();
                (a as Sym, if b == 0 { zero } else { one })
            })
            .collect();
        BlockCode::one_block(domain, codomain, &map).unwrap()
    }

    #[test]
    fn identity_apply() {
        let x = fixtures::golden_mean();
        let id = BlockCode::identity(&x);
        let w = vec![0, 1, 0, 0, 1];
        assert_eq!(id.apply(&w).unwrap(), w);
    }

    #[test]
    fn apply_windowed() {
        // Identity-of-center 3-block code on the full 2-shift.
        let x = fixtures::full_shift(2);
        let mut table = BTreeMap::new();
        for w in language::enumerate_words(&x, 3).unwrap() {
            table.insert(w.clone(), w[1]);
        }
        let code = BlockCode::new_table(x.clone(), x.clone(), 1, 1, table).unwrap();
        assert_eq!(code.apply(&[0, 1, 0, 0, 1]).unwrap(), vec![1, 0, 0]);
        assert!(matches!(code.apply(&[0, 1]), Err(Error::TooShort { .. })));
    }

    #[test]
    fn overlap_consistency_random() {
        // Images of overlapping windows agree on overlaps.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let code = even_cover();
        let x = &code.domain;
        for _ in 0..50 {
            // Random admissible word of length 12.
            let mut w = Word::new();
            let g = x.graph();
            let mut state = rng.gen_range(0..g.state_count());
            for _ in 0..12 {
                let outs = g.out_edges(state);
                let e = outs[rng.gen_range(0..outs.len())];
                w.push(x.label(e));
                state = g.dst(e);
            }
            let full = code.apply(&w).unwrap();
            let head = code.apply(&w[..8]).unwrap();
            assert_eq!(&full[..head.len()], &head[..]);
        }
    }

    #[test]
    fn even_cover_is_onto() {
        let code = even_cover();
        let (onto, _) = is_factor_onto(&code, &fixtures::even_shift()).unwrap();
        assert!(onto);
    }

    #[test]
    fn constant_code_not_onto_full() {
        let x = fixtures::full_shift(2);
        let y = fixtures::full_shift_on(&["a", "b"]);
        let map: BTreeMap<Sym, Sym> = [(0, 0), (1, 0)].into_iter().collect();
        let code = BlockCode::one_block(x, y.clone(), &map).unwrap();
        let (onto, wit) = is_factor_onto(&code, &y).unwrap();
        assert!(!onto);
        assert_eq!(wit.unwrap(), vec!["b".to_string()]);
    }

    #[test]
    fn recode_one_block_roundtrip() {
        let x = fixtures::full_shift(2);
        let mut table = BTreeMap::new();
        for w in language::enumerate_words(&x, 3).unwrap() {
            table.insert(w.clone(), (w[0] + w[1] + w[2]) % 2);
        }
        let code = BlockCode::new_table(x.clone(), x.clone(), 1, 1, table).unwrap();
        let (one, conj) = recode_one_block(&code).unwrap();
        assert!(one.is_one_block());
        for w in language::enumerate_words(&x, 8).unwrap() {
            let direct = code.apply(&w).unwrap();
            let recoded = one.apply(&conj.apply(&w).unwrap()).unwrap();
            assert_eq!(direct, recoded);
        }
    }

    #[test]
    fn fiber_product_diagonal() {
        let x = fixtures::golden_mean();
        let id = BlockCode::identity(&x);
        let fp = fiber_product(&id, &id).unwrap();
        // Diagonal golden mean: same language as X through proj1.
        let img = image_presentation(&fp.proj1).unwrap();
        let (eq, _) = language::language_equal(&img, &x);
        assert!(eq);
        assert_eq!(fp.sigma.graph().edge_count(), x.graph().edge_count());
    }

    #[test]
    fn fiber_product_even_cover_pair() {
        let phi = even_cover();
        let fp = fiber_product(&phi, &phi).unwrap();
        // proj2 maps onto the golden mean edge shift (the cover domain).
        let (onto, _) = is_factor_onto(&fp.proj2, &phi.domain).unwrap();
        assert!(onto);
        // phi after proj1 equals phi after proj2 on all short words.
        for w in language::enumerate_words(&fp.sigma, 6).unwrap() {
            let a = fp.proj1.apply(&w).unwrap();
            let b = fp.proj2.apply(&w).unwrap();
            assert_eq!(phi.apply(&a).unwrap(), phi.apply(&b).unwrap());
        }
    }

    #[test]
    fn image_presentation_even() {
        let code = even_cover();
        let img = image_presentation(&code).unwrap();
        let (eq, _) = language::language_equal(&img, &fixtures::even_shift());
        assert!(eq);
    }
}
