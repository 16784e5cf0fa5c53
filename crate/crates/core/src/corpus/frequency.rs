use rustc_hash::FxHashMap;

use super::TokenizedLine;
use crate::{Error, Result};

pub type TokenId = u32;
pub type NgramId = u32;

/// Highest n-gram order a frequency table may hold.
pub const MAX_ORDER: usize = 8;

/// Interned word types of one language, ids assigned in first-seen order.
#[derive(Debug, Clone, Default)]
pub struct Vocabulary {
    index: FxHashMap<String, TokenId>,
    words: Vec<String>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, word: &str) -> TokenId {
        if let Some(&id) = self.index.get(word) {
            return id;
        }
        let id = self.words.len() as TokenId;
        self.words.push(word.to_string());
        self.index.insert(word.to_string(), id);
        id
    }

    pub fn get(&self, word: &str) -> Option<TokenId> {
        self.index.get(word).copied()
    }

    pub fn word(&self, id: TokenId) -> &str {
        &self.words[id as usize]
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Encodes a line; words outside the vocabulary are interned.
    pub fn encode(&mut self, line: &TokenizedLine) -> Vec<TokenId> {
        line.iter().map(|w| self.intern(w)).collect()
    }

    /// Encodes a line without growing the vocabulary; unknown words map to
    /// `None`.
    pub fn lookup(&self, line: &TokenizedLine) -> Vec<Option<TokenId>> {
        line.iter().map(|w| self.get(w)).collect()
    }
}

/// Occurrence counts of every n-gram of order `1..=max_order` over the full
/// text of one language. N-grams never span two lines.
///
/// Each distinct n-gram gets a dense [`NgramId`]; ids are shared by the
/// coverage bitsets and inverted indexes built on top of the table.
#[derive(Debug, Clone)]
pub struct FrequencyTable {
    language: String,
    max_order: usize,
    vocab: Vocabulary,
    ids: FxHashMap<Box<[TokenId]>, NgramId>,
    counts: Vec<u64>,
    orders: Vec<u8>,
    order_totals: Vec<u64>,
}

impl FrequencyTable {
    pub fn build(language: &str, lines: &[TokenizedLine], max_order: usize) -> Result<Self> {
        Ok(Self::build_encoded(language, lines, max_order)?.0)
    }

    /// Builds the table and, in the same pass, the per-line n-gram id lists.
    pub fn build_encoded(
        language: &str,
        lines: &[TokenizedLine],
        max_order: usize,
    ) -> Result<(Self, EncodedText)> {
        if !(1..=MAX_ORDER).contains(&max_order) {
            return Err(Error::InvalidOrder(max_order));
        }
        let mut table = FrequencyTable {
            language: language.to_string(),
            max_order,
            vocab: Vocabulary::new(),
            ids: FxHashMap::default(),
            counts: Vec::new(),
            orders: Vec::new(),
            order_totals: vec![0; max_order],
        };
        let mut text = EncodedText::with_capacity(max_order, lines.len());

        for line in lines {
            let tokens = table.vocab.encode(line);
            for order in 1..=max_order {
                for window in tokens.windows(order) {
                    let id = match table.ids.get(window) {
                        Some(&id) => id,
                        None => {
                            let id = table.counts.len() as NgramId;
                            table.ids.insert(window.into(), id);
                            table.counts.push(0);
                            table.orders.push(order as u8);
                            id
                        }
                    };
                    table.counts[id as usize] += 1;
                    table.order_totals[order - 1] += 1;
                    text.grams.push(id);
                }
                text.bounds.push(text.grams.len() as u32);
            }
            text.lens.push(tokens.len() as u32);
        }
        Ok((table, text))
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    /// Number of distinct n-grams across all orders.
    pub fn num_ngrams(&self) -> usize {
        self.counts.len()
    }

    /// F(g) for an n-gram id.
    #[inline]
    pub fn frequency(&self, id: NgramId) -> u64 {
        self.counts[id as usize]
    }

    pub fn order_of(&self, id: NgramId) -> usize {
        self.orders[id as usize] as usize
    }

    /// F(g) for an n-gram given as words; 0 when unseen or longer than the
    /// table's order.
    pub fn count<S: AsRef<str>>(&self, gram: &[S]) -> u64 {
        self.id_of(gram).map_or(0, |id| self.frequency(id))
    }

    pub fn id_of<S: AsRef<str>>(&self, gram: &[S]) -> Option<NgramId> {
        if gram.is_empty() || gram.len() > self.max_order {
            return None;
        }
        let tokens: Option<Vec<TokenId>> = gram.iter().map(|w| self.vocab.get(w.as_ref())).collect();
        self.ids.get(tokens?.as_slice()).copied()
    }

    /// Sum of all order-`order` counts, i.e. Σ over lines of max(L - order + 1, 0).
    pub fn order_total(&self, order: usize) -> u64 {
        self.order_totals.get(order.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// Words of the n-gram with the given id.
    pub fn words_of(&self, id: NgramId) -> Vec<&str> {
        // Reverse lookup is only used for diagnostics; a scan is fine.
        self.ids
            .iter()
            .find(|(_, &v)| v == id)
            .map(|(k, _)| k.iter().map(|&t| self.vocab.word(t)).collect())
            .unwrap_or_default()
    }

    /// Encodes lines that were not part of the table's text. N-grams absent
    /// from the table have F = 0 and are dropped.
    pub fn encode(&self, lines: &[TokenizedLine]) -> EncodedText {
        let mut text = EncodedText::with_capacity(self.max_order, lines.len());
        for line in lines {
            let tokens = self.vocab.lookup(line);
            for order in 1..=self.max_order {
                for window in tokens.windows(order) {
                    let known: Option<Vec<TokenId>> = window.iter().copied().collect();
                    if let Some(id) = known.and_then(|k| self.ids.get(k.as_slice()).copied()) {
                        text.grams.push(id);
                    }
                }
                text.bounds.push(text.grams.len() as u32);
            }
            text.lens.push(tokens.len() as u32);
        }
        text
    }
}

/// N-gram ids of every line, grouped by order, stored flat.
#[derive(Debug, Clone)]
pub struct EncodedText {
    max_order: usize,
    lens: Vec<u32>,
    // bounds[line * max_order + j] is the end of order j+1 within `grams`;
    // bounds[0] = 0.
    bounds: Vec<u32>,
    grams: Vec<NgramId>,
}

impl EncodedText {
    fn with_capacity(max_order: usize, lines: usize) -> Self {
        let mut bounds = Vec::with_capacity(lines * max_order + 1);
        bounds.push(0);
        EncodedText {
            max_order,
            lens: Vec::with_capacity(lines),
            bounds,
            grams: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.lens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lens.is_empty()
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn line(&self, i: usize) -> LineGrams<'_> {
        let start = i * self.max_order;
        LineGrams {
            len: self.lens[i] as usize,
            bounds: &self.bounds[start..=start + self.max_order],
            grams: &self.grams,
        }
    }

    pub fn lines(&self) -> impl Iterator<Item = LineGrams<'_>> + '_ {
        (0..self.len()).map(|i| self.line(i))
    }
}

/// View of one encoded line.
#[derive(Debug, Clone, Copy)]
pub struct LineGrams<'a> {
    len: usize,
    bounds: &'a [u32],
    grams: &'a [NgramId],
}

impl<'a> LineGrams<'a> {
    /// Token count L.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn max_order(&self) -> usize {
        self.bounds.len() - 1
    }

    /// Ids of the order-`order` n-grams, in position order (duplicates kept).
    pub fn order(&self, order: usize) -> &'a [NgramId] {
        &self.grams[self.bounds[order - 1] as usize..self.bounds[order] as usize]
    }

    /// Ids of all n-grams of orders `1..=order`.
    pub fn up_to(&self, order: usize) -> &'a [NgramId] {
        &self.grams[self.bounds[0] as usize..self.bounds[order] as usize]
    }

    pub fn all(&self) -> &'a [NgramId] {
        self.up_to(self.max_order())
    }
}
