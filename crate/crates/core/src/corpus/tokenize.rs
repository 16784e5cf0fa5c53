use unicode_properties::{GeneralCategoryGroup, UnicodeGeneralCategory};

/// A line split into word tokens. `len()` is the L of the score functions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TokenizedLine {
    pub tokens: Vec<String>,
}

impl TokenizedLine {
    pub fn new(tokens: Vec<String>) -> Self {
        TokenizedLine { tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    /// Space-joined form, used when writing masked text back out.
    pub fn join(&self) -> String {
        self.tokens.join(" ")
    }
}

fn is_punctuation(c: char) -> bool {
    c.general_category_group() == GeneralCategoryGroup::Punctuation
}

/// Splits on Unicode whitespace, then detaches leading and trailing
/// punctuation characters as one-character tokens. Punctuation inside a word
/// (`don't`, `Jeruzalem-stêd`) stays attached.
pub fn tokenize(text: &str) -> TokenizedLine {
    let mut tokens = Vec::new();
    for chunk in text.split(char::is_whitespace).filter(|c| !c.is_empty()) {
        let head = chunk
            .char_indices()
            .find(|&(_, c)| !is_punctuation(c))
            .map_or(chunk.len(), |(i, _)| i);
        let tail = chunk[head..]
            .char_indices()
            .rev()
            .find(|&(_, c)| !is_punctuation(c))
            .map_or(head, |(i, c)| head + i + c.len_utf8());

        tokens.extend(chunk[..head].chars().map(String::from));
        if head < tail {
            tokens.push(chunk[head..tail].to_string());
        }
        tokens.extend(chunk[tail..].chars().map(String::from));
    }
    TokenizedLine { tokens }
}
