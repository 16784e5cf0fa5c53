use std::collections::HashSet;
use std::path::Path;

use crate::{Error, Result};

/// Descriptive data about one language of the corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Language {
    pub code: String,
    pub name: String,
    pub family: Option<String>,
    pub speakers: Option<u64>,
    /// Resource level on the 0 (none) to 5 (rich) scale.
    pub resource_level: u8,
    pub neighbors: Vec<String>,
}

/// A validated set of [`Language`] records.
#[derive(Debug, Clone, Default)]
pub struct LanguageMetadata {
    languages: Vec<Language>,
}

impl LanguageMetadata {
    pub fn new(languages: Vec<Language>) -> Result<Self> {
        let mut codes = HashSet::new();
        for lang in &languages {
            if !codes.insert(lang.code.as_str()) {
                return Err(Error::InvalidMetadata(format!("duplicate code `{}`", lang.code)));
            }
            if lang.resource_level > 5 {
                return Err(Error::InvalidMetadata(format!(
                    "`{}` has resource level {}, expected 0-5",
                    lang.code, lang.resource_level
                )));
            }
        }
        for lang in &languages {
            if let Some(n) = lang.neighbors.iter().find(|n| !codes.contains(n.as_str())) {
                return Err(Error::InvalidMetadata(format!(
                    "`{}` lists unknown neighbor `{n}`",
                    lang.code
                )));
            }
        }
        Ok(LanguageMetadata { languages })
    }

    /// Reads `code,name,family,speakers,resource_level,neighbors` rows; the
    /// neighbor list is `;`-separated. Blank family or speakers are allowed
    /// and reported only by the pool policies that need them.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| metadata_error(path, e))?;
        let headers = reader.headers().map_err(|e| metadata_error(path, e))?.clone();
        let expected = [
            "code",
            "name",
            "family",
            "speakers",
            "resource_level",
            "neighbors",
        ];
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(Error::InvalidMetadata(format!(
                "{}: header must be {}",
                path.display(),
                expected.join(",")
            )));
        }

        let mut languages = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|e| metadata_error(path, e))?;
            let field = |i: usize| record.get(i).unwrap_or("").to_string();
            let bad = |what: &str| {
                Error::InvalidMetadata(format!("{}: row {}: bad {what}", path.display(), row + 2))
            };
            let speakers = match field(3).as_str() {
                "" => None,
                s => Some(s.parse::<u64>().map_err(|_| bad("speakers"))?),
            };
            let resource_level = field(4).parse::<u8>().map_err(|_| bad("resource_level"))?;
            let family = Some(field(2)).filter(|f| !f.is_empty());
            let neighbors = field(5)
                .split(';')
                .map(str::trim)
                .filter(|n| !n.is_empty())
                .map(str::to_string)
                .collect();
            languages.push(Language {
                code: field(0),
                name: field(1),
                family,
                speakers,
                resource_level,
                neighbors,
            });
        }
        LanguageMetadata::new(languages)
    }

    pub fn languages(&self) -> &[Language] {
        &self.languages
    }

    pub fn is_empty(&self) -> bool {
        self.languages.is_empty()
    }

    pub fn get(&self, code: &str) -> Option<&Language> {
        self.languages.iter().find(|l| l.code == code)
    }

    /// Finds a language by code, or by name ignoring case.
    pub fn find(&self, key: &str) -> Option<&Language> {
        self.get(key)
            .or_else(|| self.languages.iter().find(|l| l.name.eq_ignore_ascii_case(key)))
    }
}

fn metadata_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::InvalidMetadata(format!("{}: {other:?}", path.display())),
    }
}

/// A target language with its ten source (neighbor) languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TargetPreset {
    pub code: &'static str,
    pub name: &'static str,
    pub resource_level: u8,
    pub family: &'static str,
    /// Reference language for single-language ranking methods.
    pub reference: &'static str,
    /// `(code, name)` of each source language.
    pub sources: [(&'static str, &'static str); 10],
}

impl TargetPreset {
    /// Metadata holding the target (neighbors = its sources) and the sources.
    pub fn metadata(&self) -> LanguageMetadata {
        let mut languages = vec![Language {
            code: self.code.into(),
            name: self.name.into(),
            family: Some(self.family.into()),
            speakers: None,
            resource_level: self.resource_level,
            neighbors: self.sources.iter().map(|(c, _)| c.to_string()).collect(),
        }];
        languages.extend(self.sources.iter().map(|(code, name)| Language {
            code: code.to_string(),
            name: name.to_string(),
            family: None,
            speakers: None,
            resource_level: 5,
            neighbors: Vec::new(),
        }));
        LanguageMetadata::new(languages).expect("presets are consistent")
    }

    pub fn source_codes(&self) -> Vec<String> {
        self.sources.iter().map(|(c, _)| c.to_string()).collect()
    }
}

/// The ten target languages studied for the method, each with its reference
/// language and ten neighboring source languages.
pub fn builtin_targets() -> &'static [TargetPreset] {
    const WESTERN: [(&str, &str); 9] = [
        ("deu", "German"),
        ("dan", "Danish"),
        ("nld", "Dutch"),
        ("nor", "Norwegian"),
        ("swe", "Swedish"),
        ("fra", "French"),
        ("ita", "Italian"),
        ("por", "Portuguese"),
        ("ron", "Romanian"),
    ];
    const fn western_with_english() -> [(&'static str, &'static str); 10] {
        let mut out = [("eng", "English"); 10];
        let mut i = 0;
        while i < 9 {
            out[i + 1] = WESTERN[i];
            i += 1;
        }
        out
    }
    static TARGETS: [TargetPreset; 10] = [
        TargetPreset {
            code: "fry",
            name: "Frisian",
            resource_level: 0,
            family: "Germanic",
            reference: "eng",
            sources: [
                ("eng", "English"),
                ("deu", "German"),
                ("nld", "Dutch"),
                ("nor", "Norwegian"),
                ("afr", "Afrikaans"),
                ("swe", "Swedish"),
                ("fra", "French"),
                ("ita", "Italian"),
                ("por", "Portuguese"),
                ("ron", "Romanian"),
            ],
        },
        TargetPreset {
            code: "hmn",
            name: "Hmong",
            resource_level: 0,
            family: "Hmong-Mien",
            reference: "kmm",
            sources: [
                ("kmm", "Komrem"),
                ("vie", "Vietnamese"),
                ("tha", "Thai"),
                ("zho", "Chinese"),
                ("mya", "Myanmar"),
                ("cnh", "Haka"),
                ("nst", "Tangsa"),
                ("zom", "Zokam"),
                ("csy", "Siyin"),
                ("cfm", "Falam"),
            ],
        },
        TargetPreset {
            code: "poh",
            name: "Pokomchi",
            resource_level: 0,
            family: "Mayan",
            reference: "cac",
            sources: [
                ("cac", "Chuj"),
                ("cak", "Cakchiquel"),
                ("mam", "Mam"),
                ("kjb", "Kanjobal"),
                ("quz", "Cuzco"),
                ("quy", "Ayacucho"),
                ("quh", "Bolivian"),
                ("qub", "Huallaga"),
                ("aym", "Aymara"),
                ("gub", "Guajajara"),
            ],
        },
        TargetPreset {
            code: "tuk",
            name: "Turkmen",
            resource_level: 1,
            family: "Turkic",
            reference: "kir",
            sources: [
                ("kir", "Kyrgyz"),
                ("tyv", "Tuvan"),
                ("uzb", "Uzbek"),
                ("kaa", "Karakalpak"),
                ("kaz", "Kazakh"),
                ("aze", "Azerbaijani"),
                ("jpn", "Japanese"),
                ("kor", "Korean"),
                ("fin", "Finnish"),
                ("hun", "Hungarian"),
            ],
        },
        TargetPreset {
            code: "sot",
            name: "Sesotho",
            resource_level: 1,
            family: "Niger-Congo",
            reference: "yor",
            sources: [
                ("yor", "Yoruba"),
                ("kik", "Gikuyu"),
                ("xho", "Xhosa"),
                ("kua", "Kuanyama"),
                ("gkp", "Kpelle"),
                ("fon", "Fon"),
                ("bum", "Bulu"),
                ("ssw", "Swati"),
                ("ven", "Venda"),
                ("leh", "Lenje"),
            ],
        },
        TargetPreset {
            code: "cym",
            name: "Welsh",
            resource_level: 1,
            family: "Celtic",
            reference: "eng",
            sources: western_with_english(),
        },
        TargetPreset {
            code: "xho",
            name: "Xhosa",
            resource_level: 2,
            family: "Nguni",
            reference: "ssw",
            sources: [
                ("ssw", "Swati"),
                ("kik", "Gikuyu"),
                ("sot", "Sesotho"),
                ("yor", "Yoruba"),
                ("leh", "Lenje"),
                ("gba", "Gbaya"),
                ("afr", "Afrikaans"),
                ("wal", "Wolaitta"),
                ("kua", "Kuanyama"),
                ("bum", "Bulu"),
            ],
        },
        TargetPreset {
            code: "ind",
            name: "Indonesian",
            resource_level: 3,
            family: "Austronesian",
            reference: "jav",
            sources: [
                ("jav", "Javanese"),
                ("mlg", "Malagasy"),
                ("tgl", "Tagalog"),
                ("ilo", "Ilokano"),
                ("ceb", "Cebuano"),
                ("fij", "Fijian"),
                ("sun", "Sunda"),
                ("zom", "Zokam"),
                ("wbm", "Wa"),
                ("mri", "Maori"),
            ],
        },
        TargetPreset {
            code: "hun",
            name: "Hungarian",
            resource_level: 4,
            family: "Uralic",
            reference: "fin",
            sources: [
                ("fin", "Finnish"),
                ("fra", "French"),
                ("eng", "English"),
                ("deu", "German"),
                ("lat", "Latin"),
                ("ron", "Romanian"),
                ("swe", "Swedish"),
                ("spa", "Spanish"),
                ("ita", "Italian"),
                ("por", "Portuguese"),
            ],
        },
        TargetPreset {
            code: "spa",
            name: "Spanish",
            resource_level: 5,
            family: "Romance",
            reference: "eng",
            sources: western_with_english(),
        },
    ];
    &TARGETS
}
