use super::{Features, Sentence, Token, Treebank};
use crate::error::{Error, Result};

const N_COLUMNS: usize = 10;
const EMPTY: &str = "_";

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Lowercase forms and lemmas.
    pub lowercase: bool,
}

/// Parse CoNLL-U text with default options (verbatim forms and lemmas).
pub fn parse_conllu(text: &str, id: &str, language_code: &str) -> Result<Treebank> {
    parse_conllu_with(text, id, language_code, ParseOptions::default())
}

/// Parse CoNLL-U text into a [`Treebank`].
///
/// Only basic word lines become tokens: multiword ranges (`3-4`) and empty
/// nodes (`5.1`) are skipped. HEAD, DEPREL, DEPS and MISC are not read.
pub fn parse_conllu_with(
    text: &str,
    id: &str,
    language_code: &str,
    options: ParseOptions,
) -> Result<Treebank> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(Sentence::from(std::mem::take(&mut current)));
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if let Some(token) = parse_token_line(line, line_no, options)? {
            current.push(token);
        }
    }
    if !current.is_empty() {
        sentences.push(Sentence::from(current));
    }
    if sentences.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(Treebank::new(id, language_code, sentences))
}

fn parse_token_line(line: &str, line_no: usize, options: ParseOptions) -> Result<Option<Token>> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != N_COLUMNS {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("expected {N_COLUMNS} tab-separated columns, found {}", cols.len()),
        });
    }
    let word_id = cols[0];
    if word_id.contains('-') || word_id.contains('.') {
        return Ok(None);
    }
    if word_id.parse::<u32>().is_err() {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("invalid word id `{word_id}`"),
        });
    }

    let normalize = |s: &str| {
        if options.lowercase {
            s.to_lowercase()
        } else {
            s.to_owned()
        }
    };
    let lemma = match cols[2] {
        EMPTY | "" => None,
        l => Some(normalize(l)),
    };
    let feats = parse_feats(cols[5]).map_err(|msg| Error::Parse { line: line_no, msg })?;

    Ok(Some(Token {
        form: normalize(cols[1]),
        lemma,
        upos: cols[3].to_owned(),
        feats,
    }))
}

fn parse_feats(column: &str) -> std::result::Result<Features, String> {
    let mut feats = Features::new();
    if column == EMPTY {
        return Ok(feats);
    }
    for pair in column.split('|') {
        let (key, value) = pair
            .split_once('=')
            .filter(|(k, v)| !k.is_empty() && !v.is_empty())
            .ok_or_else(|| format!("malformed feature `{pair}` in FEATS `{column}`"))?;
        if let Some(prev) = feats.insert(key.to_owned(), value.to_owned()) {
            if prev != value {
                return Err(format!("conflicting values for feature `{key}`: `{prev}` and `{value}`"));
            }
        }
    }
    Ok(feats)
}
