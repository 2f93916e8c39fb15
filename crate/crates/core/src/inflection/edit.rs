use std::fmt;

use serde::{Deserialize, Serialize};

/// A prefix/suffix rewrite of a lemma. Counts are in characters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct EditScript {
    pub prefix_drop: usize,
    pub prefix_add: String,
    pub suffix_drop: usize,
    pub suffix_add: String,
}

impl EditScript {
    pub fn is_identity(&self) -> bool {
        *self == EditScript::default()
    }

    pub fn applies_to(&self, lemma_len: usize) -> bool {
        self.prefix_drop + self.suffix_drop <= lemma_len
    }

    /// Rewrite `lemma`, or `None` when the drops do not fit.
    pub fn apply(&self, lemma: &str) -> Option<String> {
        let chars: Vec<char> = lemma.chars().collect();
        if !self.applies_to(chars.len()) {
            return None;
        }
        let mut out = self.prefix_add.clone();
        out.extend(&chars[self.prefix_drop..chars.len() - self.suffix_drop]);
        out.push_str(&self.suffix_add);
        Some(out)
    }
}

impl fmt::Display for EditScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "-{}+{:?}…-{}+{:?}",
            self.prefix_drop, self.prefix_add, self.suffix_drop, self.suffix_add
        )
    }
}

/// Align `lemma` and `form` on their longest common substring (leftmost in
/// the lemma, then leftmost in the form) and express the rest as prefix and
/// suffix rewrites. Without a common character the script drops the whole
/// lemma and adds the whole form.
pub fn derive_edit_script(lemma: &str, form: &str) -> EditScript {
    let l: Vec<char> = lemma.chars().collect();
    let f: Vec<char> = form.chars().collect();

    // (length, lemma start, form start)
    let mut best = (0usize, 0usize, 0usize);
    let mut prev = vec![0usize; f.len() + 1];
    let mut cur = vec![0usize; f.len() + 1];
    for i in 1..=l.len() {
        for j in 1..=f.len() {
            cur[j] = if l[i - 1] == f[j - 1] { prev[j - 1] + 1 } else { 0 };
            let len = cur[j];
            if len == 0 {
                continue;
            }
            let cand = (len, i - len, j - len);
            let better = len > best.0 || (len == best.0 && (cand.1, cand.2) < (best.1, best.2));
            if better {
                best = cand;
            }
        }
        std::mem::swap(&mut prev, &mut cur);
    }

    let (len, li, fi) = best;
    if len == 0 {
        return EditScript {
            prefix_drop: l.len(),
            prefix_add: form.to_owned(),
            suffix_drop: 0,
            suffix_add: String::new(),
        };
    }
    EditScript {
        prefix_drop: li,
        prefix_add: f[..fi].iter().collect(),
        suffix_drop: l.len() - li - len,
        suffix_add: f[fi + len..].iter().collect(),
    }
}
