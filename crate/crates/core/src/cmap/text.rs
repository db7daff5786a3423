//! Text format for maps.
//!
//! ```text
//! sigma: (a f' b d)(d')(a' e f c)(e' b' c')
//! alpha: (a a')(b b')(c c')(d d')(e e')(f f')
//! root: a
//! ```
//!
//! Sections may share a line; commas inside cycles are accepted as
//! separators and `#` starts a comment. Half-edges missing from `sigma` are
//! fixed points. Normalization numbers edges in `alpha` order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{validate_permutations, CombinatorialMap, MapError};

#[derive(Debug, PartialEq, Eq)]
enum Token {
    Key(String),
    Open,
    Close,
    Name(String),
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        let mut word = String::new();
        let flush = |word: &mut String, out: &mut Vec<Token>| {
            if word.is_empty() {
                return;
            }
            let w = std::mem::take(word);
            match w.strip_suffix(':') {
                Some(k) if !k.is_empty() => out.push(Token::Key(k.to_ascii_lowercase())),
                _ => out.push(Token::Name(w)),
            }
        };
        for c in line.chars() {
            match c {
                '(' | ')' => {
                    flush(&mut word, &mut out);
                    out.push(if c == '(' { Token::Open } else { Token::Close });
                }
                c if c.is_whitespace() || c == ',' => flush(&mut word, &mut out),
                c => word.push(c),
            }
        }
        flush(&mut word, &mut out);
    }
    out
}

fn parse_cycles(tokens: &[Token], section: &str) -> Result<Vec<Vec<String>>, MapError> {
    let mut cycles = Vec::new();
    let mut current: Option<Vec<String>> = None;
    for t in tokens {
        match (t, current.as_mut()) {
            (Token::Open, None) => current = Some(Vec::new()),
            (Token::Close, Some(_)) => {
                let c = current.take().unwrap();
                if c.is_empty() {
                    return Err(MapError::Parse(format!("empty cycle in {section}")));
                }
                cycles.push(c);
            }
            (Token::Name(n), Some(c)) => c.push(n.clone()),
            (Token::Name(n), None) => {
                return Err(MapError::Parse(format!(
                    "half-edge {n:?} outside parentheses in {section}"
                )))
            }
            _ => {
                return Err(MapError::Parse(format!(
                    "unbalanced parentheses in {section}"
                )))
            }
        }
    }
    if current.is_some() {
        return Err(MapError::Parse(format!("unclosed cycle in {section}")));
    }
    Ok(cycles)
}

impl FromStr for CombinatorialMap {
    type Err = MapError;

    fn from_str(text: &str) -> Result<Self, MapError> {
        let tokens = tokenize(text);
        let mut sections: HashMap<String, Vec<Token>> = HashMap::new();
        let mut key: Option<String> = None;
        for t in tokens {
            match t {
                Token::Key(k) => {
                    if !matches!(k.as_str(), "sigma" | "alpha" | "root") {
                        return Err(MapError::Parse(format!("unknown section {k:?}")));
                    }
                    if sections.contains_key(&k) {
                        return Err(MapError::Parse(format!("section {k:?} given twice")));
                    }
                    sections.insert(k.clone(), Vec::new());
                    key = Some(k);
                }
                t => match &key {
                    Some(k) => sections.get_mut(k).unwrap().push(t),
                    None => return Err(MapError::Parse("expected `sigma:`".into())),
                },
            }
        }
        let alpha_tokens = sections
            .remove("alpha")
            .ok_or_else(|| MapError::Parse("missing `alpha:` section".into()))?;
        let sigma_tokens = sections
            .remove("sigma")
            .ok_or_else(|| MapError::Parse("missing `sigma:` section".into()))?;
        let alpha_cycles = parse_cycles(&alpha_tokens, "alpha")?;
        let sigma_cycles = parse_cycles(&sigma_tokens, "sigma")?;

        // Raw dart numbering follows first appearance in alpha.
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::new();
        for cycle in &alpha_cycles {
            for n in cycle {
                if index.insert(n.clone(), names.len()).is_some() {
                    return Err(MapError::DuplicateDart(n.clone(), "alpha"));
                }
                names.push(n.clone());
            }
        }
        let total = names.len();
        let mut alpha = vec![usize::MAX; total];
        for cycle in &alpha_cycles {
            let ids: Vec<usize> = cycle.iter().map(|n| index[n]).collect();
            for (i, &d) in ids.iter().enumerate() {
                alpha[d] = ids[(i + 1) % ids.len()];
            }
        }
        let mut sigma: Vec<usize> = (0..total).collect();
        let mut in_sigma = vec![false; total];
        for cycle in &sigma_cycles {
            let mut ids = Vec::with_capacity(cycle.len());
            for n in cycle {
                let d = *index
                    .get(n)
                    .ok_or_else(|| MapError::UnknownDart(n.clone()))?;
                if std::mem::replace(&mut in_sigma[d], true) {
                    return Err(MapError::DuplicateDart(n.clone(), "sigma"));
                }
                ids.push(d);
            }
            for (i, &d) in ids.iter().enumerate() {
                sigma[d] = ids[(i + 1) % ids.len()];
            }
        }
        let root = match sections.remove("root") {
            None => None,
            Some(ts) => match ts.as_slice() {
                [] => None,
                [Token::Name(n)] => Some(
                    *index
                        .get(n)
                        .ok_or_else(|| MapError::RootNotInMap(n.clone()))?,
                ),
                _ => return Err(MapError::Parse("root must be a single half-edge".into())),
            },
        };
        validate_permutations(&sigma, &alpha, root, &names)?;

        // alpha cycles all have length 2, so numbering by alpha order already
        // pairs edge i as darts (2i, 2i+1).
        debug_assert!(alpha.iter().enumerate().all(|(d, &a)| a == d ^ 1));
        CombinatorialMap::new(names, sigma, root)
    }
}

impl CombinatorialMap {
    fn sigma_text(&self) -> String {
        self.vertex_cycles()
            .iter()
            .map(|c| {
                let names: Vec<&str> = c.iter().map(|&d| self.name(d)).collect();
                format!("({})", names.join(" "))
            })
            .collect()
    }

    fn alpha_text(&self) -> String {
        (0..self.edge_count())
            .map(|e| format!("({} {})", self.name(2 * e), self.name(2 * e + 1)))
            .collect()
    }

    /// Single-line form, accepted by the parser.
    pub fn to_line(&self) -> String {
        let mut s = format!("sigma: {} alpha: {}", self.sigma_text(), self.alpha_text());
        if let Some(r) = self.root() {
            s.push_str(&format!(" root: {}", self.name(r)));
        }
        s
    }
}

impl fmt::Display for CombinatorialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sigma: {}", self.sigma_text())?;
        writeln!(f, "alpha: {}", self.alpha_text())?;
        if let Some(r) = self.root() {
            writeln!(f, "root: {}", self.name(r))?;
        }
        Ok(())
    }
}
