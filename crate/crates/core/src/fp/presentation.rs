use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::{FpError, Word};

/// Generators and relators of a finitely presented group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    name: Option<String>,
    generators: Vec<String>,
    relators: Vec<Word>,
}

/// Generator symbols are lowercase identifiers; their uppercase spelling
/// denotes the inverse in the text format.
pub fn is_valid_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl GroupPresentation {
    /// Validates symbols and letters; relators are freely reduced and empty
    /// ones dropped.
    pub fn new(
        name: Option<String>,
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self, FpError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !is_valid_symbol(g) {
                return Err(FpError::InvalidSymbol(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(FpError::DuplicateGenerator {
                    symbol: g.clone(),
                    line: 0,
                    column: 0,
                });
            }
        }
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(m) = r.max_generator() {
                if m >= generators.len() {
                    return Err(FpError::LetterOutOfRange {
                        letter: m + 1,
                        generators: generators.len(),
                    });
                }
            }
            let r = Word::new(r.letters().iter().copied());
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(GroupPresentation {
            name,
            generators,
            relators: rels,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Index of a generator symbol.
    pub fn generator_index(&self, symbol: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == symbol)
    }

    /// Parses a whitespace-separated word such as `a b A` against this
    /// presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, FpError> {
        let mut letters = Vec::new();
        for (column, tok) in tokens(text) {
            letters.push(self.letter(tok, 1, column)?);
        }
        Ok(Word::new(letters))
    }

    fn letter(&self, tok: &str, line: usize, column: usize) -> Result<i32, FpError> {
        if let Some(i) = self.generator_index(tok) {
            return Ok(i as i32 + 1);
        }
        let lower = tok.to_ascii_lowercase();
        if lower != tok && lower.to_ascii_uppercase() == tok {
            if let Some(i) = self.generator_index(&lower) {
                return Ok(-(i as i32 + 1));
            }
        }
        Err(FpError::UndeclaredSymbol {
            symbol: tok.to_string(),
            line,
            column,
        })
    }

    pub fn format_word(&self, w: &Word) -> String {
        let mut out = String::new();
        for (i, &l) in w.letters().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let g = &self.generators[l.unsigned_abs() as usize - 1];
            if l < 0 {
                out.push_str(&g.to_ascii_uppercase());
            } else {
                out.push_str(g);
            }
        }
        out
    }
}

/// Serializes in the presentation text format accepted by [`parse_presentation`].
impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            writeln!(f, "group {n}")?;
        }
        write!(f, "gens")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "rel {}", self.format_word(r))?;
        }
        Ok(())
    }
}

/// Tokens with their one-based starting column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0usize;
    core::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let tok = &trimmed[..end];
        let col = line[..offset].chars().count() + 1;
        offset += end;
        rest = &trimmed[end..];
        Some((col, tok))
    })
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// # comment
/// group klein
/// gens a b
/// rel a b a B
/// ```
///
/// A relator letter is a generator symbol; the same symbol in uppercase is
/// its inverse.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, FpError> {
    let mut name = None;
    let mut gens: Option<Vec<String>> = None;
    let mut pending: Vec<(usize, &str)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = tokens(line);
        let Some((kcol, keyword)) = toks.next() else {
            continue;
        };
        match keyword {
            "group" => {
                let Some((_, n)) = toks.next() else {
                    return Err(FpError::Syntax {
                        line: line_no,
                        column: kcol,
                        message: "expected a group name".into(),
                    });
                };
                if let Some((c, _)) = toks.next() {
                    return Err(FpError::Syntax {
                        line: line_no,
                        column: c,
                        message: "unexpected token after group name".into(),
                    });
                }
                name = Some(n.to_string());
            }
            "gens" => {
                if gens.is_some() {
                    return Err(FpError::Syntax {
                        line: line_no,
                        column: kcol,
                        message: "generators declared twice".into(),
                    });
                }
                let mut list: Vec<String> = Vec::new();
                for (c, t) in toks {
                    if !is_valid_symbol(t) {
                        return Err(FpError::Syntax {
                            line: line_no,
                            column: c,
                            message: format!("invalid generator symbol `{t}`"),
                        });
                    }
                    if list.iter().any(|g| g == t) {
                        return Err(FpError::DuplicateGenerator {
                            symbol: t.to_string(),
                            line: line_no,
                            column: c,
                        });
                    }
                    list.push(t.to_string());
                }
                gens = Some(list);
            }
            "rel" => {
                if gens.is_none() {
                    return Err(FpError::Syntax {
                        line: line_no,
                        column: kcol,
                        message: "`rel` before `gens`".into(),
                    });
                }
                pending.push((line_no, line));
            }
            other => {
                return Err(FpError::Syntax {
                    line: line_no,
                    column: kcol,
                    message: format!("unknown keyword `{other}`"),
                });
            }
        }
    }

    let generators = gens.ok_or(FpError::Syntax {
        line: 1,
        column: 1,
        message: "missing `gens` line".into(),
    })?;
    let shell = GroupPresentation {
        name: name.clone(),
        generators: generators.clone(),
        relators: Vec::new(),
    };
    let mut relators = Vec::new();
    for (line_no, line) in pending {
        let mut letters = Vec::new();
        for (c, t) in tokens(line).skip(1) {
            letters.push(shell.letter(t, line_no, c)?);
        }
        relators.push(Word::new(letters));
    }
    GroupPresentation::new(name, generators, relators)
}

fn lettered(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| char::from(b'a' + i as u8).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// The builtin corpus: `heisenberg`, `free(n)`, `free_abelian(n)`,
/// `surface(g)`, `nonorientable(k)`, `dihedral_inf`.
pub fn builtin(name: &str, params: &[i64]) -> Result<GroupPresentation, FpError> {
    let want = |count: usize| -> Result<usize, FpError> {
        if params.len() != count {
            return Err(FpError::BadParameters {
                name: name.to_string(),
                expected: count,
                got: params.len(),
            });
        }
        if count == 0 {
            return Ok(0);
        }
        if params[0] <= 0 {
            return Err(FpError::NonPositiveParameter {
                name: name.to_string(),
                value: params[0],
            });
        }
        Ok(params[0] as usize)
    };
    let g = |i: usize| Word::new([i as i32 + 1]);
    let (label, gens, rels) = match name {
        "heisenberg" => {
            want(0)?;
            let gens = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
            let (x, y, z) = (g(0), g(1), g(2));
            let rels = alloc::vec![
                Word::commutator(&x, &y).concat(&z.inverse()),
                Word::commutator(&x, &z),
                Word::commutator(&y, &z),
            ];
            ("heisenberg".to_string(), gens, rels)
        }
        "free" => {
            let n = want(1)?;
            (format!("free({n})"), lettered(n), Vec::new())
        }
        "free_abelian" => {
            let n = want(1)?;
            let mut rels = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    rels.push(Word::commutator(&g(i), &g(j)));
                }
            }
            (format!("free_abelian({n})"), lettered(n), rels)
        }
        "surface" => {
            let genus = want(1)?;
            let mut gens = Vec::new();
            let mut rel = Word::empty();
            for i in 0..genus {
                gens.push(format!("a{}", i + 1));
                gens.push(format!("b{}", i + 1));
                rel = rel.concat(&Word::commutator(&g(2 * i), &g(2 * i + 1)));
            }
            (format!("surface({genus})"), gens, alloc::vec![rel])
        }
        "nonorientable" => {
            let k = want(1)?;
            let gens = (1..=k).map(|i| format!("a{i}")).collect();
            let rel = Word::new((0..k).flat_map(|i| [i as i32 + 1, i as i32 + 1]));
            (format!("nonorientable({k})"), gens, alloc::vec![rel])
        }
        "dihedral_inf" => {
            want(0)?;
            let gens = alloc::vec!["a".to_string(), "b".to_string()];
            let rels = alloc::vec![Word::new([1, 1]), Word::new([1, 2, 1, 2])];
            ("dihedral_inf".to_string(), gens, rels)
        }
        _ => return Err(FpError::UnknownBuiltin(name.to_string())),
    };
    GroupPresentation::new(Some(label), gens, rels)
}

/// Parses a builtin spec such as `surface(2)`, `surface:2` or `heisenberg`.
pub fn builtin_from_spec(spec: &str) -> Result<GroupPresentation, FpError> {
    let spec = spec.trim();
    let (name, args) = if let Some(open) = spec.find('(') {
        let close = spec
            .rfind(')')
            .ok_or_else(|| FpError::UnknownBuiltin(spec.to_string()))?;
        (&spec[..open], &spec[open + 1..close])
    } else if let Some((n, a)) = spec.split_once(':') {
        (n, a)
    } else {
        (spec, "")
    };
    let mut params = Vec::new();
    for a in args.split(',').map(str::trim).filter(|a| !a.is_empty()) {
        params.push(
            a.parse::<i64>()
                .map_err(|_| FpError::UnknownBuiltin(spec.to_string()))?,
        );
    }
    builtin(name, &params)
}

/// Free product: disjoint union of generators and relators. Symbols of the
/// second factor that clash with the first get a `_k` suffix.
pub fn free_product(p1: &GroupPresentation, p2: &GroupPresentation) -> GroupPresentation {
    let mut gens: Vec<String> = p1.generators.clone();
    let offset = gens.len();
    for s in &p2.generators {
        let mut candidate = s.clone();
        let mut k = 2;
        while gens.contains(&candidate) || (candidate != *s && p2.generators.contains(&candidate)) {
            candidate = format!("{s}_{k}");
            k += 1;
        }
        gens.push(candidate);
    }
    let mut rels = p1.relators.clone();
    rels.extend(p2.relators.iter().map(|r| r.relabel(|g| g + offset)));
    let name = match (&p1.name, &p2.name) {
        (Some(a), Some(b)) => Some(format!("{a}*{b}")),
        _ => None,
    };
    GroupPresentation {
        name,
        generators: gens,
        relators: rels,
    }
}
