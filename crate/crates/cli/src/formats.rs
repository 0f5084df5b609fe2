//! Text formats: `.vab` extension data, `.as` approximation systems and
//! `.sub` stage subgroups. Presentations (`.grp`) use the core parser.
//!
//! ```text
//! # Klein bottle: Z/2 acting on Z² by diag(1, −1), flip² = e₁
//! quotient e flip
//! table
//! e flip
//! flip e
//! rank 2
//! action flip := 1 0 ; 0 -1
//! cocycle flip flip := 1 0
//! ```
//!
//! `table` lists the row `a·b` for each `a`, in label order; it may be
//! omitted for the trivial group. Every non-identity element needs an
//! `action`; absent cocycle entries are zero. An `.as` file prefixes
//! `source <labels>` and appends the target group (`target`,
//! `target-table`), one `image <label> := <q> | <v>` per source label, and
//! `sigma-lattice` / `sigma-section` listing target labels for the lattice
//! basis and for each element of the quotient.

use std::collections::BTreeMap;
use std::fmt::Write;

use ttfkit_core::approx::{make_approx_system, ApproxSystem, Sigma};
use ttfkit_core::galois::StageGroupElement;
use ttfkit_core::virtab::{identity, make_virtab, FiniteGroup, VAElement, VirtAbGroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    /// One-based; zero when the problem concerns the file as a whole.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

/// Non-blank lines with comments removed, numbered from one.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<i64>, FormatError> {
    text.split_whitespace()
        .map(|t| {
            t.parse()
                .or_else(|_| err(line, format!("expected an integer, found `{t}`")))
        })
        .collect()
}

fn parse_matrix(line: usize, text: &str) -> Result<Vec<Vec<i64>>, FormatError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';').map(|row| parse_ints(line, row)).collect()
}

fn format_matrix(m: &[Vec<i64>]) -> String {
    m.iter()
        .map(|row| row.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" ; ")
}

fn split_assignment(line: usize, text: &str) -> Result<(&str, &str), FormatError> {
    text.split_once(":=")
        .map(|(l, r)| (l.trim(), r.trim()))
        .map_or_else(|| err(line, "expected `:=`"), Ok)
}

fn check_label(label: &str) -> Result<(), FormatError> {
    if label.is_empty()
        || label.chars().any(char::is_whitespace)
        || ["|", ":=", ";", "#"].iter().any(|s| label.contains(s))
    {
        return err(
            0,
            format!("label `{label}` cannot be written in this format"),
        );
    }
    Ok(())
}

/// A finite group given by labels and an optional table.
#[derive(Default)]
struct GroupBlock {
    labels: Option<(usize, Vec<String>)>,
    table: Option<Vec<Vec<usize>>>,
}

impl GroupBlock {
    fn index(&self, line: usize, label: &str) -> Result<usize, FormatError> {
        let Some((_, labels)) = &self.labels else {
            return err(line, "group labels must come first");
        };
        labels
            .iter()
            .position(|l| l == label)
            .map_or_else(|| err(line, format!("unknown label `{label}`")), Ok)
    }

    fn set_labels(&mut self, line: usize, rest: &[&str]) -> Result<(), FormatError> {
        if self.labels.is_some() {
            return err(line, "group labels given twice");
        }
        if rest.is_empty() {
            return err(line, "a group needs at least one element");
        }
        self.labels = Some((line, rest.iter().map(|s| s.to_string()).collect()));
        Ok(())
    }

    fn read_table<'a>(
        &mut self,
        line: usize,
        rows: &mut impl Iterator<Item = &'a (usize, &'a str)>,
    ) -> Result<(), FormatError> {
        let order = match &self.labels {
            Some((_, l)) => l.len(),
            None => return err(line, "group labels must come before the table"),
        };
        let mut table = Vec::with_capacity(order);
        for _ in 0..order {
            let Some(&(ln, row)) = rows.next() else {
                return err(line, format!("table needs {order} rows"));
            };
            let row: Vec<usize> = row
                .split_whitespace()
                .map(|t| self.index(ln, t))
                .collect::<Result<_, _>>()?;
            if row.len() != order {
                return err(ln, format!("table row needs {order} entries"));
            }
            table.push(row);
        }
        self.table = Some(table);
        Ok(())
    }

    fn build(self, what: &str) -> Result<FiniteGroup, FormatError> {
        let Some((line, labels)) = self.labels else {
            return err(0, format!("missing {what} labels"));
        };
        let table = match self.table {
            Some(t) => t,
            None if labels.len() == 1 => vec![vec![0]],
            None => return err(line, format!("missing {what} table")),
        };
        FiniteGroup::new(table, labels).or_else(|e| err(line, e.to_string()))
    }

    fn write(
        out: &mut String,
        g: &FiniteGroup,
        labels_kw: &str,
        table_kw: &str,
    ) -> Result<(), FormatError> {
        for l in g.labels() {
            check_label(l)?;
        }
        writeln!(out, "{labels_kw} {}", g.labels().join(" ")).unwrap();
        if g.order() > 1 {
            writeln!(out, "{table_kw}").unwrap();
            for row in g.table() {
                let row: Vec<&str> = row.iter().map(|&x| g.label(x)).collect();
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
        Ok(())
    }
}

/// Extension-data lines shared by `.vab` and `.as`.
#[derive(Default)]
struct VabBlock {
    quotient: GroupBlock,
    rank: Option<usize>,
    actions: Vec<(usize, String, Vec<Vec<i64>>)>,
    cocycles: Vec<(usize, String, String, Vec<i64>)>,
}

impl VabBlock {
    /// Consumes one line if it belongs to the extension data.
    fn accept<'a>(
        &mut self,
        line: usize,
        text: &str,
        rest: &mut impl Iterator<Item = &'a (usize, &'a str)>,
    ) -> Result<bool, FormatError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens[0] {
            "quotient" => self.quotient.set_labels(line, &tokens[1..])?,
            "table" if tokens.len() == 1 => self.quotient.read_table(line, rest)?,
            "rank" => {
                let [_, n] = tokens[..] else {
                    return err(line, "expected `rank <n>`");
                };
                let n = n
                    .parse()
                    .or_else(|_| err(line, format!("bad rank `{n}`")))?;
                if self.rank.replace(n).is_some() {
                    return err(line, "rank given twice");
                }
            }
            "action" => {
                let (lhs, rhs) = split_assignment(line, &text["action".len()..])?;
                self.actions
                    .push((line, lhs.to_string(), parse_matrix(line, rhs)?));
            }
            "cocycle" => {
                let (lhs, rhs) = split_assignment(line, &text["cocycle".len()..])?;
                let [a, b] = lhs.split_whitespace().collect::<Vec<_>>()[..] else {
                    return err(line, "expected `cocycle <a> <b> := <vector>`");
                };
                self.cocycles
                    .push((line, a.to_string(), b.to_string(), parse_ints(line, rhs)?));
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn build(self) -> Result<VirtAbGroup, FormatError> {
        let n = self.rank.map_or_else(|| err(0, "missing `rank`"), Ok)?;
        let labels = self.quotient.labels.clone();
        let q = self.quotient.build("quotient")?;
        let index = |line: usize, l: &str| {
            q.index_of_label(l)
                .map_or_else(|| err(line, format!("unknown label `{l}`")), Ok)
        };
        let mut action: Vec<Option<Vec<Vec<i64>>>> = vec![None; q.order()];
        action[q.identity()] = Some(identity(n));
        for (line, l, m) in self.actions {
            let a = index(line, &l)?;
            if a != q.identity() && action[a].is_some() {
                return err(line, format!("action of `{l}` given twice"));
            }
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return err(line, format!("action of `{l}` must be {n}×{n}"));
            }
            action[a] = Some(m);
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(a, m)| {
                m.map_or_else(
                    || {
                        err(
                            labels.as_ref().map_or(0, |l| l.0),
                            format!("missing action of `{}`", q.label(a)),
                        )
                    },
                    Ok,
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut cocycle = BTreeMap::new();
        for (line, a, b, v) in self.cocycles {
            let key = (index(line, &a)?, index(line, &b)?);
            if v.len() != n {
                return err(line, format!("cocycle vectors need {n} entries"));
            }
            if cocycle.insert(key, v).is_some() {
                return err(line, format!("cocycle at ({a}, {b}) given twice"));
            }
        }
        make_virtab(q, n, action, &cocycle).or_else(|e| err(0, e.to_string()))
    }

    fn write(out: &mut String, g: &VirtAbGroup) -> Result<(), FormatError> {
        let q = g.quotient();
        GroupBlock::write(out, q, "quotient", "table")?;
        writeln!(out, "rank {}", g.rank()).unwrap();
        for a in (0..q.order()).filter(|&a| a != q.identity()) {
            writeln!(
                out,
                "action {} := {}",
                q.label(a),
                format_matrix(g.action(a))
            )
            .unwrap();
        }
        for ((a, b), v) in g.cocycle_entries() {
            let v: Vec<String> = v.iter().map(i64::to_string).collect();
            writeln!(
                out,
                "cocycle {} {} := {}",
                q.label(a),
                q.label(b),
                v.join(" ")
            )
            .unwrap();
        }
        Ok(())
    }
}

pub fn parse_vab(text: &str) -> Result<VirtAbGroup, FormatError> {
    let lines = content_lines(text);
    let mut block = VabBlock::default();
    let mut it = lines.iter();
    while let Some(&(line, l)) = it.next() {
        if !block.accept(line, l, &mut it)? {
            return err(
                line,
                format!("unknown keyword `{}`", l.split_whitespace().next().unwrap()),
            );
        }
    }
    block.build()
}

pub fn write_vab(g: &VirtAbGroup) -> Result<String, FormatError> {
    let mut out = String::new();
    VabBlock::write(&mut out, g)?;
    Ok(out)
}

/// `<quotient label> | <v₁> … <v_n>`; the bar may be dropped when `n = 0`.
pub fn parse_element(g: &VirtAbGroup, text: &str) -> Result<VAElement, FormatError> {
    parse_element_at(0, g, text)
}

fn parse_element_at(line: usize, g: &VirtAbGroup, text: &str) -> Result<VAElement, FormatError> {
    let (q, v) = text.split_once('|').unwrap_or((text, ""));
    let q = q.trim();
    let qi = g
        .quotient()
        .index_of_label(q)
        .map_or_else(|| err(line, format!("unknown label `{q}`")), Ok)?;
    let v = parse_ints(line, v)?;
    if v.len() != g.rank() {
        return err(
            line,
            format!("element needs {} lattice coordinates", g.rank()),
        );
    }
    Ok(VAElement::new(qi, v))
}

pub fn format_element(g: &VirtAbGroup, x: &VAElement) -> String {
    let mut s = format!("{} |", g.quotient().label(x.q));
    for c in &x.v {
        write!(s, " {c}").unwrap();
    }
    s
}

pub fn parse_as(text: &str) -> Result<ApproxSystem, FormatError> {
    let lines = content_lines(text);
    let mut source: Option<Vec<String>> = None;
    let mut ghat = VabBlock::default();
    let mut target = GroupBlock::default();
    let mut images: Vec<(usize, String, String)> = Vec::new();
    let mut lattice: Option<(usize, Vec<String>)> = None;
    let mut section: Option<(usize, Vec<String>)> = None;
    let mut it = lines.iter();
    while let Some(&(line, l)) = it.next() {
        if ghat.accept(line, l, &mut it)? {
            continue;
        }
        let tokens: Vec<&str> = l.split_whitespace().collect();
        let rest = || {
            tokens[1..]
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
        };
        match tokens[0] {
            "source" => {
                if source.replace(rest()).is_some() {
                    return err(line, "source given twice");
                }
            }
            "target" => target.set_labels(line, &tokens[1..])?,
            "target-table" if tokens.len() == 1 => target.read_table(line, &mut it)?,
            "image" => {
                let (lhs, rhs) = split_assignment(line, &l["image".len()..])?;
                images.push((line, lhs.to_string(), rhs.to_string()));
            }
            "sigma-lattice" => {
                if lattice.replace((line, rest())).is_some() {
                    return err(line, "sigma-lattice given twice");
                }
            }
            "sigma-section" => {
                if section.replace((line, rest())).is_some() {
                    return err(line, "sigma-section given twice");
                }
            }
            k => return err(line, format!("unknown keyword `{k}`")),
        }
    }
    let source = source.map_or_else(|| err(0, "missing `source`"), Ok)?;
    let ghat = ghat.build()?;
    let g = target.build("target")?;
    let mut by_label = BTreeMap::new();
    for (line, label, elem) in images {
        let x = parse_element_at(line, &ghat, &elem)?;
        if !source.contains(&label) {
            return err(line, format!("`{label}` is not a source label"));
        }
        if by_label.insert(label.clone(), x).is_some() {
            return err(line, format!("image of `{label}` given twice"));
        }
    }
    let images = source
        .iter()
        .map(|s| {
            by_label
                .remove(s)
                .map_or_else(|| err(0, format!("missing image of `{s}`")), Ok)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let g_index = |(line, labels): (usize, Vec<String>), want: usize, what: &str| {
        if labels.len() != want {
            return err(line, format!("{what} needs {want} target labels"));
        }
        labels
            .iter()
            .map(|l| {
                g.index_of_label(l)
                    .map_or_else(|| err(line, format!("unknown target label `{l}`")), Ok)
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let sigma = Sigma {
        lattice: g_index(
            lattice.unwrap_or((0, Vec::new())),
            ghat.rank(),
            "sigma-lattice",
        )?,
        section: g_index(
            section.map_or_else(|| err(0, "missing `sigma-section`"), Ok)?,
            ghat.quotient().order(),
            "sigma-section",
        )?,
    };
    make_approx_system(source, ghat, images, g, sigma).or_else(|e| err(0, e.to_string()))
}

pub fn write_as(s: &ApproxSystem) -> Result<String, FormatError> {
    let mut out = String::new();
    for l in s.source_gens() {
        check_label(l)?;
    }
    writeln!(out, "source {}", s.source_gens().join(" ")).unwrap();
    VabBlock::write(&mut out, s.ghat())?;
    GroupBlock::write(&mut out, s.g(), "target", "target-table")?;
    for (l, x) in s.source_gens().iter().zip(s.images()) {
        writeln!(out, "image {l} := {}", format_element(s.ghat(), x)).unwrap();
    }
    let labels = |xs: &[usize]| {
        xs.iter()
            .map(|&x| s.g().label(x))
            .collect::<Vec<_>>()
            .join(" ")
    };
    if !s.sigma().lattice.is_empty() {
        writeln!(out, "sigma-lattice {}", labels(&s.sigma().lattice)).unwrap();
    }
    writeln!(out, "sigma-section {}", labels(&s.sigma().section)).unwrap();
    Ok(out)
}

/// One `perm | twist` element per line.
pub fn parse_sub(text: &str) -> Result<Vec<StageGroupElement>, FormatError> {
    content_lines(text)
        .into_iter()
        .map(|(line, l)| {
            l.parse()
                .or_else(|e: ttfkit_core::galois::GaloisError| err(line, e.to_string()))
        })
        .collect()
}

pub fn write_sub(elems: &[StageGroupElement]) -> String {
    elems.iter().map(|g| format!("{g}\n")).collect()
}
