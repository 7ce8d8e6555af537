//! Cyclic-related group presentations: data model, validation and the
//! line-oriented text format.
//!
//! A presentation lists `n` generators and a set of cyclic relations. Each
//! relation is determined by its support (a strictly increasing list of
//! generator indices) and one conjugating word per support position. In the
//! default mode every generator pair that no relation mentions is filled in
//! with a plain commutator, so files only need to spell out the interesting
//! relations.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::incidence::IncidenceData;

/// One letter of a word: a generator (1-based) raised to `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A word in the free group on the generators. The empty word is `e`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, letter) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", letter.generator)?;
            if letter.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("a cyclic relation needs at least two generators, got {0}")]
    TooShort(usize),
    #[error("support {0:?} is not strictly increasing")]
    NonIncreasing(Vec<usize>),
    #[error("generator indices start at 1")]
    ZeroIndex,
    #[error("support has {support} generators but {conjugators} conjugators were given")]
    ConjugatorCount { support: usize, conjugators: usize },
}

/// A cyclic relation `x_{i_t}^{s_t} ... x_{i_1}^{s_1} = ... ` of length `t`.
///
/// Position `j` of `conjugators` conjugates the `j`-th support generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicRelation {
    support: Vec<usize>,
    conjugators: Vec<Word>,
}

impl CyclicRelation {
    pub fn new(support: Vec<usize>, conjugators: Vec<Word>) -> Result<Self, RelationError> {
        if support.len() < 2 {
            return Err(RelationError::TooShort(support.len()));
        }
        if support.contains(&0) {
            return Err(RelationError::ZeroIndex);
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(RelationError::NonIncreasing(support));
        }
        if conjugators.len() != support.len() {
            return Err(RelationError::ConjugatorCount {
                support: support.len(),
                conjugators: conjugators.len(),
            });
        }
        Ok(Self {
            support,
            conjugators,
        })
    }

    /// A relation without conjugations.
    pub fn conjugation_free(support: Vec<usize>) -> Result<Self, RelationError> {
        let conjugators = vec![Word::identity(); support.len()];
        Self::new(support, conjugators)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn conjugators(&self) -> &[Word] {
        &self.conjugators
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Length at least three.
    pub fn is_multiple(&self) -> bool {
        self.support.len() >= 3
    }

    pub fn is_conjugation_free(&self) -> bool {
        self.conjugators.iter().all(Word::is_identity)
    }

    fn max_generator(&self) -> usize {
        let conj = self.conjugators.iter().map(Word::max_generator).max();
        self.support
            .last()
            .copied()
            .unwrap_or(0)
            .max(conj.unwrap_or(0))
    }

    fn canonical_key(&self) -> (std::cmp::Reverse<usize>, &[usize], &[Word]) {
        (
            std::cmp::Reverse(self.support.len()),
            &self.support,
            &self.conjugators,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relation {relation} uses generator {index}, but there are only {n} generators")]
    IndexOutOfRange {
        relation: usize,
        index: usize,
        n: usize,
    },
}

/// Generators plus cyclic relations, kept in canonical order
/// (length descending, then support lexicographic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    n: usize,
    relations: Vec<CyclicRelation>,
    implicit_commutators: bool,
}

impl Presentation {
    /// Builds a presentation. When `implicit_commutators` is set, every pair
    /// of generators not contained in any support receives a conjugation-free
    /// commutator relation.
    pub fn new(
        n: usize,
        mut relations: Vec<CyclicRelation>,
        implicit_commutators: bool,
    ) -> Result<Self, PresentationError> {
        for (i, rel) in relations.iter().enumerate() {
            let max = rel.max_generator();
            if max > n {
                return Err(PresentationError::IndexOutOfRange {
                    relation: i,
                    index: max,
                    n,
                });
            }
        }
        if implicit_commutators {
            let mut covered = vec![vec![false; n + 1]; n + 1];
            for rel in &relations {
                for (a, &i) in rel.support.iter().enumerate() {
                    for &j in &rel.support[a + 1..] {
                        covered[i][j] = true;
                    }
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    if !covered[i][j] {
                        relations.push(
                            CyclicRelation::conjugation_free(vec![i, j])
                                .expect("pair support is increasing"),
                        );
                    }
                }
            }
        }
        relations.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        Ok(Self {
            n,
            relations,
            implicit_commutators,
        })
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[CyclicRelation] {
        &self.relations
    }

    pub fn implicit_commutators(&self) -> bool {
        self.implicit_commutators
    }

    /// Relations of length at least three, with their canonical indices.
    pub fn multiple_relations(&self) -> impl Iterator<Item = (usize, &CyclicRelation)> {
        self.relations
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_multiple())
    }

    /// Applies `perm` (a permutation of `1..=n`, given as `perm[i-1]`) to every
    /// generator index in supports and conjugators.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                let mut pairs: Vec<(usize, Word)> = rel
                    .support
                    .iter()
                    .zip(&rel.conjugators)
                    .map(|(&g, w)| {
                        let w = Word::from_letters(
                            w.letters
                                .iter()
                                .map(|l| Letter {
                                    generator: perm[l.generator - 1],
                                    inverse: l.inverse,
                                })
                                .collect(),
                        );
                        (perm[g - 1], w)
                    })
                    .collect();
                pairs.sort_by_key(|(g, _)| *g);
                let (support, conj) = pairs.into_iter().unzip();
                CyclicRelation::new(support, conj).expect("permutation keeps support valid")
            })
            .collect();
        Self::new(self.n, relations, self.implicit_commutators).expect("indices stay in range")
    }
}

/// One failure of the cyclic-related requirements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// No relation contains this generator pair.
    UncoveredPair { pair: (usize, usize) },
    /// More than one relation contains this pair.
    PairCoveredTwice {
        pair: (usize, usize),
        relations: Vec<usize>,
    },
    /// Two supports share two or more generators.
    Overlap {
        relations: (usize, usize),
        common: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UncoveredPair { pair } => {
                write!(f, "pair {{{},{}}} is not covered by any relation", pair.0, pair.1)
            }
            Violation::PairCoveredTwice { pair, relations } => {
                let ids: Vec<String> = relations.iter().map(|r| format!("R{}", r + 1)).collect();
                write!(
                    f,
                    "pair {{{},{}}} is covered by {}",
                    pair.0,
                    pair.1,
                    ids.join(",")
                )
            }
            Violation::Overlap { relations, common } => write!(
                f,
                "R{} and R{} share generators {}",
                relations.0 + 1,
                relations.1 + 1,
                join(common, ",")
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks pair coverage (every pair in exactly one support) and the overlap
/// bound (two supports share at most one generator). Relation numbers in the
/// report refer to canonical order.
pub fn validate(p: &Presentation) -> ValidationReport {
    let n = p.n;
    let mut cover: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n + 1]; n + 1];
    for (r, rel) in p.relations.iter().enumerate() {
        for (a, &i) in rel.support.iter().enumerate() {
            for &j in &rel.support[a + 1..] {
                cover[i][j].push(r);
            }
        }
    }
    let mut violations = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            match cover[i][j].len() {
                0 => violations.push(Violation::UncoveredPair { pair: (i, j) }),
                1 => {}
                _ => violations.push(Violation::PairCoveredTwice {
                    pair: (i, j),
                    relations: cover[i][j].clone(),
                }),
            }
        }
    }
    for (r, a) in p.relations.iter().enumerate() {
        for (s, b) in p.relations.iter().enumerate().skip(r + 1) {
            let common = intersect_sorted(&a.support, &b.support);
            if common.len() >= 2 {
                violations.push(Violation::Overlap {
                    relations: (r, s),
                    common,
                });
            }
        }
    }
    ValidationReport { violations }
}

pub fn is_conjugation_free(p: &Presentation) -> bool {
    p.relations.iter().all(CyclicRelation::is_conjugation_free)
}

/// The multiset of relation supports.
pub fn incidence_of(p: &Presentation) -> IncidenceData {
    IncidenceData::new(
        p.n,
        p.relations.iter().map(|r| r.support.clone()).collect(),
    )
    .expect("presentation supports are in range")
}

pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn join(items: &[usize], sep: &str) -> String {
    items
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    MissingHeader,
    IndexOutOfRange { index: usize, n: usize },
    NonIncreasingSupport,
    Relation(RelationError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => f.write_str(msg),
            ParseErrorKind::MissingHeader => f.write_str("expected `generators <n>` first"),
            ParseErrorKind::IndexOutOfRange { index, n } => {
                write!(f, "generator index {index} out of range 1..={n}")
            }
            ParseErrorKind::NonIncreasingSupport => {
                f.write_str("relation support must be strictly increasing")
            }
            ParseErrorKind::Relation(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Require explicit coverage of every pair, as if the file said `strict`.
    pub force_strict: bool,
}

/// Parses the presentation text format with default options.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    parse_presentation_with(text, ParseOptions::default())
}

pub fn parse_presentation_with(
    text: &str,
    options: ParseOptions,
) -> Result<Presentation, ParseError> {
    let mut n: Option<usize> = None;
    let mut strict = options.force_strict;
    let mut relations = Vec::new();

    for (line_idx, raw) in text.lines().enumerate() {
        let line_no = line_idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content);
        let Some(&(col, head)) = tokens.first() else {
            continue;
        };
        let err = |column: usize, kind: ParseErrorKind| ParseError {
            line: line_no,
            column,
            kind,
        };
        match (head, n) {
            ("generators", None) => {
                let &(c, tok) = tokens
                    .get(1)
                    .ok_or_else(|| err(col, syntax("expected generator count")))?;
                let count = tok
                    .parse::<usize>()
                    .map_err(|_| err(c, syntax(&format!("invalid generator count `{tok}`"))))?;
                if let Some(&(c, extra)) = tokens.get(2) {
                    return Err(err(c, syntax(&format!("unexpected `{extra}`"))));
                }
                n = Some(count);
            }
            ("generators", Some(_)) => {
                return Err(err(col, syntax("duplicate `generators` line")));
            }
            (_, None) => return Err(err(col, ParseErrorKind::MissingHeader)),
            ("strict", Some(_)) => {
                if let Some(&(c, extra)) = tokens.get(1) {
                    return Err(err(c, syntax(&format!("unexpected `{extra}`"))));
                }
                strict = true;
            }
            ("relation", Some(n)) => {
                relations.push(parse_relation(&tokens[1..], n, col, line_no)?);
            }
            (other, Some(_)) => {
                return Err(err(col, syntax(&format!("unknown directive `{other}`"))));
            }
        }
    }

    let n = n.ok_or(ParseError {
        line: text.lines().count().max(1),
        column: 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    Ok(Presentation::new(n, relations, !strict).expect("indices checked while parsing"))
}

fn syntax(msg: &str) -> ParseErrorKind {
    ParseErrorKind::Syntax(msg.to_string())
}

/// Splits on whitespace; `;` is always its own token. Columns are 1-based.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut col_of = Vec::with_capacity(line.len() + 1);
    let mut col = 1;
    for (b, _) in line.char_indices() {
        col_of.push((b, col));
        col += 1;
    }
    let column = |byte: usize| {
        col_of
            .iter()
            .find(|(b, _)| *b == byte)
            .map(|(_, c)| *c)
            .unwrap_or(col)
    };
    for (b, ch) in line.char_indices() {
        if ch.is_whitespace() || ch == ';' {
            if let Some(s) = start.take() {
                out.push((column(s), &line[s..b]));
            }
            if ch == ';' {
                out.push((column(b), ";"));
            }
        } else if start.is_none() {
            start = Some(b);
        }
    }
    if let Some(s) = start {
        out.push((column(s), &line[s..]));
    }
    out
}

fn parse_relation(
    tokens: &[(usize, &str)],
    n: usize,
    head_col: usize,
    line: usize,
) -> Result<CyclicRelation, ParseError> {
    let err = |column: usize, kind: ParseErrorKind| ParseError { line, column, kind };
    let conj_at = tokens.iter().position(|&(_, t)| t == "conj");
    let (support_toks, conj_toks) = match conj_at {
        Some(i) => (&tokens[..i], Some(&tokens[i + 1..])),
        None => (tokens, None),
    };

    let mut support = Vec::with_capacity(support_toks.len());
    for &(c, tok) in support_toks {
        let idx = tok
            .parse::<usize>()
            .map_err(|_| err(c, syntax(&format!("expected generator index, found `{tok}`"))))?;
        if idx == 0 || idx > n {
            return Err(err(c, ParseErrorKind::IndexOutOfRange { index: idx, n }));
        }
        if let Some(&prev) = support.last() {
            if idx <= prev {
                return Err(err(c, ParseErrorKind::NonIncreasingSupport));
            }
        }
        support.push(idx);
    }
    if support.len() < 2 {
        return Err(err(
            head_col,
            ParseErrorKind::Relation(RelationError::TooShort(support.len())),
        ));
    }

    let conjugators = match conj_toks {
        None => vec![Word::identity(); support.len()],
        Some(toks) => {
            let mut words = Vec::new();
            for group in toks.split(|&(_, t)| t == ";") {
                words.push(parse_word(group, n, line)?);
            }
            if words.len() != support.len() {
                let c = conj_at.map(|i| tokens[i].0).unwrap_or(head_col);
                return Err(err(
                    c,
                    ParseErrorKind::Relation(RelationError::ConjugatorCount {
                        support: support.len(),
                        conjugators: words.len(),
                    }),
                ));
            }
            words
        }
    };
    CyclicRelation::new(support, conjugators).map_err(|e| err(head_col, ParseErrorKind::Relation(e)))
}

fn parse_word(tokens: &[(usize, &str)], n: usize, line: usize) -> Result<Word, ParseError> {
    let err = |column: usize, kind: ParseErrorKind| ParseError { line, column, kind };
    match tokens {
        [] => Err(ParseError {
            line,
            column: 1,
            kind: syntax("empty conjugator; write `e` for the identity"),
        }),
        [(_, "e")] => Ok(Word::identity()),
        _ => {
            let mut letters = Vec::new();
            for &(c, tok) in tokens {
                let body = tok
                    .strip_prefix('x')
                    .ok_or_else(|| err(c, syntax(&format!("expected `x<i>`, found `{tok}`"))))?;
                let (idx, exp) = match body.split_once('^') {
                    Some((i, e)) => (i, e),
                    None => (body, "1"),
                };
                let generator = idx
                    .parse::<usize>()
                    .map_err(|_| err(c, syntax(&format!("invalid generator `{tok}`"))))?;
                if generator == 0 || generator > n {
                    return Err(err(c, ParseErrorKind::IndexOutOfRange { index: generator, n }));
                }
                let exp = exp
                    .parse::<i64>()
                    .map_err(|_| err(c, syntax(&format!("invalid exponent in `{tok}`"))))?;
                if exp == 0 {
                    return Err(err(c, syntax("exponent must be non-zero")));
                }
                for _ in 0..exp.unsigned_abs() {
                    letters.push(Letter {
                        generator,
                        inverse: exp < 0,
                    });
                }
            }
            Ok(Word::from_letters(letters))
        }
    }
}

/// Canonical serialization; parsing it back yields an equal presentation.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.n)?;
        if !self.implicit_commutators {
            writeln!(f, "strict")?;
        }
        for rel in &self.relations {
            write!(f, "relation {}", join(&rel.support, " "))?;
            if !rel.is_conjugation_free() {
                let words: Vec<String> = rel.conjugators.iter().map(Word::to_string).collect();
                write!(f, " conj {}", words.join(" ; "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Supports of every relation, as sets, for quick membership queries.
pub fn support_sets(p: &Presentation) -> Vec<BTreeSet<usize>> {
    p.relations
        .iter()
        .map(|r| r.support.iter().copied().collect())
        .collect()
}
