//! The `.twa` text format.
//!
//! ```text
//! twa 1
//! semiring max-plus        # or: min-plus | max-plus-pair
//! alphabet a b
//! states 2
//! initial 0 0
//! final 0 0
//! final 1 1
//! trans 0 1 a 1
//! trans 1 0 b 2
//! ```
//!
//! Lines are whitespace separated; `#` starts a comment. The four header
//! lines come first, in this order. Absent arcs carry the semiring zero, which
//! has no literal. Pair weights are written `w1,w2`.

use std::fmt::Write as _;

use crate::automaton::{Alphabet, WeightedAutomaton};
use crate::disambiguation::PairAutomaton;
use crate::error::{Error, Result};
use crate::semiring::{PairWeight, SemiringTag, Weight};

/// Contents of a `.twa` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwaFile {
    Scalar(WeightedAutomaton),
    Pair(PairAutomaton),
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

/// Attaches the line number to errors raised by the automaton builders.
fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Syntax { .. } => e,
        other => syntax(line, other.to_string()),
    }
}

struct Header {
    tag: SemiringTag,
    alphabet: Alphabet,
    states: usize,
}

enum Body {
    Initial(usize, String),
    Final(usize, String),
    Trans(usize, usize, char, String),
}

fn parse_state(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| syntax(line, format!("invalid state {tok:?}")))
}

fn parse_symbol(tok: &str, line: usize) -> Result<char> {
    let mut chars = tok.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(syntax(line, format!("symbol {tok:?} must be a single character"))),
    }
}

fn split(text: &str) -> Result<(Header, Vec<(usize, Body)>)> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    });

    let mut expect = |key: &str| -> Result<(usize, Vec<&str>)> {
        match lines.next() {
            Some((line, toks)) if toks[0] == key => Ok((line, toks[1..].to_vec())),
            Some((line, toks)) => Err(syntax(line, format!("expected `{key}`, found `{}`", toks[0]))),
            None => Err(syntax(0, format!("missing `{key}` header"))),
        }
    };

    let (line, version) = expect("twa")?;
    if version != ["1"] {
        return Err(syntax(line, "unsupported format version (expected `twa 1`)"));
    }
    let (line, tag) = expect("semiring")?;
    let tag: SemiringTag = match tag.as_slice() {
        [name] => name.parse().map_err(at(line))?,
        _ => return Err(syntax(line, "expected one semiring name")),
    };
    if tag == SemiringTag::Boolean {
        return Err(syntax(line, "boolean automata have no `.twa` form"));
    }
    let (line, symbols) = expect("alphabet")?;
    let symbols = symbols
        .iter()
        .map(|t| parse_symbol(t, line))
        .collect::<Result<Vec<_>>>()?;
    let alphabet = Alphabet::new(symbols).map_err(at(line))?;
    let (line, states) = expect("states")?;
    let states = match states.as_slice() {
        [n] => parse_state(n, line)?,
        _ => return Err(syntax(line, "expected `states <count>`")),
    };

    let mut body = Vec::new();
    for (line, toks) in lines {
        let item = match toks.as_slice() {
            ["initial", s, w] => Body::Initial(parse_state(s, line)?, w.to_string()),
            ["final", s, w] => Body::Final(parse_state(s, line)?, w.to_string()),
            ["trans", p, q, a, w] => Body::Trans(
                parse_state(p, line)?,
                parse_state(q, line)?,
                parse_symbol(a, line)?,
                w.to_string(),
            ),
            ["twa" | "semiring" | "alphabet" | "states", ..] => {
                return Err(syntax(line, format!("repeated header `{}`", toks[0])))
            }
            [key, ..] => return Err(syntax(line, format!("malformed `{key}` line"))),
            [] => unreachable!("blank lines are filtered"),
        };
        body.push((line, item));
    }
    Ok((Header { tag, alphabet, states }, body))
}

/// Applies body lines through `sink`, rejecting duplicates and bad states.
fn replay<W>(
    header: &Header,
    body: &[(usize, Body)],
    parse_weight: impl Fn(&str) -> Result<W>,
    mut sink: impl FnMut(&Body, W) -> Result<()>,
) -> Result<()> {
    let n = header.states;
    let check = |s: usize, line: usize| {
        if s < n {
            Ok(())
        } else {
            Err(syntax(line, Error::StateOutOfRange { state: s, states: n }.to_string()))
        }
    };
    let mut seen_init = vec![false; n];
    let mut seen_final = vec![false; n];
    let mut seen_arc = std::collections::HashSet::new();
    for (line, item) in body {
        let line = *line;
        let raw = match item {
            Body::Initial(s, w) => {
                check(*s, line)?;
                if std::mem::replace(&mut seen_init[*s], true) {
                    return Err(syntax(line, format!("duplicate initial weight for state {s}")));
                }
                w
            }
            Body::Final(s, w) => {
                check(*s, line)?;
                if std::mem::replace(&mut seen_final[*s], true) {
                    return Err(syntax(line, format!("duplicate final weight for state {s}")));
                }
                w
            }
            Body::Trans(p, q, a, w) => {
                check(*p, line)?;
                check(*q, line)?;
                header.alphabet.index_of(*a).map_err(at(line))?;
                if !seen_arc.insert((*p, *q, *a)) {
                    return Err(syntax(line, format!("duplicate arc {p} -> {q} on {a}")));
                }
                w
            }
        };
        let weight = parse_weight(raw).map_err(at(line))?;
        sink(item, weight).map_err(at(line))?;
    }
    Ok(())
}

/// State labels from `# state <s> = <label>` comments, when every state has
/// exactly one.
fn comment_labels(text: &str, n: usize) -> Option<Vec<String>> {
    let mut labels: Vec<Option<String>> = vec![None; n];
    for raw in text.lines() {
        let Some(rest) = raw.trim_start().strip_prefix("# state ") else { continue };
        let Some((s, label)) = rest.split_once(" = ") else { continue };
        let Some(slot) = s.trim().parse::<usize>().ok().and_then(|s| labels.get_mut(s)) else { continue };
        if slot.replace(label.trim().to_string()).is_some() {
            return None;
        }
    }
    labels.into_iter().collect()
}

/// Parses a `.twa` document of any semiring. State labels written by
/// [`serialize`] are recovered from their comments.
pub fn parse_any(text: &str) -> Result<TwaFile> {
    let (header, body) = split(text)?;
    let labels = comment_labels(text, header.states);
    if header.tag == SemiringTag::MaxPlusPair {
        let mk = || WeightedAutomaton::new(SemiringTag::MaxPlus, header.alphabet.clone(), header.states);
        let (mut first, mut second) = (mk()?, mk()?);
        replay(&header, &body, |s| s.parse::<PairWeight>(), |item, w: PairWeight| {
            let (x, y) = (w.first().clone(), w.second().clone());
            match item {
                Body::Initial(s, _) => {
                    first.set_initial(*s, x)?;
                    second.set_initial(*s, y)
                }
                Body::Final(s, _) => {
                    first.set_final(*s, x)?;
                    second.set_final(*s, y)
                }
                Body::Trans(p, q, a, _) => {
                    first.set_arc(*p, *a, *q, x)?;
                    second.set_arc(*p, *a, *q, y)
                }
            }
        })?;
        first.set_labels(labels.clone());
        second.set_labels(labels);
        return Ok(TwaFile::Pair(PairAutomaton::from_coordinates(first, second)?));
    }

    let mut a = WeightedAutomaton::new(header.tag, header.alphabet.clone(), header.states)?;
    replay(&header, &body, |s| s.parse::<Weight>(), |item, w| match item {
        Body::Initial(s, _) => a.set_initial(*s, w),
        Body::Final(s, _) => a.set_final(*s, w),
        Body::Trans(p, q, c, _) => a.set_arc(*p, *c, *q, w),
    })?;
    a.set_labels(labels);
    Ok(TwaFile::Scalar(a))
}

/// Parses a max-plus or min-plus `.twa` document.
pub fn parse(text: &str) -> Result<WeightedAutomaton> {
    match parse_any(text)? {
        TwaFile::Scalar(a) => Ok(a),
        TwaFile::Pair(_) => Err(Error::TagMismatch {
            expected: "max-plus or min-plus".into(),
            found: SemiringTag::MaxPlusPair,
        }),
    }
}

fn header(out: &mut String, tag: SemiringTag, alphabet: &Alphabet, n: usize, labels: Option<&[String]>) {
    let _ = writeln!(out, "twa 1");
    let _ = writeln!(out, "semiring {tag}");
    let _ = writeln!(out, "alphabet {alphabet}");
    let _ = writeln!(out, "states {n}");
    if let Some(labels) = labels {
        for (s, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "# state {s} = {l}");
        }
    }
}

/// Canonical text: initial lines, then final lines, then arcs ordered by
/// source state, letter (alphabet order) and target state.
pub fn serialize(a: &WeightedAutomaton) -> String {
    let mut out = String::new();
    header(&mut out, a.tag(), a.alphabet(), a.num_states(), a.labels());
    for (s, w) in a.initial().iter().enumerate().filter(|(_, w)| w.is_finite()) {
        let _ = writeln!(out, "initial {s} {w}");
    }
    for (s, w) in a.finals().iter().enumerate().filter(|(_, w)| w.is_finite()) {
        let _ = writeln!(out, "final {s} {w}");
    }
    for (p, l, q, w) in a.arcs() {
        let _ = writeln!(out, "trans {p} {q} {} {w}", a.alphabet().symbol(l));
    }
    out
}

/// Canonical text of a pair automaton (`semiring max-plus-pair`).
pub fn serialize_pair(pa: &PairAutomaton) -> String {
    let (x, y) = (pa.first(), pa.second());
    let mut out = String::new();
    header(&mut out, SemiringTag::MaxPlusPair, x.alphabet(), x.num_states(), x.labels());
    for s in 0..x.num_states() {
        if x.initial()[s].is_finite() {
            let _ = writeln!(out, "initial {s} {},{}", x.initial()[s], y.initial()[s]);
        }
    }
    for s in 0..x.num_states() {
        if x.finals()[s].is_finite() {
            let _ = writeln!(out, "final {s} {},{}", x.finals()[s], y.finals()[s]);
        }
    }
    for (p, l, q, w) in x.arcs() {
        let w2 = y.matrix(l).get(p, q);
        let _ = writeln!(out, "trans {p} {q} {} {w},{w2}", x.alphabet().symbol(l));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const AMAX: &str = "twa 1\nsemiring max-plus\nalphabet a b\nstates 2\ninitial 0 0\nfinal 0 0\nfinal 1 1\n\
trans 0 1 a 1\ntrans 0 0 b 1\ntrans 1 0 a 1\ntrans 1 1 a 0\ntrans 1 0 b 2\ntrans 1 1 b 1\n";

    #[test]
    fn amax_round_trip() {
        let a = parse(AMAX).unwrap();
        assert_eq!(a, corpus::pair_max());
        assert_eq!(serialize(&a), AMAX);
        assert_eq!(parse(&serialize(&a)).unwrap(), a);
    }

    #[test]
    fn comments_blank_lines_and_fractions() {
        let text = "# header comment\ntwa 1\n\nsemiring min-plus # dual\nalphabet x\nstates 1\n\
initial 0 -1/2\nfinal 0 0.25\ntrans 0 0 x 3\n";
        let a = parse(text).unwrap();
        assert_eq!(a.tag(), SemiringTag::MinPlus);
        assert_eq!(a.initial()[0], Weight::from_ratio(-1, 2));
        assert_eq!(a.finals()[0], Weight::from_ratio(1, 4));
        assert_eq!(serialize(&a), "twa 1\nsemiring min-plus\nalphabet x\nstates 1\ninitial 0 -1/2\nfinal 0 1/4\ntrans 0 0 x 3\n");
    }

    #[test]
    fn out_of_range_state() {
        let text = "twa 1\nsemiring max-plus\nalphabet a\nstates 2\ntrans 0 5 a 1\n";
        match parse(text) {
            Err(Error::Syntax { line: 5, message }) => assert!(message.contains("out of range")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_semiring_header() {
        let text = "twa 1\nalphabet a\nstates 1\n";
        assert!(matches!(parse(text), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse("twa 1\n"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn duplicates_rejected() {
        let text = "twa 1\nsemiring max-plus\nalphabet a\nstates 1\ntrans 0 0 a 1\ntrans 0 0 a 2\n";
        assert!(matches!(parse(text), Err(Error::Syntax { line: 6, .. })));
        let text = "twa 1\nsemiring max-plus\nalphabet a\nstates 1\nfinal 0 1\nfinal 0 1\n";
        assert!(matches!(parse(text), Err(Error::Syntax { line: 6, .. })));
    }

    #[test]
    fn other_syntax_errors() {
        let base = "twa 1\nsemiring max-plus\nalphabet a b\nstates 1\n";
        for (extra, line) in [
            ("trans 0 0 c 1\n", 5),
            ("trans 0 0 a inf\n", 5),
            ("trans 0 0 ab 1\n", 5),
            ("initial 0\n", 5),
            ("states 3\n", 5),
            ("bogus 1 2\n", 5),
        ] {
            match parse(&format!("{base}{extra}")) {
                Err(Error::Syntax { line: l, .. }) => assert_eq!(l, line, "{extra}"),
                other => panic!("{extra}: unexpected {other:?}"),
            }
        }
        assert!(parse("twa 2\nsemiring max-plus\nalphabet a\nstates 1\n").is_err());
        assert!(parse("twa 1\nsemiring max-times\nalphabet a\nstates 1\n").is_err());
        assert!(parse("twa 1\nsemiring max-plus\nalphabet a a\nstates 1\n").is_err());
    }

    #[test]
    fn pair_round_trip() {
        let text = "twa 1\nsemiring max-plus-pair\nalphabet a\nstates 2\ninitial 0 0,0\nfinal 1 1,1\ntrans 0 1 a 1,-1\n";
        let TwaFile::Pair(p) = parse_any(text).unwrap() else { panic!("expected pair") };
        assert_eq!(serialize_pair(&p), text);
        assert!(parse(text).is_err());
        let mixed = text.replace("1,-1", "1");
        assert!(parse_any(&mixed).is_err());
    }
}
