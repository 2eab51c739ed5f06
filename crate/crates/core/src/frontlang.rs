//! A small text format for Legendrian front projections.
//!
//! A front is read left to right as a sequence of events acting on a stack
//! of horizontal strands numbered from the top (position 1 is highest):
//!
//! * `L<p>`: a left cusp creating two new strands at positions `p`, `p+1`
//!   (`1 ≤ p ≤ n+1`),
//! * `R<p>`: a right cusp joining the strands at `p` and `p+1`
//!   (`1 ≤ p ≤ n−1`),
//! * `X<p>`: a crossing of the strands at `p` and `p+1` (`1 ≤ p ≤ n−1`).
//!
//! The strand count must return to zero. At a crossing the strand moving
//! from upper left to lower right has the smaller slope and is in front.
//!
//! A document file looks like
//!
//! ```text
//! # comments start with '#'
//! surgery L1 coeff +1/1
//! companion K legendrian
//! events: L1 L3 X2 X2 X2 R1 R1
//!         L1 R1
//! ```
//!
//! Header lines assign roles to the traced components in trace order
//! (components are ordered by their first left cusp):
//!
//! * `surgery <name> [coeff <±1/m>] [reverse]`
//! * `companion <name> legendrian [reverse]`
//! * `companion <name> transverse [positive|negative] [reverse]`
//!
//! Every token after `events:` (on that line and all following lines) is an
//! event. A text without an `events:` line is read as a bare event list.
//!
//! Each component is oriented so that the upper branch at its first left
//! cusp points right; `reverse` flips that.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::model::{
    CoefficientError, CompanionKnot, ContactCoefficient, LegendrianComponent, SurgeryDiagram,
    TransverseSign,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrontEvent {
    LeftCusp(usize),
    RightCusp(usize),
    Crossing(usize),
}

impl fmt::Display for FrontEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrontEvent::LeftCusp(p) => write!(f, "L{p}"),
            FrontEvent::RightCusp(p) => write!(f, "R{p}"),
            FrontEvent::Crossing(p) => write!(f, "X{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Surgery { coeff: Option<ContactCoefficient> },
    Legendrian,
    Transverse(TransverseSign),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentHeader {
    pub name: String,
    pub role: Role,
    pub reversed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrontErrorKind {
    Syntax,
    Validity,
}

/// A parse failure anchored at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {} error: {message}", match .kind { FrontErrorKind::Syntax => "syntax", FrontErrorKind::Validity => "validity" })]
pub struct FrontError {
    pub kind: FrontErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ToDiagramError {
    #[error("the front has no header lines; every component needs a surgery or companion role")]
    NoRoles,
    #[error("surgery component {0:?} has no contact coefficient")]
    MissingCoefficient(String),
    #[error("companion {0:?} is transverse; transverse knots are entered numerically in diagram files, not as fronts")]
    TransverseFront(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CuspSide {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Cusp {
    side: CuspSide,
    upper: usize,
    lower: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct CrossingArcs {
    over: usize,
    under: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Arc {
    component: usize,
    /// Direction under the default orientation of its component.
    rightward: bool,
}

/// Arcs (cusp-to-cusp pieces of strand), cusps and crossings of a valid
/// event list, with every arc assigned to a component.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Trace {
    arcs: Vec<Arc>,
    cusps: Vec<Cusp>,
    crossings: Vec<CrossingArcs>,
    components: usize,
}

impl Trace {
    fn build(events: &[FrontEvent]) -> Trace {
        let mut slots: Vec<usize> = Vec::new();
        let mut cusps = Vec::new();
        let mut crossings = Vec::new();
        // per arc: (left cusp, right cusp)
        let mut ends: Vec<(usize, usize)> = Vec::new();

        for ev in events {
            match *ev {
                FrontEvent::LeftCusp(p) => {
                    let (u, l) = (ends.len(), ends.len() + 1);
                    ends.push((cusps.len(), usize::MAX));
                    ends.push((cusps.len(), usize::MAX));
                    slots.splice(p - 1..p - 1, [u, l]);
                    cusps.push(Cusp { side: CuspSide::Left, upper: u, lower: l });
                }
                FrontEvent::RightCusp(p) => {
                    let (u, l) = (slots[p - 1], slots[p]);
                    slots.drain(p - 1..=p);
                    ends[u].1 = cusps.len();
                    ends[l].1 = cusps.len();
                    cusps.push(Cusp { side: CuspSide::Right, upper: u, lower: l });
                }
                FrontEvent::Crossing(p) => {
                    crossings.push(CrossingArcs { over: slots[p - 1], under: slots[p] });
                    slots.swap(p - 1, p);
                }
            }
        }
        debug_assert!(slots.is_empty());

        let other = |cusp: &Cusp, arc: usize| if cusp.upper == arc { cusp.lower } else { cusp.upper };
        let mut arcs: Vec<Option<Arc>> = vec![None; ends.len()];
        let mut components = 0;
        for cusp in cusps.iter().filter(|c| c.side == CuspSide::Left) {
            if arcs[cusp.upper].is_some() {
                continue;
            }
            let start = cusp.upper;
            let (mut arc, mut rightward) = (start, true);
            loop {
                arcs[arc] = Some(Arc { component: components, rightward });
                let next_cusp = if rightward { &cusps[ends[arc].1] } else { &cusps[ends[arc].0] };
                arc = other(next_cusp, arc);
                rightward = !rightward;
                if arc == start {
                    break;
                }
            }
            components += 1;
        }

        Trace {
            arcs: arcs.into_iter().map(|a| a.expect("every arc lies on a closed component")).collect(),
            cusps,
            crossings,
            components,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontDocument {
    events: Vec<FrontEvent>,
    headers: Vec<ComponentHeader>,
    trace: Trace,
}

/// Classical invariants of one traced component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentInvariants {
    pub writhe: i64,
    pub cusps: usize,
    pub tb: i64,
    pub rot: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontInvariants {
    pub components: Vec<ComponentInvariants>,
    /// Pairwise linking numbers, zero on the diagonal.
    pub linking: Vec<Vec<i64>>,
}

impl FrontDocument {
    /// Builds a document from an event list, checking strand positions.
    pub fn from_events(events: Vec<FrontEvent>) -> Result<Self, FrontError> {
        let located: Vec<(FrontEvent, usize, usize)> = events.into_iter().map(|e| (e, 1, 1)).collect();
        Self::assemble(located, Vec::new(), (1, 1))
    }

    pub fn with_headers(mut self, headers: Vec<ComponentHeader>) -> Result<Self, FrontError> {
        check_header_count(&headers, self.trace.components, (1, 1))?;
        self.headers = headers;
        Ok(self)
    }

    fn assemble(
        events: Vec<(FrontEvent, usize, usize)>,
        headers: Vec<ComponentHeader>,
        end: (usize, usize),
    ) -> Result<Self, FrontError> {
        let mut strands = 0usize;
        for &(ev, line, column) in &events {
            let invalid = |message: String| FrontError { kind: FrontErrorKind::Validity, line, column, message };
            match ev {
                FrontEvent::LeftCusp(p) => {
                    if p == 0 || p > strands + 1 {
                        return Err(invalid(format!(
                            "{ev} with {strands} strands requires position between 1 and {}",
                            strands + 1
                        )));
                    }
                    strands += 2;
                }
                FrontEvent::RightCusp(p) | FrontEvent::Crossing(p) => {
                    if p == 0 || p + 1 > strands {
                        return Err(invalid(if strands < 2 {
                            format!("{ev} needs at least 2 strands, found {strands}")
                        } else {
                            format!("{ev} with {strands} strands requires position ≤ {}", strands - 1)
                        }));
                    }
                    if matches!(ev, FrontEvent::RightCusp(_)) {
                        strands -= 2;
                    }
                }
            }
        }
        if strands != 0 {
            let (line, column) = events.last().map_or(end, |&(_, l, c)| (l, c));
            return Err(FrontError {
                kind: FrontErrorKind::Validity,
                line,
                column,
                message: format!("front ends with {strands} open strands"),
            });
        }
        let events: Vec<FrontEvent> = events.into_iter().map(|(e, _, _)| e).collect();
        let trace = Trace::build(&events);
        check_header_count(&headers, trace.components, end)?;
        Ok(FrontDocument { events, headers, trace })
    }

    pub fn events(&self) -> &[FrontEvent] {
        &self.events
    }

    pub fn headers(&self) -> &[ComponentHeader] {
        &self.headers
    }

    pub fn component_count(&self) -> usize {
        self.trace.components
    }

    /// Orientation flags per component (`true` = reversed).
    fn reversals(&self) -> Vec<bool> {
        let mut r = vec![false; self.trace.components];
        for (i, h) in self.headers.iter().enumerate() {
            r[i] = h.reversed;
        }
        r
    }

    /// Serializes back to the text format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for h in &self.headers {
            match &h.role {
                Role::Surgery { coeff } => {
                    out.push_str(&format!("surgery {}", h.name));
                    if let Some(c) = coeff {
                        out.push_str(&format!(" coeff {c}"));
                    }
                }
                Role::Legendrian => out.push_str(&format!("companion {} legendrian", h.name)),
                Role::Transverse(sign) => {
                    let s = match sign {
                        TransverseSign::Positive => "positive",
                        TransverseSign::Negative => "negative",
                    };
                    out.push_str(&format!("companion {} transverse {s}", h.name));
                }
            }
            if h.reversed {
                out.push_str(" reverse");
            }
            out.push('\n');
        }
        out.push_str("events:");
        for chunk in self.events.chunks(16) {
            for e in chunk {
                out.push(' ');
                out.push_str(&e.to_string());
            }
            out.push('\n');
        }
        if self.events.is_empty() {
            out.push('\n');
        }
        out
    }
}

fn check_header_count(headers: &[ComponentHeader], components: usize, at: (usize, usize)) -> Result<(), FrontError> {
    if !headers.is_empty() && headers.len() != components {
        return Err(FrontError {
            kind: FrontErrorKind::Validity,
            line: at.0,
            column: at.1,
            message: format!("{} header lines for {components} traced components", headers.len()),
        });
    }
    Ok(())
}

fn parse_event(token: &str) -> Option<FrontEvent> {
    let (kind, pos) = token.split_at(token.char_indices().nth(1).map_or(token.len(), |(i, _)| i));
    if pos.is_empty() || !pos.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let p: usize = pos.parse().ok()?;
    match kind {
        "L" => Some(FrontEvent::LeftCusp(p)),
        "R" => Some(FrontEvent::RightCusp(p)),
        "X" => Some(FrontEvent::Crossing(p)),
        _ => None,
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(move |(s, t)| (line[..s].chars().count() + 1, t))
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

fn parse_header(line_no: usize, line: &str) -> Result<ComponentHeader, FrontError> {
    let toks: Vec<(usize, &str)> = tokens(line).collect();
    let syntax = |column: usize, message: String| FrontError { kind: FrontErrorKind::Syntax, line: line_no, column, message };
    let end_col = line.chars().count() + 1;
    let (kw_col, keyword) = toks[0];
    if keyword != "surgery" && keyword != "companion" {
        return Err(syntax(kw_col, format!("expected 'surgery', 'companion' or 'events:', found {keyword:?}")));
    }
    let Some(&(_, name)) = toks.get(1) else {
        return Err(syntax(end_col, format!("{keyword} line needs a component name")));
    };
    let mut rest = toks[2..].iter().copied().peekable();
    let role = match keyword {
        "surgery" => {
            let mut coeff = None;
            if let Some(&(col, "coeff")) = rest.peek() {
                rest.next();
                let Some((ccol, text)) = rest.next() else {
                    return Err(syntax(col, "coeff needs a value of the form ±1/m".into()));
                };
                coeff = Some(text.parse::<ContactCoefficient>().map_err(|e| match e {
                    CoefficientError::General(_) => FrontError {
                        kind: FrontErrorKind::Validity,
                        line: line_no,
                        column: ccol,
                        message: e.to_string(),
                    },
                    _ => syntax(ccol, e.to_string()),
                })?);
            }
            Role::Surgery { coeff }
        }
        "companion" => match rest.next() {
            Some((_, "legendrian")) => Role::Legendrian,
            Some((_, "transverse")) => {
                let sign = match rest.peek() {
                    Some(&(_, "positive")) => {
                        rest.next();
                        TransverseSign::Positive
                    }
                    Some(&(_, "negative")) => {
                        rest.next();
                        TransverseSign::Negative
                    }
                    _ => TransverseSign::Positive,
                };
                Role::Transverse(sign)
            }
            Some((col, other)) => {
                return Err(syntax(col, format!("expected 'legendrian' or 'transverse', found {other:?}")))
            }
            None => return Err(syntax(end_col, "companion line needs 'legendrian' or 'transverse'".into())),
        },
        _ => unreachable!(),
    };
    let mut reversed = false;
    for (col, tok) in rest {
        if tok == "reverse" && !reversed {
            reversed = true;
        } else {
            return Err(syntax(col, format!("unexpected {tok:?}")));
        }
    }
    Ok(ComponentHeader { name: name.to_string(), role, reversed })
}

/// Parses a front document. See the module docs for the grammar.
pub fn parse_front(text: &str) -> Result<FrontDocument, FrontError> {
    let lines: Vec<&str> = text.lines().map(strip_comment).collect();
    let events_line = lines
        .iter()
        .position(|l| tokens(l).next().is_some_and(|(_, t)| t.starts_with("events:")));

    let mut headers = Vec::new();
    let mut events = Vec::new();
    let mut push_events = |line_no: usize, toks: Vec<(usize, &str)>| -> Result<(), FrontError> {
        for (column, tok) in toks {
            let ev = parse_event(tok).ok_or_else(|| FrontError {
                kind: FrontErrorKind::Syntax,
                line: line_no,
                column,
                message: format!("bad event token {tok:?}; expected L<p>, R<p> or X<p>"),
            })?;
            events.push((ev, line_no, column));
        }
        Ok(())
    };

    let body_start = match events_line {
        Some(idx) => {
            for (i, line) in lines[..idx].iter().enumerate() {
                if tokens(line).next().is_some() {
                    headers.push(parse_header(i + 1, line)?);
                }
            }
            let line = lines[idx];
            let mut toks: Vec<(usize, &str)> = tokens(line).collect();
            let (col, first) = toks[0];
            let rest = &first["events:".len()..];
            if rest.is_empty() {
                toks.remove(0);
            } else {
                toks[0] = (col + "events:".chars().count(), rest);
            }
            push_events(idx + 1, toks)?;
            idx + 1
        }
        None => 0,
    };
    for (i, line) in lines.iter().enumerate().skip(body_start) {
        push_events(i + 1, tokens(line).collect())?;
    }

    let end = (lines.len().max(1), lines.last().map_or(0, |l| l.chars().count()) + 1);
    FrontDocument::assemble(events, headers, end)
}

/// Writhe, tb and rot of every component, and the pairwise linking
/// numbers.
///
/// `tb = writhe − #cusps/2`. `rot = (D − U)/2` where `D` (`U`) counts cusps
/// passed while moving down (up). A crossing is positive when both strands
/// run in the same horizontal direction.
pub fn classical_invariants(doc: &FrontDocument) -> FrontInvariants {
    let trace = &doc.trace;
    let reversed = doc.reversals();
    let n = trace.components;
    let rightward = |arc: usize| {
        let a = trace.arcs[arc];
        a.rightward != reversed[a.component]
    };

    let mut writhe = vec![0i64; n];
    let mut cusps = vec![0usize; n];
    let mut down_minus_up = vec![0i64; n];
    let mut linking2 = vec![vec![0i64; n]; n];

    for cusp in &trace.cusps {
        let c = trace.arcs[cusp.upper].component;
        cusps[c] += 1;
        let upper_right = rightward(cusp.upper);
        let down = match cusp.side {
            // arriving along the upper branch from the right
            CuspSide::Left => !upper_right,
            // arriving along the upper branch from the left
            CuspSide::Right => upper_right,
        };
        down_minus_up[c] += if down { 1 } else { -1 };
    }

    for x in &trace.crossings {
        let sign = if rightward(x.over) == rightward(x.under) { 1 } else { -1 };
        let (a, b) = (trace.arcs[x.over].component, trace.arcs[x.under].component);
        if a == b {
            writhe[a] += sign;
        } else {
            linking2[a][b] += sign;
            linking2[b][a] += sign;
        }
    }

    let components = (0..n)
        .map(|c| {
            debug_assert!(cusps[c].is_even() && down_minus_up[c].is_even());
            ComponentInvariants {
                writhe: writhe[c],
                cusps: cusps[c],
                tb: writhe[c] - cusps[c] as i64 / 2,
                rot: down_minus_up[c] / 2,
            }
        })
        .collect();
    let linking = linking2
        .into_iter()
        .map(|row| row.into_iter().map(|x| x / 2).collect())
        .collect();
    FrontInvariants { components, linking }
}

/// Assembles a surgery diagram from a fully annotated front.
pub fn to_diagram(doc: &FrontDocument) -> Result<SurgeryDiagram, ToDiagramError> {
    if doc.headers.is_empty() && doc.component_count() > 0 {
        return Err(ToDiagramError::NoRoles);
    }
    let inv = classical_invariants(doc);
    let surgery_idx: Vec<usize> = doc
        .headers
        .iter()
        .enumerate()
        .filter(|(_, h)| matches!(h.role, Role::Surgery { .. }))
        .map(|(i, _)| i)
        .collect();

    let mut components = Vec::new();
    for &i in &surgery_idx {
        let h = &doc.headers[i];
        let Role::Surgery { coeff } = &h.role else { unreachable!() };
        let coeff = coeff.ok_or_else(|| ToDiagramError::MissingCoefficient(h.name.clone()))?;
        let c = inv.components[i];
        components.push(LegendrianComponent::new(h.name.clone(), c.tb, c.rot, coeff));
    }
    let linking = surgery_idx
        .iter()
        .map(|&i| surgery_idx.iter().map(|&j| inv.linking[i][j]).collect())
        .collect();

    let mut knots = Vec::new();
    for (i, h) in doc.headers.iter().enumerate() {
        match h.role {
            Role::Surgery { .. } => {}
            Role::Transverse(_) => return Err(ToDiagramError::TransverseFront(h.name.clone())),
            Role::Legendrian => {
                let c = inv.components[i];
                let lk = surgery_idx.iter().map(|&j| inv.linking[i][j]).collect();
                knots.push(CompanionKnot::legendrian(h.name.clone(), c.tb, c.rot, lk));
            }
        }
    }
    Ok(SurgeryDiagram { components, linking, knots })
}
