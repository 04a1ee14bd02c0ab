//! Assembly text to programs.
//!
//! ```text
//! name double        # header lines
//! mode full
//! loop:              # label marker, may share a line with an instruction
//!   ADD r1 <- r1 r1 i:inc j:zero
//!   CONST r2 <- 3/2
//!   JGEZ loop        # if x0 >= 0 goto loop
//!   COPY             # x_i <- x_j
//!   ORACLE
//!   HALT
//! ```
//!
//! Shorthands: `JGEZ rK L` loads `x_K` into `x_0` and branches; `JMP L`
//! zeroes `x_0` and branches; `MOV rA <- rB` copies through `x_0`; a `HALT`
//! before the last line jumps to the final one.

use std::collections::HashMap;

use super::{BssProgram, CopyUpdate, Instruction, InstructionKind, Mode};
use crate::algebraic::ArithOp;
use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

const MAX_REGISTER: usize = 1 << 20;

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Whitespace-separated tokens with 1-based columns; `<-` always stands
/// alone.
fn tokenize(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let bytes = text.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        if bytes[k].is_ascii_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..k]));
            }
            k += 1;
        } else if text[k..].starts_with("<-") {
            if let Some(s) = start.take() {
                out.push((s + 1, &text[s..k]));
            }
            out.push((k + 1, "<-"));
            k += 2;
        } else {
            start.get_or_insert(k);
            k += 1;
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

enum Target {
    Label(String, usize, usize),
    Final,
}

struct Pending {
    ins: Instruction,
    target: Option<Target>,
    column: usize,
}

struct LineParser<'a> {
    line: usize,
    toks: &'a [(usize, &'a str)],
    pos: usize,
    end_col: usize,
}

impl<'a> LineParser<'a> {
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let t =
            self.toks.get(self.pos).copied().ok_or_else(|| err(self.line, self.end_col, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn register(&mut self) -> Result<usize> {
        let (col, t) = self.next("a register")?;
        let digits = t
            .strip_prefix('r')
            .or_else(|| t.strip_prefix('R'))
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| err(self.line, col, format!("expected a register like r1, found `{t}`")))?;
        let r: usize = digits.parse().map_err(|_| err(self.line, col, "register index too large"))?;
        if r > MAX_REGISTER {
            return Err(err(self.line, col, format!("register index {r} exceeds {MAX_REGISTER}")));
        }
        Ok(r)
    }

    fn arrow(&mut self) -> Result<()> {
        let (col, t) = self.next("`<-`")?;
        if t != "<-" {
            return Err(err(self.line, col, format!("expected `<-`, found `{t}`")));
        }
        Ok(())
    }

    fn label(&mut self) -> Result<Target> {
        let (col, t) = self.next("a label")?;
        if !is_label(t) {
            return Err(err(self.line, col, format!("`{t}` is not a label")));
        }
        Ok(Target::Label(t.to_string(), self.line, col))
    }

    fn updates(&mut self) -> Result<(CopyUpdate, CopyUpdate)> {
        let (mut i, mut j) = (None, None);
        while let Some(&(col, t)) = self.toks.get(self.pos) {
            self.pos += 1;
            let (reg, what) = t.split_once(':').ok_or_else(|| err(self.line, col, format!("unexpected `{t}`")))?;
            let u = match what {
                "inc" => CopyUpdate::Inc,
                "zero" => CopyUpdate::Zero,
                "keep" => CopyUpdate::Keep,
                _ => return Err(err(self.line, col, format!("copy update must be inc, zero or keep, found `{what}`"))),
            };
            let slot = match reg {
                "i" => &mut i,
                "j" => &mut j,
                _ => return Err(err(self.line, col, format!("unknown copy register `{reg}`"))),
            };
            if slot.replace(u).is_some() {
                return Err(err(self.line, col, format!("copy register `{reg}` updated twice")));
            }
        }
        Ok((i.unwrap_or_default(), j.unwrap_or_default()))
    }

    fn finish(&self) -> Result<()> {
        match self.toks.get(self.pos) {
            Some(&(col, t)) => Err(err(self.line, col, format!("unexpected `{t}`"))),
            None => Ok(()),
        }
    }
}

fn is_label(t: &str) -> bool {
    !t.is_empty() && t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn plain(kind: InstructionKind, line: usize) -> Instruction {
    Instruction { kind, i_update: CopyUpdate::Keep, j_update: CopyUpdate::Keep, line }
}

fn zero_r0(line: usize) -> Instruction {
    plain(InstructionKind::Compute { op: ArithOp::Sub, target: 0, lhs: 0, rhs: 0 }, line)
}

/// Parses assembly text.  A declared `mode linear` is enforced here.
pub fn parse_program(text: &str) -> Result<BssProgram> {
    let mut name = String::from("main");
    let mut mode = Mode::Full;
    let mut pending: Vec<Pending> = Vec::new();
    let mut labels: HashMap<String, (usize, usize, usize)> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokenize(body);
        let mut p = LineParser { line, toks: &toks, pos: 0, end_col: body.trim_end().len() + 1 };
        while let Some(&(col, t)) = toks.get(p.pos) {
            match t.strip_suffix(':') {
                Some(l) if is_label(l) && !l.contains(':') => {
                    let at = pending.len() + 1;
                    if l.bytes().all(|b| b.is_ascii_digit()) && l.parse::<usize>().ok() != Some(at) {
                        return Err(err(line, col, format!("numeric label {l} does not match its position {at}")));
                    }
                    if labels.insert(l.to_string(), (at, line, col)).is_some() {
                        return Err(err(line, col, format!("label `{l}` defined twice")));
                    }
                    p.pos += 1;
                }
                _ => break,
            }
        }
        let Some((col, word)) = toks.get(p.pos).copied() else {
            continue;
        };
        p.pos += 1;
        let push = |pending: &mut Vec<Pending>, ins: Instruction, target: Option<Target>| {
            pending.push(Pending { ins, target, column: col });
        };
        match word.to_ascii_uppercase().as_str() {
            "NAME" => {
                if !pending.is_empty() {
                    return Err(err(line, col, "header after the first instruction"));
                }
                let (_, id) = p.next("a program name")?;
                name = id.to_string();
            }
            "MODE" => {
                if !pending.is_empty() {
                    return Err(err(line, col, "header after the first instruction"));
                }
                let (c, m) = p.next("`full` or `linear`")?;
                mode = m.parse().map_err(|_| err(line, c, format!("mode must be full or linear, found `{m}`")))?;
            }
            op @ ("ADD" | "SUB" | "MUL" | "DIV") => {
                let op = match op {
                    "ADD" => ArithOp::Add,
                    "SUB" => ArithOp::Sub,
                    "MUL" => ArithOp::Mul,
                    _ => ArithOp::Div,
                };
                let target = p.register()?;
                p.arrow()?;
                let lhs = p.register()?;
                let rhs = p.register()?;
                let (i_update, j_update) = p.updates()?;
                let kind = InstructionKind::Compute { op, target, lhs, rhs };
                push(&mut pending, Instruction { kind, i_update, j_update, line }, None);
            }
            "CONST" => {
                let target = p.register()?;
                p.arrow()?;
                let (c, v) = p.next("a rational constant")?;
                let value = parse_rational(v).map_err(|_| err(line, c, format!("`{v}` is not a rational constant")))?;
                let (i_update, j_update) = p.updates()?;
                let kind = InstructionKind::SetConst { target, value };
                push(&mut pending, Instruction { kind, i_update, j_update, line }, None);
            }
            "JGEZ" => {
                let reg = match toks.get(p.pos) {
                    Some(&(_, t)) if toks.len() > p.pos + 1 && t.starts_with(['r', 'R']) => Some(p.register()?),
                    _ => None,
                };
                let target = p.label()?;
                p.finish()?;
                if let Some(k) = reg {
                    push(&mut pending, zero_r0(line), None);
                    let load = InstructionKind::Compute { op: ArithOp::Add, target: 0, lhs: k, rhs: 0 };
                    push(&mut pending, plain(load, line), None);
                }
                push(&mut pending, plain(InstructionKind::Branch { target: 0 }, line), Some(target));
            }
            "JMP" => {
                let target = p.label()?;
                p.finish()?;
                push(&mut pending, zero_r0(line), None);
                push(&mut pending, plain(InstructionKind::Branch { target: 0 }, line), Some(target));
            }
            "MOV" => {
                let target = p.register()?;
                p.arrow()?;
                let src = p.register()?;
                p.finish()?;
                push(&mut pending, zero_r0(line), None);
                let mv = InstructionKind::Compute { op: ArithOp::Add, target, lhs: src, rhs: 0 };
                push(&mut pending, plain(mv, line), None);
            }
            "COPY" => {
                p.finish()?;
                push(&mut pending, plain(InstructionKind::Copy, line), None);
            }
            "ORACLE" => {
                p.finish()?;
                push(&mut pending, plain(InstructionKind::Oracle, line), None);
            }
            "HALT" => {
                p.finish()?;
                push(&mut pending, plain(InstructionKind::Halt, line), None);
            }
            _ => return Err(err(line, col, format!("unknown instruction `{word}`"))),
        }
    }
    let Some(last) = pending.last() else {
        return Err(err(1, 1, "program has no instructions"));
    };
    if last.ins.kind != InstructionKind::Halt {
        return Err(err(last.ins.line, last.column, "the last instruction must be HALT"));
    }
    // Early HALTs become jumps to the final one.
    let mut expanded: Vec<Pending> = Vec::with_capacity(pending.len());
    let mut remap = vec![0usize; pending.len() + 2];
    let n = pending.len();
    for (k, pd) in pending.into_iter().enumerate() {
        remap[k + 1] = expanded.len() + 1;
        if pd.ins.kind == InstructionKind::Halt && k + 1 < n {
            let line = pd.ins.line;
            expanded.push(Pending { ins: zero_r0(line), target: None, column: pd.column });
            expanded.push(Pending {
                ins: plain(InstructionKind::Branch { target: 0 }, line),
                target: Some(Target::Final),
                column: pd.column,
            });
        } else {
            expanded.push(pd);
        }
    }
    remap[n + 1] = expanded.len() + 1;
    let total = expanded.len();
    let mut instructions = Vec::with_capacity(total);
    for pd in expanded {
        let mut ins = pd.ins;
        if let Some(t) = pd.target {
            let dest = match t {
                Target::Final => total,
                Target::Label(l, line, col) => match labels.get(&l) {
                    Some(&(at, _, _)) => remap[at],
                    None if l.bytes().all(|b| b.is_ascii_digit()) => {
                        let k: usize = l.parse().map_err(|_| err(line, col, "label out of range"))?;
                        if k == 0 || k > n {
                            return Err(err(line, col, format!("label {k} out of range 1..={n}")));
                        }
                        remap[k]
                    }
                    None => return Err(err(line, col, format!("undefined label `{l}`"))),
                },
            };
            if dest > total {
                return Err(err(ins.line, pd.column, "branch target past the end of the program"));
            }
            ins.kind = InstructionKind::Branch { target: dest };
        }
        if mode == Mode::Linear {
            if let Some(msg) = linear_violation(&ins) {
                return Err(err(ins.line, pd.column, msg));
            }
        }
        instructions.push(ins);
    }
    Ok(BssProgram::from_parts(name, mode, instructions))
}

fn linear_violation(ins: &Instruction) -> Option<String> {
    match &ins.kind {
        InstructionKind::Compute { op: ArithOp::Mul, .. } => {
            Some("multiplication is not allowed in linear mode".into())
        }
        InstructionKind::Compute { op: ArithOp::Div, .. } => Some("division is not allowed in linear mode".into()),
        InstructionKind::SetConst { value, .. } if !(value.is_zero() || value.is_one()) => {
            Some(format!("constant {value} is not allowed in linear mode (only 0 and 1)"))
        }
        _ => None,
    }
}

/// Structural checks, plus the linear-mode restrictions when `mode` is
/// linear.
pub fn validate_program(prog: &BssProgram, mode: Mode) -> Result<()> {
    let n = prog.len();
    if n == 0 {
        return Err(Error::Validation("program has no instructions".into()));
    }
    for (k, ins) in prog.instructions().iter().enumerate() {
        let label = k + 1;
        let fail = |msg: String| Error::Validation(format!("label {label} (line {}): {msg}", ins.line));
        match &ins.kind {
            InstructionKind::Branch { target } if *target == 0 || *target > n => {
                return Err(fail(format!("branch target {target} out of range 1..={n}")));
            }
            InstructionKind::Halt if label != n => return Err(fail("HALT before the last label".into())),
            _ => {}
        }
        if label == n && ins.kind != InstructionKind::Halt {
            return Err(fail("the last instruction must be HALT".into()));
        }
        if mode == Mode::Linear {
            if let Some(msg) = linear_violation(ins) {
                return Err(fail(msg));
            }
        }
    }
    Ok(())
}

/// A constant allowed in linear programs.
pub fn is_linear_constant(c: &Rational) -> bool {
    c.is_zero() || c.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_programs() {
        let p = parse_program("MUL r1 <- r1 r1\nHALT\n").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.at(1).to_string(), "MUL r1 <- r1 r1");
        let e = parse_program("mode linear\nMUL r1 <- r1 r1\nHALT\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 1, ref message } if message.contains("multiplication")));
        let e = parse_program("JGEZ missing_label\nHALT\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 6, ref message } if message.contains("undefined label")));
    }

    #[test]
    fn shorthands_expand() {
        let p = parse_program("name t\nstart: JGEZ r3 done\nJMP start\nHALT\ndone: HALT\n").unwrap();
        let text: Vec<String> = p.instructions().iter().map(|i| i.to_string()).collect();
        assert_eq!(
            text,
            [
                "SUB r0 <- r0 r0",
                "ADD r0 <- r3 r0",
                "JGEZ 8",
                "SUB r0 <- r0 r0",
                "JGEZ 1",
                "SUB r0 <- r0 r0",
                "JGEZ 8",
                "HALT"
            ]
        );
        validate_program(&p, Mode::Linear).unwrap();
    }

    #[test]
    fn canonical_text_round_trips() {
        let p = parse_program("CONST r2 <- 3/2 i:inc j:zero\nx: ADD r1<-r1 r2\nJGEZ x\nCOPY\nORACLE\nHALT").unwrap();
        let again = parse_program(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn diagnostics() {
        assert!(matches!(parse_program("ADD r1 <- r1\nHALT"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_program("FOO\nHALT"), Err(Error::Parse { line: 1, column: 1, .. })));
        assert!(matches!(parse_program("ADD r1 <- r1 r1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_program("mode linear\nCONST r1 <- 2\nHALT"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_program("a: HALT\na: HALT"), Err(Error::Parse { line: 2, .. })));
        let p = parse_program("MUL r1 <- r1 r1\nHALT").unwrap();
        assert!(matches!(validate_program(&p, Mode::Linear), Err(Error::Validation(_))));
    }
}
