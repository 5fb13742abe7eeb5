//! Output records. Each serializes to the documented JSON shape and renders
//! a plain-text form. Integers are JSON numbers of arbitrary size;
//! rationals are strings `n` or `n/d`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Number;

pub fn num(n: impl ToString) -> Number {
    n.to_string().parse().expect("integer literal")
}

pub trait Render {
    fn text(&self) -> String;
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeqSearch {
    pub length: usize,
    pub bound: u64,
    pub nontrivial: Vec<Vec<Number>>,
}

impl Render for SeqSearch {
    fn text(&self) -> String {
        let mut s = String::new();
        for seq in &self.nontrivial {
            writeln!(s, "{}", join(seq, ",")).unwrap();
        }
        writeln!(
            s,
            "{} nontrivial sequence(s) of length {} with x_1, x_2 <= {}",
            self.nontrivial.len(),
            self.length,
            self.bound
        )
        .unwrap();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeqVerify {
    pub values: Vec<Number>,
    pub second_differences: Vec<Number>,
    pub buchi: bool,
    pub trivial: Option<bool>,
    pub nu: Option<Number>,
}

impl Render for SeqVerify {
    fn text(&self) -> String {
        match (self.buchi, &self.nu) {
            (false, _) => format!(
                "buchi: no (second differences {})\n",
                join(&self.second_differences, ",")
            ),
            (true, Some(nu)) => format!("buchi: yes, trivial (nu = {nu})\n"),
            (true, None) => "buchi: yes, nontrivial\n".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrivialLine {
    /// `"+"` or `"-"` for each of `ε_1..ε_n`.
    pub signs: Vec<String>,
    pub nu: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCheck {
    pub deltas: Vec<String>,
    pub point: Vec<String>,
    pub on_surface: bool,
    pub jacobian_rank: Option<usize>,
    pub trivial_line: Option<TrivialLine>,
}

impl Render for SurfaceCheck {
    fn text(&self) -> String {
        let mut s = format!("point: [{}]\n", join(&self.point, ":"));
        writeln!(s, "on surface: {}", yes_no(self.on_surface)).unwrap();
        if let Some(r) = self.jacobian_rank {
            writeln!(s, "jacobian rank: {r}").unwrap();
        }
        match &self.trivial_line {
            None => s.push_str("trivial line: none\n"),
            Some(t) => {
                write!(s, "trivial line: signs {}", t.signs.concat()).unwrap();
                if let Some(nu) = &t.nu {
                    write!(s, ", nu = {nu}").unwrap();
                }
                s.push('\n');
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quadratic {
    pub u: String,
    pub v: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Growth {
    pub height: u64,
    pub cumulative: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scan {
    pub nodes: Vec<String>,
    pub height: u64,
    pub integers_only: bool,
    pub examined: u64,
    pub candidates: Vec<Quadratic>,
    pub growth: Vec<Growth>,
}

impl Render for Scan {
    fn text(&self) -> String {
        let mut s = String::new();
        for q in &self.candidates {
            writeln!(s, "{}", q.text).unwrap();
        }
        writeln!(
            s,
            "{} candidate(s) among {} quadratics of height <= {}{}",
            self.candidates.len(),
            self.examined,
            self.height,
            if self.integers_only { " (integer coefficients)" } else { "" }
        )
        .unwrap();
        let mut last = 0;
        let steps: Vec<String> = self
            .growth
            .iter()
            .filter(|g| {
                let changed = g.cumulative != last;
                last = g.cumulative;
                changed
            })
            .map(|g| format!("{}:{}", g.height, g.cumulative))
            .collect();
        if !steps.is_empty() {
            writeln!(s, "growth (height:count): {}", steps.join(" ")).unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Family {
    #[serde(rename = "N")]
    pub n: u32,
    pub f: Quadratic,
    pub nodes: Vec<Number>,
    pub roots: Vec<Number>,
}

impl Render for Family {
    fn text(&self) -> String {
        let mut s = format!("f = {}\n", self.f.text);
        for (i, (a, r)) in self.nodes.iter().zip(&self.roots).enumerate() {
            writeln!(s, "a_{} = {a}, f(a_{}) = {r}^2", i + 1, i + 1).unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Norm {
    pub p: u64,
    pub f: String,
    pub rho: String,
    pub log_norm: String,
}

impl Render for Norm {
    fn text(&self) -> String {
        format!("log_{} |{}|_r = {} at r = {}^{}\n", self.p, self.f, self.log_norm, self.p, self.rho)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub root_valuation: String,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Zeros {
    pub p: u64,
    pub poly: String,
    pub rho: String,
    pub zeros: u64,
    pub order_at_zero: u64,
    pub segments: Vec<Segment>,
}

impl Render for Zeros {
    fn text(&self) -> String {
        let mut s = format!(
            "zeros with |z|_p <= {}^{}: {}\norder at 0: {}\n",
            self.p, self.rho, self.zeros, self.order_at_zero
        );
        for seg in &self.segments {
            writeln!(s, "{} root(s) of valuation {}", seg.length, seg.root_valuation).unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PjfRow {
    pub rho: String,
    pub log_norm: String,
    pub n_zeros: String,
    pub n_poles: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pjf {
    pub p: u64,
    pub f: String,
    pub rows: Vec<PjfRow>,
    pub constant: String,
}

impl Render for Pjf {
    fn text(&self) -> String {
        let mut s = String::from("rho  log|f|_r  N(r,f,0)  N(r,f,inf)\n");
        for r in &self.rows {
            writeln!(s, "{}  {}  {}  {}", r.rho, r.log_norm, r.n_zeros, r.n_poles).unwrap();
        }
        writeln!(s, "log|f|_r - N(r,f,0) + N(r,f,inf) = {} at every radius", self.constant).unwrap();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ldl {
    pub p: u64,
    pub f: String,
    pub n: u32,
    pub rho: String,
    /// `log_p |f^(n)/f|_r`, absent when the derivative vanishes.
    pub log_ratio: Option<String>,
    pub bound: String,
    pub holds: bool,
}

impl Render for Ldl {
    fn text(&self) -> String {
        let lhs = self.log_ratio.as_deref().unwrap_or("-inf");
        format!(
            "log_{} |f^({})/f|_r = {} <= {}: {}\n",
            self.p,
            self.n,
            lhs,
            self.bound,
            yes_no(self.holds)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridValue {
    pub rho: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fmt {
    pub p: u64,
    pub f: String,
    pub a: String,
    pub defects: Vec<GridValue>,
    pub spread: String,
    pub settle_rho: String,
    pub tail_slope: String,
    pub tail_value: String,
    pub stabilized: bool,
}

impl Render for Fmt {
    fn text(&self) -> String {
        let mut s = String::from("rho  m(r,f,a) + N(r,f,a) - m(r,f,inf) - N(r,f,inf)\n");
        for g in &self.defects {
            writeln!(s, "{}  {}", g.rho, g.value).unwrap();
        }
        writeln!(s, "spread: {}", self.spread).unwrap();
        writeln!(
            s,
            "tail from rho = {}: slope {}, value {}",
            self.settle_rho, self.tail_slope, self.tail_value
        )
        .unwrap();
        writeln!(s, "stabilized: {}", yes_no(self.stabilized)).unwrap();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Smt {
    pub p: u64,
    pub f: String,
    pub targets: Vec<String>,
    pub values: Vec<GridValue>,
    pub sup: String,
    pub settle_rho: String,
    pub tail_slope: String,
    pub bounded: bool,
}

impl Render for Smt {
    fn text(&self) -> String {
        let mut s = String::from("rho  sum m(r,f,a_i) - N(r,f,inf)\n");
        for g in &self.values {
            writeln!(s, "{}  {}", g.rho, g.value).unwrap();
        }
        writeln!(s, "sup on grid: {}", self.sup).unwrap();
        writeln!(s, "tail from rho = {}: slope {}", self.settle_rho, self.tail_slope).unwrap();
        writeln!(s, "bounded on grid: {}", yes_no(self.bounded)).unwrap();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub f: String,
    pub u: String,
    pub a: String,
    pub g: String,
    pub delta: String,
    pub four_u_delta_u: String,
    pub delta_identity: bool,
    pub b: Option<String>,
    pub difference_identity: Option<bool>,
}

impl Render for Delta {
    fn text(&self) -> String {
        let mut s = format!("g = {}\nDelta = {}\n4u*Delta_u = {}\n", self.g, self.delta, self.four_u_delta_u);
        writeln!(s, "Delta = 4u*Delta_u: {}", yes_no(self.delta_identity)).unwrap();
        if let (Some(b), Some(ok)) = (&self.b, self.difference_identity) {
            writeln!(
                s,
                "h_a^2 - h_b^2 = (a - b)(2f + a + b) with b = {b}: {}",
                yes_no(ok)
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearOut {
    pub coeffs: BTreeMap<String, Number>,
    #[serde(rename = "const")]
    pub constant: Number,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareOut {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetMeta {
    #[serde(rename = "M")]
    pub m: usize,
    pub conditional: String,
    pub source_vars: usize,
    pub temps: usize,
    pub multiplications: usize,
    pub squarings: usize,
    pub target_vars: usize,
    pub size_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub vars: Vec<String>,
    pub linear: Vec<LinearOut>,
    pub squares: Vec<SquareOut>,
    pub meta: TargetMeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    #[serde(rename = "box")]
    pub box_size: u64,
    #[serde(rename = "M")]
    pub m: usize,
    pub conditional: String,
    pub assignments: u64,
    pub solutions: Vec<BTreeMap<String, Number>>,
    pub lifted: usize,
    pub spurious: Vec<BTreeMap<String, Number>>,
    pub inconclusive: u64,
    pub pass: bool,
}

fn assignment(w: &BTreeMap<String, Number>) -> String {
    w.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

impl Render for Check {
    fn text(&self) -> String {
        let mut s = format!(
            "box [-{b}, {b}], {} assignment(s), gadget length M = {}\n",
            self.assignments,
            self.m,
            b = self.box_size
        );
        writeln!(s, "source solutions: {}", self.solutions.len()).unwrap();
        for w in &self.solutions {
            writeln!(s, "  {}", assignment(w)).unwrap();
        }
        writeln!(s, "lifted to target: {}/{}", self.lifted, self.solutions.len()).unwrap();
        writeln!(s, "spurious target solutions: {}", self.spurious.len()).unwrap();
        for w in &self.spurious {
            writeln!(s, "  {}", assignment(w)).unwrap();
        }
        if self.inconclusive > 0 {
            writeln!(s, "inconclusive assignments: {}", self.inconclusive).unwrap();
        }
        writeln!(s, "conditional: {}", self.conditional).unwrap();
        writeln!(s, "result: {}", if self.pass { "PASS" } else { "FAIL" }).unwrap();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Formula {
    pub mode: String,
    #[serde(rename = "M")]
    pub m: usize,
    pub banner: Vec<String>,
    pub lines: Vec<String>,
    pub bound_vars: usize,
    pub recurrence_conjuncts: usize,
}
