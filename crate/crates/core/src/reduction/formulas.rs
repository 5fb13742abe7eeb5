use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use super::ReductionError;
use crate::surfaces::BuchiSurface;
use crate::Rat;

/// Gadget length used for the meromorphic formulas.
pub const MEROMORPHIC_M: usize = 35;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaMode {
    F,
    G,
    H,
    Psi,
}

impl core::str::FromStr for FormulaMode {
    type Err = ReductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" => Ok(FormulaMode::F),
            "G" => Ok(FormulaMode::G),
            "H" => Ok(FormulaMode::H),
            "Psi" | "psi" | "PSI" => Ok(FormulaMode::Psi),
            other => Err(ReductionError::UnknownFormula(other.into())),
        }
    }
}

impl fmt::Display for FormulaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaMode::F => "F",
            FormulaMode::G => "G",
            FormulaMode::H => "H",
            FormulaMode::Psi => "Psi",
        })
    }
}

/// A rendered positive-existential formula with its metadata banner.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    pub mode: FormulaMode,
    pub m: usize,
    pub banner: Vec<String>,
    /// Definitions the body refers to, then the body itself.
    pub lines: Vec<String>,
    /// Existentially bound variables of the outermost definition.
    pub bound_vars: usize,
    /// Conjuncts of the form `u_{i−1} + u_{i+1} = 2u_i + 2`, or surface
    /// equations for `Psi`.
    pub recurrence_conjuncts: usize,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.banner {
            writeln!(f, "# {b}")?;
        }
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

fn f_definition(m: usize) -> String {
    let quant: String = (1..=m).map(|i| format!("∃u_{i} ")).collect();
    let mut conj: Vec<String> = (1..=m).map(|i| format!("P_2(u_{i})")).collect();
    conj.extend((2..m).map(|i| format!("u_{} + u_{} = 2u_{i} + 2", i - 1, i + 1)));
    conj.push("x = u_1".into());
    conj.push("2y + 1 = u_2 − u_1".into());
    format!("F[x,y] := {quant}({})", conj.join(" ∧ "))
}

/// Renders `F`, `G`, `H` over gadget length `m`, or `Psi` over the surface
/// with the given deltas `δ_2..δ_n` (default `δ_k = k − 1` for `k ≤ m`).
pub fn print_formulas(
    mode: FormulaMode,
    m: usize,
    deltas: Option<&[Rat]>,
) -> Result<Formula, ReductionError> {
    if m < 3 {
        return Err(ReductionError::GadgetTooShort(m));
    }
    let mut banner = alloc::vec![format!("conditional: BP(Z,{m})")];
    let f_def = f_definition(m);
    let (lines, bound_vars, recurrence_conjuncts) = match mode {
        FormulaMode::F => {
            banner.push(
                "orientation: reproduced as stated; with u_i = (s+i−1)² the last two conjuncts give x = s² and y = s, so x = y²"
                    .into(),
            );
            (alloc::vec![f_def], m, m - 2)
        }
        FormulaMode::G => {
            banner.push("f_z(a,b) is interpreted as b = z·a".into());
            let g = String::from(
                "G[x,y] := F[x,y] ∧ F[zx,z²y] ≡ ∃x'∃y'∃y'' (f_z(x,x') ∧ f_z(y,y'') ∧ f_z(y'',y') ∧ F[x,y] ∧ F[x',y'])",
            );
            (alloc::vec![f_def, g], 3, m - 2)
        }
        FormulaMode::H => {
            banner.push("G[x,y] := F[x,y] ∧ F[zx,z²y]; H[x,y,w] ties 4w to (x+y)² − (x−y)²".into());
            let h = String::from("∃u∃v (G[x+y,u] ∧ G[x−y,v] ∧ u = v+4w)");
            (alloc::vec![f_def, h], 2, m - 2)
        }
        FormulaMode::Psi => {
            banner.push("emendation: the closing parenthesis after y = c_1 is supplied".into());
            let deltas: Vec<Rat> = match deltas {
                Some(d) => d.to_vec(),
                None => (1..m).map(|k| Rat::from_integer(k.into())).collect(),
            };
            let surface = BuchiSurface::new(deltas).map_err(ReductionError::Surface)?;
            let n = surface.n();
            let d2 = surface.delta(2).clone();
            banner.push(format!(
                "ψ(c_1,…,c_{n}) holds when c_i = x_i² for a point [1:x_1:…:x_{n}] of the surface with deltas ({})",
                surface
                    .deltas()
                    .iter()
                    .map(|d| format!("{d}"))
                    .collect::<Vec<_>>()
                    .join(",")
            ));
            let mut conj: Vec<String> = (1..=n).map(|i| format!("P_2(c_{i})")).collect();
            let eqs = surface.equations();
            for eq in &eqs {
                conj.push(render_diagonal(&eq.coeffs));
            }
            let args: Vec<String> = (1..=n).map(|i| format!("c_{i}")).collect();
            let psi = format!("ψ({}) := {}", args.join(","), conj.join(" ∧ "));
            let quant: Vec<String> = (1..=n).map(|i| format!("∃c_{i}")).collect();
            let link = render_linear(&[
                (Rat::from_integer(2.into()) * &d2, "x"),
                (&d2 * &d2, ""),
            ]);
            let body = format!(
                "Ψ[x,y] := {} (ψ({}) ∧ c_2 − c_1 = {link} ∧ y = c_1)",
                quant.join(" "),
                args.join(",")
            );
            (alloc::vec![psi, body], n, eqs.len())
        }
    };
    Ok(Formula {
        mode,
        m,
        banner,
        lines,
        bound_vars,
        recurrence_conjuncts,
    })
}

fn term(c: &Rat, var: &str) -> String {
    let one = c == &Rat::from_integer(1.into());
    match (var.is_empty(), one) {
        (true, _) => format!("{c}"),
        (false, true) => var.into(),
        (false, false) if c.is_integer() => format!("{c}{var}"),
        (false, false) => format!("({c}){var}"),
    }
}

fn render_linear(terms: &[(Rat, &str)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, v)| term(c, v))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `Σ coeffs[k]·c_k = 0` with `c_0 = 1`, positive terms on the left.
fn render_diagonal(coeffs: &[Rat]) -> String {
    let names: Vec<String> = (0..coeffs.len())
        .map(|k| if k == 0 { String::new() } else { format!("c_{k}") })
        .collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    // Constants go last on each side.
    for k in (1..coeffs.len()).chain(core::iter::once(0)) {
        let c = &coeffs[k];
        if c.is_positive() {
            left.push((c.clone(), names[k].as_str()));
        } else if c.is_negative() {
            right.push((-c, names[k].as_str()));
        }
    }
    format!("{} = {}", render_linear(&left), render_linear(&right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn f_counts() {
        let f = print_formulas(FormulaMode::F, 35, None).unwrap();
        assert_eq!(f.bound_vars, 35);
        assert_eq!(f.recurrence_conjuncts, 33);
        let text = f.lines[0].as_str();
        assert_eq!(text.matches('∃').count(), 35);
        assert_eq!(text.matches("+ 2 ∧").count(), 33);
        assert!(text.contains("u_33 + u_35 = 2u_34 + 2"));
        assert!(text.ends_with("x = u_1 ∧ 2y + 1 = u_2 − u_1)"));
        assert!(f.to_string().starts_with("# conditional: BP(Z,35)\n"));
        assert!(print_formulas(FormulaMode::F, 2, None).is_err());
    }

    #[test]
    fn g_and_h() {
        let g = print_formulas(FormulaMode::G, 35, None).unwrap();
        assert!(g.lines[1].contains("F[x,y] ∧ F[zx,z²y]"));
        assert!(g.lines[1].contains("f_z(x,x')"));
        let h = print_formulas(FormulaMode::H, 35, None).unwrap();
        assert_eq!(h.lines.last().unwrap(), "∃u∃v (G[x+y,u] ∧ G[x−y,v] ∧ u = v+4w)");
    }

    #[test]
    fn psi_default_and_custom_deltas() {
        let p = print_formulas(FormulaMode::Psi, 4, None).unwrap();
        assert_eq!(p.bound_vars, 4);
        assert_eq!(p.recurrence_conjuncts, 2);
        // With δ = (1,2,3) the surface equations are the second differences.
        assert!(p.lines[0].contains("2c_2 + 2 = c_1 + c_3"));
        assert!(p.lines[0].contains("3c_2 + 6 = 2c_1 + c_4"));
        assert!(p.lines[1].contains("c_2 − c_1 = 2x + 1 ∧ y = c_1)"));
        assert_eq!(p.lines[1].matches('(').count(), p.lines[1].matches(')').count());

        let d = [rat(2, 1), rat(5, 1)];
        let p = print_formulas(FormulaMode::Psi, 5, Some(&d)).unwrap();
        assert_eq!(p.bound_vars, 3);
        assert!(p.lines[1].contains("c_2 − c_1 = 4x + 4"));
        assert!(print_formulas(FormulaMode::Psi, 5, Some(&[rat(1, 1), rat(1, 1)])).is_err());
    }

    #[test]
    fn psi_equations_hold_on_trivial_points() {
        // c_i = (ν + δ_i)² with δ_1 = 0 satisfies every rendered equation.
        let d = [rat(1, 1), rat(3, 1), rat(4, 1)];
        let surface = BuchiSurface::new(d.to_vec()).unwrap();
        for nu in -5i64..=5 {
            let mut c = alloc::vec![Rat::from_integer(1.into())];
            c.push(rat(nu * nu, 1));
            for delta in &d {
                let v = Rat::from_integer(nu.into()) + delta;
                c.push(&v * &v);
            }
            for eq in surface.equations() {
                let s: Rat = eq.coeffs.iter().zip(&c).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn mode_names() {
        for m in [FormulaMode::F, FormulaMode::G, FormulaMode::H, FormulaMode::Psi] {
            assert_eq!(m.to_string().parse::<FormulaMode>().unwrap(), m);
        }
        assert!("Q".parse::<FormulaMode>().is_err());
    }
}
