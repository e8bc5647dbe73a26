use num_rational::BigRational;

use super::{Terms, TowerData};
use crate::exact::{monomial_string, render_term, Coeff, Exponents};

fn join_signed(items: Vec<String>) -> String {
    if items.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, s) in items.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&s);
        } else if let Some(rest) = s.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&s);
        }
    }
    out
}

impl TowerData {
    /// Canonical text. Over polynomial bases every term is a flat monomial in
    /// base variables and generators, in descending graded-lex order.
    pub(crate) fn render(&self, t: &Terms) -> String {
        let names: Vec<String> = self.gen_names();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let polynomial = t.values().all(|c| match c {
            Coeff::Poly(_) => true,
            Coeff::Frac(f) => f.den().is_one(),
        });
        if polynomial {
            let mut atoms: Vec<(Exponents, BigRational)> = Vec::new();
            for (e, c) in t {
                for (b, q) in self.base.atoms(c).expect("polynomial coefficient") {
                    let mut full = b.0;
                    full.extend_from_slice(&e.0);
                    atoms.push((Exponents(full), q));
                }
            }
            atoms.sort_by(|a, b| b.0.cmp(&a.0));
            let items = atoms
                .iter()
                .map(|(e, q)| render_term(q, &monomial_string(&names, &e.0)))
                .collect();
            return join_signed(items);
        }
        let level_names = &names[self.m()..];
        let mut items = Vec::new();
        for (e, c) in t.iter().rev() {
            let m = monomial_string(level_names, &e.0);
            let Coeff::Frac(f) = c else { unreachable!() };
            if f.den().is_one() {
                for (b, q) in self.base.atoms(c).unwrap().into_iter().rev() {
                    let mut full = b.0;
                    full.extend_from_slice(&e.0);
                    items.push(render_term(&q, &monomial_string(&names, &full)));
                }
            } else {
                let frac = self.base.render(c);
                items.push(if m.is_empty() { frac } else { format!("{frac}*{m}") });
            }
        }
        join_signed(items)
    }
}
