use std::fmt::Write;

use super::{Atom, Clause, Formula, Literal, Quant, Signature, Term};

/// Human-readable infix rendering. `+` is printed infix, Skolem symbols by
/// their alias when they have one.
#[derive(Clone, Copy)]
pub struct Printer<'a> {
    sig: &'a Signature,
}

impl<'a> Printer<'a> {
    pub fn new(sig: &'a Signature) -> Self {
        Printer { sig }
    }

    fn is_infix(&self, t: &Term) -> bool {
        matches!(t, Term::App(f, args) if args.len() == 2 && self.sig.name(*f) == "+")
    }

    pub fn term(&self, t: &Term) -> String {
        let mut s = String::new();
        self.write_term(&mut s, t);
        s
    }

    fn write_term(&self, out: &mut String, t: &Term) {
        match t {
            Term::Var(v) => out.push_str(&v.name()),
            Term::App(f, args) => {
                let name = self.sig.info(*f).display_name();
                if args.is_empty() {
                    out.push_str(name);
                } else if self.is_infix(t) {
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            let _ = write!(out, " {name} ");
                        }
                        if self.is_infix(a) {
                            out.push('(');
                            self.write_term(out, a);
                            out.push(')');
                        } else {
                            self.write_term(out, a);
                        }
                    }
                } else {
                    out.push_str(name);
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        self.write_term(out, a);
                    }
                    out.push(')');
                }
            }
        }
    }

    pub fn atom(&self, a: &Atom) -> String {
        match a {
            Atom::Eq(l, r) => format!("{} = {}", self.term(l), self.term(r)),
            Atom::Pred(p, args) => self.term(&Term::app(*p, args.clone())),
        }
    }

    pub fn literal(&self, l: &Literal) -> String {
        match (&l.atom, l.positive) {
            (a, true) => self.atom(a),
            (Atom::Eq(a, b), false) => format!("{} ≠ {}", self.term(a), self.term(b)),
            (a, false) => format!("¬{}", self.atom(a)),
        }
    }

    pub fn clause(&self, c: &Clause) -> String {
        if c.is_empty() {
            return "□".to_string();
        }
        let lits: Vec<String> = c.literals().iter().map(|l| self.literal(l)).collect();
        format!("{{{}}}", lits.join(", "))
    }

    pub fn formula(&self, f: &Formula) -> String {
        let mut s = String::new();
        self.write_formula(&mut s, f, false);
        s
    }

    fn write_operand(&self, out: &mut String, f: &Formula) {
        if matches!(f, Formula::Quant(..)) {
            out.push('(');
            self.write_formula(out, f, false);
            out.push(')');
        } else {
            self.write_formula(out, f, true);
        }
    }

    fn write_formula(&self, out: &mut String, f: &Formula, nested: bool) {
        match f {
            Formula::Atom(a) => out.push_str(&self.atom(a)),
            Formula::Not(g) => match g.as_ref() {
                Formula::Atom(Atom::Eq(a, b)) => {
                    let _ = write!(out, "{} ≠ {}", self.term(a), self.term(b));
                }
                g => {
                    out.push('¬');
                    self.write_formula(out, g, true);
                }
            },
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                let op = match f {
                    Formula::And(..) => "∧",
                    Formula::Or(..) => "∨",
                    _ => "→",
                };
                if nested {
                    out.push('(');
                }
                self.write_operand(out, a);
                let _ = write!(out, " {op} ");
                self.write_operand(out, b);
                if nested {
                    out.push(')');
                }
            }
            Formula::Quant(q, x, g) => {
                let sym = match q {
                    Quant::Forall => '∀',
                    Quant::Exists => '∃',
                };
                let _ = write!(out, "{sym}{x} ");
                self.write_formula(out, g, true);
            }
        }
    }
}
