use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::KernelError;

/// Index of a function or predicate symbol in a [`Signature`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Sym(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SymbolKind {
    Function,
    Predicate,
}

/// Where a symbol comes from: the input language, or Skolemization at some stage.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Origin {
    Base,
    Skolem { stage: u32 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolInfo {
    pub name: String,
    pub arity: usize,
    pub kind: SymbolKind,
    pub origin: Origin,
    /// Presentation name used in reports (`n`, `m`, `c`, ...).
    pub alias: Option<String>,
}

impl SymbolInfo {
    pub fn stage(&self) -> u32 {
        match self.origin {
            Origin::Base => 0,
            Origin::Skolem { stage } => stage,
        }
    }

    pub fn is_skolem(&self) -> bool {
        matches!(self.origin, Origin::Skolem { .. })
    }

    pub fn display_name(&self) -> &str {
        self.alias.as_deref().unwrap_or(&self.name)
    }
}

/// Symbols in declaration order. Equality is not a member: it is built into
/// [`Atom::Eq`](super::Atom::Eq).
#[derive(Clone, Default, Debug)]
pub struct Signature {
    symbols: Vec<SymbolInfo>,
    by_name: HashMap<String, Sym>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    fn add(&mut self, info: SymbolInfo) -> Result<Sym, KernelError> {
        if self.by_name.contains_key(&info.name) {
            return Err(KernelError::DuplicateSymbol(info.name));
        }
        if let Some(alias) = &info.alias {
            if self.by_name.contains_key(alias) {
                return Err(KernelError::DuplicateSymbol(alias.clone()));
            }
        }
        let sym = Sym(self.symbols.len() as u32);
        self.by_name.insert(info.name.clone(), sym);
        if let Some(alias) = &info.alias {
            self.by_name.insert(alias.clone(), sym);
        }
        self.symbols.push(info);
        Ok(sym)
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<Sym, KernelError> {
        self.add(SymbolInfo {
            name: name.to_string(),
            arity,
            kind: SymbolKind::Function,
            origin: Origin::Base,
            alias: None,
        })
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<Sym, KernelError> {
        self.add(SymbolInfo {
            name: name.to_string(),
            arity,
            kind: SymbolKind::Predicate,
            origin: Origin::Base,
            alias: None,
        })
    }

    /// Returns the existing function symbol `name/arity` or declares it.
    pub fn ensure_function(&mut self, name: &str, arity: usize) -> Result<Sym, KernelError> {
        match self.lookup(name) {
            Some(sym) => {
                let info = self.info(sym);
                if info.arity != arity || info.kind != SymbolKind::Function {
                    Err(KernelError::ArityMismatch {
                        symbol: name.to_string(),
                        expected: info.arity,
                        found: arity,
                    })
                } else {
                    Ok(sym)
                }
            }
            None => self.add_function(name, arity),
        }
    }

    pub(crate) fn add_skolem(&mut self, arity: usize, stage: u32, counter: usize) -> Sym {
        let mut name = format!("sk{stage}_{counter}");
        while self.by_name.contains_key(&name) {
            name.push('_');
        }
        self.add(SymbolInfo {
            name,
            arity,
            kind: SymbolKind::Function,
            origin: Origin::Skolem { stage },
            alias: None,
        })
        .expect("fresh skolem name")
    }

    /// Attaches a presentation alias to a symbol; the alias also resolves in [`lookup`](Self::lookup).
    pub fn set_alias(&mut self, sym: Sym, alias: &str) -> Result<(), KernelError> {
        if let Some(&other) = self.by_name.get(alias) {
            if other == sym {
                return Ok(());
            }
            return Err(KernelError::DuplicateSymbol(alias.to_string()));
        }
        if let Some(old) = self.symbols[sym.0 as usize].alias.take() {
            self.by_name.remove(&old);
        }
        self.symbols[sym.0 as usize].alias = Some(alias.to_string());
        self.by_name.insert(alias.to_string(), sym);
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.by_name.get(name).copied()
    }

    pub fn info(&self, sym: Sym) -> &SymbolInfo {
        &self.symbols[sym.0 as usize]
    }

    pub fn get(&self, sym: Sym) -> Option<&SymbolInfo> {
        self.symbols.get(sym.0 as usize)
    }

    pub fn arity(&self, sym: Sym) -> usize {
        self.info(sym).arity
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.info(sym).name
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// All symbols in declaration order.
    pub fn symbols(&self) -> impl Iterator<Item = (Sym, &SymbolInfo)> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, info)| (Sym(i as u32), info))
    }

    pub fn functions(&self) -> impl Iterator<Item = (Sym, &SymbolInfo)> {
        self.symbols().filter(|(_, i)| i.kind == SymbolKind::Function)
    }
}
