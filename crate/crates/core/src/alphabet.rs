use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite projection alphabet together with an involution on it.
///
/// Symbols keep their declaration order; that order induces the total order
/// used everywhere a canonical representative has to be picked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    nu: Vec<usize>,
}

fn valid_symbol(token: &str) -> bool {
    !token.is_empty()
        && !token.contains(['|', ':', '*'])
        && !token.contains(char::is_whitespace)
        && token != "∅"
}

impl Alphabet {
    /// Builds an alphabet from symbol tokens and a list of `nu` transpositions.
    /// Symbols not mentioned in any transposition are fixed by `nu`.
    pub fn new<S: Into<String>>(symbols: Vec<S>, transpositions: &[(String, String)]) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet {
                message: "at least one symbol is required".into(),
            });
        }
        for s in &symbols {
            if !valid_symbol(s) {
                return Err(Error::InvalidAlphabet {
                    message: format!("symbol {s:?} contains reserved characters"),
                });
            }
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet {
                    message: format!("symbol {s:?} is declared twice"),
                });
            }
        }
        let mut nu: Vec<usize> = (0..symbols.len()).collect();
        for (a, b) in transpositions {
            let ia = symbols.iter().position(|s| s == a).ok_or_else(|| Error::InvalidAlphabet {
                message: format!("nu references undeclared symbol {a:?}"),
            })?;
            let ib = symbols.iter().position(|s| s == b).ok_or_else(|| Error::InvalidAlphabet {
                message: format!("nu references undeclared symbol {b:?}"),
            })?;
            nu[ia] = ib;
            nu[ib] = ia;
        }
        // A list of transpositions is involutive by construction unless two
        // transpositions share a symbol inconsistently; re-check to be sure.
        for i in 0..nu.len() {
            if nu[nu[i]] != i {
                return Err(Error::InvalidAlphabet {
                    message: "nu is not an involution".into(),
                });
            }
        }
        Ok(Alphabet { symbols, nu })
    }

    /// The signed alphabet `{+,-}` with `nu` exchanging the two signs.
    pub fn signed() -> Arc<Self> {
        Arc::new(
            Alphabet::new(vec!["+", "-"], &[("+".into(), "-".into())])
                .expect("the signed alphabet is valid"),
        )
    }

    /// Parses a declaration of the form `alpha = +,- ; nu = +<->-`.
    /// The `nu` part is optional; omitted symbols are fixed points.
    pub fn parse_decl(decl: &str) -> Result<Arc<Self>> {
        let mut alpha_part = None;
        let mut nu_part = None;
        for piece in decl.split(';') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (key, value) = piece.split_once('=').ok_or_else(|| Error::InvalidAlphabet {
                message: format!("expected `key = value` in declaration piece {piece:?}"),
            })?;
            match key.trim() {
                "alpha" => alpha_part = Some(value.trim().to_string()),
                "nu" => nu_part = Some(value.trim().to_string()),
                other => {
                    return Err(Error::InvalidAlphabet {
                        message: format!("unknown declaration key {other:?}"),
                    })
                }
            }
        }
        let alpha = alpha_part.ok_or_else(|| Error::InvalidAlphabet {
            message: "declaration is missing `alpha = ...`".into(),
        })?;
        Self::from_parts(&alpha, nu_part.as_deref())
    }

    /// Builds an alphabet from a comma-separated symbol list and an optional
    /// comma-separated list of transpositions written `a<->b`.
    pub fn from_parts(alpha: &str, nu: Option<&str>) -> Result<Arc<Self>> {
        let symbols: Vec<String> = alpha
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        let mut transpositions = Vec::new();
        if let Some(nu) = nu {
            for piece in nu.split(',') {
                let piece = piece.trim();
                if piece.is_empty() {
                    continue;
                }
                let (a, b) = piece.split_once("<->").ok_or_else(|| Error::InvalidAlphabet {
                    message: format!("expected `a<->b` in nu piece {piece:?}"),
                })?;
                transpositions.push((a.trim().to_string(), b.trim().to_string()));
            }
        }
        Ok(Arc::new(Alphabet::new(symbols, &transpositions)?))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    pub fn symbol_index(&self, token: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == token)
    }

    /// Image of a symbol under the involution.
    pub fn nu(&self, index: usize) -> usize {
        self.nu[index]
    }

    /// Order-minimal representative of the `nu`-orbit `{a, nu(a)}`.
    pub fn nu_orbit_rep(&self, index: usize) -> usize {
        index.min(self.nu[index])
    }

    /// True exactly for `{+,-}` with `nu` exchanging the signs, in either
    /// declaration order. The Arnold operations require this shape.
    pub fn is_signed(&self) -> bool {
        self.symbols.len() == 2
            && self.symbol_index("+").is_some()
            && self.symbol_index("-").is_some()
            && self.nu[0] == 1
    }
}
