//! Line-oriented lattice description files.
//!
//! ```text
//! # Łukasiewicz chain with three elements
//! lattice luk3
//! elements 0 h 1
//! bottom 0
//! top 1
//! leq 0 h
//! leq h 1
//! otimes 0 0 0
//! ...
//! end
//! ```

use thiserror::Error;

use super::{FiniteResiduatedLattice, RawLattice};

/// A malformed lattice file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct LatticeFileError {
    pub line: usize,
    pub message: String,
}

/// Reads one lattice description. Validation is a separate step.
pub fn parse_lattice_file(text: &str) -> Result<RawLattice, LatticeFileError> {
    let mut raw = RawLattice::default();
    let mut seen_header = false;
    let mut ended = false;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| LatticeFileError {
            line: line_no,
            message,
        };
        if ended {
            return Err(err("content after `end`".into()));
        }
        let mut words = content.split_whitespace();
        let directive = words.next().unwrap_or("");
        let args: Vec<String> = words.map(str::to_string).collect();
        let want = |n: usize| -> Result<(), LatticeFileError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(err(format!(
                    "`{directive}` expects {n} argument(s), got {}",
                    args.len()
                )))
            }
        };
        if !seen_header && directive != "lattice" {
            return Err(err("file must start with `lattice <name>`".into()));
        }
        match directive {
            "lattice" => {
                if seen_header {
                    return Err(err("duplicate `lattice` header".into()));
                }
                want(1)?;
                raw.name = args[0].clone();
                seen_header = true;
            }
            "elements" => {
                if args.is_empty() {
                    return Err(err("`elements` needs at least one id".into()));
                }
                raw.elements.extend(args);
            }
            "bottom" => {
                want(1)?;
                raw.bottom = args[0].clone();
            }
            "top" => {
                want(1)?;
                raw.top = args[0].clone();
            }
            "leq" => {
                want(2)?;
                raw.leq.push((args[0].clone(), args[1].clone()));
            }
            "otimes" => {
                want(3)?;
                raw.otimes
                    .push((args[0].clone(), args[1].clone(), args[2].clone()));
            }
            "residual" => {
                want(3)?;
                raw.residual
                    .push((args[0].clone(), args[1].clone(), args[2].clone()));
            }
            "end" => {
                want(0)?;
                ended = true;
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    if !seen_header {
        return Err(LatticeFileError {
            line: 0,
            message: "empty lattice file".into(),
        });
    }
    if !ended {
        return Err(LatticeFileError {
            line: text.lines().count(),
            message: "missing `end`".into(),
        });
    }
    Ok(raw)
}

/// Renders a lattice in the file format; `parse_lattice_file` reads it back.
pub fn write_lattice_file(l: &FiniteResiduatedLattice) -> String {
    let raw = l.to_raw();
    let mut out = String::new();
    out.push_str(&format!(
        "lattice {}\n",
        raw.name.replace(char::is_whitespace, "_")
    ));
    out.push_str(&format!("elements {}\n", raw.elements.join(" ")));
    out.push_str(&format!("bottom {}\ntop {}\n", raw.bottom, raw.top));
    for (a, b) in &raw.leq {
        if a != b {
            out.push_str(&format!("leq {a} {b}\n"));
        }
    }
    for (a, b, c) in &raw.otimes {
        out.push_str(&format!("otimes {a} {b} {c}\n"));
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::{make_builtin, validate, Family};
    use super::*;

    #[test]
    fn roundtrip_through_text() {
        let l = make_builtin(Family::Lukasiewicz, 4).unwrap();
        let text = write_lattice_file(&l);
        let back = validate(&parse_lattice_file(&text).unwrap()).unwrap();
        assert_eq!(back.element_names(), l.element_names());
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(back.otimes(a, b), l.otimes(a, b));
                assert_eq!(back.residual(a, b), l.residual(a, b));
            }
        }
    }

    #[test]
    fn comments_and_unknown_directives() {
        let text = "# c\nlattice two\nelements 0 1 # ids\nbottom 0\ntop 1\nleq 0 1\n\
                    otimes 0 0 0\notimes 0 1 0\notimes 1 0 0\notimes 1 1 1\nend\n";
        assert!(validate(&parse_lattice_file(text).unwrap()).is_ok());
        let bad = "lattice x\nfrobnicate 1\nend\n";
        let err = parse_lattice_file(bad).unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn missing_end_is_an_error() {
        assert!(parse_lattice_file("lattice x\nelements a\n").is_err());
    }
}
