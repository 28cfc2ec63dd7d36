use nalgebra::DMatrix;

use super::VeeSystem;
use crate::complex_lit::parse_complex;
use crate::{Complex64, Error, Result};

/// Parses the line-oriented system format:
///
/// ```text
/// # comment
/// dim 2
/// form 1 0 0 1
/// vector 1.4142135623730951 0 weight 1
/// lattice 0.7071067811865476 0
/// ```
///
/// `form` defaults to the identity. `lattice` lines are optional; if present
/// there must be exactly `dim` of them.
pub fn parse_system(text: &str) -> Result<VeeSystem> {
    let mut dim: Option<(usize, usize)> = None;
    let mut form: Option<DMatrix<Complex64>> = None;
    let mut vectors = Vec::new();
    let mut weights = Vec::new();
    let mut lattice = Vec::new();
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line, msg };
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap_or_default();
        let rest: Vec<&str> = tokens.collect();
        let need_dim = || dim.map(|d| d.0).ok_or_else(|| err(format!("'{keyword}' before 'dim'")));
        let complexes = |toks: &[&str]| -> Result<Vec<Complex64>> {
            toks.iter()
                .map(|t| parse_complex(t).map_err(|e| err(e.to_string())))
                .collect()
        };
        match keyword {
            "dim" => {
                if dim.is_some() {
                    return Err(err("'dim' given twice".into()));
                }
                let [n] = rest[..] else {
                    return Err(err("'dim' takes one integer".into()));
                };
                let n: usize = n.parse().map_err(|_| err(format!("bad dimension '{n}'")))?;
                if n == 0 {
                    return Err(err("dimension must be positive".into()));
                }
                dim = Some((n, line));
            }
            "form" => {
                let n = need_dim()?;
                if form.is_some() {
                    return Err(err("'form' given twice".into()));
                }
                if rest.len() != n * n {
                    return Err(err(format!("'form' needs {} entries, got {}", n * n, rest.len())));
                }
                form = Some(DMatrix::from_row_slice(n, n, &complexes(&rest)?));
            }
            "vector" => {
                let n = need_dim()?;
                if rest.len() != n + 2 || rest[n] != "weight" {
                    return Err(err(format!("expected 'vector <{n} entries> weight <h>'")));
                }
                vectors.push(complexes(&rest[..n])?);
                weights.push(complexes(&rest[n + 1..])?[0]);
            }
            "lattice" => {
                let n = need_dim()?;
                if rest.len() != n {
                    return Err(err(format!("'lattice' needs {n} entries, got {}", rest.len())));
                }
                lattice.push(complexes(&rest)?);
            }
            other => return Err(err(format!("unknown keyword '{other}'"))),
        }
    }

    let Some((n, dim_line)) = dim else {
        return Err(Error::Parse {
            line: last_line.max(1),
            msg: "missing 'dim' line".into(),
        });
    };
    let form = form.unwrap_or_else(|| DMatrix::identity(n, n));
    let wrap = |e: Error| Error::Parse {
        line: dim_line,
        msg: e.to_string(),
    };
    let sys = VeeSystem::new(n, vectors, weights, form).map_err(wrap)?;
    if lattice.is_empty() {
        Ok(sys)
    } else {
        sys.with_lattice_basis(lattice).map_err(wrap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a2() {
        let text = "# A2\ndim 2\nform 1 0 0 1\n\
            vector 1.4142135623730951 0 weight 1\n\
            vector -0.7071067811865476 1.224744871391589 weight 1\n\
            vector 0.7071067811865476 1.224744871391589 weight 1+0i\n";
        let s = parse_system(text).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.len(), 3);
        assert!(s.lattice_basis().is_none());
    }

    #[test]
    fn default_form_and_lattice() {
        let s = parse_system("dim 1\nvector 2 weight 1\nlattice 0.5\n").unwrap();
        assert_eq!(s.form()[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(s.lattice_basis().unwrap().len(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("vector 1 weight 1\n", 1),
            ("dim 1\n\nvector 1 weigth 1\n", 3),
            ("dim 2\nform 1 0 0\n", 2),
            ("dim 1\nvector 1x weight 1\n", 2),
            ("dim 1\nbogus\n", 2),
            ("dim x\n", 1),
            ("dim 1\ndim 1\n", 2),
            ("dim 2\nform 1 1 1 1\n", 1),
        ];
        for (text, want) in cases {
            match parse_system(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(parse_system(""), Err(Error::Parse { .. })));
    }
}
