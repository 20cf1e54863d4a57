//! Text grammars for ideals and module matrices.
//!
//! ```text
//! ideal  = monomial { "," monomial }
//! matrix = "[" row "," row "]"
//! row    = "[" polynomial { "," polynomial } "]"
//! ```
//!
//! Ideal generators must be single terms; coefficients are dropped since they
//! are units. `Staircase` and `ModuleMat` render back into these grammars.

use thiserror::Error;

use crate::modrank2::{ModuleError, ModuleMat};
use crate::qpoly::{Cursor, ParseError, Poly};
use crate::staircase::{minimalize, Staircase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the ideal is not m-primary: it needs a pure power of x and of y")]
    NotMPrimary,
    #[error(transparent)]
    Module(#[from] ModuleError),
}

pub fn parse_ideal(text: &str) -> Result<Staircase, GrammarError> {
    let mut cur = Cursor::new(text);
    let mut gens = Vec::new();
    loop {
        let start = cur.pos();
        let p = cur.polynomial()?;
        match p.as_single_term() {
            Some((m, _)) => gens.push(m),
            None => {
                cur.seek(start);
                return Err(cur.error("a single-term monomial generator").into());
            }
        }
        if !cur.eat(',') {
            break;
        }
    }
    if !cur.at_end() {
        return Err(cur.error("',' or end of input").into());
    }
    minimalize(gens).map_err(|_| GrammarError::NotMPrimary)
}

pub fn parse_matrix(text: &str) -> Result<ModuleMat, GrammarError> {
    let mut cur = Cursor::new(text);
    cur.expect('[')?;
    let top = row(&mut cur)?;
    cur.expect(',')?;
    let bottom = row(&mut cur)?;
    cur.expect(']')?;
    if !cur.at_end() {
        return Err(cur.error("end of input").into());
    }
    if top.len() != bottom.len() {
        return Err(cur.error(format!("rows of equal length ({} vs {})", top.len(), bottom.len())).into());
    }
    Ok(ModuleMat::from_rows(top, bottom)?)
}

fn row(cur: &mut Cursor) -> Result<Vec<Poly>, ParseError> {
    cur.expect('[')?;
    let mut out = vec![cur.polynomial()?];
    while cur.eat(',') {
        out.push(cur.polynomial()?);
    }
    cur.expect(']')?;
    Ok(out)
}

pub fn render_ideal(i: &Staircase) -> String {
    i.to_string()
}

pub fn render_matrix(m: &ModuleMat) -> String {
    m.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideals() {
        assert_eq!(parse_ideal("x^3, x*y, y^3").unwrap(), Staircase::family(3, 3));
        assert_eq!(parse_ideal(" y^2 ,x, 2*x*y").unwrap(), Staircase::from_exponents(&[(1, 0), (0, 2)]).unwrap());
        assert_eq!(parse_ideal("x^2, x*y"), Err(GrammarError::NotMPrimary));
        let Err(GrammarError::Parse(e)) = parse_ideal("x^2, x + y, y^2") else {
            panic!("expected a parse error");
        };
        assert_eq!(e.offset, 5);
        let Err(GrammarError::Parse(e)) = parse_ideal("x^3 +") else {
            panic!("expected a parse error");
        };
        assert_eq!(e.offset, 5);
        let Err(GrammarError::Parse(e)) = parse_ideal("x^2 ; y^2") else {
            panic!("expected a parse error");
        };
        assert_eq!(e.offset, 4);
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("[[x,y^2,0,0],[0,0,x^2,y]]").unwrap();
        assert_eq!(m.ncols(), 4);
        assert_eq!(parse_matrix(&render_matrix(&m)).unwrap(), m);
        assert!(matches!(parse_matrix("[[x,y],[0]]"), Err(GrammarError::Parse(_))));
        assert!(matches!(parse_matrix("[[x,y],[x,y]]"), Err(GrammarError::Module(ModuleError::RankDeficient))));
        let Err(GrammarError::Parse(e)) = parse_matrix("[[x,y]\n[0,x]]") else {
            panic!("expected a parse error");
        };
        assert_eq!((e.line, e.column), (2, 1));
    }

    #[test]
    fn ideal_round_trip() {
        for i in [Staircase::maximal_power(4), Staircase::family(2, 5), Staircase::unit()] {
            assert_eq!(parse_ideal(&render_ideal(&i)).unwrap(), i);
        }
    }
}
