//! Text file formats read and written by the command line.

use ugb_core::groebner::{MonomialOrder, Polynomial, ReducedGroebnerBasis};
use ugb_core::oracle::{buchberger, GeneratorSet};
use ugb_core::{Error, Field, FieldTag, Result};

/// Header line `n d field order` of a reduced-basis file.
#[derive(Debug, Clone)]
pub struct Header {
    pub n: usize,
    pub d: usize,
    pub field: FieldTag,
    pub order: String,
}

impl Header {
    pub fn parse(line: &str) -> Result<Header> {
        let mut parts = line.split_whitespace();
        let bad = || Error::Parse(format!("header `{line}` is not `n d field order`"));
        let n = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let d = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let field = parts.next().ok_or_else(bad)?.parse()?;
        let order = parts.collect::<Vec<_>>().join("");
        if order.is_empty() {
            return Err(bad());
        }
        Ok(Header { n, d, field, order })
    }
}

/// Splits a basis file into its header and polynomial lines.
pub fn split_basis_file(text: &str) -> Result<(Header, Vec<&str>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = Header::parse(
        lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?,
    )?;
    Ok((header, lines.collect()))
}

/// Reads the polynomial lines under `header`. With `repair` they are treated
/// as arbitrary generators and completed by Buchberger's algorithm.
pub fn read_basis<F: Field>(
    header: &Header,
    lines: &[&str],
    repair: bool,
    pair_budget: usize,
) -> Result<ReducedGroebnerBasis<F>> {
    let order = MonomialOrder::parse(&header.order, Some(header.d))?;
    let polys = lines
        .iter()
        .map(|l| Polynomial::<F>::parse(l, header.d))
        .collect::<Result<Vec<_>>>()?;
    let g = if repair {
        buchberger(&GeneratorSet::new(polys, order)?, pair_budget)?
    } else {
        ReducedGroebnerBasis::from_polynomials(&polys, order)?
    };
    if g.n() != header.n {
        return Err(Error::Parse(format!(
            "header says n = {} but the basis has length {}",
            header.n,
            g.n()
        )));
    }
    Ok(g)
}

pub fn write_basis<F: Field>(g: &ReducedGroebnerBasis<F>) -> String {
    let mut out = format!("{} {} {} {}\n", g.n(), g.dim(), F::tag(), g.order());
    for line in g.to_lines() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}
