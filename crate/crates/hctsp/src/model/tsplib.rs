use std::io::{BufRead, Write};

use crate::error::Error;
use crate::float::Float;

use super::{CostKind, TspInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WeightFormat {
    FullMatrix,
    UpperRow,
    LowerDiagRow,
}

/// Parses a TSPLIB `TYPE: TSP` instance with edge weight type `EUC_2D`,
/// `GEO` or `EXPLICIT` (formats `FULL_MATRIX`, `UPPER_ROW`,
/// `LOWER_DIAG_ROW`). Problems the toolkit does not model are rejected with
/// the offending line number.
pub fn parse_tsplib<F: Float, R: BufRead>(reader: R) -> Result<TspInstance<F>, Error> {
    let mut name = String::from("unnamed");
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<&'static str> = None;
    let mut weight_format: Option<WeightFormat> = None;
    let mut coords: Vec<(F, F)> = Vec::new();
    let mut weights: Vec<F> = Vec::new();
    let mut section: Option<&'static str> = None;
    let mut display_left = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.eq_ignore_ascii_case("EOF") {
            break;
        }

        if let Some(active) = section {
            match active {
                "coords" => {
                    let mut it = trimmed.split_whitespace();
                    let _index = it
                        .next()
                        .ok_or_else(|| Error::parse(lineno, "missing city index"))?;
                    let x = parse_num::<F>(it.next(), lineno, "x coordinate")?;
                    let y = parse_num::<F>(it.next(), lineno, "y coordinate")?;
                    coords.push((x, y));
                    if coords.len() == dimension.unwrap_or(usize::MAX) {
                        section = None;
                    }
                    continue;
                }
                "weights" => {
                    for tok in trimmed.split_whitespace() {
                        weights.push(parse_num::<F>(Some(tok), lineno, "edge weight")?);
                    }
                    let expected = expected_weight_count(
                        dimension
                            .ok_or_else(|| Error::parse(lineno, "DIMENSION must precede EDGE_WEIGHT_SECTION"))?,
                        weight_format
                            .ok_or_else(|| Error::parse(lineno, "EDGE_WEIGHT_FORMAT must precede EDGE_WEIGHT_SECTION"))?,
                    );
                    if weights.len() > expected {
                        return Err(Error::parse(
                            lineno,
                            format!("too many edge weights: got {}, expected {expected}", weights.len()),
                        ));
                    }
                    if weights.len() == expected {
                        section = None;
                    }
                    continue;
                }
                "display" => {
                    display_left -= 1;
                    if display_left == 0 {
                        section = None;
                    }
                    continue;
                }
                _ => unreachable!(),
            }
        }

        let (key, value) = match trimmed.split_once(':') {
            Some((k, v)) => (k.trim().to_ascii_uppercase(), v.trim().to_string()),
            None => (trimmed.to_ascii_uppercase(), String::new()),
        };
        match key.as_str() {
            "NAME" => name = value,
            "COMMENT" => {}
            "TYPE" => {
                if !value.eq_ignore_ascii_case("TSP") {
                    return Err(Error::Unsupported {
                        what: "problem type",
                        value,
                    });
                }
            }
            "DIMENSION" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad DIMENSION '{value}'")))?;
                if n < 3 {
                    return Err(Error::parse(lineno, format!("DIMENSION {n} < 3")));
                }
                dimension = Some(n);
            }
            "EDGE_WEIGHT_TYPE" => {
                weight_type = Some(match value.to_ascii_uppercase().as_str() {
                    "EUC_2D" => "EUC_2D",
                    "GEO" => "GEO",
                    "EXPLICIT" => "EXPLICIT",
                    _ => {
                        return Err(Error::Unsupported {
                            what: "edge weight type",
                            value,
                        })
                    }
                });
            }
            "EDGE_WEIGHT_FORMAT" => {
                weight_format = Some(match value.to_ascii_uppercase().as_str() {
                    "FULL_MATRIX" => WeightFormat::FullMatrix,
                    "UPPER_ROW" => WeightFormat::UpperRow,
                    "LOWER_DIAG_ROW" => WeightFormat::LowerDiagRow,
                    _ => {
                        return Err(Error::Unsupported {
                            what: "edge weight format",
                            value,
                        })
                    }
                });
            }
            "DISPLAY_DATA_TYPE" | "NODE_COORD_TYPE" => {}
            "NODE_COORD_SECTION" => {
                if dimension.is_none() {
                    return Err(Error::parse(lineno, "DIMENSION must precede NODE_COORD_SECTION"));
                }
                section = Some("coords");
            }
            "EDGE_WEIGHT_SECTION" => {
                section = Some("weights");
            }
            "DISPLAY_DATA_SECTION" => {
                display_left = dimension
                    .ok_or_else(|| Error::parse(lineno, "DIMENSION must precede DISPLAY_DATA_SECTION"))?;
                section = Some("display");
            }
            _ => {
                return Err(Error::parse(lineno, format!("unrecognized header '{trimmed}'")));
            }
        }
    }

    let n = dimension.ok_or_else(|| Error::parse(0, "missing DIMENSION"))?;
    match weight_type.ok_or_else(|| Error::parse(0, "missing EDGE_WEIGHT_TYPE"))? {
        "EUC_2D" | "GEO" => {
            if coords.len() != n {
                return Err(Error::parse(
                    0,
                    format!("expected {n} coordinates, got {}", coords.len()),
                ));
            }
            let kind = if weight_type == Some("GEO") {
                CostKind::Geographic
            } else {
                CostKind::Euclid2d
            };
            TspInstance::from_coords(name, kind, coords)
        }
        "EXPLICIT" => {
            let format = weight_format
                .ok_or_else(|| Error::parse(0, "EXPLICIT instance without EDGE_WEIGHT_FORMAT"))?;
            let expected = expected_weight_count(n, format);
            if weights.len() != expected {
                return Err(Error::parse(
                    0,
                    format!("expected {expected} edge weights, got {}", weights.len()),
                ));
            }
            TspInstance::from_matrix(name, n, expand_matrix(n, format, &weights))
        }
        _ => unreachable!(),
    }
}

fn parse_num<F: Float>(tok: Option<&str>, lineno: usize, what: &str) -> Result<F, Error> {
    let tok = tok.ok_or_else(|| Error::parse(lineno, format!("missing {what}")))?;
    let v: f64 = tok
        .parse()
        .map_err(|_| Error::parse(lineno, format!("non-numeric {what} '{tok}'")))?;
    Ok(F::from_f64_lossy(v))
}

fn expected_weight_count(n: usize, format: WeightFormat) -> usize {
    match format {
        WeightFormat::FullMatrix => n * n,
        WeightFormat::UpperRow => n * (n - 1) / 2,
        WeightFormat::LowerDiagRow => n * (n + 1) / 2,
    }
}

fn expand_matrix<F: Float>(n: usize, format: WeightFormat, weights: &[F]) -> Vec<F> {
    let mut m = vec![F::zero(); n * n];
    match format {
        WeightFormat::FullMatrix => m.copy_from_slice(weights),
        WeightFormat::UpperRow => {
            let mut it = weights.iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    let c = *it.next().unwrap();
                    m[i * n + j] = c;
                    m[j * n + i] = c;
                }
            }
        }
        WeightFormat::LowerDiagRow => {
            let mut it = weights.iter();
            for i in 0..n {
                for j in 0..=i {
                    let c = *it.next().unwrap();
                    m[i * n + j] = c;
                    m[j * n + i] = c;
                }
            }
        }
    }
    m
}

/// Writes a coordinate instance back out as a TSPLIB EUC_2D file that
/// `parse_tsplib` round-trips exactly (coordinates use the shortest
/// round-trip float representation).
pub fn write_tsplib<F: Float, W: Write>(inst: &TspInstance<F>, mut w: W) -> Result<(), Error> {
    let coords = inst.coords().ok_or_else(|| {
        Error::InvalidParameter("only coordinate instances can be written".into())
    })?;
    writeln!(w, "NAME : {}", inst.name())?;
    writeln!(w, "TYPE : TSP")?;
    writeln!(w, "DIMENSION : {}", inst.len())?;
    writeln!(w, "EDGE_WEIGHT_TYPE : {}", inst.cost_kind().as_str())?;
    writeln!(w, "NODE_COORD_SECTION")?;
    for (i, (x, y)) in coords.iter().enumerate() {
        writeln!(w, "{} {} {}", i + 1, x, y)?;
    }
    writeln!(w, "EOF")?;
    Ok(())
}

/// Tour file format: first line `<instance name> <cost>`, then one 0-based
/// city index per line.
pub fn write_tour_file<F: Float, W: Write>(
    name: &str,
    cost: F,
    order: &[u32],
    mut w: W,
) -> Result<(), Error> {
    writeln!(w, "{name} {cost}")?;
    for &c in order {
        writeln!(w, "{c}")?;
    }
    Ok(())
}

pub fn read_tour_file<R: BufRead>(reader: R) -> Result<(String, f64, Vec<u32>), Error> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty tour file"))??;
    let mut it = header.split_whitespace();
    let name = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing instance name"))?
        .to_string();
    let cost: f64 = it
        .next()
        .ok_or_else(|| Error::parse(1, "missing tour cost"))?
        .parse()
        .map_err(|_| Error::parse(1, "non-numeric tour cost"))?;
    let mut order = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        order.push(
            t.parse()
                .map_err(|_| Error::parse(idx + 2, format!("bad city index '{t}'")))?,
        );
    }
    Ok((name, cost, order))
}
