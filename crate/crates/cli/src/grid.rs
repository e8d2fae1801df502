//! Parameter grids: `a,b,c` lists or `start:stop:count` inclusive ranges.

use zchannel::rational::{parse_rational, to_f64};

pub fn parse_f64(text: &str) -> Result<Vec<f64>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, count] => {
            let start = number(start)?;
            let stop = number(stop)?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("grid count {count:?} is not a nonnegative integer"))?;
            Ok(match count {
                0 => Vec::new(),
                1 => vec![start],
                _ => (0..count)
                    .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                    .collect(),
            })
        }
        [_] => text.split(',').map(number).collect(),
        _ => Err(format!("grid {text:?}: expected a,b,c or start:stop:count")),
    }
}

pub fn parse_usize(text: &str) -> Result<Vec<usize>, String> {
    parse_f64(text)?
        .into_iter()
        .map(|x| {
            if x >= 0.0 && x.fract() == 0.0 {
                Ok(x as usize)
            } else {
                Err(format!("grid value {x} is not a nonnegative integer"))
            }
        })
        .collect()
}

/// A real given as `p/q`, an integer or a decimal.
pub fn number(text: &str) -> Result<f64, String> {
    parse_rational(text)
        .map(|r| to_f64(&r))
        .or_else(|_| text.trim().parse::<f64>())
        .map_err(|_| format!("cannot parse {text:?} as a number"))
}
