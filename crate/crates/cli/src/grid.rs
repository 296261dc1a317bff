use anyhow::{bail, Context, Result};
use serde::Serialize;

/// Inclusive sweep specification, parsed from `min:max:steps` or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        match parts.as_slice() {
            [single] => {
                let v = parse_number(single)?;
                Ok(Grid { min: v, max: v, steps: 1 })
            }
            [min, max, steps] => {
                let min = parse_number(min)?;
                let max = parse_number(max)?;
                let steps: usize = steps
                    .trim()
                    .parse()
                    .with_context(|| format!("bad step count {steps:?}"))?;
                if steps < 2 {
                    bail!("a ranged grid needs at least 2 steps, got {steps}");
                }
                if !(min < max) {
                    bail!("grid needs min < max, got {min}:{max}");
                }
                Ok(Grid { min, max, steps })
            }
            _ => bail!("expected VALUE or MIN:MAX:STEPS, got {text:?}"),
        }
    }

    /// Evenly spaced points including both endpoints.
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let span = self.max - self.min;
        let denom = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| self.min + span * k as f64 / denom)
            .collect()
    }
}

fn parse_number(text: &str) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .with_context(|| format!("bad number {text:?}"))?;
    if !v.is_finite() {
        bail!("number {text:?} is not finite");
    }
    Ok(v)
}

/// Comma-separated list of numbers, e.g. `--nu 0.6,0.2,0.2` or a ladder of box sizes.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    let values: Result<Vec<f64>> = text.split(',').map(parse_number).collect();
    let values = values?;
    if values.is_empty() {
        bail!("expected at least one value");
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_value_is_a_one_point_grid() {
        let g = Grid::parse("0.5").unwrap();
        assert_eq!(g, Grid { min: 0.5, max: 0.5, steps: 1 });
        assert_eq!(g.points(), vec![0.5]);
    }

    #[test]
    fn ranged_grid_hits_both_endpoints() {
        let g = Grid::parse("0.01:1.1:220").unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 220);
        assert_eq!(pts[0], 0.01);
        assert_eq!(*pts.last().unwrap(), 1.1);
        let step = pts[1] - pts[0];
        assert!((step - 1.09 / 219.0).abs() < 1e-15);
    }

    #[test]
    fn scientific_notation_is_accepted() {
        let g = Grid::parse("1e5:1e8:4").unwrap();
        assert_eq!(g.steps, 4);
        assert_eq!(g.min, 1e5);
    }

    #[test]
    fn degenerate_ranges_are_rejected() {
        assert!(Grid::parse("1:1:5").is_err());
        assert!(Grid::parse("2:1:5").is_err());
        assert!(Grid::parse("0:1:1").is_err());
        assert!(Grid::parse("0:1").is_err());
        assert!(Grid::parse("nan").is_err());
    }

    #[test]
    fn lists_split_on_commas() {
        assert_eq!(parse_list("0.6,0.2,0.2").unwrap(), vec![0.6, 0.2, 0.2]);
        assert!(parse_list("0.6,,0.2").is_err());
    }
}
