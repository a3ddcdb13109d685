//! Generator specifications of the form `name:args`, e.g. `cycle:8`,
//! `grid:3x3`, `bipartite:4x3`, `random:p=10,eps=0.5`.

use super::Graph;
use crate::error::{Error, Result};
use std::str::FromStr;

pub const GENERATOR_NAMES: &[&str] = &[
    "cycle",
    "path",
    "complete",
    "empty",
    "grid",
    "bipartite",
    "wheel",
    "random",
    "chordal",
    "planar",
    "icosahedron",
];

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Empty(usize),
    Grid(usize, usize),
    Bipartite(usize, usize),
    Wheel(usize),
    /// `seed` overrides the caller's seed when given in the spec string.
    Random { p: usize, eps: f64, seed: Option<u64> },
    Chordal { p: usize, seed: Option<u64> },
    Planar { p: usize, seed: Option<u64> },
    Icosahedron,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn int(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| bad(format!("expected an integer, got `{s}`")))
}

fn pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| bad(format!("expected `<k>x<m>`, got `{s}`")))?;
    Ok((int(a)?, int(b)?))
}

fn keyed(args: &str) -> Result<Vec<(&str, &str)>> {
    args.split(',')
        .filter(|kv| !kv.trim().is_empty())
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| bad(format!("expected `key=value`, got `{kv}`")))
        })
        .collect()
}

/// Parses `p=..,seed=..` style arguments; a bare integer is read as `p`.
fn sized_seeded(args: &str) -> Result<(usize, Option<u64>)> {
    if let Ok(p) = args.trim().parse() {
        return Ok((p, None));
    }
    let (mut p, mut seed) = (None, None);
    for (k, v) in keyed(args)? {
        match k {
            "p" => p = Some(int(v)?),
            "seed" => seed = Some(int(v)? as u64),
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
    }
    Ok((p.ok_or_else(|| bad("missing `p`"))?, seed))
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let spec = match name.trim() {
            "cycle" => GraphSpec::Cycle(int(args)?),
            "path" => GraphSpec::Path(int(args)?),
            "complete" => GraphSpec::Complete(int(args)?),
            "empty" => GraphSpec::Empty(int(args)?),
            "wheel" => GraphSpec::Wheel(int(args)?),
            "grid" => {
                let (k, m) = pair(args)?;
                GraphSpec::Grid(k, m)
            }
            "bipartite" => {
                let (k, m) = pair(args)?;
                GraphSpec::Bipartite(k, m)
            }
            "random" => {
                let (mut p, mut eps, mut seed) = (None, None, None);
                for (k, v) in keyed(args)? {
                    match k {
                        "p" => p = Some(int(v)?),
                        "eps" => {
                            eps = Some(v.parse::<f64>().map_err(|_| bad(format!("bad eps `{v}`")))?)
                        }
                        "seed" => seed = Some(int(v)? as u64),
                        other => return Err(bad(format!("unknown key `{other}`"))),
                    }
                }
                GraphSpec::Random {
                    p: p.ok_or_else(|| bad("random graph needs `p`"))?,
                    eps: eps.ok_or_else(|| bad("random graph needs `eps`"))?,
                    seed,
                }
            }
            "chordal" => {
                let (p, seed) = sized_seeded(args)?;
                GraphSpec::Chordal { p, seed }
            }
            "planar" => {
                let (p, seed) = sized_seeded(args)?;
                GraphSpec::Planar { p, seed }
            }
            "icosahedron" => GraphSpec::Icosahedron,
            other => {
                return Err(bad(format!(
                    "unknown generator `{other}`; known generators: {}",
                    GENERATOR_NAMES.join(", ")
                )))
            }
        };
        Ok(spec)
    }
}

impl GraphSpec {
    /// Builds the graph. Random families use the spec's own seed when it
    /// has one, otherwise `seed`.
    pub fn build(&self, seed: u64) -> Result<Graph> {
        match *self {
            GraphSpec::Cycle(p) => Graph::cycle(p),
            GraphSpec::Path(p) => Graph::path(p),
            GraphSpec::Complete(p) => Graph::complete(p),
            GraphSpec::Empty(p) => Graph::empty(p),
            GraphSpec::Grid(k, m) => Graph::grid(k, m),
            GraphSpec::Bipartite(k, m) => Graph::complete_bipartite(k, m),
            GraphSpec::Wheel(p) => Graph::wheel(p),
            GraphSpec::Random { p, eps, seed: s } => Graph::random_graph(p, eps, s.unwrap_or(seed)),
            GraphSpec::Chordal { p, seed: s } => Graph::random_chordal(p, s.unwrap_or(seed)),
            GraphSpec::Planar { p, seed: s } => Graph::random_planar(p, s.unwrap_or(seed)),
            GraphSpec::Icosahedron => Ok(Graph::icosahedron()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_specs() {
        assert_eq!("cycle:8".parse::<GraphSpec>().unwrap(), GraphSpec::Cycle(8));
        assert_eq!("grid:3x3".parse::<GraphSpec>().unwrap(), GraphSpec::Grid(3, 3));
        assert_eq!("bipartite:4x3".parse::<GraphSpec>().unwrap(), GraphSpec::Bipartite(4, 3));
        assert_eq!(
            "random:p=10,eps=0.5".parse::<GraphSpec>().unwrap(),
            GraphSpec::Random { p: 10, eps: 0.5, seed: None }
        );
        assert_eq!("icosahedron".parse::<GraphSpec>().unwrap(), GraphSpec::Icosahedron);
    }

    #[test]
    fn unknown_names_list_the_alternatives() {
        let err = "hypercube:3".parse::<GraphSpec>().unwrap_err().to_string();
        assert!(err.contains("cycle") && err.contains("grid"));
    }

    #[test]
    fn out_of_range_sizes_fail_at_build() {
        let spec: GraphSpec = "grid:0x3".parse().unwrap();
        assert!(spec.build(0).is_err());
    }
}
