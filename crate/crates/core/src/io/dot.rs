use std::fmt::Write as _;

use crate::omp::OrthoPoset;
use crate::poset::FinBoundedPoset;

/// Anything with a Hasse diagram.
#[derive(Debug, Clone, Copy)]
pub enum DotSource<'a> {
    Poset(&'a FinBoundedPoset),
    Omp(&'a OrthoPoset),
}

impl<'a> From<&'a FinBoundedPoset> for DotSource<'a> {
    fn from(p: &'a FinBoundedPoset) -> Self {
        DotSource::Poset(p)
    }
}

impl<'a> From<&'a OrthoPoset> for DotSource<'a> {
    fn from(o: &'a OrthoPoset) -> Self {
        DotSource::Omp(o)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram with the bottom drawn lowest. Orthocomplement pairs appear
/// as dashed edges that do not affect the layout.
pub fn export_dot<'a>(name: &str, source: impl Into<DotSource<'a>>) -> String {
    let source = source.into();
    let (p, perp) = match source {
        DotSource::Poset(p) => (p, None),
        DotSource::Omp(o) => (o.poset().as_ref(), Some(o.perp_table())),
    };
    let mut s = String::new();
    let _ = writeln!(s, "graph {} {{", quote(name));
    s.push_str("  rankdir=BT;\n  node [shape=plaintext];\n");
    for x in p.elements() {
        let _ = writeln!(s, "  n{x} [label={}];", quote(p.label(x)));
    }
    let mut covers = p.hasse_covers();
    covers.sort_unstable();
    for (x, y) in covers {
        let _ = writeln!(s, "  n{x} -- n{y};");
    }
    if let Some(perp) = perp {
        for (x, &y) in perp.iter().enumerate().filter(|&(x, &y)| x < y) {
            let _ = writeln!(s, "  n{x} -- n{y} [style=dashed, constraint=false];");
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalmbach::kalmbach_extension;
    use crate::Budget;
    use std::sync::Arc;

    fn edge_counts(dot: &str) -> (usize, usize) {
        let edges = dot.lines().filter(|l| l.contains(" -- "));
        edges.fold((0, 0), |(solid, dashed), l| {
            if l.contains("dashed") {
                (solid, dashed + 1)
            } else {
                (solid + 1, dashed)
            }
        })
    }

    #[test]
    fn diamond() {
        let dot = export_dot("d", &FinBoundedPoset::diamond());
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(edge_counts(&dot), (4, 0));
        assert!(dot.contains("rankdir=BT"));
    }

    #[test]
    fn kalmbach_of_the_three_chain() {
        let k = kalmbach_extension(&Arc::new(FinBoundedPoset::chain(3)), &Budget::default()).unwrap();
        let dot = export_dot("k", k.omp());
        assert_eq!(dot.matches("[label=").count(), 4);
        assert_eq!(edge_counts(&dot).1, 2);
        let id = |l: &str| k.poset().find(l).unwrap();
        for (a, b) in [("∅", "[0<1]"), ("[0<m]", "[m<1]")] {
            let (x, y) = (id(a).min(id(b)), id(a).max(id(b)));
            assert!(dot.contains(&format!("n{x} -- n{y} [style=dashed")), "{dot}");
        }
        assert_eq!(dot, export_dot("k", k.omp()));
    }
}
