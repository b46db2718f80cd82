//! Text grids and JSON values for the command outputs.

use std::collections::BTreeMap;

use ddx_core::cohomology::froelicher::Page;
use ddx_core::cohomology::{BettiNumbers, CohomologyTable};
use ddx_core::complex::{Bidegree, DoubleComplex};
use ddx_core::zigzag::{PieceKind, ZigzagDecomposition, ZigzagShape};
use serde_json::{json, Value};

/// Rows `q` from top to bottom, columns `p` left to right, over the support
/// rectangle of `k`.
pub fn grid(title: &str, k: &DoubleComplex, value: impl Fn(Bidegree) -> usize) -> String {
    let mut out = format!("{title}\n");
    let Some(b) = k.bounds() else {
        out.push_str("  (empty complex)\n");
        return out;
    };
    let cells: Vec<Vec<String>> = (b.qmin..=b.qmax)
        .rev()
        .map(|q| (b.pmin..=b.pmax).map(|p| value(Bidegree::new(p, q)).to_string()).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).chain((b.pmin..=b.pmax).map(|p| p.to_string().len())).max().unwrap_or(1);
    let label = (b.qmin..=b.qmax).map(|q| q.to_string().len()).max().unwrap_or(1).max(3);
    out.push_str(&format!("{:>label$}", "q\\p"));
    for p in b.pmin..=b.pmax {
        out.push_str(&format!(" {p:>width$}"));
    }
    out.push('\n');
    for (row, q) in cells.iter().zip((b.qmin..=b.qmax).rev()) {
        out.push_str(&format!("{q:>label$}"));
        for c in row {
            out.push_str(&format!(" {c:>width$}"));
        }
        out.push('\n');
    }
    out
}

pub fn table_text(k: &DoubleComplex, t: &CohomologyTable) -> String {
    grid(t.theory.name(), k, |b| t.get(b))
}

pub fn table_json(t: &CohomologyTable) -> Value {
    let dims: Vec<Value> = t.dims.iter().map(|(b, d)| json!({"p": b.p, "q": b.q, "dim": d})).collect();
    json!({"theory": t.theory.name(), "dims": dims})
}

pub fn betti_text(b: &BettiNumbers) -> String {
    let parts: Vec<String> = b.dims.iter().map(|(k, d)| format!("b{k}={d}")).collect();
    format!("de-rham\n  {}\n", if parts.is_empty() { "(empty complex)".to_string() } else { parts.join(" ") })
}

pub fn betti_json(b: &BettiNumbers) -> Value {
    let dims: Vec<Value> = b.dims.iter().map(|(k, d)| json!({"k": k, "dim": d})).collect();
    json!({"theory": "de-rham", "dims": dims})
}

pub fn page_text(k: &DoubleComplex, page: &Page) -> String {
    grid(&format!("E{}", page.r), k, |b| page.dims.get(&b).copied().unwrap_or(0))
}

pub fn page_json(page: &Page) -> Value {
    let dims: Vec<Value> = page
        .dims
        .iter()
        .map(|(b, d)| json!({"p": b.p, "q": b.q, "dim": d, "rank": page.ranks.get(b).copied().unwrap_or(0)}))
        .collect();
    json!({"r": page.r, "dims": dims})
}

pub fn shape_json(s: &ZigzagShape) -> Value {
    let spots: Vec<Value> = s.spots().iter().map(|b| json!([b.p, b.q])).collect();
    let arrows: Vec<&str> = s
        .arrows()
        .iter()
        .map(|a| match a {
            ddx_core::zigzag::Arrow::D1 => "d1",
            ddx_core::zigzag::Arrow::D2 => "d2",
        })
        .collect();
    json!({"spots": spots, "arrows": arrows})
}

pub fn decomposition_text(d: &ZigzagDecomposition, verified: bool) -> String {
    let mut out = String::new();
    for (b, n) in &d.square_count {
        out.push_str(&format!("{n} x square at {b}\n"));
    }
    for (s, n) in &d.zigzag_mults {
        out.push_str(&format!("{n} x {s}\n"));
    }
    out.push_str(&format!(
        "summary: {} squares, {} dots, {} longer zigzags; total dimension {}\n",
        d.square_total(),
        d.zigzag_mults.iter().filter(|(s, _)| s.is_dot()).map(|(_, n)| n).sum::<usize>(),
        d.zigzag_mults.iter().filter(|(s, _)| !s.is_dot()).map(|(_, n)| n).sum::<usize>(),
        d.total_dim()
    ));
    out.push_str(&format!("certificate: {}\n", if verified { "OK" } else { "FAILED" }));
    out
}

pub fn decomposition_json(d: &ZigzagDecomposition, verified: bool) -> Value {
    let squares: Vec<Value> = d.square_count.iter().map(|(b, n)| json!({"p": b.p, "q": b.q, "count": n})).collect();
    let zigzags: Vec<Value> = d
        .zigzag_mults
        .iter()
        .map(|(s, n)| {
            let mut v = shape_json(s);
            v["count"] = json!(n);
            v
        })
        .collect();
    let order: Vec<Value> = d
        .pieces
        .iter()
        .map(|p| match &p.kind {
            PieceKind::Square(b) => json!({"square": [b.p, b.q]}),
            PieceKind::Zigzag(s) => json!({"zigzag": shape_json(s)}),
        })
        .collect();
    json!({"squares": squares, "zigzags": zigzags, "pieces": order, "total_dim": d.total_dim(), "verified": verified})
}

/// `dim F^p H^k` rows, one per degree.
pub fn filtration_text(dims: &BTreeMap<(i64, i64), usize>) -> String {
    let mut by_degree: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    for ((k, p), d) in dims {
        by_degree.entry(*k).or_default().push((*p, *d));
    }
    let mut out = String::from("hodge filtration dim F^p H^k\n");
    for (k, row) in by_degree {
        let cells: Vec<String> = row.iter().map(|(p, d)| format!("F{p}={d}")).collect();
        out.push_str(&format!("  H{k}: {}\n", cells.join(" ")));
    }
    out
}

pub fn filtration_json(dims: &BTreeMap<(i64, i64), usize>) -> Value {
    Value::Array(dims.iter().map(|((k, p), d)| json!({"k": k, "p": p, "dim": d})).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ddx_core::models::builtin;

    #[test]
    fn grid_puts_high_q_first() {
        let k = builtin("zigzag-h2").unwrap();
        let text = grid("t", &k, |b| (b.q + 1) as usize);
        assert_eq!(text, "t\nq\\p 0\n  1 2\n  0 1\n");
    }
}
