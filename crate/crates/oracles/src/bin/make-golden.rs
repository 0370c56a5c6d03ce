//! Writes the DR golden files from the naive oracle.
//!
//! Usage: `make-golden [OUT_DIR]` (default `crates/cli/tests/golden`).

use std::path::PathBuf;

use serde_json::json;
use strata_core::json::{format_rational, graph_to_value};
use strata_oracles::dr::constant_term;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/cli/tests/golden".into()));
    std::fs::create_dir_all(&dir).expect("create output directory");
    for g in [1u32, 2] {
        let a = [1i64, -1];
        let dr = constant_term(g, &a, g as usize);
        let terms: Vec<_> = dr
            .terms
            .values()
            .map(|(p, c)| json!({"graph": graph_to_value(&p.to_graph()), "coeff": format_rational(c)}))
            .collect();
        let doc = json!({
            "meta": {"g": g, "n": a.len(), "a": a, "d": g, "k": 0, "r_samples": dr.moduli},
            "element": {"g": g, "n": a.len(), "mode": "genus-free", "terms": terms},
        });
        let path = dir.join(format!("dr_cycle_g{g}_a1_-1.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&doc).expect("json") + "\n").expect("write golden");
        println!("wrote {}", path.display());
    }
}
