//! Recomputes every published table and marks each printed value that the
//! computation reproduces.

use qdensity::tables::{compute, truncate_complex, TableId};
use qdensity::EvalOptions;

fn main() {
    for id in TableId::ALL {
        let (golden, rows) = compute(id, &EvalOptions::default()).unwrap();
        println!("{id} ({})", golden.subset);
        for row in &rows {
            let r = row.result.as_ref().unwrap();
            let mark = if row.matches(&golden) { "ok" } else { "differs" };
            println!("  {:>7}  {:>24}  printed {:>20}  {mark}", row.input, truncate_complex(r.value, 9), row.printed);
        }
    }
}
