//! Runs every audit with its defaults and prints the tables; pass a path to
//! also write the JSON reports there.

use multiquad::audit::{run_audit, AuditParams, LemmaId};

fn main() -> multiquad::Result<()> {
    let out_dir = std::env::args().nth(1);
    for lemma in LemmaId::ALL {
        let report = run_audit(lemma, &AuditParams::default())?;
        print!("{}", report.table());
        println!();
        if let Some(dir) = &out_dir {
            let path = std::path::Path::new(dir).join(format!("{lemma}.json"));
            std::fs::write(&path, report.to_json()).expect("writable output directory");
        }
    }
    Ok(())
}
