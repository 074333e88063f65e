//! Running a scene file through the batch pipeline.

use std::path::PathBuf;

use kleinian::cli::run_pipeline;

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data/bi6_bug.json")));
    match run_pipeline(&path) {
        Ok(r) => {
            for line in &r.log {
                println!("{line}");
            }
            for p in &r.written {
                println!("wrote {}", p.display());
            }
            if r.written.is_empty() {
                println!("artifact: {} bytes, first line: {}", r.artifact.len(), r.artifact.lines().next().unwrap_or(""));
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
