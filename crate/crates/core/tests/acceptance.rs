use std::process::ExitCode;

use bisetkit::verify::acceptance::{run_all, Corpus};

fn main() -> ExitCode {
    let corpus = Corpus::default();
    let results = run_all(&corpus, |r| println!("{}", r.line()));
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
