use gosset_core::verify::{standard_sweep, verify_sweep, VerifyOptions};

fn main() {
    let only: Option<String> = std::env::args().nth(1);
    let types: Vec<_> = standard_sweep()
        .into_iter()
        .filter(|t| only.as_deref().is_none_or(|o| t.to_string() == o))
        .collect();
    let opts = VerifyOptions::default();
    for (t, r) in types.iter().zip(verify_sweep(&types, &opts)) {
        match r {
            Ok(r) => {
                println!(
                    "{t:>3} {} discrepancy {:.2e} in {:.0} ms",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.max_discrepancy,
                    r.elapsed_ms
                );
                if only.is_some() {
                    for c in &r.checks {
                        println!(
                            "    {:<24} {:<5} {:.3e} (bound {:.3e})",
                            c.name, c.passed, c.value, c.bound
                        );
                    }
                }
            }
            Err(e) => println!("{t:>3} ERROR {e}"),
        }
    }
}
