//! Acceptance suite: one PASS/FAIL line per criterion, with its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wallkit::verify::{
    acyclicity_sweep, connected_permutation_section, example_complex, example_wall_count, free_protoperad, ind_monoidality, kappa_example,
    product_calculus, res_counterexamples, wall_laws, CheckResult,
};
use wallkit_core::colouring::SignRule;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> CheckResult,
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { id: 1, title: "four distinct walls on the example bricks", limit: secs(1), run: example_wall_count },
        Criterion { id: 2, title: "projection of the non-connected 3-brick wall", limit: secs(1), run: kappa_example },
        Criterion { id: 3, title: "colouring complex of the example wall", limit: secs(1), run: || example_complex(SignRule::Incidence) },
        Criterion {
            id: 4,
            title: "acyclicity sweep, ground <= 4, bricks <= 5",
            limit: secs(600),
            run: || acyclicity_sweep(4, 5, SignRule::Incidence),
        },
        Criterion { id: 5, title: "free protoperad dimensions", limit: secs(300), run: free_protoperad },
        Criterion { id: 6, title: "product calculus", limit: secs(300), run: product_calculus },
        Criterion { id: 7, title: "induction is monoidal", limit: secs(300), run: ind_monoidality },
        Criterion { id: 8, title: "restriction counterexamples", limit: secs(1), run: res_counterexamples },
        Criterion { id: 9, title: "connected permutations, N <= 4", limit: secs(60), run: || connected_permutation_section(4) },
        Criterion { id: 10, title: "structural laws on walls, ground <= 3, bricks <= 3", limit: secs(300), run: || wall_laws(3, 3) },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let ok = result.passed && in_time;
        failed += usize::from(!ok);
        let timing = if in_time { String::new() } else { format!(" over the {:?} limit", c.limit) };
        println!("{} criterion {:>2}: {} [{:.2?}{}] {}", if ok { "PASS" } else { "FAIL" }, c.id, c.title, elapsed, timing, result.detail);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
