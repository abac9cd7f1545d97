#![no_main]

use libfuzzer_sys::fuzz_target;
use partcat::plan::{parse_plan, schedule, Heuristic};

fuzz_target!(|data: &str| {
    if let Ok(plan) = parse_plan(data) {
        assert_eq!(parse_plan(&plan.to_string()).expect("printed plan parses"), plan);
        if plan.vertex_count <= 6 && plan.leg_arity <= 6 {
            let _ = schedule(&plan, Heuristic::Greedy);
        }
    }
});
