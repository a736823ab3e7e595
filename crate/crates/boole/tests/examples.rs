mod two_valued_states {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/two_valued_states.rs"));
}

#[test]
fn two_valued_states_runs() {
    two_valued_states::run_example().expect("two_valued_states example should run");
}

mod separation_and_colorings {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/separation_and_colorings.rs"));
}

#[test]
fn separation_and_colorings_runs() {
    separation_and_colorings::run_example().expect("separation_and_colorings example should run");
}

mod correlation_polytope {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/correlation_polytope.rs"));
}

#[test]
fn correlation_polytope_runs() {
    correlation_polytope::run_example().expect("correlation_polytope example should run");
}

mod noncontextual_hull {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/noncontextual_hull.rs"));
}

#[test]
fn noncontextual_hull_runs() {
    noncontextual_hull::run_example().expect("noncontextual_hull example should run");
}

mod dd_format {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dd_format.rs"));
}

#[test]
fn dd_format_runs() {
    dd_format::run_example().expect("dd_format example should run");
}

mod realization {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/realization.rs"));
}

#[test]
fn realization_runs() {
    realization::run_example().expect("realization example should run");
}

mod spin_correlations {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spin_correlations.rs"));
}

#[test]
fn spin_correlations_runs() {
    spin_correlations::run_example().expect("spin_correlations example should run");
}

mod tsirelson_bound {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tsirelson_bound.rs"));
}

#[test]
fn tsirelson_bound_runs() {
    tsirelson_bound::run_example().expect("tsirelson_bound example should run");
}

mod operator_presets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/operator_presets.rs"));
}

#[test]
fn operator_presets_runs() {
    operator_presets::run_example().expect("operator_presets example should run");
}

mod golden_scenarios {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/golden_scenarios.rs"));
}

#[test]
fn golden_scenarios_runs() {
    golden_scenarios::run_example().expect("golden_scenarios example should run");
}

mod command_line {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

#[test]
fn command_line_runs() {
    command_line::run_example().expect("command_line example should run");
}
