//! Every example under `examples/` runs to completion.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[path = $file]
        mod $name;

        #[test]
        fn $name() {
            $name::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(admissible_conductors, "../examples/admissible_conductors.rs");
example!(local_twists, "../examples/local_twists.rs");
example!(dirichlet_characters, "../examples/dirichlet_characters.rs");
example!(extreme_cases, "../examples/extreme_cases.rs");
example!(archimedean, "../examples/archimedean.rs");
example!(analytic_conductor, "../examples/analytic_conductor.rs");
example!(planted_twist_scan, "../examples/planted_twist_scan.rs");
