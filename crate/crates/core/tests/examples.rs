macro_rules! example_test {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(
    check_idempotency,
    "check_idempotency.rs",
    check_idempotency_runs
);
example_test!(
    canonical_decomposition,
    "canonical_decomposition.rs",
    canonical_decomposition_runs
);
example_test!(walk_counting, "walk_counting.rs", walk_counting_runs);
example_test!(
    extremal_families,
    "extremal_families.rs",
    extremal_families_runs
);
example_test!(census, "census.rs", census_runs);
