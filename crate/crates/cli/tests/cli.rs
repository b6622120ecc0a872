use lefschetz_cli::error::{EXIT_GUARD, EXIT_INPUT, EXIT_OK, EXIT_PARSE};
use lefschetz_cli::report::Report;
use lefschetz_cli::run;
use lefschetz_core::fibration::homological_monodromy;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn json(args: &[&str]) -> Report {
    let mut full = vec!["lefschetz", "--json"];
    full.extend_from_slice(args);
    let (out, err, code) = run(full);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    Report::from_json(&out).unwrap()
}

fn temp_file(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("lefschetz-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn verlinde_ranks() {
    for (g, k, rank) in [("2", "2", 10), ("0", "7", 1), ("1", "1", 2), ("3", "1", 8)] {
        let r = json(&["verlinde", "--genus", g, "--level", k]);
        assert_eq!(r.result["rank"], rank.to_string(), "g={g} k={k}");
        assert_eq!(r.result["routes_agree"], true);
    }
    let r = json(&["verlinde", &data("genus2_full.toml")]);
    assert_eq!(r.result["rank"], "10");
}

#[test]
fn spin_on_torus_word() {
    let r = json(&["spin", &data("torus_word.toml")]);
    assert_eq!(r.result["image_classification"], "preserves-odd-form");
    assert_eq!(r.result["spin_compatible"], true);
    assert_eq!(r.result["image_order"], 6);
}

#[test]
fn empty_cycle_list_keeps_every_form() {
    let path = temp_file("empty.toml", "genus = 2\ncycles = []\n");
    let r = json(&["spin", &path]);
    assert_eq!(r.result["spin_forms"].as_array().unwrap().len(), 16);
    assert_eq!(r.result["image_order"], 1);
}

#[test]
fn chain_word_is_a_relation() {
    // the shipped genus-2 example is the sixth power of a five-curve chain
    for name in ["genus2_full.toml", "torus_word.toml"] {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let file = lefschetz_cli::input::parse_fibration(name.as_ref(), &text).unwrap();
        assert!(homological_monodromy::<i64>(&file.fibration).unwrap().product.is_identity(), "{name}");
    }
}

#[test]
fn malformed_file_is_a_parse_error() {
    let path = temp_file("bad.toml", "genus = 1\ncycles = [[1, 0], [0, 1, 1]]\n");
    let (_, err, code) = run(["lefschetz", "spin", &path]);
    assert_eq!(code, EXIT_PARSE, "{err}");
    assert!(err.contains(":2:"), "{err}");
    let path = temp_file("syntax.toml", "genus = \n");
    assert_eq!(run(["lefschetz", "spin", &path]).2, EXIT_PARSE);
}

#[test]
fn missing_arguments_are_input_errors() {
    assert_eq!(run(["lefschetz", "verlinde"]).2, EXIT_INPUT);
    assert_eq!(run(["lefschetz", "frobnicate"]).2, EXIT_INPUT);
}

#[test]
fn reducibility_of_block_example_and_guard() {
    let r = json(&["reducibility", &data("genus2_block.toml")]);
    assert_eq!(r.result["verdict"], "reducible");
    let rank = r.result["projector_rank"].as_u64().unwrap();
    assert!(rank > 0 && rank < 4);
    let (_, err, code) = run(["lefschetz", "--guard-size", "3", "reducibility", &data("genus2_block.toml")]);
    assert_eq!(code, EXIT_GUARD, "{err}");
}

#[test]
fn bundle_from_signature_data() {
    let r = json(&["bundle", "--genus", "2", "--level", "4", "--sigma", "0", "--delta", "4"]);
    assert_eq!(r.result["lambda"], 1);
    assert_eq!(r.result["rank"], "35");
    assert_eq!(r.result["degree"], "70");
    let (_, err, code) = run(["lefschetz", "bundle", "--genus", "2", "--level", "4", "--sigma", "-1", "--delta", "4"]);
    assert_ne!(code, EXIT_OK);
    assert!(err.contains("divisible by 4"), "{err}");
}

#[test]
fn theta_check_defaults_are_within_tolerance() {
    let r = json(&["theta-check"]);
    assert_eq!(r.result["within_tolerance"], true);
    assert!(r.result["max_theta_residual"].as_f64().unwrap() < 1e-9);
    assert!(r.result["max_weil_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn homplus_routes() {
    let r = json(&["homplus", "--n", "2", "--r", "12", "--multiplicities", "1,1"]);
    assert_eq!(r.result["dim_hom_plus"], "18");
    let r = json(&["homplus", "--n", "2", "--r", "12", "--multiplicities", "2"]);
    assert_eq!(r.result["status"], "empty or obstructed");
    assert_ne!(run(["lefschetz", "homplus", "--n", "3", "--r", "4", "--multiplicities", "1,1"]).2, EXIT_OK);
    let r = json(&["homplus", "--level", "3", "--r", "4", "--cycle", "1,0"]);
    assert_eq!(r.result["multiplicities"], serde_json::json!([2, 1]));
}

#[test]
fn reports_round_trip_with_provenance() {
    for args in [
        vec!["verlinde", "--genus", "3", "--level", "5"],
        vec!["spin", "PATH_FULL"],
        vec!["bundle", "PATH_FULL"],
        vec!["homplus", "PATH_TORUS"],
    ] {
        let (full, torus) = (data("genus2_full.toml"), data("torus_word.toml"));
        let args: Vec<&str> = args
            .iter()
            .map(|a| match *a {
                "PATH_FULL" => full.as_str(),
                "PATH_TORUS" => torus.as_str(),
                other => other,
            })
            .collect();
        let r = json(&args);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
        assert!(!r.provenance.is_empty());
        for (key, text) in &r.provenance {
            assert!(r.result.contains_key(key), "{key}");
            assert!(!text.is_empty());
        }
    }
}
