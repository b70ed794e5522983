use std::io::Cursor;
use std::process::Command;

use storyuml_cli::run;

const SINGLE_USE_CASE_BLOCK: &str = "@startuml
    left to right direction
    actor \"Customer\" as Cu
    rectangle {
      usecase \"buy product\" as UC1
    }
    Cu --> UC1
@enduml
";

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str], stdin: &str) -> Output {
    let mut input = Cursor::new(stdin.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("storyuml").chain(args.iter().copied());
    let code = run(argv, &mut input, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn generate_single_use_case() {
    let o = cli(&["generate", "--no-filter", "--system", "System"], "A customer buys a product.");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, SINGLE_USE_CASE_BLOCK);
}

#[test]
fn generate_from_file_to_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let story = dir.path().join("story.txt");
    std::fs::write(&story, "A customer calls a car repair shop. The receptionist checks the availability.").unwrap();
    let mut outputs = Vec::new();
    for name in ["a.puml", "b.puml"] {
        let out = dir.path().join(name);
        let o = cli(&["generate", story.to_str().unwrap(), "--out", out.to_str().unwrap()], "");
        assert_eq!(o.code, 0, "{}", o.stderr);
        outputs.push(std::fs::read_to_string(out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert!(outputs[0].contains("Re --> UC2"));
}

#[test]
fn generate_json_has_every_stage() {
    let o = cli(&["generate", "--json"], "A custmer buys a product.");
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    for key in ["corrected_text", "report", "sentences", "raw_model", "filtered_model", "dropped", "plantuml", "diagnostics"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["corrected_text"], "A customer buys a product.");
}

#[test]
fn named_system_rectangle() {
    let o = cli(&["generate", "--system", "Web Shop"], "A customer buys a product.");
    assert!(o.stdout.contains("    rectangle \"Web Shop\" {\n"));
}

#[test]
fn extraction_failure_and_bad_input_exit_1() {
    let o = cli(&["generate"], "He buys a product.");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("no_actors_found"));
    assert_eq!(cli(&["generate"], "   ").code, 1);
    assert_eq!(cli(&["generate", "/nonexistent/story.txt"], "").code, 1);
    let o = cli(&["frobnicate"], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("Usage"));
    assert_eq!(cli(&["generate", "--no-such-flag"], "").code, 1);
}

#[test]
fn help_exits_0() {
    let o = cli(&["--help"], "");
    assert_eq!(o.code, 0);
    for sub in ["generate", "train", "evaluate", "serve", "edit"] {
        assert!(o.stdout.contains(sub), "{sub}");
    }
}

#[test]
fn train_then_generate_with_model() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("seed.csv");
    std::fs::write(
        &data,
        "phrase,label\nbuy product,true\nplace order,true\ncancel order,true\nrepair shop,false\ntime slot,false\noil change,false\n",
    )
    .unwrap();
    let model = dir.path().join("model.bin");
    let o = cli(&["train", "--data", data.to_str().unwrap(), "--out", model.to_str().unwrap()], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("trained on 6 phrases"));
    let run_once = || cli(&["generate", "--model", model.to_str().unwrap()], "A customer buys a product.");
    let (a, b) = (run_once(), run_once());
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);

    std::fs::write(&data, "phrase,label\nbuy product,true\n").unwrap();
    assert_eq!(cli(&["train", "--data", data.to_str().unwrap(), "--out", model.to_str().unwrap()], "").code, 1);
    std::fs::write(&model, "{\"format_version\": 7}").unwrap();
    assert_eq!(cli(&["generate", "--model", model.to_str().unwrap()], "A customer buys a product.").code, 1);
}

#[test]
fn evaluate_prints_counts_and_metrics() {
    let o = cli(&["evaluate", "--no-filter"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    for label in ["stories", "actual actors", "identified actors", "actual use cases", "identified use cases"] {
        assert!(o.stdout.lines().any(|l| l.starts_with(label)), "{label}");
    }
    assert!(o.stdout.lines().any(|l| l.starts_with("stories") && l.ends_with(" 8")));

    let dir = tempfile::tempdir().unwrap();
    let test = dir.path().join("test.csv");
    std::fs::write(&test, "phrase,label\nbuy product,true\noil change,false\n").unwrap();
    let o = cli(&["evaluate", "--ml-test", test.to_str().unwrap()], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    for label in ["accuracy", "precision", "recall", "f1"] {
        assert!(o.stdout.lines().any(|l| l.starts_with(label)), "{label}");
    }
    // values are right-aligned in one column
    let blocks: Vec<&str> = o.stdout.split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    for block in blocks {
        let widths: Vec<usize> = block.lines().map(str::len).collect();
        assert!(widths.windows(2).all(|w| w[0] == w[1]), "{block}");
    }
}

#[test]
fn evaluate_json_and_bad_corpus() {
    let o = cli(&["evaluate", "--json", "--no-filter"], "");
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["extraction"]["story_count"], 8);
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.ndjson");
    std::fs::write(&corpus, "{not json}\n").unwrap();
    assert_eq!(cli(&["evaluate", "--corpus", corpus.to_str().unwrap()], "").code, 1);
}

#[test]
fn config_file_sets_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("storyuml.toml");
    std::fs::write(&cfg, "filter = false\nsystem_name = \"Garage\"\n").unwrap();
    let o = cli(&["--config", cfg.to_str().unwrap(), "generate"], "A customer buys a product.");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("rectangle \"Garage\""));
    std::fs::write(&cfg, "filtre = false\n").unwrap();
    assert_eq!(cli(&["--config", cfg.to_str().unwrap(), "generate"], "A customer buys a product.").code, 1);
}

#[test]
fn edit_session_script() {
    let dir = tempfile::tempdir().unwrap();
    let story = dir.path().join("story.txt");
    std::fs::write(
        &story,
        "A customer calls a car repair shop. The receptionist checks the availability and schedules the appointment.",
    )
    .unwrap();
    let saved = dir.path().join("project.json");
    let script = format!(
        "reassign 'schedule appointment' receptionist customer\n\
         rename-actor customer Client\n\
         add-actor Customer\n\
         add-actor Client\n\
         undo\n\
         show\n\
         save {}\n\
         quit\n",
        saved.display()
    );
    let o = cli(&["edit", "--no-filter", story.to_str().unwrap()], &script);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("error[duplicate_actor]"));
    assert!(o.stdout.contains("Cl --> UC2"));
    assert!(o.stdout.contains("edit[3]> "));
    assert!(saved.exists());

    let o = cli(&["edit", "--project", saved.to_str().unwrap()], "model\nundo\nundo\nundo\nundo\n");
    assert!(o.stdout.contains("Client [client]"));
    assert!(o.stdout.contains("error[nothing_to_undo]"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_storyuml");
    let status = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    let out = Command::new(bin)
        .args(["generate", "--no-filter", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            child.stdin.take().unwrap().write_all(b"A customer buys a product.")?;
            child.wait_with_output()
        })
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), SINGLE_USE_CASE_BLOCK);
}
