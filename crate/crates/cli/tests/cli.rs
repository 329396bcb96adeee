use std::path::PathBuf;

use opcat::fixtures::gr_bound;
use opcat::graphs::GrCategory;
use opcat::opcat::{Mode, OperadicCategory};
use opcat_cli::{parse_graph_file, GraphFile, ParseError, Report};
use proptest::prelude::*;
use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn opcat(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["opcat"];
    argv.extend_from_slice(args);
    let code = opcat_cli::run(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn two_vertex() -> Value {
    json!({
        "vertices": ["v", "w"],
        "flags": [
            {"id": "h1", "vertex": "v"}, {"id": "h2", "vertex": "w"},
            {"id": "l1", "vertex": "v"}, {"id": "l2", "vertex": "w"}
        ],
        "involution": [["h1", "h2"]],
        "labels": [{"label": "a", "flag": "l1"}, {"label": "b", "flag": "l2"}]
    })
}

fn corolla4() -> Value {
    json!({
        "vertices": ["1"],
        "flags": [
            {"id": "a", "vertex": "1"}, {"id": "b", "vertex": "1"},
            {"id": "c", "vertex": "1"}, {"id": "d", "vertex": "1"}
        ],
        "involution": [],
        "labels": [
            {"label": "a", "flag": "a"}, {"label": "b", "flag": "b"},
            {"label": "c", "flag": "c"}, {"label": "d", "flag": "d"}
        ]
    })
}

fn tadpole() -> Value {
    json!({
        "vertices": ["v"],
        "flags": [{"id": "x", "vertex": "v"}, {"id": "y", "vertex": "v"}, {"id": "l", "vertex": "v"}],
        "involution": [["x", "y"]],
        "labels": [{"label": "a", "flag": "l"}]
    })
}

fn pointer_of(text: &str) -> String {
    match parse_graph_file(text) {
        Err(ParseError::Schema { pointer, .. }) => pointer,
        other => panic!("expected a schema error, got {other:?}"),
    }
}

#[test]
fn omega2_cleavage_fails_with_the_swap_witness() {
    let r = opcat(&["check", "omega2", "--suite", "cleavage"]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("sigma: (1 2)(3 4)"), "{}", r.out);
    assert!(r.out.contains("2-tree 4→2 [1,1,2,2]"), "{}", r.out);
}

#[test]
fn gr_full_check_passes() {
    let r = opcat(&["check", "gr", "--bound", "3"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.ends_with("result: pass\n"));
    for suite in ["axioms:gr", "cleavage:gr", "unitality:gr", "operad:odd-zeta over gr", "algebra:end({a,b})"] {
        assert!(r.out.contains(suite), "missing {suite}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(opcat(&["check", "nope"]).code, 2);
    assert_eq!(opcat(&["check", "fin", "--frobnicate"]).code, 2);
    assert_eq!(opcat(&["check", "fin", "--suite", "everything"]).code, 2);
    assert_eq!(opcat(&["frobnicate"]).code, 2);
    let r = opcat(&["transform", "restrict", "fin"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("not thick"));
}

#[test]
fn help_exits_0() {
    let r = opcat(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("check"));
}

#[test]
fn fiber_of_two_vertex_graph_is_the_corolla_at_w() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "twovertex.json", &two_vertex());
    let r = opcat(&["graph", "fiber", "--in", p.to_str().unwrap(), "--vertex", "w"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let got: Value = serde_json::from_str(&r.out).unwrap();
    let want = json!({
        "vertices": ["w"],
        "flags": [{"id": "h2", "vertex": "w"}, {"id": "l2", "vertex": "w"}],
        "involution": [],
        "labels": [{"label": "h2", "flag": "h2"}, {"label": "l2", "flag": "l2"}]
    });
    assert_eq!(got, want);
}

#[test]
fn fiber_of_a_morphism_file() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &two_vertex());
    let c = opcat(&["graph", "contract", "--in", g.to_str().unwrap(), "--edge", "h1"]);
    assert_eq!(c.code, 0, "{}", c.err);
    let m = serde_json::from_str::<Value>(&c.out).unwrap()["morphism"].clone();
    let p = write(&dir, "m.json", &m);
    let r = opcat(&["graph", "fiber", "--in", p.to_str().unwrap(), "--vertex", "v"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let fiber = parse_graph_file(&r.out).unwrap();
    assert_eq!(fiber.vertices().len(), 2);
    assert_eq!(fiber.edges().len(), 1);
    assert_eq!(fiber.labels.len(), 2);
}

#[test]
fn contraction_output_and_sign() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "g.json", &two_vertex());
    let r = opcat(&["graph", "contract", "--in", p.to_str().unwrap(), "--edge", "h2"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["sign"], json!(1));
    assert_eq!(v["morphism"]["target"]["vertices"], json!(["v"]));
    assert_eq!(v["morphism"]["vertex_map"], json!({"v": "v", "w": "v"}));
    let leg = opcat(&["graph", "contract", "--in", p.to_str().unwrap(), "--edge", "l1"]);
    assert_eq!(leg.code, 2);
    assert!(leg.err.contains("leg"));
}

#[test]
fn compose_with_identity_is_unchanged() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", &two_vertex());
    let c = opcat(&["graph", "contract", "--in", g.to_str().unwrap(), "--edge", "h1"]);
    let m = serde_json::from_str::<Value>(&c.out).unwrap()["morphism"].clone();
    let t = m["target"].clone();
    let id = json!({
        "source": t, "target": t,
        "flag_map": {"l1": "l1", "l2": "l2"},
        "vertex_map": {"v": "v"}
    });
    let p = write(&dir, "comp.json", &json!({"first": m, "second": id}));
    let r = opcat(&["graph", "compose", "--in", p.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(serde_json::from_str::<Value>(&r.out).unwrap(), m);

    let bad = json!({"first": id, "second": m});
    let p = write(&dir, "bad.json", &bad);
    assert_eq!(opcat(&["graph", "compose", "--in", p.to_str().unwrap()]).code, 2);
}

#[test]
fn validate_reports_and_morphism_failures() {
    let dir = TempDir::new().unwrap();
    let ok = write(&dir, "t.json", &tadpole());
    let r = opcat(&["graph", "validate", "--in", ok.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("graph:input involution pass"));

    // A vertex map that is not surjective is a well-formed file but not a morphism.
    let g = two_vertex();
    let m = json!({
        "source": g, "target": g,
        "flag_map": {"h1": "h1", "h2": "h2", "l1": "l1", "l2": "l2"},
        "vertex_map": {"v": "v", "w": "v"}
    });
    let p = write(&dir, "m.json", &m);
    let r = opcat(&["graph", "validate", "--in", p.to_str().unwrap()]);
    assert_eq!(r.code, 1, "{}", r.out);
    assert!(r.out.contains("graph-morphism:input maps fail"));
}

#[test]
fn corolla_file_is_the_local_terminal() {
    let g = parse_graph_file(&corolla4().to_string()).unwrap();
    assert_eq!(g.vertices().len(), 1);
    assert_eq!(g.graph.legs().len(), 4);
    assert!(g.edges().is_empty());
    assert_eq!(g, opcat::graphs::corolla(&g.labels, &opcat::finset::Atom::num(1)));
}

#[test]
fn tadpole_file_is_valid_with_one_edge() {
    let g = parse_graph_file(&tadpole().to_string()).unwrap();
    assert_eq!(g.edges().len(), 1);
    assert_eq!(g.leg_injection.image(), g.graph.legs());
}

#[test]
fn three_cycle_involution_is_located() {
    let mut v = tadpole();
    v["flags"] = json!([{"id": "x", "vertex": "v"}, {"id": "y", "vertex": "v"}, {"id": "z", "vertex": "v"}]);
    v["involution"] = json!([["x", "y"], ["y", "z"]]);
    v["labels"] = json!([]);
    assert_eq!(pointer_of(&v.to_string()), "/involution/1");

    let dir = TempDir::new().unwrap();
    let p = write(&dir, "cycle.json", &v);
    let r = opcat(&["graph", "validate", "--in", p.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("at /involution/1"), "{}", r.err);
}

#[test]
fn schema_errors_are_positioned() {
    let mut dup = tadpole();
    dup["flags"][1]["id"] = json!("x");
    assert_eq!(pointer_of(&dup.to_string()), "/flags/1/id");

    let mut edge_label = tadpole();
    edge_label["labels"] = json!([{"label": "a", "flag": "x"}]);
    assert_eq!(pointer_of(&edge_label.to_string()), "/labels/0/flag");

    let mut unlabelled = tadpole();
    unlabelled["labels"] = json!([]);
    assert_eq!(pointer_of(&unlabelled.to_string()), "/labels");

    let mut typed = tadpole();
    typed["flags"][2]["vertex"] = json!(3);
    assert_eq!(pointer_of(&typed.to_string()), "/flags/2/vertex");

    let mut stray = tadpole();
    stray["involution"][0] = json!(["x", "y", "l"]);
    assert_eq!(pointer_of(&stray.to_string()), "/involution/0");

    match parse_graph_file("{\"vertices\": [") {
        Err(ParseError::Syntax { line: 1, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn json_report_round_trips() {
    let r = opcat(&["check", "bfin", "--format", "json"]);
    let report: Report = serde_json::from_str(&r.out).unwrap();
    assert_eq!(report.exit_code(), r.code);
    assert_eq!(report.render(opcat_cli::Format::Json), r.out);

    let dir = TempDir::new().unwrap();
    let p = dir.path().join("r.json");
    std::fs::write(&p, &r.out).unwrap();
    let again = opcat(&["report", "--from", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(again.out, r.out);
    assert_eq!(again.code, r.code);
    let text = opcat(&["report", "--from", p.to_str().unwrap()]);
    assert_eq!(text.out, opcat(&["check", "bfin"]).out);
}

#[test]
fn output_is_deterministic() {
    let a = opcat(&["check", "omega2", "--format", "json"]);
    let b = opcat(&["check", "omega2", "--format", "json"]);
    assert_eq!(a.out, b.out);
    assert_eq!(opcat(&["pi0", "gr"]).out, opcat(&["pi0", "gr"]).out);
}

#[test]
fn pi0_of_gr_is_label_sets() {
    let r = opcat(&["pi0", "gr", "--format", "json"]);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    let ids: Vec<&str> = v["components"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["{a,b}", "{a}", "{b}", "{}"]);
    let thin = opcat(&["pi0", "thin-gr", "--format", "json"]);
    let tv: Value = serde_json::from_str(&thin.out).unwrap();
    let tids: Vec<&str> = tv["components"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, tids);
}

#[test]
fn transforms_check_the_result() {
    let r = opcat(&["transform", "extend", "fin", "--bound", "2"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.contains("roundtrip:R E fin"));
    let r = opcat(&["transform", "restrict", "bfin", "--bound", "2"]);
    assert_eq!(r.code, 0, "{}", r.out);
    assert!(r.out.starts_with("restrict(bfin): 3 objects"));
    // Subsets of a 3-atom universe: 1 + 3 + 3 + 1 objects, one per ordinal of that size.
    let r = opcat(&["transform", "semi-ordered", "fin", "--bound", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["objects"], json!(8));
}

#[test]
fn report_over_chosen_fixtures() {
    let r = opcat(&["report", "--fixture", "fin", "--fixture", "terminal-one"]);
    assert_eq!(r.code, 0, "{}", r.out);
    let r = opcat(&["report", "--fixture", "ordered-delta"]);
    assert_eq!(r.code, 1);
}

#[test]
fn enumerated_graphs_survive_serialization() {
    let cat = GrCategory::new(Mode::Thick, gr_bound(2));
    for g in cat.objects() {
        let file = GraphFile::from_graph(&g);
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(parse_graph_file(&text).unwrap(), *g);
    }
}

fn arb_graph() -> impl Strategy<Value = GraphFile> {
    // Up to 3 vertices and 6 flags; pairs of flags become edges, the rest are labelled legs.
    (1usize..=3, proptest::collection::vec(0usize..3, 0..=6), proptest::collection::vec(any::<bool>(), 3)).prop_map(
        |(nv, attach, pairing)| {
            let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let flags: Vec<opcat_cli::graph_file::FlagEntry> = attach
                .iter()
                .enumerate()
                .map(|(i, v)| opcat_cli::graph_file::FlagEntry {
                    id: format!("f{i}"),
                    vertex: vertices[v % nv].clone(),
                })
                .collect();
            let mut involution = Vec::new();
            let mut legs = Vec::new();
            let mut i = 0;
            while i < flags.len() {
                if i + 1 < flags.len() && pairing[(i / 2) % pairing.len()] {
                    involution.push((flags[i].id.clone(), flags[i + 1].id.clone()));
                    i += 2;
                } else {
                    legs.push(flags[i].id.clone());
                    i += 1;
                }
            }
            let labels = legs
                .iter()
                .enumerate()
                .map(|(k, h)| opcat_cli::graph_file::LabelEntry { label: format!("l{k}"), flag: h.clone() })
                .collect();
            GraphFile { vertices, flags, involution, labels }
        },
    )
}

proptest! {
    #[test]
    fn parse_serialize_parse_is_identity(file in arb_graph(), seed in any::<u64>()) {
        let g = file.to_graph().unwrap();
        let canon = GraphFile::from_graph(&g);
        // Listing order in the file does not matter.
        let mut shuffled = canon.clone();
        let n = shuffled.flags.len();
        if n > 1 {
            shuffled.flags.rotate_left((seed as usize) % n);
        }
        shuffled.involution.reverse();
        shuffled.labels.reverse();
        let text = serde_json::to_string(&shuffled).unwrap();
        let back = parse_graph_file(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(GraphFile::from_graph(&back), canon);
    }
}
