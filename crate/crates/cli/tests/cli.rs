// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hedra_core::hypercore::{read_hgr, write_hgr};

fn hedra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hedra")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{out}"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hedra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn clean_order_tests_as_a_total_order() {
    let f = scratch("order.hgr");
    let o = hedra(&["gen", "order", "--m", "100", "--sigma", "0", "--seed", "7", "--out", path(&f)]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "seed"), "7");
    let o = hedra(&["test", "--property", "total-order", "--N", "100", "--mode", "exact", "--input", path(&f)]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "fraction"), "1");
    let o = hedra(&["dist", path(&f), path(&f)]);
    assert_eq!(value(&stdout(&o), "distance"), "0");
}

#[test]
fn generated_files_round_trip() {
    for kind in ["order", "leq3", "3uniform", "graphon"] {
        let f = scratch(&format!("rt-{kind}.hgr"));
        let o = hedra(&["gen", kind, "--m", "12", "--sigma", "0.1", "--seed", "3", "--out", path(&f)]);
        assert!(o.status.success(), "{kind}");
        let text = std::fs::read_to_string(&f).unwrap();
        assert_eq!(write_hgr(&read_hgr(&text).unwrap()), text, "{kind}");
    }
}

#[test]
fn gen_without_out_writes_hgr_to_stdout() {
    let o = hedra(&["gen", "order", "--m", "5", "--seed", "1"]);
    assert!(o.status.success());
    let g = read_hgr(&stdout(&o)).unwrap();
    assert_eq!(g.n(), 5);
    assert!(String::from_utf8(o.stderr).unwrap().contains("seed=1"));
}

#[test]
fn same_arguments_same_report() {
    let args = ["test", "--property", "triangle-free", "--N", "3", "--mode", "mc", "--samples", "500", "--seed", "4"];
    let f = scratch("mc.hgr");
    let g = hedra(&["gen", "graphon", "--graphon", "half", "--m", "30", "--seed", "2", "--out", path(&f)]);
    assert!(g.status.success());
    let mut a: Vec<&str> = args.to_vec();
    a.extend(["--input", path(&f)]);
    let (x, y) = (hedra(&a), hedra(&a));
    assert_eq!(stdout(&x), stdout(&y));
    assert_eq!(value(&stdout(&x), "seed"), "4");
    let frac: f64 = value(&stdout(&x), "fraction").parse().unwrap();
    assert!(frac > 0.5 && frac < 1.0);
}

#[test]
fn bipartite_delete_entails_bipartite() {
    let o = hedra(&["rule", "--name", "bipartite-delete", "--entail-upto", "4"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "counterexample"), "none");
    let o = hedra(&["rule", "--name", "identity-copy", "--entail-upto", "3", "--property", "triangle-free"]);
    assert_eq!(value(&stdout(&o), "counterexample"), "found");
    assert_eq!(value(&stdout(&o), "free_vertices"), "3");
}

#[test]
fn rule_apply_drops_the_anchors() {
    let f = scratch("apply.hgr");
    hedra(&["gen", "order", "--m", "10", "--seed", "1", "--out", path(&f)]);
    let o = hedra(&["rule", "--name", "identity-copy", "--apply", path(&f), "--anchors", "0,3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(value(&out, "output_vertices"), "8");
    let body: String = out.lines().skip_while(|l| l.contains('=')).map(|l| format!("{l}\n")).collect();
    assert_eq!(read_hgr(&body).unwrap().n(), 8);
}

#[test]
fn obstruct_exit_codes() {
    let f = scratch("leq3.hgr");
    hedra(&["gen", "leq3", "--m", "200", "--sigma", "0.02", "--seed", "1", "--out", path(&f)]);
    let o = hedra(&["obstruct", "--kind", "quad", "--anchors", "4", "--seed", "1", "--input", path(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("OBSTRUCTION 1"));
    let f0 = scratch("leq3-clean.hgr");
    hedra(&["gen", "leq3", "--m", "40", "--sigma", "0", "--seed", "1", "--out", path(&f0)]);
    let o = hedra(&["obstruct", "--kind", "quad", "--budget", "10000", "--input", path(&f0)]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(value(&stdout(&o), "result"), "none");
    let fo = scratch("order-obs.hgr");
    hedra(&["gen", "order", "--m", "300", "--sigma", "0.01", "--seed", "2", "--out", path(&fo)]);
    let o = hedra(&["obstruct", "--kind", "pair", "--anchors", "3", "--rule", "anchor-order", "--input", path(&fo)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("output-not-total"));
}

#[test]
fn ramsey_finds_a_monochromatic_triangle() {
    let f = scratch("k6.hgr");
    hedra(&["gen", "graphon", "--graphon", "half", "--m", "6", "--seed", "9", "--out", path(&f)]);
    let o = hedra(&["ramsey", "--target", "3", "--input", path(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&stdout(&o), "result"), "found");
}

#[test]
fn repairs_from_the_command_line() {
    let f = scratch("bip.hgr");
    hedra(&["gen", "graphon", "--graphon", "complete-bipartite", "--m", "80", "--seed", "5", "--out", path(&f)]);
    let out = scratch("bip-out.hgr");
    let o = hedra(&["repair", "--algo", "bipartite", "--train", "10", "--input", path(&f), "--output", path(&out)]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "edit_fraction"), "0");
    assert_eq!(read_hgr(&std::fs::read_to_string(&out).unwrap()).unwrap().n(), 70);
    let fo = scratch("noisy-order.hgr");
    hedra(&["gen", "order", "--m", "100", "--sigma", "0.3", "--seed", "5", "--out", path(&fo)]);
    let o = hedra(&["repair", "--algo", "order", "--train", "30", "--input", path(&fo)]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(value(&stdout(&o), "outcome"), "retry");
}

#[test]
fn graphon_subcommand() {
    let o = hedra(&["graphon", "--graphon", "complete-bipartite", "--sample", "120", "--repair", "64", "0.1", "--seed", "1"]);
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "residual_triangles"), "0");
    let gwn = scratch("g.gwn");
    std::fs::write(&gwn, "GWN 1\nm 2\n0 1\n1 0\n").unwrap();
    let o = hedra(&["graphon", "--graphon", path(&gwn), "--density", "1000"]);
    assert_eq!(value(&stdout(&o), "triangle_density"), "0");
    let o = hedra(&["graphon", "--graphon", "half", "--sample", "10", "--repair", "4", "0.7"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn error_exit_codes() {
    assert_eq!(hedra(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hedra(&["test", "--property", "no-such", "--N", "2", "--input", "/dev/null"]).status.code(), Some(1));
    assert_eq!(hedra(&["dist", "/nonexistent/a.hgr", "/nonexistent/b.hgr"]).status.code(), Some(3));
    let bad = scratch("bad.hgr");
    std::fs::write(&bad, "HGR 9\n").unwrap();
    assert_eq!(hedra(&["dist", path(&bad), path(&bad)]).status.code(), Some(3));
    assert_eq!(hedra(&["--help"]).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_hedra"))
        .args(["graphon", "--density", "10"])
        .env("HEDRA_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
