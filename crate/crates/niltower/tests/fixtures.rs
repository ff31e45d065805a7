//! Certifies every committed fixture output against the independent
//! oracles, and exercises the harness itself.

use std::collections::BTreeSet;
use std::path::Path;

use niltower::fixtures::{self, default_dir, expected_path, Entry};
use niltower::run_args;
use niltower_core::linear::reduced_linearization;
use niltower_core::matrix::IntMatrix;
use niltower_core::Caps;
use niltower_oracles::hall::{enumerate, enumerate_upto};
use niltower_oracles::magnus::{normal_form_image, word_image};
use niltower_oracles::{chains, lie as olie, smith, witt};
use serde_json::{json, Value};

fn invariants((rank, torsion): (usize, Vec<i128>)) -> Value {
    json!({ "rank": rank, "torsion": torsion })
}

/// Nondegenerate face table read from the raw JSON.
fn raw_faces(path: &Path) -> Vec<Vec<Vec<Option<usize>>>> {
    let v: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    let layers = v["simplices"].as_array().unwrap();
    let ids: Vec<Vec<&str>> =
        layers.iter().map(|l| l.as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect()).collect();
    let mut out = vec![vec![]];
    for q in 1..layers.len() {
        out.push(
            layers[q]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| {
                    c["faces"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|f| {
                            let degenerate = !f["degeneracies"].as_array().unwrap().is_empty();
                            let base = f["base"].as_str().unwrap();
                            if degenerate {
                                None
                            } else {
                                ids[q - 1].iter().position(|i| *i == base)
                            }
                        })
                        .collect()
                })
                .collect(),
        );
    }
    out
}

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| i128::try_from(&m[(r, c)]).unwrap()).collect()).collect()
}

/// `π_s Lie_n` through tensors and the unnormalized complex.
fn tensor_layer_homotopy(path: &Path, n: usize, s: usize) -> Value {
    let x = niltower::input::parse_space(&std::fs::read(path).unwrap()).unwrap();
    let a = reduced_linearization(&x, s + 2).unwrap().loop_shift().unwrap();
    let ranks: Vec<usize> = (0..=s + 1).map(|q| olie::hall_polynomials(a.rank(q), n).len()).collect();
    let faces: Vec<Vec<Vec<Vec<i128>>>> = (0..=s + 1)
        .map(|q| {
            if q == 0 {
                return vec![];
            }
            (0..=q)
                .map(|i| {
                    let m = olie::lie_of_map(&to_i128(a.face(q, i)), a.rank(q), n);
                    if m.is_empty() {
                        vec![]
                    } else {
                        m
                    }
                })
                .collect()
        })
        .collect();
    invariants(chains::alternating_homotopy(&ranks, &faces, s))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Generators of `G_q X`: per `d`-cell, the surjections `[q+1] -> [d]`
/// that jump at the first gap.
fn loop_generator_count(faces: &[Vec<Vec<Option<usize>>>], q: usize) -> usize {
    faces.iter().enumerate().skip(1).map(|(d, cells)| cells.len() * binomial(q, d - 1)).sum()
}

fn word_letters(w: &str, k: usize) -> Vec<(usize, i64)> {
    w.split_whitespace()
        .map(|t| {
            let (n, e) = t.split_once('^').map_or((t, 1), |(n, e)| (n, e.parse().unwrap()));
            let c = n.chars().next().unwrap();
            let g = c as usize - 'a' as usize;
            assert!(g < k);
            (g, e)
        })
        .collect()
}

type Perm = Vec<usize>;

fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

fn inverse(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

fn closure(gens: &[Perm]) -> BTreeSet<Perm> {
    let id: Perm = (0..gens.first().map_or(0, Vec::len)).collect();
    let mut set: BTreeSet<Perm> = [id].into();
    loop {
        let new: Vec<Perm> = set
            .iter()
            .flat_map(|x| gens.iter().map(move |g| compose(x, g)))
            .filter(|y| !set.contains(y))
            .collect();
        if new.is_empty() {
            return set;
        }
        set.extend(new);
    }
}

/// Orders of the lower central series quotients of a permutation group.
fn lcs_layer_orders(gens: &[Perm], class: usize) -> Vec<usize> {
    let g = closure(gens);
    let mut gamma = g.clone();
    let mut out = Vec::new();
    for _ in 0..class {
        let comms: Vec<Perm> = g
            .iter()
            .flat_map(|x| {
                gamma.iter().map(move |y| compose(&compose(&inverse(x), &inverse(y)), &compose(x, y)))
            })
            .collect();
        let next = closure(&comms);
        out.push(gamma.len() / next.len());
        gamma = next;
    }
    out
}

type M3 = [[i64; 3]; 3];

fn mul3(a: &M3, b: &M3) -> M3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn inv_unitriangular(a: &M3) -> M3 {
    [[1, -a[0][1], a[0][1] * a[1][2] - a[0][2]], [0, 1, -a[1][2]], [0, 0, 1]]
}

fn eval3(word: &[(usize, i64)], gens: &[M3]) -> M3 {
    let mut acc = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for &(g, e) in word {
        let m = if e > 0 { gens[g] } else { inv_unitriangular(&gens[g]) };
        for _ in 0..e.abs() {
            acc = mul3(&acc, &m);
        }
    }
    acc
}

fn arg<'a>(e: &'a Entry, flag: &str) -> &'a str {
    let i = e.args.iter().position(|a| a == flag).unwrap();
    &e.args[i + 1]
}

fn num(e: &Entry, flag: &str) -> usize {
    arg(e, flag).parse().unwrap()
}

fn file(dir: &Path, e: &Entry, at: usize) -> std::path::PathBuf {
    Path::new(&e.args[at].replace("{dir}", &dir.to_string_lossy())).to_path_buf()
}

/// Checks a committed report against the oracle for its verb; error
/// reports are checked for their kind.
fn certify(dir: &Path, e: &Entry, report: &Value) {
    let result = &report["result"];
    let name = e.name.as_str();
    match e.args[0].as_str() {
        "validate" if e.exit == 0 => {
            assert_eq!(result["ok"], json!(true), "{name}");
        }
        "validate" => {
            let want = match name {
                "validate_duplicate_id" | "validate_unknown_face" => (2, "schema"),
                "validate_bad_degeneracy" => (2, "canonical_form"),
                "validate_not_reduced" => (2, "reducedness"),
                "validate_broken_identity" => (3, "simplicial_identity"),
                "validate_malformed" => {
                    assert_eq!(report["error"]["code"], json!(1), "{name}");
                    return;
                }
                _ => {
                    assert_eq!(report["error"]["code"], json!(2), "{name}");
                    assert!(report["error"]["line"].as_u64().unwrap() > 1, "{name}");
                    return;
                }
            };
            let v = &result["violations"][0];
            assert!(v.is_object(), "{name}: {report}");
            assert_eq!((v["code"].as_u64().unwrap(), v["kind"].as_str().unwrap()), (want.0, want.1), "{name}");
        }
        "homology" if e.exit == 0 => {
            let s = num(e, "--degree");
            let faces = raw_faces(&file(dir, e, 1));
            assert_eq!(*result, invariants(chains::reduced_homology(&faces, s)), "{name}");
        }
        "hall-basis" if e.exit == 0 => {
            let (k, n) = (num(e, "--generators"), num(e, "--class"));
            let trees: Vec<String> = enumerate(k, n).iter().map(|t| t.render()).collect();
            assert_eq!(result["trees"], json!(trees), "{name}");
            assert_eq!(result["rank"], json!(witt(k as u64, n as u64) as i64), "{name}");
        }
        "witt" if e.exit == 0 => {
            let w = witt(num(e, "--generators") as u64, num(e, "--class") as u64);
            let want = if w < (1i128 << 53) { json!(w as i64) } else { json!(w.to_string()) };
            assert_eq!(*result, want, "{name}");
        }
        "cross-effect" if e.exit == 0 => {
            let n = num(e, "--class");
            let ranks: Vec<usize> = arg(e, "--ranks").split(',').map(|r| r.parse().unwrap()).collect();
            let total: usize = ranks.iter().sum();
            let mut stacked: Vec<Vec<i128>> = Vec::new();
            let mut offset = 0;
            for &r in &ranks {
                // the projection that forgets one summand
                let kept: Vec<usize> = (0..total).filter(|&c| c < offset || c >= offset + r).collect();
                let p: Vec<Vec<i128>> =
                    kept.iter().map(|&c| (0..total).map(|j| (j == c) as i128).collect()).collect();
                stacked.extend(olie::lie_of_map(&p, total, n));
                offset += r;
            }
            let cols = witt(total as u64, n as u64) as usize;
            let kernel = cols - smith::rank(&stacked);
            assert_eq!(result["kernel"], json!({ "rank": kernel, "torsion": [] }), "{name}");
            assert_eq!(result["injective"], json!(kernel == 0), "{name}");
        }
        "collect" if e.exit == 0 => {
            let (k, n) = (num(e, "--generators"), num(e, "--class"));
            let word = word_letters(arg(e, "--word"), k);
            let exps: Vec<i64> = result["exponents"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
            let trees = enumerate_upto(k, n);
            assert_eq!(normal_form_image(n, &trees, &exps), word_image(n, &word), "{name}");
            let named: Vec<Value> = trees
                .iter()
                .zip(&exps)
                .filter(|(_, &x)| x != 0)
                .map(|(t, &x)| json!({ "tree": t.render(), "exponent": x }))
                .collect();
            assert_eq!(result["terms"], json!(named), "{name}");
        }
        "nilq" if e.exit == 0 => {
            let n = num(e, "--class");
            let layers = &result["layers"];
            let free = |r: usize| json!({ "rank": r, "torsion": [] });
            let cyclic = |t: Vec<i128>| json!({ "rank": 0, "torsion": t });
            let want: Vec<Value> = match name {
                "nilq_free2_3" => (1..=3).map(|w| free(witt(2, w) as usize)).collect(),
                "nilq_z2_1" | "nilq_z2_2" => (1..=n).map(|w| if w == 1 { cyclic(vec![2]) } else { free(0) }).collect(),
                "nilq_dihedral8_3" => {
                    // a = (0 1 2 3), b = (1 3); the relators hold
                    let (a, b): (Perm, Perm) = (vec![1, 2, 3, 0], vec![0, 3, 2, 1]);
                    let a4 = compose(&compose(&a, &a), &compose(&a, &a));
                    let ba = compose(&compose(&compose(&inverse(&b), &a), &b), &a);
                    assert_eq!(a4, vec![0, 1, 2, 3]);
                    assert_eq!(ba, vec![0, 1, 2, 3]);
                    assert_eq!(closure(&[a.clone(), b.clone()]).len(), 8);
                    assert_eq!(lcs_layer_orders(&[a, b], 3), vec![4, 2, 1]);
                    vec![cyclic(vec![2, 2]), cyclic(vec![2]), free(0)]
                }
                "nilq_heisenberg_3" => {
                    // the unitriangular model satisfies both relators
                    let gens: [M3; 2] = [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 1], [0, 0, 1]]];
                    let rels = ["a b a^-1 b^-1 a b a b^-1 a^-1 a^-1", "a b a^-1 b^-1 b b a b^-1 a^-1 b^-1"];
                    for r in rels {
                        assert_eq!(eval3(&word_letters(r, 2), &gens), [[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
                    }
                    vec![free(2), free(1), free(0)]
                }
                other => panic!("no oracle for {other}"),
            };
            assert_eq!(*layers, json!(want), "{name}");
        }
        "loop-group" if e.exit == 0 => {
            let q = num(e, "--degree");
            let faces = raw_faces(&file(dir, e, 1));
            let count = loop_generator_count(&faces, q);
            assert_eq!(result["generator_count"], json!(count), "{name}");
            let per = result["faces"].as_array().unwrap();
            assert_eq!(per.len(), count);
            assert!(per.iter().all(|f| f.as_array().unwrap().len() == if q == 0 { 0 } else { q + 1 }));
        }
        "tower" if e.exit == 0 => {
            let n = num(e, "--class");
            let path = file(dir, e, 2);
            let faces = raw_faces(&path);
            let circles = faces.get(1).map_or(0, Vec::len);
            let higher_ok = faces.iter().skip(2).all(|l| l.is_empty());
            let want: Vec<Value> = if higher_ok {
                (1..=n).map(|w| json!({ "rank": witt(circles as u64, w as u64), "torsion": [] })).collect()
            } else {
                // simply connected fixtures: only H_1 can show up, in weight 1
                let h1 = invariants(chains::reduced_homology(&faces, 1));
                assert_eq!(h1, json!({ "rank": 0, "torsion": [] }));
                (1..=n).map(|_| h1.clone()).collect()
            };
            assert_eq!(result["layers"], json!(want), "{name}");
        }
        "layer-homotopy" if e.exit == 0 => {
            let (n, s) = (num(e, "--class"), num(e, "--degree"));
            let path = file(dir, e, 1);
            if n == 1 {
                assert_eq!(*result, invariants(chains::reduced_homology(&raw_faces(&path), s + 1)), "{name}");
            }
            assert_eq!(*result, tensor_layer_homotopy(&path, n, s), "{name}");
        }
        _ => {
            let kind = report["error"]["kind"].as_str();
            match e.exit {
                1 => assert_eq!(kind, Some("io"), "{name}"),
                3 => assert_eq!(kind, Some("resource_cap"), "{name}"),
                2 if name == "usage_error" => assert_eq!(*report, Value::Null),
                2 => assert!(matches!(kind, Some("parse" | "invalid_argument")), "{name}"),
                x => panic!("{name}: unexpected exit {x}"),
            }
        }
    }
}

#[test]
fn committed_outputs_match_oracles() {
    let dir = default_dir();
    let (manifest, _) = fixtures::load(&dir).unwrap();
    for e in &manifest.fixtures {
        let bytes = std::fs::read(expected_path(&dir, &e.name)).unwrap();
        let report: Value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
        certify(&dir, e, &report);
    }
}

#[test]
fn fresh_checkout_passes() {
    let out = run_args(["niltower", "fixture-check"], &Caps::default());
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["failures"], json!([]), "{}", out.stdout);
    assert_eq!(out.exit, 0);
}

fn copy_fixtures() -> tempfile::TempDir {
    let tmp = tempfile::tempdir().unwrap();
    let src = default_dir();
    for sub in ["", "spaces", "presentations", "negative", "expected"] {
        let to = tmp.path().join(sub);
        std::fs::create_dir_all(&to).unwrap();
        for entry in std::fs::read_dir(src.join(sub)).unwrap() {
            let p = entry.unwrap().path();
            if p.is_file() {
                std::fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
            }
        }
    }
    tmp
}

#[test]
fn perturbed_rank_is_a_named_failure() {
    let tmp = copy_fixtures();
    let path = expected_path(tmp.path(), "homology_s2_2");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("\"rank\": 1", "\"rank\": 2")).unwrap();
    let dir = tmp.path().to_string_lossy().to_string();
    let out = run_args(["niltower", "fixture-check", "--dir", &dir], &Caps::default());
    assert_eq!(out.exit, 2);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["failures"][0]["name"], json!("homology_s2_2"));
    assert_eq!(v["result"]["failures"].as_array().unwrap().len(), 1);
}

#[test]
fn lowered_cap_fails_with_exit_3() {
    let caps = Caps { max_class: 2, ..Caps::default() };
    let out = run_args(["niltower", "fixture-check"], &caps);
    assert_eq!(out.exit, 3);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let names: Vec<&str> =
        v["result"]["failures"].as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"tower_pi0_wedge2_3"), "{names:?}");
}

#[test]
fn bundled_spaces_are_the_standard_ones() {
    use niltower_core::simplicial::{moore, point, sphere, wedge_of_circles};
    let dir = default_dir().join("spaces");
    let load = |n: &str| niltower::input::parse_space(&std::fs::read(dir.join(n)).unwrap()).unwrap();
    for (file, x) in [
        ("point.json", point()),
        ("s1.json", sphere(1).unwrap()),
        ("s2.json", sphere(2).unwrap()),
        ("s3.json", sphere(3).unwrap()),
        ("wedge1.json", wedge_of_circles(1)),
        ("wedge2.json", wedge_of_circles(2)),
        ("moore2_2.json", moore(2, 2).unwrap()),
    ] {
        assert_eq!(load(file).cells(), x.cells(), "{file}");
    }
}

#[test]
fn every_error_path_has_a_fixture() {
    let (manifest, _) = fixtures::load(&default_dir()).unwrap();
    let dir = default_dir();
    let mut seen = BTreeSet::new();
    for e in &manifest.fixtures {
        seen.insert(format!("exit {}", e.exit));
        let bytes = std::fs::read(expected_path(&dir, &e.name)).unwrap();
        if bytes.is_empty() {
            continue;
        }
        let v: Value = serde_json::from_slice(&bytes).unwrap();
        if let Some(code) = v["error"]["code"].as_u64() {
            seen.insert(format!("parse code {code}"));
        }
        for viol in v["result"]["violations"].as_array().into_iter().flatten() {
            seen.insert(format!("violation {}", viol["kind"].as_str().unwrap()));
        }
        if let Some(kind) = v["error"]["kind"].as_str() {
            seen.insert(format!("error {kind}"));
        }
    }
    for want in [
        "exit 0",
        "exit 1",
        "exit 2",
        "exit 3",
        "parse code 1",
        "parse code 2",
        "violation schema",
        "violation canonical_form",
        "violation reducedness",
        "violation simplicial_identity",
        "error io",
        "error parse",
        "error invalid_argument",
        "error resource_cap",
    ] {
        assert!(seen.contains(want), "no fixture reaches {want}");
    }
}

#[test]
fn commands_leave_inputs_untouched() {
    let dir = default_dir();
    let snapshot = |d: &Path| -> Vec<(String, Vec<u8>)> {
        let mut out = Vec::new();
        for sub in ["spaces", "presentations", "negative"] {
            for entry in std::fs::read_dir(d.join(sub)).unwrap() {
                let p = entry.unwrap().path();
                out.push((p.display().to_string(), std::fs::read(&p).unwrap()));
            }
        }
        out.sort();
        out
    };
    let before = snapshot(&dir);
    let (manifest, _) = fixtures::load(&dir).unwrap();
    for e in &manifest.fixtures {
        fixtures::run_entry(&dir, e, &Caps::default());
    }
    assert_eq!(snapshot(&dir), before);
}
