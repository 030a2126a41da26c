use std::fs;
use std::path::{Path, PathBuf};

use mltk::core::Value;
use mltk::format::detect_format;
use mltk::{read, read_any, Error, Format, ReadOptions};

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

const MULAN: &str = "@relation scene
@attribute a numeric
@attribute b numeric
@attribute beach {0,1}
@attribute urban {0,1}
@data
0.5,1,1,0
0,0,0,1
{0 2,3 1}
";

const XML: &str = r#"<?xml version="1.0" encoding="utf-8"?>
<labels xmlns="http://mulan.sourceforge.net/labels">
  <label name="beach"></label>
  <labels name="group"><label name="urban"></label></labels>
</labels>
"#;

#[test]
fn mulan_with_sibling_xml() {
    let dir = tempfile::tempdir().unwrap();
    let data = put(dir.path(), "scene.arff", MULAN);
    put(dir.path(), "scene.xml", XML);
    let ds = read(&data, Format::Mulan, &ReadOptions::default()).unwrap();
    assert_eq!(ds.name(), "scene");
    assert_eq!(ds.num_labels(), 2);
    assert_eq!(ds.num_instances(), 3);
    assert_eq!(ds.row(2), &[Value::Numeric(2.0), Value::Numeric(0.0)]);
    assert!(ds.labelset(2).contains(1) && !ds.labelset(2).contains(0));
}

#[test]
fn mulan_xml_found_by_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let data = put(dir.path(), "scene-train.arff", MULAN);
    put(dir.path(), "scene.xml", XML);
    assert_eq!(
        read(&data, Format::Mulan, &ReadOptions::default())
            .unwrap()
            .num_labels(),
        2
    );
}

#[test]
fn mulan_without_xml_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let data = put(dir.path(), "scene.arff", MULAN);
    let err = read(&data, Format::Mulan, &ReadOptions::default()).unwrap_err();
    assert!(matches!(err, Error::MissingCompanion { .. }), "{err}");
    assert!(err.is_data_error());
}

#[test]
fn meka_label_count_in_relation() {
    let dir = tempfile::tempdir().unwrap();
    let first = put(
        dir.path(),
        "m.arff",
        "@relation 'music: -C 2'\n@attribute l1 {0,1}\n@attribute l2 {0,1}\n@attribute x numeric\n@data\n1,0,3\n0,0,4\n",
    );
    let ds = read(&first, Format::Meka, &ReadOptions::default()).unwrap();
    assert_eq!(ds.name(), "music");
    assert_eq!(ds.label_names().collect::<Vec<_>>(), ["l1", "l2"]);

    let last = put(
        dir.path(),
        "n.arff",
        "@relation 'tail: -C -2'\n@attribute x numeric\n@attribute l1 {0,1}\n@attribute l2 {0,1}\n@data\n3,1,1\n",
    );
    let ds = read(&last, Format::Meka, &ReadOptions::default()).unwrap();
    assert_eq!(ds.num_features(), 1);
    assert_eq!(ds.labelset(0).len(), 2);
}

#[test]
fn keel_outputs_are_labels() {
    let dir = tempfile::tempdir().unwrap();
    let data = put(
        dir.path(),
        "k.dat",
        "@relation k\n@attribute x real [0.0, 5.0]\n@attribute a {0,1}\n@attribute b {0,1}\n@inputs x\n@outputs a, b\n@data\n1.5, 0, 1\n",
    );
    let (ds, format) = read_any(&data, None, &ReadOptions::default()).unwrap();
    assert_eq!(format, Format::Keel);
    assert_eq!(ds.num_labels(), 2);
    assert!(ds.labelset(0).contains(1));
}

#[test]
fn csv_with_label_names_file() {
    let dir = tempfile::tempdir().unwrap();
    let data = put(dir.path(), "t.csv", "x,kind,y1,y2\n1.5,a,1,0\n,b,0,1\n");
    put(dir.path(), "t_labels.csv", "y1\ny2\n");
    let ds = read(&data, Format::Csv, &ReadOptions::default()).unwrap();
    assert_eq!(ds.name(), "t");
    assert_eq!(ds.row(1), &[Value::Missing, Value::Nominal(1)]);
}

#[test]
fn libsvm_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let data = put(dir.path(), "s.svm", "0,2 1:0.5 3:2\n1 2:1\n");
    let ds = read(&data, Format::Libsvm, &ReadOptions::default()).unwrap();
    assert_eq!(ds.num_labels(), 3);
    assert_eq!(ds.num_features(), 3);
    assert_eq!(ds.label_names().collect::<Vec<_>>(), ["y0", "y1", "y2"]);
    assert_eq!(
        ds.row(1),
        &[Value::Numeric(0.0), Value::Numeric(1.0), Value::Numeric(0.0)]
    );

    let wide = ReadOptions {
        num_labels: Some(5),
        ..Default::default()
    };
    assert_eq!(read(&data, Format::Libsvm, &wide).unwrap().num_labels(), 5);
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let data = put(
        dir.path(),
        "bad.arff",
        "@relation 'bad: -C 1'\n@attribute l {0,1}\n@attribute x numeric\n@data\n1,2\n0,abc\n",
    );
    match read(&data, Format::Meka, &ReadOptions::default()).unwrap_err() {
        Error::Parse { error, .. } => {
            assert_eq!(error.line, 6);
            assert_eq!(error.column, 3);
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn labels_must_be_binary() {
    let dir = tempfile::tempdir().unwrap();
    let data = put(
        dir.path(),
        "b.arff",
        "@relation 'b: -C 2'\n@attribute l1 {0,1}\n@attribute l2 {0,1}\n@attribute x numeric\n@data\n2,0,1\n",
    );
    assert!(matches!(
        read(&data, Format::Meka, &ReadOptions::default()),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn citation_from_sidecar_and_comments() {
    let dir = tempfile::tempdir().unwrap();
    let embedded = "% @misc{inline,\n%   title={x}\n% }\n@relation 'c: -C 2'\n@attribute l1 {0,1}\n@attribute l2 {0,1}\n@attribute x numeric\n@data\n1,0,7\n";
    let data = put(dir.path(), "c.arff", embedded);
    let ds = read(&data, Format::Meka, &ReadOptions::default()).unwrap();
    assert!(ds.citation().unwrap().starts_with("@misc{inline,"));

    let bib = "@article{side,\n  title={y}\n}\n";
    put(dir.path(), "c.bib", bib);
    let ds = read(&data, Format::Meka, &ReadOptions::default()).unwrap();
    assert_eq!(ds.citation(), Some(bib.trim_end()));
}

#[test]
fn format_detection() {
    let dir = tempfile::tempdir().unwrap();
    let meka = put(
        dir.path(),
        "a.arff",
        "@relation 'a: -C 1'\n@attribute l1 {0,1}\n@data\n",
    );
    let mulan = put(dir.path(), "b.arff", "@relation b\n@attribute l1 {0,1}\n@data\n");
    assert_eq!(detect_format(&meka).unwrap(), Format::Meka);
    assert_eq!(detect_format(&mulan).unwrap(), Format::Mulan);
    assert_eq!(detect_format(Path::new("x.csv")).unwrap(), Format::Csv);
    assert_eq!(detect_format(Path::new("x.libsvm")).unwrap(), Format::Libsvm);
    assert!(matches!(
        detect_format(Path::new("x.txt")),
        Err(Error::UnknownFormat(_))
    ));
}

#[test]
fn missing_file_is_an_io_error() {
    let err = read(Path::new("/nonexistent/x.arff"), Format::Meka, &ReadOptions::default()).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}
