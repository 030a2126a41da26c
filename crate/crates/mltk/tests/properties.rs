mod common;

use mltk::core::{AttributeMeta, DatasetParts, Labelset, MlDataset, Value};
use mltk::format::{format_number, same_content};
use mltk::{Format, Schema};
use proptest::prelude::*;

fn cell() -> impl Strategy<Value = Value> {
    prop_oneof![
        3 => Just(Value::Numeric(0.0)),
        4 => (-1e6f64..1e6).prop_map(Value::Numeric),
        1 => (-1000i32..1000).prop_map(|v| Value::Numeric(v as f64)),
        1 => Just(Value::Missing),
    ]
}

prop_compose! {
    fn dataset()(n in 1usize..12, f in 1usize..5, k in 2usize..5)
        (values in prop::collection::vec(cell(), n * f),
         labels in prop::collection::vec(prop::collection::vec(any::<bool>(), k), n),
         nominal in 0..f,
         f in Just(f), k in Just(k)) -> MlDataset {
        let mut features: Vec<AttributeMeta> = (0..f).map(|j| AttributeMeta::numeric(format!("x{j}"))).collect();
        features[nominal] = AttributeMeta::nominal(format!("x{nominal}"), ["a", "b c", "d"]);
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| match (i % f == nominal, v) {
                (true, Value::Numeric(x)) => Value::Nominal((x.abs() as u32) % 3),
                (_, v) => v,
            })
            .collect();
        MlDataset::new(DatasetParts {
            name: "prop".into(),
            features,
            label_names: (0..k).map(|j| format!("y{j}")).collect(),
            values,
            labels: labels.iter().map(|b| Labelset::from_bits(b)).collect(),
            ..Default::default()
        })
        .unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_format_reads_back_what_it_wrote(ds in dataset(), sparse in any::<bool>()) {
        let dir = tempfile::tempdir().unwrap();
        let schema = Schema::of(&ds);
        for format in Format::ALL {
            let path = common::write_as(&ds, format, sparse, &dir.path().join(format.as_str()));
            let back = common::read_back(&path, format, &schema);
            prop_assert!(same_content(&ds, &back, 0.0).is_ok(), "{format}: {:?}", same_content(&ds, &back, 0.0));
        }
    }

    #[test]
    fn numbers_print_exactly(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        prop_assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
    }
}
