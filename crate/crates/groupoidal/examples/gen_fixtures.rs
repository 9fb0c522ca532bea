use groupoidal::corpus::corpus;
use groupoidal::json::{ActionJson, BibundleJson, CocycleJson, FunctorJson, GroupoidJson};
use std::fs;

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "/tmp/fixtures".into());
    fs::create_dir_all(&dir).unwrap();
    let c = corpus();
    for (name, g) in &c.groupoids {
        let j = GroupoidJson::from_groupoid(g);
        let safe = name.replace('+', "_");
        fs::write(
            format!("{dir}/g-{safe}.json"),
            serde_json::to_string_pretty(&j).unwrap(),
        )
        .unwrap();
    }
    for (name, f) in &c.functors {
        let j = FunctorJson::from_functor(f);
        let safe = name.replace([':', '>', '-'], "_");
        fs::write(
            format!("{dir}/f-{safe}.json"),
            serde_json::to_string_pretty(&j).unwrap(),
        )
        .unwrap();
    }
    for (name, b) in &c.bundles {
        let j = BibundleJson::from_bibundle(b);
        let safe = name.replace([':', '<', '>', '-', '+'], "_");
        fs::write(
            format!("{dir}/b-{safe}.json"),
            serde_json::to_string_pretty(&j).unwrap(),
        )
        .unwrap();
    }
    for (name, cc) in &c.cocycles {
        let j = CocycleJson::from_cocycle(cc);
        fs::write(
            format!("{dir}/c-{name}.json"),
            serde_json::to_string_pretty(&j).unwrap(),
        )
        .unwrap();
    }
    for (name, a) in &c.actions {
        let j = ActionJson::from_action(a);
        let safe = name.replace(['(', ')', ','], "_");
        fs::write(
            format!("{dir}/a-{safe}.json"),
            serde_json::to_string_pretty(&j).unwrap(),
        )
        .unwrap();
    }
    println!("fixtures written to {dir}");
}
