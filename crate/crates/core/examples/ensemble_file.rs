//! Round-trip a weighted ensemble through the JSON file format and run the CLI driver on it.

use twirl_lab::cli::{run, Command, EnsembleSource, RunConfig};
use twirl_lab::clifford::{Ensemble, EnsembleEntry};
use twirl_lab::pauli::SystemParams;

fn main() -> twirl_lab::Result<()> {
    let p = SystemParams::new(1, 2)?;
    let group = Ensemble::clifford_uniform(p)?;
    // The first six elements, with weights 1/3, 1/3, 1/12, 1/12, 1/12, 1/12.
    let weights = ["1/3", "1/3", "1/12", "1/12", "1/12", "1/12"];
    let entries = group.entries()[..6]
        .iter()
        .zip(weights)
        .map(|(e, w)| {
            Ok(EnsembleEntry {
                weight: twirl_lab::clifford::parse_rational(w)?,
                element: e.element.clone(),
            })
        })
        .collect::<twirl_lab::Result<Vec<_>>>()?;
    let ens = Ensemble::new(p, entries)?;
    let text = ens.to_json()?;
    assert_eq!(Ensemble::from_json(&text)?, ens);

    let path = std::env::temp_dir().join("twirl-lab-example-ensemble.json");
    std::fs::write(&path, &text).map_err(twirl_lab::Error::from)?;
    let mut config = RunConfig::new(Command::CheckMixing);
    config.ensemble = EnsembleSource::File(path);
    config.timing = false;
    let outcome = run(&config)?;
    print!("{}", outcome.report.to_json_string());
    println!("exit code {}", outcome.exit_code);
    Ok(())
}
