//! Reads a TOML model, solves it and writes VTK and CSV output to a
//! temporary directory.
//!
//! `cargo run --example model_file -- models/uniaxial_bar.toml`

use std::fs::File;
use std::path::PathBuf;

use gelfem::io::{self, ModelFile};
use gelfem::solver::run_continuation;

fn main() -> gelfem::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models/free_swell_cube.toml"));
    let model = ModelFile::load(&path)?.to_model()?;
    println!(
        "{}: {} nodes, {} elements, {} constraints, {} loads, {} states",
        path.display(),
        model.nodes.len(),
        model.elements.len(),
        model.dirichlet.len(),
        model.loads.len(),
        model.schedule.n_steps()
    );

    let states = run_continuation(&model)?;
    let last = states.last().expect("schedule is non-empty");
    let reaction_sum: f64 = last.reactions.iter().map(|r| r.force).sum();
    println!("final residual {:.2e}, sum of reactions {:.2e}", last.final_residual(), reaction_sum);

    let dir = std::env::temp_dir().join("gelfem-model-file-example");
    std::fs::create_dir_all(&dir)?;
    io::vtk::write_vtk(&mut File::create(dir.join("result.vtk"))?, &model, last)?;
    io::csv::write_convergence_log(File::create(dir.join("convergence.csv"))?, &states)?;
    println!("wrote {}", dir.display());
    Ok(())
}
