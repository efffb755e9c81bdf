//! Model files in, VTK and CSV out.

pub mod csv;
pub mod model_file;
pub mod vtk;

pub use model_file::ModelFile;

/// Formats a float with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, -1.0 / 3.0, 3.3899539544948047, 1e-300, 0.0] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_float(2.0), "2.0000000000000000e0");
    }
}
