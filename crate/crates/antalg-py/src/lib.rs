use pyo3::prelude::*;

#[pymodule]
fn antalg_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
