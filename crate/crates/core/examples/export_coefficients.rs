//! Writes the monic transfer-function coefficients of a parameter file as a
//! coefficients document on standard output.
//!
//! cargo run -p foecm-core --example export_coefficients -- data/battery_params.json

use foecm::formats::{CoefficientsDocument, ParamsDocument};
use foecm::gl_model::{build_gl_series, expand_monic_tf};
use foecm::numerics::PrecisionContext;
use foecm::sweep::DEFAULT_TS;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .ok_or("usage: export_coefficients PARAMS.json")?;
    let doc: ParamsDocument = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let params = doc.resolve(None, None, DEFAULT_TS)?;
    let ctx = PrecisionContext::default();
    let tf = expand_monic_tf(&build_gl_series(&params, &ctx)?, &ctx)?;
    let out = CoefficientsDocument::from_tf(&tf, Some(params.ts));
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}
