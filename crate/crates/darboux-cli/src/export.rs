//! Plot-ready sample tables: one row per curve sample, full round-trip
//! precision, fixed column contract.

use std::io::{self, Write};

use darboux::geom::FrameSample;
use darboux::rectify::PositionDecomposition;

pub const HEADER: &str = "t,s,u,v,x,y,z,kappa,kappa_g,kappa_n,tau_g,alpha,lambda,mu,nu";

pub fn write_table(
    samples: &[FrameSample],
    decomposition: &PositionDecomposition,
    out: &mut impl Write,
) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for (i, fs) in samples.iter().enumerate() {
        let alpha = fs.alpha.unwrap_or(f64::NAN);
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fs.t,
            fs.s,
            fs.u,
            fs.v,
            fs.point.x,
            fs.point.y,
            fs.point.z,
            fs.kappa,
            fs.kappa_g,
            fs.kappa_n,
            fs.tau_g,
            alpha,
            decomposition.lambda[i],
            decomposition.mu[i],
            decomposition.nu[i],
        )?;
    }
    Ok(())
}
