//! Parametric resonance under a periodic hopping drive.

use hubcorr::floquet::{first_resonance_prediction, resonance_scan, DeterminantOptions, FloquetDrive};

fn main() -> hubcorr::Result<()> {
    let drive = FloquetDrive::peierls_1d(1.0, 0.3, 1.0, 0.05)?;
    let us: Vec<f64> = (0..=60).map(|i| 0.85 + 0.005 * i as f64).collect();
    let scan = resonance_scan(&drive, &us, 1000, &DeterminantOptions::default())?;
    let (center, width) = first_resonance_prediction(&drive);
    println!("predicted first band: centre {center:.4}, width {width:.4}");
    for b in &scan.bands {
        println!("unstable band [{:.4}, {:.4}], max Im nu {:.4}", b.lower, b.upper, b.max_im_nu);
    }
    Ok(())
}
