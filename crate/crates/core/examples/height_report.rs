//! Heights of T and N against the growth indicators, over a few seeds.

use triangular::height::{mean_ratio, measure, LeadingTerm};
use triangular::interp::reconstruct;
use triangular::primary::gen_family;
use triangular::GenSpec;

fn main() -> triangular::Result<()> {
    let spec = GenSpec::new(&[4, 4], (1, 2), 16, 16);
    let mut reports = Vec::new();
    for seed in 0..4 {
        let family = gen_family(&spec, seed)?;
        let r = reconstruct(&family)?;
        let report = measure(&family, r.t.polys(), &r.n, LeadingTerm::Include)?;
        println!("seed {seed}");
        print!("{}", report.to_markdown());
        println!();
        reports.push(report);
    }
    if let Some(m) = mean_ratio(&reports, 2) {
        println!(
            "mean h(T2)/h(N2) = {m} ~ {:.3}",
            num_traits::ToPrimitive::to_f64(&m).unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
