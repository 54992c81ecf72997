//! `-log10(eps)` over storage time and code size, as CSV and an SVG heat map.

use std::fs;

use ferromem::bounds::{contour_grid, lin_space, Sizing};
use ferromem::output::{contour_svg, write_contour_csv};

fn main() -> ferromem::Result<()> {
    let taus = lin_space(1.0, 100.0, 100)?;
    let ts: Vec<usize> = (1..=25).collect();
    let grid = contour_grid(10.0, 4e-5, &taus, &ts, Sizing::Family)?;
    for &i in &[0, 29, 99] {
        let row: Vec<String> = [0, 9, 19, 24]
            .iter()
            .map(|&k| grid.cells[i][k].map(|v| format!("{v:.2}")).unwrap_or("-".into()))
            .collect();
        println!("tau = {:>5}: t = 1, 10, 20, 25 -> {}", grid.taus[i], row.join(", "));
    }
    write_contour_csv(&grid, fs::File::create("contour.csv")?)?;
    fs::write("contour.svg", contour_svg(&grid))?;
    println!("wrote contour.csv and contour.svg");
    Ok(())
}
