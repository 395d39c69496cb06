//! ASCII rendering of a progression along the ε axis.
//!
//! ```text
//! M = [6, 8)   N = [1, 2)   D = 1
//!
//! ε  0          1          6          7
//!    |----------|----------|----------|--------->
//!     empty      origin     l-axis     origin
//! ```

use std::fmt::Write;

use interleavings_core::classify::Progression;
use interleavings_core::interval::IntervalModule;
use interleavings_core::Rational;

const MIN_CELL: usize = 11;

pub fn render(m: &IntervalModule, n: &IntervalModule, p: &Progression, distance: &Rational) -> String {
    let cells: Vec<(String, &str)> = p
        .segments
        .iter()
        .map(|s| (s.start.to_string(), s.class.name()))
        .collect();
    let widths: Vec<usize> = cells
        .iter()
        .map(|(start, class)| (start.chars().count() + 1).max(class.len() + 2).max(MIN_CELL))
        .collect();

    let mut ticks = String::from("ε  ");
    let mut axis = String::from("   ");
    let mut names = String::from("   ");
    for (i, ((start, class), w)) in cells.iter().zip(&widths).enumerate() {
        let _ = write!(ticks, "{start:<w$}");
        axis.push('|');
        if i + 1 == cells.len() {
            axis.push_str(&"-".repeat(w - 2));
            axis.push('>');
        } else {
            axis.push_str(&"-".repeat(w - 1));
        }
        let _ = write!(names, " {class:<0$}", w - 1);
    }

    let mut out = format!("M = {m}   N = {n}   D = {distance}\n\n");
    for line in [ticks, axis, names] {
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
