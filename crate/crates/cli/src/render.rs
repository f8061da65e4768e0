//! ASCII grid renderer matching the reference output format byte for
//! byte: a `TRANS` header, two-digit tens labels, ruler lines before
//! every tenth row, and one '0'/'1' row per orientation with the letters
//! R, O, T marking the row axis.

use fspp::calculus::CellIndex;
use fspp::FsppRelation;

/// The grid block only: header line through the last data row, one
/// trailing newline per line.
pub fn render_grid(r: &FsppRelation) -> String {
    let g = r.granularity();
    let (m, n) = (g.m_orient(), g.n_dist());
    let mut out = String::new();

    out.push_str("          TRANS\n");

    // tens labels at every tenth distance column (one past the last
    // column included)
    let mut label = vec![b' '; 9 + n + 2];
    for k in (0..=n).step_by(10) {
        let txt = format!("{:02}", k);
        label[9 + k..9 + k + 2].copy_from_slice(txt.as_bytes());
    }
    let label: String = String::from_utf8(label).expect("ascii");
    let label = label.trim_end().to_string();
    out.push_str(&label);
    out.push('\n');

    let mut ruler = String::from("         ");
    for i in 0..=n {
        ruler.push(match i % 10 {
            0 => '|',
            5 => '.',
            _ => ' ',
        });
    }

    for o in 0..m {
        if o % 10 == 0 {
            out.push_str(&ruler);
            out.push('\n');
        }
        let marker = match o {
            1 => 'R',
            2 => 'O',
            3 => 'T',
            _ => ' ',
        };
        out.push(' ');
        out.push(marker);
        out.push(' ');
        out.push_str(&format!("{:03} : ", o));
        for d in 0..n {
            let bit = r.get_cell(CellIndex::new(d, o)).expect("cell in range");
            out.push(if bit { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Title line plus the grid block.
pub fn render_ascii(r: &FsppRelation, title: &str) -> String {
    format!(" {}\n{}", title, render_grid(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fspp::{CellIndex, Granularity};

    fn g18() -> Granularity {
        Granularity::new(18, 20, 0.10, 1.25).unwrap()
    }

    // reference output, 18 orientations and 20 distances
    pub const FIXTURE_B: &str = "          TRANS
         00        10        20
         |    .    |    .    |
   000 : 00000000000000000000
 R 001 : 00000000000000000000
 O 002 : 00000000000000000000
 T 003 : 00000000000000000000
   004 : 00000000000000010000
   005 : 00000000000000000000
   006 : 00000000000000000000
   007 : 00000000000000000000
   008 : 00000000000000000000
   009 : 00000000000000000000
         |    .    |    .    |
   010 : 00000000000000000000
   011 : 00000000000000000000
   012 : 00000000000000000000
   013 : 00000000000000000000
   014 : 00000000000000000000
   015 : 00000000000000000000
   016 : 00000000000000000000
   017 : 00000000000000000000
";

    pub const FIXTURE_SC_B: &str = "          TRANS
         00        10        20
         |    .    |    .    |
   000 : 00000000000000000000
 R 001 : 00000000000000000000
 O 002 : 00000000000000000000
 T 003 : 00000000000000000000
   004 : 00000000000000000000
   005 : 00000000000000000000
   006 : 00000000000000000000
   007 : 00000000000000000000
   008 : 00000000000000000000
   009 : 00000000000000010000
         |    .    |    .    |
   010 : 00000000000000010000
   011 : 00000000000000010000
   012 : 00000000000000010000
   013 : 00000000000000010000
   014 : 00000000000000000000
   015 : 00000000000000000000
   016 : 00000000000000000000
   017 : 00000000000000000000
";

    #[test]
    fn fixture_b_is_byte_exact() {
        let gr = g18();
        let b = FsppRelation::from_cells(&gr, &[CellIndex::new(15, 4)]).unwrap();
        assert_eq!(render_grid(&b), FIXTURE_B);
    }

    #[test]
    fn sc_fixture_is_byte_exact() {
        let gr = g18();
        let b = FsppRelation::from_cells(&gr, &[CellIndex::new(15, 4)]).unwrap();
        let sc = fspp::unary(fspp::UnaryOp::Sc, &b);
        assert_eq!(render_grid(&sc), FIXTURE_SC_B);
    }

    #[test]
    fn empty_relation_renders_zero_rows() {
        let gr = g18();
        let txt = render_grid(&FsppRelation::empty(&gr));
        for line in txt.lines().filter(|l| l.contains(" : ")) {
            let bits = line.split(" : ").nth(1).unwrap();
            assert_eq!(bits, "0".repeat(20));
        }
    }

    #[test]
    fn title_line_has_single_leading_space() {
        let gr = g18();
        let txt = render_ascii(&FsppRelation::empty(&gr), "FSPP b");
        assert!(txt.starts_with(" FSPP b\n          TRANS\n"));
    }

    #[test]
    fn small_grid_shapes() {
        let gr = Granularity::new(8, 5, 0.10, 1.25).unwrap();
        let txt = render_grid(&FsppRelation::empty(&gr));
        let lines: Vec<&str> = txt.lines().collect();
        assert_eq!(lines[0], "          TRANS");
        assert_eq!(lines[1], "         00");
        assert_eq!(lines[2], "         |    .");
        assert_eq!(lines[3], "   000 : 00000");
        assert_eq!(lines.len(), 3 + 8);
    }
}
