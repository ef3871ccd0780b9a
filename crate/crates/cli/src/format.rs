//! Deterministic number and CSV formatting.

/// Twelve significant digits, shortest of plain or scientific notation
/// (the C `%.12g` rules).
pub fn g12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim(&format!("{:.*}", decimals, x)).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exp.abs())
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Empty cell for absent values.
pub fn cell(x: Option<f64>) -> String {
    x.map(g12).unwrap_or_default()
}

/// CSV text with LF line endings.
pub struct Table {
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    /// New table with a header row.
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Table { writer }
    }

    /// Appends a row.
    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(cells).expect("in-memory write");
    }

    /// The finished text.
    pub fn finish(self) -> String {
        String::from_utf8(self.writer.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(g12(4.524937810560445), "4.52493781056");
        assert_eq!(g12(25.0), "25");
        assert_eq!(g12(-0.025), "-0.025");
        assert_eq!(g12(1.5e-7), "1.5e-07");
        assert_eq!(g12(0.0001), "0.0001");
        assert_eq!(g12(123456789012345.0), "1.23456789012e+14");
        assert_eq!(g12(9.9999999999995), "10");
        assert_eq!(g12(1e-300), "1e-300");
    }

    #[test]
    fn table_lines() {
        let mut t = Table::new(&["a", "b"]);
        t.row(["1", ""]);
        assert_eq!(t.finish(), "a,b\n1,\n");
    }
}
