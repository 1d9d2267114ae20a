use std::io::{self, Write};

use crate::commands::Output;
use crate::Format;

pub fn emit<W: Write>(out: &Output, format: Format, w: &mut W) -> io::Result<()> {
    match format {
        Format::Text => w.write_all(out.text.as_bytes()),
        Format::Json => {
            let s = out.envelope.to_json().map_err(io::Error::other)?;
            writeln!(w, "{s}")
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(w);
            for row in &out.csv {
                c.write_record(row)?;
            }
            c.flush()
        }
    }
}
