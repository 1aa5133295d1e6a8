use logint_core::harness::TableRow;

use crate::args::Format;
use crate::Result;

pub fn render(rows: &[TableRow], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(rows)? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row)?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
        Format::Md => markdown(rows),
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn markdown(rows: &[TableRow]) -> String {
    let mut s = String::from(
        "| family | m | k | r | a | integrand | expression | value | quadrature | rel_err |\n\
         |---|---|---|---|---|---|---|---|---|---|\n",
    );
    for row in rows {
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} | `{}` | `{}` | {:.15} | {} | {} |\n",
            row.family,
            opt(&row.m),
            opt(&row.k),
            opt(&row.r),
            opt(&row.a),
            row.integrand,
            row.expression,
            row.value,
            row.quadrature.map(|q| format!("{q:.15}")).unwrap_or_default(),
            row.rel_err.map(|e| format!("{e:.2e}")).unwrap_or_default(),
        ));
    }
    s
}
