use std::fmt::Write;

use serde_json::Value as Json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// Renders one object or an array of objects. Tables and CSV take the keys
/// of the first row as columns; nested values print as compact JSON.
pub fn render(value: &Json, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Table => {
            let (header, rows) = cells(value);
            table(&header, &rows)
        }
        Format::Csv => {
            let (header, rows) = cells(value);
            let mut out = String::new();
            for line in std::iter::once(&header).chain(rows.iter()) {
                let fields: Vec<String> = line.iter().map(|c| csv_field(c)).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
            out
        }
    }
}

fn cells(value: &Json) -> (Vec<String>, Vec<Vec<String>>) {
    let rows: Vec<&Json> = match value {
        Json::Array(items) => items.iter().collect(),
        other => vec![other],
    };
    let header: Vec<String> = match rows.first() {
        Some(Json::Object(map)) => map.keys().cloned().collect(),
        Some(_) => vec!["value".into()],
        None => Vec::new(),
    };
    let body = rows
        .iter()
        .map(|row| match row {
            Json::Object(map) => header
                .iter()
                .map(|key| map.get(key).map(scalar).unwrap_or_default())
                .collect(),
            other => vec![scalar(other)],
        })
        .collect();
    (header, body)
}

pub fn scalar(v: &Json) -> String {
    match v {
        Json::Null => String::new(),
        Json::String(s) => s.clone(),
        Json::Object(map) if map.len() == 2 && map.contains_key("lo") && map.contains_key("hi") => {
            format!("[{},{}]", map["lo"], map["hi"])
        }
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Fixed-width, left-aligned columns.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let _ = write!(s, "{c:<w$}");
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header);
    line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
    for row in rows {
        line(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_quotes_nested_values() {
        let v = json!([{"a": 1, "b": [1, 2]}, {"a": {"lo": 3, "hi": 4}, "b": "x"}]);
        assert_eq!(render(&v, Format::Csv), "a,b\n1,\"[1,2]\"\n\"[3,4]\",x\n");
    }

    #[test]
    fn table_aligns_columns() {
        let v = json!({"formula": "mut-kneser", "n": 5});
        assert_eq!(
            render(&v, Format::Table),
            "formula     n\n----------  -\nmut-kneser  5\n"
        );
    }
}
