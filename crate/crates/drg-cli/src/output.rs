//! JSON-line emission and the aligned-text rendering behind `--pretty`.

use serde_json::Value;

/// Prints a value as one compact JSON line, or as aligned text.
pub fn emit(value: &Value, pretty: bool) {
    if pretty {
        let mut out = String::new();
        render(value, 0, &mut out);
        print!("{out}");
    } else {
        println!("{}", serde_json::to_string(value).expect("serializable"));
    }
}

fn scalar(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !matches!(i, Value::Array(_) | Value::Object(_))) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, val) in map {
                match scalar(val) {
                    Some(s) => out.push_str(&format!("{pad}{key:<28} {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render(val, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            if let Some(table) = table_of_objects(items, &pad) {
                out.push_str(&table);
            } else {
                for item in items {
                    match scalar(item) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            render(item, indent + 1, out);
                        }
                    }
                }
            }
        }
        other => {
            if let Some(s) = scalar(other) {
                out.push_str(&format!("{pad}{s}\n"));
            }
        }
    }
}

/// Aligned table for homogeneous arrays of flat objects.
fn table_of_objects(items: &[Value], pad: &str) -> Option<String> {
    if items.is_empty() {
        return Some(format!("{pad}(none)\n"));
    }
    let mut columns: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();
    for item in items {
        let obj = item.as_object()?;
        let mut row = vec![String::new(); columns.len()];
        for (key, val) in obj {
            let cell = scalar(val)?;
            match columns.iter().position(|c| c == key) {
                Some(i) => row[i] = cell,
                None => {
                    columns.push(key.clone());
                    for r in &mut rows {
                        r.push(String::new());
                    }
                    row.push(cell);
                }
            }
        }
        rows.push(row);
    }
    let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{:<w$}", c, w = widths[i]))
        .collect();
    out.push_str(&format!("{pad}{}\n", header.join("  ")));
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<w$}", c, w = widths[i]))
            .collect();
        out.push_str(&format!("{pad}{}\n", cells.join("  ")));
    }
    Some(out)
}
