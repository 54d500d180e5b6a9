use std::fmt::Write as _;

use serde_json::json;

use exit_path::shuffle::{classify_face, collapse, exit_shuffle, flat, sharp, PrismPoint};
use exit_path::LinkedSpan;

use crate::InputError;

fn check_k(k: usize) -> Result<(), InputError> {
    if k == 0 {
        Err(InputError("--k must be at least 1".into()))
    } else {
        Ok(())
    }
}

pub fn shuffle_table(k: usize, machine: bool) -> Result<String, InputError> {
    check_k(k)?;
    let mut rows = Vec::new();
    let mut text = format!("exit shuffles S_j: [{k}] -> [1]x[{}] and collapses C_j\n", k - 1);
    for j in 1..=k {
        let s = exit_shuffle(k, j)?;
        let c = collapse(k, j)?;
        let points = s.points();
        let lower = c.lower().values().to_vec();
        let upper = c.upper().values().to_vec();
        let shown: Vec<String> = points.iter().enumerate().map(|(i, p)| format!("{i}->{p}")).collect();
        writeln!(text, "S_{j}: {}", shown.join(" ")).unwrap();
        let col = |level: usize, v: &[usize]| -> Vec<String> {
            v.iter().enumerate().map(|(i, x)| format!("{}->{x}", PrismPoint::new(level, i))).collect()
        };
        writeln!(text, "C_{j}: {} | {}", col(0, &lower).join(" "), col(1, &upper).join(" ")).unwrap();
        rows.push(json!({
            "j": j,
            "shuffle": points.iter().map(|p| [p.level, p.position]).collect::<Vec<_>>(),
            "collapse_lower": lower,
            "collapse_upper": upper,
        }));
    }
    Ok(if machine { json!({ "k": k, "rows": rows }).to_string() } else { text })
}

fn cell(r: Result<usize, exit_path::shuffle::ShuffleError>) -> String {
    r.map_or_else(|_| "-".to_string(), |v| v.to_string())
}

pub fn flat_sharp_table(k: usize, machine: bool) -> Result<String, InputError> {
    check_k(k)?;
    let header: String = (0..=k).map(|i| format!(" i={i:<2}")).collect();
    let mut text = String::new();
    let mut flat_rows = Vec::new();
    let mut sharp_rows = Vec::new();
    let mut class_rows = Vec::new();

    writeln!(text, "flat(k={k}, j, i): exit index of the i-th face ('-' where undefined)").unwrap();
    writeln!(text, "{}", format!("     {header}").trim_end()).unwrap();
    for j in 1..=k {
        let row: Vec<Option<usize>> = (0..=k).map(|i| flat(k, j, i).ok()).collect();
        let shown: String = (0..=k).map(|i| format!(" {:<4}", cell(flat(k, j, i)))).collect();
        writeln!(text, "{}", format!("j={j:<2} {shown}").trim_end()).unwrap();
        flat_rows.push(row);
    }
    writeln!(text, "\nsharp(k={k}, j, i): exit index of the i-th degeneracy").unwrap();
    writeln!(text, "{}", format!("     {header}").trim_end()).unwrap();
    for j in 1..=k {
        let row: Vec<usize> = (0..=k).map(|i| sharp(k, j, i)).collect::<Result<_, _>>()?;
        let shown: String = row.iter().map(|v| format!(" {v:<4}")).collect();
        writeln!(text, "{}", format!("j={j:<2} {shown}").trim_end()).unwrap();
        sharp_rows.push(row);
    }
    writeln!(text, "\nface classes (V vertical, L low, U upper)").unwrap();
    writeln!(text, "{}", format!("     {header}").trim_end()).unwrap();
    for j in 1..=k {
        let row: Vec<String> = (0..=k).map(|i| classify_face(k, j, i).map(|c| format!("{c:?}"))).collect::<Result<_, _>>()?;
        let shown: String = row.iter().map(|c| format!(" {:<4}", &c[..1])).collect();
        writeln!(text, "{}", format!("j={j:<2} {shown}").trim_end()).unwrap();
        class_rows.push(row);
    }
    Ok(if machine {
        json!({ "k": k, "flat": flat_rows, "sharp": sharp_rows, "classes": class_rows }).to_string()
    } else {
        text
    })
}

pub fn stats(span: &LinkedSpan, bound: usize, machine: bool) -> Result<String, InputError> {
    let ex = span.build_exit(bound)?;
    let mut rows = Vec::new();
    for k in 0..=bound {
        let low = span.lower().count_at(k);
        let exit = if k == 0 { 0 } else { span.exit_simplices(k)?.len() };
        let upper = span.upper().count_at(k);
        let total = ex.count_at(k)?;
        let generators = ex.set().generators(k).len();
        rows.push((k, total, low, exit, upper, generators));
    }
    if machine {
        let degrees: Vec<_> = rows
            .iter()
            .map(|&(k, total, low, exit, upper, generators)| {
                json!({ "k": k, "simplices": total, "low": low, "exit": exit, "upper": upper, "generators": generators })
            })
            .collect();
        return Ok(json!({ "subject": ex.set().name(), "bound": bound, "degrees": degrees }).to_string());
    }
    let mut text = format!("{} up to dimension {bound}\n", ex.set().name());
    writeln!(text, "{:>3} {:>9} {:>6} {:>6} {:>6} {:>11}", "k", "simplices", "low", "exit", "upper", "generators").unwrap();
    for (k, total, low, exit, upper, generators) in rows {
        writeln!(text, "{k:>3} {total:>9} {low:>6} {exit:>6} {upper:>6} {generators:>11}").unwrap();
    }
    Ok(text)
}
