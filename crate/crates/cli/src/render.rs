//! JSON, CSV and plain-text rendering of command output.

use std::io::{self, Write};

use serde::Serialize;

use crate::{Format, Output};
use hyperchiral::chirality::Verdict;

type Res = io::Result<()>;

pub fn write(out: &Output, format: Format, w: &mut dyn Write) -> Res {
    match format {
        Format::Json => json(out, w),
        Format::Csv => csv_rows(out, w),
        Format::Table => table(out, w),
    }
}

fn to_json<T: Serialize>(v: &T, w: &mut dyn Write) -> Res {
    serde_json::to_writer_pretty(&mut *w, v)?;
    writeln!(w)
}

fn json(out: &Output, w: &mut dyn Write) -> Res {
    match out {
        Output::Group(r) => to_json(r, w),
        Output::Delta(r) => to_json(r, w),
        Output::Census(r) => to_json(r, w),
        Output::Strong(r) => to_json(r, w),
        Output::Lemma(r) => to_json(r, w),
        Output::Claims(c) => to_json(c, w),
    }
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

fn csv_rows(out: &Output, w: &mut dyn Write) -> Res {
    let mut c = csv::Writer::from_writer(w);
    match out {
        Output::Group(r) => {
            c.write_record(["group", "order", "n_classes", "aut_order", "inner", "outer"])?;
            let aut = r.aut.as_ref();
            c.write_record([
                r.group.clone(),
                r.order.to_string(),
                r.n_classes.to_string(),
                aut.map(|a| a.order.to_string()).unwrap_or_default(),
                aut.map(|a| a.inner.to_string()).unwrap_or_default(),
                aut.map(|a| a.outer.to_string()).unwrap_or_default(),
            ])?;
        }
        Output::Delta(r) => {
            c.write_record([
                "group",
                "order",
                "aut_order",
                "n_generating_pairs",
                "n_symmetric_pairs",
                "delta",
                "exact",
                "n_samples",
                "seed",
                "wilson_low",
                "wilson_high",
            ])?;
            let s = r.sample.as_ref();
            c.write_record([
                r.group.clone(),
                r.order.to_string(),
                r.aut_order.to_string(),
                r.n_generating_pairs.to_string(),
                r.n_symmetric_pairs.to_string(),
                format!("{}/{}", r.delta.numer(), r.delta.denom()),
                r.exact.to_string(),
                s.map(|s| s.n_samples.to_string()).unwrap_or_default(),
                s.map(|s| s.seed.to_string()).unwrap_or_default(),
                s.map(|s| format!("{:.6}", s.wilson_low)).unwrap_or_default(),
                s.map(|s| format!("{:.6}", s.wilson_high)).unwrap_or_default(),
            ])?;
        }
        Output::Census(r) => {
            c.write_record([
                "x",
                "y",
                "type_x",
                "type_y",
                "type_xy",
                "reflexible",
                "mirror_x",
                "mirror_y",
            ])?;
            for k in &r.classes {
                c.write_record([
                    k.rep[0].to_string(),
                    k.rep[1].to_string(),
                    k.type_triple[0].to_string(),
                    k.type_triple[1].to_string(),
                    k.type_triple[2].to_string(),
                    k.reflexible.to_string(),
                    k.mirror[0].to_string(),
                    k.mirror[1].to_string(),
                ])?;
            }
        }
        Output::Strong(r) => {
            c.write_record([
                "group",
                "order",
                "aut_order",
                "strongly_symmetric",
                "witness_x",
                "witness_y",
            ])?;
            let (x, y) = match r.verdict {
                Verdict::NotStronglySymmetric { witness } => (witness.x.to_string(), witness.y.to_string()),
                Verdict::StronglySymmetric => (String::new(), String::new()),
            };
            c.write_record([
                r.group.clone(),
                r.order.to_string(),
                r.aut_order.to_string(),
                r.verdict.is_strongly_symmetric().to_string(),
                x,
                y,
            ])?;
        }
        Output::Lemma(r) => {
            c.write_record(["n", "q", "solutions", "all_in_singer", "counterexamples"])?;
            c.write_record([
                r.n.to_string(),
                r.q.to_string(),
                r.solutions.to_string(),
                r.all_in_singer.to_string(),
                r.counterexamples.len().to_string(),
            ])?;
        }
        Output::Claims(claims) => {
            c.write_record(["claim_id", "params", "expected", "computed", "pass"])?;
            for k in claims {
                c.write_record([
                    k.claim_id.clone(),
                    compact(&k.params),
                    compact(&k.expected),
                    compact(&k.computed),
                    k.pass.to_string(),
                ])?;
            }
        }
    }
    c.flush()
}

fn table(out: &Output, w: &mut dyn Write) -> Res {
    match out {
        Output::Group(r) => {
            writeln!(w, "group       {}", r.group)?;
            writeln!(w, "order       {}", r.order)?;
            writeln!(w, "classes     {}", r.n_classes)?;
            writeln!(w, "class sizes {:?}", r.class_sizes)?;
            for (g, o) in r.generators.iter().zip(&r.generator_orders) {
                writeln!(w, "generator   {g} (order {o})")?;
            }
            if let Some(a) = &r.aut {
                writeln!(
                    w,
                    "|Aut|       {} (inner {}, outer {})",
                    a.order, a.inner, a.outer
                )?;
            }
        }
        Output::Delta(r) => {
            writeln!(
                w,
                "group             {} (order {}, |Aut| {})",
                r.group, r.order, r.aut_order
            )?;
            writeln!(w, "generating pairs  {}", r.n_generating_pairs)?;
            writeln!(w, "symmetric pairs   {}", r.n_symmetric_pairs)?;
            writeln!(w, "delta             {}/{}", r.delta.numer(), r.delta.denom())?;
            if let Some(s) = &r.sample {
                writeln!(
                    w,
                    "estimate          {:.4} from {} samples (seed {}), 95% interval [{:.4}, {:.4}]",
                    s.estimate, s.n_samples, s.seed, s.wilson_low, s.wilson_high
                )?;
            }
        }
        Output::Census(r) => {
            writeln!(
                w,
                "group             {} (order {}, |Aut| {})",
                r.group, r.order, r.aut_order
            )?;
            writeln!(w, "generating pairs  {}", r.n_generating_pairs)?;
            writeln!(w, "hypermaps         {}", r.n_orbits)?;
            writeln!(w, "reflexible        {}", r.n_reflexible)?;
            writeln!(w, "chiral            {}", r.n_chiral)?;
            let d = r.delta();
            writeln!(w, "delta             {}/{}", d.numer(), d.denom())?;
        }
        Output::Strong(r) => {
            writeln!(
                w,
                "group    {} (order {}, |Aut| {})",
                r.group, r.order, r.aut_order
            )?;
            match (&r.verdict, &r.witness_elements) {
                (Verdict::NotStronglySymmetric { witness }, Some([x, y])) => {
                    writeln!(w, "verdict  not strongly symmetric")?;
                    writeln!(w, "witness  x = {x} (#{})", witness.x)?;
                    writeln!(w, "         y = {y} (#{})", witness.y)?;
                }
                _ => writeln!(w, "verdict  strongly symmetric")?,
            }
        }
        Output::Lemma(r) => {
            writeln!(w, "n = {}, q = {}", r.n, r.q)?;
            writeln!(
                w,
                "solutions       {} (expected {})",
                r.solutions,
                r.q.pow(r.n as u32) - 1
            )?;
            writeln!(w, "all in Singer   {}", r.all_in_singer)?;
            writeln!(w, "counterexamples {}", r.counterexamples.len())?;
        }
        Output::Claims(claims) => {
            let width = claims.iter().map(|c| c.claim_id.len()).max().unwrap_or(0);
            for c in claims {
                writeln!(
                    w,
                    "{}  {:width$}  {:10}  expected {}  computed {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.claim_id,
                    compact(&c.params),
                    compact(&c.expected),
                    compact(&c.computed),
                )?;
            }
            let failed = claims.iter().filter(|c| !c.pass).count();
            writeln!(
                w,
                "{} claims, {} passed, {} failed",
                claims.len(),
                claims.len() - failed,
                failed
            )?;
        }
    }
    Ok(())
}
