use std::fmt::Write;

use curvegr::criteria::{BFVerdict, CIVerdict, SweepReport};
use curvegr::AnalysisReport;

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn analysis_table(label: &str, rep: &AnalysisReport) -> String {
    let mut out = String::new();
    let ring = &rep.ring;
    let p = &rep.invariants;
    let _ = writeln!(out, "ring {label} over {}", ring.field);
    let _ = writeln!(out, "  generators: {}", join(&ring.generators));
    let _ = writeln!(
        out,
        "  S = <{}>  e={}  nu={}  conductor={}  F={}  r={}  N={}",
        join(&ring.semigroup),
        ring.e,
        ring.nu,
        ring.conductor,
        ring.frobenius,
        ring.r,
        ring.precision
    );
    let _ = writeln!(out, "  reduction x = {}", p.reduction);
    let _ = writeln!(out, "classes:");
    for j in 0..p.e as usize {
        let eps = match &p.eps_by_class {
            Some(eps) => format!(" eps={}", eps[j]),
            None => String::new(),
        };
        let _ = writeln!(
            out,
            "  j={j}: w={} b={} c={} a={}{eps}",
            p.w[j], p.b[j], p.c[j], p.a[j]
        );
    }
    if p.eps_by_class.is_none() {
        let _ = writeln!(out, "  eps (multiset): {}", join(&p.eps));
    }
    let _ = writeln!(out, "Ap(v(m^i)):");
    for (i, ap) in p.power_apery.iter().enumerate() {
        let _ = writeln!(out, "  i={i}: {}", join(ap));
    }
    let _ = writeln!(out, "Hilb_R: {}, {}, ...", join(&p.hilb_r), p.e);
    let _ = writeln!(out, "(1-z)Hilb_R: {}", join(&rep.cm.via_hilbert.difference));
    let _ = writeln!(out, "Hilb_R/xR: {}", join(&rep.cm.via_hilbert.hilb_mod));

    let ed = &rep.essential_divisibility;
    match &ed.witness {
        None => {
            let _ = writeln!(out, "essential divisibility: {}", yes(ed.holds));
        }
        Some(w) => {
            let _ = writeln!(
                out,
                "essential divisibility: no (i={} u={} j={})",
                w.i, w.value, w.class
            );
        }
    }

    let bf = &rep.bf;
    let verdict = match bf.verdict {
        BFVerdict::Holds => "holds",
        BFVerdict::FailsForWitness => "fails for this witness",
        BFVerdict::NoWitnessWithinBudget => "no witness within budget",
    };
    let _ = writeln!(
        out,
        "BF: {verdict} (method {:?}, x = {}, {} bases, {} reductions)",
        bf.method, bf.reduction, bf.bases_tried, bf.reductions_tried
    );
    for (j, f) in bf.basis.iter().enumerate() {
        let _ = writeln!(out, "  f_{j} = {f}");
    }
    if let Some(w) = &bf.witness {
        let _ = writeln!(
            out,
            "  first failure: i={} j={} h={} value={} ({} failures)",
            w.i,
            w.class,
            w.h,
            w.value,
            bf.failures.len()
        );
    }

    let cm = &rep.cm;
    let ab = match &cm.via_ab {
        Some(ab) if ab.cm => "yes".to_string(),
        Some(ab) => format!("no (j in {})", join(&ab.failing_classes)),
        None => "not applicable".to_string(),
    };
    let _ = writeln!(
        out,
        "CM: {}  [hilbert {}, a=b {}, c=eps {} ({:?}), consistent {}]",
        yes(cm.cm),
        yes(cm.via_hilbert.cm),
        ab,
        yes(cm.via_cz.cm),
        cm.via_cz.comparison,
        yes(cm.consistent)
    );

    let ci = &rep.ci;
    let verdict = match ci.verdict {
        CIVerdict::Ci => "CI",
        CIVerdict::NotCi => "not CI",
        CIVerdict::Unknown => "unknown",
    };
    let case = match &ci.family {
        Some(f) => {
            let r = &f.representation;
            format!(
                ", case {} (n,a,b,n1,n2)=({},{},{},{},{})",
                f.tag, r.n, r.a, r.b, r.n1, r.n2
            )
        }
        None => match ci.classification.as_ref().and_then(|c| c.primary) {
            Some(r) => format!(
                ", case {} (n,a,b,n1,n2)=({},{},{},{},{})",
                r.case.tag(),
                r.n,
                r.a,
                r.b,
                r.n1,
                r.n2
            ),
            None => String::new(),
        },
    };
    let _ = writeln!(out, "gr(R): {verdict} via {:?}{case}", ci.route);
    if let Some(d) = &rep.checks.descent {
        let _ = writeln!(
            out,
            "descent basis: {}{}",
            if d.certified {
                "certifies BF"
            } else {
                "anomaly"
            },
            d.anomaly
                .as_ref()
                .map(|a| format!(" ({a})"))
                .unwrap_or_default()
        );
    }
    out
}

pub fn sweep_table(rep: &SweepReport) -> String {
    let mut out = String::new();
    let s = &rep.summary;
    let _ = writeln!(
        out,
        "sweep over {}: {} instances, {} errors, {} BF unverified; candidates Q1={} Q2={} Q3={}",
        rep.field, s.instances, s.errors, s.bf_unverified, s.q1, s.q2, s.q3
    );
    for inst in &rep.instances {
        if let Some(e) = &inst.error {
            let _ = writeln!(out, "  {}: error: {e}", inst.label);
            continue;
        }
        if inst.candidates.is_empty() && inst.note.is_none() {
            continue;
        }
        let qs: Vec<String> = inst.candidates.iter().map(|q| format!("{q:?}")).collect();
        let _ = writeln!(
            out,
            "  {}: candidates [{}]{}",
            inst.label,
            qs.join(", "),
            inst.note
                .as_ref()
                .map(|n| format!("; {n}"))
                .unwrap_or_default()
        );
    }
    out
}
