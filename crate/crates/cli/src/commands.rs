//! One function per subcommand. Each returns the report body; input
//! problems surface as [`InputError`], check outcomes as statuses.

use hecke_core::gram::{
    block_decompose, build_gram, closed_form_check, degeneracy_factors, gram_det, scan, Planting,
    ScanConfig, ScanReport,
};
use hecke_core::pairing::{act, well_definedness_check, LinComb, Pairing, TensorVector};
use hecke_core::poincare::{
    clebsch_gordan_dim_check, series_product_check, sym_dims, DimTable, Step,
};
use hecke_core::qdet::{
    centrality_criterion, compute_c, det_counit_check, det_pairing_check, ideal_membership_check,
    CSign, IDEAL_MEMBERSHIP_MAX_N,
};
use hecke_core::scalar::FieldElement;
use hecke_core::tensorop::{hecke_check, ybe_check, MultiIndex};
use hecke_core::tlhecke::{tl_projectors, tl_relations_check, TLInstance};
use serde_json::{json, Map, Value};

use crate::instance::echo;
use crate::report::{check, fail, pass, skipped, status, with};
use crate::InputError;

type Body = Map<String, Value>;

fn body(v: Value) -> Body {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("bodies are objects"),
    }
}

fn core(e: hecke_core::Error) -> InputError {
    InputError(e.to_string())
}

/// An error inside a verification routine is reported, never dropped.
fn errored(e: hecke_core::Error) -> Value {
    json!({"status": "error", "reason": e.to_string()})
}

fn guard(f: impl FnOnce() -> hecke_core::Result<Value>) -> Value {
    f().unwrap_or_else(errored)
}

pub fn parse_scalar(inst: &TLInstance, src: &str, what: &str) -> Result<FieldElement, InputError> {
    inst.field()
        .parse(src)
        .map_err(|e| InputError(format!("{what} {src:?}: {e}")))
}

fn parse_lc(inst: &TLInstance, src: &str) -> Result<LinComb, InputError> {
    LinComb::parse(inst.field(), inst.n(), src).map_err(|e| InputError(format!("{src:?}: {e}")))
}

pub fn construct(inst: &TLInstance) -> Body {
    body(json!({ "instance": echo(inst) }))
}

pub struct VerifyOptions {
    pub tl_m: usize,
    pub word_degree: usize,
    pub lmax: usize,
    pub imax: u32,
}

fn constraints(inst: &TLInstance) -> Value {
    // TLInstance::new has already enforced these; they are listed so the
    // report says what was checked.
    let mut checked = vec!["sum of z_i = 1+q", "z_i z_(n+1-i) = q"];
    if inst.n() % 2 == 1 {
        checked.push("middle z = m(1+q)");
    }
    with(pass(), json!({ "checked": checked }))
}

fn c_value(inst: &TLInstance, central: bool) -> (Value, Option<FieldElement>) {
    if !central {
        return (skipped("M is not scalar, so c is undefined"), None);
    }
    match compute_c(inst, CSign::Principal) {
        Ok(c) => (
            json!({"status": "computed", "value": c.to_string()}),
            Some(c),
        ),
        Err(e) => (skipped(e), None),
    }
}

fn centrality(inst: &TLInstance, criterion: bool) -> Value {
    let condition = inst.scalar_m_condition_check().passed();
    let ideal = if inst.n() > IDEAL_MEMBERSHIP_MAX_N {
        None
    } else {
        match ideal_membership_check(inst) {
            Ok(c) => Some(c.passed()),
            Err(e) => return errored(e),
        }
    };
    let agree = criterion == condition && ideal.is_none_or(|x| x == criterion);
    let mut v = status(agree, || {
        format!("criterion {criterion}, v-condition {condition}, ideal membership {ideal:?}")
    });
    let ideal_json = match ideal {
        Some(b) => json!(b),
        None => skipped(format!("n > {IDEAL_MEMBERSHIP_MAX_N}")),
    };
    v = with(
        v,
        json!({"criterion": criterion, "v_condition": condition, "ideal_membership": ideal_json}),
    );
    v
}

fn poincare_checks(inst: &TLInstance, lmax: usize) -> hecke_core::Result<Value> {
    let t = DimTable::compute(&inst.build_s(), inst.q(), lmax)?;
    Ok(json!({
        "lmax": lmax,
        "dims_plus": dims(&t.dims_plus),
        "dims_minus": dims(&t.dims_minus),
        "checks": table_checks(&t),
    }))
}

/// Numbers while they fit JSON integers, strings beyond.
fn dims(xs: &[u128]) -> Vec<Value> {
    xs.iter()
        .map(|&d| u64::try_from(d).map_or_else(|_| json!(d.to_string()), |x| json!(x)))
        .collect()
}

fn table_checks(t: &DimTable) -> Value {
    let n = t.n;
    let mut minus = vec![1, n as u128, 1];
    minus.resize(t.lmax + 1, 0);
    minus.truncate(t.lmax + 1);
    let sym = sym_dims(n as u64, t.lmax as u32);
    json!({
        "minus_is_1_n_1": status(t.dims_minus == minus, || format!("{:?}", t.dims_minus)),
        "series_product": match series_product_check(t).witness() {
            None => pass(),
            Some((l, v)) => fail(format!("coefficient {v} at degree {l}")),
        },
        "plus_matches_recursion": match sym {
            Some(s) => status(t.dims_plus == s, || format!("{:?} vs {s:?}", t.dims_plus)),
            None => skipped("recursion overflows u128"),
        },
    })
}

fn product_rule(n: usize, imax: u32) -> Value {
    guard(|| {
        let c = clebsch_gordan_dim_check(n as u64, imax, Step::Parity)?;
        Ok(with(check(&c), json!({ "imax": imax, "step": 2 })))
    })
}

pub fn verify(inst: &TLInstance, opts: &VerifyOptions) -> Result<Body, InputError> {
    if opts.tl_m < 2 {
        return Err(InputError(format!(
            "--tl-m {} must be at least 2",
            opts.tl_m
        )));
    }
    let s = inst.build_s();
    let q = inst.q();
    let n = inst.n();
    let one = inst.field().one();
    let plain = Pairing::new(inst, one.clone()).map_err(core)?;

    let ybe = guard(|| Ok(check(&ybe_check(&s)?)));
    let hecke = guard(|| Ok(check(&hecke_check(&s, q)?)));
    let tl = guard(|| {
        for m in 2..=opts.tl_m {
            let projs = tl_projectors(&s, q, m)?;
            if let Some(w) = tl_relations_check(&projs, inst.lambda())?.witness() {
                return Ok(with(
                    fail(format!("m = {m}: {w}")),
                    json!({ "max_m": opts.tl_m }),
                ));
            }
        }
        Ok(with(pass(), json!({ "max_m": opts.tl_m })))
    });
    let well_defined = if n <= 3 {
        guard(|| {
            let c = well_definedness_check(&plain, opts.word_degree)?;
            Ok(with(
                check(&c),
                json!({ "max_word_length": opts.word_degree }),
            ))
        })
    } else {
        skipped("relator pairing is checked for n <= 3 only")
    };

    let criterion = match centrality_criterion(inst) {
        Ok(c) => c.is_some(),
        Err(e) => return Err(core(e)),
    };
    let (c_json, c) = c_value(inst, criterion);
    let det_pairing = guard(|| Ok(check(&det_pairing_check(inst, &plain)?)));
    let det_counit = match &c {
        Some(c) => guard(|| {
            let p = Pairing::new(inst, c.clone())?;
            let r = det_counit_check(inst, &p, opts.word_degree)?;
            Ok(with(
                check(&r),
                json!({ "max_word_length": opts.word_degree }),
            ))
        }),
        None => skipped("needs c, which is unavailable"),
    };

    let (gram_value, closed_form) = match build_gram(inst, &one).and_then(|g| gram_det(&g)) {
        Ok(d) => (
            json!(d.to_string()),
            guard(|| {
                let r = closed_form_check(inst)?;
                Ok(with(
                    status(r.passed(), || "see sub-identities".into()),
                    json!({
                        "squared": r.squared_ok,
                        "single_product": r.singles_ok,
                        "pair_product": r.pairs_ok,
                    }),
                ))
            }),
        ),
        Err(e) => (json!(null), errored(e)),
    };
    let factors: Vec<String> = degeneracy_factors(inst)
        .iter()
        .map(|f| f.kind.to_string())
        .collect();

    let poincare = match poincare_checks(inst, opts.lmax) {
        Ok(v) => v,
        Err(e @ (hecke_core::Error::SizeGuard(_) | hecke_core::Error::Unsupported(_))) => {
            skipped(e)
        }
        Err(e) => errored(e),
    };

    Ok(body(json!({
        "instance": echo(inst),
        "seed": null,
        "scalar_m": criterion,
        "m": inst.m().to_string(),
        "c": c_json,
        "gram_det": gram_value,
        "degeneracy_factors": factors,
        "checks": {
            "ybe": ybe,
            "hecke": hecke,
            "tl_relations": tl,
            "constraints": constraints(inst),
            "well_definedness": well_defined,
            "centrality": centrality(inst, criterion),
            "det_pairing": det_pairing,
            "det_counit": det_counit,
            "closed_form": closed_form,
            "poincare": poincare,
            "product_rule": product_rule(n, opts.imax),
        },
    })))
}

pub fn pair(inst: &TLInstance, a: &str, b: &str, c: &str) -> Result<Body, InputError> {
    let c = parse_scalar(inst, c, "--c")?;
    let (la, lb) = (parse_lc(inst, a)?, parse_lc(inst, b)?);
    let p = Pairing::new(inst, c.clone()).map_err(core)?;
    let value = p.pair(&la, &lb).map_err(core)?;
    Ok(body(json!({
        "left": la.to_string(),
        "right": lb.to_string(),
        "c": c.to_string(),
        "value": value.to_string(),
    })))
}

pub fn parse_multi_index(n: usize, src: &str) -> Result<MultiIndex, InputError> {
    let idx = src
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                _ => Err(InputError(format!("basis index {t:?} is not in 1..={n}"))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultiIndex(idx))
}

pub fn act_cmd(inst: &TLInstance, a: &str, basis: &str, c: &str) -> Result<Body, InputError> {
    let c = parse_scalar(inst, c, "--c")?;
    let la = parse_lc(inst, a)?;
    let k = parse_multi_index(inst.n(), basis)?;
    let p = Pairing::new(inst, c.clone()).map_err(core)?;
    let xi = TensorVector::basis(inst.field(), inst.n(), &k);
    let out = act(&p, &la, &xi).map_err(core)?;
    let components: Map<String, Value> = out
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(f, x)| {
            let m = MultiIndex::from_flat(inst.n(), k.len(), f);
            (format!("x{m}"), json!(x.to_string()))
        })
        .collect();
    Ok(body(json!({
        "element": la.to_string(),
        "basis": format!("x{k}"),
        "c": c.to_string(),
        "vector": out.to_string(),
        "components": components,
    })))
}

pub struct GramOptions<'a> {
    pub c: &'a str,
    pub dump_matrix: bool,
    pub closed_form: bool,
}

pub fn gram(inst: &TLInstance, opts: &GramOptions<'_>) -> Result<Body, InputError> {
    let c = parse_scalar(inst, opts.c, "--c")?;
    let g = build_gram(inst, &c).map_err(core)?;
    let det = gram_det(&g).map_err(core)?;
    let dec = block_decompose(&g).map_err(core)?;
    let n = inst.n();
    let label = |(i, j): (usize, usize)| format!("t[{},{}]", i + 1, j + 1);
    let mut out = json!({
        "n": n,
        "c": c.to_string(),
        "det": det.to_string(),
        "blocks": {
            "single": dec.singles().count(),
            "pair": dec.pairs().count(),
        },
        "degeneracy_factors": degeneracy_factors(inst)
            .iter()
            .map(|f| f.kind.to_string())
            .collect::<Vec<_>>(),
    });
    if opts.dump_matrix {
        let m = g.matrix();
        let rows: Vec<Vec<String>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|k| m.get(r, k).to_string()).collect())
            .collect();
        let labels: Vec<String> = (0..n * n).map(|k| label(g.label(k))).collect();
        out = with(out, json!({"matrix": {"labels": labels, "rows": rows}}));
    }
    if opts.closed_form {
        let r = closed_form_check(inst).map_err(core)?;
        out = with(
            out,
            json!({"closed_form": with(
                status(r.passed(), || "see sub-identities".into()),
                json!({
                    "det_squared": r.det_sq.to_string(),
                    "closed_form_squared": r.closed_form_sq.to_string(),
                    "squared": r.squared_ok,
                    "single_product": r.singles_ok,
                    "pair_product": r.pairs_ok,
                }),
            )}),
        );
    }
    Ok(body(out))
}

pub fn scan_cmd(cfg: &ScanConfig) -> Result<Body, InputError> {
    let r: ScanReport = scan(cfg).map_err(core)?;
    let flagged: Vec<Value> = r
        .flagged
        .iter()
        .map(|s| {
            json!({
                "index": s.index,
                "sigma": [s.sigma.0, s.sigma.1],
                "branch": s.branch.to_string(),
                "absdet": s.absdet,
                "threshold": s.threshold,
                "factors": s.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let planted = cfg.planting == Planting::Degenerate;
    let outcome = if planted {
        status(r.degenerate_count == cfg.samples, || {
            format!(
                "{} of {} planted samples flagged",
                r.degenerate_count, cfg.samples
            )
        })
    } else {
        status(r.degenerate_count == 0, || {
            format!("{} samples below tolerance", r.degenerate_count)
        })
    };
    Ok(body(json!({
        "n": cfg.n,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "tol": cfg.tol,
        "sigma": cfg.sigma.map(|(a, b)| vec![a, b]),
        "planted": planted,
        "min_absdet": r.min_absdet,
        "max_absdet": r.max_absdet,
        "degenerate_count": r.degenerate_count,
        "flagged": flagged,
        "result": outcome,
    })))
}

pub fn poincare(inst: &TLInstance, lmax: usize, imax: Option<u32>) -> Result<Body, InputError> {
    let mut v = poincare_checks(inst, lmax).map_err(core)?;
    if let Some(imax) = imax {
        v = with(v, json!({ "product_rule": product_rule(inst.n(), imax) }));
    }
    Ok(body(v))
}
