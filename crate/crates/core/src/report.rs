//! Verification checks over a built [`Context`] and the report they produce.
//!
//! Every check is exact. Sweeps over subgroups run on a private thread
//! pool and are collected in subgroup order, so the report does not depend
//! on the degree of parallelism. Wall-clock timings are deliberately kept
//! out of the report body.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cohomology::{
    coboundary1, cocycle_class_order, h1_invariants, is_cocycle1, is_cocycle2, solve_coboundary,
};
use crate::construction::{BuildOptions, Context, OmegaVariant};
use crate::degeneracy::{degeneracy_witness_in, is_degenerate_matrix, noncyclic_pairs, PhiPairing, WitnessResult};
use crate::group::{all_subgroups, Subgroup};
use crate::int::Int;
use crate::linalg::{FinAbInvariants, RowSpan};
use crate::matrix::IntMatrix;
use crate::serial::{canonical_json, ContextSnapshot};

pub const REPORT_FORMAT: &str = "crossprod-report/1";

/// Check ids in report order, with one-line titles.
pub const CHECKS: &[(&str, &str)] = &[
    ("context", "construction invariants and snapshot round trip"),
    ("a2-presentation", "u, b1, b2 generate A2(G12) and the residue map is well defined"),
    ("commutator-residue", "residue of the commutator element is the determinant mod p"),
    ("v-residue", "v_H has zero residue and coboundary |H12|*c12 on the family"),
    ("family-cocycles", "f_H are cocycles with I[G] part |res w|*(h-1) and split in M"),
    ("h1-cyclic", "H1(H, M_w) is cyclic of order |H| / |res w|"),
    ("class-order", "|res w| = max(|H12|, |H3|, |H4|)"),
    ("h1-table", "H1(H, M_w) = Z/(|H| / max(|H12|, |H3|, |H4|)) for every subgroup"),
    ("h1-trivial", "H1(K, M) = 0 for every subgroup"),
    ("fixed-shape", "I[G] parts of M^G34 lie in N34*Z[G12] + p*Z[G]"),
    ("residue-extension", "the residue map on M^G34 kills (s_j - 1)M^G34 and extends the one on A2"),
    ("non-degenerate", "u12 is not in (s1-1)M^G34 + (s2-1)M^G34, and its residue is 1"),
    ("exponent-table", "class order of (i+1)c12 - i*c3 - i*c4"),
    ("degeneracy-scan", "commutator pairing: full scan, single-pair shortcut, bimultiplicativity"),
    ("control", "control context with w = -c3 - c4 (informational)"),
];

pub fn check_ids() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(id, _)| *id)
}

pub fn is_check_id(id: &str) -> bool {
    check_ids().any(|c| c == id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded, not asserted.
    Info,
}

impl Status {
    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub title: String,
    pub status: Status,
    pub summary: String,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    pub p: u32,
    pub options: BuildOptions,
    pub fingerprint: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(ctx: &Context, fingerprint: String, checks: Vec<CheckRecord>) -> Report {
        let passed = checks.iter().all(|c| c.status != Status::Fail);
        Report {
            format: REPORT_FORMAT.to_string(),
            p: ctx.p(),
            options: ctx.options(),
            fingerprint,
            passed,
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Verification report\n\n");
        out.push_str(&format!("- p: {}\n", self.p));
        out.push_str(&format!(
            "- options: omega = {}, multiset family = {}, alternate u12 sign = {}\n",
            serde_json::to_value(self.options.omega).expect("serializable").as_str().unwrap_or("?"),
            self.options.multiset_family,
            self.options.alternate_u_sign
        ));
        out.push_str(&format!("- context fingerprint: `{}`\n", self.fingerprint));
        out.push_str(&format!("- overall: {}\n\n", if self.passed { "PASS" } else { "FAIL" }));
        out.push_str("| check | status | summary |\n|---|---|---|\n");
        for c in &self.checks {
            out.push_str(&format!("| {} | {} | {} |\n", c.id, c.status.label(), escape(&c.summary)));
        }
        for c in &self.checks {
            out.push_str(&format!("\n## {} — {}\n\n{}: {}\n", c.id, c.title, c.status.label(), c.summary));
            render_data(&mut out, &c.data);
        }
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Scalars become bullets, arrays of objects become tables.
fn render_data(out: &mut String, data: &Value) {
    let Value::Object(map) = data else { return };
    let mut tables = Vec::new();
    let mut bullets = String::new();
    for (k, v) in map {
        match v {
            Value::Array(items) if items.first().is_some_and(Value::is_object) => tables.push((k, items)),
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect();
                bullets.push_str(&format!("- {k}: {}\n", parts.join(", ")));
            }
            Value::Object(_) => bullets.push_str(&format!("- {k}: `{v}`\n")),
            other => bullets.push_str(&format!("- {k}: {}\n", scalar(other))),
        }
    }
    if !bullets.is_empty() {
        out.push('\n');
        out.push_str(&bullets);
    }
    for (name, rows) in tables {
        let Some(Value::Object(first)) = rows.first() else { continue };
        let cols: Vec<&String> = first.keys().collect();
        out.push_str(&format!("\n{name}:\n\n| {} |\n|{}\n", join(&cols), "---|".repeat(cols.len())));
        for row in rows {
            let cells: Vec<String> = cols.iter().map(|c| escape(&row.get(c.as_str()).map(scalar).unwrap_or_default())).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
    }
}

fn join(cols: &[&String]) -> String {
    cols.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(" | ")
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Worker threads for subgroup sweeps; 0 means one per core.
    pub jobs: usize,
    /// Restrict subgroup sweeps to this many evenly spaced subgroups.
    pub sample: Option<usize>,
}

struct SweepRow {
    class_order: Int,
    h1: FinAbInvariants,
}

/// Runs checks against one context.
pub struct Verifier<'a> {
    ctx: &'a Context,
    pool: rayon::ThreadPool,
    subgroups: Vec<Subgroup>,
    sampled: bool,
    sweep: OnceLock<Result<Vec<SweepRow>, String>>,
    fixed: OnceLock<IntMatrix>,
}

type Outcome = Result<(bool, String, Value), String>;

fn inv_str(x: &FinAbInvariants) -> String {
    x.to_string()
}

impl<'a> Verifier<'a> {
    pub fn new(ctx: &'a Context, options: VerifyOptions) -> Verifier<'a> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(options.jobs).build().expect("thread pool");
        let all = all_subgroups(ctx.group());
        let (subgroups, sampled) = match options.sample {
            Some(n) if n < all.len() => {
                let total = all.len();
                ((0..n).map(|i| all[i * total / n].clone()).collect(), true)
            }
            _ => (all, false),
        };
        Verifier { ctx, pool, subgroups, sampled, sweep: OnceLock::new(), fixed: OnceLock::new() }
    }

    pub fn context(&self) -> &Context {
        self.ctx
    }

    /// Subgroups covered by the sweeps, in canonical order.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    fn par_map<T: Send>(&self, items: &[Subgroup], f: impl Fn(&Subgroup) -> T + Sync + Send) -> Vec<T> {
        self.pool.install(|| items.par_iter().map(f).collect())
    }

    /// `|res ω|` and `H¹(H, M_ω)` for every swept subgroup.
    fn sweep(&self) -> Result<&[SweepRow], String> {
        let ctx = self.ctx;
        self.sweep
            .get_or_init(|| {
                self.par_map(&self.subgroups, |h| -> Result<SweepRow, String> {
                    let res = ctx.omega().restrict(h).map_err(|e| e.to_string())?;
                    let class_order = cocycle_class_order(ctx.q(), &res).map_err(|e| e.to_string())?;
                    let h1 = h1_invariants(ctx.m_omega(), h).map_err(|e| e.to_string())?;
                    Ok(SweepRow { class_order, h1 })
                })
                .into_iter()
                .collect()
            })
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// Basis (rows) of `M^{G34}`.
    fn fixed(&self) -> &IntMatrix {
        self.fixed.get_or_init(|| self.ctx.m().fixed_sublattice(&self.ctx.g34()))
    }

    pub fn run(&self, id: &str) -> Option<CheckRecord> {
        let (_, title) = CHECKS.iter().find(|(c, _)| *c == id)?;
        let outcome = match id {
            "context" => self.context_check(),
            "a2-presentation" => self.a2_presentation(),
            "commutator-residue" => self.commutator_residue(),
            "v-residue" => self.v_residue(),
            "family-cocycles" => self.family_cocycles(),
            "h1-cyclic" => self.h1_cyclic(),
            "class-order" => self.class_order(),
            "h1-table" => self.h1_table(),
            "h1-trivial" => self.h1_trivial(),
            "fixed-shape" => self.fixed_shape(),
            "residue-extension" => self.residue_extension(),
            "non-degenerate" => self.non_degenerate(),
            "exponent-table" => self.exponent_table(),
            "degeneracy-scan" => self.degeneracy_scan(),
            "control" => self.control(),
            _ => unreachable!("listed in CHECKS"),
        };
        let (status, summary, data) = match outcome {
            Ok((ok, summary, data)) if id == "control" => {
                let _ = ok;
                (Status::Info, summary, data)
            }
            Ok((ok, summary, data)) => (Status::of(ok), summary, data),
            Err(e) => (Status::Fail, format!("error: {e}"), Value::Null),
        };
        Some(CheckRecord { id: id.to_string(), title: title.to_string(), status, summary, data })
    }

    fn sample_note(&self, data: &mut Value) {
        if self.sampled {
            data["sampled_subgroups"] = json!(self.subgroups.len());
        }
    }

    fn context_check(&self) -> Outcome {
        let ctx = self.ctx;
        let p = ctx.p() as usize;
        let [q, mw, pr, m] = ctx.ranks();
        let expected_q = p * p + 1 + 2 * (p + 1);
        let expected_p = if ctx.options().multiset_family { 1 + p * p + (p * p - 1) * p } else { 1 + p * p + (p + 1) * p };
        let expected = [expected_q, expected_q + p.pow(4) - 1, expected_p, expected_q + p.pow(4) - 1 + expected_p];
        let ranks_ok = [q, mw, pr, m] == expected;

        let a2 = ctx.a2();
        let cocycles_ok = is_cocycle2(a2.lattice(), ctx.c12()).map_err(|e| e.to_string())?
            && is_cocycle2(&ctx.k_lattices()[0], ctx.c3()).map_err(|e| e.to_string())?
            && is_cocycle2(&ctx.k_lattices()[1], ctx.c4()).map_err(|e| e.to_string())?
            && is_cocycle2(ctx.q(), ctx.omega()).map_err(|e| e.to_string())?;

        // M_ω is a G-stable block of M with the same action
        let mut block_ok = true;
        for i in 0..ctx.group().rank() {
            let big = ctx.m().generator_action(i);
            let small = ctx.m_omega().generator_action(i);
            for r in 0..m {
                for c in 0..mw {
                    let want = if r < mw { &small[(r, c)] } else { &Int::ZERO };
                    block_ok &= &big[(r, c)] == want;
                }
            }
        }

        let snapshot = ContextSnapshot::of(ctx);
        let text = snapshot.to_json();
        let back = ContextSnapshot::from_json(&text).map_err(|e| e.to_string())?;
        let round_trip = back == snapshot && back.to_json() == text;

        let family: Vec<Value> = ctx
            .family()
            .iter()
            .map(|f| json!({"subgroup": f.subgroup.to_string(), "order": f.subgroup.order(), "class_order": f.class_order.to_string()}))
            .collect();
        let ok = ranks_ok && cocycles_ok && block_ok && round_trip;
        let summary = format!("ranks Q/M_w/P/M = {q}/{mw}/{pr}/{m}, {} family members", ctx.family().len());
        let data = json!({
            "ranks": {"Q": q, "M_omega": mw, "P": pr, "M": m},
            "expected_ranks": {"Q": expected[0], "M_omega": expected[1], "P": expected[2], "M": expected[3]},
            "cocycles_ok": cocycles_ok,
            "m_omega_block_ok": block_ok,
            "snapshot_round_trip": round_trip,
            "family": family,
        });
        Ok((ok, summary, data))
    }

    fn a2_presentation(&self) -> Outcome {
        let ctx = self.ctx;
        let a2 = ctx.a2();
        let lat = a2.lattice();
        let generates = a2.generates();
        let relations = a2.relations();
        let relations_vanish = relations.iter().all(|r| a2.evaluate(r).iter().all(Int::is_zero));
        let well_defined = a2.residue_well_defined();
        let pi_u = ctx.pi(&a2.u()).map_err(|e| e.to_string())?;
        let pi_b = [ctx.pi(a2.b1()).map_err(|e| e.to_string())?, ctx.pi(a2.b2()).map_err(|e| e.to_string())?];
        let mut residues = Vec::new();
        let mut invariant = true;
        for k in 0..lat.rank() {
            let mut e = vec![Int::ZERO; lat.rank()];
            e[k] = Int::ONE;
            let r = ctx.pi(&e).map_err(|e| e.to_string())?;
            for g in a2.group().elements() {
                invariant &= ctx.pi(&a2.act(&g, &e)).map_err(|e| e.to_string())? == r;
            }
            residues.push(r);
        }
        let ok = generates && relations_vanish && well_defined && pi_u == 1 && pi_b == [0, 0] && invariant;
        let summary = format!(
            "rank {}, {} relations, residue well defined: {well_defined}, residue(u12) = {pi_u}",
            lat.rank(),
            relations.len()
        );
        let data = json!({
            "rank": lat.rank(),
            "generates": generates,
            "relation_count": relations.len(),
            "relations_vanish": relations_vanish,
            "residue_well_defined": well_defined,
            "residue_u12": pi_u,
            "residue_b1": pi_b[0],
            "residue_b2": pi_b[1],
            "residue_invariant_under_g12": invariant,
            "basis_residues": residues,
        });
        Ok((ok, summary, data))
    }

    fn commutator_residue(&self) -> Outcome {
        let ctx = self.ctx;
        let p = ctx.p() as i64;
        let a2 = ctx.a2();
        let g12 = a2.group();
        // with u = x the residue comes out as -det; the alternate sign flips it
        let sign = -a2.u_sign().to_i64().expect("unit");
        let mut rows = Vec::new();
        let mut all_ok = true;
        for a in 0..p * p {
            for b in 0..p * p {
                let m = [(a / p) as u32, (a % p) as u32];
                let n = [(b / p) as u32, (b % p) as u32];
                let cu = ctx.commutator_u(m, n);
                let gm = g12.element(&m).expect("rank 2");
                let gn = g12.element(&n).expect("rank 2");
                let direct: Vec<Int> =
                    ctx.c12().value(&gm, &gn).iter().zip(ctx.c12().value(&gn, &gm)).map(|(x, y)| x - y).collect();
                let residue = ctx.pi(&cu).map_err(|e| e.to_string())? as i64;
                let det = m[0] as i64 * n[1] as i64 - m[1] as i64 * n[0] as i64;
                let expected = (sign * det).rem_euclid(p);
                let ok = residue == expected && direct == cu;
                all_ok &= ok;
                rows.push(json!({"m": format!("({},{})", m[0], m[1]), "n": format!("({},{})", n[0], n[1]),
                    "det": det, "residue": residue, "expected": expected, "ok": ok}));
            }
        }
        let self_zero = (0..p * p).all(|a| {
            let m = [(a / p) as u32, (a % p) as u32];
            ctx.commutator_u(m, m).iter().all(Int::is_zero)
        });
        let basic = ctx.commutator_u([1, 0], [0, 1]);
        let u = a2.u();
        let basic_is_pm_u = basic == u || basic.iter().zip(&u).all(|(x, y)| x == &-y.clone());
        let ok = all_ok && self_zero && basic_is_pm_u;
        let summary = format!("{} pairs, residue = {}det mod p in every row: {all_ok}", rows.len(), if sign < 0 { "-" } else { "+" });
        let data = json!({
            "sign": sign,
            "self_commutators_vanish": self_zero,
            "basic_pair_is_plus_minus_u12": basic_is_pm_u,
            "rows": rows,
        });
        Ok((ok, summary, data))
    }

    fn distinct_family(&self) -> Vec<Subgroup> {
        let mut out: Vec<Subgroup> = Vec::new();
        for f in self.ctx.family() {
            if !out.contains(&f.subgroup) {
                out.push(f.subgroup.clone());
            }
        }
        out
    }

    fn v_residue(&self) -> Outcome {
        let ctx = self.ctx;
        let a2 = ctx.a2();
        let mut rows = Vec::new();
        let mut all_ok = true;
        for h in self.distinct_family() {
            let v = ctx.v_h(&h).map_err(|e| e.to_string())?;
            let image = v.subgroup().clone();
            let mut residues_zero = true;
            for x in image.elements() {
                residues_zero &= ctx.pi(v.value(&x)).map_err(|e| e.to_string())? == 0;
            }
            let delta = coboundary1(a2.lattice(), &v).map_err(|e| e.to_string())?;
            let target = ctx.c12().restrict(&image).map_err(|e| e.to_string())?.scale(&Int::from(image.order()));
            let coboundary_ok = delta == target;
            let identity_zero = v.value_index(0).iter().all(Int::is_zero);
            let ok = residues_zero && coboundary_ok && identity_zero;
            all_ok &= ok;
            rows.push(json!({"subgroup": h.to_string(), "h12_order": image.order(),
                "residues_zero": residues_zero, "coboundary_ok": coboundary_ok, "ok": ok}));
        }
        Ok((all_ok, format!("{} family subgroups checked", rows.len()), json!({"rows": rows})))
    }

    fn family_cocycles(&self) -> Outcome {
        let ctx = self.ctx;
        let g = ctx.group();
        let nq = ctx.q().rank();
        let coef = ctx.options().omega.coefficients();
        let k_sum = &ctx.q_summands()[1..];
        let mut rows = Vec::new();
        let mut all_ok = true;
        for mem in ctx.family() {
            let h = &mem.subgroup;
            let k = &mem.class_order;
            let f = &mem.f;
            let cocycle = is_cocycle1(ctx.m_omega(), f).map_err(|e| e.to_string())?;
            let h12 = ctx.projections()[0].image(h).order();
            // |H12| except for G34 itself, where the cyclic quotients dominate
            let order_ok = k == &Int::from(ctx.max_image_order(h));

            let mut ig_ok = true;
            let mut g34_ok = true;
            let mut split_ok = true;
            let mut chat_ok = true;
            let chats = [ctx.c_hat(3, h, k).map_err(|e| e.to_string())?, ctx.c_hat(4, h, k).map_err(|e| e.to_string())?];
            let identity_pos = mem.transversal.iter().position(|&t| t == 0).ok_or("identity coset missing")?;
            let mut unit = vec![Int::ZERO; ctx.m().rank()];
            unit[mem.offset + identity_pos] = Int::ONE;
            for (pos, &gi) in h.element_indices().iter().enumerate() {
                let value = &f.values()[pos];
                for (c, x) in value[nq..].iter().enumerate() {
                    let want = if gi != 0 && c == gi - 1 { k.clone() } else { Int::ZERO };
                    ig_ok &= *x == want;
                }
                let elem = g.from_index(gi);
                if ctx.projections()[0].apply_index(gi) == 0 {
                    g34_ok &= value[..ctx.q_summands()[0].rank].iter().all(Int::is_zero);
                }
                for (t, s) in k_sum.iter().enumerate() {
                    let chat = chats[t].value(&ctx.projections()[t + 1].apply(&elem));
                    let scale = Int::from(-coef[t + 1]);
                    for i in 0..s.rank {
                        chat_ok &= value[s.offset + i] == &scale * &chat[i];
                    }
                }
                let moved = ctx.m().g_minus_one(&elem, &unit);
                let mut want = value.clone();
                want.resize(ctx.m().rank(), Int::ZERO);
                split_ok &= moved == want;
            }
            // the explicit cochains against the coboundary solver
            let mut solver_ok = true;
            for (t, chat) in chats.iter().enumerate() {
                let lat = &ctx.k_lattices()[t];
                let c = [ctx.c3(), ctx.c4()][t].restrict(chat.subgroup()).map_err(|e| e.to_string())?.scale(k);
                solver_ok &= coboundary1(lat, chat).map_err(|e| e.to_string())? == c;
                solver_ok &= solve_coboundary(lat, &c).map_err(|e| e.to_string())?.is_some();
            }
            let ok = cocycle && order_ok && ig_ok && g34_ok && split_ok && chat_ok && solver_ok;
            all_ok &= ok;
            rows.push(json!({
                "subgroup": h.to_string(), "class_order": k.to_string(), "h12_order": h12,
                "cocycle": cocycle, "ig_part": ig_ok, "g34_no_a12_part": g34_ok,
                "c_hat": chat_ok && solver_ok, "splits_in_m": split_ok, "ok": ok,
            }));
        }
        Ok((all_ok, format!("{} family members checked", rows.len()), json!({"rows": rows})))
    }

    fn h1_cyclic(&self) -> Outcome {
        let sweep = self.sweep()?;
        let mut rows = Vec::new();
        let mut all_ok = true;
        for (h, r) in self.subgroups.iter().zip(sweep) {
            let n = Int::from(h.order()).div_floor(&r.class_order);
            let ok = Int::from(h.order()).is_multiple_of(&r.class_order) && r.h1 == FinAbInvariants::cyclic(n.clone());
            all_ok &= ok;
            rows.push(json!({"subgroup": h.to_string(), "order": h.order(), "class_order": r.class_order.to_string(),
                "h1": inv_str(&r.h1), "ok": ok}));
        }
        let mut data = json!({"rows": rows});
        self.sample_note(&mut data);
        Ok((all_ok, format!("{} subgroups", self.subgroups.len()), data))
    }

    fn class_order(&self) -> Outcome {
        let ctx = self.ctx;
        let sweep = self.sweep()?;
        let sweep_ok = self.subgroups.iter().zip(sweep).all(|(h, r)| r.class_order == Int::from(ctx.max_image_order(h)));
        let a2 = ctx.a2();
        let mut spot = Vec::new();
        let mut spot_ok = true;
        for e in all_subgroups(a2.group()) {
            let res = ctx.c12().restrict(&e).map_err(|e| e.to_string())?;
            let order = cocycle_class_order(a2.lattice(), &res).map_err(|e| e.to_string())?;
            let ok = order == Int::from(e.order());
            spot_ok &= ok;
            spot.push(json!({"cocycle": "c12", "subgroup": e.to_string(), "order": e.order(), "class_order": order.to_string(), "ok": ok}));
        }
        for (name, lat, c) in [("c3", &ctx.k_lattices()[0], ctx.c3()), ("c4", &ctx.k_lattices()[1], ctx.c4())] {
            let order = cocycle_class_order(lat, c).map_err(|e| e.to_string())?;
            let ok = order == Int::from(ctx.p());
            spot_ok &= ok;
            spot.push(json!({"cocycle": name, "subgroup": c.subgroup().to_string(), "order": c.subgroup().order(),
                "class_order": order.to_string(), "ok": ok}));
        }
        let mut data = json!({"sweep_matches": sweep_ok, "subgroups": self.subgroups.len(), "spot_checks": spot});
        self.sample_note(&mut data);
        Ok((sweep_ok && spot_ok, format!("sweep over {} subgroups: {sweep_ok}; spot checks: {spot_ok}", self.subgroups.len()), data))
    }

    /// `H¹(H, M_ω)` for every swept subgroup, with the expected cyclic order.
    pub fn h1_rows(&self) -> Result<Vec<Value>, String> {
        let ctx = self.ctx;
        let sweep = self.sweep()?;
        Ok(self
            .subgroups
            .iter()
            .zip(sweep)
            .map(|(h, r)| {
                let [a, b, c] = [0, 1, 2].map(|t| ctx.projections()[t].image(h).order());
                let n = h.order() / a.max(b).max(c);
                let expected = FinAbInvariants::cyclic(n);
                json!({"subgroup": h.to_string(), "order": h.order(), "h12": a, "h3": b, "h4": c,
                    "expected": inv_str(&expected), "h1": inv_str(&r.h1), "match": expected == r.h1})
            })
            .collect())
    }

    fn h1_table(&self) -> Outcome {
        let rows = self.h1_rows()?;
        let matched = rows.iter().filter(|r| r["match"] == json!(true)).count();
        let ok = matched == rows.len();
        let mut data = json!({"rows": rows});
        self.sample_note(&mut data);
        Ok((ok, format!("{matched}/{} rows match", self.subgroups.len()), data))
    }

    fn h1_trivial(&self) -> Outcome {
        let ctx = self.ctx;
        let p = ctx.p() as usize;
        let sweep = self.sweep()?;
        let h1m = self.par_map(&self.subgroups, |k| h1_invariants(ctx.m(), k).map_err(|e| e.to_string()));
        let family = self.distinct_family();
        let mut rows = Vec::new();
        let mut all_ok = true;
        for ((k, r), m) in self.subgroups.iter().zip(sweep).zip(h1m) {
            let m = m?;
            let n = r.h1.order().and_then(|o| o.to_i64()).ok_or("H1(K, M_w) is not finite")? as usize;
            let in_family = family.contains(k);
            let tag = if n == 1 {
                "trivial"
            } else if k.order() == p.pow(4) {
                "whole"
            } else if k.order() == p.pow(3) && n == p {
                "order-p3-n-p"
            } else if k.order() == p.pow(3) && n == p * p {
                "order-p3-n-p2"
            } else if k.order() == p * p && n == p {
                "order-p2-n-p"
            } else {
                "other"
            };
            let tag_ok = tag != "other" && (tag != "order-p3-n-p2" || in_family) && (n == 1 || n != k.order());
            let ok = m.is_trivial() && tag_ok;
            all_ok &= ok;
            rows.push(json!({"subgroup": k.to_string(), "order": k.order(), "h1_m_omega": inv_str(&r.h1),
                "case": tag, "in_family": in_family, "h1_m": inv_str(&m), "ok": ok}));
        }
        let mut counts = Map::new();
        for r in &rows {
            let tag = r["case"].as_str().unwrap_or("?").to_string();
            let c = counts.get(&tag).and_then(Value::as_u64).unwrap_or(0);
            counts.insert(tag, json!(c + 1));
        }
        let trivial = rows.iter().filter(|r| r["h1_m"] == json!("0")).count();
        let mut data = json!({"case_counts": Value::Object(counts), "rows": rows});
        self.sample_note(&mut data);
        Ok((all_ok, format!("H1(K, M) = 0 for {trivial}/{} subgroups", self.subgroups.len()), data))
    }

    fn fixed_shape(&self) -> Outcome {
        let ctx = self.ctx;
        let g = ctx.group();
        let n = g.order();
        let nq = ctx.q().rank();
        let pp = Int::from(ctx.p());
        let g34 = ctx.g34();
        let mut norms = Vec::new();
        for tau in ctx.projections()[0].target().elements() {
            let e = tau.exponents();
            let lift = g.element(&[e[0], e[1], 0, 0]).expect("rank 4");
            let mut row = vec![Int::ZERO; n];
            for h in g34.elements() {
                row[g.index(&g.mul(&lift, &h))] = Int::ONE;
            }
            norms.push(row);
        }
        let unit = |i: usize| {
            let mut r = vec![Int::ZERO; n];
            r[i] = pp.clone();
            r
        };
        let mut wide = norms.clone();
        wide.extend((0..n).map(unit));
        let mut narrow = norms;
        narrow.extend((1..n).map(|i| {
            let mut r = unit(i);
            r[0] = -pp.clone();
            r
        }));
        let wide = RowSpan::new(&IntMatrix::from_rows(n, wide));
        let narrow = RowSpan::new(&IntMatrix::from_rows(n, narrow));
        let fixed = self.fixed();
        let (mut in_wide, mut in_narrow) = (0, 0);
        for i in 0..fixed.rows() {
            let row = fixed.row(i);
            let mut y = vec![Int::ZERO; n];
            let mut total = Int::ZERO;
            for gi in 1..n {
                y[gi] = row[nq + gi - 1].clone();
                total += &y[gi];
            }
            y[0] = -total;
            in_wide += wide.contains(&y) as usize;
            in_narrow += narrow.contains(&y) as usize;
        }
        let ok = in_wide == fixed.rows();
        let data = json!({
            "fixed_rank": fixed.rows(),
            "in_n34_zg12_plus_p_zg": in_wide,
            "in_n34_zg12_plus_p_ig": in_narrow,
        });
        Ok((ok, format!("{in_wide}/{} basis vectors have the stated shape ({in_narrow} also in N34*Z[G12] + p*I[G])", fixed.rows()), data))
    }

    fn residue_extension(&self) -> Outcome {
        let ctx = self.ctx;
        let g = ctx.group();
        let fixed = self.fixed();
        let mut kills = true;
        let mut residues = Vec::new();
        for i in 0..fixed.rows() {
            let row = fixed.row(i);
            residues.push(ctx.pi_prime(row).map_err(|e| e.to_string())?);
            for j in 0..2 {
                let moved = ctx.m().g_minus_one(&g.generator(j), row);
                kills &= ctx.pi_prime(&moved).map_err(|e| e.to_string())? == 0;
            }
        }
        let a2_rank = ctx.a2().lattice().rank();
        let mut extends = true;
        for k in 0..a2_rank {
            let mut e = vec![Int::ZERO; a2_rank];
            e[k] = Int::ONE;
            extends &= ctx.pi_prime(&ctx.embed_a2(&e, ctx.m().rank())).map_err(|e| e.to_string())?
                == ctx.pi(&e).map_err(|e| e.to_string())?;
        }
        let ok = kills && extends;
        let data = json!({"fixed_rank": fixed.rows(), "kills_augmentation_images": kills, "extends_a2_residue": extends,
            "basis_residues": residues});
        Ok((ok, format!("rank M^G34 = {}, kills (s_j - 1)M^G34: {kills}, extends: {extends}", fixed.rows()), data))
    }

    fn witness_for_u12(&self, ctx: &Context, fixed: &IntMatrix) -> Result<(WitnessResult, u32), String> {
        let g = ctx.group();
        let u = ctx.u12_in_m();
        let r = degeneracy_witness_in(ctx.m(), &ctx.g34(), fixed, &g.generator(0), &g.generator(1), &u)
            .map_err(|e| e.to_string())?;
        let residue = ctx.pi_prime(&u).map_err(|e| e.to_string())?;
        Ok((r, residue))
    }

    fn witness_json(r: &WitnessResult) -> Value {
        match r {
            WitnessResult::Witness { .. } => json!({"outcome": "witness"}),
            WitnessResult::NoWitness { certificate, membership_agrees } => json!({
                "outcome": "no-witness",
                "certificate_modulus": certificate.modulus.to_string(),
                "membership_agrees": membership_agrees,
            }),
        }
    }

    fn non_degenerate(&self) -> Outcome {
        let (r, residue) = self.witness_for_u12(self.ctx, self.fixed())?;
        let no_witness = matches!(r, WitnessResult::NoWitness { membership_agrees: true, .. });
        let ok = no_witness && residue == 1;
        let mut data = Self::witness_json(&r);
        data["residue_u12"] = json!(residue);
        data["fixed_rank"] = json!(self.fixed().rows());
        let summary = format!("{} + residue(u12) = {residue}", if no_witness { "no witness" } else { "WITNESS FOUND" });
        Ok((ok, summary, data))
    }

    /// Class order of `(i+1)c12 - i·c3 - i·c4` for `i = 0..p²-1`.
    pub fn exponent_rows(&self) -> Result<Vec<Value>, String> {
        let ctx = self.ctx;
        let p = ctx.p() as i64;
        let is: Vec<i64> = (0..p * p).collect();
        let results: Vec<Result<Int, String>> = self.pool.install(|| {
            is.par_iter()
                .map(|&i| {
                    let c = ctx.exponent_cocycle(i).map_err(|e| e.to_string())?;
                    cocycle_class_order(ctx.q(), &c).map_err(|e| e.to_string())
                })
                .collect()
        });
        is.iter()
            .zip(results)
            .map(|(&i, order)| {
                let order = order?;
                let expected = if (i + 1) % p == 0 { p } else { p * p };
                Ok(json!({"i": i, "class_order": order.to_string(), "expected": expected, "match": order == Int::from(expected)}))
            })
            .collect()
    }

    fn exponent_table(&self) -> Outcome {
        let rows = self.exponent_rows()?;
        let ok = rows.iter().all(|r| r["match"] == json!(true));
        Ok((ok, format!("{} rows", rows.len()), json!({"rows": rows})))
    }

    fn degeneracy_scan(&self) -> Outcome {
        let ctx = self.ctx;
        let scan = is_degenerate_matrix(ctx).map_err(|e| e.to_string())?;
        let p = ctx.p();
        let mut phi = PhiPairing::new(ctx);
        let mut bimultiplicative = true;
        for (m, n) in noncyclic_pairs(p) {
            for s in 1..p {
                for t in 1..p {
                    bimultiplicative &= phi.bimultiplicative_at(m, n, s, t).map_err(|e| e.to_string())?;
                }
            }
        }
        // the class test against the witness search, pair by pair
        let fixed = self.fixed();
        let g34 = ctx.g34();
        let pairs = noncyclic_pairs(p);
        let lift = |m: [u32; 2]| ctx.group().element(&[m[0], m[1], 0, 0]).expect("rank 4");
        let searches: Vec<Result<(bool, u32), String>> = self.pool.install(|| {
            pairs
                .par_iter()
                .map(|&(m, n)| {
                    let u = ctx.embed_a2(&ctx.commutator_u(m, n), ctx.m().rank());
                    let r = degeneracy_witness_in(ctx.m(), &g34, fixed, &lift(m), &lift(n), &u).map_err(|e| e.to_string())?;
                    Ok((r.is_witness(), ctx.pi_prime(&u).map_err(|e| e.to_string())?))
                })
                .collect()
        });
        let mut rows = Vec::new();
        let mut agree = true;
        let mut obstruction_consistent = true;
        for (class, search) in scan.classes.iter().zip(searches) {
            let (witness, residue) = search?;
            agree &= witness == class.is_zero;
            obstruction_consistent &= residue == 0 || !witness;
            rows.push(json!({"m": format!("({},{})", class.m[0], class.m[1]), "n": format!("({},{})", class.n[0], class.n[1]),
                "class_zero": class.is_zero, "witness": witness, "residue": residue}));
        }
        let ok = !scan.degenerate && scan.shortcut_agrees && bimultiplicative && agree && obstruction_consistent;
        let summary = format!(
            "{}degenerate over {} pairs, shortcut agrees: {}, bimultiplicative: {bimultiplicative}",
            if scan.degenerate { "" } else { "non-" },
            scan.classes.len(),
            scan.shortcut_agrees
        );
        let data = json!({
            "degenerate": scan.degenerate,
            "shortcut_nonzero": scan.shortcut_nonzero,
            "shortcut_agrees": scan.shortcut_agrees,
            "bimultiplicative": bimultiplicative,
            "class_test_matches_witness_search": agree,
            "residue_obstruction_consistent": obstruction_consistent,
            "rows": rows,
        });
        Ok((ok, summary, data))
    }

    fn control(&self) -> Outcome {
        let options = BuildOptions { omega: OmegaVariant::Control, ..self.ctx.options() };
        let ctx = Context::build(self.ctx.p(), options).map_err(|e| e.to_string())?;
        let fixed = ctx.m().fixed_sublattice(&ctx.g34());
        let (r, residue) = self.witness_for_u12(&ctx, &fixed)?;
        let scan = is_degenerate_matrix(&ctx).map_err(|e| e.to_string())?;
        let mut data = Self::witness_json(&r);
        data["residue_u12"] = json!(residue);
        data["degenerate"] = json!(scan.degenerate);
        data["shortcut_agrees"] = json!(scan.shortcut_agrees);
        data["ranks"] = json!(ctx.ranks());
        let summary = format!(
            "control context is {}degenerate (u12 {}, residue {residue})",
            if scan.degenerate { "" } else { "non-" },
            if r.is_witness() { "has a witness" } else { "has no witness" }
        );
        Ok((true, summary, data))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = check_ids().collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CHECKS.len());
    }

    #[test]
    fn markdown_tables() {
        let mut out = String::new();
        render_data(&mut out, &json!({"n": 2, "rows": [{"a": 1, "b": "x|y"}]}));
        assert!(out.contains("- n: 2"));
        assert!(out.contains("| a | b |"));
        assert!(out.contains("| 1 | x\\|y |"));
    }
}
