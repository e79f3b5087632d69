//! The acceptance suite, runnable from the binary and from tests.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use gzb_core::brauer_local::{
    balancing_candidates, conic_point_search, construct_beta_i, construct_beta_i_with, construct_gamma,
    construct_gamma_with, quaternion_splits, BrauerElem, PlaceL, SplitKind,
};
use gzb_core::exact_algebra::{
    hilbert_bruteforce, hilbert_symbol, int, parse_quad, relevant_places, Dyadic, PlaceQ, Rational,
};
use gzb_core::kummer_chars::{
    apply_s_star, check_fixed_conditions, cor_char, cor_identity_check, s_action_factored, s_pp_star, sigma_char,
    tilde_poly, tilde_poly_by_roots, w_membership, BrLUElem, Char2L, NormSignTable, WClass,
};
use gzb_core::par::{self, Exec};
use gzb_core::torsion_core::{
    inp_decompose, summand_torsion, truncation_level, ulm_invariant, verify_tower, CorMap, Group, GroupElem,
    HeightBound, Ordinal, Truncation, DEFAULT_TOWER_DEPTH,
};
use rand::Rng;
use serde::Serialize;

use crate::gen::{self, rng};
use crate::lift::{lift_tower, lift_tower_with, PreimageChoice};
use crate::pipeline::{cmd_check, replay, Status, FIRST_LAYER_GENERATOR};

/// Deliberate corruption used to check that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flips every Hilbert symbol at the prime 3.
    Hilbert,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "hilbert" => Ok(Fault::Hilbert),
            _ => Err(format!("unknown fault {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub exec: Exec,
    pub fault: Option<Fault>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub checked: usize,
    pub detail: String,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {:>2}: {verdict}  {} ({} checks; {})",
            self.id, self.name, self.checked, self.detail
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let passed = self.suites.iter().filter(|s| s.pass).count();
        write!(f, "{passed}/{} criteria passed", self.suites.len())
    }
}

pub const SUITES: [(u8, &str); 10] = [
    (1, "Hilbert product formula and solubility search"),
    (2, "conic search and local symbols"),
    (3, "Galois action on Brauer invariants"),
    (4, "tilde involution and s-action"),
    (5, "corestriction identity and fixed families"),
    (6, "I/N/P decomposition"),
    (7, "heights and Ulm invariants against truncation"),
    (8, "beta_i and gamma constructions"),
    (9, "fixed towers and lifted towers"),
    (10, "end-to-end verdicts"),
];

type Outcome = Result<(usize, String), String>;

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// First failure in input order across `items`.
fn each<T: Sync>(exec: Exec, items: &[T], f: impl Fn(&T) -> Result<(), String> + Sync + Send) -> Result<(), String> {
    match par::first_failure(exec, items, |x| f(x).err()) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

const PRIMES_TO_50: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn criterion1(o: &Options) -> Outcome {
    let faulty = o.fault == Some(Fault::Hilbert);
    let sym = |a: &Rational, b: &Rational, v: PlaceQ| -> Result<i8, String> {
        let s = hilbert_symbol(a, b, v).map_err(err)?;
        Ok(if faulty && v == PlaceQ::Prime(3) { -s } else { s })
    };
    let mut r = rng(o.seed ^ 0x101);
    let pairs: Vec<(Rational, Rational)> = (0..200)
        .map(|_| {
            (
                gen::nonzero_rational(&mut r, 600, 90),
                gen::nonzero_rational(&mut r, 600, 90),
            )
        })
        .collect();
    each(o.exec, &pairs, |(a, b)| {
        let mut prod = 1i8;
        for v in relevant_places(a, b).map_err(err)? {
            prod *= sym(a, b, v)?;
        }
        ensure(prod == 1, || format!("product of symbols of ({a}, {b}) is {prod}"))
    })?;
    let cases: Vec<(i64, i64, u64)> = (-30i64..=30)
        .filter(|&a| a != 0)
        .flat_map(|a| {
            (-30i64..=30)
                .filter(|&b| b != 0)
                .flat_map(move |b| PRIMES_TO_50.map(|p| (a, b, p)))
        })
        .collect();
    each(o.exec, &cases, |&(a, b, p)| {
        let fast = sym(&int(a), &int(b), PlaceQ::Prime(p))?;
        let slow = hilbert_bruteforce(a, b, p).map_err(err)?;
        ensure(fast == slow, || {
            format!("({a}, {b})_{p}: symbol {fast}, solubility search {slow}")
        })
    })?;
    Ok((
        pairs.len() + cases.len(),
        format!("{} random pairs, {} exhaustive (a, b, p)", pairs.len(), cases.len()),
    ))
}

fn squarefree(n: i64) -> bool {
    n != 0 && (2..=4i64).all(|p| n % (p * p) != 0)
}

pub const CONIC_SEARCH_BOUND: u64 = 10_000;

fn criterion2(o: &Options) -> Outcome {
    let sf: Vec<i64> = (-20i64..=20).filter(|&n| squarefree(n)).collect();
    let pairs: Vec<(i64, i64)> = sf.iter().flat_map(|&c| sf.iter().map(move |&d| (c, d))).collect();
    let results = par::map(o.exec, &pairs, |&(c, d)| -> Result<(bool, bool), String> {
        let (qc, qd) = (int(c), int(d));
        let rep = quaternion_splits(&qc, &qd).map_err(err)?;
        let pt = conic_point_search(&qc, &qd, CONIC_SEARCH_BOUND).map_err(err)?;
        if let Some((x, y)) = &pt {
            ensure(&qc * x * x + &qd * y * y == int(1), || {
                format!("({x}, {y}) is not on {c}x² + {d}y² = 1")
            })?;
            ensure(rep.splits, || {
                format!("point found on ({c}, {d}) but the symbols say nonsplit")
            })?;
        }
        if !rep.splits {
            let n = rep.witnesses.len();
            ensure(n > 0 && n % 2 == 0, || format!("nonsplit ({c}, {d}) has {n} witnesses"))?;
        }
        Ok((rep.splits, pt.is_some()))
    });
    let mut split = 0;
    let mut found = 0;
    for r in results {
        let (s, f) = r?;
        split += usize::from(s);
        found += usize::from(f);
    }
    Ok((
        pairs.len(),
        format!(
            "{} pairs, {split} split, {found} points found at bound {CONIC_SEARCH_BOUND}",
            pairs.len()
        ),
    ))
}

fn real_invariants_differ(b: &BrauerElem) -> bool {
    let d = b.d();
    d > 0 && {
        let at = |i| PlaceL::new(PlaceQ::Real, d, i).map(|p| b.get(&p));
        matches!((at(0), at(1)), (Ok(x), Ok(y)) if x != y)
    }
}

fn criterion3(o: &Options) -> Outcome {
    let mut r = rng(o.seed ^ 0x303);
    let items: Vec<(BrauerElem, BrauerElem)> = (0..500)
        .map(|_| {
            let b = gen::any_brauer_elem(&mut r);
            let c = gen::brauer_elem(&mut r, b.d(), false);
            (b, c)
        })
        .collect();
    each(o.exec, &items, |(b, c)| {
        let s = b.galois_act();
        s.validate().map_err(err)?;
        ensure(s.galois_act() == *b, || format!("σ²({b}) ≠ b"))?;
        let lhs = b.add(c).map_err(err)?.galois_act();
        let rhs = s.add(&c.galois_act()).map_err(err)?;
        ensure(lhs == rhs, || format!("σ is not additive on {b}, {c}"))?;
        let m = b.one_minus_sigma();
        m.validate().map_err(err)?;
        ensure(m.galois_act() == m.neg(), || format!("(1−σ)({b}) is not σ-negated"))?;
        let uneven_real = real_invariants_differ(b);
        for (p, v) in m.entries() {
            let allowed = p.kind == SplitKind::Split || (p.kind == SplitKind::RealPair && uneven_real);
            ensure(allowed, || format!("(1−σ)({b}) is {v} at the {:?} place {p}", p.kind))?;
        }
        Ok(())
    })?;
    let uneven = items.iter().filter(|(b, _)| real_invariants_differ(b)).count();
    Ok((
        items.len(),
        format!("{} elements; (1−σ) vanishes off split pairs, and at real pairs unless the two real invariants differ ({uneven} such)", items.len()),
    ))
}

fn criterion4(o: &Options) -> Outcome {
    let mut r = rng(o.seed ^ 0x404);
    let items: Vec<_> = (0..100)
        .map(|_| {
            (
                gen::irred_low(&mut r),
                gen::c_value(&mut r),
                gen::factored(&mut r),
                gen::factored(&mut r),
            )
        })
        .collect();
    each(o.exec, &items, |(p, c, x, y)| {
        let t = tilde_poly(p, c).map_err(err)?;
        ensure(t.degree() == p.degree(), || format!("deg p̃ ≠ deg p for {p}"))?;
        ensure(tilde_poly(&t, c).map_err(err)? == *p, || {
            format!("tilde is not an involution on {p}, c = {c}")
        })?;
        let roots = tilde_poly_by_roots(p, c).map_err(err)?;
        ensure(*t.poly() == roots, || {
            format!("closed form {t} differs from the root computation {roots} for {p}")
        })?;
        let sx = s_action_factored(x, c).map_err(err)?;
        ensure(s_action_factored(&sx, c).map_err(err)? == *x, || {
            format!("s² ≠ id on {x}")
        })?;
        let sxy = s_action_factored(&x.mul(y), c).map_err(err)?;
        ensure(sxy == sx.mul(&s_action_factored(y, c).map_err(err)?), || {
            format!("s is not multiplicative on {x}, {y}")
        })
    })?;
    Ok((
        items.len(),
        format!("{} instances, c ∈ {{3, 5, 7}}, degrees 1 and 2", items.len()),
    ))
}

fn sign_table() -> Result<NormSignTable, String> {
    NormSignTable::new(BrauerElem::parse("d=2; 7.0:1/2, 7.1:1/2").map_err(err)?).map_err(err)
}

fn criterion5(o: &Options) -> Outcome {
    let mut r = rng(o.seed ^ 0x505);
    let singles: Vec<_> = (0..100)
        .map(|_| {
            let (p, c) = gen::self_tilde(&mut r);
            (gen::char_over(&mut r, p), c)
        })
        .collect();
    each(o.exec, &singles, |(chi, c)| {
        ensure(cor_identity_check(chi, c).map_err(err)?, || {
            format!("Cor identity fails for {chi}, c = {c}")
        })?;
        let once = s_pp_star(chi, c).map_err(err)?;
        let twice = s_pp_star(&once, c).map_err(err)?;
        ensure(twice.same_class(chi).map_err(err)?, || {
            format!("s_pp* is not an involution on {chi}")
        })
    })?;
    let c_values: Vec<Rational> = (0..100).map(|_| gen::c_value(&mut r)).collect();
    let families: Vec<_> = c_values.into_iter().map(|c| (gen::brlu_parts(&mut r), c)).collect();
    let table = sign_table()?;
    let l = gen::l2();
    each(o.exec, &families, |((beta, chi_u, chis), c)| {
        let x = BrLUElem::new(beta.clone(), chi_u.clone(), chis.clone()).map_err(err)?;
        let fixed = x.add(&apply_s_star(&x, c, &table).map_err(err)?).map_err(err)?;
        let rep = check_fixed_conditions(&fixed, c, &table).map_err(err)?;
        ensure(rep.cond_i.pass, || format!("symmetrized {fixed} fails condition (i)"))?;
        let mut cor: Option<Char2L> = None;
        for chi in fixed.chis.values() {
            cor = Char2L::sum(cor.as_ref(), cor_char(chi).map_err(err)?.as_ref(), l);
        }
        let moved = cor.as_ref().map(sigma_char);
        ensure(Char2L::opt_eq(cor.as_ref(), moved.as_ref()), || {
            format!("Cor Σχ_p of {fixed} is not σ-fixed")
        })
    })?;
    Ok((
        singles.len() + families.len(),
        format!("{} self-tilde characters, {} families", singles.len(), families.len()),
    ))
}

pub const INP_LEVEL: u32 = 10;

fn criterion6(o: &Options) -> Outcome {
    let mut ms: Vec<Vec<Vec<i64>>> = (1..=3).flat_map(|n| gen::all_involutions(n, -2, 2)).collect();
    let exhaustive = ms.len();
    let mut r = rng(o.seed ^ 0x606);
    for _ in 0..1000 {
        let n = r.gen_range(1..=6);
        ms.push(gen::random_involution(&mut r, n));
    }
    each(o.exec, &ms, |m| {
        let dec = inp_decompose(m, DEFAULT_TOWER_DEPTH).map_err(|e| format!("{m:?}: {e}"))?;
        let (i, n, p) = dec.summary();
        ensure(i + n + 2 * p == m.len(), || {
            format!("{m:?}: ranks {i}+{n}+2·{p} ≠ {}", m.len())
        })?;
        dec.verify(INP_LEVEL).map_err(|e| format!("{m:?}: {e}"))
    })?;
    Ok((
        ms.len(),
        format!("{exhaustive} involutions with entries in [-2, 2] and r ≤ 3, 1000 random with r ≤ 6"),
    ))
}

pub const HEIGHT_LEVEL: u32 = 6;
pub const HEIGHT_WINDOW: u32 = 2;
pub const HEIGHT_TRUNCATION: u32 = 12;
pub const HEIGHT_SAMPLE_CAP: usize = 1 << 16;

fn torsion_sample(g: &Group, seed: u64) -> Result<(Vec<GroupElem>, bool), String> {
    let per = g
        .summands()
        .iter()
        .map(|&k| summand_torsion(k, HEIGHT_LEVEL, HEIGHT_WINDOW))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let total = per.iter().try_fold(1usize, |acc, v| acc.checked_mul(v.len()));
    if total.is_some_and(|t| t <= HEIGHT_SAMPLE_CAP) {
        return Ok((g.torsion_elements(HEIGHT_LEVEL, HEIGHT_WINDOW).map_err(err)?, true));
    }
    let mut r = rng(seed);
    let els = (0..HEIGHT_SAMPLE_CAP)
        .map(|_| GroupElem::new(per.iter().map(|cs| cs[r.gen_range(0..cs.len())].clone()).collect()))
        .collect();
    Ok((els, false))
}

fn criterion7(o: &Options) -> Outcome {
    let descs = gen::small_descriptors();
    let k = truncation_level();
    let lambdas: Vec<Ordinal> = (0..=5)
        .map(Ordinal::Finite)
        .chain([Ordinal::OMEGA, Ordinal::OmegaPlus(1)])
        .collect();
    let results = par::map_range(o.exec, descs.len(), |i| -> Result<(usize, bool), String> {
        let desc = &descs[i];
        let g = Group::new(desc.clone());
        let (els, complete) = torsion_sample(&g, o.seed ^ (0x707 + i as u64))?;
        let t = Truncation::for_elements(desc, HEIGHT_TRUNCATION, &els).map_err(err)?;
        for x in &els {
            let sym = g.height(x).map_err(err)?;
            let brute = t.height(x).map_err(err)?;
            ensure(brute == HeightBound::Exact(sym), || {
                format!("{desc}: height of {x} is {sym}, truncation {brute:?}")
            })?;
        }
        let tu = Truncation::new(desc, k).map_err(err)?;
        for &l in &lambdas {
            let (a, b) = (ulm_invariant(desc, l).map_err(err)?, tu.ulm(l).map_err(err)?);
            ensure(a == b, || {
                format!("{desc}: U({l}) = {a}, truncation at K = {k} gives {b}")
            })?;
        }
        Ok((els.len(), complete))
    });
    let mut elements = 0;
    let mut complete = 0;
    for r in results {
        let (n, c) = r?;
        elements += n;
        complete += usize::from(c);
    }
    Ok((
        elements + descs.len() * lambdas.len(),
        format!(
            "{} descriptors ({complete} enumerated in full, the rest sampled at {HEIGHT_SAMPLE_CAP}), {elements} elements, Ulm at K = {k}",
            descs.len()
        ),
    ))
}

fn check_beta(b: &BrauerElem, z: &BTreeMap<PlaceL, Dyadic>, i: u32, bi: &BrauerElem) -> Result<(), String> {
    bi.validate().map_err(err)?;
    ensure(bi.mul_pow2(i) == *b, || format!("2^{i}·β_i ≠ β for β = {b}"))?;
    ensure(
        bi.entries().all(|(p, v)| !p.kind.is_archimedean() || v.is_zero()),
        || format!("β_i = {bi} is nonzero at infinity"),
    )?;
    ensure(bi.order_log2() <= b.order_log2() + i, || {
        format!("β_i = {bi} has order above 2^i·ord β")
    })?;
    let image = bi.one_minus_sigma();
    let expect = |p: &PlaceL| match (p.kind, p.index) {
        (SplitKind::Split, 0) => z.get(p).cloned().unwrap_or_default().double(),
        (SplitKind::Split, _) => -z.get(&p.sigma()).cloned().unwrap_or_default().double(),
        _ => Dyadic::zero(),
    };
    for p in image.support().iter().chain(z.keys()) {
        ensure(image.get(p) == expect(p), || {
            format!("(1−σ)β_i at {p} is {}, expected {}", image.get(p), expect(p))
        })?;
    }
    Ok(())
}

fn check_gamma(gp: &BrauerElem, g: &BrauerElem) -> Result<(), String> {
    g.validate().map_err(err)?;
    ensure(g.one_minus_sigma() == *gp, || format!("(1−σ)γ ≠ γ' for γ' = {gp}"))?;
    ensure(g.order_log2() <= gp.order_log2(), || {
        format!("γ = {g} has larger order than γ'")
    })?;
    ensure(
        g.entries().all(|(p, v)| !p.kind.is_archimedean() || v.is_zero()),
        || format!("γ = {g} is nonzero at infinity"),
    )
}

fn criterion8(o: &Options) -> Outcome {
    let mut r = rng(o.seed ^ 0x808);
    let betas: Vec<_> = (0..200).map(|_| gen::beta_instance(&mut r)).collect();
    let gammas: Vec<_> = (0..200).map(|_| gen::gamma_prime(&mut r)).collect();
    each(o.exec, &betas, |(b, z, i)| {
        check_beta(b, z, *i, &construct_beta_i(b, z, *i).map_err(err)?)
    })?;
    each(o.exec, &gammas, |gp| {
        check_gamma(gp, &construct_gamma(gp).map_err(err)?)
    })?;
    let beta_multi: Vec<_> = betas
        .iter()
        .filter(|(b, _, _)| balancing_candidates(b).len() >= 2)
        .take(50)
        .collect();
    let gamma_multi: Vec<_> = gammas
        .iter()
        .filter(|g| balancing_candidates(g).len() >= 2)
        .take(50)
        .collect();
    ensure(beta_multi.len() == 50 && gamma_multi.len() == 50, || {
        "too few instances with two balancing places".into()
    })?;
    each(o.exec, &beta_multi, |(b, z, i)| {
        let base = construct_beta_i(b, z, *i).map_err(err)?;
        for q in balancing_candidates(b).into_iter().skip(1).take(3) {
            let other = construct_beta_i_with(b, z, *i, q).map_err(err)?;
            check_beta(b, z, *i, &other)?;
            let diff = base.sub(&other).map_err(err)?;
            ensure(diff.mul_pow2(*i).is_zero() && diff.one_minus_sigma().is_zero(), || {
                format!("β_i for {b} depends on the balancing place {q} beyond the kernel")
            })?;
        }
        Ok(())
    })?;
    each(o.exec, &gamma_multi, |gp| {
        let base = construct_gamma(gp).map_err(err)?;
        for q in balancing_candidates(gp).into_iter().skip(1).take(3) {
            let other = construct_gamma_with(gp, q).map_err(err)?;
            check_gamma(gp, &other)?;
            ensure(base.sub(&other).map_err(err)?.one_minus_sigma().is_zero(), || {
                format!("γ for {gp} depends on the balancing place {q} beyond the kernel")
            })?;
        }
        Ok(())
    })?;
    Ok((
        betas.len() + gammas.len() + beta_multi.len() + gamma_multi.len(),
        "200 β_i, 200 γ, 50 + 50 balancing-place comparisons".into(),
    ))
}

pub const TOWER_DEPTH: usize = 16;

fn criterion9(o: &Options) -> Outcome {
    let mut r = rng(o.seed ^ 0x909);
    let fixed: Vec<_> = (0..100)
        .map(|_| gen::fixed_tower_instance(&mut r, TOWER_DEPTH))
        .collect();
    let lifts: Vec<_> = (0..100).map(|_| gen::lift_instance(&mut r, TOWER_DEPTH)).collect();
    each(o.exec, &fixed, |inst| {
        let (src, tgt) = (Group::new(inst.source.clone()), Group::new(inst.target.clone()));
        let cor = CorMap::new(inst.cor.clone());
        let out = gzb_core::torsion_core::build_fixed_tower(&cor, &src, &inst.tower, &tgt).map_err(err)?;
        ensure(verify_tower(&tgt, &out.chi_u, TOWER_DEPTH), || {
            format!("χ_u tower fails for {}", inst.target)
        })?;
        ensure(verify_tower(&out.group, &out.combined, TOWER_DEPTH), || {
            "combined tower fails".into()
        })?;
        for (i, c) in out.chi_u.elems.iter().enumerate() {
            let lhs = tgt.add(c, &tgt.act(c).map_err(err)?).map_err(err)?;
            let rhs = tgt.neg(&cor.apply(&inst.tower.elems[i]).map_err(err)?).map_err(err)?;
            ensure(lhs == rhs, || format!("(1+σ)χ_u^({i}) ≠ −Cor χ^({i})"))?;
        }
        Ok(())
    })?;
    each(o.exec, &lifts, |inst| {
        let lift = lift_tower(&inst.model, &inst.alpha, &inst.tower_down).map_err(err)?;
        let dom = inst.model.domain();
        ensure(verify_tower(dom, &lift.tower, TOWER_DEPTH), || {
            "lifted tower violates 2^m α_n = α_(n−m)".into()
        })?;
        for (i, a) in lift.tower.elems.iter().enumerate() {
            ensure(inst.model.apply(a).map_err(err)? == inst.tower_down.elems[i], || {
                format!("φ(α_{}) ≠ t_{}", i + 1, i + 1)
            })?;
        }
        ensure(dom.double(&lift.tower.elems[0]).map_err(err)? == lift.base, || {
            "2α_1 ≠ α_0".into()
        })?;
        let other =
            lift_tower_with(&inst.model, &inst.alpha, &inst.tower_down, PreimageChoice::Perturbed).map_err(err)?;
        ensure(other == lift, || "lifted tower depends on the preimage choice".into())
    })?;
    Ok((
        fixed.len() + lifts.len(),
        format!(
            "{} fixed towers, {} lifts, depth {TOWER_DEPTH}",
            fixed.len(),
            lifts.len()
        ),
    ))
}

fn criterion10(_: &Options) -> Outcome {
    let cases = [
        (3i64, 2i64, Status::IsomorphicToBrQt),
        (1, 2, Status::RationalConic),
        (3, 5, Status::OutOfScope),
    ];
    for (c, d, want) in cases {
        let v = cmd_check(&int(c), &int(d), CONIC_SEARCH_BOUND).map_err(err)?;
        ensure(v.status == want, || {
            format!("check ({c}, {d}) gave {}, expected {want}", v.status)
        })?;
        let json = serde_json::to_string(&v.certificate).map_err(err)?;
        let back = serde_json::from_str(&json).map_err(err)?;
        ensure(replay(&back).map_err(err)? == want, || {
            format!("certificate for ({c}, {d}) does not replay")
        })?;
        if (c, d) == (3, 2) {
            ensure(v.witnesses() == ["2", "3"], || {
                format!("witnesses {:?}, expected {{2, 3}}", v.witnesses())
            })?;
        }
    }
    let e = parse_quad(FIRST_LAYER_GENERATOR, gen::l2()).map_err(err)?;
    let w = w_membership(&e).map_err(err)?;
    ensure(w == WClass::Cyclic4, || format!("W({FIRST_LAYER_GENERATOR}) = {w}"))?;
    Ok((4, "3 verdicts replayed, W(2+√2) = Cyclic4".into()))
}

pub fn run_suite(id: u8, opts: &Options) -> SuiteReport {
    let (_, name) = SUITES[usize::from(id) - 1];
    let outcome = match id {
        1 => criterion1(opts),
        2 => criterion2(opts),
        3 => criterion3(opts),
        4 => criterion4(opts),
        5 => criterion5(opts),
        6 => criterion6(opts),
        7 => criterion7(opts),
        8 => criterion8(opts),
        9 => criterion9(opts),
        10 => criterion10(opts),
        _ => Err(format!("no criterion {id}")),
    };
    match outcome {
        Ok((checked, detail)) => SuiteReport {
            id,
            name,
            pass: true,
            checked,
            detail,
        },
        Err(detail) => SuiteReport {
            id,
            name,
            pass: false,
            checked: 0,
            detail,
        },
    }
}

pub fn run_all(opts: &Options) -> SelftestReport {
    run_selected(opts, &[])
}

/// Runs the listed criteria (all of them when `ids` is empty).
pub fn run_selected(opts: &Options, ids: &[u8]) -> SelftestReport {
    let chosen: Vec<u8> = SUITES
        .iter()
        .map(|&(id, _)| id)
        .filter(|id| ids.is_empty() || ids.contains(id))
        .collect();
    let suites = par::map(opts.exec, &chosen, |&id| run_suite(id, opts));
    SelftestReport {
        pass: suites.iter().all(|s| s.pass),
        suites,
    }
}
