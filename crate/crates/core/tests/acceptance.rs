//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::random_sl;
use monodromy_core::dynamics::{well_bottom, RegularValue, SystemSpec};
use monodromy_core::exact_int::{det_exact, gcd_all, IntMatrix, PrimitiveVector};
use monodromy_core::monodromy::{actions, continue_loop, LoopSpec, MonodromyReport, Orientation, INTEGER_SLACK};
use monodromy_core::normal_forms::{
    block_diagonalize, block_triangular, change_basis, check_block_solution, classify, eigen_signature, reduce_mg2,
    unimodular_completion, verify_classification, verify_theorem1, BlockDiagonalization, Classification, FormTag,
    MaslovVector, TheoremVerdict,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_loop(
    center: [f64; 2],
    radii: [f64; 2],
    samples: usize,
    orientation: Orientation,
    tol: f64,
) -> Result<MonodromyReport, String> {
    let sys = SystemSpec::champagne_bottle().with_tol(tol).map_err(|e| e.to_string())?;
    let spec = LoopSpec::new(center, radii, samples, orientation).map_err(|e| e.to_string())?;
    continue_loop(&spec, &sys).map_err(|e| e.to_string())
}

fn conj(t: &IntMatrix, m: &IntMatrix) -> IntMatrix {
    &(t * m) * &t.inverse_unimodular().expect("unimodular")
}

/// Some `T` with entries in [-2, 2], `det T = ±1` and `T a T⁻¹ = b`.
fn find_conjugator(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let range = -2i64..=2;
    for t00 in range.clone() {
        for t01 in range.clone() {
            for t10 in range.clone() {
                for t11 in range.clone() {
                    if (t00 * t11 - t01 * t10).abs() != 1 {
                        continue;
                    }
                    let t = IntMatrix::from_rows(&[vec![t00, t01], vec![t10, t11]]);
                    if &t * a == b * &t {
                        return Some(t);
                    }
                }
            }
        }
    }
    None
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = run_loop([0.0, 0.0], [0.1, 0.1], 64, Orientation::Ccw, 1e-10)?;
    let elapsed = start.elapsed();
    let det = det_exact(&r.monodromy).map_err(|e| e.to_string())?;
    ensure(det.is_one(), || format!("det M = {det}"))?;
    ensure(r.winding_k.abs() == 1, || format!("k = {}", r.winding_k))?;
    ensure(r.maslov == MaslovVector::from_i64(&[0, 2]), || format!("mu = {:?}", r.maslov.0))?;
    let image = r.monodromy.mul_vec(&r.maslov.0).map_err(|e| e.to_string())?;
    ensure(image == r.maslov.0, || format!("M mu = {image:?}"))?;
    ensure(elapsed.as_secs_f64() < 60.0, || format!("runtime {elapsed:?}"))?;

    let cw = run_loop([0.0, 0.0], [0.1, 0.1], 64, Orientation::Cw, 1e-10)?;
    let ellipse = run_loop([0.0, 0.0], [0.05, 0.2], 64, Orientation::Ccw, 1e-10)?;
    let mut notes = Vec::new();
    for (name, other) in [("cw", &cw), ("radii (0.05, 0.2)", &ellipse)] {
        ensure(other.maslov == r.maslov, || format!("{name}: mu = {:?}", other.maslov.0))?;
        if other.monodromy == r.monodromy {
            notes.push(format!("{name}: identical M"));
            continue;
        }
        let t = find_conjugator(&r.monodromy, &other.monodromy)
            .ok_or_else(|| format!("{name}: M = {} not conjugate to {}", other.monodromy, r.monodromy))?;
        let d = det_exact(&t).map_err(|e| e.to_string())?;
        notes.push(format!("{name}: M = {}, conjugate via T = {t} (det {d})", other.monodromy));
    }
    Ok(format!(
        "M = {}, k = {}, mu = [0, 2], M mu = mu, {:.3} s; {}",
        r.monodromy,
        r.winding_k,
        elapsed.as_secs_f64(),
        notes.join("; ")
    ))
}

fn criterion_2() -> Outcome {
    let r = run_loop([0.0, 0.0], [0.1, 0.1], 64, Orientation::Ccw, 1e-10)?;
    let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
    let out = change_basis(&r.monodromy, &r.maslov, &r.actions_start(), &swap).map_err(|e| e.to_string())?;
    let m = out.monodromy.to_i64_rows().ok_or("entries overflow")?;
    ensure(m[0][0] == 1 && m[1][0] == 0 && m[1][1] == 1 && m[0][1].abs() == 1, || format!("M' = {}", out.monodromy))?;
    ensure(out.maslov == MaslovVector::from_i64(&[2, 0]), || format!("mu' = {:?}", out.maslov.0))?;
    Ok(format!("M' = {}, mu' = [2, 0]", out.monodromy))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(2..=5);
        let raw: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-60i64..=60))).collect();
        let g = gcd_all(&raw);
        if g.is_zero() {
            continue;
        }
        let v: Vec<BigInt> = raw.iter().map(|x| x / &g).collect();
        let u = PrimitiveVector::new(v.clone()).map_err(|e| e.to_string())?;
        let s = unimodular_completion(&u).map_err(|e| format!("{v:?}: {e}"))?;
        let det = det_exact(&s).map_err(|e| e.to_string())?;
        ensure(det.is_one(), || format!("{v:?}: det {det}"))?;
        ensure(s.column(0) == v, || format!("{v:?}: first column {:?}", s.column(0)))?;
        done += 1;
    }
    Ok(format!("{done} primitive vectors, dims 2-5, det S = 1 and S e1 = u in every case"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    let mut random_samples = 0;
    for tag in [FormTag::UpperUnipotent3, FormTag::MixedMinusOne3, FormTag::IrrationalBlock3] {
        for _ in 0..500 {
            let mut star = || rng.gen_range(-5i64..=5);
            let seed = match tag {
                FormTag::UpperUnipotent3 => {
                    IntMatrix::from_rows(&[vec![1, star(), star()], vec![0, 1, star()], vec![0, 0, 1]])
                }
                FormTag::MixedMinusOne3 => {
                    IntMatrix::from_rows(&[vec![1, star(), star()], vec![0, -1, star()], vec![0, 0, -1]])
                }
                _ => IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 2, 1], vec![0, 1, 1]]),
            };
            let len = rng.gen_range(3..=10);
            let t = random_sl(&mut rng, 3, len);
            let sig = eigen_signature(&t).map_err(|e| e.to_string())?;
            ensure(sig.ma_plus != 2, || format!("random sample {t} has ma_plus = 2"))?;
            random_samples += 1;
            let m = conj(&t, &seed);
            let c = classify(&m).map_err(|e| e.to_string())?;
            ensure(c.signature().ma_plus != 2, || format!("conjugate {m} has ma_plus = 2"))?;
            let Classification::Form(r) = c else {
                return Err(format!("{m}: no eigenvalue 1"));
            };
            ensure(r.form == tag, || format!("{m}: expected {tag}, got {}", r.form))?;
            ensure(verify_classification(&m, &r), || format!("{m}: conjugator fails verification"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked}/1500 conjugates recover their tag with verified conjugators; ma_plus = 2 never seen in {random_samples} random SL(3,Z) samples"))
}

/// Exhaustive search for `d ∈ [-100, 100]²` with `d (A - I) = a`.
fn exhaustive_block_search(a: [i64; 2], block: &[Vec<i64>]) -> bool {
    let s = [[block[0][0] - 1, block[0][1]], [block[1][0], block[1][1] - 1]];
    (-100i64..=100)
        .any(|d0| (-100i64..=100).any(|d1| d0 * s[0][0] + d1 * s[1][0] == a[0] && d0 * s[0][1] + d1 * s[1][1] == a[1]))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cat = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
    for _ in 0..200 {
        let a = vec![BigInt::from(rng.gen_range(-20i64..=20)), BigInt::from(rng.gen_range(-20i64..=20))];
        match block_diagonalize(&a, &cat).map_err(|e| e.to_string())? {
            BlockDiagonalization::Solved { d, conjugator, block_diagonal } => {
                ensure(check_block_solution(&a, &cat, &d), || format!("a = {a:?}: d = {d:?} fails substitution"))?;
                let m = block_triangular(&a, &cat);
                ensure(conj(&conjugator, &m) == block_diagonal, || format!("a = {a:?}: conjugator mismatch"))?;
                ensure(block_diagonal == block_triangular(&[BigInt::zero(), BigInt::zero()], &cat), || {
                    "not block diagonal".into()
                })?;
            }
            BlockDiagonalization::Unsolvable { .. } => {
                return Err(format!("cat block with a = {a:?} reported unsolvable"))
            }
        }
    }

    // unipotent blocks: A - I is singular
    let mut rejected = 0;
    let mut solved = 0;
    for c in [2i64, 3, 4, 6] {
        for _ in 0..15 {
            let t = random_sl(&mut rng, 2, 3);
            let block = conj(&t, &IntMatrix::from_rows(&[vec![1, c], vec![0, 1]]));
            let rows = block.to_i64_rows().ok_or("block overflow")?;
            let a_i = [rng.gen_range(-12i64..=12), rng.gen_range(-12i64..=12)];
            let a = vec![BigInt::from(a_i[0]), BigInt::from(a_i[1])];
            match block_diagonalize(&a, &block).map_err(|e| e.to_string())? {
                BlockDiagonalization::Solved { d, .. } => {
                    ensure(check_block_solution(&a, &block, &d), || format!("A = {block}, a = {a_i:?}: bad d"))?;
                    solved += 1;
                }
                BlockDiagonalization::Unsolvable { witness } => {
                    let valid = if witness.divisor.is_zero() {
                        !witness.residue.is_zero()
                    } else {
                        !witness.residue.is_multiple_of(&witness.divisor)
                    };
                    ensure(valid, || format!("A = {block}, a = {a_i:?}: witness {witness:?} proves nothing"))?;
                    ensure(!exhaustive_block_search(a_i, &rows), || {
                        format!("A = {block}, a = {a_i:?}: search found d")
                    })?;
                    rejected += 1;
                }
            }
        }
    }
    ensure(rejected >= 20, || format!("only {rejected} unsolvable cases were constructed"))?;
    Ok(format!(
        "200/200 cat-map rows solved and substituted; {rejected} singular-block cases rejected with SNF witnesses, none solvable in [-100, 100]^2 (plus {solved} solvable singular cases verified by substitution)"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut count = 0;
    for g in [1i64, 2, 3, 5] {
        let base = IntMatrix::from_rows(&[vec![1, 0, g], vec![0, 1, 0], vec![0, 0, 1]]);
        for _ in 0..200 {
            let len = rng.gen_range(3..=10);
            let t = random_sl(&mut rng, 3, len);
            let m = conj(&t, &base);
            let r = reduce_mg2(&m).map_err(|e| format!("{m}: {e}"))?;
            ensure(r.g == BigInt::from(g), || format!("{m}: g = {} instead of {g}", r.g))?;
            let det = det_exact(&r.conjugator).map_err(|e| e.to_string())?;
            ensure(det.is_one(), || format!("{m}: det T = {det}"))?;
            ensure(conj(&r.conjugator, &m) == base, || format!("{m}: T M T^-1 != I + g E13"))?;
            count += 1;
        }
    }
    Ok(format!("{count} conjugates (200 per g in {{1, 2, 3, 5}}) reduced to I + g E13 exactly"))
}

fn integers(r: &MonodromyReport) -> (i64, Vec<i64>, Option<FormTag>) {
    (r.winding_k, r.maslov.0.iter().map(|x| x.to_i64().unwrap()).collect(), r.classification.form())
}

fn criterion_7() -> Outcome {
    let base = run_loop([0.0, 0.0], [0.1, 0.1], 64, Orientation::Ccw, 1e-10)?;
    let mut worst = 0.0f64;
    let mu0 = [base.samples[0].w1.round(), base.samples[0].w2.round()];
    for s in &base.samples {
        worst = worst.max((s.w1 - s.w1.round()).abs()).max((s.w2 - s.w2.round()).abs());
        ensure([s.w1.round(), s.w2.round()] == mu0, || format!("rounded mu changes at s = {}", s.s))?;
    }
    ensure(worst <= INTEGER_SLACK, || format!("winding off an integer by {worst}"))?;

    let doubled = run_loop([0.0, 0.0], [0.1, 0.1], 128, Orientation::Ccw, 1e-10)?;
    let halved = run_loop([0.0, 0.0], [0.1, 0.1], 64, Orientation::Ccw, 5e-11)?;
    for (name, other) in [("N = 128", &doubled), ("tol = 5e-11", &halved)] {
        ensure(integers(other) == integers(&base), || {
            format!("{name}: {:?} vs {:?}", integers(other), integers(&base))
        })?;
    }

    ensure(base.action_residual < 1e-6, || format!("action residual {:e}", base.action_residual))?;
    let start = base.actions_start().0;
    let end = base.actions_end().0;
    let m = base.monodromy.to_i64_rows().ok_or("overflow")?;
    let mut residual = 0.0f64;
    for i in 0..2 {
        residual = residual.max((end[i] - (m[i][0] as f64 * start[0] + m[i][1] as f64 * start[1])).abs());
    }
    ensure(residual < 1e-6, || format!("|I(1) - M I(0)| = {residual:e}"))?;

    let sys = SystemSpec::champagne_bottle();
    let floor = well_bottom(0.0, &sys);
    let mut worst_rel = 0.0f64;
    for eps in [0.001, 0.0025, 0.005, 0.0075, 0.01] {
        let a = actions(RegularValue::new(0.0, floor + eps), &sys).map_err(|e| e.to_string())?;
        let oracle = eps / 2.0;
        worst_rel = worst_rel.max((a.i2 - oracle).abs() / oracle);
    }
    ensure(worst_rel < 0.01, || format!("harmonic oracle off by {:.3}%", 100.0 * worst_rel))?;

    Ok(format!(
        "max winding offset {worst:.1e}; mu constant over {} samples; N and tol refinement keep k, mu, form; |I(1) - M I(0)| = {residual:.1e}; harmonic action within {:.2}%",
        base.samples.len(),
        100.0 * worst_rel
    ))
}

fn criterion_8() -> Outcome {
    let r = run_loop([0.5, 0.5], [0.05, 0.05], 64, Orientation::Ccw, 1e-10)?;
    ensure(r.monodromy.is_identity(), || format!("M = {}", r.monodromy))?;
    ensure(r.winding_k == 0, || format!("k = {}", r.winding_k))?;
    let verdict = verify_theorem1(&r.monodromy, &r.maslov).map_err(|e| e.to_string())?;
    ensure(verdict == TheoremVerdict::Holds && r.theorem == verdict, || format!("verdict {verdict:?}"))?;
    Ok(format!(
        "M = identity, k = 0, mu = [{}], theorem holds",
        r.maslov.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("monodromy and Maslov vector of the default loop", criterion_1),
        ("swap basis gives the triangular form", criterion_2),
        ("unimodular completion", criterion_3),
        ("SL(3,Z) classification round trip", criterion_4),
        ("block diagonalization", criterion_5),
        ("m_g = 2 reduction", criterion_6),
        ("numerical invariants", criterion_7),
        ("non-enclosing loop", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL: {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
