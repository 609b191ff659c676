use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torelli::catalogue::{self, load, torelli_pool, validate, validate_catalogue};
use torelli::freegroup::{abelianize, lcs_class2, Letter, Word};
use torelli::johnson::{johnson_tensor, psi, rank_h1, tau1, PsiValue, Weight};
use torelli::json::{self, render, render_error};
use torelli::symplectic::{
    binom, contract_p, embed_iota, extract_iota_preimage, iota_matrix, scaled_lambda3_projector,
    wedge_q, H1Class, Wedge2, Wedge3,
};
use torelli::theta::{theta_translation, torelli_action_trivial_on_pool};
use torelli::torus::{build_ring, extract_f, verify_ring, RingViolation, TorusRing};
use torelli::{Result as CoreResult, SurfaceAutomorphism};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: CoreResult<T>, what: &str) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn random_word(rng: &mut ChaCha8Rng, gens: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..gens), rng.gen())))
}

fn pool3() -> std::result::Result<Vec<SurfaceAutomorphism>, String> {
    let pool = ok(torelli_pool(3, 20), "pool")?;
    ensure!(pool.len() >= 20, "pool has {} elements", pool.len());
    Ok(pool)
}

fn contraction_identity() -> Check {
    for g in 2..=4 {
        for i in 0..2 * g {
            let h = H1Class::basis(g, i);
            ensure!(
                contract_p(&wedge_q(&h)) == (g as i64 - 1) * &h,
                "g={g}: contraction of q^e{i} is not (g-1) e{i}"
            );
        }
    }
    Ok(())
}

fn embedding_ranks() -> Check {
    for g in 2..=3 {
        let m = iota_matrix(g);
        ensure!(m.rank() == binom(2 * g, 3), "g={g}: iota rank {}", m.rank());
        ensure!(
            m.elementary_divisors().iter().all(|&d| d == 1),
            "g={g}: iota divisors {:?}",
            m.elementary_divisors()
        );
        let p3 = scaled_lambda3_projector(g).rank();
        ensure!(p3 == binom(2 * g, 3) - 2 * g, "g={g}: projector rank {p3}");
    }
    ensure!(
        scaled_lambda3_projector(3).rank() == 14,
        "projector rank at g=3"
    );
    Ok(())
}

fn magnus_oracle() -> Check {
    let g = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(0x3a9);
    for k in 0..200 {
        let u = random_word(&mut rng, 2 * g, 12);
        let v = random_word(&mut rng, 2 * g, 12);
        let expected = Wedge2::wedge(&ok(abelianize(&u, g), "u")?, &ok(abelianize(&v, g), "v")?);
        let got = ok(lcs_class2(&Word::commutator(&u, &v), g), "lcs")?;
        ensure!(got == expected, "pair {k}: [{u},{v}]");
    }
    for k in 0..50 {
        // basic commutator [[x_i, x_j], x_l] with i > j <= l
        let j = rng.gen_range(0..2 * g - 1);
        let i = rng.gen_range(j + 1..2 * g);
        let l = rng.gen_range(j..2 * g);
        let c = Word::commutator(
            &Word::commutator(&Word::generator(i), &Word::generator(j)),
            &Word::generator(l),
        );
        ensure!(
            ok(lcs_class2(&c, g), "lcs")?.is_zero(),
            "commutator {k}: {c}"
        );
    }
    Ok(())
}

fn johnson_laws() -> Check {
    let pool = pool3()?;
    let values: Vec<Wedge3> = pool
        .iter()
        .map(|a| tau1(a).map(|v| v.bounded))
        .collect::<CoreResult<_>>()
        .map_err(|e| e.to_string())?;
    for (i, a) in pool.iter().enumerate() {
        for (j, b) in pool.iter().enumerate() {
            let ab = ok(a.compose(b), "compose")?;
            ensure!(
                ok(tau1(&ab), "tau1")?.bounded == &values[i] + &values[j],
                "additivity fails at ({i},{j})"
            );
        }
    }
    let cat = ok(load(3), "catalogue")?;
    let conjugators = ["a1", "c1", "b3", "c2", "rot1"];
    for name in conjugators {
        let c = ok(cat.automorphism(name), name)?;
        let m = c.sp_matrix();
        for (i, a) in pool.iter().enumerate() {
            let conj = ok(a.conjugate_by(&c), "conjugate")?;
            ensure!(
                ok(tau1(&conj), "tau1")?.bounded == m.act_wedge3(&values[i]),
                "equivariance under {name} fails at {i}"
            );
            let t = ok(johnson_tensor(&conj), "tensor")?;
            ok(extract_iota_preimage(&t), "conjugate tensor")?;
        }
    }
    for (i, a) in pool.iter().enumerate() {
        let t = ok(johnson_tensor(a), "tensor")?;
        let pre = ok(extract_iota_preimage(&t), &format!("pool tensor {i}"))?;
        ensure!(pre == values[i], "preimage of tensor {i} differs from tau1");
    }
    Ok(())
}

fn bounding_pair_values() -> Check {
    let cat = ok(load(3), "catalogue")?;
    let bp = ok(cat.automorphism("bp1"), "bp1")?;
    let meta = cat
        .get("bp1")
        .and_then(|e| e.bounding_pair.clone())
        .ok_or("bp1 has no bounding-pair metadata")?;
    ensure!(meta.g_prime == 1, "g' = {}", meta.g_prime);
    let b2 = H1Class::basis(3, 3);
    ensure!(
        meta.class_a == b2 || meta.class_a == -&b2,
        "[a] = {}",
        meta.class_a
    );
    // frozen sign: tau(bp1) = +a1^b1^b2, so p(tau) = +b2
    let a1_b1_b2 = Wedge3::wedge(&H1Class::basis(3, 0), &H1Class::basis(3, 1), &b2);
    ensure!(ok(tau1(&bp), "tau1")?.bounded == a1_b1_b2, "tau(bp1) sign");
    ensure!(
        ok(psi(&bp), "psi")? == PsiValue::from_class(&b2, 2),
        "psi(bp1) is not [a] mod 2"
    );
    let theta = ok(theta_translation(&bp, 4), "theta")?;
    // PD(b2) is -1 in the a2 slot, so 2 PD(b2) = 2 there mod 4
    let expected = vec![0u64, 0, 2, 0, 0, 0];
    ensure!(theta == expected, "theta(bp1, 4) = {theta:?}");
    ensure!(theta.iter().any(|&x| x != 0), "theta(bp1, 4) vanishes");
    Ok(())
}

fn kernel_witness() -> Check {
    for g in [2, 3] {
        let sep = ok(ok(load(g), "catalogue")?.automorphism("sep1"), "sep1")?;
        ensure!(
            ok(tau1(&sep), "tau1")?.bounded.is_zero(),
            "g={g}: tau(sep1) != 0"
        );
    }
    Ok(())
}

fn theta_triviality() -> Check {
    let pool = pool3()?;
    for (i, a) in pool.iter().enumerate() {
        for n in [1, 2] {
            let t = ok(theta_translation(a, n), "theta")?;
            ensure!(
                t.iter().all(|&x| x == 0),
                "element {i} moves roots at n={n}"
            );
        }
    }
    ensure!(
        pool.iter()
            .any(|a| theta_translation(a, 4).is_ok_and(|t| t.iter().any(|&x| x != 0))),
        "no pool element moves roots at n=4"
    );
    ensure!(
        ok(torelli_action_trivial_on_pool(2, 3, &pool), "n=2")?,
        "n=2 not trivial"
    );
    ensure!(
        !ok(torelli_action_trivial_on_pool(4, 3, &pool), "n=4")?,
        "n=4 trivial"
    );
    Ok(())
}

fn ring_round_trip() -> Check {
    let pool = pool3()?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x71e6);
    for (i, a) in pool.iter().enumerate() {
        let tau = ok(tau1(a), "tau1")?.bounded;
        let ring = ok(build_ring(&tau), "ring")?;
        let report = verify_ring(&ring);
        ensure!(report.is_empty(), "element {i}: {}", report[0]);
        let f = ok(extract_f(&ring), "extract_f")?;
        ensure!(
            f == embed_iota(&tau),
            "element {i}: f differs from iota(tau)"
        );
        ensure!(
            ok(extract_iota_preimage(&f), "preimage")? == tau,
            "element {i}: round trip"
        );

        let mut bent = ring.f().clone();
        let (r, c) = (rng.gen_range(0..bent.rows()), rng.gen_range(0..bent.cols()));
        bent[(r, c)] += rng.gen_range(1..=3);
        let report = verify_ring(&ok(TorusRing::from_f(3, bent), "perturbed ring")?);
        ensure!(
            report
                .iter()
                .any(|v| matches!(v, RingViolation::Associativity { .. })),
            "element {i}: perturbation at ({r},{c}) stays associative"
        );
    }
    Ok(())
}

fn rank_table() -> Check {
    for r in 0..=4u64 {
        for n in 0..=4u64 {
            for (weight, expected) in [
                (Weight::Lambda1, r + n),
                (Weight::Lambda3, 1),
                (Weight::Other, 0),
            ] {
                let got = rank_h1(weight, r, n);
                ensure!(got == expected, "{} r={r} n={n}: {got}", weight.as_str());
            }
        }
    }
    Ok(())
}

struct Cli {
    bin: PathBuf,
}

impl Cli {
    fn run(&self, args: &[&str]) -> std::result::Result<(String, i32), String> {
        let out = Command::new(&self.bin)
            .args(args)
            .output()
            .map_err(|e| format!("spawn: {e}"))?;
        let code = out.status.code().unwrap_or(-1);
        if code != 0 && out.stderr.is_empty() {
            return Err(format!("{args:?}: failed silently"));
        }
        let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        Ok((stdout, code))
    }

    fn expect(&self, args: &[&str], expected: String, code: i32) -> Check {
        let (got, got_code) = self.run(args)?;
        ensure!(got_code == code, "{args:?}: exit {got_code}, wanted {code}");
        ensure!(got == expected, "{args:?}: output differs from library");
        Ok(())
    }
}

fn envelope<T: serde::Serialize>(cmd: &str, g: Option<usize>, r: CoreResult<T>) -> (String, i32) {
    match r {
        Ok(v) => (render(cmd, g, v), 0),
        Err(e) => (render_error(cmd, &e), 1),
    }
}

fn catalogue_health() -> Check {
    for g in catalogue::SUPPORTED_GENERA.iter().copied() {
        let cat = ok(catalogue::parse_shipped(g), "parse")?;
        for entry in &cat.entries {
            let problems = validate(entry);
            ensure!(
                problems.is_empty(),
                "g={g} {}: {}",
                entry.name,
                problems.join("; ")
            );
        }
        let problems = validate_catalogue(&cat);
        ensure!(problems.is_empty(), "g={g}: {}", problems.join("; "));
    }

    let cli = Cli {
        bin: PathBuf::from(env!("CARGO_BIN_EXE_torelli")),
    };
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    for g in [2usize, 3] {
        let gs = g.to_string();
        let cat = ok(load(g), "catalogue")?;
        for name in ["bp1", "sep1", "a1", "rot1"] {
            let path = fixtures.join(format!("{name}_g{g}.aut"));
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let aut = ok(SurfaceAutomorphism::parse(&text), "fixture")?;
            ensure!(
                aut == ok(cat.automorphism(name), name)?,
                "fixture {name} g={g} stale"
            );
            let file_arg = format!("@{}", path.display());
            let cat_arg = format!("cat:{name}");
            for src in [file_arg.as_str(), cat_arg.as_str()] {
                let (text, code) = envelope("tau", Some(g), json::tau_view(&aut));
                cli.expect(&["tau", "--genus", &gs, "--aut", src], text, code)?;
                let (text, code) = envelope("psi", Some(g), json::psi_view(&aut));
                cli.expect(&["psi", "--genus", &gs, "--aut", src], text, code)?;
                for n in [1u64, 2, 4] {
                    let ns = n.to_string();
                    let (text, code) = envelope("theta", Some(g), json::theta_view(&aut, n));
                    cli.expect(
                        &["theta", "--genus", &gs, "--n", &ns, "--aut", src],
                        text,
                        code,
                    )?;
                }
                let ring = tau1(&aut).and_then(|v| json::ring_view(&v.bounded));
                let (text, code) = envelope("ring", Some(g), ring);
                cli.expect(&["ring", "--genus", &gs, "--aut", src], text, code)?;
            }
        }
        let (text, code) = envelope("catalogue", Some(g), Ok(json::catalogue_view(&cat)));
        cli.expect(&["catalogue", "--genus", &gs], text, code)?;
        let pool = ok(torelli_pool(g, 5), "pool")?;
        let (text, code) = envelope("pool", Some(g), json::pool_view(g, &pool));
        cli.expect(&["pool", "--genus", &gs, "--size", "5"], text, code)?;
    }

    let w = "1 * a1^b1^a2, -2 * a1^a2^a3";
    let (text, code) = envelope(
        "decompose",
        Some(3),
        Wedge3::parse(w, 3).and_then(|w| json::decompose_view(&w)),
    );
    cli.expect(&["decompose", "--genus", "3", "--wedge", w], text, code)?;
    let (text, code) = envelope(
        "ring",
        Some(3),
        Wedge3::parse(w, 3).and_then(|w| json::ring_view(&w)),
    );
    cli.expect(&["ring", "--genus", "3", "--tau", w], text, code)?;
    for (lambda, weight) in [
        ("lambda1", Weight::Lambda1),
        ("lambda3", Weight::Lambda3),
        ("other", Weight::Other),
    ] {
        let (text, code) = envelope("ranktable", None, Ok(json::rank_view(weight, 2, 1)));
        cli.expect(
            &["ranktable", "--lambda", lambda, "--r", "2", "--n", "1"],
            text,
            code,
        )?;
    }
    let bp = ok(load(3), "catalogue")?.automorphism("bp1");
    let (text, code) = envelope("theta", Some(3), bp.and_then(|a| json::theta_view(&a, 3)));
    cli.expect(
        &["theta", "--genus", "3", "--n", "3", "--aut", "cat:bp1"],
        text,
        code,
    )?;
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("contraction identity", contraction_identity),
        ("embedding ranks", embedding_ranks),
        ("magnus oracle", magnus_oracle),
        ("johnson homomorphism laws", johnson_laws),
        ("bounding-pair values", bounding_pair_values),
        ("kernel witness", kernel_witness),
        ("theta triviality", theta_triviality),
        ("ring round trip", ring_round_trip),
        ("rank table", rank_table),
        ("catalogue health", catalogue_health),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(()) => println!("criterion {:>2} {name}: PASS (tolerance: exact)", k + 1),
            Err(msg) => {
                failures += 1;
                println!(
                    "criterion {:>2} {name}: FAIL (tolerance: exact) {msg}",
                    k + 1
                );
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
